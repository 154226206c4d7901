//! Exact arithmetic backbone.
//!
//! Everything downstream is valued in integer Laurent polynomials in `t`
//! with nonnegative powers of `s`, or in the fraction field `Q(t, s)`.
//! Nothing here touches floating point.

mod laurent;
mod matrix;
mod ratfn;
pub mod serde_num;

pub use laurent::{LaurentPoly, Monomial};
pub use matrix::Matrix;
pub use ratfn::RationalFn;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// Arbitrary precision integer used for every coefficient.
pub type Int = BigInt;
/// Reduced arbitrary precision rational.
pub type Rat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("m-degree of the zero polynomial is undefined")]
    ZeroPolynomial,
    #[error("m-degree {0} is odd; the flat operation needs an even m-degree")]
    OddMDegree(i64),
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("rational function is not a Laurent polynomial")]
    NotPolynomial,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix shapes do not agree: {0}")]
    Shape(String),
    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },
}

/// Binomial coefficient with the convention `C(n, k) = 0` unless `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> Int {
    if k < 0 || n < 0 || k > n {
        return Int::zero();
    }
    let k = k.min(n - k);
    let mut acc = Int::one();
    for i in 0..k {
        acc *= Int::from(n - i);
        acc /= Int::from(i + 1);
    }
    acc
}

/// `(-1)^n` read off the parity of `n`, including negative `n`.
pub fn sign_of_parity(n: i64) -> Int {
    if n.rem_euclid(2) == 0 {
        Int::one()
    } else {
        -Int::one()
    }
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn rat_int(n: impl Into<Int>) -> Rat {
    Rat::from_integer(n.into())
}

use super::MotiveError;
use crate::algebra::LaurentPoly;
use serde::{Deserialize, Serialize};

/// A class in `K0(Var/C)` through its virtual Poincare polynomial, a
/// polynomial in `t` alone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "AbsMotiveDoc", into = "AbsMotiveDoc")]
pub enum AbsMotive {
    Point,
    /// The affine line, `L = t^2`.
    AffineLine,
    /// `Gm = t^2 - 1`.
    Gm,
    /// `GL_n = prod_{k<n} (t^{2n} - t^{2k})`.
    Gl {
        n: u32,
    },
    Poly {
        name: Option<String>,
        poly: LaurentPoly,
    },
}

// Empty struct variants so that stray fields are rejected on every kind.
#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum AbsMotiveDoc {
    Point {},
    AffineLine {},
    Gm {},
    Gl {
        n: u32,
    },
    Poly {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        poly: LaurentPoly,
    },
}

impl TryFrom<AbsMotiveDoc> for AbsMotive {
    type Error = MotiveError;
    fn try_from(d: AbsMotiveDoc) -> Result<Self, MotiveError> {
        let m = match d {
            AbsMotiveDoc::Point {} => AbsMotive::Point,
            AbsMotiveDoc::AffineLine {} => AbsMotive::AffineLine,
            AbsMotiveDoc::Gm {} => AbsMotive::Gm,
            AbsMotiveDoc::Gl { n } => AbsMotive::Gl { n },
            AbsMotiveDoc::Poly { name, poly } => AbsMotive::Poly { name, poly },
        };
        m.validate()?;
        Ok(m)
    }
}

impl From<AbsMotive> for AbsMotiveDoc {
    fn from(m: AbsMotive) -> Self {
        match m {
            AbsMotive::Point => AbsMotiveDoc::Point {},
            AbsMotive::AffineLine => AbsMotiveDoc::AffineLine {},
            AbsMotive::Gm => AbsMotiveDoc::Gm {},
            AbsMotive::Gl { n } => AbsMotiveDoc::Gl { n },
            AbsMotive::Poly { name, poly } => AbsMotiveDoc::Poly { name, poly },
        }
    }
}

impl AbsMotive {
    pub fn named(name: impl Into<String>, poly: LaurentPoly) -> Result<Self, MotiveError> {
        Self::check_s_free(&poly)?;
        Ok(AbsMotive::Poly { name: Some(name.into()), poly })
    }

    pub fn from_poly(poly: LaurentPoly) -> Result<Self, MotiveError> {
        Self::check_s_free(&poly)?;
        Ok(AbsMotive::Poly { name: None, poly })
    }

    fn check_s_free(p: &LaurentPoly) -> Result<(), MotiveError> {
        if p.is_s_free() {
            Ok(())
        } else {
            Err(MotiveError::NotAbsolute(p.to_string()))
        }
    }

    pub fn value(&self) -> LaurentPoly {
        match self {
            AbsMotive::Point => LaurentPoly::one(),
            AbsMotive::AffineLine => LaurentPoly::lefschetz(),
            AbsMotive::Gm => gl_value(1),
            AbsMotive::Gl { n } => gl_value(*n),
            AbsMotive::Poly { poly, .. } => poly.clone(),
        }
    }

    /// Half the top `t`-degree; `None` for the empty class.
    pub fn dim(&self) -> Option<i64> {
        self.value().max_t().map(|d| d.div_euclid(2))
    }

    pub fn label(&self) -> String {
        match self {
            AbsMotive::Point => "pt".into(),
            AbsMotive::AffineLine => "A1".into(),
            AbsMotive::Gm => "Gm".into(),
            AbsMotive::Gl { n } => format!("GL_{n}"),
            AbsMotive::Poly { name: Some(n), .. } => n.clone(),
            AbsMotive::Poly { name: None, poly } => format!("[{poly}]"),
        }
    }

    pub fn validate(&self) -> Result<(), MotiveError> {
        match self {
            AbsMotive::Poly { poly, .. } => Self::check_s_free(poly),
            AbsMotive::Gl { n: 0 } => Err(MotiveError::DimMismatch("GL_0 is not a group of positive rank".into())),
            _ => Ok(()),
        }
    }
}

fn gl_value(n: u32) -> LaurentPoly {
    let n = i64::from(n);
    (0..n).fold(LaurentPoly::one(), |acc, k| acc * (LaurentPoly::t_pow(2 * n) - LaurentPoly::t_pow(2 * k)))
}

//! Exact computation of motivic Gopakumar-Vafa invariants.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`]: integer Laurent polynomials in `t, s`, the field `Q(t, s)`,
//!   and exact rational matrices.
//! * [`lefschetz`]: `sl2` and `sl2 x sl2` representation content, the
//!   Jacobian-basis decomposition, Jordan cell censuses and both routes to
//!   the genus-`g` invariant.
//! * [`motives`]: expressions in the relative Grothendieck ring of varieties
//!   and their evaluation to `Z[t, t^-1, s]`.
//! * [`stacks`]: `Q(t, s)`-scaled stack classes and quotients by special groups.
//! * [`counting`]: numerical classes, exact phases of the central charge, the
//!   epsilon/delta inclusion-exclusion, the split-stratum evaluation model and
//!   the resulting invariants.
//! * [`gwseries`]: the Gopakumar-Vafa / Gromov-Witten generating series
//!   transform on truncated exact series.
//! * [`verify`]: seeded randomized property suites used by the CLI.
//!
//! Data-parallel loops go through [`par`], which uses rayon when the
//! `parallel` feature is enabled and plain iterators otherwise.

pub mod algebra;
pub mod counting;
pub mod doc;
pub mod gwseries;
pub mod lefschetz;
pub mod motives;
pub mod par;
pub mod stacks;
pub mod verify;

pub use algebra::{Int, LaurentPoly, Rat, RationalFn};

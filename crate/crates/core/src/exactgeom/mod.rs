//! Exact rational geometry: scalars, points, predicates and the
//! transformation types whose rich instances the crate enumerates.

mod affine;
mod isometry;
mod key;
pub(crate) mod linalg;
mod mobius;
mod point;
pub mod rat;
mod ratmap;
mod translation;

pub use affine::{affine_from_triples, AffineMap1, AffineMap2};
pub use isometry::{isometries_from_pairs, Isometry2};
pub use key::CanonicalKey;
pub(crate) use mobius::anchor_coord;
pub use mobius::{mobius_from_triples, Mobius1};
pub use point::{orient2, orientation, spans_plane, Point, Point2};
pub use rat::Rat;
pub use ratmap::{degree, eval, rational_fit, Poly, RationalMap1, MAX_FIT_DEGREE};
pub use translation::TranslationD;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeomError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("source points are collinear")]
    CollinearSource,
    #[error("map is degenerate (zero determinant)")]
    DegenerateMap,
    #[error("repeated value among interpolation nodes")]
    RepeatedValue,
    #[error("segment lengths differ")]
    LengthMismatch,
    #[error("coincident points")]
    CoincidentPoints,
    #[error("matrix is not orthogonal")]
    NotOrthogonal,
    #[error("denominator polynomial is identically zero")]
    ZeroDenominator,
    #[error("total degree {found} exceeds budget {budget}")]
    DegreeBudget { budget: u32, found: usize },
    #[error("no admissible interpolating map")]
    NoSolution,
    #[error("guard exceeded: {what} is {got}, limit {limit}")]
    GuardExceeded {
        what: &'static str,
        limit: usize,
        got: usize,
    },
    #[error("bad input: {0}")]
    BadInput(String),
}

/// Any map handled by the enumerators, for reporting and keyed deduplication.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AnyMap {
    Affine2(AffineMap2),
    Affine1(AffineMap1),
    Mobius1(Mobius1),
    Rational1(RationalMap1),
    Isometry2(Isometry2),
    Translation(TranslationD),
}

impl CanonicalKey for AnyMap {
    fn canonical_key(&self) -> Vec<u8> {
        match self {
            AnyMap::Affine2(m) => m.canonical_key(),
            AnyMap::Affine1(m) => m.canonical_key(),
            AnyMap::Mobius1(m) => m.canonical_key(),
            AnyMap::Rational1(m) => m.canonical_key(),
            AnyMap::Isometry2(m) => m.canonical_key(),
            AnyMap::Translation(m) => m.canonical_key(),
        }
    }
}

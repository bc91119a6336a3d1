//! Exact combinatorial geometry of rich transformations.
//!
//! The crate counts maps `phi` (translations, affine, Möbius, rational and
//! isometric maps) for which `phi(P)` meets a finite point set `P` in many
//! points, and provides the planar machinery used to reason about such
//! censuses: line arrangements with a separation metric, cuttings into
//! singletons, extremal constructions, and executable versions of the
//! triple-system pruning and averaging arguments. All arithmetic is exact.

pub mod arrangement;
pub mod cuttings;
pub mod exactgeom;
pub mod extremal;
pub mod lemmalab;
pub mod richmaps;

//! Censuses of rich transformations: maps `phi` with `|phi(P1) ∩ P2| >= k`.
//!
//! Every enumerator generates candidates from a few anchoring
//! correspondences, deduplicates them by canonical key and then recounts
//! matches exactly against the full sets. Records come out in canonical key
//! order; the identity and the zero translation are never filtered.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::hash::Hash;

use rayon::prelude::*;

use crate::cuttings::{greedy_cutting, CuttingError};
use crate::exactgeom::{
    AffineMap1, AffineMap2, CanonicalKey, GeomError, Isometry2, Mobius1, Point, Point2, Rat,
    RationalMap1, TranslationD,
};

mod line1;
mod planar;
mod translations;

pub use line1::{
    enumerate_rich_affine1, enumerate_rich_mobius1, enumerate_rich_rational1, RationalCensus,
};
pub use planar::{
    count_rich_isometries2, count_rich_lines, enumerate_rich_affine2, largest_collinear_subset,
    rich_line_histogram,
};
pub use translations::count_rich_translations;

pub const AFFINE2_GUARD: usize = 24;
pub const AFFINE1_GUARD: usize = 60;
pub const MOBIUS1_GUARD: usize = 20;
pub const RATIONAL1_GUARD: usize = 12;
pub const ISOMETRY2_GUARD: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RichError {
    #[error("empty point set")]
    EmptyInput,
    #[error("duplicate point {0}")]
    DuplicatePoint(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("guard exceeded: {what} is {got}, limit {limit}")]
    GuardExceeded {
        what: &'static str,
        limit: usize,
        got: usize,
    },
    #[error("k = {k} is below the minimum {min} for this census")]
    KTooSmall { k: usize, min: usize },
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// A transformation acting on points of type `Pt`, possibly undefined at
/// some of them (poles).
pub trait PointMap {
    type Pt: Clone + Eq + Hash + Ord;
    fn image(&self, p: &Self::Pt) -> Option<Self::Pt>;
}

impl PointMap for AffineMap2 {
    type Pt = Point2;
    fn image(&self, p: &Point2) -> Option<Point2> {
        Some(self.apply(p))
    }
}

impl PointMap for Isometry2 {
    type Pt = Point2;
    fn image(&self, p: &Point2) -> Option<Point2> {
        Some(self.apply(p))
    }
}

impl PointMap for TranslationD {
    type Pt = Point;
    fn image(&self, p: &Point) -> Option<Point> {
        self.apply(p)
    }
}

impl PointMap for AffineMap1 {
    type Pt = Rat;
    fn image(&self, x: &Rat) -> Option<Rat> {
        Some(self.apply(x))
    }
}

impl PointMap for Mobius1 {
    type Pt = Rat;
    fn image(&self, x: &Rat) -> Option<Rat> {
        self.apply(x)
    }
}

impl PointMap for RationalMap1 {
    type Pt = Rat;
    fn image(&self, x: &Rat) -> Option<Rat> {
        self.apply(x)
    }
}

/// Matched pairs `(p, phi(p))` with `p in P1`, `phi(p) in P2`, in `P1` order.
///
/// Pairs whose image is hit by more than one source are split off into
/// `duplicate_images`; they only occur for non-injective maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchSet<T> {
    pub pairs: Vec<(T, T)>,
    pub duplicate_images: Vec<(T, T)>,
}

impl<T> MatchSet<T> {
    pub fn injective(&self) -> bool {
        self.duplicate_images.is_empty()
    }

    pub fn raw_count(&self) -> usize {
        self.pairs.len() + self.duplicate_images.len()
    }
}

pub fn match_set<M: PointMap>(map: &M, p1: &[M::Pt], p2: &[M::Pt]) -> MatchSet<M::Pt> {
    let set: HashSet<&M::Pt> = p2.iter().collect();
    matches_in(map, p1, &set)
}

pub(crate) fn matches_in<M: PointMap>(
    map: &M,
    p1: &[M::Pt],
    p2: &HashSet<&M::Pt>,
) -> MatchSet<M::Pt> {
    let raw: Vec<(M::Pt, M::Pt)> = p1
        .iter()
        .filter_map(|p| {
            map.image(p)
                .filter(|q| p2.contains(q))
                .map(|q| (p.clone(), q))
        })
        .collect();
    let mut hits: HashMap<&M::Pt, usize> = HashMap::new();
    for (_, q) in &raw {
        *hits.entry(q).or_insert(0) += 1;
    }
    let dup: HashSet<M::Pt> = hits
        .into_iter()
        .filter(|&(_, h)| h > 1)
        .map(|(q, _)| q.clone())
        .collect();
    let (duplicate_images, pairs) = raw.into_iter().partition(|(_, q)| dup.contains(q));
    MatchSet {
        pairs,
        duplicate_images,
    }
}

/// A rich map with its exact, injective match set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RichMapRecord<M, T> {
    pub map: M,
    pub match_count: usize,
    pub matched_pairs: Vec<(T, T)>,
}

impl<M: PointMap> RichMapRecord<M, M::Pt> {
    /// Recomputes the match set; `None` when fewer than `k` pairs survive.
    pub fn verify(map: M, p1: &[M::Pt], p2: &[M::Pt], k: usize) -> Option<Self> {
        let set: HashSet<&M::Pt> = p2.iter().collect();
        record_from(map, p1, &set, k)
    }
}

fn record_from<M: PointMap>(
    map: M,
    p1: &[M::Pt],
    p2: &HashSet<&M::Pt>,
    k: usize,
) -> Option<RichMapRecord<M, M::Pt>> {
    let ms = matches_in(&map, p1, p2);
    (ms.pairs.len() >= k).then(|| RichMapRecord {
        match_count: ms.pairs.len(),
        matched_pairs: ms.pairs,
        map,
    })
}

/// Deduplicates candidates by canonical key and keeps the verified rich ones.
pub(crate) fn census<M>(
    candidates: Vec<M>,
    p1: &[M::Pt],
    p2: &[M::Pt],
    k: usize,
) -> Vec<RichMapRecord<M, M::Pt>>
where
    M: PointMap + CanonicalKey + Send + Sync,
    M::Pt: Send + Sync,
{
    let unique: BTreeMap<Vec<u8>, M> = candidates
        .into_iter()
        .map(|m| (m.canonical_key(), m))
        .collect();
    let set: HashSet<&M::Pt> = p2.iter().collect();
    let maps: Vec<M> = unique.into_values().collect();
    maps.into_par_iter()
        .filter_map(|m| record_from(m, p1, &set, k))
        .collect()
}

pub(crate) fn check_guard(what: &'static str, got: usize, limit: usize) -> Result<(), RichError> {
    if got > limit {
        return Err(RichError::GuardExceeded { what, limit, got });
    }
    Ok(())
}

pub(crate) fn ensure_distinct<T: Eq + Hash + std::fmt::Debug>(pts: &[T]) -> Result<(), RichError> {
    let mut seen = HashSet::with_capacity(pts.len());
    for p in pts {
        if !seen.insert(p) {
            return Err(RichError::DuplicatePoint(format!("{p:?}")));
        }
    }
    Ok(())
}

/// Keeps the records whose matched image set is certified proper by a
/// greedy cutting of at most `budget` lines.
pub fn filter_proper_matches<M: Clone>(
    records: &[RichMapRecord<M, Point2>],
    budget: impl Fn(usize) -> usize,
) -> Vec<RichMapRecord<M, Point2>> {
    records
        .iter()
        .filter(|r| {
            let images: Vec<Point2> = r.matched_pairs.iter().map(|(_, q)| q.clone()).collect();
            match greedy_cutting(&images, budget(images.len())) {
                Ok(c) => c.verify().valid,
                Err(CuttingError::BudgetExceeded { .. }) | Err(_) => false,
            }
        })
        .cloned()
        .collect()
}

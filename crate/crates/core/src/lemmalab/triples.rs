use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use super::LemmaError;
use crate::exactgeom::{AffineMap2, Point2, Rat};

/// Tripartite 3-uniform hypergraph over ground sets `U1, U2, U3`.
///
/// Elements are `usize` identifiers local to their class. Pruned systems
/// remember the reference average degrees they were pruned against, so
/// pruning them again is a no-op.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleSystem {
    ground: [BTreeSet<usize>; 3],
    triples: BTreeSet<[usize; 3]>,
    reference: Option<[Rat; 3]>,
}

impl TripleSystem {
    /// Fails if a triple repeats or uses an element outside its ground set.
    pub fn new(ground: [BTreeSet<usize>; 3], triples: Vec<[usize; 3]>) -> Result<Self, LemmaError> {
        let mut set = BTreeSet::new();
        for t in triples {
            for (i, g) in ground.iter().enumerate() {
                if !g.contains(&t[i]) {
                    return Err(LemmaError::InvariantViolation(format!(
                        "triple {t:?} leaves ground set {i}"
                    )));
                }
            }
            if !set.insert(t) {
                return Err(LemmaError::InvariantViolation(format!(
                    "triple {t:?} repeated"
                )));
            }
        }
        Ok(TripleSystem {
            ground,
            triples: set,
            reference: None,
        })
    }

    /// Ground sets `0..sizes[i]`.
    pub fn with_sizes(sizes: [usize; 3], triples: Vec<[usize; 3]>) -> Result<Self, LemmaError> {
        TripleSystem::new(sizes.map(|s| (0..s).collect()), triples)
    }

    pub fn ground(&self, class: usize) -> &BTreeSet<usize> {
        &self.ground[class]
    }

    pub fn triples(&self) -> impl Iterator<Item = &[usize; 3]> {
        self.triples.iter()
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// Degrees of every ground element of `class`, zero included.
    pub fn degrees(&self, class: usize) -> BTreeMap<usize, usize> {
        let mut d: BTreeMap<usize, usize> = self.ground[class].iter().map(|&u| (u, 0)).collect();
        for t in &self.triples {
            *d.get_mut(&t[class]).expect("triple inside ground") += 1;
        }
        d
    }

    pub fn degree(&self, class: usize, u: usize) -> usize {
        self.triples.iter().filter(|t| t[class] == u).count()
    }

    /// `|Delta| / |U_class|`.
    pub fn average_degree(&self, class: usize) -> Rat {
        Rat::from(self.triples.len() as u64) / Rat::from(self.ground[class].len().max(1) as u64)
    }

    /// Reference averages recorded by [`prune_triple_system`], if any.
    pub fn reference_averages(&self) -> Option<&[Rat; 3]> {
        self.reference.as_ref()
    }

    /// Subsystem on the given subset of one class; the other classes keep
    /// their ground sets. The result carries no reference averages.
    pub fn restrict(&self, class: usize, keep: &BTreeSet<usize>) -> TripleSystem {
        let mut ground = self.ground.clone();
        ground[class] = ground[class].intersection(keep).copied().collect();
        let triples = self
            .triples
            .iter()
            .filter(|t| ground[class].contains(&t[class]))
            .copied()
            .collect();
        TripleSystem {
            ground,
            triples,
            reference: None,
        }
    }

    /// Same system without recorded reference averages.
    pub fn forget_reference(&self) -> TripleSystem {
        TripleSystem {
            reference: None,
            ..self.clone()
        }
    }

    /// Whether every pair `(u3, u_i)`, `i = 1, 2`, lies in at most one triple.
    pub fn pairs_unique(&self) -> bool {
        let mut seen: [HashSet<(usize, usize)>; 2] = [HashSet::new(), HashSet::new()];
        self.triples
            .iter()
            .all(|t| seen[0].insert((t[2], t[0])) && seen[1].insert((t[2], t[1])))
    }
}

/// Fixpoint of deleting elements whose degree falls below a quarter of the
/// reference average degree of their class.
///
/// The reference averages are those of the input, unless the input was
/// itself produced by this function, in which case its recorded averages
/// are reused. The surviving subsystem is the largest one with every degree
/// at or above the thresholds, so the deletion order does not affect it;
/// elements are nevertheless removed lowest class, then lowest id, first.
pub fn prune_triple_system(delta: &TripleSystem) -> Result<TripleSystem, LemmaError> {
    if delta.is_empty() {
        return Err(LemmaError::EmptySystem);
    }
    let reference = delta
        .reference
        .clone()
        .unwrap_or_else(|| [0, 1, 2].map(|c| delta.average_degree(c)));
    let quarter = Rat::from(1) / Rat::from(4);
    let thresholds: Vec<Rat> = reference.iter().map(|a| a * &quarter).collect();
    let mut ground = delta.ground.clone();
    let mut alive: Vec<bool> = vec![true; delta.triples.len()];
    let triples: Vec<[usize; 3]> = delta.triples.iter().copied().collect();
    let mut incident: [HashMap<usize, Vec<usize>>; 3] = Default::default();
    for (i, t) in triples.iter().enumerate() {
        for c in 0..3 {
            incident[c].entry(t[c]).or_default().push(i);
        }
    }
    let mut degree: [HashMap<usize, usize>; 3] = Default::default();
    for c in 0..3 {
        for &u in &ground[c] {
            degree[c].insert(u, incident[c].get(&u).map_or(0, Vec::len));
        }
    }
    loop {
        let victim = (0..3).find_map(|c| {
            ground[c]
                .iter()
                .find(|u| (degree[c][u] as u64) < thresholds[c])
                .map(|&u| (c, u))
        });
        let Some((c, u)) = victim else { break };
        ground[c].remove(&u);
        for &ti in incident[c].get(&u).map(Vec::as_slice).unwrap_or(&[]) {
            if alive[ti] {
                alive[ti] = false;
                for (oc, deg) in degree.iter_mut().enumerate() {
                    *deg.get_mut(&triples[ti][oc]).expect("live triple endpoint") -= 1;
                }
            }
        }
    }
    let kept: BTreeSet<[usize; 3]> = triples
        .iter()
        .zip(&alive)
        .filter(|(_, &a)| a)
        .map(|(t, _)| *t)
        .collect();
    if 4 * kept.len() < delta.len() {
        return Err(LemmaError::Collapse {
            kept: kept.len(),
            original: delta.len(),
        });
    }
    Ok(TripleSystem {
        ground,
        triples: kept,
        reference: Some(reference),
    })
}

/// Triples `(i, j, s)` with `maps[s](P1[i]) = P2[j]`.
pub fn build_incidence_triples(
    p1: &[Point2],
    p2: &[Point2],
    maps: &[AffineMap2],
) -> Result<TripleSystem, LemmaError> {
    let index: HashMap<&Point2, usize> = p2.iter().enumerate().map(|(j, q)| (q, j)).collect();
    if index.len() != p2.len() || p1.iter().collect::<HashSet<_>>().len() != p1.len() {
        return Err(LemmaError::InvariantViolation(
            "point sets must not repeat points".into(),
        ));
    }
    let mut triples = Vec::new();
    for (s, m) in maps.iter().enumerate() {
        for (i, p) in p1.iter().enumerate() {
            if let Some(&j) = index.get(&m.apply(p)) {
                triples.push([i, j, s]);
            }
        }
    }
    let sys = TripleSystem::with_sizes([p1.len(), p2.len(), maps.len()], triples)?;
    if !sys.pairs_unique() {
        return Err(LemmaError::InvariantViolation(
            "a (map, point) pair lies in two triples".into(),
        ));
    }
    Ok(sys)
}

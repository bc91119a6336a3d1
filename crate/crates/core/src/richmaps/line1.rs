use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;

use super::{census, check_guard, ensure_distinct, matches_in, RichError, RichMapRecord};
use crate::exactgeom::linalg::nullspace;
use crate::exactgeom::rat::is_zero;
use crate::exactgeom::{
    anchor_coord, eval, rational_fit, AffineMap1, CanonicalKey, GeomError, Mobius1, Poly, Rat,
    RationalMap1, MAX_FIT_DEGREE,
};

/// Maps `x -> m x + b` with at least `k >= 2` matches of `P` into itself.
///
/// Anchored at the lowest-indexed matched source and its image; every later
/// match of the same map has the same slope to the anchor.
pub fn enumerate_rich_affine1(
    points: &[Rat],
    k: usize,
    guard: usize,
) -> Result<Vec<RichMapRecord<AffineMap1, Rat>>, RichError> {
    if k < 2 {
        return Err(RichError::KTooSmall { k, min: 2 });
    }
    check_guard("|P|", points.len(), guard)?;
    ensure_distinct(points)?;
    let n = points.len();
    let candidates: Vec<AffineMap1> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut out = Vec::new();
            if n - i < k {
                return out;
            }
            let mut slopes: HashMap<Rat, usize> = HashMap::new();
            for q1 in points {
                slopes.clear();
                for pj in &points[i + 1..] {
                    let dx = pj - &points[i];
                    for q in points {
                        if q != q1 {
                            *slopes.entry((q - q1) / &dx).or_insert(0) += 1;
                        }
                    }
                }
                for (m, &cnt) in &slopes {
                    if 1 + cnt >= k {
                        let b = q1 - m * &points[i];
                        out.push(AffineMap1::new(m.clone(), b).expect("nonzero slope"));
                    }
                }
            }
            out
        })
        .collect();
    Ok(census(candidates, points, points, k))
}

/// Möbius maps `x -> (a x + b)/(c x + d)` with at least `k >= 3` finite
/// matches of `P` into itself.
///
/// Anchored at the two lowest-indexed matched sources. After moving both
/// anchors and their images to `0` and `infinity` the map becomes
/// `z -> lambda z`, so later matches are grouped by `lambda`.
pub fn enumerate_rich_mobius1(
    points: &[Rat],
    k: usize,
    guard: usize,
) -> Result<Vec<RichMapRecord<Mobius1, Rat>>, RichError> {
    if k < 3 {
        return Err(RichError::KTooSmall { k, min: 3 });
    }
    check_guard("|P|", points.len(), guard)?;
    ensure_distinct(points)?;
    let n = points.len();
    let candidates: Vec<Mobius1> = (0..n)
        .into_par_iter()
        .flat_map_iter(|a| {
            let mut out = Vec::new();
            let mut ratios: HashMap<Rat, usize> = HashMap::new();
            for b in a + 1..n {
                if n - b + 1 < k {
                    break;
                }
                let (sa, sb) = (&points[a], &points[b]);
                let src: Vec<Rat> = points[b + 1..]
                    .iter()
                    .map(|x| Rat::from(1) / anchor_coord(x, sa, sb))
                    .collect();
                for qa in points {
                    for qb in points {
                        if qa == qb {
                            continue;
                        }
                        ratios.clear();
                        for inv in &src {
                            for qc in points {
                                if qc != qa && qc != qb {
                                    *ratios.entry(anchor_coord(qc, qa, qb) * inv).or_insert(0) += 1;
                                }
                            }
                        }
                        for (lambda, &cnt) in &ratios {
                            if 2 + cnt >= k {
                                if let Ok(m) = Mobius1::through_anchors(sa, sb, qa, qb, lambda) {
                                    out.push(m);
                                }
                            }
                        }
                    }
                }
            }
            out
        })
        .collect();
    Ok(census(candidates, points, points, k))
}

/// Rational census for one degree budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalCensus {
    /// Maps with at least `k` matched pairs whose images are hit once.
    pub records: Vec<RichMapRecord<RationalMap1, Rat>>,
    /// Non-constant maps with at least `k` raw matches some of which share
    /// an image; their duplicate-image pairs are not counted in `records`.
    pub non_injective: Vec<NonInjective>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonInjective {
    pub map: RationalMap1,
    pub pairs: Vec<(Rat, Rat)>,
    pub duplicate_images: Vec<(Rat, Rat)>,
}

/// Non-constant rational maps `p/q` with `deg p + deg q <= r` and at least
/// `k >= r + 2` matches of `P` into itself.
///
/// Anchored at the `r` lowest-indexed matched sources and their images
/// (repeats allowed). For each degree split the maps through the anchors
/// form a pencil `s N1 + t N2` of coefficient vectors; each later pair picks
/// one member of the pencil, so later matches are grouped by the ratio
/// `s : t`. Pairs satisfied by the whole pencil count towards every member.
pub fn enumerate_rich_rational1(
    points: &[Rat],
    k: usize,
    r: u32,
    guard: usize,
) -> Result<RationalCensus, RichError> {
    if r == 0 {
        return Err(GeomError::BadInput("degree budget must be positive".into()).into());
    }
    if r > MAX_FIT_DEGREE {
        return Err(GeomError::GuardExceeded {
            what: "rational degree",
            limit: MAX_FIT_DEGREE as usize,
            got: r as usize,
        }
        .into());
    }
    if k < r as usize + 2 {
        return Err(RichError::KTooSmall {
            k,
            min: r as usize + 2,
        });
    }
    check_guard("|P|", points.len(), guard)?;
    ensure_distinct(points)?;
    let anchors = anchor_sets(points.len(), r as usize, k);
    let candidates: Vec<RationalMap1> = anchors
        .into_par_iter()
        .flat_map_iter(|src| rational_anchor(points, &src, r, k))
        .collect();
    let unique: BTreeMap<Vec<u8>, RationalMap1> = candidates
        .into_iter()
        .filter(|m| m.total_degree() > 0)
        .map(|m| (m.canonical_key(), m))
        .collect();
    let set: HashSet<&Rat> = points.iter().collect();
    let maps: Vec<RationalMap1> = unique.into_values().collect();
    let checked: Vec<_> = maps
        .into_par_iter()
        .map(|m| (matches_in(&m, points, &set), m))
        .collect();
    let mut census = RationalCensus {
        records: Vec::new(),
        non_injective: Vec::new(),
    };
    for (ms, map) in checked {
        if !ms.injective() && ms.raw_count() >= k {
            census.non_injective.push(NonInjective {
                map: map.clone(),
                pairs: ms.pairs.clone(),
                duplicate_images: ms.duplicate_images.clone(),
            });
        }
        if ms.pairs.len() >= k {
            census.records.push(RichMapRecord {
                match_count: ms.pairs.len(),
                matched_pairs: ms.pairs,
                map,
            });
        }
    }
    Ok(census)
}

/// Increasing `r`-subsets of `0..n` leaving at least `k - r` later indices.
fn anchor_sets(n: usize, r: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn rec(
        start: usize,
        n: usize,
        r: usize,
        k: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == r {
            if n - cur[r - 1] > k - r {
                out.push(cur.clone());
            }
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, r, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, r, k, &mut cur, &mut out);
    out
}

fn constraint_row(x: &Rat, y: &Rat, dp: usize, dq: usize) -> Vec<Rat> {
    let mut row = Vec::with_capacity(dp + dq + 2);
    let mut xp = Rat::from(1);
    for _ in 0..=dp {
        row.push(-xp.clone());
        xp *= x;
    }
    let mut xp = Rat::from(1);
    for _ in 0..=dq {
        row.push(y * &xp);
        xp *= x;
    }
    row
}

fn map_from(theta: &[Rat], dp: usize, r: u32) -> Option<RationalMap1> {
    RationalMap1::new(theta[..=dp].to_vec(), theta[dp + 1..].to_vec(), r).ok()
}

fn rational_anchor(points: &[Rat], src: &[usize], r: u32, k: usize) -> Vec<RationalMap1> {
    let r_us = r as usize;
    let last = src[r_us - 1];
    let later = &points[last + 1..];
    let mut out = Vec::new();
    let m = points.len();
    let mut tuple = vec![0usize; r_us];
    let mut groups: HashMap<Option<Rat>, usize> = HashMap::new();
    loop {
        for dp in 0..=r_us {
            let dq = r_us - dp;
            let rows: Vec<Vec<Rat>> = src
                .iter()
                .zip(&tuple)
                .map(|(&i, &j)| constraint_row(&points[i], &points[j], dp, dq))
                .collect();
            let basis = nullspace(rows, dp + dq + 2);
            if basis.len() != 2 {
                // Dependent anchor rows: fit every completed tuple directly.
                for x in later {
                    for y in points {
                        let mut pairs: Vec<(Rat, Rat)> = src
                            .iter()
                            .zip(&tuple)
                            .map(|(&i, &j)| (points[i].clone(), points[j].clone()))
                            .collect();
                        pairs.push((x.clone(), y.clone()));
                        if let Ok(maps) = rational_fit(&pairs, r) {
                            out.extend(maps);
                        }
                    }
                }
                continue;
            }
            let (n1, n2) = (&basis[0], &basis[1]);
            let split = |v: &[Rat]| -> (Poly, Poly) { (v[..=dp].to_vec(), v[dp + 1..].to_vec()) };
            let ((p1, q1), (p2, q2)) = (split(n1), split(n2));
            groups.clear();
            let mut wildcards = 0;
            for x in later {
                let (p1x, q1x) = (eval(&p1, x), eval(&q1, x));
                let (p2x, q2x) = (eval(&p2, x), eval(&q2, x));
                for y in points {
                    // row . N = y q(x) - p(x)
                    let e1 = y * &q1x - &p1x;
                    let e2 = y * &q2x - &p2x;
                    // s e1 + t e2 = 0  ->  (s : t) = (e2 : -e1)
                    let key = match (is_zero(&e1), is_zero(&e2)) {
                        (true, true) => {
                            wildcards += 1;
                            continue;
                        }
                        (true, false) => None,
                        (false, _) => Some(-(e2 / e1)),
                    };
                    *groups.entry(key).or_insert(0) += 1;
                }
            }
            for (key, &cnt) in &groups {
                if r_us + cnt + wildcards < k {
                    continue;
                }
                let theta: Vec<Rat> = match key {
                    None => n1.clone(),
                    Some(s) => n1.iter().zip(n2).map(|(a, b)| s * a + b).collect(),
                };
                out.extend(map_from(&theta, dp, r));
            }
            if r_us + wildcards >= k {
                // The whole pencil fits; all admissible members agree, so a
                // few generic ones suffice.
                out.extend(map_from(n2, dp, r));
                for j in 0..=r_us as i64 + 3 {
                    let theta: Vec<Rat> = n1
                        .iter()
                        .zip(n2)
                        .map(|(a, b)| a + Rat::from(j) * b)
                        .collect();
                    out.extend(map_from(&theta, dp, r));
                }
            }
        }
        // next target tuple
        let mut pos = 0;
        loop {
            if pos == r_us {
                return out;
            }
            tuple[pos] += 1;
            if tuple[pos] < m {
                break;
            }
            tuple[pos] = 0;
            pos += 1;
        }
    }
}

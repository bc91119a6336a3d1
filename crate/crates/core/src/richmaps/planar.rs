use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;

use super::{census, check_guard, ensure_distinct, RichError, RichMapRecord};
use crate::arrangement::Line;
use crate::exactgeom::rat::is_zero;
use crate::exactgeom::{isometries_from_pairs, AffineMap2, Isometry2, Point2, Rat};

/// Non-degenerate affine maps of the plane with at least `k` matches whose
/// matched set contains a non-collinear triple.
///
/// Maps matching only collinear points come in continuous families and are
/// not enumerated; [`largest_collinear_subset`] tells whether such families
/// can reach `k` at all.
///
/// Candidates are anchored at the two lowest-indexed matched sources `a < b`
/// and their images. In the frame `u = b - a`, `v = perp(u)`, every other
/// source `c` off the line `ab` pins the image of `v` through its own image,
/// so all later matches of one map agree on that image and are counted in a
/// hash table.
pub fn enumerate_rich_affine2(
    p1: &[Point2],
    p2: &[Point2],
    k: usize,
    guard: usize,
) -> Result<Vec<RichMapRecord<AffineMap2, Point2>>, RichError> {
    if k < 3 {
        return Err(RichError::KTooSmall { k, min: 3 });
    }
    check_guard("|P1|", p1.len(), guard)?;
    check_guard("|P2|", p2.len(), guard)?;
    ensure_distinct(p1)?;
    ensure_distinct(p2)?;
    let targets: HashSet<&Point2> = p2.iter().collect();
    let diffs: Vec<Vec<Point2>> = p2
        .iter()
        .map(|qa| p2.iter().map(|q| q.sub(qa)).collect())
        .collect();
    let candidates: Vec<AffineMap2> = (0..p1.len())
        .into_par_iter()
        .flat_map_iter(|a| affine2_anchor(p1, p2, &targets, &diffs, a, k))
        .collect();
    Ok(census(candidates, p1, p2, k))
}

fn affine2_anchor(
    p1: &[Point2],
    p2: &[Point2],
    targets: &HashSet<&Point2>,
    diffs: &[Vec<Point2>],
    a: usize,
    k: usize,
) -> Vec<AffineMap2> {
    let n = p1.len();
    let pa = &p1[a];
    let mut out = Vec::new();
    let mut counts: HashMap<Point2, usize> = HashMap::new();
    for b in a + 1..n {
        if n - b + 1 < k {
            break;
        }
        let u = p1[b].sub(pa);
        let n2 = u.norm2();
        let mut on_line = Vec::new();
        let mut off_line = Vec::new();
        for pc in &p1[b + 1..] {
            let d = pc.sub(pa);
            let s = d.dot(&u) / &n2;
            let t = u.cross(&d) / &n2;
            if is_zero(&t) {
                on_line.push(s);
            } else {
                off_line.push((s, Rat::from(1) / t));
            }
        }
        if off_line.is_empty() {
            continue;
        }
        for (ia, qa) in p2.iter().enumerate() {
            for ib in 0..p2.len() {
                if ia == ib {
                    continue;
                }
                let dq = &diffs[ia][ib];
                let collinear_hits = on_line
                    .iter()
                    .filter(|s| {
                        targets.contains(&Point2::new(&qa.x + *s * &dq.x, &qa.y + *s * &dq.y))
                    })
                    .count();
                if 2 + collinear_hits + off_line.len() < k {
                    continue;
                }
                counts.clear();
                for (s, inv_t) in &off_line {
                    let (sx, sy) = (s * &dq.x, s * &dq.y);
                    for d in &diffs[ia] {
                        let w = Point2::new((&d.x - &sx) * inv_t, (&d.y - &sy) * inv_t);
                        *counts.entry(w).or_insert(0) += 1;
                    }
                }
                for (w, &cnt) in &counts {
                    if 2 + collinear_hits + cnt < k || is_zero(&dq.cross(w)) {
                        continue;
                    }
                    if let Some(m) = affine_from_frame(pa, &u, &n2, qa, dq, w) {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

/// The affine map with `a -> qa`, `L u = dq`, `L perp(u) = w`.
fn affine_from_frame(
    pa: &Point2,
    u: &Point2,
    n2: &Rat,
    qa: &Point2,
    dq: &Point2,
    w: &Point2,
) -> Option<AffineMap2> {
    let l11 = (&dq.x * &u.x - &w.x * &u.y) / n2;
    let l12 = (&dq.x * &u.y + &w.x * &u.x) / n2;
    let l21 = (&dq.y * &u.x - &w.y * &u.y) / n2;
    let l22 = (&dq.y * &u.y + &w.y * &u.x) / n2;
    let c1 = &qa.x - (&l11 * &pa.x + &l12 * &pa.y);
    let c2 = &qa.y - (&l21 * &pa.x + &l22 * &pa.y);
    AffineMap2::new(l11, l12, c1, l21, l22, c2).ok()
}

/// Size of the largest collinear subset of `P`.
pub fn largest_collinear_subset(points: &[Point2]) -> usize {
    let distinct: Vec<&Point2> = points.iter().collect::<HashSet<_>>().into_iter().collect();
    rich_line_histogram(points)
        .keys()
        .next_back()
        .copied()
        .unwrap_or(distinct.len().min(1))
}

/// Isometries of the plane with at least `k >= 2` matches of `P` into
/// itself, anchored at the two lowest-indexed matched points.
pub fn count_rich_isometries2(
    points: &[Point2],
    k: usize,
    guard: usize,
) -> Result<Vec<RichMapRecord<Isometry2, Point2>>, RichError> {
    if k < 2 {
        return Err(RichError::KTooSmall { k, min: 2 });
    }
    check_guard("|P|", points.len(), guard)?;
    ensure_distinct(points)?;
    let set: HashSet<&Point2> = points.iter().collect();
    let mut by_length: HashMap<Rat, Vec<(usize, usize)>> = HashMap::new();
    for (i, p) in points.iter().enumerate() {
        for (j, q) in points.iter().enumerate() {
            if i != j {
                by_length.entry(q.sub(p).norm2()).or_default().push((i, j));
            }
        }
    }
    let n = points.len();
    let candidates: Vec<Isometry2> = (0..n)
        .into_par_iter()
        .flat_map_iter(|a| {
            let mut out = Vec::new();
            for b in a + 1..n {
                if n - b + 1 < k {
                    break;
                }
                let len = points[b].sub(&points[a]).norm2();
                for &(i, j) in &by_length[&len] {
                    let pair =
                        isometries_from_pairs(&points[a], &points[b], &points[i], &points[j])
                            .expect("equal nonzero lengths");
                    for m in pair {
                        let hits = points[b + 1..]
                            .iter()
                            .filter(|c| set.contains(&m.apply(c)))
                            .count();
                        if 2 + hits >= k {
                            out.push(m);
                        }
                    }
                }
            }
            out
        })
        .collect();
    Ok(census(candidates, points, points, k))
}

/// Histogram `points on line -> number of lines` over all lines through at
/// least two points of `P`. Repeated points are counted once.
pub fn rich_line_histogram(points: &[Point2]) -> BTreeMap<usize, usize> {
    let mut pts: Vec<&Point2> = points.iter().collect();
    pts.sort();
    pts.dedup();
    let mut pairs: HashMap<Line, usize> = HashMap::new();
    for (i, p) in pts.iter().enumerate() {
        for q in &pts[i + 1..] {
            *pairs
                .entry(Line::through(p, q).expect("distinct points"))
                .or_insert(0) += 1;
        }
    }
    let mut hist = BTreeMap::new();
    for c in pairs.into_values() {
        // c = m (m - 1) / 2
        let m = (1 + 8 * c).isqrt().div_ceil(2);
        *hist.entry(m).or_insert(0) += 1;
    }
    hist
}

/// Number of lines containing at least `k` points of `P` (`k >= 2`).
pub fn count_rich_lines(points: &[Point2], k: usize) -> usize {
    rich_line_histogram(points)
        .range(k.max(2)..)
        .map(|(_, &c)| c)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::affine_from_triples;
    use crate::exactgeom::rat::int;
    use crate::exactgeom::CanonicalKey;

    fn grid(s: i64) -> Vec<Point2> {
        (0..s)
            .flat_map(|x| (0..s).map(move |y| Point2::from_ints(x, y)))
            .collect()
    }

    /// Every ordered non-collinear source triple against every ordered
    /// target triple, no pruning.
    fn oracle(p1: &[Point2], p2: &[Point2], k: usize) -> Vec<(Vec<u8>, usize)> {
        let mut found = BTreeMap::new();
        let triples = |p: &[Point2]| {
            let n = p.len();
            let mut t = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    for l in 0..n {
                        if i != j && j != l && i != l {
                            t.push([p[i].clone(), p[j].clone(), p[l].clone()]);
                        }
                    }
                }
            }
            t
        };
        let (src, dst) = (triples(p1), triples(p2));
        for s in &src {
            for d in &dst {
                if let Ok(m) = affine_from_triples(s, d) {
                    let hits = p1.iter().filter(|p| p2.contains(&m.apply(p))).count();
                    if hits >= k {
                        found.insert(m.canonical_key(), hits);
                    }
                }
            }
        }
        found.into_iter().collect()
    }

    fn keyed(recs: &[RichMapRecord<AffineMap2, Point2>]) -> Vec<(Vec<u8>, usize)> {
        recs.iter()
            .map(|r| (r.map.canonical_key(), r.match_count))
            .collect()
    }

    #[test]
    fn square_symmetries() {
        let sq = grid(2);
        let got = enumerate_rich_affine2(&sq, &sq, 4, 24).unwrap();
        assert_eq!(keyed(&got), oracle(&sq, &sq, 4));
        assert_eq!(got.len(), 8);
    }

    #[test]
    fn matches_oracle_on_small_sets() {
        let p = vec![
            Point2::from_ints(0, 0),
            Point2::from_ints(1, 0),
            Point2::from_ints(2, 0),
            Point2::from_ints(0, 1),
            Point2::from_ints(1, 2),
            Point2::from_ints(3, 1),
        ];
        for k in 3..=6 {
            assert_eq!(
                keyed(&enumerate_rich_affine2(&p, &p, k, 24).unwrap()),
                oracle(&p, &p, k),
                "k={k}"
            );
        }
        let q: Vec<Point2> = p
            .iter()
            .map(|a| Point2::new(&a.x * int(2), &a.y + int(1)))
            .collect();
        assert_eq!(
            keyed(&enumerate_rich_affine2(&p, &q, 3, 24).unwrap()),
            oracle(&p, &q, 3)
        );
    }

    #[test]
    fn identity_present_at_full_k() {
        let p = vec![
            Point2::from_ints(0, 0),
            Point2::from_ints(5, 1),
            Point2::from_ints(2, 7),
            Point2::from_ints(3, 3),
        ];
        let got = enumerate_rich_affine2(&p, &p, 4, 24).unwrap();
        assert!(got
            .iter()
            .any(|r| r.map == AffineMap2::identity() && r.match_count == 4));
    }

    #[test]
    fn affine2_guards() {
        let p = grid(2);
        assert_eq!(
            enumerate_rich_affine2(&p, &p, 2, 24),
            Err(RichError::KTooSmall { k: 2, min: 3 })
        );
        assert!(matches!(
            enumerate_rich_affine2(&grid(5), &p, 3, 24),
            Err(RichError::GuardExceeded { .. })
        ));
    }

    #[test]
    fn square_isometries() {
        let sq = grid(2);
        assert_eq!(count_rich_isometries2(&sq, 4, 40).unwrap().len(), 8);
    }

    #[test]
    fn segment_isometries() {
        let seg = vec![Point2::from_ints(0, 0), Point2::from_ints(1, 0)];
        assert_eq!(count_rich_isometries2(&seg, 2, 40).unwrap().len(), 4);
    }

    #[test]
    fn rich_lines_on_grid() {
        let g = grid(3);
        assert_eq!(count_rich_lines(&g, 3), 8);
        assert_eq!(count_rich_lines(&g, 2), 20);
        let row: Vec<Point2> = (0..7).map(|i| Point2::from_ints(i, 2 * i)).collect();
        assert_eq!(count_rich_lines(&row, 7), 1);
        assert_eq!(largest_collinear_subset(&g), 3);
        assert_eq!(largest_collinear_subset(&row), 7);
    }
}

//! Certificates that a point set is cut into singletons by few hyperplanes.
//!
//! A set of `N` points in `R^d` is cut by `H` when no point lies on a member
//! of `H` and no two points share a sign vector. The quality of a
//! certificate is `|H| / N^(1/d)`; it is carried exactly as `|H|^d / N`.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::arrangement::Line;
use crate::exactgeom::rat::{frac, pow, root_bracket, sign, Rat};
use crate::exactgeom::{Point, Point2};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CuttingError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("empty point set")]
    EmptyInput,
    #[error("greedy cutting stopped with {unseparated} unseparated pairs after {} lines", partial.planes().len())]
    BudgetExceeded {
        partial: Box<Cutting>,
        unseparated: usize,
    },
}

/// Hyperplane `normal . x + offset = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    pub normal: Vec<Rat>,
    pub offset: Rat,
}

impl Hyperplane {
    pub fn new(normal: Vec<Rat>, offset: Rat) -> Self {
        Hyperplane { normal, offset }
    }

    /// `x_axis = value`.
    pub fn axis(dim: usize, axis: usize, value: Rat) -> Self {
        let mut normal = vec![Rat::from(0); dim];
        normal[axis] = Rat::from(1);
        Hyperplane {
            normal,
            offset: -value,
        }
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn side(&self, p: &Point) -> i8 {
        let s: Rat = self
            .normal
            .iter()
            .zip(p.coords())
            .map(|(a, x)| a * x)
            .sum::<Rat>()
            + &self.offset;
        sign(&s)
    }

    pub fn to_line(&self) -> Option<Line> {
        match self.normal.as_slice() {
            [a, b] => Line::new(a.clone(), b.clone(), self.offset.clone()).ok(),
            _ => None,
        }
    }
}

impl From<&Line> for Hyperplane {
    fn from(l: &Line) -> Self {
        let [a, b, c] = l.coeffs();
        Hyperplane::new(vec![a.clone(), b.clone()], c.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CutFailure {
    OnHyperplane { point: usize, plane: usize },
    Unseparated { first: usize, second: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CuttingCheck {
    pub valid: bool,
    pub failure: Option<CutFailure>,
    /// `|H|^d / N`.
    pub constant_pow: Rat,
    pub dim: usize,
}

impl CuttingCheck {
    /// Rational bracket of width at most `1/q` around `|H| / N^(1/d)`.
    pub fn constant_bracket(&self, q: u64) -> (Rat, Rat) {
        root_bracket(&self.constant_pow, self.dim as u32, q)
    }
}

fn check_dims(points: &[Point], planes: &[Hyperplane]) -> Result<usize, CuttingError> {
    let d = points.first().ok_or(CuttingError::EmptyInput)?.dim();
    for p in points {
        if p.dim() != d {
            return Err(CuttingError::DimensionMismatch {
                expected: d,
                found: p.dim(),
            });
        }
    }
    for h in planes {
        if h.dim() != d {
            return Err(CuttingError::DimensionMismatch {
                expected: d,
                found: h.dim(),
            });
        }
    }
    Ok(d)
}

pub fn verify_cutting(
    points: &[Point],
    planes: &[Hyperplane],
) -> Result<CuttingCheck, CuttingError> {
    let d = check_dims(points, planes)?;
    let constant_pow =
        pow(&Rat::from(planes.len() as u64), d as u32) / Rat::from(points.len() as u64);
    let mut seen: HashMap<Vec<bool>, usize> = HashMap::new();
    let mut failure = None;
    'points: for (i, p) in points.iter().enumerate() {
        let mut sv = Vec::with_capacity(planes.len());
        for (j, h) in planes.iter().enumerate() {
            match h.side(p) {
                0 => {
                    failure = Some(CutFailure::OnHyperplane { point: i, plane: j });
                    break 'points;
                }
                s => sv.push(s > 0),
            }
        }
        if let Some(&first) = seen.get(&sv) {
            failure = Some(CutFailure::Unseparated { first, second: i });
            break;
        }
        seen.insert(sv, i);
    }
    Ok(CuttingCheck {
        valid: failure.is_none(),
        failure,
        constant_pow,
        dim: d,
    })
}

/// A family of hyperplanes offered as a certificate for `points`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cutting {
    planes: Vec<Hyperplane>,
    points: Vec<Point>,
    constant_pow: Rat,
}

impl Cutting {
    fn new(planes: Vec<Hyperplane>, points: Vec<Point>) -> Self {
        let d = points.first().map_or(1, Point::dim) as u32;
        let constant_pow =
            pow(&Rat::from(planes.len() as u64), d) / Rat::from(points.len().max(1) as u64);
        Cutting {
            planes,
            points,
            constant_pow,
        }
    }

    pub fn planes(&self) -> &[Hyperplane] {
        &self.planes
    }

    /// Planar members as lines; empty for `d != 2`.
    pub fn lines(&self) -> Vec<Line> {
        self.planes.iter().filter_map(Hyperplane::to_line).collect()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn constant_pow(&self) -> &Rat {
        &self.constant_pow
    }

    pub fn verify(&self) -> CuttingCheck {
        verify_cutting(&self.points, &self.planes).expect("dimensions fixed at construction")
    }
}

/// Axis-parallel half-integer hyperplanes for the lattice
/// `{1..sides[0]} x ... x {1..sides[d-1]}`.
pub fn lattice_cutting(sides: &[usize]) -> Cutting {
    let d = sides.len();
    let mut planes = Vec::new();
    for (axis, &s) in sides.iter().enumerate() {
        for i in 1..s {
            planes.push(Hyperplane::axis(d, axis, frac(2 * i as i64 + 1, 2)));
        }
    }
    Cutting::new(planes, lattice_points(sides))
}

/// Lattice points in lexicographic order of coordinates.
pub fn lattice_points(sides: &[usize]) -> Vec<Point> {
    let mut out = vec![Vec::new()];
    for &s in sides {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<i64>| {
                (1..=s as i64).map(move |v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out.iter().map(|c| Point::from_ints(c)).collect()
}

/// The `rows x cols` grid `{1..cols} x {1..rows}` with its
/// `(cols - 1)` vertical and `(rows - 1)` horizontal half-integer lines.
pub fn grid_cutting(rows: usize, cols: usize) -> Cutting {
    lattice_cutting(&[cols, rows])
}

/// Normals of the candidate directions tried by [`greedy_cutting`].
pub const GREEDY_DIRECTIONS: [(i64, i64); 8] = [
    (1, 0),
    (0, 1),
    (1, 1),
    (1, -1),
    (1, 2),
    (2, 1),
    (1, -2),
    (2, -1),
];

/// Candidate lines: for each direction in [`GREEDY_DIRECTIONS`], the
/// bisectors between consecutive distinct projections, in increasing order.
pub fn greedy_candidates(points: &[Point2]) -> Vec<Line> {
    let mut out = Vec::new();
    for &(nx, ny) in &GREEDY_DIRECTIONS {
        let (nx, ny) = (Rat::from(nx), Rat::from(ny));
        let mut proj: Vec<Rat> = points.iter().map(|p| &nx * &p.x + &ny * &p.y).collect();
        proj.sort();
        proj.dedup();
        for w in proj.windows(2) {
            let mid = (&w[0] + &w[1]) / Rat::from(2);
            out.push(Line::new(nx.clone(), ny.clone(), -mid).expect("nonzero normal"));
        }
    }
    out
}

/// Greedy set cover of point pairs by candidate lines.
///
/// Each round takes the candidate separating the most still-unseparated
/// pairs (lowest index on ties). The greedy runs twice, once over the
/// axis-parallel candidates alone and once over all directions, and the
/// smaller certificate wins (the full run on ties). Failure is
/// inconclusive: it only says this heuristic found no certificate within
/// `budget`.
pub fn greedy_cutting(points: &[Point2], budget: usize) -> Result<Cutting, CuttingError> {
    if points.is_empty() {
        return Err(CuttingError::EmptyInput);
    }
    let candidates = greedy_candidates(points);
    let axis: Vec<Line> = candidates
        .iter()
        .filter(|l| l.coeffs()[0] == &Rat::from(0) || l.coeffs()[1] == &Rat::from(0))
        .cloned()
        .collect();
    let full = greedy_run(points, &candidates, budget);
    let axis = greedy_run(points, &axis, budget);
    match (full, axis) {
        (Ok(f), Ok(a)) => Ok(if a.planes().len() < f.planes().len() {
            a
        } else {
            f
        }),
        (Ok(f), Err(_)) => Ok(f),
        (Err(_), Ok(a)) => Ok(a),
        (Err(f), Err(_)) => Err(f),
    }
}

fn greedy_run(
    points: &[Point2],
    candidates: &[Line],
    budget: usize,
) -> Result<Cutting, CuttingError> {
    let sides: Vec<Vec<bool>> = candidates
        .par_iter()
        .map(|l| points.iter().map(|p| l.side(p) > 0).collect())
        .collect();
    let mut class = vec![0usize; points.len()];
    let mut classes = 1;
    let mut chosen: Vec<usize> = Vec::new();
    let unseparated = |class: &[usize], classes: usize| {
        let mut sizes = vec![0usize; classes];
        for &c in class {
            sizes[c] += 1;
        }
        sizes
            .iter()
            .map(|&s| s * s.saturating_sub(1) / 2)
            .sum::<usize>()
    };
    loop {
        let left = unseparated(&class, classes);
        if left == 0 {
            break;
        }
        if chosen.len() == budget {
            return Err(budget_exceeded(candidates, &chosen, points, left));
        }
        let best = sides
            .par_iter()
            .enumerate()
            .map(|(i, s)| {
                let mut pos = vec![0usize; classes];
                let mut tot = vec![0usize; classes];
                for (p, &c) in class.iter().enumerate() {
                    tot[c] += 1;
                    pos[c] += s[p] as usize;
                }
                let score: usize = pos.iter().zip(&tot).map(|(&a, &t)| a * (t - a)).sum();
                (score, std::cmp::Reverse(i))
            })
            .max();
        let Some((score, std::cmp::Reverse(idx))) = best else {
            return Err(budget_exceeded(candidates, &chosen, points, left));
        };
        if score == 0 {
            return Err(budget_exceeded(candidates, &chosen, points, left));
        }
        chosen.push(idx);
        let mut remap: HashMap<(usize, bool), usize> = HashMap::new();
        for (p, c) in class.iter_mut().enumerate() {
            let next = remap.len();
            *c = *remap.entry((*c, sides[idx][p])).or_insert(next);
        }
        classes = remap.len();
    }
    Ok(Cutting::new(
        chosen
            .iter()
            .map(|&i| Hyperplane::from(&candidates[i]))
            .collect(),
        points.iter().map(Point2::to_point).collect(),
    ))
}

fn budget_exceeded(
    candidates: &[Line],
    chosen: &[usize],
    points: &[Point2],
    left: usize,
) -> CuttingError {
    CuttingError::BudgetExceeded {
        partial: Box::new(Cutting::new(
            chosen
                .iter()
                .map(|&i| Hyperplane::from(&candidates[i]))
                .collect(),
            points.iter().map(Point2::to_point).collect(),
        )),
        unseparated: left,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::rat::int;

    fn grid_pts(n: i64) -> Vec<Point> {
        (1..=n)
            .flat_map(|x| (1..=n).map(move |y| Point::from_ints(&[x, y])))
            .collect()
    }

    #[test]
    fn grid_certificate_verifies() {
        let h: Vec<Hyperplane> = [(1, 0, 3), (1, 0, 5), (0, 1, 3), (0, 1, 5)]
            .iter()
            .map(|&(a, b, c)| Hyperplane::new(vec![int(a), int(b)], frac(-c, 2)))
            .collect();
        let chk = verify_cutting(&grid_pts(3), &h).unwrap();
        assert!(chk.valid);
        assert_eq!(chk.constant_pow, frac(16, 9));
    }

    #[test]
    fn duplicates_never_cut() {
        let pts = vec![Point::from_ints(&[0, 0]), Point::from_ints(&[0, 0])];
        let h = vec![Hyperplane::axis(2, 0, frac(1, 2))];
        let chk = verify_cutting(&pts, &h).unwrap();
        assert!(!chk.valid);
        assert_eq!(
            chk.failure,
            Some(CutFailure::Unseparated {
                first: 0,
                second: 1
            })
        );
    }

    #[test]
    fn two_points_one_line() {
        let pts = vec![Point::from_ints(&[0, 0]), Point::from_ints(&[1, 1])];
        assert!(
            verify_cutting(&pts, &[Hyperplane::axis(2, 0, frac(1, 2))])
                .unwrap()
                .valid
        );
        let on = verify_cutting(&pts, &[Hyperplane::axis(2, 0, int(1))]).unwrap();
        assert_eq!(
            on.failure,
            Some(CutFailure::OnHyperplane { point: 1, plane: 0 })
        );
    }

    #[test]
    fn dimension_checks() {
        let pts = vec![Point::from_ints(&[0, 0])];
        let err = verify_cutting(&pts, &[Hyperplane::axis(3, 0, int(1))]).unwrap_err();
        assert_eq!(
            err,
            CuttingError::DimensionMismatch {
                expected: 2,
                found: 3
            }
        );
        assert_eq!(
            verify_cutting(&[], &[]).unwrap_err(),
            CuttingError::EmptyInput
        );
    }

    #[test]
    fn grid_cutting_shapes() {
        let g = grid_cutting(3, 3);
        assert_eq!(g.planes().len(), 4);
        assert_eq!(g.constant_pow(), &frac(16, 9));
        assert!(g.verify().valid);
        let row = grid_cutting(1, 5);
        assert_eq!(row.planes().len(), 4);
        assert!(row
            .planes()
            .iter()
            .all(|h| h.normal == vec![int(1), int(0)]));
        let tall = grid_cutting(2, 16);
        assert_eq!(tall.planes().len(), 16);
        assert_eq!(tall.constant_pow(), &int(8));
        assert!(tall.verify().valid);
    }

    #[test]
    fn lattice_cutting_3d() {
        let c = lattice_cutting(&[2, 4, 4]);
        assert_eq!(c.points().len(), 32);
        assert_eq!(c.planes().len(), 1 + 3 + 3);
        assert!(c.verify().valid);
    }

    #[test]
    fn greedy_on_collinear_points_uses_parallel_lines() {
        let pts: Vec<Point2> = (0..6).map(|i| Point2::from_ints(i, 0)).collect();
        let c = greedy_cutting(&pts, 5).unwrap();
        assert_eq!(c.planes().len(), 5);
        assert!(c.lines().iter().all(|l| l.coeffs()[1] == &int(0)));
        assert!(c.verify().valid);
        assert!(matches!(
            greedy_cutting(&pts, 4),
            Err(CuttingError::BudgetExceeded { unseparated: 1, .. })
        ));
    }

    #[test]
    fn greedy_never_splits_identical_points() {
        let pts = vec![Point2::from_ints(1, 1), Point2::from_ints(1, 1)];
        match greedy_cutting(&pts, 10) {
            Err(CuttingError::BudgetExceeded {
                partial,
                unseparated,
            }) => {
                assert_eq!(unseparated, 1);
                assert!(partial.planes().is_empty());
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn greedy_3x3_uses_four_lines() {
        let pts: Vec<Point2> = (1..=3)
            .flat_map(|x| (1..=3).map(move |y| Point2::from_ints(x, y)))
            .collect();
        assert_eq!(greedy_cutting(&pts, 4).unwrap().planes().len(), 4);
    }

    #[test]
    fn greedy_grids_within_axis_budget() {
        for r in 1..=8i64 {
            for s in 1..=8i64 {
                let pts: Vec<Point2> = (1..=s)
                    .flat_map(|x| (1..=r).map(move |y| Point2::from_ints(x, y)))
                    .collect();
                let budget = (r - 1 + s - 1) as usize;
                let c = greedy_cutting(&pts, budget).unwrap_or_else(|e| panic!("{r}x{s}: {e}"));
                assert!(c.verify().valid);
            }
        }
    }
}

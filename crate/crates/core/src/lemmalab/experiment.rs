use rayon::prelude::*;

use super::LemmaError;
use crate::cuttings::greedy_cutting;
use crate::exactgeom::rat::{pow, Rat};
use crate::exactgeom::{AffineMap2, Point2};
use crate::extremal::{gen_noncollinear_affine_example, gen_shift_example};
use crate::richmaps::enumerate_rich_affine2;

/// Graph `{(p, phi(p))}` of a planar affine map, a 2-plane in `R^4`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphPlane {
    map: AffineMap2,
}

pub fn graph_plane_embed(map: &AffineMap2) -> GraphPlane {
    GraphPlane { map: map.clone() }
}

impl GraphPlane {
    pub fn map(&self) -> &AffineMap2 {
        &self.map
    }

    /// The point of the plane over `(x, y)`.
    pub fn point_at(&self, x: &Rat, y: &Rat) -> [Rat; 4] {
        let q = self.map.apply(&Point2::new(x.clone(), y.clone()));
        [x.clone(), y.clone(), q.x, q.y]
    }

    /// Rows `[e_x, e_y, e_z, e_w, e_0]` of the two linear equations
    /// `e . (x, y, z, w) + e_0 = 0` cutting out the plane.
    pub fn equations(&self) -> [[Rat; 5]; 2] {
        let [a1, b1, c1, a2, b2, c2] = self.map.coeffs();
        let (z, o) = (Rat::from(0), Rat::from(1));
        [
            [-a1.clone(), -b1.clone(), o.clone(), z.clone(), -c1.clone()],
            [-a2.clone(), -b2.clone(), z, o, -c2.clone()],
        ]
    }

    pub fn contains(&self, p: &Point2, q: &Point2) -> bool {
        let v = [&p.x, &p.y, &q.x, &q.y];
        self.equations().iter().all(|e| {
            let s: Rat = e[..4].iter().zip(v).map(|(a, b)| a * b).sum::<Rat>() + &e[4];
            s == 0
        })
    }

    /// `|S ∩ (P1 x P2)|`, counted over all pairs.
    pub fn richness(&self, p1: &[Point2], p2: &[Point2]) -> usize {
        p1.iter()
            .map(|p| p2.iter().filter(|q| self.contains(p, q)).count())
            .sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `s x s` grid, `N = s^2`.
    Grid,
    /// Level-shift construction with `k = 2`.
    Shift,
    /// `N/2` axis points plus `N/2` points with distinct quotients.
    NonCollinear,
    /// `N` points on a line.
    Collinear,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Grid => "grid",
            Family::Shift => "shift",
            Family::NonCollinear => "noncollinear",
            Family::Collinear => "collinear",
        }
    }

    pub fn instance(&self, n: usize) -> Result<Vec<Point2>, LemmaError> {
        let bad = |m: String| LemmaError::HypothesisViolated(m);
        match self {
            Family::Grid => {
                let s = n.isqrt();
                if s * s != n {
                    return Err(bad(format!("grid size {n} is not a square")));
                }
                let s = s as i64;
                Ok((1..=s)
                    .flat_map(|x| (1..=s).map(move |y| Point2::from_ints(x, y)))
                    .collect())
            }
            Family::Shift => gen_shift_example(n, 2)
                .map_err(|e| bad(e.to_string()))?
                .points
                .iter()
                .map(|p| p.to_point2().map_err(|e| bad(e.to_string())))
                .collect(),
            Family::NonCollinear => {
                if !n.is_multiple_of(2) {
                    return Err(bad(format!("noncollinear size {n} is odd")));
                }
                Ok(gen_noncollinear_affine_example(n / 2)
                    .map_err(|e| bad(e.to_string()))?
                    .points)
            }
            Family::Collinear => Ok((1..=n as i64).map(|i| Point2::from_ints(i, 0)).collect()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentRow {
    pub family: &'static str,
    pub n: usize,
    pub k: usize,
    /// Affine maps with at least `k` matches spanning a non-collinear triple.
    pub census: usize,
    /// `census / N`.
    pub lambda: Rat,
    pub cutting_lines: Option<usize>,
    /// `|H|^2 / N` of the certificate, when one was found within budget.
    pub constant_pow: Option<Rat>,
    /// Whether a cutting with at most `C sqrt(N)` lines was found.
    pub proper: bool,
}

/// Census of rich affine maps on family instances of the given sizes.
///
/// `k = max(3, ceil(cN))`. Properness is certified by a greedy cutting with
/// budget `floor(C sqrt(N))`; instances without a certificate are reported
/// with `proper = false`.
pub fn main_theorem_experiment(
    family: Family,
    sizes: &[usize],
    c: &Rat,
    big_c: &Rat,
    guard: usize,
) -> Result<Vec<ExperimentRow>, LemmaError> {
    sizes
        .par_iter()
        .map(|&n| {
            let pts = family.instance(n)?;
            let nn = pts.len();
            let cn = c * Rat::from(nn as u64);
            let k = ceil_usize(&cn).max(3);
            let census = enumerate_rich_affine2(&pts, &pts, k, guard)?.len();
            let budget = floor_sqrt_scaled(big_c, nn);
            let (cutting_lines, constant_pow, proper) = match greedy_cutting(&pts, budget) {
                Ok(cut) if cut.verify().valid => (
                    Some(cut.planes().len()),
                    Some(cut.constant_pow().clone()),
                    true,
                ),
                _ => (None, None, false),
            };
            Ok(ExperimentRow {
                family: family.name(),
                n: nn,
                k,
                census,
                lambda: Rat::from(census as u64) / Rat::from(nn as u64),
                cutting_lines,
                constant_pow,
                proper,
            })
        })
        .collect()
}

fn ceil_usize(x: &Rat) -> usize {
    let mut k = 0usize;
    while (k as u64) < *x {
        k += 1;
    }
    k
}

/// `floor(C sqrt(n))`, exactly.
fn floor_sqrt_scaled(big_c: &Rat, n: usize) -> usize {
    let target = big_c * big_c * Rat::from(n as u64);
    let mut b = 0usize;
    while pow(&Rat::from((b + 1) as u64), 2) <= target {
        b += 1;
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::rat::{frac, int};
    use crate::richmaps::match_set;

    #[test]
    fn identity_plane_is_diagonal() {
        let pts: Vec<Point2> = (0..4).map(|i| Point2::from_ints(i, 3 - i * i)).collect();
        let g = graph_plane_embed(&AffineMap2::identity());
        assert_eq!(g.richness(&pts, &pts), 4);
        assert_eq!(
            g.point_at(&int(2), &int(5)),
            [int(2), int(5), int(2), int(5)]
        );
    }

    #[test]
    fn translation_plane_richness() {
        let pts: Vec<Point2> = (0..3).map(|i| Point2::from_ints(i, 0)).collect();
        let m = AffineMap2::translation(int(1), int(0));
        assert_eq!(graph_plane_embed(&m).richness(&pts, &pts), 2);
        assert_eq!(match_set(&m, &pts, &pts).pairs.len(), 2);
    }

    #[test]
    fn budgets() {
        assert_eq!(floor_sqrt_scaled(&int(2), 9), 6);
        assert_eq!(floor_sqrt_scaled(&frac(3, 2), 10), 4);
        assert_eq!(ceil_usize(&frac(9, 2)), 5);
        assert_eq!(ceil_usize(&int(4)), 4);
    }

    #[test]
    fn collinear_family_rejected() {
        let rows =
            main_theorem_experiment(Family::Collinear, &[9], &frac(1, 2), &int(2), 24).unwrap();
        assert!(!rows[0].proper);
        assert_eq!(rows[0].census, 0);
    }

    #[test]
    fn grid_family_small() {
        let rows =
            main_theorem_experiment(Family::Grid, &[9, 16], &frac(1, 2), &int(2), 24).unwrap();
        assert!(rows.iter().all(|r| r.proper && r.census > 0));
    }
}

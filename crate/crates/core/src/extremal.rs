//! Extremal constructions with many rich maps or rich subspaces.
//!
//! Each generator returns its point set together with a certified family.
//! Every member is recounted against the point set before it is returned;
//! a member that falls short is reported as an error, never dropped.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;

use crate::exactgeom::rat::{frac, int, pow};
use crate::exactgeom::{AffineMap2, Point, Point2, Rat, TranslationD};
use crate::richmaps::RichMapRecord;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExtremalError {
    #[error("k too large: no level set fits (t = 0)")]
    KTooLarge,
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("certified member failed re-verification: {0}")]
    VerificationFailed(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionOutput<P, R> {
    pub points: Vec<P>,
    pub certified_family: Vec<R>,
    /// The closed-form lower bound the family is compared against.
    pub claimed_lower_bound: Rat,
    /// Sizes, ranges and derived parameters, as display strings.
    pub metadata: BTreeMap<&'static str, String>,
}

/// Greedy set of naturals with all pairwise differences distinct:
/// each step adds the least integer keeping the differences fresh.
pub fn sidon_set(t: usize) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::with_capacity(t);
    let mut diffs: HashSet<u64> = HashSet::new();
    let mut y = 1u64;
    while out.len() < t {
        let new: Vec<u64> = out.iter().map(|&x| y - x).collect();
        let fresh = new.iter().all(|d| !diffs.contains(d))
            && new.iter().collect::<HashSet<_>>().len() == new.len();
        if fresh {
            diffs.extend(new);
            out.push(y);
        }
        y += 1;
    }
    out
}

/// Greedy set of naturals with all pairwise quotients distinct.
pub fn multiplicative_sidon(n: usize) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::with_capacity(n);
    let mut quots: HashSet<Rat> = HashSet::new();
    let mut y = 1u64;
    while out.len() < n {
        let new: Vec<Rat> = out.iter().map(|&x| Rat::from(y) / Rat::from(x)).collect();
        let fresh = new
            .iter()
            .all(|q| !quots.contains(q) && !quots.contains(&(Rat::from(1) / q)))
            && new.iter().collect::<HashSet<_>>().len() == new.len();
        if fresh {
            for q in new {
                quots.insert(Rat::from(1) / &q);
                quots.insert(q);
            }
            out.push(y);
        }
        y += 1;
    }
    out
}

fn verified<M>(map: M, points: &[M::Pt], k: usize) -> Result<RichMapRecord<M, M::Pt>, ExtremalError>
where
    M: crate::richmaps::PointMap + std::fmt::Debug,
{
    let desc = format!("{map:?}");
    RichMapRecord::verify(map, points, points, k).ok_or(ExtremalError::VerificationFailed(desc))
}

/// `{1..2k} x Y` with `Y` a Sidon set of `t = floor(n / 2k)` levels, and
/// the `t(t-1)` vertical level-to-level translations, each matching a full
/// row of `2k` points.
pub fn gen_shift_example(
    n: usize,
    k: usize,
) -> Result<ConstructionOutput<Point, RichMapRecord<TranslationD, Point>>, ExtremalError> {
    if k == 0 {
        return Err(ExtremalError::BadParameters("k must be positive".into()));
    }
    let t = n / (2 * k);
    if t == 0 {
        return Err(ExtremalError::KTooLarge);
    }
    let ys = sidon_set(t);
    let points: Vec<Point> = (1..=2 * k as i64)
        .flat_map(|x| ys.iter().map(move |&y| Point::from_ints(&[x, y as i64])))
        .collect();
    let mut family = Vec::new();
    for &yi in &ys {
        for &yj in &ys {
            if yi != yj {
                let tr = TranslationD::new(vec![int(0), int(yj as i64 - yi as i64)]);
                family.push(verified(tr, &points, k)?);
            }
        }
    }
    let mut metadata = BTreeMap::new();
    metadata.insert("n", n.to_string());
    metadata.insert("k", k.to_string());
    metadata.insert("t", t.to_string());
    metadata.insert("actual_size", points.len().to_string());
    metadata.insert("levels", format!("{ys:?}"));
    Ok(ConstructionOutput {
        points,
        certified_family: family,
        claimed_lower_bound: Rat::from((t * t.saturating_sub(1) * k) as u64),
        metadata,
    })
}

/// `n` points `(i, 0)` on the x-axis plus `n` points `(0, y_i)` with all
/// quotients `y_i / y_j` distinct, and the `n(n-1)` maps
/// `(x, y) -> (x, y_i / y_j * y)`, each with `n + 1` matches.
pub fn gen_noncollinear_affine_example(
    n: usize,
) -> Result<ConstructionOutput<Point2, RichMapRecord<AffineMap2, Point2>>, ExtremalError> {
    if n < 2 {
        return Err(ExtremalError::BadParameters(format!(
            "n must be at least 2, got {n}"
        )));
    }
    let ys = multiplicative_sidon(n);
    let mut points: Vec<Point2> = (1..=n as i64).map(|i| Point2::from_ints(i, 0)).collect();
    points.extend(ys.iter().map(|&y| Point2::from_ints(0, y as i64)));
    let maps: Vec<AffineMap2> = ys
        .iter()
        .flat_map(|&yi| {
            ys.iter()
                .filter(move |&&yj| yj != yi)
                .map(move |&yj| frac(yi as i64, yj as i64))
        })
        .map(|l| AffineMap2::new(int(1), int(0), int(0), int(0), l, int(0)).expect("nonzero scale"))
        .collect();
    let family = maps
        .into_par_iter()
        .map(|m| verified(m, &points, n + 1))
        .collect::<Result<Vec<_>, _>>()?;
    let mut metadata = BTreeMap::new();
    metadata.insert("n", n.to_string());
    metadata.insert("N", (2 * n).to_string());
    metadata.insert("y", format!("{ys:?}"));
    Ok(ConstructionOutput {
        points,
        certified_family: family,
        claimed_lower_bound: Rat::from((n * (n - 1)) as u64),
        metadata,
    })
}

/// Parameters `(a1, b1, c1, a2, b2, c2)` of the plane
/// `y = a1 x + b1 z + c1`, `w = a2 x + b2 z + c2` in `R^4`.
pub type GridParams = [i64; 6];

/// A certified grid plane: its parameters and the verified map.
pub type GridMember = (GridParams, RichMapRecord<AffineMap2, Point2>);

/// The affine map `(x, y) -> (z, w)` whose graph is the plane with the
/// given parameters.
pub fn grid_params_map(p: &GridParams) -> AffineMap2 {
    let [a1, b1, c1, a2, b2, c2] = *p;
    AffineMap2::new(
        frac(-a1, b1),
        frac(1, b1),
        frac(-c1, b1),
        frac(a2 * b1 - a1 * b2, b1),
        frac(b2, b1),
        frac(c2 * b1 - c1 * b2, b1),
    )
    .expect("determinant -a2/b1 is nonzero")
}

/// `{1..t} x {1..n/t}` with `t = sqrt(k)` and the planes of
/// [`GridParams`] with `a_i, b_i <= n/(3t^2)`, `c_i <= n/(3t)` (floored) and
/// `a1 b2 != a2 b1`; each contains the `t x t` lattice over `x, z in {1..t}`.
pub fn gen_grid_affine_example(
    n: usize,
    k: usize,
) -> Result<ConstructionOutput<Point2, GridMember>, ExtremalError> {
    let t = k.isqrt();
    if k == 0 || t * t != k {
        return Err(ExtremalError::BadParameters(format!(
            "k = {k} is not a positive square"
        )));
    }
    if !n.is_multiple_of(t) {
        return Err(ExtremalError::BadParameters(format!(
            "t = {t} does not divide n = {n}"
        )));
    }
    if 4 * k > n {
        return Err(ExtremalError::BadParameters(format!("k = {k} exceeds n/4")));
    }
    let (ti, rows) = (t as i64, (n / t) as i64);
    let points: Vec<Point2> = (1..=ti)
        .flat_map(|x| (1..=rows).map(move |y| Point2::from_ints(x, y)))
        .collect();
    let amax = (n / (3 * t * t)) as i64;
    let cmax = (n / (3 * t)) as i64;
    let mut tuples = Vec::new();
    let mut violations = 0usize;
    for a1 in 1..=amax {
        for b1 in 1..=amax {
            for c1 in 1..=cmax {
                for a2 in 1..=amax {
                    for b2 in 1..=amax {
                        for c2 in 1..=cmax {
                            if a1 * b2 == a2 * b1 {
                                violations += 1;
                            } else {
                                tuples.push([a1, b1, c1, a2, b2, c2]);
                            }
                        }
                    }
                }
            }
        }
    }
    let family = tuples
        .into_par_iter()
        .map(|p| Ok((p, verified(grid_params_map(&p), &points, k)?)))
        .collect::<Result<Vec<_>, ExtremalError>>()?;
    let mut metadata = BTreeMap::new();
    metadata.insert("n", n.to_string());
    metadata.insert("k", k.to_string());
    metadata.insert("t", t.to_string());
    metadata.insert("ab_range", format!("1..={amax}"));
    metadata.insert("c_range", format!("1..={cmax}"));
    metadata.insert("tuples", (family.len() + violations).to_string());
    metadata.insert("determinant_violations", violations.to_string());
    let claimed =
        pow(&Rat::from(n as u64), 6) / (Rat::from(3000u64) * pow(&Rat::from(t as u64), 10));
    Ok(ConstructionOutput {
        points,
        certified_family: family,
        claimed_lower_bound: claimed,
        metadata,
    })
}

/// `r`-dimensional affine subspace of `R^D` written as
/// `x_j = sum_i a[j][i] x_i + c[j]` for the trailing `D - r` coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineSubspace {
    pub dim: usize,
    pub a: Vec<Vec<i64>>,
    pub c: Vec<i64>,
}

impl AffineSubspace {
    pub fn contains(&self, p: &Point) -> bool {
        let r = self.dim;
        let x = p.coords();
        self.a
            .iter()
            .zip(&self.c)
            .enumerate()
            .all(|(j, (row, &c))| {
                let v: Rat = row
                    .iter()
                    .zip(&x[..r])
                    .map(|(&a, xi)| Rat::from(a) * xi)
                    .sum::<Rat>()
                    + Rat::from(c);
                v == x[r + j]
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceRecord {
    pub subspace: AffineSubspace,
    pub contained: usize,
}

/// Lattice `t^r x L^(D-r)` with the subspaces whose slopes lie in
/// `1..=L/(t(r+1))` and offsets in `1..=L/(r+1)` (floored); each contains
/// the `t^r` points over `x_1..x_r in {1..t}`.
pub fn gen_subspace_example(
    d: usize,
    r: usize,
    t: usize,
    side: usize,
) -> Result<ConstructionOutput<Point, SubspaceRecord>, ExtremalError> {
    if r == 0 || r >= d || d > 4 {
        return Err(ExtremalError::BadParameters(format!(
            "need 1 <= r < D <= 4, got r = {r}, D = {d}"
        )));
    }
    if t == 0 || side == 0 || t > side {
        return Err(ExtremalError::BadParameters(format!(
            "need 1 <= t <= L, got t = {t}, L = {side}"
        )));
    }
    let mut sides = vec![t; r];
    sides.extend(std::iter::repeat_n(side, d - r));
    let points = crate::cuttings::lattice_points(&sides);
    let amax = (side / (t * (r + 1))) as i64;
    let cmax = (side / (r + 1)) as i64;
    let k = t.pow(r as u32);
    // Mixed-radix enumeration over (D - r) rows of r slopes and one offset.
    let m = d - r;
    let mut digits = vec![1i64; m * (r + 1)];
    let limit = |i: usize| if i % (r + 1) == r { cmax } else { amax };
    let mut subspaces = Vec::new();
    if amax >= 1 && cmax >= 1 {
        loop {
            let a = (0..m)
                .map(|j| digits[j * (r + 1)..j * (r + 1) + r].to_vec())
                .collect();
            let c = (0..m).map(|j| digits[j * (r + 1) + r]).collect();
            subspaces.push(AffineSubspace { dim: r, a, c });
            let mut pos = 0;
            while pos < digits.len() {
                digits[pos] += 1;
                if digits[pos] <= limit(pos) {
                    break;
                }
                digits[pos] = 1;
                pos += 1;
            }
            if pos == digits.len() {
                break;
            }
        }
    }
    let family = subspaces
        .into_par_iter()
        .map(|s| {
            let contained = points.iter().filter(|p| s.contains(p)).count();
            if contained < k {
                return Err(ExtremalError::VerificationFailed(format!(
                    "{s:?} holds {contained} < {k} points"
                )));
            }
            Ok(SubspaceRecord {
                subspace: s,
                contained,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let lr = Rat::from(side as u64);
    let claimed = pow(&(&lr / Rat::from((t * (r + 1)) as u64)), (m * r) as u32)
        * pow(&(&lr / Rat::from((r + 1) as u64)), m as u32);
    let mut metadata = BTreeMap::new();
    metadata.insert("D", d.to_string());
    metadata.insert("r", r.to_string());
    metadata.insert("t", t.to_string());
    metadata.insert("L", side.to_string());
    metadata.insert("N", points.len().to_string());
    metadata.insert("k", k.to_string());
    metadata.insert("a_range", format!("1..={amax}"));
    metadata.insert("c_range", format!("1..={cmax}"));
    Ok(ConstructionOutput {
        points,
        certified_family: family,
        claimed_lower_bound: claimed,
        metadata,
    })
}

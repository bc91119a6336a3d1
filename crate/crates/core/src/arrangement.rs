//! Planar line arrangements with cells identified by sign vectors.
//!
//! Two points lie in the same open cell exactly when they are on the same
//! side of every line, so a cell is stored as its sign vector plus one
//! interior representative. The number of lines separating two cells is the
//! Hamming distance of their sign vectors.

use std::collections::HashMap;

use crate::exactgeom::rat::{primitive_scale, sign, Rat};
use crate::exactgeom::Point2;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArrangementError {
    #[error("line has a = b = 0")]
    DegenerateLine,
    #[error("lines {first} and {second} coincide")]
    DuplicateLine { first: usize, second: usize },
    #[error("point lies on line {line}")]
    OnLine { line: usize },
    #[error("no cell has the point's sign vector")]
    Unlocated,
    #[error("cell {0} does not belong to this arrangement")]
    ForeignCell(usize),
    #[error("arrangement is not simple")]
    NotSimple,
    #[error("radius {rho} exceeds the number of lines {lines}")]
    RhoOutOfRange { rho: usize, lines: usize },
    #[error("empty input")]
    EmptyInput,
}

/// Line `a x + b y + c = 0`, scaled to coprime integers with the first
/// nonzero of `(a, b)` positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line {
    a: Rat,
    b: Rat,
    c: Rat,
}

impl Line {
    pub fn new(a: Rat, b: Rat, c: Rat) -> Result<Self, ArrangementError> {
        let (sa, sb) = (sign(&a), sign(&b));
        if sa == 0 && sb == 0 {
            return Err(ArrangementError::DegenerateLine);
        }
        let mut s = primitive_scale(&[a.clone(), b.clone(), c.clone()]);
        if sa < 0 || (sa == 0 && sb < 0) {
            s = -s;
        }
        Ok(Line {
            a: a * &s,
            b: b * &s,
            c: c * &s,
        })
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Result<Self, ArrangementError> {
        Line::new(Rat::from(a), Rat::from(b), Rat::from(c))
    }

    /// The line through two distinct points.
    pub fn through(p: &Point2, q: &Point2) -> Result<Self, ArrangementError> {
        let a = &q.y - &p.y;
        let b = &p.x - &q.x;
        let c = -(&a * &p.x + &b * &p.y);
        Line::new(a, b, c)
    }

    /// Vertical line `x = v`.
    pub fn vertical(v: Rat) -> Self {
        Line::new(Rat::from(1), Rat::from(0), -v).expect("a = 1")
    }

    /// Horizontal line `y = v`.
    pub fn horizontal(v: Rat) -> Self {
        Line::new(Rat::from(0), Rat::from(1), -v).expect("b = 1")
    }

    pub fn coeffs(&self) -> [&Rat; 3] {
        [&self.a, &self.b, &self.c]
    }

    pub fn eval(&self, p: &Point2) -> Rat {
        &self.a * &p.x + &self.b * &p.y + &self.c
    }

    pub fn side(&self, p: &Point2) -> i8 {
        sign(&self.eval(p))
    }

    pub fn contains(&self, p: &Point2) -> bool {
        self.side(p) == 0
    }

    fn parallel_to(&self, o: &Line) -> bool {
        &self.a * &o.b == &self.b * &o.a
    }
}

/// True iff no two lines are parallel and no three pass through one point.
pub fn is_simple(lines: &[Line]) -> bool {
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            if lines[i].parallel_to(&lines[j]) {
                return false;
            }
            for k in j + 1..lines.len() {
                let [a1, b1, c1] = lines[i].coeffs();
                let [a2, b2, c2] = lines[j].coeffs();
                let [a3, b3, c3] = lines[k].coeffs();
                let det =
                    a1 * (b2 * c3 - b3 * c2) - b1 * (a2 * c3 - a3 * c2) + c1 * (a2 * b3 - a3 * b2);
                if sign(&det) == 0 {
                    return false;
                }
            }
        }
    }
    true
}

/// Per-line side bits; bit set means the positive side.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector {
    words: Vec<u64>,
    len: usize,
}

impl SignVector {
    pub fn from_signs(signs: &[bool]) -> Self {
        let mut words = vec![0u64; signs.len().div_ceil(64)];
        for (i, &s) in signs.iter().enumerate() {
            if s {
                words[i / 64] |= 1 << (i % 64);
            }
        }
        SignVector {
            words,
            len: signs.len(),
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn positive(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn hamming(&self, other: &SignVector) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    /// `+`/`-` string in line order.
    pub fn to_symbols(&self) -> String {
        (0..self.len)
            .map(|i| if self.positive(i) { '+' } else { '-' })
            .collect()
    }
}

/// Sign vector of `p`, or the index of the first line containing it.
pub fn sign_vector(lines: &[Line], p: &Point2) -> Result<SignVector, ArrangementError> {
    let mut signs = Vec::with_capacity(lines.len());
    for (i, l) in lines.iter().enumerate() {
        match l.side(p) {
            0 => return Err(ArrangementError::OnLine { line: i }),
            s => signs.push(s > 0),
        }
    }
    Ok(SignVector::from_signs(&signs))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub signs: SignVector,
    pub representative: Point2,
}

pub type CellId = usize;

#[derive(Debug, Clone)]
pub struct Arrangement {
    lines: Vec<Line>,
    cells: Vec<Cell>,
    index: HashMap<SignVector, CellId>,
}

impl Arrangement {
    /// Enumerates every 2-face of the arrangement.
    ///
    /// Coordinates are sheared by the least integer `s >= 0` making every
    /// line non-vertical. Each cell's projection to the sheared x-axis is an
    /// open interval between consecutive crossing abscissae (or unbounded), so
    /// sampling one vertical per slab, and one point between each pair of
    /// consecutive line crossings on it, meets every cell.
    pub fn build(lines: Vec<Line>) -> Result<Self, ArrangementError> {
        for i in 0..lines.len() {
            if let Some(j) = lines[..i].iter().position(|l| *l == lines[i]) {
                return Err(ArrangementError::DuplicateLine {
                    first: j,
                    second: i,
                });
            }
        }
        let mut s = 0i64;
        while lines.iter().any(|l| l.b == &l.a * Rat::from(s)) {
            s += 1;
        }
        let shear = Rat::from(s);
        // y' = slope * x' + icept in sheared coordinates (x = x' - s y', y = y').
        let graphs: Vec<(Rat, Rat)> = lines
            .iter()
            .map(|l| {
                let beta = &l.b - &l.a * &shear;
                (-(&l.a / &beta), -(&l.c / &beta))
            })
            .collect();
        let mut events = Vec::new();
        for i in 0..graphs.len() {
            for j in i + 1..graphs.len() {
                if graphs[i].0 != graphs[j].0 {
                    events.push((&graphs[j].1 - &graphs[i].1) / (&graphs[i].0 - &graphs[j].0));
                }
            }
        }
        let xs = slab_samples(events);
        let mut index = HashMap::new();
        let mut cells = Vec::new();
        for x in &xs {
            let ys = slab_samples(graphs.iter().map(|(m, k)| m * x + k).collect());
            for y in ys {
                let p = Point2::new(x - &shear * &y, y);
                let sv = sign_vector(&lines, &p).expect("samples avoid every line");
                if !index.contains_key(&sv) {
                    index.insert(sv.clone(), cells.len());
                    cells.push(Cell {
                        signs: sv,
                        representative: p,
                    });
                }
            }
        }
        cells.sort_by(|a, b| a.signs.cmp(&b.signs));
        let index = cells
            .iter()
            .enumerate()
            .map(|(i, c)| (c.signs.clone(), i))
            .collect();
        Ok(Arrangement {
            lines,
            cells,
            index,
        })
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, id: CellId) -> Result<&Cell, ArrangementError> {
        self.cells.get(id).ok_or(ArrangementError::ForeignCell(id))
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    /// Cell id with the same sign vector as `p`.
    pub fn locate(&self, p: &Point2) -> Result<CellId, ArrangementError> {
        let sv = sign_vector(&self.lines, p)?;
        self.index
            .get(&sv)
            .copied()
            .ok_or(ArrangementError::Unlocated)
    }

    /// Number of lines separating the two cells.
    pub fn cell_distance(&self, a: CellId, b: CellId) -> Result<usize, ArrangementError> {
        Ok(self.cell(a)?.signs.hamming(&self.cell(b)?.signs))
    }

    /// `|B_rho(c)|`: cells within separation distance `rho`, `c` included.
    pub fn ball_size(&self, c: CellId, rho: usize) -> Result<usize, ArrangementError> {
        let center = &self.cell(c)?.signs;
        Ok(self
            .cells
            .iter()
            .filter(|o| o.signs.hamming(center) <= rho)
            .count())
    }

    pub fn ball_sizes(&self, rho: usize) -> Vec<usize> {
        (0..self.cells.len())
            .map(|c| self.ball_size(c, rho).expect("own cell"))
            .collect()
    }

    pub fn ball_profile(&self, rho: usize) -> BallProfile {
        let sizes = self.ball_sizes(rho);
        let sum: u64 = sizes.iter().map(|&b| b as u64).sum();
        let second_moment: u64 = sizes.iter().map(|&b| (b * b) as u64).sum();
        let n = self.lines.len() as u64;
        let fitted_constant =
            (rho > 0 && n > 0).then(|| Rat::from(sum) / Rat::from(rho as u64 * rho as u64 * n * n));
        BallProfile {
            rho,
            cells: sizes.len(),
            sum,
            max: sizes.iter().copied().max().unwrap_or(0),
            mean: Rat::from(sum) / Rat::from(sizes.len().max(1) as u64),
            second_moment,
            fitted_constant,
        }
    }

    /// Checks `|B_rho(c)| > rho^2 / 32` for every cell of a simple arrangement.
    pub fn verify_emo(&self, rho: usize) -> Result<EmoReport, ArrangementError> {
        if !is_simple(&self.lines) {
            return Err(ArrangementError::NotSimple);
        }
        if rho > self.lines.len() {
            return Err(ArrangementError::RhoOutOfRange {
                rho,
                lines: self.lines.len(),
            });
        }
        let balls = self.ball_sizes(rho);
        let bound = Rat::from((rho * rho) as u64) / Rat::from(32);
        let holds = balls.iter().all(|&b| 32 * b > rho * rho);
        let min_ball = balls.iter().copied().min().unwrap_or(0);
        Ok(EmoReport {
            rho,
            bound,
            balls,
            min_ball,
            holds,
        })
    }

    /// Keeps the better half (rounded up) of `cells` by ball size, ties by
    /// position in the input.
    pub fn filter_low_ball_cells(
        &self,
        cells: &[CellId],
        rho: usize,
    ) -> Result<BallFilter, ArrangementError> {
        if cells.is_empty() {
            return Err(ArrangementError::EmptyInput);
        }
        let mut scored = Vec::with_capacity(cells.len());
        for (pos, &c) in cells.iter().enumerate() {
            scored.push((self.ball_size(c, rho)?, pos, c));
        }
        let total: u64 = scored.iter().map(|s| s.0 as u64).sum();
        scored.sort();
        scored.truncate(cells.len().div_ceil(2));
        let achieved_bound = scored.last().map(|s| s.0).unwrap_or(0);
        let mut kept_positions: Vec<usize> = scored.iter().map(|s| s.1).collect();
        kept_positions.sort_unstable();
        Ok(BallFilter {
            kept: kept_positions.iter().map(|&p| cells[p]).collect(),
            kept_positions,
            achieved_bound,
            input_mean: Rat::from(total) / Rat::from(cells.len() as u64),
        })
    }
}

/// Sample abscissae: one left of the minimum, midpoints of consecutive
/// distinct values, one right of the maximum; `[0]` for no values.
fn slab_samples(mut values: Vec<Rat>) -> Vec<Rat> {
    values.sort();
    values.dedup();
    let (Some(first), Some(last)) = (values.first(), values.last()) else {
        return vec![Rat::from(0)];
    };
    let mut out = Vec::with_capacity(values.len() + 1);
    out.push(first - Rat::from(1));
    for w in values.windows(2) {
        out.push((&w[0] + &w[1]) / Rat::from(2));
    }
    out.push(last + Rat::from(1));
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallProfile {
    pub rho: usize,
    pub cells: usize,
    pub sum: u64,
    pub max: usize,
    pub mean: Rat,
    /// Sum of squared ball sizes.
    pub second_moment: u64,
    /// `sum / (rho^2 |H|^2)`; absent for `rho = 0`.
    pub fitted_constant: Option<Rat>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmoReport {
    pub rho: usize,
    pub bound: Rat,
    /// Ball size per cell, in cell order.
    pub balls: Vec<usize>,
    pub min_ball: usize,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallFilter {
    pub kept: Vec<CellId>,
    /// Positions of the kept cells within the input slice.
    pub kept_positions: Vec<usize>,
    pub achieved_bound: usize,
    pub input_mean: Rat,
}

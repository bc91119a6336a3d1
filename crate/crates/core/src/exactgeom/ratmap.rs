//! Rational functions `p(x)/q(x)` of bounded total degree and their
//! interpolation through prescribed value pairs.

use std::collections::BTreeMap;

use super::key::{encode, CanonicalKey};
use super::linalg::nullspace;
use super::rat::{is_zero, primitive_scale, sign, Rat};
use super::GeomError;

/// Largest total degree accepted by [`rational_fit`].
pub const MAX_FIT_DEGREE: u32 = 3;

/// Polynomial coefficients, constant term first, no trailing zeros.
pub type Poly = Vec<Rat>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(is_zero) {
        p.pop();
    }
    p
}

/// Degree with the zero polynomial counted as 0.
pub fn degree(p: &[Rat]) -> usize {
    p.len().saturating_sub(1)
}

pub fn eval(p: &[Rat], x: &Rat) -> Rat {
    p.iter().rev().fold(Rat::from(0), |acc, c| acc * x + c)
}

fn divrem(a: &[Rat], b: &[Rat]) -> (Poly, Poly) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead = b.last().expect("division by zero polynomial").clone();
    let mut q = vec![Rat::from(0); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let f = r.last().unwrap() / &lead;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &f * c;
        }
        q[shift] = f;
        r = trim(r);
    }
    (trim(q), r)
}

/// Monic gcd; `gcd(0, 0)` is the zero polynomial.
fn gcd(a: &[Rat], b: &[Rat]) -> Poly {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let (_, r) = divrem(&a, &b);
        a = b;
        b = r;
    }
    if let Some(l) = a.last().cloned() {
        for c in a.iter_mut() {
            *c /= &l;
        }
    }
    a
}

/// `p/q` with `p`, `q` coprime, `q` a primitive integer polynomial with
/// positive leading coefficient, and `deg p + deg q <= budget`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalMap1 {
    p: Poly,
    q: Poly,
    budget: u32,
}

impl RationalMap1 {
    pub fn new(p: Poly, q: Poly, budget: u32) -> Result<Self, GeomError> {
        let (p, q) = (trim(p), trim(q));
        if q.is_empty() {
            return Err(GeomError::ZeroDenominator);
        }
        let g = gcd(&p, &q);
        let (mut p, mut q) = (divrem(&p, &g).0, divrem(&q, &g).0);
        if degree(&p) + degree(&q) > budget as usize {
            return Err(GeomError::DegreeBudget {
                budget,
                found: degree(&p) + degree(&q),
            });
        }
        let mut s = primitive_scale(&q);
        if sign(q.last().unwrap()) < 0 {
            s = -s;
        }
        for c in p.iter_mut().chain(q.iter_mut()) {
            *c *= &s;
        }
        Ok(RationalMap1 { p, q, budget })
    }

    pub fn numerator(&self) -> &[Rat] {
        &self.p
    }

    pub fn denominator(&self) -> &[Rat] {
        &self.q
    }

    pub fn budget(&self) -> u32 {
        self.budget
    }

    pub fn total_degree(&self) -> usize {
        degree(&self.p) + degree(&self.q)
    }

    /// `None` at poles.
    pub fn apply(&self, x: &Rat) -> Option<Rat> {
        let den = eval(&self.q, x);
        if is_zero(&den) {
            return None;
        }
        Some(eval(&self.p, x) / den)
    }
}

impl CanonicalKey for RationalMap1 {
    /// Keyed by the function alone; the degree budget is not part of it.
    fn canonical_key(&self) -> Vec<u8> {
        encode(b'R', &[&self.p, &self.q])
    }
}

/// All canonical `p/q` with `deg p + deg q <= r` through the `r + 1` pairs.
///
/// Each degree split `dp + dq = r` contributes the solutions of the linear
/// system `y q(x) - p(x) = 0`; every kernel vector with `q != 0` of one split
/// represents the same function, so one representative per split is checked
/// against the pairs and the survivors are merged by canonical key.
pub fn rational_fit(pairs: &[(Rat, Rat)], r: u32) -> Result<Vec<RationalMap1>, GeomError> {
    if r > MAX_FIT_DEGREE {
        return Err(GeomError::GuardExceeded {
            what: "rational degree",
            limit: MAX_FIT_DEGREE as usize,
            got: r as usize,
        });
    }
    if pairs.len() != r as usize + 1 {
        return Err(GeomError::BadInput(format!(
            "rational_fit needs {} pairs, got {}",
            r + 1,
            pairs.len()
        )));
    }
    for (i, a) in pairs.iter().enumerate() {
        if pairs[..i].iter().any(|b| b.0 == a.0) {
            return Err(GeomError::RepeatedValue);
        }
    }
    let mut found = BTreeMap::new();
    for dp in 0..=r as usize {
        let dq = r as usize - dp;
        let ncols = dp + dq + 2;
        let rows: Vec<Vec<Rat>> = pairs
            .iter()
            .map(|(x, y)| {
                let mut row = Vec::with_capacity(ncols);
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
            })
            .collect();
        let Some(v) = nullspace(rows, ncols)
            .into_iter()
            .find(|v| v[dp + 1..].iter().any(|c| !is_zero(c)))
        else {
            continue;
        };
        let map = RationalMap1::new(v[..=dp].to_vec(), v[dp + 1..].to_vec(), r)?;
        if pairs.iter().all(|(x, y)| map.apply(x).as_ref() == Some(y)) {
            found.insert(map.canonical_key(), map);
        }
    }
    if found.is_empty() {
        return Err(GeomError::NoSolution);
    }
    Ok(found.into_values().collect())
}

use super::key::{encode, CanonicalKey};
use super::rat::{is_zero, Rat};
use super::GeomError;

/// Möbius map of the line, `x -> (a x + b) / (c x + d)` with `ad - bc != 0`.
///
/// Stored projectively normalized: the first nonzero of `(a, b, c, d)` is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mobius1 {
    a: Rat,
    b: Rat,
    c: Rat,
    d: Rat,
}

impl Mobius1 {
    pub fn new(a: Rat, b: Rat, c: Rat, d: Rat) -> Result<Self, GeomError> {
        if is_zero(&(&a * &d - &b * &c)) {
            return Err(GeomError::DegenerateMap);
        }
        let lead = [&a, &b, &c, &d]
            .into_iter()
            .find(|v| !is_zero(v))
            .cloned()
            .expect("non-degenerate map has a nonzero entry");
        Ok(Mobius1 {
            a: a / &lead,
            b: b / &lead,
            c: c / &lead,
            d: d / &lead,
        })
    }

    pub fn identity() -> Self {
        Mobius1 {
            a: Rat::from(1),
            b: Rat::from(0),
            c: Rat::from(0),
            d: Rat::from(1),
        }
    }

    pub fn coeffs(&self) -> [&Rat; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    /// `None` at the pole `x = -d/c`.
    pub fn apply(&self, x: &Rat) -> Option<Rat> {
        let den = &self.c * x + &self.d;
        if is_zero(&den) {
            return None;
        }
        Some((&self.a * x + &self.b) / den)
    }

    /// The map with `s0 -> d0`, `s1 -> d1` whose conjugate by the two
    /// normalizations `(x - s0)/(x - s1)` and `(y - d0)/(y - d1)` is `z -> lambda z`.
    pub(crate) fn through_anchors(
        s0: &Rat,
        s1: &Rat,
        d0: &Rat,
        d1: &Rat,
        lambda: &Rat,
    ) -> Result<Self, GeomError> {
        let a = d0 - d1 * lambda;
        let b = d1 * lambda * s0 - d0 * s1;
        let c = Rat::from(1) - lambda;
        let d = lambda * s0 - s1;
        Mobius1::new(a, b, c, d)
    }
}

impl CanonicalKey for Mobius1 {
    fn canonical_key(&self) -> Vec<u8> {
        let c: Vec<Rat> = self.coeffs().into_iter().cloned().collect();
        encode(b'M', &[&c])
    }
}

/// Ratio of `(x - s0)/(x - s1)`; the anchor-normalized coordinate of `x`.
pub(crate) fn anchor_coord(x: &Rat, s0: &Rat, s1: &Rat) -> Rat {
    (x - s0) / (x - s1)
}

/// The unique Möbius map with `src[i] -> dst[i]`.
pub fn mobius_from_triples(src: &[Rat; 3], dst: &[Rat; 3]) -> Result<Mobius1, GeomError> {
    let distinct = |v: &[Rat; 3]| v[0] != v[1] && v[0] != v[2] && v[1] != v[2];
    if !distinct(src) || !distinct(dst) {
        return Err(GeomError::RepeatedValue);
    }
    let lambda = anchor_coord(&dst[2], &dst[0], &dst[1]) / anchor_coord(&src[2], &src[0], &src[1]);
    Mobius1::through_anchors(&src[0], &src[1], &dst[0], &dst[1], &lambda)
}

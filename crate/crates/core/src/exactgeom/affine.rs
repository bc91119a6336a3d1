use super::key::{encode, CanonicalKey};
use super::point::{orient2, Point2};
use super::rat::{is_zero, Rat};
use super::GeomError;

/// Non-degenerate planar affine map `(x, y) -> (a1 x + b1 y + c1, a2 x + b2 y + c2)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineMap2 {
    a1: Rat,
    b1: Rat,
    c1: Rat,
    a2: Rat,
    b2: Rat,
    c2: Rat,
}

impl AffineMap2 {
    pub fn new(a1: Rat, b1: Rat, c1: Rat, a2: Rat, b2: Rat, c2: Rat) -> Result<Self, GeomError> {
        let m = AffineMap2 {
            a1,
            b1,
            c1,
            a2,
            b2,
            c2,
        };
        if is_zero(&m.det()) {
            return Err(GeomError::DegenerateMap);
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        let (z, o) = (Rat::from(0), Rat::from(1));
        AffineMap2 {
            a1: o.clone(),
            b1: z.clone(),
            c1: z.clone(),
            a2: z.clone(),
            b2: o,
            c2: z,
        }
    }

    pub fn translation(dx: Rat, dy: Rat) -> Self {
        let (z, o) = (Rat::from(0), Rat::from(1));
        AffineMap2 {
            a1: o.clone(),
            b1: z.clone(),
            c1: dx,
            a2: z,
            b2: o,
            c2: dy,
        }
    }

    /// `[a1, b1, c1, a2, b2, c2]`.
    pub fn coeffs(&self) -> [&Rat; 6] {
        [&self.a1, &self.b1, &self.c1, &self.a2, &self.b2, &self.c2]
    }

    pub fn det(&self) -> Rat {
        &self.a1 * &self.b2 - &self.a2 * &self.b1
    }

    pub fn apply(&self, p: &Point2) -> Point2 {
        Point2::new(
            &self.a1 * &p.x + &self.b1 * &p.y + &self.c1,
            &self.a2 * &p.x + &self.b2 * &p.y + &self.c2,
        )
    }

    pub fn inverse(&self) -> AffineMap2 {
        let d = self.det();
        let a1 = &self.b2 / &d;
        let b1 = -(&self.b1 / &d);
        let a2 = -(&self.a2 / &d);
        let b2 = &self.a1 / &d;
        let c1 = -(&a1 * &self.c1 + &b1 * &self.c2);
        let c2 = -(&a2 * &self.c1 + &b2 * &self.c2);
        AffineMap2 {
            a1,
            b1,
            c1,
            a2,
            b2,
            c2,
        }
    }
}

impl CanonicalKey for AffineMap2 {
    fn canonical_key(&self) -> Vec<u8> {
        let c: Vec<Rat> = self.coeffs().into_iter().cloned().collect();
        encode(b'A', &[&c])
    }
}

/// The unique affine map sending `src[i]` to `dst[i]`.
pub fn affine_from_triples(src: &[Point2; 3], dst: &[Point2; 3]) -> Result<AffineMap2, GeomError> {
    if orient2(&src[0], &src[1], &src[2]) == 0 {
        return Err(GeomError::CollinearSource);
    }
    let d1 = src[1].sub(&src[0]);
    let d2 = src[2].sub(&src[0]);
    let e1 = dst[1].sub(&dst[0]);
    let e2 = dst[2].sub(&dst[0]);
    let det = d1.cross(&d2);
    // L = E * D^{-1},  D^{-1} = [[d2.y, -d2.x], [-d1.y, d1.x]] / det
    let a1 = (&e1.x * &d2.y - &e2.x * &d1.y) / &det;
    let b1 = (&e2.x * &d1.x - &e1.x * &d2.x) / &det;
    let a2 = (&e1.y * &d2.y - &e2.y * &d1.y) / &det;
    let b2 = (&e2.y * &d1.x - &e1.y * &d2.x) / &det;
    let c1 = &dst[0].x - (&a1 * &src[0].x + &b1 * &src[0].y);
    let c2 = &dst[0].y - (&a2 * &src[0].x + &b2 * &src[0].y);
    AffineMap2::new(a1, b1, c1, a2, b2, c2)
}

/// Non-constant affine map of the line, `x -> m x + b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineMap1 {
    m: Rat,
    b: Rat,
}

impl AffineMap1 {
    pub fn new(m: Rat, b: Rat) -> Result<Self, GeomError> {
        if is_zero(&m) {
            return Err(GeomError::DegenerateMap);
        }
        Ok(AffineMap1 { m, b })
    }

    pub fn slope(&self) -> &Rat {
        &self.m
    }

    pub fn offset(&self) -> &Rat {
        &self.b
    }

    pub fn apply(&self, x: &Rat) -> Rat {
        &self.m * x + &self.b
    }
}

impl CanonicalKey for AffineMap1 {
    fn canonical_key(&self) -> Vec<u8> {
        encode(b'L', &[&[self.m.clone(), self.b.clone()]])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::rat::int;

    fn tri(p: [(i64, i64); 3]) -> [Point2; 3] {
        p.map(|(x, y)| Point2::from_ints(x, y))
    }

    #[test]
    fn identity_translation_diagonal() {
        let t = tri([(0, 0), (1, 0), (0, 1)]);
        assert_eq!(affine_from_triples(&t, &t).unwrap(), AffineMap2::identity());
        let m = affine_from_triples(&t, &tri([(1, 1), (2, 1), (1, 2)])).unwrap();
        assert_eq!(m, AffineMap2::translation(int(1), int(1)));
        let m = affine_from_triples(&t, &tri([(0, 0), (2, 0), (0, 3)])).unwrap();
        assert_eq!(
            m,
            AffineMap2::new(int(2), int(0), int(0), int(0), int(3), int(0)).unwrap()
        );
    }

    #[test]
    fn errors() {
        let t = tri([(0, 0), (1, 0), (0, 1)]);
        let line = tri([(0, 0), (1, 1), (2, 2)]);
        assert_eq!(
            affine_from_triples(&line, &t),
            Err(GeomError::CollinearSource)
        );
        assert_eq!(
            affine_from_triples(&t, &line),
            Err(GeomError::DegenerateMap)
        );
        assert_eq!(
            AffineMap1::new(int(0), int(3)),
            Err(GeomError::DegenerateMap)
        );
    }

    #[test]
    fn inverse_round_trip() {
        let m = AffineMap2::new(int(2), int(1), int(-3), int(1), int(1), int(5)).unwrap();
        let p = Point2::from_ints(7, -2);
        assert_eq!(m.inverse().apply(&m.apply(&p)), p);
    }
}

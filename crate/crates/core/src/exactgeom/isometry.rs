use super::key::{encode, CanonicalKey};
use super::point::Point2;
use super::rat::{sign, Rat};
use super::GeomError;

/// Planar isometry `p -> M p + t` with `M` orthogonal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Isometry2 {
    /// Row-major `[m11, m12, m21, m22]`.
    m: [Rat; 4],
    t: [Rat; 2],
}

impl Isometry2 {
    pub fn new(m: [Rat; 4], t: [Rat; 2]) -> Result<Self, GeomError> {
        let [a, b, c, d] = &m;
        let one = Rat::from(1);
        let orthogonal =
            a * a + c * c == one && b * b + d * d == one && sign(&(a * b + c * d)) == 0;
        if !orthogonal {
            return Err(GeomError::NotOrthogonal);
        }
        Ok(Isometry2 { m, t })
    }

    pub fn matrix(&self) -> &[Rat; 4] {
        &self.m
    }

    pub fn shift(&self) -> &[Rat; 2] {
        &self.t
    }

    /// +1 for rotations, -1 for reflections.
    pub fn orientation(&self) -> i8 {
        let [a, b, c, d] = &self.m;
        sign(&(a * d - b * c))
    }

    pub fn apply(&self, p: &Point2) -> Point2 {
        let [a, b, c, d] = &self.m;
        Point2::new(
            a * &p.x + b * &p.y + &self.t[0],
            c * &p.x + d * &p.y + &self.t[1],
        )
    }
}

impl CanonicalKey for Isometry2 {
    fn canonical_key(&self) -> Vec<u8> {
        encode(b'I', &[&self.m, &self.t])
    }
}

/// The rotation and the reflection taking `p1 -> q1`, `p2 -> q2`, in that order.
///
/// With `u = p2 - p1`, `v = q2 - q1` and `|u|^2 = |v|^2`, the rotation has
/// `cos = u.v / |u|^2`, `sin = u x v / |u|^2`; both stay rational.
pub fn isometries_from_pairs(
    p1: &Point2,
    p2: &Point2,
    q1: &Point2,
    q2: &Point2,
) -> Result<[Isometry2; 2], GeomError> {
    if p1 == p2 || q1 == q2 {
        return Err(GeomError::CoincidentPoints);
    }
    let u = p2.sub(p1);
    let v = q2.sub(q1);
    let n = u.norm2();
    if n != v.norm2() {
        return Err(GeomError::LengthMismatch);
    }
    let cos = u.dot(&v) / &n;
    let sin = u.cross(&v) / &n;
    let rot = [cos.clone(), -sin.clone(), sin, cos];
    let rc = (&u.x * &v.x - &u.y * &v.y) / &n;
    let rs = (&u.y * &v.x + &u.x * &v.y) / &n;
    let refl = [rc.clone(), rs.clone(), rs, -rc];
    let build = |m: [Rat; 4]| {
        let img = Point2::new(&m[0] * &p1.x + &m[1] * &p1.y, &m[2] * &p1.x + &m[3] * &p1.y);
        Isometry2::new(m, [&q1.x - &img.x, &q1.y - &img.y])
    };
    Ok([build(rot)?, build(refl)?])
}

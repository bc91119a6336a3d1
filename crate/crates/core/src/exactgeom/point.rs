use std::fmt;

use super::rat::{sign, Rat};
use super::GeomError;

/// A point of `R^d` with exact coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    coords: Vec<Rat>,
}

impl Point {
    pub fn new(coords: Vec<Rat>) -> Self {
        Point { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point::new(coords.iter().map(|&c| Rat::from(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Rat> {
        self.coords
    }

    /// Displacement `self - other`.
    pub fn sub(&self, other: &Point) -> Result<Vec<Rat>, GeomError> {
        if self.dim() != other.dim() {
            return Err(GeomError::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a - b)
            .collect())
    }

    pub fn to_point2(&self) -> Result<Point2, GeomError> {
        match self.coords.as_slice() {
            [x, y] => Ok(Point2::new(x.clone(), y.clone())),
            _ => Err(GeomError::DimensionMismatch {
                expected: 2,
                found: self.dim(),
            }),
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Planar point; ordered lexicographically by `(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point2 {
    pub x: Rat,
    pub y: Rat,
}

impl Point2 {
    pub fn new(x: Rat, y: Rat) -> Self {
        Point2 { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point2::new(Rat::from(x), Rat::from(y))
    }

    pub fn sub(&self, o: &Point2) -> Point2 {
        Point2::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn add(&self, o: &Point2) -> Point2 {
        Point2::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn dot(&self, o: &Point2) -> Rat {
        &self.x * &o.x + &self.y * &o.y
    }

    pub fn cross(&self, o: &Point2) -> Rat {
        &self.x * &o.y - &self.y * &o.x
    }

    pub fn norm2(&self) -> Rat {
        self.dot(self)
    }

    pub fn to_point(&self) -> Point {
        Point::new(vec![self.x.clone(), self.y.clone()])
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Sign of `det(q - p, r - p)`: +1 counter-clockwise, 0 collinear, -1 clockwise.
pub fn orient2(p: &Point2, q: &Point2, r: &Point2) -> i8 {
    sign(&q.sub(p).cross(&r.sub(p)))
}

/// [`orient2`] on general points, rejecting anything that is not planar.
pub fn orientation(p: &Point, q: &Point, r: &Point) -> Result<i8, GeomError> {
    Ok(orient2(&p.to_point2()?, &q.to_point2()?, &r.to_point2()?))
}

/// True when some triple of `pts` is non-collinear.
pub fn spans_plane(pts: &[Point2]) -> bool {
    let Some(p0) = pts.first() else {
        return false;
    };
    let Some(p1) = pts.iter().find(|p| *p != p0) else {
        return false;
    };
    pts.iter().any(|r| orient2(p0, p1, r) != 0)
}

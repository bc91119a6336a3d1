use super::key::{encode, CanonicalKey};
use super::point::Point;
use super::rat::Rat;

/// Translation of `R^d` by a fixed displacement.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TranslationD {
    v: Vec<Rat>,
}

impl TranslationD {
    pub fn new(v: Vec<Rat>) -> Self {
        TranslationD { v }
    }

    pub fn vector(&self) -> &[Rat] {
        &self.v
    }

    pub fn is_zero(&self) -> bool {
        self.v.iter().all(super::rat::is_zero)
    }

    /// `None` on a dimension mismatch.
    pub fn apply(&self, p: &Point) -> Option<Point> {
        if p.dim() != self.v.len() {
            return None;
        }
        Some(Point::new(
            p.coords().iter().zip(&self.v).map(|(a, b)| a + b).collect(),
        ))
    }
}

impl CanonicalKey for TranslationD {
    fn canonical_key(&self) -> Vec<u8> {
        encode(b'T', &[&self.v])
    }
}

use std::collections::HashMap;

use super::{ensure_distinct, RichError};
use crate::exactgeom::{Point, Rat, TranslationD};

/// All translations `v` with at least `k` arrows `p -> p + v` inside `P`,
/// the zero vector included, with their exact multiplicities, sorted by
/// vector.
pub fn count_rich_translations(
    points: &[Point],
    k: usize,
) -> Result<Vec<(TranslationD, usize)>, RichError> {
    let d = points.first().ok_or(RichError::EmptyInput)?.dim();
    if let Some(p) = points.iter().find(|p| p.dim() != d) {
        return Err(RichError::DimensionMismatch {
            expected: d,
            found: p.dim(),
        });
    }
    if k == 0 {
        return Err(RichError::KTooSmall { k, min: 1 });
    }
    ensure_distinct(points)?;
    let mut diffs: HashMap<Vec<Rat>, usize> = HashMap::new();
    for p in points {
        for q in points {
            let v: Vec<Rat> = q
                .coords()
                .iter()
                .zip(p.coords())
                .map(|(a, b)| a - b)
                .collect();
            *diffs.entry(v).or_insert(0) += 1;
        }
    }
    let mut out: Vec<(TranslationD, usize)> = diffs
        .into_iter()
        .filter(|&(_, m)| m >= k)
        .map(|(v, m)| (TranslationD::new(v), m))
        .collect();
    out.sort();
    Ok(out)
}

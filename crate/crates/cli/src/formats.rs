//! JSON file formats. Rationals are strings such as `"3/4"`; plain JSON
//! integers are accepted as shorthand on input.

use std::collections::{BTreeSet, HashSet};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use richgeom::arrangement::Line;
use richgeom::cuttings::Hyperplane;
use richgeom::exactgeom::{AffineMap2, AnyMap, Point, Point2, Rat};
use richgeom::lemmalab::TripleSystem;

use crate::error::CliError;

pub fn parse_rat_str(s: &str) -> Result<Rat, CliError> {
    Rat::from_str(s.trim()).map_err(|_| CliError::Parse(format!("not a rational: {s:?}")))
}

pub fn parse_rat(v: &Value) -> Result<Rat, CliError> {
    match v {
        Value::String(s) => parse_rat_str(s),
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_rat_str(&n.to_string()),
        _ => Err(CliError::Parse(format!(
            "expected a rational string or integer, found {v}"
        ))),
    }
}

pub fn rat_json(r: &Rat) -> Value {
    Value::String(r.to_string())
}

pub fn rats_json<'a>(rs: impl IntoIterator<Item = &'a Rat>) -> Value {
    Value::Array(rs.into_iter().map(rat_json).collect())
}

/// Raw bytes of an input file with their SHA-256 digest.
pub struct Loaded {
    pub path: String,
    pub sha256: String,
    pub value: Value,
}

pub fn load_json(path: &Path) -> Result<Loaded, CliError> {
    let bytes =
        std::fs::read(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let sha256 = hex::encode(Sha256::digest(&bytes));
    let value = serde_json::from_slice(&bytes)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    Ok(Loaded {
        path: path.display().to_string(),
        sha256,
        value,
    })
}

/// Points are coordinate lists; with `dim = 1` a bare scalar also works.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointSetFile {
    pub dim: usize,
    pub points: Vec<Value>,
}

impl PointSetFile {
    pub fn from_points(dim: usize, points: &[Point]) -> Self {
        let points = points.iter().map(|p| rats_json(p.coords())).collect();
        PointSetFile { dim, points }
    }

    pub fn from_reals(values: &[Rat]) -> Self {
        PointSetFile {
            dim: 1,
            points: values.iter().map(|v| rats_json([v])).collect(),
        }
    }
}

/// A parsed point set and how many repeated points were dropped.
pub struct PointSet {
    pub dim: usize,
    pub points: Vec<Point>,
    pub duplicates_removed: usize,
}

pub fn parse_points(v: &Value, allow_duplicates: bool) -> Result<PointSet, CliError> {
    let file: PointSetFile = serde_json::from_value(v.clone())
        .map_err(|e| CliError::Parse(format!("point set: {e}")))?;
    if file.dim == 0 {
        return Err(CliError::Parse("point set: dim must be positive".into()));
    }
    let mut seen = HashSet::new();
    let mut points = Vec::with_capacity(file.points.len());
    let mut duplicates_removed = 0;
    for (i, raw) in file.points.iter().enumerate() {
        let raw = match raw {
            Value::Array(a) => a.as_slice(),
            scalar if file.dim == 1 => std::slice::from_ref(scalar),
            other => {
                return Err(CliError::Parse(format!(
                    "point {i}: expected a coordinate list, found {other}"
                )))
            }
        };
        if raw.len() != file.dim {
            return Err(CliError::Parse(format!(
                "point {i} has {} coordinates, expected {}",
                raw.len(),
                file.dim
            )));
        }
        let p = Point::new(raw.iter().map(parse_rat).collect::<Result<_, _>>()?);
        if !seen.insert(p.clone()) {
            if !allow_duplicates {
                return Err(CliError::Parse(format!(
                    "point {i} repeats an earlier point (use --allow-duplicates)"
                )));
            }
            duplicates_removed += 1;
            continue;
        }
        points.push(p);
    }
    Ok(PointSet {
        dim: file.dim,
        points,
        duplicates_removed,
    })
}

pub fn planar(set: &PointSet) -> Result<Vec<Point2>, CliError> {
    if set.dim != 2 {
        return Err(CliError::Usage(format!(
            "this command needs planar points, found dim {}",
            set.dim
        )));
    }
    Ok(set
        .points
        .iter()
        .map(|p| Point2::new(p.coords()[0].clone(), p.coords()[1].clone()))
        .collect())
}

pub fn reals(set: &PointSet) -> Result<Vec<Rat>, CliError> {
    if set.dim != 1 {
        return Err(CliError::Usage(format!(
            "this command needs points on a line (dim 1), found dim {}",
            set.dim
        )));
    }
    Ok(set.points.iter().map(|p| p.coords()[0].clone()).collect())
}

fn rows(v: &Value, width: Option<usize>, what: &str) -> Result<Vec<Vec<Rat>>, CliError> {
    let arr = v
        .as_array()
        .ok_or_else(|| CliError::Parse(format!("{what}: expected a list")))?;
    arr.iter()
        .enumerate()
        .map(|(i, row)| {
            let row = row
                .as_array()
                .ok_or_else(|| CliError::Parse(format!("{what} {i}: expected a list")))?;
            if width.is_some_and(|w| w != row.len()) {
                return Err(CliError::Parse(format!(
                    "{what} {i}: expected {} entries",
                    width.unwrap_or(0)
                )));
            }
            row.iter().map(parse_rat).collect()
        })
        .collect()
}

/// Line file: a list of `[a, b, c]` for `a x + b y + c = 0`.
pub fn parse_lines(v: &Value) -> Result<Vec<Line>, CliError> {
    rows(v, Some(3), "line")?
        .into_iter()
        .enumerate()
        .map(|(i, r)| {
            let [a, b, c]: [Rat; 3] = r.try_into().expect("width checked");
            Line::new(a, b, c).map_err(|e| CliError::Parse(format!("line {i}: {e}")))
        })
        .collect()
}

pub fn lines_json(lines: &[Line]) -> Value {
    Value::Array(lines.iter().map(|l| rats_json(l.coeffs())).collect())
}

/// Hyperplane file: a list of `[n_1, ..., n_D, offset]`; in the plane this
/// is the line file.
pub fn parse_planes(v: &Value) -> Result<Vec<Hyperplane>, CliError> {
    rows(v, None, "hyperplane")?
        .into_iter()
        .enumerate()
        .map(|(i, mut r)| {
            if r.len() < 2 {
                return Err(CliError::Parse(format!(
                    "hyperplane {i}: needs a normal and an offset"
                )));
            }
            let offset = r.pop().expect("nonempty");
            if r.iter().all(|x| *x == 0) {
                return Err(CliError::Parse(format!("hyperplane {i}: zero normal")));
            }
            Ok(Hyperplane::new(r, offset))
        })
        .collect()
}

/// Affine map file: a list of `[a1, b1, c1, a2, b2, c2]` for
/// `(x, y) -> (a1 x + b1 y + c1, a2 x + b2 y + c2)`.
pub fn parse_affine_maps(v: &Value) -> Result<Vec<AffineMap2>, CliError> {
    rows(v, Some(6), "map")?
        .into_iter()
        .enumerate()
        .map(|(i, r)| {
            let [a1, b1, c1, a2, b2, c2]: [Rat; 6] = r.try_into().expect("width checked");
            AffineMap2::new(a1, b1, c1, a2, b2, c2)
                .map_err(|e| CliError::Parse(format!("map {i}: {e}")))
        })
        .collect()
}

pub fn affine_maps_json(maps: &[&AffineMap2]) -> Value {
    Value::Array(maps.iter().map(|m| rats_json(m.coeffs())).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TripleFile {
    /// Ground sets of the three classes; defaults to `0..size` per class.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ground: Option<[Vec<usize>; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sizes: Option<[usize; 3]>,
    pub triples: Vec<[usize; 3]>,
}

pub fn parse_triples(v: &Value) -> Result<TripleSystem, CliError> {
    let file: TripleFile = serde_json::from_value(v.clone())
        .map_err(|e| CliError::Parse(format!("triple system: {e}")))?;
    let ground: [BTreeSet<usize>; 3] = match (file.ground, file.sizes) {
        (Some(g), None) => g.map(|c| c.into_iter().collect()),
        (None, Some(s)) => s.map(|n| (0..n).collect()),
        (None, None) => {
            let mut g: [BTreeSet<usize>; 3] = Default::default();
            for t in &file.triples {
                for c in 0..3 {
                    g[c].insert(t[c]);
                }
            }
            g
        }
        (Some(_), Some(_)) => {
            return Err(CliError::Parse(
                "triple system: give ground or sizes, not both".into(),
            ))
        }
    };
    TripleSystem::new(ground, file.triples)
        .map_err(|e| CliError::Parse(format!("triple system: {e}")))
}

pub fn triples_json(delta: &TripleSystem) -> Value {
    let ground: Vec<Vec<usize>> = (0..3)
        .map(|c| delta.ground(c).iter().copied().collect())
        .collect();
    let triples: Vec<[usize; 3]> = delta.triples().copied().collect();
    json!({ "ground": ground, "triples": triples })
}

pub fn map_json(map: &AnyMap) -> Value {
    match map {
        AnyMap::Affine2(m) => json!({ "type": "affine2", "coeffs": rats_json(m.coeffs()) }),
        AnyMap::Affine1(m) => {
            json!({ "type": "affine1", "coeffs": rats_json([m.slope(), m.offset()]) })
        }
        AnyMap::Mobius1(m) => json!({ "type": "mobius1", "coeffs": rats_json(m.coeffs()) }),
        AnyMap::Rational1(m) => json!({
            "type": "rational1",
            "numerator": rats_json(m.numerator()),
            "denominator": rats_json(m.denominator()),
        }),
        AnyMap::Isometry2(m) => json!({
            "type": "isometry2",
            "matrix": rats_json(m.matrix()),
            "shift": rats_json(m.shift()),
        }),
        AnyMap::Translation(m) => json!({ "type": "translation", "vector": rats_json(m.vector()) }),
    }
}

/// Flat text form of a map for CSV cells.
pub fn map_text(map: &AnyMap) -> String {
    let join = |v: &Value| -> String {
        v.as_array()
            .map(|a| {
                a.iter()
                    .filter_map(Value::as_str)
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .unwrap_or_default()
    };
    let j = map_json(map);
    match map {
        AnyMap::Rational1(_) => format!(
            "({}) / ({})",
            join(&j["numerator"]),
            join(&j["denominator"])
        ),
        AnyMap::Isometry2(_) => format!("{} + {}", join(&j["matrix"]), join(&j["shift"])),
        AnyMap::Translation(_) => join(&j["vector"]),
        _ => join(&j["coeffs"]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn planes_json(planes: &[Hyperplane]) -> Value {
        Value::Array(
            planes
                .iter()
                .map(|h| rats_json(h.normal.iter().chain(std::iter::once(&h.offset))))
                .collect(),
        )
    }

    #[test]
    fn rationals_accept_strings_and_integers() {
        assert_eq!(
            parse_rat(&json!("-3/6")).unwrap(),
            Rat::from(-1) / Rat::from(2)
        );
        assert_eq!(parse_rat(&json!(7)).unwrap(), Rat::from(7));
        assert!(parse_rat(&json!(0.5)).is_err());
        assert!(parse_rat(&json!("1/0")).is_err());
    }

    #[test]
    fn point_sets_round_trip() {
        let pts = vec![
            Point::new(vec![Rat::from(1) / Rat::from(3), Rat::from(-2)]),
            Point::from_ints(&[0, 5]),
        ];
        let v = serde_json::to_value(PointSetFile::from_points(2, &pts)).unwrap();
        let back = parse_points(&v, false).unwrap();
        assert_eq!(back.points, pts);
        assert_eq!(
            serde_json::to_value(PointSetFile::from_points(2, &back.points)).unwrap(),
            v
        );
    }

    #[test]
    fn duplicates_need_the_flag() {
        let v = json!({ "dim": 1, "points": [["1"], [1], ["2/2"]] });
        assert!(parse_points(&v, false).is_err());
        let set = parse_points(&v, true).unwrap();
        assert_eq!((set.points.len(), set.duplicates_removed), (1, 2));
    }

    #[test]
    fn dimensions_are_checked() {
        assert!(parse_points(&json!({ "dim": 2, "points": [["1"]] }), false).is_err());
        assert!(parse_points(&json!({ "dim": 0, "points": [] }), false).is_err());
    }

    #[test]
    fn lines_planes_and_maps_round_trip() {
        let lines = parse_lines(&json!([["1", "0", "-1/2"], [0, 2, 1]])).unwrap();
        assert_eq!(parse_lines(&lines_json(&lines)).unwrap(), lines);
        let planes = parse_planes(&json!([["1", "2", "3", "4"]])).unwrap();
        assert_eq!(parse_planes(&planes_json(&planes)).unwrap(), planes);
        assert!(parse_planes(&json!([["0", "0", "1"]])).is_err());
        let maps = parse_affine_maps(&json!([["1", "0", "0", "0", "2", "1/3"]])).unwrap();
        assert_eq!(
            parse_affine_maps(&affine_maps_json(&maps.iter().collect::<Vec<_>>())).unwrap(),
            maps
        );
        assert!(parse_affine_maps(&json!([[0, 0, 0, 0, 0, 0]])).is_err());
    }

    #[test]
    fn triple_systems_round_trip() {
        let delta =
            parse_triples(&json!({ "sizes": [2, 2, 3], "triples": [[0, 1, 2], [1, 0, 0]] }))
                .unwrap();
        assert_eq!(delta.ground(2).len(), 3);
        assert_eq!(parse_triples(&triples_json(&delta)).unwrap(), delta);
        let inferred = parse_triples(&json!({ "triples": [[0, 1, 2]] })).unwrap();
        assert_eq!(inferred.ground(2).len(), 1);
    }
}

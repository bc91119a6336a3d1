use std::collections::{BTreeSet, HashMap};

use super::LemmaError;
use crate::arrangement::{is_simple, Arrangement, ArrangementError, CellId};
use crate::exactgeom::{orient2, spans_plane, Point2, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleSelection {
    /// Index triples `i < j < l` into the input points.
    pub triangles: Vec<[usize; 3]>,
    pub cells: Vec<CellId>,
    pub m: usize,
    /// `|cells| / m`.
    pub k_ratio: Rat,
    /// `2048 K + 1024`.
    pub rho0: Rat,
    /// Whether `m/6` triangles are guaranteed: either the arrangement is
    /// simple with `rho >= rho0` and `floor(rho/4) <= |lines|`, or
    /// `floor(rho/2) >= |lines|` and the points are not collinear, so every
    /// neighbourhood is all of the points.
    /// expected.
    pub guarantee_applies: bool,
}

/// Cell of each point, rejecting points on lines and shared cells.
pub fn locate_distinct(points: &[Point2], arr: &Arrangement) -> Result<Vec<CellId>, LemmaError> {
    let mut owner: HashMap<CellId, usize> = HashMap::new();
    let mut cells = Vec::with_capacity(points.len());
    for (i, p) in points.iter().enumerate() {
        let c = match arr.locate(p) {
            Ok(c) => c,
            Err(ArrangementError::OnLine { line }) => {
                return Err(LemmaError::PointOnLine { point: i, line })
            }
            Err(e) => return Err(e.into()),
        };
        if let Some(&first) = owner.get(&c) {
            return Err(LemmaError::DuplicateCell { first, second: i });
        }
        owner.insert(c, i);
        cells.push(c);
    }
    Ok(cells)
}

/// Small non-collinear triangles with pairwise cell distance at most `rho`.
///
/// Each point whose `floor(rho/2)`-neighbourhood of cells holds a
/// non-collinear subset of the points contributes the first non-collinear
/// triple through it in index order.
pub fn select_small_triangles(
    points: &[Point2],
    arr: &Arrangement,
    rho: usize,
) -> Result<TriangleSelection, LemmaError> {
    let cells = locate_distinct(points, arr)?;
    let m = points.len();
    let half = rho / 2;
    let mut found: BTreeSet<[usize; 3]> = BTreeSet::new();
    for j in 0..m {
        let near: Vec<usize> = (0..m)
            .filter(|&i| arr.cell_distance(cells[i], cells[j]).expect("own cell") <= half)
            .collect();
        let pts: Vec<Point2> = near.iter().map(|&i| points[i].clone()).collect();
        if !spans_plane(&pts) {
            continue;
        }
        'pick: for (x, &a) in near.iter().enumerate() {
            for &b in &near[x + 1..] {
                if a != j && b != j && orient2(&points[j], &points[a], &points[b]) != 0 {
                    let mut t = [j, a, b];
                    t.sort_unstable();
                    found.insert(t);
                    break 'pick;
                }
            }
        }
    }
    let k_ratio = Rat::from(arr.cell_count() as u64) / Rat::from(m.max(1) as u64);
    let rho0 = Rat::from(2048u64) * &k_ratio + Rat::from(1024u64);
    let rho_r = Rat::from(rho as u64);
    let lines = arr.lines().len();
    let guarantee_applies = (rho_r >= rho0 && rho / 4 <= lines && is_simple(arr.lines()))
        || (half >= lines && spans_plane(points));
    Ok(TriangleSelection {
        triangles: found.into_iter().collect(),
        cells,
        m,
        k_ratio,
        rho0,
        guarantee_applies,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuttings::grid_cutting;

    fn grid_setup(s: usize) -> (Vec<Point2>, Arrangement) {
        let cut = grid_cutting(s, s);
        let pts = cut
            .points()
            .iter()
            .map(|p| p.to_point2().unwrap())
            .collect();
        (pts, Arrangement::build(cut.lines()).unwrap())
    }

    #[test]
    fn three_points() {
        let pts = vec![
            Point2::from_ints(0, 0),
            Point2::from_ints(4, 0),
            Point2::from_ints(0, 4),
        ];
        let lines = vec![
            crate::arrangement::Line::from_ints(1, 0, -1).unwrap(),
            crate::arrangement::Line::from_ints(0, 1, -1).unwrap(),
        ];
        let arr = Arrangement::build(lines).unwrap();
        let sel = select_small_triangles(&pts, &arr, 2).unwrap();
        assert_eq!(sel.triangles, vec![[0, 1, 2]]);
        assert!(!sel.guarantee_applies);
        assert!(
            select_small_triangles(&pts, &arr, 4)
                .unwrap()
                .guarantee_applies
        );
    }

    #[test]
    fn diameter_radius_is_not_enough() {
        let (grid, arr) = grid_setup(3);
        let pts = vec![grid[0].clone(), grid[1].clone(), grid[8].clone()];
        let sel = select_small_triangles(&pts, &arr, 4).unwrap();
        assert!(sel.triangles.is_empty());
        assert!(!sel.guarantee_applies);
        assert_eq!(
            select_small_triangles(&pts, &arr, 8)
                .unwrap()
                .triangles
                .len(),
            1
        );
    }

    #[test]
    fn grid_3x3_trace() {
        let (pts, arr) = grid_setup(3);
        let sel = select_small_triangles(&pts, &arr, 4).unwrap();
        assert!(6 * sel.triangles.len() >= 9);
        for t in &sel.triangles {
            assert_ne!(orient2(&pts[t[0]], &pts[t[1]], &pts[t[2]]), 0);
            for a in t {
                for b in t {
                    assert!(arr.cell_distance(sel.cells[*a], sel.cells[*b]).unwrap() <= 4);
                }
            }
        }
    }

    #[test]
    fn collinear_gives_nothing() {
        let pts: Vec<Point2> = (0..5).map(|i| Point2::from_ints(i, 0)).collect();
        let lines = (0..4)
            .map(|i| crate::arrangement::Line::from_ints(2, 0, -(2 * i + 1)).unwrap())
            .collect();
        let arr = Arrangement::build(lines).unwrap();
        assert!(select_small_triangles(&pts, &arr, 4)
            .unwrap()
            .triangles
            .is_empty());
    }

    #[test]
    fn shared_cell_and_line_errors() {
        let (_, arr) = grid_setup(2);
        let same = vec![Point2::from_ints(1, 1), Point2::from_ints(0, 0)];
        assert_eq!(
            select_small_triangles(&same, &arr, 1),
            Err(LemmaError::DuplicateCell {
                first: 0,
                second: 1
            })
        );
        let on = vec![Point2::new(Rat::from(3) / Rat::from(2), Rat::from(1))];
        assert!(matches!(
            select_small_triangles(&on, &arr, 1),
            Err(LemmaError::PointOnLine { point: 0, .. })
        ));
    }
}

use std::collections::{BTreeMap, BTreeSet, HashSet};

use proptest::prelude::*;

use richgeom::arrangement::{sign_vector, Arrangement, Line};
use richgeom::cuttings::{greedy_cutting, lattice_cutting, verify_cutting};
use richgeom::exactgeom::{
    affine_from_triples, orient2, AffineMap2, CanonicalKey, Point, Point2, Rat,
};
use richgeom::lemmalab::{
    graph_plane_embed, prune_triple_system, select_small_triangles, TripleSystem,
};
use richgeom::richmaps::{
    count_rich_translations, enumerate_rich_affine1, enumerate_rich_affine2,
    enumerate_rich_mobius1, enumerate_rich_rational1, match_set, RichMapRecord,
};

fn small() -> impl Strategy<Value = i64> {
    -6i64..=6
}

fn point_set(max: usize, box_side: i64) -> impl Strategy<Value = Vec<Point2>> {
    prop::collection::btree_set((0..box_side, 0..box_side), 3..=max).prop_map(|s| {
        s.into_iter()
            .map(|(x, y)| Point2::from_ints(x, y))
            .collect()
    })
}

fn reals(max: usize, range: i64) -> impl Strategy<Value = Vec<Rat>> {
    prop::collection::btree_set(-range..=range, 3..=max)
        .prop_map(|s| s.into_iter().map(Rat::from).collect())
}

fn affine() -> impl Strategy<Value = AffineMap2> {
    (small(), small(), small(), small(), small(), small()).prop_filter_map(
        "singular",
        |(a1, b1, c1, a2, b2, c2)| {
            AffineMap2::new(
                a1.into(),
                b1.into(),
                c1.into(),
                a2.into(),
                b2.into(),
                c2.into(),
            )
            .ok()
        },
    )
}

fn keys<M: CanonicalKey, T>(records: &[RichMapRecord<M, T>]) -> BTreeMap<Vec<u8>, usize> {
    records
        .iter()
        .map(|r| (r.map.canonical_key(), r.match_count))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn affine_from_triples_recovers_map(m in affine(), pts in point_set(3, 8)) {
        prop_assume!(orient2(&pts[0], &pts[1], &pts[2]) != 0);
        let src = [pts[0].clone(), pts[1].clone(), pts[2].clone()];
        let dst = src.clone().map(|p| m.apply(&p));
        let got = affine_from_triples(&src, &dst).unwrap();
        prop_assert_eq!(got.canonical_key(), m.canonical_key());
    }

    #[test]
    fn cell_distance_counts_separating_lines(
        raw in prop::collection::vec((small(), small(), small()), 1..=6),
        probes in prop::collection::vec((-40i64..40, -40i64..40), 2..=6),
    ) {
        let lines: Vec<Line> = raw.iter().filter_map(|&(a, b, c)| Line::from_ints(a, b, c).ok()).collect();
        prop_assume!(!lines.is_empty());
        let arr = Arrangement::build(lines.clone());
        prop_assume!(arr.is_ok(), "repeated line");
        let arr = arr.unwrap();
        let n = lines.len();
        prop_assert!(arr.cell_count() <= n * (n + 1) / 2 + 1);
        let pts: Vec<Point2> = probes
            .iter()
            .map(|&(x, y)| Point2::new(Rat::from(2 * x + 1) / Rat::from(7), Rat::from(2 * y + 1) / Rat::from(11)))
            .filter(|p| lines.iter().all(|l| !l.contains(p)))
            .collect();
        for p in &pts {
            for q in &pts {
                let (cp, cq) = (arr.locate(p).unwrap(), arr.locate(q).unwrap());
                let separating = lines.iter().filter(|l| l.side(p) != l.side(q)).count();
                prop_assert_eq!(arr.cell_distance(cp, cq).unwrap(), separating);
                let sv = sign_vector(&lines, p).unwrap().hamming(&sign_vector(&lines, q).unwrap());
                prop_assert_eq!(sv, separating);
            }
        }
        for c in 0..arr.cell_count() {
            let sizes: Vec<usize> = (0..=n).map(|rho| arr.ball_size(c, rho).unwrap()).collect();
            prop_assert_eq!(sizes[0], 1);
            prop_assert!(sizes.windows(2).all(|w| w[0] <= w[1]));
            prop_assert_eq!(sizes[n], arr.cell_count());
        }
    }

    #[test]
    fn cuttings_survive_taking_subsets(rows in 1usize..6, cols in 1usize..6, mask in any::<u64>()) {
        let cut = lattice_cutting(&[cols, rows]);
        prop_assert!(cut.verify().valid);
        let subset: Vec<Point> =
            cut.points().iter().enumerate().filter(|(i, _)| mask >> (i % 64) & 1 == 1).map(|(_, p)| p.clone()).collect();
        prop_assume!(!subset.is_empty());
        prop_assert!(verify_cutting(&subset, cut.planes()).unwrap().valid);
    }

    #[test]
    fn lattice_cuttings_in_higher_dimensions(sides in prop::collection::vec(1usize..4, 1..=4)) {
        let cut = lattice_cutting(&sides);
        let check = cut.verify();
        prop_assert!(check.valid);
        prop_assert_eq!(cut.planes().len(), sides.iter().map(|s| s - 1).sum::<usize>());
    }

    #[test]
    fn greedy_cuttings_verify(pts in point_set(12, 6)) {
        match greedy_cutting(&pts, pts.len()) {
            Ok(cut) => {
                let flat: Vec<Point> = pts.iter().map(|p| p.to_point()).collect();
                prop_assert!(cut.planes().len() <= pts.len());
                prop_assert!(verify_cutting(&flat, cut.planes()).unwrap().valid);
            }
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn translations_match_difference_counts(pts in point_set(10, 5), k in 1usize..5) {
        let flat: Vec<Point> = pts.iter().map(|p| p.to_point()).collect();
        let mut want: BTreeMap<Vec<Rat>, usize> = BTreeMap::new();
        for p in &flat {
            for q in &flat {
                *want.entry(q.sub(p).unwrap()).or_default() += 1;
            }
        }
        want.retain(|_, m| *m >= k);
        let got: BTreeMap<Vec<Rat>, usize> =
            count_rich_translations(&flat, k).unwrap().into_iter().map(|(t, m)| (t.vector().to_vec(), m)).collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn affine2_records_are_sound_and_monotone(pts in point_set(7, 4), k in 3usize..6) {
        let hi = enumerate_rich_affine2(&pts, &pts, k + 1, 16).unwrap();
        let lo = enumerate_rich_affine2(&pts, &pts, k, 16).unwrap();
        for r in &lo {
            let m = match_set(&r.map, &pts, &pts);
            prop_assert!(m.pairs.len() == r.match_count && r.match_count >= k);
            prop_assert!(r.map.det() != 0);
        }
        let (lo, hi) = (keys(&lo), keys(&hi));
        prop_assert!(hi.iter().all(|(key, c)| lo.get(key) == Some(c)));
    }

    #[test]
    fn one_dimensional_records_are_sound(pts in reals(7, 8), k in 3usize..6) {
        for r in enumerate_rich_affine1(&pts, k, 60).unwrap() {
            prop_assert!(match_set(&r.map, &pts, &pts).pairs.len() == r.match_count && r.match_count >= k);
        }
        for r in enumerate_rich_mobius1(&pts, k, 20).unwrap() {
            prop_assert!(match_set(&r.map, &pts, &pts).pairs.len() == r.match_count && r.match_count >= k);
        }
        let census = enumerate_rich_rational1(&pts, k, 1, 12).unwrap();
        for r in &census.records {
            let m = match_set(&r.map, &pts, &pts);
            prop_assert!(m.injective() && m.pairs.len() == r.match_count && r.match_count >= k);
        }
    }

    #[test]
    fn rational_families_bracket_affine_and_mobius(pts in reals(6, 6), k in 4usize..6) {
        let images = |f: &dyn Fn(&Rat) -> Option<Rat>| pts.iter().map(f).collect::<Vec<Option<Rat>>>();
        let mut union = BTreeSet::new();
        for r in enumerate_rich_affine1(&pts, k, 60).unwrap() {
            union.insert((images(&|x| Some(r.map.apply(x))), r.match_count));
        }
        for r in enumerate_rich_mobius1(&pts, k, 20).unwrap() {
            union.insert((images(&|x| r.map.apply(x)), r.match_count));
        }
        let of = |census: richgeom::richmaps::RationalCensus| -> BTreeSet<(Vec<Option<Rat>>, usize)> {
            census.records.iter().map(|r| (images(&|x| r.map.apply(x)), r.match_count)).collect()
        };
        let r1 = of(enumerate_rich_rational1(&pts, k, 1, 12).unwrap());
        let r2 = of(enumerate_rich_rational1(&pts, k, 2, 12).unwrap());
        prop_assert!(r1.is_subset(&union));
        prop_assert!(union.is_subset(&r2));
    }

    #[test]
    fn graph_plane_richness_is_match_count(m in affine(), pts in point_set(10, 5)) {
        let plane = graph_plane_embed(&m);
        prop_assert_eq!(plane.richness(&pts, &pts), match_set(&m, &pts, &pts).pairs.len());
        for p in &pts {
            prop_assert!(plane.contains(p, &m.apply(p)));
        }
    }

    #[test]
    fn pruning_keeps_a_quarter_and_is_idempotent(
        sizes in (1usize..=30, 1usize..=30, 1usize..=30),
        raw in prop::collection::vec((0usize..30, 0usize..30, 0usize..30), 1..=400),
    ) {
        let sizes = [sizes.0, sizes.1, sizes.2];
        let triples: BTreeSet<[usize; 3]> =
            raw.into_iter().map(|(a, b, c)| [a % sizes[0], b % sizes[1], c % sizes[2]]).collect();
        let delta = TripleSystem::with_sizes(sizes, triples.into_iter().collect()).unwrap();
        let pruned = prune_triple_system(&delta).unwrap();
        prop_assert!(4 * pruned.len() >= delta.len());
        for class in 0..3 {
            let avg = delta.average_degree(class);
            for (_, d) in pruned.degrees(class) {
                prop_assert!(4 * d as u64 >= avg);
            }
            prop_assert!(pruned.ground(class).is_subset(delta.ground(class)));
        }
        prop_assert_eq!(prune_triple_system(&pruned).unwrap(), pruned);
    }

    #[test]
    fn triangles_honour_their_contract(rows in 1usize..6, cols in 1usize..6, mask in any::<u32>(), rho in 0usize..10) {
        let cut = lattice_cutting(&[cols, rows]);
        let arr = Arrangement::build(cut.lines()).unwrap();
        let pts: Vec<Point2> = cut
            .points()
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> (i % 32) & 1 == 1)
            .map(|(_, p)| p.to_point2().unwrap())
            .collect();
        prop_assume!(!pts.is_empty());
        let sel = select_small_triangles(&pts, &arr, rho).unwrap();
        let mut seen = HashSet::new();
        for t in &sel.triangles {
            prop_assert!(seen.insert(*t));
            prop_assert!(orient2(&pts[t[0]], &pts[t[1]], &pts[t[2]]) != 0);
            for (a, b) in [(0, 1), (1, 2), (0, 2)] {
                prop_assert!(arr.cell_distance(sel.cells[t[a]], sel.cells[t[b]]).unwrap() <= rho);
            }
        }
        if sel.guarantee_applies {
            prop_assert!(6 * sel.triangles.len() >= sel.m);
        }
    }
}

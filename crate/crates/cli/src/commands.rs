use std::collections::BTreeMap;
use std::path::Path;

use serde_json::{json, Value};

use richgeom::arrangement::{is_simple, Arrangement, ArrangementError, Line};
use richgeom::cuttings::{greedy_cutting, grid_cutting, verify_cutting};
use richgeom::exactgeom::{AnyMap, Point, Point2, Rat};
use richgeom::extremal::{
    gen_grid_affine_example, gen_noncollinear_affine_example, gen_shift_example,
    gen_subspace_example, multiplicative_sidon, sidon_set,
};
use richgeom::lemmalab::{
    average_forcing, main_theorem_experiment, prune_triple_system, select_small_triangles, Family,
};
use richgeom::richmaps::{
    count_rich_isometries2, count_rich_translations, enumerate_rich_affine1,
    enumerate_rich_affine2, enumerate_rich_mobius1, enumerate_rich_rational1,
    largest_collinear_subset, rich_line_histogram, RichMapRecord, AFFINE1_GUARD, AFFINE2_GUARD,
    ISOMETRY2_GUARD, MOBIUS1_GUARD, RATIONAL1_GUARD,
};

use crate::error::CliError;
use crate::formats::{
    affine_maps_json, lines_json, load_json, map_json, map_text, parse_affine_maps, parse_lines,
    parse_planes, parse_points, parse_triples, planar, rat_json, rats_json, reals, triples_json,
    Loaded, PointSet, PointSetFile,
};
use crate::report::{Outcome, Table};
use crate::{ArrCmd, Command, CountCmd, CutCmd, ExpCmd, GenCmd, LemmaCmd};

/// Loaded inputs, kept for the report's digest list.
pub struct Ctx {
    allow_duplicates: bool,
    pub inputs: Vec<Loaded>,
}

impl Ctx {
    pub fn new(allow_duplicates: bool) -> Self {
        Ctx {
            allow_duplicates,
            inputs: Vec::new(),
        }
    }

    fn json(&mut self, path: &Path) -> Result<Value, CliError> {
        let loaded = load_json(path)?;
        let value = loaded.value.clone();
        self.inputs.push(loaded);
        Ok(value)
    }

    fn points(&mut self, path: &Path) -> Result<PointSet, CliError> {
        let v = self.json(path)?;
        parse_points(&v, self.allow_duplicates)
    }

    fn planar(&mut self, path: &Path) -> Result<(Vec<Point2>, usize), CliError> {
        let set = self.points(path)?;
        Ok((planar(&set)?, set.duplicates_removed))
    }

    fn reals(&mut self, path: &Path) -> Result<(Vec<Rat>, usize), CliError> {
        let set = self.points(path)?;
        Ok((reals(&set)?, set.duplicates_removed))
    }

    fn lines(&mut self, path: &Path) -> Result<Vec<Line>, CliError> {
        let v = self.json(path)?;
        parse_lines(&v)
    }
}

pub fn dispatch(cmd: &Command, ctx: &mut Ctx) -> Result<Outcome, CliError> {
    match cmd {
        Command::Gen(c) => gen(c),
        Command::Count(c) => count(c, ctx),
        Command::Arr(c) => arr(c, ctx),
        Command::Cut(c) => cut(c, ctx),
        Command::Lemma(c) => lemma(c, ctx),
        Command::Exp(c) => exp(c),
    }
}

fn p2_json(p: &Point2) -> Value {
    rats_json([&p.x, &p.y])
}

fn points2_file(points: &[Point2]) -> Value {
    let flat: Vec<Point> = points.iter().map(Point2::to_point).collect();
    serde_json::to_value(PointSetFile::from_points(2, &flat)).expect("point files serialize")
}

fn metadata_json(m: &BTreeMap<&'static str, String>) -> Value {
    Value::Object(
        m.iter()
            .map(|(k, v)| (k.to_string(), Value::String(v.clone())))
            .collect(),
    )
}

/// Payload and CSV table for a list of rich-map records.
fn records<M, T>(
    out: &mut Outcome,
    recs: &[RichMapRecord<M, T>],
    any: impl Fn(&M) -> AnyMap,
    pt: impl Fn(&T) -> Value,
) {
    let mut table = Table::new(&["type", "map", "matches"]);
    let list: Vec<Value> = recs
        .iter()
        .map(|r| {
            let m = any(&r.map);
            let j = map_json(&m);
            table.push(vec![
                j["type"].as_str().unwrap_or_default().to_string(),
                map_text(&m),
                r.match_count.to_string(),
            ]);
            let pairs: Vec<Value> = r
                .matched_pairs
                .iter()
                .map(|(p, q)| json!([pt(p), pt(q)]))
                .collect();
            json!({ "map": j, "matches": r.match_count, "pairs": pairs })
        })
        .collect();
    out.set("count", recs.len());
    out.set("maps", list);
    out.table = Some(table);
}

fn gen(cmd: &GenCmd) -> Result<Outcome, CliError> {
    let mut out = Outcome::default();
    match cmd {
        GenCmd::Shift { n, k } => {
            let ex = gen_shift_example(*n, *k)?;
            let mut table = Table::new(&["vector", "matches"]);
            let family: Vec<Value> = ex
                .certified_family
                .iter()
                .map(|r| {
                    table.push(vec![
                        map_text(&AnyMap::Translation(r.map.clone())),
                        r.match_count.to_string(),
                    ]);
                    json!({ "vector": rats_json(r.map.vector()), "matches": r.match_count })
                })
                .collect();
            out.set("family", family);
            out.set("family_size", ex.certified_family.len());
            out.set("claimed_lower_bound", rat_json(&ex.claimed_lower_bound));
            out.set("metadata", metadata_json(&ex.metadata));
            out.set("points", ex.points.len());
            out.table = Some(table);
            out.artifact = Some(
                serde_json::to_value(PointSetFile::from_points(2, &ex.points)).expect("serializes"),
            );
        }
        GenCmd::Noncollinear { n, maps_out } => {
            let ex = gen_noncollinear_affine_example(*n)?;
            records(
                &mut out,
                &ex.certified_family,
                |m| AnyMap::Affine2(m.clone()),
                p2_json,
            );
            out.set("family_size", ex.certified_family.len());
            out.set("claimed_lower_bound", rat_json(&ex.claimed_lower_bound));
            out.set("metadata", metadata_json(&ex.metadata));
            out.set("points", ex.points.len());
            if let Some(path) = maps_out {
                let maps: Vec<_> = ex.certified_family.iter().map(|r| &r.map).collect();
                out.extra_files
                    .push((path.clone(), affine_maps_json(&maps)));
            }
            out.artifact = Some(points2_file(&ex.points));
        }
        GenCmd::GridAffine { n, k, maps_out } => {
            let ex = gen_grid_affine_example(*n, *k)?;
            let mut table = Table::new(&["a1", "b1", "c1", "a2", "b2", "c2", "matches"]);
            let family: Vec<Value> = ex
                .certified_family
                .iter()
                .map(|(params, r)| {
                    let mut row: Vec<String> = params.iter().map(|p| p.to_string()).collect();
                    row.push(r.match_count.to_string());
                    table.push(row);
                    json!({ "params": params, "map": map_json(&AnyMap::Affine2(r.map.clone())), "matches": r.match_count })
                })
                .collect();
            out.set("family", family);
            out.set("family_size", ex.certified_family.len());
            out.set("claimed_lower_bound", rat_json(&ex.claimed_lower_bound));
            out.set("metadata", metadata_json(&ex.metadata));
            out.set("points", ex.points.len());
            out.table = Some(table);
            if let Some(path) = maps_out {
                let maps: Vec<_> = ex.certified_family.iter().map(|(_, r)| &r.map).collect();
                out.extra_files
                    .push((path.clone(), affine_maps_json(&maps)));
            }
            out.artifact = Some(points2_file(&ex.points));
        }
        GenCmd::Subspace { dim, r, t, side } => {
            let ex = gen_subspace_example(*dim, *r, *t, *side)?;
            let mut table = Table::new(&["slopes", "offsets", "contained"]);
            let family: Vec<Value> = ex
                .certified_family
                .iter()
                .map(|s| {
                    table.push(vec![
                        format!("{:?}", s.subspace.a),
                        format!("{:?}", s.subspace.c),
                        s.contained.to_string(),
                    ]);
                    json!({ "dim": s.subspace.dim, "slopes": s.subspace.a, "offsets": s.subspace.c, "contained": s.contained })
                })
                .collect();
            out.set("family", family);
            out.set("family_size", ex.certified_family.len());
            out.set("claimed_lower_bound", rat_json(&ex.claimed_lower_bound));
            out.set("metadata", metadata_json(&ex.metadata));
            out.set("points", ex.points.len());
            out.table = Some(table);
            out.artifact = Some(
                serde_json::to_value(PointSetFile::from_points(*dim, &ex.points))
                    .expect("serializes"),
            );
        }
        GenCmd::Sidon { t, multiplicative } => {
            let set = if *multiplicative {
                multiplicative_sidon(*t)
            } else {
                sidon_set(*t)
            };
            let values: Vec<Rat> = set.iter().map(|&v| Rat::from(v)).collect();
            out.set(
                "kind",
                if *multiplicative {
                    "multiplicative"
                } else {
                    "additive"
                },
            );
            out.set("set", set);
            out.artifact =
                Some(serde_json::to_value(PointSetFile::from_reals(&values)).expect("serializes"));
        }
    }
    Ok(out)
}

fn note_duplicates(out: &mut Outcome, removed: usize) {
    if removed > 0 {
        out.set("duplicates_removed", removed);
    }
}

fn count(cmd: &CountCmd, ctx: &mut Ctx) -> Result<Outcome, CliError> {
    let mut out = Outcome::default();
    match cmd {
        CountCmd::Translations { input, k } => {
            let set = ctx.points(&input.input)?;
            let found = count_rich_translations(&set.points, *k)?;
            let mut table = Table::new(&["vector", "matches"]);
            let list: Vec<Value> = found
                .iter()
                .map(|(t, m)| {
                    table.push(vec![
                        map_text(&AnyMap::Translation(t.clone())),
                        m.to_string(),
                    ]);
                    json!({ "vector": rats_json(t.vector()), "matches": m })
                })
                .collect();
            out.set("count", found.len());
            out.set(
                "nonzero",
                found.iter().filter(|(t, _)| !t.is_zero()).count(),
            );
            out.set("translations", list);
            out.table = Some(table);
            note_duplicates(&mut out, set.duplicates_removed);
        }
        CountCmd::Affine1 { input, k, guard } => {
            let (pts, dup) = ctx.reals(&input.input)?;
            let recs = enumerate_rich_affine1(&pts, *k, guard.guard.unwrap_or(AFFINE1_GUARD))?;
            records(&mut out, &recs, |m| AnyMap::Affine1(m.clone()), rat_json);
            note_duplicates(&mut out, dup);
        }
        CountCmd::Affine2 {
            input,
            target,
            k,
            guard,
        } => {
            let (p1, dup) = ctx.planar(&input.input)?;
            let p2 = match target {
                Some(t) => ctx.planar(t)?.0,
                None => p1.clone(),
            };
            let recs = enumerate_rich_affine2(&p1, &p2, *k, guard.guard.unwrap_or(AFFINE2_GUARD))?;
            records(&mut out, &recs, |m| AnyMap::Affine2(m.clone()), p2_json);
            note_duplicates(&mut out, dup);
        }
        CountCmd::Mobius { input, k, guard } => {
            let (pts, dup) = ctx.reals(&input.input)?;
            let recs = enumerate_rich_mobius1(&pts, *k, guard.guard.unwrap_or(MOBIUS1_GUARD))?;
            records(&mut out, &recs, |m| AnyMap::Mobius1(m.clone()), rat_json);
            note_duplicates(&mut out, dup);
        }
        CountCmd::Rational { input, k, r, guard } => {
            let (pts, dup) = ctx.reals(&input.input)?;
            let census =
                enumerate_rich_rational1(&pts, *k, *r, guard.guard.unwrap_or(RATIONAL1_GUARD))?;
            records(
                &mut out,
                &census.records,
                |m| AnyMap::Rational1(m.clone()),
                rat_json,
            );
            let pairs = |ps: &[(Rat, Rat)]| -> Value {
                Value::Array(
                    ps.iter()
                        .map(|(a, b)| json!([rat_json(a), rat_json(b)]))
                        .collect(),
                )
            };
            let non_injective: Vec<Value> = census
                .non_injective
                .iter()
                .map(|n| {
                    json!({
                        "map": map_json(&AnyMap::Rational1(n.map.clone())),
                        "pairs": pairs(&n.pairs),
                        "duplicate_images": pairs(&n.duplicate_images),
                    })
                })
                .collect();
            out.set("non_injective", non_injective);
            note_duplicates(&mut out, dup);
        }
        CountCmd::Isometries { input, k, guard } => {
            let (pts, dup) = ctx.planar(&input.input)?;
            let recs = count_rich_isometries2(&pts, *k, guard.guard.unwrap_or(ISOMETRY2_GUARD))?;
            records(&mut out, &recs, |m| AnyMap::Isometry2(m.clone()), p2_json);
            note_duplicates(&mut out, dup);
        }
        CountCmd::RichLines { input, k } => {
            let (pts, dup) = ctx.planar(&input.input)?;
            let hist = rich_line_histogram(&pts);
            let mut table = Table::new(&["points_on_line", "lines"]);
            for (p, l) in &hist {
                table.push(vec![p.to_string(), l.to_string()]);
            }
            let obj: serde_json::Map<String, Value> = hist
                .iter()
                .map(|(p, l)| (p.to_string(), json!(l)))
                .collect();
            out.set("histogram", Value::Object(obj));
            out.set("largest_collinear", largest_collinear_subset(&pts));
            if let Some(k) = k {
                out.set("k", *k);
                out.set("count", hist.range(*k..).map(|(_, c)| c).sum::<usize>());
            }
            out.table = Some(table);
            note_duplicates(&mut out, dup);
        }
    }
    Ok(out)
}

/// Cell of each point, allowing shared cells.
fn locate_all(points: &[Point2], arr: &Arrangement) -> Result<Vec<usize>, CliError> {
    points
        .iter()
        .enumerate()
        .map(|(i, p)| {
            arr.locate(p).map_err(|e| match e {
                ArrangementError::OnLine { line } => CliError::Library {
                    kind: "arrangement",
                    message: format!("point {i} lies on line {line}"),
                },
                other => other.into(),
            })
        })
        .collect()
}

fn arr(cmd: &ArrCmd, ctx: &mut Ctx) -> Result<Outcome, CliError> {
    let mut out = Outcome::default();
    match cmd {
        ArrCmd::Build { lines } => {
            let lines = ctx.lines(lines)?;
            let simple = is_simple(&lines);
            let arr = Arrangement::build(lines)?;
            let mut table = Table::new(&["cell", "signs", "x", "y"]);
            let cells: Vec<Value> = arr
                .cells()
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let r = &c.representative;
                    table.push(vec![
                        i.to_string(),
                        c.signs.to_symbols(),
                        r.x.to_string(),
                        r.y.to_string(),
                    ]);
                    json!({ "id": i, "signs": c.signs.to_symbols(), "representative": p2_json(r) })
                })
                .collect();
            out.set("lines", arr.lines().len());
            out.set("simple", simple);
            out.set("cell_count", arr.cell_count());
            out.set("cells", cells);
            out.table = Some(table);
        }
        ArrCmd::Stats { lines, rho } => {
            let arr = Arrangement::build(ctx.lines(lines)?)?;
            let p = arr.ball_profile(*rho);
            out.set("lines", arr.lines().len());
            out.set("simple", is_simple(arr.lines()));
            out.set("rho", p.rho);
            out.set("cells", p.cells);
            out.set("ball_sum", p.sum);
            out.set("ball_max", p.max);
            out.set("ball_mean", rat_json(&p.mean));
            out.set("second_moment", p.second_moment);
            out.set(
                "fitted_constant",
                p.fitted_constant
                    .as_ref()
                    .map(rat_json)
                    .unwrap_or(Value::Null),
            );
        }
        ArrCmd::Emo { lines, rho } => {
            let arr = Arrangement::build(ctx.lines(lines)?)?;
            let radii: Vec<usize> = match rho {
                Some(r) => vec![*r],
                None => (1..=arr.lines().len()).collect(),
            };
            let mut table = Table::new(&["rho", "bound", "min_ball", "holds"]);
            let mut all = true;
            let mut rows = Vec::new();
            for r in radii {
                let rep = arr.verify_emo(r)?;
                all &= rep.holds;
                table.push(vec![
                    r.to_string(),
                    rep.bound.to_string(),
                    rep.min_ball.to_string(),
                    rep.holds.to_string(),
                ]);
                rows.push(json!({ "rho": r, "bound": rat_json(&rep.bound), "min_ball": rep.min_ball, "holds": rep.holds }));
            }
            out.set("cells", arr.cell_count());
            out.set("radii", rows);
            out.set("holds", all);
            out.table = Some(table);
        }
        ArrCmd::Filter { lines, input, rho } => {
            let arr = Arrangement::build(ctx.lines(lines)?)?;
            let (pts, dup) = ctx.planar(&input.input)?;
            let cells = locate_all(&pts, &arr)?;
            let f = arr.filter_low_ball_cells(&cells, *rho)?;
            let kept: Vec<Point2> = f.kept_positions.iter().map(|&i| pts[i].clone()).collect();
            out.set("kept_indices", f.kept_positions.clone());
            out.set("kept_cells", f.kept.clone());
            out.set("achieved_bound", f.achieved_bound);
            out.set("input_mean", rat_json(&f.input_mean));
            out.set("kept_points", points2_file(&kept));
            note_duplicates(&mut out, dup);
        }
    }
    Ok(out)
}

fn cut(cmd: &CutCmd, ctx: &mut Ctx) -> Result<Outcome, CliError> {
    let mut out = Outcome::default();
    match cmd {
        CutCmd::Verify { input, planes } => {
            let set = ctx.points(&input.input)?;
            let v = ctx.json(planes)?;
            let planes = parse_planes(&v)?;
            let check = verify_cutting(&set.points, &planes)?;
            let (lo, hi) = check.constant_bracket(1000);
            out.set("valid", check.valid);
            out.set(
                "failure",
                check.failure.map(|f| format!("{f:?}")).unwrap_or_default(),
            );
            out.set("planes", planes.len());
            out.set("points", set.points.len());
            out.set("dim", check.dim);
            out.set("constant_pow", rat_json(&check.constant_pow));
            out.set("constant_bracket", json!([rat_json(&lo), rat_json(&hi)]));
            note_duplicates(&mut out, set.duplicates_removed);
        }
        CutCmd::Greedy { input, budget } => {
            let (pts, dup) = ctx.planar(&input.input)?;
            let cutting = greedy_cutting(&pts, *budget)?;
            let lines = cutting.lines();
            out.set("lines", lines_json(&lines));
            out.set("line_count", lines.len());
            out.set("budget", *budget);
            out.set("valid", cutting.verify().valid);
            out.set("constant_pow", rat_json(cutting.constant_pow()));
            out.artifact = Some(lines_json(&lines));
            note_duplicates(&mut out, dup);
        }
        CutCmd::Grid {
            rows,
            cols,
            points_out,
        } => {
            if *rows == 0 || *cols == 0 {
                return Err(CliError::Usage("--rows and --cols must be positive".into()));
            }
            let cutting = grid_cutting(*rows, *cols);
            let lines = cutting.lines();
            out.set("lines", lines_json(&lines));
            out.set("line_count", lines.len());
            out.set("points", cutting.points().len());
            out.set("valid", cutting.verify().valid);
            out.set("constant_pow", rat_json(cutting.constant_pow()));
            if let Some(path) = points_out {
                let file = PointSetFile::from_points(2, cutting.points());
                out.extra_files.push((
                    path.clone(),
                    serde_json::to_value(file).expect("serializes"),
                ));
            }
            out.artifact = Some(lines_json(&lines));
        }
    }
    Ok(out)
}

fn lemma(cmd: &LemmaCmd, ctx: &mut Ctx) -> Result<Outcome, CliError> {
    let mut out = Outcome::default();
    match cmd {
        LemmaCmd::Folklore { input } => {
            let v = ctx.json(input)?;
            let delta = parse_triples(&v)?;
            let pruned = prune_triple_system(&delta)?;
            let sizes = |d: &richgeom::lemmalab::TripleSystem| {
                (0..3).map(|c| d.ground(c).len()).collect::<Vec<_>>()
            };
            out.set("original_triples", delta.len());
            out.set("kept_triples", pruned.len());
            out.set("original_sizes", sizes(&delta));
            out.set("kept_sizes", sizes(&pruned));
            out.set(
                "reference_averages",
                pruned
                    .reference_averages()
                    .map(|a| rats_json(a.iter()))
                    .unwrap_or(Value::Null),
            );
            out.set("system", triples_json(&pruned));
        }
        LemmaCmd::Triangles { input, lines, rho } => {
            let arr = Arrangement::build(ctx.lines(lines)?)?;
            let (pts, dup) = ctx.planar(&input.input)?;
            let sel = select_small_triangles(&pts, &arr, *rho)?;
            out.set("m", sel.m);
            out.set("count", sel.triangles.len());
            out.set("triangles", sel.triangles.clone());
            out.set("k_ratio", rat_json(&sel.k_ratio));
            out.set("rho0", rat_json(&sel.rho0));
            out.set("guarantee_applies", sel.guarantee_applies);
            out.set("at_least_m_over_6", 6 * sel.triangles.len() >= sel.m);
            note_duplicates(&mut out, dup);
        }
        LemmaCmd::AvgForce {
            input,
            p2,
            maps,
            h1,
            h2,
            rho,
            c,
            big_c,
        } => {
            let (p1_pts, _) = ctx.planar(input)?;
            let p2_pts = match p2 {
                Some(p) => ctx.planar(p)?.0,
                None => p1_pts.clone(),
            };
            let mv = ctx.json(maps)?;
            let maps = parse_affine_maps(&mv)?;
            let h1_lines = ctx.lines(h1)?;
            let h2_lines = match h2 {
                Some(h) => ctx.lines(h)?,
                None => h1_lines.clone(),
            };
            let rep = average_forcing(
                &p1_pts, &p2_pts, &maps, &h1_lines, &h2_lines, *rho, c, big_c,
            )?;
            let mut table = Table::new(&[
                "step", "action", "p1", "p2", "s", "triples", "bound", "holds",
            ]);
            let steps: Vec<Value> = rep
                .steps
                .iter()
                .map(|s| {
                    table.push(vec![
                        s.step.to_string(),
                        s.action.to_string(),
                        s.p1.to_string(),
                        s.p2.to_string(),
                        s.s.to_string(),
                        s.triples.to_string(),
                        s.bound.to_string(),
                        s.holds.to_string(),
                    ]);
                    json!({
                        "step": s.step, "action": s.action, "p1": s.p1, "p2": s.p2, "s": s.s,
                        "triples": s.triples, "bound": rat_json(&s.bound), "holds": s.holds,
                        "ball_bound": s.ball_bound,
                    })
                })
                .collect();
            out.set("n", rep.n);
            out.set("lambda", rat_json(&rep.lambda));
            out.set("c", rat_json(&rep.c));
            out.set("c_star", rat_json(&rep.c_star));
            out.set("p1_star", rep.p1_star.clone());
            out.set("p2_star", rep.p2_star.clone());
            out.set("s_star", rep.s_star.clone());
            out.set("s_ratio", rat_json(&rep.s_ratio));
            out.set("min_degree_ratio", rat_json(&rep.min_degree_ratio));
            out.set("p1_ratio", rat_json(&rep.p1_ratio));
            out.set("p2_ratio", rat_json(&rep.p2_ratio));
            out.set("ball_constant", rat_json(&rep.ball_constant));
            out.set("conclusions", rep.conclusions.to_vec());
            out.set("all_hold", rep.all_hold());
            out.set("steps", steps);
            out.table = Some(table);
        }
    }
    Ok(out)
}

fn exp(cmd: &ExpCmd) -> Result<Outcome, CliError> {
    let mut out = Outcome::default();
    match cmd {
        ExpCmd::MainTheorem {
            family,
            sizes,
            c,
            big_c,
            guard,
        } => {
            let fam = match family.as_str() {
                "grid" => Family::Grid,
                "shift" => Family::Shift,
                "noncollinear" => Family::NonCollinear,
                "collinear" => Family::Collinear,
                other => return Err(CliError::Usage(format!("unknown family {other}"))),
            };
            let rows = main_theorem_experiment(
                fam,
                sizes,
                c,
                big_c,
                guard.guard.unwrap_or(AFFINE2_GUARD),
            )?;
            let mut table = Table::new(&[
                "family",
                "n",
                "k",
                "census",
                "lambda",
                "cutting_lines",
                "constant_pow",
                "proper",
            ]);
            let list: Vec<Value> = rows
                .iter()
                .map(|r| {
                    table.push(vec![
                        r.family.to_string(),
                        r.n.to_string(),
                        r.k.to_string(),
                        r.census.to_string(),
                        r.lambda.to_string(),
                        r.cutting_lines.map(|l| l.to_string()).unwrap_or_default(),
                        r.constant_pow.as_ref().map(|c| c.to_string()).unwrap_or_default(),
                        r.proper.to_string(),
                    ]);
                    json!({
                        "family": r.family, "n": r.n, "k": r.k, "census": r.census, "lambda": rat_json(&r.lambda),
                        "cutting_lines": r.cutting_lines,
                        "constant_pow": r.constant_pow.as_ref().map(rat_json),
                        "proper": r.proper,
                    })
                })
                .collect();
            out.set("c", rat_json(c));
            out.set("C", rat_json(big_c));
            out.set("rows", list);
            out.table = Some(table);
        }
    }
    Ok(out)
}

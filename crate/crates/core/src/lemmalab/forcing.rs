use std::collections::BTreeSet;

use super::triangles::locate_distinct;
use super::triples::{build_incidence_triples, prune_triple_system, TripleSystem};
use super::LemmaError;
use crate::arrangement::{Arrangement, Line};
use crate::exactgeom::rat::pow;
use crate::exactgeom::{AffineMap2, Point2, Rat};

/// Sizes after one step of the averaging argument together with the lower
/// bound on `|Delta|` that the argument promises at that point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepRecord {
    pub step: u8,
    pub action: &'static str,
    pub p1: usize,
    pub p2: usize,
    pub s: usize,
    pub triples: usize,
    pub bound: Rat,
    pub holds: bool,
    /// For filter steps, the largest kept ball size.
    pub ball_bound: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AvgForcingReport {
    pub n: usize,
    pub lambda: Rat,
    pub c: Rat,
    /// `c^4 / 2^16`.
    pub c_star: Rat,
    pub p1_star: Vec<usize>,
    pub p2_star: Vec<usize>,
    pub s_star: Vec<usize>,
    pub delta_star: TripleSystem,
    pub steps: Vec<StepRecord>,
    /// `|S*| / |S|`.
    pub s_ratio: Rat,
    /// `min deg(S) / N` over `S*`.
    pub min_degree_ratio: Rat,
    pub p1_ratio: Rat,
    pub p2_ratio: Rat,
    /// Largest `|B_rho|` over the cells of surviving points, divided by `rho^2`.
    pub ball_constant: Rat,
    /// `|S*| >= c*|S|`, `min deg >= c*N`, `|P_i*| >= c*N`.
    pub conclusions: [bool; 3],
}

impl AvgForcingReport {
    pub fn all_hold(&self) -> bool {
        self.conclusions.iter().all(|&b| b) && self.steps.iter().all(|s| s.holds)
    }
}

fn violated(msg: String) -> LemmaError {
    LemmaError::HypothesisViolated(msg)
}

/// Five-step averaging: prune, keep the better half of `P1` by ball size in
/// `A(H1)`, prune, the same for `P2` in `A(H2)`, prune.
///
/// `N = max(|P1|, |P2|)`. Hypotheses checked on entry: `|H_i| <= C sqrt(N)`,
/// points of `P_i` in distinct cells of `A(H_i)` and off its lines, and
/// every map matching at least `cN` pairs.
#[allow(clippy::too_many_arguments)]
pub fn average_forcing(
    p1: &[Point2],
    p2: &[Point2],
    maps: &[AffineMap2],
    h1: &[Line],
    h2: &[Line],
    rho: usize,
    c: &Rat,
    big_c: &Rat,
) -> Result<AvgForcingReport, LemmaError> {
    let zero = Rat::from(0);
    if p1.is_empty() || p2.is_empty() || maps.is_empty() {
        return Err(violated("P1, P2 and S must be nonempty".into()));
    }
    if *c <= zero || *big_c <= zero || rho == 0 {
        return Err(violated("c, C and rho must be positive".into()));
    }
    let n = p1.len().max(p2.len());
    let nr = Rat::from(n as u64);
    for (i, h) in [h1, h2].iter().enumerate() {
        let lhs = pow(&Rat::from(h.len() as u64), 2);
        if lhs > big_c * big_c * &nr {
            return Err(violated(format!(
                "|H{}| = {} exceeds C sqrt(N)",
                i + 1,
                h.len()
            )));
        }
    }
    let arr1 = Arrangement::build(h1.to_vec())?;
    let arr2 = Arrangement::build(h2.to_vec())?;
    let cells1 = locate_distinct(p1, &arr1).map_err(|e| violated(format!("P1 in A(H1): {e}")))?;
    let cells2 = locate_distinct(p2, &arr2).map_err(|e| violated(format!("P2 in A(H2): {e}")))?;
    let delta = build_incidence_triples(p1, p2, maps)?;
    let need = c * &nr;
    for (s, d) in delta.degrees(2) {
        if (d as u64) < need {
            return Err(violated(format!("deg(S_{s}) = {d} < cN = {need}")));
        }
    }
    let s_total = Rat::from(maps.len() as u64);
    let base = &s_total * &nr;
    let c2 = c * c;
    let c4 = &c2 * &c2;
    let mut steps = Vec::new();
    let record = |step: u8, action, d: &TripleSystem, bound: Rat, before: Option<usize>, ball| {
        let factor_ok = before.is_none_or(|b| 4 * d.len() >= b);
        StepRecord {
            step,
            action,
            p1: d.ground(0).len(),
            p2: d.ground(1).len(),
            s: d.ground(2).len(),
            triples: d.len(),
            holds: d.len() as u64 >= bound && factor_ok,
            bound,
            ball_bound: ball,
        }
    };

    let d1 = prune_triple_system(&delta)?;
    steps.push(record(
        1,
        "prune",
        &d1,
        c * &base / Rat::from(4),
        Some(delta.len()),
        None,
    ));

    let filter = |d: &TripleSystem, class: usize, arr: &Arrangement, cells: &[usize]| {
        let ids: Vec<usize> = d.ground(class).iter().copied().collect();
        let cs: Vec<usize> = ids.iter().map(|&i| cells[i]).collect();
        let f = arr.filter_low_ball_cells(&cs, rho)?;
        let keep: BTreeSet<usize> = f.kept_positions.iter().map(|&p| ids[p]).collect();
        Ok::<_, LemmaError>((d.restrict(class, &keep), f.achieved_bound))
    };
    let (d2, b2) = filter(&d1, 0, &arr1, &cells1)?;
    steps.push(record(
        2,
        "filter P1 by ball size",
        &d2,
        &c2 * &base / Rat::from(32),
        None,
        Some(b2),
    ));

    let d3 = prune_triple_system(&d2)?;
    steps.push(record(
        3,
        "prune",
        &d3,
        &c2 * &base / Rat::from(128),
        Some(d2.len()),
        None,
    ));

    let (d4, b4) = filter(&d3, 1, &arr2, &cells2)?;
    steps.push(record(
        4,
        "filter P2 by ball size",
        &d4,
        &c4 * &base / Rat::from(1u64 << 15),
        None,
        Some(b4),
    ));

    let d5 = prune_triple_system(&d4)?;
    steps.push(record(
        5,
        "prune",
        &d5,
        &c4 * &base / Rat::from(1u64 << 17),
        Some(d4.len()),
        None,
    ));

    let c_star = &c4 / Rat::from(1u64 << 16);
    let degs = d5.degrees(2);
    let min_deg = degs.values().copied().min().unwrap_or(0);
    let s_star: Vec<usize> = d5.ground(2).iter().copied().collect();
    let p1_star: Vec<usize> = d5.ground(0).iter().copied().collect();
    let p2_star: Vec<usize> = d5.ground(1).iter().copied().collect();
    let max_ball = p1_star
        .iter()
        .map(|&i| arr1.ball_size(cells1[i], rho))
        .chain(p2_star.iter().map(|&j| arr2.ball_size(cells2[j], rho)))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .max()
        .unwrap_or(0);
    let ratio = |a: usize| Rat::from(a as u64) / &nr;
    let s_ratio = Rat::from(s_star.len() as u64) / &s_total;
    let conclusions = [
        s_ratio >= c_star && !s_star.is_empty(),
        !s_star.is_empty() && ratio(min_deg) >= c_star,
        ratio(p1_star.len()) >= c_star && ratio(p2_star.len()) >= c_star,
    ];
    Ok(AvgForcingReport {
        n,
        lambda: &s_total / &nr,
        c: c.clone(),
        min_degree_ratio: ratio(min_deg),
        p1_ratio: ratio(p1_star.len()),
        p2_ratio: ratio(p2_star.len()),
        ball_constant: Rat::from(max_ball as u64) / Rat::from((rho * rho) as u64),
        c_star,
        s_ratio,
        p1_star,
        p2_star,
        s_star,
        delta_star: d5,
        steps,
        conclusions,
    })
}

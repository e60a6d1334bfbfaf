//! Command implementations behind the `htc` binary.
//!
//! Each command reads its input, computes through the library and assembles
//! a [`Report`]. The binary itself only parses arguments, picks the format
//! and maps errors to exit codes.

use std::collections::BTreeMap;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::algebra::{cup_length, zcl_r_with, GradedRing};
use crate::config::Budget;
use crate::error::{Error, Result};
use crate::genfunc::{
    growth_report, p_at_one_check, parse_sequence_literal, series_to_p, TcSequence,
};
use crate::graph::{gamma_graph, gamma_z_closed_form, parse_graph, raag_invariants_with};
use crate::report::Report;
use crate::sullivan::{
    cat_pure_odd, cohomology_ring_with, cohomology_with, kr_power_vanishes_with, mtc_bounds,
    parse_model, tc_mtc_pure_odd,
};

fn digest(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    hasher.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// Where a graph command takes its graph from.
pub enum GraphSource<'a> {
    File(&'a Path),
    Gamma(usize),
}

pub fn cmd_graph(source: GraphSource, r_max: u32, budget: &Budget) -> Result<Report> {
    let mut report = Report::new("graph");
    let (graph, gamma_n) = match source {
        GraphSource::File(path) => {
            let text = std::fs::read_to_string(path)?;
            report.input("path", path.display());
            report.input("sha256", digest(text.as_bytes()));
            (parse_graph(&text)?, None)
        }
        GraphSource::Gamma(n) => {
            report.input("gamma", n);
            (gamma_graph(n)?, Some(n))
        }
    };
    report.input("r_max", r_max);

    if r_max < 2 {
        return Err(Error::Input(format!("--r-max must be at least 2, got {r_max}")));
    }
    report.result("vertices", graph.vertex_count());
    report.result("edges", graph.edge_count());
    let invariants = raag_invariants_with(&graph, r_max, budget)?;
    report.result("c", invariants.cat);
    for (&r, &z) in &invariants.tc {
        report.result(format!("z_{r}"), z);
    }
    report.result("cat", invariants.cat);
    for (&r, &tc) in &invariants.tc {
        report.result(format!("TC_{r}"), tc);
    }

    if let Some(n) = gamma_n {
        let mut all_match = true;
        for (&r, &z) in &invariants.tc {
            let closed = gamma_z_closed_form(n, r)?;
            report.result(format!("z_{r}_closed_form"), closed);
            if closed != z {
                all_match = false;
                report.finding(format!(
                    "closed form disagrees with the search at r = {r}: {closed} vs {z}"
                ));
            }
        }
        report.result("closed_form_matches_search", all_match);
    }

    describe_generating_function(&mut report, &invariants.tc, invariants.cat, r_max);
    Ok(report)
}

/// Builds the TC sequence from computed values, declaring the tail only
/// after verifying the observed differences settle on cat within range.
fn describe_generating_function(
    report: &mut Report,
    tc: &BTreeMap<u32, usize>,
    cat: usize,
    r_max: u32,
) {
    // term(k) = TC_{k+1} for k = 1 .. r_max−1.
    let terms: Vec<i64> = (2..=r_max).map(|r| tc[&r] as i64).collect();
    let m = terms.len();
    if m < 2 {
        report.finding("not enough TC values to declare a tail; increase --r-max");
        return;
    }
    // Smallest index after which every observed difference equals cat.
    let mut stab = m; // 1-based; m means "unstable through the whole prefix"
    for k in (1..m).rev() {
        if terms[k] - terms[k - 1] == cat as i64 {
            stab = k;
        } else {
            break;
        }
    }
    if stab == m {
        report.finding(format!(
            "differences have not settled on cat = {cat} within r_max = {r_max}; \
             no generating function declared"
        ));
        return;
    }
    let seq = TcSequence::new(terms, cat as i64, stab).expect("tail verified above");
    let p = series_to_p(&seq);
    report.result("P", p.to_string());
    report.result("P_degree", p.degree().map_or("none".into(), |d| d.to_string()));
    report.result("P_at_1", p.eval_at_one());
    report.result("P_at_1_equals_cat", p_at_one_check(&p, cat as i64));
    report.result(
        "tail_note",
        format!("difference {cat} declared from the computed range r <= {r_max}"),
    );
    if let Ok(growth) = growth_report(&seq, cat as i64, 0) {
        for r in growth.instability {
            report.finding(format!(
                "instability: TC_{}−TC_{} exceeds cat = {cat}",
                r + 1,
                r
            ));
        }
    }
}

pub fn cmd_model(
    path: &Path,
    r_max: u32,
    truncate: Option<usize>,
    budget: &Budget,
) -> Result<Report> {
    if r_max < 2 {
        return Err(Error::Input(format!("--r-max must be at least 2, got {r_max}")));
    }
    let mut report = Report::new("model");
    let text = std::fs::read_to_string(path)?;
    report.input("path", path.display());
    report.input("sha256", digest(text.as_bytes()));
    report.input("r_max", r_max);

    let model = parse_model(&text)?;
    let pure_odd = model.is_pure_odd();
    report.result("generators", model.generator_count());
    report.result("pure_odd", pure_odd);
    report.result("minimal", model.is_minimal());

    let truncation = match (truncate, pure_odd) {
        (Some(d), _) => d,
        (None, true) => model.total_degree(),
        (None, false) => {
            return Err(Error::Input(
                "the model has even-degree generators; pass --truncate <D> to pick \
                 the degree range (results then describe degrees <= D)"
                    .into(),
            ))
        }
    };
    report.input("truncation", truncation);

    let cohomology = cohomology_with(&model, truncation, budget)?;
    for d in 0..=truncation {
        if cohomology.dim(d) > 0 {
            report.result(format!("betti_{d}"), cohomology.dim(d));
        }
    }

    let ring = cohomology_ring_with(&model, truncation, budget)?;
    let basis: Vec<String> = ring
        .labels()
        .iter()
        .zip(ring.degrees())
        .map(|(l, d)| format!("{l}:{d}"))
        .collect();
    report.result("ring_basis", basis.join(", "));
    let cup = cup_length(&ring);
    report.result("cup", cup);

    let mut zcl_values: BTreeMap<u32, usize> = BTreeMap::new();
    for r in 2..=r_max {
        let within_cap = ring
            .dim()
            .checked_pow(r)
            .is_some_and(|size| size <= budget.max_tensor_basis);
        if !within_cap {
            report.finding(format!(
                "zcl_{r} skipped: tensor basis {}^{r} exceeds the cap",
                ring.dim()
            ));
            continue;
        }
        let z = zcl_r_with(&ring, r, budget)?;
        zcl_values.insert(r, z);
        report.result(format!("zcl_{r}"), z);
    }

    if pure_odd {
        let cat = cat_pure_odd(&model)?;
        report.result("cat", cat);
        for r in 2..=r_max {
            report.result(format!("TC_{r}"), tc_mtc_pure_odd(&model, r)?);
        }
        for r in 2..=r_max {
            let bounds = mtc_bounds(cat, cup, Some(&zcl_values), r, true)?;
            report.result(
                format!("MTC_{r}"),
                bounds.exact.expect("pure-odd bounds carry the exact value"),
            );
        }
        // Nilpotency certificate for r = 2: the ideal power (dim V)+1 is
        // zero, and the previous power is not (unless the model is trivial).
        let n = cat;
        let vanishes = kr_power_vanishes_with(&model, 2, n, budget)?;
        report.result(
            format!("K_2_power_{}_is_zero", n + 1),
            vanishes,
        );
        if n >= 1 {
            let sharp = !kr_power_vanishes_with(&model, 2, n - 1, budget)?;
            report.result(format!("K_2_power_{n}_is_nonzero"), sharp);
        }
        if !vanishes {
            report.finding(format!(
                "expected K_2^{} = 0 for a pure-odd model with dim V = {n}",
                n + 1
            ));
        }
    } else {
        // cat is not computed for models with even generators, so only the
        // cat-free lower bounds are reported: (r−1)·cup (since cat ≥ cup),
        // zcl_r itself, and zcl_2 + (r−2)·cup.
        for r in 2..=r_max {
            let mut lower = (r as usize - 1) * cup;
            if let Some(&z) = zcl_values.get(&r) {
                lower = lower.max(z);
            }
            if let Some(&z2) = zcl_values.get(&2) {
                lower = lower.max(z2 + (r as usize - 2) * cup);
            }
            report.result(format!("MTC_{r}_lower"), lower);
        }
        report.result(
            "MTC_note",
            "lower bounds only; cat (hence the r·cat upper bound) needs a pure-odd model",
        );
    }
    Ok(report)
}

pub fn cmd_seq(literal: &str, cat: i64, cup: i64) -> Result<Report> {
    let mut report = Report::new("seq");
    report.input("literal", literal);
    report.input("sha256", digest(literal.as_bytes()));
    report.input("cat", cat);
    report.input("cup", cup);

    let seq = parse_sequence_literal(literal)?;
    let p = series_to_p(&seq);
    report.result("P", p.to_string());
    report.result("P_degree", p.degree().map_or("none".into(), |d| d.to_string()));
    report.result("P_at_1", p.eval_at_one());
    report.result("P_at_1_equals_cat", p_at_one_check(&p, cat));

    let growth = growth_report(&seq, cat, cup)?;
    for row in &growth.rows {
        report.result(
            format!("difference_TC_{}_to_TC_{}", row.r, row.r + 1),
            row.difference,
        );
    }
    report.result("stable_difference", growth.stable_difference);
    for r in &growth.instability {
        report.finding(format!("instability: TC_{}−TC_{} = {} exceeds cat = {cat}",
            r + 1, r, seq.term(*r) - seq.term(r - 1)));
    }
    for r in &growth.out_of_band {
        report.finding(format!(
            "difference at r = {r} leaves the band [cup, 2·cat] = [{cup}, {}]",
            2 * cat
        ));
    }
    Ok(report)
}

//! `build` and `verify`, and the text report they print.

use crate::{check_failed, read, table, write, Failure, Outcome};
use anyhow::anyhow;
use ngon_core::format::{tower_from_json, tower_to_json};
use ngon_core::invariant_sets::InvariantSetTable;
use ngon_core::numeric::{default_precision, to_decimal_rounded, word_precision, CosineTable};
use ngon_core::reference::{self, diff_lists, ListDiff};
use ngon_core::splitting::mu_table;
use ngon_core::tower::{
    build_schedule, check_printed_signs, check_stored_values, evaluate_tower, oracle_check, pruning_diffs,
    resolve_signs, unprinted_splits, EvalReport, ScheduleKind, Split, Tower,
};
use std::fmt::Write;
use std::path::Path;

fn bits(x: Option<f64>) -> String {
    match x {
        Some(e) => format!("2^{e:.1}"),
        None => "0".into(),
    }
}

/// One line per step: explicit relations, or for large F steps the offsets
/// whose left child is larger.
pub fn sign_lines(tower: &Tower) -> Vec<String> {
    let mut out = Vec::new();
    for step in 1..=tower.steps() {
        let nodes: Vec<_> = tower.nodes_at(step).collect();
        if nodes.is_empty() {
            continue;
        }
        let all_f = nodes.iter().all(|n| matches!(n.split, Split::F { .. }));
        if all_f && nodes.len() > 4 {
            let Split::F { m, .. } = nodes[0].split else { unreachable!() };
            let (s, h) = (2u32 << m, 1u32 << m);
            let js: Vec<String> = tower.greater_offsets(step).iter().map(|j| j.to_string()).collect();
            out.push(format!(
                "step {step}: F(j,{s}) > F(j+{h},{s}) for j in {{{}}} of {} splits",
                js.join(", "),
                nodes.len()
            ));
        } else {
            let rel: Vec<String> = nodes
                .iter()
                .map(|n| {
                    let op = if n.left_is_larger == Some(true) { ">" } else { "<" };
                    format!("{} {op} {}", n.left, n.right)
                })
                .collect();
            out.push(format!("step {step}: {}", rel.join(", ")));
        }
    }
    out
}

fn list_diff_line(name: &str, ours: &[u32], printed: &[u32], d: &ListDiff) -> String {
    let show = |v: &[u32]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
    if d.is_empty() {
        return format!("{name}: {} computed, matches the printed list", ours.len());
    }
    let mut s = format!("{name}: {} computed, {} printed", ours.len(), printed.len());
    if !d.missing.is_empty() {
        let _ = write!(s, "; printed only: [{}]", show(&d.missing));
    }
    if !d.extra.is_empty() {
        let _ = write!(s, "; computed only: [{}]", show(&d.extra));
    }
    if !d.repeated.is_empty() {
        let _ = write!(s, "; printed twice: [{}]", show(&d.repeated));
    }
    s
}

fn mu_lines(t: &InvariantSetTable) -> anyhow::Result<Vec<String>> {
    let printed: &[(u32, &[i64])] = match t.params.n {
        257 => &[(2, reference::MU_257_4)],
        65537 => &[
            (2, reference::MU_65537_4),
            (3, reference::MU_65537_8),
            (4, reference::MU_65537_16),
            (5, reference::MU_32),
        ],
        _ => &[],
    };
    let mut out = Vec::new();
    for &(m, want) in printed {
        let got = mu_table(m, t)?;
        if got == want {
            out.push(format!("mu(k,{}): matches the printed values", 1u32 << m));
        } else {
            out.push(format!("mu(k,{}): computed {got:?}, printed {want:?}", 1u32 << m));
        }
    }
    Ok(out)
}

/// The section comparing computed orderings, pruning and multiplicities with
/// the printed tables.
pub fn diff_lines(tower: &Tower, t: &InvariantSetTable, cos: &CosineTable) -> anyhow::Result<Vec<String>> {
    let mut out = Vec::new();
    let checks = check_printed_signs(t, cos)?;
    if !checks.is_empty() {
        let agree = checks.iter().filter(|c| c.agrees()).count();
        out.push(format!("printed orderings: {} checked, {agree} agree", checks.len()));
        for c in checks.iter().filter(|c| !c.agrees()) {
            let p = &c.printed;
            let (pl, cl) = (if p.left_larger { ">" } else { "<" }, if c.computed_left_larger { ">" } else { "<" });
            if c.siblings {
                out.push(format!(
                    "  step {}: printed {} {pl} {}, computed {} {cl} {}",
                    p.step, p.left, p.right, p.left, p.right
                ));
            } else {
                out.push(format!(
                    "  step {}: printed {} {pl} {} compares parts that are not split together (computed {} {cl} {})",
                    p.step, p.left, p.right, p.left, p.right
                ));
            }
        }
        for step in 1..=tower.steps() {
            for (l, r) in unprinted_splits(tower, step) {
                let n = tower.nodes_at(step).find(|n| n.left == l).expect("listed node");
                let op = if n.left_is_larger == Some(true) { ">" } else { "<" };
                out.push(format!("  step {step}: no printed ordering for {l} vs {r} (computed {l} {op} {r})"));
            }
        }
    }
    if t.params.n == 257 && tower.kind == ScheduleKind::Pruned {
        for (step, printed) in [(3, reference::STEP3_SPLITS_257), (4, reference::STEP4_SPLITS_257)] {
            let ours: Vec<u32> = tower
                .nodes_at(step)
                .filter_map(|n| match n.split {
                    Split::F { j, .. } => Some(j),
                    Split::G { .. } => None,
                })
                .collect();
            let name = format!("F(j,{}) splits at step {step}", 1u32 << (step - 1));
            out.push(list_diff_line(&name, &ours, printed, &diff_lists(&ours, printed)));
        }
    }
    for (name, ours, d) in pruning_diffs(tower) {
        let printed = match name {
            n if n.contains("required") => reference::REQUIRED_F1024,
            n if n.contains("both") => reference::BOTH_HALVES,
            n if n.contains("> F") => reference::GT_STEP10,
            n if n.contains("step 10") => reference::STEP10_SPLITS,
            _ => reference::STEP11_SPLITS,
        };
        out.push(list_diff_line(name, &ours, printed, &d));
    }
    out.extend(mu_lines(t)?);
    if out.is_empty() {
        out.push("no printed tables for this modulus".into());
    }
    Ok(out)
}

pub fn format_report(tower: &Tower, t: &InvariantSetTable, cos: &CosineTable, ev: &EvalReport) -> anyhow::Result<String> {
    let mut s = String::new();
    let p = &tower.params;
    let _ = writeln!(
        s,
        "n = {}, factor {}, {} schedule, {} bits",
        p.n, tower.factor, tower.kind, tower.precision
    );
    let counts: Vec<String> = tower.step_counts().iter().map(|(_, c)| c.to_string()).collect();
    let _ = writeln!(s, "nodes per step: {} (total {})", counts.join(" "), tower.nodes.len());
    let _ = writeln!(s, "\nsigns");
    for l in sign_lines(tower) {
        let _ = writeln!(s, "  {l}");
    }
    let _ = writeln!(s, "\nreference diff");
    for l in diff_lines(tower, t, cos)? {
        let _ = writeln!(s, "  {l}");
    }
    let _ = writeln!(s, "\nchecks");
    let _ = writeln!(s, "  product expressions: {} exact", tower.nodes.len());
    let _ = writeln!(s, "  worst |value - direct sum|: {}", bits(ev.worst_value_log2));
    let _ = writeln!(s, "  worst Vieta residual: {}", bits(ev.worst_vieta_log2));
    let _ = writeln!(s, "  |p1 - 2cos(2pi/{})|: {}", p.n, bits(ev.p1_error_log2));
    let _ = writeln!(s, "p1 = {}", to_decimal_rounded(&ev.p1, 40));
    let _ = writeln!(s, "p1 verified");
    Ok(s)
}

pub fn build(t: &InvariantSetTable, kind: ScheduleKind, precision: Option<usize>, out: Option<&Path>) -> Outcome {
    let p = word_precision(precision.unwrap_or_else(|| default_precision(t.params.n)));
    let cos = CosineTable::new(t.params.n, p);
    let mut tower = build_schedule(t, kind, p)?;
    resolve_signs(&mut tower, t, &cos).map_err(check_failed)?;
    let ev = evaluate_tower(&mut tower, t, &cos).map_err(check_failed)?;
    oracle_check(&tower, t).map_err(check_failed)?;
    if let Some(path) = out {
        write(path, &tower_to_json(&tower))?;
    }
    print!("{}", format_report(&tower, t, &cos, &ev)?);
    Ok(())
}

pub fn verify(path: &Path, precision: Option<usize>) -> Outcome {
    let stored = tower_from_json(&read(path)?)?;
    let t = table(stored.params, stored.factor)?;
    let n = stored.params.n;
    oracle_check(&stored, &t).map_err(check_failed)?;
    println!("product expressions: {} exact", stored.nodes.len());
    let p = word_precision(precision.unwrap_or(stored.precision));
    let cos = CosineTable::new(n, p.max(stored.precision));
    let mut signed = stored.clone();
    resolve_signs(&mut signed, &t, &cos).map_err(check_failed)?;
    for (a, b) in stored.nodes.iter().zip(&signed.nodes) {
        if a.left_is_larger.is_some() && a.left_is_larger != b.left_is_larger {
            return Err(check_failed(anyhow!("node {}: stored ordering of {} and {} is wrong", a.id, a.left, a.right)));
        }
    }
    println!("orderings: {} agree with direct sums", stored.nodes.len());
    if stored.nodes.iter().all(|x| x.values.is_some()) {
        check_stored_values(&stored, &t, &cos, p).map_err(check_failed)?;
        println!("stored values: Vieta and direct sums agree to {} bits", p.min(stored.precision) / 2);
    }
    let mut fresh = stored.clone();
    fresh.precision = p;
    for x in &mut fresh.nodes {
        x.values = None;
        x.left_is_larger = x.left_is_larger.or(signed.nodes[x.id].left_is_larger);
    }
    let cos_p = CosineTable::new(n, p);
    let ev = evaluate_tower(&mut fresh, &t, &cos_p).map_err(|e| Failure::Check(e.into()))?;
    println!("re-evaluated at {p} bits: |p1 - 2cos(2pi/{n})| = {}", bits(ev.p1_error_log2));
    println!("p1 verified");
    Ok(())
}

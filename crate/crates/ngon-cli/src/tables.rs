//! The `tables` subcommand.

use crate::{report, Failure, TableKind};
use anyhow::anyhow;
use ngon_core::invariant_sets::InvariantSetTable;
use ngon_core::numeric::{default_precision, CosineTable};
use ngon_core::period_algebra::{set_product, set_square};
use ngon_core::reference::{self, PRINTED_G13_257};
use ngon_core::splitting::{k_sets, mu_table};
use ngon_core::tower::{build_schedule, resolve_signs, ScheduleKind};
use std::fmt::Write;

fn join(v: &[u32]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn set_index(t: &InvariantSetTable, k: Option<u32>, flag: &str) -> Result<u32, Failure> {
    let k = k.ok_or_else(|| anyhow!("--{flag} is required"))?;
    if k == 0 || k > t.ng() {
        return Err(anyhow!("set index {k} outside 1..={}", t.ng()).into());
    }
    Ok(k)
}

/// F levels printed by default: all of them, or those with printed values.
fn levels(t: &InvariantSetTable, m: Option<u32>) -> Result<Vec<u32>, Failure> {
    let f = t.params.f_levels();
    match m {
        Some(m) if m >= f => Err(anyhow!("--m must be below {f} for n = {}", t.params.n).into()),
        Some(m) => Ok(vec![m]),
        None => Ok((0..f).collect()),
    }
}

fn printed_mu(n: u32, m: u32) -> Option<&'static [i64]> {
    match (n, m) {
        (257, 2) => Some(reference::MU_257_4),
        (65537, 2) => Some(reference::MU_65537_4),
        (65537, 3) => Some(reference::MU_65537_8),
        (65537, 4) => Some(reference::MU_65537_16),
        (65537, 5) => Some(reference::MU_32),
        _ => None,
    }
}

pub fn render(
    t: &InvariantSetTable,
    kind: TableKind,
    i: Option<u32>,
    j: Option<u32>,
    m: Option<u32>,
    schedule: ScheduleKind,
) -> Result<String, Failure> {
    let mut s = String::new();
    let n = t.params.n;
    match kind {
        TableKind::Sets => {
            let ks: Vec<u32> = match i {
                Some(_) => vec![set_index(t, i, "i")?],
                None => (1..=t.ng()).collect(),
            };
            for k in ks {
                let _ = writeln!(s, "G_{k} = {{{}}}", join(t.set(k)));
                if n == 257 && k == 13 && t.factor == 3 && t.set(13) != PRINTED_G13_257 {
                    let _ = writeln!(s, "  printed as {{{}}}", join(PRINTED_G13_257));
                }
            }
        }
        TableKind::Product => {
            let (a, b) = (set_index(t, i, "i")?, set_index(t, j, "j")?);
            let _ = writeln!(s, "G_{a} * G_{b} = {}", set_product(a, b, t));
        }
        TableKind::Square => {
            let a = set_index(t, i, "i")?;
            let _ = writeln!(s, "G_{a}^2 = {}", set_square(a, t));
        }
        TableKind::Mu => {
            for m in levels(t, m)? {
                let mu = mu_table(m, t)?;
                let size = 1u32 << m;
                for (k, v) in mu.iter().enumerate() {
                    let _ = writeln!(s, "mu({},{size}) = {v}", k + 1);
                }
                if let Some(p) = printed_mu(n, m) {
                    if p == mu.as_slice() {
                        let _ = writeln!(s, "  matches the printed mu(k,{size})");
                    } else {
                        let _ = writeln!(s, "  printed mu(k,{size}) differs: {p:?}");
                    }
                }
            }
        }
        TableKind::Ksets => {
            for m in levels(t, m)? {
                let size = 1u32 << m;
                let ours = k_sets(m, t)?;
                for (v, ks) in &ours {
                    let _ = writeln!(s, "K({v},{size}) = {{{}}}", join(ks));
                }
                if n != 65537 {
                    continue;
                }
                if let Some(printed) = reference::printed_k_sets(m) {
                    // The printed groups start at v = 1.
                    let mut same = ours.keys().filter(|&&v| v > 0).all(|v| printed.iter().any(|(p, _)| p == v));
                    for (v, ks) in printed {
                        if ours.get(v).map_or(&[][..], |o| o.as_slice()) != *ks {
                            same = false;
                            let _ = writeln!(s, "  printed K({v},{size}) = {{{}}}", join(ks));
                        }
                    }
                    if same {
                        let _ = writeln!(s, "  matches the printed K(v,{size}), v >= 1");
                    }
                }
            }
        }
        TableKind::Signs => {
            let p = default_precision(n);
            let cos = CosineTable::new(n, p);
            let mut tower = build_schedule(t, schedule, p)?;
            resolve_signs(&mut tower, t, &cos).map_err(crate::check_failed)?;
            for l in report::sign_lines(&tower) {
                let _ = writeln!(s, "{l}");
            }
        }
    }
    Ok(s)
}

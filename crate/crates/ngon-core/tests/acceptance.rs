//! One line per acceptance criterion. Exits non-zero on any failure that is
//! not listed in `KNOWN`.

use ngon_core::construction::arith::compile_to_arith;
use ngon_core::construction::geom::{execute_geom, lower_to_geom};
use ngon_core::construction::svg::{emit_svg, SvgOptions};
use ngon_core::cyclotomic_oracle::{decompose_into_sets, pv_mul, pv_of_combination, pv_of_set, PeriodVector};
use ngon_core::invariant_sets::{build_invariant_sets, InvariantSetTable};
use ngon_core::numeric::{close, cmp, default_precision, int, pow2, to_decimal_rounded, to_f64, CosineTable, RM};
use ngon_core::period_algebra::{set_product, set_square, shift_combination, SetCombination};
use ngon_core::reference;
use ngon_core::residues::{doubling_orbit, rho, FermatParams};
use ngon_core::splitting::{k_sets, mu_table, pv_of_part, PartRef};
use ngon_core::tower::{
    build_schedule, check_printed_signs, direct_value, evaluate_tower, level_products_direct, mu_via_linear_system,
    oracle_check, resolve_signs, ScheduleKind, Tower,
};
use rand::{rngs::StdRng, Rng, SeedableRng};
use std::cmp::Ordering;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::sync::OnceLock;
use std::time::Instant;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

/// Criteria expected to fail, with the reason printed beside them.
const KNOWN: &[(u32, &str)] = &[
    (5, "two printed n = 65537 orderings contradict direct cosine sums at 512 bits"),
    (
        6,
        "the printed product matches neither the exact value -4096 nor the product of the printed factors",
    ),
];

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn table(n: u32) -> &'static InvariantSetTable {
    static T: [OnceLock<InvariantSetTable>; 5] = [const { OnceLock::new() }; 5];
    let i = [3, 5, 17, 257, 65537].iter().position(|&x| x == n).expect("shipped modulus");
    T[i].get_or_init(|| build_invariant_sets(FermatParams::new(n as u64).unwrap(), 3).unwrap())
}

fn cosines(n: u32) -> &'static CosineTable {
    static C: [OnceLock<CosineTable>; 5] = [const { OnceLock::new() }; 5];
    let i = [3, 5, 17, 257, 65537].iter().position(|&x| x == n).unwrap();
    C[i].get_or_init(|| CosineTable::new(n, default_precision(n)))
}

fn evaluated(n: u32, kind: ScheduleKind) -> Result<Tower, String> {
    let (t, cos) = (table(n), cosines(n));
    let mut tw = build_schedule(t, kind, cos.precision).map_err(|e| e.to_string())?;
    resolve_signs(&mut tw, t, cos).map_err(|e| e.to_string())?;
    evaluate_tower(&mut tw, t, cos).map_err(|e| e.to_string())?;
    Ok(tw)
}

fn combo(ng: u32, constant: i64, terms: &[(u32, i64)]) -> SetCombination {
    let mut c = SetCombination::zero(ng);
    c.constant = constant;
    for &(k, x) in terms {
        c.coeffs[k as usize - 1] += x;
    }
    c
}

fn f(j: u32, s: u32) -> PartRef {
    PartRef::F { j, s }
}

fn oracle_identities() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for (n, a, b, div) in [
        (17, f(1, 2), f(2, 2), 4),
        (257, f(1, 2), f(2, 2), 4),
        (65537, f(1, 2), f(2, 2), 4),
        (257, f(1, 4), f(3, 4), 16),
        (65537, f(1, 4), f(3, 4), 16),
    ] {
        let t = table(n);
        let pa = pv_of_part(&a, t).map_err(|e| e.to_string())?;
        let pb = pv_of_part(&b, t).map_err(|e| e.to_string())?;
        let prod = pv_mul(&pa, &pb, n).map_err(|e| e.to_string())?;
        let want = PeriodVector::total(t.params.np).scaled(((n - 1) / div) as i64);
        ensure!(prod == want, "n = {n}: {a} * {b} is not {}*S", (n - 1) / div);
        checked += 1;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure!(secs <= 60.0, "took {secs:.1} s");
    Ok(format!("{checked} products equal multiples of S exactly ({secs:.1} s)"))
}

fn golden_decompositions() -> Outcome {
    let t = table(257);
    let g1g5 = combo(
        16,
        0,
        &[(2, 2), (3, 1), (4, 1), (6, 1), (7, 2), (8, 2), (9, 1), (10, 1), (11, 1), (13, 1), (14, 1), (16, 2)],
    );
    let g1g9 = combo(
        16,
        0,
        &[(1, 2), (3, 2), (5, 1), (6, 2), (7, 1), (9, 2), (11, 2), (13, 1), (14, 2), (15, 1)],
    );
    let g1sq = combo(16, 16, &[(1, 3), (2, 4), (3, 2), (6, 2), (8, 2), (9, 2)]);
    let big = table(65537);
    let mut sq_terms = vec![(1, 3), (2, 4)];
    for k in [3, 778, 801, 1025, 1100, 1117, 1179, 1264, 1266, 1900, 1956, 1957] {
        sq_terms.push((k, 2));
    }
    let big_sq = combo(2048, 32, &sq_terms);
    let mut terms = vec![];
    for (k, x) in [
        (1, 2), (24, 1), (155, 2), (185, 1), (309, 1), (360, 1), (531, 1),
        (667, 1), (719, 1), (734, 1), (778, 2), (841, 1), (946, 1),
    ] {
        terms.push((k, x));
        terms.push((k + 1024, x));
    }
    let g1g1025 = combo(2048, 0, &terms);
    let cases: [(&str, SetCombination, SetCombination); 5] = [
        ("G1*G5 (257)", set_product(1, 5, t), g1g5),
        ("G1*G9 (257)", set_product(1, 9, t), g1g9),
        ("G1^2 (257)", set_square(1, t), g1sq),
        ("G1^2 (65537)", set_square(1, big), big_sq),
        ("G1*G1025 (65537)", set_product(1, 1025, big), g1g1025),
    ];
    for (name, got, want) in &cases {
        ensure!(got == want, "{name}: computed {got}");
    }
    Ok("G1*G5, G1*G9, G1^2 for 257; G1^2, G1*G1025 for 65537".into())
}

fn mu_tables() -> Outcome {
    let printed: [(u32, u32, &[i64]); 4] = [
        (257, 2, reference::MU_257_4),
        (65537, 2, reference::MU_65537_4),
        (65537, 3, reference::MU_65537_8),
        (65537, 4, reference::MU_65537_16),
    ];
    for (n, m, want) in printed {
        let got = mu_table(m, table(n)).map_err(|e| e.to_string())?;
        ensure!(got == want, "n = {n}, m = {m}: {got:?}");
    }
    let mut levels = 0;
    for n in [17, 257, 65537] {
        let t = table(n);
        for m in 0..t.params.f_levels() {
            let sum: i64 = mu_table(m, t).map_err(|e| e.to_string())?.iter().sum();
            ensure!(sum == ((n - 1) >> (m + 2)) as i64, "n = {n}, m = {m}: sum {sum}");
            levels += 1;
        }
    }
    Ok(format!("4 printed tables match; conservation holds on {levels} levels"))
}

fn k_set_tables() -> Outcome {
    let t = table(65537);
    let mu32 = mu_table(5, t).map_err(|e| e.to_string())?;
    ensure!(mu32 == reference::MU_32, "mu(k,32) = {mu32:?}");
    for m in 6..=9 {
        let ours = k_sets(m, t).map_err(|e| e.to_string())?;
        let printed = reference::printed_k_sets(m).unwrap();
        for (v, ks) in printed {
            let got = ours.get(v).map_or(&[][..], |o| o.as_slice());
            ensure!(got == *ks, "K({v},{}) = {got:?}", 1 << m);
        }
        for (v, ks) in &ours {
            // mu(1,2^m) = 0 for these levels, and zero groups are not listed.
            ensure!(*v == 0 || printed.iter().any(|(p, _)| p == v), "unlisted K({v},{}) = {ks:?}", 1 << m);
        }
    }
    Ok("mu(k,32) and K(v,64) .. K(v,512) match for v >= 1".into())
}

fn sign_reproduction() -> Outcome {
    let mut errata = Vec::new();
    let mut total = 0;
    for n in [257, 65537] {
        let (t, cos) = (table(n), cosines(n));
        let checks = check_printed_signs(t, cos).map_err(|e| e.to_string())?;
        total += checks.len();
        for c in checks.iter().filter(|c| !c.agrees()) {
            let p = &c.printed;
            if !c.siblings {
                ensure!(n == 257 && p.step == 4, "unexpected non-sibling relation {} / {}", p.left, p.right);
                continue;
            }
            let l = to_f64(&direct_value(&p.left, t, cos).map_err(|e| e.to_string())?);
            let r = to_f64(&direct_value(&p.right, t, cos).map_err(|e| e.to_string())?);
            errata.push(format!("n = {n} step {}: {} = {l:.2}, {} = {r:.2}", p.step, p.left, p.right));
        }
    }
    // The non-sibling n = 257 step-4 relation is reported by `build`.
    let anomaly = check_printed_signs(table(257), cosines(257))
        .map_err(|e| e.to_string())?
        .iter()
        .filter(|c| !c.siblings)
        .count();
    ensure!(anomaly == 1, "expected the single step-4 non-sibling relation, found {anomaly}");
    ensure!(
        errata.is_empty(),
        "{} of {total} printed orderings disagree: {}",
        errata.len(),
        errata.join("; ")
    );
    Ok(format!("{total} printed orderings reproduced"))
}

fn numeric_approximations() -> Outcome {
    let (t, cos) = (table(65537), cosines(65537));
    let p = cos.precision;
    let places = |s: &str| s.split_once('.').map_or(0, |(_, f)| f.len());
    let mut shown = Vec::new();
    for (part, printed) in reference::APPROX_65537 {
        let v = direct_value(&part.parse().unwrap(), t, cos).map_err(|e| e.to_string())?;
        let got = to_decimal_rounded(&v, places(printed));
        ensure!(got == *printed, "{part}: {got}, printed {printed}");
        shown.push(format!("{part} = {got}"));
    }
    let a = direct_value(&f(1, 4), t, cos).map_err(|e| e.to_string())?;
    let b = direct_value(&f(3, 4), t, cos).map_err(|e| e.to_string())?;
    let printed = reference::APPROX_65537_PRODUCT;
    let digits = places(printed);
    let exact = to_decimal_rounded(&a.mul(&b, p, RM), digits);
    // The product of the factors as printed, for comparison.
    let rounded = |x: &astro_float::BigFloat, d: usize| to_decimal_rounded(x, d).parse::<f64>().unwrap();
    let of_printed = rounded(&a, 5) * rounded(&b, 4);
    ensure!(
        exact == printed,
        "{}; F(1,4)*F(3,4) = {exact}, product of the printed factors {of_printed:.7}, printed {printed}",
        shown.join(", ")
    );
    Ok(format!("{}, product {exact}", shown.join(", ")))
}

fn tower_verification() -> Outcome {
    let mut lines = Vec::new();
    for n in [3, 5, 17, 257, 65537] {
        let kinds: &[ScheduleKind] = if n == 65537 {
            &[ScheduleKind::Pruned]
        } else {
            &[ScheduleKind::Pruned, ScheduleKind::Full]
        };
        for &kind in kinds {
            let start = Instant::now();
            let tw = evaluated(n, kind)?;
            oracle_check(&tw, table(n)).map_err(|e| format!("n = {n}: {e}"))?;
            let secs = start.elapsed().as_secs_f64();
            let p = tw.precision;
            let p1 = tw.p1().map_err(|e| e.to_string())?;
            let exact = cosines(n).pair(1);
            ensure!(close(&p1, exact, -((p / 2) as i64), p), "n = {n} {kind}: p1 is off");
            let limit = if n == 65537 { 600.0 } else { 5.0 };
            ensure!(secs < limit, "n = {n} {kind}: {secs:.1} s");
            if kind == ScheduleKind::Pruned {
                lines.push(format!("{n}: {} bits {secs:.1} s", p));
            }
        }
    }
    Ok(lines.join(", "))
}

fn heptadecagon_closed_forms() -> Outcome {
    let tw = evaluated(17, ScheduleKind::Pruned)?;
    let p = tw.precision;
    let vals = tw.values();
    let get = |s: &str| vals.get(&s.parse::<PartRef>().unwrap()).cloned().ok_or(format!("{s} missing"));
    let (g1, big_p1, big_p2, p1) = (get("G1(1,1)")?, get("G1(1,2)")?, get("G1(2,2)")?, get("p1")?);
    let tol = -((p - 8) as i64);
    let two = int(2, p);
    let g1_closed = int(17, p).sqrt(p, RM).sub(&int(1, p), p, RM).div(&two, p, RM);
    ensure!(close(&g1, &g1_closed, tol, p), "G1 != (-1+sqrt 17)/2");
    let quad = g1.mul(&g1, p, RM).add(&g1, p, RM).sub(&int(4, p), p, RM);
    ensure!(close(&quad, &int(0, p), tol, p), "G1 is not a root of x^2+x-4");
    ensure!(close(&big_p1.mul(&big_p2, p, RM), &int(-1, p), tol, p), "P1*P2 != -1");
    let disc = two
        .mul(&big_p2, p, RM)
        .sub(&big_p1.mul(&big_p1, p, RM), p, RM)
        .add(&int(8, p), p, RM);
    let p1_closed = big_p1.add(&disc.sqrt(p, RM), p, RM).div(&two, p, RM);
    ensure!(close(&p1, &p1_closed, tol, p), "p1 closed form");
    ensure!(close(&p1, cosines(17).pair(1), tol, p), "p1 != 2cos(2pi/17)");
    Ok(format!("agree to 2^{tol} at {p} bits"))
}

fn check_product(i: u32, j: u32, t: &InvariantSetTable) -> Result<(), String> {
    let c = set_product(i, j, t);
    let len = t.params.orbit_len as i64;
    if i == j {
        ensure!(c.constant == len && c.coeff_sum() == len - 1, "G{i}^2 tallies");
    } else {
        ensure!(c.constant == 0 && c.coeff_sum() == len, "G{i}*G{j} tallies");
    }
    let direct = pv_mul(&pv_of_set(i, t), &pv_of_set(j, t), t.params.n).map_err(|e| e.to_string())?;
    ensure!(pv_of_combination(&c, t) == direct, "G{i}*G{j} disagrees with the oracle");
    ensure!(decompose_into_sets(&direct, t).map_err(|e| e.to_string())? == c, "G{i}*G{j} decomposition");
    Ok(())
}

fn check_orbit(n: u32, s: u32, len: u32) -> Result<(), String> {
    let orbit = doubling_orbit(s as u64, n).map_err(|e| e.to_string())?;
    ensure!(orbit.len() as u32 == len, "orbit of {s} has length {}", orbit.len());
    let half = orbit.len() / 2;
    for m in 0..half {
        ensure!((orbit[m] + orbit[half + m]) % n == 0, "orbit of {s} is not inverse-paired");
    }
    Ok(())
}

fn check_partition(t: &InvariantSetTable) -> Result<(), String> {
    let mut seen = vec![false; t.params.np as usize + 1];
    for set in t.sets() {
        for &p in set {
            ensure!(!seen[p as usize], "pair {p} in two sets");
            seen[p as usize] = true;
        }
    }
    ensure!(seen[1..].iter().all(|&x| x), "sets miss a pair");
    ensure!(t.sets().count() as u32 == t.ng(), "set count");
    Ok(())
}

fn check_shift(i: u32, j: u32, s: u32, t: &InvariantSetTable) -> Result<(), String> {
    let ng = t.ng();
    let lhs = set_product(rho(i + s, ng), rho(j + s, ng), t);
    ensure!(lhs == shift_combination(&set_product(i, j, t), s, t), "shift {s} of G{i}*G{j}");
    Ok(())
}

fn property_suites() -> Outcome {
    let mut cases = 0;
    for n in [17, 257] {
        let t = table(n);
        check_partition(t)?;
        for s in 1..n {
            check_orbit(n, s, t.params.orbit_len)?;
        }
        for i in 1..=t.ng() {
            for j in 1..=t.ng() {
                check_product(i, j, t)?;
                for s in 0..t.ng() {
                    check_shift(i, j, s, t)?;
                }
                cases += 1;
            }
        }
    }
    let t = table(65537);
    check_partition(t)?;
    let mut rng = StdRng::seed_from_u64(65537);
    for _ in 0..32 {
        let (i, j, s) = (rng.gen_range(1..=2048), rng.gen_range(1..=2048), rng.gen_range(0..4096));
        check_orbit(65537, rng.gen_range(1..65537), t.params.orbit_len)?;
        check_product(i, j, t)?;
        check_shift(i, j, s, t)?;
        cases += 1;
    }
    Ok(format!("{cases} pair cases: orbits, partition, decomposability, shift"))
}

fn construction_pipeline() -> Outcome {
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let mut notes = Vec::new();
    for (n, file) in [(17, "heptadecagon.svg"), (257, "257-gon.svg")] {
        let tw = evaluated(n, ScheduleKind::Pruned)?;
        let prog = compile_to_arith(&tw).map_err(|e| e.to_string())?;
        let g = lower_to_geom(&prog, tw.precision, true).map_err(|e| e.to_string())?;
        let r = execute_geom(&g, tw.precision, None).map_err(|e| e.to_string())?;
        let p = r.precision;
        let half = -((tw.precision / 2) as i64);
        let closure = r.closure_error.clone().ok_or("no closure measured")?;
        ensure!(cmp(&closure.abs(), &pow2(half, p)) == Ordering::Less, "n = {n}: polygon does not close");
        if n == 17 {
            let c = cosines(17).pair(1).div(&int(2, p), p, RM);
            let s = int(1, p).sub(&c.mul(&c, p, RM), p, RM).sqrt(p, RM);
            let v = r.point(g.outputs.vertex);
            ensure!(close(&v.x, &c, half, p) && close(&v.y, &s, half, p), "vertex 1 is off");
        }
        let poly = r.polygon(g.outputs.polygon.unwrap());
        let pts: Vec<(f64, f64)> = poly.iter().map(|q| (to_f64(&q.x), to_f64(&q.y))).collect();
        for (k, &(x, y)) in pts.iter().enumerate() {
            let a = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            ensure!((x - a.cos()).abs() < 1e-12 && (y - a.sin()).abs() < 1e-12, "n = {n}: vertex {k}");
        }
        let svg = emit_svg(n, &pts, &SvgOptions::default());
        let want = std::fs::read_to_string(golden.join(file)).map_err(|e| format!("{file}: {e}"))?;
        ensure!(svg == want, "{file} differs from the drawing");
        notes.push(format!("{n}: {} ops", g.ops.len()));
    }
    Ok(format!("vertex, closure and SVG goldens ({})", notes.join(", ")))
}

fn mu_recovery() -> Outcome {
    let mut done = Vec::new();
    for (n, ms) in [(257, &[2u32, 3][..]), (65537, &[2, 3, 4][..])] {
        let (t, cos) = (table(n), cosines(n));
        for &m in ms {
            let (level, prods) = level_products_direct(m, t, cos).map_err(|e| e.to_string())?;
            let got = mu_via_linear_system(&level, &prods).map_err(|e| e.to_string())?;
            let want = mu_table(m, t).map_err(|e| e.to_string())?;
            ensure!(got == want, "n = {n}, m = {m}: {got:?} vs {want:?}");
            done.push(format!("{n}/m={m}"));
        }
    }
    Ok(done.join(", "))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("exact oracle identities", oracle_identities),
        ("golden decompositions", golden_decompositions),
        ("mu tables and conservation", mu_tables),
        ("K-set tables", k_set_tables),
        ("sign reproduction", sign_reproduction),
        ("numeric approximations", numeric_approximations),
        ("end-to-end tower verification", tower_verification),
        ("17-gon closed forms", heptadecagon_closed_forms),
        ("property suites", property_suites),
        ("construction pipeline", construction_pipeline),
        ("mu via linear systems", mu_recovery),
    ];
    let mut unexpected = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let id = i as u32 + 1;
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panic: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {id:>2} PASS  {name}: {detail}"),
            Err(why) => {
                let known = KNOWN.iter().find(|(k, _)| *k == id);
                println!("criterion {id:>2} FAIL  {name}: {why}");
                match known {
                    Some((_, reason)) => println!("              known failure: {reason}"),
                    None => unexpected += 1,
                }
            }
        }
    }
    if unexpected > 0 {
        std::process::exit(1);
    }
}

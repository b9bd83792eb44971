//! The quadratic-equation tower: schedules, numeric sign resolution,
//! top-down evaluation and verification.

use crate::invariant_sets::InvariantSetTable;
use crate::numeric::{close, cmp, int, pow2, to_f64, word_precision, CosineTable, RM};
use crate::reference::{self, diff_lists, ListDiff, PrintedSign};
use crate::residues::{rho, FermatParams};
use crate::splitting::{
    canonical, f_children, f_split_product_folded, g_children, g_split_product, mode, mu_table,
    oracle_holds, pair_members, LinearCombo, PartRef, SplitError,
};
use astro_float::BigFloat;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TowerError {
    #[error(transparent)]
    Split(#[from] SplitError),
    #[error("node {node}: children differ by less than 2^-{bits}; raise the precision")]
    SignAmbiguous { node: usize, bits: usize },
    #[error("node {node} has no sign; resolve signs first")]
    Unsigned { node: usize },
    #[error("node {node}: negative discriminant")]
    NegativeDiscriminant { node: usize },
    #[error("node {node}: {part} evaluates to {computed}, direct sum gives {expected}")]
    VerificationFailure {
        node: usize,
        part: String,
        expected: f64,
        computed: f64,
    },
    #[error("node {node}: Vieta residual too large")]
    VietaResidual { node: usize },
    #[error("node {node}: value of {part} is not available")]
    MissingValue { node: usize, part: String },
    #[error("node {node}: product expression disagrees with the exact product")]
    OracleMismatch { node: usize },
    #[error("linear system is singular")]
    Singular,
    #[error("component {index} is {value}, not an integer")]
    NonIntegralSolution { index: usize, value: f64 },
    #[error("the tower has no node producing p1")]
    NoP1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScheduleKind {
    Full,
    Pruned,
}

impl std::str::FromStr for ScheduleKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "full" => Ok(ScheduleKind::Full),
            "pruned" => Ok(ScheduleKind::Pruned),
            _ => Err(format!("unknown schedule {s:?}")),
        }
    }
}

impl fmt::Display for ScheduleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScheduleKind::Full => "full",
            ScheduleKind::Pruned => "pruned",
        })
    }
}

/// Which split a node performs; `m` is the parent level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Split {
    F { j: u32, m: u32 },
    G { k: u32, s: u32, m: u32 },
}

impl Split {
    /// Step number: F levels first, then G levels.
    pub fn step(&self, params: &FermatParams) -> u32 {
        match *self {
            Split::F { m, .. } => m + 1,
            Split::G { m, .. } => params.f_levels() + m + 1,
        }
    }

    pub fn parent(&self) -> PartRef {
        match *self {
            Split::F { j, m } => PartRef::F { j, s: 1 << m },
            Split::G { k, s, m } => PartRef::G { k, j: s, s: 1 << m },
        }
    }

    pub fn children(&self) -> (PartRef, PartRef) {
        match *self {
            Split::F { j, m } => f_children(j, m),
            Split::G { k, s, m } => g_children(k, s, m),
        }
    }
}

/// One quadratic `x^2 - parent*x + product = 0` whose roots are `left` and `right`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticNode {
    pub id: usize,
    pub step: u32,
    pub split: Split,
    pub parent: PartRef,
    pub left: PartRef,
    pub right: PartRef,
    pub product: LinearCombo,
    pub left_is_larger: Option<bool>,
    /// `|left - right|` from the direct sums, as a double.
    pub margin: Option<f64>,
    pub values: Option<(BigFloat, BigFloat)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Tower {
    pub params: FermatParams,
    pub factor: u64,
    pub kind: ScheduleKind,
    /// Mantissa bits, a multiple of 64.
    pub precision: usize,
    pub nodes: Vec<QuadraticNode>,
}

impl Tower {
    pub fn steps(&self) -> u32 {
        (1u32 << self.params.nu) - 1
    }

    pub fn nodes_at(&self, step: u32) -> impl Iterator<Item = &QuadraticNode> {
        self.nodes.iter().filter(move |n| n.step == step)
    }

    pub fn step_counts(&self) -> Vec<(u32, usize)> {
        (1..=self.steps()).map(|s| (s, self.nodes_at(s).count())).collect()
    }

    /// Evaluated values of every part the tower produces, plus `S = -1`.
    pub fn values(&self) -> HashMap<PartRef, BigFloat> {
        let mut out = HashMap::new();
        out.insert(PartRef::S, int(-1, self.precision));
        for node in &self.nodes {
            if let Some((l, r)) = &node.values {
                out.insert(node.left, l.clone());
                out.insert(node.right, r.clone());
            }
        }
        out
    }

    /// The evaluated `p1 = 2cos(2pi/n)`.
    pub fn p1(&self) -> Result<BigFloat, TowerError> {
        if self.params.np == 1 {
            return Ok(int(-1, self.precision));
        }
        let target = PartRef::Pair(1);
        for node in &self.nodes {
            if let Some((l, r)) = &node.values {
                if node.left == target {
                    return Ok(l.clone());
                }
                if node.right == target {
                    return Ok(r.clone());
                }
            }
        }
        Err(TowerError::NoP1)
    }

    /// Offsets `j` of the F-splits at a step whose left child is larger.
    pub fn greater_offsets(&self, step: u32) -> Vec<u32> {
        self.nodes_at(step)
            .filter_map(|n| match n.split {
                Split::F { j, .. } if n.left_is_larger == Some(true) => Some(j),
                _ => None,
            })
            .collect()
    }
}

fn all_splits(params: &FermatParams) -> Vec<Split> {
    let mut out = Vec::new();
    for m in 0..params.f_levels() {
        out.extend((1..=1u32 << m).map(|j| Split::F { j, m }));
    }
    for m in 0..params.nu {
        for k in 1..=params.ng {
            out.extend((1..=1u32 << m).map(|s| Split::G { k, s, m }));
        }
    }
    out
}

fn make_node(
    split: Split,
    product: LinearCombo,
    table: &InvariantSetTable,
) -> Result<QuadraticNode, TowerError> {
    let (l, r) = split.children();
    Ok(QuadraticNode {
        id: 0,
        step: split.step(&table.params),
        split,
        parent: canonical(&split.parent(), table)?,
        left: canonical(&l, table)?,
        right: canonical(&r, table)?,
        product: product.canonicalized(table)?,
        left_is_larger: None,
        margin: None,
        values: None,
    })
}

/// Builds the unevaluated tower.
///
/// The pruned schedule is the backward dependency closure of `p1`. At each
/// F level the multiple of `S` folded into every product is chosen to keep
/// the set of referenced parts small.
pub fn build_schedule(
    table: &InvariantSetTable,
    kind: ScheduleKind,
    precision: usize,
) -> Result<Tower, TowerError> {
    let params = table.params;
    let mut mus: HashMap<u32, Vec<i64>> = HashMap::new();
    for m in 0..params.f_levels() {
        mus.insert(m, mu_table(m, table)?);
    }
    let splits = all_splits(&params);
    let mut nodes = match kind {
        ScheduleKind::Full => splits
            .iter()
            .map(|&sp| {
                let product = match sp {
                    Split::F { j, m } => {
                        let mu = &mus[&m];
                        f_split_product_folded(j, m, mode(mu), mu)?
                    }
                    Split::G { k, s, m } => g_split_product(k, s, m, table)?,
                };
                make_node(sp, product, table)
            })
            .collect::<Result<Vec<_>, _>>()?,
        ScheduleKind::Pruned => pruned_nodes(table, &splits, &mus)?,
    };
    nodes.sort_by_key(|n| (n.step, n.split));
    for (i, n) in nodes.iter_mut().enumerate() {
        n.id = i;
    }
    Ok(Tower {
        params,
        factor: table.factor,
        kind,
        precision: word_precision(precision),
        nodes,
    })
}

fn pruned_nodes(
    table: &InvariantSetTable,
    splits: &[Split],
    mus: &HashMap<u32, Vec<i64>>,
) -> Result<Vec<QuadraticNode>, TowerError> {
    let params = table.params;
    let mut needed: HashSet<PartRef> = HashSet::new();
    if params.np > 1 {
        needed.insert(PartRef::Pair(1));
    }
    let mut out = Vec::new();
    for step in (1..=(1u32 << params.nu) - 1).rev() {
        let mut chosen = Vec::new();
        for &sp in splits.iter().filter(|s| s.step(&params) == step) {
            let (l, r) = sp.children();
            if needed.contains(&canonical(&l, table)?) || needed.contains(&canonical(&r, table)?) {
                chosen.push(sp);
            }
        }
        let parents: Vec<PartRef> = chosen
            .iter()
            .map(|s| canonical(&s.parent(), table))
            .collect::<Result<_, _>>()?;
        needed.extend(parents.iter().copied().filter(|p| !p.is_root()));
        let products: Vec<LinearCombo> = match chosen.first() {
            Some(Split::F { m, .. }) => {
                let m = *m;
                let offsets: Vec<u32> = chosen
                    .iter()
                    .map(|s| match s {
                        Split::F { j, .. } => *j,
                        Split::G { .. } => unreachable!("one kind per step"),
                    })
                    .collect();
                let folds = choose_folds(m, &offsets, &mus[&m], &needed, table)?;
                offsets
                    .iter()
                    .zip(folds)
                    .map(|(&j, c)| f_split_product_folded(j, m, c, &mus[&m]))
                    .collect::<Result<_, _>>()?
            }
            _ => chosen
                .iter()
                .map(|s| match *s {
                    Split::G { k, s, m } => g_split_product(k, s, m, table),
                    Split::F { .. } => unreachable!("one kind per step"),
                })
                .collect::<Result<_, _>>()?,
        };
        for (sp, product) in chosen.into_iter().zip(products) {
            let node = make_node(sp, product, table)?;
            needed.extend(node.product.parts().copied());
            out.push(node);
        }
    }
    Ok(out)
}

/// Coordinate descent over the fold of each F-split at level `m`, minimizing
/// the number of level-`m` parts referenced beyond those already needed.
fn choose_folds(
    m: u32,
    offsets: &[u32],
    mu: &[i64],
    anchored: &HashSet<PartRef>,
    table: &InvariantSetTable,
) -> Result<Vec<i64>, TowerError> {
    let stride = 1u32 << m;
    // Part index touched by coefficient k of node j: rho(k + j - 1, stride) - 1.
    let idx = |k: usize, j: u32| (rho(k as u32 + j, stride) - 1) as usize;
    let mut free = vec![true; stride as usize];
    for (k, f) in free.iter_mut().enumerate() {
        let p = canonical(&PartRef::F { j: k as u32 + 1, s: stride }, table)?;
        *f = !(p.is_root() || anchored.contains(&p));
    }
    let values: BTreeSet<i64> = mu.iter().copied().collect();
    let mut folds = vec![mode(mu); offsets.len()];
    let mut count = vec![0usize; stride as usize];
    let touch = |count: &mut Vec<usize>, j: u32, c: i64, add: bool| {
        for (k, &v) in mu.iter().enumerate() {
            if v != c {
                let i = idx(k, j);
                if add {
                    count[i] += 1;
                } else {
                    count[i] -= 1;
                }
            }
        }
    };
    for (&j, &c) in offsets.iter().zip(&folds) {
        touch(&mut count, j, c, true);
    }
    for _ in 0..32 {
        let mut changed = false;
        for (i, &j) in offsets.iter().enumerate() {
            touch(&mut count, j, folds[i], false);
            let cost = |c: i64| {
                mu.iter()
                    .enumerate()
                    .filter(|&(k, &v)| v != c && free[idx(k, j)] && count[idx(k, j)] == 0)
                    .count()
            };
            let mut best = folds[i];
            let mut best_cost = cost(best);
            for &c in &values {
                let x = cost(c);
                if x < best_cost {
                    best = c;
                    best_cost = x;
                }
            }
            if best != folds[i] {
                folds[i] = best;
                changed = true;
            }
            touch(&mut count, j, folds[i], true);
        }
        if !changed {
            break;
        }
    }
    Ok(folds)
}

/// Direct value of a part from the cosine table.
pub fn direct_value(p: &PartRef, table: &InvariantSetTable, cos: &CosineTable) -> Result<BigFloat, TowerError> {
    if p.is_root() {
        return Ok(int(-1, cos.precision));
    }
    Ok(cos.sum(pair_members(p, table)?))
}

/// Sets every node's `left_is_larger` from direct cosine sums.
pub fn resolve_signs(
    tower: &mut Tower,
    table: &InvariantSetTable,
    cos: &CosineTable,
) -> Result<(), TowerError> {
    let bits = tower.precision / 4;
    let p = cos.precision;
    let floor = pow2(-(bits as i64), p);
    for node in &mut tower.nodes {
        let l = direct_value(&node.left, table, cos)?;
        let r = direct_value(&node.right, table, cos)?;
        let d = l.sub(&r, p, RM);
        if cmp(&d.abs(), &floor) == Ordering::Less {
            return Err(TowerError::SignAmbiguous { node: node.id, bits });
        }
        node.left_is_larger = Some(cmp(&d, &int(0, p)) == Ordering::Greater);
        node.margin = Some(to_f64(&d.abs()));
    }
    Ok(())
}

/// Numeric value of a product expression.
pub fn eval_combo(
    c: &LinearCombo,
    values: &HashMap<PartRef, BigFloat>,
    p: usize,
) -> Result<BigFloat, PartRef> {
    let half = |h: crate::splitting::Half| int(h.0, p).div(&int(2, p), p, RM);
    let get = |q: &PartRef| values.get(q).ok_or(*q);
    let mut acc = half(c.constant);
    for (h, q) in &c.linear {
        acc = acc.add(&half(*h).mul(get(q)?, p, RM), p, RM);
    }
    for (h, q) in &c.squares {
        let v = get(q)?;
        acc = acc.add(&half(*h).mul(&v.mul(v, p, RM), p, RM), p, RM);
    }
    Ok(acc)
}

/// Summary of a successful evaluation.
#[derive(Debug, Clone)]
pub struct EvalReport {
    pub p1: BigFloat,
    /// `log2 |p1 - 2cos(2pi/n)|`, or `None` when exactly zero.
    pub p1_error_log2: Option<f64>,
    /// Worst `log2 |value - direct sum|` over all produced parts.
    pub worst_value_log2: Option<f64>,
    /// Worst Vieta residual, `log2`.
    pub worst_vieta_log2: Option<f64>,
}

fn log2_abs(x: &BigFloat) -> Option<f64> {
    if x.is_zero() {
        None
    } else {
        let e = x.exponent().unwrap_or(0) as f64;
        let m = to_f64(x).abs() / 2f64.powf(e);
        Some(e + m.log2())
    }
}

fn worse(a: Option<f64>, b: Option<f64>) -> Option<f64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Evaluates the tower top-down with the recorded signs and checks every
/// value against its direct cosine sum.
pub fn evaluate_tower(
    tower: &mut Tower,
    table: &InvariantSetTable,
    cos: &CosineTable,
) -> Result<EvalReport, TowerError> {
    let prec = tower.precision;
    let wp = prec + 64;
    let tol_e = -((prec / 2) as i64);
    let mut vals: HashMap<PartRef, BigFloat> = HashMap::new();
    vals.insert(PartRef::S, int(-1, wp));
    let mut worst_value = None;
    let mut worst_vieta = None;
    for node in &mut tower.nodes {
        let larger = node.left_is_larger.ok_or(TowerError::Unsigned { node: node.id })?;
        let missing = |q: PartRef| TowerError::MissingValue {
            node: node.id,
            part: q.to_string(),
        };
        let sum = vals.get(&node.parent).cloned().ok_or_else(|| missing(node.parent))?;
        let prod = eval_combo(&node.product, &vals, wp).map_err(missing)?;
        let disc = sum.mul(&sum, wp, RM).sub(&prod.mul(&int(4, wp), wp, RM), wp, RM);
        if disc.is_negative() {
            return Err(TowerError::NegativeDiscriminant { node: node.id });
        }
        let root = disc.sqrt(wp, RM);
        let two = int(2, wp);
        let big = sum.add(&root, wp, RM).div(&two, wp, RM);
        let small = sum.sub(&root, wp, RM).div(&two, wp, RM);
        let (l, r) = if larger { (big, small) } else { (small, big) };
        for (part, v) in [(node.left, &l), (node.right, &r)] {
            let d = direct_value(&part, table, cos)?;
            let err = v.sub(&d, wp, RM).abs();
            worst_value = worse(worst_value, log2_abs(&err));
            if !close(v, &d, tol_e, wp) {
                return Err(TowerError::VerificationFailure {
                    node: node.id,
                    part: part.to_string(),
                    expected: to_f64(&d),
                    computed: to_f64(v),
                });
            }
        }
        let rs = l.add(&r, wp, RM).sub(&sum, wp, RM).abs();
        let rp = l.mul(&r, wp, RM).sub(&prod, wp, RM).abs();
        worst_vieta = worse(worst_vieta, worse(log2_abs(&rs), log2_abs(&rp)));
        let limit = pow2(tol_e, wp);
        if cmp(&rs, &limit) != Ordering::Less || cmp(&rp, &limit) != Ordering::Less {
            return Err(TowerError::VietaResidual { node: node.id });
        }
        let store = |v: &BigFloat| {
            let mut x = v.clone();
            x.set_precision(prec, RM).expect("precision change");
            x
        };
        node.values = Some((store(&l), store(&r)));
        vals.insert(node.left, l);
        vals.insert(node.right, r);
    }
    let p1 = tower.p1()?;
    let exact = cos.pair(1).clone();
    let err = p1.sub(&exact, wp, RM).abs();
    if !close(&p1, &exact, tol_e, wp) {
        return Err(TowerError::VerificationFailure {
            node: tower.nodes.len().saturating_sub(1),
            part: "p1".into(),
            expected: to_f64(&exact),
            computed: to_f64(&p1),
        });
    }
    Ok(EvalReport {
        p1,
        p1_error_log2: log2_abs(&err),
        worst_value_log2: worst_value,
        worst_vieta_log2: worst_vieta,
    })
}

/// Exact check of every product expression with the pair oracle.
pub fn oracle_check(tower: &Tower, table: &InvariantSetTable) -> Result<(), TowerError> {
    for node in &tower.nodes {
        if !oracle_holds(&node.left, &node.right, &node.product, table)? {
            return Err(TowerError::OracleMismatch { node: node.id });
        }
    }
    Ok(())
}

/// Checks the stored values of an evaluated tower: Vieta residuals against
/// the stored parents and products, and agreement with direct sums.
pub fn check_stored_values(
    tower: &Tower,
    table: &InvariantSetTable,
    cos: &CosineTable,
    precision: usize,
) -> Result<(), TowerError> {
    let p = word_precision(precision).min(tower.precision);
    let wp = p + 64;
    let tol_e = -((p / 2) as i64);
    let vals = tower.values();
    for node in &tower.nodes {
        let (l, r) = node.values.as_ref().ok_or(TowerError::Unsigned { node: node.id })?;
        let missing = |q: PartRef| TowerError::MissingValue {
            node: node.id,
            part: q.to_string(),
        };
        let sum = vals.get(&node.parent).ok_or_else(|| missing(node.parent))?;
        let prod = eval_combo(&node.product, &vals, wp).map_err(missing)?;
        let limit = pow2(tol_e, wp);
        let rs = l.add(r, wp, RM).sub(sum, wp, RM).abs();
        let rp = l.mul(r, wp, RM).sub(&prod, wp, RM).abs();
        if cmp(&rs, &limit) != Ordering::Less || cmp(&rp, &limit) != Ordering::Less {
            return Err(TowerError::VietaResidual { node: node.id });
        }
        for (part, v) in [(node.left, l), (node.right, r)] {
            let d = direct_value(&part, table, cos)?;
            if !close(v, &d, tol_e, wp) {
                return Err(TowerError::VerificationFailure {
                    node: node.id,
                    part: part.to_string(),
                    expected: to_f64(&d),
                    computed: to_f64(v),
                });
            }
        }
    }
    Ok(())
}

/// Level-`m` values `F(k,2^m)` and the products of the children of each
/// `F(j,2^m)`, all from direct cosine sums.
pub fn level_products_direct(
    m: u32,
    table: &InvariantSetTable,
    cos: &CosineTable,
) -> Result<(Vec<BigFloat>, Vec<BigFloat>), TowerError> {
    let p = cos.precision;
    let stride = 1u32 << m;
    let mut level = Vec::with_capacity(stride as usize);
    let mut prods = Vec::with_capacity(stride as usize);
    for j in 1..=stride {
        level.push(direct_value(&PartRef::F { j, s: stride }, table, cos)?);
        let (a, b) = f_children(j, m);
        let a = direct_value(&canonical(&a, table)?, table, cos)?;
        let b = direct_value(&canonical(&b, table)?, table, cos)?;
        prods.push(a.mul(&b, p, RM));
    }
    Ok((level, prods))
}

/// Recovers `mu(k,2^m)` from numeric values by solving the circulant system
/// `sum_k mu_k F(rho(k+j-1,2^m)) = product_j`.
pub fn mu_via_linear_system(level: &[BigFloat], products: &[BigFloat]) -> Result<Vec<i64>, TowerError> {
    let n = level.len();
    assert_eq!(n, products.len(), "one product per part");
    let p = level.first().map(|x| x.precision().unwrap_or(128)).unwrap_or(128);
    let mut a: Vec<Vec<BigFloat>> = (0..n)
        .map(|j| {
            let mut row: Vec<BigFloat> = (0..n).map(|k| level[(k + j) % n].clone()).collect();
            row.push(products[j].clone());
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&x, &y| cmp(&a[x][col].abs(), &a[y][col].abs()))
            .expect("non-empty range");
        if a[piv][col].is_zero() {
            return Err(TowerError::Singular);
        }
        a.swap(col, piv);
        let (top, rest) = a.split_at_mut(col + 1);
        let pivot = &top[col];
        for row in rest {
            let f = row[col].div(&pivot[col], p, RM);
            for (x, y) in row[col..].iter_mut().zip(&pivot[col..]) {
                *x = x.sub(&f.mul(y, p, RM), p, RM);
            }
        }
    }
    let mut x = vec![int(0, p); n];
    for r in (0..n).rev() {
        let mut acc = a[r][n].clone();
        for c in r + 1..n {
            acc = acc.sub(&a[r][c].mul(&x[c], p, RM), p, RM);
        }
        x[r] = acc.div(&a[r][r], p, RM);
    }
    x.iter()
        .enumerate()
        .map(|(i, v)| {
            let f = to_f64(v);
            let r = f.round();
            if (f - r).abs() < 0.25 {
                Ok(r as i64)
            } else {
                Err(TowerError::NonIntegralSolution { index: i, value: f })
            }
        })
        .collect()
}

/// A printed ordering checked against direct sums.
#[derive(Debug, Clone)]
pub struct SignCheck {
    pub printed: PrintedSign,
    pub computed_left_larger: bool,
    /// Whether the two printed parts are the children of one split.
    pub siblings: bool,
}

impl SignCheck {
    pub fn agrees(&self) -> bool {
        self.siblings && self.printed.left_larger == self.computed_left_larger
    }
}

/// Checks every printed ordering for `n` against direct cosine sums.
pub fn check_printed_signs(table: &InvariantSetTable, cos: &CosineTable) -> Result<Vec<SignCheck>, TowerError> {
    let mut sibs: HashSet<(PartRef, PartRef)> = HashSet::new();
    for sp in all_splits(&table.params) {
        let (l, r) = sp.children();
        sibs.insert((canonical(&l, table)?, canonical(&r, table)?));
    }
    reference::printed_signs(table.params.n)
        .into_iter()
        .map(|ps| {
            let l = direct_value(&ps.left, table, cos)?;
            let r = direct_value(&ps.right, table, cos)?;
            Ok(SignCheck {
                printed: ps,
                computed_left_larger: cmp(&l, &r) == Ordering::Greater,
                siblings: sibs.contains(&(ps.left, ps.right)),
            })
        })
        .collect()
}

/// Printed splits at a step that have no printed ordering.
pub fn unprinted_splits(tower: &Tower, step: u32) -> Vec<(PartRef, PartRef)> {
    let printed: HashSet<(PartRef, PartRef)> = reference::printed_signs(tower.params.n)
        .into_iter()
        .filter(|s| s.step == step)
        .map(|s| (s.left, s.right))
        .collect();
    if printed.is_empty() {
        return Vec::new();
    }
    tower
        .nodes_at(step)
        .map(|n| (n.left, n.right))
        .filter(|x| !printed.contains(x))
        .collect()
}

/// Pruning lists of the tower next to the printed ones (`n = 65537` only).
pub fn pruning_diffs(tower: &Tower) -> Vec<(&'static str, Vec<u32>, ListDiff)> {
    if tower.params.n != 65537 || tower.kind != ScheduleKind::Pruned {
        return Vec::new();
    }
    let offsets = |step: u32| -> Vec<u32> {
        tower
            .nodes_at(step)
            .filter_map(|n| match n.split {
                Split::F { j, .. } => Some(j),
                Split::G { .. } => None,
            })
            .collect()
    };
    let step11 = offsets(11);
    let step10 = offsets(10);
    let mut required: BTreeSet<u32> = step11.iter().copied().collect();
    for n in tower.nodes_at(11) {
        for p in n.product.parts() {
            if let PartRef::F { j, s: 1024 } = p {
                required.insert(*j);
            }
        }
    }
    let required: Vec<u32> = required.into_iter().collect();
    let both: Vec<u32> = required
        .iter()
        .copied()
        .filter(|&j| j <= 512 && required.contains(&(j + 512)))
        .collect();
    let greater10 = tower.greater_offsets(10);
    vec![
        ("F(j,1024) splits at step 11", step11.clone(), diff_lists(&step11, reference::STEP11_SPLITS)),
        ("F(j,1024) values required by step 11", required.clone(), diff_lists(&required, reference::REQUIRED_F1024)),
        ("offsets with both F(j,1024) and F(j+512,1024)", both.clone(), diff_lists(&both, reference::BOTH_HALVES)),
        ("F(j,512) splits at step 10", step10.clone(), diff_lists(&step10, reference::STEP10_SPLITS)),
        ("step 10 offsets with F(j,1024) > F(j+512,1024)", greater10.clone(), diff_lists(&greater10, reference::GT_STEP10)),
    ]
}

//! Parts `F(j,2^m)` and `G_k(j,2^m)` and the integer product expressions of
//! their splits.
//!
//! Level indices always name the parent: `m` splits stride `2^m` parts into
//! stride `2^(m+1)` parts.

use crate::cyclotomic_oracle::{pv_from_pairs, pv_mul, PeriodVector};
use crate::invariant_sets::InvariantSetTable;
use crate::period_algebra::{set_product, set_square, write_signed_terms};
use crate::residues::{fold, rho, FermatParams, PairIndex};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SplitError {
    #[error("invalid part {0}")]
    InvalidPart(String),
    #[error("no split exists at level {m}")]
    LevelOutOfRange { m: u32 },
    #[error("offset {j} is outside 1..={stride}")]
    OffsetOutOfRange { j: u32, stride: u32 },
    #[error("cannot parse part {0:?}")]
    Parse(String),
}

/// A part of the period tree.
///
/// `F { j, s }` sums the sets `G_j, G_(j+s), ...`; `G { k, j, s }` sums the
/// pairs at positions `j, j+s, ...` of `G_k`; `Pair(p)` is `p_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PartRef {
    F { j: u32, s: u32 },
    G { k: u32, j: u32, s: u32 },
    Pair(PairIndex),
}

impl PartRef {
    /// The whole sum `S = F(1,1) = -1`.
    pub const S: PartRef = PartRef::F { j: 1, s: 1 };

    pub fn is_root(&self) -> bool {
        *self == PartRef::S
    }

    pub fn validate(&self, params: &FermatParams) -> Result<(), SplitError> {
        let bad = || SplitError::InvalidPart(self.to_string());
        let stride_ok = |j: u32, s: u32, max: u32| s.is_power_of_two() && s <= max && j >= 1 && j <= s;
        let ok = match *self {
            PartRef::F { j, s } => stride_ok(j, s, params.ng),
            PartRef::G { k, j, s } => k >= 1 && k <= params.ng && stride_ok(j, s, params.set_len()),
            PartRef::Pair(p) => p >= 1 && p <= params.np,
        };
        if ok {
            Ok(())
        } else {
            Err(bad())
        }
    }
}

impl fmt::Display for PartRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            PartRef::F { j: 1, s: 1 } => write!(f, "S"),
            PartRef::F { j, s } => write!(f, "F({j},{s})"),
            PartRef::G { k, j, s } => write!(f, "G{k}({j},{s})"),
            PartRef::Pair(p) => write!(f, "p{p}"),
        }
    }
}

impl FromStr for PartRef {
    type Err = SplitError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = || SplitError::Parse(text.to_string());
        let t = text.trim();
        if t == "S" {
            return Ok(PartRef::S);
        }
        let args = |rest: &str| -> Result<(u32, u32), SplitError> {
            let inner = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
            let (a, b) = inner.split_once(',').ok_or_else(bad)?;
            Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
        };
        if let Some(rest) = t.strip_prefix('F') {
            let (j, s) = args(rest)?;
            return Ok(PartRef::F { j, s });
        }
        if let Some(rest) = t.strip_prefix('G') {
            let open = rest.find('(').ok_or_else(bad)?;
            let k = rest[..open].parse().map_err(|_| bad())?;
            let (j, s) = args(&rest[open..])?;
            return Ok(PartRef::G { k, j, s });
        }
        if let Some(rest) = t.strip_prefix('p') {
            return Ok(PartRef::Pair(rest.parse().map_err(|_| bad())?));
        }
        Err(bad())
    }
}

impl Serialize for PartRef {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PartRef {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Members of a part: set numbers for `F`, pair numbers otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Members {
    Sets(Vec<u32>),
    Pairs(Vec<PairIndex>),
}

pub fn part_members(p: &PartRef, table: &InvariantSetTable) -> Result<Members, SplitError> {
    p.validate(&table.params)?;
    Ok(match *p {
        PartRef::F { j, s } => Members::Sets((j..=table.ng()).step_by(s as usize).collect()),
        PartRef::G { k, j, s } => Members::Pairs(
            table.set(k)[j as usize - 1..]
                .iter()
                .step_by(s as usize)
                .copied()
                .collect(),
        ),
        PartRef::Pair(q) => Members::Pairs(vec![q]),
    })
}

/// Pair numbers summed by a part.
pub fn pair_members(p: &PartRef, table: &InvariantSetTable) -> Result<Vec<PairIndex>, SplitError> {
    Ok(match part_members(p, table)? {
        Members::Sets(sets) => sets.iter().flat_map(|&k| table.set(k).iter().copied()).collect(),
        Members::Pairs(pairs) => pairs,
    })
}

/// The unique name of a part: whole sets are `G_k(1,1)`, single pairs are
/// `p_k`, and the whole sum is `S`.
pub fn canonical(p: &PartRef, table: &InvariantSetTable) -> Result<PartRef, SplitError> {
    p.validate(&table.params)?;
    let params = &table.params;
    Ok(match *p {
        PartRef::F { j, s } if s == params.ng && *p != PartRef::S => PartRef::G { k: j, j: 1, s: 1 },
        PartRef::G { k, j, s } if s == params.set_len() => PartRef::Pair(table.set(k)[j as usize - 1]),
        PartRef::G { k: 1, j: 1, s: 1 } if params.ng == 1 => PartRef::S,
        _ => *p,
    })
}

pub fn pv_of_part(p: &PartRef, table: &InvariantSetTable) -> Result<PeriodVector, SplitError> {
    let pairs = pair_members(p, table)?;
    Ok(pv_from_pairs(&pairs, table.params.np).expect("members are in range"))
}

/// An exact multiple of one half.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Half(pub i64);

impl Half {
    pub fn int(v: i64) -> Half {
        Half(2 * v)
    }

    pub fn halves(v: i64) -> Half {
        Half(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0 == 0
    }

    /// The integer value, if there is one.
    pub fn as_int(&self) -> Option<i64> {
        (self.0 % 2 == 0).then_some(self.0 / 2)
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_int() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "{}/2", self.0),
        }
    }
}

impl FromStr for Half {
    type Err = SplitError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SplitError::Parse(s.to_string());
        match s.split_once('/') {
            Some((num, "2")) => Ok(Half(num.trim().parse().map_err(|_| bad())?)),
            Some(_) => Err(bad()),
            None => Ok(Half::int(s.trim().parse().map_err(|_| bad())?)),
        }
    }
}

impl Serialize for Half {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Half {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `constant + sum c_i * part_i + sum d_i * part_i^2` with half-integer
/// coefficients. Terms are kept sorted by part and free of zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinearCombo {
    pub constant: Half,
    pub linear: Vec<(Half, PartRef)>,
    pub squares: Vec<(Half, PartRef)>,
}

fn merge_term(terms: &mut Vec<(Half, PartRef)>, c: Half, p: PartRef) {
    if c.is_zero() {
        return;
    }
    match terms.binary_search_by(|(_, q)| q.cmp(&p)) {
        Ok(i) => {
            terms[i].0 .0 += c.0;
            if terms[i].0.is_zero() {
                terms.remove(i);
            }
        }
        Err(i) => terms.insert(i, (c, p)),
    }
}

impl LinearCombo {
    pub fn constant(c: Half) -> Self {
        LinearCombo {
            constant: c,
            ..Default::default()
        }
    }

    pub fn add_constant(&mut self, c: Half) {
        self.constant.0 += c.0;
    }

    pub fn add_linear(&mut self, c: Half, p: PartRef) {
        merge_term(&mut self.linear, c, p);
    }

    pub fn add_square(&mut self, c: Half, p: PartRef) {
        merge_term(&mut self.squares, c, p);
    }

    pub fn coeff(&self, p: &PartRef) -> Half {
        self.linear
            .iter()
            .find(|(_, q)| q == p)
            .map(|(c, _)| *c)
            .unwrap_or_default()
    }

    /// Every part the expression reads, squared or not.
    pub fn parts(&self) -> impl Iterator<Item = &PartRef> {
        self.squares.iter().chain(self.linear.iter()).map(|(_, p)| p)
    }

    /// Renames parts canonically and substitutes `S = -1`.
    pub fn canonicalized(&self, table: &InvariantSetTable) -> Result<LinearCombo, SplitError> {
        let mut out = LinearCombo::constant(self.constant);
        for &(c, p) in &self.linear {
            let q = canonical(&p, table)?;
            if q.is_root() {
                out.add_constant(Half(-c.0));
            } else {
                out.add_linear(c, q);
            }
        }
        for &(c, p) in &self.squares {
            let q = canonical(&p, table)?;
            if q.is_root() {
                out.add_constant(c);
            } else {
                out.add_square(c, q);
            }
        }
        Ok(out)
    }

    /// Twice the expression as an exact period vector.
    pub fn doubled_pv(&self, table: &InvariantSetTable) -> Result<PeriodVector, SplitError> {
        let np = table.params.np;
        let mut out = PeriodVector::constant(self.constant.0, np);
        for &(c, p) in &self.linear {
            out.add_scaled(&pv_of_part(&p, table)?, c.0);
        }
        for &(c, p) in &self.squares {
            let v = pv_of_part(&p, table)?;
            let sq = pv_mul(&v, &v, table.params.n).expect("same dimension");
            out.add_scaled(&sq, c.0);
        }
        Ok(out)
    }

    /// Applies `f` to every part name.
    pub fn map_parts(&self, mut f: impl FnMut(&PartRef) -> PartRef) -> LinearCombo {
        let mut out = LinearCombo::constant(self.constant);
        for &(c, p) in &self.linear {
            out.add_linear(c, f(&p));
        }
        for &(c, p) in &self.squares {
            out.add_square(c, f(&p));
        }
        out
    }
}

/// `1/2*G1(1,8)^2 - 1/2*G1(2,8) - 2`.
impl fmt::Display for LinearCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<(i64, String)> = Vec::new();
        let body = |c: Half, p: &PartRef, sq: &str| {
            let mag = Half(c.0.abs());
            if mag == Half::int(1) {
                format!("{p}{sq}")
            } else {
                format!("{mag}*{p}{sq}")
            }
        };
        for (c, p) in &self.squares {
            parts.push((c.0, body(*c, p, "^2")));
        }
        for (c, p) in &self.linear {
            parts.push((c.0, body(*c, p, "")));
        }
        if !self.constant.is_zero() || parts.is_empty() {
            parts.push((self.constant.0, Half(self.constant.0.abs()).to_string()));
        }
        write_signed_terms(f, &parts)
    }
}

fn check_f_level(m: u32, params: &FermatParams) -> Result<(), SplitError> {
    if m >= params.f_levels() {
        return Err(SplitError::LevelOutOfRange { m });
    }
    Ok(())
}

fn check_offset(j: u32, stride: u32) -> Result<(), SplitError> {
    if j == 0 || j > stride {
        return Err(SplitError::OffsetOutOfRange { j, stride });
    }
    Ok(())
}

/// Children of the F-split of `F(j,2^m)`.
pub fn f_children(j: u32, m: u32) -> (PartRef, PartRef) {
    let s = 2u32 << m;
    (PartRef::F { j, s }, PartRef::F { j: j + (1 << m), s })
}

/// Children of the G-split of `G_k(s,2^m)`.
pub fn g_children(k: u32, s: u32, m: u32) -> (PartRef, PartRef) {
    let st = 2u32 << m;
    (PartRef::G { k, j: s, s: st }, PartRef::G { k, j: s + (1 << m), s: st })
}

/// Tally of a set combination by class `rho(set, stride)`.
fn tally_by_class(acc: &mut [i64], c: &crate::period_algebra::SetCombination) {
    let stride = acc.len() as u32;
    for (k, x) in c.terms() {
        acc[rho(k, stride) as usize - 1] += x;
    }
}

/// `mu(k,2^m)`: multiplicity of `F(k,2^m)` in `F(1,2^(m+1)) * F(1+2^m,2^(m+1))`.
pub fn mu_table(m: u32, table: &InvariantSetTable) -> Result<Vec<i64>, SplitError> {
    check_f_level(m, &table.params)?;
    let stride = 1u32 << m;
    let rows = table.ng() >> (m + 1);
    let mut mu = vec![0i64; stride as usize];
    if rows == 1 {
        tally_by_class(&mut mu, &set_product(1, 1 + stride, table));
        for v in &mut mu {
            debug_assert!(*v % 2 == 0);
            *v /= 2;
        }
    } else {
        for t in 0..rows / 2 {
            tally_by_class(&mut mu, &set_product(1, 1 + stride + 2 * t * stride, table));
        }
    }
    Ok(mu)
}

/// Tally of the full row `G_1 G_(1+2^m+t 2^(m+1))`, `t = 0..rows`.
pub fn mu_full_row(m: u32, table: &InvariantSetTable) -> Result<Vec<i64>, SplitError> {
    check_f_level(m, &table.params)?;
    let stride = 1u32 << m;
    let mut acc = vec![0i64; stride as usize];
    for t in 0..table.ng() >> (m + 1) {
        tally_by_class(&mut acc, &set_product(1, 1 + stride + 2 * t * stride, table));
    }
    Ok(acc)
}

/// Groups `k` by multiplicity: `K(v, 2^m) = { k : mu(k,2^m) = v }`.
pub fn k_sets(m: u32, table: &InvariantSetTable) -> Result<BTreeMap<i64, Vec<u32>>, SplitError> {
    let mut out: BTreeMap<i64, Vec<u32>> = BTreeMap::new();
    for (i, v) in mu_table(m, table)?.into_iter().enumerate() {
        out.entry(v).or_default().push(i as u32 + 1);
    }
    Ok(out)
}

/// Most frequent value, the smaller one on ties.
pub fn mode(values: &[i64]) -> i64 {
    let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
    for &v in values {
        *counts.entry(v).or_default() += 1;
    }
    let best = counts.values().copied().max().unwrap_or(0);
    counts
        .into_iter()
        .find(|&(_, c)| c == best)
        .map(|(v, _)| v)
        .unwrap_or(0)
}

/// Product of the children of `F(j,2^m)`, with `c` copies of
/// `S = sum_k F(k,2^m)` folded into the constant.
pub fn f_split_product_folded(
    j: u32,
    m: u32,
    c: i64,
    mu: &[i64],
) -> Result<LinearCombo, SplitError> {
    let stride = 1u32 << m;
    check_offset(j, stride)?;
    let mut out = LinearCombo::constant(Half::int(-c));
    for (i, &v) in mu.iter().enumerate() {
        let k = rho(i as u32 + j, stride);
        out.add_linear(Half::int(v - c), PartRef::F { j: k, s: stride });
    }
    Ok(out)
}

/// Product of the children of `F(j,2^m)`; the most common multiplicity is
/// folded into the constant.
pub fn f_split_product(j: u32, m: u32, table: &InvariantSetTable) -> Result<LinearCombo, SplitError> {
    let mu = mu_table(m, table)?;
    f_split_product_folded(j, m, mode(&mu), &mu)
}

/// Squares variant: `(F(j,2^m)^2 - Q_1 - Pr_1) / 2`.
pub fn f_split_product_squares(
    j: u32,
    m: u32,
    table: &InvariantSetTable,
) -> Result<LinearCombo, SplitError> {
    check_f_level(m, &table.params)?;
    let stride = 1u32 << m;
    check_offset(j, stride)?;
    let rows = table.ng() >> (m + 1);
    let mut cls = vec![0i64; stride as usize];
    tally_by_class(&mut cls, &set_square(1, table));
    let step = 2 * stride;
    for d in 1..=rows / 2 {
        let mut t = vec![0i64; stride as usize];
        tally_by_class(&mut t, &set_product(1, 1 + d * step, table));
        let w = if 2 * d == rows { 1 } else { 2 };
        for (a, b) in cls.iter_mut().zip(t) {
            *a += w * b;
        }
    }
    let n1 = (table.params.n - 1) as i64;
    let mut out = LinearCombo::constant(Half::halves(-(n1 >> m)));
    out.add_square(Half::halves(1), PartRef::F { j, s: stride });
    for (i, &v) in cls.iter().enumerate() {
        let k = rho(i as u32 + j, stride);
        out.add_linear(Half::halves(-v), PartRef::F { j: k, s: stride });
    }
    Ok(out)
}

/// `(Pr_M, Pr_L)` for the split of `G_1(1,2^m)`.
pub fn pr_terms(m: u32, table: &InvariantSetTable) -> Result<(LinearCombo, LinearCombo), SplitError> {
    pr_terms_at(1, 1, m, table)
}

fn check_g_split(k: u32, s: u32, m: u32, params: &FermatParams) -> Result<(), SplitError> {
    if m >= params.nu {
        return Err(SplitError::LevelOutOfRange { m });
    }
    if k == 0 || k > params.ng {
        return Err(SplitError::InvalidPart(format!("G{k}")));
    }
    check_offset(s, 1 << m)
}

/// Pr terms from the fixed first pair at position `s` of `G_k`.
fn pr_terms_at(
    k: u32,
    s: u32,
    m: u32,
    table: &InvariantSetTable,
) -> Result<(LinearCombo, LinearCombo), SplitError> {
    check_g_split(k, s, m, &table.params)?;
    let stride = 1u32 << m;
    let len = table.params.set_len();
    let half_len = len >> (m + 1);
    let (mut pm, mut pl) = (LinearCombo::default(), LinearCombo::default());
    if half_len == 1 {
        return Ok((pm, pl));
    }
    let n = table.params.n;
    let set = table.set(k);
    let a0 = set[s as usize - 1];
    let class = |x: PairIndex| {
        let (g, pos) = table.locate_pair(x);
        PartRef::G { k: g, j: rho(pos, stride), s: stride }
    };
    for d in 1..=half_len / 2 {
        let ad = set[((s - 1 + d * 2 * stride) % len) as usize];
        let target = if 2 * d == half_len { &mut pm } else { &mut pl };
        for x in [a0.abs_diff(ad), fold(a0 + ad, n)] {
            target.add_linear(Half::int(1), class(x));
        }
    }
    Ok((pm, pl))
}

/// Moves a canonical-case G-part by `dk` set numbers and `ds` positions.
///
/// Set numbers past `ng` wrap to the front and pick up the position shift
/// of [`InvariantSetTable::wrap_shift`].
pub fn shift_part(p: &PartRef, dk: u32, ds: u32, table: &InvariantSetTable) -> PartRef {
    match *p {
        PartRef::G { k, j, s } => {
            let ng = table.ng();
            let t = k - 1 + dk;
            let (q, r) = (t / ng, t % ng);
            let pos = (j as u64 + q as u64 * table.wrap_shift() as u64 + ds as u64) % s as u64;
            PartRef::G { k: r + 1, j: if pos == 0 { s } else { pos as u32 }, s }
        }
        other => other,
    }
}

fn g_product_from_pr(
    k: u32,
    s: u32,
    m: u32,
    pm: &LinearCombo,
    pl: &LinearCombo,
    table: &InvariantSetTable,
) -> LinearCombo {
    let stride = 1u32 << m;
    let nu = table.params.nu;
    let mut out = LinearCombo::constant(Half::int(-(1i64 << (nu - m))));
    out.add_square(Half::halves(1), PartRef::G { k, j: s, s: stride });
    out.add_linear(Half::halves(-1), PartRef::G { k, j: rho(s + 1, stride), s: stride });
    for &(c, p) in &pm.linear {
        out.add_linear(Half(-c.0 / 2), p);
    }
    for &(c, p) in &pl.linear {
        out.add_linear(Half(-c.0), p);
    }
    out
}

/// Product of the children of `G_k(s,2^m)`, derived from the canonical case
/// `k = s = 1` by the shift rule.
pub fn g_split_product(
    k: u32,
    s: u32,
    m: u32,
    table: &InvariantSetTable,
) -> Result<LinearCombo, SplitError> {
    check_g_split(k, s, m, &table.params)?;
    let (pm, pl) = pr_terms(m, table)?;
    let shift = |c: &LinearCombo| c.map_parts(|p| shift_part(p, k - 1, s - 1, table));
    Ok(g_product_from_pr(k, s, m, &shift(&pm), &shift(&pl), table))
}

/// As [`g_split_product`], but classifying products of the first pair at
/// position `s` of `G_k` directly.
pub fn g_split_product_direct(
    k: u32,
    s: u32,
    m: u32,
    table: &InvariantSetTable,
) -> Result<LinearCombo, SplitError> {
    let (pm, pl) = pr_terms_at(k, s, m, table)?;
    Ok(g_product_from_pr(k, s, m, &pm, &pl, table))
}

/// Exact check that `lhs * rhs` equals `product`.
pub fn oracle_holds(
    lhs: &PartRef,
    rhs: &PartRef,
    product: &LinearCombo,
    table: &InvariantSetTable,
) -> Result<bool, SplitError> {
    let a = pv_of_part(lhs, table)?;
    let b = pv_of_part(rhs, table)?;
    let ab = pv_mul(&a, &b, table.params.n).expect("same dimension").scaled(2);
    Ok(ab.same_value(&product.doubled_pv(table)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariant_sets::build_invariant_sets;
    use proptest::prelude::*;
    use std::sync::OnceLock;

    fn table(n: u64) -> InvariantSetTable {
        build_invariant_sets(FermatParams::new(n).unwrap(), 3).unwrap()
    }

    fn t65537() -> &'static InvariantSetTable {
        static T: OnceLock<InvariantSetTable> = OnceLock::new();
        T.get_or_init(|| table(65537))
    }

    fn g(k: u32, j: u32, s: u32) -> PartRef {
        PartRef::G { k, j, s }
    }

    fn f(j: u32, s: u32) -> PartRef {
        PartRef::F { j, s }
    }

    fn combo(t: &InvariantSetTable, text: &str) -> LinearCombo {
        // Parses "c*part" / "c*part^2" / "c" terms joined by spaces.
        let mut out = LinearCombo::default();
        for tok in text.split_whitespace() {
            let (c, rest) = match tok.split_once('*') {
                Some((c, r)) => (c.parse::<Half>().unwrap(), Some(r)),
                None => (tok.parse::<Half>().unwrap(), None),
            };
            match rest {
                None => out.add_constant(c),
                Some(r) => match r.strip_suffix("^2") {
                    Some(p) => out.add_square(c, p.parse().unwrap()),
                    None => out.add_linear(c, r.parse().unwrap()),
                },
            }
        }
        out.canonicalized(t).unwrap()
    }

    #[test]
    fn part_parse_display_roundtrip() {
        for text in ["S", "F(3,8)", "G1025(2,4)", "p15", "G1(1,1)"] {
            let p: PartRef = text.parse().unwrap();
            assert_eq!(p.to_string(), text);
        }
        assert_eq!("F(1,1)".parse::<PartRef>().unwrap(), PartRef::S);
        for bad in ["", "F(1)", "Gx(1,2)", "q3", "p", "F(1,2"] {
            assert!(bad.parse::<PartRef>().is_err(), "{bad}");
        }
        let json = serde_json::to_string(&g(93, 1, 2)).unwrap();
        assert_eq!(json, "\"G93(1,2)\"");
        assert_eq!(serde_json::from_str::<PartRef>(&json).unwrap(), g(93, 1, 2));
    }

    #[test]
    fn part_members_examples() {
        let t = table(257);
        assert_eq!(part_members(&f(1, 4), &t).unwrap(), Members::Sets(vec![1, 5, 9, 13]));
        let t = t65537();
        assert_eq!(
            part_members(&g(1, 1, 2), t).unwrap(),
            Members::Pairs(vec![1, 4, 16, 64, 256, 1024, 4096, 16384])
        );
        assert_eq!(
            part_members(&g(1, 2, 2), t).unwrap(),
            Members::Pairs(vec![2, 8, 32, 128, 512, 2048, 8192, 32768])
        );
        assert_eq!(part_members(&g(1, 1, 16), t).unwrap(), Members::Pairs(vec![1]));
        assert!(part_members(&f(3, 2), t).is_err());
        assert!(part_members(&g(1, 1, 3), t).is_err());
        assert!(part_members(&PartRef::Pair(32769), t).is_err());
    }

    #[test]
    fn canonical_names() {
        let t = table(17);
        assert_eq!(canonical(&f(2, 2), &t).unwrap(), g(2, 1, 1));
        assert_eq!(canonical(&g(2, 3, 4), &t).unwrap(), PartRef::Pair(5));
        assert_eq!(canonical(&PartRef::S, &t).unwrap(), PartRef::S);
        let t = table(5);
        assert_eq!(canonical(&g(1, 1, 1), &t).unwrap(), PartRef::S);
        assert_eq!(canonical(&g(1, 2, 2), &t).unwrap(), PartRef::Pair(2));
    }

    #[test]
    fn half_and_combo_display() {
        assert_eq!(Half(-1).to_string(), "-1/2");
        assert_eq!(Half::int(3).to_string(), "3");
        assert_eq!("7/2".parse::<Half>().unwrap(), Half(7));
        assert!("1/3".parse::<Half>().is_err());
        let t = t65537();
        let c = g_split_product(1, 1, 3, t).unwrap();
        assert_eq!(c.to_string(), "1/2*G1(1,8)^2 - 1/2*G1(2,8) - 2");
        assert_eq!(LinearCombo::default().to_string(), "0");
    }

    #[test]
    fn mu_examples() {
        assert_eq!(mu_table(2, &table(257)).unwrap(), vec![2, 5, 4, 5]);
        let t = t65537();
        assert_eq!(mu_table(2, t).unwrap(), vec![992, 1040, 1024, 1040]);
        assert_eq!(mu_table(3, t).unwrap(), vec![284, 237, 272, 237, 256, 269, 256, 237]);
        assert_eq!(
            mu_table(4, t).unwrap(),
            vec![80, 62, 60, 64, 57, 60, 61, 60, 68, 64, 64, 58, 65, 70, 61, 70]
        );
        assert!(mu_table(4, &table(257)).is_err());
    }

    #[test]
    fn mu_conservation_and_row_symmetry() {
        for n in [17u64, 257, 65537] {
            let owned;
            let t = if n == 65537 {
                t65537()
            } else {
                owned = table(n);
                &owned
            };
            for m in 0..t.params.f_levels() {
                let mu = mu_table(m, t).unwrap();
                assert_eq!(mu.iter().sum::<i64>(), (n as i64 - 1) >> (m + 2), "n={n} m={m}");
                let full = mu_full_row(m, t).unwrap();
                let twice: Vec<i64> = mu.iter().map(|v| 2 * v).collect();
                assert_eq!(full, twice, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn k_sets_group_by_value() {
        let k = k_sets(2, &table(257)).unwrap();
        assert_eq!(k[&5], vec![2, 4]);
        assert_eq!(k[&2], vec![1]);
    }

    #[test]
    fn mode_prefers_smaller_on_ties() {
        assert_eq!(mode(&[2, 5, 4, 5]), 5);
        assert_eq!(mode(&[3, 1, 3, 1]), 1);
        assert_eq!(mode(&[]), 0);
    }

    #[test]
    fn f_split_examples() {
        let t = t65537();
        let c = f_split_product(1, 0, t).unwrap().canonicalized(t).unwrap();
        assert_eq!(c, LinearCombo::constant(Half::int(-16384)));
        let c = f_split_product(1, 2, t).unwrap();
        assert_eq!(c, combo(t, "-1040 -48*F(1,4) -16*F(3,4)"));
        for (n, v) in [(257u64, -16), (65537, -4096)] {
            let owned;
            let t = if n == 65537 {
                t65537()
            } else {
                owned = table(n);
                &owned
            };
            for j in 1..=2 {
                let c = f_split_product(j, 1, t).unwrap().canonicalized(t).unwrap();
                assert_eq!(c, LinearCombo::constant(Half::int(v)));
            }
        }
        let t = table(257);
        assert_eq!(f_split_product(1, 2, &t).unwrap(), combo(&t, "-5 -3*F(1,4) -1*F(3,4)"));
        let t = table(17);
        let c = f_split_product(1, 0, &t).unwrap().canonicalized(&t).unwrap();
        assert_eq!(c, LinearCombo::constant(Half::int(-4)));
    }

    #[test]
    fn squares_variant_17() {
        let t = table(17);
        let c = f_split_product_squares(1, 0, &t).unwrap();
        assert_eq!(c.to_string(), "1/2*S^2 - 7/2*S - 8");
        assert_eq!(c.canonicalized(&t).unwrap(), LinearCombo::constant(Half::int(-4)));
    }

    #[test]
    fn pr_terms_examples() {
        let t = table(257);
        let (pm, pl) = pr_terms(0, &t).unwrap();
        assert_eq!(pm, combo(&t, "2*G9(1,1)"));
        assert_eq!(pl, combo(&t, "1*G2(1,1) 1*G8(1,1)"));
        let t = t65537();
        let (pm, _) = pr_terms(1, t).unwrap();
        assert_eq!(pm, combo(t, "2*G1025(2,2)"));
        let (pm, pl) = pr_terms(0, t).unwrap();
        assert_eq!(pm, combo(t, "2*G1025(1,1)"));
        assert_eq!(
            pl,
            combo(t, "1*G2(1,1) 1*G1117(1,1) 1*G1266(1,1) 1*G1900(1,1) 1*G1956(1,1) 1*G1957(1,1)")
        );
        let (pm, pl) = pr_terms(3, t).unwrap();
        assert!(pm.linear.is_empty() && pl.linear.is_empty());
        let (_, pl) = pr_terms(2, t).unwrap();
        assert!(pl.linear.is_empty());
    }

    #[test]
    fn g_split_examples_small() {
        let t = table(257);
        assert_eq!(
            g_split_product(1, 1, 0, &t).unwrap(),
            combo(&t, "1/2*G1(1,1)^2 -1/2*G1(1,1) -8 -1*G2(1,1) -1*G8(1,1) -1*G9(1,1)")
        );
        let t = table(17);
        let c = g_split_product(1, 1, 0, &t).unwrap();
        assert_eq!(c, combo(&t, "1/2*G1(1,1)^2 -1/2*G1(1,1) -4 -1*G2(1,1)"));
        assert!(oracle_holds(&g(1, 1, 2), &g(1, 2, 2), &c, &t).unwrap());
        let c = g_split_product(1, 1, 1, &t).unwrap();
        assert_eq!(c, combo(&t, "1/2*G1(1,2)^2 -1/2*G1(2,2) -2"));
        let t = table(5);
        let c = g_split_product(1, 1, 0, &t).unwrap().canonicalized(&t).unwrap();
        assert_eq!(c, LinearCombo::constant(Half::int(-1)));
    }

    #[test]
    fn g_split_examples_65537() {
        let t = t65537();
        let cases = [
            (1, 1, 0, "1/2*G1(1,1)^2 -1/2*G1(1,1) -16 -1*G2(1,1) -1*G1025(1,1) -1*G1117(1,1) -1*G1266(1,1) -1*G1900(1,1) -1*G1956(1,1) -1*G1957(1,1)"),
            (93, 1, 0, "1/2*G93(1,1)^2 -1/2*G93(1,1) -16 -1*G1(1,1) -1*G94(1,1) -1*G1117(1,1) -1*G1209(1,1) -1*G1358(1,1) -1*G1992(1,1) -1*G2048(1,1)"),
            (933, 1, 0, "1/2*G933(1,1)^2 -1/2*G933(1,1) -16 -1*G1(1,1) -1*G150(1,1) -1*G784(1,1) -1*G840(1,1) -1*G841(1,1) -1*G934(1,1) -1*G1957(1,1)"),
            (1025, 1, 0, "1/2*G1025(1,1)^2 -1/2*G1025(1,1) -16 -1*G1(1,1) -1*G93(1,1) -1*G242(1,1) -1*G876(1,1) -1*G932(1,1) -1*G933(1,1) -1*G1026(1,1)"),
            (1117, 1, 0, "1/2*G1117(1,1)^2 -1/2*G1117(1,1) -16 -1*G93(1,1) -1*G185(1,1) -1*G334(1,1) -1*G968(1,1) -1*G1024(1,1) -1*G1025(1,1) -1*G1118(1,1)"),
            (1957, 1, 0, "1/2*G1957(1,1)^2 -1/2*G1957(1,1) -16 -1*G933(1,1) -1*G1025(1,1) -1*G1174(1,1) -1*G1808(1,1) -1*G1864(1,1) -1*G1865(1,1) -1*G1958(1,1)"),
            (1, 1, 1, "1/2*G1(1,2)^2 -1/2*G1(2,2) -8 -1*G1025(2,2) -1*G1117(2,2) -1*G1957(2,2)"),
            (1, 2, 1, "1/2*G1(2,2)^2 -1/2*G1(1,2) -8 -1*G1025(1,2) -1*G1117(1,2) -1*G1957(1,2)"),
            (1025, 1, 1, "1/2*G1025(1,2)^2 -1/2*G1025(2,2) -8 -1*G1(1,2) -1*G93(1,2) -1*G933(1,2)"),
            (1025, 2, 1, "1/2*G1025(2,2)^2 -1/2*G1025(1,2) -8 -1*G1(2,2) -1*G93(2,2) -1*G933(2,2)"),
            (1, 2, 2, "1/2*G1(2,4)^2 -1/2*G1(3,4) -4 -1*G1025(1,4)"),
            (1, 1, 3, "1/2*G1(1,8)^2 -1/2*G1(2,8) -2"),
        ];
        for (k, s, m, text) in cases {
            let c = g_split_product(k, s, m, t).unwrap();
            assert_eq!(c, combo(t, text), "G{k}({s},{})", 1 << m);
            let (a, b) = g_children(k, s, m);
            assert!(oracle_holds(&a, &b, &c, t).unwrap());
        }
    }

    #[test]
    fn oracle_all_splits_17_and_257() {
        for n in [17u64, 257] {
            let t = table(n);
            let p = t.params;
            for m in 0..p.f_levels() {
                for j in 1..=1 << m {
                    let (a, b) = f_children(j, m);
                    for c in [
                        f_split_product(j, m, &t).unwrap(),
                        f_split_product_squares(j, m, &t).unwrap(),
                    ] {
                        assert!(oracle_holds(&a, &b, &c, &t).unwrap(), "n={n} F({j},{})", 1 << m);
                    }
                }
            }
            for m in 0..p.nu {
                for k in 1..=p.ng {
                    for s in 1..=1 << m {
                        let c = g_split_product(k, s, m, &t).unwrap();
                        assert_eq!(c, g_split_product_direct(k, s, m, &t).unwrap());
                        let (a, b) = g_children(k, s, m);
                        assert!(oracle_holds(&a, &b, &c, &t).unwrap(), "n={n} G{k}({s},{})", 1 << m);
                    }
                }
            }
        }
    }

    #[test]
    fn oracle_f_splits_65537_fine_levels() {
        let t = t65537();
        for m in [6u32, 8, 10] {
            for j in [1u32, 2, 1 << m] {
                let (a, b) = f_children(j, m);
                let c = f_split_product(j, m, t).unwrap();
                assert!(oracle_holds(&a, &b, &c, t).unwrap(), "F({j},{})", 1 << m);
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn shift_matches_direct_65537(k in 1u32..=2048, m in 0u32..4, s0 in 0u32..8) {
            let t = t65537();
            let s = s0 % (1 << m) + 1;
            let c = g_split_product(k, s, m, t).unwrap();
            prop_assert_eq!(&c, &g_split_product_direct(k, s, m, t).unwrap());
            let (a, b) = g_children(k, s, m);
            prop_assert!(oracle_holds(&a, &b, &c, t).unwrap());
        }
    }
}

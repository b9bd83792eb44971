//! Fast products of invariant sets by the fixed-pair tally, and the shift rule.

use crate::invariant_sets::InvariantSetTable;
use crate::residues::{fold, rho};
use std::fmt;

/// `constant + sum_k coeffs[k-1] * G_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetCombination {
    pub constant: i64,
    pub coeffs: Vec<i64>,
}

impl SetCombination {
    pub fn zero(ng: u32) -> Self {
        SetCombination {
            constant: 0,
            coeffs: vec![0; ng as usize],
        }
    }

    pub fn coeff(&self, k: u32) -> i64 {
        self.coeffs[k as usize - 1]
    }

    pub fn coeff_sum(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// Nonzero `(set, coefficient)` terms in set order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i as u32 + 1, c))
    }

    fn tally(&mut self, k: u32) {
        self.coeffs[k as usize - 1] += 1;
    }
}

/// `3*G_1 + G_2 + 16`: terms in set order, then the constant.
impl fmt::Display for SetCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<(i64, String)> = self
            .terms()
            .map(|(k, c)| match c.abs() {
                1 => (c, format!("G_{k}")),
                a => (c, format!("{a}*G_{k}")),
            })
            .collect();
        if self.constant != 0 || parts.is_empty() {
            parts.push((self.constant, self.constant.abs().to_string()));
        }
        write_signed_terms(f, &parts)
    }
}

/// Writes `a + b - c` from `(sign-carrying value, magnitude text)` parts.
pub(crate) fn write_signed_terms(f: &mut fmt::Formatter<'_>, parts: &[(i64, String)]) -> fmt::Result {
    for (i, (c, body)) in parts.iter().enumerate() {
        let sep = match (i == 0, *c < 0) {
            (true, false) => "",
            (true, true) => "-",
            (false, false) => " + ",
            (false, true) => " - ",
        };
        write!(f, "{sep}{body}")?;
    }
    Ok(())
}

/// `G_i * G_j`: fix the first pair of the lower-numbered set and classify its
/// products with every pair of the other set.
pub fn set_product(i: u32, j: u32, table: &InvariantSetTable) -> SetCombination {
    assert!(i >= 1 && j >= 1 && i <= table.ng() && j <= table.ng(), "set index out of range");
    if i == j {
        return set_square(i, table);
    }
    let n = table.params.n;
    let (lo, hi) = (i.min(j), i.max(j));
    let k1 = table.set(lo)[0];
    let mut out = SetCombination::zero(table.ng());
    for &m in table.set(hi) {
        out.tally(table.set_of(k1.abs_diff(m)));
        out.tally(table.set_of(fold(k1 + m, n)));
    }
    out
}

/// `G_i^2`; the square term of the fixed pair contributes the constant.
pub fn set_square(i: u32, table: &InvariantSetTable) -> SetCombination {
    assert!(i >= 1 && i <= table.ng(), "set index out of range");
    let n = table.params.n;
    let set = table.set(i);
    let k1 = set[0];
    let mut out = SetCombination::zero(table.ng());
    out.constant = 2 * set.len() as i64;
    for &m in set {
        if m == k1 {
            out.tally(table.set_of(fold(2 * k1, n)));
        } else {
            out.tally(table.set_of(k1.abs_diff(m)));
            out.tally(table.set_of(fold(k1 + m, n)));
        }
    }
    out
}

/// Renumbers every set `k` to `rho(k + s, ng)`.
pub fn shift_combination(c: &SetCombination, s: u32, table: &InvariantSetTable) -> SetCombination {
    let ng = table.ng();
    let mut out = SetCombination::zero(ng);
    out.constant = c.constant;
    for (k, x) in c.terms() {
        out.coeffs[rho(k + s % ng, ng) as usize - 1] += x;
    }
    out
}

//! Brute-force exact arithmetic in the span of the pairs `p_k`.
//!
//! This is the referee for every symbolic identity elsewhere in the crate,
//! so it deliberately uses nothing but the pair product rule.

use crate::invariant_sets::InvariantSetTable;
use crate::period_algebra::SetCombination;
use crate::residues::{fold, PairIndex};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("pair {p} is outside 1..={np}")]
    PairOutOfRange { p: PairIndex, np: u32 },
    #[error("vectors have lengths {0} and {1}")]
    DimensionMismatch(usize, usize),
    #[error("invariant set {set} has unequal pair coefficients")]
    NotSetUniform { set: u32 },
}

/// `constant + sum_k coeffs[k-1] * p_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PeriodVector {
    pub constant: i64,
    pub coeffs: Vec<i64>,
}

impl PeriodVector {
    pub fn zero(np: u32) -> Self {
        PeriodVector {
            constant: 0,
            coeffs: vec![0; np as usize],
        }
    }

    pub fn constant(c: i64, np: u32) -> Self {
        PeriodVector {
            constant: c,
            coeffs: vec![0; np as usize],
        }
    }

    /// The full sum `S` of all pairs.
    pub fn total(np: u32) -> Self {
        PeriodVector {
            constant: 0,
            coeffs: vec![1; np as usize],
        }
    }

    pub fn np(&self) -> u32 {
        self.coeffs.len() as u32
    }

    pub fn coeff(&self, k: PairIndex) -> i64 {
        self.coeffs[k as usize - 1]
    }

    pub fn add_scaled(&mut self, other: &PeriodVector, c: i64) {
        self.constant += c * other.constant;
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += c * b;
        }
    }

    pub fn scaled(&self, c: i64) -> PeriodVector {
        PeriodVector {
            constant: self.constant * c,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Canonical form using `1 = -S`: the constant is folded into the pairs.
    ///
    /// The pairs are linearly independent, so two vectors denote the same
    /// number exactly when their normalized forms coincide.
    pub fn normalized(&self) -> PeriodVector {
        PeriodVector {
            constant: 0,
            coeffs: self.coeffs.iter().map(|x| x - self.constant).collect(),
        }
    }

    pub fn same_value(&self, other: &PeriodVector) -> bool {
        self.np() == other.np()
            && self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .all(|(a, b)| a - self.constant == b - other.constant)
    }
}

pub fn pv_from_pairs(pairs: &[PairIndex], np: u32) -> Result<PeriodVector, OracleError> {
    let mut v = PeriodVector::zero(np);
    for &p in pairs {
        if p == 0 || p > np {
            return Err(OracleError::PairOutOfRange { p, np });
        }
        v.coeffs[p as usize - 1] += 1;
    }
    Ok(v)
}

/// `p_k * p_m` by the rule `p_|k-m| + p_min(k+m, n-k-m)`, with `p_k^2 = p_2k + 2`.
pub fn pair_product(k: PairIndex, m: PairIndex, n: u32) -> PeriodVector {
    let np = (n - 1) / 2;
    let mut v = PeriodVector::zero(np);
    if k == m {
        v.coeffs[fold(2 * k, n) as usize - 1] += 1;
        v.constant = 2;
    } else {
        v.coeffs[k.abs_diff(m) as usize - 1] += 1;
        v.coeffs[fold(k + m, n) as usize - 1] += 1;
    }
    v
}

/// Bilinear extension of [`pair_product`] with constants acting as scalars.
pub fn pv_mul(a: &PeriodVector, b: &PeriodVector, n: u32) -> Result<PeriodVector, OracleError> {
    if a.coeffs.len() != b.coeffs.len() {
        return Err(OracleError::DimensionMismatch(a.coeffs.len(), b.coeffs.len()));
    }
    let np = a.np();
    let nz = |v: &PeriodVector| -> Vec<(u32, i64)> {
        v.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i as u32 + 1, c))
            .collect()
    };
    let (xs, ys) = (nz(a), nz(b));
    // acc[0] holds the constant, acc[k] the coefficient of p_k.
    let mut acc = vec![0i64; np as usize + 1];
    for &(k, ck) in &xs {
        for &(m, cm) in &ys {
            let c = ck * cm;
            if k == m {
                acc[fold(2 * k, n) as usize] += c;
                acc[0] += 2 * c;
            } else {
                acc[k.abs_diff(m) as usize] += c;
                acc[fold(k + m, n) as usize] += c;
            }
        }
    }
    let mut out = PeriodVector {
        constant: acc[0],
        coeffs: acc.split_off(1),
    };
    out.add_scaled(b, a.constant);
    out.add_scaled(a, b.constant);
    out.constant -= a.constant * b.constant;
    Ok(out)
}

/// Rewrites `v` as a constant plus a combination of whole invariant sets.
pub fn decompose_into_sets(
    v: &PeriodVector,
    table: &InvariantSetTable,
) -> Result<SetCombination, OracleError> {
    let np = table.params.np;
    if v.np() != np {
        return Err(OracleError::DimensionMismatch(v.coeffs.len(), np as usize));
    }
    let mut coeffs = Vec::with_capacity(table.ng() as usize);
    for k in 1..=table.ng() {
        let set = table.set(k);
        let c = v.coeff(set[0]);
        if set.iter().any(|&p| v.coeff(p) != c) {
            return Err(OracleError::NotSetUniform { set: k });
        }
        coeffs.push(c);
    }
    Ok(SetCombination {
        constant: v.constant,
        coeffs,
    })
}

/// Indicator vector of invariant set `k`.
pub fn pv_of_set(k: u32, table: &InvariantSetTable) -> PeriodVector {
    pv_from_pairs(table.set(k), table.params.np).expect("set pairs are in range")
}

/// Expands a set combination back into pair coordinates.
pub fn pv_of_combination(c: &SetCombination, table: &InvariantSetTable) -> PeriodVector {
    let mut v = PeriodVector::constant(c.constant, table.params.np);
    for (i, &x) in c.coeffs.iter().enumerate() {
        if x != 0 {
            for &p in table.set(i as u32 + 1) {
                v.coeffs[p as usize - 1] += x;
            }
        }
    }
    v
}

//! The ordered family of invariant sets `G_1..G_ng` built with a generator factor.

use crate::residues::{fold, pair_orbit, pow_mod, FermatParams, PairIndex};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SetError {
    #[error("factor {q} does not generate the invariant sets mod {n}")]
    InvalidFactor { q: u64, n: u32 },
    #[error("factor {q} is outside 1..{n}")]
    FactorOutOfRange { q: u64, n: u32 },
    #[error("pair {0} is missing or duplicated in the partition")]
    PartitionFailure(PairIndex),
}

/// Invariant sets in natural (doubling) order, with a pair lookup.
///
/// Set and position indices are 1-based throughout.
#[derive(Debug, Clone)]
pub struct InvariantSetTable {
    pub params: FermatParams,
    pub factor: u64,
    sets: Vec<Vec<PairIndex>>,
    pair_to_set: Vec<(u32, u32)>,
    wrap: u32,
}

impl InvariantSetTable {
    pub fn ng(&self) -> u32 {
        self.params.ng
    }

    /// Pairs of set `k` in natural order.
    pub fn set(&self, k: u32) -> &[PairIndex] {
        &self.sets[k as usize - 1]
    }

    pub fn sets(&self) -> impl Iterator<Item = &[PairIndex]> {
        self.sets.iter().map(|s| s.as_slice())
    }

    /// `(set, position)` holding pair `p`.
    pub fn locate_pair(&self, p: PairIndex) -> (u32, u32) {
        self.pair_to_set[p as usize]
    }

    pub fn set_of(&self, p: PairIndex) -> u32 {
        self.pair_to_set[p as usize].0
    }

    /// Position shift picked up when set numbers wrap past `ng`.
    ///
    /// `q^ng` lies in `G_1` at position `wrap + 1`, so renumbering a set from
    /// `ng + j` back to `j` moves every position forward by `wrap`.
    pub fn wrap_shift(&self) -> u32 {
        self.wrap
    }
}

/// Builds the sets `G_k` starting at pair `min(q^(k-1), n - q^(k-1))`.
pub fn build_invariant_sets(
    params: FermatParams,
    factor: u64,
) -> Result<InvariantSetTable, SetError> {
    if params.ng > 1 && !validate_factor(factor, &params)? {
        return Err(SetError::InvalidFactor { q: factor, n: params.n });
    }
    let n = params.n;
    let mut sets = Vec::with_capacity(params.ng as usize);
    let mut pair_to_set = vec![(0u32, 0u32); params.np as usize + 1];
    let mut start = 1u64;
    for k in 1..=params.ng {
        let first = fold(start as u32, n);
        let orbit = pair_orbit(first as u64, n).expect("start pair in range");
        if orbit.len() as u32 != params.set_len() {
            return Err(SetError::PartitionFailure(first));
        }
        for (pos, &p) in orbit.iter().enumerate() {
            if pair_to_set[p as usize].0 != 0 {
                return Err(SetError::PartitionFailure(p));
            }
            pair_to_set[p as usize] = (k, pos as u32 + 1);
        }
        sets.push(orbit);
        start = start * factor % n as u64;
    }
    if let Some(p) = (1..=params.np).find(|&p| pair_to_set[p as usize].0 == 0) {
        return Err(SetError::PartitionFailure(p));
    }
    // For n = 3 the factor is a multiple of n and no wrap is defined.
    let back = fold(start as u32, n);
    let (k, pos) = if back == 0 { (1, 1) } else { pair_to_set[back as usize] };
    if k != 1 {
        return Err(SetError::PartitionFailure(back));
    }
    Ok(InvariantSetTable {
        params,
        factor,
        sets,
        pair_to_set,
        wrap: pos - 1,
    })
}

/// True iff `q^ng` lies in `G^_1` and `q^(ng/2)` does not.
///
/// With a single invariant set every factor is trivially admissible.
pub fn validate_factor(q: u64, params: &FermatParams) -> Result<bool, SetError> {
    let n = params.n;
    if q == 0 || q >= n as u64 {
        return Err(SetError::FactorOutOfRange { q, n });
    }
    if params.ng == 1 {
        return Ok(true);
    }
    // G^_1 consists of the degrees +-2^j, i.e. pairs that are powers of two.
    let in_g1 = |e: u64| fold(e as u32, n).is_power_of_two();
    let ng = params.ng as u64;
    Ok(in_g1(pow_mod(q, ng, n as u64)) && !in_g1(pow_mod(q, ng / 2, n as u64)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn table(n: u64) -> InvariantSetTable {
        build_invariant_sets(FermatParams::new(n).unwrap(), 3).unwrap()
    }

    /// Sets for n = 257 as printed in the classical table, except row 13
    /// whose last entry is corrected from 11 to 111.
    const SETS_257: [[u32; 8]; 16] = [
        [1, 2, 4, 8, 16, 32, 64, 128],
        [3, 6, 12, 24, 48, 96, 65, 127],
        [9, 18, 36, 72, 113, 31, 62, 124],
        [27, 54, 108, 41, 82, 93, 71, 115],
        [81, 95, 67, 123, 11, 22, 44, 88],
        [14, 28, 56, 112, 33, 66, 125, 7],
        [42, 84, 89, 79, 99, 59, 118, 21],
        [126, 5, 10, 20, 40, 80, 97, 63],
        [121, 15, 30, 60, 120, 17, 34, 68],
        [106, 45, 90, 77, 103, 51, 102, 53],
        [61, 122, 13, 26, 52, 104, 49, 98],
        [74, 109, 39, 78, 101, 55, 110, 37],
        [35, 70, 117, 23, 46, 92, 73, 111],
        [105, 47, 94, 69, 119, 19, 38, 76],
        [58, 116, 25, 50, 100, 57, 114, 29],
        [83, 91, 75, 107, 43, 86, 85, 87],
    ];

    #[test]
    fn sets_17() {
        let t = table(17);
        assert_eq!(t.set(1), &[1, 2, 4, 8]);
        assert_eq!(t.set(2), &[3, 6, 5, 7]);
    }

    #[test]
    fn sets_257_full_table() {
        let t = table(257);
        for (k, row) in SETS_257.iter().enumerate() {
            assert_eq!(t.set(k as u32 + 1), row.as_slice(), "row {}", k + 1);
        }
        assert_eq!(t.set(2), &[3, 6, 12, 24, 48, 96, 65, 127]);
    }

    #[test]
    fn erratum_row_13_of_257() {
        // The printed row ends with 11; doubling 73 gives 146 = 257 - 111.
        let t = table(257);
        assert_eq!(t.set(13)[6], 73);
        assert_eq!(t.set(13)[7], 111);
        assert_eq!(crate::residues::pair_of(146, 257), Ok(111));
    }

    #[test]
    fn sets_65537_shape() {
        let t = table(65537);
        assert_eq!(t.sets().count(), 2048);
        assert!(t.sets().all(|s| s.len() == 16));
        assert_eq!(t.wrap_shift(), 3);
    }

    #[test]
    fn locate_pair_examples() {
        let t = table(65537);
        assert_eq!(t.locate_pair(15), (1957, 6));
        assert_eq!(t.locate_pair(255), (1025, 4));
        assert_eq!(t.locate_pair(17), (1117, 12));
        let t = table(257);
        assert_eq!(t.locate_pair(5), (8, 2));
    }

    #[test]
    fn factor_validation() {
        let p = FermatParams::new(257).unwrap();
        assert_eq!(validate_factor(3, &p), Ok(true));
        assert_eq!(validate_factor(2, &p), Ok(false));
        assert_eq!(validate_factor(9, &p), Ok(false));
        assert!(validate_factor(0, &p).is_err());
        assert!(validate_factor(257, &p).is_err());
        assert!(matches!(
            build_invariant_sets(p, 2),
            Err(SetError::InvalidFactor { .. })
        ));
    }

    #[test]
    fn valid_factors_are_exactly_even_indexed_sets() {
        for n in [17u64, 257] {
            let t = table(n);
            for q in 1..n {
                let (k, _) = t.locate_pair(fold(q as u32, n as u32));
                assert_eq!(validate_factor(q, &t.params).unwrap(), k % 2 == 0, "q={q}");
            }
        }
    }

    #[test]
    fn single_set_moduli() {
        for n in [3u64, 5] {
            let p = FermatParams::new(n).unwrap();
            let t = build_invariant_sets(p, 3).unwrap();
            assert_eq!(t.ng(), 1);
            assert_eq!(t.set(1).len() as u32, p.set_len());
        }
    }

    fn same_partition(a: &InvariantSetTable, b: &InvariantSetTable) -> bool {
        let mut x: Vec<Vec<u32>> = a.sets().map(sorted).collect();
        let mut y: Vec<Vec<u32>> = b.sets().map(sorted).collect();
        x.sort();
        y.sort();
        x == y
    }

    fn sorted(s: &[u32]) -> Vec<u32> {
        let mut v = s.to_vec();
        v.sort_unstable();
        v
    }

    #[test]
    fn every_valid_factor_gives_the_same_partition_257() {
        let base = table(257);
        for q in 2..257u64 {
            if validate_factor(q, &base.params).unwrap() {
                let t = build_invariant_sets(base.params, q).unwrap();
                assert!(same_partition(&base, &t), "q={q}");
            }
        }
    }

    #[test]
    fn partition_and_lookup_roundtrip() {
        for n in [17u64, 257, 65537] {
            let t = table(n);
            let mut seen = vec![false; t.params.np as usize + 1];
            for k in 1..=t.ng() {
                for (i, &p) in t.set(k).iter().enumerate() {
                    assert!(!seen[p as usize]);
                    seen[p as usize] = true;
                    assert_eq!(t.locate_pair(p), (k, i as u32 + 1));
                }
            }
            assert!(seen[1..].iter().all(|&b| b));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn valid_factors_65537_reproduce_partition(k in 1u32..=1024, j in 0u32..32) {
            let base = table(65537);
            // Even-indexed sets hold the admissible factors.
            let start = base.set(2 * k)[0] as u64;
            let q = start * pow_mod(2, j as u64, 65537) % 65537;
            prop_assert!(validate_factor(q, &base.params).unwrap());
            let t = build_invariant_sets(base.params, q).unwrap();
            prop_assert!(same_partition(&base, &t));
        }
    }
}

//! Modular arithmetic kernel: doubling orbits, the wrap-around index `rho`,
//! and conversion between element degrees and pair numbers.

use thiserror::Error;

/// Degree `k` of an element `z^k`, in `1..n`.
pub type ElementDegree = u32;
/// Number `k` of a pair `p_k = z^k + z^(n-k)`, in `1..=(n-1)/2`.
pub type PairIndex = u32;

/// Largest Fermat exponent whose tables still fit comfortably in memory.
pub const MAX_NU: u32 = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResidueError {
    #[error("{0} is not of the form 2^(2^v)+1")]
    NotFermatShaped(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is too large for materialized tables")]
    TooLarge(u64),
    #[error("rho({k}, {m}) requires positive arguments")]
    NonPositive { k: i64, m: i64 },
    #[error("degree {e} is outside 1..{n}")]
    DegreeOutOfRange { e: u64, n: u32 },
    #[error("pair {p} is outside 1..={np}")]
    PairOutOfRange { p: u64, np: u32 },
}

/// Parameters of a Fermat prime `n = 2^(2^nu) + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FermatParams {
    pub nu: u32,
    pub n: u32,
    /// Number of invariant sets, `2^(2^nu - nu - 1)`.
    pub ng: u32,
    /// Number of pairs, `(n-1)/2`.
    pub np: u32,
    /// Length of a doubling orbit, `2^(nu+1)`.
    pub orbit_len: u32,
}

impl FermatParams {
    /// Validates `n` as a Fermat prime by shape and trial division.
    pub fn new(n: u64) -> Result<Self, ResidueError> {
        let nu = fermat_exponent(n).ok_or(ResidueError::NotFermatShaped(n))?;
        if !is_prime(n) {
            return Err(ResidueError::NotPrime(n));
        }
        Self::from_exponent(nu)
    }

    /// Accepts any Fermat-shaped `n` without the primality check.
    ///
    /// Only exponents up to [`MAX_NU`] can actually be tabulated, so for
    /// larger ones this still fails, with [`ResidueError::TooLarge`].
    pub fn assume_prime(n: u64) -> Result<Self, ResidueError> {
        let nu = fermat_exponent(n).ok_or(ResidueError::NotFermatShaped(n))?;
        Self::from_exponent(nu)
    }

    fn from_exponent(nu: u32) -> Result<Self, ResidueError> {
        if nu > MAX_NU {
            return Err(ResidueError::TooLarge((1u64 << (1u64 << nu.min(5))) + 1));
        }
        let e = 1u32 << nu;
        let n = (1u32 << e) + 1;
        Ok(FermatParams {
            nu,
            n,
            ng: 1 << (e - nu - 1),
            np: (n - 1) / 2,
            orbit_len: 1 << (nu + 1),
        })
    }

    /// Number of pairs in one invariant set, `2^nu`.
    pub fn set_len(&self) -> u32 {
        1 << self.nu
    }

    /// `log2(ng)`: the number of F-split levels.
    pub fn f_levels(&self) -> u32 {
        self.ng.trailing_zeros()
    }
}

fn fermat_exponent(n: u64) -> Option<u32> {
    (0..6).find(|&nu| {
        let e = 1u64 << nu;
        e < 64 && n == (1u64 << e) + 1
    })
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `m` when `m | k`, otherwise `k mod m`. The result lies in `1..=m`.
///
/// # Panics
/// Panics when `m == 0` or `k == 0`; see [`checked_rho`] for a fallible form.
#[inline]
pub fn rho(k: u32, m: u32) -> u32 {
    assert!(k > 0 && m > 0, "rho requires positive arguments");
    let r = k % m;
    if r == 0 {
        m
    } else {
        r
    }
}

pub fn checked_rho(k: i64, m: i64) -> Result<u32, ResidueError> {
    if k <= 0 || m <= 0 || m > u32::MAX as i64 {
        return Err(ResidueError::NonPositive { k, m });
    }
    let r = k % m;
    Ok(if r == 0 { m as u32 } else { r as u32 })
}

#[inline]
pub(crate) fn fold(e: u32, n: u32) -> u32 {
    if 2 * e > n {
        n - e
    } else {
        e
    }
}

/// Pair number of the element `z^e`: `min(e, n-e)`.
pub fn pair_of(e: u64, n: u32) -> Result<PairIndex, ResidueError> {
    if e == 0 || e >= n as u64 {
        return Err(ResidueError::DegreeOutOfRange { e, n });
    }
    Ok(fold(e as u32, n))
}

pub fn pow_mod(base: u64, mut exp: u64, n: u64) -> u64 {
    let mut b = base % n;
    let mut acc = 1 % n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % n;
        }
        b = b * b % n;
        exp >>= 1;
    }
    acc
}

/// Degrees `s, 2s, 4s, ...` mod `n`, stopping before `start` repeats.
pub fn doubling_orbit(start: u64, n: u32) -> Result<Vec<ElementDegree>, ResidueError> {
    if start == 0 || start >= n as u64 {
        return Err(ResidueError::DegreeOutOfRange { e: start, n });
    }
    let start = start as u32;
    let mut out = vec![start];
    let mut e = (2 * start as u64 % n as u64) as u32;
    while e != start {
        out.push(e);
        e = (2 * e as u64 % n as u64) as u32;
    }
    Ok(out)
}

/// Pair numbers visited by doubling from pair `start`, stopping before it repeats.
pub fn pair_orbit(start: u64, n: u32) -> Result<Vec<PairIndex>, ResidueError> {
    let np = (n - 1) / 2;
    if start == 0 || start > np as u64 {
        return Err(ResidueError::PairOutOfRange { p: start, np });
    }
    let start = start as u32;
    let mut out = vec![start];
    let mut r = fold((2 * start as u64 % n as u64) as u32, n);
    while r != start {
        out.push(r);
        r = fold((2 * r as u64 % n as u64) as u32, n);
    }
    Ok(out)
}

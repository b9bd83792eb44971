//! Which regular polygons can be drawn with straightedge and compass.

use std::fmt;

/// The known Fermat primes.
pub const FERMAT_PRIMES: [u64; 5] = [3, 5, 17, 257, 65537];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constructibility {
    pub n: u64,
    /// Exponent of 2 in `n`.
    pub twos: u32,
    /// Known Fermat primes dividing `n`, with multiplicity.
    pub fermat: Vec<(u64, u32)>,
    /// What is left after removing 2s and known Fermat primes.
    pub rest: u64,
}

impl Constructibility {
    pub fn is_constructible(&self) -> bool {
        self.n >= 3 && self.rest == 1 && self.fermat.iter().all(|&(_, e)| e == 1)
    }
}

/// `n = 2^a * p_1 * ... * p_l` with distinct Fermat primes `p_i`.
pub fn constructible(n: u64) -> Constructibility {
    let mut rest = n.max(1);
    let twos = rest.trailing_zeros();
    rest >>= twos;
    let mut fermat = Vec::new();
    for p in FERMAT_PRIMES {
        let mut e = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        if e > 0 {
            fermat.push((p, e));
        }
    }
    Constructibility { n, twos, fermat, rest }
}

/// `170 = 2 * 5 * 17`.
impl fmt::Display for Constructibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.twos {
            0 => {}
            1 => parts.push("2".to_string()),
            e => parts.push(format!("2^{e}")),
        }
        for &(p, e) in &self.fermat {
            parts.push(if e == 1 { p.to_string() } else { format!("{p}^{e}") });
        }
        if self.rest != 1 || parts.is_empty() {
            parts.push(self.rest.to_string());
        }
        write!(f, "{} = {}", self.n, parts.join(" * "))
    }
}

//! High-precision helpers over `astro_float::BigFloat`: direct cosine sums and
//! exact decimal conversion.

use astro_float::{BigFloat, Consts, RoundingMode, Sign, Word};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use thiserror::Error;

pub const RM: RoundingMode = RoundingMode::ToEven;

/// Default working precision for a modulus.
pub fn default_precision(n: u32) -> usize {
    if n > 257 {
        512
    } else {
        128
    }
}

/// Rounds a requested precision up to whole machine words.
pub fn word_precision(bits: usize) -> usize {
    bits.max(64).div_ceil(64) * 64
}

pub fn int(v: i64, p: usize) -> BigFloat {
    BigFloat::from_i64(v, p)
}

/// `2^e` at precision `p`.
pub fn pow2(e: i64, p: usize) -> BigFloat {
    let mut x = BigFloat::from_word(1, p);
    x.set_exponent(e as i32 + 1);
    x
}

pub fn cmp(a: &BigFloat, b: &BigFloat) -> Ordering {
    match a.cmp(b) {
        Some(c) if c < 0 => Ordering::Less,
        Some(0) => Ordering::Equal,
        Some(_) => Ordering::Greater,
        None => panic!("comparison with NaN"),
    }
}

/// `|a - b| < 2^e`.
pub fn close(a: &BigFloat, b: &BigFloat, e: i64, p: usize) -> bool {
    cmp(&a.sub(b, p, RM).abs(), &pow2(e, p)) == Ordering::Less
}

pub fn to_f64(x: &BigFloat) -> f64 {
    match x.as_raw_parts() {
        Some((words, _, sign, e, _)) if !words.is_empty() => {
            let top = *words.last().unwrap() as f64 / 18446744073709551616.0;
            let mag = top * 2f64.powi(e);
            if sign == Sign::Neg {
                -mag
            } else {
                mag
            }
        }
        _ => 0.0,
    }
}

pub fn pi(p: usize) -> BigFloat {
    Consts::new().expect("constant cache").pi(p, RM)
}

/// `2cos(2 pi k / n)` for every pair `k = 1..=(n-1)/2`, computed directly.
#[derive(Debug, Clone)]
pub struct CosineTable {
    pub n: u32,
    pub precision: usize,
    values: Vec<BigFloat>,
}

impl CosineTable {
    pub fn new(n: u32, precision: usize) -> Self {
        let p = word_precision(precision);
        let guard = p + 64;
        let mut cc = Consts::new().expect("constant cache");
        let two_pi = cc.pi(guard, RM).mul(&int(2, guard), guard, RM);
        let step = two_pi.div(&int(n as i64, guard), guard, RM);
        let two = int(2, guard);
        let np = (n - 1) / 2;
        let mut values = Vec::with_capacity(np as usize + 1);
        values.push(int(0, p));
        for k in 1..=np {
            let angle = step.mul(&int(k as i64, guard), guard, RM);
            let mut c = angle.cos(guard, RM, &mut cc).mul(&two, guard, RM);
            c.set_precision(p, RM).expect("precision change");
            values.push(c);
        }
        CosineTable {
            n,
            precision: p,
            values,
        }
    }

    /// Value of the pair `p_k`.
    pub fn pair(&self, k: u32) -> &BigFloat {
        &self.values[k as usize]
    }

    /// Sum of the given pairs.
    pub fn sum<I: IntoIterator<Item = u32>>(&self, pairs: I) -> BigFloat {
        let p = self.precision;
        pairs
            .into_iter()
            .fold(int(0, p), |acc, k| acc.add(&self.values[k as usize], p, RM))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecimalError {
    #[error("malformed decimal literal {0:?}")]
    Malformed(String),
}

fn mantissa(x: &BigFloat) -> Option<(BigUint, bool, i64)> {
    let (words, _, sign, e, _) = x.as_raw_parts()?;
    if x.is_zero() {
        return None;
    }
    let mut digits = Vec::with_capacity(words.len() * 2);
    for &w in words {
        digits.push(w as u32);
        digits.push((w >> 32) as u32);
    }
    let m = BigUint::new(digits);
    Some((m, sign == Sign::Neg, e as i64 - 64 * words.len() as i64))
}

/// Exact decimal expansion of a binary float; no rounding happens.
pub fn to_decimal_exact(x: &BigFloat) -> String {
    let Some((m, neg, e2)) = mantissa(x) else {
        return "0".to_string();
    };
    let sign = if neg { "-" } else { "" };
    if e2 >= 0 {
        return format!("{sign}{}", m << e2 as usize);
    }
    let k = (-e2) as u32;
    let digits = (m * BigUint::from(5u32).pow(k)).to_string();
    let k = k as usize;
    let (int_part, frac) = if digits.len() > k {
        digits.split_at(digits.len() - k)
    } else {
        ("0", digits.as_str())
    };
    let frac = format!("{:0>width$}", frac, width = k);
    let frac = frac.trim_end_matches('0');
    if frac.is_empty() {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac}")
    }
}

/// Parses a decimal literal; exact whenever the literal is a dyadic rational
/// that fits in `precision` bits, correctly rounded otherwise.
pub fn from_decimal(s: &str, precision: usize) -> Result<BigFloat, DecimalError> {
    let p = word_precision(precision);
    let bad = || DecimalError::Malformed(s.to_string());
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (ip, fp) = body.split_once('.').unwrap_or((body, ""));
    if ip.is_empty() || !ip.bytes().all(|b| b.is_ascii_digit()) || !fp.bytes().all(|b| b.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits: BigUint = format!("{ip}{fp}").parse().map_err(|_| bad())?;
    let sign = if neg { Sign::Neg } else { Sign::Pos };
    if digits.is_zero() {
        return Ok(int(0, p));
    }
    let d = fp.len() as u32;
    let five = BigUint::from(5u32).pow(d);
    if (&digits % &five).is_zero() {
        let m = &digits / &five;
        if m.bits() as usize <= p {
            let mut words: Vec<Word> = m.to_u64_digits();
            words.resize(p / 64, 0);
            let e = p as i64 - d as i64;
            return Ok(BigFloat::from_words(&words, sign, e as i32));
        }
    }
    let guard = p + 64;
    let num = big_to_float(&digits, guard);
    let den = big_to_float(&BigUint::from(10u32).pow(d), guard);
    let mut q = num.div(&den, guard, RM);
    q.set_precision(p, RM).expect("precision change");
    if neg {
        q = q.neg();
    }
    Ok(q)
}

fn big_to_float(v: &BigUint, p: usize) -> BigFloat {
    let words: Vec<Word> = v.to_u64_digits();
    let bits = words.len() * 64;
    let mut x = BigFloat::from_words(&words, Sign::Pos, bits as i32);
    x.set_precision(p, RM).expect("precision change");
    x
}

/// Decimal rounded to `places` fractional digits (half away from zero).
pub fn to_decimal_rounded(x: &BigFloat, places: usize) -> String {
    let Some((m, neg, e2)) = mantissa(x) else {
        return format!("{:.*}", places, 0.0);
    };
    let scaled = m * BigUint::from(10u32).pow(places as u32);
    let r = if e2 >= 0 {
        scaled << e2 as usize
    } else {
        let sh = (-e2) as usize;
        (scaled + (BigUint::one() << (sh - 1))) >> sh
    };
    let s = format!("{:0>width$}", r.to_string(), width = places + 1);
    let (ip, fp) = s.split_at(s.len() - places);
    let sign = if neg && !r.is_zero() { "-" } else { "" };
    if places == 0 {
        format!("{sign}{ip}")
    } else {
        format!("{sign}{ip}.{fp}")
    }
}

//! Exact non-negative rationals for the cluster thresholds.
//!
//! `e >= beta * |M|` sits exactly on its boundary in many small instances
//! (`1 >= 0.5 * 2`), so thresholds are parsed from decimal text into
//! numerator/denominator pairs and compared in integer arithmetic.

use std::fmt;
use std::str::FromStr;

use crate::error::{CgaError, Result};

#[derive(Clone, Copy, Debug)]
pub struct Fraction {
    num: u64,
    den: u64,
}

impl Fraction {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(CgaError::domain("fraction with zero denominator"));
        }
        let g = gcd(num, den);
        Ok(Fraction {
            num: num / g,
            den: den / g,
        })
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `count >= self * size`, exactly.
    pub fn count_reaches(&self, count: usize, size: usize) -> bool {
        count as u128 * self.den as u128 >= self.num as u128 * size as u128
    }

    /// `count <= self * size`, exactly.
    pub fn count_within(&self, count: usize, size: usize) -> bool {
        count as u128 * self.den as u128 <= self.num as u128 * size as u128
    }

    pub fn is_unit_interval(&self) -> bool {
        self.num > 0 && self.num <= self.den
    }
}

impl PartialEq for Fraction {
    fn eq(&self, other: &Self) -> bool {
        self.num as u128 * other.den as u128 == other.num as u128 * self.den as u128
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            return write!(f, "{}", self.num);
        }
        // Decimal when the denominator is 2^a 5^b, otherwise num/den.
        let mut d = self.den;
        let (mut twos, mut fives) = (0u32, 0u32);
        while d.is_multiple_of(2) {
            d /= 2;
            twos += 1;
        }
        while d.is_multiple_of(5) {
            d /= 5;
            fives += 1;
        }
        if d != 1 {
            return write!(f, "{}/{}", self.num, self.den);
        }
        let digits = twos.max(fives);
        let scale = 10u128.pow(digits);
        let scaled = self.num as u128 * scale / self.den as u128;
        let int = scaled / scale;
        let frac = scaled % scale;
        let frac = format!("{:0width$}", frac, width = digits as usize);
        write!(f, "{}.{}", int, frac.trim_end_matches('0'))
    }
}

impl FromStr for Fraction {
    type Err = CgaError;

    /// Accepts `3`, `0.25`, `.5` and `1/3`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || CgaError::domain(format!("not a non-negative decimal or fraction: {s:?}"));
        if let Some((n, d)) = s.split_once('/') {
            let n: u64 = n.trim().parse().map_err(|_| bad())?;
            let d: u64 = d.trim().parse().map_err(|_| bad())?;
            return Fraction::new(n, d);
        }
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if int.is_empty() && frac.is_empty() {
            return Err(bad());
        }
        if !int.chars().chain(frac.chars()).all(|ch| ch.is_ascii_digit()) {
            return Err(bad());
        }
        let frac = frac.trim_end_matches('0');
        if frac.len() > 18 {
            return Err(bad());
        }
        let den = 10u64.pow(frac.len() as u32);
        let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
        let frac_val: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        let num = int
            .checked_mul(den)
            .and_then(|v| v.checked_add(frac_val))
            .ok_or_else(bad)?;
        Fraction::new(num, den)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

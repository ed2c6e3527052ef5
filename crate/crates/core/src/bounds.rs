//! Closed-form thresholds, count bounds and probabilistic tail tools.
//!
//! Products of many small probabilities are evaluated in log space; each
//! function returning a probability that can underflow also exposes its
//! natural logarithm.

use statrs::function::factorial::ln_binomial;

use crate::error::{CgaError, Result};
use crate::tree::{pairs_at_height, TreeParams};

/// A value together with its natural log, for quantities that underflow.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogValue {
    pub value: f64,
    pub ln: f64,
}

impl LogValue {
    fn from_ln(ln: f64) -> Self {
        LogValue { value: ln.exp(), ln }
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(CgaError::domain(format!("alpha={alpha} must lie in (0, 1]")));
    }
    Ok(())
}

fn check_bc(b: usize, c: f64) -> Result<()> {
    if b < 2 {
        return Err(CgaError::domain(format!("b={b} must be at least 2")));
    }
    if !(c.is_finite() && c > 1.0) {
        return Err(CgaError::domain(format!("c={c} must exceed 1")));
    }
    Ok(())
}

/// `m* = ln b / (alpha ln c)`: the size below which externally sparse
/// sets vanish.
pub fn m_star(alpha: f64, b: usize, c: f64) -> Result<f64> {
    check_alpha(alpha)?;
    check_bc(b, c)?;
    Ok((b as f64).ln() / (alpha * c.ln()))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThresholdHeights {
    /// `(1/2 - eps) ln ln n / ln b`
    pub h_star: f64,
    /// `(1/2 + eps) ln ln n / ln b`
    pub h_epsilon: f64,
    /// `(ln n)^(1/2) / ln b`, the height bound of a tall thick set.
    pub tall_height: f64,
}

pub fn threshold_heights(p: &TreeParams, epsilon: f64) -> Result<ThresholdHeights> {
    if p.n() < 3 {
        return Err(CgaError::domain(format!("n={} < 3 leaves ln ln n undefined", p.n())));
    }
    if !(epsilon >= 0.0 && epsilon.is_finite()) {
        return Err(CgaError::domain(format!("epsilon={epsilon} must be non-negative")));
    }
    let ln_n = ln_n(p);
    let ln_b = (p.b() as f64).ln();
    let lnln = ln_n.ln();
    Ok(ThresholdHeights {
        h_star: (0.5 - epsilon) * lnln / ln_b,
        h_epsilon: (0.5 + epsilon) * lnln / ln_b,
        tall_height: ln_n.sqrt() / ln_b,
    })
}

/// `ln n = H ln b`, exact in the tree parameters.
pub fn ln_n(p: &TreeParams) -> f64 {
    p.height() as f64 * (p.b() as f64).ln()
}

/// Existence constants of the complete-cluster count guarantee.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThresholdConstants {
    pub m_star: f64,
    pub h_star: f64,
    pub h_epsilon: f64,
    pub gamma: f64,
    /// Least integer `h` with `b^h > m*`.
    pub h_min: u32,
    pub epsilon: f64,
}

pub fn threshold_constants(p: &TreeParams, alpha: f64, epsilon: f64) -> Result<ThresholdConstants> {
    let m_star = m_star(alpha, p.b(), p.c())?;
    let heights = threshold_heights(p, epsilon)?;
    let (h_min, gamma) = gamma(alpha, p.b(), p.c())?;
    Ok(ThresholdConstants {
        m_star,
        h_star: heights.h_star,
        h_epsilon: heights.h_epsilon,
        gamma,
        h_min,
        epsilon,
    })
}

/// `gamma = (alpha ln c / (4 ln b)) (b^h_min - m*) / b^h_min`, with
/// `h_min` the least integer for which `b^h_min > m*`.
pub fn gamma(alpha: f64, b: usize, c: f64) -> Result<(u32, f64)> {
    let m = m_star(alpha, b, c)?;
    let mut h_min = 0u32;
    let mut size = 1f64;
    while size <= m {
        size *= b as f64;
        h_min += 1;
    }
    let rate = alpha * c.ln() / (4.0 * (b as f64).ln());
    Ok((h_min, rate * (size - m) / size))
}

/// Expected-clique lower bound `(n / b^h) c^(-h b^(2h))`.
pub fn clique_count_lower_bound(h: u32, p: &TreeParams) -> Result<LogValue> {
    if h > p.height() {
        return Err(CgaError::domain(format!("h={h} exceeds H={}", p.height())));
    }
    let ln_b = (p.b() as f64).ln();
    let ln_sets = (p.height() - h) as f64 * ln_b;
    let exponent = h as f64 * (2.0 * h as f64 * ln_b).exp();
    Ok(LogValue::from_ln(ln_sets - exponent * p.c().ln()))
}

/// Probability that a fixed complete height-`h` set is a clique:
/// `prod_j (c^-j)^pairs_at_height(j, h)`. Equals 1 for `h = 0`.
pub fn exact_clique_probability(h: u32, p: &TreeParams) -> Result<LogValue> {
    if h > p.height() {
        return Err(CgaError::domain(format!("h={h} exceeds H={}", p.height())));
    }
    let ln_c = p.c().ln();
    let mut ln = 0.0;
    for j in 1..=h {
        ln -= pairs_at_height(j, h, p)? as f64 * j as f64 * ln_c;
    }
    Ok(LogValue::from_ln(ln))
}

/// Exponent `(alpha ln c / (4 ln b)) (m - m*)` of the cluster-count
/// guarantee, for real `m`.
pub fn cluster_count_exponent(m: f64, alpha: f64, b: usize, c: f64) -> Result<f64> {
    let ms = m_star(alpha, b, c)?;
    Ok(alpha * c.ln() / (4.0 * (b as f64).ln()) * (m - ms))
}

/// `min(family_size, (ln n)^((alpha ln c / (4 ln b)) (m - m*)))` for
/// `m > m*`.
pub fn cluster_count_guarantee(m: u64, p: &TreeParams, alpha: f64, family_size: u64) -> Result<f64> {
    let ms = m_star(alpha, p.b(), p.c())?;
    if (m as f64) <= ms {
        return Err(CgaError::domain(format!(
            "guarantee is vacuous for m={m} <= m*={ms}"
        )));
    }
    let exponent = cluster_count_exponent(m as f64, alpha, p.b(), p.c())?;
    Ok(ln_n(p).powf(exponent).min(family_size as f64))
}

/// Right-hand side of the `h'` condition used for the E2 constant,
/// `(4 alpha m (1 + ln c) - ln(c^(alpha m) - b)) / (alpha m ln c - ln b)`.
/// Diagnostic only; requires `c^(alpha m) > b`, i.e. `m > m*`.
pub fn h_prime_threshold(m: f64, alpha: f64, b: usize, c: f64) -> Result<f64> {
    check_alpha(alpha)?;
    check_bc(b, c)?;
    let am = alpha * m;
    let gap = c.powf(am) - b as f64;
    if gap <= 0.0 {
        return Err(CgaError::domain(format!("c^(alpha m) <= b for m={m}")));
    }
    Ok((4.0 * am * (1.0 + c.ln()) - gap.ln()) / (am * c.ln() - (b as f64).ln()))
}

/// Per-set upper bound on a size-`m` set being externally sparse,
/// `exp(-(1/2) n^(1 - alpha m log_b c))`.
pub fn sparse_set_bound(m: u64, alpha: f64, p: &TreeParams) -> Result<LogValue> {
    check_alpha(alpha)?;
    let log_b_c = p.c().ln() / (p.b() as f64).ln();
    let exponent = 1.0 - alpha * m as f64 * log_b_c;
    Ok(LogValue::from_ln(-0.5 * (exponent * ln_n(p)).exp()))
}

fn check_prob(prob: f64) -> Result<()> {
    if !(prob > 0.0 && prob < 1.0) {
        return Err(CgaError::domain(format!("probability {prob} must lie in (0, 1)")));
    }
    Ok(())
}

/// `ceil(t p n)`, absorbing float noise of a few ulps so that products
/// meant to be integral (`2 * 0.1 * 10`) are not rounded up.
pub fn tail_threshold(n: u64, prob: f64, t: f64) -> u64 {
    let x = t * prob * n as f64;
    let r = x.round();
    if (x - r).abs() <= 1e-9 * x.abs().max(1.0) {
        r as u64
    } else {
        x.ceil() as u64
    }
}

/// Binomial tail bound
/// `Pr(Bin(n,p) >= t p n) < t/(t-1) C(n,s) p^s (1-p)^(n-s)`,
/// `s = ceil(t p n)`, defined for `t > 1` and `1 <= s <= n - 1`.
pub fn binom_tail_bound(n: u64, prob: f64, t: f64) -> Result<LogValue> {
    check_prob(prob)?;
    if !(t > 1.0 && t.is_finite()) {
        return Err(CgaError::domain(format!("t={t} must exceed 1")));
    }
    let s = tail_threshold(n, prob, t);
    if s < 1 || s + 1 > n {
        return Err(CgaError::domain(format!("s={s} outside [1, n-1] for n={n}")));
    }
    let ln = (t / (t - 1.0)).ln()
        + ln_binomial(n, s)
        + s as f64 * prob.ln()
        + (n - s) as f64 * (-prob).ln_1p();
    Ok(LogValue::from_ln(ln))
}

/// Simplified tail bound `Pr(X >= s) <= 2 exp(s (ln n + 1 - ln s + ln p))`,
/// valid for `s >= 2 p n`.
pub fn binom_tail_simple(n: u64, prob: f64, s: f64) -> Result<LogValue> {
    check_prob(prob)?;
    if !(s > 0.0 && s >= 2.0 * prob * n as f64) {
        return Err(CgaError::domain(format!("s={s} must be positive and at least 2pn")));
    }
    let ln = std::f64::consts::LN_2 + s * ((n as f64).ln() + 1.0 - s.ln() + prob.ln());
    Ok(LogValue::from_ln(ln))
}

/// The intermediate form `2 (n e p / s)^s`.
pub fn binom_tail_intermediate(n: u64, prob: f64, s: f64) -> Result<LogValue> {
    check_prob(prob)?;
    if !(s > 0.0 && s >= 2.0 * prob * n as f64) {
        return Err(CgaError::domain(format!("s={s} must be positive and at least 2pn")));
    }
    let ratio = n as f64 * std::f64::consts::E * prob / s;
    Ok(LogValue::from_ln(std::f64::consts::LN_2 + s * ratio.ln()))
}

/// `Pr(Bin(n,p) >= s)` by direct summation of the pmf in log space.
pub fn binomial_upper_tail(n: u64, prob: f64, s: u64) -> f64 {
    if s == 0 {
        return 1.0;
    }
    if s > n || prob <= 0.0 {
        return 0.0;
    }
    if prob >= 1.0 {
        return 1.0;
    }
    let (lp, lq) = (prob.ln(), (-prob).ln_1p());
    let terms: Vec<f64> = (s..=n)
        .map(|k| ln_binomial(n, k) + k as f64 * lp + (n - k) as f64 * lq)
        .collect();
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = terms.iter().map(|&x| (x - max).exp()).sum();
    (max + sum.ln()).exp().min(1.0)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JansonBounds {
    /// Bound on `Pr(X >= mu + t)`: `exp(-t^2 / (2 (mu + t/3)))`.
    pub upper: f64,
    /// Bound on `Pr(X <= mu - t)`: `exp(-t^2 / (2 mu))`.
    pub lower: f64,
}

/// Janson's tail bounds for a sum of independent Bernoulli variables with
/// mean `mu`.
pub fn janson_bounds(mu: f64, t: f64) -> Result<JansonBounds> {
    if !(mu > 0.0 && mu.is_finite()) {
        return Err(CgaError::domain(format!("mu={mu} must be positive")));
    }
    if !(t >= 0.0 && t.is_finite()) {
        return Err(CgaError::domain(format!("t={t} must be non-negative")));
    }
    Ok(JansonBounds {
        upper: (-t * t / (2.0 * (mu + t / 3.0))).exp(),
        lower: (-t * t / (2.0 * mu)).exp(),
    })
}

/// `E[X_S]` for a complete height-`h` set: `sum_j pairs_at_height(j,h) c^-j`.
pub fn expected_internal_edges(h: u32, p: &TreeParams) -> Result<f64> {
    if h < 1 || h > p.height() {
        return Err(CgaError::domain(format!("h={h} outside [1, H={}]", p.height())));
    }
    let mut total = 0.0;
    for j in 1..=h {
        total += pairs_at_height(j, h, p)? as f64 * p.c().powi(-(j as i32));
    }
    Ok(total)
}

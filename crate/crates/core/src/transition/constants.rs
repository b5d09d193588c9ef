//! Closed-form contraction constants.
//!
//! ```text
//!   f₀(d) = d (I₀(d) − 1),   f₁(d) = d I₁(d),   K(d) = f₀(d) + f₁(d)
//!
//!   C_N(d) = (1 + d/N)^{−N} [e^d − d + K(d)/N]                → C(d) = 1 − d e^{−d}
//!   𝒞_N(d) = (1 + d/N)^{−N} [1 + (1+d)² (e^d − d − 1 + K(d)/N)]
//!   𝒞(d)   = e^{−d} [1 + (1+d)² (e^d − d − 1)]
//! ```
//!
//! `C_N` bounds the ℓ₁ gain of `N` damped steps on the complement of
//! `{e, v₋}`; `𝒞` bounds the shrinking of the invariant square over one time
//! unit. `𝒞(0) = 1`, `𝒞'(0) = −1`, and `𝒞` crosses 1 again at `d*`.

use crate::error::{Error, Result};

/// Modified Bessel function `I_ν(x)` from its power series
/// `Σ (x/2)^{2m+ν} / (m! (m+ν)!)`.
pub fn bessel_i(order: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    let mut term = (1..=order).fold(1.0, |acc, k| acc * half / k as f64);
    let mut sum = term;
    let q = half * half;
    let mut m = 0u32;
    loop {
        m += 1;
        term *= q / (m as f64 * (m + order) as f64);
        sum += term;
        if term <= 1e-17 * sum || term == 0.0 {
            return sum;
        }
    }
}

/// `I₀(x) − 1` without cancellation for small `x`.
pub fn bessel_i0_minus_one(x: f64) -> f64 {
    let q = 0.25 * x * x;
    if q == 0.0 {
        return 0.0;
    }
    let mut term = q;
    let mut sum = term;
    let mut m = 1u32;
    loop {
        m += 1;
        term *= q / (m as f64 * m as f64);
        sum += term;
        if term <= 1e-17 * sum {
            return sum;
        }
    }
}

/// `(f₀(d), f₁(d))`.
pub fn bessel_terms(d: f64) -> (f64, f64) {
    (d * bessel_i0_minus_one(d), d * bessel_i(1, d))
}

/// `K(d) = f₀(d) + f₁(d)`.
pub fn k_of_d(d: f64) -> f64 {
    let (f0, f1) = bessel_terms(d);
    f0 + f1
}

/// `C(d) = 1 − d e^{−d}`.
pub fn c_limit(d: f64) -> f64 {
    1.0 - d * (-d).exp()
}

/// `𝒞(d) = e^{−d}(1 + (1+d)²(e^d − d − 1))`.
pub fn cal_c(d: f64) -> f64 {
    (-d).exp() * (1.0 + (1.0 + d).powi(2) * (d.exp_m1() - d))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContractionConstants {
    pub c_n: f64,
    pub c_limit: f64,
    pub cal_c_n: f64,
    pub cal_c: f64,
}

pub fn contraction_constants(n: usize, d: f64) -> ContractionConstants {
    let nf = n as f64;
    let damping = (-nf * (d / nf).ln_1p()).exp();
    let k = k_of_d(d) / nf;
    ContractionConstants {
        c_n: damping * (d.exp() - d + k),
        c_limit: c_limit(d),
        cal_c_n: damping * (1.0 + (1.0 + d).powi(2) * (d.exp_m1() - d + k)),
        cal_c: cal_c(d),
    }
}

/// The positive root of `𝒞(d) = 1`, below which the invariant square contracts.
pub fn d_star() -> Result<f64> {
    let (mut lo, mut hi) = (1e-3, 2.0);
    let f = |d: f64| cal_c(d) - 1.0;
    if !(f(lo) < 0.0 && f(hi) > 0.0) {
        return Err(Error::BracketFailure { lo, hi });
    }
    while hi - lo > 1e-14 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let root = 0.5 * (lo + hi);
    let below_one = (1..=1024).all(|i| cal_c(root * i as f64 / 1025.0) < 1.0);
    if !below_one {
        return Err(Error::BracketFailure { lo: 0.0, hi: root });
    }
    Ok(root)
}

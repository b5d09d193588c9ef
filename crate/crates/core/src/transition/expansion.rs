//! Exact binomial expansion of `N` uniformly damped steps.
//!
//! With `γ = d/N`, expanding the product and collecting permutation powers gives
//!
//! ```text
//!   [B(0) + γB₁]^N = B(0)^N + d P̂ + R_N(d)
//!
//!   R_N(d) = Σ_{j=0}^{N−1} ζ_j B₁ B(0)^{N−2j−1} + Σ_{j=1}^{N−1} η_j B(0)^{2j−N}
//!
//!   ζ_j = Σ_{ℓ=1}^{min(j, N−j−1)} γ^{2ℓ+1} C(j,ℓ) C(N−j−1,ℓ)
//!   η_j = Σ_{i=1}^{min(j, N−j)}   γ^{2i}   C(j,i) C(N−j−1,i−1)
//! ```
//!
//! and the coefficient mass obeys `Σζ + Ση ≤ e^d − d − 1 + K(d)/N`.

use super::{apply_b1, apply_b2, hat_p_apply, FreePermutation, GammaVector};
use crate::error::{check_len, Result};
use crate::transition::constants::k_of_d;

/// `ζ_{j,N}(d)`, summed with the ratio recurrence of consecutive terms.
pub fn zeta_coeff(j: usize, n: usize, d: f64) -> f64 {
    if j + 1 > n {
        return 0.0;
    }
    let m = n - j - 1;
    let top = j.min(m);
    if top == 0 || d == 0.0 {
        return 0.0;
    }
    let g = d / n as f64;
    let g2 = g * g;
    let mut term = g2 * g * j as f64 * m as f64;
    let mut sum = term;
    for l in 1..top {
        let ratio = g2 * ((j - l) as f64 / (l + 1) as f64) * ((m - l) as f64 / (l + 1) as f64);
        term *= ratio;
        sum += term;
    }
    sum
}

/// `η_{j,N}(d)`, summed with the ratio recurrence of consecutive terms.
pub fn eta_coeff(j: usize, n: usize, d: f64) -> f64 {
    if j == 0 || j >= n || d == 0.0 {
        return 0.0;
    }
    let m = n - j - 1;
    let top = j.min(n - j);
    let g = d / n as f64;
    let g2 = g * g;
    let mut term = g2 * j as f64;
    let mut sum = term;
    for i in 1..top {
        let ratio = g2 * ((j - i) as f64 / (i + 1) as f64) * ((m + 1 - i) as f64 / i as f64);
        term *= ratio;
        sum += term;
    }
    sum
}

pub fn zeta_sum(n: usize, d: f64) -> f64 {
    (0..n).map(|j| zeta_coeff(j, n, d)).sum()
}

pub fn eta_sum(n: usize, d: f64) -> f64 {
    (1..n).map(|j| eta_coeff(j, n, d)).sum()
}

/// `w ↦ R_N(d) w` using only permutation applications.
pub fn remainder_apply(n: usize, d: f64, w: &[f64]) -> Result<Vec<f64>> {
    check_len(2 * n, w.len())?;
    let mut out = vec![0.0; 2 * n];
    if d == 0.0 {
        return Ok(out);
    }
    let perm = FreePermutation::new(n);
    let ni = n as i64;
    for j in 0..n {
        let z = zeta_coeff(j, n, d);
        if z != 0.0 {
            perm.accumulate_b1(ni - 2 * j as i64 - 1, z, w, &mut out);
        }
    }
    for j in 1..n {
        let e = eta_coeff(j, n, d);
        if e != 0.0 {
            perm.accumulate(2 * j as i64 - ni, e, w, &mut out);
        }
    }
    Ok(out)
}

/// `w ↦ [B(0) + (d/N) B₁]^N w` by repeated application of the two factors.
pub fn expansion_lhs_apply(n: usize, d: f64, w: &[f64]) -> Result<Vec<f64>> {
    check_len(2 * n, w.len())?;
    let gamma = d / n as f64;
    let zeros = GammaVector::zeros(n);
    let mut cur = w.to_vec();
    for _ in 0..n {
        let swapped = apply_b1(&cur)?;
        let free = apply_b2(&zeros, &swapped, None)?;
        cur = free
            .iter()
            .zip(&swapped)
            .map(|(f, s)| f + gamma * s)
            .collect();
    }
    Ok(cur)
}

/// `w ↦ [B(0)^N + d P̂ + R_N(d)] w`.
pub fn expansion_rhs_apply(n: usize, d: f64, w: &[f64]) -> Result<Vec<f64>> {
    let perm = FreePermutation::new(n);
    let mut out = perm.apply(n as i64, w)?;
    for (o, p) in out.iter_mut().zip(hat_p_apply(w)?) {
        *o += d * p;
    }
    for (o, r) in out.iter_mut().zip(remainder_apply(n, d, w)?) {
        *o += r;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionReport {
    pub n: usize,
    pub d: f64,
    /// Largest entrywise difference of the two sides over the probe vectors.
    pub lhs_minus_rhs_max_abs: f64,
    pub zeta_sum: f64,
    pub eta_sum: f64,
    /// `e^d − d − 1 + K(d)/N`.
    pub bound_rhs: f64,
    /// Acceptance level `1e-11·(1+d)^N` for the residual.
    pub tolerance: f64,
    /// Number of standard basis vectors the two sides were compared on.
    pub probes: usize,
}

impl ExpansionReport {
    pub fn identity_holds(&self) -> bool {
        self.lhs_minus_rhs_max_abs <= self.tolerance
    }

    pub fn bound_holds(&self) -> bool {
        self.zeta_sum + self.eta_sum <= self.bound_rhs
    }
}

/// Compares both sides of the expansion on standard basis vectors: all of
/// them for `N <= 128`, otherwise 16 evenly spread ones.
pub fn expansion_report(n: usize, d: f64) -> Result<ExpansionReport> {
    let len = 2 * n;
    let columns: Vec<usize> = if n <= 128 {
        (0..len).collect()
    } else {
        (0..16).map(|k| k * (len - 1) / 15).collect()
    };
    let mut basis = vec![0.0; len];
    let mut worst = 0.0_f64;
    for &k in &columns {
        basis[k] = 1.0;
        let lhs = expansion_lhs_apply(n, d, &basis)?;
        let rhs = expansion_rhs_apply(n, d, &basis)?;
        basis[k] = 0.0;
        for (a, b) in lhs.iter().zip(&rhs) {
            worst = worst.max((a - b).abs());
        }
    }
    Ok(ExpansionReport {
        n,
        d,
        lhs_minus_rhs_max_abs: worst,
        zeta_sum: zeta_sum(n, d),
        eta_sum: eta_sum(n, d),
        bound_rhs: d.exp_m1() - d + k_of_d(d) / n as f64,
        tolerance: 1e-11 * (1.0 + d).powi(n as i32),
        probes: columns.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> f64 {
        if k > n {
            return 0.0;
        }
        (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
    }

    #[test]
    fn coefficients_match_explicit_binomials() {
        let (n, d) = (12, 0.9);
        let g = d / n as f64;
        for j in 0..n {
            let m = n - j - 1;
            let zeta: f64 = (1..=j.min(m))
                .map(|l| g.powi(2 * l as i32 + 1) * binom(j, l) * binom(m, l))
                .sum();
            assert!((zeta_coeff(j, n, d) - zeta).abs() <= 1e-15 * zeta.max(1e-300));
            if j >= 1 {
                let eta: f64 = (1..=j.min(n - j))
                    .map(|i| g.powi(2 * i as i32) * binom(j, i) * binom(m, i - 1))
                    .sum();
                assert!((eta_coeff(j, n, d) - eta).abs() <= 1e-15 * eta.max(1e-300));
            }
        }
    }

    #[test]
    fn vanishing_cases() {
        assert_eq!(zeta_coeff(0, 16, 0.5), 0.0);
        for j in 0..16 {
            assert_eq!(zeta_coeff(j, 16, 0.0), 0.0);
            assert_eq!(eta_coeff(j, 16, 0.0), 0.0);
        }
        assert_eq!(remainder_apply(4, 0.0, &[1.0; 8]).unwrap(), vec![0.0; 8]);
    }

    #[test]
    fn small_expansion_holds() {
        let r = expansion_report(4, 0.7).unwrap();
        assert!(r.lhs_minus_rhs_max_abs < 1e-12, "{r:?}");
        assert!(r.bound_holds());
    }

    #[test]
    fn large_expansion_uses_sampled_columns() {
        let r = expansion_report(256, 0.5).unwrap();
        assert_eq!(r.probes, 16);
        assert!(r.identity_holds(), "{r:?}");
    }
}

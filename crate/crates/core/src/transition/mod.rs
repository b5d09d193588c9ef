//! Matrix-free transition operators acting on wave-size vectors `w ∈ ℝ^{2N}`.
//!
//! One time step of the linear scheme is `B(γ) = B₂(γ)·B₁`:
//!
//! ```text
//!   B₁      swaps the pairs (w₁,w₂), (w₃,w₄), …, (w_{2N−1},w_{2N})
//!   B₂(γ)   keeps w₁ and w_{2N}, and mixes each interior pair (w_{2j}, w_{2j+1}):
//!
//!               1    ⎡ γ_j  1  ⎤
//!           ───────  ⎢         ⎥
//!           1 + γ_j  ⎣ 1   γ_j ⎦
//! ```
//!
//! Both factors are symmetric and doubly stochastic. With all `γ_j = γ` one has
//! `B(γ) = (B(0) + γ B₁)/(1 + γ)`, where `B(0)` is a permutation of period `2N`
//! whose `N`-th power reverses the vector.
//!
//! The two vectors driving the long-time behaviour are
//!
//! ```text
//!   e  = (1, 1, 1, 1, …)           B e  = e
//!   v₋ = (1, −1, −1, 1, 1, −1, …)  Bᵀv₋ = −v₋
//!   P̂ w = ((w·e) e + (w·v₋) v₋) / (2N)
//! ```
//!
//! Indices in this module are 0-based: entry `i` holds the 1-based `w_{i+1}`.

mod constants;
mod expansion;

pub use constants::{
    bessel_i, bessel_i0_minus_one, bessel_terms, c_limit, cal_c, contraction_constants, d_star,
    k_of_d, ContractionConstants,
};
pub use expansion::{
    eta_coeff, eta_sum, expansion_lhs_apply, expansion_report, expansion_rhs_apply,
    remainder_apply, zeta_coeff, zeta_sum, ExpansionReport,
};

use nalgebra::DMatrix;

use crate::error::{check_len, Error, Result};

/// Largest `N` for which [`dense`] materializes a matrix.
pub const DENSE_LIMIT: usize = 512;

/// Interaction coefficients `γ_1, …, γ_{N−1}` of the interior nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaVector {
    values: Vec<f64>,
}

impl GammaVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some((j, v)) = values.iter().enumerate().find(|(_, v)| v.is_nan() || **v < 0.0) {
            return Err(Error::Configuration(format!(
                "gamma_{} = {v:?} must be nonnegative",
                j + 1
            )));
        }
        Ok(Self { values })
    }

    /// All entries equal to `d/N`.
    pub fn uniform(n: usize, d: f64) -> Result<Self> {
        Self::new(vec![d / n as f64; n.saturating_sub(1)])
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            values: vec![0.0; n.saturating_sub(1)],
        }
    }

    /// Number of cells `N`.
    pub fn n(&self) -> usize {
        self.values.len() + 1
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

fn half_len(w: &[f64]) -> Result<usize> {
    if w.is_empty() || !w.len().is_multiple_of(2) {
        return Err(Error::LengthMismatch {
            expected: 2 * (w.len() / 2).max(1),
            got: w.len(),
        });
    }
    Ok(w.len() / 2)
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// ℓ₁ norm summed in increasing order of magnitude, so that it is invariant
/// under permutations of `w` bit for bit.
pub fn l1_norm(w: &[f64]) -> f64 {
    let mut abs: Vec<f64> = w.iter().map(|x| x.abs()).collect();
    abs.sort_by(f64::total_cmp);
    abs.iter().sum()
}

pub fn ones(n: usize) -> Vec<f64> {
    vec![1.0; 2 * n]
}

/// The alternating vector `v₋ = (1, −1, −1, 1, …)` of length `2N`.
pub fn v_minus(n: usize) -> Vec<f64> {
    (0..2 * n)
        .map(|i| if i % 4 == 0 || i % 4 == 3 { 1.0 } else { -1.0 })
        .collect()
}

/// `w ↦ B₁ w` in place.
pub fn apply_b1_in_place(w: &mut [f64]) -> Result<()> {
    half_len(w)?;
    for pair in w.chunks_exact_mut(2) {
        pair.swap(0, 1);
    }
    Ok(())
}

pub fn apply_b1(w: &[f64]) -> Result<Vec<f64>> {
    let mut out = w.to_vec();
    apply_b1_in_place(&mut out)?;
    Ok(out)
}

/// `w ↦ B₂(γ) w + source`. The optional source is the affine term added
/// when the damping coefficient switches in time.
pub fn apply_b2(gamma: &GammaVector, w: &[f64], source: Option<&[f64]>) -> Result<Vec<f64>> {
    check_len(2 * gamma.n(), w.len())?;
    let mut out = w.to_vec();
    for (j, &g) in gamma.values.iter().enumerate() {
        let (a, b) = (w[2 * j + 1], w[2 * j + 2]);
        let s = 1.0 / (1.0 + g);
        out[2 * j + 1] = (g * a + b) * s;
        out[2 * j + 2] = (a + g * b) * s;
    }
    if let Some(src) = source {
        check_len(w.len(), src.len())?;
        for (o, s) in out.iter_mut().zip(src) {
            *o += s;
        }
    }
    Ok(out)
}

/// `w ↦ B(γ) w = B₂(γ) B₁ w`.
pub fn apply_b(gamma: &GammaVector, w: &[f64]) -> Result<Vec<f64>> {
    check_len(2 * gamma.n(), w.len())?;
    apply_b2(gamma, &apply_b1(w)?, None)
}

/// `w ↦ B(γ)ᵀ w = B₁ B₂(γ) w`.
pub fn apply_b_transpose(gamma: &GammaVector, w: &[f64]) -> Result<Vec<f64>> {
    apply_b1(&apply_b2(gamma, w, None)?)
}

/// `w ↦ P̂ w`.
pub fn hat_p_apply(w: &[f64]) -> Result<Vec<f64>> {
    let n = half_len(w)?;
    let vm = v_minus(n);
    let a = w.iter().sum::<f64>();
    let b = dot(w, &vm);
    let scale = 1.0 / (2 * n) as f64;
    Ok(vm.iter().map(|v| (a + b * v) * scale).collect())
}

/// `w ↦ Φ(w)`, built from the even prefix sums `S_{2ℓ} = w·v_{2ℓ}`:
///
/// ```text
///   Φ(w) = (S_{2N}, −S₂, S₂, −S₄, S₄, …, −S_{2N−2}, S_{2N−2}, −S_{2N})
/// ```
pub fn phi(w: &[f64]) -> Result<Vec<f64>> {
    let n = half_len(w)?;
    let mut prefix = Vec::with_capacity(n + 1);
    let mut acc = 0.0;
    prefix.push(0.0);
    for pair in w.chunks_exact(2) {
        acc += pair[0] + pair[1];
        prefix.push(acc);
    }
    let mut out = vec![0.0; 2 * n];
    out[0] = prefix[n];
    out[2 * n - 1] = -prefix[n];
    for l in 1..n {
        out[2 * l - 1] = -prefix[l];
        out[2 * l] = prefix[l];
    }
    Ok(out)
}

/// Cycle decomposition of the free step `B(0)`, giving O(1) access to any
/// power of the permutation.
///
/// The convention is `(B(0)^p w)[i] = w[src_p(i)]`.
#[derive(Debug, Clone)]
pub struct FreePermutation {
    n: usize,
    cycles: Vec<Vec<usize>>,
    /// `(cycle index, position)` of every entry.
    place: Vec<(usize, usize)>,
}

impl FreePermutation {
    pub fn new(n: usize) -> Self {
        let len = 2 * n;
        let step = |i: usize| -> usize {
            // B(0) = B₂(0) B₁: first the interior pair swap, then the adjacent swap.
            let after_b2 = if i == 0 || i == len - 1 {
                i
            } else if i % 2 == 1 {
                i + 1
            } else {
                i - 1
            };
            after_b2 ^ 1
        };
        let mut place = vec![(usize::MAX, 0); len];
        let mut cycles = Vec::new();
        for start in 0..len {
            if place[start].0 != usize::MAX {
                continue;
            }
            let id = cycles.len();
            let mut cycle = Vec::new();
            let mut i = start;
            while place[i].0 == usize::MAX {
                place[i] = (id, cycle.len());
                cycle.push(i);
                i = step(i);
            }
            cycles.push(cycle);
        }
        Self { n, cycles, place }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Source index of entry `i` under `B(0)^p`; negative powers invert.
    #[inline]
    pub fn source(&self, i: usize, p: i64) -> usize {
        let (c, pos) = self.place[i];
        let cycle = &self.cycles[c];
        let len = cycle.len() as i64;
        cycle[(pos as i64 + p).rem_euclid(len) as usize]
    }

    /// Index map of `B(0)^p`.
    pub fn power_map(&self, p: i64) -> Vec<usize> {
        (0..2 * self.n).map(|i| self.source(i, p)).collect()
    }

    pub fn apply(&self, p: i64, w: &[f64]) -> Result<Vec<f64>> {
        check_len(2 * self.n, w.len())?;
        Ok((0..w.len()).map(|i| w[self.source(i, p)]).collect())
    }

    /// `out += scale · B(0)^p w`.
    pub fn accumulate(&self, p: i64, scale: f64, w: &[f64], out: &mut [f64]) {
        for (i, o) in out.iter_mut().enumerate() {
            *o += scale * w[self.source(i, p)];
        }
    }

    /// `out += scale · B₁ B(0)^p w`.
    pub fn accumulate_b1(&self, p: i64, scale: f64, w: &[f64], out: &mut [f64]) {
        for (i, o) in out.iter_mut().enumerate() {
            *o += scale * w[self.source(i ^ 1, p)];
        }
    }
}

/// The operator families that can be applied or materialized.
#[derive(Debug, Clone, PartialEq)]
pub enum OperatorKind {
    B1,
    B2(GammaVector),
    B(GammaVector),
    B0Power(i64),
    HatP,
    Phi,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StructuredOperator {
    pub kind: OperatorKind,
    pub n: usize,
}

impl StructuredOperator {
    pub fn new(kind: OperatorKind, n: usize) -> Result<Self> {
        if let OperatorKind::B2(g) | OperatorKind::B(g) = &kind {
            check_len(n, g.n())?;
        }
        Ok(Self { kind, n })
    }

    pub fn apply(&self, w: &[f64]) -> Result<Vec<f64>> {
        check_len(2 * self.n, w.len())?;
        match &self.kind {
            OperatorKind::B1 => apply_b1(w),
            OperatorKind::B2(g) => apply_b2(g, w, None),
            OperatorKind::B(g) => apply_b(g, w),
            OperatorKind::B0Power(p) => FreePermutation::new(self.n).apply(*p, w),
            OperatorKind::HatP => hat_p_apply(w),
            OperatorKind::Phi => phi(w),
        }
    }
}

/// Dense realization of `op`, column by column from the standard basis.
pub fn dense(op: &StructuredOperator) -> Result<DMatrix<f64>> {
    if op.n > DENSE_LIMIT {
        return Err(Error::DenseGuard {
            n: op.n,
            limit: DENSE_LIMIT,
        });
    }
    let len = 2 * op.n;
    let mut m = DMatrix::zeros(len, len);
    let mut basis = vec![0.0; len];
    for k in 0..len {
        basis[k] = 1.0;
        let col = op.apply(&basis)?;
        m.set_column(k, &nalgebra::DVector::from_vec(col));
        basis[k] = 0.0;
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b1_swaps_pairs() {
        assert_eq!(apply_b1(&[1.0, 2.0, 3.0, 4.0]).unwrap(), vec![2.0, 1.0, 4.0, 3.0]);
        assert_eq!(apply_b1(&[0.0; 4]).unwrap(), vec![0.0; 4]);
        assert!(apply_b1(&[1.0, 2.0, 3.0]).is_err());
    }

    #[test]
    fn b2_keeps_corners() {
        let g = GammaVector::new(vec![0.5]).unwrap();
        let out = apply_b2(&g, &[1.0, 2.0, 3.0, 4.0], None).unwrap();
        assert_eq!(out[0], 1.0);
        assert_eq!(out[3], 4.0);
        assert!((out[1] - (0.5 * 2.0 + 3.0) / 1.5).abs() < 1e-15);
        assert!((out[2] - (2.0 + 0.5 * 3.0) / 1.5).abs() < 1e-15);
    }

    #[test]
    fn length_mismatch_is_reported() {
        let g = GammaVector::zeros(4);
        assert!(matches!(
            apply_b(&g, &[0.0; 6]),
            Err(Error::LengthMismatch { expected: 8, got: 6 })
        ));
    }

    #[test]
    fn free_step_matches_factorization() {
        for n in [2, 3, 8] {
            let perm = FreePermutation::new(n);
            let w: Vec<f64> = (0..2 * n).map(|i| i as f64).collect();
            let direct = apply_b(&GammaVector::zeros(n), &w).unwrap();
            assert_eq!(perm.apply(1, &w).unwrap(), direct);
            let back = perm.apply(-1, &direct).unwrap();
            assert_eq!(back, w);
        }
    }

    #[test]
    fn free_step_is_a_single_cycle() {
        for n in [1, 2, 5, 16] {
            let perm = FreePermutation::new(n);
            assert_eq!(perm.cycles.len(), 1);
            assert_eq!(perm.cycles[0].len(), 2 * n);
        }
    }

    #[test]
    fn projector_basics() {
        let e = ones(3);
        let pe = hat_p_apply(&e).unwrap();
        assert!(pe.iter().all(|x| (x - 1.0).abs() < 1e-15));
        let vm = v_minus(3);
        let pv = hat_p_apply(&vm).unwrap();
        for (a, b) in pv.iter().zip(&vm) {
            assert!((a - b).abs() < 1e-15);
        }
        // Orthogonal to both e and v₋.
        let w = [1.0, 1.0, -1.0, -1.0, 0.0, 0.0];
        assert!(hat_p_apply(&w).unwrap().iter().all(|x| x.abs() < 1e-15));
    }

    #[test]
    fn phi_of_zero() {
        assert_eq!(phi(&[0.0; 8]).unwrap(), vec![0.0; 8]);
        assert_eq!(phi(&[1.0, 2.0, 3.0, 4.0]).unwrap(), vec![10.0, -3.0, 3.0, -10.0]);
    }

    #[test]
    fn dense_guard() {
        let op = StructuredOperator::new(OperatorKind::B1, DENSE_LIMIT + 2).unwrap();
        assert!(matches!(dense(&op), Err(Error::DenseGuard { .. })));
    }

    #[test]
    fn dense_b1_pattern() {
        let op = StructuredOperator::new(OperatorKind::B1, 3).unwrap();
        let m = dense(&op).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                let expected = if j == (i ^ 1) { 1.0 } else { 0.0 };
                assert_eq!(m[(i, j)], expected);
            }
        }
    }

    #[test]
    fn l1_norm_is_permutation_invariant() {
        let w = [0.1, -0.7, 1e-17, 3.0, -2.5e-9];
        let mut r = w;
        r.reverse();
        assert_eq!(l1_norm(&w).to_bits(), l1_norm(&r).to_bits());
    }
}

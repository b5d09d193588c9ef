//! Seeded piecewise-constant initial data with zero total mass.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::problem::InitialData;
use crate::riemann::DiagState;

/// Piecewise-constant diagonal data on `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BvData {
    /// `0 = b_0 < b_1 < … < b_P = 1`.
    pub breakpoints: Vec<f64>,
    pub f_minus: Vec<f64>,
    pub f_plus: Vec<f64>,
}

impl BvData {
    pub fn pieces(&self) -> usize {
        self.f_minus.len()
    }

    /// The state on the piece containing `x` (right-continuous).
    pub fn state_at(&self, x: f64) -> DiagState {
        let i = self.breakpoints[1..self.pieces()].partition_point(|b| *b <= x);
        DiagState::new(self.f_minus[i], self.f_plus[i])
    }

    fn lengths(&self) -> impl Iterator<Item = f64> + '_ {
        self.breakpoints.windows(2).map(|w| w[1] - w[0])
    }

    pub fn integral_rho(&self) -> f64 {
        self.lengths()
            .zip(self.f_minus.iter().zip(&self.f_plus))
            .map(|(l, (m, p))| l * (m + p))
            .sum()
    }

    pub fn tv_rho(&self) -> f64 {
        let rho: Vec<f64> = self.f_minus.iter().zip(&self.f_plus).map(|(m, p)| m + p).collect();
        rho.windows(2).map(|w| (w[1] - w[0]).abs()).sum()
    }

    /// `(m, M)` over all diagonal values.
    pub fn range(&self) -> (f64, f64) {
        self.f_minus
            .iter()
            .chain(&self.f_plus)
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
                (lo.min(*v), hi.max(*v))
            })
    }

    pub fn to_initial(&self) -> InitialData {
        let data = self.clone();
        let data2 = self.clone();
        InitialData::diagonal(
            move |x| data.state_at(x).f_minus,
            move |x| data2.state_at(x).f_plus,
        )
    }
}

/// Draws `pieces` random breakpoints and values in `[m, M]`, then shifts both
/// diagonal components equally so that `∫ρ₀ = 0`.
///
/// If the shift leaves `[m, M]` the data is scaled towards 0, which keeps the
/// mean at zero; this needs `m <= 0 <= M`.
pub fn generate_bv_data(seed: u64, pieces: usize, m: f64, big_m: f64) -> BvData {
    let pieces = pieces.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut inner: Vec<f64> = (1..pieces).map(|_| rng.gen::<f64>()).collect();
    inner.sort_by(f64::total_cmp);
    let mut breakpoints = Vec::with_capacity(pieces + 1);
    breakpoints.push(0.0);
    breakpoints.extend(inner);
    breakpoints.push(1.0);
    let mut draw = || m + (big_m - m) * rng.gen::<f64>();
    let mut f_minus = Vec::with_capacity(pieces);
    let mut f_plus = Vec::with_capacity(pieces);
    for _ in 0..pieces {
        f_minus.push(draw());
        f_plus.push(draw());
    }
    let mut data = BvData {
        breakpoints,
        f_minus,
        f_plus,
    };
    let shift = -0.5 * data.integral_rho();
    for v in data.f_minus.iter_mut().chain(data.f_plus.iter_mut()) {
        *v += shift;
    }
    if m <= 0.0 && big_m >= 0.0 {
        let (lo, hi) = data.range();
        let mut scale: f64 = 1.0;
        if hi > big_m {
            scale = scale.min(big_m / hi);
        }
        if lo < m {
            scale = scale.min(m / lo);
        }
        if scale < 1.0 {
            for v in data.f_minus.iter_mut().chain(data.f_plus.iter_mut()) {
                *v *= scale;
            }
        }
    }
    data
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_piece_has_zero_density() {
        let d = generate_bv_data(3, 1, -1.0, 1.0);
        assert_eq!(d.breakpoints, vec![0.0, 1.0]);
        assert!((d.f_minus[0] + d.f_plus[0]).abs() < 1e-15);
    }

    #[test]
    fn deterministic() {
        let a = generate_bv_data(42, 16, -1.0, 1.0);
        let b = generate_bv_data(42, 16, -1.0, 1.0);
        assert_eq!(a, b);
        assert_ne!(a, generate_bv_data(43, 16, -1.0, 1.0));
    }

    #[test]
    fn zero_mean_and_range() {
        let d = generate_bv_data(7, 16, -1.0, 1.0);
        assert!(d.integral_rho().abs() < 1e-15);
        let (lo, hi) = d.range();
        assert!(lo >= -1.0 && hi <= 1.0);
        assert_eq!(d.pieces(), 16);
    }

    #[test]
    fn right_continuous_lookup() {
        let d = BvData {
            breakpoints: vec![0.0, 0.5, 1.0],
            f_minus: vec![1.0, 2.0],
            f_plus: vec![3.0, 4.0],
        };
        assert_eq!(d.state_at(0.0).f_minus, 1.0);
        assert_eq!(d.state_at(0.5).f_minus, 2.0);
        assert_eq!(d.state_at(1.0).f_plus, 4.0);
    }
}

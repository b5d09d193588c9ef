//! Uniform grid `x_j = j/N` with `Δt = Δx = 1/N`, node strengths
//! `δ_j = ∫_{x_{j−1}}^{x_j} k` and the sampled initial cells.

use crate::error::{Error, Result};
use crate::problem::{KProfile, ProblemSpec, K_QUADRATURE_POINTS};
use crate::riemann::working_interval;

#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub n: usize,
    pub dx: f64,
    /// `δ_1, …, δ_{N−1}`; entry `j − 1` belongs to node `x_j`.
    pub delta: Vec<f64>,
    /// Certified `sup g'` over the working flux interval.
    pub sup_dg: f64,
    /// `‖α‖_∞`.
    pub alpha_sup: f64,
}

impl Grid {
    /// `δ_j` for an interior node `1 <= j <= N − 1`.
    #[inline]
    pub fn delta_at(&self, j: usize) -> f64 {
        self.delta[j - 1]
    }

    pub fn node(&self, j: usize) -> f64 {
        j as f64 / self.n as f64
    }

    /// Largest value of `sup g' · ‖α‖_∞ · δ_j`; must stay below 1.
    pub fn smallness(&self) -> f64 {
        self.delta
            .iter()
            .fold(0.0, |acc: f64, d| acc.max(self.sup_dg * self.alpha_sup * d))
    }
}

fn node_strengths(k: &KProfile, n: usize) -> Vec<f64> {
    let dx = 1.0 / n as f64;
    (1..n)
        .map(|j| {
            let (a, b) = ((j - 1) as f64 * dx, j as f64 * dx);
            match k {
                KProfile::Constant(d) => d * dx,
                KProfile::PiecewiseConstant { .. } => k.integral(a, b),
                KProfile::Tabulated(_) => {
                    let h = dx / K_QUADRATURE_POINTS as f64;
                    (0..K_QUADRATURE_POINTS)
                        .map(|i| k.value(a + (i as f64 + 0.5) * h))
                        .sum::<f64>()
                        * h
                }
            }
        })
        .collect()
}

pub fn build_grid(spec: &ProblemSpec, n: usize) -> Result<Grid> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::Configuration(format!(
            "N must be even and at least 2, got {n}"
        )));
    }
    spec.validate()?;
    let (fm, fp) = spec.initial.sample(n)?;
    let (m, big_m) = fm
        .iter()
        .chain(&fp)
        .fold((0.0_f64, 0.0_f64), |(lo, hi), v| (lo.min(*v), hi.max(*v)));
    let (lo, hi) = working_interval(m, big_m);
    let sup_dg = spec.g.sup_derivative(lo, hi)?;
    let grid = Grid {
        n,
        dx: 1.0 / n as f64,
        delta: node_strengths(&spec.k, n),
        sup_dg,
        alpha_sup: spec.alpha.sup(),
    };
    for (i, d) in grid.delta.iter().enumerate() {
        let value = sup_dg * grid.alpha_sup * d;
        if value.is_nan() || value >= 1.0 {
            return Err(Error::Smallness { node: i + 1, value });
        }
    }
    Ok(grid)
}

/// Initial cell values `f₀±(x_j+)` and the discrete mass.
#[derive(Debug, Clone, PartialEq)]
pub struct InitialCells {
    pub f_minus: Vec<f64>,
    pub f_plus: Vec<f64>,
    /// `Δx Σ (f⁺ + f⁻)`.
    pub mass0: f64,
}

impl InitialCells {
    pub fn n(&self) -> usize {
        self.f_minus.len()
    }

    /// Smallest and largest diagonal value, `(m, M)`.
    pub fn range(&self) -> (f64, f64) {
        self.f_minus
            .iter()
            .chain(&self.f_plus)
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
                (lo.min(*v), hi.max(*v))
            })
    }

    /// Total variation of the flux extended by zero outside `[0, 1]`.
    pub fn tv_flux_extended(&self) -> f64 {
        let j: Vec<f64> = self
            .f_minus
            .iter()
            .zip(&self.f_plus)
            .map(|(m, p)| p - m)
            .collect();
        let inner: f64 = j.windows(2).map(|w| (w[1] - w[0]).abs()).sum();
        inner + j.first().map_or(0.0, |v| v.abs()) + j.last().map_or(0.0, |v| v.abs())
    }
}

pub fn sample_initial(spec: &ProblemSpec, grid: &Grid) -> Result<InitialCells> {
    let (f_minus, f_plus) = spec.initial.sample(grid.n)?;
    let mass0 = grid.dx * f_minus.iter().zip(&f_plus).map(|(a, b)| a + b).sum::<f64>();
    Ok(InitialCells {
        f_minus,
        f_plus,
        mass0,
    })
}

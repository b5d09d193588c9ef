//! The scheme as an iteration on the vector of wave sizes.
//!
//! After the Riemann problems at `t = 0` every cell boundary emits waves:
//! a +1 wave at `x = 0`, a (−1, +1) pair at each interior node and a −1 wave
//! at `x = 1`. Their sizes `ΔJ`, listed from left to right, form
//! `σ ∈ ℝ^{2N}`. Waves move one half cell per half step, so the pattern of
//! positions repeats and only the sizes change:
//!
//! ```text
//!   half step   σ ← B₁ σ                 neighbouring waves cross without interacting
//!   full step   (σ_{2j}, σ_{2j+1}) ← interaction at x_j,  σ₁, σ_{2N} reflected
//! ```
//!
//! The flux is recovered from prefix sums, `J(x_j) = σ·v_{2j}` where `v_ℓ`
//! has `ℓ` leading ones.

use crate::error::{Error, Result};
use crate::grid::{Grid, InitialCells};
use crate::problem::ProblemSpec;
use crate::riemann::{
    boundary_reflect, interaction_unchecked, riemann_unchecked, DampingFunction, DiagState, Side,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    /// Just after an integer time level `tⁿ`: fans at the nodes.
    PostInteger,
    /// Just after `t^{n+1/2}`: waves have crossed at the cell midpoints.
    PostHalf,
}

impl Phase {
    pub fn as_str(&self) -> &'static str {
        match self {
            Phase::PostInteger => "integer",
            Phase::PostHalf => "half",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SigmaState {
    pub sigma: Vec<f64>,
    /// Number of completed full steps.
    pub n: usize,
    pub phase: Phase,
    /// `ᾱ_{n−1}`.
    pub alpha_prev: f64,
    /// `ᾱ_n`, the coefficient in effect on `(tⁿ, t^{n+1})`.
    pub alpha_curr: f64,
    pub mass0: f64,
    /// `ρ(0+)` updated by boundary reflections only, independent of mass matching.
    pub rho_left: f64,
}

impl SigmaState {
    pub fn cells(&self) -> usize {
        self.sigma.len() / 2
    }

    /// `t = n/N`, plus `1/(2N)` in the half phase.
    pub fn time(&self) -> f64 {
        let n = self.cells() as f64;
        match self.phase {
            Phase::PostInteger => self.n as f64 / n,
            Phase::PostHalf => (self.n as f64 + 0.5) / n,
        }
    }

    /// Even prefix sums `σ·v_{2j}`, `j = 0..=N`: the flux at the nodes.
    pub fn node_flux(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.cells() + 1);
        let mut acc = 0.0;
        out.push(0.0);
        for pair in self.sigma.chunks_exact(2) {
            acc += pair[0] + pair[1];
            out.push(acc);
        }
        out
    }
}

/// Resolves the initial Riemann problems.
pub fn init_sigma(
    cells: &InitialCells,
    grid: &Grid,
    g: &DampingFunction,
    alpha0: f64,
) -> Result<SigmaState> {
    let n = grid.n;
    crate::error::check_len(n, cells.n())?;
    let state = |j: usize| DiagState::new(cells.f_minus[j], cells.f_plus[j]);
    let mut sigma = vec![0.0; 2 * n];
    sigma[0] = boundary_reflect(Side::Left, state(0));
    for j in 1..n {
        let fan = riemann_unchecked(state(j - 1), state(j), grid.delta_at(j) * alpha0, g)?;
        sigma[2 * j - 1] = fan.sigma_minus1;
        sigma[2 * j] = fan.sigma_plus1;
    }
    sigma[2 * n - 1] = boundary_reflect(Side::Right, state(n - 1));
    Ok(SigmaState {
        sigma,
        n: 0,
        phase: Phase::PostInteger,
        alpha_prev: alpha0,
        alpha_curr: alpha0,
        mass0: cells.mass0,
        rho_left: 2.0 * cells.f_minus[0],
    })
}

/// Moves waves to the cell midpoints and lets them cross.
pub fn half_step(state: &mut SigmaState) -> Result<()> {
    if state.phase != Phase::PostInteger {
        return Err(Error::Sequencing {
            expected: Phase::PostInteger,
            found: state.phase,
        });
    }
    for pair in state.sigma.chunks_exact_mut(2) {
        pair.swap(0, 1);
    }
    state.phase = Phase::PostHalf;
    Ok(())
}

/// Resolves the interactions at all nodes at `t^{n+1}`.
pub fn full_step(state: &mut SigmaState, grid: &Grid, spec: &ProblemSpec) -> Result<()> {
    if state.phase != Phase::PostHalf {
        return Err(Error::Sequencing {
            expected: Phase::PostHalf,
            found: state.phase,
        });
    }
    let n = grid.n;
    let alpha_new = spec.alpha.at((state.n + 1) as f64 / n as f64);
    let alpha_old = state.alpha_curr;
    let flux = state.node_flux();
    let sigma = &mut state.sigma;

    if spec.g.is_linear() {
        let switching = alpha_new != alpha_old;
        for j in 1..n {
            let delta = grid.delta_at(j);
            let gamma = delta * alpha_new;
            let scale = 1.0 / (1.0 + gamma);
            let (a, b) = (sigma[2 * j - 1], sigma[2 * j]);
            let mut left = (gamma * a + b) * scale;
            let mut right = (a + gamma * b) * scale;
            if switching {
                let p = flux[j] * delta * scale;
                left -= (alpha_new - alpha_old) * p;
                right += (alpha_new - alpha_old) * p;
            }
            sigma[2 * j - 1] = left;
            sigma[2 * j] = right;
        }
    } else {
        for j in 1..n {
            let out = interaction_unchecked(
                (sigma[2 * j - 1], sigma[2 * j]),
                flux[j],
                grid.delta_at(j),
                alpha_old,
                alpha_new,
                &spec.g,
            )?;
            sigma[2 * j - 1] = out.sigma_out.0;
            sigma[2 * j] = out.sigma_out.1;
        }
    }
    // The −1 wave arriving at x = 0 reflects with the same size; the state at
    // the wall loses 2σ₁ of density.
    state.rho_left -= 2.0 * sigma[0];
    state.n += 1;
    state.alpha_prev = alpha_old;
    state.alpha_curr = alpha_new;
    state.phase = Phase::PostInteger;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{build_grid, sample_initial};
    use crate::problem::InitialData;
    use crate::riemann::solve_riemann;

    fn setup(spec: &ProblemSpec, n: usize) -> (Grid, SigmaState) {
        let grid = build_grid(spec, n).unwrap();
        let cells = sample_initial(spec, &grid).unwrap();
        let state = init_sigma(&cells, &grid, &spec.g, spec.alpha.at(0.0)).unwrap();
        (grid, state)
    }

    #[test]
    fn zero_data_gives_zero_sigma() {
        let spec = ProblemSpec::telegrapher(0.5, InitialData::zero());
        let (_, state) = setup(&spec, 8);
        assert!(state.sigma.iter().all(|s| *s == 0.0));
    }

    #[test]
    fn constant_density_without_damping_is_at_rest() {
        let spec = ProblemSpec::telegrapher(0.0, InitialData::rho_j(|_| 0.3, |_| 0.0));
        let (_, state) = setup(&spec, 8);
        assert!(state.sigma.iter().all(|s| *s == 0.0));
    }

    #[test]
    fn two_cell_hand_composition() {
        let cells = InitialCells {
            f_minus: vec![0.0, 0.4],
            f_plus: vec![0.2, 0.0],
            mass0: 0.5 * 0.6,
        };
        let spec = ProblemSpec::telegrapher(
            0.5,
            InitialData::cells(cells.f_minus.clone(), cells.f_plus.clone()),
        );
        let (grid, state) = setup(&spec, 2);
        let left = DiagState::new(0.0, 0.2);
        let right = DiagState::new(0.4, 0.0);
        let fan = solve_riemann(left, right, 0.25, 1.0, &spec.g).unwrap();
        assert_eq!(grid.delta, vec![0.25]);
        assert!((state.sigma[0] - 0.2).abs() < 1e-15);
        assert!((state.sigma[1] - fan.sigma_minus1).abs() < 1e-15);
        assert!((state.sigma[2] - fan.sigma_plus1).abs() < 1e-15);
        assert!((state.sigma[3] - 0.4).abs() < 1e-15);
        // J* = (0.2 − 0.4)/1.25
        assert!((fan.j_star + 0.16).abs() < 1e-15);
        assert!(state.sigma.iter().sum::<f64>().abs() < 1e-15);
    }

    #[test]
    fn sequencing_is_enforced() {
        let spec = ProblemSpec::telegrapher(0.5, InitialData::zero());
        let (grid, mut state) = setup(&spec, 4);
        assert!(matches!(
            full_step(&mut state, &grid, &spec),
            Err(Error::Sequencing { .. })
        ));
        half_step(&mut state).unwrap();
        assert!(matches!(half_step(&mut state), Err(Error::Sequencing { .. })));
        full_step(&mut state, &grid, &spec).unwrap();
        assert_eq!(state.n, 1);
        assert_eq!(state.phase, Phase::PostInteger);
    }

    #[test]
    fn half_step_twice_restores() {
        let mut state = SigmaState {
            sigma: vec![1.0, 2.0, 3.0, 4.0],
            n: 0,
            phase: Phase::PostInteger,
            alpha_prev: 1.0,
            alpha_curr: 1.0,
            mass0: 0.0,
            rho_left: 0.0,
        };
        half_step(&mut state).unwrap();
        assert_eq!(state.sigma, vec![2.0, 1.0, 4.0, 3.0]);
        state.phase = Phase::PostInteger;
        half_step(&mut state).unwrap();
        assert_eq!(state.sigma, vec![1.0, 2.0, 3.0, 4.0]);
    }

    #[test]
    fn free_evolution_has_period_two() {
        let data = InitialData::diagonal(|x| (7.0 * x).sin(), |x| (3.0 * x).cos() - 0.5);
        let spec = ProblemSpec::telegrapher(0.0, data);
        let (grid, mut state) = setup(&spec, 16);
        let start = state.sigma.clone();
        for _ in 0..32 {
            half_step(&mut state).unwrap();
            full_step(&mut state, &grid, &spec).unwrap();
        }
        assert_eq!(state.sigma, start);
    }
}

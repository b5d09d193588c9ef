//! Reconstruction of `ρ`, `J`, `f±` from the wave sizes.
//!
//! ```text
//!   J(x)  = σ · v(x)
//!   ρ(x)  = σ̃ · v(x) + ρ(0+) − 2ᾱ Σ_{x_j < x} g(J(x_j)) δ_j
//!   σ̃     = Π σ after an integer step,  −Π σ after a half step,
//!   Π     = diag(1, −1, 1, −1, …)
//! ```
//!
//! Here `v(x)` has a one for every wave to the left of `x`. At a node `x_j`
//! the density jumps by `−2ᾱ g(J(x_j)) δ_j` between the traces `x_j−` and
//! `x_j+`; at the walls there is no jump.

use crate::grid::Grid;
use crate::problem::ProblemSpec;
use crate::riemann::DiagState;
use crate::sigma::{Phase, SigmaState};
use crate::transition::{dot, l1_norm, v_minus};

/// States on both sides of a node.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct NodeTrace {
    pub minus: DiagState,
    pub plus: DiagState,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FieldSnapshot {
    pub t: f64,
    pub n: usize,
    pub phase: Phase,
    /// Density of the state with flux `σ·v_{2j+1}` in cell `j`. After an integer
    /// step this fills the cell; after a half step it is the crossing state.
    pub rho_cells: Vec<f64>,
    pub j_cells: Vec<f64>,
    pub f_minus_cells: Vec<f64>,
    pub f_plus_cells: Vec<f64>,
    /// `J(x_j)`, `j = 0..=N`.
    pub j_nodes: Vec<f64>,
    /// Traces at `x_j∓`, `j = 0..=N`; both sides coincide at the walls.
    pub node_traces: Vec<NodeTrace>,
    /// `∫₀^{x_j} ρ`, `j = 0..=N`.
    pub u: Vec<f64>,
    /// `ρ(0+)` fixed by matching the mass to `mass0`.
    pub rho_left: f64,
    /// Mass of the profile built on the tracked wall density `ρ(0+)`.
    pub mass_tracked: f64,
}

impl FieldSnapshot {
    pub fn cells(&self) -> usize {
        self.rho_cells.len()
    }

    /// `(sup f⁺, inf f⁺, sup f⁻, inf f⁻)` over all node traces.
    pub fn trace_extrema(&self) -> (f64, f64, f64, f64) {
        let mut e = (
            f64::NEG_INFINITY,
            f64::INFINITY,
            f64::NEG_INFINITY,
            f64::INFINITY,
        );
        for t in &self.node_traces {
            for s in [t.minus, t.plus] {
                e.0 = e.0.max(s.f_plus);
                e.1 = e.1.min(s.f_plus);
                e.2 = e.2.max(s.f_minus);
                e.3 = e.3.min(s.f_minus);
            }
        }
        e
    }

    /// Largest `|J|` over cells and nodes.
    pub fn linf_j(&self) -> f64 {
        self.j_cells
            .iter()
            .chain(&self.j_nodes)
            .fold(0.0, |a: f64, v| a.max(v.abs()))
    }

    /// Largest `|ρ|` over cells and node traces.
    pub fn linf_rho(&self) -> f64 {
        let traces = self
            .node_traces
            .iter()
            .flat_map(|t| [t.minus.rho(), t.plus.rho()]);
        self.rho_cells
            .iter()
            .copied()
            .chain(traces)
            .fold(0.0, |a: f64, v| a.max(v.abs()))
    }

    /// Maps a homogenized solution `(ρ − ρ_β, J − β)` back to `(ρ, J)`.
    pub fn unshift(&mut self, shift: &crate::problem::BoundaryShift) {
        let n = self.cells();
        let x = |j: usize| j as f64 / n as f64;
        let restore = |s: DiagState, rho_beta: f64| {
            DiagState::from_rho_j(s.rho() + rho_beta, s.j() + shift.beta)
        };
        for j in 0..n {
            let mid = shift.rho_beta(x(j) + 0.5 / n as f64);
            let s = restore(
                DiagState::new(self.f_minus_cells[j], self.f_plus_cells[j]),
                mid,
            );
            self.rho_cells[j] = s.rho();
            self.j_cells[j] = s.j();
            self.f_minus_cells[j] = s.f_minus;
            self.f_plus_cells[j] = s.f_plus;
        }
        for (j, tr) in self.node_traces.iter_mut().enumerate() {
            let r = shift.rho_beta(x(j));
            tr.minus = restore(tr.minus, r);
            tr.plus = restore(tr.plus, r);
        }
        for v in &mut self.j_nodes {
            *v += shift.beta;
        }
    }
}

pub fn reconstruct_fields(state: &SigmaState, grid: &Grid, spec: &ProblemSpec) -> FieldSnapshot {
    let n = grid.n;
    let sigma = &state.sigma;
    let flip = match state.phase {
        Phase::PostInteger => 1.0,
        Phase::PostHalf => -1.0,
    };
    let alpha = state.alpha_curr;

    // Prefix sums of σ and σ̃ at every wave position, profile built with ρ(0+) = 0.
    let mut j_prefix = Vec::with_capacity(2 * n + 1);
    let mut r_prefix = Vec::with_capacity(2 * n + 1);
    let (mut jp, mut rp) = (0.0, 0.0);
    j_prefix.push(0.0);
    r_prefix.push(0.0);
    for (i, s) in sigma.iter().enumerate() {
        jp += s;
        rp += if i % 2 == 0 { flip * s } else { -flip * s };
        j_prefix.push(jp);
        r_prefix.push(rp);
    }

    let mut rho_minus = vec![0.0; n + 1];
    let mut rho_plus = vec![0.0; n + 1];
    let mut rho_cells = vec![0.0; n];
    let mut source = 0.0;
    for j in 0..=n {
        rho_minus[j] = r_prefix[2 * j] - source;
        if j >= 1 && j < n {
            source += 2.0 * alpha * spec.g.eval(j_prefix[2 * j]) * grid.delta_at(j);
        }
        rho_plus[j] = r_prefix[2 * j] - source;
        if j < n {
            rho_cells[j] = r_prefix[2 * j + 1] - source;
        }
    }

    let dx = grid.dx;
    let mass_at_zero = match state.phase {
        Phase::PostInteger => dx * rho_cells.iter().sum::<f64>(),
        Phase::PostHalf => {
            0.5 * dx * (rho_plus[..n].iter().sum::<f64>() + rho_minus[1..].iter().sum::<f64>())
        }
    };
    let c = state.mass0 - mass_at_zero;

    let j_nodes: Vec<f64> = (0..=n).map(|j| j_prefix[2 * j]).collect();
    let j_cells: Vec<f64> = (0..n).map(|j| j_prefix[2 * j + 1]).collect();
    for v in rho_cells.iter_mut() {
        *v += c;
    }
    let node_traces: Vec<NodeTrace> = (0..=n)
        .map(|j| NodeTrace {
            minus: DiagState::from_rho_j(rho_minus[j] + c, j_nodes[j]),
            plus: DiagState::from_rho_j(rho_plus[j] + c, j_nodes[j]),
        })
        .collect();

    let mut u = Vec::with_capacity(n + 1);
    let mut acc = 0.0;
    u.push(0.0);
    for j in 0..n {
        acc += match state.phase {
            Phase::PostInteger => dx * rho_cells[j],
            Phase::PostHalf => 0.5 * dx * (node_traces[j].plus.rho() + node_traces[j + 1].minus.rho()),
        };
        u.push(acc);
    }

    let f_minus_cells = rho_cells
        .iter()
        .zip(&j_cells)
        .map(|(r, j)| 0.5 * (r - j))
        .collect();
    let f_plus_cells = rho_cells
        .iter()
        .zip(&j_cells)
        .map(|(r, j)| 0.5 * (r + j))
        .collect();

    FieldSnapshot {
        t: state.time(),
        n: state.n,
        phase: state.phase,
        rho_cells,
        j_cells,
        f_minus_cells,
        f_plus_cells,
        j_nodes,
        node_traces,
        u,
        rho_left: c,
        mass_tracked: mass_at_zero + state.rho_left,
    }
}

/// Per-step scalar diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostics {
    pub n: usize,
    pub t: f64,
    pub phase: Phase,
    /// Mass of the profile anchored at the tracked wall density.
    pub mass: f64,
    /// `|mass − mass0|`.
    pub mass_drift: f64,
    pub sup_fp: f64,
    pub inf_fp: f64,
    pub sup_fm: f64,
    pub inf_fm: f64,
    /// `TV J = ‖σ‖₁`.
    pub tv_j: f64,
    /// Wave jumps plus node jumps of `ρ`.
    pub tv_rho: f64,
    pub sigma_dot_e: f64,
    pub sigma_dot_vminus: f64,
    pub linf_j: f64,
    pub linf_rho: f64,
}

pub fn diagnostics(
    state: &SigmaState,
    snapshot: &FieldSnapshot,
    grid: &Grid,
    spec: &ProblemSpec,
) -> Diagnostics {
    let (sup_fp, inf_fp, sup_fm, inf_fm) = snapshot.trace_extrema();
    let tv_j = l1_norm(&state.sigma);
    let node_jumps: f64 = (1..grid.n)
        .map(|j| {
            (2.0 * state.alpha_curr * spec.g.eval(snapshot.j_nodes[j]) * grid.delta_at(j)).abs()
        })
        .sum();
    Diagnostics {
        n: state.n,
        t: snapshot.t,
        phase: state.phase,
        mass: snapshot.mass_tracked,
        mass_drift: (snapshot.mass_tracked - state.mass0).abs(),
        sup_fp,
        inf_fp,
        sup_fm,
        inf_fm,
        tv_j,
        tv_rho: tv_j + node_jumps,
        sigma_dot_e: state.sigma.iter().sum(),
        sigma_dot_vminus: dot(&state.sigma, &v_minus(grid.n)),
        linf_j: snapshot.linf_j(),
        linf_rho: snapshot.linf_rho(),
    }
}

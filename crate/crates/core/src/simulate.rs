//! Driving the scheme in time.

use crate::error::Result;
use crate::fields::{diagnostics, reconstruct_fields, Diagnostics, FieldSnapshot};
use crate::grid::{build_grid, sample_initial, Grid, InitialCells};
use crate::problem::ProblemSpec;
use crate::sigma::{full_step, half_step, init_sigma, SigmaState};

/// A problem discretized on `N` cells together with its current state.
#[derive(Debug, Clone)]
pub struct Simulation {
    spec: ProblemSpec,
    grid: Grid,
    initial: InitialCells,
    state: SigmaState,
}

impl Simulation {
    pub fn new(spec: ProblemSpec, n: usize) -> Result<Self> {
        let grid = build_grid(&spec, n)?;
        let initial = sample_initial(&spec, &grid)?;
        let state = init_sigma(&initial, &grid, &spec.g, spec.alpha.at(0.0))?;
        Ok(Self {
            spec,
            grid,
            initial,
            state,
        })
    }

    pub fn spec(&self) -> &ProblemSpec {
        &self.spec
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn initial(&self) -> &InitialCells {
        &self.initial
    }

    pub fn state(&self) -> &SigmaState {
        &self.state
    }

    pub fn half_step(&mut self) -> Result<()> {
        half_step(&mut self.state)
    }

    pub fn full_step(&mut self) -> Result<()> {
        full_step(&mut self.state, &self.grid, &self.spec)
    }

    /// One time step `Δt = 1/N`.
    pub fn step(&mut self) -> Result<()> {
        self.half_step()?;
        self.full_step()
    }

    /// Advances until `n` full steps have been taken.
    pub fn advance_to(&mut self, n: usize) -> Result<()> {
        while self.state.n < n {
            self.step()?;
        }
        Ok(())
    }

    pub fn snapshot(&self) -> FieldSnapshot {
        reconstruct_fields(&self.state, &self.grid, &self.spec)
    }

    pub fn diagnostics(&self) -> Diagnostics {
        diagnostics(&self.state, &self.snapshot(), &self.grid, &self.spec)
    }
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    /// Snapshots at every multiple of `emit_every` steps, starting at `t = 0`.
    pub snapshots: Vec<FieldSnapshot>,
    /// One record for the initial state and one after every half and full step.
    pub diagnostics: Vec<Diagnostics>,
    pub full_steps: usize,
    pub half_steps: usize,
}

/// Runs `ceil(t_end·N)` steps.
pub fn run(spec: &ProblemSpec, n: usize, t_end: f64, emit_every: usize) -> Result<RunOutput> {
    let mut sim = Simulation::new(spec.clone(), n)?;
    let steps = (t_end * n as f64 - 1e-9).ceil().max(0.0) as usize;
    let emit_every = emit_every.max(1);
    let mut out = RunOutput {
        snapshots: vec![sim.snapshot()],
        diagnostics: vec![sim.diagnostics()],
        full_steps: 0,
        half_steps: 0,
    };
    for _ in 0..steps {
        sim.half_step()?;
        out.half_steps += 1;
        out.diagnostics.push(sim.diagnostics());
        sim.full_step()?;
        out.full_steps += 1;
        let snap = sim.snapshot();
        out.diagnostics
            .push(diagnostics(sim.state(), &snap, sim.grid(), sim.spec()));
        if out.full_steps.is_multiple_of(emit_every) {
            out.snapshots.push(snap);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::InitialData;

    #[test]
    fn step_counts() {
        let spec = ProblemSpec::telegrapher(0.5, InitialData::zero());
        let out = run(&spec, 4, 1.0, 1).unwrap();
        assert_eq!(out.full_steps, 4);
        assert_eq!(out.half_steps, 4);
        assert_eq!(out.snapshots.len(), 5);
        assert_eq!(out.diagnostics.len(), 9);
        assert!(out.snapshots.iter().all(|s| s.linf_j() == 0.0 && s.linf_rho() == 0.0));
    }

    #[test]
    fn free_transport_returns_after_two_time_units() {
        let data = InitialData::diagonal(|x| (9.0 * x).sin(), |x| x * x - 0.3);
        let spec = ProblemSpec::telegrapher(0.0, data);
        let out = run(&spec, 16, 2.0, 32).unwrap();
        let (first, last) = (&out.snapshots[0], out.snapshots.last().unwrap());
        assert_eq!(last.t, 2.0);
        assert_eq!(first.j_cells, last.j_cells);
    }
}

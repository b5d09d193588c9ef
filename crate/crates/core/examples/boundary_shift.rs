//! A constant boundary flux `J(0) = J(1) = β` is removed by subtracting the
//! stationary solution, simulated with zero boundary flux, and added back.
//!
//! Run with `cargo run --example boundary_shift`.

use dampwave::problem::{homogenize_boundary, InitialData, ProblemSpec};
use dampwave::riemann::DampingFunction;
use dampwave::simulate::Simulation;

fn main() -> dampwave::Result<()> {
    let beta = 0.3;
    let mut spec = ProblemSpec::telegrapher(0.4, InitialData::rho_j(|x| 0.5 - x, |_| 0.3))
        .with_beta(beta);
    spec.g = DampingFunction::cubic(0.1);

    let shifted = homogenize_boundary(&spec)?;
    let shift = shifted.shift.clone().expect("beta is nonzero");
    println!("g(beta) = {:.6}, rho_beta(0) = {:.6}", shift.g_beta, shift.rho_beta(0.0));

    let n = 128;
    let mut sim = Simulation::new(shifted, n)?;
    for t in [0, 1, 3, 6] {
        sim.advance_to(t * n)?;
        let mut snap = sim.snapshot();
        snap.unshift(&shift);
        let dev = snap
            .j_cells
            .iter()
            .fold(0.0_f64, |m, j| m.max((j - beta).abs()));
        println!(
            "t = {t}: J at walls ({:.3}, {:.3}), max |J - beta| = {dev:.3e}, rho(0+) = {:.5}",
            snap.j_nodes[0], snap.j_nodes[n], snap.node_traces[0].plus.rho()
        );
    }
    Ok(())
}

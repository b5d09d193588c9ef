//! Without damping every wave travels freely and reflects at the walls, so
//! the state returns to itself after two time units.
//!
//! Run with `cargo run --example free_transport`.

use dampwave::datagen::generate_bv_data;
use dampwave::problem::ProblemSpec;
use dampwave::simulate::Simulation;
use dampwave::transition::FreePermutation;

fn main() -> dampwave::Result<()> {
    let n = 128;
    let data = generate_bv_data(3, 12, -1.0, 1.0);
    let mut sim = Simulation::new(ProblemSpec::telegrapher(0.0, data.to_initial()), n)?;
    let start = sim.snapshot();

    for t in 1..=4 {
        sim.advance_to(t * n / 2)?;
        let snap = sim.snapshot();
        let dist: f64 = snap
            .j_cells
            .iter()
            .zip(&start.j_cells)
            .map(|(a, b)| (a - b).abs())
            .sum::<f64>()
            / n as f64;
        println!("t = {:.1}: L1 distance of J to the initial flux {dist:.6}", snap.t);
    }
    let end = sim.snapshot();
    println!("J at t = 2 equals J at t = 0 bitwise: {}", end.j_cells == start.j_cells);

    let perm = FreePermutation::new(n);
    let reversal: Vec<usize> = (0..2 * n).rev().collect();
    println!(
        "B(0)^N reverses the wave vector: {}",
        perm.power_map(n as i64) == reversal
    );
    println!(
        "B(0)^(2N) is the identity: {}",
        perm.power_map(2 * n as i64) == (0..2 * n).collect::<Vec<_>>()
    );
    Ok(())
}

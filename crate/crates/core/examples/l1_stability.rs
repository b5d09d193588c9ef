//! Two runs with the same damping but different data approach each other:
//! the L¹ distance of `(f⁻, f⁺)` never grows.
//!
//! Run with `cargo run --release --example l1_stability`.

use dampwave::datagen::generate_bv_data;
use dampwave::problem::{KProfile, ProblemSpec};
use dampwave::riemann::DampingFunction;
use dampwave::simulate::Simulation;

fn distance(a: &Simulation, b: &Simulation) -> f64 {
    let (sa, sb) = (a.snapshot(), b.snapshot());
    let n = sa.cells();
    (0..n)
        .map(|j| {
            (sa.f_minus_cells[j] - sb.f_minus_cells[j]).abs()
                + (sa.f_plus_cells[j] - sb.f_plus_cells[j]).abs()
        })
        .sum::<f64>()
        / n as f64
}

fn main() -> dampwave::Result<()> {
    let n = 256;
    let mut spec = ProblemSpec::telegrapher(0.0, generate_bv_data(10, 16, -1.0, 1.0).to_initial());
    spec.k = KProfile::PiecewiseConstant {
        breakpoints: vec![0.3, 0.7],
        values: vec![0.8, 0.1, 0.5],
    };
    spec.g = DampingFunction::cubic(0.2);
    let mut other = spec.clone();
    other.initial = generate_bv_data(11, 16, -1.0, 1.0).to_initial();

    let mut a = Simulation::new(spec, n)?;
    let mut b = Simulation::new(other, n)?;
    for t in 0..=5 {
        a.advance_to(t * n)?;
        b.advance_to(t * n)?;
        println!("t = {t}: L1 distance {:.8}", distance(&a, &b));
    }
    Ok(())
}

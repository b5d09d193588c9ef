//! Intermittent damping: `α = 1` on `[0, T₁)` and `0` on `[T₁, T₂)`. While the
//! damping is off the waves only travel, so `TV J = ‖σ‖₁` stays constant.
//! The label shows the coefficient used at the most recent interaction.
//!
//! Run with `cargo run --release --example on_off_damping`.

use dampwave::datagen::generate_bv_data;
use dampwave::decay::decay_report;
use dampwave::problem::{AlphaSchedule, ProblemSpec};
use dampwave::simulate::Simulation;
use dampwave::transition::l1_norm;

fn main() -> dampwave::Result<()> {
    let (n, t1, t2) = (256, 1.0, 2.0);
    let data = generate_bv_data(4, 16, -1.0, 1.0);
    let spec = ProblemSpec::telegrapher(0.5, data.to_initial())
        .with_alpha(AlphaSchedule::OnOff { t1, t2 });

    let mut sim = Simulation::new(spec.clone(), n)?;
    for quarter in 1..=16 {
        sim.advance_to(quarter * n / 4)?;
        let t = sim.state().time();
        let phase = if sim.state().alpha_curr > 0.0 { "on " } else { "off" };
        println!("t = {t:>5.2} [{phase}]  TV J = {:.12}", l1_norm(&sim.state().sigma));
    }

    let report = decay_report(&spec, n, 10.0)?;
    println!("C3 = {:.5}", report.constants.c3);
    for r in report.rows.iter().filter(|r| (r.t as usize).is_multiple_of(2)) {
        println!("t = {:>4}: |J| = {:.4e} <= {:.4e}", r.t, r.linf_j, r.envelope_j);
    }
    println!("all checks pass: {}", report.all_pass);
    Ok(())
}

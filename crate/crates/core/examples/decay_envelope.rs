//! Exponential decay of `‖J‖∞` and `‖ρ‖∞` for constant damping compared with
//! the envelopes `C₁e^{−C₃t}` and `C₂e^{−C₃t}`.
//!
//! Run with `cargo run --release --example decay_envelope [seed]`.

use dampwave::datagen::generate_bv_data;
use dampwave::decay::decay_report;
use dampwave::problem::ProblemSpec;

fn main() -> dampwave::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let data = generate_bv_data(seed, 16, -1.0, 1.0);
    let spec = ProblemSpec::telegrapher(0.5, data.to_initial());
    let report = decay_report(&spec, 512, 10.0)?;
    let c = report.constants;
    println!("C1 = {:.4}, C2 = {:.4}, C3 = {:.5}", c.c1, c.c2, c.c3);
    println!("{:>4} {:>12} {:>12} {:>12} {:>12}", "t", "|J|", "env J", "|rho|", "env rho");
    for r in &report.rows {
        println!(
            "{:>4} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.4e}",
            r.t, r.linf_j, r.envelope_j, r.linf_rho, r.envelope_rho
        );
    }
    if let Some(fit) = report.fit {
        println!("fitted rate {:.4} against guaranteed {:.4}", fit.rate, c.c3);
    }
    println!("invariant square widths:");
    for e in &report.trace.entries {
        println!(
            "  h = {:>2}: width {:.5} <= {:.5} (continuum bound {:.5})",
            e.h, e.width, e.bound_corrected, e.bound_raw
        );
    }
    println!("all checks pass: {}", report.all_pass);
    Ok(())
}

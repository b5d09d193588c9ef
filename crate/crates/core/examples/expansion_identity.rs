//! Checks `[B(0) + (d/N)B₁]^N = B(0)^N + dP̂ + R_N(d)` and the bound on the
//! coefficient mass of the remainder.
//!
//! Run with `cargo run --release --example expansion_identity`.

use dampwave::transition::{expansion_report, k_of_d};

fn main() -> dampwave::Result<()> {
    println!(
        "{:>5} {:>5} {:>12} {:>12} {:>12} {:>12} {:>8}",
        "N", "d", "residual", "sum zeta", "sum eta", "bound", "probes"
    );
    for d in [0.1, 0.5, 1.0, 1.5] {
        for n in [4, 16, 64, 256] {
            let r = expansion_report(n, d)?;
            println!(
                "{:>5} {:>5} {:>12.3e} {:>12.6} {:>12.6} {:>12.6} {:>8}",
                n, d, r.lhs_minus_rhs_max_abs, r.zeta_sum, r.eta_sum, r.bound_rhs, r.probes
            );
            assert!(r.identity_holds() && r.bound_holds());
        }
        println!(
            "      limit e^d - d - 1 = {:.6}, K(d) = {:.6}",
            d.exp() - d - 1.0,
            k_of_d(d)
        );
    }
    Ok(())
}

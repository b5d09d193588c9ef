//! Solves one Riemann problem at a damped node, then lets the two emitted
//! waves meet the neighbouring fans and reflect at a wall.
//!
//! Run with `cargo run --example riemann_fan`.

use dampwave::riemann::{
    boundary_reflect, multiple_interaction, solve_riemann, DampingFunction, DiagState, Side,
};

fn main() -> dampwave::Result<()> {
    let left = DiagState::from_rho_j(0.6, 0.2);
    let right = DiagState::from_rho_j(-0.4, -0.1);
    let delta = 0.05;

    for (name, g) in [
        ("linear", DampingFunction::linear()),
        ("cubic 0.1", DampingFunction::cubic(0.1)),
    ] {
        let fan = solve_riemann(left, right, delta, 1.0, &g)?;
        println!("g = {name}");
        println!("  J*             = {:.12}", fan.j_star);
        println!(
            "  middle states  ({:.6}, {:.6}) | ({:.6}, {:.6})",
            fan.middle_left.rho(),
            fan.middle_left.j(),
            fan.middle_right.rho(),
            fan.middle_right.j()
        );
        println!(
            "  wave sizes     sigma_-1 = {:.6}, sigma_+1 = {:.6}",
            fan.sigma_minus1, fan.sigma_plus1
        );
        println!(
            "  density jump   {:.6} (= -2 g(J*) delta = {:.6})",
            fan.middle_right.rho() - fan.middle_left.rho(),
            -2.0 * g.eval(fan.j_star) * delta
        );

        // The +1 wave meets a −1 wave of size 0.05 at the next node.
        let hit = multiple_interaction((fan.sigma_plus1, 0.05), fan.j_star, delta, 1.0, 1.0, &g)?;
        println!(
            "  interaction    out = ({:.6}, {:.6}), new J* = {:.6}",
            hit.sigma_out.0, hit.sigma_out.1, hit.j_star_plus
        );
    }

    println!(
        "reflection at x = 0 of a state with J = 0.2: sigma = {:.3}",
        boundary_reflect(Side::Left, left)
    );
    println!(
        "reflection at x = 1 of a state with J = -0.1: sigma = {:.3}",
        boundary_reflect(Side::Right, right)
    );
    Ok(())
}

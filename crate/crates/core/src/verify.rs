//! Self-contained identity and property suite behind `dampwave verify`.
//!
//! Every check builds its own inputs from fixed seeds, so the suite needs no
//! configuration and is deterministic.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::datagen::generate_bv_data;
use crate::decay::contraction_check_t1;
use crate::error::Result;
use crate::problem::{InitialData, KProfile, ProblemSpec};
use crate::riemann::{solve_riemann, DampingFunction, DiagState};
use crate::simulate::Simulation;
use crate::transition::{
    apply_b, apply_b_transpose, bessel_terms, c_limit, cal_c, contraction_constants, d_star,
    dense, eta_sum, hat_p_apply, k_of_d, l1_norm, ones, phi, v_minus, zeta_sum, FreePermutation,
    GammaVector, OperatorKind, StructuredOperator,
};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

fn check(name: &'static str, outcome: Result<(bool, String)>) -> CheckResult {
    match outcome {
        Ok((pass, detail)) => CheckResult { name, pass, detail },
        Err(e) => CheckResult {
            name,
            pass: false,
            detail: format!("error: {e}"),
        },
    }
}

fn dense_of(kind: OperatorKind, n: usize) -> Result<DMatrix<f64>> {
    dense(&StructuredOperator::new(kind, n)?)
}

fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0, |a: f64, v| a.max(v.abs()))
}

fn expansion_identity() -> Result<(bool, String)> {
    let mut worst = 0.0_f64;
    for n in [2, 4, 8] {
        for d in [0.1, 0.7, 1.5] {
            let gamma = d / n as f64;
            let b0 = dense_of(OperatorKind::B0Power(1), n)?;
            let b1 = dense_of(OperatorKind::B1, n)?;
            let step = &b0 + &b1 * gamma;
            let lhs = (0..n).fold(DMatrix::identity(2 * n, 2 * n), |acc, _| &acc * &step);
            let b0n = dense_of(OperatorKind::B0Power(n as i64), n)?;
            let p_hat = dense_of(OperatorKind::HatP, n)?;
            let mut rem = DMatrix::zeros(2 * n, 2 * n);
            let mut basis = vec![0.0; 2 * n];
            for k in 0..2 * n {
                basis[k] = 1.0;
                let col = crate::transition::remainder_apply(n, d, &basis)?;
                rem.set_column(k, &nalgebra::DVector::from_vec(col));
                basis[k] = 0.0;
            }
            let rhs = b0n + p_hat * d + rem;
            worst = worst.max(max_abs(&(lhs - rhs)));
        }
    }
    Ok((worst <= 1e-11, format!("max residual {worst:.3e}")))
}

fn free_period() -> Result<(bool, String)> {
    let mut ok = true;
    for n in [2, 8, 64] {
        let p = FreePermutation::new(n);
        let identity: Vec<usize> = (0..2 * n).collect();
        ok &= p.power_map(2 * n as i64) == identity;
        ok &= (1..2 * n as i64).all(|k| p.power_map(k) != identity);
    }
    Ok((ok, "N in {2, 8, 64}, exact index maps".into()))
}

fn half_period_reversal() -> Result<(bool, String)> {
    let ok = [2, 8, 64].iter().all(|&n| {
        let reversed: Vec<usize> = (0..2 * n).rev().collect();
        FreePermutation::new(n).power_map(n as i64) == reversed
    });
    Ok((ok, "B(0)^N is the antidiagonal permutation".into()))
}

fn doubly_stochastic() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let n = 8;
    let mut worst = 0.0_f64;
    let mut nonneg = true;
    for _ in 0..10 {
        let g = GammaVector::new((0..n - 1).map(|_| rng.gen::<f64>()).collect())?;
        let m = dense_of(OperatorKind::B(g), n)?;
        nonneg &= m.iter().all(|v| *v >= 0.0);
        for i in 0..2 * n {
            worst = worst.max((m.row(i).sum() - 1.0).abs());
            worst = worst.max((m.column(i).sum() - 1.0).abs());
        }
    }
    Ok((
        nonneg && worst <= 1e-14,
        format!("largest row/column sum defect {worst:.1e}"),
    ))
}

fn invariant_vectors() -> Result<(bool, String)> {
    let n = 16;
    let g = GammaVector::uniform(n, 0.5)?;
    let e = ones(n);
    let vm = v_minus(n);
    let be = apply_b(&g, &e)?;
    let btv = apply_b_transpose(&g, &vm)?;
    let err_e = be.iter().zip(&e).fold(0.0_f64, |a, (x, y)| a.max((x - y).abs()));
    let err_v = btv.iter().zip(&vm).fold(0.0_f64, |a, (x, y)| a.max((x + y).abs()));
    let err = err_e.max(err_v);
    Ok((err <= 1e-15, format!("B e = e, B^T v- = -v- to {err:.1e}")))
}

fn phi_properties() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let n = 4;
    let mut worst = l1_norm(&phi(&vec![0.0; 2 * n])?);
    let perm = FreePermutation::new(n);
    for _ in 0..20 {
        let mut w: Vec<f64> = (0..2 * n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let mean = w.iter().sum::<f64>() / (2 * n) as f64;
        w.iter_mut().for_each(|v| *v -= mean);
        let pw = phi(&w)?;
        let ppw = phi(&pw)?;
        for (a, b) in ppw.iter().zip(&pw) {
            worst = worst.max((a + b).abs());
        }
        let lhs = phi(&perm.apply(n as i64, &w)?)?;
        let rhs = perm.apply(n as i64, &pw)?;
        for (a, b) in lhs.iter().zip(&rhs) {
            worst = worst.max((a - b).abs());
        }
    }
    Ok((worst <= 1e-14, format!("max defect {worst:.1e}")))
}

fn coefficient_bounds() -> Result<(bool, String)> {
    let mut ok = true;
    let mut min_margin = f64::INFINITY;
    for n in [8, 64, 512] {
        for d in [0.25, 0.5, 1.0] {
            let nf = n as f64;
            let (zs, es) = (zeta_sum(n, d), eta_sum(n, d));
            let (f0, f1) = bessel_terms(d);
            let total = d.exp() - d - 1.0 + k_of_d(d) / nf;
            ok &= zs + es <= total + 1e-12;
            ok &= zs <= d.sinh() - d + f0 / nf + 1e-12;
            ok &= es <= d.cosh() - 1.0 + f1 / nf + 1e-12;
            min_margin = min_margin.min(total - zs - es);
        }
    }
    Ok((ok, format!("smallest margin {min_margin:.3e}")))
}

fn closed_form_constants() -> Result<(bool, String)> {
    let ds = d_star()?;
    let ok = cal_c(0.0) == 1.0
        && (cal_c(0.5) - 0.80950).abs() <= 5e-5
        && ds > 0.74
        && ds < 0.75
        && (cal_c(ds) - 1.0).abs() <= 1e-10;
    Ok((ok, format!("calC(0.5) = {:.6}, d* = {ds:.10}", cal_c(0.5))))
}

fn c_n_convergence() -> Result<(bool, String)> {
    let mut ok = true;
    let mut worst = 0.0_f64;
    for d in [0.25, 0.5, 1.0] {
        for n in [64, 128, 256, 512, 1024] {
            let gap = (contraction_constants(n, d).c_n - c_limit(d)).abs();
            let bound = (k_of_d(d) + d * d * d.exp()) / n as f64;
            ok &= gap <= bound;
            worst = worst.max(gap / bound);
        }
    }
    Ok((ok, format!("largest |C_N - C|/bound {worst:.3}")))
}

fn l1_contraction() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let d = 0.5;
    let mut worst = 0.0_f64;
    for n in [32, 128] {
        let g = GammaVector::uniform(n, d)?;
        let cn = contraction_constants(n, d).c_n;
        for _ in 0..25 {
            let w: Vec<f64> = (0..2 * n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let p = hat_p_apply(&w)?;
            let mut v: Vec<f64> = w.iter().zip(&p).map(|(a, b)| a - b).collect();
            let before = l1_norm(&v);
            for _ in 0..n {
                v = apply_b(&g, &v)?;
            }
            worst = worst.max(l1_norm(&v) / (cn * before));
        }
    }
    Ok((worst <= 1.0, format!("largest ratio to C_N {worst:.4}")))
}

fn riemann_consistency() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let g = DampingFunction::cubic(0.1);
    let mut worst = 0.0_f64;
    for _ in 0..200 {
        let mut s = || DiagState::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let (l, r) = (s(), s());
        let delta = 0.05;
        let fan = solve_riemann(l, r, delta, 1.0, &g)?;
        let residual = fan.j_star + g.eval(fan.j_star) * delta - (l.f_plus - r.f_minus);
        let jump = fan.middle_right.rho() - fan.middle_left.rho() + 2.0 * g.eval(fan.j_star) * delta;
        let sizes = fan.sigma_minus1 + fan.sigma_plus1 - (r.j() - l.j());
        worst = worst.max(residual.abs()).max(jump.abs()).max(sizes.abs());
    }
    Ok((worst <= 1e-10, format!("max defect {worst:.1e}")))
}

fn bv_spec(seed: u64, d: f64) -> ProblemSpec {
    ProblemSpec::telegrapher(d, generate_bv_data(seed, 16, -1.0, 1.0).to_initial())
}

/// Runs seeded BV problems and checks mass, invariant square and `σ·e` at every step.
fn scheme_invariants() -> Result<[(bool, String); 3]> {
    let (n, steps) = (128, 256);
    let (mut mass, mut domain, mut sum) = (0.0_f64, 0.0_f64, 0.0_f64);
    for seed in 0..4 {
        let mut sim = Simulation::new(bv_spec(seed, 0.5), n)?;
        let (lo, hi) = sim.initial().range();
        let (m, big_m) = (lo.min(0.0), hi.max(0.0));
        for _ in 0..steps {
            sim.half_step()?;
            sim.full_step()?;
            let diag = sim.diagnostics();
            mass = mass.max(diag.mass_drift);
            let out = (diag.sup_fp.max(diag.sup_fm) - big_m).max(m - diag.inf_fp.min(diag.inf_fm));
            domain = domain.max(out);
            sum = sum.max(diag.sigma_dot_e.abs());
        }
    }
    Ok([
        (mass <= 1e-10, format!("max mass drift {mass:.1e}")),
        (domain <= 1e-10, format!("max excursion {domain:.1e}")),
        (sum <= 1e-11, format!("max |sigma.e| {sum:.1e}")),
    ])
}

fn l1_stability() -> Result<(bool, String)> {
    let n = 128;
    let mut ok = true;
    for pair in 0..3 {
        let mut a = Simulation::new(bv_spec(100 + pair, 0.5), n)?;
        let mut b = Simulation::new(bv_spec(200 + pair, 0.5), n)?;
        let mut prev = f64::INFINITY;
        for step in 0..=2 * n {
            if step > 0 {
                a.step()?;
                b.step()?;
            }
            let (sa, sb) = (a.snapshot(), b.snapshot());
            let dist: f64 = (0..n)
                .map(|j| {
                    (sa.f_minus_cells[j] - sb.f_minus_cells[j]).abs()
                        + (sa.f_plus_cells[j] - sb.f_plus_cells[j]).abs()
                })
                .sum::<f64>()
                / n as f64;
            ok &= dist <= prev + 1e-10;
            prev = dist;
        }
    }
    Ok((ok, "3 pairs over 2 time units".into()))
}

fn free_transport_period() -> Result<(bool, String)> {
    let n = 64;
    let mut sim = Simulation::new(bv_spec(5, 0.0), n)?;
    let start = sim.snapshot();
    sim.advance_to(2 * n)?;
    let end = sim.snapshot();
    let rho_err = start
        .rho_cells
        .iter()
        .zip(&end.rho_cells)
        .fold(0.0_f64, |a, (x, y)| a.max((x - y).abs()));
    Ok((
        start.j_cells == end.j_cells && rho_err <= 1e-12,
        format!("J bitwise equal, rho within {rho_err:.1e}"),
    ))
}

fn dual_path() -> Result<(bool, String)> {
    let n = 64;
    let mut worst = 0.0_f64;
    for seed in 0..2 {
        let linear = bv_spec(seed, 0.5);
        let mut general = linear.clone();
        general.g = DampingFunction::linear().as_custom();
        let mut a = Simulation::new(linear, n)?;
        let mut b = Simulation::new(general, n)?;
        a.advance_to(200)?;
        b.advance_to(200)?;
        for (x, y) in a.state().sigma.iter().zip(&b.state().sigma) {
            worst = worst.max((x - y).abs());
        }
    }
    Ok((worst <= 1e-12, format!("max sigma difference {worst:.1e}")))
}

fn contraction_at_one() -> Result<(bool, String)> {
    let (n, d) = (128, 0.5);
    let mut margin = f64::INFINITY;
    for seed in 0..4 {
        let mut sim = Simulation::new(bv_spec(seed, d), n)?;
        let (lo, hi) = sim.initial().range();
        let tv = sim.initial().tv_flux_extended();
        sim.advance_to(n)?;
        let r = contraction_check_t1(&sim.snapshot(), n, d, lo.min(0.0), hi.max(0.0), tv);
        margin = margin.min(r.margin);
    }
    Ok((margin >= 0.0, format!("smallest margin {margin:.4}")))
}

fn k_independent_of_profile() -> Result<(bool, String)> {
    // A piecewise profile equal to d everywhere must give the same run as k ≡ d.
    let n = 32;
    let data = generate_bv_data(9, 8, -1.0, 1.0);
    let a = ProblemSpec::telegrapher(0.5, data.to_initial());
    let mut b = a.clone();
    b.k = KProfile::PiecewiseConstant {
        breakpoints: vec![0.5],
        values: vec![0.5, 0.5],
    };
    let mut sa = Simulation::new(a, n)?;
    let mut sb = Simulation::new(b, n)?;
    sa.advance_to(n)?;
    sb.advance_to(n)?;
    let worst = sa
        .state()
        .sigma
        .iter()
        .zip(&sb.state().sigma)
        .fold(0.0_f64, |m, (x, y)| m.max((x - y).abs()));
    Ok((worst <= 1e-14, format!("max sigma difference {worst:.1e}")))
}

fn zero_data_stays_zero() -> Result<(bool, String)> {
    let mut sim = Simulation::new(ProblemSpec::telegrapher(0.5, InitialData::zero()), 16)?;
    sim.advance_to(32)?;
    let s = sim.snapshot();
    let ok = s.linf_j() == 0.0 && s.linf_rho() == 0.0;
    Ok((ok, "all fields identically zero".into()))
}

/// Runs the full suite.
pub fn run_verify() -> Vec<CheckResult> {
    let mut out = vec![
        check("expansion_identity", expansion_identity()),
        check("free_step_period_2n", free_period()),
        check("free_step_half_period_reversal", half_period_reversal()),
        check("transition_doubly_stochastic", doubly_stochastic()),
        check("invariant_vectors_e_vminus", invariant_vectors()),
        check("phi_properties", phi_properties()),
        check("coefficient_bounds", coefficient_bounds()),
        check("closed_form_constants", closed_form_constants()),
        check("c_n_convergence", c_n_convergence()),
        check("l1_contraction_on_e_minus", l1_contraction()),
        check("riemann_fan_consistency", riemann_consistency()),
    ];
    match scheme_invariants() {
        Ok([mass, domain, sum]) => {
            out.push(check("mass_conservation", Ok(mass)));
            out.push(check("invariant_domain", Ok(domain)));
            out.push(check("sigma_sum_zero", Ok(sum)));
        }
        Err(e) => {
            let msg = e.to_string();
            for name in ["mass_conservation", "invariant_domain", "sigma_sum_zero"] {
                out.push(CheckResult {
                    name,
                    pass: false,
                    detail: format!("error: {msg}"),
                });
            }
        }
    }
    out.extend([
        check("l1_stability_between_runs", l1_stability()),
        check("free_transport_period", free_transport_period()),
        check("dual_path_equivalence", dual_path()),
        check("invariant_square_contraction_t1", contraction_at_one()),
        check("uniform_piecewise_profile", k_independent_of_profile()),
        check("zero_data_stays_zero", zero_data_stays_zero()),
    ]);
    out
}

//! Decay of the linear telegrapher system `k ≡ d`, `g(J) = J`.
//!
//! Over one time unit with `α ≡ 1` the square `[m, M]²` containing all
//! diagonal values shrinks by the factor `𝒞(d)`. On the grid the statement
//! holds with a correction:
//!
//! ```text
//!   sup f± − inf f± at t = 1  ≤  𝒞_N(d) (M − m) + Ĉ/N,    Ĉ = d [TV J̄₀ + 3(M − m)]
//! ```
//!
//! where `J̄₀` is the initial flux extended by zero outside `[0, 1]`.
//! Iterating gives exponential envelopes:
//!
//! ```text
//!   constant α:          C₃ = |ln 𝒞(d)|,          C₁ = (M − m)/𝒞(d)
//!   on-off (T₁, T₂):     C₃ = ⌊T₁⌋/T₂ |ln 𝒞(d)|,  C₁ = (M − m)/𝒞(d)^⌊T₁⌋
//!   ‖J(t)‖_∞ ≤ C₁ e^{−C₃ t},   ‖ρ(t)‖_∞ ≤ 2 C₁ e^{−C₃ t}
//! ```

use crate::error::{Error, Result};
use crate::fields::FieldSnapshot;
use crate::problem::{AlphaSchedule, KProfile, ProblemSpec};
use crate::simulate::Simulation;
use crate::transition::{cal_c, contraction_constants, d_star};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DecayMode {
    ConstantAlpha,
    OnOff { t1: f64, t2: f64 },
}

impl DecayMode {
    /// Damped time units per period: 1 for constant damping, `⌊T₁⌋` for on-off.
    pub fn active_units(&self) -> u32 {
        match self {
            DecayMode::ConstantAlpha => 1,
            DecayMode::OnOff { t1, .. } => t1.floor() as u32,
        }
    }

    /// Length of one period.
    pub fn period(&self) -> f64 {
        match self {
            DecayMode::ConstantAlpha => 1.0,
            DecayMode::OnOff { t2, .. } => *t2,
        }
    }

    pub fn from_schedule(alpha: &AlphaSchedule) -> Result<Self> {
        match alpha {
            AlphaSchedule::Constant(a) if *a == 1.0 => Ok(DecayMode::ConstantAlpha),
            AlphaSchedule::OnOff { t1, t2 } => Ok(DecayMode::OnOff { t1: *t1, t2: *t2 }),
            other => Err(Error::Unsupported(format!(
                "decay envelopes need alpha = 1 or an on-off schedule, got {other:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeConstants {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub mode: DecayMode,
}

impl EnvelopeConstants {
    pub fn envelope_j(&self, t: f64) -> f64 {
        self.c1 * (-self.c3 * t).exp()
    }

    pub fn envelope_rho(&self, t: f64) -> f64 {
        self.c2 * (-self.c3 * t).exp()
    }
}

pub fn envelope_constants(d: f64, m: f64, big_m: f64, mode: DecayMode) -> Result<EnvelopeConstants> {
    let ds = d_star()?;
    if !(d > 0.0 && d < ds) {
        return Err(Error::OutOfTheory { d, d_star: ds });
    }
    if !(m <= 0.0 && big_m >= 0.0) {
        return Err(Error::Configuration(format!(
            "the invariant square [{m:?}, {big_m:?}] must contain 0"
        )));
    }
    if let DecayMode::OnOff { t1, t2 } = mode {
        if t1 < 1.0 {
            return Err(Error::Unsupported(format!(
                "on-off envelopes need T1 >= 1, got {t1:?}"
            )));
        }
        if t2.is_nan() || t2 <= t1 {
            return Err(Error::Configuration(format!(
                "on-off schedule needs T2 > T1, got T1 = {t1:?}, T2 = {t2:?}"
            )));
        }
    }
    let c = cal_c(d);
    let units = mode.active_units() as f64;
    let c1 = (big_m - m) / c.powf(units);
    Ok(EnvelopeConstants {
        c1,
        c2: 2.0 * c1,
        c3: units / mode.period() * c.ln().abs(),
        mode,
    })
}

/// `Ĉ = d [TV J̄₀ + 3(M − m)]`.
pub fn discretization_constant(d: f64, tv_j0bar: f64, width: f64) -> f64 {
    d * (tv_j0bar + 3.0 * width)
}

/// Widths of the diagonal values at `t = 1` compared with the grid bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContractionReport {
    pub width_plus: f64,
    pub width_minus: f64,
    /// `max(sup f⁺, sup f⁻) − min(inf f⁺, inf f⁻)`.
    pub width_combined: f64,
    /// `𝒞_N(d)(M − m) + Ĉ/N`.
    pub bound: f64,
    /// `𝒞(d)(M − m)`.
    pub raw_bound: f64,
    pub margin: f64,
    pub pass: bool,
}

pub fn contraction_check_t1(
    snapshot: &FieldSnapshot,
    n: usize,
    d: f64,
    m: f64,
    big_m: f64,
    tv_j0bar: f64,
) -> ContractionReport {
    let (sp, ip, sm, im) = snapshot.trace_extrema();
    let width = big_m - m;
    let constants = contraction_constants(n, d);
    let bound = constants.cal_c_n * width + discretization_constant(d, tv_j0bar, width) / n as f64;
    let width_combined = sp.max(sm) - ip.min(im);
    ContractionReport {
        width_plus: sp - ip,
        width_minus: sm - im,
        width_combined,
        bound,
        raw_bound: constants.cal_c * width,
        margin: bound - width_combined,
        pass: width_combined <= bound,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContractionEntry {
    pub h: usize,
    pub t: f64,
    pub big_m_h: f64,
    pub m_h: f64,
    pub width: f64,
    /// `𝒞(d)^{hk}(M − m)` with `k` damped units per period.
    pub bound_raw: f64,
    /// `𝒞_N(d)^{hk}(M − m) + hkĈ/N`.
    pub bound_corrected: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContractionTrace {
    pub entries: Vec<ContractionEntry>,
    /// Widths non-increasing, `m_h` non-decreasing and `M_h` non-increasing.
    pub monotone: bool,
}

impl ContractionTrace {
    pub fn within_corrected_bounds(&self) -> bool {
        self.entries.iter().all(|e| e.width <= e.bound_corrected)
    }
}

fn linear_constant_d(spec: &ProblemSpec) -> Result<f64> {
    if !spec.g.is_linear() {
        return Err(Error::Unsupported(
            "decay analysis needs linear damping".into(),
        ));
    }
    match spec.k {
        KProfile::Constant(d) => Ok(d),
        _ => Err(Error::Unsupported(
            "decay analysis needs a constant damping profile".into(),
        )),
    }
}

/// The square `[m, M]` spanned by the initial cells and 0.
fn initial_square(sim: &Simulation) -> (f64, f64) {
    let (lo, hi) = sim.initial().range();
    (lo.min(0.0), hi.max(0.0))
}

/// Records `M_h`, `m_h` at `t = h` (constant damping) or `t = hT₂` (on-off)
/// for `h = 0..=periods`, advancing `sim` from its initial state.
pub fn contraction_sequence(
    sim: &mut Simulation,
    mode: DecayMode,
    periods: usize,
) -> Result<ContractionTrace> {
    let d = linear_constant_d(sim.spec())?;
    let n = sim.grid().n;
    let (m, big_m) = initial_square(sim);
    let width0 = big_m - m;
    let chat = discretization_constant(d, sim.initial().tv_flux_extended(), width0);
    let constants = contraction_constants(n, d);
    let k = mode.active_units() as i32;
    let mut entries = vec![ContractionEntry {
        h: 0,
        t: 0.0,
        big_m_h: big_m,
        m_h: m,
        width: width0,
        bound_raw: width0,
        bound_corrected: width0,
    }];
    for h in 1..=periods {
        let t = h as f64 * mode.period();
        sim.advance_to((t * n as f64).round() as usize)?;
        let (sp, ip, sm, im) = sim.snapshot().trace_extrema();
        let (big_m_h, m_h) = (sp.max(sm), ip.min(im));
        let hk = h as i32 * k;
        entries.push(ContractionEntry {
            h,
            t,
            big_m_h,
            m_h,
            width: big_m_h - m_h,
            bound_raw: constants.cal_c.powi(hk) * width0,
            bound_corrected: constants.cal_c_n.powi(hk) * width0 + hk as f64 * chat / n as f64,
        });
    }
    let monotone = entries.windows(2).all(|w| {
        w[1].width <= w[0].width && w[1].m_h >= w[0].m_h && w[1].big_m_h <= w[0].big_m_h
    });
    Ok(ContractionTrace { entries, monotone })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateFit {
    /// Minus the slope of `ln ‖J‖_∞` against `t`.
    pub rate: f64,
    pub prefactor: f64,
    pub samples: usize,
}

/// Least-squares fit of `ln y = ln a − b t`; samples with `y <= 1e-14` are dropped.
pub fn fit_rate(series: &[(f64, f64)]) -> Result<RateFit> {
    let pts: Vec<(f64, f64)> = series
        .iter()
        .filter(|(_, y)| *y > 1e-14)
        .map(|(t, y)| (*t, y.ln()))
        .collect();
    if pts.len() < 4 {
        return Err(Error::InsufficientSignal { usable: pts.len() });
    }
    let k = pts.len() as f64;
    let mt = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mt).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mt) * (p.1 - my)).sum();
    let slope = if sxx == 0.0 { 0.0 } else { sxy / sxx };
    Ok(RateFit {
        rate: -slope,
        prefactor: (my - slope * mt).exp(),
        samples: pts.len(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayRow {
    pub t: f64,
    pub linf_j: f64,
    pub envelope_j: f64,
    pub linf_rho: f64,
    pub envelope_rho: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecayReport {
    pub rows: Vec<DecayRow>,
    pub constants: EnvelopeConstants,
    /// Relative slack `ε_N = 5Ĉ/((M − m)N)` applied to both envelopes.
    pub epsilon_n: f64,
    /// Fit over the rows with `t >= 1`, when there is enough signal.
    pub fit: Option<RateFit>,
    pub trace: ContractionTrace,
    pub all_pass: bool,
}

/// Compares `‖J‖_∞` and `‖ρ‖_∞` at every integer time up to `t_end` with the
/// envelopes of the damping mode given by `spec.alpha`.
pub fn decay_report(spec: &ProblemSpec, n: usize, t_end: f64) -> Result<DecayReport> {
    let d = linear_constant_d(spec)?;
    let mode = DecayMode::from_schedule(&spec.alpha)?;
    let mut sim = Simulation::new(spec.clone(), n)?;
    let (m, big_m) = initial_square(&sim);
    let width = big_m - m;
    let constants = envelope_constants(d, m, big_m, mode)?;
    let chat = discretization_constant(d, sim.initial().tv_flux_extended(), width);
    let epsilon_n = if width > 0.0 {
        5.0 * chat / (width * n as f64)
    } else {
        0.0
    };
    let mut trace_sim = sim.clone();
    let mut rows = Vec::new();
    let last = (t_end + 1e-12).floor() as usize;
    for t in 0..=last {
        sim.advance_to(t * n)?;
        let snap = sim.snapshot();
        let tf = t as f64;
        let (linf_j, linf_rho) = (snap.linf_j(), snap.linf_rho());
        let (envelope_j, envelope_rho) = (constants.envelope_j(tf), constants.envelope_rho(tf));
        rows.push(DecayRow {
            t: tf,
            linf_j,
            envelope_j,
            linf_rho,
            envelope_rho,
            pass: linf_j <= envelope_j * (1.0 + epsilon_n)
                && linf_rho <= envelope_rho * (1.0 + epsilon_n),
        });
    }
    let tail: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.t >= 1.0)
        .map(|r| (r.t, r.linf_j))
        .collect();
    let fit = fit_rate(&tail).ok();
    let periods = (t_end / mode.period() + 1e-12).floor() as usize;
    let trace = contraction_sequence(&mut trace_sim, mode, periods)?;
    let all_pass = rows.iter().all(|r| r.pass) && trace.within_corrected_bounds();
    Ok(DecayReport {
        rows,
        constants,
        epsilon_n,
        fit,
        trace,
        all_pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::InitialData;

    #[test]
    fn constants_for_constant_damping() {
        let c = envelope_constants(0.5, -1.0, 1.0, DecayMode::ConstantAlpha).unwrap();
        let cc = cal_c(0.5);
        assert!((c.c3 - cc.ln().abs()).abs() < 1e-15);
        assert!((c.c3 - 0.21134).abs() < 5e-5);
        assert!((c.c1 - 2.0 / cc).abs() < 1e-15);
        assert!((c.c1 - 2.4707).abs() < 1e-4);
        assert_eq!(c.c2, 2.0 * c.c1);
    }

    #[test]
    fn constants_for_on_off() {
        let mode = DecayMode::OnOff { t1: 1.0, t2: 2.0 };
        let c = envelope_constants(0.5, -1.0, 1.0, mode).unwrap();
        assert!((c.c3 - 0.5 * cal_c(0.5).ln().abs()).abs() < 1e-15);
        assert!((c.c3 - 0.10567).abs() < 5e-5);
        let mode = DecayMode::OnOff { t1: 2.5, t2: 4.0 };
        let c = envelope_constants(0.5, -1.0, 1.0, mode).unwrap();
        assert!((c.c1 - 2.0 / cal_c(0.5).powi(2)).abs() < 1e-14);
    }

    #[test]
    fn rate_vanishes_with_damping() {
        let mut prev = f64::INFINITY;
        for d in [0.1, 0.01, 0.001] {
            let c = envelope_constants(d, -1.0, 1.0, DecayMode::ConstantAlpha).unwrap();
            assert!(c.c3 > 0.0 && c.c3 < prev);
            prev = c.c3;
        }
        assert!(prev < 1e-3);
    }

    #[test]
    fn out_of_theory_inputs() {
        assert!(matches!(
            envelope_constants(0.8, -1.0, 1.0, DecayMode::ConstantAlpha),
            Err(Error::OutOfTheory { .. })
        ));
        assert!(matches!(
            envelope_constants(0.5, -1.0, 1.0, DecayMode::OnOff { t1: 0.5, t2: 2.0 }),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn synthetic_fits() {
        let series: Vec<(f64, f64)> = (0..10)
            .map(|i| (i as f64, 3.0 * (-0.7 * i as f64).exp()))
            .collect();
        let fit = fit_rate(&series).unwrap();
        assert!((fit.rate - 0.7).abs() < 1e-10);
        assert!((fit.prefactor - 3.0).abs() < 1e-10);
        let flat: Vec<(f64, f64)> = (0..10).map(|i| (i as f64, 0.5)).collect();
        assert_eq!(fit_rate(&flat).unwrap().rate, 0.0);
        let tiny: Vec<(f64, f64)> = (0..10).map(|i| (i as f64, 1e-20)).collect();
        assert!(matches!(
            fit_rate(&tiny),
            Err(Error::InsufficientSignal { usable: 0 })
        ));
    }

    #[test]
    fn zero_data_passes_trivially() {
        let spec = ProblemSpec::telegrapher(0.5, InitialData::zero());
        let mut sim = Simulation::new(spec.clone(), 16).unwrap();
        sim.advance_to(16).unwrap();
        let r = contraction_check_t1(&sim.snapshot(), 16, 0.5, 0.0, 0.0, 0.0);
        assert!(r.pass);
        assert_eq!(r.width_combined, 0.0);
        let report = decay_report(&spec, 16, 3.0).unwrap();
        assert!(report.all_pass);
        assert!(report.rows.iter().all(|r| r.linf_j == 0.0 && r.envelope_j == 0.0));
        assert!(report.fit.is_none());
    }

    #[test]
    fn bound_arithmetic() {
        let spec = ProblemSpec::telegrapher(0.5, InitialData::zero());
        let sim = Simulation::new(spec, 256).unwrap();
        let r = contraction_check_t1(&sim.snapshot(), 256, 0.5, -1.0, 1.0, 3.0);
        let expected = contraction_constants(256, 0.5).cal_c_n * 2.0 + 0.5 * (3.0 + 6.0) / 256.0;
        assert!((r.bound - expected).abs() < 1e-15);
    }

    #[test]
    fn trace_starts_at_initial_width() {
        let data = InitialData::diagonal(|x| 0.5 - x, |x| if x < 0.4 { 0.3 } else { -0.6 });
        let mut sim = Simulation::new(ProblemSpec::telegrapher(0.5, data), 64).unwrap();
        let trace = contraction_sequence(&mut sim, DecayMode::ConstantAlpha, 3).unwrap();
        let e0 = trace.entries[0];
        assert_eq!(e0.width, e0.bound_raw);
        assert_eq!(e0.width, e0.big_m_h - e0.m_h);
        assert!(trace.monotone);
        assert!(trace.within_corrected_bounds());
    }
}

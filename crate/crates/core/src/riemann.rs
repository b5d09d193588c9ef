//! Local solvers for the damped system in diagonal form.
//!
//! With `f± = (ρ ± J)/2` the system becomes two transport equations with
//! speeds ±1 coupled only through the damping term. A node of the grid
//! carries a stationary discontinuity (the 0-wave) of strength `δ·α`, so a
//! Riemann problem there is resolved by three waves:
//!
//! ```text
//!        (ρ*_l, J*) | (ρ*_r, J*)
//!      -1 wave \    |    / +1 wave
//!               \   |   /
//!   (ρ_l, J_l)   \  |  /   (ρ_r, J_r)
//!  --------------- x_j -----------------
//!
//!   J* + g(J*) δα = f⁺_l − f⁻_r
//!   σ₋₁ = J* − J_l,    σ₁ = J_r − J*
//!   ρ*_r − ρ*_l = −2 g(J*) δα
//! ```
//!
//! `f⁺` is continuous across the −1 wave and `f⁻` across the +1 wave, so all
//! four states of the fan stay in the square spanned by the input values.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Relative residual tolerance of the middle-state root finder.
pub const ROOT_TOL: f64 = 1e-12;
/// Iteration cap of the middle-state root finder.
pub const ROOT_MAX_ITER: usize = 200;
/// Number of probe points used to certify `g' >= 0` and bound `sup g'`.
pub const PROBE_POINTS: usize = 1024;

type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DampingKind {
    /// `g(J) = J`, handled by closed forms everywhere.
    Linear,
    /// Any other monotone `g` with `g(0) = 0`, handled by root solves.
    Custom,
}

/// The damping nonlinearity `g` together with its derivative.
#[derive(Clone)]
pub struct DampingFunction {
    kind: DampingKind,
    label: String,
    eval: ScalarFn,
    deriv: ScalarFn,
}

impl fmt::Debug for DampingFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DampingFunction")
            .field("kind", &self.kind)
            .field("label", &self.label)
            .finish()
    }
}

impl DampingFunction {
    /// The telegrapher damping `g(J) = J`.
    pub fn linear() -> Self {
        Self {
            kind: DampingKind::Linear,
            label: "linear".into(),
            eval: Arc::new(|j| j),
            deriv: Arc::new(|_| 1.0),
        }
    }

    /// A user supplied damping. `eval` must satisfy `g(0) = 0` and be
    /// nondecreasing; [`DampingFunction::sup_derivative`] checks this on a probe grid.
    pub fn custom(
        label: impl Into<String>,
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
        deriv: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            kind: DampingKind::Custom,
            label: label.into(),
            eval: Arc::new(eval),
            deriv: Arc::new(deriv),
        }
    }

    /// `g(J) = J + c·J³` with `c >= 0`.
    pub fn cubic(c: f64) -> Self {
        let mut g = Self::custom(
            format!("cubic c={c:?}"),
            move |j| j + c * j * j * j,
            move |j| 1.0 + 3.0 * c * j * j,
        );
        if c == 0.0 {
            g.kind = DampingKind::Linear;
            g.label = "linear".into();
        }
        g
    }

    /// The same function, but tagged as custom so that every solve goes
    /// through the root finder instead of the closed forms.
    pub fn as_custom(&self) -> Self {
        Self {
            kind: DampingKind::Custom,
            label: format!("{} (root-solve)", self.label),
            eval: Arc::clone(&self.eval),
            deriv: Arc::clone(&self.deriv),
        }
    }

    /// `g̃(w) = g(β + w) − g(β)`, the damping seen by the shifted flux `w = J − β`.
    pub fn shifted(&self, beta: f64) -> Self {
        if beta == 0.0 {
            return self.clone();
        }
        if self.is_linear() {
            return Self::linear();
        }
        let eval = Arc::clone(&self.eval);
        let deriv = Arc::clone(&self.deriv);
        let g_beta = eval(beta);
        Self {
            kind: DampingKind::Custom,
            label: format!("{} shifted by {beta:?}", self.label),
            eval: Arc::new(move |w| eval(beta + w) - g_beta),
            deriv: Arc::new(move |w| deriv(beta + w)),
        }
    }

    pub fn kind(&self) -> DampingKind {
        self.kind
    }

    pub fn is_linear(&self) -> bool {
        self.kind == DampingKind::Linear
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    #[inline]
    pub fn eval(&self, j: f64) -> f64 {
        match self.kind {
            DampingKind::Linear => j,
            DampingKind::Custom => (self.eval)(j),
        }
    }

    #[inline]
    pub fn deriv(&self, j: f64) -> f64 {
        match self.kind {
            DampingKind::Linear => 1.0,
            DampingKind::Custom => (self.deriv)(j),
        }
    }

    /// Upper bound of `g'` on `[lo, hi]` from [`PROBE_POINTS`] samples.
    ///
    /// Fails when `g(0) != 0` or a sampled derivative is negative.
    pub fn sup_derivative(&self, lo: f64, hi: f64) -> Result<f64> {
        if self.is_linear() {
            return Ok(1.0);
        }
        let g0 = self.eval(0.0);
        if g0 != 0.0 {
            return Err(Error::Configuration(format!(
                "damping function {} has g(0) = {g0:?}, expected 0",
                self.label
            )));
        }
        let mut sup = 0.0_f64;
        for i in 0..PROBE_POINTS {
            let x = lo + (hi - lo) * i as f64 / (PROBE_POINTS - 1) as f64;
            let d = self.deriv(x);
            if d.is_nan() || d < 0.0 {
                return Err(Error::Configuration(format!(
                    "damping function {} has g'({x:?}) = {d:?} < 0",
                    self.label
                )));
            }
            sup = sup.max(d);
        }
        Ok(sup)
    }
}

/// The flux range probed for `g'` when all diagonal values lie in `[m, M]`.
///
/// Fluxes `J = f⁺ − f⁻` of such states lie in `[m − M, M − m]`; one unit of
/// margin is added on each side.
pub fn working_interval(m: f64, big_m: f64) -> (f64, f64) {
    let w = (big_m - m).abs();
    (-w - 1.0, w + 1.0)
}

/// A state in diagonal variables.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DiagState {
    pub f_minus: f64,
    pub f_plus: f64,
}

impl DiagState {
    pub fn new(f_minus: f64, f_plus: f64) -> Self {
        Self { f_minus, f_plus }
    }

    pub fn from_rho_j(rho: f64, j: f64) -> Self {
        Self {
            f_minus: 0.5 * (rho - j),
            f_plus: 0.5 * (rho + j),
        }
    }

    pub fn rho(&self) -> f64 {
        self.f_plus + self.f_minus
    }

    pub fn j(&self) -> f64 {
        self.f_plus - self.f_minus
    }
}

/// Solution of a Riemann problem at a node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiemannFan {
    pub j_star: f64,
    pub rho_star_left: f64,
    pub rho_star_right: f64,
    /// Size `ΔJ` of the −1 wave.
    pub sigma_minus1: f64,
    /// Size `ΔJ` of the +1 wave.
    pub sigma_plus1: f64,
    /// State between the −1 wave and the node.
    pub middle_left: DiagState,
    /// State between the node and the +1 wave.
    pub middle_right: DiagState,
}

/// Which end of `[0, 1]` a reflection happens at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Outcome of a multiple interaction at a node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InteractionResult {
    /// Outgoing sizes in space order: (left-going −1 wave, right-going +1 wave).
    pub sigma_out: (f64, f64),
    pub j_star_plus: f64,
    /// `g'(s)` for the mean-value point `s` between the old and new middle flux.
    pub secant_slope: f64,
}

/// Solves `J + g(J)·delta_eff = f_plus_left − f_minus_right`.
///
/// The residual is strictly increasing and vanishes at 0 when the right-hand
/// side does, so the root lies between 0 and the right-hand side. Newton
/// steps that leave the current bracket are replaced by bisection.
pub fn solve_middle_j(
    f_plus_left: f64,
    f_minus_right: f64,
    delta_eff: f64,
    g: &DampingFunction,
) -> Result<f64> {
    let rhs = f_plus_left - f_minus_right;
    if delta_eff == 0.0 {
        return Ok(rhs);
    }
    if g.is_linear() {
        return Ok(rhs / (1.0 + delta_eff));
    }
    let residual = |j: f64| j + g.eval(j) * delta_eff - rhs;
    let tol = ROOT_TOL * (1.0 + rhs.abs());

    let (mut lo, mut hi) = if rhs >= 0.0 { (0.0, rhs) } else { (rhs, 0.0) };
    let mut width = 1.0;
    let mut widenings = 0;
    while !(residual(lo) <= 0.0 && residual(hi) >= 0.0) {
        if widenings == 64 {
            return Err(Error::SolverFailure { lo, hi });
        }
        lo -= width;
        hi += width;
        width *= 2.0;
        widenings += 1;
    }

    let mut j = (rhs / (1.0 + delta_eff * g.deriv(0.0))).clamp(lo, hi);
    for _ in 0..ROOT_MAX_ITER {
        let r = residual(j);
        if r.abs() <= tol {
            return Ok(j);
        }
        if r < 0.0 {
            lo = j;
        } else {
            hi = j;
        }
        let slope = 1.0 + delta_eff * g.deriv(j);
        let newton = j - r / slope;
        j = if newton > lo && newton < hi && newton.is_finite() {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if hi - lo <= f64::EPSILON * j.abs().max(f64::MIN_POSITIVE) {
            return Ok(j);
        }
    }
    Err(Error::SolverFailure { lo, hi })
}

fn check_fraction(name: &str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::Configuration(format!(
            "{name} = {value:?} must lie in [0, 1]"
        )))
    }
}

fn check_smallness(sup_dg: f64, delta_eff: f64) -> Result<()> {
    if sup_dg * delta_eff < 1.0 {
        Ok(())
    } else {
        Err(Error::Configuration(format!(
            "local smallness violated: sup g' * delta * alpha = {:?} >= 1",
            sup_dg * delta_eff
        )))
    }
}

/// Solves the Riemann problem with a 0-wave of strength `delta·alpha` at the node.
pub fn solve_riemann(
    left: DiagState,
    right: DiagState,
    delta: f64,
    alpha: f64,
    g: &DampingFunction,
) -> Result<RiemannFan> {
    if delta.is_nan() || delta < 0.0 {
        return Err(Error::Configuration(format!(
            "delta = {delta:?} must be nonnegative"
        )));
    }
    check_fraction("alpha", alpha)?;
    let values = [left.f_minus, left.f_plus, right.f_minus, right.f_plus];
    let m = values.iter().copied().fold(f64::INFINITY, f64::min);
    let big_m = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let (lo, hi) = working_interval(m, big_m);
    check_smallness(g.sup_derivative(lo, hi)?, delta * alpha)?;
    riemann_unchecked(left, right, delta * alpha, g)
}

pub(crate) fn riemann_unchecked(
    left: DiagState,
    right: DiagState,
    delta_eff: f64,
    g: &DampingFunction,
) -> Result<RiemannFan> {
    let j_star = solve_middle_j(left.f_plus, right.f_minus, delta_eff, g)?;
    let middle_left = DiagState::new(left.f_plus - j_star, left.f_plus);
    let middle_right = DiagState::new(right.f_minus, right.f_minus + j_star);
    Ok(RiemannFan {
        j_star,
        rho_star_left: 2.0 * left.f_plus - j_star,
        rho_star_right: 2.0 * right.f_minus + j_star,
        sigma_minus1: j_star - left.j(),
        sigma_plus1: right.j() - j_star,
        middle_left,
        middle_right,
    })
}

/// Size of the wave reflected at a boundary to restore `J = 0` there.
///
/// At `x = 0` a +1 wave of size `J_adj` leaves the boundary state `(f⁻, f⁻)`;
/// at `x = 1` a −1 wave of size `−J_adj` leaves `(f⁺, f⁺)`.
pub fn boundary_reflect(side: Side, adjacent: DiagState) -> f64 {
    match side {
        Side::Left => adjacent.j(),
        Side::Right => -adjacent.j(),
    }
}

/// Resolves the simultaneous arrival of a +1 wave from the left and a −1 wave
/// from the right at a node whose 0-wave strength changes from `delta·alpha_minus`
/// to `delta·alpha_plus`.
///
/// `sigma_in = (σ⁻₁, σ⁻₋₁)` is given in space order, so the incoming +1 wave
/// comes first. `j_star_minus` is the flux at the node before the interaction.
pub fn multiple_interaction(
    sigma_in: (f64, f64),
    j_star_minus: f64,
    delta: f64,
    alpha_minus: f64,
    alpha_plus: f64,
    g: &DampingFunction,
) -> Result<InteractionResult> {
    if delta.is_nan() || delta < 0.0 {
        return Err(Error::Configuration(format!(
            "delta = {delta:?} must be nonnegative"
        )));
    }
    check_fraction("alpha_minus", alpha_minus)?;
    check_fraction("alpha_plus", alpha_plus)?;
    let (a, b) = sigma_in;
    let rhs = j_star_minus - a + b + g.eval(j_star_minus) * delta * alpha_minus;
    let reach = [j_star_minus, j_star_minus - a, j_star_minus + b, rhs]
        .iter()
        .fold(0.0_f64, |acc, v| acc.max(v.abs()));
    let sup_dg = g.sup_derivative(-reach - 1.0, reach + 1.0)?;
    check_smallness(sup_dg, delta * alpha_minus)?;
    check_smallness(sup_dg, delta * alpha_plus)?;
    interaction_unchecked(sigma_in, j_star_minus, delta, alpha_minus, alpha_plus, g)
}

pub(crate) fn interaction_unchecked(
    (a, b): (f64, f64),
    j_star_minus: f64,
    delta: f64,
    alpha_minus: f64,
    alpha_plus: f64,
    g: &DampingFunction,
) -> Result<InteractionResult> {
    if g.is_linear() {
        let gamma = delta * alpha_plus;
        let scale = 1.0 / (1.0 + gamma);
        let mut left = (gamma * a + b) * scale;
        let mut right = (a + gamma * b) * scale;
        if alpha_plus != alpha_minus {
            let source = (alpha_plus - alpha_minus) * delta * j_star_minus * scale;
            left -= source;
            right += source;
        }
        return Ok(InteractionResult {
            sigma_out: (left, right),
            j_star_plus: j_star_minus - a + left,
            secant_slope: 1.0,
        });
    }
    let rhs = j_star_minus - a + b + g.eval(j_star_minus) * delta * alpha_minus;
    let j_star_plus = solve_middle_j(rhs, 0.0, delta * alpha_plus, g)?;
    let left = j_star_plus - j_star_minus + a;
    let right = j_star_minus + b - j_star_plus;
    let secant_slope = if j_star_plus == j_star_minus {
        g.deriv(j_star_minus)
    } else {
        (g.eval(j_star_plus) - g.eval(j_star_minus)) / (j_star_plus - j_star_minus)
    };
    Ok(InteractionResult {
        sigma_out: (left, right),
        j_star_plus,
        secant_slope,
    })
}

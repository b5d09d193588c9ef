//! Problem description: damping profile `k(x)`, time coefficient `α(t)`,
//! nonlinearity `g`, initial data and the constant boundary flux `β`.
//!
//! ```text
//!   ∂t ρ + ∂x J = 0
//!   ∂t J + ∂x ρ = −2 k(x) α(t) g(J)        x ∈ (0, 1),  J(0,t) = J(1,t) = β
//! ```
//!
//! A nonzero `β` is removed with the stationary profile
//! `ρ_β(x) = −2 g(β) ∫₀ˣ k + C`, `∫ρ_β = ∫ρ₀`, after which `(ρ − ρ_β, J − β)`
//! solves the same system with `g̃(w) = g(β + w) − g(β)` and zero boundary flux.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::riemann::{DampingFunction, DiagState};

/// A right-continuous scalar profile on `[0, 1]`.
pub type Profile = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Number of midpoint subsamples per cell for tabulated `k`.
pub const K_QUADRATURE_POINTS: usize = 64;

/// The spatial damping profile `k(x) >= 0`.
#[derive(Debug, Clone, PartialEq)]
pub enum KProfile {
    Constant(f64),
    /// `values[i]` on `[b_{i-1}, b_i)` with `b_{-1} = 0` and the last piece ending at 1.
    /// `breakpoints` are the strictly increasing interior points.
    PiecewiseConstant {
        breakpoints: Vec<f64>,
        values: Vec<f64>,
    },
    /// Values at the `L` equally spaced points `i/(L−1)`, interpolated linearly.
    Tabulated(Vec<f64>),
}

impl KProfile {
    pub fn validate(&self) -> Result<()> {
        let values: &[f64] = match self {
            KProfile::Constant(d) => std::slice::from_ref(d),
            KProfile::PiecewiseConstant {
                breakpoints,
                values,
            } => {
                if values.len() != breakpoints.len() + 1 {
                    return Err(Error::Configuration(format!(
                        "piecewise k needs {} values for {} breakpoints, got {}",
                        breakpoints.len() + 1,
                        breakpoints.len(),
                        values.len()
                    )));
                }
                let inside = breakpoints.iter().all(|b| *b > 0.0 && *b < 1.0);
                let increasing = breakpoints.windows(2).all(|w| w[0] < w[1]);
                if !(inside && increasing) {
                    return Err(Error::Configuration(
                        "k breakpoints must increase strictly inside (0, 1)".into(),
                    ));
                }
                values
            }
            KProfile::Tabulated(values) => {
                if values.len() < 2 {
                    return Err(Error::Configuration(
                        "tabulated k needs at least two samples".into(),
                    ));
                }
                values
            }
        };
        match values.iter().find(|v| !(**v >= 0.0 && v.is_finite())) {
            Some(v) => Err(Error::Configuration(format!(
                "k must be finite and nonnegative, found {v:?}"
            ))),
            None => Ok(()),
        }
    }

    /// `k(x)`, right-continuous at breakpoints.
    pub fn value(&self, x: f64) -> f64 {
        match self {
            KProfile::Constant(d) => *d,
            KProfile::PiecewiseConstant {
                breakpoints,
                values,
            } => values[breakpoints.partition_point(|b| *b <= x)],
            KProfile::Tabulated(values) => {
                let last = values.len() - 1;
                let s = (x.clamp(0.0, 1.0) * last as f64).min(last as f64);
                let i = (s.floor() as usize).min(last - 1);
                let t = s - i as f64;
                values[i] * (1.0 - t) + values[i + 1] * t
            }
        }
    }

    /// `∫_a^b k`, exact for every variant.
    pub fn integral(&self, a: f64, b: f64) -> f64 {
        match self {
            KProfile::Constant(d) => d * (b - a),
            KProfile::PiecewiseConstant {
                breakpoints,
                values,
            } => {
                let mut total = 0.0;
                let mut left = 0.0_f64;
                for (i, v) in values.iter().enumerate() {
                    let right = breakpoints.get(i).copied().unwrap_or(1.0);
                    let overlap = right.min(b) - left.max(a);
                    if overlap > 0.0 {
                        total += v * overlap;
                    }
                    left = right;
                }
                total
            }
            KProfile::Tabulated(values) => {
                let last = values.len() - 1;
                let h = 1.0 / last as f64;
                let mut total = 0.0;
                for i in 0..last {
                    let (x0, x1) = (i as f64 * h, (i + 1) as f64 * h);
                    let (lo, hi) = (x0.max(a), x1.min(b));
                    if hi > lo {
                        total += 0.5 * (self.value(lo) + self.value(hi)) * (hi - lo);
                    }
                }
                total
            }
        }
    }

    /// `∫₀¹ ∫₀ˣ k(y) dy dx = ∫₀¹ (1 − y) k(y) dy`.
    pub fn double_integral(&self) -> f64 {
        match self {
            KProfile::Constant(d) => 0.5 * d,
            KProfile::PiecewiseConstant {
                breakpoints,
                values,
            } => {
                let mut total = 0.0;
                let mut left = 0.0_f64;
                for (i, v) in values.iter().enumerate() {
                    let right = breakpoints.get(i).copied().unwrap_or(1.0);
                    total += v * ((right - left) - 0.5 * (right * right - left * left));
                    left = right;
                }
                total
            }
            KProfile::Tabulated(values) => {
                // The integrand is piecewise quadratic, so Simpson's rule on
                // each table interval is exact.
                let last = values.len() - 1;
                let h = 1.0 / last as f64;
                let f = |y: f64| (1.0 - y) * self.value(y);
                (0..last)
                    .map(|i| {
                        let (a, b) = (i as f64 * h, (i + 1) as f64 * h);
                        (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b))
                    })
                    .sum()
            }
        }
    }
}

/// The time coefficient `α(t) ∈ [0, 1]`, always read as a right limit.
#[derive(Debug, Clone, PartialEq)]
pub enum AlphaSchedule {
    Constant(f64),
    /// `α = 1` on `[0, T₁)`, `α = 0` on `[T₁, T₂)`, repeated with period `T₂`.
    OnOff { t1: f64, t2: f64 },
    /// Right-continuous step function: `values[i]` on `[times[i], times[i+1])`,
    /// with `times[0] = 0` and the last value held forever.
    Tabulated { times: Vec<f64>, values: Vec<f64> },
}

impl AlphaSchedule {
    pub fn validate(&self) -> Result<()> {
        let in_range = |v: &f64| (0.0..=1.0).contains(v);
        match self {
            AlphaSchedule::Constant(a) if !in_range(a) => Err(Error::Configuration(format!(
                "alpha = {a:?} must lie in [0, 1]"
            ))),
            AlphaSchedule::OnOff { t1, t2 } if !(*t1 > 0.0 && t2 > t1) => {
                Err(Error::Configuration(format!(
                    "on-off schedule needs 0 < T1 < T2, got T1 = {t1:?}, T2 = {t2:?}"
                )))
            }
            AlphaSchedule::Tabulated { times, values } => {
                if times.len() != values.len() || times.is_empty() || times[0] != 0.0 {
                    return Err(Error::Configuration(
                        "tabulated alpha needs matching times/values starting at t = 0".into(),
                    ));
                }
                if !times.windows(2).all(|w| w[0] < w[1]) {
                    return Err(Error::Configuration(
                        "tabulated alpha times must increase strictly".into(),
                    ));
                }
                match values.iter().find(|v| !in_range(v)) {
                    Some(v) => Err(Error::Configuration(format!(
                        "alpha = {v:?} must lie in [0, 1]"
                    ))),
                    None => Ok(()),
                }
            }
            _ => Ok(()),
        }
    }

    /// `α(t+)`.
    pub fn at(&self, t: f64) -> f64 {
        match self {
            AlphaSchedule::Constant(a) => *a,
            AlphaSchedule::OnOff { t1, t2 } => {
                if t.rem_euclid(*t2) < *t1 {
                    1.0
                } else {
                    0.0
                }
            }
            AlphaSchedule::Tabulated { times, values } => {
                values[times.partition_point(|s| *s <= t).saturating_sub(1)]
            }
        }
    }

    /// `‖α‖_∞`.
    pub fn sup(&self) -> f64 {
        match self {
            AlphaSchedule::Constant(a) => *a,
            AlphaSchedule::OnOff { .. } => 1.0,
            AlphaSchedule::Tabulated { values, .. } => values.iter().copied().fold(0.0, f64::max),
        }
    }

    pub fn is_constant(&self) -> bool {
        matches!(self, AlphaSchedule::Constant(_))
    }
}

/// Initial data, either as right-continuous samplers or as cell values.
#[derive(Clone)]
pub enum InitialData {
    RhoJ { rho: Profile, j: Profile },
    Diagonal { f_minus: Profile, f_plus: Profile },
    /// Cell constants, one value per cell of the grid they are used with.
    Cells { f_minus: Vec<f64>, f_plus: Vec<f64> },
}

impl fmt::Debug for InitialData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InitialData::RhoJ { .. } => f.write_str("InitialData::RhoJ(..)"),
            InitialData::Diagonal { .. } => f.write_str("InitialData::Diagonal(..)"),
            InitialData::Cells { f_minus, .. } => {
                write!(f, "InitialData::Cells({} cells)", f_minus.len())
            }
        }
    }
}

/// Resolution of the midpoint rule used for `∫ρ₀` of sampled data.
const MASS_QUADRATURE_POINTS: usize = 1 << 16;

impl InitialData {
    pub fn zero() -> Self {
        Self::Cells {
            f_minus: Vec::new(),
            f_plus: Vec::new(),
        }
    }

    pub fn rho_j(
        rho: impl Fn(f64) -> f64 + Send + Sync + 'static,
        j: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self::RhoJ {
            rho: Arc::new(rho),
            j: Arc::new(j),
        }
    }

    pub fn diagonal(
        f_minus: impl Fn(f64) -> f64 + Send + Sync + 'static,
        f_plus: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self::Diagonal {
            f_minus: Arc::new(f_minus),
            f_plus: Arc::new(f_plus),
        }
    }

    pub fn cells(f_minus: Vec<f64>, f_plus: Vec<f64>) -> Self {
        Self::Cells { f_minus, f_plus }
    }

    /// The state at `x+`. Cell data is read from the cell containing `x`.
    pub fn state_at(&self, x: f64) -> DiagState {
        match self {
            InitialData::RhoJ { rho, j } => DiagState::from_rho_j(rho(x), j(x)),
            InitialData::Diagonal { f_minus, f_plus } => DiagState::new(f_minus(x), f_plus(x)),
            InitialData::Cells { f_minus, f_plus } => {
                if f_minus.is_empty() {
                    return DiagState::default();
                }
                let n = f_minus.len();
                let i = ((x * n as f64).floor() as usize).min(n - 1);
                DiagState::new(f_minus[i], f_plus[i])
            }
        }
    }

    /// Cell values `f₀±(x_j+)` on a grid of `n` cells.
    pub fn sample(&self, n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
        match self {
            InitialData::Cells { f_minus, f_plus } if f_minus.is_empty() && f_plus.is_empty() => {
                Ok((vec![0.0; n], vec![0.0; n]))
            }
            InitialData::Cells { f_minus, f_plus } => {
                crate::error::check_len(n, f_minus.len())?;
                crate::error::check_len(n, f_plus.len())?;
                Ok((f_minus.clone(), f_plus.clone()))
            }
            _ => {
                let states: Vec<DiagState> =
                    (0..n).map(|j| self.state_at(j as f64 / n as f64)).collect();
                Ok((
                    states.iter().map(|s| s.f_minus).collect(),
                    states.iter().map(|s| s.f_plus).collect(),
                ))
            }
        }
    }

    /// `∫₀¹ ρ₀`: exact for cell data, composite midpoint rule otherwise.
    pub fn integral_rho(&self) -> f64 {
        match self {
            InitialData::Cells { f_minus, f_plus } => {
                if f_minus.is_empty() {
                    return 0.0;
                }
                let s: f64 = f_minus.iter().zip(f_plus).map(|(a, b)| a + b).sum();
                s / f_minus.len() as f64
            }
            _ => {
                let h = 1.0 / MASS_QUADRATURE_POINTS as f64;
                (0..MASS_QUADRATURE_POINTS)
                    .map(|i| self.state_at((i as f64 + 0.5) * h).rho())
                    .sum::<f64>()
                    * h
            }
        }
    }
}

/// Record of a boundary homogenization, used to map results back.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryShift {
    pub beta: f64,
    pub g_beta: f64,
    pub constant: f64,
    pub k: KProfile,
}

impl BoundaryShift {
    /// `ρ_β(x) = −2 g(β) ∫₀ˣ k + C`.
    pub fn rho_beta(&self, x: f64) -> f64 {
        -2.0 * self.g_beta * self.k.integral(0.0, x) + self.constant
    }
}

/// Everything that defines a run apart from the resolution.
#[derive(Debug, Clone)]
pub struct ProblemSpec {
    pub k: KProfile,
    pub g: DampingFunction,
    pub alpha: AlphaSchedule,
    pub initial: InitialData,
    /// Boundary flux `J(0) = J(1) = β`.
    pub beta: f64,
    /// Set by [`homogenize_boundary`] when a nonzero `β` was removed.
    pub shift: Option<BoundaryShift>,
}

impl ProblemSpec {
    pub fn new(k: KProfile, g: DampingFunction, alpha: AlphaSchedule, initial: InitialData) -> Self {
        Self {
            k,
            g,
            alpha,
            initial,
            beta: 0.0,
            shift: None,
        }
    }

    /// Linear damping `k ≡ d`, `α ≡ 1`.
    pub fn telegrapher(d: f64, initial: InitialData) -> Self {
        Self::new(
            KProfile::Constant(d),
            DampingFunction::linear(),
            AlphaSchedule::Constant(1.0),
            initial,
        )
    }

    pub fn with_alpha(mut self, alpha: AlphaSchedule) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_beta(mut self, beta: f64) -> Self {
        self.beta = beta;
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.k.validate()?;
        self.alpha.validate()?;
        if self.beta != 0.0 {
            return Err(Error::Unsupported(
                "nonzero boundary flux must be removed with homogenize_boundary first".into(),
            ));
        }
        Ok(())
    }
}

/// Rewrites a problem with boundary flux `β` as one with zero boundary flux.
pub fn homogenize_boundary(spec: &ProblemSpec) -> Result<ProblemSpec> {
    if spec.beta == 0.0 {
        return Ok(spec.clone());
    }
    if spec.alpha != AlphaSchedule::Constant(1.0) {
        return Err(Error::Unsupported(
            "nonzero boundary flux is only handled for alpha identically 1".into(),
        ));
    }
    spec.k.validate()?;
    let beta = spec.beta;
    let g_beta = spec.g.eval(beta);
    let constant = spec.initial.integral_rho() + 2.0 * g_beta * spec.k.double_integral();
    let shift = BoundaryShift {
        beta,
        g_beta,
        constant,
        k: spec.k.clone(),
    };
    let initial = match &spec.initial {
        InitialData::Cells { f_minus, f_plus } => {
            let n = f_minus.len();
            let mut fm = Vec::with_capacity(n);
            let mut fp = Vec::with_capacity(n);
            for j in 0..n {
                let s = DiagState::new(f_minus[j], f_plus[j]);
                let v = s.rho() - shift.rho_beta(j as f64 / n as f64);
                let w = DiagState::from_rho_j(v, s.j() - beta);
                fm.push(w.f_minus);
                fp.push(w.f_plus);
            }
            InitialData::cells(fm, fp)
        }
        data => {
            let data = data.clone();
            let sh = shift.clone();
            let data2 = data.clone();
            InitialData::rho_j(
                move |x| data.state_at(x).rho() - sh.rho_beta(x),
                move |x| data2.state_at(x).j() - beta,
            )
        }
    };
    Ok(ProblemSpec {
        k: spec.k.clone(),
        g: spec.g.shifted(beta),
        alpha: spec.alpha.clone(),
        initial,
        beta: 0.0,
        shift: Some(shift),
    })
}

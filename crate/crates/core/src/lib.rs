//! Wave-front tracking for damped `2×2` systems on the unit interval:
//!
//! ```text
//!   ∂t ρ + ∂x J = 0
//!   ∂t J + ∂x ρ = −2 k(x) α(t) g(J),      J(0, t) = J(1, t) = 0
//! ```
//!
//! The damping is concentrated at the grid nodes as stationary jumps, which
//! makes the scheme well balanced. Between nodes the diagonal variables
//! `f± = (ρ ± J)/2` are transported with speed `±1`. The whole evolution is a
//! recursion on the vector of wave sizes `σ ∈ ℝ^{2N}`. For linear damping it
//! is a product of doubly stochastic matrices, whose powers give explicit
//! exponential decay rates.
//!
//! Layers, bottom to top:
//!
//! * [`riemann`]: Riemann problems at a node, interactions and wall reflections.
//! * [`transition`]: the matrices `B₁`, `B₂(γ)`, `B(γ)`, `P̂`, `Φ` applied
//!   matrix-free, the exact expansion of `N` damped steps, and the constants
//!   `C_N`, `𝒞_N`, `𝒞`, `d*`.
//! * [`problem`], [`grid`], [`sigma`], [`fields`], [`simulate`]: the scheme itself.
//! * [`decay`]: invariant-square contraction and exponential envelopes.
//! * [`config`], [`datagen`], [`output`], [`verify`]: configuration,
//!   seeded data, CSV emission and the self-check suite used by the `dampwave` binary.
//!
//! The `examples/` directory has one runnable program per capability:
//! `riemann_fan`, `free_transport`, `expansion_identity`, `spectrum_table`,
//! `decay_envelope`, `on_off_damping`, `l1_stability`, `boundary_shift` and
//! `nonlinear_damping`.
//!
//! ```
//! use dampwave::datagen::generate_bv_data;
//! use dampwave::problem::ProblemSpec;
//! use dampwave::simulate::Simulation;
//!
//! let data = generate_bv_data(7, 16, -1.0, 1.0);
//! let mut sim = Simulation::new(ProblemSpec::telegrapher(0.5, data.to_initial()), 64).unwrap();
//! sim.advance_to(64).unwrap();
//! assert!(sim.diagnostics().mass_drift < 1e-12);
//! ```

pub mod config;
pub mod datagen;
pub mod decay;
pub mod error;
pub mod fields;
pub mod grid;
pub mod output;
pub mod problem;
pub mod riemann;
pub mod sigma;
pub mod simulate;
pub mod transition;
pub mod verify;

pub use error::{Error, Result};

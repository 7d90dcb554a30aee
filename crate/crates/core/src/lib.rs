//! Speed of the wave of toppling dominoes along an idealised chain.
//!
//! The chain is made of identical massless rods of length `l`, each carrying a
//! point mass `m` on top and spaced `d` apart. Rods pivot about their feet
//! without slipping or losing energy. Collisions are head-on, instantaneous
//! and elastic, and the rods do not deform.
//!
//! * [`chain`]: geometry, the two-rod collision, and the recurrence for the
//!   starting angular velocity of each rod together with its closed form and
//!   limit `Ω`.
//! * [`elliptic`]: `F(φ, k)`, `K(k)` and the fall-time integral.
//! * [`wave`]: per-rod fall time, limiting speed, scaling function `G(d/l)`
//!   and its two asymptotes.
//! * [`simulator`]: rod-by-rod simulation used as an end-to-end check.
//! * [`quadrature`]: adaptive Gauss–Kronrod integration, the independent oracle
//!   for the elliptic closed forms.
//!
//! Everything is generic over [`Real`] (`f32` or `f64`); the `*64` and `*32`
//! aliases below fix the scalar.
//!
//! ```
//! use domino_core::{limiting_solution, ChainGeometry64};
//!
//! let chain = ChainGeometry64::new(1.0, 0.5, 9.81, 1.0).unwrap();
//! let wave = limiting_solution(&chain).unwrap();
//! assert!((wave.speed - 5.38237488799757).abs() < 1e-12);
//! ```

// `!(x > 0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Quadrature nodes and reference values are kept at full published precision.
#![allow(clippy::excessive_precision)]

pub mod chain;
pub mod elliptic;
pub mod error;
pub mod quadrature;
pub mod real;
pub mod simulator;
pub mod wave;

pub use chain::{
    collide, collision_angle, collision_factors, fall_exit_velocity, limiting_omega,
    mixed_progression, omega_i_at, recurrence_step, ChainGeometry, CollisionAngle,
    CollisionFactors, CollisionOutcome, MixedProgression,
};
pub use elliptic::{
    complete_k, complete_k_from_complement, complete_k_log_asymptotic, fall_time_integral,
    fall_time_quadrature, incomplete_f, EllipticArgs, FallIntegralArgs, Modulus,
};
pub use error::{Error, Result};
pub use real::Real;
pub use simulator::{
    simulate_chain, verify_trace, RodTrace, SimulationOptions, SimulationResult, TraceReport,
};
pub use wave::{
    fall_time, limiting_solution, scaling_g, scaling_g_close, scaling_g_wide, scaling_modulus,
    WaveSolution,
};

pub type ChainGeometry64 = ChainGeometry<f64>;
pub type CollisionAngle64 = CollisionAngle<f64>;
pub type CollisionFactors64 = CollisionFactors<f64>;
pub type CollisionOutcome64 = CollisionOutcome<f64>;
pub type MixedProgression64 = MixedProgression<f64>;
pub type EllipticArgs64 = EllipticArgs<f64>;
pub type FallIntegralArgs64 = FallIntegralArgs<f64>;
pub type WaveSolution64 = WaveSolution<f64>;
pub type RodTrace64 = RodTrace<f64>;
pub type SimulationResult64 = SimulationResult<f64>;

pub type ChainGeometry32 = ChainGeometry<f32>;
pub type WaveSolution32 = WaveSolution<f32>;
pub type RodTrace32 = RodTrace<f32>;
pub type SimulationResult32 = SimulationResult<f32>;

//! Quantified energy decay for pointwise-damped waves and beams.
//!
//! The library has three layers. `weights` turns sampled mode data into the
//! two weight functions a decay estimate needs: a decreasing damping weight
//! ω₁ (from a lower convex envelope of observed values) and an increasing
//! strong-norm weight ω₂. `interp` builds the interpolation pair (Φ, Ψ) from
//! those weights and exposes the decay kernel H = 1/Ψ⁻¹(1/Φ) together with
//! the inequalities (Hölder, Jensen, pointwise admissibility) that justify
//! it. `wavesim` assembles truncated modal models for three damped PDEs,
//! integrates them with an energy-exact implicit midpoint scheme, and
//! measures the observed decay against the kernel. `dioph` supplies the
//! number-theoretic input: how small sin(nπa) can get depends on how well
//! the damper location a is approximable by rationals.
//!
//! Everything is generic over the scalar type through [`scalar::Real`]
//! (f32 or f64); the `*64` aliases fix f64 for ordinary use.

pub mod dioph;
pub mod error;
pub mod interp;
pub mod rng;
pub mod scalar;
pub mod wavesim;
pub mod weights;

pub use error::{Error, Result};

pub type Weight64 = weights::Weight<f64>;
pub type WeightProfile64 = weights::WeightProfile<f64>;
pub type Envelope64 = weights::EnvelopeResult<f64>;
pub type Interpolant64 = interp::Interpolant<f64>;
pub type Pair64 = interp::InterpolationPair<f64>;
pub type Model64 = wavesim::ModalModel<f64>;
pub type State64 = wavesim::ModalState<f64>;
pub type Trajectory64 = wavesim::Trajectory<f64>;

//! Finite-time quantum harmonic Otto engine with shortcut-to-adiabaticity
//! strokes.
//!
//! The working medium is a harmonic oscillator whose frequency is ramped from
//! ω₁ to ω₂ (compression) and back (expansion), with instantaneous
//! thermalization in between. The crate evaluates the cycle for
//!
//! * `AD`: ideal adiabatic strokes,
//! * `NA`: the bare finite-time ramp, integrated numerically,
//! * `CD`, `LCD`, `IE`: counterdiabatic, local counterdiabatic and
//!   inverse-engineered shortcuts, whose driving energy is charged to the
//!   engine's input.
//!
//! Units are ħ = m = k_B = 1.
//!
//! ```
//! use sta_otto::engine::{run_cycle, BathPair, CycleConfig, Method, Numerics};
//! use sta_otto::sta::StaMethod;
//!
//! let config = CycleConfig {
//!     omega1: 0.32,
//!     omega2: 1.0,
//!     baths: BathPair::new(0.5, 0.05).unwrap(),
//!     tau: 3.0,
//!     method: Method::Sta(StaMethod::Ie),
//!     numerics: Numerics::default(),
//! };
//! let perf = run_cycle(&config).unwrap();
//! assert!(perf.eta.unwrap() < 1.0 - 0.32);
//! ```

pub mod cli;
pub mod dynamics;
pub mod engine;
pub mod protocol;
mod scan;
pub mod sta;

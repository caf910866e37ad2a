//! Optimization-free safe stabilization for single-input control-affine
//! systems `ẋ = f(x) + g(x)·u` equipped with a control Lyapunov function `V`
//! and a control barrier function `h`.
//!
//! At every state both design inequalities reduce to scalar affine
//! constraints in `u`:
//!
//! ```text
//! F0 = a0 + b0·u < 0     (CLF decrease)
//! F1 = a1 + b1·u < 0     (barrier condition)
//! ```
//!
//! The crate provides the Lie-data reduction ([`plant`]), the Sontag and
//! Freeman universal formulas ([`formulas`]), the compatibility test and
//! blended laws `k_l`, `k_m` ([`blend`]), the safety-prioritizing and
//! origin-continuous variants ([`priority`]), an exact feasibility oracle
//! ([`feasibility`]) and a fixed-step closed-loop simulator ([`sim`]).
//!
//! ```
//! use safestab::{blend::{k_l, BlendConfig}, feasibility::check, plant::LieData};
//!
//! let d = LieData::new(-3.0, 1.0, 1.0, -1.0);
//! let u = k_l(&d, &BlendConfig::default()).unwrap();
//! assert!(check(&d, u).feasible());
//! ```

pub mod blend;
pub mod error;
pub mod feasibility;
pub mod formulas;
pub mod plant;
pub mod priority;
pub mod scenario;
pub mod sim;

pub use error::{Error, Result};

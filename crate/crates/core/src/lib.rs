//! Simulation and analysis of the quadratic convolution recurrence
//!
//! ```text
//! Λ_p(x) = (1/p) Σ_{p₁+p₂=p} f(p₁/p) Λ_{p₁}(x) Λ_{p₂}(x),   Λ_1(x) = x,
//! ```
//!
//! its linearization around the fixed normalization `Λ_p(a_p) = 1`, the
//! linear recurrent system that governs the fluctuations `ξ_p`, and numerical
//! checks of every quantitative estimate used to bound them.
//!
//! The crate is `no_std` and needs only `alloc`. Enabling the `parallel`
//! feature pulls in `std` and `rayon` for the convolution sums.

#![no_std]

extern crate alloc;
#[cfg(any(test, feature = "parallel"))]
extern crate std;

pub mod error;
pub mod kernel;
pub mod linear;
pub mod numerics;
pub mod recurrence;
pub mod verify;

pub use error::{Error, NumericsError, Result};
pub use kernel::{MonomialKernel, RealPolynomial, Spectrum};
pub use linear::{LinearTrace, MomentState, TransitionMatrix};
pub use recurrence::{EngineConfig, Precision, RecurrenceTrace};

//! Shared numerical primitives.

pub mod compensated;
pub mod dd;
pub mod matrix;
pub mod quadrature;
pub mod rational;
pub mod roots;
pub mod scaled;

pub use compensated::{compensated_sum, CompensatedAccumulator};
pub use dd::DoubleDouble;
pub use matrix::{spectral_norm, spectral_norm_from, CMatrix, PowerIteration, SpectralNorm};
pub use quadrature::{gauss_quadrature, symmetric_beta_integral, GaussLegendre};
pub use rational::Rational;
pub use roots::aberth;
pub use scaled::ScaledReal;

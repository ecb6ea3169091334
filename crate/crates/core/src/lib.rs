//! Numerics for Euclidean Jordan algebras, symmetric cones and the
//! holomorphic discrete series of the associated tube-type groups.
//!
//! The crate is `no_std` (it needs `alloc`) and covers the two desk-scale
//! instances `V = ℝ` (rank 1) and `V = Sym(2, ℝ)` (rank 2):
//!
//! - [`jordan`]: Jordan product, trace, determinant, quadratic
//!   representation, box operator, spectral decomposition, power functions
//!   and the holomorphic branch of `Δ(z)^{-s}` on the tube domain.
//! - [`cone`]: the cone Gamma function, Laplace transforms of power
//!   functions, the scalar `Γ̃_π` and the rank-1 cone Bessel function.
//! - [`quadrature`]: deterministic adaptive Gauss–Kronrod engines and the
//!   cone / `G/N` parameterizations.
//! - [`models`]: tube, bounded and `L²(Ω)` realizations with their group
//!   actions and intertwiners.
//! - [`whittaker`]: Whittaker vectors in all three models and the
//!   matrix-coefficient profile of the lowest `K`-type.
//! - [`su11`]: the `P⁺K_ℂN_ℂ` factorization in `SL(2, ℂ)`, the contraction
//!   semigroup, the functions `F_n` and the Hardy boundary check.
//! - [`plancherel`]: lowest-`K`-type norms, the Whittaker inner product and
//!   the formal dimension.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod calibration;
pub mod cone;
pub mod error;
pub mod jordan;
pub mod models;
pub mod plancherel;
pub mod quadrature;
pub mod report;
pub mod su11;
pub mod whittaker;

pub use error::{ConeError, Result};
pub use jordan::{Algebra, AlgebraFamily, ExponentVector, JordanElement, ScalarField};
pub use num_complex::Complex64;
pub use quadrature::{GridProfile, IntegralResult};
pub use report::VerificationReport;

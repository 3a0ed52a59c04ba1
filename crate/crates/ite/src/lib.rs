//! Interior transmission eigenvalues (ITEs) of the unit ball with constant
//! index of refraction: enumeration, classification, counting, Weyl-law
//! verification, complex-zero location, and scattering-amplitude checks.
//!
//! The half-line model ([`one_d`], [`complex_1d`]) works with the entire
//! function F(λ) = γ sin λ cos γλ − sin γλ cos λ; in dimension n ≥ 2
//! ([`nd`]) the per-momentum determinant is
//! F_ν(λ) = γ J_ν(λ) J_ν'(γλ) − J_ν(γλ) J_ν'(λ) with ν = l + n/2 − 1, and
//! each zero carries the spherical-harmonics multiplicity μ(l). The
//! [`scattering`] module exposes the relative scattering matrix whose
//! amplitude entries share those zeros. [`bessel`] is the evaluation kernel.

pub mod bessel;
pub mod complex_1d;
pub mod config;
pub mod error;
mod gamma;
pub mod nd;
pub mod one_d;
pub mod report;
mod rootfind;
pub mod scattering;
pub mod types;

pub use config::{root_tolerance, set_root_tolerance};
pub use error::{Error, Result};
pub use report::CountReport;
pub use types::{Contrast, CountMode, Eigenpair1D, RealIte, RootKind, Source};

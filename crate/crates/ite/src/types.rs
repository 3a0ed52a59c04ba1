//! Shared domain types: the wave-speed contrast, eigenvalue records, and
//! counting modes.

use crate::error::{Error, Result};
use serde::Serialize;

/// The constant contrast γ = √m > 0, γ ≠ 1, with an optional exact rational
/// representation p/q.
///
/// Rationality is never inferred from a floating value; callers must supply
/// (p, q) explicitly to activate the exact-arithmetic paths (common-zero
/// detection, algebraic counting).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Contrast {
    gamma: f64,
    rational: Option<(u64, u64)>,
}

impl Contrast {
    /// Contrast from a floating value; γ must be positive, finite, and ≠ 1.
    pub fn new(gamma: f64) -> Result<Contrast> {
        if !gamma.is_finite() || gamma <= 0.0 {
            return Err(Error::domain(format!("contrast must be positive, got {gamma}")));
        }
        if gamma == 1.0 {
            return Err(Error::domain("contrast γ = 1 is excluded (no scatterer)"));
        }
        Ok(Contrast { gamma, rational: None })
    }

    /// Exact rational contrast γ = p/q; the pair is reduced to lowest terms.
    pub fn from_ratio(p: u64, q: u64) -> Result<Contrast> {
        if p == 0 || q == 0 {
            return Err(Error::domain("rational contrast needs positive p and q"));
        }
        let g = gcd(p, q);
        let (p, q) = (p / g, q / g);
        if p == q {
            return Err(Error::domain("contrast γ = 1 is excluded (no scatterer)"));
        }
        Ok(Contrast { gamma: p as f64 / q as f64, rational: Some((p, q)) })
    }

    /// Contrast from the index of refraction m (γ = √m).
    pub fn from_refraction_index(m: f64) -> Result<Contrast> {
        if !m.is_finite() || m <= 0.0 {
            return Err(Error::domain(format!("index of refraction must be positive, got {m}")));
        }
        Contrast::new(m.sqrt())
    }

    pub fn value(&self) -> f64 {
        self.gamma
    }

    pub fn rational(&self) -> Option<(u64, u64)> {
        self.rational
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// How a real ITE arises: as a transversal intersection of the two
/// log-derivative branches (simple root), or as a common zero of the two
/// oscillatory factors (triple root).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RootKind {
    Intersection,
    CommonZero,
}

/// Which model produced a root: the half-line model or momentum l in n-D.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Source {
    OneD,
    Momentum(u32),
}

/// A real interior transmission eigenvalue record.
#[derive(Debug, Clone, Serialize)]
pub struct RealIte {
    pub lambda: f64,
    /// Order of the root of the boundary determinant: 1 or 3.
    pub alg_mult: u8,
    /// Dimension of the eigenpair space (1 in 1D, μ(l) per momentum in n-D).
    pub geom_mult: u64,
    pub kind: RootKind,
    pub source: Source,
}

impl RealIte {
    pub(crate) fn one_d(lambda: f64, kind: RootKind) -> RealIte {
        RealIte {
            lambda,
            alg_mult: if kind == RootKind::CommonZero { 3 } else { 1 },
            geom_mult: 1,
            kind,
            source: Source::OneD,
        }
    }
}

/// Counting convention: geometric counts each eigenvalue once; algebraic
/// counts triple roots three times.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CountMode {
    Geometric,
    Algebraic,
}

/// Normalized coefficient pair (a, b) of the 1D eigenpair
/// u = a sin(λx), v = b sin(γλx).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Eigenpair1D {
    pub a: f64,
    pub b: f64,
}

//! Process-wide numerical configuration.

use crate::error::{Error, Result};
use std::sync::atomic::{AtomicU64, Ordering};

// default refinement tolerance, relative to 1 + |λ|
const DEFAULT_ROOT_TOL: f64 = 1e-14;

static ROOT_TOL_BITS: AtomicU64 = AtomicU64::new(0);

/// Override the relative tolerance used when refining eigenvalue locations.
/// Intended for the CLI's `--tol` flag; set once at startup.
pub fn set_root_tolerance(tol: f64) -> Result<()> {
    if !tol.is_finite() || tol <= 0.0 || tol > 1e-3 {
        return Err(Error::domain(format!("root tolerance must be in (0, 1e-3], got {tol}")));
    }
    ROOT_TOL_BITS.store(tol.to_bits(), Ordering::Relaxed);
    Ok(())
}

/// Current root-refinement tolerance.
pub fn root_tolerance() -> f64 {
    let bits = ROOT_TOL_BITS.load(Ordering::Relaxed);
    if bits == 0 {
        DEFAULT_ROOT_TOL
    } else {
        f64::from_bits(bits)
    }
}

//! Counting-function reports: counts on a radius grid, predictions, scaled
//! residuals, and a power-law fit diagnostic.

use serde::Serialize;

/// Counting function tabulated on a grid of radii, with the Weyl-type
/// prediction, scaled residuals, and a least-squares fit of N(r) = c·r^n
/// over the top half of the grid.
#[derive(Debug, Clone, Serialize)]
pub struct CountReport {
    pub radii: Vec<f64>,
    pub counts: Vec<u64>,
    /// |N_1(r) − N_γ(r)| per grid point, when the report carries Dirichlet counts.
    pub dirichlet_diff: Option<Vec<u64>>,
    /// Leading-term prediction per grid point.
    pub weyl: Vec<f64>,
    /// |N(r) − prediction| / r^{n−1} per grid point.
    pub residual_scaled: Vec<f64>,
    /// Least-squares c in N(r) ≈ c·r^exponent over the top half of the grid.
    pub fit_coefficient: f64,
}

/// Least-squares c minimizing Σ (N_i − c r_i^n)² over grid points with
/// r_i ≥ r_max/2.
pub(crate) fn fit_power_coefficient(radii: &[f64], counts: &[u64], exponent: f64) -> f64 {
    let rmax = radii.last().copied().unwrap_or(0.0);
    let cut = 0.5 * rmax - 1e-9 * (1.0 + rmax);
    let mut num = 0.0;
    let mut den = 0.0;
    for (&r, &n) in radii.iter().zip(counts) {
        if r >= cut {
            let p = r.powf(exponent);
            num += n as f64 * p;
            den += p * p;
        }
    }
    if den > 0.0 {
        num / den
    } else {
        0.0
    }
}

//! Complex ITEs of the half-line model, located by the argument principle.
//!
//! F is entire, odd, and conjugate-symmetric, so its nonreal zeros come in
//! conjugate pairs and are confined to a horizontal strip |Im λ| ≤ C(γ): in
//! the eight-term exponential expansion of 4iF the coefficient of e^{i(γ+1)λ}
//! has magnitude |γ−1| and dominates every other term once |Im λ| is large.
//! Rectangle winding numbers of F'/F count zeros with multiplicity; recursive
//! subdivision isolates them.

use crate::error::{Error, Result};
use crate::one_d::{f_1d_complex, f_1d_prime_complex};
use crate::report::{fit_power_coefficient, CountReport};
use crate::types::Contrast;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

/// Edges are perturbed outward when |F| on the boundary dips below this.
const MIN_EDGE_F: f64 = 1e-8;
/// Perturbation step applied to a rectangle whose boundary passes a zero.
const EDGE_NUDGE: f64 = 1e-6;
/// Floor of the real-axis search window. F has a triple zero at the origin
/// (F'''(0) = 2γ(1−γ²) ≠ 0) and no other zero nearby, so the cubic leading
/// term excludes ITEs on (0, re_min]; the effective re_min is raised just
/// enough that |F| on the left edge clears the boundary threshold.
const RE_MIN: f64 = 1e-3;

/// Left search edge for a given contrast: |F(λ)| ≈ (γ|1−γ²|/3)|λ|³ near 0
/// must exceed 10× the edge threshold.
fn re_min_for(gamma: &Contrast) -> f64 {
    let g = gamma.value();
    let c3 = g * (1.0 - g * g).abs() / 3.0;
    RE_MIN.max((10.0 * MIN_EDGE_F / c3).cbrt())
}
/// Zeros closer than this (scaled) are the same zero.
const CLUSTER_TOL: f64 = 1e-8;

/// A complex ITE: a zero of F with Re z > 0 and its multiplicity (1 or 3).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ComplexIte {
    pub re: f64,
    pub im: f64,
    pub mult: u8,
}

impl ComplexIte {
    pub fn z(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

/// Axis-aligned search rectangle in the λ plane.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Rectangle {
    pub re_lo: f64,
    pub re_hi: f64,
    pub im_lo: f64,
    pub im_hi: f64,
}

impl Rectangle {
    pub fn new(re_lo: f64, re_hi: f64, im_lo: f64, im_hi: f64) -> Result<Rectangle> {
        if !(re_lo < re_hi && im_lo < im_hi)
            || ![re_lo, re_hi, im_lo, im_hi].iter().all(|v| v.is_finite())
        {
            return Err(Error::domain(format!(
                "invalid rectangle [{re_lo}, {re_hi}] × [{im_lo}, {im_hi}]"
            )));
        }
        Ok(Rectangle { re_lo, re_hi, im_lo, im_hi })
    }

    fn corners(&self) -> [Complex64; 4] {
        [
            Complex64::new(self.re_lo, self.im_lo),
            Complex64::new(self.re_hi, self.im_lo),
            Complex64::new(self.re_hi, self.im_hi),
            Complex64::new(self.re_lo, self.im_hi),
        ]
    }

    fn grown(&self, d: f64) -> Rectangle {
        Rectangle {
            re_lo: self.re_lo - d,
            re_hi: self.re_hi + d,
            im_lo: self.im_lo - d,
            im_hi: self.im_hi + d,
        }
    }
}

/// Strip half-width C(γ): F has no zeros with |Im λ| > C(γ).
///
/// From the exponential expansion of 4iF: the dominant term has coefficient
/// magnitude |γ−1| and rate γ+1; the remaining seven terms are bounded by
/// (3 + 3γ + |γ−1|) e^{|1−γ| |Im λ|}, and solving
/// |γ−1| e^{(γ+1)y} > (3 + 3γ + |γ−1|) e^{|1−γ| y} for y gives the bound
/// (the rate gap is (γ+1) − |1−γ| = 2 min(1, γ)).
pub fn strip_bound(gamma: &Contrast) -> Result<f64> {
    let g = gamma.value();
    if g == 1.0 {
        return Err(Error::domain("strip bound undefined at γ = 1"));
    }
    let dg = (g - 1.0).abs();
    Ok(((3.0 + 3.0 * g + dg) / dg).ln() / (2.0 * g.min(1.0)))
}

enum WindFailure {
    EdgeTooClose,
    NotStabilized(f64),
}

/// Number of zeros of F inside `rect`, counted with multiplicity, by the
/// contour integral of F'/F (composite trapezoid per edge, doubling until the
/// pre-rounding value sits within 0.25 of the same integer twice in a row).
/// Edges passing too close to a zero are nudged outward and retried.
pub fn winding_count(gamma: &Contrast, rect: &Rectangle) -> Result<u32> {
    let scale = rect.re_hi.abs().max(rect.im_hi.abs()).max(1.0);
    let mut nudge = EDGE_NUDGE * scale;
    let mut r = *rect;
    for _ in 0..16 {
        match winding_once(gamma, &r) {
            Ok(w) => return Ok(w),
            Err(WindFailure::EdgeTooClose) => {
                // triple zeros need a sizable clearance (|F| ~ δ³ nearby)
                r = r.grown(nudge);
                nudge *= 3.0;
            }
            Err(WindFailure::NotStabilized(v)) => {
                // a value locked near a half-integer means a zero sits on the
                // boundary itself: nudge like any other edge collision
                if (v - v.floor() - 0.5).abs() < 0.1 {
                    r = r.grown(nudge);
                    nudge *= 3.0;
                    continue;
                }
                return Err(Error::numerical(format!(
                    "winding failed to stabilize on [{}, {}]×[{}, {}]: value {v}",
                    r.re_lo, r.re_hi, r.im_lo, r.im_hi
                )));
            }
        }
    }
    Err(Error::numerical("winding: edge perturbation failed to clear the boundary"))
}

/// Per-edge trapezoid state for ∫ g(z) dz over z(t) = z0 + t·dz, t ∈ [0, 1].
struct Edge {
    z0: Complex64,
    dz: Complex64,
    n: usize,
    trap: Complex64,
}

fn refine_edge<G>(e: &mut Edge, g: &G) -> std::result::Result<(), WindFailure>
where
    G: Fn(Complex64) -> std::result::Result<Complex64, WindFailure>,
{
    let n2 = e.n * 2;
    let h = 1.0 / n2 as f64;
    let mut s = Complex64::new(0.0, 0.0);
    for k in (1..n2).step_by(2) {
        s += g(e.z0 + e.dz * (k as f64 * h))?;
    }
    e.trap = 0.5 * e.trap + s * h;
    e.n = n2;
    Ok(())
}

fn winding_once(gamma: &Contrast, rect: &Rectangle) -> std::result::Result<u32, WindFailure> {
    let corners = rect.corners();
    let logd = |z: Complex64| -> std::result::Result<Complex64, WindFailure> {
        let f = f_1d_complex(gamma, z);
        if f.norm() < MIN_EDGE_F {
            return Err(WindFailure::EdgeTooClose);
        }
        Ok(f_1d_prime_complex(gamma, z) / f)
    };
    let gval = gamma.value();
    let mut edges = Vec::with_capacity(4);
    for i in 0..4 {
        let z0 = corners[i];
        let z1 = corners[(i + 1) % 4];
        let trap = 0.5 * (logd(z0)? + logd(z1)?);
        let mut e = Edge { z0, dz: z1 - z0, n: 1, trap };
        // resolve the oscillation of F'/F (rate up to 1 + γ) before any
        // stabilization check is allowed
        let min_n = (1.5 * e.dz.norm() * (1.0 + gval)).max(8.0);
        while (e.n as f64) < min_n {
            refine_edge(&mut e, &logd)?;
        }
        edges.push(e);
    }
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    let mut prev_val: Option<Complex64> = None;
    for _level in 0..18 {
        for e in edges.iter_mut() {
            refine_edge(e, &logd)?;
        }
        let total: Complex64 = edges.iter().map(|e| e.trap * e.dz).sum();
        let v = total / two_pi_i;
        let m = v.re.round();
        if m >= 0.0 && (v - m).norm() < 0.25 {
            if let Some(pv) = prev_val {
                if (pv - v).norm() < 0.05 && pv.re.round() == m {
                    return Ok(m as u32);
                }
            }
            prev_val = Some(v);
        } else {
            prev_val = None;
        }
    }
    let total: Complex64 = edges.iter().map(|e| e.trap * e.dz).sum();
    Err(WindFailure::NotStabilized((total / two_pi_i).re))
}

/// All zeros of F in (0, R] × [−C−2, C+2] with multiplicities, sorted by
/// (Re, Im). Real zeros are cross-checked against the real enumeration.
pub fn enumerate_complex_ites(gamma: &Contrast, r_max: f64) -> Result<Vec<ComplexIte>> {
    if !r_max.is_finite() || r_max <= 0.0 {
        return Err(Error::domain(format!("search radius must be positive, got {r_max}")));
    }
    let band = strip_bound(gamma)? + 2.0; // widened margin over the proven bound
    let re_min = re_min_for(gamma);
    let root_rect = Rectangle::new(re_min, r_max, -band, band)?;
    let mut found: Vec<ComplexIte> = Vec::new();
    let mut stack = vec![root_rect];
    while let Some(rect) = stack.pop() {
        let w = winding_count(gamma, &rect)?;
        if w == 0 {
            continue;
        }
        let width = rect.re_hi - rect.re_lo;
        let height = rect.im_hi - rect.im_lo;
        if w == 3 {
            if let Some(lambda) = triple_candidate(gamma, &rect) {
                found.push(ComplexIte { re: lambda, im: 0.0, mult: 3 });
                continue;
            }
        }
        if w == 1 && width.max(height) < 1.0 {
            if let Some(z) = polish_simple(gamma, &rect) {
                found.push(ComplexIte { re: z.re, im: z.im, mult: 1 });
                continue;
            }
        }
        if width.max(height) < 1e-6 {
            return Err(Error::numerical(format!(
                "subdivision exhausted at [{}, {}]×[{}, {}] with winding {w}",
                rect.re_lo, rect.re_hi, rect.im_lo, rect.im_hi
            )));
        }
        // split the longer side along a line verified to stay clear of zeros
        if width >= height {
            let mid = clear_split(gamma, &rect, true);
            stack.push(Rectangle { re_hi: mid, ..rect });
            stack.push(Rectangle { re_lo: mid, ..rect });
        } else {
            let mid = clear_split(gamma, &rect, false);
            stack.push(Rectangle { im_hi: mid, ..rect });
            stack.push(Rectangle { im_lo: mid, ..rect });
        }
    }
    // cluster duplicates from zeros polished out of adjacent cells
    found.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    found.dedup_by(|a, b| {
        (a.re - b.re).hypot(a.im - b.im) < CLUSTER_TOL * (1.0 + b.re.hypot(b.im))
            && a.mult == b.mult
    });
    // snap near-real zeros and enforce exact conjugate pairing
    let mut zeros: Vec<ComplexIte> = Vec::with_capacity(found.len());
    for z in &found {
        if z.im.abs() < 1e-9 * (1.0 + z.re.abs()) {
            zeros.push(ComplexIte { re: z.re, im: 0.0, mult: z.mult });
        } else if z.im > 0.0 {
            zeros.push(*z);
            zeros.push(ComplexIte { re: z.re, im: -z.im, mult: z.mult });
        }
    }
    zeros.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    cross_check_real_zeros(gamma, r_max, &zeros)?;
    Ok(zeros)
}

/// Pick a split coordinate whose line keeps |F| comfortably above the edge
/// threshold; candidate fractions step away from the midpoint. Splitting
/// straight through a zero (every real zero lies on the axis, so an exact
/// im-midpoint of a symmetric cell would do that) is what this avoids.
fn clear_split(gamma: &Contrast, rect: &Rectangle, along_re: bool) -> f64 {
    let (lo, hi) = if along_re {
        (rect.re_lo, rect.re_hi)
    } else {
        (rect.im_lo, rect.im_hi)
    };
    let len = hi - lo;
    let candidates = [0.5, 0.45, 0.55, 0.4, 0.6, 0.35, 0.65, 0.3, 0.7, 0.25, 0.75];
    for frac in candidates {
        let c = lo + frac * len;
        // real zeros live on the axis: keep im-split lines clear of it
        if !along_re && c.abs() < 0.01 {
            continue;
        }
        let mut min_f = f64::MAX;
        for k in 0..=64 {
            let t = k as f64 / 64.0;
            let z = if along_re {
                Complex64::new(c, rect.im_lo + t * (rect.im_hi - rect.im_lo))
            } else {
                Complex64::new(rect.re_lo + t * (rect.re_hi - rect.re_lo), c)
            };
            min_f = min_f.min(f_1d_complex(gamma, z).norm());
        }
        if min_f > 100.0 * MIN_EDGE_F {
            return c;
        }
    }
    lo + 0.5 * len
}

/// A winding-3 cell holds a triple root iff it contains a common zero of
/// sin λ and sin γλ; the root then sits on the π lattice.
fn triple_candidate(gamma: &Contrast, rect: &Rectangle) -> Option<f64> {
    if rect.im_lo > 0.0 || rect.im_hi < 0.0 {
        return None;
    }
    let g = gamma.value();
    let center = 0.5 * (rect.re_lo + rect.re_hi);
    let k = (center / PI).round();
    let lambda = k * PI;
    if k < 1.0 || lambda <= rect.re_lo || lambda >= rect.re_hi {
        return None;
    }
    let t = g * lambda / PI;
    if (t - t.round()).abs() < 1e-7 * (1.0 + lambda) {
        Some(lambda)
    } else {
        None
    }
}

/// Newton polish of a simple zero from the cell center; the closed-form
/// derivative F' = (1 − γ²) sin λ sin γλ drives the iteration.
fn polish_simple(gamma: &Contrast, rect: &Rectangle) -> Option<Complex64> {
    let mut z = Complex64::new(
        0.5 * (rect.re_lo + rect.re_hi),
        0.5 * (rect.im_lo + rect.im_hi),
    );
    for _ in 0..80 {
        let f = f_1d_complex(gamma, z);
        let fp = f_1d_prime_complex(gamma, z);
        if fp.norm() == 0.0 {
            return None;
        }
        let step = f / fp;
        z -= step;
        if step.norm() <= 1e-13 * (1.0 + z.norm()) {
            // accept only a zero belonging to this cell: Newton may jump to a
            // neighboring zero of a tight cluster, which must stay with its
            // own cell or the count loses a zero to deduplication
            let m = 1e-6 * (1.0 + z.norm());
            let inside = z.re >= rect.re_lo - m
                && z.re <= rect.re_hi + m
                && z.im >= rect.im_lo - m
                && z.im <= rect.im_hi + m;
            return if inside && f_1d_complex(gamma, z).norm() < 1e-8 * (1.0 + z.norm()) {
                Some(z)
            } else {
                None
            };
        }
    }
    None
}

/// Real zeros found by winding must coincide with the real enumeration,
/// multiplicities included.
fn cross_check_real_zeros(gamma: &Contrast, r_max: f64, zeros: &[ComplexIte]) -> Result<()> {
    let real: Vec<&ComplexIte> = zeros.iter().filter(|z| z.im == 0.0).collect();
    let expected = crate::one_d::enumerate_real_ites_1d(gamma, r_max)?;
    let expected: Vec<_> = expected.iter().filter(|r| r.lambda >= re_min_for(gamma)).collect();
    if real.len() != expected.len() {
        let missing: Vec<f64> = expected
            .iter()
            .filter(|r| !real.iter().any(|z| (z.re - r.lambda).abs() < 1e-6 * (1.0 + r.lambda)))
            .map(|r| r.lambda)
            .collect();
        return Err(Error::numerical(format!(
            "real-zero cross-check: winding found {} real zeros, enumeration {}; missing {missing:?}",
            real.len(),
            expected.len()
        )));
    }
    for (z, r) in real.iter().zip(&expected) {
        if (z.re - r.lambda).abs() > 1e-9 * (1.0 + r.lambda) || z.mult != r.alg_mult {
            return Err(Error::numerical(format!(
                "real-zero cross-check mismatch at λ = {} (winding {} mult {})",
                r.lambda, z.re, z.mult
            )));
        }
    }
    Ok(())
}

/// Total multiplicity of zeros with Re λ ∈ (0, R] per grid point, against the
/// density law (1 + γ) R / π; residuals are reported as a fraction of R.
pub fn titchmarsh_residual(gamma: &Contrast, r_grid: &[f64]) -> Result<CountReport> {
    if r_grid.is_empty() {
        return Err(Error::domain("titchmarsh_residual needs a non-empty grid"));
    }
    if r_grid.windows(2).any(|w| w[0] >= w[1]) || r_grid[0] <= 0.0 {
        return Err(Error::domain("grid must be positive and strictly increasing"));
    }
    let r_max = *r_grid.last().unwrap();
    let zeros = enumerate_complex_ites(gamma, r_max)?;
    let g = gamma.value();
    let mut counts = Vec::with_capacity(r_grid.len());
    let mut weyl = Vec::with_capacity(r_grid.len());
    let mut residual = Vec::with_capacity(r_grid.len());
    for &r in r_grid {
        let slack = 1e-9 * (1.0 + r);
        let n: u64 = zeros
            .iter()
            .filter(|z| z.re <= r + slack)
            .map(|z| z.mult as u64)
            .sum();
        let pred = (1.0 + g) * r / PI;
        counts.push(n);
        weyl.push(pred);
        residual.push((n as f64 - pred).abs() / r);
    }
    let fit_coefficient = fit_power_coefficient(r_grid, &counts, 1.0);
    Ok(CountReport {
        radii: r_grid.to_vec(),
        counts,
        dirichlet_diff: None,
        weyl,
        residual_scaled: residual,
        fit_coefficient,
    })
}

//! Real ITEs of the half-line model: zeros of
//! F(λ) = γ sin λ cos γλ − sin γλ cos λ.
//!
//! The enumeration partitions (0, r] by the poles kπ and kπ/γ of the two
//! cotangent branches. On each pole-free piece the Dirichlet-to-Neumann
//! difference γ cot(γλ) − cot λ crosses zero with slope 1 − γ² at every zero,
//! so a piece carries at most one root and sign changes of F at the piece
//! endpoints certify it. Common poles are the triple roots.

use crate::error::{Error, Result};
use crate::rootfind;
use crate::types::{Contrast, CountMode, Eigenpair1D, RealIte, RootKind};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Distance (in units of π) below which a lattice coincidence is accepted.
const COMMON_TOL: f64 = 1e-8;
/// Offset used to evaluate signs next to a triple root, scaled by 1 + |λ|.
const TRIPLE_OFFSET: f64 = 1e-5;
/// Inclusion slack for the right-closed interval (0, r].
fn r_slack(r: f64) -> f64 {
    1e-9 * (1.0 + r.abs())
}

/// F(λ) = γ sin λ cos γλ − sin γλ cos λ.
pub fn f_1d(gamma: &Contrast, lambda: f64) -> f64 {
    let g = gamma.value();
    let (s, c) = lambda.sin_cos();
    let (sg, cg) = (g * lambda).sin_cos();
    g * s * cg - sg * c
}

/// F on the complex plane (entire, odd, conjugate-symmetric).
pub fn f_1d_complex(gamma: &Contrast, z: Complex64) -> Complex64 {
    let g = gamma.value();
    g * z.sin() * (g * z).cos() - (g * z).sin() * z.cos()
}

/// F'(λ) = (1 − γ²) sin λ sin γλ, on the complex plane.
pub fn f_1d_prime_complex(gamma: &Contrast, z: Complex64) -> Complex64 {
    let g = gamma.value();
    (1.0 - g * g) * z.sin() * (g * z).sin()
}

/// (F, F', F'', F''') from the closed forms.
pub fn f_1d_derivatives(gamma: &Contrast, lambda: f64) -> (f64, f64, f64, f64) {
    let g = gamma.value();
    let (s, c) = lambda.sin_cos();
    let (sg, cg) = (g * lambda).sin_cos();
    let k = 1.0 - g * g;
    let f = g * s * cg - sg * c;
    let f1 = k * s * sg;
    let f2 = k * (c * sg + g * s * cg);
    let f3 = k * (2.0 * g * c * cg - (1.0 + g * g) * s * sg);
    (f, f1, f2, f3)
}

/// One pole of either cotangent branch on (0, r].
#[derive(Debug, Clone, Copy)]
struct Pole {
    lambda: f64,
    common: bool,
}

/// Sorted pole partition of (0, r]: multiples of π, multiples of π/γ, with
/// coincidences merged into common poles.
fn pole_partition(gamma: &Contrast, r: f64) -> Vec<Pole> {
    let g = gamma.value();
    let slack = r_slack(r);
    let kmax = ((r + slack) / PI).floor() as u64;
    let jmax = ((r + slack) * g / PI).floor() as u64;
    let mut poles = Vec::with_capacity((kmax + jmax) as usize);
    for k in 1..=kmax {
        let lambda = k as f64 * PI;
        let common = match gamma.rational() {
            Some((_, q)) => k.is_multiple_of(q),
            None => {
                let t = g * k as f64;
                (t - t.round()).abs() < COMMON_TOL
            }
        };
        poles.push(Pole { lambda, common });
    }
    for j in 1..=jmax {
        let duplicate = match gamma.rational() {
            Some((p, _)) => j.is_multiple_of(p),
            None => {
                let t = j as f64 / g;
                (t - t.round()).abs() < COMMON_TOL
            }
        };
        if !duplicate {
            poles.push(Pole { lambda: j as f64 * PI / g, common: false });
        }
    }
    poles.sort_by(|a, b| a.lambda.total_cmp(&b.lambda));
    poles.retain(|p| p.lambda <= r + slack);
    poles
}

/// All real ITEs in (0, r], sorted increasing, each exactly once.
pub fn enumerate_real_ites_1d(gamma: &Contrast, r: f64) -> Result<Vec<RealIte>> {
    if !r.is_finite() || r <= 0.0 {
        return Err(Error::domain(format!("enumeration radius must be positive, got {r}")));
    }
    let poles = pole_partition(gamma, r);
    let mut roots: Vec<RealIte> = Vec::new();
    // pieces: (pole[i], pole[i+1]) for consecutive poles, then (last, r].
    // Signs next to a common pole are evaluated a small offset away, where
    // the cubic behavior of F dominates the rounding noise.
    for i in 0..poles.len() {
        let left = poles[i];
        let (right_x, right_common) = if i + 1 < poles.len() {
            (poles[i + 1].lambda, poles[i + 1].common)
        } else {
            (r, false)
        };
        let a = if left.common {
            left.lambda + TRIPLE_OFFSET * (1.0 + left.lambda)
        } else {
            left.lambda
        };
        let b = if right_common {
            right_x - TRIPLE_OFFSET * (1.0 + right_x)
        } else {
            right_x
        };
        if b > a {
            let fa = f_1d(gamma, a);
            let fb = f_1d(gamma, b);
            if fa != 0.0 && fb != 0.0 && fa.signum() != fb.signum() {
                let lambda = rootfind::newton_bisect(
                    |x| {
                        let (f, f1, _, _) = f_1d_derivatives(gamma, x);
                        (f, f1)
                    },
                    a,
                    b,
                    0.5 * (a + b),
                    crate::config::root_tolerance(),
                );
                if lambda <= r + r_slack(r) {
                    roots.push(RealIte::one_d(lambda, RootKind::Intersection));
                }
            }
        }
        if left.common {
            roots.push(RealIte::one_d(left.lambda, RootKind::CommonZero));
        }
    }
    roots.sort_by(|x, y| x.lambda.total_cmp(&y.lambda));
    Ok(roots)
}

/// Algebraic multiplicity of a root λ0 of F: 3 iff sin λ0 = sin γλ0 = 0.
pub fn classify_multiplicity_1d(gamma: &Contrast, lambda0: f64) -> Result<u8> {
    let g = gamma.value();
    let f = f_1d(gamma, lambda0);
    if f.abs() > 1e-6 * (1.0 + g) {
        return Err(Error::precondition(format!(
            "λ0 = {lambda0} is not a root of F (|F| = {:.3e})",
            f.abs()
        )));
    }
    let t = lambda0 / PI;
    let k = t.round();
    let on_pi_lattice = (t - k).abs() < COMMON_TOL;
    let triple = match gamma.rational() {
        Some((_, q)) => on_pi_lattice && k >= 1.0 && (k as u64).is_multiple_of(q),
        None => {
            let tg = g * lambda0 / PI;
            on_pi_lattice && (tg - tg.round()).abs() < COMMON_TOL
        }
    };
    Ok(if triple { 3 } else { 1 })
}

/// Normalized eigenpair coefficients at a root λ0:
/// (sin γλ0, sin λ0) for simple roots, (γ cos γλ0, cos λ0) for triple roots.
pub fn eigenpair_1d(gamma: &Contrast, lambda0: f64) -> Result<Eigenpair1D> {
    let g = gamma.value();
    let mult = classify_multiplicity_1d(gamma, lambda0)?;
    let (a, b) = if mult == 3 {
        (g * (g * lambda0).cos(), lambda0.cos())
    } else {
        ((g * lambda0).sin(), lambda0.sin())
    };
    let norm = a.hypot(b);
    if norm == 0.0 {
        return Err(Error::numerical(format!("degenerate eigenpair at λ0 = {lambda0}")));
    }
    Ok(Eigenpair1D { a: a / norm, b: b / norm })
}

/// Count of real ITEs in (0, r]: geometric counts each once; algebraic adds
/// 2 for every common-zero (triple) root.
pub fn count_1d(gamma: &Contrast, r: f64, mode: CountMode) -> Result<u64> {
    let roots = enumerate_real_ites_1d(gamma, r)?;
    Ok(count_roots(&roots, mode))
}

/// Counting convention applied to an already-enumerated root list.
pub fn count_roots(roots: &[RealIte], mode: CountMode) -> u64 {
    let n = roots.len() as u64;
    match mode {
        CountMode::Geometric => n,
        CountMode::Algebraic => {
            n + 2 * roots.iter().filter(|r| r.kind == RootKind::CommonZero).count() as u64
        }
    }
}

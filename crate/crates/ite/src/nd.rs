//! Real ITEs of the unit ball in dimension n ≥ 2.
//!
//! Per angular momentum l the eigenvalues are the zeros of
//! F_ν(λ) = γ J_ν(λ) J_ν'(γλ) − J_ν(γλ) J_ν'(λ), ν = l + n/2 − 1
//! (the reduced radial functions differ by a positive prefactor with the same
//! zeros). Each zero carries geometric multiplicity μ(l), the dimension of
//! the spherical-harmonics eigenspace, and the counting function is
//! N(r) = Σ μ(l) · #{zeros of F_ν(l) in (0, r]}.
//!
//! Enumeration partitions (0, r] by the zeros of J_ν(λ) and of J_ν(γλ).
//! On a piece free of both, the log-derivative difference crosses zero with
//! slope 1 − γ², so each piece carries at most one (simple) root; common
//! zeros of the two factors are the triple roots.

use crate::bessel::{self, Order, ZeroTable};
use crate::error::{Error, Result};
use crate::gamma::gamma;
use crate::report::{fit_power_coefficient, CountReport};
use crate::rootfind;
use crate::types::{Contrast, RealIte, RootKind, Source};
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

/// Value tolerance of the common-zero test: both |J_ν(λ0)| and |J_ν(γλ0)|
/// must fall below this, scaled by 1 + λ0.
const COMMON_VALUE_TOL: f64 = 1e-9;
/// Position pre-filter for pairing zeros of the two factors.
const COMMON_POSITION_TOL: f64 = 1e-6;
/// Offset for sign evaluation next to a triple root, scaled by 1 + λ.
const TRIPLE_OFFSET: f64 = 1e-4;

fn r_slack(r: f64) -> f64 {
    1e-9 * (1.0 + r.abs())
}

/// Ball geometry and refraction data for the n-dimensional problem.
#[derive(Debug, Clone, Serialize)]
pub struct DimensionConfig {
    n: u32,
    m: f64,
}

impl DimensionConfig {
    /// n ≥ 2 and m > 0. m = 1 is accepted but flagged degenerate; the
    /// enumeration entry points reject it.
    pub fn new(n: u32, m: f64) -> Result<DimensionConfig> {
        if n < 2 {
            return Err(Error::domain(format!("dimension must be ≥ 2, got {n}")));
        }
        if !m.is_finite() || m <= 0.0 {
            return Err(Error::domain(format!("index of refraction must be positive, got {m}")));
        }
        Ok(DimensionConfig { n, m })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    /// m = 1 means no contrast: every counting law degenerates to zero.
    pub fn is_degenerate(&self) -> bool {
        self.m == 1.0
    }

    /// γ = √m.
    pub fn gamma(&self) -> f64 {
        self.m.sqrt()
    }

    pub fn contrast(&self) -> Result<Contrast> {
        Contrast::from_refraction_index(self.m)
    }

    /// Volume ω_n = π^{n/2} / Γ(n/2 + 1) of the unit ball.
    pub fn ball_volume(&self) -> f64 {
        let half_n = self.n as f64 / 2.0;
        PI.powf(half_n) / gamma(half_n + 1.0)
    }

    /// Bessel order ν(l) = l + n/2 − 1.
    pub fn order_for(&self, l: u32) -> Order {
        Order::for_momentum(self.n, l).expect("validated dimension")
    }
}

/// Dimension of the spherical-harmonics eigenspace for momentum l:
/// μ(l) = (2l + n − 2)/(n − 2) · C(l + n − 3, n − 3) for n ≥ 3,
/// and μ(0) = 1, μ(l ≥ 1) = 2 on the circle (n = 2).
pub fn multiplicity_mu(n: u32, l: u32) -> u64 {
    assert!(n >= 2, "dimension must be ≥ 2");
    if n == 2 {
        return if l == 0 { 1 } else { 2 };
    }
    let l = l as u128;
    let n = n as u128;
    let binom = binomial(l + n - 3, n - 3);
    let num = (2 * l + n - 2) * binom;
    (num / (n - 2)) as u64
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// F_ν(λ) = γ J_ν(λ) J_ν'(γλ) − J_ν(γλ) J_ν'(λ) (unreduced form).
pub fn f_nu(gamma: &Contrast, nu: Order, lambda: f64) -> Result<f64> {
    Ok(f_nu_with_derivative(gamma, nu, lambda)?.0)
}

/// (F_ν, F_ν') with the derivative from the closed identity
/// F_ν'(λ) = −λ⁻¹ F_ν(λ) + (1 − γ²) J_ν(λ) J_ν(γλ).
pub fn f_nu_with_derivative(gamma: &Contrast, nu: Order, lambda: f64) -> Result<(f64, f64)> {
    if !lambda.is_finite() || lambda <= 0.0 {
        return Err(Error::domain(format!("F_ν needs λ > 0, got {lambda}")));
    }
    let g = gamma.value();
    let v = nu.value();
    let (j, jp) = bessel::j_jp(v, lambda)?;
    let (jg, jgp) = bessel::j_jp(v, g * lambda)?;
    let f = g * j * jgp - jg * jp;
    let fp = -f / lambda + (1.0 - g * g) * j * jg;
    Ok((f, fp))
}

/// (F, F', F'', F''') at λ > 0, from the derivative identity and the Bessel ODE.
pub fn f_nu_derivatives(gamma: &Contrast, nu: Order, lambda: f64) -> Result<(f64, f64, f64, f64)> {
    if !lambda.is_finite() || lambda <= 0.0 {
        return Err(Error::domain(format!("F_ν needs λ > 0, got {lambda}")));
    }
    let g = gamma.value();
    let v = nu.value();
    let k = 1.0 - g * g;
    let (j, jp) = bessel::j_jp(v, lambda)?;
    let (jg, jgp) = bessel::j_jp(v, g * lambda)?;
    let jpp = -jp / lambda - (1.0 - v * v / (lambda * lambda)) * j;
    let gl = g * lambda;
    let jgpp = -jgp / gl - (1.0 - v * v / (gl * gl)) * jg;
    let f = g * j * jgp - jg * jp;
    let f1 = -f / lambda + k * j * jg;
    let f2 = f / (lambda * lambda) - f1 / lambda + k * (jp * jg + g * j * jgp);
    let f3 = -2.0 * f / lambda.powi(3) + 2.0 * f1 / (lambda * lambda) - f2 / lambda
        + k * (jpp * jg + 2.0 * g * jp * jgp + g * g * j * jgpp);
    Ok((f, f1, f2, f3))
}

/// Roots of F_ν on (0, r] with their kinds, sorted increasing.
pub fn enumerate_order_roots(
    gamma: &Contrast,
    nu: Order,
    r: f64,
) -> Result<Vec<(f64, RootKind)>> {
    if !r.is_finite() || r <= 0.0 {
        return Err(Error::domain(format!("enumeration radius must be positive, got {r}")));
    }
    let g = gamma.value();
    let table = bessel::bessel_zeros(nu, r * g.max(1.0) * (1.0 + 1e-12) + r_slack(r))?;
    enumerate_order_roots_with_table(gamma, nu, r, &table)
}

/// Partition point: a zero of J_ν(λ), of J_ν(γλ), or a common zero of both.
#[derive(Debug, Clone, Copy, PartialEq)]
enum PoleKind {
    Small,  // zero of J_ν(λ)
    Large,  // zero of J_ν(γλ)
    Common, // triple root
}

pub(crate) fn enumerate_order_roots_with_table(
    gamma: &Contrast,
    nu: Order,
    r: f64,
    table: &ZeroTable,
) -> Result<Vec<(f64, RootKind)>> {
    let g = gamma.value();
    let v = nu.value();
    let slack = r_slack(r);
    let zeros = table.zeros();
    let a_poles = &zeros[..zeros.partition_point(|&z| z <= r + slack)];
    let b_count = zeros.partition_point(|&z| z <= g * (r + slack));
    let b_poles: Vec<f64> = zeros[..b_count].iter().map(|z| z / g).collect();

    // merge, detecting common zeros by position pre-filter + value test
    let mut points: Vec<(f64, PoleKind)> = Vec::with_capacity(a_poles.len() + b_poles.len());
    let mut bi = 0;
    for &a in a_poles {
        while bi < b_poles.len() && b_poles[bi] < a - COMMON_POSITION_TOL * (1.0 + a) {
            points.push((b_poles[bi], PoleKind::Large));
            bi += 1;
        }
        let mut common = false;
        if bi < b_poles.len() && (b_poles[bi] - a).abs() <= COMMON_POSITION_TOL * (1.0 + a) {
            let jga = bessel::j_jp(v, g * a)?.0;
            if jga.abs() <= COMMON_VALUE_TOL * (1.0 + a) {
                common = true;
                bi += 1; // merged
            }
        }
        points.push((a, if common { PoleKind::Common } else { PoleKind::Small }));
    }
    while bi < b_poles.len() {
        points.push((b_poles[bi], PoleKind::Large));
        bi += 1;
    }

    let fval = |x: f64| -> Result<f64> { Ok(f_nu_with_derivative(gamma, nu, x)?.0) };
    let mut roots: Vec<(f64, RootKind)> = Vec::new();
    for i in 0..points.len() {
        let (left, lkind) = points[i];
        let (right, rkind) = if i + 1 < points.len() {
            points[i + 1]
        } else {
            (r, PoleKind::Small) // sentinel: plain endpoint, no offset
        };
        let a = if lkind == PoleKind::Common {
            left + TRIPLE_OFFSET * (1.0 + left)
        } else {
            left
        };
        let b = if i + 1 < points.len() && rkind == PoleKind::Common {
            right - TRIPLE_OFFSET * (1.0 + right)
        } else {
            right.min(r)
        };
        if b > a {
            let fa = fval(a)?;
            let fb = fval(b)?;
            if fa != 0.0 && fb != 0.0 && fa.signum() != fb.signum() {
                let lambda = rootfind::newton_bisect(
                    |x| f_nu_with_derivative(gamma, nu, x).unwrap_or((f64::NAN, f64::NAN)),
                    a,
                    b,
                    0.5 * (a + b),
                    crate::config::root_tolerance(),
                );
                if lambda <= r + slack {
                    roots.push((lambda, RootKind::Intersection));
                }
            } else if lkind == PoleKind::Small
                && rkind == PoleKind::Small
                && i + 1 < points.len()
                && right <= r + slack
            {
                // a small interval strictly inside a large one must carry
                // exactly one root; a missed sign change means a numerically
                // fragile near-triple configuration — rescue by minimizing |F|
                let inside_large = !b_poles
                    .iter()
                    .any(|&bp| bp >= left - 1e-12 && bp <= right + 1e-12);
                if inside_large {
                    let (x, fx) = rootfind::golden_min(
                        |u| fval(u).map(f64::abs).unwrap_or(f64::INFINITY),
                        a,
                        b,
                        1e-12,
                    );
                    let scale = local_product_scale(gamma, nu, x)?;
                    if fx <= 1e-9 * scale {
                        roots.push((x, RootKind::Intersection));
                    }
                }
            }
        }
        if lkind == PoleKind::Common && left <= r + slack {
            roots.push((left, RootKind::CommonZero));
        }
    }
    roots.sort_by(|x, y| x.0.total_cmp(&y.0));
    Ok(roots)
}

/// Magnitude of the two products whose difference forms F_ν; used to scale
/// near-zero acceptance.
fn local_product_scale(gamma: &Contrast, nu: Order, x: f64) -> Result<f64> {
    let g = gamma.value();
    let v = nu.value();
    let (j, jp) = bessel::j_jp(v, x)?;
    let (jg, jgp) = bessel::j_jp(v, g * x)?;
    Ok((g * j * jgp).abs().max((jg * jp).abs()).max(1e-300))
}

/// Roots of F_ν(l) for one momentum, with multiplicities attached.
#[derive(Debug, Clone, Serialize)]
pub struct NuSpectrum {
    pub l: u32,
    pub nu: Order,
    pub mu: u64,
    pub roots: Vec<RealIte>,
}

/// Enumerate the ITEs carried by momentum l on (0, r].
pub fn enumerate_ites_for_nu(cfg: &DimensionConfig, l: u32, r: f64) -> Result<NuSpectrum> {
    let contrast = cfg.contrast()?;
    let nu = cfg.order_for(l);
    let mu = multiplicity_mu(cfg.n, l);
    let roots = enumerate_order_roots(&contrast, nu, r)?
        .into_iter()
        .map(|(lambda, kind)| RealIte {
            lambda,
            alg_mult: if kind == RootKind::CommonZero { 3 } else { 1 },
            geom_mult: mu,
            kind,
            source: Source::Momentum(l),
        })
        .collect();
    Ok(NuSpectrum { l, nu, mu, roots })
}

/// Largest momentum that can carry a zero of F_ν(l) at or below r: the first
/// zero of J_ν exceeds ν, and roots require j_{ν,1} ≤ r·max(1, γ).
fn momentum_cutoff(cfg: &DimensionConfig, r: f64) -> u32 {
    let threshold = r * cfg.gamma().max(1.0);
    // j_{ν,1} > ν, so ν ≥ threshold can be dropped
    (threshold - (cfg.n as f64 / 2.0 - 1.0)).ceil().max(0.0) as u32
}

/// Per-momentum data produced by the shared parallel driver.
struct MomentumSlice {
    l: u32,
    mu: u64,
    roots: Vec<(f64, RootKind)>,
    table: ZeroTable,
}

fn momentum_slices(cfg: &DimensionConfig, r: f64) -> Result<Vec<MomentumSlice>> {
    if cfg.is_degenerate() {
        return Err(Error::domain("m = 1 is degenerate: no interior transmission spectrum"));
    }
    let contrast = cfg.contrast()?;
    let g = cfg.gamma();
    let lmax = momentum_cutoff(cfg, r);
    let upper = r * g.max(1.0) * (1.0 + 1e-12) + r_slack(r);
    let mut slices: Vec<MomentumSlice> = (0..=lmax)
        .into_par_iter()
        .map(|l| -> Result<Option<MomentumSlice>> {
            let nu = cfg.order_for(l);
            let table = bessel::bessel_zeros(nu, upper)?;
            if table.zeros().is_empty() {
                return Ok(None);
            }
            let roots = enumerate_order_roots_with_table(&contrast, nu, r, &table)?;
            Ok(Some(MomentumSlice { l, mu: multiplicity_mu(cfg.n, l), roots, table }))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    slices.sort_by_key(|s| s.l);
    Ok(slices)
}

/// N(r): all ITEs in (0, r] counted with geometric multiplicities μ(l).
pub fn count_nd(cfg: &DimensionConfig, r: f64) -> Result<u64> {
    if !r.is_finite() || r <= 0.0 {
        return Err(Error::domain(format!("counting radius must be positive, got {r}")));
    }
    let slices = momentum_slices(cfg, r)?;
    Ok(slices.iter().map(|s| s.mu * s.roots.len() as u64).sum())
}

/// Every ITE in (0, r] across all momenta, sorted by (λ, l).
pub fn enumerate_all(cfg: &DimensionConfig, r: f64) -> Result<Vec<RealIte>> {
    if !r.is_finite() || r <= 0.0 {
        return Err(Error::domain(format!("enumeration radius must be positive, got {r}")));
    }
    let slices = momentum_slices(cfg, r)?;
    let mut roots: Vec<RealIte> = slices
        .into_iter()
        .flat_map(|s| {
            s.roots.into_iter().map(move |(lambda, kind)| RealIte {
                lambda,
                alg_mult: if kind == RootKind::CommonZero { 3 } else { 1 },
                geom_mult: s.mu,
                kind,
                source: Source::Momentum(s.l),
            })
        })
        .collect();
    roots.sort_by(|a, b| {
        a.lambda.total_cmp(&b.lambda).then_with(|| {
            let (Source::Momentum(la), Source::Momentum(lb)) = (a.source, b.source) else {
                return std::cmp::Ordering::Equal;
            };
            la.cmp(&lb)
        })
    });
    Ok(roots)
}

/// Dirichlet counting function of the ball at wave speed `speed`:
/// Σ_l μ(l) · #{k : j_{ν(l),k} ≤ speed·r}.
pub fn dirichlet_count(cfg: &DimensionConfig, speed: f64, r: f64) -> Result<u64> {
    if !r.is_finite() || r <= 0.0 || !speed.is_finite() || speed <= 0.0 {
        return Err(Error::domain("dirichlet_count needs positive speed and radius"));
    }
    let threshold = speed * r;
    let lmax = (threshold - (cfg.n as f64 / 2.0 - 1.0)).ceil().max(0.0) as u32;
    let counts: Vec<u64> = (0..=lmax)
        .into_par_iter()
        .map(|l| -> Result<u64> {
            let nu = cfg.order_for(l);
            let table = bessel::bessel_zeros(nu, threshold + r_slack(threshold))?;
            Ok(multiplicity_mu(cfg.n, l) * table.count_leq(threshold + r_slack(threshold)) as u64)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(counts.iter().sum())
}

/// Leading Weyl coefficient (2π)^{-n} ω_n² |1 − m^{n/2}| (zero when m = 1).
pub fn weyl_coefficient(cfg: &DimensionConfig) -> f64 {
    let n = cfg.n as f64;
    let omega = cfg.ball_volume();
    (2.0 * PI).powf(-n) * omega * omega * (1.0 - cfg.m.powf(n / 2.0)).abs()
}

/// Tabulate N(r), |N_1(r) − N_γ(r)|, the Weyl prediction, scaled residuals,
/// and the power-law fit over the top half of the grid.
pub fn weyl_report(cfg: &DimensionConfig, grid: &[f64]) -> Result<CountReport> {
    if grid.is_empty() {
        return Err(Error::domain("weyl_report needs a non-empty grid"));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) || grid[0] <= 0.0 {
        return Err(Error::domain("grid must be positive and strictly increasing"));
    }
    let rmax = *grid.last().unwrap();
    let g = cfg.gamma();
    let slices = momentum_slices(cfg, rmax)?;
    let mut counts = vec![0u64; grid.len()];
    let mut n1 = vec![0u64; grid.len()];
    let mut ng = vec![0u64; grid.len()];
    for s in &slices {
        for (i, &r) in grid.iter().enumerate() {
            let slack = r_slack(r);
            let nroots = s.roots.partition_point(|&(x, _)| x <= r + slack) as u64;
            counts[i] += s.mu * nroots;
            n1[i] += s.mu * s.table.count_leq(r + slack) as u64;
            ng[i] += s.mu * s.table.count_leq(g * (r + slack)) as u64;
        }
    }
    let coeff = weyl_coefficient(cfg);
    let n = cfg.n as f64;
    let weyl: Vec<f64> = grid.iter().map(|&r| coeff * r.powf(n)).collect();
    let residual_scaled: Vec<f64> = grid
        .iter()
        .zip(counts.iter().zip(&weyl))
        .map(|(&r, (&c, &w))| (c as f64 - w).abs() / r.powf(n - 1.0))
        .collect();
    let dirichlet_diff: Vec<u64> = n1.iter().zip(&ng).map(|(&a, &b)| a.abs_diff(b)).collect();
    let fit_coefficient = fit_power_coefficient(grid, &counts, n);
    Ok(CountReport {
        radii: grid.to_vec(),
        counts,
        dirichlet_diff: Some(dirichlet_diff),
        weyl,
        residual_scaled,
        fit_coefficient,
    })
}

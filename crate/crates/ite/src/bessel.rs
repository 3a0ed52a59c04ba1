//! Bessel functions J_ν, J_ν', Hankel functions H^(1)_ν, and tables of
//! positive zeros of J_ν, for real order ν ≥ 0 and positive real argument.
//!
//! Evaluation strategy: ascending power series for x below 2 (no cancellation
//! there since the term ratio stays below 1), and for larger x a continued
//! fraction for J_ν'/J_ν combined with downward order recurrence, the complex
//! continued fraction for (J' + iY')/(J + iY) at reduced order, and the
//! Wronskian J_ν Y_ν' − J_ν' Y_ν = 2/(πx) for the normalization. Y at small x
//! comes from Temme's series. Half-integer orders take a closed trigonometric
//! fast path through the Riccati–Bessel recurrences; the generic path stays
//! available as a cross-check.
//!
//! Correctness is enforced by identities (ODE residual, recurrences, the
//! Wronskian, closed forms at half-integer order) rather than by reference to
//! any particular library.

use crate::error::{Error, Result};
use crate::gamma::ln_gamma;
use crate::rootfind;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

/// Convergence target for continued fractions and series.
const EPS: f64 = 1e-16;
/// Smallest magnitude kept inside Lentz iterations.
const FPMIN: f64 = 1e-300;
/// Switch point between the power-series and the continued-fraction routes.
const XMIN_CF: f64 = 2.0;
/// Rescale threshold inside downward recurrences.
const BIG: f64 = 1e250;
const BIG_INV: f64 = 1e-250;

/// Bessel order ν ≥ 0. In n-dimensional usage ν = l + n/2 − 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Order(f64);

impl Order {
    pub fn new(nu: f64) -> Result<Order> {
        if !nu.is_finite() || nu < 0.0 {
            return Err(Error::domain(format!("Bessel order must be finite and ≥ 0, got {nu}")));
        }
        Ok(Order(nu))
    }

    /// ν = l + n/2 − 1 for spatial dimension n ≥ 2 and momentum l ≥ 0.
    pub fn for_momentum(n: u32, l: u32) -> Result<Order> {
        if n < 2 {
            return Err(Error::domain(format!("dimension must be ≥ 2, got {n}")));
        }
        Order::new(l as f64 + n as f64 / 2.0 - 1.0)
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// J and Y values with derivatives at a fixed (ν, x).
#[derive(Debug, Clone, Copy)]
pub(crate) struct BesselJy {
    pub j: f64,
    pub jp: f64,
    pub y: f64,
    pub yp: f64,
}

// ---------------------------------------------------------------------------
// power series (x < XMIN_CF, any ν ≥ 0)
// ---------------------------------------------------------------------------

/// J_ν(x) and J_ν'(x) by the ascending series. For x < 2 the term ratio is
/// below 1/(k(k+1)) so the first term dominates and there is no cancellation.
fn series_j_jp(nu: f64, x: f64) -> (f64, f64) {
    let half = 0.5 * x;
    let t0 = (nu * half.ln() - ln_gamma(nu + 1.0)).exp(); // underflows to 0 for large ν: correct limit
    let q = -half * half;
    let mut term = t0;
    let mut sum_j = term;
    let mut sum_jp = term * nu / x; // termwise derivative: term_k (ν+2k)/x
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= q / (k * (nu + k));
        sum_j += term;
        sum_jp += term * (nu + 2.0 * k) / x;
        if term.abs() <= EPS * sum_j.abs() + 1e-305 || k > 60.0 {
            break;
        }
    }
    (sum_j, sum_jp)
}

// ---------------------------------------------------------------------------
// Temme's series for Y_μ, Y_{μ+1} at small x, |μ| ≤ 1/2
// ---------------------------------------------------------------------------

/// Coefficients of 1/Γ(z) = Σ_{k≥1} c_k z^k (so 1/Γ(1+μ) = Σ c_k μ^{k-1}).
const INV_GAMMA_COEF: [f64; 26] = [
    1.0000000000000000,
    0.5772156649015329,
    -0.6558780715202538,
    -0.0420026350340952,
    0.1665386113822915,
    -0.0421977345555443,
    -0.0096219715278770,
    0.0072189432466630,
    -0.0011651675918591,
    -0.0002152416741149,
    0.0001280502823882,
    -0.0000201348547807,
    -0.0000012504934821,
    0.0000011330272320,
    -0.0000002056338417,
    0.0000000061160950,
    0.0000000050020075,
    -0.0000000011812746,
    0.0000000001043427,
    0.0000000000077823,
    -0.0000000000036968,
    0.0000000000005100,
    -0.0000000000000206,
    -0.0000000000000054,
    0.0000000000000014,
    0.0000000000000001,
];

/// (gam1, gam2) with gam1 = [1/Γ(1−μ) − 1/Γ(1+μ)]/(2μ) and
/// gam2 = [1/Γ(1−μ) + 1/Γ(1+μ)]/2, both stable through μ = 0.
fn temme_gammas(mu: f64) -> (f64, f64) {
    let mu2 = mu * mu;
    let mut gam1 = 0.0;
    let mut gam2 = 0.0;
    let mut pw = 1.0; // μ^{k-2} for even k, μ^{k-1} for odd k, built incrementally
    for pair in INV_GAMMA_COEF.chunks(2) {
        gam2 += pair[0] * pw;
        if pair.len() > 1 {
            gam1 -= pair[1] * pw;
        }
        pw *= mu2;
        if pw < 1e-20 {
            break;
        }
    }
    (gam1, gam2)
}

/// Y_μ(x) and Y_{μ+1}(x) for 0 < x < XMIN_CF and |μ| ≤ 1/2, by the cancellation-free
/// rearrangement of the reflection formula (Temme's method).
fn temme_y(mu: f64, x: f64) -> (f64, f64) {
    debug_assert!(mu.abs() <= 0.5 + 1e-12 && x > 0.0 && x < XMIN_CF + 1e-9);
    let l = (0.5 * x).ln();
    let t = mu * l;
    let (gam1, gam2) = temme_gammas(mu);
    let pimu = PI * mu;
    let sigma = if pimu.abs() < 1e-30 { 1.0 } else { pimu / pimu.sin() };
    let sinhc = if t.abs() < 1e-8 { 1.0 + t * t / 6.0 } else { t.sinh() / t };
    let r = PI * (0.5 * pimu).tan();

    // f_k, p_k, q_k as in the series  Y_μ = Σ C_k (f_k − r p_k),
    // Y_{μ+1} = −(2/x) [ Σ k C_k (f_k − r p_k) + σ Σ C_k q_k ].
    let mut f = (2.0 * sigma / PI) * (gam2 * l * sinhc - gam1 * t.cosh());
    let mut p = t.exp() * (gam2 - mu * gam1) / PI; // (x/2)^μ / (π Γ(1+μ))
    let mut q = (-t).exp() * (gam2 + mu * gam1) / PI; // (x/2)^{-μ} / (π Γ(1−μ))
    let d = x * x / 4.0;
    let mut c = 1.0;
    let mut sum0 = f - r * p;
    let mut sum1 = 0.0;
    let mut sumq = q;
    let mut k = 0.0;
    loop {
        k += 1.0;
        f = (k * f - sigma * (p + q)) / (k * k - mu * mu);
        p /= k + mu;
        q /= k - mu;
        c *= -d / k;
        let a = f - r * p;
        sum0 += c * a;
        sum1 += k * c * a;
        sumq += c * q;
        if c.abs() * (a.abs() + q.abs() + k * a.abs()) <= EPS * (sum0.abs() + sumq.abs()) || k > 80.0 {
            break;
        }
    }
    let y_mu = sum0;
    let y_mu1 = -(2.0 / x) * (sum1 + sigma * sumq);
    (y_mu, y_mu1)
}

// ---------------------------------------------------------------------------
// large-argument asymptotics (Hankel's expansion)
// ---------------------------------------------------------------------------

/// Smallest x at which the asymptotic branch is attempted.
const XMIN_ASYMPTOTIC: f64 = 40.0;

/// J_ν(x), Y_ν(x) by the phase-amplitude expansion
/// J = √(2/(πx)) (P cos χ − Q sin χ), Y = √(2/(πx)) (P sin χ + Q cos χ),
/// χ = x − (ν/2 + 1/4)π. Returns None when the series cannot reach ~1e-16
/// before its terms start growing.
fn asymptotic_jy_single(nu: f64, x: f64) -> Option<(f64, f64)> {
    let mu4 = 4.0 * nu * nu;
    let mut a = 1.0f64;
    let mut p = 1.0f64;
    let mut q = 0.0f64;
    let mut converged = false;
    for m in 1..=60u32 {
        let tm = 2.0 * m as f64 - 1.0;
        a *= (mu4 - tm * tm) / (8.0 * m as f64 * x);
        match m % 4 {
            1 => q += a,
            2 => p -= a,
            3 => q -= a,
            _ => p += a,
        }
        let mag = a.abs();
        if mag <= 1e-17 * (p.abs() + q.abs()) {
            converged = true;
            break;
        }
        // intermediate terms above ~8 would leave rounding residue over 1e-15
        if mag > 8.0 {
            return None;
        }
    }
    if !converged {
        return None;
    }
    let chi = x - (0.5 * nu + 0.25) * PI;
    let (s, c) = chi.sin_cos();
    let pref = (2.0 / (PI * x)).sqrt();
    Some((pref * (p * c - q * s), pref * (p * s + q * c)))
}

/// Full (J, J', Y, Y') from the asymptotic branch, derivatives via
/// Z_ν' = (ν/x) Z_ν − Z_{ν+1}.
fn asymptotic_jy(nu: f64, x: f64) -> Option<BesselJy> {
    if x < XMIN_ASYMPTOTIC {
        return None;
    }
    let (j, y) = asymptotic_jy_single(nu, x)?;
    let (j1, y1) = asymptotic_jy_single(nu + 1.0, x)?;
    Some(BesselJy {
        j,
        jp: (nu / x) * j - j1,
        y,
        yp: (nu / x) * y - y1,
    })
}

// ---------------------------------------------------------------------------
// continued fractions (x ≥ XMIN_CF)
// ---------------------------------------------------------------------------

/// CF1: f = J_ν'(x)/J_ν(x) by a modified Lentz evaluation of
/// ν/x − 1/(2(ν+1)/x − 1/(2(ν+2)/x − ...)). The returned sign tracks the sign
/// of J_ν(x) (the denominator flips mirror the minimal-solution recurrence).
fn cf1(nu: f64, x: f64) -> Result<(f64, i32)> {
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let max_iter = 20_000 + (2.0 * (nu + x)) as usize;
    let mut isign = 1i32;
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0f64;
    let mut c = h;
    for _ in 0..max_iter {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() <= EPS {
            return Ok((h, isign));
        }
    }
    Err(Error::numerical(format!("CF1 failed to converge, nu={nu}, x={x}")))
}

/// CF2: (p, q) with p + iq = (J_μ' + iY_μ')/(J_μ + iY_μ), valid for x ≥ XMIN_CF.
fn cf2(mu: f64, x: f64) -> Result<(f64, f64)> {
    let mut a = 0.25 - mu * mu;
    let mut b = Complex64::new(2.0 * x, 2.0);
    let mut c = Complex64::new(1.0 / FPMIN, 0.0);
    let mut d = 1.0 / b;
    let mut h = d * a;
    let mut k = 1.0f64;
    for _ in 0..100_000 {
        k += 1.0;
        a += 2.0 * (k - 1.0);
        b += Complex64::new(0.0, 2.0);
        d = b + d * a;
        if d.norm_sqr() < FPMIN {
            d = Complex64::new(FPMIN, 0.0);
        }
        c = b + a / c;
        if c.norm_sqr() < FPMIN {
            c = Complex64::new(FPMIN, 0.0);
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if (del - 1.0).norm() <= EPS {
            let ratio = Complex64::new(-0.5 / x, 1.0) + Complex64::new(0.0, 1.0 / x) * h;
            return Ok((ratio.re, ratio.im));
        }
    }
    Err(Error::numerical(format!("CF2 failed to converge, mu={mu}, x={x}")))
}

// ---------------------------------------------------------------------------
// generic engine
// ---------------------------------------------------------------------------

/// J_ν(x) and J_ν'(x) for ν ≥ 0, x > 0, generic route (no half-integer shortcut).
pub(crate) fn j_jp_generic(nu: f64, x: f64) -> Result<(f64, f64)> {
    if x < XMIN_CF {
        return Ok(series_j_jp(nu, x));
    }
    if let Some(v) = asymptotic_jy(nu, x) {
        return Ok((v.j, v.jp));
    }
    let (f, isign) = cf1(nu, x)?;
    // bring the order down to μ = ν − nl with μ in (x − 1.5, x − 0.5] or μ = ν
    let nl = ((nu - x + 1.5).floor().max(0.0)) as usize;
    let mu = nu - nl as f64;
    let seed = isign as f64;
    let mut jl = seed;
    let mut jpl = f * seed;
    let mut scales = 0u32;
    let mut k = nu;
    for _ in 0..nl {
        let jm1 = (k / x) * jl + jpl;
        let jpm1 = ((k - 1.0) / x) * jm1 - jl;
        jl = jm1;
        jpl = jpm1;
        k -= 1.0;
        if jl.abs() > BIG {
            jl *= BIG_INV;
            jpl *= BIG_INV;
            scales += 1;
        }
    }
    let fmu = jpl / jl;
    let (p, q) = cf2(mu, x)?;
    if q <= 0.0 {
        return Err(Error::numerical(format!("CF2 produced non-positive q, mu={mu}, x={x}")));
    }
    let w = 2.0 / (PI * x);
    let gamma_ratio = (p - fmu) / q; // Y_μ / J_μ
    let jmu_mag = (w / (q * (1.0 + gamma_ratio * gamma_ratio))).sqrt();
    let jmu = jmu_mag.copysign(jl);
    // renormalize back to order ν
    let mut jnu = seed * (jmu / jl);
    for _ in 0..scales {
        jnu *= BIG_INV;
    }
    Ok((jnu, f * jnu))
}

/// Full (J, J', Y, Y') for ν ≥ 0, x > 0, generic route.
fn jy_generic(nu: f64, x: f64) -> Result<BesselJy> {
    if x < XMIN_CF {
        let (j, jp) = series_j_jp(nu, x);
        let nl = (nu + 0.5).floor() as usize;
        let mu = nu - nl as f64;
        let (ymu, ymu1) = temme_y(mu, x);
        let (mut y0, mut y1) = (ymu, ymu1);
        let mut t = mu + 1.0;
        for _ in 1..nl {
            let y2 = (2.0 * t / x) * y1 - y0;
            y0 = y1;
            y1 = y2;
            t += 1.0;
        }
        let (ynu, ynu_minus) = if nl == 0 { (y0, f64::NAN) } else { (y1, y0) };
        let ypnu = if nl == 0 {
            (mu / x) * ymu - ymu1
        } else {
            ynu_minus - (nu / x) * ynu
        };
        if !ynu.is_finite() || !ypnu.is_finite() {
            return Err(Error::numerical(format!("Y_nu overflow, nu={nu}, x={x}")));
        }
        return Ok(BesselJy { j, jp, y: ynu, yp: ypnu });
    }
    if let Some(v) = asymptotic_jy(nu, x) {
        return Ok(v);
    }
    let (f, isign) = cf1(nu, x)?;
    let nl = ((nu - x + 1.5).floor().max(0.0)) as usize;
    let mu = nu - nl as f64;
    let seed = isign as f64;
    let mut jl = seed;
    let mut jpl = f * seed;
    let mut scales = 0u32;
    let mut k = nu;
    for _ in 0..nl {
        let jm1 = (k / x) * jl + jpl;
        let jpm1 = ((k - 1.0) / x) * jm1 - jl;
        jl = jm1;
        jpl = jpm1;
        k -= 1.0;
        if jl.abs() > BIG {
            jl *= BIG_INV;
            jpl *= BIG_INV;
            scales += 1;
        }
    }
    let fmu = jpl / jl;
    let (p, q) = cf2(mu, x)?;
    if q <= 0.0 {
        return Err(Error::numerical(format!("CF2 produced non-positive q, mu={mu}, x={x}")));
    }
    let w = 2.0 / (PI * x);
    let gamma_ratio = (p - fmu) / q;
    let jmu = (w / (q * (1.0 + gamma_ratio * gamma_ratio))).sqrt().copysign(jl);
    let ymu = gamma_ratio * jmu;
    let ypmu = q * jmu + p * ymu;
    let mut jnu = seed * (jmu / jl);
    for _ in 0..scales {
        jnu *= BIG_INV;
    }
    // Y upward from (Y_μ, Y_{μ+1})
    let mut y0 = ymu;
    let mut y1 = (mu / x) * ymu - ypmu;
    let mut t = mu + 1.0;
    for _ in 1..nl {
        let y2 = (2.0 * t / x) * y1 - y0;
        y0 = y1;
        y1 = y2;
        t += 1.0;
    }
    let (ynu, ypnu) = if nl == 0 {
        (ymu, ypmu)
    } else {
        (y1, y0 - (nu / x) * y1)
    };
    if !ynu.is_finite() || !ypnu.is_finite() {
        return Err(Error::numerical(format!("Y_nu overflow, nu={nu}, x={x}")));
    }
    Ok(BesselJy { j: jnu, jp: f * jnu, y: ynu, yp: ypnu })
}

// ---------------------------------------------------------------------------
// half-integer fast path (Riccati–Bessel)
// ---------------------------------------------------------------------------

/// If ν = l + 1/2 with integer l ≥ 0, return l.
fn half_integer_momentum(nu: f64) -> Option<u32> {
    let lf = nu - 0.5;
    if lf < -0.25 {
        return None;
    }
    let l = lf.round();
    if (lf - l).abs() < 1e-12 && l >= 0.0 {
        Some(l as u32)
    } else {
        None
    }
}

/// Riccati–Bessel S_l(x) = x j_l(x) and its derivative, by downward recurrence
/// normalized against (S_0, S_{-1}) = (sin x, cos x).
fn riccati_s(l: u32, x: f64) -> (f64, f64) {
    let l = l as usize;
    // start deep enough in the decaying zone that the unwanted solution is
    // suppressed below 1e-16 by the time the recurrence reaches order l
    let start = l.max(x.ceil() as usize) + 16 + (7.5 * (l as f64).max(x).cbrt()) as usize;
    let mut splus = 0.0f64; // S̃_{k+1}
    let mut s = 1e-30f64; // S̃_k
    let mut s_l = 0.0f64;
    let mut s_lm1 = 0.0f64;
    for k in (0..=start as i64).rev() {
        // S_{k-1} = ((2k+1)/x) S_k − S_{k+1}
        let sminus = ((2 * k + 1) as f64 / x) * s - splus;
        splus = s;
        s = sminus;
        if k as usize == l {
            s_l = splus; // value at order l, captured as we pass it
        }
        if l >= 1 && k as usize == l - 1 {
            s_lm1 = splus;
        }
        if s.abs() > BIG {
            s *= BIG_INV;
            splus *= BIG_INV;
            s_l *= BIG_INV;
            s_lm1 *= BIG_INV;
        }
    }
    // after the loop: s = S̃_{-1}, splus = S̃_0; rescale before squaring
    let (mut s0t, mut sm1t) = (splus, s);
    let norm = s0t.abs().max(sm1t.abs());
    if norm > 0.0 && norm.is_finite() {
        let inv = 1.0 / norm;
        s0t *= inv;
        sm1t *= inv;
        s_l *= inv;
        s_lm1 *= inv;
    }
    let (sx, cx) = x.sin_cos();
    let alpha = (sx * s0t + cx * sm1t) / (s0t * s0t + sm1t * sm1t);
    let sl = alpha * s_l;
    let slm1 = if l == 0 { alpha * sm1t } else { alpha * s_lm1 };
    let slp = slm1 - (l as f64 / x) * sl;
    (sl, slp)
}

/// J and J' at half-integer order via the Riccati–Bessel recurrence:
/// J_{l+1/2}(x) = √(2/(πx)) S_l(x), J'_{l+1/2}(x) = √(2/(πx)) (S_l'(x) − S_l(x)/(2x)).
fn j_jp_half_integer(l: u32, x: f64) -> (f64, f64) {
    let (s, sp) = riccati_s(l, x);
    let pref = (2.0 / (PI * x)).sqrt();
    (pref * s, pref * (sp - s / (2.0 * x)))
}

/// Y and Y' at half-integer order: upward recurrence from the closed forms
/// Y_{-1/2} = √(2/(πx)) sin x, Y_{1/2} = −√(2/(πx)) cos x (stable upward).
fn y_yp_half_integer(l: u32, x: f64) -> Result<(f64, f64)> {
    let pref = (2.0 / (PI * x)).sqrt();
    let (sx, cx) = x.sin_cos();
    let mut ym = pref * sx; // Y_{-1/2}
    let mut y = -pref * cx; // Y_{1/2}
    let mut t = 0.5;
    for _ in 0..l {
        let yn = (2.0 * t / x) * y - ym;
        ym = y;
        y = yn;
        t += 1.0;
    }
    let nu = l as f64 + 0.5;
    let yp = ym - (nu / x) * y;
    if !y.is_finite() || !yp.is_finite() {
        return Err(Error::numerical(format!("Y_nu overflow, nu={nu}, x={x}")));
    }
    Ok((y, yp))
}

// ---------------------------------------------------------------------------
// crate-internal entry points (hot paths, already-validated arguments)
// ---------------------------------------------------------------------------

/// J_ν(x), J_ν'(x) for ν ≥ 0, x > 0.
pub(crate) fn j_jp(nu: f64, x: f64) -> Result<(f64, f64)> {
    debug_assert!(nu >= 0.0 && x > 0.0);
    if let Some(l) = half_integer_momentum(nu) {
        return Ok(j_jp_half_integer(l, x));
    }
    j_jp_generic(nu, x)
}

/// (J, J', Y, Y') for ν ≥ 0, x > 0.
pub(crate) fn jy(nu: f64, x: f64) -> Result<BesselJy> {
    debug_assert!(nu >= 0.0 && x > 0.0);
    if let Some(l) = half_integer_momentum(nu) {
        let (j, jp) = j_jp_half_integer(l, x);
        let (y, yp) = y_yp_half_integer(l, x)?;
        return Ok(BesselJy { j, jp, y, yp });
    }
    jy_generic(nu, x)
}

// ---------------------------------------------------------------------------
// public operations
// ---------------------------------------------------------------------------

/// J_ν(x) for x ≥ 0 (x = 0 returns the series limit: 1 for ν = 0, 0 for ν > 0).
pub fn bessel_j(nu: Order, x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::domain(format!("bessel_j needs x ≥ 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(if nu.value() == 0.0 { 1.0 } else { 0.0 });
    }
    Ok(j_jp(nu.value(), x)?.0)
}

/// J_ν'(x) for x > 0.
pub fn bessel_j_prime(nu: Order, x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::domain(format!("bessel_j_prime needs x > 0, got {x}")));
    }
    Ok(j_jp(nu.value(), x)?.1)
}

/// Hankel function of the first kind, H^(1)_ν(x) = J_ν(x) + i Y_ν(x), x > 0.
pub fn hankel1(nu: Order, x: f64) -> Result<Complex64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::domain(format!("hankel1 needs x > 0, got {x}")));
    }
    let v = jy(nu.value(), x)?;
    Ok(Complex64::new(v.j, v.y))
}

/// H^(1)_ν(x) and its derivative, both as complex values.
pub(crate) fn hankel1_with_derivative(nu: f64, x: f64) -> Result<(Complex64, Complex64)> {
    let v = jy(nu, x)?;
    Ok((Complex64::new(v.j, v.y), Complex64::new(v.jp, v.yp)))
}

/// The reduced radial function λ^{1−n/2} J_{l+n/2−1}(λ), bounded as λ → 0+.
pub fn reduced_j(n: u32, l: u32, lambda: f64) -> Result<f64> {
    if !lambda.is_finite() || lambda <= 0.0 {
        return Err(Error::domain(format!("reduced_j needs λ > 0, got {lambda}")));
    }
    let nu = Order::for_momentum(n, l)?;
    let j = j_jp(nu.value(), lambda)?.0;
    Ok(lambda.powf(1.0 - n as f64 / 2.0) * j)
}

/// Table of the positive zeros of J_ν on (0, upper].
#[derive(Debug, Clone, Serialize)]
pub struct ZeroTable {
    nu: Order,
    zeros: Vec<f64>,
    upper: f64,
}

impl ZeroTable {
    pub fn nu(&self) -> Order {
        self.nu
    }
    pub fn zeros(&self) -> &[f64] {
        &self.zeros
    }
    pub fn upper(&self) -> f64 {
        self.upper
    }
    /// Number of tabulated zeros ≤ r.
    pub fn count_leq(&self, r: f64) -> usize {
        self.zeros.partition_point(|&z| z <= r)
    }
}

/// McMahon expansion for the k-th zero: β − (4ν²−1)/(8β) with β = (k + ν/2 − 1/4)π.
pub(crate) fn mcmahon_zero(nu: f64, k: usize) -> f64 {
    let beta = (k as f64 + 0.5 * nu - 0.25) * PI;
    let m = 4.0 * nu * nu;
    beta - (m - 1.0) / (8.0 * beta)
}

/// All positive zeros of J_ν in (0, upper], refined until
/// |J_ν(z)| ≤ 1e−12 (1 + |z J_ν'(z)|).
pub fn bessel_zeros(nu: Order, upper: f64) -> Result<ZeroTable> {
    if !upper.is_finite() || upper <= 0.0 {
        return Err(Error::domain(format!("bessel_zeros needs upper > 0, got {upper}")));
    }
    let v = nu.value();
    let zeros = scan_zeros(v, upper)?;
    Ok(ZeroTable { nu, zeros, upper })
}

fn scan_zeros(nu: f64, upper: f64) -> Result<Vec<f64>> {
    // J_ν > 0 on (0, j_{ν,1}); start strictly below the first zero.
    let start = if nu > 0.0 {
        (nu + 1.8557 * nu.cbrt() - 1.0).max(0.05)
    } else {
        0.05
    };
    let mut zeros = Vec::new();
    if start >= upper {
        // start sits below j_{ν,1}, so (0, upper] holds no zeros
        return Ok(zeros);
    }
    let step = 1.9; // below the minimal zero gap (≈ 3.11 over all ν ≥ 0)
    let mut a = start;
    let mut fa = j_jp(nu, a)?.0;
    while a < upper {
        let b = (a + step).min(upper);
        let fb = j_jp(nu, b)?.0;
        if fa == 0.0 {
            // landed exactly on a zero; perturb
            a += 1e-9 * (1.0 + a);
            fa = j_jp(nu, a)?.0;
            continue;
        }
        if fa.signum() != fb.signum() || fb == 0.0 {
            // McMahon guess for the next zero index seeds Newton inside the bracket
            let guess = mcmahon_zero(nu, zeros.len() + 1).clamp(a, b);
            let z = rootfind::newton_bisect(
                |x| {
                    let (j, jp) = j_jp(nu, x).unwrap_or((f64::NAN, f64::NAN));
                    (j, jp)
                },
                a,
                b,
                guess,
                1e-15,
            );
            let (jz, jpz) = j_jp(nu, z)?;
            if jz.abs() > 1e-12 * (1.0 + (z * jpz).abs()) {
                return Err(Error::numerical(format!(
                    "zero refinement stalled at nu={nu}, z={z}, |J|={:.3e}",
                    jz.abs()
                )));
            }
            if z <= upper {
                zeros.push(z);
            }
        }
        a = b;
        fa = fb;
    }
    Ok(zeros)
}

//! Log-gamma via the Lanczos approximation (g = 607/128, 15 terms).

const LANCZOS_G: f64 = 607.0 / 128.0;

#[allow(clippy::excessive_precision)] // published constants kept verbatim
const LANCZOS_COEF: [f64; 15] = [
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    3.3994649984811888699e-05,
    4.6523628927048575665e-05,
    -9.8374475304879564677e-05,
    1.5808870322491248884e-04,
    -2.1026444172410488319e-04,
    2.1743961811521264320e-04,
    -1.6431810653676389022e-04,
    8.4418223983852743293e-05,
    -2.6190838401581408670e-05,
    3.6899182659531622704e-06,
];

/// ln Γ(x) for x > 0.
pub(crate) fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0, "ln_gamma needs x > 0, got {x}");
    let mut sum = LANCZOS_COEF[0];
    for (k, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        sum += c / (x + k as f64 - 1.0);
    }
    let t = x + LANCZOS_G - 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x - 0.5) * t.ln() - t + sum.ln()
}

/// Γ(x) for x > 0 (overflows to +inf past x ≈ 171.6).
pub(crate) fn gamma(x: f64) -> f64 {
    ln_gamma(x).exp()
}

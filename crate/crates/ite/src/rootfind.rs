//! Bracketed scalar root refinement: Newton steps with bisection fallback.

/// Refine a root of `f` inside the bracket `[a, b]`, where `f(a)` and `f(b)`
/// have opposite signs. `fdf` returns `(f(x), f'(x))`. Newton steps are taken
/// from `x0` while they stay inside the current bracket; any step that exits
/// the bracket falls back to bisection, so convergence is guaranteed.
///
/// Stops when the bracket width or the Newton update drops below
/// `tol * (1 + |x|)`.
pub(crate) fn newton_bisect(
    fdf: impl Fn(f64) -> (f64, f64),
    mut a: f64,
    mut b: f64,
    x0: f64,
    tol: f64,
) -> f64 {
    debug_assert!(a < b);
    let (mut fa, _) = fdf(a);
    if fa == 0.0 {
        return a;
    }
    let mut x = x0.clamp(a, b);
    for _ in 0..200 {
        let (fx, dfx) = fdf(x);
        if fx == 0.0 {
            return x;
        }
        // shrink the bracket
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
        } else {
            b = x;
        }
        if b - a <= tol * (1.0 + x.abs()) {
            return 0.5 * (a + b);
        }
        let newton = x - fx / dfx;
        x = if dfx != 0.0 && newton > a && newton < b {
            if (newton - x).abs() <= tol * (1.0 + x.abs()) {
                return newton;
            }
            newton
        } else {
            0.5 * (a + b)
        };
    }
    0.5 * (a + b)
}

/// Bisection on a plain function; used by test oracles and scan refinement.
pub(crate) fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let mut fa = f(a);
    if fa == 0.0 {
        return a;
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 || b - a <= tol * (1.0 + m.abs()) {
            return m;
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Golden-section minimizer of `f` on `[a, b]`; returns `(x_min, f(x_min))`.
/// Used as a rescue when a bracketed root hides a numerically fragile sign
/// change (near-triple configurations).
pub(crate) fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > tol * (1.0 + a.abs()) {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn newton_bisect_cosine() {
        let root = newton_bisect(|x| (x.cos(), -x.sin()), 1.0, 2.0, 1.5, 1e-14);
        assert!((root - std::f64::consts::FRAC_PI_2).abs() < 1e-13);
    }

    #[test]
    fn newton_bisect_survives_bad_derivative() {
        // derivative reported as zero everywhere: must fall back to bisection
        let root = newton_bisect(|x| (x * x - 2.0, 0.0), 0.0, 2.0, 0.1, 1e-13);
        assert!((root - std::f64::consts::SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn golden_min_parabola() {
        let (x, fx) = golden_min(|x| (x - 0.3) * (x - 0.3), -1.0, 1.0, 1e-12);
        assert!((x - 0.3).abs() < 1e-6);
        assert!(fx < 1e-12);
    }
}

//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured numbers (run with `--nocapture` to see them).

use ite::bessel::{self, Order};
use ite::complex_1d::{self, Rectangle};
use ite::nd::{self, DimensionConfig};
use ite::one_d;
use ite::scattering;
use ite::types::{Contrast, CountMode, RealIte, RootKind};
use std::f64::consts::{PI, SQRT_2};
use std::time::Instant;

fn pass(name: &str, t: Instant, detail: String) {
    println!("criterion {name} PASS ({:.2} s): {detail}", t.elapsed().as_secs_f64());
}

/// deterministic uniform sampler
struct Lcg(u64);
impl Lcg {
    fn next(&mut self) -> f64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (self.0 >> 11) as f64 / (1u64 << 53) as f64
    }
    fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next()
    }
}

#[test]
fn criterion_01_closed_form_gamma_two() {
    let t = Instant::now();
    let g = Contrast::new(2.0).unwrap();
    let mut worst = 0.0f64;
    let mut lam = 0.0;
    while lam <= 50.0 {
        let err = (one_d::f_1d(&g, lam) + 2.0 * lam.sin().powi(3)).abs();
        worst = worst.max(err);
        lam += 1e-2;
    }
    assert!(worst <= 1e-12, "max |F + 2 sin³λ| = {worst:e}");
    pass("01 closed form γ=2", t, format!("max deviation {worst:.2e}"));
}

#[test]
fn criterion_02_closed_form_gamma_three() {
    let t = Instant::now();
    let g = Contrast::new(3.0).unwrap();
    let mut worst = 0.0f64;
    let mut lam = 0.0;
    while lam <= 50.0 {
        let err = (one_d::f_1d(&g, lam) + 8.0 * lam.cos() * lam.sin().powi(3)).abs();
        worst = worst.max(err);
        lam += 1e-2;
    }
    assert!(worst <= 1e-12, "max |F + 8 cos λ sin³λ| = {worst:e}");
    pass("02 closed form γ=3", t, format!("max deviation {worst:.2e}"));
}

#[test]
fn criterion_03_derivative_formulas() {
    let t = Instant::now();
    let mut rng = Lcg(0x03);
    let h = 1e-5;
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let gv = loop {
            let v = rng.range(0.15, 3.5);
            if (v - 1.0).abs() > 0.05 {
                break v;
            }
        };
        let g = Contrast::new(gv).unwrap();
        let x = rng.range(0.1, 40.0);
        let d = |u: f64| one_d::f_1d_derivatives(&g, u);
        let (_, f1, f2, f3) = d(x);
        // chained central differences at h = 1e-5: each closed form validates
        // the next derivative
        let fd1 = (one_d::f_1d(&g, x + h) - one_d::f_1d(&g, x - h)) / (2.0 * h);
        let fd2 = (d(x + h).1 - d(x - h).1) / (2.0 * h);
        let fd3 = (d(x + h).2 - d(x - h).2) / (2.0 * h);
        for (fd, exact) in [(fd1, f1), (fd2, f2), (fd3, f3)] {
            let rel = (fd - exact).abs() / (1.0 + exact.abs());
            worst = worst.max(rel);
            assert!(rel <= 1e-6, "γ={gv}, λ={x}: fd {fd} vs {exact}");
        }
    }
    pass("03 derivative formulas", t, format!("1000 samples, worst rel dev {worst:.2e}"));
}

fn prefix_counts(roots: &[RealIte], grid: &[f64], mode: CountMode) -> Vec<u64> {
    grid.iter()
        .map(|&r| {
            let slack = 1e-9 * (1.0 + r);
            let upto: Vec<_> =
                roots.iter().filter(|rt| rt.lambda <= r + slack).cloned().collect();
            one_d::count_roots(&upto, mode)
        })
        .collect()
}

#[test]
fn criterion_04_one_d_geometric_weyl_law() {
    let t = Instant::now();
    let grid: Vec<f64> = (1..=20).map(|k| 50.0 * k as f64).collect();
    for gv in [SQRT_2, 0.375, 5.0 / 3.0] {
        let g = Contrast::new(gv).unwrap();
        let roots = one_d::enumerate_real_ites_1d(&g, 1000.0).unwrap();
        let counts = prefix_counts(&roots, &grid, CountMode::Geometric);
        let devs: Vec<f64> = grid
            .iter()
            .zip(&counts)
            .map(|(&r, &n)| (n as f64 - (1.0 - gv).abs() * r / PI).abs())
            .collect();
        let max_dev = devs.iter().cloned().fold(0.0f64, f64::max);
        assert!(max_dev <= 4.0, "γ={gv}: max |N − |1−γ|r/π| = {max_dev}");
        let q = grid.len() / 4;
        let first_q = devs[..q].iter().cloned().fold(0.0f64, f64::max);
        let last_q = devs[devs.len() - q..].iter().cloned().fold(0.0f64, f64::max);
        assert!(last_q <= first_q + 1.0, "γ={gv}: trend {first_q} → {last_q}");
    }
    pass("04 1D geometric Weyl law", t, "γ ∈ {√2, 3/8, 5/3}, deviations ≤ 4, no trend".into());
}

#[test]
fn criterion_05_one_d_algebraic_law_rational() {
    let t = Instant::now();
    let g = Contrast::from_ratio(3, 8).unwrap();
    let grid: Vec<f64> = (1..=20).map(|k| 50.0 * k as f64).collect();
    let roots = one_d::enumerate_real_ites_1d(&g, 1000.0).unwrap();
    let counts = prefix_counts(&roots, &grid, CountMode::Algebraic);
    let mut max_dev = 0.0f64;
    for (&r, &n) in grid.iter().zip(&counts) {
        let pred = (5.0 / 8.0 + 2.0 / 8.0) * r / PI;
        max_dev = max_dev.max((n as f64 - pred).abs());
    }
    assert!(max_dev <= 4.0, "max |N_alg − (5/8 + 2/8) r/π| = {max_dev}");
    pass("05 1D algebraic law γ=3/8", t, format!("max deviation {max_dev:.3}"));
}

/// Dense-scan oracle with pole-adjacent refinement: sign changes of F at step
/// 1e-3, bisected, then snapped onto the π lattice when both oscillatory
/// factors vanish there (triple roots bisected through noise would otherwise
/// carry ~1e-6 location error).
fn dense_scan_oracle(g: &Contrast, r: f64) -> Vec<f64> {
    let gv = g.value();
    let step = 1e-3;
    let mut zs = Vec::new();
    let mut a = step / 2.0;
    let mut fa = one_d::f_1d(g, a);
    while a < r {
        let b = (a + step).min(r);
        let fb = one_d::f_1d(g, b);
        if fa != 0.0 && fb != 0.0 && fa.signum() != fb.signum() {
            let mut z = bisect(|x| one_d::f_1d(g, x), a, b);
            let k = (z / PI).round();
            if k >= 1.0 && (z - k * PI).abs() < 1e-4 {
                let tg = gv * k;
                if (tg - tg.round()).abs() < 1e-7 {
                    z = k * PI;
                }
            }
            zs.push(z);
        }
        a = b;
        fa = fb;
    }
    zs
}

fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let mut fa = f(a);
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 || b - a < 1e-14 * (1.0 + m.abs()) {
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

#[test]
fn criterion_06_one_d_oracle_equivalence() {
    let t = Instant::now();
    let contrasts = [
        Contrast::new(SQRT_2).unwrap(),
        Contrast::from_ratio(2, 1).unwrap(),
        Contrast::from_ratio(3, 1).unwrap(),
        Contrast::from_ratio(3, 8).unwrap(),
        Contrast::from_ratio(5, 3).unwrap(),
    ];
    let mut total = 0usize;
    for g in &contrasts {
        let roots = one_d::enumerate_real_ites_1d(g, 200.0).unwrap();
        let oracle = dense_scan_oracle(g, 200.0);
        assert_eq!(
            roots.len(),
            oracle.len(),
            "γ={}: {} enumerated vs {} scanned",
            g.value(),
            roots.len(),
            oracle.len()
        );
        for (rt, z) in roots.iter().zip(&oracle) {
            assert!(
                (rt.lambda - z).abs() <= 1e-9,
                "γ={}: {} vs oracle {z}",
                g.value(),
                rt.lambda
            );
        }
        total += roots.len();
    }
    pass("06 1D oracle equivalence", t, format!("5 contrasts, {total} roots matched exactly"));
}

#[test]
fn criterion_07_complex_density() {
    let t = Instant::now();
    let g = Contrast::new(SQRT_2).unwrap();
    for (r, tol) in [(200.0, 0.15), (400.0, 0.10)] {
        let zeros = complex_1d::enumerate_complex_ites(&g, r).unwrap();
        let total: u64 = zeros.iter().map(|z| z.mult as u64).sum();
        let pred = (1.0 + SQRT_2) * r / PI;
        let rel = (total as f64 - pred).abs() / pred;
        assert!(rel <= tol, "R={r}: count {total} vs prediction {pred:.1} (rel {rel:.3})");
        println!("  R={r}: {total} zeros (with multiplicity) vs (1+γ)R/π = {pred:.1}");
    }
    pass("07 complex density γ=√2", t, "within 15% at R=200 and 10% at R=400".into());
}

#[test]
fn criterion_08_strip_confinement() {
    let t = Instant::now();
    for gv in [SQRT_2, 0.375] {
        let g = Contrast::new(gv).unwrap();
        let c = complex_1d::strip_bound(&g).unwrap();
        let mut rng = Lcg(0x08);
        for k in 0..20 {
            let lo = rng.range(0.5, 180.0);
            let w = rng.range(3.0, 18.0);
            let y0 = c + rng.range(0.05, 3.0);
            let h = rng.range(0.5, 4.0);
            let rect = if k % 2 == 0 {
                Rectangle::new(lo, lo + w, y0, y0 + h).unwrap()
            } else {
                Rectangle::new(lo, lo + w, -y0 - h, -y0).unwrap()
            };
            let wnd = complex_1d::winding_count(&g, &rect).unwrap();
            assert_eq!(wnd, 0, "γ={gv}: rectangle {rect:?} above strip holds {wnd} zeros");
        }
    }
    pass("08 strip confinement", t, "40 rectangles outside the strip, all empty".into());
}

#[test]
fn criterion_09_nd_reduction_check() {
    let t = Instant::now();
    for m in [0.25, 4.0] {
        let cfg = DimensionConfig::new(3, m).unwrap();
        let g = Contrast::new(m.sqrt()).unwrap();
        let spectrum = nd::enumerate_ites_for_nu(&cfg, 0, 100.0).unwrap();
        let one = one_d::enumerate_real_ites_1d(&g, 100.0).unwrap();
        assert_eq!(spectrum.roots.len(), one.len(), "m={m}");
        for (a, b) in spectrum.roots.iter().zip(&one) {
            assert!(
                (a.lambda - b.lambda).abs() <= 1e-9,
                "m={m}: {} vs {}",
                a.lambda,
                b.lambda
            );
        }
    }
    pass("09 n-D reduction (n=3, l=0)", t, "root lists agree to 1e-9 for γ ∈ {1/2, 2}".into());
}

#[test]
fn criterion_10_nd_derivative_identity() {
    let t = Instant::now();
    let mut rng = Lcg(0x10);
    let h = 3e-4;
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let gv = loop {
            let v = rng.range(0.4, 2.2);
            if (v - 1.0).abs() > 0.05 {
                break v;
            }
        };
        let g = Contrast::new(gv).unwrap();
        let v = rng.range(0.0, 30.0);
        let nu = Order::new(v).unwrap();
        let x = rng.range(v / 2.0 + 2.0, 100.0f64.max(v / 2.0 + 3.0));
        let f = |u: f64| nd::f_nu(&g, nu, u).unwrap();
        // five-point first derivative of F
        let fp_fd = (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h))
            / (12.0 * h);
        let (j, jp) = (bessel::bessel_j(nu, x).unwrap(), bessel::bessel_j_prime(nu, x).unwrap());
        let (jg, jgp) = (
            bessel::bessel_j(nu, gv * x).unwrap(),
            bessel::bessel_j_prime(nu, gv * x).unwrap(),
        );
        let fx = gv * j * jgp - jg * jp;
        let resid = fp_fd + fx / x - (1.0 - gv * gv) * j * jg;
        let scale = (j.abs() + jp.abs()) * (jg.abs() + jgp.abs()) * (1.0 + gv * gv);
        let rel = resid.abs() / scale.max(1e-290);
        worst = worst.max(rel);
        assert!(rel <= 1e-9, "γ={gv}, ν={v}, λ={x}: residual {resid:e} vs scale {scale:e}");
    }
    pass("10 n-D derivative identity", t, format!("1000 samples, worst scaled residual {worst:.2e}"));
}

#[test]
fn criterion_11_zero_ratio_triple_root() {
    let t = Instant::now();
    let nu = Order::new(5.5).unwrap();
    let zt = bessel::bessel_zeros(nu, 30.0).unwrap();
    let (j1, j3) = (zt.zeros()[0], zt.zeros()[2]);
    let g = Contrast::new(j1 / j3).unwrap();
    let roots = nd::enumerate_order_roots(&g, nu, 25.0).unwrap();
    let triples: Vec<_> = roots.iter().filter(|r| r.1 == RootKind::CommonZero).collect();
    assert_eq!(triples.len(), 1, "expected exactly one triple root");
    let lam0 = triples[0].0;
    assert!((lam0 - j3).abs() < 1e-9 && (lam0 - 16.35).abs() < 0.01, "triple at {lam0}");
    // triple-root certificate: F, F', F'' all vanish, F''' does not
    let (f, f1, f2, f3) = nd::f_nu_derivatives(&g, nu, lam0).unwrap();
    let scale = {
        let jp1 = bessel::bessel_j_prime(nu, lam0).unwrap();
        let jp2 = bessel::bessel_j_prime(nu, g.value() * lam0).unwrap();
        (jp1 * jp2).abs()
    };
    assert!(f.abs() <= 1e-6 * scale && f1.abs() <= 1e-6 * scale && f2.abs() <= 1e-6 * scale);
    let f3_expected = 2.0 * g.value() * (1.0 - g.value() * g.value()) * scale;
    assert!(f3.abs() > 0.5 * f3_expected.abs(), "F''' = {f3} vs expected {f3_expected}");
    // neighbors are simple
    for (lam, kind) in &roots {
        if (lam - lam0).abs() > 1e-6 {
            assert_eq!(*kind, RootKind::Intersection);
        }
    }
    pass(
        "11 zero-ratio triple root",
        t,
        format!("common zero at λ = {lam0:.4} (≈ 16.35), certificate holds, {} neighbors simple",
                roots.len() - 1),
    );
}

#[test]
fn criterion_12_weyl_fit_n2_and_14_first_equality() {
    let t = Instant::now();
    let grid: Vec<f64> = (1..=24).map(|k| 12.5 * k as f64).collect();
    for m in [0.25, 4.0] {
        let cfg = DimensionConfig::new(2, m).unwrap();
        let rep = nd::weyl_report(&cfg, &grid).unwrap();
        let target = nd::weyl_coefficient(&cfg);
        let rel = (rep.fit_coefficient - target).abs() / target;
        assert!(
            rel <= 0.10,
            "m={m}: fit {} vs {} (rel {rel:.3})",
            rep.fit_coefficient,
            target
        );
        println!("  n=2, m={m}: fit c = {:.5}, target {target:.5} (rel {rel:.4})", rep.fit_coefficient);

        // criterion 14: |N(r) − |N_1 − N_γ|| / r^{n−1} bounded, no growth trend
        let diff = rep.dirichlet_diff.as_ref().unwrap();
        let vals: Vec<f64> = grid
            .iter()
            .enumerate()
            .map(|(i, &r)| (rep.counts[i] as f64 - diff[i] as f64).abs() / r)
            .collect();
        let q = vals.len() / 4;
        let first_q = vals[..q].iter().cloned().fold(0.0f64, f64::max);
        let last_q = vals[vals.len() - q..].iter().cloned().fold(0.0f64, f64::max);
        assert!(
            last_q <= first_q + 1.0,
            "m={m}: first-equality residual grows: {first_q} → {last_q}"
        );
        println!("  n=2, m={m}: first-equality residual/r: first-q max {first_q:.3}, last-q max {last_q:.3}");
    }
    pass("12+14 Weyl fit n=2 and first equality", t, "fits within 10%, residual bounded".into());
}

#[test]
fn criterion_13_weyl_fit_n3() {
    let t = Instant::now();
    let grid: Vec<f64> = (1..=24).map(|k| 6.25 * k as f64).collect();
    let cfg = DimensionConfig::new(3, 4.0).unwrap();
    let rep = nd::weyl_report(&cfg, &grid).unwrap();
    let target = 14.0 / (9.0 * PI);
    let rel = (rep.fit_coefficient - target).abs() / target;
    assert!(rel <= 0.12, "fit {} vs {target} (rel {rel:.3})", rep.fit_coefficient);
    pass(
        "13 Weyl fit n=3",
        t,
        format!("fit c = {:.5} vs 14/(9π) = {target:.5} (rel {rel:.4})", rep.fit_coefficient),
    );
}

#[test]
fn criterion_15_scattering_coincidence_and_unitarity() {
    let t = Instant::now();
    for (n, m) in [(3u32, 4.0), (2u32, 0.25)] {
        let cfg = DimensionConfig::new(n, m).unwrap();
        let rep = scattering::verify_ite_te_coincidence(&cfg, 60.0).unwrap();
        assert!(rep.roots_checked > 0);
        assert_eq!(rep.mismatches, 0, "n={n}, m={m}: {} mismatches", rep.mismatches);
        assert_eq!(rep.scan_zeros, rep.roots_checked, "n={n}, m={m}");
        println!("  n={n}, m={m}: {} eigenvalues, zero mismatches", rep.roots_checked);
    }
    // unitarity on 10³ real samples
    let cfg = DimensionConfig::new(3, 4.0).unwrap();
    let mut rng = Lcg(0x15);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let l = (rng.next() * 31.0) as u32;
        let nu = l as f64 + 0.5;
        let lambda = rng.range(nu.max(1.0) * 0.7 + 0.5, 80.0f64.max(nu + 10.0));
        let s = scattering::s_matrix_entry(&cfg, l, lambda).unwrap();
        worst = worst.max((s.norm() - 1.0).abs());
    }
    assert!(worst <= 1e-10, "max ||S| − 1| = {worst:e}");
    pass("15 scattering coincidence + unitarity", t, format!("max ||S|−1| = {worst:.2e}"));
}

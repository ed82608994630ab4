//! Complex Gamma and upper incomplete Gamma functions.

use num_complex::Complex64;
use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

pub fn gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let s = (z * PI).sin();
        return Complex64::new(PI, 0.0) / (s * gamma(Complex64::new(1.0, 0.0) - z));
    }
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        x += *c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * ((z + 0.5) * t.ln() - t).exp() * x
}

/// `γ(a, x) = ∫_0^x e^{-u} u^{a-1} du` by its power series.
fn lower_series(a: Complex64, x: f64) -> Complex64 {
    let mut term = Complex64::new(1.0, 0.0) / a;
    let mut sum = term;
    let mut n = 1.0;
    loop {
        term *= x / (a + n);
        sum += term;
        if term.norm() < 1e-17 * sum.norm() || n > 2000.0 {
            break;
        }
        n += 1.0;
    }
    sum * (a * x.ln() - x).exp()
}

/// Continued fraction for `Γ(a, x)`, valid for x > |a| + 1 (modified Lentz).
fn upper_cf(a: Complex64, x: f64) -> Complex64 {
    const TINY: f64 = 1e-300;
    let one = Complex64::new(1.0, 0.0);
    let mut b = Complex64::new(x + 1.0, 0.0) - a;
    let mut c = Complex64::new(1.0 / TINY, 0.0);
    let mut d = one / b;
    let mut h = d;
    for i in 1..5000 {
        let i = i as f64;
        let an = -(Complex64::new(i, 0.0) - a) * i;
        b += 2.0;
        d = an * d + b;
        if d.norm() < TINY {
            d = Complex64::new(TINY, 0.0);
        }
        c = b + an / c;
        if c.norm() < TINY {
            c = Complex64::new(TINY, 0.0);
        }
        d = one / d;
        let del = d * c;
        h *= del;
        if (del - one).norm() < 1e-16 {
            break;
        }
    }
    (a * x.ln() - x).exp() * h
}

/// Exponential integral `E1(x) = Γ(0, x)`, x > 0.
pub fn exp_integral_e1(x: f64) -> f64 {
    if x > 1.0 {
        return upper_cf(Complex64::new(0.0, 0.0), x).re;
    }
    let mut sum = 0.0;
    let mut term = 1.0;
    for k in 1..200 {
        let k = k as f64;
        term *= -x / k;
        let add = term / k;
        sum += add;
        if add.abs() < 1e-18 {
            break;
        }
    }
    -EULER_GAMMA - x.ln() - sum
}

/// Upper incomplete Gamma `Γ(a, x)` for complex a and real x > 0.
pub fn upper_gamma(a: Complex64, x: f64) -> Complex64 {
    debug_assert!(x > 0.0);
    if x > a.norm() + 1.0 {
        return upper_cf(a, x);
    }
    if a.re >= 0.5 {
        return gamma(a) - lower_series(a, x);
    }
    // recur down from a + m with Re(a + m) >= 0.5
    let m = (0.5 - a.re).ceil() as i64;
    let top = a + m as f64;
    let mut g = if x > top.norm() + 1.0 {
        upper_cf(top, x)
    } else {
        gamma(top) - lower_series(top, x)
    };
    for j in (0..m).rev() {
        let b = a + j as f64;
        if b.norm() < 1e-14 {
            g = Complex64::new(exp_integral_e1(x), 0.0);
        } else {
            g = (g - (b * x.ln() - x).exp()) / b;
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Adaptive Simpson on u in [x, x + 60] of e^{-u} u^{a-1}.
    fn quad_upper(a: Complex64, x: f64) -> Complex64 {
        let f = |u: f64| (-(u) + (a - 1.0) * u.ln()).exp();
        let n = 200_000;
        let hi = x + 80.0;
        let h = (hi - x) / n as f64;
        let mut s = f(x) + f(hi);
        for i in 1..n {
            let u = x + i as f64 * h;
            s += f(u) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        s * h / 3.0
    }

    #[test]
    fn gamma_known_values() {
        assert!((gamma(c(0.5, 0.0)) - c(PI.sqrt(), 0.0)).norm() < 1e-14);
        assert!((gamma(c(5.0, 0.0)) - c(24.0, 0.0)).norm() < 1e-11);
        assert!((gamma(c(-0.5, 0.0)) - c(-2.0 * PI.sqrt(), 0.0)).norm() < 1e-13);
        // |Γ(1/2 + iy)|² = π / cosh(πy)
        let y = 1.3;
        let g = gamma(c(0.5, y));
        assert!((g.norm_sqr() - PI / (PI * y).cosh()).abs() < 1e-13);
        // Γ(z+1) = zΓ(z)
        let z = c(2.3, -0.7);
        assert!((gamma(z + 1.0) - z * gamma(z)).norm() < 1e-12 * gamma(z + 1.0).norm());
    }

    #[test]
    fn incomplete_known_values() {
        for x in [0.1, 0.7, 1.5, 3.0, 12.0] {
            assert!((upper_gamma(c(1.0, 0.0), x).re - (-x).exp()).abs() < 1e-14);
        }
        assert!((exp_integral_e1(1.0) - 0.219_383_934_395_520_3).abs() < 1e-14);
        assert!((exp_integral_e1(0.1) - 1.822_923_958_419_390_7).abs() < 1e-13);
        assert!((exp_integral_e1(2.5) - 0.024_914_917_870_269_7).abs() < 1e-14);
    }

    #[test]
    fn incomplete_matches_quadrature() {
        let pts = [
            (c(0.3, 0.2), 0.5),
            (c(1.7, -0.4), 2.0),
            (c(-1.2, 0.3), 0.8),
            (c(-2.6, -1.1), 3.1),
            (c(4.5, 0.0), 1.2),
            (c(0.5, 2.0), 6.0),
            (c(-3.0, 0.0), 1.7),
        ];
        for (a, x) in pts {
            let v = upper_gamma(a, x);
            let q = quad_upper(a, x);
            assert!((v - q).norm() < 1e-10 * q.norm().max(1e-3), "a={a} x={x}: {v} vs {q}");
        }
    }

    #[test]
    fn recurrence_across_branches() {
        for &(a, x) in &[(c(0.2, 0.1), 1.05), (c(-0.7, 0.5), 2.4), (c(2.2, 1.0), 3.3)] {
            let lhs = upper_gamma(a + 1.0, x);
            let rhs = a * upper_gamma(a, x) + (a * x.ln() - x).exp();
            assert!((lhs - rhs).norm() < 1e-12 * lhs.norm().max(1.0));
        }
    }
}

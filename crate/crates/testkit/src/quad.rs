//! Double-exponential (tanh-sinh) quadrature.

use std::f64::consts::FRAC_PI_2;

/// Integrate `f` over `(0, 1)`, refining the step until two successive
/// levels agree to `tol` (relative) or 12 levels have been used. Endpoint
/// singularities of integrable type are handled; `f` is never evaluated at
/// 0 or 1 exactly.
pub fn tanh_sinh_unit(f: impl Fn(f64) -> f64, tol: f64) -> f64 {
    tanh_sinh_split(|x, _| f(x), tol)
}

/// As [`tanh_sinh_unit`], with `f` receiving both `x` and `1 - x`, the
/// latter accurate near 1.
pub fn tanh_sinh_split(f: impl Fn(f64, f64) -> f64, tol: f64) -> f64 {
    // x = (1 + tanh(pi/2 sinh t)) / 2; the weight and 1 - x are computed
    // from exp to keep precision at both ends.
    let node = |t: f64| -> (f64, f64, f64) {
        let s = FRAC_PI_2 * t.sinh();
        let c = FRAC_PI_2 * t.cosh();
        let e = (-2.0 * s.abs()).exp();
        // distance of x from the nearer endpoint
        let near = e / (1.0 + e);
        let w = c * 2.0 * e / ((1.0 + e) * (1.0 + e));
        if s >= 0.0 {
            (1.0 - near, near, w)
        } else {
            (near, 1.0 - near, w)
        }
    };
    let eval = |t: f64| -> f64 {
        let (x, one_minus, w) = node(t);
        if x <= 0.0 || one_minus <= 0.0 || w == 0.0 {
            return 0.0;
        }
        let v = f(x, one_minus) * w;
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    let t_max = 6.5;
    let mut h = 0.5;
    let mut sum = eval(0.0);
    let mut k = 1;
    while (k as f64) * h <= t_max {
        let t = k as f64 * h;
        sum += eval(t) + eval(-t);
        k += 1;
    }
    let mut estimate = sum * h;
    for _ in 0..12 {
        h /= 2.0;
        let mut k = 1;
        while (k as f64) * h <= t_max {
            let t = k as f64 * h;
            sum += eval(t) + eval(-t);
            k += 2;
        }
        let next = sum * h;
        if (next - estimate).abs() <= tol * next.abs().max(1e-300) {
            return next;
        }
        estimate = next;
    }
    estimate
}

/// Integrate `f` over `[a, b]`.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let w = b - a;
    tanh_sinh_unit(|u| f(a + w * u) * w, tol)
}

/// Integrate `g(z)` over `z in (0, inf)` using `z = scale * t / (1 - t)`.
/// `scale` should be of the order of the bulk of the mass.
pub fn integrate_half_line(g: impl Fn(f64) -> f64, scale: f64, tol: f64) -> f64 {
    tanh_sinh_split(
        |t, one_minus| {
            let z = scale * t / one_minus;
            g(z) * scale / (one_minus * one_minus)
        },
        tol,
    )
}

/// `F(x_k) = int_lower^{x_k} f` at each of the sorted points `xs`, built by
/// integrating between consecutive points. Every `break` point (a jump or a
/// kink of `f`) inside an interval splits it.
pub fn cumulative(
    f: impl Fn(f64) -> f64,
    lower: f64,
    xs: &[f64],
    breaks: &[f64],
    tol: f64,
) -> Vec<f64> {
    let mut out = Vec::with_capacity(xs.len());
    let mut acc = 0.0;
    let mut prev = lower;
    for &x in xs {
        assert!(
            x >= prev,
            "points must be sorted and not below the lower limit"
        );
        let mut a = prev;
        for &b in breaks.iter().filter(|&&b| b > prev && b < x) {
            acc += integrate(&f, a, b, tol);
            a = b;
        }
        if x > a {
            acc += integrate(&f, a, x, tol);
        }
        out.push(acc);
        prev = x;
    }
    out
}

//! Overflow- and cancellation-safe evaluation of the hyperbolic ratios that
//! appear in eigenfunction profiles and norms. Arguments can reach a few
//! hundred for large eigenvalues, where naive `cosh`/`sinh` quotients lose
//! accuracy or overflow.

/// `x·coth(x)`, continuous through `x = 0` (limit 1).
pub fn x_coth_x(x: f64) -> f64 {
    debug_assert!(x >= 0.0);
    if x < 1e-8 {
        1.0 + x * x / 3.0
    } else {
        // tanh saturates to 1 for x ≳ 19, so this degenerates to x as it should.
        x / x.tanh()
    }
}

/// `cosh(a·y)/cosh(a·ℓ)` for `|y| ≤ ℓ`, computed in exp-difference form.
pub fn cosh_ratio(y: f64, ell: f64, a: f64) -> f64 {
    debug_assert!(a >= 0.0);
    let t = y.abs();
    (a * (t - ell)).exp() * (1.0 + (-2.0 * a * t).exp()) / (1.0 + (-2.0 * a * ell).exp())
}

/// `sinh(a·y)/sinh(a·ℓ)` for `|y| ≤ ℓ` and `a > 0`.
///
/// `1 − e^{−2az}` is taken through `expm1` so the ratio keeps full relative
/// accuracy when `a·ℓ` is tiny (it tends to `y/ℓ` as `a → 0`).
pub fn sinh_ratio(y: f64, ell: f64, a: f64) -> f64 {
    debug_assert!(a > 0.0);
    let t = y.abs();
    let mag = (a * (t - ell)).exp() * (-2.0 * a * t).exp_m1() / (-2.0 * a * ell).exp_m1();
    if y < 0.0 {
        -mag
    } else {
        mag
    }
}

/// `1/cosh²(z)` without overflowing for large `z`.
pub fn sech2(z: f64) -> f64 {
    let e = (-z.abs()).exp();
    let s = 2.0 * e / (1.0 + e * e);
    s * s
}

/// `1/sinh²(z)` for `z > 0` without overflowing for large `z`.
pub fn csch2(z: f64) -> f64 {
    debug_assert!(z > 0.0);
    let e = (-z).exp();
    let s = 2.0 * e / (1.0 - e * e);
    s * s
}

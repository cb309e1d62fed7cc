//! Derivatives of the eigenvalues with respect to the half-width and to
//! sine-mode deformations of the free edges.
//!
//! Width derivatives come from the implicit function theorem applied to the
//! characteristic functions: `dλ/dℓ = −F_ℓ/F_λ` at the root. Shape
//! derivatives combine the boundary-trace coefficients, the closed-form
//! overlap integrals of `sin²`/`cos²` against `sin(hx)`, and the squared
//! norm of the unnormalized eigenfunction.
//!
//! Partial derivatives of the characteristic functions are carried through
//! the evaluation by forward-mode duals (exact chain rule over the `√`,
//! `tanh`, `tan` pieces); central finite differences remain available as an
//! independent cross-check.

use crate::dual::{Dual, Scalar};
use crate::spectrum::{
    char_eval, char_eval_s, solve_eigenvalue, Branch, CharFamily, EigenRecord, ModeId, PlateConfig,
};
use crate::stable::{csch2, sech2};
use crate::{Error, Result};
use std::f64::consts::PI;
use std::ops::RangeInclusive;

/// A boundary perturbation of the free edges `y = ±ℓ`.
#[derive(Debug, Clone, PartialEq)]
pub enum ShapeDirection {
    /// Uniform width change, `φ ≡ 1`. Not directly comparable to the sine
    /// modes: it moves the hinged corners as well.
    Width,
    /// `φ(x) = h·sin(hx)`. The amplitude `h` keeps the area increment equal
    /// across modes, which makes the derivatives comparable.
    SineMode(u32),
    /// `φ(x) = Σ_h a_h·sin(hx)` with the plain-sine coefficients `a_h`
    /// listed from `h = 1`.
    Fourier(Vec<f64>),
}

impl ShapeDirection {
    pub fn sine(h: u32) -> Self {
        assert!(h >= 1, "sine harmonic starts at 1");
        ShapeDirection::SineMode(h)
    }
}

/// Coefficients of the free-edge trace
/// `(1−σ)|D²v|² + σ(Δv)² − λv²|_{y=ℓ} = A·sin²(qx) + B·cos²(qx)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceCoeffs {
    /// Coefficient of `sin²`; negative for every valid mode.
    pub a_coeff: f64,
    /// Coefficient of `cos²`; positive for every valid mode.
    pub b_coeff: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivativeMethod {
    ClosedForm,
    FiniteDifferenceCheck,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeRecord {
    pub mode: ModeId,
    pub direction: ShapeDirection,
    pub value: f64,
    pub method: DerivativeMethod,
}

/// Result of fitting `D γ(m) = −c0 − c1·γ(m)` over a range of `m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioLawFit {
    pub c0: f64,
    pub c1: f64,
    /// Largest `|Dγ/(c0 + c1·γ) + 1|` over the fitted points.
    pub max_residual: f64,
}

/// Closed-form partial derivatives `(∂F/∂λ, ∂F/∂ℓ)` of the selected
/// characteristic function, carried by dual numbers through the same
/// expression as [`char_eval`].
pub fn char_partials(family: CharFamily, lambda: f64, cfg: &PlateConfig) -> Result<(f64, f64)> {
    // Validates domain and pole proximity.
    char_eval(family, lambda, cfg)?;
    Ok(partials_unchecked(family, lambda, cfg))
}

fn partials_unchecked(family: CharFamily, lambda: f64, cfg: &PlateConfig) -> (f64, f64) {
    let d_lambda = char_eval_s(
        family,
        Dual::seed(lambda).sqrt(),
        Dual::constant(cfg.half_width),
        cfg.sigma,
    )
    .d;
    let d_ell = char_eval_s(
        family,
        Dual::constant(lambda).sqrt(),
        Dual::seed(cfg.half_width),
        cfg.sigma,
    )
    .d;
    (d_lambda, d_ell)
}

/// Finite-difference counterpart of [`char_partials`]: central differences
/// with one Richardson extrapolation step.
pub fn char_partials_fd(family: CharFamily, lambda: f64, cfg: &PlateConfig) -> Result<(f64, f64)> {
    let richardson = |f: &dyn Fn(f64) -> Result<f64>, x: f64, rel: f64| -> Result<f64> {
        let h = rel * x.abs().max(1e-300);
        let d = |h: f64| -> Result<f64> { Ok((f(x + h)? - f(x - h)?) / (2.0 * h)) };
        let d1 = d(h)?;
        let d2 = d(0.5 * h)?;
        Ok((4.0 * d2 - d1) / 3.0)
    };
    let d_lambda = richardson(&|l| char_eval(family, l, cfg), lambda, 1e-6)?;
    // the wider ell step rides out roundoff when a saturated tanh leaves
    // only a small ell dependence (huge axial indices)
    let d_ell = richardson(
        &|ell| char_eval(family, lambda, &PlateConfig { half_width: ell, ..*cfg }),
        cfg.half_width,
        1e-4,
    )?;
    Ok((d_lambda, d_ell))
}

/// Width derivative `dλ/dℓ` of a solved eigenvalue.
pub fn d_width_at(record: &EigenRecord, cfg: &PlateConfig) -> f64 {
    let (d_lambda, d_ell) = partials_unchecked(record.mode.family(), record.lambda, cfg);
    -d_ell / d_lambda
}

/// Width derivative `dλ/dℓ` of the eigenvalue of `mode`.
pub fn d_width(mode: ModeId, cfg: &PlateConfig) -> Result<f64> {
    Ok(d_width_at(&solve_eigenvalue(mode, cfg)?, cfg))
}

/// Width derivative by re-solving the eigenvalue at perturbed half-widths;
/// the independent check of [`d_width`].
pub fn d_width_fd(mode: ModeId, cfg: &PlateConfig) -> Result<f64> {
    let solve_at = |ell: f64| -> Result<f64> {
        Ok(solve_eigenvalue(mode, &PlateConfig { half_width: ell, ..*cfg })?.lambda)
    };
    let ell = cfg.half_width;
    let d = |h: f64| -> Result<f64> { Ok((solve_at(ell + h)? - solve_at(ell - h)?) / (2.0 * h)) };
    let h = 1e-4 * ell;
    let d1 = d(h)?;
    let d2 = d(0.5 * h)?;
    Ok((4.0 * d2 - d1) / 3.0)
}

/// Derivative of the eigenvalue of `mode` along `direction`, tagged with
/// the method that produced it.
///
/// The finite-difference method re-solves the spectrum at perturbed
/// half-widths and is therefore only available for the width direction;
/// it exists as the independent cross-check of the closed forms.
pub fn derivative_record(
    mode: ModeId,
    direction: &ShapeDirection,
    method: DerivativeMethod,
    cfg: &PlateConfig,
) -> Result<DerivativeRecord> {
    let value = match method {
        DerivativeMethod::ClosedForm => {
            let record = solve_eigenvalue(mode, cfg)?;
            eigen_derivative(&record, direction, cfg)
        }
        DerivativeMethod::FiniteDifferenceCheck => match direction {
            ShapeDirection::Width => d_width_fd(mode, cfg)?,
            _ => {
                return Err(Error::Invalid(
                    "finite-difference check applies to the width direction only",
                ))
            }
        },
    };
    Ok(DerivativeRecord { mode, direction: direction.clone(), value, method })
}

/// Boundary-trace coefficients of a solved mode.
///
/// `A = 4λ(q⁴ − σ²q⁴ − λ)` and
/// `B = 8(1−σ)q²λ(√λ + q²)·((√λ−(1−σ)q²)/(√λ+(1−σ)q²))²·tanh²(ℓ√(q²+√λ))`,
/// with `tanh²` replaced by `coth²` for torsional modes. The `cos²`
/// coefficient carries the cross-derivative term `2(1−σ)v_xy²` of the trace,
/// which fixes its leading factor at 8.
pub fn trace_coeffs(record: &EigenRecord, cfg: &PlateConfig) -> TraceCoeffs {
    let q2 = (record.mode.axial_index as f64).powi(2);
    let lam = record.lambda;
    let s = lam.sqrt();
    let sigma = cfg.sigma;
    let a_coeff = 4.0 * lam * (q2 * q2 - sigma * sigma * q2 * q2 - lam);
    let ratio = (s - (1.0 - sigma) * q2) / (s + (1.0 - sigma) * q2);
    let t = (cfg.half_width * (q2 + s).sqrt()).tanh();
    let hyp2 = match record.mode.branch {
        Branch::Longitudinal => t * t,
        Branch::Torsional => 1.0 / (t * t),
    };
    let b_coeff = 8.0 * (1.0 - sigma) * q2 * lam * (s + q2) * ratio * ratio * hyp2;
    TraceCoeffs { a_coeff, b_coeff }
}

/// Squared norm of the unnormalized eigenfunction in the energy scalar
/// product (equals `λ·‖v‖²_{L²}`).
///
/// Hyperbolic reciprocals go through [`sech2`]/[`csch2`] so large
/// eigenvalues cannot overflow.
pub fn norm_squared(record: &EigenRecord, cfg: &PlateConfig) -> f64 {
    let q2 = (record.mode.axial_index as f64).powi(2);
    let lam = record.lambda;
    let s = lam.sqrt();
    let (sigma, ell) = (cfg.sigma, cfg.half_width);
    let a = s - (1.0 - sigma) * q2;
    let b = s + (1.0 - sigma) * q2;
    let sb = (q2 + s).sqrt();
    let sa = (q2 - s).abs().sqrt();
    let tail = q2 / (q2 * q2 - lam)
        + 4.0 * (1.0 - sigma) * q2 / (lam - (1.0 - sigma) * (1.0 - sigma) * q2 * q2);
    let edge = 0.5 * ell * PI * lam;
    let t_b = (ell * sb).tanh();

    match (record.mode.branch, record.mode.family_index) {
        (Branch::Longitudinal, 1) => {
            edge * (a * a * sech2(ell * sb) + b * b * sech2(ell * sa))
                + PI * lam * a * a * sb * t_b * tail
        }
        (Branch::Longitudinal, _) => {
            edge * (a * a * sech2(ell * sb) + b * b / (ell * sa).cos().powi(2))
                + PI * lam * a * a * sb * t_b * tail
        }
        (Branch::Torsional, 1) => {
            -edge * (a * a * csch2(ell * sb) + b * b * csch2(ell * sa))
                + PI * lam * a * a * sb / t_b * tail
        }
        (Branch::Torsional, _) => {
            -edge * a * a * csch2(ell * sb) + edge * b * b / (ell * sa).sin().powi(2)
                + PI * lam * a * a * sb / t_b * tail
        }
    }
}

/// Closed forms of `∫₀^π sin²(qx)·sin(hx) dx` and `∫₀^π cos²(qx)·sin(hx) dx`.
///
/// Both vanish for even `h` (which also removes the `h = 2q` singularity
/// before it can form).
pub fn sine_overlap(q: u32, h: u32) -> (f64, f64) {
    assert!(q >= 1 && h >= 1);
    if h.is_multiple_of(2) {
        return (0.0, 0.0);
    }
    let (q, h) = (q as f64, h as f64);
    let den = h * (4.0 * q * q - h * h);
    (4.0 * q * q / den, (4.0 * q * q - 2.0 * h * h) / den)
}

/// Derivative of a solved eigenvalue along the edge deformation
/// `φ(x) = h·sin(hx)`.
///
/// `D_h λ = (2hλ/‖v‖²)·(A·i_sin + B·i_cos)`: the trace identity reduces the
/// boundary integral to the two overlap integrals, and dividing by the
/// squared norm accounts for the unit-norm eigenfunction the differential
/// formula assumes. Identically zero for even `h`.
pub fn d_shape(record: &EigenRecord, cfg: &PlateConfig, h: u32) -> f64 {
    assert!(h >= 1);
    if h.is_multiple_of(2) {
        return 0.0;
    }
    let (i_sin, i_cos) = sine_overlap(record.mode.axial_index, h);
    let TraceCoeffs { a_coeff, b_coeff } = trace_coeffs(record, cfg);
    let boundary = a_coeff * i_sin + b_coeff * i_cos;
    2.0 * h as f64 * record.lambda * boundary / norm_squared(record, cfg)
}

/// Derivative along `φ(x) = Σ_h a_h·sin(hx)`, by linearity of the
/// differential: `Σ_h (a_h/h)·D_h`. The `1/h` undoes the `h·sin(hx)`
/// normalization of [`d_shape`].
pub fn d_fourier(record: &EigenRecord, cfg: &PlateConfig, coefficients: &[f64]) -> f64 {
    coefficients
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            let h = i as u32 + 1;
            if a == 0.0 {
                0.0
            } else {
                a / h as f64 * d_shape(record, cfg, h)
            }
        })
        .sum()
}

/// Derivative of a solved eigenvalue along `direction`.
pub fn eigen_derivative(
    record: &EigenRecord,
    direction: &ShapeDirection,
    cfg: &PlateConfig,
) -> f64 {
    match direction {
        ShapeDirection::Width => d_width_at(record, cfg),
        ShapeDirection::SineMode(h) => d_shape(record, cfg, *h),
        ShapeDirection::Fourier(coeffs) => d_fourier(record, cfg, coeffs),
    }
}

/// Derivative of `f(μ, ν)` for a couple of modes along `direction`, given
/// the caller's partial-derivative values `f_mu`, `f_nu` at the solved pair:
/// `f_mu·D(μ) + f_nu·D(ν)`.
pub fn d_composite(
    mu_mode: ModeId,
    nu_mode: ModeId,
    f_mu: f64,
    f_nu: f64,
    direction: &ShapeDirection,
    cfg: &PlateConfig,
) -> Result<f64> {
    let mu = solve_eigenvalue(mu_mode, cfg)?;
    let nu = solve_eigenvalue(nu_mode, cfg)?;
    Ok(f_mu * eigen_derivative(&mu, direction, cfg) + f_nu * eigen_derivative(&nu, direction, cfg))
}

/// Fit the empirical law `D γ(m) = −c0 − c1·γ(m)` for `γ(m) = ν/μ_{m,1}`
/// over `m` in `m_range`, against a fixed torsional eigenvalue.
///
/// Sine-direction derivatives enter the law in the `δ`-parameterization of
/// the deformation (`φ = ℓδ`), i.e. scaled by `ℓ`; the reference constants
/// for `φ = sin x` and `φ = 3 sin 3x` are stated in that convention, while
/// the width direction needs no rescaling.
///
/// The law equations are solved in least squares with residuals scaled by
/// `γ^{3/2}`. `γ` spans five decades and the slope term dwarfs `c0`
/// everywhere except at the smallest ratios, so the scaling has to
/// de-emphasize the large-`γ` end harder than plain relative scaling does
/// or the intercept is left pinned by points that carry no information
/// about it.
pub fn ratio_law_fit(
    torsional: ModeId,
    m_range: RangeInclusive<u32>,
    direction: &ShapeDirection,
    cfg: &PlateConfig,
) -> Result<RatioLawFit> {
    let scale = match direction {
        ShapeDirection::Width => 1.0,
        ShapeDirection::SineMode(_) => cfg.half_width,
        ShapeDirection::Fourier(_) => {
            return Err(Error::Invalid("ratio-law direction must be width or a sine mode"))
        }
    };
    let nu = solve_eigenvalue(torsional, cfg)?;
    let d_nu = eigen_derivative(&nu, direction, cfg);

    let mut gammas = Vec::new();
    let mut derivs = Vec::new();
    for m in m_range {
        let mu = solve_eigenvalue(ModeId::longitudinal(m, 1), cfg)?;
        let gamma = nu.lambda / mu.lambda;
        let d_mu = eigen_derivative(&mu, direction, cfg);
        // d(ν/μ) = Dν/μ − γ·Dμ/μ
        let d_gamma = (d_nu - gamma * d_mu) / mu.lambda;
        gammas.push(gamma);
        derivs.push(scale * d_gamma);
    }
    fit_linear_law(&gammas, &derivs)
}

fn fit_linear_law(gammas: &[f64], derivs: &[f64]) -> Result<RatioLawFit> {
    if gammas.len() < 3 {
        return Err(Error::InsufficientData { needed: 3, got: gammas.len() });
    }
    // Minimize Σ ((c0 + c1γ_i + D_i)/γ_i^{3/2})², linear in (c0, c1).
    let (mut saa, mut sab, mut sbb, mut sat, mut sbt) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (&g, &d) in gammas.iter().zip(derivs) {
        let w = g.powf(-1.5);
        let (a, b, t) = (w, w * g, -w * d);
        saa += a * a;
        sab += a * b;
        sbb += b * b;
        sat += a * t;
        sbt += b * t;
    }
    let det = saa * sbb - sab * sab;
    let c0 = (sat * sbb - sbt * sab) / det;
    let c1 = (sbt * saa - sat * sab) / det;

    let max_residual = gammas
        .iter()
        .zip(derivs)
        .map(|(&g, &d)| (d / (c0 + c1 * g) + 1.0).abs())
        .fold(0.0, f64::max);
    Ok(RatioLawFit { c0, c1, max_residual })
}

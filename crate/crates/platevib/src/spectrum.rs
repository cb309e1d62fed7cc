//! Characteristic functions, analytic brackets and the bisection solver for
//! the plate spectrum.
//!
//! Working variable is `s = λ^{1/2}` throughout: the four characteristic
//! functions are polynomial-in-`s` combinations of `tanh` and `tan` factors,
//! and eigenvalues spanning `10⁰ … 10¹²` stay well conditioned in `s`.
//! Residuals are reported relative to the magnitude of the two terms of the
//! characteristic function, so solver tolerances are scale-free.

use crate::dual::Scalar;
use crate::stable::{cosh_ratio, sinh_ratio, x_coth_x};
use crate::{Error, Result};
use std::f64::consts::PI;
use std::fmt;

/// Relative bisection tolerance on the eigenvalue λ.
pub const LAMBDA_REL_TOL: f64 = 1e-12;

/// Bracket endpoints adjacent to a tangent singularity are pulled inward by
/// this fraction of the bracket width before bisection starts.
const POLE_SHRINK: f64 = 1e-9;

/// Material and geometry of the plate `(0, π) × (−ℓ, ℓ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlateConfig {
    /// Poisson ratio of the material, `0 < σ < 0.5`.
    pub sigma: f64,
    /// Half-width ℓ, `0 < ℓ < π/2` (thin-plate regime).
    pub half_width: f64,
}

impl PlateConfig {
    pub fn new(sigma: f64, half_width: f64) -> Result<Self> {
        if !(sigma > 0.0 && sigma < 0.5) {
            return Err(Error::Invalid("sigma must lie in (0, 0.5)"));
        }
        if !(half_width > 0.0 && half_width < PI / 2.0) {
            return Err(Error::Invalid("half_width must lie in (0, pi/2)"));
        }
        Ok(PlateConfig { sigma, half_width })
    }
}

impl Default for PlateConfig {
    /// σ = 0.2 suits a concrete-and-steel deck; ℓ = π/150 makes the width
    /// 1/75 of the span, the Tacoma Narrows proportions.
    fn default() -> Self {
        PlateConfig { sigma: 0.2, half_width: PI / 150.0 }
    }
}

/// The two families of normal modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// Even in `y`, eigenvalues `μ_{m,k}`, profile close to `sin(mx)`.
    Longitudinal,
    /// Odd in `y`, eigenvalues `ν_{n,j}`, profile close to `y·sin(nx)`.
    Torsional,
}

/// One eigenvalue branch: `(m, k)` longitudinal or `(n, j)` torsional.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModeId {
    pub branch: Branch,
    /// `m` for longitudinal modes, `n` for torsional ones.
    pub axial_index: u32,
    /// `k` for longitudinal modes, `j` for torsional ones. Torsional modes
    /// with `family_index = 1` exist only for very large `n`; see
    /// [`nu1_exists`].
    pub family_index: u32,
}

impl ModeId {
    pub fn longitudinal(m: u32, k: u32) -> Self {
        assert!(m >= 1 && k >= 1, "mode indices start at 1");
        ModeId { branch: Branch::Longitudinal, axial_index: m, family_index: k }
    }

    pub fn torsional(n: u32, j: u32) -> Self {
        assert!(n >= 1 && j >= 1, "mode indices start at 1");
        ModeId { branch: Branch::Torsional, axial_index: n, family_index: j }
    }

    /// The characteristic function whose root is this eigenvalue.
    pub fn family(&self) -> CharFamily {
        match (self.branch, self.family_index) {
            (Branch::Longitudinal, 1) => CharFamily::PhiM(self.axial_index),
            (Branch::Longitudinal, _) => CharFamily::UpsilonM(self.axial_index),
            (Branch::Torsional, 1) => CharFamily::GammaN(self.axial_index),
            (Branch::Torsional, _) => CharFamily::PsiN(self.axial_index),
        }
    }
}

impl fmt::Display for ModeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.branch {
            Branch::Longitudinal => write!(f, "mu_({},{})", self.axial_index, self.family_index),
            Branch::Torsional => write!(f, "nu_({},{})", self.axial_index, self.family_index),
        }
    }
}

/// Selector for one of the four characteristic functions, with its axial
/// index attached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CharFamily {
    /// Roots are `μ_{m,1} ∈ ((1−σ²)m⁴, m⁴)`.
    PhiM(u32),
    /// Roots are `μ_{m,k}`, `k ≥ 2`, above `m⁴`.
    UpsilonM(u32),
    /// Roots are `ν_{n,j}`, `j ≥ 2`, above `n⁴`.
    PsiN(u32),
    /// Root is `ν_{n,1} ∈ ((1−σ²)n⁴, n⁴)` when it exists.
    GammaN(u32),
}

impl CharFamily {
    pub fn axial_index(&self) -> u32 {
        match *self {
            CharFamily::PhiM(q)
            | CharFamily::UpsilonM(q)
            | CharFamily::PsiN(q)
            | CharFamily::GammaN(q) => q,
        }
    }

    /// True for the families whose domain sits below `q⁴` (hyperbolic
    /// `y`-profiles only, no tangent term).
    fn below_q4(&self) -> bool {
        matches!(self, CharFamily::PhiM(_) | CharFamily::GammaN(_))
    }
}

impl fmt::Display for CharFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharFamily::PhiM(m) => write!(f, "Phi^{m}"),
            CharFamily::UpsilonM(m) => write!(f, "Upsilon^{m}"),
            CharFamily::PsiN(n) => write!(f, "Psi^{n}"),
            CharFamily::GammaN(n) => write!(f, "Gamma^{n}"),
        }
    }
}

/// A solved eigenvalue with its bracket and scale-free residual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenRecord {
    pub mode: ModeId,
    /// The eigenvalue (squared frequency).
    pub lambda: f64,
    /// Analytic bracket the root was isolated in.
    pub bracket_lo: f64,
    pub bracket_hi: f64,
    /// Characteristic-function value at `lambda`, divided by the sum of the
    /// magnitudes of its two terms.
    pub residual: f64,
}

/// The two signed terms of a characteristic function at `s = λ^{1/2}`.
///
/// The value is `t0 + t1`; `|t0| + |t1|` is the natural magnitude used to
/// normalize residuals.
///
/// `Γ^n` is evaluated with `tanh(ℓ√(n²−s))` in its second term: both
/// `y`-profile pieces of the first torsional family are hyperbolic, and the
/// free-edge condition produces `√(n²−s)` under this `tanh`.
fn char_terms<T: Scalar>(family: CharFamily, s: T, ell: T, sigma: f64) -> (T, T) {
    let q = family.axial_index() as f64;
    let q2 = T::lift(q * q);
    let bp = s + T::lift((1.0 - sigma) * q * q);
    let bm = s - T::lift((1.0 - sigma) * q * q);
    match family {
        CharFamily::PhiM(_) => {
            let u = (q2 - s).sqrt();
            let w = (q2 + s).sqrt();
            (u * bp * bp * (ell * u).tanh(), -(w * bm * bm * (ell * w).tanh()))
        }
        CharFamily::UpsilonM(_) => {
            let a = (s - q2).sqrt();
            let w = (s + q2).sqrt();
            (a * bp * bp * (ell * a).tan(), w * bm * bm * (ell * w).tanh())
        }
        CharFamily::PsiN(_) => {
            let a = (s - q2).sqrt();
            let w = (s + q2).sqrt();
            (a * bp * bp * (ell * w).tanh(), -(w * bm * bm * (ell * a).tan()))
        }
        CharFamily::GammaN(_) => {
            let u = (q2 - s).sqrt();
            let w = (q2 + s).sqrt();
            (u * bp * bp * (ell * w).tanh(), -(w * bm * bm * (ell * u).tanh()))
        }
    }
}

/// Characteristic function at `s = λ^{1/2}`, no domain checks.
pub(crate) fn char_eval_s<T: Scalar>(family: CharFamily, s: T, ell: T, sigma: f64) -> T {
    let (t0, t1) = char_terms(family, s, ell, sigma);
    t0 + t1
}

fn check_domain(family: CharFamily, lambda: f64) -> Result<()> {
    if !(lambda > 0.0) {
        return Err(Error::OutsideDomain { family, lambda });
    }
    let q = family.axial_index() as f64;
    let q4 = q * q * q * q;
    let ok = if family.below_q4() { lambda <= q4 } else { lambda >= q4 };
    if ok {
        Ok(())
    } else {
        Err(Error::OutsideDomain { family, lambda })
    }
}

fn check_pole(family: CharFamily, lambda: f64, cfg: &PlateConfig) -> Result<()> {
    if family.below_q4() {
        return Ok(()); // purely hyperbolic, no poles
    }
    let q = family.axial_index() as f64;
    let s = lambda.sqrt();
    let arg = cfg.half_width * (s - q * q).max(0.0).sqrt();
    // distance of arg to the nearest odd multiple of π/2, in units of π
    let t = arg / PI - 0.5;
    if (t - t.round()).abs() < 1e-9 * (1.0 + arg / PI) {
        return Err(Error::TanPole { family, lambda });
    }
    Ok(())
}

/// Value of the selected characteristic function at `λ`.
pub fn char_eval(family: CharFamily, lambda: f64, cfg: &PlateConfig) -> Result<f64> {
    check_domain(family, lambda)?;
    check_pole(family, lambda, cfg)?;
    Ok(char_eval_s(family, lambda.sqrt(), cfg.half_width, cfg.sigma))
}

/// Value and term magnitude, for scale-free residuals.
pub fn char_eval_scaled(family: CharFamily, lambda: f64, cfg: &PlateConfig) -> Result<(f64, f64)> {
    check_domain(family, lambda)?;
    check_pole(family, lambda, cfg)?;
    let (t0, t1) = char_terms(family, lambda.sqrt(), cfg.half_width, cfg.sigma);
    Ok((t0 + t1, t0.abs() + t1.abs()))
}

/// Existence test for the first torsional eigenvalue `ν_{n,1}`:
/// `ℓn√2·coth(ℓn√2) > ((2−σ)/σ)²`.
pub fn nu1_exists(n: u32, cfg: &PlateConfig) -> bool {
    let x = cfg.half_width * (n as f64) * std::f64::consts::SQRT_2;
    let rhs = (2.0 - cfg.sigma) / cfg.sigma;
    x_coth_x(x) > rhs * rhs
}

/// Analytic interval guaranteed to contain exactly one eigenvalue of `mode`.
///
/// Longitudinal `k ≥ 2` brackets come from the tangent-branch structure of
/// `Υ^m`; the torsional `j ≥ 2` bracket pins `ℓ√(λ^{1/2}−n²)` between the
/// consecutive tangent poles `((j−2)π, (j−3/2)π)`, where `Ψ^n` runs from a
/// positive value to `−∞`.
pub fn bracket(mode: ModeId, cfg: &PlateConfig) -> Result<(f64, f64)> {
    let q = mode.axial_index as f64;
    let q2 = q * q;
    let pole_rate = PI / cfg.half_width;
    match (mode.branch, mode.family_index) {
        (Branch::Longitudinal, 1) => {
            let q4 = q2 * q2;
            Ok(((1.0 - cfg.sigma * cfg.sigma) * q4, q4))
        }
        (Branch::Longitudinal, k) => {
            let k = k as f64;
            let lo = q2 + pole_rate * pole_rate * (k - 1.5) * (k - 1.5);
            let hi = q2 + pole_rate * pole_rate * (k - 1.0) * (k - 1.0);
            Ok((lo * lo, hi * hi))
        }
        (Branch::Torsional, 1) => {
            if !nu1_exists(mode.axial_index, cfg) {
                return Err(Error::NonexistentMode { n: mode.axial_index });
            }
            let q4 = q2 * q2;
            Ok(((1.0 - cfg.sigma * cfg.sigma) * q4, q4))
        }
        (Branch::Torsional, j) => {
            let j = j as f64;
            let lo = q2 + pole_rate * pole_rate * (j - 2.0) * (j - 2.0);
            let hi = q2 + pole_rate * pole_rate * (j - 1.5) * (j - 1.5);
            Ok((lo * lo, hi * hi))
        }
    }
}

/// Solve for the eigenvalue of `mode` by bisection inside [`bracket`].
///
/// Bisection runs on `s = λ^{1/2}` with both endpoints pulled off any
/// adjacent tangent pole; the characteristic functions cross zero exactly
/// once per bracket, so plain bisection is convergence-safe.
pub fn solve_eigenvalue(mode: ModeId, cfg: &PlateConfig) -> Result<EigenRecord> {
    let (lam_lo, lam_hi) = bracket(mode, cfg)?;
    let family = mode.family();
    let (ell, sigma) = (cfg.half_width, cfg.sigma);

    let mut lo = lam_lo.sqrt();
    let mut hi = lam_hi.sqrt();
    let shrink = POLE_SHRINK * (hi - lo);
    lo += shrink;
    hi -= shrink;

    let f = |s: f64| char_eval_s(family, s, ell, sigma);
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        hi = lo;
    } else if f_hi == 0.0 {
        lo = hi;
    } else if (f_lo > 0.0) == (f_hi > 0.0) {
        return Err(Error::NoSignChange { family, lo: lam_lo, hi: lam_hi });
    }

    // Bisect until f64 stops making progress; this lands well inside the
    // documented LAMBDA_REL_TOL and costs at most ~64 halvings.
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    debug_assert!(hi - lo <= LAMBDA_REL_TOL * hi);

    let s = 0.5 * (lo + hi);
    let (value, magnitude) = {
        let (t0, t1) = char_terms(family, s, ell, sigma);
        (t0 + t1, t0.abs() + t1.abs())
    };
    Ok(EigenRecord {
        mode,
        lambda: s * s,
        bracket_lo: lam_lo,
        bracket_hi: lam_hi,
        residual: value / magnitude,
    })
}

/// Unnormalized eigenfunction of a solved mode at a point of the closed
/// plate.
///
/// The `y`-profile is the two-term combination matching the mode's family;
/// hyperbolic ratios are evaluated in exp-difference form so large
/// eigenvalues cannot overflow. Longitudinal profiles are even in `y`,
/// torsional ones odd.
pub fn eigenfunction_profile(record: &EigenRecord, cfg: &PlateConfig, x: f64, y: f64) -> f64 {
    let q = record.mode.axial_index as f64;
    let q2 = q * q;
    let s = record.lambda.sqrt();
    let ell = cfg.half_width;
    let a = s - (1.0 - cfg.sigma) * q2;
    let b = s + (1.0 - cfg.sigma) * q2;
    let beta = (q2 + s).sqrt();

    let profile = match (record.mode.branch, record.mode.family_index) {
        (Branch::Longitudinal, 1) => {
            let alpha = (q2 - s).sqrt();
            a * cosh_ratio(y, ell, beta) + b * cosh_ratio(y, ell, alpha)
        }
        (Branch::Longitudinal, _) => {
            let alpha = (s - q2).sqrt();
            a * cosh_ratio(y, ell, beta) + b * (alpha * y).cos() / (alpha * ell).cos()
        }
        (Branch::Torsional, 1) => {
            let alpha = (q2 - s).sqrt();
            a * sinh_ratio(y, ell, beta) + b * sinh_ratio(y, ell, alpha)
        }
        (Branch::Torsional, _) => {
            let alpha = (s - q2).sqrt();
            a * sinh_ratio(y, ell, beta) + b * (alpha * y).sin() / (alpha * ell).sin()
        }
    };
    profile * (q * x).sin()
}

/// Unique positive solution `s` of `tanh(√2·sℓ) = (σ/(2−σ))²·√2·sℓ`, and
/// whether it sits within `10⁻⁹` of an integer.
///
/// An integer solution is the measure-zero case where the plate has one
/// extra eigenfunction beyond the four families; it is reported as a
/// warning, never solved.
pub fn extra_eigenvalue_check(cfg: &PlateConfig) -> (f64, bool) {
    let k = (cfg.sigma / (2.0 - cfg.sigma)).powi(2);
    // In z = √2·sℓ: tanh(z) − k·z, positive for small z (k < 1), negative
    // for z ≥ 1/k. Bisect on (0, 1/k + 1).
    let g = |z: f64| z.tanh() - k * z;
    let mut lo = 1e-12;
    let mut hi = 1.0 / k + 1.0;
    debug_assert!(g(lo) > 0.0 && g(hi) < 0.0);
    for _ in 0..200 {
        if hi - lo <= 1e-14 * hi {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let s = 0.5 * (lo + hi) / (std::f64::consts::SQRT_2 * cfg.half_width);
    (s, (s - s.round()).abs() < 1e-9)
}

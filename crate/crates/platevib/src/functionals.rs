//! Candidate shape functionals `E_c(Ω_φ) = L(φ)·f(μ, ν)` for the critical
//! torsional-instability energy, and the sign analysis of their shape
//! derivatives over the catalogue of (longitudinal, torsional) couples.
//!
//! The multiplicative constant in front of the functional is taken as 1
//! throughout: only signs and monotonicity matter and they are invariant
//! under positive scaling.

use crate::sensitivity::{eigen_derivative, ShapeDirection};
use crate::spectrum::{solve_eigenvalue, Branch, EigenRecord, ModeId, PlateConfig};
use crate::{Error, Result};
use std::f64::consts::PI;

/// Derivatives whose magnitude falls below this fraction of their natural
/// scale are reported as [`Sign::Ambiguous`] instead of being forced.
pub const AMBIGUITY_FLOOR: f64 = 1e-9;

/// The width factor `L` of the functional.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GyrationFunctional {
    /// Mean value of the squared half-width: `(1/π)∫₀^π (ℓ+φ)² dx`.
    MeanSquaredHalfWidth,
    /// Squared mean value of the half-width: `((1/π)∫₀^π (ℓ+φ) dx)²`.
    SquaredMeanHalfWidth,
}

/// The frequency factor `f` of the functional.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrequencyFunctional {
    /// `g(s) = (s−1)^{1/10} + (s−1)/10` applied to `s = ν/μ`.
    GTenth,
    /// `g(s) = (s−1)^{1/4}` applied to `s = ν/μ`.
    GQuarter,
    /// `f(μ, ν) = max{ν−μ, 0}`, the flutter-energy ansatz from the
    /// engineering literature.
    Rocard,
}

impl FrequencyFunctional {
    pub const ALL: [FrequencyFunctional; 3] = [
        FrequencyFunctional::GTenth,
        FrequencyFunctional::GQuarter,
        FrequencyFunctional::Rocard,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            FrequencyFunctional::GTenth => "g-tenth",
            FrequencyFunctional::GQuarter => "g-quarter",
            FrequencyFunctional::Rocard => "rocard",
        }
    }
}

/// The three index families of the couple catalogue.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoupleFamily {
    /// `(μ_{m,1}, ν_{1,2})`, `m = 1..10`.
    FirstTorsional,
    /// `(μ_{m,1}, ν_{n,2})`, `m = 1..14`, `n = 2..5`.
    SecondTorsional,
    /// `(μ_{m,k}, ν_{n,3})`, `k = 1,2`, `m = 1..14`, `n = 1..5`.
    ThirdTorsional,
}

/// One (longitudinal, torsional) couple of the catalogue.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Couple {
    pub mu: ModeId,
    pub nu: ModeId,
    pub family: CoupleFamily,
}

/// All 206 couples, in deterministic order (family by family, torsional
/// index outer, longitudinal index inner).
pub fn couple_catalogue() -> Vec<Couple> {
    let mut couples = Vec::with_capacity(206);
    for m in 1..=10 {
        couples.push(Couple {
            mu: ModeId::longitudinal(m, 1),
            nu: ModeId::torsional(1, 2),
            family: CoupleFamily::FirstTorsional,
        });
    }
    for n in 2..=5 {
        for m in 1..=14 {
            couples.push(Couple {
                mu: ModeId::longitudinal(m, 1),
                nu: ModeId::torsional(n, 2),
                family: CoupleFamily::SecondTorsional,
            });
        }
    }
    for k in 1..=2 {
        for n in 1..=5 {
            for m in 1..=14 {
                couples.push(Couple {
                    mu: ModeId::longitudinal(m, k),
                    nu: ModeId::torsional(n, 3),
                    family: CoupleFamily::ThirdTorsional,
                });
            }
        }
    }
    couples
}

/// `∫₀^π φ(x) dx` for the canonical direction shapes (amplitude 1).
fn direction_integral(direction: &ShapeDirection) -> f64 {
    match direction {
        ShapeDirection::Width => PI,
        ShapeDirection::SineMode(h) => {
            if h.is_multiple_of(2) {
                0.0
            } else {
                2.0
            }
        }
        ShapeDirection::Fourier(coeffs) => coeffs
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                let h = i as u32 + 1;
                if h.is_multiple_of(2) {
                    0.0
                } else {
                    2.0 * a / h as f64
                }
            })
            .sum(),
    }
}

fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    debug_assert!(panels.is_multiple_of(2));
    let h = (b - a) / panels as f64;
    let mut acc = f(a) + f(b);
    for i in 1..panels {
        let w = if i % 2 == 0 { 2.0 } else { 4.0 };
        acc += w * f(a + i as f64 * h);
    }
    acc * h / 3.0
}

fn fourier_phi(coeffs: &[f64], x: f64) -> f64 {
    coeffs
        .iter()
        .enumerate()
        .map(|(i, &a)| a * ((i as f64 + 1.0) * x).sin())
        .sum()
}

/// Value of the gyration factor `L` for the perturbation `eps·φ`, where `φ`
/// is the canonical shape of `direction`.
///
/// Constants and single sines are evaluated in closed form; Fourier sums go
/// through composite quadrature. The perturbed half-width must stay
/// positive everywhere.
pub fn gyration_value(
    kind: GyrationFunctional,
    direction: &ShapeDirection,
    eps: f64,
    cfg: &PlateConfig,
) -> Result<f64> {
    let ell = cfg.half_width;
    let min_width = match direction {
        ShapeDirection::Width => ell + eps,
        ShapeDirection::SineMode(h) => {
            // h·sin(hx) spans [0, 1] on (0, π) for h = 1, [−h, h] otherwise
            let lo = if *h == 1 { eps.min(0.0) } else { -eps.abs() * *h as f64 };
            ell + lo
        }
        ShapeDirection::Fourier(coeffs) => (0..=4096)
            .map(|i| ell + eps * fourier_phi(coeffs, PI * i as f64 / 4096.0))
            .fold(f64::INFINITY, f64::min),
    };
    if min_width <= 0.0 {
        return Err(Error::DegeneratePlate);
    }

    let mean = ell + eps * direction_integral(direction) / PI;
    match kind {
        GyrationFunctional::SquaredMeanHalfWidth => Ok(mean * mean),
        GyrationFunctional::MeanSquaredHalfWidth => match direction {
            ShapeDirection::Width => Ok((ell + eps) * (ell + eps)),
            ShapeDirection::SineMode(h) => {
                // cross term integrates the sine; the square of h·sin(hx)
                // averages to h²/2
                let lin = 2.0 * ell * eps * direction_integral(direction) / PI;
                let quad = 0.5 * eps * eps * (*h as f64) * (*h as f64);
                Ok(ell * ell + lin + quad)
            }
            ShapeDirection::Fourier(coeffs) => {
                let f = |x: f64| {
                    let w = ell + eps * fourier_phi(coeffs, x);
                    w * w
                };
                Ok(simpson(f, 0.0, PI, 8192) / PI)
            }
        },
    }
}

/// Directional derivative `L'(φ) = (2ℓ/π)∫₀^π φ(x) dx` at the unperturbed
/// rectangle. Identical for both gyration kinds.
pub fn gyration_derivative(
    _kind: GyrationFunctional,
    direction: &ShapeDirection,
    cfg: &PlateConfig,
) -> f64 {
    2.0 * cfg.half_width / PI * direction_integral(direction)
}

fn g_value(freq: FrequencyFunctional, s: f64) -> f64 {
    match freq {
        FrequencyFunctional::GTenth => (s - 1.0).powf(0.1) + 0.1 * (s - 1.0),
        FrequencyFunctional::GQuarter => (s - 1.0).powf(0.25),
        FrequencyFunctional::Rocard => unreachable!("not a ratio functional"),
    }
}

fn g_prime(freq: FrequencyFunctional, s: f64) -> f64 {
    match freq {
        FrequencyFunctional::GTenth => 0.1 * (s - 1.0).powf(-0.9) + 0.1,
        FrequencyFunctional::GQuarter => 0.25 * (s - 1.0).powf(-0.75),
        FrequencyFunctional::Rocard => unreachable!("not a ratio functional"),
    }
}

/// Frequency factor `f(μ, ν)` of the functional.
pub fn frequency_value(
    freq: FrequencyFunctional,
    couple: (&EigenRecord, &EigenRecord),
) -> Result<f64> {
    let (mu, nu) = (couple.0.lambda, couple.1.lambda);
    match freq {
        FrequencyFunctional::Rocard => Ok((nu - mu).max(0.0)),
        _ => {
            let s = nu / mu;
            if s < 1.0 {
                return Err(Error::Invalid("frequency ratio below 1 for a ratio functional"));
            }
            Ok(g_value(freq, s))
        }
    }
}

/// `E_c(Ω_φ) = L(φ)·f(μ, ν)` for the perturbation `eps·φ`.
///
/// `couple` is the (longitudinal, torsional) pair of solved records.
pub fn ec_value(
    freq: FrequencyFunctional,
    gyr: GyrationFunctional,
    couple: (&EigenRecord, &EigenRecord),
    direction: &ShapeDirection,
    eps: f64,
    cfg: &PlateConfig,
) -> Result<f64> {
    debug_assert_eq!(couple.0.mode.branch, Branch::Longitudinal);
    debug_assert_eq!(couple.1.mode.branch, Branch::Torsional);
    Ok(gyration_value(gyr, direction, eps, cfg)? * frequency_value(freq, couple)?)
}

/// The two product-rule terms of the shape derivative of `E_c` at the
/// unperturbed rectangle: `(L'(φ)·f, L(0)·(f_μ·Dμ + f_ν·Dν))`.
///
/// Their sum is the derivative; the sum of their magnitudes is the natural
/// scale against which near-cancellation is judged.
pub fn ec_derivative_terms(
    freq: FrequencyFunctional,
    gyr: GyrationFunctional,
    couple: (&EigenRecord, &EigenRecord),
    direction: &ShapeDirection,
    cfg: &PlateConfig,
) -> Result<(f64, f64)> {
    let (mu, nu) = (couple.0.lambda, couple.1.lambda);
    let (f, f_mu, f_nu) = match freq {
        FrequencyFunctional::Rocard => {
            if nu == mu {
                return Err(Error::SingularRatio);
            }
            if nu > mu {
                (nu - mu, -1.0, 1.0)
            } else {
                (0.0, 0.0, 0.0)
            }
        }
        _ => {
            let s = nu / mu;
            if s <= 1.0 {
                return Err(Error::SingularRatio);
            }
            let gp = g_prime(freq, s);
            (g_value(freq, s), -gp * nu / (mu * mu), gp / mu)
        }
    };
    let d_mu = eigen_derivative(couple.0, direction, cfg);
    let d_nu = eigen_derivative(couple.1, direction, cfg);
    let geom = gyration_derivative(gyr, direction, cfg) * f;
    let l0 = cfg.half_width * cfg.half_width;
    Ok((geom, l0 * (f_mu * d_mu + f_nu * d_nu)))
}

/// Shape derivative of `E_c` at the unperturbed rectangle along `direction`.
pub fn ec_derivative(
    freq: FrequencyFunctional,
    gyr: GyrationFunctional,
    couple: (&EigenRecord, &EigenRecord),
    direction: &ShapeDirection,
    cfg: &PlateConfig,
) -> Result<f64> {
    let (geom, freq_term) = ec_derivative_terms(freq, gyr, couple, direction, cfg)?;
    Ok(geom + freq_term)
}

/// Sign of a derivative, with near-cancellations flagged instead of forced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Positive,
    Negative,
    /// Magnitude below [`AMBIGUITY_FLOOR`] times the natural scale.
    Ambiguous,
}

impl Sign {
    pub fn label(&self) -> &'static str {
        match self {
            Sign::Positive => "+",
            Sign::Negative => "-",
            Sign::Ambiguous => "?",
        }
    }
}

fn classify(value: f64, scale: f64) -> Sign {
    if value.abs() < AMBIGUITY_FLOOR * scale {
        Sign::Ambiguous
    } else if value > 0.0 {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

/// One cell of the sign matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SignCell {
    pub couple: Couple,
    pub direction: ShapeDirection,
    pub value: f64,
    pub sign: Sign,
    /// Reference sign where the sign analysis pins one; `None` where it
    /// reports both signs occurring.
    pub expected: Option<Sign>,
}

impl SignCell {
    pub fn disagrees(&self) -> bool {
        self.expected.is_some_and(|e| e != self.sign)
    }
}

/// Sign matrix of one frequency functional over the couple catalogue.
#[derive(Debug, Clone, PartialEq)]
pub struct SignReport {
    pub functional: FrequencyFunctional,
    pub cells: Vec<SignCell>,
    /// Cells whose sign disagrees with the reference pattern.
    pub disagreements: usize,
    /// Cells flagged ambiguous.
    pub ambiguous: usize,
}

/// Reference sign of the derivative of `E_c` for the given functional,
/// direction and couple; `None` where both signs occur.
///
/// The two ratio candidates are positive under width except one couple
/// family (g-tenth) or two isolated couples (g-quarter), with pinned
/// `φ = sin x` behavior on parts of the catalogue; the flutter ansatz is
/// negative everywhere except the near-resonant corner `m < n` of the
/// second family under width, negative for all couples under `sin x`, and
/// negative for all `n ≠ 1` under `3 sin 3x`.
pub fn expected_sign(
    freq: FrequencyFunctional,
    direction: &ShapeDirection,
    couple: &Couple,
) -> Option<Sign> {
    let (m, k) = (couple.mu.axial_index, couple.mu.family_index);
    let n = couple.nu.axial_index;
    match (freq, direction) {
        (FrequencyFunctional::GTenth, ShapeDirection::Width) => {
            if couple.family == CoupleFamily::ThirdTorsional && k == 1 {
                Some(Sign::Negative)
            } else {
                Some(Sign::Positive)
            }
        }
        (FrequencyFunctional::GTenth, ShapeDirection::SineMode(1)) => match couple.family {
            CoupleFamily::FirstTorsional => Some(Sign::Negative),
            CoupleFamily::SecondTorsional => None,
            CoupleFamily::ThirdTorsional => {
                Some(if k == 1 { Sign::Negative } else { Sign::Positive })
            }
        },
        (FrequencyFunctional::GQuarter, ShapeDirection::Width) => {
            let exception = k == 1
                && couple.nu.family_index == 2
                && ((m == 10 && n == 1) || (m == 14 && n == 2));
            Some(if exception { Sign::Negative } else { Sign::Positive })
        }
        (FrequencyFunctional::GQuarter, ShapeDirection::SineMode(1)) => match couple.family {
            CoupleFamily::ThirdTorsional => {
                Some(if k == 1 { Sign::Negative } else { Sign::Positive })
            }
            _ => None,
        },
        (FrequencyFunctional::Rocard, ShapeDirection::Width) => {
            let exception = couple.family == CoupleFamily::SecondTorsional && m < n;
            Some(if exception { Sign::Positive } else { Sign::Negative })
        }
        (FrequencyFunctional::Rocard, ShapeDirection::SineMode(1)) => Some(Sign::Negative),
        (FrequencyFunctional::Rocard, ShapeDirection::SineMode(3)) => {
            if n != 1 {
                Some(Sign::Negative)
            } else {
                None
            }
        }
        _ => None,
    }
}

/// Evaluate the full couples × directions sign matrix for one functional,
/// flagging every cell that disagrees with the reference pattern.
pub fn sign_report(
    freq: FrequencyFunctional,
    directions: &[ShapeDirection],
    cfg: &PlateConfig,
) -> Result<SignReport> {
    let couples = couple_catalogue();
    // the catalogue reuses a handful of distinct modes; solve each once
    let mut records: Vec<(ModeId, EigenRecord)> = Vec::new();
    let mut record = |mode: ModeId| -> Result<EigenRecord> {
        if let Some((_, r)) = records.iter().find(|(m, _)| *m == mode) {
            return Ok(*r);
        }
        let r = solve_eigenvalue(mode, cfg)?;
        records.push((mode, r));
        Ok(r)
    };

    let mut cells = Vec::with_capacity(couples.len() * directions.len());
    let (mut disagreements, mut ambiguous) = (0, 0);
    for couple in &couples {
        let mu = record(couple.mu)?;
        let nu = record(couple.nu)?;
        for direction in directions {
            let (geom, freq_term) = ec_derivative_terms(
                freq,
                GyrationFunctional::MeanSquaredHalfWidth,
                (&mu, &nu),
                direction,
                cfg,
            )?;
            let value = geom + freq_term;
            let sign = classify(value, geom.abs() + freq_term.abs());
            let cell = SignCell {
                couple: *couple,
                direction: direction.clone(),
                value,
                sign,
                expected: expected_sign(freq, direction, couple),
            };
            if cell.disagrees() {
                disagreements += 1;
            }
            if sign == Sign::Ambiguous {
                ambiguous += 1;
            }
            cells.push(cell);
        }
    }
    Ok(SignReport { functional: freq, cells, disagreements, ambiguous })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> PlateConfig {
        PlateConfig::default()
    }

    fn solved(mode: ModeId) -> EigenRecord {
        solve_eigenvalue(mode, &cfg()).unwrap()
    }

    #[test]
    fn catalogue_has_206_couples() {
        let couples = couple_catalogue();
        assert_eq!(couples.len(), 206);
        let count = |f: CoupleFamily| couples.iter().filter(|c| c.family == f).count();
        assert_eq!(count(CoupleFamily::FirstTorsional), 10);
        assert_eq!(count(CoupleFamily::SecondTorsional), 56);
        assert_eq!(count(CoupleFamily::ThirdTorsional), 140);
    }

    #[test]
    fn gyration_closed_forms() {
        let c = cfg();
        let ell = c.half_width;
        let kind = GyrationFunctional::MeanSquaredHalfWidth;

        // φ ≡ 0 gives the rectangle back
        let v = gyration_value(kind, &ShapeDirection::Width, 0.0, &c).unwrap();
        assert!((v - ell * ell).abs() < 1e-18);

        // constant widening
        let v = gyration_value(kind, &ShapeDirection::Width, 0.01, &c).unwrap();
        assert!((v - (ell + 0.01) * (ell + 0.01)).abs() < 1e-16);

        // φ = sin x: ℓ² + 4ℓ/π + 1/2, cross-checked by quadrature
        let v = gyration_value(kind, &ShapeDirection::sine(1), 1.0, &c).unwrap();
        let expect = ell * ell + 4.0 * ell / PI + 0.5;
        assert!((v - expect).abs() < 1e-14);
        let quad = simpson(|x| (ell + x.sin()).powi(2), 0.0, PI, 4096) / PI;
        assert!((v - quad).abs() < 1e-12);
    }

    #[test]
    fn gyration_degenerate_plate() {
        let c = cfg();
        let kind = GyrationFunctional::MeanSquaredHalfWidth;
        assert_eq!(
            gyration_value(kind, &ShapeDirection::Width, -c.half_width, &c),
            Err(Error::DegeneratePlate)
        );
        assert_eq!(
            gyration_value(kind, &ShapeDirection::sine(2), c.half_width, &c),
            Err(Error::DegeneratePlate)
        );
    }

    #[test]
    fn gyration_derivative_values() {
        let c = cfg();
        let ell = c.half_width;
        let kind = GyrationFunctional::MeanSquaredHalfWidth;
        assert!((gyration_derivative(kind, &ShapeDirection::Width, &c) - 2.0 * ell).abs() < 1e-18);
        assert_eq!(gyration_derivative(kind, &ShapeDirection::sine(2), &c), 0.0);
        for h in [1, 3, 5, 7] {
            let d = gyration_derivative(kind, &ShapeDirection::sine(h), &c);
            assert!((d - 4.0 * ell / PI).abs() < 1e-17, "h={h}");
        }
    }

    #[test]
    fn gyration_derivative_is_kind_independent() {
        let c = cfg();
        // xorshift-based direction sampling, fixed seed
        let mut state = 0x2545f4914f6cdd1du64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
        };
        for _ in 0..20 {
            let coeffs: Vec<f64> = (0..6).map(|_| next()).collect();
            let dir = ShapeDirection::Fourier(coeffs);
            let a = gyration_derivative(GyrationFunctional::MeanSquaredHalfWidth, &dir, &c);
            let b = gyration_derivative(GyrationFunctional::SquaredMeanHalfWidth, &dir, &c);
            assert_eq!(a, b);
        }
    }

    #[test]
    fn ec_value_examples() {
        let c = cfg();
        let mu11 = solved(ModeId::longitudinal(1, 1));
        let nu12 = solved(ModeId::torsional(1, 2));
        let nu22 = solved(ModeId::torsional(2, 2));
        let gyr = GyrationFunctional::MeanSquaredHalfWidth;
        let width = ShapeDirection::Width;

        // degenerate couple ν = μ vanishes for all three functionals
        let degenerate = EigenRecord { mode: nu22.mode, ..mu11 };
        for freq in FrequencyFunctional::ALL {
            let v = ec_value(freq, gyr, (&mu11, &degenerate), &width, 0.0, &c).unwrap();
            assert_eq!(v, 0.0, "{freq:?}");
        }

        let ell2 = c.half_width * c.half_width;
        let v =
            ec_value(FrequencyFunctional::Rocard, gyr, (&mu11, &nu12), &width, 0.0, &c).unwrap();
        assert!((v - ell2 * (nu12.lambda - mu11.lambda)).abs() < 1e-12 * v);

        let mu21 = solved(ModeId::longitudinal(2, 1));
        let v =
            ec_value(FrequencyFunctional::GQuarter, gyr, (&mu21, &nu22), &width, 0.0, &c).unwrap();
        let expect = ell2 * (nu22.lambda / mu21.lambda - 1.0).powf(0.25);
        assert!((v - expect).abs() < 1e-12 * v);

        // nonnegative across the catalogue
        for couple in couple_catalogue().iter().step_by(17) {
            let mu = solved(couple.mu);
            let nu = solved(couple.nu);
            for freq in FrequencyFunctional::ALL {
                assert!(ec_value(freq, gyr, (&mu, &nu), &width, 0.0, &c).unwrap() >= 0.0);
            }
        }
    }

    #[test]
    fn ec_derivative_reference_signs() {
        let c = cfg();
        let gyr = GyrationFunctional::MeanSquaredHalfWidth;
        let mu11 = solved(ModeId::longitudinal(1, 1));
        let nu22 = solved(ModeId::torsional(2, 2));

        // near-resonant corner of the second family: positive under width
        let d = ec_derivative(
            FrequencyFunctional::Rocard,
            gyr,
            (&mu11, &nu22),
            &ShapeDirection::Width,
            &c,
        )
        .unwrap();
        assert!(d > 0.0, "rocard width (1,1)x(2,2): {d}");

        // φ = sin x: negative across the catalogue (spot checks)
        for (m, k, n, j) in [(1, 1, 1, 2), (5, 1, 3, 2), (7, 2, 4, 3)] {
            let mu = solved(ModeId::longitudinal(m, k));
            let nu = solved(ModeId::torsional(n, j));
            let d = ec_derivative(
                FrequencyFunctional::Rocard,
                gyr,
                (&mu, &nu),
                &ShapeDirection::sine(1),
                &c,
            )
            .unwrap();
            assert!(d < 0.0, "rocard sin1 ({m},{k})x({n},{j}): {d}");
        }

        // one of the two g-quarter width exceptions
        let mu101 = solved(ModeId::longitudinal(10, 1));
        let nu12 = solved(ModeId::torsional(1, 2));
        let d = ec_derivative(
            FrequencyFunctional::GQuarter,
            gyr,
            (&mu101, &nu12),
            &ShapeDirection::Width,
            &c,
        )
        .unwrap();
        assert!(d < 0.0, "g-quarter width exception (10,1)x(1,2): {d}");
    }

    #[test]
    fn ec_derivative_singular_ratio() {
        let c = cfg();
        let mu11 = solved(ModeId::longitudinal(1, 1));
        let degenerate = EigenRecord { mode: ModeId::torsional(2, 2), ..mu11 };
        for freq in FrequencyFunctional::ALL {
            let err = ec_derivative(
                freq,
                GyrationFunctional::MeanSquaredHalfWidth,
                (&mu11, &degenerate),
                &ShapeDirection::Width,
                &c,
            )
            .unwrap_err();
            assert_eq!(err, Error::SingularRatio, "{freq:?}");
        }
    }

    #[test]
    fn zero_mean_direction_reduces_to_frequency_term() {
        let c = cfg();
        let mu = solved(ModeId::longitudinal(3, 1));
        let nu = solved(ModeId::torsional(2, 2));
        let gyr = GyrationFunctional::MeanSquaredHalfWidth;

        // even harmonic: both terms vanish identically
        let (geom, freq_term) = ec_derivative_terms(
            FrequencyFunctional::GTenth,
            gyr,
            (&mu, &nu),
            &ShapeDirection::sine(2),
            &c,
        )
        .unwrap();
        assert_eq!((geom, freq_term), (0.0, 0.0));

        // zero-mean odd-harmonic mixture keeps only the frequency term:
        // ∫(sin x − 3 sin 3x) = 2 − 2 = 0
        let dir = ShapeDirection::Fourier(vec![1.0, 0.0, -3.0]);
        let (geom, freq_term) =
            ec_derivative_terms(FrequencyFunctional::GTenth, gyr, (&mu, &nu), &dir, &c).unwrap();
        assert!(geom.abs() < 1e-18);
        assert!(freq_term != 0.0);
    }

    #[test]
    fn report_covers_catalogue() {
        let c = cfg();
        let dirs = [ShapeDirection::Width, ShapeDirection::sine(1)];
        let report = sign_report(FrequencyFunctional::GTenth, &dirs, &c).unwrap();
        assert_eq!(report.cells.len(), 206 * 2);
        assert_eq!(report.ambiguous, 0);
    }
}

//! Vibration analysis of a partially hinged rectangular plate.
//!
//! The plate occupies `(0, π) × (−ℓ, ℓ)`, is hinged on the two short edges
//! and free on the two long ones. Its normal modes split into longitudinal
//! families (even in `y`, eigenvalues `μ_{m,k}`) and torsional families
//! (odd in `y`, eigenvalues `ν_{n,j}`). Each eigenvalue is the root of a
//! transcendental characteristic function inside an analytically known
//! bracket, which makes the whole spectrum computable by guarded bisection.
//!
//! On top of the spectrum the crate provides:
//!
//! * [`spectrum`]: characteristic functions, brackets, eigenvalue solver
//!   and closed-form eigenfunction profiles;
//! * [`sensitivity`]: derivatives of eigenvalues with respect to the plate
//!   half-width and to sinusoidal deformations of the free edges, plus the
//!   empirical linear law linking frequency ratios to their derivatives;
//! * [`functionals`]: candidate shape functionals for the critical energy
//!   of torsional instability and their sign analysis over the catalogue of
//!   (longitudinal, torsional) mode couples;
//! * [`hamiltonian`]: five prototype 2-DOF Hamiltonian systems, energy
//!   conserving integration, and the instability threshold curve `E_c(γ)`.
//!
//! ```
//! use platevib::{ModeId, PlateConfig};
//! use platevib::sensitivity::d_width_at;
//!
//! let cfg = PlateConfig::default();
//! let record = platevib::spectrum::solve_eigenvalue(ModeId::longitudinal(5, 1), &cfg)?;
//! assert!((record.lambda - 600.14).abs() < 0.01);
//!
//! // widening the plate raises the first longitudinal eigenvalues
//! assert!(d_width_at(&record, &cfg) > 0.0);
//! # Ok::<(), platevib::Error>(())
//! ```

// `!(x > 0.0)` rejects NaN along with the out-of-range values; the
// un-negated comparison would let NaN through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod functionals;
pub mod hamiltonian;
pub mod sensitivity;
pub mod spectrum;

mod dual;
mod stable;

pub use spectrum::{Branch, CharFamily, EigenRecord, ModeId, PlateConfig};

use std::fmt;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Parameters outside their documented range.
    Invalid(&'static str),
    /// The first torsional eigenvalue `ν_{n,1}` does not exist for this `n`.
    NonexistentMode { n: u32 },
    /// `λ` lies on the wrong side of `q⁴` for the selected family.
    OutsideDomain { family: CharFamily, lambda: f64 },
    /// `λ` sits on (or numerically at) a pole of the family's tangent term.
    TanPole { family: CharFamily, lambda: f64 },
    /// The characteristic function does not change sign over the bracket.
    /// Signals a bracketing bug; must never happen for a valid mode.
    NoSignChange { family: CharFamily, lo: f64, hi: f64 },
    /// A boundary perturbation makes the half-width non-positive somewhere.
    DegeneratePlate,
    /// `g'(ν/μ)` is singular at ratio 1.
    SingularRatio,
    /// Not enough samples for a least-squares fit.
    InsufficientData { needed: usize, got: usize },
    /// Energy drift above the acceptance threshold on every fallback scheme.
    IntegrationFailure { drift: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Invalid(what) => write!(f, "invalid input: {what}"),
            Error::NonexistentMode { n } => {
                write!(f, "torsional eigenvalue nu_({n},1) does not exist")
            }
            Error::OutsideDomain { family, lambda } => {
                write!(f, "lambda = {lambda} outside the domain of {family}")
            }
            Error::TanPole { family, lambda } => {
                write!(f, "lambda = {lambda} is a tangent pole of {family}")
            }
            Error::NoSignChange { family, lo, hi } => {
                write!(f, "no sign change of {family} over [{lo}, {hi}]")
            }
            Error::DegeneratePlate => write!(f, "perturbed half-width is not positive"),
            Error::SingularRatio => write!(f, "frequency ratio 1 makes g' singular"),
            Error::InsufficientData { needed, got } => {
                write!(f, "need at least {needed} samples, got {got}")
            }
            Error::IntegrationFailure { drift } => {
                write!(f, "energy drift {drift:.3e} exceeds the integration tolerance")
            }
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;

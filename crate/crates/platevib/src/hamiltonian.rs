//! Prototype 2-DOF Hamiltonian systems, energy-conserving integration and
//! the instability-threshold curve `E_c(γ)`.
//!
//! Each system couples a longitudinal component `x` and a torsional
//! component `y` through a nonlinear potential; `γ` is the ratio of the
//! squared linear frequencies. Trials start from near-pure-`x` initial data
//! (`y(0) = seed_ratio·x(0)`, both velocities zero) and watch for the
//! torsional amplitude to grow past `growth_factor` times its seed within
//! the horizon; the threshold energy is located by a geometric scan
//! followed by bisection.

use crate::{Error, Result};

/// Relative energy drift above which a trajectory is never accepted.
pub const DRIFT_TOL: f64 = 1e-6;

/// The five prototype systems, plus the two scaled variants of the first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum System {
    /// `ẍ + (1+x²+y²)x = 0`, `ÿ + γ(1+x²+y²)y = 0`.
    A,
    /// `A` with the linear stiffness `1` replaced by `α > 0`.
    APrime { alpha: f64 },
    /// `A` with the quadratic coupling scaled by `β > 0`.
    ADoublePrime { beta: f64 },
    /// `ẍ + (1+x⁴+y²)x = 0`, `ÿ + γ(1+x²+y⁴)y = 0`.
    B,
    /// `ẍ + (1+y²)x = 0`, `ÿ + γ(1+x²)y = 0`.
    C,
    /// `ẍ + (1+x²+y²)x = 0`, `ÿ + (γ+x²+y²)y = 0`.
    D,
    /// `D` with an extra hardening term `2x⁶` on the first equation.
    E,
}

impl System {
    pub fn label(&self) -> &'static str {
        match self {
            System::A => "a",
            System::APrime { .. } => "aprime",
            System::ADoublePrime { .. } => "adprime",
            System::B => "b",
            System::C => "c",
            System::D => "d",
            System::E => "e",
        }
    }
}

/// A system together with its frequency-ratio parameter `γ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HamiltonianSpec {
    pub system: System,
    pub gamma: f64,
}

impl HamiltonianSpec {
    pub fn new(system: System, gamma: f64) -> Result<Self> {
        if !(gamma > 0.0) {
            return Err(Error::Invalid("gamma must be positive"));
        }
        match system {
            System::APrime { alpha } if !(alpha > 0.0) => {
                Err(Error::Invalid("alpha must be positive"))
            }
            System::ADoublePrime { beta } if !(beta > 0.0) => {
                Err(Error::Invalid("beta must be positive"))
            }
            _ => Ok(HamiltonianSpec { system, gamma }),
        }
    }

    /// `ẏ = metric·p_y`: the first five systems carry the kinetic term
    /// `ẏ²/(2γ)`, the last two the plain `ẏ²/2`.
    fn metric(&self) -> f64 {
        match self.system {
            System::D | System::E => 1.0,
            _ => self.gamma,
        }
    }

    fn potential(&self, x: f64, y: f64) -> f64 {
        let (x2, y2) = (x * x, y * y);
        let g = self.gamma;
        match self.system {
            System::A => 0.5 * (x2 + y2) + 0.25 * (x2 + y2) * (x2 + y2),
            System::APrime { alpha } => {
                0.5 * alpha * (x2 + y2) + 0.25 * (x2 + y2) * (x2 + y2)
            }
            System::ADoublePrime { beta } => {
                0.5 * (x2 + y2) + 0.25 * beta * (x2 + y2) * (x2 + y2)
            }
            System::B => {
                0.5 * (x2 + y2) + x2 * x2 * x2 / 6.0 + y2 * y2 * y2 / 6.0 + 0.5 * x2 * y2
            }
            System::C => 0.5 * (x2 + y2) + 0.5 * x2 * y2,
            System::D => 0.5 * x2 + 0.5 * g * y2 + 0.25 * (x2 + y2) * (x2 + y2),
            System::E => {
                0.5 * x2 + 0.5 * g * y2 + 0.25 * (x2 + y2) * (x2 + y2) + 0.25 * x2 * x2 * x2 * x2
            }
        }
    }

    /// `(−∂V/∂x, −∂V/∂y)`.
    fn force(&self, x: f64, y: f64) -> (f64, f64) {
        let (x2, y2) = (x * x, y * y);
        let g = self.gamma;
        match self.system {
            System::A => {
                let c = 1.0 + x2 + y2;
                (-c * x, -c * y)
            }
            System::APrime { alpha } => {
                let c = alpha + x2 + y2;
                (-c * x, -c * y)
            }
            System::ADoublePrime { beta } => {
                let c = 1.0 + beta * (x2 + y2);
                (-c * x, -c * y)
            }
            System::B => (-(1.0 + x2 * x2 + y2) * x, -(1.0 + x2 + y2 * y2) * y),
            System::C => (-(1.0 + y2) * x, -(1.0 + x2) * y),
            System::D => (-(1.0 + x2 + y2) * x, -(g + x2 + y2) * y),
            System::E => (-(1.0 + x2 + y2 + 2.0 * x2 * x2 * x2) * x, -(g + x2 + y2) * y),
        }
    }
}

/// Displacements and conjugate momenta.
///
/// For the systems with kinetic term `ẋ²/2 + ẏ²/(2γ)` the torsional
/// momentum is `p_y = ẏ/γ`; for the last two it is `p_y = ẏ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimState {
    pub x: f64,
    pub y: f64,
    pub px: f64,
    pub py: f64,
}

impl SimState {
    /// State with zero velocities.
    pub fn at_rest(x: f64, y: f64) -> Self {
        SimState { x, y, px: 0.0, py: 0.0 }
    }

    /// State from physical velocities `(ẋ, ẏ)`.
    pub fn from_velocities(spec: &HamiltonianSpec, x: f64, y: f64, vx: f64, vy: f64) -> Self {
        SimState { x, y, px: vx, py: vy / spec.metric() }
    }
}

/// The conserved energy of the system at `state`.
pub fn energy(spec: &HamiltonianSpec, state: &SimState) -> f64 {
    let m = spec.metric();
    0.5 * (state.px * state.px + m * state.py * state.py) + spec.potential(state.x, state.y)
}

/// One kick-drift-kick leapfrog step; symplectic and time-reversible.
pub fn step(spec: &HamiltonianSpec, state: SimState, dt: f64) -> SimState {
    let m = spec.metric();
    let (fx, fy) = spec.force(state.x, state.y);
    let px = state.px + 0.5 * dt * fx;
    let py = state.py + 0.5 * dt * fy;
    let x = state.x + dt * px;
    let y = state.y + dt * m * py;
    let (fx, fy) = spec.force(x, y);
    SimState { x, y, px: px + 0.5 * dt * fx, py: py + 0.5 * dt * fy }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Scheme {
    Verlet,
    /// Fourth-order triple-jump composition of leapfrog steps.
    Yoshida4,
}

fn advance(spec: &HamiltonianSpec, state: SimState, dt: f64, scheme: Scheme) -> SimState {
    match scheme {
        Scheme::Verlet => step(spec, state, dt),
        Scheme::Yoshida4 => {
            const CBRT2: f64 = 1.259_921_049_894_873_2;
            let w1 = 1.0 / (2.0 - CBRT2);
            let w0 = -CBRT2 * w1;
            let s = step(spec, state, w1 * dt);
            let s = step(spec, s, w0 * dt);
            step(spec, s, w1 * dt)
        }
    }
}

/// Outcome of one accepted trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectorySummary {
    /// Running maximum of `|y(t)|`, including the initial point.
    pub max_abs_y: f64,
    /// Largest sampled relative energy deviation from the initial energy.
    pub energy_drift: f64,
    /// True when the trajectory stopped early at `stop_y`.
    pub stopped_early: bool,
}

/// Integration attempt that bails out as soon as its drift budget is blown,
/// so a failed scheme costs little before the next one runs.
fn run_scheme(
    spec: &HamiltonianSpec,
    init: SimState,
    horizon: f64,
    dt: f64,
    scheme: Scheme,
    stop_y: Option<f64>,
) -> std::result::Result<TrajectorySummary, f64> {
    let steps = (horizon / dt).ceil() as u64;
    let e0 = energy(spec, &init);
    let scale = e0.abs().max(f64::MIN_POSITIVE);
    let mut state = init;
    let mut max_abs_y = init.y.abs();
    let mut drift = 0.0f64;
    // energy audited every block and at the end
    const BLOCK: u64 = 128;
    for i in 1..=steps {
        state = advance(spec, state, dt, scheme);
        max_abs_y = max_abs_y.max(state.y.abs());
        if i % BLOCK == 0 || i == steps {
            let d = (energy(spec, &state) - e0).abs() / scale;
            // NaN (blown-up orbit) must fail the audit, hence the negated form
            if !(d <= DRIFT_TOL) {
                return Err(if d.is_nan() { f64::INFINITY } else { d });
            }
            drift = drift.max(d);
        }
        if let Some(threshold) = stop_y {
            if max_abs_y >= threshold {
                let d = (energy(spec, &state) - e0).abs() / scale;
                if !(d <= DRIFT_TOL) {
                    return Err(if d.is_nan() { f64::INFINITY } else { d });
                }
                drift = drift.max(d);
                return Ok(TrajectorySummary { max_abs_y, energy_drift: drift, stopped_early: true });
            }
        }
    }
    Ok(TrajectorySummary { max_abs_y, energy_drift: drift, stopped_early: false })
}

fn run_ladder(
    spec: &HamiltonianSpec,
    init: SimState,
    horizon: f64,
    dt: f64,
    stop_y: Option<f64>,
) -> Result<TrajectorySummary> {
    // second-order scheme first, then the fourth-order fallback, then a
    // refined step
    let attempts = [(Scheme::Verlet, dt), (Scheme::Yoshida4, dt), (Scheme::Yoshida4, dt / 4.0)];
    let mut worst = 0.0f64;
    for (scheme, dt) in attempts {
        match run_scheme(spec, init, horizon, dt, scheme, stop_y) {
            Ok(summary) => return Ok(summary),
            Err(drift) => worst = worst.max(drift),
        }
    }
    Err(Error::IntegrationFailure { drift: worst })
}

/// Integrate from `init` over `horizon` with base step `dt`.
///
/// The trajectory is accepted only if some scheme of the fallback ladder
/// keeps the sampled relative energy drift within [`DRIFT_TOL`]; otherwise
/// the result is discarded and an error returned.
pub fn integrate(
    spec: &HamiltonianSpec,
    init: SimState,
    horizon: f64,
    dt: f64,
) -> Result<TrajectorySummary> {
    if !(dt > 0.0 && horizon > 0.0) {
        return Err(Error::Invalid("horizon and dt must be positive"));
    }
    run_ladder(spec, init, horizon, dt, None)
}

/// Detection policy for the instability threshold search. All numeric
/// values are tunable; the defaults are the documented reference policy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InstabilityPolicy {
    /// Initial `|y(0)|/|x(0)|`; must be well below 1.
    pub seed_ratio: f64,
    /// `max|y| ≥ growth_factor·y(0)` flags instability.
    pub growth_factor: f64,
    /// Integration time per trial.
    pub horizon: f64,
    /// Largest energy probed before declaring [`Ec::StableUpToCap`].
    pub energy_cap: f64,
    /// Relative width of the final threshold bracket.
    pub bisection_tol: f64,
    /// Base integration step.
    pub dt: f64,
    /// First energy of the geometric scan.
    pub scan_start: f64,
    /// Geometric scan factor (thresholds span orders of magnitude).
    pub scan_factor: f64,
}

impl Default for InstabilityPolicy {
    fn default() -> Self {
        InstabilityPolicy {
            seed_ratio: 1e-4,
            growth_factor: 100.0,
            horizon: 1e3,
            energy_cap: 1e3,
            bisection_tol: 1e-2,
            dt: 1e-3,
            scan_start: 1e-3,
            scan_factor: 1.5,
        }
    }
}

impl InstabilityPolicy {
    /// Guards against the parameter combinations that would spin the
    /// threshold search forever.
    pub fn validate(&self) -> Result<()> {
        let positive = self.seed_ratio > 0.0
            && self.growth_factor > 1.0
            && self.horizon > 0.0
            && self.energy_cap > 0.0
            && self.bisection_tol > 0.0
            && self.dt > 0.0
            && self.scan_start > 0.0;
        if !positive {
            return Err(Error::Invalid("instability policy fields must be positive"));
        }
        if !(self.scan_factor > 1.0) {
            return Err(Error::Invalid("scan_factor must exceed 1"));
        }
        Ok(())
    }
}

/// Rest amplitude `x₀` with `y₀ = seed_ratio·x₀` matching `energy_level`.
///
/// The rest energy is the potential along the seed ray, strictly increasing
/// in `x₀`, so plain bisection applies.
fn rest_amplitude(spec: &HamiltonianSpec, energy_level: f64, seed_ratio: f64) -> f64 {
    let w = |x: f64| spec.potential(x, seed_ratio * x);
    let mut hi = 1.0;
    while w(hi) < energy_level {
        hi *= 2.0;
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if w(mid) < energy_level {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Initial state of an instability trial: at rest, with `y₀ = seed_ratio·x₀`
/// and `x₀` placing the requested total energy.
pub fn rest_state(spec: &HamiltonianSpec, energy_level: f64, seed_ratio: f64) -> SimState {
    let x0 = rest_amplitude(spec, energy_level, seed_ratio);
    SimState::at_rest(x0, seed_ratio * x0)
}

/// Whether near-pure-longitudinal initial data at `energy_level` transfers
/// energy to the torsional component under `policy`.
pub fn is_unstable(
    spec: &HamiltonianSpec,
    energy_level: f64,
    policy: &InstabilityPolicy,
) -> Result<bool> {
    policy.validate()?;
    if energy_level <= 0.0 {
        return Ok(false);
    }
    let init = rest_state(spec, energy_level, policy.seed_ratio);
    let y0 = init.y;
    if y0 == 0.0 {
        return Ok(false);
    }
    let summary = run_ladder(
        spec,
        init,
        policy.horizon,
        policy.dt,
        Some(policy.growth_factor * y0),
    )?;
    Ok(summary.max_abs_y >= policy.growth_factor * y0)
}

/// Threshold energy, or a marker that no instability was found below the
/// search ceiling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Ec {
    Finite(f64),
    StableUpToCap,
}

impl Ec {
    pub fn finite(&self) -> Option<f64> {
        match self {
            Ec::Finite(e) => Some(*e),
            Ec::StableUpToCap => None,
        }
    }
}

/// One sample of the threshold curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdPoint {
    pub gamma: f64,
    pub e_c: Ec,
    /// Certified stable/unstable energies enclosing the threshold (for the
    /// cap case: the last stable scan energy and the cap).
    pub bracket: (f64, f64),
}

/// Locate the threshold energy of `spec` under `policy`: geometric upward
/// scan to the first unstable energy, then bisection to the policy's
/// relative bracket width.
pub fn critical_energy(spec: &HamiltonianSpec, policy: &InstabilityPolicy) -> Result<ThresholdPoint> {
    policy.validate()?;
    let mut stable = 0.0;
    let mut probe = policy.scan_start;
    let mut unstable = None;
    while probe <= policy.energy_cap {
        if is_unstable(spec, probe, policy)? {
            unstable = Some(probe);
            break;
        }
        stable = probe;
        probe *= policy.scan_factor;
    }
    let Some(mut hi) = unstable else {
        return Ok(ThresholdPoint {
            gamma: spec.gamma,
            e_c: Ec::StableUpToCap,
            bracket: (stable, policy.energy_cap),
        });
    };
    let mut lo = stable;
    while hi - lo > policy.bisection_tol * hi {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if is_unstable(spec, mid, policy)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(ThresholdPoint { gamma: spec.gamma, e_c: Ec::Finite(0.5 * (lo + hi)), bracket: (lo, hi) })
}

/// Discrete shape classification of a sampled curve, under a relative
/// dead-band for noise near the detector boundaries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CurveShape {
    pub nondecreasing: bool,
    pub nonincreasing: bool,
    /// No second difference below the (negative) dead-band.
    pub convex_ok: bool,
    /// No second difference above the (positive) dead-band.
    pub concave_ok: bool,
}

impl CurveShape {
    pub fn trend_label(&self) -> &'static str {
        match (self.nondecreasing, self.nonincreasing) {
            (true, true) => "flat",
            (true, false) => "increasing",
            (false, true) => "decreasing",
            (false, false) => "mixed",
        }
    }

    pub fn curvature_label(&self) -> &'static str {
        match (self.convex_ok, self.concave_ok) {
            (true, true) => "flat",
            (true, false) => "convex",
            (false, true) => "concave",
            (false, false) => "mixed",
        }
    }
}

/// Classify monotonicity and curvature of the finite samples with a
/// dead-band of `deadband` (fraction of the local value).
pub fn classify_curve(values: &[f64], deadband: f64) -> CurveShape {
    let mut shape =
        CurveShape { nondecreasing: true, nonincreasing: true, convex_ok: true, concave_ok: true };
    for pair in values.windows(2) {
        let band = deadband * 0.5 * (pair[0].abs() + pair[1].abs());
        if pair[1] - pair[0] < -band {
            shape.nondecreasing = false;
        }
        if pair[1] - pair[0] > band {
            shape.nonincreasing = false;
        }
    }
    for triple in values.windows(3) {
        let second = triple[2] - 2.0 * triple[1] + triple[0];
        let band = deadband * triple[1].abs();
        if second < -band {
            shape.convex_ok = false;
        }
        if second > band {
            shape.concave_ok = false;
        }
    }
    shape
}

/// The threshold curve over a `γ` grid, with its shape classification.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub points: Vec<ThresholdPoint>,
    /// Shape of the finite-threshold samples, dead-band 5%.
    pub shape: CurveShape,
}

/// Sample `E_c(γ)` on the grid `gamma_from, gamma_from + step, … ≤ gamma_to`.
pub fn sweep(
    system: System,
    gamma_from: f64,
    gamma_to: f64,
    step: f64,
    policy: &InstabilityPolicy,
) -> Result<SweepResult> {
    if !(step > 0.0) {
        return Err(Error::Invalid("gamma step must be positive"));
    }
    let mut points = Vec::new();
    let mut i = 0u32;
    loop {
        let gamma = gamma_from + step * i as f64;
        if gamma > gamma_to + 1e-9 * step {
            break;
        }
        points.push(critical_energy(&HamiltonianSpec::new(system, gamma)?, policy)?);
        i += 1;
    }
    let finite: Vec<f64> = points.iter().filter_map(|p| p.e_c.finite()).collect();
    Ok(SweepResult { points, shape: classify_curve(&finite, 0.05) })
}

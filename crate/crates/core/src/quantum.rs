//! Dense state vectors for generalized GHZ states and rank-1 product events.
//!
//! Index convention: qubit `k` (0-based here, 1-based in prose) is bit `k` of
//! the amplitude index, so `|q_{n-1} … q_1 q_0⟩` sits at `Σ q_k 2^k`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the number of qubits held in a dense vector (16384 amplitudes).
pub const DEFAULT_MAX_QUBITS: usize = 14;

/// Slack allowed on a probability before it is treated as a bug.
pub const PROBABILITY_SLACK: f64 = 1e-12;

const NORM_TOL: f64 = 1e-12;

/// Wraps an angle into `[0, 2π)`.
pub fn wrap_angle(theta: f64) -> f64 {
    let w = theta.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if w >= TAU {
        0.0
    } else {
        w
    }
}

/// Distance between two angles on the circle.
pub fn angle_distance(a: f64, b: f64) -> f64 {
    let d = wrap_angle(a - b);
    d.min(TAU - d)
}

/// Generalized GHZ state `h0|0…0⟩ + h1|1…1⟩` parameterised by `γ = |h1|/|h0|`
/// and the phase `θ_h` of `h1`. `h0` is taken real and non-negative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GhzState {
    n: usize,
    gamma: f64,
    theta_h: f64,
}

impl GhzState {
    pub fn new(n: usize, gamma: f64, theta_h: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("a GHZ state needs at least one qubit".into()));
        }
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "γ = {gamma} is degenerate; need a finite positive amplitude ratio"
            )));
        }
        if !theta_h.is_finite() {
            return Err(Error::InvalidArgument(format!("θ_h = {theta_h} is not finite")));
        }
        Ok(GhzState { n, gamma, theta_h: wrap_angle(theta_h) })
    }

    /// The standard GHZ state `(|0…0⟩ + |1…1⟩)/√2`.
    pub fn standard(n: usize) -> Result<Self> {
        Self::new(n, 1.0, 0.0)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn theta_h(&self) -> f64 {
        self.theta_h
    }

    /// `|h0| = 1/√(1+γ²)`.
    pub fn h0_abs(&self) -> f64 {
        1.0 / self.gamma.hypot(1.0)
    }

    /// `|h1| = γ/√(1+γ²)`.
    pub fn h1_abs(&self) -> f64 {
        self.gamma / self.gamma.hypot(1.0)
    }

    pub fn h0(&self) -> Complex64 {
        Complex64::new(self.h0_abs(), 0.0)
    }

    pub fn h1(&self) -> Complex64 {
        Complex64::from_polar(self.h1_abs(), self.theta_h)
    }
}

/// Single-qubit measurement direction `c0|0⟩ + c1 e^{iφ}|1⟩` with `c0, c1 ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SingleQubitBasis {
    c0: f64,
    c1: f64,
    phi: f64,
}

impl SingleQubitBasis {
    pub fn new(c0: f64, c1: f64, phi: f64) -> Result<Self> {
        if !(c0.is_finite() && c1.is_finite() && phi.is_finite()) || c0 < 0.0 || c1 < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "basis amplitudes must be finite and non-negative, got ({c0}, {c1}, {phi})"
            )));
        }
        let norm = c0 * c0 + c1 * c1;
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidArgument(format!("basis not normalized: c0² + c1² = {norm}")));
        }
        Ok(SingleQubitBasis { c0, c1, phi: wrap_angle(phi) })
    }

    /// Normalizes `(c0, c1)` from the ratio `c0/c1`.
    pub fn from_ratio(ratio: f64, phi: f64) -> Result<Self> {
        if !(ratio.is_finite() && ratio > 0.0) {
            return Err(Error::InvalidArgument(format!("amplitude ratio {ratio} must be finite and positive")));
        }
        let norm = ratio.hypot(1.0);
        Self::new(ratio / norm, 1.0 / norm, phi)
    }

    /// `c0 = cos u`, `c1 = sin u` for `u ∈ [0, π/2]`.
    pub fn from_polar_angle(u: f64, phi: f64) -> Result<Self> {
        let (s, c) = u.sin_cos();
        Self::new(c.abs(), s.abs(), phi)
    }

    pub fn balanced(phi: f64) -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        SingleQubitBasis { c0: h, c1: h, phi: wrap_angle(phi) }
    }

    /// `|+x⟩ = (|0⟩ + |1⟩)/√2`.
    pub fn plus_x() -> Self {
        Self::balanced(0.0)
    }

    /// `|+y⟩ = (|0⟩ + i|1⟩)/√2`.
    pub fn plus_y() -> Self {
        Self::balanced(PI / 2.0)
    }

    pub fn c0(&self) -> f64 {
        self.c0
    }

    pub fn c1(&self) -> f64 {
        self.c1
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Orthogonal direction `c1|0⟩ + c0 e^{i(φ+π)}|1⟩`.
    pub fn complement(&self) -> Self {
        SingleQubitBasis { c0: self.c1, c1: self.c0, phi: wrap_angle(self.phi + PI) }
    }

    pub fn vector(&self) -> [Complex64; 2] {
        [Complex64::new(self.c0, 0.0), Complex64::from_polar(self.c1, self.phi)]
    }
}

/// Identical per-site measurement settings: the `a` and `b` directions.
/// The `b̄` direction is always the complement of `b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocalSettings {
    pub a: SingleQubitBasis,
    pub b: SingleQubitBasis,
}

impl LocalSettings {
    pub fn new(a: SingleQubitBasis, b: SingleQubitBasis) -> Self {
        LocalSettings { a, b }
    }

    pub fn b_bar(&self) -> SingleQubitBasis {
        self.b.complement()
    }
}

/// A rank-1 product projector, one direction per qubit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Event {
    bases: Vec<SingleQubitBasis>,
}

impl Event {
    pub fn new(bases: Vec<SingleQubitBasis>) -> Self {
        Event { bases }
    }

    /// `on` on every qubit whose bit is set in `mask`, `off` elsewhere.
    pub fn from_mask(n: usize, mask: u64, on: SingleQubitBasis, off: SingleQubitBasis) -> Self {
        let bases = (0..n).map(|k| if mask >> k & 1 == 1 { on } else { off }).collect();
        Event { bases }
    }

    pub fn uniform(n: usize, basis: SingleQubitBasis) -> Self {
        Event { bases: vec![basis; n] }
    }

    pub fn bases(&self) -> &[SingleQubitBasis] {
        &self.bases
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    /// The product vector `⊗_k |φ_k⟩` in little-endian order.
    pub fn product_vector(&self) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(1 << self.bases.len());
        out.push(Complex64::new(1.0, 0.0));
        for basis in &self.bases {
            let [v0, v1] = basis.vector();
            let len = out.len();
            out.extend_from_within(..);
            for j in 0..len {
                let base = out[j];
                out[j] = base * v0;
                out[j + len] = base * v1;
            }
        }
        out
    }
}

/// Dense pure state of `n` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn from_amplitudes(n: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        if n > DEFAULT_MAX_QUBITS {
            return Err(Error::Resource { what: "qubits", requested: n, limit: DEFAULT_MAX_QUBITS });
        }
        if amplitudes.len() != 1 << n {
            return Err(Error::DimensionMismatch { expected: 1 << n, actual: amplitudes.len() });
        }
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidArgument(format!("state not normalized: ‖ψ‖² = {norm}")));
        }
        Ok(StateVector { n, amplitudes })
    }

    /// Product state `⊗_k |φ_k⟩`.
    pub fn product(bases: &[SingleQubitBasis]) -> Result<Self> {
        Self::from_amplitudes(bases.len(), Event::new(bases.to_vec()).product_vector())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }
}

pub fn make_ghz(state: &GhzState) -> Result<StateVector> {
    make_ghz_with_limit(state, DEFAULT_MAX_QUBITS)
}

pub fn make_ghz_with_limit(state: &GhzState, max_qubits: usize) -> Result<StateVector> {
    let n = state.n();
    if n > max_qubits {
        return Err(Error::Resource { what: "qubits", requested: n, limit: max_qubits });
    }
    let dim = 1usize << n;
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
    amplitudes[0] = state.h0();
    amplitudes[dim - 1] = state.h1();
    Ok(StateVector { n, amplitudes })
}

/// Rejects probabilities outside `[−slack, 1+slack]`, clamps the rest.
pub fn checked_probability(p: f64) -> Result<f64> {
    if !p.is_finite() || !(-PROBABILITY_SLACK..=1.0 + PROBABILITY_SLACK).contains(&p) {
        return Err(Error::Numeric(format!("probability {p} outside [0, 1]")));
    }
    Ok(p.clamp(0.0, 1.0))
}

/// `|⟨φ_e|ψ⟩|²`.
pub fn event_probability(psi: &StateVector, event: &Event) -> Result<f64> {
    if event.len() != psi.n() {
        return Err(Error::DimensionMismatch { expected: psi.n(), actual: event.len() });
    }
    let overlap: Complex64 = event
        .product_vector()
        .iter()
        .zip(psi.amplitudes())
        .map(|(phi, amp)| phi.conj() * amp)
        .sum();
    checked_probability(overlap.norm_sqr())
}

/// Event families of an `[n;|α|,|β|]` scenario under symmetric settings.
/// Their probabilities only depend on the subset size, not on the subset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EventClass {
    /// `b` on a subset of the given size, `a` on the rest.
    AlphaZero(usize),
    /// `b̄` on a subset of the given size, `a` on the rest.
    BetaZero(usize),
    /// `a` on every qubit.
    Success,
}

/// Closed-form probability of an [`EventClass`] on a generalized GHZ state.
///
/// With `ϑ = (n−k)θ_a + kθ_b − θ_h` the `b`-on-`k` event has probability
/// `|b0^k a0^{n−k}|h0| + b1^k a1^{n−k}|h1| e^{iϑ}|²`; the `b̄` event swaps
/// `b0 ↔ b1` and adds `kπ` to the phase.
pub fn closed_form_event_probability(
    state: &GhzState,
    settings: &LocalSettings,
    class: EventClass,
) -> Result<f64> {
    let n = state.n();
    let (a, b) = (settings.a, settings.b);
    let (h0, h1) = (state.h0_abs(), state.h1_abs());
    let check_size = |k: usize| {
        if k > n {
            Err(Error::InvalidArgument(format!("subset size {k} exceeds n = {n}")))
        } else {
            Ok(k)
        }
    };
    let (m0, m1, phase) = match class {
        EventClass::AlphaZero(k) => {
            let k = check_size(k)?;
            let rest = (n - k) as i32;
            let ki = k as i32;
            let theta = (n - k) as f64 * a.phi() + k as f64 * b.phi() - state.theta_h();
            (b.c0().powi(ki) * a.c0().powi(rest), b.c1().powi(ki) * a.c1().powi(rest), theta)
        }
        EventClass::BetaZero(k) => {
            let k = check_size(k)?;
            let rest = (n - k) as i32;
            let ki = k as i32;
            // kπ reduced mod 2π before it enters the phase
            let parity = if k % 2 == 1 { PI } else { 0.0 };
            let theta = (n - k) as f64 * a.phi() + k as f64 * b.phi() - state.theta_h() + parity;
            (b.c1().powi(ki) * a.c0().powi(rest), b.c0().powi(ki) * a.c1().powi(rest), theta)
        }
        EventClass::Success => {
            let ni = n as i32;
            let theta = n as f64 * a.phi() - state.theta_h();
            (a.c0().powi(ni), a.c1().powi(ni), theta)
        }
    };
    let amp = Complex64::new(m0 * h0, 0.0) + Complex64::from_polar(m1 * h1, wrap_angle(phase));
    checked_probability(amp.norm_sqr())
}

/// Probability of a full-length rank-1 product event on `Vρ + (1−V)𝟙/2^n`.
pub fn mixed_event_probability(p_pure: f64, visibility: f64, n: usize) -> Result<f64> {
    if !(0.0..=1.0).contains(&visibility) {
        return Err(Error::InvalidArgument(format!("visibility {visibility} outside [0, 1]")));
    }
    let noise = 0.5f64.powi(n as i32);
    checked_probability(visibility * p_pure + (1.0 - visibility) * noise)
}

//! Quantum side of the generalized Hardy inequalities.
//!
//! `I[n;|α|,|β|;x,y] = F·p(a_{I_n}) − x·Σ_α p(b_α a_ᾱ) − y·Σ_β p(b̄_β a_β̄)`.
//! On the standard GHZ state with identical balanced bases of phases `θ_a`,
//! `θ_b` the value depends only on `θ1 = nθ_a` and `θ2 = θ_b − θ_a`.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{binom_f64, binom_rational, check_even_equal, coefficient_f, rational_to_f64, Rational, Scenario};
use crate::error::{Error, Result};
use crate::optimize::{CoordinateDescent, NelderMead};
use crate::paradox::{success_probability_closed, success_probability_exact};
use crate::quantum::{closed_form_event_probability, EventClass, GhzState, LocalSettings, SingleQubitBasis};

/// Points per axis of the coarse angle grid.
pub const GRID_SIZE: usize = 720;

/// Below this the symmetric maximum counts as "no violation".
pub const VIOLATION_TOL: f64 = 1e-12;

/// Tolerance for ties between threshold visibilities.
pub const VISIBILITY_TIE_TOL: f64 = 1e-9;

/// `tr[Î] = F − x·C(n,|α|) − y·C(n,|β|)`.
pub fn trace_bell(s: &Scenario) -> Result<Rational> {
    let f = coefficient_f(s)?.value;
    Ok(f - s.x() * binom_rational(s.n(), s.alpha())? - s.y() * binom_rational(s.n(), s.beta())?)
}

/// Weighted penalty mass `x·C(n,|α|) + y·C(n,|β|)`.
fn penalty_mass(s: &Scenario) -> Result<Rational> {
    Ok(s.x() * binom_rational(s.n(), s.alpha())? + s.y() * binom_rational(s.n(), s.beta())?)
}

/// The symmetric-family objective with its coefficients evaluated once.
#[derive(Debug, Clone, Copy)]
struct Symmetric {
    scale: f64,
    f: f64,
    pa: f64,
    pb: f64,
    alpha: f64,
    beta: f64,
    beta_phase: f64,
}

impl Symmetric {
    fn new(s: &Scenario) -> Result<Self> {
        let f = rational_to_f64(coefficient_f(s)?.value);
        Ok(Symmetric {
            scale: 0.5f64.powi(s.n() as i32),
            f,
            pa: rational_to_f64(s.x()) * binom_f64(s.n(), s.alpha()),
            pb: rational_to_f64(s.y()) * binom_f64(s.n(), s.beta()),
            alpha: s.alpha() as f64,
            beta: s.beta() as f64,
            // |β|π mod 2π
            beta_phase: if s.beta() % 2 == 1 { PI } else { 0.0 },
        })
    }

    fn eval(&self, t1: f64, t2: f64) -> f64 {
        self.scale
            * (self.f * (1.0 + t1.cos())
                - self.pa * (1.0 + (t1 + self.alpha * t2).cos())
                - self.pb * (1.0 + (t1 + self.beta * t2 + self.beta_phase).cos()))
    }
}

/// Quantum value on the standard GHZ state with identical balanced bases.
pub fn symmetric_qm_value(s: &Scenario, theta1: f64, theta2: f64) -> Result<f64> {
    Ok(Symmetric::new(s)?.eval(theta1, theta2))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QmMax {
    pub value: f64,
    pub theta1: f64,
    pub theta2: f64,
}

fn grid_angle(i: usize) -> f64 {
    TAU * i as f64 / GRID_SIZE as f64
}

/// Maximum of [`symmetric_qm_value`] over `[0, 2π)²`.
///
/// A fixed 720×720 grid (ties go to the lowest `(i, j)`) seeds coordinate
/// descent with golden-section line searches. The result does not depend on
/// thread scheduling.
pub fn maximize_qm(s: &Scenario) -> Result<QmMax> {
    let obj = Symmetric::new(s)?;
    let (best, bi, bj) = (0..GRID_SIZE)
        .into_par_iter()
        .map(|i| {
            let t1 = grid_angle(i);
            let mut best = (f64::NEG_INFINITY, i, 0);
            for j in 0..GRID_SIZE {
                let v = obj.eval(t1, grid_angle(j));
                if v > best.0 {
                    best = (v, i, j);
                }
            }
            best
        })
        .reduce(
            || (f64::NEG_INFINITY, usize::MAX, usize::MAX),
            |a, b| if b.0 > a.0 || (b.0 == a.0 && (b.1, b.2) < (a.1, a.2)) { b } else { a },
        );
    let cd = CoordinateDescent {
        radius: TAU / GRID_SIZE as f64,
        line_tol: 1e-13,
        step_tol: 1e-12,
        max_sweeps: 20_000,
    };
    let opt = cd.maximize(|p| obj.eval(p[0], p[1]), &[grid_angle(bi), grid_angle(bj)]);
    let value = opt.value.max(best);
    Ok(QmMax { value, theta1: opt.point[0].rem_euclid(TAU), theta2: opt.point[1].rem_euclid(TAU) })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VisibilityReport {
    pub scenario: Scenario,
    #[serde(with = "crate::combinatorics::rational_serde")]
    pub trace_value: Rational,
    pub qm_max: f64,
    pub theta1_star: f64,
    pub theta2_star: f64,
    /// `None` when the symmetric family does not violate the inequality.
    pub v_thr: Option<f64>,
    #[serde(with = "crate::combinatorics::rational_serde")]
    pub v_prime: Rational,
    pub lower_bound: f64,
    /// Closed form, available for `|α| = |β|` even with unit weights.
    #[serde(with = "crate::combinatorics::rational_serde::option")]
    pub closed_form: Option<Rational>,
}

impl VisibilityReport {
    pub fn violates(&self) -> bool {
        self.v_thr.is_some()
    }

    pub fn closed_form_f64(&self) -> Option<f64> {
        self.closed_form.map(rational_to_f64)
    }

    /// `v_thr − (1 − 2/(1+V′))`.
    pub fn bound_gap(&self) -> Option<f64> {
        self.v_thr.map(|v| v - self.lower_bound)
    }
}

/// `V′ = (x·C(n,|α|) + y·C(n,|β|))/F`.
pub fn v_prime(s: &Scenario) -> Result<Rational> {
    Ok(penalty_mass(s)? / coefficient_f(s)?.value)
}

/// Threshold visibility `|tr|/(|tr| + 2^n·I_max)` together with its bounds.
pub fn threshold_visibility(s: &Scenario) -> Result<VisibilityReport> {
    let trace_value = trace_bell(s)?;
    let qm = maximize_qm(s)?;
    let tr = rational_to_f64(trace_value).abs();
    let v_thr = (qm.value > VIOLATION_TOL).then(|| tr / (tr + 2f64.powi(s.n() as i32) * qm.value));
    let vp = v_prime(s)?;
    let closed_form = if s.is_even_equal() && s.has_unit_weights() {
        Some(v_thr_closed_qq(s.n(), s.alpha())?)
    } else {
        None
    };
    Ok(VisibilityReport {
        scenario: s.clone(),
        trace_value,
        qm_max: qm.value,
        theta1_star: qm.theta1,
        theta2_star: qm.theta2,
        v_thr,
        v_prime: vp,
        lower_bound: 1.0 - 2.0 / (1.0 + rational_to_f64(vp)),
        closed_form,
    })
}

/// `V_thr[n;q,q;1,1]` in closed form, cross-checked against the `q = 2` form.
pub fn v_thr_closed_qq(n: usize, q: usize) -> Result<Rational> {
    check_even_equal(n, q)?;
    let h = n / 2;
    let c = binom_rational(n, q)?;
    let lo = binom_rational(h, q)?;
    let hi = binom_rational(n - h, q)?;
    let two = Rational::from_integer(2);
    let general = (two * c - lo - hi) / (two * c + lo + hi);
    if q == 2 {
        let special = v_thr_closed_q2(n);
        if special != general {
            return Err(Error::Numeric(format!("closed forms disagree at n = {n}: {general} vs {special}")));
        }
    }
    Ok(general)
}

/// `(3k−1)/(5k−3)` with `k = ⌊(n+1)/2⌋`.
pub fn v_thr_closed_q2(n: usize) -> Rational {
    let k = n.div_ceil(2) as i128;
    Rational::new(3 * k - 1, 5 * k - 3)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HelperBounds {
    #[serde(with = "crate::combinatorics::rational_serde")]
    pub w: Rational,
    /// Only defined for `|β| = 1`.
    #[serde(with = "crate::combinatorics::rational_serde::option")]
    pub u: Option<Rational>,
}

/// `W = (C(n,|α|)+C(n,|β|))/(2^{−|α|}C(n,|α|)+2^{−|β|}C(n,|β|))` and
/// `U = (C(n,|α|)+n)/(n−|α|+1)`.
pub fn helper_bounds(n: usize, alpha: usize, beta: usize) -> Result<HelperBounds> {
    if alpha > n || beta > n || beta == 0 || alpha == 0 {
        return Err(Error::InvalidArgument(format!("subset sizes ({alpha}, {beta}) invalid for n = {n}")));
    }
    if alpha > 120 || beta > 120 {
        return Err(Error::Overflow(format!("2^{} does not fit", alpha.max(beta))));
    }
    let ca = binom_rational(n, alpha)?;
    let cb = binom_rational(n, beta)?;
    let pow = |k: usize| Rational::new(1, 1i128 << k);
    let w = (ca + cb) / (pow(alpha) * ca + pow(beta) * cb);
    let u = (beta == 1).then(|| (ca + Rational::from_integer(n as i128)) / Rational::from_integer((n - alpha + 1) as i128));
    Ok(HelperBounds { w, u })
}

/// Valid `(|α|, |β|)` pairs with unit weights, ascending.
pub fn valid_pairs(n: usize) -> Vec<(usize, usize)> {
    (2..=n).flat_map(|a| (1..=a).filter(move |&b| a + b <= n + 1).map(move |b| (a, b))).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedChoice {
    pub alpha: usize,
    pub beta: usize,
    pub v_thr: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimalityReport {
    pub n: usize,
    pub winner: RankedChoice,
    /// Choices within [`VISIBILITY_TIE_TOL`] of the winner, winner included.
    pub ties: Vec<(usize, usize)>,
    /// Violating choices by increasing `v_thr`, then `(|α|, |β|)`.
    pub ranked: Vec<RankedChoice>,
    /// Choices whose symmetric maximum does not exceed zero.
    pub no_violation: Vec<(usize, usize)>,
}

/// Smallest threshold visibility over every valid `(|α|, |β|)` with `x = y = 1`.
pub fn optimality_search(n: usize) -> Result<OptimalityReport> {
    if !(3..=10).contains(&n) {
        return Err(Error::InvalidArgument(format!("optimality search needs 3 ≤ n ≤ 10, got {n}")));
    }
    let mut ranked = Vec::new();
    let mut no_violation = Vec::new();
    for (alpha, beta) in valid_pairs(n) {
        match threshold_visibility(&Scenario::new(n, alpha, beta)?)?.v_thr {
            Some(v_thr) => ranked.push(RankedChoice { alpha, beta, v_thr }),
            None => no_violation.push((alpha, beta)),
        }
    }
    ranked.sort_by(|p, q| p.v_thr.total_cmp(&q.v_thr).then((p.alpha, p.beta).cmp(&(q.alpha, q.beta))));
    let winner = ranked.first().cloned().ok_or_else(|| Error::Numeric(format!("no violating choice for n = {n}")))?;
    let ties = ranked
        .iter()
        .filter(|c| c.v_thr - winner.v_thr <= VISIBILITY_TIE_TOL)
        .map(|c| (c.alpha, c.beta))
        .collect();
    Ok(OptimalityReport { n, winner, ties, ranked, no_violation })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub scenario: Scenario,
    pub gamma: f64,
    pub success_probability: f64,
    pub epsilon: f64,
    #[serde(with = "crate::combinatorics::rational_serde::option")]
    pub exact: Option<Rational>,
}

/// Largest per-event error `ε` with `F·p − (x·C(n,|α|)+y·C(n,|β|))·ε > 0`.
pub fn epsilon_tolerance(s: &Scenario, gamma: f64) -> Result<Tolerance> {
    let p = success_probability_closed(s, gamma)?;
    let f = coefficient_f(s)?.value;
    let mass = penalty_mass(s)?;
    let exact = success_probability_exact(s, gamma).map(|pe| f * pe / mass);
    let epsilon = exact.map_or(rational_to_f64(f) * p / rational_to_f64(mass), rational_to_f64);
    Ok(Tolerance { scenario: s.clone(), gamma, success_probability: p, epsilon, exact })
}

/// Result of the wider cross-check search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WideSearch {
    pub scenario: Scenario,
    pub symmetric: f64,
    pub wide: f64,
    /// `ln γ, u_a, u_b, φ_a, φ_b` at the best point; bases are `cos u|0⟩ + sin u e^{iφ}|1⟩`.
    pub point: Vec<f64>,
    pub starts: usize,
}

impl WideSearch {
    pub fn exceedance(&self) -> f64 {
        self.wide - self.symmetric
    }
}

/// Inequality value for a generalized GHZ state and identical, otherwise free, local bases.
pub fn wide_value(s: &Scenario, params: &[f64]) -> Result<f64> {
    let [log_gamma, ua, ub, pa, pb] = params else {
        return Err(Error::DimensionMismatch { expected: 5, actual: params.len() });
    };
    let state = GhzState::new(s.n(), log_gamma.exp(), 0.0)?;
    let settings =
        LocalSettings::new(SingleQubitBasis::from_polar_angle(*ua, *pa)?, SingleQubitBasis::from_polar_angle(*ub, *pb)?);
    let f = rational_to_f64(coefficient_f(s)?.value);
    let ps = closed_form_event_probability(&state, &settings, EventClass::Success)?;
    let pa = closed_form_event_probability(&state, &settings, EventClass::AlphaZero(s.alpha()))?;
    let pb = closed_form_event_probability(&state, &settings, EventClass::BetaZero(s.beta()))?;
    Ok(f * ps
        - rational_to_f64(s.x()) * binom_f64(s.n(), s.alpha()) * pa
        - rational_to_f64(s.y()) * binom_f64(s.n(), s.beta()) * pb)
}

/// Nelder–Mead over `γ`, amplitudes and phases from `starts` seeded random
/// points plus the symmetric optimum. Deterministic for a given seed.
pub fn maximize_qm_wide(s: &Scenario, starts: usize, seed: u64) -> Result<WideSearch> {
    let sym = maximize_qm(s)?;
    let n = s.n() as f64;
    let quarter = PI / 4.0;
    let mut points = vec![vec![0.0, quarter, quarter, sym.theta1 / n, sym.theta1 / n + sym.theta2]];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..starts {
        points.push(vec![
            rng.random_range(-2.0..2.0),
            rng.random_range(0.0..PI / 2.0),
            rng.random_range(0.0..PI / 2.0),
            rng.random_range(0.0..TAU),
            rng.random_range(0.0..TAU),
        ]);
    }
    // ln γ is clamped so the state stays well conditioned
    let objective = |p: &[f64]| {
        let mut q = p.to_vec();
        q[0] = q[0].clamp(-20.0, 20.0);
        wide_value(s, &q).unwrap_or(f64::NEG_INFINITY)
    };
    let nm = NelderMead { initial_step: 0.3, max_evals: 6_000, f_tol: 1e-15 };
    let best = points
        .par_iter()
        .enumerate()
        .map(|(k, start)| {
            let first = nm.maximize(objective, start);
            // one restart shakes the simplex out of premature collapse
            let opt = nm.maximize(objective, &first.point);
            (opt.value, k, opt.point)
        })
        .reduce_with(|a, b| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a })
        .expect("at least the symmetric start");
    let mut point = best.2;
    point[0] = point[0].clamp(-20.0, 20.0);
    Ok(WideSearch { scenario: s.clone(), symmetric: sym.value, wide: best.0, point, starts: starts + 1 })
}

//! Quantum construction of `[n;|α|,|β|]` Hardy paradoxes on generalized GHZ states.
//!
//! Every site measures the same pair of directions. The phases and amplitude
//! ratios are solved in closed form so that all zero constraints vanish:
//!
//! * Case 1, `|β| < |α|`, branch constants `m1 = m2 = 0`.
//! * Case 2, `|β| = |α|` even, branch constants `m1 = 0`, `m2 = |β|/2`, with
//!   `nθ_a − θ_h = 0` and balanced `b` amplitudes.

use std::f64::consts::PI;

use itertools::Itertools;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{Rational, Scenario};
use crate::error::{Error, Result};
use crate::quantum::{
    event_probability, make_ghz, wrap_angle, Event, GhzState, SingleQubitBasis, DEFAULT_MAX_QUBITS,
};

pub use crate::quantum::LocalSettings;

/// Zero constraints must hold to this precision on the constructed state.
pub const ZERO_RESIDUAL_TOL: f64 = 1e-10;

/// Success probabilities closer than this are treated as equal when ranking.
pub const TIE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstraintKind {
    /// `p(b_α a_ᾱ) = 0`
    Alpha,
    /// `p(b̄_β a_β̄) = 0`
    Beta,
}

/// One zero constraint: which family, and the subset (0-based qubit indices).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroConstraint {
    pub kind: ConstraintKind,
    pub subset: Vec<usize>,
}

impl ZeroConstraint {
    pub fn mask(&self) -> u64 {
        self.subset.iter().fold(0, |m, &k| m | 1 << k)
    }

    pub fn event(&self, n: usize, settings: &LocalSettings) -> Event {
        let on = match self.kind {
            ConstraintKind::Alpha => settings.b,
            ConstraintKind::Beta => settings.b_bar(),
        };
        Event::from_mask(n, self.mask(), on, settings.a)
    }
}

/// All `C(n,|α|) + C(n,|β|)` zero constraints, `α` family first, subsets in
/// lexicographic order.
pub fn zero_constraints(s: &Scenario) -> Vec<ZeroConstraint> {
    let family = |kind, size| {
        (0..s.n()).combinations(size).map(move |subset| ZeroConstraint { kind, subset })
    };
    family(ConstraintKind::Alpha, s.alpha())
        .chain(family(ConstraintKind::Beta, s.beta()))
        .collect()
}

pub fn zero_constraint_events(s: &Scenario, settings: &LocalSettings) -> Vec<Event> {
    zero_constraints(s).iter().map(|c| c.event(s.n(), settings)).collect()
}

/// Which closed-form solution applies, with the branch constants used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "case")]
pub enum ConstructionCase {
    Case1 { m1: i64, m2: i64 },
    Case2 { m1: i64, m2: i64 },
}

pub fn construction_case(s: &Scenario) -> Result<ConstructionCase> {
    let (n, a, b) = (s.n(), s.alpha(), s.beta());
    if b < a {
        return Ok(ConstructionCase::Case1 { m1: 0, m2: 0 });
    }
    if a % 2 != 0 {
        return Err(Error::InvalidScenario(format!(
            "|α| = |β| = {a} is odd; the equal-size construction needs an even size"
        )));
    }
    if a >= n {
        return Err(Error::InvalidScenario(format!(
            "|α| = |β| = n = {n} leaves no qubit for the a-ratio γ^(1/(n−|α|))"
        )));
    }
    Ok(ConstructionCase::Case2 { m1: 0, m2: (b / 2) as i64 })
}

/// `τ0 = |α||β|/(|α|−|β|)`, exact. Only meaningful for `|β| < |α|`.
pub fn tau0(s: &Scenario) -> Rational {
    let (a, b) = (s.alpha() as i128, s.beta() as i128);
    Rational::new(a * b, a - b)
}

/// `n(|α|+|β|) − 2|α||β|`, the denominator of every Case-1 exponent.
pub fn case1_exponent_denominator(s: &Scenario) -> i64 {
    let (n, a, b) = (s.n() as i64, s.alpha() as i64, s.beta() as i64);
    n * (a + b) - 2 * a * b
}

/// `rπ` reduced into `[0, 2π)` exactly before conversion to floating point.
fn rational_pi(r: Rational) -> f64 {
    let period = 2 * r.denom();
    let reduced = r.numer().rem_euclid(period);
    PI * reduced.to_f64().expect("small") / r.denom().to_f64().expect("small")
}

fn check_gamma(gamma: f64) -> Result<()> {
    if gamma.is_finite() && gamma > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("γ = {gamma} must be finite and positive")))
    }
}

/// Solves the angle and norm equations for identical local settings.
pub fn solve_settings(s: &Scenario, gamma: f64, theta_h: f64) -> Result<LocalSettings> {
    check_gamma(gamma)?;
    let n = s.n() as f64;
    let (a, b) = (s.alpha() as f64, s.beta() as f64);
    match construction_case(s)? {
        ConstructionCase::Case1 { .. } => {
            let denom = case1_exponent_denominator(s) as f64;
            // θ_a from nθ_a − θ_h = (1 − τ0)π, θ_b − θ_a = |β|π/(|α|−|β|)
            let shift = PI - rational_pi(tau0(s));
            let theta_a = (theta_h + shift) / n;
            let theta_b = theta_a + b * PI / (a - b);
            let a_ratio = gamma.powf((a + b) / denom);
            let b_ratio = gamma.powf((a - b) / denom);
            Ok(LocalSettings::new(
                SingleQubitBasis::from_ratio(a_ratio, theta_a)?,
                SingleQubitBasis::from_ratio(b_ratio, theta_b)?,
            ))
        }
        ConstructionCase::Case2 { .. } => {
            let theta_a = theta_h / n;
            let theta_b = (PI + theta_h - (n - a) * theta_a) / a;
            let a_ratio = gamma.powf(1.0 / (n - a));
            Ok(LocalSettings::new(
                SingleQubitBasis::from_ratio(a_ratio, theta_a)?,
                SingleQubitBasis::balanced(theta_b),
            ))
        }
    }
}

/// Success probability from the κ parameterisation of the construction.
pub fn success_probability_closed(s: &Scenario, gamma: f64) -> Result<f64> {
    check_gamma(gamma)?;
    let n = s.n() as i32;
    let (a, b) = (s.alpha() as f64, s.beta() as f64);
    let g2 = gamma * gamma;
    match construction_case(s)? {
        ConstructionCase::Case1 { .. } => {
            let denom = case1_exponent_denominator(s) as f64;
            let phase = rational_pi(tau0(s));
            let kappa1 = gamma.powf(2.0 * a * b / denom);
            let kappa2 = gamma.powf(2.0 * (a + b) / denom);
            // |κ0 − κ1|² with κ0 = e^{iτ0π}
            let diff = (phase.cos() - kappa1).powi(2) + phase.sin().powi(2);
            Ok(g2 * diff / ((1.0 + g2) * (1.0 + kappa2).powi(n)))
        }
        ConstructionCase::Case2 { .. } => {
            let rest = s.n() as f64 - a;
            let kappa1 = gamma.powf(a / rest);
            let kappa2 = gamma.powf(2.0 / rest);
            Ok(g2 * (1.0 + kappa1).powi(2) / ((1.0 + g2) * (1.0 + kappa2).powi(n)))
        }
    }
}

/// Success probability from the τ parameterisation used in the optimality comparison.
pub fn success_probability_supplement(s: &Scenario, gamma: f64) -> Result<f64> {
    check_gamma(gamma)?;
    let n = s.n() as f64;
    let (a, b) = (s.alpha() as f64, s.beta() as f64);
    let g2 = gamma * gamma;
    let tau1 = |a: f64, b: f64| 2.0 * (a + b) / ((n - b) * a + (n - a) * b);
    match construction_case(s)? {
        ConstructionCase::Case1 { .. } => {
            let t1 = tau1(a, b);
            let e = num_complex::Complex64::from_polar(1.0, rational_pi(tau0(s)));
            let num = (e - gamma.powf(n * t1 / 2.0 - 1.0)).norm_sqr();
            Ok(g2 * num / ((1.0 + g2) * (1.0 + gamma.powf(t1)).powi(s.n() as i32)))
        }
        ConstructionCase::Case2 { .. } => {
            let t1 = tau1(a, a);
            let num = (1.0 + gamma.powf(n * t1 / 2.0 - 1.0)).powi(2);
            Ok(g2 * num / ((1.0 + g2) * (1.0 + gamma.powf(t1)).powi(s.n() as i32)))
        }
    }
}

/// Exact success probability when it is rational: `γ = 1` and `cos(τ0π)` rational.
pub fn success_probability_exact(s: &Scenario, gamma: f64) -> Option<Rational> {
    if gamma != 1.0 {
        return None;
    }
    let two_n = Rational::from_integer(1i128.checked_shl(s.n() as u32)?);
    match construction_case(s).ok()? {
        ConstructionCase::Case2 { .. } => Some(Rational::from_integer(2) / two_n),
        ConstructionCase::Case1 { .. } => {
            // (1 − cos τ0π)/2^n, cos rational only for denominators 1, 2, 3
            let t = tau0(s);
            let half_turns = t.numer().rem_euclid(2 * t.denom());
            let cos = match (*t.denom(), half_turns) {
                (1, 0) => Rational::from_integer(1),
                (1, _) => Rational::from_integer(-1),
                (2, _) => Rational::from_integer(0),
                (3, 1) | (3, 5) => Rational::new(1, 2),
                (3, 2) | (3, 4) => Rational::new(-1, 2),
                _ => return None,
            };
            Some((Rational::from_integer(1) - cos) / two_n)
        }
    }
}

/// A constructed paradox, evaluated on the dense state vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParadoxReport {
    pub scenario: Scenario,
    pub gamma: f64,
    pub theta_h: f64,
    pub settings: LocalSettings,
    pub case: ConstructionCase,
    pub constraint_count: usize,
    pub success_probability: f64,
    pub max_zero_constraint_residual: f64,
    /// `false` when the construction meets every zero constraint but the
    /// success event also vanishes (no paradox for this `γ`).
    pub paradox_holds: bool,
}

/// Solves the settings and evaluates every event on `make_ghz`.
///
/// Fails with [`Error::Numeric`] if a zero constraint exceeds [`ZERO_RESIDUAL_TOL`].
pub fn construct_paradox(s: &Scenario, gamma: f64, theta_h: f64) -> Result<ParadoxReport> {
    let case = construction_case(s)?;
    let settings = solve_settings(s, gamma, theta_h)?;
    let state = GhzState::new(s.n(), gamma, theta_h)?;
    let psi = make_ghz(&state)?;
    let mut max_residual = 0.0f64;
    let events = zero_constraint_events(s, &settings);
    for event in &events {
        max_residual = max_residual.max(event_probability(&psi, event)?);
    }
    if max_residual > ZERO_RESIDUAL_TOL {
        return Err(Error::Numeric(format!(
            "{s} at γ = {gamma}: zero-constraint residual {max_residual:e} exceeds {ZERO_RESIDUAL_TOL:e}"
        )));
    }
    let success = event_probability(&psi, &Event::uniform(s.n(), settings.a))?;
    Ok(ParadoxReport {
        scenario: s.clone(),
        gamma,
        theta_h: wrap_angle(theta_h),
        settings,
        case,
        constraint_count: events.len(),
        success_probability: success,
        max_zero_constraint_residual: max_residual,
        paradox_holds: success > TIE_TOL,
    })
}

/// `P^S_n = [1 + cos(π/(n−1))]/2^n`, the `[n;n,1]` value on the standard GHZ state.
pub fn standard_success(n: usize) -> f64 {
    (1.0 + (PI / (n as f64 - 1.0)).cos()) / 2f64.powi(n as i32)
}

/// `P^G_n = 1/2^{n−1}`, the `|α| = |β|` even value on the standard GHZ state.
pub fn generalized_success(n: usize) -> f64 {
    1.0 / 2f64.powi(n as i32 - 1)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub n: usize,
    pub p_standard: f64,
    pub p_generalized: f64,
    /// `[n;n,1]` built and evaluated on the state vector (γ = 1).
    pub p_standard_constructed: Option<f64>,
    /// `[n;2,2]` built and evaluated on the state vector (γ = 1).
    pub p_generalized_constructed: Option<f64>,
    pub generalized_exceeds_standard: bool,
}

pub fn sweep_success(n_min: usize, n_max: usize) -> Result<Vec<SweepRow>> {
    if n_min < 3 || n_min > n_max {
        return Err(Error::InvalidArgument(format!(
            "sweep range must satisfy 3 ≤ n_min ≤ n_max, got {n_min}..{n_max}"
        )));
    }
    (n_min..=n_max)
        .map(|n| {
            let constructed = |a, b| -> Result<Option<f64>> {
                if n > DEFAULT_MAX_QUBITS {
                    return Ok(None);
                }
                Ok(Some(construct_paradox(&Scenario::new(n, a, b)?, 1.0, 0.0)?.success_probability))
            };
            let p_standard = standard_success(n);
            let p_generalized = generalized_success(n);
            Ok(SweepRow {
                n,
                p_standard,
                p_generalized,
                p_standard_constructed: constructed(n, 1)?,
                p_generalized_constructed: constructed(2, 2)?,
                generalized_exceeds_standard: p_generalized > p_standard,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChoiceCandidate {
    pub alpha: usize,
    pub beta: usize,
    pub probability: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BestChoice {
    pub n: usize,
    pub gamma: f64,
    pub alpha: usize,
    pub beta: usize,
    pub probability: f64,
    /// Every `(|α|, |β|)` within [`TIE_TOL`] of the best value, winner included.
    pub ties: Vec<(usize, usize)>,
    /// Every constructible pair, ascending `|α|` then `|β|`.
    pub candidates: Vec<ChoiceCandidate>,
}

impl BestChoice {
    pub fn is_degenerate(&self) -> bool {
        self.ties.len() > 1
    }
}

/// Every constructible `(|α|, |β|)` for `n` qubits, ascending.
pub fn constructible_pairs(n: usize) -> Vec<(usize, usize)> {
    (2..=n)
        .flat_map(|a| (1..=a).map(move |b| (a, b)))
        .filter(|&(a, b)| a + b <= n + 1 && (b < a || (a % 2 == 0 && a < n)))
        .collect()
}

/// Exhaustive argmax of the constructed success probability over `(|α|, |β|)`.
pub fn best_paradox_choice(n: usize, gamma: f64) -> Result<BestChoice> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("n = {n} must be at least 3")));
    }
    check_gamma(gamma)?;
    let candidates = constructible_pairs(n)
        .into_iter()
        .map(|(alpha, beta)| {
            let probability = success_probability_closed(&Scenario::new(n, alpha, beta)?, gamma)?;
            Ok(ChoiceCandidate { alpha, beta, probability })
        })
        .collect::<Result<Vec<_>>>()?;
    // strict comparison keeps the smallest (|α|, |β|) among exact ties
    let best = candidates
        .iter()
        .fold(None::<&ChoiceCandidate>, |acc, c| match acc {
            Some(b) if c.probability <= b.probability => Some(b),
            _ => Some(c),
        })
        .expect("n ≥ 3 has constructible pairs");
    let ties = candidates
        .iter()
        .filter(|c| (best.probability - c.probability).abs() <= TIE_TOL)
        .map(|c| (c.alpha, c.beta))
        .collect::<Vec<_>>();
    let (alpha, beta) = ties[0];
    let probability = candidates.iter().find(|c| (c.alpha, c.beta) == (alpha, beta)).unwrap().probability;
    Ok(BestChoice { n, gamma, alpha, beta, probability, ties, candidates: candidates.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{angle_distance, closed_form_event_probability, EventClass};

    fn sc(n: usize, a: usize, b: usize) -> Scenario {
        Scenario::new(n, a, b).unwrap()
    }

    #[test]
    fn constraint_counts() {
        assert_eq!(zero_constraints(&sc(3, 2, 2)).len(), 6);
        assert_eq!(zero_constraints(&sc(3, 3, 1)).len(), 4);
        assert_eq!(zero_constraints(&sc(5, 2, 1)).len(), 15);
    }

    #[test]
    fn constraints_are_lexicographic() {
        let c = zero_constraints(&sc(4, 2, 1));
        let alpha: Vec<_> = c.iter().filter(|z| z.kind == ConstraintKind::Alpha).map(|z| z.subset.clone()).collect();
        assert_eq!(alpha, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(c[6].subset, vec![0]);
        assert_eq!(c[6].kind, ConstraintKind::Beta);
    }

    #[test]
    fn three_qubit_settings_are_x_and_y() {
        let st = solve_settings(&sc(3, 2, 2), 1.0, 0.0).unwrap();
        let x = SingleQubitBasis::plus_x();
        let y = SingleQubitBasis::plus_y();
        assert!((st.a.c0() - x.c0()).abs() < 1e-15 && angle_distance(st.a.phi(), x.phi()) < 1e-15);
        assert!((st.b.c0() - y.c0()).abs() < 1e-15 && angle_distance(st.b.phi(), y.phi()) < 1e-15);
        let report = construct_paradox(&sc(3, 2, 2), 1.0, 0.0).unwrap();
        assert!((report.success_probability - 0.25).abs() < 1e-15);
        assert_eq!(report.constraint_count, 6);
        assert_eq!(report.case, ConstructionCase::Case2 { m1: 0, m2: 1 });
    }

    #[test]
    fn standard_paradox_matches_known_value() {
        for n in 3..=10 {
            let p = construct_paradox(&sc(n, n, 1), 1.0, 0.0).unwrap().success_probability;
            assert!((p - standard_success(n)).abs() < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn four_qubit_three_one() {
        let p = construct_paradox(&sc(4, 3, 1), 1.0, 0.0).unwrap().success_probability;
        assert!((p - 1.0 / 16.0).abs() < 1e-12);
        assert_eq!(success_probability_exact(&sc(4, 3, 1), 1.0), Some(Rational::new(1, 16)));
    }

    #[test]
    fn case2_gamma_two() {
        let s = sc(3, 2, 2);
        assert!((success_probability_closed(&s, 2.0).unwrap() - 0.16).abs() < 1e-15);
        let built = construct_paradox(&s, 2.0, 0.0).unwrap();
        assert!((built.success_probability - 0.16).abs() < 1e-12);
    }

    #[test]
    fn gamma_one_values() {
        for n in 3..=9 {
            for q in (2..n).step_by(2).filter(|q| 2 * q <= n + 1) {
                let p = success_probability_closed(&sc(n, q, q), 1.0).unwrap();
                assert!((p - generalized_success(n)).abs() < 1e-15);
            }
            for (a, b) in constructible_pairs(n).into_iter().filter(|(a, b)| b < a) {
                let expected = (1.0 - rational_pi(tau0(&sc(n, a, b))).cos()) / 2f64.powi(n as i32);
                let t = tau0(&sc(n, a, b)).to_f64().unwrap();
                let direct = (1.0 - (t * PI).cos()) / 2f64.powi(n as i32);
                let p = success_probability_closed(&sc(n, a, b), 1.0).unwrap();
                assert!((p - expected).abs() < 1e-15);
                assert!((p - direct).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn supplement_equals_main_form() {
        for (n, a, b, g) in [(5, 3, 2, 1.5), (7, 7, 1, 1.0), (6, 4, 1, 0.3), (9, 4, 4, 3.0)] {
            let s = sc(n, a, b);
            let main = success_probability_closed(&s, g).unwrap();
            let sup = success_probability_supplement(&s, g).unwrap();
            assert!((main - sup).abs() < 1e-12, "{s}: {main} vs {sup}");
        }
        assert!((success_probability_supplement(&sc(3, 2, 2), 1.0).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn construction_errors() {
        assert!(solve_settings(&sc(5, 3, 3), 1.0, 0.0).is_err());
        assert!(solve_settings(&sc(3, 2, 2), 0.0, 0.0).is_err());
        assert!(solve_settings(&sc(3, 2, 2), f64::NAN, 0.0).is_err());
        assert!(success_probability_closed(&sc(5, 3, 3), 1.0).is_err());
    }

    #[test]
    fn closed_forms_match_state_vector_across_grid() {
        for n in 3..=8 {
            for (a, b) in constructible_pairs(n) {
                for gamma in [0.5, 1.0, 2.0] {
                    let s = sc(n, a, b);
                    let report = construct_paradox(&s, gamma, 0.7).unwrap();
                    let main = success_probability_closed(&s, gamma).unwrap();
                    let sup = success_probability_supplement(&s, gamma).unwrap();
                    let st = GhzState::new(n, gamma, 0.7).unwrap();
                    let cf = closed_form_event_probability(&st, &report.settings, EventClass::Success).unwrap();
                    for v in [main, sup, cf] {
                        assert!((v - report.success_probability).abs() < 1e-12, "{s} γ={gamma}");
                    }
                    for k in [EventClass::AlphaZero(a), EventClass::BetaZero(b)] {
                        assert!(closed_form_event_probability(&st, &report.settings, k).unwrap() < 1e-10);
                    }
                }
            }
        }
    }

    #[test]
    fn vanishing_success_exactly_when_tau0_even_at_gamma_one() {
        // The m1 = m2 = 0 branch yields (1 − cos τ0π)/2^n at γ = 1, which is
        // zero whenever τ0 is an even integer, e.g. every [n;2,1].
        for n in 3..=8 {
            for (a, b) in constructible_pairs(n) {
                let s = sc(n, a, b);
                let even_int = b < a && {
                    let t = tau0(&s);
                    t.is_integer() && t.numer() % 2 == 0
                };
                for gamma in [0.5, 1.0, 2.0] {
                    let r = construct_paradox(&s, gamma, 0.0).unwrap();
                    assert_eq!(r.paradox_holds, !(even_int && gamma == 1.0), "{s} γ = {gamma}");
                }
            }
        }
    }

    #[test]
    fn tau0_odd_only_for_six_two() {
        for n in 3..=12 {
            for (a, b) in constructible_pairs(n).into_iter().filter(|(a, b)| b < a) {
                let t = tau0(&sc(n, a, b));
                let odd = t.is_integer() && t.numer() % 2 == 1;
                assert_eq!(odd, (a, b) == (6, 2), "[{n};{a},{b}]");
                let p = success_probability_closed(&sc(n, a, b), 1.0).unwrap();
                if odd {
                    assert!((p - generalized_success(n)).abs() < 1e-15);
                } else {
                    assert!(p < generalized_success(n) - 1e-15);
                }
            }
        }
    }

    #[test]
    fn case1_exponent_is_positive() {
        for n in 2..=12 {
            for a in 2..=n {
                for b in (1..a).filter(|b| a + b <= n + 1) {
                    assert!(case1_exponent_denominator(&sc(n, a, b)) > 0);
                }
            }
        }
    }

    #[test]
    fn sweep_values() {
        let rows = sweep_success(3, 10).unwrap();
        assert_eq!(rows.len(), 8);
        assert_eq!(rows[0].p_standard, 0.125);
        assert_eq!(rows[0].p_generalized, 0.25);
        assert!((rows[1].p_standard - 3.0 / 32.0).abs() < 1e-15);
        assert_eq!(rows[1].p_generalized, 0.125);
        assert!(rows.iter().all(|r| r.generalized_exceeds_standard));
        assert!(sweep_success(2, 4).is_err());
        assert!(sweep_success(5, 4).is_err());
    }

    #[test]
    fn best_choice_examples() {
        let b = best_paradox_choice(7, 0.5).unwrap();
        assert_eq!((b.alpha, b.beta), (4, 4));
        assert!(!b.is_degenerate());
        let b = best_paradox_choice(3, 2.0).unwrap();
        assert_eq!((b.alpha, b.beta), (2, 2));
        for n in 3..=10 {
            let b = best_paradox_choice(n, 1.0).unwrap();
            assert!((b.probability - generalized_success(n)).abs() < 1e-15);
            let even: Vec<_> = constructible_pairs(n).into_iter().filter(|(a, b)| a == b).collect();
            assert!(even.iter().all(|p| b.ties.contains(p)), "n = {n}: {:?}", b.ties);
            assert_eq!(b.is_degenerate(), n >= 7, "n = {n}: {:?}", b.ties);
        }
    }

    #[test]
    fn best_choice_off_balance_prefers_largest_even_size() {
        for n in 3..=10 {
            for gamma in [0.5, 2.0] {
                let q = 2 * ((n + 1) / 4);
                let b = best_paradox_choice(n, gamma).unwrap();
                assert_eq!((b.alpha, b.beta), (q, q), "n = {n}, γ = {gamma}");
            }
        }
    }
}

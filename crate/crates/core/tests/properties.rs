//! Property tests against independent oracles.

use std::f64::consts::TAU;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use hardy::combinatorics::{binom, coefficient_f};
use hardy::inequality::{maximize_qm, symmetric_qm_value, valid_pairs};
use hardy::lhv::{integer_rank, LhvOracle};
use hardy::paradox::{constructible_pairs, construct_paradox, success_probability_closed};
use hardy::quantum::{event_probability, make_ghz, mixed_event_probability, Event, GhzState, SingleQubitBasis};
use hardy::report::{fmt_sig12, round_sig12};
use hardy::{Rational, Scenario};

/// Rank by plain Gaussian elimination over arbitrary-precision rationals.
fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> =
        rows.iter().map(|r| r.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for i in 0..m.len() {
            if i != rank && !m[i][col].is_zero() {
                let factor = m[i][col].clone() / pivot.clone();
                let pivot_row = m[rank].clone();
                for (x, y) in m[i].iter_mut().zip(pivot_row).skip(col) {
                    *x -= factor.clone() * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn scenario_strategy(max_n: usize) -> impl Strategy<Value = Scenario> {
    (2..=max_n).prop_flat_map(|n| {
        let pairs = valid_pairs(n);
        (Just(n), 0..pairs.len()).prop_map(move |(n, i)| {
            let (a, b) = valid_pairs(n)[i];
            Scenario::new(n, a, b).unwrap()
        })
    })
}

fn constructible_strategy() -> impl Strategy<Value = Scenario> {
    (3usize..=8).prop_flat_map(|n| {
        (Just(n), 0..constructible_pairs(n).len()).prop_map(|(n, i)| {
            let (a, b) = constructible_pairs(n)[i];
            Scenario::new(n, a, b).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn binom_pascal_and_symmetry(m in 1u64..60, k in 0u64..60) {
        let k = k.min(m);
        prop_assert_eq!(binom(m, k).unwrap(), binom(m, m - k).unwrap());
        if k >= 1 {
            prop_assert_eq!(binom(m, k).unwrap(), binom(m - 1, k - 1).unwrap() + binom(m - 1, k).unwrap());
        }
    }

    #[test]
    fn f_is_min_over_splits(s in scenario_strategy(14), xn in 1i128..5, xd in 1i128..4, yn in 1i128..5, yd in 1i128..4) {
        let s = Scenario::weighted(s.n(), s.alpha(), s.beta(), Rational::new(xn, xd), Rational::new(yn, yd)).unwrap();
        let f = coefficient_f(&s).unwrap();
        let term = |m: usize| {
            s.x() * Rational::from_integer(binom(m as u64, s.alpha() as u64).unwrap() as i128)
                + s.y() * Rational::from_integer(binom((s.n() - m) as u64, s.beta() as u64).unwrap() as i128)
        };
        for m in 0..=s.n() {
            prop_assert!(f.value <= term(m));
        }
        prop_assert_eq!(term(f.minimizer), f.value);
    }

    #[test]
    fn classical_bound_zero_for_weighted(s in scenario_strategy(6), xn in 1i128..4, yn in 1i128..4, workers in 1usize..9) {
        let s = Scenario::weighted(s.n(), s.alpha(), s.beta(), Rational::new(xn, 2), Rational::new(yn, 3)).unwrap();
        let oracle = LhvOracle { max_qubits: 12, workers };
        let r = oracle.classical_bound(&s, None).unwrap();
        prop_assert_eq!(r.max_value, Rational::zero());
        prop_assert_eq!(r.argmax.index(), 0);
        let above = oracle.classical_bound(&s, Some(r.coefficient + Rational::one())).unwrap();
        prop_assert!(above.max_value > Rational::zero());
    }

    #[test]
    fn paradox_any_gamma_and_phase(s in constructible_strategy(), log_gamma in -1.2f64..1.2, theta_h in 0.0f64..TAU) {
        let gamma = log_gamma.exp();
        let r = construct_paradox(&s, gamma, theta_h).unwrap();
        prop_assert!(r.max_zero_constraint_residual <= 1e-10);
        let closed = success_probability_closed(&s, gamma).unwrap();
        prop_assert!((closed - r.success_probability).abs() <= 1e-12);
    }

    #[test]
    fn symmetric_value_never_beats_maximum(s in scenario_strategy(7), t1 in 0.0f64..TAU, t2 in 0.0f64..TAU) {
        let m = maximize_qm(&s).unwrap();
        prop_assert!(symmetric_qm_value(&s, t1, t2).unwrap() <= m.value + 1e-12);
    }

    #[test]
    fn noise_mixing_matches_density_matrix(
        n in 1usize..5,
        gamma in 0.2f64..3.0,
        vis in 0.0f64..=1.0,
        u in 0.0f64..1.5,
        phi in 0.0f64..TAU,
    ) {
        let psi = make_ghz(&GhzState::new(n, gamma, 0.3).unwrap()).unwrap();
        let basis = SingleQubitBasis::from_polar_angle(u, phi).unwrap();
        let event = Event::uniform(n, basis);
        let e = event.product_vector();
        let amps = psi.amplitudes();
        let dim = amps.len();
        // ρ = V|ψ⟩⟨ψ| + (1−V)𝟙/2^n, then ⟨e|ρ|e⟩
        let mut value = Complex64::new(0.0, 0.0);
        for i in 0..dim {
            for j in 0..dim {
                let mut rho = amps[i] * amps[j].conj() * vis;
                if i == j {
                    rho += (1.0 - vis) / dim as f64;
                }
                value += e[i].conj() * rho * e[j];
            }
        }
        let pure = event_probability(&psi, &event).unwrap();
        let mixed = mixed_event_probability(pure, vis, n).unwrap();
        prop_assert!(value.im.abs() < 1e-12);
        prop_assert!((mixed - value.re).abs() < 1e-12);
    }

    #[test]
    fn exact_rank_matches_rational_elimination(
        rows in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 6), 1..9),
        dup in 0usize..4,
    ) {
        let mut rows = rows;
        // add dependent rows so deficient ranks are exercised
        for k in 0..dup.min(rows.len()) {
            let combo: Vec<i64> = rows[k].iter().zip(&rows[0]).map(|(a, b)| 2 * a - 3 * b).collect();
            rows.push(combo);
        }
        prop_assert_eq!(integer_rank(&rows), rational_rank(&rows));
    }

    #[test]
    fn sig12_round_trip(v in -1e6f64..1e6) {
        let text = fmt_sig12(v);
        let parsed: f64 = text.parse().unwrap();
        prop_assert_eq!(parsed, round_sig12(v));
        prop_assert_eq!(round_sig12(parsed), parsed);
        if v != 0.0 {
            prop_assert!(((parsed - v) / v).abs() <= 5e-12);
        }
    }
}

#[test]
fn family_tightness_through_five_qubits() {
    let oracle = LhvOracle::default();
    for n in 3..=5 {
        for a in 2..=n {
            let r = oracle.check_tightness(&Scenario::new(n, a, 1).unwrap()).unwrap();
            assert!(r.is_tight, "[{n};{a},1] rank {} of {}", r.affine_rank, r.ambient_affine_dim);
        }
    }
}

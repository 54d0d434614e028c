//! Exact integer side of the generalized Hardy inequalities.
//!
//! Everything here is exact: binomials are `u128` with checked arithmetic and
//! the weights `x`, `y` of an inequality are rationals.

use std::fmt;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational used for inequality weights and coefficients.
pub type Rational = Ratio<i128>;

/// Largest qubit count a [`Scenario`] may describe. Keeps every binomial
/// `C(n, k)` comfortably inside `i128` even after weighting.
pub const MAX_SCENARIO_QUBITS: usize = 62;

/// An `[n;|α|,|β|;x,y]` scenario: `n` qubits, zero constraints on every subset
/// of size `|α|` (b-outcome 1) and `|β|` (b-outcome 0), inequality weights `x`, `y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Scenario {
    n: usize,
    alpha: usize,
    beta: usize,
    #[serde(with = "crate::combinatorics::rational_serde")]
    x: Rational,
    #[serde(with = "crate::combinatorics::rational_serde")]
    y: Rational,
}

impl Scenario {
    /// Unit weights `x = y = 1`.
    pub fn new(n: usize, alpha: usize, beta: usize) -> Result<Self> {
        Self::weighted(n, alpha, beta, Rational::one(), Rational::one())
    }

    pub fn weighted(n: usize, alpha: usize, beta: usize, x: Rational, y: Rational) -> Result<Self> {
        let s = Scenario { n, alpha, beta, x, y };
        s.validate()?;
        Ok(s)
    }

    /// Builds a scenario without checking any constraint.
    ///
    /// Only meant for probing what breaks when the preconditions of the
    /// classical argument are dropped (see [`crate::lhv::verify_theorem1`]).
    /// Every other operation may misbehave on such a value.
    #[doc(hidden)]
    pub fn new_unchecked(n: usize, alpha: usize, beta: usize) -> Self {
        Scenario { n, alpha, beta, x: Rational::one(), y: Rational::one() }
    }

    fn validate(&self) -> Result<()> {
        let (n, a, b) = (self.n, self.alpha, self.beta);
        if n < 2 {
            return Err(Error::InvalidScenario(format!("n = {n} must be at least 2")));
        }
        if n > MAX_SCENARIO_QUBITS {
            return Err(Error::Resource { what: "scenario qubits", requested: n, limit: MAX_SCENARIO_QUBITS });
        }
        if a < 2 || a > n {
            return Err(Error::InvalidScenario(format!("|α| = {a} must satisfy 2 ≤ |α| ≤ n = {n}")));
        }
        if b < 1 || b > a {
            return Err(Error::InvalidScenario(format!("|β| = {b} must satisfy 1 ≤ |β| ≤ |α| = {a}")));
        }
        if a + b > n + 1 {
            return Err(Error::InvalidScenario(format!(
                "|α|+|β| ≤ n+1 violated: {a}+{b} = {} > {}",
                a + b,
                n + 1
            )));
        }
        if !self.x.is_positive() || !self.y.is_positive() {
            return Err(Error::InvalidScenario(format!(
                "weights must be positive, got x = {}, y = {}",
                self.x, self.y
            )));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `|α|`.
    pub fn alpha(&self) -> usize {
        self.alpha
    }

    /// `|β|`.
    pub fn beta(&self) -> usize {
        self.beta
    }

    pub fn x(&self) -> Rational {
        self.x
    }

    pub fn y(&self) -> Rational {
        self.y
    }

    pub fn has_unit_weights(&self) -> bool {
        self.x.is_one() && self.y.is_one()
    }

    /// Case 2 of the quantum construction: `|α| = |β|`, necessarily even.
    pub fn is_even_equal(&self) -> bool {
        self.alpha == self.beta && self.alpha.is_multiple_of(2)
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{};{},{};{},{}]", self.n, self.alpha, self.beta, self.x, self.y)
    }
}

/// Binomial coefficient `C(m, k)`, zero when `k > m`.
pub fn binom(m: u64, k: u64) -> Result<u128> {
    if k > m {
        return Ok(0);
    }
    let k = k.min(m - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc = C(m, i) here; C(m, i+1) = C(m, i)·(m−i)/(i+1) is exact
        acc = acc
            .checked_mul(u128::from(m - i))
            .ok_or_else(|| Error::Overflow(format!("C({m}, {k})")))?
            / u128::from(i + 1);
    }
    Ok(acc)
}

pub(crate) fn binom_rational(m: usize, k: usize) -> Result<Rational> {
    let v = binom(m as u64, k as u64)?;
    let v = i128::try_from(v).map_err(|_| Error::Overflow(format!("C({m}, {k}) as i128")))?;
    Ok(Rational::from_integer(v))
}

pub(crate) fn binom_f64(m: usize, k: usize) -> f64 {
    // scenarios are capped at MAX_SCENARIO_QUBITS so this cannot overflow
    binom(m as u64, k as u64).expect("binomial within scenario cap") as f64
}

fn checked_weighted_sum(x: Rational, cx: Rational, y: Rational, cy: Rational) -> Result<Rational> {
    let overflow = || Error::Overflow("weighted binomial sum".into());
    let a = x.checked_mul(&cx).ok_or_else(overflow)?;
    let b = y.checked_mul(&cy).ok_or_else(overflow)?;
    a.checked_add(&b).ok_or_else(overflow)
}

/// The classical coefficient `F` together with the split `m` realising it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientF {
    #[serde(with = "crate::combinatorics::rational_serde")]
    pub value: Rational,
    /// Smallest `m` attaining the minimum.
    pub minimizer: usize,
}

/// `F = min_{0≤m≤n} x·C(m,|α|) + y·C(n−m,|β|)`, by direct scan.
pub fn coefficient_f(s: &Scenario) -> Result<CoefficientF> {
    let mut best: Option<CoefficientF> = None;
    for m in 0..=s.n {
        let value = checked_weighted_sum(
            s.x,
            binom_rational(m, s.alpha)?,
            s.y,
            binom_rational(s.n - m, s.beta)?,
        )?;
        if best.is_none_or(|b| value < b.value) {
            best = Some(CoefficientF { value, minimizer: m });
        }
    }
    Ok(best.expect("n ≥ 0 gives at least one split"))
}

/// Closed form of `F[n;q,q;1,1]` for even `q` with `2q ≤ n+1`.
pub fn coefficient_f_closed_qq(n: usize, q: usize) -> Result<u128> {
    check_even_equal(n, q)?;
    let half = n.div_ceil(2);
    let a = binom(half as u64, q as u64)?;
    let b = binom((n - half) as u64, q as u64)?;
    a.checked_add(b).ok_or_else(|| Error::Overflow(format!("F[{n};{q},{q}]")))
}

pub(crate) fn check_even_equal(n: usize, q: usize) -> Result<()> {
    if q == 0 || !q.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("q = {q} must be a positive even integer")));
    }
    if 2 * q > n + 1 {
        return Err(Error::InvalidArgument(format!("2q ≤ n+1 violated: 2·{q} > {}", n + 1)));
    }
    Ok(())
}

/// Serde adapter writing rationals as `"p/q"` (or `"p"` when integral).
pub mod rational_serde {
    use super::Rational;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&crate::report::fmt_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(|e| D::Error::custom(format!("bad rational {text:?}: {e}")))
    }

    pub mod option {
        use super::Rational;
        use serde::{Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match r {
                Some(r) => super::serialize(r, s),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
            #[derive(Deserialize)]
            struct Wrap(#[serde(with = "super")] Rational);
            Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
        }
    }
}

pub(crate) fn rational_to_f64(r: Rational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i128) -> Rational {
        Rational::from_integer(v)
    }

    fn valid(n: usize) -> impl Iterator<Item = (usize, usize)> {
        (2..=n).flat_map(move |a| (1..=a).filter(move |&b| a + b <= n + 1).map(move |b| (a, b)))
    }

    #[test]
    fn binom_examples() {
        assert_eq!(binom(4, 2).unwrap(), 6);
        assert_eq!(binom(3, 5).unwrap(), 0);
        assert_eq!(binom(10, 5).unwrap(), 252);
        assert_eq!(binom(0, 0).unwrap(), 1);
        assert_eq!(binom(62, 31).unwrap(), 465428353255261088);
    }

    #[test]
    fn binom_overflow_is_reported() {
        assert!(matches!(binom(200, 100), Err(Error::Overflow(_))));
        assert!(binom(140, 70).is_err());
    }

    #[test]
    fn binom_matches_pascal() {
        let mut row = vec![1u128];
        for m in 1..=60u64 {
            let mut next = vec![1u128; m as usize + 1];
            for k in 1..m as usize {
                next[k] = row[k - 1] + row[k];
            }
            row = next;
            for (k, v) in row.iter().enumerate() {
                assert_eq!(binom(m, k as u64).unwrap(), *v);
            }
        }
    }

    #[test]
    fn scenario_rejects_bad_bounds() {
        assert!(Scenario::new(3, 3, 3).is_err());
        assert!(Scenario::new(3, 1, 1).is_err());
        assert!(Scenario::new(3, 4, 1).is_err());
        assert!(Scenario::new(3, 2, 0).is_err());
        assert!(Scenario::new(4, 2, 3).is_err());
        assert!(Scenario::new(1, 2, 1).is_err());
        assert!(Scenario::weighted(3, 2, 2, r(0), r(1)).is_err());
        assert!(Scenario::weighted(3, 2, 2, r(1), r(-2)).is_err());
        let msg = Scenario::new(3, 3, 3).unwrap_err().to_string();
        assert!(msg.contains("|α|+|β| ≤ n+1"), "{msg}");
    }

    #[test]
    fn coefficient_f_examples() {
        let f = |n, a, b| coefficient_f(&Scenario::new(n, a, b).unwrap()).unwrap();
        assert_eq!(f(3, 3, 1).value, r(1));
        let f322 = f(3, 2, 2);
        assert_eq!(f322.value, r(1));
        assert_eq!(f322.minimizer, 1);
        assert_eq!(f(5, 2, 2).value, r(4));
        assert_eq!(f(7, 2, 2).value, r(9));
    }

    #[test]
    fn coefficient_f_rational_weights() {
        let s = Scenario::weighted(5, 2, 2, Rational::new(1, 2), Rational::new(3, 2)).unwrap();
        // m = 3: 1/2·3 + 3/2·1 = 3 is the smallest split
        assert_eq!(coefficient_f(&s).unwrap().value, r(3));
        let scaled = Scenario::weighted(5, 2, 2, Rational::new(7, 3), Rational::new(7, 3)).unwrap();
        assert_eq!(coefficient_f(&scaled).unwrap().value, Rational::new(28, 3));
    }

    #[test]
    fn closed_qq_examples_and_errors() {
        assert_eq!(coefficient_f_closed_qq(5, 2).unwrap(), 4);
        assert_eq!(coefficient_f_closed_qq(7, 2).unwrap(), 9);
        assert_eq!(coefficient_f_closed_qq(3, 2).unwrap(), 1);
        assert!(coefficient_f_closed_qq(5, 3).is_err());
        assert!(coefficient_f_closed_qq(6, 4).is_err());
    }

    #[test]
    fn beta_one_gives_n_minus_alpha_plus_one() {
        for n in 2..=12 {
            for a in 2..=n {
                let s = Scenario::new(n, a, 1).unwrap();
                assert_eq!(coefficient_f(&s).unwrap().value, r((n - a + 1) as i128), "{s}");
            }
        }
    }

    #[test]
    fn closed_qq_matches_scan() {
        for n in 3..=12 {
            for q in (2..=n).step_by(2).filter(|q| 2 * q <= n + 1) {
                let s = Scenario::new(n, q, q).unwrap();
                let closed = coefficient_f_closed_qq(n, q).unwrap() as i128;
                assert_eq!(coefficient_f(&s).unwrap().value, r(closed), "{s}");
            }
        }
    }

    #[test]
    fn weighted_average_bound() {
        for n in 2..=12 {
            for (a, b) in valid(n) {
                let f = coefficient_f(&Scenario::new(n, a, b).unwrap()).unwrap().value;
                let bound = Rational::new(binom(n as u64, a as u64).unwrap() as i128, 1 << a)
                    + Rational::new(binom(n as u64, b as u64).unwrap() as i128, 1 << b);
                assert!(f <= bound, "[{n};{a},{b}] F = {f} > {bound}");
            }
        }
    }
}

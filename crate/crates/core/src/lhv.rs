//! Classical side: exhaustive enumeration of deterministic local strategies.
//!
//! A strategy fixes `a_k, b_k ∈ {0, 1}` for every party. Strategy index
//! `i = a_bits | b_bits << n`, so `a_k` is bit `k` and `b_k` is bit `n + k`.
//! Every claim checked here is linear in the behaviour, so the deterministic
//! vertices of the local polytope are sufficient.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{binom, coefficient_f, Rational, Scenario};
use crate::error::{Error, Result};

/// Default cap on `n` for `4^n` enumeration.
pub const DEFAULT_MAX_ENUM_QUBITS: usize = 12;

/// Cap on `n` for exact rank computations on `3^n` coordinates.
pub const TIGHTNESS_MAX_QUBITS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DeterministicStrategy {
    pub n: usize,
    pub a_bits: u32,
    pub b_bits: u32,
}

impl DeterministicStrategy {
    pub fn from_index(n: usize, index: u64) -> Self {
        let mask = (1u64 << n) - 1;
        DeterministicStrategy { n, a_bits: (index & mask) as u32, b_bits: (index >> n & mask) as u32 }
    }

    pub fn index(&self) -> u64 {
        u64::from(self.a_bits) | u64::from(self.b_bits) << self.n
    }

    /// Value of `a_k`, 0-based `k`.
    pub fn a(&self, k: usize) -> u8 {
        (self.a_bits >> k & 1) as u8
    }

    pub fn b(&self, k: usize) -> u8 {
        (self.b_bits >> k & 1) as u8
    }

    pub fn a_values(&self) -> Vec<u8> {
        (0..self.n).map(|k| self.a(k)).collect()
    }

    pub fn b_values(&self) -> Vec<u8> {
        (0..self.n).map(|k| self.b(k)).collect()
    }

    fn full(&self) -> u32 {
        ((1u64 << self.n) - 1) as u32
    }

    /// `a_{I_n}`: every `a_k = 1`.
    pub fn success(&self) -> bool {
        self.a_bits == self.full()
    }

    /// Number of size-`k` subsets `S` with `b_S a_{S̄} = 1`.
    pub fn count_b_events(&self, k: usize, binoms: &BinomTable) -> u128 {
        let z = self.full() & !self.a_bits;
        count_supersets(z, self.b_bits, k, binoms)
    }

    /// Number of size-`k` subsets `S` with `b̄_S a_{S̄} = 1`.
    pub fn count_b_bar_events(&self, k: usize, binoms: &BinomTable) -> u128 {
        let z = self.full() & !self.a_bits;
        count_supersets(z, self.full() & !self.b_bits, k, binoms)
    }
}

impl fmt::Display for DeterministicStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bits = |v: Vec<u8>| v.iter().map(|b| char::from(b'0' + b)).collect::<String>();
        write!(f, "a=({}) b=({})", bits(self.a_values()), bits(self.b_values()))
    }
}

/// `C(m, k)` for `m, k ≤ n`.
#[derive(Debug, Clone)]
pub struct BinomTable {
    size: usize,
    table: Vec<u128>,
}

impl BinomTable {
    pub fn new(n: usize) -> Result<Self> {
        let size = n + 1;
        let mut table = vec![0; size * size];
        for m in 0..size {
            for k in 0..size {
                table[m * size + k] = binom(m as u64, k as u64)?;
            }
        }
        Ok(BinomTable { size, table })
    }

    pub fn get(&self, m: usize, k: usize) -> u128 {
        if k >= self.size {
            0
        } else {
            self.table[m * self.size + k]
        }
    }
}

/// Size-`k` sets `S` with `required ⊆ S ⊆ allowed`.
fn count_supersets(required: u32, allowed: u32, k: usize, binoms: &BinomTable) -> u128 {
    if required & !allowed != 0 {
        return 0;
    }
    let fixed = required.count_ones() as usize;
    if fixed > k {
        return 0;
    }
    binoms.get(allowed.count_ones() as usize - fixed, k - fixed)
}

/// Enumeration settings: the `n` guard and the number of index partitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LhvOracle {
    pub max_qubits: usize,
    pub workers: usize,
}

impl Default for LhvOracle {
    fn default() -> Self {
        LhvOracle { max_qubits: DEFAULT_MAX_ENUM_QUBITS, workers: rayon::current_num_threads().max(1) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroConditionReport {
    pub scenario: Scenario,
    pub strategies_checked: u64,
    /// Lowest-index strategy meeting every zero constraint with `a_{I_n} = 1`.
    pub counterexample: Option<DeterministicStrategy>,
}

impl ZeroConditionReport {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalBound {
    pub scenario: Scenario,
    /// Coefficient of the success term actually used.
    #[serde(with = "crate::combinatorics::rational_serde")]
    pub coefficient: Rational,
    #[serde(with = "crate::combinatorics::rational_serde")]
    pub max_value: Rational,
    /// Lowest-index strategy attaining `max_value`.
    pub argmax: DeterministicStrategy,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TightnessReport {
    pub scenario: Scenario,
    pub saturating_vertex_count: usize,
    pub affine_rank: usize,
    pub ambient_affine_dim: usize,
    pub is_tight: bool,
}

impl LhvOracle {
    fn guard(&self, n: usize) -> Result<()> {
        if n > self.max_qubits || n > 31 {
            return Err(Error::Resource { what: "LHV enumeration qubits", requested: n, limit: self.max_qubits.min(31) });
        }
        Ok(())
    }

    pub fn enumerate_strategies(&self, n: usize) -> Result<impl Iterator<Item = DeterministicStrategy>> {
        self.guard(n)?;
        Ok((0..1u64 << (2 * n)).map(move |i| DeterministicStrategy::from_index(n, i)))
    }

    /// Contiguous index ranges, one per worker.
    fn partitions(&self, n: usize) -> Vec<std::ops::Range<u64>> {
        let total = 1u64 << (2 * n);
        let parts = (self.workers.max(1) as u64).min(total);
        let step = total.div_ceil(parts);
        (0..parts).map(|p| p * step..((p + 1) * step).min(total)).filter(|r| !r.is_empty()).collect()
    }

    pub fn verify_theorem1(&self, s: &Scenario) -> Result<ZeroConditionReport> {
        let n = s.n();
        self.guard(n)?;
        let binoms = BinomTable::new(n)?;
        let counterexample = self
            .partitions(n)
            .into_par_iter()
            .filter_map(|range| {
                range.map(|i| DeterministicStrategy::from_index(n, i)).find(|st| {
                    st.success()
                        && st.count_b_events(s.alpha(), &binoms) == 0
                        && st.count_b_bar_events(s.beta(), &binoms) == 0
                })
            })
            .min_by_key(|st| st.index());
        Ok(ZeroConditionReport { scenario: s.clone(), strategies_checked: 1 << (2 * n), counterexample })
    }

    /// `F′·a_{I_n} − x·Σ_α b_α a_ᾱ − y·Σ_β b̄_β a_β̄` for one strategy.
    fn bell_value(s: &Scenario, coefficient: Rational, st: &DeterministicStrategy, binoms: &BinomTable) -> Rational {
        let success = if st.success() { coefficient } else { Rational::zero() };
        let ca = Rational::from_integer(st.count_b_events(s.alpha(), binoms) as i128);
        let cb = Rational::from_integer(st.count_b_bar_events(s.beta(), binoms) as i128);
        success - s.x() * ca - s.y() * cb
    }

    pub fn classical_bound(&self, s: &Scenario, f_override: Option<Rational>) -> Result<ClassicalBound> {
        let n = s.n();
        self.guard(n)?;
        let coefficient = match f_override {
            Some(f) => f,
            None => coefficient_f(s)?.value,
        };
        let binoms = BinomTable::new(n)?;
        let (max_value, index) = self
            .partitions(n)
            .into_par_iter()
            .map(|range| {
                range
                    .map(|i| (Self::bell_value(s, coefficient, &DeterministicStrategy::from_index(n, i), &binoms), i))
                    .reduce(better)
                    .expect("non-empty partition")
            })
            .reduce_with(better)
            .expect("at least one partition");
        Ok(ClassicalBound {
            scenario: s.clone(),
            coefficient,
            max_value,
            argmax: DeterministicStrategy::from_index(n, index),
        })
    }

    /// Affine rank of the saturating vertices in the `3^n` correlation space.
    pub fn check_tightness(&self, s: &Scenario) -> Result<TightnessReport> {
        let n = s.n();
        if n > TIGHTNESS_MAX_QUBITS {
            return Err(Error::Resource { what: "tightness qubits", requested: n, limit: TIGHTNESS_MAX_QUBITS });
        }
        self.guard(n)?;
        let coefficient = coefficient_f(s)?.value;
        let binoms = BinomTable::new(n)?;
        let saturating: Vec<Vec<i64>> = self
            .enumerate_strategies(n)?
            .filter(|st| Self::bell_value(s, coefficient, st, &binoms).is_zero())
            .map(|st| correlation_vector(&st))
            .collect();
        let affine_rank = affine_rank(&saturating);
        let ambient_affine_dim = 3usize.pow(n as u32) - 1;
        Ok(TightnessReport {
            scenario: s.clone(),
            saturating_vertex_count: saturating.len(),
            affine_rank,
            ambient_affine_dim,
            is_tight: affine_rank + 1 == ambient_affine_dim,
        })
    }
}

/// Larger value wins; ties go to the lower index.
fn better(x: (Rational, u64), y: (Rational, u64)) -> (Rational, u64) {
    match x.0.cmp(&y.0) {
        std::cmp::Ordering::Greater => x,
        std::cmp::Ordering::Less => y,
        std::cmp::Ordering::Equal => {
            if x.1 <= y.1 {
                x
            } else {
                y
            }
        }
    }
}

pub fn enumerate_strategies(n: usize) -> Result<impl Iterator<Item = DeterministicStrategy>> {
    LhvOracle::default().enumerate_strategies(n)
}

pub fn verify_theorem1(s: &Scenario) -> Result<ZeroConditionReport> {
    LhvOracle::default().verify_theorem1(s)
}

pub fn classical_bound(s: &Scenario, f_override: Option<Rational>) -> Result<ClassicalBound> {
    LhvOracle::default().classical_bound(s, f_override)
}

pub fn check_tightness(s: &Scenario) -> Result<TightnessReport> {
    LhvOracle::default().check_tightness(s)
}

/// Correlation vector of a deterministic strategy.
///
/// Coordinate `Σ_k c_k 3^k` with `c_k = 0` (measure `a_k`), `1` (measure
/// `b_k`) or `2` (party `k` omitted); the entry is the product of the chosen
/// values, an omitted party contributing 1. The all-omitted coordinate (the
/// last one) is always 1.
pub fn correlation_vector(st: &DeterministicStrategy) -> Vec<i64> {
    let mut out = vec![1i64];
    for k in 0..st.n {
        let local = [i64::from(st.a(k)), i64::from(st.b(k)), 1];
        let len = out.len();
        let mut next = vec![0i64; 3 * len];
        for (c, v) in local.iter().enumerate() {
            for (j, prev) in out.iter().enumerate() {
                next[c * len + j] = prev * v;
            }
        }
        out = next;
    }
    out
}

/// Dimension of the affine hull of `points`.
pub fn affine_rank(points: &[Vec<i64>]) -> usize {
    let Some((first, rest)) = points.split_first() else {
        return 0;
    };
    let diffs: Vec<Vec<i64>> =
        rest.iter().map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect()).collect();
    integer_rank(&diffs)
}

/// Exact rank of an integer matrix (rows as vectors).
///
/// Fraction-free row reduction: each incoming row is cross-multiplied against
/// the echelon rows and divided by its content, so every intermediate stays an
/// integer vector. Runs in `i64`, retrying in `i128` and then `BigInt` if an
/// intermediate would overflow.
pub fn integer_rank(rows: &[Vec<i64>]) -> usize {
    if let Some(r) = fraction_free_rank::<i64>(rows) {
        return r;
    }
    if let Some(r) = fraction_free_rank::<i128>(rows) {
        return r;
    }
    fraction_free_rank::<BigInt>(rows).expect("BigInt arithmetic cannot overflow")
}

fn fraction_free_rank<T>(rows: &[Vec<i64>]) -> Option<usize>
where
    T: Clone + Integer + Signed + CheckedMul + CheckedSub + From<i64>,
{
    let cols = rows.first().map_or(0, Vec::len);
    // echelon rows, each zero before its pivot, kept sorted by pivot
    let mut basis: Vec<(usize, Vec<T>)> = Vec::new();
    for row in rows {
        if basis.len() == cols {
            break;
        }
        let mut r: Vec<T> = row.iter().map(|&v| T::from(v)).collect();
        for (pivot, b) in &basis {
            if r[*pivot].is_zero() {
                continue;
            }
            let (bp, rp) = (b[*pivot].clone(), r[*pivot].clone());
            for (x, y) in r.iter_mut().zip(b) {
                *x = bp.checked_mul(x)?.checked_sub(&rp.checked_mul(y)?)?;
            }
            remove_content(&mut r);
        }
        if let Some(pivot) = r.iter().position(|v| !v.is_zero()) {
            let at = basis.partition_point(|(p, _)| *p < pivot);
            basis.insert(at, (pivot, r));
        }
    }
    Some(basis.len())
}

fn remove_content<T: Clone + Integer + Signed>(r: &mut [T]) {
    let g = r.iter().fold(T::zero(), |g, v| g.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in r.iter_mut() {
            *v = v.div_floor(&g);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn sc(n: usize, a: usize, b: usize) -> Scenario {
        Scenario::new(n, a, b).unwrap()
    }

    #[test]
    fn strategy_counts_and_order() {
        assert_eq!(enumerate_strategies(1).unwrap().count(), 4);
        assert_eq!(enumerate_strategies(3).unwrap().count(), 64);
        assert_eq!(enumerate_strategies(8).unwrap().count(), 65536);
        let v: Vec<_> = enumerate_strategies(2).unwrap().map(|s| s.index()).collect();
        assert!(v.windows(2).all(|w| w[0] + 1 == w[1]));
        let st = DeterministicStrategy::from_index(3, 0b101_011);
        assert_eq!(st.a_values(), vec![1, 1, 0]);
        assert_eq!(st.b_values(), vec![1, 0, 1]);
        assert!(matches!(enumerate_strategies(13), Err(Error::Resource { .. })));
    }

    #[test]
    fn subset_counts_match_explicit_enumeration() {
        use itertools::Itertools;
        for n in 1..=5 {
            let binoms = BinomTable::new(n).unwrap();
            for st in enumerate_strategies(n).unwrap() {
                for k in 0..=n {
                    let mut cb = 0;
                    let mut cbb = 0;
                    for subset in (0..n).combinations(k) {
                        let rest_a = (0..n).filter(|i| !subset.contains(i)).all(|i| st.a(i) == 1);
                        if rest_a && subset.iter().all(|&i| st.b(i) == 1) {
                            cb += 1;
                        }
                        if rest_a && subset.iter().all(|&i| st.b(i) == 0) {
                            cbb += 1;
                        }
                    }
                    assert_eq!(st.count_b_events(k, &binoms), cb);
                    assert_eq!(st.count_b_bar_events(k, &binoms), cbb);
                }
            }
        }
    }

    #[test]
    fn zero_condition_examples() {
        let r = verify_theorem1(&sc(3, 2, 2)).unwrap();
        assert!(r.holds());
        assert_eq!(r.strategies_checked, 64);
        assert!(verify_theorem1(&sc(5, 3, 2)).unwrap().holds());
        let r = verify_theorem1(&Scenario::new_unchecked(3, 3, 3)).unwrap();
        let ce = r.counterexample.expect("constraint violated, counterexample expected");
        assert_eq!(ce.a_values(), vec![1, 1, 1]);
        assert_eq!(ce.b_values(), vec![1, 0, 0]);
        // the witness quoted alongside the classical argument also works
        let witness = DeterministicStrategy { n: 3, a_bits: 0b111, b_bits: 0b011 };
        let binoms = BinomTable::new(3).unwrap();
        assert_eq!(witness.count_b_events(3, &binoms), 0);
        assert_eq!(witness.count_b_bar_events(3, &binoms), 0);
    }

    #[test]
    fn bound_examples() {
        let r = classical_bound(&sc(3, 2, 2), None).unwrap();
        assert_eq!(r.max_value, Rational::zero());
        assert_eq!(r.argmax.index(), 0);
        let r = classical_bound(&sc(3, 2, 2), Some(Rational::from_integer(2))).unwrap();
        assert_eq!(r.max_value, Rational::one());
        assert!(r.argmax.success());
        for n in 2..=8 {
            let r = classical_bound(&sc(n, n, 1), Some(Rational::one())).unwrap();
            assert_eq!(r.max_value, Rational::zero());
        }
    }

    #[test]
    fn partitioning_is_deterministic() {
        let s = Scenario::weighted(5, 3, 2, Rational::new(2, 3), Rational::new(5, 4)).unwrap();
        let f = Some(Rational::new(7, 2));
        let reference = LhvOracle { max_qubits: 12, workers: 1 }.classical_bound(&s, f).unwrap();
        for workers in [2, 3, 5, 7, 64, 5000] {
            let r = LhvOracle { max_qubits: 12, workers }.classical_bound(&s, f).unwrap();
            assert_eq!(r, reference, "workers = {workers}");
        }
        let bad = Scenario::new_unchecked(5, 4, 3);
        let reference = LhvOracle { max_qubits: 12, workers: 1 }.verify_theorem1(&bad).unwrap();
        for workers in [2, 3, 9] {
            assert_eq!(LhvOracle { max_qubits: 12, workers }.verify_theorem1(&bad).unwrap(), reference);
        }
    }

    #[test]
    fn correlation_vector_layout() {
        // party 0: a=1, b=0; party 1: a=0, b=1
        let st = DeterministicStrategy { n: 2, a_bits: 0b01, b_bits: 0b10 };
        let v = correlation_vector(&st);
        assert_eq!(v.len(), 9);
        let at = |c0: usize, c1: usize| v[c0 + 3 * c1];
        assert_eq!(at(2, 2), 1);
        assert_eq!(at(0, 2), 1); // a_0
        assert_eq!(at(1, 2), 0); // b_0
        assert_eq!(at(2, 0), 0); // a_1
        assert_eq!(at(2, 1), 1); // b_1
        assert_eq!(at(0, 1), 1); // a_0 b_1
        assert_eq!(at(0, 0), 0);
    }

    #[test]
    fn rank_small_matrices() {
        assert_eq!(integer_rank(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(integer_rank(&[vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(integer_rank(&[vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 2]]), 2);
        assert_eq!(integer_rank(&[vec![2, 3, 5], vec![7, 11, 13], vec![17, 19, 23]]), 3);
        assert_eq!(integer_rank(&[vec![0, 3], vec![0, 5], vec![4, 0]]), 2);
        // later pivot found first; entries left of it must scale too
        assert_eq!(integer_rank(&[vec![0, 2, 0], vec![1, -1, 1], vec![2, -8, 2]]), 2);
        assert_eq!(affine_rank(&[vec![1, 1], vec![2, 2], vec![3, 3]]), 1);
        assert_eq!(affine_rank(&[]), 0);
    }

    #[test]
    fn rank_overflow_falls_back() {
        // Hilbert-like rows with huge entries force the wider representations
        let big = i64::MAX / 3;
        let rows = vec![vec![big, big - 1, 7], vec![big - 5, big, 3], vec![1, 2, 3]];
        assert!(fraction_free_rank::<i64>(&rows).is_none());
        assert_eq!(integer_rank(&rows), 3);
    }

    #[test]
    fn ambient_dimension() {
        for n in 1..=4 {
            let all: Vec<_> = enumerate_strategies(n).unwrap().map(|s| correlation_vector(&s)).collect();
            assert_eq!(affine_rank(&all), 3usize.pow(n as u32) - 1, "n = {n}");
        }
    }

    #[test]
    fn tightness_three_qubits() {
        let r = check_tightness(&sc(3, 2, 1)).unwrap();
        assert_eq!(r.affine_rank, 25);
        assert_eq!(r.ambient_affine_dim, 26);
        assert_eq!(r.saturating_vertex_count, 35);
        assert!(r.is_tight);
        let r = check_tightness(&sc(3, 3, 1)).unwrap();
        assert_eq!(r.saturating_vertex_count, 41);
        assert!(r.is_tight);
        assert!(matches!(check_tightness(&sc(7, 2, 1)), Err(Error::Resource { .. })));
    }
}

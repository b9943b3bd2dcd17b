//! Full-learning equilibrium of the costly-interview secretary game.
//!
//! Applicant `n` only completes an interview when it is a running record and
//! the administrator accepts records at stage `n` with probability at least
//! the interview cost `c`. Under that constraint the administrator accepts a
//! record with probability `c` before the threshold `n*` and with
//! probability 1 from `n*` on, and rejects every non-record. The threshold
//! does not depend on `c`.
//!
//! Values are kept in normalized form `v_n(x) = V_n(x) / n`, where `x = 1`
//! means applicant `n` is the best seen so far. All routines are generic over
//! [`Scalar`] so the same recursion runs in `f64` and in exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Result, SecretaryError};
use crate::scalar::Scalar;

/// One instance of the game: `N` applicants and interview cost `c`.
#[derive(Debug, Clone, PartialEq)]
pub struct GameConfig<T> {
    n_applicants: usize,
    cost: T,
}

impl<T: Scalar> GameConfig<T> {
    pub fn new(n_applicants: usize, cost: T) -> Result<Self> {
        if n_applicants < 2 {
            return Err(SecretaryError::TooFewApplicants(n_applicants));
        }
        if cost < T::zero() || cost >= T::one() {
            return Err(SecretaryError::CostOutOfRange(cost.as_f64()));
        }
        Ok(Self { n_applicants, cost })
    }

    pub fn n_applicants(&self) -> usize {
        self.n_applicants
    }

    pub fn cost(&self) -> &T {
        &self.cost
    }
}

/// Normalized value functions of the full-learning equilibrium.
///
/// Vectors are stored 0-based; the accessors take the 1-based stage `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ValueTables<T> {
    n_applicants: usize,
    cost: T,
    v0: Vec<T>,
    v1: Vec<T>,
    /// First stage with `v_n(0) <= 1/N`.
    pub threshold: usize,
    /// `v_1(1)`, the probability of hiring the overall best.
    pub success_probability: T,
}

impl<T: Scalar> ValueTables<T> {
    pub fn n_applicants(&self) -> usize {
        self.n_applicants
    }

    pub fn cost(&self) -> &T {
        &self.cost
    }

    /// `v_n(0)`: value when applicant `n` is not the best so far.
    pub fn v0(&self, n: usize) -> &T {
        &self.v0[n - 1]
    }

    /// `v_n(1)`: value when applicant `n` is the best so far.
    pub fn v1(&self, n: usize) -> &T {
        &self.v1[n - 1]
    }

    pub fn v0_all(&self) -> &[T] {
        &self.v0
    }

    pub fn v1_all(&self) -> &[T] {
        &self.v1
    }

    /// Unnormalized `V_n(0) = n * v_n(0)`.
    pub fn big_v0(&self, n: usize) -> T {
        T::from_count(n) * self.v0(n).clone()
    }

    /// Unnormalized `V_n(1) = n * v_n(1)`.
    pub fn big_v1(&self, n: usize) -> T {
        T::from_count(n) * self.v1(n).clone()
    }
}

/// Administrator's equilibrium acceptance rule.
#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumPolicy<T> {
    /// `accept_record[n-1]`: probability of accepting applicant `n` when its
    /// output is a strictly new positive maximum.
    pub accept_record: Vec<T>,
    pub threshold: usize,
}

impl<T: Scalar> EquilibriumPolicy<T> {
    /// Non-records and zero outputs are never accepted.
    pub fn accept_nonrecord(&self) -> T {
        T::zero()
    }

    pub fn acceptance(&self, n: usize, is_record: bool) -> T {
        if is_record {
            self.accept_record[n - 1].clone()
        } else {
            self.accept_nonrecord()
        }
    }
}

// Compensated (Neumaier) running sum.
#[derive(Debug, Clone, Copy, Default)]
struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Rigorous bound on the error of a compensated sum of `terms` positive
/// reciprocals totalling about `value`: one rounding per reciprocal plus the
/// Neumaier bound `2u + O(m u^2)`.
fn harmonic_error_bound(value: f64, terms: usize) -> f64 {
    let eps = f64::EPSILON;
    (2.0 * eps + terms as f64 * eps * eps) * value.abs()
}

/// Exact test of `sum_{k=lo}^{hi} 1/k <= 1`.
fn harmonic_at_most_one_exact(lo: usize, hi: usize) -> bool {
    let mut acc = BigRational::zero();
    for k in lo..=hi {
        acc += BigRational::new(BigInt::one(), BigInt::from(k));
    }
    acc <= BigRational::one()
}

/// Decides `sum_{k=lo}^{hi} 1/k <= 1` from a compensated estimate, falling
/// back to exact rationals when the estimate is within its error bound of 1.
fn harmonic_at_most_one(estimate: f64, lo: usize, hi: usize) -> bool {
    let bound = harmonic_error_bound(estimate, hi + 1 - lo);
    if (estimate - 1.0).abs() > bound {
        estimate <= 1.0
    } else {
        harmonic_at_most_one_exact(lo, hi)
    }
}

/// Threshold `n* = min { n : sum_{k=n}^{N-1} 1/k <= 1 }`.
///
/// The tail sum is accumulated smallest term first with compensation; a
/// comparison that lands inside the error bound is redone in exact
/// rational arithmetic, so the result is exact for every `N`.
pub fn compute_threshold(n_applicants: usize) -> Result<usize> {
    if n_applicants < 2 {
        return Err(SecretaryError::TooFewApplicants(n_applicants));
    }
    let last = n_applicants - 1;
    let mut tail = CompensatedSum::default();
    let mut threshold = n_applicants;
    while threshold > 1 {
        let k = threshold - 1;
        let mut extended = tail;
        extended.add(1.0 / k as f64);
        if !harmonic_at_most_one(extended.value(), k, last) {
            break;
        }
        tail = extended;
        threshold = k;
    }
    Ok(threshold)
}

/// Thresholds `n*_N` for every `N` in `2..=max_n`, indexed so that
/// `result[N - 2] == n*_N`.
///
/// Uses a sliding window over the harmonic tail (`n*_N` is non-decreasing
/// in `N`), so the whole sequence costs `O(max_n)`. Near-ties are resolved
/// by [`compute_threshold`].
pub fn threshold_sequence(max_n: usize) -> Result<Vec<usize>> {
    if max_n < 2 {
        return Err(SecretaryError::TooFewApplicants(max_n));
    }
    const RESYNC: f64 = 1e-9;
    let mut out = Vec::with_capacity(max_n - 1);
    let mut start = 1usize;
    let mut window = CompensatedSum::default();
    window.add(1.0);
    out.push(start);
    for n in 3..=max_n {
        window.add(1.0 / (n - 1) as f64);
        while window.value() > 1.0 {
            window.add(-1.0 / start as f64);
            start += 1;
        }
        let above = if start > 1 {
            window.value() + 1.0 / (start - 1) as f64
        } else {
            f64::INFINITY
        };
        if (window.value() - 1.0).abs() < RESYNC || (above - 1.0).abs() < RESYNC {
            start = compute_threshold(n)?;
            window = CompensatedSum::default();
            for k in (start..n).rev() {
                window.add(1.0 / k as f64);
            }
        }
        out.push(start);
    }
    Ok(out)
}

/// Backward induction for the normalized values.
///
/// `v_N(0) = 0`, `v_N(1) = 1/N`, and for `n < N`
/// `v_n(0) = v_{n+1}(1)/n + v_{n+1}(0)`,
/// `v_n(1) = max { c/N + (1-c) v_n(0), 1/N }`.
pub fn solve_values<T: Scalar>(config: &GameConfig<T>) -> ValueTables<T> {
    let n_total = config.n_applicants;
    let c = config.cost.clone();
    let inv_n = T::from_ratio(1, n_total as i64);
    let mixed_base = c.clone() * inv_n.clone();
    let keep = T::one() - c.clone();

    let mut v0 = vec![T::zero(); n_total];
    let mut v1 = vec![T::zero(); n_total];
    v1[n_total - 1] = inv_n.clone();
    for n in (1..n_total).rev() {
        let next0 = v0[n].clone();
        let next1 = v1[n].clone();
        let zero_state = next1 / T::from_count(n) + next0;
        let mixed = mixed_base.clone() + keep.clone() * zero_state.clone();
        v1[n - 1] = T::max_of(mixed, inv_n.clone());
        v0[n - 1] = zero_state;
    }

    let threshold = v0
        .iter()
        .position(|v| *v <= inv_n)
        .map(|i| i + 1)
        .unwrap_or(n_total);
    let success_probability = v1[0].clone();
    ValueTables {
        n_applicants: n_total,
        cost: c,
        v0,
        v1,
        threshold,
        success_probability,
    }
}

/// Record-acceptance probabilities `c` before the threshold, 1 from it on.
pub fn build_policy<T: Scalar>(
    config: &GameConfig<T>,
    tables: &ValueTables<T>,
) -> Result<EquilibriumPolicy<T>> {
    if tables.n_applicants != config.n_applicants {
        return Err(SecretaryError::TablesMismatch {
            tables: tables.n_applicants,
            config: config.n_applicants,
        });
    }
    if tables.cost != config.cost {
        return Err(SecretaryError::TablesCostMismatch {
            tables: tables.cost.as_f64(),
            config: config.cost.as_f64(),
        });
    }
    let threshold = tables.threshold;
    let accept_record = (1..=config.n_applicants)
        .map(|n| {
            if n < threshold {
                config.cost.clone()
            } else {
                T::one()
            }
        })
        .collect();
    Ok(EquilibriumPolicy {
        accept_record,
        threshold,
    })
}

/// `S_n(c) = prod_{k=1}^{n} (1 - c/k)`, with `S_0 = 1`.
///
/// Probability that no record is accepted during the first `n` stages when
/// every record is accepted with probability `c`.
pub fn record_survival_product<T: Scalar>(n: usize, cost: &T) -> T {
    (1..=n).fold(T::one(), |acc, k| {
        acc * (T::one() - cost.clone() / T::from_count(k))
    })
}

/// `S_0(c), ..., S_m(c)`.
fn survival_prefix<T: Scalar>(m: usize, cost: &T) -> Vec<T> {
    let mut out = Vec::with_capacity(m + 1);
    out.push(T::one());
    for k in 1..=m {
        let prev = out[k - 1].clone();
        out.push(prev * (T::one() - cost.clone() / T::from_count(k)));
    }
    out
}

/// `V_n(0)` for `n = 0..=N` from the one-step recursion
/// `V_{n-1}(0) = max_{p in {c,1}} { p/N + (1 - p/n) V_n(0) }`, `V_N(0) = 0`.
///
/// `V_0(0)` equals the success probability. This route never divides by
/// `n - 1`, so it is the fallback for the factored formulas at `n* = 1`.
pub fn zero_state_values<T: Scalar>(config: &GameConfig<T>) -> Vec<T> {
    let n_total = config.n_applicants;
    let inv_n = T::from_ratio(1, n_total as i64);
    let c = config.cost.clone();
    let mut values = vec![T::zero(); n_total + 1];
    for n in (1..=n_total).rev() {
        let next = values[n].clone();
        let stage = T::from_count(n);
        let at_cost = c.clone() * inv_n.clone()
            + (T::one() - c.clone() / stage.clone()) * next.clone();
        let at_one = inv_n.clone() + (T::one() - T::one() / stage) * next;
        values[n - 1] = T::max_of(at_cost, at_one);
    }
    values
}

/// `sum_{n=from}^{N} 1/(n-1)`, smallest term first. Requires `from >= 2`.
fn shifted_harmonic_tail<T: Scalar>(from: usize, n_total: usize) -> T {
    (from..=n_total)
        .rev()
        .fold(T::zero(), |acc, n| acc + T::from_ratio(1, (n - 1) as i64))
}

/// `sum_{n=1}^{t-1} S_{n-1}(c)`, smallest term first.
fn pre_threshold_mass<T: Scalar>(survival: &[T], threshold: usize) -> T {
    survival[..threshold - 1]
        .iter()
        .rev()
        .fold(T::zero(), |acc, s| acc + s.clone())
}

/// Success probability from the explicit formula
///
/// `pi = (c/N) sum_{n=1}^{n*-1} S_{n-1}(c)
///       + ((n*-1)/N) S_{n*-1}(c) sum_{n=n*}^{N} 1/(n-1)`.
///
/// When `n* = 1` the second term is `0 * (1/0 + ...)`; the value is then
/// taken from [`zero_state_values`] instead.
pub fn closed_form_success<T: Scalar>(config: &GameConfig<T>) -> T {
    let n_total = config.n_applicants;
    let threshold = compute_threshold(n_total).expect("config already validated");
    if threshold == 1 {
        return zero_state_values(config)[0].clone();
    }
    let c = config.cost.clone();
    let survival = survival_prefix(threshold - 1, &c);
    let inv_n = T::from_ratio(1, n_total as i64);
    let first = c * inv_n.clone() * pre_threshold_mass(&survival, threshold);
    let second = T::from_count(threshold - 1)
        * inv_n
        * survival[threshold - 1].clone()
        * shifted_harmonic_tail(threshold, n_total);
    first + second
}

/// Expected index of the accepted applicant, counting "nobody accepted" as 0:
///
/// `E[tau] = c sum_{n=1}^{n*-1} S_{n-1}(c)
///           + S_{n*-1}(c) sum_{n=n*}^{N} (n*-1)/(n-1)`.
///
/// At `n* = 1` the acceptance probabilities are propagated stage by stage.
pub fn expected_stopping_time<T: Scalar>(config: &GameConfig<T>) -> T {
    let n_total = config.n_applicants;
    let threshold = compute_threshold(n_total).expect("config already validated");
    let c = config.cost.clone();
    if threshold == 1 {
        let mut alive = T::one();
        let mut mean = T::zero();
        for n in 1..=n_total {
            let stage = T::from_count(n);
            // record w.p. 1/n, accepted w.p. 1
            let hit = alive.clone() / stage.clone();
            mean = mean + stage * hit.clone();
            alive = alive - hit;
        }
        return mean;
    }
    let survival = survival_prefix(threshold - 1, &c);
    let first = c * pre_threshold_mass(&survival, threshold);
    let second = survival[threshold - 1].clone()
        * T::from_count(threshold - 1)
        * shifted_harmonic_tail(threshold, n_total);
    first + second
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(num: i64, den: i64) -> BigRational {
        BigRational::from_ratio(num, den)
    }

    #[test]
    fn config_validation() {
        assert_eq!(
            GameConfig::new(1, 0.0).unwrap_err(),
            SecretaryError::TooFewApplicants(1)
        );
        assert!(GameConfig::new(2, 1.0).is_err());
        assert!(GameConfig::new(2, -0.1).is_err());
        assert!(GameConfig::new(2, 0.999).is_ok());
        assert!(compute_threshold(1).is_err());
        assert!(compute_threshold(0).is_err());
    }

    #[test]
    fn threshold_small_cases() {
        assert_eq!(compute_threshold(2).unwrap(), 1);
        assert_eq!(compute_threshold(3).unwrap(), 2);
        assert_eq!(compute_threshold(10).unwrap(), 4);
        assert_eq!(compute_threshold(100).unwrap(), 38);
    }

    #[test]
    fn threshold_sequence_matches_direct() {
        let seq = threshold_sequence(2000).unwrap();
        for (i, &t) in seq.iter().enumerate() {
            assert_eq!(t, compute_threshold(i + 2).unwrap(), "N={}", i + 2);
        }
    }

    #[test]
    fn exact_values_small() {
        let t = solve_values(&GameConfig::new(2, q(0, 1)).unwrap());
        assert_eq!(t.success_probability, q(1, 2));
        let t = solve_values(&GameConfig::new(3, q(0, 1)).unwrap());
        assert_eq!(t.success_probability, q(1, 2));
        let t = solve_values(&GameConfig::new(3, q(1, 2)).unwrap());
        assert_eq!(t.success_probability, q(5, 12));
        assert_eq!(t.threshold, 2);
        assert_eq!(*t.v0(3), q(0, 1));
        assert_eq!(*t.v1(3), q(1, 3));
    }

    #[test]
    fn unnormalized_boundary() {
        let t = solve_values(&GameConfig::new(7, 0.3).unwrap());
        assert_eq!(t.big_v1(7), 1.0);
        assert_eq!(t.big_v0(7), 0.0);
    }

    #[test]
    fn policy_cases() {
        let cfg = GameConfig::new(3, 0.5).unwrap();
        let pol = build_policy(&cfg, &solve_values(&cfg)).unwrap();
        assert_eq!(pol.accept_record, vec![0.5, 1.0, 1.0]);
        assert_eq!(pol.acceptance(1, false), 0.0);

        let cfg = GameConfig::new(2, 0.0).unwrap();
        let pol = build_policy(&cfg, &solve_values(&cfg)).unwrap();
        assert_eq!(pol.accept_record, vec![1.0, 1.0]);

        let cfg = GameConfig::new(10, 0.1).unwrap();
        let pol = build_policy(&cfg, &solve_values(&cfg)).unwrap();
        for n in 1..=10 {
            let want = if n <= 3 { 0.1 } else { 1.0 };
            assert_eq!(pol.accept_record[n - 1], want);
        }
    }

    #[test]
    fn policy_rejects_mismatched_tables() {
        let cfg = GameConfig::new(5, 0.2).unwrap();
        let other = solve_values(&GameConfig::new(6, 0.2).unwrap());
        assert_eq!(
            build_policy(&cfg, &other).unwrap_err(),
            SecretaryError::TablesMismatch {
                tables: 6,
                config: 5
            }
        );
        let other_cost = solve_values(&GameConfig::new(5, 0.3).unwrap());
        assert!(build_policy(&cfg, &other_cost).is_err());
    }

    #[test]
    fn survival_product_cases() {
        assert_eq!(record_survival_product(0, &0.7), 1.0);
        assert_eq!(record_survival_product(5, &0.0), 1.0);
        assert_eq!(record_survival_product(2, &q(1, 2)), q(3, 8));
    }

    #[test]
    fn closed_forms_small() {
        let cfg = GameConfig::new(3, q(1, 2)).unwrap();
        assert_eq!(closed_form_success(&cfg), q(5, 12));
        assert_eq!(expected_stopping_time(&cfg), q(5, 4));
        let cfg = GameConfig::new(2, q(0, 1)).unwrap();
        assert_eq!(closed_form_success(&cfg), q(1, 2));
        assert_eq!(expected_stopping_time(&cfg), q(1, 1));
        // n* = 1 with positive cost still accepts applicant 1 for sure
        let cfg = GameConfig::new(2, q(3, 4)).unwrap();
        assert_eq!(closed_form_success(&cfg), q(1, 2));
        assert_eq!(expected_stopping_time(&cfg), q(1, 1));
    }

    #[test]
    fn zero_state_recursion_gives_success() {
        for n in 2..30 {
            let cfg = GameConfig::new(n, q(3, 10)).unwrap();
            let direct = zero_state_values(&cfg);
            assert_eq!(direct[0], solve_values(&cfg).success_probability);
            assert_eq!(direct[n], q(0, 1));
        }
    }

    #[test]
    fn headline_thousand() {
        let cfg = GameConfig::new(1000, 0.1).unwrap();
        assert!(closed_form_success(&cfg) > 0.2);
        let ten = GameConfig::new(10, 0.1).unwrap();
        let pi: f64 = closed_form_success(&ten);
        assert!((expected_stopping_time(&ten) - 10.0 * pi).abs() <= 1e-12);
    }
}

//! Exact verification at small `N`.
//!
//! [`exact_success_probability`] and [`exact_expected_tau`] walk every one
//! of the `N!` arrival orders, play the applicants' best responses
//! deterministically and carry the administrator's acceptance probabilities
//! along each order analytically. Nothing is sampled, so with rational
//! scalars the result is exact.
//!
//! [`optimality_scan`] searches a discretized family of committed policies
//! (learning or not at each stage, any grid acceptance probability) for
//! anything that beats the full-learning equilibrium. Each candidate is
//! scored by a recursion over the relative rank of the best output seen so
//! far, which is `O(N^3)` per policy and shares work between policies with
//! a common prefix; the maximizer is then re-scored by full enumeration.
//! The grid is finite, so a clean scan is evidence rather than proof.

use rayon::prelude::*;
use serde::Serialize;

use crate::equilibrium::{build_policy, solve_values, GameConfig};
use crate::error::{Result, SecretaryError};
use crate::scalar::{hazards_from_masses, Scalar};
use crate::simulator::{ApplicantRule, StageRule, StrategyProfile};

/// Largest `N` accepted by the enumeration routines.
pub const MAX_ENUMERATION_N: usize = 10;
/// Largest `N` accepted by [`optimality_scan`].
pub const MAX_SCAN_N: usize = 8;
/// Default cap on the number of policies an optimality scan may visit.
pub const DEFAULT_SCAN_BUDGET: u128 = 200_000_000;

const TIE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StageSpec<T> {
    /// Whether the stage incentivizes interviews (accepts only strict
    /// positive records) or accepts blindly.
    pub learning: bool,
    pub accept: T,
    pub applicant: ApplicantRule,
}

/// Committed acceptance policy to be scored exactly.
///
/// Learning stages take `accept` in `{0} ∪ [c, 1]`; zero means records
/// are rejected outright. Non-learning stages take any `accept` in `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolicySpec<T> {
    stages: Vec<StageSpec<T>>,
}

impl<T: Scalar> PolicySpec<T> {
    pub fn new(config: &GameConfig<T>, stages: Vec<StageSpec<T>>) -> Result<Self> {
        if stages.len() != config.n_applicants() {
            return Err(SecretaryError::ProfileLength {
                profile: stages.len(),
                config: config.n_applicants(),
            });
        }
        let c = config.cost();
        for (i, stage) in stages.iter().enumerate() {
            let p = &stage.accept;
            if *p < T::zero() || *p > T::one() {
                return Err(SecretaryError::Probability {
                    stage: i + 1,
                    value: p.as_f64(),
                });
            }
            if stage.learning && !p.is_zero() && p < c {
                return Err(SecretaryError::InfeasiblePolicy {
                    stage: i + 1,
                    reason: format!(
                        "learning stage accepts records with {} < cost {}",
                        p.as_f64(),
                        c.as_f64()
                    ),
                });
            }
        }
        Ok(Self { stages })
    }

    /// Per-stage `(learning, accept)` with best-responding applicants.
    pub fn from_pairs(config: &GameConfig<T>, pairs: Vec<(bool, T)>) -> Result<Self> {
        let stages = pairs
            .into_iter()
            .map(|(learning, accept)| StageSpec {
                learning,
                accept,
                applicant: ApplicantRule::BestResponse,
            })
            .collect();
        Self::new(config, stages)
    }

    /// The full-learning equilibrium policy.
    pub fn equilibrium(config: &GameConfig<T>) -> Self {
        let tables = solve_values(config);
        let policy = build_policy(config, &tables).expect("tables solved for this config");
        let pairs = policy.accept_record.into_iter().map(|p| (true, p)).collect();
        Self::from_pairs(config, pairs).expect("equilibrium policy is feasible")
    }

    /// No-learning equilibrium: applicant `n` is accepted with
    /// unconditional probability `masses[n-1]`, whatever the outputs.
    pub fn no_learning(config: &GameConfig<T>, masses: Vec<T>) -> Result<Self> {
        let hazards = hazards_from_masses(&masses).ok_or_else(|| {
            SecretaryError::AcceptanceMass(masses.iter().map(Scalar::as_f64).sum())
        })?;
        Self::from_pairs(config, hazards.into_iter().map(|p| (false, p)).collect())
    }

    /// Ignore applicant 1, then play the equilibrium record acceptance.
    pub fn skip_first(config: &GameConfig<T>) -> Self {
        let mut spec = Self::equilibrium(config);
        spec.stages[0] = StageSpec {
            learning: false,
            accept: T::zero(),
            applicant: ApplicantRule::BestResponse,
        };
        spec
    }

    /// Replaces the applicant behaviour at `stage` (1-based). Used to build
    /// off-equilibrium counterexamples.
    pub fn with_applicant_rule(mut self, stage: usize, rule: ApplicantRule) -> Self {
        self.stages[stage - 1].applicant = rule;
        self
    }

    pub fn stages(&self) -> &[StageSpec<T>] {
        &self.stages
    }

    pub fn record_acceptance(&self) -> Vec<T> {
        self.stages.iter().map(|s| s.accept.clone()).collect()
    }

    pub fn all_learning(&self) -> bool {
        self.stages.iter().all(|s| s.learning)
    }
}

impl PolicySpec<f64> {
    /// The same commitments as a simulator profile.
    pub fn to_profile(&self, cost: f64) -> StrategyProfile {
        let stages = self
            .stages
            .iter()
            .map(|s| StageRule {
                learning: s.learning,
                accept: s.accept,
                applicant: s.applicant,
            })
            .collect();
        StrategyProfile::new(cost, stages).expect("spec probabilities already validated")
    }
}

/// Deterministic applicant move and the administrator's probability, given
/// the ability rank and the best output so far (0 when none). Returns
/// `(output, acceptance)`.
fn stage_response<T: Scalar>(stage: &StageSpec<T>, cost: &T, rank: usize, past_max: usize) -> (usize, T) {
    let beats = rank > past_max;
    let complete = match stage.applicant {
        ApplicantRule::AlwaysDecline => false,
        ApplicantRule::AlwaysComplete => true,
        ApplicantRule::BestResponse => stage.learning && beats && stage.accept >= *cost,
    };
    let output = if complete { rank } else { 0 };
    let accept = if !stage.learning || (complete && beats) {
        stage.accept.clone()
    } else {
        T::zero()
    };
    (output, accept)
}

fn check_enumeration_size(n: usize) -> Result<()> {
    if n > MAX_ENUMERATION_N {
        return Err(SecretaryError::EnumerationTooLarge {
            n,
            limit: MAX_ENUMERATION_N,
        });
    }
    Ok(())
}

#[derive(Debug, Clone)]
struct Totals<T> {
    success: T,
    tau: T,
}

struct Walker<'a, T> {
    n: usize,
    cost: &'a T,
    policy: &'a PolicySpec<T>,
}

impl<T: Scalar> Walker<'_, T> {
    // `mass` = probability of this prefix times the probability that
    // nobody in it was accepted.
    fn walk(&self, used: u32, depth: usize, past_max: usize, mass: T, totals: &mut Totals<T>) {
        if depth == self.n {
            return;
        }
        let stage_no = depth + 1;
        let spec = &self.policy.stages[depth];
        let branch = mass / T::from_count(self.n - depth);
        for rank in 1..=self.n {
            if used & (1 << rank) != 0 {
                continue;
            }
            self.visit(used, depth, past_max, &branch, spec, stage_no, rank, totals);
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn visit(
        &self,
        used: u32,
        depth: usize,
        past_max: usize,
        branch: &T,
        spec: &StageSpec<T>,
        stage_no: usize,
        rank: usize,
        totals: &mut Totals<T>,
    ) {
        let (output, accept) = stage_response(spec, self.cost, rank, past_max);
        let hit = branch.clone() * accept;
        if rank == self.n {
            totals.success = totals.success.clone() + hit.clone();
        }
        totals.tau = totals.tau.clone() + T::from_count(stage_no) * hit.clone();
        let rest = branch.clone() - hit;
        if rest > T::zero() {
            self.walk(used | (1 << rank), depth + 1, past_max.max(output), rest, totals);
        }
    }
}

fn enumerate<T: Scalar + Send + Sync>(config: &GameConfig<T>, policy: &PolicySpec<T>) -> Result<Totals<T>> {
    let n = config.n_applicants();
    check_enumeration_size(n)?;
    if policy.stages.len() != n {
        return Err(SecretaryError::ProfileLength {
            profile: policy.stages.len(),
            config: n,
        });
    }
    let walker = Walker {
        n,
        cost: config.cost(),
        policy,
    };
    let branch = T::one() / T::from_count(n);
    // one partition per first arrival, merged in rank order
    let parts: Vec<Totals<T>> = (1..=n)
        .into_par_iter()
        .map(|rank| {
            let mut totals = Totals {
                success: T::zero(),
                tau: T::zero(),
            };
            walker.visit(0, 0, 0, &branch, &policy.stages[0], 1, rank, &mut totals);
            totals
        })
        .collect();
    Ok(parts.into_iter().fold(
        Totals {
            success: T::zero(),
            tau: T::zero(),
        },
        |acc, t| Totals {
            success: acc.success + t.success,
            tau: acc.tau + t.tau,
        },
    ))
}

/// Probability of hiring the overall best, by enumeration of all `N!`
/// arrival orders.
pub fn exact_success_probability<T: Scalar + Send + Sync>(
    config: &GameConfig<T>,
    policy: &PolicySpec<T>,
) -> Result<T> {
    Ok(enumerate(config, policy)?.success)
}

/// `E[tau * 1{someone accepted}]`, by enumeration.
pub fn exact_expected_tau<T: Scalar + Send + Sync>(config: &GameConfig<T>, policy: &PolicySpec<T>) -> Result<T> {
    Ok(enumerate(config, policy)?.tau)
}

/// Calls `f` on every permutation of `1..=n`.
fn for_each_permutation(n: usize, f: &mut impl FnMut(&[usize])) {
    fn go(prefix: &mut Vec<usize>, used: u32, n: usize, f: &mut impl FnMut(&[usize])) {
        if prefix.len() == n {
            f(prefix);
            return;
        }
        for r in 1..=n {
            if used & (1 << r) == 0 {
                prefix.push(r);
                go(prefix, used | (1 << r), n, f);
                prefix.pop();
            }
        }
    }
    go(&mut Vec::with_capacity(n), 0, n, f);
}

/// `V_n(x)` reproduced by enumeration: the expected success from stage `n`
/// on, averaged over the orders in which applicant `n` is (`record`) or is
/// not the best so far, with every earlier record assumed interviewed.
///
/// State 0 needs `n >= 2`; returns `None` when no order matches.
pub fn exact_continuation_value<T: Scalar>(
    config: &GameConfig<T>,
    policy: &PolicySpec<T>,
    stage: usize,
    record: bool,
) -> Result<Option<T>> {
    let n = config.n_applicants();
    check_enumeration_size(n)?;
    let cost = config.cost();
    let mut total = T::zero();
    let mut count = 0usize;
    for_each_permutation(n, &mut |order| {
        let prefix_max = order[..stage - 1].iter().copied().max().unwrap_or(0);
        if (order[stage - 1] > prefix_max) != record {
            return;
        }
        count += 1;
        let mut alive = T::one();
        let mut past_max = prefix_max;
        for k in stage..=n {
            let rank = order[k - 1];
            let (output, accept) = stage_response(&policy.stages[k - 1], cost, rank, past_max);
            let hit = alive.clone() * accept;
            if rank == n {
                total = total.clone() + hit.clone();
            }
            alive = alive - hit;
            past_max = past_max.max(output);
        }
    });
    Ok((count > 0).then(|| total / T::from_count(count)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LearningCounterexample {
    /// Ability ranks (1 = worst) of the reachable prefix that breaks
    /// `max theta = max y`.
    pub prefix: Vec<usize>,
    pub outputs: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LearningAudit {
    pub holds: bool,
    pub prefixes_checked: u64,
    pub counterexample: Option<LearningCounterexample>,
}

/// Checks `max theta = max y` on every prefix of every arrival order that
/// the policy reaches with positive probability.
pub fn full_learning_audit_policy<T: Scalar>(
    config: &GameConfig<T>,
    policy: &PolicySpec<T>,
) -> Result<LearningAudit> {
    let n = config.n_applicants();
    check_enumeration_size(n)?;
    let cost = config.cost();
    let mut checked = 0u64;
    let mut counterexample = None;

    #[allow(clippy::too_many_arguments)]
    fn go<T: Scalar>(
        n: usize,
        cost: &T,
        policy: &PolicySpec<T>,
        prefix: &mut Vec<usize>,
        outputs: &mut Vec<usize>,
        used: u32,
        past_max: usize,
        alive: bool,
        checked: &mut u64,
        found: &mut Option<LearningCounterexample>,
    ) {
        if found.is_some() || !alive || prefix.len() == n {
            return;
        }
        let depth = prefix.len();
        for rank in 1..=n {
            if used & (1 << rank) != 0 {
                continue;
            }
            let (output, accept) = stage_response(&policy.stages[depth], cost, rank, past_max);
            prefix.push(rank);
            outputs.push(output);
            *checked += 1;
            let best_theta = prefix.iter().copied().max().unwrap_or(0);
            let best_output = past_max.max(output);
            if best_theta != best_output {
                *found = Some(LearningCounterexample {
                    prefix: prefix.clone(),
                    outputs: outputs.clone(),
                });
                return;
            }
            let continues = accept < T::one();
            go(
                n,
                cost,
                policy,
                prefix,
                outputs,
                used | (1 << rank),
                best_output,
                continues,
                checked,
                found,
            );
            prefix.pop();
            outputs.pop();
            if found.is_some() {
                return;
            }
        }
    }

    go(
        n,
        cost,
        policy,
        &mut Vec::new(),
        &mut Vec::new(),
        0,
        0,
        true,
        &mut checked,
        &mut counterexample,
    );
    Ok(LearningAudit {
        holds: counterexample.is_none(),
        prefixes_checked: checked,
        counterexample,
    })
}

/// [`full_learning_audit_policy`] for the equilibrium policy.
pub fn full_learning_audit<T: Scalar>(config: &GameConfig<T>) -> Result<LearningAudit> {
    full_learning_audit_policy(config, &PolicySpec::equilibrium(config))
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Choice {
    learning: bool,
    accept: f64,
}

// One stage of the relative-rank recursion. `mass[g]` is the probability of
// reaching the stage with `g` earlier applicants better than the best
// output; `g == stage - 1` means no positive output yet. Returns the
// success and `tau` increments.
fn rank_step(mass: &[f64], next: &mut [f64], stage: usize, n: usize, cost: f64, choice: Choice) -> (f64, f64) {
    let seen = stage - 1;
    next[..=stage].iter_mut().for_each(|m| *m = 0.0);
    let mut success = 0.0;
    let mut hits = 0.0;
    let inv = 1.0 / stage as f64;
    for (g, &m) in mass[..=seen].iter().enumerate() {
        if m == 0.0 {
            continue;
        }
        let share = m * inv;
        for r in 1..=stage {
            let beats = r <= g + 1;
            let complete = choice.learning && beats && choice.accept >= cost;
            let p = if !choice.learning || complete { choice.accept } else { 0.0 };
            let hit = share * p;
            if r == 1 {
                success += hit * stage as f64 / n as f64;
            }
            hits += hit;
            let g_next = match (complete, beats) {
                (true, _) => r - 1,
                (false, true) => g + 1,
                (false, false) => g,
            };
            next[g_next] += share - hit;
        }
    }
    (success, hits * stage as f64)
}

/// Scores a policy by the relative-rank recursion. Independent of the
/// permutation walk and usable for any `N`. Only best-responding
/// applicants are supported.
pub fn rank_recursion_value(config: &GameConfig<f64>, policy: &PolicySpec<f64>) -> (f64, f64) {
    let n = config.n_applicants();
    let cost = *config.cost();
    let mut mass = vec![0.0; n + 1];
    let mut next = vec![0.0; n + 1];
    mass[0] = 1.0;
    let (mut success, mut tau) = (0.0, 0.0);
    for (i, s) in policy.stages.iter().enumerate() {
        let choice = Choice {
            learning: s.learning,
            accept: s.accept,
        };
        let (ds, dt) = rank_step(&mass, &mut next, i + 1, n, cost, choice);
        success += ds;
        tau += dt;
        std::mem::swap(&mut mass, &mut next);
    }
    (success, tau)
}

/// Acceptance grid `{0} ∪ {c, c+step, ..., 1}`.
pub fn acceptance_grid(cost: f64, step: f64) -> Vec<f64> {
    let mut grid = vec![0.0];
    let mut k = 0u32;
    loop {
        let q = cost + f64::from(k) * step;
        if q > 1.0 - 1e-9 {
            break;
        }
        if q > 0.0 {
            grid.push(q);
        }
        k += 1;
    }
    grid.push(1.0);
    grid
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub n_applicants: usize,
    pub cost: f64,
    pub grid_step: f64,
    pub policies_scanned: u128,
    pub max_success: f64,
    /// First maximizer found; learning stages are listed before blind ones.
    pub argmax: PolicySpec<f64>,
    /// The maximizer re-scored by full enumeration.
    pub argmax_enumerated: f64,
    /// Number of scanned policies within `1e-12` of the maximum.
    pub maximizer_count: u64,
    /// `v_1(1)` from backward induction.
    pub equilibrium_success: f64,
    /// The equilibrium policy scored by enumeration.
    pub equilibrium_enumerated: f64,
    /// `max_success <= equilibrium_success + 1e-12`.
    pub no_policy_exceeds: bool,
    /// The equilibrium policy scores within `1e-12` of the maximum.
    pub equilibrium_attains_max: bool,
    pub note: &'static str,
}

struct ScanState {
    best: f64,
    best_path: Vec<usize>,
    ties: u64,
    visited: u128,
}

/// Exhaustive search over policies with every stage either learning or
/// blind and acceptance probabilities from [`acceptance_grid`].
pub fn optimality_scan(config: &GameConfig<f64>, grid_step: f64) -> Result<ScanReport> {
    optimality_scan_with_budget(config, grid_step, DEFAULT_SCAN_BUDGET)
}

pub fn optimality_scan_with_budget(config: &GameConfig<f64>, grid_step: f64, budget: u128) -> Result<ScanReport> {
    let n = config.n_applicants();
    if n > MAX_SCAN_N {
        return Err(SecretaryError::EnumerationTooLarge { n, limit: MAX_SCAN_N });
    }
    if !(grid_step > 0.0 && grid_step <= 0.25) {
        return Err(SecretaryError::GridStep(grid_step));
    }
    let cost = *config.cost();
    let grid = acceptance_grid(cost, grid_step);
    let choices: Vec<Choice> = [true, false]
        .iter()
        .flat_map(|&learning| grid.iter().map(move |&accept| Choice { learning, accept }))
        .collect();
    let visits = (choices.len() as u128).pow(n as u32);
    if visits > budget {
        return Err(SecretaryError::ScanBudgetExceeded { visits, budget });
    }

    let mut buffers = vec![vec![0.0; n + 1]; n + 1];
    buffers[0][0] = 1.0;
    let mut path = Vec::with_capacity(n);
    let mut state = ScanState {
        best: f64::NEG_INFINITY,
        best_path: Vec::new(),
        ties: 0,
        visited: 0,
    };

    #[allow(clippy::too_many_arguments)]
    fn descend(
        depth: usize,
        acc: f64,
        n: usize,
        cost: f64,
        choices: &[Choice],
        buffers: &mut [Vec<f64>],
        path: &mut Vec<usize>,
        state: &mut ScanState,
    ) {
        if depth == n {
            state.visited += 1;
            if acc > state.best + TIE_TOLERANCE {
                state.best = acc;
                state.best_path = path.clone();
                state.ties = 1;
            } else if (acc - state.best).abs() <= TIE_TOLERANCE {
                state.ties += 1;
            }
            return;
        }
        for (i, &choice) in choices.iter().enumerate() {
            let mut next = std::mem::take(&mut buffers[depth + 1]);
            let (ds, _) = rank_step(&buffers[depth], &mut next, depth + 1, n, cost, choice);
            buffers[depth + 1] = next;
            path.push(i);
            descend(depth + 1, acc + ds, n, cost, choices, buffers, path, state);
            path.pop();
        }
    }

    descend(0, 0.0, n, cost, &choices, &mut buffers, &mut path, &mut state);

    let argmax = PolicySpec::from_pairs(
        config,
        state
            .best_path
            .iter()
            .map(|&i| (choices[i].learning, choices[i].accept))
            .collect(),
    )?;
    let eq_policy = PolicySpec::equilibrium(config);
    let equilibrium_success = solve_values(config).success_probability;
    let equilibrium_enumerated = exact_success_probability(config, &eq_policy)?;
    let argmax_enumerated = exact_success_probability(config, &argmax)?;
    Ok(ScanReport {
        n_applicants: n,
        cost,
        grid_step,
        policies_scanned: state.visited,
        max_success: state.best,
        argmax,
        argmax_enumerated,
        maximizer_count: state.ties,
        equilibrium_success,
        equilibrium_enumerated,
        no_policy_exceeds: state.best <= equilibrium_success + TIE_TOLERANCE,
        equilibrium_attains_max: (equilibrium_enumerated - state.best).abs() <= TIE_TOLERANCE,
        note: "finite grid over acceptance probabilities; evidence, not proof",
    })
}

//! Forward simulation of the interview game under a committed strategy
//! profile, plus Monte Carlo aggregation and an incentive audit.
//!
//! A profile is a per-stage rule. On a *learning* stage the administrator
//! accepts only a strictly new positive maximum of the outputs (with the
//! stage probability), so a record applicant completes the interview when
//! that probability covers the cost. On a *non-learning* stage the
//! administrator accepts with a fixed probability whatever the output is,
//! and applicants decline. Mixing the two covers the full-learning
//! equilibrium, the no-learning equilibria and partial-learning profiles.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::equilibrium::{build_policy, solve_values, GameConfig};
use crate::error::{Result, SecretaryError};
use crate::scalar::hazards_from_masses;

/// Applicant's interview decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Action {
    Decline = 0,
    Complete = 1,
}

impl Action {
    pub fn as_bit(self) -> u8 {
        self as u8
    }
}

/// Override hook for the applicants at one stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ApplicantRule {
    /// Best response to the administrator's committed rule.
    BestResponse,
    AlwaysDecline,
    AlwaysComplete,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StageRule {
    /// Whether the administrator conditions on the output at this stage.
    pub learning: bool,
    /// Acceptance probability: for a strict new positive maximum on a
    /// learning stage, unconditionally on a non-learning stage.
    pub accept: f64,
    pub applicant: ApplicantRule,
}

/// Committed administrator rule plus the applicants' behaviour, one entry
/// per stage.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StrategyProfile {
    cost: f64,
    stages: Vec<StageRule>,
}

impl StrategyProfile {
    pub fn new(cost: f64, stages: Vec<StageRule>) -> Result<Self> {
        for (i, stage) in stages.iter().enumerate() {
            if !(0.0..=1.0).contains(&stage.accept) {
                return Err(SecretaryError::Probability {
                    stage: i + 1,
                    value: stage.accept,
                });
            }
        }
        Ok(Self { cost, stages })
    }

    /// The full-learning equilibrium of `config`.
    pub fn equilibrium(config: &GameConfig<f64>) -> Self {
        let tables = solve_values(config);
        let policy = build_policy(config, &tables).expect("tables solved for this config");
        let stages = policy
            .accept_record
            .iter()
            .map(|&p| StageRule {
                learning: true,
                accept: p,
                applicant: ApplicantRule::BestResponse,
            })
            .collect();
        Self {
            cost: *config.cost(),
            stages,
        }
    }

    /// Applicants never interview; applicant `n` is accepted with
    /// unconditional probability `masses[n-1]` (the masses sum to at most 1).
    pub fn no_learning(config: &GameConfig<f64>, masses: &[f64]) -> Result<Self> {
        let hazards = hazards_from_masses(masses)
            .ok_or_else(|| SecretaryError::AcceptanceMass(masses.iter().sum()))?;
        let stages = hazards
            .iter()
            .map(|&p| StageRule {
                learning: false,
                accept: p,
                applicant: ApplicantRule::BestResponse,
            })
            .collect();
        let profile = Self::new(*config.cost(), stages)?;
        profile.check_length(config)?;
        Ok(profile)
    }

    /// Per-stage `(learning, accept)` pairs with best-responding applicants.
    pub fn partial_learning(config: &GameConfig<f64>, stages: &[(bool, f64)]) -> Result<Self> {
        let stages = stages
            .iter()
            .map(|&(learning, accept)| StageRule {
                learning,
                accept,
                applicant: ApplicantRule::BestResponse,
            })
            .collect();
        let profile = Self::new(*config.cost(), stages)?;
        profile.check_length(config)?;
        Ok(profile)
    }

    pub fn with_applicant_rule(mut self, stage: usize, rule: ApplicantRule) -> Self {
        self.stages[stage - 1].applicant = rule;
        self
    }

    pub fn with_acceptance(mut self, stage: usize, accept: f64) -> Self {
        self.stages[stage - 1].accept = accept;
        self
    }

    pub fn cost(&self) -> f64 {
        self.cost
    }

    pub fn stages(&self) -> &[StageRule] {
        &self.stages
    }

    pub fn stage(&self, n: usize) -> &StageRule {
        &self.stages[n - 1]
    }

    pub fn len(&self) -> usize {
        self.stages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stages.is_empty()
    }

    pub(crate) fn check_length(&self, config: &GameConfig<f64>) -> Result<()> {
        if self.stages.len() != config.n_applicants() {
            return Err(SecretaryError::ProfileLength {
                profile: self.stages.len(),
                config: config.n_applicants(),
            });
        }
        Ok(())
    }

    /// Administrator's acceptance probability at `stage` given whether the
    /// output is a strict new maximum and whether it is positive. Ties with
    /// the running maximum count as non-records.
    pub fn admin_probability(&self, stage: usize, new_strict_max: bool, positive: bool) -> f64 {
        let rule = self.stage(stage);
        if !rule.learning || (new_strict_max && positive) {
            rule.accept
        } else {
            0.0
        }
    }

    /// Expected payoffs `(complete, decline)` for an applicant with the given
    /// ability facing the stage rule.
    pub fn applicant_payoffs(&self, stage: usize, ability: f64, past_output_max: f64) -> (f64, f64) {
        let record = ability > past_output_max;
        let complete = self.admin_probability(stage, record, ability > 0.0) - self.cost;
        let decline = self.admin_probability(stage, false, false);
        (complete, decline)
    }
}

/// Applicant's action at `stage`.
///
/// Best response on a learning stage: complete iff the ability beats every
/// past output and the record-acceptance probability is at least the cost.
/// On a non-learning stage acceptance does not depend on the output, so
/// applicants decline.
pub fn applicant_action(
    profile: &StrategyProfile,
    stage: usize,
    ability: f64,
    past_output_max: f64,
) -> Action {
    let rule = profile.stage(stage);
    match rule.applicant {
        ApplicantRule::AlwaysDecline => Action::Decline,
        ApplicantRule::AlwaysComplete => Action::Complete,
        ApplicantRule::BestResponse => {
            if rule.learning && ability > past_output_max && rule.accept >= profile.cost {
                Action::Complete
            } else {
                Action::Decline
            }
        }
    }
}

/// Positive, pairwise distinct abilities `theta_1..theta_N`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AbilityDraw {
    abilities: Vec<f64>,
}

impl AbilityDraw {
    pub fn new(abilities: Vec<f64>) -> Result<Self> {
        if abilities.len() < 2 {
            return Err(SecretaryError::TooFewApplicants(abilities.len()));
        }
        if abilities.iter().any(|a| a.is_nan() || *a <= 0.0) {
            return Err(SecretaryError::InvalidAbilities("abilities must be positive"));
        }
        let mut sorted = abilities.clone();
        sorted.sort_by(f64::total_cmp);
        if sorted.windows(2).any(|w| w[0] >= w[1]) {
            return Err(SecretaryError::InvalidAbilities("abilities must be distinct"));
        }
        Ok(Self { abilities })
    }

    pub fn abilities(&self) -> &[f64] {
        &self.abilities
    }

    pub fn len(&self) -> usize {
        self.abilities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.abilities.is_empty()
    }

    /// 1-based index of the best applicant.
    pub fn best_index(&self) -> usize {
        self.abilities
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i + 1)
            .expect("non-empty draw")
    }

    /// Whether applicant `n` beats everyone before it.
    pub fn is_record(&self, n: usize) -> bool {
        let theta = self.abilities[n - 1];
        self.abilities[..n - 1].iter().all(|&prev| prev < theta)
    }
}

/// Deterministic random stream for trial `trial` under `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Uniformly random arrival order of `N` applicants.
///
/// Abilities are the ranks `1/N, 2/N, ..., 1` shuffled, so every one of
/// the `N!` orders is equally likely and ties cannot occur.
pub fn sample_abilities<R: Rng + ?Sized>(n_applicants: usize, rng: &mut R) -> Result<AbilityDraw> {
    if n_applicants < 2 {
        return Err(SecretaryError::TooFewApplicants(n_applicants));
    }
    let scale = n_applicants as f64;
    let mut abilities: Vec<f64> = (1..=n_applicants).map(|r| r as f64 / scale).collect();
    abilities.shuffle(rng);
    Ok(AbilityDraw { abilities })
}

/// One play of the game.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GameTranscript {
    pub abilities: AbilityDraw,
    /// Actions of the interviewed applicants, in order.
    pub actions: Vec<Action>,
    /// `y_n = a_n * theta_n` for each interviewed applicant.
    pub outputs: Vec<f64>,
    /// 1-based index of the accepted applicant, if any.
    pub accepted_index: Option<usize>,
    pub success: bool,
    /// `1-c`, `-c` or `0` per interviewed applicant.
    pub applicant_payoffs: Vec<f64>,
}

impl GameTranscript {
    pub fn interviewed(&self) -> usize {
        self.actions.len()
    }

    /// `max theta = max y` on every prefix until the game ends.
    pub fn full_learning_holds(&self) -> bool {
        let theta = self.abilities.abilities();
        let mut best_theta = 0.0f64;
        let mut best_output = 0.0f64;
        for (n, &y) in self.outputs.iter().enumerate() {
            best_theta = best_theta.max(theta[n]);
            best_output = best_output.max(y);
            if best_theta != best_output {
                return false;
            }
        }
        true
    }

    /// A strict new maximum of the outputs at stage `n` coincides with
    /// applicant `n` being a record in ability, at every interviewed stage.
    pub fn records_classified(&self) -> bool {
        let mut best_output = 0.0f64;
        for (i, &y) in self.outputs.iter().enumerate() {
            let output_record = y > best_output;
            if output_record != self.abilities.is_record(i + 1) {
                return false;
            }
            best_output = best_output.max(y);
        }
        true
    }
}

#[derive(Debug, Clone, Copy)]
struct Outcome {
    accepted: Option<usize>,
    success: bool,
}

fn run<R: Rng + ?Sized>(
    profile: &StrategyProfile,
    draw: &AbilityDraw,
    rng: &mut R,
    mut log: Option<&mut GameTranscript>,
) -> Outcome {
    let theta = draw.abilities();
    let mut past_max = 0.0f64;
    for n in 1..=theta.len() {
        let ability = theta[n - 1];
        let action = applicant_action(profile, n, ability, past_max);
        let output = match action {
            Action::Complete => ability,
            Action::Decline => 0.0,
        };
        let p = profile.admin_probability(n, output > past_max, output > 0.0);
        let accepted = rng.random::<f64>() < p;
        if let Some(t) = log.as_deref_mut() {
            t.actions.push(action);
            t.outputs.push(output);
            let pay = match (action, accepted) {
                (Action::Complete, true) => 1.0 - profile.cost,
                (Action::Complete, false) => -profile.cost,
                (Action::Decline, _) => 0.0,
            };
            t.applicant_payoffs.push(pay);
        }
        past_max = past_max.max(output);
        if accepted {
            return Outcome {
                accepted: Some(n),
                success: n == draw.best_index(),
            };
        }
    }
    Outcome {
        accepted: None,
        success: false,
    }
}

/// Plays a given arrival order; the administrator's randomization draws
/// from `rng`.
pub fn play_with_abilities<R: Rng + ?Sized>(
    profile: &StrategyProfile,
    abilities: AbilityDraw,
    rng: &mut R,
) -> GameTranscript {
    let mut transcript = GameTranscript {
        abilities,
        actions: Vec::new(),
        outputs: Vec::new(),
        accepted_index: None,
        success: false,
        applicant_payoffs: Vec::new(),
    };
    let draw = transcript.abilities.clone();
    let outcome = run(profile, &draw, rng, Some(&mut transcript));
    transcript.accepted_index = outcome.accepted;
    transcript.success = outcome.success;
    transcript
}

/// Draws an arrival order and plays it.
pub fn play_game<R: Rng + ?Sized>(
    config: &GameConfig<f64>,
    profile: &StrategyProfile,
    rng: &mut R,
) -> Result<GameTranscript> {
    profile.check_length(config)?;
    let draw = sample_abilities(config.n_applicants(), rng)?;
    Ok(play_with_abilities(profile, draw, rng))
}

/// Monte Carlo summary of many independent plays.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AggregateStats {
    pub trials: u64,
    pub success_rate: f64,
    pub success_se: f64,
    /// Fraction of trials in which someone was accepted.
    pub acceptance_rate: f64,
    /// Mean of `tau`, with `tau = 0` when nobody is accepted.
    pub mean_tau_unconditional: f64,
    /// Standard error of `mean_tau_unconditional`.
    pub tau_se: f64,
    /// Mean of `tau` over trials with an acceptance (`NaN` if none).
    pub mean_tau_conditional: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, Default)]
struct Tally {
    successes: u64,
    accepted: u64,
    tau_sum: u64,
    tau_sq_sum: u128,
}

impl Tally {
    fn merge(self, other: Self) -> Self {
        Self {
            successes: self.successes + other.successes,
            accepted: self.accepted + other.accepted,
            tau_sum: self.tau_sum + other.tau_sum,
            tau_sq_sum: self.tau_sq_sum + other.tau_sq_sum,
        }
    }
}

const CHUNK: u64 = 4096;

/// Runs `trials` plays. Trial `i` uses stream `i` of `seed`, and the
/// per-trial counts are integers, so the result does not depend on how
/// rayon schedules the work.
pub fn estimate(
    config: &GameConfig<f64>,
    profile: &StrategyProfile,
    trials: u64,
    seed: u64,
) -> Result<AggregateStats> {
    if trials == 0 {
        return Err(SecretaryError::NoTrials);
    }
    profile.check_length(config)?;
    let n = config.n_applicants();
    let chunks = trials.div_ceil(CHUNK);
    let tally = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut local = Tally::default();
            let end = ((chunk + 1) * CHUNK).min(trials);
            for trial in chunk * CHUNK..end {
                let mut rng = trial_rng(seed, trial);
                let draw = sample_abilities(n, &mut rng).expect("n >= 2");
                let outcome = run(profile, &draw, &mut rng, None);
                if let Some(tau) = outcome.accepted {
                    let tau = tau as u64;
                    local.accepted += 1;
                    local.tau_sum += tau;
                    local.tau_sq_sum += (tau as u128) * (tau as u128);
                }
                local.successes += outcome.success as u64;
            }
            local
        })
        .reduce(Tally::default, Tally::merge);

    let t = trials as f64;
    let success_rate = tally.successes as f64 / t;
    let mean_tau = tally.tau_sum as f64 / t;
    let second_moment = tally.tau_sq_sum as f64 / t;
    let tau_var = (second_moment - mean_tau * mean_tau).max(0.0);
    let mean_tau_conditional = if tally.accepted > 0 {
        tally.tau_sum as f64 / tally.accepted as f64
    } else {
        f64::NAN
    };
    Ok(AggregateStats {
        trials,
        success_rate,
        success_se: (success_rate * (1.0 - success_rate) / t).sqrt(),
        acceptance_rate: tally.accepted as f64 / t,
        mean_tau_unconditional: mean_tau,
        tau_se: (tau_var / t).sqrt(),
        mean_tau_conditional,
        seed,
    })
}

/// [`estimate`] on a dedicated pool with `threads` workers.
pub fn estimate_with_threads(
    config: &GameConfig<f64>,
    profile: &StrategyProfile,
    trials: u64,
    seed: u64,
    threads: usize,
) -> Result<AggregateStats> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool");
    pool.install(|| estimate(config, profile, trials, seed))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ViolationKind {
    /// Learning stage whose positive record-acceptance probability is below
    /// the cost, so records will not interview.
    RecordAcceptanceBelowCost,
    /// Learning stage that accepts something other than a strict record.
    NonRecordAccepted,
    /// Prescribed applicant action earns strictly less than the alternative.
    NotBestResponse,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub stage: usize,
    pub kind: ViolationKind,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Default)]
pub struct IncentiveAudit {
    pub violations: Vec<Violation>,
}

impl IncentiveAudit {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the applicant-side constraints of a profile stage by stage.
///
/// On every learning stage that expects interviews (positive record
/// acceptance) the probability must cover the cost and non-records must
/// never be accepted. At every stage, for a record and for a non-record
/// applicant, the prescribed action must be a best response.
pub fn incentive_audit(config: &GameConfig<f64>, profile: &StrategyProfile) -> Result<IncentiveAudit> {
    profile.check_length(config)?;
    let c = profile.cost;
    let mut violations = Vec::new();
    for n in 1..=profile.len() {
        let rule = profile.stage(n);
        if rule.learning {
            if rule.accept > 0.0 && rule.accept < c {
                violations.push(Violation {
                    stage: n,
                    kind: ViolationKind::RecordAcceptanceBelowCost,
                    detail: format!("accepts records with {} < cost {}", rule.accept, c),
                });
            }
            let leaks = [(false, true), (false, false), (true, false)]
                .iter()
                .any(|&(rec, pos)| profile.admin_probability(n, rec, pos) != 0.0);
            if leaks {
                violations.push(Violation {
                    stage: n,
                    kind: ViolationKind::NonRecordAccepted,
                    detail: "positive acceptance without a strict positive record".into(),
                });
            }
        }
        // probe a record (ability above the running max) and a non-record
        for (label, ability, past) in [("record", 1.0, 0.5), ("non-record", 0.5, 1.0)] {
            let (complete, decline) = profile.applicant_payoffs(n, ability, past);
            let action = applicant_action(profile, n, ability, past);
            let worse = match action {
                Action::Complete => complete < decline,
                Action::Decline => decline < complete,
            };
            if worse {
                violations.push(Violation {
                    stage: n,
                    kind: ViolationKind::NotBestResponse,
                    detail: format!(
                        "{label} applicant plays {action:?}: complete pays {complete}, decline pays {decline}"
                    ),
                });
            }
        }
    }
    Ok(IncentiveAudit { violations })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eq_profile(n: usize, c: f64) -> (GameConfig<f64>, StrategyProfile) {
        let cfg = GameConfig::new(n, c).unwrap();
        let prof = StrategyProfile::equilibrium(&cfg);
        (cfg, prof)
    }

    #[test]
    fn applicant_rule_cases() {
        let (_, prof) = eq_profile(5, 0.3);
        assert_eq!(applicant_action(&prof, 3, 0.2, 0.6), Action::Decline);
        assert_eq!(applicant_action(&prof, 1, 0.01, 0.0), Action::Complete);
        assert_eq!(applicant_action(&prof, 4, 0.7, 0.6), Action::Complete);

        let cfg = GameConfig::new(5, 0.3).unwrap();
        let nl = StrategyProfile::no_learning(&cfg, &[0.2; 5]).unwrap();
        for n in 1..=5 {
            assert_eq!(applicant_action(&nl, n, 0.9, 0.0), Action::Decline);
        }
    }

    #[test]
    fn zero_cost_pre_threshold_still_interviews() {
        // at c = 0 the equilibrium rejects every record before n*, yet
        // records complete the interview
        let (_, prof) = eq_profile(10, 0.0);
        assert_eq!(prof.stage(2).accept, 0.0);
        assert_eq!(applicant_action(&prof, 2, 0.9, 0.5), Action::Complete);
    }

    #[test]
    fn two_applicants_zero_cost() {
        let (cfg, prof) = eq_profile(2, 0.0);
        for trial in 0..200 {
            let mut rng = trial_rng(7, trial);
            let t = play_game(&cfg, &prof, &mut rng).unwrap();
            assert_eq!(t.accepted_index, Some(1));
            let th = t.abilities.abilities();
            assert_eq!(t.success, th[0] > th[1]);
        }
    }

    #[test]
    fn transcript_invariants() {
        let (cfg, prof) = eq_profile(12, 0.4);
        for trial in 0..500 {
            let mut rng = trial_rng(11, trial);
            let t = play_game(&cfg, &prof, &mut rng).unwrap();
            assert!(t.full_learning_holds());
            assert!(t.records_classified());
            let k = t.interviewed();
            assert_eq!(t.outputs.len(), k);
            for i in 0..k {
                let a = t.actions[i].as_bit() as f64;
                assert_eq!(t.outputs[i], a * t.abilities.abilities()[i]);
            }
            if let Some(tau) = t.accepted_index {
                assert_eq!(tau, k);
            } else {
                assert_eq!(k, 12);
            }
            if t.success {
                assert_eq!(t.accepted_index, Some(t.abilities.best_index()));
            }
            for (i, &pay) in t.applicant_payoffs.iter().enumerate() {
                let expected = match (t.actions[i], t.accepted_index == Some(i + 1)) {
                    (Action::Complete, true) => 1.0 - 0.4,
                    (Action::Complete, false) => -0.4,
                    _ => 0.0,
                };
                assert_eq!(pay, expected);
            }
        }
    }

    #[test]
    fn first_always_no_learning() {
        let cfg = GameConfig::new(4, 0.2).unwrap();
        let prof = StrategyProfile::no_learning(&cfg, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        let stats = estimate(&cfg, &prof, 40_000, 3).unwrap();
        assert_eq!(stats.acceptance_rate, 1.0);
        assert_eq!(stats.mean_tau_unconditional, 1.0);
        assert!((stats.success_rate - 0.25).abs() < 4.0 * stats.success_se);
    }

    #[test]
    fn ability_draw_validation() {
        assert!(AbilityDraw::new(vec![0.3, 0.3]).is_err());
        assert!(AbilityDraw::new(vec![0.0, 0.3]).is_err());
        assert!(AbilityDraw::new(vec![0.3]).is_err());
        let d = AbilityDraw::new(vec![0.3, 0.9, 0.5]).unwrap();
        assert_eq!(d.best_index(), 2);
        assert!(d.is_record(1) && d.is_record(2) && !d.is_record(3));
    }

    #[test]
    fn profile_validation() {
        let cfg = GameConfig::new(3, 0.2).unwrap();
        assert!(StrategyProfile::no_learning(&cfg, &[0.5, 0.6, 0.0]).is_err());
        assert!(StrategyProfile::no_learning(&cfg, &[0.5, 0.5]).is_err());
        let short = StrategyProfile::equilibrium(&GameConfig::new(2, 0.2).unwrap());
        assert!(play_game(&cfg, &short, &mut trial_rng(0, 0)).is_err());
        assert_eq!(estimate(&cfg, &short, 0, 0).unwrap_err(), SecretaryError::NoTrials);
    }

    #[test]
    fn audit_cases() {
        for n in 2..12 {
            for c in [0.0, 0.1, 0.5, 0.9] {
                let (cfg, prof) = eq_profile(n, c);
                assert!(incentive_audit(&cfg, &prof).unwrap().is_clean(), "N={n} c={c}");
            }
        }
        let (cfg, prof) = eq_profile(5, 0.4);
        let bad = prof.clone().with_acceptance(2, 0.2);
        let audit = incentive_audit(&cfg, &bad).unwrap();
        assert_eq!(audit.violations.len(), 1);
        assert_eq!(audit.violations[0].stage, 2);
        assert_eq!(audit.violations[0].kind, ViolationKind::RecordAcceptanceBelowCost);

        let nl = StrategyProfile::no_learning(&cfg, &[0.2; 5]).unwrap();
        assert!(incentive_audit(&cfg, &nl).unwrap().is_clean());

        let lazy = prof.with_applicant_rule(4, ApplicantRule::AlwaysDecline);
        let audit = incentive_audit(&cfg, &lazy).unwrap();
        assert_eq!(audit.violations.len(), 1);
        assert_eq!(audit.violations[0].kind, ViolationKind::NotBestResponse);
    }
}

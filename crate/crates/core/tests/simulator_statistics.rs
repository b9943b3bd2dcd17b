use costly_secretary::simulator::{
    estimate, estimate_with_threads, incentive_audit, play_game, play_with_abilities,
    sample_abilities, trial_rng, AbilityDraw, ApplicantRule, StrategyProfile, ViolationKind,
};
use costly_secretary::{expected_stopping_time, solve_values, GameConfig, SecretaryError};

fn within(estimate: f64, target: f64, se: f64) -> bool {
    (estimate - target).abs() <= 4.0 * se
}

#[test]
fn record_frequencies() {
    let n = 10;
    let draws = 1_000_000u64;
    let mut rng = trial_rng(11, 0);
    let mut records = vec![0u64; n];
    let mut joint = 0u64;
    for _ in 0..draws {
        let draw = sample_abilities(n, &mut rng).unwrap();
        for (k, count) in records.iter_mut().enumerate() {
            if draw.is_record(k + 1) {
                *count += 1;
            }
        }
        if draw.is_record(2) && draw.is_record(3) {
            joint += 1;
        }
    }
    for (k, &count) in records.iter().enumerate() {
        let p = 1.0 / (k + 1) as f64;
        let se = (p * (1.0 - p) / draws as f64).sqrt().max(1e-12);
        assert!(within(count as f64 / draws as f64, p, se), "stage {}", k + 1);
    }
    let p = 1.0 / 6.0;
    let se = (p * (1.0 - p) / draws as f64).sqrt();
    assert!(within(joint as f64 / draws as f64, p, se));
}

#[test]
fn accepted_record_is_best_with_probability_n_over_big_n() {
    let cfg = GameConfig::new(10, 0.1).unwrap();
    let profile = StrategyProfile::equilibrium(&cfg);
    let trials = 400_000u64;
    let mut accepted = [0u64; 10];
    let mut best = [0u64; 10];
    for t in 0..trials {
        let mut rng = trial_rng(3, t);
        let game = play_game(&cfg, &profile, &mut rng).unwrap();
        if let Some(k) = game.accepted_index {
            accepted[k - 1] += 1;
            if game.success {
                best[k - 1] += 1;
            }
        }
    }
    for k in 0..10 {
        if accepted[k] < 1000 {
            continue;
        }
        let p = (k + 1) as f64 / 10.0;
        let freq = best[k] as f64 / accepted[k] as f64;
        let se = (p * (1.0 - p) / accepted[k] as f64).sqrt().max(1e-12);
        assert!(within(freq, p, se), "stage {}: {freq} vs {p}", k + 1);
    }
}

#[test]
fn no_learning_success_is_one_over_n() {
    let cfg = GameConfig::new(8, 0.3).unwrap();
    let vectors: [&[f64]; 3] = [
        &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        &[0.125; 8],
        &[0.05, 0.1, 0.3, 0.0, 0.2, 0.1, 0.05, 0.2],
    ];
    for (i, masses) in vectors.iter().enumerate() {
        let profile = StrategyProfile::no_learning(&cfg, masses).unwrap();
        let stats = estimate(&cfg, &profile, 200_000, 40 + i as u64).unwrap();
        assert!(within(stats.success_rate, 0.125, stats.success_se), "vector {i}");
    }
}

#[test]
fn unassigned_mass_means_nobody_hired() {
    let cfg = GameConfig::new(5, 0.2).unwrap();
    let profile = StrategyProfile::no_learning(&cfg, &[0.1, 0.1, 0.1, 0.1, 0.1]).unwrap();
    let stats = estimate(&cfg, &profile, 100_000, 9).unwrap();
    let se = (0.25f64 / 100_000.0).sqrt();
    assert!(within(stats.acceptance_rate, 0.5, se));
    assert!(within(stats.success_rate, 0.1, stats.success_se));
    let product = stats.mean_tau_conditional * stats.acceptance_rate;
    assert!((stats.mean_tau_unconditional - product).abs() < 1e-9);
}

#[test]
fn equilibrium_estimates_match_dp() {
    for (n, c) in [(2, 0.0), (5, 0.9), (40, 0.3)] {
        let cfg = GameConfig::new(n, c).unwrap();
        let profile = StrategyProfile::equilibrium(&cfg);
        let stats = estimate(&cfg, &profile, 200_000, 21).unwrap();
        let pi = solve_values(&cfg).success_probability;
        assert!(within(stats.success_rate, pi, stats.success_se), "N = {n}");
        let tau = expected_stopping_time(&cfg);
        assert!(within(stats.mean_tau_unconditional, tau, stats.tau_se), "N = {n}");
    }
}

#[test]
fn transcripts_keep_full_learning() {
    for (n, c) in [(2, 0.5), (7, 0.1), (50, 0.6)] {
        let cfg = GameConfig::new(n, c).unwrap();
        let profile = StrategyProfile::equilibrium(&cfg);
        for t in 0..5_000 {
            let game = play_game(&cfg, &profile, &mut trial_rng(1, t)).unwrap();
            assert!(game.full_learning_holds());
            assert!(game.records_classified());
            assert_eq!(game.interviewed(), game.accepted_index.unwrap_or(n));
        }
    }
}

#[test]
fn declining_applicant_breaks_learning() {
    let cfg = GameConfig::new(3, 0.5).unwrap();
    let profile = StrategyProfile::equilibrium(&cfg).with_applicant_rule(2, ApplicantRule::AlwaysDecline);
    let draw = AbilityDraw::new(vec![0.2, 0.9, 0.5]).unwrap();
    // the admin may hire applicant 1; take the first stream that reaches stage 2
    let game = (0..64)
        .map(|t| play_with_abilities(&profile, draw.clone(), &mut trial_rng(0, t)))
        .find(|g| g.interviewed() >= 2)
        .unwrap();
    assert!(!game.full_learning_holds());
}

#[test]
fn reproducible_across_thread_counts() {
    let cfg = GameConfig::new(25, 0.4).unwrap();
    let profile = StrategyProfile::no_learning(&cfg, &[0.04; 25]).unwrap();
    let a = estimate_with_threads(&cfg, &profile, 50_000, 77, 1).unwrap();
    let b = estimate_with_threads(&cfg, &profile, 50_000, 77, 3).unwrap();
    assert_eq!(a, b);
    let c = estimate_with_threads(&cfg, &profile, 50_000, 78, 1).unwrap();
    assert_ne!(a, c);
}

#[test]
fn incentive_audit_cases() {
    for n in [2, 5, 30] {
        for c in [0.0, 0.3, 0.9] {
            let cfg = GameConfig::new(n, c).unwrap();
            assert!(incentive_audit(&cfg, &StrategyProfile::equilibrium(&cfg)).unwrap().is_clean());
        }
    }
    let cfg = GameConfig::new(6, 0.4).unwrap();
    let broken = StrategyProfile::equilibrium(&cfg).with_acceptance(2, 0.2);
    let audit = incentive_audit(&cfg, &broken).unwrap();
    assert!(audit
        .violations
        .iter()
        .any(|v| v.stage == 2 && v.kind == ViolationKind::RecordAcceptanceBelowCost));
    let blind = StrategyProfile::no_learning(&cfg, &[1.0 / 6.0; 6]).unwrap();
    assert!(incentive_audit(&cfg, &blind).unwrap().is_clean());
}

#[test]
fn invalid_inputs() {
    let cfg = GameConfig::new(3, 0.5).unwrap();
    let profile = StrategyProfile::equilibrium(&cfg);
    assert_eq!(estimate(&cfg, &profile, 0, 1), Err(SecretaryError::NoTrials));
    assert!(AbilityDraw::new(vec![0.5, 0.5, 0.1]).is_err());
    assert!(AbilityDraw::new(vec![0.0, 0.5, 0.1]).is_err());
    assert!(StrategyProfile::no_learning(&cfg, &[0.6, 0.6, 0.0]).is_err());
    let other = GameConfig::new(4, 0.5).unwrap();
    assert!(estimate(&other, &profile, 10, 1).is_err());
}

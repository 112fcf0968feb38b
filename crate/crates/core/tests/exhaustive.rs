use permmind::codebreaker::{bound_enforced, query_bound};
use permmind::oracle::{check_transcript, exhaustive_verify};
use permmind::{all_codes, solve, GameConfig, StaticCodemaker, DEFAULT_MAX_STATES};

#[test]
fn permutation_games_recover_every_secret_within_bound() {
    for n in 2..=8 {
        let config = GameConfig::permutation(n).unwrap();
        let report = exhaustive_verify(config, DEFAULT_MAX_STATES).unwrap();
        assert!(
            report.failures.is_empty(),
            "{config}: {:?}",
            &report.failures[..1]
        );
        println!(
            "{config}: max {} mean {} bound {}",
            report.max_queries, report.mean_queries, report.bound
        );
        if bound_enforced(config) {
            assert!(
                report.bound_satisfied,
                "{config}: max {} > {}",
                report.max_queries, report.bound
            );
        }
    }
}

#[test]
fn many_color_games_recover_every_secret_within_bound() {
    for (n, k) in [(2, 3), (2, 5), (3, 4), (3, 5), (4, 6), (4, 8), (5, 7)] {
        let config = GameConfig::new(n, k).unwrap();
        let report = exhaustive_verify(config, DEFAULT_MAX_STATES).unwrap();
        assert!(
            report.failures.is_empty(),
            "{config}: {:?}",
            &report.failures[..1]
        );
        assert!(
            report.max_queries <= query_bound(config),
            "{config}: {}",
            report.max_queries
        );
    }
}

#[test]
fn honest_transcripts_check_out() {
    for n in 2..=6 {
        let config = GameConfig::permutation(n).unwrap();
        for secret in all_codes(config) {
            let (found, transcript) =
                solve(&mut StaticCodemaker::new(secret.clone()), config).unwrap();
            assert_eq!(found, secret);
            check_transcript(&transcript, &secret).unwrap();
        }
    }
}

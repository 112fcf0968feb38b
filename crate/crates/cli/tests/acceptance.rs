//! Acceptance checks, one line per criterion.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::Instant;

use permmind::codebreaker::{find_next, initial_phase, SolverState};
use permmind::codemaker::{
    adapt_secret_eq, adapt_secret_eq_with, adapt_secret_gt, adapt_secret_gt_with, check_lemmas,
    play_against_adversary, AdaptionInstance,
};
use permmind::oracle::{exhaustive_verify, minimax_value};
use permmind::{
    all_codes, black, open_matches, query_bound, rotation, validate_code, Code, Color, GameConfig,
    StaticCodemaker, DEFAULT_MAX_STATES,
};
use permmind_cli::commands::bench_stats;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn cfg(n: usize, k: usize) -> GameConfig {
    GameConfig::new(n, k).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn golden_replay() -> Outcome {
    let config = cfg(8, 8);
    let y = Code::new(vec![7, 1, 4, 3, 2, 8, 5, 6], config).unwrap();
    let mut oracle = StaticCodemaker::new(y);
    let mut state = SolverState::new(config);
    initial_phase(&mut oracle, &mut state).map_err(|h| format!("{h:?}"))?;
    ensure(state.open_counts() == [0, 2, 3, 1, 0, 0, 1, 1], || {
        format!("v = {:?}", state.open_counts())
    })?;

    for (position, color) in [(4, 2), (6, 5), (7, 6)] {
        state.fix(position, color).map_err(|e| e.to_string())?;
    }
    let start = state.transcript().events().len();
    // Rotation 3 in one-based numbering.
    let found = find_next(&mut oracle, &mut state, 2).map_err(|h| format!("{h:?}"))?;
    let events = &state.transcript().events()[start..];
    let guesses: Vec<&[Color]> = events.iter().map(|e| e.guess.colors()).collect();
    let expected: [&[Color]; 3] = [
        &[2, 7, 8, 1, 3, 4, 5, 6],
        &[7, 8, 2, 1, 3, 4, 5, 6],
        &[7, 2, 8, 1, 3, 4, 5, 6],
    ];
    ensure(guesses == expected, || format!("guesses {guesses:?}"))?;
    let opens: Vec<usize> = events
        .iter()
        .map(|e| open_matches(e.black, &e.guess, state.partial()).unwrap())
        .collect();
    ensure(opens == [0, 1, 1], || format!("open matches {opens:?}"))?;
    ensure(found == 0, || format!("returned position {}", found + 1))?;
    Ok("v = (0,2,3,1,0,0,1,1); three probes with open matches 0,1,1; position 1".into())
}

fn exhaustive_within_bound(configs: &[(usize, usize)]) -> Outcome {
    let mut parts = Vec::new();
    for &(n, k) in configs {
        let config = cfg(n, k);
        let report = exhaustive_verify(config, DEFAULT_MAX_STATES).map_err(|e| e.to_string())?;
        ensure(report.failures.is_empty(), || {
            format!("{config}: {} failures", report.failures.len())
        })?;
        ensure(report.max_queries <= report.bound, || {
            format!(
                "{config}: max {} > bound {}",
                report.max_queries, report.bound
            )
        })?;
        parts.push(format!(
            "{n},{k}: {} secrets max {}/{}",
            report.secrets_tested, report.max_queries, report.bound
        ));
    }
    Ok(parts.join("; "))
}

fn sampled_scale() -> Outcome {
    let mut parts = Vec::new();
    for n in [16, 64, 256] {
        let stats = bench_stats(cfg(n, n), 100, n as u64);
        ensure(stats.failures.is_empty(), || {
            format!("n={n}: {}", stats.failures[0])
        })?;
        ensure(stats.bound_ok(), || {
            format!("n={n}: max {} > bound {}", stats.max_queries, stats.bound)
        })?;
        parts.push(format!("n={n} max {}/{}", stats.max_queries, stats.bound));
    }
    Ok(parts.join("; "))
}

fn adversary_permutations() -> Outcome {
    let mut parts = Vec::new();
    for n in 3..=6 {
        let config = cfg(n, n);
        let play = play_against_adversary(config, DEFAULT_MAX_STATES)
            .map_err(|e| format!("n={n}: {e}"))?;
        ensure(play.queries_used >= n, || {
            format!("n={n}: {} queries", play.queries_used)
        })?;
        ensure(play.witness.iter().all(|&(m, b)| b <= m), || {
            format!("n={n}: trace {:?}", play.witness)
        })?;
        parts.push(format!("n={n} {} queries", play.queries_used));
    }
    Ok(parts.join("; "))
}

fn adversary_many_colors() -> Outcome {
    let mut parts = Vec::new();
    for (n, k) in [(2, 3), (3, 5)] {
        let config = cfg(n, k);
        let play = play_against_adversary(config, DEFAULT_MAX_STATES)
            .map_err(|e| format!("{config}: {e}"))?;
        check_lemmas(config, &play.witness).map_err(|e| e.to_string())?;
        ensure(play.queries_used >= k, || {
            format!("{config}: {} queries", play.queries_used)
        })?;
        ensure(
            play.witness
                .iter()
                .filter(|&&(m, _)| m < k)
                .all(|&(_, b)| b < n),
            || format!("{config}: trace {:?}", play.witness),
        )?;
        parts.push(format!("{n},{k}: {} queries", play.queries_used));
    }
    Ok(parts.join("; "))
}

fn minimax_sandwich() -> Outcome {
    let two = minimax_value(cfg(2, 2), false).map_err(|e| e.to_string())?;
    ensure(two == 2, || format!("n=2 value {two}"))?;
    let mut parts = vec!["n=2: 2".to_string()];
    for n in [3, 4] {
        let config = cfg(n, n);
        let value = minimax_value(config, false).map_err(|e| e.to_string())?;
        let max = exhaustive_verify(config, DEFAULT_MAX_STATES)
            .map_err(|e| e.to_string())?
            .max_queries;
        ensure(n <= value && value <= max, || {
            format!("n={n}: {n} <= {value} <= {max} fails")
        })?;
        parts.push(format!("n={n}: {n} <= {value} <= {max}"));
    }
    Ok(parts.join("; "))
}

fn injective_with(
    rng: &mut impl Rng,
    n: usize,
    k: usize,
    ok: impl Fn(usize, Color) -> bool,
) -> Option<Vec<Color>> {
    let mut pool: Vec<Color> = (1..=k as Color).collect();
    for _ in 0..200 {
        pool.shuffle(rng);
        if (0..n).all(|i| ok(i, pool[i])) {
            return Some(pool[..n].to_vec());
        }
    }
    None
}

/// Secret `y`, a current query agreeing with it on at least `m + 1`
/// positions, and `m - 1` earlier queries that never match `y` there.
fn eq_instance(rng: &mut impl Rng) -> AdaptionInstance {
    loop {
        let n = rng.gen_range(3..=9);
        let config = cfg(n, n);
        let m = rng.gen_range(1..=(n - 1) / 2 + 1);
        let mut y: Vec<Color> = (1..=n as Color).collect();
        y.shuffle(rng);
        let mut positions: Vec<usize> = (0..n).collect();
        positions.shuffle(rng);
        let agree: BTreeSet<usize> = positions[..rng.gen_range(m + 1..=n)]
            .iter()
            .copied()
            .collect();
        let Some(current) = injective_with(rng, n, n, |i, c| (c == y[i]) == agree.contains(&i))
        else {
            continue;
        };
        let earlier: Vec<_> = (1..m)
            .map_while(|_| injective_with(rng, n, n, |i, c| !agree.contains(&i) || c != y[i]))
            .collect();
        if earlier.len() != m - 1 {
            continue;
        }
        let mut queries: Vec<Code> = earlier
            .into_iter()
            .map(|q| Code::new(q, config).unwrap())
            .collect();
        queries.push(Code::new(current, config).unwrap());
        return AdaptionInstance::new(config, Code::new(y, config).unwrap(), queries).unwrap();
    }
}

/// Secret equal to the current query, and fewer than `k - 1` earlier
/// queries that avoid it everywhere.
fn gt_instance(rng: &mut impl Rng) -> AdaptionInstance {
    loop {
        let n = rng.gen_range(2..=7);
        let k = rng.gen_range(n + 1..=n + 4);
        let config = cfg(n, k);
        let m = rng.gen_range(1..k);
        let y = injective_with(rng, n, k, |_, _| true).unwrap();
        let earlier: Vec<_> = (1..m)
            .map_while(|_| injective_with(rng, n, k, |i, c| c != y[i]))
            .collect();
        if earlier.len() != m - 1 {
            continue;
        }
        let y = Code::new(y, config).unwrap();
        let mut queries: Vec<Code> = earlier
            .into_iter()
            .map(|q| Code::new(q, config).unwrap())
            .collect();
        queries.push(y.clone());
        return AdaptionInstance::new(config, y, queries).unwrap();
    }
}

fn adapted_ok(inst: &AdaptionInstance, z: &Code) -> Result<(), String> {
    validate_code(z, inst.config()).map_err(|e| e.to_string())?;
    let y = inst.current_secret();
    let (current, earlier) = inst.queries().split_last().unwrap();
    for q in earlier {
        ensure(black(z, q).unwrap() == black(y, q).unwrap(), || {
            format!("{z} changes black against {q}")
        })?;
    }
    ensure(
        black(z, current).unwrap() < black(y, current).unwrap(),
        || format!("{z} does not lower the current answer"),
    )
}

fn adaption_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..1000 {
        let inst = eq_instance(&mut rng);
        adapted_ok(&inst, &adapt_secret_eq(&inst).map_err(|e| e.to_string())?)?;
        let z = adapt_secret_eq_with(&inst, |_, c| c[rng.gen_range(0..c.len())])
            .map_err(|e| e.to_string())?;
        adapted_ok(&inst, &z)?;
    }
    for _ in 0..1000 {
        let inst = gt_instance(&mut rng);
        adapted_ok(&inst, &adapt_secret_gt(&inst).map_err(|e| e.to_string())?)?;
        let z = adapt_secret_gt_with(&inst, |_, c| c[rng.gen_range(0..c.len())])
            .map_err(|e| e.to_string())?;
        adapted_ok(&inst, &z)?;
    }
    Ok("1000 instances per variant, default and random choices".into())
}

fn rotation_sums() -> Outcome {
    let mut secrets = 0;
    let configs = (2..=7).map(|n| (n, n)).chain([(3, 5), (4, 6), (4, 8)]);
    for (n, k) in configs {
        let config = cfg(n, k);
        let rotations: Vec<Code> = (0..k).map(|j| rotation(j, config).unwrap()).collect();
        for y in all_codes(config) {
            let scores: Vec<usize> = rotations.iter().map(|r| black(r, &y).unwrap()).collect();
            ensure(scores.iter().sum::<usize>() == n, || {
                format!("{config} {y}: {scores:?}")
            })?;
            ensure(k == n || scores.contains(&0), || {
                format!("{config} {y}: no zero rotation")
            })?;
            secrets += 1;
        }
    }
    Ok(format!("{secrets} secrets"))
}

fn bench_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut outputs = Vec::new();
    for run in 0..2 {
        let csv = dir.path().join(format!("run{run}.csv"));
        let status = Command::new(env!("CARGO_BIN_EXE_permmind"))
            .args([
                "bench",
                "--n",
                "32",
                "--k",
                "32",
                "--samples",
                "50",
                "--seed",
                "7",
                "--csv",
            ])
            .arg(&csv)
            .output()
            .map_err(|e| e.to_string())?;
        ensure(status.status.success(), || {
            format!("exit {:?}", status.status.code())
        })?;
        outputs.push(std::fs::read(&csv).map_err(|e| e.to_string())?);
    }
    ensure(outputs[0] == outputs[1], || {
        "CSV differs between runs".into()
    })?;
    let row = String::from_utf8_lossy(&outputs[0]);
    Ok(row.lines().nth(1).unwrap_or_default().to_string())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("golden replay", golden_replay),
        ("upper bound k=n exhaustive", || {
            exhaustive_within_bound(&[(4, 4), (5, 5), (6, 6), (7, 7), (8, 8)])
        }),
        ("upper bound k>n exhaustive", || {
            exhaustive_within_bound(&[(3, 5), (4, 6), (4, 8)])
        }),
        ("upper bound sampled", sampled_scale),
        ("lower bound k=n", adversary_permutations),
        ("lower bound k>n", adversary_many_colors),
        ("minimax sandwich", minimax_sandwich),
        ("adaption properties", adaption_properties),
        ("rotation sum identity", rotation_sums),
        ("bench determinism", bench_determinism),
    ];
    assert_eq!(query_bound(cfg(8, 8)), 34);
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = check();
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:2} {name} ({secs:.1}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:2} {name} ({secs:.1}s): {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

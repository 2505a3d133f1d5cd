//! Acceptance criteria 1-13. Runs as one test so the per-criterion timings
//! are not distorted by other tests sharing the machine.

use std::io::Write;
use std::time::{Duration, Instant};

use asymfree::verify::{
    check_bell, check_decay, check_elementary_inequalities, check_falling_bound, check_injection_bound,
    check_mean_bound_exact, check_microstates, check_oracle_agreement, check_power_bound, check_row_normalization,
    check_sampler_moments, check_vanishing, Check,
};

const SEED: u64 = 20_240_601;

struct Criterion {
    id: usize,
    limit: Duration,
    run: fn() -> Check,
    sampled: bool,
}

fn criteria() -> Vec<Criterion> {
    let secs = Duration::from_secs;
    vec![
        Criterion { id: 1, limit: secs(1), run: || check_row_normalization(2..=8), sampled: false },
        Criterion { id: 2, limit: secs(30), run: || check_vanishing(4, 4), sampled: false },
        Criterion { id: 3, limit: secs(60), run: || check_falling_bound(3, 6), sampled: false },
        Criterion { id: 4, limit: secs(60), run: || check_power_bound(3, 3..=6), sampled: false },
        Criterion { id: 5, limit: secs(10), run: || check_injection_bound(200, 7, 5, SEED), sampled: false },
        Criterion { id: 6, limit: secs(120), run: || check_mean_bound_exact(&[4, 5, 6]), sampled: false },
        Criterion { id: 7, limit: secs(60), run: || check_oracle_agreement(4, 20_000, SEED), sampled: true },
        Criterion { id: 8, limit: secs(30), run: || check_sampler_moments(&[2, 4, 8], 40_000, SEED), sampled: true },
        Criterion { id: 9, limit: secs(120), run: || check_decay(50_000, 5_000, SEED), sampled: true },
        Criterion { id: 10, limit: secs(1), run: || check_bell(10, 8), sampled: false },
        Criterion { id: 11, limit: secs(1), run: || check_elementary_inequalities(30), sampled: false },
        Criterion { id: 12, limit: secs(300), run: || check_microstates(200, SEED), sampled: true },
    ]
}

// Written straight to stderr so the lines show without --nocapture.
fn report(line: String) {
    let mut err = std::io::stderr().lock();
    writeln!(err, "{line}").expect("stderr");
}

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool").install(f)
}

#[test]
fn acceptance_criteria() {
    let mut failed = Vec::new();
    let mut sampled = Vec::new();
    for c in criteria() {
        let start = Instant::now();
        let check = in_pool(1, c.run);
        let elapsed = start.elapsed();
        let on_time = elapsed <= c.limit;
        let ok = check.passed && on_time;
        report(format!(
            "{} criterion {:>2}: {} [{} cases] {} ({:.2}s, limit {}s)",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            check.name,
            check.cases,
            check.detail,
            elapsed.as_secs_f64(),
            c.limit.as_secs()
        ));
        if !ok {
            failed.push(c.id);
        }
        if c.sampled {
            sampled.push((c.id, c.run, check.fingerprint));
        }
    }

    let mut mismatched = Vec::new();
    for (id, run, single) in &sampled {
        let eight = in_pool(8, *run).fingerprint;
        if single.is_empty() || *single != eight {
            mismatched.push(*id);
        }
    }
    let ok = mismatched.is_empty();
    report(format!(
        "{} criterion 13: sampled criteria {:?} identical under 1 and 8 threads{}",
        if ok { "PASS" } else { "FAIL" },
        sampled.iter().map(|s| s.0).collect::<Vec<_>>(),
        if ok { String::new() } else { format!("; differing: {mismatched:?}") }
    ));
    if !ok {
        failed.push(13);
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

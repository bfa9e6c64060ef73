//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use ncprob::verify::{self, CheckResult, Config, Suite, ANTIPODE_MAX_DEGREE};
use ncprob::Result;

struct Criterion {
    title: &'static str,
    limit: Duration,
    body: fn() -> Result<Vec<CheckResult>>,
    /// Checks expected to fail, with the reason printed beside them.
    note: Option<&'static str>,
}

fn suite(s: Suite, max_degree: usize, trials: usize, letters: u32) -> Result<Vec<CheckResult>> {
    let cfg = Config { seed: 2024, max_degree, trials, letters };
    Ok(verify::run(s, &cfg)?.checks)
}

fn expansions() -> Result<Vec<CheckResult>> {
    verify::expansions()
}

fn hopf_axioms() -> Result<Vec<CheckResult>> {
    assert_eq!(ANTIPODE_MAX_DEGREE, 5);
    suite(Suite::Coassoc, 6, 1, 3)
}

fn shuffle_calculus() -> Result<Vec<CheckResult>> {
    suite(Suite::ShuffleAxioms, 5, 20, 2)
}

fn group_laws() -> Result<Vec<CheckResult>> {
    suite(Suite::GroupLaws, 5, 20, 3)
}

fn cumulant_theorems() -> Result<Vec<CheckResult>> {
    let mut out = suite(Suite::LemmaPowers, 5, 20, 3)?;
    out.extend(suite(Suite::FundamentalIdentity, 6, 20, 2)?);
    out.extend(suite(Suite::CumulantRoundtrips, 6, 20, 2)?);
    Ok(out)
}

fn anchors() -> Result<Vec<CheckResult>> {
    verify::numeric_anchors()
}

fn co_prelie() -> Result<Vec<CheckResult>> {
    suite(Suite::CoPrelie, 6, 20, 3)
}

const CRITERIA: [Criterion; 7] = [
    Criterion {
        title: "coproduct expansions, bit-exact",
        limit: Duration::from_secs(1),
        body: expansions,
        note: None,
    },
    Criterion {
        title: "Hopf axioms for Δ, Δ_m, Δ_b, Δ_f, degree ≤ 6 over 3 letters; antipode ≤ 5",
        limit: Duration::from_secs(60),
        body: hopf_axioms,
        note: None,
    },
    Criterion {
        title: "shuffle calculus, 20 trials, degree ≤ 5",
        limit: Duration::from_secs(120),
        body: shuffle_calculus,
        note: None,
    },
    Criterion {
        title: "group-law equivalences, 20 trials, degree ≤ 5",
        limit: Duration::from_secs(300),
        body: group_laws,
        note: None,
    },
    Criterion {
        title: "cumulant theorems and roundtrips, degree ≤ 6",
        limit: Duration::from_secs(120),
        body: cumulant_theorems,
        note: None,
    },
    Criterion {
        title: "numeric anchors",
        limit: Duration::from_secs(5),
        body: anchors,
        note: None,
    },
    Criterion {
        title: "co-pre-Lie identity a_m = (τ⊗id)a_m, degree ≤ 6; bracket coincidence",
        limit: Duration::from_secs(60),
        body: co_prelie,
        note: Some(
            "δ_m satisfies a_m = (id⊗τ)a_m, so α⊳β = (α⊗β)∘δ_m is right pre-Lie; \
             the left-sided statement is false as written",
        ),
    },
];

fn main() -> ExitCode {
    let mut failed = 0;
    for (i, c) in CRITERIA.iter().enumerate() {
        let start = Instant::now();
        let outcome = (c.body)();
        let elapsed = start.elapsed();
        let (ok, detail) = match &outcome {
            Err(e) => (false, vec![format!("error: {e}")]),
            Ok(checks) => {
                let bad: Vec<String> = checks
                    .iter()
                    .filter(|r| !r.passed)
                    .map(|r| {
                        let x = r.counterexample.as_deref().unwrap_or("");
                        format!("failed: {}; {x}", r.name)
                    })
                    .collect();
                let mut d = vec![format!(
                    "{} of {} checks passed",
                    checks.len() - bad.len(),
                    checks.len()
                )];
                d.extend(bad.iter().cloned());
                (bad.is_empty(), d)
            }
        };
        let in_time = elapsed <= c.limit;
        let pass = ok && in_time;
        if !pass {
            failed += 1;
        }
        println!(
            "{} criterion {}: {}  [{:.2}s of {}s]",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            c.title,
            elapsed.as_secs_f64(),
            c.limit.as_secs()
        );
        if !pass {
            for line in &detail {
                println!("       {line}");
            }
            if !in_time {
                println!("       over the time limit");
            }
            if let Some(n) = c.note {
                println!("       note: {n}");
            }
        }
    }
    println!("{} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

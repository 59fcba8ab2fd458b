//! The ten acceptance criteria at their pinned sizes and time limits. Runs
//! as a plain binary so that one line per criterion is always printed.

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use dfan_core::grammar::parse_element;
use dfan_core::{HomogenizedModule, ShiftMatrix};
use dfan_testkit::criteria;

const SEED: u64 = 20240611;

fn euler_like(gen: &str) -> HomogenizedModule {
    let g = parse_element(gen, 2, 1).expect("valid generator");
    HomogenizedModule::new(vec![g], ShiftMatrix::zero(2, 1)).expect("valid module")
}

fn fans() -> Result<String, String> {
    let mut parts = vec![
        criteria::fan_matches_grid(&euler_like("x1 d1 + x2 d2"), Some(1))?,
        criteria::fan_matches_grid(&euler_like("d1 + x1 d2^2"), Some(3))?,
    ];
    for (seed, m) in criteria::random_fan_modules(3, SEED) {
        let summary = criteria::fan_matches_grid(&m, None)?;
        parts.push(format!("seed {seed}: {summary}"));
    }
    Ok(parts.join("; "))
}

fn flatness() -> Result<String, String> {
    let r = criteria::euler_flatness(4)?;
    Ok(format!(
        "{} elements in {} degrees certified and replayed; corrupted basis rejected on {} of {}",
        r.elements, r.degrees, r.corrupted_rejected, r.corrupted_total
    ))
}

/// One corpus line and what the binary did with it.
#[derive(PartialEq)]
struct CorpusRun {
    expected: i32,
    args: String,
    code: i32,
    stdout: Vec<u8>,
    stderr: Vec<u8>,
}

fn corpus_run() -> Result<Vec<CorpusRun>, String> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("problems");
    let manifest = std::fs::read_to_string(dir.join("corpus.txt")).map_err(|e| e.to_string())?;
    let mut out = Vec::new();
    for line in manifest
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
    {
        let mut words = line.split_whitespace();
        let expected: i32 = words
            .next()
            .and_then(|w| w.parse().ok())
            .ok_or("bad corpus line")?;
        let args: Vec<&str> = words.collect();
        let o = Command::new(env!("CARGO_BIN_EXE_dfan"))
            .args(&args)
            .current_dir(&dir)
            .output()
            .map_err(|e| e.to_string())?;
        out.push(CorpusRun {
            expected,
            args: args.join(" "),
            code: o.status.code().unwrap_or(-1),
            stdout: o.stdout,
            stderr: o.stderr,
        });
    }
    Ok(out)
}

fn determinism() -> Result<String, String> {
    let first = corpus_run()?;
    let second = corpus_run()?;
    for (a, b) in first.iter().zip(&second) {
        if a.code != a.expected {
            return Err(format!(
                "`{}` exited {} instead of {}",
                a.args, a.code, a.expected
            ));
        }
        if a != b {
            return Err(format!("`{}` differs between runs", a.args));
        }
    }
    let bytes: usize = first.iter().map(|r| r.stdout.len() + r.stderr.len()).sum();
    Ok(format!("{} runs, {bytes} bytes identical", first.len()))
}

type Criterion = (u32, Duration, Box<dyn Fn() -> Result<String, String>>);

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria: Vec<Criterion> = vec![
        (1, secs(1), Box::new(criteria::fiber_example)),
        (2, secs(10), Box::new(|| criteria::ring_axioms(500, SEED))),
        (
            3,
            secs(10),
            Box::new(|| criteria::symbol_multiplicativity(200, 5, SEED)),
        ),
        (4, secs(30), Box::new(|| criteria::divisions(200, SEED))),
        (5, secs(300), Box::new(fans)),
        (
            6,
            secs(10),
            Box::new(|| criteria::iv_isomorphism(200, SEED)),
        ),
        (
            7,
            secs(30),
            Box::new(|| criteria::kernel_normalizations(100, SEED)),
        ),
        (
            8,
            secs(60),
            Box::new(|| criteria::monomial_chains(20, 6, SEED)),
        ),
        (9, secs(120), Box::new(flatness)),
        (10, secs(120), Box::new(determinism)),
    ];
    let mut failed = 0;
    for (n, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let verdict = match outcome {
            Ok(detail) if elapsed <= limit => format!("PASS ({elapsed:.2?}, {detail})"),
            Ok(detail) => format!("FAIL ({elapsed:.2?} over the {limit:?} limit, {detail})"),
            Err(e) => format!("FAIL ({elapsed:.2?}, {e})"),
        };
        if verdict.starts_with("FAIL") {
            failed += 1;
        }
        println!("criterion {n}: {verdict}");
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}

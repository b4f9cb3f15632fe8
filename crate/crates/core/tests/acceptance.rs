//! Acceptance suite: one PASS/FAIL line per criterion; the process exits nonzero if any
//! criterion failed. Every comparison is exact.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use m3p_core::verify::{run_suite, CheckRecord, Limits, Suite};

struct Criterion {
    id: u32,
    title: &'static str,
    suites: &'static [Suite],
    budget: Option<Duration>,
}

const CRITERIA: [Criterion; 8] = [
    Criterion {
        id: 1,
        title: "recursion fixpoint, p in {4,5,7,8}, N <= 10, n <= 6, order 30",
        suites: &[Suite::Recursion],
        budget: Some(Duration::from_secs(60)),
    },
    Criterion {
        id: 2,
        title: "bijection round trip, weight law and involution lemmas, N <= 9, n <= 6",
        suites: &[Suite::Bijection],
        budget: Some(Duration::from_secs(60)),
    },
    Criterion {
        id: 3,
        title: "finitized fermionic sums count C_{N,d,n}, p in {4,5,7}, N <= 8, n <= 6",
        suites: &[Suite::Finitized],
        budget: Some(Duration::from_secs(120)),
    },
    Criterion {
        id: 4,
        title: "principal chain and monotone extremal limit, n <= 5, order 24",
        suites: &[Suite::Principal],
        budget: None,
    },
    Criterion {
        id: 5,
        title: "ideal character counts admissible triples to d = 30; relation character sum",
        suites: &[Suite::IdealChar],
        budget: None,
    },
    Criterion {
        id: 6,
        title: "phi_3: symmetry, ODE, pi-image, Q/R, nested identity, square-free, f_j",
        suites: &[Suite::Phi3],
        budget: Some(Duration::from_secs(60)),
    },
    Criterion {
        id: 7,
        title: "exact sequences to degree 2p; finitized at (4,5), (5,6), (7,8)",
        suites: &[Suite::Exactness],
        budget: None,
    },
    Criterion {
        id: 8,
        title: "relations annihilate I_3 to d = 2p + 4; independence at 7, 8; a3 dims at p = 4",
        suites: &[Suite::Relations, Suite::Independence, Suite::A3Dim],
        budget: None,
    },
];

fn evaluate(c: &Criterion) -> (bool, String) {
    let start = Instant::now();
    let records: Vec<CheckRecord> = c
        .suites
        .iter()
        .flat_map(|&s| run_suite(s, None, &Limits::default()))
        .collect();
    let elapsed = start.elapsed();
    let failures: Vec<&CheckRecord> = records.iter().filter(|r| !r.passed).collect();
    let over_budget = c.budget.is_some_and(|b| elapsed > b);
    let passed = !records.is_empty() && failures.is_empty() && !over_budget;
    let mut line = format!(
        "criterion {}: {} | {} checks, {:.2} s | {}",
        c.id,
        if passed { "PASS" } else { "FAIL" },
        records.len(),
        elapsed.as_secs_f64(),
        c.title
    );
    if let Some(first) = failures.first() {
        line.push_str(&format!("\n    first failure: {first}"));
    }
    if over_budget {
        line.push_str(&format!("\n    over the {:?} budget", c.budget.unwrap()));
    }
    (passed, line)
}

fn main() -> ExitCode {
    let mut failed = Vec::new();
    for c in &CRITERIA {
        let (passed, line) = evaluate(c);
        println!("{line}");
        if !passed {
            failed.push(c.id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", CRITERIA.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}

//! `m3p`: enumeration, characters, bijection sweeps, `phi_3` and the verification suite.
//!
//! The payload goes to stdout as JSON. `--json <path>` additionally writes a run report
//! with per-check timings. Exit codes: 0 success, 1 verification failure, 2 usage error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use m3p_core::bijection::{compose, decompose, verify_class};
use m3p_core::character::{
    a3_char, chi3_finitized_recursion, fermionic_extremal, fermionic_finitized,
    fermionic_principal, fermionic_voa, ideal3_char, principal_recursion_rhs, recursion_rhs,
};
use m3p_core::error::validate_p;
use m3p_core::partition::{enumerate, gen_function};
use m3p_core::sympoly::phi::f_j;
use m3p_core::sympoly::{ideal3_basis, phi3};
use m3p_core::verify::{run_suites, CheckRecord, Limits, RunReport, Suite};
use m3p_core::{Bound, Error, Partition, QSeries, QZSeries};

#[derive(Parser, Debug)]
#[command(
    name = "m3p",
    version,
    about = "Exact combinatorics of the M(3,p) principal subspaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Also write a run report (with timings) to this file.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,

    /// Worker threads for the verification pool (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the admissible class C^{[p]}_{N,n}.
    Enumerate(EnumerateArgs),
    /// Print a character or generating function.
    Char(CharArgs),
    /// Decompose, compose, or sweep the partition bijection.
    Bijection(BijectionArgs),
    /// Print phi_3, an f_j, or a graded piece of the ideal.
    Phi3(Phi3Args),
    /// Run property suites.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long)]
    p: i64,
    #[arg(long = "N")]
    bound: i64,
    #[arg(long)]
    n: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Target {
    /// Enumerated generating function of C^{[p]}_{N,n} (needs --N, --n).
    Gen,
    /// Recursive right-hand side for C^{[p]}_{N,n} (needs --N, --n).
    Recursion,
    /// Fermionic sum in (q, z) with z counting particles.
    Principal,
    /// Principal recursion for n particles (needs --n).
    PrincipalRecursion,
    /// Extremal sum with l extra modes (needs --l).
    Extremal,
    /// Limit of the extremal sums.
    Voa,
    /// Box-truncated fermionic sum (needs --N).
    Finitized,
    /// Character of the three-variable ideal.
    Ideal3,
    /// Character of the three-particle relation space.
    A3,
    /// Three-particle finitized recursion (needs --N).
    Chi3,
}

#[derive(Args, Debug)]
struct CharArgs {
    #[arg(long, value_enum)]
    target: Target,
    #[arg(long)]
    p: i64,
    #[arg(long = "N")]
    bound: Option<i64>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    l: Option<u64>,
    #[arg(long, default_value_t = 24)]
    order: usize,
}

#[derive(Args, Debug)]
struct BijectionArgs {
    #[arg(long)]
    p: i64,
    #[arg(long = "N")]
    bound: i64,
    /// Comma-separated partition in C^{[p]}_{N,n} to decompose.
    #[arg(long, value_name = "PARTS", conflicts_with_all = ["compose", "sweep"])]
    decompose: Option<String>,
    /// Comma-separated partition lambda in C^{[p-3]} to compose with --mu.
    #[arg(long, value_name = "PARTS", requires = "mu", conflicts_with = "sweep")]
    compose: Option<String>,
    /// Comma-separated box partition mu (may be empty).
    #[arg(long, value_name = "PARTS", allow_hyphen_values = true)]
    mu: Option<String>,
    /// Check every class C^{[p]}_{N',n'} with N' <= N and n' <= n.
    #[arg(long, requires = "n")]
    sweep: bool,
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args, Debug)]
struct Phi3Args {
    #[arg(long)]
    p: i64,
    /// Print f_j instead of phi_3.
    #[arg(long, conflicts_with = "d")]
    j: Option<u32>,
    /// Print a basis of the degree-d part of the ideal instead.
    #[arg(long)]
    d: Option<u32>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// `all` or a comma-separated list of suites.
    #[arg(long, default_value = "all")]
    check: String,
    /// Restrict every suite to this level.
    #[arg(long)]
    p: Option<i64>,
    #[arg(long = "N")]
    bound: Option<i64>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    order: Option<usize>,
    #[arg(long)]
    dmax: Option<u32>,
}

/// A rejected invocation; exits with status 2.
struct Usage(String);

impl From<Error> for Usage {
    fn from(e: Error) -> Self {
        Usage(e.to_string())
    }
}

type Outcome = Result<(Value, RunReport), Usage>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(threads) = cli.threads {
        if threads == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let outcome = match &cli.command {
        Command::Enumerate(a) => cmd_enumerate(a),
        Command::Char(a) => cmd_char(a),
        Command::Bijection(a) => cmd_bijection(a),
        Command::Phi3(a) => cmd_phi3(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match outcome {
        Ok((payload, report)) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&payload).expect("serializable")
            );
            for failed in report.failures() {
                eprintln!("{failed}");
            }
            if let Some(path) = &cli.json {
                let mut file = report.to_json(true);
                file["payload"] = payload;
                let text = serde_json::to_string_pretty(&file).expect("serializable");
                if let Err(e) = fs::write(path, text + "\n") {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn report(command: &str, parameters: &[(&str, String)], checks: Vec<CheckRecord>) -> RunReport {
    RunReport {
        command: command.to_string(),
        parameters: parameters
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect(),
        checks,
    }
}

fn need<T>(value: Option<T>, flag: &str, target: &str) -> Result<T, Usage> {
    value.ok_or_else(|| Usage(format!("--target {target} needs {flag}")))
}

fn check_bound(bound: i64) -> Result<(), Usage> {
    if bound < 1 {
        return Err(Usage(format!("--N must be at least 1, got {bound}")));
    }
    Ok(())
}

fn check_order(order: usize) -> Result<(), Usage> {
    if order == 0 {
        return Err(Usage("--order must be at least 1".into()));
    }
    Ok(())
}

fn parse_parts(text: &str, flag: &str) -> Result<Vec<u32>, Usage> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Usage(format!("{flag}: `{t}` is not a nonnegative integer")))
        })
        .collect()
}

fn series_json(s: &QSeries) -> Value {
    let len = s.order().unwrap_or(s.coeffs().len());
    let coefficients: Vec<String> = (0..len).map(|d| s.coeff(d).to_string()).collect();
    json!({ "order": s.order(), "coefficients": coefficients })
}

fn qz_json(s: &QZSeries) -> Value {
    let by_n: serde_json::Map<String, Value> = s
        .z_exponents()
        .map(|n| (n.to_string(), series_json(&s.z_coeff(n))))
        .collect();
    json!({ "order": s.order(), "by_n": by_n })
}

fn cmd_enumerate(a: &EnumerateArgs) -> Outcome {
    validate_p(a.p)?;
    check_bound(a.bound)?;
    let class = enumerate(a.p, Bound::Finite(a.bound), a.n)?;
    let parts: Vec<&[u32]> = class.iter().map(Partition::parts).collect();
    let payload = json!({
        "p": a.p, "N": a.bound, "n": a.n,
        "count": class.len(),
        "partitions": parts,
    });
    let params = [
        ("p", a.p.to_string()),
        ("N", a.bound.to_string()),
        ("n", a.n.to_string()),
    ];
    Ok((payload, report("enumerate", &params, Vec::new())))
}

fn cmd_char(a: &CharArgs) -> Outcome {
    validate_p(a.p)?;
    check_order(a.order)?;
    let name = a
        .target
        .to_possible_value()
        .expect("named")
        .get_name()
        .to_string();
    let (p, order) = (a.p, a.order);
    let series = match a.target {
        Target::Gen | Target::Recursion => {
            let bound = need(a.bound, "--N", &name)?;
            check_bound(bound)?;
            let n = need(a.n, "--n", &name)?;
            let s = if a.target == Target::Gen {
                gen_function(p, Bound::Finite(bound), n, order)?
            } else {
                recursion_rhs(p, bound, n, order)?
            };
            series_json(&s)
        }
        Target::Principal => qz_json(&fermionic_principal(p, order)?),
        Target::PrincipalRecursion => series_json(&principal_recursion_rhs(
            p,
            need(a.n, "--n", &name)?,
            order,
        )?),
        Target::Extremal => qz_json(&fermionic_extremal(p, need(a.l, "--l", &name)?, order)?),
        Target::Voa => qz_json(&fermionic_voa(p, order)?),
        Target::Finitized => {
            let bound = need(a.bound, "--N", &name)?;
            check_bound(bound)?;
            qz_json(&fermionic_finitized(p, bound, order)?)
        }
        Target::Ideal3 => series_json(&ideal3_char(p, order)?),
        Target::A3 => series_json(&a3_char(p, order)?),
        Target::Chi3 => {
            let bound = need(a.bound, "--N", &name)?;
            check_bound(bound)?;
            series_json(&chi3_finitized_recursion(p, bound, order)?)
        }
    };
    let mut params = vec![
        ("target", name.clone()),
        ("p", p.to_string()),
        ("order", order.to_string()),
    ];
    for (k, v) in [
        ("N", a.bound.map(|v| v.to_string())),
        ("n", a.n.map(|v| v.to_string())),
        ("l", a.l.map(|v| v.to_string())),
    ] {
        if let Some(v) = v {
            params.push((k, v));
        }
    }
    let mut payload = json!({ "target": name, "p": p });
    if let (Value::Object(out), Value::Object(body)) = (&mut payload, series) {
        out.extend(body);
    }
    Ok((payload, report("char", &params, Vec::new())))
}

fn cmd_bijection(a: &BijectionArgs) -> Outcome {
    validate_p(a.p)?;
    check_bound(a.bound)?;
    let mut params = vec![("p", a.p.to_string()), ("N", a.bound.to_string())];
    if let Some(text) = &a.decompose {
        let nu = parse_parts(text, "--decompose")?;
        let dec = decompose(&nu, a.p, a.bound)?;
        params.push(("decompose", text.clone()));
        let payload = json!({
            "nu": nu,
            "lambda": dec.lambda.parts(),
            "mu": dec.mu,
        });
        return Ok((payload, report("bijection", &params, Vec::new())));
    }
    if let Some(text) = &a.compose {
        let lambda = Partition::new(parse_parts(text, "--compose")?)?;
        let mu_text = a.mu.clone().unwrap_or_default();
        let mu = parse_parts(&mu_text, "--mu")?;
        let nu = compose(&lambda, &mu, a.p, a.bound)?;
        params.push(("compose", text.clone()));
        params.push(("mu", mu_text));
        let payload = json!({ "lambda": lambda.parts(), "mu": mu, "nu": nu });
        return Ok((payload, report("bijection", &params, Vec::new())));
    }
    if a.sweep {
        let max_n = a.n.expect("clap enforces --n");
        params.push(("n", max_n.to_string()));
        let mut jobs = Vec::new();
        for bound in 1..=a.bound {
            for n in 0..=max_n {
                jobs.push((bound, n));
            }
        }
        let p = a.p;
        let records: Vec<(CheckRecord, Value)> = {
            use rayon::prelude::*;
            jobs.into_par_iter()
                .map(|(bound, n)| {
                    let start = Instant::now();
                    let outcome = verify_class(p, bound, n);
                    let wall_ms = start.elapsed().as_millis();
                    let (summary, counterexample) = match outcome {
                        Ok(r) => (
                            json!({
                                "N": bound, "n": n,
                                "class_size": r.class_size,
                                "b3_applications": r.b3_applications,
                                "passed": r.passed(),
                            }),
                            r.counterexample,
                        ),
                        Err(e) => (
                            json!({ "N": bound, "n": n, "passed": false }),
                            Some(e.to_string()),
                        ),
                    };
                    let record = CheckRecord {
                        name: "bijection".into(),
                        params: vec![("p".into(), p), ("N".into(), bound), ("n".into(), n as i64)],
                        passed: counterexample.is_none(),
                        counterexample,
                        wall_ms,
                    };
                    (record, summary)
                })
                .collect()
        };
        let (checks, classes): (Vec<_>, Vec<_>) = records.into_iter().unzip();
        let run = report("bijection", &params, checks);
        let payload = json!({ "p": p, "classes": classes, "passed": run.passed() });
        return Ok((payload, run));
    }
    Err(Usage(
        "bijection needs one of --decompose, --compose, --sweep".into(),
    ))
}

fn cmd_phi3(a: &Phi3Args) -> Outcome {
    validate_p(a.p)?;
    let mut params = vec![("p", a.p.to_string())];
    let payload = if let Some(d) = a.d {
        params.push(("d", d.to_string()));
        let basis: Vec<Value> = ideal3_basis(a.p, d)?.iter().map(|f| f.to_json()).collect();
        json!({ "p": a.p, "degree": d, "dimension": basis.len(), "basis": basis })
    } else if let Some(j) = a.j {
        params.push(("j", j.to_string()));
        json!({ "p": a.p, "j": j, "polynomial": f_j(a.p, j)?.to_json() })
    } else {
        json!({ "p": a.p, "polynomial": phi3(a.p)?.to_json() })
    };
    Ok((payload, report("phi3", &params, Vec::new())))
}

fn cmd_verify(a: &VerifyArgs) -> Outcome {
    let suites: Vec<Suite> = if a.check == "all" {
        Suite::ALL.to_vec()
    } else {
        a.check
            .split(',')
            .map(|s| s.trim().parse::<Suite>())
            .collect::<Result<_, _>>()?
    };
    if let Some(p) = a.p {
        validate_p(p)?;
    }
    if let Some(bound) = a.bound {
        check_bound(bound)?;
    }
    if let Some(order) = a.order {
        check_order(order)?;
    }
    let limits = Limits {
        max_bound: a.bound,
        max_n: a.n,
        order: a.order,
        dmax: a.dmax,
    };
    let levels = a.p.map(|p| vec![p]);
    let run = run_suites("verify", &suites, levels.as_deref(), &limits);
    if run.checks.is_empty() {
        return Err(Usage(format!(
            "no check in `{}` applies at the given level",
            a.check
        )));
    }
    let payload = run.to_json(false);
    Ok((payload, run))
}

//! Property suites over finite parameter grids, with per-check records suitable for
//! machine-readable reports. Checks inside a suite run on the rayon pool; records come
//! back in declaration order.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::bijection::{verify_b3_monotone, verify_b3_range, verify_class};
use crate::character::{
    a3_char, fermionic_extremal, fermionic_finitized, fermionic_principal, fermionic_voa,
    ideal3_char, principal_recursion_rhs, recursion_rhs,
};
use crate::error::{invalid, Error, Result};
use crate::partition::{gen_function, Bound};
use crate::relations::{
    a3_dimension_crosscheck, annihilation_check, independence_report, relation_prop24,
    relation_prop25,
};
use crate::series::pochhammer_inverse;
use crate::sympoly::phi::{f_j, squarefree_report};
use crate::sympoly::{
    exactness_check, finitized_exactness_check, hyp_ode_check, nested_identity_check, phi3,
    phi3_symmetry_check, qr_identity_check, Poly2,
};

/// One named check on one parameter tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckRecord {
    pub name: String,
    pub params: Vec<(String, i64)>,
    pub passed: bool,
    pub counterexample: Option<String>,
    pub wall_ms: u128,
}

impl CheckRecord {
    /// The record without timing, so equal runs serialize identically.
    pub fn to_json(&self, with_timing: bool) -> Value {
        let params: Map<String, Value> = self
            .params
            .iter()
            .map(|(k, v)| (k.clone(), json!(v)))
            .collect();
        let mut out = json!({
            "name": self.name,
            "params": params,
            "passed": self.passed,
            "counterexample": self.counterexample,
        });
        if with_timing {
            out["wall_ms"] = json!(self.wall_ms as u64);
        }
        out
    }
}

impl fmt::Display for CheckRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        write!(
            f,
            "{} {} [{}] ({} ms)",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            params.join(" "),
            self.wall_ms
        )?;
        if let Some(c) = &self.counterexample {
            write!(f, ": {c}")?;
        }
        Ok(())
    }
}

/// Records of a whole run plus the invocation that produced them.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunReport {
    pub command: String,
    pub parameters: Vec<(String, String)>,
    pub checks: Vec<CheckRecord>,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self, with_timing: bool) -> Value {
        let parameters: Map<String, Value> = self
            .parameters
            .iter()
            .map(|(k, v)| (k.clone(), json!(v)))
            .collect();
        json!({
            "command": self.command,
            "parameters": parameters,
            "checks": self.checks.iter().map(|c| c.to_json(with_timing)).collect::<Vec<_>>(),
            "passed": self.passed(),
        })
    }
}

/// The property suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Recursion,
    Bijection,
    Finitized,
    Principal,
    IdealChar,
    Phi3,
    Exactness,
    Relations,
    Independence,
    A3Dim,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Recursion,
        Suite::Bijection,
        Suite::Finitized,
        Suite::Principal,
        Suite::IdealChar,
        Suite::Phi3,
        Suite::Exactness,
        Suite::Relations,
        Suite::Independence,
        Suite::A3Dim,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Recursion => "recursion",
            Suite::Bijection => "bijection",
            Suite::Finitized => "finitized",
            Suite::Principal => "principal",
            Suite::IdealChar => "ideal-char",
            Suite::Phi3 => "phi3",
            Suite::Exactness => "exactness",
            Suite::Relations => "relations",
            Suite::Independence => "independence",
            Suite::A3Dim => "a3dim",
        }
    }

    /// Levels covered when none is given.
    pub fn default_levels(self) -> Vec<i64> {
        match self {
            Suite::Finitized | Suite::Exactness => vec![4, 5, 7],
            Suite::Phi3 => vec![4, 5, 7, 8, 10, 11, 13, 14],
            Suite::Independence => vec![7, 8],
            Suite::A3Dim => vec![4],
            _ => vec![4, 5, 7, 8],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
                invalid(
                    "check",
                    format!("unknown check `{s}`; expected one of {}", names.join(", ")),
                )
            })
    }
}

/// Grid sizes. `None` selects the default size of each suite.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Limits {
    /// Largest bound `N` (recursion 10, bijection 9, finitized 8).
    pub max_bound: Option<i64>,
    /// Largest particle number `n` (6; principal 5).
    pub max_n: Option<usize>,
    /// Truncation order (30; principal 24).
    pub order: Option<usize>,
    /// Largest degree (ideal character 30, exactness 2p, relations 2p + 4, a3dim 12).
    pub dmax: Option<u32>,
}

type Task = Box<dyn Fn() -> Result<Option<String>> + Send + Sync>;

struct Job {
    name: String,
    params: Vec<(String, i64)>,
    task: Task,
}

fn job<F>(name: &str, params: &[(&str, i64)], task: F) -> Job
where
    F: Fn() -> Result<Option<String>> + Send + Sync + 'static,
{
    Job {
        name: name.to_string(),
        params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        task: Box::new(task),
    }
}

fn run_jobs(jobs: Vec<Job>) -> Vec<CheckRecord> {
    jobs.into_par_iter()
        .map(|j| {
            let start = Instant::now();
            let outcome = (j.task)();
            let wall_ms = start.elapsed().as_millis();
            let counterexample = match outcome {
                Ok(c) => c,
                Err(e) => Some(format!("error: {e}")),
            };
            CheckRecord {
                name: j.name,
                params: j.params,
                passed: counterexample.is_none(),
                counterexample,
                wall_ms,
            }
        })
        .collect()
}

fn expect(ok: bool, msg: impl FnOnce() -> String) -> Option<String> {
    (!ok).then(msg)
}

/// Runs one suite over `levels` (or its defaults).
pub fn run_suite(suite: Suite, levels: Option<&[i64]>, limits: &Limits) -> Vec<CheckRecord> {
    let levels = levels.map_or_else(|| suite.default_levels(), <[i64]>::to_vec);
    run_jobs(suite_jobs(suite, &levels, limits))
}

/// Runs several suites and collects one report.
pub fn run_suites(
    command: &str,
    suites: &[Suite],
    levels: Option<&[i64]>,
    limits: &Limits,
) -> RunReport {
    let mut jobs = Vec::new();
    for &suite in suites {
        let ps = levels.map_or_else(|| suite.default_levels(), <[i64]>::to_vec);
        jobs.extend(suite_jobs(suite, &ps, limits));
    }
    let mut parameters = vec![(
        "checks".to_string(),
        suites
            .iter()
            .map(|s| s.name())
            .collect::<Vec<_>>()
            .join(","),
    )];
    if let Some(ps) = levels {
        let ps: Vec<String> = ps.iter().map(i64::to_string).collect();
        parameters.push(("p".into(), ps.join(",")));
    }
    for (k, v) in [
        ("N", limits.max_bound.map(|v| v.to_string())),
        ("n", limits.max_n.map(|v| v.to_string())),
        ("order", limits.order.map(|v| v.to_string())),
        ("dmax", limits.dmax.map(|v| v.to_string())),
    ] {
        if let Some(v) = v {
            parameters.push((k.into(), v));
        }
    }
    RunReport {
        command: command.to_string(),
        parameters,
        checks: run_jobs(jobs),
    }
}

fn suite_jobs(suite: Suite, levels: &[i64], limits: &Limits) -> Vec<Job> {
    let mut jobs = Vec::new();
    for &p in levels {
        match suite {
            Suite::Recursion => recursion_jobs(p, limits, &mut jobs),
            Suite::Bijection => bijection_jobs(p, limits, &mut jobs),
            Suite::Finitized => finitized_jobs(p, limits, &mut jobs),
            Suite::Principal => principal_jobs(p, limits, &mut jobs),
            Suite::IdealChar => ideal_char_jobs(p, limits, &mut jobs),
            Suite::Phi3 => phi3_jobs(p, &mut jobs),
            Suite::Exactness => exactness_jobs(p, limits, &mut jobs),
            Suite::Relations => relation_jobs(p, limits, &mut jobs),
            Suite::Independence => {
                // Only claimed from p = 7 on.
                if p >= 7 {
                    jobs.push(job("independence", &[("p", p)], move || {
                        let r = independence_report(p)?;
                        Ok(expect(r.independent(), || format!("{r:?}")))
                    }));
                }
            }
            Suite::A3Dim => {
                for d in 3..=limits.dmax.unwrap_or(12) {
                    jobs.push(job("a3dim", &[("p", p), ("d", d.into())], move || {
                        Ok(expect(a3_dimension_crosscheck(p, d)?, || {
                            format!("annihilator dimension differs from the character at d={d}")
                        }))
                    }));
                }
            }
        }
    }
    jobs
}

fn recursion_jobs(p: i64, limits: &Limits, jobs: &mut Vec<Job>) {
    let order = limits.order.unwrap_or(30);
    for bound in 1..=limits.max_bound.unwrap_or(10) {
        for n in 0..=limits.max_n.unwrap_or(6) {
            jobs.push(job(
                "recursion",
                &[("p", p), ("N", bound), ("n", n as i64)],
                move || {
                    let lhs = gen_function(p, Bound::Finite(bound), n, order)?;
                    let rhs = recursion_rhs(p, bound, n, order)?;
                    Ok(expect(lhs == rhs, || {
                        format!("enumeration {lhs} vs recursion {rhs}")
                    }))
                },
            ));
        }
    }
}

fn bijection_jobs(p: i64, limits: &Limits, jobs: &mut Vec<Job>) {
    let max_bound = limits.max_bound.unwrap_or(9);
    let max_n = limits.max_n.unwrap_or(6);
    for bound in 1..=max_bound {
        for n in 0..=max_n {
            let params = [("p", p), ("N", bound), ("n", n as i64)];
            jobs.push(job("bijection", &params, move || {
                Ok(verify_class(p, bound, n)?.counterexample)
            }));
            jobs.push(job("b3-monotone", &params, move || {
                verify_b3_monotone(p, bound, n)
            }));
            jobs.push(job(
                "b3-range",
                &[("p", p), ("L", bound), ("l", n as i64)],
                move || verify_b3_range(p, bound, n),
            ));
        }
    }
}

fn finitized_jobs(p: i64, limits: &Limits, jobs: &mut Vec<Job>) {
    let order = limits.order.unwrap_or(30);
    let max_n = limits.max_n.unwrap_or(6);
    for bound in 1..=limits.max_bound.unwrap_or(8) {
        jobs.push(job("finitized", &[("p", p), ("N", bound)], move || {
            let fermionic = fermionic_finitized(p, bound, order)?;
            for n in 0..=max_n {
                let expected = gen_function(p, Bound::Finite(bound), n, order)?;
                let got = fermionic.z_coeff(n as i64);
                if got != expected {
                    return Ok(Some(format!(
                        "n={n}: fermionic {got} vs enumeration {expected}"
                    )));
                }
            }
            Ok(None)
        }));
    }
}

fn principal_jobs(p: i64, limits: &Limits, jobs: &mut Vec<Job>) {
    let order = limits.order.unwrap_or(24);
    let max_n = limits.max_n.unwrap_or(5);
    jobs.push(job("principal-chain", &[("p", p)], move || {
        let fermionic = fermionic_principal(p, order)?.regrade_z_to_qz();
        for n in 0..=max_n {
            let f = fermionic.z_coeff(n as i64);
            let rec = principal_recursion_rhs(p, n, order)?;
            // Parts of weight below `order` are below `order`, so N = order is stable.
            let stable = gen_function(p, Bound::Finite(order as i64), n, order)?;
            let unbounded = gen_function(p, Bound::Infinite, n, order)?;
            if f != rec || rec != stable || stable != unbounded {
                return Ok(Some(format!(
                    "n={n}: fermionic {f}, recursion {rec}, N->inf {stable}"
                )));
            }
        }
        Ok(None)
    }));
    jobs.push(job("extremal-monotone", &[("p", p)], move || {
        let voa = fermionic_voa(p, order)?;
        let mut prev = fermionic_extremal(p, 0, order)?;
        for l in 1..=order as u64 {
            let next = fermionic_extremal(p, l, order)?;
            if !prev.leq(&next)? {
                return Ok(Some(format!("extremal l={} exceeds l={l}", l - 1)));
            }
            prev = next;
        }
        Ok(expect(prev == voa, || {
            format!("extremal l={order} differs from the limit")
        }))
    }));
}

/// Brute-force count of `a >= b >= c >= 0`, `a + b + c = d`, `a - c >= p - 2`.
fn admissible_triples(p: i64, d: i64) -> u64 {
    let mut total = 0;
    for c in 0..=d / 3 {
        for b in c..=(d - c) / 2 {
            let a = d - b - c;
            if a >= b && a - c >= p - 2 {
                total += 1;
            }
        }
    }
    total
}

fn ideal_char_jobs(p: i64, limits: &Limits, jobs: &mut Vec<Job>) {
    let dmax = limits.dmax.unwrap_or(30);
    let order = dmax as usize + 1;
    jobs.push(job(
        "ideal-char",
        &[("p", p), ("dmax", dmax.into())],
        move || {
            let ch = ideal3_char(p, order)?;
            for d in 0..=dmax as i64 {
                let expected = BigInt::from(admissible_triples(p, d));
                if ch.coeff(d as usize) != expected {
                    return Ok(Some(format!(
                        "d={d}: {} vs {expected} triples",
                        ch.coeff(d as usize)
                    )));
                }
            }
            Ok(None)
        },
    ));
    jobs.push(job(
        "a3-char-sum",
        &[("p", p), ("dmax", dmax.into())],
        move || {
            let lhs = &a3_char(p, order)? + &ideal3_char(p, order)?.shift(3);
            let rhs = pochhammer_inverse(Some(3), order).shift(3);
            Ok(expect(lhs == rhs, || format!("{lhs} vs {rhs}")))
        },
    ));
}

fn phi3_jobs(p: i64, jobs: &mut Vec<Job>) {
    let one = [("p", p)];
    jobs.push(job("phi3-symmetry", &one, move || {
        Ok(expect(phi3_symmetry_check(p)?, || {
            "expansion not symmetric".into()
        }))
    }));
    jobs.push(job("phi3-ode", &one, move || {
        Ok(expect(hyp_ode_check(p)?, || {
            "hypergeometric operator does not annihilate".into()
        }))
    }));
    jobs.push(job("phi3-pi", &one, move || {
        let image = phi3(p)?.specialize_pi();
        let expected = Poly2::x_minus_y_pow((p - 2) as u32);
        Ok(expect(image == expected, || {
            format!("pi(phi_3) = {image:?}")
        }))
    }));
    jobs.push(job("qr-identity", &one, move || {
        for m in 2..=5 {
            if !qr_identity_check(p, m)? {
                return Ok(Some(format!("m={m}")));
            }
        }
        Ok(None)
    }));
    if p >= 7 {
        jobs.push(job("nested-identity", &one, move || {
            Ok(expect(nested_identity_check(p)?, || "sides differ".into()))
        }));
    }
    jobs.push(job("squarefree", &one, move || {
        let r = squarefree_report(p)?;
        Ok(expect(r.passed(p), || format!("{r:?}")))
    }));
    jobs.push(job("f-j-leading", &one, move || {
        for j in 0..=(p - 2) as u32 {
            let lead = f_j(p, j)?.leading_monomial()?;
            if lead != [(p - 2) as u32, j, 0] {
                return Ok(Some(format!("j={j}: leading monomial {lead:?}")));
            }
        }
        Ok(None)
    }));
}

fn exactness_jobs(p: i64, limits: &Limits, jobs: &mut Vec<Job>) {
    let dmax = limits.dmax.unwrap_or(2 * p as u32);
    jobs.push(job(
        "exact-sequence",
        &[("p", p), ("dmax", dmax.into())],
        move || Ok(exactness_check(p, dmax)?.failure),
    ));
    let bound = p + 1;
    jobs.push(job(
        "finitized-exact-sequence",
        &[("p", p), ("N", bound)],
        move || Ok(finitized_exactness_check(p, bound)?.failure),
    ));
}

fn relation_jobs(p: i64, limits: &Limits, jobs: &mut Vec<Job>) {
    let dmax = limits.dmax.unwrap_or(2 * p as u32 + 4);
    for d in 3..=dmax {
        jobs.push(job(
            "annihilation",
            &[("p", p), ("d", d.into())],
            move || {
                for nu in 0..=(p - 3) as u32 {
                    if !annihilation_check(&relation_prop24(p, nu, d)?, p)? {
                        return Ok(Some(format!("a^2 d^{nu} a at degree {d}")));
                    }
                }
                Ok(expect(
                    annihilation_check(&relation_prop25(p, d)?, p)?,
                    || format!("second relation at degree {d}"),
                ))
            },
        ));
    }
}

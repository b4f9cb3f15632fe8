//! The partition moves `B1`, `B2`, `B3`, `B3*` and the bijection
//!
//! ```text
//! U_{l+2m=n} C^{[p-3]}_{N-2(l-1)-(p-2)m, l} x P_{2(N-1)-(p-2)(n-2), m}  -->  C^{[p]}_{N,n}
//! (lambda, mu) |--> (B3^{mu_m} B2) ... (B3^{mu_1} B2) B1(lambda)
//! ```
//!
//! Indices in [`SNuEntry`] are 1-based to match the usual notation `nu_1 >= nu_2 >= ...`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{validate_p, Error, Result};
use crate::partition::{bounded_partitions, enumerate, is_admissible, Bound, Partition};

/// Which of the three classification conditions holds at an index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case {
    /// `nu_i = nu_{i+1}`
    A,
    /// `nu_i = nu_{i+1} + 1` and `nu_{i-1} - nu_{i+1} >= p - 1`
    B,
    /// `nu_{i-1} > nu_i > nu_{i+1}` and `nu_{i-1} - nu_{i+1} = p - 2`
    C,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::A => "a",
            Case::B => "b",
            Case::C => "c",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SNuEntry {
    pub index: usize,
    pub case: Case,
}

/// `nu = (B3^{mu_m} B2) ... (B3^{mu_1} B2) B1(lambda)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Decomposition {
    pub lambda: Partition,
    /// `mu_1 >= ... >= mu_m >= 0`.
    pub mu: Vec<u32>,
}

impl Decomposition {
    pub fn m(&self) -> usize {
        self.mu.len()
    }
}

const PLUS_INF: i64 = 1 << 40;
const MINUS_INF: i64 = -(1 << 40);

/// `nu_j` for `0 <= j <= n + 1` with the sentinels `nu_0 = +inf`, `nu_{n+1} = -inf`.
fn part_at(nu: &[u32], j: usize) -> i64 {
    if j == 0 {
        PLUS_INF
    } else if j > nu.len() {
        MINUS_INF
    } else {
        i64::from(nu[j - 1])
    }
}

/// Bound of the target class of `B1`: `C^{[p-3]}_{L,l} -> C^{[p]}_{L+2l-2,l}`.
fn b1_target_bound(lambda_bound: i64, l: usize) -> i64 {
    lambda_bound + 2 * l as i64 - 2
}

/// `(lambda_1, ..., lambda_l) -> (lambda_1 + 2(l-1), ..., lambda_{l-1} + 2, lambda_l)`.
pub fn b1(lambda: &Partition, p: i64) -> Result<Partition> {
    validate_p(p)?;
    if !is_admissible(lambda.parts(), p - 3, Bound::Infinite) {
        return Err(not_in_class(lambda.parts(), p - 3, Bound::Infinite));
    }
    let l = lambda.len();
    let image: Vec<u32> = lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &x)| x + 2 * (l - 1 - i) as u32)
        .collect();
    let bound = lambda.parts().first().map_or(0, |&x| i64::from(x));
    debug_assert!(
        l == 0 || is_admissible(&image, p, Bound::Finite(b1_target_bound(bound, l))),
        "B1 image {image:?} left the class"
    );
    Ok(Partition::from_vec_unchecked(image))
}

/// Inverse of [`b1`] on the nose; `None` if the result is not a partition.
fn b1_inverse(nu: &[u32]) -> Option<Vec<u32>> {
    let l = nu.len();
    let lambda: Vec<u32> = nu
        .iter()
        .enumerate()
        .map(|(i, &x)| i64::from(x) - 2 * (l - 1 - i) as i64)
        .map(|x| u32::try_from(x).ok().filter(|&x| x > 0))
        .collect::<Option<Vec<u32>>>()?;
    lambda.windows(2).all(|w| w[0] >= w[1]).then_some(lambda)
}

/// `(nu_1, ..., nu_n) -> (nu_1 + p - 2, ..., nu_n + p - 2, 1, 1)`.
pub fn b2(nu: &Partition, p: i64) -> Result<Partition> {
    validate_p(p)?;
    if !is_admissible(nu.parts(), p, Bound::Infinite) {
        return Err(not_in_class(nu.parts(), p, Bound::Infinite));
    }
    Ok(Partition::from_vec_unchecked(b2_parts(nu.parts(), p)))
}

fn b2_parts(nu: &[u32], p: i64) -> Vec<u32> {
    let shift = (p - 2) as u32;
    let mut out: Vec<u32> = nu.iter().map(|&x| x + shift).collect();
    out.extend([1, 1]);
    out
}

/// Inverse of `B2`: strips the trailing `(1, 1)` and the shift by `p - 2`.
fn b2_inverse(nu: &[u32], p: i64) -> Option<Vec<u32>> {
    let n = nu.len();
    if n < 2 || nu[n - 1] != 1 || nu[n - 2] != 1 {
        return None;
    }
    nu[..n - 2]
        .iter()
        .map(|&x| i64::from(x) - (p - 2))
        .map(|x| u32::try_from(x).ok().filter(|&x| x > 0))
        .collect()
}

/// The set `S_nu` with the case label of every index.
pub fn s_nu(nu: &[u32], p: i64) -> Vec<SNuEntry> {
    (1..=nu.len())
        .filter_map(|i| classify(nu, p, i).map(|case| SNuEntry { index: i, case }))
        .collect()
}

fn classify(nu: &[u32], p: i64, i: usize) -> Option<Case> {
    let prev = part_at(nu, i - 1);
    let cur = part_at(nu, i);
    let next = part_at(nu, i + 1);
    if cur == next {
        Some(Case::A)
    } else if cur == next + 1 && prev - next >= p - 1 {
        Some(Case::B)
    } else if prev > cur && cur > next && prev - next == p - 2 {
        Some(Case::C)
    } else {
        None
    }
}

fn bumped(nu: &[u32], j: usize, up: bool) -> Vec<u32> {
    let mut out = nu.to_vec();
    if up {
        out[j - 1] += 1;
    } else {
        out[j - 1] -= 1;
    }
    out
}

/// `nu'^{(i)}`: raise `nu_{i+1}` in case (b), `nu_i` otherwise.
fn raise_at(nu: &[u32], entry: SNuEntry) -> Vec<u32> {
    let j = match entry.case {
        Case::B => entry.index + 1,
        _ => entry.index,
    };
    bumped(nu, j, true)
}

/// `nu''^{(i)}`: lower `nu_{i+1}` in case (a), `nu_i` otherwise.
fn lower_at(nu: &[u32], entry: SNuEntry) -> Vec<u32> {
    let j = match entry.case {
        Case::A => entry.index + 1,
        _ => entry.index,
    };
    bumped(nu, j, false)
}

/// `B3(nu)` inside `C^{[p]}_{N,n}`, or `None` where it is not defined.
pub fn b3(nu: &[u32], p: i64, bound: i64) -> Option<Vec<u32>> {
    debug_assert!(
        is_admissible(nu, p, Bound::Finite(bound)),
        "{nu:?} not in class"
    );
    let s = s_nu(nu, p);
    let &top = s.last()?;
    let class = Bound::Finite(bound);
    let first = raise_at(nu, top);
    if is_admissible(&first, p, class) {
        return Some(first);
    }
    let below = s.iter().rev().nth(1).filter(|e| e.index + 1 == top.index)?;
    let second = raise_at(nu, *below);
    // Raising nu_{i0-1} up to nu_{i0-2} creates a new equality, which moves max S
    // and would make B3 non-injective: B3(4,3,2,1) = B3(4,4,1,1) = (4,4,2,1) at p = 4.
    let raised = below.index;
    let strict = part_at(&second, raised - 1) > part_at(&second, raised);
    (strict && is_admissible(&second, p, class)).then_some(second)
}

/// `B3*(nu)` inside `C^{[p]}_{N,n}`, or `None` where it is not defined.
pub fn b3_star(nu: &[u32], p: i64, bound: i64) -> Option<Vec<u32>> {
    debug_assert!(
        is_admissible(nu, p, Bound::Finite(bound)),
        "{nu:?} not in class"
    );
    let s = s_nu(nu, p);
    let &top = s.last()?;
    let cand = lower_at(nu, top);
    is_admissible(&cand, p, Bound::Finite(bound)).then_some(cand)
}

/// Largest admissible value of `mu_1` for a given `lambda` class.
pub fn mu_cap(lambda_bound: i64, l: usize, p: i64) -> i64 {
    2 * lambda_bound - (p - 6) * (l as i64 - 2) + 2
}

/// Bound `L` of the `lambda` class for a target class `C^{[p]}_{N, l+2m}`.
pub fn lambda_bound(bound: i64, l: usize, m: usize, p: i64) -> i64 {
    bound - 2 * (l as i64 - 1) - (p - 2) * m as i64
}

/// The weight `|nu|` predicted from a decomposition.
pub fn predicted_weight(lambda: &Partition, mu: &[u32], p: i64) -> i64 {
    let l = lambda.len() as i64;
    let m = mu.len() as i64;
    let mu_w: i64 = mu.iter().map(|&x| i64::from(x)).sum();
    lambda.weight() as i64 + mu_w + l * (l - 1) + (p - 2) * l * m + (p - 2) * m * (m - 1) + 2 * m
}

/// Writes `nu` in the form `(B3^{mu_m} B2) ... (B3^{mu_1} B2) B1(lambda)` by peeling
/// saturated `B3*` chains and `B2` layers from the outside.
pub fn decompose(nu: &[u32], p: i64, bound: i64) -> Result<Decomposition> {
    validate_p(p)?;
    if !is_admissible(nu, p, Bound::Finite(bound)) {
        return Err(not_in_class(nu, p, Bound::Finite(bound)));
    }
    let mut cur = nu.to_vec();
    let mut cur_bound = bound;
    let mut chain: Vec<u32> = Vec::new();
    while !s_nu(&cur, p).is_empty() {
        let mut k = 0u32;
        while let Some(next) = b3_star(&cur, p, cur_bound) {
            cur = next;
            k += 1;
        }
        cur = b2_inverse(&cur, p).ok_or_else(|| {
            Error::Domain(format!(
                "{nu:?}: B3*-saturated partition {cur:?} is not in the image of B2"
            ))
        })?;
        cur_bound -= p - 2;
        if !is_admissible(&cur, p, Bound::Finite(cur_bound)) {
            return Err(Error::Domain(format!(
                "{nu:?}: peeled partition {cur:?} left C^[{p}]_{cur_bound}"
            )));
        }
        chain.push(k);
    }
    let l = cur.len();
    let lambda = b1_inverse(&cur).ok_or_else(|| {
        Error::Domain(format!(
            "{nu:?}: core {cur:?} with empty S_nu is not a B1 image"
        ))
    })?;
    let l_bound = cur_bound - 2 * l as i64 + 2;
    if !is_admissible(&lambda, p - 3, Bound::Finite(l_bound)) {
        return Err(Error::Domain(format!(
            "{nu:?}: lambda {lambda:?} not in C^[{}]_{l_bound}",
            p - 3
        )));
    }
    chain.reverse();
    let decomposition = Decomposition {
        lambda: Partition::from_vec_unchecked(lambda),
        mu: chain,
    };
    check_mu(&decomposition.mu, l_bound, l, p)?;
    Ok(decomposition)
}

fn check_mu(mu: &[u32], l_bound: i64, l: usize, p: i64) -> Result<()> {
    if mu.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::Domain(format!(
            "mu = {mu:?} is not weakly decreasing"
        )));
    }
    let cap = mu_cap(l_bound, l, p);
    if let Some(&first) = mu.first() {
        if i64::from(first) > cap {
            return Err(Error::Domain(format!(
                "mu_1 = {first} exceeds the bound 2L-(p-6)(l-2)+2 = {cap}"
            )));
        }
    }
    Ok(())
}

/// Builds `nu = (B3^{mu_m} B2) ... (B3^{mu_1} B2) B1(lambda)` in `C^{[p]}_{N, l+2m}`.
pub fn compose(lambda: &Partition, mu: &[u32], p: i64, bound: i64) -> Result<Vec<u32>> {
    validate_p(p)?;
    let l = lambda.len();
    let m = mu.len();
    let l_bound = lambda_bound(bound, l, m, p);
    if !is_admissible(lambda.parts(), p - 3, Bound::Finite(l_bound)) {
        return Err(not_in_class(lambda.parts(), p - 3, Bound::Finite(l_bound)));
    }
    check_mu(mu, l_bound, l, p)?;
    let mut cur = b1(lambda, p)?.into_parts();
    let mut cur_bound = b1_target_bound(l_bound, l);
    for &k in mu {
        cur = b2_parts(&cur, p);
        cur_bound += p - 2;
        for step in 0..k {
            cur = b3(&cur, p, cur_bound).ok_or_else(|| {
                Error::Domain(format!(
                    "B3 undefined at step {step} of {k} on {cur:?} (lambda={lambda:?}, mu={mu:?})"
                ))
            })?;
        }
    }
    debug_assert_eq!(cur_bound, bound);
    Ok(cur)
}

/// The domain of the bijection onto `C^{[p]}_{N,n}`, enumerated independently of
/// the moves.
pub fn bijection_domain(p: i64, bound: i64, n: usize) -> Result<Vec<Decomposition>> {
    validate_p(p)?;
    let mut out = Vec::new();
    for m in 0..=n / 2 {
        let l = n - 2 * m;
        let l_bound = lambda_bound(bound, l, m, p);
        let box_width = 2 * (bound - 1) - (p - 2) * (n as i64 - 2);
        let lambdas = enumerate(p - 3, Bound::Finite(l_bound), l)?;
        if lambdas.is_empty() || box_width < 0 {
            continue;
        }
        let mus = bounded_partitions(box_width as u32, m);
        for lambda in &lambdas {
            for mu in &mus {
                out.push(Decomposition {
                    lambda: lambda.clone(),
                    mu: mu.clone(),
                });
            }
        }
    }
    Ok(out)
}

/// Outcome of checking all bijection properties on one class `C^{[p]}_{N,n}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassReport {
    pub class_size: usize,
    pub domain_size: usize,
    pub b3_applications: usize,
    pub b3_star_applications: usize,
    pub counterexample: Option<String>,
}

impl ClassReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks, on every `nu` in `C^{[p]}_{N,n}`: the `B3`/`B3*` involution lemma, the
/// characterisation of `S_nu = {}` as the image of `B1`, `compose . decompose = id`,
/// the weight law; and on the independently enumerated domain,
/// `decompose . compose = id` with matching cardinalities.
pub fn verify_class(p: i64, bound: i64, n: usize) -> Result<ClassReport> {
    let class = enumerate(p, Bound::Finite(bound), n)?;
    let mut report = ClassReport {
        class_size: class.len(),
        ..Default::default()
    };
    let fail = |report: &mut ClassReport, msg: String| {
        if report.counterexample.is_none() {
            report.counterexample = Some(format!("p={p} N={bound} n={n}: {msg}"));
        }
    };
    let mut images = BTreeSet::new();
    for nu in &class {
        let nu = nu.parts();
        if let Some(up) = b3(nu, p, bound) {
            report.b3_applications += 1;
            if b3_star(&up, p, bound).as_deref() != Some(nu) {
                fail(&mut report, format!("B3*(B3({nu:?})) != {nu:?}"));
            }
        }
        if let Some(down) = b3_star(nu, p, bound) {
            report.b3_star_applications += 1;
            if b3(&down, p, bound).as_deref() != Some(nu) {
                fail(&mut report, format!("B3(B3*({nu:?})) != {nu:?}"));
            }
        }
        let empty = s_nu(nu, p).is_empty();
        let l_bound = bound - 2 * nu.len() as i64 + 2;
        let in_b1_image =
            b1_inverse(nu).is_some_and(|lam| is_admissible(&lam, p - 3, Bound::Finite(l_bound)));
        if empty != in_b1_image {
            fail(
                &mut report,
                format!("S_nu empty = {empty} but B1-image = {in_b1_image} for {nu:?}"),
            );
        }
        match decompose(nu, p, bound) {
            Ok(dec) => {
                let w = predicted_weight(&dec.lambda, &dec.mu, p);
                let actual: i64 = nu.iter().map(|&x| i64::from(x)).sum();
                if w != actual {
                    fail(
                        &mut report,
                        format!("weight law: {nu:?} -> {dec:?} predicts {w}"),
                    );
                }
                match compose(&dec.lambda, &dec.mu, p, bound) {
                    Ok(back) if back == nu => {}
                    Ok(back) => fail(
                        &mut report,
                        format!("compose(decompose({nu:?})) = {back:?}"),
                    ),
                    Err(e) => fail(&mut report, format!("compose(decompose({nu:?})): {e}")),
                }
                images.insert(dec);
            }
            Err(e) => fail(&mut report, e.to_string()),
        }
    }
    let domain = bijection_domain(p, bound, n)?;
    report.domain_size = domain.len();
    for dec in &domain {
        match compose(&dec.lambda, &dec.mu, p, bound) {
            Ok(nu) => match decompose(&nu, p, bound) {
                Ok(back) if &back == dec => {}
                Ok(back) => fail(
                    &mut report,
                    format!("decompose(compose({dec:?})) = {back:?}"),
                ),
                Err(e) => fail(&mut report, format!("decompose(compose({dec:?})): {e}")),
            },
            Err(e) => fail(&mut report, format!("compose({dec:?}): {e}")),
        }
    }
    if report.domain_size != report.class_size {
        let msg = format!(
            "|domain| = {} but |class| = {}",
            report.domain_size, report.class_size
        );
        fail(&mut report, msg);
    }
    if images.len() != class.len() {
        fail(&mut report, "decompose is not injective".into());
    }
    Ok(report)
}

/// Largest `k` with `B3^k(nu)` defined inside `C^{[p]}_{N,n}`.
pub fn b3_orbit_length(nu: &[u32], p: i64, bound: i64) -> usize {
    let mut cur = nu.to_vec();
    let mut k = 0;
    while let Some(next) = b3(&cur, p, bound) {
        cur = next;
        k += 1;
    }
    k
}

/// Checks that `B3^k(B2 B1(lambda))` is defined exactly for
/// `0 <= k <= 2L - (p-6)(l-2) + 2` on every `lambda` in `C^{[p-3]}_{L,l}`.
pub fn verify_b3_range(p: i64, lambda_bound: i64, l: usize) -> Result<Option<String>> {
    validate_p(p)?;
    for lambda in enumerate(p - 3, Bound::Finite(lambda_bound), l)? {
        let nu = b2_parts(b1(&lambda, p)?.parts(), p);
        let class_bound = b1_target_bound(lambda_bound, l) + p - 2;
        let k = b3_orbit_length(&nu, p, class_bound) as i64;
        let expected = mu_cap(lambda_bound, l, p);
        if k != expected {
            return Ok(Some(format!(
                "lambda={lambda:?} L={lambda_bound}: B3 orbit length {k}, expected {expected}"
            )));
        }
    }
    Ok(None)
}

/// Checks that if `B3^k B2(nu)` is the end of its `B3` orbit then `B3^j B2` of any
/// point on that orbit is defined exactly for `j <= ` its position.
pub fn verify_b3_monotone(p: i64, bound: i64, n: usize) -> Result<Option<String>> {
    validate_p(p)?;
    for nu in enumerate(p, Bound::Finite(bound), n)? {
        let mut cur = b2_parts(nu.parts(), p);
        let outer = bound + p - 2;
        let mut k = 0usize;
        loop {
            let inner = b3_orbit_length(&b2_parts(&cur, p), p, outer + p - 2);
            if inner != k {
                return Ok(Some(format!(
                    "nu={nu:?}: B3^{k}B2(nu) = {cur:?} has next B3-orbit length {inner}"
                )));
            }
            match b3(&cur, p, outer) {
                Some(next) => {
                    cur = next;
                    k += 1;
                }
                None => break,
            }
        }
    }
    Ok(None)
}

fn not_in_class(parts: &[u32], p: i64, bound: Bound) -> Error {
    Error::NotInClass {
        parts: parts.to_vec(),
        p,
        bound: bound.to_string(),
    }
}

//! Admissible partitions: weakly decreasing positive parts `lambda_1 >= ... >= lambda_n >= 1`
//! with `lambda_1 <= N` and the window condition `lambda_i - lambda_{i+2} >= p - 2`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::error::{invalid, validate_reduced_p, Error, Result};
use crate::series::QSeries;

/// Upper bound on the largest part.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Bound {
    Finite(i64),
    Infinite,
}

impl Bound {
    pub fn admits(self, part: u32) -> bool {
        match self {
            Bound::Finite(n) => i64::from(part) <= n,
            Bound::Infinite => true,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(n) => write!(f, "{n}"),
            Bound::Infinite => f.write_str("inf"),
        }
    }
}

impl From<i64> for Bound {
    fn from(n: i64) -> Self {
        Bound::Finite(n)
    }
}

/// A weakly decreasing list of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(invalid("parts", format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(invalid(
                "parts",
                format!("{parts:?} is not weakly decreasing"),
            ));
        }
        Ok(Partition(parts))
    }

    pub(crate) fn from_vec_unchecked(parts: Vec<u32>) -> Self {
        debug_assert!(parts.iter().all(|&x| x > 0));
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<u32> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u64 {
        self.0.iter().map(|&x| u64::from(x)).sum()
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Partition::new(parts)
    }
}

/// True iff `parts` is weakly decreasing, positive, bounded by `bound`, and satisfies
/// `parts[i] - parts[i+2] >= p - 2` for every window.
///
/// Accepts any slice, so it doubles as the membership test for candidate partitions
/// produced by the bijection moves.
pub fn is_admissible(parts: &[u32], p: i64, bound: Bound) -> bool {
    if parts.iter().any(|&x| x == 0 || !bound.admits(x)) {
        return false;
    }
    if parts.windows(2).any(|w| w[0] < w[1]) {
        return false;
    }
    parts
        .windows(3)
        .all(|w| i64::from(w[0]) - i64::from(w[2]) >= p - 2)
}

/// Depth-first walk over admissible partitions of length `n` with weight `<= max_weight`.
fn walk<F: FnMut(&[u32])>(p: i64, first_max: i64, n: usize, max_weight: u64, visit: &mut F) {
    let mut parts: Vec<u32> = Vec::with_capacity(n);
    walk_rec(p, first_max, n, max_weight, 0, &mut parts, visit);
}

fn walk_rec<F: FnMut(&[u32])>(
    p: i64,
    first_max: i64,
    n: usize,
    max_weight: u64,
    weight: u64,
    parts: &mut Vec<u32>,
    visit: &mut F,
) {
    let i = parts.len();
    if i == n {
        visit(parts);
        return;
    }
    let mut hi = match i {
        0 => first_max,
        _ => i64::from(parts[i - 1]),
    };
    if i >= 2 {
        hi = hi.min(i64::from(parts[i - 2]) - (p - 2));
    }
    // Each of the remaining parts after this one is at least 1.
    let rest = (n - i - 1) as u64;
    if weight + 1 + rest > max_weight {
        return;
    }
    hi = hi.min((max_weight - weight - rest) as i64);
    for part in 1..=hi {
        parts.push(part as u32);
        walk_rec(
            p,
            first_max,
            n,
            max_weight,
            weight + part as u64,
            parts,
            visit,
        );
        parts.pop();
    }
}

fn first_part_cap(bound: Bound, max_weight: u64) -> i64 {
    match bound {
        Bound::Finite(nb) => nb.min(max_weight as i64),
        Bound::Infinite => max_weight as i64,
    }
}

/// All of `C^{[p]}_{N,n}`, sorted by weight and then lexicographically.
pub fn enumerate(p: i64, bound: Bound, n: usize) -> Result<Vec<Partition>> {
    validate_reduced_p(p)?;
    let Bound::Finite(nb) = bound else {
        return Err(Error::Domain(
            "cannot enumerate an unbounded class; use count or gen_function".into(),
        ));
    };
    let mut out = Vec::new();
    let max_weight = (nb.max(0) as u64) * n as u64;
    walk(p, nb, n, max_weight, &mut |parts| {
        out.push(Partition::from_vec_unchecked(parts.to_vec()))
    });
    out.sort_by(|a, b| (a.weight(), a.parts()).cmp(&(b.weight(), b.parts())));
    Ok(out)
}

/// `#C^{[p]}_{N,d,n}`; finite for `N = inf` as well since the parts are at most `d`.
pub fn count(p: i64, bound: Bound, d: u64, n: usize) -> Result<u64> {
    validate_reduced_p(p)?;
    let mut total = 0u64;
    walk(p, first_part_cap(bound, d), n, d, &mut |parts| {
        if parts.iter().map(|&x| u64::from(x)).sum::<u64>() == d {
            total += 1;
        }
    });
    Ok(total)
}

/// Counts by weight for all weights below `order`.
pub fn count_by_weight(p: i64, bound: Bound, n: usize, order: usize) -> Result<BTreeMap<u64, u64>> {
    validate_reduced_p(p)?;
    let mut counts = BTreeMap::new();
    if order == 0 {
        return Ok(counts);
    }
    let max_weight = order as u64 - 1;
    walk(
        p,
        first_part_cap(bound, max_weight),
        n,
        max_weight,
        &mut |parts| {
            let w: u64 = parts.iter().map(|&x| u64::from(x)).sum();
            *counts.entry(w).or_insert(0) += 1;
        },
    );
    Ok(counts)
}

/// Generating function `sum_{nu in C^{[p]}_{N,n}} q^{|nu|}` truncated at `order`.
pub fn gen_function(p: i64, bound: Bound, n: usize, order: usize) -> Result<QSeries> {
    if order == 0 {
        return Err(invalid("order", "must be at least 1"));
    }
    let counts = count_by_weight(p, bound, n, order)?;
    let mut coeffs = vec![BigInt::from(0); order];
    for (w, c) in counts {
        coeffs[w as usize] = BigInt::from(c);
    }
    Ok(QSeries::truncated(coeffs, order))
}

/// `P_{M,m}`: all `M >= mu_1 >= ... >= mu_m >= 0`, in lexicographic order.
pub fn bounded_partitions(big_m: u32, m: usize) -> Vec<Vec<u32>> {
    fn rec(cap: u32, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for x in 0..=cap {
            cur.push(x);
            rec(x, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(big_m, m, &mut Vec::with_capacity(m), &mut out);
    out
}

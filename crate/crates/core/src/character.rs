//! Fermionic character formulas, recursions for the generating functions of admissible
//! partitions, and the closed-form characters of the three-point ideal.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{invalid, validate_p, validate_reduced_p, Result};
use crate::series::{gauss_binomial, pochhammer_inverse, QSeries, QZSeries};

/// The quadratic form `B` (stored doubled) and linear term `A` of the fermionic sums,
/// indexed by `m = (m_0, m_1, ..., m_s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GordonData {
    pub p: i64,
    pub s: usize,
    pub two_b: Vec<Vec<i64>>,
    pub a: Vec<i64>,
}

impl GordonData {
    pub fn rank(&self) -> usize {
        self.s + 1
    }

    /// `(2Bm)_i` for every `i`.
    pub fn two_b_times(&self, m: &[u64]) -> Vec<i64> {
        self.two_b
            .iter()
            .map(|row| row.iter().zip(m).map(|(&b, &x)| b * x as i64).sum())
            .collect()
    }

    /// `mBm + Am`; always an integer.
    pub fn exponent(&self, m: &[u64]) -> i64 {
        let quad: i64 = self
            .two_b_times(m)
            .iter()
            .zip(m)
            .map(|(&bm, &x)| bm * x as i64)
            .sum();
        assert!(quad % 2 == 0, "m.2B.m = {quad} is odd for m = {m:?}");
        let lin: i64 = self.a.iter().zip(m).map(|(&a, &x)| a * x as i64).sum();
        quad / 2 + lin
    }

    /// `|m| = m_0 + 2(m_1 + ... + m_s)`.
    pub fn charge(m: &[u64]) -> u64 {
        m.iter()
            .enumerate()
            .map(|(i, &x)| if i == 0 { x } else { 2 * x })
            .sum()
    }

    /// Largest `m_i` with `B_ii m_i^2 + (A_i + shift * c_i) m_i < order`, where `c_i` is the
    /// charge weight. All entries of `B` are positive, so this bounds `m_i` over every
    /// term whose exponent is below `order`.
    fn coordinate_cap(&self, i: usize, order: usize, charge_shift: i64) -> u64 {
        let weight = if i == 0 { 1 } else { 2 };
        let lin = self.a[i] + charge_shift * weight;
        let f = |x: i64| (self.two_b[i][i] * x * x) / 2 + lin * x;
        let mut x = 0i64;
        while f(x + 1) < order as i64 || f(x + 1) <= f(x) {
            x += 1;
        }
        x as u64
    }

    /// All `m` whose exponent (plus `charge_shift * |m|`) is below `order`.
    fn summation_box(&self, order: usize, charge_shift: i64) -> Vec<Vec<u64>> {
        let caps: Vec<u64> = (0..self.rank())
            .map(|i| self.coordinate_cap(i, order, charge_shift))
            .collect();
        let mut out = Vec::new();
        let mut m = vec![0u64; self.rank()];
        loop {
            let e = self.exponent(&m) + charge_shift * Self::charge(&m) as i64;
            assert!(e >= 0, "negative exponent {e} at m = {m:?}");
            if (e as usize) < order {
                out.push(m.clone());
            }
            let mut k = 0;
            loop {
                if k == m.len() {
                    return out;
                }
                if m[k] < caps[k] {
                    m[k] += 1;
                    break;
                }
                m[k] = 0;
                k += 1;
            }
        }
    }
}

/// `s = floor(p/3)`, `2B` and `A` for level `p`.
pub fn gordon_data(p: i64) -> Result<GordonData> {
    validate_p(p)?;
    let s = (p / 3) as usize;
    let si = s as i64;
    let r = s + 1;
    let mut two_b = vec![vec![0i64; r]; r];
    for (i, row) in two_b.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            let k = i.max(j) as i64;
            *entry = match (i, j) {
                (0, 0) => 2 * si,
                (0, _) | (_, 0) => p + si - 2 - k,
                _ => 2 * (p + si - 2 - k),
            };
        }
    }
    let a = (0..r)
        .map(|i| {
            if i == 0 {
                -si
            } else {
                -(p - si - 2 + i as i64)
            }
        })
        .collect();
    Ok(GordonData { p, s, two_b, a })
}

/// Sums `q^{E(m) + shift|m|} z^{|m|} factor(m)` over every `m` with exponent below `order`.
fn fermionic_sum<F>(data: &GordonData, order: usize, charge_shift: i64, factor: F) -> QZSeries
where
    F: Fn(&[u64]) -> Option<QSeries> + Sync,
{
    let terms: Vec<(i64, QSeries)> = data
        .summation_box(order, charge_shift)
        .par_iter()
        .filter_map(|m| {
            let charge = GordonData::charge(m);
            let e = data.exponent(m) + charge_shift * charge as i64;
            let f = factor(m)?;
            Some((charge as i64, f.truncate(order).shift(e as usize)))
        })
        .collect();
    let mut out = QZSeries::zero(order);
    for (n, term) in &terms {
        out.add_z_term(*n, term);
    }
    out
}

fn check_order(order: usize) -> Result<()> {
    if order == 0 {
        return Err(invalid("order", "must be at least 1"));
    }
    Ok(())
}

fn inverse_pochhammers(m: &[u64], order: usize) -> QSeries {
    m.iter().fold(QSeries::one(order), |acc, &x| {
        &acc * &pochhammer_inverse(Some(x as usize), order)
    })
}

/// `sum_m q^{mBm+Am} z^{|m|} / ((q)_{m_0} ... (q)_{m_s})`, the character of the
/// ideal graded by degree and number of variables.
pub fn fermionic_principal(p: i64, order: usize) -> Result<QZSeries> {
    let data = gordon_data(p)?;
    check_order(order)?;
    Ok(fermionic_sum(&data, order, 0, |m| {
        Some(inverse_pochhammers(m, order))
    }))
}

/// `sum_m q^{mBm+Am} (qz)^{|m|} / ((q)_{m_0} ... (q)_{m_{s-1}} (q)_{m_s + l})`.
pub fn fermionic_extremal(p: i64, l: u64, order: usize) -> Result<QZSeries> {
    let data = gordon_data(p)?;
    check_order(order)?;
    let s = data.s;
    Ok(fermionic_sum(&data, order, 1, |m| {
        let mut shifted = m.to_vec();
        shifted[s] += l;
        Some(inverse_pochhammers(&shifted, order))
    }))
}

/// `(q)_inf^{-1} sum_m q^{mBm+Am} (qz)^{|m|} / ((q)_{m_0} ... (q)_{m_{s-1}})`.
pub fn fermionic_voa(p: i64, order: usize) -> Result<QZSeries> {
    let data = gordon_data(p)?;
    check_order(order)?;
    let s = data.s;
    let sum = fermionic_sum(&data, order, 1, |m| {
        Some(inverse_pochhammers(&m[..s], order))
    });
    Ok(sum.mul_q(&pochhammer_inverse(None, order)))
}

/// Box widths `P_i` of the finitized sum.
pub fn finitized_boxes(data: &GordonData, bound: i64, m: &[u64]) -> Vec<i64> {
    data.two_b_times(m)
        .iter()
        .enumerate()
        .map(|(i, &bm)| {
            let base = if i == 0 { bound - 1 } else { 2 * (bound - 1) };
            base - bm - 2 * data.a[i]
        })
        .collect()
}

/// `sum_m q^{mBm+Am} (qz)^{|m|} prod_i [P_i + m_i over m_i]`, the character of the
/// subspace cut out by `lambda_1 <= N`.
pub fn fermionic_finitized(p: i64, bound: i64, order: usize) -> Result<QZSeries> {
    let data = gordon_data(p)?;
    check_order(order)?;
    if bound < 1 {
        return Err(invalid("N", format!("N = {bound} must be at least 1")));
    }
    Ok(fermionic_sum(&data, order, 1, |m| {
        let boxes = finitized_boxes(&data, bound, m);
        let mut acc = QSeries::one(order);
        for (&width, &mi) in boxes.iter().zip(m) {
            if mi == 0 {
                continue;
            }
            let g = gauss_binomial(width, mi as i64).expect("m_i >= 0");
            if g.is_zero() {
                return None;
            }
            acc = &acc * &g;
        }
        Some(acc)
    }))
}

/// Right-hand side of the recursion for `sum_{nu in C^{[p]}_{N,n}} q^{|nu|}`, recursing
/// down to `p in {1, 2}` where it is `q^n [N-1+n over n]`.
pub fn recursion_rhs(p: i64, bound: i64, n: usize, order: usize) -> Result<QSeries> {
    validate_reduced_p(p)?;
    check_order(order)?;
    Ok(rec_finite(p, bound, n as i64, order))
}

fn rec_finite(p: i64, bound: i64, n: i64, order: usize) -> QSeries {
    if n == 0 {
        return QSeries::one(order);
    }
    if bound < 1 {
        return QSeries::zero(order);
    }
    if p <= 2 {
        let g = gauss_binomial(bound - 1, n).expect("n > 0");
        return g.truncate(order).shift(n as usize);
    }
    let mut acc = QSeries::zero(order);
    let width = 2 * (bound - 1) - (p - 2) * (n - 2);
    for m in 0..=n / 2 {
        let l = n - 2 * m;
        let e = l * (l - 1) + (p - 2) * l * m + (p - 2) * m * (m - 1) + 2 * m;
        if e as usize >= order {
            continue;
        }
        let g = gauss_binomial(width, m).expect("m >= 0");
        if g.is_zero() {
            continue;
        }
        let inner = rec_finite(p - 3, bound - 2 * (l - 1) - (p - 2) * m, l, order);
        acc = &acc + &(&g * &inner).shift(e as usize);
    }
    acc
}

/// Right-hand side of the `N = inf` recursion: denominators `(q)_m` and base
/// `q^n/(q)_n`.
pub fn principal_recursion_rhs(p: i64, n: usize, order: usize) -> Result<QSeries> {
    validate_reduced_p(p)?;
    check_order(order)?;
    Ok(rec_principal(p, n as i64, order))
}

fn rec_principal(p: i64, n: i64, order: usize) -> QSeries {
    if n == 0 {
        return QSeries::one(order);
    }
    if p <= 2 {
        return pochhammer_inverse(Some(n as usize), order).shift(n as usize);
    }
    let mut acc = QSeries::zero(order);
    for m in 0..=n / 2 {
        let l = n - 2 * m;
        let e = l * (l - 1) + (p - 2) * l * m + (p - 2) * m * (m - 1) + 2 * m;
        if e as usize >= order {
            continue;
        }
        let inner = rec_principal(p - 3, l, order);
        let term = &pochhammer_inverse(Some(m as usize), order) * &inner;
        acc = &acc + &term.shift(e as usize);
    }
    acc
}

fn over_cubic_pochhammer(numerator: &[(usize, i64)], order: usize) -> QSeries {
    let mut coeffs = vec![BigInt::from(0); order];
    for &(d, c) in numerator {
        if d < order {
            coeffs[d] += c;
        }
    }
    &QSeries::truncated(coeffs, order) * &pochhammer_inverse(Some(3), order)
}

/// `(q^{p-2} + q^{p-1} - q^{2p-3}) / ((1-q)(1-q^2)(1-q^3))`.
pub fn ideal3_char(p: i64, order: usize) -> Result<QSeries> {
    validate_p(p)?;
    check_order(order)?;
    let p = p as usize;
    Ok(over_cubic_pochhammer(
        &[(p - 2, 1), (p - 1, 1), (2 * p - 3, -1)],
        order,
    ))
}

/// `q^3 (1-q^{p-2})(1-q^{p-1}) / ((1-q)(1-q^2)(1-q^3))`.
pub fn a3_char(p: i64, order: usize) -> Result<QSeries> {
    validate_p(p)?;
    check_order(order)?;
    let p = p as usize;
    Ok(over_cubic_pochhammer(
        &[(3, 1), (p + 1, -1), (p + 2, -1), (2 * p, 1)],
        order,
    ))
}

/// `[k]_q = 1 + q + ... + q^{k-1}`, zero for `k <= 0`.
fn q_integer(k: i64) -> QSeries {
    if k <= 0 {
        return QSeries::zero_polynomial();
    }
    QSeries::polynomial(vec![1; k as usize])
}

/// The three-particle recursion
/// `chi^{N,[p]}_3 = q^{p+1}[N-p+2]_q[2N-p+1]_q + q^6 chi^{N-4,[p-3]}_3`
/// with base `q^3 [N+2 over 3]` for `p in {1, 2}`.
pub fn chi3_finitized_recursion(p: i64, bound: i64, order: usize) -> Result<QSeries> {
    validate_reduced_p(p)?;
    check_order(order)?;
    Ok(chi3_rec(p, bound, order))
}

fn chi3_rec(p: i64, bound: i64, order: usize) -> QSeries {
    if p <= 2 {
        let g = gauss_binomial(bound - 1, 3).expect("m = 3");
        return g.truncate(order).shift(3);
    }
    let head = (&q_integer(bound - p + 2) * &q_integer(2 * bound - p + 1))
        .truncate(order)
        .shift((p + 1) as usize);
    let tail = chi3_rec(p - 3, bound - 4, order).shift(6);
    &head + &tail
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{count, gen_function, Bound};

    fn q(coeffs: &[i64], order: usize) -> QSeries {
        QSeries::truncated(coeffs.iter().copied(), order)
    }

    #[test]
    fn gordon_data_examples() {
        let g = gordon_data(4).unwrap();
        assert_eq!(
            (g.s, g.two_b.clone(), g.a.clone()),
            (1, vec![vec![2, 2], vec![2, 4]], vec![-1, -2])
        );
        let g = gordon_data(5).unwrap();
        assert_eq!(
            (g.s, g.two_b.clone(), g.a.clone()),
            (1, vec![vec![2, 3], vec![3, 6]], vec![-1, -3])
        );
        let g = gordon_data(7).unwrap();
        assert_eq!(g.s, 2);
        assert_eq!(
            g.two_b,
            vec![vec![4, 6, 5], vec![6, 12, 10], vec![5, 10, 10]]
        );
        assert_eq!(g.a, vec![-2, -4, -5]);
        assert!(gordon_data(6).is_err());
        assert!(gordon_data(2).is_err());
    }

    #[test]
    fn last_entries_match_the_displayed_pattern() {
        for p in [4, 5, 7, 8, 10, 11, 13] {
            let g = gordon_data(p).unwrap();
            let s = g.s;
            assert_eq!(g.two_b[0][s], p - 2);
            assert_eq!(g.two_b[s][s], 2 * (p - 2));
            assert_eq!(g.a[s], -p + 2);
            if s >= 1 {
                assert_eq!(g.a[1], -p + g.s as i64 + 1);
            }
        }
    }

    #[test]
    fn exponents_are_integral() {
        for p in [4, 5, 7, 8, 10, 11] {
            let g = gordon_data(p).unwrap();
            for m in g.summation_box(40, 0) {
                g.exponent(&m);
            }
        }
    }

    #[test]
    fn principal_examples() {
        let f = fermionic_principal(4, 3).unwrap();
        assert_eq!(f.z_coeff(0), QSeries::one(3));
        let r = fermionic_principal(4, 8).unwrap().regrade_z_to_qz();
        assert_eq!(r.coeff(2, 1), BigInt::from(1));
        assert_eq!(r.z_coeff(1), q(&[0, 1, 1, 1, 1, 1, 1, 1], 8));
        assert!(r.is_nonnegative());
    }

    #[test]
    fn extremal_zero_is_regraded_principal() {
        for p in [4, 5, 7] {
            let a = fermionic_extremal(p, 0, 16).unwrap();
            let b = fermionic_principal(p, 16).unwrap().regrade_z_to_qz();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn extremal_increases_to_voa() {
        let order = 14;
        for p in [4, 5, 7] {
            let voa = fermionic_voa(p, order).unwrap();
            assert_eq!(voa.coeff(0, 0), BigInt::from(1));
            let mut prev = fermionic_extremal(p, 0, order).unwrap();
            for l in 1..=order as u64 {
                let next = fermionic_extremal(p, l, order).unwrap();
                assert!(prev.leq(&next).unwrap());
                prev = next;
            }
            assert_eq!(prev, voa);
        }
    }

    #[test]
    fn finitized_examples() {
        let f = fermionic_finitized(4, 3, 10).unwrap();
        assert_eq!(f.z_coeff(2), q(&[0, 0, 1, 1, 2, 1, 1], 10));
        assert_eq!(f.z_coeff(0), QSeries::one(10));
        for p in [4, 5, 7] {
            let f = fermionic_finitized(p, 1, 12).unwrap();
            for n in 0..4 {
                for d in 0..12 {
                    let c = count(p, Bound::Finite(1), d as u64, n).unwrap();
                    assert_eq!(f.coeff(d, n as i64), BigInt::from(c), "p={p} d={d} n={n}");
                }
            }
        }
    }

    #[test]
    fn recursion_examples() {
        assert_eq!(
            recursion_rhs(4, 3, 2, 10).unwrap(),
            q(&[0, 0, 1, 1, 2, 1, 1], 10)
        );
        for p in [4, 5, 7] {
            assert_eq!(recursion_rhs(p, 3, 0, 5).unwrap(), QSeries::one(5));
        }
        assert_eq!(
            recursion_rhs(5, 4, 3, 12).unwrap(),
            gen_function(5, Bound::Finite(4), 3, 12).unwrap()
        );
        assert_eq!(
            recursion_rhs(5, 1, 2, 6).unwrap(),
            gen_function(5, Bound::Finite(1), 2, 6).unwrap()
        );
    }

    #[test]
    fn principal_recursion_examples() {
        assert_eq!(principal_recursion_rhs(4, 0, 6).unwrap(), QSeries::one(6));
        assert_eq!(
            principal_recursion_rhs(4, 1, 6).unwrap(),
            q(&[0, 1, 1, 1, 1, 1], 6)
        );
        let r = fermionic_principal(5, 16).unwrap().regrade_z_to_qz();
        for n in 0..=5 {
            assert_eq!(
                principal_recursion_rhs(5, n, 16).unwrap(),
                r.z_coeff(n as i64)
            );
        }
    }

    #[test]
    fn ideal_characters() {
        let i = ideal3_char(4, 7).unwrap();
        assert_eq!(i, q(&[0, 0, 1, 2, 3, 4, 6], 7));
        for p in [4, 5, 7] {
            assert_eq!(
                ideal3_char(p, 20).unwrap().coeff((p - 3) as usize),
                BigInt::from(0)
            );
            let a = a3_char(p, 20).unwrap();
            for d in 0..3 {
                assert_eq!(a.coeff(d), BigInt::from(0));
            }
            assert_eq!(a.coeff(3), BigInt::from(1));
            let sum = &a + &ideal3_char(p, 20).unwrap().shift(3);
            assert_eq!(sum, pochhammer_inverse(Some(3), 20).shift(3));
        }
    }

    #[test]
    fn chi3_recursion_examples() {
        assert_eq!(
            chi3_finitized_recursion(4, 3, 10).unwrap(),
            q(&[0, 0, 0, 0, 0, 1, 1, 1], 10)
        );
        for bound in 1..6 {
            let expected = gauss_binomial(bound - 1, 3).unwrap().truncate(20).shift(3);
            assert_eq!(chi3_finitized_recursion(1, bound, 20).unwrap(), expected);
        }
        for p in [4, 5, 7] {
            for bound in 1..=8 {
                assert_eq!(
                    chi3_finitized_recursion(p, bound, 30).unwrap(),
                    gen_function(p, Bound::Finite(bound), 3, 30).unwrap(),
                    "p={p} N={bound}"
                );
            }
            // Large N: W_3 in degree d is dual to I_3 in degree d - 3.
            let big = chi3_finitized_recursion(p, 40, 30).unwrap();
            assert_eq!(big, ideal3_char(p, 30).unwrap().shift(3));
        }
    }
}

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;
pub type Exps = [u32; 3];

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

fn insert_term<K: Ord>(map: &mut BTreeMap<K, Rat>, key: K, c: Rat) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// A polynomial in `x_1, x_2, x_3` in expanded monomial form.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Poly3 {
    terms: BTreeMap<Exps, Rat>,
}

impl Poly3 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rat) -> Self {
        Self::term(c, [0, 0, 0])
    }

    pub fn term(c: Rat, exps: Exps) -> Self {
        let mut p = Self::zero();
        p.add_term(exps, c);
        p
    }

    /// `x_i` with `i` in `0..3`.
    pub fn var(i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        Self::term(Rat::one(), e)
    }

    pub fn add_term(&mut self, exps: Exps, c: Rat) {
        insert_term(&mut self.terms, exps, c);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: Exps) -> Rat {
        self.terms.get(&exps).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly3 {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Substitutes `x_i -> x_{perm[i]}`.
    pub fn permute(&self, perm: [usize; 3]) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut moved = [0; 3];
            for i in 0..3 {
                moved[perm[i]] = e[i];
            }
            out.add_term(moved, c.clone());
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::constant(Rat::one()), |acc, _| &acc * self)
    }

    /// `sum_j x_j^{m+1} d/dx_j`.
    pub fn l_op(&self, m: i32) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            for j in 0..3 {
                if e[j] == 0 {
                    continue;
                }
                let shifted = i64::from(e[j]) + i64::from(m);
                debug_assert!(shifted >= 0);
                let mut f = *e;
                f[j] = shifted as u32;
                out.add_term(f, c * rat(i64::from(e[j])));
            }
        }
        out
    }

    /// Exact quotient by `x_i - x_j`.
    pub fn div_linear(&self, i: usize, j: usize) -> Result<Self> {
        let mut rem = self.clone();
        let mut quot = Self::zero();
        // Peel the term of highest `x_i` degree until nothing is left.
        while let Some((e, c)) = rem
            .terms
            .iter()
            .max_by_key(|(e, _)| (e[i], **e))
            .map(|(e, c)| (*e, c.clone()))
        {
            if e[i] == 0 {
                return Err(Error::InexactDivision(format!(
                    "remainder on division by x{} - x{}",
                    i + 1,
                    j + 1
                )));
            }
            let mut q = e;
            q[i] -= 1;
            quot.add_term(q, c.clone());
            rem.add_term(e, -c.clone());
            let mut shifted = q;
            shifted[j] += 1;
            rem.add_term(shifted, c);
        }
        Ok(quot)
    }

    /// Substitutes `(x_1, x_2, x_3) -> (x, y, y)`.
    pub fn specialize_pi(&self) -> Poly2 {
        let mut out = Poly2::zero();
        for (e, c) in &self.terms {
            out.add_term((e[0], e[1] + e[2]), c.clone());
        }
        out
    }

    /// Substitutes `x_3 = 0`.
    pub fn drop_x3(&self) -> Poly2 {
        let mut out = Poly2::zero();
        for (e, c) in &self.terms {
            if e[2] == 0 {
                out.add_term((e[0], e[1]), c.clone());
            }
        }
        out
    }
}

impl fmt::Debug for Poly3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| format!("{c}*x1^{}x2^{}x3^{}", e[0], e[1], e[2]))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl Add for &Poly3 {
    type Output = Poly3;
    fn add(self, rhs: &Poly3) -> Poly3 {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &Poly3 {
    type Output = Poly3;
    fn sub(self, rhs: &Poly3) -> Poly3 {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Mul for &Poly3 {
    type Output = Poly3;
    fn mul(self, rhs: &Poly3) -> Poly3 {
        let mut out = Poly3::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term([a[0] + b[0], a[1] + b[1], a[2] + b[2]], x * y);
            }
        }
        out
    }
}

/// A polynomial in `(x, y)`.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), Rat>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(c: Rat, x: u32, y: u32) -> Self {
        let mut p = Self::zero();
        p.add_term((x, y), c);
        p
    }

    pub fn add_term(&mut self, exps: (u32, u32), c: Rat) {
        insert_term(&mut self.terms, exps, c);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, x: u32, y: u32) -> Rat {
        self.terms.get(&(x, y)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = Self::zero();
        for (e, v) in &self.terms {
            out.add_term(*e, v * c);
        }
        out
    }

    pub fn deg_x(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.0).max()
    }

    pub fn deg_y(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.1).max()
    }

    /// `(x - y)^k` expanded.
    pub fn x_minus_y_pow(k: u32) -> Self {
        let mut out = Self::zero();
        let mut binom = BigInt::one();
        for j in 0..=k {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            out.add_term((k - j, j), Rat::from_integer(&binom * sign));
            binom = binom * (k - j) / (j + 1);
        }
        out
    }

    /// Exact quotient by `x - y`.
    pub fn div_x_minus_y(&self) -> Result<Self> {
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((e, c)) = rem
            .terms
            .iter()
            .max_by_key(|(e, _)| (e.0, e.1))
            .map(|(e, c)| (*e, c.clone()))
        {
            if e.0 == 0 {
                return Err(Error::InexactDivision(
                    "remainder on division by x - y".into(),
                ));
            }
            let q = (e.0 - 1, e.1);
            quot.add_term(q, c.clone());
            rem.add_term(e, -c.clone());
            rem.add_term((q.0, q.1 + 1), c);
        }
        Ok(quot)
    }

    /// Evaluates at `y = 1`, giving coefficients in `x` by degree.
    pub fn dehomogenize_y(&self) -> Vec<Rat> {
        let n = self.deg_x().map_or(0, |d| d as usize + 1);
        let mut out = vec![Rat::zero(); n];
        for (e, c) in &self.terms {
            out[e.0 as usize] += c;
        }
        out
    }
}

impl fmt::Debug for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| format!("{c}*x^{}y^{}", e.0, e.1))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl Mul for &Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term((a.0 + b.0, a.1 + b.1), x * y);
            }
        }
        out
    }
}

impl Sub for &Poly2 {
    type Output = Poly2;
    fn sub(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

/// Sorts exponents into a partition key `l1 >= l2 >= l3`.
pub fn sorted(mut e: Exps) -> Exps {
    e.sort_unstable_by(|a, b| b.cmp(a));
    e
}

/// Distinct permutations of `lambda`.
pub fn orbit(lambda: Exps) -> Vec<Exps> {
    let [a, b, c] = lambda;
    let mut all = vec![
        [a, b, c],
        [a, c, b],
        [b, a, c],
        [b, c, a],
        [c, a, b],
        [c, b, a],
    ];
    all.sort_unstable();
    all.dedup();
    all
}

/// Symmetric polynomial in three variables, `sum_lambda c_lambda m_lambda`.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct SymPoly3 {
    coeffs: BTreeMap<Exps, Rat>,
}

impl SymPoly3 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial([0, 0, 0])
    }

    /// `m_lambda`; the key is sorted first.
    pub fn monomial(lambda: Exps) -> Self {
        let mut p = Self::zero();
        p.add_term(sorted(lambda), Rat::one());
        p
    }

    pub fn constant(c: Rat) -> Self {
        Self::one().scale(&c)
    }

    fn add_term(&mut self, lambda: Exps, c: Rat) {
        debug_assert!(lambda[0] >= lambda[1] && lambda[1] >= lambda[2]);
        insert_term(&mut self.coeffs, lambda, c);
    }

    pub fn from_terms<I: IntoIterator<Item = (Exps, Rat)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (lambda, c) in terms {
            p.add_term(sorted(lambda), c);
        }
        p
    }

    pub fn coeffs(&self) -> &BTreeMap<Exps, Rat> {
        &self.coeffs
    }

    pub fn coeff(&self, lambda: Exps) -> Rat {
        self.coeffs
            .get(&sorted(lambda))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The common degree of every term, or `None` for zero or inhomogeneous input.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.coeffs.keys().map(|k| k.iter().sum::<u32>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SymPoly3 {
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn to_poly3(&self) -> Poly3 {
        let mut out = Poly3::zero();
        for (lambda, c) in &self.coeffs {
            for e in orbit(*lambda) {
                out.add_term(e, c.clone());
            }
        }
        out
    }

    /// Exact conversion; fails unless `p` is invariant under all permutations.
    pub fn from_poly3(p: &Poly3) -> Result<Self> {
        let mut out = Self::zero();
        for (e, c) in p.terms() {
            if *e == sorted(*e) {
                out.add_term(*e, c.clone());
            }
        }
        if out.to_poly3() != *p {
            let bad = p
                .terms()
                .find(|(e, c)| p.coeff(sorted(**e)) != **c)
                .map(|(e, _)| format!("{e:?}"))
                .unwrap_or_else(|| "a missing permutation".into());
            return Err(Error::NotSymmetric(format!(
                "orbit of x^{bad} is not constant"
            )));
        }
        Ok(out)
    }

    /// `m_mu` of the largest `mu` under the order `(|mu|, mu_1, mu_2)`.
    pub fn leading_monomial(&self) -> Result<Exps> {
        self.coeffs
            .keys()
            .max_by_key(|k| (k.iter().sum::<u32>(), k[0], k[1]))
            .copied()
            .ok_or_else(|| Error::Domain("leading monomial of the zero polynomial".into()))
    }

    pub fn l_op(&self, m: i32) -> Self {
        Self::from_poly3(&self.to_poly3().l_op(m)).expect("l_m preserves symmetry")
    }

    pub fn specialize_pi(&self) -> Poly2 {
        self.to_poly3().specialize_pi()
    }

    /// Coordinates on a list of partitions.
    pub fn coordinates(&self, basis: &[Exps]) -> Vec<Rat> {
        basis.iter().map(|&k| self.coeff(k)).collect()
    }

    /// `[(lambda_1, lambda_2, lambda_3), "c"]` pairs, decimal rationals as strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs
                .iter()
                .map(|(k, c)| serde_json::json!([k, c.to_string()]))
                .collect(),
        )
    }
}

impl fmt::Debug for SymPoly3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(k, c)| {
                if c.is_negative() {
                    format!("({c})m{k:?}")
                } else {
                    format!("{c}m{k:?}")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl Add for &SymPoly3 {
    type Output = SymPoly3;
    fn add(self, rhs: &SymPoly3) -> SymPoly3 {
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl Sub for &SymPoly3 {
    type Output = SymPoly3;
    fn sub(self, rhs: &SymPoly3) -> SymPoly3 {
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.add_term(*k, -c.clone());
        }
        out
    }
}

impl Neg for &SymPoly3 {
    type Output = SymPoly3;
    fn neg(self) -> SymPoly3 {
        self.scale(&-Rat::one())
    }
}

impl Mul for &SymPoly3 {
    type Output = SymPoly3;
    /// Only products landing on sorted exponents are accumulated; by symmetry these
    /// are exactly the `m_lambda` coefficients.
    fn mul(self, rhs: &SymPoly3) -> SymPoly3 {
        let a = self.to_poly3();
        let b = rhs.to_poly3();
        let mut out = SymPoly3::zero();
        for (ea, x) in a.terms() {
            for (eb, y) in b.terms() {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                if e[0] >= e[1] && e[1] >= e[2] {
                    out.add_term(e, x * y);
                }
            }
        }
        out
    }
}

/// `P_m = x_1^m + x_2^m + x_3^m`.
pub fn power_sum(m: u32) -> SymPoly3 {
    if m == 0 {
        return SymPoly3::constant(rat(3));
    }
    SymPoly3::monomial([m, 0, 0])
}

/// Elementary symmetric polynomial `e_k`, `k <= 3`.
pub fn elementary(k: usize) -> SymPoly3 {
    let mut e = [0; 3];
    for x in e.iter_mut().take(k) {
        *x = 1;
    }
    SymPoly3::monomial(e)
}

/// `D_3 = prod_{i<j} (x_i - x_j)^2`.
pub fn discriminant() -> SymPoly3 {
    let v = |i, j| &Poly3::var(i) - &Poly3::var(j);
    let vandermonde = &(&v(0, 1) * &v(0, 2)) * &v(1, 2);
    SymPoly3::from_poly3(&(&vandermonde * &vandermonde)).expect("D_3 is symmetric")
}

/// Partitions of `d` into at most three parts, with `lambda_1 <= cap` if given,
/// sorted by the leading-monomial order (descending).
pub fn partitions3(d: u32, cap: Option<u32>) -> Vec<Exps> {
    let mut out = Vec::new();
    let top = cap.map_or(d, |c| c.min(d));
    for a in (0..=top).rev() {
        for b in (0..=a.min(d - a)).rev() {
            let c = d - a - b;
            if c <= b {
                out.push([a, b, c]);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_roundtrip_and_product() {
        let e1 = elementary(1);
        let sq = &e1 * &e1;
        assert_eq!(
            sq,
            SymPoly3::from_terms([([2, 0, 0], rat(1)), ([1, 1, 0], rat(2))])
        );
        assert_eq!(SymPoly3::from_poly3(&sq.to_poly3()).unwrap(), sq);
        assert!(SymPoly3::from_poly3(&Poly3::var(0)).is_err());
    }

    #[test]
    fn leading_monomial_order() {
        let f = &SymPoly3::monomial([3, 1, 0]) + &SymPoly3::monomial([2, 2, 0]);
        assert_eq!(f.leading_monomial().unwrap(), [3, 1, 0]);
        let g = &SymPoly3::monomial([3, 1, 0]) + &SymPoly3::monomial([1, 1, 1]);
        assert_eq!(g.leading_monomial().unwrap(), [3, 1, 0]);
        assert!(SymPoly3::zero().leading_monomial().is_err());
    }

    #[test]
    fn euler_operator() {
        let f = &SymPoly3::monomial([3, 1, 0]) + &SymPoly3::monomial([2, 1, 1]).scale(&rat(5));
        assert_eq!(f.l_op(0), f.scale(&rat(4)));
        assert_eq!(power_sum(2).l_op(-1), power_sum(1).scale(&rat(2)));
    }

    #[test]
    fn linear_division() {
        let v = &Poly3::var(0) - &Poly3::var(2);
        let f = &v * &(&Poly3::var(1) * &Poly3::var(1));
        assert_eq!(f.div_linear(0, 2).unwrap(), &Poly3::var(1) * &Poly3::var(1));
        assert!(Poly3::var(1).div_linear(0, 2).is_err());
        let p = Poly2::x_minus_y_pow(3);
        assert_eq!(p.div_x_minus_y().unwrap(), Poly2::x_minus_y_pow(2));
        assert!(Poly2::term(rat(1), 1, 0).div_x_minus_y().is_err());
    }

    #[test]
    fn discriminant_vanishes_under_pi() {
        assert!(discriminant().specialize_pi().is_zero());
        assert_eq!(discriminant().homogeneous_degree(), Some(6));
    }

    #[test]
    fn partitions_in_three_parts() {
        assert_eq!(partitions3(3, None), vec![[3, 0, 0], [2, 1, 0], [1, 1, 1]]);
        assert_eq!(partitions3(4, Some(2)), vec![[2, 2, 0], [2, 1, 1]]);
        assert_eq!(partitions3(0, None), vec![[0, 0, 0]]);
    }
}

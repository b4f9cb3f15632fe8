//! Truncated power series in `q` and bivariate `(q, z)` series with
//! arbitrary-precision integer coefficients.
//!
//! A series carries a truncation order `T`: coefficients of `q^d` with `d < T` are
//! exact, everything above is unknown. An order of `None` marks an exact polynomial
//! (for instance a Gaussian binomial), which behaves as `T = infinity` in arithmetic.
//! Binary operations keep the smaller of the two orders.

use std::cmp::{max, min};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{invalid, Error, Result};

fn min_order(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(x), Some(y)) => Some(min(x, y)),
        (Some(x), None) | (None, Some(x)) => Some(x),
        (None, None) => None,
    }
}

/// Truncated power series in `q` with integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QSeries {
    order: Option<usize>,
    /// Dense coefficients, trailing zeros trimmed, `len <= order`.
    coeffs: Vec<BigInt>,
}

impl QSeries {
    /// The zero series exact below `order`.
    pub fn zero(order: usize) -> Self {
        QSeries {
            order: Some(order),
            coeffs: Vec::new(),
        }
    }

    pub fn zero_polynomial() -> Self {
        QSeries {
            order: None,
            coeffs: Vec::new(),
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(BigInt::one(), 0, Some(order))
    }

    /// `c * q^d`, truncated at `order` (or exact when `order` is `None`).
    pub fn monomial(c: BigInt, d: usize, order: Option<usize>) -> Self {
        let mut coeffs = Vec::new();
        if order.is_none_or(|t| d < t) {
            coeffs.resize(d + 1, BigInt::zero());
            coeffs[d] = c;
        }
        Self::from_parts(coeffs, order)
    }

    /// Exact polynomial with the given coefficients (index = exponent).
    pub fn polynomial<I, C>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = C>,
        C: Into<BigInt>,
    {
        Self::from_parts(coeffs.into_iter().map(Into::into).collect(), None)
    }

    /// Series truncated at `order`; coefficients at exponents `>= order` are dropped.
    pub fn truncated<I, C>(coeffs: I, order: usize) -> Self
    where
        I: IntoIterator<Item = C>,
        C: Into<BigInt>,
    {
        Self::from_parts(coeffs.into_iter().map(Into::into).collect(), Some(order))
    }

    fn from_parts(mut coeffs: Vec<BigInt>, order: Option<usize>) -> Self {
        if let Some(t) = order {
            coeffs.truncate(t);
        }
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QSeries { order, coeffs }
    }

    /// Truncation order; `None` for an exact polynomial.
    pub fn order(&self) -> Option<usize> {
        self.order
    }

    pub fn is_polynomial(&self) -> bool {
        self.order.is_none()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `q^d`. Panics if `d` lies beyond the truncation order.
    pub fn coeff(&self, d: usize) -> BigInt {
        if let Some(t) = self.order {
            assert!(
                d < t,
                "coefficient q^{d} requested beyond truncation order {t}"
            );
        }
        self.coeffs.get(d).cloned().unwrap_or_default()
    }

    /// Stored coefficients starting at `q^0`; trailing zeros are omitted.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Nonzero coefficients as `(exponent, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    /// Degree of the highest stored nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowers the truncation order to `min(self.order, order)`.
    pub fn truncate(&self, order: usize) -> Self {
        Self::from_parts(self.coeffs.clone(), min_order(self.order, Some(order)))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_parts(self.coeffs.iter().map(|x| x * c).collect(), self.order)
    }

    /// Multiplies by `q^k`. The truncation order is unchanged.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::from_parts(coeffs, self.order)
    }

    /// Coefficientwise `self <= other`.
    pub fn leq(&self, other: &QSeries) -> Result<bool> {
        if self.order != other.order {
            return Err(Error::Domain(format!(
                "cannot compare series truncated at {:?} and {:?}",
                self.order, other.order
            )));
        }
        let n = max(self.coeffs.len(), other.coeffs.len());
        Ok((0..n).all(|d| {
            let a = self.coeffs.get(d).cloned().unwrap_or_default();
            let b = other.coeffs.get(d).cloned().unwrap_or_default();
            a <= b
        }))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    fn add_impl(&self, other: &QSeries, sign: bool) -> QSeries {
        let order = min_order(self.order, other.order);
        let n = max(self.coeffs.len(), other.coeffs.len());
        let n = order.map_or(n, |t| min(t, n));
        let mut coeffs = Vec::with_capacity(n);
        for d in 0..n {
            let a = self.coeffs.get(d).cloned().unwrap_or_default();
            let b = other.coeffs.get(d).cloned().unwrap_or_default();
            coeffs.push(if sign { a + b } else { a - b });
        }
        Self::from_parts(coeffs, order)
    }

    fn mul_impl(&self, other: &QSeries) -> QSeries {
        let order = min_order(self.order, other.order);
        if self.is_zero() || other.is_zero() {
            return QSeries {
                order,
                coeffs: Vec::new(),
            };
        }
        let full = self.coeffs.len() + other.coeffs.len() - 1;
        let n = order.map_or(full, |t| min(t, full));
        let mut coeffs = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= n || a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                coeffs[i + j] += a * b;
            }
        }
        Self::from_parts(coeffs, order)
    }

    /// Exact quotient of a polynomial by `1 - q^j`; errors if the division leaves a remainder.
    pub(crate) fn div_one_minus_q_pow(&self, j: usize) -> Result<QSeries> {
        assert!(j >= 1);
        if self.is_zero() {
            return Ok(self.clone());
        }
        match self.order {
            Some(t) => {
                // Power-series division: 1/(1-q^j) = sum q^{jk}.
                let mut coeffs = self.coeffs.clone();
                coeffs.resize(t, BigInt::zero());
                for k in j..t {
                    let prev = coeffs[k - j].clone();
                    coeffs[k] += prev;
                }
                Ok(Self::from_parts(coeffs, self.order))
            }
            None => {
                let deg = self.coeffs.len() - 1;
                if deg < j {
                    return Err(Error::InexactDivision(format!(
                        "degree {deg} polynomial by 1 - q^{j}"
                    )));
                }
                let mut quotient = vec![BigInt::zero(); deg - j + 1];
                for k in 0..quotient.len() {
                    let mut c = self.coeffs[k].clone();
                    if k >= j {
                        c += &quotient[k - j];
                    }
                    quotient[k] = c;
                }
                let check = &QSeries::polynomial(quotient.clone())
                    * &QSeries::polynomial(one_minus_q_pow(j));
                if &check != self {
                    return Err(Error::InexactDivision(format!(
                        "polynomial not divisible by 1 - q^{j}"
                    )));
                }
                Ok(QSeries::polynomial(quotient))
            }
        }
    }

    pub fn to_json(&self) -> Value {
        let trunc = self.order.unwrap_or(self.coeffs.len());
        let coeffs: Vec<Value> = self
            .terms()
            .map(|(d, c)| json!([d, c.to_string()]))
            .collect();
        json!({ "trunc": trunc, "coeffs": coeffs })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let (trunc, entries) = parse_series_header(value)?;
        let mut coeffs = vec![BigInt::zero(); trunc];
        for entry in entries {
            let items = entry
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| invalid("coeffs", "expected [d, \"c\"] entries"))?;
            let d = parse_index(&items[0])?;
            if d >= trunc {
                return Err(invalid("coeffs", format!("exponent {d} >= trunc {trunc}")));
            }
            coeffs[d] += parse_bigint(&items[1])?;
        }
        Ok(Self::truncated(coeffs, trunc))
    }
}

fn one_minus_q_pow(j: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); j + 1];
    v[0] = BigInt::one();
    v[j] -= BigInt::one();
    v
}

fn parse_series_header(value: &Value) -> Result<(usize, &Vec<Value>)> {
    let trunc = value
        .get("trunc")
        .and_then(Value::as_u64)
        .ok_or_else(|| invalid("trunc", "missing or not a nonnegative integer"))?;
    let entries = value
        .get("coeffs")
        .and_then(Value::as_array)
        .ok_or_else(|| invalid("coeffs", "missing or not an array"))?;
    Ok((trunc as usize, entries))
}

fn parse_index(v: &Value) -> Result<usize> {
    v.as_u64()
        .map(|d| d as usize)
        .ok_or_else(|| invalid("coeffs", "exponent must be a nonnegative integer"))
}

fn parse_bigint(v: &Value) -> Result<BigInt> {
    let s = v
        .as_str()
        .ok_or_else(|| invalid("coeffs", "coefficient must be a decimal string"))?;
    s.parse()
        .map_err(|_| invalid("coeffs", format!("bad integer `{s}`")))
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, c) in self.terms() {
            if !first {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            first = false;
            let a = c.abs();
            match (d, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => f.write_str("q")?,
                (1, false) => write!(f, "{a}q")?,
                (_, true) => write!(f, "q^{d}")?,
                (_, false) => write!(f, "{a}q^{d}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        match self.order {
            Some(t) => write!(f, " + O(q^{t})"),
            None => Ok(()),
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&QSeries> for &QSeries {
            type Output = QSeries;
            fn $method(self, rhs: &QSeries) -> QSeries {
                $body(self, rhs)
            }
        }
        impl $tr<QSeries> for QSeries {
            type Output = QSeries;
            fn $method(self, rhs: QSeries) -> QSeries {
                $body(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &QSeries, b: &QSeries| a.add_impl(b, true));
forward_binop!(Sub, sub, |a: &QSeries, b: &QSeries| a.add_impl(b, false));
forward_binop!(Mul, mul, |a: &QSeries, b: &QSeries| a.mul_impl(b));

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries::from_parts(self.coeffs.iter().map(|c| -c).collect(), self.order)
    }
}

/// The Gaussian binomial `[M+m over m]_q`: generating function of partitions in an
/// `m x M` box.
///
/// A negative box width `M` gives the zero polynomial; a negative `m` is an error.
pub fn gauss_binomial(big_m: i64, m: i64) -> Result<QSeries> {
    if m < 0 {
        return Err(Error::Domain(format!("gauss_binomial: negative m = {m}")));
    }
    if big_m < 0 {
        return Ok(QSeries::zero_polynomial());
    }
    let big_m = big_m as usize;
    let mut acc = QSeries::polynomial([1]);
    for j in 1..=m as usize {
        acc = &acc * &QSeries::polynomial(one_minus_q_pow(big_m + j));
        acc = acc.div_one_minus_q_pow(j)?;
    }
    Ok(acc)
}

/// Truncated expansion of `1/(q)_m`, or of `1/(q)_infinity` when `m` is `None`.
pub fn pochhammer_inverse(m: Option<usize>, order: usize) -> QSeries {
    let last = m.map_or(order.saturating_sub(1), |m| min(m, order.saturating_sub(1)));
    let mut coeffs = vec![BigInt::zero(); order];
    if order > 0 {
        coeffs[0] = BigInt::one();
    }
    for j in 1..=last {
        for k in j..order {
            let prev = coeffs[k - j].clone();
            coeffs[k] += prev;
        }
    }
    QSeries::truncated(coeffs, order)
}

/// `(q)_m = (1-q)(1-q^2)...(1-q^m)` as an exact polynomial.
pub fn pochhammer(m: usize) -> QSeries {
    (1..=m).fold(QSeries::polynomial([1]), |acc, j| {
        &acc * &QSeries::polynomial(one_minus_q_pow(j))
    })
}

/// Bivariate series `sum c_{d,n} q^d z^n`, truncated in `q` and exact in `z`.
///
/// The `z` exponent may be negative.
#[derive(Clone, PartialEq, Eq)]
pub struct QZSeries {
    order: Option<usize>,
    /// `z`-exponent to `q`-series; every stored series is nonzero and carries `order`.
    terms: BTreeMap<i64, QSeries>,
}

impl QZSeries {
    pub fn zero(order: usize) -> Self {
        QZSeries {
            order: Some(order),
            terms: BTreeMap::new(),
        }
    }

    pub fn zero_polynomial() -> Self {
        QZSeries {
            order: None,
            terms: BTreeMap::new(),
        }
    }

    /// `a(q) z^n`.
    pub fn from_z_power(a: &QSeries, n: i64) -> Self {
        let mut out = QZSeries {
            order: a.order(),
            terms: BTreeMap::new(),
        };
        out.insert(n, a.clone());
        out
    }

    fn insert(&mut self, n: i64, a: QSeries) {
        debug_assert_eq!(a.order(), self.order);
        if a.is_zero() {
            self.terms.remove(&n);
        } else {
            self.terms.insert(n, a);
        }
    }

    pub fn order(&self) -> Option<usize> {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient of `z^n`, a series in `q`.
    pub fn z_coeff(&self, n: i64) -> QSeries {
        self.terms.get(&n).cloned().unwrap_or(QSeries {
            order: self.order,
            coeffs: Vec::new(),
        })
    }

    /// Coefficient of `q^d z^n`.
    pub fn coeff(&self, d: usize, n: i64) -> BigInt {
        self.z_coeff(n).coeff(d)
    }

    /// `z` exponents with a nonzero coefficient, ascending.
    pub fn z_exponents(&self) -> impl Iterator<Item = i64> + '_ {
        self.terms.keys().copied()
    }

    /// Nonzero coefficients as `(d, n, c)`, sorted by `(d, n)`.
    pub fn entries(&self) -> Vec<(usize, i64, BigInt)> {
        let mut out: Vec<(usize, i64, BigInt)> = self
            .terms
            .iter()
            .flat_map(|(&n, s)| s.terms().map(move |(d, c)| (d, n, c.clone())))
            .collect();
        out.sort_by_key(|a| (a.0, a.1));
        out
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = min_order(self.order, Some(order));
        let mut out = QZSeries {
            order,
            terms: BTreeMap::new(),
        };
        for (&n, s) in &self.terms {
            let mut t = s.clone();
            t.order = order;
            out.insert(n, QSeries::from_parts(t.coeffs, order));
        }
        out
    }

    /// Adds `a(q) z^n` in place. The truncation order drops to `min` of the two.
    pub fn add_z_term(&mut self, n: i64, a: &QSeries) {
        let order = min_order(self.order, a.order());
        if order != self.order {
            *self = self.truncate(order.expect("a finite order"));
        }
        let current = self.z_coeff(n);
        let sum = &current + a;
        self.insert(n, QSeries::from_parts(sum.coeffs, order));
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = QZSeries {
            order: self.order,
            terms: BTreeMap::new(),
        };
        for (&n, s) in &self.terms {
            out.insert(n, s.scale(c));
        }
        out
    }

    /// Multiplies by `z^k`.
    pub fn shift_z(&self, k: i64) -> Self {
        QZSeries {
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(&n, s)| (n + k, s.clone()))
                .collect(),
        }
    }

    /// Multiplies every `z`-coefficient by a series in `q` alone.
    pub fn mul_q(&self, a: &QSeries) -> Self {
        let order = min_order(self.order, a.order());
        let mut out = QZSeries {
            order,
            terms: BTreeMap::new(),
        };
        for (&n, s) in &self.terms {
            out.insert(n, s * a);
        }
        out
    }

    /// Moves the coefficient at `(d, n)` to `(d + n, n)`: the substitution `z -> q z`.
    ///
    /// Coefficients landing at or above the truncation order are dropped. Panics if a
    /// coefficient would land at a negative `q` exponent.
    pub fn regrade_z_to_qz(&self) -> Self {
        let mut out = QZSeries {
            order: self.order,
            terms: BTreeMap::new(),
        };
        for (&n, s) in &self.terms {
            let moved = if n >= 0 {
                s.shift(n as usize)
            } else {
                let k = n.unsigned_abs() as usize;
                assert!(
                    s.coeffs.iter().take(k).all(Zero::is_zero),
                    "regrading z^{n} would produce a negative q exponent"
                );
                QSeries::from_parts(s.coeffs.iter().skip(k).cloned().collect(), s.order)
            };
            out.insert(n, moved);
        }
        out
    }

    /// Coefficientwise `self <= other` (absent coefficients count as zero).
    pub fn leq(&self, other: &QZSeries) -> Result<bool> {
        if self.order != other.order {
            return Err(Error::Domain(format!(
                "cannot compare series truncated at {:?} and {:?}",
                self.order, other.order
            )));
        }
        let keys: std::collections::BTreeSet<i64> = self
            .terms
            .keys()
            .chain(other.terms.keys())
            .copied()
            .collect();
        for n in keys {
            if !self.z_coeff(n).leq(&other.z_coeff(n))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(QSeries::is_nonnegative)
    }

    pub fn to_json(&self) -> Value {
        let trunc = self.order.unwrap_or_else(|| {
            self.terms
                .values()
                .map(|s| s.coeffs.len())
                .max()
                .unwrap_or(0)
        });
        let coeffs: Vec<Value> = self
            .entries()
            .into_iter()
            .map(|(d, n, c)| json!([d, n, c.to_string()]))
            .collect();
        json!({ "trunc": trunc, "coeffs": coeffs })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let (trunc, entries) = parse_series_header(value)?;
        let mut out = QZSeries::zero(trunc);
        for entry in entries {
            let items = entry
                .as_array()
                .filter(|a| a.len() == 3)
                .ok_or_else(|| invalid("coeffs", "expected [d, n, \"c\"] entries"))?;
            let d = parse_index(&items[0])?;
            let n = items[1]
                .as_i64()
                .ok_or_else(|| invalid("coeffs", "z exponent must be an integer"))?;
            if d >= trunc {
                return Err(invalid("coeffs", format!("exponent {d} >= trunc {trunc}")));
            }
            let c = parse_bigint(&items[2])?;
            out.add_z_term(n, &QSeries::monomial(c, d, Some(trunc)));
        }
        Ok(out)
    }
}

impl fmt::Debug for QZSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (n, s) in &self.terms {
            m.entry(&format_args!("z^{n}"), &format_args!("{s}"));
        }
        m.finish()
    }
}

impl Add<&QZSeries> for &QZSeries {
    type Output = QZSeries;
    fn add(self, rhs: &QZSeries) -> QZSeries {
        let mut out = self.clone();
        for (&n, s) in &rhs.terms {
            out.add_z_term(n, s);
        }
        if let Some(t) = min_order(self.order, rhs.order) {
            out = out.truncate(t);
        }
        out
    }
}

impl Mul<&QZSeries> for &QZSeries {
    type Output = QZSeries;
    fn mul(self, rhs: &QZSeries) -> QZSeries {
        let order = min_order(self.order, rhs.order);
        let mut out = QZSeries {
            order,
            terms: BTreeMap::new(),
        };
        for (&n1, a) in &self.terms {
            for (&n2, b) in &rhs.terms {
                let prod = a * b;
                let current = out.z_coeff(n1 + n2);
                out.insert(n1 + n2, &current + &prod);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(coeffs: &[i64], order: usize) -> QSeries {
        QSeries::truncated(coeffs.iter().copied(), order)
    }

    #[test]
    fn add_examples() {
        assert_eq!(&s(&[1, 1], 5) + &s(&[0, 1], 5), s(&[1, 2], 5));
        assert_eq!(&s(&[3, 0, 7], 5) + &QSeries::zero(5), s(&[3, 0, 7], 5));
        let a = s(&[1, 0, 1], 3);
        let b = s(&[0, 0, 0, 1], 4);
        let sum = &a + &b;
        assert_eq!(sum, s(&[1, 0, 1], 3));
        assert_eq!(sum.order(), Some(3));
    }

    #[test]
    fn mul_examples() {
        let one_plus_q = s(&[1, 1], 10);
        assert_eq!(&one_plus_q * &one_plus_q, s(&[1, 2, 1], 10));
        assert!((&one_plus_q * &QSeries::zero(10)).is_zero());

        let num = s(&[0, 0, 1, 1, 0, -1], 7);
        let den = pochhammer_inverse(Some(3), 7);
        assert_eq!(&num * &den, s(&[0, 0, 1, 2, 3, 4, 6], 7));
    }

    #[test]
    fn gauss_binomial_examples() {
        assert_eq!(gauss_binomial(0, 5).unwrap(), QSeries::polynomial([1]));
        assert_eq!(gauss_binomial(1, 1).unwrap(), QSeries::polynomial([1, 1]));
        assert_eq!(
            gauss_binomial(2, 2).unwrap(),
            QSeries::polynomial([1, 1, 2, 1, 1])
        );
        assert!(gauss_binomial(-1, 3).unwrap().is_zero());
        assert!(gauss_binomial(-2, 0).unwrap().is_zero());
        assert!(matches!(gauss_binomial(3, -1), Err(Error::Domain(_))));
    }

    #[test]
    fn pochhammer_inverse_examples() {
        assert_eq!(pochhammer_inverse(Some(1), 4), s(&[1, 1, 1, 1], 4));
        assert_eq!(pochhammer_inverse(Some(0), 4), QSeries::one(4));
        assert_eq!(pochhammer_inverse(None, 6), s(&[1, 1, 2, 3, 5, 7], 6));
    }

    #[test]
    fn regrade_examples() {
        let z = QZSeries::from_z_power(&QSeries::one(6), 1);
        let qz = QZSeries::from_z_power(&QSeries::monomial(1.into(), 1, Some(6)), 1);
        assert_eq!(z.regrade_z_to_qz(), qz);

        let one = QZSeries::from_z_power(&QSeries::one(6), 0);
        assert_eq!(one.regrade_z_to_qz(), one);

        let a = QZSeries::from_z_power(&QSeries::monomial(1.into(), 2, Some(8)), 3);
        let b = QZSeries::from_z_power(&QSeries::monomial(1.into(), 5, Some(8)), 3);
        assert_eq!(a.regrade_z_to_qz(), b);

        // q^5 z^3 falls off the end at order 7.
        let c = QZSeries::from_z_power(&QSeries::monomial(1.into(), 5, Some(7)), 3);
        assert!(c.regrade_z_to_qz().is_zero());
    }

    #[test]
    fn leq_examples() {
        let q = QZSeries::from_z_power(&s(&[0, 1], 4), 0);
        let two_q = QZSeries::from_z_power(&s(&[0, 2], 4), 0);
        assert!(q.leq(&two_q).unwrap());
        assert!(!two_q.leq(&q).unwrap());
        assert!(q.leq(&q).unwrap());
        let other = QZSeries::from_z_power(&s(&[0, 2], 5), 0);
        assert!(matches!(q.leq(&other), Err(Error::Domain(_))));
    }

    #[test]
    fn json_round_trip() {
        let mut x = QZSeries::zero(5);
        x.add_z_term(2, &s(&[0, 3, 0, -4], 5));
        x.add_z_term(-1, &s(&[7], 5));
        let v = x.to_json();
        assert_eq!(
            v.to_string(),
            r#"{"coeffs":[[0,-1,"7"],[1,2,"3"],[3,2,"-4"]],"trunc":5}"#
        );
        assert_eq!(QZSeries::from_json(&v).unwrap(), x);

        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let y = QSeries::truncated([BigInt::one(), BigInt::zero(), big], 4);
        assert_eq!(QSeries::from_json(&y.to_json()).unwrap(), y);
    }

    #[test]
    fn exact_division_rejects_remainder() {
        let p = QSeries::polynomial([1, 1]);
        assert!(p.div_one_minus_q_pow(2).is_err());
        let sq = &QSeries::polynomial([1, 0, -1]) * &QSeries::polynomial([2, 1]);
        assert_eq!(
            sq.div_one_minus_q_pow(2).unwrap(),
            QSeries::polynomial([2, 1])
        );
    }
}

//! Cubic current relations as elements of the three-particle mode space `A_{d,3}`,
//! checked against the ideal `I_3` through the residue coupling.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::character::a3_char;
use crate::error::{invalid, validate_p, Error, Result};
use crate::linalg::{self, Row};
use crate::sympoly::ideal3_basis;
use crate::sympoly::phi::coupling;
use crate::sympoly::poly::partitions3;

/// Sorted triple `i >= j >= k >= 1` labelling `xi_{-i} xi_{-j} xi_{-k}`.
pub type Modes = [u32; 3];

/// A degree-`d` element `sum c * xi_{-i} xi_{-j} xi_{-k}` of the commutative mode algebra.
/// Each coefficient aggregates all orderings of its triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XiPoly {
    degree: u32,
    coeffs: BTreeMap<Modes, BigInt>,
}

impl XiPoly {
    pub fn zero(degree: u32) -> Self {
        XiPoly {
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// Adds `c * xi_{-a} xi_{-b} xi_{-c}` in any order.
    pub fn add_term(&mut self, modes: Modes, c: &BigInt) -> Result<()> {
        let mut key = modes;
        key.sort_unstable_by(|a, b| b.cmp(a));
        if key[2] == 0 || key.iter().sum::<u32>() != self.degree {
            return Err(invalid(
                "modes",
                format!("{modes:?} is not a weight-{} triple", self.degree),
            ));
        }
        let entry = self.coeffs.entry(key).or_default();
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&key);
        }
        Ok(())
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &BTreeMap<Modes, BigInt> {
        &self.coeffs
    }

    pub fn coeff(&self, modes: Modes) -> BigInt {
        let mut key = modes;
        key.sort_unstable_by(|a, b| b.cmp(a));
        self.coeffs.get(&key).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &BigInt) -> XiPoly {
        let mut out = XiPoly::zero(self.degree);
        if !c.is_zero() {
            out.coeffs = self.coeffs.iter().map(|(k, v)| (*k, v * c)).collect();
        }
        out
    }

    /// `self + other`; both must share a degree.
    pub fn add(&self, other: &XiPoly) -> Result<XiPoly> {
        if self.degree != other.degree {
            return Err(Error::Domain(format!(
                "cannot add degree {} to degree {}",
                self.degree, other.degree
            )));
        }
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            out.add_term(*k, v)?;
        }
        Ok(out)
    }

    /// Coordinates against the triples returned by [`mode_basis`].
    pub fn coordinates(&self) -> Row {
        mode_basis(self.degree)
            .iter()
            .map(|k| BigRational::from_integer(self.coeff(*k)))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .coeffs
            .iter()
            .map(|(k, v)| json!({ "modes": k, "coeff": v.to_string() }))
            .collect();
        json!({ "degree": self.degree, "terms": terms })
    }
}

/// Sorted mode triples of total weight `d`: a basis of `A_{d,3}`.
pub fn mode_basis(d: u32) -> Vec<Modes> {
    if d < 3 {
        return Vec::new();
    }
    partitions3(d - 3, None)
        .into_iter()
        .map(|[a, b, c]| [a + 1, b + 1, c + 1])
        .collect()
}

/// `(k-1)(k-2)...(k-nu)`: the mode weight of `d^nu a(z)` at `a_{-k}`.
fn falling(k: u32, nu: u32) -> BigInt {
    (1..=nu)
        .map(|t| BigInt::from(i64::from(k) - i64::from(t)))
        .product()
}

/// Degree-`d` mode component of `d^{nu_1} a(z) d^{nu_2} a(z) d^{nu_3} a(z)`.
pub fn current_product_modes(nu: [u32; 3], d: u32) -> Result<XiPoly> {
    if d < 3 {
        return Err(invalid("d", format!("d = {d} must be at least 3")));
    }
    let mut out = XiPoly::zero(d);
    for i in 1..=d - 2 {
        for j in 1..=d - 1 - i {
            let k = d - i - j;
            let c = falling(i, nu[0]) * falling(j, nu[1]) * falling(k, nu[2]);
            if !c.is_zero() {
                out.add_term([i, j, k], &c)?;
            }
        }
    }
    Ok(out)
}

/// `a(z)^2 d^nu a(z)` in degree `d`, for `0 <= nu <= p - 3`.
pub fn relation_prop24(p: i64, nu: u32, d: u32) -> Result<XiPoly> {
    validate_p(p)?;
    if i64::from(nu) > p - 3 {
        return Err(invalid(
            "nu",
            format!("nu = {nu} exceeds p - 3 = {}", p - 3),
        ));
    }
    current_product_modes([0, 0, nu], d)
}

/// `p(p-4) a^2 d^{p-1}a + 4(p-3)^2 a da d^{p-2}a + 2(2(p-3)^2 - p) a d^2a d^{p-3}a`
/// in degree `d`.
pub fn relation_prop25(p: i64, d: u32) -> Result<XiPoly> {
    validate_p(p)?;
    let k = (p - 3) as u32;
    let weights = [
        ([0, 0, k + 2], p * (p - 4)),
        ([0, 1, k + 1], 4 * (p - 3) * (p - 3)),
        ([0, 2, k], 2 * (2 * (p - 3) * (p - 3) - p)),
    ];
    let mut out = XiPoly::zero(d);
    for (nu, c) in weights {
        out = out.add(&current_product_modes(nu, d)?.scale(&BigInt::from(c)))?;
    }
    Ok(out)
}

/// Pairing of `rho` with a symmetric polynomial of degree `deg rho - 3`.
fn pair(rho: &XiPoly, f: &crate::sympoly::SymPoly3) -> Result<BigRational> {
    let mut total = BigRational::zero();
    for (modes, c) in &rho.coeffs {
        total += coupling(f, *modes)? * BigRational::from_integer(c.clone());
    }
    Ok(total)
}

/// True iff `rho` pairs to zero with every element of `I^{[p]}_3` of degree `deg rho - 3`.
pub fn annihilation_check(rho: &XiPoly, p: i64) -> Result<bool> {
    validate_p(p)?;
    if rho.degree < 3 {
        return Ok(rho.is_zero());
    }
    for f in ideal3_basis(p, rho.degree - 3)? {
        if !pair(rho, &f)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Rank of `{a^2 d^nu a : 0 <= nu <= p - 3}` in degree `d`.
pub fn first_family_rank(p: i64, d: u32) -> Result<usize> {
    let rows = (0..=(p - 3) as u32)
        .map(|nu| relation_prop24(p, nu, d).map(|r| r.coordinates()))
        .collect::<Result<Vec<_>>>()?;
    Ok(linalg::rank(rows))
}

/// Lowest degree in which the second relation is a nonzero element, or `None` when it
/// vanishes identically (as at `p = 4`, where its two surviving terms cancel).
pub fn second_relation_degree(p: i64) -> Result<Option<u32>> {
    validate_p(p)?;
    // The coefficients are polynomials of degree p + 1 in the mode numbers; past 3p they
    // have had room to show up.
    for d in 3..=3 * p as u32 {
        if !relation_prop25(p, d)?.is_zero() {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

/// First degree `d >= 3` up to `max_degree` where the first family fails to span the
/// whole relation space, i.e. its rank falls below `[q^d]` of the relation character.
pub fn first_rank_deficiency(p: i64, max_degree: u32) -> Result<Option<u32>> {
    let ch = a3_char(p, max_degree as usize + 1)?;
    for d in 3..=max_degree {
        if BigInt::from(first_family_rank(p, d)?) != ch.coeff(d as usize) {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

/// Outcome of the independence test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependenceReport {
    pub degree: u32,
    pub first_family_rank: usize,
    pub combined_rank: usize,
    /// `[q^d]` of the character of the relation space.
    pub annihilator_dim: usize,
}

impl IndependenceReport {
    pub fn independent(&self) -> bool {
        self.combined_rank > self.first_family_rank
    }
}

pub fn independence_report(p: i64) -> Result<IndependenceReport> {
    if p < 7 {
        return Err(Error::Domain(format!(
            "independence is only claimed for p >= 7, got {p}"
        )));
    }
    validate_p(p)?;
    let d = second_relation_degree(p)?
        .ok_or_else(|| Error::Domain(format!("second relation vanishes identically at p = {p}")))?;
    let mut rows = (0..=(p - 3) as u32)
        .map(|nu| relation_prop24(p, nu, d).map(|r| r.coordinates()))
        .collect::<Result<Vec<_>>>()?;
    let first_family_rank = linalg::rank(rows.clone());
    rows.push(relation_prop25(p, d)?.coordinates());
    let combined_rank = linalg::rank(rows);
    let annihilator_dim = a3_char(p, d as usize + 1)?
        .coeff(d as usize)
        .to_usize()
        .expect("dimension fits");
    Ok(IndependenceReport {
        degree: d,
        first_family_rank,
        combined_rank,
        annihilator_dim,
    })
}

/// True iff the second relation is not in the span of the first family at its lowest
/// nonzero degree.
pub fn independence_check(p: i64) -> Result<bool> {
    Ok(independence_report(p)?.independent())
}

/// Dimension of the annihilator of `I^{[p]}_{3, d-3}` inside `A_{d,3}`.
pub fn annihilator_dim(p: i64, d: u32) -> Result<usize> {
    validate_p(p)?;
    if d < 3 {
        return Err(invalid("d", format!("d = {d} must be at least 3")));
    }
    let basis = mode_basis(d);
    // Pairing matrix: one row per ideal element, one column per mode triple.
    let rows = ideal3_basis(p, d - 3)?
        .iter()
        .map(|f| {
            basis
                .iter()
                .map(|m| coupling(f, *m))
                .collect::<Result<Row>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(basis.len() - linalg::rank(rows))
}

/// `dim A_{d,3} = dim ann(I_{3,d-3}) + dim I_{3,d-3}`, with the annihilator computed by
/// linear algebra and compared with `[q^d]` of the relation-space character.
pub fn a3_dimension_crosscheck(p: i64, d: u32) -> Result<bool> {
    let ann = annihilator_dim(p, d)?;
    let expected = a3_char(p, d as usize + 1)?.coeff(d as usize);
    Ok(BigInt::from(ann) == expected)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn mode_products() {
        let r = current_product_modes([0, 0, 0], 5).unwrap();
        assert_eq!(r.coeffs().len(), 2);
        assert_eq!(r.coeff([3, 1, 1]), big(3));
        assert_eq!(r.coeff([2, 2, 1]), big(3));

        // Orderings of (3,1,1): k = 1, 1, 3; of (2,2,1): k = 2, 2, 1.
        let r = current_product_modes([0, 0, 1], 5).unwrap();
        assert_eq!(r.coeff([3, 1, 1]), big(2));
        assert_eq!(r.coeff([2, 2, 1]), big(2));

        let r = current_product_modes([0, 0, 0], 3).unwrap();
        assert_eq!(r.coeff([1, 1, 1]), big(1));
        assert_eq!(r.coeffs().len(), 1);
        assert!(current_product_modes([0, 0, 0], 2).is_err());
    }

    #[test]
    fn products_commute() {
        for d in 3..12 {
            let a = current_product_modes([0, 1, 3], d).unwrap();
            let b = current_product_modes([3, 0, 1], d).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn first_family_guard_and_examples() {
        assert!(relation_prop24(4, 2, 6).is_err());
        assert!(!relation_prop24(7, 4, 7).unwrap().is_zero());
        assert!(annihilation_check(&relation_prop24(4, 0, 5).unwrap(), 4).unwrap());
    }

    #[test]
    fn lone_monomial_is_not_a_relation() {
        // phi_3 pairs with (3,1,1) to 1 at p = 4.
        let mut rho = XiPoly::zero(5);
        rho.add_term([3, 1, 1], &big(1)).unwrap();
        assert!(!annihilation_check(&rho, 4).unwrap());
    }

    #[test]
    fn second_relation_at_seven() {
        let d = second_relation_degree(7).unwrap().unwrap();
        assert_eq!(d, 9);
        let direct = current_product_modes([0, 0, 6], d)
            .unwrap()
            .scale(&big(21))
            .add(&current_product_modes([0, 1, 5], d).unwrap().scale(&big(64)))
            .unwrap()
            .add(&current_product_modes([0, 2, 4], d).unwrap().scale(&big(50)))
            .unwrap();
        assert_eq!(relation_prop25(7, d).unwrap(), direct);
        for d in 3..=13 {
            assert!(
                annihilation_check(&relation_prop25(7, d).unwrap(), 7).unwrap(),
                "d={d}"
            );
        }
    }

    #[test]
    fn second_relation_at_four_vanishes() {
        assert_eq!(second_relation_degree(4).unwrap(), None);
        for d in 3..=12 {
            assert!(annihilation_check(&relation_prop25(4, d).unwrap(), 4).unwrap());
        }
    }

    #[test]
    fn relations_annihilate_small() {
        for p in [4, 5] {
            for d in 3..=2 * p as u32 {
                for nu in 0..=(p - 3) as u32 {
                    let rho = relation_prop24(p, nu, d).unwrap();
                    assert!(annihilation_check(&rho, p).unwrap(), "p={p} nu={nu} d={d}");
                }
            }
        }
    }

    #[test]
    fn independence() {
        assert!(independence_check(7).unwrap());
        assert!(independence_check(8).unwrap());
        assert!(independence_check(5).is_err());
        let r = independence_report(7).unwrap();
        assert!(r.annihilator_dim > r.first_family_rank);
    }

    #[test]
    fn first_family_spans_before_stabilizing() {
        assert_eq!(first_rank_deficiency(4, 12).unwrap(), None);
        assert_eq!(first_rank_deficiency(5, 14).unwrap(), None);
        assert_eq!(first_rank_deficiency(7, 18).unwrap(), Some(9));
        // At p = 8 the relation space outgrows the first family one degree before the
        // second relation becomes nonzero.
        assert_eq!(first_rank_deficiency(8, 20).unwrap(), Some(9));
        assert_eq!(second_relation_degree(8).unwrap(), Some(10));
    }

    #[test]
    fn a3_dimensions() {
        for d in 3..=12 {
            assert!(a3_dimension_crosscheck(4, d).unwrap(), "d={d}");
        }
        for p in [5, 7] {
            for d in [5, 6, 7, 10] {
                assert!(a3_dimension_crosscheck(p, d).unwrap(), "p={p} d={d}");
            }
        }
    }
}

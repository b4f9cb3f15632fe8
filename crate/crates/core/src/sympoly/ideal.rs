//! Homogeneous components of `I_3 = Lambda_3 phi_3 + Lambda_3 l_1(phi_3)` and the exact
//! sequences `0 -> D_3 I^{[p-3]} -> I^{[p]} -> (x-y)^{p-2} C[x,y] -> 0`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::phi::phi3;
use super::poly::{discriminant, partitions3, Exps, Poly2, SymPoly3};
use crate::character::ideal3_char;
use crate::error::{invalid, validate_p, validate_reduced_p, Result};
use crate::linalg::{self, Row};
use crate::partition::{gen_function, Bound};

/// Basis of the degree-`d` part of `I^{[p]}_3`, in reduced row echelon form over the
/// `m_lambda` basis. For `p in {1, 2}` the ideal is all of `Lambda_3`.
pub fn ideal3_basis(p: i64, d: u32) -> Result<Vec<SymPoly3>> {
    ideal_component(p, d, None)
}

/// The degree-`d` part of `I^{[p]}_3`, intersected with `lambda_1 <= cap` when given.
pub fn ideal_component(p: i64, d: u32, cap: Option<u32>) -> Result<Vec<SymPoly3>> {
    validate_reduced_p(p)?;
    if p <= 2 {
        return Ok(partitions3(d, cap)
            .into_iter()
            .map(SymPoly3::monomial)
            .collect());
    }
    let phi = phi3(p)?;
    let l1 = phi.l_op(1);
    let k = (p - 2) as u32;
    let mut gens = Vec::new();
    if d >= k {
        gens.extend(
            partitions3(d - k, None)
                .into_iter()
                .map(|mu| &SymPoly3::monomial(mu) * &phi),
        );
    }
    if d > k {
        gens.extend(
            partitions3(d - k - 1, None)
                .into_iter()
                .map(|nu| &SymPoly3::monomial(nu) * &l1),
        );
    }
    // Columns with lambda_1 > cap come first, so rows pivoting past them lie in the
    // bounded subspace and span the intersection.
    let columns = partitions3(d, None);
    let mut rows: Vec<Row> = gens.iter().map(|g| g.coordinates(&columns)).collect();
    let pivots = linalg::rref(&mut rows);
    Ok(rows
        .iter()
        .zip(&pivots)
        .filter(|(_, &c)| cap.is_none_or(|cap| columns[c][0] <= cap))
        .map(|(row, _)| to_sympoly(row, &columns))
        .collect())
}

fn to_sympoly(row: &[BigRational], columns: &[Exps]) -> SymPoly3 {
    SymPoly3::from_terms(
        row.iter()
            .zip(columns)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, k)| (*k, c.clone())),
    )
}

fn poly2_row(f: &Poly2, d: u32) -> Row {
    (0..=d).map(|a| f.coeff(a, d - a)).collect()
}

/// Outcome of an exact-sequence verification.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExactnessReport {
    pub degrees_checked: u32,
    /// `(degree, dim I, rank pi, dim kernel)` per degree.
    pub dimensions: Vec<(u32, usize, usize, usize)>,
    pub failure: Option<String>,
}

impl ExactnessReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Bounds shared by the unbounded and finitized sequences.
struct Shape {
    p: i64,
    /// `N` for the finitized sequence.
    bound: Option<i64>,
}

impl Shape {
    fn middle_cap(&self) -> Option<u32> {
        self.bound.map(|n| (n - 1) as u32)
    }

    /// Dimension of `(x-y)^{p-2} J` in degree `d`.
    fn target_dim(&self, d: u32) -> usize {
        let k = self.p - 2;
        let rest = i64::from(d) - k;
        if rest < 0 {
            return 0;
        }
        match self.bound {
            None => rest as usize + 1,
            Some(n) => (0..=rest)
                .filter(|&a| a <= n - self.p + 1 && rest - a <= 2 * n - self.p)
                .count(),
        }
    }

    fn quotient_in_range(&self, g: &Poly2) -> bool {
        match self.bound {
            None => true,
            Some(n) => {
                g.deg_x().is_none_or(|dx| i64::from(dx) <= n - self.p + 1)
                    && g.deg_y().is_none_or(|dy| i64::from(dy) <= 2 * n - self.p)
            }
        }
    }

    /// The `D_3 I^{[p-3]}` side in degree `d`, if present.
    fn sub_basis(&self, d: u32) -> Result<Vec<SymPoly3>> {
        if d < 6 {
            return Ok(Vec::new());
        }
        let cap = match self.bound {
            None => None,
            Some(n) if n < 5 => return Ok(Vec::new()),
            Some(n) => Some((n - 5) as u32),
        };
        let d3 = discriminant();
        Ok(ideal_component(self.p - 3, d - 6, cap)?
            .iter()
            .map(|f| &d3 * f)
            .collect())
    }

    fn expected_middle_dim(&self, d: u32, order: usize) -> Result<usize> {
        let c = match self.bound {
            None => ideal3_char(self.p, order)?.coeff(d as usize),
            Some(n) => gen_function(self.p, Bound::Finite(n), 3, order)?.coeff(d as usize + 3),
        };
        Ok(c.to_usize().expect("dimension fits"))
    }

    fn check_degree(
        &self,
        d: u32,
        order: usize,
    ) -> Result<std::result::Result<(usize, usize, usize), String>> {
        let tag = |msg: String| Err(format!("degree {d}: {msg}"));
        let basis = ideal_component(self.p, d, self.middle_cap())?;
        let expected = self.expected_middle_dim(d, order)?;
        if basis.len() != expected {
            return Ok(tag(format!(
                "dim I = {} but the character gives {expected}",
                basis.len()
            )));
        }
        let k = (self.p - 2) as u32;
        let mut image_rows = Vec::with_capacity(basis.len());
        for f in &basis {
            let image = f.specialize_pi();
            let mut quotient = image.clone();
            for _ in 0..k {
                match quotient.div_x_minus_y() {
                    Ok(q) => quotient = q,
                    Err(_) => return Ok(tag(format!("pi({f:?}) not divisible by (x-y)^{k}"))),
                }
            }
            if !self.quotient_in_range(&quotient) {
                return Ok(tag(format!("pi({f:?})/(x-y)^{k} = {quotient:?} leaves J")));
            }
            image_rows.push(poly2_row(&image, d));
        }
        let rank = linalg::rank(image_rows);
        let target = self.target_dim(d);
        if rank != target {
            return Ok(tag(format!(
                "rank pi = {rank} but dim (x-y)^{k} J = {target}"
            )));
        }
        let kernel_dim = basis.len() - rank;
        let columns = partitions3(d, None);
        let mut span: Vec<Row> = basis.iter().map(|f| f.coordinates(&columns)).collect();
        let pivots = linalg::rref(&mut span);
        let sub = self.sub_basis(d)?;
        for g in &sub {
            if !g.specialize_pi().is_zero() {
                return Ok(tag(format!("pi(iota({g:?})) != 0")));
            }
            if !linalg::in_span(&span, &pivots, &g.coordinates(&columns)) {
                return Ok(tag(format!("D_3 * element {g:?} is not in I")));
            }
        }
        let sub_rank = linalg::rank(sub.iter().map(|g| g.coordinates(&columns)).collect());
        if sub_rank != sub.len() {
            return Ok(tag("iota is not injective".into()));
        }
        if kernel_dim != sub.len() {
            return Ok(tag(format!(
                "dim ker pi = {kernel_dim} but dim D_3 I^[p-3] = {}",
                sub.len()
            )));
        }
        Ok(Ok((basis.len(), rank, kernel_dim)))
    }

    fn run(&self, max_degree: u32) -> Result<ExactnessReport> {
        let order = max_degree as usize + 4;
        let mut report = ExactnessReport::default();
        for d in 0..=max_degree {
            match self.check_degree(d, order)? {
                Ok((dim, rank, ker)) => report.dimensions.push((d, dim, rank, ker)),
                Err(msg) => {
                    report.failure = Some(msg);
                    break;
                }
            }
            report.degrees_checked += 1;
        }
        Ok(report)
    }
}

/// `0 -> D_3 I^{[p-3]}_3 -> I^{[p]}_3 -> (x-y)^{p-2} C[x,y] -> 0`, degree by degree up to
/// `max_degree`, together with `dim I_{3,d} = [q^d]` of the closed-form character.
pub fn exactness_check(p: i64, max_degree: u32) -> Result<ExactnessReport> {
    validate_p(p)?;
    Shape { p, bound: None }.run(max_degree)
}

/// `0 -> D_3 I^{N-5,[p-3]}_3 -> I^{N-1,[p]}_3 -> (x-y)^{p-2} J^{N-1} -> 0` in every degree,
/// together with `dim I^{N-1}_{3,d} = #C^{[p]}_{N,d+3,3}`.
pub fn finitized_exactness_check(p: i64, bound: i64) -> Result<ExactnessReport> {
    validate_p(p)?;
    if bound < p - 1 {
        return Err(invalid(
            "N",
            format!("N = {bound} must be at least p - 1 = {}", p - 1),
        ));
    }
    Shape {
        p,
        bound: Some(bound),
    }
    .run(3 * (bound - 1) as u32)
}

/// Coefficient helper for reports.
pub fn dims_as_series(report: &ExactnessReport) -> Vec<BigInt> {
    report
        .dimensions
        .iter()
        .map(|&(_, dim, _, _)| BigInt::from(dim))
        .collect()
}

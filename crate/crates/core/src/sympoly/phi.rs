//! The three-point polynomial `phi_3`, the Ward operators acting on it, and the
//! identities relating `phi_3`, `l_1(phi_3)` and `phi_3` at level `p - 3`.

use num_traits::{One, Zero};

use super::poly::{
    discriminant, elementary, power_sum, rat, ratio, Exps, Poly2, Poly3, Rat, SymPoly3,
};
use crate::error::{invalid, validate_p, validate_reduced_p, Error, Result};
use crate::linalg;

/// Coefficients of the terminating series `F(a, b, c; z)` with `b` a nonpositive
/// integer.
pub fn hypergeometric_terminating(a: &Rat, b: i64, c: &Rat) -> Vec<Rat> {
    assert!(b <= 0, "series terminates only for b <= 0");
    let mut out = vec![Rat::one()];
    for k in 0..(-b) {
        let kk = rat(k);
        let prev = out.last().expect("nonempty").clone();
        let next = prev * (a + &kk) * (rat(b) + &kk) / ((c + &kk) * (&kk + Rat::one()));
        out.push(next);
    }
    out
}

/// `g(z) = F(1 - p/3, 2 - p, 2 - 2p/3; z)`, so that
/// `phi_3 = (x_1 - x_2)^{p-2} g((x_3 - x_2)/(x_1 - x_2))`.
pub fn phi3_profile(p: i64) -> Result<Vec<Rat>> {
    validate_p(p)?;
    Ok(hypergeometric_terminating(
        &ratio(3 - p, 3),
        2 - p,
        &ratio(6 - 2 * p, 3),
    ))
}

/// `phi_3` at level `p`; the constant `1` for `p in {1, 2}`.
pub fn phi3(p: i64) -> Result<SymPoly3> {
    validate_reduced_p(p)?;
    if p <= 2 {
        return Ok(SymPoly3::one());
    }
    SymPoly3::from_poly3(&phi3_expansion(p)?)
}

/// `sum_k g_k (x_3 - x_2)^k (x_1 - x_2)^{p-2-k}` in monomials, before symmetrization.
pub fn phi3_expansion(p: i64) -> Result<Poly3> {
    let g = phi3_profile(p)?;
    let deg = (p - 2) as u32;
    let u = &Poly3::var(0) - &Poly3::var(1);
    let z = &Poly3::var(2) - &Poly3::var(1);
    let mut expanded = Poly3::zero();
    for (k, c) in g.iter().enumerate() {
        let k = k as u32;
        let term = &z.pow(k) * &u.pow(deg - k);
        expanded = &expanded + &term.scale(c);
    }
    Ok(expanded)
}

/// The expansion is invariant under the transpositions generating `S_3`.
pub fn phi3_symmetry_check(p: i64) -> Result<bool> {
    let f = phi3_expansion(p)?;
    Ok(f.permute([1, 0, 2]) == f && f.permute([0, 2, 1]) == f)
}

/// `(l_1 - (p-2) P_1)^j phi_3`.
pub fn f_j(p: i64, j: u32) -> Result<SymPoly3> {
    validate_p(p)?;
    if i64::from(j) > p - 2 {
        return Err(invalid("j", format!("j = {j} exceeds p - 2 = {}", p - 2)));
    }
    let shift = power_sum(1).scale(&rat(p - 2));
    let mut f = phi3(p)?;
    for _ in 0..j {
        f = &f.l_op(1) - &(&shift * &f);
    }
    Ok(f)
}

/// Expected value of `f_j(x_1, x_2, 0)`:
/// `c_j x_1^{p-2} x_2^j F(1-p/3, 2-p+j, 2-2p/3+j; x_2/x_1)` where
/// `c_j = prod_{i<j} (gamma_i - alpha) beta_i / gamma_i` with `alpha = 1-p/3`,
/// `beta_i = 2-p+i`, `gamma_i = 2-2p/3+i`, from iterating the contiguous relation
/// `((z-1)d/dz + beta) F(alpha, beta, gamma) = ((gamma-alpha) beta/gamma) F(alpha, beta+1, gamma+1)`.
pub fn f_j_restriction_formula(p: i64, j: u32) -> Result<Poly2> {
    validate_p(p)?;
    let j = i64::from(j);
    let mut prefactor = Rat::one();
    for i in 0..j {
        let gamma_minus_alpha = ratio(3 - p + 3 * i, 3);
        let beta = rat(2 - p + i);
        let gamma = ratio(6 - 2 * p + 3 * i, 3);
        prefactor *= gamma_minus_alpha * beta / gamma;
    }
    let series =
        hypergeometric_terminating(&ratio(3 - p, 3), 2 - p + j, &ratio(6 - 2 * p + 3 * j, 3));
    let mut out = Poly2::zero();
    for (k, c) in series.iter().enumerate() {
        let k = k as i64;
        out.add_term(((p - 2 - k) as u32, (j + k) as u32), c * &prefactor);
    }
    Ok(out)
}

/// Applies `2p l_2 - 6 l_1^2 + 6(p-2) P_1 l_1 - (2p-3)(p-2) P_1^2 + 3(p-2) P_2` to `f`.
pub fn hyp_operator(p: i64, f: &SymPoly3) -> SymPoly3 {
    let p1 = power_sum(1);
    let p2 = power_sum(2);
    let l1 = f.l_op(1);
    let terms = [
        f.l_op(2).scale(&rat(2 * p)),
        l1.l_op(1).scale(&rat(-6)),
        (&p1 * &l1).scale(&rat(6 * (p - 2))),
        (&(&p1 * &p1) * f).scale(&rat(-(2 * p - 3) * (p - 2))),
        (&p2 * f).scale(&rat(3 * (p - 2))),
    ];
    terms.iter().fold(SymPoly3::zero(), |acc, t| &acc + t)
}

pub fn hyp_ode_check(p: i64) -> Result<bool> {
    Ok(hyp_operator(p, &phi3(p)?).is_zero())
}

/// `Q_{m-1}` and `R_m` in `l_m(phi_3) - Q_{m-1} l_1(phi_3) = (p-2) R_m phi_3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QrReduction {
    pub q: SymPoly3,
    pub r: SymPoly3,
}

/// `Q_{m-1} = Sym x_1^{m+1} x_2 / ((x_1-x_2)(x_1-x_3)(x_2-x_3))` (sum over all six
/// permutations) and `R_m = (x_1^{m+1} - x_2^{m+1})/(x_1 - x_2) - (x_1 + x_2) Q_{m-1}`.
pub fn qr_reduction(m: u32) -> Result<QrReduction> {
    if m < 2 {
        return Err(invalid("m", format!("m = {m} must be at least 2")));
    }
    let perms: [([usize; 3], i64); 6] = [
        ([0, 1, 2], 1),
        ([1, 2, 0], 1),
        ([2, 0, 1], 1),
        ([1, 0, 2], -1),
        ([0, 2, 1], -1),
        ([2, 1, 0], -1),
    ];
    // sigma(x_1^{m+1} x_2) / sigma(Delta) = sgn(sigma) sigma(x_1^{m+1} x_2) / Delta.
    let mut numerator = Poly3::zero();
    for (perm, sign) in perms {
        let mut e = [0u32; 3];
        e[perm[0]] = m + 1;
        e[perm[1]] = 1;
        numerator.add_term(e, rat(sign));
    }
    let q_poly = numerator
        .div_linear(0, 1)?
        .div_linear(0, 2)?
        .div_linear(1, 2)?;
    let q = SymPoly3::from_poly3(&q_poly)?;
    let mut h = Poly3::zero();
    for a in 0..=m {
        h.add_term([a, m - a, 0], Rat::one());
    }
    let x1_plus_x2 = &Poly3::var(0) + &Poly3::var(1);
    let r = SymPoly3::from_poly3(&(&h - &(&x1_plus_x2 * &q_poly)))?;
    Ok(QrReduction { q, r })
}

/// `l_m phi - Q_{m-1} l_1 phi - scale * R_m phi`.
pub fn qr_residual(p: i64, m: u32, scale: &Rat) -> Result<SymPoly3> {
    let phi = phi3(p)?;
    let QrReduction { q, r } = qr_reduction(m)?;
    let lhs = &phi.l_op(m as i32) - &(&q * &phi.l_op(1));
    Ok(&lhs - &(&r * &phi).scale(scale))
}

/// The identity in its `(p-2) R_m` normalization.
pub fn qr_identity_check(p: i64, m: u32) -> Result<bool> {
    validate_p(p)?;
    Ok(qr_residual(p, m, &rat(p - 2))?.is_zero())
}

/// `A_1`, `B_2` with `l_1^2 phi_3 = A_1 l_1 phi_3 + B_2 phi_3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct L12Coefficients {
    pub a1: SymPoly3,
    pub b2: SymPoly3,
}

/// Solves for `A_1 = a P_1` and `B_2 = b m_(2) + c m_(1,1)` by exact linear algebra.
pub fn l12_coefficients(p: i64) -> Result<L12Coefficients> {
    validate_p(p)?;
    let phi = phi3(p)?;
    let l1 = phi.l_op(1);
    let target = l1.l_op(1);
    let gens = [
        &power_sum(1) * &l1,
        &SymPoly3::monomial([2, 0, 0]) * &phi,
        &SymPoly3::monomial([1, 1, 0]) * &phi,
    ];
    let mut keys: Vec<Exps> = gens
        .iter()
        .chain(std::iter::once(&target))
        .flat_map(|g| g.coeffs().keys().copied())
        .collect();
    keys.sort_unstable();
    keys.dedup();
    let columns: Vec<Vec<Rat>> = gens.iter().map(|g| g.coordinates(&keys)).collect();
    let x = linalg::solve(&columns, &target.coordinates(&keys))
        .ok_or_else(|| Error::Domain(format!("l_1^2 phi_3 not in the span at p = {p}")))?;
    if !linalg::kernel(&columns).is_empty() {
        return Err(Error::Domain(format!("A_1, B_2 are not unique at p = {p}")));
    }
    Ok(L12Coefficients {
        a1: power_sum(1).scale(&x[0]),
        b2: &SymPoly3::monomial([2, 0, 0]).scale(&x[1])
            + &SymPoly3::monomial([1, 1, 0]).scale(&x[2]),
    })
}

/// `k = -9(p-2)(p-4) / (2(2p-9))`.
pub fn nested_constant(p: i64) -> Rat {
    ratio(-9 * (p - 2) * (p - 4), 2 * (2 * p - 9))
}

/// Both sides of `k D_3 phi^{[p-3]} = (P_1^2 - 3P_2) l_1 phi^{[p]} + (p-2)(3P_3 - P_1 P_2) phi^{[p]}`.
pub fn nested_identity_sides(p: i64) -> Result<(SymPoly3, SymPoly3)> {
    validate_p(p)?;
    let phi = phi3(p)?;
    let inner = phi3(p - 3)?;
    let p1 = power_sum(1);
    let p2 = power_sum(2);
    let p3 = power_sum(3);
    let lhs = (&discriminant() * &inner).scale(&nested_constant(p));
    let a = &(&p1 * &p1) - &p2.scale(&rat(3));
    let b = &p3.scale(&rat(3)) - &(&p1 * &p2);
    let rhs = &(&a * &phi.l_op(1)) + &(&b * &phi).scale(&rat(p - 2));
    Ok((lhs, rhs))
}

pub fn nested_identity_check(p: i64) -> Result<bool> {
    let (lhs, rhs) = nested_identity_sides(p)?;
    Ok(lhs == rhs)
}

/// Univariate polynomial over `Q`, coefficients by ascending degree.
type UPoly = Vec<Rat>;

fn trim(mut a: UPoly) -> UPoly {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn derivative(a: &[Rat]) -> UPoly {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * rat(k as i64))
            .collect(),
    )
}

fn remainder(a: &[Rat], b: &[Rat]) -> UPoly {
    let mut r = trim(a.to_vec());
    let b = trim(b.to_vec());
    let lead = b.last().expect("nonzero divisor").clone();
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let factor = r.last().expect("nonempty").clone() / &lead;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &factor * c;
        }
        r = trim(r);
    }
    r
}

fn gcd_degree(a: &[Rat], b: &[Rat]) -> usize {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = remainder(&a, &b);
        a = b;
        b = r;
    }
    a.len().saturating_sub(1)
}

/// `f(1, 0, z)` as a polynomial in `z`.
fn restrict_to_line(f: &SymPoly3) -> UPoly {
    let mut out = Vec::new();
    for (e, c) in f.to_poly3().terms() {
        if e[1] == 0 {
            let k = e[2] as usize;
            if out.len() <= k {
                out.resize(k + 1, Rat::zero());
            }
            out[k] += c;
        }
    }
    trim(out)
}

/// Outcome of the square-freeness test on `g` and the coprimality of
/// `phi_3(1, 0, z)` and `l_1(phi_3)(1, 0, z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeReport {
    pub degree: usize,
    pub gcd_with_derivative: usize,
    pub gcd_with_l1: usize,
}

impl SquarefreeReport {
    pub fn passed(&self, p: i64) -> bool {
        self.degree as i64 == p - 2 && self.gcd_with_derivative == 0 && self.gcd_with_l1 == 0
    }
}

pub fn squarefree_report(p: i64) -> Result<SquarefreeReport> {
    let g = trim(phi3_profile(p)?);
    let phi = phi3(p)?;
    debug_assert_eq!(restrict_to_line(&phi), g);
    let h = restrict_to_line(&phi.l_op(1));
    Ok(SquarefreeReport {
        degree: g.len() - 1,
        gcd_with_derivative: gcd_degree(&g, &derivative(&g)),
        gcd_with_l1: gcd_degree(&g, &h),
    })
}

pub fn squarefree_check(p: i64) -> Result<bool> {
    Ok(squarefree_report(p)?.passed(p))
}

/// `<f, xi_{-lambda_1} xi_{-lambda_2} xi_{-lambda_3}>`: the coefficient of
/// `m_{(lambda_1 - 1, lambda_2 - 1, lambda_3 - 1)}` in `f`.
pub fn coupling(f: &SymPoly3, lambda: Exps) -> Result<Rat> {
    let lambda = super::poly::sorted(lambda);
    if lambda[2] == 0 {
        return Err(invalid(
            "lambda",
            format!("{lambda:?} needs three positive parts"),
        ));
    }
    Ok(f.coeff([lambda[0] - 1, lambda[1] - 1, lambda[2] - 1]))
}

/// As [`coupling`], but a degree mismatch is an error instead of a zero.
pub fn coupling_strict(f: &SymPoly3, lambda: Exps) -> Result<Rat> {
    let d: u32 = lambda.iter().sum();
    match f.homogeneous_degree() {
        Some(deg) if deg + 3 != d => Err(Error::Domain(format!(
            "degree {deg} cannot pair with |lambda| = {d}"
        ))),
        _ => coupling(f, lambda),
    }
}

/// Leading monomial of `e_1^k e_2^l e_3^m f_j`.
pub fn product_leading_monomial(p: i64, j: u32, k: u32, l: u32, m: u32) -> Result<Exps> {
    let mut f = f_j(p, j)?;
    for (gen, times) in [(elementary(1), k), (elementary(2), l), (elementary(3), m)] {
        for _ in 0..times {
            f = &gen * &f;
        }
    }
    f.leading_monomial()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi3_examples() {
        let p4 = phi3(4).unwrap();
        let expected = &SymPoly3::monomial([2, 0, 0]) - &SymPoly3::monomial([1, 1, 0]);
        assert_eq!(p4, expected);
        assert_eq!(phi3_profile(4).unwrap(), vec![rat(1), rat(-1), rat(1)]);
        assert_eq!(
            phi3_profile(5).unwrap(),
            vec![rat(1), ratio(-3, 2), ratio(-3, 2), rat(1)]
        );
        assert_eq!(phi3(1).unwrap(), SymPoly3::one());
        assert_eq!(phi3(2).unwrap(), SymPoly3::one());
        for p in [4, 5, 7, 8, 10, 11] {
            assert_eq!(phi3_profile(p).unwrap()[0], rat(1));
            let phi = phi3(p).unwrap();
            assert!(phi.l_op(-1).is_zero());
            assert_eq!(phi.l_op(0), phi.scale(&rat(p - 2)));
            assert_eq!(phi.leading_monomial().unwrap(), [(p - 2) as u32, 0, 0]);
        }
    }

    #[test]
    fn expansion_is_symmetric() {
        for p in [4, 5, 7, 8, 10, 11, 13, 14] {
            assert!(phi3_symmetry_check(p).unwrap(), "p = {p}");
        }
        // A single summand is not.
        let u = &Poly3::var(0) - &Poly3::var(1);
        assert_ne!(u.permute([1, 0, 2]), u);
    }

    #[test]
    fn ode_annihilates_phi3() {
        for p in [4, 5, 7, 8, 10, 11, 13, 14] {
            assert!(hyp_ode_check(p).unwrap(), "p = {p}");
        }
    }

    #[test]
    fn pi_images() {
        for p in [4, 5, 7, 8] {
            let k = (p - 2) as u32;
            let phi = phi3(p).unwrap();
            assert_eq!(phi.specialize_pi(), Poly2::x_minus_y_pow(k));
            let x_plus_y = &Poly2::term(rat(1), 1, 0) - &Poly2::term(rat(-1), 0, 1);
            let expected = (&x_plus_y * &Poly2::x_minus_y_pow(k)).scale(&rat(p - 2));
            assert_eq!(phi.l_op(1).specialize_pi(), expected);
        }
    }

    #[test]
    fn f_j_leading_monomials_and_restrictions() {
        for p in [4, 5, 7] {
            assert_eq!(f_j(p, 0).unwrap(), phi3(p).unwrap());
            for j in 0..=(p - 2) as u32 {
                let f = f_j(p, j).unwrap();
                assert_eq!(
                    f.leading_monomial().unwrap(),
                    [(p - 2) as u32, j, 0],
                    "p={p} j={j}"
                );
                let restricted = f.to_poly3().drop_x3();
                let formula = f_j_restriction_formula(p, j).unwrap();
                assert_eq!(restricted, formula, "p={p} j={j}");
                // The closed prefactor (-1)^j 2^{-j} prod_{i<j}(p-2-i) agrees only for j <= 1.
                let mut short = Rat::one();
                for i in 0..i64::from(j) {
                    short *= ratio(-(p - 2 - i), 2);
                }
                let c = ((p - 2) as u32, j);
                let lead = formula.coeff(c.0, c.1);
                assert_eq!(lead == short, j <= 1, "p={p} j={j}: {lead} vs {short}");
            }
            assert!(f_j(p, (p - 1) as u32).is_err());
        }
    }

    #[test]
    fn qr_examples() {
        // Q_1 is P_1 = m_(1); R_2 = -e_2.
        let qr = qr_reduction(2).unwrap();
        assert_eq!(qr.q, SymPoly3::monomial([1, 0, 0]));
        assert_eq!(qr.r, SymPoly3::monomial([1, 1, 0]).scale(&rat(-1)));
        for m in 2..=6 {
            qr_reduction(m).unwrap();
        }
        for p in [4, 5, 7] {
            for m in [2, 3, 4] {
                assert!(qr_identity_check(p, m).unwrap(), "p={p} m={m}");
                // Without the factor p - 2 the identity fails.
                assert!(!qr_residual(p, m, &rat(1)).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn l12_matches_closed_form() {
        for p in [4, 5, 7, 8, 10, 11, 13, 14] {
            let c = l12_coefficients(p).unwrap();
            assert_eq!(c.a1, power_sum(1).scale(&ratio(2 * (2 * p - 3), 3)));
            let b2 = &SymPoly3::monomial([1, 1, 0]).scale(&rat(-(p - 1)))
                - &power_sum(2).scale(&ratio(p - 3, 3));
            assert_eq!(c.b2, b2.scale(&rat(p - 2)));
        }
    }

    #[test]
    fn nested_identity() {
        for p in [5, 7, 8, 10, 11] {
            assert!(nested_identity_check(p).unwrap(), "p = {p}");
        }
        assert_eq!(nested_constant(7), ratio(-27, 2));
        // k = 0 at p = 4, and both sides vanish.
        let (lhs, rhs) = nested_identity_sides(4).unwrap();
        assert!(lhs.is_zero() && rhs.is_zero());
    }

    #[test]
    fn squarefree() {
        for p in [4, 5, 7, 8, 10, 11, 13, 14] {
            let r = squarefree_report(p).unwrap();
            assert!(r.passed(p), "p = {p}: {r:?}");
        }
    }

    #[test]
    fn coupling_examples() {
        let phi = phi3(4).unwrap();
        assert_eq!(coupling(&phi, [3, 1, 1]).unwrap(), rat(1));
        assert_eq!(coupling(&phi, [2, 2, 1]).unwrap(), rat(-1));
        assert_eq!(coupling(&SymPoly3::one(), [1, 1, 1]).unwrap(), rat(1));
        assert_eq!(coupling(&phi, [3, 3, 3]).unwrap(), rat(0));
        assert!(coupling_strict(&phi, [3, 3, 3]).is_err());
        assert!(coupling(&phi, [3, 1, 0]).is_err());
    }

    #[test]
    fn product_leading_monomials_cover_admissible_triples() {
        for p in [4, 5, 7] {
            for j in 0..=(p - 2) as u32 {
                for (k, l, m) in [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (2, 1, 1)] {
                    let lead = product_leading_monomial(p, j, k, l, m).unwrap();
                    assert_eq!(lead, [(p - 2) as u32 + k + l + m, j + l + m, m]);
                }
            }
        }
    }
}

use num_bigint::BigInt;
use proptest::prelude::*;

use m3p_core::bijection::{compose, decompose, predicted_weight};
use m3p_core::partition::{bounded_partitions, enumerate, gen_function, is_admissible};
use m3p_core::relations::current_product_modes;
use m3p_core::series::{gauss_binomial, pochhammer, pochhammer_inverse};
use m3p_core::sympoly::poly::{ratio, SymPoly3};
use m3p_core::{Bound, QSeries};

const ORDER: usize = 12;

fn series() -> impl Strategy<Value = QSeries> {
    prop::collection::vec(-20i64..20, 0..ORDER).prop_map(|c| QSeries::truncated(c, ORDER))
}

fn level() -> impl Strategy<Value = i64> {
    prop::sample::select(vec![4i64, 5, 7, 8])
}

fn sympoly() -> impl Strategy<Value = SymPoly3> {
    prop::collection::vec(((0u32..4, 0u32..4, 0u32..4), -5i64..5, 1i64..4), 0..4).prop_map(
        |terms| {
            terms
                .into_iter()
                .fold(SymPoly3::zero(), |acc, ((a, b, c), n, d)| {
                    let mut e = [a, b, c];
                    e.sort_unstable_by(|x, y| y.cmp(x));
                    &acc + &SymPoly3::monomial(e).scale(&ratio(n, d))
                })
        },
    )
}

proptest! {
    #[test]
    fn series_ring_axioms(a in series(), b in series(), c in series()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &QSeries::one(ORDER), a.clone());
    }

    #[test]
    fn gauss_binomial_is_palindromic(big_m in 0i64..7, m in 0i64..7) {
        let g = gauss_binomial(big_m, m).unwrap();
        let deg = (big_m * m) as usize;
        prop_assert_eq!(g.degree(), Some(deg));
        for d in 0..=deg {
            prop_assert_eq!(g.coeff(d), g.coeff(deg - d));
        }
    }

    #[test]
    fn gauss_binomial_pascal(big_m in 1i64..7, m in 1i64..7) {
        // [M+m over m] = [M+m-1 over m-1] + q^m [M+m-1 over m].
        let lhs = gauss_binomial(big_m, m).unwrap();
        let rhs = &gauss_binomial(big_m, m - 1).unwrap()
            + &gauss_binomial(big_m - 1, m).unwrap().shift(m as usize);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn box_partitions_match_gauss(big_m in 0u32..6, m in 0usize..5) {
        let mut coeffs = vec![BigInt::from(0); (big_m as usize) * m + 1];
        for mu in bounded_partitions(big_m, m) {
            coeffs[mu.iter().sum::<u32>() as usize] += 1;
        }
        prop_assert_eq!(gauss_binomial(i64::from(big_m), m as i64).unwrap(), QSeries::polynomial(coeffs));
    }

    #[test]
    fn pochhammer_inverse_inverts(m in 0usize..10, order in 1usize..25) {
        let prod = &pochhammer(m) * &pochhammer_inverse(Some(m), order);
        prop_assert_eq!(prod, QSeries::one(order));
    }

    #[test]
    fn gen_function_monotone_in_bound(p in level(), bound in 1i64..8, n in 0usize..5) {
        let small = gen_function(p, Bound::Finite(bound), n, 24).unwrap();
        let large = gen_function(p, Bound::Finite(bound + 1), n, 24).unwrap();
        prop_assert!(small.leq(&large).unwrap());
    }

    #[test]
    fn bijection_round_trip_on_random_members(p in level(), bound in 1i64..9, n in 0usize..6, pick in any::<prop::sample::Index>()) {
        let class = enumerate(p, Bound::Finite(bound), n).unwrap();
        prop_assume!(!class.is_empty());
        let nu = class[pick.index(class.len())].parts().to_vec();
        let dec = decompose(&nu, p, bound).unwrap();
        prop_assert!(is_admissible(dec.lambda.parts(), p - 3, Bound::Infinite));
        let weight: i64 = nu.iter().map(|&x| i64::from(x)).sum();
        prop_assert_eq!(predicted_weight(&dec.lambda, &dec.mu, p), weight);
        prop_assert_eq!(compose(&dec.lambda, &dec.mu, p, bound).unwrap(), nu);
    }

    #[test]
    fn symmetric_product_is_a_commutative_ring(a in sympoly(), b in sympoly(), c in sympoly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(SymPoly3::from_poly3(&a.to_poly3()).unwrap(), a.clone());
    }

    #[test]
    fn current_products_commute(nu in (0u32..4, 0u32..4, 0u32..4), d in 3u32..14) {
        let (a, b, c) = nu;
        let base = current_product_modes([a, b, c], d).unwrap();
        prop_assert_eq!(&current_product_modes([b, c, a], d).unwrap(), &base);
        prop_assert_eq!(&current_product_modes([c, a, b], d).unwrap(), &base);
        prop_assert_eq!(&current_product_modes([b, a, c], d).unwrap(), &base);
    }
}

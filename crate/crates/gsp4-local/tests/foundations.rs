mod common;

use common::*;
use gsp4_local::padic::{iwasawa_gl2, iwasawa_gsp4, val, SchwartzFn, SchwartzTensor, Set1};
use gsp4_local::symcore::{ratfunc_eq, RatFunc};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn ring_axioms(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert!(ratfunc_eq(&(&(&a + &b) + &c), &(&a + &(&b + &c))));
        prop_assert!(ratfunc_eq(&(&a + &b), &(&b + &a)));
        prop_assert!(ratfunc_eq(&(&(&a * &b) * &c), &(&a * &(&b * &c))));
        prop_assert!(ratfunc_eq(&(&a * &b), &(&b * &a)));
        prop_assert!(ratfunc_eq(&(&a * &(&b + &c)), &(&(&a * &b) + &(&a * &c))));
        prop_assert!((&a + &(-&a)).is_zero());
        prop_assert!(ratfunc_eq(&(&a * &RatFunc::one()), &a));
        prop_assert!(ratfunc_eq(&(&a + &RatFunc::zero()), &a));
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn iwasawa_gl2_round_trip((p, g) in primes().prop_flat_map(|p| (Just(p), gl2(p)))) {
        let r = iwasawa_gl2(&g, p);
        prop_assert!(r.b.is_upper_triangular());
        prop_assert!(r.k.is_integral(p) && val(&r.k.det(), p) == Some(0));
        prop_assert_eq!(&r.b * &r.k, g);
    }

    #[test]
    fn iwasawa_gsp4_round_trip((p, g) in primes().prop_flat_map(|p| (Just(p), gsp4(p)))) {
        let r = iwasawa_gsp4(&g, p);
        prop_assert!(r.b.matrix().is_upper_triangular());
        prop_assert!(r.k.in_maximal_compact(p));
        prop_assert_eq!(&r.b * &r.k, g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn fourier_is_an_involution((_p, phi) in small_primes().prop_flat_map(|p| (Just(p), schwartz(p)))) {
        prop_assert_eq!(phi.fourier().fourier(), phi);
    }

    #[test]
    fn action_is_a_homomorphism((_p, phi, g1, g2) in small_primes().prop_flat_map(|p| (Just(p), schwartz(p), gl2_mild(p), gl2_mild(p)))) {
        prop_assert_eq!(phi.act(&g2).act(&g1), phi.act(&(&g1 * &g2)));
    }

    #[test]
    fn tensor_action_is_a_homomorphism((p, h1, h2) in small_primes().prop_flat_map(|p| (Just(p), helt_mild(p), helt_mild(p)))) {
        let phi = SchwartzFn::ch_product(p, &Set1::lattice(1), &Set1::one_plus(1));
        let t = SchwartzTensor::pure(phi.clone(), phi);
        prop_assert!(t.act(&h2).act(&h1).same_function(&t.act(&(&h1 * &h2))));
    }
}

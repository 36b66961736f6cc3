use gsp4_local::branching::*;
use gsp4_local::symcore::{q, Rational};
use proptest::prelude::*;

#[test]
fn full_admissible_grid() {
    for (a, b) in admissible_pairs() {
        let rep = build_rep(a, b).unwrap();
        assert_eq!(rep.dim() as i64, dimension_formula(a, b));
        assert!(rep.brackets_consistent(), "brackets ({a}, {b})");
        branch_decompose_rep(&rep).unwrap();
        assert!(dual_character_check_rep(&rep), "dual ({a}, {b})");
        for q in 0..=a {
            for r in 0..=b {
                hw_vector(a, b, q, r).unwrap();
                for h in [-2, -1, 1, 2] {
                    assert!(twist_lemma_check(a, b, q, r, h).unwrap(), "twist ({a},{b},{q},{r},{h})");
                }
            }
        }
    }
}

#[test]
fn factor_orderings_agree() {
    for (q, r) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        assert_eq!(hw_vector_swapped(1, 1, q, r).unwrap(), hw_vector(1, 1, q, r).unwrap().coords);
    }
}

fn to_svec(x: &[i64]) -> SVec {
    x.iter().enumerate().filter(|(_, c)| **c != 0).map(|(i, c)| (i, q(*c))).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn projection_is_idempotent_and_equivariant(
        x in prop::collection::vec(-3i64..=3, 20),
        ops in prop::collection::vec(0usize..11, 5),
    ) {
        let space = TensorSpace::standard(1, 1);
        let top = Weight::highest(1, 1);
        let x = to_svec(&x);
        let p = cartan_project(&space, &x, top).unwrap();
        prop_assert_eq!(cartan_project(&space, &p, top).unwrap(), p.clone());
        for i in ops {
            let lhs = cartan_project(&space, &space.lie_apply(i, &x), top).unwrap();
            prop_assert_eq!(lhs, space.lie_apply(i, &p));
        }
    }

    #[test]
    fn cartan_product_of_nonzero_vectors_is_nonzero(
        x in prop::collection::vec(-3i64..=3, 5),
        y in prop::collection::vec(-3i64..=3, 4),
    ) {
        prop_assume!(x.iter().any(|c| *c != 0) && y.iter().any(|c| *c != 0));
        let space = TensorSpace::standard(1, 1);
        let parts: Vec<Vec<Rational>> = vec![x.iter().map(|c| q(*c)).collect(), y.iter().map(|c| q(*c)).collect()];
        prop_assert!(!cartan_product(&space, &parts).unwrap().is_empty());
    }
}

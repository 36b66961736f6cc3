use gsp4_local::besselzeta::TameData;
use gsp4_local::normrel::{
    frobrecip_pairing_check, indept_identity, make_local_data, sufficiency_check, wild_coset_identity, RChoice,
    Role, WildFactor,
};

const MN: [(u32, u32); 5] = [(0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];

#[test]
fn sufficiency_grid() {
    for p in [2, 3] {
        for (m, n) in MN {
            let s = sufficiency_check(p, m, n).unwrap();
            println!("p={p} m={m} n={n} t_min={} bound={}", s.t_min, s.bound);
            assert!(s.t_min <= n + 2 * m);
            assert!(s.monotone);
        }
    }
    assert!(sufficiency_check(5, 1, 1).unwrap().t_min <= 3);
    assert!(sufficiency_check(7, 1, 1).is_err());
    assert!(sufficiency_check(3, 2, 1).is_err());
}

#[test]
fn wild_grid() {
    for ell in [2, 3] {
        for (m, n) in MN {
            let r = wild_coset_identity(ell, m, n).unwrap_or_else(|e| panic!("({ell},{m},{n}): {e}"));
            println!("l={ell} m={m} n={n} invariance level {} factor {}", r.invariance_level, r.factor);
            assert_eq!(r.witnesses.len() as u64, ell.pow(3));
            let expected = if m >= 1 { WildFactor::OverEll } else { WildFactor::UMinusOneOverEllMinusOne };
            assert_eq!(r.factor, expected);
            if m == 0 {
                assert_eq!((r.eta_next_terms, r.identity_terms), (ell - 1, 1));
            } else {
                assert_eq!((r.eta_next_terms, r.identity_terms), (ell, 0));
            }
        }
    }
}

#[test]
fn indept_grid() {
    for ell in [2, 3] {
        for t in 1..=3 {
            for big_t in 1..=t {
                let r = indept_identity(ell, big_t, t).unwrap();
                assert!(r.ok(), "({ell},{big_t},{t}): {r:?}");
                assert_eq!(r.j_count, ell.pow(4 * (t - big_t)));
            }
        }
    }
}

#[test]
fn local_data_catalog() {
    for ell in [2, 3, 5, 7] {
        make_local_data(Role::Good, ell).unwrap();
        make_local_data(Role::Tame, ell).unwrap();
    }
    for p in [2, 3] {
        for (m, n) in MN {
            let t = n + 2 * m;
            make_local_data(Role::Wild { m, n, t }, p).unwrap_or_else(|e| panic!("({p},{m},{n},{t}): {e}"));
        }
    }
}

#[test]
fn frobrecip_grid() {
    for (k1, k2) in [(0, 0), (1, 2), (2, 1)] {
        let data = TameData::formal(k1, k2);
        for p in [2, 3, 5] {
            assert!(frobrecip_pairing_check(&data, p, RChoice::Scalar).unwrap().ok);
            assert!(frobrecip_pairing_check(&data, p, RChoice::EulerFactor).unwrap().ok);
            assert!(!frobrecip_pairing_check(&data, p, RChoice::PerturbedEuler).unwrap().ok);
        }
    }
}

use gsp4_local::gl2local::{
    adjointness_sides, eq_at_prime, intertwine, phi_t, IntertwineMode, SiegelSection, UnramChar,
};
use gsp4_local::padic::{gl2_w, lower_unipotent, ppow, QMat, SchwartzFn};
use gsp4_local::symcore::q;

fn test_phis(p: u64) -> [SchwartzFn; 3] {
    [phi_t(p, 0), phi_t(p, 1), SchwartzFn::ch_coset(p, [q(0), q(1)], 1)]
}

fn test_points(p: u64) -> [QMat; 4] {
    [QMat::identity(2), gl2_w(), QMat::diag(&[q(p as i64), q(1)]), lower_unipotent(ppow(p, -1))]
}

#[test]
fn closed_form_matches_direct() {
    let (chi, psi) = (UnramChar::formal("alpha"), UnramChar::formal("beta"));
    for p in [2, 3] {
        for phi in test_phis(p) {
            let f = SiegelSection::new(phi, chi.clone(), psi.clone());
            for g in test_points(p) {
                let c = intertwine(&f, &g, IntertwineMode::ClosedForm).unwrap();
                let d = intertwine(&f, &g, IntertwineMode::Direct { shell_bound: 8 }).unwrap();
                assert!(eq_at_prime(&c, &d, p), "p={p} g={g}\n{c}\n{d}");
            }
        }
    }
}

#[test]
fn intertwining_is_self_adjoint() {
    let (chi, psi) = (UnramChar::formal("alpha"), UnramChar::formal("beta"));
    for p in [2, 3] {
        for phi1 in test_phis(p) {
            for phi2 in test_phis(p) {
                let f1 = SiegelSection::new(phi1.clone(), chi.clone(), psi.clone());
                let f2 = SiegelSection::new(phi2, psi.inv(), chi.inv());
                for mode in [IntertwineMode::ClosedForm, IntertwineMode::Direct { shell_bound: 8 }] {
                    let (l, r) = adjointness_sides(&f1, &f2, 2, mode).unwrap();
                    assert!(eq_at_prime(&l, &r, p), "p={p} {mode:?}\n{l}\n{r}");
                }
            }
        }
    }
}

#[test]
fn adjointness_fails_for_mismatched_characters() {
    let (chi, psi) = (UnramChar::formal("alpha"), UnramChar::formal("beta"));
    let p = 2;
    let f1 = SiegelSection::new(phi_t(p, 1), chi.clone(), psi.clone());
    let f2 = SiegelSection::new(phi_t(p, 0), chi.inv(), psi.inv());
    let (l, r) = adjointness_sides(&f1, &f2, 1, IntertwineMode::ClosedForm).unwrap();
    assert!(!eq_at_prime(&l, &r, p));
}

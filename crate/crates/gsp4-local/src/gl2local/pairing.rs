use super::{intertwine, Gl2Error, IntertwineMode, SiegelSection, X};
use crate::padic::{upow, QMat};
use crate::symcore::{qf, Bindings, RatFunc};

/// Representatives of `B(Z_p) \ GL2(Z_p) / K(p^t)`, i.e. of `P^1(Z/p^t)`,
/// each flagged with membership in `K_0(p^t)`.
pub fn p1_reps(p: u64, t: u32) -> Vec<(QMat, bool)> {
    let m = upow(p, t) as i64;
    let mut out: Vec<(QMat, bool)> =
        (0..m).map(|c| (QMat::from_ints(&[&[1, 0], &[c, 1]]), c == 0)).collect();
    if t > 0 {
        let pi = p as i64;
        out.extend((0..m / pi).map(|d| (QMat::from_ints(&[&[0, 1], &[1, pi * d]]), false)));
    }
    out
}

/// `int_{GL2(Z_p)} F(g) dg` for `F` left-invariant under `B(Z_p)` and right
/// invariant under `K(p^t)`.
pub fn pair_values(
    p: u64,
    t: u32,
    f: impl Fn(&QMat) -> Result<RatFunc, Gl2Error>,
) -> Result<RatFunc, Gl2Error> {
    let reps = p1_reps(p, t);
    let n = reps.len() as i64;
    let mut total = RatFunc::zero();
    for (g, _) in &reps {
        total = &total + &f(g)?;
    }
    Ok(total.scale(&qf(1, n)).specialize_prime(p)?)
}

/// The same integral summed over all of `GL2(Z/p^t)`; for cross-checks.
pub fn pair_values_full(
    p: u64,
    t: u32,
    f: impl Fn(&QMat) -> Result<RatFunc, Gl2Error>,
) -> Result<RatFunc, Gl2Error> {
    let m = upow(p, t) as i64;
    let mut total = RatFunc::zero();
    let mut n = 0i64;
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                for d in 0..m {
                    if (a * d - b * c).rem_euclid(p as i64) != 0 {
                        n += 1;
                        total = &total + &f(&QMat::from_ints(&[&[a, b], &[c, d]]))?;
                    }
                }
            }
        }
    }
    Ok(total.scale(&qf(1, n)).specialize_prime(p)?)
}

/// `<f1, f2>` for `f1` a section of `(chi, psi)` at `s` and `f2` a section of
/// `(chi^{-1}, psi^{-1})` taken at `-s`.
pub fn dual_pairing(f1: &SiegelSection, f2: &SiegelSection, t: u32) -> Result<RatFunc, Gl2Error> {
    let x = RatFunc::var(X);
    let flip: Bindings = [(X.to_string(), x.inv()?)].into_iter().collect();
    pair_values(f1.prime(), t, |g| Ok(&f1.eval(g)? * &f2.eval(g)?.substitute(&flip)?))
}

/// Both sides of `<M f1, f2> = <f1, M f2>` for `f1` a section of `(chi, psi)`
/// and `f2` a section of `(psi^{-1}, chi^{-1})`, at the same `s`.
pub fn adjointness_sides(
    f1: &SiegelSection,
    f2: &SiegelSection,
    t: u32,
    mode: IntertwineMode,
) -> Result<(RatFunc, RatFunc), Gl2Error> {
    let p = f1.prime();
    let lhs = pair_values(p, t, |g| Ok(&intertwine(f1, g, mode)? * &f2.eval(g)?))?;
    let rhs = pair_values(p, t, |g| Ok(&f1.eval(g)? * &intertwine(f2, g, mode)?))?;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gl2local::{eq_at_prime, phi_t, UnramChar};

    #[test]
    fn p1_counts() {
        assert_eq!(p1_reps(2, 1).len(), 3);
        assert_eq!(p1_reps(3, 2).len(), 12);
        assert_eq!(p1_reps(3, 0).len(), 1);
    }

    #[test]
    fn spherical_pairing_is_one() {
        let (a, b) = (UnramChar::formal("alpha"), UnramChar::formal("beta"));
        let f1 = SiegelSection::new(phi_t(2, 0), a.clone(), b.clone());
        let f2 = SiegelSection::new(phi_t(2, 0), a.inv(), b.inv());
        let v = dual_pairing(&f1, &f2, 1).unwrap();
        assert!(eq_at_prime(&v, &RatFunc::one(), 2), "{v}");
    }

    #[test]
    fn quotient_sum_matches_full_sum() {
        let (a, b) = (UnramChar::formal("alpha"), UnramChar::formal("beta"));
        for p in [2, 3] {
            let f1 = SiegelSection::new(phi_t(p, 1), a.clone(), b.clone());
            let f2 = SiegelSection::new(phi_t(p, 0), a.inv(), b.inv());
            let x = RatFunc::var(X);
            let flip: Bindings = [(X.to_string(), x.inv().unwrap())].into_iter().collect();
            let f = |g: &QMat| Ok(&f1.eval(g)? * &f2.eval(g)?.substitute(&flip)?);
            let fast = pair_values(p, 1, f).unwrap();
            let full = pair_values_full(p, 1, f).unwrap();
            assert!(eq_at_prime(&fast, &full, p));
            let deeper = dual_pairing(&f1, &f2, 2).unwrap();
            assert!(eq_at_prime(&fast, &deeper, p));
        }
    }

    #[test]
    fn adjointness_spherical_and_level_one() {
        use crate::padic::SchwartzFn;
        use crate::symcore::q;
        let (a, b) = (UnramChar::formal("alpha"), UnramChar::formal("beta"));
        for p in [2, 3] {
            let phis = [phi_t(p, 0), phi_t(p, 1), SchwartzFn::ch_coset(p, [q(0), q(1)], 1)];
            for (phi1, phi2) in phis.iter().zip(phis.iter().rev()) {
                let f1 = SiegelSection::new(phi1.clone(), a.clone(), b.clone());
                let f2 = SiegelSection::new(phi2.clone(), b.inv(), a.inv());
                let (l, r) = adjointness_sides(&f1, &f2, 1, IntertwineMode::ClosedForm).unwrap();
                assert!(eq_at_prime(&l, &r, p), "p={p}\n{l}\n{r}");
            }
        }
    }
}

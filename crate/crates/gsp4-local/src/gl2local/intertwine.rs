use num_traits::One;

use super::section::{tate_value, TateValue};
use super::{Gl2Error, SiegelSection};
use crate::padic::{gl2_w, ppow, upow, QMat};
use crate::symcore::{q, RatFunc, Rational};

/// Evaluation strategy for the intertwining operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntertwineMode {
    /// `M f_{phi,chi,psi} = L(chi/psi, 1)^{-1} f_{hat phi, psi, chi}` (unramified, `eps = 1`).
    ClosedForm,
    /// Shell-by-shell evaluation of `L(chi/psi, 2s)^{-1} int f_s(w n(x) g) dx`.
    Direct { shell_bound: i64 },
}

/// `M(f_s; g)` as a rational function of `X = l^{-s}`.
pub fn intertwine(f: &SiegelSection, g: &QMat, mode: IntertwineMode) -> Result<RatFunc, Gl2Error> {
    let p = f.prime();
    let (a, b) = f.shifted_values();
    match mode {
        IntertwineMode::ClosedForm => {
            let ell = RatFunc::constant(q(p as i64));
            let pre = &RatFunc::one() - &(&(&a / &b) / &ell);
            let v = tate_value(&f.phi.fourier(), g)?.to_ratfunc(&b, &a, p)?;
            Ok((&pre * &v).specialize_prime(p)?)
        }
        IntertwineMode::Direct { shell_bound } => direct(f, g, shell_bound, &a, &b),
    }
}

fn wn(x: &Rational, g: &QMat) -> QMat {
    let n = QMat::from_rows(vec![vec![q(1), x.clone()], vec![q(0), q(1)]]);
    &(&gl2_w() * &n) * g
}

/// Sum of `vol * f(w n(p^{-j} u) g)` over `u` mod `modulus`, restricted to
/// units when `units` is set.
fn coset_sum(
    f: &SiegelSection,
    g: &QMat,
    j: i64,
    modulus: u64,
    units: bool,
    vol: &Rational,
) -> Result<TateValue, Gl2Error> {
    let p = f.prime();
    let mut out = TateValue::default();
    let scale = ppow(p, -j);
    for u in (0..modulus).filter(|u| !units || u % p != 0) {
        let x = &scale * q(u as i64);
        out.add_scaled(&tate_value(&f.phi, &wn(&x, g))?, vol);
    }
    Ok(out)
}

fn direct(f: &SiegelSection, g: &QMat, bound: i64, a: &RatFunc, b: &RatFunc) -> Result<RatFunc, Gl2Error> {
    let p = f.prime();
    let gi = g.inverse().ok_or(Gl2Error::Singular)?;
    // `x -> f(w n(x) g)` is invariant under `p^m Z_p`.
    let m = f.phi.level() + f.phi.scale() - g.min_val(p).unwrap() - gi.min_val(p).unwrap();
    let c0 = m.max(0);
    let mut total = coset_sum(f, g, 0, upow(p, c0 as u32), false, &ppow(p, -c0))?;
    let big_j = m.max(1);
    if big_j > bound {
        return Err(Gl2Error::ShellBound);
    }
    // Beyond `big_j` each shell is `(1 - 1/p) (a/b)^j f(g)`; three shells are
    // computed directly to confirm it before summing the tail.
    let fg = tate_value(&f.phi, g)?;
    let r = a / b;
    let ell = RatFunc::constant(q(p as i64));
    let shell_factor = &RatFunc::one() - &ell.inv()?;
    let fg_val = fg.to_ratfunc(a, b, p)?;
    for j in 1..=big_j + 2 {
        let cj = m.max(1 - j);
        let shell = coset_sum(f, g, j, upow(p, (cj + j) as u32), true, &ppow(p, -cj))?;
        if j >= big_j {
            let predicted = &(&shell_factor * &r.pow(j as i32)?) * &fg_val;
            let got = shell.to_ratfunc(a, b, p)?;
            if !(&got - &predicted).specialize_prime(p)?.is_zero() {
                return Err(Gl2Error::ShellBound);
            }
        }
        total.add_scaled(&shell, &Rational::one());
    }
    let head = total.to_ratfunc(a, b, p)?;
    let one_minus_r = &RatFunc::one() - &r;
    let tail = &(&(&shell_factor * &r.pow(big_j as i32 + 3)?) * &fg_val) / &one_minus_r;
    let value = &one_minus_r * &(&head + &tail);
    Ok(value.specialize_prime(p)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gl2local::{eq_at_prime, phi_t, UnramChar};
    use crate::padic::{lower_unipotent, SchwartzFn};
    use crate::symcore::qf;

    #[test]
    fn closed_form_matches_direct_small() {
        let (chi, psi) = (UnramChar::formal("alpha"), UnramChar::formal("beta"));
        let p = 2;
        for phi in [phi_t(p, 0), phi_t(p, 1), SchwartzFn::ch_coset(p, [q(0), q(1)], 1)] {
            let f = SiegelSection::new(phi, chi.clone(), psi.clone());
            for g in [QMat::identity(2), gl2_w(), QMat::from_ints(&[&[2, 0], &[0, 1]]), lower_unipotent(qf(1, 2))] {
                let c = intertwine(&f, &g, IntertwineMode::ClosedForm).unwrap();
                let d = intertwine(&f, &g, IntertwineMode::Direct { shell_bound: 8 }).unwrap();
                assert!(eq_at_prime(&c, &d, p), "g = {g}\nclosed {c}\ndirect {d}");
            }
        }
    }
}

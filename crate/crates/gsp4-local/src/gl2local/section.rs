use std::collections::BTreeMap;

use num_traits::Zero;

use super::{p1_reps, Gl2Error, UnramChar, X};
use crate::padic::{ppow, upow, val, CycloQ, HElt, QMat, SchwartzFn, SchwartzTensor, Set1};
use crate::symcore::{q, RatFunc, Rational};

type Coeffs = BTreeMap<i64, Rational>;

/// Value of the Tate integral `f_{phi,chi,psi}(g, s)` kept as rational data
/// before the characters are substituted:
/// `sum_d a^d l^{-d/2} (1 - z) [sum_n c_{d,n} z^n + sum_N t_{d,N} z^N / (1 - z)]`
/// with `z = (a/b)/l`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct TateValue {
    terms: BTreeMap<i64, (Coeffs, Coeffs)>,
}

impl TateValue {
    pub(crate) fn add_scaled(&mut self, o: &TateValue, c: &Rational) {
        for (d, (poly, tail)) in &o.terms {
            let e = self.terms.entry(*d).or_default();
            for (n, x) in poly {
                *e.0.entry(*n).or_insert_with(Rational::zero) += x * c;
            }
            for (n, x) in tail {
                *e.1.entry(*n).or_insert_with(Rational::zero) += x * c;
            }
        }
    }

    /// Substitutes `chi(l) = a`, `psi(l) = b` at the concrete prime `p`.
    pub(crate) fn to_ratfunc(&self, a: &RatFunc, b: &RatFunc, p: u64) -> Result<RatFunc, Gl2Error> {
        let z = &(a / b) / &RatFunc::constant(q(p as i64));
        let one_minus = &RatFunc::one() - &z;
        let mut total = RatFunc::zero();
        for (d, (poly, tail)) in &self.terms {
            let mut s = RatFunc::zero();
            for (n, c) in poly.iter().filter(|(_, c)| !c.is_zero()) {
                s = &s + &z.pow(*n as i32)?.scale(c);
            }
            let mut t = RatFunc::zero();
            for (n, c) in tail.iter().filter(|(_, c)| !c.is_zero()) {
                t = &t + &z.pow(*n as i32)?.scale(c);
            }
            let inner = &(&s * &one_minus) + &t;
            let pre = &a.pow(*d as i32)? * &RatFunc::sqrt_ell_pow(-*d as i32);
            total = &total + &(&pre * &inner);
        }
        Ok(total.specialize_prime(p)?)
    }
}

fn rational_value(x: CycloQ) -> Result<Rational, Gl2Error> {
    x.as_rational().ok_or_else(|| Gl2Error::Irrational(x.to_string()))
}

/// Tate integral of `phi((0, x) g)` over `x` in Q_p^x, as rational data.
pub(crate) fn tate_value(phi: &SchwartzFn, g: &QMat) -> Result<TateValue, Gl2Error> {
    let p = phi.prime();
    let det = g.det();
    let d = val(&det, p).ok_or(Gl2Error::Singular)?;
    let mut out = TateValue::default();
    if phi.is_zero() {
        return Ok(out);
    }
    let r = [g.get(1, 0).clone(), g.get(1, 1).clone()];
    let vr = r.iter().filter_map(|x| val(x, p)).min().ok_or(Gl2Error::Singular)?;
    let (nphi, sphi) = (phi.level(), phi.scale());
    let (nlo, nhi) = (-sphi - vr, nphi - vr);
    let entry = out.terms.entry(d).or_default();
    for n in nlo..nhi {
        let k = (nphi - n - vr) as u32;
        let m = upow(p, k);
        let pn = ppow(p, n);
        let mut acc = CycloQ::zero();
        let mut count = 0u64;
        for u in (1..m).filter(|u| u % p != 0) {
            let uq = &pn * q(u as i64);
            acc = &acc + &phi.eval(&[&r[0] * &uq, &r[1] * &uq]);
            count += 1;
        }
        let avg = rational_value(acc)? / q(count as i64);
        if !avg.is_zero() {
            entry.0.insert(n, avg);
        }
    }
    let phi0 = rational_value(phi.eval(&[Rational::zero(), Rational::zero()]))?;
    if !phi0.is_zero() {
        entry.1.insert(nhi, phi0);
    }
    Ok(out)
}

/// The section `f_{phi, chi, psi}(-, s)` of `I(chi|.|^s, psi|.|^{-s})`.
#[derive(Clone, Debug)]
pub struct SiegelSection {
    pub phi: SchwartzFn,
    pub chi: UnramChar,
    pub psi: UnramChar,
}

impl SiegelSection {
    pub fn new(phi: SchwartzFn, chi: UnramChar, psi: UnramChar) -> SiegelSection {
        SiegelSection { phi, chi, psi }
    }

    pub fn prime(&self) -> u64 {
        self.phi.prime()
    }

    /// `chi_s(l) = chi(l) X` and `psi_s(l) = psi(l) / X`.
    pub(crate) fn shifted_values(&self) -> (RatFunc, RatFunc) {
        let x = RatFunc::var(X);
        (&self.chi.at_ell() * &x, &self.psi.at_ell() / &x)
    }

    /// `f(g, s)` as a rational function of `X = l^{-s}`.
    pub fn eval(&self, g: &QMat) -> Result<RatFunc, Gl2Error> {
        let (a, b) = self.shifted_values();
        tate_value(&self.phi, g)?.to_ratfunc(&a, &b, self.prime())
    }

    /// Section attached to `g . phi`.
    pub fn translate(&self, g: &QMat) -> SiegelSection {
        SiegelSection { phi: self.phi.act(g), chi: self.chi.clone(), psi: self.psi.clone() }
    }
}

/// `phi_0 = ch(Z_p^2)` and `phi_t = ch(p^t Z_p) ch(Z_p^x)` for `t > 0`.
pub fn phi_t(p: u64, t: i64) -> SchwartzFn {
    if t == 0 {
        SchwartzFn::ch_product(p, &Set1::lattice(0), &Set1::lattice(0))
    } else {
        SchwartzFn::ch_product(p, &Set1::lattice(t), &Set1::Units { k: 0 })
    }
}

/// Whether `f` vanishes at every point of `GL2(Z_p)` outside `B K_0(p^t)`,
/// tested on representatives of `P^1(Z/p^t)`.
pub fn support_check(f: &SiegelSection, t: u32) -> Result<bool, Gl2Error> {
    for (g, in_k0) in p1_reps(f.prime(), t) {
        if !in_k0 && !f.eval(&g)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `sum_i f_{phi_i1} (h_1) f_{phi_i2}(h_2)` for `phi = sum_i c_i phi_i1 (x) phi_i2`.
pub fn h_section_value(
    phi: &SchwartzTensor,
    chi: (&UnramChar, &UnramChar),
    psi: (&UnramChar, &UnramChar),
    h: &HElt,
) -> Result<RatFunc, Gl2Error> {
    let mut total = RatFunc::zero();
    for (c, a, b) in phi.terms() {
        let f1 = SiegelSection::new(a.clone(), chi.0.clone(), psi.0.clone()).eval(&h.h1)?;
        let f2 = SiegelSection::new(b.clone(), chi.1.clone(), psi.1.clone()).eval(&h.h2)?;
        total = &total + &(&f1 * &f2).scale(c);
    }
    Ok(total.specialize_prime(phi.prime())?)
}

/// Subsets of Q_l with formal `l` used for Tate integrals at the identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StdSet {
    /// `l^k Z_l`.
    Lattice(i64),
    /// `l^k Z_l^x`.
    Shell(i64),
    /// `1 + l^k Z_l`, `k >= 1`.
    OnePlus(i64),
}

impl StdSet {
    pub fn to_set1(self) -> Set1 {
        match self {
            StdSet::Lattice(k) => Set1::lattice(k),
            StdSet::Shell(k) => Set1::Units { k },
            StdSet::OnePlus(k) => Set1::one_plus(k),
        }
    }

    fn contains_zero(self) -> bool {
        matches!(self, StdSet::Lattice(_))
    }
}

/// `f_{ch(A) ch(B), chi, psi}(1, s)` with `l` formal, where `chi_s(l) = a`
/// and `psi_s(l) = b` already include the `s`-twist.
pub fn tate_at_identity(sa: StdSet, sb: StdSet, a: &RatFunc, b: &RatFunc) -> Result<RatFunc, Gl2Error> {
    if !sa.contains_zero() {
        return Ok(RatFunc::zero());
    }
    let ell = RatFunc::ell();
    let z = &(a / b) / &ell;
    let one_minus = &RatFunc::one() - &z;
    let integral = match sb {
        StdSet::Lattice(k) => &z.pow(k as i32)? / &one_minus,
        StdSet::Shell(k) => z.pow(k as i32)?,
        StdSet::OnePlus(k) => {
            assert!(k >= 1, "1 + l^k Z_l needs k >= 1");
            (&ell.pow(k as i32 - 1)? * &(&ell - &RatFunc::one())).inv()?
        }
    };
    Ok(&one_minus * &integral)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gl2local::{eq_at_prime, l_factor};
    use crate::padic::gl2_w;

    fn chars() -> (UnramChar, UnramChar) {
        (UnramChar::formal("alpha"), UnramChar::formal("beta"))
    }

    #[test]
    fn phi_t_values_at_identity() {
        let (chi, psi) = chars();
        let x2 = RatFunc::var(X).pow(2).unwrap();
        let ratio = UnramChar::new(&chi.div(&psi).at_ell() * &x2).unwrap();
        let linv = l_factor(&ratio, 2).inv().unwrap();
        for p in [2, 3] {
            let f0 = SiegelSection::new(phi_t(p, 0), chi.clone(), psi.clone());
            assert!(eq_at_prime(&f0.eval(&QMat::identity(2)).unwrap(), &RatFunc::one(), p));
            for t in 1..=3 {
                let f = SiegelSection::new(phi_t(p, t), chi.clone(), psi.clone());
                let v = f.eval(&QMat::identity(2)).unwrap();
                assert!(eq_at_prime(&v, &linv.specialize_prime(p).unwrap(), p), "p={p} t={t}: {v}");
                assert!(f.eval(&gl2_w()).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn formal_identity_values_match_concrete() {
        let (chi, psi) = chars();
        let f = SiegelSection::new(phi_t(3, 0), chi.clone(), psi.clone());
        let (a, b) = f.shifted_values();
        let sets = [StdSet::Lattice(0), StdSet::Lattice(2), StdSet::Shell(1), StdSet::OnePlus(1), StdSet::OnePlus(2)];
        for p in [2, 3] {
            for sa in sets {
                for sb in sets {
                    let phi = SchwartzFn::ch_product(p, &sa.to_set1(), &sb.to_set1());
                    let f = SiegelSection::new(phi, chi.clone(), psi.clone());
                    let direct = f.eval(&QMat::identity(2)).unwrap();
                    let formal = tate_at_identity(sa, sb, &a, &b).unwrap();
                    assert!(eq_at_prime(&direct, &formal, p), "{sa:?} {sb:?} p={p}");
                }
            }
        }
    }
}

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::gcd::{gcd, IPoly};
use super::laurent::forward_owned;
use super::{LaurentPoly, Mono, Rational, Sym, SymError, ELL, V};

/// Symbol bindings for [`RatFunc::substitute`].
pub type Bindings = BTreeMap<String, RatFunc>;

/// Reduced quotient of Laurent polynomials.
///
/// Canonical form: the denominator is an integer polynomial with content 1,
/// a positive leading coefficient and no monomial factor, so structural
/// equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

/// Unfolded variable frame: every symbol except `ell`, which lives in `v`.
fn frame(polys: &[&LaurentPoly]) -> Vec<Sym> {
    let mut vars: Vec<Sym> = polys
        .iter()
        .flat_map(|p| p.symbols())
        .map(|s| if s.is_ell() { Sym::v() } else { s })
        .collect();
    vars.sort();
    vars.dedup();
    vars
}

/// Writes `p = k * x^shift * I` with `I` an integer polynomial whose
/// minimal exponents are all zero.
fn to_ipoly(p: &LaurentPoly, vars: &[Sym]) -> (IPoly, Vec<i64>, Rational) {
    let n = vars.len();
    let mut l = BigInt::one();
    for (_, c) in p.terms() {
        l = l.lcm(c.denom());
    }
    let raw: Vec<(Vec<i64>, BigInt)> = p
        .terms()
        .map(|(m, c)| {
            let mut e = vec![0i64; n];
            for (s, x) in m.unfolded() {
                let i = vars.binary_search(&s).expect("symbol in frame");
                e[i] = x;
            }
            (e, (c * Rational::from_integer(l.clone())).to_integer())
        })
        .collect();
    let mut shift = vec![i64::MAX; n];
    for (e, _) in &raw {
        for (a, b) in shift.iter_mut().zip(e) {
            *a = (*a).min(*b);
        }
    }
    let ip = IPoly::from_terms(
        n,
        raw.into_iter().map(|(e, c)| {
            (e.iter().zip(&shift).map(|(a, b)| (a - b) as u32).collect(), c)
        }),
    );
    (ip, shift, Rational::new(BigInt::one(), l))
}

fn from_ipoly(p: &IPoly, vars: &[Sym], shift: &[i64], k: &Rational) -> LaurentPoly {
    LaurentPoly::from_terms(p.terms().map(|(e, c)| {
        let m = Mono::from_pairs(
            vars.iter()
                .zip(e.iter().zip(shift))
                .map(|(s, (a, b))| (s.clone(), (*a as i64 + b) as i32)),
        );
        (m, k * Rational::from_integer(c.clone()))
    }))
}

impl RatFunc {
    /// Canonical reduced form of `num / den`.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<RatFunc, SymError> {
        if den.is_zero() {
            return Err(SymError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        if let Some((m, c)) = den.as_monomial() {
            let num = num.mul_mono(&m.inv()).scale(&c.recip());
            return Ok(RatFunc { num, den: LaurentPoly::one() });
        }
        let vars = frame(&[&num, &den]);
        let (mut n, sn, kn) = to_ipoly(&num, &vars);
        let (mut d, sd, kd) = to_ipoly(&den, &vars);
        if n.len() > 1 {
            let g = gcd(&n, &d);
            if !g.is_one() {
                n = n.div_exact(&g).expect("gcd divides numerator");
                d = d.div_exact(&g).expect("gcd divides denominator");
            }
        }
        let (cn, cd) = (n.int_content(), d.int_content());
        n = n.scale_div(&cn);
        d = d.scale_div(&cd);
        let mut k = kn * Rational::new(cn, cd) / kd;
        if d.lead_is_negative() {
            d = d.sign_normalized();
            k = -k;
        }
        let shift: Vec<i64> = sn.iter().zip(&sd).map(|(a, b)| a - b).collect();
        let zeros = vec![0i64; vars.len()];
        let dmin = d.min_exps();
        let d = d.shift_down(&dmin);
        let shift: Vec<i64> = shift.iter().zip(&dmin).map(|(a, b)| a - *b as i64).collect();
        Ok(RatFunc {
            num: from_ipoly(&n, &vars, &shift, &k),
            den: from_ipoly(&d, &vars, &zeros, &Rational::one()),
        })
    }

    pub fn zero() -> RatFunc {
        RatFunc { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> RatFunc {
        RatFunc::from_poly(LaurentPoly::one())
    }

    pub fn from_poly(p: LaurentPoly) -> RatFunc {
        RatFunc { num: p, den: LaurentPoly::one() }
    }

    pub fn constant(c: Rational) -> RatFunc {
        RatFunc::from_poly(LaurentPoly::constant(c))
    }

    pub fn int(n: i64) -> RatFunc {
        RatFunc::constant(Rational::from_integer(BigInt::from(n)))
    }

    pub fn var(name: &str) -> RatFunc {
        RatFunc::from_poly(LaurentPoly::var(name))
    }

    /// `ell^(e/2)`, i.e. `v^e`.
    pub fn sqrt_ell_pow(e: i32) -> RatFunc {
        RatFunc::from_poly(LaurentPoly::monomial(&[(V, e)]))
    }

    pub fn ell() -> RatFunc {
        RatFunc::var(ELL)
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.as_constant().is_some() && self.num.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn as_constant(&self) -> Option<Rational> {
        Some(self.num.as_constant()? / self.den.as_constant()?)
    }

    pub fn inv(&self) -> Result<RatFunc, SymError> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, o: &RatFunc) -> Result<RatFunc, SymError> {
        if o.is_zero() {
            return Err(SymError::DivisionByZero);
        }
        RatFunc::new(&self.num * &o.den, &self.den * &o.num)
    }

    pub fn pow(&self, e: i32) -> Result<RatFunc, SymError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(RatFunc { num: base.num.pow(k), den: base.den.pow(k) }.renormalized())
    }

    fn renormalized(self) -> RatFunc {
        if self.den.as_constant().is_some_and(|c| c.is_one()) {
            return self;
        }
        RatFunc::new(self.num, self.den).expect("nonzero denominator")
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Ring homomorphism sending each bound symbol to its value.
    ///
    /// Binding `v` implicitly binds `ell` to its square. Binding `ell` alone
    /// is rejected when an odd power of `v` is present.
    pub fn substitute(&self, bindings: &Bindings) -> Result<RatFunc, SymError> {
        let mut b = bindings.clone();
        if let Some(rv) = b.get(V).cloned() {
            let sq = &rv * &rv;
            match b.get(ELL) {
                Some(rl) if !ratfunc_eq(rl, &sq) => {
                    return Err(SymError::InconsistentBinding(format!(
                        "v = {rv} but ell = {rl}"
                    )))
                }
                _ => {
                    b.insert(ELL.to_string(), sq);
                }
            }
        }
        let n = subst_poly(&self.num, &b)?;
        let d = subst_poly(&self.den, &b)?;
        if d.is_zero() {
            return Err(SymError::SpecializationPole);
        }
        n.checked_div(&d)
    }

    /// Sends `ell` to the concrete prime `p`, keeping `v` as `sqrt(p)`.
    ///
    /// The result lives in `Q(sqrt p)(...)`: the denominator is made free of
    /// `v`, so the representation is again canonical there. Products of
    /// specialized values must be specialized again.
    pub fn specialize_prime(&self, p: u64) -> Result<RatFunc, SymError> {
        let pr = Rational::from_integer(BigInt::from(p));
        let n = spec_poly(&self.num, &pr);
        let d = spec_poly(&self.den, &pr);
        let (a, b) = split_v(&d);
        if b.is_zero() {
            if a.is_zero() {
                return Err(SymError::SpecializationPole);
            }
            return RatFunc::new(n, a);
        }
        let conj = &a - &(&b * &LaurentPoly::var(V));
        let d2 = spec_poly(&(&d * &conj), &pr);
        if d2.is_zero() {
            return Err(SymError::SpecializationPole);
        }
        RatFunc::new(spec_poly(&(&n * &conj), &pr), d2)
    }

    /// Symbols occurring in numerator or denominator.
    pub fn symbols(&self) -> std::collections::BTreeSet<Sym> {
        let mut s = self.num.symbols();
        s.extend(self.den.symbols());
        s
    }
}

/// Splits `p = a + b*v` with `a`, `b` free of `v`.
fn split_v(p: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
    let mut a = LaurentPoly::zero();
    let mut b = LaurentPoly::zero();
    for (m, c) in p.terms() {
        if m.exponent(V) == 0 {
            a.add_term(m.clone(), c.clone());
        } else {
            let rest = Mono::from_pairs(m.iter().filter(|(s, _)| !s.is_v()).cloned());
            b.add_term(rest, c.clone());
        }
    }
    (a, b)
}

fn spec_poly(p: &LaurentPoly, prime: &Rational) -> LaurentPoly {
    LaurentPoly::from_terms(p.terms().map(|(m, c)| {
        let e = m.exponent(ELL);
        let rest = Mono::from_pairs(m.iter().filter(|(s, _)| !s.is_ell()).cloned());
        let f = if e >= 0 {
            num_traits::pow(prime.clone(), e as usize)
        } else {
            num_traits::pow(prime.recip(), (-e) as usize)
        };
        (rest, c * f)
    }))
}

fn subst_poly(p: &LaurentPoly, b: &Bindings) -> Result<RatFunc, SymError> {
    let mut acc = RatFunc::zero();
    let odd_v_unbound = b.contains_key(ELL) && !b.contains_key(V);
    for (m, c) in p.terms() {
        let mut t = RatFunc::constant(c.clone());
        let mut rest: Vec<(Sym, i32)> = Vec::new();
        for (s, e) in m.iter() {
            if s.is_v() && odd_v_unbound {
                return Err(SymError::InconsistentBinding(
                    "ell bound while an odd power of v remains".into(),
                ));
            }
            match b.get(s.name()) {
                Some(val) => {
                    if val.is_zero() && *e < 0 {
                        return Err(SymError::SpecializationPole);
                    }
                    t = &t * &val.pow(*e)?;
                }
                None => rest.push((s.clone(), *e)),
            }
        }
        if !rest.is_empty() {
            t = &t * &RatFunc::from_poly(LaurentPoly::term(Mono::from_pairs(rest), Rational::one()));
        }
        acc = &acc + &t;
    }
    Ok(acc)
}

/// Equality by cross-multiplication.
pub fn ratfunc_eq(f: &RatFunc, g: &RatFunc) -> bool {
    &f.num * &g.den == &g.num * &f.den
}

impl From<i64> for RatFunc {
    fn from(n: i64) -> RatFunc {
        RatFunc::int(n)
    }
}

impl From<Rational> for RatFunc {
    fn from(c: Rational) -> RatFunc {
        RatFunc::constant(c)
    }
}

impl From<LaurentPoly> for RatFunc {
    fn from(p: LaurentPoly) -> RatFunc {
        RatFunc::from_poly(p)
    }
}

fn is_unit_den(p: &LaurentPoly) -> bool {
    p.as_constant().is_some_and(|c| c.is_one())
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if is_unit_den(&self.den) && is_unit_den(&o.den) {
            return RatFunc::from_poly(&self.num + &o.num);
        }
        if self.den == o.den {
            return RatFunc::new(&self.num + &o.num, self.den.clone()).unwrap();
        }
        RatFunc::new(&self.num * &o.den + &o.num * &self.den, &self.den * &o.den).unwrap()
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        if is_unit_den(&self.den) && is_unit_den(&o.den) {
            return RatFunc::from_poly(&self.num * &o.num);
        }
        RatFunc::new(&self.num * &o.num, &self.den * &o.den).unwrap()
    }
}

/// Panics on division by zero; see [`RatFunc::checked_div`].
impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, o: &RatFunc) -> RatFunc {
        self.checked_div(o).expect("division by zero")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

forward_owned!(RatFunc, Add add, Sub sub, Mul mul, Div div);

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if is_unit_den(&self.den) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::iter::Sum for RatFunc {
    fn sum<I: Iterator<Item = RatFunc>>(iter: I) -> RatFunc {
        iter.fold(RatFunc::zero(), |a, b| &a + &b)
    }
}

impl std::iter::Product for RatFunc {
    fn product<I: Iterator<Item = RatFunc>>(iter: I) -> RatFunc {
        iter.fold(RatFunc::one(), |a, b| &a * &b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::q;

    fn x() -> LaurentPoly {
        LaurentPoly::var("x")
    }

    #[test]
    fn cancels_common_factor() {
        let one = LaurentPoly::one();
        let f = RatFunc::new(&x() * &x() - one.clone(), &x() - &one).unwrap();
        assert_eq!(f, RatFunc::from_poly(&x() + &one));
    }

    #[test]
    fn v_squared_over_ell_is_one() {
        let v = LaurentPoly::var("v");
        let f = RatFunc::new(&v * &v, LaurentPoly::var("ell")).unwrap();
        assert!(f.is_one());
    }

    #[test]
    fn zero_numerator() {
        let f = RatFunc::new(LaurentPoly::zero(), x()).unwrap();
        assert_eq!(f, RatFunc::zero());
        assert_eq!(RatFunc::new(x(), LaurentPoly::zero()), Err(SymError::DivisionByZero));
    }

    #[test]
    fn eq_by_cross_multiplication() {
        let t = RatFunc::var("t");
        let one = RatFunc::one();
        let a = &one / &(&one - &t);
        let b = &(&one + &t) / &(&one - &(&t * &t));
        assert!(ratfunc_eq(&a, &b));
        assert_eq!(a, b);
        assert!(!ratfunc_eq(&t, &(&t + &RatFunc::ell())));
        let v4 = RatFunc::sqrt_ell_pow(4);
        assert!(ratfunc_eq(&v4, &RatFunc::ell().pow(2).unwrap()));
    }

    #[test]
    fn substitution() {
        let t = RatFunc::var("t");
        let f = &RatFunc::one() / &(&RatFunc::one() - &(&RatFunc::ell() * &t));
        let mut b = Bindings::new();
        b.insert(ELL.into(), RatFunc::int(2));
        let g = f.substitute(&b).unwrap();
        let expect = &RatFunc::one() / &(&RatFunc::one() - &(&RatFunc::int(2) * &t));
        assert_eq!(g, expect);
        assert_eq!(f.substitute(&Bindings::new()).unwrap(), f);

        let v = RatFunc::var("v");
        let mut b = Bindings::new();
        b.insert(ELL.into(), RatFunc::int(4));
        assert!(matches!(v.substitute(&b), Err(SymError::InconsistentBinding(_))));
        b.insert(V.into(), RatFunc::int(2));
        assert_eq!(v.substitute(&b).unwrap(), RatFunc::int(2));
    }

    #[test]
    fn specialization_pole() {
        let f = &RatFunc::one() / &(&RatFunc::ell() - &RatFunc::int(2));
        let mut b = Bindings::new();
        b.insert(ELL.into(), RatFunc::int(2));
        assert_eq!(f.substitute(&b), Err(SymError::SpecializationPole));
    }

    #[test]
    fn prime_specialization_rationalizes() {
        // 1 / (1 + v) at ell = 2 is (v - 1) / 1.
        let f = &RatFunc::one() / &(&RatFunc::one() + &RatFunc::var("v"));
        let g = f.specialize_prime(2).unwrap();
        assert_eq!(g, &RatFunc::var("v") - &RatFunc::one());
        let h = (&RatFunc::var("v") * &RatFunc::var("v")).specialize_prime(3).unwrap();
        assert_eq!(h.as_constant(), Some(q(3)));
    }

    #[test]
    fn laurent_monomials_are_units() {
        let y = LaurentPoly::var("y");
        let f = RatFunc::new(&x() * &y, &(&x() * &x()) * &y).unwrap();
        assert_eq!(f, RatFunc::from_poly(LaurentPoly::monomial(&[("x", -1)])));
    }
}

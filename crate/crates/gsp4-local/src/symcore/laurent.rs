use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{Rational, Sym};

/// A Laurent monomial: sorted `(symbol, exponent)` pairs with nonzero
/// exponents. The exponent of `v` is always 0 or 1; even powers are folded
/// into `ell`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Mono(Vec<(Sym, i32)>);

impl Mono {
    pub fn one() -> Mono {
        Mono(Vec::new())
    }

    pub fn var(s: Sym, e: i32) -> Mono {
        if e == 0 {
            return Mono::one();
        }
        Mono(vec![(s, e)]).fold()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, name: &str) -> i32 {
        self.0
            .iter()
            .find(|(s, _)| s.name() == name)
            .map_or(0, |(_, e)| *e)
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Sym, i32)> {
        self.0.iter()
    }

    /// Builds a monomial from arbitrary pairs, merging repeats and folding `v`.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Sym, i32)>) -> Mono {
        let mut m: BTreeMap<Sym, i32> = BTreeMap::new();
        for (s, e) in pairs {
            *m.entry(s).or_insert(0) += e;
        }
        Mono(m.into_iter().filter(|(_, e)| *e != 0).collect()).fold()
    }

    fn fold(mut self) -> Mono {
        let Some(pos) = self.0.iter().position(|(s, _)| s.is_v()) else {
            return self;
        };
        let e = self.0[pos].1;
        let (carry, rem) = (e.div_euclid(2), e.rem_euclid(2));
        if carry == 0 {
            return self;
        }
        if rem == 0 {
            self.0.remove(pos);
        } else {
            self.0[pos].1 = rem;
        }
        match self.0.iter().position(|(s, _)| s.is_ell()) {
            Some(i) => {
                self.0[i].1 += carry;
                if self.0[i].1 == 0 {
                    self.0.remove(i);
                }
            }
            None => {
                let i = self.0.partition_point(|(s, _)| s.name() < super::ELL);
                self.0.insert(i, (Sym::ell(), carry));
            }
        }
        self
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, b) = (&self.0[i], &other.0[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => {
                    out.push(a.clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b.clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    if a.1 + b.1 != 0 {
                        out.push((a.0.clone(), a.1 + b.1));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Mono(out).fold()
    }

    pub fn pow(&self, e: i32) -> Mono {
        if e == 0 {
            return Mono::one();
        }
        Mono(self.0.iter().map(|(s, x)| (s.clone(), x * e)).collect()).fold()
    }

    pub fn inv(&self) -> Mono {
        self.pow(-1)
    }

    /// Exponent vector with `ell` unfolded into `v`: `ell^a v^b` becomes `v^(2a+b)`.
    pub(crate) fn unfolded(&self) -> impl Iterator<Item = (Sym, i64)> + '_ {
        let ell = self.exponent(super::ELL) as i64;
        let mut seen_v = false;
        let mut out: Vec<(Sym, i64)> = Vec::new();
        for (s, e) in &self.0 {
            if s.is_ell() {
                continue;
            }
            if s.is_v() {
                seen_v = true;
                out.push((s.clone(), 2 * ell + *e as i64));
            } else {
                out.push((s.clone(), *e as i64));
            }
        }
        if !seen_v && ell != 0 {
            out.push((Sym::v(), 2 * ell));
        }
        out.into_iter().filter(|(_, e)| *e != 0)
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, (s, e)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Sparse multivariate Laurent polynomial over Q.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Mono, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Mono::one(), c)
    }

    pub fn term(m: Mono, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn var(name: &str) -> Self {
        Self::term(Mono::var(Sym::new(name), 1), Rational::one())
    }

    pub fn monomial(pairs: &[(&str, i32)]) -> Self {
        Self::term(
            Mono::from_pairs(pairs.iter().map(|(s, e)| (Sym::new(s), *e))),
            Rational::one(),
        )
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Mono, Rational)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Mono, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rational)> {
        self.terms.iter()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// `Some((m, c))` if the polynomial is the single term `c * m`.
    pub fn as_monomial(&self) -> Option<(&Mono, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Lexicographically largest term.
    pub fn leading(&self) -> Option<(&Mono, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn symbols(&self) -> BTreeSet<Sym> {
        self.terms
            .keys()
            .flat_map(|m| m.iter().map(|(s, _)| s.clone()))
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Groups terms by the exponent of `var` (which must not be `ell` or `v`).
    pub fn collect_in(&self, var: &str) -> BTreeMap<i32, LaurentPoly> {
        let mut out: BTreeMap<i32, LaurentPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            let rest = Mono(m.0.iter().filter(|(s, _)| s.name() != var).cloned().collect());
            out.entry(e).or_default().add_term(rest, c.clone());
        }
        out
    }

    /// Sign of the lexicographically largest coefficient.
    pub fn leading_is_negative(&self) -> bool {
        self.leading().is_some_and(|(_, c)| c.is_negative())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            match (m.is_one(), a.is_one()) {
                (true, _) => write!(f, "{a}")?,
                (false, true) => write!(f, "{m}")?,
                (false, false) => write!(f, "{a}*{m}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($t:ty, $($tr:ident $f:ident),*) => {$(
        impl $tr<$t> for $t {
            type Output = $t;
            fn $f(self, rhs: $t) -> $t { $tr::$f(&self, &rhs) }
        }
        impl $tr<&$t> for $t {
            type Output = $t;
            fn $f(self, rhs: &$t) -> $t { $tr::$f(&self, rhs) }
        }
        impl $tr<$t> for &$t {
            type Output = $t;
            fn $f(self, rhs: $t) -> $t { $tr::$f(self, &rhs) }
        }
    )*};
}
pub(crate) use forward_owned;

forward_owned!(LaurentPoly, Add add, Sub sub, Mul mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::q;

    #[test]
    fn v_squared_folds_into_ell() {
        let v = LaurentPoly::var("v");
        assert_eq!(&v * &v, LaurentPoly::var("ell"));
        let vinv = LaurentPoly::monomial(&[("v", -1)]);
        assert_eq!(vinv.to_string(), "ell^-1*v");
        assert_eq!(&vinv * &v, LaurentPoly::one());
    }

    #[test]
    fn display_is_sorted() {
        let p = &LaurentPoly::var("x") - &LaurentPoly::constant(q(3));
        assert_eq!(p.to_string(), "-3 + x");
    }
}

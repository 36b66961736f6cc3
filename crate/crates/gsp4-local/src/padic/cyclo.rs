use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::upow;
use crate::symcore::Rational;

/// Element of Q(zeta_{p^k}) in the power basis `zeta^j`, `j < phi(p^k)`,
/// stored at the smallest level `k` containing it. Rationals have `k = 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloQ {
    p: u64,
    k: u32,
    c: Vec<Rational>,
}

fn phi(p: u64, k: u32) -> usize {
    if k == 0 {
        1
    } else {
        ((p - 1) * upow(p, k - 1)) as usize
    }
}

impl CycloQ {
    pub fn rational(x: Rational) -> CycloQ {
        CycloQ { p: 0, k: 0, c: vec![x] }
    }

    pub fn zero() -> CycloQ {
        CycloQ::rational(Rational::zero())
    }

    pub fn one() -> CycloQ {
        CycloQ::rational(Rational::one())
    }

    /// `zeta_{p^k}^e` with `zeta_{p^k} = exp(2 pi i / p^k)`.
    pub fn root(p: u64, k: u32, e: i64) -> CycloQ {
        let n = upow(p, k) as i64;
        CycloQ::from_exponents(p, k, [(e.rem_euclid(n) as u64, Rational::one())])
    }

    /// `sum c_e zeta_{p^k}^e` for exponents in `[0, p^k)`.
    pub fn from_exponents(p: u64, k: u32, terms: impl IntoIterator<Item = (u64, Rational)>) -> CycloQ {
        let n = upow(p, k) as usize;
        let mut full = vec![Rational::zero(); n];
        for (e, x) in terms {
            full[e as usize % n] += x;
        }
        CycloQ::reduce(p, k, full)
    }

    fn reduce(p: u64, k: u32, mut full: Vec<Rational>) -> CycloQ {
        if k == 0 {
            return CycloQ::rational(full.into_iter().sum());
        }
        let f = phi(p, k);
        let step = upow(p, k - 1) as usize;
        for j in f..full.len() {
            let x = std::mem::take(&mut full[j]);
            if x.is_zero() {
                continue;
            }
            let r = j - f;
            for i in 0..(p as usize - 1) {
                full[i * step + r] -= &x;
            }
        }
        full.truncate(f);
        CycloQ { p, k, c: full }.minimize()
    }

    fn minimize(mut self) -> CycloQ {
        while self.k > 0 {
            let p = self.p as usize;
            if self.c.iter().enumerate().any(|(j, x)| j % p != 0 && !x.is_zero()) {
                break;
            }
            self.k -= 1;
            self.c = self.c.iter().step_by(p).cloned().collect();
            self.c.truncate(phi(self.p, self.k));
        }
        if self.k == 0 {
            self.p = 0;
        }
        self
    }

    /// Coefficients on `zeta_{p^k}^e` for all `e < p^k`, for `k` at least the level.
    pub(super) fn lift(&self, p: u64, k: u32) -> Vec<Rational> {
        let mut full = vec![Rational::zero(); upow(p, k) as usize];
        if self.k == 0 {
            full[0] = self.c[0].clone();
            return full;
        }
        assert_eq!(self.p, p, "mixed cyclotomic primes");
        let s = upow(p, k - self.k) as usize;
        for (j, x) in self.c.iter().enumerate() {
            full[j * s] = x.clone();
        }
        full
    }

    fn common(&self, o: &CycloQ) -> (u64, u32) {
        (self.p.max(o.p), self.k.max(o.k))
    }

    pub fn is_zero(&self) -> bool {
        self.k == 0 && self.c[0].is_zero()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        (self.k == 0).then(|| self.c[0].clone())
    }

    /// Level `k` of the smallest field Q(zeta_{p^k}) containing the element.
    pub fn level(&self) -> u32 {
        self.k
    }

    pub fn scale(&self, x: &Rational) -> CycloQ {
        if x.is_zero() {
            return CycloQ::zero();
        }
        CycloQ { p: self.p, k: self.k, c: self.c.iter().map(|y| y * x).collect() }
    }
}

impl Add for &CycloQ {
    type Output = CycloQ;
    fn add(self, o: &CycloQ) -> CycloQ {
        let (p, k) = self.common(o);
        let mut a = self.lift(p, k);
        for (x, y) in a.iter_mut().zip(o.lift(p, k)) {
            *x += y;
        }
        CycloQ::reduce(p, k, a)
    }
}

impl Neg for &CycloQ {
    type Output = CycloQ;
    fn neg(self) -> CycloQ {
        CycloQ { p: self.p, k: self.k, c: self.c.iter().map(|x| -x).collect() }
    }
}

impl Sub for &CycloQ {
    type Output = CycloQ;
    fn sub(self, o: &CycloQ) -> CycloQ {
        self + &(-o)
    }
}

impl Mul for &CycloQ {
    type Output = CycloQ;
    fn mul(self, o: &CycloQ) -> CycloQ {
        if let Some(x) = self.as_rational() {
            return o.scale(&x);
        }
        if let Some(x) = o.as_rational() {
            return self.scale(&x);
        }
        let (p, k) = self.common(o);
        let n = upow(p, k) as usize;
        let (a, b) = (self.lift(p, k), o.lift(p, k));
        let mut full = vec![Rational::zero(); n];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                full[(i + j) % n] += x * y;
            }
        }
        CycloQ::reduce(p, k, full)
    }
}

impl std::iter::Sum for CycloQ {
    fn sum<I: Iterator<Item = CycloQ>>(iter: I) -> CycloQ {
        iter.fold(CycloQ::zero(), |a, b| &a + &b)
    }
}

impl From<Rational> for CycloQ {
    fn from(x: Rational) -> CycloQ {
        CycloQ::rational(x)
    }
}

impl fmt::Display for CycloQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(x) = self.as_rational() {
            return write!(f, "{x}");
        }
        let mut first = true;
        for (j, x) in self.c.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({x})*z{}^{j}", upow(self.p, self.k))?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycloQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{ppow, residue, upow, val, CycloQ, HElt, QMat};
use crate::symcore::Rational;

type Key = (u64, u64);
type Sparse = Vec<(usize, BigInt)>;

/// Subset of Q_p used to build product indicators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Set1 {
    /// `a + p^k Z_p`.
    Coset { a: Rational, k: i64 },
    /// `p^k Z_p^x`.
    Units { k: i64 },
}

impl Set1 {
    pub fn lattice(k: i64) -> Set1 {
        Set1::Coset { a: Rational::zero(), k }
    }

    /// `1 + p^k Z_p`.
    pub fn one_plus(k: i64) -> Set1 {
        Set1::Coset { a: Rational::one(), k }
    }

    fn cosets(&self) -> Vec<(Rational, Rational, i64)> {
        match self {
            Set1::Coset { a, k } => vec![(Rational::one(), a.clone(), *k)],
            Set1::Units { k } => vec![
                (Rational::one(), Rational::zero(), *k),
                (-Rational::one(), Rational::zero(), k + 1),
            ],
        }
    }
}

/// Locally constant compactly supported function on Q_p^2 (row vectors)
/// with values in Q(zeta_{p^infty}).
///
/// The function is `sum c_{ab} ch(p^{-s}(a, b) + p^n Z_p^2)` over keys
/// `0 <= a, b < p^{n+s}`, kept at the coarsest level `n` and smallest scale
/// `s`, so structural equality is equality of functions.
#[derive(Clone, PartialEq, Eq)]
pub struct SchwartzFn {
    p: u64,
    n: i64,
    s: i64,
    t: BTreeMap<Key, CycloQ>,
}

fn width(n: i64, s: i64) -> u32 {
    u32::try_from(n + s).expect("level below scale")
}

fn vmin(m: &QMat, p: u64) -> i64 {
    m.min_val(p).expect("zero matrix")
}

impl SchwartzFn {
    pub fn zero(p: u64) -> SchwartzFn {
        SchwartzFn { p, n: 0, s: 0, t: BTreeMap::new() }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// Level `n`: the function is invariant under `p^n Z_p^2`.
    pub fn level(&self) -> i64 {
        self.n
    }

    /// Scale `s`: the support lies in `p^{-s} Z_p^2`.
    pub fn scale(&self) -> i64 {
        self.s
    }

    pub fn is_zero(&self) -> bool {
        self.t.is_empty()
    }

    /// Nonzero values keyed by coset representative `p^{-s}(a, b)`.
    pub fn entries(&self) -> impl Iterator<Item = (&Key, &CycloQ)> {
        self.t.iter()
    }

    /// Indicator of `x0 + p^n Z_p^2`.
    pub fn ch_coset(p: u64, x0: [Rational; 2], n: i64) -> SchwartzFn {
        let s = x0.iter().filter_map(|x| val(x, p)).map(|v| -v).max().unwrap_or(0).max(-n);
        let w = width(n, s);
        let k = |x: &Rational| residue(&(x * ppow(p, s)), p, w);
        let mut t = BTreeMap::new();
        t.insert((k(&x0[0]), k(&x0[1])), CycloQ::one());
        SchwartzFn { p, n, s, t }.normalized()
    }

    /// Indicator of the product `s1 x s2`.
    pub fn ch_product(p: u64, s1: &Set1, s2: &Set1) -> SchwartzFn {
        let mut f = SchwartzFn::zero(p);
        for (c1, a1, k1) in s1.cosets() {
            for (c2, a2, k2) in s2.cosets() {
                let n = k1.max(k2);
                let mut g = SchwartzFn::zero(p);
                let (r1, r2) = (upow(p, (n - k1) as u32), upow(p, (n - k2) as u32));
                for i in 0..r1 {
                    for j in 0..r2 {
                        let x = &a1 + ppow(p, k1) * Rational::from_integer(i.into());
                        let y = &a2 + ppow(p, k2) * Rational::from_integer(j.into());
                        g = &g + &SchwartzFn::ch_coset(p, [x, y], n);
                    }
                }
                f = &f + &g.scale_by(&(&c1 * &c2));
            }
        }
        f
    }

    fn normalized(mut self) -> SchwartzFn {
        self.t.retain(|_, v| !v.is_zero());
        if self.t.is_empty() {
            self.n = 0;
            self.s = 0;
            return self;
        }
        let p = self.p;
        while self.n + self.s >= 1 && self.t.keys().all(|(a, b)| a % p == 0 && b % p == 0) {
            self.t = std::mem::take(&mut self.t)
                .into_iter()
                .map(|((a, b), v)| ((a / p, b / p), v))
                .collect();
            self.s -= 1;
        }
        while self.n + self.s >= 1 {
            let m = upow(p, width(self.n, self.s) - 1);
            let mut groups: BTreeMap<Key, (usize, &CycloQ, bool)> = BTreeMap::new();
            for ((a, b), v) in &self.t {
                let e = groups.entry((a % m, b % m)).or_insert((0, v, true));
                e.0 += 1;
                e.2 &= e.1 == v;
            }
            let full = (p * p) as usize;
            if !groups.values().all(|(c, _, same)| *c == full && *same) {
                break;
            }
            self.t = groups.into_iter().map(|(k, (_, v, _))| (k, v.clone())).collect();
            self.n -= 1;
        }
        self
    }

    fn refined(&self, n2: i64, s2: i64) -> BTreeMap<Key, CycloQ> {
        assert!(n2 >= self.n && s2 >= self.s);
        let up = upow(self.p, (s2 - self.s) as u32);
        let step = upow(self.p, width(self.n, s2));
        let count = upow(self.p, (n2 - self.n) as u32);
        let mut out = BTreeMap::new();
        for ((a, b), v) in &self.t {
            for i in 0..count {
                for j in 0..count {
                    out.insert((a * up + i * step, b * up + j * step), v.clone());
                }
            }
        }
        out
    }

    fn combine(&self, o: &SchwartzFn, sign: &Rational) -> SchwartzFn {
        assert_eq!(self.p, o.p, "mixed primes");
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.scale_by(sign);
        }
        let (n, s) = (self.n.max(o.n), self.s.max(o.s));
        let mut t = self.refined(n, s);
        for (k, v) in o.refined(n, s) {
            let e = t.entry(k).or_insert_with(CycloQ::zero);
            *e = &*e + &v.scale(sign);
        }
        SchwartzFn { p: self.p, n, s, t }.normalized()
    }

    pub fn scale_by(&self, c: &Rational) -> SchwartzFn {
        let t = self.t.iter().map(|(k, v)| (*k, v.scale(c))).collect();
        SchwartzFn { p: self.p, n: self.n, s: self.s, t }.normalized()
    }

    pub fn eval(&self, x: &[Rational; 2]) -> CycloQ {
        if x.iter().any(|c| val(c, self.p).is_some_and(|v| v < -self.s)) {
            return CycloQ::zero();
        }
        let w = width(self.n, self.s);
        let sc = ppow(self.p, self.s);
        let k = |c: &Rational| residue(&(c * &sc), self.p, w);
        self.t.get(&(k(&x[0]), k(&x[1]))).cloned().unwrap_or_else(CycloQ::zero)
    }

    /// `(g . phi)(x) = phi(x g)`.
    pub fn act(&self, g: &QMat) -> SchwartzFn {
        assert_eq!(g.dim(), 2);
        if self.is_zero() {
            return self.clone();
        }
        let p = self.p;
        let gi = g.inverse().expect("singular group element");
        let n2 = self.n - vmin(g, p);
        let s2 = self.s - vmin(&gi, p);
        let lat = gi.scale(&ppow(p, self.n));
        let basis = row_hnf(&lat, p);
        let (al, be) = (val(basis.get(0, 0), p).unwrap(), val(basis.get(1, 1), p).unwrap());
        let (ci, cj) = (upow(p, (n2 - al) as u32), upow(p, (n2 - be) as u32));
        let w = width(n2, s2);
        let sc = ppow(p, s2);
        let x0s = ppow(p, -self.s);
        let mut t = BTreeMap::new();
        for ((a, b), v) in &self.t {
            let x = [Rational::from_integer((*a).into()) * &x0s, Rational::from_integer((*b).into()) * &x0s];
            let y = [
                &x[0] * gi.get(0, 0) + &x[1] * gi.get(1, 0),
                &x[0] * gi.get(0, 1) + &x[1] * gi.get(1, 1),
            ];
            for i in 0..ci {
                let iq = Rational::from_integer(i.into());
                for j in 0..cj {
                    let jq = Rational::from_integer(j.into());
                    let z0 = &y[0] + &iq * basis.get(0, 0);
                    let z1 = &y[1] + &iq * basis.get(0, 1) + &jq * basis.get(1, 1);
                    let key = (residue(&(z0 * &sc), p, w), residue(&(z1 * &sc), p, w));
                    t.insert(key, v.clone());
                }
            }
        }
        SchwartzFn { p, n: n2, s: s2, t }.normalized()
    }

    /// `hat phi(x, y) = integral phi(u, v) e(x v - y u) du dv` with
    /// `e(p^{-k}) = exp(2 pi i / p^k)` and self-dual Haar measure.
    pub fn fourier(&self) -> SchwartzFn {
        if self.is_zero() {
            return self.clone();
        }
        let p = self.p;
        let w = width(self.n, self.s);
        let m = upow(p, w);
        let norm = ppow(p, -2 * self.n);
        let level = self.t.values().map(CycloQ::level).max().unwrap_or(0).max(w);
        let big = upow(p, level) as usize;
        let stride = upow(p, level - w) as usize;
        // integer numerators over one common denominator
        let lifted: Vec<((u64, u64), Vec<Rational>)> = self.t.iter().map(|(k, c)| (*k, c.lift(p, level))).collect();
        let den = lifted
            .iter()
            .flat_map(|(_, v)| v.iter().map(|x| x.denom().clone()))
            .fold(BigInt::one(), |acc, d| acc.lcm(&d));
        // rotate-and-add `v zeta_{p^w}^e` into `acc`, both in the full basis of level `level`
        let add_rotated = |acc: &mut [BigInt], v: &[(usize, BigInt)], e: u64| {
            let shift = (e % m) as usize * stride;
            for (j, x) in v {
                acc[(j + shift) % big] += x;
            }
        };
        let sparse = |v: Vec<BigInt>| -> Sparse {
            v.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
        };
        // g[a][x] = sum_b phi(a, b) e(x b)
        let mut rows: BTreeMap<u64, Vec<(u64, Sparse)>> = BTreeMap::new();
        for ((a, b), v) in lifted {
            let ints = v.iter().map(|x| (x * Rational::from_integer(den.clone())).to_integer()).collect();
            rows.entry(a).or_default().push((b, sparse(ints)));
        }
        let g: Vec<(u64, Vec<Sparse>)> = rows
            .into_iter()
            .map(|(a, entries)| {
                let per_x = (0..m)
                    .map(|x| {
                        let mut acc = vec![BigInt::zero(); big];
                        for (b, v) in &entries {
                            add_rotated(&mut acc, v, x * b % m);
                        }
                        sparse(acc)
                    })
                    .collect();
                (a, per_x)
            })
            .collect();
        let scale = &norm / Rational::from_integer(den);
        let mut t = BTreeMap::new();
        for x in 0..m {
            for y in 0..m {
                let mut acc = vec![BigInt::zero(); big];
                for (a, per_x) in &g {
                    add_rotated(&mut acc, &per_x[x as usize], (m - y * a % m) % m);
                }
                let terms = acc.into_iter().enumerate().filter(|(_, c)| !c.is_zero());
                let value = CycloQ::from_exponents(p, level, terms.map(|(e, c)| (e as u64, Rational::from_integer(c))));
                t.insert((x, y), value.scale(&scale));
            }
        }
        SchwartzFn { p, n: self.s, s: self.n, t }.normalized()
    }
}

/// Row Hermite form over Z_p of a 2x2 matrix: upper triangular with
/// diagonal entries powers of `p`, spanning the same row lattice.
fn row_hnf(m: &QMat, p: u64) -> QMat {
    let mut r: Vec<Vec<Rational>> = (0..2).map(|i| m.row(i).to_vec()).collect();
    let v = |x: &Rational| val(x, p).unwrap_or(i64::MAX);
    if v(&r[1][0]) < v(&r[0][0]) {
        r.swap(0, 1);
    }
    if !r[0][0].is_zero() {
        let u = &r[0][0] / ppow(p, v(&r[0][0]));
        r[0] = r[0].iter().map(|x| x / &u).collect();
        let f = &r[1][0] / &r[0][0];
        r[1] = (0..2).map(|j| &r[1][j] - &f * &r[0][j]).collect();
    }
    let u = &r[1][1] / ppow(p, v(&r[1][1]));
    r[1][1] = &r[1][1] / &u;
    QMat::from_rows(r)
}

impl std::ops::Add for &SchwartzFn {
    type Output = SchwartzFn;
    fn add(self, o: &SchwartzFn) -> SchwartzFn {
        self.combine(o, &Rational::one())
    }
}

impl std::ops::Sub for &SchwartzFn {
    type Output = SchwartzFn;
    fn sub(self, o: &SchwartzFn) -> SchwartzFn {
        self.combine(o, &-Rational::one())
    }
}

impl fmt::Debug for SchwartzFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SchwartzFn(p={}, n={}, s={}, {:?})", self.p, self.n, self.s, self.t)
    }
}

/// Finite sum of pure tensors `c phi1 (x) phi2` on Q_p^2 x Q_p^2.
#[derive(Clone, Debug)]
pub struct SchwartzTensor {
    p: u64,
    terms: Vec<(Rational, SchwartzFn, SchwartzFn)>,
}

impl SchwartzTensor {
    pub fn zero(p: u64) -> SchwartzTensor {
        SchwartzTensor { p, terms: Vec::new() }
    }

    pub fn pure(a: SchwartzFn, b: SchwartzFn) -> SchwartzTensor {
        SchwartzTensor { p: a.p, terms: vec![(Rational::one(), a, b)] }
    }

    pub fn push(&mut self, c: Rational, a: SchwartzFn, b: SchwartzFn) {
        self.terms.push((c, a, b));
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn terms(&self) -> &[(Rational, SchwartzFn, SchwartzFn)] {
        &self.terms
    }

    pub fn act(&self, h: &HElt) -> SchwartzTensor {
        SchwartzTensor {
            p: self.p,
            terms: self.terms.iter().map(|(c, a, b)| (c.clone(), a.act(&h.h1), b.act(&h.h2))).collect(),
        }
    }

    pub fn scale(&self, x: &Rational) -> SchwartzTensor {
        SchwartzTensor { p: self.p, terms: self.terms.iter().map(|(c, a, b)| (c * x, a.clone(), b.clone())).collect() }
    }

    pub fn extend(&mut self, o: &SchwartzTensor) {
        self.terms.extend(o.terms.iter().cloned());
    }

    fn bounds(&self) -> [i64; 4] {
        let mut b = [i64::MIN; 4];
        for (_, x, y) in self.terms.iter().filter(|(_, x, y)| !x.is_zero() && !y.is_zero()) {
            b = [b[0].max(x.n), b[1].max(x.s), b[2].max(y.n), b[3].max(y.s)];
        }
        b
    }

    fn table(&self, b: [i64; 4]) -> BTreeMap<(Key, Key), CycloQ> {
        let mut out: BTreeMap<(Key, Key), CycloQ> = BTreeMap::new();
        for (c, x, y) in self.terms.iter().filter(|(_, x, y)| !x.is_zero() && !y.is_zero()) {
            let (tx, ty) = (x.refined(b[0], b[1]), y.refined(b[2], b[3]));
            for (kx, vx) in &tx {
                let vx = vx.scale(c);
                for (ky, vy) in &ty {
                    let e = out.entry((*kx, *ky)).or_insert_with(CycloQ::zero);
                    *e = &*e + &(&vx * vy);
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Equality as functions on Q_p^4.
    pub fn same_function(&self, o: &SchwartzTensor) -> bool {
        let (a, b) = (self.bounds(), o.bounds());
        let m = [a[0].max(b[0]), a[1].max(b[1]), a[2].max(b[2]), a[3].max(b[3])];
        if m[0] == i64::MIN {
            return true;
        }
        let (ta, tb) = (self.table(m), o.table(m));
        ta == tb
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::gl2_w;
    use crate::symcore::{q, qf};

    fn lat(p: u64, k: i64) -> SchwartzFn {
        SchwartzFn::ch_product(p, &Set1::lattice(k), &Set1::lattice(k))
    }

    #[test]
    fn canonical_forms() {
        let p = 3;
        let a = lat(p, 0);
        assert_eq!((a.level(), a.scale()), (0, 0));
        let parts = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).fold(SchwartzFn::zero(p), |f, (i, j)| {
            &f + &SchwartzFn::ch_coset(p, [q(i), q(j)], 1)
        });
        assert_eq!(parts, a);
        let b = SchwartzFn::ch_coset(p, [qf(1, 3), q(0)], 0);
        assert_eq!((b.level(), b.scale()), (0, 1));
        assert_eq!(b.eval(&[qf(4, 3), q(7)]).as_rational(), Some(q(1)));
        assert!(b.eval(&[q(0), q(0)]).is_zero());
    }

    #[test]
    fn fourier_of_lattices() {
        for p in [2, 3] {
            for k in -1..=2 {
                let f = lat(p, k).fourier();
                assert_eq!(f, lat(p, -k).scale_by(&ppow(p, -2 * k)));
            }
            let phi = SchwartzFn::ch_product(p, &Set1::lattice(1), &Set1::Units { k: 0 });
            let back = phi.fourier().fourier();
            assert_eq!(back, phi.act(&QMat::identity(2).scale(&q(-1))));
        }
    }

    #[test]
    fn action_moves_support() {
        let p = 2;
        let phi = SchwartzFn::ch_product(p, &Set1::lattice(1), &Set1::one_plus(1));
        let g = QMat::from_ints(&[&[2, 0], &[0, 1]]);
        let moved = phi.act(&g);
        assert_eq!(moved, SchwartzFn::ch_product(p, &Set1::lattice(0), &Set1::one_plus(1)));
        let w = phi.act(&gl2_w());
        assert_eq!(w.eval(&[q(1), q(0)]).as_rational(), Some(q(1)));
        assert_eq!(w.eval(&[q(1), q(1)]).as_rational(), Some(q(0)));
    }
}

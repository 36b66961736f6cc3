//! Multivariate polynomial gcd over Z. A heuristic gcd by evaluation and
//! balanced-digit interpolation proposes a candidate, which is accepted only
//! after exact division and a modular coprimality certificate for the
//! cofactors; recursive primitive remainder sequences are the fallback.
//! Variables are indexed `0..n`; index 0 is the most
//! significant in the lexicographic term order.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

type Exp = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct IPoly {
    n: usize,
    t: BTreeMap<Exp, BigInt>,
}

impl IPoly {
    pub fn zero(n: usize) -> Self {
        IPoly { n, t: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: BigInt) -> Self {
        let mut p = Self::zero(n);
        if !c.is_zero() {
            p.t.insert(vec![0; n], c);
        }
        p
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Exp, BigInt)>) -> Self {
        let mut p = Self::zero(n);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &BigInt)> {
        self.t.iter()
    }

    fn add_term(&mut self, e: Exp, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.t.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.t.is_empty()
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    fn as_constant(&self) -> Option<&BigInt> {
        match self.t.len() {
            1 => {
                let (e, c) = self.t.iter().next().unwrap();
                e.iter().all(|x| *x == 0).then_some(c)
            }
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    fn lead(&self) -> (&Exp, &BigInt) {
        self.t.iter().next_back().expect("lead of zero polynomial")
    }

    fn sub(&self, o: &IPoly) -> IPoly {
        let mut r = self.clone();
        for (e, c) in &o.t {
            r.add_term(e.clone(), -c);
        }
        r
    }

    pub fn mul(&self, o: &IPoly) -> IPoly {
        let mut r = IPoly::zero(self.n);
        for (e1, c1) in &self.t {
            for (e2, c2) in &o.t {
                let e: Exp = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1 * c2);
            }
        }
        r
    }

    fn mul_term(&self, e: &Exp, c: &BigInt) -> IPoly {
        IPoly {
            n: self.n,
            t: self
                .t
                .iter()
                .map(|(k, x)| (k.iter().zip(e).map(|(a, b)| a + b).collect(), x * c))
                .collect(),
        }
    }

    pub fn scale_div(&self, c: &BigInt) -> IPoly {
        IPoly {
            n: self.n,
            t: self.t.iter().map(|(k, x)| (k.clone(), x / c)).collect(),
        }
    }

    fn neg(&self) -> IPoly {
        IPoly {
            n: self.n,
            t: self.t.iter().map(|(k, x)| (k.clone(), -x)).collect(),
        }
    }

    pub fn int_content(&self) -> BigInt {
        self.t.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Flips the sign so the leading coefficient is positive.
    pub fn sign_normalized(self) -> IPoly {
        if !self.is_zero() && self.lead().1.is_negative() {
            self.neg()
        } else {
            self
        }
    }

    pub fn lead_is_negative(&self) -> bool {
        !self.is_zero() && self.lead().1.is_negative()
    }

    fn occurs(&self, x: usize) -> bool {
        self.t.keys().any(|e| e[x] > 0)
    }

    fn deg(&self, x: usize) -> u32 {
        self.t.keys().map(|e| e[x]).max().unwrap_or(0)
    }

    /// Minimal exponent of each variable.
    pub fn min_exps(&self) -> Exp {
        let mut m = vec![u32::MAX; self.n];
        for e in self.t.keys() {
            for (a, b) in m.iter_mut().zip(e) {
                *a = (*a).min(*b);
            }
        }
        if self.t.is_empty() {
            m.iter_mut().for_each(|a| *a = 0);
        }
        m
    }

    pub fn shift_down(&self, s: &Exp) -> IPoly {
        IPoly {
            n: self.n,
            t: self
                .t
                .iter()
                .map(|(e, c)| (e.iter().zip(s).map(|(a, b)| a - b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Coefficients with respect to `x`, indexed by degree.
    fn coeffs_in(&self, x: usize) -> Vec<IPoly> {
        let mut out = vec![IPoly::zero(self.n); self.deg(x) as usize + 1];
        for (e, c) in &self.t {
            let mut k = e.clone();
            let d = k[x] as usize;
            k[x] = 0;
            out[d].add_term(k, c.clone());
        }
        out
    }

    fn lead_coeff_in(&self, x: usize) -> IPoly {
        let d = self.deg(x);
        IPoly::from_terms(
            self.n,
            self.t.iter().filter(|(e, _)| e[x] == d).map(|(e, c)| {
                let mut k = e.clone();
                k[x] = 0;
                (k, c.clone())
            }),
        )
    }

    /// Exact quotient, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &IPoly) -> Option<IPoly> {
        if d.is_zero() {
            return None;
        }
        let mut r = self.clone();
        let mut q = IPoly::zero(self.n);
        let (de, dc) = {
            let (e, c) = d.lead();
            (e.clone(), c.clone())
        };
        while !r.is_zero() {
            let (re, rc) = r.lead();
            if re.iter().zip(&de).any(|(a, b)| a < b) {
                return None;
            }
            let (qc, rem) = rc.div_rem(&dc);
            if !rem.is_zero() {
                return None;
            }
            let qe: Exp = re.iter().zip(&de).map(|(a, b)| a - b).collect();
            r = r.sub(&d.mul_term(&qe, &qc));
            q.add_term(qe, qc);
        }
        Some(q)
    }

    fn content_in(&self, x: usize) -> IPoly {
        let mut g = IPoly::zero(self.n);
        for c in self.coeffs_in(x) {
            if c.is_zero() {
                continue;
            }
            g = gcd(&g, &c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn primpart_in(&self, x: usize) -> IPoly {
        let c = self.content_in(x);
        self.div_exact(&c).expect("content divides").sign_normalized()
    }
}

/// The Mersenne prime `2^61 - 1`.
const MODULUS: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MODULUS as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    r
}

fn reduce_mod(c: &BigInt) -> u64 {
    c.mod_floor(&BigInt::from(MODULUS)).try_into().expect("residue fits")
}

/// Deterministic evaluation points from splitmix64.
fn eval_point(n: usize, attempt: u64) -> Vec<u64> {
    (0..n as u64)
        .map(|i| {
            let mut z = attempt.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(i.wrapping_mul(0xbf58_476d_1ce4_e5b9));
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
            (z ^ (z >> 31)) % MODULUS
        })
        .collect()
}

/// Strips trailing zeros of a coefficient vector indexed by degree.
fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Degree of the gcd of two nonzero univariate polynomials over `F_MODULUS`.
fn uni_gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let inv = pow_mod(*b.last().unwrap(), MODULUS - 2);
        while a.len() >= b.len() {
            let f = mul_mod(*a.last().unwrap(), inv);
            let off = a.len() - b.len();
            for (i, c) in b.iter().enumerate() {
                a[off + i] = (a[off + i] + MODULUS - mul_mod(f, *c)) % MODULUS;
            }
            a = trim(a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len() - 1
}

impl IPoly {
    /// Image in `F_MODULUS[x]` after substituting `point` for the other variables.
    fn image_in(&self, x: usize, point: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.deg(x) as usize + 1];
        for (e, c) in &self.t {
            let mut v = reduce_mod(c);
            for (i, k) in e.iter().enumerate() {
                if i != x && *k > 0 {
                    v = mul_mod(v, pow_mod(point[i], *k as u64));
                }
            }
            let d = e[x] as usize;
            out[d] = (out[d] + v) % MODULUS;
        }
        out
    }
}

impl IPoly {
    /// Substitutes the integer `x` for variable `k`.
    fn eval_var(&self, k: usize, x: &BigInt) -> IPoly {
        let mut powers = vec![BigInt::one()];
        let mut out = IPoly::zero(self.n);
        for (e, c) in &self.t {
            while powers.len() <= e[k] as usize {
                let next = powers.last().unwrap() * x;
                powers.push(next);
            }
            let mut m = e.clone();
            m[k] = 0;
            out.add_term(m, c * &powers[e[k] as usize]);
        }
        out
    }

    /// Inverse of [`IPoly::eval_var`] on polynomials whose coefficients have
    /// balanced base-`x` digits: each coefficient is expanded in variable `k`.
    fn interpolate_var(&self, k: usize, x: &BigInt) -> IPoly {
        let half = x / 2;
        let mut out = IPoly::zero(self.n);
        for (e, c) in &self.t {
            let mut c = c.clone();
            let mut i = 0u32;
            while !c.is_zero() {
                let mut d = c.mod_floor(x);
                if d > half {
                    d -= x;
                }
                let mut m = e.clone();
                m[k] = i;
                out.add_term(m, d.clone());
                c = (c - d) / x;
                i += 1;
            }
        }
        out
    }

    fn max_norm(&self) -> BigInt {
        self.t.values().map(|c| c.abs()).max().unwrap_or_default()
    }

    fn primitive(&self) -> IPoly {
        let c = self.int_content();
        if c.is_zero() {
            return self.clone();
        }
        self.scale_div(&c).sign_normalized()
    }

    fn single_term(&self) -> Option<(&Exp, &BigInt)> {
        (self.t.len() == 1).then(|| self.t.iter().next().unwrap())
    }
}

/// Heuristic gcd over the variables `vars`: a common divisor of `f` and `g`
/// built from integer gcds at large evaluation points, or `None`.
fn heuristic_gcd(f: &IPoly, g: &IPoly, vars: &[usize]) -> Option<IPoly> {
    let Some((&k, rest)) = vars.split_last() else {
        let (a, b) = (f.as_constant()?, g.as_constant()?);
        return Some(IPoly::constant(f.n, a.gcd(b)));
    };
    let (fnorm, gnorm) = (f.max_norm(), g.max_norm());
    let bound: BigInt = 2 * fnorm.clone().min(gnorm.clone()) + 29;
    let lc = |p: &IPoly| p.lead().1.abs();
    let spread: BigInt = 2 * (fnorm / lc(f)).min(gnorm / lc(g)) + 2;
    let mut x = bound.clone().min(99 * bound.sqrt()).max(spread);
    for _ in 0..6 {
        let (ff, gg) = (f.eval_var(k, &x), g.eval_var(k, &x));
        if !ff.is_zero() && !gg.is_zero() {
            if let Some(h) = heuristic_gcd(&ff, &gg, rest) {
                let h = h.interpolate_var(k, &x).primitive();
                if !h.is_zero() && f.div_exact(&h).is_some() && g.div_exact(&h).is_some() {
                    return Some(h);
                }
            }
        }
        x = 73794 * &x * x.sqrt().sqrt() / 27011;
    }
    None
}

/// Whether primitive `a` and `b` are provably coprime.
fn certified_coprime(a: &IPoly, b: &IPoly) -> bool {
    if a.as_constant().is_some() || b.as_constant().is_some() {
        return true;
    }
    (0..a.n).all(|y| !(a.occurs(y) && b.occurs(y)) || certified_constant_in(a, b, y))
}

/// Whether `gcd(a, b)` provably has degree 0 in `x`. If the leading
/// coefficient of `a` in `x` survives the reduction, every factor of the gcd
/// keeps its `x`-degree, so coprime images certify degree 0.
fn certified_constant_in(a: &IPoly, b: &IPoly, x: usize) -> bool {
    for attempt in 1..=2u64 {
        let point = eval_point(a.n, attempt);
        let ia = a.image_in(x, &point);
        if *ia.last().unwrap() == 0 {
            continue;
        }
        let ib = trim(b.image_in(x, &point));
        if ib.is_empty() {
            continue;
        }
        if uni_gcd_degree(ia, ib) == 0 {
            return true;
        }
    }
    false
}

/// Sparse pseudo-remainder of `a` by `b` in the variable `x`.
fn prem(a: &IPoly, b: &IPoly, x: usize) -> IPoly {
    let db = b.deg(x);
    let lcb = b.lead_coeff_in(x);
    let mut r = a.clone();
    while !r.is_zero() && r.deg(x) >= db {
        let dr = r.deg(x);
        let lcr = r.lead_coeff_in(x);
        let mut shift = vec![0u32; r.n];
        shift[x] = dr - db;
        let t = lcr.mul(b).mul_term(&shift, &BigInt::one());
        r = r.mul(&lcb).sub(&t);
    }
    r
}

/// Greatest common divisor, normalized to a positive leading coefficient.
pub(crate) fn gcd(a: &IPoly, b: &IPoly) -> IPoly {
    if a.is_zero() {
        return b.clone().sign_normalized();
    }
    if b.is_zero() {
        return a.clone().sign_normalized();
    }
    if a.as_constant().is_some() || b.as_constant().is_some() {
        return IPoly::constant(a.n, a.int_content().gcd(&b.int_content()));
    }
    for (m, o) in [(a, b), (b, a)] {
        if let Some((e, c)) = m.single_term() {
            let mins = o.min_exps();
            let exps = e.iter().zip(&mins).map(|(x, y)| *x.min(y)).collect();
            return IPoly::from_terms(a.n, [(exps, c.gcd(&o.int_content()))]);
        }
    }
    let (small, big) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if big.div_exact(small).is_some() {
        return small.clone().sign_normalized();
    }
    let (pa, pb) = (a.primitive(), b.primitive());
    let all: Vec<usize> = (0..a.n).filter(|&i| a.occurs(i) || b.occurs(i)).collect();
    if let Some(h) = heuristic_gcd(&pa, &pb, &all) {
        let (fa, fb) = (pa.div_exact(&h).unwrap(), pb.div_exact(&h).unwrap());
        if certified_coprime(&fa, &fb) {
            let c = a.int_content().gcd(&b.int_content());
            return h.mul(&IPoly::constant(a.n, c)).sign_normalized();
        }
    }
    let x = (0..a.n).find(|&i| a.occurs(i) || b.occurs(i)).unwrap();
    if !a.occurs(x) {
        return gcd(a, &b.content_in(x));
    }
    if !b.occurs(x) {
        return gcd(&a.content_in(x), b);
    }
    if let Some(y) = (x..a.n).find(|&y| a.occurs(y) && b.occurs(y) && certified_constant_in(a, b, y)) {
        return gcd(&a.content_in(y), &b.content_in(y));
    }
    let ca = a.content_in(x);
    let cb = b.content_in(x);
    let pa = a.div_exact(&ca).unwrap();
    let pb = b.div_exact(&cb).unwrap();
    let c = gcd(&ca, &cb);
    let (mut p, mut q) = if pa.deg(x) >= pb.deg(x) { (pa, pb) } else { (pb, pa) };
    let g = loop {
        let r = prem(&p, &q, x);
        if r.is_zero() {
            break q.primpart_in(x);
        }
        if r.deg(x) == 0 {
            break IPoly::constant(a.n, BigInt::one());
        }
        p = q;
        q = r.primpart_in(x);
    };
    c.mul(&g).sign_normalized()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, terms: &[(&[u32], i64)]) -> IPoly {
        IPoly::from_terms(n, terms.iter().map(|(e, c)| (e.to_vec(), BigInt::from(*c))))
    }

    #[test]
    fn univariate_gcd() {
        // x^2 - 1 and x - 1
        let a = p(1, &[(&[2], 1), (&[0], -1)]);
        let b = p(1, &[(&[1], 1), (&[0], -1)]);
        assert_eq!(gcd(&a, &b), b);
    }

    #[test]
    fn bivariate_gcd() {
        // (x + y)(x - y) and (x + y)^2
        let s = p(2, &[(&[1, 0], 1), (&[0, 1], 1)]);
        let d = p(2, &[(&[1, 0], 1), (&[0, 1], -1)]);
        let a = s.mul(&d);
        let b = s.mul(&s);
        assert_eq!(gcd(&a, &b), s);
        assert!(gcd(&d, &s).is_one());
    }

    #[test]
    fn nontrivial_trivariate_gcd() {
        let g0 = p(3, &[(&[2, 1, 0], 6), (&[0, 1, 1], 5), (&[0, 0, 4], 2)]);
        let u = p(3, &[(&[2, 1, 0], 1), (&[0, 0, 0], -1)]);
        let w = p(3, &[(&[4, 0, 1], 3), (&[2, 0, 0], 5), (&[0, 0, 1], 5)]);
        let z = p(3, &[(&[0, 3, 0], 1), (&[0, 0, 1], 1), (&[1, 0, 0], 7)]);
        let d = g0.mul(&g0).mul(&u).mul(&w);
        let n = g0.mul(&z).mul(&IPoly::constant(3, BigInt::from(10)));
        assert_eq!(gcd(&n, &d), g0);
        assert_eq!(gcd(&d, &u.mul(&z)), u);
        assert!(gcd(&z, &w).is_one());
    }

    #[test]
    fn monomial_gcd() {
        let m = p(2, &[(&[2, 3], 6)]);
        let f = p(2, &[(&[1, 5], 4), (&[3, 1], 8)]);
        assert_eq!(gcd(&m, &f), p(2, &[(&[1, 1], 2)]));
    }

    #[test]
    fn gcd_with_content() {
        // 6(x y + 1) and 4(x y + 1) y
        let f = p(2, &[(&[1, 1], 1), (&[0, 0], 1)]);
        let a = f.mul(&IPoly::constant(2, BigInt::from(6)));
        let b = f.mul(&p(2, &[(&[0, 1], 4)]));
        assert_eq!(gcd(&a, &b), f.mul(&IPoly::constant(2, BigInt::from(2))));
    }
}

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_traits::{One, Zero};

use super::{
    congruent, gl2_w, iota, lower_unipotent, ppow, residue, u_elt, upow, val, GSp4Elt, HElt, PadicError,
    QMat,
};
use crate::symcore::{q, Rational};

/// Compact open subgroups of G(Q_p) used as Hecke levels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LevelSpec {
    /// G(Z_p).
    Maximal,
    /// K_{G,0}(p): `C = 0 mod p`.
    SiegelParahoric,
    /// `mu = 1 mod p`.
    KEll1,
    /// `C = 0, D = 1 mod p^n` and `mu = 1 mod p^m`.
    Kmn { m: u32, n: u32 },
    /// `A = 1, B = 0 mod p^m` and `C = 0, D = 1 mod p^n`.
    KPrimeMn { m: u32, n: u32 },
}

impl fmt::Display for LevelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LevelSpec::Maximal => f.write_str("G(Z_l)"),
            LevelSpec::SiegelParahoric => f.write_str("K_G0(l)"),
            LevelSpec::KEll1 => f.write_str("K_l1"),
            LevelSpec::Kmn { m, n } => write!(f, "K_{m},{n}"),
            LevelSpec::KPrimeMn { m, n } => write!(f, "K'_{m},{n}"),
        }
    }
}

impl LevelSpec {
    /// Index in G(Z_p).
    pub fn index(&self, p: u64) -> u64 {
        let siegel = |n: u32| (1 + p) * (1 + p * p) * upow(p, 3 * (n - 1));
        let gl2 = |n: u32| upow(p, 4 * (n - 1)) * (p * p - 1) * (p * p - p);
        let units = |m: u32| if m == 0 { 1 } else { upow(p, m - 1) * (p - 1) };
        match *self {
            LevelSpec::Maximal => 1,
            LevelSpec::SiegelParahoric => siegel(1),
            LevelSpec::KEll1 => p - 1,
            LevelSpec::Kmn { m, n } => siegel(n) * gl2(n) * units(m),
            LevelSpec::KPrimeMn { m, n } => siegel(n) * gl2(n) * units(m) * upow(p, 3 * m),
        }
    }

    /// Haar volume with `vol G(Z_p) = 1`.
    pub fn volume(&self, p: u64) -> Rational {
        Rational::new(1.into(), self.index(p).into())
    }
}

fn block_congruent(x: &QMat, target: [[i64; 2]; 2], p: u64, k: u32) -> bool {
    (0..2).all(|i| (0..2).all(|j| congruent(x.get(i, j), &q(target[i][j]), p, k)))
}

/// Exact congruence test for `g` in the given subgroup.
pub fn membership(g: &GSp4Elt, spec: LevelSpec, p: u64) -> bool {
    if !g.in_maximal_compact(p) {
        return false;
    }
    let [a, b, c, d] = g.blocks();
    let (id, zero) = ([[1, 0], [0, 1]], [[0, 0], [0, 0]]);
    match spec {
        LevelSpec::Maximal => true,
        LevelSpec::SiegelParahoric => block_congruent(&c, zero, p, 1),
        LevelSpec::KEll1 => congruent(g.mu(), &q(1), p, 1),
        LevelSpec::Kmn { m, n } => {
            block_congruent(&c, zero, p, n) && block_congruent(&d, id, p, n) && congruent(g.mu(), &q(1), p, m)
        }
        LevelSpec::KPrimeMn { m, n } => {
            block_congruent(&a, id, p, m)
                && block_congruent(&b, zero, p, m)
                && block_congruent(&c, zero, p, n)
                && block_congruent(&d, id, p, n)
        }
    }
}

/// Whether `g1 U = g2 U`.
pub fn same_coset(g1: &GSp4Elt, g2: &GSp4Elt, spec: LevelSpec, p: u64) -> bool {
    membership(&(&g1.inv() * g2), spec, p)
}

/// Finite combination `sum c_i ch(g_i U_i)` in the Hecke algebra of G(Q_p).
#[derive(Clone, Debug)]
pub struct HeckeElt {
    p: u64,
    terms: Vec<(Rational, GSp4Elt, LevelSpec)>,
}

impl HeckeElt {
    pub fn zero(p: u64) -> HeckeElt {
        HeckeElt { p, terms: Vec::new() }
    }

    /// `ch(g U)`.
    pub fn ch(p: u64, g: GSp4Elt, level: LevelSpec) -> HeckeElt {
        HeckeElt { p, terms: vec![(Rational::one(), g, level)] }
    }

    /// `ch(U g U)` as the sum of its single cosets at maximal level.
    pub fn double_coset(p: u64, spec: CosetSpec) -> Result<HeckeElt, PadicError> {
        let level = match spec {
            CosetSpec::U => LevelSpec::SiegelParahoric,
            CosetSpec::UPrime { m, n } => LevelSpec::Kmn { m, n },
            CosetSpec::KModSiegel => LevelSpec::SiegelParahoric,
            _ => LevelSpec::Maximal,
        };
        let terms = enumerate_cosets(spec, p)?.into_iter().map(|g| (Rational::one(), g, level)).collect();
        Ok(HeckeElt { p, terms })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn terms(&self) -> &[(Rational, GSp4Elt, LevelSpec)] {
        &self.terms
    }

    pub fn push(&mut self, c: Rational, g: GSp4Elt, level: LevelSpec) {
        self.terms.push((c, g, level));
    }

    pub fn scale(&self, c: &Rational) -> HeckeElt {
        HeckeElt { p: self.p, terms: self.terms.iter().map(|(x, g, u)| (x * c, g.clone(), *u)).collect() }
    }

    pub fn add(&self, o: &HeckeElt) -> HeckeElt {
        let mut terms = self.terms.clone();
        terms.extend(o.terms.iter().cloned());
        HeckeElt { p: self.p, terms }
    }

    /// Convolution `self * o` for `o` left-invariant under the group of every
    /// coset of `self`: `ch(gU) * o = vol(U) o(g^{-1} .)`.
    pub fn convolve(&self, o: &HeckeElt) -> HeckeElt {
        let mut terms = Vec::new();
        for (a, g, u) in &self.terms {
            let c = a * u.volume(self.p);
            for (b, h, v) in &o.terms {
                terms.push((&c * b, g * h, *v));
            }
        }
        HeckeElt { p: self.p, terms }
    }

    /// Left translate `x . xi = xi(x^{-1} .)`, i.e. `ch(gU) -> ch(x g U)`.
    pub fn left_translate(&self, x: &GSp4Elt) -> HeckeElt {
        HeckeElt { p: self.p, terms: self.terms.iter().map(|(c, g, u)| (c.clone(), x * g, *u)).collect() }
    }

    /// Merges terms whose cosets coincide and drops zero coefficients.
    pub fn collected(&self) -> HeckeElt {
        let mut out: Vec<(Rational, GSp4Elt, LevelSpec)> = Vec::new();
        for (c, g, u) in &self.terms {
            match out.iter_mut().find(|(_, h, v)| v == u && same_coset(h, g, *u, self.p)) {
                Some(t) => t.0 += c,
                None => out.push((c.clone(), g.clone(), *u)),
            }
        }
        out.retain(|(c, _, _)| !c.is_zero());
        HeckeElt { p: self.p, terms: out }
    }

    /// Equality as functions on G(Q_p), for terms at a common level.
    pub fn same_function(&self, o: &HeckeElt) -> bool {
        let d = self.add(&o.scale(&-Rational::one())).collected();
        d.terms.is_empty()
    }
}

/// Named coset families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CosetSpec {
    /// `K diag(1,1,p,p) K / K`.
    T,
    /// `K diag(1,p,p,p^2) K / K`.
    T1,
    /// `K diag(p,p,p,p) K / K`.
    R,
    /// `U(p)` at `K_{G,0}(p)`.
    U,
    /// `U'(p)` at `K_{m,n}`.
    UPrime { m: u32, n: u32 },
    /// `G(Z_p) / K_{G,0}(p)`.
    KModSiegel,
}

impl std::str::FromStr for CosetSpec {
    type Err = PadicError;
    fn from_str(s: &str) -> Result<CosetSpec, PadicError> {
        let spec = match s {
            "T" => CosetSpec::T,
            "T1" => CosetSpec::T1,
            "R" => CosetSpec::R,
            "U" => CosetSpec::U,
            "K/KG0" => CosetSpec::KModSiegel,
            _ => {
                let body = s.strip_prefix("U'(").and_then(|r| r.strip_suffix(')'));
                let parsed = body.and_then(|b| {
                    let (m, n) = b.split_once(',')?;
                    Some(CosetSpec::UPrime { m: m.trim().parse().ok()?, n: n.trim().parse().ok()? })
                });
                return parsed.ok_or_else(|| PadicError::UnknownSpec(s.to_string()));
            }
        };
        Ok(spec)
    }
}

/// Topological generators of `Z_p^x`.
pub fn primitive_units(p: u64) -> Vec<i64> {
    if p == 2 {
        return vec![-1, 5];
    }
    let m = p * p;
    let order = p * (p - 1);
    let g = (2..m)
        .find(|g| {
            let mut x = 1u64;
            (1..=order).find(|_| {
                x = x * g % m;
                x == 1
            }) == Some(order)
        })
        .unwrap();
    vec![g as i64]
}

pub(crate) fn levi(a: [[i64; 2]; 2]) -> GSp4Elt {
    let a = QMat::from_ints(&[&a[0], &a[1]]);
    let j2 = QMat::from_ints(&[&[0, 1], &[1, 0]]);
    let d = &(&j2 * &a.transpose().inverse().unwrap()) * &j2;
    let mut m = QMat::identity(4);
    for i in 0..2 {
        for k in 0..2 {
            m.set(i, k, a.get(i, k).clone());
            m.set(i + 2, k + 2, d.get(i, k).clone());
        }
    }
    GSp4Elt::new(m).expect("Siegel Levi element")
}

/// Topological generators of G(Z_p).
pub(crate) fn maximal_generators(p: u64) -> Vec<GSp4Elt> {
    let mut gens = Vec::new();
    for (u, v, w) in [(1, 0, 0), (0, 1, 0), (0, 0, 1)] {
        let x = u_elt(1, &q(u), &q(v), &q(w));
        gens.push(GSp4Elt::new(x.matrix().transpose()).unwrap());
        gens.push(x);
    }
    gens.push(levi([[1, 1], [0, 1]]));
    gens.push(levi([[1, 0], [1, 1]]));
    let n1 = QMat::from_ints(&[&[1, 1], &[0, 1]]);
    for h in [
        HElt::new(gl2_w(), QMat::identity(2)),
        HElt::new(QMat::identity(2), gl2_w()),
        HElt::new(n1.clone(), QMat::identity(2)),
        HElt::new(lower_unipotent(q(1)), QMat::identity(2)),
    ] {
        gens.push(iota(&h.unwrap()));
    }
    for g in primitive_units(p) {
        gens.push(GSp4Elt::diag(q(1), q(1), q(g), q(g)).unwrap());
    }
    gens
}

/// Hermite normal form key of the column lattice `g Z_p^4` for integral `g`:
/// diagonal exponents followed by the reduced entries above the diagonal.
pub fn lattice_key(g: &QMat, p: u64) -> Vec<i64> {
    let n = g.dim();
    let mut m: Vec<Vec<Rational>> = (0..n).map(|i| g.row(i).to_vec()).collect();
    let v = |x: &Rational| val(x, p).unwrap_or(i64::MAX);
    let col_op = |m: &mut Vec<Vec<Rational>>, dst: usize, src: usize, f: &Rational| {
        for row in m.iter_mut() {
            let t = &row[src] * f;
            row[dst] -= t;
        }
    };
    let mut exps = vec![0i64; n];
    for i in (0..n).rev() {
        let j = (0..=i).min_by_key(|&j| (v(&m[i][j]), j)).unwrap();
        for row in m.iter_mut() {
            row.swap(i, j);
        }
        let e = v(&m[i][i]);
        assert!(e != i64::MAX, "singular lattice");
        let u = &m[i][i] / ppow(p, e);
        for row in m.iter_mut() {
            row[i] = &row[i] / &u;
        }
        for j in 0..i {
            if !m[i][j].is_zero() {
                let f = &m[i][j] / &m[i][i];
                col_op(&mut m, j, i, &f);
            }
        }
        exps[i] = e;
    }
    for i in (0..n).rev() {
        for j in i + 1..n {
            let r = residue(&m[i][j], p, exps[i] as u32);
            let c = (&m[i][j] - q(r as i64)) / ppow(p, exps[i]);
            if !c.is_zero() {
                col_op(&mut m, j, i, &c);
            }
        }
    }
    let mut key = exps;
    for (i, row) in m.iter().enumerate() {
        for x in &row[i + 1..] {
            key.push(residue(x, p, key[i] as u32) as i64);
        }
    }
    key
}

fn rank_mod_p(rows: &[[u64; 2]], p: u64) -> usize {
    let mut r: Vec<[u64; 2]> = rows.to_vec();
    let mut rank = 0;
    for c in 0..2 {
        let Some(i) = (rank..r.len()).find(|&i| r[i][c] != 0) else { continue };
        r.swap(rank, i);
        let inv = mod_inv(r[rank][c], p);
        let pivot = r[rank];
        for (i, row) in r.iter_mut().enumerate() {
            if i != rank && row[c] != 0 {
                let f = row[c] * inv % p;
                for (x, y) in row.iter_mut().zip(pivot) {
                    *x = (*x + p * p - f * y % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mod_inv(a: u64, p: u64) -> u64 {
    (1..p).find(|x| a * x % p == 1).expect("unit mod p")
}

fn lagrangian_rows(k: &GSp4Elt, p: u64) -> Vec<[u64; 2]> {
    (0..4).map(|i| [residue(k.get(i, 0), p, 1), residue(k.get(i, 1), p, 1)]).collect()
}

/// Cell index in `B(Z_p) \ G(Z_p) / K_{G,0}(p)` of `k`, from the position of
/// the Lagrangian spanned by its first two columns mod `p` relative to the
/// flag `<e1> < <e1, e2>`: 0 for `<e1,e2>`, 1 for `<e1,e3>`, 2 for `<e2,e4>`,
/// 3 for `<e3,e4>`.
pub fn lagrangian_cell(k: &GSp4Elt, p: u64) -> usize {
    let c = lagrangian_rows(k, p);
    let d1 = 2 - rank_mod_p(&c[1..4], p);
    let d2 = 2 - rank_mod_p(&c[2..4], p);
    match (d1, d2) {
        (1, 2) => 0,
        (1, 1) => 1,
        (0, 1) => 2,
        (0, 0) => 3,
        _ => unreachable!("not a Lagrangian: {:?}", (d1, d2)),
    }
}

/// Column-echelon form of the Lagrangian of `k` mod `p`.
fn lagrangian_key(k: &GSp4Elt, p: u64) -> Vec<i64> {
    let mut cols: Vec<Vec<u64>> = (0..2).map(|j| (0..4).map(|i| residue(k.get(i, j), p, 1)).collect()).collect();
    let mut row = 0;
    for c in 0..2 {
        while row < 4 && (c..2).all(|j| cols[j][row] == 0) {
            row += 1;
        }
        if row == 4 {
            break;
        }
        let j = (c..2).find(|&j| cols[j][row] != 0).unwrap();
        cols.swap(c, j);
        let inv = mod_inv(cols[c][row], p);
        cols[c] = cols[c].iter().map(|x| x * inv % p).collect();
        for j in 0..2 {
            if j != c && cols[j][row] != 0 {
                let f = cols[j][row];
                let piv = cols[c].clone();
                cols[j] = cols[j].iter().zip(&piv).map(|(x, y)| (x + p * p - f * y % p) % p).collect();
            }
        }
        row += 1;
    }
    cols.into_iter().flatten().map(|x| x as i64).collect()
}

fn orbit(start: GSp4Elt, gens: &[GSp4Elt], key: impl Fn(&GSp4Elt) -> Vec<i64>) -> Vec<GSp4Elt> {
    let mut seen: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    let mut reps = vec![start.clone()];
    seen.insert(key(&start), 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in gens {
            let x = g * &reps[i];
            let k = key(&x);
            if let std::collections::btree_map::Entry::Vacant(e) = seen.entry(k) {
                e.insert(reps.len());
                queue.push_back(reps.len());
                reps.push(x);
            }
        }
    }
    let mut keyed: Vec<(Vec<i64>, GSp4Elt)> = reps.into_iter().map(|g| (key(&g), g)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.into_iter().map(|(_, g)| g).collect()
}

/// Coset representatives, sorted deterministically.
pub fn enumerate_cosets(spec: CosetSpec, p: u64) -> Result<Vec<GSp4Elt>, PadicError> {
    if !(2..=7).contains(&p) || ![2, 3, 5, 7].contains(&p) {
        return Err(PadicError::Invalid(format!("prime {p} outside 2..=7")));
    }
    let pq = |e: u32| q(upow(p, e) as i64);
    let lattice = |g: &GSp4Elt| lattice_key(g.matrix(), p);
    Ok(match spec {
        CosetSpec::T => orbit(GSp4Elt::diag(q(1), q(1), pq(1), pq(1))?, &maximal_generators(p), lattice),
        CosetSpec::T1 => orbit(GSp4Elt::diag(q(1), pq(1), pq(1), pq(2))?, &maximal_generators(p), lattice),
        CosetSpec::R => vec![GSp4Elt::scalar(pq(1))],
        CosetSpec::U | CosetSpec::UPrime { .. } => {
            let mut out = Vec::new();
            for u in 0..p as i64 {
                for v in 0..p as i64 {
                    for w in 0..p as i64 {
                        out.push(u_elt(p, &q(u), &q(v), &q(w)));
                    }
                }
            }
            out
        }
        CosetSpec::KModSiegel => {
            orbit(GSp4Elt::identity(), &maximal_generators(p), |g| lagrangian_key(g, p))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::eta_ell_r;

    #[test]
    fn generators_are_integral() {
        for p in [2, 3, 5] {
            for g in maximal_generators(p) {
                assert!(membership(&g, LevelSpec::Maximal, p), "{g}");
            }
        }
    }

    #[test]
    fn membership_examples() {
        let p = 3;
        assert!(membership(&GSp4Elt::identity(), LevelSpec::Kmn { m: 1, n: 2 }, p));
        let d = GSp4Elt::diag(q(3), q(3), q(1), q(1)).unwrap();
        assert!(!membership(&d, LevelSpec::Maximal, p));
        assert!(!membership(&eta_ell_r(p, 1), LevelSpec::Maximal, p));
        assert!(membership(&eta_ell_r(p, 0), LevelSpec::Kmn { m: 2, n: 2 }, p));
    }

    #[test]
    fn coset_counts() {
        for p in [2, 3] {
            let t = enumerate_cosets(CosetSpec::T, p).unwrap();
            assert_eq!(t.len() as u64, (1 + p) * (1 + p * p));
            let t1 = enumerate_cosets(CosetSpec::T1, p).unwrap();
            assert_eq!(t1.len() as u64, p * (1 + p) * (1 + p * p));
            let k = enumerate_cosets(CosetSpec::KModSiegel, p).unwrap();
            assert_eq!(k.len() as u64, (1 + p) * (1 + p * p));
            assert_eq!(enumerate_cosets(CosetSpec::U, p).unwrap().len() as u64, p * p * p);
        }
        assert!("X(l)".parse::<CosetSpec>().is_err());
        assert_eq!("U'(1,2)".parse::<CosetSpec>().unwrap(), CosetSpec::UPrime { m: 1, n: 2 });
    }

    #[test]
    fn cells_of_weyl_reps() {
        let p = 3;
        let (i, w) = (QMat::identity(2), gl2_w());
        let reps = [
            HElt::new(i.clone(), i.clone()),
            HElt::new(i.clone(), w.clone()),
            HElt::new(w.clone(), i.clone()),
            HElt::new(w.clone(), w.clone()),
        ];
        for (c, h) in reps.into_iter().enumerate() {
            assert_eq!(lagrangian_cell(&iota(&h.unwrap()), p), c);
        }
    }
}


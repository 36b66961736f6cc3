//! Local data for the norm relations, their invariance checks, and the finite
//! coset and Schwartz-function identities behind the wild and tame relations.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::One;

use crate::besselzeta::{bilinear_form, tame_final_sides, BesselError, PhiLabel, TameData, TameFactors};
use crate::gsp4local::{hecke_module_action, CheckOutcome, Gsp4Error, InducedVectorG};
use crate::padic::{
    enumerate_cosets, eta_ell_r, eta_m, iota, membership, ppow, primitive_units, residue, same_coset, u_elt,
    upow, val, CosetSpec, GSp4Elt, HElt, HeckeElt, LevelSpec, PadicError, QMat, SchwartzFn, SchwartzTensor, Set1,
};
use crate::symcore::{q, RatFunc, Rational};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NormError {
    #[error("invalid parameters: {0}")]
    Invalid(String),
    #[error("step {step} failed: {detail}")]
    Step { step: String, detail: String },
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error(transparent)]
    Gsp4(#[from] Gsp4Error),
    #[error(transparent)]
    Bessel(#[from] BesselError),
}

pub type Result<T> = std::result::Result<T, NormError>;

fn step_err(step: &str, detail: impl Into<String>) -> NormError {
    NormError::Step { step: step.to_string(), detail: detail.into() }
}

fn check_prime(p: u64) -> Result<()> {
    if [2, 3, 5, 7].contains(&p) {
        Ok(())
    } else {
        Err(NormError::Invalid(format!("prime {p} outside {{2, 3, 5, 7}}")))
    }
}

fn qm(rows: [[Rational; 2]; 2]) -> QMat {
    let [[a, b], [c, d]] = rows;
    QMat::from_rows(vec![vec![a, b], vec![c, d]])
}

fn diag2(a: Rational, d: Rational) -> QMat {
    qm([[a, q(0)], [q(0), d]])
}

fn helt(h1: QMat, h2: QMat) -> HElt {
    HElt::new(h1, h2).expect("equal determinants")
}

/// Topological generators of `1 + p^k Z_p`, or of `Z_p^x` for `k = 0`.
pub fn unit_generators(p: u64, k: u32) -> Vec<Rational> {
    if k == 0 || (p == 2 && k == 1) {
        primitive_units(p).into_iter().map(q).collect()
    } else {
        vec![q(1) + ppow(p, k as i64)]
    }
}

/// Generators of `{ h in H(Z_p) : det h = 1 mod p^d, h_i = (* *; 0 1) mod p^t }`.
/// For `t = 0` this is `{ det h = 1 mod p^d }`, and `H(Z_p)` when also `d = 0`.
pub fn kh1_generators(p: u64, d: u32, t: u32) -> Vec<HElt> {
    let id = QMat::identity(2);
    let n = qm([[q(1), q(1)], [q(0), q(1)]]);
    let nbar = qm([[q(1), q(0)], [ppow(p, t as i64), q(1)]]);
    let mut gens = vec![
        helt(n.clone(), id.clone()),
        helt(id.clone(), n),
        helt(nbar.clone(), id.clone()),
        helt(id.clone(), nbar),
    ];
    for a in unit_generators(p, d) {
        gens.push(helt(diag2(a.clone(), q(1)), diag2(a, q(1))));
    }
    let torus_level = if t == 0 { 0 } else { t };
    for x in unit_generators(p, torus_level) {
        let s = diag2(x.recip(), x);
        gens.push(helt(s.clone(), id.clone()));
        gens.push(helt(id.clone(), s));
    }
    gens
}

/// Generators of the principal congruence subgroup of level `p^k` in `H(Z_p)`.
pub fn principal_h_generators(p: u64, k: u32) -> Vec<HElt> {
    let id = QMat::identity(2);
    let e = ppow(p, k as i64);
    let up = qm([[q(1), e.clone()], [q(0), q(1)]]);
    let lo = qm([[q(1), q(0)], [e, q(1)]]);
    let mut gens = vec![
        helt(up.clone(), id.clone()),
        helt(id.clone(), up),
        helt(lo.clone(), id.clone()),
        helt(id.clone(), lo),
    ];
    for x in unit_generators(p, k) {
        let s = diag2(x.clone(), x.recip());
        gens.push(helt(s.clone(), id.clone()));
        gens.push(helt(id.clone(), s));
        gens.push(helt(diag2(x.clone(), q(1)), diag2(x, q(1))));
    }
    gens
}

/// Siegel Levi element `diag(A, D)` with multiplier 1.
fn levi_from_d(d: &QMat) -> GSp4Elt {
    let j2 = QMat::from_ints(&[&[0, 1], &[1, 0]]);
    let a = &(&j2 * &d.transpose().inverse().expect("invertible")) * &j2;
    let mut m = QMat::identity(4);
    for i in 0..2 {
        for k in 0..2 {
            m.set(i, k, a.get(i, k).clone());
            m.set(i + 2, k + 2, d.get(i, k).clone());
        }
    }
    GSp4Elt::new(m).expect("Siegel Levi element")
}

/// Generators of `K_{m,n}` for `n >= 1`: both Siegel unipotent radicals at
/// levels 1 and `p^n`, the Levi part with `D = 1 mod p^n`, and the multipliers.
pub fn kmn_generators(p: u64, m: u32, n: u32) -> Vec<GSp4Elt> {
    let mut gens = Vec::new();
    let e = ppow(p, n as i64);
    for (u, v, w) in [(1, 0, 0), (0, 1, 0), (0, 0, 1)] {
        gens.push(u_elt(1, &q(u), &q(v), &q(w)));
        let low = u_elt(1, &(q(u) * &e), &(q(v) * &e), &(q(w) * &e));
        gens.push(GSp4Elt::new(low.matrix().transpose()).expect("lower Siegel unipotent"));
    }
    let mut ds = vec![qm([[q(1), e.clone()], [q(0), q(1)]]), qm([[q(1), q(0)], [e, q(1)]])];
    for x in unit_generators(p, n) {
        ds.push(diag2(x.clone(), q(1)));
        ds.push(diag2(q(1), x));
    }
    gens.extend(ds.iter().map(levi_from_d));
    for mu in unit_generators(p, m) {
        gens.push(GSp4Elt::diag(mu.clone(), mu, q(1), q(1)).expect("similitude"));
    }
    gens
}

/// `[H(Z_p) : K_{H,1}(p^t)] = (p^{2(t-1)} (p^2 - 1))^2`.
pub fn kh1_index(p: u64, t: u32) -> u64 {
    if t == 0 {
        return 1;
    }
    let x = upow(p, 2 * (t - 1)) * (p * p - 1);
    x * x
}

/// `vol K_{H,1}(p^t)` with `vol H(Z_p) = 1`.
pub fn kh1_volume(p: u64, t: u32) -> Rational {
    Rational::new(1.into(), kh1_index(p, t).into())
}

/// `ch(p^t Z_p x (1 + p^t Z_p))`.
pub fn phi_1(p: u64, t: u32) -> SchwartzFn {
    SchwartzFn::ch_product(p, &Set1::lattice(t as i64), &Set1::one_plus(t as i64))
}

/// `phi_{1,t} (x) phi_{1,t}`.
pub fn phi_1_pair(p: u64, t: u32) -> SchwartzTensor {
    SchwartzTensor::pure(phi_1(p, t), phi_1(p, t))
}

/// Role of a prime in the local data.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    Good,
    Tame,
    Wild { m: u32, n: u32, t: u32 },
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::Good => f.write_str("good"),
            Role::Tame => f.write_str("tame"),
            Role::Wild { m, n, t } => write!(f, "wild(m={m},n={n},t={t})"),
        }
    }
}

/// Hecke element, invariance group and Schwartz function at one prime.
#[derive(Clone, Debug)]
pub struct LocalDataEntry {
    pub ell: u64,
    pub role: Role,
    pub xi: HeckeElt,
    pub w_generators: Vec<HElt>,
    pub phi: SchwartzTensor,
}

impl LocalDataEntry {
    /// Every generator of `W` fixes `phi` and left-fixes `xi`; wild entries vanish at the origin.
    pub fn check_invariance(&self) -> Result<()> {
        for h in &self.w_generators {
            if !self.phi.act(h).same_function(&self.phi) {
                return Err(step_err("W fixes phi", format!("{h:?}")));
            }
            if !self.xi.left_translate(&iota(h)).same_function(&self.xi) {
                return Err(step_err("W left-fixes xi", format!("{h:?}")));
            }
        }
        if matches!(self.role, Role::Wild { .. }) {
            let zero = [q(0), q(0)];
            if self.phi.terms().iter().any(|(_, a, b)| !a.eval(&zero).is_zero() && !b.eval(&zero).is_zero()) {
                return Err(step_err("phi vanishes at (0,0)", "nonzero"));
            }
        }
        Ok(())
    }
}

/// Builds and checks the local data for one prime.
pub fn make_local_data(role: Role, ell: u64) -> Result<LocalDataEntry> {
    check_prime(ell)?;
    let entry = match role {
        Role::Good => LocalDataEntry {
            ell,
            role,
            xi: HeckeElt::ch(ell, GSp4Elt::identity(), LevelSpec::Maximal),
            w_generators: kh1_generators(ell, 0, 0),
            phi: SchwartzTensor::pure(
                SchwartzFn::ch_product(ell, &Set1::lattice(0), &Set1::lattice(0)),
                SchwartzFn::ch_product(ell, &Set1::lattice(0), &Set1::lattice(0)),
            ),
        },
        Role::Tame => {
            let mut xi = HeckeElt::ch(ell, GSp4Elt::identity(), LevelSpec::KEll1);
            xi.push(-Rational::one(), eta_ell_r(ell, 1), LevelSpec::KEll1);
            LocalDataEntry { ell, role, xi, w_generators: kh1_generators(ell, 1, 2), phi: phi_1_pair(ell, 2) }
        }
        Role::Wild { m, n, t } => {
            if n < m.max(1) || t == 0 {
                return Err(NormError::Invalid(format!("need n >= max(m, 1) and t >= 1, got {role}")));
            }
            LocalDataEntry {
                ell,
                role,
                xi: HeckeElt::ch(ell, eta_ell_r(ell, m as i64), LevelSpec::Kmn { m, n }),
                w_generators: kh1_generators(ell, m, t),
                phi: phi_1_pair(ell, t),
            }
        }
    };
    entry.check_invariance()?;
    Ok(entry)
}

/// Whether `g^{-1} iota(h) g` lies in `level` for every `h`.
fn conjugates_into(gens: &[HElt], g: &GSp4Elt, level: LevelSpec, p: u64) -> bool {
    let gi = g.inv();
    gens.iter().all(|h| membership(&(&(&gi * &iota(h)) * g), level, p))
}

/// Result of the search for the least sufficient `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sufficiency {
    pub t_min: u32,
    pub bound: u32,
    pub monotone: bool,
}

/// Least `t <= n + 2m + 1` with `W_p(t) inside eta_{p,m} K_{p,m,n} eta_{p,m}^{-1}`.
pub fn sufficiency_check(p: u64, m: u32, n: u32) -> Result<Sufficiency> {
    if ![2, 3, 5].contains(&p) || m > 2 || n > 2 || n < m.max(1) {
        return Err(NormError::Invalid(format!("(p, m, n) = ({p}, {m}, {n})")));
    }
    let bound = n + 2 * m;
    let eta = eta_ell_r(p, m as i64);
    let level = LevelSpec::Kmn { m, n };
    let holds: Vec<bool> =
        (1..=bound + 1).map(|t| conjugates_into(&kh1_generators(p, m, t), &eta, level, p)).collect();
    let Some(i) = holds.iter().position(|&b| b) else {
        return Err(step_err("sufficiency", format!("no t <= {} works", bound + 1)));
    };
    let t_min = i as u32 + 1;
    let monotone = holds[i..].iter().all(|&b| b);
    if t_min > bound {
        return Err(step_err("sufficiency", format!("least t is {t_min} > {bound}")));
    }
    Ok(Sufficiency { t_min, bound, monotone })
}

/// `(1/(1+e), 0; c, 1+e)`, congruent to 1 mod `p^T` for `c, e in p^T Z`.
fn j_rep(c: &Rational, e: &Rational) -> QMat {
    let d = q(1) + e;
    qm([[d.recip(), q(0)], [c.clone(), d]])
}

/// Invariant of the coset `gamma K_1(p^t)`: `(0, 1) gamma^{-1} mod p^t`.
fn k1_coset_key(g: &QMat, p: u64, t: u32) -> (u64, u64) {
    let gi = g.inverse().expect("invertible");
    (residue(gi.get(1, 0), p, t), residue(gi.get(1, 1), p, t))
}

/// Outcome of the independence identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Indept {
    pub j_count: u64,
    pub index_ratio: u64,
    pub identity_holds: bool,
}

impl Indept {
    pub fn ok(&self) -> bool {
        self.identity_holds && self.j_count == self.index_ratio
    }
}

/// `phi_{1,T} = sum_{gamma in J} gamma . phi_{1,t}` with `J` inside the
/// principal congruence subgroup of level `l^T`.
pub fn indept_identity(ell: u64, big_t: u32, t: u32) -> Result<Indept> {
    if ![2, 3].contains(&ell) || big_t < 1 || big_t > t || t > 3 {
        return Err(NormError::Invalid(format!("(l, T, t) = ({ell}, {big_t}, {t})")));
    }
    let step = ppow(ell, big_t as i64);
    let count = upow(ell, t - big_t);
    let mut reps1 = Vec::new();
    let mut keys = BTreeSet::new();
    for i in 0..count {
        for j in 0..count {
            let g = j_rep(&(&step * q(i as i64)), &(&step * q(j as i64)));
            if !keys.insert(k1_coset_key(&g, ell, t)) {
                return Err(step_err("J distinct", format!("repeated coset for ({i}, {j})")));
            }
            reps1.push(g);
        }
    }
    let pcg = LevelSpec::Kmn { m: big_t, n: big_t };
    let target = phi_1_pair(ell, t);
    let mut sum = SchwartzTensor::zero(ell);
    let mut j_count = 0u64;
    for g1 in &reps1 {
        for g2 in &reps1 {
            let h = helt(g1.clone(), g2.clone());
            let ih = iota(&h);
            let principal = membership(&ih, pcg, ell)
                && (0..4).all(|r| (0..4).all(|c| {
                    let want = if r == c { q(1) } else { q(0) };
                    crate::padic::congruent(ih.get(r, c), &want, ell, big_t)
                }));
            if !principal {
                return Err(step_err("J principal", format!("{h:?}")));
            }
            sum.extend(&target.act(&h));
            j_count += 1;
        }
    }
    Ok(Indept {
        j_count,
        index_ratio: kh1_index(ell, t) / kh1_index(ell, big_t),
        identity_holds: sum.same_function(&phi_1_pair(ell, big_t)),
    })
}

/// Witness for one `(u, v, w)`: `eta_m X(u,v,w) = iota(h) eta_{m+1}^{(a)} k`.
#[derive(Clone, Debug)]
pub struct TripleWitness {
    pub u: i64,
    pub v: i64,
    pub w: i64,
    pub h: HElt,
    pub a: Rational,
    pub k: GSp4Elt,
}

/// Scalar relating the two sides of the wild norm relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WildFactor {
    /// `U'(l) / l`.
    OverEll,
    /// `(U'(l) - 1) / (l - 1)`.
    UMinusOneOverEllMinusOne,
}

impl fmt::Display for WildFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WildFactor::OverEll => f.write_str("U'/l"),
            WildFactor::UMinusOneOverEllMinusOne => f.write_str("(U'-1)/(l-1)"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct WildReport {
    pub ell: u64,
    pub m: u32,
    pub n: u32,
    pub witnesses: Vec<TripleWitness>,
    /// Least `T` whose principal congruence subgroup left-fixes every coset involved.
    pub invariance_level: u32,
    pub eta_next_terms: u64,
    pub identity_terms: u64,
    pub factor: WildFactor,
}

/// `eta_{m+1}^{(a)}`.
fn eta_next(ell: u64, m: u32, a: &Rational) -> GSp4Elt {
    eta_m(ell, m as i64 + 1, a)
}

/// Solves `eta_m X(u,v,w) = iota(h) eta_{m+1}^{(a)} k` with `h = ((l v; 0 1), (l w; 0 1))`.
fn solve_triple(ell: u64, m: u32, n: u32, u: i64, v: i64, w: i64) -> Result<TripleWitness> {
    let fail = |d: &str| step_err("i", format!("(u,v,w) = ({u},{v},{w}): {d}"));
    let g = &eta_ell_r(ell, m as i64) * &u_elt(ell, &q(u), &q(v), &q(w));
    let lq = q(ell as i64);
    let (bv, bw, b00, b11) = (g.get(0, 3).clone(), g.get(1, 2).clone(), g.get(0, 2).clone(), g.get(1, 3).clone());
    if b00 != b11 {
        return Err(fail("diagonal of B differs"));
    }
    let h = helt(qm([[lq.clone(), bv], [q(0), q(1)]]), qm([[lq.clone(), bw], [q(0), q(1)]]));
    let a = &b00 * ppow(ell, m as i64);
    let k = &(&eta_next(ell, m, &a).inv() * &iota(&h).inv()) * &g;
    if !membership(&k, LevelSpec::Kmn { m, n }, ell) {
        return Err(fail("k not in K_{m,n}"));
    }
    if &(&iota(&h) * &eta_next(ell, m, &a)) * &k != g {
        return Err(fail("factorization"));
    }
    Ok(TripleWitness { u, v, w, h, a, k })
}

/// The coset `X(u,v,w) K_{m,n}` for all triples is exactly `K diag(l,l,1,1) K / K`.
fn check_double_coset(ell: u64, m: u32, n: u32) -> Result<Vec<GSp4Elt>> {
    let level = LevelSpec::Kmn { m, n };
    let reps = enumerate_cosets(CosetSpec::UPrime { m, n }, ell)?;
    if reps.len() as u64 != ell * ell * ell {
        return Err(step_err("0", "wrong number of cosets"));
    }
    let t = GSp4Elt::diag(q(ell as i64), q(ell as i64), q(1), q(1))?;
    for (i, x) in reps.iter().enumerate() {
        if reps[..i].iter().any(|y| same_coset(x, y, level, ell)) {
            return Err(step_err("0", format!("coset {i} repeated")));
        }
        if !membership(&(x * &t.inv()), level, ell) {
            return Err(step_err("0", format!("coset {i} outside K t")));
        }
    }
    for k in kmn_generators(ell, m, n) {
        for x in &reps {
            let y = &k * x;
            if !reps.iter().any(|z| same_coset(&y, z, level, ell)) {
                return Err(step_err("0", "cosets not stable under K_{m,n}"));
            }
        }
    }
    Ok(reps)
}

/// All steps of the coset argument for the wild norm relation.
pub fn wild_coset_identity(ell: u64, m: u32, n: u32) -> Result<WildReport> {
    if ![2, 3].contains(&ell) || m > 2 || n > 2 || n < m.max(1) {
        return Err(NormError::Invalid(format!("(l, m, n) = ({ell}, {m}, {n})")));
    }
    let level = LevelSpec::Kmn { m, n };
    check_double_coset(ell, m, n)?;

    let l = ell as i64;
    let mut witnesses = Vec::new();
    for u in 0..l {
        for v in 0..l {
            for w in 0..l {
                witnesses.push(solve_triple(ell, m, n, u, v, w)?);
            }
        }
    }

    // cosets whose invariance level matters for passing to the limit
    let mut cosets: Vec<GSp4Elt> = witnesses.iter().map(|x| &eta_ell_r(ell, m as i64) * &u_elt(ell, &q(x.u), &q(x.v), &q(x.w))).collect();
    let etas: Vec<GSp4Elt> = (0..l).map(|u| eta_next(ell, m, &(q(1) + ppow(ell, m as i64) * q(u)))).collect();
    cosets.extend(etas.iter().cloned());
    let search = n + 2 * m + 4;
    let invariance_level = (1..=search)
        .find(|&t| {
            let gens = principal_h_generators(ell, t);
            cosets.iter().all(|g| conjugates_into(&gens, g, level, ell))
        })
        .ok_or_else(|| step_err("ii", format!("no invariance level <= {search}")))?;

    let lsq = q(l * l);
    for t in BTreeSet::from([n, n.max(invariance_level)]) {
        let phi = phi_1_pair(ell, t);
        let mut sum_vw = SchwartzTensor::zero(ell);
        for x in witnesses.iter().filter(|x| x.u == 0) {
            sum_vw.extend(&phi.act(&x.h.inv()));
        }
        let psi1 = SchwartzFn::ch_product(ell, &Set1::lattice(t as i64 + 1), &Set1::one_plus(t as i64));
        let psi = SchwartzTensor::pure(psi1.clone(), psi1);
        if !sum_vw.same_function(&psi.scale(&lsq)) {
            return Err(step_err("ii", format!("sum over (v, w) of h^-1 phi_(1,{t}) != l^2 psi")));
        }
        let finer = phi_1_pair(ell, t + 1);
        let mut decomposed = SchwartzTensor::zero(ell);
        for j1 in 0..l {
            for j2 in 0..l {
                let d1 = q(1) + ppow(ell, t as i64) * q(j1);
                let d2 = q(1) + ppow(ell, t as i64) * q(j2);
                let g = helt(diag2(d2.clone(), d1.clone()), diag2(d1, d2));
                if !etas.iter().all(|e| conjugates_into(std::slice::from_ref(&g), e, level, ell)) {
                    return Err(step_err("ii", "torus translate moves an eta coset"));
                }
                decomposed.extend(&finer.act(&g));
            }
        }
        if !decomposed.same_function(&psi) {
            return Err(step_err("ii", format!("psi != sum of translates of phi_(1,{})", t + 1)));
        }
        let ratio = &(&lsq * &lsq) * &(kh1_volume(ell, t + 1) / kh1_volume(ell, t));
        if ratio != Rational::one() {
            return Err(step_err("ii", format!("volume bookkeeping gives {ratio}")));
        }
    }

    let (mut eta_next_terms, mut identity_terms) = (0u64, 0u64);
    let base = &etas[0];
    let phi_n = phi_1_pair(ell, n);
    for (u, e) in etas.iter().enumerate() {
        let a = q(1) + ppow(ell, m as i64) * q(u as i64);
        if val(&a, ell) == Some(0) {
            let h = helt(diag2(a.clone(), q(1)), diag2(a.clone(), q(1)));
            let d = iota(&h);
            let conj_ok = &(&d * base) * &d.inv() == *e;
            let in_k = membership(&d, level, ell);
            let fixes = phi_n.act(&h).same_function(&phi_n);
            if !(conj_ok && in_k && fixes) {
                return Err(step_err("iii", format!("u = {u}: conjugation witness fails")));
            }
            eta_next_terms += 1;
        } else if membership(e, level, ell) {
            identity_terms += 1;
        } else {
            return Err(step_err("iii", format!("u = {u}: coset neither conjugate nor trivial")));
        }
    }
    let factor = match (eta_next_terms, identity_terms) {
        (c, 0) if c == ell => WildFactor::OverEll,
        (c, 1) if c == ell - 1 => WildFactor::UMinusOneOverEllMinusOne,
        (c, d) => return Err(step_err("bookkeeping", format!("{c} conjugate and {d} trivial terms"))),
    };
    let expected = if m >= 1 { WildFactor::OverEll } else { WildFactor::UMinusOneOverEllMinusOne };
    if factor != expected {
        return Err(step_err("bookkeeping", format!("got {factor}, expected {expected}")));
    }
    Ok(WildReport { ell, m, n, witnesses, invariance_level, eta_next_terms, identity_terms, factor })
}

/// `l/(l-1) P_l(1/l)` as an element of the spherical Hecke algebra, which
/// acts on `sigma^K` by `l/(l-1) L(sigma, -1/2)^{-1}`.
pub fn euler_factor_element(p: u64) -> Result<HeckeElt> {
    let k = HeckeElt::ch(p, GSp4Elt::identity(), LevelSpec::Maximal);
    let t = HeckeElt::double_coset(p, CosetSpec::T)?;
    let t1 = HeckeElt::double_coset(p, CosetSpec::T1)?;
    let r = HeckeElt::double_coset(p, CosetSpec::R)?;
    let l = q(p as i64);
    let x = l.recip();
    let xp = |e: i32| num_traits::pow(x.clone(), e as usize);
    let lp = |e: i32| num_traits::pow(l.clone(), e as usize);
    let c2 = &l * xp(2);
    let poly = k
        .add(&t.scale(&-xp(1)))
        .add(&t1.scale(&c2))
        .add(&r.scale(&(&c2 * (lp(2) + q(1)))))
        .add(&t.convolve(&r).scale(&-(lp(3) * xp(3))))
        .add(&r.convolve(&r).scale(&(lp(6) * xp(4))));
    Ok(poly.scale(&(&l / (&l - q(1)))))
}

/// Choice of the Hecke element `R` in the Frobenius-reciprocity identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RChoice {
    /// `R = c ch(K)` from the first tame relation at `t = 1`.
    Scalar,
    /// `R` the Euler-factor element, as in the final tame relation.
    EulerFactor,
    /// The Euler-factor element plus `ch(K)`.
    PerturbedEuler,
}

/// `sum_{u in U_0/U_1} u . Z_1 = R' . Z_0`, paired with the spherical vector,
/// with `U_0 = G(Z_l)`, `U_1 = K_{G,0}(l)` and the bilinear form of the
/// tame setting.
pub fn frobrecip_pairing_check(data: &TameData, p: u64, r: RChoice) -> Result<CheckOutcome> {
    check_prime(p)?;
    let phi0 = InducedVectorG::spherical(&data.sigma, p);
    let k = HeckeElt::ch(p, GSp4Elt::identity(), LevelSpec::Maximal);
    let z0 = bilinear_form(data, 0, PhiLabel::Spherical)?;
    // Z_0(R phi0) = z(f_0, ch(K) . R . phi0)
    let pair0 = |r_elt: &HeckeElt, scalar: &RatFunc| -> Result<RatFunc> {
        let rv = hecke_module_action(r_elt, &phi0)?.scale(scalar);
        let kv = hecke_module_action(&k, &rv)?;
        Ok(&kv.cells[0] * &z0)
    };
    let (lhs, rhs) = match r {
        RChoice::Scalar => {
            let z1 = bilinear_form(data, 1, PhiLabel::Spherical)?;
            let mut lhs = RatFunc::zero();
            for u in enumerate_cosets(CosetSpec::KModSiegel, p)? {
                // u^{-1} phi0 = phi0, and ch(U_1 u^{-1}) has the volume of U_1
                let term = hecke_module_action(&HeckeElt::ch(p, u.inv(), LevelSpec::SiegelParahoric), &phi0)?;
                lhs = &lhs + &(&term.cells[0] * &z1);
            }
            let lp1 = &RatFunc::ell() + &RatFunc::one();
            let c = &data.tau_euler() / &(&lp1 * &lp1);
            (lhs, pair0(&k, &c)?)
        }
        RChoice::EulerFactor | RChoice::PerturbedEuler => {
            let (lhs, _) = tame_final_sides(data, &TameFactors::standard())?;
            let mut e = euler_factor_element(p)?;
            if r == RChoice::PerturbedEuler {
                e = e.add(&k);
            }
            (lhs, pair0(&e, &RatFunc::one())?)
        }
    };
    Ok(CheckOutcome::compare(lhs, rhs, Some(p)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_lie_in_their_groups() {
        for p in [2, 3] {
            for (m, n) in [(0, 1), (1, 1), (1, 2), (2, 2)] {
                for g in kmn_generators(p, m, n) {
                    assert!(membership(&g, LevelSpec::Kmn { m, n }, p), "{g}");
                }
            }
            for h in principal_h_generators(p, 2) {
                assert!(membership(&iota(&h), LevelSpec::Kmn { m: 2, n: 2 }, p));
            }
        }
    }

    #[test]
    fn local_data_examples() {
        let good = make_local_data(Role::Good, 5).unwrap();
        assert_eq!(good.xi.terms().len(), 1);
        let tame = make_local_data(Role::Tame, 3).unwrap();
        assert_eq!(tame.xi.terms().len(), 2);
        make_local_data(Role::Wild { m: 1, n: 1, t: 3 }, 3).unwrap();
        assert!(make_local_data(Role::Wild { m: 1, n: 1, t: 1 }, 3).is_err());
        assert!(make_local_data(Role::Wild { m: 2, n: 1, t: 5 }, 3).is_err());
    }

    #[test]
    fn sufficiency_examples() {
        let s = sufficiency_check(3, 1, 1).unwrap();
        assert!(s.t_min <= 3 && s.monotone);
        let s = sufficiency_check(2, 0, 1).unwrap();
        assert!(s.t_min <= 1 && s.monotone);
    }

    #[test]
    fn indept_examples() {
        let r = indept_identity(2, 1, 2).unwrap();
        assert!(r.ok());
        assert_eq!(r.j_count, 16);
        let r = indept_identity(3, 1, 1).unwrap();
        assert!(r.ok());
        assert_eq!(r.j_count, 1);
    }

    #[test]
    fn wild_examples() {
        let r = wild_coset_identity(2, 1, 1).unwrap();
        assert_eq!(r.witnesses.len(), 8);
        assert_eq!(r.factor, WildFactor::OverEll);
        let r = wild_coset_identity(2, 0, 1).unwrap();
        assert_eq!((r.eta_next_terms, r.identity_terms), (1, 1));
        assert_eq!(r.factor, WildFactor::UMinusOneOverEllMinusOne);
        wild_coset_identity(3, 0, 2).unwrap();
    }

    #[test]
    fn frobrecip_cases() {
        let data = TameData::formal(1, 1);
        for p in [2, 3] {
            assert!(frobrecip_pairing_check(&data, p, RChoice::Scalar).unwrap().ok);
            assert!(frobrecip_pairing_check(&data, p, RChoice::EulerFactor).unwrap().ok);
            assert!(!frobrecip_pairing_check(&data, p, RChoice::PerturbedEuler).unwrap().ok);
        }
    }
}

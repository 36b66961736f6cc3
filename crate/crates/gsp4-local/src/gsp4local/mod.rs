//! Unramified principal series of GSp4(Q_l): spin L-factors, spherical Hecke
//! eigenvalues, the Siegel-parahoric invariants with the `U(l)` operator, and
//! Hecke-algebra actions on induced vectors.

use crate::gl2local::{eq_at_prime, l_factor, l_factor_formal, UnramChar, X};
use crate::padic::{
    enumerate_cosets, gl2_w, iota, iwasawa_gsp4, lagrangian_cell, CosetSpec, GSp4Elt, HElt, HeckeElt,
    LevelSpec, PadicError, QMat,
};
use crate::symcore::{q, ratfunc_eq, Bindings, RatFunc, Rational, SymError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Gsp4Error {
    #[error("unsupported level {0}")]
    Level(LevelSpec),
    #[error("Hecke element at level {got} does not act on {want}-invariants")]
    LevelMismatch { got: LevelSpec, want: LevelSpec },
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error(transparent)]
    Sym(#[from] SymError),
}

/// `chi_1 x chi_2 ⋊ rho` with `alpha = chi_1(l)`, `beta = chi_2(l)`, `c = rho(l)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalSeriesG {
    pub alpha: RatFunc,
    pub beta: RatFunc,
    pub c: RatFunc,
}

impl PrincipalSeriesG {
    pub fn new(alpha: RatFunc, beta: RatFunc, c: RatFunc) -> PrincipalSeriesG {
        PrincipalSeriesG { alpha, beta, c }
    }

    /// Fully formal Satake parameters `alpha`, `beta`, `c`.
    pub fn formal() -> PrincipalSeriesG {
        PrincipalSeriesG::new(RatFunc::var("alpha"), RatFunc::var("beta"), RatFunc::var("c"))
    }

    /// Spin parameters `{c, c alpha, c beta, c alpha beta}`.
    pub fn spin_parameters(&self) -> [RatFunc; 4] {
        let ca = &self.c * &self.alpha;
        let cb = &self.c * &self.beta;
        let cab = &ca * &self.beta;
        [self.c.clone(), ca, cb, cab]
    }

    pub fn central_character(&self) -> RatFunc {
        &(&self.alpha * &self.beta) * &(&self.c * &self.c)
    }

    /// Twist by `eta` through the multiplier.
    pub fn twist(&self, eta: &RatFunc) -> PrincipalSeriesG {
        PrincipalSeriesG::new(self.alpha.clone(), self.beta.clone(), &self.c * eta)
    }

    /// None of `chi_1, chi_2, chi_1 chi_2, chi_1/chi_2` is `|.|^{±1}`, i.e.
    /// none of their values at `l` is `l^{∓1}` identically.
    pub fn irreducible(&self) -> bool {
        let ab = &self.alpha * &self.beta;
        let a_over_b = &self.alpha / &self.beta;
        let ell = RatFunc::ell();
        let ell_inv = ell.inv().expect("ell is a unit");
        [&self.alpha, &self.beta, &ab, &a_over_b]
            .iter()
            .all(|x| !ratfunc_eq(x, &ell) && !ratfunc_eq(x, &ell_inv))
    }

    /// `|a^2 b| |c|^{-3/2} chi_1(a) chi_2(b) rho(c)` for valuations `(a, b, c)`.
    pub fn modulus_character(&self, (ea, eb, ec): (i64, i64, i64)) -> Result<RatFunc, Gsp4Error> {
        let f = RatFunc::sqrt_ell_pow((-2 * (2 * ea + eb) + 3 * ec) as i32);
        Ok(&(&f * &self.alpha.pow(ea as i32)?) * &(&self.beta.pow(eb as i32)? * &self.c.pow(ec as i32)?))
    }
}

/// `L(sigma ⊗ eta, shift/2)`, or `L(sigma ⊗ eta, s + shift/2)` in `X = l^{-s}`
/// when `formal` is set.
pub fn spin_l_factor(sigma: &PrincipalSeriesG, eta: &UnramChar, shift: i32, formal: bool) -> RatFunc {
    sigma
        .spin_parameters()
        .iter()
        .map(|g| {
            let chi = UnramChar::new(g.clone()).expect("unit parameter").mul(eta);
            if formal {
                l_factor_formal(&chi, shift)
            } else {
                l_factor(&chi, shift)
            }
        })
        .product()
}

/// `prod (1 - gamma l^{3/2} X)` over the spin parameters: `L(sigma, s - 3/2)^{-1}`.
pub fn spin_reciprocal_at_shift(sigma: &PrincipalSeriesG) -> RatFunc {
    spin_l_factor(sigma, &UnramChar::trivial(), -3, true).inv().expect("nonzero")
}

/// Weyl-group representatives of the four cells of
/// `B(Q_l) \ G(Q_l) / K_{G,0}(l)`, in the order of [`lagrangian_cell`].
pub fn parahoric_cell_reps() -> [GSp4Elt; 4] {
    let (i, w) = (QMat::identity(2), gl2_w());
    [
        iota(&HElt::new(i.clone(), i.clone()).unwrap()),
        iota(&HElt::new(i.clone(), w.clone()).unwrap()),
        iota(&HElt::new(w.clone(), i.clone()).unwrap()),
        iota(&HElt::new(w.clone(), w.clone()).unwrap()),
    ]
}

/// A right-invariant vector of `sigma`, stored by its values on the cells.
#[derive(Clone, Debug)]
pub struct InducedVectorG {
    pub sigma: PrincipalSeriesG,
    pub p: u64,
    pub level: LevelSpec,
    pub cells: Vec<RatFunc>,
}

impl InducedVectorG {
    pub fn spherical(sigma: &PrincipalSeriesG, p: u64) -> InducedVectorG {
        InducedVectorG { sigma: sigma.clone(), p, level: LevelSpec::Maximal, cells: vec![RatFunc::one()] }
    }

    /// Indicator of the cell `B w_j K_{G,0}(l)`, normalized by `f(w_j) = 1`.
    pub fn parahoric_basis(sigma: &PrincipalSeriesG, p: u64, j: usize) -> InducedVectorG {
        let cells = (0..4).map(|i| if i == j { RatFunc::one() } else { RatFunc::zero() }).collect();
        InducedVectorG { sigma: sigma.clone(), p, level: LevelSpec::SiegelParahoric, cells }
    }

    pub fn cell_reps(&self) -> Vec<GSp4Elt> {
        match self.level {
            LevelSpec::SiegelParahoric => parahoric_cell_reps().to_vec(),
            _ => vec![GSp4Elt::identity()],
        }
    }

    fn cell_of(&self, k: &GSp4Elt) -> usize {
        match self.level {
            LevelSpec::SiegelParahoric => lagrangian_cell(k, self.p),
            _ => 0,
        }
    }

    pub fn scale(&self, c: &RatFunc) -> InducedVectorG {
        InducedVectorG { cells: self.cells.iter().map(|x| x * c).collect(), ..self.clone() }
    }

    pub fn add(&self, o: &InducedVectorG) -> InducedVectorG {
        assert_eq!(self.level, o.level);
        InducedVectorG { cells: self.cells.iter().zip(&o.cells).map(|(a, b)| a + b).collect(), ..self.clone() }
    }

    /// Same function on `G(Q_l)`, comparing values in Q(sqrt p)(...).
    pub fn same_as(&self, o: &InducedVectorG) -> bool {
        self.level == o.level && self.cells.iter().zip(&o.cells).all(|(a, b)| eq_at_prime(a, b, self.p))
    }
}

/// `f(g)` via `g = b k`: the modulus character at `b` times the cell value at `k`.
pub fn eval_induced(f: &InducedVectorG, g: &GSp4Elt) -> Result<RatFunc, Gsp4Error> {
    if !matches!(f.level, LevelSpec::Maximal | LevelSpec::SiegelParahoric) {
        return Err(Gsp4Error::Level(f.level));
    }
    let r = iwasawa_gsp4(g, f.p);
    let value = &f.cells[f.cell_of(&r.k)];
    if value.is_zero() {
        return Ok(RatFunc::zero());
    }
    let m = f.sigma.modulus_character(r.torus_exponents(f.p))?;
    Ok((&m * value).specialize_prime(f.p)?)
}

/// Spherical Hecke operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SphericalOp {
    T,
    T1,
    R,
}

/// Eigenvalue of `op` on `sigma^K`: the sum of the spherical vector over the
/// single cosets of the double coset.
pub fn hecke_eigenvalue(op: SphericalOp, sigma: &PrincipalSeriesG, p: u64) -> Result<RatFunc, Gsp4Error> {
    let spec = match op {
        SphericalOp::T => CosetSpec::T,
        SphericalOp::T1 => CosetSpec::T1,
        SphericalOp::R => CosetSpec::R,
    };
    let f = InducedVectorG::spherical(sigma, p);
    let mut total = RatFunc::zero();
    for g in enumerate_cosets(spec, p)? {
        total = &total + &eval_induced(&f, &g)?;
    }
    Ok(total.specialize_prime(p)?)
}

/// `P_l(X)` evaluated at eigenvalues `(t, t1, r)`.
pub fn hecke_polynomial(t: &RatFunc, t1: &RatFunc, r: &RatFunc, p: u64) -> RatFunc {
    let x = RatFunc::var(X);
    let l = RatFunc::constant(q(p as i64));
    let xp = |k: i32| x.pow(k).unwrap();
    let lp = |k: i32| l.pow(k).unwrap();
    let c2 = &l * &(t1 + &(&(&lp(2) + &RatFunc::one()) * r));
    let c3 = &lp(3) * &(t * r);
    let c4 = &lp(6) * &(r * r);
    let poly = &(&(&RatFunc::one() - &(t * &xp(1))) + &(&c2 * &xp(2))) - &(&c3 * &xp(3));
    &poly + &(&c4 * &xp(4))
}

/// Outcome of an identity check, with both sides on failure.
#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub ok: bool,
    pub lhs: RatFunc,
    pub rhs: RatFunc,
}

impl CheckOutcome {
    pub fn compare(lhs: RatFunc, rhs: RatFunc, p: Option<u64>) -> CheckOutcome {
        let ok = match p {
            Some(p) => eq_at_prime(&lhs, &rhs, p),
            None => ratfunc_eq(&lhs, &rhs),
        };
        CheckOutcome { ok, lhs, rhs }
    }
}

/// `P_l(X)` at the computed eigenvalues against `L(sigma, s - 3/2)^{-1}`;
/// `perturb_t` is added to the `T(l)` eigenvalue.
pub fn hecke_poly_check(sigma: &PrincipalSeriesG, p: u64, perturb_t: &Rational) -> Result<CheckOutcome, Gsp4Error> {
    let t = &hecke_eigenvalue(SphericalOp::T, sigma, p)? + &RatFunc::constant(perturb_t.clone());
    let t1 = hecke_eigenvalue(SphericalOp::T1, sigma, p)?;
    let r = hecke_eigenvalue(SphericalOp::R, sigma, p)?;
    let lhs = hecke_polynomial(&t, &t1, &r, p).specialize_prime(p)?;
    let rhs = spin_reciprocal_at_shift(sigma).specialize_prime(p)?;
    Ok(CheckOutcome::compare(lhs, rhs, Some(p)))
}

/// Matrix of `U(l) = sum_{u,v,w} [l,0,u,v; 0,l,w,u; 0,0,1,0; 0,0,0,1]` on the
/// cell basis of `sigma^{K_{G,0}(l)}`: column `j` holds `U f_j`.
pub fn parahoric_u_matrix(sigma: &PrincipalSeriesG, p: u64) -> Result<Vec<Vec<RatFunc>>, Gsp4Error> {
    let reps = parahoric_cell_reps();
    let us = enumerate_cosets(CosetSpec::U, p)?;
    let mut m = vec![vec![RatFunc::zero(); 4]; 4];
    for (i, wi) in reps.iter().enumerate() {
        for x in &us {
            let r = iwasawa_gsp4(&(wi * x), p);
            let j = lagrangian_cell(&r.k, p);
            let v = sigma.modulus_character(r.torus_exponents(p))?;
            m[i][j] = &m[i][j] + &v;
        }
    }
    for row in &mut m {
        for x in row.iter_mut() {
            *x = x.specialize_prime(p)?;
        }
    }
    Ok(m)
}

/// `det(1 - M X)` for a 4x4 matrix, by cofactor expansion.
pub fn char_poly_reciprocal(m: &[Vec<RatFunc>]) -> RatFunc {
    let x = RatFunc::var(X);
    let n = m.len();
    let a: Vec<Vec<RatFunc>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let d = if i == j { RatFunc::one() } else { RatFunc::zero() };
                    &d - &(&m[i][j] * &x)
                })
                .collect()
        })
        .collect();
    det(&a)
}

fn det(a: &[Vec<RatFunc>]) -> RatFunc {
    let n = a.len();
    if n == 1 {
        return a[0][0].clone();
    }
    let mut total = RatFunc::zero();
    for j in 0..n {
        if a[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<RatFunc>> =
            a[1..].iter().map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect()).collect();
        let term = &a[0][j] * &det(&minor);
        total = if j % 2 == 0 { &total + &term } else { &total - &term };
    }
    total
}

/// `det(1 - U(l) X)` on the parahoric invariants against `L(sigma, s - 3/2)^{-1}`.
pub fn parahoric_check(sigma: &PrincipalSeriesG, p: u64) -> Result<CheckOutcome, Gsp4Error> {
    let m = parahoric_u_matrix(sigma, p)?;
    let lhs = char_poly_reciprocal(&m).specialize_prime(p)?;
    let rhs = spin_reciprocal_at_shift(sigma).specialize_prime(p)?;
    Ok(CheckOutcome::compare(lhs, rhs, Some(p)))
}

/// `(xi . f)(x) = int xi(g) f(x g) dg`, returned on the cells of `f`'s level.
/// Every coset `g U` of `xi` must have `U` contained in the level of `f`, and
/// `xi` must be left-invariant under that level.
pub fn hecke_module_action(xi: &HeckeElt, f: &InducedVectorG) -> Result<InducedVectorG, Gsp4Error> {
    let mut cells = Vec::new();
    for x in f.cell_reps() {
        let mut total = RatFunc::zero();
        for (c, g, u) in xi.terms() {
            if !level_contains(f.level, *u) {
                return Err(Gsp4Error::LevelMismatch { got: *u, want: f.level });
            }
            let v = eval_induced(f, &(&x * g))?;
            total = &total + &(&v * &RatFunc::constant(c * u.volume(f.p)));
        }
        cells.push(total.specialize_prime(f.p)?);
    }
    Ok(InducedVectorG { cells, ..f.clone() })
}

fn level_contains(big: LevelSpec, small: LevelSpec) -> bool {
    match big {
        LevelSpec::Maximal => true,
        LevelSpec::SiegelParahoric => matches!(
            small,
            LevelSpec::SiegelParahoric | LevelSpec::Kmn { .. } | LevelSpec::KPrimeMn { .. }
        ),
        other => other == small,
    }
}

/// Substitutions generating the Weyl group action on `(alpha, beta, c)`.
pub fn weyl_generators() -> [Bindings; 2] {
    let (a, b, c) = (RatFunc::var("alpha"), RatFunc::var("beta"), RatFunc::var("c"));
    let swap: Bindings = [("alpha".to_string(), b.clone()), ("beta".to_string(), a.clone())].into_iter().collect();
    let inv: Bindings = [("alpha".to_string(), a.inv().unwrap()), ("c".to_string(), &c * &a)].into_iter().collect();
    [swap, inv]
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn modulus_at_diag() {
        let s = PrincipalSeriesG::formal();
        let g = GSp4Elt::diag(q(3), q(3), q(1), q(1)).unwrap();
        let v = eval_induced(&InducedVectorG::spherical(&s, 3), &g).unwrap();
        let expect = &(&(&s.alpha * &s.beta) * &s.c) * &RatFunc::sqrt_ell_pow(-3);
        assert!(eq_at_prime(&v, &expect, 3), "{v}");
    }

    #[test]
    fn hecke_polynomial_small_primes() {
        let s = PrincipalSeriesG::formal();
        for p in [2, 3] {
            let r = hecke_poly_check(&s, p, &Rational::zero()).unwrap();
            assert!(r.ok, "p={p}\nlhs {}\nrhs {}", r.lhs, r.rhs);
        }
        assert!(!hecke_poly_check(&s, 2, &q(1)).unwrap().ok);
    }

    #[test]
    fn u_matrix_char_poly() {
        let s = PrincipalSeriesG::formal();
        for p in [2, 3] {
            let r = parahoric_check(&s, p).unwrap();
            assert!(r.ok, "p={p}\nlhs {}\nrhs {}", r.lhs, r.rhs);
        }
    }

    #[test]
    fn irreducibility_flags() {
        let s = PrincipalSeriesG::formal();
        assert!(s.irreducible());
        let bad = PrincipalSeriesG::new(RatFunc::ell(), s.beta.clone(), s.c.clone());
        assert!(!bad.irreducible());
    }
    #[test]
    fn central_eigenvalue() {
        let s = PrincipalSeriesG::formal();
        let r = hecke_eigenvalue(SphericalOp::R, &s, 2).unwrap();
        assert!(eq_at_prime(&r, &s.central_character(), 2));
    }

    #[test]
    fn eigenvalues_are_weyl_invariant() {
        let s = PrincipalSeriesG::formal();
        for op in [SphericalOp::T, SphericalOp::T1, SphericalOp::R] {
            let e = hecke_eigenvalue(op, &s, 2).unwrap();
            for w in weyl_generators() {
                assert!(eq_at_prime(&e, &e.substitute(&w).unwrap(), 2), "{op:?}");
            }
        }
    }

    #[test]
    fn module_action_basics() {
        let p = 2;
        let s = PrincipalSeriesG::formal();
        let f = InducedVectorG::spherical(&s, p);
        let k = HeckeElt::ch(p, GSp4Elt::identity(), LevelSpec::Maximal);
        assert!(hecke_module_action(&k, &f).unwrap().same_as(&f));
        let t = HeckeElt::double_coset(p, CosetSpec::T).unwrap();
        let tf = hecke_module_action(&t, &f).unwrap();
        let e = hecke_eigenvalue(SphericalOp::T, &s, p).unwrap();
        assert!(tf.same_as(&f.scale(&e)));
        let lhs = hecke_module_action(&t, &tf).unwrap();
        let rhs = hecke_module_action(&t.convolve(&t), &f).unwrap();
        assert!(lhs.same_as(&rhs));
    }

    #[test]
    fn averaging_parahoric_vectors_gives_spherical() {
        let p = 2;
        let s = PrincipalSeriesG::formal();
        let avg = HeckeElt::double_coset(p, CosetSpec::KModSiegel).unwrap();
        for j in 0..4 {
            let f = InducedVectorG::parahoric_basis(&s, p, j);
            let g = hecke_module_action(&avg, &f).unwrap();
            assert!(g.cells.iter().all(|c| eq_at_prime(c, &g.cells[0], p)), "cell {j}");
        }
        let total = (0..4)
            .map(|j| InducedVectorG::parahoric_basis(&s, p, j))
            .reduce(|a, b| a.add(&b))
            .unwrap();
        let g = hecke_module_action(&avg, &total).unwrap();
        assert!(g.cells.iter().all(|c| eq_at_prime(c, &RatFunc::one(), p)));
    }

    #[test]
    fn off_cell_values_vanish() {
        let s = PrincipalSeriesG::formal();
        let f = InducedVectorG::parahoric_basis(&s, 3, 2);
        let reps = parahoric_cell_reps();
        assert!(eval_induced(&f, &reps[1]).unwrap().is_zero());
        assert!(eq_at_prime(&eval_induced(&f, &reps[2]).unwrap(), &RatFunc::one(), 3));
    }
}

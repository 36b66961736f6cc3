//! Split Bessel models of unramified principal series, Novodvorsky's zeta
//! integral, the map `z_s` to sections on H, the local bilinear form and the
//! tame norm relations it satisfies.

use crate::gl2local::{l_factor, tate_at_identity, StdSet, UnramChar, X};
use crate::gsp4local::{spin_l_factor, CheckOutcome, PrincipalSeriesG};
use crate::padic::{CycloQ, QMat, SchwartzFn, Set1};
use crate::symcore::{q, ratfunc_eq, series_expand, Bindings, RatFunc, SymError};

/// Formal variable `u = eta(l) l^{-(s - 3/2)}` of the Bessel generating function.
pub const U: &str = "u";
/// Formal variable `Y = l^{-2s}` of the sections `z_s`.
pub const Y: &str = "Y";

/// Minimal number of Bessel coefficients for exact reconstruction.
pub const MIN_ORDER: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BesselError {
    #[error("lambda_1 lambda_2 must equal the central character alpha beta c^2")]
    CentralCharacter,
    #[error("character sum out of modeled domain (j = {j}, k = {k})")]
    OutOfDomain { j: i64, k: i64 },
    #[error("series of {0} terms is too short for reconstruction")]
    OrderTooSmall(usize),
    #[error("reconstruction mismatch: coefficient of u^{degree} is {coeff}")]
    Reconstruction { degree: usize, coeff: String },
    #[error("U(l^k) bookkeeping failed: {0}")]
    Bookkeeping(String),
    #[error("vector is not invariant under N_S(Z_l)")]
    NotInvariant,
    #[error("limit does not exist")]
    LimitDoesNotExist,
    #[error(transparent)]
    Sym(#[from] SymError),
}

type Result<T> = std::result::Result<T, BesselError>;

/// `sigma` with an unramified character `lambda(diag(x,y,x,y)) = lambda_1(x) lambda_2(y)`.
#[derive(Clone, Debug)]
pub struct BesselDatum {
    pub sigma: PrincipalSeriesG,
    pub lambda1: RatFunc,
    pub lambda2: RatFunc,
}

impl BesselDatum {
    pub fn new(sigma: PrincipalSeriesG, lambda1: RatFunc, lambda2: RatFunc) -> Result<BesselDatum> {
        if !ratfunc_eq(&(&lambda1 * &lambda2), &sigma.central_character()) {
            return Err(BesselError::CentralCharacter);
        }
        Ok(BesselDatum { sigma, lambda1, lambda2 })
    }

    /// Formal `alpha, beta, c, lambda_1` with `lambda_2` forced by the central character.
    pub fn formal() -> BesselDatum {
        let sigma = PrincipalSeriesG::formal();
        let l1 = RatFunc::var("lambda1");
        let l2 = &sigma.central_character() / &l1;
        BesselDatum { sigma, lambda1: l1, lambda2: l2 }
    }

    /// `prod_gamma (1 - gamma v^{-3} u)`, which is `L(sigma (x) eta, s)^{-1}` in `u`.
    pub fn spin_denominator(&self) -> RatFunc {
        let u = RatFunc::var(U);
        let w = &RatFunc::sqrt_ell_pow(-3) * &u;
        self.sigma.spin_parameters().iter().map(|g| &RatFunc::one() - &(g * &w)).product()
    }

    /// `prod_i (1 - lambda_i v^{-4} u)`.
    pub fn lambda_numerator(&self) -> RatFunc {
        let w = &RatFunc::sqrt_ell_pow(-4) * &RatFunc::var(U);
        [&self.lambda1, &self.lambda2].iter().map(|l| &RatFunc::one() - &(*l * &w)).product()
    }

    /// `G(u) = sum B_n u^n`.
    pub fn generating_function(&self) -> RatFunc {
        &self.lambda_numerator() / &self.spin_denominator()
    }
}

/// `B(diag(l^n, l^n, 1, 1))` for `n` in `offset .. offset + values.len()`,
/// zero below `offset`.
#[derive(Clone, Debug)]
pub struct BesselSeries {
    pub datum: BesselDatum,
    pub offset: i64,
    pub values: Vec<RatFunc>,
}

impl BesselSeries {
    /// `B_n`; `None` beyond the truncation.
    pub fn get(&self, n: i64) -> Option<RatFunc> {
        if n < self.offset {
            return Some(RatFunc::zero());
        }
        self.values.get((n - self.offset) as usize).cloned()
    }

    /// Index of the last known coefficient.
    pub fn last(&self) -> i64 {
        self.offset + self.values.len() as i64 - 1
    }
}

/// Bessel values of the spherical vector through `u^order`.
pub fn bessel_series(datum: &BesselDatum, order: usize) -> Result<BesselSeries> {
    let s = series_expand(&datum.generating_function(), U, order + 1)?;
    Ok(BesselSeries { datum: datum.clone(), offset: 0, values: s.coeffs().to_vec() })
}

/// `sum_{u mod l^k} e_l(x u)` for `v(x) = j`, formal in `l`.
pub fn char_sum(j: i64, k: i64) -> Result<RatFunc> {
    if j < -k {
        return Err(BesselError::OutOfDomain { j, k });
    }
    if j >= 0 {
        Ok(RatFunc::ell().pow(k as i32)?)
    } else {
        Ok(RatFunc::zero())
    }
}

/// Bessel values of `U(l^k) phi` from those of `phi`.
pub fn ul_bessel_transform(series: &BesselSeries, k: i64) -> Result<BesselSeries> {
    if series.offset != 0 {
        return Err(BesselError::NotInvariant);
    }
    let ell = RatFunc::ell();
    let vw = ell.pow(2 * k as i32)?;
    let target = ell.pow(3 * k as i32)?;
    let mut values = Vec::new();
    for n in -k..=series.last() - k {
        let factor = &vw * &char_sum(n, k)?;
        let b = series.get(n + k).expect("within truncation");
        if n < 0 {
            if !factor.is_zero() {
                return Err(BesselError::Bookkeeping(format!("nonzero value at n = {n}")));
            }
            continue;
        }
        if !ratfunc_eq(&factor, &target) {
            return Err(BesselError::Bookkeeping(format!("l^{{2k}} * sum = {factor} at n = {n}")));
        }
        values.push(&factor * &b);
    }
    Ok(BesselSeries { datum: series.datum.clone(), offset: 0, values })
}

/// Bessel values of `diag(l^et l^ea, l^et l^eb, l^ea, l^eb) phi`.
pub fn torus_translate(series: &BesselSeries, ea: i32, eb: i32, et: i64) -> Result<BesselSeries> {
    let c = &series.datum.lambda1.pow(ea)? * &series.datum.lambda2.pow(eb)?;
    Ok(BesselSeries {
        datum: series.datum.clone(),
        offset: series.offset - et,
        values: series.values.iter().map(|b| &c * b).collect(),
    })
}

/// Test vectors for the zeta integral.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhiLabel {
    Spherical,
    USpherical,
}

impl std::str::FromStr for PhiLabel {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "spherical" | "phi0" => Ok(PhiLabel::Spherical),
            "U" | "U-spherical" | "Uphi0" => Ok(PhiLabel::USpherical),
            _ => Err(format!("unknown vector label `{s}`")),
        }
    }
}

/// `Z(phi, eta, lambda, s)` as a Laurent polynomial in `X = l^{-s}`, from the
/// truncated Bessel values of `phi`.
pub fn zeta_from_series(series: &BesselSeries, eta: &UnramChar) -> Result<RatFunc> {
    let n = series.values.len();
    if n < MIN_ORDER {
        return Err(BesselError::OrderTooSmall(n));
    }
    let u = RatFunc::var(U);
    let partial: RatFunc = series
        .values
        .iter()
        .enumerate()
        .map(|(i, b)| b * &u.pow(i as i32).unwrap())
        .sum();
    let product = &series.datum.spin_denominator() * &partial;
    let coeffs = series_expand(&product, U, n)?;
    for (degree, c) in coeffs.coeffs().iter().enumerate().skip(5) {
        if !c.is_zero() {
            return Err(BesselError::Reconstruction { degree, coeff: c.to_string() });
        }
    }
    let head: RatFunc = coeffs.coeffs()[..5]
        .iter()
        .enumerate()
        .map(|(i, c)| c * &u.pow(i as i32 + series.offset as i32).unwrap())
        .sum();
    let value = &eta.at_ell() * &(&RatFunc::sqrt_ell_pow(3) * &RatFunc::var(X));
    let b: Bindings = [(U.to_string(), value)].into_iter().collect();
    Ok(head.substitute(&b)?)
}

/// `Z(phi, eta, lambda, s)` for a labelled vector, using `order + 1` Bessel values.
pub fn zeta(label: PhiLabel, datum: &BesselDatum, eta: &UnramChar, order: usize) -> Result<RatFunc> {
    match label {
        PhiLabel::Spherical => zeta_from_series(&bessel_series(datum, order)?, eta),
        PhiLabel::USpherical => {
            let s = bessel_series(datum, order + 1)?;
            zeta_from_series(&ul_bessel_transform(&s, 1)?, eta)
        }
    }
}

fn lambda_factors(datum: &BesselDatum, eta: &UnramChar, var: &str, shift: i32) -> RatFunc {
    let x = RatFunc::var(var);
    [&datum.lambda1, &datum.lambda2]
        .iter()
        .map(|l| &RatFunc::one() - &(&(&(*l * &eta.at_ell()) * &RatFunc::sqrt_ell_pow(-shift)) * &x))
        .product()
}

fn spin_reciprocal(sigma: &PrincipalSeriesG, eta: &UnramChar, var: &str, shift: i32) -> RatFunc {
    let x = RatFunc::var(var);
    let w = &(&eta.at_ell() * &RatFunc::sqrt_ell_pow(-shift)) * &x;
    sigma.spin_parameters().iter().map(|g| &RatFunc::one() - &(g * &w)).product()
}

/// Closed forms: `[L(lambda_1 eta, s+1/2) L(lambda_2 eta, s+1/2)]^{-1}` and
/// `l^{s+3/2} / eta(l) [that - L(sigma (x) eta, s)^{-1}]`.
pub fn zeta_expected(label: PhiLabel, datum: &BesselDatum, eta: &UnramChar) -> Result<RatFunc> {
    let lam = lambda_factors(datum, eta, X, 1);
    match label {
        PhiLabel::Spherical => Ok(lam),
        PhiLabel::USpherical => {
            let spin = spin_l_factor(&datum.sigma, eta, 0, true).inv()?;
            let pre = &RatFunc::sqrt_ell_pow(3) / &(&eta.at_ell() * &RatFunc::var(X));
            Ok(&pre * &(&lam - &spin))
        }
    }
}

/// Compares [`zeta`] with [`zeta_expected`].
pub fn zeta_check(label: PhiLabel, datum: &BesselDatum, eta: &UnramChar, order: usize) -> Result<CheckOutcome> {
    Ok(CheckOutcome::compare(zeta(label, datum, eta, order)?, zeta_expected(label, datum, eta)?, None))
}

/// Characters `(chi_1, chi_2)` and `(psi_1, psi_2)` of the pair `I_H(chi, psi)`.
#[derive(Clone, Debug)]
pub struct HChars {
    pub chi: (UnramChar, UnramChar),
    pub psi: (UnramChar, UnramChar),
}

impl HChars {
    /// `lambda_1 = (psi_1 chi_2)^{-1}`, `lambda_2 = (chi_1 psi_2)^{-1}`.
    pub fn bessel_datum(&self, sigma: &PrincipalSeriesG) -> Result<BesselDatum> {
        let l1 = self.psi.0.mul(&self.chi.1).inv().at_ell();
        let l2 = self.chi.0.mul(&self.psi.1).inv().at_ell();
        BesselDatum::new(sigma.clone(), l1, l2)
    }

    /// `eta = psi_1 psi_2`.
    pub fn eta(&self) -> UnramChar {
        self.psi.0.mul(&self.psi.1)
    }

    /// `prod_i L(psi_i/chi_i, 2s+1)^{-1}` in `Y`.
    fn euler_in_y(&self) -> RatFunc {
        let y = RatFunc::var(Y);
        [(&self.psi.0, &self.chi.0), (&self.psi.1, &self.chi.1)]
            .iter()
            .map(|(p, c)| &RatFunc::one() - &(&(&p.div(c).at_ell() * &RatFunc::sqrt_ell_pow(-2)) * &y))
            .product()
    }
}

/// `z_s(phi)(1) = Z(phi, eta, lambda, 2s + 1/2)` in `Y = l^{-2s}`.
pub fn z_section(label: PhiLabel, sigma: &PrincipalSeriesG, chars: &HChars) -> Result<RatFunc> {
    let datum = chars.bessel_datum(sigma)?;
    let z = zeta(label, &datum, &chars.eta(), MIN_ORDER + 2)?;
    let x_of_y = &RatFunc::var(Y) * &RatFunc::sqrt_ell_pow(-1);
    let b: Bindings = [(X.to_string(), x_of_y)].into_iter().collect();
    Ok(z.substitute(&b)?)
}

/// Closed forms of `z_s(phi_0)(1)` and `z_s(U(l) phi_0)(1)`.
pub fn z_section_expected(label: PhiLabel, sigma: &PrincipalSeriesG, chars: &HChars) -> Result<RatFunc> {
    let e = chars.euler_in_y();
    match label {
        PhiLabel::Spherical => Ok(e),
        PhiLabel::USpherical => {
            let pre = &RatFunc::ell().pow(2)? / &(&RatFunc::var(Y) * &chars.eta().at_ell());
            Ok(&pre * &(&e - &spin_reciprocal(sigma, &chars.eta(), Y, 1)))
        }
    }
}

/// `(ell^{t-1} (ell + 1))^{-2}`, the volume of `K_{H,0}(l^t)` in `H(Z_l)`.
pub fn vol_kh0(t: u32) -> RatFunc {
    if t == 0 {
        return RatFunc::one();
    }
    let ell = RatFunc::ell();
    let idx = &ell.pow(t as i32 - 1).unwrap() * &(&ell + &RatFunc::one());
    idx.pow(-2).unwrap()
}

/// Tame data: `psi_i = |.|^{-1/2}`, `chi_i = |.|^{1/2 + k_i} tau_i` with
/// `tau_i` unramified, and `sigma` with matching central character.
#[derive(Clone, Debug)]
pub struct TameData {
    pub sigma: PrincipalSeriesG,
    pub k: (i32, i32),
    pub tau: (RatFunc, RatFunc),
}

impl TameData {
    pub fn new(sigma: PrincipalSeriesG, k: (i32, i32), tau: (RatFunc, RatFunc)) -> Result<TameData> {
        let d = TameData { sigma, k, tau };
        d.chars().bessel_datum(&d.sigma)?;
        Ok(d)
    }

    /// Formal `beta, c, tau_1, tau_2`; `alpha` is fixed by
    /// `alpha beta c^2 = l^{k_1 + k_2} / (tau_1 tau_2)`.
    pub fn formal(k1: i32, k2: i32) -> TameData {
        let (beta, c) = (RatFunc::var("beta"), RatFunc::var("c"));
        let tau = (RatFunc::var("tau1"), RatFunc::var("tau2"));
        let num = RatFunc::ell().pow(k1 + k2).unwrap();
        let alpha = &num / &(&(&tau.0 * &tau.1) * &(&beta * &(&c * &c)));
        TameData { sigma: PrincipalSeriesG::new(alpha, beta, c), k: (k1, k2), tau }
    }

    pub fn chars(&self) -> HChars {
        let chi = |tau: &RatFunc, k: i32| UnramChar::shifted(tau.clone(), 1 + 2 * k).expect("unit");
        let psi = UnramChar::shifted(RatFunc::one(), -1).unwrap();
        HChars { chi: (chi(&self.tau.0, self.k.0), chi(&self.tau.1, self.k.1)), psi: (psi.clone(), psi) }
    }

    /// `prod_i (1 - l^{k_i} / tau_i(l))`.
    pub fn tau_euler(&self) -> RatFunc {
        let ell = RatFunc::ell();
        let f = |t: &RatFunc, k: i32| &RatFunc::one() - &(&ell.pow(k).unwrap() / t);
        &f(&self.tau.0, self.k.0) * &f(&self.tau.1, self.k.1)
    }

    /// `L(sigma, -1/2)^{-1}`.
    pub fn spin_at_minus_half_inv(&self) -> RatFunc {
        spin_l_factor(&self.sigma, &UnramChar::trivial(), -1, false).inv().unwrap()
    }
}

/// `z(F_{phi_t}, phi)`, through the volume of `K_{H,0}(l^t)`, the section
/// value `f_{phi_t, psi, chi}(1)` and the exact `s -> 0` limit.
pub fn bilinear_form(data: &TameData, t: u32, label: PhiLabel) -> Result<RatFunc> {
    let chars = data.chars();
    let (sa, sb) = if t == 0 { (StdSet::Lattice(0), StdSet::Lattice(0)) } else { (StdSet::Lattice(t as i64), StdSet::Shell(0)) };
    let section = |psi: &UnramChar, chi: &UnramChar| tate_at_identity(sa, sb, &psi.at_ell(), &chi.at_ell()).expect("section value");
    let f1 = &section(&chars.psi.0, &chars.chi.0) * &section(&chars.psi.1, &chars.chi.1);
    let lm = &l_factor(&chars.chi.0.div(&chars.psi.0), 2) * &l_factor(&chars.chi.1.div(&chars.psi.1), 2);
    let bracket = &z_section(label, &data.sigma, &chars)? / &chars.euler_in_y();
    let at_zero: Bindings = [(Y.to_string(), RatFunc::one())].into_iter().collect();
    let limit = bracket.substitute(&at_zero).map_err(|_| BesselError::LimitDoesNotExist)?;
    Ok(&(&(&vol_kh0(t) * &f1) / &lm) * &limit)
}

/// The two displayed norm relations at level `t` (the second only at `t = 1`).
pub fn tamenormrel_check(data: &TameData, t: u32) -> Result<(CheckOutcome, Option<CheckOutcome>)> {
    let z0 = bilinear_form(data, 0, PhiLabel::Spherical)?;
    let ell = RatFunc::ell();
    let one = RatFunc::one();
    let lp1 = &ell + &one;
    let first_factor = (&ell.pow(2 * t as i32 - 2)? * &(&lp1 * &lp1)).inv()?;
    let first = CheckOutcome::compare(
        bilinear_form(data, t, PhiLabel::Spherical)?,
        &(&first_factor * &data.tau_euler()) * &z0,
        None,
    );
    let second = if t == 1 {
        let factor = &ell / &(&lp1 * &lp1);
        let rhs = &(&factor * &(&data.tau_euler() - &data.spin_at_minus_half_inv())) * &z0;
        Some(CheckOutcome::compare(bilinear_form(data, 1, PhiLabel::USpherical)?, rhs, None))
    } else {
        None
    };
    Ok((first, second))
}

/// Combinatorial factors combining the tame relations into the final one.
#[derive(Clone, Debug)]
pub struct TameFactors {
    /// `[H(Z_l) : K_{H,1}(l)] = ((l+1)(l-1))^2`.
    pub kh1_index: RatFunc,
    /// Number of torus translates `(l-1)^2` relating `phi_{1,1}` to `phi_{0,1}`.
    pub torus_count: RatFunc,
    /// Number `l - 1` of conjugate terms in the `m = 0` wild relation.
    pub wild_count: RatFunc,
    /// `[K : K_{G,0}(l)]`.
    pub siegel_index: RatFunc,
    /// `vol K_{G,0}(l)` with `vol K = 1`.
    pub siegel_volume: RatFunc,
}

impl TameFactors {
    pub fn standard() -> TameFactors {
        let ell = RatFunc::ell();
        let one = RatFunc::one();
        let (lp, lm) = (&ell + &one, &ell - &one);
        let siegel_index = &lp * &(&(&ell * &ell) + &one);
        TameFactors {
            kh1_index: (&lp * &lm).pow(2).unwrap(),
            torus_count: lm.pow(2).unwrap(),
            wild_count: lm,
            siegel_volume: siegel_index.inv().unwrap(),
            siegel_index,
        }
    }

    /// The wild count replaced by `l`.
    pub fn perturbed() -> TameFactors {
        TameFactors { wild_count: RatFunc::ell(), ..TameFactors::standard() }
    }
}

/// Both sides of the final tame relation paired with the spherical vector:
/// `Z(phi_{1,inf} (x) (ch(K) - ch(eta_1 K)))` and
/// `l/(l-1) L(sigma, -1/2)^{-1} Z(phi_0 (x) ch(K))`.
pub fn tame_final_sides(data: &TameData, f: &TameFactors) -> Result<(RatFunc, RatFunc)> {
    let z0 = bilinear_form(data, 0, PhiLabel::Spherical)?;
    let z1 = bilinear_form(data, 1, PhiLabel::Spherical)?;
    let z2 = bilinear_form(data, 1, PhiLabel::USpherical)?;
    let a = &f.kh1_index / &f.torus_count;
    let with_k = &a * &z1;
    let avg = &f.siegel_index * &f.siegel_volume;
    let with_eta = &(&(&a / &f.wild_count) * &avg) * &(&z2 - &z1);
    let ell = RatFunc::ell();
    let rhs = &(&(&ell / &(&ell - &RatFunc::one())) * &data.spin_at_minus_half_inv()) * &z0;
    Ok((&with_k - &with_eta, rhs))
}

pub fn tame_norm_final_check(data: &TameData, f: &TameFactors) -> Result<CheckOutcome> {
    let (lhs, rhs) = tame_final_sides(data, f)?;
    Ok(CheckOutcome::compare(lhs, rhs, None))
}

/// Averages `phi` against the quadratic character of the centre `Z_p^x` acting
/// by scalars; returns the projection, which vanishes for scalar-invariant `phi`.
pub fn quadratic_central_projection(phi: &SchwartzFn) -> SchwartzFn {
    let p = phi.prime();
    assert!(p % 2 == 1, "quadratic character needs odd p");
    let mut out = SchwartzFn::zero(p);
    for a in 1..p as i64 {
        let chi = legendre(a, p as i64);
        let g = QMat::from_ints(&[&[a, 0], &[0, a]]);
        out = &out + &phi.act(&g).scale_by(&q(chi));
    }
    out.scale_by(&crate::symcore::qf(1, p as i64 - 1))
}

fn legendre(a: i64, p: i64) -> i64 {
    let mut r = 1i64;
    let (mut b, mut e) = (a.rem_euclid(p), (p - 1) / 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    if r == 1 {
        1
    } else {
        -1
    }
}

/// `phi_{0,1} = ch(l Z_l x Z_l^x)` and `phi_0 = ch(Z_l^2)`, the inputs to the ramified case.
pub fn ramified_test_functions(p: u64) -> [SchwartzFn; 2] {
    [
        SchwartzFn::ch_product(p, &Set1::lattice(0), &Set1::lattice(0)),
        SchwartzFn::ch_product(p, &Set1::lattice(1), &Set1::Units { k: 0 }),
    ]
}

/// Explicit `sum_{u mod p^k} e_p(x u)` for `x = x0 p^j`, in `Q(zeta_{p^{-j}})`.
pub fn char_sum_explicit(p: u64, j: i64, k: u32, x0: i64) -> CycloQ {
    let m = crate::padic::upow(p, k) as i64;
    let mut acc = CycloQ::zero();
    for u in 0..m {
        let term = if j >= 0 {
            CycloQ::one()
        } else {
            CycloQ::root(p, (-j) as u32, (x0 * u).rem_euclid(crate::padic::upow(p, (-j) as u32) as i64))
        };
        acc = &acc + &term;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_coefficients() {
        let d = BesselDatum::formal();
        let s = bessel_series(&d, 4).unwrap();
        assert!(s.values[0].is_one());
        let gsum: RatFunc = d.sigma.spin_parameters().iter().cloned().sum();
        let b1 = &(&gsum * &RatFunc::sqrt_ell_pow(-3)) - &(&(&d.lambda1 + &d.lambda2) * &RatFunc::sqrt_ell_pow(-4));
        assert!(ratfunc_eq(&s.values[1], &b1));
        assert!(s.get(-1).unwrap().is_zero());
    }

    #[test]
    fn datum_validation() {
        let s = PrincipalSeriesG::formal();
        assert!(BesselDatum::new(s.clone(), RatFunc::var("a"), RatFunc::var("b")).is_err());
    }

    #[test]
    fn char_sums() {
        assert!(ratfunc_eq(&char_sum(0, 2).unwrap(), &RatFunc::ell().pow(2).unwrap()));
        assert!(char_sum(-1, 1).unwrap().is_zero());
        assert!(char_sum(-2, 1).is_err());
        for p in [2u64, 3, 5] {
            for k in 1..=2u32 {
                for j in -(k as i64)..=1 {
                    let got = char_sum_explicit(p, j, k, 1 + p as i64);
                    let formal = char_sum(j, k as i64).unwrap().specialize_prime(p).unwrap();
                    let want = formal.as_constant().unwrap();
                    assert_eq!(got.as_rational(), Some(want), "p={p} j={j} k={k}");
                }
            }
        }
    }

    #[test]
    fn ul_transform_composes() {
        let d = BesselDatum::formal();
        let s = bessel_series(&d, 12).unwrap();
        let t1 = ul_bessel_transform(&s, 1).unwrap();
        assert!(ratfunc_eq(&t1.values[0], &(&RatFunc::ell().pow(3).unwrap() * &s.values[1])));
        let twice = ul_bessel_transform(&t1, 1).unwrap();
        let once = ul_bessel_transform(&s, 2).unwrap();
        assert_eq!(twice.values.len(), once.values.len());
        for (a, b) in twice.values.iter().zip(&once.values) {
            assert!(ratfunc_eq(a, b));
        }
    }

    #[test]
    fn zeta_identities() {
        let d = BesselDatum::formal();
        let eta = UnramChar::formal("eta");
        for label in [PhiLabel::Spherical, PhiLabel::USpherical] {
            let r = zeta_check(label, &d, &eta, 12).unwrap();
            assert!(r.ok, "{label:?}\n{}\n{}", r.lhs, r.rhs);
        }
        assert!(matches!(zeta(PhiLabel::Spherical, &d, &eta, 5), Err(BesselError::OrderTooSmall(6))));
    }

    #[test]
    fn zeta_torus_equivariance() {
        let d = BesselDatum::formal();
        let eta = UnramChar::formal("eta");
        let s = bessel_series(&d, 12).unwrap();
        let base = zeta_from_series(&s, &eta).unwrap();
        for (ea, eb, et) in [(1, 0, 0), (0, 2, 1), (-1, 1, 2)] {
            let z = zeta_from_series(&torus_translate(&s, ea, eb, et).unwrap(), &eta).unwrap();
            // eta(t) |t|^{s - 3/2} for t = l^et is (eta(l) v^3 X)^et
            let tfac = (&eta.at_ell() * &(&RatFunc::sqrt_ell_pow(3) * &RatFunc::var(X))).pow(et as i32).unwrap();
            let lam = &d.lambda1.pow(ea).unwrap() * &d.lambda2.pow(eb).unwrap();
            assert!(ratfunc_eq(&z, &(&(&lam / &tfac) * &base)), "{ea} {eb} {et}");
        }
    }

    #[test]
    fn z_section_values() {
        let data = TameData::formal(1, 2);
        let chars = data.chars();
        for label in [PhiLabel::Spherical, PhiLabel::USpherical] {
            let got = z_section(label, &data.sigma, &chars).unwrap();
            let want = z_section_expected(label, &data.sigma, &chars).unwrap();
            assert!(ratfunc_eq(&got, &want), "{label:?}");
        }
    }

    #[test]
    fn tame_relations() {
        for (k1, k2) in [(0, 0), (1, 2)] {
            let data = TameData::formal(k1, k2);
            for t in 1..=2 {
                let (a, b) = tamenormrel_check(&data, t).unwrap();
                assert!(a.ok, "t={t}: {} vs {}", a.lhs, a.rhs);
                if let Some(b) = b {
                    assert!(b.ok, "{} vs {}", b.lhs, b.rhs);
                }
            }
            let z0 = bilinear_form(&data, 0, PhiLabel::Spherical).unwrap();
            assert!(!z0.is_zero());
        }
    }

    #[test]
    fn tame_final() {
        let data = TameData::formal(1, 1);
        assert!(tame_norm_final_check(&data, &TameFactors::standard()).unwrap().ok);
        assert!(!tame_norm_final_check(&data, &TameFactors::perturbed()).unwrap().ok);
    }

    #[test]
    fn t_zero_is_not_the_formula() {
        let data = TameData::formal(1, 1);
        let z0 = bilinear_form(&data, 0, PhiLabel::Spherical).unwrap();
        let ell = RatFunc::ell();
        let lp1 = &ell + &RatFunc::one();
        let fake = &(&(&ell.pow(2).unwrap() / &(&lp1 * &lp1)) * &data.tau_euler()) * &z0;
        assert!(!ratfunc_eq(&fake, &z0));
    }

    #[test]
    fn ramified_centre_kills_invariant_functions() {
        for p in [3u64, 5] {
            for phi in ramified_test_functions(p) {
                assert!(quadratic_central_projection(&phi).is_zero());
            }
            let phi = SchwartzFn::ch_product(p, &Set1::one_plus(1), &Set1::lattice(0));
            assert!(!quadratic_central_projection(&phi).is_zero());
        }
    }
}

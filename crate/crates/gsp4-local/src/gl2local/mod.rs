//! GL2(Q_l) and H(Q_l): unramified characters, L-factors, Siegel sections
//! as exact Tate integrals, the intertwining operator in closed and direct
//! form, the duality pairing, and sections on H.

mod intertwine;
mod pairing;
mod section;

pub use intertwine::{intertwine, IntertwineMode};
pub use pairing::{adjointness_sides, dual_pairing, p1_reps, pair_values, pair_values_full};
pub use section::{h_section_value, phi_t, support_check, tate_at_identity, SiegelSection, StdSet};

use crate::symcore::{RatFunc, SymError};

/// Name of the formal variable `X = l^{-s}`.
pub const X: &str = "X";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Gl2Error {
    #[error("character value must be a unit")]
    NotUnit,
    #[error("singular group element")]
    Singular,
    #[error("shell bound exceeded")]
    ShellBound,
    #[error("Schwartz function value is not rational: {0}")]
    Irrational(String),
    #[error(transparent)]
    Sym(#[from] SymError),
}

/// Unramified character `chi = chi_0 |.|^{shift/2}` of Q_l^x, determined by
/// `chi_0(l)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnramChar {
    value_at_ell: RatFunc,
    s_shift: i32,
}

impl UnramChar {
    pub fn new(value_at_ell: RatFunc) -> Result<UnramChar, Gl2Error> {
        UnramChar::shifted(value_at_ell, 0)
    }

    /// `chi_0 |.|^{shift/2}` with `chi_0(l) = value_at_ell`.
    pub fn shifted(value_at_ell: RatFunc, s_shift: i32) -> Result<UnramChar, Gl2Error> {
        if value_at_ell.is_zero() {
            return Err(Gl2Error::NotUnit);
        }
        Ok(UnramChar { value_at_ell, s_shift })
    }

    pub fn trivial() -> UnramChar {
        UnramChar { value_at_ell: RatFunc::one(), s_shift: 0 }
    }

    /// Formal character with `chi(l)` the symbol `name`.
    pub fn formal(name: &str) -> UnramChar {
        UnramChar { value_at_ell: RatFunc::var(name), s_shift: 0 }
    }

    /// `chi(l)`, including the `|l|^{shift/2} = v^{-shift}` twist.
    pub fn at_ell(&self) -> RatFunc {
        &self.value_at_ell * &RatFunc::sqrt_ell_pow(-self.s_shift)
    }

    pub fn inv(&self) -> UnramChar {
        UnramChar { value_at_ell: self.value_at_ell.inv().expect("unit"), s_shift: -self.s_shift }
    }

    pub fn mul(&self, o: &UnramChar) -> UnramChar {
        UnramChar { value_at_ell: &self.value_at_ell * &o.value_at_ell, s_shift: self.s_shift + o.s_shift }
    }

    pub fn div(&self, o: &UnramChar) -> UnramChar {
        self.mul(&o.inv())
    }
}

/// `L(chi, shift/2) = (1 - chi(l) l^{-shift/2})^{-1}`.
pub fn l_factor(chi: &UnramChar, shift: i32) -> RatFunc {
    let t = &chi.at_ell() * &RatFunc::sqrt_ell_pow(-shift);
    (RatFunc::one() - t).inv().expect("L-factor at a pole")
}

/// `L(chi, s + shift/2)` as a function of `X = l^{-s}`.
pub fn l_factor_formal(chi: &UnramChar, shift: i32) -> RatFunc {
    let t = &(&chi.at_ell() * &RatFunc::sqrt_ell_pow(-shift)) * &RatFunc::var(X);
    (RatFunc::one() - t).inv().expect("L-factor at a pole")
}

/// Equality in Q(sqrt p)(...) after sending `ell` to `p`.
pub fn eq_at_prime(a: &RatFunc, b: &RatFunc, p: u64) -> bool {
    (a - b).specialize_prime(p).is_ok_and(|d| d.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::ratfunc_eq;

    #[test]
    fn l_factors() {
        let one = UnramChar::trivial();
        let x = RatFunc::var(X);
        assert!(ratfunc_eq(&l_factor_formal(&one, 0), &(RatFunc::one() - x).inv().unwrap()));
        let (a, b) = (UnramChar::formal("alpha"), UnramChar::formal("beta"));
        let l = l_factor(&a.div(&b), 2);
        let expect = (RatFunc::one() - RatFunc::var("alpha") / RatFunc::var("beta") / RatFunc::ell()).inv().unwrap();
        assert!(ratfunc_eq(&l, &expect));
        assert!(UnramChar::new(RatFunc::zero()).is_err());
    }
}

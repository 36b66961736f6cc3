//! Exact p-adic and group-theoretic layer: valuations, GSp4 and
//! H = GL2 x_GL1 GL2 over Q, Iwasawa decompositions, Schwartz functions on
//! Q_l^2 with group action and Fourier transform, Hecke elements and coset
//! enumeration.

mod cyclo;
mod group;
mod hecke;
mod iwasawa;
mod qmat;
mod schwartz;

pub use cyclo::CycloQ;
pub use group::{
    eta_ell_r, eta_m, gl2_w, iota, iota_preimage, j_form, lower_unipotent, u_elt, GSp4Elt, HElt,
};
pub use hecke::{
    enumerate_cosets, lagrangian_cell, lattice_key, membership, primitive_units, same_coset, CosetSpec,
    HeckeElt, LevelSpec,
};
pub use iwasawa::{iwasawa_gl2, iwasawa_gsp4, Gl2Iwasawa, Gsp4Iwasawa};
pub use qmat::QMat;
pub use schwartz::{SchwartzFn, SchwartzTensor, Set1};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::symcore::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PadicError {
    #[error("singular matrix")]
    Singular,
    #[error("not symplectic: {0}")]
    NotSymplectic(String),
    #[error("unknown coset spec: {0}")]
    UnknownSpec(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

/// `v_p(n)` for a nonzero integer.
pub fn val_int(n: &BigInt, p: u64) -> i64 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return k;
        }
        n = q;
        k += 1;
    }
}

/// `v_p(x)`, or `None` for `x = 0`.
pub fn val(x: &Rational, p: u64) -> Option<i64> {
    if x.is_zero() {
        None
    } else {
        Some(val_int(x.numer(), p) - val_int(x.denom(), p))
    }
}

/// Whether `x` lies in `Z_(p)`.
pub fn is_integral(x: &Rational, p: u64) -> bool {
    x.is_zero() || val_int(x.denom(), p) == 0
}

/// `p^k` for any integer `k`.
pub fn ppow(p: u64, k: i64) -> Rational {
    let b = num_traits::pow(BigInt::from(p), k.unsigned_abs() as usize);
    if k >= 0 {
        Rational::from_integer(b)
    } else {
        Rational::new(BigInt::one(), b)
    }
}

/// `p^k` as a machine integer.
pub fn upow(p: u64, k: u32) -> u64 {
    p.checked_pow(k).expect("prime power overflow")
}

/// Residue of a `p`-integral rational modulo `p^k`, in `[0, p^k)`.
pub fn residue(x: &Rational, p: u64, k: u32) -> u64 {
    assert!(is_integral(x, p), "residue of non-integral {x}");
    let m = BigInt::from(upow(p, k));
    let inv = x
        .denom()
        .extended_gcd(&m)
        .x
        .mod_floor(&m);
    (x.numer() * inv).mod_floor(&m).to_u64().unwrap()
}

/// Unit part `x / p^v(x)` reduced modulo `p^k`.
pub fn unit_residue(x: &Rational, p: u64, k: u32) -> u64 {
    let v = val(x, p).expect("unit residue of zero");
    residue(&(x / ppow(p, v)), p, k)
}

/// Whether `a == b` modulo `p^k` for `p`-integral rationals.
pub fn congruent(a: &Rational, b: &Rational, p: u64, k: u32) -> bool {
    if k == 0 {
        return true;
    }
    let d = a - b;
    d.is_zero() || (is_integral(&d, p) && val(&d, p).unwrap() >= k as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::{q, qf};

    #[test]
    fn valuations() {
        assert_eq!(val(&q(12), 2), Some(2));
        assert_eq!(val(&qf(3, 8), 2), Some(-3));
        assert_eq!(val(&q(0), 2), None);
        assert_eq!(residue(&qf(1, 3), 2, 3), 3);
        assert_eq!(residue(&q(-1), 5, 1), 4);
        assert!(congruent(&q(10), &q(1), 3, 2));
        assert!(!congruent(&q(10), &q(1), 3, 3));
    }
}

//! Exact arithmetic: big rationals, Laurent polynomials over Q with a formal
//! square root `v` of the prime `ell`, reduced rational functions and
//! truncated power series.

mod gcd;
mod laurent;
mod ratfunc;
mod series;

use std::fmt;
use std::sync::Arc;

pub use laurent::{LaurentPoly, Mono};
pub use ratfunc::{ratfunc_eq, Bindings, RatFunc};
pub use series::{series_expand, PowerSeries};

use num_bigint::BigInt;

/// Arbitrary-precision rational number in lowest terms.
pub type Rational = num_rational::BigRational;

/// Name of the formal prime.
pub const ELL: &str = "ell";
/// Name of the formal square root of the prime: `v * v == ell`.
pub const V: &str = "v";

/// Integer as a rational.
pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d` as a rational; panics on `d == 0`.
pub fn qf(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at origin")]
    PoleAtOrigin,
    #[error("specialization pole")]
    SpecializationPole,
    #[error("inconsistent binding: {0}")]
    InconsistentBinding(String),
    #[error("reserved symbol `{0}` cannot be used here")]
    Reserved(String),
}

/// An interned-by-value symbol name. Cheap to clone, ordered by name.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sym(Arc<str>);

impl Sym {
    pub fn new(name: &str) -> Sym {
        Sym(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    pub fn ell() -> Sym {
        Sym::new(ELL)
    }

    pub fn v() -> Sym {
        Sym::new(V)
    }

    pub fn is_ell(&self) -> bool {
        &*self.0 == ELL
    }

    pub fn is_v(&self) -> bool {
        &*self.0 == V
    }
}

impl From<&str> for Sym {
    fn from(s: &str) -> Sym {
        Sym::new(s)
    }
}

impl fmt::Debug for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

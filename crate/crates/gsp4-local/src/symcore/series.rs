use std::fmt;

use super::{LaurentPoly, RatFunc, Sym, SymError};

/// Truncated power series `sum_{n < prec} c_n x^n` with rational-function
/// coefficients in the remaining symbols.
#[derive(Clone, PartialEq, Eq)]
pub struct PowerSeries {
    var: Sym,
    coeffs: Vec<RatFunc>,
}

impl PowerSeries {
    pub fn new(var: &str, coeffs: Vec<RatFunc>) -> PowerSeries {
        PowerSeries { var: Sym::new(var), coeffs }
    }

    pub fn var(&self) -> &Sym {
        &self.var
    }

    /// Number of known coefficients.
    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    /// Coefficient of `x^n`; `None` beyond the precision.
    pub fn coeff(&self, n: usize) -> Option<&RatFunc> {
        self.coeffs.get(n)
    }

    pub fn mul(&self, o: &PowerSeries) -> PowerSeries {
        let prec = self.precision().min(o.precision());
        let coeffs = (0..prec)
            .map(|n| (0..=n).map(|i| &self.coeffs[i] * &o.coeffs[n - i]).sum())
            .collect();
        PowerSeries { var: self.var.clone(), coeffs }
    }

    /// Truncated sum of the series as a polynomial in its variable.
    pub fn to_ratfunc(&self) -> RatFunc {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c * &RatFunc::from_poly(LaurentPoly::monomial(&[(self.var.name(), n as i32)])))
            .sum()
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*{}", self.var)?,
                _ => write!(f, "({c})*{}^{n}", self.var)?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O({}^{})", self.var, self.coeffs.len())
    }
}

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Taylor expansion of `f` at `var = 0` through `x^(order-1)`.
///
/// Fails with [`SymError::PoleAtOrigin`] when `f` has a pole at the origin
/// and with [`SymError::Reserved`] for `ell` or `v`.
pub fn series_expand(f: &RatFunc, var: &str, order: usize) -> Result<PowerSeries, SymError> {
    let s = Sym::new(var);
    if s.is_ell() || s.is_v() {
        return Err(SymError::Reserved(var.to_string()));
    }
    let num = f.num().collect_in(var);
    let den = f.den().collect_in(var);
    if num.keys().next().is_some_and(|e| *e < 0) {
        return Err(SymError::PoleAtOrigin);
    }
    let d: Vec<(usize, RatFunc)> = den
        .into_iter()
        .map(|(e, p)| (e as usize, RatFunc::from_poly(p)))
        .collect();
    let d0 = match d.first() {
        Some((0, c)) => c.inv()?,
        _ => return Err(SymError::PoleAtOrigin),
    };
    let mut coeffs: Vec<RatFunc> = Vec::with_capacity(order);
    for n in 0..order {
        let mut c = num
            .get(&(n as i32))
            .map_or_else(RatFunc::zero, |p| RatFunc::from_poly(p.clone()));
        for (i, di) in d.iter().skip(1) {
            if *i > n {
                break;
            }
            c = &c - &(di * &coeffs[n - i]);
        }
        coeffs.push(&c * &d0);
    }
    Ok(PowerSeries { var: s, coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric() {
        let t = RatFunc::var("t");
        let a = RatFunc::var("a");
        let f = &RatFunc::one() / &(&RatFunc::one() - &(&a * &t));
        let s = series_expand(&f, "t", 5).unwrap();
        for n in 0..5 {
            assert_eq!(s.coeff(n).unwrap(), &a.pow(n as i32).unwrap());
        }
    }

    #[test]
    fn pole_and_reserved() {
        let f = &RatFunc::one() / &RatFunc::var("t");
        assert_eq!(series_expand(&f, "t", 3), Err(SymError::PoleAtOrigin));
        assert!(matches!(series_expand(&f, "ell", 3), Err(SymError::Reserved(_))));
    }
}

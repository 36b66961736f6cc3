use std::fmt;
use std::ops::Mul;

use num_traits::{One, Zero};

use super::{ppow, PadicError, QMat};
use crate::symcore::{q, Rational};

/// The form `J` with rows `(0,0,0,1), (0,0,1,0), (0,-1,0,0), (-1,0,0,0)`.
pub fn j_form() -> QMat {
    QMat::from_ints(&[&[0, 0, 0, 1], &[0, 0, 1, 0], &[0, -1, 0, 0], &[-1, 0, 0, 0]])
}

/// `g` in GSp4(Q): `g^T J g = mu J` with `mu != 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GSp4Elt {
    m: QMat,
    mu: Rational,
}

impl GSp4Elt {
    pub fn new(m: QMat) -> Result<GSp4Elt, PadicError> {
        if m.dim() != 4 {
            return Err(PadicError::NotSymplectic(format!("dimension {}", m.dim())));
        }
        let j = j_form();
        let f = &(&m.transpose() * &j) * &m;
        let mu = f.get(0, 3).clone();
        if mu.is_zero() || f != j.scale(&mu) {
            return Err(PadicError::NotSymplectic(m.to_string()));
        }
        Ok(GSp4Elt { m, mu })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<GSp4Elt, PadicError> {
        GSp4Elt::new(QMat::from_ints(rows))
    }

    pub fn identity() -> GSp4Elt {
        GSp4Elt { m: QMat::identity(4), mu: Rational::one() }
    }

    /// `diag(a, b, c, d)`; symplectic iff `ad = bc`.
    pub fn diag(a: Rational, b: Rational, c: Rational, d: Rational) -> Result<GSp4Elt, PadicError> {
        GSp4Elt::new(QMat::diag(&[a, b, c, d]))
    }

    /// Central element `z I`.
    pub fn scalar(z: Rational) -> GSp4Elt {
        GSp4Elt { mu: &z * &z, m: QMat::identity(4).scale(&z) }
    }

    pub fn matrix(&self) -> &QMat {
        &self.m
    }

    pub fn mu(&self) -> &Rational {
        &self.mu
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        self.m.get(i, j)
    }

    pub fn inv(&self) -> GSp4Elt {
        GSp4Elt { m: self.m.inverse().expect("symplectic similitudes are invertible"), mu: self.mu.recip() }
    }

    /// Siegel blocks `(A, B, C, D)`.
    pub fn blocks(&self) -> [QMat; 4] {
        let (lo, hi) = ([0, 1], [2, 3]);
        [
            self.m.block(&lo, &lo),
            self.m.block(&lo, &hi),
            self.m.block(&hi, &lo),
            self.m.block(&hi, &hi),
        ]
    }

    pub fn is_integral(&self, p: u64) -> bool {
        self.m.is_integral(p)
    }

    /// Membership in GSp4(Z_p).
    pub fn in_maximal_compact(&self, p: u64) -> bool {
        self.is_integral(p) && super::val(&self.mu, p) == Some(0)
    }
}

impl Mul for &GSp4Elt {
    type Output = GSp4Elt;
    fn mul(self, o: &GSp4Elt) -> GSp4Elt {
        GSp4Elt { m: &self.m * &o.m, mu: &self.mu * &o.mu }
    }
}

impl Mul for GSp4Elt {
    type Output = GSp4Elt;
    fn mul(self, o: GSp4Elt) -> GSp4Elt {
        &self * &o
    }
}

impl fmt::Display for GSp4Elt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.m, f)
    }
}

impl fmt::Debug for GSp4Elt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.m, f)
    }
}

/// `(h1, h2)` in GL2 x GL2 with `det h1 = det h2`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct HElt {
    pub h1: QMat,
    pub h2: QMat,
}

impl HElt {
    pub fn new(h1: QMat, h2: QMat) -> Result<HElt, PadicError> {
        if h1.dim() != 2 || h2.dim() != 2 {
            return Err(PadicError::Invalid("H components must be 2x2".into()));
        }
        let d = h1.det();
        if d.is_zero() || d != h2.det() {
            return Err(PadicError::Invalid(format!("det mismatch for ({h1}, {h2})")));
        }
        Ok(HElt { h1, h2 })
    }

    pub fn from_ints(h1: [[i64; 2]; 2], h2: [[i64; 2]; 2]) -> Result<HElt, PadicError> {
        let m = |h: [[i64; 2]; 2]| QMat::from_ints(&[&h[0], &h[1]]);
        HElt::new(m(h1), m(h2))
    }

    pub fn identity() -> HElt {
        HElt { h1: QMat::identity(2), h2: QMat::identity(2) }
    }

    pub fn det(&self) -> Rational {
        self.h1.det()
    }

    pub fn inv(&self) -> HElt {
        HElt { h1: self.h1.inverse().unwrap(), h2: self.h2.inverse().unwrap() }
    }

    pub fn iota(&self) -> GSp4Elt {
        iota(self)
    }
}

impl Mul for &HElt {
    type Output = HElt;
    fn mul(self, o: &HElt) -> HElt {
        HElt { h1: &self.h1 * &o.h1, h2: &self.h2 * &o.h2 }
    }
}

/// The embedding `((a b; c d), (a' b'; c' d'))` to rows
/// `(a,0,0,b), (0,a',b',0), (0,c',d',0), (c,0,0,d)`.
pub fn iota(h: &HElt) -> GSp4Elt {
    let (x, y) = (&h.h1, &h.h2);
    let z = Rational::zero;
    let m = QMat::from_rows(vec![
        vec![x.get(0, 0).clone(), z(), z(), x.get(0, 1).clone()],
        vec![z(), y.get(0, 0).clone(), y.get(0, 1).clone(), z()],
        vec![z(), y.get(1, 0).clone(), y.get(1, 1).clone(), z()],
        vec![x.get(1, 0).clone(), z(), z(), x.get(1, 1).clone()],
    ]);
    GSp4Elt { mu: h.det(), m }
}

/// Inverse of [`iota`] on its image.
pub fn iota_preimage(g: &GSp4Elt) -> Option<HElt> {
    let m = g.matrix();
    let zeros = [(0, 1), (0, 2), (1, 0), (1, 3), (2, 0), (2, 3), (3, 1), (3, 2)];
    if zeros.iter().any(|&(i, j)| !m.get(i, j).is_zero()) {
        return None;
    }
    HElt::new(m.block(&[0, 3], &[0, 3]), m.block(&[1, 2], &[1, 2])).ok()
}

/// The Weyl element `(0 1; -1 0)` of GL2.
pub fn gl2_w() -> QMat {
    QMat::from_ints(&[&[0, 1], &[-1, 0]])
}

/// `(1 0; x 1)`.
pub fn lower_unipotent(x: Rational) -> QMat {
    QMat::from_rows(vec![vec![q(1), q(0)], vec![x, q(1)]])
}

/// `I + a p^{-m} (E13 + E24)`.
pub fn eta_m(p: u64, m: i64, a: &Rational) -> GSp4Elt {
    let mut x = QMat::identity(4);
    let e = a * ppow(p, -m);
    x.set(0, 2, e.clone());
    x.set(1, 3, e);
    GSp4Elt { m: x, mu: Rational::one() }
}

/// `I + p^{-r} (E13 + E24)`.
pub fn eta_ell_r(p: u64, r: i64) -> GSp4Elt {
    eta_m(p, r, &Rational::one())
}

/// `(p, 0, u, v; 0, p, w, u; 0, 0, 1, 0; 0, 0, 0, 1)`.
pub fn u_elt(p: u64, u: &Rational, v: &Rational, w: &Rational) -> GSp4Elt {
    let z = Rational::zero;
    let pq = Rational::from_integer(p.into());
    let m = QMat::from_rows(vec![
        vec![pq.clone(), z(), u.clone(), v.clone()],
        vec![z(), pq.clone(), w.clone(), u.clone()],
        vec![z(), z(), q(1), z()],
        vec![z(), z(), z(), q(1)],
    ]);
    GSp4Elt { m, mu: pq }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iota_is_symplectic() {
        let h = HElt::from_ints([[2, 1], [1, 1]], [[1, 3], [0, 1]]).unwrap();
        let g = iota(&h);
        assert_eq!(GSp4Elt::new(g.matrix().clone()).unwrap(), g);
        assert_eq!(iota_preimage(&g), Some(h));
    }

    #[test]
    fn named_elements() {
        for (u, v, w) in [(1, 2, 3), (0, 1, 1)] {
            let x = u_elt(3, &q(u), &q(v), &q(w));
            assert_eq!(GSp4Elt::new(x.matrix().clone()).unwrap(), x);
        }
        let e = eta_ell_r(3, 2);
        assert_eq!(GSp4Elt::new(e.matrix().clone()).unwrap(), e);
        assert!(GSp4Elt::diag(q(1), q(2), q(2), q(1)).is_err());
        assert!(GSp4Elt::diag(q(2), q(2), q(1), q(1)).is_ok());
    }
}

use num_traits::Zero;

use super::{j_form, ppow, val, GSp4Elt, QMat};
use crate::symcore::{q, Rational};

/// `g = b k` with `b` upper triangular and `k` in GL2(Z_p).
#[derive(Clone, Debug)]
pub struct Gl2Iwasawa {
    pub b: QMat,
    pub k: QMat,
}

/// `g = b k` with `b` upper triangular in GSp4(Q_p) and `k` in GSp4(Z_p).
#[derive(Clone, Debug)]
pub struct Gsp4Iwasawa {
    pub b: GSp4Elt,
    pub k: GSp4Elt,
}

impl Gsp4Iwasawa {
    /// Valuations of `(b11, b22, mu(b))`, i.e. of the torus coordinates
    /// `(a, b, c)` in `diag(a, b, c/b, c/a)`.
    pub fn torus_exponents(&self, p: u64) -> (i64, i64, i64) {
        let v = |x: &Rational| val(x, p).expect("Borel part has a zero diagonal entry");
        (v(self.b.get(0, 0)), v(self.b.get(1, 1)), v(self.b.mu()))
    }
}

fn min_val(xs: &[Rational], p: u64) -> i64 {
    xs.iter().filter_map(|x| val(x, p)).min().expect("zero row")
}

pub fn iwasawa_gl2(g: &QMat, p: u64) -> Gl2Iwasawa {
    assert_eq!(g.dim(), 2);
    let (c, d) = (g.get(1, 0), g.get(1, 1));
    let k = if c.is_zero() {
        QMat::identity(2)
    } else {
        let s = ppow(p, -min_val(&[c.clone(), d.clone()], p));
        let (c1, d1) = (c * &s, d * &s);
        if val(&d1, p) == Some(0) {
            QMat::from_rows(vec![vec![q(1), q(0)], vec![c1, d1]])
        } else {
            QMat::from_rows(vec![vec![q(0), q(1)], vec![c1, d1]])
        }
    };
    let b = g * &k.inverse().unwrap();
    debug_assert!(b.is_upper_triangular());
    Gl2Iwasawa { b, k }
}

fn pair(x: &[Rational], y: &[Rational], j: &QMat) -> Rational {
    let mut s = Rational::zero();
    for (a, xa) in x.iter().enumerate().take(4) {
        for (b, yb) in y.iter().enumerate().take(4) {
            let f = j.get(a, b);
            if !f.is_zero() && !xa.is_zero() && !yb.is_zero() {
                s += xa * f * yb;
            }
        }
    }
    s
}

fn is_unit(x: &Rational, p: u64) -> bool {
    val(x, p) == Some(0)
}

/// An element of Sp4(Z_p) whose last row is the primitive vector `r4`.
fn complete_last_row(r4: &[Rational], p: u64) -> QMat {
    let j = j_form();
    let e = |i: usize| -> Vec<Rational> { (0..4).map(|k| if k == i { q(1) } else { q(0) }).collect() };
    let i = (0..4)
        .find(|&i| is_unit(&pair(&e(i), r4, &j), p))
        .expect("primitive vector pairs to a unit");
    let s = pair(&e(i), r4, &j);
    let r1: Vec<Rational> = e(i).iter().map(|x| x / &s).collect();
    let proj: Vec<Vec<Rational>> = (0..4)
        .map(|k| {
            let x = e(k);
            let a = pair(&x, r4, &j);
            let b = pair(&x, &r1, &j);
            (0..4).map(|t| &x[t] - &a * &r1[t] + &b * &r4[t]).collect()
        })
        .collect();
    let (a, b, w) = (0..4)
        .flat_map(|a| (a + 1..4).map(move |b| (a, b)))
        .find_map(|(a, b)| {
            let w = pair(&proj[a], &proj[b], &j);
            is_unit(&w, p).then_some((a, b, w))
        })
        .expect("complement is unimodular");
    let r3: Vec<Rational> = proj[b].iter().map(|x| x / &w).collect();
    QMat::from_rows(vec![r1, proj[a].clone(), r3, r4.to_vec()])
}

pub fn iwasawa_gsp4(g: &GSp4Elt, p: u64) -> Gsp4Iwasawa {
    let row: Vec<Rational> = g.matrix().row(3).to_vec();
    let s = ppow(p, -min_val(&row, p));
    let r4: Vec<Rational> = row.iter().map(|x| x * &s).collect();
    let k1 = complete_last_row(&r4, p);
    let h = g.matrix() * &k1.inverse().unwrap();
    let mid = iwasawa_gl2(&h.block(&[1, 2], &[1, 2]), p);
    let mut k2 = QMat::identity(4);
    for a in 0..2 {
        for b in 0..2 {
            k2.set(a + 1, b + 1, mid.k.get(a, b).clone());
        }
    }
    k2.set(3, 3, mid.k.det());
    let k = GSp4Elt::new(&k2 * &k1).expect("Iwasawa compact part is symplectic");
    let b = g * &k.inv();
    debug_assert!(b.matrix().is_upper_triangular());
    Gsp4Iwasawa { b, k }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::{gl2_w, iota, u_elt, HElt};

    #[test]
    fn gl2_examples() {
        let r = iwasawa_gl2(&gl2_w(), 3);
        assert_eq!(r.b, QMat::identity(2));
        assert_eq!(r.k, gl2_w());
        let g = QMat::from_ints(&[&[3, 0], &[0, 1]]);
        let r = iwasawa_gl2(&g, 3);
        assert_eq!(r.b, g);
        assert_eq!(r.k, QMat::identity(2));
    }

    #[test]
    fn gsp4_reconstructs() {
        let p = 3;
        let w = HElt::new(gl2_w(), gl2_w()).unwrap();
        let x = u_elt(p, &q(1), &q(2), &q(0));
        let g = &(&iota(&w) * &x) * &iota(&HElt::from_ints([[1, 1], [3, 4]], [[0, 1], [-1, 1]]).unwrap());
        let r = iwasawa_gsp4(&g, p);
        assert!(r.b.matrix().is_upper_triangular());
        assert!(r.k.in_maximal_compact(p));
        assert_eq!(&r.b * &r.k, g);
        let d = GSp4Elt::diag(q(3), q(3), q(1), q(1)).unwrap();
        assert_eq!(iwasawa_gsp4(&d, p).torus_exponents(p), (1, 1, 1));
    }
}

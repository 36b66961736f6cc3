use std::fmt;
use std::ops::Mul;

use num_traits::{One, Zero};

use super::{is_integral, val};
use crate::symcore::Rational;

/// Dense square matrix over Q.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMat {
    n: usize,
    a: Vec<Rational>,
}

impl QMat {
    pub fn zero(n: usize) -> QMat {
        QMat { n, a: vec![Rational::zero(); n * n] }
    }

    pub fn identity(n: usize) -> QMat {
        let mut m = QMat::zero(n);
        for i in 0..n {
            m.a[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> QMat {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        QMat { n, a: rows.into_iter().flatten().collect() }
    }

    pub fn from_ints(rows: &[&[i64]]) -> QMat {
        QMat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn diag(d: &[Rational]) -> QMat {
        let mut m = QMat::zero(d.len());
        for (i, x) in d.iter().enumerate() {
            m.a[i * d.len() + i] = x.clone();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.a[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Rational) {
        self.a[i * self.n + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.a[i * self.n..(i + 1) * self.n]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.a
    }

    pub fn transpose(&self) -> QMat {
        let mut m = QMat::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.a[j * self.n + i] = self.get(i, j).clone();
            }
        }
        m
    }

    pub fn scale(&self, c: &Rational) -> QMat {
        QMat { n: self.n, a: self.a.iter().map(|x| x * c).collect() }
    }

    pub fn det(&self) -> Rational {
        let n = self.n;
        let mut m = self.a.clone();
        let mut d = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[r * n + c].is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                for j in 0..n {
                    m.swap(p * n + j, c * n + j);
                }
                d = -d;
            }
            let piv = m[c * n + c].clone();
            d *= &piv;
            for r in c + 1..n {
                let f = &m[r * n + c] / &piv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let t = &f * &m[c * n + j];
                    m[r * n + j] -= t;
                }
            }
        }
        d
    }

    pub fn inverse(&self) -> Option<QMat> {
        let n = self.n;
        let mut m = self.a.clone();
        let mut inv = QMat::identity(n).a;
        for c in 0..n {
            let p = (c..n).find(|&r| !m[r * n + c].is_zero())?;
            if p != c {
                for j in 0..n {
                    m.swap(p * n + j, c * n + j);
                    inv.swap(p * n + j, c * n + j);
                }
            }
            let piv = m[c * n + c].clone();
            for j in 0..n {
                m[c * n + j] /= &piv;
                inv[c * n + j] /= &piv;
            }
            for r in 0..n {
                if r == c || m[r * n + c].is_zero() {
                    continue;
                }
                let f = m[r * n + c].clone();
                for j in 0..n {
                    let t = &f * &m[c * n + j];
                    m[r * n + j] -= t;
                    let t = &f * &inv[c * n + j];
                    inv[r * n + j] -= t;
                }
            }
        }
        Some(QMat { n, a: inv })
    }

    /// Minimal valuation of the entries; `None` for the zero matrix.
    pub fn min_val(&self, p: u64) -> Option<i64> {
        self.a.iter().filter_map(|x| val(x, p)).min()
    }

    pub fn is_integral(&self, p: u64) -> bool {
        self.a.iter().all(|x| is_integral(x, p))
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j).is_zero()))
    }

    /// Square submatrix on the given rows and columns.
    pub fn block(&self, rows: &[usize], cols: &[usize]) -> QMat {
        assert_eq!(rows.len(), cols.len());
        QMat::from_rows(
            rows.iter()
                .map(|&i| cols.iter().map(|&j| self.get(i, j).clone()).collect())
                .collect(),
        )
    }
}

impl Mul for &QMat {
    type Output = QMat;
    fn mul(self, o: &QMat) -> QMat {
        assert_eq!(self.n, o.n);
        let n = self.n;
        let mut m = QMat::zero(n);
        for i in 0..n {
            for k in 0..n {
                let x = &self.a[i * n + k];
                if x.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let y = &o.a[k * n + j];
                    if !y.is_zero() {
                        m.a[i * n + j] += x * y;
                    }
                }
            }
        }
        m
    }
}

impl Mul for QMat {
    type Output = QMat;
    fn mul(self, o: QMat) -> QMat {
        &self * &o
    }
}

impl fmt::Display for QMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.n {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.n {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for QMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::q;

    #[test]
    fn inverse_and_det() {
        let m = QMat::from_ints(&[&[2, 1, 0], &[0, 1, 3], &[1, 0, 1]]);
        assert_eq!(m.det(), q(5));
        let i = m.inverse().unwrap();
        assert_eq!(&m * &i, QMat::identity(3));
        assert!(QMat::from_ints(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }
}

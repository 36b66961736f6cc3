use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::padic::{j_form, QMat};
use crate::symcore::{q, Rational};

/// Weight `n1 chi_1 + n2 chi_2 + m mu` of the diagonal torus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight {
    pub n1: i64,
    pub n2: i64,
    pub m: i64,
}

impl Weight {
    pub const fn new(n1: i64, n2: i64, m: i64) -> Weight {
        Weight { n1, n2, m }
    }

    /// Highest weight `(a + b) chi_1 + a chi_2` of `V^{a,b}`.
    pub const fn highest(a: i64, b: i64) -> Weight {
        Weight::new(a + b, a, 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.n1 >= self.n2 && self.n2 >= 0
    }

    /// Weight of the torus `S = diag(x, x, 1, 1)`.
    pub fn s_weight(&self) -> i64 {
        self.n1 + self.n2 + self.m
    }

    /// Exponent of the central character `x -> x^e`.
    pub fn central(&self) -> i64 {
        self.n1 + self.n2 + 2 * self.m
    }

    /// Value on `diag(d1, d2, d3, d4)` in the Lie algebra of the torus.
    pub fn eval(&self, d: &[Rational; 4]) -> Rational {
        let c = &d[2] + &d[1];
        assert_eq!(c, &d[3] + &d[0], "not in the Lie algebra of the torus");
        &(&(&d[0] * q(self.n1)) + &(&d[1] * q(self.n2))) + &(c * q(self.m))
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, o: Weight) -> Weight {
        Weight::new(self.n1 + o.n1, self.n2 + o.n2, self.m + o.m)
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, o: Weight) -> Weight {
        self + (-o)
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight::new(-self.n1, -self.n2, -self.m)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.n1, self.n2, self.m)
    }
}

/// Weight of `e_i` in the standard representation.
pub fn std_weight(i: usize) -> Weight {
    [Weight::new(1, 0, 0), Weight::new(0, 1, 0), Weight::new(0, -1, 1), Weight::new(-1, 0, 1)][i]
}

/// Kind of a Lie basis element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LieKind {
    Cartan,
    Positive,
    Negative,
}

/// Element of the fixed basis of `gsp_4`.
#[derive(Clone, Debug)]
pub struct LieBasisElt {
    pub name: &'static str,
    pub kind: LieKind,
    /// Root, or zero for Cartan elements.
    pub root: Weight,
    pub matrix: QMat,
}

fn unit(i: usize, j: usize) -> QMat {
    let mut m = QMat::zero(4);
    m.set(i, j, q(1));
    m
}

fn add(a: &QMat, b: &QMat) -> QMat {
    let mut m = a.clone();
    for i in 0..4 {
        for j in 0..4 {
            m.set(i, j, a.get(i, j) + b.get(i, j));
        }
    }
    m
}

/// Whether `x^T J + J x` is a multiple of `J`.
pub fn in_gsp4(x: &QMat) -> bool {
    let j = j_form();
    let s = add(&(&x.transpose() * &j), &(&j * x));
    let lambda = s.get(0, 3).clone();
    (0..4).all(|a| (0..4).all(|b| s.get(a, b) == &(j.get(a, b) * &lambda)))
}

/// `E_ij + s E_{j'i'}` with `i' = 3 - i`, the sign chosen to land in `sp_4`.
fn root_vector(i: usize, j: usize) -> QMat {
    let (ip, jp) = (3 - i, 3 - j);
    if (jp, ip) == (i, j) {
        return unit(i, j);
    }
    for s in [1, -1] {
        let x = add(&unit(i, j), &unit(jp, ip).scale(&q(s)));
        if in_gsp4(&x) {
            return x;
        }
    }
    unreachable!("no root vector for ({i}, {j})")
}

/// The fixed 11-element basis: `T1, T2, Tmu`, four positive and four
/// negative root vectors. `F21 = X_21` and `F31 = Z`.
pub fn lie_basis() -> Vec<LieBasisElt> {
    let diag = |d: [i64; 4]| QMat::diag(&d.map(q));
    let mut out = vec![
        LieBasisElt { name: "T1", kind: LieKind::Cartan, root: Weight::new(0, 0, 0), matrix: diag([1, 0, 0, -1]) },
        LieBasisElt { name: "T2", kind: LieKind::Cartan, root: Weight::new(0, 0, 0), matrix: diag([0, 1, -1, 0]) },
        LieBasisElt { name: "Tmu", kind: LieKind::Cartan, root: Weight::new(0, 0, 0), matrix: diag([0, 0, 1, 1]) },
    ];
    let pos: [(&'static str, usize, usize); 4] = [("E12", 0, 1), ("E23", 1, 2), ("E13", 0, 2), ("E14", 0, 3)];
    let neg: [(&'static str, usize, usize); 4] = [("F21", 1, 0), ("F32", 2, 1), ("F31", 2, 0), ("F41", 3, 0)];
    for (name, i, j) in pos {
        let root = std_weight(i) - std_weight(j);
        out.push(LieBasisElt { name, kind: LieKind::Positive, root, matrix: root_vector(i, j) });
    }
    for (name, i, j) in neg {
        let root = std_weight(i) - std_weight(j);
        out.push(LieBasisElt { name, kind: LieKind::Negative, root, matrix: root_vector(i, j) });
    }
    out
}

/// Index of a basis element by name.
pub fn lie_index(name: &str) -> usize {
    lie_basis().iter().position(|e| e.name == name).unwrap_or_else(|| panic!("no Lie element {name}"))
}

pub fn bracket(x: &QMat, y: &QMat) -> QMat {
    let (a, b) = (x * y, y * x);
    add(&a, &b.scale(&q(-1)))
}

fn trace(x: &QMat) -> Rational {
    (0..x.dim()).map(|i| x.get(i, i).clone()).sum()
}

/// Inverse of the Gram matrix of the trace form on the basis.
pub fn trace_form_inverse() -> Vec<Vec<Rational>> {
    let basis = lie_basis();
    let n = basis.len();
    let g: Vec<Vec<Rational>> =
        (0..n).map(|i| (0..n).map(|j| trace(&(&basis[i].matrix * &basis[j].matrix))).collect()).collect();
    invert(&g).expect("trace form is nondegenerate")
}

fn invert(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                let pivot = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Coordinates of `x` in the Lie basis, via the trace form.
pub fn lie_coords(x: &QMat) -> Vec<Rational> {
    let basis = lie_basis();
    let ginv = trace_form_inverse();
    let pairings: Vec<Rational> = basis.iter().map(|b| trace(&(x * &b.matrix))).collect();
    (0..basis.len()).map(|i| (0..basis.len()).map(|j| &ginv[i][j] * &pairings[j]).sum()).collect()
}

fn diag_entries(x: &QMat) -> Option<[Rational; 4]> {
    for i in 0..4 {
        for j in 0..4 {
            if i != j && !x.get(i, j).is_zero() {
                return None;
            }
        }
    }
    Some([0, 1, 2, 3].map(|i| x.get(i, i).clone()))
}

/// Eigenvalue of the Casimir `sum g^{ij} X_i X_j` on the irreducible
/// representation of highest weight `lambda`.
pub fn casimir_eigenvalue(lambda: Weight) -> Rational {
    let basis = lie_basis();
    let ginv = trace_form_inverse();
    let mut total = Rational::zero();
    for (i, xi) in basis.iter().enumerate() {
        for (j, xj) in basis.iter().enumerate() {
            let g = &ginv[i][j];
            if g.is_zero() {
                continue;
            }
            match (xi.kind, xj.kind) {
                (LieKind::Cartan, LieKind::Cartan) => {
                    let (a, b) = (diag_entries(&xi.matrix).unwrap(), diag_entries(&xj.matrix).unwrap());
                    total += g * lambda.eval(&a) * lambda.eval(&b);
                }
                (LieKind::Positive, LieKind::Negative) => {
                    let h = diag_entries(&bracket(&xi.matrix, &xj.matrix)).expect("paired roots");
                    total += g * lambda.eval(&h);
                }
                (_, LieKind::Positive) | (LieKind::Negative, LieKind::Negative) => {}
                (a, b) => panic!("trace form pairs {a:?} with {b:?}"),
            }
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_lies_in_gsp4() {
        for e in lie_basis() {
            assert!(in_gsp4(&e.matrix), "{}", e.name);
        }
        let x21 = QMat::from_ints(&[&[0, 0, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, -1, 0]]);
        let z = QMat::from_ints(&[&[0, 0, 0, 0], &[0, 0, 0, 0], &[1, 0, 0, 0], &[0, 1, 0, 0]]);
        assert_eq!(lie_basis()[lie_index("F21")].matrix, x21);
        assert_eq!(lie_basis()[lie_index("F31")].matrix, z);
    }

    #[test]
    fn roots_match_adjoint_action() {
        let basis = lie_basis();
        for e in &basis {
            for h in &basis[..3] {
                let d = diag_entries(&h.matrix).unwrap();
                let lhs = bracket(&h.matrix, &e.matrix);
                assert_eq!(lhs, e.matrix.scale(&e.root.eval(&d)), "{} {}", h.name, e.name);
            }
        }
    }

    #[test]
    fn coordinates_round_trip() {
        let basis = lie_basis();
        for (i, e) in basis.iter().enumerate() {
            let c = lie_coords(&e.matrix);
            for (j, x) in c.iter().enumerate() {
                assert_eq!(*x, if i == j { q(1) } else { q(0) });
            }
        }
    }

    #[test]
    fn casimir_separates_small_weights() {
        let top = casimir_eigenvalue(Weight::highest(1, 1));
        for w in [Weight::highest(1, 0) + Weight::new(0, 0, 0), Weight::new(1, 0, 1), Weight::highest(0, 2)] {
            assert_ne!(casimir_eigenvalue(w), top);
        }
        assert_eq!(casimir_eigenvalue(Weight::new(0, 0, 0)), q(0));
    }
}

use std::collections::BTreeMap;

use num_traits::Zero;

use super::lie::{lie_basis, std_weight, Weight};
use crate::padic::QMat;
use crate::symcore::{q, Rational};

/// Sparse vector over Q.
pub type SVec = BTreeMap<usize, Rational>;

pub fn axpy(y: &mut SVec, c: &Rational, x: &SVec) {
    if c.is_zero() {
        return;
    }
    for (i, v) in x {
        let e = y.entry(*i).or_insert_with(Rational::zero);
        *e += c * v;
        if e.is_zero() {
            y.remove(i);
        }
    }
}

pub fn scaled(x: &SVec, c: &Rational) -> SVec {
    if c.is_zero() {
        return SVec::new();
    }
    x.iter().map(|(i, v)| (*i, v * c)).collect()
}

/// Exact division `x = c y`, if `x` is a multiple of `y != 0`.
pub fn ratio(x: &SVec, y: &SVec) -> Option<Rational> {
    let (i, yi) = y.iter().next()?;
    let c = x.get(i).cloned().unwrap_or_else(Rational::zero) / yi;
    (scaled(y, &c) == *x).then_some(c)
}

/// The two fundamental representations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factor {
    /// Standard 4-dimensional representation, basis `e_1..e_4`.
    V01,
    /// 5-dimensional summand of `wedge^2 V01`, weight basis
    /// `e1^e2, e1^e3, e1^e4 - e2^e3, e2^e4, e3^e4`.
    V10,
}

const WEDGE_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

fn pair_index(i: usize, j: usize) -> (usize, i64) {
    let (a, b, s) = if i < j { (i, j, 1) } else { (j, i, -1) };
    (WEDGE_PAIRS.iter().position(|&p| p == (a, b)).expect("i != j"), s)
}

/// V10 basis in the `WEDGE_PAIRS` coordinates of `wedge^2`.
pub fn v10_basis() -> [[i64; 6]; 5] {
    [[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 1, -1, 0, 0], [0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]]
}

fn wedge_to_v10(w: &[Rational; 6]) -> Vec<Rational> {
    assert_eq!(w[3], -w[2].clone(), "vector leaves V10");
    vec![w[0].clone(), w[1].clone(), w[2].clone(), w[4].clone(), w[5].clone()]
}

/// Matrix of the derivation `x` on V10.
fn wedge_lie_matrix(x: &QMat) -> Vec<Vec<Rational>> {
    wedge_matrix(|s, t, i, j| {
        let a = if t == j { x.get(s, i).clone() } else { Rational::zero() };
        let b = if s == i { x.get(t, j).clone() } else { Rational::zero() };
        a + b
    })
}

/// `g e_i ^ g e_j` restricted to V10.
fn wedge_group_matrix(g: &QMat) -> Vec<Vec<Rational>> {
    wedge_matrix(|s, t, i, j| g.get(s, i) * g.get(t, j))
}

/// Matrix on V10 of the map sending `e_i ^ e_j` to `sum_{s,t} coeff(s,t,i,j) e_s ^ e_t`.
fn wedge_matrix(coeff: impl Fn(usize, usize, usize, usize) -> Rational) -> Vec<Vec<Rational>> {
    let mut cols = Vec::new();
    for b in v10_basis() {
        let mut out: [Rational; 6] = Default::default();
        for (k, &(i, j)) in WEDGE_PAIRS.iter().enumerate() {
            if b[k] == 0 {
                continue;
            }
            for s in 0..4 {
                for t in 0..4 {
                    if s == t {
                        continue;
                    }
                    let c = coeff(s, t, i, j);
                    if c.is_zero() {
                        continue;
                    }
                    let (idx, sign) = pair_index(s, t);
                    out[idx] += q(b[k] * sign) * c;
                }
            }
        }
        cols.push(wedge_to_v10(&out));
    }
    (0..5).map(|r| (0..5).map(|c| cols[c][r].clone()).collect()).collect()
}

impl Factor {
    pub fn dim(self) -> usize {
        match self {
            Factor::V01 => 4,
            Factor::V10 => 5,
        }
    }

    pub fn weight(self, i: usize) -> Weight {
        match self {
            Factor::V01 => std_weight(i),
            Factor::V10 => {
                let pairs = [(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)];
                let (a, b) = pairs[i];
                std_weight(a) + std_weight(b)
            }
        }
    }

    /// Matrix of the Lie algebra element `x`.
    pub fn lie_matrix(self, x: &QMat) -> Vec<Vec<Rational>> {
        match self {
            Factor::V01 => (0..4).map(|i| (0..4).map(|j| x.get(i, j).clone()).collect()).collect(),
            Factor::V10 => wedge_lie_matrix(x),
        }
    }

    /// Matrix of the group element `g`.
    pub fn group_matrix(self, g: &QMat) -> Vec<Vec<Rational>> {
        match self {
            Factor::V01 => (0..4).map(|i| (0..4).map(|j| g.get(i, j).clone()).collect()).collect(),
            Factor::V10 => wedge_group_matrix(g),
        }
    }
}

/// `F_1 (x) ... (x) F_k` with the mixed-radix basis of weight vectors.
#[derive(Clone, Debug)]
pub struct TensorSpace {
    pub factors: Vec<Factor>,
    lie: Vec<Vec<Vec<Vec<Rational>>>>,
}

impl TensorSpace {
    pub fn new(factors: Vec<Factor>) -> TensorSpace {
        let basis = lie_basis();
        let lie = factors.iter().map(|f| basis.iter().map(|e| f.lie_matrix(&e.matrix)).collect()).collect();
        TensorSpace { factors, lie }
    }

    /// `V10^{(x) a} (x) V01^{(x) b}`.
    pub fn standard(a: usize, b: usize) -> TensorSpace {
        let mut f = vec![Factor::V10; a];
        f.extend(vec![Factor::V01; b]);
        TensorSpace::new(f)
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().map(|f| f.dim()).product()
    }

    pub fn digits(&self, mut idx: usize) -> Vec<usize> {
        let mut d = vec![0; self.factors.len()];
        for (k, f) in self.factors.iter().enumerate().rev() {
            d[k] = idx % f.dim();
            idx /= f.dim();
        }
        d
    }

    pub fn index(&self, digits: &[usize]) -> usize {
        self.factors.iter().zip(digits).fold(0, |acc, (f, d)| acc * f.dim() + d)
    }

    pub fn weight_of(&self, idx: usize) -> Weight {
        let d = self.digits(idx);
        self.factors.iter().zip(d).fold(Weight::new(0, 0, 0), |w, (f, i)| w + f.weight(i))
    }

    /// Pure tensor of the given factor vectors.
    pub fn pure(&self, parts: &[Vec<Rational>]) -> SVec {
        let mut out = SVec::new();
        out.insert(0usize, Rational::from_integer(1.into()));
        for (f, part) in self.factors.iter().zip(parts) {
            assert_eq!(part.len(), f.dim());
            let mut next = SVec::new();
            for (idx, c) in &out {
                for (i, x) in part.iter().enumerate() {
                    if !x.is_zero() {
                        next.insert(idx * f.dim() + i, c * x);
                    }
                }
            }
            out = next;
        }
        out
    }

    fn apply_factorwise(&self, mats: &[&Vec<Vec<Rational>>], x: &SVec, derivation: bool) -> SVec {
        let mut out = SVec::new();
        if derivation {
            for (idx, c) in x {
                let d = self.digits(*idx);
                for (k, m) in mats.iter().enumerate() {
                    let mut dd = d.clone();
                    for (r, row) in m.iter().enumerate() {
                        let e = &row[d[k]];
                        if e.is_zero() {
                            continue;
                        }
                        dd[k] = r;
                        let t = self.index(&dd);
                        let v = out.entry(t).or_insert_with(Rational::zero);
                        *v += c * e;
                    }
                }
            }
        } else {
            out = x.clone();
            for (k, m) in mats.iter().enumerate() {
                let mut next = SVec::new();
                for (idx, c) in &out {
                    let d = self.digits(*idx);
                    let mut dd = d.clone();
                    for (r, row) in m.iter().enumerate() {
                        let e = &row[d[k]];
                        if e.is_zero() {
                            continue;
                        }
                        dd[k] = r;
                        let v = next.entry(self.index(&dd)).or_insert_with(Rational::zero);
                        *v += c * e;
                    }
                }
                out = next;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Action of the `i`-th Lie basis element.
    pub fn lie_apply(&self, i: usize, x: &SVec) -> SVec {
        let mats: Vec<&Vec<Vec<Rational>>> = self.lie.iter().map(|per| &per[i]).collect();
        self.apply_factorwise(&mats, x, true)
    }

    /// Action of an arbitrary Lie algebra element given as a 4x4 matrix.
    pub fn lie_apply_matrix(&self, xm: &QMat, x: &SVec) -> SVec {
        let mats: Vec<Vec<Vec<Rational>>> = self.factors.iter().map(|f| f.lie_matrix(xm)).collect();
        let refs: Vec<&Vec<Vec<Rational>>> = mats.iter().collect();
        self.apply_factorwise(&refs, x, true)
    }

    /// Diagonal action of a group element of GSp4(Q).
    pub fn group_apply(&self, g: &QMat, x: &SVec) -> SVec {
        let mats: Vec<Vec<Vec<Rational>>> = self.factors.iter().map(|f| f.group_matrix(g)).collect();
        let refs: Vec<&Vec<Vec<Rational>>> = mats.iter().collect();
        self.apply_factorwise(&refs, x, false)
    }

    /// Reorders tensor factors: factor `k` of `self` becomes factor `perm[k]` of the result.
    pub fn permute(&self, perm: &[usize], x: &SVec) -> (TensorSpace, SVec) {
        let mut factors = self.factors.clone();
        for (k, f) in self.factors.iter().enumerate() {
            factors[perm[k]] = *f;
        }
        let target = TensorSpace::new(factors);
        let mut out = SVec::new();
        for (idx, c) in x {
            let d = self.digits(*idx);
            let mut nd = d.clone();
            for (k, dk) in d.iter().enumerate() {
                nd[perm[k]] = *dk;
            }
            out.insert(target.index(&nd), c.clone());
        }
        (target, out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branching::lie::{bracket, lie_index};

    fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
        let n = a.len();
        (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum()).collect()).collect()
    }

    fn mat_sub(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
        a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect()
    }

    #[test]
    fn fundamental_brackets() {
        let basis = lie_basis();
        for f in [Factor::V01, Factor::V10] {
            for x in &basis {
                for y in &basis {
                    let lhs = f.lie_matrix(&bracket(&x.matrix, &y.matrix));
                    let (mx, my) = (f.lie_matrix(&x.matrix), f.lie_matrix(&y.matrix));
                    let rhs = mat_sub(&mat_mul(&mx, &my), &mat_mul(&my, &mx));
                    assert_eq!(lhs, rhs, "{f:?} [{}, {}]", x.name, y.name);
                }
            }
        }
    }

    #[test]
    fn group_action_is_exponential() {
        // u^h = 1 + h N with N = E13 + E24, and N^3 = 0 on V10
        let n = &lie_basis()[lie_index("E13")].matrix;
        for h in [-2i64, -1, 1, 2] {
            let mut uh = QMat::identity(4);
            for (i, j) in [(0, 2), (1, 3)] {
                uh.set(i, j, q(h));
            }
            for f in [Factor::V01, Factor::V10] {
                let nm = f.lie_matrix(&n.scale(&q(h)));
                let d = f.dim();
                let id: Vec<Vec<Rational>> =
                    (0..d).map(|i| (0..d).map(|j| if i == j { q(1) } else { q(0) }).collect()).collect();
                let n2 = mat_mul(&nm, &nm);
                let exp: Vec<Vec<Rational>> = (0..d)
                    .map(|i| (0..d).map(|j| &(&id[i][j] + &nm[i][j]) + &(&n2[i][j] / q(2))).collect())
                    .collect();
                assert!(mat_mul(&n2, &nm).iter().flatten().all(|x| x.is_zero()));
                assert_eq!(f.group_matrix(&uh), exp, "{f:?} h={h}");
            }
        }
    }

    #[test]
    fn weights_of_named_vectors() {
        assert_eq!(Factor::V10.weight(0), Weight::new(1, 1, 0));
        assert_eq!(Factor::V10.weight(2), Weight::new(0, 0, 1));
        assert_eq!(Factor::V01.weight(1), Weight::new(0, 1, 0));
        let s = TensorSpace::standard(1, 1);
        assert_eq!(s.dim(), 20);
        assert_eq!(s.weight_of(s.index(&[0, 0])), Weight::highest(1, 1));
    }
}

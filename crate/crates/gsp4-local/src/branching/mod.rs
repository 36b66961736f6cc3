//! Algebraic representations of GSp4 over Q: `V^{a,b}` as a cyclic module
//! inside `V10^{(x) a} (x) V01^{(x) b}`, Cartan products by Casimir-Krylov
//! projection, branching to `H` and the twist identity for `u^h`.

pub mod lie;
pub mod tensor;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::{One, Zero};

pub use lie::{casimir_eigenvalue, lie_basis, lie_index, LieBasisElt, LieKind, Weight};
pub use tensor::{Factor, SVec, TensorSpace};

use crate::padic::QMat;
use crate::symcore::{q, Rational};
use tensor::{axpy, ratio, scaled};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BranchError {
    #[error("size bound 6^a 4^b <= 1000 exceeded for (a, b) = ({a}, {b})")]
    SizeBound { a: i64, b: i64 },
    #[error("parameter out of range: {0}")]
    Range(String),
    #[error("projector not separating: weight {0} shares the Casimir eigenvalue of {1}")]
    NotSeparating(Weight, Weight),
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, BranchError>;

/// Largest tensor dimension admitted by `build_rep`.
pub const SIZE_BOUND: i64 = 1000;

pub fn check_size(a: i64, b: i64) -> Result<()> {
    if a < 0 || b < 0 {
        return Err(BranchError::Range(format!("(a, b) = ({a}, {b})")));
    }
    let size = 6i64.checked_pow(a as u32).and_then(|x| x.checked_mul(4i64.checked_pow(b as u32)?));
    match size {
        Some(s) if s <= SIZE_BOUND => Ok(()),
        _ => Err(BranchError::SizeBound { a, b }),
    }
}

/// All `(a, b)` within the size bound.
pub fn admissible_pairs() -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..5 {
            if check_size(a, b).is_ok() {
                out.push((a, b));
            }
        }
    }
    out
}

/// `(a+1)(b+1)(a+b+2)(2a+b+3)/6`.
pub fn dimension_formula(a: i64, b: i64) -> i64 {
    (a + 1) * (b + 1) * (a + b + 2) * (2 * a + b + 3) / 6
}

/// Basis of a subspace kept in reduced echelon form: each vector has a
/// pivot index where it is 1 and every other vector vanishes.
#[derive(Clone, Debug, Default)]
struct Echelon {
    rows: Vec<(usize, SVec)>,
}

impl Echelon {
    fn reduce(&self, x: &SVec) -> SVec {
        let mut y = x.clone();
        for (p, r) in &self.rows {
            if let Some(c) = y.get(p).cloned() {
                axpy(&mut y, &-c, r);
            }
        }
        y
    }

    /// Adds `x` if independent; returns whether it was added.
    fn insert(&mut self, x: &SVec) -> bool {
        let y = self.reduce(x);
        let Some((&p, c)) = y.iter().next() else {
            return false;
        };
        let y = scaled(&y, &c.recip());
        for (_, r) in self.rows.iter_mut() {
            if let Some(c) = r.get(&p).cloned() {
                axpy(r, &-c, &y);
            }
        }
        self.rows.push((p, y));
        true
    }
}

/// `V^{a,b}` realized inside `V10^{(x) a} (x) V01^{(x) b}`.
#[derive(Clone, Debug)]
pub struct RepSpace {
    pub a: i64,
    pub b: i64,
    pub space: TensorSpace,
    /// Basis vectors in tensor coordinates, reduced echelon within each weight space.
    pub basis: Vec<SVec>,
    pub pivots: Vec<usize>,
    pub weights: Vec<Weight>,
    /// `lie[i][k]`: coordinates of `X_i b_k` in the basis.
    pub lie: Vec<Vec<SVec>>,
}

impl RepSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Basis label: the weight and the position within its weight space.
    pub fn label(&self, k: usize) -> String {
        let w = self.weights[k];
        let pos = self.weights[..k].iter().filter(|x| **x == w).count();
        format!("{w}#{pos}")
    }

    /// H-weight of a basis vector: `(c, d, e)` for the character
    /// `diag(x1, x2) x diag(y1, y2) -> x1^c y1^d (x1 x2)^e`.
    pub fn h_weight(&self, k: usize) -> Weight {
        self.weights[k]
    }

    /// Coordinates of a tensor vector, if it lies in the span.
    pub fn coords(&self, x: &SVec) -> Option<SVec> {
        let mut c = SVec::new();
        let mut recon = SVec::new();
        for (k, p) in self.pivots.iter().enumerate() {
            if let Some(v) = x.get(p) {
                c.insert(k, v.clone());
                axpy(&mut recon, v, &self.basis[k]);
            }
        }
        (recon == *x).then_some(c)
    }

    pub fn to_tensor(&self, c: &SVec) -> SVec {
        let mut out = SVec::new();
        for (k, v) in c {
            axpy(&mut out, v, &self.basis[*k]);
        }
        out
    }

    /// Action of the `i`-th Lie basis element on coordinates.
    pub fn lie_apply(&self, i: usize, c: &SVec) -> SVec {
        let mut out = SVec::new();
        for (k, v) in c {
            axpy(&mut out, v, &self.lie[i][*k]);
        }
        out
    }

    /// Matrix columns of a group element of GSp4(Q).
    pub fn group_action(&self, g: &QMat) -> Result<Vec<SVec>> {
        self.basis
            .iter()
            .enumerate()
            .map(|(k, b)| {
                self.coords(&self.space.group_apply(g, b))
                    .ok_or_else(|| BranchError::Verification(format!("g b_{k} leaves V^{{{},{}}}", self.a, self.b)))
            })
            .collect()
    }

    /// `[X_i, X_j]` acts as `X_i X_j - X_j X_i` for every pair of basis elements.
    pub fn brackets_consistent(&self) -> bool {
        let basis = lie_basis();
        for (i, x) in basis.iter().enumerate() {
            for (j, y) in basis.iter().enumerate() {
                let br = lie::lie_coords(&lie::bracket(&x.matrix, &y.matrix));
                for k in 0..self.dim() {
                    let e: SVec = [(k, Rational::one())].into_iter().collect();
                    let mut lhs = SVec::new();
                    for (t, c) in br.iter().enumerate() {
                        axpy(&mut lhs, c, &self.lie[t][k]);
                    }
                    let mut rhs = self.lie_apply(i, &self.lie_apply(j, &e));
                    axpy(&mut rhs, &q(-1), &self.lie_apply(j, &self.lie_apply(i, &e)));
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// The top tensor `w^{(x) a} (x) v^{(x) b}`.
fn top_tensor(space: &TensorSpace) -> SVec {
    SVec::from([(space.index(&vec![0; space.factors.len()]), Rational::one())])
}

/// `V^{a,b}` as the span of iterated lowerings of the top tensor.
pub fn build_rep(a: i64, b: i64) -> Result<RepSpace> {
    check_size(a, b)?;
    let space = TensorSpace::standard(a as usize, b as usize);
    let basis_elts = lie_basis();
    let lowering: Vec<usize> =
        basis_elts.iter().enumerate().filter(|(_, e)| e.kind == LieKind::Negative).map(|(i, _)| i).collect();

    let mut spaces: BTreeMap<Weight, Echelon> = BTreeMap::new();
    let top = top_tensor(&space);
    spaces.entry(Weight::highest(a, b)).or_default().insert(&top);
    let mut queue = VecDeque::from([(Weight::highest(a, b), top)]);
    while let Some((wt, x)) = queue.pop_front() {
        for &i in &lowering {
            let y = space.lie_apply(i, &x);
            if y.is_empty() {
                continue;
            }
            let wy = wt + basis_elts[i].root;
            if spaces.entry(wy).or_default().insert(&y) {
                queue.push_back((wy, y));
            }
        }
    }

    let (mut basis, mut pivots, mut weights) = (Vec::new(), Vec::new(), Vec::new());
    for (w, e) in spaces.iter().rev() {
        let mut rows = e.rows.clone();
        rows.sort_by_key(|(p, _)| *p);
        for (p, r) in rows {
            basis.push(r);
            pivots.push(p);
            weights.push(*w);
        }
    }
    let mut rep = RepSpace { a, b, space, basis, pivots, weights, lie: Vec::new() };
    let mut lie = Vec::with_capacity(basis_elts.len());
    for (i, elt) in basis_elts.iter().enumerate() {
        let mut cols = Vec::with_capacity(rep.dim());
        for (k, bk) in rep.basis.iter().enumerate() {
            let y = rep.space.lie_apply(i, bk);
            let c = rep.coords(&y).ok_or_else(|| {
                BranchError::Verification(format!("{} b_{k} leaves the cyclic module", elt.name))
            })?;
            cols.push(c);
        }
        lie.push(cols);
    }
    rep.lie = lie;

    let want = dimension_formula(a, b);
    if rep.dim() as i64 != want {
        return Err(BranchError::Verification(format!("dim V^{{{a},{b}}} = {} but the formula gives {want}", rep.dim())));
    }
    for (k, w) in rep.weights.iter().enumerate() {
        if rep.space.weight_of(rep.pivots[k]) != *w {
            return Err(BranchError::Verification(format!("basis vector {k} has the wrong weight")));
        }
    }
    Ok(rep)
}

/// Named vectors of the fundamental representations.
pub mod named {
    use super::*;

    /// Highest-weight vector `e_1` of V01.
    pub fn v() -> Vec<Rational> {
        unit(4, 0)
    }
    /// `e_2`.
    pub fn v_prime() -> Vec<Rational> {
        unit(4, 1)
    }
    /// `e_1 ^ e_2`.
    pub fn w() -> Vec<Rational> {
        unit(5, 0)
    }
    /// `e_1 ^ e_4 - e_2 ^ e_3`.
    pub fn w_prime() -> Vec<Rational> {
        unit(5, 2)
    }

    pub(crate) fn unit(n: usize, i: usize) -> Vec<Rational> {
        (0..n).map(|j| if i == j { q(1) } else { q(0) }).collect()
    }
}

fn dense_to_sparse(x: &[Rational]) -> SVec {
    x.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
}

/// `(V01, V10)`, with `X21 v = v'` and `Z w = w'` asserted.
pub fn build_fundamental() -> Result<(RepSpace, RepSpace)> {
    let v01 = build_rep(0, 1)?;
    let v10 = build_rep(1, 0)?;
    let x21 = v01.space.lie_apply(lie_index("F21"), &dense_to_sparse(&named::v()));
    if x21 != dense_to_sparse(&named::v_prime()) {
        return Err(BranchError::Verification("X21 v != e2".into()));
    }
    let zw = v10.space.lie_apply(lie_index("F31"), &dense_to_sparse(&named::w()));
    if zw != dense_to_sparse(&named::w_prime()) {
        return Err(BranchError::Verification("Z w != e1^e4 - e2^e3".into()));
    }
    if tensor::v10_basis()[2] != [0, 0, 1, -1, 0, 0] {
        return Err(BranchError::Verification("w' is not e1^e4 - e2^e3 in wedge^2".into()));
    }
    Ok((v01, v10))
}

/// `Omega x` for the Casimir built from the trace form.
pub fn casimir_apply(space: &TensorSpace, x: &SVec) -> SVec {
    let ginv = lie::trace_form_inverse();
    let n = ginv.len();
    let mut out = SVec::new();
    let mut cache: Vec<Option<SVec>> = vec![None; n];
    for j in 0..n {
        if ginv.iter().all(|row| row[j].is_zero()) {
            continue;
        }
        let xj = cache[j].get_or_insert_with(|| space.lie_apply(j, x)).clone();
        for (i, row) in ginv.iter().enumerate() {
            if !row[j].is_zero() {
                axpy(&mut out, &row[j], &space.lie_apply(i, &xj));
            }
        }
    }
    out
}

/// Distinct weights of a tensor space.
pub fn tensor_weights(space: &TensorSpace) -> BTreeSet<Weight> {
    let mut acc = BTreeSet::from([Weight::new(0, 0, 0)]);
    for f in &space.factors {
        let fw: Vec<Weight> = (0..f.dim()).map(|i| f.weight(i)).collect();
        acc = acc.iter().flat_map(|a| fw.iter().map(move |w| *a + *w)).collect();
    }
    acc
}

/// Checks that no other dominant weight of the tensor space shares the
/// Casimir eigenvalue of `target`.
pub fn check_separating(space: &TensorSpace, target: Weight) -> Result<()> {
    let c = casimir_eigenvalue(target);
    for w in tensor_weights(space) {
        if w != target && w.is_dominant() && casimir_eigenvalue(w) == c {
            return Err(BranchError::NotSeparating(w, target));
        }
    }
    Ok(())
}

/// Minimal polynomial of `Omega` on the cyclic span of `x`, together with
/// the Krylov vectors `x, Omega x, ...`. Coefficients are low degree first, monic.
pub fn krylov(space: &TensorSpace, x: &SVec) -> (Vec<Rational>, Vec<SVec>) {
    let mut kry: Vec<SVec> = Vec::new();
    // reduced rows with the combination of Krylov vectors producing them
    let mut rows: Vec<(usize, SVec, Vec<Rational>)> = Vec::new();
    let mut cur = x.clone();
    loop {
        let d = kry.len();
        let mut y = cur.clone();
        let mut combo = vec![Rational::zero(); d + 1];
        combo[d] = Rational::one();
        for (p, r, rc) in &rows {
            if let Some(c) = y.get(p).cloned() {
                axpy(&mut y, &-c.clone(), r);
                for (t, v) in rc.iter().enumerate() {
                    combo[t] -= &c * v;
                }
            }
        }
        kry.push(cur.clone());
        match y.iter().next() {
            None => return (combo, kry),
            Some((&p, c)) => {
                let inv = c.recip();
                let y = scaled(&y, &inv);
                let combo = combo.iter().map(|v| v * &inv).collect();
                rows.push((p, y, combo));
            }
        }
        cur = casimir_apply(space, &cur);
    }
}

/// Component of `x` in the isotypic part of highest weight `target`.
pub fn cartan_project(space: &TensorSpace, x: &SVec, target: Weight) -> Result<SVec> {
    check_separating(space, target)?;
    if x.is_empty() {
        return Ok(SVec::new());
    }
    let (m, kry) = krylov(space, x);
    let c = casimir_eigenvalue(target);
    // synthetic division m(t) = (t - c) q(t) + m(c)
    let deg = m.len() - 1;
    let mut qc = vec![Rational::zero(); deg];
    let mut acc = Rational::zero();
    for i in (0..deg).rev() {
        acc = &acc * &c + &m[i + 1];
        qc[i] = acc.clone();
    }
    let rem = &acc * &c + &m[0];
    if !rem.is_zero() {
        return Ok(SVec::new());
    }
    let qval: Rational = qc.iter().rev().fold(Rational::zero(), |s, v| s * &c + v);
    let mut out = SVec::new();
    for (qi, k) in qc.iter().zip(&kry) {
        axpy(&mut out, &(qi / &qval), k);
    }
    Ok(out)
}

/// Cartan product of pure tensors: the top-weight component of their tensor product.
pub fn cartan_product(space: &TensorSpace, parts: &[Vec<Rational>]) -> Result<SVec> {
    let x = space.pure(parts);
    let top = space.weight_of(0);
    cartan_project(space, &x, top)
}

/// Highest-weight vector `v^{a,b,q,r}` for H.
#[derive(Clone, Debug)]
pub struct HWVector {
    pub a: i64,
    pub b: i64,
    pub q: i64,
    pub r: i64,
    /// Coordinates in `V10^{(x) a} (x) V01^{(x) b}`.
    pub coords: SVec,
    pub declared_weight: Weight,
}

fn check_qr(a: i64, b: i64, qq: i64, r: i64) -> Result<()> {
    check_size(a, b)?;
    if !(0..=a).contains(&qq) || !(0..=b).contains(&r) {
        return Err(BranchError::Range(format!("(a, b, q, r) = ({a}, {b}, {qq}, {r})")));
    }
    Ok(())
}

/// Factor vectors `w^{a-q}, w'^q, v^{b-r}, v'^r`.
fn hw_parts(a: i64, b: i64, qq: i64, r: i64) -> Vec<Vec<Rational>> {
    let mut parts = Vec::new();
    parts.extend(std::iter::repeat_with(named::w).take((a - qq) as usize));
    parts.extend(std::iter::repeat_with(named::w_prime).take(qq as usize));
    parts.extend(std::iter::repeat_with(named::v).take((b - r) as usize));
    parts.extend(std::iter::repeat_with(named::v_prime).take(r as usize));
    parts
}

/// The H-weight of `W^{c,d} (x) det^q` as a torus weight.
pub fn h_highest(c: i64, d: i64, qq: i64) -> Weight {
    Weight::new(c, d, qq)
}

/// `v^{a,b,q,r}`, checked nonzero, H-highest and of the expected weight.
pub fn hw_vector(a: i64, b: i64, qq: i64, r: i64) -> Result<HWVector> {
    check_qr(a, b, qq, r)?;
    let space = TensorSpace::standard(a as usize, b as usize);
    let coords = cartan_product(&space, &hw_parts(a, b, qq, r))?;
    let declared_weight = h_highest(a + b - qq - r, a - qq + r, qq);
    let fail = |m: &str| Err(BranchError::Verification(format!("v^{{{a},{b},{qq},{r}}}: {m}")));
    if coords.is_empty() {
        return fail("zero");
    }
    for name in ["E14", "E23"] {
        if !space.lie_apply(lie_index(name), &coords).is_empty() {
            return fail(&format!("not killed by {name}"));
        }
    }
    if coords.keys().any(|&i| space.weight_of(i) != declared_weight) {
        return fail("wrong weight");
    }
    Ok(HWVector { a, b, q: qq, r, coords, declared_weight })
}

/// Same vector built with the V01 factors first, then moved back to the
/// standard factor order.
pub fn hw_vector_swapped(a: i64, b: i64, qq: i64, r: i64) -> Result<SVec> {
    check_qr(a, b, qq, r)?;
    let (na, nb) = (a as usize, b as usize);
    let mut factors = vec![Factor::V01; nb];
    factors.extend(vec![Factor::V10; na]);
    let space = TensorSpace::new(factors);
    let mut parts = Vec::new();
    parts.extend(std::iter::repeat_with(named::v).take((b - r) as usize));
    parts.extend(std::iter::repeat_with(named::v_prime).take(r as usize));
    parts.extend(std::iter::repeat_with(named::w).take((a - qq) as usize));
    parts.extend(std::iter::repeat_with(named::w_prime).take(qq as usize));
    let x = cartan_project(&space, &space.pure(&parts), Weight::highest(a, b))?;
    let perm: Vec<usize> = (0..nb).map(|k| na + k).chain(0..na).collect();
    Ok(space.permute(&perm, &x).1)
}

/// Multiset of weights as counts.
pub fn weight_multiset(ws: impl IntoIterator<Item = Weight>) -> BTreeMap<Weight, usize> {
    let mut m = BTreeMap::new();
    for w in ws {
        *m.entry(w).or_insert(0) += 1;
    }
    m
}

/// Weights of `W^{c,d} (x) det^q`.
pub fn w_character(c: i64, d: i64, qq: i64) -> Vec<Weight> {
    let mut out = Vec::new();
    for i in 0..=c {
        for j in 0..=d {
            out.push(Weight::new(c - 2 * i, d - 2 * j, qq + i + j));
        }
    }
    out
}

/// The index list `(a+b-q-r, a-q+r, q)`, checked against the H-weights of `V^{a,b}`.
pub fn branch_decompose_rep(rep: &RepSpace) -> Result<Vec<(i64, i64, i64)>> {
    let (a, b) = (rep.a, rep.b);
    let mut idx = Vec::new();
    for qq in 0..=a {
        for r in 0..=b {
            idx.push((a + b - qq - r, a - qq + r, qq));
        }
    }
    let expected = weight_multiset(idx.iter().flat_map(|&(c, d, qq)| w_character(c, d, qq)));
    let actual = weight_multiset((0..rep.dim()).map(|k| rep.h_weight(k)));
    if expected != actual {
        let keys: BTreeSet<&Weight> = expected.keys().chain(actual.keys()).collect();
        let bad = keys.into_iter().find(|w| expected.get(w) != actual.get(w)).expect("multisets differ");
        return Err(BranchError::Verification(format!(
            "H-weight {bad}: multiplicity {} in V^{{{a},{b}}}, {} in the branching sum",
            actual.get(bad).unwrap_or(&0),
            expected.get(bad).unwrap_or(&0)
        )));
    }
    let total: i64 = idx.iter().map(|(c, d, _)| (c + 1) * (d + 1)).sum();
    if total != rep.dim() as i64 {
        return Err(BranchError::Verification("dimension sum".into()));
    }
    Ok(idx)
}

pub fn branch_decompose(a: i64, b: i64) -> Result<Vec<(i64, i64, i64)>> {
    branch_decompose_rep(&build_rep(a, b)?)
}

/// `u^h = 1 + h (E13 + E24)`.
pub fn u_power(h: i64) -> QMat {
    let mut m = QMat::identity(4);
    m.set(0, 2, q(h));
    m.set(1, 3, q(h));
    m
}

/// Projection of `u^h v^{a,b,q,r}` to the top S-weight equals `(2h)^q v^{a,b,0,r}`.
pub fn twist_lemma_check(a: i64, b: i64, qq: i64, r: i64, h: i64) -> Result<bool> {
    if h == 0 {
        return Err(BranchError::Range("h = 0".into()));
    }
    let x = hw_vector(a, b, qq, r)?;
    let space = TensorSpace::standard(a as usize, b as usize);
    let mut y = space.group_apply(&u_power(h), &x.coords);
    y.retain(|i, _| space.weight_of(*i).s_weight() == 2 * a + b);
    let base = hw_vector(a, b, 0, r)?;
    let factor = (0..qq).fold(Rational::one(), |acc, _| acc * q(2 * h));
    Ok(y == scaled(&base.coords, &factor))
}

/// `u^h w' = w' + 2h w` in V10.
pub fn twist_micro_check(h: i64) -> bool {
    let space = TensorSpace::new(vec![Factor::V10]);
    let y = space.group_apply(&u_power(h), &dense_to_sparse(&named::w_prime()));
    let mut want = dense_to_sparse(&named::w_prime());
    axpy(&mut want, &q(2 * h), &dense_to_sparse(&named::w()));
    y == want
}

/// Negated weights match weights shifted by `-(2a+b) mu`, and every weight
/// has central exponent `2a+b`.
pub fn dual_character_check_rep(rep: &RepSpace) -> bool {
    let e = 2 * rep.a + rep.b;
    let neg = weight_multiset(rep.weights.iter().map(|w| -*w));
    let shifted = weight_multiset(rep.weights.iter().map(|w| *w - Weight::new(0, 0, e)));
    neg == shifted && rep.weights.iter().all(|w| w.central() == e)
}

pub fn dual_character_check(a: i64, b: i64) -> Result<bool> {
    Ok(dual_character_check_rep(&build_rep(a, b)?))
}

/// `x` is a scalar multiple of `y`.
pub fn proportional(x: &SVec, y: &SVec) -> Option<Rational> {
    ratio(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions_match_formula() {
        for (a, b) in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (0, 2)] {
            let rep = build_rep(a, b).unwrap();
            assert_eq!(rep.dim() as i64, dimension_formula(a, b));
        }
        assert_eq!(dimension_formula(1, 1), 16);
        assert_eq!(dimension_formula(2, 0), 14);
        assert_eq!(build_rep(4, 0).unwrap_err(), BranchError::SizeBound { a: 4, b: 0 });
    }

    #[test]
    fn fundamentals_and_brackets() {
        let (v01, v10) = build_fundamental().unwrap();
        assert_eq!((v01.dim(), v10.dim()), (4, 5));
        assert!(v01.brackets_consistent());
        assert!(v10.brackets_consistent());
        assert!(build_rep(1, 1).unwrap().brackets_consistent());
    }

    #[test]
    fn casimir_matches_formula_on_top_tensors() {
        for (a, b) in [(1, 0), (0, 1), (1, 1), (0, 2)] {
            let space = TensorSpace::standard(a, b);
            let top = top_tensor(&space);
            let c = casimir_eigenvalue(Weight::highest(a as i64, b as i64));
            assert_eq!(casimir_apply(&space, &top), scaled(&top, &c));
        }
    }

    #[test]
    fn cartan_projection_basics() {
        let space = TensorSpace::standard(1, 1);
        let top = top_tensor(&space);
        assert_eq!(cartan_project(&space, &top, Weight::highest(1, 1)).unwrap(), top);
        let x: Vec<Rational> = [3, -1, 2, 5, 7].map(q).to_vec();
        let y: Vec<Rational> = [1, 4, -2, 3].map(q).to_vec();
        let p = cartan_product(&space, &[x, y]).unwrap();
        assert!(!p.is_empty());
        let again = cartan_project(&space, &p, Weight::highest(1, 1)).unwrap();
        assert_eq!(again, p);

        let sq = TensorSpace::new(vec![Factor::V01, Factor::V01]);
        let mut j = SVec::new();
        for (s, t, c) in [(0, 3, 1), (3, 0, -1), (1, 2, 1), (2, 1, -1)] {
            j.insert(sq.index(&[s, t]), q(c));
        }
        assert!(cartan_project(&sq, &j, Weight::new(2, 0, 0)).unwrap().is_empty());
    }

    #[test]
    fn hw_vectors_small() {
        let x = hw_vector(1, 1, 0, 0).unwrap();
        assert_eq!(x.coords, top_tensor(&TensorSpace::standard(1, 1)));
        let y = hw_vector(1, 0, 1, 0).unwrap();
        assert_eq!(y.coords, dense_to_sparse(&named::w_prime()));
        let mut ws = BTreeSet::new();
        for (qq, r) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let v = hw_vector(1, 1, qq, r).unwrap();
            ws.insert(v.declared_weight);
            assert_eq!(hw_vector_swapped(1, 1, qq, r).unwrap(), v.coords);
        }
        assert_eq!(ws.len(), 4);
    }

    #[test]
    fn branching_examples() {
        assert_eq!(branch_decompose(0, 1).unwrap(), vec![(1, 0, 0), (0, 1, 0)]);
        assert_eq!(branch_decompose(1, 0).unwrap(), vec![(1, 1, 0), (0, 0, 1)]);
        assert!(branch_decompose(1, 1).is_ok());
    }

    #[test]
    fn twist_lemma_small() {
        for h in [-2, -1, 1, 2] {
            assert!(twist_micro_check(h));
        }
        assert!(twist_lemma_check(1, 1, 1, 0, -1).unwrap());
        assert!(twist_lemma_check(1, 1, 0, 1, 2).unwrap());
    }

    #[test]
    fn dual_characters() {
        assert!(dual_character_check(0, 1).unwrap());
        assert!(dual_character_check(1, 0).unwrap());
    }
}

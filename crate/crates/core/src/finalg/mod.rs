//! Finite-dimensional unital associative algebras by structure constants.

pub mod bimodule;
pub mod fixtures;

use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::exact_core::linalg::{is_zero_vec, unit_vec, vec_add};
use crate::exact_core::{kernel, quotient, Field, Mat, Quotient, Subspace};
use crate::report::Report;

pub use bimodule::{associator, left_unitor, right_unitor, tensor, tensor_maps, PlainBimodule, Tensor};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FinalgError {
    #[error("not a left ideal: {0}")]
    NotLeftIdeal(String),
    #[error("not a two-sided ideal: {0}")]
    NotTwoSided(String),
    #[error("not a unital subalgebra: {0}")]
    NotSubalgebra(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
}

pub type AlgRef<F> = Arc<Algebra<F>>;

/// `e_i * e_j = sum_k c[i][j][k] e_k`, stored sparsely per `(i, j)`.
#[derive(Clone, Debug)]
pub struct Algebra<F> {
    pub dim: usize,
    table: Vec<Vec<(usize, F)>>,
    pub unit: Vec<F>,
    pub label: String,
    gens: OnceLock<Vec<Vec<F>>>,
}

impl<F: Field> PartialEq for Algebra<F> {
    fn eq(&self, o: &Self) -> bool {
        self.dim == o.dim && self.table == o.table && self.unit == o.unit
    }
}

impl<F: Field> Algebra<F> {
    /// Builds from dense products of basis elements.
    pub fn from_fn(dim: usize, unit: Vec<F>, label: impl Into<String>, mut prod: impl FnMut(usize, usize) -> Vec<F>) -> Self {
        assert_eq!(unit.len(), dim);
        let mut table = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = prod(i, j);
                assert_eq!(v.len(), dim);
                table.push(v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect());
            }
        }
        Algebra { dim, table, unit, label: label.into(), gens: OnceLock::new() }
    }

    /// Builds from sparse structure constants `(i, j, k, c)`; repeated entries add up.
    pub fn from_sparse(dim: usize, unit: Vec<F>, label: impl Into<String>, entries: &[(usize, usize, usize, F)]) -> Self {
        let mut dense = vec![vec![F::zero(); dim]; dim * dim];
        for (i, j, k, c) in entries {
            let slot = &mut dense[i * dim + j][*k];
            *slot = slot.add(c);
        }
        Self::from_fn(dim, unit, label, |i, j| dense[i * dim + j].clone())
    }

    pub fn into_ref(self) -> AlgRef<F> {
        Arc::new(self)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Nonzero structure constants in `(i, j, k)` order.
    pub fn structure(&self) -> Vec<(usize, usize, usize, F)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (k, c) in &self.table[i * self.dim + j] {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out
    }

    pub fn basis_vec(&self, i: usize) -> Vec<F> {
        unit_vec(self.dim, i)
    }

    pub fn zero_vec(&self) -> Vec<F> {
        vec![F::zero(); self.dim]
    }

    pub fn basis_mul(&self, i: usize, j: usize) -> Vec<F> {
        let mut v = self.zero_vec();
        for (k, c) in &self.table[i * self.dim + j] {
            v[*k] = c.clone();
        }
        v
    }

    pub fn mul(&self, a: &[F], b: &[F]) -> Vec<F> {
        let mut out = self.zero_vec();
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x.mul(y);
                for (k, c) in &self.table[i * self.dim + j] {
                    out[*k].add_mul(&xy, c);
                }
            }
        }
        out
    }

    /// Matrix of `x -> a x`.
    pub fn left_mat(&self, a: &[F]) -> Mat<F> {
        let cols: Vec<Vec<F>> = (0..self.dim).map(|j| self.mul(a, &self.basis_vec(j))).collect();
        Mat::from_cols(&cols, self.dim)
    }

    /// Matrix of `x -> x a`.
    pub fn right_mat(&self, a: &[F]) -> Mat<F> {
        let cols: Vec<Vec<F>> = (0..self.dim).map(|j| self.mul(&self.basis_vec(j), a)).collect();
        Mat::from_cols(&cols, self.dim)
    }

    /// A generating set as a unital algebra, chosen greedily among basis vectors.
    pub fn generators(&self) -> &[Vec<F>] {
        self.gens.get_or_init(|| {
            let mut gens: Vec<Vec<F>> = Vec::new();
            let mut closure = subalgebra_closure(self, &[]);
            for i in 0..self.dim {
                let e = self.basis_vec(i);
                if !closure.contains(&e) {
                    gens.push(e);
                    closure = subalgebra_closure(self, &gens);
                }
            }
            gens
        })
    }

    /// The opposite algebra, constants transposed.
    pub fn opposite(&self) -> Self {
        Self::from_fn(self.dim, self.unit.clone(), format!("{}^op", self.label), |i, j| self.basis_mul(j, i))
    }

    pub fn is_zero_algebra(&self) -> bool {
        self.dim == 0
    }
}

/// Associativity and unit laws on all basis elements.
pub fn validate_algebra<F: Field>(a: &Algebra<F>) -> Report {
    let mut r = Report::new();
    let n = a.dim;
    let mut assoc_ok = true;
    for i in 0..n {
        for j in 0..n {
            let ij = a.basis_mul(i, j);
            for k in 0..n {
                let lhs = a.mul(&ij, &a.basis_vec(k));
                let rhs = a.mul(&a.basis_vec(i), &a.basis_mul(j, k));
                if lhs != rhs {
                    assoc_ok = false;
                    r.fail("associativity", format!("(e{i} e{j}) e{k} != e{i} (e{j} e{k})"));
                }
            }
        }
    }
    if assoc_ok {
        r.pass("associativity");
    }
    let mut unit_ok = true;
    for i in 0..n {
        let e = a.basis_vec(i);
        if a.mul(&a.unit, &e) != e {
            unit_ok = false;
            r.fail("left unit", format!("1 e{i} != e{i}"));
        }
        if a.mul(&e, &a.unit) != e {
            unit_ok = false;
            r.fail("right unit", format!("e{i} 1 != e{i}"));
        }
    }
    if unit_ok {
        r.pass("unit");
    }
    r
}

/// Unital algebra map given by a matrix (target.dim x source.dim).
#[derive(Clone, Debug)]
pub struct AlgMorphism<F> {
    pub source: AlgRef<F>,
    pub target: AlgRef<F>,
    pub matrix: Mat<F>,
}

impl<F: Field> AlgMorphism<F> {
    pub fn identity(a: &AlgRef<F>) -> Self {
        AlgMorphism { source: a.clone(), target: a.clone(), matrix: Mat::identity(a.dim) }
    }

    pub fn compose(&self, first: &AlgMorphism<F>) -> Self {
        AlgMorphism { source: first.source.clone(), target: self.target.clone(), matrix: self.matrix.mul(&first.matrix) }
    }
}

/// Multiplicativity on basis pairs and unit preservation.
pub fn validate_morphism<F: Field>(f: &AlgMorphism<F>) -> Report {
    check_algebra_map(&f.source, &f.target, &f.matrix)
}

pub fn check_algebra_map<F: Field>(src: &Algebra<F>, tgt: &Algebra<F>, m: &Mat<F>) -> Report {
    let mut r = Report::new();
    if m.rows != tgt.dim || m.cols != src.dim {
        r.fail("shape", format!("{}x{} for {} -> {}", m.rows, m.cols, src.dim, tgt.dim));
        return r;
    }
    let mut ok = true;
    for i in 0..src.dim {
        for j in 0..src.dim {
            let lhs = m.apply(&src.basis_mul(i, j));
            let rhs = tgt.mul(&m.col(i), &m.col(j));
            if lhs != rhs {
                ok = false;
                r.fail("multiplicative", format!("f(e{i} e{j}) != f(e{i}) f(e{j})"));
            }
        }
    }
    if ok {
        r.pass("multiplicative");
    }
    r.check("unital", m.apply(&src.unit) == tgt.unit, || "f(1) != 1".into());
    r
}

/// Algebra map that is also bijective.
pub fn check_algebra_iso<F: Field>(src: &Algebra<F>, tgt: &Algebra<F>, m: &Mat<F>) -> Report {
    let mut r = check_algebra_map(src, tgt, m);
    r.check("bijective", m.is_square() && m.inverse().is_some(), || format!("{}x{} of rank {}", m.rows, m.cols, m.rank()));
    r
}

/// Smallest unital subalgebra containing `seed`.
pub fn subalgebra_closure<F: Field>(a: &Algebra<F>, seed: &[Vec<F>]) -> Subspace<F> {
    let mut vecs = vec![a.unit.clone()];
    vecs.extend(seed.iter().cloned());
    let mut s = Subspace::span(a.dim, &vecs);
    loop {
        let mut more = s.vectors();
        for x in s.vectors() {
            for g in seed {
                more.push(a.mul(&x, g));
            }
        }
        let next = Subspace::span(a.dim, &more);
        if next.dim() == s.dim() {
            return s;
        }
        s = next;
    }
}

fn closure_under<F: Field>(n: usize, start: &[Vec<F>], ops: &[Mat<F>]) -> Subspace<F> {
    let mut s = Subspace::span(n, start);
    loop {
        let mut more = s.vectors();
        for x in s.vectors() {
            for op in ops {
                more.push(op.apply(&x));
            }
        }
        let next = Subspace::span(n, &more);
        if next.dim() == s.dim() {
            return s;
        }
        s = next;
    }
}

fn left_ops<F: Field>(a: &Algebra<F>) -> Vec<Mat<F>> {
    a.generators().iter().map(|g| a.left_mat(g)).collect()
}

fn right_ops<F: Field>(a: &Algebra<F>) -> Vec<Mat<F>> {
    a.generators().iter().map(|g| a.right_mat(g)).collect()
}

pub fn left_ideal_generated<F: Field>(a: &Algebra<F>, gens: &[Vec<F>]) -> Subspace<F> {
    closure_under(a.dim, gens, &left_ops(a))
}

pub fn right_ideal_generated<F: Field>(a: &Algebra<F>, gens: &[Vec<F>]) -> Subspace<F> {
    closure_under(a.dim, gens, &right_ops(a))
}

pub fn two_sided_ideal_generated<F: Field>(a: &Algebra<F>, gens: &[Vec<F>]) -> Subspace<F> {
    let mut ops = left_ops(a);
    ops.extend(right_ops(a));
    closure_under(a.dim, gens, &ops)
}

/// First basis product `e_i j` leaving `j`, if any.
pub fn left_ideal_witness<F: Field>(a: &Algebra<F>, j: &Subspace<F>) -> Option<String> {
    for (k, v) in j.vectors().iter().enumerate() {
        for i in 0..a.dim {
            if !j.contains(&a.mul(&a.basis_vec(i), v)) {
                return Some(format!("e{i} * j{k} leaves the subspace"));
            }
        }
    }
    None
}

pub fn right_ideal_witness<F: Field>(a: &Algebra<F>, j: &Subspace<F>) -> Option<String> {
    for (k, v) in j.vectors().iter().enumerate() {
        for i in 0..a.dim {
            if !j.contains(&a.mul(v, &a.basis_vec(i))) {
                return Some(format!("j{k} * e{i} leaves the subspace"));
            }
        }
    }
    None
}

/// Witness that `s` is not a unital subalgebra, if any.
pub fn subalgebra_witness<F: Field>(a: &Algebra<F>, s: &Subspace<F>) -> Option<String> {
    if !s.contains(&a.unit) {
        return Some("unit not contained".into());
    }
    let vs = s.vectors();
    for (i, x) in vs.iter().enumerate() {
        for (j, y) in vs.iter().enumerate() {
            if !s.contains(&a.mul(x, y)) {
                return Some(format!("s{i} * s{j} leaves the subspace"));
            }
        }
    }
    None
}

/// `{x : j x ⊆ j}` for a left ideal `j`.
pub fn idealizer<F: Field>(a: &Algebra<F>, j: &Subspace<F>) -> Result<Subspace<F>, FinalgError> {
    if let Some(w) = left_ideal_witness(a, j) {
        return Err(FinalgError::NotLeftIdeal(w));
    }
    let q = quotient(j);
    let mut stacked = Mat::zeros(0, a.dim);
    for v in j.vectors() {
        stacked = stacked.vstack(&q.project_mat(&a.left_mat(&v)));
    }
    Ok(Subspace::from_rows_mat(&kernel(&stacked)))
}

/// Quotient algebra together with the quotient data on `a`.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra<F> {
    pub alg: AlgRef<F>,
    pub quot: Quotient<F>,
}

pub fn quotient_algebra<F: Field>(a: &Algebra<F>, i: &Subspace<F>) -> Result<QuotientAlgebra<F>, FinalgError> {
    if let Some(w) = left_ideal_witness(a, i).or_else(|| right_ideal_witness(a, i)) {
        return Err(FinalgError::NotTwoSided(w));
    }
    Ok(quotient_algebra_unchecked(a, i, format!("{}/I", a.label)))
}

/// Induced constants on the canonical complement; the caller vouches for `i`.
pub fn quotient_algebra_unchecked<F: Field>(a: &Algebra<F>, i: &Subspace<F>, label: String) -> QuotientAlgebra<F> {
    let q = quotient(i);
    let reps: Vec<Vec<F>> = (0..q.dim()).map(|r| q.sect.col(r)).collect();
    let alg = Algebra::from_fn(q.dim(), q.project(&a.unit), label, |r, s| q.project(&a.mul(&reps[r], &reps[s])));
    QuotientAlgebra { alg: alg.into_ref(), quot: q }
}

/// Subalgebra with its own basis (the echelon basis of `s`).
#[derive(Clone, Debug)]
pub struct SubAlgebra<F> {
    pub alg: AlgRef<F>,
    pub sub: Subspace<F>,
}

impl<F: Field> SubAlgebra<F> {
    /// Columns are the basis vectors inside the ambient algebra.
    pub fn inclusion(&self) -> Mat<F> {
        self.sub.inclusion()
    }
}

pub fn sub_algebra<F: Field>(a: &Algebra<F>, s: &Subspace<F>, label: impl Into<String>) -> Result<SubAlgebra<F>, FinalgError> {
    if let Some(w) = subalgebra_witness(a, s) {
        return Err(FinalgError::NotSubalgebra(w));
    }
    let vs = s.vectors();
    let unit = s.coords(&a.unit).expect("unit inside");
    let alg = Algebra::from_fn(s.dim(), unit, label, |i, j| s.coords(&a.mul(&vs[i], &vs[j])).expect("closed"));
    Ok(SubAlgebra { alg: alg.into_ref(), sub: s.clone() })
}

/// `Mat_n(a)`, basis `E_pq ⊗ e_i` at index `(p n + q) dim + i`.
pub fn matrix_algebra<F: Field>(a: &Algebra<F>, n: usize) -> Algebra<F> {
    assert!(n >= 1);
    let d = a.dim;
    let dim = n * n * d;
    let mut unit = vec![F::zero(); dim];
    for p in 0..n {
        for i in 0..d {
            unit[(p * n + p) * d + i] = a.unit[i].clone();
        }
    }
    let label = if n == 1 { a.label.clone() } else { format!("Mat{}({})", n, a.label) };
    Algebra::from_fn(dim, unit, label, |x, y| {
        let (pq, i) = (x / d, x % d);
        let (rs, j) = (y / d, y % d);
        let (p, q) = (pq / n, pq % n);
        let (r, s) = (rs / n, rs % n);
        let mut v = vec![F::zero(); dim];
        if q == r {
            for (k, c) in a.basis_mul(i, j).into_iter().enumerate() {
                v[(p * n + s) * d + k] = c;
            }
        }
        v
    })
}

/// Subspace `Mat_n(s)` of `Mat_n(a)` for a subspace `s` of `a`.
pub fn matrix_subspace<F: Field>(s: &Subspace<F>, n: usize) -> Subspace<F> {
    let d = s.ambient;
    let mut vecs = Vec::new();
    for pq in 0..n * n {
        for v in s.vectors() {
            let mut w = vec![F::zero(); n * n * d];
            w[pq * d..(pq + 1) * d].clone_from_slice(&v);
            vecs.push(w);
        }
    }
    Subspace::span(n * n * d, &vecs)
}

/// Direct product `a × b`, basis of `a` first.
pub fn product_algebra<F: Field>(a: &Algebra<F>, b: &Algebra<F>) -> Algebra<F> {
    let (m, n) = (a.dim, b.dim);
    let mut unit = a.unit.clone();
    unit.extend(b.unit.iter().cloned());
    Algebra::from_fn(m + n, unit, format!("{}x{}", a.label, b.label), |i, j| {
        let mut v = vec![F::zero(); m + n];
        if i < m && j < m {
            v[..m].clone_from_slice(&a.basis_mul(i, j));
        } else if i >= m && j >= m {
            v[m..].clone_from_slice(&b.basis_mul(i - m, j - m));
        }
        v
    })
}

/// `a ⊗ b` with basis index `i * b.dim + j`.
pub fn tensor_algebra<F: Field>(a: &Algebra<F>, b: &Algebra<F>) -> Algebra<F> {
    let (m, n) = (a.dim, b.dim);
    let unit = crate::exact_core::linalg::vec_kron(&a.unit, &b.unit);
    Algebra::from_fn(m * n, unit, format!("{}⊗{}", a.label, b.label), |x, y| {
        crate::exact_core::linalg::vec_kron(&a.basis_mul(x / n, y / n), &b.basis_mul(x % n, y % n))
    })
}

/// Basis of all `T` (tgt x src) with `T A_k = B_k T` for every pair.
pub fn intertwiners<F: Field>(pairs: &[(Mat<F>, Mat<F>)], src: usize, tgt: usize) -> Vec<Mat<F>> {
    let unknowns = src * tgt;
    let mut rows: Vec<Vec<F>> = Vec::new();
    for (am, bm) in pairs {
        for t in 0..tgt {
            for s in 0..src {
                let mut row = vec![F::zero(); unknowns];
                for u in 0..src {
                    let c = am.get(u, s);
                    if !c.is_zero() {
                        row[t * src + u] = row[t * src + u].add(c);
                    }
                }
                for u in 0..tgt {
                    let c = bm.get(t, u);
                    if !c.is_zero() {
                        row[u * src + s] = row[u * src + s].sub(c);
                    }
                }
                if !is_zero_vec(&row) {
                    rows.push(row);
                }
            }
        }
    }
    let k = kernel(&Mat::from_rows(&rows, unknowns));
    k.row_vecs().into_iter().map(|v| Mat { rows: tgt, cols: src, data: v }).collect()
}

/// Maps commuting with every matrix in `ops`.
pub fn commutant<F: Field>(ops: &[Mat<F>], dim: usize) -> Vec<Mat<F>> {
    let pairs: Vec<(Mat<F>, Mat<F>)> = ops.iter().map(|m| (m.clone(), m.clone())).collect();
    intertwiners(&pairs, dim, dim)
}

/// Algebra of linear maps commuting with `ops`, product = composition.
#[derive(Clone, Debug)]
pub struct EndAlgebra<F> {
    pub alg: AlgRef<F>,
    /// Flattened maps in echelon form; coordinates of a map are read off here.
    pub space: Subspace<F>,
    pub module_dim: usize,
}

impl<F: Field> EndAlgebra<F> {
    pub fn basis_map(&self, i: usize) -> Mat<F> {
        let n = self.module_dim;
        Mat { rows: n, cols: n, data: self.space.basis.row(i).to_vec() }
    }

    pub fn coords(&self, m: &Mat<F>) -> Option<Vec<F>> {
        self.space.coords(&m.data)
    }
}

pub fn endomorphism_algebra<F: Field>(ops: &[Mat<F>], dim: usize, label: impl Into<String>) -> EndAlgebra<F> {
    let maps = commutant(ops, dim);
    let flat: Vec<Vec<F>> = maps.into_iter().map(|m| m.data).collect();
    let space = Subspace::span(dim * dim, &flat);
    let basis: Vec<Mat<F>> = space.vectors().into_iter().map(|v| Mat { rows: dim, cols: dim, data: v }).collect();
    let unit = space.coords(&Mat::<F>::identity(dim).data).expect("identity commutes");
    let alg = Algebra::from_fn(space.dim(), unit, label, |i, j| {
        space.coords(&basis[i].mul(&basis[j]).data).expect("commutant is closed")
    });
    EndAlgebra { alg: alg.into_ref(), space, module_dim: dim }
}

/// Sum of vectors, convenience for closures.
pub fn sum_vecs<F: Field>(n: usize, vs: impl IntoIterator<Item = Vec<F>>) -> Vec<F> {
    vs.into_iter().fold(vec![F::zero(); n], |acc, v| vec_add(&acc, &v))
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::exact_core::Q;

    fn v(x: &[i64]) -> Vec<Q> {
        x.iter().map(|&a| Q::from_i64(a)).collect()
    }

    #[test]
    fn fixtures_validate() {
        assert!(validate_algebra(&t2::<Q>()).passed());
        assert!(validate_algebra(&m2::<Q>()).passed());
        let bad = Algebra::<Q>::from_fn(2, v(&[1, 0]), "zero", |_, _| v(&[0, 0]));
        let r = validate_algebra(&bad);
        assert!(!r.passed());
        assert!(r.failures().any(|c| c.name.contains("unit")));
    }

    #[test]
    fn closure_examples() {
        let m = m2::<Q>();
        assert_eq!(subalgebra_closure(&m, &[]), Subspace::span(4, std::slice::from_ref(&m.unit)));
        assert_eq!(subalgebra_closure(&m, &[v(&[1, 0, 0, 0])]).dim(), 2);
        assert_eq!(subalgebra_closure(&m, &[v(&[0, 1, 0, 0]), v(&[0, 0, 1, 0])]).dim(), 4);
    }

    #[test]
    fn ideal_examples() {
        let m = m2::<Q>();
        assert_eq!(left_ideal_generated(&m, &[v(&[1, 0, 0, 0])]), j_col());
        assert_eq!(left_ideal_generated(&m, &[]).dim(), 0);
        let t = t2::<Q>();
        assert_eq!(left_ideal_generated(&t, &[v(&[0, 1, 0])]), Subspace::span(3, &[v(&[0, 1, 0])]));
    }

    #[test]
    fn idealizer_examples() {
        let m = m2::<Q>();
        let lower = Subspace::span(4, &[v(&[1, 0, 0, 0]), v(&[0, 0, 1, 0]), v(&[0, 0, 0, 1])]);
        assert_eq!(idealizer(&m, &j_col()).unwrap(), lower);
        assert_eq!(idealizer(&m, &Subspace::zero(4)).unwrap(), Subspace::full(4));
        let t = t2::<Q>();
        assert_eq!(idealizer(&t, &Subspace::span(3, &[v(&[0, 1, 0])])).unwrap(), Subspace::full(3));
        let right_only = Subspace::span(4, &[v(&[1, 0, 0, 0]), v(&[0, 1, 0, 0])]);
        assert!(idealizer(&m, &right_only).is_err());
    }

    #[test]
    fn quotient_examples() {
        let t = t2::<Q>();
        let q = quotient_algebra(&t, &Subspace::span(3, &[v(&[0, 1, 0])])).unwrap();
        assert_eq!(q.alg.dim, 2);
        assert!(validate_algebra(&q.alg).passed());
        // coset multiplication: classes of E11 and E22 are orthogonal idempotents
        let e11 = q.quot.project(&v(&[1, 0, 0]));
        let e22 = q.quot.project(&v(&[0, 0, 1]));
        assert_eq!(q.alg.mul(&e11, &e11), e11);
        assert_eq!(q.alg.mul(&e11, &e22), v(&[0, 0]));
        let z = quotient_algebra(&t, &Subspace::zero(3)).unwrap();
        assert_eq!(*z.alg, t);
        let m = m2::<Q>();
        let lower = sub_algebra(&m, &idealizer(&m, &j_col()).unwrap(), "lower").unwrap();
        let jin = Subspace::span(3, &j_col::<Q>().vectors().iter().map(|x| lower.sub.coords(x).unwrap()).collect::<Vec<_>>());
        let r = quotient_algebra(&lower.alg, &jin).unwrap();
        assert_eq!(r.alg.dim, 1);
        assert!(quotient_algebra(&m, &j_col()).is_err());
    }

    #[test]
    fn matrix_algebra_examples() {
        let k = field::<Q>();
        let m = matrix_algebra(&k, 2);
        assert_eq!(m, m2());
        assert_eq!(matrix_algebra(&t2::<Q>(), 1), t2());
        let big = matrix_algebra(&t2::<Q>(), 2);
        assert_eq!(big.dim, 12);
        assert!(validate_algebra(&big).passed());
        // scalar identity times the unit is central
        let u = big.unit.clone();
        for i in 0..big.dim {
            let e = big.basis_vec(i);
            assert_eq!(big.mul(&u, &e), big.mul(&e, &u));
        }
    }

    #[test]
    fn endomorphism_examples() {
        let k = field::<Q>();
        let e = endomorphism_algebra(&[Mat::<Q>::identity(2)], 2, "End");
        assert_eq!(e.alg.dim, 4);
        let t = t2::<Q>();
        let ract: Vec<Mat<Q>> = (0..3).map(|j| t.right_mat(&t.basis_vec(j))).collect();
        assert_eq!(endomorphism_algebra(&ract, 3, "End").alg.dim, 3);
        assert_eq!(endomorphism_algebra::<Q>(&[], 0, "End").alg.dim, 0);
        let _ = k;
    }

    #[test]
    fn morphism_examples() {
        let t: AlgRef<Q> = t2::<Q>().into_ref();
        assert!(validate_morphism(&AlgMorphism::identity(&t)).passed());
        let q = quotient_algebra(&t, &Subspace::span(3, &[v(&[0, 1, 0])])).unwrap();
        let p = AlgMorphism { source: t.clone(), target: q.alg.clone(), matrix: q.quot.proj.clone() };
        assert!(validate_morphism(&p).passed());
        let kill = AlgMorphism { source: t.clone(), target: t.clone(), matrix: Mat::from_i64(3, 3, &[0, 0, 0, 0, 1, 0, 0, 0, 1]) };
        let r = validate_morphism(&kill);
        assert!(r.failures().any(|c| c.name == "unital"));
    }

    #[test]
    fn generators_generate() {
        let a = matrix_algebra(&m2::<Q>(), 2);
        let g = a.generators().to_vec();
        assert!(g.len() < a.dim);
        assert_eq!(subalgebra_closure(&a, &g).dim(), a.dim);
    }
}

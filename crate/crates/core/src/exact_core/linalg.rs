//! Dense matrices, row reduction, linear solving and subspaces.

use thiserror::Error;

use super::scalar::Field;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    Dim(String),
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Mat<F> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<F>,
}

impl<F: Field> Mat<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = F::one();
        }
        m
    }

    /// Builds from rows; `cols` is needed when there are no rows.
    pub fn from_rows(rows: &[Vec<F>], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().cloned());
        }
        Mat { rows: rows.len(), cols, data }
    }

    /// Builds from columns; `rows` is needed when there are no columns.
    pub fn from_cols(cols: &[Vec<F>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged columns");
            for (i, v) in c.iter().enumerate() {
                m.data[i * m.cols + j] = v.clone();
            }
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, vals: &[i64]) -> Self {
        assert_eq!(vals.len(), rows * cols);
        Mat { rows, cols, data: vals.iter().map(|&v| F::from_i64(v)).collect() }
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col_vecs(&self) -> Vec<Vec<F>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "matrix product shape {}x{} * {}x{}", self.rows, self.cols, o.rows, o.cols);
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.data[i * o.cols + j].add_mul(a, b);
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        let mut out = vec![F::zero(); self.rows];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                o.add_mul(self.get(i, j), x);
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, s: &F) -> Self {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.mul(s)).collect() }
    }

    /// Kronecker product; index of `(i, k)` is `i * other.rows + k`.
    pub fn kron(&self, o: &Self) -> Self {
        let mut out = Self::zeros(self.rows * o.rows, self.cols * o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        let b = o.get(k, l);
                        if !b.is_zero() {
                            out.set(i * o.rows + k, j * o.cols + l, a.mul(b));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn hstack(&self, o: &Self) -> Self {
        assert_eq!(self.rows, o.rows);
        let mut out = Self::zeros(self.rows, self.cols + o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..o.cols {
                out.set(i, self.cols + j, o.get(i, j).clone());
            }
        }
        out
    }

    pub fn vstack(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Mat { rows: self.rows + o.rows, cols: self.cols, data }
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Self::identity(n));
        let (r, piv) = rref(&aug);
        if n == 0 {
            return Some(Self::zeros(0, 0));
        }
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Entries rendered as exact strings, row by row.
    pub fn render(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|x| x.render()).collect()).collect()
    }
}

pub fn unit_vec<F: Field>(n: usize, i: usize) -> Vec<F> {
    let mut v = vec![F::zero(); n];
    v[i] = F::one();
    v
}

pub fn is_zero_vec<F: Field>(v: &[F]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn vec_add<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

pub fn vec_sub<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

pub fn vec_scale<F: Field>(a: &[F], s: &F) -> Vec<F> {
    a.iter().map(|x| x.mul(s)).collect()
}

/// Tensor of two coordinate vectors, index `p * b.len() + q`.
pub fn vec_kron<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x.mul(y));
        }
    }
    out
}

/// Row reduction in place; returns pivot columns. Zero rows end up at the bottom.
fn rref_in_place<F: Field>(m: &mut Mat<F>) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m.data[i * cols + c].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                m.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = m.data[r * cols + c].inv().expect("nonzero pivot");
        for j in c..cols {
            let v = m.data[r * cols + j].mul(&inv);
            m.data[r * cols + j] = v;
        }
        let pivot_row: Vec<F> = m.data[r * cols + c..(r + 1) * cols].to_vec();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = m.data[i * cols + c].clone();
            if f.is_zero() {
                continue;
            }
            for (off, pv) in pivot_row.iter().enumerate() {
                if pv.is_zero() {
                    continue;
                }
                let idx = i * cols + c + off;
                m.data[idx] = m.data[idx].sub(&f.mul(pv));
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Reduced row echelon form with zero rows removed, plus pivot columns.
pub fn rref<F: Field>(m: &Mat<F>) -> (Mat<F>, Vec<usize>) {
    let mut w = m.clone();
    let piv = rref_in_place(&mut w);
    w.data.truncate(piv.len() * w.cols);
    w.rows = piv.len();
    (w, piv)
}

/// Basis of the null space `{x : a x = 0}`, as rows in reduced echelon form.
pub fn kernel<F: Field>(a: &Mat<F>) -> Mat<F> {
    let (r, piv) = rref(a);
    let n = a.cols;
    let free: Vec<usize> = (0..n).filter(|c| !piv.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![F::zero(); n];
        v[f] = F::one();
        for (i, &p) in piv.iter().enumerate() {
            v[p] = r.get(i, f).neg();
        }
        basis.push(v);
    }
    rref(&Mat::from_rows(&basis, n)).0
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution<F> {
    Consistent { particular: Vec<F>, kernel: Mat<F> },
    Inconsistent,
}

/// Solves `a x = b`.
pub fn solve<F: Field>(a: &Mat<F>, b: &[F]) -> Result<Solution<F>, LinalgError> {
    if a.rows != b.len() {
        return Err(LinalgError::Dim(format!("{} rows against rhs of length {}", a.rows, b.len())));
    }
    let n = a.cols;
    let aug = a.hstack(&Mat::from_cols(&[b.to_vec()], a.rows));
    let (r, piv) = rref(&aug);
    if piv.last() == Some(&n) {
        return Ok(Solution::Inconsistent);
    }
    let mut x = vec![F::zero(); n];
    for (i, &p) in piv.iter().enumerate() {
        x[p] = r.get(i, n).clone();
    }
    Ok(Solution::Consistent { particular: x, kernel: kernel(a) })
}

/// Some solution of `a x = b`, if any.
pub fn solve_one<F: Field>(a: &Mat<F>, b: &[F]) -> Option<Vec<F>> {
    match solve(a, b).ok()? {
        Solution::Consistent { particular, .. } => Some(particular),
        Solution::Inconsistent => None,
    }
}

/// Linear subspace of `F^ambient` in canonical reduced echelon form.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Subspace<F> {
    pub ambient: usize,
    pub basis: Mat<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(n: usize) -> Self {
        Subspace { ambient: n, basis: Mat::zeros(0, n), pivots: vec![] }
    }

    pub fn full(n: usize) -> Self {
        Subspace { ambient: n, basis: Mat::identity(n), pivots: (0..n).collect() }
    }

    pub fn span(ambient: usize, vectors: &[Vec<F>]) -> Self {
        let (basis, pivots) = rref(&Mat::from_rows(vectors, ambient));
        Subspace { ambient, basis, pivots }
    }

    /// Span of the columns of `m`.
    pub fn col_span(m: &Mat<F>) -> Self {
        let (basis, pivots) = rref(&m.transpose());
        Subspace { ambient: m.rows, basis, pivots }
    }

    pub fn from_rows_mat(m: &Mat<F>) -> Self {
        let (basis, pivots) = rref(m);
        Subspace { ambient: m.cols, basis, pivots }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn vectors(&self) -> Vec<Vec<F>> {
        self.basis.row_vecs()
    }

    /// `v` minus its projection along the basis; zero on pivot columns.
    pub fn residual(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.ambient, "ambient mismatch");
        let mut r = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let f = r[p].clone();
            if f.is_zero() {
                continue;
            }
            for (j, b) in self.basis.row(i).iter().enumerate() {
                if !b.is_zero() {
                    r[j] = r[j].sub(&f.mul(b));
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[F]) -> bool {
        is_zero_vec(&self.residual(v))
    }

    /// Coordinates in the echelon basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &[F]) -> Option<Vec<F>> {
        if self.contains(v) {
            Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
        } else {
            None
        }
    }

    /// Matrix whose columns are the basis vectors (ambient x dim).
    pub fn inclusion(&self) -> Mat<F> {
        self.basis.transpose()
    }

    pub fn is_subset_of(&self, o: &Self) -> bool {
        self.ambient == o.ambient && self.basis.row_vecs().iter().all(|v| o.contains(v))
    }

    pub fn sum(&self, o: &Self) -> Result<Self, LinalgError> {
        if self.ambient != o.ambient {
            return Err(LinalgError::Dim(format!("ambient {} vs {}", self.ambient, o.ambient)));
        }
        Ok(Self::from_rows_mat(&self.basis.vstack(&o.basis)))
    }

    pub fn intersect(&self, o: &Self) -> Result<Self, LinalgError> {
        if self.ambient != o.ambient {
            return Err(LinalgError::Dim(format!("ambient {} vs {}", self.ambient, o.ambient)));
        }
        let (du, dv) = (self.dim(), o.dim());
        if du == 0 || dv == 0 {
            return Ok(Self::zero(self.ambient));
        }
        // columns u_1..u_du, -v_1..-v_dv; kernel vectors (a, b) give sum a_i u_i in both
        let m = self.basis.transpose().hstack(&o.basis.transpose().scale(&F::one().neg()));
        let k = kernel(&m);
        let vecs: Vec<Vec<F>> = k
            .row_vecs()
            .iter()
            .map(|kv| self.basis.transpose().apply(&kv[..du]))
            .collect();
        Ok(Self::span(self.ambient, &vecs))
    }

    /// Image under `m` (which maps the ambient space).
    pub fn image(&self, m: &Mat<F>) -> Self {
        assert_eq!(m.cols, self.ambient);
        let vecs: Vec<Vec<F>> = self.basis.row_vecs().iter().map(|v| m.apply(v)).collect();
        Self::span(m.rows, &vecs)
    }

    /// `{x : m x in self}`.
    pub fn preimage(&self, m: &Mat<F>) -> Self {
        assert_eq!(m.rows, self.ambient);
        let q = quotient(self);
        Self::from_rows_mat(&kernel(&q.proj.mul(m)))
    }
}

/// Quotient by a subspace, realized on the non-pivot coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient<F> {
    pub sub: Subspace<F>,
    /// (ambient - dim) x ambient, kernel = `sub`.
    pub proj: Mat<F>,
    /// ambient x (ambient - dim), right inverse of `proj`.
    pub sect: Mat<F>,
}

impl<F: Field> Quotient<F> {
    pub fn dim(&self) -> usize {
        self.proj.rows
    }

    pub fn ambient(&self) -> usize {
        self.proj.cols
    }

    /// Coordinates of the class of `v`.
    pub fn project(&self, v: &[F]) -> Vec<F> {
        let r = self.sub.residual(v);
        self.free().into_iter().map(|c| r[c].clone()).collect()
    }

    /// The chosen representative of a class.
    pub fn lift(&self, w: &[F]) -> Vec<F> {
        let mut v = vec![F::zero(); self.ambient()];
        for (x, c) in w.iter().zip(self.free()) {
            v[c] = x.clone();
        }
        v
    }

    /// Non-pivot coordinates, i.e. the complement basis.
    pub fn free(&self) -> Vec<usize> {
        (0..self.ambient()).filter(|c| !self.sub.pivots.contains(c)).collect()
    }

    /// `proj * m` computed column by column.
    pub fn project_mat(&self, m: &Mat<F>) -> Mat<F> {
        let cols: Vec<Vec<F>> = m.col_vecs().iter().map(|c| self.project(c)).collect();
        Mat::from_cols(&cols, self.dim())
    }
}

pub fn quotient<F: Field>(u: &Subspace<F>) -> Quotient<F> {
    let n = u.ambient;
    let free: Vec<usize> = (0..n).filter(|c| !u.pivots.contains(c)).collect();
    let mut proj = Mat::zeros(free.len(), n);
    let mut sect = Mat::zeros(n, free.len());
    for (r, &c) in free.iter().enumerate() {
        proj.set(r, c, F::one());
        for (i, &p) in u.pivots.iter().enumerate() {
            let b = u.basis.get(i, c);
            if !b.is_zero() {
                proj.set(r, p, b.neg());
            }
        }
        sect.set(c, r, F::one());
    }
    Quotient { sub: u.clone(), proj, sect }
}

/// Map between quotients induced by `m`; `None` if `m` does not carry the
/// source subspace into the target subspace.
pub fn induced_map<F: Field>(src: &Quotient<F>, m: &Mat<F>, tgt: &Quotient<F>) -> Option<Mat<F>> {
    let pm = tgt.proj.mul(m);
    for v in src.sub.vectors() {
        if !is_zero_vec(&pm.apply(&v)) {
            return None;
        }
    }
    Some(pm.mul(&src.sect))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::scalar::Q;

    fn m(r: usize, c: usize, v: &[i64]) -> Mat<Q> {
        Mat::from_i64(r, c, v)
    }
    fn v(x: &[i64]) -> Vec<Q> {
        x.iter().map(|&a| Q::from_i64(a)).collect()
    }

    #[test]
    fn rref_examples() {
        let (r, p) = rref(&m(2, 2, &[0, 0, 0, 0]));
        assert_eq!(r.rows, 0);
        assert!(p.is_empty());
        let (r, p) = rref(&Mat::<Q>::identity(3));
        assert_eq!(r, Mat::identity(3));
        assert_eq!(p, vec![0, 1, 2]);
        let (r, p) = rref(&m(2, 2, &[2, 4, 1, 2]));
        assert_eq!(r, m(1, 2, &[1, 2]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn solve_examples() {
        match solve(&Mat::<Q>::identity(3), &v(&[4, 5, 6])).unwrap() {
            Solution::Consistent { particular, kernel } => {
                assert_eq!(particular, v(&[4, 5, 6]));
                assert_eq!(kernel.rows, 0);
            }
            _ => panic!(),
        }
        match solve(&m(1, 2, &[1, 1]), &v(&[2])).unwrap() {
            Solution::Consistent { particular, kernel } => {
                assert_eq!(particular, v(&[2, 0]));
                assert_eq!(kernel, m(1, 2, &[1, -1]));
            }
            _ => panic!(),
        }
        assert_eq!(solve(&m(2, 1, &[1, 1]), &v(&[0, 1])).unwrap(), Solution::Inconsistent);
        assert!(solve(&m(2, 1, &[1, 1]), &v(&[0])).is_err());
    }

    #[test]
    fn subspace_examples() {
        let u = Subspace::span(3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let w = Subspace::span(3, &[v(&[0, 1, 0]), v(&[0, 0, 1])]);
        assert_eq!(u.intersect(&w).unwrap(), Subspace::span(3, &[v(&[0, 1, 0])]));
        assert_eq!(u.sum(&Subspace::zero(3)).unwrap(), u);
        let d = Subspace::span(2, &[v(&[1, 1])]);
        assert!(!d.contains(&v(&[1, 0])));
        assert!(u.sum(&Subspace::zero(2)).is_err());
    }

    #[test]
    fn quotient_examples() {
        let q = quotient(&Subspace::<Q>::zero(2));
        assert_eq!(q.proj, Mat::identity(2));
        assert_eq!(q.sect, Mat::identity(2));
        let q = quotient(&Subspace::span(2, &[v(&[1, 0])]));
        assert_eq!(q.proj, m(1, 2, &[0, 1]));
        assert_eq!(q.sect, m(2, 1, &[0, 1]));
        let q = quotient(&Subspace::<Q>::full(3));
        assert_eq!((q.proj.rows, q.proj.cols), (0, 3));
    }

    #[test]
    fn inverse_and_kron() {
        let a = m(2, 2, &[1, 2, 3, 4]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Mat::identity(2));
        assert!(m(2, 2, &[1, 2, 2, 4]).inverse().is_none());
        let k = Mat::<Q>::identity(2).kron(&a);
        assert_eq!(k.get(2, 3), &Q::from_i64(2));
    }

    #[test]
    fn preimage_and_image() {
        let a = m(2, 2, &[0, 1, 0, 0]);
        let s = Subspace::span(2, &[v(&[1, 0])]);
        assert_eq!(s.preimage(&a), Subspace::full(2));
        assert_eq!(Subspace::<Q>::full(2).image(&a), s);
    }
}

//! Plain bimodules over finite-dimensional algebras and their balanced tensor products.

use super::{intertwiners, AlgRef, FinalgError};
use crate::exact_core::linalg::is_zero_vec;
use crate::exact_core::{quotient, Field, Mat, Quotient, Subspace};
use crate::report::Report;

/// A `(left, right)`-bimodule given by action matrices on basis elements.
#[derive(Clone, Debug)]
pub struct PlainBimodule<F> {
    pub left: AlgRef<F>,
    pub right: AlgRef<F>,
    pub dim: usize,
    /// `lact[i]` is `x -> e_i x`.
    pub lact: Vec<Mat<F>>,
    /// `ract[j]` is `x -> x e_j`.
    pub ract: Vec<Mat<F>>,
}

fn combo<F: Field>(mats: &[Mat<F>], coeffs: &[F], dim: usize) -> Mat<F> {
    let mut out = Mat::zeros(dim, dim);
    for (m, c) in mats.iter().zip(coeffs) {
        if !c.is_zero() {
            out = out.add(&m.scale(c));
        }
    }
    out
}

pub(crate) fn same_algebra<F: Field>(a: &AlgRef<F>, b: &AlgRef<F>) -> bool {
    std::sync::Arc::ptr_eq(a, b) || **a == **b
}

impl<F: Field> PlainBimodule<F> {
    /// The algebra as a bimodule over itself.
    pub fn regular(a: &AlgRef<F>) -> Self {
        let lact = (0..a.dim).map(|i| a.left_mat(&a.basis_vec(i))).collect();
        let ract = (0..a.dim).map(|j| a.right_mat(&a.basis_vec(j))).collect();
        PlainBimodule { left: a.clone(), right: a.clone(), dim: a.dim, lact, ract }
    }

    pub fn zero(left: &AlgRef<F>, right: &AlgRef<F>) -> Self {
        PlainBimodule {
            left: left.clone(),
            right: right.clone(),
            dim: 0,
            lact: vec![Mat::zeros(0, 0); left.dim],
            ract: vec![Mat::zeros(0, 0); right.dim],
        }
    }

    pub fn lact_of(&self, b: &[F]) -> Mat<F> {
        combo(&self.lact, b, self.dim)
    }

    pub fn ract_of(&self, a: &[F]) -> Mat<F> {
        combo(&self.ract, a, self.dim)
    }

    /// Pulls the actions back along algebra maps into `left` and `right`.
    pub fn twist(&self, left: &AlgRef<F>, lmap: &Mat<F>, right: &AlgRef<F>, rmap: &Mat<F>) -> Self {
        PlainBimodule {
            left: left.clone(),
            right: right.clone(),
            dim: self.dim,
            lact: (0..left.dim).map(|i| self.lact_of(&lmap.col(i))).collect(),
            ract: (0..right.dim).map(|j| self.ract_of(&rmap.col(j))).collect(),
        }
    }

    /// Unital representation laws on both sides and commuting actions.
    pub fn validate(&self) -> Report {
        let mut r = Report::new();
        let (b, a) = (&self.left, &self.right);
        let shapes = self.lact.len() == b.dim
            && self.ract.len() == a.dim
            && self.lact.iter().chain(&self.ract).all(|m| m.rows == self.dim && m.cols == self.dim);
        if !r.check("shapes", shapes, || "action matrices have wrong shapes".into()) {
            return r;
        }
        let id = Mat::identity(self.dim);
        r.check("left unital", self.lact_of(&b.unit) == id, || "1 x != x".into());
        r.check("right unital", self.ract_of(&a.unit) == id, || "x 1 != x".into());
        let mut bad = None;
        'l: for i in 0..b.dim {
            for j in 0..b.dim {
                if self.lact[i].mul(&self.lact[j]) != self.lact_of(&b.basis_mul(i, j)) {
                    bad = Some(format!("(e{i} e{j}) x != e{i} (e{j} x)"));
                    break 'l;
                }
            }
        }
        r.check("left associative", bad.is_none(), || bad.clone().unwrap_or_default());
        let mut bad = None;
        'r: for i in 0..a.dim {
            for j in 0..a.dim {
                if self.ract[j].mul(&self.ract[i]) != self.ract_of(&a.basis_mul(i, j)) {
                    bad = Some(format!("x (e{i} e{j}) != (x e{i}) e{j}"));
                    break 'r;
                }
            }
        }
        r.check("right associative", bad.is_none(), || bad.clone().unwrap_or_default());
        let mut bad = None;
        'c: for i in 0..b.dim {
            for j in 0..a.dim {
                if self.lact[i].mul(&self.ract[j]) != self.ract[j].mul(&self.lact[i]) {
                    bad = Some(format!("e{i} (x e{j}) != (e{i} x) e{j}"));
                    break 'c;
                }
            }
        }
        r.check("actions commute", bad.is_none(), || bad.clone().unwrap_or_default());
        r
    }

    fn generator_ops(&self) -> Vec<Mat<F>> {
        let mut ops: Vec<Mat<F>> = self.left.generators().iter().map(|g| self.lact_of(g)).collect();
        ops.extend(self.right.generators().iter().map(|g| self.ract_of(g)));
        ops
    }

    /// Smallest sub-bimodule containing `vecs`.
    pub fn sub_bimodule_closure(&self, vecs: &[Vec<F>]) -> Subspace<F> {
        let ops = self.generator_ops();
        let mut s = Subspace::span(self.dim, vecs);
        loop {
            let mut more = s.vectors();
            for x in s.vectors() {
                for op in &ops {
                    more.push(op.apply(&x));
                }
            }
            let next = Subspace::span(self.dim, &more);
            if next.dim() == s.dim() {
                return s;
            }
            s = next;
        }
    }

    pub fn sub_bimodule_witness(&self, s: &Subspace<F>) -> Option<String> {
        for (k, x) in s.vectors().iter().enumerate() {
            for (i, m) in self.lact.iter().enumerate() {
                if !s.contains(&m.apply(x)) {
                    return Some(format!("e{i} s{k} leaves the subspace"));
                }
            }
            for (j, m) in self.ract.iter().enumerate() {
                if !s.contains(&m.apply(x)) {
                    return Some(format!("s{k} e{j} leaves the subspace"));
                }
            }
        }
        None
    }

    /// Actions induced on a quotient, with representatives of new algebra
    /// basis elements given as columns of `left_lift` / `right_lift`.
    pub fn descend(&self, q: &Quotient<F>, left: &AlgRef<F>, left_lift: &Mat<F>, right: &AlgRef<F>, right_lift: &Mat<F>) -> Self {
        let act = |m: Mat<F>| q.project_mat(&m.mul(&q.sect));
        PlainBimodule {
            left: left.clone(),
            right: right.clone(),
            dim: q.dim(),
            lact: (0..left.dim).map(|i| act(self.lact_of(&left_lift.col(i)))).collect(),
            ract: (0..right.dim).map(|j| act(self.ract_of(&right_lift.col(j)))).collect(),
        }
    }

    /// Quotient by a sub-bimodule over the same algebras.
    pub fn quotient_by(&self, s: &Subspace<F>) -> (Self, Quotient<F>) {
        let q = quotient(s);
        let m = self.descend(&q, &self.left.clone(), &Mat::identity(self.left.dim), &self.right.clone(), &Mat::identity(self.right.dim));
        (m, q)
    }

    /// Restriction to an invariant subspace, basis = echelon basis of `s`.
    pub fn restrict_to(&self, s: &Subspace<F>) -> Self {
        let incl = s.inclusion();
        let act = |m: &Mat<F>| {
            let cols: Vec<Vec<F>> = m.mul(&incl).col_vecs().iter().map(|c| s.coords(c).expect("invariant")).collect();
            Mat::from_cols(&cols, s.dim())
        };
        PlainBimodule {
            left: self.left.clone(),
            right: self.right.clone(),
            dim: s.dim(),
            lact: self.lact.iter().map(act).collect(),
            ract: self.ract.iter().map(act).collect(),
        }
    }

    /// Restriction to a subspace invariant under subalgebras, given by their inclusion matrices.
    pub fn restrict_over(&self, s: &Subspace<F>, left: &AlgRef<F>, left_incl: &Mat<F>, right: &AlgRef<F>, right_incl: &Mat<F>) -> Self {
        let incl = s.inclusion();
        let act = |m: Mat<F>| {
            let cols: Vec<Vec<F>> = m.mul(&incl).col_vecs().iter().map(|c| s.coords(c).expect("invariant")).collect();
            Mat::from_cols(&cols, s.dim())
        };
        PlainBimodule {
            left: left.clone(),
            right: right.clone(),
            dim: s.dim(),
            lact: (0..left.dim).map(|i| act(self.lact_of(&left_incl.col(i)))).collect(),
            ract: (0..right.dim).map(|j| act(self.ract_of(&right_incl.col(j)))).collect(),
        }
    }

    /// Is `m` a bimodule map into `o` (same algebras)?
    pub fn is_hom_to(&self, o: &Self, m: &Mat<F>) -> bool {
        m.rows == o.dim
            && m.cols == self.dim
            && self.lact.iter().zip(&o.lact).all(|(a, b)| m.mul(a) == b.mul(m))
            && self.ract.iter().zip(&o.ract).all(|(a, b)| m.mul(a) == b.mul(m))
    }

    /// Basis of the bimodule maps into `o`.
    pub fn hom_space(&self, o: &Self) -> Vec<Mat<F>> {
        let mut pairs = Vec::new();
        for g in self.left.generators() {
            pairs.push((self.lact_of(g), o.lact_of(g)));
        }
        for g in self.right.generators() {
            pairs.push((self.ract_of(g), o.ract_of(g)));
        }
        intertwiners(&pairs, self.dim, o.dim)
    }

    /// Right-module endomorphisms (commutant of the right action).
    pub fn right_endomorphisms(&self) -> Vec<Mat<F>> {
        let pairs: Vec<_> = self.right.generators().iter().map(|g| (self.ract_of(g), self.ract_of(g))).collect();
        intertwiners(&pairs, self.dim, self.dim)
    }

    /// Left-module endomorphisms (commutant of the left action).
    pub fn left_endomorphisms(&self) -> Vec<Mat<F>> {
        let pairs: Vec<_> = self.left.generators().iter().map(|g| (self.lact_of(g), self.lact_of(g))).collect();
        intertwiners(&pairs, self.dim, self.dim)
    }
}

/// `(A ⊗ B) v` with `v` indexed `p * B.cols + q`.
pub fn kron_apply<F: Field>(a: &Mat<F>, b: &Mat<F>, v: &[F]) -> Vec<F> {
    assert_eq!(v.len(), a.cols * b.cols);
    let vm = Mat { rows: a.cols, cols: b.cols, data: v.to_vec() };
    a.mul(&vm).mul(&b.transpose()).data
}

/// `F ⊗_B E` as a quotient of the plain tensor space.
#[derive(Clone, Debug)]
pub struct Tensor<F> {
    pub module: PlainBimodule<F>,
    pub quot: Quotient<F>,
    pub fdim: usize,
    pub edim: usize,
}

impl<F: Field> Tensor<F> {
    pub fn dim(&self) -> usize {
        self.module.dim
    }

    /// Class of `y ⊗ x`.
    pub fn class_of(&self, y: &[F], x: &[F]) -> Vec<F> {
        self.quot.project(&crate::exact_core::linalg::vec_kron(y, x))
    }
}

/// Span of `y b ⊗ x - y ⊗ b x` over generators `b` of the middle algebra.
pub fn balancing_relations<F: Field>(f: &PlainBimodule<F>, e: &PlainBimodule<F>) -> Subspace<F> {
    let (fd, ed) = (f.dim, e.dim);
    let mut rows = Vec::new();
    for g in f.right.generators() {
        let rf = f.ract_of(g);
        let le = e.lact_of(g);
        for p in 0..fd {
            for q in 0..ed {
                let mut v = vec![F::zero(); fd * ed];
                for p2 in 0..fd {
                    let c = rf.get(p2, p);
                    if !c.is_zero() {
                        v[p2 * ed + q] = v[p2 * ed + q].add(c);
                    }
                }
                for q2 in 0..ed {
                    let c = le.get(q2, q);
                    if !c.is_zero() {
                        v[p * ed + q2] = v[p * ed + q2].sub(c);
                    }
                }
                if !is_zero_vec(&v) {
                    rows.push(v);
                }
            }
        }
    }
    Subspace::span(fd * ed, &rows)
}

pub fn tensor<F: Field>(f: &PlainBimodule<F>, e: &PlainBimodule<F>) -> Result<Tensor<F>, FinalgError> {
    if !same_algebra(&f.right, &e.left) {
        return Err(FinalgError::Shape(format!("middle algebras {} and {} differ", f.right.label, e.left.label)));
    }
    let quot = quotient(&balancing_relations(f, e));
    let (fd, ed) = (f.dim, e.dim);
    let idf = Mat::identity(fd);
    let ide = Mat::identity(ed);
    let act = |a: &Mat<F>, b: &Mat<F>| {
        let cols: Vec<Vec<F>> = quot.sect.col_vecs().iter().map(|s| quot.project(&kron_apply(a, b, s))).collect();
        Mat::from_cols(&cols, quot.dim())
    };
    let lact = f.lact.iter().map(|l| act(l, &ide)).collect();
    let ract = e.ract.iter().map(|r| act(&idf, r)).collect();
    let module = PlainBimodule { left: f.left.clone(), right: e.right.clone(), dim: quot.dim(), lact, ract };
    Ok(Tensor { module, quot, fdim: fd, edim: ed })
}

/// Does `psi ⊗ phi` carry the balancing relations of `src` into those of `tgt`?
pub fn tensor_maps_descend<F: Field>(src: &Tensor<F>, psi: &Mat<F>, phi: &Mat<F>, tgt: &Tensor<F>) -> bool {
    src.quot.sub.vectors().iter().all(|r| is_zero_vec(&tgt.quot.project(&kron_apply(psi, phi, r))))
}

/// `psi ⊗ phi` on the balanced quotients.
pub fn tensor_maps<F: Field>(src: &Tensor<F>, psi: &Mat<F>, phi: &Mat<F>, tgt: &Tensor<F>) -> Mat<F> {
    let cols: Vec<Vec<F>> = src.quot.sect.col_vecs().iter().map(|s| tgt.quot.project(&kron_apply(psi, phi, s))).collect();
    Mat::from_cols(&cols, tgt.dim())
}

/// `(z ⊗ y) ⊗ x -> z ⊗ (y ⊗ x)`.
pub fn associator<F: Field>(t_zy: &Tensor<F>, t_zy_x: &Tensor<F>, t_yx: &Tensor<F>, t_z_yx: &Tensor<F>) -> Mat<F> {
    let idx = Mat::identity(t_zy_x.edim);
    let idz = Mat::identity(t_z_yx.fdim);
    let cols: Vec<Vec<F>> = t_zy_x
        .quot
        .sect
        .col_vecs()
        .iter()
        .map(|s| {
            let w1 = kron_apply(&t_zy.quot.sect, &idx, s);
            let w2 = kron_apply(&idz, &t_yx.quot.proj, &w1);
            t_z_yx.quot.project(&w2)
        })
        .collect();
    Mat::from_cols(&cols, t_z_yx.dim())
}

/// `b ⊗ x -> b x` on `B ⊗_B E`.
pub fn left_unitor<F: Field>(t: &Tensor<F>, e: &PlainBimodule<F>) -> Mat<F> {
    let ed = e.dim;
    let cols: Vec<Vec<F>> = t
        .quot
        .sect
        .col_vecs()
        .iter()
        .map(|s| {
            let mut out = vec![F::zero(); ed];
            for (k, l) in e.lact.iter().enumerate() {
                let slice = &s[k * ed..(k + 1) * ed];
                if !is_zero_vec(slice) {
                    out = crate::exact_core::linalg::vec_add(&out, &l.apply(slice));
                }
            }
            out
        })
        .collect();
    Mat::from_cols(&cols, ed)
}

/// `x ⊗ a -> x a` on `E ⊗_A A`.
pub fn right_unitor<F: Field>(t: &Tensor<F>, e: &PlainBimodule<F>) -> Mat<F> {
    let (ed, ad) = (e.dim, e.right.dim);
    let cols: Vec<Vec<F>> = t
        .quot
        .sect
        .col_vecs()
        .iter()
        .map(|s| {
            let mut out = vec![F::zero(); ed];
            for q in 0..ed {
                for k in 0..ad {
                    let c = &s[q * ad + k];
                    if !c.is_zero() {
                        let col = e.ract[k].col(q);
                        for (o, x) in out.iter_mut().zip(&col) {
                            o.add_mul(c, x);
                        }
                    }
                }
            }
            out
        })
        .collect();
    Mat::from_cols(&cols, ed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::Q;
    use crate::finalg::fixtures::{field, m2, t2};

    #[test]
    fn regular_bimodules_validate() {
        for a in [t2::<Q>(), m2()] {
            assert!(PlainBimodule::regular(&a.into_ref()).validate().passed());
        }
    }

    #[test]
    fn tensor_of_regular_is_regular() {
        let a = t2::<Q>().into_ref();
        let r = PlainBimodule::regular(&a);
        let t = tensor(&r, &r).unwrap();
        assert_eq!(t.dim(), 3);
        assert!(t.module.validate().passed());
        let lu = left_unitor(&t, &r);
        let ru = right_unitor(&t, &r);
        assert!(lu.inverse().is_some());
        assert_eq!(lu, ru);
        assert!(t.module.is_hom_to(&r, &lu));
    }

    #[test]
    fn column_times_row_over_field() {
        // Q^2 as (M2, Q) and as (Q, M2): the tensor over M2 is 1-dimensional, over Q it is 4-dimensional
        let k = field::<Q>().into_ref();
        let m = m2::<Q>().into_ref();
        let col = PlainBimodule {
            left: m.clone(),
            right: k.clone(),
            dim: 2,
            lact: (0..4).map(|x| {
                let mut e = Mat::zeros(2, 2);
                e.set(x / 2, x % 2, Q::from_i64(1));
                e
            }).collect(),
            ract: vec![Mat::identity(2)],
        };
        let row = PlainBimodule {
            left: k.clone(),
            right: m.clone(),
            dim: 2,
            lact: vec![Mat::identity(2)],
            ract: (0..4).map(|x| {
                let mut e = Mat::zeros(2, 2);
                e.set(x % 2, x / 2, Q::from_i64(1));
                e
            }).collect(),
        };
        assert!(col.validate().passed());
        assert!(row.validate().passed());
        assert_eq!(tensor(&col, &row).unwrap().dim(), 4);
        assert_eq!(tensor(&row, &col).unwrap().dim(), 1);
        assert!(tensor(&col, &col).is_err());
    }

    #[test]
    fn associator_on_regular_is_invertible() {
        let a = m2::<Q>().into_ref();
        let r = PlainBimodule::regular(&a);
        let t = tensor(&r, &r).unwrap();
        let tt = tensor(&t.module, &r).unwrap();
        let tt2 = tensor(&r, &t.module).unwrap();
        let asso = associator(&t, &tt, &t, &tt2);
        assert!(asso.inverse().is_some());
        assert!(tt.module.is_hom_to(&tt2.module, &asso));
    }
}

//! Bimodules over coisotropic triples and the tensor bicategory they form.

pub mod embed;
pub mod random;
pub mod reduction;
pub mod tensor;

use crate::coiso::{Triple, TripleRef};
use crate::exact_core::{kernel, quotient, solve_one, Field, Mat, Subspace};
use crate::finalg::bimodule::same_algebra;
use crate::finalg::PlainBimodule;
use crate::report::Report;

pub use embed::{embed_l, embed_mult_iso, project_n, project_tot};
pub use reduction::{
    check_mult_naturality, reduce_2morphism, reduce_bimodule, reduction_composition_coherence, reduction_identity_coherence,
    MultIso, ReducedBimodule,
};
pub use tensor::{
    associator3, left_unitor3, pentagon_check, right_unitor3, tensor3, tensor3_with, tensor_morphism, triangle_check,
    whisker_left, whisker_right, Tensor3, ZeroRule,
};

/// `(E_tot, E_N, E_0, ι)` over `(B, A)`; `ι` need not be injective.
#[derive(Clone, Debug)]
pub struct Bimodule3<F> {
    pub left: TripleRef<F>,
    pub right: TripleRef<F>,
    pub tot: PlainBimodule<F>,
    pub nmod: PlainBimodule<F>,
    /// `E_0` inside `E_N`.
    pub zero: Subspace<F>,
    /// `E_N -> E_tot`.
    pub iota: Mat<F>,
    pub label: String,
}

pub(crate) fn same_triple<F: Field>(a: &TripleRef<F>, b: &TripleRef<F>) -> bool {
    std::sync::Arc::ptr_eq(a, b) || (same_algebra(&a.tot, &b.tot) && a.n_sub == b.n_sub && a.zero == b.zero)
}

impl<F: Field> Bimodule3<F> {
    /// A triple as a bimodule over itself.
    pub fn identity(a: &TripleRef<F>) -> Self {
        Bimodule3 {
            left: a.clone(),
            right: a.clone(),
            tot: PlainBimodule::regular(&a.tot),
            nmod: PlainBimodule::regular(a.n_alg()),
            zero: a.zero_n.clone(),
            iota: a.n_incl(),
            label: format!("Id({})", a.label),
        }
    }

    pub fn zero_bimodule(b: &TripleRef<F>, a: &TripleRef<F>) -> Self {
        Bimodule3 {
            left: b.clone(),
            right: a.clone(),
            tot: PlainBimodule::zero(&b.tot, &a.tot),
            nmod: PlainBimodule::zero(b.n_alg(), a.n_alg()),
            zero: Subspace::zero(0),
            iota: Mat::zeros(0, 0),
            label: "0".into(),
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.tot.dim, self.nmod.dim, self.zero.dim())
    }

    pub fn iota_injective(&self) -> bool {
        self.iota.rank() == self.nmod.dim
    }

    pub fn validate(&self) -> Report {
        validate_bimodule(self)
    }

    /// Coordinates in `E_N` of a vector of `ι(E_N)`; panics outside the image.
    pub fn nmod_coords(&self, v: &[F]) -> Vec<F> {
        solve_one(&self.iota, v).expect("vector lies in the image of ι")
    }
}

/// Every bimodule axiom, itemized.
pub fn validate_bimodule<F: Field>(e: &Bimodule3<F>) -> Report {
    let mut r = Report::new();
    let (b, a) = (&e.left, &e.right);
    let algs = same_algebra(&e.tot.left, &b.tot)
        && same_algebra(&e.tot.right, &a.tot)
        && same_algebra(&e.nmod.left, b.n_alg())
        && same_algebra(&e.nmod.right, a.n_alg());
    if !r.check("component algebras", algs, || "components act through the wrong algebras".into()) {
        return r;
    }
    r.absorb("tot", e.tot.validate());
    r.absorb("N", e.nmod.validate());
    let shapes = e.iota.rows == e.tot.dim && e.iota.cols == e.nmod.dim && e.zero.ambient == e.nmod.dim;
    if !r.check("shapes", shapes, || "iota or zero has the wrong shape".into()) {
        return r;
    }
    let w = e.nmod.sub_bimodule_witness(&e.zero);
    r.check("zero is a sub-bimodule", w.is_none(), || w.clone().unwrap_or_default());
    let en = e.nmod.dim;
    let mut bad = None;
    'b: for (k, z) in b.zero_n.vectors().iter().enumerate() {
        let l = e.nmod.lact_of(z);
        for i in 0..en {
            if !e.zero.contains(&l.col(i)) {
                bad = Some(format!("b0_{k} * x{i} not in E_0"));
                break 'b;
            }
        }
    }
    r.check("B_0 E_N ⊆ E_0", bad.is_none(), || bad.clone().unwrap_or_default());
    let mut bad = None;
    'a: for (k, z) in a.zero_n.vectors().iter().enumerate() {
        let m = e.nmod.ract_of(z);
        for i in 0..en {
            if !e.zero.contains(&m.col(i)) {
                bad = Some(format!("x{i} * a0_{k} not in E_0"));
                break 'a;
            }
        }
    }
    r.check("E_N A_0 ⊆ E_0", bad.is_none(), || bad.clone().unwrap_or_default());
    let (bi, ai) = (b.n_incl(), a.n_incl());
    let mut ok = true;
    for i in 0..b.n_alg().dim {
        ok &= e.iota.mul(&e.nmod.lact[i]) == e.tot.lact_of(&bi.col(i)).mul(&e.iota);
    }
    for j in 0..a.n_alg().dim {
        ok &= e.iota.mul(&e.nmod.ract[j]) == e.tot.ract_of(&ai.col(j)).mul(&e.iota);
    }
    r.check("iota is a bimodule map along the inclusions", ok, || "iota fails to intertwine".into());
    r
}

/// `(Φ_tot, Φ_N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimod3Morphism<F> {
    pub tot: Mat<F>,
    pub n: Mat<F>,
}

impl<F: Field> Bimod3Morphism<F> {
    pub fn identity(e: &Bimodule3<F>) -> Self {
        Bimod3Morphism { tot: Mat::identity(e.tot.dim), n: Mat::identity(e.nmod.dim) }
    }

    pub fn zero(src: &Bimodule3<F>, tgt: &Bimodule3<F>) -> Self {
        Bimod3Morphism { tot: Mat::zeros(tgt.tot.dim, src.tot.dim), n: Mat::zeros(tgt.nmod.dim, src.nmod.dim) }
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &Self) -> Self {
        Bimod3Morphism { tot: self.tot.mul(&first.tot), n: self.n.mul(&first.n) }
    }

    pub fn inverse(&self) -> Option<Self> {
        Some(Bimod3Morphism { tot: self.tot.inverse()?, n: self.n.inverse()? })
    }

    pub fn add(&self, o: &Self) -> Self {
        Bimod3Morphism { tot: self.tot.add(&o.tot), n: self.n.add(&o.n) }
    }

    pub fn scale(&self, s: &F) -> Self {
        Bimod3Morphism { tot: self.tot.scale(s), n: self.n.scale(s) }
    }
}

pub fn validate_bimod_morphism<F: Field>(src: &Bimodule3<F>, tgt: &Bimodule3<F>, f: &Bimod3Morphism<F>) -> Report {
    let mut r = Report::new();
    let shapes = f.tot.rows == tgt.tot.dim && f.tot.cols == src.tot.dim && f.n.rows == tgt.nmod.dim && f.n.cols == src.nmod.dim;
    if !r.check("shapes", shapes, || "component shapes do not match".into()) {
        return r;
    }
    r.check("tot is a bimodule map", src.tot.is_hom_to(&tgt.tot, &f.tot), || "tot component fails".into());
    r.check("N is a bimodule map", src.nmod.is_hom_to(&tgt.nmod, &f.n), || "N component fails".into());
    r.check("commutes with iota", f.tot.mul(&src.iota) == tgt.iota.mul(&f.n), || "Φ_tot ι != ι Φ_N".into());
    let img = src.zero.image(&f.n);
    r.check("preserves zero", img.is_subset_of(&tgt.zero), || "Φ_N(E_0) ⊄ F_0".into());
    r
}

/// Morphism with an inverse morphism (zero components map onto each other).
pub fn check_bimod_iso<F: Field>(src: &Bimodule3<F>, tgt: &Bimodule3<F>, f: &Bimod3Morphism<F>) -> Report {
    let mut r = validate_bimod_morphism(src, tgt, f);
    match f.inverse() {
        Some(inv) => {
            r.check("inverse preserves zero", tgt.zero.image(&inv.n).is_subset_of(&src.zero), || "Φ^{-1}(F_0) ⊄ E_0".into());
        }
        None => r.fail("invertible", format!("ranks {} and {}", f.tot.rank(), f.n.rank())),
    }
    r
}

/// Basis of all morphisms `src -> tgt`.
pub fn bimod3_hom_space<F: Field>(src: &Bimodule3<F>, tgt: &Bimodule3<F>) -> Vec<Bimod3Morphism<F>> {
    let ht = src.tot.hom_space(&tgt.tot);
    let hn = src.nmod.hom_space(&tgt.nmod);
    let q0 = quotient(&tgt.zero);
    let zvecs = src.zero.vectors();
    // column per basis element: flattened (Tι - ι'S, q0 S z)
    let contrib = |t: Option<&Mat<F>>, s: Option<&Mat<F>>| -> Vec<F> {
        let mut out = Vec::new();
        let a = match (t, s) {
            (Some(t), _) => t.mul(&src.iota),
            (_, Some(s)) => tgt.iota.mul(s).scale(&F::one().neg()),
            _ => unreachable!(),
        };
        out.extend(a.data);
        for z in &zvecs {
            match s {
                Some(s) => out.extend(q0.project(&s.apply(z))),
                None => out.extend(vec![F::zero(); q0.dim()]),
            }
        }
        out
    };
    let mut cols: Vec<Vec<F>> = ht.iter().map(|t| contrib(Some(t), None)).collect();
    cols.extend(hn.iter().map(|s| contrib(None, Some(s))));
    let rows = tgt.tot.dim * src.nmod.dim + zvecs.len() * q0.dim();
    let m = Mat::from_cols(&cols, rows);
    let k = kernel(&m);
    k.row_vecs()
        .iter()
        .map(|c| {
            let mut t = Mat::zeros(tgt.tot.dim, src.tot.dim);
            let mut s = Mat::zeros(tgt.nmod.dim, src.nmod.dim);
            for (i, x) in c[..ht.len()].iter().enumerate() {
                if !x.is_zero() {
                    t = t.add(&ht[i].scale(x));
                }
            }
            for (i, x) in c[ht.len()..].iter().enumerate() {
                if !x.is_zero() {
                    s = s.add(&hn[i].scale(x));
                }
            }
            Bimod3Morphism { tot: t, n: s }
        })
        .collect()
}

/// The triple structure is what matters for composability; labels are ignored.
pub fn composable<F: Field>(f: &Bimodule3<F>, e: &Bimodule3<F>) -> bool {
    same_triple(&f.right, &e.left)
}

/// Convenience: a triple wrapped for sharing.
pub fn share<F: Field>(t: Triple<F>) -> TripleRef<F> {
    t.into_ref()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::Q;
    use crate::finalg::fixtures::{j_col, m2, t2};

    fn m2dirac() -> TripleRef<Q> {
        Triple::dirac(&m2::<Q>().into_ref(), &j_col()).unwrap().into_ref()
    }

    #[test]
    fn identity_bimodule_validates() {
        let t = m2dirac();
        let e = Bimodule3::identity(&t);
        assert!(e.validate().passed());
        assert!(e.iota_injective());
    }

    #[test]
    fn shrinking_zero_breaks_validity() {
        let t = m2dirac();
        let mut e = Bimodule3::identity(&t);
        e.zero = Subspace::zero(e.nmod.dim);
        let r = e.validate();
        assert!(r.failures().any(|c| c.name == "B_0 E_N ⊆ E_0"));
    }

    #[test]
    fn zero_morphism_is_valid() {
        let t = m2dirac();
        let e = Bimodule3::identity(&t);
        assert!(validate_bimod_morphism(&e, &e, &Bimod3Morphism::zero(&e, &e)).passed());
        let z = Bimodule3::zero_bimodule(&t, &t);
        assert!(z.validate().passed());
        assert!(validate_bimod_morphism(&z, &e, &Bimod3Morphism::zero(&z, &e)).passed());
    }

    #[test]
    fn hom_space_of_identity_contains_identity() {
        let t = Triple::dirac(&t2::<Q>().into_ref(), &Subspace::span(3, &[vec![Q::from_i64(0), Q::from_i64(1), Q::from_i64(0)]])).unwrap().into_ref();
        let e = Bimodule3::identity(&t);
        let hom = bimod3_hom_space(&e, &e);
        // endomorphisms of the identity bimodule are right multiplications by central elements
        assert!(!hom.is_empty());
        for h in &hom {
            assert!(validate_bimod_morphism(&e, &e, h).passed());
        }
    }
}

//! Tensor products, structure isomorphisms and coherence diagrams.

use super::{composable, Bimod3Morphism, Bimodule3};
use crate::error::{CoisoError, Result};
use crate::exact_core::{Field, Mat, Subspace};
use crate::finalg::bimodule::{associator, left_unitor, right_unitor, tensor, tensor_maps, Tensor};
use crate::exact_core::linalg::unit_vec;
use crate::report::Report;

/// Which summands span the 0-component of a tensor product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroRule {
    /// Image of `F_N ⊗ E_0 + F_0 ⊗ E_N`.
    Full,
    /// Image of `F_N ⊗ E_0` only. Wrong on purpose; used to show the second summand matters.
    OmitF0EN,
}

/// `F ⊗ E` with the plain tensors of both components kept for later maps.
#[derive(Clone, Debug)]
pub struct Tensor3<F> {
    pub module: Bimodule3<F>,
    pub tot: Tensor<F>,
    pub n: Tensor<F>,
}

pub fn tensor3<F: Field>(f: &Bimodule3<F>, e: &Bimodule3<F>) -> Result<Tensor3<F>> {
    tensor3_with(f, e, ZeroRule::Full)
}

pub fn tensor3_with<F: Field>(f: &Bimodule3<F>, e: &Bimodule3<F>, rule: ZeroRule) -> Result<Tensor3<F>> {
    if !composable(f, e) {
        return Err(CoisoError::Shape(format!("{} and {} are not composable", f.label, e.label)));
    }
    let tt = tensor(&f.tot, &e.tot)?;
    let tn = tensor(&f.nmod, &e.nmod)?;
    let (fd, ed) = (f.nmod.dim, e.nmod.dim);
    let mut zvecs = Vec::new();
    for p in 0..fd {
        for z in e.zero.vectors() {
            zvecs.push(tn.class_of(&unit_vec(fd, p), &z));
        }
    }
    if rule == ZeroRule::Full {
        for z in f.zero.vectors() {
            for q in 0..ed {
                zvecs.push(tn.class_of(&z, &unit_vec(ed, q)));
            }
        }
    }
    let zero = Subspace::span(tn.dim(), &zvecs);
    let iota = tensor_maps(&tn, &f.iota, &e.iota, &tt);
    let module = Bimodule3 {
        left: f.left.clone(),
        right: e.right.clone(),
        tot: tt.module.clone(),
        nmod: tn.module.clone(),
        zero,
        iota,
        label: format!("({}⊗{})", f.label, e.label),
    };
    Ok(Tensor3 { module, tot: tt, n: tn })
}

/// `psi ⊗ phi` between two tensor products.
pub fn tensor_morphism<F: Field>(src: &Tensor3<F>, psi: &Bimod3Morphism<F>, phi: &Bimod3Morphism<F>, tgt: &Tensor3<F>) -> Bimod3Morphism<F> {
    Bimod3Morphism { tot: tensor_maps(&src.tot, &psi.tot, &phi.tot, &tgt.tot), n: tensor_maps(&src.n, &psi.n, &phi.n, &tgt.n) }
}

/// `id_h ⊗ phi`.
pub fn whisker_left<F: Field>(h: &Bimodule3<F>, src: &Tensor3<F>, phi: &Bimod3Morphism<F>, tgt: &Tensor3<F>) -> Bimod3Morphism<F> {
    tensor_morphism(src, &Bimod3Morphism::identity(h), phi, tgt)
}

/// `phi ⊗ id_f`.
pub fn whisker_right<F: Field>(src: &Tensor3<F>, phi: &Bimod3Morphism<F>, f: &Bimodule3<F>, tgt: &Tensor3<F>) -> Bimod3Morphism<F> {
    tensor_morphism(src, phi, &Bimod3Morphism::identity(f), tgt)
}

/// `(z ⊗ y) ⊗ x -> z ⊗ (y ⊗ x)` componentwise.
pub fn associator3<F: Field>(zy: &Tensor3<F>, zy_x: &Tensor3<F>, yx: &Tensor3<F>, z_yx: &Tensor3<F>) -> Bimod3Morphism<F> {
    Bimod3Morphism { tot: associator(&zy.tot, &zy_x.tot, &yx.tot, &z_yx.tot), n: associator(&zy.n, &zy_x.n, &yx.n, &z_yx.n) }
}

/// `b ⊗ x -> b x` on `Id_B ⊗ E`.
pub fn left_unitor3<F: Field>(t: &Tensor3<F>, e: &Bimodule3<F>) -> Bimod3Morphism<F> {
    Bimod3Morphism { tot: left_unitor(&t.tot, &e.tot), n: left_unitor(&t.n, &e.nmod) }
}

/// `x ⊗ a -> x a` on `E ⊗ Id_A`.
pub fn right_unitor3<F: Field>(t: &Tensor3<F>, e: &Bimodule3<F>) -> Bimod3Morphism<F> {
    Bimod3Morphism { tot: right_unitor(&t.tot, &e.tot), n: right_unitor(&t.n, &e.nmod) }
}

fn inv<F: Field>(m: &Bimod3Morphism<F>, what: &str) -> Result<Bimod3Morphism<F>> {
    m.inverse().ok_or_else(|| CoisoError::Shape(format!("{what} is not invertible")))
}

/// Both paths `((k⊗h)⊗g)⊗f -> k⊗(h⊗(g⊗f))`, compared exactly.
pub fn pentagon_check<F: Field>(k: &Bimodule3<F>, h: &Bimodule3<F>, g: &Bimodule3<F>, f: &Bimodule3<F>) -> Result<Report> {
    let kh = tensor3(k, h)?;
    let kh_g = tensor3(&kh.module, g)?;
    let kh_g_f = tensor3(&kh_g.module, f)?;
    let gf = tensor3(g, f)?;
    let kh_gf = tensor3(&kh.module, &gf.module)?;
    let h_gf = tensor3(h, &gf.module)?;
    let k_h_gf = tensor3(k, &h_gf.module)?;
    let hg = tensor3(h, g)?;
    let k_hg = tensor3(k, &hg.module)?;
    let k_hg_f = tensor3(&k_hg.module, f)?;
    let hg_f = tensor3(&hg.module, f)?;
    let k_hgf = tensor3(k, &hg_f.module)?;

    // a(k, h, g⊗f) ∘ a(k⊗h, g, f)
    let a1 = associator3(&kh_g, &kh_g_f, &gf, &kh_gf);
    let a2 = associator3(&kh, &kh_gf, &h_gf, &k_h_gf);
    let lhs = a2.compose(&a1);
    // (id_k ⊗ a(h,g,f)) ∘ a(k, h⊗g, f) ∘ (a(k,h,g) ⊗ id_f)
    let akhg = associator3(&kh, &kh_g, &hg, &k_hg);
    let s1 = whisker_right(&kh_g_f, &akhg, f, &k_hg_f);
    let s2 = associator3(&k_hg, &k_hg_f, &hg_f, &k_hgf);
    let ahgf = associator3(&hg, &hg_f, &gf, &h_gf);
    let s3 = whisker_left(k, &k_hgf, &ahgf, &k_h_gf);
    let rhs = s3.compose(&s2).compose(&s1);

    let mut r = Report::new();
    r.check("pentagon tot", lhs.tot == rhs.tot, || "tot paths differ".into());
    r.check("pentagon N", lhs.n == rhs.n, || "N paths differ".into());
    for (name, m) in [("a(k⊗h,g,f)", &a1), ("a(k,h,g⊗f)", &a2), ("a(k,h⊗g,f)", &s2)] {
        r.check(format!("{name} invertible"), inv(m, name).is_ok(), || "singular".into());
    }
    Ok(r)
}

/// `(id_g ⊗ left_f) ∘ a(g, Id, f) = right_g ⊗ id_f` on `(g ⊗ Id) ⊗ f`.
pub fn triangle_check<F: Field>(g: &Bimodule3<F>, f: &Bimodule3<F>) -> Result<Report> {
    let id = Bimodule3::identity(&g.right);
    let g_id = tensor3(g, &id)?;
    let gid_f = tensor3(&g_id.module, f)?;
    let id_f = tensor3(&id, f)?;
    let g_idf = tensor3(g, &id_f.module)?;
    let gf = tensor3(g, f)?;
    let a = associator3(&g_id, &gid_f, &id_f, &g_idf);
    let lhs = whisker_left(g, &g_idf, &left_unitor3(&id_f, f), &gf).compose(&a);
    let rhs = whisker_right(&gid_f, &right_unitor3(&g_id, g), f, &gf);
    let mut r = Report::new();
    r.check("triangle tot", lhs.tot == rhs.tot, || "tot paths differ".into());
    r.check("triangle N", lhs.n == rhs.n, || "N paths differ".into());
    Ok(r)
}

/// Matrices of every structure map on `g ⊗ f`, for reports.
pub fn unitor_pair<F: Field>(e: &Bimodule3<F>) -> Result<(Bimod3Morphism<F>, Bimod3Morphism<F>)> {
    let lt = tensor3(&Bimodule3::identity(&e.left), e)?;
    let rt = tensor3(e, &Bimodule3::identity(&e.right))?;
    Ok((left_unitor3(&lt, e), right_unitor3(&rt, e)))
}

/// Identity on a tensor product as a sanity value.
pub fn identity_on<F: Field>(t: &Tensor3<F>) -> Bimod3Morphism<F> {
    Bimod3Morphism { tot: Mat::identity(t.tot.dim()), n: Mat::identity(t.n.dim()) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cbimod::{check_bimod_iso, validate_bimodule};
    use crate::coiso::{Triple, TripleRef};
    use crate::exact_core::Q;
    use crate::finalg::fixtures::t2;

    fn t2e12() -> TripleRef<Q> {
        let e12 = Subspace::span(3, &[vec![Q::from_i64(0), Q::from_i64(1), Q::from_i64(0)]]);
        Triple::dirac(&t2::<Q>().into_ref(), &e12).unwrap().into_ref()
    }

    #[test]
    fn identity_tensor_identity() {
        let t = t2e12();
        let id = Bimodule3::identity(&t);
        let tt = tensor3(&id, &id).unwrap();
        assert!(validate_bimodule(&tt.module).passed());
        assert_eq!(tt.module.dims(), id.dims());
        let lu = left_unitor3(&tt, &id);
        assert!(check_bimod_iso(&tt.module, &id, &lu).passed());
    }

    #[test]
    fn zero_bimodule_tensor() {
        let t = t2e12();
        let id = Bimodule3::identity(&t);
        let z = Bimodule3::zero_bimodule(&t, &t);
        let tt = tensor3(&z, &id).unwrap();
        assert_eq!(tt.module.dims(), (0, 0, 0));
    }

    #[test]
    fn coherence_on_identities() {
        let t = t2e12();
        let id = Bimodule3::identity(&t);
        assert!(pentagon_check(&id, &id, &id, &id).unwrap().passed());
        assert!(triangle_check(&id, &id).unwrap().passed());
    }

    #[test]
    fn whisker_with_identity_is_identity() {
        let t = t2e12();
        let id = Bimodule3::identity(&t);
        let tt = tensor3(&id, &id).unwrap();
        let w = whisker_left(&id, &tt, &Bimod3Morphism::identity(&id), &tt);
        assert_eq!(w, identity_on(&tt));
        let z = whisker_left(&id, &tt, &Bimod3Morphism::zero(&id, &id), &tt);
        assert!(z.tot.is_zero() && z.n.is_zero());
    }
}

//! Reduction of bimodules `E_red = E_N / E_0` as a functor of bicategories.

use super::tensor::{associator3, left_unitor3, right_unitor3, tensor3, Tensor3};
use super::{Bimod3Morphism, Bimodule3};
use crate::coiso::Reduced;
use crate::error::{CoisoError, Result};
use crate::exact_core::linalg::{is_zero_vec, unit_vec, vec_kron};
use crate::exact_core::{induced_map, quotient, Field, Mat, Quotient};
use crate::finalg::bimodule::{associator, kron_apply, left_unitor, right_unitor, tensor, tensor_maps, Tensor};
use crate::finalg::{AlgRef, PlainBimodule};
use crate::report::Report;

/// `E_N / E_0` over `(B_red, A_red)`.
#[derive(Clone, Debug)]
pub struct ReducedBimodule<F> {
    pub module: PlainBimodule<F>,
    pub quot: Quotient<F>,
    pub report: Report,
}

pub fn reduce_bimodule<F: Field>(e: &Bimodule3<F>) -> ReducedBimodule<F> {
    let (rb, ra): (Reduced<F>, Reduced<F>) = (e.left.reduce(), e.right.reduce());
    reduce_bimodule_over(e, &rb.alg, &rb.quot, &ra.alg, &ra.quot)
}

pub(crate) fn reduce_bimodule_over<F: Field>(
    e: &Bimodule3<F>,
    b_red: &AlgRef<F>,
    b_quot: &Quotient<F>,
    a_red: &AlgRef<F>,
    a_quot: &Quotient<F>,
) -> ReducedBimodule<F> {
    let mut report = Report::new();
    let w = e.nmod.sub_bimodule_witness(&e.zero);
    report.check("E_0 is a sub-bimodule", w.is_none(), || w.clone().unwrap_or_default());
    let kills = |act: &dyn Fn(&[F]) -> Mat<F>, zs: Vec<Vec<F>>| {
        zs.iter().all(|z| {
            let m = act(z);
            (0..e.nmod.dim).all(|i| e.zero.contains(&m.col(i)))
        })
    };
    report.check("B_0 acts into E_0", kills(&|z| e.nmod.lact_of(z), b_quot.sub.vectors()), || "left action does not descend".into());
    report.check("A_0 acts into E_0", kills(&|z| e.nmod.ract_of(z), a_quot.sub.vectors()), || "right action does not descend".into());
    let q = quotient(&e.zero);
    let module = e.nmod.descend(&q, b_red, &b_quot.sect, a_red, &a_quot.sect);
    ReducedBimodule { module, quot: q, report }
}

/// `[x] -> [Φ_N x]`.
pub fn reduce_2morphism<F: Field>(phi: &Bimod3Morphism<F>, src: &ReducedBimodule<F>, tgt: &ReducedBimodule<F>) -> Result<Mat<F>> {
    induced_map(&src.quot, &phi.n, &tgt.quot).ok_or_else(|| CoisoError::Shape("2-morphism does not preserve zero components".into()))
}

/// `m(F, E): F_red ⊗ E_red -> (F ⊗ E)_red`, `[y] ⊗ [x] -> [y ⊗ x]`, with its inverse.
#[derive(Clone, Debug)]
pub struct MultIso<F> {
    pub tensor: Tensor<F>,
    pub m: Mat<F>,
    pub inverse: Mat<F>,
    pub report: Report,
}

impl<F: Field> MultIso<F> {
    pub fn new(f: &Bimodule3<F>, e: &Bimodule3<F>, fe: &Tensor3<F>, rf: &ReducedBimodule<F>, re: &ReducedBimodule<F>, rfe: &ReducedBimodule<F>) -> Result<Self> {
        let mut report = Report::new();
        let t = tensor(&rf.module, &re.module)?;
        let (fd, ed) = (f.nmod.dim, e.nmod.dim);
        let to_red = |v: &[F]| rfe.quot.project(&fe.n.quot.project(v));
        let mut ok = true;
        'a: for p in 0..fd {
            for z in e.zero.vectors() {
                if !is_zero_vec(&to_red(&vec_kron(&unit_vec(fd, p), &z))) {
                    ok = false;
                    break 'a;
                }
            }
        }
        report.check("m well-defined: F_N ⊗ E_0 -> 0", ok, || "a class y ⊗ z0 survives".into());
        let mut ok = true;
        'b: for z in f.zero.vectors() {
            for q in 0..ed {
                if !is_zero_vec(&to_red(&vec_kron(&z, &unit_vec(ed, q)))) {
                    ok = false;
                    break 'b;
                }
            }
        }
        report.check("m well-defined: F_0 ⊗ E_N -> 0", ok, || "a class z0 ⊗ x survives".into());
        // plain map on F_red ⊗ E_red, then balancing over B_red
        let plain = |v: &[F]| to_red(&kron_apply(&rf.quot.sect, &re.quot.sect, v));
        let balanced = t.quot.sub.vectors().iter().all(|r| is_zero_vec(&plain(r)));
        report.check("m well-defined: balanced over B_red", balanced, || "a balancing relation survives".into());
        let m = Mat::from_cols(&t.quot.sect.col_vecs().iter().map(|s| plain(s)).collect::<Vec<_>>(), rfe.quot.dim());
        let inverse = Mat::from_cols(
            &(0..rfe.quot.dim())
                .map(|s| {
                    let w = fe.n.quot.sect.apply(&rfe.quot.sect.col(s));
                    t.quot.project(&kron_apply(&rf.quot.proj, &re.quot.proj, &w))
                })
                .collect::<Vec<_>>(),
            t.dim(),
        );
        let inv_ok = m.rows == m.cols && m.mul(&inverse) == Mat::identity(m.rows) && inverse.mul(&m) == Mat::identity(m.cols);
        report.check("m invertible with inverse [y⊗x] -> [y]⊗[x]", inv_ok, || format!("{}x{} rank {}", m.rows, m.cols, m.rank()));
        report.check("m is a bimodule map", t.module.is_hom_to(&rfe.module, &m), || "m fails to intertwine".into());
        Ok(MultIso { tensor: t, m, inverse, report })
    }

    /// Computes every ingredient from scratch.
    pub fn compute(f: &Bimodule3<F>, e: &Bimodule3<F>) -> Result<(Self, Tensor3<F>)> {
        let fe = tensor3(f, e)?;
        let (rf, re, rfe) = (reduce_bimodule(f), reduce_bimodule(e), reduce_bimodule(&fe.module));
        Ok((Self::new(f, e, &fe, &rf, &re, &rfe)?, fe))
    }
}

/// `m(F',E') ∘ (red α ⊗ red β) = red(α ⊗ β) ∘ m(F,E)`.
pub fn check_mult_naturality<F: Field>(
    f: &Bimodule3<F>,
    f2: &Bimodule3<F>,
    alpha: &Bimod3Morphism<F>,
    e: &Bimodule3<F>,
    e2: &Bimodule3<F>,
    beta: &Bimod3Morphism<F>,
) -> Result<Report> {
    let fe = tensor3(f, e)?;
    let fe2 = tensor3(f2, e2)?;
    let (rf, re, rfe) = (reduce_bimodule(f), reduce_bimodule(e), reduce_bimodule(&fe.module));
    let (rf2, re2, rfe2) = (reduce_bimodule(f2), reduce_bimodule(e2), reduce_bimodule(&fe2.module));
    let m1 = MultIso::new(f, e, &fe, &rf, &re, &rfe)?;
    let m2 = MultIso::new(f2, e2, &fe2, &rf2, &re2, &rfe2)?;
    let ra = reduce_2morphism(alpha, &rf, &rf2)?;
    let rb = reduce_2morphism(beta, &re, &re2)?;
    let lhs = m2.m.mul(&tensor_maps(&m1.tensor, &ra, &rb, &m2.tensor));
    let ab = super::tensor::tensor_morphism(&fe, alpha, beta, &fe2);
    let rhs = reduce_2morphism(&ab, &rfe, &rfe2)?.mul(&m1.m);
    let mut r = Report::new();
    r.check("m natural", lhs == rhs, || "naturality square differs".into());
    Ok(r)
}

/// Composition coherence of the reduction functor on `h ⊗ g ⊗ f`.
pub fn reduction_composition_coherence<F: Field>(h: &Bimodule3<F>, g: &Bimodule3<F>, f: &Bimodule3<F>) -> Result<Report> {
    let hg = tensor3(h, g)?;
    let hg_f = tensor3(&hg.module, f)?;
    let gf = tensor3(g, f)?;
    let h_gf = tensor3(h, &gf.module)?;
    let asso = associator3(&hg, &hg_f, &gf, &h_gf);
    let asso_inv = asso.inverse().ok_or_else(|| CoisoError::Shape("associator singular".into()))?;

    let (rh, rg, rf) = (reduce_bimodule(h), reduce_bimodule(g), reduce_bimodule(f));
    let (rhg, rgf) = (reduce_bimodule(&hg.module), reduce_bimodule(&gf.module));
    let (rhg_f, rh_gf) = (reduce_bimodule(&hg_f.module), reduce_bimodule(&h_gf.module));
    let m_gf = MultIso::new(g, f, &gf, &rg, &rf, &rgf)?;
    let m_h_gf = MultIso::new(h, &gf.module, &h_gf, &rh, &rgf, &rh_gf)?;
    let m_hg = MultIso::new(h, g, &hg, &rh, &rg, &rhg)?;
    let m_hg_f = MultIso::new(&hg.module, f, &hg_f, &rhg, &rf, &rhg_f)?;

    let t_rh_rgrf = tensor(&rh.module, &m_gf.tensor.module)?;
    let t_rhrg_rf = tensor(&m_hg.tensor.module, &rf.module)?;
    let plain_asso = associator(&m_hg.tensor, &t_rhrg_rf, &m_gf.tensor, &t_rh_rgrf);
    let plain_asso_inv = plain_asso.inverse().ok_or_else(|| CoisoError::Shape("plain associator singular".into()))?;

    let id_h = Mat::identity(rh.module.dim);
    let id_f = Mat::identity(rf.module.dim);
    let lhs = reduce_2morphism(&asso_inv, &rh_gf, &rhg_f)?
        .mul(&m_h_gf.m)
        .mul(&tensor_maps(&t_rh_rgrf, &id_h, &m_gf.m, &m_h_gf.tensor));
    let rhs = m_hg_f.m.mul(&tensor_maps(&t_rhrg_rf, &m_hg.m, &id_f, &m_hg_f.tensor)).mul(&plain_asso_inv);
    let mut r = Report::new();
    for (name, m) in [("m(g,f)", &m_gf), ("m(h,g⊗f)", &m_h_gf), ("m(h,g)", &m_hg), ("m(h⊗g,f)", &m_hg_f)] {
        r.absorb(name, m.report.clone());
    }
    r.check("composition coherence", lhs == rhs, || "paths differ".into());
    Ok(r)
}

/// Left and right identity coherence of the reduction functor at `f`.
pub fn reduction_identity_coherence<F: Field>(f: &Bimodule3<F>) -> Result<Report> {
    let mut r = Report::new();
    let rf = reduce_bimodule(f);
    let id_f = Mat::identity(rf.module.dim);
    for side in ["left", "right"] {
        let tri = if side == "left" { &f.left } else { &f.right };
        let red = tri.reduce();
        let id3 = Bimodule3::identity(tri);
        let rid = reduce_bimodule(&id3);
        let reg = PlainBimodule::regular(&red.alg);
        // u: Id_{A_red} -> red(Id_A); the bases agree, so this is the identity matrix
        let u = Mat::identity(red.alg.dim);
        r.check(format!("u {side} is a bimodule iso"), reg.is_hom_to(&rid.module, &u), || "u fails".into());
        let (lhs, rhs) = if side == "left" {
            let t1 = tensor(&reg, &rf.module)?;
            let t2 = tensor(&rid.module, &rf.module)?;
            let tb = tensor3(&id3, f)?;
            let rtb = reduce_bimodule(&tb.module);
            let m = MultIso::new(&id3, f, &tb, &rid, &rf, &rtb)?;
            r.absorb("m(Id,f)", m.report.clone());
            let fl = reduce_2morphism(&left_unitor3(&tb, f), &rtb, &rf)?;
            (left_unitor(&t1, &rf.module), fl.mul(&m.m).mul(&tensor_maps(&t1, &u, &id_f, &t2)))
        } else {
            let t1 = tensor(&rf.module, &reg)?;
            let t2 = tensor(&rf.module, &rid.module)?;
            let tb = tensor3(f, &id3)?;
            let rtb = reduce_bimodule(&tb.module);
            let m = MultIso::new(f, &id3, &tb, &rf, &rid, &rtb)?;
            r.absorb("m(f,Id)", m.report.clone());
            let fr = reduce_2morphism(&right_unitor3(&tb, f), &rtb, &rf)?;
            (right_unitor(&t1, &rf.module), fr.mul(&m.m).mul(&tensor_maps(&t1, &id_f, &u, &t2)))
        };
        r.check(format!("{side} identity coherence"), lhs == rhs, || "paths differ".into());
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cbimod::tensor::tensor3_with;
    use crate::cbimod::ZeroRule;
    use crate::coiso::{Triple, TripleRef};
    use crate::exact_core::{Q, Subspace};
    use crate::finalg::fixtures::{field, j_col, m2, t2};

    fn t2e12() -> TripleRef<Q> {
        let e12 = Subspace::span(3, &[vec![Q::from_i64(0), Q::from_i64(1), Q::from_i64(0)]]);
        Triple::dirac(&t2::<Q>().into_ref(), &e12).unwrap().into_ref()
    }

    #[test]
    fn reduce_identity_of_m2_dirac() {
        let t = Triple::dirac(&m2::<Q>().into_ref(), &j_col()).unwrap().into_ref();
        let r = reduce_bimodule(&Bimodule3::identity(&t));
        assert!(r.report.passed());
        assert_eq!(r.module.dim, 1);
        assert!(r.module.validate().passed());
    }

    #[test]
    fn reduce_zero_bimodule() {
        let t = t2e12();
        let r = reduce_bimodule(&Bimodule3::zero_bimodule(&t, &t));
        assert_eq!(r.module.dim, 0);
    }

    #[test]
    fn mult_iso_on_identities() {
        let t = t2e12();
        let id = Bimodule3::identity(&t);
        let (m, _) = MultIso::compute(&id, &id).unwrap();
        assert!(m.report.passed(), "{:?}", m.report);
        assert_eq!((m.m.rows, m.m.cols), (2, 2));
        assert!(reduction_composition_coherence(&id, &id, &id).unwrap().passed());
        assert!(reduction_identity_coherence(&id).unwrap().passed());
    }

    #[test]
    fn dropping_f0_en_breaks_well_definedness() {
        // F over unred(k) with F_0 = F_N: its zero component is not generated by the other summand
        let k = Triple::unred(&field::<Q>().into_ref()).into_ref();
        let mut f = Bimodule3::identity(&k);
        f.zero = Subspace::full(1);
        assert!(f.validate().passed());
        let e = Bimodule3::identity(&k);
        let (good, _) = MultIso::compute(&f, &e).unwrap();
        assert!(good.report.passed());
        let bad = tensor3_with(&f, &e, ZeroRule::OmitF0EN).unwrap();
        let (rf, re, rfe) = (reduce_bimodule(&f), reduce_bimodule(&e), reduce_bimodule(&bad.module));
        let m = MultIso::new(&f, &e, &bad, &rf, &re, &rfe).unwrap();
        assert!(m.report.failures().any(|c| c.name == "m well-defined: F_0 ⊗ E_N -> 0"));
    }
}

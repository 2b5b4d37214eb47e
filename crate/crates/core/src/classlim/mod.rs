//! Deformations truncated at order `N` (a central nilpotent `λ`) and the
//! classical-limit functor `X -> X / λX` on triples, morphisms and bimodules.

pub mod commute;
pub mod fixtures;
pub mod random;

use std::sync::Arc;

use crate::cbimod::{associator3, left_unitor3, right_unitor3, same_triple, tensor3, tensor_morphism, Bimod3Morphism, Bimodule3, Tensor3};
use crate::coiso::{Triple, TripleMorphism, TripleRef};
use crate::error::{CoisoError, Result};
use crate::exact_core::linalg::is_zero_vec;
use crate::exact_core::{induced_map, quotient, Field, Mat, Quotient, Subspace};
use crate::finalg::bimodule::kron_apply;
use crate::finalg::{quotient_algebra, AlgRef, Algebra, PlainBimodule, QuotientAlgebra, Tensor};
use crate::report::Report;

pub use commute::{check_commute, picard_check, CommuteOptions};

#[derive(Clone, Debug)]
pub struct DeformedAlgebra<F> {
    pub alg: AlgRef<F>,
    pub lambda: Vec<F>,
    pub order: usize,
}

/// A triple whose total algebra carries `λ`.
#[derive(Clone, Debug)]
pub struct DeformedTriple<F> {
    pub base: TripleRef<F>,
    pub lambda: Vec<F>,
    pub order: usize,
}

pub type DeformedRef<F> = Arc<DeformedTriple<F>>;

impl<F: Field> DeformedTriple<F> {
    pub fn new(base: TripleRef<F>, lambda: Vec<F>, order: usize) -> Result<DeformedRef<F>> {
        let t = DeformedTriple { base, lambda, order };
        let r = validate_deformed(&t);
        if !r.passed() {
            return Err(CoisoError::invalid(format!("deformed triple {}", t.base.label), r));
        }
        Ok(Arc::new(t))
    }

    pub fn algebra(&self) -> DeformedAlgebra<F> {
        DeformedAlgebra { alg: self.base.tot.clone(), lambda: self.lambda.clone(), order: self.order }
    }

    /// `λ` in coordinates of `A_N`.
    pub fn lambda_n(&self) -> Vec<F> {
        self.base.n_sub.coords(&self.lambda).expect("λ lies in A_N")
    }

    /// `λ` in the reduced algebra.
    pub fn lambda_red(&self) -> Vec<F> {
        self.base.reduce().quot.project(&self.lambda_n())
    }
}

fn power_is_zero<F: Field>(a: &Algebra<F>, x: &[F], n: usize) -> bool {
    let mut p = a.unit.clone();
    for _ in 0..n {
        p = a.mul(&p, x);
    }
    is_zero_vec(&p)
}

pub fn validate_deformed_algebra<F: Field>(d: &DeformedAlgebra<F>) -> Report {
    let mut r = Report::new();
    if !r.check("λ has the right length", d.lambda.len() == d.alg.dim, || format!("{} != {}", d.lambda.len(), d.alg.dim)) {
        return r;
    }
    r.check("order ≥ 1", d.order >= 1, || "order 0".into());
    r.check("λ central", d.alg.left_mat(&d.lambda) == d.alg.right_mat(&d.lambda), || "λ a != a λ for some basis a".into());
    r.check("λ^N = 0", power_is_zero(&d.alg, &d.lambda, d.order), || format!("λ^{} != 0", d.order));
    r
}

/// `λ A_N ⊆ A_N`, `λ A_0 ⊆ A_0` and `λ A_tot ∩ A_N = λ A_N`.
pub fn validate_deformed<F: Field>(t: &DeformedTriple<F>) -> Report {
    let mut r = validate_deformed_algebra(&t.algebra());
    if !r.passed() {
        return r;
    }
    r.absorb("triple", t.base.validate());
    let l = t.base.tot.left_mat(&t.lambda);
    let ln = t.base.n_sub.image(&l);
    r.check("λ A_N ⊆ A_N", ln.is_subset_of(&t.base.n_sub), || "A_N is not λ-stable".into());
    r.check("λ A_0 ⊆ A_0", t.base.zero.image(&l).is_subset_of(&t.base.zero), || "A_0 is not λ-stable".into());
    let lt = Subspace::col_span(&l);
    let cap = lt.intersect(&t.base.n_sub).expect("same ambient");
    r.check("λ A_tot ∩ A_N = λ A_N", cap == ln, || format!("intersection dim {} vs {}", cap.dim(), ln.dim()));
    r
}

/// A bimodule between deformed triples; `λ` must act the same from both sides.
#[derive(Clone, Debug)]
pub struct DeformedBimodule<F> {
    pub base: Bimodule3<F>,
    pub left: DeformedRef<F>,
    pub right: DeformedRef<F>,
}

impl<F: Field> DeformedBimodule<F> {
    pub fn identity(t: &DeformedRef<F>) -> Self {
        DeformedBimodule { base: Bimodule3::identity(&t.base), left: t.clone(), right: t.clone() }
    }

    pub fn validate(&self) -> Report {
        let mut r = self.base.validate();
        let sides = same_triple(&self.base.left, &self.left.base) && same_triple(&self.base.right, &self.right.base);
        if !r.check("deformed sides match", sides, || "base triples differ".into()) {
            return r;
        }
        let e = &self.base;
        r.check("λ central on E_tot", e.tot.lact_of(&self.left.lambda) == e.tot.ract_of(&self.right.lambda), || {
            "λ x != x λ on E_tot".into()
        });
        r.check("λ central on E_N", e.nmod.lact_of(&self.left.lambda_n()) == e.nmod.ract_of(&self.right.lambda_n()), || {
            "λ x != x λ on E_N".into()
        });
        r
    }
}

pub fn tensor_deformed<F: Field>(f: &DeformedBimodule<F>, e: &DeformedBimodule<F>) -> Result<(DeformedBimodule<F>, Tensor3<F>)> {
    let t = tensor3(&f.base, &e.base)?;
    Ok((DeformedBimodule { base: t.module.clone(), left: f.left.clone(), right: e.right.clone() }, t))
}

/// `A / λA`.
pub fn cl_algebra<F: Field>(d: &DeformedAlgebra<F>) -> Result<QuotientAlgebra<F>> {
    let img = Subspace::col_span(&d.alg.left_mat(&d.lambda));
    let mut q = quotient_algebra(&d.alg, &img)?;
    q.alg = Arc::new((*q.alg).clone().with_label(format!("cl({})", d.alg.label)));
    Ok(q)
}

/// `cl(A)` with the maps relating `A_N / λA_N` to `cl(A)_N`.
#[derive(Clone, Debug)]
pub struct ClTriple<F> {
    pub triple: TripleRef<F>,
    pub tot: QuotientAlgebra<F>,
    /// `A_N -> A_N / λ A_N` in `A_N` coordinates.
    pub n_quot: Quotient<F>,
    /// `A_N` coordinates to `cl(A)_N` coordinates.
    pub n_proj: Mat<F>,
    /// `cl(A)_N` coordinates to representatives in `A_N`.
    pub n_lift: Mat<F>,
}

pub fn cl_triple<F: Field>(t: &DeformedTriple<F>) -> Result<ClTriple<F>> {
    let r = validate_deformed(t);
    if !r.passed() {
        return Err(CoisoError::invalid("deformed triple", r));
    }
    let tot = cl_algebra(&t.algebra())?;
    let incl = t.base.n_incl();
    let img: Vec<Vec<F>> = incl.col_vecs().iter().map(|v| tot.quot.project(v)).collect();
    let n_sub = Subspace::span(tot.alg.dim, &img);
    let zero = Subspace::span(tot.alg.dim, &t.base.zero.vectors().iter().map(|v| tot.quot.project(v)).collect::<Vec<_>>());
    let triple = Triple::new(tot.alg.clone(), n_sub.clone(), zero, format!("cl({})", t.base.label))?.into_ref();
    let n_proj = Mat::from_cols(&img.iter().map(|v| n_sub.coords(v).expect("spans")).collect::<Vec<_>>(), n_sub.dim());
    let na = t.base.n_alg();
    let ln = na.left_mat(&t.lambda_n());
    let n_quot = quotient(&Subspace::col_span(&ln));
    let iso = n_proj.mul(&n_quot.sect).inverse().ok_or_else(|| CoisoError::Shape("A_N / λA_N -> cl(A)_N is not bijective".into()))?;
    let n_lift = n_quot.sect.mul(&iso);
    Ok(ClTriple { triple, tot, n_quot, n_proj, n_lift })
}

/// `cl(f)` for a morphism with `f(λ) = λ'`.
pub fn cl_triple_morphism<F: Field>(f: &TripleMorphism<F>, src: &DeformedTriple<F>, tgt: &DeformedTriple<F>, cs: &ClTriple<F>, ct: &ClTriple<F>) -> Result<TripleMorphism<F>> {
    let r = f.validate();
    if !r.passed() {
        return Err(CoisoError::invalid("triple morphism", r));
    }
    if f.base.apply(&src.lambda) != tgt.lambda {
        return Err(CoisoError::Shape("morphism does not send λ to λ".into()));
    }
    let base = induced_map(&cs.tot.quot, &f.base, &ct.tot.quot).ok_or_else(|| CoisoError::Shape("morphism does not descend".into()))?;
    Ok(TripleMorphism { source: cs.triple.clone(), target: ct.triple.clone(), base })
}

/// `X / λX` for a plain bimodule with `λ` acting through the left algebra.
#[derive(Clone, Debug)]
pub struct ClPlain<F> {
    pub module: PlainBimodule<F>,
    pub quot: Quotient<F>,
}

pub fn cl_plain<F: Field>(m: &PlainBimodule<F>, lam_left: &[F], left: &QuotientAlgebra<F>, right: &QuotientAlgebra<F>) -> ClPlain<F> {
    let quot = quotient(&Subspace::col_span(&m.lact_of(lam_left)));
    let module = m.descend(&quot, &left.alg, &left.quot.sect, &right.alg, &right.quot.sect);
    ClPlain { module, quot }
}

/// `[y] ⊗ [x] -> [y ⊗ x]` on one component, with its inverse and well-definedness checks.
pub fn class_mult<F: Field>(
    qf: &Quotient<F>,
    qe: &Quotient<F>,
    t_cl: &Tensor<F>,
    t_fe: &Tensor<F>,
    q_fe: &Quotient<F>,
    report: &mut Report,
    name: &str,
) -> (Mat<F>, Mat<F>) {
    let to_cl = |v: &[F]| q_fe.project(&t_fe.quot.project(v));
    let plain = |s: &[F]| to_cl(&kron_apply(&qf.sect, &qe.sect, s));
    let balanced = t_cl.quot.sub.vectors().iter().all(|r| is_zero_vec(&plain(r)));
    report.check(format!("{name}: well-defined on the balanced quotient"), balanced, || "a balancing relation survives".into());
    let (fd, ed) = (t_fe.fdim, t_fe.edim);
    let lf = qf.sub.vectors();
    let le = qe.sub.vectors();
    let kills = lf.iter().all(|y| (0..ed).all(|q| is_zero_vec(&to_cl(&crate::exact_core::linalg::vec_kron(y, &crate::exact_core::linalg::unit_vec(ed, q))))))
        && le.iter().all(|x| (0..fd).all(|p| is_zero_vec(&to_cl(&crate::exact_core::linalg::vec_kron(&crate::exact_core::linalg::unit_vec(fd, p), x)))));
    report.check(format!("{name}: λ-multiples vanish"), kills, || "λy ⊗ x or y ⊗ λx survives".into());
    let m = Mat::from_cols(&t_cl.quot.sect.col_vecs().iter().map(|s| plain(s)).collect::<Vec<_>>(), q_fe.dim());
    let inv = Mat::from_cols(
        &q_fe
            .sect
            .col_vecs()
            .iter()
            .map(|s| t_cl.quot.project(&kron_apply(&qf.proj, &qe.proj, &t_fe.quot.sect.apply(s))))
            .collect::<Vec<_>>(),
        t_cl.dim(),
    );
    let ok = m.is_square() && m.mul(&inv) == Mat::identity(m.rows) && inv.mul(&m) == Mat::identity(m.cols);
    report.check(format!("{name}: invertible"), ok, || format!("{}x{} rank {}", m.rows, m.cols, m.rank()));
    (m, inv)
}

/// `cl(E)` componentwise.
#[derive(Clone, Debug)]
pub struct ClBimodule<F> {
    pub module: Bimodule3<F>,
    pub tot: Quotient<F>,
    pub n: Quotient<F>,
    pub report: Report,
}

pub fn cl_bimodule<F: Field>(e: &DeformedBimodule<F>, cb: &ClTriple<F>, ca: &ClTriple<F>) -> Result<ClBimodule<F>> {
    let r = e.validate();
    if !r.passed() {
        return Err(CoisoError::invalid("deformed bimodule", r));
    }
    let b = &e.base;
    let tot = cl_plain(&b.tot, &e.left.lambda, &cb.tot, &ca.tot);
    let qn = quotient(&Subspace::col_span(&b.nmod.lact_of(&e.left.lambda_n())));
    let nmod = b.nmod.descend(&qn, cb.triple.n_alg(), &cb.n_lift, ca.triple.n_alg(), &ca.n_lift);
    let zero = Subspace::span(qn.dim(), &b.zero.vectors().iter().map(|z| qn.project(z)).collect::<Vec<_>>());
    let iota = induced_map(&qn, &b.iota, &tot.quot).ok_or_else(|| CoisoError::Shape("ι is not λ-linear".into()))?;
    let module = Bimodule3 {
        left: cb.triple.clone(),
        right: ca.triple.clone(),
        tot: tot.module,
        nmod,
        zero,
        iota,
        label: format!("cl({})", b.label),
    };
    let report = module.validate();
    Ok(ClBimodule { module, tot: tot.quot, n: qn, report })
}

pub fn cl_bimod_morphism<F: Field>(phi: &Bimod3Morphism<F>, src: &ClBimodule<F>, tgt: &ClBimodule<F>) -> Result<Bimod3Morphism<F>> {
    let err = || CoisoError::Shape("2-morphism is not λ-linear".into());
    Ok(Bimod3Morphism { tot: induced_map(&src.tot, &phi.tot, &tgt.tot).ok_or_else(err)?, n: induced_map(&src.n, &phi.n, &tgt.n).ok_or_else(err)? })
}

/// `u_A: Id_{cl A} -> cl(Id_A)`; a change from the `cl(A)_N` basis to the `A_N / λA_N` basis.
pub fn cl_unit<F: Field>(ct: &ClTriple<F>) -> Bimod3Morphism<F> {
    Bimod3Morphism { tot: Mat::identity(ct.tot.alg.dim), n: ct.n_quot.proj.mul(&ct.n_lift) }
}

/// Everything `cl` needs for one bimodule.
#[derive(Clone, Debug)]
pub struct ClData<F> {
    pub left: ClTriple<F>,
    pub right: ClTriple<F>,
    pub cl: ClBimodule<F>,
}

pub fn cl_data<F: Field>(e: &DeformedBimodule<F>) -> Result<ClData<F>> {
    let left = cl_triple(&e.left)?;
    let right = cl_triple(&e.right)?;
    let cl = cl_bimodule(e, &left, &right)?;
    Ok(ClData { left, right, cl })
}

/// `m: cl(F) ⊗ cl(E) -> cl(F ⊗ E)`.
#[derive(Clone, Debug)]
pub struct ClMult<F> {
    pub tensor: Tensor3<F>,
    pub m: Bimod3Morphism<F>,
    pub inverse: Bimod3Morphism<F>,
    pub report: Report,
}

pub fn cl_tensor_iso<F: Field>(cf: &ClBimodule<F>, ce: &ClBimodule<F>, fe: &Tensor3<F>, cfe: &ClBimodule<F>) -> Result<ClMult<F>> {
    let tensor = tensor3(&cf.module, &ce.module)?;
    let mut report = Report::new();
    let (mt, it) = class_mult(&cf.tot, &ce.tot, &tensor.tot, &fe.tot, &cfe.tot, &mut report, "tot");
    let (mn, inn) = class_mult(&cf.n, &ce.n, &tensor.n, &fe.n, &cfe.n, &mut report, "N");
    let m = Bimod3Morphism { tot: mt, n: mn };
    let inverse = Bimod3Morphism { tot: it, n: inn };
    report.absorb("iso", crate::cbimod::check_bimod_iso(&tensor.module, &cfe.module, &m));
    Ok(ClMult { tensor, m, inverse, report })
}

/// Builds `cl(f)`, `cl(e)`, `cl(f ⊗ e)` and `m` from scratch.
pub fn cl_tensor_iso_for<F: Field>(f: &DeformedBimodule<F>, e: &DeformedBimodule<F>) -> Result<ClMult<F>> {
    let (fe, t) = tensor_deformed(f, e)?;
    let (cf, ce, cfe) = (cl_data(f)?, cl_data(e)?, cl_data(&fe)?);
    cl_tensor_iso(&cf.cl, &ce.cl, &t, &cfe.cl)
}

/// `m(F',E') ∘ (cl α ⊗ cl β) = cl(α ⊗ β) ∘ m(F,E)`.
pub fn check_cl_naturality<F: Field>(
    f: &DeformedBimodule<F>,
    alpha: &Bimod3Morphism<F>,
    e: &DeformedBimodule<F>,
    beta: &Bimod3Morphism<F>,
) -> Result<Report> {
    let (fe, t) = tensor_deformed(f, e)?;
    let (cf, ce, cfe) = (cl_data(f)?, cl_data(e)?, cl_data(&fe)?);
    let m = cl_tensor_iso(&cf.cl, &ce.cl, &t, &cfe.cl)?;
    let ca = cl_bimod_morphism(alpha, &cf.cl, &cf.cl)?;
    let cb = cl_bimod_morphism(beta, &ce.cl, &ce.cl)?;
    let lhs = m.m.compose(&tensor_morphism(&m.tensor, &ca, &cb, &m.tensor));
    let ab = tensor_morphism(&t, alpha, beta, &t);
    let rhs = cl_bimod_morphism(&ab, &cfe.cl, &cfe.cl)?.compose(&m.m);
    let mut r = Report::new();
    r.check("cl m natural", lhs == rhs, || "naturality square differs".into());
    Ok(r)
}

/// `cl(a)^{-1}`-form of composition coherence on `h ⊗ g ⊗ f`.
pub fn cl_composition_coherence<F: Field>(h: &DeformedBimodule<F>, g: &DeformedBimodule<F>, f: &DeformedBimodule<F>) -> Result<Report> {
    let (hg, t_hg) = tensor_deformed(h, g)?;
    let (gf, t_gf) = tensor_deformed(g, f)?;
    let (hg_f, t_hg_f) = tensor_deformed(&hg, f)?;
    let (h_gf, t_h_gf) = tensor_deformed(h, &gf)?;
    let a = associator3(&t_hg, &t_hg_f, &t_gf, &t_h_gf);
    let a_inv = a.inverse().ok_or_else(|| CoisoError::Shape("associator singular".into()))?;
    let (ch, cg, cf) = (cl_data(h)?, cl_data(g)?, cl_data(f)?);
    let (chg, cgf, chg_f, ch_gf) = (cl_data(&hg)?, cl_data(&gf)?, cl_data(&hg_f)?, cl_data(&h_gf)?);
    let m_gf = cl_tensor_iso(&cg.cl, &cf.cl, &t_gf, &cgf.cl)?;
    let m_h_gf = cl_tensor_iso(&ch.cl, &cgf.cl, &t_h_gf, &ch_gf.cl)?;
    let m_hg = cl_tensor_iso(&ch.cl, &cg.cl, &t_hg, &chg.cl)?;
    let m_hg_f = cl_tensor_iso(&chg.cl, &cf.cl, &t_hg_f, &chg_f.cl)?;

    let t_h_cgcf = tensor3(&ch.cl.module, &m_gf.tensor.module)?;
    let t_chcg_f = tensor3(&m_hg.tensor.module, &cf.cl.module)?;
    let a_cl = associator3(&m_hg.tensor, &t_chcg_f, &m_gf.tensor, &t_h_cgcf);
    let a_cl_inv = a_cl.inverse().ok_or_else(|| CoisoError::Shape("associator singular".into()))?;

    let id_h = Bimod3Morphism::identity(&ch.cl.module);
    let id_f = Bimod3Morphism::identity(&cf.cl.module);
    let lhs = cl_bimod_morphism(&a_inv, &ch_gf.cl, &chg_f.cl)?
        .compose(&m_h_gf.m)
        .compose(&tensor_morphism(&t_h_cgcf, &id_h, &m_gf.m, &m_h_gf.tensor));
    let rhs = m_hg_f.m.compose(&tensor_morphism(&t_chcg_f, &m_hg.m, &id_f, &m_hg_f.tensor)).compose(&a_cl_inv);
    let mut r = Report::new();
    for (name, m) in [("m(g,f)", &m_gf), ("m(h,g⊗f)", &m_h_gf), ("m(h,g)", &m_hg), ("m(h⊗g,f)", &m_hg_f)] {
        r.absorb(name, m.report.clone());
    }
    r.check("cl composition coherence", lhs == rhs, || "paths differ".into());
    Ok(r)
}

/// Left and right identity coherence of `cl` at `f`.
pub fn cl_identity_coherence<F: Field>(f: &DeformedBimodule<F>) -> Result<Report> {
    let mut r = Report::new();
    let cf = cl_data(f)?;
    let id_f = Bimod3Morphism::identity(&cf.cl.module);
    for side in ["left", "right"] {
        let tri = if side == "left" { &f.left } else { &f.right };
        let ct = if side == "left" { &cf.left } else { &cf.right };
        let id = DeformedBimodule::identity(tri);
        let cid = cl_bimodule(&id, ct, ct)?;
        let id_cl = Bimodule3::identity(&ct.triple);
        let u = cl_unit(ct);
        r.absorb(&format!("u {side}"), crate::cbimod::check_bimod_iso(&id_cl, &cid.module, &u));
        let (lhs, rhs) = if side == "left" {
            let (idf, t) = tensor_deformed(&id, f)?;
            let cidf = cl_bimodule(&idf, &cf.left, &cf.right)?;
            let m = cl_tensor_iso(&cid, &cf.cl, &t, &cidf)?;
            r.absorb("m(Id,f)", m.report.clone());
            let t1 = tensor3(&id_cl, &cf.cl.module)?;
            let cl_l = cl_bimod_morphism(&left_unitor3(&t, &f.base), &cidf, &cf.cl)?;
            (left_unitor3(&t1, &cf.cl.module), cl_l.compose(&m.m).compose(&tensor_morphism(&t1, &u, &id_f, &m.tensor)))
        } else {
            let (fid, t) = tensor_deformed(f, &id)?;
            let cfid = cl_bimodule(&fid, &cf.left, &cf.right)?;
            let m = cl_tensor_iso(&cf.cl, &cid, &t, &cfid)?;
            r.absorb("m(f,Id)", m.report.clone());
            let t1 = tensor3(&cf.cl.module, &id_cl)?;
            let cl_r = cl_bimod_morphism(&right_unitor3(&t, &f.base), &cfid, &cf.cl)?;
            (right_unitor3(&t1, &cf.cl.module), cl_r.compose(&m.m).compose(&tensor_morphism(&t1, &id_f, &u, &m.tensor)))
        };
        r.check(format!("cl {side} identity coherence"), lhs == rhs, || "paths differ".into());
    }
    Ok(r)
}

/// `cl(id) = id` and `cl(g ∘ f) = cl(g) ∘ cl(f)` along a chain `t0 -> t1 -> ...`.
pub fn cl_functor_laws<F: Field>(ts: &[DeformedRef<F>], fs: &[TripleMorphism<F>]) -> Result<Report> {
    let mut r = Report::new();
    let cls = ts.iter().map(|t| cl_triple(t)).collect::<Result<Vec<_>>>()?;
    for (i, t) in ts.iter().enumerate() {
        let id = TripleMorphism::identity(&t.base);
        let c = cl_triple_morphism(&id, t, t, &cls[i], &cls[i])?;
        r.check(format!("cl(id_{i}) = id"), c.base == Mat::identity(cls[i].tot.alg.dim), || "not the identity".into());
    }
    let mut composite = TripleMorphism::identity(&ts[0].base);
    let mut cl_composite = Mat::identity(cls[0].tot.alg.dim);
    for (i, f) in fs.iter().enumerate() {
        let c = cl_triple_morphism(f, &ts[i], &ts[i + 1], &cls[i], &cls[i + 1])?;
        r.absorb(&format!("cl(f_{i})"), c.validate());
        composite = f.compose(&composite);
        cl_composite = c.base.mul(&cl_composite);
        let direct = cl_triple_morphism(&composite, &ts[0], &ts[i + 1], &cls[0], &cls[i + 1])?;
        r.check(format!("cl(f_{i} ∘ ... ∘ f_0) = composite"), direct.base == cl_composite, || "functoriality fails".into());
    }
    Ok(r)
}

/// `dim cl(X) = dim X - rank(λ·)` on tot and N; `dim X_0 - dim(λX_N ∩ X_0)` on 0-components.
pub fn dim_accounting_triple<F: Field>(t: &DeformedTriple<F>, ct: &ClTriple<F>) -> Report {
    let mut r = Report::new();
    let a = &t.base;
    let l = a.tot.left_mat(&t.lambda);
    r.check("dim cl(A)_tot", ct.triple.tot.dim == a.tot.dim - l.rank(), || format!("{} vs {} - {}", ct.triple.tot.dim, a.tot.dim, l.rank()));
    let ln = a.n_alg().left_mat(&t.lambda_n());
    r.check("dim cl(A)_N", ct.triple.n_sub.dim() == a.n_sub.dim() - ln.rank(), || format!("{} vs {} - {}", ct.triple.n_sub.dim(), a.n_sub.dim(), ln.rank()));
    let cap = Subspace::col_span(&l).intersect(&a.zero).expect("same ambient");
    r.check("dim cl(A)_0", ct.triple.zero.dim() == a.zero.dim() - cap.dim(), || format!("{} vs {} - {}", ct.triple.zero.dim(), a.zero.dim(), cap.dim()));
    r
}

pub fn dim_accounting_bimodule<F: Field>(e: &DeformedBimodule<F>, ce: &ClBimodule<F>) -> Report {
    let mut r = Report::new();
    let b = &e.base;
    let lt = b.tot.lact_of(&e.left.lambda);
    let ln = b.nmod.lact_of(&e.left.lambda_n());
    let (ct, cn, c0) = ce.module.dims();
    r.check("dim cl(E)_tot", ct == b.tot.dim - lt.rank(), || format!("{ct} vs {} - {}", b.tot.dim, lt.rank()));
    r.check("dim cl(E)_N", cn == b.nmod.dim - ln.rank(), || format!("{cn} vs {} - {}", b.nmod.dim, ln.rank()));
    let cap = Subspace::col_span(&ln).intersect(&b.zero).expect("same ambient");
    r.check("dim cl(E)_0", c0 == b.zero.dim() - cap.dim(), || format!("{c0} vs {} - {}", b.zero.dim(), cap.dim()));
    r
}

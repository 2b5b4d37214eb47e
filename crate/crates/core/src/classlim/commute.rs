//! Comparing `cl ∘ red` with `red ∘ cl`: the algebra isomorphisms `η`, the
//! twisted bimodules `μ`, `μ̂`, the 2-cells `μ(E)`, and their coherence.

use super::{
    cl_algebra, cl_bimod_morphism, cl_bimodule, cl_plain, cl_tensor_iso, cl_triple, cl_triple_morphism, cl_unit, class_mult, tensor_deformed,
    ClBimodule, ClPlain, ClTriple, DeformedAlgebra, DeformedBimodule, DeformedRef, DeformedTriple,
};
use crate::cbimod::{bimod3_hom_space, reduce_2morphism, reduce_bimodule, tensor3, Bimod3Morphism, MultIso, ReducedBimodule};
use crate::coiso::{reduce_morphism, Reduced, TripleMorphism};
use crate::error::{CoisoError, Result};
use crate::exact_core::linalg::is_zero_vec;
use crate::exact_core::{induced_map, Field, Mat};
use crate::finalg::bimodule::kron_apply;
use crate::finalg::{associator, check_algebra_iso, left_unitor, right_unitor, tensor, tensor_maps, Algebra, PlainBimodule, QuotientAlgebra, Tensor};
use crate::morita::{reduced_equivalence, standard_equivalence, verify_equivalence, verify_plain_equivalence, EquivData, PlainEquiv};
use crate::report::Report;

fn inv<F: Field>(m: &Mat<F>, what: &str) -> Result<Mat<F>> {
    m.inverse().ok_or_else(|| CoisoError::Shape(format!("{what} is not invertible")))
}

/// Per-triple data: `η_A: cl(A_red) -> cl(A)_red` and the twisted regular bimodules.
#[derive(Clone, Debug)]
pub struct Side<F> {
    pub dt: DeformedRef<F>,
    pub cl: ClTriple<F>,
    pub red: Reduced<F>,
    /// `cl(A_red)`.
    pub cl_red: QuotientAlgebra<F>,
    /// `cl(A)_red`.
    pub red_cl: Reduced<F>,
    pub eta: Mat<F>,
    pub eta_inv: Mat<F>,
    /// `(cl(A)_red, cl(A_red))`-bimodule `cl(A_red)`.
    pub mu: PlainBimodule<F>,
    /// `(cl(A_red), cl(A)_red)`-bimodule `cl(A)_red`.
    pub mu_hat: PlainBimodule<F>,
    pub report: Report,
}

pub fn side<F: Field>(t: &DeformedRef<F>) -> Result<Side<F>> {
    let cl = cl_triple(t)?;
    let red = t.base.reduce();
    let cl_red = cl_algebra(&DeformedAlgebra { alg: red.alg.clone(), lambda: t.lambda_red(), order: t.order })?;
    let red_cl = cl.triple.reduce();
    let mut report = Report::new();
    let m = red_cl.quot.proj.mul(&cl.n_proj);
    let kills = |vs: Vec<Vec<F>>| vs.iter().all(|v| is_zero_vec(&m.apply(v)));
    report.check("η kills A_0", kills(t.base.zero_n.vectors()), || "A_0 survives in cl(A)_red".into());
    report.check("η kills λA_N", kills(cl.n_quot.sub.vectors()), || "λA_N survives in cl(A)_red".into());
    let eta = m.mul(&red.quot.sect).mul(&cl_red.quot.sect);
    let lifted: Vec<Vec<F>> = cl_red.quot.sub.vectors().iter().map(|v| red.quot.sect.apply(v)).collect();
    report.check("η kills λA_red", kills(lifted), || "λA_red survives".into());
    report.absorb("η", check_algebra_iso(&cl_red.alg, &red_cl.alg, &eta));
    let eta_inv = inv(&eta, "η")?;
    let mu = PlainBimodule::regular(&cl_red.alg).twist(&red_cl.alg, &eta_inv, &cl_red.alg, &Mat::identity(cl_red.alg.dim));
    let mu_hat = PlainBimodule::regular(&red_cl.alg).twist(&cl_red.alg, &eta, &red_cl.alg, &Mat::identity(red_cl.alg.dim));
    Ok(Side { dt: t.clone(), cl, red, cl_red, red_cl, eta, eta_inv, mu, mu_hat, report })
}

/// `η_{A'} ∘ cl(red f) = red(cl f) ∘ η_A`.
pub fn eta_naturality<F: Field>(f: &TripleMorphism<F>, s: &Side<F>, t: &Side<F>) -> Result<bool> {
    let red_f = reduce_morphism(f)?;
    let cl_red_f = induced_map(&s.cl_red.quot, &red_f, &t.cl_red.quot).ok_or_else(|| CoisoError::Shape("red f is not λ-linear".into()))?;
    let cl_f = cl_triple_morphism(f, &s.dt, &t.dt, &s.cl, &t.cl)?;
    let red_cl_f = reduce_morphism(&cl_f)?;
    Ok(t.eta.mul(&cl_red_f) == red_cl_f.mul(&s.eta))
}

/// Per-bimodule data: `η(E): cl(E_red) -> cl(E)_red`.
#[derive(Clone, Debug)]
pub struct BimodSide<F> {
    pub red: ReducedBimodule<F>,
    /// `cl(E_red)`.
    pub phi: ClPlain<F>,
    pub cl: ClBimodule<F>,
    /// `cl(E)_red`.
    pub psi: ReducedBimodule<F>,
    pub eta: Mat<F>,
    pub eta_inv: Mat<F>,
    pub report: Report,
}

pub fn bimod_side<F: Field>(e: &DeformedBimodule<F>, b: &Side<F>, a: &Side<F>) -> Result<BimodSide<F>> {
    let red = reduce_bimodule(&e.base);
    let phi = cl_plain(&red.module, &b.dt.lambda_red(), &b.cl_red, &a.cl_red);
    let cl = cl_bimodule(e, &b.cl, &a.cl)?;
    let psi = reduce_bimodule(&cl.module);
    let mut report = Report::new();
    report.absorb("cl(E)", cl.report.clone());
    let m = psi.quot.proj.mul(&cl.n.proj).mul(&red.quot.sect);
    let ok = phi.quot.sub.vectors().iter().all(|v| is_zero_vec(&m.apply(v)));
    report.check("η(E) kills λE_red", ok, || "λE_red survives".into());
    let eta = m.mul(&phi.quot.sect);
    let twisted = (0..b.cl_red.alg.dim).all(|p| eta.mul(&phi.module.lact[p]) == psi.module.lact_of(&b.eta.col(p)).mul(&eta))
        && (0..a.cl_red.alg.dim).all(|q| eta.mul(&phi.module.ract[q]) == psi.module.ract_of(&a.eta.col(q)).mul(&eta));
    report.check("η(E) is η-twisted linear", twisted, || "η(E) fails to intertwine".into());
    let eta_inv = inv(&eta, "η(E)")?;
    report.pass("η(E) invertible");
    Ok(BimodSide { red, phi, cl, psi, eta, eta_inv, report })
}

/// `h: X -> Y` turned into `M_L ⊗ X -> Y ⊗ M_R`.
#[derive(Clone, Debug)]
pub struct MuData<F> {
    pub src: Tensor<F>,
    pub tgt: Tensor<F>,
    pub mu: Mat<F>,
    pub inverse: Mat<F>,
    pub report: Report,
}

/// `ml`, `mr` are regular bimodules with twisted left action; `eta_r` undoes the twist of `mr`.
pub fn mu_twist<F: Field>(h: &Mat<F>, x: &PlainBimodule<F>, y: &PlainBimodule<F>, ml: &PlainBimodule<F>, mr: &PlainBimodule<F>, eta_r: &Mat<F>) -> Result<MuData<F>> {
    let src = tensor(ml, x)?;
    let tgt = tensor(y, mr)?;
    let left = left_unitor(&src, x);
    let y_tw = y.twist(&y.left.clone(), &Mat::identity(y.left.dim), &mr.right.clone(), eta_r);
    let right = right_unitor(&tgt, &y_tw);
    let mu = inv(&right, "y ⊗ q -> y q")?.mul(h).mul(&left);
    let inverse = inv(&mu, "μ")?;
    let mut report = Report::new();
    report.check("bimodule map", src.module.is_hom_to(&tgt.module, &mu), || "μ fails to intertwine".into());
    report.check("inverse is a bimodule map", tgt.module.is_hom_to(&src.module, &inverse), || "μ^{-1} fails to intertwine".into());
    Ok(MuData { src, tgt, mu, inverse, report })
}

/// `μ(E): μ_B ⊗ cl(E_red) -> cl(E)_red ⊗ μ_A`.
pub fn mu_e<F: Field>(s: &BimodSide<F>, b: &Side<F>, a: &Side<F>) -> Result<MuData<F>> {
    mu_twist(&s.eta, &s.phi.module, &s.psi.module, &b.mu, &a.mu, &a.eta)
}

/// `μ̂(E): μ̂_B ⊗ cl(E)_red -> cl(E_red) ⊗ μ̂_A`.
pub fn mu_hat_e<F: Field>(s: &BimodSide<F>, b: &Side<F>, a: &Side<F>) -> Result<MuData<F>> {
    mu_twist(&s.eta_inv, &s.psi.module, &s.phi.module, &b.mu_hat, &a.mu_hat, &a.eta_inv)
}

/// `u ⊗ v -> θ(u) v` on `t` into the regular bimodule of `alg`.
fn pair_into<F: Field>(t: &Tensor<F>, theta: &Mat<F>, alg: &Algebra<F>) -> Mat<F> {
    let d = alg.dim;
    let cols: Vec<Vec<F>> = t
        .quot
        .sect
        .col_vecs()
        .iter()
        .map(|s| {
            let w = kron_apply(theta, &Mat::identity(t.edim), s);
            let mut out = vec![F::zero(); d];
            for p in 0..theta.rows {
                let row = &w[p * t.edim..(p + 1) * t.edim];
                if !is_zero_vec(row) {
                    out = crate::exact_core::linalg::vec_add(&out, &alg.mul(&alg.basis_vec(p), row));
                }
            }
            out
        })
        .collect();
    Mat::from_cols(&cols, d)
}

/// `Γ_A: μ̂_A ⊗ μ_A -> cl(A_red)` and `Γ̂_A: μ_A ⊗ μ̂_A -> cl(A)_red`.
#[derive(Clone, Debug)]
pub struct Gammas<F> {
    pub t: Tensor<F>,
    pub gamma: Mat<F>,
    pub t_hat: Tensor<F>,
    pub gamma_hat: Mat<F>,
    pub report: Report,
}

pub fn gammas<F: Field>(s: &Side<F>) -> Result<Gammas<F>> {
    let t = tensor(&s.mu_hat, &s.mu)?;
    let gamma = pair_into(&t, &s.eta_inv, &s.cl_red.alg);
    let t_hat = tensor(&s.mu, &s.mu_hat)?;
    let gamma_hat = pair_into(&t_hat, &s.eta, &s.red_cl.alg);
    let mut report = Report::new();
    let reg = PlainBimodule::regular(&s.cl_red.alg);
    let reg_hat = PlainBimodule::regular(&s.red_cl.alg);
    report.check("Γ bimodule map", t.module.is_hom_to(&reg, &gamma), || "Γ fails to intertwine".into());
    report.check("Γ invertible", gamma.is_square() && gamma.inverse().is_some(), || format!("rank {}", gamma.rank()));
    report.check("Γ̂ bimodule map", t_hat.module.is_hom_to(&reg_hat, &gamma_hat), || "Γ̂ fails to intertwine".into());
    report.check("Γ̂ invertible", gamma_hat.is_square() && gamma_hat.inverse().is_some(), || format!("rank {}", gamma_hat.rank()));
    Ok(Gammas { t, gamma, t_hat, gamma_hat, report })
}

/// `r ∘ (id ⊗ Γ_A) ∘ a ∘ (β(E) ⊗ id) ∘ a^{-1} ∘ (id ⊗ α(E)) ∘ a = l ∘ (Γ_B ⊗ id)` on `(β_B ⊗ α_B) ⊗ X`.
#[allow(clippy::too_many_arguments)]
fn modification<F: Field>(
    x: &PlainBimodule<F>,
    beta_b: &PlainBimodule<F>,
    alpha_a: &PlainBimodule<F>,
    alpha_e: &MuData<F>,
    beta_e: &MuData<F>,
    gamma_b: (&Tensor<F>, &Mat<F>),
    gamma_a: (&Tensor<F>, &Mat<F>),
) -> Result<bool> {
    let (tb, gb) = gamma_b;
    let (ta, ga) = gamma_a;
    let s0 = tensor(&tb.module, x)?;
    let s1 = tensor(beta_b, &alpha_e.src.module)?;
    let a01 = associator(tb, &s0, &alpha_e.src, &s1);
    let s2 = tensor(beta_b, &alpha_e.tgt.module)?;
    let w12 = tensor_maps(&s1, &Mat::identity(beta_b.dim), &alpha_e.mu, &s2);
    let s3 = tensor(&beta_e.src.module, alpha_a)?;
    let a23 = inv(&associator(&beta_e.src, &s3, &alpha_e.tgt, &s2), "associator")?;
    let s4 = tensor(&beta_e.tgt.module, alpha_a)?;
    let w34 = tensor_maps(&s3, &beta_e.mu, &Mat::identity(alpha_a.dim), &s4);
    let s5 = tensor(x, &ta.module)?;
    let a45 = associator(&beta_e.tgt, &s4, ta, &s5);
    let reg_a = PlainBimodule::regular(&x.right);
    let s6 = tensor(x, &reg_a)?;
    let w56 = tensor_maps(&s5, &Mat::identity(x.dim), ga, &s6);
    let lhs = right_unitor(&s6, x).mul(&w56).mul(&a45).mul(&w34).mul(&a23).mul(&w12).mul(&a01);
    let reg_b = PlainBimodule::regular(&x.left);
    let s7 = tensor(&reg_b, x)?;
    let rhs = left_unitor(&s7, x).mul(&tensor_maps(&s0, gb, &Mat::identity(x.dim), &s7));
    Ok(lhs == rhs)
}

/// The big and small diagrams compare `μ` with the multiplication and unit
/// isomorphisms of `cl ∘ red` and `red ∘ cl`.
pub fn big_diagram<F: Field>(g: &DeformedBimodule<F>, f: &DeformedBimodule<F>, c: &Side<F>, b: &Side<F>, a: &Side<F>) -> Result<Report> {
    let mut r = Report::new();
    let gs = bimod_side(g, c, b)?;
    let fs = bimod_side(f, b, a)?;
    let (gf, t_gf) = tensor_deformed(g, f)?;
    let gfs = bimod_side(&gf, c, a)?;
    let (mu_g, mu_f, mu_gf) = (mu_e(&gs, c, b)?, mu_e(&fs, b, a)?, mu_e(&gfs, c, a)?);

    let m_red = MultIso::new(&g.base, &f.base, &t_gf, &gs.red, &fs.red, &gfs.red)?;
    r.absorb("m^red", m_red.report.clone());
    let cl_t = cl_plain(&m_red.tensor.module, &c.dt.lambda_red(), &c.cl_red, &a.cl_red);
    let t_phi = tensor(&gs.phi.module, &fs.phi.module)?;
    let (m_cl, _) = class_mult(&gs.phi.quot, &fs.phi.quot, &t_phi, &m_red.tensor, &cl_t.quot, &mut r, "m^cl(red)");
    let cl_m_red = induced_map(&cl_t.quot, &m_red.m, &gfs.phi.quot).ok_or_else(|| CoisoError::Shape("m^red is not λ-linear".into()))?;
    let m_phi = cl_m_red.mul(&m_cl);

    let t3 = tensor3(&gs.cl.module, &fs.cl.module)?;
    let red_t3 = reduce_bimodule(&t3.module);
    let m_red_cl = MultIso::new(&gs.cl.module, &fs.cl.module, &t3, &gs.psi, &fs.psi, &red_t3)?;
    r.absorb("m^red(cl)", m_red_cl.report.clone());
    let m_cl3 = cl_tensor_iso(&gs.cl, &fs.cl, &t_gf, &gfs.cl)?;
    r.absorb("m^cl", m_cl3.report.clone());
    let m_psi = reduce_2morphism(&m_cl3.m, &red_t3, &gfs.psi)?.mul(&m_red_cl.m);
    let t_psi = &m_red_cl.tensor;

    let s = tensor(&c.mu, &t_phi.module)?;
    let path1 = mu_gf.mu.mul(&tensor_maps(&s, &Mat::identity(c.mu.dim), &m_phi, &mu_gf.src));
    let p1 = tensor(&mu_g.src.module, &fs.phi.module)?;
    let a_inv = inv(&associator(&mu_g.src, &p1, &t_phi, &s), "associator")?;
    let p2 = tensor(&mu_g.tgt.module, &fs.phi.module)?;
    let w12 = tensor_maps(&p1, &mu_g.mu, &Mat::identity(fs.phi.module.dim), &p2);
    let p3 = tensor(&gs.psi.module, &mu_f.src.module)?;
    let a23 = associator(&mu_g.tgt, &p2, &mu_f.src, &p3);
    let p4 = tensor(&gs.psi.module, &mu_f.tgt.module)?;
    let w34 = tensor_maps(&p3, &Mat::identity(gs.psi.module.dim), &mu_f.mu, &p4);
    let p5 = tensor(&t_psi.module, &a.mu)?;
    let a45 = inv(&associator(t_psi, &p5, &mu_f.tgt, &p4), "associator")?;
    let w5 = tensor_maps(&p5, &m_psi, &Mat::identity(a.mu.dim), &mu_gf.tgt);
    let path2 = w5.mul(&a45).mul(&w34).mul(&a23).mul(&w12).mul(&a_inv);
    r.check("big diagram", path1 == path2, || "μ(g⊗f) ∘ (id ⊗ m^Φ) differs from the composite through μ(g), μ(f)".into());
    Ok(r)
}

/// `μ(Id_A) ∘ (id ⊗ u^Φ) = (u^Ψ ⊗ id) ∘ l^{-1} ∘ r`.
pub fn small_diagram<F: Field>(a: &Side<F>) -> Result<Report> {
    let mut r = Report::new();
    let id = DeformedBimodule::identity(&a.dt);
    let ids = bimod_side(&id, a, a)?;
    let mu = mu_e(&ids, a, a)?;
    let reg = PlainBimodule::regular(&a.cl_red.alg);
    let reg_hat = PlainBimodule::regular(&a.red_cl.alg);
    let u_phi = Mat::identity(reg.dim);
    r.check("u^Φ bimodule iso", reg.is_hom_to(&ids.phi.module, &u_phi), || "identity is not a map cl(A_red) -> Φ(Id)".into());
    let u_psi = induced_map(&a.red_cl.quot, &cl_unit(&a.cl).n, &ids.psi.quot).ok_or_else(|| CoisoError::Shape("u does not descend".into()))?;
    r.check("u^Ψ bimodule iso", reg_hat.is_hom_to(&ids.psi.module, &u_psi) && u_psi.inverse().is_some(), || "u^Ψ fails".into());
    let t1 = tensor(&a.mu, &reg)?;
    let t2 = tensor(&reg_hat, &a.mu)?;
    let lhs = mu.mu.mul(&tensor_maps(&t1, &Mat::identity(a.mu.dim), &u_phi, &mu.src));
    let l_inv = inv(&left_unitor(&t2, &a.mu), "left unitor")?;
    let rhs = tensor_maps(&t2, &u_psi, &Mat::identity(a.mu.dim), &mu.tgt).mul(&l_inv).mul(&right_unitor(&t1, &a.mu));
    r.check("small diagram", lhs == rhs, || "unit paths differ".into());
    Ok(r)
}

/// `Ψα ⊗ id ∘ μ(E) = μ(E) ∘ id ⊗ Φα` and the same for `μ̂(E)`.
pub fn mu_naturality<F: Field>(alpha: &Bimod3Morphism<F>, s: &BimodSide<F>, mu: &MuData<F>, mu_hat: &MuData<F>) -> Result<bool> {
    let red_a = reduce_2morphism(alpha, &s.red, &s.red)?;
    let phi_a = induced_map(&s.phi.quot, &red_a, &s.phi.quot).ok_or_else(|| CoisoError::Shape("red α is not λ-linear".into()))?;
    let psi_a = reduce_2morphism(&cl_bimod_morphism(alpha, &s.cl, &s.cl)?, &s.psi, &s.psi)?;
    let id_l = Mat::identity(mu.src.fdim);
    let id_r = Mat::identity(mu.tgt.edim);
    let ok = mu.mu.mul(&tensor_maps(&mu.src, &id_l, &phi_a, &mu.src)) == tensor_maps(&mu.tgt, &psi_a, &id_r, &mu.tgt).mul(&mu.mu);
    let id_l = Mat::identity(mu_hat.src.fdim);
    let id_r = Mat::identity(mu_hat.tgt.edim);
    let ok_hat =
        mu_hat.mu.mul(&tensor_maps(&mu_hat.src, &id_l, &psi_a, &mu_hat.src)) == tensor_maps(&mu_hat.tgt, &phi_a, &id_r, &mu_hat.tgt).mul(&mu_hat.mu);
    Ok(ok && ok_hat)
}

#[derive(Clone, Debug)]
pub struct CommuteOptions {
    /// How many hom-space basis endomorphisms to test naturality against.
    pub endomorphisms: usize,
}

impl Default for CommuteOptions {
    fn default() -> Self {
        CommuteOptions { endomorphisms: 3 }
    }
}

/// Every commutation check for `f`, plus the big diagram when `g ⊗ f` is given.
pub fn check_commute<F: Field>(g: Option<&DeformedBimodule<F>>, f: &DeformedBimodule<F>, opts: &CommuteOptions) -> Result<Report> {
    let mut r = Report::new();
    let r0 = f.validate();
    if !r0.passed() {
        return Err(CoisoError::invalid("deformed bimodule", r0));
    }
    let (b, a) = (side(&f.left)?, side(&f.right)?);
    r.absorb("η_B", b.report.clone());
    r.absorb("η_A", a.report.clone());
    let fs = bimod_side(f, &b, &a)?;
    r.absorb("η(E)", fs.report.clone());
    let mu = mu_e(&fs, &b, &a)?;
    let mu_hat = mu_hat_e(&fs, &b, &a)?;
    r.absorb("μ(E)", mu.report.clone());
    r.absorb("μ̂(E)", mu_hat.report.clone());
    let (gb, ga) = (gammas(&b)?, gammas(&a)?);
    r.absorb("Γ_B", gb.report.clone());
    r.absorb("Γ_A", ga.report.clone());
    let sq = modification(&fs.phi.module, &b.mu_hat, &a.mu, &mu, &mu_hat, (&gb.t, &gb.gamma), (&ga.t, &ga.gamma))?;
    r.check("modification Γ", sq, || "Γ square fails".into());
    let sq_hat = modification(&fs.psi.module, &b.mu, &a.mu_hat, &mu_hat, &mu, (&gb.t_hat, &gb.gamma_hat), (&ga.t_hat, &ga.gamma_hat))?;
    r.check("modification Γ̂", sq_hat, || "Γ̂ square fails".into());
    r.absorb("unit A", small_diagram(&a)?);
    r.absorb("unit B", small_diagram(&b)?);
    for (i, alpha) in bimod3_hom_space(&f.base, &f.base).iter().take(opts.endomorphisms).enumerate() {
        let ok = mu_naturality(alpha, &fs, &mu, &mu_hat)?;
        r.check(format!("μ natural in α_{i}"), ok, || "naturality square fails".into());
    }
    if let Some(g) = g {
        let r1 = g.validate();
        if !r1.passed() {
            return Err(CoisoError::invalid("deformed bimodule", r1));
        }
        let c = side(&g.left)?;
        r.absorb("η_C", c.report.clone());
        r.absorb("composition", big_diagram(g, f, &c, &b, &a)?);
    }
    Ok(r)
}

/// `λ I` in `Mat_n(A)`.
pub fn matrix_lambda<F: Field>(lambda: &[F], n: usize) -> Vec<F> {
    let d = lambda.len();
    let mut v = vec![F::zero(); n * n * d];
    for p in 0..n {
        for (i, x) in lambda.iter().enumerate() {
            v[(p * n + p) * d + i] = x.clone();
        }
    }
    v
}

fn cl_plain_equiv<F: Field>(p: &PlainEquiv<F>, b: &Side<F>, a: &Side<F>, r: &mut Report) -> Result<PlainEquiv<F>> {
    let (lb, la) = (b.dt.lambda_red(), a.dt.lambda_red());
    let e = cl_plain(&p.e, &lb, &b.cl_red, &a.cl_red);
    let ep = cl_plain(&p.e_prime, &la, &a.cl_red, &b.cl_red);
    let t_ee = tensor(&ep.module, &e.module)?;
    let t_eb = tensor(&e.module, &ep.module)?;
    let c_ee = cl_plain(&p.t_ee.module, &la, &a.cl_red, &a.cl_red);
    let c_eb = cl_plain(&p.t_eb.module, &lb, &b.cl_red, &b.cl_red);
    let (m1, _) = class_mult(&ep.quot, &e.quot, &t_ee, &p.t_ee, &c_ee.quot, r, "m^cl(E',E)");
    let (m2, _) = class_mult(&e.quot, &ep.quot, &t_eb, &p.t_eb, &c_eb.quot, r, "m^cl(E,E')");
    let err = || CoisoError::Shape("pairing is not λ-linear".into());
    let phi = induced_map(&c_ee.quot, &p.phi, &a.cl_red.quot).ok_or_else(err)?.mul(&m1);
    let psi = induced_map(&c_eb.quot, &p.psi, &b.cl_red.quot).ok_or_else(err)?.mul(&m2);
    Ok(PlainEquiv { e: e.module, e_prime: ep.module, t_ee, t_eb, phi, psi })
}

fn cl_equiv<F: Field>(d: &EquivData<F>, e: &DeformedBimodule<F>, ep: &DeformedBimodule<F>, b: &Side<F>, a: &Side<F>, r: &mut Report) -> Result<EquivData<F>> {
    let ce = cl_bimodule(e, &b.cl, &a.cl)?;
    let cep = cl_bimodule(ep, &a.cl, &b.cl)?;
    let (ide_a, ide_b) = (cl_bimodule(&DeformedBimodule::identity(&a.dt), &a.cl, &a.cl)?, cl_bimodule(&DeformedBimodule::identity(&b.dt), &b.cl, &b.cl)?);
    let (ee, _) = tensor_deformed(ep, e)?;
    let (eb, _) = tensor_deformed(e, ep)?;
    let (c_ee, c_eb) = (cl_bimodule(&ee, &a.cl, &a.cl)?, cl_bimodule(&eb, &b.cl, &b.cl)?);
    let m1 = cl_tensor_iso(&cep, &ce, &d.t_ee, &c_ee)?;
    let m2 = cl_tensor_iso(&ce, &cep, &d.t_eb, &c_eb)?;
    r.absorb("m^cl(E',E)", m1.report.clone());
    r.absorb("m^cl(E,E')", m2.report.clone());
    let err = || CoisoError::Shape("unit is not invertible".into());
    let ua = cl_unit(&a.cl).inverse().ok_or_else(err)?;
    let ub = cl_unit(&b.cl).inverse().ok_or_else(err)?;
    let phi = ua.compose(&cl_bimod_morphism(&d.phi, &c_ee, &ide_a)?).compose(&m1.m);
    let psi = ub.compose(&cl_bimod_morphism(&d.psi, &c_eb, &ide_b)?).compose(&m2.m);
    EquivData::new(ce.module, cep.module, phi, psi)
}

/// The standard Morita equivalence over a deformed triple sent through both
/// `cl ∘ red` and `red ∘ cl`, with the two results compared via `η`.
pub fn picard_check<F: Field>(a_t: &DeformedRef<F>, n: usize) -> Result<Report> {
    let mut r = Report::new();
    let d = standard_equivalence(&a_t.base, n)?;
    let b_t = DeformedTriple::new(d.b().clone(), matrix_lambda(&a_t.lambda, n), a_t.order)?;
    let e = DeformedBimodule { base: d.e.clone(), left: b_t.clone(), right: a_t.clone() };
    let ep = DeformedBimodule { base: d.e_prime.clone(), left: a_t.clone(), right: b_t.clone() };
    r.absorb("E deformed", e.validate());
    r.absorb("E' deformed", ep.validate());
    let (b, a) = (side(&b_t)?, side(a_t)?);

    let (pe, rep) = reduced_equivalence(&d)?;
    r.absorb("red", rep);
    let phi_side = cl_plain_equiv(&pe, &b, &a, &mut r)?;
    r.absorb("cl∘red", verify_plain_equivalence(&phi_side));

    let cd = cl_equiv(&d, &e, &ep, &b, &a, &mut r)?;
    r.absorb("cl", verify_equivalence(&cd));
    let (psi_side, rep) = reduced_equivalence(&cd)?;
    r.absorb("red∘cl", rep);

    let (es, eps) = (bimod_side(&e, &b, &a)?, bimod_side(&ep, &a, &b)?);
    r.absorb("η(E)", es.report.clone());
    r.absorb("η(E')", eps.report.clone());
    let lhs = a.eta.mul(&phi_side.phi);
    let rhs = psi_side.phi.mul(&tensor_maps(&phi_side.t_ee, &eps.eta, &es.eta, &psi_side.t_ee));
    r.check("η_A ∘ φ^Φ = φ^Ψ ∘ (η(E') ⊗ η(E))", lhs == rhs, || "φ not compatible".into());
    let lhs = b.eta.mul(&phi_side.psi);
    let rhs = psi_side.psi.mul(&tensor_maps(&phi_side.t_eb, &es.eta, &eps.eta, &psi_side.t_eb));
    r.check("η_B ∘ ψ^Φ = ψ^Ψ ∘ (η(E) ⊗ η(E'))", lhs == rhs, || "ψ not compatible".into());
    Ok(r)
}

/// Dimensions `(cl(A_red), cl(A)_red)`; equal whenever `η` exists.
pub fn reduced_dims<F: Field>(s: &Side<F>) -> (usize, usize) {
    (s.cl_red.alg.dim, s.red_cl.alg.dim)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::exact_core::Q;

    fn fails(r: &Report) -> Vec<String> {
        r.failures().map(|c| format!("{}: {:?}", c.name, c.witness)).collect()
    }

    #[test]
    fn eta_on_fixtures() {
        for t in [unred(&dual::<Q>()), unred(&cliff::<Q>()), cliff_dirac::<Q>(), dual_dirac::<Q>(), unred(&dual_tensor_nil::<Q>())] {
            let s = side(&t).unwrap();
            assert!(s.report.passed(), "{}: {:?}", t.base.label, fails(&s.report));
        }
        let s = side(&cliff_dirac::<Q>()).unwrap();
        assert_eq!(reduced_dims(&s), (1, 1));
        let s = side(&unred(&cliff::<Q>())).unwrap();
        assert_eq!(reduced_dims(&s), (2, 2));
    }

    #[test]
    fn commute_on_identities() {
        for t in [cliff_dirac::<Q>(), unred(&dual::<Q>()), dual_dirac::<Q>()] {
            let id = DeformedBimodule::identity(&t);
            let r = check_commute(Some(&id), &id, &CommuteOptions::default()).unwrap();
            assert!(r.passed(), "{}: {:?}", t.base.label, fails(&r));
        }
    }

    #[test]
    fn picard_dual() {
        for t in [unred(&dual::<Q>()), dual_dirac::<Q>()] {
            let r = picard_check(&t, 2).unwrap();
            assert!(r.passed(), "{}: {:?}", t.base.label, fails(&r));
        }
    }

    #[test]
    fn broken_mu_is_caught() {
        let t = unred(&cliff::<Q>());
        let id = DeformedBimodule::identity(&t);
        let a = side(&t).unwrap();
        let s = bimod_side(&id, &a, &a).unwrap();
        let mut mu = mu_e(&s, &a, &a).unwrap();
        let mu_hat = mu_hat_e(&s, &a, &a).unwrap();
        let g = gammas(&a).unwrap();
        assert!(modification(&s.phi.module, &a.mu_hat, &a.mu, &mu, &mu_hat, (&g.t, &g.gamma), (&g.t, &g.gamma)).unwrap());
        mu.mu = mu.mu.scale(&Q::from_i64(2));
        assert!(!modification(&s.phi.module, &a.mu_hat, &a.mu, &mu, &mu_hat, (&g.t, &g.gamma), (&g.t, &g.gamma)).unwrap());
    }

    #[test]
    fn random_commute_and_eta_naturality() {
        use super::super::random::{deformed_chain, deformed_triple_morphism};
        use crate::cbimod::random::rng;
        for seed in 0..30u64 {
            let mut r = rng(seed);
            let c = deformed_chain::<Q>(&mut r, 2, 3);
            let rep = check_commute(Some(&c[0]), &c[1], &CommuteOptions::default()).unwrap();
            assert!(rep.passed(), "seed {seed}: {:?}", fails(&rep));
            let t = c[1].right.clone();
            let (f, tgt) = deformed_triple_morphism(&mut r, &t);
            assert!(eta_naturality(&f, &side(&t).unwrap(), &side(&tgt).unwrap()).unwrap(), "seed {seed}");
        }
    }
}

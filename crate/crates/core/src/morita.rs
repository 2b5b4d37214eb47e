//! Morita equivalence data for triples: the standard `Mat_n` family, witness
//! verification, dual bases, idempotents and the structure of equivalence bimodules.

use crate::cbimod::{
    check_bimod_iso, reduce_2morphism, reduce_bimodule, tensor3, Bimod3Morphism, Bimodule3, MultIso, Tensor3,
};
use crate::coiso::{matrix_triple, TripleRef};
use crate::error::{CoisoError, Result};
use crate::exact_core::linalg::{unit_vec, vec_add, vec_kron};
use crate::exact_core::{quotient, solve_one, Field, Mat, Subspace};
use crate::finalg::bimodule::kron_apply;
use crate::finalg::{check_algebra_iso, endomorphism_algebra, intertwiners, Algebra, PlainBimodule, Tensor};
use crate::report::Report;

/// `E` over `(B, A)`, `E'` over `(A, B)`, `φ: E' ⊗ E -> A`, `ψ: E ⊗ E' -> B`.
#[derive(Clone, Debug)]
pub struct EquivData<F> {
    pub e: Bimodule3<F>,
    pub e_prime: Bimodule3<F>,
    pub phi: Bimod3Morphism<F>,
    pub psi: Bimod3Morphism<F>,
    /// `E' ⊗ E`.
    pub t_ee: Tensor3<F>,
    /// `E ⊗ E'`.
    pub t_eb: Tensor3<F>,
}

impl<F: Field> EquivData<F> {
    pub fn new(e: Bimodule3<F>, e_prime: Bimodule3<F>, phi: Bimod3Morphism<F>, psi: Bimod3Morphism<F>) -> Result<Self> {
        let t_ee = tensor3(&e_prime, &e)?;
        let t_eb = tensor3(&e, &e_prime)?;
        let shapes = phi.tot.cols == t_ee.tot.dim()
            && phi.n.cols == t_ee.n.dim()
            && psi.tot.cols == t_eb.tot.dim()
            && psi.n.cols == t_eb.n.dim();
        if !shapes {
            return Err(CoisoError::Shape("φ or ψ does not match the tensor products".into()));
        }
        Ok(EquivData { e, e_prime, phi, psi, t_ee, t_eb })
    }

    pub fn b(&self) -> &TripleRef<F> {
        &self.e.left
    }

    pub fn a(&self) -> &TripleRef<F> {
        &self.e.right
    }

    pub fn project_tot(&self) -> PlainEquiv<F> {
        PlainEquiv {
            e: self.e.tot.clone(),
            e_prime: self.e_prime.tot.clone(),
            t_ee: self.t_ee.tot.clone(),
            t_eb: self.t_eb.tot.clone(),
            phi: self.phi.tot.clone(),
            psi: self.psi.tot.clone(),
        }
    }

    pub fn project_n(&self) -> PlainEquiv<F> {
        PlainEquiv {
            e: self.e.nmod.clone(),
            e_prime: self.e_prime.nmod.clone(),
            t_ee: self.t_ee.n.clone(),
            t_eb: self.t_eb.n.clone(),
            phi: self.phi.n.clone(),
            psi: self.psi.n.clone(),
        }
    }
}

/// Classical Morita data between two algebras.
#[derive(Clone, Debug)]
pub struct PlainEquiv<F> {
    pub e: PlainBimodule<F>,
    pub e_prime: PlainBimodule<F>,
    pub t_ee: Tensor<F>,
    pub t_eb: Tensor<F>,
    pub phi: Mat<F>,
    pub psi: Mat<F>,
}

/// Invertible bimodule maps `φ`, `ψ` with `ψ(x ⊗ x') y = x φ(x' ⊗ y)`.
pub fn verify_plain_equivalence<F: Field>(p: &PlainEquiv<F>) -> Report {
    let mut r = Report::new();
    let (b, a) = (&p.e.left, &p.e.right);
    r.check("φ is a bimodule map", p.t_ee.module.is_hom_to(&PlainBimodule::regular(a), &p.phi), || "φ fails to intertwine".into());
    r.check("ψ is a bimodule map", p.t_eb.module.is_hom_to(&PlainBimodule::regular(b), &p.psi), || "ψ fails to intertwine".into());
    r.check("φ invertible", p.phi.is_square() && p.phi.inverse().is_some(), || format!("{}x{} rank {}", p.phi.rows, p.phi.cols, p.phi.rank()));
    r.check("ψ invertible", p.psi.is_square() && p.psi.inverse().is_some(), || format!("{}x{} rank {}", p.psi.rows, p.psi.cols, p.psi.rank()));
    let (ed, fd) = (p.e.dim, p.e_prime.dim);
    let lefts: Vec<Vec<Mat<F>>> = (0..ed)
        .map(|x| (0..fd).map(|xp| p.e.lact_of(&p.psi.apply(&p.t_eb.class_of(&unit_vec(ed, x), &unit_vec(fd, xp))))).collect())
        .collect();
    let rights: Vec<Vec<Mat<F>>> = (0..fd)
        .map(|xp| (0..ed).map(|y| p.e.ract_of(&p.phi.apply(&p.t_ee.class_of(&unit_vec(fd, xp), &unit_vec(ed, y))))).collect())
        .collect();
    let mut bad = None;
    'outer: for x in 0..ed {
        for xp in 0..fd {
            for y in 0..ed {
                if lefts[x][xp].col(y) != rights[xp][y].col(x) {
                    bad = Some(format!("basis triple ({x}, {xp}, {y})"));
                    break 'outer;
                }
            }
        }
    }
    r.check("ψ(x⊗x')·y = x·φ(x'⊗y)", bad.is_none(), || bad.clone().unwrap_or_default());
    r
}

/// Full verification of equivalence data, itemized.
pub fn verify_equivalence<F: Field>(d: &EquivData<F>) -> Report {
    let mut r = Report::new();
    r.absorb("E", d.e.validate());
    r.absorb("E'", d.e_prime.validate());
    let id_a = Bimodule3::identity(d.a());
    let id_b = Bimodule3::identity(d.b());
    r.absorb("φ", check_bimod_iso(&d.t_ee.module, &id_a, &d.phi));
    r.absorb("ψ", check_bimod_iso(&d.t_eb.module, &id_b, &d.psi));
    r.absorb("tot", verify_plain_equivalence(&d.project_tot()));
    r.absorb("N", verify_plain_equivalence(&d.project_n()));
    r.check("ι_E' ⊗ ι_E injective", d.t_ee.module.iota_injective(), || "E' ⊗ E has non-injective ι".into());
    r.check("ι_E ⊗ ι_E' injective", d.t_eb.module.iota_injective(), || "E ⊗ E' has non-injective ι".into());
    r
}

/// Matrix of a bilinear pairing on the plain tensor, restricted to the balanced quotient.
fn descend_pairing<F: Field>(t: &Tensor<F>, plain: &Mat<F>, what: &str) -> Result<Mat<F>> {
    if !t.quot.sub.vectors().iter().all(|v| plain.apply(v).iter().all(|x| x.is_zero())) {
        return Err(CoisoError::Shape(format!("{what} is not balanced")));
    }
    Ok(plain.mul(&t.quot.sect))
}

/// Tot and N components of a pairing `F ⊗ E -> T` given on the tot level.
fn pairing_morphism<F: Field>(t: &Tensor3<F>, f: &Bimodule3<F>, e: &Bimodule3<F>, plain: &Mat<F>, target: &TripleRef<F>, what: &str) -> Result<Bimod3Morphism<F>> {
    let tot = descend_pairing(&t.tot, plain, what)?;
    let sect = &t.n.quot.sect;
    let cols = (0..sect.cols)
        .map(|c| {
            let v = plain.apply(&kron_apply(&f.iota, &e.iota, &sect.col(c)));
            target.n_sub.coords(&v).ok_or_else(|| CoisoError::Shape(format!("{what} leaves the N component")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Bimod3Morphism { tot, n: Mat::from_cols(&cols, target.n_sub.dim()) })
}

/// Components `(A_N)^n ⊆ A_tot^n` and `(A_0)^n` in coordinates of the former.
fn column_components<F: Field>(a: &TripleRef<F>, n: usize) -> (Subspace<F>, Vec<Vec<F>>) {
    let mut nv = Vec::new();
    for p in 0..n {
        for v in a.n_sub.vectors() {
            nv.push(vec_kron(&unit_vec(n, p), &v));
        }
    }
    let en = Subspace::span(n * a.tot.dim, &nv);
    let mut zv = Vec::new();
    for p in 0..n {
        for z in a.zero.vectors() {
            zv.push(en.coords(&vec_kron(&unit_vec(n, p), &z)).expect("A_0 ⊆ A_N"));
        }
    }
    (en, zv)
}

/// `Mat_n(A)` and `A` related by columns `A^n` and rows `A^n`.
pub fn standard_equivalence<F: Field>(a: &TripleRef<F>, n: usize) -> Result<EquivData<F>> {
    if n == 0 {
        return Err(CoisoError::Input("n must be at least 1".into()));
    }
    let b = matrix_triple(a, n).into_ref();
    let alg = &a.tot;
    let d = alg.dim;
    let bidx = |p: usize, q: usize, i: usize| (p * n + q) * d + i;

    // columns: (E_pq e_i) · (e_j at q) = e_i e_j at p
    let mut col_l = Vec::new();
    for p in 0..n {
        for q in 0..n {
            for i in 0..d {
                let mut m = Mat::zeros(n * d, n * d);
                for j in 0..d {
                    for (k, x) in alg.basis_mul(i, j).into_iter().enumerate() {
                        m.set(p * d + k, q * d + j, x);
                    }
                }
                col_l.push(m);
            }
        }
    }
    let blockdiag = |m: Mat<F>| Mat::identity(n).kron(&m);
    let col_r: Vec<Mat<F>> = (0..d).map(|j| blockdiag(alg.right_mat(&alg.basis_vec(j)))).collect();
    let e_tot = PlainBimodule { left: b.tot.clone(), right: alg.clone(), dim: n * d, lact: col_l, ract: col_r };

    // rows: (e_j at p) · (E_pq e_i) = e_j e_i at q
    let row_l: Vec<Mat<F>> = (0..d).map(|i| blockdiag(alg.left_mat(&alg.basis_vec(i)))).collect();
    let mut row_r = Vec::new();
    for p in 0..n {
        for q in 0..n {
            for i in 0..d {
                let mut m = Mat::zeros(n * d, n * d);
                for j in 0..d {
                    for (k, x) in alg.basis_mul(j, i).into_iter().enumerate() {
                        m.set(q * d + k, p * d + j, x);
                    }
                }
                row_r.push(m);
            }
        }
    }
    let ep_tot = PlainBimodule { left: alg.clone(), right: b.tot.clone(), dim: n * d, lact: row_l, ract: row_r };

    let (en, zv) = column_components(a, n);
    let e_n = e_tot.restrict_over(&en, b.n_alg(), &b.n_incl(), a.n_alg(), &a.n_incl());
    let ep_n = ep_tot.restrict_over(&en, a.n_alg(), &a.n_incl(), b.n_alg(), &b.n_incl());
    let zero = Subspace::span(en.dim(), &zv);
    let e = Bimodule3 {
        left: b.clone(),
        right: a.clone(),
        tot: e_tot,
        nmod: e_n,
        zero: zero.clone(),
        iota: en.inclusion(),
        label: format!("{}^{n} columns", a.label),
    };
    let ep = Bimodule3 {
        left: a.clone(),
        right: b.clone(),
        tot: ep_tot,
        nmod: ep_n,
        zero,
        iota: en.inclusion(),
        label: format!("{}^{n} rows", a.label),
    };

    let t_ee = tensor3(&ep, &e)?;
    let t_eb = tensor3(&e, &ep)?;
    let nd = n * d;
    // φ(row ⊗ col) = Σ_p r_p c_p
    let mut phi_plain = Mat::zeros(d, nd * nd);
    // ψ(col ⊗ row) = (c_p r_q)_{pq}
    let mut psi_plain = Mat::zeros(b.tot.dim, nd * nd);
    for p in 0..n {
        for i in 0..d {
            for q in 0..n {
                for j in 0..d {
                    let prod = alg.basis_mul(i, j);
                    for (k, x) in prod.iter().enumerate() {
                        if x.is_zero() {
                            continue;
                        }
                        if p == q {
                            phi_plain.set(k, (p * d + i) * nd + q * d + j, x.clone());
                        }
                        psi_plain.set(bidx(p, q, k), (p * d + i) * nd + q * d + j, x.clone());
                    }
                }
            }
        }
    }
    let phi = pairing_morphism(&t_ee, &ep, &e, &phi_plain, a, "φ")?;
    let psi = pairing_morphism(&t_eb, &e, &ep, &psi_plain, &b, "ψ")?;
    Ok(EquivData { e, e_prime: ep, phi, psi, t_ee, t_eb })
}

/// The identity equivalence `A ⊗ A -> A` on both sides.
pub fn identity_equivalence<F: Field>(a: &TripleRef<F>) -> Result<EquivData<F>> {
    let id = Bimodule3::identity(a);
    let t = tensor3(&id, &id)?;
    let lu = crate::cbimod::left_unitor3(&t, &id);
    EquivData::new(id.clone(), id, lu.clone(), lu)
}

/// Right-`A`-linear functionals `e^j: M -> A` with `Σ_j g_j e^j(x) = x`.
pub fn solve_dual_basis<F: Field>(m: &PlainBimodule<F>, gens: &[Vec<F>]) -> Result<Vec<Mat<F>>> {
    let a = &m.right;
    let pairs: Vec<(Mat<F>, Mat<F>)> = a.generators().iter().map(|g| (m.ract_of(g), a.right_mat(g))).collect();
    let hom = intertwiners(&pairs, m.dim, a.dim);
    // unknowns c_{jk}: e^j = Σ_k c_{jk} hom_k; column (j,k) is x -> g_j · hom_k(x), flattened
    let mut cols = Vec::new();
    for g in gens {
        for h in &hom {
            let mut col = Vec::with_capacity(m.dim * m.dim);
            let images: Vec<Vec<F>> = (0..m.dim).map(|x| m.ract_of(&h.col(x)).apply(g)).collect();
            for row in 0..m.dim {
                for img in &images {
                    col.push(img[row].clone());
                }
            }
            cols.push(col);
        }
    }
    let target = Mat::<F>::identity(m.dim).data;
    let sys = Mat::from_cols(&cols, m.dim * m.dim);
    let c = if cols.is_empty() {
        if m.dim == 0 { Some(vec![]) } else { None }
    } else {
        solve_one(&sys, &target)
    };
    let c = c.ok_or_else(|| CoisoError::NotProjective("not projective over given generators".into()))?;
    Ok((0..gens.len())
        .map(|j| {
            hom.iter().enumerate().fold(Mat::zeros(a.dim, m.dim), |acc, (k, h)| {
                let x = &c[j * hom.len() + k];
                if x.is_zero() { acc } else { acc.add(&h.scale(x)) }
            })
        })
        .collect())
}

/// Does `Σ_j g_j f_j(x) = x` hold on every basis vector?
pub fn dual_basis_complete<F: Field>(m: &PlainBimodule<F>, gens: &[Vec<F>], funcs: &[Mat<F>]) -> bool {
    (0..m.dim).all(|x| {
        let s = gens.iter().zip(funcs).fold(vec![F::zero(); m.dim], |acc, (g, f)| vec_add(&acc, &m.ract_of(&f.col(x)).apply(g)));
        s == unit_vec(m.dim, x)
    })
}

#[derive(Clone, Debug)]
pub struct DualBasis<F> {
    /// In `E_N`.
    pub gens: Vec<Vec<F>>,
    /// `E_N -> A_N`.
    pub funcs: Vec<Mat<F>>,
    pub lifted_gens: Vec<Vec<F>>,
    /// `E_tot -> A_tot`.
    pub lifted_funcs: Vec<Mat<F>>,
    pub report: Report,
}

/// `Σ x_i ⊗ y_i` in `E_N ⊗ E'_N` with `ψ_N` of it the unit of `B_N`, as a plain tensor.
pub fn unit_decomposition<F: Field>(d: &EquivData<F>) -> Result<Vec<F>> {
    let w = solve_one(&d.psi.n, &d.b().n_alg().unit).ok_or_else(|| CoisoError::Shape("ψ_N does not reach the unit".into()))?;
    Ok(d.t_eb.n.quot.sect.apply(&w))
}

pub fn dual_basis<F: Field>(d: &EquivData<F>, gens: &[Vec<F>]) -> Result<DualBasis<F>> {
    let (e, ep, a) = (&d.e, &d.e_prime, d.a());
    let funcs = solve_dual_basis(&e.nmod, gens)?;
    let w = unit_decomposition(d)?;
    let (end, epd) = (e.nmod.dim, ep.nmod.dim);
    let at = &a.tot;
    let ia = a.n_incl();
    // Φ_q: x -> φ_tot(ι'(y_q) ⊗ x)
    let phis: Vec<Mat<F>> = (0..epd)
        .map(|q| {
            let y = ep.iota.col(q);
            let cols: Vec<Vec<F>> = (0..e.tot.dim).map(|k| d.phi.tot.apply(&d.t_ee.tot.class_of(&y, &unit_vec(e.tot.dim, k)))).collect();
            Mat::from_cols(&cols, at.dim)
        })
        .collect();
    let lifted_funcs: Vec<Mat<F>> = funcs
        .iter()
        .map(|f| {
            let mut acc = Mat::zeros(at.dim, e.tot.dim);
            for p in 0..end {
                let coeff_base = ia.apply(&f.col(p));
                let lm = at.left_mat(&coeff_base);
                for q in 0..epd {
                    let c = &w[p * epd + q];
                    if !c.is_zero() {
                        acc = acc.add(&lm.mul(&phis[q]).scale(c));
                    }
                }
            }
            acc
        })
        .collect();
    let lifted_gens: Vec<Vec<F>> = gens.iter().map(|g| e.iota.apply(g)).collect();
    let mut report = Report::new();
    report.check("Σ e_j e^j = id on E_N", dual_basis_complete(&e.nmod, gens, &funcs), || "N completeness fails".into());
    report.check("Σ e_j e^j = id on E_tot", dual_basis_complete(&e.tot, &lifted_gens, &lifted_funcs), || "tot completeness fails".into());
    let compat = funcs.iter().zip(&lifted_funcs).all(|(f, ft)| ft.mul(&e.iota) == ia.mul(f));
    report.check("e^j_tot ∘ ι = ι_A ∘ e^j", compat, || "lift does not extend".into());
    let lin = lifted_funcs
        .iter()
        .all(|ft| at.generators().iter().all(|g| ft.mul(&e.tot.ract_of(g)) == at.right_mat(g).mul(ft)));
    report.check("e^j_tot right A_tot-linear", lin, || "lift is not right-linear".into());
    Ok(DualBasis { gens: gens.to_vec(), funcs, lifted_gens, lifted_funcs, report })
}

/// Greedy right-module generators of `m` taken from its standard basis.
pub fn right_generators<F: Field>(m: &PlainBimodule<F>) -> Vec<Vec<F>> {
    let mut gens: Vec<Vec<F>> = Vec::new();
    let mut span = Subspace::zero(m.dim);
    for i in 0..m.dim {
        let v = unit_vec(m.dim, i);
        if span.contains(&v) {
            continue;
        }
        let mut vecs = span.vectors();
        vecs.extend(m.ract.iter().map(|r| r.apply(&v)));
        span = Subspace::span(m.dim, &vecs);
        gens.push(v);
    }
    gens
}

/// `e_{ij} = e^i(e_j)` on both levels; entries are algebra vectors.
#[derive(Clone, Debug)]
pub struct Idempotents<F> {
    pub e_n: Vec<Vec<Vec<F>>>,
    pub e_tot: Vec<Vec<Vec<F>>>,
    pub equal: bool,
    pub report: Report,
}

fn is_idempotent<F: Field>(alg: &Algebra<F>, e: &[Vec<Vec<F>>]) -> bool {
    let k = e.len();
    (0..k).all(|i| {
        (0..k).all(|j| {
            let s = (0..k).fold(alg.zero_vec(), |acc, l| vec_add(&acc, &alg.mul(&e[i][l], &e[l][j])));
            s == e[i][j]
        })
    })
}

pub fn idempotents<F: Field>(db: &DualBasis<F>, a: &TripleRef<F>) -> Idempotents<F> {
    let k = db.gens.len();
    let e_n: Vec<Vec<Vec<F>>> = (0..k).map(|i| (0..k).map(|j| db.funcs[i].apply(&db.gens[j])).collect()).collect();
    let e_tot: Vec<Vec<Vec<F>>> =
        (0..k).map(|i| (0..k).map(|j| db.lifted_funcs[i].apply(&db.lifted_gens[j])).collect()).collect();
    let ia = a.n_incl();
    let equal = (0..k).all(|i| (0..k).all(|j| ia.apply(&e_n[i][j]) == e_tot[i][j]));
    let mut report = Report::new();
    report.check("e_N idempotent", is_idempotent(a.n_alg(), &e_n), || "e_N² != e_N".into());
    report.check("e_tot idempotent", is_idempotent(&a.tot, &e_tot), || "e_tot² != e_tot".into());
    report.check("e_tot = ι_A(e_N)", equal, || "idempotents differ".into());
    Idempotents { e_n, e_tot, equal, report }
}

/// `E_N · A_0 = E_0`.
pub fn check_zero_component<F: Field>(d: &EquivData<F>) -> bool {
    let e = &d.e;
    let mut vecs = Vec::new();
    for z in d.a().zero_n.vectors() {
        vecs.extend(e.nmod.ract_of(&z).col_vecs());
    }
    Subspace::span(e.nmod.dim, &vecs) == e.zero
}

/// `v -> e v` on `A^k` and `x -> (e^j(x))_j`.
fn idempotent_action<F: Field>(alg: &Algebra<F>, e: &[Vec<Vec<F>>]) -> Mat<F> {
    let k = e.len();
    let d = alg.dim;
    let mut m = Mat::zeros(k * d, k * d);
    for i in 0..k {
        for l in 0..k {
            let b = alg.left_mat(&e[i][l]);
            for r in 0..d {
                for c in 0..d {
                    m.set(i * d + r, l * d + c, b.get(r, c).clone());
                }
            }
        }
    }
    m
}

fn stack<F: Field>(maps: &[Mat<F>], rows_each: usize, cols: usize) -> Mat<F> {
    maps.iter().fold(Mat::zeros(0, cols), |acc, m| {
        debug_assert_eq!(m.rows, rows_each);
        acc.vstack(m)
    })
}

/// Left multiplications are isomorphisms onto the right-linear endomorphisms,
/// `ι_E` is injective and `E ≅ e A^k` componentwise.
pub fn check_structure_theorem<F: Field>(d: &EquivData<F>) -> Result<Report> {
    let mut r = Report::new();
    let (e, a, b) = (&d.e, d.a(), d.b());
    let tot_ops: Vec<Mat<F>> = a.tot.generators().iter().map(|g| e.tot.ract_of(g)).collect();
    let end_tot = endomorphism_algebra(&tot_ops, e.tot.dim, "End(E_tot)");
    let lt: Option<Vec<Vec<F>>> = e.tot.lact.iter().map(|m| end_tot.coords(m)).collect();
    match lt {
        Some(cols) => r.absorb("B_tot -> End(E_tot)", check_algebra_iso(&b.tot, &end_tot.alg, &Mat::from_cols(&cols, end_tot.alg.dim))),
        None => r.fail("B_tot -> End(E_tot)", "left multiplication is not right-linear"),
    }
    let n_ops: Vec<Mat<F>> = a.n_alg().generators().iter().map(|g| e.nmod.ract_of(g)).collect();
    let end_n = endomorphism_algebra(&n_ops, e.nmod.dim, "End(E_N)");
    let ln: Option<Vec<Vec<F>>> = e.nmod.lact.iter().map(|m| end_n.coords(m)).collect();
    match ln {
        Some(cols) => {
            let ln = Mat::from_cols(&cols, end_n.alg.dim);
            r.absorb("B_N -> End(E_N)", check_algebra_iso(b.n_alg(), &end_n.alg, &ln));
            // Hom(E_N, E_0): coefficients whose map lands in E_0
            let q0 = quotient(&e.zero);
            let cols: Vec<Vec<F>> = (0..end_n.alg.dim).map(|k| q0.project_mat(&end_n.basis_map(k)).data).collect();
            let h0 = crate::exact_core::kernel(&Mat::from_cols(&cols, q0.dim() * e.nmod.dim));
            let h0 = Subspace::span(end_n.alg.dim, &h0.row_vecs());
            let img = b.zero_n.image(&ln);
            r.check("B_0 -> Hom(E_N, E_0) bijective", img == h0 && img.dim() == b.zero_n.dim(), || {
                format!("image dim {}, Hom dim {}, B_0 dim {}", img.dim(), h0.dim(), b.zero_n.dim())
            });
        }
        None => r.fail("B_N -> End(E_N)", "left multiplication is not right-linear"),
    }
    r.check("ι_E injective", e.iota_injective(), || format!("rank {} < {}", e.iota.rank(), e.nmod.dim));

    let gens = right_generators(&e.nmod);
    let db = dual_basis(d, &gens)?;
    r.absorb("dual basis", db.report.clone());
    let id = idempotents(&db, a);
    r.absorb("idempotents", id.report.clone());
    let k = gens.len();
    let g_n = stack(&db.funcs, a.n_alg().dim, e.nmod.dim);
    let g_tot = stack(&db.lifted_funcs, a.tot.dim, e.tot.dim);
    let p_n = idempotent_action(a.n_alg(), &id.e_n);
    let p_tot = idempotent_action(&a.tot, &id.e_tot);
    r.check("g_N injective", g_n.rank() == e.nmod.dim, || "g_N has a kernel".into());
    r.check("g_tot injective", g_tot.rank() == e.tot.dim, || "g_tot has a kernel".into());
    r.check("g_N(E_N) = e A_N^k", Subspace::col_span(&g_n) == Subspace::col_span(&p_n), || "images differ".into());
    r.check("g_tot(E_tot) = e A_tot^k", Subspace::col_span(&g_tot) == Subspace::col_span(&p_tot), || "images differ".into());
    let ia_k = Mat::identity(k).kron(&a.n_incl());
    r.check("ι_A ∘ g_N = g_tot ∘ ι_E", ia_k.mul(&g_n) == g_tot.mul(&e.iota), || "square fails".into());
    let zero_k: Vec<Vec<F>> = (0..k).flat_map(|i| a.zero_n.vectors().into_iter().map(move |z| vec_kron(&unit_vec(k, i), &z))).collect();
    let z_img = Subspace::span(k * a.n_alg().dim, &zero_k).image(&p_n);
    r.check("g_N(E_0) = e A_0^k", e.zero.image(&g_n) == z_img, || "zero components differ".into());
    Ok(r)
}

/// The reduced bimodules with `red(φ) ∘ m` and `red(ψ) ∘ m`.
pub fn reduced_equivalence<F: Field>(d: &EquivData<F>) -> Result<(PlainEquiv<F>, Report)> {
    let (re, rep) = (reduce_bimodule(&d.e), reduce_bimodule(&d.e_prime));
    let (r_ee, r_eb) = (reduce_bimodule(&d.t_ee.module), reduce_bimodule(&d.t_eb.module));
    let (ra, rb) = (reduce_bimodule(&Bimodule3::identity(d.a())), reduce_bimodule(&Bimodule3::identity(d.b())));
    let m1 = MultIso::new(&d.e_prime, &d.e, &d.t_ee, &rep, &re, &r_ee)?;
    let m2 = MultIso::new(&d.e, &d.e_prime, &d.t_eb, &re, &rep, &r_eb)?;
    let phi = reduce_2morphism(&d.phi, &r_ee, &ra)?.mul(&m1.m);
    let psi = reduce_2morphism(&d.psi, &r_eb, &rb)?.mul(&m2.m);
    let mut r = Report::new();
    r.absorb("m(E',E)", m1.report);
    r.absorb("m(E,E')", m2.report);
    let p = PlainEquiv { e: re.module, e_prime: rep.module, t_ee: m1.tensor, t_eb: m2.tensor, phi, psi };
    r.absorb("reduced", verify_plain_equivalence(&p));
    Ok((p, r))
}

/// All checks of the standard family at one `(a, n)`.
pub fn standard_family_report<F: Field>(a: &TripleRef<F>, n: usize) -> Result<Report> {
    let d = standard_equivalence(a, n)?;
    let mut r = Report::new();
    r.absorb("verify", verify_equivalence(&d));
    r.check("E_N A_0 = E_0", check_zero_component(&d), || "zero component differs".into());
    let gens: Vec<Vec<F>> = right_generators(&d.e.nmod);
    let db = dual_basis(&d, &gens)?;
    r.absorb("dual basis", db.report.clone());
    let id = idempotents(&db, d.a());
    r.absorb("idempotents", id.report);
    r.absorb("structure", check_structure_theorem(&d)?);
    r.absorb("reduction", reduced_equivalence(&d)?.1);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coiso::Triple;
    use crate::exact_core::Q;
    use crate::finalg::fixtures::{diagonal, field, j_col, m2, t2};

    fn e12() -> Subspace<Q> {
        Subspace::span(3, &[vec![Q::from_i64(0), Q::from_i64(1), Q::from_i64(0)]])
    }

    fn fixtures() -> Vec<TripleRef<Q>> {
        vec![
            Triple::unred(&field::<Q>().into_ref()).into_ref(),
            Triple::dirac(&t2::<Q>().into_ref(), &e12()).unwrap().into_ref(),
            Triple::dirac(&m2::<Q>().into_ref(), &j_col()).unwrap().into_ref(),
        ]
    }

    #[test]
    fn standard_family_small() {
        for a in fixtures() {
            for n in 1..=2 {
                let r = standard_family_report(&a, n).unwrap();
                assert!(r.passed(), "{} n={n}: {:?}", a.label, r.failures().collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn unred_q_two_gives_m2() {
        let a = fixtures().remove(0);
        let d = standard_equivalence(&a, 2).unwrap();
        assert_eq!(d.b().tot.dim, 4);
        assert_eq!(d.b().zero.dim(), 0);
        let rep = check_structure_theorem(&d).unwrap();
        assert!(rep.passed());
    }

    #[test]
    fn scaled_psi_breaks_compatibility() {
        let a = fixtures().remove(0);
        let mut d = standard_equivalence(&a, 2).unwrap();
        d.psi = d.psi.scale(&Q::from_i64(2));
        let r = verify_equivalence(&d);
        assert!(r.failures().any(|c| c.name.contains("ψ(x⊗x')·y = x·φ(x'⊗y)")));
        assert!(r.checks.iter().filter(|c| c.name.contains("invertible")).all(|c| c.pass));
    }

    #[test]
    fn identity_equivalence_verifies() {
        for a in fixtures() {
            let d = identity_equivalence(&a).unwrap();
            assert!(verify_equivalence(&d).passed());
            assert!(check_zero_component(&d));
            assert!(check_structure_theorem(&d).unwrap().passed());
        }
    }

    #[test]
    fn dual_basis_examples() {
        let a = fixtures().remove(1);
        let d = standard_equivalence(&a, 2).unwrap();
        // standard columns: coordinate functionals, identity idempotent
        let gens: Vec<Vec<Q>> = (0..2)
            .map(|p| d.e.nmod_coords(&vec_kron(&unit_vec(2, p), &a.tot.unit)))
            .collect();
        let db = dual_basis(&d, &gens).unwrap();
        assert!(db.report.passed());
        let id = idempotents(&db, &a);
        for i in 0..2 {
            for j in 0..2 {
                let expect = if i == j { a.n_alg().unit.clone() } else { a.n_alg().zero_vec() };
                assert_eq!(id.e_n[i][j], expect);
            }
        }
        let zero_gen = vec![vec![Q::from_i64(0); d.e.nmod.dim]];
        assert!(matches!(dual_basis(&d, &zero_gen), Err(CoisoError::NotProjective(_))));
    }

    #[test]
    fn identity_with_repeated_unit_gives_rank_one_idempotent() {
        let a = Triple::unred(&diagonal::<Q>(2).into_ref()).into_ref();
        let d = identity_equivalence(&a).unwrap();
        let u = d.e.nmod_coords(&a.tot.unit);
        let db = dual_basis(&d, &[u.clone(), u]).unwrap();
        assert!(db.report.passed());
        let id = idempotents(&db, &a);
        assert!(id.report.passed());
        assert!(id.equal);
    }

    #[test]
    fn enlarged_zero_is_rejected() {
        let a = fixtures().remove(1);
        let mut d = standard_equivalence(&a, 2).unwrap();
        let extra = d.e.nmod_coords(&vec_kron(&unit_vec(2, 0), &a.tot.unit));
        let mut zs = d.e.zero.vectors();
        zs.push(extra);
        d.e.zero = Subspace::span(d.e.nmod.dim, &zs);
        assert!(!d.e.validate().passed());
    }

    #[test]
    fn dirac_t2_zero_hom_dims() {
        let a = fixtures().remove(1);
        let d = standard_equivalence(&a, 2).unwrap();
        assert_eq!(d.b().zero.dim(), 4);
        assert!(check_structure_theorem(&d).unwrap().passed());
    }
}

//! Coisotropic triples and pairs, their morphisms, reduction and the canonical bimodule.

use std::sync::Arc;

use crate::error::{CoisoError, Result};
use crate::exact_core::{induced_map, quotient, Field, Mat, Quotient, Subspace};
use crate::finalg::{
    check_algebra_iso, check_algebra_map, endomorphism_algebra, idealizer, left_ideal_witness, matrix_algebra, matrix_subspace, quotient_algebra_unchecked,
    right_ideal_witness, sub_algebra, subalgebra_witness, AlgRef, PlainBimodule, SubAlgebra,
};
use crate::report::Report;

/// `(A_tot, A_N, A_0)` with `A_N` cached as an algebra on the echelon basis of `n_sub`.
#[derive(Clone, Debug)]
pub struct Triple<F> {
    pub tot: AlgRef<F>,
    pub n_sub: Subspace<F>,
    pub zero: Subspace<F>,
    pub n: SubAlgebra<F>,
    /// `A_0` in coordinates of `A_N`.
    pub zero_n: Subspace<F>,
    pub label: String,
}

pub type TripleRef<F> = Arc<Triple<F>>;

/// Every triple axiom, itemized.
pub fn validate_triple_parts<F: Field>(tot: &crate::finalg::Algebra<F>, n: &Subspace<F>, zero: &Subspace<F>) -> Report {
    let mut r = Report::new();
    if !r.check("ambient", n.ambient == tot.dim && zero.ambient == tot.dim, || "subspaces live in the wrong space".into()) {
        return r;
    }
    r.absorb("tot", crate::finalg::validate_algebra(tot));
    let w = left_ideal_witness(tot, zero);
    r.check("zero is a left ideal", w.is_none(), || w.clone().unwrap_or_default());
    let w = subalgebra_witness(tot, n);
    r.check("N is a unital subalgebra", w.is_none(), || w.clone().unwrap_or_default());
    let inside = zero.is_subset_of(n);
    r.check("zero ⊆ N", inside, || format!("dim zero {} vs dim N {}", zero.dim(), n.dim()));
    let mut bad = None;
    'o: for (k, z) in zero.vectors().iter().enumerate() {
        for (i, x) in n.vectors().iter().enumerate() {
            if !zero.contains(&tot.mul(z, x)) {
                bad = Some(format!("z{k} * n{i} leaves zero"));
                break 'o;
            }
        }
    }
    r.check("zero is two-sided in N", bad.is_none(), || bad.clone().unwrap_or_default());
    r
}

impl<F: Field> Triple<F> {
    pub fn new(tot: AlgRef<F>, n_sub: Subspace<F>, zero: Subspace<F>, label: impl Into<String>) -> Result<Self> {
        let label = label.into();
        let rep = validate_triple_parts(&tot, &n_sub, &zero);
        if !rep.passed() {
            return Err(CoisoError::invalid(format!("triple {label}"), rep));
        }
        let n = sub_algebra(&tot, &n_sub, format!("{label}_N"))?;
        let zero_n = Subspace::span(n_sub.dim(), &zero.vectors().iter().map(|z| n_sub.coords(z).expect("zero ⊆ N")).collect::<Vec<_>>());
        Ok(Triple { tot, n_sub, zero, n, zero_n, label })
    }

    pub fn into_ref(self) -> TripleRef<F> {
        Arc::new(self)
    }

    /// `(A, A, A)`.
    pub fn trivial(a: &AlgRef<F>) -> Self {
        Self::new(a.clone(), Subspace::full(a.dim), Subspace::full(a.dim), format!("trivial({})", a.label)).expect("always valid")
    }

    /// `(A, A, 0)`.
    pub fn unred(a: &AlgRef<F>) -> Self {
        Self::new(a.clone(), Subspace::full(a.dim), Subspace::zero(a.dim), format!("unred({})", a.label)).expect("always valid")
    }

    /// `(A, N(J), J)` for a left ideal `J`.
    pub fn dirac(a: &AlgRef<F>, j: &Subspace<F>) -> Result<Self> {
        let n = idealizer(a, j)?;
        Self::new(a.clone(), n, j.clone(), format!("dirac({})", a.label))
    }

    pub fn n_alg(&self) -> &AlgRef<F> {
        &self.n.alg
    }

    /// Columns: basis of `A_N` inside `A_tot`.
    pub fn n_incl(&self) -> Mat<F> {
        self.n.inclusion()
    }

    pub fn validate(&self) -> Report {
        validate_triple_parts(&self.tot, &self.n_sub, &self.zero)
    }

    pub fn reduce(&self) -> Reduced<F> {
        let q = quotient_algebra_unchecked(&self.n.alg, &self.zero_n, format!("{}_red", self.label));
        Reduced { alg: q.alg, quot: q.quot }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
}

/// `A_red = A_N / A_0` with the quotient data on `A_N` coordinates.
#[derive(Clone, Debug)]
pub struct Reduced<F> {
    pub alg: AlgRef<F>,
    pub quot: Quotient<F>,
}

pub fn reduce_triple<F: Field>(t: &Triple<F>) -> Reduced<F> {
    t.reduce()
}

/// `(A_N, A_0)` with `A_0` a two-sided ideal.
#[derive(Clone, Debug)]
pub struct Pair<F> {
    pub n_alg: AlgRef<F>,
    pub zero: Subspace<F>,
}

pub fn validate_pair<F: Field>(p: &Pair<F>) -> Report {
    let mut r = Report::new();
    if !r.check("ambient", p.zero.ambient == p.n_alg.dim, || "zero lives in the wrong space".into()) {
        return r;
    }
    r.absorb("N", crate::finalg::validate_algebra(&p.n_alg));
    let w = left_ideal_witness(&p.n_alg, &p.zero).or_else(|| right_ideal_witness(&p.n_alg, &p.zero));
    r.check("zero is a two-sided ideal", w.is_none(), || w.clone().unwrap_or_default());
    r
}

pub fn triple_to_pair<F: Field>(t: &Triple<F>) -> Pair<F> {
    Pair { n_alg: t.n.alg.clone(), zero: t.zero_n.clone() }
}

/// `(A_N, A_N, A_0)`.
pub fn pair_to_triple<F: Field>(p: &Pair<F>) -> Result<Triple<F>> {
    Triple::new(p.n_alg.clone(), Subspace::full(p.n_alg.dim), p.zero.clone(), format!("ext({})", p.n_alg.label))
}

/// Unital algebra map of the total algebras respecting `N` and `0`.
#[derive(Clone, Debug)]
pub struct TripleMorphism<F> {
    pub source: TripleRef<F>,
    pub target: TripleRef<F>,
    pub base: Mat<F>,
}

impl<F: Field> TripleMorphism<F> {
    pub fn identity(t: &TripleRef<F>) -> Self {
        TripleMorphism { source: t.clone(), target: t.clone(), base: Mat::identity(t.tot.dim) }
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &Self) -> Self {
        TripleMorphism { source: first.source.clone(), target: self.target.clone(), base: self.base.mul(&first.base) }
    }

    pub fn validate(&self) -> Report {
        let mut r = check_algebra_map(&self.source.tot, &self.target.tot, &self.base);
        if self.base.rows != self.target.tot.dim || self.base.cols != self.source.tot.dim {
            return r;
        }
        let img_n = self.source.n_sub.image(&self.base);
        r.check("maps N into N", img_n.is_subset_of(&self.target.n_sub), || "image of A_N escapes B_N".into());
        let img_0 = self.source.zero.image(&self.base);
        r.check("maps zero into zero", img_0.is_subset_of(&self.target.zero), || "image of A_0 escapes B_0".into());
        r
    }

    /// The restriction `A_N -> B_N` in `N` coordinates.
    pub fn n_component(&self) -> Result<Mat<F>> {
        let m = self.base.mul(&self.source.n_incl());
        let cols = m
            .col_vecs()
            .iter()
            .map(|c| self.target.n_sub.coords(c).ok_or_else(|| CoisoError::Shape("image of A_N escapes B_N".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Mat::from_cols(&cols, self.target.n_sub.dim()))
    }
}

/// `[a] -> [f(a)]` on the reduced algebras.
pub fn reduce_morphism<F: Field>(f: &TripleMorphism<F>) -> Result<Mat<F>> {
    let rep = f.validate();
    if !rep.passed() {
        return Err(CoisoError::invalid("triple morphism", rep));
    }
    let phi_n = f.n_component()?;
    let (rs, rt) = (f.source.reduce(), f.target.reduce());
    induced_map(&rs.quot, &phi_n, &rt.quot).ok_or_else(|| CoisoError::Shape("morphism does not descend".into()))
}

/// `red(id) = id` and `red(g ∘ f) = red g ∘ red f` along `f_0, f_1, ...`, each `red f_i` an algebra map.
pub fn reduction_functor_laws<F: Field>(fs: &[TripleMorphism<F>]) -> Result<Report> {
    let mut r = Report::new();
    let Some(first) = fs.first() else { return Ok(r) };
    let mut composite = TripleMorphism::identity(&first.source);
    let mut red_composite = Mat::identity(first.source.reduce().alg.dim);
    for (i, f) in fs.iter().enumerate() {
        if i > 0 && !Arc::ptr_eq(&fs[i - 1].target, &f.source) {
            return Err(CoisoError::Shape(format!("f_{i} does not start where f_{} ends", i - 1)));
        }
        let (rs, rt) = (f.source.reduce(), f.target.reduce());
        let rid = reduce_morphism(&TripleMorphism::identity(&f.source))?;
        r.check(format!("red(id_{i}) = id"), rid == Mat::identity(rs.alg.dim), || "not the identity".into());
        let rf = reduce_morphism(f)?;
        r.absorb(&format!("red(f_{i})"), check_algebra_map(&rs.alg, &rt.alg, &rf));
        composite = f.compose(&composite);
        red_composite = rf.mul(&red_composite);
        r.check(format!("red(f_{i} ∘ ... ∘ f_0) = composite"), reduce_morphism(&composite)? == red_composite, || "functoriality fails".into());
    }
    Ok(r)
}

/// `C(A) = A_tot / A_0` as an `(A_tot, A_red)`-bimodule plus the endomorphism check.
#[derive(Clone, Debug)]
pub struct CanonicalBimodule<F> {
    pub module: PlainBimodule<F>,
    pub quot: Quotient<F>,
    pub end_dim: usize,
    pub normalizer_quotient_dim: usize,
    pub report: Report,
}

pub fn canonical_bimodule<F: Field>(t: &Triple<F>) -> CanonicalBimodule<F> {
    let mut report = Report::new();
    let red = t.reduce();
    let q = quotient(&t.zero);
    let act = |m: Mat<F>| q.project_mat(&m.mul(&q.sect));
    let lact: Vec<Mat<F>> = (0..t.tot.dim).map(|i| act(t.tot.left_mat(&t.tot.basis_vec(i)))).collect();
    let incl = t.n_incl();
    let ract: Vec<Mat<F>> =
        (0..red.alg.dim).map(|r| act(t.tot.right_mat(&incl.apply(&red.quot.sect.col(r))))).collect();
    let module = PlainBimodule { left: t.tot.clone(), right: red.alg.clone(), dim: q.dim(), lact, ract };
    report.absorb("bimodule", module.validate());

    let gens: Vec<Mat<F>> = t.tot.generators().iter().map(|g| module.lact_of(g)).collect();
    let end = endomorphism_algebra(&gens, module.dim, "End");
    let end_op = end.alg.opposite().into_ref();

    let nz = idealizer(&t.tot, &t.zero).expect("zero is a left ideal of a valid triple");
    let nsub = sub_algebra(&t.tot, &nz, "N(A_0)").expect("idealizer is a subalgebra");
    let z_in = Subspace::span(nz.dim(), &t.zero.vectors().iter().map(|z| nz.coords(z).expect("A_0 ⊆ N(A_0)")).collect::<Vec<_>>());
    let nq = quotient_algebra_unchecked(&nsub.alg, &z_in, "N(A_0)/A_0".into());
    let nincl = nsub.inclusion();

    // right multiplication by representatives; independent of the choice iff A_0 acts by zero
    let mut descends = true;
    for z in t.zero.vectors() {
        if !act(t.tot.right_mat(&z)).is_zero() {
            descends = false;
        }
    }
    report.check("right multiplication by A_0 vanishes on C(A)", descends, || "some z in A_0 acts nontrivially".into());
    let mut cols = Vec::new();
    let mut in_end = true;
    for r in 0..nq.alg.dim {
        let rep = nincl.apply(&nq.quot.sect.col(r));
        let m = act(t.tot.right_mat(&rep));
        match end.coords(&m) {
            Some(c) => cols.push(c),
            None => {
                in_end = false;
                cols.push(vec![F::zero(); end.alg.dim]);
            }
        }
    }
    report.check("right multiplications are left-linear", in_end, || "a right multiplication fails to commute".into());
    let rho = Mat::from_cols(&cols, end.alg.dim);
    report.absorb("N(A_0)/A_0 -> End^opp", check_algebra_iso(&nq.alg, &end_op, &rho));
    CanonicalBimodule { module, quot: q, end_dim: end.alg.dim, normalizer_quotient_dim: nq.alg.dim, report }
}

/// `A -> (A_N/{0})` is an isomorphism for `unred(A)`; checks the canonical map.
pub fn check_unred_identity<F: Field>(a: &AlgRef<F>) -> Report {
    let t = Triple::unred(a);
    let red = t.reduce();
    // a -> coordinates in N (the whole space) -> class
    let to_n = Mat::from_cols(&(0..a.dim).map(|i| t.n_sub.coords(&a.basis_vec(i)).expect("N = A")).collect::<Vec<_>>(), a.dim);
    check_algebra_iso(a, &red.alg, &red.quot.proj.mul(&to_n))
}

/// `Mat_n` applied to every component.
pub fn matrix_triple<F: Field>(t: &Triple<F>, n: usize) -> Triple<F> {
    let tot = matrix_algebra(&t.tot, n).into_ref();
    Triple::new(tot, matrix_subspace(&t.n_sub, n), matrix_subspace(&t.zero, n), format!("Mat{n}({})", t.label))
        .expect("matrices over a triple form a triple")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::Q;
    use crate::finalg::fixtures::{diagonal, field, j_col, m2, t2};

    fn v(x: &[i64]) -> Vec<Q> {
        x.iter().map(|&a| Q::from_i64(a)).collect()
    }

    fn e12() -> Subspace<Q> {
        Subspace::span(3, &[v(&[0, 1, 0])])
    }

    #[test]
    fn dirac_m2_jcol() {
        let m = m2::<Q>().into_ref();
        let t = Triple::dirac(&m, &j_col()).unwrap();
        assert!(t.validate().passed());
        assert_eq!(t.n_sub.dim(), 3);
        let lower = Subspace::span(4, &[v(&[1, 0, 0, 0]), v(&[0, 0, 1, 0]), v(&[0, 0, 0, 1])]);
        assert_eq!(t.n_sub, lower);
        assert_eq!(t.reduce().alg.dim, 1);
    }

    #[test]
    fn invalid_triple_reports_containment() {
        let m = m2::<Q>().into_ref();
        let n = Subspace::span(4, std::slice::from_ref(&m.unit));
        let r = validate_triple_parts(&m, &n, &j_col());
        assert!(r.failures().any(|c| c.name == "zero ⊆ N"));
        assert!(Triple::new(m, n, j_col(), "bad").is_err());
    }

    #[test]
    fn constructors() {
        let t: AlgRef<Q> = t2().into_ref();
        assert!(Triple::trivial(&t).validate().passed());
        assert_eq!(Triple::trivial(&t).reduce().alg.dim, 0);
        let d = Triple::dirac(&t, &e12()).unwrap();
        assert_eq!(d.n_sub, Subspace::full(3));
        assert_eq!(d.reduce().alg.dim, 2);
        let dz = Triple::dirac(&t, &Subspace::zero(3)).unwrap();
        assert_eq!((dz.n_sub.clone(), dz.zero.clone()), (Subspace::full(3), Subspace::zero(3)));
        let k: AlgRef<Q> = field().into_ref();
        let u = Triple::unred(&k);
        assert_eq!((u.n_sub.dim(), u.zero.dim()), (1, 0));
    }

    #[test]
    fn unred_reduces_to_itself() {
        for a in [t2::<Q>(), m2()] {
            assert!(check_unred_identity(&a.into_ref()).passed());
        }
    }

    #[test]
    fn pair_round_trip() {
        let t: AlgRef<Q> = t2().into_ref();
        let d = Triple::dirac(&t, &e12()).unwrap();
        let p = triple_to_pair(&d);
        assert_eq!(p.zero, e12());
        let back = triple_to_pair(&pair_to_triple(&p).unwrap());
        assert_eq!(*back.n_alg, *p.n_alg);
        assert_eq!(back.zero, p.zero);
        let kk: AlgRef<Q> = diagonal(2).into_ref();
        let pz = Pair { n_alg: kk, zero: Subspace::span(2, &[v(&[0, 1])]) };
        assert!(validate_pair(&pz).passed());
        assert!(pair_to_triple(&pz).unwrap().validate().passed());
    }

    #[test]
    fn canonical_bimodule_examples() {
        let m = m2::<Q>().into_ref();
        let c = canonical_bimodule(&Triple::dirac(&m, &j_col()).unwrap());
        assert!(c.report.passed(), "{:?}", c.report);
        assert_eq!((c.module.dim, c.end_dim), (2, 1));
        let t: AlgRef<Q> = t2().into_ref();
        let c = canonical_bimodule(&Triple::unred(&t));
        assert!(c.report.passed());
        assert_eq!(c.end_dim, 3);
        let c = canonical_bimodule(&Triple::trivial(&t));
        assert!(c.report.passed());
        assert_eq!((c.module.dim, c.end_dim), (0, 0));
    }

    #[test]
    fn reduce_is_functorial_on_identity() {
        let t = Triple::dirac(&t2::<Q>().into_ref(), &e12()).unwrap().into_ref();
        let id = TripleMorphism::identity(&t);
        assert_eq!(reduce_morphism(&id).unwrap(), Mat::identity(2));
    }
}

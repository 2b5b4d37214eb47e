//! Seeded random algebras, triples, bimodules and morphisms.
//!
//! Everything is valid by construction: ideals are generated, `A_N` is a
//! subalgebra of the idealizer, and modules are quotients of free bimodules by
//! generated sub-bimodules with `ι` induced from the free inclusion.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{bimod3_hom_space, Bimod3Morphism, Bimodule3};
use crate::coiso::{matrix_triple, Triple, TripleMorphism, TripleRef};
use crate::exact_core::linalg::is_zero_vec;
use crate::exact_core::{Field, Mat, Subspace};
use crate::finalg::fixtures::{diagonal, field, kronecker, m2, t2, truncated_poly};
use crate::finalg::{
    idealizer, left_ideal_generated, product_algebra, quotient_algebra, subalgebra_closure,
    two_sided_ideal_generated, AlgRef, Algebra, PlainBimodule,
};

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn scalar<F: Field>(r: &mut Rng64) -> F {
    F::from_i64(r.gen_range(-2..=2))
}

pub fn vector<F: Field>(r: &mut Rng64, n: usize) -> Vec<F> {
    (0..n).map(|_| scalar(r)).collect()
}

/// One or two nonzero entries; these tend to generate proper submodules.
pub fn sparse_vector<F: Field>(r: &mut Rng64, n: usize) -> Vec<F> {
    let mut v = vec![F::zero(); n];
    if n == 0 {
        return v;
    }
    v[r.gen_range(0..n)] = F::one();
    if r.gen_bool(0.4) {
        let j = r.gen_range(0..n);
        v[j] = v[j].add(&F::from_i64(r.gen_range(1..=2)));
    }
    v
}

/// Conjugates the structure constants by a random unitriangular change of basis.
pub fn rebase<F: Field>(r: &mut Rng64, a: &Algebra<F>) -> Algebra<F> {
    rebase_with(r, a).0
}

/// Like [`rebase`], also returning the matrix taking old coordinates to new ones.
pub fn rebase_with<F: Field>(r: &mut Rng64, a: &Algebra<F>) -> (Algebra<F>, Mat<F>) {
    let n = a.dim;
    let mut p = Mat::<F>::identity(n);
    for i in 0..n {
        for j in i + 1..n {
            if r.gen_bool(0.3) {
                p.set(i, j, F::from_i64(r.gen_range(-1..=1)));
            }
        }
    }
    let pinv = p.inverse().expect("unitriangular");
    let cols = p.col_vecs();
    let b = Algebra::from_fn(n, pinv.apply(&a.unit), a.label.clone(), |i, j| pinv.apply(&a.mul(&cols[i], &cols[j])));
    (b, pinv)
}

fn pool<F: Field>(max_dim: usize) -> Vec<Algebra<F>> {
    let mut v = vec![field(), diagonal(2), truncated_poly(2)];
    if max_dim >= 3 {
        v.extend([diagonal(3), truncated_poly(3), t2(), product_algebra(&field(), &truncated_poly(2))]);
    }
    if max_dim >= 4 {
        v.extend([m2(), kronecker(), truncated_poly(4)]);
    }
    v
}

pub fn algebra<F: Field>(r: &mut Rng64, max_dim: usize) -> AlgRef<F> {
    let mut a = pool::<F>(max_dim).choose(r).expect("nonempty pool").clone();
    if a.dim > 1 && r.gen_bool(0.25) {
        let i = two_sided_ideal_generated(&a, &[sparse_vector(r, a.dim)]);
        if i.dim() < a.dim {
            a = (*quotient_algebra(&a, &i).expect("generated ideal").alg).clone().with_label(format!("{}/I", a.label));
        }
    }
    if r.gen_bool(0.5) {
        a = rebase(r, &a);
    }
    a.into_ref()
}

/// Random triple on `a`: unred, trivial, or Dirac-like.
pub fn triple_on<F: Field>(r: &mut Rng64, a: &AlgRef<F>) -> Triple<F> {
    match r.gen_range(0..6) {
        0 => Triple::unred(a),
        1 => Triple::trivial(a),
        _ => {
            let j = left_ideal_generated(a, &[sparse_vector(r, a.dim)]);
            let n = idealizer(a, &j).expect("generated left ideal");
            let n = if r.gen_bool(0.5) {
                n
            } else {
                let extra = n.vectors().choose(r).cloned().unwrap_or_else(|| a.unit.clone());
                let mut seed = j.vectors();
                seed.push(extra);
                subalgebra_closure(a, &seed)
            };
            Triple::new(a.clone(), n, j, format!("T({})", a.label)).expect("valid by construction")
        }
    }
}

pub fn triple<F: Field>(r: &mut Rng64, max_dim: usize) -> TripleRef<F> {
    let a = algebra(r, max_dim);
    triple_on(r, &a).into_ref()
}

/// The free `(B, A)`-bimodule `B ⊗ A`, index `i * a.dim + j`.
pub fn free_bimodule<F: Field>(b: &AlgRef<F>, a: &AlgRef<F>) -> PlainBimodule<F> {
    let ib = Mat::identity(b.dim);
    let ia = Mat::identity(a.dim);
    PlainBimodule {
        left: b.clone(),
        right: a.clone(),
        dim: b.dim * a.dim,
        lact: (0..b.dim).map(|i| b.left_mat(&b.basis_vec(i)).kron(&ia)).collect(),
        ract: (0..a.dim).map(|j| ib.kron(&a.right_mat(&a.basis_vec(j)))).collect(),
    }
}

/// Grows a sub-bimodule of `m` from `start` until the quotient has dimension at most `budget`.
fn shrink<F: Field>(r: &mut Rng64, m: &PlainBimodule<F>, start: Subspace<F>, budget: usize) -> Subspace<F> {
    let mut s = start;
    while m.dim - s.dim() > budget {
        let mut next = None;
        for _ in 0..6 {
            let cand = m.sub_bimodule_closure(&[s.vectors(), vec![sparse_vector(r, m.dim)]].concat());
            if cand.dim() > s.dim() && cand.dim() < m.dim {
                next = Some(cand);
                break;
            }
        }
        s = next.unwrap_or_else(|| m.sub_bimodule_closure(&[s.vectors(), vec![vector(r, m.dim)]].concat()));
    }
    s
}

/// Random bimodule over `(B, A)` with `E_tot` and `E_N` of dimension at most `budget`.
pub fn bimodule<F: Field>(r: &mut Rng64, b: &TripleRef<F>, a: &TripleRef<F>, budget: usize) -> Bimodule3<F> {
    bimodule_with(r, b, a, budget, None)
}

/// `λ_B x - x λ_A` for every basis vector `x` of `m`.
fn commutators<F: Field>(m: &PlainBimodule<F>, lb: &[F], la: &[F]) -> Vec<Vec<F>> {
    let d = m.lact_of(lb).sub(&m.ract_of(la));
    d.col_vecs().into_iter().filter(|v| !is_zero_vec(v)).collect()
}

/// As [`bimodule`]; with `central = Some((λ_B, λ_A))` the two elements act equally.
pub fn bimodule_with<F: Field>(r: &mut Rng64, b: &TripleRef<F>, a: &TripleRef<F>, budget: usize, central: Option<(&[F], &[F])>) -> Bimodule3<F> {
    let free_tot = free_bimodule(&b.tot, &a.tot);
    let free_n = free_bimodule(b.n_alg(), a.n_alg());
    let free_iota = b.n_incl().kron(&a.n_incl());
    let (sn0, ct) = match central {
        Some((lb, la)) => {
            let (lbn, lan) = (b.n_sub.coords(lb).expect("λ_B in B_N"), a.n_sub.coords(la).expect("λ_A in A_N"));
            (free_n.sub_bimodule_closure(&commutators(&free_n, &lbn, &lan)), commutators(&free_tot, lb, la))
        }
        None => (Subspace::zero(free_n.dim), Vec::new()),
    };
    let sn = shrink(r, &free_n, sn0, budget);
    let st0 = free_tot.sub_bimodule_closure(&[sn.image(&free_iota).vectors(), ct].concat());
    let st = shrink(r, &free_tot, st0, budget);
    let (nmod, qn) = free_n.quotient_by(&sn);
    let (tot, qt) = free_tot.quotient_by(&st);
    let iota = qt.proj.mul(&free_iota).mul(&qn.sect);
    let mut gens = Vec::new();
    for z in b.zero_n.vectors() {
        gens.extend(nmod.lact_of(&z).col_vecs());
    }
    for z in a.zero_n.vectors() {
        gens.extend(nmod.ract_of(&z).col_vecs());
    }
    if nmod.dim > 0 && r.gen_bool(0.25) {
        gens.push(sparse_vector(r, nmod.dim));
    }
    gens.retain(|g| !is_zero_vec(g));
    let zero = nmod.sub_bimodule_closure(&gens);
    Bimodule3 { left: b.clone(), right: a.clone(), tot, nmod, zero, iota, label: "E".into() }
}

/// A composable chain `e_1, ..., e_len` with `e_i` over `(T_i, T_{i-1})`, listed outermost first.
pub fn chain<F: Field>(r: &mut Rng64, len: usize, alg_dim: usize, budget: usize) -> Vec<Bimodule3<F>> {
    let ts: Vec<TripleRef<F>> = (0..=len).map(|_| triple(r, alg_dim)).collect();
    let mut out: Vec<Bimodule3<F>> = (0..len)
        .map(|i| {
            if r.gen_bool(0.15) && crate::cbimod::same_triple(&ts[i + 1], &ts[i]) {
                Bimodule3::identity(&ts[i])
            } else {
                bimodule(r, &ts[i + 1], &ts[i], budget).with_label(format!("E{i}"))
            }
        })
        .collect();
    out.reverse();
    out
}

/// A random combination of basis morphisms `src -> tgt`.
pub fn morphism<F: Field>(r: &mut Rng64, src: &Bimodule3<F>, tgt: &Bimodule3<F>) -> Bimod3Morphism<F> {
    let basis = bimod3_hom_space(src, tgt);
    let mut m = Bimod3Morphism::zero(src, tgt);
    for b in &basis {
        m = m.add(&b.scale(&scalar(r)));
    }
    m
}

/// Random triple morphism out of `t`, together with its target.
pub fn triple_morphism<F: Field>(r: &mut Rng64, t: &TripleRef<F>) -> TripleMorphism<F> {
    let a = &t.tot;
    loop {
        match r.gen_range(0..5) {
            0 => return TripleMorphism::identity(t),
            1 => {
                // conjugation by an invertible element of A_N
                let u = crate::exact_core::linalg::vec_add(&a.unit, &t.n_incl().apply(&sparse_vector(r, t.n_sub.dim())));
                let lu = a.left_mat(&u);
                let Some(linv) = lu.inverse() else { continue };
                let uinv = linv.apply(&a.unit);
                let base = lu.mul(&a.right_mat(&uinv));
                return TripleMorphism { source: t.clone(), target: t.clone(), base };
            }
            2 => {
                let target = Triple::trivial(a).into_ref();
                return TripleMorphism { source: t.clone(), target, base: Mat::identity(a.dim) };
            }
            3 => {
                let i = two_sided_ideal_generated(a, &[sparse_vector(r, a.dim)]);
                if i.dim() == a.dim {
                    continue;
                }
                let q = quotient_algebra(a, &i).expect("generated ideal");
                let n = Subspace::span(q.alg.dim, &t.n_sub.vectors().iter().map(|v| q.quot.project(v)).collect::<Vec<_>>());
                let z = Subspace::span(q.alg.dim, &t.zero.vectors().iter().map(|v| q.quot.project(v)).collect::<Vec<_>>());
                let target = Triple::new(q.alg.clone(), n, z, format!("{}/I", t.label)).expect("quotient triple").into_ref();
                return TripleMorphism { source: t.clone(), target, base: q.quot.proj.clone() };
            }
            _ => {
                if a.dim > 2 {
                    continue;
                }
                let target = matrix_triple(t, 2).into_ref();
                let d = a.dim;
                let mut base = Mat::zeros(4 * d, d);
                for i in 0..d {
                    base.set(i, i, F::one());
                    base.set(3 * d + i, i, F::one());
                }
                return TripleMorphism { source: t.clone(), target, base };
            }
        }
    }
}

/// `len` composable triple morphisms starting from a random triple.
pub fn morphism_chain<F: Field>(r: &mut Rng64, len: usize, max_dim: usize) -> Vec<TripleMorphism<F>> {
    let mut t = triple(r, max_dim);
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        let f = triple_morphism(r, &t);
        t = f.target.clone();
        out.push(f);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cbimod::validate_bimodule;
    use crate::exact_core::Q;

    #[test]
    fn random_instances_are_valid_and_deterministic() {
        for seed in 0..100u64 {
            let mut r = rng(seed);
            let c = chain::<Q>(&mut r, 1, 3, 3);
            let e = &c[0];
            let rep = validate_bimodule(e);
            assert!(rep.passed(), "seed {seed}: {rep:?}");
            assert!(e.tot.dim <= 3 && e.nmod.dim <= 3);
            let mut r2 = rng(seed);
            let c2 = chain::<Q>(&mut r2, 1, 3, 3);
            assert_eq!(c2[0].tot.lact, e.tot.lact);
            assert_eq!(c2[0].zero, e.zero);
        }
    }

    #[test]
    fn random_triple_morphisms_are_valid() {
        for seed in 0..40u64 {
            let mut r = rng(seed);
            let t = triple::<Q>(&mut r, 3);
            let f = triple_morphism(&mut r, &t);
            assert!(f.validate().passed(), "seed {seed}");
        }
    }

    #[test]
    fn random_morphism_chains_are_functorial() {
        for seed in 0..30u64 {
            let fs = morphism_chain::<Q>(&mut rng(seed), 3, 3);
            let rep = crate::coiso::reduction_functor_laws(&fs).unwrap();
            assert!(rep.passed(), "seed {seed}: {:?}", rep.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn random_algebras_validate() {
        for seed in 0..40u64 {
            let a = algebra::<Q>(&mut rng(seed), 4);
            assert!(crate::finalg::validate_algebra(&a).passed(), "seed {seed}");
        }
    }
}

//! Seeded random deformed triples, bimodules and morphisms.

use rand::seq::SliceRandom;
use rand::Rng;

use super::fixtures::{cliff, dual, dual_tensor_nil};
use super::{DeformedAlgebra, DeformedBimodule, DeformedRef, DeformedTriple};
use crate::cbimod::random::{bimodule_with, rebase_with, sparse_vector, triple_morphism, Rng64};
use crate::coiso::{Triple, TripleMorphism};
use crate::exact_core::linalg::{unit_vec, vec_kron};
use crate::exact_core::Field;
use crate::finalg::fixtures::{diagonal, field, truncated_poly};
use crate::finalg::{idealizer, left_ideal_generated, tensor_algebra};

fn poly_with<F: Field>(n: usize, k: usize) -> DeformedAlgebra<F> {
    let a = truncated_poly::<F>(n).into_ref();
    DeformedAlgebra { lambda: unit_vec(n, k), alg: a, order: n.div_ceil(k) }
}

fn pool<F: Field>() -> Vec<DeformedAlgebra<F>> {
    let k = field::<F>().into_ref();
    let dual_k2 = {
        let d = dual::<F>();
        let a = tensor_algebra(&d.alg, &diagonal(2)).into_ref();
        DeformedAlgebra { lambda: vec_kron(&d.lambda, &diagonal::<F>(2).unit), alg: a, order: 2 }
    };
    vec![
        DeformedAlgebra { lambda: vec![F::zero()], alg: k, order: 1 },
        dual(),
        cliff(),
        dual_tensor_nil(),
        dual_k2,
        poly_with(3, 2),
        poly_with(4, 3),
    ]
}

pub fn deformed_algebra<F: Field>(r: &mut Rng64) -> DeformedAlgebra<F> {
    let d = pool::<F>().choose(r).expect("nonempty").clone();
    if r.gen_bool(0.5) {
        let (b, pinv) = rebase_with(r, &d.alg);
        return DeformedAlgebra { lambda: pinv.apply(&d.lambda), alg: b.into_ref(), order: d.order };
    }
    d
}

/// Unred, trivial, or Dirac-like; Dirac candidates that are not saturated are retried.
pub fn deformed_triple<F: Field>(r: &mut Rng64) -> DeformedRef<F> {
    let d = deformed_algebra::<F>(r);
    let a = &d.alg;
    let base = match r.gen_range(0..7) {
        0 => Triple::unred(a),
        1 => Triple::trivial(a),
        _ => {
            let mut found = None;
            for _ in 0..6 {
                let j = left_ideal_generated(a, &[sparse_vector(r, a.dim)]);
                if j.dim() == a.dim {
                    continue;
                }
                let n = idealizer(a, &j).expect("generated left ideal");
                let t = Triple::new(a.clone(), n, j, format!("T({})", a.label)).expect("valid by construction");
                if let Ok(dt) = DeformedTriple::new(t.into_ref(), d.lambda.clone(), d.order) {
                    found = Some(dt);
                    break;
                }
            }
            match found {
                Some(dt) => return dt,
                None => Triple::unred(a),
            }
        }
    };
    DeformedTriple::new(base.into_ref(), d.lambda, d.order).expect("unred and trivial are saturated")
}

pub fn deformed_bimodule<F: Field>(r: &mut Rng64, b: &DeformedRef<F>, a: &DeformedRef<F>, budget: usize) -> DeformedBimodule<F> {
    let base = bimodule_with(r, &b.base, &a.base, budget, Some((&b.lambda, &a.lambda)));
    DeformedBimodule { base, left: b.clone(), right: a.clone() }
}

/// A composable chain listed outermost first.
pub fn deformed_chain<F: Field>(r: &mut Rng64, len: usize, budget: usize) -> Vec<DeformedBimodule<F>> {
    let ts: Vec<DeformedRef<F>> = (0..=len).map(|_| deformed_triple(r)).collect();
    let mut out: Vec<DeformedBimodule<F>> = (0..len)
        .map(|i| {
            let mut e = deformed_bimodule(r, &ts[i + 1], &ts[i], budget);
            e.base.label = format!("E{i}");
            e
        })
        .collect();
    out.reverse();
    out
}

/// A morphism out of `t` whose target is again a deformed triple with `f(λ) = λ'`.
pub fn deformed_triple_morphism<F: Field>(r: &mut Rng64, t: &DeformedRef<F>) -> (TripleMorphism<F>, DeformedRef<F>) {
    for _ in 0..10 {
        let f = triple_morphism(r, &t.base);
        let lambda = f.base.apply(&t.lambda);
        if let Ok(target) = DeformedTriple::new(f.target.clone(), lambda, t.order) {
            return (f, target);
        }
    }
    (TripleMorphism::identity(&t.base), t.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cbimod::random::rng;
    use crate::exact_core::Q;

    #[test]
    fn random_deformed_instances_validate() {
        for seed in 0..60u64 {
            let mut r = rng(seed);
            let c = deformed_chain::<Q>(&mut r, 2, 3);
            for e in &c {
                let rep = e.validate();
                assert!(rep.passed(), "seed {seed}: {:?}", rep.failures().collect::<Vec<_>>());
            }
            let (f, tgt) = deformed_triple_morphism(&mut r, &c[1].right);
            assert!(f.validate().passed());
            assert_eq!(f.base.apply(&c[1].right.lambda), tgt.lambda);
        }
    }

    #[test]
    fn random_cl_coherence_and_dims() {
        use crate::classlim::{cl_composition_coherence, cl_data, cl_functor_laws, cl_identity_coherence, dim_accounting_bimodule, dim_accounting_triple};
        for seed in 0..30u64 {
            let mut r = rng(seed);
            let c = deformed_chain::<Q>(&mut r, 3, 2);
            let rep = cl_composition_coherence(&c[0], &c[1], &c[2]).unwrap();
            assert!(rep.passed(), "seed {seed}: {:?}", rep.failures().collect::<Vec<_>>());
            assert!(cl_identity_coherence(&c[1]).unwrap().passed(), "seed {seed}");
            let d = cl_data(&c[1]).unwrap();
            assert!(dim_accounting_bimodule(&c[1], &d.cl).passed(), "seed {seed}");
            assert!(dim_accounting_triple(&c[1].left, &d.left).passed(), "seed {seed}");
            let t0 = c[2].right.clone();
            let (f0, t1) = deformed_triple_morphism(&mut r, &t0);
            let (f1, t2) = deformed_triple_morphism(&mut r, &t1);
            assert!(cl_functor_laws(&[t0, t1, t2], &[f0, f1]).unwrap().passed(), "seed {seed}");
        }
    }
}

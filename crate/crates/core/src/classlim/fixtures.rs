//! Named deformed algebras and triples.

use super::{DeformedAlgebra, DeformedRef, DeformedTriple};
use crate::coiso::Triple;
use crate::exact_core::{Field, Subspace};
use crate::finalg::fixtures::truncated_poly;
use crate::finalg::{left_ideal_generated, tensor_algebra};

/// `k[λ]/λ²`, basis `1, λ`.
pub fn dual<F: Field>() -> DeformedAlgebra<F> {
    let a = truncated_poly::<F>(2).with_label("k[λ]/λ²").into_ref();
    DeformedAlgebra { lambda: a.basis_vec(1), alg: a, order: 2 }
}

/// Basis `1, x, λ, λx` with `x² = λ`, `λ² = 0`; the classical limit is `k[x]/x²`.
pub fn cliff<F: Field>() -> DeformedAlgebra<F> {
    let a = truncated_poly::<F>(4).with_label("Cliff").into_ref();
    DeformedAlgebra { lambda: a.basis_vec(2), alg: a, order: 2 }
}

/// `k[λ]/λ² ⊗ k[x]/x²`, basis `1, x, λ, λx`.
pub fn dual_tensor_nil<F: Field>() -> DeformedAlgebra<F> {
    let a = tensor_algebra(&truncated_poly::<F>(2), &truncated_poly(2)).with_label("k[λ,x]/(λ²,x²)").into_ref();
    DeformedAlgebra { lambda: a.basis_vec(2), alg: a, order: 2 }
}

pub fn unred<F: Field>(d: &DeformedAlgebra<F>) -> DeformedRef<F> {
    DeformedTriple::new(Triple::unred(&d.alg).into_ref(), d.lambda.clone(), d.order).expect("unred is saturated")
}

/// `A_0 = A x`, `A_N = A` on `Cliff`; reduces to `k`.
pub fn cliff_dirac<F: Field>() -> DeformedRef<F> {
    let d = cliff::<F>();
    let j = left_ideal_generated(&d.alg, &[d.alg.basis_vec(1)]);
    let t = Triple::dirac(&d.alg, &j).expect("left ideal").with_label("cliff");
    DeformedTriple::new(t.into_ref(), d.lambda, d.order).expect("valid")
}

/// `A_0 = (λ)`, `A_N = A` on `k[λ]/λ²`.
pub fn dual_dirac<F: Field>() -> DeformedRef<F> {
    let d = dual::<F>();
    let j = Subspace::span(2, std::slice::from_ref(&d.lambda));
    let t = Triple::dirac(&d.alg, &j).expect("left ideal").with_label("dual_λ");
    DeformedTriple::new(t.into_ref(), d.lambda, d.order).expect("valid")
}

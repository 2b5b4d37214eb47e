//! Small named algebras used throughout the tests and the CLI.

use super::{left_ideal_generated, product_algebra, Algebra};
use crate::exact_core::{Field, Subspace};

fn unit<F: Field>(v: &[i64]) -> Vec<F> {
    v.iter().map(|&x| F::from_i64(x)).collect()
}

fn one_hot<F: Field>(n: usize, entries: &[(usize, i64)]) -> Vec<F> {
    let mut v = vec![F::zero(); n];
    for &(k, c) in entries {
        v[k] = F::from_i64(c);
    }
    v
}

/// The ground field as a 1-dimensional algebra.
pub fn field<F: Field>() -> Algebra<F> {
    Algebra::from_fn(1, unit(&[1]), "k", |_, _| unit(&[1]))
}

/// Upper-triangular 2x2 matrices, basis E11, E12, E22.
pub fn t2<F: Field>() -> Algebra<F> {
    Algebra::from_fn(3, unit(&[1, 0, 1]), "T2", |i, j| match (i, j) {
        (0, 0) => one_hot(3, &[(0, 1)]),
        (0, 1) => one_hot(3, &[(1, 1)]),
        (1, 2) => one_hot(3, &[(1, 1)]),
        (2, 2) => one_hot(3, &[(2, 1)]),
        _ => one_hot(3, &[]),
    })
}

/// Full 2x2 matrices, basis E11, E12, E21, E22.
pub fn m2<F: Field>() -> Algebra<F> {
    Algebra::from_fn(4, unit(&[1, 0, 0, 1]), "M2", |x, y| {
        let (p, q, r, s) = (x / 2, x % 2, y / 2, y % 2);
        if q == r {
            one_hot(4, &[(p * 2 + s, 1)])
        } else {
            one_hot(4, &[])
        }
    })
}

/// Matrices with vanishing second column: the left ideal of M2 generated by E11.
pub fn j_col<F: Field>() -> Subspace<F> {
    left_ideal_generated(&m2::<F>(), &[one_hot(4, &[(0, 1)])])
}

/// `k[x]/(x^n)`, basis `1, x, ..., x^{n-1}`.
pub fn truncated_poly<F: Field>(n: usize) -> Algebra<F> {
    Algebra::from_fn(n, one_hot(n, &[(0, 1)]), format!("k[x]/x^{n}"), |i, j| {
        if i + j < n {
            one_hot(n, &[(i + j, 1)])
        } else {
            one_hot(n, &[])
        }
    })
}

/// `k^n` with componentwise product.
pub fn diagonal<F: Field>(n: usize) -> Algebra<F> {
    let mut a = field::<F>();
    for _ in 1..n {
        a = product_algebra(&a, &field());
    }
    a.with_label(format!("k^{n}"))
}

/// Path algebra of the Kronecker quiver: idempotents e1, e2 and arrows a, b from 1 to 2.
pub fn kronecker<F: Field>() -> Algebra<F> {
    // basis e1, e2, a, b with a = e2 a e1, b = e2 b e1
    Algebra::from_fn(4, unit(&[1, 1, 0, 0]), "Kron", |i, j| match (i, j) {
        (0, 0) => one_hot(4, &[(0, 1)]),
        (1, 1) => one_hot(4, &[(1, 1)]),
        (1, 2) | (2, 0) => one_hot(4, &[(2, 1)]),
        (1, 3) | (3, 0) => one_hot(4, &[(3, 1)]),
        _ => one_hot(4, &[]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::Q;
    use crate::finalg::validate_algebra;

    #[test]
    fn all_fixtures_are_algebras() {
        for a in [field::<Q>(), t2(), m2(), truncated_poly(3), diagonal(3), kronecker()] {
            assert!(validate_algebra(&a).passed(), "{}", a.label);
        }
    }

    #[test]
    fn j_col_is_first_column() {
        let j = j_col::<Q>();
        assert_eq!(j, Subspace::span(4, &[one_hot(4, &[(0, 1)]), one_hot(4, &[(2, 1)])]));
    }
}

//! Algebra morphisms as bimodules, and the forgetful projections.

use super::tensor::tensor3;
use super::{check_bimod_iso, Bimod3Morphism, Bimodule3};
use crate::coiso::TripleMorphism;
use crate::error::{CoisoError, Result};
use crate::exact_core::{Field, Mat};
use crate::finalg::PlainBimodule;
use crate::report::Report;

/// `L(φ)` for `φ: A -> B`: `B` as a `(B, A)`-bimodule, right action through `φ`.
pub fn embed_l<F: Field>(phi: &TripleMorphism<F>) -> Result<Bimodule3<F>> {
    let rep = phi.validate();
    if !rep.passed() {
        return Err(CoisoError::invalid("triple morphism", rep));
    }
    let (a, b) = (&phi.source, &phi.target);
    let phi_n = phi.n_component()?;
    let tot = PlainBimodule::regular(&b.tot).twist(&b.tot, &Mat::identity(b.tot.dim), &a.tot, &phi.base);
    let nmod = PlainBimodule::regular(b.n_alg()).twist(b.n_alg(), &Mat::identity(b.n_alg().dim), a.n_alg(), &phi_n);
    Ok(Bimodule3 {
        left: b.clone(),
        right: a.clone(),
        tot,
        nmod,
        zero: b.zero_n.clone(),
        iota: b.n_incl(),
        label: format!("L({}->{})", a.label, b.label),
    })
}

/// `L(ψ) ⊗ L(φ) -> L(ψ ∘ φ)`, `c ⊗ b -> c ψ(b)`, checked to be an isomorphism.
pub fn embed_mult_iso<F: Field>(psi: &TripleMorphism<F>, phi: &TripleMorphism<F>) -> Result<(Bimod3Morphism<F>, Report)> {
    let (lpsi, lphi) = (embed_l(psi)?, embed_l(phi)?);
    let comp = embed_l(&psi.compose(phi))?;
    let t = tensor3(&lpsi, &lphi)?;
    let c = &psi.target;
    let psi_n = psi.n_component()?;
    let contract = |alg: &crate::finalg::Algebra<F>, map: &Mat<F>, sect: &Mat<F>, bdim: usize| {
        let cols: Vec<Vec<F>> = sect
            .col_vecs()
            .iter()
            .map(|s| {
                let mut out = alg.zero_vec();
                for p in 0..alg.dim {
                    for q in 0..bdim {
                        let x = &s[p * bdim + q];
                        if !x.is_zero() {
                            let prod = alg.mul(&alg.basis_vec(p), &map.col(q));
                            for (o, y) in out.iter_mut().zip(&prod) {
                                o.add_mul(x, y);
                            }
                        }
                    }
                }
                out
            })
            .collect();
        Mat::from_cols(&cols, alg.dim)
    };
    let m = Bimod3Morphism {
        tot: contract(&c.tot, &psi.base, &t.tot.quot.sect, psi.source.tot.dim),
        n: contract(c.n_alg(), &psi_n, &t.n.quot.sect, psi.source.n_alg().dim),
    };
    let rep = check_bimod_iso(&t.module, &comp, &m);
    Ok((m, rep))
}

pub fn project_tot<F: Field>(e: &Bimodule3<F>) -> PlainBimodule<F> {
    e.tot.clone()
}

pub fn project_n<F: Field>(e: &Bimodule3<F>) -> PlainBimodule<F> {
    e.nmod.clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cbimod::tensor::{left_unitor3, tensor3};
    use crate::coiso::Triple;
    use crate::exact_core::{Subspace, Q};
    use crate::finalg::fixtures::t2;
    use crate::finalg::tensor as plain_tensor;

    #[test]
    fn embed_identity_is_identity_bimodule() {
        let e12 = Subspace::span(3, &[vec![Q::from_i64(0), Q::from_i64(1), Q::from_i64(0)]]);
        let t = Triple::dirac(&t2::<Q>().into_ref(), &e12).unwrap().into_ref();
        let id = TripleMorphism::identity(&t);
        let l = embed_l(&id).unwrap();
        let i = Bimodule3::identity(&t);
        assert_eq!(l.tot.lact, i.tot.lact);
        assert_eq!(l.tot.ract, i.tot.ract);
        assert_eq!(l.nmod.ract, i.nmod.ract);
        let (m, rep) = embed_mult_iso(&id, &id).unwrap();
        assert!(rep.passed(), "{rep:?}");
        let tt = tensor3(&i, &i).unwrap();
        assert_eq!(m, left_unitor3(&tt, &i));
    }

    #[test]
    fn projections_commute_with_tensor() {
        let t = Triple::unred(&t2::<Q>().into_ref()).into_ref();
        let i = Bimodule3::identity(&t);
        let tt = tensor3(&i, &i).unwrap();
        let pn = plain_tensor(&project_n(&i), &project_n(&i)).unwrap();
        assert_eq!(project_n(&tt.module).lact, pn.module.lact);
        assert_eq!(project_tot(&i).dim, 3);
    }
}

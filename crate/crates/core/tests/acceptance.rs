//! The ten acceptance criteria, run in order in a single test so timings are not
//! disturbed by other tests. One line per criterion is printed; run with
//! `cargo test --test acceptance -- --nocapture` to see them.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use coiso_core::cbimod::random::{algebra, chain, morphism, morphism_chain, rng, sparse_vector};
use coiso_core::cbimod::{
    check_mult_naturality, pentagon_check, reduce_bimodule, reduction_composition_coherence, reduction_identity_coherence,
    tensor3_with, triangle_check, Bimodule3, MultIso, ZeroRule,
};
use coiso_core::classlim::fixtures::{dual, unred};
use coiso_core::classlim::random::{deformed_chain, deformed_triple_morphism};
use coiso_core::classlim::{
    check_commute, cl_composition_coherence, cl_data, cl_functor_laws, cl_identity_coherence, dim_accounting_bimodule,
    dim_accounting_triple, picard_check, CommuteOptions, DeformedBimodule,
};
use coiso_core::coiso::{canonical_bimodule, check_unred_identity, reduction_functor_laws, Triple, TripleMorphism, TripleRef};
use coiso_core::exact_core::{Field, Subspace, Q};
use coiso_core::finalg::fixtures::{field, j_col, m2, t2};
use coiso_core::finalg::{left_ideal_generated, validate_algebra};
use coiso_core::model::{FieldChoice, Workspace};
use coiso_core::morita::{check_structure_theorem, check_zero_component, dual_basis, idempotents, right_generators, standard_equivalence, verify_equivalence};
use coiso_core::report::Report;

type Outcome = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn passed(r: &Report, what: &str) -> Result<(), String> {
    match r.failures().next() {
        None => Ok(()),
        Some(c) => Err(format!("{what}: {} ({})", c.name, c.witness.clone().unwrap_or_default())),
    }
}

fn shipped() -> Workspace<Q> {
    Workspace::shipped(FieldChoice::Q).expect("shipped fixtures load")
}

fn e12() -> Subspace<Q> {
    Subspace::span(3, &[vec![Q::zero(), Q::one(), Q::zero()]])
}

fn m2_dirac() -> TripleRef<Q> {
    Triple::dirac(&m2::<Q>().into_ref(), &j_col()).unwrap().with_label("m2dirac").into_ref()
}

fn t2_dirac() -> TripleRef<Q> {
    Triple::dirac(&t2::<Q>().into_ref(), &e12()).unwrap().with_label("t2dirac").into_ref()
}

fn c1() -> Outcome {
    let ws = shipped();
    for (n, a) in &ws.algebras {
        passed(&validate_algebra(a), n)?;
    }
    for (n, t) in &ws.triples {
        passed(&t.validate(), n)?;
    }
    for (n, e) in &ws.bimodules {
        passed(&e.validate(), n)?;
    }
    let t = Triple::dirac(&m2::<Q>().into_ref(), &j_col()).map_err(|e| e.to_string())?;
    // lower triangular: E11, E21, E22
    let lower = Subspace::span(4, &[vec![Q::one(), Q::zero(), Q::zero(), Q::zero()], vec![Q::zero(), Q::zero(), Q::one(), Q::zero()], vec![Q::zero(), Q::zero(), Q::zero(), Q::one()]]);
    ensure(t.n_sub == lower, || "N(J_col) is not the lower-triangular matrices".into())?;
    let red = t.reduce();
    ensure(red.alg.dim == 1, || format!("reduced dim {}", red.alg.dim))?;
    Ok(format!("{} algebras, {} triples, {} bimodules valid; dim N = 3, dim red = 1", ws.algebras.len(), ws.triples.len(), ws.bimodules.len()))
}

fn c2() -> Outcome {
    let ws = shipped();
    let mut laws = 0;
    for (n, t) in &ws.triples {
        let id = TripleMorphism::identity(t);
        passed(&reduction_functor_laws(&[id.clone(), id]).map_err(|e| e.to_string())?, n)?;
        laws += 1;
    }
    let mut algs: Vec<_> = ws.algebras.values().cloned().collect();
    algs.push(field::<Q>().into_ref());
    for a in &algs {
        passed(&check_unred_identity(a), &format!("red∘unred({})", a.label))?;
        let d = Triple::trivial(a).reduce().alg.dim;
        ensure(d == 0, || format!("red(trivial({})) has dim {d}", a.label))?;
    }
    for seed in 0..50u64 {
        let mut r = rng(seed);
        let fs = morphism_chain::<Q>(&mut r, 3, 4);
        passed(&reduction_functor_laws(&fs).map_err(|e| e.to_string())?, &format!("seed {seed}"))?;
    }
    Ok(format!("{laws} fixture identities, {} algebras for unred/trivial, 50 random chains of length 3", algs.len()))
}

fn c3() -> Outcome {
    let check = |t: &Triple<Q>, what: &str| -> Result<(), String> {
        let cb = canonical_bimodule(t);
        passed(&cb.report, what)?;
        ensure(cb.end_dim == cb.normalizer_quotient_dim, || format!("{what}: dims {} vs {}", cb.end_dim, cb.normalizer_quotient_dim))
    };
    check(&m2_dirac(), "M2/J_col")?;
    check(&t2_dirac(), "T2/E12")?;
    let mut dims = Vec::new();
    for seed in 0..25u64 {
        let mut r = rng(1000 + seed);
        let a = algebra::<Q>(&mut r, 4);
        let j = left_ideal_generated(&a, &[sparse_vector(&mut r, a.dim)]);
        let t = Triple::dirac(&a, &j).map_err(|e| e.to_string())?;
        check(&t, &format!("seed {seed}"))?;
        dims.push(a.dim);
    }
    Ok(format!("fixtures plus 25 random Dirac triples, algebra dims {}..={}", dims.iter().min().unwrap(), dims.iter().max().unwrap()))
}

fn c4() -> Outcome {
    let mut max_mod = 0;
    for seed in 0..50u64 {
        let mut r = rng(seed);
        let c = chain::<Q>(&mut r, 4, 3, 3);
        for e in &c {
            let (t, n, _) = e.dims();
            ensure(t <= 3 && n <= 3 && e.left.tot.dim <= 3, || format!("seed {seed}: instance too large"))?;
            max_mod = max_mod.max(t.max(n));
        }
        passed(&pentagon_check(&c[0], &c[1], &c[2], &c[3]).map_err(|e| e.to_string())?, &format!("seed {seed} pentagon"))?;
        passed(&triangle_check(&c[0], &c[1]).map_err(|e| e.to_string())?, &format!("seed {seed} triangle"))?;
    }
    Ok(format!("50 tuples, largest module dim {max_mod}"))
}

fn mutation_detected(f: &Bimodule3<Q>, e: &Bimodule3<Q>) -> Result<bool, String> {
    let bad = tensor3_with(f, e, ZeroRule::OmitF0EN).map_err(|x| x.to_string())?;
    let m = MultIso::new(f, e, &bad, &reduce_bimodule(f), &reduce_bimodule(e), &reduce_bimodule(&bad.module)).map_err(|x| x.to_string())?;
    let hit = m.report.failures().any(|c| c.name.starts_with("m well-defined"));
    Ok(hit)
}

fn c5() -> Outcome {
    let mut caught = 0;
    for seed in 0..25u64 {
        let mut r = rng(2000 + seed);
        let c = chain::<Q>(&mut r, 3, 3, 3);
        let what = format!("seed {seed}");
        let (m, _) = MultIso::compute(&c[0], &c[1]).map_err(|e| e.to_string())?;
        passed(&m.report, &what)?;
        let alpha = morphism(&mut r, &c[0], &c[0]);
        let beta = morphism(&mut r, &c[1], &c[1]);
        passed(&check_mult_naturality(&c[0], &c[0], &alpha, &c[1], &c[1], &beta).map_err(|e| e.to_string())?, &what)?;
        passed(&reduction_composition_coherence(&c[0], &c[1], &c[2]).map_err(|e| e.to_string())?, &what)?;
        passed(&reduction_identity_coherence(&c[1]).map_err(|e| e.to_string())?, &what)?;
        caught += mutation_detected(&c[0], &c[1])? as usize;
    }
    // F over unred(k) with F_0 = F_N
    let k = Triple::unred(&field::<Q>().into_ref()).into_ref();
    let mut f = Bimodule3::identity(&k);
    f.zero = Subspace::full(1);
    let fixed = mutation_detected(&f, &Bimodule3::identity(&k))?;
    ensure(fixed || caught > 0, || "mutation went undetected".into())?;
    Ok(format!("25 instances; mutation caught on the fixed instance: {fixed}, on {caught}/25 random"))
}

fn c6() -> Outcome {
    let bases = [Triple::unred(&field::<Q>().into_ref()).with_label("unred(Q)").into_ref(), t2_dirac(), m2_dirac()];
    let mut count = 0;
    for a in &bases {
        for n in 1..=3 {
            let what = format!("{} n={n}", a.label);
            let d = standard_equivalence(a, n).map_err(|e| e.to_string())?;
            passed(&verify_equivalence(&d), &what)?;
            ensure(check_zero_component(&d), || format!("{what}: zero component"))?;
            let db = dual_basis(&d, &right_generators(&d.e.nmod)).map_err(|e| e.to_string())?;
            passed(&db.report, &what)?;
            let id = idempotents(&db, d.a());
            passed(&id.report, &what)?;
            ensure(id.equal, || format!("{what}: e_tot != e_N"))?;
            passed(&check_structure_theorem(&d).map_err(|e| e.to_string())?, &what)?;
            count += 1;
        }
    }
    Ok(format!("{count} (triple, n) pairs"))
}

fn order_two(c: &[DeformedBimodule<Q>]) -> bool {
    c.iter().all(|e| e.left.order == 2 && e.right.order == 2)
}

fn c7() -> Outcome {
    let (mut used, mut seed) = (0, 0u64);
    while used < 25 {
        ensure(seed < 500, || format!("only {used} order-2 instances in 500 seeds"))?;
        let mut r = rng(3000 + seed);
        let c = deformed_chain::<Q>(&mut r, 3, 2);
        seed += 1;
        if !order_two(&c) {
            continue;
        }
        let what = format!("seed {}", 3000 + seed - 1);
        passed(&cl_composition_coherence(&c[0], &c[1], &c[2]).map_err(|e| e.to_string())?, &what)?;
        for e in &c {
            passed(&cl_identity_coherence(e).map_err(|x| x.to_string())?, &what)?;
            let d = cl_data(e).map_err(|x| x.to_string())?;
            passed(&d.cl.report, &what)?;
            passed(&dim_accounting_bimodule(e, &d.cl), &what)?;
            passed(&dim_accounting_triple(&e.left, &d.left), &what)?;
            passed(&dim_accounting_triple(&e.right, &d.right), &what)?;
        }
        let t0 = c[2].right.clone();
        let (f0, t1) = deformed_triple_morphism(&mut r, &t0);
        let (f1, t2) = deformed_triple_morphism(&mut r, &t1);
        passed(&cl_functor_laws(&[t0, t1, t2], &[f0, f1]).map_err(|e| e.to_string())?, &what)?;
        used += 1;
    }
    Ok(format!("25 order-2 instances from {seed} seeds"))
}

fn c8() -> Outcome {
    let ws = shipped();
    let opts = CommuteOptions::default();
    for name in ["dual_id", "dual_lam_id", "cliff_id", "cliff_unred_id"] {
        let f = ws.deformed_bimodule(name).map_err(|e| e.to_string())?;
        passed(&check_commute(Some(&f), &f, &opts).map_err(|e| e.to_string())?, name)?;
    }
    for seed in 0..25u64 {
        let mut r = rng(4000 + seed);
        let c = deformed_chain::<Q>(&mut r, 2, 2);
        passed(&check_commute(Some(&c[0]), &c[1], &opts).map_err(|e| e.to_string())?, &format!("seed {seed}"))?;
    }
    Ok("4 fixture bimodules and 25 random ones".into())
}

fn c9() -> Outcome {
    let r = picard_check(&unred(&dual::<Q>()), 2).map_err(|e| e.to_string())?;
    passed(&r, "DUAL n=2")?;
    Ok(format!("{} checks", r.checks.len()))
}

fn c10() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_coiso");
    let commands: [&[&str]; 3] = [
        &["--format", "json", "coherence", "--seed", "11", "--iters", "4"],
        &["--format", "json", "commute-check", "--seed", "5", "--iters", "2"],
        &["--format", "json", "report-fixtures"],
    ];
    for args in commands {
        let run = || Command::new(bin).args(args).output().expect("binary runs");
        let (a, b) = (run(), run());
        ensure(a.status.code() == Some(0), || format!("{args:?}: exit {:?}", a.status.code()))?;
        ensure(!a.stdout.is_empty() && a.stdout == b.stdout, || format!("{args:?}: outputs differ"))?;
    }
    Ok("3 commands, byte-identical twice".into())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("triple axioms and Dirac", 1, c1),
        ("reduction functor laws", 5, c2),
        ("canonical bimodule identity", 10, c3),
        ("bicategory coherence", 60, c4),
        ("reduction bicategory functor", 60, c5),
        ("Morita standard family", 30, c6),
        ("classical limit functor", 60, c7),
        ("commutation of reduction and classical limit", 120, c8),
        ("Picard consequence", 30, c9),
        ("determinism", 60, c10),
    ];
    let mut failed = Vec::new();
    for (i, (title, limit, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        let took = start.elapsed();
        let res = match res {
            Ok(d) if took > Duration::from_secs(*limit) => Err(format!("{d}; too slow")),
            other => other,
        };
        let (tag, detail) = match &res {
            Ok(d) => ("PASS", d.clone()),
            Err(e) => ("FAIL", e.clone()),
        };
        println!("criterion {:>2} {tag} {title} ({:.2}s, limit {limit}s): {detail}", i + 1, took.as_secs_f64());
        if res.is_err() {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

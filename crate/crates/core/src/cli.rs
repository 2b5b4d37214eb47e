//! The `coiso` command line: one subcommand per family of checks.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cbimod::random::{chain, rng};
use crate::cbimod::{pentagon_check, reduce_bimodule, tensor3, triangle_check, Bimodule3};
use crate::classlim::commute::{reduced_dims, side};
use crate::classlim::random::deformed_chain;
use crate::classlim::{check_commute, cl_data, cl_triple, dim_accounting_bimodule, dim_accounting_triple, validate_deformed, CommuteOptions};
use crate::coiso::{canonical_bimodule, Triple};
use crate::error::CoisoError;
use crate::exact_core::{Field, Fp, Mat, Q};
use crate::finalg::{validate_algebra, Algebra};
use crate::model::{algebra_entry, model_field, FieldChoice, ModelError, Workspace};
use crate::morita::{check_structure_theorem, check_zero_component, dual_basis, idempotents, right_generators, standard_equivalence, standard_family_report, verify_equivalence};
use crate::report::{Check, Report};

#[derive(Parser, Debug)]
#[command(name = "coiso", version, about = "Exact checks for coisotropic triples, their bimodules, Morita data and classical limits")]
pub struct Cli {
    /// JSON model file; the shipped fixtures are used when omitted.
    #[arg(long, global = true)]
    pub model: Option<PathBuf>,
    /// Field for models that do not name one: Q or Fp (e.g. F7).
    #[arg(long, global = true, env = "COISO_FIELD")]
    pub field: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Re-run every validator on the loaded model.
    Validate,
    /// Reduced algebra of a triple or reduced module of a bimodule.
    #[command(group(ArgGroup::new("target").required(true).args(["triple", "bimodule"])))]
    Reduce {
        #[arg(long)]
        triple: Option<String>,
        #[arg(long)]
        bimodule: Option<String>,
    },
    /// Dirac triple of a left ideal.
    Dirac {
        #[arg(long)]
        algebra: String,
        /// Name of a subspace of the algebra.
        #[arg(long)]
        ideal: String,
    },
    /// Canonical bimodule and its endomorphism algebra.
    CanonicalBimodule {
        #[arg(long)]
        triple: String,
    },
    /// `F ⊗ E` for two composable bimodules.
    Tensor { f: String, e: String },
    /// The standard equivalence between `Mat_n(A)` and `A`.
    MoritaStandard {
        #[arg(long)]
        triple: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Every Morita check on the standard equivalence, including its reduction.
    MoritaVerify {
        #[arg(long)]
        triple: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Dual basis and idempotents of the standard equivalence.
    DualBasis {
        #[arg(long)]
        triple: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Structure and zero-component checks of the standard equivalence.
    StructureTheorem {
        #[arg(long)]
        triple: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Classical limit of a deformed triple or bimodule.
    #[command(group(ArgGroup::new("target").required(true).args(["triple", "bimodule"])))]
    Cl {
        #[arg(long)]
        triple: Option<String>,
        #[arg(long)]
        bimodule: Option<String>,
    },
    /// `η` comparing `cl ∘ red` with `red ∘ cl` on a deformed triple.
    Eta {
        #[arg(long)]
        triple: String,
    },
    /// Commutation of reduction with the classical limit, on a named bimodule or on random ones.
    #[command(group(ArgGroup::new("target").required(true).args(["bimodule", "seed"])))]
    CommuteCheck {
        #[arg(long)]
        bimodule: Option<String>,
        /// Optional outer bimodule `G` for the composition diagram of `G ⊗ E`.
        #[arg(long, requires = "bimodule")]
        with: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 5)]
        iters: usize,
    },
    /// Pentagon and triangle on random composable chains.
    Coherence {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        iters: usize,
        /// Largest algebra dimension.
        #[arg(long, default_value_t = 3)]
        dim: usize,
    },
    /// Validation and key checks on every shipped fixture.
    ReportFixtures,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Reduce { .. } => "reduce",
            Command::Dirac { .. } => "dirac",
            Command::CanonicalBimodule { .. } => "canonical-bimodule",
            Command::Tensor { .. } => "tensor",
            Command::MoritaStandard { .. } => "morita-standard",
            Command::MoritaVerify { .. } => "morita-verify",
            Command::DualBasis { .. } => "dual-basis",
            Command::StructureTheorem { .. } => "structure-theorem",
            Command::Cl { .. } => "cl",
            Command::Eta { .. } => "eta",
            Command::CommuteCheck { .. } => "commute-check",
            Command::Coherence { .. } => "coherence",
            Command::ReportFixtures => "report-fixtures",
        }
    }

    fn seed(&self) -> Option<u64> {
        match self {
            Command::CommuteCheck { seed, .. } => *seed,
            Command::Coherence { seed, .. } => Some(*seed),
            _ => None,
        }
    }
}

/// Serialized result of one invocation.
#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct CliReport {
    pub command: String,
    pub field: String,
    pub inputs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub checks: Vec<Check>,
    pub outputs: BTreeMap<String, Value>,
}

impl CliReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn absorb(&mut self, prefix: &str, r: Report) {
        for mut c in r.checks {
            if !prefix.is_empty() {
                c.name = format!("{prefix}: {}", c.name);
            }
            self.checks.push(c);
        }
    }

    fn check(&mut self, name: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) {
        self.checks.push(Check { name: name.into(), pass: ok, witness: (!ok).then(witness) });
    }

    fn out(&mut self, key: &str, v: Value) {
        self.outputs.insert(key.into(), v);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_human(&self) -> String {
        let mut s = format!("{} over {}", self.command, self.field);
        if !self.inputs.is_empty() {
            s += &format!(" [{}]", self.inputs.join(", "));
        }
        if let Some(seed) = self.seed {
            s += &format!(" seed={seed}");
        }
        s += "\n";
        for c in &self.checks {
            match &c.witness {
                Some(w) if !c.pass => s += &format!("  FAIL {}: {w}\n", c.name),
                _ => s += &format!("  {} {}\n", if c.pass { "ok  " } else { "FAIL" }, c.name),
            }
        }
        for (k, v) in &self.outputs {
            s += &format!("  {k} = {}\n", serde_json::to_string(v).expect("value serializes"));
        }
        let ok = self.checks.iter().filter(|c| c.pass).count();
        s += &format!("{ok}/{} checks passed\n", self.checks.len());
        s
    }
}

/// Failure to run a command at all; exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<ModelError> for InputError {
    fn from(e: ModelError) -> Self {
        InputError(e.to_string())
    }
}

fn input(e: CoisoError) -> InputError {
    InputError(e.to_string())
}

fn scalars<F: Field>(v: &[F]) -> Value {
    Value::from(v.iter().map(F::render).collect::<Vec<_>>())
}

fn mat_json<F: Field>(m: &Mat<F>) -> Value {
    json!(m.render())
}

fn alg_json<F: Field>(a: &Algebra<F>) -> Value {
    let mut v = algebra_entry(a);
    v["label"] = json!(a.label);
    v
}

fn triple_json<F: Field>(t: &Triple<F>) -> Value {
    json!({ "tot": t.tot.dim, "n": t.n_sub.dim(), "zero": t.zero.dim() })
}

fn bimod_json<F: Field>(e: &Bimodule3<F>) -> Value {
    let (t, n, z) = e.dims();
    json!({ "tot": t, "n": n, "zero": z, "left": e.left.label, "right": e.right.label })
}

fn execute<F: Field>(cmd: &Command, ws: &Workspace<F>, rep: &mut CliReport) -> Result<(), InputError> {
    match cmd {
        Command::Validate => {
            for (name, a) in &ws.algebras {
                rep.absorb(&format!("algebra {name}"), validate_algebra(a));
            }
            for (name, t) in &ws.triples {
                rep.absorb(&format!("triple {name}"), t.validate());
                rep.out(&format!("triple {name}"), triple_json(t));
            }
            for (name, e) in &ws.bimodules {
                rep.absorb(&format!("bimodule {name}"), e.validate());
                rep.out(&format!("bimodule {name}"), bimod_json(e));
            }
            for (name, d) in &ws.deformed {
                rep.absorb(&format!("deformed {name}"), validate_deformed(d));
            }
        }
        Command::Reduce { triple, bimodule } => {
            if let Some(name) = triple {
                let t = ws.triple_named(name)?;
                rep.inputs.push(name.clone());
                rep.absorb("triple", t.validate());
                let red = t.reduce();
                rep.out("reduced", alg_json(&red.alg));
            }
            if let Some(name) = bimodule {
                let e = ws.bimodule_named(name)?;
                rep.inputs.push(name.clone());
                let rb = reduce_bimodule(e);
                rep.absorb("reduced bimodule", rb.report.clone());
                rep.out("reduced_dim", json!(rb.module.dim));
            }
        }
        Command::Dirac { algebra, ideal } => {
            rep.inputs.extend([algebra.clone(), ideal.clone()]);
            let a = ws.algebras.get(algebra).ok_or_else(|| InputError(format!("unresolved algebra `{algebra}`")))?;
            let (of, j) = ws.subspaces.get(ideal).ok_or_else(|| InputError(format!("unresolved subspace `{ideal}`")))?;
            if of != algebra {
                return Err(InputError(format!("subspace `{ideal}` lives in `{of}`, not `{algebra}`")));
            }
            let t = Triple::dirac(a, j).map_err(input)?;
            rep.absorb("triple", t.validate());
            rep.out("n_basis", json!(t.n_sub.vectors().iter().map(|v| scalars(v)).collect::<Vec<_>>()));
            rep.out("dims", triple_json(&t));
            rep.out("reduced", alg_json(&t.reduce().alg));
        }
        Command::CanonicalBimodule { triple } => {
            rep.inputs.push(triple.clone());
            let t = ws.triple_named(triple)?;
            let cb = canonical_bimodule(t);
            rep.absorb("", cb.report.clone());
            rep.out("module_dim", json!(cb.module.dim));
            rep.out("end_dim", json!(cb.end_dim));
            rep.out("normalizer_quotient_dim", json!(cb.normalizer_quotient_dim));
        }
        Command::Tensor { f, e } => {
            rep.inputs.extend([f.clone(), e.clone()]);
            let t = tensor3(ws.bimodule_named(f)?, ws.bimodule_named(e)?).map_err(input)?;
            rep.absorb("tensor", t.module.validate());
            rep.out("dims", bimod_json(&t.module));
            rep.out("iota_injective", json!(t.module.iota_injective()));
        }
        Command::MoritaStandard { triple, n } => {
            rep.inputs.push(triple.clone());
            let d = standard_equivalence(ws.triple_named(triple)?, *n).map_err(input)?;
            rep.absorb("", verify_equivalence(&d));
            rep.out("B", triple_json(d.b()));
            rep.out("E", bimod_json(&d.e));
            rep.out("E'", bimod_json(&d.e_prime));
        }
        Command::MoritaVerify { triple, n } => {
            rep.inputs.push(triple.clone());
            rep.absorb("", standard_family_report(ws.triple_named(triple)?, *n).map_err(input)?);
        }
        Command::DualBasis { triple, n } => {
            rep.inputs.push(triple.clone());
            let d = standard_equivalence(ws.triple_named(triple)?, *n).map_err(input)?;
            let gens = right_generators(&d.e.nmod);
            let db = dual_basis(&d, &gens).map_err(input)?;
            rep.absorb("dual basis", db.report.clone());
            let id = idempotents(&db, d.a());
            rep.absorb("idempotents", id.report.clone());
            rep.out("generators", json!(db.gens.iter().map(|v| scalars(v)).collect::<Vec<_>>()));
            rep.out("functionals", json!(db.funcs.iter().map(mat_json).collect::<Vec<_>>()));
            rep.out("idempotents_equal", json!(id.equal));
        }
        Command::StructureTheorem { triple, n } => {
            rep.inputs.push(triple.clone());
            let d = standard_equivalence(ws.triple_named(triple)?, *n).map_err(input)?;
            rep.check("E_N A_0 = E_0", check_zero_component(&d), || "zero component differs".into());
            rep.absorb("structure", check_structure_theorem(&d).map_err(input)?);
        }
        Command::Cl { triple, bimodule } => {
            if let Some(name) = triple {
                rep.inputs.push(name.clone());
                let t = ws.deformed_named(name)?;
                let ct = cl_triple(t).map_err(input)?;
                rep.absorb("dims", dim_accounting_triple(t, &ct));
                rep.out("cl", triple_json(&ct.triple));
                rep.out("cl_tot", alg_json(&ct.tot.alg));
            }
            if let Some(name) = bimodule {
                rep.inputs.push(name.clone());
                let e = ws.deformed_bimodule(name)?;
                let d = cl_data(&e).map_err(input)?;
                rep.absorb("cl", d.cl.report.clone());
                rep.absorb("dims", dim_accounting_bimodule(&e, &d.cl));
                rep.out("cl", bimod_json(&d.cl.module));
            }
        }
        Command::Eta { triple } => {
            rep.inputs.push(triple.clone());
            let s = side(ws.deformed_named(triple)?).map_err(input)?;
            rep.absorb("η", s.report.clone());
            let (a, b) = reduced_dims(&s);
            rep.out("cl_red_dim", json!(a));
            rep.out("red_cl_dim", json!(b));
            rep.out("eta", mat_json(&s.eta));
        }
        Command::CommuteCheck { bimodule, with, seed, iters } => {
            let opts = CommuteOptions::default();
            if let Some(name) = bimodule {
                rep.inputs.push(name.clone());
                let f = ws.deformed_bimodule(name)?;
                let g = match with {
                    Some(g) => {
                        rep.inputs.push(g.clone());
                        Some(ws.deformed_bimodule(g)?)
                    }
                    None => None,
                };
                rep.absorb("", check_commute(g.as_ref(), &f, &opts).map_err(input)?);
            } else if let Some(seed) = seed {
                let mut r = rng(*seed);
                let mut ok = 0;
                for i in 0..*iters {
                    let c = deformed_chain::<F>(&mut r, 2, 2);
                    let res = check_commute(Some(&c[0]), &c[1], &opts).map_err(input)?;
                    ok += res.passed() as usize;
                    rep.absorb(&format!("#{i}"), res);
                }
                rep.out("passed", json!(format!("{ok}/{iters}")));
            }
        }
        Command::Coherence { seed, iters, dim } => {
            let mut r = rng(*seed);
            let mut ok = 0;
            for i in 0..*iters {
                let c = chain::<F>(&mut r, 4, *dim, 3);
                let p = pentagon_check(&c[0], &c[1], &c[2], &c[3]).map_err(input)?;
                let t = triangle_check(&c[0], &c[1]).map_err(input)?;
                ok += (p.passed() && t.passed()) as usize;
                rep.absorb(&format!("#{i}"), p);
                rep.absorb(&format!("#{i}"), t);
            }
            rep.out("passed", json!(format!("{ok}/{iters}")));
        }
        Command::ReportFixtures => {
            execute(&Command::Validate, ws, rep)?;
            for name in ws.triples.keys() {
                let t = &ws.triples[name];
                rep.out(&format!("reduced {name}"), json!(t.reduce().alg.dim));
            }
            for name in ["m2dirac", "t2dirac", "k_unred"] {
                if let Ok(t) = ws.triple_named(name) {
                    rep.absorb(&format!("canonical {name}"), canonical_bimodule(t).report);
                    rep.absorb(&format!("morita {name} n=2"), standard_family_report(t, 2).map_err(input)?);
                }
            }
            for name in ["cliff_id", "dual_id"] {
                if ws.bimodules.contains_key(name) {
                    let f = ws.deformed_bimodule(name)?;
                    rep.absorb(&format!("commute {name}"), check_commute(None, &f, &CommuteOptions::default()).map_err(input)?);
                }
            }
        }
    }
    Ok(())
}

fn run_in<F: Field>(cli: &Cli, text: Option<&str>, choice: FieldChoice) -> Result<CliReport, InputError> {
    let ws = match (text, &cli.command) {
        (Some(t), c) if !matches!(c, Command::ReportFixtures) => Workspace::<F>::parse(t, choice)?,
        _ => Workspace::<F>::shipped(choice)?,
    };
    let mut rep = CliReport {
        command: cli.command.name().into(),
        field: choice.name(),
        inputs: Vec::new(),
        seed: cli.command.seed(),
        checks: Vec::new(),
        outputs: BTreeMap::new(),
    };
    execute(&cli.command, &ws, &mut rep)?;
    Ok(rep)
}

macro_rules! dispatch {
    ($cli:expr, $text:expr, $choice:expr; $($p:literal),*) => {
        match $choice {
            FieldChoice::Q => run_in::<Q>($cli, $text, $choice),
            $(FieldChoice::Fp($p) => run_in::<Fp<$p>>($cli, $text, $choice),)*
            FieldChoice::Fp(p) => Err(InputError(format!("prime {p} is not compiled in"))),
        }
    };
}

/// Loads the model and runs the command. Only the primes listed here are compiled into the binary.
pub fn run(cli: &Cli) -> Result<CliReport, InputError> {
    let default = match &cli.field {
        Some(f) => FieldChoice::parse(f).map_err(InputError)?,
        None => FieldChoice::Q,
    };
    let text = match &cli.model {
        Some(p) => Some(std::fs::read_to_string(p).map_err(|e| InputError(format!("{}: {e}", p.display())))?),
        None => None,
    };
    let choice = match &text {
        Some(t) => model_field(t, default)?,
        None => default,
    };
    dispatch!(cli, text.as_deref(), choice; 2, 3, 7, 65521)
}

/// Parses a full argument list, program name first.
pub fn parse_args<I, T>(args: I) -> Result<Cli, String>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    Cli::try_parse_from(args).map_err(|e| e.to_string())
}

/// 0 when every check passed, 1 otherwise.
pub fn exit_code(rep: &CliReport) -> i32 {
    if rep.passed() {
        0
    } else {
        1
    }
}

/// Runs and prints; returns the process exit code.
pub fn main_with(cli: &Cli) -> i32 {
    match run(cli) {
        Ok(rep) => {
            let text = match cli.format {
                Format::Json => rep.to_json(),
                Format::Human => rep.to_human(),
            };
            let _ = std::io::stdout().write_all(text.as_bytes());
            exit_code(&rep)
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> CliReport {
        let cli = Cli::try_parse_from([&["coiso"], args].concat()).unwrap();
        run(&cli).unwrap()
    }

    #[test]
    fn reduce_m2dirac_has_dim_one() {
        let r = run_args(&["reduce", "--triple", "m2dirac"]);
        assert!(r.passed());
        assert_eq!(r.outputs["reduced"]["dim"], json!(1));
    }

    #[test]
    fn dirac_gives_lower_triangular() {
        let r = run_args(&["dirac", "--algebra", "M2", "--ideal", "J_col"]);
        assert!(r.passed());
        assert_eq!(r.outputs["dims"]["n"], json!(3));
    }

    #[test]
    fn coherence_sweep() {
        let r = run_args(&["coherence", "--seed", "0", "--iters", "10"]);
        assert!(r.passed(), "{}", r.to_human());
        assert_eq!(r.outputs["passed"], json!("10/10"));
    }

    #[test]
    fn commute_on_cliff() {
        let r = run_args(&["commute-check", "--bimodule", "cliff_id"]);
        assert!(r.passed(), "{}", r.to_human());
    }

    #[test]
    fn failed_check_maps_to_exit_one() {
        let mut r = run_args(&["eta", "--triple", "cliff"]);
        assert_eq!(exit_code(&r), 0);
        r.check("forced", false, || "w".into());
        assert_eq!(exit_code(&r), 1);
        assert!(r.to_human().contains("FAIL forced: w"));
    }

    #[test]
    fn randomized_commands_need_a_seed() {
        assert!(Cli::try_parse_from(["coiso", "coherence"]).is_err());
        assert!(Cli::try_parse_from(["coiso", "commute-check"]).is_err());
    }

    #[test]
    fn unknown_name_is_input_error() {
        let cli = Cli::try_parse_from(["coiso", "reduce", "--triple", "nope"]).unwrap();
        assert!(run(&cli).unwrap_err().0.contains("unresolved triple `nope`"));
    }

    #[test]
    fn prime_field_run() {
        let r = run_args(&["--field", "F7", "reduce", "--triple", "m2dirac"]);
        assert_eq!(r.field, "F7");
        assert_eq!(r.outputs["reduced"]["dim"], json!(1));
        let cli = Cli::try_parse_from(["coiso", "--field", "F7", "coherence", "--seed", "1", "--iters", "2"]).unwrap();
        let r = run(&cli).unwrap();
        assert_eq!(r.field, "F7");
        assert!(r.passed());
    }
}

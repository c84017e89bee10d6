//! The `shiftsym` command runner.
//!
//! Every command reads a document, appends records and prints the result.
//! Exit codes: 0 pass, 1 mathematical failure (a `result` record carries the
//! witness), 2 input error.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::algebra::{Element, Truncation};
use crate::cdga::{self, compare_resolution, quasi_free_resolution, HomologyOptions, MonomialBound, QuotientTarget, ResolutionOptions};
use crate::correspondence::{poisson_to_symplectic, symplectic_to_poisson, verify_witness};
use crate::derham::{self, check_lagrangian_strict, check_presymplectic, check_symplectic_strict};
use crate::dgla::ExtensionOutcome;
use crate::error::{Error, Result};
use crate::instances;
use crate::io::{self, Document, Record, ResultRecord, Status, TruncationRecord, Workspace};
use crate::polyvector::PolyContext;
use crate::sample::Sampler;
use crate::scalar;

/// Environment variable naming the directory relative paths are resolved against.
pub const WORKSPACE_ENV: &str = "SHIFTSYM_WORKSPACE";

#[derive(Parser, Debug)]
#[command(name = "shiftsym", version, about = "Exact checks for weighted shifted symplectic and Poisson structures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Polynomial order bound for computations that need one.
    #[arg(long, global = true)]
    pub max_order: Option<u32>,
    /// Highest level for the correspondence solvers.
    #[arg(long, global = true)]
    pub max_level: Option<u32>,
    /// Weight window `r:s` for `truncate`.
    #[arg(long, global = true, value_parser = parse_window)]
    pub weight_window: Option<(i64, i64)>,
    /// Postnikov degree `k` for `truncate`.
    #[arg(long, global = true)]
    pub degree_window: Option<u32>,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the output document here instead of standard output.
    #[arg(long, global = true)]
    pub emit: Option<PathBuf>,
    /// Record the command acts on; defaults to the first record of the right type.
    #[arg(long, global = true)]
    pub id: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check every record against its axioms.
    Validate { input: PathBuf },
    /// Homology of one (degree, weight) slice.
    Homology {
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        weight: i64,
    },
    /// Quasi-free resolution of an algebra with relations.
    Resolve {
        input: PathBuf,
        #[arg(long, default_value_t = 3)]
        up_to: u32,
    },
    /// Weight or Postnikov truncation.
    Truncate { input: PathBuf },
    /// Closure and strict non-degeneracy of a form structure.
    SpCheck { input: PathBuf },
    /// Strict Lagrangian test.
    LagCheck { input: PathBuf },
    /// Schouten bracket of two polyvector structures.
    Schouten {
        input: PathBuf,
        #[arg(long)]
        with: Option<String>,
    },
    /// Maurer–Cartan residue of a polyvector structure.
    McCheck { input: PathBuf },
    /// Solve the compatibility equations in either direction.
    Convert { direction: Direction, input: PathBuf },
    /// Recompute a witness.
    Verify { what: Verifiable, input: PathBuf },
    /// Chevalley–Eilenberg algebra of a DGLA.
    Ce { input: PathBuf },
    /// Formal symplectic form of a DGLA with pairing.
    FormalSp { input: PathBuf },
    /// Casimir Poisson structure of a DGLA with pairing.
    Casimir { input: PathBuf },
    /// Lift a Maurer–Cartan element along a small extension.
    McExtend {
        input: PathBuf,
        #[arg(long)]
        extension: Option<String>,
    },
    /// Gauge action of a degree-zero tensor on a Maurer–Cartan element.
    Gauge {
        input: PathBuf,
        #[arg(long)]
        by: String,
    },
    /// Built-in instances and seeded law checks.
    Selftest,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Direction {
    #[value(name = "sp->poisson")]
    SpToPoisson,
    #[value(name = "poisson->sp")]
    PoissonToSp,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Verifiable {
    Witness,
}

fn parse_window(s: &str) -> std::result::Result<(i64, i64), String> {
    let (r, t) = s.split_once(':').ok_or("expected r:s")?;
    let r = r.trim().parse().map_err(|_| format!("bad lower bound `{r}`"))?;
    let t = t.trim().parse().map_err(|_| format!("bad upper bound `{t}`"))?;
    Ok((r, t))
}

/// Output of one invocation.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// 2 for malformed or out-of-contract input, 1 for mathematical failures.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. }
        | Error::UnknownField(_)
        | Error::DanglingReference(_)
        | Error::InvalidInput(_)
        | Error::ContextMismatch
        | Error::MissingImage(_)
        | Error::OddSquare(_)
        | Error::NonFormal(_)
        | Error::NotSmall(_) => 2,
        _ => 1,
    }
}

fn witness_of(e: &Error) -> Option<&Element> {
    match e {
        Error::NotClosed(w)
        | Error::NotAMap { residue: w, .. }
        | Error::NotMC { residue: w }
        | Error::MCFailure { residue: w }
        | Error::ObstructionNonzero { witness: w, .. }
        | Error::AxiomFailure { witness: w }
        | Error::ClosureFailure { witness: w } => Some(w),
        _ => None,
    }
}

fn resolve(path: &Path) -> PathBuf {
    match std::env::var_os(WORKSPACE_ENV) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

struct Session {
    doc: Document,
    failed: bool,
    command: &'static str,
    subject: Option<String>,
}

impl Session {
    fn fresh_id(&self, base: &str) -> String {
        let taken = |id: &str| self.doc.entities.iter().any(|r| r.id() == id);
        if !taken(base) {
            return base.to_string();
        }
        (2..).map(|k| format!("{base}.{k}")).find(|id| !taken(id)).expect("unbounded")
    }

    fn push(&mut self, r: Record) {
        self.doc.entities.push(r);
    }

    fn result(&mut self, subject: &str, passed: bool, summary: impl Into<String>, values: BTreeMap<String, Value>, truncation: TruncationRecord) {
        if !passed {
            self.failed = true;
        }
        let id = self.fresh_id(&format!("{}.{}", subject, self.command));
        self.push(Record::Result(ResultRecord {
            id,
            command: self.command.into(),
            subject: subject.into(),
            status: if passed { Status::Pass } else { Status::Fail },
            summary: summary.into(),
            values,
            truncation,
        }));
    }
}

fn values<const N: usize>(pairs: [(&str, Value); N]) -> BTreeMap<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn trunc(t: &Truncation) -> TruncationRecord {
    TruncationRecord { max_order: t.max_order, max_tangent_order: t.max_tangent_order, max_form_order: None, weight_window: t.weight_window, degree_window: t.degree_window }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Homology { .. } => "homology",
        Command::Resolve { .. } => "resolve",
        Command::Truncate { .. } => "truncate",
        Command::SpCheck { .. } => "sp-check",
        Command::LagCheck { .. } => "lag-check",
        Command::Schouten { .. } => "schouten",
        Command::McCheck { .. } => "mc-check",
        Command::Convert { .. } => "convert",
        Command::Verify { .. } => "verify",
        Command::Ce { .. } => "ce",
        Command::FormalSp { .. } => "formal-sp",
        Command::Casimir { .. } => "casimir",
        Command::McExtend { .. } => "mc-extend",
        Command::Gauge { .. } => "gauge",
        Command::Selftest => "selftest",
    }
}

fn input_of(c: &Command) -> Option<&Path> {
    match c {
        Command::Validate { input }
        | Command::Homology { input, .. }
        | Command::Resolve { input, .. }
        | Command::Truncate { input }
        | Command::SpCheck { input }
        | Command::LagCheck { input }
        | Command::Schouten { input, .. }
        | Command::McCheck { input }
        | Command::Convert { input, .. }
        | Command::Verify { input, .. }
        | Command::Ce { input }
        | Command::FormalSp { input }
        | Command::Casimir { input }
        | Command::McExtend { input, .. }
        | Command::Gauge { input, .. } => Some(input),
        Command::Selftest => None,
    }
}

/// Parse arguments and run; never exits the process.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    run_cli(&cli)
}

pub fn run_cli(cli: &Cli) -> Outcome {
    let doc = match input_of(&cli.command) {
        Some(path) => {
            let path = resolve(path);
            let text = match std::fs::read_to_string(&path) {
                Ok(t) => t,
                Err(e) => return Outcome { code: 2, stdout: String::new(), stderr: format!("error: cannot read {}: {e}\n", path.display()) },
            };
            match io::parse(&text) {
                Ok(d) => d,
                Err(e) => return Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
            }
        }
        None => Document { format_version: io::FORMAT_VERSION.into(), entities: Vec::new() },
    };
    let mut session = Session { doc, failed: false, command: command_name(&cli.command), subject: None };
    let code = match execute(cli, &mut session) {
        Ok(()) => i32::from(session.failed),
        Err(e) => {
            let code = exit_code(&e);
            if code == 2 {
                return Outcome { code, stdout: String::new(), stderr: format!("error: {e}\n") };
            }
            let subject = session.subject.clone().unwrap_or_else(|| "document".into());
            let vals = witness_of(&e).map(|w| values([("witness", io::element_value(w))])).unwrap_or_default();
            session.result(&subject, false, e.to_string(), vals, TruncationRecord::default());
            1
        }
    };
    let text = io::print(&session.doc);
    match &cli.emit {
        Some(path) => {
            let path = resolve(path);
            if let Err(e) = std::fs::write(&path, &text) {
                return Outcome { code: 2, stdout: String::new(), stderr: format!("error: cannot write {}: {e}\n", path.display()) };
            }
            Outcome { code, stdout: String::new(), stderr: String::new() }
        }
        None => Outcome { code, stdout: text, stderr: String::new() },
    }
}

fn subject(cli: &Cli, ws: &Workspace, s: &mut Session, kind: &str) -> Result<String> {
    let id = match &cli.id {
        Some(id) => id.clone(),
        None => ws.first(kind)?.to_string(),
    };
    s.subject = Some(id.clone());
    Ok(id)
}

fn execute(cli: &Cli, s: &mut Session) -> Result<()> {
    let doc = s.doc.clone();
    let ws = Workspace::new(&doc);
    match &cli.command {
        Command::Validate { .. } => validate(&ws, s),
        Command::Homology { degree, weight, .. } => {
            let id = subject(cli, &ws, s, "algebra")?;
            let a = ws.algebra(&id)?;
            let relations = ws.relations(&id)?;
            let order = cli.max_order.unwrap_or(4);
            let h = if relations.is_empty() {
                a.homology(*degree, *weight, order)?
            } else {
                QuotientTarget { algebra: a.clone(), relations }.homology(*degree, *weight, order)?
            };
            let reps: Vec<Value> = h.representatives.iter().map(io::element_value).collect();
            s.result(
                &id,
                true,
                format!("H at degree {degree}, weight {weight} has dimension {}", h.dimension),
                values([
                    ("dimension", json!(h.dimension)),
                    ("representatives", Value::Array(reps)),
                    ("order_used", json!(h.order_used)),
                    ("padding", json!(h.padding)),
                ]),
                trunc(&a.truncation),
            );
            Ok(())
        }
        Command::Resolve { up_to, .. } => {
            let id = subject(cli, &ws, s, "algebra")?;
            let target = QuotientTarget { algebra: ws.algebra(&id)?, relations: ws.relations(&id)? };
            let opts = ResolutionOptions { max_order: cli.max_order.unwrap_or(6), homology: HomologyOptions::default() };
            let res = quasi_free_resolution(&target, *up_to, opts)?;
            let slices = compare_resolution(&res, &target, 0..=*up_to, opts.max_order)?;
            let iso = slices.iter().all(|c| c.is_iso());
            let new_id = s.fresh_id(&format!("{id}.resolution"));
            s.push(Record::Algebra(io::algebra_record(&new_id, &res.algebra, &[])));
            let table: Vec<Value> = slices
                .iter()
                .map(|c| json!({"degree": c.degree, "weight": c.weight, "source": c.source_dimension, "target": c.target_dimension, "rank": c.rank}))
                .collect();
            let map: BTreeMap<String, Value> = res.map.iter().map(|(g, e)| (g.name().to_string(), io::element_value(e))).collect();
            s.result(
                &id,
                iso,
                format!("generators added: {}; {}", res.added.len(), if iso { "homology isomorphic on every slice" } else { "homology differs" }),
                values([("resolution", json!(new_id)), ("slices", Value::Array(table)), ("map", json!(map))]),
                trunc(&res.algebra.truncation),
            );
            Ok(())
        }
        Command::Truncate { .. } => {
            let id = subject(cli, &ws, s, "algebra")?;
            let a = ws.algebra(&id)?;
            let (out, label) = match (cli.weight_window, cli.degree_window) {
                (Some((r, t)), None) => (a.weight_truncate(r, t)?.0, format!("weights {r}:{t}")),
                (None, Some(k)) => (a.postnikov_truncate(k)?, format!("Postnikov degree {k}")),
                _ => return Err(Error::InvalidInput("truncate needs exactly one of --weight-window and --degree-window".into())),
            };
            let new_id = s.fresh_id(&format!("{id}.truncated"));
            s.push(Record::Algebra(io::algebra_record(&new_id, &out, &ws.relations(&id)?)));
            s.result(&id, true, format!("truncated to {label}"), values([("algebra", json!(new_id))]), trunc(&out.truncation));
            Ok(())
        }
        Command::SpCheck { .. } => {
            let id = subject(cli, &ws, s, "form_structure")?;
            let (a, w) = ws.form(&id)?;
            let closure = check_presymplectic(&a, &w)?;
            let strict = check_symplectic_strict(&a, &w)?;
            let passed = closure.is_valid() && strict.passed;
            let violations: Vec<Value> = closure.violations.iter().map(|v| json!({"what": v.what, "witness": io::element_value(&v.witness)})).collect();
            let summary = match (closure.is_valid(), strict.passed) {
                (true, true) => "closed and strictly non-degenerate".to_string(),
                (false, _) => "closure fails".to_string(),
                (true, false) => "closed but degenerate".to_string(),
            };
            s.result(
                &id,
                passed,
                summary,
                values([("determinant", io::scalar_value(&strict.determinant)), ("violations", Value::Array(violations))]),
                trunc(&a.truncation),
            );
            Ok(())
        }
        Command::LagCheck { .. } => {
            let id = subject(cli, &ws, s, "lagrangian")?;
            let pair = ws.lagrangian(&id)?;
            let r = check_lagrangian_strict(&pair)?;
            s.result(
                &id,
                r.passed,
                if r.passed { "strictly Lagrangian" } else { "not strictly Lagrangian" },
                values([
                    ("isotropy_residue", io::element_value(&r.isotropic.residue)),
                    ("jacobian_rank", json!(r.jacobian_rank)),
                    ("sharp_rank", json!(r.sharp_rank)),
                    ("composite_zero", json!(r.composite_zero)),
                ]),
                trunc(&pair.target.truncation),
            );
            Ok(())
        }
        Command::Schouten { with, .. } => {
            let id = subject(cli, &ws, s, "polyvector_structure")?;
            let (ctx, p) = ws.poly(&id)?;
            let other = with.clone().unwrap_or_else(|| id.clone());
            let (ctx2, q) = ws.poly(&other)?;
            if ctx2 != ctx {
                return Err(Error::ContextMismatch);
            }
            let b = ctx.truncation().apply(&ctx.schouten(&p, &q)?);
            s.result(&id, true, format!("[{id}, {other}]"), values([("bracket", io::element_value(&b))]), trunc(&ctx.truncation()));
            Ok(())
        }
        Command::McCheck { .. } => {
            let id = subject(cli, &ws, s, "polyvector_structure")?;
            let (ctx, pi) = ws.poly(&id)?;
            let residue = ctx.check_mc(&pi)?;
            let ok = residue.is_zero();
            s.result(&id, ok, if ok { "Maurer–Cartan" } else { "nonzero Maurer–Cartan residue" }, values([("residue", io::element_value(&residue))]), trunc(&ctx.truncation()));
            Ok(())
        }
        Command::Convert { direction, .. } => convert(cli, &ws, s, *direction),
        Command::Verify { what: Verifiable::Witness, .. } => {
            let id = subject(cli, &ws, s, "witness")?;
            let w = ws.witness(&id)?;
            let r = verify_witness(&w)?;
            s.result(
                &id,
                r.passed(),
                if r.passed() { "witness verified" } else { "witness fails" },
                values([("residue", io::element_value(&r.residue)), ("mc_residue", io::element_value(&r.mc_residue)), ("closed", json!(r.closure.is_valid()))]),
                trunc(&w.context.truncation()),
            );
            Ok(())
        }
        Command::Ce { .. } => {
            let id = subject(cli, &ws, s, "dgla")?;
            let l = ws.dgla(&id)?;
            let ce = l.ce_algebra(cli.max_order.unwrap_or(3))?;
            let new_id = s.fresh_id(&format!("{id}.ce"));
            s.push(Record::Algebra(io::algebra_record(&new_id, &ce, &[])));
            s.result(&id, true, "δ² = 0", values([("algebra", json!(new_id))]), trunc(&ce.truncation));
            Ok(())
        }
        Command::FormalSp { .. } => {
            let id = subject(cli, &ws, s, "pairing")?;
            let (l, p) = ws.pairing(&id)?;
            let (ce, w) = l.formal_symplectic(&p, -p.weight, cli.max_order.unwrap_or(3))?;
            let alg = s.fresh_id(&format!("{id}.ce"));
            s.push(Record::Algebra(io::algebra_record(&alg, &ce, &[])));
            let form = s.fresh_id(&format!("{id}.omega"));
            s.push(Record::FormStructure(io::form_record(&form, &alg, &ce, &w)));
            let strict = check_symplectic_strict(&ce, &w)?;
            s.result(
                &id,
                strict.passed,
                format!("{}-shifted form, {}", w.n, if strict.passed { "strictly non-degenerate" } else { "degenerate" }),
                values([("form", json!(form)), ("determinant", io::scalar_value(&strict.determinant))]),
                trunc(&ce.truncation),
            );
            Ok(())
        }
        Command::Casimir { .. } => {
            let id = subject(cli, &ws, s, "pairing")?;
            let (l, p) = ws.pairing(&id)?;
            let c = crate::dgla::casimir(&p)?;
            let (ctx, pi) = l.casimir_poisson(&p, -p.weight, cli.max_order.unwrap_or(3))?;
            let alg = s.fresh_id(&format!("{id}.ce"));
            s.push(Record::Algebra(io::algebra_record(&alg, &ctx.base, &[])));
            let poly = s.fresh_id(&format!("{id}.casimir"));
            s.push(Record::PolyvectorStructure(io::poly_record(&poly, &alg, &ctx, &pi.pi)));
            s.result(
                &id,
                pi.is_certified(),
                if pi.is_certified() { "Casimir bivector is Maurer–Cartan" } else { "Casimir bivector has a residue" },
                values([("polyvector", json!(poly)), ("casimir", io::matrix_value(&c)), ("residue", io::element_value(&pi.residue))]),
                trunc(&ctx.truncation()),
            );
            Ok(())
        }
        Command::McExtend { extension, .. } => {
            let id = subject(cli, &ws, s, "tensor")?;
            let ext_id = match extension {
                Some(e) => e.clone(),
                None => ws.first("extension")?.to_string(),
            };
            let ext = ws.extension(&ext_id)?;
            let (l, _, alpha) = ws.tensor(&id)?;
            let io::Record::Tensor(tr) = ws.record(&id)? else { unreachable!() };
            let ext_rec = match ws.record(&ext_id)? {
                io::Record::Extension(e) => e,
                _ => unreachable!(),
            };
            match l.mc_extend(&ext, &alpha)? {
                ExtensionOutcome::Lift(lift) => {
                    let new_id = s.fresh_id(&format!("{id}.lift"));
                    s.push(Record::Tensor(io::tensor_record(&new_id, &tr.dgla, &ext_rec.algebra, &l, &ext.algebra, &lift)));
                    s.result(&id, true, "lifts", values([("lift", json!(new_id))]), trunc(&ext.algebra.truncation));
                }
                ExtensionOutcome::Obstruction { class, residue } => {
                    let enc = |t: &[Element]| -> Value {
                        t.iter().enumerate().filter(|(_, e)| !e.is_zero()).map(|(i, e)| (l.basis[i].name.clone(), io::element_value(e))).collect::<serde_json::Map<_, _>>().into()
                    };
                    s.result(&id, false, "obstructed", values([("class", enc(&class)), ("residue", enc(&residue))]), trunc(&ext.algebra.truncation));
                }
            }
            Ok(())
        }
        Command::Gauge { by, .. } => {
            let id = subject(cli, &ws, s, "tensor")?;
            let (l, a, alpha) = ws.tensor(&id)?;
            let (l2, a2, g) = ws.tensor(by)?;
            if l2 != l || a2 != a {
                return Err(Error::ContextMismatch);
            }
            let out = l.gauge_act(&a, &g, &alpha)?;
            let io::Record::Tensor(tr) = ws.record(&id)? else { unreachable!() };
            let new_id = s.fresh_id(&format!("{id}.gauged"));
            s.push(Record::Tensor(io::tensor_record(&new_id, &tr.dgla, &tr.algebra, &l, &a, &out)));
            s.result(&id, true, "gauge transform is Maurer–Cartan", values([("tensor", json!(new_id))]), trunc(&a.truncation));
            Ok(())
        }
        Command::Selftest => selftest(cli, s),
    }
}

fn validate(ws: &Workspace, s: &mut Session) -> Result<()> {
    for r in &ws.doc.entities {
        let id = r.id().to_string();
        match r {
            Record::Algebra(_) => {
                let a = ws.algebra(&id)?;
                let rep = a.validate();
                let list: Vec<Value> = rep.violations.iter().map(|v| json!({"kind": format!("{:?}", v.kind), "generator": v.generator, "witness": io::element_value(&v.witness)})).collect();
                s.result(&id, rep.is_valid(), format!("{} violations", rep.violations.len()), values([("violations", Value::Array(list))]), trunc(&a.truncation));
            }
            Record::Dgla(_) => {
                let rep = ws.dgla(&id)?.validate();
                let list: Vec<Value> = rep.violations.iter().map(|v| json!({"kind": format!("{:?}", v.kind), "detail": v.detail})).collect();
                s.result(&id, rep.is_valid(), format!("{} violations", rep.violations.len()), values([("violations", Value::Array(list))]), TruncationRecord::default());
            }
            Record::Pairing(_) => {
                let (l, p) = ws.pairing(&id)?;
                let rep = l.validate_pairing(&p);
                let list: Vec<Value> = rep.violations.iter().map(|v| json!({"kind": format!("{:?}", v.kind), "detail": v.detail})).collect();
                s.result(&id, rep.is_valid(), format!("{} violations", rep.violations.len()), values([("violations", Value::Array(list))]), TruncationRecord::default());
            }
            Record::FormStructure(_) => {
                let (a, w) = ws.form(&id)?;
                let rep = check_presymplectic(&a, &w)?;
                let list: Vec<Value> = rep.violations.iter().map(|v| json!({"what": v.what, "witness": io::element_value(&v.witness)})).collect();
                s.result(&id, rep.is_valid(), format!("{} violations", rep.violations.len()), values([("violations", Value::Array(list))]), trunc(&a.truncation));
            }
            Record::PolyvectorStructure(_) => {
                let (ctx, pi) = ws.poly(&id)?;
                let residue = ctx.check_mc(&pi)?;
                s.result(&id, residue.is_zero(), "Maurer–Cartan residue", values([("residue", io::element_value(&residue))]), trunc(&ctx.truncation()));
            }
            Record::Witness(_) => {
                let w = ws.witness(&id)?;
                let r = verify_witness(&w)?;
                s.result(&id, r.passed(), "witness", values([("residue", io::element_value(&r.residue))]), trunc(&w.context.truncation()));
            }
            Record::Lagrangian(_) => {
                let pair = ws.lagrangian(&id)?;
                let r = derham::check_isotropic(&pair)?;
                s.result(&id, r.passed(), "isotropy", values([("residue", io::element_value(&r.residue))]), trunc(&pair.target.truncation));
            }
            Record::Extension(_) => {
                ws.extension(&id)?;
            }
            Record::Tensor(_) => {
                ws.tensor(&id)?;
            }
            Record::Result(_) => {}
        }
    }
    Ok(())
}

fn convert(cli: &Cli, ws: &Workspace, s: &mut Session, direction: Direction) -> Result<()> {
    let max_level = cli.max_level.unwrap_or(4);
    match direction {
        Direction::SpToPoisson => {
            let id = subject(cli, ws, s, "form_structure")?;
            let io::Record::FormStructure(fr) = ws.record(&id)? else {
                return Err(Error::InvalidInput(format!("`{id}` is not a form_structure")));
            };
            let (a, w) = ws.form(&id)?;
            let ctx = PolyContext::new(a, w.n, w.m, None);
            let (pi, wit) = symplectic_to_poisson(&ctx, &w, max_level)?;
            let poly = s.fresh_id(&format!("{id}.poisson"));
            s.push(Record::PolyvectorStructure(io::poly_record(&poly, &fr.algebra, &wit.context, &pi.pi)));
            let wid = s.fresh_id(&format!("{id}.witness"));
            s.push(Record::Witness(io::witness_record(&wid, &id, &poly, &wit)));
            let ok = pi.is_certified() && wit.residue.is_zero();
            s.result(
                &id,
                ok,
                format!("solved levels 2..{max_level}"),
                values([("polyvector", json!(poly)), ("witness", json!(wid)), ("mc_residue", io::element_value(&pi.residue))]),
                trunc(&wit.context.truncation()),
            );
        }
        Direction::PoissonToSp => {
            let id = subject(cli, ws, s, "polyvector_structure")?;
            let io::Record::PolyvectorStructure(pr) = ws.record(&id)? else {
                return Err(Error::InvalidInput(format!("`{id}` is not a polyvector_structure")));
            };
            let (ctx, pi) = ws.poly(&id)?;
            let certified = ctx.certify(&pi)?;
            let (w, wit) = poisson_to_symplectic(&ctx, &certified, max_level)?;
            let form = s.fresh_id(&format!("{id}.symplectic"));
            s.push(Record::FormStructure(io::form_record(&form, &pr.algebra, &ctx.base, &w)));
            let wid = s.fresh_id(&format!("{id}.witness"));
            s.push(Record::Witness(io::witness_record(&wid, &form, &id, &wit)));
            s.result(
                &id,
                wit.residue.is_zero(),
                format!("solved levels 2..{max_level}"),
                values([("form", json!(form)), ("witness", json!(wid))]),
                trunc(&wit.context.truncation()),
            );
        }
    }
    Ok(())
}

fn selftest(cli: &Cli, s: &mut Session) -> Result<()> {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    // graded commutativity, associativity and D² = 0 on a twisted cotangent
    let b = cdga::FreeWCDGA::new(vec![cdga::poly_gen("x"), cdga::poly_gen("y")]);
    let f = b.gen("x").pow(2).mul(&b.gen("y"));
    let (a, _) = derham::generate_twisted_cotangent(&b, &f, -1, 0)?;
    let sampler = Sampler::new(&derham::dr_generators(&a), &MonomialBound { max_order: 3, ..Default::default() }, &Truncation::none());
    let mut failures = 0;
    let cases = 50;
    for _ in 0..cases {
        let p = sampler.homogeneous(&mut rng, 3);
        let q = sampler.homogeneous(&mut rng, 3);
        let sign = scalar::sign(p.degree().unwrap_or(0) * q.degree().unwrap_or(0));
        if p.mul(&q) != q.mul(&p).scale(&sign) {
            failures += 1;
        }
        let dd = derham::dr_differential(&a, &derham::dr_differential(&a, &p)?)?;
        if !dd.is_zero() {
            failures += 1;
        }
    }
    s.result("algebra", failures == 0, format!("{cases} seeded cases, {failures} failures"), values([("seed", json!(cli.seed))]), TruncationRecord::default());
    // Jacobi on a random context
    let ctx = PolyContext::new(instances::weighted_three(), rng.gen_range(-1..=1), 0, None);
    let sampler = Sampler::new(&ctx.generators(), &MonomialBound { max_order: 3, ..Default::default() }, &Truncation::none());
    let sh = ctx.shift();
    let mut failures = 0;
    for _ in 0..cases {
        let (p, q, r) = (sampler.homogeneous(&mut rng, 2), sampler.homogeneous(&mut rng, 2), sampler.homogeneous(&mut rng, 2));
        if p.is_zero() || q.is_zero() {
            continue;
        }
        let e = scalar::sign((p.degree().unwrap() + sh) * (q.degree().unwrap() + sh));
        let lhs = ctx.schouten(&p, &ctx.schouten(&q, &r)?)?;
        let rhs = &ctx.schouten(&ctx.schouten(&p, &q)?, &r)? + &ctx.schouten(&q, &ctx.schouten(&p, &r)?)?.scale(&e);
        if lhs != rhs {
            failures += 1;
        }
    }
    s.result("schouten", failures == 0, format!("{cases} seeded triples, {failures} failures"), values([("seed", json!(cli.seed))]), TruncationRecord::default());
    // dictionary on sl₂
    let (l, p) = instances::sl2();
    let (ce, w) = l.formal_symplectic(&p, 0, 3)?;
    let (ctx, pi) = l.casimir_poisson(&p, 0, 3)?;
    let inv = crate::correspondence::invert_two_form(&ctx, &w.omega(2))?;
    s.result("sl2", inv.pi == pi.pi && pi.is_certified(), "inverse of the formal form equals the Casimir bivector", BTreeMap::new(), trunc(&ce.truncation));
    Ok(())
}

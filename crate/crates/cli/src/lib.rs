//! Command implementations for the `skewalg` binary.
//!
//! Every command produces a JSON report; the process exits with 0 iff all
//! checks requested by the command pass, 1 if some check fails and 2 on
//! usage or input errors.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use skewalg_core::fuzz::generate_batch;
use skewalg_core::groupoid::{connected_components, hom_set, validate_groupoid};
use skewalg_core::instance::{InstanceError, InstanceFile};
use skewalg_core::invariants::invariant_suite;
use skewalg_core::linalg::{Field, LinalgError};
use skewalg_core::paction::{is_global, validate_partial_action, PartialAction};
use skewalg_core::separability::{
    decide_global, decide_separability, extract_witness, invariant_subring_ij, isotropy_transport_psi,
    isotropy_witness_transport, oracle_solutions, trace_alpha, trace_ij, trace_j, SeparabilityError,
};
use skewalg_core::skewring::{format_element, SkewRing};
use skewalg_core::tensor::{Factor, Mid, TensorOverA};
use skewalg_core::validation::ValidationReport;

pub mod report;

#[derive(Debug, Parser)]
#[command(name = "skewalg", version, about = "Partial groupoid actions, skew rings and separability")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Add wall-clock timings to the report (makes it non-reproducible).
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Debug, Args)]
pub struct InstanceArgs {
    pub file: PathBuf,
    /// Override the field given in the file, e.g. `Q` or `GF(3)`.
    #[arg(long)]
    pub field: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Structural validation and the invariant suite.
    Validate(InstanceArgs),
    /// Connected components and the transversal.
    Components(InstanceArgs),
    /// All trace maps and invariant subrings.
    Traces(InstanceArgs),
    /// Decide separability and emit a certificate.
    Separability {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Cross-check against a direct search in the tensor square.
        #[arg(long)]
        oracle: bool,
        /// Also run the single-equation decision for global actions.
        #[arg(long)]
        global: bool,
        /// Transport witnesses to isotropy groups and check the ψ maps.
        #[arg(long)]
        isotropy: bool,
    },
    /// Multiplication table of the skew ring on its canonical basis.
    SkewTable(InstanceArgs),
    /// Random valid instances, decision against oracle.
    Fuzz {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Bound on the number of arrows, identities included.
        #[arg(long, default_value_t = 6)]
        max_morphisms: usize,
        #[arg(long, default_value_t = 6)]
        max_dim: usize,
        #[arg(long, value_delimiter = ',', default_values_t = ["Q".to_string(), "GF(2)".to_string()])]
        fields: Vec<String>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {0}: {1}")]
    Io(String, std::io::Error),
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Field(#[from] LinalgError),
    #[error(transparent)]
    Separability(#[from] SeparabilityError),
    #[error(transparent)]
    Groupoid(#[from] skewalg_core::groupoid::GroupoidError),
    #[error("{0}")]
    Usage(String),
}

pub struct Outcome {
    pub report: Value,
    pub ok: bool,
}

const CONVENTIONS: [(&str, &str); 3] = [
    ("alpha_outside_domain", "α_g is stored as a map on A that vanishes on A(1 - 1_{g^-1})"),
    ("transversal", "first object of each component in input order"),
    ("transport_arrows", "g_k is the first arrow of G(e_i, e_k) in input order, e_i the first object of the class"),
];

struct Loaded {
    pa: PartialAction,
    digest: String,
}

fn load(args: &InstanceArgs) -> Result<Loaded, CliError> {
    let bytes = std::fs::read(&args.file).map_err(|e| CliError::Io(args.file.display().to_string(), e))?;
    let digest = hex::encode(Sha256::digest(&bytes));
    let text = String::from_utf8(bytes).map_err(|_| CliError::Usage("instance file is not UTF-8".into()))?;
    let mut file = InstanceFile::parse(&text)?;
    if let Some(f) = &args.field {
        file = file.with_field(Field::parse(f)?);
    }
    Ok(Loaded { pa: file.build()?, digest })
}

fn structural(pa: &PartialAction) -> (ValidationReport, ValidationReport) {
    let g = validate_groupoid(pa.groupoid());
    let a = if g.is_valid() { validate_partial_action(pa) } else { ValidationReport::default() };
    (g, a)
}

fn header(command: &str, loaded: &Loaded) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("command".into(), json!(command));
    m.insert(
        "instance".into(),
        json!({
            "sha256": loaded.digest,
            "field": loaded.pa.field().to_string(),
            "objects": loaded.pa.groupoid().object_count(),
            "morphisms": loaded.pa.groupoid().morphism_count(),
            "algebra_dim": loaded.pa.algebra().dim(),
        }),
    );
    m
}

/// Runs validation; returns a failing outcome when the instance is not a
/// valid partial action with an object decomposition.
fn require_valid(mut m: Map<String, Value>, pa: &PartialAction) -> Result<Map<String, Value>, Outcome> {
    let (g, a) = structural(pa);
    if g.is_valid() && a.is_valid() && pa.has_object_decomposition() {
        return Ok(m);
    }
    let mut all = g;
    all.merge(a);
    m.insert("valid".into(), json!(false));
    m.insert("violations".into(), report::violations(&all));
    if !pa.has_object_decomposition() {
        m.insert("decomposition".into(), json!("object idempotents do not decompose A"));
    }
    Err(Outcome { report: Value::Object(m), ok: false })
}

fn cmd_validate(args: &InstanceArgs) -> Result<Outcome, CliError> {
    let loaded = load(args)?;
    let pa = &loaded.pa;
    let mut m = header("validate", &loaded);
    let (g, a) = structural(pa);
    let decomposed = pa.has_object_decomposition();
    m.insert("groupoid_violations".into(), report::violations(&g));
    m.insert("action_violations".into(), report::violations(&a));
    m.insert("object_decomposition".into(), json!(decomposed));
    let mut ok = g.is_valid() && a.is_valid() && decomposed;
    m.insert("valid".into(), json!(ok));
    if ok {
        let suite = invariant_suite(pa)?;
        ok = suite.iter().all(|c| c.passed);
        m.insert("invariants".into(), report::checks(&suite));
    }
    Ok(Outcome { report: Value::Object(m), ok })
}

fn cmd_components(args: &InstanceArgs) -> Result<Outcome, CliError> {
    let loaded = load(args)?;
    let pa = &loaded.pa;
    let m = header("components", &loaded);
    let mut m = match require_valid(m, pa) {
        Ok(m) => m,
        Err(o) => return Ok(o),
    };
    let grp = pa.groupoid();
    let comps = connected_components(grp);
    let classes: Vec<Value> = comps
        .classes
        .iter()
        .zip(&comps.transversal)
        .map(|(c, &k)| {
            let arrows = grp.morphisms().filter(|&g| c.contains(&grp.src(g))).count();
            json!({ "objects": report::objects(grp, c), "representative": grp.object_name(k), "morphisms": arrows })
        })
        .collect();
    m.insert("count".into(), json!(classes.len()));
    m.insert("components".into(), Value::Array(classes));
    m.insert("global".into(), json!(is_global(pa)));
    Ok(Outcome { report: Value::Object(m), ok: true })
}

fn cmd_traces(args: &InstanceArgs) -> Result<Outcome, CliError> {
    let loaded = load(args)?;
    let pa = &loaded.pa;
    let m = header("traces", &loaded);
    let mut m = match require_valid(m, pa) {
        Ok(m) => m,
        Err(o) => return Ok(o),
    };
    let grp = pa.groupoid();
    let names = pa.algebra().basis_names();
    let mut pairs = Vec::new();
    for class in connected_components(grp).classes {
        for &i in &class {
            for &j in &class {
                let inv = invariant_subring_ij(pa, i, j)?;
                let mut t = report::trace(grp, &trace_ij(pa, i, j)?);
                t["arrows"] = json!(hom_set(grp, i, j)?.iter().map(|&g| grp.morphism_name(g)).collect::<Vec<_>>());
                t["invariant_subring"] = Value::Array(inv.iter().map(|x| report::element(names, x)).collect());
                pairs.push(t);
            }
        }
    }
    let objects: Vec<Value> =
        grp.objects().map(|j| trace_j(pa, j).map(|t| report::trace(grp, &t))).collect::<Result<_, _>>()?;
    m.insert("pair_traces".into(), Value::Array(pairs));
    m.insert("object_traces".into(), Value::Array(objects));
    m.insert("total_trace".into(), report::trace(grp, &trace_alpha(pa)));
    m.insert("conventions".into(), conventions());
    Ok(Outcome { report: Value::Object(m), ok: true })
}

fn conventions() -> Value {
    Value::Object(CONVENTIONS.iter().map(|(k, v)| (k.to_string(), json!(v))).collect())
}

fn error_value(e: impl std::fmt::Display) -> Value {
    json!({ "error": e.to_string() })
}

fn cmd_separability(args: &InstanceArgs, oracle: bool, global: bool, isotropy: bool) -> Result<Outcome, CliError> {
    let loaded = load(args)?;
    let pa = &loaded.pa;
    let m = header("separability", &loaded);
    let mut m = match require_valid(m, pa) {
        Ok(m) => m,
        Err(o) => return Ok(o),
    };
    let grp = pa.groupoid();
    let names = pa.algebra().basis_names();
    let verdict = decide_separability(pa)?;
    let mut ok = verdict.certificate.as_ref().is_none_or(|c| c.checks.all());
    m.insert("separable".into(), json!(verdict.separable));
    m.insert("decision".into(), report::verdict(grp, names, &verdict));
    m.insert("conventions".into(), conventions());

    if oracle {
        let value = match oracle_report(pa, &verdict) {
            Ok((v, passed)) => {
                ok &= passed;
                v
            }
            Err(e) => {
                ok = false;
                error_value(e)
            }
        };
        m.insert("oracle".into(), value);
    }
    if global {
        let value = match decide_global(pa) {
            Ok(g) => {
                let agrees = g.separable == verdict.separable;
                ok &= agrees;
                json!({ "separable": g.separable, "agrees": agrees, "witness_family": report::family(names, &g.family) })
            }
            Err(e) => {
                ok = false;
                error_value(e)
            }
        };
        m.insert("global".into(), value);
    }
    if isotropy {
        let value = match isotropy_report(pa, &verdict) {
            Ok((v, passed)) => {
                ok &= passed;
                v
            }
            Err(e) => {
                ok = false;
                error_value(e)
            }
        };
        m.insert("isotropy".into(), value);
    }
    Ok(Outcome { report: Value::Object(m), ok })
}

type Verdict = skewalg_core::separability::SeparabilityVerdict;

fn oracle_report(pa: &PartialAction, verdict: &Verdict) -> Result<(Value, bool), CliError> {
    let grp = pa.groupoid();
    let names = pa.algebra().basis_names();
    let sr = SkewRing::build(pa).map_err(SeparabilityError::from)?;
    let t = TensorOverA::new(&sr, Factor::Whole, Factor::Whole, Mid::Base).map_err(SeparabilityError::from)?;
    let (set, equations) = oracle_solutions(&sr, &t);
    let separable = !set.is_empty();
    let agrees = separable == verdict.separable;
    let mut passed = agrees;
    let mut v = json!({
        "separable": separable,
        "agrees": agrees,
        "tensor_dim": t.dim(),
        "ambient_dim": t.ambient_dim(),
        "equations": equations,
        "solution_dim": set.kernel_basis.len(),
    });
    if let Some(cert) = &verdict.certificate {
        let inside = set.contains(&cert.idempotent_x);
        passed &= inside;
        v["certificate_solves_equations"] = json!(inside);
    }
    if let Some(q) = &set.particular {
        let w = extract_witness(pa, &sr, &t, q)?;
        passed &= w.central && w.traces_are_units && w.diagonal_transport;
        v["extracted_witness"] = report::extraction(grp, names, &w);
    }
    Ok((v, passed))
}

fn isotropy_report(pa: &PartialAction, verdict: &Verdict) -> Result<(Value, bool), CliError> {
    if !is_global(pa) {
        return Err(SeparabilityError::NotGlobal.into());
    }
    let grp = pa.groupoid();
    let names = pa.algebra().basis_names();
    let mut passed = true;
    let mut witnesses = Vec::new();
    for (ci, part) in verdict.per_component.iter().enumerate() {
        let Some(b) = &verdict.family.particular.as_ref().filter(|_| part.separable) else {
            witnesses.push(json!({ "objects": report::objects(grp, &part.class), "separable": false }));
            continue;
        };
        let b = pa.mul(b, &class_unit(pa, &part.class));
        let tw = isotropy_witness_transport(pa, ci, &b)?;
        passed &= tw.central_in_corner && tw.trace_is_unit;
        witnesses.push(json!({
            "objects": report::objects(grp, &part.class),
            "separable": true,
            "object": grp.object_name(tw.object),
            "arrows": tw.arrows.iter().map(|&g| grp.morphism_name(g)).collect::<Vec<_>>(),
            "a": report::element(names, &tw.a),
            "central_in_corner": tw.central_in_corner,
            "trace_is_unit": tw.trace_is_unit,
        }));
    }
    let mut psis = Vec::new();
    for l in grp.morphisms().filter(|&l| !grp.is_identity(l)) {
        let psi = isotropy_transport_psi(pa, l)?;
        passed &= psi.is_ring_isomorphism();
        psis.push(json!({
            "arrow": grp.morphism_name(l),
            "from": grp.object_name(psi.from),
            "to": grp.object_name(psi.to),
            "matrix": report::matrix(&psi.matrix),
            "bijective": psi.bijective,
            "multiplicative": psi.multiplicative,
            "unital": psi.unital,
        }));
    }
    Ok((json!({ "witnesses": witnesses, "psi": psis }), passed))
}

fn class_unit(pa: &PartialAction, class: &[skewalg_core::groupoid::ObjectId]) -> Vec<skewalg_core::linalg::Scalar> {
    class.iter().fold(pa.algebra().zero(), |acc, &e| skewalg_core::linalg::vec_add(&acc, pa.object_unit(e)))
}

fn cmd_skew_table(args: &InstanceArgs) -> Result<Outcome, CliError> {
    let loaded = load(args)?;
    let pa = &loaded.pa;
    let m = header("skew-table", &loaded);
    let mut m = match require_valid(m, pa) {
        Ok(m) => m,
        Err(o) => return Ok(o),
    };
    let sr = SkewRing::build(pa).map_err(SeparabilityError::from)?;
    let labels: Vec<String> = (0..sr.dim()).map(|i| sr.basis_label(i)).collect();
    let mut products = Vec::new();
    for i in 0..sr.dim() {
        for j in 0..sr.dim() {
            products.push(json!({
                "left": labels[i],
                "right": labels[j],
                "product": format_element(&labels, sr.table_entry(i, j)),
            }));
        }
    }
    m.insert("dim".into(), json!(sr.dim()));
    m.insert("basis".into(), json!(labels));
    m.insert("unit".into(), json!(format_element(&labels, &sr.coords(&sr.unit()))));
    m.insert("products".into(), Value::Array(products));
    Ok(Outcome { report: Value::Object(m), ok: true })
}

fn cmd_fuzz(seed: u64, count: usize, max_morphisms: usize, max_dim: usize, fields: &[String]) -> Result<Outcome, CliError> {
    if max_morphisms == 0 || max_dim == 0 {
        return Err(CliError::Usage("bounds must be positive".into()));
    }
    let fields: Vec<Field> = fields.iter().map(|f| Field::parse(f)).collect::<Result<_, _>>()?;
    let mut ok = true;
    let mut agreements = vec![0usize; fields.len()];
    let mut instances = Vec::new();
    for (idx, inst) in generate_batch(seed, count, max_morphisms, max_dim).iter().enumerate() {
        let mut runs = Vec::new();
        for (fi, &f) in fields.iter().enumerate() {
            let pa = inst.realize(f);
            let (v, agree, passed) = match differential(&pa) {
                Ok(r) => r,
                Err(e) => (error_value(e), false, false),
            };
            if agree {
                agreements[fi] += 1;
            }
            ok &= agree && passed;
            runs.push(v);
        }
        instances.push(json!({
            "index": idx,
            "description": inst.description,
            "morphisms": inst.groupoid.morphism_count(),
            "algebra_dim": inst.dim,
            "global": inst.global,
            "runs": runs,
        }));
    }
    let summary: Vec<Value> = fields
        .iter()
        .zip(&agreements)
        .map(|(f, a)| json!({ "field": f.to_string(), "agreements": a, "instances": count }))
        .collect();
    let report = json!({
        "command": "fuzz",
        "seed": seed,
        "count": count,
        "max_morphisms": max_morphisms,
        "max_dim": max_dim,
        "summary": summary,
        "instances": instances,
    });
    Ok(Outcome { report, ok })
}

/// Decision against oracle on one instance: (report, agreement, all other
/// checks passed).
fn differential(pa: &PartialAction) -> Result<(Value, bool, bool), CliError> {
    let verdict = decide_separability(pa)?;
    let sr = SkewRing::build(pa).map_err(SeparabilityError::from)?;
    let t = TensorOverA::new(&sr, Factor::Whole, Factor::Whole, Mid::Base).map_err(SeparabilityError::from)?;
    let (set, _) = oracle_solutions(&sr, &t);
    let oracle = !set.is_empty();
    let agree = oracle == verdict.separable;
    let mut passed = verdict.certificate.as_ref().is_none_or(|c| c.checks.all() && set.contains(&c.idempotent_x));
    let mut v = json!({
        "field": pa.field().to_string(),
        "decision": verdict.separable,
        "oracle": oracle,
        "agrees": agree,
        "tensor_dim": t.dim(),
        "certificate_ok": passed,
    });
    if let Some(q) = &set.particular {
        let w = extract_witness(pa, &sr, &t, q)?;
        let good = w.central && w.traces_are_units;
        passed &= good;
        v["extraction_ok"] = json!(good);
    }
    Ok((v, agree, passed))
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let mut out = match &cli.command {
        Command::Validate(a) => cmd_validate(a),
        Command::Components(a) => cmd_components(a),
        Command::Traces(a) => cmd_traces(a),
        Command::Separability { instance, oracle, global, isotropy } => {
            cmd_separability(instance, *oracle, *global, *isotropy)
        }
        Command::SkewTable(a) => cmd_skew_table(a),
        Command::Fuzz { seed, count, max_morphisms, max_dim, fields } => {
            cmd_fuzz(*seed, *count, *max_morphisms, *max_dim, fields)
        }
    }?;
    out.report["ok"] = json!(out.ok);
    if cli.timings {
        out.report["timings_ms"] = json!({ "total": start.elapsed().as_secs_f64() * 1000.0 });
    }
    Ok(out)
}

pub fn render(report: &Value) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("serialisable");
    s.push('\n');
    s
}

fn write_report(path: Option<&Path>, text: &str) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes())
        }
    }
}

/// Parses arguments, runs the command and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            if let Err(e) = write_report(cli.out.as_deref(), &render(&outcome.report)) {
                eprintln!("error: cannot write report: {e}");
                return 2;
            }
            if outcome.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

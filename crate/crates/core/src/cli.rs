//! The `char2q` command line.
//!
//! Every successful command prints one JSON document with the top-level
//! keys `command`, `field`, `inputs`, `result` and, where relevant, `report`,
//! `method` and `degenerate`. Exit codes: 0 success, 1 verification failure,
//! 2 usage or parse error (diagnostic on standard error, nothing on standard
//! output). A search refused by the `CHAR2Q_MAX_WINDOW` cap counts as a usage
//! error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::fields::{FieldDescriptor, FieldElement, FieldError, Window};
use crate::oracle::{brute_force_isotropy, cross_validate_invariant, Grid, OracleError};
use crate::quadspace::{QuadError, Vector};
use crate::quaternion::{
    embed_presentation, Kind, Presentation, QuatError, QuaternionElement, Realization,
};
use crate::selftest::{self, Budget};
use crate::slots::{common_slot, SlotError, SlotInstance, SlotResult, Theorem, VerificationReport};
use crate::symbols::{presentation_value, symbol_value, SymbolError};

/// Environment variable capping every enumeration.
pub const MAX_WINDOW_ENV: &str = "CHAR2Q_MAX_WINDOW";

#[derive(Parser, Debug)]
#[command(
    name = "char2q",
    version,
    about = "Characteristic-2 quaternion symbols and common slots"
)]
struct Cli {
    /// Field descriptor, e.g. gf(4) or laurent(gf(2),prec=32).
    #[arg(long, global = true)]
    field: Option<String>,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Override the relative precision of a Laurent field.
    #[arg(long, global = true)]
    prec: Option<u32>,
    /// Compact single-line JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Symbol invariants.
    #[command(subcommand)]
    Symbol(SymbolCommand),
    /// Common-slot procedures.
    #[command(subcommand)]
    Slot(SlotCommand),
    /// Brute-force and cross-validation checks.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Run the seeded property suites.
    Selftest,
}

#[derive(Subcommand, Debug)]
enum SymbolCommand {
    /// Class bit of [a,b) or ((a,b)); 0 means split.
    Inv(SymbolArgs),
}

#[derive(Args, Debug)]
struct SymbolArgs {
    #[arg(long)]
    kind: Kind,
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long, allow_hyphen_values = true)]
    b: String,
    /// Treat [a,0) as the zero class.
    #[arg(long)]
    convention: bool,
}

#[derive(Subcommand, Debug)]
enum SlotCommand {
    /// [a1,b) = [a2,b).
    CommonB(SlotArgs),
    /// [a,b1) = [a,b2).
    CommonA(SlotArgs),
    /// ((a,b1)) = ((a,b2)).
    CommonABil(SlotArgs),
}

#[derive(Args, Debug)]
struct SlotArgs {
    #[arg(long, allow_hyphen_values = true, requires_all = ["b1", "a2", "b2"], conflicts_with = "witness_file")]
    a1: Option<String>,
    #[arg(long, allow_hyphen_values = true, requires = "a1")]
    b1: Option<String>,
    #[arg(long, allow_hyphen_values = true, requires = "a1")]
    a2: Option<String>,
    #[arg(long, allow_hyphen_values = true, requires = "a1")]
    b2: Option<String>,
    /// JSON file with the ambient presentation and both realizations.
    #[arg(long, required_unless_present = "a1")]
    witness_file: Option<PathBuf>,
    /// Embedding window "min,max,coeffs" for raw mode.
    #[arg(long, allow_hyphen_values = true)]
    window: Option<String>,
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// Search for a norm-zero vector of the norm form of a presentation.
    Isotropy(IsotropyArgs),
    /// Compare the residue invariant with the isotropy search on a grid.
    CrossValidate(GridArgs),
}

#[derive(Args, Debug)]
struct IsotropyArgs {
    #[arg(long, default_value = "as")]
    kind: Kind,
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long, allow_hyphen_values = true)]
    b: String,
    /// "min,max,coeffs", "standard" or "empty".
    #[arg(long, allow_hyphen_values = true)]
    window: Option<String>,
    /// Enumerate every vector instead of solving for the first coordinate.
    #[arg(long)]
    brute: bool,
}

#[derive(Args, Debug)]
struct GridArgs {
    /// "min,max,coeffs", "standard" or "empty".
    #[arg(long, allow_hyphen_values = true)]
    window: Option<String>,
}

enum Failure {
    Usage(String),
    Runtime(String),
}

fn usage(msg: impl ToString) -> Failure {
    Failure::Usage(msg.to_string())
}

fn runtime(msg: impl ToString) -> Failure {
    Failure::Runtime(msg.to_string())
}

fn field_refused(e: &FieldError) -> bool {
    matches!(e, FieldError::WindowTooLarge { .. })
}

fn quad_refused(e: &QuadError) -> bool {
    matches!(e, QuadError::Field(f) if field_refused(f))
}

fn quat_refused(e: &QuatError) -> bool {
    match e {
        QuatError::Field(f) => field_refused(f),
        QuatError::Quad(q) => quad_refused(q),
        _ => false,
    }
}

/// A window over the enumeration cap is a usage error; anything else a
/// command fails on is a runtime failure.
fn failure(e: impl ToString, refused: bool) -> Failure {
    if refused {
        usage(format!(
            "{} (raise {MAX_WINDOW_ENV} or shrink --window)",
            e.to_string()
        ))
    } else {
        runtime(e)
    }
}

fn from_quad(e: QuadError) -> Failure {
    let refused = quad_refused(&e);
    failure(e, refused)
}

fn from_quat(e: QuatError) -> Failure {
    let refused = quat_refused(&e);
    failure(e, refused)
}

fn from_slot(e: SlotError) -> Failure {
    let refused = match &e {
        SlotError::Quat(q) => quat_refused(q),
        SlotError::Quad(q) => quad_refused(q),
        SlotError::Field(f) => field_refused(f),
        _ => false,
    };
    failure(e, refused)
}

fn from_oracle(e: OracleError) -> Failure {
    let refused = match &e {
        OracleError::Quad(q) => quad_refused(q),
        OracleError::Quat(q) => quat_refused(q),
        OracleError::Symbol(_) => false,
    };
    failure(e, refused)
}

/// Output of a command: the document and whether verification passed.
struct Outcome {
    doc: Value,
    passed: bool,
}

/// Parse `args` (program name first), run the command and return the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{e}");
                2
            } else {
                let _ = write!(out, "{e}");
                0
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            let text = if cli.json {
                serde_json::to_string(&outcome.doc)
            } else {
                serde_json::to_string_pretty(&outcome.doc)
            }
            .expect("JSON values serialize");
            let _ = writeln!(out, "{text}");
            if outcome.passed {
                0
            } else {
                1
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Runtime(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn execute(cli: &Cli) -> Result<Outcome, Failure> {
    let limit = window_limit()?;
    let field = field(cli)?;
    match &cli.command {
        Command::Symbol(SymbolCommand::Inv(args)) => symbol_inv(require(field)?, args),
        Command::Slot(cmd) => {
            let (theorem, args) = match cmd {
                SlotCommand::CommonB(a) => (Theorem::CommonB, a),
                SlotCommand::CommonA(a) => (Theorem::CommonA, a),
                SlotCommand::CommonABil(a) => (Theorem::CommonABil, a),
            };
            slot(require(field)?, theorem, args, limit)
        }
        Command::Oracle(OracleCommand::Isotropy(args)) => isotropy(require(field)?, args, limit),
        Command::Oracle(OracleCommand::CrossValidate(args)) => {
            cross_validate(require(field)?, args, limit)
        }
        Command::Selftest => Ok(selftest_doc(cli.seed, field)),
    }
}

fn window_limit() -> Result<Option<u64>, Failure> {
    match std::env::var(MAX_WINDOW_ENV) {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| {
            usage(format!(
                "{MAX_WINDOW_ENV} must be a nonnegative integer, got {v:?}"
            ))
        }),
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(usage(format!("{MAX_WINDOW_ENV}: {e}"))),
    }
}

fn field(cli: &Cli) -> Result<Option<FieldDescriptor>, Failure> {
    let Some(text) = &cli.field else {
        return match cli.prec {
            Some(_) => Err(usage("--prec needs --field")),
            None => Ok(None),
        };
    };
    let desc: FieldDescriptor = text.parse().map_err(usage)?;
    match cli.prec {
        None => Ok(Some(desc)),
        Some(_) if desc.is_finite() => Err(usage("--prec applies to Laurent fields only")),
        Some(0) => Err(usage("--prec must be positive")),
        Some(p) => Ok(Some(desc.with_precision(p))),
    }
}

fn require(field: Option<FieldDescriptor>) -> Result<FieldDescriptor, Failure> {
    field.ok_or_else(|| usage("this command needs --field"))
}

fn parse_element(desc: FieldDescriptor, name: &str, text: &str) -> Result<FieldElement, Failure> {
    desc.parse(text)
        .map_err(|e| usage(format!("--{name} {text:?}: {e}")))
}

fn parse_window(
    text: Option<&str>,
    default: Window,
    limit: Option<u64>,
) -> Result<Window, Failure> {
    let window = match text.map(str::trim) {
        None => default,
        Some("standard") => Window::standard(),
        Some("empty") => Window::empty(),
        Some(spec) => {
            let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
            let bad = || usage(format!("window {spec:?} is not \"min,max,coeffs\""));
            let [lo, hi, n] = parts[..] else {
                return Err(bad());
            };
            Window::new(
                lo.parse().map_err(|_| bad())?,
                hi.parse().map_err(|_| bad())?,
                n.parse().map_err(|_| bad())?,
            )
        }
    };
    Ok(match limit {
        Some(l) => window.with_limit(l),
        None => window,
    })
}

fn window_json(w: &Window) -> Value {
    json!({"min_val": w.min_val, "max_val": w.max_val, "coeffs": w.coeffs, "limit": w.limit})
}

fn presentation_json(p: &Presentation) -> Value {
    json!({"kind": p.kind().to_string(), "a": p.a().to_string(), "b": p.b().to_string()})
}

/// A quaternion element as four element strings plus its presentation.
pub fn element_json(x: &QuaternionElement) -> Value {
    let coords: Vec<String> = x.coords().iter().map(ToString::to_string).collect();
    json!({"presentation": presentation_json(x.presentation()), "coords": coords})
}

/// A slot instance in the layout read by `--witness-file`.
pub fn witness_file_json(inst: &SlotInstance) -> Value {
    let realization = |r: &Realization| {
        json!({
            "presentation": presentation_json(&r.presentation),
            "x": element_json(&r.x),
            "y": element_json(&r.y),
        })
    };
    json!({
        "field": inst.ambient().descriptor().to_string(),
        "ambient": presentation_json(inst.ambient()),
        "first": realization(inst.first()),
        "second": realization(inst.second()),
    })
}

fn vector_json(v: &Vector) -> Value {
    Value::from(
        v.coords()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>(),
    )
}

fn report_json(r: &VerificationReport) -> Value {
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| json!({"name": c.name, "passed": c.passed}))
        .collect();
    json!({"all_pass": r.all_pass(), "checks": checks})
}

fn document(
    command: &str,
    desc: FieldDescriptor,
    inputs: Value,
    result: Value,
) -> Map<String, Value> {
    let mut doc = Map::new();
    doc.insert("command".into(), command.into());
    doc.insert("field".into(), desc.to_string().into());
    doc.insert("inputs".into(), inputs);
    doc.insert("result".into(), result);
    doc
}

fn symbol_inv(desc: FieldDescriptor, args: &SymbolArgs) -> Result<Outcome, Failure> {
    let a = parse_element(desc, "a", &args.a)?;
    let b = parse_element(desc, "b", &args.b)?;
    let v = symbol_value(args.kind, &a, &b, args.convention).map_err(|e| match e {
        SymbolError::ZeroSecondSlot => usage(format!("{e} (pass --convention)")),
        other => runtime(other),
    })?;
    let inputs = json!({"kind": args.kind.to_string(), "a": args.a, "b": args.b, "convention": args.convention});
    let result = json!({
        "kind": v.kind.to_string(),
        "a": v.a.to_string(),
        "b": v.b.to_string(),
        "invariant": v.invariant,
        "method": v.method.to_string(),
    });
    let mut doc = document("symbol inv", desc, inputs, result);
    doc.insert("method".into(), v.method.to_string().into());
    Ok(Outcome {
        doc: doc.into(),
        passed: true,
    })
}

fn slot(
    desc: FieldDescriptor,
    theorem: Theorem,
    args: &SlotArgs,
    limit: Option<u64>,
) -> Result<Outcome, Failure> {
    let command = format!("slot {theorem}");
    let (inst, inputs) = match &args.witness_file {
        Some(path) => {
            let inst = read_witness_file(desc, theorem.kind(), path)?;
            let inputs = json!({
                "mode": "witness-file",
                "witness_file": path.display().to_string(),
                "ambient": presentation_json(inst.ambient()),
            });
            (inst, inputs)
        }
        None => {
            let text = |o: &Option<String>| o.clone().unwrap_or_default();
            let (a1, b1, a2, b2) = (
                text(&args.a1),
                text(&args.b1),
                text(&args.a2),
                text(&args.b2),
            );
            let default = if desc.is_finite() {
                Window::standard()
            } else {
                Window::new(-1, 1, 2)
            };
            let window = parse_window(args.window.as_deref(), default, limit)?;
            let mut inputs = json!({
                "mode": "raw",
                "a1": a1, "b1": b1, "a2": a2, "b2": b2,
                "window": window_json(&window),
            });
            let kind = theorem.kind();
            let build =
                |a: &str, an: &str, b: &str, bn: &str| -> Result<Arc<Presentation>, Failure> {
                    let a = parse_element(desc, an, a)?;
                    let b = parse_element(desc, bn, b)?;
                    Presentation::new(kind, a, b).map_err(usage)
                };
            let ambient = build(&a1, "a1", &b1, "b1")?;
            let target = build(&a2, "a2", &b2, "b2")?;
            match embed_raw(&ambient, &target, &window)? {
                Ok(inst) => {
                    inputs["ambient"] = presentation_json(&ambient);
                    (inst, inputs)
                }
                Err(report) => {
                    let result = json!({
                        "theorem": theorem.to_string(),
                        "ambient": presentation_json(&ambient),
                        "target": presentation_json(&target),
                        "slot": Value::Null,
                    });
                    let mut doc = document(&command, desc, inputs, result);
                    doc.insert("report".into(), report_json(&report));
                    return Ok(Outcome {
                        doc: doc.into(),
                        passed: false,
                    });
                }
            }
        }
    };
    let r = common_slot(theorem, &inst).map_err(from_slot)?;
    let passed = r.report.all_pass();
    let mut doc = document(&command, desc, inputs, slot_result_json(&r));
    doc.insert("report".into(), report_json(&r.report));
    doc.insert("degenerate".into(), r.degenerate.into());
    Ok(Outcome {
        doc: doc.into(),
        passed,
    })
}

/// Raw mode: the first presentation is the ambient with its defining
/// generators; the second is embedded by search. A failed class check or an
/// exhausted search yields a failing report.
fn embed_raw(
    ambient: &Arc<Presentation>,
    target: &Arc<Presentation>,
    window: &Window,
) -> Result<Result<SlotInstance, VerificationReport>, Failure> {
    let mut report = VerificationReport::default();
    let class = |p: &Presentation| presentation_value(p).map(|v| v.invariant).map_err(runtime);
    let same = class(ambient)? == class(target)?;
    report.checks.push(crate::slots::Check {
        name: "equal_class".into(),
        passed: same,
    });
    if !same {
        return Ok(Err(report));
    }
    match embed_presentation(ambient, target, window) {
        Ok((x, y)) => {
            let second = Realization {
                presentation: Arc::clone(target),
                x,
                y,
            };
            let inst =
                SlotInstance::new(Arc::clone(ambient), Realization::defining(ambient), second)
                    .map_err(from_slot)?;
            Ok(Ok(inst))
        }
        Err(QuatError::SearchExhausted) => {
            report.checks.push(crate::slots::Check {
                name: "embed_second".into(),
                passed: false,
            });
            Ok(Err(report))
        }
        Err(e) => Err(from_quat(e)),
    }
}

fn slot_result_json(r: &SlotResult) -> Value {
    let presentations: Vec<Value> = match r.presentations() {
        Ok(ps) => ps.iter().map(|p| presentation_json(p)).collect(),
        Err(_) => Vec::new(),
    };
    let witnesses: Vec<Value> = r
        .witnesses
        .iter()
        .map(|w| json!({"x": element_json(&w.x), "y": element_json(&w.y)}))
        .collect();
    json!({
        "theorem": r.theorem.to_string(),
        "ambient": presentation_json(&r.ambient),
        "originals": [presentation_json(&r.originals[0]), presentation_json(&r.originals[1])],
        "slot": r.slot.to_string(),
        "presentations": presentations,
        "witnesses": witnesses,
        "degenerate": r.degenerate,
        "transvected": r.transvected,
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PresentationFile {
    kind: String,
    a: String,
    b: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ElementFile {
    presentation: Option<PresentationFile>,
    coords: [String; 4],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RealizationFile {
    presentation: PresentationFile,
    x: ElementFile,
    y: ElementFile,
}

/// Witness-file layout: the ambient presentation and two realizations whose
/// generators use the element rendering of the JSON output.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WitnessFile {
    field: Option<String>,
    ambient: PresentationFile,
    first: RealizationFile,
    second: RealizationFile,
}

fn read_presentation(
    desc: FieldDescriptor,
    p: &PresentationFile,
) -> Result<Arc<Presentation>, Failure> {
    let kind: Kind = p.kind.parse().map_err(usage)?;
    let a = desc
        .parse(&p.a)
        .map_err(|e| usage(format!("{:?}: {e}", p.a)))?;
    let b = desc
        .parse(&p.b)
        .map_err(|e| usage(format!("{:?}: {e}", p.b)))?;
    Presentation::new(kind, a, b).map_err(usage)
}

fn read_element(
    desc: FieldDescriptor,
    ambient: &Arc<Presentation>,
    x: &ElementFile,
) -> Result<QuaternionElement, Failure> {
    if let Some(p) = &x.presentation {
        if read_presentation(desc, p)? != *ambient {
            return Err(usage(
                "witness element is not expressed in the ambient presentation",
            ));
        }
    }
    let mut coords = Vec::with_capacity(4);
    for c in &x.coords {
        coords.push(desc.parse(c).map_err(|e| usage(format!("{c:?}: {e}")))?);
    }
    let coords: [FieldElement; 4] = coords.try_into().expect("four coordinates");
    ambient.element(coords).map_err(usage)
}

fn read_witness_file(
    desc: FieldDescriptor,
    kind: Kind,
    path: &PathBuf,
) -> Result<SlotInstance, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let file: WitnessFile =
        serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    if let Some(f) = &file.field {
        let d: FieldDescriptor = f.parse().map_err(usage)?;
        if d != desc {
            return Err(usage(format!(
                "witness file is over {d}, --field gives {desc}"
            )));
        }
    }
    let ambient = read_presentation(desc, &file.ambient)?;
    let mut realizations = Vec::new();
    for r in [&file.first, &file.second] {
        let presentation = read_presentation(desc, &r.presentation)?;
        if presentation.kind() != kind {
            return Err(usage(format!(
                "this command takes {kind} presentations, the file has {presentation}"
            )));
        }
        realizations.push(Realization {
            presentation,
            x: read_element(desc, &ambient, &r.x)?,
            y: read_element(desc, &ambient, &r.y)?,
        });
    }
    let second = realizations.pop().expect("two realizations");
    let first = realizations.pop().expect("two realizations");
    SlotInstance::new(ambient, first, second).map_err(from_slot)
}

fn isotropy(
    desc: FieldDescriptor,
    args: &IsotropyArgs,
    limit: Option<u64>,
) -> Result<Outcome, Failure> {
    let a = parse_element(desc, "a", &args.a)?;
    let b = parse_element(desc, "b", &args.b)?;
    let p = Presentation::new(args.kind, a, b).map_err(usage)?;
    let window = parse_window(args.window.as_deref(), Window::standard(), limit)?;
    let nf = p.norm_form();
    let found = if args.brute {
        brute_force_isotropy(&nf.form, &window)
    } else {
        nf.form.isotropy_witness_search(&window)
    }
    .map_err(from_quad)?;
    let method = if args.brute { "brute-force" } else { "search" };
    let inputs = json!({
        "kind": args.kind.to_string(), "a": args.a, "b": args.b,
        "window": window_json(&window), "brute": args.brute,
    });
    let (witness, element) = match &found {
        Some(v) => (
            vector_json(v),
            element_json(&nf.from_form_coords(&p, v).map_err(from_quat)?),
        ),
        None => (Value::Null, Value::Null),
    };
    let result = json!({
        "presentation": presentation_json(&p),
        "form": nf.form.to_string(),
        "found": found.is_some(),
        "witness": witness,
        "element": element,
    });
    let mut doc = document("oracle isotropy", desc, inputs, result);
    doc.insert("method".into(), method.into());
    Ok(Outcome {
        doc: doc.into(),
        passed: true,
    })
}

fn cross_validate(
    desc: FieldDescriptor,
    args: &GridArgs,
    limit: Option<u64>,
) -> Result<Outcome, Failure> {
    let window = parse_window(args.window.as_deref(), Window::standard(), limit)?;
    let grid = Grid::from_window(desc, &window).map_err(from_quad)?;
    let cv = cross_validate_invariant(&grid).map_err(from_oracle)?;
    let violations: Vec<Value> = cv
        .violations
        .iter()
        .map(|v| {
            json!({
                "a": v.a.to_string(),
                "b": v.b.to_string(),
                "invariant": v.invariant,
                "witness": v.witness.as_ref().map_or(Value::Null, vector_json),
            })
        })
        .collect();
    let result = json!({
        "points": cv.points,
        "split": cv.split,
        "nonsplit": cv.nonsplit,
        "violations": violations,
    });
    let mut doc = document(
        "oracle cross-validate",
        desc,
        json!({"window": window_json(&window)}),
        result,
    );
    let check = json!({"name": "invariant_matches_search", "passed": cv.passed()});
    doc.insert(
        "report".into(),
        json!({"all_pass": cv.passed(), "checks": [check]}),
    );
    Ok(Outcome {
        doc: doc.into(),
        passed: cv.passed(),
    })
}

fn selftest_doc(seed: u64, field: Option<FieldDescriptor>) -> Outcome {
    let t = selftest::run_all(seed, field, Budget::default());
    let passed = t.passed();
    let checks: Vec<Value> = t
        .suites
        .iter()
        .map(|s| json!({"name": format!("{} {}", s.suite, s.field), "passed": s.passed()}))
        .collect();
    let doc = json!({
        "command": "selftest",
        "field": field.map_or(Value::Null, |d| d.to_string().into()),
        "inputs": {"seed": seed},
        "result": {"suites": t.suites, "cases": t.cases(), "failures": t.failures()},
        "report": {"all_pass": passed, "checks": checks},
    });
    Outcome { doc, passed }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("char2q").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn symbol_inv_worked_example() {
        let (code, out, _) = call(&[
            "symbol",
            "inv",
            "--field",
            "laurent(gf(2),prec=32)",
            "--kind",
            "as",
            "--a",
            "1",
            "--b",
            "t",
        ]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["result"]["invariant"], 1);
        assert_eq!(v["result"]["method"], "residue");
    }

    #[test]
    fn zero_second_slot_is_a_usage_error() {
        let (code, out, err) = call(&[
            "symbol", "inv", "--field", "gf(4)", "--kind", "as", "--a", "1", "--b", "0",
        ]);
        assert_eq!(code, 2);
        assert!(out.is_empty());
        assert!(!err.is_empty());
        let (code, _, _) = call(&[
            "symbol",
            "inv",
            "--field",
            "gf(4)",
            "--kind",
            "as",
            "--a",
            "1",
            "--b",
            "0",
            "--convention",
        ]);
        assert_eq!(code, 0);
    }

    #[test]
    fn windows_parse() {
        let w = parse_window(Some("-2, 2,4"), Window::empty(), Some(9))
            .ok()
            .unwrap();
        assert_eq!((w.min_val, w.max_val, w.coeffs, w.limit), (-2, 2, 4, 9));
        assert!(parse_window(Some("1,2"), Window::empty(), None).is_err());
        assert_eq!(
            parse_window(None, Window::standard(), None).ok(),
            Some(Window::standard())
        );
    }

    #[test]
    fn missing_field_and_bad_precision() {
        assert_eq!(
            call(&["symbol", "inv", "--kind", "as", "--a", "1", "--b", "1"]).0,
            2
        );
        assert_eq!(
            call(&[
                "symbol", "inv", "--field", "gf(2)", "--prec", "8", "--kind", "as", "--a", "1",
                "--b", "1"
            ])
            .0,
            2
        );
    }
}

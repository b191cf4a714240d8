//! Command-line front end: subcommands read `.alg` presentations or form
//! files and print one JSON report on standard output.

pub mod parse;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::families::{homotopy_families, robber_family, AlgebraFamily, Fiber};
use crate::forms::{gro_member, hyp_embed, hyperbolic_form, witt_invariants, BilinearForm, WittInvariants};
use crate::frobenius::{
    augmentation_check, connected_sum, gorenstein_test, isotropy_check, rees_family, socle_generator,
    GorensteinVerdict, DEFAULT_SYMBOLIC_MAX_DIM, DEFAULT_TRIALS,
};
use crate::linalg::{Matrix, Subspace};
use crate::poly::{MultiPoly, Quotient};
use crate::scalar::{Field, Scalar, TPoly};
use crate::tensors::{
    a_q, cw_tensor, degeneration_to_cw, one_generic, reduced_degeneration, strassen_commuting, structure_tensor,
    OneGeneric, Tensor3,
};

pub use parse::{compile, parse_presentation, Compiled, PresentationDocument};

pub const SCHEMA: &str = "gorlab/1";

#[derive(Parser, Debug)]
#[command(name = "gorlab", version, about = "Exact computations with finite oriented Gorenstein algebras")]
struct Cli {
    /// Pretty-print the JSON report.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Which {
    Const,
    Mv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TensorCheck {
    #[value(name = "1generic")]
    OneGeneric,
    Commute,
}

fn parse_at(s: &str) -> std::result::Result<String, String> {
    match s.split_once('=') {
        Some((name, value)) if name.trim() == parse::PARAMETER && !value.trim().is_empty() => {
            Ok(value.trim().to_string())
        }
        _ => Err("expected t=VALUE".to_string()),
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a presentation and decide whether it is Gorenstein.
    Check {
        file: PathBuf,
        #[arg(long, value_parser = parse_at)]
        at: Option<String>,
    },
    /// Search for an orientation.
    Orient {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SYMBOLIC_MAX_DIM)]
        symbolic_max_dim: usize,
        #[arg(long, value_parser = parse_at)]
        at: Option<String>,
    },
    /// Local socle generator of an oriented augmented algebra.
    Socle {
        file: PathBuf,
        #[arg(long, value_parser = parse_at)]
        at: Option<String>,
    },
    /// Connected sum of two oriented augmented algebras.
    Consum {
        file1: PathBuf,
        file2: PathBuf,
        #[arg(long, value_parser = parse_at)]
        at: Option<String>,
    },
    /// Rees family of an oriented algebra.
    Rees {
        file: PathBuf,
        #[arg(long, value_parser = parse_at)]
        at: Option<String>,
    },
    /// The two-augmentation family over k[t] with x^4 = 2t x^3 - t^2 x^2.
    Robber {
        #[arg(long, value_parser = parse_at)]
        at: Option<String>,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Homotopy family of an oriented augmented algebra.
    Homotopy {
        file: PathBuf,
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long, value_parser = parse_at)]
        at: Option<String>,
    },
    /// Degeneration to the G-fat point.
    Degenerate {
        file: PathBuf,
        #[arg(long, value_parser = parse_at)]
        at: Option<String>,
    },
    /// Flat limit of q+2 random points in A^q.
    PointsDegenerate {
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Structure-tensor checks.
    Tensor {
        file: PathBuf,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "1generic,commute")]
        check: Vec<TensorCheck>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SYMBOLIC_MAX_DIM)]
        symbolic_max_dim: usize,
        #[arg(long, value_parser = parse_at)]
        at: Option<String>,
    },
    /// The big Coppersmith-Winograd tensor.
    Cw {
        #[arg(long)]
        q: usize,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Witt invariants of the orientation form.
    Witt {
        file: PathBuf,
        #[arg(long, value_parser = parse_at)]
        at: Option<String>,
    },
    /// Isometric embedding of a form into a hyperbolic form.
    EmbedHyp { formfile: PathBuf },
    /// Non-degeneracy of a form restricted to a subspace.
    Gro {
        formfile: PathBuf,
        /// Spanning rows, e.g. "1,1;0,1".
        #[arg(long)]
        subspace: String,
    },
}

/// Exit status and standard-output text of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn render(value: &Value, pretty: bool) -> String {
    let mut s = if pretty {
        serde_json::to_string_pretty(value)
    } else {
        serde_json::to_string(value)
    }
    .expect("json values serialize");
    s.push('\n');
    s
}

/// Runs one command line (including the program name).
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let pretty = argv.iter().any(|a| a == "--pretty");
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                };
            }
            let first = text.lines().next().unwrap_or("").trim_start_matches("error: ").to_string();
            let report = json!({"schema": SCHEMA, "kind": "UsageError", "message": first});
            return Outcome {
                code: 2,
                stdout: render(&report, pretty),
                stderr: text,
            };
        }
    };
    match dispatch(&cli.command) {
        Ok(payload) => Outcome {
            code: 0,
            stdout: render(&payload, cli.pretty),
            stderr: String::new(),
        },
        Err(e) => {
            let mut report = Map::new();
            report.insert("schema".into(), SCHEMA.into());
            report.insert("kind".into(), e.kind().into());
            report.insert("message".into(), e.to_string().into());
            if let Some((line, col)) = e.location() {
                report.insert("location".into(), json!({"line": line, "col": col}));
            }
            Outcome {
                code: 1,
                stdout: render(&Value::Object(report), cli.pretty),
                stderr: String::new(),
            }
        }
    }
}

// ---- rendering helpers ----

/// Scalar text: rationals as `a/b`, prime-field elements as residues.
fn sc(s: &Scalar) -> Value {
    Value::String(scalar_text(s))
}

fn scalar_text(s: &Scalar) -> String {
    match s {
        Scalar::Modular { value, .. } => value.to_string(),
        other => other.to_string(),
    }
}

fn vector(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(sc).collect())
}

fn matrix(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|i| vector(m.row(i))).collect())
}

/// Nonzero coordinates keyed by basis label.
fn labeled(labels: &[String], v: &[Scalar]) -> Value {
    let mut m = Map::new();
    for (l, s) in labels.iter().zip(v) {
        if !s.is_zero() {
            m.insert(l.clone(), sc(s));
        }
    }
    Value::Object(m)
}

fn tpoly_text(p: &TPoly) -> String {
    let vars: std::sync::Arc<[String]> = vec![parse::PARAMETER.to_string()].into();
    let terms = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| (crate::poly::Monomial(vec![k as u32]), c.clone()));
    MultiPoly::from_terms(p.field(), vars, terms).to_string()
}

fn labeled_t(labels: &[String], v: &[TPoly]) -> Value {
    let mut m = Map::new();
    for (l, s) in labels.iter().zip(v) {
        if !s.is_zero() {
            m.insert(l.clone(), tpoly_text(s).into());
        }
    }
    Value::Object(m)
}

fn tmatrix(rows: &[Vec<TPoly>]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| Value::Array(r.iter().map(|p| tpoly_text(p).into()).collect()))
            .collect(),
    )
}

fn field_name(f: Field) -> Value {
    Value::String(f.to_string())
}

fn algebra(a: &FiniteAlgebra) -> Value {
    let d = a.dim();
    let mut constants = Vec::new();
    for i in 0..d {
        for j in i..d {
            for k in 0..d {
                let s = a.constant(i, j, k);
                if !s.is_zero() {
                    constants.push(json!([i, j, k, scalar_text(s)]));
                }
            }
        }
    }
    json!({
        "field": field_name(a.field()),
        "dim": d,
        "basis": a.labels(),
        "unit": labeled(a.labels(), a.unit()),
        "constants": constants,
    })
}

fn family(f: &AlgebraFamily) -> Value {
    let d = f.dim();
    let mut constants = Vec::new();
    for i in 0..d {
        for j in i..d {
            for k in 0..d {
                let s = &f.constants[(i * d + j) * d + k];
                if !s.is_zero() {
                    constants.push(json!([i, j, k, tpoly_text(s)]));
                }
            }
        }
    }
    let augmentations: Map<String, Value> = f
        .augmentations
        .iter()
        .map(|(n, e)| (n.clone(), labeled_t(&f.labels, e)))
        .collect();
    json!({
        "field": field_name(f.field),
        "parameter": parse::PARAMETER,
        "dim": d,
        "basis": f.labels,
        "unit": labeled_t(&f.labels, &f.unit),
        "constants": constants,
        "orientation": f.orientation.as_ref().map(|o| labeled_t(&f.labels, o)),
        "augmentations": augmentations,
    })
}

fn fiber(f: &Fiber) -> Value {
    let labels = f.algebra.labels();
    let augmentations: Map<String, Value> = f
        .augmentations
        .iter()
        .map(|(n, e)| (n.clone(), labeled(labels, e)))
        .collect();
    json!({
        "algebra": algebra(&f.algebra),
        "orientation": f.orientation.as_ref().map(|o| labeled(labels, o)),
        "augmentations": augmentations,
    })
}

fn invariants(w: &WittInvariants) -> Value {
    json!({
        "rank": w.rank,
        "det_square_class": sc(&w.det_square_class),
        "signature": w.signature,
    })
}

fn verdict(labels: &[String], v: &GorensteinVerdict) -> Value {
    match v {
        GorensteinVerdict::Oriented {
            witness,
            trials,
            symbolic,
        } => json!({
            "gorenstein": "yes",
            "witness": labeled(labels, witness),
            "trials": trials,
            "symbolic": symbolic,
        }),
        GorensteinVerdict::NotGorenstein { certificate, trials } => json!({
            "gorenstein": "no",
            "certificate": certificate,
            "trials": trials,
        }),
        GorensteinVerdict::Inconclusive { trials, reason } => json!({
            "gorenstein": "inconclusive",
            "reason": reason,
            "trials": trials,
        }),
    }
}

fn report(command: &str, fields: Value) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), SCHEMA.into());
    m.insert("command".into(), command.into());
    if let Value::Object(rest) = fields {
        m.extend(rest);
    }
    Value::Object(m)
}

fn merge(mut a: Value, b: Value) -> Value {
    if let (Value::Object(x), Value::Object(y)) = (&mut a, b) {
        x.extend(y);
    }
    a
}

// ---- input ----

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::BadParameter(format!("cannot read {}: {e}", path.display())))
}

fn load_document(path: &Path) -> Result<PresentationDocument> {
    parse_presentation(&read_text(path)?)
}

fn at_scalar(field: Field, at: Option<&String>) -> Result<Option<Scalar>> {
    at.map(|v| field.parse_scalar(v)).transpose()
}

fn load(path: &Path, at: Option<&String>) -> Result<Compiled> {
    let doc = load_document(path)?;
    let at = at_scalar(doc.field, at)?;
    compile(&doc, at.as_ref())
}

/// Loads a fixed (non-family) document, for commands whose `--at`
/// specializes their output family.
fn load_fixed(path: &Path) -> Result<Compiled> {
    let doc = load_document(path)?;
    if doc.family {
        return Err(Error::BadFamily(
            "this command takes a fixed algebra; --at selects a fiber of its output".into(),
        ));
    }
    compile(&doc, None)
}

/// `Q`, `F7` or `F 7`.
fn parse_field_name(s: &str) -> Result<Field> {
    let s = s.trim();
    if s == "Q" {
        return Ok(Field::Rationals);
    }
    match s.strip_prefix('F').map(|p| p.trim().parse::<u64>()) {
        Some(Ok(p)) => Field::prime(p),
        _ => Err(Error::BadParameter(format!("unknown field {s}; use Q or F<p>"))),
    }
}

fn json_scalar(field: Field, v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => field.parse_scalar(s),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(field.from_i64(i)),
            None => Err(Error::BadForm(format!("entry {n} is not an integer"))),
        },
        other => Err(Error::BadForm(format!("entry {other} is not a scalar"))),
    }
}

/// A form file: `{"field": "Q", "gram": [[...]]}` or a bare nested array
/// (over ℚ). Entries are integers or scalar strings.
pub fn parse_form(text: &str) -> Result<BilinearForm> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::BadForm(format!("invalid JSON: {e}")))?;
    let (field, gram) = match &v {
        Value::Array(_) => (Field::Rationals, &v),
        Value::Object(m) => {
            let field = match m.get("field") {
                None => Field::Rationals,
                Some(Value::String(s)) => parse_field_name(s)?,
                Some(other) => return Err(Error::BadForm(format!("field {other} is not a string"))),
            };
            let gram = m
                .get("gram")
                .ok_or_else(|| Error::BadForm("missing \"gram\"".into()))?;
            (field, gram)
        }
        _ => return Err(Error::BadForm("expected an object or an array".into())),
    };
    let rows = gram
        .as_array()
        .ok_or_else(|| Error::BadForm("gram is not an array".into()))?
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Error::BadForm("gram row is not an array".into()))?
                .iter()
                .map(|x| json_scalar(field, x))
                .collect::<Result<Vec<Scalar>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::BadForm("gram matrix is not square".into()));
    }
    BilinearForm::new(Matrix::from_rows_with_cols(field, &rows, n)?)
}

fn parse_rows(field: Field, text: &str, ambient: usize) -> Result<Vec<Vec<Scalar>>> {
    text.split(';')
        .filter(|r| !r.trim().is_empty())
        .map(|r| {
            let row = r.split(',').map(|x| field.parse_scalar(x)).collect::<Result<Vec<_>>>()?;
            if row.len() != ambient {
                return Err(Error::DimensionMismatch(format!(
                    "subspace row has {} entries, the form has dimension {ambient}",
                    row.len()
                )));
            }
            Ok(row)
        })
        .collect()
}

fn quotient_info(q: &Quotient) -> Value {
    json!({
        "groebner_basis": q.gb.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "algebra": algebra(&q.algebra),
    })
}

// ---- commands ----

fn dispatch(cmd: &Command) -> Result<Value> {
    match cmd {
        Command::Check { file, at } => check(file, at.as_ref()),
        Command::Orient {
            file,
            seed,
            trials,
            symbolic_max_dim,
            at,
        } => {
            let c = load(file, at.as_ref())?;
            let a = &c.quotient.algebra;
            let v = gorenstein_test(a, *seed, *trials, *symbolic_max_dim);
            Ok(report(
                "orient",
                merge(json!({"file": file, "seed": seed, "dim": a.dim()}), verdict(a.labels(), &v)),
            ))
        }
        Command::Socle { file, at } => socle(file, at.as_ref()),
        Command::Consum { file1, file2, at } => {
            let t1 = load(file1, at.as_ref())?.augmented()?;
            let t2 = load(file2, at.as_ref())?.augmented()?;
            let cs = connected_sum(&t1, &t2)?;
            let r = &cs.result;
            let labels = r.algebra().labels();
            Ok(report(
                "consum",
                json!({
                    "files": [file1, file2],
                    "dims": [t1.dim(), t2.dim()],
                    "dim": r.dim(),
                    "algebra": algebra(r.algebra()),
                    "orientation": labeled(labels, &r.oa.phi),
                    "augmentation": labeled(labels, &r.e),
                    "socle": labeled(labels, &r.socle()),
                }),
            ))
        }
        Command::Rees { file, at } => {
            let oa = load(file, at.as_ref())?.oriented()?;
            let rf = rees_family(&oa)?;
            Ok(report(
                "rees",
                json!({
                    "file": file,
                    "family": family(&rf.family),
                    "gram": tmatrix(&rf.family.gram()?),
                    "phi_x2": sc(&rf.phi_x2),
                    "basis": matrix(&rf.basis),
                    "surgery_form": matrix(rf.surgery.form.gram()),
                }),
            ))
        }
        Command::Robber { at, field } => {
            let field = parse_field_name(field)?;
            let f = robber_family(field);
            match at_scalar(field, at.as_ref())? {
                Some(v) => Ok(report(
                    "robber",
                    json!({"at": sc(&v), "fiber": fiber(&f.specialize(&v)?)}),
                )),
                None => {
                    let mut socles = Map::new();
                    let mut isotropic = Map::new();
                    for (name, _) in &f.augmentations {
                        socles.insert(name.clone(), labeled_t(&f.labels, &f.socle_generator(name)?));
                        isotropic.insert(name.clone(), f.is_isotropic(name)?.into());
                    }
                    Ok(report(
                        "robber",
                        json!({"family": family(&f), "socle_generators": socles, "isotropic": isotropic}),
                    ))
                }
            }
        }
        Command::Homotopy { file, which, at } => {
            let t = load_fixed(file)?.augmented()?;
            let h = homotopy_families(&t)?;
            let (name, f) = match which {
                Which::Const => ("const", &h.h_const),
                Which::Mv => ("mv", &h.h_mv),
            };
            let body = match at_scalar(t.field(), at.as_ref())? {
                Some(v) => json!({"which": name, "at": sc(&v), "fiber": fiber(&f.specialize(&v)?)}),
                None => json!({"which": name, "family": family(f)}),
            };
            Ok(report("homotopy", merge(json!({"file": file}), body)))
        }
        Command::Degenerate { file, at } => {
            let t = load_fixed(file)?.augmented()?;
            let cw = degeneration_to_cw(&t)?;
            let common = json!({
                "file": file,
                "lambda": sc(&cw.decomposition.lambda),
                "invariants": invariants(&cw.invariants),
                "special_fiber_is_a_q_over_closure": cw.special_fiber_is_a_q_over_closure,
            });
            let body = match at_scalar(t.field(), at.as_ref())? {
                Some(v) => json!({"at": sc(&v), "fiber": fiber(&cw.family.specialize(&v)?)}),
                None => json!({"family": family(&cw.family)}),
            };
            Ok(report("degenerate", merge(common, body)))
        }
        Command::PointsDegenerate { q, seed, field } => {
            let field = parse_field_name(field)?;
            let rd = reduced_degeneration(field, *q, *seed)?;
            let labels = rd.limit.algebra.labels().to_vec();
            Ok(report(
                "points-degenerate",
                merge(
                    json!({
                        "q": q,
                        "seed": seed,
                        "points": rd.points.iter().map(|p| vector(p)).collect::<Vec<_>>(),
                        "limit": quotient_info(&rd.limit),
                        "hilbert": rd.hilbert,
                    }),
                    verdict(&labels, &rd.verdict),
                ),
            ))
        }
        Command::Tensor {
            file,
            check,
            seed,
            trials,
            symbolic_max_dim,
            at,
        } => {
            let c = load(file, at.as_ref())?;
            tensor(file, &c.quotient.algebra, check, *seed, *trials, *symbolic_max_dim)
        }
        Command::Cw { q, field } => {
            let field = parse_field_name(field)?;
            let t = cw_tensor(field, *q)?;
            let s = structure_tensor(&a_q(field, *q)?.algebra);
            Ok(report(
                "cw",
                json!({
                    "q": q,
                    "field": field_name(field),
                    "dims": [t.dims.0, t.dims.1, t.dims.2],
                    "support": support(&t),
                    "equals_structure_tensor_of_a_q": t == s,
                }),
            ))
        }
        Command::Witt { file, at } => {
            let oa = load(file, at.as_ref())?.oriented()?;
            let w = witt_invariants(&oa.form())?;
            Ok(report("witt", merge(json!({"file": file, "field": field_name(oa.field())}), invariants(&w))))
        }
        Command::EmbedHyp { formfile } => {
            let b = parse_form(&read_text(formfile)?)?;
            let e = hyp_embed(&b)?;
            let h = hyperbolic_form(b.field(), b.dim());
            let pulled = h.restrict_to(&e.transpose());
            Ok(report(
                "embed-hyp",
                json!({
                    "formfile": formfile,
                    "dim": b.dim(),
                    "hyperbolic_dim": 2 * b.dim(),
                    "embedding": matrix(&e),
                    "verified": pulled.gram() == b.gram(),
                }),
            ))
        }
        Command::Gro { formfile, subspace } => {
            let b = parse_form(&read_text(formfile)?)?;
            let rows = parse_rows(b.field(), subspace, b.dim())?;
            let w = Subspace::span(b.field(), b.dim(), &rows)?;
            let nondegenerate = b.restrict(&w).is_nondegenerate();
            let hyperbolic = b.dim() % 2 == 0 && hyperbolic_form(b.field(), b.dim() / 2).gram() == b.gram();
            let member = if hyperbolic {
                Some(gro_member(&w, b.dim() / 2)?)
            } else {
                None
            };
            Ok(report(
                "gro",
                json!({
                    "formfile": formfile,
                    "subspace_dim": w.dim(),
                    "restriction_nondegenerate": nondegenerate,
                    "hyperbolic_ambient": hyperbolic,
                    "member": member,
                }),
            ))
        }
    }
}

fn check(file: &Path, at: Option<&String>) -> Result<Value> {
    let c = load(file, at)?;
    let a = &c.quotient.algebra;
    let labels = a.labels();
    let (status, phi) = match &c.phi {
        Some(_) => {
            let oa = c.oriented()?;
            (
                json!({"gorenstein": "yes", "witness": labeled(labels, &oa.phi), "witness_source": "orient"}),
                Some(oa.phi),
            )
        }
        None => {
            let v = gorenstein_test(a, 0, DEFAULT_TRIALS, DEFAULT_SYMBOLIC_MAX_DIM);
            let phi = match &v {
                GorensteinVerdict::Oriented { witness, .. } => Some(witness.clone()),
                _ => None,
            };
            (merge(verdict(labels, &v), json!({"witness_source": "search"})), phi)
        }
    };
    let aug = match &c.e {
        None => Value::Null,
        Some(e) => {
            if !augmentation_check(a, e) {
                return Err(Error::NotAugmentation("the aug point does not define an algebra map".into()));
            }
            let isotropic = match &phi {
                Some(phi) => {
                    let oa = crate::frobenius::OrientedAlgebra::new(a.clone(), phi.clone())?;
                    Some(isotropy_check(&oa, e)?)
                }
                None => None,
            };
            json!({"values": labeled(labels, e), "isotropic": isotropic})
        }
    };
    let body = merge(json!({"file": file, "dim": a.dim()}), status);
    let body = merge(body, quotient_info(&c.quotient));
    Ok(report("check", merge(body, json!({"augmentation": aug}))))
}

fn socle(file: &Path, at: Option<&String>) -> Result<Value> {
    let c = load(file, at)?;
    let oa = c.oriented()?;
    let e = c
        .e
        .clone()
        .ok_or_else(|| Error::BadParameter("socle needs an aug clause".into()))?;
    if !augmentation_check(&oa.algebra, &e) {
        return Err(Error::NotAugmentation("the aug point does not define an algebra map".into()));
    }
    let x = socle_generator(&oa, &e)?;
    let x2 = oa.algebra.multiply(&x, &x)?;
    let poly = MultiPoly::from_terms(
        oa.field(),
        c.vars.clone(),
        c.quotient.basis.iter().cloned().zip(x.iter().cloned()),
    );
    Ok(report(
        "socle",
        json!({
            "file": file,
            "socle": labeled(oa.algebra.labels(), &x),
            "polynomial": poly.to_string(),
            "phi_of_socle": sc(&oa.phi_of(&x)),
            "socle_squared_zero": x2.iter().all(Scalar::is_zero),
            "isotropic": isotropy_check(&oa, &e)?,
        }),
    ))
}

fn support(t: &Tensor3) -> Value {
    Value::Array(
        t.support()
            .iter()
            .map(|(i, j, k, s)| json!([i, j, k, scalar_text(s)]))
            .collect(),
    )
}

fn tensor(
    file: &Path,
    a: &FiniteAlgebra,
    checks: &[TensorCheck],
    seed: u64,
    trials: usize,
    symbolic_max_dim: usize,
) -> Result<Value> {
    let t = structure_tensor(a);
    let mut out = Map::new();
    out.insert("file".into(), json!(file));
    out.insert("dims".into(), json!([t.dims.0, t.dims.1, t.dims.2]));
    out.insert("support_size".into(), json!(t.support().len()));
    let g = one_generic(&t, seed, trials, symbolic_max_dim)?;
    if checks.contains(&TensorCheck::OneGeneric) {
        let v = match &g {
            OneGeneric::Witness { a: w, symbolic } => {
                json!({"status": "yes", "witness": labeled(a.labels(), w), "symbolic": symbolic})
            }
            OneGeneric::No { certificate } => json!({"status": "no", "certificate": certificate}),
            OneGeneric::Inconclusive { trials, reason } => {
                json!({"status": "inconclusive", "trials": trials, "reason": reason})
            }
        };
        out.insert("1generic".into(), v);
    }
    if checks.contains(&TensorCheck::Commute) {
        let v = match &g {
            OneGeneric::Witness { a: w, .. } => json!(strassen_commuting(&t, w)?),
            _ => Value::Null,
        };
        out.insert("commute".into(), v);
    }
    Ok(report("tensor", Value::Object(out)))
}

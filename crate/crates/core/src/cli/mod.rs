//! The `exanlab` command-line tool.
//!
//! Every subcommand reads one or more JSON files, merges them into a single
//! [`InputDocument`], and prints one JSON report with sorted keys. Exit codes:
//! 0 for success or a true verdict, 1 for a well-formed negative verdict, 2 for
//! input errors and 3 when a computation would exceed the size guard.

pub mod json;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::algebra::{center, derivations, Algebra};
use crate::error::{Error, Result};
use crate::extensions::{
    build_extension, caction, choose_section, cocycle_violation, equiv, exan_basis, extract_cocycle,
    quotient_extension, rebuild_isomorphism, EquivMode, ExtensionAlgebra, Side,
};
use crate::hochschild::{Cochain, Hochschild};
use crate::jets::{connection_exists, default_derivation, jet_action, kaehler};
use crate::kodaira::{bracket_closure, ks_map, simultaneous_connection, twist_module_check};

pub use json::InputDocument;
use json::*;

#[derive(Debug, Parser)]
#[command(name = "exanlab", version, about = "Square-zero extensions, Hochschild cohomology and jets of finite-dimensional algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Files {
    /// Input JSON files; their sections are merged.
    #[arg(required = true)]
    files: Vec<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Strict,
    Inner,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the axioms of every section present.
    Validate(Files),
    /// Basis of the center.
    Center(Files),
    /// Basis of the derivations into the bimodule (the algebra itself by default).
    Derivations(Files),
    /// Hochschild cohomology in one degree.
    Hh {
        #[arg(long)]
        degree: usize,
        #[command(flatten)]
        files: Files,
    },
    /// Cocycles, inner cocycles and HH^2.
    Exan(Files),
    /// Build the extension algebra of a 2-cocycle.
    Extend {
        /// Extra file holding the cocycle.
        #[arg(long)]
        cocycle: Option<PathBuf>,
        /// Where to write the extension document.
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        files: Files,
    },
    /// Choose a section of an extension and read off its cocycle.
    SectionExtract(Files),
    /// Compare the first two 2-cochains.
    Equiv {
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[command(flatten)]
        files: Files,
    },
    /// Act on a cocycle by a central element.
    Caction {
        /// Comma-separated coordinates of the element.
        #[arg(long, allow_hyphen_values = true)]
        element: String,
        #[arg(long, value_enum, default_value = "left")]
        side: SideArg,
        #[command(flatten)]
        files: Files,
    },
    /// Quotient of an extension by the ideal generated by the image of its cocycle.
    Quotient(Files),
    /// First-order jet module of a left module.
    Jet(Files),
    /// Kaehler differentials and the split jet sequence.
    Kahler(Files),
    /// Existence of a connection on a left module.
    Connection(Files),
    /// Kodaira-Spencer map of a left module.
    Ks(Files),
    /// Checks on the twisted module of the Kodaira-Spencer kernel.
    TwistCheck(Files),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate(_) => "validate",
            Command::Center(_) => "center",
            Command::Derivations(_) => "derivations",
            Command::Hh { .. } => "hh",
            Command::Exan(_) => "exan",
            Command::Extend { .. } => "extend",
            Command::SectionExtract(_) => "section-extract",
            Command::Equiv { .. } => "equiv",
            Command::Caction { .. } => "caction",
            Command::Quotient(_) => "quotient",
            Command::Jet(_) => "jet",
            Command::Kahler(_) => "kahler",
            Command::Connection(_) => "connection",
            Command::Ks(_) => "ks",
            Command::TwistCheck(_) => "twist-check",
        }
    }

    fn files(&self) -> &[PathBuf] {
        match self {
            Command::Validate(f)
            | Command::Center(f)
            | Command::Derivations(f)
            | Command::Exan(f)
            | Command::SectionExtract(f)
            | Command::Quotient(f)
            | Command::Jet(f)
            | Command::Kahler(f)
            | Command::Connection(f)
            | Command::Ks(f)
            | Command::TwistCheck(f) => &f.files,
            Command::Hh { files, .. }
            | Command::Extend { files, .. }
            | Command::Equiv { files, .. }
            | Command::Caction { files, .. } => &files.files,
        }
    }
}

/// Exit code and standard output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome {
                    code: 0,
                    stdout: e.to_string(),
                };
            }
            let report = json!({ "error": { "kind": "usage", "message": e.to_string() } });
            return Outcome {
                code: 2,
                stdout: render(report),
            };
        }
    };
    let name = cli.command.name();
    let mut doc = InputDocument::default();
    let loaded = cli.command.files().iter().try_for_each(|p| doc.merge_file(p));
    let result = loaded.and_then(|_| {
        if let Command::Extend { cocycle: Some(p), .. } = &cli.command {
            doc.merge_file(p)?;
        }
        dispatch(&cli.command, &doc)
    });
    let (code, body) = match result {
        Ok((code, body)) => (code, body),
        Err(e) => (exit_code(&e), json!({ "error": { "kind": error_kind(&e), "message": e.to_string() } })),
    };
    let mut report = match body {
        Value::Object(m) => m,
        other => {
            let mut m = Map::new();
            m.insert("result".into(), other);
            m
        }
    };
    report.insert("command".into(), json!(name));
    if let Some(f) = doc.field {
        report.insert("field".into(), field_json(f));
    }
    Outcome {
        code,
        stdout: render(Value::Object(report)),
    }
}

fn render(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::SizeGuard { .. } => 3,
        _ => 2,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::NotPrime(_) => "not_prime",
        Error::DivisionByZero => "division_by_zero",
        Error::DimensionMismatch(_) => "dimension_mismatch",
        Error::FieldMismatch { .. } => "field_mismatch",
        Error::SizeGuard { .. } => "size_guard",
        Error::SubspaceNotContained => "subspace_not_contained",
        Error::InvalidAlgebra(_) => "invalid_algebra",
        Error::InvalidModule(_) => "invalid_module",
        Error::NotCommutative(_, _) => "not_commutative",
        Error::NotCentral => "not_central",
        Error::DegreeOutOfRange(_) => "degree_out_of_range",
        Error::NotCocycle(_) => "not_cocycle",
        Error::InvalidExtension(_) => "invalid_extension",
        Error::InvalidSection(_) => "invalid_section",
        Error::InvalidDerivation(_) => "invalid_derivation",
        Error::ContextMismatch(_) => "context_mismatch",
        Error::Verification(_) => "verification",
        Error::Parse(_) => "parse",
    }
}

type Report = Result<(i32, Value)>;

fn verdict(ok: bool) -> i32 {
    if ok {
        0
    } else {
        1
    }
}

fn dispatch(cmd: &Command, doc: &InputDocument) -> Report {
    match cmd {
        Command::Validate(_) => validate(doc),
        Command::Center(_) => {
            let a = doc.algebra()?;
            let basis = center(&a);
            Ok((0, json!({ "dims": { "algebra": a.dim(), "center": basis.len() }, "basis": basis.iter().map(|v| vector_json(v)).collect::<Vec<_>>() })))
        }
        Command::Derivations(_) => {
            let a = doc.algebra()?;
            let i = doc.bimodule_or_regular(&a)?;
            let basis = derivations(&a, &i)?;
            Ok((0, json!({ "dims": { "derivations": basis.len() }, "basis": matrices_json(&basis) })))
        }
        Command::Hh { degree, .. } => {
            let a = doc.algebra()?;
            let i = doc.bimodule_or_regular(&a)?;
            let h = Hochschild::new(&a, &i)?;
            let c = h.cohomology(*degree)?;
            Ok((
                0,
                json!({
                    "degree": degree,
                    "dim_HH": c.dim,
                    "dims": { "cochains": h.cochain_dim(*degree), "cocycles": c.cocycles.len(), "coboundaries": c.coboundaries.len() },
                    "basis": cochains_json(&c.representatives),
                }),
            ))
        }
        Command::Exan(_) => {
            let a = doc.algebra()?;
            let i = doc.bimodule_or_regular(&a)?;
            let e = exan_basis(&a, &i)?;
            Ok((
                0,
                json!({
                    "dims": { "exan": e.cocycles.len(), "inner": e.inner.len(), "HH2": e.dim_hh2 },
                    "basis": cochains_json(&e.cocycles),
                    "representatives": cochains_json(&e.representatives),
                }),
            ))
        }
        Command::Extend { output, .. } => extend(doc, output.as_ref()),
        Command::SectionExtract(_) => section_extract(doc),
        Command::Equiv { mode, .. } => {
            let a = doc.algebra()?;
            let i = doc.bimodule_or_regular(&a)?;
            let cs = doc.cochains_of_degree(2, &a, i.dim())?;
            if cs.len() < 2 {
                return Err(Error::Parse(format!("equiv needs two 2-cochains, found {}", cs.len())));
            }
            let mode = match mode {
                ModeArg::Strict => EquivMode::Strict,
                ModeArg::Inner => EquivMode::Inner,
            };
            let e = equiv(&a, &i, &cs[0], &cs[1], mode)?;
            let mut out = json!({ "verdict": e.equivalent, "mode": format!("{mode:?}").to_lowercase() });
            if let Some(w) = &e.witness {
                out["witness"] = cochain_json(w);
            }
            Ok((verdict(e.equivalent), out))
        }
        Command::Caction { element, side, .. } => {
            let a = doc.algebra()?;
            let i = doc.bimodule_or_regular(&a)?;
            let c = single_cocycle(doc, &a, i.dim())?;
            let coords: Vec<String> = element.split(',').map(|s| s.trim().to_owned()).collect();
            let z = parse_vector(a.field(), &coords, a.dim(), "element")?;
            let side = match side {
                SideArg::Left => Side::Left,
                SideArg::Right => Side::Right,
            };
            match caction(&a, &i, &z, &c, side) {
                Ok(out) => Ok((0, json!({ "verdict": true, "cochain": cochain_json(&out) }))),
                Err(Error::NotCentral) => Ok((1, json!({ "verdict": false, "reason": "element is not central" }))),
                Err(Error::NotCocycle(t)) => Ok((1, json!({ "verdict": false, "reason": "not a cocycle", "witness": [t.0, t.1, t.2] }))),
                Err(e) => Err(e),
            }
        }
        Command::Quotient(_) => quotient(doc),
        Command::Jet(_) => jet(doc),
        Command::Kahler(_) => {
            let a = doc.algebra()?;
            let k = kaehler(&a)?;
            Ok((
                0,
                json!({
                    "verdict": true,
                    "dims": {
                        "algebra": a.dim(),
                        "tensor_square": k.tensor_square.dim(),
                        "diagonal": k.diagonal.len(),
                        "diagonal_squared": k.diagonal_squared.len(),
                        "jets": k.jets.dim(),
                        "omega": k.omega_dim(),
                    },
                    "basis": k.omega_basis.iter().map(|v| vector_json(v)).collect::<Vec<_>>(),
                    "universal": matrix_json(&k.universal),
                    "splitting": matrix_json(&k.splitting),
                    "retraction": matrix_json(&k.retraction),
                }),
            ))
        }
        Command::Connection(_) => connection(doc),
        Command::Ks(_) => {
            let a = doc.algebra()?;
            let m = doc.module(&a)?;
            let r = ks_map(&a, &m)?;
            let (bracket, splitting) = if r.commutative {
                let b = bracket_closure(&a, &m, &r)?;
                let lr3 = simultaneous_connection(&a, &m, &r)?;
                let t = twist_module_check(&a, &m, &r)?;
                (json!(b.closed), json!({ "simultaneous": lr3.is_some(), "a_linear": t.splitting_exists() }))
            } else {
                (Value::Null, Value::Null)
            };
            Ok((
                0,
                json!({
                    "dim_D1": r.dim_d1(),
                    "dim_Der": r.dim_der(),
                    "dim_Ext1": r.dim_ext1,
                    "dim_VM": r.dim_vm(),
                    "commutative": r.commutative,
                    "bracket_closed": bracket,
                    "splitting_exists": splitting.get("a_linear").cloned().unwrap_or(Value::Null),
                    "simultaneous_connection": splitting.get("simultaneous").cloned().unwrap_or(Value::Null),
                    "vm_is_submodule": r.vm_is_submodule,
                    "g": matrix_json(&r.g),
                    "basis": matrices_json(&r.vm),
                    "witness": matrices_json(&r.witnesses),
                }),
            ))
        }
        Command::TwistCheck(_) => {
            let a = doc.algebra()?;
            let m = doc.module(&a)?;
            let r = ks_map(&a, &m)?;
            let t = twist_module_check(&a, &m, &r)?;
            Ok((
                verdict(t.passed()),
                json!({
                    "verdict": t.passed(),
                    "a_linear": t.a_linear,
                    "cocycle_law": t.cocycle_law,
                    "twisted_module": t.twisted_module,
                    "splitting_exists": t.splitting_exists(),
                    "dims": { "VM": r.dim_vm(), "End_A": t.dim_end_a },
                    "connection": matrices_json(&t.connection),
                    "L": t.l_values.iter().map(|row| matrices_json(row)).collect::<Vec<_>>(),
                    "witness": t.splitting.as_deref().map(matrices_json),
                }),
            ))
        }
    }
}

fn cochains_json(cs: &[Cochain]) -> Value {
    Value::Array(cs.iter().map(cochain_json).collect())
}

fn single_cocycle(doc: &InputDocument, a: &Algebra, ideal_dim: usize) -> Result<Cochain> {
    let mut cs = doc.cochains_of_degree(2, a, ideal_dim)?;
    match cs.len() {
        1 => Ok(cs.remove(0)),
        n => Err(Error::Parse(format!("expected exactly one 2-cochain, found {n}"))),
    }
}

fn validate(doc: &InputDocument) -> Report {
    let mut checks = Map::new();
    let mut ok = true;
    if let Some(ext) = &doc.extension {
        let f = doc.field()?;
        let b = json::parse_algebra_unchecked(f, &ext.algebra)?;
        let report = b.validate();
        ok &= report.is_valid();
        checks.insert("extension_algebra".into(), validation_json(&report));
        match doc.extension() {
            Ok(e) => {
                checks.insert(
                    "extension".into(),
                    json!({ "ok": true, "dims": { "B": e.algebra().dim(), "ideal": e.ideal_dim(), "base": e.base().dim() }, "recorded_cocycle": e.cocycle().is_some() }),
                );
            }
            Err(e @ (Error::InvalidExtension(_) | Error::InvalidAlgebra(_) | Error::InvalidModule(_) | Error::Verification(_))) => {
                ok = false;
                checks.insert("extension".into(), json!({ "ok": false, "message": e.to_string() }));
            }
            Err(e) => return Err(e),
        }
    }
    if doc.algebra.is_some() {
        let a = doc.algebra_unchecked()?;
        let report = a.validate();
        checks.insert("algebra".into(), validation_json(&report));
        if !report.is_valid() {
            return Ok((1, json!({ "verdict": false, "checks": checks })));
        }
        if let Some(b) = &doc.bimodule {
            let b = json::parse_bimodule(&a, b, false)?;
            let r = b.validate(&a);
            ok &= r.is_ok();
            checks.insert("bimodule".into(), section_check(r)?);
            if has_two_cochains(doc) {
                let mut cocycles = Vec::new();
                for c in doc.cochains_of_degree(2, &a, b.dim())? {
                    let v = cocycle_violation(&a, &b, &c)?;
                    ok &= v.is_none();
                    cocycles.push(json!({ "is_cocycle": v.is_none(), "violation": v.map(|t| vec![t.0, t.1, t.2]) }));
                }
                checks.insert("cocycles".into(), Value::Array(cocycles));
            }
        }
        if let Some(m) = &doc.module {
            let m = json::parse_module(&a, m, false)?;
            let r = m.validate(&a);
            ok &= r.is_ok();
            checks.insert("module".into(), section_check(r)?);
        }
    } else if doc.extension.is_none() {
        return Err(Error::Parse("nothing to validate: no algebra or extension section".into()));
    }
    Ok((verdict(ok), json!({ "verdict": ok, "checks": checks })))
}

fn has_two_cochains(doc: &InputDocument) -> bool {
    doc.cochains.iter().any(|c| c.degree == 2)
}

fn section_check(r: Result<()>) -> Result<Value> {
    match r {
        Ok(()) => Ok(json!({ "ok": true })),
        Err(e @ (Error::InvalidModule(_) | Error::InvalidAlgebra(_))) => Ok(json!({ "ok": false, "message": e.to_string() })),
        Err(e) => Err(e),
    }
}

fn validation_json(r: &crate::algebra::ValidationReport) -> Value {
    json!({
        "ok": r.is_valid(),
        "associativity": r.associativity.iter().map(|t| vec![t.0, t.1, t.2]).collect::<Vec<_>>(),
        "left_unit": r.left_unit,
        "right_unit": r.right_unit,
    })
}

fn extend(doc: &InputDocument, output: Option<&PathBuf>) -> Report {
    let a = doc.algebra()?;
    let i = doc.bimodule_or_regular(&a)?;
    let c = single_cocycle(doc, &a, i.dim())?;
    let b = match build_extension(&a, &i, &c) {
        Ok(b) => b,
        Err(Error::NotCocycle(t)) => {
            return Ok((1, json!({ "verdict": false, "reason": "not a cocycle", "witness": [t.0, t.1, t.2] })));
        }
        Err(e) => return Err(e),
    };
    let ext_doc = json!({ "field": field_json(a.field()), "extension": extension_json(&b) });
    let mut out = json!({
        "verdict": true,
        "dims": { "B": b.algebra().dim(), "ideal": b.ideal_dim(), "base": a.dim() },
    });
    match output {
        Some(path) => {
            std::fs::write(path, render(ext_doc)).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            out["output"] = json!(path.display().to_string());
        }
        None => out["extension"] = ext_doc["extension"].clone(),
    }
    Ok((0, out))
}

fn section_extract(doc: &InputDocument) -> Report {
    let b = doc.extension()?;
    let s = choose_section(&b)?;
    let ex = extract_cocycle(&b, &s)?;
    let rebuilt = rebuild_isomorphism(&b, &s)?;
    let mut out = json!({
        "verdict": true,
        "section": matrix_json(s.matrix()),
        "cocycle": cochain_json(&ex.cocycle),
        "bimodule": bimodule_json(&ex.bimodule),
        "base": algebra_json(b.base()),
        "isomorphism": matrix_json(&rebuilt.map.matrix),
        "dims": { "B": b.algebra().dim(), "ideal": b.ideal_dim(), "base": b.base().dim() },
    });
    if let Some(recorded) = b.cocycle() {
        let inner = equiv(b.base(), b.ideal(), recorded, &ex.cocycle, EquivMode::Inner)?;
        out["recorded_equal"] = json!(recorded == &ex.cocycle);
        out["recorded_inner_equivalent"] = json!(inner.equivalent);
    }
    Ok((0, out))
}

fn extension_input(doc: &InputDocument) -> Result<ExtensionAlgebra> {
    if doc.extension.is_some() {
        return doc.extension();
    }
    let a = doc.algebra()?;
    let i = doc.bimodule_or_regular(&a)?;
    let c = single_cocycle(doc, &a, i.dim())?;
    build_extension(&a, &i, &c)
}

fn quotient(doc: &InputDocument) -> Report {
    let b = match extension_input(doc) {
        Ok(b) => b,
        Err(Error::NotCocycle(t)) => {
            return Ok((1, json!({ "verdict": false, "reason": "not a cocycle", "witness": [t.0, t.1, t.2] })));
        }
        Err(e) => return Err(e),
    };
    let q = quotient_extension(&b)?;
    Ok((
        0,
        json!({
            "verdict": true,
            "dims": { "ideal": b.ideal_dim(), "J": q.ideal_j.len(), "quotient_ideal": q.extension.ideal_dim() },
            "basis": q.ideal_j.iter().map(|v| vector_json(v)).collect::<Vec<_>>(),
            "extension": extension_json(&q.extension),
            "map": matrix_json(&q.map),
        }),
    ))
}

fn derivation_input(doc: &InputDocument, a: &Algebra, ideal_dim: usize) -> Result<Option<crate::exactla::Matrix>> {
    let mut ds = doc.cochains_of_degree(1, a, ideal_dim)?;
    match ds.len() {
        0 => Ok(None),
        1 => Ok(Some(ds.remove(0).matrix().clone())),
        n => Err(Error::Parse(format!("expected at most one 1-cochain, found {n}"))),
    }
}

fn jet(doc: &InputDocument) -> Report {
    let a = doc.algebra()?;
    let i = doc.bimodule_or_regular(&a)?;
    let e = doc.module(&a)?;
    let c = single_cocycle(doc, &a, i.dim())?;
    let d = match derivation_input(doc, &a, i.dim())? {
        Some(d) => d,
        None => default_derivation(&a, &i)?,
    };
    let j = match jet_action(&a, &i, &e, &c, &d) {
        Ok(j) => j,
        Err(Error::NotCocycle(t)) => {
            return Ok((1, json!({ "verdict": false, "reason": "not a cocycle", "witness": [t.0, t.1, t.2] })));
        }
        Err(e) => return Err(e),
    };
    Ok((
        verdict(j.is_module()),
        json!({
            "verdict": j.is_module(),
            "module_ok": j.associative,
            "criterion_ok": j.criterion,
            "unital": j.unital,
            "associativity_failure": j.associativity_failure.map(|(x, y)| vec![x, y]),
            "dims": { "tensor": j.tensor.dim(), "jet": j.dim() },
            "derivation": matrix_json(&j.derivation),
        }),
    ))
}

fn connection(doc: &InputDocument) -> Report {
    let a = doc.algebra()?;
    let e = doc.module(&a)?;
    let (f, d, source) = match doc.bimodule(&a)? {
        Some(f) => {
            let d = derivation_input(doc, &a, f.dim())?
                .ok_or_else(|| Error::Parse("a bimodule needs a 1-cochain derivation".into()))?;
            (f, d, "input")
        }
        None => {
            let k = kaehler(&a)?;
            (k.omega, k.universal, "kaehler")
        }
    };
    let conn = match connection_exists(&a, &e, &f, &d) {
        Ok(c) => c,
        Err(Error::InvalidDerivation(msg)) => return Err(Error::Parse(format!("derivation: {msg}"))),
        Err(err) => return Err(err),
    };
    let mut out = json!({
        "verdict": conn.is_some(),
        "derivation_source": source,
        "dims": { "module": e.dim(), "target": f.dim() },
    });
    if let Some(c) = &conn {
        out["dims"]["tensor"] = json!(c.tensor.dim());
        out["connection"] = matrix_json(&c.matrix);
    }
    Ok((verdict(conn.is_some()), out))
}

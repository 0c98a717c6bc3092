//! Command-line front end. [`run`] renders a complete report and exit code
//! without touching the process, so it can be driven from tests.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use gelfand::algebra::{from_pair, to_pair, Algebra, AlgebraError, Element, Pair};
use gelfand::exec::Exec;
use gelfand::group::{self, builtin as groups, FiniteAbelianGroup, FiniteGroup, GroupError, GroupInput};
use gelfand::involution::{self, Involution, InvolutionError};
use gelfand::io::{AlgebraFile, CharacterTable, NormBlock, Report};
use gelfand::linalg;
use gelfand::norms::{self, AlgebraNorm, NormError, NormKind};
use gelfand::operator::{self, InnerProductSpace, OperatorError, RawOperatorModel};
use gelfand::spectrum::{self, CharacterOptions, CharacterSpace, SpectrumError, DEFAULT_SEED};
use gelfand::verify::{self, VerifyConfig};
use gelfand::Tolerances;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVARIANT: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "gelfand",
    version,
    about = "Characters, radicals and Gelfand transforms of finite-dimensional commutative algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Seed for every randomized step (decimal or 0x-prefixed hex).
    #[arg(long, global = true, default_value = "0x5EED", value_parser = parse_seed)]
    pub seed: u64,
    /// Base of the character-certification tolerance.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Input file (algebra, operator model or group, depending on the command).
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Spread independent work items over all cores; output is unchanged.
    #[arg(long, global = true)]
    pub parallel: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BuiltinGroup {
    S3,
    D4,
    Q8,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certify an algebra (and its involution, if given).
    Validate,
    /// List all characters.
    Characters,
    /// Basis of the radical with nilpotency exponents.
    Radical,
    /// Gelfand transform of the file's "element".
    Transform,
    /// Element whose transform is the file's "function".
    Interpolate,
    /// Contraction and homomorphism-norm checks for every norm kind.
    Norms {
        #[arg(long, default_value_t = norms::DEFAULT_SAMPLES)]
        samples: usize,
    },
    /// Certify the file's "involution" and report conjugate characters.
    InvolutionCheck,
    /// Generate the *-algebra of an operator model and verify the isomorphism.
    Operator,
    /// Characters of an abelian group algebra or of the center of a group algebra.
    Group {
        #[arg(long, value_enum)]
        builtin: Option<BuiltinGroup>,
    },
    /// Run every property suite on the built-in corpus.
    VerifyAll,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Characters => "characters",
            Command::Radical => "radical",
            Command::Transform => "transform",
            Command::Interpolate => "interpolate",
            Command::Norms { .. } => "norms",
            Command::InvolutionCheck => "involution-check",
            Command::Operator => "operator",
            Command::Group { .. } => "group",
            Command::VerifyAll => "verify-all",
        }
    }
}

pub fn parse_seed(s: &str) -> Result<u64, String> {
    let t = s.trim();
    let parsed = match t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => t.parse(),
    };
    parsed.map_err(|e| format!("invalid seed {s:?}: {e}"))
}

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Unreadable or malformed input.
    Parse(String),
    /// Input that parses but fails certification.
    Validation(String),
    /// A property the theory guarantees did not hold.
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Validation(_) => EXIT_INVALID,
            CliError::Invariant(_) => EXIT_INVARIANT,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "parse",
            CliError::Validation(_) => "validation",
            CliError::Invariant(_) => "property-violated",
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::Validation(m) | CliError::Invariant(m) => m,
        }
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<SpectrumError> for CliError {
    fn from(e: SpectrumError) -> Self {
        match e {
            SpectrumError::Algebra(a) => a.into(),
            SpectrumError::LengthMismatch { .. } | SpectrumError::NotMember(_) => CliError::Validation(e.to_string()),
            _ => CliError::Invariant(e.to_string()),
        }
    }
}

impl From<InvolutionError> for CliError {
    fn from(e: InvolutionError) -> Self {
        match e {
            InvolutionError::Spectrum(s) => s.into(),
            InvolutionError::PropertyViolated(_) | InvolutionError::CertificationFailed(_) => {
                CliError::Invariant(e.to_string())
            }
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<OperatorError> for CliError {
    fn from(e: OperatorError) -> Self {
        match e {
            OperatorError::Spectrum(s) => s.into(),
            OperatorError::Involution(i) => i.into(),
            OperatorError::ShapeMismatch(_)
            | OperatorError::BadGram(_)
            | OperatorError::NotCommutative(..)
            | OperatorError::Algebra(_) => CliError::Validation(e.to_string()),
            _ => CliError::Invariant(e.to_string()),
        }
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::Spectrum(s) => s.into(),
            GroupError::Involution(i) => i.into(),
            GroupError::InvalidGroup(_) | GroupError::LengthMismatch { .. } | GroupError::Algebra(_) => {
                CliError::Validation(e.to_string())
            }
            _ => CliError::Invariant(e.to_string()),
        }
    }
}

impl From<NormError> for CliError {
    fn from(e: NormError) -> Self {
        match e {
            NormError::Spectrum(s) => s.into(),
            NormError::Algebra(a) => a.into(),
            NormError::InvalidNorm(_) => CliError::Validation(e.to_string()),
            NormError::ContractionViolated { .. } => CliError::Invariant(e.to_string()),
        }
    }
}

/// Rendered result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Ctx {
    seed: u64,
    tol: Tolerances,
    exec: Exec,
    input: Option<PathBuf>,
}

pub fn run(cli: &Cli) -> Outcome {
    let command = cli.command.name();
    let tol = match cli.tol {
        Some(t) if !(t.is_finite() && t > 0.0) => {
            return error_outcome(
                cli,
                command,
                Tolerances::default(),
                CliError::Parse(format!("--tol must be positive, got {t}")),
            );
        }
        Some(t) => Tolerances::with_char_base(t),
        None => Tolerances::default(),
    };
    let ctx = Ctx {
        seed: cli.seed,
        tol,
        exec: if cli.parallel { Exec::Parallel } else { Exec::Sequential },
        input: cli.input.clone(),
    };
    let result = match &cli.command {
        Command::Validate => cmd_validate(&ctx),
        Command::Characters => cmd_characters(&ctx),
        Command::Radical => cmd_radical(&ctx),
        Command::Transform => cmd_transform(&ctx),
        Command::Interpolate => cmd_interpolate(&ctx),
        Command::Norms { samples } => cmd_norms(&ctx, *samples),
        Command::InvolutionCheck => cmd_involution(&ctx),
        Command::Operator => cmd_operator(&ctx),
        Command::Group { builtin } => cmd_group(&ctx, *builtin),
        Command::VerifyAll => cmd_verify_all(&ctx),
    };
    match result {
        Ok((body, code)) => {
            let report = Report::new(command, ctx.seed, ctx.tol, body);
            let value = serde_json::to_value(&report).expect("reports serialize");
            let stdout = match cli.format {
                Format::Json => to_json(&value),
                Format::Table => render_table(command, &value),
            };
            let stderr = if code == EXIT_OK { String::new() } else { format!("{command}: property suite failed\n") };
            Outcome { code, stdout, stderr }
        }
        Err(e) => error_outcome(cli, command, ctx.tol, e),
    }
}

fn error_outcome(cli: &Cli, command: &str, tol: Tolerances, e: CliError) -> Outcome {
    let body = json!({ "error": { "kind": e.kind(), "message": e.message() } });
    let value = serde_json::to_value(Report::new(command, cli.seed, tol, body)).expect("reports serialize");
    Outcome { code: e.exit_code(), stdout: to_json(&value), stderr: format!("{command}: {}\n", e.message()) }
}

fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

type CmdResult = Result<(Value, i32), CliError>;

fn ok<T: Serialize>(body: T) -> CmdResult {
    Ok((serde_json::to_value(body).expect("bodies serialize"), EXIT_OK))
}

fn read_input(ctx: &Ctx) -> Result<(String, &Path), CliError> {
    let path = ctx.input.as_deref().ok_or_else(|| CliError::Parse("--input is required".into()))?;
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
    Ok((text, path))
}

fn parse<T: serde::de::DeserializeOwned>(ctx: &Ctx) -> Result<T, CliError> {
    let (text, path) = read_input(ctx)?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

struct Loaded {
    file: AlgebraFile,
    algebra: Algebra,
    chars: CharacterSpace,
}

fn load_algebra(ctx: &Ctx) -> Result<Loaded, CliError> {
    let file: AlgebraFile = parse(ctx)?;
    let algebra = Algebra::validate_with(&file.raw(), ctx.tol)?;
    let chars = spectrum::characters_with(&algebra, CharacterOptions { seed: ctx.seed, ..Default::default() })?;
    Ok(Loaded { file, algebra, chars })
}

fn element_pairs(x: &Element) -> Vec<Pair> {
    x.as_slice().iter().map(|&z| to_pair(z)).collect()
}

fn cmd_validate(ctx: &Ctx) -> CmdResult {
    let file: AlgebraFile = parse(ctx)?;
    let a = Algebra::validate_with(&file.raw(), ctx.tol)?;
    let involution = match &file.involution {
        Some(raw) => Some(json!({ "residual": Involution::from_raw(&a, raw)?.residual() })),
        None => None,
    };
    ok(json!({
        "dim": a.dim(),
        "basis_names": a.basis_names(),
        "certificate": a.certificate(),
        "max_abs_structure_constant": a.max_abs_c(),
        "eps_assoc": a.eps_assoc(),
        "eps_char": a.eps_char(),
        "involution": involution,
    }))
}

fn cmd_characters(ctx: &Ctx) -> CmdResult {
    let l = load_algebra(ctx)?;
    let rad = spectrum::radical(&l.algebra, &l.chars)?;
    ok(CharacterTable::new(&l.chars, rad.dim()))
}

fn cmd_radical(ctx: &Ctx) -> CmdResult {
    let l = load_algebra(ctx)?;
    let a = &l.algebra;
    let rad = spectrum::radical(a, &l.chars)?;
    let mut exponents = Vec::new();
    let mut worst: f64 = 0.0;
    for x in rad.vectors() {
        let nil = spectrum::is_nilpotent(a, &x)?;
        if !nil.nilpotent {
            return Err(CliError::Invariant(format!("radical vector {:?} is not nilpotent", element_pairs(&x))));
        }
        exponents.push(nil.exponent);
        worst = worst.max(a.power(&x, a.dim() as u32)?.max_norm());
    }
    let basis: Vec<_> = rad.vectors().iter().map(element_pairs).collect();
    ok(json!({
        "radical_dim": rad.dim(),
        "basis": basis,
        "nilpotency_exponents": exponents,
        "worst_power_residual": worst,
        "characters": l.chars.len(),
    }))
}

fn required<'a, T>(v: &'a Option<T>, key: &str) -> Result<&'a T, CliError> {
    v.as_ref().ok_or_else(|| CliError::Parse(format!("input is missing the {key:?} key")))
}

fn cmd_transform(ctx: &Ctx) -> CmdResult {
    let l = load_algebra(ctx)?;
    let a = &l.algebra;
    let x = Element::new(required(&l.file.element, "element")?.iter().map(from_pair).collect());
    let t = spectrum::gelfand_transform(a, &l.chars, &x)?;
    let nil = spectrum::is_nilpotent(a, &x)?;
    let zero = linalg::max_abs(&t) <= spectrum::transform_zero_tolerance(a, &x);
    if nil.nilpotent != zero {
        return Err(CliError::Invariant(format!("is_nilpotent = {} but transform zero = {zero}", nil.nilpotent)));
    }
    ok(json!({
        "element": element_pairs(&x),
        "transform": t.iter().map(|&z| to_pair(z)).collect::<Vec<_>>(),
        "nilpotent": nil.nilpotent,
        "nilpotency_exponent": nil.exponent,
    }))
}

fn cmd_interpolate(ctx: &Ctx) -> CmdResult {
    let l = load_algebra(ctx)?;
    let a = &l.algebra;
    let f: Vec<_> = required(&l.file.function, "function")?.iter().map(from_pair).collect();
    let w = spectrum::interpolate(a, &l.chars, &f)?;
    let t = spectrum::gelfand_transform(a, &l.chars, &w)?;
    let err = t.iter().zip(&f).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    ok(json!({
        "function": f.iter().map(|&z| to_pair(z)).collect::<Vec<_>>(),
        "element": element_pairs(&w),
        "max_error": err,
    }))
}

fn cmd_norms(ctx: &Ctx, samples: usize) -> CmdResult {
    let l = load_algebra(ctx)?;
    let a = &l.algebra;
    let mut blocks = Vec::new();
    for kind in NormKind::ALL {
        let norm = match (kind, &l.file.weights) {
            (NormKind::UserWeightedL1, Some(w)) => AlgebraNorm::weighted_l1(a, w.clone())?,
            _ => AlgebraNorm::of_kind(kind, a, &l.chars)?,
        };
        let rep = norms::verify_contraction_with(a, &norm, &l.chars, samples, ctx.seed, ctx.exec)?;
        let hom = norms::homomorphism_norm_with(a, &norm, &l.chars, samples, ctx.seed, ctx.exec)?;
        if (hom - 1.0).abs() > 1e-9 {
            return Err(CliError::Invariant(format!("{} homomorphism norm is {hom}", kind.name())));
        }
        blocks.push(NormBlock {
            norm: kind,
            worst_contraction_ratio: rep.worst_contraction_ratio,
            hom_norm: hom,
            samples,
            seed: ctx.seed,
        });
    }
    ok(json!({ "norms": blocks }))
}

fn cmd_involution(ctx: &Ctx) -> CmdResult {
    let l = load_algebra(ctx)?;
    let a = &l.algebra;
    let s = Involution::from_raw(a, required(&l.file.involution, "involution")?)?;
    let mut rows = Vec::new();
    for (i, ch) in l.chars.characters().iter().enumerate() {
        let cc = involution::conjugate_character(a, &s, ch)?;
        let j = l
            .chars
            .position(&cc.character)
            .ok_or_else(|| CliError::Invariant(format!("conjugate of character {i} is not in the spectrum")))?;
        rows.push(json!({ "character": i, "conjugate": j, "fixed": cc.equal, "residual": cc.residual }));
    }
    let span = involution::radical_selfadjoint_span_check(a, &s, &l.chars)?;
    ok(json!({
        "residual": s.residual(),
        "characters": l.chars.len(),
        "conjugation": rows,
        "radical_span": span,
    }))
}

fn cmd_operator(ctx: &Ctx) -> CmdResult {
    let raw: RawOperatorModel = parse(ctx)?;
    let d = raw.dim;
    let space = InnerProductSpace::new(operator::matrix_from_pairs(&raw.gram, d)?)?;
    let gens = raw.generators.iter().map(|g| operator::matrix_from_pairs(g, d)).collect::<Result<Vec<_>, _>>()?;
    let opalg = operator::generate_star_subalgebra(&space, &gens)?;
    let iso = operator::verify_gelfand_isomorphism(&opalg, ctx.seed)?;
    let m = spectrum::characters_with(opalg.algebra(), CharacterOptions { seed: ctx.seed, ..Default::default() })?;
    let star_adjoint: f64 = gens
        .iter()
        .map(|g| {
            operator::adjoint(&space, g).map(|t| {
                operator::adjoint_identity_residual(&space, g, &t)
                    / operator::adjoint_residual_scale(&space, g).max(1.0)
            })
        })
        .collect::<Result<Vec<f64>, _>>()?
        .into_iter()
        .fold(0.0, f64::max);
    ok(json!({
        "space_dim": d,
        "gram_condition": space.condition(),
        "algebra_dim": opalg.dim(),
        "closure_residual": opalg.closure_residual(),
        "generator_adjoint_residual": star_adjoint,
        "isomorphism": iso,
        "character_table": CharacterTable::new(&m, iso.radical_dim),
    }))
}

fn cmd_group(ctx: &Ctx, builtin: Option<BuiltinGroup>) -> CmdResult {
    let input = match builtin {
        Some(_) if ctx.input.is_some() => {
            return Err(CliError::Parse("--builtin and --input are mutually exclusive".into()));
        }
        Some(BuiltinGroup::S3) => return center_report(ctx, &groups::s3()),
        Some(BuiltinGroup::D4) => return center_report(ctx, &groups::d4()),
        Some(BuiltinGroup::Q8) => return center_report(ctx, &groups::q8()),
        None => parse::<GroupInput>(ctx)?,
    };
    match input {
        GroupInput::Abelian { abelian } => {
            let g = FiniteAbelianGroup::new(abelian.clone())?;
            let res = group::abelian_characters(&g, ctx.seed)?;
            let rad = spectrum::radical(&res.algebra, &res.characters)?;
            let mut body = json!({
                "kind": "abelian",
                "invariant_factors": abelian,
                "order": g.order(),
                "character_table": CharacterTable::new(&res.characters, rad.dim()),
                "worst_modulus_residual": res.worst_modulus_residual,
                "worst_order_residual": res.worst_order_residual,
            });
            if abelian.len() == 1 {
                let rows: Vec<Vec<_>> = res.characters.characters().iter().map(|c| c.values().to_vec()).collect();
                let err = verify::match_rows(&rows, &verify::dft_matrix(g.order()))
                    .ok_or_else(|| CliError::Invariant("DFT row matching failed".into()))?;
                body["dft_max_error"] = json!(err);
            }
            ok(body)
        }
        GroupInput::General { cayley, identity } => center_report(ctx, &FiniteGroup::new(cayley, identity)?),
    }
}

fn center_report(ctx: &Ctx, g: &FiniteGroup) -> CmdResult {
    let (a, _, classes) = group::center_algebra(g)?;
    let m = spectrum::characters_with(&a, CharacterOptions { seed: ctx.seed, ..Default::default() })?;
    let rad = spectrum::radical(&a, &m)?;
    if m.len() != classes.len() {
        return Err(CliError::Invariant(format!("{} characters for {} classes", m.len(), classes.len())));
    }
    ok(json!({
        "kind": "center",
        "order": g.order(),
        "abelian": g.is_abelian(),
        "class_count": classes.len(),
        "classes": classes.classes,
        "character_table": CharacterTable::new(&m, rad.dim()),
    }))
}

fn cmd_verify_all(ctx: &Ctx) -> CmdResult {
    let report = verify::verify_all(&VerifyConfig { seed: ctx.seed, tol: ctx.tol, exec: ctx.exec });
    let code = if report.pass { EXIT_OK } else { EXIT_INVARIANT };
    let mut v = serde_json::to_value(&report).expect("reports serialize");
    // the envelope supplies these
    if let Value::Object(map) = &mut v {
        for key in ["version", "command", "seed", "tolerances"] {
            map.remove(key);
        }
    }
    Ok((v, code))
}

fn fmt_num(v: &Value) -> String {
    match v {
        Value::Number(n) => match n.as_f64() {
            Some(f) if n.is_f64() => format!("{f:.6e}"),
            _ => n.to_string(),
        },
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn fmt_complex(v: &Value) -> Option<String> {
    let arr = v.as_array()?;
    if arr.len() != 2 || !arr.iter().all(Value::is_number) {
        return None;
    }
    let (re, im) = (arr[0].as_f64()?, arr[1].as_f64()?);
    Some(format!("{re:+.6}{im:+.6}i"))
}

fn render_character_rows(out: &mut String, table: &Value) {
    let chars = table["characters"].as_array().cloned().unwrap_or_default();
    let _ = writeln!(
        out,
        "characters: {}  radical_dim: {}  residual: {}",
        fmt_num(&table["count"]),
        fmt_num(&table["radical_dim"]),
        fmt_num(&table["residual"])
    );
    for (i, row) in chars.iter().enumerate() {
        let cells: Vec<String> =
            row.as_array().into_iter().flatten().map(|z| fmt_complex(z).unwrap_or_else(|| fmt_num(z))).collect();
        let _ = writeln!(out, "  phi_{i:<3} {}", cells.join("  "));
    }
}

fn render_generic(out: &mut String, prefix: &str, v: &Value) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                render_generic(out, &key, x);
            }
        }
        Value::Array(items) => {
            if let Some(cells) = items.iter().map(fmt_complex).collect::<Option<Vec<_>>>().filter(|c| !c.is_empty()) {
                let _ = writeln!(out, "{prefix:<32} {}", cells.join("  "));
            } else if items.iter().all(|x| !x.is_object() && !x.is_array()) {
                let cells: Vec<String> = items.iter().map(fmt_num).collect();
                let _ = writeln!(out, "{prefix:<32} [{}]", cells.join(", "));
            } else {
                for (i, x) in items.iter().enumerate() {
                    render_generic(out, &format!("{prefix}[{i}]"), x);
                }
            }
        }
        other => {
            let _ = writeln!(out, "{prefix:<32} {}", fmt_num(other));
        }
    }
}

/// Plain-text rendering; same content as the JSON report.
pub fn render_table(command: &str, v: &Value) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "gelfand {}  {}  seed {:#x}",
        fmt_num(&v["version"]),
        command,
        v["seed"].as_u64().unwrap_or(DEFAULT_SEED)
    );
    if v.get("error").is_some() {
        render_generic(&mut out, "error", &v["error"]);
        return out;
    }
    match command {
        "verify-all" => {
            for s in v["suites"].as_array().into_iter().flatten() {
                let _ = writeln!(
                    out,
                    "{:<26} {}  cases {:>4}  failures {:>3}  worst {}",
                    s["name"].as_str().unwrap_or(""),
                    if s["pass"].as_bool() == Some(true) { "PASS" } else { "FAIL" },
                    fmt_num(&s["cases"]),
                    fmt_num(&s["failures"]),
                    fmt_num(&s["worst_residual"]),
                );
                for c in s["items"].as_array().into_iter().flatten().filter(|c| c["pass"].as_bool() != Some(true)) {
                    let _ = writeln!(
                        out,
                        "    {}: {}",
                        c["item"].as_str().unwrap_or(""),
                        c["detail"].as_str().unwrap_or("")
                    );
                }
            }
            let _ = writeln!(out, "overall {}", if v["pass"].as_bool() == Some(true) { "PASS" } else { "FAIL" });
        }
        "characters" => render_character_rows(&mut out, v),
        "group" | "operator" => {
            let mut rest = v.clone();
            if let Value::Object(map) = &mut rest {
                for key in ["version", "command", "seed", "tolerances", "character_table"] {
                    map.remove(key);
                }
            }
            render_generic(&mut out, "", &rest);
            render_character_rows(&mut out, &v["character_table"]);
        }
        "norms" => {
            let _ = writeln!(out, "{:<24} {:>22} {:>22} {:>8}", "norm", "worst ratio", "hom norm", "samples");
            for b in v["norms"].as_array().into_iter().flatten() {
                let _ = writeln!(
                    out,
                    "{:<24} {:>22.15} {:>22.15} {:>8}",
                    b["norm"].as_str().unwrap_or(""),
                    b["worst_contraction_ratio"].as_f64().unwrap_or(f64::NAN),
                    b["hom_norm"].as_f64().unwrap_or(f64::NAN),
                    fmt_num(&b["samples"]),
                );
            }
        }
        _ => {
            let mut rest = v.clone();
            if let Value::Object(map) = &mut rest {
                for key in ["version", "command", "seed", "tolerances"] {
                    map.remove(key);
                }
            }
            render_generic(&mut out, "", &rest);
        }
    }
    out
}

/// Parses arguments, runs, and returns the outcome; clap usage errors map to exit 2.
pub fn run_from_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INVALID,
            };
            let text = e.render().to_string();
            if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_accept_hex_and_decimal() {
        assert_eq!(parse_seed("0x5EED").unwrap(), 0x5EED);
        assert_eq!(parse_seed("24301").unwrap(), 24301);
        assert!(parse_seed("seed").is_err());
    }

    #[test]
    fn missing_input_is_a_parse_error() {
        let out = run_from_args(["gelfand", "characters"]);
        assert_eq!(out.code, EXIT_INVALID);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["error"]["kind"], "parse");
        assert_eq!(v["seed"], 0x5EED);
    }

    #[test]
    fn bad_tolerance_is_rejected() {
        assert_eq!(run_from_args(["gelfand", "--tol", "-1", "verify-all"]).code, EXIT_INVALID);
    }

    #[test]
    fn builtin_group_center() {
        let out = run_from_args(["gelfand", "group", "--builtin", "q8"]);
        assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["class_count"], 5);
        assert_eq!(v["character_table"]["count"], 5);
    }
}

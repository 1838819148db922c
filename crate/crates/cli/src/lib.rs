//! Command-line front end. `run` parses arguments, executes one command and
//! returns the exit code: 0 when the verdict holds, 1 when it fails (with a
//! residual report), 2 on usage or structural errors.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use pcoho_core::algebra::{check_map, validate_poisson, validate_representation, MapKind, MapTarget};
use pcoho_core::cochain::{ComplexConfig, DEFAULT_MAX_DEGREE};
use pcoho_core::cohomology::{cohomology_with_config, CohomologyReport};
use pcoho_core::deformation::{
    equivalence_check, formal_deformation_check, infinitesimal, linear_deformation_check, nijenhuis_check,
    operator_cohomology_with_config, rigidity_probe, FormalDeformation, Obstruction, RigidityConfig,
    RigidityOutcome,
};
use pcoho_core::extension::{
    build_split_extension, build_twisted_extension, compat_report_aut, compat_report_der, extract_cocycle,
    inducible_aut, inducible_der, wells_aut, wells_der, AbelianExtension, AutPair, DerPair, Inducibility,
    WellsClass,
};
use pcoho_core::io::{self, Document, ParseOptions, Payload};
use pcoho_core::matrix::{format_scalar, is_zero_vec, parse_scalar, Scalar};
use pcoho_core::operators::check_operator;
use pcoho_core::prototwilled::{induced_rep, is_deformation_map, semiclassical, twist_by, ProtoTwilled, Summand};
use pcoho_core::{Error, Matrix, PoissonAlgebra, Representation, ValidationReport};

pub const MAX_DEGREE_ENV: &str = "PCOHO_MAX_DEGREE";

#[derive(Parser, Debug)]
#[command(name = "pcoho", version, about = "Exact cohomology and deformation-map computations for Poisson algebras")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Warn about unknown fields instead of rejecting them.
    #[arg(long, global = true)]
    lenient: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate documents.
    #[command(subcommand)]
    Check(CheckCmd),
    /// FGV cohomology of an algebra with coefficients in a representation.
    Cohomology {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        rep: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
    },
    /// Build abelian extensions or extract their cocycles.
    #[command(subcommand)]
    Extension(ExtensionCmd),
    /// Wells class of a compatible pair.
    Wells {
        which: Which,
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Decide whether a pair is induced by an automorphism or derivation of the extension.
    Inducible {
        which: Which,
        #[command(flatten)]
        pair: PairArgs,
        /// Write the lift as a map document.
        #[arg(long)]
        emit_lift: Option<PathBuf>,
    },
    /// Deformation maps in a proto-twilled Poisson algebra.
    Defmap {
        action: DefmapAction,
        #[arg(long)]
        prototwilled: PathBuf,
        #[arg(long)]
        map: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
    },
    /// Operator identities checked directly and through graphs.
    #[command(subcommand)]
    Operator(OperatorCmd),
    /// Deformations of a deformation map.
    #[command(subcommand)]
    Deform(DeformCmd),
    /// Poisson structure from the first-order term of a deformation of a commutative split algebra.
    Semiclassical {
        /// Proto-twilled document with zero brackets.
        #[arg(long)]
        commutative: PathBuf,
        /// Algebra document whose product is the first-order term (bracket zero).
        #[arg(long)]
        order1: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum CheckCmd {
    /// Poisson algebra axioms.
    Algebra { files: Vec<PathBuf> },
    /// Representation axioms.
    Rep {
        #[arg(long)]
        algebra: PathBuf,
        files: Vec<PathBuf>,
    },
    /// Homomorphism, automorphism or derivation property of a map.
    Map {
        #[arg(long, value_enum)]
        kind: MapKindArg,
        #[arg(long)]
        source: PathBuf,
        /// Target algebra (homomorphisms, automorphisms).
        #[arg(long)]
        target: Option<PathBuf>,
        /// Target representation (derivations).
        #[arg(long)]
        module: Option<PathBuf>,
        files: Vec<PathBuf>,
    },
    /// Assemble and classify a proto-twilled structure.
    Prototwilled { files: Vec<PathBuf> },
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum MapKindArg {
    Hom,
    Auto,
    Derivation,
}

#[derive(Subcommand, Debug)]
enum ExtensionCmd {
    /// Cocycle pair of an extension with respect to a section.
    Extract {
        #[arg(long)]
        extension: PathBuf,
        /// Map document holding the section `s`; canonical section by default.
        #[arg(long)]
        section: Option<PathBuf>,
    },
    /// Split extension `P ⊕ V`.
    BuildSplit {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        rep: PathBuf,
    },
    /// Extension twisted by a 2-cocycle pair.
    BuildTwisted {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        rep: PathBuf,
        #[arg(long)]
        pair: PathBuf,
    },
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Which {
    Aut,
    Der,
}

#[derive(Args, Debug)]
struct PairArgs {
    #[arg(long)]
    extension: PathBuf,
    /// Map document with `beta`, `alpha` (aut) or `dV`, `dP` (der).
    #[arg(long)]
    pair: PathBuf,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum DefmapAction {
    Check,
    Induced,
    Twist,
    Cohomology,
}

#[derive(Subcommand, Debug)]
enum OperatorCmd {
    Check {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        map: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum DeformCmd {
    /// Whether `r + t r₁` is a deformation map for all `t`.
    Linear {
        #[arg(long)]
        prototwilled: PathBuf,
        #[arg(long)]
        map: PathBuf,
        /// Map document holding `r1`.
        #[arg(long)]
        r1: PathBuf,
    },
    /// Order-by-order identities of a formal deformation.
    Formal {
        #[arg(long)]
        prototwilled: PathBuf,
        #[arg(long)]
        deformation: PathBuf,
    },
    /// Nijenhuis property of an element `x₀ ∈ P₁`.
    Nijenhuis {
        #[arg(long)]
        prototwilled: PathBuf,
        #[arg(long)]
        map: PathBuf,
        /// Comma-separated rationals.
        #[arg(long, allow_hyphen_values = true)]
        element: String,
    },
    /// Equivalence of two deformations through `x₀`.
    Equivalence {
        #[arg(long)]
        prototwilled: PathBuf,
        #[arg(long)]
        deformation: PathBuf,
        #[arg(long)]
        other: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        element: String,
    },
    /// Remove the lowest terms of a deformation by Nijenhuis equivalences.
    Rigidity {
        #[arg(long)]
        prototwilled: PathBuf,
        #[arg(long)]
        deformation: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_steps: usize,
    },
}

/// Result of a command: verdict plus the two renderings.
struct Outcome {
    ok: bool,
    text: String,
    json: Value,
}

impl Outcome {
    fn new(ok: bool, text: String, json: Value) -> Self {
        Outcome { ok, text, json }
    }
}

enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type CmdResult = std::result::Result<Outcome, Failure>;

/// Runs one command; writes the report to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    2
                }
            };
        }
    };
    let opts = ParseOptions { lenient: cli.lenient };
    let mut ctx = Ctx { opts, warnings: Vec::new() };
    let result = ctx.dispatch(&cli.command);
    for w in &ctx.warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    match result {
        Ok(o) => {
            emit(out, cli.format, &o.text, &with_ok(o.json, o.ok));
            if o.ok {
                0
            } else {
                1
            }
        }
        Err(Failure::Core(Error::Axioms { what, report })) => {
            let text = format!("invalid {what}\n{report}");
            emit(out, cli.format, &text, &json!({"ok": false, "invalid": what, "report": io::report_json(&report)}));
            1
        }
        Err(f) => {
            let (kind, msg) = match f {
                Failure::Usage(m) => ("usage", m),
                Failure::Core(e) => (error_kind(&e), e.to_string()),
            };
            let _ = writeln!(err, "error: {msg}");
            if cli.format == Format::Json {
                let _ = write!(out, "{}", io::to_pretty(&json!({"ok": false, "error": kind, "message": msg})));
            }
            2
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Shape(_) => "shape",
        Error::Capacity(_) => "capacity",
        Error::Axioms { .. } => "axioms",
        Error::Precondition(_) => "precondition",
        Error::Bidegree { .. } => "bidegree",
        Error::Parse(_) => "parse",
        Error::Internal(_) => "internal",
    }
}

fn with_ok(mut v: Value, ok: bool) -> Value {
    if let Value::Object(m) = &mut v {
        m.insert("ok".into(), Value::Bool(ok));
    }
    v
}

fn emit(out: &mut dyn Write, format: Format, text: &str, v: &Value) {
    let _ = match format {
        Format::Text => {
            if text.ends_with('\n') {
                write!(out, "{text}")
            } else {
                writeln!(out, "{text}")
            }
        }
        Format::Json => write!(out, "{}", io::to_pretty(v)),
    };
}

fn scalars(v: &[Scalar]) -> String {
    v.iter().map(format_scalar).collect::<Vec<_>>().join(", ")
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

/// Degree cap: `PCOHO_MAX_DEGREE` if set, else the library default.
fn complex_config(requested: usize) -> std::result::Result<ComplexConfig, Failure> {
    let cap = match std::env::var(MAX_DEGREE_ENV) {
        Ok(s) => s
            .trim()
            .parse::<usize>()
            .map_err(|_| Failure::Usage(format!("{MAX_DEGREE_ENV} must be a non-negative integer, got {s:?}")))?,
        Err(_) => DEFAULT_MAX_DEGREE,
    };
    if requested > cap {
        return Err(Failure::Usage(format!(
            "--max-degree {requested} exceeds the degree cap {cap} (set {MAX_DEGREE_ENV} to raise it)"
        )));
    }
    Ok(ComplexConfig::with_max_degree(cap)?)
}

struct Ctx {
    opts: ParseOptions,
    warnings: Vec<String>,
}

impl Ctx {
    fn doc(&mut self, path: &Path) -> std::result::Result<Document, Failure> {
        let (doc, w) = io::read_document(path, self.opts)?;
        self.warnings.extend(w);
        Ok(doc)
    }

    fn algebra(&mut self, path: &Path) -> std::result::Result<PoissonAlgebra, Failure> {
        match self.doc(path)?.payload {
            Payload::Algebra(p) => Ok(p),
            other => Err(wrong_kind(path, "algebra", other.kind().label())),
        }
    }

    /// An algebra that must satisfy the axioms.
    fn valid_algebra(&mut self, path: &Path) -> std::result::Result<PoissonAlgebra, Failure> {
        let p = self.algebra(path)?;
        let rep = validate_poisson(&p);
        if !rep.ok() {
            return Err(Error::axioms(format!("Poisson algebra {}", path.display()), rep).into());
        }
        Ok(p)
    }

    fn rep(&mut self, path: &Path, p: &PoissonAlgebra) -> std::result::Result<Representation, Failure> {
        let v = match self.doc(path)?.payload {
            Payload::Representation(v) => v,
            other => return Err(wrong_kind(path, "representation", other.kind().label())),
        };
        if v.mu().len() != p.dim() {
            return Err(Error::Shape(format!("{}: representation is for a {}-dimensional algebra", path.display(), v.mu().len())).into());
        }
        let report = validate_representation(p, &v)?;
        if !report.ok() {
            return Err(Error::axioms(format!("representation {}", path.display()), report).into());
        }
        Ok(v)
    }

    fn maps(&mut self, path: &Path) -> std::result::Result<BTreeMap<String, Matrix>, Failure> {
        match self.doc(path)?.payload {
            Payload::Map(m) => Ok(m),
            other => Err(wrong_kind(path, "map", other.kind().label())),
        }
    }

    /// The entry named `name`, or the only entry of the document.
    fn map(&mut self, path: &Path, name: &str) -> std::result::Result<Matrix, Failure> {
        let mut maps = self.maps(path)?;
        if let Some(m) = maps.remove(name) {
            return Ok(m);
        }
        if maps.len() == 1 {
            return Ok(maps.into_values().next().expect("one entry"));
        }
        Err(Error::Parse(format!("{}: expected a map named {name:?}", path.display())).into())
    }

    fn named(&mut self, path: &Path, names: [&str; 2]) -> std::result::Result<(Matrix, Matrix), Failure> {
        let mut maps = self.maps(path)?;
        let mut take = |n: &str| {
            maps.remove(n).ok_or_else(|| Failure::Core(Error::Parse(format!("{}: missing map {n:?}", path.display()))))
        };
        Ok((take(names[0])?, take(names[1])?))
    }

    fn extension(&mut self, path: &Path) -> std::result::Result<AbelianExtension, Failure> {
        match self.doc(path)?.payload {
            Payload::Extension(e) => Ok(e),
            other => Err(wrong_kind(path, "extension", other.kind().label())),
        }
    }

    fn prototwilled(&mut self, path: &Path) -> std::result::Result<ProtoTwilled, Failure> {
        match self.doc(path)?.payload {
            Payload::ProtoTwilled(m) => Ok(ProtoTwilled::assemble(m)?),
            other => Err(wrong_kind(path, "prototwilled", other.kind().label())),
        }
    }

    fn deformation(&mut self, path: &Path) -> std::result::Result<FormalDeformation, Failure> {
        match self.doc(path)?.payload {
            Payload::Deformation(d) => Ok(d),
            other => Err(wrong_kind(path, "deformation", other.kind().label())),
        }
    }

    fn dispatch(&mut self, cmd: &Command) -> CmdResult {
        match cmd {
            Command::Check(c) => self.check(c),
            Command::Cohomology { algebra, rep, max_degree } => {
                let config = complex_config(*max_degree)?;
                let p = self.valid_algebra(algebra)?;
                let v = self.rep(rep, &p)?;
                let report = cohomology_with_config(&p, &v, *max_degree, config)?;
                Ok(cohomology_outcome(&report))
            }
            Command::Extension(c) => self.extension_cmd(c),
            Command::Wells { which, pair } => self.wells(*which, pair),
            Command::Inducible { which, pair, emit_lift } => self.inducible(*which, pair, emit_lift.as_deref()),
            Command::Defmap { action, prototwilled, map, max_degree } => {
                self.defmap(*action, prototwilled, map, *max_degree)
            }
            Command::Operator(OperatorCmd::Check { spec, map }) => {
                let spec = match self.doc(spec)?.payload {
                    Payload::OperatorSpec(s) => s,
                    other => return Err(wrong_kind(spec, "operator-spec", other.kind().label())),
                };
                let r = self.map(map, "r")?;
                let v = check_operator(&spec, &r)?;
                let text = format!(
                    "{}: direct {}, via graph {}\n{}",
                    v.kind.label(),
                    verdict(v.direct.ok()),
                    verdict(v.via_graph.ok()),
                    if v.direct.ok() { String::new() } else { v.direct.to_string() }
                );
                Ok(Outcome::new(
                    v.ok(),
                    text,
                    json!({
                        "kind": v.kind.label(),
                        "direct": io::report_json(&v.direct),
                        "viaGraph": io::report_json(&v.via_graph),
                    }),
                ))
            }
            Command::Deform(c) => self.deform(c),
            Command::Semiclassical { commutative, order1 } => {
                let ptc = self.prototwilled(commutative)?;
                let term = self.algebra(order1)?;
                if !is_zero_vec(term.bracket().data()) {
                    return Err(Failure::Usage("--order1: bracket must be zero; the product holds the first-order term".into()));
                }
                let pt = semiclassical(&ptc, term.mult())?;
                let doc = Document::new(Payload::ProtoTwilled(pt.maps().clone()));
                Ok(Outcome::new(
                    true,
                    format!("Poisson: ok, class {}\n{}", pt.class().label(), io::serialize(&doc)),
                    json!({"class": pt.class().label(), "result": io::document_json(&doc)}),
                ))
            }
        }
    }

    fn check(&mut self, c: &CheckCmd) -> CmdResult {
        let mut text = String::new();
        let mut entries = Vec::new();
        let mut all_ok = true;
        let mut record = |path: &Path, rep: &ValidationReport, extra: Value| {
            all_ok &= rep.ok();
            let _ = write!(text, "{}: {}", path.display(), rep);
            match extra.get("class").and_then(Value::as_str) {
                Some(c) => {
                    let _ = writeln!(text, " (class {c})");
                }
                None if rep.ok() => text.push('\n'),
                None => {}
            }
            let mut e = json!({"file": path.display().to_string(), "report": io::report_json(rep)});
            if let (Value::Object(m), Value::Object(x)) = (&mut e, extra) {
                m.extend(x);
            }
            entries.push(e);
        };
        match c {
            CheckCmd::Algebra { files } => {
                require_files(files)?;
                for f in files {
                    let p = self.algebra(f)?;
                    record(f, &validate_poisson(&p), json!({}));
                }
            }
            CheckCmd::Rep { algebra, files } => {
                require_files(files)?;
                let p = self.valid_algebra(algebra)?;
                for f in files {
                    let v = match self.doc(f)?.payload {
                        Payload::Representation(v) => v,
                        other => return Err(wrong_kind(f, "representation", other.kind().label())),
                    };
                    record(f, &validate_representation(&p, &v)?, json!({}));
                }
            }
            CheckCmd::Map { kind, source, target, module, files } => {
                require_files(files)?;
                let src = self.valid_algebra(source)?;
                let (mk, tgt_alg, tgt_mod) = match kind {
                    MapKindArg::Hom | MapKindArg::Auto => {
                        let t = target.as_ref().ok_or_else(|| Failure::Usage("--target is required".into()))?;
                        let k = if matches!(kind, MapKindArg::Hom) { MapKind::PoissonHom } else { MapKind::PoissonAuto };
                        (k, Some(self.valid_algebra(t)?), None)
                    }
                    MapKindArg::Derivation => {
                        let m = module.as_ref().ok_or_else(|| Failure::Usage("--module is required".into()))?;
                        (MapKind::PoissonDerivation, None, Some(self.rep(m, &src)?))
                    }
                };
                for f in files {
                    let m = self.map(f, "f")?;
                    let tgt = match (&tgt_alg, &tgt_mod) {
                        (Some(a), _) => MapTarget::Algebra(a),
                        (_, Some(v)) => MapTarget::Module(v),
                        _ => unreachable!(),
                    };
                    record(f, &check_map(mk, &src, tgt, &m)?, json!({}));
                }
            }
            CheckCmd::Prototwilled { files } => {
                require_files(files)?;
                for f in files {
                    let maps = match self.doc(f)?.payload {
                        Payload::ProtoTwilled(m) => m,
                        other => return Err(wrong_kind(f, "prototwilled", other.kind().label())),
                    };
                    match ProtoTwilled::assemble(maps) {
                        Ok(pt) => {
                            let extra = json!({
                                "class": pt.class().label(),
                                "p1Closure": io::report_json(&pt.closure_report(Summand::P1)),
                                "p2Closure": io::report_json(&pt.closure_report(Summand::P2)),
                            });
                            record(f, &ValidationReport::new(), extra);
                        }
                        Err(Error::Axioms { report, .. }) => record(f, &report, json!({})),
                        Err(e) => return Err(e.into()),
                    }
                }
            }
        }
        Ok(Outcome::new(all_ok, text, json!({"files": entries})))
    }

    fn extension_cmd(&mut self, c: &ExtensionCmd) -> CmdResult {
        let doc = match c {
            ExtensionCmd::Extract { extension, section } => {
                let ext = self.extension(extension)?;
                let s = match section {
                    Some(path) => {
                        let m = self.map(path, "s")?;
                        ext.section(m)?
                    }
                    None => ext.canonical_section(),
                };
                Document::new(Payload::CochainPair(extract_cocycle(&ext, &s)?))
            }
            ExtensionCmd::BuildSplit { algebra, rep } => {
                let p = self.valid_algebra(algebra)?;
                let v = self.rep(rep, &p)?;
                Document::new(Payload::Extension(build_split_extension(&p, &v)?.0))
            }
            ExtensionCmd::BuildTwisted { algebra, rep, pair } => {
                let p = self.valid_algebra(algebra)?;
                let v = self.rep(rep, &p)?;
                let c = match self.doc(pair)?.payload {
                    Payload::CochainPair(c) => c,
                    other => return Err(wrong_kind(pair, "cochain-pair", other.kind().label())),
                };
                Document::new(Payload::Extension(build_twisted_extension(&p, &v, &c)?.0))
            }
        };
        Ok(Outcome::new(true, io::serialize(&doc), json!({"document": io::document_json(&doc)})))
    }

    fn pair(&mut self, which: Which, args: &PairArgs) -> std::result::Result<(AbelianExtension, PairData), Failure> {
        let ext = self.extension(&args.extension)?;
        let pair = match which {
            Which::Aut => {
                let (beta, alpha) = self.named(&args.pair, ["beta", "alpha"])?;
                PairData::Aut(AutPair { beta, alpha })
            }
            Which::Der => {
                let (d_v, d_p) = self.named(&args.pair, ["dV", "dP"])?;
                PairData::Der(DerPair { d_v, d_p })
            }
        };
        Ok((ext, pair))
    }

    fn wells(&mut self, which: Which, args: &PairArgs) -> CmdResult {
        let (ext, pair) = self.pair(which, args)?;
        let compat = match &pair {
            PairData::Aut(p) => compat_report_aut(&ext, p)?,
            PairData::Der(p) => compat_report_der(&ext, p)?,
        };
        if !compat.ok() {
            return Ok(incompatible(&compat));
        }
        let w = match &pair {
            PairData::Aut(p) => wells_aut(&ext, p)?,
            PairData::Der(p) => wells_der(&ext, p)?,
        };
        Ok(wells_outcome(&w))
    }

    fn inducible(&mut self, which: Which, args: &PairArgs, emit: Option<&Path>) -> CmdResult {
        let (ext, pair) = self.pair(which, args)?;
        let result = match &pair {
            PairData::Aut(p) => inducible_aut(&ext, p)?,
            PairData::Der(p) => inducible_der(&ext, p)?,
        };
        match result {
            Inducibility::Incompatible(r) => Ok(incompatible(&r)),
            Inducibility::Obstructed(w) => {
                let mut o = wells_outcome(&w);
                o.text = format!("not inducible: nonzero Wells class\n{}", o.text);
                Ok(o)
            }
            Inducibility::Inducible(lift) => {
                if let Some(path) = emit {
                    let mut maps = BTreeMap::new();
                    maps.insert("lift".to_string(), lift.clone());
                    let doc = Document::new(Payload::Map(maps));
                    std::fs::write(path, io::serialize(&doc))
                        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
                }
                Ok(Outcome::new(
                    true,
                    format!("inducible; lift:\n{lift}"),
                    json!({"inducible": true, "lift": io::matrix_json(&lift)}),
                ))
            }
        }
    }

    fn defmap(&mut self, action: DefmapAction, pt_path: &Path, map: &Path, max_degree: usize) -> CmdResult {
        let pt = self.prototwilled(pt_path)?;
        let r = self.map(map, "r")?;
        match action {
            DefmapAction::Check => {
                let rep = is_deformation_map(&pt, &r)?;
                Ok(Outcome::new(rep.ok(), format!("deformation map: {rep}"), json!({"report": io::report_json(&rep)})))
            }
            DefmapAction::Induced => {
                let (alg, module) = induced_rep(&pt, &r)?;
                let a = Document::new(Payload::Algebra(alg));
                let m = Document::new(Payload::Representation(module));
                Ok(Outcome::new(
                    true,
                    format!("induced algebra:\n{}induced representation:\n{}", io::serialize(&a), io::serialize(&m)),
                    json!({"algebra": io::document_json(&a), "representation": io::document_json(&m)}),
                ))
            }
            DefmapAction::Twist => {
                let t = twist_by(&pt, &r)?;
                let p2 = t.pt.closure_report(Summand::P2);
                let doc = Document::new(Payload::ProtoTwilled(t.pt.maps().clone()));
                Ok(Outcome::new(
                    p2.ok(),
                    format!("twist class {}; P2 closed: {}\n{}", t.pt.class().label(), p2.ok(), io::serialize(&doc)),
                    json!({
                        "class": t.pt.class().label(),
                        "p2Closure": io::report_json(&p2),
                        "twist": io::document_json(&doc),
                    }),
                ))
            }
            DefmapAction::Cohomology => {
                let config = complex_config(max_degree)?;
                let report = operator_cohomology_with_config(&pt, &r, max_degree, config)?;
                Ok(cohomology_outcome(&report))
            }
        }
    }

    fn deform(&mut self, c: &DeformCmd) -> CmdResult {
        match c {
            DeformCmd::Linear { prototwilled, map, r1 } => {
                let pt = self.prototwilled(prototwilled)?;
                let r = self.map(map, "r")?;
                let r1 = self.map(r1, "r1")?;
                let rep = linear_deformation_check(&pt, &r, &r1)?;
                let mut json = json!({"report": io::report_json(&rep)});
                let mut text = format!("linear deformation: {rep}");
                if rep.ok() {
                    let inf = infinitesimal(&pt, &FormalDeformation::linear(r, r1)?)?;
                    let _ = write!(text, "\ninfinitesimal is a cocycle: {}", inf.is_cocycle());
                    json["infinitesimalCocycle"] = Value::Bool(inf.is_cocycle());
                }
                Ok(Outcome::new(rep.ok(), text, json))
            }
            DeformCmd::Formal { prototwilled, deformation } => {
                let pt = self.prototwilled(prototwilled)?;
                let d = self.deformation(deformation)?;
                let rep = formal_deformation_check(&pt, &d)?;
                Ok(Outcome::new(
                    rep.ok(),
                    format!("order {} deformation: {rep}", d.order()),
                    json!({"order": d.order(), "report": io::report_json(&rep)}),
                ))
            }
            DeformCmd::Nijenhuis { prototwilled, map, element } => {
                let pt = self.prototwilled(prototwilled)?;
                let r = self.map(map, "r")?;
                let x0 = parse_element(element)?;
                let rep = nijenhuis_check(&pt, &r, &x0)?;
                Ok(Outcome::new(
                    rep.is_nijenhuis(),
                    format!("homomorphism conditions: {}\nextra condition: {}", rep.hom, rep.extra),
                    json!({"hom": io::report_json(&rep.hom), "extra": io::report_json(&rep.extra)}),
                ))
            }
            DeformCmd::Equivalence { prototwilled, deformation, other, element } => {
                let pt = self.prototwilled(prototwilled)?;
                let a = self.deformation(deformation)?;
                let b = self.deformation(other)?;
                let x0 = parse_element(element)?;
                let rep = equivalence_check(&pt, &a, &b, &x0)?;
                Ok(Outcome::new(
                    rep.ok(),
                    format!("homomorphism conditions: {}\nintertwining: {}", rep.hom, rep.intertwine),
                    json!({
                        "hom": io::report_json(&rep.hom),
                        "intertwine": io::report_json(&rep.intertwine),
                        "higherTerms": rep.higher.iter().map(io::matrix_json).collect::<Vec<_>>(),
                    }),
                ))
            }
            DeformCmd::Rigidity { prototwilled, deformation, max_steps } => {
                let pt = self.prototwilled(prototwilled)?;
                let d = self.deformation(deformation)?;
                let config = RigidityConfig { max_steps: *max_steps, ..RigidityConfig::default() };
                let rep = rigidity_probe(&pt, &d, config)?;
                let steps: Vec<Value> = rep
                    .steps
                    .iter()
                    .map(|s| {
                        json!({
                            "order": s.order,
                            "element": io::vector_json(&s.x0),
                            "terms": s.terms_after.iter().map(io::matrix_json).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                let mut text = String::new();
                for s in &rep.steps {
                    let _ = writeln!(text, "step at order {}: x0 = [{}]", s.order, scalars(&s.x0));
                }
                let (ok, outcome) = match &rep.outcome {
                    RigidityOutcome::Trivialized => (true, json!({"result": "trivialized"})),
                    RigidityOutcome::StepLimit => (false, json!({"result": "step-limit"})),
                    RigidityOutcome::Obstructed { order, obstruction } => {
                        let detail = match obstruction {
                            Obstruction::NotCoboundary { class } => {
                                json!({"reason": "not-coboundary", "class": io::vector_json(class)})
                            }
                            Obstruction::NoNijenhuisPreimage { tried } => {
                                json!({"reason": "no-nijenhuis-preimage", "tried": tried})
                            }
                        };
                        (false, json!({"result": "obstructed", "order": order, "detail": detail}))
                    }
                };
                let _ = write!(text, "outcome: {}", outcome["result"].as_str().unwrap_or_default());
                if let Some(r) = outcome.get("detail").and_then(|d| d.get("reason")) {
                    let _ = write!(text, " at order {} ({})", outcome["order"], r.as_str().unwrap_or_default());
                }
                Ok(Outcome::new(ok, text, json!({"outcome": outcome, "steps": steps})))
            }
        }
    }
}

enum PairData {
    Aut(AutPair),
    Der(DerPair),
}

fn wrong_kind(path: &Path, want: &str, got: &str) -> Failure {
    Failure::Core(Error::Parse(format!("{}: expected a {want} document, found {got}", path.display())))
}

fn require_files(files: &[PathBuf]) -> std::result::Result<(), Failure> {
    if files.is_empty() {
        Err(Failure::Usage("no input files".into()))
    } else {
        Ok(())
    }
}

fn parse_element(s: &str) -> std::result::Result<Vec<Scalar>, Failure> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|t| parse_scalar(t.trim()).map_err(Failure::Core)).collect()
}

fn incompatible(report: &ValidationReport) -> Outcome {
    Outcome::new(
        false,
        format!("pair not in C_{{mu,rho}}\n{report}"),
        json!({"reason": "pair not in C_{mu,rho}", "report": io::report_json(report)}),
    )
}

fn wells_outcome(w: &WellsClass) -> Outcome {
    let rep = Document::new(Payload::CochainPair(w.representative.clone()));
    Outcome::new(
        w.is_zero(),
        format!("Wells class: [{}] ({})", scalars(&w.class), if w.is_zero() { "zero" } else { "nonzero" }),
        json!({
            "class": io::vector_json(&w.class),
            "zero": w.is_zero(),
            "representative": io::document_json(&rep),
        }),
    )
}

fn cohomology_outcome(r: &CohomologyReport) -> Outcome {
    let mut text = String::new();
    for d in &r.degrees {
        let _ = writeln!(
            text,
            "H^{} = {}  (cochains {}, cocycles {}, coboundaries {})",
            d.k, d.betti, d.cochain_dim, d.cocycle_dim, d.coboundary_dim
        );
    }
    Outcome::new(true, text, io::cohomology_json(r))
}

//! Command-line surface. Each subcommand parses its inputs, calls one library
//! operation and renders a [`CliReport`].

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use crate::algebra::{ColorHomLieAlgebra, GradedVector};
use crate::cochains::{cohomology_space, Connection, GradedCochain};
use crate::derivations::{candidate_degrees, outer_quotient};
use crate::error::{Error, Result};
use crate::extensions::{
    alpha_compatibility, build_extension, center_module, check_data, check_equivalence_by_b,
    check_extension_equivalence, check_sequence, default_section, equivalence_map, extract_data,
    obstruction_class, parameterize_extensions, split_solve, split_verify,
};
use crate::io::{self, AlgebraDocument, ExtensionDocument, SequenceDocument};
use crate::linalg::Matrix;
use crate::report::{Check, Report};
use crate::testkit::gen::{self, AlphaFamily, Family, GeneratorConfig, GradingChoice};

#[derive(Parser, Debug)]
#[command(name = "homcolor", about = "Exact computations with hom-Lie color algebras and their extensions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Omit the timing line so repeated runs are byte-identical.
    #[arg(long, global = true)]
    pub no_timing: bool,
    /// Write the produced document here instead of appending it to the report.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum ModuleChoice {
    Trivial,
    Center,
    #[value(name = "self")]
    SelfModule,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum FamilyChoice {
    Abelian,
    Nilpotent,
    Classical,
    Yau,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum GradingArg {
    Trivial,
    Super,
    Klein,
    ZZ2,
    Z2Scaled,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum AlphaArg {
    Identity,
    Diagonal,
    Morphism,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Grading, skew symmetry and hom-Jacobi checks for an algebra.
    Validate {
        file: PathBuf,
        /// Scan every ordered triple in the Jacobi check.
        #[arg(long)]
        full_scan: bool,
    },
    /// Yau twist by a morphism given as a matrix file.
    Twist {
        file: PathBuf,
        #[arg(long)]
        beta: PathBuf,
    },
    /// Twisted derivations, inner derivations and their quotient.
    Derive {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        k: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        degree: Option<String>,
    },
    /// Center and α-fixed center.
    Center { file: PathBuf },
    /// Dimension of a cohomology space of an algebra or of a datum's base.
    Cohomology {
        file: PathBuf,
        #[arg(long)]
        p: usize,
        #[arg(long, value_enum)]
        module: Option<ModuleChoice>,
        #[arg(long, allow_hyphen_values = true)]
        k: Option<i64>,
        /// Cochain weight; zero by default.
        #[arg(long, allow_hyphen_values = true)]
        degree: Option<String>,
    },
    /// Datum of a sequence relative to a section.
    Extract {
        file: PathBuf,
        #[arg(long)]
        section: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        k: Option<i64>,
    },
    /// Identities a datum must satisfy to build an extension.
    CheckData {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        k: Option<i64>,
    },
    /// The extension built from a datum, as a sequence document.
    BuildExt {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        k: Option<i64>,
    },
    /// Whether a shift by `b` relates two data, and the induced map of extensions.
    Equiv {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Verify a splitting `b`, or search for one when `h` is abelian.
    SplitCheck {
        file: PathBuf,
        #[arg(long)]
        b: Option<PathBuf>,
    },
    /// Obstruction class of a lift in third cohomology with values in the center.
    Obstruction {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        k: Option<i64>,
    },
    /// Extensions by an abelian `h` with the datum's action, one per class.
    Classify {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        k: Option<i64>,
    },
    /// A generated algebra document.
    Generate {
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum)]
        family: Option<FamilyChoice>,
        #[arg(long, value_enum)]
        grading: Option<GradingArg>,
        #[arg(long, value_enum)]
        alpha: Option<AlphaArg>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Twist { .. } => "twist",
            Command::Derive { .. } => "derive",
            Command::Center { .. } => "center",
            Command::Cohomology { .. } => "cohomology",
            Command::Extract { .. } => "extract",
            Command::CheckData { .. } => "check-data",
            Command::BuildExt { .. } => "build-ext",
            Command::Equiv { .. } => "equiv",
            Command::SplitCheck { .. } => "split-check",
            Command::Obstruction { .. } => "obstruction",
            Command::Classify { .. } => "classify",
            Command::Generate { .. } => "generate",
        }
    }
}

/// Outcome of one command: checks, result lines and an optional document.
#[derive(Clone, Debug, Default)]
pub struct CliReport {
    pub command: String,
    pub digest: String,
    pub checks: Report,
    pub results: Vec<(String, String)>,
    pub document: Option<String>,
    pub written: Option<PathBuf>,
    pub timing_ms: Option<u128>,
    pub error: Option<String>,
}

impl CliReport {
    fn result(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.results.push((key.into(), value.into()));
    }

    fn absorb(&mut self, r: Report) {
        self.checks.checks.extend(r.checks);
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.results.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn status(&self) -> &'static str {
        if self.error.is_some() {
            "error"
        } else if self.checks.passed() {
            "pass"
        } else {
            "fail"
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        out.push_str(&format!("inputs: sha256:{}\n", self.digest));
        for c in &self.checks.checks {
            out.push_str(&format!("check {}: {}\n", c.name, if c.passed() { "pass" } else { "FAIL" }));
            for v in c.violations.iter().take(10) {
                out.push_str(&format!("  witness {:?}: {}\n", v.location, v.message));
            }
            if c.violations.len() > 10 {
                out.push_str(&format!("  ... {} more\n", c.violations.len() - 10));
            }
            for n in &c.notes {
                out.push_str(&format!("  note: {n}\n"));
            }
        }
        for (k, v) in &self.results {
            out.push_str(&format!("{k}: {v}\n"));
        }
        if let Some(e) = &self.error {
            out.push_str(&format!("error: {e}\n"));
        }
        if let Some(p) = &self.written {
            out.push_str(&format!("wrote: {}\n", p.display()));
        }
        if let Some(t) = self.timing_ms {
            out.push_str(&format!("timing_ms: {t}\n"));
        }
        out.push_str(&format!("status: {}\n", self.status()));
        if let Some(d) = &self.document {
            out.push_str("document:\n");
            out.push_str(d);
        }
        out
    }
}

/// Exit status for a library error: 2 for input problems, 1 otherwise.
pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::Structural(_) | Error::Io(_) | Error::Grading { .. } | Error::Skew { .. } | Error::Epsilon(_) => 2,
        Error::Precondition(_) | Error::Unsupported(_) | Error::InternalConsistency(_) => 1,
    }
}

struct Inputs {
    hasher: Sha256,
}

impl Inputs {
    fn new() -> Self {
        Inputs { hasher: Sha256::new() }
    }

    fn feed(&mut self, bytes: &[u8]) {
        self.hasher.update((bytes.len() as u64).to_le_bytes());
        self.hasher.update(bytes);
    }

    fn read(&mut self, path: &Path) -> Result<String> {
        let bytes = std::fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        self.feed(&bytes);
        String::from_utf8(bytes).map_err(|_| Error::parse("", format!("{} is not UTF-8", path.display())))
    }

    fn algebra(&mut self, path: &Path) -> Result<AlgebraDocument> {
        io::parse_algebra_document(&self.read(path)?)
    }

    fn matrix(&mut self, path: &Path) -> Result<Matrix> {
        io::parse_matrix(&self.read(path)?)
    }

    fn extension(&mut self, path: &Path, k: Option<i64>) -> Result<ExtensionDocument> {
        let text = self.read(path)?;
        let mut doc = io::parse_extension(&text, path.parent())?;
        for b in &doc.referenced_bytes {
            self.hasher.update((b.len() as u64).to_le_bytes());
            self.hasher.update(b);
        }
        if let Some(k) = k {
            doc.data.k = k;
        }
        Ok(doc)
    }

    fn sequence(&mut self, path: &Path) -> Result<SequenceDocument> {
        let text = self.read(path)?;
        let doc = io::parse_sequence(&text, path.parent())?;
        for b in &doc.referenced_bytes {
            self.hasher.update((b.len() as u64).to_le_bytes());
            self.hasher.update(b);
        }
        Ok(doc)
    }

    fn digest(self) -> String {
        hex::encode(self.hasher.finalize())
    }
}

fn matrix_inline(m: &Matrix) -> String {
    let mut s = io::to_canonical_string(&io::matrix_to_value(m));
    s.pop();
    s.replace('\n', " ")
}

fn vector_inline(v: &GradedVector) -> String {
    let mut s = io::to_canonical_string(&io::vector_to_value(v));
    s.pop();
    s
}

fn cochain_inline(psi: &GradedCochain) -> String {
    let entries: Vec<String> = psi.entries().map(|(t, v)| format!("{t:?} -> {}", vector_inline(v))).collect();
    if entries.is_empty() {
        "0".into()
    } else {
        entries.join("; ")
    }
}

fn alg_module(a: &ColorHomLieAlgebra, module: ModuleChoice, k: i64) -> Result<Connection> {
    Ok(match module {
        ModuleChoice::Trivial => Connection::trivial(a),
        ModuleChoice::SelfModule => Connection::adjoint(a, k)?,
        ModuleChoice::Center => {
            let z = a.center();
            let degs = z.iter().map(|v| a.homogeneous_degree(v).expect("homogeneous center basis")).collect();
            Connection::module(a, degs, k, vec![Matrix::zeros(z.len(), z.len()); a.dim()])
        }
    })
}

fn execute(cmd: &Command, rep: &mut CliReport, inputs: &mut Inputs) -> Result<()> {
    match cmd {
        Command::Validate { file, full_scan } => {
            let doc = inputs.algebra(file)?;
            let a = &doc.algebra;
            let mut r = a.eps().validate();
            r.checks.extend(a.check_grading().checks);
            r.checks.extend(a.check_skew().checks);
            r.checks.extend(a.check_hom_jacobi_scan(*full_scan).checks);
            rep.absorb(r);
            rep.result("dim", a.dim().to_string());
            rep.result("multiplicative", if a.check_multiplicative().passed() { "yes" } else { "no" });
            rep.result("alpha_identity", if a.alpha_is_identity() { "yes" } else { "no" });
        }
        Command::Twist { file, beta } => {
            let a = inputs.algebra(file)?.algebra;
            let b = inputs.matrix(beta)?;
            let t = a.yau_twist(&b)?;
            rep.absorb(t.validate());
            rep.document = Some(io::serialize_algebra(&t));
        }
        Command::Derive { file, k, degree } => {
            let a = inputs.algebra(file)?.algebra;
            let k = k.unwrap_or(1);
            let degrees = match degree {
                Some(d) => vec![io::parse_degree(a.group(), d)?],
                None => candidate_degrees(&a),
            };
            rep.result("k", k.to_string());
            for d in degrees {
                let q = outer_quotient(&a, k, &d)?;
                rep.result(
                    format!("degree {d}"),
                    format!("dim Der = {}, dim Inn = {}, dim Out = {}", q.total.dim(), q.inner.len(), q.dim()),
                );
                for (t, b) in q.total.basis.iter().enumerate() {
                    rep.result(format!("  der[{t}]"), matrix_inline(&b.matrix));
                }
                for (t, b) in q.complement.iter().enumerate() {
                    rep.result(format!("  out[{t}]"), matrix_inline(b));
                }
            }
        }
        Command::Center { file } => {
            let a = inputs.algebra(file)?.algebra;
            let z = a.center();
            let zf = a.fixed_center();
            rep.result("dim center", z.len().to_string());
            for (t, v) in z.iter().enumerate() {
                rep.result(format!("  center[{t}]"), vector_inline(v));
            }
            rep.result("dim fixed center", zf.len().to_string());
            for (t, v) in zf.iter().enumerate() {
                rep.result(format!("  fixed[{t}]"), vector_inline(v));
            }
        }
        Command::Cohomology { file, p, module, k, degree } => {
            let is_ext = file.extension().and_then(|e| e.to_str()) == Some("ext");
            let (conn, label) = if is_ext {
                let d = inputs.extension(file, *k)?.data;
                let m = module.unwrap_or(ModuleChoice::Center);
                let conn = match m {
                    ModuleChoice::Trivial => Connection::trivial(&d.g),
                    ModuleChoice::Center => center_module(&d.g, &d.h, d.k, &d.phi)?.connection,
                    ModuleChoice::SelfModule => Connection::module(&d.g, d.h.degrees(), d.k, d.phi.clone()),
                };
                (conn, m)
            } else {
                let a = inputs.algebra(file)?.algebra;
                let m = module.unwrap_or(ModuleChoice::Trivial);
                (alg_module(&a, m, k.unwrap_or(1))?, m)
            };
            let w = match degree {
                Some(d) => io::parse_degree(conn.source.group(), d)?,
                None => conn.source.group().zero(),
            };
            let h = cohomology_space(&conn, *p, &w)?;
            rep.result("module", format!("{label:?}").to_lowercase().replace("selfmodule", "self"));
            rep.result("weight", w.to_string());
            rep.result("dim cochains", h.basis.len().to_string());
            rep.result("dim cocycles", h.cocycles.len().to_string());
            rep.result("dim coboundaries", h.coboundaries.len().to_string());
            rep.result(format!("dim H^{p}"), h.dim().to_string());
        }
        Command::Extract { file, section, k } => {
            let doc = inputs.sequence(file)?;
            let seq = &doc.sequence;
            let s = match section {
                Some(p) => inputs.matrix(p)?,
                None => default_section(seq)?,
            };
            let mut withs = seq.clone();
            withs.s = Some(s.clone());
            rep.absorb(check_sequence(&withs));
            let (data, r) = extract_data(seq, &s, k.unwrap_or(1))?;
            rep.absorb(r);
            rep.result("rho", cochain_inline(&data.rho));
            rep.document = Some(io::serialize_extension(&ExtensionDocument::inline(data)));
        }
        Command::CheckData { file, k } => {
            let d = inputs.extension(file, *k)?.data;
            rep.absorb(check_data(&d)?);
            for c in alpha_compatibility(&d).checks {
                rep.result(c.name.clone(), if c.passed() { "holds" } else { "fails" });
            }
        }
        Command::BuildExt { file, k } => {
            let d = inputs.extension(file, *k)?.data;
            let seq = build_extension(&d)?;
            rep.absorb(check_sequence(&seq));
            rep.result("dim e", seq.e.dim().to_string());
            rep.document = Some(io::serialize_sequence(&SequenceDocument::inline(seq)));
        }
        Command::Equiv { first, second, b } => {
            let d1 = inputs.extension(first, None)?.data;
            let d2 = inputs.extension(second, None)?.data;
            let b = inputs.matrix(b)?;
            let r = check_equivalence_by_b(&d1, &d2, &b)?;
            let mut c = Check::new("equivalence_by_b");
            if let Some(x) = r.phi_difference {
                c.fail(vec![x], format!("phi differs on basis element {x}"));
            }
            if let Some(t) = &r.rho_difference {
                c.fail(t.clone(), format!("rho differs on {t:?}"));
            }
            rep.checks.push(c);
            if r.equivalent {
                let s1 = build_extension(&d1)?;
                let s2 = build_extension(&d2)?;
                let f = equivalence_map(d1.h.dim(), d1.g.dim(), &b);
                rep.absorb(check_extension_equivalence(&s1, &s2, &f));
                rep.result("map", matrix_inline(&f));
            }
        }
        Command::SplitCheck { file, b } => {
            let d = inputs.extension(file, None)?.data;
            let mut c = Check::new("split");
            match b {
                Some(p) => {
                    let b = inputs.matrix(p)?;
                    if !split_verify(&d, &b)? {
                        c.fail(Vec::new(), "b does not trivialise the datum");
                    }
                }
                None => match split_solve(&d)? {
                    Some(b) => rep.result("b", matrix_inline(&b)),
                    None => c.fail(Vec::new(), "no degree-zero b with delta b = -rho"),
                },
            }
            rep.checks.push(c);
        }
        Command::Obstruction { file, k } => {
            let d = inputs.extension(file, *k)?.data;
            let o = obstruction_class(&d.g, &d.h, d.k, &d.phi, &d.rho)?;
            rep.absorb(o.preconditions.clone());
            let verdict = match (o.lambda.is_zero(), o.trivial) {
                (true, _) => "lambda = 0, trivial".to_string(),
                (false, true) => "lambda = delta nu, trivial".to_string(),
                (false, false) => "lambda not a coboundary, nontrivial".to_string(),
            };
            rep.result("obstruction", verdict);
            rep.result("lambda", cochain_inline(&o.lambda));
            if let Some(nu) = &o.witness_nu {
                rep.result("nu", cochain_inline(nu));
            }
        }
        Command::Classify { file, k } => {
            let d = inputs.extension(file, *k)?.data;
            let c = parameterize_extensions(&d.g, &d.h, d.k, &d.phi)?;
            rep.absorb(c.report.clone());
            rep.result("dim H^2", c.cohomology.dim().to_string());
            for (t, r) in c.data.iter().enumerate() {
                rep.result(format!("  class[{t}] rho"), cochain_inline(&r.rho));
            }
        }
        Command::Generate { seed, family, grading, alpha } => {
            let mut cfg = gen::config_for(*seed);
            if let Some(f) = family {
                cfg.family = match f {
                    FamilyChoice::Abelian => Family::Abelian,
                    FamilyChoice::Nilpotent => Family::NilpotentByCocycle,
                    FamilyChoice::Classical => Family::Classical,
                    FamilyChoice::Yau => Family::YauTwist,
                };
            }
            if let Some(g) = grading {
                cfg.grading = match g {
                    GradingArg::Trivial => GradingChoice::Trivial,
                    GradingArg::Super => GradingChoice::Super,
                    GradingArg::Klein => GradingChoice::Klein,
                    GradingArg::ZZ2 => GradingChoice::ZZ2,
                    GradingArg::Z2Scaled => GradingChoice::Z2Scaled,
                };
            }
            if let Some(a) = alpha {
                cfg.alpha = match a {
                    AlphaArg::Identity => AlphaFamily::Identity,
                    AlphaArg::Diagonal => AlphaFamily::Diagonal,
                    AlphaArg::Morphism => AlphaFamily::Morphism,
                };
            }
            inputs.feed(format!("{cfg:?}").as_bytes());
            let a = gen::gen_algebra(&GeneratorConfig { ..cfg.clone() });
            rep.absorb(a.validate());
            let mut doc = AlgebraDocument::new(a);
            doc.metadata.insert("seed".into(), serde_json::Value::from(*seed));
            doc.metadata.insert("family".into(), serde_json::Value::from(format!("{:?}", cfg.family)));
            doc.metadata.insert("grading".into(), serde_json::Value::from(format!("{:?}", cfg.grading)));
            doc.metadata.insert("alpha".into(), serde_json::Value::from(format!("{:?}", cfg.alpha)));
            rep.document = Some(io::serialize_algebra_document(&doc));
        }
    }
    Ok(())
}

/// Runs one command line (program name first) and returns the rendered
/// report with the exit status.
pub fn run_command<I, T>(argv: I) -> (String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            return (e.render().to_string(), code);
        }
    };
    let report = run(&cli);
    let code = if report.report.error.is_some() {
        report.error_code
    } else if report.report.checks.passed() {
        0
    } else {
        1
    };
    (report.report.render(), code)
}

struct Outcome {
    report: CliReport,
    error_code: i32,
}

fn run(cli: &Cli) -> Outcome {
    let start = Instant::now();
    let mut rep = CliReport {
        command: cli.command.name().to_string(),
        ..CliReport::default()
    };
    let mut inputs = Inputs::new();
    let result = execute(&cli.command, &mut rep, &mut inputs);
    rep.digest = inputs.digest();
    let mut error_code = 0;
    if let Err(e) = result {
        error_code = exit_code_for(&e);
        rep.error = Some(e.to_string());
        rep.document = None;
    }
    if let (Some(path), Some(doc)) = (&cli.out, &rep.document) {
        match std::fs::write(path, doc) {
            Ok(()) => {
                rep.written = Some(path.clone());
                rep.document = None;
            }
            Err(e) => {
                rep.error = Some(format!("io error: {}: {e}", path.display()));
                error_code = 2;
            }
        }
    }
    if !cli.no_timing {
        rep.timing_ms = Some(start.elapsed().as_millis());
    }
    Outcome { report: rep, error_code }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testkit::fixtures;

    fn write(dir: &Path, name: &str, text: &str) -> String {
        let p = dir.join(name);
        std::fs::write(&p, text).unwrap();
        p.to_string_lossy().into_owned()
    }

    #[test]
    fn validate_and_cohomology() {
        let dir = tempfile::tempdir().unwrap();
        let h = write(dir.path(), "heis.alg", &io::serialize_algebra(&fixtures::heisenberg()));
        let (out, code) = run_command(["homcolor", "validate", &h, "--no-timing"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("check hom_jacobi: pass"));
        assert!(!out.contains("timing_ms"));
        let s = write(dir.path(), "sl2.alg", &io::serialize_algebra(&fixtures::sl2()));
        let (out, code) = run_command(["homcolor", "cohomology", "--p", "2", "--module", "trivial", &s, "--no-timing"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("dim H^2: 0"), "{out}");
    }

    #[test]
    fn usage_and_parse_errors_exit_two() {
        let (_, code) = run_command(["homcolor", "frobnicate"]);
        assert_eq!(code, 2);
        let dir = tempfile::tempdir().unwrap();
        let bad = write(dir.path(), "bad.alg", "{ not json");
        let (out, code) = run_command(["homcolor", "validate", &bad]);
        assert_eq!(code, 2);
        assert!(out.contains("status: error"));
    }

    #[test]
    fn failing_check_exits_one() {
        let dir = tempfile::tempdir().unwrap();
        let a = fixtures::sl2().with_table_entry(0, 1, GradedVector::term(1, crate::scalar::q(3)));
        let a = a.with_table_entry(1, 0, GradedVector::term(1, crate::scalar::q(-3)));
        let p = write(dir.path(), "broken.alg", &io::serialize_algebra(&a));
        let (out, code) = run_command(["homcolor", "validate", &p, "--no-timing"]);
        assert_eq!(code, 1, "{out}");
        assert!(out.contains("check hom_jacobi: FAIL"));
    }
}

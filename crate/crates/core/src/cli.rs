//! Command-line front end. [`run`] parses arguments and returns the exit
//! code together with everything that should be printed, so the binary
//! stays a thin wrapper and tests can drive commands in-process.

use std::fmt::Write as _;
use std::fs::{self, OpenOptions};
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::braidrep::TensorPowerRep;
use crate::cocycle::{parse_cocycle_spec, Cocycle3, ThetaVariant};
use crate::double::{Conventions, StructureViolation, TwistedDouble};
use crate::group::{parse_group_spec, FiniteGroup, PGroupStatus};
use crate::image::{
    analyze, check_filtration_lemma, coxeter_finite, AnalyzeOptions, ClosureSummary, FiltrationInput,
    FiltrationReport, ImageReport, DEFAULT_MAX_ELEMENTS,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_INCOMPLETE: i32 = 2;
pub const EXIT_INPUT_ERROR: i32 = 3;

/// Version tag written into every cache document.
pub const CACHE_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "qdbraid", version, about = "Braid group images from twisted quantum doubles of finite groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Braid,
    Pure,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct DoubleArgs {
    /// cyclic:m | dihedral:m | quaternion | symmetric:m | product:A,B | trivial | file:PATH
    #[arg(long)]
    pub group: String,
    /// trivial | cyclic:q | file:PATH
    #[arg(long, default_value = "trivial")]
    pub cocycle: String,
    /// theta:standard | theta:printed
    #[arg(long, default_value = "theta:standard")]
    pub variant: String,
}

#[derive(Debug, Clone, Args)]
pub struct JobArgs {
    #[command(flatten)]
    pub double: DoubleArgs,
    /// Number of strands
    #[arg(short = 'n', default_value_t = 2)]
    pub n: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_ELEMENTS)]
    pub max_elements: usize,
    /// Directory for cached reports
    #[arg(long)]
    pub cache: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Group inspection
    Group {
        #[command(subcommand)]
        command: GroupCommand,
    },
    /// Verify the cocycle and the structure of the twisted double
    Selftest {
        #[command(flatten)]
        double: DoubleArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Representation operators
    Rep {
        #[command(subcommand)]
        command: RepCommand,
    },
    /// Close the braid or pure braid image
    Image {
        #[arg(value_enum)]
        which: Which,
        #[command(flatten)]
        job: JobArgs,
    },
    /// Full report: both images, element orders and the Coxeter verdict
    Report {
        #[command(flatten)]
        job: JobArgs,
    },
    /// Coxeter's finiteness criterion 1/n + 1/k > 1/2
    Coxeter {
        #[arg(short = 'n')]
        n: u64,
        #[arg(short = 'k')]
        k: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check the filtration lemma on a filtration file
    Filtration {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_ELEMENTS)]
        max_elements: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum GroupCommand {
    /// Order, p-group status and nilpotency class
    Info {
        spec: String,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum RepCommand {
    /// Write the braid and band generator operators as `monop v1` files
    Emit {
        #[command(flatten)]
        job: JobArgs,
        /// Output directory
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

/// Exit code plus captured output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn input_error(msg: impl std::fmt::Display) -> Self {
        Self { code: EXIT_INPUT_ERROR, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

/// Parse `args` (including the program name) and run the command.
pub fn run_from<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            }
        }
    }
}

pub fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Group { command: GroupCommand::Info { spec, output } } => cmd_group_info(&spec, output.format),
        Command::Selftest { double, output } => cmd_selftest(&double, output.format),
        Command::Rep { command: RepCommand::Emit { job, out } } => cmd_rep_emit(&job, &out),
        Command::Image { which, job } => cmd_image(&job, Some(which)),
        Command::Report { job } => cmd_image(&job, None),
        Command::Coxeter { n, k, output } => cmd_coxeter(n, k, output.format),
        Command::Filtration { file, max_elements, output } => cmd_filtration(&file, max_elements, output.format),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

pub fn parse_variant(spec: &str) -> Result<ThetaVariant, String> {
    match spec.trim() {
        "theta:standard" => Ok(ThetaVariant::Standard),
        "theta:printed" => Ok(ThetaVariant::Printed),
        other => Err(format!("unknown variant `{other}`; expected theta:standard or theta:printed")),
    }
}

/// Build the twisted double named by the group, cocycle and variant specs.
pub fn build_double(args: &DoubleArgs) -> Result<TwistedDouble, String> {
    let group = Arc::new(parse_group_spec(&args.group).map_err(|e| e.to_string())?);
    let cocycle = parse_cocycle_spec(group, &args.cocycle).map_err(|e| e.to_string())?;
    let theta = parse_variant(&args.variant)?;
    Ok(TwistedDouble::with_conventions(cocycle, Conventions::FROZEN.with_theta(theta)))
}

// ---- group info ------------------------------------------------------------

#[derive(Debug, Serialize)]
struct GroupInfo {
    group: String,
    order: usize,
    abelian: bool,
    p_group: bool,
    prime: Option<u64>,
    exponent_of_prime: Option<u32>,
    nilpotency_class: Option<usize>,
}

fn group_info(g: &FiniteGroup) -> GroupInfo {
    let status = g.is_p_group();
    let (prime, k) = match status {
        PGroupStatus::PGroup { p, k } => (Some(p), Some(k)),
        _ => (None, None),
    };
    GroupInfo {
        group: g.name().to_string(),
        order: g.order(),
        abelian: g.is_abelian(),
        p_group: !matches!(status, PGroupStatus::NotPGroup),
        prime,
        exponent_of_prime: k,
        nilpotency_class: g.nilpotency_class(),
    }
}

fn cmd_group_info(spec: &str, format: Format) -> Outcome {
    let g = match parse_group_spec(spec) {
        Ok(g) => g,
        Err(e) => return Outcome::input_error(e),
    };
    let info = group_info(&g);
    if format == Format::Json {
        return Outcome::ok(to_json(&info));
    }
    let mut out = String::new();
    let _ = writeln!(out, "group: {}", info.group);
    let _ = writeln!(out, "order: {}", info.order);
    let _ = writeln!(out, "abelian: {}", yes_no(info.abelian));
    let p = match (info.prime, info.exponent_of_prime) {
        (Some(p), Some(k)) => format!("p={p} (order {p}^{k})"),
        _ if info.order == 1 => "trivial group".to_string(),
        _ => "not a p-group".to_string(),
    };
    let _ = writeln!(out, "p-group: {p}");
    let _ = writeln!(out, "nilpotency class: {}", opt(info.nilpotency_class, "not nilpotent"));
    Outcome::ok(out)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn opt<T: ToString>(v: Option<T>, none: &str) -> String {
    v.map(|x| x.to_string()).unwrap_or_else(|| none.to_string())
}

// ---- selftest --------------------------------------------------------------

#[derive(Debug, Serialize)]
struct SelftestItem {
    check: String,
    status: &'static str,
    detail: Option<String>,
}

#[derive(Debug, Serialize)]
struct SelftestReport {
    group: String,
    cocycle: String,
    conventions: Conventions,
    passed: bool,
    items: Vec<SelftestItem>,
}

/// Exhaustive below this many basis triples; strided sampling above.
const ASSOCIATIVITY_TRIPLES: usize = 300_000;
/// Largest group for the checks that multiply triple tensors.
const TRIPLE_CHECK_MAX_ORDER: usize = 8;

fn cmd_selftest(args: &DoubleArgs, format: Format) -> Outcome {
    let d = match build_double(args) {
        Ok(d) => d,
        Err(e) => return Outcome::input_error(e),
    };
    let order = d.cocycle().group().order();
    let mut items = Vec::new();
    let mut push = |check: &str, res: Result<Option<String>, String>| {
        let (status, detail) = match res {
            Ok(detail) => ("pass", detail),
            Err(w) => ("fail", Some(w)),
        };
        items.push(SelftestItem { check: check.to_string(), status, detail });
    };
    let witness = |v: StructureViolation| v.to_string();

    push("cocycle identity", d.cocycle().check().map(|_| None).map_err(|v| format!("fails at {v}")));
    let triples = d.dimension().pow(3);
    let stride = triples.div_ceil(ASSOCIATIVITY_TRIPLES).max(1);
    push(
        "associativity",
        d.check_associativity(stride).map(|k| Some(format!("{k} of {triples} basis triples"))).map_err(witness),
    );
    push("unit", d.check_unit().map(|_| None).map_err(witness));
    push("counit", d.check_counit().map(|_| None).map_err(witness));
    push("coproduct multiplicativity", d.check_coproduct_multiplicative().map(|_| None).map_err(witness));
    push("R*R^-1 = R^-1*R = 1", d.check_r_inverse().map(|_| None).map_err(witness));
    if order <= TRIPLE_CHECK_MAX_ORDER {
        push("quasitriangularity", d.check_quasitriangular().map(|_| None).map_err(witness));
        push("quasi-coassociativity", d.check_quasi_coassociative().map(|_| None).map_err(witness));
        push("hexagons", d.check_hexagons().map(|_| None).map_err(witness));
    } else {
        for check in ["quasitriangularity", "quasi-coassociativity", "hexagons"] {
            items.push(SelftestItem {
                check: check.into(),
                status: "skipped",
                detail: Some(format!("group order above {TRIPLE_CHECK_MAX_ORDER}")),
            });
        }
    }
    let passed = items.iter().all(|i| i.status != "fail");
    let report = SelftestReport {
        group: d.cocycle().group().name().to_string(),
        cocycle: d.cocycle().id().to_string(),
        conventions: d.conventions(),
        passed,
        items,
    };
    let stdout = if format == Format::Json {
        to_json(&report)
    } else {
        let mut out = format!("selftest {} / {}\n", report.group, report.cocycle);
        for item in &report.items {
            let _ = write!(out, "{:<28} {}", item.check, item.status);
            if let Some(d) = &item.detail {
                let _ = write!(out, "  ({d})");
            }
            out.push('\n');
        }
        out
    };
    Outcome { code: if passed { EXIT_OK } else { EXIT_VERIFICATION_FAILED }, stdout, stderr: String::new() }
}

// ---- rep emit --------------------------------------------------------------

fn cmd_rep_emit(job: &JobArgs, out: &Path) -> Outcome {
    let d = match build_double(&job.double) {
        Ok(d) => d,
        Err(e) => return Outcome::input_error(e),
    };
    if job.n < 2 {
        return Outcome::input_error("need at least two strands");
    }
    let rep = match TensorPowerRep::new(d, job.n) {
        Ok(r) => r,
        Err(e) => return Outcome::input_error(e),
    };
    let mut files = Vec::new();
    let emit = |name: String, text: String, files: &mut Vec<String>| -> std::io::Result<()> {
        let path = out.join(&name);
        fs::write(&path, text)?;
        files.push(path.display().to_string());
        Ok(())
    };
    let result = (|| -> Result<(), String> {
        fs::create_dir_all(out).map_err(|e| e.to_string())?;
        for i in 1..job.n {
            let op = rep.braid_generator(i).map_err(|e| e.to_string())?;
            emit(format!("beta_{i}.monop"), op.to_monop_string(), &mut files).map_err(|e| e.to_string())?;
        }
        for i in 1..job.n {
            for j in i + 1..=job.n {
                let op = rep.pure_braid_generator(i, j).map_err(|e| e.to_string())?;
                emit(format!("pure_{i}_{j}.monop"), op.to_monop_string(), &mut files).map_err(|e| e.to_string())?;
            }
        }
        Ok(())
    })();
    if let Err(e) = result {
        return Outcome::input_error(e);
    }
    let stdout = match job.output.format {
        Format::Json => to_json(&serde_json::json!({ "dim": rep.dim(), "r": rep.r(), "files": files })),
        Format::Text => files.iter().map(|f| format!("{f}\n")).collect(),
    };
    Outcome::ok(stdout)
}

// ---- image / report --------------------------------------------------------

/// Everything that determines a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheKey {
    pub command: String,
    pub group: String,
    /// SHA-256 of the group's Cayley table, so `file:` specs are keyed by content.
    pub group_digest: String,
    pub cocycle: String,
    pub cocycle_digest: String,
    pub n: usize,
    pub max_elements: usize,
    pub conventions: Conventions,
}

impl CacheKey {
    pub fn file_name(&self) -> String {
        let json = serde_json::to_string(self).expect("key serializes");
        format!("{}.json", hex::encode(Sha256::digest(json.as_bytes())))
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct CacheDocument {
    format_version: u32,
    key: CacheKey,
    report: ImageReport,
}

fn digest_group(g: &FiniteGroup) -> String {
    hex::encode(Sha256::digest(g.to_cayley_string().as_bytes()))
}

fn digest_cocycle(w: &Cocycle3) -> String {
    hex::encode(Sha256::digest(w.to_file_string().as_bytes()))
}

/// Look up a cached report. Unreadable or mismatched documents are misses.
pub fn cache_lookup(dir: &Path, key: &CacheKey) -> Option<ImageReport> {
    let text = fs::read_to_string(dir.join(key.file_name())).ok()?;
    let doc: CacheDocument = serde_json::from_str(&text).ok()?;
    (doc.format_version == CACHE_FORMAT_VERSION && &doc.key == key).then_some(doc.report)
}

/// Store a report. The lock file keeps concurrent writers out; a writer
/// that finds it taken skips the store and says so.
pub fn cache_store(dir: &Path, key: &CacheKey, report: &ImageReport) -> Result<(), String> {
    fs::create_dir_all(dir).map_err(|e| e.to_string())?;
    let lock = dir.join("cache.lock");
    let mut handle = match OpenOptions::new().write(true).create_new(true).open(&lock) {
        Ok(h) => h,
        Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => {
            return Err(format!("cache lock {} is held; result not stored", lock.display()))
        }
        Err(e) => return Err(e.to_string()),
    };
    let _ = writeln!(handle, "{}", std::process::id());
    let doc = CacheDocument { format_version: CACHE_FORMAT_VERSION, key: key.clone(), report: report.clone() };
    let name = key.file_name();
    let tmp = dir.join(format!("{name}.tmp"));
    let result = fs::write(&tmp, to_json(&doc)).and_then(|_| fs::rename(&tmp, dir.join(&name)));
    let _ = fs::remove_file(&lock);
    result.map_err(|e| e.to_string())
}

fn summary_complete(s: &Option<ClosureSummary>) -> bool {
    s.as_ref().is_none_or(|s| s.complete && s.nilpotency_complete)
}

/// Exit code for a report: a p-group whose complete pure image is not a
/// p-group is a verification failure; incompleteness comes next.
pub fn report_exit_code(report: &ImageReport) -> i32 {
    let contradicts = report.pure.as_ref().and_then(|p| p.order_is_power_of_group_prime) == Some(false)
        || report.beta1_squared_order_is_power_of_group_prime == Some(false);
    if contradicts {
        EXIT_VERIFICATION_FAILED
    } else if !summary_complete(&report.braid) || !summary_complete(&report.pure) {
        EXIT_INCOMPLETE
    } else {
        EXIT_OK
    }
}

fn cmd_image(job: &JobArgs, which: Option<Which>) -> Outcome {
    let d = match build_double(&job.double) {
        Ok(d) => d,
        Err(e) => return Outcome::input_error(e),
    };
    if job.n < 2 {
        return Outcome::input_error("need at least two strands");
    }
    let command = match which {
        Some(Which::Braid) => "image braid",
        Some(Which::Pure) => "image pure",
        None => "report",
    };
    let key = CacheKey {
        command: command.into(),
        group: job.double.group.trim().into(),
        group_digest: digest_group(d.cocycle().group()),
        cocycle: job.double.cocycle.trim().into(),
        cocycle_digest: digest_cocycle(d.cocycle()),
        n: job.n,
        max_elements: job.max_elements,
        conventions: d.conventions(),
    };
    let mut stderr = String::new();
    let cached = job.cache.as_deref().and_then(|dir| cache_lookup(dir, &key));
    let report = match cached {
        Some(r) => r,
        None => {
            let opts = AnalyzeOptions {
                max_elements: job.max_elements,
                braid: which != Some(Which::Pure),
                pure: which != Some(Which::Braid),
                ..AnalyzeOptions::default()
            };
            let report = match analyze(&d, job.n, &opts) {
                Ok(r) => r,
                Err(e) => return Outcome::input_error(e),
            };
            if let Some(dir) = job.cache.as_deref() {
                if let Err(e) = cache_store(dir, &key, &report) {
                    let _ = writeln!(stderr, "warning: {e}");
                }
            }
            report
        }
    };
    let stdout = match job.output.format {
        Format::Json => to_json(&report),
        Format::Text => render_report(&report),
    };
    Outcome { code: report_exit_code(&report), stdout, stderr }
}

fn render_summary(out: &mut String, label: &str, s: &ClosureSummary) {
    let Some(order) = s.order else {
        let _ = writeln!(out, "{label}: incomplete after {} elements (raise --max-elements)", s.elements_found);
        return;
    };
    let _ = writeln!(out, "{label}: order {order}");
    let pp = match s.order_prime_power {
        Some(pp) => format!("yes ({}^{})", pp.p, pp.k),
        None if order == 1 => "trivial".into(),
        None => "no".into(),
    };
    let _ = writeln!(out, "  p-power: {pp}");
    let _ = writeln!(out, "  diagonal subgroup order: {}", opt(s.diagonal_subgroup_order, "-"));
    let _ = writeln!(out, "  permutation quotient order: {}", opt(s.permutation_quotient_order, "-"));
    if !s.nilpotency_complete {
        let _ = writeln!(out, "  nilpotency class: not computed (too large)");
    } else if s.nilpotency_class.is_some() || label.starts_with("pure") {
        let _ = writeln!(out, "  nilpotency class: {}", opt(s.nilpotency_class, "not nilpotent"));
    }
}

pub fn render_report(r: &ImageReport) -> String {
    let mut out = String::new();
    let prime = r.group_prime.map(|p| format!(", p={p}")).unwrap_or_default();
    let _ = writeln!(
        out,
        "group: {} (order {}{prime}, class {})",
        r.group,
        r.group_order,
        opt(r.group_nilpotency_class, "none")
    );
    let _ = writeln!(out, "cocycle: {} (r = {}, theta {})", r.cocycle, r.r, r.conventions.theta);
    let _ = writeln!(out, "strands: {}, dimension {}", r.n, r.dim);
    if let Some(b) = &r.braid {
        render_summary(&mut out, "braid image", b);
    }
    if let Some(p) = &r.pure {
        render_summary(&mut out, "pure braid image", p);
    }
    let orders: Vec<String> = r.generator_orders.iter().map(|o| opt(*o, "?")).collect();
    let _ = writeln!(out, "generator orders: {}", orders.join(" "));
    let _ = writeln!(out, "beta1^2 order: {}", opt(r.beta1_squared_order, "?"));
    if let Some(c) = r.coxeter {
        let _ = writeln!(out, "coxeter (n={}, k={}): {}", r.n, c.k, if c.finite { "finite" } else { "infinite" });
    }
    out
}

// ---- coxeter ---------------------------------------------------------------

fn cmd_coxeter(n: u64, k: u64, format: Format) -> Outcome {
    match coxeter_finite(n, k) {
        Ok(finite) => Outcome::ok(match format {
            Format::Json => to_json(&serde_json::json!({ "n": n, "k": k, "finite": finite })),
            Format::Text => format!("{}\n", if finite { "finite" } else { "infinite" }),
        }),
        Err(e) => Outcome::input_error(e),
    }
}

// ---- filtration ------------------------------------------------------------

fn cmd_filtration(file: &Path, max_elements: usize, format: Format) -> Outcome {
    let text = match fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => return Outcome::input_error(format!("{}: {e}", file.display())),
    };
    let input = match FiltrationInput::parse(&text) {
        Ok(i) => i,
        Err(e) => return Outcome::input_error(e),
    };
    let report = match check_filtration_lemma(&input.spec, &input.auts, max_elements) {
        Ok(r) => r,
        Err(e) => return Outcome::input_error(e),
    };
    let code = filtration_exit_code(&report);
    let stdout = match format {
        Format::Json => to_json(&report),
        Format::Text => render_filtration(&report),
    };
    Outcome { code, stdout, stderr: String::new() }
}

fn filtration_exit_code(r: &FiltrationReport) -> i32 {
    if !r.hypotheses_hold() || r.class_within_bound == Some(false) {
        EXIT_VERIFICATION_FAILED
    } else if r.aut_group_order.is_none() {
        EXIT_INCOMPLETE
    } else {
        EXIT_OK
    }
}

fn render_filtration(r: &FiltrationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "filtration length N = {}", r.length);
    if r.violations.is_empty() {
        let _ = writeln!(out, "hypotheses: hold");
    } else {
        let _ = writeln!(out, "hypotheses: violated");
        for v in &r.violations {
            let _ = writeln!(out, "  {v}");
        }
    }
    let _ = writeln!(out, "automorphism group order: {}", opt(r.aut_group_order, "budget exceeded"));
    let _ = writeln!(out, "automorphism group class: {}", opt(r.aut_group_class, "not nilpotent or not computed"));
    let verdict = match r.class_within_bound {
        Some(true) => "yes",
        Some(false) => "no",
        None => "unknown",
    };
    let _ = writeln!(out, "class <= N-1 = {}: {verdict}", r.class_bound);
    out
}

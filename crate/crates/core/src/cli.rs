//! The `legmosaic` command line.
//!
//! Budgets and defaults resolve in the order: flags, `LEGMOSAIC_*` environment
//! variables, a `key = value` config file, built-in defaults. Exit codes are 0
//! on success, 1 for domain errors, 2 for usage errors and 3 when a resource
//! budget is exceeded. Errors are also reported as one JSON line on stderr.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::bounds::{lower_bounds, InvariantPair};
use crate::census::{run_census, write_outputs, CensusOptions, OutputFormat};
use crate::constructions::{build_unknot_plan, crab_bucket};
use crate::counting::{count, count_table, ratio_delta, Variant, DEFAULT_DIM_CAP};
use crate::enumeration::store::{run_sharded, ShardOptions};
use crate::enumeration::{count_mosaics, enumerate, EnumerationRequest, Filter};
use crate::error::Error;
use crate::invariants::{invariants, invariants_with_rot, LegendrianInvariants};
use crate::render::{render, Style};
use crate::tile::{parse_mosaic, Mosaic};
use crate::topology::homfly::{HomflyEngine, DEFAULT_MAX_CROSSINGS};
use crate::topology::identify::identify_with;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

/// Largest side length `construct` will build.
pub const DEFAULT_MAX_CONSTRUCT: usize = 1000;

#[derive(Parser, Debug)]
#[command(name = "legmosaic", version, about = "Legendrian knot mosaics")]
struct Cli {
    /// Config file of `key = value` lines.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads for enumeration and census
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// text, json or csv; commands ignore formats they cannot produce.
    #[arg(long, global = true)]
    format: Option<String>,
    /// With `false`, timing information is added to stderr.
    #[arg(long, global = true, num_args = 0..=1, default_missing_value = "true")]
    deterministic: Option<bool>,
    /// Largest mosaic area accepted; the census size limit is its integer square root
    #[arg(long, global = true)]
    max_cells: Option<usize>,
    /// Largest crossing count passed to the HOMFLY-PT engine
    #[arg(long, global = true)]
    max_crossings: Option<usize>,
    /// Largest state dimension for dense counting
    #[arg(long, global = true)]
    dim_cap: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that an encoding is a suitably connected mosaic.
    Validate { encoding: String },
    /// Classical invariants of a mosaic in its default orientation.
    Invariants { encoding: String },
    /// Smooth knot type via the HOMFLY-PT polynomial.
    Identify { encoding: String },
    /// Number of suitably connected m×n mosaics.
    Count(CountArgs),
    /// List suitably connected mosaics of one size.
    Enumerate(EnumerateArgs),
    /// Mosaic-number bounds for an invariant pair.
    #[command(allow_negative_numbers = true)]
    Bounds {
        #[arg(long)]
        tb: i64,
        #[arg(long)]
        rot: i64,
        /// Require (tb, rot) to be a Legendrian unknot pair.
        #[arg(long)]
        unknot: bool,
    },
    /// Explicit mosaic families.
    #[command(subcommand)]
    Construct(ConstructCommand),
    /// Minimal-mosaic census of all small knot mosaics.
    Census {
        #[arg(long, default_value_t = crate::census::DEFAULT_MAX_SIZE)]
        max_size: usize,
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long)]
        resume: bool,
    },
    /// Draw a mosaic.
    Render {
        encoding: String,
        #[arg(long, default_value = "ascii")]
        style: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct CountArgs {
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value = "legendrian")]
    variant: String,
    /// Table of all 1 ≤ n ≤ m ≤ MAX instead of a single count.
    #[arg(long)]
    table_max: Option<usize>,
    /// Ratio of Legendrian to classical n×n counts with this many decimals of its log.
    #[arg(long)]
    delta_digits: Option<usize>,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long)]
    size: Option<usize>,
    #[arg(long)]
    rows: Option<usize>,
    #[arg(long)]
    cols: Option<usize>,
    #[arg(long)]
    knots_only: bool,
    #[arg(long)]
    count_only: bool,
    /// Write resumable shards to this directory instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Resume a sharded run from its directory or checkpoint file.
    #[arg(long)]
    resume: Option<PathBuf>,
    #[arg(long)]
    gzip: bool,
}

#[derive(Subcommand, Debug)]
enum ConstructCommand {
    /// Crab bucket of size n.
    Crab {
        #[arg(long)]
        n: usize,
    },
    /// Unknot with the given invariants.
    #[command(allow_negative_numbers = true)]
    Unknot {
        #[arg(long)]
        tb: i64,
        #[arg(long)]
        rot: i64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format {other:?}")),
        }
    }
}

/// Resolved settings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliConfig {
    pub max_cells: usize,
    pub max_crossings: usize,
    pub dim_cap: usize,
    pub max_construct: usize,
    pub workers: usize,
    pub out_dir: PathBuf,
    pub format: Format,
    pub deterministic: bool,
}

impl Default for CliConfig {
    fn default() -> Self {
        CliConfig {
            max_cells: crate::enumeration::DEFAULT_MAX_CELLS,
            max_crossings: DEFAULT_MAX_CROSSINGS,
            dim_cap: DEFAULT_DIM_CAP,
            max_construct: DEFAULT_MAX_CONSTRUCT,
            workers: std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
            out_dir: PathBuf::from("."),
            format: Format::Text,
            deterministic: true,
        }
    }
}

const KEYS: [&str; 8] =
    ["max_cells", "max_crossings", "dim_cap", "max_construct", "workers", "out_dir", "format", "deterministic"];

impl CliConfig {
    fn set(&mut self, key: &str, value: &str, origin: &str) -> Result<(), String> {
        let bad = || format!("{origin}: invalid value {value:?} for {key}");
        let positive = |v: &str| v.parse::<usize>().ok().filter(|&n| n > 0).ok_or_else(bad);
        match key {
            "max_cells" => self.max_cells = positive(value)?,
            "max_crossings" => self.max_crossings = positive(value)?,
            "dim_cap" => self.dim_cap = positive(value)?,
            "max_construct" => self.max_construct = positive(value)?,
            "workers" => self.workers = positive(value)?,
            "out_dir" => self.out_dir = PathBuf::from(value),
            "format" => self.format = value.parse().map_err(|e| format!("{origin}: {e}"))?,
            "deterministic" => self.deterministic = value.parse().map_err(|_| bad())?,
            _ => return Err(format!("{origin}: unknown key {key:?}")),
        }
        Ok(())
    }

    /// Applies a `key = value` file. Blank lines and `#` comments are skipped.
    pub fn apply_file(&mut self, path: &Path) -> Result<(), String> {
        let text = fs::read_to_string(path).map_err(|e| format!("config {}: {e}", path.display()))?;
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| format!("{}:{}: expected key = value", path.display(), i + 1))?;
            self.set(k.trim(), v.trim(), &format!("{}:{}", path.display(), i + 1))?;
        }
        Ok(())
    }

    pub fn apply_env(&mut self, env: &HashMap<String, String>) -> Result<(), String> {
        for key in KEYS {
            let var = format!("LEGMOSAIC_{}", key.to_uppercase());
            if let Some(v) = env.get(&var) {
                self.set(key, v, &var)?;
            }
        }
        Ok(())
    }

    /// Census size budget implied by the cell budget.
    pub fn census_budget(&self) -> usize {
        self.max_cells.isqrt()
    }
}

fn resolve(cli: &Cli, env: &HashMap<String, String>) -> Result<CliConfig, String> {
    let mut cfg = CliConfig::default();
    let file = cli.config.clone().or_else(|| env.get("LEGMOSAIC_CONFIG").map(PathBuf::from));
    if let Some(path) = file {
        cfg.apply_file(&path)?;
    }
    cfg.apply_env(env)?;
    let flags = [
        ("max_cells", cli.max_cells.map(|v| v.to_string())),
        ("max_crossings", cli.max_crossings.map(|v| v.to_string())),
        ("dim_cap", cli.dim_cap.map(|v| v.to_string())),
        ("workers", cli.workers.map(|v| v.to_string())),
        ("format", cli.format.clone()),
        ("deterministic", cli.deterministic.map(|v| v.to_string())),
    ];
    for (k, v) in flags {
        if let Some(v) = v {
            cfg.set(k, &v, &format!("--{}", k.replace('_', "-")))?;
        }
    }
    Ok(cfg)
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Lib(e.into())
    }
}

fn exit_code(e: &Error) -> i32 {
    if e.is_resource_limit() {
        EXIT_RESOURCE
    } else if e.is_encoding_error() {
        EXIT_USAGE
    } else {
        EXIT_DOMAIN
    }
}

fn report(err: &mut dyn Write, kind: &str, message: &str, code: i32) -> i32 {
    let line = json!({ "error": kind, "message": message, "exit": code });
    let _ = writeln!(err, "{line}");
    code
}

/// Runs the command line with an explicit environment and output streams.
pub fn run<I, S>(args: I, env: &HashMap<String, String>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("usage error").trim_start_matches("error: ");
            return report(err, "usage", first, EXIT_USAGE);
        }
    };
    let cfg = match resolve(&cli, env) {
        Ok(c) => c,
        Err(msg) => return report(err, "usage", &msg, EXIT_USAGE),
    };
    let started = Instant::now();
    let result = execute(&cli.command, &cfg, out);
    if !cfg.deterministic {
        let _ = writeln!(err, "{}", json!({ "elapsed_ms": started.elapsed().as_millis() as u64 }));
    }
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => report(err, "usage", &msg, EXIT_USAGE),
        Err(Failure::Lib(e)) => report(err, e.kind(), &e.to_string(), exit_code(&e)),
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let env: HashMap<String, String> = std::env::vars().filter(|(k, _)| k.starts_with("LEGMOSAIC_")).collect();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut out = std::io::BufWriter::new(stdout.lock());
    let code = run(std::env::args_os(), &env, &mut out, &mut stderr.lock());
    let _ = out.flush();
    code
}

fn parse(encoding: &str) -> Result<Mosaic, Failure> {
    Ok(parse_mosaic(encoding)?)
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn execute(cmd: &Command, cfg: &CliConfig, out: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Validate { encoding } => {
            let m = parse(encoding)?;
            let ok = m.is_suitably_connected();
            match cfg.format {
                Format::Json => writeln!(
                    out,
                    "{}",
                    json!({ "encoding": m.encode().to_string(), "suitably_connected": ok })
                )?,
                _ => writeln!(out, "suitably connected: {ok}")?,
            }
            if ok {
                Ok(EXIT_OK)
            } else {
                Err(Error::NotSuitablyConnected.into())
            }
        }
        Command::Invariants { encoding } => {
            let m = parse(encoding)?;
            let inv = invariants(&m)?;
            let mut v = serde_json::to_value(inv).expect("serializable");
            let obj = v.as_object_mut().expect("object");
            obj.insert("encoding".into(), Value::String(m.encode().to_string()));
            obj.insert("rows".into(), json!(m.rows()));
            obj.insert("cols".into(), json!(m.cols()));
            writeln!(out, "{}", pretty(&v))?;
            Ok(EXIT_OK)
        }
        Command::Identify { encoding } => {
            let m = parse(encoding)?;
            let mut engine = HomflyEngine::with_max_crossings(cfg.max_crossings);
            let id = identify_with(&mut engine, &m)?;
            writeln!(out, "{}", pretty(&id))?;
            Ok(EXIT_OK)
        }
        Command::Count(args) => run_count(args, cfg, out),
        Command::Enumerate(args) => run_enumerate(args, cfg, out),
        Command::Bounds { tb, rot, unknot } => {
            let inv = InvariantPair { tb: *tb, rot: *rot };
            let report = lower_bounds(inv);
            if *unknot && report.upper_unknot.is_none() {
                return Err(Error::NotAnUnknotPair { tb: *tb, rot: *rot }.into());
            }
            writeln!(out, "{}", pretty(&report))?;
            Ok(EXIT_OK)
        }
        Command::Construct(c) => run_construct(c, cfg, out),
        Command::Census { max_size, out_dir, resume } => {
            let dir = out_dir.clone().unwrap_or_else(|| cfg.out_dir.clone());
            let format = match cfg.format {
                Format::Csv => OutputFormat::Csv,
                _ => OutputFormat::Json,
            };
            let opts = CensusOptions {
                budget: cfg.census_budget(),
                workers: cfg.workers,
                max_crossings: cfg.max_crossings,
                out_dir: Some(dir.join("shards")),
                resume: *resume,
                ..CensusOptions::new(*max_size)
            };
            let census = run_census(&opts)?;
            write_outputs(&census, &dir, format)?;
            writeln!(out, "{}", pretty(&census.summary))?;
            Ok(EXIT_OK)
        }
        Command::Render { encoding, style, output } => {
            let m = parse(encoding)?;
            let style: Style = style.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
            let picture = render(&m, style);
            match output {
                Some(path) => fs::write(path, picture)?,
                None => out.write_all(picture.as_bytes())?,
            }
            Ok(EXIT_OK)
        }
    }
}

fn run_count(args: &CountArgs, cfg: &CliConfig, out: &mut dyn Write) -> Result<i32, Failure> {
    let variant: Variant = args.variant.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
    if let Some(digits) = args.delta_digits {
        let n = args.n.ok_or_else(|| Failure::Usage("--delta-digits needs --n".into()))?;
        let d = ratio_delta(n, digits, cfg.dim_cap)?;
        match cfg.format {
            Format::Csv => writeln!(out, "n,ratio,ln\n{},{},{}", d.n, d.ratio, d.ln)?,
            _ => writeln!(out, "{}", serde_json::to_string(&d).expect("serializable"))?,
        }
        return Ok(EXIT_OK);
    }
    if let Some(max) = args.table_max {
        let rows = count_table(max, max, variant, cfg.dim_cap)?;
        match cfg.format {
            Format::Json => writeln!(out, "{}", pretty(&rows))?,
            _ => {
                writeln!(out, "m,n,variant,value")?;
                for r in rows {
                    writeln!(out, "{},{},{},{}", r.m, r.n, args.variant, r.value)?;
                }
            }
        }
        return Ok(EXIT_OK);
    }
    let (m, n) = match (args.m, args.n) {
        (Some(m), Some(n)) => (m, n),
        (Some(m), None) => (m, m),
        (None, Some(n)) => (n, n),
        (None, None) => return Err(Failure::Usage("count needs --m/--n or --table-max".into())),
    };
    let c = count(m, n, variant, cfg.dim_cap)?;
    match cfg.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string(&c).expect("serializable"))?,
        Format::Csv => writeln!(out, "m,n,variant,value\n{},{},{},{}", c.m, c.n, args.variant, c.value)?,
        Format::Text => writeln!(out, "{}", c.value)?,
    }
    Ok(EXIT_OK)
}

fn run_enumerate(args: &EnumerateArgs, cfg: &CliConfig, out: &mut dyn Write) -> Result<i32, Failure> {
    let (rows, cols) = match (args.size, args.rows, args.cols) {
        (Some(s), None, None) => (s, s),
        (None, Some(r), Some(c)) => (r, c),
        (None, Some(r), None) => (r, r),
        _ => return Err(Failure::Usage("give --size or --rows/--cols".into())),
    };
    let filter = if args.knots_only { Filter::KnotsOnly } else { Filter::AllLinks };
    if args.count_only {
        let n = count_mosaics(rows, cols, filter, cfg.workers, cfg.max_cells)?;
        writeln!(out, "{n}")?;
        return Ok(EXIT_OK);
    }
    let resume_dir = args.resume.as_ref().map(|p| {
        if p.file_name().is_some_and(|n| n == crate::enumeration::store::CHECKPOINT) {
            p.parent().map(Path::to_path_buf).unwrap_or_default()
        } else {
            p.clone()
        }
    });
    if let Some(dir) = args.out.clone().or(resume_dir) {
        let opts = ShardOptions { out_dir: dir, gzip: args.gzip, workers: cfg.workers, max_cells: cfg.max_cells };
        let summary = run_sharded(rows, cols, filter, &opts)?;
        writeln!(out, "{}", pretty(&summary))?;
        return Ok(EXIT_OK);
    }
    let mut io_err = None;
    enumerate(&EnumerationRequest::new(rows, cols, filter), cfg.max_cells, |m| {
        if io_err.is_none() {
            if let Err(e) = writeln!(out, "{}", m.encode()) {
                io_err = Some(e);
            }
        }
    })?;
    match io_err {
        Some(e) => Err(e.into()),
        None => Ok(EXIT_OK),
    }
}

fn check_construct_size(n: usize, cfg: &CliConfig) -> Result<(), Failure> {
    if n > cfg.max_construct {
        return Err(Error::ResourceLimit(format!("construction of size {n} exceeds the limit of {}", cfg.max_construct))
            .into());
    }
    Ok(())
}

fn emit_construction(
    m: &Mosaic,
    inv: LegendrianInvariants,
    plan: Option<Value>,
    cfg: &CliConfig,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let enc = m.encode().to_string();
    let mut block = json!({ "encoding": enc, "invariants": inv });
    if let Some(p) = plan {
        block["plan"] = p;
    }
    match cfg.format {
        Format::Json => writeln!(out, "{}", pretty(&block))?,
        _ => writeln!(out, "{enc}\n{}", pretty(&block))?,
    }
    Ok(EXIT_OK)
}

fn run_construct(c: &ConstructCommand, cfg: &CliConfig, out: &mut dyn Write) -> Result<i32, Failure> {
    match c {
        ConstructCommand::Crab { n } => {
            check_construct_size(*n, cfg)?;
            let m = crab_bucket(*n)?;
            let inv = invariants(&m)?;
            emit_construction(&m, inv, None, cfg, out)
        }
        ConstructCommand::Unknot { tb, rot } => {
            let bound = crate::bounds::unknot_upper_bound(InvariantPair { tb: *tb, rot: *rot })?;
            check_construct_size(bound as usize, cfg)?;
            let (built, plan) = build_unknot_plan(*tb, *rot)?;
            let (inv, reversed) = invariants_with_rot(&built.mosaic, *rot)?
                .ok_or_else(|| Error::MoveHypothesisViolated(format!("built mosaic does not realize rot={rot}")))?;
            let summary = json!({
                "n": plan.n,
                "bound": plan.bound,
                "t7_count": plan.t7_count,
                "krakens": plan.k,
                "fish": plan.f,
                "orientation": if reversed { "reversed" } else { "default" },
            });
            emit_construction(&built.mosaic, inv, Some(summary), cfg, out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], env: &[(&str, &str)]) -> (i32, String, String) {
        let env: HashMap<String, String> = env.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut argv = vec!["legmosaic"];
        argv.extend_from_slice(args);
        let code = run(argv, &env, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn precedence() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cfg");
        fs::write(&path, "# budgets\nmax_cells = 36\nmax_crossings=30\n").unwrap();
        let p = path.to_str().unwrap();
        let cli = Cli::try_parse_from(["legmosaic", "--config", p, "validate", "2134"]).unwrap();
        let cfg = resolve(&cli, &HashMap::new()).unwrap();
        assert_eq!((cfg.max_cells, cfg.max_crossings), (36, 30));
        let env: HashMap<String, String> = [("LEGMOSAIC_MAX_CELLS".to_string(), "49".to_string())].into();
        let cfg = resolve(&cli, &env).unwrap();
        assert_eq!((cfg.max_cells, cfg.max_crossings), (49, 30));
        let cli = Cli::try_parse_from(["legmosaic", "--config", p, "--max-cells", "16", "validate", "2134"]).unwrap();
        assert_eq!(resolve(&cli, &env).unwrap().max_cells, 16);
        let cfg = resolve(&Cli::try_parse_from(["legmosaic", "validate", "2134"]).unwrap(), &HashMap::new()).unwrap();
        assert_eq!(cfg, CliConfig::default());
    }

    #[test]
    fn bad_config_is_usage_error() {
        let (code, _, err) = call(&["validate", "2134"], &[("LEGMOSAIC_MAX_CELLS", "zero")]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("\"usage\""));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["validate", "2134"], &[]).0, EXIT_OK);
        assert_eq!(call(&["validate", "2133"], &[]).0, EXIT_DOMAIN);
        assert_eq!(call(&["validate", "21x4"], &[]).0, EXIT_USAGE);
        assert_eq!(call(&["frobnicate"], &[]).0, EXIT_USAGE);
        assert_eq!(call(&["--help"], &[]).0, EXIT_OK);
        assert_eq!(call(&["enumerate", "--size", "6"], &[]).0, EXIT_RESOURCE);
    }
}

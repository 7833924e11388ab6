//! Command-line front end: `index`, `fourier`, `verify` and `plot`.
//!
//! Exit codes: 0 on agreement or pass, 2 on disagreement or a failed
//! invariant, 1 on any error. Output files are written only after every
//! computation has succeeded, and a failed write removes what was written.

pub mod config;
pub mod plot;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::group::{BandlimitedFunction, GroupTag, QuadratureRule};
use crate::index::{index_report, IndexReport};
use crate::linalg::C64;
use crate::operator::singular_values_csv;
use crate::peter_weyl::{forward_transform, plancherel_norm, quadrature_l2_norm, sample};
use crate::su2::{su2_quadrature_euler_with_exactness, su2_quadrature_tvs_with_exactness};

use config::{natural_truncation, Outputs, RunConfig, SymbolSource};
use verify::Suite;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_DISAGREE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "lie-toeplitz", version, about = "Toeplitz index computations on the circle and SU(2)")]
pub struct Cli {
    /// JSON run configuration.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Directory for output files (default: the working directory; `verify`
    /// writes its table only when this is given).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; results do not depend on this.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fredholm index of a Toeplitz operator by every requested method.
    Index(IndexArgs),
    /// Forward transform of a function given by coefficients or samples.
    Fourier(FourierArgs),
    /// Run invariant suites and print a pass/fail table.
    Verify(VerifyArgs),
    /// Log-log SVG of a singular-value CSV.
    Plot(PlotArgs),
}

#[derive(Debug, Args)]
pub struct IndexArgs {
    /// Builtin symbol, used when no config is given.
    #[arg(long)]
    pub symbol: Option<String>,
    /// Truncation bandwidth in natural units (spin on SU(2)).
    #[arg(long)]
    pub bandwidth: Option<f64>,
    /// Projection pattern.
    #[arg(long)]
    pub projection: Option<String>,
}

#[derive(Debug, Args)]
pub struct FourierArgs {
    /// Input file (coefficients or samples JSON); overrides the config.
    pub input: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SuiteArg {
    All,
    Plancherel,
    Symbols,
    Trace,
    Index,
    Quadrature,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::All => Suite::All,
            SuiteArg::Plancherel => Suite::Plancherel,
            SuiteArg::Symbols => Suite::Symbols,
            SuiteArg::Trace => Suite::Trace,
            SuiteArg::Index => Suite::Index,
            SuiteArg::Quadrature => Suite::Quadrature,
        }
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum, default_value = "all")]
    pub suite: SuiteArg,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    /// Singular-value CSV with `index,value` rows.
    pub input: PathBuf,
    /// Name of the SVG written under `--out`.
    #[arg(long, default_value = "singular_values.svg")]
    pub name: String,
}

/// Files produced by a command, held in memory until everything succeeded.
#[derive(Default)]
struct Artifacts {
    files: Vec<(String, Vec<u8>)>,
}

impl Artifacts {
    fn add(&mut self, name: &str, bytes: impl Into<Vec<u8>>) {
        self.files.push((name.to_string(), bytes.into()));
    }

    fn commit(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
        let mut done: Vec<PathBuf> = Vec::new();
        for (name, bytes) in &self.files {
            let path = dir.join(name);
            let tmp = dir.join(format!(".{name}.partial"));
            let r = std::fs::write(&tmp, bytes).and_then(|_| std::fs::rename(&tmp, &path));
            if let Err(e) = r {
                let _ = std::fs::remove_file(&tmp);
                for p in &done {
                    let _ = std::fs::remove_file(p);
                }
                return Err(Error::Io(format!("{}: {e}", path.display())));
            }
            done.push(path);
        }
        Ok(done)
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(stderr, "{e}")
            } else {
                write!(stdout, "{e}")
            };
            return code;
        }
    };
    let mut buf: Vec<u8> = Vec::new();
    let result = match cli.threads {
        Some(0) => Err(Error::InvalidParameter("--threads must be at least 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))
            .and_then(|pool| pool.install(|| dispatch(&cli, &mut buf))),
        None => dispatch(&cli, &mut buf),
    };
    let _ = stdout.write_all(&buf);
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn dispatch(cli: &Cli, stdout: &mut Vec<u8>) -> Result<i32> {
    match &cli.command {
        Command::Index(a) => cmd_index(cli, a, stdout),
        Command::Fourier(a) => cmd_fourier(cli, a, stdout),
        Command::Verify(a) => cmd_verify(cli, a, stdout),
        Command::Plot(a) => cmd_plot(cli, a, stdout),
    }
}

fn out_dir(cli: &Cli) -> PathBuf {
    cli.out.clone().unwrap_or_else(|| PathBuf::from("."))
}

fn io(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

fn index_config(cli: &Cli, a: &IndexArgs) -> Result<(RunConfig, Option<PathBuf>)> {
    match (&cli.config, &a.symbol) {
        (Some(_), Some(_)) => Err(Error::InvalidParameter("give either --config or --symbol, not both".into())),
        (Some(path), None) => {
            let mut c = RunConfig::from_path(path)?;
            if let Some(b) = a.bandwidth {
                c.bandwidth = b;
            }
            if let Some(p) = &a.projection {
                c.projection = config::ProjectionSource::Pattern(p.clone());
            }
            Ok((c, path.parent().map(Path::to_path_buf)))
        }
        (None, Some(name)) => {
            let group: GroupTag = name.split(':').next().unwrap_or("").parse()?;
            let bandwidth = a
                .bandwidth
                .ok_or_else(|| Error::InvalidParameter("--bandwidth is required with --symbol".into()))?;
            let c = RunConfig {
                group,
                symbol: SymbolSource::Builtin(name.clone()),
                projection: config::ProjectionSource::Pattern(a.projection.clone().unwrap_or_else(|| "hardy".into())),
                bandwidth,
                methods: None,
                m: None,
                trace_route: Default::default(),
                tau_rel: None,
                edge_width: None,
                delta_inv: None,
                inverse_bandwidth: None,
                outputs: Outputs::default(),
            };
            Ok((c, None))
        }
        (None, None) => Err(Error::InvalidParameter("index needs --config or --symbol".into())),
    }
}

fn cmd_index(cli: &Cli, a: &IndexArgs, stdout: &mut dyn Write) -> Result<i32> {
    let (config, base) = index_config(cli, a)?;
    let run = config.resolve(base.as_deref())?;
    let report: IndexReport = index_report(&run.symbol, &run.symbol_name, &run.projection, &run.trunc, &run.methods, &run.options);
    let mut files = Artifacts::default();
    let mut json = report.to_json();
    json.push('\n');
    files.add(&run.outputs.report, json);
    files.add(&run.outputs.csv, format!("{}\n{}\n", IndexReport::csv_header(), report.csv_row()));
    if let Some(s) = &report.summability {
        files.add(&run.outputs.singular_values, singular_values_csv(&s.singular_values));
    }
    files.commit(&out_dir(cli))?;
    writeln!(stdout, "{}", IndexReport::csv_header()).map_err(io)?;
    writeln!(stdout, "{}", report.csv_row()).map_err(io)?;
    Ok(if report.agreement { EXIT_OK } else { EXIT_DISAGREE })
}

/// Samples on a named rule, as read by `fourier`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleFile {
    pub group: GroupTag,
    /// `circle`, `euler` or `tvs`.
    pub scheme: String,
    pub exactness: u32,
    /// Output bandwidth in natural units.
    pub bandwidth: f64,
    pub values: Vec<[f64; 2]>,
}

/// Config for `fourier`: a coefficient source to resample, or raw samples.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FourierConfig {
    pub input: FourierInput,
    /// `euler` or `tvs` on SU(2); ignored on the circle.
    #[serde(default)]
    pub scheme: Option<String>,
    #[serde(default = "default_spectrum_name")]
    pub output: String,
}

fn default_spectrum_name() -> String {
    "spectrum.json".into()
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum FourierInput {
    Builtin(String),
    Coefficients(serde_json::Value),
    File(PathBuf),
    Samples(SampleFile),
}

fn rule(group: GroupTag, scheme: &str, exactness: u32) -> Result<QuadratureRule> {
    match (group, scheme) {
        (GroupTag::Circle, "circle") => Ok(crate::circle::circle_quadrature_with_exactness(exactness)),
        (GroupTag::Su2, "euler") => Ok(su2_quadrature_euler_with_exactness(exactness)),
        (GroupTag::Su2, "tvs") => Ok(su2_quadrature_tvs_with_exactness(exactness)),
        _ => Err(Error::InvalidParameter(format!("scheme `{scheme}` is not available on {group}"))),
    }
}

/// Reads a file that is either coefficient JSON or a [`SampleFile`].
fn read_fourier_file(path: &Path) -> Result<FourierInput> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    if value.get("values").is_some() {
        Ok(FourierInput::Samples(serde_json::from_value(value)?))
    } else {
        Ok(FourierInput::Coefficients(value))
    }
}

fn cmd_fourier(cli: &Cli, a: &FourierArgs, stdout: &mut dyn Write) -> Result<i32> {
    let (input, scheme, output, base) = match (&a.input, &cli.config) {
        (Some(p), _) => (read_fourier_file(p)?, None, default_spectrum_name(), None),
        (None, Some(c)) => {
            let text = std::fs::read_to_string(c).map_err(|e| Error::Io(format!("{}: {e}", c.display())))?;
            let fc: FourierConfig = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("config: {e}")))?;
            (fc.input, fc.scheme, fc.output, c.parent().map(Path::to_path_buf))
        }
        (None, None) => return Err(Error::InvalidParameter("fourier needs an input file or --config".into())),
    };
    let input = match input {
        FourierInput::File(p) => {
            let path = match &base {
                Some(b) if p.is_relative() => b.join(&p),
                _ => p,
            };
            read_fourier_file(&path)?
        }
        other => other,
    };
    let (samples, quad, trunc, f_bound, original) = match input {
        FourierInput::Samples(s) => {
            let quad = rule(s.group, &s.scheme, s.exactness)?;
            let trunc = natural_truncation(s.group, s.bandwidth)?;
            let v: Vec<C64> = s.values.iter().map(|p| C64::new(p[0], p[1])).collect();
            if v.len() != quad.len() {
                return Err(Error::SampleCount {
                    expected: quad.len(),
                    found: v.len(),
                });
            }
            (v, quad, trunc, trunc.bound, None)
        }
        src => {
            let f = match src {
                FourierInput::Builtin(name) => crate::builtin::builtin_symbol(&name)?,
                FourierInput::Coefficients(v) => BandlimitedFunction::from_json(&v.to_string())?,
                _ => unreachable!(),
            };
            let b = f.bound();
            let scheme = scheme.unwrap_or_else(|| if f.group() == GroupTag::Circle { "circle".into() } else { "euler".into() });
            let quad = rule(f.group(), &scheme, 2 * b)?;
            (sample(&f, &quad)?, quad, *f.trunc(), b, Some(f))
        }
    };
    let spec = forward_transform(&samples, &quad, &trunc, f_bound)?;
    let qn = quadrature_l2_norm(&samples, &quad)?;
    let pn = plancherel_norm(&spec);
    let defect = (qn - pn).abs();
    let mut files = Artifacts::default();
    let mut json = BandlimitedFunction::new(spec.clone()).to_json();
    json.push('\n');
    files.add(&output, json);
    files.commit(&out_dir(cli))?;
    writeln!(stdout, "quadrature nodes      {}", quad.len()).map_err(io)?;
    writeln!(stdout, "quadrature L2 norm    {qn:.15e}").map_err(io)?;
    writeln!(stdout, "plancherel norm       {pn:.15e}").map_err(io)?;
    writeln!(stdout, "plancherel defect     {defect:.3e}").map_err(io)?;
    if let Some(f) = original {
        writeln!(stdout, "round-trip deviation  {:.3e}", spec.max_abs_diff(f.spectrum())).map_err(io)?;
    }
    Ok(if defect <= 1e-10 * qn.max(1.0) { EXIT_OK } else { EXIT_DISAGREE })
}

fn cmd_verify(cli: &Cli, a: &VerifyArgs, stdout: &mut dyn Write) -> Result<i32> {
    let suite: Suite = a.suite.into();
    let checks = verify::run_suite(suite, cli.seed);
    let table = verify::format_table(&checks);
    if let Some(dir) = &cli.out {
        let mut files = Artifacts::default();
        files.add(&format!("verify_{}.txt", suite.name()), table.clone());
        files.commit(dir)?;
    }
    stdout.write_all(table.as_bytes()).map_err(io)?;
    Ok(if checks.iter().all(|c| c.pass) { EXIT_OK } else { EXIT_DISAGREE })
}

fn cmd_plot(cli: &Cli, a: &PlotArgs, stdout: &mut dyn Write) -> Result<i32> {
    let text = std::fs::read_to_string(&a.input).map_err(|e| Error::Io(format!("{}: {e}", a.input.display())))?;
    let points = plot::parse_singular_values(&text)?;
    let title = a
        .input
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let mut files = Artifacts::default();
    files.add(&a.name, plot::render_svg(&points, &title));
    let written = files.commit(&out_dir(cli))?;
    for p in written {
        writeln!(stdout, "{}", p.display()).map_err(io)?;
    }
    Ok(EXIT_OK)
}

//! Command-line surface. The binary is a thin wrapper around [`execute`].

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::orderstats::{
    cdf_second_largest, check_order, order_series, preferred_rh_method, rh_second_largest, write_series_csv, Order,
};
use crate::scenario::{OutputKind, Scenario};
use crate::theorems::{property_suite, run_theorem, FixtureName, SuitePolicy, TheoremId, TheoremVerdict};

#[derive(Debug, Parser)]
#[command(
    name = "secondlargest",
    about = "2-out-of-n lifetimes under exponentiated location-scale models"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate both systems at a point or on a grid.
    Eval(EvalArgs),
    /// Check a theorem on a scenario, or run a property suite with --suite.
    Check(CheckArgs),
    /// Run property suites for several theorems.
    Suite(SuiteArgs),
    /// List the compiled-in fixtures.
    Fixtures,
    /// Print the crate version.
    Version,
}

#[derive(Debug, Args)]
pub struct Source {
    #[arg(long, conflicts_with = "scenario")]
    pub fixture: Option<String>,
    #[arg(long)]
    pub scenario: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    St,
    Rh,
}

impl From<OrderArg> for Order {
    fn from(o: OrderArg) -> Order {
        match o {
            OrderArg::St => Order::St,
            OrderArg::Rh => Order::Rh,
        }
    }
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub source: Source,
    /// Grid as lo:hi[:points].
    #[arg(long)]
    pub grid: Option<GridSpec>,
    #[arg(long, conflicts_with_all = ["grid", "csv"])]
    pub at: Option<f64>,
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Series to emit; defaults to the order of the scenario's theorem.
    #[arg(long, value_enum)]
    pub order: Option<OrderArg>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long)]
    pub theorem: Option<String>,
    #[arg(long)]
    pub grid: Option<GridSpec>,
    /// Number of random trials; requires --theorem.
    #[arg(long, requires = "theorem")]
    pub suite: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the full report here.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SuiteArgs {
    /// Theorems to run; all of them when omitted.
    #[arg(long)]
    pub theorem: Vec<String>,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Inconsistent = 1,
    Error = 2,
}

impl Status {
    pub fn code(self) -> u8 {
        self as u8
    }
}

fn load(source: &Source) -> Result<Option<Scenario>> {
    match (&source.fixture, &source.scenario) {
        (Some(f), _) => Ok(Some(Scenario::from_fixture(f.parse::<FixtureName>()?))),
        (None, Some(p)) => Scenario::load(p).map(Some),
        (None, None) => Ok(None),
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write_csv(s: &Scenario, order: Order, grid: &GridSpec, out: impl Write) -> Result<()> {
    write_series_csv(out, order, &order_series(&s.x, &s.y, order, grid)?)
}

fn full_report(v: &TheoremVerdict) -> String {
    let mut text = v.to_string();
    for h in &v.hypothesis_results {
        text.push_str(&format!("\n{}: {}", h.name, if h.passed { "pass" } else { "FAIL" }));
        if !h.detail.is_empty() {
            text.push_str(&format!("\n  {}", h.detail.replace('\n', "\n  ")));
        }
    }
    text.push('\n');
    text
}

// Report output for a scenario without a theorem: both order checks.
fn order_report(s: &Scenario, grid: &GridSpec) -> Result<String> {
    let mut text = format!("{}\nX: {}\nY: {}\n", s.name, s.x, s.y);
    for order in [Order::St, Order::Rh] {
        text.push_str(&format!("{}\n", check_order(&s.x, &s.y, order, grid)?));
    }
    Ok(text)
}

fn write_outputs(s: &Scenario, grid: &GridSpec, verdict: Option<&TheoremVerdict>) -> Result<()> {
    for o in &s.outputs {
        let mut w = create(&o.path)?;
        match o.kind {
            OutputKind::Csv => write_csv(s, o.order.unwrap_or_else(|| s.default_order()), grid, &mut w)?,
            OutputKind::Report => {
                let text = match verdict {
                    Some(v) => full_report(v),
                    None => order_report(s, grid)?,
                };
                w.write_all(text.as_bytes())?;
            }
        }
        w.flush()?;
    }
    Ok(())
}

fn eval(args: &EvalArgs, out: &mut dyn Write) -> Result<Status> {
    let s = load(&args.source)?.ok_or_else(|| Error::Config {
        field: "eval".into(),
        reason: "needs --fixture or --scenario".into(),
    })?;
    if let Some(x) = args.at {
        let fx = cdf_second_largest(&s.x, x)?;
        let fy = cdf_second_largest(&s.y, x)?;
        writeln!(out, "x={x} F_X={fx} F_Y={fy}")?;
        let rh = |c| rh_second_largest(c, x, preferred_rh_method(c)).map(|r| r.to_string());
        match (rh(&s.x), rh(&s.y)) {
            (Ok(rx), Ok(ry)) => writeln!(out, "x={x} rh_X={rx} rh_Y={ry}")?,
            (Err(e), _) | (_, Err(e)) => writeln!(out, "x={x} rh unavailable: {e}")?,
        }
        return Ok(Status::Ok);
    }
    let grid = args.grid.unwrap_or(s.grid);
    let order = args.order.map(Order::from).unwrap_or_else(|| s.default_order());
    match &args.csv {
        Some(p) => {
            let mut w = create(p)?;
            write_csv(&s, order, &grid, &mut w)?;
            w.flush()?;
        }
        None if s.outputs.is_empty() => write_csv(&s, order, &grid, &mut *out)?,
        None => {}
    }
    write_outputs(&s, &grid, None)?;
    Ok(Status::Ok)
}

fn theorem(name: &str) -> Result<TheoremId> {
    name.parse()
}

fn check(args: &CheckArgs, out: &mut dyn Write) -> Result<Status> {
    if let Some(trials) = args.suite {
        let id = theorem(args.theorem.as_deref().unwrap_or_default())?;
        let r = property_suite(id, &SuitePolicy::default_for(id), trials, args.seed, args.grid)?;
        writeln!(out, "{}", r.summary())?;
        if let Some(p) = &args.report {
            let mut w = create(p)?;
            writeln!(w, "{r}")?;
            w.flush()?;
        }
        return Ok(if r.consistent() == r.trials {
            Status::Ok
        } else {
            Status::Inconsistent
        });
    }
    let s = load(&args.source)?.ok_or_else(|| Error::Config {
        field: "check".into(),
        reason: "needs --fixture, --scenario or --suite".into(),
    })?;
    let id = match (&args.theorem, s.theorem) {
        (Some(t), _) => theorem(t)?,
        (None, Some(t)) => t,
        (None, None) => {
            return Err(Error::Config {
                field: "theorem".into(),
                reason: "scenario names no theorem; pass --theorem".into(),
            })
        }
    };
    let grid = args.grid.unwrap_or(s.grid);
    let v = run_theorem(id, &s.x, &s.y, &grid)?;
    writeln!(out, "{}", v.record())?;
    if let Some(p) = &args.report {
        let mut w = create(p)?;
        w.write_all(full_report(&v).as_bytes())?;
        w.flush()?;
    }
    write_outputs(&s, &grid, Some(&v))?;
    Ok(if v.consistent { Status::Ok } else { Status::Inconsistent })
}

fn suite(args: &SuiteArgs, out: &mut dyn Write) -> Result<Status> {
    let ids = if args.theorem.is_empty() {
        TheoremId::ALL.to_vec()
    } else {
        args.theorem.iter().map(|t| theorem(t)).collect::<Result<_>>()?
    };
    let mut report = args.report.as_deref().map(create).transpose()?;
    let mut status = Status::Ok;
    for id in ids {
        match property_suite(id, &SuitePolicy::default_for(id), args.trials, args.seed, None) {
            Ok(r) => {
                writeln!(out, "{}", r.summary())?;
                if let Some(w) = report.as_mut() {
                    writeln!(w, "{r}")?;
                }
                if r.consistent() < r.trials {
                    status = Status::Inconsistent;
                }
            }
            // no hypothesis-satisfying draws under the default policy
            Err(e @ Error::PolicyExhausted { .. }) => writeln!(out, "{id} suite: skipped: {e}")?,
            Err(e) => return Err(e),
        }
    }
    if let Some(mut w) = report {
        w.flush()?;
    }
    Ok(status)
}

fn fixtures(out: &mut dyn Write) -> Result<Status> {
    for name in FixtureName::ALL {
        let s = Scenario::from_fixture(name);
        let fx = crate::theorems::Fixture::get(name);
        writeln!(
            out,
            "{:<10} {:<7} {} grid={} {}",
            name.as_str(),
            fx.theorem.as_str(),
            s.default_order(),
            fx.grid,
            fx.description
        )?;
    }
    Ok(Status::Ok)
}

/// Runs one command, writing its primary output to `out`.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<Status> {
    match &cli.command {
        Command::Eval(a) => eval(a, out),
        Command::Check(a) => check(a, out),
        Command::Suite(a) => suite(a, out),
        Command::Fixtures => fixtures(out),
        Command::Version => {
            writeln!(out, "secondlargest {}", env!("CARGO_PKG_VERSION"))?;
            Ok(Status::Ok)
        }
    }
}

/// Parses `args`, runs the command and maps errors to [`Status::Error`] with
/// a message on `err`. Usage errors are reported by clap with status 2.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> Status
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { Status::Error } else { Status::Ok };
        }
    };
    match execute(&cli, out) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            Status::Error
        }
    }
}

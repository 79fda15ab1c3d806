//! Argument parsing and dispatch for `hfk-doubler`.

pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hfk_core::doubling::{
    alexander_of_double, double_hfk, iterate_double, tau_double,
};
use hfk_core::knot_db::{self, KnotRecord, DATA_DIR_ENV};
use hfk_core::meridian::{guard, hfk_meridian, meridian_groups, meridian_sum_check};
use hfk_core::skein::skein_interpolate;
use hfk_core::surgery::hf_plus_one;
use hfk_core::verify::run_suite;
use hfk_core::{Clasp, CompanionData, GenusOneHFK};

pub use report::Report;

pub const EXIT_USAGE: u8 = 2;
pub const EXIT_DATA: u8 = 3;
pub const EXIT_INVARIANT: u8 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] hfk_core::Error),
    #[error("cannot write {path}: {message}")]
    Output { path: String, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Core(hfk_core::Error::InvalidArgument(_)) => EXIT_USAGE,
            CliError::Core(e) if e.is_invariant_failure() => EXIT_INVARIANT,
            CliError::Core(_) | CliError::Output { .. } => EXIT_DATA,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Record,
}

#[derive(Debug, Parser, PartialEq, Eq)]
#[command(name = "hfk-doubler", version, about = "Knot Floer homology of Whitehead doubles")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, PartialEq, Eq)]
pub struct KnotArg {
    /// Bundled key, a key under the data directory, or a record file.
    #[arg(long)]
    pub knot: String,
}

#[derive(Debug, Subcommand, PartialEq, Eq)]
pub enum Command {
    /// Knot Floer homology and tau of a twisted double.
    Double {
        #[command(flatten)]
        knot: KnotArg,
        #[arg(short, allow_negative_numbers = true)]
        t: i64,
        #[arg(long, default_value = "+", allow_hyphen_values = true)]
        clasp: Clasp,
    },
    /// Repeated doubling with a fixed twist and clasp.
    Iterate {
        #[command(flatten)]
        knot: KnotArg,
        #[arg(short)]
        n: usize,
        #[arg(short, allow_negative_numbers = true)]
        t: i64,
        #[arg(long, default_value = "+", allow_hyphen_values = true)]
        clasp: Clasp,
    },
    /// Tau of both doubles.
    Tau {
        #[command(flatten)]
        knot: KnotArg,
        #[arg(short, allow_negative_numbers = true)]
        t: i64,
    },
    /// Floer homology of +1 surgery on the positive double.
    Surgery {
        #[command(flatten)]
        knot: KnotArg,
        #[arg(short, allow_negative_numbers = true)]
        t: i64,
    },
    /// Knot Floer homology of the meridian in t-surgery.
    Meridian {
        #[command(flatten)]
        knot: KnotArg,
        #[arg(short, allow_negative_numbers = true)]
        t: i64,
        #[arg(short, allow_negative_numbers = true, conflicts_with = "all")]
        m: Option<i64>,
        #[arg(long)]
        all: bool,
    },
    /// Top groups along the skein sequence from t-high down to -t-high.
    Skein {
        #[command(flatten)]
        knot: KnotArg,
        #[arg(long)]
        t_high: i64,
    },
    /// Alexander polynomials of the doubles.
    Alexander {
        #[arg(short, allow_negative_numbers = true)]
        t: i64,
    },
    /// Full invariant suite.
    Verify {
        /// Repeatable; every bundled knot when absent.
        #[arg(long)]
        knot: Vec<String>,
        #[arg(long, default_value = "-12..12", allow_hyphen_values = true, value_parser = parse_range)]
        t_range: (i64, i64),
    },
    /// Knot records.
    Db {
        #[command(subcommand)]
        action: DbAction,
    },
}

#[derive(Debug, Subcommand, PartialEq, Eq)]
pub enum DbAction {
    List,
    Show { key: String },
}

/// `a..b` with `a <= b`, both inclusive.
pub fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected a..b, got '{s}'"))?;
    let a: i64 = a.trim().parse().map_err(|_| format!("bad bound '{a}'"))?;
    let b: i64 = b.trim().parse().map_err(|_| format!("bad bound '{b}'"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok((a, b))
}

/// `argv` includes the program name.
pub fn parse_command<I, T>(argv: I) -> Result<Cli, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    Cli::try_parse_from(argv)
}

fn companion(arg: &KnotArg) -> Result<(KnotRecord, CompanionData), CliError> {
    let record = knot_db::resolve(&arg.knot)?;
    let k = record.companion()?;
    Ok((record, k))
}

fn add_double(report: &mut Report, d: &GenusOneHFK) {
    let name = d.name();
    for (level, g) in [(1, &d.top), (0, &d.mid), (-1, &d.bot)] {
        report.group(&name, Some(level), g);
    }
}

fn describe<E: ToString>(r: Result<(), E>) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

/// Runs `cli`; `echo` is the command line recorded in the report.
pub fn run(cli: &Cli, echo: &str) -> Result<Report, CliError> {
    let mut r = Report::new(echo);
    match &cli.command {
        Command::Double { knot, t, clasp } => {
            let (_, k) = companion(knot)?;
            r.input("knot", &k.name);
            r.input("t", t);
            r.input("clasp", clasp);
            let d = double_hfk(&k, *t, *clasp)?;
            add_double(&mut r, &d);
            r.value("tau", d.tau);
            r.value("total rank", d.total_rank());
            r.value("d2 vanishes", d.d2_zero);
            r.value("d1 onto bottom level", d.d1_0_surjective);
            r.check(&d.name(), "symmetry, rank and Alexander identities", describe(d.check_invariants()));
        }
        Command::Iterate { knot, n, t, clasp } => {
            let (_, k) = companion(knot)?;
            r.input("knot", &k.name);
            r.input("n", n);
            r.input("t", t);
            r.input("clasp", clasp);
            for (i, d) in iterate_double(&k, *n, *t, *clasp)?.iter().enumerate() {
                add_double(&mut r, d);
                r.value(&format!("tau after {}", i + 1), d.tau);
                r.value(&format!("total rank after {}", i + 1), d.total_rank());
                r.check(&d.name(), "symmetry, rank and Alexander identities", describe(d.check_invariants()));
            }
        }
        Command::Tau { knot, t } => {
            let (_, k) = companion(knot)?;
            r.input("knot", &k.name);
            r.input("t", t);
            r.value("tau of companion", k.tau);
            for clasp in [Clasp::Positive, Clasp::Negative] {
                r.value(&format!("tau of D{clasp}"), tau_double(&k, *t, clasp));
            }
        }
        Command::Surgery { knot, t } => {
            let (_, k) = companion(knot)?;
            r.input("knot", &k.name);
            r.input("t", t);
            let h = hf_plus_one(&k, *t)?;
            r.group(&format!("HF of +1 surgery on D+({},{t})", k.name), None, &h);
            r.value("rank", h.rank());
            r.value("Euler characteristic", h.euler_characteristic()?);
            r.check(&k.name, "odd total rank", if h.rank() % 2 == 1 { Ok(()) } else { Err(format!("rank {}", h.rank())) });
        }
        Command::Meridian { knot, t, m, all: _ } => {
            let (_, k) = companion(knot)?;
            r.input("knot", &k.name);
            r.input("t", t);
            let groups = match m {
                Some(m) => {
                    r.input("m", m);
                    vec![hfk_meridian(&k, *t, *m)?]
                }
                None => meridian_groups(&k, *t)?,
            };
            for g in &groups {
                r.group(&format!("Spin^c {}", g.m), None, &g.group);
            }
            let within = t.abs() >= guard(&k);
            r.value("within stable range", within);
            if m.is_none() && within {
                let report = meridian_sum_check(&k, *t)?;
                r.value("total rank", report.meridian_rank);
                r.check(
                    &k.name,
                    "meridian groups sum to the top group of D+",
                    report.failures.first().map_or(Ok(()), |f| Err(f.clone())),
                );
            }
        }
        Command::Skein { knot, t_high } => {
            let (_, k) = companion(knot)?;
            r.input("knot", &k.name);
            r.input("t-high", t_high);
            for s in skein_interpolate(&k, *t_high)? {
                let name = format!("D+({},{})", k.name, s.t);
                r.group(&name, Some(1), &s.top);
                r.value(&format!("tau at t = {}", s.t), s.tau_current);
            }
        }
        Command::Alexander { t } => {
            r.input("t", t);
            for clasp in [Clasp::Positive, Clasp::Negative] {
                r.value(&format!("D{clasp}"), alexander_of_double(*t, clasp));
            }
        }
        Command::Verify { knot, t_range } => {
            let keys = if knot.is_empty() { knot_db::bundled_keys() } else { knot.clone() };
            r.input("knots", keys.join(", "));
            r.input("t range", format!("{}..{}", t_range.0, t_range.1));
            let records = keys
                .iter()
                .map(|key| knot_db::resolve(key))
                .collect::<hfk_core::Result<Vec<_>>>()?;
            for c in run_suite(&records, *t_range) {
                r.check(&c.knot, &c.check, if c.passed { Ok(()) } else { Err(c.detail) });
            }
        }
        Command::Db { action: DbAction::List } => {
            for key in knot_db::bundled_keys() {
                r.value(&key, "bundled");
            }
            if let Some(dir) = std::env::var_os(DATA_DIR_ENV) {
                let mut extra: Vec<String> = std::fs::read_dir(&dir)
                    .into_iter()
                    .flatten()
                    .flatten()
                    .filter_map(|e| e.file_name().to_str()?.strip_suffix(".json").map(String::from))
                    .collect();
                extra.sort();
                for key in extra {
                    r.value(&key, PathBuf::from(&dir).display());
                }
            }
        }
        Command::Db { action: DbAction::Show { key } } => {
            let record = knot_db::resolve(key)?;
            let c = &record.complex;
            r.input("knot", &record.key);
            let g = c.genus() as i64;
            for j in (-g..=g).rev() {
                r.group(&format!("HFK({})", record.key), Some(j), &c.hfk(j));
            }
            r.value("generators", c.generators().len());
            r.value("genus", g);
            r.value("tau", c.tau());
            r.value("Alexander polynomial", c.alexander_polynomial());
            r.check(&record.key, "complex is valid", describe(c.validate()));
            r.check(&record.key, "companion data satisfies exact sequences", describe(record.companion()?.validate()));
        }
    }
    Ok(r)
}

impl Cli {
    pub fn render(&self, report: &Report) -> String {
        match self.format {
            Format::Table => report.to_table(),
            Format::Record => report.to_record(),
        }
    }
}

/// Exit status for a finished report: failed checks count as invariant failures.
pub fn report_status(report: &Report) -> u8 {
    if report.passed() {
        0
    } else {
        EXIT_INVARIANT
    }
}

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use shtuka_core::doc::{self, Command, Format, Options, ProblemDocument, RingPreset, RingSpec};

/// Runs problem documents and the criterion battery.
///
/// Exit codes: 0 success, 1 a command failed, 2 the document could not be
/// read, parsed or validated.
#[derive(Parser, Debug)]
#[command(name = "shtuka", version)]
struct Cli {
    /// Problem document (JSON); `-` reads stdin.
    document: Option<PathBuf>,

    /// Precision N of power series (work in R[z]/(z^N)).
    #[arg(long, env = "SHTUKA_PRECISION")]
    precision: Option<usize>,

    /// Search bound for the nilpotence order d (capped at precision/2).
    #[arg(long = "dmax", env = "SHTUKA_DMAX")]
    d_max: Option<usize>,

    /// Bound for the exponent e in det F = unit·(z - zeta)^e.
    #[arg(long = "emax", env = "SHTUKA_EMAX")]
    e_max: Option<usize>,

    #[arg(long, env = "SHTUKA_SEED")]
    seed: Option<u64>,

    #[arg(long, value_enum, default_value = "human", env = "SHTUKA_FORMAT")]
    format: Format,

    /// Run criteria of the battery: `all` or a comma-separated list of ids.
    #[arg(long, env = "SHTUKA_SUITE")]
    suite: Option<String>,

    /// Record per-command wall-clock times.
    #[arg(long)]
    timings: bool,

    /// Write the report here instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn parse_suite(s: &str) -> Result<Option<Vec<u8>>, String> {
    if s.trim() == "all" {
        return Ok(None);
    }
    let ids = s
        .split(',')
        .map(|x| x.trim().parse::<u8>().ok().filter(|id| (1..=13).contains(id)).ok_or_else(|| format!("bad criterion id {x:?}")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Some(ids))
}

fn read_document(path: &PathBuf) -> std::io::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
    }
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("shtuka: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let suite = match cli.suite.as_deref().map(parse_suite).transpose() {
        Ok(s) => s,
        Err(e) => return fail(e),
    };
    let mut document = match (&cli.document, &suite) {
        (Some(p), _) => {
            let text = match read_document(p) {
                Ok(t) => t,
                Err(e) => return fail(format!("{}: {e}", p.display())),
            };
            match doc::parse(&text) {
                Ok(d) => d,
                Err(e) => return fail(e),
            }
        }
        (None, Some(_)) => ProblemDocument {
            version: doc::SCHEMA_VERSION,
            ring: RingSpec { preset: RingPreset::Fq { q: 2 }, zeta: None },
            options: Options::default(),
            objects: Default::default(),
            commands: vec![],
        },
        (None, None) => return fail("nothing to do: give a document or --suite"),
    };
    if let Some(criteria) = suite {
        document.commands.push(Command::VerifyPaper { criteria });
    }
    let overrides = Options {
        precision: cli.precision,
        d_max: cli.d_max,
        e_max: cli.e_max,
        seed: cli.seed,
        timings: cli.timings.then_some(true),
    };
    let report = match doc::run(&document, &overrides) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let text = doc::emit(&report, cli.format);
    match &cli.output {
        Some(p) => {
            if let Err(e) = std::fs::write(p, text) {
                return fail(format!("{}: {e}", p.display()));
            }
        }
        None => print!("{text}"),
    }
    if report.failed() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

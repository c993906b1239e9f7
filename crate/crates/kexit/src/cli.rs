//! The `kexit` command-line front end.
//!
//! Exit codes: 0 success, 1 oracle mismatch (`verify`), 2 argument or parse
//! error, 3 validation error, 4 internal limit exceeded.

use std::io::{Read, Write};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::arith::ArithError;
use crate::catalog::{self, CatalogError, Family, FamilySpec};
use crate::method::{build_table, Method};
use crate::model::{
    parse_degrees, parse_order, validate_with, ContextInput, KExitContext, ModelError,
    ValidateOptions,
};
use crate::oracle::verify_context;
use crate::render::{render, Format};

#[derive(Debug, Parser)]
#[command(
    name = "kexit",
    version,
    about = "Compute K-Exit tables from a group order and degree pattern"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build and print the K-Exit table of a group.
    Compute(ComputeArgs),
    /// Print the factorized order of a simple group from a family formula.
    Catalog(CatalogArgs),
    /// Cross-check every set against exact big-integer evaluation.
    Verify(InputArgs),
    /// List the built-in fixtures.
    Fixtures,
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Built-in fixture name (see `kexit fixtures`).
    #[arg(long, conflicts_with_all = ["order", "degrees", "input"])]
    fixture: Option<String>,
    /// Group order, e.g. "2^11*3*5*7^2*19*31^3" or [[2,11],[3,1],...].
    #[arg(long, requires = "degrees", conflicts_with = "input")]
    order: Option<String>,
    /// Degrees per ascending prime, e.g. "3,2,2,1,1,1".
    #[arg(long, requires = "order", conflicts_with = "input")]
    degrees: Option<String>,
    /// JSON file {"order": [[p,e],...], "degrees": [...]}; "-" reads stdin.
    #[arg(long)]
    input: Option<String>,
    /// Accept a degree pattern with an odd sum.
    #[arg(long)]
    allow_odd_degree_sum: bool,
}

#[derive(Debug, Args)]
struct ComputeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value = "text", value_parser = Format::from_str)]
    format: Format,
    /// Exit rule: H, L, or both.
    #[arg(long, default_value = "both", value_parser = parse_method)]
    method: Method,
    /// With --fixture, list cells where computed values differ from the published table.
    #[arg(long)]
    annotate_paper_diffs: bool,
}

#[derive(Debug, Args)]
struct CatalogArgs {
    /// alternating, psl2, psu3 or psu4.
    #[arg(long, value_parser = Family::from_str)]
    family: Family,
    /// n for the alternating family, q otherwise.
    #[arg(long)]
    param: u64,
    #[arg(long, default_value = "text", value_parser = parse_catalog_format)]
    format: Format,
}

fn parse_method(s: &str) -> Result<Method, String> {
    match s.to_ascii_lowercase().as_str() {
        "h" => Ok(Method::H),
        "l" => Ok(Method::L),
        "both" => Ok(Method::Both),
        _ => Err(format!("unknown method {s:?} (expected H, L or both)")),
    }
}

fn parse_catalog_format(s: &str) -> Result<Format, String> {
    match Format::from_str(s)? {
        f @ (Format::Text | Format::Json) => Ok(f),
        _ => Err("catalog output is text or json".into()),
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Model(ModelError),
    Catalog(CatalogError),
    Io(std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Model(ModelError::Parse(_)) => 2,
            CliError::Model(_) => 3,
            CliError::Catalog(CatalogError::UnknownFixture(_)) => 2,
            CliError::Catalog(CatalogError::Arith(ArithError::CompositeTooHard(_))) => 4,
            CliError::Catalog(CatalogError::Arith(_)) => 4,
            CliError::Catalog(_) => 3,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(m) => m.clone(),
            CliError::Model(e) => e.to_string(),
            CliError::Catalog(e) => e.to_string(),
            CliError::Io(e) => e.to_string(),
        }
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        CliError::Model(e)
    }
}

impl From<CatalogError> for CliError {
    fn from(e: CatalogError) -> Self {
        CliError::Catalog(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

/// Runs the CLI on `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                2
            } else {
                let _ = write!(stdout, "{e}");
                0
            };
            return code;
        }
    };
    match dispatch(cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message());
            e.exit_code()
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Compute(args) => compute(args, out, err),
        Command::Catalog(args) => catalog_order(args, out),
        Command::Verify(args) => verify(args, out),
        Command::Fixtures => {
            for f in catalog::fixtures() {
                writeln!(
                    out,
                    "{}\t{}\t|G| = {}\tD(G) = {}",
                    f.name,
                    f.group,
                    f.order(),
                    f.degrees()
                )?;
            }
            Ok(0)
        }
    }
}

fn load_context(args: &InputArgs) -> Result<KExitContext, CliError> {
    let options = ValidateOptions {
        allow_odd_degree_sum: args.allow_odd_degree_sum,
    };
    if let Some(name) = &args.fixture {
        let (order, degrees) = catalog::fixture(name)?;
        return Ok(validate_with(order, degrees, options)?);
    }
    if let Some(path) = &args.input {
        let mut text = String::new();
        if path == "-" {
            std::io::stdin().read_to_string(&mut text)?;
        } else {
            text = std::fs::read_to_string(path)?;
        }
        return Ok(ContextInput::from_json(&text)?.validate(options)?);
    }
    match (&args.order, &args.degrees) {
        (Some(order), Some(degrees)) => {
            let order = parse_order(order)?;
            let degrees = parse_degrees(degrees)?;
            Ok(validate_with(order, degrees, options)?)
        }
        _ => Err(CliError::Usage(
            "give --fixture, --input, or both --order and --degrees".into(),
        )),
    }
}

fn compute(args: ComputeArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let published = match (&args.input.fixture, args.annotate_paper_diffs) {
        (Some(name), true) => Some(catalog::find_fixture(name)?),
        (None, true) => {
            return Err(CliError::Usage(
                "--annotate-paper-diffs requires --fixture".into(),
            ))
        }
        (_, false) => None,
    };
    let ctx = load_context(&args.input)?;
    let table = build_table(&ctx, args.method);
    out.write_all(render(&table, args.format).as_bytes())?;

    if let Some(fixture) = published {
        let diffs = catalog::published_diffs(fixture.published, &table);
        // Keep machine formats parseable.
        let sink: &mut dyn Write = match args.format {
            Format::Text | Format::Markdown => {
                writeln!(out)?;
                out
            }
            Format::Csv | Format::Json => err,
        };
        if diffs.is_empty() {
            writeln!(
                sink,
                "no differences from the published {} table",
                fixture.group
            )?;
        } else {
            writeln!(
                sink,
                "differences from the published {} table:",
                fixture.group
            )?;
            for d in diffs {
                writeln!(sink, "  {d}")?;
            }
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct CatalogOutput {
    group: String,
    order: crate::model::GroupOrder,
}

fn catalog_order(args: CatalogArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let spec = FamilySpec::new(args.family, args.param);
    let order = catalog::family_order(spec)?;
    match args.format {
        Format::Json => {
            let json = serde_json::to_string(&CatalogOutput {
                group: spec.to_string(),
                order,
            })
            .expect("serializable");
            writeln!(out, "{json}")?;
        }
        _ => writeln!(out, "{spec}: |G| = {order}")?,
    }
    Ok(0)
}

fn verify(args: InputArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let ctx = load_context(&args)?;
    let mismatches = verify_context(&ctx);
    if mismatches.is_empty() {
        writeln!(
            out,
            "ok: theta, theta_bar, H and L agree with exact evaluation for all {} primes",
            ctx.order().len()
        )?;
        Ok(0)
    } else {
        for m in &mismatches {
            writeln!(out, "mismatch: {m}")?;
        }
        Ok(1)
    }
}

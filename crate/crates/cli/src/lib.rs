//! Workspace files, command dispatch and report emission for the `ttg` binary.

pub mod commands;
pub mod report;
pub mod workspace;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use commands::{Failure, Options};
use workspace::{parse_workspace, Oracle};

#[derive(Debug, Parser)]
#[command(
    name = "ttg",
    version,
    about = "Cohomological supports, Koszul objects and BGG checks for p-group modules"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Degree bound D for annihilator computations [default: 10]
    #[arg(long, global = true)]
    pub degree_bound: Option<i32>,
    /// Stabilization window W [default: 3]
    #[arg(long, global = true)]
    pub stabilize: Option<i32>,
    /// Extension degree m of F_{p^m} for rank-variety points [default: 2]
    #[arg(long, global = true)]
    pub ext_degree: Option<u32>,
    /// Support oracle [default: both]
    #[arg(long, global = true, value_parser = ["ann", "rank", "both"])]
    pub oracle: Option<String>,
    /// Largest p-power exponent tried by the F-isomorphism check [default: 3]
    #[arg(long, global = true)]
    pub tmax: Option<u32>,
    /// Truncation degree N of the BGG bimodule [default: 6]
    #[arg(long, global = true)]
    pub truncation: Option<u32>,
    /// Write the Hasse diagram here (lattice only)
    #[arg(long, global = true)]
    pub dot: Option<PathBuf>,
    /// Write the JSON report here as well as to stdout
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate a workspace
    Check { workspace: String },
    /// Cohomological support of a module
    Support { workspace: String, module: String },
    /// Koszul object of a module on an ideal
    Koszul {
        workspace: String,
        module: String,
        ideal: String,
    },
    /// Restrict a module to a subgroup and test the subgroup theorem
    Restrict {
        workspace: String,
        module: String,
        subgroup: String,
    },
    /// Induce a subgroup module and compare supports
    Induce {
        workspace: String,
        module: String,
        subgroup: String,
    },
    /// BGG checks: phi-check, bimodule, apply, ext, all
    Bgg {
        workspace: String,
        #[arg(default_value = "phi-check")]
        check: String,
    },
    /// Sub-lattice generated by the supports of named ideals or modules
    Lattice {
        workspace: String,
        #[arg(required = true)]
        names: Vec<String>,
    },
    /// Quillen checks: fiso DATUM, certify COHOMOLOGY, limit FAMILY
    Quillen {
        workspace: String,
        check: String,
        name: String,
    },
}

impl Command {
    fn workspace(&self) -> &str {
        match self {
            Command::Check { workspace }
            | Command::Support { workspace, .. }
            | Command::Koszul { workspace, .. }
            | Command::Restrict { workspace, .. }
            | Command::Induce { workspace, .. }
            | Command::Bgg { workspace, .. }
            | Command::Lattice { workspace, .. }
            | Command::Quillen { workspace, .. } => workspace,
        }
    }
}

/// Everything a run produces; the binary only prints and writes it.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunOutput {
    pub stdout: String,
    pub stderr: String,
    pub json: Option<String>,
    pub dot: Option<String>,
    pub code: i32,
}

fn resolve(cli: &Cli, ws: &workspace::Workspace) -> Options {
    let p = &ws.params;
    Options {
        degree_bound: cli
            .degree_bound
            .or(p.degree_bound)
            .unwrap_or(commands::DEFAULT_DEGREE_BOUND),
        stabilize: cli
            .stabilize
            .or(p.stabilize)
            .unwrap_or(commands::DEFAULT_STABILIZE),
        ext_degree: cli
            .ext_degree
            .or(p.ext_degree)
            .or(ws.ext_degree)
            .unwrap_or(commands::DEFAULT_EXT_DEGREE),
        oracle: cli
            .oracle
            .as_deref()
            .and_then(Oracle::parse)
            .or(p.oracle)
            .unwrap_or(Oracle::Both),
        tmax: cli.tmax.or(p.tmax).unwrap_or(commands::DEFAULT_TMAX),
        truncation: cli
            .truncation
            .or(p.truncation)
            .unwrap_or(commands::DEFAULT_TRUNCATION),
    }
}

pub fn execute(cli: &Cli) -> Result<commands::Outcome, Failure> {
    let path = cli.command.workspace();
    let ws = parse_workspace(std::path::Path::new(path)).map_err(Failure::Parse)?;
    let opts = resolve(cli, &ws);
    match &cli.command {
        Command::Check { .. } => {
            let result = serde_json::json!({
                "modules": ws.modules.keys().collect::<Vec<_>>(),
                "ideals": ws.ideals.keys().collect::<Vec<_>>(),
                "subgroups": ws.subgroups.keys().collect::<Vec<_>>(),
                "rings": ws.rings.keys().collect::<Vec<_>>(),
                "cohomology": ws.cohomology.keys().collect::<Vec<_>>(),
                "data": ws.data.keys().collect::<Vec<_>>(),
                "families": ws.families.keys().collect::<Vec<_>>(),
            });
            Ok(commands::Outcome {
                report: report::Report {
                    command: "check".into(),
                    inputs: serde_json::json!({ "workspace": path }),
                    result,
                    checks: vec![report::Check::new(
                        "parse",
                        report::Status::Pass,
                        "workspace is valid",
                    )],
                },
                dot: None,
            })
        }
        Command::Support { module, .. } => commands::support(&ws, path, module, &opts),
        Command::Koszul { module, ideal, .. } => commands::koszul(&ws, path, module, ideal, &opts),
        Command::Restrict {
            module, subgroup, ..
        } => commands::restrict(&ws, path, module, subgroup, &opts),
        Command::Induce {
            module, subgroup, ..
        } => commands::induce(&ws, path, module, subgroup, &opts),
        Command::Bgg { check, .. } => commands::bgg(&ws, path, check, &opts),
        Command::Lattice { names, .. } => commands::lattice(&ws, path, names, &opts),
        Command::Quillen { check, name, .. } => commands::quillen(&ws, path, check, name, &opts),
    }
}

/// Parse arguments and run one command. Exit codes: 0 all checks pass, 1 a check failed,
/// 2 usage or parse error, 3 budget exceeded.
pub fn run<I, T>(args: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                RunOutput {
                    stdout: text,
                    code,
                    ..Default::default()
                }
            } else {
                RunOutput {
                    stderr: text,
                    code,
                    ..Default::default()
                }
            };
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let json = out.report.to_json();
            let mut stderr = out.report.summary();
            if cli.dot.is_some() && out.dot.is_none() {
                stderr.push_str("note: --dot ignored, this command draws no diagram\n");
            }
            RunOutput {
                stdout: json.clone(),
                stderr,
                json: Some(json),
                dot: out.dot,
                code: if out.report.failed() { 1 } else { 0 },
            }
        }
        Err(f) => {
            let prefix = match &f {
                Failure::Parse(_) => format!("{}:", cli.command.workspace()),
                _ => String::new(),
            };
            let msg = f
                .message()
                .lines()
                .map(|l| format!("{prefix}{l}\n"))
                .collect::<String>();
            RunOutput {
                stderr: msg,
                code: f.exit_code(),
                ..Default::default()
            }
        }
    }
}

/// Writes `--json` and `--dot` files for a finished run.
pub fn write_files(args: &[OsString], out: &RunOutput) -> std::io::Result<()> {
    let Ok(cli) = Cli::try_parse_from(args) else {
        return Ok(());
    };
    if let (Some(p), Some(j)) = (&cli.json, &out.json) {
        std::fs::write(p, j)?;
    }
    if let (Some(p), Some(d)) = (&cli.dot, &out.dot) {
        std::fs::write(p, d)?;
    }
    Ok(())
}

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand};
use trigon::gf::GfError;
use trigon::pointline::PropertyViolation;
use trigon::*;

mod pipeline;

#[derive(Parser)]
#[command(
    name = "trigon",
    about = "Projective planes, point-line bijections and the polyhedra built from them"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate, check and dualize projective planes.
    #[command(subcommand)]
    Plane(PlaneCmd),
    /// Construct, search for and verify point-line bijections.
    #[command(subcommand)]
    Bijection(BijectionCmd),
    /// Build the presentation and polyhedron and run every check.
    Build(BuildArgs),
}

#[derive(Subcommand)]
enum PlaneCmd {
    /// Write PG(2, q).
    Gen {
        #[arg(long)]
        q: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check the plane axioms.
    Check { plane: PathBuf },
    /// Write the dual plane.
    Dual {
        plane: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum BijectionCmd {
    /// The trace-kernel bijection on PG(2, q).
    Trace {
        #[arg(long)]
        q: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Backtracking search for the least bijection with both properties.
    Search {
        plane: PathBuf,
        /// Maximum number of assignments tried.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check both properties of a bijection file.
    Verify { plane: PathBuf, bijection: PathBuf },
}

#[derive(Args)]
pub(crate) struct BuildArgs {
    #[arg(long)]
    pub plane: PathBuf,
    #[arg(long)]
    pub bijection: PathBuf,
    /// Triangle presentation with three vertices.
    #[arg(long, conflicts_with = "word", required_unless_present = "word")]
    pub triangle: bool,
    /// Polygon presentation driven by a word in a, b, c.
    #[arg(long)]
    pub word: Option<String>,
    #[arg(short, long)]
    pub output: PathBuf,
}

/// Failure with its exit code.
pub(crate) enum Failure {
    /// Exit 1.
    Verification(String),
    /// Exit 2.
    Usage(String),
    /// Exit 3.
    Search(String),
}

pub(crate) type CmdResult = Result<(), Failure>;

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Search(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Verification(m) | Failure::Usage(m) | Failure::Search(m) => m,
        }
    }
}

pub(crate) fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

pub(crate) fn write(path: &Path, text: &str) -> CmdResult {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(output: Option<&Path>, text: &str) -> CmdResult {
    match output {
        Some(path) => write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub(crate) fn load_plane(path: &Path) -> Result<Plane, Failure> {
    Plane::parse(&read(path)?)
        .map_err(|e| Failure::Verification(format!("{}: {e}", path.display())))
}

pub(crate) fn load_bijection(path: &Path, plane: &Plane) -> Result<PointLineBijection, Failure> {
    PointLineBijection::parse(&read(path)?, plane)
        .map_err(|e| Failure::Verification(format!("{}: {e}", path.display())))
}

fn tower(q: u32) -> Result<std::sync::Arc<FieldTower>, Failure> {
    tower_for_order(q).map_err(|e: GfError| Failure::Usage(format!("q={q}: {e}")))
}

pub(crate) fn certification_failure(c: &Certification) -> Option<String> {
    match c {
        Certification::Pass => None,
        Certification::Fail(v) => Some(match v {
            PropertyViolation::P1 { .. } | PropertyViolation::P2 { .. } => v.to_string(),
            other => format!("not a bijection: {other}"),
        }),
        Certification::Unchecked => Some("bijection was not checked".into()),
    }
}

fn plane_cmd(cmd: PlaneCmd) -> CmdResult {
    match cmd {
        PlaneCmd::Gen { q, output } => emit(output.as_deref(), &build_pg2(&tower(q)?).to_text()),
        PlaneCmd::Check { plane } => {
            let p = load_plane(&plane)?;
            let report = validate_plane(&p);
            if report.is_valid() {
                println!(
                    "{}: order {}, {} points, {} lines, incidence graph is a generalized 3-gon",
                    p.name(),
                    p.order(),
                    p.num_points(),
                    p.num_lines()
                );
                Ok(())
            } else {
                let lines: Vec<_> = report.violations.iter().map(ToString::to_string).collect();
                Err(Failure::Verification(format!(
                    "{} is not a projective plane:\n  {}",
                    p.name(),
                    lines.join("\n  ")
                )))
            }
        }
        PlaneCmd::Dual { plane, output } => {
            emit(output.as_deref(), &load_plane(&plane)?.dualize().to_text())
        }
    }
}

fn bijection_cmd(cmd: BijectionCmd) -> CmdResult {
    match cmd {
        BijectionCmd::Trace { q, output } => {
            let t = tower(q)?;
            let plane = build_pg2(&t);
            let bij = trace_bijection(&t, &plane).map_err(|e| match e {
                PointLineError::CharacteristicThree => {
                    Failure::Usage(format!("q={q}: {e}; use `bijection search`"))
                }
                e => Failure::Verification(e.to_string()),
            })?;
            if let Some(why) = certification_failure(bij.certification()) {
                return Err(Failure::Verification(format!(
                    "trace bijection on {}: {why}",
                    plane.name()
                )));
            }
            emit(output.as_deref(), &bij.to_text())
        }
        BijectionCmd::Search {
            plane,
            budget,
            jobs,
            output,
        } => {
            let p = load_plane(&plane)?;
            match search_bijection(&p, SearchConfig { budget, jobs }) {
                Ok(SearchOutcome::Found { bijection, nodes }) => {
                    eprintln!("found after {nodes} nodes");
                    emit(output.as_deref(), &bijection.to_text())
                }
                Ok(SearchOutcome::Exhausted { nodes }) => Err(Failure::Search(format!(
                    "no bijection with P1 and P2 on {} ({nodes} nodes searched)",
                    p.name()
                ))),
                Err(PointLineError::BudgetExceeded { nodes }) => Err(Failure::Search(format!(
                    "search budget exhausted after {nodes} nodes"
                ))),
                Err(e) => Err(Failure::Verification(e.to_string())),
            }
        }
        BijectionCmd::Verify { plane, bijection } => {
            let p = load_plane(&plane)?;
            let bij = load_bijection(&bijection, &p)?;
            match certification_failure(bij.certification()) {
                None => {
                    println!("{}: P1 and P2 hold", p.name());
                    Ok(())
                }
                Some(why) => Err(Failure::Verification(why)),
            }
        }
    }
}

fn version() -> String {
    format!(
        "{} (file format {})",
        env!("CARGO_PKG_VERSION"),
        trigon::FORMAT_VERSION
    )
}

fn main() -> ExitCode {
    let matches = Cli::command().version(version()).get_matches();
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let result = match cli.command {
        Command::Plane(cmd) => plane_cmd(cmd),
        Command::Bijection(cmd) => bijection_cmd(cmd),
        Command::Build(args) => pipeline::run(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

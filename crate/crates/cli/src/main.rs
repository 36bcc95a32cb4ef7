use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use pltg_cli::build::build;
use pltg_cli::commands::{run, Command};
use pltg_cli::tgf::{parse, QuantumKind, Workspace};

#[derive(Parser)]
#[command(name = "pltg", version, about = "Exact checks and constructions for piecewise-linear topological graphs")]
struct Cli {
    /// Input files in the text format; later files may refer to earlier ones.
    #[arg(short, long = "file", global = true)]
    files: Vec<PathBuf>,
    /// Write the command output here instead of stdout.
    #[arg(short, long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Quantum {
    Ball,
    Sphere,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the inputs in canonical form.
    Fmt,
    /// Build every declaration and report failures.
    Validate,
    /// Print the vertex classes fin, inf, sink, reg and sing.
    Classify { graph: String },
    /// Whether every vertex has a neighbourhood emitting a compact set of edges.
    Rowfinite { graph: String },
    /// Whether a subgraph is a regular closed subgraph.
    CheckSubgraph { subgraph: String },
    /// Whether a pair of maps is a regular factor map.
    CheckFactor { factor: String },
    /// Print the glued graph.
    Glue {
        glue: String,
        /// Name for the printed graph.
        #[arg(long = "as")]
        label: Option<String>,
    },
    /// The four regularity conditions of a gluing.
    CheckRegular { glue: String },
    /// The boundary condition on sinks, with its witness set.
    CheckBoundcond { glue: String },
    /// Emit the pullback certificate for a union as JSON.
    CheckTheorem {
        /// A glue name, optionally written `union=NAME`.
        glue: String,
    },
    /// Print the double suspension of a graph, repeated `times` times.
    Suspend {
        graph: String,
        #[arg(default_value_t = 1)]
        times: usize,
    },
    /// Print a quantum ball or sphere graph.
    Quantum { kind: Quantum, dim: usize },
    /// Breaking-vertex conditions and certificate for a discrete gluing, as JSON.
    DiscreteCheck { glue: String },
    /// Search for a graph isomorphism.
    Iso { a: String, b: String },
    /// Draw a graph or glued graph as SVG.
    Render { object: String },
}

fn load(files: &[PathBuf]) -> Result<Workspace, String> {
    let mut ws = Workspace::default();
    for path in files {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let part = parse(&text).map_err(|errs| {
            errs.iter().map(|e| format!("{}:{e}", path.display())).collect::<Vec<_>>().join("\n")
        })?;
        ws.merge(part).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    Ok(ws)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = match cli.command {
        Cmd::Fmt => Command::Fmt,
        Cmd::Validate => Command::Validate,
        Cmd::Classify { graph } => Command::Classify(graph),
        Cmd::Rowfinite { graph } => Command::RowFinite(graph),
        Cmd::CheckSubgraph { subgraph } => Command::CheckSubgraph(subgraph),
        Cmd::CheckFactor { factor } => Command::CheckFactor(factor),
        Cmd::Glue { glue, label } => Command::Glue { name: glue, label },
        Cmd::CheckRegular { glue } => Command::CheckRegular(glue),
        Cmd::CheckBoundcond { glue } => Command::CheckBoundcond(glue),
        Cmd::CheckTheorem { glue } => {
            Command::CheckTheorem(glue.strip_prefix("union=").map(str::to_string).unwrap_or(glue))
        }
        Cmd::Suspend { graph, times } => Command::Suspend { graph, times },
        Cmd::Quantum { kind, dim } => Command::Quantum {
            kind: match kind {
                Quantum::Ball => QuantumKind::Ball,
                Quantum::Sphere => QuantumKind::Sphere,
            },
            dim,
        },
        Cmd::DiscreteCheck { glue } => Command::DiscreteCheck(glue),
        Cmd::Iso { a, b } => Command::Iso(a, b),
        Cmd::Render { object } => Command::Render(object),
    };
    let ws = match load(&cli.files) {
        Ok(ws) => ws,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };
    let built = build(&ws);
    let mut out = String::new();
    match run(&command, &ws, &built, &mut out) {
        Ok(outcome) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &out).map_err(|e| format!("{}: {e}", path.display())),
                None => {
                    print!("{out}");
                    Ok(())
                }
            };
            match written {
                Ok(()) => ExitCode::from(outcome as u8),
                Err(e) => {
                    eprintln!("{e}");
                    ExitCode::from(2)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use chipfire::Exec;
use chipfire_cli::commands::{self, GonalityArgs, Output};
use chipfire_cli::server::{self, AppState};
use chipfire_cli::{input, CliError};
use clap::{Parser, Subcommand};

/// Exact chip-firing, rank and gonality on finite multigraphs.
///
/// GRAPH arguments take a JSON file, `-` for stdin, or a family name such
/// as `dodecahedron` or `cycle:7`. DIVISOR arguments take a JSON file or
/// inline JSON like '{"chips": [1, 0, -1]}'.
#[derive(Parser)]
#[command(name = "chipfire", version)]
struct Cli {
    /// Run every search on the current thread.
    #[arg(long, global = true)]
    sequential: bool,
    /// Pretty-print JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimum degree of a divisor of rank at least r.
    Gonality {
        graph: String,
        /// Give up after this many seconds.
        #[arg(long)]
        budget: Option<f64>,
        /// Give up after checking this many candidates.
        #[arg(long)]
        max_candidates: Option<u64>,
        /// Check every effective placement rather than reduced ones.
        #[arg(long)]
        raw_algorithm: bool,
        #[arg(long, default_value_t = 1)]
        rank: u64,
    },
    /// Rank of a divisor, with a removal that proves it.
    Rank { graph: String, divisor: String },
    /// Run the burning algorithm from q.
    Dhar {
        graph: String,
        divisor: String,
        #[arg(long, default_value_t = 0)]
        q: usize,
    },
    /// q-reduced form with the firing moves that reach it.
    Reduce {
        graph: String,
        divisor: String,
        #[arg(long, default_value_t = 0)]
        q: usize,
    },
    /// Decide the Dollar Game.
    Winnable {
        graph: String,
        divisor: String,
        /// Reduce toward this vertex (default: the first vertex in debt).
        #[arg(long)]
        q: Option<usize>,
    },
    /// Evaluate a scramble, bramble or tree-cut decomposition.
    Certify { graph: String, certificate: String },
    /// Collect lower and upper gonality bounds.
    Bounds {
        graph: String,
        #[arg(long = "certificate")]
        certificates: Vec<String>,
        /// Divisor claimed to have rank at least one.
        #[arg(long = "witness")]
        witnesses: Vec<String>,
    },
    /// Unwinnable placements on K_n against parking functions.
    Parking {
        #[arg(long)]
        n: usize,
    },
    /// Print a named graph.
    Generate {
        #[arg(long)]
        family: String,
        #[arg(long)]
        size: Option<usize>,
        /// Emit Graphviz DOT instead of JSON.
        #[arg(long)]
        dot: bool,
    },
    /// Gonality of the d-dimensional hypercube. Unbounded time beyond d = 3.
    Hypercube {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        budget: Option<f64>,
    },
    /// Serve the game API (and optionally a built web UI).
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        #[arg(long)]
        static_dir: Option<PathBuf>,
        /// Keep a JSON move log per session here.
        #[arg(long)]
        sessions_dir: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<Output, CliError> {
    let exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    };
    match cli.command {
        Command::Gonality {
            graph,
            budget,
            max_candidates,
            raw_algorithm,
            rank,
        } => {
            let g = input::graph(&graph)?;
            commands::gonality(
                &g,
                &GonalityArgs {
                    budget_secs: budget,
                    max_candidates,
                    raw: raw_algorithm,
                    rank,
                    exec,
                },
            )
        }
        Command::Rank { graph, divisor } => {
            let g = input::graph(&graph)?;
            commands::rank(&input::divisor(&g, &divisor)?, exec)
        }
        Command::Dhar { graph, divisor, q } => {
            let g = input::graph(&graph)?;
            commands::dhar(&input::divisor(&g, &divisor)?, q)
        }
        Command::Reduce { graph, divisor, q } => {
            let g = input::graph(&graph)?;
            commands::reduce(&input::divisor(&g, &divisor)?, q)
        }
        Command::Winnable { graph, divisor, q } => {
            let g = input::graph(&graph)?;
            commands::winnable(&input::divisor(&g, &divisor)?, q)
        }
        Command::Certify { graph, certificate } => {
            let g = input::graph(&graph)?;
            commands::certify(&g, &input::certificate(&g, &certificate)?, exec)
        }
        Command::Bounds {
            graph,
            certificates,
            witnesses,
        } => {
            let g = input::graph(&graph)?;
            let extra = commands::load_bounds_input(&g, &certificates, &witnesses)?;
            commands::bounds(&g, &extra, exec)
        }
        Command::Parking { n } => commands::parking(n, exec),
        Command::Generate { family, size, dot } => commands::generate(&family, size, dot),
        Command::Hypercube { dim, budget } => {
            let g = input::graph(&format!("hypercube:{dim}"))?;
            commands::gonality(
                &g,
                &GonalityArgs {
                    budget_secs: budget,
                    max_candidates: None,
                    raw: false,
                    rank: 1,
                    exec,
                },
            )
        }
        Command::Serve { .. } => unreachable!("handled in main"),
    }
}

fn serve(port: u16, host: String, static_dir: Option<PathBuf>, sessions_dir: Option<PathBuf>) -> ExitCode {
    let state = match sessions_dir {
        Some(dir) => match AppState::persistent(dir) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("{}", serde_json::json!({"error": format!("sessions dir: {e}")}));
                return ExitCode::from(1);
            }
        },
        None => AppState::in_memory(),
    };
    let runtime = tokio::runtime::Runtime::new().expect("tokio runtime");
    match runtime.block_on(server::serve(&host, port, state, static_dir)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", serde_json::json!({"error": e.to_string()}));
            ExitCode::from(1)
        }
    }
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors
    let cli = Cli::parse();
    if let Command::Serve {
        port,
        host,
        static_dir,
        sessions_dir,
    } = cli.command
    {
        return serve(port, host, static_dir, sessions_dir);
    }
    let pretty = cli.pretty;
    match run(cli) {
        Ok(Output::Json(v)) => {
            let text = if pretty {
                serde_json::to_string_pretty(&v)
            } else {
                serde_json::to_string(&v)
            };
            println!("{}", text.expect("values serialize"));
            ExitCode::SUCCESS
        }
        Ok(Output::Text(t)) => {
            print!("{t}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", serde_json::json!({"error": e.to_string()}));
            ExitCode::from(1)
        }
    }
}

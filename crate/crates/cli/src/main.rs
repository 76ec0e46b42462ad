use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use foon_cli::{
    cmd_merge, cmd_retrieve, cmd_stats, read_goal_file, AlgoChoice, CliError, RunConfig, Sources,
    StatsConfig, EXIT_CODES,
};
use foon_core::retrieval::DEFAULT_DEPTH_CEILING;

/// Retrieve task trees from a functional object-oriented network.
#[derive(Parser)]
#[command(name = "foon", version, after_help = EXIT_CODES)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Retrieve a task tree for one goal.
    #[command(after_help = EXIT_CODES)]
    Retrieve(RetrieveArgs),
    /// Merge subgraph files into one deduplicated graph.
    #[command(after_help = EXIT_CODES)]
    Merge {
        /// Subgraph files, merged in the order given.
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long, short)]
        out: PathBuf,
    },
    /// Compare tree sizes of every algorithm over a list of goals.
    #[command(after_help = EXIT_CODES)]
    Stats(StatsArgs),
}

#[derive(Args)]
struct SourceArgs {
    /// Subgraph file; repeat to merge several.
    #[arg(long = "foon", required = true)]
    foon: Vec<PathBuf>,
    /// Kitchen inventory (JSON).
    #[arg(long)]
    kitchen: PathBuf,
    /// Motion success rates, required by gbfs-h1.
    #[arg(long)]
    motions: Option<PathBuf>,
    /// Ingredient substitutions.
    #[arg(long)]
    subs: Option<PathBuf>,
    /// Treat goals as bare object names; fails if several states match.
    #[arg(long)]
    goal_by_name: bool,
    #[arg(long, default_value_t = DEFAULT_DEPTH_CEILING)]
    depth_ceiling: usize,
}

impl SourceArgs {
    fn sources(&self) -> Sources {
        Sources {
            foon_paths: self.foon.clone(),
            kitchen_path: self.kitchen.clone(),
            motions_path: self.motions.clone(),
            subs_path: self.subs.clone(),
        }
    }
}

#[derive(Args)]
struct RetrieveArgs {
    #[command(flatten)]
    src: SourceArgs,
    /// Goal object key (name|states|ingredients), or a name with --goal-by-name.
    #[arg(long)]
    goal: String,
    /// ids, gbfs-h1, gbfs-h2 or all.
    #[arg(long, default_value = "ids")]
    algo: AlgoChoice,
    /// Task tree output; printed to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Graphviz rendering of the tree.
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Stats CSV (goal,algorithm,units_in_tree,units_expanded).
    #[arg(long)]
    stats: Option<PathBuf>,
}

#[derive(Args)]
struct StatsArgs {
    #[command(flatten)]
    src: SourceArgs,
    /// Goal to compare; repeatable.
    #[arg(long)]
    goal: Vec<String>,
    /// File of goals, one per line.
    #[arg(long)]
    goal_file: Option<PathBuf>,
    /// Emit comma-separated values instead of an aligned table.
    #[arg(long)]
    csv: bool,
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Retrieve(args) => {
            let config = RunConfig {
                sources: args.src.sources(),
                goal: args.goal,
                goal_by_name: args.src.goal_by_name,
                algo: args.algo,
                depth_ceiling: args.src.depth_ceiling,
                out: args.out.clone(),
                dot: args.dot,
                stats: args.stats,
            };
            let report = cmd_retrieve(&config)?;
            if args.out.is_none() {
                for tree in &report.trees {
                    if report.trees.len() > 1 {
                        println!("# {}", tree.algorithm);
                    }
                    print!("{}", foon_core::serialize_subgraph(&tree.steps));
                }
            }
            eprint!("{}", report.stats_csv());
        }
        Command::Merge { inputs, out } => {
            let report = cmd_merge(&inputs, &out)?;
            for (path, n) in &report.per_file {
                eprintln!("{}: {n} units", path.display());
            }
            eprintln!("{} units before dedupe, {} after", report.before, report.after);
        }
        Command::Stats(args) => {
            let mut goals = args.goal;
            if let Some(path) = &args.goal_file {
                goals.extend(read_goal_file(path)?);
            }
            let config = StatsConfig {
                sources: args.src.sources(),
                goals,
                goal_by_name: args.src.goal_by_name,
                depth_ceiling: args.src.depth_ceiling,
            };
            let table = cmd_stats(&config)?;
            if args.csv {
                print!("{}", table.to_csv());
            } else {
                print!("{}", table.to_text());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

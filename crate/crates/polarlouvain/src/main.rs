//! Thin batch CLI over the library; see the crate examples for the
//! programmatic surface.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use polarlouvain::cli::{
    cmd_detect, cmd_export, cmd_score, cmd_shapley, cmd_sweep, cmd_synth, report_error,
    FileConfig, Overrides, RunConfig,
};
use polarlouvain::error::Result;
use polarlouvain::operators::{Grouping, Negation, OperatorConfig, Overlap, Symmetrizer};
use polarlouvain::polarization::{MatrixKind, NormMode};
use polarlouvain::synth::SyntheticSpec;

#[derive(Parser)]
#[command(
    name = "polarlouvain",
    about = "Community detection on graphs with two-pole attitude data",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Flags shared by the data-driven commands; every one of them may also be
/// set in the config file, with the flag taking precedence.
#[derive(Args, Debug, Default)]
struct SharedArgs {
    /// Flat key-value config file (TOML)
    #[arg(long)]
    config: Option<PathBuf>,
    /// Edge CSV (header: source,target[,weight])
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Membership CSV (header: node,eta_a,eta_b)
    #[arg(long)]
    membership: Option<PathBuf>,
    /// Grouping function id: max | probabilistic-sum
    #[arg(long)]
    grouping: Option<String>,
    /// Overlap function id: min | product | geometric-mean
    #[arg(long)]
    overlap: Option<String>,
    /// Negation id: standard
    #[arg(long)]
    negation: Option<String>,
    /// Symmetrizer id: max | min | mean
    #[arg(long)]
    symmetrizer: Option<String>,
    /// Blend weight on the adjacency, in [0,1]
    #[arg(long)]
    gamma: Option<f64>,
    /// Comma-separated gamma list for sweeps, e.g. 0.5,0.3,0
    #[arg(long, value_delimiter = ',')]
    gammas: Option<Vec<f64>>,
    /// RNG seed for node visiting order
    #[arg(long)]
    seed: Option<u64>,
    /// Rescale the measure matrix to the adjacency's mass before blending
    #[arg(long)]
    rescale: bool,
    /// Replace accumulated edge weights with 1 on load
    #[arg(long)]
    binarize: bool,
    /// Per-community normalizer: positive-pairs | all-pairs
    #[arg(long = "norm-mode")]
    norm_mode: Option<String>,
    /// Measure kind summarized into the blend: dialogue | risk
    #[arg(long)]
    kind: Option<String>,
    /// Output directory
    #[arg(long)]
    out: Option<PathBuf>,
}

impl SharedArgs {
    fn resolve(self) -> Result<RunConfig> {
        let file = match &self.config {
            Some(path) => FileConfig::load(path)?,
            None => FileConfig::default(),
        };
        let flags = Overrides {
            graph: self.graph,
            membership: self.membership,
            grouping: self.grouping,
            overlap: self.overlap,
            negation: self.negation,
            symmetrizer: self.symmetrizer,
            gamma: self.gamma,
            gammas: self.gammas,
            seed: self.seed,
            rescale: if self.rescale { Some(true) } else { None },
            binarize: if self.binarize { Some(true) } else { None },
            norm_mode: self.norm_mode,
            kind: self.kind,
            out: self.out,
        };
        RunConfig::resolve(flags, file)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Detect communities with the blended Louvain run and write artifacts
    Detect(SharedArgs),
    /// Run the baseline plus one detection per gamma and write the report
    Sweep(SharedArgs),
    /// Score a stored partition's cohesion against a membership table
    Score {
        /// partition.json produced by detect/sweep
        #[arg(long)]
        partition: PathBuf,
        /// Membership CSV covering exactly the partition's nodes
        #[arg(long)]
        membership: PathBuf,
        #[arg(long)]
        grouping: Option<String>,
        #[arg(long)]
        overlap: Option<String>,
        #[arg(long)]
        negation: Option<String>,
        #[arg(long = "norm-mode")]
        norm_mode: Option<String>,
    },
    /// Generate a planted two-pole benchmark graph and membership table
    Synth {
        #[arg(long, default_value_t = 30)]
        nodes_per_block: usize,
        #[arg(long, default_value_t = 2)]
        blocks: usize,
        #[arg(long, default_value_t = 0.3)]
        intra: f64,
        #[arg(long, default_value_t = 0.05)]
        inter: f64,
        /// Concentration of memberships near the block pole (>= 1)
        #[arg(long, default_value_t = 16.0)]
        sharpness: f64,
        /// Emit exact 0/1 memberships
        #[arg(long)]
        crisp: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Print the Shapley vector of the measure built from a membership table
    Shapley {
        #[arg(long)]
        membership: PathBuf,
        #[arg(long)]
        grouping: Option<String>,
        #[arg(long)]
        overlap: Option<String>,
        #[arg(long)]
        negation: Option<String>,
        /// dialogue | risk
        #[arg(long)]
        kind: Option<String>,
        /// Use the exact permutation average instead of the row-sum form
        #[arg(long)]
        oracle: bool,
    },
    /// Export a graph as DOT and node-link JSON
    Export {
        #[arg(long)]
        graph: PathBuf,
        /// Optional partition.json for community coloring
        #[arg(long)]
        partition: Option<PathBuf>,
        #[arg(long)]
        binarize: bool,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
}

fn parse_operators(
    grouping: Option<String>,
    overlap: Option<String>,
    negation: Option<String>,
) -> Result<OperatorConfig> {
    Ok(OperatorConfig {
        grouping: grouping.map_or(Ok(Grouping::Max), |s| s.parse())?,
        overlap: overlap.map_or(Ok(Overlap::Product), |s| s.parse())?,
        negation: negation.map_or(Ok(Negation::Standard), |s| s.parse())?,
        symmetrizer: Symmetrizer::Mean,
    })
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Detect(args) => cmd_detect(&args.resolve()?),
        Command::Sweep(args) => cmd_sweep(&args.resolve()?),
        Command::Score {
            partition,
            membership,
            grouping,
            overlap,
            negation,
            norm_mode,
        } => {
            let operators = parse_operators(grouping, overlap, negation)?;
            let mode = norm_mode.map_or(Ok(NormMode::PositivePairs), |s| s.parse())?;
            let report = cmd_score(&partition, &membership, &operators, mode)?;
            print!("{report}");
            Ok(())
        }
        Command::Synth {
            nodes_per_block,
            blocks,
            intra,
            inter,
            sharpness,
            crisp,
            seed,
            out,
        } => {
            let spec = SyntheticSpec {
                nodes_per_block,
                blocks,
                intra_prob: intra,
                inter_prob: inter,
                pole_sharpness: sharpness,
                crisp,
                seed,
            };
            cmd_synth(&spec, &out)
        }
        Command::Shapley {
            membership,
            grouping,
            overlap,
            negation,
            kind,
            oracle,
        } => {
            let operators = parse_operators(grouping, overlap, negation)?;
            let kind = match kind.as_deref() {
                None | Some("dialogue") => MatrixKind::Dialogue,
                Some("risk") => MatrixKind::Risk,
                Some(other) => {
                    return Err(polarlouvain::Error::Config(format!(
                        "unknown measure kind {other:?} (expected risk or dialogue)"
                    )))
                }
            };
            let report = cmd_shapley(&membership, &operators, kind, oracle)?;
            print!("{report}");
            Ok(())
        }
        Command::Export {
            graph,
            partition,
            binarize,
            out,
        } => cmd_export(&graph, partition.as_deref(), binarize, &out),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => ExitCode::from(report_error(&err) as u8),
    }
}

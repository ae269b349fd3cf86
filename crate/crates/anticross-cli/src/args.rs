//! Command-line surface: one subcommand per pipeline stage, with shared
//! reproducibility flags. The default output directory comes from
//! `--out-dir`, then the `ANTICROSS_OUT_DIR` environment variable, then the
//! current directory.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "anticross",
    version,
    about = "Predict and measure avoided level crossings in MaxCut quantum annealing"
)]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Cmd,

    /// Directory for output files (falls back to $ANTICROSS_OUT_DIR, then ".").
    #[arg(long, global = true)]
    pub out_dir: Option<PathBuf>,

    /// Recorded in every output for provenance. All numeric kernels use
    /// fixed internal seeds, so outputs are byte-identical for equal configs
    /// regardless of this value.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Node whose side is pinned to break the global flip symmetry.
    #[arg(long, global = true, default_value_t = 0)]
    pub fixed_node: usize,

    /// Cap on the number of free bits enumerated exhaustively (2^cap states).
    #[arg(long, global = true)]
    pub enum_cap: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Write a generated graph as a canonical edge-list file.
    Generate {
        #[command(subcommand)]
        family: GenFamily,
        /// Output file path (default: a family-derived name in the output
        /// directory).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify an instance: spectrum statistics, excited-level structure,
    /// crossing verdict, and the perturbative validity report, as JSON.
    Analyze {
        /// Edge-list file.
        graph: PathBuf,
        /// Output file path (default: `<stem>.analysis.json`).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Scan the instantaneous gap over an `s` grid; CSV curve plus a JSON
    /// sidecar holding the refined minimum.
    Gapscan {
        /// Edge-list file.
        graph: PathBuf,
        /// Uniform grid size on [0, 1], endpoints included.
        #[arg(long, default_value_t = 201)]
        grid: usize,
        /// Skip the golden-section polish of the minimum.
        #[arg(long)]
        no_refine: bool,
        /// Output base path (default: `<stem>.gapscan`); writes `.csv` and
        /// `.json`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integrate the Schrödinger equation for each annealing time and report
    /// the final optimum occupation.
    Evolve {
        /// Edge-list file.
        graph: PathBuf,
        /// Comma-separated list of annealing times.
        #[arg(long, value_delimiter = ',', required = true)]
        t_max: Vec<f64>,
        /// Integrator step override (default: a conservative instance-sized
        /// step). Halve it when the norm-drift monitor refuses a long run.
        #[arg(long)]
        dt: Option<f64>,
        /// Output file path (default: `<stem>.evolve.csv`).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Instantaneous ground/first-excited overlaps with the final optimum
    /// basis state across an `s` grid.
    Overlaps {
        /// Edge-list file.
        graph: PathBuf,
        /// Uniform grid size on [0, 1], endpoints included.
        #[arg(long, default_value_t = 201)]
        grid: usize,
        /// Output file path (default: `<stem>.overlaps.csv`).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Scan minimum gaps across a block-family parameter and fit the
    /// exponential trend.
    Sweep {
        /// Which family parameter varies.
        #[arg(long, value_enum, default_value_t = Vary::R)]
        vary: Vary,
        /// Block size r (start value when varying r).
        #[arg(long, default_value_t = 3)]
        r: usize,
        /// Block size l.
        #[arg(long, default_value_t = 3)]
        l: usize,
        /// Path length k (start value when varying k).
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Inclusive lower end of the varied parameter.
        #[arg(long)]
        min: usize,
        /// Inclusive upper end of the varied parameter.
        #[arg(long)]
        max: usize,
        /// Uniform grid size per instance.
        #[arg(long, default_value_t = 201)]
        grid: usize,
        /// Skip the golden-section polish of each minimum.
        #[arg(long)]
        no_refine: bool,
        /// Worker threads (default: the CPU count).
        #[arg(long)]
        jobs: Option<usize>,
        /// Output base path (default: a family-derived name); writes `.csv`
        /// and `.json`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenFamily {
    /// Even cycle on n nodes.
    Cycle {
        #[arg(long)]
        n: usize,
    },
    /// Two complete-bipartite blocks joined by two parallel paths.
    Grk {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        k: usize,
    },
    /// Complete bipartite graph on a + b nodes.
    Kab {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Vary {
    /// Vary the first block size r.
    R,
    /// Vary the path length k.
    K,
}

impl Vary {
    pub fn as_str(self) -> &'static str {
        match self {
            Vary::R => "r",
            Vary::K => "k",
        }
    }
}

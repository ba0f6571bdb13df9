use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod report;

use report::{CliError, Format};

#[derive(Debug, Parser)]
#[command(
    name = "pathsys",
    version,
    about = "Consistent path systems: checks, metrization, generators and counts"
)]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Wall-clock limit in seconds for long searches.
    #[arg(long, global = true, default_value_t = 1800)]
    budget: u64,
    #[arg(long, global = true, conflicts_with = "tsv")]
    json: bool,
    #[arg(long, global = true)]
    tsv: bool,
    /// Worker threads for enumeration and closure (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Consistency, diameter, and optionally neighborliness in a graph.
    Check {
        system: PathBuf,
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    #[command(subcommand)]
    Resume(ResumeCmd),
    #[command(subcommand)]
    Metrize(MetrizeCmd),
    /// Shortest paths of a weighted graph, if unique.
    Induce { weights: PathBuf },
    /// Triples forced by a triple set.
    Closure {
        triples: PathBuf,
        /// Read a path system and use its colinear triples.
        #[arg(long)]
        system: bool,
    },
    #[command(subcommand)]
    Gen(GenCmd),
    #[command(subcommand)]
    Count(CountCmd),
    #[command(subcommand)]
    Vc(VcCmd),
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Debug, Subcommand)]
enum ResumeCmd {
    /// The canonical résumé.
    Extract { system: PathBuf },
    /// Rebuild the system from a résumé.
    Recover { resume: PathBuf },
    /// Every résumé of a system.
    All {
        system: PathBuf,
        #[arg(long, default_value_t = pathsys::resume::DEFAULT_RESUME_CAP)]
        cap: u64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Metric,
    Strict,
    Pseudo,
}

#[derive(Debug, Subcommand)]
enum MetrizeCmd {
    /// Decide metrizability of a path system.
    Test {
        system: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Strict)]
        mode: Mode,
    },
    /// Witness of non-realizability for a triple set.
    Witness {
        triples: PathBuf,
        #[arg(long)]
        system: bool,
        /// Verify this witness instead of computing one.
        #[arg(long)]
        check: Option<PathBuf>,
        /// Also search for an integral witness.
        #[arg(long)]
        integral: bool,
    },
    /// Edge weights inducing a strictly metric system.
    Realize { system: PathBuf },
}

#[derive(Debug, Subcommand)]
enum GenCmd {
    /// Every neighborly diameter-2 system of a graph.
    Diam2 {
        graph: PathBuf,
        #[arg(long, default_value_t = pathsys::generators::DEFAULT_DIAM2_CAP)]
        cap: u64,
    },
    /// A certified system on K_{h,h}.
    Bipartite {
        #[arg(long)]
        h: usize,
        /// One character per pair x_i x_j in lexicographic order: 1 routes via y_i, 2 via y_j.
        #[arg(long)]
        choices: Option<String>,
    },
    /// A certified system on G(n, p) from a perfect matching.
    GnpMatching(GnpArgs),
    /// Every monotone matrix of order n.
    Monotone {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = pathsys::generators::DEFAULT_MONOTONE_CAP)]
        cap: usize,
    },
    /// The join of an anticlique and a clique.
    Join {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        gamma: Option<String>,
    },
}

#[derive(Debug, Args)]
struct GnpArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "1/2")]
    p: String,
}

#[derive(Debug, Subcommand)]
enum CountCmd {
    /// Neighborly diameter-2 systems of a graph.
    D2 { graph: PathBuf },
    /// Consistent systems on K_n, by enumeration.
    Consistent {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = pathsys::counting::DEFAULT_CONSISTENT_CAP)]
        cap: usize,
        #[arg(long)]
        list: bool,
    },
    /// Plane partitions in an r × s × t box.
    Boxed {
        #[arg(short)]
        r: u64,
        #[arg(short)]
        s: u64,
        #[arg(short)]
        t: u64,
        /// Also count by brute force.
        #[arg(long)]
        brute: bool,
    },
    /// Symmetric plane partitions in an r × r × t box.
    Sym {
        #[arg(short)]
        r: u64,
        #[arg(short)]
        t: u64,
        #[arg(long)]
        brute: bool,
    },
    /// Monotone matrices of order n.
    Monotone {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = pathsys::generators::DEFAULT_MONOTONE_CAP)]
        cap: usize,
    },
}

#[derive(Debug, Subcommand)]
enum VcCmd {
    /// Vertex sets of a system's paths plus singletons and the empty set.
    Family { system: PathBuf },
    /// VC dimension of a set system.
    Dim { sets: PathBuf },
    /// A maximum class of VC dimension d on [n] from a random complex.
    Build {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value = "7/10")]
        p: String,
        #[arg(long, default_value_t = 10)]
        attempts: u64,
        #[arg(long, value_enum, default_value_t = ChooserArg::Smallest)]
        chooser: ChooserArg,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ChooserArg {
    Smallest,
    Random,
}

#[derive(Debug, Subcommand)]
enum VerifyCmd {
    /// The eight-point triple set with a fractional but no integral witness.
    PaperExample,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k).build_global() {
            eprintln!("pathsys: {e}");
            return ExitCode::from(2);
        }
    }
    let format = if cli.json {
        Format::Json
    } else if cli.tsv {
        Format::Tsv
    } else {
        Format::Text
    };
    match commands::run(&cli) {
        Ok(report) => {
            print!("{}", report.render(format));
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("pathsys: {e}");
            ExitCode::from(2)
        }
    }
}

pub(crate) fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "monoforge", version, about = "Constructions and verifiers for monotone circuit lower-bound objects")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Global {
    /// Seed for every randomized step; required by randomized subcommands.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Monte Carlo trial count.
    #[arg(long, global = true)]
    pub trials: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Mode::Exact)]
    pub mode: Mode,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    /// Worker threads. Affects speed only.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub threads: Option<usize>,
    /// Write the command's table, if it has one, as CSV.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Mc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    F2,
    Real,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Tiered,
    Classical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Log {
    Two,
    E,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Graph polynomials and their depth-3 circuits.
    #[command(subcommand)]
    Poly(PolyCmd),
    /// Reed–Solomon codes and their binary expansions.
    #[command(subcommand)]
    Code(CodeCmd),
    /// The yes/no input distributions.
    #[command(subcommand)]
    Dist(DistCmd),
    /// Sparse 0/1 matrices.
    #[command(subcommand)]
    Matrix(MatrixCmd),
    /// Rank-function evaluation.
    #[command(subcommand)]
    Rank(RankCmd),
    /// Cauchy–Binet expansion.
    #[command(subcommand)]
    Cb(CbCmd),
    /// Sunflowers, plucking and DNF approximation.
    #[command(subcommand)]
    Approx(ApproxCmd),
    /// End-to-end preset pipelines.
    Experiment(ExperimentArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GraphArgs {
    /// Graph file: `graph <n>` then one 1-based `u v` per line.
    #[arg(long, conflicts_with = "named")]
    pub graph: Option<PathBuf>,
    /// Built-in graph: petersen, dodecahedron, cycle:N, complete:N, empty:N, mobius:N.
    #[arg(long)]
    pub named: Option<String>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PolyCmd {
    /// Build Q_{k,G}; P_G when k is omitted.
    Build {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Build the depth-3 circuit for Q_{k,G}.
    Sps {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        k: usize,
    },
    /// Compare a circuit with a polynomial: the graph construction, or files.
    CheckIdentity {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        k: Option<usize>,
        /// Arithmetic circuit JSON (with --poly).
        #[arg(long, requires = "poly")]
        circuit: Option<PathBuf>,
        /// Polynomial JSON (with --circuit).
        #[arg(long, requires = "circuit")]
        poly: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CodeArgs {
    /// Field GF(2^l).
    #[arg(long)]
    pub l: u32,
    /// Message length over GF(2^l).
    #[arg(long)]
    pub n: usize,
    /// Block length over GF(2^l).
    #[arg(long)]
    pub m: usize,
    /// Modulus as an integer bit pattern; a fixed irreducible one by default.
    #[arg(long)]
    pub modulus: Option<u32>,
    /// Evaluation points, comma separated; 0..m-1 by default.
    #[arg(long, value_delimiter = ',')]
    pub points: Option<Vec<u32>>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CodeCmd {
    /// The generator over GF(2^l) and its distances.
    Rs(CodeArgs),
    /// The binary code obtained by expanding over the polynomial basis.
    Expand(CodeArgs),
    /// Distances of both codes, the sandwich bounds, and the size bound.
    Stats {
        #[command(flatten)]
        code: CodeArgs,
        /// Constant in the exponent of the size bound.
        #[arg(long, default_value_t = 10.0)]
        b: f64,
    },
    /// t-wise independence of a uniform codeword; t = d⊥ − 1 by default.
    Independence {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        t: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DistKindArg {
    D0,
    D1,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistCmd {
    /// Draw samples and evaluate f_M on each; D1 also needs a weight.
    Sample {
        #[arg(long, value_enum)]
        kind: DistKindArg,
        /// Matrix file (`f2 …` for --field f2, `q01 …` for --field real).
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, value_enum, default_value_t = Field::F2)]
        field: Field,
        /// D1 weight.
        #[arg(long = "W")]
        weight: Option<usize>,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// Exact Pr[A ⊆ supp x] for uniform weight-W x against (W/m)^|A|.
    Spread {
        #[arg(long)]
        m: usize,
        #[arg(long = "W")]
        weight: usize,
        #[arg(long)]
        kmax: usize,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatrixCmd {
    /// Sample a sparse n × m matrix with columns of weight at most s.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: Option<usize>,
        /// Columns; n² by default.
        #[arg(long)]
        m: Option<usize>,
        /// Also write the matrix in `q01` form here.
        #[arg(long)]
        #[serde(skip)]
        save: Option<PathBuf>,
    },
    /// Check the three well-behavedness properties.
    WellBehaved {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        /// Containment threshold; 10k by default.
        #[arg(long)]
        c: Option<usize>,
        #[arg(long, default_value_t = 8)]
        t_max: usize,
        /// Subset size for the full-rank property.
        #[arg(long = "W")]
        weight: Option<usize>,
        #[arg(long, default_value_t = 2000)]
        tuple_trials: usize,
        #[arg(long, default_value_t = 0.01)]
        delta: f64,
        #[arg(long, value_enum, default_value_t = Log::Two)]
        log: Log,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RankCmd {
    /// f_M(x): whether the columns selected by x have full row rank.
    Eval {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, value_enum, default_value_t = Field::F2)]
        field: Field,
        /// 0/1 string of length m.
        #[arg(long)]
        x: String,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CbCmd {
    /// det(M·diag(x)·Mᵀ) against the sum over column subsets.
    Verify {
        /// Matrix file in `q01` form.
        #[arg(long)]
        matrix: PathBuf,
        /// Use the leading rows only.
        #[arg(long)]
        rows: Option<usize>,
        /// Use the leading columns only.
        #[arg(long)]
        cols: Option<usize>,
    },
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ApproxParams {
    #[arg(long)]
    pub w: usize,
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub eps: f64,
    #[arg(long, value_enum, default_value_t = Strategy::Tiered)]
    pub strategy: Strategy,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ApproxCmd {
    /// Approximate a monotone Boolean circuit gate by gate.
    Run {
        /// Boolean circuit JSON.
        #[arg(long)]
        circuit: PathBuf,
        /// Distribution: cube, weight:W, biased:P/Q, point:BITS, explicit:FILE, d0f2:FILE, d0real:FILE.
        #[arg(long)]
        d0: String,
        #[arg(long)]
        d1: String,
        /// Number of coordinates; taken from the circuit by default.
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        params: ApproxParams,
        /// Spreadness of D1.
        #[arg(long)]
        q: Option<f64>,
        /// Independence of D0.
        #[arg(long)]
        t: Option<usize>,
    },
    /// Pluck a set family until it is r-small.
    Pluck {
        /// Set family JSON `{"n": …, "sets": [[…], …]}`, 0-based.
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        d0: String,
        #[command(flatten)]
        params: ApproxParams,
    },
    /// Test chosen members, or a classical sunflower found with --r.
    Sunflower {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        d0: String,
        #[arg(long)]
        eps: f64,
        /// Indices into the family's sorted set list, comma separated.
        #[arg(long, value_delimiter = ',', conflicts_with = "r")]
        members: Option<Vec<usize>>,
        /// Petal count for a classical sunflower search.
        #[arg(long)]
        r: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum PresetName {
    #[value(name = "thm-main1")]
    #[serde(rename = "thm-main1")]
    Main1,
    #[value(name = "thm-main4")]
    #[serde(rename = "thm-main4")]
    Main4,
    #[value(name = "thm-main3")]
    #[serde(rename = "thm-main3")]
    Main3,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ExperimentArgs {
    #[arg(value_enum, required_unless_present = "preset", conflicts_with = "preset")]
    pub name: Option<PresetName>,
    #[arg(long, value_enum)]
    pub preset: Option<PresetName>,
    /// Override the preset's size parameter.
    #[arg(long)]
    pub n: Option<usize>,
}

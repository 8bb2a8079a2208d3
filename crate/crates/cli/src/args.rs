use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "flag", version, about = "Exact computations on flag Pfaffian systems")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Worker threads for verbs that process several codes.
    #[arg(long, default_value_t = 1, global = true)]
    pub jobs: usize,
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
pub enum Verb {
    /// Pseudo-normal form of a code.
    Model {
        #[arg(long)]
        code: String,
        /// Also locate the singular locus by seeded sampling.
        #[arg(long)]
        locus: bool,
    },
    /// Derived flag of a model or of explicit forms.
    Derive(SystemArgs),
    /// Class and Cauchy characteristics at a point.
    Class {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        point: Option<String>,
        /// Use the derived system `S_level` instead of `S`.
        #[arg(long, default_value_t = 0)]
        level: usize,
    },
    /// Small growth vector of the annihilating distribution at a point.
    Growth {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        point: Option<String>,
        /// Defaults to the chart dimension plus two.
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Isotropy conditions at the origin.
    Isotropy {
        #[arg(long)]
        code: String,
        #[arg(long, default_value_t = 0)]
        order: u32,
        /// Also report co-ranks for orders `0..=k_max`.
        #[arg(long)]
        k_max: Option<u32>,
    },
    /// Isotropy decay web of all codes up to a length.
    Web {
        #[arg(long)]
        length: usize,
        #[arg(long, default_value_t = 2)]
        k_max: u32,
    },
    /// Prolong the symmetry of a contact Hamiltonian up a flag.
    Prolong {
        #[arg(long)]
        code: String,
        /// Polynomial in x1, x2, x3.
        #[arg(long)]
        hamiltonian: String,
    },
    /// Equivalence groupoid equations.
    Groupoid {
        #[arg(long)]
        code: String,
        /// Target model; defaults to `--code`.
        #[arg(long)]
        code2: Option<String>,
        #[arg(long, default_value_t = 1)]
        order: u32,
        /// Comma-separated equations of a singular stratum, e.g. `x5,x6`.
        #[arg(long)]
        locus: Option<String>,
    },
    /// Search for a non-equivalence certificate between two pointed models.
    Noneq {
        #[arg(long)]
        code: String,
        #[arg(long)]
        code2: String,
        #[arg(long)]
        src: Option<String>,
        #[arg(long)]
        tgt: Option<String>,
        #[arg(long, default_value_t = 2)]
        max_prolongations: u32,
    },
    /// Characteristic signature and system report at the origin.
    Signature(SystemArgs),
    /// All codes of a given length.
    Enumerate {
        #[arg(long)]
        length: usize,
        /// Attach growth vector, signature and isotropy co-ranks per code.
        #[arg(long)]
        invariants: bool,
    },
}

/// A model code, or explicit forms on a chart.
#[derive(Args, Debug)]
pub struct SystemArgs {
    #[arg(long, conflicts_with_all = ["form", "dim"])]
    pub code: Option<String>,
    /// One generator, e.g. `dx2 + x3*dx1`; repeatable.
    #[arg(long, requires = "dim")]
    pub form: Vec<String>,
    #[arg(long)]
    pub dim: Option<usize>,
}

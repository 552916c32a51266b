use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "closure",
    version,
    about = "Homology and homotopy of finite closure spaces"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: ConfigArgs,

    #[command(subcommand)]
    pub command: Command,
}

/// Options shared by every command.
#[derive(Debug, Args)]
pub struct ConfigArgs {
    /// Interval object: j1 or jplus.
    #[arg(long, global = true, default_value = "j1")]
    pub interval: String,

    /// Product closure: cross or inductive.
    #[arg(long, global = true, default_value = "cross")]
    pub product: String,

    /// Chain flavor: simplicial or cubical.
    #[arg(long, global = true, default_value = "simplicial")]
    pub flavor: String,

    /// Highest degree reported.
    #[arg(long = "max-dim", global = true, default_value_t = 2)]
    pub max_dim: usize,

    /// Coefficients: Z, Q or Zp:<p>.
    #[arg(long, global = true, default_value = "Z")]
    pub coeff: String,

    /// Most cells per dimension, or continuous maps, enumerated.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub cap: usize,

    /// Most maps visited by a homotopy search.
    #[arg(long, global = true, default_value_t = 100_000)]
    pub budget: usize,

    /// Seed for random corpora.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a space file.
    Validate { space: String },
    /// Construct a new space.
    Build {
        #[command(subcommand)]
        op: BuildOp,
    },
    /// Homology groups, unreduced and reduced.
    Homology {
        space: String,
        /// Also report cohomology.
        #[arg(long)]
        cohomology: bool,
    },
    /// Path components for the chosen interval.
    Pi0 { space: String },
    /// Homotopy questions.
    Homotopy {
        #[command(subcommand)]
        query: HomotopyQuery,
    },
    /// Check a theorem on given inputs or on a random corpus.
    Verify(VerifyArgs),
}

#[derive(Debug, Subcommand)]
pub enum BuildOp {
    Product {
        a: String,
        b: String,
    },
    InductiveProduct {
        a: String,
        b: String,
    },
    Coproduct {
        a: String,
        b: String,
    },
    /// Pushout of `f: A → B` and `g: A → C`.
    Pushout {
        a: String,
        b: String,
        c: String,
        f: PathBuf,
        g: PathBuf,
    },
    /// Collapse a subspace to a point.
    Quotient {
        space: String,
        #[arg(long)]
        points: String,
    },
    Subspace {
        space: String,
        #[arg(long)]
        points: String,
    },
    /// Topological modification.
    Tau {
        space: String,
    },
    /// n-fold product power.
    Power {
        #[arg(long, default_value = "cross")]
        kind: String,
        space: String,
        n: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum HomotopyQuery {
    /// Search for a homotopy from the identity to a constant.
    Contractible { space: String },
    /// Search for a chain of one-step homotopies from `f` to `g`.
    Maps {
        source: String,
        target: String,
        f: PathBuf,
        g: PathBuf,
    },
    /// Partition all continuous maps into homotopy classes.
    Classes { source: String, target: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Theorem {
    Mv,
    Excision,
    Les,
    Kunneth,
    Uct,
    Ez,
    Comparison,
    EsAxioms,
    CoverSubcomplex,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub theorem: Theorem,
    /// Spaces the theorem is applied to; omit to use a random corpus.
    pub spaces: Vec<String>,
    /// Cover file for mv and cover-subcomplex.
    #[arg(long)]
    pub cover: Option<PathBuf>,
    /// Subspace `A`, comma separated.
    #[arg(long)]
    pub a: Option<String>,
    /// Excised set `Z`, comma separated.
    #[arg(long)]
    pub z: Option<String>,
    /// Number of random instances.
    #[arg(long, default_value_t = 10)]
    pub random: usize,
    /// Largest random space.
    #[arg(long, default_value_t = 5)]
    pub points: usize,
}

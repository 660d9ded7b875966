use clap::{Args, Parser, Subcommand, ValueEnum};
use stablerep::{Partition, Prime};

#[derive(Debug, Parser)]
#[command(name = "stablerep", version, about = "Stable representation theory of symmetric groups")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for the randomized MeatAxe.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for parallel table computations.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Route {
    /// Three-way contingency counting.
    Counting,
    /// Explicit sparse matrices.
    Matrix,
    /// Enumeration of intermediate set-partitions.
    Enumeration,
}

pub fn parse_partition(s: &str) -> Result<Partition, String> {
    s.parse::<Partition>().map_err(|e| e.to_string())
}

pub fn parse_prime(s: &str) -> Result<Prime, String> {
    let v: u32 = s.trim().parse().map_err(|e| format!("{s:?}: {e}"))?;
    Prime::new(v).map_err(|e| e.to_string())
}

#[derive(Debug, Clone)]
pub struct IntList(pub Vec<i64>);

pub fn parse_int_list(s: &str) -> Result<IntList, String> {
    s.split(',').map(|t| t.trim().parse::<i64>().map_err(|e| format!("{t:?}: {e}"))).collect::<Result<_, _>>().map(IntList)
}

#[derive(Debug, Args)]
pub struct ShapeType {
    /// Shape μ, as "a,b,c" ("" or 0 for ∅).
    #[arg(long, value_parser = parse_partition)]
    pub shape: Option<Partition>,
    /// Type λ.
    #[arg(long = "type", value_parser = parse_partition)]
    pub ty: Option<Partition>,
}

#[derive(Debug, Args)]
pub struct Composable {
    /// First map α: shape → mid. A name (id, dp, sum, aug), #k, inline JSON or @file.
    #[arg(long)]
    pub alpha: String,
    /// Second map β: mid → type.
    #[arg(long)]
    pub beta: String,
    #[arg(long, value_parser = parse_partition)]
    pub shape: Option<Partition>,
    #[arg(long, value_parser = parse_partition)]
    pub mid: Option<Partition>,
    #[arg(long = "type", value_parser = parse_partition)]
    pub ty: Option<Partition>,
}

#[derive(Debug, Args)]
pub struct PAdicArgs {
    #[arg(long, value_parser = parse_prime)]
    pub p: Prime,
    #[arg(long = "t-residue")]
    pub t_residue: u64,
    #[arg(long = "t-exp")]
    pub t_exp: u32,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the stable tabloids of a shape and type (or the full ones at level n).
    Tabloids {
        #[command(flatten)]
        st: ShapeType,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Dimension of the stable hom-space, or of Hom(M(μ(n)), M(λ(n))).
    Homdim {
        #[command(flatten)]
        st: ShapeType,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Sparse matrix of the Carter–Lusztig map h^τ(n).
    Clmatrix {
        /// A name, #k, inline JSON or @file.
        #[arg(long)]
        tabloid: String,
        #[command(flatten)]
        st: ShapeType,
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_prime)]
        p: Option<Prime>,
    },
    /// Structure constants of f^β ∘ f^α: interpolated, or concrete at level n.
    Structconst {
        #[command(flatten)]
        maps: Composable,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value_t = Route::Counting)]
        route: Route,
    },
    /// Integer-valued polynomial through values at base, base+1, ...
    Interp {
        #[arg(long, value_parser = parse_int_list, allow_hyphen_values = true)]
        values: IntList,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        base: i64,
        /// Also report the period of the reduction mod p.
        #[arg(long, value_parser = parse_prime)]
        p: Option<Prime>,
    },
    /// Structure constants of f^β ∘ f^α specialized at a p-adic t.
    EvalT {
        #[command(flatten)]
        maps: Composable,
        #[command(flatten)]
        t: PAdicArgs,
    },
    /// Compare mod-p composition tables of sizes ≤ r at levels n and m.
    CheckEquiv {
        #[arg(long)]
        r: usize,
        #[arg(long, value_parser = parse_prime)]
        p: Prime,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Compare even when the divisibility hypothesis fails.
        #[arg(long)]
        exploratory: bool,
        /// Only print the verdict and hypotheses, not the witness tables.
        #[arg(long)]
        summary: bool,
    },
    /// Decompose M(λ) ⊗ M(μ): stably, or at level n.
    Tensor {
        #[arg(long, value_parser = parse_partition)]
        lambda: Partition,
        #[arg(long, value_parser = parse_partition)]
        mu: Partition,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Restrict M(λ) to S_ℓ × S_{n−ℓ}: stably, or at level n.
    Restrict {
        #[arg(long, value_parser = parse_partition)]
        lambda: Partition,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Induce M(μ) ⊠ M(λ) up: stably, or at level n.
    Induce {
        #[arg(long, value_parser = parse_partition)]
        mu: Partition,
        #[arg(long, value_parser = parse_partition)]
        lambda: Partition,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Dimension of the Specht module S^λ.
    SpechtDim {
        #[arg(long, value_parser = parse_partition)]
        lambda: Partition,
    },
    /// Dimension of D^λ over F_p.
    DDim {
        #[arg(long, value_parser = parse_partition)]
        lambda: Partition,
        #[arg(long, value_parser = parse_prime)]
        p: Prime,
    },
    /// Decomposition numbers [S^(n−m,m) : D^(n−j,j)] via the MeatAxe.
    Decomp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, value_parser = parse_prime)]
        p: Prime,
    },
    /// Dimensions and invariants of a cokernel presentation over a range of n.
    Fi {
        /// Presentation JSON, inline or @file.
        #[arg(long)]
        presentation: String,
        #[arg(long, value_parser = parse_prime)]
        p: Prime,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
    },
    /// Eventual period (a power of p) of an integer sequence.
    Period {
        #[arg(long, value_parser = parse_int_list, allow_hyphen_values = true)]
        values: IntList,
        #[arg(long, value_parser = parse_prime)]
        p: Prime,
    },
}

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "hopf", version, about = "Coproducts, antipodes and Birkhoff factorizations of combinatorial bialgebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Planar or symmetric trees.
    #[arg(long, global = true, value_enum, default_value_t = Mode::Symmetric)]
    pub mode: Mode,
    /// Size bound of the enumerated basis.
    #[arg(long, global = true, default_value_t = 3)]
    pub truncation: usize,
    /// Seed for every randomized check.
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Planar,
    Symmetric,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceKind {
    Trees,
    Graphs,
    Path,
    Incidence,
    Goncharov,
    Double,
    Monoid,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Normalized,
    Commutator,
    Central,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodArg {
    Takeuchi,
    Recursive,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Coalgebra,
    Bialgebra,
    Antipode,
    Renormalization,
    Relations,
    Structure,
}

/// Which instance to build and from what.
#[derive(Args, Debug, Clone)]
pub struct Source {
    #[arg(long = "bialgebra", visible_alias = "instance", value_enum, default_value_t = InstanceKind::Trees)]
    pub instance: InstanceKind,
    /// JSON document (inline or a path) describing a quiver, poset, group or monoid.
    #[arg(long)]
    pub input: Option<String>,
    /// Graphs without mergers.
    #[arg(long)]
    pub connected: bool,
    /// Leaf bound for trees, defaulting to truncation + 1.
    #[arg(long)]
    pub leaves: Option<usize>,
    /// Flag bound for graphs, defaulting to truncation + 2.
    #[arg(long)]
    pub flags: Option<u32>,
    /// Built-in group for the double: z2, z3 or s3.
    #[arg(long)]
    pub group: Option<String>,
    /// A single key; otherwise every basis key is listed.
    #[arg(long)]
    pub key: Option<String>,
    /// Shorthand for `--bialgebra trees --key LIT`.
    #[arg(long, conflicts_with_all = ["key", "graph"])]
    pub tree: Option<String>,
    /// Shorthand for `--bialgebra graphs --key LIT`.
    #[arg(long, conflicts_with = "key")]
    pub graph: Option<String>,
}

impl Source {
    /// Folds `--tree`/`--graph` into the instance and key.
    pub fn resolved(&self) -> Source {
        let mut s = self.clone();
        if let Some(t) = &self.tree {
            s.instance = InstanceKind::Trees;
            s.key = Some(t.clone());
        }
        if let Some(g) = &self.graph {
            s.instance = InstanceKind::Graphs;
            s.key = Some(g.clone());
        }
        s
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Coproduct of one key or of every basis key.
    Coproduct {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum)]
        quotient: Option<Kind>,
    },
    /// Antipode as the convolution inverse of the identity.
    Antipode {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum)]
        quotient: Option<Kind>,
        /// Work in the deformed algebra with grouplikes as parameters.
        #[arg(long)]
        deform: bool,
        #[arg(long, value_enum, default_value_t = MethodArg::Takeuchi)]
        method: MethodArg,
    },
    /// Convolution inverse of a character into Laurent polynomials.
    Inverse {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum)]
        quotient: Option<Kind>,
        /// Character document, inline or a path.
        #[arg(long)]
        character: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Takeuchi)]
        method: MethodArg,
    },
    /// Counterterm and renormalized parts of a character.
    Birkhoff {
        #[command(flatten)]
        source: Source,
        /// Defaults to the normalized quotient.
        #[arg(long, value_enum)]
        quotient: Option<Kind>,
        #[arg(long)]
        character: String,
    },
    /// Normal forms in a quotient.
    Quotient {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = Kind::Normalized)]
        kind: Kind,
    },
    /// Keys and antipodes with grouplikes turned into parameters.
    Qdeform {
        #[command(flatten)]
        source: Source,
        /// Adjoin inverse parameters so the antipode exists.
        #[arg(long)]
        laurent: bool,
    },
    /// The coaction into the deformed algebra tensor the normalized quotient.
    Coaction {
        #[command(flatten)]
        source: Source,
    },
    /// Filtration degrees of the basis.
    Filtration {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum)]
        quotient: Option<Kind>,
    },
    /// Grouplikes, skew primitives, colors and the pathlike verdict.
    Structure {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum)]
        quotient: Option<Kind>,
    },
    /// Runs property suites.
    Check {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
}

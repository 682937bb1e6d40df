use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "teamsem", version, about = "Team semantics on finite structures")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Reading of the plain existential quantifier.
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Strict)]
    pub mode: ModeArg,
    /// Largeness condition for non-monotone quantifiers.
    #[arg(long, global = true, value_enum, default_value_t = LargenessArg::Corrected)]
    pub largeness: LargenessArg,
    #[arg(long, global = true, value_name = "N")]
    pub max_rows: Option<usize>,
    #[arg(long, global = true, value_name = "N")]
    pub max_domain: Option<usize>,
    /// Limit overrides such as `max_rows=100,max_candidates=1000`.
    #[arg(long, global = true, env = "TEAMSEM_LIMITS", value_name = "SPEC", hide_env_values = true)]
    pub limits: Option<String>,
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Define a quantifier: `NAME=branch(Q1,Q2)`, `NAME=sher(Q1,Q2)` or
    /// `NAME=product(Q1,Q2)`.
    #[arg(long = "define", global = true, value_name = "DEF")]
    pub defines: Vec<String>,
    /// Load a quantifier table `{"name","arity","sets"}`; element names are
    /// resolved against the structure of the command.
    #[arg(long = "quantifier", global = true, value_name = "FILE")]
    pub quantifiers: Vec<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Strict,
    Lax,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LargenessArg {
    Corrected,
    Literal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Armstrong,
    Bfh,
    Semantic,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide M, X ⊨ φ.
    Eval(EvalArgs),
    /// Decide whether a goal dependency follows from a dependency file.
    Imply(ImplyArgs),
    /// List every team over FV(φ) satisfying φ.
    Semvalue(SemvalueArgs),
    /// Run the built-in corpus of fixed judgments.
    PaperSuite(SuiteArgs),
    /// Inspect and combine local quantifiers.
    #[command(subcommand)]
    Quant(QuantCommand),
    /// Check whether a team is the join of two of its projections.
    JoinCheck(JoinArgs),
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Structure file.
    pub structure: PathBuf,
    pub formula: String,
    #[command(flatten)]
    pub team: TeamSource,
    /// Print the witness for the outermost quantifier.
    #[arg(long)]
    pub witness: bool,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct TeamSource {
    /// Team file.
    #[arg(long, value_name = "FILE")]
    pub team: Option<PathBuf>,
    /// The empty team ∅ over the free variables of the formula.
    #[arg(long)]
    pub empty_team: bool,
    /// The team {ε} holding only the empty assignment.
    #[arg(long)]
    pub unit_team: bool,
}

#[derive(Debug, Args)]
pub struct ImplyArgs {
    /// Dependency file.
    pub deps: PathBuf,
    /// Goal such as `x -> z`, `x ->> y` or `ind(x;y;z)`.
    pub goal: String,
    #[arg(long, value_enum)]
    pub method: Method,
    /// Domain size for the semantic search.
    #[arg(long, default_value_t = 2)]
    pub domain: usize,
    /// Largest team size for the semantic search.
    #[arg(long, default_value_t = 4)]
    pub rows: usize,
    /// Print the derivation.
    #[arg(long)]
    pub trace: bool,
}

#[derive(Debug, Args)]
pub struct SemvalueArgs {
    pub structure: PathBuf,
    pub formula: String,
    /// Write the team list here instead of stdout.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SuiteArgs {
    /// Run only the checks with this tag.
    #[arg(long)]
    pub filter: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum QuantCommand {
    /// Print the local quantifier of a name on a domain.
    Show {
        name: String,
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 1)]
        arity: usize,
    },
    /// Br(Q1,Q2), for monotone Q1 and Q2.
    Branch(PairArgs),
    /// Br^S(Q1,Q2).
    Sher(PairArgs),
    /// The iteration Q1 Q2.
    Product(PairArgs),
    /// Search small structures for φ with Q1 x Q2 y/x φ true but
    /// Br^S(Q1,Q2) xy φ false. Reports findings; asserts nothing.
    SherSearch {
        #[arg(long, default_value_t = 2)]
        max_size: usize,
        /// Quantifiers to pair up (comma separated).
        #[arg(long = "quantifiers", value_delimiter = ',', default_value = "exists,forall,exists_eq_1,exists_geq_2,most_dom")]
        candidates: Vec<String>,
        /// Bodies over x, y and a binary R; defaults to a few formulas
        /// outside the downward-closed fragment.
        #[arg(long = "body")]
        bodies: Vec<String>,
    },
}

#[derive(Debug, Args)]
pub struct PairArgs {
    pub q1: String,
    pub q2: String,
    #[arg(long)]
    pub size: usize,
}

#[derive(Debug, Args)]
pub struct JoinArgs {
    /// Team file.
    pub team: PathBuf,
    /// The shared variables x̄ (comma separated, may be empty).
    #[arg(long, value_delimiter = ',', default_value = "")]
    pub lhs: Vec<String>,
    /// The variables ȳ of the first projection.
    #[arg(long, value_delimiter = ',')]
    pub rhs: Vec<String>,
    /// Structure naming the elements; defaults to the names in the team.
    #[arg(long, value_name = "FILE")]
    pub structure: Option<PathBuf>,
}

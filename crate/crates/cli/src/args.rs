use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

#[derive(Parser, Debug, Clone)]
#[command(
    name = "qwhit",
    version,
    about = "Exact checks for quantum group Whittaker models, q-Toda operators and cross-sections"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Seed for the ChaCha8 generator behind every random sample.
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Add elapsed wall time to the report.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Args, Debug, Clone)]
pub struct AlgebraArgs {
    /// Cartan type: A, B, C, D, F or G.
    #[arg(long = "type", default_value = "A")]
    pub series: String,
    #[arg(long, default_value_t = 2)]
    pub rank: usize,
    /// Coxeter ordering of the simple reflections, 1-based, e.g. `2,1,3`.
    #[arg(long)]
    pub pi: Option<String>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Cartan data, Cayley matrix, ε, normal ordering and Coxeter orbits.
    RootSystem(AlgebraArgs),
    /// Cayley matrix against ε∘b and the twist solving d_j n_ij − d_i n_ji = c_ij.
    Cayley {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Symmetric l×l JSON matrix parametrizing the twist (default 0).
        #[arg(long = "s-sym")]
        s_sym: Option<String>,
    },
    /// Orbits of the Coxeter element on the root system.
    Orbits(AlgebraArgs),
    /// Values of c where the alternating Gauss sum of order m vanishes.
    QbinomScan {
        #[arg(long, default_value_t = 3)]
        m: u32,
        /// Scan c in [−range, range] (default m + 3).
        #[arg(long)]
        range: Option<i64>,
    },
    /// Deformed Serre identities for characters.
    SerreCheck {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        chi: Option<String>,
    },
    /// The central element C_V and its commutators with the generators.
    Casimir {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long, default_value = "V1")]
        rep: String,
    },
    /// Whittaker generators ρ_χ(C_V).
    Whittaker {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        chi: Option<String>,
        /// One catalogue module; all of them by default.
        #[arg(long)]
        rep: Option<String>,
    },
    /// q-Toda Hamiltonians as difference operators.
    Toda {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        chi: Option<String>,
        #[arg(long)]
        chibar: Option<String>,
        #[arg(long = "check-commute")]
        check_commute: bool,
    },
    /// Conjugates L ∈ N_+ s N_+ into the slice N_+' s.
    CrossSection {
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// JSON matrix; a seeded random element of the cell by default.
        #[arg(long)]
        matrix: Option<String>,
        /// Coxeter representative as a JSON matrix.
        #[arg(long = "s-rep")]
        s_rep: Option<String>,
    },
    /// Conjugates b + f into f + (first-row span).
    KostantSection {
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Traceless upper-triangular JSON matrix; seeded random by default.
        #[arg(long)]
        b: Option<String>,
    },
    /// Modified classical Yang–Baxter equation for the Cayley r-matrix of sl(n).
    RmatrixCheck {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 50)]
        trials: usize,
    },
    /// Elements of the fibre over u and their image under the q-map.
    Gstar {
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Diagonal of h_+ as a JSON list; seeded random samples when absent.
        #[arg(long)]
        x: Option<String>,
        /// Parameters c_i of u = Π(1 + 2c_i E_{i+1,i}); a valid grid point by default.
        #[arg(long = "u-params")]
        u_params: Option<String>,
        /// n_+ as a JSON matrix (default identity).
        #[arg(long = "n-plus")]
        n_plus: Option<String>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long = "s-rep")]
        s_rep: Option<String>,
    },
    /// Runs the acceptance criteria.
    Acceptance {
        /// `all` or a comma list of criterion numbers.
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::RootSystem(_) => "root-system",
            Command::Cayley { .. } => "cayley",
            Command::Orbits(_) => "orbits",
            Command::QbinomScan { .. } => "qbinom-scan",
            Command::SerreCheck { .. } => "serre-check",
            Command::Casimir { .. } => "casimir",
            Command::Whittaker { .. } => "whittaker",
            Command::Toda { .. } => "toda",
            Command::CrossSection { .. } => "cross-section",
            Command::KostantSection { .. } => "kostant-section",
            Command::RmatrixCheck { .. } => "rmatrix-check",
            Command::Gstar { .. } => "gstar",
            Command::Acceptance { .. } => "acceptance",
        }
    }
}

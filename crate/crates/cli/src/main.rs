use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

use commands::Outcome;

#[derive(Parser, Debug)]
#[command(name = "opgr", version, about = "Operads with transformations, their groups and arc complexes")]
struct Cli {
    /// Seed for randomized subcommands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for independent instances (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct OperadSource {
    /// Operad spec file (JSON).
    #[arg(long, conflicts_with = "builtin")]
    pub spec: Option<PathBuf>,
    /// Built-in operad: F, V, BV, RV, RV-free, cube1, cube2, cube3, squares-triangles, binary-z2, binary-z2-mutated.
    #[arg(long)]
    pub builtin: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct ArcArgs {
    /// Arc complex flavor: 1 (line), 3 (space).
    #[arg(long)]
    pub d: u8,
    /// Comma-separated color names.
    #[arg(long, default_value = "c")]
    pub colors: String,
    /// Archetype `id:word`, repeatable.
    #[arg(long = "archetype", required = true)]
    pub archetypes: Vec<String>,
    /// Node colors, e.g. `c c c` or `ccc`.
    #[arg(long, conflicts_with = "len")]
    pub word: Option<String>,
    /// Number of nodes, all of the first color.
    #[arg(long)]
    pub len: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit an operad spec.
    Gen {
        /// thompson-F, thompson-V, thompson-BV, thompson-RV, RV-free, cube, squares-triangles, binary-z2, ...
        #[arg(long)]
        family: String,
        /// Cube dimension (with `--family cube`).
        #[arg(long, default_value_t = 1)]
        d: usize,
        /// Cut counts per axis, axes separated by `;`, e.g. `2,3` or `2;2`.
        #[arg(long, default_value = "2")]
        cuts: String,
        /// Flavor override for cube operads.
        #[arg(long)]
        flavor: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check axioms or calculus-of-fractions hypotheses.
    Check {
        #[command(flatten)]
        source: OperadSource,
        #[arg(long, value_enum, default_value_t = CheckKind::Audit)]
        what: CheckKind,
        /// Degree bound for class posets.
        #[arg(long, default_value_t = 6)]
        bound: usize,
        /// Generator depth for the axiom pool.
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
    /// Normal form of an arrow `braid · (ops)`.
    Nf {
        #[command(flatten)]
        source: OperadSource,
        /// Operation terms, one per output strand, e.g. `caret(_,_)`.
        #[arg(long = "op", required = true)]
        ops: Vec<String>,
        /// Braid or permutation on the concatenated inputs, e.g. `b3: 1 -2` or `perm 2 1 3`.
        #[arg(long)]
        braid: Option<String>,
    },
    /// Operad group arithmetic.
    Group {
        #[command(flatten)]
        source: GroupSource,
        #[command(subcommand)]
        op: GroupOp,
    },
    /// Transformation class posets.
    Classes {
        #[command(flatten)]
        source: OperadSource,
        #[arg(long, default_value_t = 6)]
        bound: usize,
        #[arg(long)]
        depth: Option<usize>,
        #[command(subcommand)]
        view: ClassView,
    },
    /// Build an arc complex.
    Arc {
        #[command(flatten)]
        arc: ArcArgs,
    },
    /// Reduced integer homology of a complex given by facets.
    Homology {
        /// One facet per line, vertex indices separated by spaces.
        #[arg(long)]
        facets: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
        #[arg(long, value_enum, default_value_t = Route::Sparse)]
        route: Route,
        /// Also certify `k`-connectivity.
        #[arg(long)]
        certify: Option<i64>,
    },
    /// Check the connectivity bound on one arc complex.
    VerifyNu {
        #[command(flatten)]
        arc: ArcArgs,
    },
    /// Time the kernels on random instances.
    Bench {
        #[arg(long, value_enum, default_value_t = BenchKind::Braid)]
        kind: BenchKind,
        #[arg(long, default_value_t = 200)]
        n: usize,
    },
}

#[derive(Args, Debug, Clone)]
pub struct GroupSource {
    /// Group family: F, V, BV, RV, F(n,r), V(n,r).
    #[arg(long, global = true)]
    pub family: Option<String>,
    /// Operad spec file with one color and one generator.
    #[arg(long, global = true)]
    pub spec: Option<PathBuf>,
    /// Roots of the base object (with `--spec`).
    #[arg(long, global = true, default_value_t = 1)]
    pub roots: usize,
}

#[derive(Subcommand, Debug)]
pub enum GroupOp {
    /// Product of words, left to right.
    Mul {
        #[arg(required = true)]
        words: Vec<String>,
    },
    /// Inverse of a word.
    Inv { word: String },
    /// Decide equality of two words.
    Eq {
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    /// Verify the defining relations up to a generator index bound.
    Present {
        #[arg(long, default_value_t = 4)]
        bound: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum ClassView {
    /// Classes and cover relations.
    Poset,
    /// Very elementary and elementary classes.
    Spine {
        /// Instead, compare construction and brute force on this many random posets.
        #[arg(long)]
        random: Option<usize>,
    },
    /// Finiteness invariants.
    Profile {
        #[arg(long, default_value_t = 12)]
        length_bound: usize,
    },
    /// Graphviz rendering.
    Dot,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    Audit,
    Axioms,
    Fractions,
    Cancellation,
    V1v2,
    B1b2,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Sparse,
    Dense,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum BenchKind {
    Braid,
    Group,
    Snf,
}

fn dispatch(cli: Cli) -> operadica::Result<Outcome> {
    let seed = cli.seed;
    match cli.command {
        Command::Gen { family, d, cuts, flavor, output } => commands::gen(&family, d, &cuts, flavor.as_deref(), output),
        Command::Check { source, what, bound, depth } => commands::check(&source, what, bound, depth),
        Command::Nf { source, ops, braid } => commands::nf(&source, &ops, braid.as_deref()),
        Command::Group { source, op } => commands::group(&source, op),
        Command::Classes { source, bound, depth, view } => commands::classes(&source, bound, depth, view, seed),
        Command::Arc { arc } => commands::arc(&arc),
        Command::Homology { facets, max_degree, route, certify } => {
            commands::homology(&facets, max_degree, route, certify)
        }
        Command::VerifyNu { arc } => commands::verify_nu(&arc),
        Command::Bench { kind, n } => commands::bench(kind, n, seed),
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(s: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs > 0 {
        // only fails if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global();
    }
    let json = cli.json;
    match dispatch(cli) {
        Ok(out) => {
            if json {
                match operadica::report::envelope(&out.kind, out.ok, &out.data) {
                    Ok(v) => emit(&format!("{}\n", serde_json::to_string_pretty(&v).expect("json value"))),
                    Err(e) => {
                        eprintln!("opgr: {e}");
                        return ExitCode::from(1);
                    }
                }
            } else {
                emit(&out.text);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("opgr: {e}");
            use operadica::Error::*;
            match e {
                Invalid(_) | Mismatch(_) | Parse(_) | Json(_) | Io(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

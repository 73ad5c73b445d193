mod commands;
mod error;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use error::{exit, CliError};

#[derive(Debug, Parser)]
#[command(name = "shiftcat", version, about = "Subshifts, block codes, finite semigroups and Karoubi envelopes")]
struct Cli {
    /// Output format; not every command supports every format.
    #[arg(long, value_enum, global = true, default_value = "json")]
    format: Format,
    /// Seed for randomized test semigroups and suites.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Random test semigroups as `COUNT` or `COUNT:MAX_SIZE`, in addition to
    /// the syntactic semigroup; needs `--seed` when COUNT is positive.
    #[arg(long, global = true, default_value = "0")]
    tests: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Blocks of length 1 to `--bound`.
    Blocks {
        shift: PathBuf,
        #[arg(long, default_value_t = 3)]
        bound: usize,
    },
    /// Whether a word is a block, or whether an ω-term lies in the closure
    /// of the language and in the mirage at level `--bound`.
    Member {
        shift: PathBuf,
        word: String,
        #[arg(long, default_value_t = 2)]
        bound: usize,
    },
    /// Irreducibility of the presented shift.
    Irreducible { shift: PathBuf },
    /// Periodic-point counts to `--order`, with orbit representatives up
    /// to period `--bound`.
    Periodic {
        shift: PathBuf,
        #[arg(long, default_value_t = 8)]
        order: usize,
        #[arg(long, default_value_t = 0)]
        bound: usize,
    },
    /// Zeta function coefficients to `--order`.
    Zeta {
        shift: PathBuf,
        #[arg(long, default_value_t = 8)]
        order: usize,
    },
    /// Syntactic semigroup of the language of blocks.
    Syntactic { shift: PathBuf },
    /// Green's relations of a syntactic semigroup or a semigroup table.
    Green { input: PathBuf },
    /// Karoubi envelope summary: census, automorphism groups, LU poset.
    Karoubi { input: PathBuf },
    /// The labeled poset of J-classes meeting the local units of the
    /// accepting set, or of the whole semigroup with `--all`.
    LuPoset {
        input: PathBuf,
        #[arg(long)]
        all: bool,
    },
    /// Sliding block codes.
    #[command(subcommand)]
    Code(CodeCommand),
    /// ω-term pseudowords.
    #[command(subcommand)]
    Term(TermCommand),
    /// Symbol expansion of a shift at one letter.
    Expand {
        shift: PathBuf,
        #[command(flatten)]
        flow: FlowArgs,
    },
    /// Five-type classification of a term over the expanded alphabet.
    Classify {
        shift: PathBuf,
        term: String,
        #[command(flatten)]
        flow: FlowArgs,
        #[arg(long, default_value_t = 2)]
        bound: usize,
    },
    /// Mirage lemmas up to length `--order` and naturality of the unit on
    /// cyclic idempotents of length at most `--bound`.
    Flowcheck {
        shift: PathBuf,
        #[command(flatten)]
        flow: FlowArgs,
        #[arg(long, default_value_t = 3)]
        bound: usize,
        #[arg(long, default_value_t = 8)]
        order: usize,
    },
    /// Run a named property suite.
    Check { suite: String },
}

#[derive(Debug, Args)]
struct FlowArgs {
    /// Letter to expand.
    #[arg(long)]
    letter: String,
    /// Symbol of the fresh letter.
    #[arg(long, default_value = shiftcat::flowops::DEFAULT_DIAMOND)]
    diamond: String,
}

#[derive(Debug, Subcommand)]
enum CodeCommand {
    /// Apply a block map to a word, a periodic point or a shift.
    Apply {
        map: PathBuf,
        #[arg(long, conflicts_with_all = ["point", "shift"])]
        word: Option<String>,
        /// Primitive word `v` standing for the point `v^∞`.
        #[arg(long, conflicts_with = "shift")]
        point: Option<String>,
        #[arg(long)]
        shift: Option<PathBuf>,
    },
    /// Composite of two block maps, first then second.
    Compose { first: PathBuf, second: PathBuf },
    /// Central form of a block map.
    Centralize { map: PathBuf },
}

#[derive(Debug, Subcommand)]
enum TermCommand {
    /// Value of a term in the syntactic semigroup.
    Eval { shift: PathBuf, term: String },
    /// Factors of length at most `--bound` and mirage membership.
    Factors {
        shift: PathBuf,
        term: String,
        #[arg(long, default_value_t = 2)]
        bound: usize,
    },
    /// Image of a term under a block map.
    Code { map: PathBuf, term: String },
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let ctx = commands::Context::new(cli.seed, &cli.tests)?;
    let out = match cli.command {
        Command::Blocks { shift, bound } => commands::blocks(&shift, bound),
        Command::Member { shift, word, bound } => commands::member(&shift, &word, bound),
        Command::Irreducible { shift } => commands::irreducible(&shift),
        Command::Periodic { shift, order, bound } => commands::periodic(&shift, order, bound),
        Command::Zeta { shift, order } => commands::zeta(&shift, order),
        Command::Syntactic { shift } => commands::syntactic(&shift),
        Command::Green { input } => commands::green(&input),
        Command::Karoubi { input } => commands::karoubi(&input),
        Command::LuPoset { input, all } => commands::lu_poset(&input, all),
        Command::Code(CodeCommand::Apply { map, word, point, shift }) => {
            commands::code_apply(&map, word.as_deref(), point.as_deref(), shift.as_deref())
        }
        Command::Code(CodeCommand::Compose { first, second }) => commands::code_compose(&first, &second),
        Command::Code(CodeCommand::Centralize { map }) => commands::code_centralize(&map),
        Command::Term(TermCommand::Eval { shift, term }) => commands::term_eval(&shift, &term),
        Command::Term(TermCommand::Factors { shift, term, bound }) => commands::term_factors(&shift, &term, bound),
        Command::Term(TermCommand::Code { map, term }) => commands::term_code(&map, &term),
        Command::Expand { shift, flow } => commands::expand(&shift, &flow.letter, &flow.diamond),
        Command::Classify { shift, term, flow, bound } => {
            commands::classify(&shift, &term, &flow.letter, &flow.diamond, bound)
        }
        Command::Flowcheck { shift, flow, bound, order } => {
            commands::flowcheck(&ctx, &shift, &flow.letter, &flow.diamond, bound, order)
        }
        Command::Check { suite } => commands::check(&ctx, &suite),
    }?;
    let text = out.render(cli.format)?;
    print!("{text}");
    if !out.passed {
        eprintln!("shiftcat: check failed");
        return Ok(exit::CHECK_FAILED);
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::USAGE as u8 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("shiftcat: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

/// Episturmian morphisms: decomposition, conjugacy classes, palindromic
/// closure, Rauzy graphs, return words and return preservation.
#[derive(Parser, Debug)]
#[command(name = "episturm", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Tsv,
    Json,
    Dot,
}

/// A morphism given inline (`a->ab,b->a`) or read from a file holding either
/// the text form or the JSON form.
#[derive(Args, Debug)]
pub struct MorphismInput {
    /// Read the morphism from this file instead of the command line.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Positional arguments: the morphism (unless --file is given), then
    /// any word argument.
    #[arg(value_name = "ARGS")]
    pub args: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    Plain,
    Barred,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Oracle,
    Closed,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CrossCheck {
    Oracle,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write an episturmian morphism as ψ_v ∘ π.
    Decompose {
        #[command(flatten)]
        input: MorphismInput,
        /// Which generator to strip first when both apply.
        #[arg(long, value_enum, default_value = "plain")]
        order: OrderArg,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// List the conjugacy class of a morphism, standard member first.
    Class {
        #[command(flatten)]
        input: MorphismInput,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Conjugacy index, standard conjugate and minimal letter.
    Index {
        #[command(flatten)]
        input: MorphismInput,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Palindromic closure of a directive word.
    Pal {
        word: String,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Recover the directive word of a palindrome.
    PalInverse {
        word: String,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Standard morphisms ψ_u for all directive words up to a depth.
    StandardTree {
        #[arg(long, default_value_t = 2)]
        depth: usize,
        /// Alphabet symbols.
        #[arg(long, default_value = "abc")]
        letters: String,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Factors of length n of the shift of a primitive morphism.
    Language {
        #[command(flatten)]
        input: MorphismInput,
        #[arg(long)]
        n: usize,
        /// Also assert the factor count (|A|-1)n+1.
        #[arg(long)]
        strict: bool,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Rauzy graph of order n.
    Rauzy {
        #[command(flatten)]
        input: MorphismInput,
        #[arg(long)]
        n: usize,
        /// Label each vertex with its (d, ℓ) pair.
        #[arg(long)]
        annotate_dl: bool,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Return words of a factor.
    Returns {
        #[command(flatten)]
        input: MorphismInput,
        #[arg(long, value_enum)]
        side: Option<SideArg>,
        #[arg(long, value_enum, default_value = "closed")]
        method: MethodArg,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Whether σ preserves the return words of a factor.
    CheckP {
        #[command(flatten)]
        input: MorphismInput,
        #[arg(long, value_enum)]
        cross_check: Option<CrossCheck>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Test the obstruction words of a morphism.
    Obstructions {
        #[command(flatten)]
        input: MorphismInput,
        #[arg(long, default_value_t = 30)]
        n_max: usize,
        #[arg(long, value_enum)]
        cross_check: Option<CrossCheck>,
        /// Also run the lemma checks up to this factor length.
        #[arg(long)]
        lemmas: Option<usize>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Run the invariant corpus.
    Verify {
        #[arg(long, conflicts_with = "full")]
        quick: bool,
        #[arg(long)]
        full: bool,
        /// Seed of the random sampler.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            let theory = e
                .downcast_ref::<episturm::Error>()
                .is_some_and(episturm::Error::is_theory_violation);
            ExitCode::from(if theory { 1 } else { 2 })
        }
    }
}

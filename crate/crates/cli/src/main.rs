use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

mod commands;
mod render;

#[derive(Parser)]
#[command(name = "mrb", version, about = "Exact computations with multiple Rota-Baxter algebras and their modules")]
struct Cli {
    /// Operator-degree bound for normal forms and the quotient oracle.
    #[arg(long, global = true, default_value_t = 3)]
    max_qdegree: usize,
    /// Depth bound for operated words.
    #[arg(long, global = true, default_value_t = 4)]
    max_depth: usize,
    /// Indent the JSON report.
    #[arg(long, global = true)]
    pretty: bool,
    /// Seed for randomized inputs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum StrategyArg {
    Leftmost,
    Rightmost,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Variant {
    A,
    B,
    C,
    D,
}

#[derive(Subcommand)]
pub enum Command {
    /// Check the algebra laws and the multiple Rota-Baxter identity.
    CheckAlgebra { instance: String },
    /// Check a left, right or bimodule document.
    CheckModule { module: PathBuf },
    /// Rewrite an operator-ring or free-module expression to normal form.
    Normalize {
        instance: String,
        expr: String,
        #[arg(long, value_enum, default_value = "leftmost")]
        strategy: StrategyArg,
    },
    /// Compare reduction orders on words with overlapping redexes.
    Confluence { instance: String },
    /// Truncated quotient of the operator ring, optionally classifying an expression.
    Oracle { instance: String, expr: Option<String> },
    /// Quotient of a module by the span of the given vectors.
    Quotient {
        module: PathBuf,
        #[arg(long = "vector", required = true)]
        vectors: Vec<String>,
    },
    /// Direct sum of modules over one instance.
    DirectSum {
        #[arg(required = true)]
        modules: Vec<PathBuf>,
    },
    /// Module constants of a left module.
    Mc { module: PathBuf },
    /// Restricted free left module on named generators.
    RestrictedFree {
        instance: String,
        #[arg(required = true)]
        generators: Vec<String>,
    },
    /// Basis of the space of module homomorphisms.
    Hom { source: PathBuf, target: PathBuf },
    /// Module structure on a Hom space.
    HomModule {
        #[arg(value_enum)]
        variant: Variant,
        m: PathBuf,
        n: PathBuf,
    },
    /// Recombine the operators of an instance or module.
    Reweight {
        target: String,
        /// JSON object `{label: {old_label: coefficient}}` or a path to one.
        spec: Option<String>,
        /// Draw a random specification from `--seed`.
        #[arg(long, conflicts_with = "spec")]
        random: bool,
    },
    /// Tensor product of a right and a left module.
    Tensor { left: PathBuf, right: PathBuf },
    /// Compare Hom(M ⊗ S, T) with Hom(M, Hom(S, T)).
    Adjunction { m: PathBuf, s: PathBuf, t: PathBuf },
    /// Tensor the standard injections with a module.
    FlatProbe { module: PathBuf },
    /// Extend generator images to operated and restricted free modules.
    Lift {
        module: PathBuf,
        /// `name=v1,v2,...`
        #[arg(long = "image", required = true)]
        images: Vec<String>,
        #[arg(long)]
        expr: Option<String>,
    },
}

pub struct Options {
    pub max_qdegree: usize,
    pub max_depth: usize,
    pub seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = Options {
        max_qdegree: cli.max_qdegree,
        max_depth: cli.max_depth,
        seed: cli.seed,
    };
    let (report, code) = match commands::run(&cli.command, &opts) {
        Ok(outcome) => (outcome.report, if outcome.ok { 0 } else { 1 }),
        Err(e) => (json!({ "error": { "kind": commands::error_kind(&e), "message": e.to_string() } }), 2),
    };
    println!("{}", render_json(&report, cli.pretty));
    ExitCode::from(code)
}

fn render_json(v: &Value, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(v)
    } else {
        serde_json::to_string(v)
    }
    .expect("serializable")
}

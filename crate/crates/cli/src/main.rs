//! `gvmot`: exact motivic Gopakumar-Vafa invariants from the command line.

mod commands;
mod output;

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "gvmot", version, about = "Exact motivic Gopakumar-Vafa invariants")]
struct Cli {
    /// Emit machine-readable JSON instead of aligned tables.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArg {
    /// Input document; standard input when omitted.
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Genus invariants of a bispin document by both routes.
    Hst {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, default_value_t = 3)]
        genus_max: u32,
    },
    /// Jordan census of a bispin or graded nilpotent document.
    Census {
        #[command(flatten)]
        input: InputArg,
    },
    /// Virtual Poincare polynomial of a motive or betti variety document.
    Upsilon {
        #[command(flatten)]
        input: InputArg,
    },
    /// Value of a stack class document in Q(t, s).
    Stack {
        #[command(flatten)]
        input: InputArg,
    },
    /// P(v) and n_g for classes of a counting model document.
    Gv {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, default_value_t = 3)]
        genus_max: u32,
        /// Class key `b1,...,br;k`; every atom class when omitted.
        #[arg(long = "class", value_name = "KEY")]
        classes: Vec<String>,
        #[arg(long, default_value_t = gvmot_core::counting::DEFAULT_MAX_COMPOSITIONS)]
        max_compositions: usize,
    },
    /// GV table to GW series, or GW series to GV table.
    Gw {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        genus_max: Option<u32>,
        #[arg(long)]
        degree_max: Option<u64>,
        #[arg(long)]
        lambda_order: Option<i64>,
    },
    /// Seeded randomized property suites.
    Verify {
        /// sl2, census, motive, stack, counting, gw or all.
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = gvmot_core::counting::DEFAULT_MAX_COMPOSITIONS)]
        max_compositions: usize,
        /// Cases per property, overriding the suite defaults.
        #[arg(long)]
        cases: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Hst { input, genus_max } => commands::hst(input.input.as_deref(), genus_max),
        Command::Census { input } => commands::census(input.input.as_deref()),
        Command::Upsilon { input } => commands::upsilon(input.input.as_deref()),
        Command::Stack { input } => commands::stack(input.input.as_deref()),
        Command::Gv { input, genus_max, classes, max_compositions } => {
            commands::gv(input.input.as_deref(), genus_max, &classes, max_compositions)
        }
        Command::Gw { input, genus_max, degree_max, lambda_order } => {
            commands::gw(input.input.as_deref(), genus_max, degree_max, lambda_order)
        }
        Command::Verify { suite, seed, max_compositions, cases } => {
            commands::verify(&suite, seed, max_compositions, cases)
        }
    };
    match result {
        Ok(out) => {
            out.print(cli.json);
            ExitCode::from(out.exit_code)
        }
        Err(e) => {
            e.print(cli.json);
            ExitCode::from(e.code())
        }
    }
}

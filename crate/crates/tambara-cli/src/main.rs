use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use tambara_cli::{commands, CliError, Outcome};

/// Batch front door for the tambara workbench: build, verify, classify,
/// and report, with deterministic seeds and machine-readable output.
#[derive(Parser)]
#[command(name = "tambara", version, about)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    /// Output format.
    #[arg(long, global = true, default_value = "json", value_parser = ["json", "text"])]
    format: String,
}

#[derive(Subcommand)]
enum Verb {
    /// Validate a group file and report its subgroup lattice.
    Group {
        #[arg(long)]
        input: PathBuf,
    },
    /// Validate a G-set file and report its orbit decomposition.
    Gset {
        #[arg(long)]
        input: PathBuf,
    },
    /// Bispan operations.
    Bispan {
        #[command(subcommand)]
        op: BispanOp,
    },
    /// Build a standard functor and emit its table file.
    Build {
        /// One of: burnside, constant, fixed, coinduce.
        what: String,
        #[arg(long)]
        group: PathBuf,
        /// Coefficient ring (constant/coinduce) or G-ring file (fixed).
        #[arg(long)]
        ring: Option<PathBuf>,
    },
    /// Run the sampling axiom checker on a functor table.
    Check {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        budget: usize,
    },
    /// Evaluate a formal expression in a functor.
    Eval {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        expr: String,
        #[arg(long)]
        assign: PathBuf,
    },
    /// Ideal operations.
    Ideal {
        #[command(subcommand)]
        op: IdealOp,
    },
    /// Decide whether a functor is field-like.
    Fieldlike {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Run the coinduced-splitting classification.
    Classify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Construct the closure-tower map and run the factoring checks.
    ClosureMap {
        #[arg(long)]
        input: PathBuf,
        /// Tower degree m of the target coinduce(F_{q^m}).
        #[arg(long)]
        degree: usize,
        /// Check factoring for all tower degrees up to this bound.
        #[arg(long, default_value_t = 4)]
        cap: usize,
    },
    /// Check the module-decomposition property over a Green functor.
    ModuleCheck {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Subcommand)]
enum BispanOp {
    /// Compose two bispans given in canonical form.
    Compose {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Subcommand)]
enum IdealOp {
    /// Close a set of leveled generators into a Nakaoka ideal.
    Close {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        generators: PathBuf,
    },
}

fn default_cap() -> u64 {
    std::env::var("TAMBARA_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(1 << 16)
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.verb {
        Verb::Group { input } => commands::cmd_group(input),
        Verb::Gset { input } => commands::cmd_gset(input),
        Verb::Bispan {
            op: BispanOp::Compose { input },
        } => commands::cmd_bispan_compose(input),
        Verb::Build { what, group, ring } => {
            commands::cmd_build(what, group, ring.as_deref(), ring.as_deref())
        }
        Verb::Check {
            input,
            seed,
            budget,
        } => commands::cmd_check(input, *seed, *budget),
        Verb::Eval {
            input,
            expr,
            assign,
        } => commands::cmd_eval(input, expr, assign),
        Verb::Ideal {
            op: IdealOp::Close { input, generators },
        } => commands::cmd_ideal_close(input, generators),
        Verb::Fieldlike { input, cap } => {
            commands::cmd_fieldlike(input, cap.unwrap_or_else(default_cap))
        }
        Verb::Classify { input, cap } => {
            commands::cmd_classify(input, cap.unwrap_or_else(default_cap))
        }
        Verb::ClosureMap { input, degree, cap } => {
            commands::cmd_closure_map(input, *degree, *cap)
        }
        Verb::ModuleCheck { input } => commands::cmd_module_check(input),
    }
}

fn render_text(value: &serde_json::Value, indent: usize) -> String {
    let pad = "  ".repeat(indent);
    match value {
        serde_json::Value::Object(map) => map
            .iter()
            .map(|(k, v)| match v {
                serde_json::Value::Object(_) | serde_json::Value::Array(_) => {
                    format!("{pad}{k}:\n{}", render_text(v, indent + 1))
                }
                _ => format!("{pad}{k}: {v}"),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        serde_json::Value::Array(items) => items
            .iter()
            .map(|v| match v {
                serde_json::Value::Object(_) | serde_json::Value::Array(_) => {
                    format!("{pad}-\n{}", render_text(v, indent + 1))
                }
                _ => format!("{pad}- {v}"),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        other => format!("{pad}{other}"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            if cli.format == "text" {
                println!("{}", render_text(&outcome.report, 0));
            } else {
                println!("{}", serde_json::to_string_pretty(&outcome.report).unwrap());
            }
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

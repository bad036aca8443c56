use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use zpdlab::{builtin_suite, parse_spec, run, Check, RunConfig, SpecSource, Theorem};
use zpdlab_core::ConditionTag;

#[derive(Parser)]
#[command(name = "zpdlab", version, about = "Exact zero-product and derivation checks for finite-dimensional algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args)]
struct Opts {
    /// Seed for all sampling
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Zero-pair budget per check (default 50·dim A)
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Random samples for the identity checks (ds, lemma-f)
    #[arg(long, global = true, default_value_t = 1000)]
    samples: usize,
    /// Target dimension of bilinear maps (ds, prop-n)
    #[arg(long, global = true, default_value_t = 1)]
    target_dim: usize,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Is the algebra zero product determined?
    CheckZpd { specs: Vec<String> },
    /// Is the algebra zero Jordan product determined?
    CheckZjpd { specs: Vec<String> },
    /// Does the idempotent family span the algebra?
    CheckImSpan { specs: Vec<String> },
    /// Condition 𝕄 for the spec's ideal and bimodule
    CheckConditionM { specs: Vec<String> },
    /// Solution space of a derivation-type identity or condition
    Solve {
        #[arg(long)]
        tag: ConditionTag,
        specs: Vec<String>,
    },
    /// Verify a theorem instance
    Verify {
        #[arg(long)]
        theorem: Theorem,
        specs: Vec<String>,
    },
    /// Every check on every spec (the builtin desk suite when none given)
    Suite { specs: Vec<String> },
}

/// A SPEC argument is a file path; if no such file exists, the argument
/// itself is tried as a document (`matrix(3)`, `algebra = remark`, ...).
fn load(arg: &str) -> Result<SpecSource, String> {
    let path = Path::new(arg);
    if path.exists() {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{arg}: {e}"))?;
        return Ok(SpecSource { name: arg.to_string(), text });
    }
    parse_spec(arg).map_err(|e| format!("{arg}: no such file, and not a spec document ({e})"))?;
    Ok(SpecSource { name: arg.to_string(), text: arg.to_string() })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, checks, args) = match cli.command {
        Command::CheckZpd { specs } => ("check-zpd", vec![Check::Zpd], specs),
        Command::CheckZjpd { specs } => ("check-zjpd", vec![Check::Zjpd], specs),
        Command::CheckImSpan { specs } => ("check-im-span", vec![Check::ImSpan], specs),
        Command::CheckConditionM { specs } => ("check-condition-m", vec![Check::ConditionM], specs),
        Command::Solve { tag, specs } => ("solve", vec![Check::Solve(tag)], specs),
        Command::Verify { theorem, specs } => ("verify", vec![Check::Verify(theorem)], specs),
        Command::Suite { specs } => ("suite", Check::suite(), specs),
    };
    let specs = if args.is_empty() && name == "suite" {
        builtin_suite()
    } else {
        match args.iter().map(|a| load(a)).collect::<Result<Vec<_>, _>>() {
            Ok(specs) => specs,
            Err(e) => {
                eprintln!("zpdlab: {e}");
                return ExitCode::from(2);
            }
        }
    };
    let cfg = RunConfig {
        seed: cli.opts.seed,
        budget: cli.opts.budget,
        samples: cli.opts.samples,
        target_dim: cli.opts.target_dim,
        ..RunConfig::new(name, specs, checks)
    };
    let report = match run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("zpdlab: {e}");
            return ExitCode::from(2);
        }
    };
    let json = report.to_json();
    match &cli.opts.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, json + "\n") {
                eprintln!("zpdlab: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => {
            // A closed pipe (e.g. `| head`) is not worth a panic.
            let mut out = std::io::stdout().lock();
            if writeln!(out, "{json}").is_err() {
                return ExitCode::from(report.exit_code() as u8);
            }
        }
    }
    ExitCode::from(report.exit_code() as u8)
}

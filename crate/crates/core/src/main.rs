use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use logfree::cli::{error_outcome, run, Command, Outcome};
use logfree::problem::{Options, Problem};
use logfree::{DetMethod, Error, FieldSpec, MonomialOrder};

/// Exact freeness certificates for logarithmic tangent sheaves.
#[derive(Parser, Debug)]
#[command(name = "logfree", version)]
struct Args {
    /// check-divisor | check-sequence | poschar | syzygies | divisor-of-map | independence | fixtures
    command: String,
    /// Problem file (logfree-problem/1 JSON); stdin when absent.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Write the certificate here instead of stdout.
    #[arg(long)]
    emit: Option<PathBuf>,
    /// grevlex | lex | gradedlex
    #[arg(long)]
    order: Option<String>,
    #[arg(long)]
    syzygy_degree_bound: Option<i64>,
    #[arg(long)]
    assume_independent: bool,
    /// bareiss | cofactor
    #[arg(long)]
    method: Option<String>,
}

fn outcome(args: &Args) -> Outcome {
    let name = args.command.clone();
    let prepared = (|| -> logfree::Result<(Command, Problem, Options)> {
        let command = Command::parse(&args.command)?;
        let flags = Options {
            order: args.order.as_deref().map(MonomialOrder::parse).transpose()?,
            syzygy_degree_bound: args.syzygy_degree_bound,
            assume_independent: args.assume_independent.then_some(true),
            method: args.method.as_deref().map(DetMethod::parse).transpose()?,
        };
        let problem = if command == Command::Fixtures {
            Problem::new(FieldSpec::Rationals, &["x0"])
        } else {
            let text = match &args.input {
                Some(p) => std::fs::read_to_string(p),
                None => std::io::read_to_string(std::io::stdin()),
            }
            .map_err(|e| Error::InvalidInput(format!("reading input: {e}")))?;
            Problem::from_json(&text)?
        };
        Ok((command, problem, flags))
    })();
    match prepared {
        Ok((command, problem, flags)) => run(command, &problem, &flags),
        Err(e) => error_outcome(&name, &e),
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let out = outcome(&args);
    let text = out.render();
    match &args.emit {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("logfree: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(out.exit_code as u8)
}

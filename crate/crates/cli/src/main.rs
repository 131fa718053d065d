use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use volterra_core::io::{format_trace, parse_bytes, print_integral, print_operator, render_dot};
use volterra_core::numeric::{verify_equivalence, Bindings};
use volterra_core::{reduce, Forest};

/// Reduce separable Volterra integral polynomials to operator-linear form.
#[derive(Parser)]
#[command(name = "volterra", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the reduced, branch-free forest.
    Reduce {
        #[command(flatten)]
        io: IoArgs,
        #[arg(long, value_enum, default_value_t = Format::Operator)]
        format: Format,
    },
    /// Print one line per rewrite step.
    Trace {
        #[command(flatten)]
        io: IoArgs,
    },
    /// Print the input forest as Graphviz DOT.
    Render {
        #[command(flatten)]
        io: IoArgs,
    },
    /// Print `E=.. N=.. D=..` for every tree of the input.
    Metrics {
        #[command(flatten)]
        io: IoArgs,
    },
    /// Check numerically that the input equals its reduction.
    Verify {
        #[command(flatten)]
        io: IoArgs,
        /// Kernel and function definitions.
        #[arg(long)]
        bindings: PathBuf,
        /// Compare against this expression instead of the reduction.
        #[arg(long)]
        against: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', default_values_t = vec![0.25, 0.5, 1.0])]
        samples: Vec<f64>,
        /// Simpson subintervals per nesting level (even).
        #[arg(long, default_value_t = 64)]
        n: usize,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
}

#[derive(Args)]
struct IoArgs {
    /// Input file; reads stdin when absent or `-`.
    input: Option<PathBuf>,
    /// Write the result here instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Operator,
    Integral,
}

enum Failure {
    Numeric,
    Input(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Numeric => 1,
            Failure::Input(_) => 2,
            Failure::Internal(_) => 3,
        }
    }
}

fn read_source(path: Option<&Path>) -> Result<(String, Vec<u8>), Failure> {
    match path {
        None => read_stdin(),
        Some(p) if p == Path::new("-") => read_stdin(),
        Some(p) => fs::read(p)
            .map(|bytes| (p.display().to_string(), bytes))
            .map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
    }
}

fn read_stdin() -> Result<(String, Vec<u8>), Failure> {
    let mut bytes = Vec::new();
    io::stdin()
        .read_to_end(&mut bytes)
        .map_err(|e| Failure::Input(format!("<stdin>: {e}")))?;
    Ok(("<stdin>".into(), bytes))
}

fn load_forest(path: Option<&Path>) -> Result<Forest, Failure> {
    let (name, bytes) = read_source(path)?;
    parse_bytes(&bytes).map_err(|e| Failure::Input(format!("{name}:{e}")))
}

fn reduced(f: &Forest) -> Result<Forest, Failure> {
    reduce(f)
        .map(|(out, _)| out)
        .map_err(|e| Failure::Internal(e.to_string()))
}

fn emit(io: &IoArgs, text: &str) -> Result<(), Failure> {
    match &io.output {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Input(format!("<stdout>: {e}"))),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Reduce { io, format } => {
            let out = reduced(&load_forest(io.input.as_deref())?)?;
            let text = match format {
                Format::Operator => print_operator(&out),
                Format::Integral => print_integral(&out),
            };
            emit(&io, &format!("{text}\n"))
        }
        Command::Trace { io } => {
            let f = load_forest(io.input.as_deref())?;
            let (_, trace) = reduce(&f).map_err(|e| Failure::Internal(e.to_string()))?;
            emit(&io, &format_trace(&trace))
        }
        Command::Render { io } => {
            let f = load_forest(io.input.as_deref())?;
            emit(&io, &render_dot(&f))
        }
        Command::Metrics { io } => {
            let f = load_forest(io.input.as_deref())?;
            let text: String = f
                .trees()
                .map(|t| {
                    let m = t.metrics();
                    format!(
                        "E={} N={} D={}\n",
                        m.edges, m.terminal_branches, m.terminal_length
                    )
                })
                .collect();
            emit(&io, &text)
        }
        Command::Verify {
            io,
            bindings,
            against,
            samples,
            n,
            tol,
        } => {
            let lhs = load_forest(io.input.as_deref())?;
            let rhs = match &against {
                Some(p) => load_forest(Some(p))?,
                None => reduced(&lhs)?,
            };
            let text = fs::read_to_string(&bindings)
                .map_err(|e| Failure::Input(format!("{}: {e}", bindings.display())))?;
            let b = Bindings::parse(&text)
                .map_err(|e| Failure::Input(format!("{}: {e}", bindings.display())))?;
            let report = verify_equivalence(&lhs, &rhs, &b, &samples, n, tol)
                .map_err(|e| Failure::Input(e.to_string()))?;
            let mut text = String::new();
            for s in &report.samples {
                text.push_str(&format!(
                    "x={} lhs={:.12e} rhs={:.12e} abs={:.3e} rel={:.3e} {}\n",
                    s.x,
                    s.lhs,
                    s.rhs,
                    s.abs_dev,
                    s.rel_dev,
                    if s.pass { "ok" } else { "FAIL" }
                ));
            }
            text.push_str(if report.passed() { "PASS\n" } else { "FAIL\n" });
            emit(&io, &text)?;
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Numeric)
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            match &failure {
                Failure::Numeric => {}
                Failure::Input(msg) => eprintln!("error: {msg}"),
                Failure::Internal(msg) => eprintln!("internal error: {msg}"),
            }
            ExitCode::from(failure.code())
        }
    }
}

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use swlab_core::{
    d0_full, enumerate_graph, EnvelopeReport, Error, Fault, Params, SuiteConfig, TameParam, Weight,
    WeightReport, WeylElement,
};

/// Serre weight combinatorics for GL_2 over F_{p^f}.
#[derive(Parser)]
#[command(name = "swlab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Args)]
struct Base {
    #[arg(long)]
    p: i64,
    #[arg(long)]
    f: usize,
    /// Weight as "a0,b0;a1,b1;...".
    #[arg(long)]
    mu: String,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Extension graph points in a coefficient box.
    Graph {
        #[command(flatten)]
        base: Base,
        #[arg(long, default_value_t = 2)]
        radius: i64,
    },
    /// Predicted weight set of a tame parameter.
    Weights {
        #[command(flatten)]
        base: Base,
        /// Weyl element as a string over {e,s}, one letter per embedding.
        #[arg(long)]
        w: String,
    },
    /// Graded pieces of the projective envelope.
    Envelope {
        #[command(flatten)]
        base: Base,
    },
    /// The D_0 constituents of a tame parameter.
    D0 {
        #[command(flatten)]
        base: Base,
        #[arg(long)]
        w: String,
    },
    /// Run the verification suite.
    Verify {
        /// Comma-separated primes; defaults to 5,7.
        #[arg(long, value_delimiter = ',')]
        p: Vec<i64>,
        /// Comma-separated degrees; defaults to 1,2.
        #[arg(long, value_delimiter = ',')]
        f: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        depth: i64,
        #[arg(long, default_value_t = 2)]
        radius: i64,
        #[arg(long, default_value_t = 10_000)]
        cases: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print JSON instead of a table.
        #[arg(long, value_enum)]
        format: Option<Format>,
        /// Run against a deliberately broken dot action.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

enum Failure {
    Input(String),
    Model(String),
    /// A complete report whose verdict is failure.
    FailedReport(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_model_violation() {
            Failure::Model(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

fn params(base: &Base) -> Result<(Params, Weight), Failure> {
    let params = Params::new(base.p, base.f)?;
    let mu = Weight::parse(&base.mu, base.f)?;
    Ok((params, mu))
}

fn tame(base: &Base, w: &str) -> Result<TameParam, Failure> {
    let (params, mu) = params(base)?;
    let w = WeylElement::parse(w, base.f)?;
    let t = TameParam::new(params, w, mu)?;
    if !t.is_one_generic() {
        return Err(Error::NotOneGeneric {
            mu: t.mu().to_string(),
        }
        .into());
    }
    Ok(t)
}

fn no_dot(format: Format, what: &str) -> Result<(), Failure> {
    match format {
        Format::Json => Ok(()),
        Format::Dot => Err(Failure::Input(format!("{what} has no DOT rendering"))),
    }
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json values print")
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Graph { base, radius } => {
            let (params, mu) = params(&base)?;
            let rep = enumerate_graph(&params, &mu, radius)?;
            Ok(match base.format {
                Format::Json => pretty(&rep.to_json()),
                Format::Dot => rep.to_dot(),
            })
        }
        Command::Weights { base, w } => {
            no_dot(base.format, "weights")?;
            let t = tame(&base, &w)?;
            Ok(pretty(&WeightReport::compute(&t)?.to_json()))
        }
        Command::Envelope { base } => {
            no_dot(base.format, "envelope")?;
            let (params, mu) = params(&base)?;
            Ok(pretty(&EnvelopeReport::compute(&params, &mu)?.to_json()))
        }
        Command::D0 { base, w } => {
            let t = tame(&base, &w)?;
            let rep = d0_full(&t)?;
            Ok(match base.format {
                Format::Json => pretty(&rep.to_json()),
                Format::Dot => rep.to_dot(),
            })
        }
        Command::Verify {
            p,
            f,
            depth,
            radius,
            cases,
            seed,
            format,
            inject_fault,
        } => {
            if format == Some(Format::Dot) {
                no_dot(Format::Dot, "verify")?;
            }
            let defaults = SuiteConfig::default();
            let cfg = SuiteConfig {
                p_list: if p.is_empty() { defaults.p_list } else { p },
                f_list: if f.is_empty() { defaults.f_list } else { f },
                depth,
                radius,
                cases,
                seed,
                fault: inject_fault.then_some(Fault::FlippedDotSign),
            };
            let out = swlab_core::run_suite(&cfg);
            let text = if format == Some(Format::Json) {
                pretty(&serde_json::to_value(&out).expect("suite outcome serializes"))
            } else {
                out.render_table()
            };
            if out.all_passed() {
                Ok(text)
            } else {
                Err(Failure::FailedReport(text))
            }
        }
    }
}

// A closed pipe downstream is not an error worth a panic.
fn print_out(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{}", text.trim_end());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("SWLAB_THREADS")
        .ok()
        .and_then(|s| s.parse().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    match run(cli) {
        Ok(text) => {
            print_out(&text);
            ExitCode::SUCCESS
        }
        Err(Failure::FailedReport(text)) => {
            print_out(&text);
            ExitCode::from(1)
        }
        Err(Failure::Model(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

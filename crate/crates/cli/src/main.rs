use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use betti_bounds::betti::BettiTable;
use betti_bounds::ek::ek_betti;
use betti_bounds::groebner::{gin_probabilistic, parse_polynomials, Polynomial, DEFAULT_TRIALS};
use betti_bounds::ideal::{random_monomial_ideal, random_stable_ideal};
use betti_bounds::koszul::{multigraded_betti, BettiOptions, DEFAULT_MAX_GENERATORS};
use betti_bounds::segments::{lex_segment_ideal, rev_segment_ideal, SegmentSpec};
use betti_bounds::suites::{run_suite, Suite, SweepConfig};
use betti_bounds::verify::{check_herzog_bounds, Render};
use betti_bounds::{Error, MonomialIdeal, PrimeField, TermOrder};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;

/// Graded Betti numbers of monomial ideals and checks of linear-strand bounds.
#[derive(Parser, Debug)]
#[command(name = "betti-bounds", version)]
struct Cli {
    /// Prime characteristic for Koszul homology and Gröbner computations.
    #[arg(long, global = true, default_value_t = 32003)]
    field_prime: u64,
    /// Master seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Refuse Koszul computations on ideals with more minimal generators.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_GENERATORS)]
    max_generators: usize,
    /// Spread strand computations and sweep instances over threads.
    #[arg(long, global = true)]
    parallel: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Ek,
    Koszul,
    Both,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SegmentKind {
    Rev,
    Lex,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum RandomKind {
    Stable,
    Monomial,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Herzog,
    Sandwich,
    EkVsKoszul,
    DifferentialLaws,
    Witness,
    Wsets,
    Gin,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Herzog => Suite::Herzog,
            SuiteArg::Sandwich => Suite::Sandwich,
            SuiteArg::EkVsKoszul => Suite::EkVsKoszul,
            SuiteArg::DifferentialLaws => Suite::DifferentialLaws,
            SuiteArg::Witness => Suite::Witness,
            SuiteArg::Wsets => Suite::Wsets,
            SuiteArg::Gin => Suite::Gin,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the Betti table of an ideal given as JSON.
    Betti {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
        /// Show the table of S/I instead of I.
        #[arg(long)]
        quotient: bool,
        /// Also check the linear-strand lower bounds on the table.
        #[arg(long)]
        bounds: bool,
    },
    /// Write the revlex or lex segment ideal spanned by the top k monomials of degree d.
    Segment {
        #[arg(value_enum)]
        kind: SegmentKind,
        d: u32,
        k: usize,
        #[arg(long, short)]
        n: usize,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Run a seeded property sweep.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Where reproducer files for failing instances go.
        #[arg(long, default_value = "repro")]
        repro_dir: PathBuf,
    },
    /// Write a seeded random ideal with k generators.
    Random {
        #[arg(value_enum)]
        kind: RandomKind,
        n: usize,
        /// Generator degree (stable) or maximal generator degree (monomial).
        d: u32,
        k: usize,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Probabilistic generic initial ideal in revlex.
    Gin {
        /// Ideal JSON, or polynomial text with one polynomial per line.
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        /// Number of variables for polynomial text input (default: largest index used).
        #[arg(long)]
        n: Option<usize>,
    },
    /// Report whether an ideal is stable and strongly stable.
    StableCheck { file: PathBuf },
}

/// Exit status plus what to print.
struct Outcome {
    ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome { ok: true }) => ExitCode::SUCCESS,
        Ok(Outcome { ok: false }) => ExitCode::from(EXIT_FAILURE),
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = match e.downcast_ref::<Error>() {
                Some(Error::GinInstability { .. }) => EXIT_FAILURE,
                _ => EXIT_USAGE,
            };
            ExitCode::from(code)
        }
    }
}

fn read_ideal(path: &Path) -> Result<MonomialIdeal> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    MonomialIdeal::from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_ideal(ideal: &MonomialIdeal, output: Option<&Path>) -> Result<()> {
    let text = ideal.to_json();
    match output {
        Some(p) => fs::write(p, format!("{text}\n")).with_context(|| format!("writing {}", p.display()))?,
        None => println!("{text}"),
    }
    eprintln!("{ideal}");
    Ok(())
}

fn field(cli: &Cli) -> Result<PrimeField> {
    Ok(PrimeField::new(cli.field_prime)?)
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Betti { file, method, quotient, bounds } => cmd_betti(cli, file, *method, *quotient, *bounds),
        Command::Segment { kind, d, k, n, output } => {
            let spec = SegmentSpec::new(*n, *d, *k)?;
            let ideal = match kind {
                SegmentKind::Rev => rev_segment_ideal(&spec)?,
                SegmentKind::Lex => lex_segment_ideal(&spec)?,
            };
            write_ideal(&ideal, output.as_deref())?;
            Ok(Outcome { ok: true })
        }
        Command::Verify { suite, count, repro_dir } => cmd_verify(cli, (*suite).into(), *count, repro_dir),
        Command::Random { kind, n, d, k, output } => {
            let ideal = match kind {
                RandomKind::Stable => random_stable_ideal(*n, *d, *k, cli.seed)?,
                RandomKind::Monomial => random_monomial_ideal(*n, *d, *k, cli.seed)?,
            };
            write_ideal(&ideal, output.as_deref())?;
            Ok(Outcome { ok: true })
        }
        Command::Gin { file, trials, n } => cmd_gin(cli, file, *trials, *n),
        Command::StableCheck { file } => {
            let ideal = read_ideal(file)?;
            let violation = ideal.stability_violation();
            let strongly = ideal.is_strongly_stable();
            match cli.format {
                Format::Json => println!(
                    "{}",
                    json!({
                        "stable": violation.is_none(),
                        "strongly_stable": strongly,
                        "violation": violation.as_ref().map(|(g, r)| json!({"generator": g, "required": r})),
                    })
                ),
                Format::Text => {
                    match &violation {
                        None => println!("stable: yes"),
                        Some((g, r)) => println!("stable: no ({g} requires {r})"),
                    }
                    println!("strongly stable: {}", if strongly { "yes" } else { "no" });
                }
            }
            Ok(Outcome { ok: violation.is_none() })
        }
    }
}

fn cmd_betti(cli: &Cli, file: &Path, method: Method, quotient: bool, bounds: bool) -> Result<Outcome> {
    let ideal = read_ideal(file)?;
    let view = |t: BettiTable| if quotient { t.quotient_view() } else { t };
    let ek = match method {
        Method::Ek | Method::Both => Some(view(ek_betti(&ideal)?)),
        Method::Koszul => None,
    };
    let koszul = match method {
        Method::Koszul | Method::Both => {
            let opts = BettiOptions {
                max_generators: cli.max_generators,
                parallel: cli.parallel,
                ..BettiOptions::default()
            };
            Some(view(multigraded_betti(&ideal, field(cli)?, &opts)?.1))
        }
        Method::Ek => None,
    };
    let verdict = match (&ek, &koszul) {
        (Some(a), Some(b)) => Some(a == b),
        _ => None,
    };
    let shown = ek.as_ref().or(koszul.as_ref()).expect("some method ran");
    let report = if bounds { Some(check_herzog_bounds(shown)?) } else { None };
    match cli.format {
        Format::Json => {
            let mut out = json!({"ideal": ideal, "module": if quotient { "quotient" } else { "ideal" }});
            if let Some(t) = &ek {
                out["ek"] = serde_json::to_value(t)?;
            }
            if let Some(t) = &koszul {
                out["koszul"] = serde_json::to_value(t)?;
                out["field_prime"] = json!(cli.field_prime);
            }
            if let Some(v) = verdict {
                out["match"] = json!(v);
            }
            if let Some(r) = &report {
                out["bounds"] = serde_json::to_value(r)?;
            }
            println!("{out}");
        }
        Format::Text => {
            let mut out = std::io::stdout().lock();
            if let Some(t) = &ek {
                writeln!(out, "ek:\n{}", t.render())?;
            }
            if let Some(t) = &koszul {
                writeln!(out, "koszul (q = {}):\n{}", cli.field_prime, t.render())?;
            }
            if let Some(v) = verdict {
                writeln!(out, "{}", if v { "MATCH" } else { "MISMATCH" })?;
            }
            if let Some(r) = &report {
                write!(out, "{}", r.render())?;
            }
        }
    }
    Ok(Outcome { ok: verdict.unwrap_or(true) && report.map_or(true, |r| r.pass) })
}

fn cmd_verify(cli: &Cli, suite: Suite, count: usize, repro_dir: &Path) -> Result<Outcome> {
    let cfg = SweepConfig {
        count,
        seed: cli.seed,
        prime: cli.field_prime,
        parallel: cli.parallel,
        ..SweepConfig::default()
    };
    let report = run_suite(suite, &cfg)?;
    let mut written = Vec::new();
    for r in report.failures() {
        if let Some(repro) = &r.reproducer {
            fs::create_dir_all(repro_dir).with_context(|| format!("creating {}", repro_dir.display()))?;
            let path = repro_dir.join(format!("{}-{}-{}.json", suite, r.index, r.seed));
            fs::write(&path, serde_json::to_string_pretty(repro)?)?;
            written.push(path);
        }
    }
    match cli.format {
        Format::Json => println!("{}", serde_json::to_string(&report)?),
        Format::Text => print!("{}", report.render()),
    }
    for p in &written {
        eprintln!("reproducer written to {}", p.display());
    }
    Ok(Outcome { ok: report.pass() })
}

fn cmd_gin(cli: &Cli, file: &Path, trials: usize, n: Option<usize>) -> Result<Outcome> {
    let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let f = field(cli)?;
    let gens: Vec<Polynomial> = if text.trim_start().starts_with('{') {
        let ideal = MonomialIdeal::from_json(&text)?;
        ideal.generators().iter().map(|g| Polynomial::monomial(g.clone(), f, TermOrder::RevLex)).collect()
    } else {
        parse_polynomials(&text, n, f, TermOrder::RevLex)?
    };
    let report = gin_probabilistic(&gens, trials, cli.seed)?;
    if let Some(w) = &report.warning {
        eprintln!("warning: {w}");
    }
    match cli.format {
        Format::Json => println!("{}", serde_json::to_string(&report)?),
        Format::Text => {
            println!("gin: {}", report.ideal);
            println!("consensus over {} trials in characteristic {}", report.trials, report.prime);
            println!("stable: {}", if report.ideal.is_stable() { "yes" } else { "no" });
        }
    }
    Ok(Outcome { ok: true })
}

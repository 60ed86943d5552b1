//! `klr`: validate Cartan data, reduce diagram words, run verification
//! suites and tabulate pairings.  Exit codes: 0 success, 1 a check failed,
//! 2 usage or parse error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use klr::cartan::{ValidatedCartan, Weight};
use klr::config::{Config, Format};
use klr::k0::pairing_matrix;
use klr::klr::{DiagramWord, KlrAlgebra};
use klr::qring::expand;
use klr::report::Report;
use klr::suite::{self, Suite};

#[derive(Parser)]
#[command(name = "klr", version, about = "Exact computations in quiver Hecke algebras")]
struct Cli {
    /// TOML file with the Cartan datum, optional tau data and options.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Truncation degree of q-series (overrides the config).
    #[arg(long, global = true, value_parser = clap::value_parser!(i64).range(1..))]
    trunc: Option<i64>,
    /// Seed of the randomized checks (overrides the config).
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum)]
    format: Option<OutFormat>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Text,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Checks the Cartan datum axioms.
    Validate,
    /// Normal form of a word such as `bot=i,j; atoms=c1,x2`.
    Nf { word: String },
    /// The product `top * bottom` (top stacked on bottom).
    Mult { top: String, bottom: String },
    /// Runs a verification suite.
    Suite {
        #[arg(value_enum)]
        which: SuiteName,
    },
    /// CSV table of truncated pairings `([P_s], [P_t])`.
    Pair {
        /// Vertex multiset such as `i,i,j`; all weights up to `--max-strands` if absent.
        #[arg(long)]
        weight: Option<String>,
        #[arg(long, default_value_t = 3)]
        max_strands: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteName {
    Relations,
    Nilhecke,
    Serre,
    Pair,
    Tau,
    Multigrade,
}

impl From<SuiteName> for Suite {
    fn from(s: SuiteName) -> Suite {
        match s {
            SuiteName::Relations => Suite::Relations,
            SuiteName::Nilhecke => Suite::NilHecke,
            SuiteName::Serre => Suite::Serre,
            SuiteName::Pair => Suite::Pair,
            SuiteName::Tau => Suite::Tau,
            SuiteName::Multigrade => Suite::Multigrade,
        }
    }
}

/// Failure with its exit code.
struct Fail(u8, String);

fn parse_error(e: impl ToString) -> Fail {
    Fail(2, e.to_string())
}

fn load(cli: &Cli) -> Result<Config, Fail> {
    let path = cli.config.as_ref().ok_or_else(|| Fail(2, "--config PATH is required".into()))?;
    let text = std::fs::read_to_string(path).map_err(|e| Fail(2, format!("{}: {e}", path.display())))?;
    Config::parse(&text).map_err(parse_error)
}

fn validated(config: &Config) -> Result<ValidatedCartan, Fail> {
    config.validate().map_err(|e| Fail(1, e.to_string()))
}

fn parse_weight(text: &str, datum: &ValidatedCartan) -> Result<Weight, Fail> {
    let mut w = Weight::zero(datum.rank());
    for name in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        w.add_vertex(datum.vertex(name).map_err(parse_error)?, 1);
    }
    Ok(w)
}

fn print_report(report: &Report, header: &str, format: Format) {
    match format {
        Format::Text => print!("# {header}\n{report}"),
        Format::Csv => {
            eprintln!("# {header}");
            print!("{}", report.to_csv());
        }
    }
}

fn run(cli: &Cli) -> Result<(), Fail> {
    // the nilHecke suite needs no datum
    if let Command::Suite { which: SuiteName::Nilhecke } = cli.command {
        let format = cli.format.map(format_of).unwrap_or_default();
        let report = suite::nilhecke();
        print_report(&report, "suite nilhecke", format);
        return if report.all_passed() { Ok(()) } else { Err(Fail(1, "verification failed".into())) };
    }
    let config = load(cli)?;
    let format = cli.format.map(format_of).or(config.options.format).unwrap_or_default();
    let trunc = cli.trunc.unwrap_or_else(|| config.trunc());
    let seed = cli.seed.or(config.options.seed).unwrap_or(0);
    match &cli.command {
        Command::Validate => {
            let datum = validated(&config)?;
            let names = datum.names().join(",");
            println!("valid Cartan datum on {names}");
        }
        Command::Nf { word } => {
            let datum = validated(&config)?;
            let w = DiagramWord::parse(word, &datum).map_err(parse_error)?;
            print!("{}", KlrAlgebra::new(datum.clone()).normal_form(&w).render(&datum));
        }
        Command::Mult { top, bottom } => {
            let datum = validated(&config)?;
            let (a, b) = (DiagramWord::parse(top, &datum).map_err(parse_error)?, DiagramWord::parse(bottom, &datum).map_err(parse_error)?);
            let alg = KlrAlgebra::new(datum.clone());
            print!("{}", alg.multiply(&alg.normal_form(&a), &alg.normal_form(&b)).render(&datum));
        }
        Command::Suite { which } => {
            let datum = validated(&config)?;
            let tau = config.tau(&datum).map_err(parse_error)?;
            let alg = KlrAlgebra::new(datum);
            let s = Suite::from(*which);
            let report = suite::run(s, &alg, &tau, seed, trunc);
            print_report(&report, &format!("suite {} seed {seed} trunc {trunc}", s.name()), format);
            if !report.all_passed() {
                return Err(Fail(1, format!("{} of {} checks failed", report.failures().count(), report.len())));
            }
        }
        Command::Pair { weight, max_strands } => {
            let datum = validated(&config)?;
            let weights = match weight {
                Some(w) => vec![parse_weight(w, &datum)?],
                None => datum.weights_up_to(*max_strands).into_iter().filter(|w| w.total() > 0).collect(),
            };
            let alg = KlrAlgebra::new(datum.clone());
            let mut out = csv::Writer::from_writer(std::io::stdout());
            let io = |e: csv::Error| Fail(2, e.to_string());
            out.write_record(["s", "t", "series"]).map_err(io)?;
            for nu in weights {
                let seqs = datum.divided_sequences(&nu).map_err(parse_error)?;
                let m = pairing_matrix(&alg, &seqs);
                for (x, s) in seqs.iter().enumerate() {
                    for (y, t) in seqs.iter().enumerate() {
                        let series = expand(&m[x][y], trunc).to_string();
                        out.write_record([datum.fmt_seqd(s), datum.fmt_seqd(t), series]).map_err(io)?;
                    }
                }
            }
            out.flush().map_err(|e| Fail(2, e.to_string()))?;
        }
    }
    Ok(())
}

fn format_of(f: OutFormat) -> Format {
    match f {
        OutFormat::Text => Format::Text,
        OutFormat::Csv => Format::Csv,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

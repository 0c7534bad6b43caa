use std::ops::RangeInclusive;
use std::process::ExitCode;

use anyhow::bail;
use clap::{Parser, Subcommand, ValueEnum};
use statecomp::bounds::bound_table;
use statecomp::oracle::{membership_oracle, Sampling};
use statecomp::report::{render_bound_table, render_cells, Format, RenderOptions};
use statecomp::verify::{conjecture_scan, verify_cell, verify_table, ScanConfig, Summary, VerifyConfig};
use statecomp::witness::monoid_size;
use statecomp::{OperationId, WitnessSpec, DEFAULT_SUBSET_CAP};

#[derive(Parser)]
#[command(name = "statecomp", version, about = "Measure state complexity of combined regular operations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Csv,
    Json,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Text => Format::Text,
            OutputFormat::Csv => Format::Csv,
            OutputFormat::Json => Format::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print a witness DFA in the text format, e.g. `U:n=5:order=bac`.
    Witness {
        #[arg(value_parser = parse_spec)]
        spec: WitnessSpec,
    },
    /// Measure the state complexity of one cell.
    Complexity {
        #[arg(value_parser = parse_op)]
        op: OperationId,
        #[arg(long, default_value_t = 3)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_SUBSET_CAP)]
        cap: usize,
    },
    /// Evaluate the closed-form bound of one cell.
    Bound {
        #[arg(value_parser = parse_op)]
        op: OperationId,
        #[arg(long, default_value_t = 3)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// Dump every bound over a range as CSV.
    BoundTable {
        #[arg(long, default_value = "3..12", value_parser = parse_range)]
        m: RangeInclusive<usize>,
        #[arg(long, default_value = "3..12", value_parser = parse_range)]
        n: RangeInclusive<usize>,
    },
    /// Measure cells and compare them with their bounds.
    Verify {
        /// An operation slug or symbol, or `all`.
        #[arg(default_value = "all")]
        op: String,
        #[arg(long, default_value = "3..6", value_parser = parse_range)]
        m: RangeInclusive<usize>,
        #[arg(long, default_value = "3..6", value_parser = parse_range)]
        n: RangeInclusive<usize>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        #[arg(long, default_value_t = DEFAULT_SUBSET_CAP)]
        cap: usize,
        #[arg(long)]
        jobs: Option<usize>,
        /// Write 0 in the millis column so reports are reproducible.
        #[arg(long)]
        no_timing: bool,
    },
    /// Check a pipeline against direct membership semantics.
    Oracle {
        #[arg(value_parser = parse_op)]
        op: OperationId,
        #[arg(long, default_value_t = 3)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        words: usize,
        #[arg(long, default_value_t = 12)]
        maxlen: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Test every word up to --maxlen instead of sampling.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = DEFAULT_SUBSET_CAP)]
        cap: usize,
    },
    /// Measure the star of an intersection at the given pairs.
    Conjecture {
        #[arg(long, value_delimiter = ',', value_parser = parse_pair, default_value = "3:3,3:4,3:5")]
        pairs: Vec<(usize, usize)>,
        #[arg(long, default_value_t = DEFAULT_SUBSET_CAP)]
        cap: usize,
        /// Skip pairs whose product m*n exceeds this.
        #[arg(long, default_value_t = statecomp::verify::DEFAULT_BIT_CAP)]
        bit_cap: usize,
        /// Also measure the star of a difference with the six-letter pair.
        #[arg(long)]
        difference: bool,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        #[arg(long)]
        no_timing: bool,
    },
    /// Size of the transition monoid generated by some letters of a witness.
    Monoid {
        #[arg(value_parser = parse_spec)]
        spec: WitnessSpec,
        /// Generating letters; defaults to the whole alphabet.
        #[arg(long)]
        letters: Option<String>,
    },
}

fn parse_op(s: &str) -> Result<OperationId, String> {
    s.parse().map_err(|e: statecomp::Error| e.to_string())
}

fn parse_spec(s: &str) -> Result<WitnessSpec, String> {
    s.parse().map_err(|e: statecomp::Error| e.to_string())
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad number {t:?} in {s:?}"));
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (num(lo)?, num(hi.trim_start_matches('='))?),
        None => (num(s)?, num(s)?),
    };
    if lo > hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok(lo..=hi)
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (m, n) = s.split_once(':').ok_or_else(|| format!("expected M:N, got {s:?}"))?;
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad number {t:?} in {s:?}"));
    Ok((num(m)?, num(n)?))
}

/// Failures that are the caller's fault and exit with status 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(e: statecomp::Error) -> anyhow::Error {
    Usage(e.to_string()).into()
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Witness { spec } => {
            print!("{}", spec.build().map_err(usage)?.to_text());
            Ok(true)
        }
        Command::Complexity { op, m, n, cap } => {
            let cell = verify_cell(op, m, n, cap).map_err(usage)?;
            match cell.measured {
                Some(v) => println!("{v}"),
                None => bail!("{} m={m} n={n}: {}", op.slug(), cell.note.unwrap_or_default()),
            }
            Ok(true)
        }
        Command::Bound { op, m, n } => {
            match op.evaluate(m, n) {
                Ok(v) => println!("{v}"),
                Err(statecomp::Error::NoKnownBound(_)) => println!("open"),
                Err(e) => return Err(usage(e)),
            }
            Ok(true)
        }
        Command::BoundTable { m, n } => {
            if *m.start() < 3 || *n.start() < 3 {
                return Err(Usage("ranges must start at 3 or above".into()).into());
            }
            print!("{}", render_bound_table(&bound_table(&OperationId::ALL, m, n))?);
            Ok(true)
        }
        Command::Verify { op, m, n, format, cap, jobs, no_timing } => {
            let ops = if op == "all" {
                OperationId::ALL.to_vec()
            } else {
                vec![parse_op(&op).map_err(Usage)?]
            };
            let cells = verify_table(&ops, m, n, VerifyConfig { cap, jobs }).map_err(usage)?;
            let opts = RenderOptions { format: format.into(), timing: !no_timing, diagnostics: true };
            print!("{}", render_cells(&cells, opts)?);
            let summary = Summary::of(&cells);
            if !matches!(format, OutputFormat::Text) {
                eprintln!("{summary}");
            }
            Ok(summary.failures == 0)
        }
        Command::Oracle { op, m, n, words, maxlen, seed, exhaustive, json, cap } => {
            let sampling = if exhaustive {
                Sampling::Exhaustive
            } else {
                Sampling::Random { count: words, seed }
            };
            if n < 3 || (op.arity() == 2 && m < 3) {
                return Err(Usage(format!("cells need m, n >= 3, got m = {m}, n = {n}")).into());
            }
            let r = membership_oracle(op, m, n, maxlen, sampling, cap)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&r)?);
            } else {
                let m_text = r.m.map_or("-".to_string(), |m| m.to_string());
                let seed_text = r.seed.map_or("exhaustive".to_string(), |s| format!("seed={s}"));
                println!(
                    "{} m={m_text} n={} words={} maxlen={} {seed_text} disagreements={}",
                    op.slug(),
                    r.n,
                    r.words_tested,
                    r.max_length,
                    r.disagreements
                );
                if let Some(w) = &r.sample {
                    println!("first disagreement: {w:?}");
                }
            }
            Ok(r.passed())
        }
        Command::Conjecture { pairs, cap, bit_cap, difference, format, no_timing } => {
            let cells = conjecture_scan(&pairs, ScanConfig { cap, bit_cap, with_difference: difference })
                .map_err(usage)?;
            let opts = RenderOptions { format: format.into(), timing: !no_timing, diagnostics: true };
            print!("{}", render_cells(&cells, opts)?);
            Ok(Summary::of(&cells).failures == 0)
        }
        Command::Monoid { spec, letters } => {
            let d = spec.build().map_err(usage)?;
            let letters: Vec<char> = match letters {
                Some(l) => l.chars().collect(),
                None => d.alphabet().to_vec(),
            };
            println!("{}", monoid_size(&d, &letters).map_err(usage)?);
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Usage>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

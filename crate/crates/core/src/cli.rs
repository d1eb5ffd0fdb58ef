//! The `aif` command line. Usage errors exit with 2, data and validation
//! errors with 1.

use std::error::Error;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::json;

use crate::bits::BitString;
use crate::complexity::{estimate_k, estimate_k_conditional, fe_bound, pack_with_length, Registry};
use crate::dataset::{parse_rational, Dataset};
use crate::forecast::{
    classify, find_minimal_n, locus, predictor_by_name, Metric, MinimalN, PrecisionSpec, Radius,
};
use crate::generators::{
    champernowne, coin_flip_dataset, dyadic_dataset, dyadic_target_dataset, markov_simulate, prng_dataset,
    prng_truncated, MarkovChainSpec,
};
use crate::selfdelim::{codec_table, decode_stream, encode, Scheme};

type CliResult = Result<(), Box<dyn Error>>;

pub const SEED_ENV: &str = "AIF_SEED";

#[derive(Debug, Parser)]
#[command(name = "aif", version, about = "Algorithmic information forecastability toolkit")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Encode an integer with a self-delimiting code.
    Encode {
        #[arg(long)]
        value: BigUint,
        #[arg(long, default_value = "lgstar")]
        scheme: Scheme,
    },
    /// Decode a concatenation of codewords, one value per output line.
    Decode {
        #[arg(long)]
        bits: BitString,
        #[arg(long, default_value = "lgstar")]
        scheme: Scheme,
    },
    /// Codeword lengths of 2^L - 1 for L = 2, 2 + step, ... as CSV.
    CodecTable {
        #[arg(long, default_value_t = 4096)]
        max_bits: u64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        step: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate an example process.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Compressed-length upper bound on K(x), or K(x|cond) with --cond.
    EstimateK {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        cond: Option<PathBuf>,
        #[arg(long, default_value = "brotli")]
        backend: String,
        /// Read the files as '0'/'1' text and estimate the packed bit strings.
        #[arg(long)]
        bits: bool,
    },
    /// Upper bound on forecast ergodicity, K(Y_N | X_N), of a dataset's training split.
    FeBound {
        #[arg(long)]
        train: PathBuf,
        #[arg(long, default_value = "brotli")]
        backend: String,
    },
    /// PrF-locus curve L(eps) as CSV `epsilon,fraction`.
    Locus {
        #[command(flatten)]
        data: EvalData,
        #[arg(long)]
        predictor: String,
        #[arg(long, default_value = "abs")]
        metric: MetricArg,
        #[arg(long)]
        scale: Option<f64>,
        #[arg(long, value_delimiter = ',', required = true)]
        epsilons: Vec<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// OF / PF / PrF verdict as a JSON report.
    Classify {
        #[command(flatten)]
        data: EvalData,
        #[arg(long)]
        predictor: String,
        #[arg(long, default_value = "exact")]
        metric: MetricArg,
        #[arg(long)]
        scale: Option<f64>,
        /// Ball radius; `p/q` is read as an exact rational.
        #[arg(long)]
        epsilon: Option<Radius>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Smallest training split that makes every later record forecastable.
    FindN {
        #[arg(long)]
        stream: PathBuf,
        #[arg(long)]
        predictor: String,
        #[arg(long, default_value = "exact")]
        metric: MetricArg,
        #[arg(long)]
        scale: Option<f64>,
        #[arg(long)]
        epsilon: Option<Radius>,
        #[arg(long)]
        horizon: usize,
    },
}

#[derive(Debug, Args)]
struct EvalData {
    /// Training records; with no --eval, the file's own split is used.
    #[arg(long)]
    train: PathBuf,
    /// Records to forecast, appended after the training file's records.
    #[arg(long)]
    eval: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MetricArg {
    Abs,
    Hamming,
    Exact,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DyadicTask {
    /// y_m is the m-term partial sum.
    Partial,
    /// y_m is omega itself.
    Approx,
}

#[derive(Debug, Subcommand)]
enum GenCommand {
    /// The binary Champernowne string 0 1 10 11 ... n, printed as bits.
    Champernowne {
        #[arg(long)]
        n: u64,
    },
    /// Records (x_m, x_{m+1}) of the PRNG x -> frac((x + pi)^5).
    Prng {
        /// Initial state x_0 in [0, 1).
        #[arg(long, default_value_t = 0.0)]
        seed: f64,
        #[arg(long)]
        count: usize,
        /// Truncate outputs to a random precision in s_min..=s bits: `s,s_min`.
        #[arg(long, value_parser = parse_pair)]
        truncate: Option<(u32, u32)>,
        /// Seed for the precision draws; defaults to AIF_SEED or 0.
        #[arg(long)]
        trigger_seed: Option<u64>,
        #[arg(long)]
        split: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A simulated Markov chain trajectory.
    Markov {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        split: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Truncated binary expansions of omega.
    Dyadic {
        #[arg(long)]
        omega: String,
        #[arg(long)]
        terms: usize,
        #[arg(long, default_value = "partial")]
        task: DyadicTask,
        #[arg(long)]
        split: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Independent fair coin flips as 1-bit inputs and outputs.
    Coin {
        #[arg(long)]
        count: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        split: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_pair(text: &str) -> Result<(u32, u32), String> {
    let (a, b) = text.split_once(',').ok_or("expected two integers `s,s_min`")?;
    let int = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("{t:?}: {e}"));
    Ok((int(a)?, int(b)?))
}

/// Parses `std::env::args` and runs; returns the process exit code.
pub fn run() -> i32 {
    let args: Vec<String> = std::env::args().collect();
    run_from(&args)
}

pub fn run_from(args: &[String]) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let ctx = match Context::new(args) {
        Ok(ctx) => ctx,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    match execute(cli.command, &ctx) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

struct Context {
    seed: u64,
    command_line: String,
}

impl Context {
    fn new(args: &[String]) -> Result<Self, String> {
        let seed = match std::env::var(SEED_ENV) {
            Ok(v) => v.trim().parse().map_err(|_| format!("{SEED_ENV}={v:?} is not a 64-bit unsigned integer"))?,
            Err(_) => 0,
        };
        let mut parts = vec!["aif".to_string()];
        parts.extend(args.iter().skip(1).cloned());
        Ok(Self {
            seed,
            command_line: parts.join(" "),
        })
    }

    fn seed_or_default(&self, seed: Option<u64>) -> u64 {
        seed.unwrap_or(self.seed)
    }

    fn csv_header(&self, seed: u64) -> String {
        format!(
            "# aif {}\n# command: {}\n# seed: {seed}\n",
            env!("CARGO_PKG_VERSION"),
            self.command_line
        )
    }
}

fn output(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn read_dataset(path: &Path) -> Result<Dataset, Box<dyn Error>> {
    let file = File::open(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Dataset::read_jsonl(BufReader::new(file)).map_err(|e| format!("{}: {e}", path.display()).into())
}

fn load_eval(data: &EvalData) -> Result<Dataset, Box<dyn Error>> {
    let train = read_dataset(&data.train)?;
    match &data.eval {
        None => Ok(train),
        Some(eval) => {
            let future = read_dataset(eval)?;
            let mut train = train;
            if train.split() != train.len() {
                train = train.with_split(train.len())?;
            }
            Ok(Dataset::join(&train, &future)?)
        }
    }
}

fn metric_of(arg: MetricArg, scale: Option<f64>) -> Result<Metric, Box<dyn Error>> {
    Ok(match (arg, scale) {
        (MetricArg::Abs, scale) => Metric::Absolute {
            scale: scale.unwrap_or(1.0),
        },
        (_, Some(_)) => return Err("--scale only applies to --metric abs".into()),
        (MetricArg::Hamming, None) => Metric::Hamming,
        (MetricArg::Exact, None) => Metric::Exact,
    })
}

fn precision_of(arg: MetricArg, scale: Option<f64>, epsilon: Option<Radius>) -> Result<PrecisionSpec, Box<dyn Error>> {
    let metric = metric_of(arg, scale)?;
    let radius = match (metric, epsilon) {
        (Metric::Exact, e) => e.unwrap_or(Radius::Real(0.0)),
        (_, Some(e)) => e,
        (_, None) => return Err(format!("--epsilon is required for --metric {}", metric.name()).into()),
    };
    Ok(PrecisionSpec::new(metric, radius)?)
}

fn write_jsonl(ds: &Dataset, out: Option<&Path>) -> CliResult {
    let mut w = output(out)?;
    ds.write_jsonl(&mut w)?;
    w.flush()?;
    Ok(())
}

fn print_json(value: &impl serde::Serialize, out: Option<&Path>) -> CliResult {
    let mut w = output(out)?;
    serde_json::to_writer(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn default_split(count: usize) -> usize {
    (count / 2).max(1)
}

fn execute(command: Command, ctx: &Context) -> CliResult {
    match command {
        Command::Encode { value, scheme } => {
            println!("{}", encode(scheme, &value));
        }
        Command::Decode { bits, scheme } => {
            let values = decode_stream(scheme, &bits)?;
            let mut w = output(None)?;
            for v in values {
                writeln!(w, "{v}")?;
            }
            w.flush()?;
        }
        Command::CodecTable { max_bits, step, out } => {
            let mut w = output(out.as_deref())?;
            w.write_all(ctx.csv_header(ctx.seed).as_bytes())?;
            writeln!(w, "bits,dup_len,lgstar_len")?;
            for row in codec_table(max_bits, step) {
                writeln!(w, "{},{},{}", row.bits, row.dup_len, row.lgstar_len)?;
            }
            w.flush()?;
        }
        Command::Gen(gen) => run_gen(gen, ctx)?,
        Command::EstimateK {
            input,
            cond,
            backend,
            bits,
        } => {
            let registry = Registry::standard();
            let backend = registry.get(&backend)?;
            let load = |p: &Path| -> Result<Vec<u8>, Box<dyn Error>> {
                let mut raw = Vec::new();
                File::open(p)
                    .and_then(|mut f| f.read_to_end(&mut raw))
                    .map_err(|e| format!("{}: {e}", p.display()))?;
                if !bits {
                    return Ok(raw);
                }
                let text = String::from_utf8(raw).map_err(|_| format!("{}: not UTF-8 text", p.display()))?;
                let b: BitString = text.trim().parse().map_err(|e| format!("{}: {e}", p.display()))?;
                Ok(pack_with_length(&b))
            };
            let x = load(&input)?;
            let est = match cond {
                None => estimate_k(&x, backend),
                Some(c) => estimate_k_conditional(&x, &load(&c)?, backend),
            };
            print_json(&est, None)?;
        }
        Command::FeBound { train, backend } => {
            let registry = Registry::standard();
            let ds = read_dataset(&train)?;
            let est = fe_bound(&ds, registry.get(&backend)?)?;
            print_json(&json!({ "estimate": est, "n": ds.split() }), None)?;
        }
        Command::Locus {
            data,
            predictor,
            metric,
            scale,
            epsilons,
            out,
        } => {
            let ds = load_eval(&data)?;
            let mut p = predictor_by_name(&predictor)?;
            let curve = locus(&ds, p.as_mut(), metric_of(metric, scale)?, &epsilons)?;
            let mut w = output(out.as_deref())?;
            w.write_all(ctx.csv_header(ctx.seed).as_bytes())?;
            writeln!(w, "# predictor: {}, N: {}, M: {}", curve.predictor, curve.n, ds.len())?;
            writeln!(w, "epsilon,fraction")?;
            for pt in &curve.points {
                writeln!(w, "{:?},{:?}", pt.epsilon, pt.fraction)?;
            }
            w.flush()?;
        }
        Command::Classify {
            data,
            predictor,
            metric,
            scale,
            epsilon,
            out,
        } => {
            let ds = load_eval(&data)?;
            let precision = precision_of(metric, scale, epsilon)?;
            let mut p = predictor_by_name(&predictor)?;
            let report = classify(&ds, p.as_mut(), &precision)?;
            print_json(&report, out.as_deref())?;
        }
        Command::FindN {
            stream,
            predictor,
            metric,
            scale,
            epsilon,
            horizon,
        } => {
            let ds = read_dataset(&stream)?;
            let precision = precision_of(metric, scale, epsilon)?;
            let mut p = predictor_by_name(&predictor)?;
            let result = find_minimal_n(&ds, p.as_mut(), &precision, horizon)?;
            let found = matches!(result, MinimalN::Found { .. });
            print_json(
                &json!({
                    "result": result,
                    "predictor": p.name(),
                    "epsilon": precision,
                    "m": ds.len(),
                    "horizon": horizon,
                }),
                None,
            )?;
            if !found {
                return Err(format!("no N in 1..={} works", horizon.min(ds.len())).into());
            }
        }
    }
    Ok(())
}

fn run_gen(gen: GenCommand, ctx: &Context) -> CliResult {
    match gen {
        GenCommand::Champernowne { n } => {
            println!("{}", champernowne(n));
        }
        GenCommand::Prng {
            seed,
            count,
            truncate,
            trigger_seed,
            split,
            out,
        } => {
            let split = split.unwrap_or(default_split(count));
            let ds = match truncate {
                None => prng_dataset(seed, count, split)?,
                Some((s, s_min)) => {
                    let trigger = ctx.seed_or_default(trigger_seed);
                    prng_truncated(seed, count, s, s_min, trigger, split)?.dataset
                }
            };
            write_jsonl(&ds, out.as_deref())?;
        }
        GenCommand::Markov {
            spec,
            steps,
            seed,
            split,
            out,
        } => {
            let text = std::fs::read_to_string(&spec).map_err(|e| format!("{}: {e}", spec.display()))?;
            let chain = MarkovChainSpec::from_json(&text).map_err(|e| format!("{}: {e}", spec.display()))?;
            let seed = ctx.seed_or_default(seed);
            let mut ds = markov_simulate(&chain, steps, seed)?.dataset;
            if let Some(s) = split {
                ds = ds.with_split(s)?;
            }
            write_jsonl(&ds, out.as_deref())?;
        }
        GenCommand::Dyadic {
            omega,
            terms,
            task,
            split,
            out,
        } => {
            let omega = parse_rational(&omega)?;
            let mut ds = match task {
                DyadicTask::Partial => dyadic_dataset(&omega, terms)?,
                DyadicTask::Approx => dyadic_target_dataset(&omega, terms)?,
            };
            if let Some(s) = split {
                ds = ds.with_split(s)?;
            }
            write_jsonl(&ds, out.as_deref())?;
        }
        GenCommand::Coin { count, seed, split, out } => {
            let seed = ctx.seed_or_default(seed);
            let ds = coin_flip_dataset(count, seed, split.unwrap_or(default_split(count)))?;
            write_jsonl(&ds, out.as_deref())?;
        }
    }
    Ok(())
}

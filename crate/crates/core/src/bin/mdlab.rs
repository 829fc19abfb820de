use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;

use mdlab::cfrac::{self, Golden, RealSource, SeededReal};
use mdlab::dilation::{self, Family};
use mdlab::discrepancy::{self, AlphaValue};
use mdlab::error::{Error, Result};
use mdlab::gcdsum::{self, WeightVector};
use mdlab::harness::{self, ExperimentConfig};
use mdlab::sequences::{parse_rational, IntPolynomial, SequenceSpec};
use mdlab::{arith, expsum};

/// Discrepancy of dilated integer sequences and related number-theoretic diagnostics.
#[derive(Parser)]
#[command(name = "mdlab", version)]
struct Cli {
    /// Default seed for `seed:` style alphas and seed offset for experiments.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write artifacts here instead of printing to stdout.
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    #[command(subcommand)]
    Disc(DiscCmd),
    #[command(subcommand)]
    Expsum(ExpsumCmd),
    #[command(subcommand)]
    Arith(ArithCmd),
    #[command(subcommand)]
    Gcdsum(GcdsumCmd),
    #[command(subcommand)]
    Dilation(DilationCmd),
    #[command(subcommand)]
    Cfrac(CfracCmd),
    /// Run a configured experiment and write CSV/JSON artifacts.
    Experiment(ExperimentArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum DiscCmd {
    /// N D_N of {a_n alpha} at each checkpoint.
    Profile {
        #[arg(long)]
        seq: String,
        /// `p/q`, `seed:k[@bits]` or `golden[@bits]`; defaults to the global seed.
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long, default_value = "2^7..2^15")]
        checkpoints: String,
        #[arg(long, value_enum, default_value = "csv")]
        out: Format,
    },
}

#[derive(Subcommand)]
enum ExpsumCmd {
    /// L1 estimate, L2, L4 and the Hölder bound of the exponential sum.
    Norms {
        #[arg(long)]
        seq: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1 << 20)]
        grid: usize,
    },
}

#[derive(Subcommand)]
enum ArithCmd {
    /// Histogram of f(x) ± f(y) = n over 1 <= x, y <= X.
    Repr {
        /// Comma separated coefficients, constant term first.
        #[arg(long)]
        poly: String,
        #[arg(long)]
        range: usize,
        #[arg(long, default_value = "diff")]
        mode: arith::ReprMode,
        #[arg(long, value_enum, default_value = "csv")]
        out: Format,
    },
}

#[derive(Subcommand)]
enum GcdsumCmd {
    /// GCD sum of a weight vector against the Hilberdink-type bound.
    Eval {
        /// `@file` of weights, or `interval:a,b,G` for |u_1|..|u_G| of [a, b).
        #[arg(long)]
        weights: String,
        #[arg(long, default_value_t = gcdsum::DEFAULT_HILBERDINK_C)]
        c: f64,
    },
}

#[derive(Subcommand)]
enum DilationCmd {
    /// First hits of {h alpha} in a shrinking family of intervals.
    T4 {
        #[arg(long, default_value = "shrink:2")]
        family: String,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long, default_value_t = 0.5)]
        eta: f64,
        #[arg(long, default_value_t = 18)]
        lmax: u32,
        #[arg(long, default_value_t = dilation::DEFAULT_SAFETY_FACTOR)]
        safety: u64,
        #[arg(long, value_enum, default_value = "csv")]
        out: Format,
    },
}

#[derive(Subcommand)]
enum CfracCmd {
    /// S_L = sum over k, m <= L of b_m(beta^k alpha).
    Sl {
        /// `p/q` (exact), `seed:k` (seeded binary digits) or `golden`.
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long, default_value_t = 2)]
        beta: u32,
        #[arg(long = "L")]
        l: usize,
        #[arg(long, default_value_t = cfrac::DEFAULT_PRECISION_CAP)]
        precision_cap: u64,
    },
    /// Continued fraction of an exact rational.
    Expand {
        #[arg(long)]
        rat: String,
        #[arg(long, default_value_t = 10_000)]
        max_terms: usize,
    },
}

#[derive(Args)]
struct ExperimentArgs {
    /// JSON config file.
    #[arg(long)]
    config: PathBuf,
}

struct Ctx {
    seed: Option<u64>,
    out_dir: Option<PathBuf>,
}

impl Ctx {
    fn alpha(&self, given: Option<&str>) -> Result<AlphaValue> {
        match given {
            Some(s) => s.parse(),
            None => Ok(AlphaValue::seeded(
                self.seed.unwrap_or(0),
                discrepancy::DEFAULT_ALPHA_BITS,
            )),
        }
    }

    /// Writes `text` to `out_dir/name`, or to stdout when no directory was given.
    fn emit(&self, name: &str, text: &str) -> Result<()> {
        match &self.out_dir {
            Some(dir) => {
                std::fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
                let path = dir.join(name);
                std::fs::write(&path, text).map_err(|e| io_err(&path, e))?;
                println!("{}", path.display());
                Ok(())
            }
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes())
                    .map_err(|e| io_err(Path::new("<stdout>"), e))
            }
        }
    }
}

fn io_err(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn to_csv<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Parameter(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn weights(spec: &str) -> Result<WeightVector> {
    if let Some(path) = spec.strip_prefix('@') {
        let text = std::fs::read_to_string(path).map_err(|e| io_err(Path::new(path), e))?;
        let u = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse()
                    .map_err(|_| Error::Parameter(format!("bad weight {t:?}")))
            })
            .collect::<Result<Vec<f64>>>()?;
        return WeightVector::new(u);
    }
    let rest = spec
        .strip_prefix("interval:")
        .ok_or_else(|| Error::Parameter("weights are @file or interval:a,b,G".into()))?;
    let parts: Vec<&str> = rest.split(',').collect();
    let [a, b, g] = parts[..] else {
        return Err(Error::Parameter("interval weights need a,b,G".into()));
    };
    let g: u64 = g
        .trim()
        .parse()
        .map_err(|_| Error::Parameter(format!("bad G {g:?}")))?;
    let r = dilation::make_union(vec![(parse_rational(a)?, parse_rational(b)?)])?;
    dilation::cosine_weights(&r, g)
}

fn run(cli: Cli) -> Result<()> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::Parameter(format!("thread pool: {e}")))?;
    }
    let ctx = Ctx {
        seed: cli.seed,
        out_dir: cli.out_dir,
    };
    match cli.command {
        Command::Disc(DiscCmd::Profile {
            seq,
            alpha,
            checkpoints,
            out,
        }) => {
            let spec: SequenceSpec = seq.parse()?;
            let alpha = ctx.alpha(alpha.as_deref())?;
            let checkpoints = harness::parse_checkpoints(&checkpoints)?;
            let rows = discrepancy::discrepancy_profile(&spec, &alpha, &checkpoints)?;
            #[derive(Serialize)]
            struct Row {
                #[serde(rename = "N")]
                n: usize,
                #[serde(rename = "D_N")]
                d_n: f64,
                #[serde(rename = "ND_N")]
                nd_n: f64,
                #[serde(rename = "log2N")]
                log2_n: f64,
            }
            let rows: Vec<Row> = rows
                .iter()
                .map(|r| Row {
                    n: r.n,
                    d_n: r.d_n,
                    nd_n: r.nd_n,
                    log2_n: (r.n as f64).log2(),
                })
                .collect();
            match out {
                Format::Csv => ctx.emit("disc_profile.csv", &to_csv(&rows)?),
                Format::Json => ctx.emit("disc_profile.json", &to_json(&rows)?),
            }
        }
        Command::Expsum(ExpsumCmd::Norms { seq, n, grid }) => {
            let spec: SequenceSpec = seq.parse()?;
            let terms = mdlab::sequences::generate(&spec, n)?;
            let bundle = expsum::norm_bundle(&terms, grid)?;
            ctx.emit("expsum_norms.json", &to_json(&bundle)?)
        }
        Command::Arith(ArithCmd::Repr {
            poly,
            range,
            mode,
            out,
        }) => {
            let coeffs = poly
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse()
                        .map_err(|_| Error::Parameter(format!("bad coefficient {t:?}")))
                })
                .collect::<Result<Vec<BigInt>>>()?;
            let p = IntPolynomial::new(coeffs);
            let values: Vec<BigInt> = (1..=range).map(|x| p.eval(&BigInt::from(x))).collect();
            let hist = arith::repr_histogram(&values, mode)?;
            match out {
                Format::Csv => {
                    #[derive(Serialize)]
                    struct Row {
                        n: String,
                        count: u64,
                    }
                    let rows: Vec<Row> = hist
                        .counts
                        .iter()
                        .map(|(n, &count)| Row {
                            n: n.to_string(),
                            count,
                        })
                        .collect();
                    ctx.emit("arith_repr.csv", &to_csv(&rows)?)
                }
                Format::Json => {
                    let summary = serde_json::json!({
                        "mode": mode,
                        "range": range,
                        "distinct": hist.counts.len(),
                        "max_count": hist.max_count,
                        "argmax": hist.argmax.map(|n| n.to_string()),
                    });
                    ctx.emit("arith_repr.json", &to_json(&summary)?)
                }
            }
        }
        Command::Gcdsum(GcdsumCmd::Eval { weights: spec, c }) => {
            let w = weights(&spec)?;
            let text = if w.len() >= 3 {
                to_json(&gcdsum::hilberdink_report(&w, c)?)?
            } else {
                to_json(&serde_json::json!({
                    "g": w.len(),
                    "gcd_sum": gcdsum::gcd_sum(&w)?,
                    "sum_of_squares": w.sum_of_squares(),
                }))?
            };
            ctx.emit("gcdsum.json", &text)
        }
        Command::Dilation(DilationCmd::T4 {
            family,
            alpha,
            eta,
            lmax,
            safety,
            out,
        }) => {
            let family: Family = family.parse()?;
            let alpha = ctx.alpha(alpha.as_deref())?;
            let recs = dilation::theorem4_search(|l| family.member(l), &alpha, eta, lmax, safety)?;
            match out {
                Format::Csv => ctx.emit("dilation_t4.csv", &to_csv(&recs)?),
                Format::Json => ctx.emit("dilation_t4.json", &to_json(&recs)?),
            }
        }
        Command::Cfrac(CfracCmd::Sl {
            alpha,
            beta,
            l,
            precision_cap,
        }) => {
            let alpha = alpha.unwrap_or_else(|| format!("seed:{}", ctx.seed.unwrap_or(0)));
            let value = if let Some(k) = alpha.strip_prefix("seed:") {
                let seed = k
                    .parse()
                    .map_err(|_| Error::Parameter(format!("bad seed {k:?}")))?;
                cfrac::s_l_statistic_real(&SeededReal { seed }, beta, l, precision_cap)?
            } else if alpha == "golden" {
                cfrac::s_l_statistic_real(&Golden as &dyn RealSource, beta, l, precision_cap)?
            } else {
                cfrac::s_l_statistic(&parse_rational(&alpha)?, beta, l)?
            };
            ctx.emit("cfrac_sl.txt", &format!("{value}\n"))
        }
        Command::Cfrac(CfracCmd::Expand { rat, max_terms }) => {
            let cf = cfrac::cf_expand(&parse_rational(&rat)?, max_terms)?;
            ctx.emit("cfrac_expand.txt", &format!("{cf}\n"))
        }
        Command::Experiment(args) => {
            let mut config = ExperimentConfig::load(&args.config)?;
            if let Some(s) = ctx.seed {
                config.seed_offset = s;
            }
            let dir = ctx.out_dir.clone().unwrap_or_else(|| PathBuf::from("out"));
            let output = harness::run_experiment(&config, &dir)?;
            for f in output.files {
                println!("{}", f.display());
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("mdlab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

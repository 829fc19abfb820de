//! Seeded experiment sweeps, exponent fits, and their CSV/JSON artifacts.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cfrac::{self, SeededReal};
use crate::dilation::{self, Family};
use crate::discrepancy::{self, AlphaValue, ProfileRow, DEFAULT_ALPHA_BITS};
use crate::error::{Error, Result};
use crate::expsum;
use crate::sequences::{self, SequenceSpec};

/// Seeds used by the shipped experiments, fixed before any run.
pub const SHIPPED_SEEDS: [u64; 10] = [0, 1, 2, 3, 4, 5, 6, 7, 8, 9];

/// Powers of two from `2^7` to `2^15`.
pub fn default_checkpoints() -> Vec<usize> {
    (7..=15).map(|k| 1usize << k).collect()
}

/// Parses `2^a..2^b` into the powers of two in between, or a comma list of integers.
pub fn parse_checkpoints(s: &str) -> Result<Vec<usize>> {
    let bad = || {
        Error::param(format!(
            "checkpoints must be 2^a..2^b or a comma list, got {s:?}"
        ))
    };
    if let Some((lo, hi)) = s.split_once("..") {
        let exp = |t: &str| -> Result<u32> {
            t.trim()
                .strip_prefix("2^")
                .and_then(|e| e.parse().ok())
                .ok_or_else(bad)
        };
        let (lo, hi) = (exp(lo)?, exp(hi)?);
        if lo > hi || hi >= usize::BITS - 1 {
            return Err(bad());
        }
        return Ok((lo..=hi).map(|k| 1usize << k).collect());
    }
    s.split(',')
        .map(|t| t.trim().parse().map_err(|_| bad()))
        .collect()
}

/// A profile row with the running maximum of `N D_N` over earlier checkpoints.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfileRecord {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "D_N")]
    pub d_n: f64,
    #[serde(rename = "ND_N")]
    pub nd_n: f64,
    #[serde(rename = "running_max_ND")]
    pub running_max_nd: f64,
}

pub fn profile_records(rows: &[ProfileRow]) -> Vec<ProfileRecord> {
    let mut best = f64::NEG_INFINITY;
    rows.iter()
        .map(|r| {
            best = best.max(r.nd_n);
            ProfileRecord {
                n: r.n,
                d_n: r.d_n,
                nd_n: r.nd_n,
                running_max_nd: best,
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum XTransform {
    #[default]
    #[serde(rename = "logN")]
    LogN,
    #[serde(rename = "loglogN")]
    LogLogN,
}

impl FromStr for XTransform {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "logN" => Ok(XTransform::LogN),
            "loglogN" => Ok(XTransform::LogLogN),
            _ => Err(Error::param(format!(
                "x transform must be logN or loglogN, got {s:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
}

/// Ordinary least squares `y = slope x + intercept`.
pub fn ols(x: &[f64], y: &[f64]) -> Result<FitResult> {
    if x.len() != y.len() {
        return Err(Error::param("fit needs equally many x and y values"));
    }
    if x.len() < 3 {
        return Err(Error::pre(format!(
            "fit needs at least 3 points, got {}",
            x.len()
        )));
    }
    if x.iter().chain(y).any(|v| !v.is_finite()) {
        return Err(Error::DegenerateFit("non-finite coordinate".into()));
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let syy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    if sxx <= f64::EPSILON * mx.abs().max(1.0) * n {
        return Err(Error::DegenerateFit("x values have no spread".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r2 = if syy == 0.0 {
        1.0
    } else {
        let ss_res: f64 = x
            .iter()
            .zip(y)
            .map(|(a, b)| (b - slope * a - intercept).powi(2))
            .sum();
        (1.0 - ss_res / syy).clamp(0.0, 1.0)
    };
    Ok(FitResult {
        slope,
        intercept,
        r2,
    })
}

/// Fits `log running_max_ND` against `log N` or `log log N`.
pub fn fit_exponent(records: &[ProfileRecord], x: XTransform) -> Result<FitResult> {
    let xs: Vec<f64> = records
        .iter()
        .map(|r| match x {
            XTransform::LogN => (r.n as f64).ln(),
            XTransform::LogLogN => (r.n as f64).ln().ln(),
        })
        .collect();
    let ys: Vec<f64> = records.iter().map(|r| r.running_max_nd.ln()).collect();
    ols(&xs, &ys)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExperimentKind {
    Profile,
    Norms,
    T4,
    Sl,
}

fn default_seeds() -> usize {
    SHIPPED_SEEDS.len()
}
fn default_alpha_bits() -> u64 {
    DEFAULT_ALPHA_BITS
}
fn default_eta() -> f64 {
    0.5
}
fn default_lmax() -> u32 {
    18
}
fn default_family() -> String {
    "shrink:2".into()
}
fn default_beta() -> u32 {
    2
}
fn default_levels() -> Vec<usize> {
    vec![8, 16, 32, 64]
}
fn default_safety() -> u64 {
    dilation::DEFAULT_SAFETY_FACTOR
}
fn default_grid() -> usize {
    1 << 20
}

/// A named experiment and its parameters. Unused fields are ignored by experiments
/// that do not need them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    #[serde(default)]
    pub seq: Option<String>,
    /// Number of seeds, taken consecutively from `seed_offset`.
    #[serde(default = "default_seeds")]
    pub seeds: usize,
    #[serde(default)]
    pub seed_offset: u64,
    /// Largest checkpoint; checkpoints are powers of two from `2^7`.
    #[serde(default, alias = "Nmax")]
    pub n_max: Option<usize>,
    #[serde(default)]
    pub checkpoints: Option<Vec<usize>>,
    /// Term count for the norms experiment.
    #[serde(default, alias = "N")]
    pub n: Option<usize>,
    #[serde(default = "default_grid")]
    pub grid: usize,
    #[serde(default = "default_alpha_bits")]
    pub alpha_bits: u64,
    #[serde(default)]
    pub x_transform: XTransform,
    #[serde(default = "default_eta")]
    pub eta: f64,
    #[serde(default = "default_lmax")]
    pub lmax: u32,
    #[serde(default = "default_family")]
    pub family: String,
    #[serde(default = "default_safety")]
    pub safety: u64,
    #[serde(default = "default_beta")]
    pub beta: u32,
    #[serde(default = "default_levels", alias = "L")]
    pub levels: Vec<usize>,
    #[serde(default)]
    pub precision_cap: Option<u64>,
}

impl ExperimentConfig {
    pub fn new(experiment: ExperimentKind) -> Self {
        serde_json::from_value(serde_json::json!({ "experiment": experiment }))
            .expect("all other fields have defaults")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::param(format!("bad experiment config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    /// Hex SHA-256 of the normalised config.
    pub fn hash(&self) -> String {
        let canonical = serde_json::to_string(self).expect("config serialises");
        hex::encode(Sha256::digest(canonical.as_bytes()))
    }

    pub fn seed_list(&self) -> Vec<u64> {
        (0..self.seeds as u64)
            .map(|i| self.seed_offset + i)
            .collect()
    }

    fn sequence(&self) -> Result<SequenceSpec> {
        self.seq
            .as_deref()
            .ok_or_else(|| Error::param("this experiment needs `seq`"))?
            .parse()
    }

    fn resolved_checkpoints(&self) -> Result<Vec<usize>> {
        match (&self.checkpoints, self.n_max) {
            (Some(c), _) => Ok(c.clone()),
            (None, None) => Ok(default_checkpoints()),
            (None, Some(max)) if max >= 1 << 7 => Ok((7..usize::BITS)
                .map(|k| 1usize << k)
                .take_while(|&c| c <= max)
                .collect()),
            (None, Some(max)) => Err(Error::param(format!(
                "Nmax must be at least 128, got {max}"
            ))),
        }
    }
}

/// Files written by an experiment together with its JSON summary.
#[derive(Debug, Clone)]
pub struct ExperimentOutput {
    pub files: Vec<PathBuf>,
    pub summary: serde_json::Value,
}

pub fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_io(path, e))?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

fn csv_io(path: &Path, e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(source) => Error::io(path, source),
        other => Error::param(format!("csv: {other:?}")),
    }
}

fn write_json(path: &Path, value: &serde_json::Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

#[derive(Serialize)]
struct ProfileCsvRow {
    #[serde(rename = "N")]
    n: usize,
    #[serde(rename = "D_N")]
    d_n: f64,
    #[serde(rename = "ND_N")]
    nd_n: f64,
    #[serde(rename = "running_max_ND")]
    running_max_nd: f64,
    #[serde(rename = "log2N")]
    log2_n: f64,
}

#[derive(Serialize)]
struct SlRow {
    #[serde(rename = "L")]
    l: usize,
    #[serde(rename = "S_L")]
    s_l: String,
}

/// Runs the experiment and writes its artifacts into `out_dir`.
///
/// Output bytes depend only on the config, never on the thread count.
pub fn run_experiment(config: &ExperimentConfig, out_dir: &Path) -> Result<ExperimentOutput> {
    fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let hash = config.hash();
    let seeds = config.seed_list();
    let mut files = Vec::new();
    let mut summary = serde_json::json!({
        "experiment": config.experiment,
        "config_hash": hash,
        "config": config,
        "seeds": seeds,
    });

    match config.experiment {
        ExperimentKind::Profile => {
            let spec = config.sequence()?;
            let checkpoints = config.resolved_checkpoints()?;
            let terms = sequences::generate(&spec, *checkpoints.last().unwrap_or(&0))?;
            let per_seed = seeds
                .par_iter()
                .map(|&s| {
                    let alpha = AlphaValue::seeded(s, config.alpha_bits);
                    let rows = discrepancy::profile_terms(&terms, &alpha, &checkpoints)?;
                    let records = profile_records(&rows);
                    let fit = fit_exponent(&records, config.x_transform)?;
                    Ok((s, records, fit))
                })
                .collect::<Result<Vec<_>>>()?;
            let mut fits = Vec::new();
            for (s, records, fit) in per_seed {
                let path = out_dir.join(format!("profile_seed{s}.csv"));
                let rows: Vec<ProfileCsvRow> = records
                    .iter()
                    .map(|r| ProfileCsvRow {
                        n: r.n,
                        d_n: r.d_n,
                        nd_n: r.nd_n,
                        running_max_nd: r.running_max_nd,
                        log2_n: (r.n as f64).log2(),
                    })
                    .collect();
                write_csv(&path, &rows)?;
                files.push(path);
                fits.push(serde_json::json!({ "seed": s, "slope": fit.slope, "intercept": fit.intercept, "r2": fit.r2 }));
            }
            summary["fits"] = fits.into();
        }
        ExperimentKind::Norms => {
            let spec = config.sequence()?;
            let n = config.n.ok_or_else(|| Error::param("norms needs `N`"))?;
            let terms = sequences::generate(&spec, n)?;
            let bundle = expsum::norm_bundle(&terms, config.grid)?;
            summary["N"] = n.into();
            summary["grid"] = config.grid.into();
            summary["norms"] = serde_json::to_value(bundle)?;
        }
        ExperimentKind::T4 => {
            let family: Family = config.family.parse()?;
            let per_seed = seeds
                .iter()
                .map(|&s| {
                    let alpha = AlphaValue::seeded(s, config.alpha_bits);
                    let recs = dilation::theorem4_search(
                        |l| family.member(l),
                        &alpha,
                        config.eta,
                        config.lmax,
                        config.safety,
                    )?;
                    Ok((s, recs))
                })
                .collect::<Result<Vec<_>>>()?;
            let mut hits_per_l = vec![0usize; config.lmax as usize];
            for (s, recs) in per_seed {
                for r in &recs {
                    if r.hit.is_some() {
                        hits_per_l[r.l as usize - 1] += 1;
                    }
                }
                let path = out_dir.join(format!("t4_seed{s}.csv"));
                write_csv(&path, &recs)?;
                files.push(path);
            }
            summary["hits_per_L"] = hits_per_l.into();
        }
        ExperimentKind::Sl => {
            let cap = config.precision_cap.unwrap_or(cfrac::DEFAULT_PRECISION_CAP);
            let mut fits = Vec::new();
            for &s in &seeds {
                let src = SeededReal { seed: s };
                let values = config
                    .levels
                    .iter()
                    .map(|&l| cfrac::s_l_statistic_real(&src, config.beta, l, cap))
                    .collect::<Result<Vec<BigInt>>>()?;
                let rows: Vec<SlRow> = config
                    .levels
                    .iter()
                    .zip(&values)
                    .map(|(&l, v)| SlRow {
                        l,
                        s_l: v.to_string(),
                    })
                    .collect();
                let path = out_dir.join(format!("sl_seed{s}.csv"));
                write_csv(&path, &rows)?;
                files.push(path);
                let xs: Vec<f64> = config.levels.iter().map(|&l| (l as f64).ln()).collect();
                let ys: Vec<f64> = values
                    .iter()
                    .map(|v| v.to_f64().unwrap_or(f64::INFINITY).ln())
                    .collect();
                let fit = ols(&xs, &ys)?;
                fits.push(serde_json::json!({ "seed": s, "slope": fit.slope, "intercept": fit.intercept, "r2": fit.r2 }));
            }
            summary["fits"] = fits.into();
        }
    }

    let name = match config.experiment {
        ExperimentKind::Profile => "profile",
        ExperimentKind::Norms => "norms",
        ExperimentKind::T4 => "t4",
        ExperimentKind::Sl => "sl",
    };
    let path = out_dir.join(format!("{name}_summary.json"));
    write_json(&path, &summary)?;
    files.push(path);
    Ok(ExperimentOutput { files, summary })
}

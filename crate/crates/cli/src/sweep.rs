//! Parameter sweeps: grid expansion, parallel evaluation, CSV output.

use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use qdiscord_core::{CirculantParams, DensityMatrix, DiscordVariant, IsotropicParam, OptimizerConfig, WernerParam};
use rayon::prelude::*;

use crate::error::{CliError, Result};
use crate::format::fmt12;
use crate::model::{evaluate, rank, Family, Method, MethodSel, StatePoint, VariantSel};

pub const CSV_HEADER: [&str; 12] = [
    "family",
    "param1_name",
    "param1",
    "param2_name",
    "param2",
    "q",
    "variant",
    "method",
    "value",
    "theta",
    "phi",
    "converged",
];

pub const THREADS_ENV: &str = "QDISCORD_THREADS";

/// A linearly spaced parameter range, endpoints included.
#[derive(Debug, Clone, PartialEq)]
pub struct SweptParam {
    pub name: String,
    pub start: f64,
    pub end: f64,
    pub steps: usize,
}

impl SweptParam {
    /// Parses `name:start:end:steps`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || CliError::Usage(format!("sweep '{s}' is not name:start:end:steps"));
        let parts: Vec<&str> = s.split(':').collect();
        let [name, start, end, steps] = parts[..] else { return Err(bad()) };
        let sweep = SweptParam {
            name: name.to_string(),
            start: start.parse().map_err(|_| bad())?,
            end: end.parse().map_err(|_| bad())?,
            steps: steps.parse().map_err(|_| bad())?,
        };
        if sweep.steps < 2 || !(sweep.start < sweep.end) {
            return Err(CliError::Usage(format!("sweep '{s}' needs steps >= 2 and start < end")));
        }
        Ok(sweep)
    }

    pub fn values(&self) -> Vec<f64> {
        let n = self.steps - 1;
        (0..=n)
            .map(|i| if i == n { self.end } else { self.start + (self.end - self.start) * i as f64 / n as f64 })
            .collect()
    }
}

/// Everything needed to produce a sweep CSV.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub family: Family,
    pub lambda: Option<f64>,
    pub epsilon: Option<f64>,
    pub g: Option<f64>,
    pub state: Option<Arc<DensityMatrix>>,
    pub sweep: Option<SweptParam>,
    pub qs: Vec<f64>,
    pub variant: VariantSel,
    pub method: MethodSel,
    pub optimizer: OptimizerConfig,
}

/// One output line.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub family: Family,
    pub params: Vec<(&'static str, f64)>,
    pub q: f64,
    pub variant: DiscordVariant,
    pub method: Method,
    pub value: f64,
    pub angles: Option<(f64, f64)>,
    pub converged: Option<bool>,
}

impl SweepRow {
    pub fn record(&self) -> [String; 12] {
        let param =
            |i: usize| self.params.get(i).map_or((String::new(), String::new()), |(n, v)| (n.to_string(), fmt12(*v)));
        let ((n1, v1), (n2, v2)) = (param(0), param(1));
        let (theta, phi) = self.angles.map_or((String::new(), String::new()), |(t, p)| (fmt12(t), fmt12(p)));
        [
            self.family.name().into(),
            n1,
            v1,
            n2,
            v2,
            fmt12(self.q),
            self.variant.name().into(),
            self.method.name().into(),
            fmt12(self.value),
            theta,
            phi,
            self.converged.map_or(String::new(), |c| c.to_string()),
        ]
    }
}

fn usage(e: qdiscord_core::Error) -> CliError {
    CliError::Usage(e.to_string())
}

fn required(v: Option<f64>, name: &str, family: Family) -> Result<f64> {
    v.ok_or_else(|| CliError::Usage(format!("--{name} is required for {} states", family.name())))
}

/// Builds one family member from optional flag values.
pub fn state_point(
    family: Family,
    lambda: Option<f64>,
    epsilon: Option<f64>,
    g: Option<f64>,
    state: Option<&Arc<DensityMatrix>>,
) -> Result<StatePoint> {
    Ok(match family {
        Family::Werner => StatePoint::Werner(WernerParam::new(required(lambda, "lambda", family)?).map_err(usage)?),
        Family::Isotropic => {
            StatePoint::Isotropic(IsotropicParam::new(required(lambda, "lambda", family)?).map_err(usage)?)
        }
        Family::Circulant => StatePoint::Circulant(
            CirculantParams::new(required(epsilon, "epsilon", family)?, required(g, "g", family)?).map_err(usage)?,
        ),
        Family::Custom => StatePoint::Custom(
            state.cloned().ok_or_else(|| CliError::Usage("--state is required for custom states".into()))?,
        ),
    })
}

struct Job {
    point: StatePoint,
    q: f64,
    variant: DiscordVariant,
    method: Method,
}

impl SweepSpec {
    /// Grid points in sweep order, each paired with its q values.
    fn grid(&self) -> Result<Vec<(StatePoint, Vec<f64>)>> {
        let Some(sweep) = &self.sweep else {
            let point = state_point(self.family, self.lambda, self.epsilon, self.g, self.state.as_ref())?;
            return Ok(vec![(point, self.qs.clone())]);
        };
        let mut out = Vec::with_capacity(sweep.steps);
        for x in sweep.values() {
            let (mut lambda, mut epsilon, mut g) = (self.lambda, self.epsilon, self.g);
            let mut qs = self.qs.clone();
            match sweep.name.as_str() {
                "q" => qs = vec![x],
                "lambda" if matches!(self.family, Family::Werner | Family::Isotropic) => lambda = Some(x),
                "epsilon" if self.family == Family::Circulant => epsilon = Some(x),
                "g" if self.family == Family::Circulant => g = Some(x),
                other => {
                    return Err(CliError::Usage(format!("cannot sweep '{other}' for {} states", self.family.name())))
                }
            }
            out.push((state_point(self.family, lambda, epsilon, g, self.state.as_ref())?, qs));
        }
        Ok(out)
    }

    fn jobs(&self) -> Result<Vec<Job>> {
        let mut jobs = Vec::new();
        for (point, qs) in self.grid()? {
            for &q in &qs {
                rank(q)?;
                for &variant in self.variant.variants() {
                    for &method in self.method.methods() {
                        // skip combinations without a closed form when several were requested
                        if method == Method::Closed && !point.has_closed_form(variant) {
                            continue;
                        }
                        jobs.push(Job { point: point.clone(), q, variant, method });
                    }
                }
            }
        }
        if jobs.is_empty() {
            return Err(CliError::Usage(format!(
                "no closed form for the requested variant of {} states; use --method numeric",
                self.family.name()
            )));
        }
        Ok(jobs)
    }

    /// Evaluates every row; output order follows the sweep regardless of scheduling.
    pub fn run(&self) -> Result<Vec<SweepRow>> {
        let jobs = self.jobs()?;
        let run = || {
            jobs.par_iter()
                .map(|job| {
                    let e = evaluate(&job.point, rank(job.q)?, job.variant, job.method, &self.optimizer)?;
                    let names = job.point.family().param_names();
                    Ok(SweepRow {
                        family: job.point.family(),
                        params: names.iter().copied().zip(job.point.params()).collect(),
                        q: job.q,
                        variant: job.variant,
                        method: job.method,
                        value: e.discord,
                        angles: e.angles,
                        converged: e.converged,
                    })
                })
                .collect::<Result<Vec<_>>>()
        };
        match thread_cap()? {
            Some(n) => rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?
                .install(run),
            None => run(),
        }
    }
}

/// Reads the optional parallelism cap from the environment.
pub fn thread_cap() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got '{v}'"))),
        },
    }
}

pub fn write_csv<W: Write>(out: W, rows: &[SweepRow]) -> std::result::Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.write_record(row.record())?;
    }
    w.flush()?;
    Ok(())
}

/// Maps a CSV writer failure to an I/O error on `path`.
pub fn csv_io(path: &Path, e: csv::Error) -> CliError {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => CliError::io(path, io),
        other => CliError::io(path, std::io::Error::other(format!("{other:?}"))),
    }
}

/// Count of numeric rows whose optimizer did not converge.
pub fn unconverged(rows: &[SweepRow]) -> usize {
    rows.iter().filter(|r| r.converged == Some(false)).count()
}

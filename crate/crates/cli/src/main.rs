use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use qdiscord::figures::{write_figure, Figure};
use qdiscord::format::{fmt12, fmt_g};
use qdiscord::model::{evaluate, rank, Family, Method, MethodSel, VariantSel};
use qdiscord::state::read_state;
use qdiscord::sweep::{csv_io, state_point, unconverged, write_csv, SweepSpec, SweptParam};
use qdiscord::verify::{run_all, VerifyOptions};
use qdiscord::{CliError, Result};
use qdiscord_core::OptimizerConfig;

/// Quantum discords built from Tsallis entropies for two-qubit states.
#[derive(Debug, Parser)]
#[command(name = "qdiscord", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the discord of a single state.
    Eval(EvalArgs),
    /// Sweep a parameter and write one CSV row per grid point, q, variant and method.
    Scan(ScanArgs),
    /// Write the CSV data behind a figure.
    Figure(FigureArgs),
    /// Run the self-check suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct StateArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Mixing parameter of Werner and isotropic states, in [0, 1].
    #[arg(long)]
    lambda: Option<f64>,
    /// Circulant inner-block parameter, in (0, 1].
    #[arg(long)]
    epsilon: Option<f64>,
    /// Circulant coherence, in [0, 1].
    #[arg(long)]
    g: Option<f64>,
    /// JSON state file for the custom family.
    #[arg(long)]
    state: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "both")]
    variant: VariantSel,
    #[arg(long, value_enum, default_value = "both")]
    method: MethodSel,
    /// Coarser optimizer grid.
    #[arg(long)]
    quick: bool,
}

impl StateArgs {
    fn load_state(&self) -> Result<Option<Arc<qdiscord_core::DensityMatrix>>> {
        match (&self.state, self.family) {
            (Some(path), Family::Custom) => Ok(Some(Arc::new(read_state(path)?))),
            (Some(_), _) => Err(CliError::Usage("--state applies only to --family custom".into())),
            (None, _) => Ok(None),
        }
    }

    fn optimizer(&self) -> OptimizerConfig {
        if self.quick {
            OptimizerConfig::quick()
        } else {
            OptimizerConfig::default()
        }
    }
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[command(flatten)]
    state: StateArgs,
    /// Entropic index.
    #[arg(long)]
    q: f64,
}

#[derive(Debug, Args)]
struct ScanArgs {
    #[command(flatten)]
    state: StateArgs,
    /// Entropic indices, comma separated.
    #[arg(long, value_delimiter = ',', required_unless_present = "sweep")]
    q: Vec<f64>,
    /// Swept parameter as name:start:end:steps (lambda, epsilon, g or q).
    #[arg(long)]
    sweep: Option<String>,
    /// Output CSV; standard output when omitted or '-'.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct FigureArgs {
    #[arg(value_enum)]
    name: Figure,
    /// Output directory.
    #[arg(long, short, default_value = ".")]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Smaller samples and grids.
    #[arg(long)]
    quick: bool,
    #[arg(long, hide = true)]
    inject_fault: bool,
}

fn eval(args: EvalArgs) -> Result<()> {
    let s = &args.state;
    let state = s.load_state()?;
    let point = state_point(s.family, s.lambda, s.epsilon, s.g, state.as_ref())?;
    let q = rank(args.q)?;
    let opt = s.optimizer();

    let mut results = Vec::new();
    for &variant in s.variant.variants() {
        for &method in s.method.methods() {
            if method == Method::Closed && !point.has_closed_form(variant) {
                continue;
            }
            results.push((variant, method, evaluate(&point, q, variant, method, &opt)?));
        }
    }
    if results.is_empty() {
        return Err(CliError::Usage(format!(
            "no closed form for the requested variant of {} states; use --method numeric",
            s.family.name()
        )));
    }

    let params: Vec<String> =
        s.family.param_names().iter().zip(point.params()).map(|(n, v)| format!("{n}={}", fmt12(v))).collect();
    println!("{} {} q={}", s.family.name(), params.join(" "), fmt12(args.q));
    println!("{:<9} {:<8} {:>20} {:>20} {:>20}  measurement", "variant", "method", "discord", "classical", "mutual");
    for (i, (variant, method, e)) in results.iter().enumerate() {
        let measurement = match (e.angles, e.converged) {
            (Some((t, p)), Some(c)) => {
                format!("theta={} phi={}{}", fmt_g(t, 8), fmt_g(p, 8), if c { "" } else { " (not converged)" })
            }
            _ => String::new(),
        };
        println!(
            "{:<9} {:<8} {:>20} {:>20} {:>20}  {measurement}",
            variant.name(),
            method.name(),
            fmt12(e.discord),
            fmt12(e.classical),
            fmt12(e.mutual)
        );
        // closed and numeric rows of the same variant are adjacent
        if let Some((v0, Method::Closed, c)) = i.checked_sub(1).and_then(|j| results.get(j)) {
            if v0 == variant && *method == Method::Numeric {
                println!("{:<9} {:<8} {:>20}", variant.name(), "|diff|", fmt_g((c.discord - e.discord).abs(), 3));
            }
        }
    }
    Ok(())
}

fn scan(args: ScanArgs) -> Result<()> {
    let s = &args.state;
    let sweep = args.sweep.as_deref().map(SweptParam::parse).transpose()?;
    let spec = SweepSpec {
        family: s.family,
        lambda: s.lambda,
        epsilon: s.epsilon,
        g: s.g,
        state: s.load_state()?,
        sweep,
        qs: args.q.clone(),
        variant: s.variant,
        method: s.method,
        optimizer: s.optimizer(),
    };
    let rows = spec.run()?;
    match args.out.as_deref() {
        None => write_csv(std::io::stdout().lock(), &rows).map_err(|e| csv_io("<stdout>".as_ref(), e))?,
        Some(p) if p.as_os_str() == "-" => {
            write_csv(std::io::stdout().lock(), &rows).map_err(|e| csv_io("<stdout>".as_ref(), e))?
        }
        Some(path) => {
            let file = std::fs::File::create(path).map_err(|e| CliError::io(path, e))?;
            write_csv(std::io::BufWriter::new(file), &rows).map_err(|e| csv_io(path, e))?;
            eprintln!("wrote {} rows to {}", rows.len(), path.display());
        }
    }
    let n = unconverged(&rows);
    if n > 0 {
        eprintln!("warning: {n} numeric rows did not converge");
    }
    Ok(())
}

fn figure(args: FigureArgs) -> Result<()> {
    let path = write_figure(args.name, &args.out)?;
    println!("{}", path.display());
    Ok(())
}

fn verify(args: VerifyArgs) -> Result<()> {
    let base = if args.quick { VerifyOptions::quick() } else { VerifyOptions::full() };
    let opts = VerifyOptions { inject_fault: args.inject_fault, ..base };
    let start = Instant::now();
    let mut failed = Vec::new();
    let mut out = std::io::stdout().lock();
    for report in run_all(&opts) {
        // flush per line so slow suites show progress; ignore a closed pipe
        let _ = writeln!(out, "{}", report.line()).and_then(|_| out.flush());
        if !report.passed {
            failed.push(report.name);
        }
    }
    let _ = writeln!(out, "total {:.2}s", start.elapsed().as_secs_f64());
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::VerifyFailed(failed.join(", ")))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval(a) => eval(a),
        Command::Scan(a) => scan(a),
        Command::Figure(a) => figure(a),
        Command::Verify(a) => verify(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qdiscord: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

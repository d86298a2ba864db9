use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand};
use hybrid_cavity::dynamics::{self, Stability};
use hybrid_cavity::harness::sweep::substitute;
use hybrid_cavity::harness::{self, Axis, BaseParams, Config, Format, Preset, SweepResult};
use hybrid_cavity::model::{build_drift, effective_params, solve_working_point, EffectiveParams};
use hybrid_cavity::Error;

const EXIT_UNSTABLE: u8 = 2;
const EXIT_CONFIG: u8 = 3;
const EXIT_NUMERICAL: u8 = 4;

#[derive(Parser)]
#[command(
    version,
    about = "Steady-state entanglement in an atom-cavity-mirror system"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one parameter point and print its measures.
    Point {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Run the sweep described in a configuration file.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "csv")]
        format: Format,
        /// Worker threads (0 = one per core).
        #[arg(long, default_value_t = 0)]
        workers: usize,
    },
    /// Run a shipped preset sweep.
    Preset {
        #[arg(long)]
        name: Preset,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "csv")]
        format: Format,
        #[arg(long, default_value_t = 0)]
        workers: usize,
        /// Write the preset configuration text instead of running it.
        #[arg(long)]
        print_config: bool,
    },
    /// Check schema, stability and the bosonic approximation without solving.
    Validate {
        #[arg(long)]
        config: PathBuf,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Unstable { .. } | Error::UnstableWorkingPoint { .. } => EXIT_UNSTABLE,
            Error::InvalidParameter { .. }
            | Error::InvalidArgument(_)
            | Error::BosonicApproximation { .. }
            | Error::NoAdmissibleRoot => EXIT_CONFIG,
            Error::Unphysical { .. } | Error::Numerical(_) => EXIT_NUMERICAL,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn config_failure(message: impl ToString) -> Failure {
    Failure {
        code: EXIT_CONFIG,
        message: message.to_string(),
    }
}

fn load(path: &Path) -> Result<Config, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| config_failure(format!("{}: {e}", path.display())))?;
    harness::parse_config(&text).map_err(|e| config_failure(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure {
        code: 1,
        message: format!("{}: {e}", path.display()),
    })
}

fn emit_sweep(mut result: SweepResult, out: &Path, format: Format) -> Result<(), Failure> {
    result.metadata.timestamp = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .ok()
        .map(|d| d.as_secs());
    write(out, &harness::render(&result, format)?)?;
    let m = &result.metadata;
    eprintln!(
        "{} points written to {} ({} unstable, {} failed)",
        result.rows.len(),
        out.display(),
        m.unstable,
        m.failures
    );
    Ok(())
}

fn point(config: &Path, json: bool) -> Result<(), Failure> {
    let cfg = load(config)?;
    if cfg.sweep.is_some() {
        eprintln!("note: sweep settings ignored; solving the base point");
    }
    let (params, working_point) = harness::resolve(&cfg.base)?;
    for w in working_point.iter().flat_map(|w| &w.warnings) {
        eprintln!("warning: {w}");
    }
    let report = harness::evaluate(&params)?;
    if json {
        let value = serde_json::json!({
            "params": params,
            "working_point": working_point,
            "report": report,
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&value).map_err(|e| Error::Numerical(e.to_string()))?
        );
    } else {
        let two_pi = hybrid_cavity::constants::TWO_PI;
        println!("G_m/2π          {:.6e} Hz", params.g_m / two_pi);
        println!("Δ/ω_m           {:.6}", params.delta / params.omega_m);
        println!("n̄               {:.6}", params.nbar);
        println!("max Re λ        {:.6e} rad/s", report.max_real_part);
        println!("E_mf            {:.9}", report.e_mf);
        println!("E_ma            {:.9}", report.e_ma);
        println!("E_af            {:.9}", report.e_af);
        println!("n_eff           {:.9}", report.n_eff);
        println!("tripartite      {}", report.tripartite.class);
    }
    Ok(())
}

/// Drift-matrix stability at the working point of `base`, without the Lyapunov solve.
fn drift_stability(base: &BaseParams) -> Result<(EffectiveParams, Stability), Error> {
    let e = match base {
        BaseParams::Physical(p) => {
            let w = solve_working_point(p)?;
            for warning in &w.warnings {
                eprintln!("warning: {warning}");
            }
            effective_params(p, &w)
        }
        BaseParams::Effective(e) => {
            let e = e.resolved();
            e.validate()?;
            e
        }
    };
    Ok((e, dynamics::is_stable(&build_drift(&e))?))
}

fn validate(config: &Path) -> Result<(), Failure> {
    let cfg = load(config)?;
    let mut unstable = Vec::new();
    let mut record = |x: Option<f64>, r: Result<Stability, Error>| -> Result<(), Failure> {
        match r {
            Ok(st) if st.stable => Ok(()),
            Ok(Stability {
                max_real_part: m, ..
            })
            | Err(Error::UnstableWorkingPoint { max_real_part: m }) => {
                unstable.push((x, m));
                Ok(())
            }
            Err(e) => Err(e.into()),
        }
    };
    let base = drift_stability(&cfg.base);
    let held = base.as_ref().ok().map(|(e, _)| *e);
    record(None, base.map(|(_, st)| st))?;
    let mut checked = 1;
    if let Some(s) = &cfg.sweep {
        let hold = s.hold_working_point || s.axis == Axis::Temperature;
        for x in s.grid.values() {
            let r = match (hold, held) {
                (true, Some(e)) => {
                    let e = substitute(&e, s.axis, x);
                    dynamics::is_stable(&build_drift(&e))
                }
                _ => drift_stability(&cfg.base.with_axis(s.axis, x)).map(|(_, st)| st),
            };
            record(Some(x), r)?;
            checked += 1;
        }
    }
    println!("schema ok: {checked} point(s) checked");
    if unstable.is_empty() {
        return Ok(());
    }
    for (x, m) in &unstable {
        match x {
            Some(x) => println!("unstable at axis = {x}: max Re λ = {m:.6e}"),
            None => println!("base point unstable: max Re λ = {m:.6e}"),
        }
    }
    // unstable grid points are reported as rows by a sweep, so only the base point is fatal
    if cfg.sweep.is_none() {
        return Err(Failure {
            code: EXIT_UNSTABLE,
            message: "base point is unstable".into(),
        });
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Point { config, json } => point(&config, json),
        Command::Sweep {
            config,
            out,
            format,
            workers,
        } => {
            let spec = load(&config)?.into_sweep().map_err(config_failure)?;
            emit_sweep(harness::run_sweep(&spec, workers)?, &out, format)
        }
        Command::Preset {
            name,
            out,
            format,
            workers,
            print_config,
        } => {
            if print_config {
                return write(&out, name.source());
            }
            let spec = name.spec().map_err(config_failure)?;
            emit_sweep(harness::run_sweep(&spec, workers)?, &out, format)
        }
        Command::Validate { config } => validate(&config),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use dampwave::config::parse_config;
use dampwave::datagen::generate_bv_data;
use dampwave::decay::decay_report;
use dampwave::output::{
    contraction_csv, decay_csv, diagnostics_csv, snapshot_csv, spectrum_csv, spectrum_rows,
    write_file,
};
use dampwave::problem::{AlphaSchedule, ProblemSpec};
use dampwave::simulate::run;
use dampwave::verify::run_verify;
use dampwave::Error;

#[derive(Parser)]
#[command(name = "dampwave", version, about = "Damped wave-front tracking on [0, 1]")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Constant,
    Onoff,
}

#[derive(Subcommand)]
enum Command {
    /// Run the scheme from a configuration file and write CSV snapshots.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        /// Overrides `output_dir` from the configuration.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the built-in identity and property checks.
    Verify,
    /// Tabulate the contraction constants and expansion coefficients.
    Spectrum {
        #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
        d: Vec<f64>,
        #[arg(long = "N", value_delimiter = ',', num_args = 1.., required = true)]
        n: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the decay of seeded random data with the exponential envelopes.
    DecayReport {
        #[arg(long, default_value_t = 0.5)]
        d: f64,
        #[arg(long = "N", default_value_t = 512)]
        n: usize,
        #[arg(long, default_value_t = 10.0)]
        t_end: f64,
        #[arg(long, value_enum, default_value = "constant")]
        mode: Mode,
        #[arg(long = "T1", default_value_t = 1.0)]
        t1: f64,
        #[arg(long = "T2", default_value_t = 2.0)]
        t2: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn exit_for(err: &Error) -> ExitCode {
    eprintln!("error: {err}");
    match err {
        Error::Config(_)
        | Error::Configuration(_)
        | Error::Unsupported(_)
        | Error::Smallness { .. }
        | Error::OutOfTheory { .. } => ExitCode::from(2),
        _ => ExitCode::from(1),
    }
}

fn simulate(config: &Path, out: Option<PathBuf>) -> Result<ExitCode, Error> {
    let text = std::fs::read_to_string(config).map_err(|source| Error::Io {
        path: config.to_path_buf(),
        source,
    })?;
    let cfg = parse_config(&text)?;
    let spec = cfg.to_spec()?;
    let dir = out.unwrap_or_else(|| cfg.output_dir.clone());
    let mut result = run(&spec, cfg.n, cfg.t_end, cfg.emit_every)?;
    if let Some(shift) = &spec.shift {
        for s in &mut result.snapshots {
            s.unshift(shift);
        }
    }
    for (k, snap) in result.snapshots.iter().enumerate() {
        write_file(&dir.join(format!("snapshot_{k:05}.csv")), &snapshot_csv(snap))?;
    }
    write_file(&dir.join("diagnostics.csv"), &diagnostics_csv(&result.diagnostics))?;
    println!(
        "{} steps, {} snapshots written to {}",
        result.full_steps,
        result.snapshots.len(),
        dir.display()
    );
    Ok(ExitCode::SUCCESS)
}

fn verify() -> ExitCode {
    let results = run_verify();
    let failed = results.iter().filter(|r| !r.pass).count();
    for r in &results {
        let tag = if r.pass { "PASS" } else { "FAIL" };
        println!("{tag} {:<34} {}", r.name, r.detail);
    }
    println!("{} checks, {failed} failed", results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn spectrum(d: &[f64], n: &[usize], out: Option<PathBuf>) -> Result<ExitCode, Error> {
    let csv = spectrum_csv(&spectrum_rows(d, n)?);
    match out {
        Some(path) => write_file(&path, &csv)?,
        None => print!("{csv}"),
    }
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn decay(
    d: f64,
    n: usize,
    t_end: f64,
    mode: Mode,
    t1: f64,
    t2: f64,
    seed: u64,
    out: Option<PathBuf>,
) -> Result<ExitCode, Error> {
    let alpha = match mode {
        Mode::Constant => AlphaSchedule::Constant(1.0),
        Mode::Onoff => AlphaSchedule::OnOff { t1, t2 },
    };
    let data = generate_bv_data(seed, 16, -1.0, 1.0);
    let spec = ProblemSpec::telegrapher(d, data.to_initial()).with_alpha(alpha);
    let report = decay_report(&spec, n, t_end)?;
    let c = report.constants;
    println!(
        "C1 = {:.6}  C2 = {:.6}  C3 = {:.6}  eps_N = {:.3e}",
        c.c1, c.c2, c.c3, report.epsilon_n
    );
    if let Some(fit) = report.fit {
        println!("fitted rate {:.6} (prefactor {:.6})", fit.rate, fit.prefactor);
    }
    for r in &report.rows {
        println!(
            "t = {:>5.2}  |J| = {:.4e} <= {:.4e}  |rho| = {:.4e} <= {:.4e}  {}",
            r.t,
            r.linf_j,
            r.envelope_j,
            r.linf_rho,
            r.envelope_rho,
            if r.pass { "pass" } else { "FAIL" }
        );
    }
    if let Some(path) = out {
        write_file(&path, &decay_csv(&report))?;
        let stem = path.file_stem().map_or("decay".into(), |s| s.to_string_lossy().into_owned());
        write_file(
            &path.with_file_name(format!("{stem}_contraction.csv")),
            &contraction_csv(&report),
        )?;
    }
    Ok(if report.all_pass {
        ExitCode::SUCCESS
    } else {
        println!("envelope check failed");
        ExitCode::from(1)
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match cli.command {
        Command::Simulate { config, out } => simulate(&config, out),
        Command::Verify => Ok(verify()),
        Command::Spectrum { d, n, out } => spectrum(&d, &n, out),
        Command::DecayReport {
            d,
            n,
            t_end,
            mode,
            t1,
            t2,
            seed,
            out,
        } => decay(d, n, t_end, mode, t1, t2, seed, out),
    };
    outcome.unwrap_or_else(|e| exit_for(&e))
}

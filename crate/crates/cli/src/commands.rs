use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use gausscap::capacities::evaluate_grid;
use gausscap::epi::monte_carlo_verify;
use gausscap::gaussian::{
    entropy, make_squeezed_thermal, make_thermal, mean_photon, symplectic_eigenvalues,
    CovarianceMatrix,
};
use gausscap::{BoundResult, ChannelKind, ChannelSpec, EpiReport, EvalOptions, Inequality, VerifyConfig};
use serde::Serialize;
use std::f64::consts::LN_2;

use crate::args::{BoundsArgs, ChannelFlag, EntropyArgs, EvalArgs, Fig2Args, FormatFlag, GridArgs, NoiseArgs, VerifyArgs};
use crate::error::CliError;
use crate::output::{write_bounds_csv, write_json};

const EXTERNAL_CURVE_NOTE: &str = "note: the enhanced lower-bound curve is defined outside this model \
and is not generated; every column written here is computed from closed forms or covariance matrices.";

/// Input photon numbers `start + (stop − start) i/(steps − 1)`; a single step is `[start]`.
pub fn photon_grid(grid: &GridArgs) -> Result<Vec<f64>, CliError> {
    let GridArgs { n_start, n_stop, n_steps } = *grid;
    if !(n_start.is_finite() && n_stop.is_finite()) || n_start < 0.0 {
        return Err(CliError::Config(format!(
            "photon range must be finite and nonnegative, got [{n_start}, {n_stop}]"
        )));
    }
    if n_stop < n_start {
        return Err(CliError::Config(format!("empty photon range [{n_start}, {n_stop}]")));
    }
    if n_steps == 0 {
        return Err(CliError::Config("--n-steps must be >= 1".into()));
    }
    if n_steps == 1 {
        return Ok(vec![n_start]);
    }
    let last = (n_steps - 1) as f64;
    Ok((0..n_steps)
        .map(|i| {
            if i == n_steps - 1 {
                n_stop
            } else {
                n_start + (n_stop - n_start) * i as f64 / last
            }
        })
        .collect())
}

pub fn environment(noise: &NoiseArgs) -> Result<CovarianceMatrix, CliError> {
    Ok(match noise.squeeze {
        Some(r) => make_squeezed_thermal(noise.ne, r)?,
        None => make_thermal(noise.ne)?,
    })
}

fn eval_options(eval: &EvalArgs) -> EvalOptions {
    EvalOptions {
        units: eval.units.into(),
        coherent_arg: eval.coherent_arg.into(),
    }
}

pub fn cmd_bounds(args: &BoundsArgs) -> Result<Vec<BoundResult>, CliError> {
    let kind = match args.channel {
        ChannelFlag::Bs => ChannelKind::BeamSplitter { tau: args.tau },
        ChannelFlag::Amp => ChannelKind::Amplifier { kappa: args.kappa },
    };
    let spec = ChannelSpec::new(kind, environment(&args.noise)?)?;
    let ns = photon_grid(&args.grid)?;
    Ok(evaluate_grid(&spec, &ns, &eval_options(&args.eval))?)
}

/// Beam-splitter and amplifier panels.
pub struct Fig2 {
    pub beam_splitter: Vec<BoundResult>,
    pub amplifier: Vec<BoundResult>,
}

pub fn cmd_fig2(args: &Fig2Args) -> Result<Fig2, CliError> {
    let env = environment(&args.noise)?;
    let ns = photon_grid(&args.grid)?;
    let opts = eval_options(&args.eval);
    let bs = ChannelSpec::beam_splitter(args.tau, env.clone())?;
    let amp = ChannelSpec::amplifier(args.kappa, env)?;
    Ok(Fig2 {
        beam_splitter: evaluate_grid(&bs, &ns, &opts)?,
        amplifier: evaluate_grid(&amp, &ns, &opts)?,
    })
}

pub fn fig2_paths(dir: &Path, format: FormatFlag) -> (PathBuf, PathBuf) {
    let ext = match format {
        FormatFlag::Csv => "csv",
        FormatFlag::Json => "json",
    };
    (
        dir.join(format!("fig2a_beam_splitter.{ext}")),
        dir.join(format!("fig2b_amplifier.{ext}")),
    )
}

pub fn verify_config(args: &VerifyArgs) -> Result<VerifyConfig, CliError> {
    let inequality: Inequality = args.inequality.parse()?;
    let (lo, hi) = inequality.default_parameter_range();
    let cfg = VerifyConfig {
        inequality,
        trials: args.trials,
        max_n: args.max_n,
        max_r: args.max_r,
        parameter_range: (args.param_min.unwrap_or(lo), args.param_max.unwrap_or(hi)),
        seed: args.seed,
        tolerance: args.tolerance,
    };
    cfg.validate()?;
    Ok(cfg)
}

pub fn cmd_verify_epi(args: &VerifyArgs) -> Result<EpiReport, CliError> {
    let cfg = verify_config(args)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.threads)
        .build()
        .map_err(|e| CliError::Config(format!("cannot build thread pool: {e}")))?;
    Ok(pool.install(|| monte_carlo_verify(&cfg))?)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropyReport {
    pub n_modes: usize,
    pub symplectic_eigenvalues: Vec<f64>,
    pub entropy_nats: f64,
    pub entropy_bits: f64,
    /// Single-mode states only.
    pub mean_photon: Option<f64>,
}

pub fn parse_matrix(text: &str) -> Result<CovarianceMatrix, CliError> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        return serde_json::from_str(trimmed).map_err(|e| CliError::Config(format!("bad matrix JSON: {e}")));
    }
    let values = trimmed
        .split(|c: char| c == ',' || c == ';' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<f64>().map_err(|e| CliError::Config(format!("bad matrix entry {s:?}: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CovarianceMatrix::from_row_major(&values)?)
}

pub fn cmd_entropy(args: &EntropyArgs) -> Result<EntropyReport, CliError> {
    let text = match (&args.matrix, &args.matrix_file) {
        (Some(m), _) => m.clone(),
        (None, Some(path)) => std::fs::read_to_string(path)?,
        (None, None) => return Err(CliError::Config("provide --matrix or --matrix-file".into())),
    };
    let gamma = parse_matrix(&text)?;
    let s = entropy(&gamma)?;
    Ok(EntropyReport {
        n_modes: gamma.n_modes(),
        symplectic_eigenvalues: symplectic_eigenvalues(&gamma)?,
        entropy_nats: s,
        entropy_bits: s / LN_2,
        mean_photon: if gamma.n_modes() == 1 { Some(mean_photon(&gamma)?) } else { None },
    })
}

fn emit_bounds<W: Write>(out: W, rows: &[BoundResult], format: FormatFlag) -> Result<(), CliError> {
    match format {
        FormatFlag::Csv => write_bounds_csv(out, rows),
        FormatFlag::Json => write_json(out, rows),
    }
}

fn with_output<F>(path: Option<&Path>, stdout: &mut dyn Write, f: F) -> Result<(), CliError>
where
    F: FnOnce(&mut dyn Write) -> Result<(), CliError>,
{
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            f(&mut w)?;
            w.flush()?;
            Ok(())
        }
        None => f(stdout),
    }
}

pub fn run_bounds(args: &BoundsArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let rows = cmd_bounds(args)?;
    with_output(args.out.as_deref(), stdout, |w| emit_bounds(w, &rows, args.eval.format))
}

pub fn run_fig2(args: &Fig2Args, stderr: &mut dyn Write) -> Result<(), CliError> {
    let fig = cmd_fig2(args)?;
    std::fs::create_dir_all(&args.out)?;
    let (a, b) = fig2_paths(&args.out, args.eval.format);
    for (path, rows) in [(&a, &fig.beam_splitter), (&b, &fig.amplifier)] {
        let mut w = BufWriter::new(File::create(path)?);
        emit_bounds(&mut w, rows, args.eval.format)?;
        w.flush()?;
        writeln!(stderr, "wrote {} ({} rows)", path.display(), rows.len())?;
    }
    if args.note {
        writeln!(stderr, "{EXTERNAL_CURVE_NOTE}")?;
    }
    Ok(())
}

pub fn run_verify_epi(args: &VerifyArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let report = cmd_verify_epi(args)?;
    emit_report(report, args.out.as_deref(), stdout)
}

/// Writes the report, then turns any violation into [`CliError::Violation`].
pub fn emit_report(report: EpiReport, path: Option<&Path>, stdout: &mut dyn Write) -> Result<(), CliError> {
    with_output(path, stdout, |w| write_json(w, &report))?;
    if report.violations > 0 {
        return Err(CliError::Violation(report));
    }
    Ok(())
}

pub fn run_entropy(args: &EntropyArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let report = cmd_entropy(args)?;
    match args.format {
        FormatFlag::Json => write_json(stdout, &report),
        FormatFlag::Csv => {
            let nus: Vec<String> = report.symplectic_eigenvalues.iter().map(|v| crate::output::format_value(*v)).collect();
            writeln!(stdout, "n_modes,symplectic_eigenvalues,entropy_nats,entropy_bits,mean_photon")?;
            writeln!(
                stdout,
                "{},{},{},{},{}",
                report.n_modes,
                nus.join(" "),
                crate::output::format_value(report.entropy_nats),
                crate::output::format_value(report.entropy_bits),
                report.mean_photon.map(crate::output::format_value).unwrap_or_default()
            )?;
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_shapes() {
        let g = |a, b, n| photon_grid(&GridArgs { n_start: a, n_stop: b, n_steps: n });
        let v = g(0.0, 10.0, 101).unwrap();
        assert_eq!(v.len(), 101);
        assert_eq!(v[0], 0.0);
        assert_eq!(v[100], 10.0);
        assert!((v[37] - 3.7).abs() < 1e-15);
        assert_eq!(g(2.0, 5.0, 1).unwrap(), vec![2.0]);
        assert!(g(0.0, 1.0, 0).is_err());
        assert!(g(2.0, 1.0, 3).is_err());
        assert!(g(-1.0, 1.0, 3).is_err());
    }

    #[test]
    fn violations_are_reported_then_raised() {
        let cfg = VerifyConfig { trials: 3, ..VerifyConfig::new(Inequality::QepiBs, 1) };
        let mut report = monte_carlo_verify(&cfg).unwrap();
        let mut buf = Vec::new();
        emit_report(report.clone(), None, &mut buf).unwrap();
        let clean = buf.clone();

        report.violations = 2;
        buf.clear();
        let err = emit_report(report, None, &mut buf).unwrap_err();
        assert_eq!(err.exit_code(), crate::error::exit::VIOLATION);
        let echoed: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(echoed["violations"], 2);
        assert_ne!(buf, clean);
    }

    #[test]
    fn matrix_parsing() {
        assert_eq!(parse_matrix("1,0,0,1").unwrap(), CovarianceMatrix::vacuum(1));
        assert_eq!(parse_matrix("1 0; 0 1").unwrap(), CovarianceMatrix::vacuum(1));
        assert_eq!(parse_matrix(r#"{"n_modes":1,"data":[1,0,0,1]}"#).unwrap(), CovarianceMatrix::vacuum(1));
        assert!(matches!(parse_matrix("1,0,0"), Err(CliError::Config(_))));
        assert!(matches!(parse_matrix("1,x,0,1"), Err(CliError::Config(_))));
        assert!(matches!(parse_matrix("0.5,0,0,0.5"), Err(CliError::Numerical(_))));
    }
}

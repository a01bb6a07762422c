use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use log::LevelFilter;

use shearwave::conditioning::PhysicalRanges;
use shearwave::config::{InputFormat, RunConfig};
use shearwave::las::{write_las, WellLog};
use shearwave::pipeline::{self, ModelFile};
use shearwave::synth::{generate_field, SynthConfig};
use shearwave::{Error, Result};

#[derive(Parser)]
#[command(name = "shearwave", version, about = "Shear-wave velocity prediction from well logs")]
struct Cli {
    /// Only print errors.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Summarize the curves in a LAS or CSV file.
    Inspect {
        path: PathBuf,
        /// Depth column header for CSV input.
        #[arg(long, default_value = "DEPTH")]
        depth_column: String,
    },
    /// Generate the two-well synthetic field as LAS files.
    Synth {
        /// Generator settings (JSON); defaults when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value = ".")]
        output_dir: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run the full study described by a run config.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        output_dir: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Apply a saved model to a well file.
    Predict {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        /// Run config supplying curve mapping and range screens.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value = "DEPTH")]
        depth_column: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    env_logger::Builder::new()
        .filter_level(if cli.quiet { LevelFilter::Error } else { LevelFilter::Info })
        .parse_env("SHEARWAVE_LOG")
        .format_timestamp(None)
        .init();

    let result = match cli.command {
        Command::Inspect { path, depth_column } => inspect(&path, &depth_column, cli.quiet),
        Command::Synth {
            config,
            output_dir,
            seed,
        } => synth(config.as_deref(), &output_dir, seed, cli.quiet),
        Command::Run {
            config,
            output_dir,
            seed,
        } => run(&config, output_dir, seed, cli.quiet),
        Command::Predict {
            model,
            input,
            output,
            config,
            depth_column,
        } => predict(&model, &input, &output, config.as_deref(), &depth_column),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_usage() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn read_well(path: &Path, depth_column: &str) -> Result<(WellLog, Vec<u8>)> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    let log = pipeline::parse_well_bytes(&bytes, InputFormat::from_path(path), depth_column)
        .map_err(|e| Error::Pipeline(format!("{}: {e}", path.display())))?;
    Ok((log, bytes))
}

fn fmt_range(values: &[f64]) -> (String, String) {
    let present = values.iter().copied().filter(|v| !v.is_nan());
    let (lo, hi) = present.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    if lo.is_finite() {
        (format!("{lo:.4}"), format!("{hi:.4}"))
    } else {
        ("-".into(), "-".into())
    }
}

fn inspect(path: &Path, depth_column: &str, quiet: bool) -> Result<ExitCode> {
    let (log, _) = read_well(path, depth_column)?;
    if quiet {
        return Ok(ExitCode::SUCCESS);
    }
    println!("file:  {}", path.display());
    println!("well:  {}", if log.well_name.is_empty() { "(unnamed)" } else { &log.well_name });
    let (top, base) = fmt_range(log.depth());
    println!("depth: {top} .. {base} {} ({} rows)", log.depth_unit, log.len());
    if log.curves().is_empty() {
        println!("no curves");
        return Ok(ExitCode::SUCCESS);
    }
    println!("{:<10} {:<8} {:>12} {:>12} {:>8}", "curve", "unit", "min", "max", "missing");
    for c in log.curves() {
        let (lo, hi) = fmt_range(&c.samples);
        println!("{:<10} {:<8} {:>12} {:>12} {:>8}", c.mnemonic, c.unit, lo, hi, c.missing_count());
    }
    Ok(ExitCode::SUCCESS)
}

fn synth(config: Option<&Path>, out: &Path, seed: Option<u64>, quiet: bool) -> Result<ExitCode> {
    let mut cfg = match config {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::io(p, e))?;
            serde_json::from_str::<SynthConfig>(&text).map_err(|e| Error::Config(format!("{}: {e}", p.display())))?
        }
        None => SynthConfig::default(),
    };
    if let Some(s) = seed {
        cfg.seed = s;
    }
    let field = generate_field(&cfg)?;
    for (name, log, nulls) in [
        ("well_a.las", &field.well_a, &field.injected_nulls_a),
        ("well_b.las", &field.well_b, &field.injected_nulls_b),
    ] {
        let path = out.join(name);
        pipeline::write_atomic(&path, &write_las(log))?;
        if !quiet {
            let nulls: Vec<String> = nulls.iter().map(|(k, v)| format!("{k}={v}")).collect();
            println!(
                "{}: {} ({} rows, seed {}, nulls {})",
                path.display(),
                log.well_name,
                log.len(),
                cfg.seed,
                nulls.join(" ")
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run(config: &Path, output_dir: Option<PathBuf>, seed: Option<u64>, quiet: bool) -> Result<ExitCode> {
    let mut cfg = RunConfig::load(config)?;
    if let Some(dir) = output_dir {
        cfg.output_dir = dir;
    }
    if let Some(s) = seed {
        cfg.seed = s;
    }
    let study = pipeline::run(&cfg)?;
    if !quiet {
        println!("{:<28} {:<11} {:>4} {:>8} {:>10}", "scenario", "method", "rank", "R2", "AAPRE %");
        for r in &study.comparison.rows {
            println!(
                "{:<28} {:<11} {:>4} {:>8.4} {:>10.3}",
                r.scenario.as_str(),
                r.method.as_str(),
                r.rank,
                r.r_squared,
                r.aapre_percent
            );
        }
    }
    if study.is_complete() {
        Ok(ExitCode::SUCCESS)
    } else {
        for f in &study.failures {
            let method = f.method.map(|m| format!("/{m}")).unwrap_or_default();
            eprintln!("failed: {}{method}: {}", f.scenario, f.error);
        }
        eprintln!("run incomplete; report flagged complete=false");
        Ok(ExitCode::from(1))
    }
}

fn predict(model_path: &Path, input: &Path, output: &Path, config: Option<&Path>, depth_column: &str) -> Result<ExitCode> {
    let model_bytes = std::fs::read(model_path).map_err(|e| Error::io(model_path, e))?;
    let file: ModelFile = serde_json::from_slice(&model_bytes)
        .map_err(|e| Error::Config(format!("{}: {e}", model_path.display())))?;
    let model = file.to_fitted()?;
    let (curve_map, ranges) = match config {
        Some(p) => {
            let cfg = RunConfig::load(p)?;
            (cfg.curve_map, cfg.conditioning.physical_ranges)
        }
        None => (BTreeMap::new(), PhysicalRanges::default()),
    };
    let (mut log, input_bytes) = read_well(input, depth_column)?;
    pipeline::ingest(&mut log, &curve_map, &ranges)?;
    let predicted = pipeline::predict_log(&model, &log)?;
    let hashes = BTreeMap::from([
        ("input".to_string(), pipeline::sha256_hex(&input_bytes)),
        ("model".to_string(), pipeline::sha256_hex(&model_bytes)),
    ]);
    pipeline::write_atomic(output, &pipeline::prediction_csv(log.depth(), &predicted, file.seed, &hashes))?;
    let empty = predicted.iter().filter(|p| p.is_none()).count();
    log::info!("wrote {} rows to {} ({empty} without prediction)", predicted.len(), output.display());
    Ok(ExitCode::SUCCESS)
}

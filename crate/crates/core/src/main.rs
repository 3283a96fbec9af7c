use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use modgeom::harness::{
    generate_set, parse_base_set, parse_point_set, run_lemma_suite, run_theorem_experiment,
    write_point_set, ExperimentConfig, ExperimentKind, Report, ReportFormat, SetSource, SetSpec,
};
use modgeom::{Error, Modulus, Result};

#[derive(Parser)]
#[command(
    name = "modgeom",
    version,
    about = "Exact configuration geometry over Z_{p^l}"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the exhaustive lemma suite for q = p^l.
    VerifyLemmas {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        l: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Run a theorem experiment over seeded trials.
    Experiment {
        #[arg(long, value_parser = parse_kind)]
        kind: ExperimentKind,
        #[command(flatten)]
        set: SetArgs,
        #[arg(long, default_value_t = 1)]
        trials: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Write the point set of one trial as a point-set file.
    GenSet {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long, default_value_t = 0)]
        trial: u64,
        /// Destination file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SetArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    l: u32,
    #[arg(long, default_value_t = 2)]
    d: usize,
    /// random:N | product:FILE | subsets:K | full | file:PATH
    #[arg(long, value_parser = parse_spec)]
    set: SetSpec,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct Output {
    /// Report file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// json or csv; inferred from the --out extension when omitted.
    #[arg(long, value_parser = parse_format)]
    format: Option<ReportFormat>,
}

fn parse_kind(s: &str) -> std::result::Result<ExperimentKind, String> {
    match s.parse() {
        Ok(ExperimentKind::Lemmas) => Err("use verify-lemmas for the lemma suite".into()),
        other => other.map_err(|e: Error| e.to_string()),
    }
}

fn parse_spec(s: &str) -> std::result::Result<SetSpec, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_format(s: &str) -> std::result::Result<ReportFormat, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn config(set: &SetArgs, kind: ExperimentKind, trials: u64) -> Result<ExperimentConfig> {
    let m = Modulus::new(set.p, set.l)?;
    let check_q = |file_m: Modulus, path: &Path| {
        if file_m != m {
            return Err(Error::Config(format!(
                "{} is over q = {}, expected q = {}",
                path.display(),
                file_m.q(),
                m.q()
            )));
        }
        Ok(())
    };
    let source = match &set.set {
        SetSpec::Random(size) => SetSource::Random { size: *size },
        SetSpec::Subsets(size) => SetSource::AllSubsets { size: *size },
        SetSpec::Full => SetSource::Full,
        SetSpec::Product(path) => {
            let (file_m, base) = parse_base_set(&read(path)?)?;
            check_q(file_m, path)?;
            SetSource::Product { base }
        }
        SetSpec::File(path) => {
            let e = parse_point_set(&read(path)?)?;
            check_q(e.modulus(), path)?;
            if e.dim() != set.d {
                return Err(Error::DimensionMismatch {
                    expected: set.d,
                    found: e.dim(),
                });
            }
            SetSource::Explicit {
                points: e.iter().map(|v| v.coords().to_vec()).collect(),
            }
        }
    };
    let cfg = ExperimentConfig {
        p: set.p,
        l: set.l,
        d: set.d,
        kind,
        source,
        trials,
        seed: set.seed,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_report(report: &Report, output: &Output) -> Result<()> {
    let format =
        output
            .format
            .unwrap_or_else(|| match output.out.as_ref().and_then(|p| p.extension()) {
                Some(ext) if ext == "csv" => ReportFormat::Csv,
                _ => ReportFormat::Json,
            });
    emit(&report.render(format), output.out.as_deref())
}

fn summarize(report: &Report) {
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    if let Some(agg) = &report.aggregate {
        eprintln!(
            "{} q={}: {} trials, statistic min {} max {} mean {:.3}",
            report.kind,
            report.q,
            report.records.len(),
            agg.min,
            agg.max,
            agg.mean
        );
    }
    let failed = report
        .lemmas
        .iter()
        .filter(|c| c.status == modgeom::harness::CheckStatus::Fail);
    for c in failed {
        eprintln!(
            "FAIL {}: {} (statistic {}, bound {})",
            c.name, c.statement, c.statistic, c.bound
        );
    }
    eprintln!(
        "{}",
        if report.all_pass {
            "all pass"
        } else {
            "FAILED"
        }
    );
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::VerifyLemmas { p, l, output } => {
            let report = run_lemma_suite(Modulus::new(p, l)?)?;
            emit_report(&report, &output)?;
            summarize(&report);
            Ok(report.all_pass)
        }
        Command::Experiment {
            kind,
            set,
            trials,
            output,
        } => {
            let report = run_theorem_experiment(&config(&set, kind, trials)?)?;
            emit_report(&report, &output)?;
            summarize(&report);
            Ok(report.all_pass)
        }
        Command::GenSet { set, trial, out } => {
            // DotProd places no restriction on d.
            let cfg = config(&set, ExperimentKind::DotProd, trial.saturating_add(1))?;
            let e = generate_set(&cfg, trial)?;
            emit(&write_point_set(&e), out.as_deref())?;
            Ok(true)
        }
    }
}

/// 0 when everything passed, 1 when a check failed, 2 on usage or config errors.
fn exit_code(outcome: &Result<bool>) -> u8 {
    match outcome {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(_) => 2,
    }
}

fn main() -> ExitCode {
    let outcome = run(Cli::parse());
    if let Err(e) = &outcome {
        eprintln!("error: {e}");
    }
    ExitCode::from(exit_code(&outcome))
}

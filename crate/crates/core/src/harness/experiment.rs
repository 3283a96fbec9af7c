use std::time::Instant;

use rayon::prelude::*;

use super::config::{ExperimentConfig, ExperimentKind};
use super::generate::generate_set;
use super::lemmas::lemma_checks;
use super::report::{Aggregate, Report, TrialRecord, SCHEMA_VERSION};
use super::thresholds::{conclusion, hypothesis};
use crate::configsets::{area_set_v2, product_set, PointSet};
use crate::error::{Error, Result};
use crate::orthogroup::t2_classes;

/// The statistic of `kind` on one set.
pub fn statistic(kind: ExperimentKind, e: &PointSet) -> Result<u64> {
    Ok(match kind {
        ExperimentKind::T2 => t2_classes(e).len() as u64,
        ExperimentKind::V2 => area_set_v2(e)?.len() as u64,
        ExperimentKind::DotProd => {
            if e.product_base().is_none() {
                return Err(Error::MissingProductTag);
            }
            product_set(e).len() as u64
        }
        ExperimentKind::Lemmas => unreachable!("lemma suites have no per-set statistic"),
    })
}

/// Runs every trial of `cfg`. Trials run in parallel; each derives its set
/// from `(seed, trial)` alone, so the report does not depend on scheduling.
pub fn run_theorem_experiment(cfg: &ExperimentConfig) -> Result<Report> {
    let start = Instant::now();
    let m = cfg.validate()?;
    if cfg.kind == ExperimentKind::Lemmas {
        let lemmas = lemma_checks(m)?;
        return Ok(Report {
            schema: SCHEMA_VERSION,
            kind: cfg.kind,
            config: cfg.clone(),
            q: m.q(),
            hypothesis: None,
            conclusion: None,
            records: Vec::new(),
            all_pass: Report::compute_all_pass(&[], &lemmas),
            lemmas,
            aggregate: None,
            warnings: Vec::new(),
            wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
        });
    }
    let hyp = hypothesis(cfg.kind, m, cfg.d).expect("theorem kinds have a hypothesis");
    let conc = conclusion(cfg.kind, m).expect("theorem kinds have a conclusion");
    let trials = cfg.effective_trials()?;

    let records = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let e = generate_set(cfg, trial)?;
            let size = e.len() as u64;
            let stat = statistic(cfg.kind, &e)?;
            Ok(TrialRecord::new(
                trial,
                size,
                stat,
                hyp.min_size,
                size >= hyp.min_size,
                conc.bound,
            ))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut warnings = Vec::new();
    let below = records.iter().filter(|r| !r.meets_threshold).count();
    if below > 0 {
        warnings.push(format!(
            "{below} of {} trials below the size threshold {} ({}); their results do not affect all_pass",
            records.len(),
            hyp.min_size,
            hyp.formula
        ));
    }
    if cfg.kind == ExperimentKind::T2 && !m.is_three_mod_four() {
        warnings.push(format!(
            "p = {} is not 3 mod 4; the T_2 bound is exploratory here",
            m.p()
        ));
    }
    let all_pass = if cfg.kind == ExperimentKind::T2 && !m.is_three_mod_four() {
        true
    } else {
        Report::compute_all_pass(&records, &[])
    };
    Ok(Report {
        schema: SCHEMA_VERSION,
        kind: cfg.kind,
        config: cfg.clone(),
        q: m.q(),
        hypothesis: Some(hyp),
        conclusion: Some(conc),
        aggregate: Aggregate::of(&records, m.q()),
        records,
        lemmas: Vec::new(),
        warnings,
        all_pass,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

//! Evaluation machinery: predictive simulation, aggregation, configuration
//! sweeps and fitting of observed networks.

mod grids;
mod stats;

pub use grids::{default_grids, desk_grid, describe as describe_grid, grid, GridKind, DESK_GRID_MAX};
pub use stats::{mae, pearson, percentile};

use std::collections::BTreeMap;
use std::sync::mpsc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{feature_vector_with_floor, largest_connected_component, FeatureVector, Graph};
use crate::parfit::{fit, FeatureModel, FitConfig, RandomGraphModel, Termination};
use crate::params::{ModelKind, ParamVector};
use crate::rng::Seed;

pub const DEFAULT_SAMPLES: usize = 50;

/// Everything measured for one successfully evaluated configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalOutcome {
    pub target: FeatureVector,
    pub fitted: ParamVector,
    /// Mean features of the samples drawn at the fitted parameters.
    pub achieved: FeatureVector,
    pub abs_errors: Vec<f64>,
    pub iterations: usize,
    pub averaging_start: usize,
    pub terminated_by: Termination,
}

/// One row of a predictive simulation or a real-network fit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalRecord {
    pub index: usize,
    pub model_kind: ModelKind,
    /// Generating parameters; `None` for observed networks.
    pub true_params: Option<ParamVector>,
    pub outcome: std::result::Result<EvalOutcome, String>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl EvalRecord {
    pub fn outcome(&self) -> Option<&EvalOutcome> {
        self.outcome.as_ref().ok()
    }

    pub fn error(&self) -> Option<&str> {
        self.outcome.as_ref().err().map(String::as_str)
    }

    /// Equality ignoring wall time.
    pub fn same_result(&self, other: &EvalRecord) -> bool {
        self.index == other.index
            && self.model_kind == other.model_kind
            && self.true_params == other.true_params
            && self.outcome == other.outcome
    }
}

fn mean_sampled_features<M: FeatureModel + ?Sized>(
    model: &M,
    params: &ParamVector,
    samples: usize,
    seed: Seed,
) -> Result<FeatureVector> {
    let features = (0..samples)
        .map(|r| model.sample_features(params, seed.derive(r as u64)))
        .collect::<Result<Vec<_>>>()?;
    FeatureVector::mean(&features)
        .ok_or_else(|| Error::InvalidParameter("at least one sample per side required".into()))
}

/// Fit `target`, then resample at the fitted parameters.
fn fit_and_resample<M: FeatureModel + ?Sized>(
    model: &M,
    target: FeatureVector,
    samples: usize,
    config: &FitConfig,
    fit_seed: Seed,
    resample_seed: Seed,
) -> Result<EvalOutcome> {
    let result = fit(model, &target, config, fit_seed)?;
    let achieved = mean_sampled_features(model, &result.params, samples, resample_seed)?;
    let abs_errors =
        target.values().iter().zip(achieved.values()).map(|(t, a)| (t - a).abs()).collect();
    Ok(EvalOutcome {
        target,
        fitted: result.params,
        achieved,
        abs_errors,
        iterations: result.iterations,
        averaging_start: result.averaging_start,
        terminated_by: result.terminated_by,
    })
}

/// Evaluate one configuration: mean features of `samples` draws become the
/// target, the target is fitted, and `samples` draws at the fitted
/// parameters give the achieved features.
pub fn evaluate_configuration<M: FeatureModel + ?Sized>(
    model: &M,
    index: usize,
    params: &ParamVector,
    samples: usize,
    config: &FitConfig,
    master_seed: Seed,
) -> EvalRecord {
    let start = Instant::now();
    let idx = index as u64;
    let outcome = mean_sampled_features(model, params, samples, master_seed.derive_path(&[idx, 0]))
        .and_then(|target| {
            fit_and_resample(
                model,
                target,
                samples,
                config,
                master_seed.derive_path(&[idx, 1]),
                master_seed.derive_path(&[idx, 2]),
            )
        });
    EvalRecord {
        index,
        model_kind: model.kind(),
        true_params: Some(params.clone()),
        outcome: outcome.map_err(|e| e.to_string()),
        wall_time: start.elapsed(),
    }
}

/// Run [`evaluate_configuration`] for every configuration in parallel.
/// Failures are kept as records carrying the error message.
pub fn predictive_simulation<M: FeatureModel + ?Sized>(
    model: &M,
    configurations: &[ParamVector],
    samples_per_side: usize,
    config: &FitConfig,
    master_seed: Seed,
) -> Vec<EvalRecord> {
    predictive_simulation_with(model, configurations, samples_per_side, config, master_seed, |_| {})
}

/// Like [`predictive_simulation`], handing each record to `on_record` in
/// configuration order as soon as it and all its predecessors are done.
pub fn predictive_simulation_with<M, F>(
    model: &M,
    configurations: &[ParamVector],
    samples_per_side: usize,
    config: &FitConfig,
    master_seed: Seed,
    mut on_record: F,
) -> Vec<EvalRecord>
where
    M: FeatureModel + ?Sized,
    F: FnMut(&EvalRecord),
{
    let (tx, rx) = mpsc::channel();
    let mut records = Vec::with_capacity(configurations.len());
    std::thread::scope(|scope| {
        // the producer lives outside the rayon pool so a single-threaded pool
        // cannot block on this consumer
        scope.spawn(move || {
            configurations.par_iter().enumerate().for_each_with(tx, |tx, (i, params)| {
                let record =
                    evaluate_configuration(model, i, params, samples_per_side, config, master_seed);
                let _ = tx.send(record);
            });
        });
        let mut pending = BTreeMap::new();
        for record in rx {
            pending.insert(record.index, record);
            while let Some(record) = pending.remove(&records.len()) {
                on_record(&record);
                records.push(record);
            }
        }
    });
    records
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureSummary {
    pub name: String,
    pub pearson: f64,
    pub mae: f64,
    pub p90_abs_error: f64,
}

/// Table-1 style summary of a set of records.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub model_kind: ModelKind,
    pub features: Vec<FeatureSummary>,
    pub mean_iterations: f64,
    pub ok_records: usize,
    pub failed_records: usize,
}

/// Target/achieved pairs per feature (natural sign), sorted so that results
/// do not depend on record order.
fn paired_features(records: &[EvalRecord], kind: ModelKind) -> Vec<Vec<(f64, f64)>> {
    let mut pairs = vec![Vec::new(); kind.dimension()];
    for outcome in records.iter().filter_map(EvalRecord::outcome) {
        for (p, (t, a)) in
            pairs.iter_mut().zip(outcome.target.natural().into_iter().zip(outcome.achieved.natural()))
        {
            p.push((t, a));
        }
    }
    for p in &mut pairs {
        p.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)));
    }
    pairs
}

fn mean_iterations(records: &[EvalRecord]) -> f64 {
    let mut iterations: Vec<usize> =
        records.iter().filter_map(EvalRecord::outcome).map(|o| o.iterations).collect();
    iterations.sort_unstable();
    iterations.iter().sum::<usize>() as f64 / iterations.len() as f64
}

/// Per-feature Pearson correlation and MAE between target and achieved
/// features over the successful records, plus the mean iteration count.
pub fn aggregate(records: &[EvalRecord]) -> Result<Summary> {
    let kind = records
        .first()
        .map(|r| r.model_kind)
        .ok_or(Error::DegenerateVariance("no records to aggregate"))?;
    let ok = records.iter().filter(|r| r.outcome().is_some()).count();
    if ok < 2 {
        return Err(Error::DegenerateVariance("aggregation needs two successful records"));
    }
    let mut features = Vec::with_capacity(kind.dimension());
    for (name, pairs) in kind.feature_names().iter().zip(paired_features(records, kind)) {
        let (targets, achieved): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
        let errors: Vec<f64> = targets.iter().zip(&achieved).map(|(t, a)| (t - a).abs()).collect();
        features.push(FeatureSummary {
            name: name.to_string(),
            pearson: pearson(&targets, &achieved)?,
            mae: mae(&targets, &achieved),
            p90_abs_error: percentile(&errors, 90.0),
        });
    }
    Ok(Summary {
        model_kind: kind,
        features,
        mean_iterations: mean_iterations(records),
        ok_records: ok,
        failed_records: records.len() - ok,
    })
}

/// MAE per feature over the successful records (NaN if there are none).
pub fn mae_by_feature(records: &[EvalRecord], kind: ModelKind) -> Vec<f64> {
    paired_features(records, kind)
        .into_iter()
        .map(|pairs| {
            let (t, a): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
            mae(&t, &a)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepVariable {
    Alpha,
    Threshold,
}

impl SweepVariable {
    pub fn apply(self, config: &FitConfig, value: f64) -> FitConfig {
        let mut config = config.clone();
        match self {
            SweepVariable::Alpha => config.alpha = value,
            SweepVariable::Threshold => config.convergence_threshold = value,
        }
        config
    }
}

impl std::str::FromStr for SweepVariable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "alpha" => Ok(SweepVariable::Alpha),
            "threshold" => Ok(SweepVariable::Threshold),
            other => Err(Error::InvalidParameter(format!("unknown sweep variable `{other}`"))),
        }
    }
}

impl std::fmt::Display for SweepVariable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SweepVariable::Alpha => "alpha",
            SweepVariable::Threshold => "threshold",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub value: f64,
    pub mae: Vec<f64>,
    pub mean_iterations: f64,
    pub ok_records: usize,
    pub failed_records: usize,
    pub records: Vec<EvalRecord>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub variable: SweepVariable,
    pub model_kind: ModelKind,
    pub rows: Vec<SweepRow>,
}

/// Repeat the predictive simulation once per value of `variable`, with the
/// same master seed each time.
pub fn sweep<M: FeatureModel + ?Sized>(
    variable: SweepVariable,
    values: &[f64],
    model: &M,
    configurations: &[ParamVector],
    samples_per_side: usize,
    base: &FitConfig,
    master_seed: Seed,
) -> Result<SweepReport> {
    if values.is_empty() {
        return Err(Error::InvalidParameter("sweep needs at least one value".into()));
    }
    let rows = values
        .iter()
        .map(|&value| {
            let config = variable.apply(base, value);
            let records =
                predictive_simulation(model, configurations, samples_per_side, &config, master_seed);
            sweep_row(value, model.kind(), records)
        })
        .collect();
    Ok(SweepReport { variable, model_kind: model.kind(), rows })
}

pub fn sweep_row(value: f64, kind: ModelKind, records: Vec<EvalRecord>) -> SweepRow {
    let ok = records.iter().filter(|r| r.outcome().is_some()).count();
    SweepRow {
        value,
        mae: mae_by_feature(&records, kind),
        mean_iterations: mean_iterations(&records),
        ok_records: ok,
        failed_records: records.len() - ok,
        records,
    }
}

/// Fit `kind` to an observed graph: reduce it to its largest component,
/// measure, fit, and resample `samples` graphs at the fitted parameters.
pub fn fit_network(
    g: &Graph,
    kind: ModelKind,
    config: &FitConfig,
    samples: usize,
    master_seed: Seed,
) -> Result<EvalRecord> {
    let start = Instant::now();
    let lcc = largest_connected_component(g);
    let target = feature_vector_with_floor(&lcc, kind, config.heterogeneity_floor)?;
    let model = RandomGraphModel::with_config(kind, config);
    let outcome = fit_and_resample(
        &model,
        target,
        samples,
        config,
        master_seed.derive(1),
        master_seed.derive(2),
    )?;
    Ok(EvalRecord {
        index: 0,
        model_kind: kind,
        true_params: None,
        outcome: Ok(outcome),
        wall_time: start.elapsed(),
    })
}

/// [`fit_network`] with the GIRG model.
pub fn fit_real_network(
    g: &Graph,
    config: &FitConfig,
    samples: usize,
    master_seed: Seed,
) -> Result<EvalRecord> {
    fit_network(g, ModelKind::Girg, config, samples, master_seed)
}

/// Fit explicit target features without an underlying graph.
pub fn fit_target(
    target: FeatureVector,
    config: &FitConfig,
    samples: usize,
    master_seed: Seed,
) -> Result<EvalRecord> {
    let start = Instant::now();
    let kind = target.kind();
    let model = RandomGraphModel::with_config(kind, config);
    let outcome = fit_and_resample(
        &model,
        target,
        samples,
        config,
        master_seed.derive(1),
        master_seed.derive(2),
    )?;
    Ok(EvalRecord {
        index: 0,
        model_kind: kind,
        true_params: None,
        outcome: Ok(outcome),
        wall_time: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parfit::IdentityModel;

    fn identity_grid() -> Vec<ParamVector> {
        vec![
            ParamVector::cl(1000.0, 4.0, 2.5),
            ParamVector::cl(2000.0, 6.0, 3.5),
            ParamVector::cl(1500.0, 8.0, 7.0),
        ]
    }

    #[test]
    fn identity_model_records_are_exact() {
        let model = IdentityModel(ModelKind::Cl);
        let records =
            predictive_simulation(&model, &identity_grid(), 3, &FitConfig::default(), Seed(1));
        assert_eq!(records.len(), 3);
        for (i, r) in records.iter().enumerate() {
            assert_eq!(r.index, i);
            let o = r.outcome().unwrap();
            assert!(o.abs_errors.iter().all(|&e| e == 0.0), "{:?}", o.abs_errors);
        }
        let summary = aggregate(&records).unwrap();
        for f in &summary.features {
            assert!((f.pearson - 1.0).abs() < 1e-12);
            assert_eq!(f.mae, 0.0);
        }
    }

    #[test]
    fn single_sample_per_side() {
        let records = predictive_simulation(
            &RandomGraphModel::new(ModelKind::Er),
            &[ParamVector::er(200.0, 4.0)],
            1,
            &FitConfig::default(),
            Seed(3),
        );
        let o = records[0].outcome().unwrap();
        assert_eq!(o.target.len(), 2);
        assert_eq!(o.achieved.len(), 2);
    }

    #[test]
    fn failures_become_error_records() {
        let grid = [ParamVector::er(100.0, 3.0)];
        let records = predictive_simulation(
            &IdentityModel(ModelKind::Er),
            &grid,
            0,
            &FitConfig::default(),
            Seed(0),
        );
        assert!(records[0].error().is_some());
    }

    #[test]
    fn aggregate_requires_two_records() {
        let records = predictive_simulation(
            &IdentityModel(ModelKind::Er),
            &[ParamVector::er(100.0, 3.0)],
            1,
            &FitConfig::default(),
            Seed(0),
        );
        assert!(aggregate(&records).is_err());
    }

    #[test]
    fn sweep_rejects_empty_values() {
        let model = IdentityModel(ModelKind::Cl);
        let err = sweep(
            SweepVariable::Alpha,
            &[],
            &model,
            &identity_grid(),
            1,
            &FitConfig::default(),
            Seed(0),
        );
        assert!(err.is_err());
    }

    #[test]
    fn sweep_variable_applies() {
        let base = FitConfig::default();
        assert_eq!(SweepVariable::Alpha.apply(&base, 0.4).alpha, 0.4);
        assert_eq!(SweepVariable::Threshold.apply(&base, 0.05).convergence_threshold, 0.05);
        assert_eq!("threshold".parse::<SweepVariable>().unwrap(), SweepVariable::Threshold);
    }
}

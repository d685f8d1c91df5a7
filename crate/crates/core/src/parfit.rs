//! Iterative stochastic-approximation fitter.
//!
//! Each iteration samples one graph at the current parameters, measures its
//! features and moves every parameter by the gain-scaled deviation of its
//! feature from the target. Once every feature's deviation has changed sign
//! at least once (or a cap is reached) the iterates are averaged, and the run
//! stops as soon as the running average settles.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::sample_model;
use crate::graph::{feature_vector_with_floor, FeatureVector, DEFAULT_HETEROGENEITY_FLOOR};
use crate::params::{ModelKind, ParamVector};
use crate::rng::Seed;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct FitConfig {
    /// Gain exponent: the step at iteration `i` is scaled by `(i + 1)^-alpha`.
    pub alpha: f64,
    /// Latest iteration at which averaging starts.
    pub sign_change_cap: usize,
    /// Maximum number of averaged iterates.
    pub max_avg_iterations: usize,
    pub convergence_window: usize,
    pub convergence_threshold: f64,
    pub heterogeneity_floor: f64,
    pub initial_temperature: f64,
    pub initial_beta: f64,
    pub relative_change_epsilon: f64,
    /// Optional diagonal scaling of the feature deviations; identity if unset.
    pub scale: Option<Vec<f64>>,
}

impl Default for FitConfig {
    fn default() -> Self {
        Self {
            alpha: 0.0,
            sign_change_cap: 30,
            max_avg_iterations: 200,
            convergence_window: 10,
            convergence_threshold: 0.01,
            heterogeneity_floor: DEFAULT_HETEROGENEITY_FLOOR,
            initial_temperature: 0.5,
            initial_beta: 3.0,
            relative_change_epsilon: 1e-9,
            scale: None,
        }
    }
}

/// Something that maps parameters to one noisy feature observation.
pub trait FeatureModel: Sync {
    fn kind(&self) -> ModelKind;

    fn sample_features(&self, params: &ParamVector, seed: Seed) -> Result<FeatureVector>;
}

/// Sample a graph from the random graph model and measure it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomGraphModel {
    pub kind: ModelKind,
    pub heterogeneity_floor: f64,
}

impl RandomGraphModel {
    pub fn new(kind: ModelKind) -> Self {
        Self { kind, heterogeneity_floor: DEFAULT_HETEROGENEITY_FLOOR }
    }

    pub fn with_config(kind: ModelKind, config: &FitConfig) -> Self {
        Self { kind, heterogeneity_floor: config.heterogeneity_floor }
    }
}

impl FeatureModel for RandomGraphModel {
    fn kind(&self) -> ModelKind {
        self.kind
    }

    fn sample_features(&self, params: &ParamVector, seed: Seed) -> Result<FeatureVector> {
        let graph = sample_model(params, seed)?;
        feature_vector_with_floor(&graph, self.kind, self.heterogeneity_floor)
    }
}

/// Deterministic test model whose features equal its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdentityModel(pub ModelKind);

impl FeatureModel for IdentityModel {
    fn kind(&self) -> ModelKind {
        self.0
    }

    fn sample_features(&self, params: &ParamVector, _seed: Seed) -> Result<FeatureVector> {
        FeatureVector::from_values(self.0, params.values().to_vec())
    }
}

/// Start at the target's vertex count and degree, with the configured
/// initial exponent and temperature.
pub fn init_theta(target: &FeatureVector, kind: ModelKind, config: &FitConfig) -> ParamVector {
    let (n, k) = (target.num_vertices(), target.avg_degree());
    match kind {
        ModelKind::Er => ParamVector::er(n, k),
        ModelKind::Cl => ParamVector::cl(n, k, config.initial_beta),
        ModelKind::Girg => ParamVector::girg(n, k, config.initial_beta, config.initial_temperature),
    }
}

pub fn gain(iteration: usize, alpha: f64) -> f64 {
    if alpha == 0.0 {
        1.0
    } else {
        (iteration as f64 + 1.0).powf(-alpha)
    }
}

/// Per-feature sign-change bookkeeping. Zero deviations are skipped: they
/// neither count as a change nor reset the last seen sign.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignTracker {
    last: Vec<i8>,
    changed: Vec<bool>,
}

impl SignTracker {
    pub fn new(dimension: usize) -> Self {
        Self { last: vec![0; dimension], changed: vec![false; dimension] }
    }

    /// Record one deviation vector; returns whether every feature has changed
    /// sign at least once so far.
    pub fn observe(&mut self, delta: &[f64]) -> bool {
        for ((last, changed), &d) in self.last.iter_mut().zip(&mut self.changed).zip(delta) {
            let sign = if d > 0.0 {
                1
            } else if d < 0.0 {
                -1
            } else {
                continue;
            };
            if *last != 0 && *last != sign {
                *changed = true;
            }
            *last = sign;
        }
        self.all_changed()
    }

    pub fn all_changed(&self) -> bool {
        self.changed.iter().all(|&c| c)
    }

    pub fn changed(&self) -> &[bool] {
        &self.changed
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub theta: ParamVector,
    pub features: FeatureVector,
    pub delta: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitState {
    iteration: usize,
    theta: ParamVector,
    signs: SignTracker,
    averaging_start: Option<usize>,
    stored: Vec<ParamVector>,
    mean_history: Vec<ParamVector>,
    trace: Vec<TraceEntry>,
}

impl FitState {
    pub fn new(theta: ParamVector) -> Self {
        let dimension = theta.kind().dimension();
        Self {
            iteration: 0,
            theta,
            signs: SignTracker::new(dimension),
            averaging_start: None,
            stored: Vec::new(),
            mean_history: Vec::new(),
            trace: Vec::new(),
        }
    }

    /// Index of the next iteration.
    pub fn iteration(&self) -> usize {
        self.iteration
    }

    /// Parameters to sample at the next iteration.
    pub fn theta(&self) -> &ParamVector {
        &self.theta
    }

    pub fn averaging_start(&self) -> Option<usize> {
        self.averaging_start
    }

    pub fn stored(&self) -> &[ParamVector] {
        &self.stored
    }

    pub fn mean_history(&self) -> &[ParamVector] {
        &self.mean_history
    }

    pub fn trace(&self) -> &[TraceEntry] {
        &self.trace
    }

    /// One update `theta <- theta + gain * (target - sample)`.
    ///
    /// If averaging has started by this iteration, the iterate the sample was
    /// drawn at is stored and the running mean is appended to the history.
    pub fn step(
        &mut self,
        sample: &FeatureVector,
        target: &FeatureVector,
        config: &FitConfig,
    ) -> Result<()> {
        let kind = self.theta.kind();
        for len in [sample.len(), target.len()] {
            if len != kind.dimension() {
                return Err(Error::DimensionMismatch {
                    model: kind,
                    expected: kind.dimension(),
                    got: len,
                });
            }
        }
        let i = self.iteration;
        let delta: Vec<f64> =
            target.values().iter().zip(sample.values()).map(|(t, s)| t - s).collect();

        let all_changed = self.signs.observe(&delta);
        if self.averaging_start.is_none() && (all_changed || i >= config.sign_change_cap) {
            self.averaging_start = Some(i.min(config.sign_change_cap));
        }

        let a = gain(i, config.alpha);
        let next: Vec<f64> = self
            .theta
            .values()
            .iter()
            .zip(&delta)
            .enumerate()
            .map(|(p, (theta, d))| {
                let scale = config.scale.as_ref().and_then(|s| s.get(p)).copied().unwrap_or(1.0);
                theta + a * scale * d
            })
            .collect();
        let current = std::mem::replace(&mut self.theta, ParamVector::from_values(kind, next)?);

        if self.averaging_start.is_some() {
            self.stored.push(current.clone());
            self.mean_history.push(mean_params(&self.stored));
        }
        self.trace.push(TraceEntry { theta: current, features: sample.clone(), delta });
        self.iteration += 1;
        Ok(())
    }

    /// Average of the stored iterates.
    pub fn running_mean(&self) -> Result<ParamVector> {
        match self.mean_history.last() {
            Some(mean) => Ok(mean.clone()),
            None => Err(Error::NotYetAveraging {
                iteration: self.iteration,
                start: self.averaging_start.unwrap_or(usize::MAX),
            }),
        }
    }
}

/// Componentwise mean, computed as offsets from the first element so that
/// identical inputs average to themselves exactly.
fn mean_params(params: &[ParamVector]) -> ParamVector {
    let first = params[0].values();
    let mut offsets = vec![0.0; first.len()];
    for p in &params[1..] {
        for ((o, x), x0) in offsets.iter_mut().zip(p.values()).zip(first) {
            *o += x - x0;
        }
    }
    let count = params.len() as f64;
    let values = first.iter().zip(offsets).map(|(x0, o)| x0 + o / count).collect();
    ParamVector::from_values(params[0].kind(), values).expect("same dimension")
}

/// Whether the last `convergence_window` running means changed by less than
/// the relative threshold between every consecutive pair.
pub fn converged(mean_history: &[ParamVector], config: &FitConfig) -> bool {
    let window = config.convergence_window.max(1);
    if mean_history.len() < window {
        return false;
    }
    mean_history[mean_history.len() - window..].windows(2).all(|pair| {
        pair[0].values().iter().zip(pair[1].values()).all(|(prev, cur)| {
            (cur - prev).abs() / prev.abs().max(config.relative_change_epsilon)
                < config.convergence_threshold
        })
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    Converged,
    MaxIterations,
}

impl std::fmt::Display for Termination {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Termination::Converged => "converged",
            Termination::MaxIterations => "max_iterations",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    /// Averaged parameters, clamped to the sampler domain (`n` stays real).
    pub params: ParamVector,
    /// Number of samples drawn.
    pub iterations: usize,
    pub averaging_start: usize,
    pub terminated_by: Termination,
    pub trace: Vec<TraceEntry>,
}

/// Fit `model` to `target`, drawing one sample per iteration from seeds
/// derived from `seed`.
pub fn fit<M: FeatureModel + ?Sized>(
    model: &M,
    target: &FeatureVector,
    config: &FitConfig,
    seed: Seed,
) -> Result<FitResult> {
    let kind = model.kind();
    if target.len() != kind.dimension() {
        return Err(Error::DimensionMismatch {
            model: kind,
            expected: kind.dimension(),
            got: target.len(),
        });
    }
    let mut state = FitState::new(init_theta(target, kind, config));
    let max_avg = config.max_avg_iterations.max(1);
    loop {
        let i = state.iteration();
        let sample = model.sample_features(state.theta(), seed.derive(i as u64))?;
        state.step(&sample, target, config)?;

        if state.stored().is_empty() {
            continue;
        }
        let terminated_by = if converged(state.mean_history(), config) {
            Termination::Converged
        } else if state.stored().len() >= max_avg {
            Termination::MaxIterations
        } else {
            continue;
        };
        return Ok(FitResult {
            params: state.running_mean()?.clamped_for_report(),
            iterations: state.iteration(),
            averaging_start: state.averaging_start().expect("averaging started"),
            terminated_by,
            trace: state.trace,
        });
    }
}

/// [`fit`] against the random graph model of `kind`.
pub fn fit_model(
    kind: ModelKind,
    target: &FeatureVector,
    config: &FitConfig,
    seed: Seed,
) -> Result<FitResult> {
    fit(&RandomGraphModel::with_config(kind, config), target, config, seed)
}

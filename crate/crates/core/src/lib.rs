//! Parameter fitting for random graph models.
//!
//! Samplers for Erdős–Rényi, Chung–Lu and geometric inhomogeneous random
//! graphs, graph features, a stochastic-approximation fitter that matches
//! model parameters to observed features, and an evaluation harness.

// `!(x > 0.0)` is used on purpose so that NaN is rejected
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod io;
pub mod params;
pub mod parfit;
pub mod report;
pub mod rng;

pub use error::{Error, Result};
pub use generators::{sample_model, sample_model_raw, WeightSequence};
pub use graph::{feature_vector, largest_connected_component, FeatureVector, Graph, VertexId};
pub use harness::{
    aggregate, fit_network, fit_real_network, fit_target, predictive_simulation, sweep,
    EvalOutcome, EvalRecord, GridKind, Summary, SweepReport, SweepVariable,
};
pub use params::{ModelKind, ParamVector};
pub use parfit::{fit, fit_model, FeatureModel, FitConfig, FitResult, RandomGraphModel, Termination};
pub use rng::Seed;

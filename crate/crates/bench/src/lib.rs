//! Shared benchmark settings and inputs.

use std::time::Duration;

use criterion::Criterion;
use parfit_core::{sample_model, Graph, ParamVector, Seed};

pub fn default_config() -> Criterion {
    Criterion::default()
        .without_plots()
        .warm_up_time(Duration::from_secs(1))
        .measurement_time(Duration::from_secs(5))
        .sample_size(20)
}

pub fn girg_fixture(n: f64) -> Graph {
    sample_model(&ParamVector::girg(n, 8.0, 2.5, 0.5), Seed(1)).expect("valid parameters")
}

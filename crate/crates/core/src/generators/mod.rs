//! Samplers for the Erdős–Rényi, power-law Chung–Lu and GIRG models.
//!
//! Each `sample_*` function draws a graph and reduces it to its largest
//! connected component; the `*_raw` variants return the graph before that
//! reduction. All samplers are deterministic in `(params, seed)`.

mod chung_lu;
mod erdos_renyi;
mod girg;

pub use chung_lu::{cl_weights, sample_cl, sample_cl_raw};
pub use erdos_renyi::{sample_er, sample_er_raw};
pub use girg::{
    calibrate_girg_c, calibrate_girg_scale, expected_edge_count, girg_weights, GirgConstant,
    pair_edge_expectation, pareto_weight, sample_girg, sample_girg_raw, torus_distance,
};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::params::{ModelKind, ParamVector};
use crate::rng::Seed;

/// Positive per-vertex weights and their total.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSequence {
    weights: Vec<f64>,
    total: f64,
}

impl WeightSequence {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.iter().any(|&w| !(w > 0.0 && w.is_finite())) {
            return Err(Error::InvalidParameter("weights must be positive and finite".into()));
        }
        let total = weights.iter().sum();
        Ok(Self { weights, total })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn total(&self) -> f64 {
        self.total
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// Clamp, round `n`, and sample the model; returns the largest component.
pub fn sample_model(params: &ParamVector, seed: Seed) -> Result<Graph> {
    let params = params.clamped();
    match params.kind() {
        ModelKind::Er => sample_er(&params, seed),
        ModelKind::Cl => sample_cl(&params, seed),
        ModelKind::Girg => sample_girg(&params, seed),
    }
}

/// Like [`sample_model`] but without the largest-component reduction.
pub fn sample_model_raw(params: &ParamVector, seed: Seed) -> Result<Graph> {
    let params = params.clamped();
    match params.kind() {
        ModelKind::Er => sample_er_raw(&params, seed),
        ModelKind::Cl => sample_cl_raw(&params, seed),
        ModelKind::Girg => sample_girg_raw(&params, seed),
    }
}

fn expect_kind(params: &ParamVector, kind: ModelKind) -> Result<()> {
    if params.kind() != kind {
        return Err(Error::InvalidParameter(format!(
            "expected {kind} parameters, got {}",
            params.kind()
        )));
    }
    params.validate()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_model_clamps_before_dispatch() {
        // n = 2.4 rounds to 2; k = 1 then forces the single edge
        let g = sample_model(&ParamVector::er(2.4, 1.0), Seed(3)).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 1));

        let g = sample_model(&ParamVector::girg(50.0, 4.0, 3.0, 1.3), Seed(3)).unwrap();
        let direct = sample_girg(&ParamVector::girg(50.0, 4.0, 3.0, 0.999), Seed(3)).unwrap();
        assert_eq!(g, direct);

        let g = sample_model(&ParamVector::cl(80.0, 4.0, 1.5), Seed(9)).unwrap();
        let direct = sample_cl(&ParamVector::cl(80.0, 4.0, 2.01), Seed(9)).unwrap();
        assert_eq!(g, direct);
    }

    #[test]
    fn samplers_are_deterministic() {
        for params in [
            ParamVector::er(300.0, 3.0),
            ParamVector::cl(300.0, 3.0, 2.5),
            ParamVector::girg(300.0, 3.0, 2.5, 0.5),
        ] {
            let a = sample_model(&params, Seed(11)).unwrap();
            let b = sample_model(&params, Seed(11)).unwrap();
            assert_eq!(a, b, "{params}");
            let c = sample_model(&params, Seed(12)).unwrap();
            assert_ne!(a, c, "{params}");
        }
    }

    #[test]
    fn kind_mismatch_rejected() {
        assert!(sample_er(&ParamVector::cl(10.0, 2.0, 3.0), Seed(0)).is_err());
        assert!(sample_girg(&ParamVector::girg(10.0, 2.0, 3.0, 1.5), Seed(0)).is_err());
    }

    #[test]
    fn weight_sequence_rejects_nonpositive() {
        assert!(WeightSequence::new(vec![1.0, 0.0]).is_err());
        assert_eq!(WeightSequence::new(vec![1.0, 2.5]).unwrap().total(), 3.5);
    }
}

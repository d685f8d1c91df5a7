use rand::Rng;

use super::{expect_kind, WeightSequence};
use crate::error::{Error, Result};
use crate::graph::{largest_connected_component, Graph, VertexId};
use crate::params::{ModelKind, ParamVector};
use crate::rng::Seed;

/// Deterministic power-law weights `w_i = c * i^(-1/(beta-1))`, `i = 1..=n`,
/// scaled so that the total weight is `k * n`.
pub fn cl_weights(n: usize, k: f64, beta: f64) -> Result<WeightSequence> {
    if n < 2 || !(k > 0.0) || !(beta > 2.0) {
        return Err(Error::InvalidParameter(format!(
            "Chung-Lu weights need n >= 2, k > 0, beta > 2 (got n={n}, k={k}, beta={beta})"
        )));
    }
    let exponent = -1.0 / (beta - 1.0);
    let raw: Vec<f64> = (1..=n).map(|i| (i as f64).powf(exponent)).collect();
    let c = k * n as f64 / raw.iter().sum::<f64>();
    WeightSequence::new(raw.into_iter().map(|w| c * w).collect())
}

/// Chung–Lu graph with `p(u, v) = min(1, w_u w_v / W)`, reduced to its
/// largest component.
pub fn sample_cl(params: &ParamVector, seed: Seed) -> Result<Graph> {
    Ok(largest_connected_component(&sample_cl_raw(params, seed)?))
}

pub fn sample_cl_raw(params: &ParamVector, seed: Seed) -> Result<Graph> {
    expect_kind(params, ModelKind::Cl)?;
    let n = params.vertex_count();
    let weights = cl_weights(n, params.k(), params.beta().unwrap_or(f64::NAN))?;
    let edges = chung_lu_edges(&weights, &mut seed.rng());
    Ok(Graph::from_unique_edges(n, &edges))
}

/// Exact independent-edge sampling for weights sorted in non-increasing
/// order. For a fixed `u` the probabilities `p(u, v)`, `v > u`, are
/// non-increasing, so candidates are drawn by geometric skipping with the
/// last probability as an upper bound and thinned by rejection.
pub(crate) fn chung_lu_edges<R: Rng>(
    weights: &WeightSequence,
    rng: &mut R,
) -> Vec<(VertexId, VertexId)> {
    let w = weights.weights();
    debug_assert!(w.windows(2).all(|p| p[0] >= p[1]));
    let n = w.len();
    let total = weights.total();
    let mut edges = Vec::new();
    for u in 0..n.saturating_sub(1) {
        let mut v = u + 1;
        let mut p = (w[u] * w[v] / total).min(1.0);
        while v < n && p > 0.0 {
            if p < 1.0 {
                let r: f64 = rng.random();
                let skip = ((-r).ln_1p() / (-p).ln_1p()).floor();
                if skip >= (n - v) as f64 {
                    break;
                }
                v += skip as usize;
            }
            let q = (w[u] * w[v] / total).min(1.0);
            let r: f64 = rng.random();
            if r < q / p {
                edges.push((u as VertexId, v as VertexId));
            }
            p = q;
            v += 1;
        }
    }
    edges
}

use rand::Rng;

use super::expect_kind;
use crate::error::Result;
use crate::graph::{largest_connected_component, Graph, VertexId};
use crate::params::{ModelKind, ParamVector};
use crate::rng::Seed;

/// G(n, p) with `p = k / (n - 1)`, reduced to its largest component.
pub fn sample_er(params: &ParamVector, seed: Seed) -> Result<Graph> {
    Ok(largest_connected_component(&sample_er_raw(params, seed)?))
}

pub fn sample_er_raw(params: &ParamVector, seed: Seed) -> Result<Graph> {
    expect_kind(params, ModelKind::Er)?;
    let n = params.vertex_count();
    let p = (params.k() / (n - 1) as f64).min(1.0);
    let edges = gnp_edges(n, p, &mut seed.rng());
    Ok(Graph::from_unique_edges(n, &edges))
}

/// Geometric skipping over the pairs `(w, v)`, `w < v`, in the order
/// `(0,1), (0,2), (1,2), (0,3), ...`.
pub(crate) fn gnp_edges<R: Rng>(n: usize, p: f64, rng: &mut R) -> Vec<(VertexId, VertexId)> {
    let mut edges = Vec::new();
    if n < 2 || p <= 0.0 {
        return edges;
    }
    if p >= 1.0 {
        for v in 1..n as VertexId {
            edges.extend((0..v).map(|w| (w, v)));
        }
        return edges;
    }
    let pairs = (n as u64) * (n as u64 - 1) / 2;
    edges.reserve((pairs as f64 * p * 1.1) as usize);
    let log_q = (-p).ln_1p();
    let mut v: u64 = 1;
    let mut w: u64 = 0;
    let mut first = true;
    loop {
        let u: f64 = rng.random();
        let skip = ((-u).ln_1p() / log_q).floor();
        if skip >= pairs as f64 {
            break;
        }
        // advance by `skip` non-edges plus one step to the next candidate
        let step = skip as u64 + if first { 0 } else { 1 };
        first = false;
        w += step;
        while w >= v {
            w -= v;
            v += 1;
            if v >= n as u64 {
                return edges;
            }
        }
        edges.push((w as VertexId, v as VertexId));
    }
    edges
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::feature_vector;

    #[test]
    fn two_vertices_one_edge() {
        let g = sample_er(&ParamVector::er(2.0, 1.0), Seed(0)).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 1));
    }

    #[test]
    fn skipping_covers_every_pair_exactly_once() {
        // p close to 1: every pair visited in order, no duplicates
        let edges = gnp_edges(40, 0.999_999, &mut Seed(1).rng());
        assert_eq!(edges.len(), 40 * 39 / 2);
        let mut sorted = edges.clone();
        sorted.sort_by_key(|&(w, v)| (v, w));
        sorted.dedup();
        assert_eq!(sorted.len(), edges.len());
        assert!(edges.iter().all(|&(w, v)| w < v && v < 40));
    }

    #[test]
    fn dense_er_is_connected() {
        let mut total = 0.0;
        for s in 0..50 {
            let g = sample_er(&ParamVector::er(1000.0, 20.0), Seed(s)).unwrap();
            total += feature_vector(&g, ModelKind::Er).unwrap().num_vertices();
        }
        assert!((total / 50.0 - 1000.0).abs() <= 1.0);
    }
}

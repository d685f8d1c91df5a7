use serde::{Deserialize, Serialize};

use super::{Graph, VertexId};
use crate::error::{Error, Result};
use crate::params::ModelKind;

/// Heterogeneity reported for regular graphs, where the coefficient of
/// variation is zero and its logarithm diverges.
pub const DEFAULT_HETEROGENEITY_FLOOR: f64 = -10.0;

/// Measured features aligned one-to-one with a model's parameters.
///
/// Values are stored in fitting orientation: `(vertices, degree,
/// -heterogeneity, -clustering)`, truncated to the model's dimension, so
/// that every feature grows with its parameter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    kind: ModelKind,
    values: Vec<f64>,
}

impl FeatureVector {
    pub fn from_values(kind: ModelKind, values: Vec<f64>) -> Result<Self> {
        if values.len() != kind.dimension() {
            return Err(Error::DimensionMismatch {
                model: kind,
                expected: kind.dimension(),
                got: values.len(),
            });
        }
        Ok(Self { kind, values })
    }

    /// Build from natural-sign measurements (heterogeneity and clustering as
    /// measured, not negated).
    pub fn from_natural(kind: ModelKind, natural: &[f64]) -> Result<Self> {
        let values = natural
            .iter()
            .enumerate()
            .map(|(i, &v)| if i >= 2 { -v } else { v })
            .collect();
        Self::from_values(kind, values)
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn num_vertices(&self) -> f64 {
        self.values[0]
    }

    pub fn avg_degree(&self) -> f64 {
        self.values[1]
    }

    /// Heterogeneity with its natural sign.
    pub fn heterogeneity(&self) -> Option<f64> {
        self.values.get(2).map(|v| -v)
    }

    /// Average local clustering with its natural sign.
    pub fn clustering(&self) -> Option<f64> {
        self.values.get(3).map(|v| -v)
    }

    /// Values with heterogeneity and clustering un-negated.
    pub fn natural(&self) -> Vec<f64> {
        self.values
            .iter()
            .enumerate()
            .map(|(i, &v)| if i >= 2 { -v } else { v })
            .collect()
    }

    /// Componentwise mean, `None` for an empty input. Accumulates offsets
    /// from the first vector so identical inputs average to themselves.
    pub fn mean<'a, I>(vectors: I) -> Option<FeatureVector>
    where
        I: IntoIterator<Item = &'a FeatureVector>,
    {
        let mut iter = vectors.into_iter();
        let first = iter.next()?;
        let mut offsets = vec![0.0; first.len()];
        let mut count = 1usize;
        for v in iter {
            assert_eq!(v.kind, first.kind, "cannot average features of different models");
            for ((o, x), x0) in offsets.iter_mut().zip(&v.values).zip(&first.values) {
                *o += x - x0;
            }
            count += 1;
        }
        let values =
            first.values.iter().zip(offsets).map(|(x0, o)| x0 + o / count as f64).collect();
        Some(FeatureVector { kind: first.kind, values })
    }
}

pub fn num_vertices(g: &Graph) -> f64 {
    g.vertex_count() as f64
}

pub fn average_degree(g: &Graph) -> Result<f64> {
    if g.is_empty() {
        return Err(Error::Domain("average degree of an empty graph"));
    }
    Ok(2.0 * g.edge_count() as f64 / g.vertex_count() as f64)
}

pub fn heterogeneity(g: &Graph) -> Result<f64> {
    heterogeneity_with_floor(g, DEFAULT_HETEROGENEITY_FLOOR)
}

/// `log10(sigma / mu)` of the degree sequence, population standard deviation.
/// Regular graphs yield `floor`.
pub fn heterogeneity_with_floor(g: &Graph, floor: f64) -> Result<f64> {
    if g.is_empty() {
        return Err(Error::Domain("heterogeneity of an empty graph"));
    }
    let n = g.vertex_count() as u128;
    let (sum, sum_sq) = g.degrees().fold((0u128, 0u128), |(s, q), d| {
        let d = d as u128;
        (s + d, q + d * d)
    });
    if sum == 0 {
        return Err(Error::Domain("heterogeneity of an edgeless graph"));
    }
    // sigma / mu = sqrt(n * sum_sq - sum^2) / sum, exact in integers up to the sqrt
    let spread = n * sum_sq - sum * sum;
    if spread == 0 {
        return Ok(floor);
    }
    Ok(((spread as f64).sqrt() / sum as f64).log10())
}

/// Number of triangles through each vertex.
pub fn local_triangle_counts(g: &Graph) -> Vec<u64> {
    let n = g.vertex_count();
    let rank = |v: VertexId| (g.degree(v), v);

    // orient every edge towards the endpoint of higher (degree, id) rank
    let mut out_offsets = Vec::with_capacity(n + 1);
    out_offsets.push(0usize);
    let mut out = Vec::with_capacity(g.edge_count());
    for u in 0..n as VertexId {
        out.extend(g.neighbors(u).iter().copied().filter(|&v| rank(v) > rank(u)));
        out_offsets.push(out.len());
    }
    let forward = |v: VertexId| &out[out_offsets[v as usize]..out_offsets[v as usize + 1]];

    let mut triangles = vec![0u64; n];
    let mut mark = vec![VertexId::MAX; n];
    for u in 0..n as VertexId {
        for &v in forward(u) {
            mark[v as usize] = u;
        }
        for &v in forward(u) {
            for &w in forward(v) {
                if mark[w as usize] == u {
                    triangles[u as usize] += 1;
                    triangles[v as usize] += 1;
                    triangles[w as usize] += 1;
                }
            }
        }
    }
    triangles
}

/// Mean local clustering coefficient; vertices of degree below 2 count as 0.
pub fn avg_local_clustering(g: &Graph) -> Result<f64> {
    if g.is_empty() {
        return Err(Error::Domain("clustering of an empty graph"));
    }
    let triangles = local_triangle_counts(g);
    let total: f64 = triangles
        .iter()
        .zip(g.degrees())
        .filter(|&(_, d)| d >= 2)
        .map(|(&t, d)| t as f64 / (d * (d - 1) / 2) as f64)
        .sum();
    Ok(total / g.vertex_count() as f64)
}

pub fn feature_vector(g: &Graph, kind: ModelKind) -> Result<FeatureVector> {
    feature_vector_with_floor(g, kind, DEFAULT_HETEROGENEITY_FLOOR)
}

pub fn feature_vector_with_floor(g: &Graph, kind: ModelKind, floor: f64) -> Result<FeatureVector> {
    let mut values = vec![num_vertices(g), average_degree(g)?];
    if kind.dimension() >= 3 {
        values.push(-heterogeneity_with_floor(g, floor)?);
    }
    if kind.dimension() >= 4 {
        values.push(-avg_local_clustering(g)?);
    }
    FeatureVector::from_values(kind, values)
}

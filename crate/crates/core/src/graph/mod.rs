//! Undirected simple graphs and the measurable features used for fitting.

mod components;
mod features;

pub use components::largest_connected_component;
pub use features::{
    average_degree, avg_local_clustering, feature_vector, feature_vector_with_floor,
    heterogeneity, heterogeneity_with_floor, local_triangle_counts, num_vertices, FeatureVector,
    DEFAULT_HETEROGENEITY_FLOOR,
};

use crate::error::{Error, Result};

pub type VertexId = u32;

/// Undirected simple graph in compressed adjacency form.
///
/// Vertex ids are `0..vertex_count`; every neighbor list is sorted.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<VertexId>,
}

impl Graph {
    pub fn empty(vertex_count: usize) -> Self {
        Self { offsets: vec![0; vertex_count + 1], neighbors: Vec::new() }
    }

    /// Build from an edge list, rejecting self-loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges<I>(vertex_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let edges: Vec<_> = edges.into_iter().collect();
        for &(u, v) in &edges {
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            if u as usize >= vertex_count || v as usize >= vertex_count {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) out of range for {vertex_count} vertices"
                )));
            }
        }
        let graph = Self::from_unique_edges(vertex_count, &edges);
        for v in 0..vertex_count as VertexId {
            if graph.neighbors(v).windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph(format!("duplicate edge at vertex {v}")));
            }
        }
        Ok(graph)
    }

    /// Build from edges already known to be valid and free of duplicates.
    pub(crate) fn from_unique_edges(vertex_count: usize, edges: &[(VertexId, VertexId)]) -> Self {
        let mut degree = vec![0usize; vertex_count];
        for &(u, v) in edges {
            debug_assert!(u != v);
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(vertex_count + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..vertex_count].to_vec();
        let mut neighbors = vec![0; 2 * edges.len()];
        for &(u, v) in edges {
            neighbors[cursor[u as usize]] = v;
            cursor[u as usize] += 1;
            neighbors[cursor[v as usize]] = u;
            cursor[v as usize] += 1;
        }
        for v in 0..vertex_count {
            neighbors[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        Self { offsets, neighbors }
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.vertex_count() == 0
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        let v = v as usize;
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.offsets.windows(2).map(|w| w[1] - w[0])
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        (0..self.vertex_count() as VertexId).flat_map(move |u| {
            self.neighbors(u).iter().filter(move |&&v| v > u).map(move |&v| (u, v))
        })
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn complete(n: u32) -> Graph {
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Graph::from_edges(n as usize, edges).unwrap()
    }

    pub fn path(n: u32) -> Graph {
        Graph::from_edges(n as usize, (1..n).map(|v| (v - 1, v))).unwrap()
    }

    pub fn cycle(n: u32) -> Graph {
        Graph::from_edges(n as usize, (0..n).map(|v| (v, (v + 1) % n))).unwrap()
    }

    pub fn star(leaves: u32) -> Graph {
        Graph::from_edges(leaves as usize + 1, (1..=leaves).map(|v| (0, v))).unwrap()
    }
}

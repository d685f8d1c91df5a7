//! Brute-force reference implementations used as test oracles.
#![allow(dead_code)]

use parfit_core::Graph;
use rand::Rng;
use rand_xoshiro::rand_core::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;

/// Dense adjacency matrix.
#[derive(Debug, Clone)]
pub struct Dense {
    pub n: usize,
    pub adj: Vec<Vec<bool>>,
}

impl Dense {
    pub fn new(n: usize) -> Self {
        Self { n, adj: vec![vec![false; n]; n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut d = Self::new(n);
        for &(u, v) in edges {
            d.adj[u][v] = true;
            d.adj[v][u] = true;
        }
        d
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.adj[u][v] {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].iter().filter(|&&b| b).count()
    }

    pub fn to_graph(&self) -> Graph {
        Graph::from_edges(self.n, self.edges().into_iter().map(|(u, v)| (u as u32, v as u32)))
            .unwrap()
    }
}

pub fn random_dense(n: usize, p: f64, seed: u64) -> Dense {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    let mut d = Dense::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < p {
                d.adj[u][v] = true;
                d.adj[v][u] = true;
            }
        }
    }
    d
}

/// Graph number `mask` among all labelled graphs on `n` vertices.
pub fn graph_from_mask(n: usize, mask: u64) -> Dense {
    let mut d = Dense::new(n);
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> bit & 1 == 1 {
                d.adj[u][v] = true;
                d.adj[v][u] = true;
            }
            bit += 1;
        }
    }
    d
}

pub fn avg_degree(d: &Dense) -> f64 {
    (0..d.n).map(|v| d.degree(v)).sum::<usize>() as f64 / d.n as f64
}

/// Local clustering by checking every neighbour pair.
pub fn clustering(d: &Dense) -> f64 {
    let mut total = 0.0;
    for v in 0..d.n {
        let nb: Vec<usize> = (0..d.n).filter(|&u| d.adj[v][u]).collect();
        if nb.len() < 2 {
            continue;
        }
        let mut closed = 0usize;
        let mut pairs = 0usize;
        for i in 0..nb.len() {
            for j in i + 1..nb.len() {
                pairs += 1;
                closed += d.adj[nb[i]][nb[j]] as usize;
            }
        }
        total += closed as f64 / pairs as f64;
    }
    total / d.n as f64
}

/// `log10(sigma / mu)` via the pairwise-difference form of the variance,
/// `n^2 sigma^2 = sum_{i<j} (d_i - d_j)^2`.
pub fn heterogeneity(d: &Dense, floor: f64) -> Option<f64> {
    let deg: Vec<i64> = (0..d.n).map(|v| d.degree(v) as i64).collect();
    let sum: i64 = deg.iter().sum();
    if sum == 0 {
        return None;
    }
    let mut spread = 0i64;
    for i in 0..deg.len() {
        for j in i + 1..deg.len() {
            spread += (deg[i] - deg[j]).pow(2);
        }
    }
    if spread == 0 {
        return Some(floor);
    }
    Some(((spread as f64).sqrt() / sum as f64).log10())
}

/// Largest component by repeated BFS, ties to the component holding the
/// smallest vertex; returns its vertices ascending and the relabelled edges.
pub fn lcc(d: &Dense) -> (Vec<usize>, Vec<(usize, usize)>) {
    let mut comp = vec![usize::MAX; d.n];
    let mut best: Vec<usize> = Vec::new();
    for s in 0..d.n {
        if comp[s] != usize::MAX {
            continue;
        }
        let mut members = vec![s];
        comp[s] = s;
        let mut head = 0;
        while head < members.len() {
            let u = members[head];
            head += 1;
            for (v, &linked) in d.adj[u].iter().enumerate() {
                if linked && comp[v] == usize::MAX {
                    comp[v] = s;
                    members.push(v);
                }
            }
        }
        if members.len() > best.len() {
            members.sort_unstable();
            best = members;
        }
    }
    let index = |v: usize| best.binary_search(&v).unwrap();
    let edges = d
        .edges()
        .into_iter()
        .filter(|&(u, v)| comp[u] == comp[best[0]] && comp[v] == comp[best[0]])
        .map(|(u, v)| (index(u), index(v)))
        .collect();
    (best, edges)
}

/// Textbook G(n, p): one coin per pair.
pub fn naive_gnp(n: usize, p: f64, seed: u64) -> Dense {
    random_dense(n, p, seed)
}

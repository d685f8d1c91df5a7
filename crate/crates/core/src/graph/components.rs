use super::{Graph, VertexId};

struct DisjointSets {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        Self { parent: (0..n as u32).collect(), size: vec![1; n] }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let grandparent = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = grandparent;
            x = grandparent;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a as usize] < self.size[b as usize] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b as usize] = a;
        self.size[a as usize] += self.size[b as usize];
    }
}

/// Induced subgraph on the largest connected component.
///
/// Vertices are relabeled to `0..size` in increasing order of their original
/// ids. Among equally large components the one holding the smallest vertex id
/// wins.
pub fn largest_connected_component(g: &Graph) -> Graph {
    let n = g.vertex_count();
    if n == 0 {
        return Graph::empty(0);
    }
    let mut sets = DisjointSets::new(n);
    for (u, v) in g.edges() {
        sets.union(u, v);
    }

    let mut best_root = sets.find(0);
    for v in 1..n as u32 {
        let root = sets.find(v);
        if sets.size[root as usize] > sets.size[best_root as usize] {
            best_root = root;
        }
    }
    if sets.size[best_root as usize] as usize == n {
        return g.clone();
    }

    let mut relabel = vec![VertexId::MAX; n];
    let mut next = 0;
    for v in 0..n as u32 {
        if sets.find(v) == best_root {
            relabel[v as usize] = next;
            next += 1;
        }
    }
    let edges: Vec<_> = g
        .edges()
        .filter(|&(u, _)| relabel[u as usize] != VertexId::MAX)
        .map(|(u, v)| (relabel[u as usize], relabel[v as usize]))
        .collect();
    Graph::from_unique_edges(next as usize, &edges)
}

//! Simple undirected graphs with dense vertex ids.

mod paths;
mod planar;
mod text;

use std::collections::BTreeSet;

use thiserror::Error;

pub use paths::{path_structure, smooth, straight_paths, PathStructure, Smoothed, StraightPath};
pub use planar::{faces, is_planar, planar_embedding, validate_rotation, Rotation};
pub use text::{format_graph, parse_graph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {v} out of range for a graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("component containing vertex {0} is a cycle of degree-2 vertices")]
    CycleComponent(usize),
    #[error("smoothing would create a loop or parallel edge at {{{0}, {1}}}")]
    MultiEdgeCollapse(usize, usize),
    #[error("vertex {0} does not have degree 2")]
    NotDegreeTwo(usize),
    #[error("rotation system is not a planar embedding: {0}")]
    BadRotation(String),
}

/// A simple undirected graph on vertices `0..n` with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

/// Vertex counts by degree class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DegreeProfile {
    pub isolated: usize,
    pub deg1: usize,
    pub deg2: usize,
    pub deg3plus: usize,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], m: 0 }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert(u, v);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::new(n);
        for v in 1..n {
            g.insert(v - 1, v);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.insert(0, n - 1);
        }
        g
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Graph::new(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.insert(u, v);
            }
        }
        g
    }

    /// The `rows × cols` grid graph, vertex `(r, c)` having id `r * cols + c`.
    pub fn grid(rows: usize, cols: usize) -> Self {
        let mut g = Graph::new(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let v = r * cols + c;
                if c + 1 < cols {
                    g.insert(v, v + 1);
                }
                if r + 1 < rows {
                    g.insert(v, v + cols);
                }
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.n();
        for x in [u, v] {
            if x >= n {
                return Err(GraphError::VertexOutOfRange { v: x, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.has_edge(u, v) {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.insert(u, v);
        Ok(())
    }

    fn insert(&mut self, u: usize, v: usize) {
        let pu = self.adj[u].binary_search(&v).unwrap_err();
        self.adj[u].insert(pu, v);
        let pv = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(pv, u);
        self.m += 1;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        match self.adj[u].binary_search(&v) {
            Ok(pu) => {
                self.adj[u].remove(pu);
                let pv = self.adj[v].binary_search(&u).unwrap();
                self.adj[v].remove(pv);
                self.m -= 1;
                true
            }
            Err(_) => false,
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let mut p = DegreeProfile::default();
        for nb in &self.adj {
            match nb.len() {
                0 => p.isolated += 1,
                1 => p.deg1 += 1,
                2 => p.deg2 += 1,
                _ => p.deg3plus += 1,
            }
        }
        p
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Subgraph induced by `keep`; vertex `keep[i]` becomes `i`.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut map = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            map[v] = i;
        }
        let mut g = Graph::new(keep.len());
        for (i, &v) in keep.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = map[w];
                if j != usize::MAX && i < j {
                    g.insert(i, j);
                }
            }
        }
        g
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let mut g = self.clone();
        g.adj.extend(other.adj.iter().map(|nb| nb.iter().map(|&w| w + off).collect()));
        g.m += other.m;
        g
    }

    /// True iff every component is a path (isolated vertices included).
    pub fn is_linear_forest(&self) -> bool {
        self.max_degree() <= 2 && self.is_forest()
    }

    /// True iff the subgraph induced by `w` is a linear forest.
    pub fn is_linear_forest_on(&self, w: &[usize]) -> bool {
        self.induced(w).is_linear_forest()
    }

    pub fn is_forest(&self) -> bool {
        self.m + self.components().len() == self.n()
    }

    /// Same graph with vertices renamed by `perm` (old `v` becomes `perm[v]`).
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::new(self.n());
        for (u, v) in self.edges() {
            g.insert(perm[u], perm[v]);
        }
        g
    }

    pub fn is_independent(&self, set: &BTreeSet<usize>) -> bool {
        set.iter().all(|&u| self.adj[u].iter().all(|w| !set.contains(w)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_and_duplicates() {
        let mut g = Graph::new(3);
        g.add_edge(0, 1).unwrap();
        assert_eq!(g.add_edge(1, 0), Err(GraphError::DuplicateEdge(0, 1)));
        assert_eq!(g.add_edge(2, 2), Err(GraphError::SelfLoop(2)));
        assert!(matches!(g.add_edge(0, 5), Err(GraphError::VertexOutOfRange { .. })));
    }

    #[test]
    fn degree_profile_of_star() {
        let g = Graph::complete_bipartite(1, 4);
        let p = g.degree_profile();
        assert_eq!((p.isolated, p.deg1, p.deg2, p.deg3plus), (0, 4, 0, 1));
    }

    #[test]
    fn linear_forest() {
        assert!(Graph::path(5).is_linear_forest());
        assert!(Graph::new(3).is_linear_forest());
        assert!(!Graph::cycle(4).is_linear_forest());
        assert!(!Graph::complete_bipartite(1, 3).is_linear_forest());
    }

    #[test]
    fn grid_counts() {
        let g = Graph::grid(3, 4);
        assert_eq!((g.n(), g.m()), (12, 17));
    }
}

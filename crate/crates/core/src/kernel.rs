//! Polynomial kernel for the line cover number.
//!
//! In a drawing on `k` lines every vertex of degree at least three sits on a
//! crossing, so there are at most `C(k,2)` of them; every line carries a
//! linear forest, bounding the number of degree-1 vertices and of straight
//! paths by `2(k² − k)`; and a straight path with more than `C(k,2)` interior
//! vertices has one that is not at a crossing, hence can be shortened.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::{path_structure, Graph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KernelError {
    #[error("k must be at least 1, got {0}")]
    InvalidK(usize),
    #[error("dimension must be 2 or 3, got {0}")]
    InvalidDimension(usize),
}

/// Why a graph was rejected before any search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rejection {
    HighDegree { count: usize, bound: usize },
    Leaves { count: usize, bound: usize },
    StraightPaths { count: usize, bound: usize },
    /// Vertices of degree ≥ 3 plus the bends forced by cycles need more
    /// crossings than `k` lines have.
    Crossings { needed: usize, bound: usize },
}

impl std::fmt::Display for Rejection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Rejection::HighDegree { count, bound } => {
                write!(f, "{count} vertices of degree at least 3 exceed the bound {bound}")
            }
            Rejection::Leaves { count, bound } => write!(f, "{count} vertices of degree 1 exceed the bound {bound}"),
            Rejection::StraightPaths { count, bound } => {
                write!(f, "{count} straight paths exceed the bound {bound}")
            }
            Rejection::Crossings { needed, bound } => {
                write!(f, "{needed} vertices must sit on crossings but only {bound} crossings exist")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Reduced,
    RejectedByCounts(Rejection),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelResult {
    pub h: Graph,
    pub verdict: Verdict,
    /// Original vertex of every kernel vertex (empty after a rejection).
    pub origin: Vec<usize>,
    /// For kernel edges `(a, b)`, `a < b`, that replace removed vertices: those
    /// vertices of the input in order from `a` to `b`.
    pub runs: BTreeMap<(usize, usize), Vec<usize>>,
    /// Path components of the input, dropped before reduction.
    pub dropped_paths: Vec<Vec<usize>>,
}

impl KernelResult {
    pub fn is_rejected(&self) -> bool {
        matches!(self.verdict, Verdict::RejectedByCounts(_))
    }
}

pub fn binom2(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

/// Bound on the number of vertices (and of edges) of a reduced kernel.
pub fn size_bound(k: usize) -> usize {
    binom2(k) * (2 * k * k + 1) + 4 * k * k
}

/// Vertex sequence of a path component, starting at its smaller end.
pub(crate) fn path_order(g: &Graph, comp: &[usize]) -> Vec<usize> {
    let start = comp.iter().copied().find(|&v| g.degree(v) <= 1).unwrap();
    let mut out = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&next) = g.neighbors(cur).iter().find(|&&w| w != prev) {
        out.push(next);
        prev = cur;
        cur = next;
    }
    if out.last() < out.first() {
        out.reverse();
    }
    out
}

pub fn kernelize(g: &Graph, k: usize, d: usize) -> Result<KernelResult, KernelError> {
    if k < 1 {
        return Err(KernelError::InvalidK(k));
    }
    if d != 2 && d != 3 {
        return Err(KernelError::InvalidDimension(d));
    }
    let mut keep = vec![true; g.n()];
    let mut dropped_paths = Vec::new();
    for comp in g.components() {
        let edges: usize = comp.iter().map(|&v| g.degree(v)).sum::<usize>() / 2;
        if edges + 1 == comp.len() && comp.iter().all(|&v| g.degree(v) <= 2) {
            for &v in &comp {
                keep[v] = false;
            }
            dropped_paths.push(path_order(g, &comp));
        }
    }
    let reject = |r: Rejection| {
        Ok(KernelResult {
            h: Graph::complete_bipartite(1, 2 * k + 1),
            verdict: Verdict::RejectedByCounts(r),
            origin: Vec::new(),
            runs: BTreeMap::new(),
            dropped_paths: Vec::new(),
        })
    };
    let rest: Vec<usize> = (0..g.n()).filter(|&v| keep[v]).collect();
    let r = g.induced(&rest);
    let c = binom2(k);
    let leaf_bound = 2 * (k * k - k);
    let prof = r.degree_profile();
    if prof.deg3plus > c {
        return reject(Rejection::HighDegree { count: prof.deg3plus, bound: c });
    }
    if prof.deg1 > leaf_bound {
        return reject(Rejection::Leaves { count: prof.deg1, bound: leaf_bound });
    }
    let ps = path_structure(&r);
    if ps.paths.len() > leaf_bound {
        return reject(Rejection::StraightPaths { count: ps.paths.len(), bound: leaf_bound });
    }
    // a closed straight path bends at two interior vertices at least, a bare
    // cycle at three; bends and high-degree vertices occupy distinct crossings
    let closed = ps.paths.iter().filter(|p| p.is_closed()).count();
    let needed = prof.deg3plus + 2 * closed + 3 * ps.cycles.len();
    if needed > c {
        return reject(Rejection::Crossings { needed, bound: c });
    }
    // contract long runs, keeping the vertices nearest the smaller end
    let mut removed = vec![false; r.n()];
    for p in &ps.paths {
        for &v in p.interior().iter().skip(c) {
            removed[v] = true;
        }
    }
    // a cycle has at most as many bends as the crossings left for it
    let cycle_len = c + 3 - needed;
    for cyc in &ps.cycles {
        for &v in cyc.iter().skip(cycle_len) {
            removed[v] = true;
        }
    }
    let mut new_id = vec![usize::MAX; r.n()];
    let mut origin = Vec::new();
    for v in 0..r.n() {
        if !removed[v] {
            new_id[v] = origin.len();
            origin.push(rest[v]);
        }
    }
    let mut h = Graph::new(origin.len());
    let mut runs = BTreeMap::new();
    let mut add = |h: &mut Graph, a: usize, b: usize, run: Vec<usize>| {
        let (x, y) = (new_id[a], new_id[b]);
        h.add_edge(x, y).expect("contraction keeps the graph simple");
        if !run.is_empty() {
            let mut run: Vec<usize> = run.iter().map(|&v| rest[v]).collect();
            if x > y {
                run.reverse();
            }
            runs.insert((x.min(y), x.max(y)), run);
        }
    };
    for p in &ps.paths {
        let vs = &p.vertices;
        let kept = vs.len() - 2 - p.interior().len().saturating_sub(c);
        for w in vs[..=kept].windows(2) {
            add(&mut h, w[0], w[1], Vec::new());
        }
        add(&mut h, vs[kept], *vs.last().unwrap(), vs[kept + 1..vs.len() - 1].to_vec());
    }
    for cyc in &ps.cycles {
        let kept = cyc.len().min(cycle_len);
        for w in cyc[..kept].windows(2) {
            add(&mut h, w[0], w[1], Vec::new());
        }
        add(&mut h, cyc[kept - 1], cyc[0], cyc[kept..].to_vec());
    }
    Ok(KernelResult { h, verdict: Verdict::Reduced, origin, runs, dropped_paths })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn subdivided_star(rays: usize, len: usize) -> Graph {
        let mut g = Graph::new(1);
        for _ in 0..rays {
            let mut prev = 0;
            for _ in 0..len {
                let v = g.add_vertex();
                g.add_edge(prev, v).unwrap();
                prev = v;
            }
        }
        g
    }

    #[test]
    fn path_components_vanish() {
        let r = kernelize(&Graph::path(5), 1, 2).unwrap();
        assert_eq!(r.verdict, Verdict::Reduced);
        assert_eq!(r.h.n(), 0);
        assert_eq!(r.dropped_paths, vec![vec![0, 1, 2, 3, 4]]);
    }

    #[test]
    fn claw_is_rejected_for_one_line() {
        let r = kernelize(&Graph::complete_bipartite(1, 3), 1, 2).unwrap();
        assert!(matches!(r.verdict, Verdict::RejectedByCounts(Rejection::HighDegree { count: 1, bound: 0 })));
        assert_eq!(r.h, Graph::complete_bipartite(1, 3));
        assert!(r.origin.is_empty());
    }

    #[test]
    fn long_rays_are_contracted() {
        // each ray: 100 subdivision vertices then the leaf
        let g = subdivided_star(3, 101);
        let r = kernelize(&g, 3, 2).unwrap();
        assert_eq!(r.verdict, Verdict::Reduced);
        assert_eq!(r.h.n(), 13);
        assert_eq!(r.h.m(), 12);
        assert_eq!(r.runs.len(), 3);
        assert!(r.runs.values().all(|run| run.len() == 97));
    }

    #[test]
    fn invalid_k() {
        assert_eq!(kernelize(&Graph::new(1), 0, 2), Err(KernelError::InvalidK(0)));
    }

    #[test]
    fn cycles_use_crossings() {
        let c5 = Graph::cycle(5);
        assert!(kernelize(&c5, 2, 2).unwrap().is_rejected());
        let r = kernelize(&c5, 3, 2).unwrap();
        assert_eq!(r.h, Graph::cycle(3));
        assert_eq!(r.runs[&(0, 2)], vec![4, 3]);
        let r = kernelize(&c5, 4, 2).unwrap();
        assert_eq!(r.h, Graph::cycle(5));
    }
}

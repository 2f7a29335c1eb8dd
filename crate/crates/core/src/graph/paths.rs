//! Straight paths and smoothing of degree-2 vertices.

use std::collections::{BTreeMap, BTreeSet};

use super::{Graph, GraphError};

/// A maximal path whose interior vertices have degree 2 and whose endpoints
/// do not. Endpoints coincide for a closed path through a single vertex of
/// degree at least 3.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct StraightPath {
    pub vertices: Vec<usize>,
}

impl StraightPath {
    pub fn start(&self) -> usize {
        self.vertices[0]
    }

    pub fn end(&self) -> usize {
        *self.vertices.last().unwrap()
    }

    pub fn interior(&self) -> &[usize] {
        &self.vertices[1..self.vertices.len() - 1]
    }

    pub fn is_closed(&self) -> bool {
        self.start() == self.end()
    }
}

/// Every edge lies in exactly one straight path or one bare cycle (a
/// component all of whose vertices have degree 2).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PathStructure {
    pub paths: Vec<StraightPath>,
    /// Each cycle starts at its smallest vertex and continues towards the
    /// smaller of its two neighbours.
    pub cycles: Vec<Vec<usize>>,
}

fn orient(mut vs: Vec<usize>) -> Vec<usize> {
    let (a, b) = (vs[0], *vs.last().unwrap());
    if b < a || (a == b && vs[1] > vs[vs.len() - 2]) {
        vs.reverse();
    }
    vs
}

pub fn path_structure(g: &Graph) -> PathStructure {
    let n = g.n();
    let mut used = vec![false; n];
    let mut paths = Vec::new();
    for u in 0..n {
        if g.degree(u) == 2 {
            continue;
        }
        for &w in g.neighbors(u) {
            if g.degree(w) != 2 {
                if u < w {
                    paths.push(StraightPath { vertices: vec![u, w] });
                }
                continue;
            }
            if used[w] {
                continue;
            }
            let mut vs = vec![u];
            let (mut prev, mut cur) = (u, w);
            while g.degree(cur) == 2 {
                used[cur] = true;
                vs.push(cur);
                let nb = g.neighbors(cur);
                let next = if nb[0] == prev { nb[1] } else { nb[0] };
                prev = cur;
                cur = next;
            }
            vs.push(cur);
            paths.push(StraightPath { vertices: orient(vs) });
        }
    }
    paths.sort();
    let mut cycles = Vec::new();
    for s in 0..n {
        if g.degree(s) != 2 || used[s] {
            continue;
        }
        let mut cyc = vec![s];
        used[s] = true;
        let (mut prev, mut cur) = (s, g.neighbors(s)[0]);
        while cur != s {
            used[cur] = true;
            cyc.push(cur);
            let nb = g.neighbors(cur);
            let next = if nb[0] == prev { nb[1] } else { nb[0] };
            prev = cur;
            cur = next;
        }
        cycles.push(cyc);
    }
    PathStructure { paths, cycles }
}

/// The straight paths of `g`; fails if some component is a bare cycle, whose
/// edges belong to no straight path.
pub fn straight_paths(g: &Graph) -> Result<Vec<StraightPath>, GraphError> {
    let ps = path_structure(g);
    match ps.cycles.first() {
        Some(c) => Err(GraphError::CycleComponent(c[0])),
        None => Ok(ps.paths),
    }
}

/// Result of smoothing: the smaller graph plus the correspondences needed to
/// lift structures back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Smoothed {
    pub graph: Graph,
    pub old_to_new: Vec<Option<usize>>,
    pub new_to_old: Vec<usize>,
    /// For each new edge `(a, b)` with `a < b`, the removed vertices it
    /// replaces, ordered from `a` to `b`.
    pub runs: BTreeMap<(usize, usize), Vec<usize>>,
}

impl Smoothed {
    /// Original vertex sequence of the new edge `a`–`b`, from `a` to `b`.
    pub fn expand(&self, a: usize, b: usize) -> Vec<usize> {
        let (x, y) = (a.min(b), a.max(b));
        let mut run = self.runs.get(&(x, y)).cloned().unwrap_or_default();
        if a > b {
            run.reverse();
        }
        let mut out = vec![self.new_to_old[a]];
        out.extend(run);
        out.push(self.new_to_old[b]);
        out
    }
}

/// Smooth every degree-2 vertex of `g` that is not in `keep`.
pub fn smooth(g: &Graph, keep: &BTreeSet<usize>) -> Result<Smoothed, GraphError> {
    let n = g.n();
    let removed: Vec<bool> = (0..n).map(|v| g.degree(v) == 2 && !keep.contains(&v)).collect();
    let mut old_to_new = vec![None; n];
    let mut new_to_old = Vec::new();
    for v in 0..n {
        if !removed[v] {
            old_to_new[v] = Some(new_to_old.len());
            new_to_old.push(v);
        }
    }
    let mut graph = Graph::new(new_to_old.len());
    let mut runs = BTreeMap::new();
    let mut seen = vec![false; n];
    for (a, &u) in new_to_old.iter().enumerate() {
        for &w in g.neighbors(u) {
            let mut run = Vec::new();
            let (mut prev, mut cur) = (u, w);
            while removed[cur] {
                run.push(cur);
                let nb = g.neighbors(cur);
                let next = if nb[0] == prev { nb[1] } else { nb[0] };
                prev = cur;
                cur = next;
            }
            let b = old_to_new[cur].unwrap();
            if b == a {
                return Err(GraphError::MultiEdgeCollapse(u, u));
            }
            if b < a {
                continue;
            }
            if graph.has_edge(a, b) {
                return Err(GraphError::MultiEdgeCollapse(u, cur));
            }
            graph.insert(a, b);
            for &x in &run {
                seen[x] = true;
            }
            if !run.is_empty() {
                runs.insert((a, b), run);
            }
        }
    }
    if let Some(v) = (0..n).find(|&v| removed[v] && !seen[v]) {
        // a cycle of smoothed vertices would collapse to a loop
        return Err(GraphError::MultiEdgeCollapse(v, v));
    }
    Ok(Smoothed { graph, old_to_new, new_to_old, runs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_component_is_reported() {
        assert_eq!(straight_paths(&Graph::cycle(5)), Err(GraphError::CycleComponent(0)));
        let ps = path_structure(&Graph::cycle(4));
        assert_eq!(ps.cycles, vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn star_with_subdivided_ray() {
        // centre 0, leaves 1, 2 and a ray 0-3-4
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (3, 4)]).unwrap();
        let ps = straight_paths(&g).unwrap();
        let vs: Vec<_> = ps.iter().map(|p| p.vertices.clone()).collect();
        assert_eq!(vs, vec![vec![0, 1], vec![0, 2], vec![0, 3, 4]]);
    }

    #[test]
    fn closed_straight_path() {
        // triangle 0-1-2 hanging off vertex 0 of degree 3
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (0, 3)]).unwrap();
        let ps = straight_paths(&g).unwrap();
        assert_eq!(ps.len(), 2);
        assert_eq!(ps[0].vertices, vec![0, 1, 2, 0]);
        assert!(ps[0].is_closed());
    }

    #[test]
    fn smoothing_path_and_collapse() {
        let g = Graph::path(4);
        let s = smooth(&g, &BTreeSet::new()).unwrap();
        assert_eq!(s.graph.m(), 1);
        assert_eq!(s.expand(0, 1), vec![0, 1, 2, 3]);
        assert_eq!(s.expand(1, 0), vec![3, 2, 1, 0]);
        // a triangle with one kept vertex collapses to a loop
        let t = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (0, 3)]).unwrap();
        assert!(matches!(smooth(&t, &BTreeSet::new()), Err(GraphError::MultiEdgeCollapse(..))));
        assert!(smooth(&t, &[1].into()).is_err());
        assert!(smooth(&t, &[1, 2].into()).is_ok());
        // C4 smoothed at a kept pair of opposite vertices becomes a double edge
        assert!(smooth(&Graph::cycle(4), &[0, 2].into()).is_err());
        assert!(matches!(smooth(&Graph::cycle(4), &BTreeSet::new()), Err(GraphError::MultiEdgeCollapse(0, 0))));
        // subdivided triangle with its corners kept
        let k3 = smooth(&Graph::cycle(6), &[0, 2, 4].into()).unwrap();
        assert_eq!(k3.graph, Graph::complete(3));
    }
}

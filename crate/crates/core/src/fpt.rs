//! Deciding ρ¹_d(G) ≤ k: kernelize, enumerate the reduced candidates
//! `(S, G_S)`, embed each into the templates with `k` factors and consult the
//! stretchability oracle; a positive answer is lifted back to `G` together
//! with an exact drawing.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Mutex, OnceLock};

use thiserror::Error;

use crate::geom::{line_intersection, Line, Point, Realization};
use crate::graph::{path_structure, smooth, Graph, GraphError, Smoothed};
use crate::kernel::{binom2, kernelize, KernelError, Rejection, Verdict};
use crate::scalar::Scalar;
use crate::stretch::{is_stretchable_seeded, ExternalSolver, StretchAnswer, StretchError, DEFAULT_BUDGET, DEFAULT_SEED};
use crate::templates::{
    description_from_embedding, enumerate_templates, find_embedding, CanonicalForm, CombinatorialDescription,
    Embedding, TemplateGraph,
};

#[derive(Debug, Error)]
pub enum FptError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Stretch(#[from] StretchError),
    #[error("inconsistent description: {0}")]
    InconsistentDescription(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverQuery {
    pub g: Graph,
    pub k: usize,
    pub d: usize,
}

#[derive(Debug, Clone)]
pub struct DecideOptions {
    /// Restarts of the stretchability search per template.
    pub budget: usize,
    pub seed: u64,
    pub solver: Option<ExternalSolver>,
    /// Run the kernel first; without it only path components are removed.
    pub kernelize: bool,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions { budget: DEFAULT_BUDGET, seed: DEFAULT_SEED, solver: None, kernelize: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub description: CombinatorialDescription,
    /// Exact drawing of `G` on `k` lines.
    pub realization: Realization,
    /// Template hosting the reduced graph, if one was needed.
    pub template: Option<TemplateGraph>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NoReason {
    Kernel(Rejection),
    /// Every candidate and template was examined with resolved verdicts.
    Exhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    Yes(Box<Certificate>),
    No(NoReason),
    /// Templates whose stretchability stayed open and blocked a refutation.
    Unknown(Vec<TemplateGraph>),
}

impl Decision {
    pub fn is_yes(&self) -> bool {
        matches!(self, Decision::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Decision::No(_))
    }
}

/// One reduced candidate: `S` (vertices of the input kept although of
/// degree 2) and the graph obtained by smoothing every other degree-2 vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub s: BTreeSet<usize>,
    pub smoothed: Smoothed,
}

impl Candidate {
    pub fn graph(&self) -> &Graph {
        &self.smoothed.graph
    }
}

fn count_vectors(limits: &[usize], budget: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(limits.len());
    fn go(limits: &[usize], left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == limits.len() {
            out.push(cur.clone());
            return;
        }
        for c in 0..=limits[cur.len()].min(left) {
            cur.push(c);
            go(limits, left - c, cur, out);
            cur.pop();
        }
    }
    go(limits, budget, &mut cur, &mut out);
    out
}

/// Candidates `(S, G_S)`: the trace of `S` on every straight path is an
/// initial segment of its interior (bare cycles start at their smallest
/// vertex), `|S| ≤ C(k,2)`; ordered by `|S|`, then lexicographically.
/// Choices whose smoothing would create loops or parallel edges are skipped.
pub fn enumerate_reduced_family(g: &Graph, k: usize) -> Vec<Candidate> {
    let ps = path_structure(g);
    let mut runs: Vec<Vec<usize>> = ps.paths.iter().map(|p| p.interior().to_vec()).filter(|r| !r.is_empty()).collect();
    runs.extend(ps.cycles.iter().cloned());
    let limits: Vec<usize> = runs.iter().map(Vec::len).collect();
    let mut sets: Vec<Vec<usize>> = count_vectors(&limits, binom2(k))
        .into_iter()
        .map(|cs| {
            let mut s: Vec<usize> = cs.iter().zip(&runs).flat_map(|(&c, r)| r[..c].iter().copied()).collect();
            s.sort_unstable();
            s
        })
        .collect();
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    sets.into_iter()
        .filter_map(|s| {
            let s: BTreeSet<usize> = s.into_iter().collect();
            smooth(g, &s).ok().map(|smoothed| Candidate { s, smoothed })
        })
        .collect()
}

/// Vertex correspondence of one reduction stage: new vertex → old vertex,
/// and for new edges the removed old vertices between their ends.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
struct Stage {
    new_to_old: Vec<usize>,
    runs: BTreeMap<(usize, usize), Vec<usize>>,
}

impl Stage {
    fn expand(&self, a: usize, b: usize) -> Vec<usize> {
        let mut run = self.runs.get(&(a.min(b), a.max(b))).cloned().unwrap_or_default();
        if a > b {
            run.reverse();
        }
        let mut out = vec![self.new_to_old[a]];
        out.extend(run);
        out.push(self.new_to_old[b]);
        out
    }
}

impl From<&Smoothed> for Stage {
    fn from(s: &Smoothed) -> Self {
        Stage { new_to_old: s.new_to_old.clone(), runs: s.runs.clone() }
    }
}

fn lift_path(stages: &[&Stage], path: &[usize], graphs: &[&Graph]) -> Result<Vec<usize>, FptError> {
    let mut cur = path.to_vec();
    for (st, g) in stages.iter().zip(graphs) {
        let mut next = vec![st.new_to_old[cur[0]]];
        for w in cur.windows(2) {
            if !g.has_edge(w[0], w[1]) {
                return Err(FptError::InconsistentDescription(format!(
                    "edge {{{}, {}}} is not in the reduced graph",
                    w[0] + 1,
                    w[1] + 1
                )));
            }
            next.extend(st.expand(w[0], w[1]).into_iter().skip(1));
        }
        cur = next;
    }
    Ok(cur)
}

fn check_description(desc: &CombinatorialDescription, g: &Graph) -> Result<(), FptError> {
    for line in &desc.lines {
        for p in line {
            if let Some(&v) = p.iter().find(|&&v| v >= g.n()) {
                return Err(FptError::InconsistentDescription(format!("vertex {} out of range", v + 1)));
            }
        }
    }
    Ok(())
}

/// Lift a description of `G_S = smooth(G, S)` to `G`: every smoothed vertex
/// is re-inserted along its host edge in path order.
pub fn lift_description(
    desc: &CombinatorialDescription,
    g: &Graph,
    s: &BTreeSet<usize>,
) -> Result<CombinatorialDescription, FptError> {
    let sm = smooth(g, s).map_err(|e| FptError::InconsistentDescription(e.to_string()))?;
    check_description(desc, &sm.graph)?;
    let stage = Stage::from(&sm);
    let lines = desc
        .lines
        .iter()
        .map(|line| line.iter().map(|p| lift_path(&[&stage], p, &[&sm.graph])).collect())
        .collect::<Result<Vec<Vec<Vec<usize>>>, _>>()?;
    let out = CombinatorialDescription { lines };
    if !out.is_consistent_with(g) {
        return Err(FptError::InconsistentDescription("lifted description does not cover the graph".into()));
    }
    Ok(out)
}

/// The graph handed to the template search plus the way back to the input.
struct Reduced {
    h: Graph,
    stage: Stage,
    dropped: Vec<Vec<usize>>,
}

fn drop_paths(g: &Graph) -> Reduced {
    let mut keep = vec![true; g.n()];
    let mut dropped = Vec::new();
    for comp in g.components() {
        let edges: usize = comp.iter().map(|&v| g.degree(v)).sum::<usize>() / 2;
        if edges + 1 == comp.len() && comp.iter().all(|&v| g.degree(v) <= 2) {
            comp.iter().for_each(|&v| keep[v] = false);
            let start = comp.iter().copied().filter(|&v| g.degree(v) <= 1).min().unwrap();
            let mut order = vec![start];
            let mut prev = usize::MAX;
            while let Some(&nx) = g.neighbors(*order.last().unwrap()).iter().find(|&&w| w != prev) {
                prev = *order.last().unwrap();
                order.push(nx);
            }
            dropped.push(order);
        }
    }
    let rest: Vec<usize> = (0..g.n()).filter(|&v| keep[v]).collect();
    Reduced { h: g.induced(&rest), stage: Stage { new_to_old: rest, runs: BTreeMap::new() }, dropped }
}

type CacheKey = (CanonicalForm, usize, usize, u64, bool);

fn cache() -> &'static Mutex<HashMap<CacheKey, StretchAnswer>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, StretchAnswer>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn templates(k: usize) -> std::sync::Arc<Vec<TemplateGraph>> {
    static T: OnceLock<Mutex<HashMap<usize, std::sync::Arc<Vec<TemplateGraph>>>>> = OnceLock::new();
    let mut m = T.get_or_init(Default::default).lock().unwrap();
    m.entry(k).or_insert_with(|| std::sync::Arc::new(enumerate_templates(k))).clone()
}

/// Stretchability of a template, memoized per canonical form and dimension.
fn stretch_verdict(t: &TemplateGraph, d: usize, opts: &DecideOptions) -> Result<StretchAnswer, FptError> {
    let key = (t.canonical_form(), d, opts.budget, opts.seed, opts.solver.is_some());
    if let Some(a) = cache().lock().unwrap().get(&key) {
        return Ok(a.clone());
    }
    let v = is_stretchable_seeded(t, d, opts.budget, opts.seed, opts.solver.as_ref())?;
    cache().lock().unwrap().insert(key, v.answer.clone());
    Ok(v.answer)
}

/// Largest parameter along `l` of the given points and of the meeting points
/// of `l` with the other lines.
fn beyond(l: &Line, others: &[Line], pts: &[Point]) -> Scalar {
    let mut t = Scalar::one();
    for x in pts.iter().filter(|p| l.contains(p)).chain(others.iter().filter_map(|o| line_intersection(l, o)).collect::<Vec<_>>().iter()) {
        let s = l.param(x);
        if s > t {
            t = s;
        }
    }
    t
}

/// Put the dropped path components on line 0 beyond everything else.
fn append_paths(r: &mut Realization, g: &Graph, pos: &mut [Option<Point>], paths: &[Vec<usize>]) {
    if paths.is_empty() {
        return;
    }
    let l = r.lines[0].clone();
    let placed: Vec<Point> = pos.iter().flatten().cloned().collect();
    let mut t = beyond(&l, &r.lines[1..], &placed);
    for p in paths {
        for &v in p {
            t = t + Scalar::one();
            pos[v] = Some(l.at(&t));
        }
        for w in p.windows(2) {
            r.assignment.insert((w[0].min(w[1]), w[0].max(w[1])), 0);
        }
    }
    debug_assert!(paths.iter().all(|p| p.windows(2).all(|w| g.has_edge(w[0], w[1]))));
    r.lines[0] = Line::new(l.p.clone(), l.at(&(t + Scalar::one())));
}

/// A drawing of `k` parallel lines holding only path components.
fn paths_only(g: &Graph, k: usize, d: usize, paths: &[Vec<usize>]) -> Certificate {
    let pt = |x: i64, y: i64| {
        let mut c = vec![x, y];
        c.resize(d, 0);
        Point::ints(&c)
    };
    let mut r = Realization {
        dim: d,
        positions: Vec::new(),
        lines: (0..k as i64).map(|i| Line::new(pt(0, i), pt(1, i))).collect(),
        assignment: BTreeMap::new(),
    };
    let mut pos = vec![None; g.n()];
    append_paths(&mut r, g, &mut pos, paths);
    r.positions = pos.into_iter().map(|p| p.expect("every vertex lies on a path component")).collect();
    let mut lines = vec![Vec::new(); k];
    lines[0] = paths.to_vec();
    Certificate { description: CombinatorialDescription { lines }, realization: r, template: None }
}

#[allow(clippy::too_many_arguments)]
fn certificate(
    g: &Graph,
    red: &Reduced,
    cand: &Candidate,
    t: &TemplateGraph,
    emb: &Embedding,
    tr: &Realization,
) -> Result<Certificate, FptError> {
    let gs = cand.graph();
    let stage_s = Stage::from(&cand.smoothed);
    let stages = [&stage_s, &red.stage];
    let graphs = [gs, &red.h];
    let desc = description_from_embedding(gs, t, emb);
    let mut lines = Vec::new();
    for line in &desc.lines {
        lines.push(line.iter().map(|p| lift_path(&stages, p, &graphs)).collect::<Result<Vec<_>, _>>()?);
    }
    lines[0].extend(red.dropped.iter().cloned());
    let description = CombinatorialDescription { lines };

    let mut pos: Vec<Option<Point>> = vec![None; g.n()];
    let mut r = Realization { dim: tr.dim, positions: Vec::new(), lines: tr.lines.clone(), assignment: BTreeMap::new() };
    for (&(a, b), &fi) in &emb.edge_factor {
        let seq = lift_path(&stages, &[a, b], &graphs)?;
        let (pa, pb) = (tr.positions[emb.map[a]].clone(), tr.positions[emb.map[b]].clone());
        let steps = (seq.len() - 1) as i64;
        for (i, &v) in seq.iter().enumerate() {
            pos[v] = Some(pa.lerp(&pb, &Scalar::ratio(i as i64, steps)));
        }
        for w in seq.windows(2) {
            r.assignment.insert((w[0].min(w[1]), w[0].max(w[1])), fi);
        }
    }
    append_paths(&mut r, g, &mut pos, &red.dropped);
    r.positions = pos
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| FptError::InconsistentDescription("a vertex was not placed".into()))?;
    Ok(Certificate { description, realization: r, template: Some(t.clone()) })
}

pub fn decide_line_cover(q: &CoverQuery) -> Result<Decision, FptError> {
    decide_with(q, &DecideOptions::default())
}

pub fn decide_with(q: &CoverQuery, opts: &DecideOptions) -> Result<Decision, FptError> {
    let (g, k, d) = (&q.g, q.k, q.d);
    let red = if opts.kernelize {
        let kr = kernelize(g, k, d)?;
        if let Verdict::RejectedByCounts(r) = kr.verdict {
            return Ok(Decision::No(NoReason::Kernel(r)));
        }
        Reduced { h: kr.h, stage: Stage { new_to_old: kr.origin, runs: kr.runs }, dropped: kr.dropped_paths }
    } else {
        if k < 1 {
            return Err(KernelError::InvalidK(k).into());
        }
        if d != 2 && d != 3 {
            return Err(KernelError::InvalidDimension(d).into());
        }
        drop_paths(g)
    };
    if red.h.n() == 0 {
        return Ok(Decision::Yes(Box::new(paths_only(g, k, d, &red.dropped))));
    }
    if k == 1 {
        return Ok(Decision::No(NoReason::Exhausted));
    }
    let ts = templates(k);
    let mut pending: Vec<TemplateGraph> = Vec::new();
    let mut refuted = vec![false; ts.len()];
    for cand in enumerate_reduced_family(&red.h, k) {
        for (i, t) in ts.iter().enumerate() {
            if refuted[i] {
                continue;
            }
            let Some(emb) = find_embedding(cand.graph(), t) else { continue };
            match stretch_verdict(t, d, opts)? {
                StretchAnswer::Yes(tr) => return Ok(Decision::Yes(Box::new(certificate(g, &red, &cand, t, &emb, &tr)?))),
                StretchAnswer::No(_) => refuted[i] = true,
                StretchAnswer::Unknown(_) => {
                    if !pending.contains(t) {
                        pending.push(t.clone());
                    }
                }
            }
        }
    }
    Ok(if pending.is_empty() { Decision::No(NoReason::Exhausted) } else { Decision::Unknown(pending) })
}

impl From<GraphError> for FptError {
    fn from(e: GraphError) -> Self {
        FptError::InconsistentDescription(e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::verify_cover;

    fn decide(g: &Graph, k: usize) -> Decision {
        decide_line_cover(&CoverQuery { g: g.clone(), k, d: 2 }).unwrap()
    }

    fn certified(g: &Graph, k: usize) -> Certificate {
        match decide(g, k) {
            Decision::Yes(c) => {
                assert!(c.description.is_consistent_with(g));
                assert_eq!(c.description.k(), k);
                assert_eq!(c.realization.lines.len(), k);
                let rep = verify_cover(g, &c.realization);
                assert!(rep.is_valid(), "{:?}", rep.violations);
                *c
            }
            other => panic!("expected yes, got {other:?}"),
        }
    }

    #[test]
    fn claw_on_two_lines() {
        let c = certified(&Graph::complete_bipartite(1, 3), 2);
        let mut lens: Vec<usize> = c.description.lines.iter().flatten().map(Vec::len).filter(|&l| l > 1).collect();
        lens.sort();
        assert_eq!(lens, vec![2, 3]);
    }

    #[test]
    fn triangle() {
        assert!(decide(&Graph::complete(3), 2).is_no());
        certified(&Graph::complete(3), 3);
    }

    #[test]
    fn family_examples() {
        assert_eq!(enumerate_reduced_family(&Graph::complete(4), 3).len(), 1);
        let mut g = Graph::new(1);
        for _ in 0..3 {
            let a = g.add_vertex();
            let b = g.add_vertex();
            g.add_edge(0, a).unwrap();
            g.add_edge(a, b).unwrap();
        }
        let fam = enumerate_reduced_family(&g, 2);
        assert_eq!(fam.len(), 4);
        assert!(fam[0].s.is_empty());
        assert!(fam[1..].iter().all(|c| c.s.len() == 1));
    }

    #[test]
    fn lifting_paths() {
        let p5 = Graph::path(5);
        let d = CombinatorialDescription { lines: vec![vec![vec![0, 1]]] };
        let l = lift_description(&d, &p5, &BTreeSet::new()).unwrap();
        assert_eq!(l.lines, vec![vec![vec![0, 1, 2, 3, 4]]]);
        let bad = CombinatorialDescription { lines: vec![vec![vec![0, 1]], vec![vec![1, 0]]] };
        assert!(matches!(lift_description(&bad, &p5, &BTreeSet::new()), Err(FptError::InconsistentDescription(_))));
    }

    #[test]
    fn paths_and_cycles() {
        certified(&Graph::path(4), 1);
        certified(&Graph::path(4).disjoint_union(&Graph::path(3)), 2);
        // a cycle is a triangle with extra vertices on its sides
        assert!(decide(&Graph::cycle(6), 2).is_no());
        certified(&Graph::cycle(6), 3);
        certified(&Graph::cycle(5).disjoint_union(&Graph::path(2)), 3);
    }
}

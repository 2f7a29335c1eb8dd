//! Factorized graphs, pre-templates, templates and embeddings into them.
//!
//! A factorization splits the edges of a graph into paths (factors), any two
//! of which share at most one vertex. A pre-template is a factorized graph
//! whose factors run between two degree-1 vertices and whose other vertices
//! are shared by at least two factors; it is described by the sequence of
//! crossing label sets along every factor. A template subdivides every edge
//! between two shared vertices twice.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TemplateError {
    #[error("invalid factorization: {0}")]
    InvalidFactorization(String),
    #[error("not a pre-template: {0}")]
    NotPreTemplate(String),
    #[error("not a template: {0}")]
    InvalidTemplate(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A graph with its edges partitioned into paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizedGraph {
    pub graph: Graph,
    /// Every factor is listed as its vertex sequence.
    pub factors: Vec<Vec<usize>>,
}

impl FactorizedGraph {
    pub fn validate(&self) -> Result<(), TemplateError> {
        let bad = |s: String| Err(TemplateError::InvalidFactorization(s));
        let mut covered = BTreeSet::new();
        for (i, f) in self.factors.iter().enumerate() {
            if f.len() < 2 {
                return bad(format!("factor {i} has no edge"));
            }
            let distinct: BTreeSet<_> = f.iter().collect();
            if distinct.len() != f.len() {
                return bad(format!("factor {i} repeats a vertex"));
            }
            for w in f.windows(2) {
                if !self.graph.has_edge(w[0], w[1]) {
                    return bad(format!("factor {i} uses non-edge {{{}, {}}}", w[0], w[1]));
                }
                if !covered.insert((w[0].min(w[1]), w[0].max(w[1]))) {
                    return bad(format!("edge {{{}, {}}} lies in two factors", w[0], w[1]));
                }
            }
        }
        if covered.len() != self.graph.m() {
            return bad("some edge lies in no factor".into());
        }
        let sets: Vec<BTreeSet<usize>> = self.factors.iter().map(|f| f.iter().copied().collect()).collect();
        for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                if sets[i].intersection(&sets[j]).count() > 1 {
                    return bad(format!("factors {i} and {j} share two vertices"));
                }
            }
        }
        Ok(())
    }

    pub fn k(&self) -> usize {
        self.factors.len()
    }

    /// Factors containing each vertex.
    pub fn factors_at(&self) -> Vec<Vec<usize>> {
        let mut at = vec![Vec::new(); self.graph.n()];
        for (i, f) in self.factors.iter().enumerate() {
            for &v in f {
                at[v].push(i);
            }
        }
        at
    }
}

/// Canonical description of a pre-template: the crossing label sets (bit
/// masks over factors) along every factor, minimized over relabelling the
/// factors and reversing each of them.
pub type CanonicalForm = Vec<Vec<u32>>;

/// Canonical form with the relabelling and reversals that achieve it.
struct Canon {
    form: CanonicalForm,
    perm: Vec<usize>,
    reversed: Vec<bool>,
}

fn permute_mask(m: u32, perm: &[usize]) -> u32 {
    (0..perm.len()).filter(|&i| m >> i & 1 == 1).fold(0, |acc, i| acc | 1 << perm[i])
}

fn for_each_perm(k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(p: &mut Vec<usize>, used: &mut Vec<bool>, f: &mut impl FnMut(&[usize])) {
        if p.len() == used.len() {
            f(p);
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                p.push(i);
                rec(p, used, f);
                p.pop();
                used[i] = false;
            }
        }
    }
    rec(&mut Vec::with_capacity(k), &mut vec![false; k], f);
}

fn canonicalize(seqs: &[Vec<u32>]) -> Canon {
    let k = seqs.len();
    let mut best: Option<Canon> = None;
    for_each_perm(k, &mut |perm: &[usize]| {
        let mut form = vec![Vec::new(); k];
        let mut reversed = vec![false; k];
        for (i, s) in seqs.iter().enumerate() {
            let fwd: Vec<u32> = s.iter().map(|&m| permute_mask(m, perm)).collect();
            let mut bwd = fwd.clone();
            bwd.reverse();
            if bwd < fwd {
                form[perm[i]] = bwd;
                reversed[i] = true;
            } else {
                form[perm[i]] = fwd;
            }
        }
        if best.as_ref().is_none_or(|b| form < b.form) {
            best = Some(Canon { form, perm: perm.to_vec(), reversed });
        }
    });
    best.unwrap()
}

/// Pre-template described by a crossing sequence per factor: crossings are
/// numbered by increasing label mask, then each factor's two tails.
pub fn pretemplate_from_form(form: &[Vec<u32>]) -> FactorizedGraph {
    let masks: BTreeSet<u32> = form.iter().flatten().copied().collect();
    let id: BTreeMap<u32, usize> = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut n = masks.len();
    let mut factors = Vec::new();
    let mut edges = Vec::new();
    for s in form {
        let mut f = vec![n];
        f.extend(s.iter().map(|m| id[m]));
        f.push(n + 1);
        n += 2;
        edges.extend(f.windows(2).map(|w| (w[0], w[1])));
        factors.push(f);
    }
    FactorizedGraph { graph: Graph::from_edges(n, &edges).expect("pre-template is simple"), factors }
}

/// All pre-templates with `k` factors up to isomorphism, smallest first.
pub fn enumerate_pretemplates(k: usize) -> Vec<FactorizedGraph> {
    enumerate_forms(k).iter().map(|f| pretemplate_from_form(f)).collect()
}

/// Canonical forms of all pre-templates with `k` factors, ordered by vertex
/// count and then by form.
pub fn enumerate_forms(k: usize) -> Vec<CanonicalForm> {
    if k < 2 {
        return Vec::new();
    }
    let cands: Vec<u32> = (1u32..1 << k).filter(|m| m.count_ones() >= 2).collect();
    let mut families = Vec::new();
    linear_families(&cands, 0, &mut Vec::new(), k, &mut families);
    let mut forms = BTreeSet::new();
    for fam in families {
        let per_factor: Vec<Vec<u32>> = (0..k).map(|i| fam.iter().copied().filter(|m| m >> i & 1 == 1).collect()).collect();
        let orders: Vec<Vec<Vec<u32>>> = per_factor.iter().map(|b| orders_up_to_reversal(b)).collect();
        let mut idx = vec![0; k];
        loop {
            let seqs: Vec<Vec<u32>> = (0..k).map(|i| orders[i][idx[i]].clone()).collect();
            forms.insert(canonicalize(&seqs).form);
            let mut i = 0;
            while i < k {
                idx[i] += 1;
                if idx[i] < orders[i].len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
            if i == k {
                break;
            }
        }
    }
    let mut out: Vec<CanonicalForm> = forms.into_iter().collect();
    out.sort_by_key(|f| (form_vertex_count(f), f.clone()));
    out
}

fn form_vertex_count(f: &[Vec<u32>]) -> usize {
    let masks: BTreeSet<u32> = f.iter().flatten().copied().collect();
    masks.len() + 2 * f.len()
}

fn linear_families(cands: &[u32], from: usize, cur: &mut Vec<u32>, k: usize, out: &mut Vec<Vec<u32>>) {
    let full = (1u32 << k) - 1;
    if cur.iter().fold(0, |a, &m| a | m) == full {
        out.push(cur.clone());
    }
    for i in from..cands.len() {
        let m = cands[i];
        if cur.iter().all(|&c| (c & m).count_ones() <= 1) {
            cur.push(m);
            linear_families(cands, i + 1, cur, k, out);
            cur.pop();
        }
    }
}

fn orders_up_to_reversal(items: &[u32]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for_each_perm(items.len(), &mut |p: &[usize]| {
        if p.len() < 2 || p[0] < p[p.len() - 1] {
            out.push(p.iter().map(|&i| items[i]).collect());
        }
    });
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Crossing,
    Tail,
    Subdivision,
}

/// A template: every factor is `tail, c₁, s, s, c₂, …, c_r, tail` with
/// crossings `cᵢ` shared by at least two factors and two subdivision
/// vertices `s` between consecutive crossings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemplateGraph {
    pub factorized: FactorizedGraph,
    pub roles: Vec<Role>,
}

fn analyze(f: &FactorizedGraph, subdivided: bool) -> Result<(Vec<Role>, Vec<Vec<u32>>), String> {
    f.validate().map_err(|e| e.to_string())?;
    if f.k() < 2 {
        return Err("fewer than two factors".into());
    }
    if f.k() > 31 {
        return Err("too many factors".into());
    }
    let at = f.factors_at();
    let g = &f.graph;
    let mut roles = Vec::with_capacity(g.n());
    for v in 0..g.n() {
        roles.push(match (at[v].len(), g.degree(v)) {
            (0, _) => return Err(format!("vertex {v} lies on no factor")),
            (1, 1) => Role::Tail,
            (1, 2) if subdivided => Role::Subdivision,
            (1, _) => return Err(format!("vertex {v} of degree {} lies on a single factor", g.degree(v))),
            _ => Role::Crossing,
        });
    }
    let mask = |v: usize| at[v].iter().fold(0u32, |a, &i| a | 1 << i);
    let mut seqs = Vec::new();
    for (i, fac) in f.factors.iter().enumerate() {
        let t = fac.len();
        if roles[fac[0]] != Role::Tail || roles[fac[t - 1]] != Role::Tail {
            return Err(format!("factor {i} does not run between two tails"));
        }
        let inner = &fac[1..t - 1];
        let cross: Vec<usize> = inner.iter().copied().filter(|&v| roles[v] == Role::Crossing).collect();
        if cross.is_empty() {
            return Err(format!("factor {i} is an isolated edge"));
        }
        if roles[inner[0]] != Role::Crossing || roles[inner[inner.len() - 1]] != Role::Crossing {
            return Err(format!("factor {i} has a tail not adjacent to a crossing"));
        }
        let mut run = 0;
        for &v in inner {
            if roles[v] == Role::Crossing {
                if run != 0 && run != 2 {
                    return Err(format!("factor {i} has {run} subdivision vertices between crossings"));
                }
                run = 0;
            } else {
                run += 1;
            }
        }
        if subdivided && cross.len() * 3 - 2 != inner.len() {
            return Err(format!("factor {i} is missing subdivision vertices"));
        }
        seqs.push(cross.iter().map(|&v| mask(v)).collect());
    }
    Ok((roles, seqs))
}

impl TemplateGraph {
    pub fn from_factorized(f: FactorizedGraph) -> Result<Self, TemplateError> {
        let (roles, _) = analyze(&f, true).map_err(TemplateError::InvalidTemplate)?;
        Ok(TemplateGraph { factorized: f, roles })
    }

    pub fn graph(&self) -> &Graph {
        &self.factorized.graph
    }

    pub fn factors(&self) -> &[Vec<usize>] {
        &self.factorized.factors
    }

    pub fn k(&self) -> usize {
        self.factorized.k()
    }

    pub fn crossings(&self) -> Vec<usize> {
        (0..self.roles.len()).filter(|&v| self.roles[v] == Role::Crossing).collect()
    }

    fn canon(&self) -> Canon {
        let (_, seqs) = analyze(&self.factorized, true).expect("validated template");
        canonicalize(&seqs)
    }

    /// Canonical form of the underlying pre-template; equal forms mean
    /// isomorphic templates.
    pub fn canonical_form(&self) -> CanonicalForm {
        self.canon().form
    }

    /// Isomorphism-invariant key of every vertex.
    fn vertex_keys(&self) -> (CanonicalForm, Vec<(u32, usize, usize, usize)>) {
        let c = self.canon();
        let at = self.factorized.factors_at();
        let mut keys = vec![(0, 0, 0, 0); self.roles.len()];
        for (i, fac) in self.factors().iter().enumerate() {
            let t = fac.len();
            for (pos, &v) in fac.iter().enumerate() {
                let p = if c.reversed[i] { t - 1 - pos } else { pos };
                keys[v] = match self.roles[v] {
                    Role::Crossing => {
                        (permute_mask(at[v].iter().fold(0, |a, &j| a | 1 << j), &c.perm), 0, 0, 0)
                    }
                    _ => (0, c.perm[i], p, 1),
                };
            }
        }
        (c.form, keys)
    }

    /// Map from the vertices of `self` to those of an isomorphic template
    /// preserving factors and their orders, or `None`.
    pub fn isomorphism_to(&self, other: &TemplateGraph) -> Option<Vec<usize>> {
        let (fa, ka) = self.vertex_keys();
        let (fb, kb) = other.vertex_keys();
        if fa != fb {
            return None;
        }
        let inv: BTreeMap<_, usize> = kb.iter().enumerate().map(|(v, k)| (*k, v)).collect();
        Some(ka.iter().map(|k| inv[k]).collect())
    }
}

/// Subdivide every edge between two shared vertices twice.
pub fn to_template(pre: &FactorizedGraph) -> Result<TemplateGraph, TemplateError> {
    let (roles, _) = analyze(pre, false).map_err(TemplateError::NotPreTemplate)?;
    let mut n = pre.graph.n();
    let mut factors = Vec::new();
    let mut edges = Vec::new();
    let mut all_roles = roles.clone();
    for fac in &pre.factors {
        let mut f = vec![fac[0]];
        for w in fac.windows(2) {
            if roles[w[0]] == Role::Crossing && roles[w[1]] == Role::Crossing {
                f.extend([n, n + 1]);
                all_roles.extend([Role::Subdivision, Role::Subdivision]);
                n += 2;
            }
            f.push(w[1]);
        }
        edges.extend(f.windows(2).map(|w| (w[0], w[1])));
        factors.push(f);
    }
    let factorized = FactorizedGraph { graph: Graph::from_edges(n, &edges)?, factors };
    Ok(TemplateGraph { factorized, roles: all_roles })
}

/// All templates with `k` factors up to isomorphism, smallest first.
pub fn enumerate_templates(k: usize) -> Vec<TemplateGraph> {
    enumerate_pretemplates(k).iter().map(|p| to_template(p).expect("enumerated pre-template")).collect()
}

/// Injective vertex map of a graph into a template.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub map: Vec<usize>,
    /// Factor carrying every edge `(u, v)`, `u < v`.
    pub edge_factor: BTreeMap<(usize, usize), usize>,
}

#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and_count(&self, o: &Bits) -> u32 {
        self.0.iter().zip(&o.0).map(|(a, b)| (a & b).count_ones()).sum()
    }
    fn has(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
}

struct Search<'a> {
    f: &'a Graph,
    h: &'a TemplateGraph,
    /// (factor, position) pairs of every template vertex
    place: Vec<Vec<(usize, usize)>>,
    map: Vec<usize>,
    used: Vec<bool>,
    segs: Vec<((usize, usize), usize, Bits)>,
}

impl Search<'_> {
    fn segment(&self, x: usize, y: usize) -> Option<(usize, Bits)> {
        for &(fi, px) in &self.place[x] {
            if let Some(&(_, py)) = self.place[y].iter().find(|p| p.0 == fi) {
                let mut b = Bits::new(self.h.roles.len());
                for &v in &self.h.factors()[fi][px.min(py)..=px.max(py)] {
                    b.set(v);
                }
                return Some((fi, b));
            }
        }
        None
    }

    fn fits(&self, x: usize, new: &[((usize, usize), usize, Bits)]) -> bool {
        let _ = x;
        for (i, (e, _, b)) in new.iter().enumerate() {
            let others = self.segs.iter().chain(new[..i].iter());
            for (e2, _, b2) in others {
                let shared = [e2.0, e2.1].into_iter().find(|&s| s == e.0 || s == e.1);
                let common = b.and_count(b2);
                match shared {
                    Some(s) => {
                        if common != 1 || !b.has(self.map[s]) {
                            return false;
                        }
                    }
                    None => {
                        if common != 0 {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn next_vertex(&self) -> Option<usize> {
        (0..self.f.n()).filter(|&v| self.map[v] == usize::MAX).max_by_key(|&v| {
            let placed = self.f.neighbors(v).iter().filter(|&&w| self.map[w] != usize::MAX).count();
            (placed, self.f.degree(v), std::cmp::Reverse(v))
        })
    }

    fn run(&mut self) -> bool {
        let Some(v) = self.next_vertex() else { return true };
        let deg = self.f.degree(v);
        for x in 0..self.h.roles.len() {
            if self.used[x] {
                continue;
            }
            let ok_role = if deg == 1 {
                self.h.roles[x] != Role::Crossing
            } else {
                self.h.roles[x] == Role::Crossing && deg <= self.h.graph().degree(x)
            };
            if !ok_role {
                continue;
            }
            self.map[v] = x;
            let mut new = Vec::new();
            let mut ok = true;
            for &w in self.f.neighbors(v) {
                if self.map[w] == usize::MAX {
                    continue;
                }
                match self.segment(x, self.map[w]) {
                    Some((fi, b)) => new.push(((v.min(w), v.max(w)), fi, b)),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok && self.fits(x, &new) {
                self.used[x] = true;
                let len = self.segs.len();
                self.segs.extend(new);
                if self.run() {
                    return true;
                }
                self.segs.truncate(len);
                self.used[x] = false;
            }
            self.map[v] = usize::MAX;
        }
        false
    }
}

/// Search for an embedding of `f` into the template `h`: vertices of degree 1
/// go to tails or subdivision vertices, all others to crossings; every edge
/// follows a factor, adjacent edges share only their common vertex and
/// non-adjacent edges use disjoint stretches of the template.
pub fn find_embedding(f: &Graph, h: &TemplateGraph) -> Option<Embedding> {
    if f.degree_profile().isolated > 0 {
        return None;
    }
    let crossing_count = h.crossings().len();
    let high = (0..f.n()).filter(|&v| f.degree(v) >= 2).count();
    if high > crossing_count || f.n() - high > h.roles.len() - crossing_count {
        return None;
    }
    let mut place = vec![Vec::new(); h.roles.len()];
    for (i, fac) in h.factors().iter().enumerate() {
        for (p, &v) in fac.iter().enumerate() {
            place[v].push((i, p));
        }
    }
    let mut s = Search { f, h, place, map: vec![usize::MAX; f.n()], used: vec![false; h.roles.len()], segs: Vec::new() };
    if !s.run() {
        return None;
    }
    let edge_factor = s.segs.iter().map(|(e, fi, _)| (*e, *fi)).collect();
    Some(Embedding { map: s.map, edge_factor })
}

/// For every line, the maximal paths lying on it, in order along the line.
/// A vertex lying on a line without an incident edge there forms a path of
/// length zero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CombinatorialDescription {
    pub lines: Vec<Vec<Vec<usize>>>,
}

impl CombinatorialDescription {
    pub fn k(&self) -> usize {
        self.lines.len()
    }

    /// Every edge of `g` lies on exactly one path of exactly one line and
    /// each line carries a linear forest.
    pub fn is_consistent_with(&self, g: &Graph) -> bool {
        let mut seen = BTreeSet::new();
        for line in &self.lines {
            let mut on = BTreeSet::new();
            for path in line {
                for &v in path {
                    if v >= g.n() || !on.insert(v) {
                        return false;
                    }
                }
                for w in path.windows(2) {
                    if !g.has_edge(w[0], w[1]) || !seen.insert((w[0].min(w[1]), w[0].max(w[1]))) {
                        return false;
                    }
                }
            }
        }
        seen.len() == g.m()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (i, line) in self.lines.iter().enumerate() {
            s.push_str(&format!("line {}:", i + 1));
            for p in line {
                let vs: Vec<String> = p.iter().map(|v| (v + 1).to_string()).collect();
                s.push_str(&format!(" ({})", vs.join(" ")));
            }
            s.push('\n');
        }
        s
    }
}

pub fn description_from_embedding(f: &Graph, h: &TemplateGraph, emb: &Embedding) -> CombinatorialDescription {
    let mut lines = Vec::new();
    for (fi, fac) in h.factors().iter().enumerate() {
        let pos: BTreeMap<usize, usize> = fac.iter().enumerate().map(|(p, &v)| (v, p)).collect();
        let mut on: Vec<(usize, usize)> =
            (0..f.n()).filter_map(|v| pos.get(&emb.map[v]).map(|&p| (p, v))).collect();
        on.sort();
        let mut paths: Vec<Vec<usize>> = Vec::new();
        for (i, &(_, v)) in on.iter().enumerate() {
            let joined = i > 0 && {
                let u = on[i - 1].1;
                emb.edge_factor.get(&(u.min(v), u.max(v))) == Some(&fi)
            };
            if joined {
                paths.last_mut().unwrap().push(v);
            } else {
                paths.push(vec![v]);
            }
        }
        lines.push(paths);
    }
    CombinatorialDescription { lines }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_for_small_k() {
        assert!(enumerate_pretemplates(1).is_empty());
        assert_eq!(enumerate_pretemplates(2).len(), 1);
        assert_eq!(enumerate_pretemplates(3).len(), 3);
        let x = &enumerate_pretemplates(2)[0];
        assert_eq!((x.graph.n(), x.graph.m()), (5, 4));
    }

    #[test]
    fn templates_of_three_factors() {
        let ts = enumerate_templates(3);
        let sizes: Vec<(usize, usize)> = ts.iter().map(|t| (t.graph().n(), t.graph().m())).collect();
        // concurrent, two crossings, triangle
        assert_eq!(sizes, vec![(7, 6), (10, 9), (15, 15)]);
        for t in &ts {
            assert_eq!(TemplateGraph::from_factorized(t.factorized.clone()).unwrap(), *t);
        }
    }

    #[test]
    fn single_factor_is_not_a_template() {
        let f = FactorizedGraph { graph: Graph::path(2), factors: vec![vec![0, 1]] };
        assert!(matches!(TemplateGraph::from_factorized(f.clone()), Err(TemplateError::InvalidTemplate(_))));
        assert!(matches!(to_template(&f), Err(TemplateError::NotPreTemplate(_))));
    }

    #[test]
    fn star_embeds_into_cross() {
        let t = &enumerate_templates(2)[0];
        let star = Graph::complete_bipartite(1, 4);
        let e = find_embedding(&star, t).unwrap();
        assert_eq!(t.roles[e.map[0]], Role::Crossing);
        let d = description_from_embedding(&star, t, &e);
        assert!(d.is_consistent_with(&star));
        assert!(find_embedding(&Graph::complete_bipartite(1, 5), t).is_none());
    }

    #[test]
    fn triangle_needs_three_factors() {
        let tri = Graph::cycle(3);
        assert!(find_embedding(&tri, &enumerate_templates(2)[0]).is_none());
        let ts = enumerate_templates(3);
        let hits: Vec<bool> = ts.iter().map(|t| find_embedding(&tri, t).is_some()).collect();
        assert_eq!(hits, vec![false, false, true]);
    }

    #[test]
    fn relabelled_template_is_isomorphic() {
        let t = &enumerate_templates(3)[2];
        let n = t.graph().n();
        let perm: Vec<usize> = (0..n).rev().collect();
        let mut factors: Vec<Vec<usize>> = t.factors().iter().map(|f| f.iter().map(|&v| perm[v]).collect()).collect();
        factors.rotate_left(1);
        factors[0].reverse();
        let u = TemplateGraph::from_factorized(FactorizedGraph { graph: t.graph().relabel(&perm), factors }).unwrap();
        assert_eq!(u.canonical_form(), t.canonical_form());
        let iso = u.isomorphism_to(t).unwrap();
        for (a, b) in u.graph().edges() {
            assert!(t.graph().has_edge(iso[a], iso[b]));
        }
    }
}

//! Gadget constructions behind the hardness results, with the brute-force
//! oracles and checkers used to validate them at small scale.
//!
//! * tails: turning an arrangement graph into a graph whose line cover number
//!   recovers the arrangement;
//! * the Perles graph, whose drawings on ten lines need irrational
//!   coordinates, with an exact realization over ℚ(√5);
//! * positive planar cyclic 1-in-3-SAT via inequality, 2-clause and 3-clause
//!   gadgets;
//! * the two-plane instance `G*(Φ)` with intersection line gadgets, the
//!   blocking caterpillar and the extra blocking gadgets, together with a
//!   combinatorial two-plane witness.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::geom::{Line, Point, Realization};
use crate::graph::{is_planar, planar_embedding, validate_rotation, Graph, Rotation};
use crate::scalar::Scalar;

pub const DEFAULT_SOLVE_LIMIT: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("vertex {vertex} has degree {degree}, expected 2, 3 or 4")]
    BadDegrees { vertex: usize, degree: usize },
    #[error("not planar cyclic: {0}")]
    NotPlanarCyclic(String),
    #[error("{n} variables exceed the limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("assignment is not 1-in-3 satisfying")]
    NotSatisfying,
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Attach two tails to every degree-2 vertex and one to every degree-3
/// vertex; new vertices follow the old ones in order.
pub fn add_tails(g: &Graph) -> Result<Graph, ReductionError> {
    let mut h = g.clone();
    for v in 0..g.n() {
        let d = g.degree(v);
        if !(2..=4).contains(&d) {
            return Err(ReductionError::BadDegrees { vertex: v, degree: d });
        }
        for _ in d..4 {
            let t = h.add_vertex();
            h.add_edge(v, t).expect("fresh vertex");
        }
    }
    Ok(h)
}

/// The number of lines of a simple arrangement whose arrangement graph has
/// the counts of `g`: `ℓ(ℓ−1)/2` vertices, `ℓ(ℓ−2)` edges, degrees in [2,4].
pub fn check_arrangement_counts(g: &Graph) -> Option<usize> {
    if (0..g.n()).any(|v| !(2..=4).contains(&g.degree(v))) {
        return None;
    }
    (3..).take_while(|l| l * (l - 1) / 2 <= g.n()).find(|l| l * (l - 1) / 2 == g.n() && l * (l - 2) == g.m())
}

/// The Perles graph: big vertex `b` (0), the medium 10-cycle `m₁..m₁₀`
/// (1..10) joined to `b`, and small vertices `s₁..s₅` (11..15) with `sᵢ`
/// adjacent to `m₂ᵢ₋₁, m₂ᵢ, m₂ᵢ₊₁` (indices mod 10).
pub fn perles_graph() -> (Graph, Realization) {
    let mut e = Vec::new();
    for i in 1..=10 {
        e.push((0, i));
        e.push((i, i % 10 + 1));
    }
    for i in 1..=5 {
        for j in [2 * i - 1, 2 * i, 2 * i + 1] {
            e.push((10 + i, (j - 1) % 10 + 1));
        }
    }
    let g = Graph::from_edges(16, &e).expect("simple");
    (g.clone(), perles_realization(&g))
}

/// Corners of an affine image of the regular pentagon with coordinates in
/// ℚ(√5), scaled by 4.
fn pentagon() -> [Point; 5] {
    let r = Scalar::sqrt5();
    let one = Scalar::one();
    let h = Scalar::int(2) * r.clone() - Scalar::int(2);
    [
        Point::xy(Scalar::int(4), Scalar::zero()),
        Point::xy(&r - &one, Scalar::int(4)),
        Point::xy(-&r - one.clone(), h.clone()),
        Point::xy(-&r - one.clone(), -h),
        Point::xy(&r - &one, Scalar::int(-4)),
    ]
}

fn meet2(a: &Point, b: &Point, c: &Point, d: &Point) -> Point {
    crate::geom::line_intersection(&Line::new(a.clone(), b.clone()), &Line::new(c.clone(), d.clone()))
        .expect("pentagon lines meet")
}

fn perles_realization(g: &Graph) -> Realization {
    let p = pentagon();
    let mut pos = vec![Point::ints(&[0, 0]); 16];
    for j in 0..5 {
        pos[2 * j + 1] = p[j].clone();
        pos[2 * j + 2] = p[j].lerp(&p[(j + 1) % 5], &Scalar::ratio(1, 2));
    }
    for a in 0..5 {
        // the pentagram tip beyond side P_a P_{a+1}
        pos[11 + a] = meet2(&p[(a + 4) % 5], &p[a], &p[(a + 1) % 5], &p[(a + 2) % 5]);
    }
    let mut defs: Vec<(Point, Point)> = (0..5).map(|j| (p[j].clone(), p[(j + 1) % 5].clone())).collect();
    defs.extend((0..5).map(|j| (pos[0].clone(), p[j].clone())));
    realization_on(g, &pos, &defs)
}

/// Realization with the given vertex positions on the lines through the
/// given point pairs; spans run between the extreme vertices on each line.
fn realization_on(g: &Graph, pos: &[Point], defs: &[(Point, Point)]) -> Realization {
    let mut lines = Vec::new();
    let mut assignment = BTreeMap::new();
    for (i, (a, b)) in defs.iter().enumerate() {
        let l = Line::new(a.clone(), b.clone());
        let mut on: Vec<(Scalar, usize)> = (0..pos.len()).filter(|&v| l.contains(&pos[v])).map(|v| (l.param(&pos[v]), v)).collect();
        on.sort();
        lines.push(Line::new(pos[on[0].1].clone(), pos[on.last().unwrap().1].clone()));
        for (u, v) in g.edges() {
            if l.contains(&pos[u]) && l.contains(&pos[v]) {
                assignment.insert((u, v), i);
            }
        }
    }
    Realization { dim: 2, positions: pos.to_vec(), lines, assignment }
}

/// Indices (into the Perles graph) of the nine points of the Perles
/// configuration: centre, four corners and four pentagram tips.
pub const PERLES_POINTS: [usize; 9] = [0, 1, 3, 5, 7, 11, 13, 14, 15];

/// `K₃,₄` whose small side `v₁v₂v₃` (0..2) also forms a path; `u₁..u₄` are
/// 3..6.
pub fn intersection_line_gadget() -> Graph {
    let mut e = vec![(0, 1), (1, 2)];
    for v in 0..3 {
        for u in 3..7 {
            e.push((v, u));
        }
    }
    Graph::from_edges(7, &e).expect("simple")
}

/// A literal of a 3-SAT clause.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

/// A 3-SAT formula whose clauses, in order, form the clause cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeSat {
    pub variables: Vec<String>,
    pub clauses: Vec<Vec<Literal>>,
}

fn incidence_graph(nv: usize, clauses: &[Vec<usize>]) -> Graph {
    let nc = clauses.len();
    let mut g = Graph::new(nv + nc);
    for (i, c) in clauses.iter().enumerate() {
        for &x in c {
            if !g.has_edge(x, nv + i) {
                g.add_edge(x, nv + i).expect("in range");
            }
        }
    }
    if nc >= 2 {
        for i in 0..nc {
            let j = (i + 1) % nc;
            if i != j && !g.has_edge(nv + i, nv + j) {
                g.add_edge(nv + i, nv + j).expect("in range");
            }
        }
    }
    g
}

impl ThreeSat {
    /// Variables plus clause vertices, with the clause cycle.
    pub fn graph(&self) -> Graph {
        let cs: Vec<Vec<usize>> = self.clauses.iter().map(|c| c.iter().map(|l| l.var).collect()).collect();
        incidence_graph(self.variables.len(), &cs)
    }

    pub fn is_satisfied_by(&self, a: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|l| a[l.var] == l.positive))
    }

    /// Brute-force satisfiability; the first satisfying assignment in the
    /// order true < false.
    pub fn solve(&self) -> Option<Vec<bool>> {
        let n = self.variables.len();
        (0..1u64 << n).map(|m| (0..n).map(|i| m >> (n - 1 - i) & 1 == 0).collect::<Vec<_>>()).find(|a| self.is_satisfied_by(a))
    }
}

/// Text: `var <name>` lines and `clause <lit> <lit> [<lit>]` with `-x` for a
/// negated variable; `c` starts a comment.
pub fn parse_three_sat(text: &str) -> Result<ThreeSat, ReductionError> {
    let mut vars: Vec<String> = Vec::new();
    let mut clauses = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let err = |msg: String| ReductionError::Parse { line: i + 1, msg };
        let toks: Vec<&str> = raw.split_whitespace().collect();
        match toks.first().copied() {
            None | Some("c") => {}
            Some("var") if toks.len() == 2 => {
                if vars.iter().any(|v| v == toks[1]) {
                    return Err(err(format!("duplicate variable {}", toks[1])));
                }
                vars.push(toks[1].to_string());
            }
            Some("clause") => {
                let mut c = Vec::new();
                for t in &toks[1..] {
                    let (positive, name) = match t.strip_prefix('-') {
                        Some(n) => (false, n),
                        None => (true, *t),
                    };
                    let var = vars.iter().position(|v| v == name).ok_or_else(|| err(format!("unknown variable {name}")))?;
                    c.push(Literal { var, positive });
                }
                clauses.push(c);
            }
            _ => return Err(err(format!("unrecognized line {raw:?}"))),
        }
    }
    Ok(ThreeSat { variables: vars, clauses })
}

/// A positive 1-in-3-SAT instance whose clauses, in order, form a cycle, with
/// a planar rotation system of the variable–clause graph plus that cycle.
/// Graph vertices: variables first, then clauses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatInstance {
    pub variables: Vec<String>,
    pub clauses: Vec<[usize; 3]>,
    pub rotation: Rotation,
}

impl SatInstance {
    /// Instance with a computed rotation system.
    pub fn new(variables: Vec<String>, clauses: Vec<[usize; 3]>) -> Result<Self, ReductionError> {
        for (i, c) in clauses.iter().enumerate() {
            if c.iter().any(|&x| x >= variables.len()) || c[0] == c[1] || c[0] == c[2] || c[1] == c[2] {
                return Err(ReductionError::InvalidInstance(format!("clause {} needs three distinct variables", i + 1)));
            }
        }
        let g = incidence_graph(variables.len(), &clauses.iter().map(|c| c.to_vec()).collect::<Vec<_>>());
        let rotation = planar_embedding(&g).ok_or_else(|| ReductionError::NotPlanarCyclic("graph plus clause cycle is not planar".into()))?;
        Ok(SatInstance { variables, clauses, rotation })
    }

    pub fn graph(&self) -> Graph {
        incidence_graph(self.variables.len(), &self.clauses.iter().map(|c| c.to_vec()).collect::<Vec<_>>())
    }

    pub fn validate(&self) -> Result<(), ReductionError> {
        validate_rotation(&self.graph(), &self.rotation).map_err(|e| ReductionError::NotPlanarCyclic(e.to_string()))
    }

    pub fn is_satisfied_by(&self, a: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.iter().filter(|&&x| a[x]).count() == 1)
    }

    fn vertex_name(&self, v: usize) -> String {
        if v < self.variables.len() {
            self.variables[v].clone()
        } else {
            format!("clause:{}", v - self.variables.len() + 1)
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for v in &self.variables {
            writeln!(s, "var {v}").unwrap();
        }
        for c in &self.clauses {
            writeln!(s, "clause {} {} {}", self.variables[c[0]], self.variables[c[1]], self.variables[c[2]]).unwrap();
        }
        for (v, nb) in self.rotation.iter().enumerate() {
            let names: Vec<String> = nb.iter().map(|&w| self.vertex_name(w)).collect();
            writeln!(s, "rot {} {}", self.vertex_name(v), names.join(" ")).unwrap();
        }
        s
    }
}

/// Parse `var`, `clause a b c` and optional `rot <vertex> <neighbours…>`
/// lines (clause vertices are named `clause:<i>`); without rotation lines a
/// rotation system is computed.
pub fn parse_sat_instance(text: &str) -> Result<SatInstance, ReductionError> {
    let mut vars: Vec<String> = Vec::new();
    let mut clauses = Vec::new();
    let mut rots: Vec<(usize, Vec<String>)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let err = |msg: String| ReductionError::Parse { line: i + 1, msg };
        let toks: Vec<&str> = raw.split_whitespace().collect();
        match toks.first().copied() {
            None | Some("c") => {}
            Some("var") if toks.len() == 2 => vars.push(toks[1].to_string()),
            Some("clause") if toks.len() == 4 => {
                let mut c = [0; 3];
                for (j, t) in toks[1..].iter().enumerate() {
                    c[j] = vars.iter().position(|v| v == t).ok_or_else(|| err(format!("unknown variable {t}")))?;
                }
                clauses.push(c);
            }
            Some("rot") if toks.len() >= 2 => rots.push((i + 1, toks[1..].iter().map(|s| s.to_string()).collect())),
            _ => return Err(err(format!("unrecognized line {raw:?}"))),
        }
    }
    let mut inst = SatInstance::new(vars, clauses)?;
    if !rots.is_empty() {
        let n = inst.variables.len() + inst.clauses.len();
        let id = |name: &str| -> Option<usize> {
            match name.strip_prefix("clause:") {
                Some(i) => i.parse::<usize>().ok().filter(|&i| i >= 1 && i <= inst.clauses.len()).map(|i| inst.variables.len() + i - 1),
                None => inst.variables.iter().position(|v| v == name),
            }
        };
        let mut rot = vec![Vec::new(); n];
        for (line, names) in &rots {
            let ids: Option<Vec<usize>> = names.iter().map(|s| id(s)).collect();
            let ids = ids.ok_or_else(|| ReductionError::Parse { line: *line, msg: "unknown vertex".into() })?;
            rot[ids[0]] = ids[1..].to_vec();
        }
        inst.rotation = rot;
        inst.validate()?;
    }
    Ok(inst)
}

/// A run of consecutive clauses along the clause cycle.
type Block = Vec<[usize; 3]>;

/// `x ≠ y` by the clauses `axy, abc, bcd, acd` over the fresh `[a, b, c, d]`.
fn inequality([a, b, c, d]: [usize; 4], x: usize, y: usize) -> Block {
    vec![[a, x, y], [a, b, c], [b, c, d], [a, c, d]]
}

fn reversed(b: &Block, flip: bool) -> Block {
    let mut b = b.clone();
    if flip {
        b.reverse();
    }
    b
}

/// Fresh variables of one clause's gadgets, allocated in a fixed order.
struct ClauseVars {
    /// Per literal: the variable the gadget uses, and the inequality block
    /// tying a negated literal to its variable.
    lits: Vec<(usize, Option<Block>)>,
    /// `a b c` for two literals, `a q b u e c d r` for three.
    core: Vec<usize>,
    ineq: Vec<[usize; 4]>,
}

fn clause_vars(vars: &mut Vec<String>, phi: &ThreeSat, i: usize) -> ClauseVars {
    let mut fresh = |name: String| {
        vars.push(name);
        vars.len() - 1
    };
    let c = &phi.clauses[i];
    let p = format!("c{}", i + 1);
    let mut lits = Vec::new();
    for l in c {
        if l.positive {
            lits.push((l.var, None));
        } else {
            let q = format!("{p}:not:{}", phi.variables[l.var]);
            let nx = fresh(q.clone());
            let abcd = ["a", "b", "c", "d"].map(|s| fresh(format!("{q}:{s}")));
            lits.push((nx, Some(inequality(abcd, nx, l.var))));
        }
    }
    let names: &[&str] = if c.len() == 2 { &["a", "b", "c"] } else { &["a", "q", "b", "u", "e", "c", "d", "r"] };
    let core = names.iter().map(|s| fresh(format!("{p}:{s}"))).collect();
    let ineq = (1..=c.len()).map(|j| ["a", "b", "c", "d"].map(|s| fresh(format!("{p}:ne{j}:{s}")))).collect();
    ClauseVars { lits, core, ineq }
}

/// Every admissible order of the clause's gadget along the cycle: literal
/// roles permuted, each negation block before, inside or after the clause
/// gadget, and the blocks touching literals traversed either way.
fn clause_layouts(cv: &ClauseVars) -> Vec<Block> {
    let n = cv.lits.len();
    let perms: Vec<Vec<usize>> = if n == 2 { vec![vec![0, 1], vec![1, 0]] } else { vec![vec![0, 1, 2], vec![0, 2, 1], vec![1, 0, 2], vec![1, 2, 0], vec![2, 0, 1], vec![2, 1, 0]] };
    let negs: Vec<usize> = (0..n).filter(|&j| cv.lits[j].1.is_some()).collect();
    let mut out = Vec::new();
    for perm in perms {
        let v: Vec<usize> = perm.iter().map(|&j| cv.lits[j].0).collect();
        let parts: Vec<Block> = if n == 2 {
            let [a, b, c] = [cv.core[0], cv.core[1], cv.core[2]];
            vec![inequality(cv.ineq[0], b, v[0]), vec![[a, b, c]], inequality(cv.ineq[1], c, v[1])]
        } else {
            let [a, q, b, u, e, c, d, r] = [0, 1, 2, 3, 4, 5, 6, 7].map(|i| cv.core[i]);
            vec![
                vec![[a, u, v[0]], [a, b, q], [b, u, v[1]]],
                inequality(cv.ineq[0], u, e),
                inequality(cv.ineq[1], c, e),
                vec![[c, d, r]],
                inequality(cv.ineq[2], d, v[2]),
            ]
        };
        let last = parts.len() - 1;
        for flips in 0..4u32 {
            let mut gadget: Vec<Block> = parts.clone();
            gadget[0] = reversed(&parts[0], flips & 1 == 1);
            gadget[last] = reversed(&parts[last], flips & 2 == 2);
            // each negation block goes before (0), after the first block (1)
            // or after the gadget (2)
            for slots in 0..3usize.pow(negs.len() as u32) {
                let slot = |k: usize| slots / 3usize.pow(k as u32) % 3;
                let mut seq: Block = Vec::new();
                for (k, &j) in negs.iter().enumerate() {
                    if slot(k) == 0 {
                        seq.extend(cv.lits[j].1.clone().unwrap());
                    }
                }
                seq.extend(gadget[0].iter());
                for (k, &j) in negs.iter().enumerate() {
                    if slot(k) == 1 {
                        seq.extend(cv.lits[j].1.clone().unwrap());
                    }
                }
                for g in &gadget[1..] {
                    seq.extend(g.iter());
                }
                for (k, &j) in negs.iter().enumerate() {
                    if slot(k) == 2 {
                        seq.extend(cv.lits[j].1.clone().unwrap());
                    }
                }
                out.push(seq);
            }
        }
    }
    out
}

/// Equivalent positive planar cyclic 1-in-3-SAT instance: negated literals
/// become fresh variables tied by an inequality gadget, 2-clauses use the
/// `a b c` gadget with `b ≠ x`, `c ≠ y`, 3-clauses the gadget
/// `aux, abq, buy, u≠e, c≠e, cdr, d≠z`. Clauses are replaced one at a time,
/// each by the first layout of its gadgets that keeps the graph with the
/// clause cycle planar.
pub fn build_one_in_three(phi: &ThreeSat) -> Result<SatInstance, ReductionError> {
    for (i, c) in phi.clauses.iter().enumerate() {
        let vs: BTreeSet<usize> = c.iter().map(|l| l.var).collect();
        if !(2..=3).contains(&c.len()) || vs.len() != c.len() || c.iter().any(|l| l.var >= phi.variables.len()) {
            return Err(ReductionError::InvalidInstance(format!("clause {} needs 2 or 3 distinct variables", i + 1)));
        }
    }
    if !is_planar(&phi.graph()) {
        return Err(ReductionError::NotPlanarCyclic("input graph plus clause cycle is not planar".into()));
    }
    let mut vars = phi.variables.clone();
    let mut done: Vec<[usize; 3]> = Vec::new();
    for i in 0..phi.clauses.len() {
        let cv = clause_vars(&mut vars, phi, i);
        let pending: Vec<Vec<usize>> = phi.clauses[i + 1..].iter().map(|c| c.iter().map(|l| l.var).collect()).collect();
        let chosen = clause_layouts(&cv).into_iter().find(|seq| {
            let mut cs: Vec<Vec<usize>> = done.iter().chain(seq.iter()).map(|c| c.to_vec()).collect();
            cs.extend(pending.iter().cloned());
            is_planar(&incidence_graph(vars.len(), &cs))
        });
        let seq = chosen.ok_or_else(|| ReductionError::NotPlanarCyclic(format!("no planar layout for the gadgets of clause {}", i + 1)))?;
        done.extend(seq);
    }
    let g = incidence_graph(vars.len(), &done.iter().map(|c| c.to_vec()).collect::<Vec<_>>());
    let rotation = planar_embedding(&g).expect("checked planar");
    Ok(SatInstance { variables: vars, clauses: done, rotation })
}

/// First 1-in-3 satisfying assignment in the order true < false.
pub fn one_in_three_solve(phi: &SatInstance) -> Result<Option<Vec<bool>>, ReductionError> {
    one_in_three_solve_with_limit(phi, DEFAULT_SOLVE_LIMIT)
}

pub fn one_in_three_solve_with_limit(phi: &SatInstance, limit: usize) -> Result<Option<Vec<bool>>, ReductionError> {
    let n = phi.variables.len();
    if n > limit {
        return Err(ReductionError::TooLarge { n, limit });
    }
    let mut occ = vec![Vec::new(); n];
    for (i, c) in phi.clauses.iter().enumerate() {
        for &x in c {
            occ[x].push(i);
        }
    }
    let mut a: Vec<Option<bool>> = vec![None; n];
    Ok(dfs(phi, &occ, &mut a).then(|| a.into_iter().map(|x| x.unwrap_or(false)).collect()))
}

/// Unit propagation: a true variable falsifies its clause partners, two
/// false variables force the third. Returns false on a conflict.
fn propagate(phi: &SatInstance, occ: &[Vec<usize>], a: &mut [Option<bool>], start: usize, trail: &mut Vec<usize>) -> bool {
    let mut queue = vec![start];
    while let Some(x) = queue.pop() {
        for &ci in &occ[x] {
            let c = phi.clauses[ci];
            let t = c.iter().filter(|&&y| a[y] == Some(true)).count();
            let f = c.iter().filter(|&&y| a[y] == Some(false)).count();
            if t > 1 || f == 3 {
                return false;
            }
            let forced = if t == 1 { Some(false) } else if f == 2 { Some(true) } else { None };
            if let Some(val) = forced {
                for &y in &c {
                    if a[y].is_none() {
                        a[y] = Some(val);
                        trail.push(y);
                        queue.push(y);
                    }
                }
            }
        }
    }
    true
}

fn dfs(phi: &SatInstance, occ: &[Vec<usize>], a: &mut Vec<Option<bool>>) -> bool {
    let Some(x) = a.iter().position(Option::is_none) else { return true };
    for val in [true, false] {
        let mut trail = vec![x];
        a[x] = Some(val);
        if propagate(phi, occ, a, x, &mut trail) && dfs(phi, occ, a) {
            return true;
        }
        for y in trail {
            a[y] = None;
        }
    }
    false
}

/// A graph whose vertices carry names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedGraph {
    pub graph: Graph,
    pub names: Vec<String>,
}

impl NamedGraph {
    fn add(&mut self, name: String) -> usize {
        self.names.push(name);
        self.graph.add_vertex()
    }

    fn edge(&mut self, u: usize, v: usize) {
        self.graph.add_edge(u, v).expect("construction is simple");
    }

    pub fn id(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// The graph format with a `c name <id> <name>` comment per vertex.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (i, n) in self.names.iter().enumerate() {
            writeln!(s, "c name {} {n}", i + 1).unwrap();
        }
        s + &crate::graph::format_graph(&self.graph)
    }
}

/// `G*(Φ)`: per clause a path `clause:i:1..3`; per occurrence `j` of a
/// variable `x` a vertex `var:x:w:j` joined to the clause's three vertices
/// and to `var:x:v:j`, the `v` vertices of `x` forming a path and each
/// carrying an intersection line gadget (`gadget:x:j:…`, the `v` vertex
/// playing `u₁`); and the blocking caterpillar `cat:i` joined to clause `i`
/// and to `cat:i+1`.
pub fn build_plane_cover_instance(phi: &SatInstance) -> NamedGraph {
    let mut g = NamedGraph { graph: Graph::new(0), names: Vec::new() };
    let n = phi.clauses.len();
    let mut cl = Vec::new();
    for i in 1..=n {
        let c: Vec<usize> = (1..=3).map(|j| g.add(format!("clause:{i}:{j}"))).collect();
        g.edge(c[0], c[1]);
        g.edge(c[1], c[2]);
        cl.push(c);
    }
    for (x, name) in phi.variables.iter().enumerate() {
        let occ: Vec<usize> = (0..n).filter(|&i| phi.clauses[i].contains(&x)).collect();
        let mut prev = None;
        for (j, &ci) in occ.iter().enumerate() {
            let j = j + 1;
            let w = g.add(format!("var:{name}:w:{j}"));
            let v = g.add(format!("var:{name}:v:{j}"));
            for &c in &cl[ci].clone() {
                g.edge(w, c);
            }
            g.edge(w, v);
            if let Some(p) = prev {
                g.edge(p, v);
            }
            prev = Some(v);
            let gv: Vec<usize> = ["v1", "v2", "v3"].iter().map(|s| g.add(format!("gadget:{name}:{j}:{s}"))).collect();
            let gu: Vec<usize> = ["u2", "u3", "u4"].iter().map(|s| g.add(format!("gadget:{name}:{j}:{s}"))).collect();
            g.edge(gv[0], gv[1]);
            g.edge(gv[1], gv[2]);
            for &a in &gv {
                g.edge(a, v);
                for &u in &gu {
                    g.edge(a, u);
                }
            }
        }
    }
    let mut prev = None;
    for (i, c) in cl.iter().enumerate() {
        let b = g.add(format!("cat:{}", i + 1));
        for &x in c {
            g.edge(b, x);
        }
        if let Some(p) = prev {
            g.edge(p, b);
        }
        prev = Some(b);
    }
    g
}

/// Add `extra` blocking gadgets: two adjacent vertices `block:t:1`,
/// `block:t:2`, each joined to every clause vertex.
pub fn blocking_gadget(base: &NamedGraph, extra: usize) -> NamedGraph {
    let mut g = base.clone();
    let clause: Vec<usize> = (0..g.names.len()).filter(|&v| g.names[v].starts_with("clause:")).collect();
    for t in 1..=extra {
        let a = g.add(format!("block:{t}:1"));
        let b = g.add(format!("block:{t}:2"));
        g.edge(a, b);
        for &c in &clause {
            g.edge(a, c);
            g.edge(b, c);
        }
    }
    g
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Upper,
    Lower,
}

/// Where a vertex of `G*(Φ)` goes: the intersection line or a half-plane of
/// one of the two planes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Line,
    PlaneT(Side),
    PlaneF(Side),
}

impl Place {
    fn plane(self) -> Option<bool> {
        match self {
            Place::Line => None,
            Place::PlaneT(_) => Some(true),
            Place::PlaneF(_) => Some(false),
        }
    }
}

/// Placement of every vertex of `G*(Φ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneWitness {
    pub place: Vec<Place>,
}

impl PlaneWitness {
    fn select(&self, f: impl Fn(Place) -> bool) -> Vec<usize> {
        (0..self.place.len()).filter(|&v| f(self.place[v])).collect()
    }

    pub fn intersection_line(&self) -> Vec<usize> {
        self.select(|p| p == Place::Line)
    }

    pub fn plane_t(&self) -> Vec<usize> {
        self.select(|p| p.plane() == Some(true))
    }

    pub fn plane_f(&self) -> Vec<usize> {
        self.select(|p| p.plane() == Some(false))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Kind {
    Clause(usize),
    Var(String),
    Gadget(String),
    Cat,
    Other,
}

fn kind(name: &str) -> Kind {
    let parts: Vec<&str> = name.split(':').collect();
    match parts.as_slice() {
        ["clause", i, _] => i.parse().map_or(Kind::Other, Kind::Clause),
        ["var", rest @ ..] if rest.len() >= 3 => Kind::Var(rest[..rest.len() - 2].join(":")),
        ["gadget", rest @ ..] if rest.len() >= 3 => Kind::Gadget(rest[..rest.len() - 2].join(":")),
        ["cat", _] => Kind::Cat,
        _ => Kind::Other,
    }
}

/// Witness for a 1-in-3 satisfying assignment: clause vertices on the line,
/// true variables and the caterpillar on plane T (variables above, the
/// caterpillar below), false variables on plane F with the two false
/// neighbours of every clause on opposite sides. Gadget vertices follow
/// their variable.
pub fn two_plane_witness(phi: &SatInstance, assignment: &[bool]) -> Result<PlaneWitness, ReductionError> {
    if assignment.len() != phi.variables.len() || !phi.is_satisfied_by(assignment) {
        return Err(ReductionError::NotSatisfying);
    }
    let g = build_plane_cover_instance(phi);
    let value: BTreeMap<&str, bool> = phi.variables.iter().map(String::as_str).zip(assignment.iter().copied()).collect();
    let mut place = Vec::with_capacity(g.names.len());
    for name in &g.names {
        place.push(match kind(name) {
            Kind::Clause(_) | Kind::Other => Place::Line,
            Kind::Cat => Place::PlaneT(Side::Lower),
            Kind::Var(x) | Kind::Gadget(x) => {
                if value[x.as_str()] {
                    Place::PlaneT(Side::Upper)
                } else {
                    Place::PlaneF(Side::Upper)
                }
            }
        });
    }
    // the second false neighbour of every clause goes below
    for i in 1..=phi.clauses.len() {
        let c = g.id(&format!("clause:{i}:1")).expect("clause vertex");
        let falses: Vec<usize> = g.graph.neighbors(c).iter().copied().filter(|&w| matches!(kind(&g.names[w]), Kind::Var(_)) && place[w].plane() == Some(false)).collect();
        if let Some(&w) = falses.iter().max() {
            if falses.len() == 2 {
                place[w] = Place::PlaneF(Side::Lower);
            }
        }
    }
    Ok(PlaneWitness { place })
}

/// Combinatorial validity of a two-plane witness for `G*(Φ)`:
/// (i) exactly the clause vertices lie on the intersection line;
/// (ii) all vertices of a variable (with its gadgets) share a plane;
/// (iii) the caterpillar lies on plane T;
/// (iv) on each plane the non-gadget part plus the clause vertices and a
///      path through them in cycle order is planar;
/// (v) every clause has at most one variable neighbour on T, two on F;
/// (vi) every clause has at most one neighbour in each half-plane.
pub fn verify_witness(g: &NamedGraph, w: &PlaneWitness) -> bool {
    let n = g.names.len();
    if w.place.len() != n {
        return false;
    }
    let kinds: Vec<Kind> = g.names.iter().map(|s| kind(s)).collect();
    // (i)
    if (0..n).any(|v| (w.place[v] == Place::Line) != matches!(kinds[v], Kind::Clause(_))) {
        return false;
    }
    // (ii)
    let mut plane_of: BTreeMap<&str, bool> = BTreeMap::new();
    for v in 0..n {
        if let Kind::Var(x) | Kind::Gadget(x) = &kinds[v] {
            let p = w.place[v].plane().expect("not on the line by (i)");
            if *plane_of.entry(x.as_str()).or_insert(p) != p {
                return false;
            }
        }
    }
    // (iii)
    if (0..n).any(|v| kinds[v] == Kind::Cat && w.place[v].plane() != Some(true)) {
        return false;
    }
    // (iv)
    let mut clause_order: Vec<(usize, &str, usize)> =
        (0..n).filter_map(|v| if let Kind::Clause(i) = kinds[v] { Some((i, g.names[v].as_str(), v)) } else { None }).collect();
    clause_order.sort();
    for plane in [true, false] {
        let keep: Vec<usize> = (0..n)
            .filter(|&v| matches!(kinds[v], Kind::Clause(_)) || (!matches!(kinds[v], Kind::Gadget(_)) && w.place[v].plane() == Some(plane)))
            .collect();
        let index: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut h = g.graph.induced(&keep);
        for pair in clause_order.windows(2) {
            let (a, b) = (index[&pair[0].2], index[&pair[1].2]);
            if !h.has_edge(a, b) {
                h.add_edge(a, b).expect("distinct");
            }
        }
        if !is_planar(&h) {
            return false;
        }
    }
    // (v), (vi)
    let clauses: BTreeSet<usize> = kinds.iter().filter_map(|k| if let Kind::Clause(i) = k { Some(*i) } else { None }).collect();
    for i in clauses {
        let members: Vec<usize> = (0..n).filter(|&v| kinds[v] == Kind::Clause(i)).collect();
        let nb: BTreeSet<usize> = members
            .iter()
            .flat_map(|&c| g.graph.neighbors(c).iter().copied())
            .filter(|&x| matches!(kinds[x], Kind::Var(_) | Kind::Cat))
            .collect();
        let vars_on = |p: bool| nb.iter().filter(|&&x| matches!(kinds[x], Kind::Var(_)) && w.place[x].plane() == Some(p)).count();
        if vars_on(true) > 1 || vars_on(false) > 2 {
            return false;
        }
        let mut per_side: BTreeMap<Place, usize> = BTreeMap::new();
        for &x in &nb {
            *per_side.entry(w.place[x]).or_default() += 1;
        }
        if per_side.values().any(|&c| c > 1) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{collinear, verify_cover};

    fn inst(nv: usize, clauses: &[[usize; 3]]) -> SatInstance {
        SatInstance::new((0..nv).map(|i| format!("x{i}")).collect(), clauses.to_vec()).unwrap()
    }

    #[test]
    fn tails() {
        let tri = Graph::cycle(3);
        let t = add_tails(&tri).unwrap();
        assert_eq!((t.n(), t.degree_profile().deg1), (9, 6));
        assert!(matches!(add_tails(&Graph::path(3)), Err(ReductionError::BadDegrees { vertex: 0, degree: 1 })));
        let k4 = add_tails(&Graph::complete(4)).unwrap();
        assert_eq!(k4.n(), 8);
        let g = Graph::complete_bipartite(1, 4).disjoint_union(&Graph::cycle(3));
        assert!(add_tails(&g).is_err());
    }

    #[test]
    fn counts() {
        assert_eq!(check_arrangement_counts(&Graph::cycle(3)), Some(3));
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 3), (3, 4), (1, 3), (1, 4), (2, 4), (4, 5)]).unwrap();
        assert_eq!(check_arrangement_counts(&g), None); // a degree-1 vertex
        assert_eq!(check_arrangement_counts(&Graph::cycle(4)), None);
    }

    #[test]
    fn perles() {
        let (g, r) = perles_graph();
        assert_eq!((g.n(), g.m()), (16, 35));
        let mut degs: Vec<usize> = (0..16).map(|v| g.degree(v)).collect();
        degs.sort();
        assert_eq!(degs, [vec![3; 5], vec![4; 5], vec![5; 5], vec![10]].concat());
        assert_eq!(r.lines.len(), 10);
        assert!(verify_cover(&g, &r).is_valid(), "{:?}", verify_cover(&g, &r).violations);
        assert!(r.positions.iter().any(|p| p.0.iter().any(|c| !c.is_rational())));
        let pts: Vec<&Point> = PERLES_POINTS.iter().map(|&v| &r.positions[v]).collect();
        let mut triples = 0;
        for a in 0..9 {
            for b in a + 1..9 {
                for c in b + 1..9 {
                    triples += collinear(pts[a], pts[b], pts[c]) as usize;
                }
            }
        }
        // nine points on nine lines, three lines of four points and six of three
        assert!(triples >= 9, "{triples}");
    }

    #[test]
    fn gadget() {
        let g = intersection_line_gadget();
        assert_eq!(g.m(), 14);
        let degs: Vec<usize> = (0..7).map(|v| g.degree(v)).collect();
        assert_eq!(degs, vec![5, 6, 5, 3, 3, 3, 3]);
        assert!(!is_planar(&g));
    }

    #[test]
    fn solver_examples() {
        assert_eq!(one_in_three_solve(&inst(3, &[[0, 1, 2]])).unwrap(), Some(vec![true, false, false]));
        assert_eq!(one_in_three_solve(&inst(4, &[[0, 1, 2], [0, 1, 3]])).unwrap(), Some(vec![true, false, false, false]));
        let k4 = inst(4, &[[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]);
        assert_eq!(one_in_three_solve(&k4).unwrap(), None);
        let big = SatInstance::new((0..25).map(|i| i.to_string()).collect(), vec![[0, 1, 2]]).unwrap();
        assert!(matches!(one_in_three_solve(&big), Err(ReductionError::TooLarge { n: 25, limit: 24 })));
    }

    #[test]
    fn gadget_shapes() {
        let phi = ThreeSat {
            variables: vec!["x".into(), "y".into()],
            clauses: vec![vec![Literal { var: 0, positive: true }, Literal { var: 1, positive: true }]],
        };
        let out = build_one_in_three(&phi).unwrap();
        assert_eq!(out.variables.len(), 2 + 3 + 8);
        assert_eq!(out.clauses.len(), 1 + 8);
        out.validate().unwrap();
    }

    #[test]
    fn plane_instance_counts() {
        let phi = inst(3, &[[0, 1, 2]]);
        let g = build_plane_cover_instance(&phi);
        assert_eq!(g.graph.n(), 28);
        assert_eq!(g.names.iter().filter(|n| n.starts_with("cat:")).count(), 1);
        let b = blocking_gadget(&g, 1);
        assert_eq!((b.graph.n(), b.graph.m()), (30, g.graph.m() + 7));
        assert_eq!(blocking_gadget(&g, 0), g);
    }

    #[test]
    fn witness_examples() {
        let phi = inst(3, &[[0, 1, 2]]);
        let g = build_plane_cover_instance(&phi);
        let w = two_plane_witness(&phi, &[true, false, false]).unwrap();
        assert!(verify_witness(&g, &w));
        let mut all_t = w.clone();
        for v in 0..g.names.len() {
            if let Place::PlaneF(s) = all_t.place[v] {
                all_t.place[v] = Place::PlaneT(s);
            }
        }
        assert!(!verify_witness(&g, &all_t));
        let mut cat_f = w.clone();
        cat_f.place[g.id("cat:1").unwrap()] = Place::PlaneF(Side::Lower);
        assert!(!verify_witness(&g, &cat_f));
        assert_eq!(two_plane_witness(&phi, &[true, true, false]), Err(ReductionError::NotSatisfying));
    }

    fn lit(var: usize, positive: bool) -> Literal {
        Literal { var, positive }
    }

    /// Plain backtracking: does the partial assignment extend to a 1-in-3
    /// satisfying one?
    fn extends(phi: &SatInstance, a: &mut Vec<Option<bool>>) -> bool {
        for c in &phi.clauses {
            let t = c.iter().filter(|&&x| a[x] == Some(true)).count();
            let f = c.iter().filter(|&&x| a[x] == Some(false)).count();
            if t > 1 || f == 3 {
                return false;
            }
        }
        let Some(x) = a.iter().position(Option::is_none) else { return true };
        for val in [false, true] {
            a[x] = Some(val);
            if extends(phi, a) {
                a[x] = None;
                return true;
            }
        }
        a[x] = None;
        false
    }

    fn check_equivalence(phi: &ThreeSat) {
        let out = build_one_in_three(phi).unwrap();
        out.validate().unwrap();
        let n = phi.variables.len();
        for m in 0..1u32 << n {
            let alpha: Vec<bool> = (0..n).map(|i| m >> i & 1 == 1).collect();
            let mut a = vec![None; out.variables.len()];
            for i in 0..n {
                a[i] = Some(alpha[i]);
            }
            assert_eq!(extends(&out, &mut a), phi.is_satisfied_by(&alpha), "{phi:?} {alpha:?}");
        }
        let solved = one_in_three_solve_with_limit(&out, 128).unwrap();
        assert_eq!(solved.is_some(), phi.solve().is_some());
    }

    #[test]
    fn gadgets_preserve_satisfying_assignments() {
        for len in [2, 3] {
            for signs in 0..1u32 << len {
                check_equivalence(&ThreeSat {
                    variables: (0..len).map(|i| format!("x{i}")).collect(),
                    clauses: vec![(0..len).map(|i| lit(i, signs >> i & 1 == 1)).collect()],
                });
            }
        }
        // two clauses sharing variables, including an unsatisfiable pair
        check_equivalence(&ThreeSat {
            variables: vec!["x".into(), "y".into(), "z".into()],
            clauses: vec![vec![lit(0, true), lit(1, false), lit(2, true)], vec![lit(0, false), lit(1, true)]],
        });
        check_equivalence(&ThreeSat { variables: vec!["x".into(), "y".into()], clauses: vec![vec![lit(0, true), lit(1, true)], vec![lit(0, false), lit(1, false)]] });
        let unsat = ThreeSat {
            variables: vec!["x".into(), "y".into()],
            clauses: vec![vec![lit(0, true), lit(1, true)], vec![lit(0, false), lit(1, true)], vec![lit(0, true), lit(1, false)], vec![lit(0, false), lit(1, false)]],
        };
        assert!(unsat.solve().is_none());
        check_equivalence(&unsat);
    }

    #[test]
    fn parse_round_trip() {
        let phi = parse_three_sat("c demo\nvar x\nvar y\nvar z\nclause x -y z\n").unwrap();
        assert_eq!(phi.clauses[0][1], lit(1, false));
        assert!(parse_three_sat("var x\nclause x w\n").is_err());
        let out = build_one_in_three(&phi).unwrap();
        let back = parse_sat_instance(&out.to_text()).unwrap();
        assert_eq!(back, out);
    }

    /// Some placement with variable planes given by `alpha` passes the
    /// checker; sides of `w` and caterpillar vertices are enumerated.
    fn witness_exists(g: &NamedGraph, phi: &SatInstance, alpha: &[bool]) -> bool {
        let val: BTreeMap<&str, bool> = phi.variables.iter().map(String::as_str).zip(alpha.iter().copied()).collect();
        let free: Vec<usize> = (0..g.names.len()).filter(|&v| matches!(kind(&g.names[v]), Kind::Cat) || g.names[v].contains(":w:")).collect();
        let base: Vec<Place> = g
            .names
            .iter()
            .map(|n| match kind(n) {
                Kind::Var(x) | Kind::Gadget(x) if !val[x.as_str()] => Place::PlaneF(Side::Upper),
                Kind::Clause(_) | Kind::Other => Place::Line,
                _ => Place::PlaneT(Side::Upper),
            })
            .collect();
        (0..1u32 << free.len()).any(|m| {
            let mut place = base.clone();
            for (b, &v) in free.iter().enumerate() {
                if m >> b & 1 == 1 {
                    place[v] = match place[v] {
                        Place::PlaneT(_) => Place::PlaneT(Side::Lower),
                        Place::PlaneF(_) => Place::PlaneF(Side::Lower),
                        Place::Line => Place::Line,
                    };
                }
            }
            verify_witness(g, &PlaneWitness { place })
        })
    }

    #[test]
    fn witnesses_match_assignments() {
        for phi in [inst(3, &[[0, 1, 2]]), inst(4, &[[0, 1, 2], [0, 1, 3]]), inst(5, &[[0, 1, 2], [2, 3, 4]])] {
            let g = build_plane_cover_instance(&phi);
            let n = phi.variables.len();
            for m in 0..1u32 << n {
                let alpha: Vec<bool> = (0..n).map(|i| m >> i & 1 == 1).collect();
                assert_eq!(witness_exists(&g, &phi, &alpha), phi.is_satisfied_by(&alpha), "{alpha:?}");
                if phi.is_satisfied_by(&alpha) {
                    assert!(verify_witness(&g, &two_plane_witness(&phi, &alpha).unwrap()));
                }
            }
        }
    }
}

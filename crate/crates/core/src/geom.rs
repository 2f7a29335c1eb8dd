//! Exact geometric predicates and certification of line covers.
//!
//! A realization places every vertex at an exact point, lists lines as pairs
//! of points, and assigns each edge to a line. A line's two points must span
//! the drawn part of the line: every vertex of an edge assigned to it lies on
//! the closed segment between them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::graph::Graph;
use crate::scalar::Scalar;
use crate::templates::{CombinatorialDescription, FactorizedGraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("dimension must be 2 or 3, got {0}")]
    BadDimension(usize),
    #[error("points have mismatched dimensions")]
    DimensionMismatch,
    #[error("line {0} is degenerate")]
    DegenerateLine(usize),
    #[error("lines {0} and {1} coincide")]
    CoincidentLines(usize, usize),
    #[error("arrangement is not simple: {0}")]
    NotSimple(String),
    #[error("line {0} meets no other line")]
    IsolatedLine(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(pub Vec<Scalar>);

impl Point {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn xy(x: Scalar, y: Scalar) -> Self {
        Point(vec![x, y])
    }

    pub fn ints(c: &[i64]) -> Self {
        Point(c.iter().map(|&x| Scalar::int(x)).collect())
    }

    pub fn sub(&self, o: &Point) -> Vec<Scalar> {
        self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect()
    }

    pub fn add_scaled(&self, d: &[Scalar], t: &Scalar) -> Point {
        Point(self.0.iter().zip(d).map(|(a, b)| a + &(b * t)).collect())
    }

    /// The point dividing `[self, o]` in ratio `t : 1 − t`.
    pub fn lerp(&self, o: &Point, t: &Scalar) -> Point {
        self.add_scaled(&o.sub(self), t)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(Scalar::to_f64).collect()
    }

    /// The same point with z = 0 appended when two-dimensional.
    pub fn lift3(&self) -> Point {
        let mut c = self.0.clone();
        c.resize(3, Scalar::zero());
        Point(c)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// The line through `p` and `q`; as part of a realization the segment `pq`
/// must contain everything drawn on the line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Line {
    pub p: Point,
    pub q: Point,
}

impl Line {
    pub fn new(p: Point, q: Point) -> Self {
        Line { p, q }
    }

    pub fn direction(&self) -> Vec<Scalar> {
        self.q.sub(&self.p)
    }

    pub fn contains(&self, x: &Point) -> bool {
        collinear(x, &self.p, &self.q)
    }

    /// Affine parameter of a point of the line (0 at `p`, 1 at `q`).
    pub fn param(&self, x: &Point) -> Scalar {
        let d = self.direction();
        dot(&x.sub(&self.p), &d) / dot(&d, &d)
    }

    pub fn at(&self, t: &Scalar) -> Point {
        self.p.add_scaled(&self.direction(), t)
    }

    pub fn same_line(&self, o: &Line) -> bool {
        self.contains(&o.p) && self.contains(&o.q)
    }
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).fold(Scalar::zero(), |s, (x, y)| s + x * y)
}

pub fn cross(a: &[Scalar], b: &[Scalar]) -> [Scalar; 3] {
    let g = |v: &[Scalar], i: usize| v.get(i).cloned().unwrap_or_default();
    let (a0, a1, a2) = (g(a, 0), g(a, 1), g(a, 2));
    let (b0, b1, b2) = (g(b, 0), g(b, 1), g(b, 2));
    [&a1 * &b2 - &a2 * &b1, &a2 * &b0 - &a0 * &b2, &a0 * &b1 - &a1 * &b0]
}

fn sqdist(a: &Point, b: &Point) -> Scalar {
    let d = a.sub(b);
    dot(&d, &d)
}

/// Twice the signed area of the planar triangle `abc`.
pub fn orient(a: &Point, b: &Point, c: &Point) -> Scalar {
    let (u, v) = (b.sub(a), c.sub(a));
    &u[0] * &v[1] - &u[1] * &v[0]
}

pub fn collinear(a: &Point, b: &Point, c: &Point) -> bool {
    if a.dim() == 2 {
        orient(a, b, c).is_zero()
    } else {
        cross(&b.sub(a), &c.sub(a)).iter().all(Scalar::is_zero)
    }
}

/// Sign of the determinant with rows `(xᵢ, yᵢ, 1)`.
pub fn orient3(a: &Point, b: &Point, c: &Point) -> i32 {
    orient(a, b, c).signum()
}

/// `x` lies on the closed segment `[a, b]`.
pub fn on_segment(x: &Point, a: &Point, b: &Point) -> bool {
    let ab = sqdist(a, b);
    collinear(x, a, b) && sqdist(a, x) <= ab && sqdist(x, b) <= ab
}

/// The closed segments `[a, b]` and `[c, d]` share a point.
pub fn segments_intersect(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    if a.dim() == 2 {
        return intersect2(a, b, c, d);
    }
    let (u, v, w) = (b.sub(a), c.sub(a), d.sub(a));
    let n = cross(&u, &v);
    if !dot(&n, &w).is_zero() {
        return false; // not coplanar
    }
    let normals = [n, cross(&u, &w), cross(&v, &w)];
    let drop = normals.iter().flat_map(|n| (0..3).find(|&i| !n[i].is_zero())).next();
    match drop {
        Some(i) => {
            let pr = |p: &Point| Point((0..3).filter(|&j| j != i).map(|j| p.0[j].clone()).collect());
            intersect2(&pr(a), &pr(b), &pr(c), &pr(d))
        }
        None => {
            // all four points on one line (or coincident)
            let pts = [a, b, c, d];
            let axis = (0..3).find(|&j| pts.iter().any(|p| p.0[j] != a.0[j]));
            let Some(j) = axis else { return true };
            let (lo1, hi1) = minmax(&a.0[j], &b.0[j]);
            let (lo2, hi2) = minmax(&c.0[j], &d.0[j]);
            lo1 <= hi2 && lo2 <= hi1
        }
    }
}

pub fn segments_disjoint(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    !segments_intersect(a, b, c, d)
}

fn minmax<'a>(x: &'a Scalar, y: &'a Scalar) -> (&'a Scalar, &'a Scalar) {
    if x <= y {
        (x, y)
    } else {
        (y, x)
    }
}

fn intersect2(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let o1 = orient(a, b, c).signum();
    let o2 = orient(a, b, d).signum();
    let o3 = orient(c, d, a).signum();
    let o4 = orient(c, d, b).signum();
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    (o1 == 0 && on_segment(c, a, b))
        || (o2 == 0 && on_segment(d, a, b))
        || (o3 == 0 && on_segment(a, c, d))
        || (o4 == 0 && on_segment(b, c, d))
        || (a == b && c == d && a == c)
}

/// Intersection of two lines, `None` if they are parallel or skew.
pub fn line_intersection(l1: &Line, l2: &Line) -> Option<Point> {
    let dim = l1.p.dim();
    let (p1, p2) = (l1.p.lift3(), l2.p.lift3());
    let (d1, d2) = (l1.q.lift3().sub(&p1), l2.q.lift3().sub(&p2));
    let n = cross(&d1, &d2);
    let nn = dot(&n, &n);
    if nn.is_zero() {
        return None;
    }
    let w = p2.sub(&p1);
    if !dot(&w, &n).is_zero() {
        return None;
    }
    let s = dot(&cross(&w, &d2), &n) / nn;
    let mut x = p1.add_scaled(&d1, &s);
    x.0.truncate(dim);
    Some(x)
}

/// Exact placement of a graph on lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    pub dim: usize,
    pub positions: Vec<Point>,
    pub lines: Vec<Line>,
    /// Line index of every edge `(u, v)`, `u < v`.
    pub assignment: BTreeMap<(usize, usize), usize>,
}

impl Realization {
    pub fn line_of(&self, u: usize, v: usize) -> Option<usize> {
        self.assignment.get(&(u.min(v), u.max(v))).copied()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    BadDimension,
    WrongVertexCount { expected: usize, found: usize },
    DegenerateLine(usize),
    UnassignedEdge(usize, usize),
    UnknownEdge(usize, usize),
    BadLineIndex { edge: (usize, usize), line: usize },
    CoincidentVertices(usize, usize),
    OffLine { vertex: usize, line: usize },
    Crossing((usize, usize), (usize, usize)),
    Overlap((usize, usize), (usize, usize)),
}

/// Ids are printed 1-based, matching the text formats.
impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let e = |(u, v): (usize, usize)| format!("{}-{}", u + 1, v + 1);
        match *self {
            Violation::BadDimension => write!(f, "points and lines must share dimension 2 or 3"),
            Violation::WrongVertexCount { expected, found } => write!(f, "expected {expected} vertices, found {found}"),
            Violation::DegenerateLine(l) => write!(f, "line {} is degenerate", l + 1),
            Violation::UnassignedEdge(u, v) => write!(f, "edge {} has no line", e((u, v))),
            Violation::UnknownEdge(u, v) => write!(f, "assigned edge {} is not in the graph", e((u, v))),
            Violation::BadLineIndex { edge, line } => write!(f, "edge {} refers to missing line {}", e(edge), line + 1),
            Violation::CoincidentVertices(u, v) => write!(f, "vertices {} and {} coincide", u + 1, v + 1),
            Violation::OffLine { vertex, line } => write!(f, "vertex {} is not on line {}", vertex + 1, line + 1),
            Violation::Crossing(a, b) => write!(f, "edges {} and {} cross", e(a), e(b)),
            Violation::Overlap(a, b) => write!(f, "edges {} and {} overlap", e(a), e(b)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CoverReport {
    pub violations: Vec<Violation>,
}

impl CoverReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Certify that `r` is a crossing-free straight-line drawing of `g` whose
/// edges lie on the listed lines.
pub fn verify_cover(g: &Graph, r: &Realization) -> CoverReport {
    let mut out = Vec::new();
    if !(r.dim == 2 || r.dim == 3)
        || r.positions.iter().any(|p| p.dim() != r.dim)
        || r.lines.iter().any(|l| l.p.dim() != r.dim || l.q.dim() != r.dim)
    {
        return CoverReport { violations: vec![Violation::BadDimension] };
    }
    if r.positions.len() != g.n() {
        out.push(Violation::WrongVertexCount { expected: g.n(), found: r.positions.len() });
        return CoverReport { violations: out };
    }
    for (i, l) in r.lines.iter().enumerate() {
        if l.p == l.q {
            out.push(Violation::DegenerateLine(i));
        }
    }
    for &(u, v) in r.assignment.keys() {
        if !g.has_edge(u, v) || u > v {
            out.push(Violation::UnknownEdge(u, v));
        }
    }
    let pos = &r.positions;
    let mut sorted: Vec<usize> = (0..g.n()).collect();
    sorted.sort_by(|&a, &b| pos[a].cmp(&pos[b]));
    for w in sorted.windows(2) {
        if pos[w[0]] == pos[w[1]] {
            out.push(Violation::CoincidentVertices(w[0].min(w[1]), w[0].max(w[1])));
        }
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    for &(u, v) in &edges {
        match r.line_of(u, v) {
            None => out.push(Violation::UnassignedEdge(u, v)),
            Some(i) if i >= r.lines.len() => out.push(Violation::BadLineIndex { edge: (u, v), line: i }),
            Some(i) => {
                let l = &r.lines[i];
                for x in [u, v] {
                    if !on_segment(&pos[x], &l.p, &l.q) {
                        out.push(Violation::OffLine { vertex: x, line: i });
                    }
                }
            }
        }
    }
    for (i, &(a, b)) in edges.iter().enumerate() {
        for &(c, d) in &edges[i + 1..] {
            let shared = [c, d].iter().find(|&&x| x == a || x == b).copied();
            match shared {
                None => {
                    if segments_intersect(&pos[a], &pos[b], &pos[c], &pos[d]) {
                        out.push(Violation::Crossing((a, b), (c, d)));
                    }
                }
                Some(s) => {
                    let x = if a == s { b } else { a };
                    let y = if c == s { d } else { c };
                    if on_segment(&pos[y], &pos[s], &pos[x]) || on_segment(&pos[x], &pos[s], &pos[y]) {
                        out.push(Violation::Overlap((a, b), (c, d)));
                    }
                }
            }
        }
    }
    CoverReport { violations: out }
}

/// The vertices of the edges assigned to every line, split into maximal
/// paths and ordered along the line.
pub fn description_from_realization(g: &Graph, r: &Realization) -> CombinatorialDescription {
    let mut lines = Vec::new();
    for (i, l) in r.lines.iter().enumerate() {
        let mut on: BTreeSet<(Scalar, usize)> = BTreeSet::new();
        for (&(u, v), &j) in &r.assignment {
            if j == i && g.has_edge(u, v) {
                on.insert((l.param(&r.positions[u]), u));
                on.insert((l.param(&r.positions[v]), v));
            }
        }
        let mut paths: Vec<Vec<usize>> = Vec::new();
        let mut prev: Option<usize> = None;
        for (_, v) in on {
            match prev {
                Some(u) if r.line_of(u, v) == Some(i) && g.has_edge(u, v) => paths.last_mut().unwrap().push(v),
                _ => paths.push(vec![v]),
            }
            prev = Some(v);
        }
        lines.push(paths);
    }
    CombinatorialDescription { lines }
}

/// The arrangement graph of a simple arrangement in the plane: one vertex per
/// crossing (pairs `(i, j)`, `i < j`, in lexicographic order) and an edge
/// between consecutive crossings on every line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    pub graph: Graph,
    pub crossings: Vec<(usize, usize)>,
    pub positions: Vec<Point>,
}

pub fn arrangement_graph(lines: &[Line]) -> Result<Arrangement, GeomError> {
    check_lines(lines, 2)?;
    let k = lines.len();
    let mut crossings = Vec::new();
    let mut positions: Vec<Point> = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let x = line_intersection(&lines[i], &lines[j])
                .ok_or_else(|| GeomError::NotSimple(format!("lines {i} and {j} are parallel")))?;
            crossings.push((i, j));
            positions.push(x);
        }
    }
    let mut seen = BTreeMap::new();
    for (c, x) in positions.iter().enumerate() {
        if let Some(&d) = seen.get(x) {
            let (a, b) = (crossings[d], crossings[c]);
            return Err(GeomError::NotSimple(format!("crossings {a:?} and {b:?} coincide")));
        }
        seen.insert(x.clone(), c);
    }
    let mut graph = Graph::new(crossings.len());
    for (i, l) in lines.iter().enumerate() {
        let mut on: Vec<(Scalar, usize)> = (0..crossings.len())
            .filter(|&c| crossings[c].0 == i || crossings[c].1 == i)
            .map(|c| (l.param(&positions[c]), c))
            .collect();
        on.sort();
        for w in on.windows(2) {
            graph.add_edge(w[0].1, w[1].1).expect("consecutive crossings are distinct");
        }
    }
    Ok(Arrangement { graph, crossings, positions })
}

fn check_lines(lines: &[Line], dim: usize) -> Result<(), GeomError> {
    if dim != 2 && dim != 3 {
        return Err(GeomError::BadDimension(dim));
    }
    for (i, l) in lines.iter().enumerate() {
        if l.p.dim() != dim || l.q.dim() != dim {
            return Err(GeomError::DimensionMismatch);
        }
        if l.p == l.q {
            return Err(GeomError::DegenerateLine(i));
        }
        for (j, o) in lines[..i].iter().enumerate() {
            if o.same_line(l) {
                return Err(GeomError::CoincidentLines(j, i));
            }
        }
    }
    Ok(())
}

/// Augmented arrangement graph with the exact position of every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentedArrangement {
    pub factorized: FactorizedGraph,
    pub positions: Vec<Point>,
}

impl AugmentedArrangement {
    /// The realization of the augmented graph on its generating lines.
    pub fn realization(&self) -> Realization {
        realization_from_factors(&self.factorized, &self.positions)
    }
}

/// Realization of a factorized graph whose factors are straight in the given
/// positions: line `i` runs between the end vertices of factor `i`.
pub fn realization_from_factors(f: &FactorizedGraph, positions: &[Point]) -> Realization {
    let mut assignment = BTreeMap::new();
    let mut lines = Vec::new();
    for (i, fac) in f.factors.iter().enumerate() {
        for w in fac.windows(2) {
            assignment.insert((w[0].min(w[1]), w[0].max(w[1])), i);
        }
        lines.push(Line::new(positions[fac[0]].clone(), positions[*fac.last().unwrap()].clone()));
    }
    Realization { dim: positions.first().map_or(2, Point::dim), positions: positions.to_vec(), lines, assignment }
}

/// Intersection points become shared vertices, every factor gets a tail
/// beyond its extreme intersections and two subdivision vertices between
/// consecutive intersections.
pub fn augmented_arrangement_graph(lines: &[Line], dim: usize) -> Result<AugmentedArrangement, GeomError> {
    check_lines(lines, dim)?;
    let k = lines.len();
    let mut point_ids: BTreeMap<Point, usize> = BTreeMap::new();
    let mut labels: Vec<BTreeSet<usize>> = Vec::new();
    let mut pts: Vec<Point> = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            if let Some(x) = line_intersection(&lines[i], &lines[j]) {
                let id = *point_ids.entry(x.clone()).or_insert_with(|| {
                    pts.push(x);
                    labels.push(BTreeSet::new());
                    pts.len() - 1
                });
                labels[id].insert(i);
                labels[id].insert(j);
            }
        }
    }
    // number crossings by their label sets
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by(|&a, &b| labels[a].iter().cmp(labels[b].iter()));
    let mut positions: Vec<Point> = order.iter().map(|&c| pts[c].clone()).collect();
    let labels: Vec<&BTreeSet<usize>> = order.iter().map(|&c| &labels[c]).collect();
    let mut factors = Vec::new();
    let mut edges = Vec::new();
    let crossing_count = positions.len();
    for (i, l) in lines.iter().enumerate() {
        let mut on: Vec<(Scalar, usize)> =
            (0..crossing_count).filter(|&c| labels[c].contains(&i)).map(|c| (l.param(&positions[c]), c)).collect();
        if on.is_empty() {
            return Err(GeomError::IsolatedLine(i));
        }
        on.sort();
        let mut fac = Vec::new();
        let first = positions.len();
        positions.push(l.at(&(&on[0].0 - &Scalar::one())));
        fac.push(first);
        for (w, pair) in on.windows(2).enumerate() {
            if w == 0 {
                fac.push(pair[0].1);
            }
            let (a, b) = (&positions[pair[0].1].clone(), &positions[pair[1].1].clone());
            for t in [Scalar::ratio(1, 3), Scalar::ratio(2, 3)] {
                fac.push(positions.len());
                positions.push(a.lerp(b, &t));
            }
            fac.push(pair[1].1);
        }
        if on.len() == 1 {
            fac.push(on[0].1);
        }
        fac.push(positions.len());
        positions.push(l.at(&(&on.last().unwrap().0 + &Scalar::one())));
        for w in fac.windows(2) {
            edges.push((w[0], w[1]));
        }
        factors.push(fac);
    }
    let graph = Graph::from_edges(positions.len(), &edges).expect("factors of distinct lines share no edge");
    Ok(AugmentedArrangement { factorized: FactorizedGraph { graph, factors }, positions })
}

/// Text format: `v <id> <coords>`, `l <id> <p coords> <q coords>`,
/// `a <u> <v> <line>` with 1-based ids; `c` starts a comment. The dimension
/// is the number of coordinates of a vertex.
pub fn parse_realization(text: &str) -> Result<Realization, GeomError> {
    let mut dim = 0;
    let mut pos: BTreeMap<usize, Point> = BTreeMap::new();
    let mut lines: BTreeMap<usize, Line> = BTreeMap::new();
    let mut assignment = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |msg: &str| GeomError::Parse { line, msg: msg.to_string() };
        let toks: Vec<&str> = raw.split_whitespace().collect();
        let id = |t: &str| -> Result<usize, GeomError> {
            match t.parse::<usize>() {
                Ok(x) if x >= 1 => Ok(x - 1),
                _ => Err(err("bad id")),
            }
        };
        let coords = |ts: &[&str]| -> Result<Point, GeomError> {
            ts.iter().map(|t| t.parse::<Scalar>().map_err(|e| err(&e.to_string()))).collect::<Result<_, _>>().map(Point)
        };
        let mut set_dim = |d: usize| -> Result<(), GeomError> {
            if d != 2 && d != 3 || (dim != 0 && dim != d) {
                return Err(err("points must all have 2 or all have 3 coordinates"));
            }
            dim = d;
            Ok(())
        };
        match toks.first().copied() {
            None | Some("c") => {}
            Some("v") => {
                set_dim(toks.len().saturating_sub(2))?;
                pos.insert(id(toks[1])?, coords(&toks[2..])?);
            }
            Some("l") => {
                let rest = toks.len().saturating_sub(2);
                if rest % 2 != 0 {
                    return Err(err("expected `l <id> <p> <q>`"));
                }
                set_dim(rest / 2)?;
                let d = rest / 2;
                let l = Line::new(coords(&toks[2..2 + d])?, coords(&toks[2 + d..])?);
                lines.insert(id(toks[1])?, l);
            }
            Some("a") => {
                if toks.len() != 4 {
                    return Err(err("expected `a <u> <v> <line>`"));
                }
                let (u, v) = (id(toks[1])?, id(toks[2])?);
                assignment.insert((u.min(v), u.max(v)), id(toks[3])?);
            }
            Some(t) => return Err(err(&format!("unknown record `{t}`"))),
        }
    }
    let dense = |n: usize, keys: Vec<usize>| keys.into_iter().eq(0..n);
    if !dense(pos.len(), pos.keys().copied().collect()) || !dense(lines.len(), lines.keys().copied().collect()) {
        return Err(GeomError::Parse { line: 0, msg: "vertex and line ids must be 1..n without gaps".into() });
    }
    Ok(Realization {
        dim: if dim == 0 { 2 } else { dim },
        positions: pos.into_values().collect(),
        lines: lines.into_values().collect(),
        assignment,
    })
}

pub fn format_realization(r: &Realization) -> String {
    let coords = |p: &Point| p.0.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ");
    let mut s = String::new();
    for (i, p) in r.positions.iter().enumerate() {
        s.push_str(&format!("v {} {}\n", i + 1, coords(p)));
    }
    for (i, l) in r.lines.iter().enumerate() {
        s.push_str(&format!("l {} {} {}\n", i + 1, coords(&l.p), coords(&l.q)));
    }
    for (&(u, v), &i) in &r.assignment {
        s.push_str(&format!("a {} {} {}\n", u + 1, v + 1, i + 1));
    }
    s
}

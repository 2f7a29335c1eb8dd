//! Stretchability of template graphs: a seeded numeric search whose result
//! is rounded to rationals and certified exactly, with an optional external
//! real-arithmetic solver for the cases the search cannot settle.

use std::collections::BTreeMap;
use std::io::Write as _;
use std::process::{Command, Stdio};

use argmin::core::{CostFunction, Error as ArgminError, Executor};
use argmin::solver::neldermead::NelderMead;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::formula::{emit_stretch_formula, to_solver_text, FormulaError};
use crate::geom::{line_intersection, realization_from_factors, verify_cover, Line, Point, Realization};
use crate::scalar::Scalar;
use crate::templates::{TemplateError, TemplateGraph};

/// Environment variable holding the external solver command line.
pub const SOLVER_ENV: &str = "AFFINE_COVER_SOLVER";
pub const DEFAULT_BUDGET: usize = 24;
pub const DEFAULT_SEED: u64 = 0x5eed;

const DELTA: f64 = 0.1;
const TAU: f64 = 2.0 * DELTA;
const BOX: f64 = 10.0;
const DENOMINATORS: [u64; 3] = [1 << 8, 1 << 16, 1 << 32];

#[derive(Debug, Error)]
pub enum StretchError {
    #[error(transparent)]
    InvalidTemplate(#[from] TemplateError),
    #[error("unsupported dimension {0}")]
    BadDimension(usize),
    #[error("solver protocol error: {0}")]
    SolverProtocolError(String),
}

impl From<FormulaError> for StretchError {
    fn from(e: FormulaError) -> Self {
        match e {
            FormulaError::InvalidTemplate(t) => StretchError::InvalidTemplate(t),
            FormulaError::UnsupportedCombination { d, .. } => StretchError::BadDimension(d),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StretchAnswer {
    Yes(Realization),
    /// Refutation by the external solver; carries its command line.
    No(String),
    Unknown(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StretchVerdict {
    pub answer: StretchAnswer,
    /// Restarts used by the numeric search.
    pub budget_spent: usize,
}

impl StretchVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self.answer, StretchAnswer::Yes(_))
    }
}

/// Exact certificate check: the realization draws `h` without crossings,
/// factor `i` on line `i`, with pairwise distinct lines.
pub fn verify_stretch(h: &TemplateGraph, r: &Realization) -> bool {
    if r.lines.len() != h.k() || !verify_cover(h.graph(), r).is_valid() {
        return false;
    }
    for (i, f) in h.factors().iter().enumerate() {
        if f.windows(2).any(|w| r.line_of(w[0], w[1]) != Some(i)) {
            return false;
        }
    }
    (0..r.lines.len()).all(|i| (i + 1..r.lines.len()).all(|j| !r.lines[i].same_line(&r.lines[j])))
}

struct Shape {
    /// Crossing vertices of the template.
    crossings: Vec<usize>,
    /// Factors through every crossing, ascending.
    labels: Vec<Vec<usize>>,
    /// Crossing indices along every factor.
    along: Vec<Vec<usize>>,
    /// Factor pairs sharing a crossing.
    sharing: Vec<Vec<bool>>,
}

impl Shape {
    fn new(h: &TemplateGraph) -> Self {
        let crossings = h.crossings();
        let at = h.factorized.factors_at();
        let index: BTreeMap<usize, usize> = crossings.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let labels: Vec<Vec<usize>> = crossings.iter().map(|&v| at[v].clone()).collect();
        let along = h.factors().iter().map(|f| f.iter().filter_map(|v| index.get(v).copied()).collect()).collect();
        let k = h.k();
        let mut sharing = vec![vec![false; k]; k];
        for l in &labels {
            for &a in l {
                for &b in l {
                    sharing[a][b] = a != b;
                }
            }
        }
        Shape { crossings, labels, along, sharing }
    }
}

type V = Vec<f64>;

fn dotf(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(p: &[f64], d: &[f64], t: f64) -> V {
    p.iter().zip(d).map(|(a, b)| a + t * b).collect()
}

fn subf(a: &[f64], b: &[f64]) -> V {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn normf(a: &[f64]) -> f64 {
    dotf(a, a).sqrt()
}

fn hinge(x: f64) -> f64 {
    if x > 0.0 {
        x * x
    } else {
        0.0
    }
}

/// Squared distance between segments `[p1, q1]` and `[p2, q2]`.
fn segment_dist2(p1: &[f64], q1: &[f64], p2: &[f64], q2: &[f64]) -> f64 {
    let (d1, d2, r) = (subf(q1, p1), subf(q2, p2), subf(p1, p2));
    let (a, e, f) = (dotf(&d1, &d1), dotf(&d2, &d2), dotf(&d2, &r));
    let c = dotf(&d1, &r);
    let b = dotf(&d1, &d2);
    let den = a * e - b * b;
    let mut s = if den > 1e-12 { ((b * f - c * e) / den).clamp(0.0, 1.0) } else { 0.0 };
    let mut t = (b * s + f) / e;
    if t < 0.0 {
        t = 0.0;
        s = (-c / a).clamp(0.0, 1.0);
    } else if t > 1.0 {
        t = 1.0;
        s = ((b - c) / a).clamp(0.0, 1.0);
    }
    let x = subf(&axpy(p1, &d1, s), &axpy(p2, &d2, t));
    dotf(&x, &x)
}

/// Numeric line family: base point and unit direction per factor.
fn decode(x: &[f64], d: usize, k: usize) -> Vec<(V, V)> {
    (0..k)
        .map(|h| {
            if d == 2 {
                let (th, rho) = (x[2 * h], x[2 * h + 1]);
                (vec![-rho * th.sin(), rho * th.cos()], vec![th.cos(), th.sin()])
            } else {
                let p = x[6 * h..6 * h + 3].to_vec();
                let dir = &x[6 * h + 3..6 * h + 6];
                let n = normf(dir).max(1e-12);
                (p, dir.iter().map(|c| c / n).collect())
            }
        })
        .collect()
}

/// Midpoint of the closest points of two lines (their intersection in the
/// plane), or `None` when nearly parallel.
fn meet(a: &(V, V), b: &(V, V)) -> Option<V> {
    let w = subf(&a.0, &b.0);
    let c = dotf(&a.1, &b.1);
    let den = 1.0 - c * c;
    if den < 1e-10 {
        return None;
    }
    let (dw1, dw2) = (dotf(&a.1, &w), dotf(&b.1, &w));
    let s = (c * dw2 - dw1) / den;
    let t = (dw2 - c * dw1) / den;
    let (x, y) = (axpy(&a.0, &a.1, s), axpy(&b.0, &b.1, t));
    Some(x.iter().zip(&y).map(|(u, v)| (u + v) / 2.0).collect())
}

fn line_dist2(x: &[f64], l: &(V, V)) -> f64 {
    let r = subf(x, &l.0);
    let t = dotf(&r, &l.1);
    (dotf(&r, &r) - t * t).max(0.0)
}

struct Problem<'a> {
    shape: &'a Shape,
    d: usize,
    k: usize,
}

impl Problem<'_> {
    fn points(&self, lines: &[(V, V)]) -> Option<Vec<V>> {
        self.shape.labels.iter().map(|l| meet(&lines[l[0]], &lines[l[1]])).collect()
    }

    fn objective(&self, x: &[f64]) -> f64 {
        let lines = decode(x, self.d, self.k);
        let Some(pts) = self.points(&lines) else { return 1e6 };
        let sh = self.shape;
        let mut f = 0.0;
        for (c, l) in sh.labels.iter().enumerate() {
            for &h in l {
                f += 100.0 * line_dist2(&pts[c], &lines[h]);
            }
            f += hinge(normf(&pts[c]) - BOX);
        }
        let mut hull = Vec::with_capacity(self.k);
        for (h, cs) in sh.along.iter().enumerate() {
            let ts: Vec<f64> = cs.iter().map(|&c| dotf(&subf(&pts[c], &lines[h].0), &lines[h].1)).collect();
            let (mut inc, mut dec) = (0.0, 0.0);
            for w in ts.windows(2) {
                inc += hinge(DELTA - (w[1] - w[0]));
                dec += hinge(DELTA + (w[1] - w[0]));
            }
            f += inc.min(dec);
            let lo = ts.iter().copied().fold(f64::INFINITY, f64::min) - TAU;
            let hi = ts.iter().copied().fold(f64::NEG_INFINITY, f64::max) + TAU;
            hull.push((axpy(&lines[h].0, &lines[h].1, lo), axpy(&lines[h].0, &lines[h].1, hi)));
            f += hinge(normf(&lines[h].0) - BOX);
        }
        for a in 0..self.k {
            for b in a + 1..self.k {
                if sh.sharing[a][b] {
                    let c = dotf(&lines[a].1, &lines[b].1);
                    f += hinge(DELTA - (1.0 - c * c).max(0.0).sqrt());
                } else {
                    let d2 = segment_dist2(&hull[a].0, &hull[a].1, &hull[b].0, &hull[b].1);
                    f += hinge(DELTA - d2.sqrt());
                }
            }
        }
        f
    }
}

impl CostFunction for Problem<'_> {
    type Param = Vec<f64>;
    type Output = f64;

    fn cost(&self, x: &Self::Param) -> Result<f64, ArgminError> {
        Ok(self.objective(x))
    }
}

fn start(d: usize, k: usize, restart: usize, seed: u64) -> V {
    if restart == 0 {
        return (0..k)
            .flat_map(|h| {
                let th = std::f64::consts::PI * h as f64 / k as f64;
                if d == 2 {
                    vec![th, 0.0]
                } else {
                    vec![0.0, 0.0, 0.0, th.cos(), th.sin(), 0.0]
                }
            })
            .collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (restart as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    (0..k * if d == 2 { 2 } else { 6 })
        .map(|i| {
            if d == 2 && i % 2 == 0 {
                rng.random_range(0.0..std::f64::consts::PI)
            } else {
                rng.random_range(-2.0..2.0)
            }
        })
        .collect()
}

fn minimize(p: &Problem<'_>, x0: V) -> (V, f64) {
    let (mut best, mut cost) = (x0.clone(), p.objective(&x0));
    let mut step = 0.5;
    for _ in 0..4 {
        if cost < 1e-14 {
            break;
        }
        let mut simplex = vec![best.clone()];
        for i in 0..best.len() {
            let mut y = best.clone();
            y[i] += step;
            simplex.push(y);
        }
        let solver = NelderMead::new(simplex).with_sd_tolerance(1e-15).expect("valid tolerance");
        let Ok(res) = Executor::new(Problem { shape: p.shape, d: p.d, k: p.k }, solver)
            .configure(|s| s.max_iters(4000 + 400 * best.len() as u64))
            .run()
        else {
            break;
        };
        if let Some(b) = res.state.best_param.clone() {
            let c = p.objective(&b);
            if c <= cost {
                best = b;
                cost = c;
            }
        }
        step /= 4.0;
    }
    (best, cost)
}

fn round(x: f64, den: u64) -> Option<Scalar> {
    Scalar::approximate(x, den)
}

fn round_point(x: &[f64], den: u64) -> Option<Point> {
    x.iter().map(|&c| round(c, den)).collect::<Option<Vec<_>>>().map(Point)
}

/// Exact construction from a numeric line family: crossings and lines are
/// determined one after another so that incidences hold by construction;
/// only free parameters are rounded.
fn exact_lines(shape: &Shape, lines: &[(V, V)], pts: &[V], d: usize, den: u64) -> Option<(Vec<Line>, Vec<Point>)> {
    let k = lines.len();
    let m = shape.labels.len();
    let mut el: Vec<Option<Line>> = vec![None; k];
    let mut ep: Vec<Option<Point>> = vec![None; m];
    let rdir = |h: usize| {
        let u = round_point(&lines[h].1, den)?;
        (!u.0.iter().all(Scalar::is_zero)).then_some(u)
    };
    loop {
        // a crossing on two known lines
        if let Some(c) = (0..m).find(|&c| ep[c].is_none() && shape.labels[c].iter().filter(|&&h| el[h].is_some()).count() >= 2) {
            let known: Vec<&Line> = shape.labels[c].iter().filter_map(|&h| el[h].as_ref()).collect();
            ep[c] = Some(line_intersection(known[0], known[1])?);
            continue;
        }
        // a line through two known crossings
        if let Some(h) = (0..k).find(|&h| el[h].is_none() && shape.along[h].iter().filter(|&&c| ep[c].is_some()).count() >= 2) {
            let known: Vec<&Point> = shape.along[h].iter().filter_map(|&c| ep[c].as_ref()).collect();
            if known[0] == known[1] {
                return None;
            }
            el[h] = Some(Line::new(known[0].clone(), known[1].clone()));
            continue;
        }
        // a crossing on one known line, placed at a rounded parameter
        if let Some(c) = (0..m).find(|&c| ep[c].is_none() && shape.labels[c].iter().any(|&h| el[h].is_some())) {
            let g = shape.labels[c].iter().copied().find(|&h| el[h].is_some()).unwrap();
            let l = el[g].as_ref().unwrap();
            let (p, q) = (l.p.to_f64(), l.q.to_f64());
            let dir = subf(&q, &p);
            let t = dotf(&subf(&pts[c], &p), &dir) / dotf(&dir, &dir);
            ep[c] = Some(l.at(&round(t, den)?));
            continue;
        }
        let Some(h) = (0..k).find(|&h| el[h].is_none()) else { break };
        let base = match shape.along[h].iter().find_map(|&c| ep[c].clone()) {
            Some(p) => p,
            None => round_point(&lines[h].0, den)?,
        };
        let u = rdir(h)?;
        let q = Point(base.0.iter().zip(&u.0).map(|(a, b)| a + b).collect());
        el[h] = Some(Line::new(base, q));
    }
    let el: Vec<Line> = el.into_iter().collect::<Option<_>>()?;
    let ep: Vec<Point> = ep.into_iter().collect::<Option<_>>()?;
    for (c, l) in shape.labels.iter().enumerate() {
        if l.iter().any(|&h| !el[h].contains(&ep[c])) {
            return None;
        }
    }
    debug_assert!(ep.iter().all(|p| p.dim() == d));
    Some((el, ep))
}

/// Positions of all template vertices for given exact crossings, with
/// tails at distance about `tau` beyond the extreme crossings.
fn place(h: &TemplateGraph, shape: &Shape, el: &[Line], ep: &[Point], tau: &Scalar) -> Option<Realization> {
    let n = h.graph().n();
    let mut pos: Vec<Option<Point>> = vec![None; n];
    for (c, &v) in shape.crossings.iter().enumerate() {
        pos[v] = Some(ep[c].clone());
    }
    for (i, f) in h.factors().iter().enumerate() {
        let cs = &shape.along[i];
        let ts: Vec<Scalar> = cs.iter().map(|&c| el[i].param(&ep[c])).collect();
        let up = ts.windows(2).all(|w| w[0] < w[1]);
        let down = ts.windows(2).all(|w| w[0] > w[1]);
        if !(up || down) {
            return None;
        }
        let (first, last) = (&ep[cs[0]], &ep[*cs.last().unwrap()]);
        let raw = if cs.len() >= 2 { last.sub(first) } else { el[i].direction() };
        let len = raw.iter().map(|x| x.to_f64().powi(2)).sum::<f64>().sqrt();
        let scale = round(1.0 / len, 1 << 16)?;
        let u: Vec<Scalar> = raw.iter().map(|x| x * &scale * tau).collect();
        pos[f[0]] = Some(first.add_scaled(&u, &Scalar::int(-1)));
        pos[*f.last().unwrap()] = Some(last.add_scaled(&u, &Scalar::one()));
        let inner = &f[1..f.len() - 1];
        for j in (0..inner.len().saturating_sub(1)).step_by(3) {
            let (a, b) = (pos[inner[j]].clone()?, pos[inner[j + 3]].clone()?);
            pos[inner[j + 1]] = Some(a.lerp(&b, &Scalar::ratio(1, 3)));
            pos[inner[j + 2]] = Some(a.lerp(&b, &Scalar::ratio(2, 3)));
        }
    }
    let positions: Vec<Point> = pos.into_iter().collect::<Option<_>>()?;
    Some(realization_from_factors(&h.factorized, &positions))
}

fn certify(h: &TemplateGraph, shape: &Shape, x: &[f64], d: usize) -> Option<Realization> {
    let lines = decode(x, d, h.k());
    let pts: Vec<V> = shape.labels.iter().map(|l| meet(&lines[l[0]], &lines[l[1]])).collect::<Option<_>>()?;
    for den in DENOMINATORS {
        let Some((el, ep)) = exact_lines(shape, &lines, &pts, d, den) else { continue };
        let mut tau = Scalar::one();
        for _ in 0..12 {
            if let Some(r) = place(h, shape, &el, &ep, &tau) {
                if verify_stretch(h, &r) {
                    return Some(r);
                }
            }
            tau = tau * Scalar::ratio(1, 2);
        }
    }
    None
}

fn attempt(h: &TemplateGraph, shape: &Shape, d: usize, restart: usize, seed: u64) -> Option<Realization> {
    let p = Problem { shape, d, k: h.k() };
    let (x, cost) = minimize(&p, start(d, h.k(), restart, seed));
    if cost > 1e-8 {
        return None;
    }
    certify(h, shape, &x, d)
}

fn lift(r: &Realization) -> Realization {
    Realization {
        dim: 3,
        positions: r.positions.iter().map(Point::lift3).collect(),
        lines: r.lines.iter().map(|l| Line::new(l.p.lift3(), l.q.lift3())).collect(),
        assignment: r.assignment.clone(),
    }
}

fn search(h: &TemplateGraph, d: usize, budget: usize, seed: u64) -> Result<(Option<Realization>, usize), StretchError> {
    if d != 2 && d != 3 {
        return Err(StretchError::BadDimension(d));
    }
    let h = TemplateGraph::from_factorized(h.factorized.clone())?;
    let shape = Shape::new(&h);
    for r in 0..budget {
        if let Some(x) = attempt(&h, &shape, 2, r, seed) {
            return Ok((Some(if d == 3 { lift(&x) } else { x }), r + 1));
        }
        if d == 3 {
            if let Some(x) = attempt(&h, &shape, 3, r, seed) {
                return Ok((Some(x), r + 1));
            }
        }
    }
    Ok((None, budget))
}

/// Exact realization of `h` in ℝ^d found within `budget` seeded restarts.
pub fn realize(h: &TemplateGraph, d: usize, budget: usize) -> Result<Option<Realization>, StretchError> {
    realize_seeded(h, d, budget, DEFAULT_SEED)
}

pub fn realize_seeded(h: &TemplateGraph, d: usize, budget: usize, seed: u64) -> Result<Option<Realization>, StretchError> {
    Ok(search(h, d, budget, seed)?.0)
}

/// External solver invocation: program plus arguments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExternalSolver {
    pub program: String,
    pub args: Vec<String>,
}

impl ExternalSolver {
    /// Solver named by the environment, if any.
    pub fn from_env() -> Option<Self> {
        let cmd = std::env::var(SOLVER_ENV).ok()?;
        let mut parts = cmd.split_whitespace().map(String::from);
        let program = parts.next()?;
        Some(ExternalSolver { program, args: parts.collect() })
    }

    /// Submit a problem and return the raw response.
    pub fn run(&self, text: &str) -> Result<String, StretchError> {
        let io = |e: std::io::Error| StretchError::SolverProtocolError(format!("{}: {e}", self.program));
        let mut child = Command::new(&self.program)
            .args(&self.args)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::null())
            .spawn()
            .map_err(io)?;
        child.stdin.take().expect("piped stdin").write_all(text.as_bytes()).map_err(io)?;
        let out = child.wait_with_output().map_err(io)?;
        String::from_utf8(out.stdout).map_err(|_| StretchError::SolverProtocolError("response is not UTF-8".into()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolverResponse {
    /// Satisfiable; variables whose values are rational numbers.
    Sat(BTreeMap<String, Scalar>),
    Unsat,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Sexp {
    Atom(String),
    List(Vec<Sexp>),
}

fn parse_sexps(text: &str) -> Result<Vec<Sexp>, StretchError> {
    let bad = |m: &str| StretchError::SolverProtocolError(m.into());
    let mut stack: Vec<Vec<Sexp>> = vec![Vec::new()];
    let mut chars = text.chars().peekable();
    while let Some(ch) = chars.next() {
        match ch {
            '(' => stack.push(Vec::new()),
            ')' => {
                let done = stack.pop().filter(|_| !stack.is_empty()).ok_or_else(|| bad("unbalanced ')'"))?;
                stack.last_mut().unwrap().push(Sexp::List(done));
            }
            ';' => {
                while chars.next_if(|&c| c != '\n').is_some() {}
            }
            c if c.is_whitespace() => {}
            '|' => {
                let mut s = String::new();
                loop {
                    match chars.next() {
                        Some('|') => break,
                        Some(c) => s.push(c),
                        None => return Err(bad("unterminated symbol")),
                    }
                }
                stack.last_mut().unwrap().push(Sexp::Atom(s));
            }
            c => {
                let mut s = String::from(c);
                while let Some(c) = chars.next_if(|c| !c.is_whitespace() && !"();".contains(*c)) {
                    s.push(c);
                }
                stack.last_mut().unwrap().push(Sexp::Atom(s));
            }
        }
    }
    if stack.len() != 1 {
        return Err(bad("unbalanced '('"));
    }
    Ok(stack.pop().unwrap())
}

fn value(s: &Sexp) -> Option<Scalar> {
    match s {
        Sexp::Atom(a) => a.parse().ok(),
        Sexp::List(l) => match l.as_slice() {
            [Sexp::Atom(op), x] if op == "-" => Some(-value(x)?),
            [Sexp::Atom(op), x, y] if op == "/" => Some(value(x)? * value(y)?.recip()?),
            [Sexp::Atom(op), x, y] if op == "-" => Some(value(x)? - value(y)?),
            _ => None,
        },
    }
}

fn collect_model(s: &Sexp, out: &mut BTreeMap<String, Scalar>) {
    if let Sexp::List(l) = s {
        if let [Sexp::Atom(head), Sexp::Atom(name), Sexp::List(args), Sexp::Atom(_), v] = l.as_slice() {
            if head == "define-fun" && args.is_empty() {
                if let Some(x) = value(v) {
                    out.insert(name.clone(), x);
                }
                return;
            }
        }
        l.iter().for_each(|x| collect_model(x, out));
    }
}

/// Parse `sat`/`unsat`/`unknown` followed by an optional model.
pub fn parse_solver_response(text: &str) -> Result<SolverResponse, StretchError> {
    let items = parse_sexps(text)?;
    let mut it = items.iter();
    let status = loop {
        match it.next() {
            Some(Sexp::Atom(a)) if a == "sat" || a == "unsat" || a == "unknown" => break a.as_str(),
            // tolerated chatter such as `(error ...)` from `get-model` after unsat
            Some(Sexp::List(_)) => continue,
            Some(Sexp::Atom(a)) => return Err(StretchError::SolverProtocolError(format!("unexpected token {a:?}"))),
            None => return Err(StretchError::SolverProtocolError("no verdict".into())),
        }
    };
    Ok(match status {
        "sat" => {
            let mut model = BTreeMap::new();
            it.for_each(|s| collect_model(s, &mut model));
            SolverResponse::Sat(model)
        }
        "unsat" => SolverResponse::Unsat,
        _ => SolverResponse::Unknown,
    })
}

fn model_realization(h: &TemplateGraph, d: usize, model: &BTreeMap<String, Scalar>) -> Option<Realization> {
    let axes = &["x", "y", "z"][..d];
    let positions: Vec<Point> = (0..h.graph().n())
        .map(|v| axes.iter().map(|a| model.get(&format!("v{}_{a}", v + 1)).cloned()).collect::<Option<Vec<_>>>().map(Point))
        .collect::<Option<_>>()?;
    let r = realization_from_factors(&h.factorized, &positions);
    verify_stretch(h, &r).then_some(r)
}

/// Yes with an exact realization, No only on an external refutation,
/// Unknown otherwise.
pub fn is_stretchable(
    h: &TemplateGraph,
    d: usize,
    budget: usize,
    solver: Option<&ExternalSolver>,
) -> Result<StretchVerdict, StretchError> {
    is_stretchable_seeded(h, d, budget, DEFAULT_SEED, solver)
}

pub fn is_stretchable_seeded(
    h: &TemplateGraph,
    d: usize,
    budget: usize,
    seed: u64,
    solver: Option<&ExternalSolver>,
) -> Result<StretchVerdict, StretchError> {
    let (found, spent) = search(h, d, budget, seed)?;
    let verdict = |answer| Ok(StretchVerdict { answer, budget_spent: spent });
    if let Some(r) = found {
        return verdict(StretchAnswer::Yes(r));
    }
    let Some(solver) = solver else {
        return verdict(StretchAnswer::Unknown(format!("no realization within {budget} restarts")));
    };
    let formula = emit_stretch_formula(h, d)?;
    let text = format!("(set-option :produce-models true)\n{}(get-model)\n", to_solver_text(&formula));
    match parse_solver_response(&solver.run(&text)?)? {
        SolverResponse::Unsat => verdict(StretchAnswer::No(format!("{} {}", solver.program, solver.args.join(" ")).trim().to_string())),
        SolverResponse::Unknown => verdict(StretchAnswer::Unknown("solver answered unknown".into())),
        SolverResponse::Sat(model) => match model_realization(h, d, &model) {
            Some(r) => verdict(StretchAnswer::Yes(r)),
            None => verdict(StretchAnswer::Unknown("solver model failed exact verification".into())),
        },
    }
}

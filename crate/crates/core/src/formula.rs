//! Existential real-arithmetic encodings of the cover problems and of
//! template stretchability, with serialization to SMT-LIB (QF_NRA).

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::Graph;
use crate::scalar::Scalar;
use crate::templates::{TemplateError, TemplateGraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("unsupported combination d={d}, l={l}; expected (2,1), (3,1) or (3,2)")]
    UnsupportedCombination { d: usize, l: usize },
    #[error(transparent)]
    InvalidTemplate(#[from] TemplateError),
}

/// Polynomial with integer coefficients built from variables and the
/// constants −1, 0, 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Poly {
    Var(usize),
    Const(i8),
    Add(Box<Poly>, Box<Poly>),
    Sub(Box<Poly>, Box<Poly>),
    Mul(Box<Poly>, Box<Poly>),
    Neg(Box<Poly>),
}

impl Poly {
    pub fn degree(&self) -> usize {
        match self {
            Poly::Var(_) => 1,
            Poly::Const(_) => 0,
            Poly::Add(a, b) | Poly::Sub(a, b) => a.degree().max(b.degree()),
            Poly::Mul(a, b) => a.degree() + b.degree(),
            Poly::Neg(a) => a.degree(),
        }
    }

    fn constants_ok(&self) -> bool {
        match self {
            Poly::Var(_) => true,
            Poly::Const(c) => (-1..=1).contains(c),
            Poly::Add(a, b) | Poly::Sub(a, b) | Poly::Mul(a, b) => a.constants_ok() && b.constants_ok(),
            Poly::Neg(a) => a.constants_ok(),
        }
    }

    pub fn eval(&self, vals: &[Scalar]) -> Scalar {
        match self {
            Poly::Var(i) => vals[*i].clone(),
            Poly::Const(c) => Scalar::int(*c as i64),
            Poly::Add(a, b) => a.eval(vals) + b.eval(vals),
            Poly::Sub(a, b) => a.eval(vals) - b.eval(vals),
            Poly::Mul(a, b) => a.eval(vals) * b.eval(vals),
            Poly::Neg(a) => -a.eval(vals),
        }
    }

    fn smt(&self, names: &[String], out: &mut String) {
        let bin = |op: &str, a: &Poly, b: &Poly, out: &mut String| {
            write!(out, "({op} ").unwrap();
            a.smt(names, out);
            out.push(' ');
            b.smt(names, out);
            out.push(')');
        };
        match self {
            Poly::Var(i) => out.push_str(&names[*i]),
            Poly::Const(c) if *c < 0 => write!(out, "(- {})", -c).unwrap(),
            Poly::Const(c) => write!(out, "{c}").unwrap(),
            Poly::Add(a, b) => bin("+", a, b, out),
            Poly::Sub(a, b) => bin("-", a, b, out),
            Poly::Mul(a, b) => bin("*", a, b, out),
            Poly::Neg(a) => {
                out.push_str("(- ");
                a.smt(names, out);
                out.push(')');
            }
        }
    }
}

fn add(a: Poly, b: Poly) -> Poly {
    Poly::Add(Box::new(a), Box::new(b))
}

fn sub(a: Poly, b: Poly) -> Poly {
    Poly::Sub(Box::new(a), Box::new(b))
}

fn mul(a: Poly, b: Poly) -> Poly {
    Poly::Mul(Box::new(a), Box::new(b))
}

fn zero() -> Poly {
    Poly::Const(0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    Lt,
    Le,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    Atom(Rel, Poly, Poly),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Not(Box<Formula>),
}

impl Formula {
    fn atoms<'a>(&'a self, out: &mut Vec<(&'a Poly, &'a Poly)>) {
        match self {
            Formula::Atom(_, a, b) => out.push((a, b)),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|f| f.atoms(out)),
            Formula::Not(f) => f.atoms(out),
        }
    }

    pub fn eval(&self, vals: &[Scalar]) -> bool {
        match self {
            Formula::Atom(r, a, b) => {
                let (x, y) = (a.eval(vals), b.eval(vals));
                match r {
                    Rel::Lt => x < y,
                    Rel::Le => x <= y,
                    Rel::Eq => x == y,
                }
            }
            Formula::And(fs) => fs.iter().all(|f| f.eval(vals)),
            Formula::Or(fs) => fs.iter().any(|f| f.eval(vals)),
            Formula::Not(f) => !f.eval(vals),
        }
    }

    fn smt(&self, names: &[String], out: &mut String) {
        match self {
            Formula::Atom(r, a, b) => {
                let op = match r {
                    Rel::Lt => "<",
                    Rel::Le => "<=",
                    Rel::Eq => "=",
                };
                write!(out, "({op} ").unwrap();
                a.smt(names, out);
                out.push(' ');
                b.smt(names, out);
                out.push(')');
            }
            Formula::And(fs) | Formula::Or(fs) if fs.is_empty() => {
                out.push_str(if matches!(self, Formula::And(_)) { "true" } else { "false" })
            }
            Formula::And(fs) | Formula::Or(fs) => {
                out.push_str(if matches!(self, Formula::And(_)) { "(and" } else { "(or" });
                for f in fs {
                    out.push(' ');
                    f.smt(names, out);
                }
                out.push(')');
            }
            Formula::Not(f) => {
                out.push_str("(not ");
                f.smt(names, out);
                out.push(')');
            }
        }
    }
}

fn eq(a: Poly, b: Poly) -> Formula {
    Formula::Atom(Rel::Eq, a, b)
}

fn lt(a: Poly, b: Poly) -> Formula {
    Formula::Atom(Rel::Lt, a, b)
}

fn le(a: Poly, b: Poly) -> Formula {
    Formula::Atom(Rel::Le, a, b)
}

/// `a ≠ b` as `a < b ∨ b < a`.
fn ne(a: Poly, b: Poly) -> Formula {
    Formula::Or(vec![lt(a.clone(), b.clone()), lt(b, a)])
}

fn not(f: Formula) -> Formula {
    Formula::Not(Box::new(f))
}

/// A prenex existential formula: `∃ vars. matrix`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealFormula {
    pub vars: Vec<String>,
    pub matrix: Formula,
}

impl RealFormula {
    pub fn max_degree(&self) -> usize {
        let mut atoms = Vec::new();
        self.matrix.atoms(&mut atoms);
        atoms.iter().map(|(a, b)| a.degree().max(b.degree())).max().unwrap_or(0)
    }

    /// Every constant lies in {−1, 0, 1}.
    pub fn coefficients_ok(&self) -> bool {
        let mut atoms = Vec::new();
        self.matrix.atoms(&mut atoms);
        atoms.iter().all(|(a, b)| a.constants_ok() && b.constants_ok())
    }

    pub fn atom_count(&self) -> usize {
        let mut atoms = Vec::new();
        self.matrix.atoms(&mut atoms);
        atoms.len()
    }

    /// Truth of the matrix at the given values of the variables.
    pub fn eval(&self, vals: &[Scalar]) -> bool {
        self.matrix.eval(vals)
    }
}

/// SMT-LIB text: logic, one declaration per variable, one assertion, check.
pub fn to_solver_text(f: &RealFormula) -> String {
    let mut s = String::from("(set-logic QF_NRA)\n");
    for v in &f.vars {
        writeln!(s, "(declare-fun {v} () Real)").unwrap();
    }
    s.push_str("(assert ");
    match &f.matrix {
        Formula::And(fs) if !fs.is_empty() => {
            s.push_str("(and");
            for c in fs {
                s.push_str("\n  ");
                c.smt(&f.vars, &mut s);
            }
            s.push(')');
        }
        m => m.smt(&f.vars, &mut s),
    }
    s.push_str(")\n(check-sat)\n");
    s
}

/// A point given by variable indices.
type P = Vec<usize>;

fn coord(p: &P, i: usize) -> Poly {
    Poly::Var(p[i])
}

fn diff(a: &P, b: &P, i: usize) -> Poly {
    sub(coord(a, i), coord(b, i))
}

/// Determinant with rows (x, y, 1) in expanded form.
fn chi(a: &P, b: &P, c: &P) -> Poly {
    sub(mul(diff(b, a, 0), diff(c, a, 1)), mul(diff(b, a, 1), diff(c, a, 0)))
}

/// Components of (b − a) × (c − a).
fn cross3(a: &P, b: &P, c: &P) -> [Poly; 3] {
    let m = |i: usize, j: usize| sub(mul(diff(b, a, i), diff(c, a, j)), mul(diff(b, a, j), diff(c, a, i)));
    [m(1, 2), m(2, 0), m(0, 1)]
}

fn sqdist(a: &P, b: &P) -> Poly {
    (0..a.len()).map(|i| mul(diff(a, b, i), diff(a, b, i))).reduce(add).unwrap()
}

fn collinear(a: &P, b: &P, c: &P) -> Formula {
    if a.len() == 2 {
        eq(chi(a, b, c), zero())
    } else {
        Formula::And(cross3(a, b, c).into_iter().map(|p| eq(p, zero())).collect())
    }
}

/// `a` lies on the closed segment `bc`.
fn between(a: &P, b: &P, c: &P) -> Formula {
    Formula::And(vec![collinear(a, b, c), le(sqdist(b, a), sqdist(c, b)), le(sqdist(c, a), sqdist(c, b))])
}

fn distinct(a: &P, b: &P) -> Formula {
    Formula::Or((0..a.len()).map(|i| ne(coord(a, i), coord(b, i))).collect())
}

/// Same-side test: `c` and `d` strictly on one side of line `ab`.
fn same_side(a: &P, b: &P, c: &P, d: &P) -> Formula {
    if a.len() == 2 {
        lt(zero(), mul(chi(a, b, c), chi(a, b, d)))
    } else {
        let (u, v) = (cross3(a, b, c), cross3(a, b, d));
        let dot = u.into_iter().zip(v).map(|(x, y)| mul(x, y)).reduce(add).unwrap();
        lt(zero(), dot)
    }
}

fn triple(a: &P, b: &P, c: &P, d: &P) -> Poly {
    // (b − a) · ((c − a) × (d − a))
    let w = cross3(a, c, d);
    w.into_iter().enumerate().map(|(i, wi)| mul(diff(b, a, i), wi)).reduce(add).unwrap()
}

/// Closed segments `ab` and `cd` are disjoint.
fn disjoint(a: &P, b: &P, c: &P, d: &P) -> Formula {
    let collinear_case = Formula::And(vec![
        collinear(c, a, b),
        collinear(d, a, b),
        not(between(a, c, d)),
        not(between(b, c, d)),
        not(between(c, a, b)),
        not(between(d, a, b)),
    ]);
    let mut alts = Vec::new();
    if a.len() == 3 {
        alts.push(ne(triple(a, b, c, d), zero()));
    }
    alts.extend([same_side(a, b, c, d), same_side(c, d, a, b), collinear_case]);
    Formula::Or(alts)
}

struct Vars {
    names: Vec<String>,
}

impl Vars {
    fn point(&mut self, prefix: &str, d: usize) -> P {
        ["x", "y", "z"][..d]
            .iter()
            .map(|c| {
                self.names.push(format!("{prefix}_{c}"));
                self.names.len() - 1
            })
            .collect()
    }
}

/// Non-crossing conditions of a straight-line drawing with vertices `v`.
fn drawing_conditions(g: &Graph, v: &[P], out: &mut Vec<Formula>) {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    for (i, &(a, b)) in edges.iter().enumerate() {
        for &(c, d) in &edges[i + 1..] {
            let shared = [c, d].into_iter().find(|&x| x == a || x == b);
            match shared {
                None => out.push(disjoint(&v[a], &v[b], &v[c], &v[d])),
                Some(j) => {
                    let i = if a == j { b } else { a };
                    let m = if c == j { d } else { c };
                    out.push(not(between(&v[m], &v[i], &v[j])));
                    out.push(not(between(&v[i], &v[j], &v[m])));
                }
            }
        }
    }
}

/// The formula "ρˡ_d(G) ≤ k": vertices `v1..vn`, then per line the points
/// `p`, `q` (l = 1) or per plane three points `a`, `b`, `c` (l = 2).
pub fn emit_rho_formula(g: &Graph, k: usize, d: usize, l: usize) -> Result<RealFormula, FormulaError> {
    if !matches!((d, l), (2, 1) | (3, 1) | (3, 2)) {
        return Err(FormulaError::UnsupportedCombination { d, l });
    }
    let mut vars = Vars { names: Vec::new() };
    let v: Vec<P> = (0..g.n()).map(|i| vars.point(&format!("v{}", i + 1), d)).collect();
    let mut conj = Vec::new();
    for i in 0..g.n() {
        for j in i + 1..g.n() {
            conj.push(distinct(&v[i], &v[j]));
        }
    }
    if l == 1 {
        let lines: Vec<(P, P)> =
            (1..=k).map(|i| (vars.point(&format!("p{i}"), d), vars.point(&format!("q{i}"), d))).collect();
        for (p, q) in &lines {
            conj.push(distinct(p, q));
        }
        for (a, b) in g.edges() {
            conj.push(Formula::Or(
                lines
                    .iter()
                    .map(|(p, q)| Formula::And(vec![between(&v[a], p, q), between(&v[b], p, q)]))
                    .collect(),
            ));
        }
    } else {
        let planes: Vec<[P; 3]> = (1..=k)
            .map(|i| ["a", "b", "c"].map(|c| vars.point(&format!("h{i}{c}"), 3)))
            .collect();
        for [a, b, c] in &planes {
            conj.push(Formula::Or(cross3(a, b, c).into_iter().map(|x| ne(x, zero())).collect()));
        }
        for (x, y) in g.edges() {
            conj.push(Formula::Or(
                planes
                    .iter()
                    .map(|[a, b, c]| {
                        Formula::And(vec![eq(triple(a, b, c, &v[x]), zero()), eq(triple(a, b, c, &v[y]), zero())])
                    })
                    .collect(),
            ));
        }
    }
    drawing_conditions(g, &v, &mut conj);
    Ok(RealFormula { vars: vars.names, matrix: Formula::And(conj) })
}

/// The formula "the template has a crossing-free drawing with every factor
/// on its own line": one point per vertex.
pub fn emit_stretch_formula(h: &TemplateGraph, d: usize) -> Result<RealFormula, FormulaError> {
    if d != 2 && d != 3 {
        return Err(FormulaError::UnsupportedCombination { d, l: 1 });
    }
    let h = TemplateGraph::from_factorized(h.factorized.clone())?;
    let n = h.graph().n();
    let mut vars = Vars { names: Vec::new() };
    let v: Vec<P> = (0..n).map(|i| vars.point(&format!("v{}", i + 1), d)).collect();
    let mut conj = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            conj.push(distinct(&v[i], &v[j]));
        }
    }
    let fs = h.factors();
    for f in fs {
        for w in f.windows(3) {
            conj.push(between(&v[w[1]], &v[w[0]], &v[w[2]]));
        }
    }
    let sets: Vec<std::collections::BTreeSet<usize>> = fs.iter().map(|f| f.iter().copied().collect()).collect();
    for i in 0..fs.len() {
        let (a, b) = (&v[fs[i][0]], &v[*fs[i].last().unwrap()]);
        for j in i + 1..fs.len() {
            let (c, e) = (&v[fs[j][0]], &v[*fs[j].last().unwrap()]);
            conj.push(not(Formula::And(vec![collinear(c, a, b), collinear(e, a, b)])));
            if sets[i].is_disjoint(&sets[j]) {
                conj.push(disjoint(a, b, c, e));
            }
        }
    }
    Ok(RealFormula { vars: vars.names, matrix: Formula::And(conj) })
}

//! Independent oracles shared by the integration and acceptance tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use affine_cover::graph::Graph;
use num_rational::Ratio;
use petgraph::graph::UnGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Q = Ratio<i128>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ---------------------------------------------------------------------------
// graphs up to isomorphism

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn rec(p: &mut Vec<usize>, i: usize, out: &mut Vec<Vec<usize>>) {
        if i == p.len() {
            out.push(p.clone());
            return;
        }
        for j in i..p.len() {
            p.swap(i, j);
            rec(p, i + 1, out);
            p.swap(i, j);
        }
    }
    rec(&mut p, 0, &mut out);
    out
}

/// Smallest edge bitmask over all relabellings.
fn canonical_mask(n: usize, mask: u32, perm_maps: &[Vec<usize>]) -> u32 {
    let mut best = u32::MAX;
    for pm in perm_maps {
        let mut m = 0u32;
        for (i, &j) in pm.iter().enumerate() {
            if mask >> i & 1 == 1 {
                m |= 1 << j;
            }
        }
        best = best.min(m);
    }
    let _ = n;
    best
}

fn edge_perm_maps(n: usize) -> Vec<Vec<usize>> {
    let ps = pairs(n);
    let index: BTreeMap<(usize, usize), usize> = ps.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    permutations(n)
        .into_iter()
        .map(|p| ps.iter().map(|&(u, v)| index[&(p[u].min(p[v]), p[u].max(p[v]))]).collect())
        .collect()
}

fn from_mask(n: usize, mask: u32) -> Graph {
    let e: Vec<(usize, usize)> = pairs(n).into_iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| e).collect();
    Graph::from_edges(n, &e).unwrap()
}

fn mask_of(g: &Graph) -> u32 {
    let ps = pairs(g.n());
    ps.iter().enumerate().filter(|(_, &(u, v))| g.has_edge(u, v)).fold(0, |m, (i, _)| m | 1 << i)
}

/// All graphs on exactly `n ≤ 7` vertices, one per isomorphism class.
/// Seven-vertex graphs are obtained by adding a vertex to every six-vertex
/// class, since deleting any vertex leads back to one of them.
pub fn graphs_up_to_iso(n: usize) -> Vec<Graph> {
    assert!(n <= 7);
    if n <= 6 {
        let maps = edge_perm_maps(n);
        let m = n * n.saturating_sub(1) / 2;
        let mut seen = BTreeSet::new();
        for mask in 0..1u32 << m {
            seen.insert(canonical_mask(n, mask, &maps));
        }
        return seen.into_iter().map(|c| from_mask(n, c)).collect();
    }
    let maps = edge_perm_maps(7);
    let mut seen = BTreeSet::new();
    for base in graphs_up_to_iso(6) {
        for nb in 0..1u32 << 6 {
            let mut g = base.clone();
            let v = g.add_vertex();
            for u in 0..6 {
                if nb >> u & 1 == 1 {
                    g.add_edge(u, v).unwrap();
                }
            }
            seen.insert(canonical_mask(7, mask_of(&g), &maps));
        }
    }
    seen.into_iter().map(|c| from_mask(7, c)).collect()
}

pub fn is_connected(g: &Graph) -> bool {
    g.n() == 0 || g.components().len() == 1
}

/// Erdős–Rényi graph with a random density.
pub fn random_graph(r: &mut ChaCha8Rng, max_n: usize) -> Graph {
    let n = r.random_range(1..=max_n);
    let p: f64 = r.random_range(0.05..0.95);
    let mut g = Graph::new(n);
    for (u, v) in pairs(n) {
        if r.random_bool(p) {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

// ---------------------------------------------------------------------------
// exact planar geometry over Q

pub type P2 = [Q; 2];

pub fn q(x: i128) -> Q {
    Q::from_integer(x)
}

fn sub(a: &P2, b: &P2) -> P2 {
    [a[0] - b[0], a[1] - b[1]]
}

fn cross(a: &P2, b: &P2) -> Q {
    a[0] * b[1] - a[1] * b[0]
}

fn orient(a: &P2, b: &P2, c: &P2) -> Q {
    cross(&sub(b, a), &sub(c, a))
}

/// `x` lies on the closed segment `ab`.
fn on_closed(x: &P2, a: &P2, b: &P2) -> bool {
    orient(a, b, x) == q(0)
        && a[0].min(b[0]) <= x[0]
        && x[0] <= a[0].max(b[0])
        && a[1].min(b[1]) <= x[1]
        && x[1] <= a[1].max(b[1])
}

fn closed_segments_meet(a: &P2, b: &P2, c: &P2, d: &P2) -> bool {
    let (o1, o2, o3, o4) = (orient(a, b, c), orient(a, b, d), orient(c, d, a), orient(c, d, b));
    let z = q(0);
    if ((o1 > z && o2 < z) || (o1 < z && o2 > z)) && ((o3 > z && o4 < z) || (o3 < z && o4 > z)) {
        return true;
    }
    on_closed(c, a, b) || on_closed(d, a, b) || on_closed(a, c, d) || on_closed(b, c, d)
}

/// Straight-line drawing without coincidences, crossings, overlaps or
/// vertices inside edges.
pub fn is_plane_drawing(g: &Graph, pos: &[P2]) -> bool {
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if pos[u] == pos[v] {
                return false;
            }
        }
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    for &(a, b) in &edges {
        for w in 0..g.n() {
            if w != a && w != b && on_closed(&pos[w], &pos[a], &pos[b]) {
                return false;
            }
        }
    }
    for (i, &(a, b)) in edges.iter().enumerate() {
        for &(c, d) in &edges[i + 1..] {
            let shared = [a, b].iter().filter(|x| [c, d].contains(x)).count();
            if shared == 0 {
                if closed_segments_meet(&pos[a], &pos[b], &pos[c], &pos[d]) {
                    return false;
                }
            } else {
                // adjacent edges may only touch at the common endpoint
                let (s, x, y) = if a == c {
                    (a, b, d)
                } else if a == d {
                    (a, b, c)
                } else if b == c {
                    (b, a, d)
                } else {
                    (b, a, c)
                };
                if orient(&pos[s], &pos[x], &pos[y]) == q(0) {
                    let (dx, dy) = (sub(&pos[x], &pos[s]), sub(&pos[y], &pos[s]));
                    if dx[0] * dy[0] + dx[1] * dy[1] > q(0) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// brute-force line cover in the plane

#[derive(Clone)]
struct L {
    p: P2,
    d: P2,
}

fn line(px: i128, py: i128, dx: i128, dy: i128) -> L {
    L { p: [q(px), q(py)], d: [q(dx), q(dy)] }
}

/// Arrangements of `c ≤ 3` lines up to affine maps.
fn arrangements(c: usize) -> Vec<Vec<L>> {
    match c {
        1 => vec![vec![line(0, 0, 1, 0)]],
        2 => vec![vec![line(0, 0, 1, 0), line(0, 0, 0, 1)], vec![line(0, 0, 1, 0), line(0, 1, 1, 0)]],
        3 => vec![
            vec![line(0, 0, 1, 0), line(0, 0, 0, 1), line(1, 0, -1, 1)],
            vec![line(0, 0, 1, 0), line(0, 0, 0, 1), line(0, 0, 1, 1)],
            vec![line(0, 0, 1, 0), line(0, 1, 1, 0), line(0, 0, 0, 1)],
            vec![line(0, 0, 1, 0), line(0, 1, 1, 0), line(0, 2, 1, 0)],
        ],
        _ => panic!("oracle handles at most three lines"),
    }
}

fn meet(a: &L, b: &L) -> Option<P2> {
    let den = cross(&a.d, &b.d);
    if den == q(0) {
        return None;
    }
    let t = cross(&sub(&b.p, &a.p), &b.d) / den;
    Some([a.p[0] + t * a.d[0], a.p[1] + t * a.d[1]])
}

fn contains(l: &L, x: &P2) -> bool {
    cross(&l.d, &sub(x, &l.p)) == q(0)
}

fn param(l: &L, x: &P2) -> Q {
    let v = sub(x, &l.p);
    if l.d[0] != q(0) {
        v[0] / l.d[0]
    } else {
        v[1] / l.d[1]
    }
}

/// Does `g` have a crossing-free straight-line drawing whose edges lie on
/// at most `k ≤ 3` lines? Searches every edge partition into linear
/// forests, every arrangement type, and every order of the vertices along
/// each line.
pub fn brute_line_cover(g: &Graph, k: usize) -> bool {
    let keep: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) > 0).collect();
    let g = g.induced(&keep);
    if g.m() == 0 {
        return true;
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut class = vec![0usize; edges.len()];
    let mut found = false;
    partitions(&g, &edges, k, 0, 0, &mut class, &mut |cls, used| {
        for arr in arrangements(used) {
            if place_all(&g, &edges, cls, &arr) {
                return true;
            }
        }
        false
    }, &mut found);
    found
}

fn class_ok(g: &Graph, edges: &[(usize, usize)], cls: &[usize], upto: usize, c: usize) -> bool {
    // degree ≤ 2 and acyclic within class c among the first `upto` edges
    let mut deg = vec![0; g.n()];
    let mut comp: Vec<usize> = (0..g.n()).collect();
    fn find(c: &mut [usize], x: usize) -> usize {
        if c[x] != x {
            let r = find(c, c[x]);
            c[x] = r;
        }
        c[x]
    }
    for i in 0..upto {
        if cls[i] != c {
            continue;
        }
        let (u, v) = edges[i];
        deg[u] += 1;
        deg[v] += 1;
        if deg[u] > 2 || deg[v] > 2 {
            return false;
        }
        let (a, b) = (find(&mut comp, u), find(&mut comp, v));
        if a == b {
            return false;
        }
        comp[a] = b;
    }
    true
}

fn partitions(
    g: &Graph,
    edges: &[(usize, usize)],
    k: usize,
    i: usize,
    used: usize,
    cls: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize], usize) -> bool,
    found: &mut bool,
) {
    if *found {
        return;
    }
    if i == edges.len() {
        *found = f(cls, used);
        return;
    }
    for c in 0..(used + 1).min(k) {
        cls[i] = c;
        if class_ok(g, edges, cls, i + 1, c) {
            partitions(g, edges, k, i + 1, used.max(c + 1), cls, f, found);
        }
    }
}

fn place_all(g: &Graph, edges: &[(usize, usize)], cls: &[usize], arr: &[L]) -> bool {
    let c = arr.len();
    permutations(c).into_iter().any(|perm| {
        let lines: Vec<L> = (0..c).map(|i| arr[perm[i]].clone()).collect();
        place(g, edges, cls, &lines)
    })
}

/// Lines of class `c` are `lines[c]`; vertices on two or more classes sit at
/// the common point, the others are ordered along their line.
fn place(g: &Graph, edges: &[(usize, usize)], cls: &[usize], lines: &[L]) -> bool {
    let n = g.n();
    let mut at: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        at[u].insert(cls[i]);
        at[v].insert(cls[i]);
    }
    let mut fixed: Vec<Option<P2>> = vec![None; n];
    for v in 0..n {
        let ls: Vec<usize> = at[v].iter().copied().collect();
        if ls.len() >= 2 {
            let Some(p) = meet(&lines[ls[0]], &lines[ls[1]]) else { return false };
            if ls.iter().any(|&l| !contains(&lines[l], &p)) {
                return false;
            }
            fixed[v] = Some(p);
        }
    }
    for u in 0..n {
        for v in u + 1..n {
            if fixed[u].is_some() && fixed[u] == fixed[v] {
                return false;
            }
        }
    }
    // crossing points of the arrangement not occupied by a vertex
    let mut markers: Vec<P2> = Vec::new();
    for a in 0..lines.len() {
        for b in a + 1..lines.len() {
            if let Some(p) = meet(&lines[a], &lines[b]) {
                if !markers.contains(&p) && !fixed.iter().any(|f| f.as_ref() == Some(&p)) {
                    markers.push(p);
                }
            }
        }
    }
    // per line: the blocks whose order is free
    // per line: candidate vertex sequences along it
    let mut choices: Vec<Vec<Vec<usize>>> = Vec::new();
    for (l, ln) in lines.iter().enumerate() {
        let sub_edges: Vec<(usize, usize)> = edges.iter().enumerate().filter(|(i, _)| cls[*i] == l).map(|(_, &e)| e).collect();
        let mut blocks: Vec<Vec<usize>> = paths_of(n, &sub_edges);
        for v in 0..n {
            if !at[v].contains(&l) {
                if let Some(p) = &fixed[v] {
                    if contains(ln, p) {
                        blocks.push(vec![v]);
                    }
                }
            }
        }
        let mut seqs = Vec::new();
        for order in permutations(blocks.len()) {
            let multi: Vec<usize> = order.iter().copied().filter(|&b| blocks[b].len() > 1).collect();
            for flips in 0..1u32 << multi.len() {
                let mut seq = Vec::new();
                for &b in &order {
                    let mut blk = blocks[b].clone();
                    if let Some(j) = multi.iter().position(|&x| x == b) {
                        if flips >> j & 1 == 1 {
                            blk.reverse();
                        }
                    }
                    seq.extend(blk);
                }
                // fixed vertices must appear in increasing parameter order
                let ps: Vec<Q> = seq.iter().filter_map(|&v| fixed[v].as_ref().map(|p| param(ln, p))).collect();
                if ps.windows(2).all(|w| w[0] < w[1]) {
                    seqs.push(seq);
                }
            }
        }
        if seqs.is_empty() {
            return false;
        }
        choices.push(seqs);
    }
    // choose a sequence per line, then marker gaps, then check
    let mut idx = vec![0usize; lines.len()];
    loop {
        let seqs: Vec<&Vec<usize>> = (0..lines.len()).map(|l| &choices[l][idx[l]]).collect();
        if try_markers(g, lines, &seqs, &fixed, &markers) {
            return true;
        }
        let mut l = 0;
        loop {
            if l == lines.len() {
                return false;
            }
            idx[l] += 1;
            if idx[l] < choices[l].len() {
                break;
            }
            idx[l] = 0;
            l += 1;
        }
    }
}

fn paths_of(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] || adj[s].len() != 1 {
            continue;
        }
        let mut p = vec![s];
        seen[s] = true;
        let mut cur = s;
        while let Some(&nx) = adj[cur].iter().find(|&&w| !seen[w]) {
            seen[nx] = true;
            p.push(nx);
            cur = nx;
        }
        out.push(p);
    }
    out
}

/// Insert the empty crossing points into every admissible gap, assign
/// parameters and test the drawing.
fn try_markers(g: &Graph, lines: &[L], seqs: &[&Vec<usize>], fixed: &[Option<P2>], markers: &[P2]) -> bool {
    // markers on each line, in parameter order
    let on: Vec<Vec<Q>> = lines
        .iter()
        .map(|ln| {
            let mut ts: Vec<Q> = markers.iter().filter(|m| contains(ln, m)).map(|m| param(ln, m)).collect();
            ts.sort();
            ts
        })
        .collect();
    // gap choices: for every line a non-decreasing gap index per marker
    let mut options: Vec<Vec<Vec<usize>>> = Vec::new();
    for l in 0..lines.len() {
        let len = seqs[l].len();
        let mut opts = Vec::new();
        let mut cur = vec![0usize; on[l].len()];
        fn rec(i: usize, lo: usize, len: usize, cur: &mut Vec<usize>, opts: &mut Vec<Vec<usize>>) {
            if i == cur.len() {
                opts.push(cur.clone());
                return;
            }
            for gidx in lo..=len {
                cur[i] = gidx;
                rec(i + 1, gidx, len, cur, opts);
            }
        }
        rec(0, 0, len, &mut cur, &mut opts);
        options.push(opts);
    }
    let mut idx = vec![0usize; lines.len()];
    loop {
        if let Some(pos) = positions(g.n(), lines, seqs, fixed, &on, &idx.iter().enumerate().map(|(l, &i)| options[l][i].clone()).collect::<Vec<_>>()) {
            if is_plane_drawing(g, &pos) {
                return true;
            }
        }
        let mut l = 0;
        loop {
            if l == lines.len() {
                return false;
            }
            idx[l] += 1;
            if idx[l] < options[l].len() {
                break;
            }
            idx[l] = 0;
            l += 1;
        }
    }
}

enum Item {
    V(usize),
    M(Q),
}

fn positions(n: usize, lines: &[L], seqs: &[&Vec<usize>], fixed: &[Option<P2>], on: &[Vec<Q>], gaps: &[Vec<usize>]) -> Option<Vec<P2>> {
    let mut pos: Vec<Option<P2>> = fixed.to_vec();
    for (l, ln) in lines.iter().enumerate() {
        let mut items = Vec::new();
        let mut mi = 0;
        for (i, &v) in seqs[l].iter().enumerate() {
            while mi < gaps[l].len() && gaps[l][mi] == i {
                items.push(Item::M(on[l][mi].clone()));
                mi += 1;
            }
            items.push(Item::V(v));
        }
        while mi < gaps[l].len() {
            items.push(Item::M(on[l][mi].clone()));
            mi += 1;
        }
        let known: Vec<Option<Q>> = items
            .iter()
            .map(|it| match it {
                Item::M(t) => Some(*t),
                Item::V(v) => fixed[*v].as_ref().map(|p| param(ln, p)),
            })
            .collect();
        let ks: Vec<&Q> = known.iter().flatten().collect();
        if ks.windows(2).any(|w| w[0] >= w[1]) {
            return None;
        }
        // interpolate free items between known neighbours
        let mut i = 0;
        while i < items.len() {
            if known[i].is_some() {
                i += 1;
                continue;
            }
            let start = i;
            while i < items.len() && known[i].is_none() {
                i += 1;
            }
            let lo = if start > 0 { known[start - 1] } else { None };
            let hi = if i < items.len() { known[i] } else { None };
            let cnt = (i - start) as i128;
            for (j, it) in items[start..i].iter().enumerate() {
                let j = j as i128 + 1;
                let t = match (lo, hi) {
                    (Some(a), Some(b)) => a + (b - a) * Q::new(j, cnt + 1),
                    (Some(a), None) => a + q(j),
                    (None, Some(b)) => b - q(cnt + 1 - j),
                    (None, None) => q(j),
                };
                if let Item::V(v) = it {
                    pos[*v] = Some([ln.p[0] + t * ln.d[0], ln.p[1] + t * ln.d[1]]);
                }
            }
        }
    }
    (0..n).map(|v| pos[v]).collect()
}

// ---------------------------------------------------------------------------
// pre-templates by brute force

/// Pre-templates with `k ≤ 3` factors up to factor-preserving isomorphism,
/// as coloured petgraph graphs (edge weight = factor).
pub fn brute_pretemplates(k: usize) -> Vec<UnGraph<(), usize>> {
    // crossings are label sets of size ≥ 2; two factors share ≤ 1 crossing
    let labels: Vec<u32> = (1u32..1 << k).filter(|m| m.count_ones() >= 2).collect();
    let mut out: Vec<UnGraph<(), usize>> = Vec::new();
    for fam in 1u32..1 << labels.len() {
        let chosen: Vec<u32> = (0..labels.len()).filter(|&i| fam >> i & 1 == 1).map(|i| labels[i]).collect();
        let mut pair_ok = true;
        for a in 0..k {
            for b in a + 1..k {
                let both = chosen.iter().filter(|&&m| m >> a & 1 == 1 && m >> b & 1 == 1).count();
                pair_ok &= both <= 1;
            }
        }
        let every = (0..k).all(|f| chosen.iter().any(|&m| m >> f & 1 == 1));
        if !pair_ok || !every {
            continue;
        }
        let along: Vec<Vec<usize>> = (0..k).map(|f| (0..chosen.len()).filter(|&c| chosen[c] >> f & 1 == 1).collect()).collect();
        let orders: Vec<Vec<Vec<usize>>> = along.iter().map(|a| permutations(a.len()).into_iter().map(|p| p.iter().map(|&i| a[i]).collect()).collect()).collect();
        let mut idx = vec![0; k];
        loop {
            let mut g: UnGraph<(), usize> = UnGraph::default();
            let cross: Vec<_> = chosen.iter().map(|_| g.add_node(())).collect();
            for f in 0..k {
                let mut prev = g.add_node(());
                for &c in &orders[f][idx[f]] {
                    g.add_edge(prev, cross[c], f);
                    prev = cross[c];
                }
                let t = g.add_node(());
                g.add_edge(prev, t, f);
            }
            if !out.iter().any(|h| iso_up_to_factor_names(h, &g, k)) {
                out.push(g);
            }
            let mut f = 0;
            loop {
                if f == k {
                    break;
                }
                idx[f] += 1;
                if idx[f] < orders[f].len() {
                    break;
                }
                idx[f] = 0;
                f += 1;
            }
            if f == k {
                break;
            }
        }
    }
    out
}

fn iso_up_to_factor_names(a: &UnGraph<(), usize>, b: &UnGraph<(), usize>, k: usize) -> bool {
    if a.node_count() != b.node_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    permutations(k).into_iter().any(|p| {
        let mut c = b.clone();
        for w in c.edge_weights_mut() {
            *w = p[*w];
        }
        petgraph::algo::is_isomorphic_matching(a, &c, |_, _| true, |x, y| x == y)
    })
}

/// Coloured petgraph view of a factorized graph.
pub fn colored(f: &affine_cover::templates::FactorizedGraph) -> UnGraph<(), usize> {
    let mut g: UnGraph<(), usize> = UnGraph::default();
    let nodes: Vec<_> = (0..f.graph.n()).map(|_| g.add_node(())).collect();
    for (i, fac) in f.factors.iter().enumerate() {
        for w in fac.windows(2) {
            g.add_edge(nodes[w[0]], nodes[w[1]], i);
        }
    }
    g
}

pub fn same_pretemplate_sets(a: &[UnGraph<(), usize>], b: &[UnGraph<(), usize>], k: usize) -> bool {
    a.len() == b.len() && a.iter().all(|x| b.iter().filter(|y| iso_up_to_factor_names(x, y, k)).count() == 1)
}

// ---------------------------------------------------------------------------
// one-in-three by plain backtracking

/// Is there a 1-in-3 satisfying assignment extending `a`?
pub fn one_in_three_extends(clauses: &[[usize; 3]], a: &mut Vec<Option<bool>>) -> bool {
    for c in clauses {
        let t = c.iter().filter(|&&x| a[x] == Some(true)).count();
        let f = c.iter().filter(|&&x| a[x] == Some(false)).count();
        if t > 1 || f == 3 {
            return false;
        }
    }
    // branch on a variable of the first undecided clause
    let Some(x) = clauses.iter().flat_map(|c| c.iter()).copied().find(|&x| a[x].is_none()) else { return true };
    for val in [false, true] {
        a[x] = Some(val);
        if one_in_three_extends(clauses, a) {
            a[x] = None;
            return true;
        }
    }
    a[x] = None;
    false
}

//! Planarity: a yes/no test and explicit rotation systems.

use std::collections::BTreeSet;

use petgraph::graph::UnGraph;

use super::{Graph, GraphError};

/// Cyclic order of neighbours around every vertex.
pub type Rotation = Vec<Vec<usize>>;

pub fn is_planar(g: &Graph) -> bool {
    let mut pg = UnGraph::<(), ()>::with_capacity(g.n(), g.m());
    let ids: Vec<_> = (0..g.n()).map(|_| pg.add_node(())).collect();
    for (u, v) in g.edges() {
        pg.add_edge(ids[u], ids[v], ());
    }
    rustworkx_core::planar::is_planar(&pg)
}

fn succ(rot: &Rotation, v: usize, u: usize) -> usize {
    let r = &rot[v];
    let i = r.iter().position(|&x| x == u).expect("dart not in rotation");
    r[(i + 1) % r.len()]
}

/// Face boundaries traced from a rotation system: the dart following `u→v`
/// is `v→w` where `w` succeeds `u` in the rotation at `v`.
pub fn faces(g: &Graph, rot: &Rotation) -> Vec<Vec<usize>> {
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut out = Vec::new();
    for (a, b) in g.edges() {
        for (u0, v0) in [(a, b), (b, a)] {
            if done.contains(&(u0, v0)) {
                continue;
            }
            let mut face = Vec::new();
            let (mut u, mut v) = (u0, v0);
            while done.insert((u, v)) {
                face.push(u);
                let w = succ(rot, v, u);
                u = v;
                v = w;
            }
            out.push(face);
        }
    }
    out
}

/// Check that `rot` lists every vertex's neighbours exactly once and that
/// Euler's formula holds on every component.
pub fn validate_rotation(g: &Graph, rot: &Rotation) -> Result<(), GraphError> {
    let bad = |s: String| Err(GraphError::BadRotation(s));
    if rot.len() != g.n() {
        return bad(format!("{} rotations for {} vertices", rot.len(), g.n()));
    }
    for v in 0..g.n() {
        let mut r = rot[v].clone();
        r.sort_unstable();
        if r != g.neighbors(v) {
            return bad(format!("rotation at {v} is not a permutation of its neighbours"));
        }
    }
    let fs = faces(g, rot);
    let mut comp_of = vec![0; g.n()];
    let comps = g.components();
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            comp_of[v] = i;
        }
    }
    let mut f = vec![0i64; comps.len()];
    for face in &fs {
        f[comp_of[face[0]]] += 1;
    }
    for (i, c) in comps.iter().enumerate() {
        let e: usize = c.iter().map(|&v| g.degree(v)).sum::<usize>() / 2;
        if e == 0 {
            continue;
        }
        if c.len() as i64 - e as i64 + f[i] != 2 {
            return bad(format!("component of vertex {} violates Euler's formula", c[0]));
        }
    }
    Ok(())
}

/// A planar rotation system for `g`, or `None` if `g` is not planar.
///
/// Blocks are embedded separately by repeatedly routing a path of some
/// fragment through a face containing all its attachments (choosing a fragment
/// with a unique such face whenever one exists), then glued at cut vertices.
pub fn planar_embedding(g: &Graph) -> Option<Rotation> {
    let mut rot: Rotation = vec![Vec::new(); g.n()];
    for block in blocks(g) {
        let mut verts: Vec<usize> = block.iter().flat_map(|&(u, v)| [u, v]).collect();
        verts.sort_unstable();
        verts.dedup();
        if block.len() == 1 {
            let (u, v) = block[0];
            rot[u].push(v);
            rot[v].push(u);
            continue;
        }
        let local: Vec<(usize, usize)> = block
            .iter()
            .map(|&(u, v)| (verts.binary_search(&u).unwrap(), verts.binary_search(&v).unwrap()))
            .collect();
        let h = Graph::from_edges(verts.len(), &local).expect("block is simple");
        let lr = embed_biconnected(&h)?;
        for (i, r) in lr.into_iter().enumerate() {
            rot[verts[i]].extend(r.into_iter().map(|x| verts[x]));
        }
    }
    Some(rot)
}

/// Edge sets of the biconnected components.
fn blocks(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    struct St<'a> {
        g: &'a Graph,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(usize, usize)>,
        out: Vec<Vec<(usize, usize)>>,
    }
    fn dfs(s: &mut St, u: usize, parent: usize) {
        s.time += 1;
        s.disc[u] = s.time;
        s.low[u] = s.time;
        for i in 0..s.g.degree(u) {
            let w = s.g.neighbors(u)[i];
            if s.disc[w] == 0 {
                s.stack.push((u, w));
                dfs(s, w, u);
                s.low[u] = s.low[u].min(s.low[w]);
                if s.low[w] >= s.disc[u] {
                    let mut comp = Vec::new();
                    while let Some(e) = s.stack.pop() {
                        comp.push(e);
                        if e == (u, w) {
                            break;
                        }
                    }
                    s.out.push(comp);
                }
            } else if w != parent && s.disc[w] < s.disc[u] {
                s.stack.push((u, w));
                s.low[u] = s.low[u].min(s.disc[w]);
            }
        }
    }
    let n = g.n();
    let mut s = St { g, disc: vec![0; n], low: vec![0; n], time: 0, stack: Vec::new(), out: Vec::new() };
    for v in 0..n {
        if s.disc[v] == 0 {
            dfs(&mut s, v, usize::MAX);
        }
    }
    s.out
}

fn find_cycle(h: &Graph) -> Vec<usize> {
    let n = h.n();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    let mut stack = vec![(0usize, 0usize)];
    depth[0] = 0;
    while let Some((u, i)) = stack.pop() {
        if i >= h.degree(u) {
            continue;
        }
        stack.push((u, i + 1));
        let w = h.neighbors(u)[i];
        if depth[w] == usize::MAX {
            depth[w] = depth[u] + 1;
            parent[w] = u;
            stack.push((w, 0));
        } else if w != parent[u] && depth[w] < depth[u] {
            let mut cyc = vec![u];
            let mut x = u;
            while x != w {
                x = parent[x];
                cyc.push(x);
            }
            return cyc;
        }
    }
    unreachable!("biconnected block with at least two edges has a cycle")
}

fn embed_biconnected(h: &Graph) -> Option<Rotation> {
    let n = h.n();
    let cyc = find_cycle(h);
    let mut on = vec![false; n];
    let mut used: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (i, &v) in cyc.iter().enumerate() {
        on[v] = true;
        let w = cyc[(i + 1) % cyc.len()];
        used.insert((v.min(w), v.max(w)));
    }
    let mut rev = cyc.clone();
    rev.reverse();
    let mut fs = vec![cyc, rev];
    while used.len() < h.m() {
        // fragments: (attachments, path between two of them)
        let mut frags: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        for (u, v) in h.edges() {
            if on[u] && on[v] && !used.contains(&(u, v)) {
                frags.push((vec![u, v], vec![u, v]));
            }
        }
        let mut seen = vec![false; n];
        for s in 0..n {
            if on[s] || seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            let mut att = BTreeSet::new();
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &w in h.neighbors(u) {
                    if on[w] {
                        att.insert(w);
                    } else if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            let att: Vec<usize> = att.into_iter().collect();
            let path = fragment_path(h, &on, &comp, att[0]);
            frags.push((att, path));
        }
        let admissible = |att: &[usize]| -> Vec<usize> {
            (0..fs.len()).filter(|&f| att.iter().all(|a| fs[f].contains(a))).collect()
        };
        let mut choice = None;
        for (idx, (att, _)) in frags.iter().enumerate() {
            let adm = admissible(att);
            if adm.is_empty() {
                return None;
            }
            if adm.len() == 1 {
                choice = Some((idx, adm[0]));
                break;
            }
            if choice.is_none() {
                choice = Some((idx, adm[0]));
            }
        }
        let (idx, f) = choice.unwrap();
        let path = &frags[idx].1;
        let face = fs.swap_remove(f);
        let (a, b) = (path[0], *path.last().unwrap());
        let t = face.len();
        let i = face.iter().position(|&x| x == a).unwrap();
        let j = face.iter().position(|&x| x == b).unwrap();
        let inner = &path[1..path.len() - 1];
        let mut f1: Vec<usize> = (0..t).map(|s| face[(i + s) % t]).take((j + t - i) % t + 1).collect();
        f1.extend(inner.iter().rev());
        let mut f2: Vec<usize> = (0..t).map(|s| face[(j + s) % t]).take((i + t - j) % t + 1).collect();
        f2.extend(inner.iter());
        fs.push(f1);
        fs.push(f2);
        for w in path.windows(2) {
            used.insert((w[0].min(w[1]), w[0].max(w[1])));
        }
        for &v in path {
            on[v] = true;
        }
    }
    // succ_v(u) = w for every consecutive u, v, w on a face
    let mut next: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for face in &fs {
        let t = face.len();
        for i in 0..t {
            next[face[(i + 1) % t]].push((face[i], face[(i + 2) % t]));
        }
    }
    let mut rot = vec![Vec::new(); n];
    for v in 0..n {
        let first = h.neighbors(v)[0];
        let mut u = first;
        loop {
            rot[v].push(u);
            u = next[v].iter().find(|p| p.0 == u).unwrap().1;
            if u == first {
                break;
            }
        }
        debug_assert_eq!(rot[v].len(), h.degree(v));
    }
    Some(rot)
}

/// Path from attachment `a` through the component `comp` to another
/// attachment.
fn fragment_path(h: &Graph, on: &[bool], comp: &[usize], a: usize) -> Vec<usize> {
    let n = h.n();
    let mut inside = vec![false; n];
    for &v in comp {
        inside[v] = true;
    }
    let mut parent = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    for &w in h.neighbors(a) {
        if inside[w] && parent[w] == usize::MAX {
            parent[w] = a;
            queue.push_back(w);
        }
    }
    while let Some(u) = queue.pop_front() {
        if let Some(&b) = h.neighbors(u).iter().find(|&&b| on[b] && b != a) {
            let mut path = vec![b, u];
            let mut x = u;
            while parent[x] != a {
                x = parent[x];
                path.push(x);
            }
            path.push(a);
            path.reverse();
            return path;
        }
        for &w in h.neighbors(u) {
            if inside[w] && parent[w] == usize::MAX {
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    unreachable!("fragment of a biconnected graph has two attachments")
}

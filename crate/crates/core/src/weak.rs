//! Exact weak cover numbers: π¹₃ equals the linear vertex arboricity and π²₃
//! the vertex thickness, both computed as minimum partitions into vertex
//! sets inducing a linear forest, resp. a planar graph. The chromatic number
//! (partitions into independent sets) completes the sandwich
//! `vt ≤ lva ≤ χ ≤ 4·vt`.

use thiserror::Error;

use crate::graph::{is_planar, Graph};

pub const DEFAULT_LIMIT: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeakError {
    #[error("{n} vertices exceed the exact-search limit {limit}")]
    TooLarge { n: usize, limit: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakCoverResult {
    pub value: usize,
    /// Parts in order of their smallest vertex, each sorted.
    pub partition: Vec<Vec<usize>>,
}

fn members(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask >> i & 1 == 1).collect()
}

/// Minimum partition of the vertices into sets satisfying a hereditary
/// predicate; among minimum partitions the one whose parts, taken in order of
/// their smallest vertex, are lexicographically least.
fn min_partition(g: &Graph, limit: usize, ok: impl Fn(&[usize]) -> bool) -> Result<WeakCoverResult, WeakError> {
    let n = g.n();
    if n > limit || n > 24 {
        return Err(WeakError::TooLarge { n, limit: limit.min(24) });
    }
    let full = if n == 0 { 0 } else { (1u32 << n) - 1 };
    let size = 1usize << n;
    let mut valid = vec![false; size];
    valid[0] = true;
    for mask in 1..size as u32 {
        // hereditary: every one-smaller subset must already be valid
        let sub_ok = members(mask).iter().all(|&v| valid[(mask & !(1 << v)) as usize]);
        valid[mask as usize] = sub_ok && ok(&members(mask));
    }
    let mut best = vec![usize::MAX; size];
    best[0] = 0;
    for mask in 1..size as u32 {
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        let mut sub = rest;
        loop {
            let part = sub | low;
            if valid[part as usize] {
                let b = best[(mask ^ part) as usize];
                if b != usize::MAX && b + 1 < best[mask as usize] {
                    best[mask as usize] = b + 1;
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    let mut partition = Vec::new();
    let mut mask = full;
    while mask != 0 {
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        let mut choice: Option<Vec<usize>> = None;
        let mut sub = rest;
        loop {
            let part = sub | low;
            if valid[part as usize] && best[(mask ^ part) as usize] == best[mask as usize] - 1 {
                let vs = members(part);
                if choice.as_ref().is_none_or(|c| vs < *c) {
                    choice = Some(vs);
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        let part = choice.expect("minimum is attained");
        mask &= !part.iter().fold(0u32, |a, &v| a | 1 << v);
        partition.push(part);
    }
    Ok(WeakCoverResult { value: partition.len(), partition })
}

/// Smallest number of parts inducing linear forests (equals π¹₃).
pub fn linear_vertex_arboricity(g: &Graph) -> Result<WeakCoverResult, WeakError> {
    linear_vertex_arboricity_with_limit(g, DEFAULT_LIMIT)
}

pub fn linear_vertex_arboricity_with_limit(g: &Graph, limit: usize) -> Result<WeakCoverResult, WeakError> {
    min_partition(g, limit, |vs| g.is_linear_forest_on(vs))
}

/// Smallest number of parts inducing planar graphs (equals π²₃).
pub fn vertex_thickness(g: &Graph) -> Result<WeakCoverResult, WeakError> {
    vertex_thickness_with_limit(g, DEFAULT_LIMIT)
}

pub fn vertex_thickness_with_limit(g: &Graph, limit: usize) -> Result<WeakCoverResult, WeakError> {
    min_partition(g, limit, |vs| {
        if vs.len() <= 4 {
            return true;
        }
        let h = g.induced(vs);
        h.m() <= 3 * h.n() - 6 && is_planar(&h)
    })
}

/// Exact chromatic number with an optimal colouring as witness.
pub fn coloring(g: &Graph) -> Result<WeakCoverResult, WeakError> {
    min_partition(g, DEFAULT_LIMIT, |vs| vs.iter().all(|&u| vs.iter().all(|&v| !g.has_edge(u, v))))
}

pub fn chromatic_number(g: &Graph) -> Result<usize, WeakError> {
    coloring(g).map(|r| r.value)
}

pub fn pi13(g: &Graph) -> Result<usize, WeakError> {
    linear_vertex_arboricity(g).map(|r| r.value)
}

pub fn pi23(g: &Graph) -> Result<usize, WeakError> {
    vertex_thickness(g).map(|r| r.value)
}

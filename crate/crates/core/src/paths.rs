//! Exact path counting and fixed-length cycle detection by depth-first
//! extension over bit-mask visited sets.

use std::ops::ControlFlow;

use crate::error::Error;
use crate::graph::{low_mask, Bits, Graph, Vertex};

/// Number of `k`-paths (paths on `k` vertices) with endpoints `u` and `v`.
///
/// Each undirected path is counted once: it has exactly one traversal that
/// starts at `u` and ends at `v`.
pub fn count_paths_between(g: &Graph, u: Vertex, v: Vertex, k: usize) -> Result<u64, Error> {
    g.degree(u)?;
    g.degree(v)?;
    if u == v {
        return Err(Error::SameEndpoints(u));
    }
    if k < 2 || k > g.n() {
        return Err(Error::PathOrderOutOfRange { k, n: g.n() });
    }
    Ok(count_paths_capped(g, u, v, k, u64::MAX))
}

/// Path count that stops once `cap` paths have been found. Returns 0 for
/// orders larger than the graph. Endpoints must be distinct and in range.
pub fn count_paths_capped(g: &Graph, u: Vertex, v: Vertex, k: usize, cap: u64) -> u64 {
    debug_assert!(u != v && u < g.n() && v < g.n());
    if k < 2 || k > g.n() {
        return 0;
    }
    let mut count = 0u64;
    let visited = (1u64 << u) | (1u64 << v);
    count_rec(g, u, v, visited, k - 1, cap, &mut count);
    count
}

// `remaining` counts the vertices still to place, including `v`.
fn count_rec(g: &Graph, cur: Vertex, v: Vertex, visited: u64, remaining: usize, cap: u64, count: &mut u64) {
    if remaining == 1 {
        if g.neighbors(cur) & (1 << v) != 0 {
            *count = count.checked_add(1).expect("path count overflow");
        }
        return;
    }
    for w in Bits(g.neighbors(cur) & !visited) {
        count_rec(g, w, v, visited | (1 << w), remaining - 1, cap, count);
        if *count >= cap {
            return;
        }
    }
}

/// Length of a shortest cycle, or `None` for forests.
pub fn girth(g: &Graph) -> Option<usize> {
    let n = g.n();
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = Vec::with_capacity(n);
    for root in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        queue.clear();
        dist[root] = 0;
        parent[root] = usize::MAX;
        queue.push(root);
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            if best.is_some_and(|b| 2 * dist[x] >= b) {
                break;
            }
            for y in Bits(g.neighbors(x)) {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    queue.push(y);
                } else if parent[x] != y {
                    let len = dist[x] + dist[y] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

/// Calls `f` once for every cycle of length `len`, given as a vertex sequence
/// starting at its minimum vertex, with the second vertex smaller than the last.
pub fn for_each_cycle<B>(g: &Graph, len: usize, mut f: impl FnMut(&[Vertex]) -> ControlFlow<B>) -> Option<B> {
    if len < 3 || len > g.n() {
        return None;
    }
    let mut seq = Vec::with_capacity(len);
    for anchor in 0..g.n() {
        let allowed = g.vertex_mask() & !low_mask(anchor + 1);
        seq.clear();
        seq.push(anchor);
        if let ControlFlow::Break(b) = cycle_rec(g, anchor, allowed, len, &mut seq, &mut f) {
            return Some(b);
        }
    }
    None
}

fn cycle_rec<B>(
    g: &Graph,
    anchor: Vertex,
    allowed: u64,
    len: usize,
    seq: &mut Vec<Vertex>,
    f: &mut impl FnMut(&[Vertex]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    let cur = *seq.last().expect("nonempty");
    if seq.len() == len {
        if g.has_edge(cur, anchor) && seq[1] < cur {
            return f(seq);
        }
        return ControlFlow::Continue(());
    }
    for w in Bits(g.neighbors(cur) & allowed) {
        seq.push(w);
        let r = cycle_rec(g, anchor, allowed & !(1 << w), len, seq, f);
        seq.pop();
        r?;
    }
    ControlFlow::Continue(())
}

/// All cycles of length `len`, each listed once.
pub fn cycles_of_length(g: &Graph, len: usize) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    for_each_cycle::<()>(g, len, |c| {
        out.push(c.to_vec());
        ControlFlow::Continue(())
    });
    out
}

/// Whether `g` contains `C_len` as a subgraph, with a witness cycle.
pub fn has_cycle_of_length(g: &Graph, len: usize) -> Result<Option<Vec<Vertex>>, Error> {
    if len < 3 || len > g.n() {
        return Err(Error::CycleLengthOutOfRange { len, n: g.n() });
    }
    Ok(find_cycle(g, len))
}

/// Witness `C_len`, or `None` (also when `len` is out of range).
pub fn find_cycle(g: &Graph, len: usize) -> Option<Vec<Vertex>> {
    for_each_cycle(g, len, |c| ControlFlow::Break(c.to_vec()))
}

/// Whether some cycle of length `len` passes through `x`.
pub fn has_cycle_through(g: &Graph, len: usize, x: Vertex) -> bool {
    if len < 3 || len > g.n() {
        return false;
    }
    // A path on `len` vertices from one neighbor of x to another, avoiding x.
    let nx = g.neighbors(x);
    for a in Bits(nx) {
        let targets = nx & !low_mask(a + 1);
        if targets == 0 {
            break;
        }
        if path_to_any(g, a, targets, (1 << x) | (1 << a), len - 2) {
            return true;
        }
    }
    false
}

// Is there a path from `cur` using `steps` more edges through unvisited
// vertices, ending in `targets`?
fn path_to_any(g: &Graph, cur: Vertex, targets: u64, visited: u64, steps: usize) -> bool {
    let next = g.neighbors(cur) & !visited;
    if steps == 1 {
        return next & targets != 0;
    }
    for w in Bits(next) {
        if path_to_any(g, w, targets, visited | (1 << w), steps - 1) {
            return true;
        }
    }
    false
}

/// Length of a shortest even cycle, if any.
pub fn shortest_even_cycle(g: &Graph) -> Option<usize> {
    (4..=g.n()).step_by(2).find(|&len| find_cycle(g, len).is_some())
}

//! Canonical labeling by equitable partition refinement and individualization
//! with automorphism pruning.
//!
//! Every leaf of the search tree is compared with the first leaf and the
//! current best leaf. Matches yield automorphisms; a child of a node is skipped
//! when a recorded automorphism fixing the node's individualized prefix maps an
//! already explored sibling onto it. Because every leaf is compared with the
//! first leaf, the recorded automorphisms generate the full automorphism group,
//! so [`Canonical::orbits`] is exact.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Graph6Error;
use crate::graph::{Bits, Graph, Vertex};
use crate::graph6;

/// graph6 string of the canonically relabeled graph.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonicalForm(String);

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn as_bytes(&self) -> &[u8] {
        self.0.as_bytes()
    }

    /// Decodes the canonical representative.
    pub fn to_graph(&self) -> Graph {
        graph6::decode(&self.0).expect("canonical forms are valid graph6")
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Result of canonicalizing one graph.
#[derive(Clone, Debug)]
pub struct Canonical {
    /// The canonically relabeled copy.
    pub graph: Graph,
    /// `position[v]` is the canonical label of vertex `v`.
    pub position: Vec<Vertex>,
    /// Automorphisms as vertex maps; together they generate the group.
    pub generators: Vec<Vec<Vertex>>,
}

impl Canonical {
    pub fn form(&self) -> Result<CanonicalForm, Graph6Error> {
        graph6::encode(&self.graph).map(CanonicalForm)
    }

    /// Orbit representative (smallest member) for every vertex.
    pub fn orbits(&self) -> Vec<Vertex> {
        let n = self.position.len();
        let mut uf = UnionFind::new(n);
        for gamma in &self.generators {
            for (v, &w) in gamma.iter().enumerate() {
                uf.union(v, w);
            }
        }
        (0..n).map(|v| uf.find(v)).collect()
    }
}

/// Canonical graph6 form; equal exactly for isomorphic graphs.
pub fn canonical_form(g: &Graph) -> Result<CanonicalForm, Graph6Error> {
    canonize(g).form()
}

pub fn canonize(g: &Graph) -> Canonical {
    let mut search = Search { g, first: None, best: None, generators: Vec::new() };
    let root = vec![g.vertex_mask()];
    let mut prefix = Vec::new();
    let _ = search.descend(root, &mut prefix);
    let best = search.best.expect("search visits at least one leaf");
    Canonical { graph: g.permuted(&best.position), position: best.position, generators: search.generators }
}

struct Leaf {
    rows: Vec<u64>,
    position: Vec<Vertex>,
    path: Vec<Vertex>,
}

struct Search<'a> {
    g: &'a Graph,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<Vertex>>,
}

impl Search<'_> {
    /// Returns `Some(level)` when the rest of the tree below `level` is known
    /// to be an automorphic image of an explored part; the caller at that
    /// depth skips to its next child.
    fn descend(&mut self, mut cells: Vec<u64>, prefix: &mut Vec<Vertex>) -> Option<usize> {
        refine(self.g, &mut cells);
        let Some(target) = cells.iter().position(|c| c.count_ones() > 1) else {
            return self.leaf(&cells, prefix);
        };
        let depth = prefix.len();
        let mut explored: Vec<Vertex> = Vec::new();
        for v in Bits(cells[target]) {
            if !explored.is_empty() && self.equivalent_to_explored(v, &explored, prefix) {
                continue;
            }
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(1u64 << v);
            child.push(cells[target] & !(1u64 << v));
            child.extend_from_slice(&cells[target + 1..]);
            prefix.push(v);
            let jump = self.descend(child, prefix);
            prefix.pop();
            explored.push(v);
            if let Some(level) = jump {
                if level < depth {
                    return jump;
                }
            }
        }
        None
    }

    fn equivalent_to_explored(&self, v: Vertex, explored: &[Vertex], prefix: &[Vertex]) -> bool {
        let n = self.g.n();
        let mut uf = UnionFind::new(n);
        let mut any = false;
        for gamma in &self.generators {
            if prefix.iter().all(|&p| gamma[p] == p) {
                any = true;
                for (a, &b) in gamma.iter().enumerate() {
                    uf.union(a, b);
                }
            }
        }
        if !any {
            return false;
        }
        let root = uf.find(v);
        explored.iter().any(|&u| uf.find(u) == root)
    }

    fn leaf(&mut self, cells: &[u64], path: &[Vertex]) -> Option<usize> {
        let n = self.g.n();
        let mut position = vec![0; n];
        for (i, c) in cells.iter().enumerate() {
            position[c.trailing_zeros() as usize] = i;
        }
        let rows = self.g.permuted(&position).rows().to_vec();
        let leaf = Leaf { rows, position, path: path.to_vec() };

        let Some(first) = &self.first else {
            self.best =
                Some(Leaf { rows: leaf.rows.clone(), position: leaf.position.clone(), path: leaf.path.clone() });
            self.first = Some(leaf);
            return None;
        };
        if leaf.rows == first.rows {
            self.generators.push(automorphism(&first.position, &leaf.position));
            return Some(common_prefix(&first.path, path));
        }
        let best = self.best.as_ref().expect("set with first");
        match leaf.rows.cmp(&best.rows) {
            std::cmp::Ordering::Equal => {
                self.generators.push(automorphism(&best.position, &leaf.position));
                Some(common_prefix(&best.path, path))
            }
            std::cmp::Ordering::Less => {
                self.best = Some(leaf);
                None
            }
            std::cmp::Ordering::Greater => None,
        }
    }
}

fn common_prefix(a: &[Vertex], b: &[Vertex]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// Given two labelings producing the same relabeled graph, the automorphism
/// sending each vertex under `b` to the vertex with the same label under `a`.
fn automorphism(a: &[Vertex], b: &[Vertex]) -> Vec<Vertex> {
    let mut inv_a = vec![0; a.len()];
    for (v, &p) in a.iter().enumerate() {
        inv_a[p] = v;
    }
    b.iter().map(|&p| inv_a[p]).collect()
}

/// Refines an ordered partition (cells as masks) to the coarsest equitable
/// refinement. Cells split by neighbor count into each splitter cell, in
/// increasing count order, so the result depends only on the partition
/// structure and never on vertex labels.
pub(crate) fn refine(g: &Graph, cells: &mut Vec<u64>) {
    let n = g.n();
    if cells.len() == n {
        return;
    }
    let mut scratch: Vec<u64> = Vec::with_capacity(n);
    let mut groups = [0u64; 65];
    loop {
        let mut changed = false;
        let mut s = 0;
        while s < cells.len() && cells.len() < n {
            let splitter = cells[s];
            scratch.clear();
            for &cell in cells.iter() {
                if cell.count_ones() == 1 {
                    scratch.push(cell);
                    continue;
                }
                let mut lo = usize::MAX;
                let mut hi = 0;
                for v in Bits(cell) {
                    let c = (g.neighbors(v) & splitter).count_ones() as usize;
                    groups[c] |= 1 << v;
                    lo = lo.min(c);
                    hi = hi.max(c);
                }
                if lo == hi {
                    groups[lo] = 0;
                    scratch.push(cell);
                    continue;
                }
                changed = true;
                for slot in groups.iter_mut().take(hi + 1).skip(lo) {
                    if *slot != 0 {
                        scratch.push(*slot);
                        *slot = 0;
                    }
                }
            }
            std::mem::swap(cells, &mut scratch);
            s += 1;
        }
        if !changed || cells.len() == n {
            return;
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    /// Keeps the smaller root so representatives are orbit minima.
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra < rb {
            self.parent[rb] = ra;
        } else if rb < ra {
            self.parent[ra] = rb;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn shuffled(g: &Graph, seed: u64) -> Graph {
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut state = seed;
        for i in (1..n).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let j = (state >> 33) as usize % (i + 1);
            perm.swap(i, j);
        }
        g.permuted(&perm)
    }

    #[test]
    fn relabelings_of_c5_agree() {
        let c5 = families::cycle(5).unwrap();
        let a = canonical_form(&shuffled(&c5, 1)).unwrap();
        let b = canonical_form(&shuffled(&c5, 99)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, canonical_form(&families::path(5).unwrap()).unwrap());
    }

    #[test]
    fn canonical_graph_is_isomorphic_copy() {
        let p = families::petersen();
        let c = canonize(&p);
        assert_eq!(p.permuted(&c.position), c.graph);
        assert_eq!(c.form().unwrap().to_graph(), c.graph);
    }

    #[test]
    fn orbits_of_symmetric_graphs() {
        // Vertex-transitive: one orbit.
        for g in [families::petersen(), families::complete(7).unwrap(), families::cycle(8).unwrap()] {
            assert!(canonize(&g).orbits().iter().all(|&o| o == 0), "{g:?}");
        }
        // Star: hub alone, leaves together.
        let orbits = canonize(&families::star(4).unwrap()).orbits();
        assert_eq!(orbits, vec![0, 1, 1, 1, 1]);
        // Path: mirror pairs.
        assert_eq!(canonize(&families::path(5).unwrap()).orbits(), vec![0, 1, 2, 1, 0]);
    }

    #[test]
    fn generators_are_automorphisms() {
        for g in [families::petersen(), families::friendship(3).unwrap(), families::complete_bipartite(3, 3).unwrap()] {
            for gamma in canonize(&g).generators {
                assert_eq!(g.permuted(&gamma), g);
            }
        }
    }

    #[test]
    fn large_symmetric_graph_is_fast() {
        let k = families::complete(40).unwrap();
        let c = canonize(&k);
        assert_eq!(c.graph, k);
    }
}

//! Dense simple undirected graphs with one 64-bit adjacency row per vertex.

use std::fmt;

use crate::error::GraphError;

/// Maximum number of vertices a [`Graph`] can hold.
pub const CAPACITY: usize = 64;

/// Vertices are 0-indexed.
pub type Vertex = usize;

/// Bit mask with the lowest `n` bits set.
#[inline]
pub const fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates over the set bits of a mask, lowest first.
#[derive(Clone, Copy, Debug)]
pub struct Bits(pub u64);

impl Iterator for Bits {
    type Item = Vertex;

    #[inline]
    fn next(&mut self) -> Option<Vertex> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Bits {}

/// A simple undirected graph on the vertex set `{0, .., n-1}`.
///
/// Row `v` of the adjacency matrix is stored as a bit mask; the rows are kept
/// symmetric, loop-free and confined to the low `n` bits by every mutator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: [u64; CAPACITY],
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        if n > CAPACITY {
            return Err(GraphError::TooManyVertices { n, capacity: CAPACITY });
        }
        Ok(Graph { n, adj: [0; CAPACITY] })
    }

    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from raw adjacency rows, validating every invariant.
    pub fn from_rows(rows: &[u64]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(rows.len())?;
        let valid = low_mask(g.n);
        for (v, &row) in rows.iter().enumerate() {
            if row & !valid != 0 {
                let bad = (row & !valid).trailing_zeros() as usize;
                return Err(GraphError::VertexOutOfRange { v: bad, n: g.n });
            }
            if row & (1 << v) != 0 {
                return Err(GraphError::SelfLoop(v));
            }
            g.adj[v] = row;
        }
        for u in 0..g.n {
            for v in Bits(g.adj[u]) {
                if g.adj[v] & (1 << u) == 0 {
                    return Err(GraphError::Asymmetric { u, v });
                }
            }
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Mask of all vertices.
    #[inline]
    pub fn vertex_mask(&self) -> u64 {
        low_mask(self.n)
    }

    #[inline]
    fn check(&self, v: Vertex) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { v, n: self.n })
        }
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        self.check(u)?;
        self.check(v)?;
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
        Ok(())
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && v < self.n && self.adj[u] & (1 << v) != 0
    }

    /// Neighborhood of `v` as a bit mask. Panics if `v >= CAPACITY`.
    #[inline]
    pub fn neighbors(&self, v: Vertex) -> u64 {
        self.adj[v]
    }

    /// Adjacency rows of the `n` vertices.
    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.adj[..self.n]
    }

    pub fn degree(&self, v: Vertex) -> Result<usize, GraphError> {
        self.check(v)?;
        Ok(self.adj[v].count_ones() as usize)
    }

    pub fn edge_count(&self) -> usize {
        self.rows().iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (0..self.n).flat_map(move |u| Bits(self.adj[u] & !low_mask(u + 1)).map(move |v| (u, v)))
    }

    /// Edges of the complement `(u, v)` with `u < v`, in lexicographic order.
    pub fn complement_non_edges(&self) -> Vec<(Vertex, Vertex)> {
        let all = self.vertex_mask();
        (0..self.n).flat_map(|u| Bits(all & !self.adj[u] & !low_mask(u + 1)).map(move |v| (u, v))).collect()
    }

    pub fn is_complete(&self) -> bool {
        let all = self.vertex_mask();
        (0..self.n).all(|v| self.adj[v] | (1 << v) == all)
    }

    /// Appends a vertex adjacent to exactly the vertices in `nbrs`.
    pub fn with_vertex(&self, nbrs: u64) -> Result<Graph, GraphError> {
        if self.n == CAPACITY {
            return Err(GraphError::TooManyVertices { n: self.n + 1, capacity: CAPACITY });
        }
        if nbrs & !self.vertex_mask() != 0 {
            let bad = (nbrs & !self.vertex_mask()).trailing_zeros() as usize;
            return Err(GraphError::VertexOutOfRange { v: bad, n: self.n });
        }
        let mut g = self.clone();
        let x = g.n;
        g.n += 1;
        g.adj[x] = nbrs;
        for v in Bits(nbrs) {
            g.adj[v] |= 1 << x;
        }
        Ok(g)
    }

    /// The subgraph induced by `vertices`, relabeled so that `vertices[i]`
    /// becomes vertex `i`.
    pub fn induced(&self, vertices: &[Vertex]) -> Result<Graph, GraphError> {
        for &v in vertices {
            self.check(v)?;
        }
        let mut g = Graph::empty(vertices.len())?;
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if u == v {
                    return Err(GraphError::SelfLoop(u));
                }
                if self.has_edge(u, v) {
                    g.adj[i] |= 1 << j;
                    g.adj[j] |= 1 << i;
                }
            }
        }
        Ok(g)
    }

    /// Relabels so that vertex `v` becomes `perm[v]`. `perm` must be a
    /// permutation of `0..n`.
    pub fn permuted(&self, perm: &[Vertex]) -> Graph {
        debug_assert_eq!(perm.len(), self.n);
        let mut g = Graph { n: self.n, adj: [0; CAPACITY] };
        for u in 0..self.n {
            let mut row = 0u64;
            for v in Bits(self.adj[u]) {
                row |= 1 << perm[v];
            }
            g.adj[perm[u]] = row;
        }
        g
    }

    /// Vertices reachable from `start` using only vertices in `allowed`.
    pub fn reach(&self, start: Vertex, allowed: u64) -> u64 {
        if allowed & (1 << start) == 0 {
            return 0;
        }
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in Bits(frontier) {
                next |= self.adj[v];
            }
            next &= allowed & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        self.reach(0, self.vertex_mask()) == self.vertex_mask()
    }

    /// Vertices whose removal disconnects the graph (for connected graphs).
    pub fn cut_vertex_mask(&self) -> u64 {
        let all = self.vertex_mask();
        let mut cuts = 0;
        for v in 0..self.n {
            let rest = all & !(1 << v);
            if rest == 0 {
                continue;
            }
            let start = rest.trailing_zeros() as usize;
            if self.reach(start, rest) != rest {
                cuts |= 1 << v;
            }
        }
        cuts
    }

    /// At least three vertices, connected, and no cut vertex.
    pub fn is_2_connected(&self) -> bool {
        self.n >= 3 && self.is_connected() && self.cut_vertex_mask() == 0
    }

    /// Breadth-first distances from `source`; `None` marks unreachable vertices.
    pub fn distances_from(&self, source: Vertex) -> Result<Vec<Option<usize>>, GraphError> {
        self.check(source)?;
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut seen = 1u64 << source;
        let mut frontier = seen;
        let mut d = 0;
        while frontier != 0 {
            d += 1;
            let mut next = 0;
            for v in Bits(frontier) {
                next |= self.adj[v];
            }
            next &= !seen;
            for v in Bits(next) {
                dist[v] = Some(d);
            }
            seen |= next;
            frontier = next;
        }
        Ok(dist)
    }

    /// Length of a shortest `u`-`v` path, or `None` if they lie in different
    /// components.
    pub fn distance(&self, u: Vertex, v: Vertex) -> Result<Option<usize>, GraphError> {
        self.check(v)?;
        Ok(self.distances_from(u)?[v])
    }

    /// Largest distance between two vertices, or `None` if disconnected.
    pub fn diameter(&self) -> Option<usize> {
        let mut best = 0;
        for s in 0..self.n {
            let dist = self.distances_from(s).expect("vertex in range");
            for d in dist {
                best = best.max(d?);
            }
        }
        Some(best)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

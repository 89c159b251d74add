//! Named graph families used by tests, fixtures and the `gen` subcommand.

use crate::error::Error;
use crate::graph::{Graph, Vertex};
use crate::structure::HPattern;

fn require(cond: bool, what: impl Into<String>) -> Result<(), Error> {
    if cond {
        Ok(())
    } else {
        Err(Error::FamilyParameter(what.into()))
    }
}

/// `C_n` with cyclic labeling `0-1-..-(n-1)-0`.
pub fn cycle(n: usize) -> Result<Graph, Error> {
    require(n >= 3, format!("cycle needs n >= 3, got {n}"))?;
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Ok(Graph::from_edges(n, &edges)?)
}

/// `P_n`, the path on `n` vertices `0-1-..-(n-1)`.
pub fn path(n: usize) -> Result<Graph, Error> {
    require(n >= 1, "path needs n >= 1")?;
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Ok(Graph::from_edges(n, &edges)?)
}

pub fn complete(n: usize) -> Result<Graph, Error> {
    let mut g = Graph::empty(n)?;
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v)?;
        }
    }
    Ok(g)
}

/// `K_{a,b}` with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph, Error> {
    require(a >= 1 && b >= 1, "complete bipartite needs nonempty parts")?;
    let mut g = Graph::empty(a + b)?;
    for u in 0..a {
        for v in a..a + b {
            g.add_edge(u, v)?;
        }
    }
    Ok(g)
}

/// The star `K_{1,m}` centered at vertex 0.
pub fn star(m: usize) -> Result<Graph, Error> {
    complete_bipartite(1, m)
}

/// Friendship graph `F_k`: hub 0 and triangles `{0, 2i+1, 2i+2}`.
pub fn friendship(k: usize) -> Result<Graph, Error> {
    require(k >= 1, "friendship graph needs k >= 1")?;
    let mut g = Graph::empty(2 * k + 1)?;
    for i in 0..k {
        let (a, b) = (2 * i + 1, 2 * i + 2);
        g.add_edge(0, a)?;
        g.add_edge(0, b)?;
        g.add_edge(a, b)?;
    }
    Ok(g)
}

/// The Petersen graph: outer 5-cycle `0..5`, inner pentagram `5..10`.
pub fn petersen() -> Graph {
    let mut edges: Vec<(Vertex, Vertex)> = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, &edges).expect("static edge list")
}

/// `H_{m,l}`: the cycle `0..2m` with the pendant path `0, 2m, 2m+1, .., 2m+l-1`.
pub fn h_pattern(p: HPattern) -> Result<Graph, Error> {
    let HPattern { m, l } = p;
    if m < 2 {
        return Err(Error::PatternTooSmall { m });
    }
    let c = 2 * m;
    let mut g = Graph::empty(c + l)?;
    for i in 0..c {
        g.add_edge(i, (i + 1) % c)?;
    }
    let mut prev = 0;
    for j in 0..l {
        g.add_edge(prev, c + j)?;
        prev = c + j;
    }
    Ok(g)
}

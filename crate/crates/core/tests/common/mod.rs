//! Brute-force oracles. Each one works from definitions over explicit vertex
//! sequences and shares no code path with the library algorithms.

#![allow(dead_code)]

pub mod sweeps;

use csat_core::Graph;
use rand::Rng;

/// Every permutation of `0..n` (Heap's algorithm, collected).
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            out.push(p.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

thread_local! {
    static SEQUENCES: std::cell::RefCell<SequenceCache> = Default::default();
}

type SequenceCache = std::collections::HashMap<(usize, usize), std::rc::Rc<Vec<Vec<usize>>>>;

/// All injective sequences of length `k` over `0..n` (memoized).
pub fn sequences(n: usize, k: usize) -> std::rc::Rc<Vec<Vec<usize>>> {
    SEQUENCES.with(|m| m.borrow_mut().entry((n, k)).or_insert_with(|| std::rc::Rc::new(build_sequences(n, k))).clone())
}

fn build_sequences(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !cur.contains(&v) {
                cur.push(v);
                rec(n, k, cur, out);
                cur.pop();
            }
        }
    }
    rec(n, k, &mut cur, &mut out);
    out
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    sequences(n, k).iter().filter(|s| s.windows(2).all(|w| w[0] < w[1])).cloned().collect()
}

fn adjacent(g: &Graph, u: usize, v: usize) -> bool {
    g.edges().any(|(a, b)| (a, b) == (u.min(v), u.max(v)))
}

fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.n();
    let mut a = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        a[u][v] = true;
        a[v][u] = true;
    }
    a
}

/// Upper-triangle bit string of `g` relabeled by `perm`, minimized over all
/// permutations. Equal exactly for isomorphic graphs.
pub fn brute_canonical(g: &Graph, perms: &[Vec<usize>]) -> u64 {
    let n = g.n();
    let a = adjacency(g);
    let mut best = u64::MAX;
    for p in perms {
        let mut inv = vec![0; n];
        for (v, &pv) in p.iter().enumerate() {
            inv[pv] = v;
        }
        let mut code = 0u64;
        for j in 1..n {
            for i in 0..j {
                code = (code << 1) | a[inv[i]][inv[j]] as u64;
            }
        }
        best = best.min(code);
    }
    best
}

/// `counts[k][u][v]`: number of sequences of `k` distinct vertices from `u`
/// to `v` with consecutive vertices adjacent.
pub fn naive_path_counts(g: &Graph) -> Vec<Vec<Vec<u64>>> {
    let n = g.n();
    let a = adjacency(g);
    let mut counts = vec![vec![vec![0u64; n]; n]; n + 1];
    for k in 2..=n {
        for s in sequences(n, k).iter() {
            if s.windows(2).all(|w| a[w[0]][w[1]]) {
                counts[k][s[0]][s[k - 1]] += 1;
            }
        }
    }
    counts
}

/// Some `len`-subset of vertices carries a Hamiltonian cycle.
pub fn naive_has_cycle(g: &Graph, len: usize) -> bool {
    let a = adjacency(g);
    let orders = sequences(len, len);
    subsets(g.n(), len).into_iter().any(|sub| {
        orders.iter().any(|order| {
            let c: Vec<usize> = order.iter().map(|&i| sub[i]).collect();
            (0..len).all(|i| a[c[i]][c[(i + 1) % len]])
        })
    })
}

/// Number of distinct `len`-cycles in `g` that use edge `{x, y}`.
pub fn naive_cycles_through_edge(g: &Graph, len: usize, x: usize, y: usize) -> u64 {
    let a = adjacency(g);
    let mut found = 0u64;
    for s in sequences(g.n(), len).iter() {
        // One representative per cycle: start at the minimum, direction fixed
        // by second < last.
        if s[0] != *s.iter().min().unwrap() || s[1] > s[len - 1] {
            continue;
        }
        if !(0..len).all(|i| a[s[i]][s[(i + 1) % len]]) {
            continue;
        }
        let uses = (0..len).any(|i| {
            let (p, q) = (s[i], s[(i + 1) % len]);
            (p, q) == (x, y) || (p, q) == (y, x)
        });
        if uses {
            found += 1;
        }
    }
    found
}

/// Some injection of `pattern` into `host` maps every pattern edge to a host edge.
pub fn naive_contains(host: &Graph, pattern: &Graph) -> bool {
    if pattern.n() > host.n() {
        return false;
    }
    let a = adjacency(host);
    let pe: Vec<(usize, usize)> = pattern.edges().collect();
    sequences(host.n(), pattern.n()).iter().any(|f| pe.iter().all(|&(u, v)| a[f[u]][f[v]]))
}

pub fn all_labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges: Vec<_> = pairs.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &e)| e).collect();
        Graph::from_edges(n, &edges).unwrap()
    })
}

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::empty(n).unwrap();
    for v in 1..n {
        for u in 0..v {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

pub fn random_relabel(rng: &mut impl Rng, g: &Graph) -> Graph {
    let mut perm: Vec<usize> = (0..g.n()).collect();
    for i in (1..perm.len()).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    g.permuted(&perm)
}

pub fn is_adjacent(g: &Graph, u: usize, v: usize) -> bool {
    adjacent(g, u, v)
}

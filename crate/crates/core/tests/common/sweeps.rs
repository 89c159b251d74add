//! Exhaustive kernel-versus-oracle sweeps, shared by the oracle suite and the
//! acceptance run. Each returns the number of comparisons made, or the first
//! disagreement.

use std::collections::HashMap;

use csat_core::structure::HPattern;
use csat_core::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use super::*;

type Sweep = Result<u64, String>;

/// Connected classes on at most `n` vertices plus every labeled graph on at
/// most 5 vertices (which covers the disconnected cases).
pub fn sweep(n: usize) -> Vec<Graph> {
    let mut gs = Vec::new();
    for_each_connected(n, |g| gs.push(g.clone()));
    for k in 1..=5 {
        gs.extend(all_labeled_graphs(k));
    }
    gs
}

/// Checks that both labelings induce the same partition into classes.
struct ClassAgreement {
    by_brute: HashMap<u64, CanonicalForm>,
    by_canon: HashMap<CanonicalForm, u64>,
}

impl ClassAgreement {
    fn new() -> Self {
        ClassAgreement { by_brute: HashMap::new(), by_canon: HashMap::new() }
    }

    fn add(&mut self, g: &Graph, b: u64, c: CanonicalForm) -> Result<(), String> {
        if self.by_brute.entry(b).or_insert_with(|| c.clone()) != &c || self.by_canon.entry(c).or_insert(b) != &b {
            return Err(format!("canonical form disagrees with permutation oracle on {g:?}"));
        }
        Ok(())
    }
}

/// Every labeled graph on at most 6 vertices, and every 7-vertex connected
/// class plus random 7-vertex graphs under a random relabeling.
pub fn canonical_form_sweep() -> Sweep {
    let mut checked = 0;
    for n in 1..=6 {
        let perms = permutations(n);
        let mut agree = ClassAgreement::new();
        for g in all_labeled_graphs(n) {
            agree.add(&g, brute_canonical(&g, &perms), canonical_form(&g).unwrap())?;
            checked += 1;
        }
    }
    let perms = permutations(7);
    let mut rng = StdRng::seed_from_u64(7);
    let mut graphs: Vec<Graph> = Vec::new();
    for_each_connected(7, |g| {
        if g.n() == 7 {
            graphs.push(g.clone())
        }
    });
    if graphs.len() != 853 {
        return Err(format!("expected 853 connected 7-vertex classes, got {}", graphs.len()));
    }
    graphs.extend((0..300).map(|_| random_graph(&mut rng, 7, 0.3)));
    let mut agree = ClassAgreement::new();
    for g in &graphs {
        let h = random_relabel(&mut rng, g);
        let c = canonical_form(&h).unwrap();
        if c != canonical_form(g).unwrap() {
            return Err(format!("relabeling changed the canonical form of {g:?}"));
        }
        agree.add(&h, brute_canonical(&h, &perms), c)?;
        checked += 1;
    }
    Ok(checked)
}

pub fn path_count_sweep() -> Sweep {
    let mut checked = 0;
    for g in sweep(8) {
        let oracle = naive_path_counts(&g);
        for (k, by_u) in oracle.iter().enumerate().skip(2) {
            for (u, by_v) in by_u.iter().enumerate() {
                for (v, &want) in by_v.iter().enumerate().filter(|&(v, _)| v != u) {
                    let got = count_paths_between(&g, u, v, k).unwrap();
                    if got != want {
                        return Err(format!("{g:?} {u}-{v} k={k}: {got} != {want}"));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(checked)
}

/// Fixed-length cycles, girth and shortest even cycle.
pub fn cycle_sweep() -> Sweep {
    let mut checked = 0;
    for g in sweep(7) {
        for len in 3..=g.n() {
            let found = has_cycle_of_length(&g, len).unwrap();
            if found.is_some() != naive_has_cycle(&g, len) {
                return Err(format!("{g:?} length {len}"));
            }
            if let Some(c) = found {
                let mut sorted = c.clone();
                sorted.sort();
                sorted.dedup();
                if c.len() != len || sorted.len() != len || !(0..len).all(|i| is_adjacent(&g, c[i], c[(i + 1) % len])) {
                    return Err(format!("{g:?} bad witness {c:?}"));
                }
            }
            checked += 1;
        }
        if girth(&g) != (3..=g.n()).find(|&l| naive_has_cycle(&g, l)) {
            return Err(format!("{g:?} girth"));
        }
        if shortest_even_cycle(&g) != (4..=g.n()).step_by(2).find(|&l| naive_has_cycle(&g, l)) {
            return Err(format!("{g:?} shortest even cycle"));
        }
    }
    Ok(checked)
}

pub fn pattern_sweep() -> Sweep {
    let patterns: Vec<HPattern> = [(2, 0), (2, 1), (2, 2), (2, 3), (2, 4), (3, 0), (3, 1), (3, 2), (4, 0)]
        .map(|(m, l)| HPattern { m, l })
        .to_vec();
    let pattern_graphs: Vec<Graph> = patterns.iter().map(|&h| families::h_pattern(h).unwrap()).collect();
    let mut checked = 0;
    for g in sweep(7) {
        for (h, hg) in patterns.iter().zip(&pattern_graphs) {
            let found = contains_pattern(&g, *h).unwrap();
            if found.is_some() != naive_contains(&g, hg) {
                return Err(format!("{g:?} {h}"));
            }
            // The witness is an embedding of the pattern's own labeling.
            if let Some(w) = found {
                if w.len() != hg.n() || !hg.edges().all(|(u, v)| is_adjacent(&g, w[u], w[v])) {
                    return Err(format!("{g:?} {h} bad witness {w:?}"));
                }
            }
            checked += 1;
        }
    }
    Ok(checked)
}

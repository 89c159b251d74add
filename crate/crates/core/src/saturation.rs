//! (Uniquely) `C_t`-saturated graphs and their certificates.
//!
//! Adding a non-edge `uv` creates one `C_t` for every `t`-path from `u` to
//! `v`, and every `C_t` through the new edge arises this way, so the number
//! of created cycles is exactly the `t`-path count between the endpoints.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::graph::{Graph, Vertex, CAPACITY};
use crate::graph6;
use crate::paths::{count_paths_capped, find_cycle};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Verdict {
    NotSaturated,
    Saturated,
    UniquelySaturated,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::NotSaturated => "NotSaturated",
            Verdict::Saturated => "Saturated",
            Verdict::UniquelySaturated => "UniquelySaturated",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonEdgeCount {
    pub u: Vertex,
    pub v: Vertex,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturationCertificate {
    pub t: usize,
    pub n: usize,
    /// A copy of `C_t` already in the graph, if any.
    pub target_witness: Option<Vec<Vertex>>,
    /// One entry per complement edge, lexicographic in `(u, v)`.
    pub non_edge_counts: Vec<NonEdgeCount>,
    pub verdict: Verdict,
    /// Complete graph on fewer than `t` vertices.
    pub trivial: bool,
}

impl SaturationCertificate {
    pub fn contains_target(&self) -> bool {
        self.target_witness.is_some()
    }

    pub fn nontrivial(&self) -> bool {
        self.n >= self.t
    }
}

fn check_t(t: usize) -> Result<(), Error> {
    if (3..=CAPACITY).contains(&t) {
        Ok(())
    } else {
        Err(Error::CycleOrderOutOfRange { t, max: CAPACITY })
    }
}

pub fn certify(g: &Graph, t: usize) -> Result<SaturationCertificate, Error> {
    check_t(t)?;
    let target_witness = find_cycle(g, t);
    let non_edge_counts: Vec<_> = g
        .complement_non_edges()
        .into_iter()
        .map(|(u, v)| NonEdgeCount { u, v, count: count_paths_capped(g, u, v, t, u64::MAX) })
        .collect();
    let verdict = if target_witness.is_some() || non_edge_counts.iter().any(|e| e.count == 0) {
        Verdict::NotSaturated
    } else if non_edge_counts.iter().all(|e| e.count == 1) {
        Verdict::UniquelySaturated
    } else {
        Verdict::Saturated
    };
    let trivial = verdict == Verdict::UniquelySaturated && non_edge_counts.is_empty();
    debug_assert!(!trivial || g.n() < t);
    Ok(SaturationCertificate { t, n: g.n(), target_witness, non_edge_counts, verdict, trivial })
}

/// Early-exit form of `certify(g, t).verdict == UniquelySaturated`.
pub fn is_uniquely_saturated(g: &Graph, t: usize) -> Result<bool, Error> {
    check_t(t)?;
    Ok(uniquely_saturated_unchecked(g, t))
}

pub(crate) fn uniquely_saturated_unchecked(g: &Graph, t: usize) -> bool {
    let non_edges = g.complement_non_edges();
    // Cheap rejection before the expensive target search.
    if non_edges.iter().any(|&(u, v)| count_paths_capped(g, u, v, t, 2) != 1) {
        return false;
    }
    find_cycle(g, t).is_none()
}

/// At least `t` vertices.
pub fn is_nontrivial(g: &Graph, t: usize) -> Result<bool, Error> {
    check_t(t)?;
    Ok(g.n() >= t)
}

/// JSON form of a certificate: the non-edges and their counts are parallel
/// arrays in lexicographic `(u, v)` order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub g6: String,
    pub t: usize,
    pub n: usize,
    pub verdict: Verdict,
    pub trivial: bool,
    pub nontrivial: bool,
    pub contains_target: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub target_witness: Option<Vec<Vertex>>,
    pub non_edges: Vec<(Vertex, Vertex)>,
    pub non_edge_counts: Vec<u64>,
}

impl CertificateRecord {
    pub fn new(g: &Graph, cert: &SaturationCertificate) -> Self {
        CertificateRecord {
            g6: graph6::encode(g).unwrap_or_default(),
            t: cert.t,
            n: cert.n,
            verdict: cert.verdict,
            trivial: cert.trivial,
            nontrivial: cert.nontrivial(),
            contains_target: cert.contains_target(),
            target_witness: cert.target_witness.clone(),
            non_edges: cert.non_edge_counts.iter().map(|e| (e.u, e.v)).collect(),
            non_edge_counts: cert.non_edge_counts.iter().map(|e| e.count).collect(),
        }
    }
}

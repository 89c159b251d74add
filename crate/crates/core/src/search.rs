//! Isomorph-free exhaustive search for uniquely `C_t`-saturated graphs.
//!
//! Connected graphs are generated by canonical augmentation: a child is built
//! from a connected parent by appending one vertex with a nonempty
//! neighborhood, and is accepted only when the appended vertex lies in the
//! automorphism orbit of the child's canonically chosen deletable vertex. Every
//! isomorphism class of connected graphs is therefore produced exactly once.
//!
//! Pruning only uses supergraph-closed exclusions (see [`pruning_rules`]).
//! Since every forbidden configuration of a child that is absent from its
//! parent must use the new vertex, rules are evaluated through that vertex.

use std::collections::HashSet;
use std::io::BufRead;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{canonize, Canonical, CanonicalForm};
use crate::error::Error;
use crate::graph::{Bits, Graph, Vertex, CAPACITY};
use crate::graph6;
use crate::paths::{find_cycle, has_cycle_through};
use crate::saturation::{certify, uniquely_saturated_unchecked, CertificateRecord, SaturationCertificate};
use crate::structure::{contains_pattern, contains_pattern_through, lemma_audit, HPattern, LemmaReport};

/// Default upper vertex bound for generation runs.
pub const DEFAULT_N_MAX: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Generate,
    Filter,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Connectivity {
    Connected,
    Biconnected,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub t: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub mode: Mode,
    pub prune: bool,
    /// Disables all pruning; the cross-check baseline.
    pub oracle_mode: bool,
    pub connectivity: Connectivity,
    /// Worker threads; 0 uses the global pool.
    pub workers: usize,
    /// Filter mode only: drop inputs isomorphic to an earlier input.
    pub dedup: bool,
}

impl SearchConfig {
    pub fn new(t: usize, n_min: usize, n_max: usize) -> Self {
        SearchConfig {
            t,
            n_min,
            n_max,
            mode: Mode::Generate,
            prune: true,
            oracle_mode: false,
            connectivity: Connectivity::Connected,
            workers: 0,
            dedup: false,
        }
    }

    pub fn oracle(mut self) -> Self {
        self.oracle_mode = true;
        self
    }

    pub fn biconnected(mut self) -> Self {
        self.connectivity = Connectivity::Biconnected;
        self
    }

    pub fn validate(&self) -> Result<(), Error> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if !(3..=CAPACITY).contains(&self.t) {
            return Err(Error::CycleOrderOutOfRange { t: self.t, max: CAPACITY });
        }
        if self.n_min < 1 || self.n_min > self.n_max {
            return bad(format!("vertex range {}..={} is empty or starts below 1", self.n_min, self.n_max));
        }
        if self.n_max > CAPACITY {
            return bad(format!("n_max {} exceeds capacity {CAPACITY}", self.n_max));
        }
        if self.connectivity == Connectivity::Biconnected && self.t < 6 {
            return bad(format!("biconnected-only mode requires t >= 6, got t = {}", self.t));
        }
        Ok(())
    }

    /// Rules applied during generation; filter mode never prunes.
    pub fn rules(&self) -> Vec<Rule> {
        if self.oracle_mode || !self.prune || self.mode == Mode::Filter {
            Vec::new()
        } else {
            pruning_rules(self.t)
        }
    }
}

/// A supergraph-closed exclusion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    /// No cycle of this length.
    CycleFree(usize),
    /// No copy of this `H_{m,l}`.
    PatternFree(HPattern),
}

impl Rule {
    pub fn violated_by(&self, g: &Graph) -> bool {
        match *self {
            Rule::CycleFree(len) => find_cycle(g, len).is_some(),
            Rule::PatternFree(h) => contains_pattern(g, h).expect("rules hold valid patterns").is_some(),
        }
    }

    /// Violation by a copy that uses vertex `x`.
    pub fn violated_through(&self, g: &Graph, x: Vertex) -> bool {
        match *self {
            Rule::CycleFree(len) => has_cycle_through(g, len, x),
            Rule::PatternFree(h) => contains_pattern_through(g, h, x),
        }
    }
}

impl std::fmt::Display for Rule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Rule::CycleFree(len) => write!(f, "C{len}-free"),
            Rule::PatternFree(h) => write!(f, "{h}-free"),
        }
    }
}

/// Monotone exclusions satisfied by every uniquely `C_t`-saturated graph:
/// no `C_t`; no `H_{k,t-k-1}` for `2 <= k < t`; and for `t >= 5` no
/// `C_{2t-2}` or `C_{2t-4}`.
pub fn pruning_rules(t: usize) -> Vec<Rule> {
    let mut rules = vec![Rule::CycleFree(t)];
    rules.extend((2..t).map(|k| Rule::PatternFree(HPattern { m: k, l: t - k - 1 })));
    if t >= 5 {
        rules.push(Rule::CycleFree(2 * t - 2));
        rules.push(Rule::CycleFree(2 * t - 4));
    }
    rules
}

#[derive(Clone, Debug)]
pub struct CertifiedGraph {
    pub form: CanonicalForm,
    /// Canonically labeled representative.
    pub graph: Graph,
    pub certificate: SaturationCertificate,
    pub audit: LemmaReport,
    /// 1-based input line in filter mode.
    pub line: Option<usize>,
}

impl CertifiedGraph {
    fn new(graph: Graph, form: CanonicalForm, t: usize, line: Option<usize>) -> Self {
        let certificate = certify(&graph, t).expect("t validated");
        let audit = lemma_audit(&graph, t).expect("t validated");
        CertifiedGraph { form, graph, certificate, audit, line }
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    fn sort_key(&self) -> (usize, &str) {
        (self.graph.n(), self.form.as_str())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Graphs visited (generated and not pruned), indexed by vertex count.
    pub visited_by_order: Vec<u64>,
    /// Candidate children rejected by a pruning rule.
    pub pruned: u64,
    /// Graphs within range that passed the connectivity filter and were tested.
    pub examined: u64,
}

impl SearchStats {
    fn with_len(n: usize) -> Self {
        SearchStats { visited_by_order: vec![0; n + 1], pruned: 0, examined: 0 }
    }

    fn merge(&mut self, other: &SearchStats) {
        if self.visited_by_order.len() < other.visited_by_order.len() {
            self.visited_by_order.resize(other.visited_by_order.len(), 0);
        }
        for (a, b) in self.visited_by_order.iter_mut().zip(&other.visited_by_order) {
            *a += b;
        }
        self.pruned += other.pruned;
        self.examined += other.examined;
    }

    pub fn visited(&self) -> u64 {
        self.visited_by_order.iter().sum()
    }
}

/// One input line of a filter run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputLogEntry {
    pub line: usize,
    pub g6: String,
    pub outcome: InputOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InputOutcome {
    Certified,
    Trivial,
    Rejected,
    Skipped,
    Duplicate,
    DecodeError(String),
}

#[derive(Clone, Debug, Default)]
pub struct SearchOutcome {
    /// Nontrivial uniquely saturated graphs, ordered by `(n, canonical form)`.
    pub certified: Vec<CertifiedGraph>,
    /// Complete graphs on fewer than `t` vertices, same ordering.
    pub trivial: Vec<CertifiedGraph>,
    pub stats: SearchStats,
    /// Filter mode: per-line log in input order.
    pub input_log: Vec<InputLogEntry>,
}

impl SearchOutcome {
    pub fn decode_errors(&self) -> impl Iterator<Item = &InputLogEntry> {
        self.input_log.iter().filter(|e| matches!(e.outcome, InputOutcome::DecodeError(_)))
    }

    pub fn forms(&self) -> Vec<&str> {
        self.certified.iter().map(|c| c.form.as_str()).collect()
    }

    fn sort(&mut self) {
        self.certified.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        self.trivial.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    }

    /// Structural checks every result must pass: certified graphs are
    /// connected, uniquely saturated, nontrivial and pass every established
    /// audit predicate. Returns a description of each violation.
    pub fn invariant_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for c in &self.certified {
            if !c.graph.is_connected() {
                out.push(format!("{}: certified graph is disconnected", c.form));
            }
            if !c.certificate.nontrivial() || c.certificate.verdict != crate::saturation::Verdict::UniquelySaturated {
                out.push(format!("{}: certificate does not confirm a nontrivial uniquely saturated graph", c.form));
            }
            for e in c.audit.failures().filter(|e| e.established) {
                out.push(format!("{}: audit predicate {} failed", c.form, e.name));
            }
        }
        for c in &self.trivial {
            if !c.certificate.trivial {
                out.push(format!("{}: trivial bucket holds a non-trivial graph", c.form));
            }
        }
        out
    }
}

/// Runs the search described by `config` in generate mode.
pub fn enumerate(config: &SearchConfig) -> Result<SearchOutcome, Error> {
    config.validate()?;
    let rules = config.rules();
    let run = || generate(config, &rules);
    let mut outcome = if config.workers > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.workers)
            .build()
            .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
        pool.install(run)
    } else {
        run()
    };
    outcome.sort();
    Ok(outcome)
}

/// Below this order the tree is walked on one thread; subtrees rooted at this
/// order are distributed across workers.
const SPLIT_ORDER: usize = 6;

struct Walker<'a> {
    config: &'a SearchConfig,
    rules: &'a [Rule],
    outcome: SearchOutcome,
}

fn generate(config: &SearchConfig, rules: &[Rule]) -> SearchOutcome {
    let root = Graph::empty(1).expect("one vertex");
    let split = SPLIT_ORDER.min(config.n_max);
    let mut top = Walker::new(config, rules);
    let mut frontier = Vec::new();
    top.visit(&root, &mut |g| frontier.push(g.clone()), split);

    let parts: Vec<SearchOutcome> = frontier
        .par_iter()
        .map(|g| {
            let mut w = Walker::new(config, rules);
            w.visit_children(g, &mut |_| {}, usize::MAX);
            w.outcome
        })
        .collect();
    let mut outcome = top.outcome;
    for part in parts {
        outcome.stats.merge(&part.stats);
        outcome.certified.extend(part.certified);
        outcome.trivial.extend(part.trivial);
    }
    outcome
}

impl<'a> Walker<'a> {
    fn new(config: &'a SearchConfig, rules: &'a [Rule]) -> Self {
        let outcome = SearchOutcome { stats: SearchStats::with_len(config.n_max), ..Default::default() };
        Walker { config, rules, outcome }
    }

    /// Records `g` and, unless it has reached `stop_at` vertices (where it is
    /// handed to `deferred`), descends into its children.
    fn visit(&mut self, g: &Graph, deferred: &mut dyn FnMut(&Graph), stop_at: usize) {
        let n = g.n();
        self.outcome.stats.visited_by_order[n] += 1;
        if n >= self.config.n_min {
            self.examine(g, None);
        }
        if n >= self.config.n_max {
            return;
        }
        if n == stop_at {
            deferred(g);
            return;
        }
        self.visit_children(g, deferred, stop_at);
    }

    fn visit_children(&mut self, parent: &Graph, deferred: &mut dyn FnMut(&Graph), stop_at: usize) {
        let n = parent.n();
        let x = n;
        let mut seen: HashSet<Graph> = HashSet::new();
        for nbrs in 1..(1u64 << n) {
            let child = parent.with_vertex(nbrs).expect("below capacity");
            if self.rules.iter().any(|r| r.violated_through(&child, x)) {
                self.outcome.stats.pruned += 1;
                continue;
            }
            let Some(canon) = accept(&child, x) else { continue };
            if !seen.insert(canon.graph.clone()) {
                continue;
            }
            self.visit(&canon.graph, deferred, stop_at);
        }
    }

    fn examine(&mut self, g: &Graph, line: Option<usize>) {
        if self.config.connectivity == Connectivity::Biconnected && !g.is_2_connected() {
            return;
        }
        self.outcome.stats.examined += 1;
        if !uniquely_saturated_unchecked(g, self.config.t) {
            return;
        }
        let form = crate::canon::canonical_form(g).expect("search graphs fit the short form");
        let found = CertifiedGraph::new(g.clone(), form, self.config.t, line);
        if found.certificate.trivial {
            self.outcome.trivial.push(found);
        } else {
            self.outcome.certified.push(found);
        }
    }
}

/// Calls `f` once per isomorphism class of connected graphs on at most
/// `n_max` vertices (canonically labeled), without pruning.
pub fn for_each_connected(n_max: usize, mut f: impl FnMut(&Graph)) {
    fn rec(g: &Graph, n_max: usize, f: &mut dyn FnMut(&Graph)) {
        f(g);
        if g.n() >= n_max {
            return;
        }
        let mut seen: HashSet<Graph> = HashSet::new();
        for nbrs in 1..(1u64 << g.n()) {
            let child = g.with_vertex(nbrs).expect("below capacity");
            if let Some(canon) = accept(&child, g.n()) {
                if seen.insert(canon.graph.clone()) {
                    rec(&canon.graph, n_max, f);
                }
            }
        }
    }
    if n_max >= 1 {
        rec(&Graph::empty(1).expect("one vertex"), n_max.min(CAPACITY), &mut f);
    }
}

/// Degree and neighbor-degree sum: a cheap isomorphism invariant used to
/// narrow the candidate deletion vertices before canonical labeling.
fn vertex_invariant(g: &Graph, v: Vertex) -> (u32, u32) {
    let nb = g.neighbors(v);
    (nb.count_ones(), Bits(nb).map(|w| g.neighbors(w).count_ones()).sum())
}

/// Canonical augmentation acceptance: the deletion vertex of a graph is chosen
/// among its non-cut vertices with the smallest invariant, breaking ties by
/// the largest canonical label. The child is kept iff the new vertex `x` is in
/// that vertex's automorphism orbit.
fn accept(child: &Graph, x: Vertex) -> Option<Canonical> {
    let non_cut = child.vertex_mask() & !child.cut_vertex_mask();
    debug_assert!(non_cut & (1 << x) != 0, "a new vertex of a connected graph is never a cut vertex");
    let best = Bits(non_cut).map(|v| vertex_invariant(child, v)).min().expect("connected graphs have non-cut vertices");
    if vertex_invariant(child, x) != best {
        return None;
    }
    let candidates: Vec<Vertex> = Bits(non_cut).filter(|&v| vertex_invariant(child, v) == best).collect();
    let canon = canonize(child);
    if candidates.len() > 1 {
        let chosen = *candidates.iter().max_by_key(|&&v| canon.position[v]).expect("nonempty");
        let orbits = canon.orbits();
        if orbits[chosen] != orbits[x] {
            return None;
        }
    }
    Some(canon)
}

/// Certifies each graph6 line of `source` (filter mode). Blank lines are
/// ignored; lines that fail to decode are logged and processing continues.
pub fn filter_stream<R: BufRead>(config: &SearchConfig, source: R) -> Result<SearchOutcome, Error> {
    config.validate()?;
    let lines = source.lines().enumerate().map(|(i, l)| (i + 1, l.unwrap_or_else(|e| format!("\u{0}{e}"))));
    filter_lines(config, lines)
}

pub fn filter_lines<I, S>(config: &SearchConfig, lines: I) -> Result<SearchOutcome, Error>
where
    I: IntoIterator<Item = (usize, S)>,
    S: AsRef<str>,
{
    config.validate()?;
    let mut walker = Walker::new(config, &[]);
    walker.outcome.stats = SearchStats::with_len(CAPACITY);
    let mut seen: HashSet<CanonicalForm> = HashSet::new();
    for (line, text) in lines {
        let text = text.as_ref().trim_end_matches(['\n', '\r']);
        if text.is_empty() {
            continue;
        }
        let mut entry = InputLogEntry { line, g6: text.to_string(), outcome: InputOutcome::Rejected };
        let g = match graph6::decode(text) {
            Ok(g) => g,
            Err(e) => {
                entry.outcome = InputOutcome::DecodeError(e.to_string());
                walker.outcome.input_log.push(entry);
                continue;
            }
        };
        walker.outcome.stats.visited_by_order[g.n()] += 1;
        if g.n() < config.n_min || g.n() > config.n_max {
            entry.outcome = InputOutcome::Skipped;
            walker.outcome.input_log.push(entry);
            continue;
        }
        let canon = canonize(&g);
        if config.dedup {
            let form = canon.form().expect("decoded graphs fit the short form");
            if !seen.insert(form) {
                entry.outcome = InputOutcome::Duplicate;
                walker.outcome.input_log.push(entry);
                continue;
            }
        }
        let (before_c, before_t) = (walker.outcome.certified.len(), walker.outcome.trivial.len());
        walker.examine(&canon.graph, Some(line));
        if walker.outcome.certified.len() > before_c {
            entry.outcome = InputOutcome::Certified;
        } else if walker.outcome.trivial.len() > before_t {
            entry.outcome = InputOutcome::Trivial;
        }
        walker.outcome.input_log.push(entry);
    }
    let mut outcome = walker.outcome;
    let top = outcome.stats.visited_by_order.iter().rposition(|&c| c > 0).map_or(0, |i| i + 1);
    outcome.stats.visited_by_order.truncate(top);
    outcome.sort();
    Ok(outcome)
}

// ---------------------------------------------------------------------------
// JSON-lines records
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct GraphRecord<'a> {
    pub kind: &'static str,
    pub canonical: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    pub certificate: CertificateRecord,
    pub audit: &'a LemmaReport,
}

impl CertifiedGraph {
    pub fn record(&self, kind: &'static str) -> GraphRecord<'_> {
        GraphRecord {
            kind,
            canonical: self.form.as_str(),
            line: self.line,
            certificate: CertificateRecord::new(&self.graph, &self.certificate),
            audit: &self.audit,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SummaryRecord {
    pub kind: String,
    pub mode: Mode,
    pub t: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub connectivity: Connectivity,
    pub rules: Vec<String>,
    pub visited: u64,
    pub visited_by_order: Vec<u64>,
    pub examined: u64,
    pub pruned: u64,
    pub certified: usize,
    pub trivial: usize,
    pub decode_errors: usize,
    /// The vertex bound is a chosen search limit, not a proven one.
    pub n_bound_is_search_limit: bool,
}

impl SearchOutcome {
    pub fn summary(&self, config: &SearchConfig) -> SummaryRecord {
        SummaryRecord {
            kind: "summary".into(),
            mode: config.mode,
            t: config.t,
            n_min: config.n_min,
            n_max: config.n_max,
            connectivity: config.connectivity,
            rules: config.rules().iter().map(|r| r.to_string()).collect(),
            visited: self.stats.visited(),
            visited_by_order: self.stats.visited_by_order.clone(),
            examined: self.stats.examined,
            pruned: self.stats.pruned,
            certified: self.certified.len(),
            trivial: self.trivial.len(),
            decode_errors: self.decode_errors().count(),
            n_bound_is_search_limit: config.mode == Mode::Generate,
        }
    }
}

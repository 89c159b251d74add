//! Exact checking, structural auditing and isomorph-free search for uniquely
//! `C_t`-saturated graphs: graphs with no `t`-cycle in which adding any
//! missing edge creates exactly one.

pub mod canon;
pub mod error;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod paths;
pub mod saturation;
pub mod search;
pub mod structure;

pub use canon::{canonical_form, canonize, Canonical, CanonicalForm};
pub use error::{Error, Graph6Error, GraphError};
pub use graph::{Graph, Vertex, CAPACITY};
pub use paths::{count_paths_between, girth, has_cycle_of_length, shortest_even_cycle};
pub use saturation::{
    certify, is_nontrivial, is_uniquely_saturated, CertificateRecord, SaturationCertificate, Verdict,
};
pub use search::{
    enumerate, filter_stream, for_each_connected, pruning_rules, Connectivity, Mode, Rule, SearchConfig, SearchOutcome,
};
pub use structure::{
    block_decomposition, contains_pattern, has_twins, is_friendship, lemma_audit, BlockDecomposition, HPattern,
    LemmaReport,
};

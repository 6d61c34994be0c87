//! Upper bounds for the basket number, flat plumbing number and flat plumbing
//! basket number of links.
//!
//! Input is a braid word, a planar diagram code, or a raw induced-graph
//! description. The pipeline builds the signed multigraph of the canonical
//! Seifert surface (one vertex per Seifert circle, one signed edge per
//! half-twisted band), evaluates every applicable bound formula on it, applies
//! the genus relations, and cascades the results through
//! `bk(L) <= fp(L) <= fpbk(L)` into the best value per quantity.

pub mod bounds;
pub mod braid;
pub mod catalog;
pub mod graph;
pub mod pd;
pub mod sign;
pub mod spanning;

pub use bounds::{
    analyze_braid, analyze_graph, analyze_pd, AnalysisOptions, BoundsReport, EngineError,
    FpbkPolicy,
};
pub use braid::{BraidError, BraidLetter, BraidWord, Permutation};
pub use graph::{GraphError, Provenance, RawGraph, SeifertGraph, SignedEdge};
pub use pd::{OrientedDiagram, PdCode, PdError};
pub use sign::Sign;

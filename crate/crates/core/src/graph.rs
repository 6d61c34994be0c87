//! The induced signed multigraph of a canonical Seifert surface, with the
//! Euler-characteristic and genus quantities read off it.
//!
//! Vertices are Seifert circles (ids `1..=s`), edges are half-twisted bands
//! carrying the crossing sign. The boundary-component count `l` is stored, not
//! derived: the abstract graph forgets the band order around each circle, so
//! `l` must come from the frontend that built the graph.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::BraidWord;
use crate::sign::Sign;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph needs at least one vertex")]
    EmptyGraph,
    #[error("edge {id} is a loop at vertex {vertex}; a band never joins a circle to itself")]
    LoopEdge { id: usize, vertex: usize },
    #[error("edge {id} touches vertex {vertex}, outside 1..={s}")]
    VertexOutOfRange { id: usize, vertex: usize, s: usize },
    #[error("duplicate edge id {id}")]
    DuplicateEdgeId { id: usize },
    #[error("boundary component count must be at least 1")]
    InvalidBoundaryCount,
    #[error("graph is disconnected; handle split components separately")]
    Disconnected,
    #[error("inconsistent (s={s}, c={c}, l={l}): genus (2 - l - s + c)/2 is not a nonnegative integer")]
    GenusParity { s: usize, c: usize, l: usize },
    #[error("cannot split a raw graph: per-component boundary counts need a braid or diagram source")]
    SplitNeedsSource,
    #[error("raw graph JSON: {0}")]
    RawJson(String),
}

impl GraphError {
    pub fn code(&self) -> &'static str {
        match self {
            GraphError::Disconnected => "disconnected",
            GraphError::GenusParity { .. } => "genus-parity",
            GraphError::SplitNeedsSource => "split-needs-source",
            GraphError::RawJson(_) => "graph-json",
            _ => "graph-invalid",
        }
    }
}

/// Non-fatal findings from [`SeifertGraph::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationWarning {
    /// Some cycle has odd length; canonical graphs built by the frontends
    /// always have even cycles.
    OddCycle,
}

/// Where a graph came from; used to recompute per-component boundary counts
/// when splitting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Braid(BraidWord),
    /// For each link component, the sorted circle ids its strands run along.
    Pd { component_circles: Vec<Vec<usize>> },
    Raw,
}

impl Provenance {
    pub fn kind(&self) -> &'static str {
        match self {
            Provenance::Braid(_) => "braid",
            Provenance::Pd { .. } => "pd",
            Provenance::Raw => "raw",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignedEdge {
    pub u: usize,
    pub v: usize,
    pub sign: Sign,
    pub id: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertGraph {
    /// Seifert circle count `s`.
    pub s: usize,
    pub edges: Vec<SignedEdge>,
    /// Boundary components of the canonical surface = link components.
    pub l: usize,
    pub provenance: Provenance,
}

/// Raw graph JSON: `{"s": int, "l": int, "edges": [[u, v, sign], ...]}` with
/// sign in `{1, -1}`; edge ids are assigned by list position.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct RawGraph {
    pub s: usize,
    pub l: usize,
    pub edges: Vec<(usize, usize, i8)>,
}

impl SeifertGraph {
    /// Band (= crossing) count `c`.
    pub fn c(&self) -> usize {
        self.edges.len()
    }

    pub fn from_raw(raw: &RawGraph) -> Result<SeifertGraph, GraphError> {
        let mut edges = Vec::with_capacity(raw.edges.len());
        for (id, &(u, v, sign)) in raw.edges.iter().enumerate() {
            let sign = Sign::from_value(sign as i64)
                .ok_or_else(|| GraphError::RawJson(format!("edge {id}: sign must be 1 or -1")))?;
            edges.push(SignedEdge { u, v, sign, id });
        }
        let graph = SeifertGraph {
            s: raw.s,
            edges,
            l: raw.l,
            provenance: Provenance::Raw,
        };
        graph.validate()?;
        Ok(graph)
    }

    pub fn parse_raw_json(text: &str) -> Result<SeifertGraph, GraphError> {
        let raw: RawGraph =
            serde_json::from_str(text).map_err(|e| GraphError::RawJson(e.to_string()))?;
        SeifertGraph::from_raw(&raw)
    }

    pub fn to_raw(&self) -> RawGraph {
        RawGraph {
            s: self.s,
            l: self.l,
            edges: self
                .edges
                .iter()
                .map(|e| (e.u, e.v, e.sign.value() as i8))
                .collect(),
        }
    }

    /// Check the structural invariants. Odd cycles are reported as a warning,
    /// not an error: they cannot arise from the braid or diagram frontends but
    /// raw input may carry them.
    pub fn validate(&self) -> Result<Vec<ValidationWarning>, GraphError> {
        if self.s == 0 {
            return Err(GraphError::EmptyGraph);
        }
        if self.l == 0 {
            return Err(GraphError::InvalidBoundaryCount);
        }
        let mut ids = BTreeSet::new();
        for e in &self.edges {
            for vertex in [e.u, e.v] {
                if vertex == 0 || vertex > self.s {
                    return Err(GraphError::VertexOutOfRange {
                        id: e.id,
                        vertex,
                        s: self.s,
                    });
                }
            }
            if e.u == e.v {
                return Err(GraphError::LoopEdge {
                    id: e.id,
                    vertex: e.u,
                });
            }
            if !ids.insert(e.id) {
                return Err(GraphError::DuplicateEdgeId { id: e.id });
            }
        }
        let mut warnings = Vec::new();
        if !self.is_bipartite() {
            warnings.push(ValidationWarning::OddCycle);
        }
        Ok(warnings)
    }

    /// Adjacency as `(neighbor, edge id)` lists, sorted ascending; shared by
    /// the traversals so tie-breaking is uniform everywhere.
    pub(crate) fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.s];
        for e in &self.edges {
            adj[e.u - 1].push((e.v, e.id));
            adj[e.v - 1].push((e.u, e.id));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    fn is_bipartite(&self) -> bool {
        let adj = self.adjacency();
        let mut color = vec![None; self.s];
        for start in 0..self.s {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for &(v, _) in &adj[u] {
                    match color[v - 1] {
                        None => {
                            color[v - 1] = Some(!cu);
                            queue.push_back(v - 1);
                        }
                        Some(cv) if cv == cu => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest vertex.
    pub fn component_vertex_sets(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.s];
        let mut components = Vec::new();
        for start in 0..self.s {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            let mut verts = Vec::new();
            seen[start] = true;
            while let Some(u) = stack.pop() {
                verts.push(u + 1);
                for &(v, _) in &adj[u] {
                    if !seen[v - 1] {
                        seen[v - 1] = true;
                        stack.push(v - 1);
                    }
                }
            }
            verts.sort_unstable();
            components.push(verts);
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.component_vertex_sets().len() == 1
    }

    /// Partition into connected components, recomputing each part's boundary
    /// count from the source. Raw graphs cannot be split: the graph alone does
    /// not determine how `l` distributes over the parts.
    pub fn split_components(&self) -> Result<Vec<SeifertGraph>, GraphError> {
        let parts = self.component_vertex_sets();
        if parts.len() == 1 {
            return Ok(vec![self.clone()]);
        }
        if matches!(self.provenance, Provenance::Raw) {
            return Err(GraphError::SplitNeedsSource);
        }
        let mut out = Vec::with_capacity(parts.len());
        for verts in parts {
            let vset: BTreeSet<usize> = verts.iter().copied().collect();
            let renumber = |v: usize| verts.iter().position(|&x| x == v).unwrap() + 1;
            let edges = self
                .edges
                .iter()
                .filter(|e| vset.contains(&e.u))
                .map(|e| SignedEdge {
                    u: renumber(e.u),
                    v: renumber(e.v),
                    sign: e.sign,
                    id: e.id,
                })
                .collect();
            let (l, provenance) = match &self.provenance {
                Provenance::Braid(word) => {
                    // A braid component spans a contiguous strand interval.
                    let lo = *verts.first().unwrap();
                    let hi = *verts.last().unwrap();
                    debug_assert_eq!(verts.len(), hi - lo + 1);
                    let letters = word
                        .letters()
                        .iter()
                        .filter(|letter| letter.index >= lo && letter.index < hi)
                        .map(|letter| {
                            crate::braid::BraidLetter::new(letter.index - lo + 1, letter.sign)
                        })
                        .collect();
                    let sub = BraidWord::new(hi - lo + 1, letters)
                        .expect("reindexed letters stay in range");
                    (sub.closure_component_count(), Provenance::Braid(sub))
                }
                Provenance::Pd { component_circles } => {
                    let kept: Vec<Vec<usize>> = component_circles
                        .iter()
                        .filter(|circles| circles.iter().all(|c| vset.contains(c)))
                        .map(|circles| circles.iter().map(|&c| renumber(c)).collect())
                        .collect();
                    (kept.len(), Provenance::Pd {
                        component_circles: kept,
                    })
                }
                Provenance::Raw => unreachable!(),
            };
            out.push(SeifertGraph {
                s: verts.len(),
                edges,
                l,
                provenance,
            });
        }
        Ok(out)
    }

    /// `χ = s - c` of the disc-band spine.
    pub fn euler_characteristic(&self) -> i64 {
        self.s as i64 - self.edges.len() as i64
    }

    /// Genus of this diagram's canonical surface, from `χ = 2 - 2g - l`.
    /// An upper bound for the canonical genus of the link.
    pub fn canonical_surface_genus(&self) -> Result<usize, GraphError> {
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        let twice = 2 + self.c() as i64 - self.s as i64 - self.l as i64;
        if twice < 0 || twice % 2 != 0 {
            return Err(GraphError::GenusParity {
                s: self.s,
                c: self.c(),
                l: self.l,
            });
        }
        Ok((twice / 2) as usize)
    }
}

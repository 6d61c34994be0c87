//! Planar diagram codes: parsing, strand orientation, crossing signs, and the
//! combinatorial Seifert smoothing that turns a diagram into its induced graph.
//!
//! A crossing `X[a,b,c,d]` lists its four arc labels counterclockwise starting
//! at the incoming under-strand, so the under-strand occupies slots `a`/`c`
//! and the over-strand occupies `b`/`d`. The literal token `U` denotes a
//! 0-crossing unknot and must stand alone.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::{Provenance, SeifertGraph, SignedEdge};
use crate::sign::Sign;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PdError {
    #[error("malformed crossing token `{0}`; expected X[a,b,c,d]")]
    Syntax(String),
    #[error("arc label {label} occurs {count} times; every label must occur exactly twice")]
    ArcCount { label: usize, count: usize },
    #[error("arc labels must be positive integers")]
    ZeroLabel,
    #[error("the unknot marker U must be the only token")]
    UnknotMarker,
    #[error("empty input; a 0-crossing unknot needs the explicit marker U")]
    Empty,
    #[error("diagram is split; handle components separately")]
    SplitDiagram,
    #[error("arc connectivity is not a disjoint union of cycles")]
    InconsistentTracing,
}

impl PdError {
    pub fn code(&self) -> &'static str {
        match self {
            PdError::SplitDiagram => "pd-split",
            PdError::InconsistentTracing => "pd-trace",
            _ => "pd-parse",
        }
    }
}

/// A structurally validated PD code. No crossings means the unknot marker.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PdCode {
    crossings: Vec<[usize; 4]>,
}

impl PdCode {
    pub fn unknot() -> PdCode {
        PdCode { crossings: Vec::new() }
    }

    pub fn crossings(&self) -> &[[usize; 4]] {
        &self.crossings
    }

    pub fn is_unknot_marker(&self) -> bool {
        self.crossings.is_empty()
    }

    /// Parse whitespace-separated `X[a,b,c,d]` tokens or the lone marker `U`.
    pub fn parse(text: &str) -> Result<PdCode, PdError> {
        let tokens: Vec<&str> = text.split_ascii_whitespace().collect();
        if tokens.is_empty() {
            return Err(PdError::Empty);
        }
        if tokens.contains(&"U") {
            if tokens.len() == 1 {
                return Ok(PdCode::unknot());
            }
            return Err(PdError::UnknotMarker);
        }
        let mut crossings = Vec::with_capacity(tokens.len());
        for token in tokens {
            let inner = token
                .strip_prefix("X[")
                .and_then(|t| t.strip_suffix(']'))
                .ok_or_else(|| PdError::Syntax(token.to_string()))?;
            if !inner.bytes().all(|b| b.is_ascii_digit() || b == b',') {
                return Err(PdError::Syntax(token.to_string()));
            }
            let labels: Vec<usize> = inner
                .split(',')
                .map(|part| part.parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|_| PdError::Syntax(token.to_string()))?;
            if labels.len() != 4 {
                return Err(PdError::Syntax(token.to_string()));
            }
            if labels.contains(&0) {
                return Err(PdError::ZeroLabel);
            }
            crossings.push([labels[0], labels[1], labels[2], labels[3]]);
        }
        let code = PdCode { crossings };
        code.check_arc_counts()?;
        Ok(code)
    }

    fn check_arc_counts(&self) -> Result<(), PdError> {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for quad in &self.crossings {
            for &label in quad {
                *counts.entry(label).or_default() += 1;
            }
        }
        for (&label, &count) in &counts {
            if count != 2 {
                return Err(PdError::ArcCount { label, count });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedCrossing {
    pub arcs: [usize; 4],
    /// Whether each slot is an incoming strand end.
    pub incoming: [bool; 4],
    pub sign: Sign,
}

impl OrientedCrossing {
    fn incoming_under_slot(&self) -> usize {
        if self.incoming[0] {
            0
        } else {
            2
        }
    }

    fn incoming_over_slot(&self) -> usize {
        if self.incoming[1] {
            1
        } else {
            3
        }
    }
}

/// A `(crossing index, slot)` strand end.
type SlotRef = (usize, usize);

/// A PD code with strands traced, components counted and crossing signs fixed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedDiagram {
    pub crossings: Vec<OrientedCrossing>,
    /// Link component count `l`.
    pub components: usize,
    arc_component: BTreeMap<usize, usize>,
    /// Per component, the crossing passages in traversal order (`true` = under).
    component_passages: Vec<Vec<bool>>,
}

/// Trace strands through the code and fix orientations and signs.
///
/// Orientations are seeded deterministically: the lowest arc label of each
/// component is directed out of its first listed occurrence. Crossing signs
/// then follow from the right-hand convention. Split diagrams are rejected.
pub fn orient_diagram(pd: &PdCode) -> Result<OrientedDiagram, PdError> {
    if pd.is_unknot_marker() {
        return Ok(OrientedDiagram {
            crossings: Vec::new(),
            components: 1,
            arc_component: BTreeMap::new(),
            component_passages: vec![Vec::new()],
        });
    }

    // Endpoints in listing order; parse validated exactly two per label.
    let mut endpoints: BTreeMap<usize, Vec<SlotRef>> = BTreeMap::new();
    for (ci, quad) in pd.crossings().iter().enumerate() {
        for (slot, &label) in quad.iter().enumerate() {
            endpoints.entry(label).or_default().push((ci, slot));
        }
    }
    debug_assert!(endpoints.values().all(|e| e.len() == 2));

    // Split check: crossings must be connected through arcs.
    {
        let n = pd.crossings().len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                parent[x] = find(parent, parent[x]);
            }
            parent[x]
        }
        for ends in endpoints.values() {
            let (a, b) = (ends[0].0, ends[1].0);
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        let root0 = find(&mut parent, 0);
        if (1..n).any(|i| find(&mut parent, i) != root0) {
            return Err(PdError::SplitDiagram);
        }
    }

    // direction[label] = (from endpoint, to endpoint)
    let mut direction: BTreeMap<usize, (SlotRef, SlotRef)> = BTreeMap::new();
    let mut arc_component = BTreeMap::new();
    let mut component_passages = Vec::new();

    let labels: Vec<usize> = endpoints.keys().copied().collect();
    for &seed in &labels {
        if direction.contains_key(&seed) {
            continue;
        }
        let comp = component_passages.len();
        let mut passages = Vec::new();
        let start_from = endpoints[&seed][0];
        let mut arc = seed;
        let mut from = start_from;
        let mut to = endpoints[&seed][1];
        loop {
            if direction.contains_key(&arc) {
                return Err(PdError::InconsistentTracing);
            }
            direction.insert(arc, (from, to));
            arc_component.insert(arc, comp);
            let (ci, slot_in) = to;
            passages.push(slot_in % 2 == 0);
            let slot_out = slot_in ^ 2;
            let next_arc = pd.crossings()[ci][slot_out];
            let ends = &endpoints[&next_arc];
            let next_from = (ci, slot_out);
            let next_to = if ends[0] == next_from { ends[1] } else { ends[0] };
            if next_arc == seed && next_from == start_from {
                break;
            }
            arc = next_arc;
            from = next_from;
            to = next_to;
        }
        component_passages.push(passages);
    }

    let mut crossings = Vec::with_capacity(pd.crossings().len());
    for (ci, quad) in pd.crossings().iter().enumerate() {
        let mut incoming = [false; 4];
        for (slot, &label) in quad.iter().enumerate() {
            let (_, to) = direction[&label];
            if to == (ci, slot) {
                incoming[slot] = true;
            }
        }
        if incoming[0] == incoming[2] || incoming[1] == incoming[3] {
            return Err(PdError::InconsistentTracing);
        }
        let under = if incoming[0] { Sign::Plus } else { Sign::Minus };
        let over = if incoming[3] { Sign::Plus } else { Sign::Minus };
        crossings.push(OrientedCrossing {
            arcs: *quad,
            incoming,
            sign: under * over,
        });
    }

    Ok(OrientedDiagram {
        crossings,
        components: component_passages.len(),
        arc_component,
        component_passages,
    })
}

/// Oriented smoothing: reconnect the strands at every crossing respecting
/// orientation; the resulting circles are the vertices of the induced graph
/// and each crossing becomes a signed edge between its two circles.
pub fn seifert_circles(d: &OrientedDiagram) -> SeifertGraph {
    if d.crossings.is_empty() {
        return SeifertGraph {
            s: 1,
            edges: Vec::new(),
            l: 1,
            provenance: Provenance::Pd {
                component_circles: vec![vec![1]],
            },
        };
    }

    // Smoothing connects incoming-under -> outgoing-over and
    // incoming-over -> outgoing-under.
    let mut succ: BTreeMap<usize, usize> = BTreeMap::new();
    for x in &d.crossings {
        let in_under = x.arcs[x.incoming_under_slot()];
        let in_over = x.arcs[x.incoming_over_slot()];
        let out_under = x.arcs[x.incoming_under_slot() ^ 2];
        let out_over = x.arcs[x.incoming_over_slot() ^ 2];
        succ.insert(in_under, out_over);
        succ.insert(in_over, out_under);
    }

    // Circles = cycles of succ, id'd in order of their smallest arc label.
    let mut circle_of: BTreeMap<usize, usize> = BTreeMap::new();
    let mut circles = 0usize;
    for &start in succ.keys() {
        if circle_of.contains_key(&start) {
            continue;
        }
        circles += 1;
        let mut arc = start;
        while !circle_of.contains_key(&arc) {
            circle_of.insert(arc, circles);
            arc = succ[&arc];
        }
    }

    let edges = d
        .crossings
        .iter()
        .enumerate()
        .map(|(id, x)| SignedEdge {
            u: circle_of[&x.arcs[x.incoming_under_slot()]],
            v: circle_of[&x.arcs[x.incoming_over_slot()]],
            sign: x.sign,
            id,
        })
        .collect();

    let mut component_circles = vec![Vec::new(); d.components];
    for (&arc, &comp) in &d.arc_component {
        component_circles[comp].push(circle_of[&arc]);
    }
    for list in &mut component_circles {
        list.sort_unstable();
        list.dedup();
    }

    SeifertGraph {
        s: circles,
        edges,
        l: d.components,
        provenance: Provenance::Pd { component_circles },
    }
}

/// Literal alternation check: along every component the crossing passages
/// must alternate over/under, cyclically.
pub fn is_alternating_diagram(d: &OrientedDiagram) -> bool {
    d.component_passages.iter().all(|passages| {
        passages.is_empty()
            || passages
                .iter()
                .zip(passages.iter().cycle().skip(1))
                .all(|(a, b)| a != b)
    })
}

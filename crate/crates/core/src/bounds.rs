//! Evaluation of every upper-bound formula, the genus relations, and the
//! cascaded best values, assembled into a serializable report.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::BraidWord;
use crate::graph::{GraphError, SeifertGraph};
use crate::pd::{self, OrientedDiagram, PdCode, PdError};
use crate::sign::Sign;
use crate::spanning::{
    alternating_depth_signing, bfs_spanning_tree, compute_beta, compute_gamma,
    enumerate_spanning_trees, minimal_augmentation_fp, SearchMode, SpanningTree,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Pd(#[from] PdError),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl EngineError {
    pub fn code(&self) -> &'static str {
        match self {
            EngineError::Graph(e) => e.code(),
            EngineError::Pd(e) => e.code(),
            EngineError::Invariant(_) => "internal-invariant",
        }
    }

    pub fn is_internal(&self) -> bool {
        matches!(self, EngineError::Invariant(_))
    }
}

/// Which depth signing feeds the flat plumbing basket diagram bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FpbkPolicy {
    /// Minimize β over the two global reversals, then read off γ.
    #[default]
    MinBeta,
    /// Evaluate both reversals and keep the smaller value. The result is not
    /// certified as a bound under the default reading and is flagged.
    MinBound,
}

impl FpbkPolicy {
    pub fn as_str(self) -> &'static str {
        match self {
            FpbkPolicy::MinBeta => "min-beta",
            FpbkPolicy::MinBound => "min-bound",
        }
    }
}

#[derive(Debug, Clone)]
pub struct AnalysisOptions {
    pub fpbk_policy: FpbkPolicy,
    /// Minimize the fpbk diagram bound over all spanning trees (min-beta
    /// policy only).
    pub exhaustive: bool,
    pub tree_limit: usize,
    /// Caller vouches that this diagram's canonical surface attains the link
    /// genus, unlocking the exact basket number.
    pub assert_minimal_genus: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            fpbk_policy: FpbkPolicy::MinBeta,
            exhaustive: false,
            tree_limit: 100_000,
            assert_minimal_genus: false,
        }
    }
}

// --- individual bounds -------------------------------------------------------

/// Basket bound from the braid form: length of the remainder after the
/// descending positive coil. Absent when no rotation exposes the coil.
pub fn bk_bound_braid(w: &BraidWord) -> Option<usize> {
    w.find_coil_prefix().map(|coil| coil.remainder.len())
}

/// Basket bound from the induced graph: `c - s + 1` non-tree bands.
pub fn bk_bound_diagram(g: &SeifertGraph) -> Result<usize, GraphError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    Ok(g.c() + 1 - g.s)
}

/// Flat plumbing bound from the braid word: `m + n - 1`.
pub fn fp_bound_braid(w: &BraidWord) -> usize {
    w.len() + w.strands() - 1
}

/// Flat plumbing bound from the induced graph: `c + s - 1`.
pub fn fp_bound_diagram(g: &SeifertGraph) -> Result<usize, GraphError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    Ok(g.c() + g.s - 1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinedFp {
    pub value: usize,
    pub augmented_edges: usize,
    pub mode: SearchMode,
}

/// Refined flat plumbing bound: only tree edges that some non-tree band
/// actually needs get the cancelling annulus pair, so the count drops to
/// `(c - s + 1) + 2·|S_min|`. `None` when some band can never be matched
/// (odd-cycle raw input).
pub fn fp_bound_refined(g: &SeifertGraph) -> Result<Option<RefinedFp>, GraphError> {
    let tree = bfs_spanning_tree(g, 1)?;
    Ok(minimal_augmentation_fp(g, &tree).map(|aug| RefinedFp {
        value: (g.c() + 1 - g.s) + 2 * aug.tree_edge_ids.len(),
        augmented_edges: aug.tree_edge_ids.len(),
        mode: aug.mode,
    }))
}

/// Flat plumbing basket bound from the braid form: `m + 2p` where `p` counts
/// the positive letters of the remainder `W`.
pub fn fpbk_bound_braid(w: &BraidWord) -> Option<usize> {
    w.find_coil_prefix().map(|coil| {
        let positives = coil
            .remainder
            .letters()
            .iter()
            .filter(|l| l.sign == Sign::Plus)
            .count();
        coil.remainder.len() + 2 * positives
    })
}

/// Flat plumbing basket bound from signed letter counts, after padding the
/// word so every generator carries both signs. With majority sign `-ε_i` per
/// generator, the bound is `Σ a_i(-ε_i) + 2(a_i(ε_i) - 1)`. Balanced counts
/// take `ε_i = -1`; both choices contribute equally.
pub fn fpbk_bound_signed_counts(w: &BraidWord) -> usize {
    let padded = w.ensure_all_generators_both_signs();
    let mut total = 0;
    for counts in padded.letter_counts() {
        let (pos, neg) = (counts.positive, counts.negative);
        debug_assert!(pos >= 1 && neg >= 1);
        // ε = -sign(a(+1) - a(-1)); balanced counts take ε = -1 (either
        // choice contributes the same).
        let eps = if pos >= neg { Sign::Minus } else { Sign::Plus };
        let (majority, minority) = match eps {
            Sign::Minus => (pos, neg), // a(-ε) = a(+1)
            Sign::Plus => (neg, pos),
        };
        total += majority + 2 * (minority - 1);
    }
    total
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpbkDiagramBound {
    pub value: usize,
    pub beta: usize,
    pub gamma: usize,
    pub top_sign: Sign,
}

fn fpbk_formula(g: &SeifertGraph, beta: usize, gamma: usize) -> Result<usize, EngineError> {
    let (c, s) = (g.c() as i64, g.s as i64);
    let (b, gm) = (beta as i64, gamma as i64);
    let value = (3 * c - 2 * gm) - (3 * s - b) + 3;
    let decomposed = b + gm + 3 * (c - s + 1 - gm);
    if value != decomposed || value < 0 {
        return Err(EngineError::Invariant(format!(
            "fpbk decomposition mismatch: value={value}, beta+gamma+3(c-s+1-gamma)={decomposed}"
        )));
    }
    Ok(value as usize)
}

fn fpbk_for_tree(
    g: &SeifertGraph,
    tree: &SpanningTree,
    policy: FpbkPolicy,
) -> Result<FpbkDiagramBound, EngineError> {
    match policy {
        FpbkPolicy::MinBeta => {
            let (beta, signing) = compute_beta(g, tree);
            let gamma = compute_gamma(g, tree, &signing);
            Ok(FpbkDiagramBound {
                value: fpbk_formula(g, beta, gamma)?,
                beta,
                gamma,
                top_sign: signing.top_sign(),
            })
        }
        FpbkPolicy::MinBound => {
            let mut best: Option<FpbkDiagramBound> = None;
            for top in [Sign::Plus, Sign::Minus] {
                let signing = alternating_depth_signing(tree, top);
                let beta = g
                    .edges
                    .iter()
                    .filter(|e| tree.contains_edge(e.id) && signing.sign_of(e.id) != e.sign)
                    .count();
                let gamma = compute_gamma(g, tree, &signing);
                let candidate = FpbkDiagramBound {
                    value: fpbk_formula(g, beta, gamma)?,
                    beta,
                    gamma,
                    top_sign: top,
                };
                if best.as_ref().is_none_or(|b| candidate.value < b.value) {
                    best = Some(candidate);
                }
            }
            Ok(best.expect("two candidates evaluated"))
        }
    }
}

/// Flat plumbing basket bound `(3c - 2γ) - (3s - β) + 3` on the BFS tree.
pub fn fpbk_bound_diagram(
    g: &SeifertGraph,
    policy: FpbkPolicy,
) -> Result<FpbkDiagramBound, EngineError> {
    let tree = bfs_spanning_tree(g, 1)?;
    fpbk_for_tree(g, &tree, policy)
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GenusBlock {
    pub g_diagram: usize,
    pub l: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower_bk: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_bk: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

/// Genus of this diagram's canonical surface plus the exactness detection:
/// when the genus is known minimal (positive braid closure, alternating
/// diagram, or asserted by the caller), the basket number equals
/// `2g + l - 1` and both bounds collapse.
pub fn genus_relations(
    g: &SeifertGraph,
    braid: Option<&BraidWord>,
    diagram: Option<&OrientedDiagram>,
    user_asserts_minimal: bool,
) -> Result<GenusBlock, EngineError> {
    let genus = g.canonical_surface_genus()?;
    let upper = 2 * genus + g.l - 1;
    if upper != g.c() + 1 - g.s {
        return Err(EngineError::Invariant(format!(
            "2g + l - 1 = {upper} differs from c - s + 1 = {}",
            g.c() + 1 - g.s
        )));
    }
    let reason = if braid.is_some_and(|w| w.is_positive()) {
        Some("positive-braid")
    } else if braid.is_some_and(|w| w.is_alternating_closure()) {
        Some("alternating-closure")
    } else if diagram.is_some_and(pd::is_alternating_diagram) {
        Some("alternating-diagram")
    } else if user_asserts_minimal {
        Some("user-asserted")
    } else {
        None
    };
    Ok(GenusBlock {
        g_diagram: genus,
        l: g.l,
        lower_bk: reason.map(|_| upper),
        exact_bk: reason.map(|_| upper),
        reason: reason.map(str::to_string),
    })
}

// --- report ------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Quantity {
    Bk,
    Fp,
    Fpbk,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct BoundEntry {
    pub name: String,
    pub value: usize,
    #[serde(rename = "ref")]
    pub formula: String,
    pub note: String,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
pub struct BestBounds {
    pub bk: usize,
    pub fp: usize,
    pub fpbk: usize,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct ReportFlags {
    pub possibly_trivial: bool,
    pub fpbk_policy: String,
    /// Set under min-bound: the sign choice there is an uncertified reading.
    pub fpbk_policy_ambiguity: bool,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct InputSummary {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixture: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strands: Option<usize>,
    pub s: usize,
    pub c: usize,
    pub l: usize,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct BoundsReport {
    pub input: InputSummary,
    pub bounds: Vec<BoundEntry>,
    pub best: BestBounds,
    pub genus: GenusBlock,
    pub flags: ReportFlags,
}

impl BoundsReport {
    pub fn bound(&self, name: &str) -> Option<usize> {
        self.bounds.iter().find(|b| b.name == name).map(|b| b.value)
    }
}

struct Collector {
    entries: Vec<(Quantity, BoundEntry)>,
}

impl Collector {
    fn new() -> Collector {
        Collector {
            entries: Vec::new(),
        }
    }

    fn push(&mut self, quantity: Quantity, name: &str, value: usize, formula: &str, note: String) {
        self.entries.push((
            quantity,
            BoundEntry {
                name: name.to_string(),
                value,
                formula: formula.to_string(),
                note,
            },
        ));
    }

    fn cascade(&self) -> Result<BestBounds, EngineError> {
        let min_of = |q: Quantity| {
            self.entries
                .iter()
                .filter(|(quantity, _)| *quantity == q)
                .map(|(_, e)| e.value)
                .min()
        };
        let fpbk = min_of(Quantity::Fpbk).ok_or_else(|| {
            EngineError::Invariant("no flat plumbing basket bound present".into())
        })?;
        let fp = min_of(Quantity::Fp).map_or(fpbk, |v| v.min(fpbk));
        let bk = min_of(Quantity::Bk).map_or(fp, |v| v.min(fp));
        Ok(BestBounds { bk, fp, fpbk })
    }
}

fn diagram_entries(
    g: &SeifertGraph,
    opts: &AnalysisOptions,
    collector: &mut Collector,
) -> Result<(), EngineError> {
    let bk = bk_bound_diagram(g)?;
    collector.push(
        Quantity::Bk,
        "bk_diagram",
        bk,
        "bk <= c-s+1",
        format!("c={}, s={}", g.c(), g.s),
    );

    let fp = fp_bound_diagram(g)?;
    collector.push(
        Quantity::Fp,
        "fp_diagram",
        fp,
        "fp <= c+s-1",
        format!("c={}, s={}", g.c(), g.s),
    );

    // Can be absent for odd-cycle raw input; the plain diagram bound stands.
    if let Some(refined) = fp_bound_refined(g)? {
        let mode = match refined.mode {
            SearchMode::Exact => "exact",
            SearchMode::Greedy => "greedy",
        };
        collector.push(
            Quantity::Fp,
            "fp_refined",
            refined.value,
            "fp <= (c-s+1)+2t",
            format!("t={} tree edges doubled ({mode} search)", refined.augmented_edges),
        );
    }

    if opts.exhaustive && opts.fpbk_policy == FpbkPolicy::MinBeta {
        let enumeration = enumerate_spanning_trees(g, opts.tree_limit)?;
        let mut best: Option<FpbkDiagramBound> = None;
        for tree in &enumeration.trees {
            let candidate = fpbk_for_tree(g, tree, FpbkPolicy::MinBeta)?;
            if best.as_ref().is_none_or(|b| candidate.value < b.value) {
                best = Some(candidate);
            }
        }
        let bound = best.expect("a connected graph has at least one spanning tree");
        let suffix = if enumeration.truncated {
            format!("first {} spanning trees (limit hit)", enumeration.trees.len())
        } else {
            format!("all {} spanning trees", enumeration.trees.len())
        };
        collector.push(
            Quantity::Fpbk,
            "fpbk_diagram",
            bound.value,
            "fpbk <= (3c-2g)-(3s-b)+3",
            format!(
                "policy min-beta over {suffix}: beta={}, gamma={}, top sign {}",
                bound.beta, bound.gamma, bound.top_sign
            ),
        );
    } else {
        let bound = fpbk_bound_diagram(g, opts.fpbk_policy)?;
        let mut note = format!(
            "policy {}: beta={}, gamma={}, top sign {}",
            opts.fpbk_policy.as_str(),
            bound.beta,
            bound.gamma,
            bound.top_sign
        );
        if opts.fpbk_policy == FpbkPolicy::MinBound {
            note.push_str("; sign chosen to minimize the value, not certified");
        }
        collector.push(
            Quantity::Fpbk,
            "fpbk_diagram",
            bound.value,
            "fpbk <= (3c-2g)-(3s-b)+3",
            note,
        );
    }
    Ok(())
}

fn braid_entries(w: &BraidWord, collector: &mut Collector) {
    if let Some(coil) = w.find_coil_prefix() {
        collector.push(
            Quantity::Bk,
            "bk_braid",
            coil.remainder.len(),
            "bk <= m",
            format!(
                "coil found at rotation {}; remainder has {} letters",
                coil.rotation,
                coil.remainder.len()
            ),
        );
        let positives = coil
            .remainder
            .letters()
            .iter()
            .filter(|l| l.sign == Sign::Plus)
            .count();
        collector.push(
            Quantity::Fpbk,
            "fpbk_braid",
            coil.remainder.len() + 2 * positives,
            "fpbk <= m+2p",
            format!(
                "remainder has {} letters, {positives} positive",
                coil.remainder.len()
            ),
        );
    }
    collector.push(
        Quantity::Fp,
        "fp_braid",
        fp_bound_braid(w),
        "fp <= m+n-1",
        format!("m={}, n={}", w.len(), w.strands()),
    );
    collector.push(
        Quantity::Fpbk,
        "fpbk_signed_counts",
        fpbk_bound_signed_counts(w),
        "fpbk <= sum a(-e)+2(a(e)-1)",
        "evaluated after padding every generator to carry both signs".to_string(),
    );
}

fn finish(
    input: InputSummary,
    mut collector: Collector,
    genus: GenusBlock,
    opts: &AnalysisOptions,
) -> Result<BoundsReport, EngineError> {
    let rank = |q: Quantity| match q {
        Quantity::Bk => 0,
        Quantity::Fp => 1,
        Quantity::Fpbk => 2,
    };
    collector
        .entries
        .sort_by(|(qa, ea), (qb, eb)| rank(*qa).cmp(&rank(*qb)).then(ea.name.cmp(&eb.name)));
    let best = collector.cascade()?;
    if !(best.bk <= best.fp && best.fp <= best.fpbk) {
        return Err(EngineError::Invariant(format!(
            "cascade broke monotonicity: bk={}, fp={}, fpbk={}",
            best.bk, best.fp, best.fpbk
        )));
    }
    if let Some(lower) = genus.lower_bk {
        if lower > best.bk {
            return Err(EngineError::Invariant(format!(
                "lower bound {lower} exceeds best bk {}",
                best.bk
            )));
        }
    }
    let flags = ReportFlags {
        possibly_trivial: best.fp < 3,
        fpbk_policy: opts.fpbk_policy.as_str().to_string(),
        fpbk_policy_ambiguity: opts.fpbk_policy == FpbkPolicy::MinBound,
    };
    Ok(BoundsReport {
        input,
        bounds: collector.entries.into_iter().map(|(_, e)| e).collect(),
        best,
        genus,
        flags,
    })
}

/// Full pipeline for a braid word.
pub fn analyze_braid(w: &BraidWord, opts: &AnalysisOptions) -> Result<BoundsReport, EngineError> {
    let g = w.closure_seifert_graph();
    g.validate()?;
    let mut collector = Collector::new();
    braid_entries(w, &mut collector);
    diagram_entries(&g, opts, &mut collector)?;
    let genus = genus_relations(&g, Some(w), None, opts.assert_minimal_genus)?;
    let input = InputSummary {
        kind: "braid".to_string(),
        fixture: None,
        word: Some(w.to_string()),
        strands: Some(w.strands()),
        s: g.s,
        c: g.c(),
        l: g.l,
    };
    finish(input, collector, genus, opts)
}

/// Full pipeline for a planar diagram code.
pub fn analyze_pd(code: &PdCode, opts: &AnalysisOptions) -> Result<BoundsReport, EngineError> {
    let diagram = pd::orient_diagram(code)?;
    let g = pd::seifert_circles(&diagram);
    g.validate()?;
    let mut collector = Collector::new();
    diagram_entries(&g, opts, &mut collector)?;
    let genus = genus_relations(&g, None, Some(&diagram), opts.assert_minimal_genus)?;
    let input = InputSummary {
        kind: "pd".to_string(),
        fixture: None,
        word: None,
        strands: None,
        s: g.s,
        c: g.c(),
        l: g.l,
    };
    finish(input, collector, genus, opts)
}

/// Full pipeline for a raw induced graph.
pub fn analyze_graph(g: &SeifertGraph, opts: &AnalysisOptions) -> Result<BoundsReport, EngineError> {
    g.validate()?;
    let mut collector = Collector::new();
    if let crate::graph::Provenance::Braid(word) = &g.provenance {
        braid_entries(word, &mut collector);
    }
    diagram_entries(g, opts, &mut collector)?;
    let braid = match &g.provenance {
        crate::graph::Provenance::Braid(word) => Some(word.clone()),
        _ => None,
    };
    let genus = genus_relations(g, braid.as_ref(), None, opts.assert_minimal_genus)?;
    let kind = match &g.provenance {
        crate::graph::Provenance::Braid(_) => "braid",
        crate::graph::Provenance::Pd { .. } => "pd",
        crate::graph::Provenance::Raw => "graph",
    };
    let input = InputSummary {
        kind: kind.to_string(),
        fixture: None,
        word: braid.as_ref().map(|w| w.to_string()),
        strands: braid.as_ref().map(|w| w.strands()),
        s: g.s,
        c: g.c(),
        l: g.l,
    };
    finish(input, collector, genus, opts)
}

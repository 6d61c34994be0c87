//! Spanning trees of the induced graph, the depth-alternating signing, the
//! path sign sums behind the ±1 lemma, and the β/γ counts feeding the flat
//! plumbing basket bound.

use std::collections::BTreeMap;
use std::collections::VecDeque;

use crate::graph::{GraphError, SeifertGraph, SignedEdge};
use crate::sign::Sign;

/// BFS tree rooted at some vertex; exactly `s - 1` tree edges when spanning.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    root: usize,
    /// Per vertex (1-based, index `v - 1`): `(parent vertex, tree edge id)`.
    parent: Vec<Option<(usize, usize)>>,
    depth: Vec<usize>,
    tree_edges: Vec<usize>,
}

impl SpanningTree {
    pub fn root(&self) -> usize {
        self.root
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v - 1]
    }

    pub fn parent(&self, v: usize) -> Option<(usize, usize)> {
        self.parent[v - 1]
    }

    /// Sorted tree edge ids.
    pub fn tree_edge_ids(&self) -> &[usize] {
        &self.tree_edges
    }

    pub fn contains_edge(&self, id: usize) -> bool {
        self.tree_edges.binary_search(&id).is_ok()
    }

    /// Edge ids along the unique tree path from `u` to `v`; empty when `u == v`.
    pub fn path_edges(&self, u: usize, v: usize) -> Vec<usize> {
        let mut a = u;
        let mut b = v;
        let mut from_a = Vec::new();
        let mut from_b = Vec::new();
        while self.depth(a) > self.depth(b) {
            let (p, e) = self.parent(a).expect("non-root has a parent");
            from_a.push(e);
            a = p;
        }
        while self.depth(b) > self.depth(a) {
            let (p, e) = self.parent(b).expect("non-root has a parent");
            from_b.push(e);
            b = p;
        }
        while a != b {
            let (pa, ea) = self.parent(a).expect("non-root has a parent");
            let (pb, eb) = self.parent(b).expect("non-root has a parent");
            from_a.push(ea);
            from_b.push(eb);
            a = pa;
            b = pb;
        }
        from_b.reverse();
        from_a.extend(from_b);
        from_a
    }

    /// Rebuild parent/depth data for a given tree edge set, rooted at `root`,
    /// exploring neighbors in ascending `(vertex id, edge id)` order.
    fn from_edge_set(g: &SeifertGraph, root: usize, edge_ids: &[usize]) -> SpanningTree {
        let in_tree: std::collections::BTreeSet<usize> = edge_ids.iter().copied().collect();
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); g.s];
        for e in &g.edges {
            if in_tree.contains(&e.id) {
                adj[e.u - 1].push((e.v, e.id));
                adj[e.v - 1].push((e.u, e.id));
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let mut parent = vec![None; g.s];
        let mut depth = vec![0; g.s];
        let mut seen = vec![false; g.s];
        seen[root - 1] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &(v, id) in &adj[u - 1] {
                if !seen[v - 1] {
                    seen[v - 1] = true;
                    parent[v - 1] = Some((u, id));
                    depth[v - 1] = depth[u - 1] + 1;
                    queue.push_back(v);
                }
            }
        }
        let mut tree_edges = edge_ids.to_vec();
        tree_edges.sort_unstable();
        SpanningTree {
            root,
            parent,
            depth,
            tree_edges,
        }
    }
}

/// Breadth-first spanning tree rooted at `root`; neighbor exploration in
/// ascending `(vertex id, edge id)` order makes it deterministic.
pub fn bfs_spanning_tree(g: &SeifertGraph, root: usize) -> Result<SpanningTree, GraphError> {
    assert!(root >= 1 && root <= g.s, "root out of range");
    let adj = g.adjacency();
    let mut parent = vec![None; g.s];
    let mut depth = vec![0; g.s];
    let mut seen = vec![false; g.s];
    let mut tree_edges = Vec::new();
    seen[root - 1] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &(v, id) in &adj[u - 1] {
            if !seen[v - 1] {
                seen[v - 1] = true;
                parent[v - 1] = Some((u, id));
                depth[v - 1] = depth[u - 1] + 1;
                tree_edges.push(id);
                queue.push_back(v);
            }
        }
    }
    if seen.iter().any(|&s| !s) {
        return Err(GraphError::Disconnected);
    }
    tree_edges.sort_unstable();
    Ok(SpanningTree {
        root,
        parent,
        depth,
        tree_edges,
    })
}

/// Tree-edge signs alternating with depth: an edge whose child endpoint has
/// depth `d` carries `top_sign · (-1)^(d-1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepthSigning {
    top_sign: Sign,
    assignment: BTreeMap<usize, Sign>,
}

impl DepthSigning {
    pub fn top_sign(&self) -> Sign {
        self.top_sign
    }

    pub fn sign_of(&self, edge_id: usize) -> Sign {
        self.assignment[&edge_id]
    }

    pub fn assignment(&self) -> &BTreeMap<usize, Sign> {
        &self.assignment
    }
}

pub fn alternating_depth_signing(t: &SpanningTree, top_sign: Sign) -> DepthSigning {
    let mut assignment = BTreeMap::new();
    for v in 1..=t.parent.len() {
        if let Some((_, edge_id)) = t.parent(v) {
            let d = t.depth(v);
            let sign = if (d - 1).is_multiple_of(2) { top_sign } else { -top_sign };
            assignment.insert(edge_id, sign);
        }
    }
    DepthSigning {
        top_sign,
        assignment,
    }
}

/// Sum of assigned signs along the unique tree path; 0 when `u == v`.
pub fn tree_path_sign_sum(t: &SpanningTree, signing: &DepthSigning, u: usize, v: usize) -> i64 {
    t.path_edges(u, v)
        .iter()
        .map(|id| signing.sign_of(*id).value())
        .sum()
}

/// True iff every non-tree edge's endpoint path sum is `+1` or `-1`.
pub fn check_sign_sum_lemma(g: &SeifertGraph, t: &SpanningTree, signing: &DepthSigning) -> bool {
    g.edges
        .iter()
        .filter(|e| !t.contains_edge(e.id))
        .all(|e| tree_path_sign_sum(t, signing, e.u, e.v).abs() == 1)
}

fn mismatches(g: &SeifertGraph, t: &SpanningTree, signing: &DepthSigning) -> usize {
    g.edges
        .iter()
        .filter(|e| t.contains_edge(e.id) && signing.sign_of(e.id) != e.sign)
        .count()
}

/// β: tree edges whose assigned sign differs from the diagram sign, minimized
/// over the two global sign reversals. Ties go to the signing with the larger
/// γ (it yields the smaller final bound); a full tie picks `top_sign = +`.
pub fn compute_beta(g: &SeifertGraph, t: &SpanningTree) -> (usize, DepthSigning) {
    let plus = alternating_depth_signing(t, Sign::Plus);
    let minus = alternating_depth_signing(t, Sign::Minus);
    let beta_plus = mismatches(g, t, &plus);
    let beta_minus = mismatches(g, t, &minus);
    let (beta, signing) = if beta_plus < beta_minus {
        (beta_plus, plus)
    } else if beta_minus < beta_plus {
        (beta_minus, minus)
    } else if compute_gamma(g, t, &plus) >= compute_gamma(g, t, &minus) {
        (beta_plus, plus)
    } else {
        (beta_minus, minus)
    };
    let s = g.s;
    assert!(beta <= s.saturating_sub(1).div_ceil(2), "beta exceeds ceil((s-1)/2)");
    (beta, signing)
}

/// γ: non-tree edges whose diagram sign differs from their tree-path sign sum.
pub fn compute_gamma(g: &SeifertGraph, t: &SpanningTree, signing: &DepthSigning) -> usize {
    g.edges
        .iter()
        .filter(|e| !t.contains_edge(e.id))
        .filter(|e| e.sign.value() != tree_path_sign_sum(t, signing, e.u, e.v))
        .count()
}

/// How a minimal augmentation was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    Exact,
    Greedy,
}

/// A set of tree edges that, once each is doubled by a cancelling annulus
/// pair, lets every non-tree band be removed along a flat arc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Augmentation {
    pub tree_edge_ids: Vec<usize>,
    pub mode: SearchMode,
}

struct PathConstraint {
    /// Tree edge ids on the path.
    path: Vec<usize>,
    /// Required sign sum, `-ε` for a non-tree edge of sign ε.
    target: i64,
}

/// An augmented position contributes any value in `{+1, -1}` (the plumbed
/// pair gives three parallel bands and the arc picks one); a kept position
/// contributes its diagram sign.
fn feasible(g: &SeifertGraph, constraint: &PathConstraint, in_set: &[bool]) -> bool {
    let mut kept = 0i64;
    let mut free = 0i64;
    for &id in &constraint.path {
        if in_set[id] {
            free += 1;
        } else {
            kept += g.edges[id].sign.value();
        }
    }
    let need = constraint.target - kept;
    need.abs() <= free && (need - free) % 2 == 0
}

/// Smallest set of tree edges whose augmentation makes every non-tree edge
/// removable. Exact search by increasing size up to `s - 1 <= 20` tree edges,
/// greedy (most violated paths first) beyond that. `None` when some path can
/// never meet its target (odd-cycle input), which cannot happen for graphs
/// built by the frontends.
pub fn minimal_augmentation_fp(g: &SeifertGraph, t: &SpanningTree) -> Option<Augmentation> {
    let max_id = g.edges.iter().map(|e| e.id).max().map_or(0, |m| m + 1);
    let constraints: Vec<PathConstraint> = g
        .edges
        .iter()
        .filter(|e| !t.contains_edge(e.id))
        .map(|e| PathConstraint {
            path: t.path_edges(e.u, e.v),
            target: -e.sign.value(),
        })
        .collect();

    // Fully augmented is the best we can ever do; if that fails, give up.
    let mut all = vec![false; max_id];
    for &id in t.tree_edge_ids() {
        all[id] = true;
    }
    if !constraints.iter().all(|c| feasible(g, c, &all)) {
        return None;
    }

    let tree_edges = t.tree_edge_ids();
    if tree_edges.len() <= 20 {
        for size in 0..=tree_edges.len() {
            let mut found: Option<Vec<usize>> = None;
            for_each_subset(tree_edges, size, &mut |subset| {
                if found.is_some() {
                    return;
                }
                let mut in_set = vec![false; max_id];
                for &id in subset {
                    in_set[id] = true;
                }
                if constraints.iter().all(|c| feasible(g, c, &in_set)) {
                    found = Some(subset.to_vec());
                }
            });
            if let Some(tree_edge_ids) = found {
                return Some(Augmentation {
                    tree_edge_ids,
                    mode: SearchMode::Exact,
                });
            }
        }
        unreachable!("full augmentation was checked feasible");
    }

    let mut in_set = vec![false; max_id];
    let mut chosen = Vec::new();
    loop {
        let violated: Vec<&PathConstraint> = constraints
            .iter()
            .filter(|c| !feasible(g, c, &in_set))
            .collect();
        if violated.is_empty() {
            chosen.sort_unstable();
            return Some(Augmentation {
                tree_edge_ids: chosen,
                mode: SearchMode::Greedy,
            });
        }
        let best = tree_edges
            .iter()
            .filter(|&&id| !in_set[id])
            .max_by_key(|&&id| {
                (
                    violated.iter().filter(|c| c.path.contains(&id)).count(),
                    std::cmp::Reverse(id),
                )
            })
            .expect("a violated path always has an unaugmented edge available");
        in_set[*best] = true;
        chosen.push(*best);
    }
}

/// Call `f` on every `size`-subset of `items`, in lexicographic order.
fn for_each_subset(items: &[usize], size: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(items: &[usize], start: usize, picked: &mut Vec<usize>, size: usize, f: &mut impl FnMut(&[usize])) {
        if picked.len() == size {
            f(picked);
            return;
        }
        let remaining = size - picked.len();
        for i in start..=items.len().saturating_sub(remaining) {
            picked.push(items[i]);
            rec(items, i + 1, picked, size, f);
            picked.pop();
        }
    }
    rec(items, 0, &mut Vec::new(), size, f);
}

#[derive(Debug, Clone)]
pub struct TreeEnumeration {
    pub trees: Vec<SpanningTree>,
    pub truncated: bool,
}

/// Enumerate all spanning trees (rooted at vertex 1) up to `limit`, in
/// lexicographic order of their sorted edge id sets.
pub fn enumerate_spanning_trees(g: &SeifertGraph, limit: usize) -> Result<TreeEnumeration, GraphError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    let mut edges: Vec<&SignedEdge> = g.edges.iter().collect();
    edges.sort_unstable_by_key(|e| e.id);

    struct Dsu {
        parent: Vec<usize>,
    }
    impl Dsu {
        fn new(n: usize) -> Dsu {
            Dsu {
                parent: (0..n).collect(),
            }
        }
        fn find(&mut self, x: usize) -> usize {
            if self.parent[x] != x {
                self.parent[x] = self.find(self.parent[x]);
            }
            self.parent[x]
        }
        fn union(&mut self, a: usize, b: usize) -> bool {
            let (ra, rb) = (self.find(a), self.find(b));
            if ra == rb {
                return false;
            }
            self.parent[ra] = rb;
            true
        }
    }

    struct Enumerator<'a> {
        g: &'a SeifertGraph,
        edges: Vec<&'a SignedEdge>,
        limit: usize,
        out: Vec<Vec<usize>>,
        truncated: bool,
    }

    impl Enumerator<'_> {
        // Can the vertices still be connected using chosen edges plus edges
        // from position `next` on?
        fn connectable(&self, chosen: &[usize], next: usize) -> bool {
            let mut dsu = Dsu::new(self.g.s);
            let mut parts = self.g.s;
            for &id in chosen {
                let e = &self.g.edges[id];
                if dsu.union(e.u - 1, e.v - 1) {
                    parts -= 1;
                }
            }
            for e in &self.edges[next..] {
                if dsu.union(e.u - 1, e.v - 1) {
                    parts -= 1;
                }
            }
            parts == 1
        }

        fn rec(&mut self, next: usize, chosen: &mut Vec<usize>) {
            if self.truncated {
                return;
            }
            if chosen.len() == self.g.s - 1 {
                if self.out.len() == self.limit {
                    self.truncated = true;
                    return;
                }
                self.out.push(chosen.clone());
                return;
            }
            if next == self.edges.len() {
                return;
            }
            let e = self.edges[next];
            // Include e if it joins two parts.
            let mut dsu = Dsu::new(self.g.s);
            for &id in chosen.iter() {
                let t = &self.g.edges[id];
                dsu.union(t.u - 1, t.v - 1);
            }
            if dsu.find(e.u - 1) != dsu.find(e.v - 1) {
                chosen.push(e.id);
                self.rec(next + 1, chosen);
                chosen.pop();
            }
            // Exclude e if the rest can still connect.
            if self.connectable(chosen, next + 1) {
                self.rec(next + 1, chosen);
            }
        }
    }

    let mut enumerator = Enumerator {
        g,
        edges,
        limit,
        out: Vec::new(),
        truncated: false,
    };
    if g.s == 1 {
        enumerator.out.push(Vec::new());
    } else {
        enumerator.rec(0, &mut Vec::new());
    }
    let Enumerator { out, truncated, .. } = enumerator;
    let trees = out
        .iter()
        .map(|ids| SpanningTree::from_edge_set(g, 1, ids))
        .collect();
    Ok(TreeEnumeration { trees, truncated })
}

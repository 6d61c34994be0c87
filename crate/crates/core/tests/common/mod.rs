//! Shared helpers for the integration suites: a braid-closure-to-PD fixture
//! generator and independent oracles the implementation is checked against.
//! Each test target uses its own subset.
#![allow(dead_code)]

use std::collections::BTreeMap;

use plumb_bounds::braid::BraidWord;
use plumb_bounds::graph::SeifertGraph;
use plumb_bounds::sign::Sign;

/// Render the closure of a braid word as a PD code string.
///
/// Each strand position carries a current arc label; a letter emits one
/// crossing and two fresh labels, and closing the braid renames the final
/// labels back onto the initial ones. Requires every generator index to occur
/// (otherwise some strand circle crosses nothing, which PD cannot express).
pub fn braid_closure_pd(w: &BraidWord) -> String {
    let n = w.strands();
    assert!(n >= 2, "PD export needs at least two strands");
    assert!(
        (1..n).all(|i| w.letters().iter().any(|l| l.index == i)),
        "PD export needs a connected closure diagram"
    );
    let mut cur: Vec<usize> = (1..=n).collect();
    let mut next_arc = n + 1;
    let mut crossings: Vec<[usize; 4]> = Vec::new();
    for letter in w.letters() {
        let u = cur[letter.index - 1];
        let v = cur[letter.index];
        let x = next_arc;
        let y = next_arc + 1;
        next_arc += 2;
        // Both strands run upward. A positive letter crosses the left strand
        // over the right; slots are counterclockwise from the incoming
        // under-strand.
        match letter.sign {
            Sign::Plus => crossings.push([v, y, x, u]),
            Sign::Minus => crossings.push([u, v, y, x]),
        }
        cur[letter.index - 1] = x;
        cur[letter.index] = y;
    }
    let rename: BTreeMap<usize, usize> = cur
        .iter()
        .enumerate()
        .map(|(p, &a)| (a, p + 1))
        .collect();
    crossings
        .iter()
        .map(|quad| {
            let r = |a: usize| rename.get(&a).copied().unwrap_or(a);
            format!("X[{},{},{},{}]", r(quad[0]), r(quad[1]), r(quad[2]), r(quad[3]))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn edge_multiset(g: &SeifertGraph, perm: &[usize]) -> Vec<(usize, usize, i64)> {
    let mut edges: Vec<(usize, usize, i64)> = g
        .edges
        .iter()
        .map(|e| {
            let (u, v) = (perm[e.u - 1], perm[e.v - 1]);
            (u.min(v), u.max(v), e.sign.value())
        })
        .collect();
    edges.sort_unstable();
    edges
}

/// Brute-force signed multigraph isomorphism (plus equal boundary counts),
/// over all vertex relabelings. Fine for the small graphs in the suites.
pub fn signed_graphs_isomorphic(a: &SeifertGraph, b: &SeifertGraph) -> bool {
    if a.s != b.s || a.c() != b.c() || a.l != b.l {
        return false;
    }
    let identity: Vec<usize> = (1..=b.s).collect();
    let target = edge_multiset(b, &identity);
    let mut perm: Vec<usize> = (1..=a.s).collect();
    permute(&mut perm, 0, &mut |p| edge_multiset(a, p) == target)
}

fn permute(perm: &mut Vec<usize>, k: usize, check: &mut impl FnMut(&[usize]) -> bool) -> bool {
    if k == perm.len() {
        return check(perm);
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        if permute(perm, k + 1, check) {
            perm.swap(k, i);
            return true;
        }
        perm.swap(k, i);
    }
    false
}

/// Number of spanning trees by the matrix-tree theorem: integer determinant
/// (fraction-free Bareiss) of the reduced multigraph Laplacian.
pub fn kirchhoff_tree_count(g: &SeifertGraph) -> i128 {
    let n = g.s;
    if n == 1 {
        return 1;
    }
    let mut lap = vec![vec![0i128; n]; n];
    for e in &g.edges {
        let (u, v) = (e.u - 1, e.v - 1);
        lap[u][u] += 1;
        lap[v][v] += 1;
        lap[u][v] -= 1;
        lap[v][u] -= 1;
    }
    let m = n - 1;
    let mut a: Vec<Vec<i128>> = (0..m).map(|i| lap[i + 1][1..].to_vec()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..m.saturating_sub(1) {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..m).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..m {
            for j in k + 1..m {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    sign * a[m - 1][m - 1]
}

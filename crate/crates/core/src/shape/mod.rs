//! `T_i^r` trees, hists and rotational automorphisms.
//!
//! `T_i^r` is the tree whose vertex degrees lie in `{1, r}` and whose root is
//! at distance `i` from every leaf. An automorphism is rotational on a rooted
//! tree when it fixes the root and every other vertex has orbit length equal
//! to the root's degree.

mod search;

use std::collections::VecDeque;

use crate::error::{invalid, Result};
use crate::mgraph::{MultiGraph, RootedSpanningTree, VertexId};

pub use search::find_rotational_automorphism;

/// A bijection on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexPermutation(Vec<VertexId>);

impl VertexPermutation {
    pub fn new(map: Vec<VertexId>) -> Result<Self> {
        let mut seen = vec![false; map.len()];
        for &v in &map {
            if v >= map.len() || seen[v] {
                return Err(invalid(format!(
                    "map is not a bijection on 0..{}",
                    map.len()
                )));
            }
            seen[v] = true;
        }
        Ok(VertexPermutation(map))
    }

    pub fn identity(n: usize) -> Self {
        VertexPermutation((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, v: VertexId) -> VertexId {
        self.0[v]
    }

    pub fn as_slice(&self) -> &[VertexId] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (v, &w) in self.0.iter().enumerate() {
            inv[w] = v;
        }
        VertexPermutation(inv)
    }

    /// `d_α(v)`: the smallest `k > 0` with `α^k(v) = v`.
    pub fn orbit_length(&self, v: VertexId) -> usize {
        let mut k = 1;
        let mut x = self.0[v];
        while x != v {
            x = self.0[x];
            k += 1;
        }
        k
    }
}

/// `d_α(v)`.
pub fn orbit_length(alpha: &VertexPermutation, v: VertexId) -> usize {
    alpha.orbit_length(v)
}

/// Recognised shape of a `T_i^r` tree. `r` is `None` for the single-vertex
/// tree, which is `T_0^r` for every `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TirShape {
    pub r: Option<usize>,
    pub depth: usize,
    pub root: VertexId,
}

/// `|V(T_i^r)| = 1 + Σ_{j<i} r (r-1)^j`.
///
/// Panics on overflow of `usize`.
pub fn t_i_r_order(r: usize, i: usize) -> usize {
    let mut total: usize = 1;
    let mut layer: usize = r;
    for _ in 0..i {
        total = total
            .checked_add(layer)
            .expect("T_i^r order overflows usize");
        layer = layer
            .checked_mul(r.saturating_sub(1))
            .expect("T_i^r order overflows usize");
    }
    total
}

/// `T_i^r` with root 0 and vertices numbered in breadth-first order; the
/// tree edges are all edges of the returned graph.
pub fn build_t_i_r(r: usize, i: usize) -> Result<(MultiGraph, RootedSpanningTree)> {
    if r % 2 == 0 {
        return Err(invalid(format!("r = {r} must be odd")));
    }
    if r == 1 && i > 1 {
        return Err(invalid("T_i^1 exists only for i <= 1"));
    }
    let n = t_i_r_order(r, i);
    let mut g = MultiGraph::new(n);
    let mut frontier = vec![0];
    let mut next = 1;
    for level in 0..i {
        let fanout = if level == 0 { r } else { r - 1 };
        let mut fresh = Vec::with_capacity(frontier.len() * fanout);
        for &p in &frontier {
            for _ in 0..fanout {
                g.push_edge(p, next)?;
                fresh.push(next);
                next += 1;
            }
        }
        frontier = fresh;
    }
    debug_assert_eq!(next, n);
    let tree = RootedSpanningTree::from_parts_unchecked(0, (0..g.m()).collect());
    Ok((g, tree))
}

fn bfs_distances(g: &MultiGraph, from: VertexId) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    dist[from] = 0;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        for &e in g.incident(v) {
            let u = g.other_end(e, v);
            if dist[u] == usize::MAX {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        }
    }
    dist
}

/// Identifies `tree` as some `T_i^r` (with `r >= 3`, or one of the
/// degenerate single-vertex and single-edge trees) and finds its root.
pub fn recognize_t_i_r(tree: &MultiGraph) -> Result<Option<TirShape>> {
    let n = tree.n();
    if n == 0 || tree.m() + 1 != n || !tree.is_connected() {
        return Err(invalid("input is not a tree"));
    }
    match n {
        1 => {
            return Ok(Some(TirShape {
                r: None,
                depth: 0,
                root: 0,
            }))
        }
        2 => {
            return Ok(Some(TirShape {
                r: Some(1),
                depth: 1,
                root: 0,
            }))
        }
        _ => {}
    }
    let r = (0..n).map(|v| tree.degree(v)).max().unwrap_or(0);
    if r < 3 || (0..n).any(|v| tree.degree(v) != 1 && tree.degree(v) != r) {
        return Ok(None);
    }
    // the root is the centre: middle of a longest path
    let a = bfs_distances(tree, 0);
    let b = (0..n)
        .max_by_key(|&v| (a[v], std::cmp::Reverse(v)))
        .unwrap();
    let from_b = bfs_distances(tree, b);
    let c = (0..n)
        .max_by_key(|&v| (from_b[v], std::cmp::Reverse(v)))
        .unwrap();
    let diameter = from_b[c];
    if diameter % 2 == 1 {
        return Ok(None);
    }
    let depth = diameter / 2;
    let from_c = bfs_distances(tree, c);
    let root = (0..n)
        .find(|&v| from_b[v] == depth && from_c[v] == depth)
        .expect("a path of even length has a middle vertex");
    let dist = bfs_distances(tree, root);
    let leaves_ok = (0..n)
        .filter(|&v| tree.degree(v) == 1)
        .all(|v| dist[v] == depth);
    Ok(leaves_ok.then_some(TirShape {
        r: Some(r),
        depth,
        root,
    }))
}

/// [`recognize_t_i_r`] on a spanning tree of `host`.
pub fn recognize_tree(host: &MultiGraph, tree: &RootedSpanningTree) -> Result<Option<TirShape>> {
    tree.check(host)?;
    recognize_t_i_r(&tree.as_graph(host))
}

/// No vertex has degree 2 in the tree.
pub fn is_hist(g: &MultiGraph, tree: &RootedSpanningTree) -> Result<bool> {
    tree.check(g)?;
    Ok(tree.degrees(g).iter().all(|&d| d != 2))
}

/// For an r-regular host and a `T_i^r` spanning tree: every non-tree edge
/// joins two leaves and the subgraph induced by the leaves is even.
pub fn verify_hist_partition(g: &MultiGraph, tree: &RootedSpanningTree) -> Result<bool> {
    if g.regular_degree().is_none() {
        return Err(invalid("host graph is not regular"));
    }
    if recognize_tree(g, tree)?.is_none() {
        return Err(invalid("spanning tree is not isomorphic to any T_i^r"));
    }
    let tdeg = tree.degrees(g);
    let is_leaf = |v: VertexId| tdeg[v] == 1;
    let mut leaf_degree = vec![0usize; g.n()];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let both = is_leaf(u) && is_leaf(v);
        if !tree.contains(e) && !both {
            return Ok(false);
        }
        if both {
            leaf_degree[u] += 1;
            leaf_degree[v] += 1;
        }
    }
    Ok((0..g.n())
        .filter(|&v| is_leaf(v))
        .all(|v| leaf_degree[v] % 2 == 0))
}

/// Edge multiplicity between every vertex pair is preserved by `alpha`.
pub fn is_automorphism(g: &MultiGraph, alpha: &VertexPermutation) -> Result<bool> {
    if alpha.len() != g.n() {
        return Err(invalid(format!(
            "permutation has {} entries for {} vertices",
            alpha.len(),
            g.n()
        )));
    }
    let mult = g.multiplicities();
    Ok(mult.iter().all(|(&(u, v), &c)| {
        let (a, b) = (alpha.apply(u), alpha.apply(v));
        mult.get(&(a.min(b), a.max(b))) == Some(&c)
    }))
}

/// `alpha` fixes the root and every other vertex has orbit length equal to
/// the root's tree degree. Errors if `alpha` is not an automorphism of the
/// tree itself.
pub fn is_rotational(
    g: &MultiGraph,
    tree: &RootedSpanningTree,
    alpha: &VertexPermutation,
) -> Result<bool> {
    tree.check(g)?;
    if !is_automorphism(&tree.as_graph(g), alpha)? {
        return Err(invalid("permutation is not an automorphism of the tree"));
    }
    let root = tree.root();
    let k = tree.degrees(g)[root];
    Ok(alpha.apply(root) == root
        && (0..g.n())
            .filter(|&v| v != root)
            .all(|v| alpha.orbit_length(v) == k))
}

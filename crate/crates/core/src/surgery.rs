//! Edge-expansion, leaf-expansion and 2-cut reduction.
//!
//! All three follow the relabelling convention of [`crate::mgraph`]: deleted
//! vertices and edges are compacted away in ascending order and anything new
//! is appended. Each operation reports the old-to-new [`Relabel`] so callers
//! can carry vertex sets, trees and scripts across it.

use std::collections::BTreeSet;

use crate::error::{contradiction, invalid, Error, Result};
use crate::mgraph::{EdgeId, MultiGraph, Relabel, RootedSpanningTree, VertexId};

/// Result of [`edge_expansion`].
#[derive(Clone, Debug)]
pub struct EdgeExpansion {
    pub graph: MultiGraph,
    pub tree: RootedSpanningTree,
    pub relabel: Relabel,
    /// `[u', v']`, where `u'` hangs off the lower-id endpoint.
    pub gadget: [VertexId; 2],
}

/// Replaces the non-tree edge `e = uv` by two new vertices `u'`, `v'` joined
/// by `r - 1` parallel edges, plus the edges `uu'` and `vv'`, which join the
/// tree.
///
/// Edge ids: `e` is deleted, then `uu'`, `vv'` and the `r - 1` copies of
/// `u'v'` are appended in that order.
pub fn edge_expansion(
    g: &MultiGraph,
    tree: &RootedSpanningTree,
    e: EdgeId,
) -> Result<EdgeExpansion> {
    let r = g
        .regular_degree()
        .ok_or_else(|| invalid("edge expansion needs a regular graph"))?;
    if e >= g.m() {
        return Err(invalid(format!("edge {e} out of range for m = {}", g.m())));
    }
    if tree.contains(e) {
        return Err(invalid(format!("edge {e} is a tree edge")));
    }
    let (u, v) = g.edge(e);
    let n = g.n();
    let (up, vp) = (n, n + 1);

    let mut out = MultiGraph::new(n + 2);
    let mut emap = vec![None; g.m()];
    for (f, &(a, b)) in g.edges().iter().enumerate() {
        if f != e {
            emap[f] = Some(out.push_edge(a, b)?);
        }
    }
    let uu = out.push_edge(u, up)?;
    let vv = out.push_edge(v, vp)?;
    for _ in 1..r {
        out.push_edge(up, vp)?;
    }
    let relabel = Relabel {
        vertices: (0..n).map(Some).collect(),
        edges: emap,
    };
    let mut tree_edges: Vec<EdgeId> = tree
        .edges()
        .iter()
        .map(|&f| relabel.edges[f].unwrap())
        .collect();
    tree_edges.extend([uu, vv]);
    let tree = RootedSpanningTree::from_parts_unchecked(tree.root(), tree_edges);
    Ok(EdgeExpansion {
        graph: out,
        tree,
        relabel,
        gadget: [up, vp],
    })
}

/// Result of [`leaf_expansion`].
#[derive(Clone, Debug)]
pub struct LeafExpansion {
    pub graph: MultiGraph,
    pub tree: RootedSpanningTree,
    /// `l` maps to `None`; each of its old edges maps to the redirected copy.
    pub relabel: Relabel,
    /// `l_1, ..., l_r`; `l_1` carries the old tree edge.
    pub k: Vec<VertexId>,
}

/// Replaces the tree leaf `l` by a copy of `K_r` on `l_1..l_r`, giving each
/// of `l`'s edges its own endpoint in `K`. The tree edge goes to `l_1`, the
/// remaining edges follow in ascending id order. The new tree adds the star
/// around `l_1` inside `K`, so `l_2..l_r` are leaves one level further out.
///
/// Vertex ids: `l` is deleted, `K` takes the `r` ids after the survivors.
/// Edge ids: survivors, then the redirected edges for `l_1..l_r`, then the
/// edges of `K` in lexicographic order.
pub fn leaf_expansion(
    g: &MultiGraph,
    tree: &RootedSpanningTree,
    l: VertexId,
) -> Result<LeafExpansion> {
    let r = g
        .regular_degree()
        .ok_or_else(|| invalid("leaf expansion needs a regular graph"))?;
    if r % 2 == 0 || r < 3 {
        return Err(invalid(format!("leaf expansion needs odd r >= 3, got {r}")));
    }
    if l >= g.n() {
        return Err(invalid(format!(
            "vertex {l} out of range for n = {}",
            g.n()
        )));
    }
    if l == tree.root() {
        return Err(invalid("the root cannot be leaf-expanded"));
    }
    let tree_edge = match g
        .incident(l)
        .iter()
        .filter(|&&e| tree.contains(e))
        .collect::<Vec<_>>()[..]
    {
        [&e] => e,
        _ => return Err(invalid(format!("vertex {l} is not a leaf of the tree"))),
    };
    let mut order = vec![tree_edge];
    let mut rest: Vec<EdgeId> = g
        .incident(l)
        .iter()
        .copied()
        .filter(|&e| e != tree_edge)
        .collect();
    rest.sort_unstable();
    order.extend(rest);

    let (survivors, removal) = g.remove_vertices(&[l])?;
    let base = survivors.n();
    let k: Vec<VertexId> = (base..base + r).collect();
    let mut out = MultiGraph::new(base + r);
    for &(a, b) in survivors.edges() {
        out.push_edge(a, b)?;
    }
    let mut emap = removal.edges.clone();
    for (j, &e) in order.iter().enumerate() {
        let w = removal.vertex(g.other_end(e, l)).expect("l has no loops");
        emap[e] = Some(out.push_edge(w, k[j])?);
    }
    let mut star = Vec::with_capacity(r - 1);
    for a in 0..r {
        for b in a + 1..r {
            let id = out.push_edge(k[a], k[b])?;
            if a == 0 {
                star.push(id);
            }
        }
    }
    // no vertex of K may see a parallel edge
    for &x in &k {
        if out.weighted_neighbors(x).iter().any(|&(_, c)| c > 1) {
            return Err(contradiction(format!(
                "leaf expansion left a parallel edge at K-vertex {x}"
            )));
        }
    }
    let relabel = Relabel {
        vertices: removal.vertices,
        edges: emap,
    };
    let mut tree_edges: Vec<EdgeId> = tree
        .edges()
        .iter()
        .map(|&e| relabel.edges[e].unwrap())
        .collect();
    tree_edges.extend(star);
    let root = relabel.vertex(tree.root()).expect("root survives");
    let tree = RootedSpanningTree::from_parts_unchecked(root, tree_edges);
    Ok(LeafExpansion {
        graph: out,
        tree,
        relabel,
        k,
    })
}

/// One 2-cut reduction: the set `S`, sorted, in the labelling of the graph
/// it applies to.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReductionStep {
    pub set: Vec<VertexId>,
}

impl ReductionStep {
    pub fn new(mut set: Vec<VertexId>) -> Self {
        set.sort_unstable();
        set.dedup();
        ReductionStep { set }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionScript {
    pub steps: Vec<ReductionStep>,
}

impl ReductionScript {
    pub fn new(steps: Vec<ReductionStep>) -> Self {
        ReductionScript { steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// `self` followed by `other`.
    pub fn then(mut self, other: ReductionScript) -> Self {
        self.steps.extend(other.steps);
        self
    }
}

/// Deletes `S` together with `∂(S)` and joins the two outside ends of the
/// cut by a new edge, which gets the last id. Survivors keep their relative
/// order.
pub fn two_cut_reduction(g: &MultiGraph, s: &[VertexId]) -> Result<(MultiGraph, Relabel)> {
    let inside = g.membership(s)?;
    let size = inside.iter().filter(|&&b| b).count();
    if size % 2 == 1 {
        return Err(invalid(format!("|S| = {size} is odd")));
    }
    let cut = g.boundary_of(&inside);
    if cut.len() != 2 {
        return Err(invalid(format!("|∂(S)| = {}, expected 2", cut.len())));
    }
    let outside_end = |e: EdgeId| {
        let (a, b) = g.edge(e);
        if inside[a] {
            b
        } else {
            a
        }
    };
    let (u, v) = (outside_end(cut[0]), outside_end(cut[1]));
    if u == v {
        return Err(contradiction(format!(
            "both cut edges of S end at vertex {u}; the graph is not an r-graph with r >= 3"
        )));
    }
    let members: Vec<VertexId> = (0..g.n()).filter(|&x| inside[x]).collect();
    let (mut out, relabel) = g.remove_vertices(&members)?;
    out.push_edge(relabel.vertex(u).unwrap(), relabel.vertex(v).unwrap())?;
    Ok((out, relabel))
}

/// Inclusion-minimal even sets with exactly two boundary edges, each given as
/// the side avoiding vertex 0, in ascending lexicographic order.
pub fn find_two_cuts(g: &MultiGraph) -> Vec<Vec<VertexId>> {
    let n = g.n();
    let m = g.m();
    let mut found: BTreeSet<Vec<VertexId>> = BTreeSet::new();
    let mut adj: Vec<Vec<(VertexId, EdgeId)>> = vec![Vec::new(); n];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        adj[u].push((v, e));
        adj[v].push((u, e));
    }
    let mut label = vec![usize::MAX; n];
    for e1 in 0..m {
        for e2 in e1 + 1..m {
            label.iter_mut().for_each(|l| *l = usize::MAX);
            let mut count = 0;
            for start in 0..n {
                if label[start] != usize::MAX {
                    continue;
                }
                label[start] = count;
                let mut stack = vec![start];
                while let Some(x) = stack.pop() {
                    for &(y, e) in &adj[x] {
                        if e != e1 && e != e2 && label[y] == usize::MAX {
                            label[y] = count;
                            stack.push(y);
                        }
                    }
                }
                count += 1;
            }
            if count == 1 {
                continue;
            }
            for c in 0..count {
                let crosses = |e: EdgeId| {
                    let (a, b) = g.edge(e);
                    (label[a] == c) != (label[b] == c)
                };
                if !(crosses(e1) && crosses(e2)) {
                    continue;
                }
                let side: Vec<VertexId> = if label[0] == c {
                    (0..n).filter(|&x| label[x] != c).collect()
                } else {
                    (0..n).filter(|&x| label[x] == c).collect()
                };
                if !side.is_empty() && side.len() % 2 == 0 {
                    found.insert(side);
                }
            }
        }
    }
    let all: Vec<Vec<VertexId>> = found.into_iter().collect();
    let is_subset = |a: &[VertexId], b: &[VertexId]| a.iter().all(|x| b.binary_search(x).is_ok());
    all.iter()
        .filter(|s| !all.iter().any(|t| t.len() < s.len() && is_subset(t, s)))
        .cloned()
        .collect()
}

/// Applies the steps in order. A failing step is reported with its index.
pub fn apply_script(g: &MultiGraph, script: &ReductionScript) -> Result<MultiGraph> {
    let mut current = g.clone();
    for (index, step) in script.steps.iter().enumerate() {
        current = two_cut_reduction(&current, &step.set)
            .map_err(|source| Error::ScriptStep {
                index,
                source: Box::new(source),
            })?
            .0;
    }
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::is_r_graph;
    use crate::mgraph::fixtures::*;

    #[test]
    fn edge_expansion_on_k4() {
        let g = complete(4);
        let t = g.spanning_tree(0).unwrap();
        // edge 3 is 1-2, outside the star
        let x = edge_expansion(&g, &t, 3).unwrap();
        assert_eq!((x.graph.n(), x.graph.m()), (6, 9));
        assert!(x.graph.is_regular(3));
        assert_eq!(x.gadget, [4, 5]);
        assert_eq!(x.graph.multiplicity(1, 4), 1);
        assert_eq!(x.graph.multiplicity(2, 5), 1);
        assert_eq!(x.graph.multiplicity(4, 5), 2);
        x.tree.check(&x.graph).unwrap();
        assert!(is_r_graph(&x.graph, 3));
        assert!(edge_expansion(&g, &t, 0).is_err());
    }

    #[test]
    fn reduction_inverts_edge_expansion() {
        let g = petersen();
        let t = g.spanning_tree(0).unwrap();
        for e in (0..g.m()).filter(|&e| !t.contains(e)) {
            let x = edge_expansion(&g, &t, e).unwrap();
            let (back, relabel) = two_cut_reduction(&x.graph, &x.gadget).unwrap();
            assert!(back.same_multiset(&g));
            assert_eq!(
                relabel.vertices[..10],
                (0..10).map(Some).collect::<Vec<_>>()[..]
            );
        }
    }

    #[test]
    fn leaf_expansion_on_k4() {
        let g = complete(4);
        let t = g.spanning_tree(0).unwrap();
        let x = leaf_expansion(&g, &t, 1).unwrap();
        assert_eq!((x.graph.n(), x.graph.m()), (6, 9));
        assert!(x.graph.is_regular(3));
        assert_eq!(x.k, vec![3, 4, 5]);
        // old tree edge 0-1 now ends at l_1
        assert_eq!(x.graph.edge(x.relabel.edge(0).unwrap()), (0, 3));
        x.tree.check(&x.graph).unwrap();
        let deg = x.tree.degrees(&x.graph);
        assert_eq!((deg[3], deg[4], deg[5]), (3, 1, 1));
        assert!(is_r_graph(&x.graph, 3));
    }

    #[test]
    fn leaf_expansion_preconditions() {
        let g = complete(4);
        let t = g.spanning_tree(0).unwrap();
        assert!(leaf_expansion(&g, &t, 0).is_err());
        let c = cycle(4);
        let ct = c.spanning_tree(0).unwrap();
        assert!(leaf_expansion(&c, &ct, 2).is_err());
        // path tree 0-1-2-3 in K_4: 1 is internal
        let path = RootedSpanningTree::new(&g, vec![0, 3, 5], 0).unwrap();
        assert!(leaf_expansion(&g, &path, 1).is_err());
    }

    #[test]
    fn leaf_expansion_with_parallel_neighbour() {
        // bundle: leaf 1 has three copies to 0, all go to distinct K-vertices
        let g = bundle(3);
        let t = g.spanning_tree(0).unwrap();
        let x = leaf_expansion(&g, &t, 1).unwrap();
        assert_eq!(x.graph.n(), 4);
        assert!(x.graph.same_multiset(&complete(4)));
    }

    #[test]
    fn reduction_errors() {
        let g = petersen();
        assert!(matches!(
            two_cut_reduction(&g, &[0]),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            two_cut_reduction(&g, &[0, 1]),
            Err(Error::InvalidArgument(_))
        ));
        // in a triangle both cut edges of {1, 2} end at 0
        let t = MultiGraph::from_edges(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        assert!(matches!(
            two_cut_reduction(&t, &[1, 2]),
            Err(Error::InternalContradiction(_))
        ));
    }

    #[test]
    fn two_cuts_of_small_graphs() {
        assert!(find_two_cuts(&petersen()).is_empty());
        assert_eq!(find_two_cuts(&cycle(4)), vec![vec![1, 2], vec![2, 3]]);
        let g = complete(4);
        let x = edge_expansion(&g, &g.spanning_tree(0).unwrap(), 3).unwrap();
        assert!(find_two_cuts(&x.graph).contains(&vec![4, 5]));
    }

    #[test]
    fn script_errors_carry_index() {
        let g = cycle(4);
        assert_eq!(apply_script(&g, &ReductionScript::default()).unwrap(), g);
        let script = ReductionScript::new(vec![
            ReductionStep::new(vec![1, 2]),
            ReductionStep::new(vec![0]),
        ]);
        match apply_script(&g, &script) {
            Err(Error::ScriptStep { index: 1, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }
}

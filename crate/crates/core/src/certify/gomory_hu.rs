//! Max-flow and Gusfield's Gomory–Hu cut tree on integer-capacity multigraphs.

use crate::maxflow::FlowNetwork;
use crate::mgraph::{MultiGraph, VertexId};

/// Undirected network: each distinct vertex pair becomes one arc pair whose
/// capacity in both directions equals the edge multiplicity.
fn network(g: &MultiGraph) -> FlowNetwork {
    let mut net = FlowNetwork::new(g.n());
    for (&(u, v), &c) in &g.multiplicities() {
        net.add_pair(u, v, c as i64, c as i64);
    }
    net
}

/// A Gomory–Hu cut tree: `parent[v]` for every `v != 0`, with the weight of
/// the tree edge `(v, parent[v])` in `weight[v]`. Vertex 0 is the root.
pub(crate) struct CutTree {
    pub parent: Vec<VertexId>,
    pub weight: Vec<i64>,
}

/// Gusfield's cut-tree variant: no contractions, `n - 1` max-flow calls,
/// pivots processed in ascending id order.
pub(crate) fn gomory_hu(g: &MultiGraph) -> CutTree {
    let n = g.n();
    let mut net = network(g);
    let mut parent = vec![0; n];
    let mut weight = vec![0i64; n];
    for s in 1..n {
        let t = parent[s];
        let (value, side) = net.min_cut(s, t);
        weight[s] = value;
        for i in 0..n {
            if i != s && side[i] && parent[i] == t {
                parent[i] = s;
            }
        }
        if side[parent[t]] {
            parent[s] = parent[t];
            parent[t] = s;
            weight[s] = weight[t];
            weight[t] = value;
        }
    }
    CutTree { parent, weight }
}

impl CutTree {
    /// For each non-root `v`, the vertex set of `v`'s side after removing the
    /// tree edge `(v, parent[v])`.
    pub(crate) fn fundamental_sides(&self) -> Vec<Vec<VertexId>> {
        let n = self.parent.len();
        let mut children = vec![Vec::new(); n];
        for v in 1..n {
            children[self.parent[v]].push(v);
        }
        let mut sides = vec![Vec::new(); n];
        for v in 1..n {
            let mut stack = vec![v];
            while let Some(x) = stack.pop() {
                sides[v].push(x);
                stack.extend(children[x].iter().copied());
            }
            sides[v].sort_unstable();
        }
        sides
    }
}

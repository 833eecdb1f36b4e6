//! From an arbitrary r-graph to a simple rotation r-graph.
//!
//! Step 1 expands every non-tree edge of a BFS tree and then leaf-expands
//! until all leaves sit at the same depth, giving a simple r-graph `H` with a
//! `T_{d+1}^r` spanning tree. Step 2 glues `r` copies of `H` and
//! `(r-1)^2 - r` copies of a rotation graph `R` of the same depth onto a hub
//! `T_2^r`. The result carries an explicit rotation, and a script of 2-cut
//! reductions leads back to the input.

use std::collections::HashMap;
use std::ops::Range;

use crate::certify::is_r_graph;
use crate::error::{contradiction, invalid, Result};
use crate::mgraph::{EdgeId, MultiGraph, RootedSpanningTree, VertexId};
use crate::shape::{
    build_t_i_r, is_automorphism, is_rotational, recognize_tree, VertexPermutation,
};
use crate::surgery::{
    apply_script, edge_expansion, leaf_expansion, two_cut_reduction, ReductionScript, ReductionStep,
};

/// An r-regular graph with a `T_depth^r` spanning tree.
#[derive(Clone, Debug)]
pub struct HistGraph {
    pub graph: MultiGraph,
    pub tree: RootedSpanningTree,
    pub r: usize,
    pub depth: usize,
}

impl HistGraph {
    /// Checks regularity and that the tree is `T_depth^r` rooted at its root.
    pub fn new(graph: MultiGraph, tree: RootedSpanningTree, r: usize) -> Result<Self> {
        if !graph.is_regular(r) {
            return Err(invalid(format!("graph is not {r}-regular")));
        }
        let shape = recognize_tree(&graph, &tree)?
            .ok_or_else(|| invalid("spanning tree is not a T_i^r"))?;
        if shape.r != Some(r) || shape.root != tree.root() {
            return Err(invalid(format!(
                "spanning tree is not a T_i^{r} rooted at {} (found r = {:?}, root {})",
                tree.root(),
                shape.r,
                shape.root
            )));
        }
        Ok(HistGraph {
            graph,
            tree,
            r,
            depth: shape.depth,
        })
    }
}

/// A [`HistGraph`] together with a rotational automorphism.
#[derive(Clone, Debug)]
pub struct RotationGraph {
    pub base: HistGraph,
    pub rotation: VertexPermutation,
}

impl RotationGraph {
    pub fn new(base: HistGraph, rotation: VertexPermutation) -> Result<Self> {
        if !is_automorphism(&base.graph, &rotation)?
            || !is_rotational(&base.graph, &base.tree, &rotation)?
        {
            return Err(invalid("permutation is not a rotational automorphism"));
        }
        Ok(RotationGraph { base, rotation })
    }
}

/// Counters collected along [`construct`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Trace {
    pub edge_expansions: usize,
    /// Every leaf expansion re-checks that its `K_r` sees no parallel edge.
    pub leaf_expansions: usize,
}

fn check_r(r: usize) -> Result<()> {
    if r < 3 || r % 2 == 0 {
        return Err(invalid(format!("r must be odd and at least 3, got {r}")));
    }
    Ok(())
}

/// Edge-expands every non-tree edge of `tree`, in ascending order of the
/// original edge ids. Returns the expanded graph and tree and the gadget
/// `{u', v'}` of every expansion in the final labelling (vertex ids never
/// move during edge expansion).
pub fn expand_non_tree_edges(
    g: &MultiGraph,
    tree: &RootedSpanningTree,
) -> Result<(MultiGraph, RootedSpanningTree, Vec<[VertexId; 2]>)> {
    let mut graph = g.clone();
    let mut t = tree.clone();
    // current id of every original edge still present
    let mut current: Vec<Option<EdgeId>> = (0..g.m()).map(Some).collect();
    let mut gadgets = Vec::new();
    for e in (0..g.m()).filter(|&e| !tree.contains(e)) {
        let id = current[e].expect("original non-tree edges survive until expanded");
        let x = edge_expansion(&graph, &t, id)?;
        for c in current.iter_mut() {
            *c = c.and_then(|old| x.relabel.edge(old));
        }
        gadgets.push(x.gadget);
        graph = x.graph;
        t = x.tree;
    }
    Ok((graph, t, gadgets))
}

/// Step 1: a simple r-graph `H` with a `T_{d+1}^r` spanning tree rooted at
/// vertex 0 of `g`, plus the script that reduces `H` back to `g`.
///
/// `g` must be a connected r-graph; the r-graph property is checked.
pub fn step1_expand(g: &MultiGraph, r: usize) -> Result<(HistGraph, ReductionScript)> {
    let (h, script, _) = step1_traced(g, r)?;
    Ok((h, script))
}

fn step1_traced(g: &MultiGraph, r: usize) -> Result<(HistGraph, ReductionScript, Trace)> {
    check_r(r)?;
    if g.n() == 0 {
        return Err(invalid("empty graph"));
    }
    if !is_r_graph(g, r) {
        return Err(invalid(format!("input is not a {r}-graph")));
    }
    let tree = g.spanning_tree(0)?;
    let (mut graph, mut tree, gadgets) = expand_non_tree_edges(g, &tree)?;
    let mut trace = Trace {
        edge_expansions: gadgets.len(),
        leaf_expansions: 0,
    };
    let tdeg = tree.degrees(&graph);
    if let Some(v) = (0..g.n()).find(|&v| tdeg[v] != r) {
        return Err(contradiction(format!(
            "vertex {v} has tree degree {} after edge expansion",
            tdeg[v]
        )));
    }

    let mut sets: Vec<Vec<VertexId>> = gadgets.iter().map(|p| p.to_vec()).collect();
    let layout = tree.layout(&graph);
    let d = tree
        .leaves(&graph)
        .iter()
        .map(|&l| layout.depth[l])
        .max()
        .unwrap_or(0);
    loop {
        let layout = tree.layout(&graph);
        let Some(l) = tree
            .leaves(&graph)
            .into_iter()
            .find(|&l| layout.depth[l] < d + 1)
        else {
            break;
        };
        let x = leaf_expansion(&graph, &tree, l)?;
        trace.leaf_expansions += 1;
        for set in sets.iter_mut() {
            let had_l = set.contains(&l);
            let mut next = x.relabel.map_vertices(set);
            if had_l {
                next.extend(&x.k);
            }
            next.sort_unstable();
            *set = next;
        }
        graph = x.graph;
        tree = x.tree;
    }

    if !graph.is_simple() {
        return Err(contradiction("step 1 produced a graph with parallel edges"));
    }
    let h = HistGraph::new(graph, tree, r)?;
    if h.depth != d + 1 {
        return Err(contradiction(format!(
            "expected depth {}, got {}",
            d + 1,
            h.depth
        )));
    }

    // undo the edge expansions, last first; earlier gadgets are carried
    // through the reductions that precede them in the script
    let mut steps = Vec::with_capacity(sets.len());
    let mut current = h.graph.clone();
    while let Some(set) = sets.pop() {
        let (next, relabel) = two_cut_reduction(&current, &set)?;
        steps.push(ReductionStep::new(set));
        for other in sets.iter_mut() {
            *other = relabel.map_vertices(other);
        }
        current = next;
    }
    if !current.same_multiset(g) {
        return Err(contradiction(
            "step 1 script does not lead back to the input",
        ));
    }
    Ok((h, ReductionScript::new(steps), trace))
}

/// Where a vertex of the graph under construction came from, in terms of
/// the graph before the current round of leaf expansions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Origin {
    Old(VertexId),
    /// The `K`-vertex that replaced `leaf`'s edge to `via`.
    Attached {
        leaf: VertexId,
        via: VertexId,
    },
}

/// `K_{r+1}` rotated around vertex 0, leaf-expanded `depth - 1` times
/// round by round. Expanding a whole level at once keeps the rotation
/// liftable: the `K`-vertex at `(l, w)` goes to the one at `(α l, α w)`.
pub fn base_rotation_graph(r: usize, depth: usize) -> Result<RotationGraph> {
    Ok(base_rotation_traced(r, depth)?.0)
}

fn base_rotation_traced(r: usize, depth: usize) -> Result<(RotationGraph, usize)> {
    check_r(r)?;
    if depth == 0 {
        return Err(invalid("depth must be at least 1"));
    }
    let mut graph = MultiGraph::new(r + 1);
    for a in 0..=r {
        for b in a + 1..=r {
            graph.push_edge(a, b)?;
        }
    }
    let mut tree = RootedSpanningTree::from_parts_unchecked(0, (0..r).collect());
    let mut alpha: Vec<VertexId> = (0..=r)
        .map(|v| if v == 0 { 0 } else { v % r + 1 })
        .collect();
    let mut expansions = 0;

    for _ in 1..depth {
        let leaves = tree.leaves(&graph);
        let mut origin: Vec<Origin> = (0..graph.n()).map(Origin::Old).collect();
        for &leaf in &leaves {
            let l = origin
                .iter()
                .position(|&o| o == Origin::Old(leaf))
                .expect("leaf not yet expanded");
            let x = leaf_expansion(&graph, &tree, l)?;
            expansions += 1;
            let mut next = vec![Origin::Old(usize::MAX); x.graph.n()];
            for (v, &o) in origin.iter().enumerate() {
                if let Some(w) = x.relabel.vertex(v) {
                    next[w] = o;
                }
            }
            for &kv in &x.k {
                let outside = x
                    .graph
                    .incident(kv)
                    .iter()
                    .map(|&e| x.graph.other_end(e, kv))
                    .find(|u| !x.k.contains(u))
                    .expect("every K-vertex has one outside neighbour");
                let via = match next[outside] {
                    Origin::Old(w) => w,
                    Origin::Attached { leaf: other, .. } => other,
                };
                next[kv] = Origin::Attached { leaf, via };
            }
            origin = next;
            graph = x.graph;
            tree = x.tree;
        }
        let index: HashMap<Origin, VertexId> =
            origin.iter().enumerate().map(|(v, &o)| (o, v)).collect();
        alpha = origin
            .iter()
            .map(|&o| {
                let image = match o {
                    Origin::Old(v) => Origin::Old(alpha[v]),
                    Origin::Attached { leaf, via } => Origin::Attached {
                        leaf: alpha[leaf],
                        via: alpha[via],
                    },
                };
                index[&image]
            })
            .collect();
    }

    let base = HistGraph::new(graph, tree, r)?;
    let rotation = VertexPermutation::new(alpha)?;
    let rg = RotationGraph::new(base, rotation)
        .map_err(|_| contradiction("lifted permutation is not a rotational automorphism"))?;
    Ok((rg, expansions))
}

/// Vertex layout of an assembled graph and the lists used to wire it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssemblyPlan {
    pub r: usize,
    /// The hub `T_2^r` occupies `0..hub_size`, rooted at 0.
    pub hub_size: usize,
    /// `H^1..H^r`, each `H` minus its root in source order.
    pub h_copies: Vec<Range<VertexId>>,
    /// `R^1..R^{(r-1)^2 - r}`, likewise.
    pub r_copies: Vec<Range<VertexId>>,
    /// `N_1..N_r`: root neighbours of the copies, `(r-1)^2` each.
    pub n_lists: Vec<Vec<VertexId>>,
    /// `L_1..L_r`: hub leaves, `r - 1` each.
    pub l_lists: Vec<Vec<VertexId>>,
    /// The new edges joining copies to hub leaves.
    pub new_edges: Vec<(VertexId, VertexId)>,
}

/// Output of [`assemble`].
#[derive(Clone, Debug)]
pub struct Assembly {
    pub rotation_graph: RotationGraph,
    pub plan: AssemblyPlan,
    /// Single 2-cut reduction turning the assembly into `H`, with `H`'s
    /// original labelling.
    pub to_h: ReductionScript,
}

/// Step 2: glues copies of `h` and `rot` onto a hub `T_2^r`.
///
/// `h` must be rooted at vertex 0 (as [`step1_expand`] produces) so that
/// the reduction back lands on `h`'s own labelling.
pub fn assemble(h: &HistGraph, rot: &RotationGraph) -> Result<Assembly> {
    let r = h.r;
    check_r(r)?;
    let rb = &rot.base;
    if rb.r != r {
        return Err(invalid(format!(
            "H is {r}-regular but R is {}-regular",
            rb.r
        )));
    }
    if rb.depth != h.depth {
        return Err(invalid(format!(
            "H has depth {} but R has depth {}",
            h.depth, rb.depth
        )));
    }
    let x = h.tree.root();
    if x != 0 {
        return Err(invalid("H must be rooted at vertex 0"));
    }
    let xr = rb.tree.root();

    let (hub, hub_tree) = build_t_i_r(r, 2)?;
    let hub_size = hub.n();
    let grandchild = |c: usize, k: usize| r + 1 + (c - 1) * (r - 1) + k;
    let alpha_t = |v: VertexId| match v {
        0 => 0,
        c if c <= r => c % r + 1,
        g => {
            let c = (g - r - 1) / (r - 1) + 1;
            grandchild(c % r + 1, (g - r - 1) % (r - 1))
        }
    };

    let m_copies = (r - 1) * (r - 1) - r;
    let h_len = h.graph.n() - 1;
    let r_len = rb.graph.n() - 1;
    let h_copies: Vec<Range<VertexId>> = (0..r)
        .map(|i| hub_size + i * h_len..hub_size + (i + 1) * h_len)
        .collect();
    let r_start = hub_size + r * h_len;
    let r_copies: Vec<Range<VertexId>> = (0..m_copies)
        .map(|j| r_start + j * r_len..r_start + (j + 1) * r_len)
        .collect();
    let n_total = r_start + m_copies * r_len;
    let rank = |v: VertexId, root: VertexId| if v < root { v } else { v - 1 };
    let in_h = |i: usize, v: VertexId| h_copies[i].start + rank(v, x);
    let in_r = |j: usize, v: VertexId| r_copies[j].start + rank(v, xr);

    let mut graph = MultiGraph::new(n_total);
    let mut tree_edges: Vec<EdgeId> = Vec::with_capacity(n_total - 1);
    for &(a, b) in hub.edges() {
        tree_edges.push(graph.push_edge(a, b)?);
    }
    debug_assert_eq!(hub_tree.edges().len(), tree_edges.len());
    for i in 0..r {
        for (e, &(a, b)) in h.graph.edges().iter().enumerate() {
            if a != x && b != x {
                let id = graph.push_edge(in_h(i, a), in_h(i, b))?;
                if h.tree.contains(e) {
                    tree_edges.push(id);
                }
            }
        }
    }
    for j in 0..m_copies {
        for (e, &(a, b)) in rb.graph.edges().iter().enumerate() {
            if a != xr && b != xr {
                let id = graph.push_edge(in_r(j, a), in_r(j, b))?;
                if rb.tree.contains(e) {
                    tree_edges.push(id);
                }
            }
        }
    }

    let mut y: Vec<VertexId> = h
        .graph
        .incident(x)
        .iter()
        .map(|&e| h.graph.other_end(e, x))
        .collect();
    y.sort_unstable();
    let z1 = rb
        .graph
        .incident(xr)
        .iter()
        .map(|&e| rb.graph.other_end(e, xr))
        .min()
        .expect("R has edges");
    let mut z = vec![z1];
    for _ in 1..r {
        z.push(rot.rotation.apply(*z.last().unwrap()));
    }
    let n_lists: Vec<Vec<VertexId>> = (0..r)
        .map(|i| {
            let mut list: Vec<VertexId> = y.iter().map(|&v| in_h(i, v)).collect();
            list.extend((0..m_copies).map(|j| in_r(j, z[i])));
            list
        })
        .collect();
    let l_lists: Vec<Vec<VertexId>> = (0..r)
        .map(|i| (0..r - 1).map(|k| grandchild(i + 1, k)).collect())
        .collect();
    let mut new_edges = Vec::with_capacity(r * (r - 1) * (r - 1));
    for i in 0..r {
        for (k, chunk) in n_lists[i].chunks(r - 1).enumerate() {
            for &v in chunk {
                let leaf = l_lists[i][k];
                tree_edges.push(graph.push_edge(v, leaf)?);
                new_edges.push((leaf, v));
            }
        }
    }

    let mut alpha = vec![0; n_total];
    for v in 0..hub_size {
        alpha[v] = alpha_t(v);
    }
    for v in (0..h.graph.n()).filter(|&v| v != x) {
        for i in 0..r {
            alpha[in_h(i, v)] = in_h((i + 1) % r, v);
        }
    }
    for v in (0..rb.graph.n()).filter(|&v| v != xr) {
        for j in 0..m_copies {
            alpha[in_r(j, v)] = in_r(j, rot.rotation.apply(v));
        }
    }

    let tree = RootedSpanningTree::new(&graph, tree_edges, 0)?;
    let base = HistGraph::new(graph, tree, r)?;
    if base.depth != h.depth + 2 {
        return Err(contradiction(format!(
            "assembled tree has depth {}",
            base.depth
        )));
    }
    if !base.graph.is_simple() {
        return Err(contradiction("assembled graph has parallel edges"));
    }
    let rotation_graph = RotationGraph::new(base, VertexPermutation::new(alpha)?)
        .map_err(|_| contradiction("assembled permutation is not a rotational automorphism"))?;

    // keep H^1 and the first hub leaf, which takes over the root's place
    let l1 = l_lists[0][0];
    let keep = &h_copies[0];
    let reduce: Vec<VertexId> = (0..n_total)
        .filter(|&v| v != l1 && !keep.contains(&v))
        .collect();
    let to_h = ReductionScript::new(vec![ReductionStep::new(reduce)]);
    let back = apply_script(&rotation_graph.base.graph, &to_h)?;
    if !back.same_multiset(&h.graph) {
        return Err(contradiction("reducing the assembly does not give back H"));
    }

    let plan = AssemblyPlan {
        r,
        hub_size,
        h_copies,
        r_copies,
        n_lists,
        l_lists,
        new_edges,
    };
    Ok(Assembly {
        rotation_graph,
        plan,
        to_h,
    })
}

/// Full output of [`construct`].
#[derive(Clone, Debug)]
pub struct Construction {
    pub assembly: Assembly,
    pub hist: HistGraph,
    /// Reduces the rotation graph back to the input, labels included.
    pub script: ReductionScript,
    pub trace: Trace,
}

impl Construction {
    pub fn rotation_graph(&self) -> &RotationGraph {
        &self.assembly.rotation_graph
    }
}

/// The whole pipeline. The returned rotation graph is simple and an r-graph;
/// its script reduces it to `g` exactly (same edge multiset and labels).
pub fn construct(g: &MultiGraph, r: usize) -> Result<Construction> {
    let (hist, s1, mut trace) = step1_traced(g, r)?;
    let (base, base_expansions) = base_rotation_traced(r, hist.depth)?;
    trace.leaf_expansions += base_expansions;
    let assembly = assemble(&hist, &base)?;
    let script = assembly.to_h.clone().then(s1);
    let out = &assembly.rotation_graph.base.graph;
    if !is_r_graph(out, r) {
        return Err(contradiction("assembled graph is not an r-graph"));
    }
    if !apply_script(out, &script)?.same_multiset(g) {
        return Err(contradiction(
            "reduction script does not lead back to the input",
        ));
    }
    Ok(Construction {
        assembly,
        hist,
        script,
        trace,
    })
}

/// Contracts every copy of `H` and `R` (minus its root) to one vertex. The
/// hub keeps its ids; copy `k` in block order becomes vertex `hub_size + k`.
pub fn bipartite_contraction(assembly: &Assembly) -> Result<MultiGraph> {
    let plan = &assembly.plan;
    let g = &assembly.rotation_graph.base.graph;
    let blocks: Vec<&Range<VertexId>> = plan.h_copies.iter().chain(&plan.r_copies).collect();
    let mut expected = plan.hub_size;
    for b in &blocks {
        if b.start != expected {
            return Err(invalid("copy blocks do not tile the vertex range"));
        }
        expected = b.end;
    }
    if expected != g.n() {
        return Err(invalid("copy blocks do not cover the graph"));
    }
    let mut class_of: Vec<usize> = (0..plan.hub_size).collect();
    for (k, b) in blocks.iter().enumerate() {
        class_of.extend((*b).clone().map(|_| plan.hub_size + k));
    }
    g.quotient(&class_of, plan.hub_size + blocks.len())
}

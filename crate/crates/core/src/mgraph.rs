//! Loopless undirected multigraphs with addressable edge copies.
//!
//! Vertices are dense indices `0..n`. Every parallel copy of an edge has its
//! own [`EdgeId`], which is its position in the edge list. Operations that
//! delete vertices or edges compact the surviving ids in ascending order and
//! append anything new at the end; they report the old-to-new mapping as a
//! [`Relabel`].

use std::collections::{BTreeMap, VecDeque};

use crate::error::{invalid, Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    incidence: Vec<Vec<EdgeId>>,
}

impl MultiGraph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        MultiGraph {
            n,
            edges: Vec::new(),
            incidence: vec![Vec::new(); n],
        }
    }

    /// Builds a graph whose `EdgeId`s follow iteration order. Endpoints are
    /// stored as `(min, max)`.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut g = MultiGraph::new(n);
        for (u, v) in edges {
            g.push_edge(u, v)?;
        }
        Ok(g)
    }

    pub(crate) fn push_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId> {
        if u >= self.n || v >= self.n {
            return Err(invalid(format!(
                "edge {u}-{v} out of range for n = {}",
                self.n
            )));
        }
        if u == v {
            return Err(invalid(format!("loop at vertex {u}")));
        }
        let id = self.edges.len();
        self.edges.push((u.min(v), u.max(v)));
        self.incidence[u].push(id);
        self.incidence[v].push(id);
        Ok(id)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    /// Incident edge copies of `v`, ascending.
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.incidence[v]
    }

    pub fn other_end(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incidence[v].len()
    }

    /// Number of edge copies joining `u` and `v`.
    pub fn multiplicity(&self, u: VertexId, v: VertexId) -> usize {
        let (a, b) = (u.min(v), u.max(v));
        let (scan, other) = if self.degree(a) <= self.degree(b) {
            (a, b)
        } else {
            (b, a)
        };
        self.incidence[scan]
            .iter()
            .filter(|&&e| self.other_end(e, scan) == other)
            .count()
    }

    /// Edge multiset as `(u, v) -> multiplicity` with `u < v`.
    pub fn multiplicities(&self) -> BTreeMap<(VertexId, VertexId), usize> {
        let mut map = BTreeMap::new();
        for &uv in &self.edges {
            *map.entry(uv).or_insert(0) += 1;
        }
        map
    }

    /// Distinct neighbours of `v` with multiplicities, ascending by neighbour.
    pub fn weighted_neighbors(&self, v: VertexId) -> Vec<(VertexId, usize)> {
        let mut out: Vec<(VertexId, usize)> = Vec::new();
        let mut ends: Vec<VertexId> = self.incidence[v]
            .iter()
            .map(|&e| self.other_end(e, v))
            .collect();
        ends.sort_unstable();
        for u in ends {
            match out.last_mut() {
                Some((w, c)) if *w == u => *c += 1,
                _ => out.push((u, 1)),
            }
        }
        out
    }

    /// The common degree if the graph is regular (and non-empty).
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.incidence.first()?.len();
        self.incidence.iter().all(|inc| inc.len() == d).then_some(d)
    }

    pub fn is_regular(&self, r: usize) -> bool {
        self.incidence.iter().all(|inc| inc.len() == r)
    }

    pub fn is_simple(&self) -> bool {
        let mut sorted = self.edges.clone();
        sorted.sort_unstable();
        sorted.windows(2).all(|w| w[0] != w[1])
    }

    /// Same vertex count and same edge multiset, ignoring edge order.
    pub fn same_multiset(&self, other: &MultiGraph) -> bool {
        let mut a = self.edges.clone();
        let mut b = other.edges.clone();
        a.sort_unstable();
        b.sort_unstable();
        self.n == other.n && a == b
    }

    /// Validates a vertex set and returns its indicator vector.
    pub fn membership(&self, s: &[VertexId]) -> Result<Vec<bool>> {
        let mut inside = vec![false; self.n];
        for &v in s {
            if v >= self.n {
                return Err(invalid(format!(
                    "vertex {v} out of range for n = {}",
                    self.n
                )));
            }
            if inside[v] {
                return Err(invalid(format!("vertex {v} listed twice")));
            }
            inside[v] = true;
        }
        Ok(inside)
    }

    /// `∂(S)`: every edge copy with exactly one end in `S`.
    pub fn boundary(&self, s: &[VertexId]) -> Result<Vec<EdgeId>> {
        let inside = self.membership(s)?;
        Ok(self.boundary_of(&inside))
    }

    pub(crate) fn boundary_of(&self, inside: &[bool]) -> Vec<EdgeId> {
        (0..self.m())
            .filter(|&e| {
                let (u, v) = self.edges[e];
                inside[u] != inside[v]
            })
            .collect()
    }

    /// `N(S)`: outside endpoints of `∂(S)`, ascending and without repetition.
    pub fn neighbors(&self, s: &[VertexId]) -> Result<Vec<VertexId>> {
        let inside = self.membership(s)?;
        let mut out: Vec<VertexId> = self
            .boundary_of(&inside)
            .into_iter()
            .map(|e| {
                let (u, v) = self.edges[e];
                if inside[u] {
                    v
                } else {
                    u
                }
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// Component index of every vertex, numbered in order of smallest member.
    pub fn component_labels(&self) -> (usize, Vec<usize>) {
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        for start in 0..self.n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = count;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &e in &self.incidence[v] {
                    let u = self.other_end(e, v);
                    if label[u] == usize::MAX {
                        label[u] = count;
                        queue.push_back(u);
                    }
                }
            }
            count += 1;
        }
        (count, label)
    }

    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let (count, label) = self.component_labels();
        let mut comps = vec![Vec::new(); count];
        for (v, &c) in label.iter().enumerate() {
            comps[c].push(v);
        }
        comps
    }

    /// The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.component_labels().0 <= 1
    }

    /// Breadth-first spanning tree from `root`, scanning incident edges in
    /// ascending `EdgeId` order.
    pub fn spanning_tree(&self, root: VertexId) -> Result<RootedSpanningTree> {
        if root >= self.n {
            return Err(invalid(format!(
                "root {root} out of range for n = {}",
                self.n
            )));
        }
        let mut seen = vec![false; self.n];
        seen[root] = true;
        let mut tree_edges = Vec::with_capacity(self.n.saturating_sub(1));
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &e in &self.incidence[v] {
                let u = self.other_end(e, v);
                if !seen[u] {
                    seen[u] = true;
                    tree_edges.push(e);
                    queue.push_back(u);
                }
            }
        }
        if tree_edges.len() + 1 != self.n {
            return Err(Error::NoSpanningTree);
        }
        tree_edges.sort_unstable();
        Ok(RootedSpanningTree {
            root,
            edges: tree_edges,
        })
    }

    /// Merges each class of `class_of` into one vertex (`class_of[v] < classes`)
    /// and drops the resulting loops. Edge order follows the source graph.
    pub fn quotient(&self, class_of: &[usize], classes: usize) -> Result<MultiGraph> {
        if class_of.len() != self.n {
            return Err(invalid("class map length differs from vertex count"));
        }
        if let Some(&c) = class_of.iter().find(|&&c| c >= classes) {
            return Err(invalid(format!(
                "class {c} out of range for {classes} classes"
            )));
        }
        let mut q = MultiGraph::new(classes);
        for &(u, v) in &self.edges {
            let (a, b) = (class_of[u], class_of[v]);
            if a != b {
                q.push_edge(a, b)?;
            }
        }
        Ok(q)
    }

    /// Contracts `S` to a single vertex, removing loops. Survivors are
    /// relabelled densely in ascending order; the contracted vertex is last.
    pub fn contract(&self, s: &[VertexId]) -> Result<MultiGraph> {
        if s.is_empty() {
            return Err(invalid("cannot contract an empty set"));
        }
        let inside = self.membership(s)?;
        let kept = self.n - s.len();
        let mut class_of = vec![kept; self.n];
        let mut next = 0;
        for v in 0..self.n {
            if !inside[v] {
                class_of[v] = next;
                next += 1;
            }
        }
        self.quotient(&class_of, kept + 1)
    }

    /// Deletes the vertices of `S` with all incident edges.
    pub fn remove_vertices(&self, s: &[VertexId]) -> Result<(MultiGraph, Relabel)> {
        let inside = self.membership(s)?;
        let mut vmap = vec![None; self.n];
        let mut next = 0;
        for v in 0..self.n {
            if !inside[v] {
                vmap[v] = Some(next);
                next += 1;
            }
        }
        let mut g = MultiGraph::new(next);
        let mut emap = vec![None; self.m()];
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if let (Some(a), Some(b)) = (vmap[u], vmap[v]) {
                emap[e] = Some(g.push_edge(a, b)?);
            }
        }
        Ok((
            g,
            Relabel {
                vertices: vmap,
                edges: emap,
            },
        ))
    }

    /// Bridges, ascending. Parallel copies are never bridges.
    pub fn bridges(&self) -> Vec<EdgeId> {
        let n = self.n;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut timer = 0;
        let mut bridges = Vec::new();
        for start in 0..n {
            if disc[start] != usize::MAX {
                continue;
            }
            disc[start] = timer;
            low[start] = timer;
            timer += 1;
            // (vertex, edge used to enter it, next incidence position)
            let mut stack: Vec<(VertexId, Option<EdgeId>, usize)> = vec![(start, None, 0)];
            while let Some(&mut (v, via, ref mut pos)) = stack.last_mut() {
                if *pos < self.incidence[v].len() {
                    let e = self.incidence[v][*pos];
                    *pos += 1;
                    if Some(e) == via {
                        continue;
                    }
                    let u = self.other_end(e, v);
                    if disc[u] == usize::MAX {
                        disc[u] = timer;
                        low[u] = timer;
                        timer += 1;
                        stack.push((u, Some(e), 0));
                    } else {
                        low[v] = low[v].min(disc[u]);
                    }
                } else {
                    stack.pop();
                    if let (Some(e), Some(&(parent, _, _))) = (via, stack.last()) {
                        low[parent] = low[parent].min(low[v]);
                        if low[v] > disc[parent] {
                            bridges.push(e);
                        }
                    }
                }
            }
        }
        bridges.sort_unstable();
        bridges
    }

    /// A proper 2-colouring by BFS, if one exists.
    pub fn two_coloring(&self) -> Option<Vec<bool>> {
        let mut color: Vec<Option<bool>> = vec![None; self.n];
        for start in 0..self.n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let cv = color[v].unwrap();
                for &e in &self.incidence[v] {
                    let u = self.other_end(e, v);
                    match color[u] {
                        None => {
                            color[u] = Some(!cv);
                            queue.push_back(u);
                        }
                        Some(cu) if cu == cv => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(|c| c.unwrap()).collect())
    }
}

/// Old-to-new id mapping emitted by graph surgery.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Relabel {
    pub vertices: Vec<Option<VertexId>>,
    pub edges: Vec<Option<EdgeId>>,
}

impl Relabel {
    pub fn vertex(&self, v: VertexId) -> Option<VertexId> {
        self.vertices.get(v).copied().flatten()
    }

    pub fn edge(&self, e: EdgeId) -> Option<EdgeId> {
        self.edges.get(e).copied().flatten()
    }

    /// Images of the surviving members of `s`.
    pub fn map_vertices(&self, s: &[VertexId]) -> Vec<VertexId> {
        s.iter().filter_map(|&v| self.vertex(v)).collect()
    }
}

/// A spanning tree of some host multigraph, given by edge ids of that host,
/// plus a root. The host is passed alongside wherever the tree is used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedSpanningTree {
    root: VertexId,
    edges: Vec<EdgeId>,
}

/// Parent pointers and depths of a rooted tree.
#[derive(Clone, Debug)]
pub struct TreeLayout {
    pub parent: Vec<Option<(VertexId, EdgeId)>>,
    pub depth: Vec<usize>,
    pub children: Vec<Vec<VertexId>>,
    /// Vertices in breadth-first order from the root.
    pub order: Vec<VertexId>,
}

impl RootedSpanningTree {
    pub fn new(host: &MultiGraph, mut edges: Vec<EdgeId>, root: VertexId) -> Result<Self> {
        edges.sort_unstable();
        let tree = RootedSpanningTree { root, edges };
        tree.check(host)?;
        Ok(tree)
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// Confirms the tree is connected, acyclic and spanning in `host`.
    pub fn check(&self, host: &MultiGraph) -> Result<()> {
        let n = host.n();
        if self.root >= n {
            return Err(invalid(format!(
                "root {} out of range for n = {n}",
                self.root
            )));
        }
        if self.edges.len() + 1 != n {
            return Err(invalid(format!(
                "a spanning tree on {n} vertices needs {} edges, got {}",
                n - 1,
                self.edges.len()
            )));
        }
        if self.edges.windows(2).any(|w| w[0] == w[1]) {
            return Err(invalid("tree lists an edge twice"));
        }
        let mut dsu: Vec<usize> = (0..n).collect();
        fn find(dsu: &mut [usize], mut x: usize) -> usize {
            while dsu[x] != x {
                dsu[x] = dsu[dsu[x]];
                x = dsu[x];
            }
            x
        }
        for &e in &self.edges {
            if e >= host.m() {
                return Err(invalid(format!(
                    "tree edge {e} out of range for m = {}",
                    host.m()
                )));
            }
            let (u, v) = host.edge(e);
            let (a, b) = (find(&mut dsu, u), find(&mut dsu, v));
            if a == b {
                return Err(invalid(format!(
                    "tree edges contain a cycle through edge {e}"
                )));
            }
            dsu[a] = b;
        }
        Ok(())
    }

    pub fn degrees(&self, host: &MultiGraph) -> Vec<usize> {
        let mut deg = vec![0; host.n()];
        for &e in &self.edges {
            let (u, v) = host.edge(e);
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// Tree-degree-1 vertices, ascending.
    pub fn leaves(&self, host: &MultiGraph) -> Vec<VertexId> {
        self.degrees(host)
            .iter()
            .enumerate()
            .filter(|(_, &d)| d == 1)
            .map(|(v, _)| v)
            .collect()
    }

    pub fn layout(&self, host: &MultiGraph) -> TreeLayout {
        let n = host.n();
        let mut adj: Vec<Vec<(VertexId, EdgeId)>> = vec![Vec::new(); n];
        for &e in &self.edges {
            let (u, v) = host.edge(e);
            adj[u].push((v, e));
            adj[v].push((u, e));
        }
        let mut parent = vec![None; n];
        let mut depth = vec![0; n];
        let mut children = vec![Vec::new(); n];
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        if n > 0 {
            seen[self.root] = true;
            let mut queue = VecDeque::from([self.root]);
            while let Some(v) = queue.pop_front() {
                order.push(v);
                adj[v].sort_unstable();
                for &(u, e) in &adj[v] {
                    if !seen[u] {
                        seen[u] = true;
                        parent[u] = Some((v, e));
                        depth[u] = depth[v] + 1;
                        children[v].push(u);
                        queue.push_back(u);
                    }
                }
            }
        }
        TreeLayout {
            parent,
            depth,
            children,
            order,
        }
    }

    /// The tree as a standalone graph on the host's vertex ids. Edge `k` of
    /// the result is the `k`-th tree edge in ascending host order.
    pub fn as_graph(&self, host: &MultiGraph) -> MultiGraph {
        let mut g = MultiGraph::new(host.n());
        for &e in &self.edges {
            let (u, v) = host.edge(e);
            g.push_edge(u, v).expect("host edges are valid");
        }
        g
    }

    /// Carries the tree through a relabelling of its host.
    pub fn transport(&self, relabel: &Relabel) -> Option<RootedSpanningTree> {
        let root = relabel.vertex(self.root)?;
        let mut edges = Vec::with_capacity(self.edges.len());
        for &e in &self.edges {
            edges.push(relabel.edge(e)?);
        }
        edges.sort_unstable();
        Some(RootedSpanningTree { root, edges })
    }

    pub(crate) fn from_parts_unchecked(root: VertexId, mut edges: Vec<EdgeId>) -> Self {
        edges.sort_unstable();
        RootedSpanningTree { root, edges }
    }
}

//! Backtracking search for a rotational automorphism of a `T_i^r`-graph.
//!
//! A tree automorphism of a `T_i^r` is determined by where it sends the
//! leaves, so the search only branches on leaf images. Each leaf assignment
//! is pushed up through the parent pointers, and every assignment is checked
//! against the non-tree multiplicities and the orbit-length bound. The next
//! leaf is the one with the fewest candidates: a leaf with an assigned
//! non-tree neighbour can only go to a non-tree neighbour of that image.

use super::{is_automorphism, is_rotational, recognize_tree, VertexPermutation};
use crate::error::{contradiction, invalid, Result};
use crate::mgraph::{MultiGraph, RootedSpanningTree, VertexId};

const NONE: usize = usize::MAX;

/// Searches for an automorphism of `g` that is rotational on `tree` with
/// respect to its root. `None` is an exhaustive answer.
pub fn find_rotational_automorphism(
    g: &MultiGraph,
    tree: &RootedSpanningTree,
) -> Result<Option<VertexPermutation>> {
    let shape = recognize_tree(g, tree)?.ok_or_else(|| invalid("spanning tree is not a T_i^r"))?;
    if shape.root != tree.root() {
        return Err(invalid(format!(
            "tree is rooted at {} but its T_i^r root is {}",
            tree.root(),
            shape.root
        )));
    }
    let Some(r) = shape.r.filter(|_| g.n() > 2) else {
        // one or two vertices: the identity fixes the root and every other
        // orbit has the root's degree, which is at most 1
        let id = VertexPermutation::identity(g.n());
        return Ok(is_automorphism(g, &id)?.then_some(id));
    };
    let mut search = Search::new(g, tree, r);
    if !search.solve() {
        return Ok(None);
    }
    let alpha = VertexPermutation::new(search.alpha.clone())?;
    if !is_automorphism(g, &alpha)? || !is_rotational(g, tree, &alpha)? {
        return Err(contradiction(
            "rotation search produced an invalid permutation",
        ));
    }
    Ok(Some(alpha))
}

struct Search {
    r: usize,
    root: VertexId,
    parent: Vec<usize>,
    leaves: Vec<VertexId>,
    /// leaves below each vertex
    below: Vec<Vec<VertexId>>,
    /// non-tree neighbours with multiplicity, sorted by neighbour
    nt: Vec<Vec<(VertexId, usize)>>,
    signature: Vec<(usize, usize, usize)>,
    alpha: Vec<usize>,
    inv: Vec<usize>,
    trail: Vec<VertexId>,
}

impl Search {
    fn new(g: &MultiGraph, tree: &RootedSpanningTree, r: usize) -> Self {
        let n = g.n();
        let layout = tree.layout(g);
        let parent: Vec<usize> = layout
            .parent
            .iter()
            .map(|p| p.map_or(NONE, |(v, _)| v))
            .collect();
        let leaves = tree.leaves(g);
        let mut below = vec![Vec::new(); n];
        for &l in &leaves {
            let mut x = l;
            while x != NONE {
                below[x].push(l);
                x = parent[x];
            }
        }
        let mut nt = vec![Vec::new(); n];
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            if !tree.contains(e) {
                nt[u].push(v);
                nt[v].push(u);
            }
        }
        let nt: Vec<Vec<(VertexId, usize)>> = nt
            .into_iter()
            .map(|mut ends| {
                ends.sort_unstable();
                let mut out: Vec<(VertexId, usize)> = Vec::new();
                for u in ends {
                    match out.last_mut() {
                        Some((w, c)) if *w == u => *c += 1,
                        _ => out.push((u, 1)),
                    }
                }
                out
            })
            .collect();
        let signature = (0..n)
            .map(|v| {
                (
                    layout.depth[v],
                    g.degree(v),
                    nt[v].iter().map(|&(_, c)| c).sum(),
                )
            })
            .collect();
        let mut alpha = vec![NONE; n];
        let mut inv = vec![NONE; n];
        let root = tree.root();
        alpha[root] = root;
        inv[root] = root;
        Search {
            r,
            root,
            parent,
            leaves,
            below,
            nt,
            signature,
            alpha,
            inv,
            trail: Vec::new(),
        }
    }

    fn nt_mult(&self, v: VertexId, u: VertexId) -> usize {
        self.nt[v]
            .binary_search_by_key(&u, |&(w, _)| w)
            .map_or(0, |i| self.nt[v][i].1)
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().unwrap();
            self.inv[self.alpha[v]] = NONE;
            self.alpha[v] = NONE;
        }
    }

    /// False when `v` lies on a closed cycle of the wrong length, or on an
    /// open chain already too long to close into an orbit of length `r`.
    fn orbit_ok(&self, v: VertexId) -> bool {
        let need = if v == self.root { 1 } else { self.r };
        let mut x = v;
        let mut forward = 0;
        while self.alpha[x] != NONE {
            x = self.alpha[x];
            forward += 1;
            if x == v {
                return forward == need;
            }
            if forward >= need {
                return false;
            }
        }
        let mut back = 0;
        let mut y = v;
        while self.inv[y] != NONE {
            y = self.inv[y];
            back += 1;
            if forward + back >= need {
                return false;
            }
        }
        true
    }

    /// Sets `alpha(v) = w` and propagates to ancestors.
    fn assign(&mut self, mut v: VertexId, mut w: VertexId) -> bool {
        loop {
            if self.alpha[v] != NONE {
                return self.alpha[v] == w;
            }
            if self.inv[w] != NONE || self.signature[v] != self.signature[w] {
                return false;
            }
            for &(u, c) in &self.nt[v] {
                let image = self.alpha[u];
                if image != NONE && self.nt_mult(w, image) != c {
                    return false;
                }
            }
            for &(x, c) in &self.nt[w] {
                let pre = self.inv[x];
                if pre != NONE && self.nt_mult(v, pre) != c {
                    return false;
                }
            }
            self.alpha[v] = w;
            self.inv[w] = v;
            self.trail.push(v);
            if !self.orbit_ok(v) {
                return false;
            }
            match (self.parent[v], self.parent[w]) {
                (NONE, NONE) => return true,
                (p, q) if p != NONE && q != NONE => {
                    v = p;
                    w = q;
                }
                _ => return false,
            }
        }
    }

    /// Start of the backward chain ending at `l` and its number of links.
    fn chain_start(&self, l: VertexId) -> (VertexId, usize) {
        let mut y = l;
        let mut back = 0;
        while self.inv[y] != NONE && back < self.r {
            y = self.inv[y];
            back += 1;
        }
        (y, back)
    }

    fn candidates(&self, l: VertexId) -> Vec<VertexId> {
        let (start, back) = self.chain_start(l);
        let sig = self.signature[l];
        let free = |w: &VertexId| self.inv[*w] == NONE && self.signature[*w] == sig;
        if back + 1 == self.r {
            return [start].into_iter().filter(free).collect();
        }
        if let Some(&(u, c)) = self.nt[l].iter().find(|&&(u, _)| self.alpha[u] != NONE) {
            let image = self.alpha[u];
            return self.nt[image]
                .iter()
                .filter(|&&(w, k)| k == c && self.below[w].len() == 1 && free(&w))
                .map(|&(w, _)| w)
                .collect();
        }
        let mut a = self.parent[l];
        while self.alpha[a] == NONE {
            a = self.parent[a];
        }
        self.below[self.alpha[a]]
            .iter()
            .copied()
            .filter(free)
            .collect()
    }

    fn estimate(&self, l: VertexId) -> usize {
        if self.chain_start(l).1 + 1 == self.r {
            return 1;
        }
        if let Some(&(u, _)) = self.nt[l].iter().find(|&&(u, _)| self.alpha[u] != NONE) {
            return self.nt[self.alpha[u]].len();
        }
        let mut a = self.parent[l];
        while self.alpha[a] == NONE {
            a = self.parent[a];
        }
        self.below[self.alpha[a]].len()
    }

    fn pick(&self) -> Option<VertexId> {
        self.leaves
            .iter()
            .copied()
            .filter(|&l| self.alpha[l] == NONE)
            .min_by_key(|&l| (self.estimate(l), l))
    }

    fn solve(&mut self) -> bool {
        let Some(l) = self.pick() else {
            return true;
        };
        for w in self.candidates(l) {
            let mark = self.trail.len();
            if self.assign(l, w) && self.solve() {
                return true;
            }
            self.undo(mark);
        }
        false
    }
}

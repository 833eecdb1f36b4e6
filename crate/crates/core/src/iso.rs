//! Isomorphism of small multigraphs: colour refinement followed by
//! backtracking over vertices of matching colour.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::mgraph::MultiGraph;
use crate::shape::VertexPermutation;

/// Largest order accepted by [`are_isomorphic`].
pub const ISO_VERTEX_LIMIT: usize = 64;

/// A map `v -> map.apply(v)` from the vertices of `a` to those of `b` that
/// preserves every edge multiplicity, or `None`.
pub fn are_isomorphic(a: &MultiGraph, b: &MultiGraph) -> Result<Option<VertexPermutation>> {
    let n = a.n();
    if n > ISO_VERTEX_LIMIT || b.n() > ISO_VERTEX_LIMIT {
        return Err(Error::ResourceLimit(format!(
            "isomorphism search is limited to {ISO_VERTEX_LIMIT} vertices"
        )));
    }
    if n != b.n() || a.m() != b.m() {
        return Ok(None);
    }
    let (ca, cb) = refine(a, b);
    let histogram = |c: &[usize]| {
        let mut h = c.to_vec();
        h.sort_unstable();
        h
    };
    if histogram(&ca) != histogram(&cb) {
        return Ok(None);
    }
    let mut class_size = BTreeMap::new();
    for &c in &ca {
        *class_size.entry(c).or_insert(0usize) += 1;
    }
    // small classes first, then by id
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (class_size[&ca[v]], ca[v], v));

    let mut search = Search {
        ma: matrix(a),
        mb: matrix(b),
        ca,
        cb,
        order,
        map: vec![usize::MAX; n],
        used: vec![false; n],
    };
    if !search.solve(0) {
        return Ok(None);
    }
    Ok(Some(VertexPermutation::new(search.map)?))
}

fn matrix(g: &MultiGraph) -> Vec<Vec<usize>> {
    let mut m = vec![vec![0; g.n()]; g.n()];
    for &(u, v) in g.edges() {
        m[u][v] += 1;
        m[v][u] += 1;
    }
    m
}

/// Stable colouring of the disjoint union, returned per side. A colour is
/// refined by the multiset of (neighbour colour, multiplicity) pairs.
fn refine(a: &MultiGraph, b: &MultiGraph) -> (Vec<usize>, Vec<usize>) {
    let graphs = [a, b];
    let mut colors: Vec<Vec<usize>> = graphs
        .iter()
        .map(|g| (0..g.n()).map(|v| g.degree(v)).collect())
        .collect();
    let mut classes = usize::MAX;
    loop {
        let mut palette: BTreeMap<(usize, Vec<(usize, usize)>), usize> = BTreeMap::new();
        let signatures: Vec<Vec<(usize, Vec<(usize, usize)>)>> = graphs
            .iter()
            .zip(&colors)
            .map(|(g, c)| {
                (0..g.n())
                    .map(|v| {
                        let mut s: Vec<(usize, usize)> = g
                            .weighted_neighbors(v)
                            .into_iter()
                            .map(|(u, k)| (c[u], k))
                            .collect();
                        s.sort_unstable();
                        (c[v], s)
                    })
                    .collect()
            })
            .collect();
        for sig in signatures.iter().flatten() {
            let next = palette.len();
            palette.entry(sig.clone()).or_insert(next);
        }
        // ids follow signature order so both sides agree
        let ranks: BTreeMap<_, usize> = palette
            .keys()
            .cloned()
            .enumerate()
            .map(|(i, k)| (k, i))
            .collect();
        colors = signatures
            .iter()
            .map(|side| side.iter().map(|s| ranks[s]).collect())
            .collect();
        if ranks.len() == classes {
            break;
        }
        classes = ranks.len();
    }
    let cb = colors.pop().unwrap();
    let ca = colors.pop().unwrap();
    (ca, cb)
}

struct Search {
    ma: Vec<Vec<usize>>,
    mb: Vec<Vec<usize>>,
    ca: Vec<usize>,
    cb: Vec<usize>,
    order: Vec<usize>,
    map: Vec<usize>,
    used: Vec<bool>,
}

impl Search {
    fn solve(&mut self, i: usize) -> bool {
        let Some(&v) = self.order.get(i) else {
            return true;
        };
        for w in 0..self.map.len() {
            if self.used[w] || self.cb[w] != self.ca[v] {
                continue;
            }
            let consistent = self.order[..i]
                .iter()
                .all(|&u| self.ma[v][u] == self.mb[w][self.map[u]]);
            if !consistent {
                continue;
            }
            self.map[v] = w;
            self.used[w] = true;
            if self.solve(i + 1) {
                return true;
            }
            self.used[w] = false;
            self.map[v] = usize::MAX;
        }
        false
    }
}

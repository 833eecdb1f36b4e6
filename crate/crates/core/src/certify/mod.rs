//! The r-graph property and the odd-cut machinery behind it.
//!
//! An r-regular graph is an r-graph when every vertex set of odd size has at
//! least `r` boundary edges. The minimum odd cut is found either by scanning
//! all odd subsets or, for even order, among the fundamental cuts of a
//! Gomory–Hu tree (Padberg–Rao).

mod gomory_hu;

use crate::error::{invalid, Error, Result};
use crate::mgraph::{MultiGraph, VertexId};

/// Largest order scanned subset by subset.
pub const EXHAUSTIVE_LIMIT: usize = 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OddCutMethod {
    Exhaustive,
    GomoryHu,
    /// Gomory–Hu when the order is even and above [`EXHAUSTIVE_LIMIT`].
    Auto,
}

/// Minimum `|∂(S)|` over odd `S`, with one minimiser.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddCutCertificate {
    pub value: usize,
    pub witness: Vec<VertexId>,
}

pub fn min_odd_cut(g: &MultiGraph, method: OddCutMethod) -> Result<OddCutCertificate> {
    if g.n() == 0 {
        return Err(invalid("odd cuts need at least one vertex"));
    }
    if !g.is_connected() {
        return Err(invalid(
            "odd cut certificates are defined for connected graphs only",
        ));
    }
    // With n odd, S = V is odd with an empty boundary, and in a connected
    // graph it is the only set with an empty boundary.
    if g.n() % 2 == 1 {
        return Ok(OddCutCertificate {
            value: 0,
            witness: (0..g.n()).collect(),
        });
    }
    match method {
        OddCutMethod::Exhaustive => exhaustive(g),
        OddCutMethod::GomoryHu => Ok(padberg_rao(g)),
        OddCutMethod::Auto if g.n() > EXHAUSTIVE_LIMIT => Ok(padberg_rao(g)),
        OddCutMethod::Auto => exhaustive(g),
    }
}

/// Gray-code scan over all subsets, keeping the cut size incrementally.
/// Among minimisers the lexicographically smallest sorted vertex list wins.
fn exhaustive(g: &MultiGraph) -> Result<OddCutCertificate> {
    let n = g.n();
    if n > EXHAUSTIVE_LIMIT {
        return Err(Error::ResourceLimit(format!(
            "exhaustive odd-cut scan is limited to {EXHAUSTIVE_LIMIT} vertices, got {n}"
        )));
    }
    let nbrs: Vec<Vec<(usize, i64)>> = (0..n)
        .map(|v| {
            g.weighted_neighbors(v)
                .into_iter()
                .map(|(u, c)| (u, c as i64))
                .collect()
        })
        .collect();
    let deg: Vec<i64> = (0..n).map(|v| g.degree(v) as i64).collect();

    let mut set: u32 = 0;
    let mut cut: i64 = 0;
    let mut best: Option<(i64, u32)> = None;
    for step in 1u64..(1u64 << n) {
        let v = step.trailing_zeros() as usize;
        let into_set: i64 = nbrs[v]
            .iter()
            .filter(|&&(u, _)| set >> u & 1 == 1)
            .map(|&(_, c)| c)
            .sum();
        if set >> v & 1 == 1 {
            cut += 2 * into_set - deg[v];
        } else {
            cut += deg[v] - 2 * into_set;
        }
        set ^= 1 << v;
        if set.count_ones() % 2 == 0 {
            continue;
        }
        best = match best {
            None => Some((cut, set)),
            Some((c, s)) if cut < c || (cut == c && lex_less(set, s)) => Some((cut, set)),
            keep => keep,
        };
    }
    let (value, mask) = best.expect("n >= 1 has an odd subset");
    Ok(OddCutCertificate {
        value: value as usize,
        witness: (0..n).filter(|&v| mask >> v & 1 == 1).collect(),
    })
}

/// Lexicographic order on the sorted member lists of two bitsets.
fn lex_less(a: u32, b: u32) -> bool {
    let diff = a ^ b;
    if diff == 0 {
        return false;
    }
    let x = diff.trailing_zeros();
    if a >> x & 1 == 1 {
        // a has x, b's next element is larger or b ends here
        (b >> x) != 0
    } else {
        (a >> x) == 0
    }
}

/// Smallest odd fundamental cut of the Gomory–Hu tree; `n` must be even.
fn padberg_rao(g: &MultiGraph) -> OddCutCertificate {
    let tree = gomory_hu::gomory_hu(g);
    let sides = tree.fundamental_sides();
    let mut best: Option<OddCutCertificate> = None;
    for v in 1..g.n() {
        let side = &sides[v];
        if side.len() % 2 == 0 {
            continue;
        }
        let value = tree.weight[v] as usize;
        debug_assert_eq!(g.boundary(side).map(|b| b.len()), Ok(value));
        if best.as_ref().map_or(true, |b| value < b.value) {
            best = Some(OddCutCertificate {
                value,
                witness: side.clone(),
            });
        }
    }
    // n >= 2 even and connected: some leaf of the tree is an odd side
    best.expect("a cut tree on an even number of vertices has an odd fundamental cut")
}

/// Paper definition, applied per component: every odd set has at least `r`
/// boundary edges. A component of odd order fails through `S` = that
/// component; even components are checked by their own minimum odd cut.
pub fn is_r_graph(g: &MultiGraph, r: usize) -> bool {
    if !g.is_regular(r) {
        return false;
    }
    let components = g.components();
    if components.len() == 1 {
        return min_odd_cut(g, OddCutMethod::Auto).map_or(false, |c| c.value >= r);
    }
    components.iter().all(|comp| {
        if comp.len() % 2 == 1 {
            return r == 0;
        }
        let outside: Vec<VertexId> = (0..g.n())
            .filter(|v| comp.binary_search(v).is_err())
            .collect();
        let (sub, _) = g.remove_vertices(&outside).expect("valid vertex set");
        min_odd_cut(&sub, OddCutMethod::Auto).map_or(false, |c| c.value >= r)
    })
}

/// Splits an r-regular graph along an odd set `S` with `|∂(S)| = r` into
/// `(G / S, G / S̄)`.
pub fn rizzi_split(g: &MultiGraph, s: &[VertexId]) -> Result<(MultiGraph, MultiGraph)> {
    let r = g
        .regular_degree()
        .ok_or_else(|| invalid("rizzi split needs a non-empty regular graph"))?;
    let inside = g.membership(s)?;
    if s.len() % 2 == 0 {
        return Err(invalid(format!("|S| = {} is even", s.len())));
    }
    let cut = g.boundary_of(&inside).len();
    if cut != r {
        return Err(invalid(format!(
            "|∂(S)| = {cut} but the graph is {r}-regular"
        )));
    }
    let complement: Vec<VertexId> = (0..g.n()).filter(|&v| !inside[v]).collect();
    Ok((g.contract(s)?, g.contract(&complement)?))
}

/// Every vertex has even degree, i.e. every component is eulerian.
pub fn is_even_graph(g: &MultiGraph) -> bool {
    (0..g.n()).all(|v| g.degree(v) % 2 == 0)
}

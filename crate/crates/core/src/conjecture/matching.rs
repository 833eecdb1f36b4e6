use crate::error::{contradiction, invalid, Error, Result};
use crate::mgraph::{EdgeId, MultiGraph, VertexId};
use crate::surgery::two_cut_reduction;

/// Enumeration stops with a resource-limit error beyond this many matchings.
pub const MATCHING_LIMIT: usize = 1_000_000;

/// Largest order accepted by [`find_pm_cover`].
pub const COVER_VERTEX_LIMIT: usize = 30;

/// A set of edge copies covering every vertex exactly once, ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PerfectMatching {
    pub edges: Vec<EdgeId>,
}

impl PerfectMatching {
    pub fn new(mut edges: Vec<EdgeId>) -> Self {
        edges.sort_unstable();
        PerfectMatching { edges }
    }

    pub fn is_perfect_in(&self, g: &MultiGraph) -> bool {
        let mut covered = vec![false; g.n()];
        for &e in &self.edges {
            if e >= g.m() {
                return false;
            }
            let (u, v) = g.edge(e);
            if covered[u] || covered[v] {
                return false;
            }
            covered[u] = true;
            covered[v] = true;
        }
        covered.iter().all(|&c| c)
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.binary_search(&e).is_ok()
    }
}

/// All perfect matchings, found by always matching the lowest uncovered
/// vertex through its edges in ascending id order. With `limit`, stops after
/// that many; without, fails once [`MATCHING_LIMIT`] is exceeded.
pub fn enumerate_perfect_matchings(
    g: &MultiGraph,
    limit: Option<usize>,
) -> Result<Vec<PerfectMatching>> {
    let mut out = Vec::new();
    if g.n() % 2 == 1 || limit == Some(0) {
        return Ok(out);
    }
    let mut covered = vec![false; g.n()];
    let mut chosen = Vec::with_capacity(g.n() / 2);
    extend(g, &mut covered, &mut chosen, limit, &mut out)?;
    Ok(out)
}

/// Returns `Ok(true)` once the requested number of matchings is reached.
fn extend(
    g: &MultiGraph,
    covered: &mut [bool],
    chosen: &mut Vec<EdgeId>,
    limit: Option<usize>,
    out: &mut Vec<PerfectMatching>,
) -> Result<bool> {
    let Some(v) = covered.iter().position(|&c| !c) else {
        if out.len() == MATCHING_LIMIT {
            return Err(Error::ResourceLimit(format!(
                "more than {MATCHING_LIMIT} perfect matchings"
            )));
        }
        out.push(PerfectMatching::new(chosen.clone()));
        return Ok(limit == Some(out.len()));
    };
    let mut incident = g.incident(v).to_vec();
    incident.sort_unstable();
    covered[v] = true;
    for e in incident {
        let u = g.other_end(e, v);
        if covered[u] {
            continue;
        }
        covered[u] = true;
        chosen.push(e);
        let done = extend(g, covered, chosen, limit, out)?;
        chosen.pop();
        covered[u] = false;
        if done {
            covered[v] = false;
            return Ok(true);
        }
    }
    covered[v] = false;
    Ok(false)
}

/// How often each edge must be covered by the collection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverRule {
    ExactlyTwo,
    AtLeastOne,
    /// Any `k >= 1` is accepted; the interesting range for `r`-graphs and
    /// `r` matchings is `2 <= k <= r - 1`.
    AtMost(usize),
}

/// Looks for `count` perfect matchings (repetition allowed) meeting `rule`
/// on every edge. `None` means none exist.
pub fn find_pm_cover(
    g: &MultiGraph,
    count: usize,
    rule: CoverRule,
) -> Result<Option<Vec<PerfectMatching>>> {
    if count == 0 {
        return Err(invalid("a cover needs at least one matching"));
    }
    if rule == CoverRule::AtMost(0) {
        return Err(invalid("at-most-k covers need k >= 1"));
    }
    if g.n() > COVER_VERTEX_LIMIT {
        return Err(Error::ResourceLimit(format!(
            "cover search is limited to {COVER_VERTEX_LIMIT} vertices, got {}",
            g.n()
        )));
    }
    let pms = enumerate_perfect_matchings(g, None)?;
    let mut search = CoverSearch {
        m: g.m(),
        half: g.n() / 2,
        pms: &pms,
        containing: (0..g.m())
            .map(|e| (0..pms.len()).filter(|&i| pms[i].contains(e)).collect())
            .collect(),
        cnt: vec![0; g.m()],
        chosen: Vec::with_capacity(count),
        count,
    };
    let found = match rule {
        CoverRule::ExactlyTwo => search.exactly_two(),
        CoverRule::AtLeastOne => search.at_least_one(),
        CoverRule::AtMost(k) => search.at_most(k, 0),
    };
    Ok(found.then(|| search.chosen.iter().map(|&i| pms[i].clone()).collect()))
}

struct CoverSearch<'a> {
    m: usize,
    half: usize,
    pms: &'a [PerfectMatching],
    containing: Vec<Vec<usize>>,
    cnt: Vec<usize>,
    chosen: Vec<usize>,
    count: usize,
}

impl CoverSearch<'_> {
    fn push(&mut self, i: usize) {
        for &e in &self.pms[i].edges {
            self.cnt[e] += 1;
        }
        self.chosen.push(i);
    }

    fn pop(&mut self) {
        let i = self.chosen.pop().unwrap();
        for &e in &self.pms[i].edges {
            self.cnt[e] -= 1;
        }
    }

    /// Branches on the under-covered edge with the fewest usable matchings.
    fn exactly_two(&mut self) -> bool {
        if self.chosen.is_empty() && self.count * self.half != 2 * self.m {
            return false;
        }
        let slots = self.count - self.chosen.len();
        let mut best: Option<Vec<usize>> = None;
        for e in 0..self.m {
            if self.cnt[e] >= 2 {
                continue;
            }
            let usable: Vec<usize> = self.containing[e]
                .iter()
                .copied()
                .filter(|&i| self.pms[i].edges.iter().all(|&f| self.cnt[f] < 2))
                .collect();
            if usable.is_empty() {
                return false;
            }
            if best.as_ref().map_or(true, |b| usable.len() < b.len()) {
                best = Some(usable);
            }
        }
        let Some(options) = best else {
            return slots == 0;
        };
        if slots == 0 {
            return false;
        }
        for i in options {
            self.push(i);
            if self.exactly_two() {
                return true;
            }
            self.pop();
        }
        false
    }

    fn at_least_one(&mut self) -> bool {
        let slots = self.count - self.chosen.len();
        let uncovered: Vec<EdgeId> = (0..self.m).filter(|&e| self.cnt[e] == 0).collect();
        if uncovered.is_empty() {
            if self.pms.is_empty() {
                return false;
            }
            // pad with repeats of any matching
            while self.chosen.len() < self.count {
                self.push(0);
            }
            return true;
        }
        if slots * self.half < uncovered.len() {
            return false;
        }
        let e = *uncovered
            .iter()
            .min_by_key(|&&e| self.containing[e].len())
            .unwrap();
        for i in self.containing[e].clone() {
            self.push(i);
            if self.at_least_one() {
                return true;
            }
            self.pop();
        }
        false
    }

    /// Non-decreasing matching indices from `from`, no edge above `k`.
    fn at_most(&mut self, k: usize, from: usize) -> bool {
        if self.chosen.len() == self.count {
            return true;
        }
        for i in from..self.pms.len() {
            if self.pms[i].edges.iter().all(|&e| self.cnt[e] < k) {
                self.push(i);
                if self.at_most(k, i) {
                    return true;
                }
                self.pop();
            }
        }
        false
    }
}

/// The perfect matching of the 2-cut reduction of `s` that `pm` induces:
/// `pm` minus everything touching `s`, plus the new edge exactly when `pm`
/// used both cut edges.
pub fn transfer_pm(
    big: &MultiGraph,
    s: &[VertexId],
    pm: &PerfectMatching,
) -> Result<PerfectMatching> {
    if !pm.is_perfect_in(big) {
        return Err(invalid("not a perfect matching of the given graph"));
    }
    let (small, relabel) = two_cut_reduction(big, s)?;
    let cut = big.boundary(s)?;
    let used = cut.iter().filter(|&&e| pm.contains(e)).count();
    if used == 1 {
        return Err(contradiction(
            "a perfect matching uses exactly one edge of a 2-cut",
        ));
    }
    let mut edges: Vec<EdgeId> = pm.edges.iter().filter_map(|&e| relabel.edge(e)).collect();
    if used == 2 {
        edges.push(small.m() - 1);
    }
    let out = PerfectMatching::new(edges);
    if !out.is_perfect_in(&small) {
        return Err(contradiction("transferred matching is not perfect"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mgraph::fixtures::*;

    #[test]
    fn counts() {
        assert_eq!(
            enumerate_perfect_matchings(&complete(4), None)
                .unwrap()
                .len(),
            3
        );
        assert_eq!(
            enumerate_perfect_matchings(&petersen(), None)
                .unwrap()
                .len(),
            6
        );
        assert!(enumerate_perfect_matchings(&complete(3), None)
            .unwrap()
            .is_empty());
        assert_eq!(
            enumerate_perfect_matchings(&bundle(5), None).unwrap().len(),
            5
        );
        assert_eq!(
            enumerate_perfect_matchings(&petersen(), Some(2))
                .unwrap()
                .len(),
            2
        );
    }

    #[test]
    fn k4_fulkerson_by_doubling() {
        let cover = find_pm_cover(&complete(4), 6, CoverRule::ExactlyTwo)
            .unwrap()
            .unwrap();
        assert_eq!(cover.len(), 6);
        let pms = enumerate_perfect_matchings(&complete(4), None).unwrap();
        for pm in &pms {
            assert_eq!(cover.iter().filter(|c| *c == pm).count(), 2);
        }
    }

    #[test]
    fn petersen_covers() {
        let g = petersen();
        let f = find_pm_cover(&g, 6, CoverRule::ExactlyTwo)
            .unwrap()
            .unwrap();
        let mut sorted = f.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 6);
        assert!(find_pm_cover(&g, 5, CoverRule::AtLeastOne)
            .unwrap()
            .is_some());
        // Petersen has no 3-edge-colouring, so 3 matchings cannot cover it once each
        assert!(find_pm_cover(&g, 3, CoverRule::AtLeastOne)
            .unwrap()
            .is_none());
        assert!(find_pm_cover(&g, 3, CoverRule::AtMost(2))
            .unwrap()
            .is_some());
        assert!(find_pm_cover(&g, 3, CoverRule::AtMost(1))
            .unwrap()
            .is_none());
    }

    #[test]
    fn cover_arguments() {
        assert!(find_pm_cover(&complete(4), 0, CoverRule::ExactlyTwo).is_err());
        let big = MultiGraph::new(32);
        assert!(matches!(
            find_pm_cover(&big, 2, CoverRule::AtLeastOne),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn transfer_both_parities() {
        use crate::surgery::edge_expansion;
        let g = complete(4);
        let x = edge_expansion(&g, &g.spanning_tree(0).unwrap(), 3).unwrap();
        let pms = enumerate_perfect_matchings(&x.graph, None).unwrap();
        let cut = x.graph.boundary(&x.gadget).unwrap();
        let both = pms
            .iter()
            .find(|pm| cut.iter().all(|&e| pm.contains(e)))
            .unwrap();
        let none = pms
            .iter()
            .find(|pm| cut.iter().all(|&e| !pm.contains(e)))
            .unwrap();
        let (small, _) = two_cut_reduction(&x.graph, &x.gadget).unwrap();
        let new_edge = small.m() - 1;
        assert!(transfer_pm(&x.graph, &x.gadget, both)
            .unwrap()
            .contains(new_edge));
        assert!(!transfer_pm(&x.graph, &x.gadget, none)
            .unwrap()
            .contains(new_edge));
    }
}

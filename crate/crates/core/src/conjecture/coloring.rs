use crate::error::{Error, Result};
use crate::mgraph::MultiGraph;

/// A proper edge colouring with at most `k` colours (one colour per edge
/// copy, `0..k`), or `None` if there is none.
///
/// Picks the uncoloured edge with the fewest free colours each time and
/// never opens more than one fresh colour per branch, since unused colours
/// are interchangeable.
pub fn chromatic_index_at_most(g: &MultiGraph, k: usize) -> Result<Option<Vec<usize>>> {
    let m = g.m();
    if m == 0 {
        return Ok(Some(Vec::new()));
    }
    let k = k.min(m);
    if k > 128 {
        return Err(Error::ResourceLimit(format!(
            "edge colouring limited to 128 colours, got {k}"
        )));
    }
    let max_deg = (0..g.n()).map(|v| g.degree(v)).max().unwrap_or(0);
    if max_deg > k {
        return Ok(None);
    }
    let mut search = Coloring {
        g,
        k,
        used: vec![0u128; g.n()],
        color: vec![usize::MAX; m],
        opened: 0,
    };
    Ok(search.solve(m).then_some(search.color))
}

struct Coloring<'a> {
    g: &'a MultiGraph,
    k: usize,
    used: Vec<u128>,
    color: Vec<usize>,
    opened: usize,
}

impl Coloring<'_> {
    fn free(&self, e: usize) -> u128 {
        let (u, v) = self.g.edge(e);
        let limit = (self.opened + 1).min(self.k);
        let all = if limit == 128 {
            u128::MAX
        } else {
            (1u128 << limit) - 1
        };
        all & !(self.used[u] | self.used[v])
    }

    fn solve(&mut self, left: usize) -> bool {
        if left == 0 {
            return true;
        }
        let mut best: Option<(u32, usize)> = None;
        for e in 0..self.g.m() {
            if self.color[e] != usize::MAX {
                continue;
            }
            let options = self.free(e).count_ones();
            if options == 0 {
                return false;
            }
            if best.map_or(true, |(o, _)| options < o) {
                best = Some((options, e));
            }
        }
        let (_, e) = best.expect("an uncoloured edge remains");
        let (u, v) = self.g.edge(e);
        let mut options = self.free(e);
        while options != 0 {
            let c = options.trailing_zeros() as usize;
            options &= options - 1;
            let bit = 1u128 << c;
            let before = self.opened;
            self.opened = self.opened.max(c + 1);
            self.used[u] |= bit;
            self.used[v] |= bit;
            self.color[e] = c;
            if self.solve(left - 1) {
                return true;
            }
            self.color[e] = usize::MAX;
            self.used[u] &= !bit;
            self.used[v] &= !bit;
            self.opened = before;
        }
        false
    }
}

/// Cubic, bridgeless and not 3-edge-colourable.
pub fn is_snark(g: &MultiGraph) -> bool {
    g.is_regular(3)
        && g.bridges().is_empty()
        && chromatic_index_at_most(g, 3).map_or(false, |c| c.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mgraph::fixtures::*;

    fn proper(g: &MultiGraph, colors: &[usize]) -> bool {
        (0..g.n()).all(|v| {
            let mut seen: Vec<usize> = g.incident(v).iter().map(|&e| colors[e]).collect();
            seen.sort_unstable();
            seen.windows(2).all(|w| w[0] != w[1])
        })
    }

    #[test]
    fn small_cases() {
        let c = chromatic_index_at_most(&complete(4), 3).unwrap().unwrap();
        assert!(proper(&complete(4), &c));
        assert!(chromatic_index_at_most(&petersen(), 3).unwrap().is_none());
        let c = chromatic_index_at_most(&petersen(), 4).unwrap().unwrap();
        assert!(proper(&petersen(), &c) && c.iter().all(|&x| x < 4));
        let c = chromatic_index_at_most(&bundle(5), 5).unwrap().unwrap();
        assert!(proper(&bundle(5), &c));
        assert!(chromatic_index_at_most(&bundle(5), 4).unwrap().is_none());
        // odd cycle needs three colours
        assert!(chromatic_index_at_most(&cycle(5), 2).unwrap().is_none());
        assert!(chromatic_index_at_most(&cycle(5), 3).unwrap().is_some());
    }

    #[test]
    fn snarks() {
        assert!(is_snark(&petersen()));
        assert!(!is_snark(&complete(4)));
        assert!(!is_snark(&bridged_cubic()));
    }
}

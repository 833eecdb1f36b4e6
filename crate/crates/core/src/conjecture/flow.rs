use crate::error::{invalid, Result};
use crate::maxflow::FlowNetwork;
use crate::mgraph::{EdgeId, MultiGraph, VertexId};

/// A nowhere-zero flow: edge copy `e` carries `values[e] > 0` units from
/// `arcs[e].0` to `arcs[e].1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowAssignment {
    pub arcs: Vec<(VertexId, VertexId)>,
    pub values: Vec<u32>,
}

impl FlowAssignment {
    /// Checks orientation, value range `1..k` and conservation from scratch.
    pub fn verify(&self, g: &MultiGraph, k: u32) -> bool {
        if self.arcs.len() != g.m() || self.values.len() != g.m() {
            return false;
        }
        let mut excess = vec![0i64; g.n()];
        for (e, (&(t, h), &x)) in self.arcs.iter().zip(&self.values).enumerate() {
            let (a, b) = g.edge(e);
            if (t, h) != (a, b) && (t, h) != (b, a) {
                return false;
            }
            if x == 0 || x >= k {
                return false;
            }
            excess[t] -= x as i64;
            excess[h] += x as i64;
        }
        excess.iter().all(|&x| x == 0)
    }
}

/// Searches for a nowhere-zero `k`-flow.
///
/// Branches on edge orientations. A partial orientation survives while the
/// circulation with bounds `[1, k-1]` on oriented edges and `[-(k-1), k-1]`
/// on the rest is feasible; once every edge is oriented, feasibility is
/// exactly the existence of the flow.
pub fn nowhere_zero_flow(g: &MultiGraph, k: u32) -> Result<Option<FlowAssignment>> {
    if k < 2 {
        return Err(invalid(format!(
            "k = {k}, a nowhere-zero k-flow needs k >= 2"
        )));
    }
    if !g.bridges().is_empty() {
        return Ok(None);
    }
    let mut search = OrientationSearch {
        g,
        top: k as i64 - 1,
        // +1: lower id -> higher id, -1: reversed, 0: open
        sign: vec![0; g.m()],
    };
    if g.m() > 0 {
        // a flow stays a flow when negated
        search.sign[0] = 1;
    }
    let Some(values) = search.solve() else {
        return Ok(None);
    };
    let (arcs, values) = g
        .edges()
        .iter()
        .zip(values)
        .map(|(&(a, b), x)| {
            let arc = if x > 0 { (a, b) } else { (b, a) };
            (arc, x.unsigned_abs() as u32)
        })
        .unzip();
    let flow = FlowAssignment { arcs, values };
    debug_assert!(flow.verify(g, k));
    Ok(Some(flow))
}

struct OrientationSearch<'a> {
    g: &'a MultiGraph,
    top: i64,
    sign: Vec<i8>,
}

impl OrientationSearch<'_> {
    fn bounds(&self, e: EdgeId) -> (i64, i64) {
        match self.sign[e] {
            1 => (1, self.top),
            -1 => (-self.top, -1),
            _ => (-self.top, self.top),
        }
    }

    /// A circulation within the current bounds, as values on lower id ->
    /// higher id, if one exists.
    fn circulation(&self) -> Option<Vec<i64>> {
        let n = self.g.n();
        let (source, sink) = (n, n + 1);
        let mut net = FlowNetwork::new(n + 2);
        let mut balance = vec![0i64; n];
        let mut arcs = Vec::with_capacity(self.g.m());
        let mut lows = Vec::with_capacity(self.g.m());
        for (e, &(a, b)) in self.g.edges().iter().enumerate() {
            let (lo, hi) = self.bounds(e);
            arcs.push(net.add_pair(a, b, hi - lo, 0));
            lows.push(lo);
            balance[a] -= lo;
            balance[b] += lo;
        }
        let mut need = 0;
        for (v, &x) in balance.iter().enumerate() {
            if x > 0 {
                net.add_pair(source, v, x, 0);
                need += x;
            } else if x < 0 {
                net.add_pair(v, sink, -x, 0);
            }
        }
        if net.max_flow(source, sink) != need {
            return None;
        }
        Some(
            arcs.iter()
                .zip(&lows)
                .map(|(&a, &lo)| lo + net.flow_on(a))
                .collect(),
        )
    }

    fn solve(&mut self) -> Option<Vec<i64>> {
        let values = self.circulation()?;
        // an integral circulation without zeros is already a flow; otherwise
        // orient an edge the circulation leaves empty
        let Some(next) = (0..self.g.m()).find(|&e| values[e] == 0) else {
            return Some(values);
        };
        for s in [1, -1] {
            self.sign[next] = s;
            if let Some(found) = self.solve() {
                return Some(found);
            }
        }
        self.sign[next] = 0;
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mgraph::fixtures::*;

    #[test]
    fn known_flows() {
        let f = nowhere_zero_flow(&complete(4), 4).unwrap().unwrap();
        assert!(f.verify(&complete(4), 4));
        assert!(nowhere_zero_flow(&petersen(), 4).unwrap().is_none());
        let f = nowhere_zero_flow(&petersen(), 5).unwrap().unwrap();
        assert!(f.verify(&petersen(), 5));
        assert!(nowhere_zero_flow(&bridged_cubic(), 6).unwrap().is_none());
        assert!(nowhere_zero_flow(&complete(4), 1).is_err());
    }

    #[test]
    fn even_graphs_have_2_flows() {
        let f = nowhere_zero_flow(&cycle(6), 2).unwrap().unwrap();
        assert!(f.verify(&cycle(6), 2));
        assert!(nowhere_zero_flow(&complete(4), 2).unwrap().is_none());
        // a cubic graph has a 3-flow only if it is bipartite
        assert!(nowhere_zero_flow(&complete(4), 3).unwrap().is_none());
        assert!(nowhere_zero_flow(&bundle(3), 3).unwrap().is_some());
    }
}

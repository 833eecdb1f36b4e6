//! Dinic's maximum flow on small integer networks.

use std::collections::VecDeque;

/// Arcs come in pairs: arc `a` and its residual partner `a ^ 1`.
pub(crate) struct FlowNetwork {
    head: Vec<usize>,
    cap: Vec<i64>,
    flow: Vec<i64>,
    adj: Vec<Vec<usize>>,
    level: Vec<usize>,
    iter: Vec<usize>,
}

impl FlowNetwork {
    pub(crate) fn new(n: usize) -> Self {
        FlowNetwork {
            head: Vec::new(),
            cap: Vec::new(),
            flow: Vec::new(),
            adj: vec![Vec::new(); n],
            level: vec![0; n],
            iter: vec![0; n],
        }
    }

    /// Arc pair with capacity `forward` on `u -> v` and `backward` on
    /// `v -> u`; returns the id of the `u -> v` arc.
    pub(crate) fn add_pair(&mut self, u: usize, v: usize, forward: i64, backward: i64) -> usize {
        let a = self.head.len();
        self.head.extend([v, u]);
        self.cap.extend([forward, backward]);
        self.flow.extend([0, 0]);
        self.adj[u].push(a);
        self.adj[v].push(a + 1);
        a
    }

    pub(crate) fn flow_on(&self, arc: usize) -> i64 {
        self.flow[arc]
    }

    fn residual(&self, a: usize) -> i64 {
        self.cap[a] - self.flow[a]
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = usize::MAX);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &a in &self.adj[v] {
                let u = self.head[a];
                if self.level[u] == usize::MAX && self.residual(a) > 0 {
                    self.level[u] = self.level[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        self.level[t] != usize::MAX
    }

    fn dfs(&mut self, v: usize, t: usize, pushed: i64) -> i64 {
        if v == t {
            return pushed;
        }
        while self.iter[v] < self.adj[v].len() {
            let a = self.adj[v][self.iter[v]];
            let u = self.head[a];
            if self.level[u] == self.level[v] + 1 && self.residual(a) > 0 {
                let got = self.dfs(u, t, pushed.min(self.residual(a)));
                if got > 0 {
                    self.flow[a] += got;
                    self.flow[a ^ 1] -= got;
                    return got;
                }
            }
            self.iter[v] += 1;
        }
        0
    }

    /// Maximum `s`-`t` flow, starting from zero flow.
    pub(crate) fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        self.flow.iter_mut().for_each(|f| *f = 0);
        let mut total = 0;
        while self.bfs(s, t) {
            self.iter.iter_mut().for_each(|i| *i = 0);
            loop {
                let f = self.dfs(s, t, i64::MAX);
                if f == 0 {
                    break;
                }
                total += f;
            }
        }
        total
    }

    /// Maximum flow value and the source side of a minimum cut.
    pub(crate) fn min_cut(&mut self, s: usize, t: usize) -> (i64, Vec<bool>) {
        let total = self.max_flow(s, t);
        // after the last failed BFS, `level` marks the residual-reachable side
        let side = self.level.iter().map(|&l| l != usize::MAX).collect();
        (total, side)
    }
}

//! Dinic max-flow on integer capacities with a fixed edge order, so results
//! are reproducible run to run.

use std::collections::VecDeque;

pub(crate) const INF: i64 = i64::MAX / 4;

#[derive(Clone, Debug)]
struct Edge {
    to: usize,
    cap: i64,
    original: i64,
}

#[derive(Clone, Debug)]
pub(crate) struct FlowNetwork {
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

impl FlowNetwork {
    pub(crate) fn new(nodes: usize) -> Self {
        FlowNetwork { edges: Vec::new(), adj: vec![Vec::new(); nodes] }
    }

    /// Adds `u → v`; the returned id names the forward edge.
    pub(crate) fn add_edge(&mut self, u: usize, v: usize, cap: i64) -> usize {
        let id = self.edges.len();
        self.edges.push(Edge { to: v, cap, original: cap });
        self.edges.push(Edge { to: u, cap: 0, original: 0 });
        self.adj[u].push(id);
        self.adj[v].push(id + 1);
        id
    }

    pub(crate) fn flow_on(&self, id: usize) -> i64 {
        self.edges[id].original - self.edges[id].cap
    }

    fn levels(&self, s: usize) -> Vec<i64> {
        let mut level = vec![-1; self.adj.len()];
        level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &id in &self.adj[u] {
                let e = &self.edges[id];
                if e.cap > 0 && level[e.to] < 0 {
                    level[e.to] = level[u] + 1;
                    queue.push_back(e.to);
                }
            }
        }
        level
    }

    fn augment(&mut self, u: usize, t: usize, pushed: i64, level: &[i64], next: &mut [usize]) -> i64 {
        if u == t {
            return pushed;
        }
        while next[u] < self.adj[u].len() {
            let id = self.adj[u][next[u]];
            let (to, cap) = (self.edges[id].to, self.edges[id].cap);
            if cap > 0 && level[to] == level[u] + 1 {
                let got = self.augment(to, t, pushed.min(cap), level, next);
                if got > 0 {
                    self.edges[id].cap -= got;
                    self.edges[id ^ 1].cap += got;
                    return got;
                }
            }
            next[u] += 1;
        }
        0
    }

    pub(crate) fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        loop {
            let level = self.levels(s);
            if level[t] < 0 {
                return total;
            }
            let mut next = vec![0; self.adj.len()];
            loop {
                let got = self.augment(s, t, INF, &level, &mut next);
                if got == 0 {
                    break;
                }
                total += got;
            }
        }
    }

    /// Nodes reachable from `s` in the residual network.
    pub(crate) fn reachable(&self, s: usize) -> Vec<bool> {
        self.levels(s).into_iter().map(|l| l >= 0).collect()
    }
}

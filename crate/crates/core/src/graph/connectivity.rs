use std::collections::VecDeque;

use super::Graph;

impl Graph {
    /// Vertex connectivity: the minimum number of vertices whose removal
    /// disconnects the graph (`n - 1` for complete graphs, 0 if disconnected).
    pub fn vertex_connectivity(&self) -> usize {
        let n = self.n();
        if n <= 1 {
            return 0;
        }
        if !self.is_connected() {
            return 0;
        }
        let mut best = n - 1;
        for s in 0..n {
            for t in s + 1..n {
                if self.has_edge(s, t) {
                    continue;
                }
                best = best.min(self.local_connectivity(s, t, best));
                if best == 1 {
                    return 1;
                }
            }
        }
        best
    }

    /// Maximum number of internally vertex-disjoint s-t paths (s, t
    /// non-adjacent), capped at `cap`. Unit-capacity flow on the split graph.
    fn local_connectivity(&self, s: usize, t: usize, cap: usize) -> usize {
        let n = self.n();
        // vertex v -> in-node 2v, out-node 2v+1
        let mut net = FlowNet::new(2 * n);
        for v in 0..n {
            let c = if v == s || v == t { n } else { 1 };
            net.add_arc(2 * v, 2 * v + 1, c);
        }
        for (u, v) in self.edges() {
            net.add_arc(2 * u + 1, 2 * v, 1);
            net.add_arc(2 * v + 1, 2 * u, 1);
        }
        let mut flow = 0;
        while flow < cap && net.augment(2 * s + 1, 2 * t) {
            flow += 1;
        }
        flow
    }
}

struct FlowNet {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<usize>,
}

impl FlowNet {
    fn new(nodes: usize) -> Self {
        FlowNet {
            head: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    fn add_arc(&mut self, a: usize, b: usize, c: usize) {
        self.head[a].push(self.to.len());
        self.to.push(b);
        self.cap.push(c);
        self.head[b].push(self.to.len());
        self.to.push(a);
        self.cap.push(0);
    }

    /// One BFS augmenting path of unit value.
    fn augment(&mut self, src: usize, dst: usize) -> bool {
        let mut via = vec![usize::MAX; self.head.len()];
        let mut seen = vec![false; self.head.len()];
        seen[src] = true;
        let mut queue = VecDeque::from([src]);
        while let Some(x) = queue.pop_front() {
            if x == dst {
                break;
            }
            for &arc in &self.head[x] {
                let y = self.to[arc];
                if self.cap[arc] > 0 && !seen[y] {
                    seen[y] = true;
                    via[y] = arc;
                    queue.push_back(y);
                }
            }
        }
        if !seen[dst] {
            return false;
        }
        let mut x = dst;
        while x != src {
            let arc = via[x];
            self.cap[arc] -= 1;
            self.cap[arc ^ 1] += 1;
            x = self.to[arc ^ 1];
        }
        true
    }
}

//! Dinic max-flow and circulation-with-lower-bounds feasibility, used to
//! decide whether a complete in-weight labeling is realizable by an
//! orientation.

/// Adjacency-list flow network with residual edges.
pub struct FlowNetwork {
    node_count: usize,
    // Edges stored flat; edge i and i^1 are a residual pair.
    to: Vec<usize>,
    cap: Vec<u64>,
    head: Vec<Vec<usize>>,
}

impl FlowNetwork {
    pub fn new(node_count: usize) -> Self {
        FlowNetwork {
            node_count,
            to: Vec::new(),
            cap: Vec::new(),
            head: vec![Vec::new(); node_count],
        }
    }

    /// Adds a directed edge and returns its id (use with [`Self::flow_on`]).
    pub fn add_edge(&mut self, from: usize, to: usize, cap: u64) -> usize {
        let id = self.to.len();
        self.head[from].push(id);
        self.to.push(to);
        self.cap.push(cap);
        self.head[to].push(id + 1);
        self.to.push(from);
        self.cap.push(0);
        id
    }

    /// Flow currently on edge `id` (capacity moved to its residual twin).
    pub fn flow_on(&self, id: usize) -> u64 {
        self.cap[id ^ 1]
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> u64 {
        let mut total = 0;
        loop {
            // BFS level graph.
            let mut level = vec![usize::MAX; self.node_count];
            level[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &e in &self.head[u] {
                    let v = self.to[e];
                    if self.cap[e] > 0 && level[v] == usize::MAX {
                        level[v] = level[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
            if level[t] == usize::MAX {
                return total;
            }
            // DFS blocking flow with iteration pointers.
            let mut iter = vec![0usize; self.node_count];
            loop {
                let pushed = self.dfs(s, t, u64::MAX, &level, &mut iter);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
    }

    fn dfs(&mut self, u: usize, t: usize, limit: u64, level: &[usize], iter: &mut [usize]) -> u64 {
        if u == t {
            return limit;
        }
        while iter[u] < self.head[u].len() {
            let e = self.head[u][iter[u]];
            let v = self.to[e];
            if self.cap[e] > 0 && level[v] == level[u] + 1 {
                let pushed = self.dfs(v, t, limit.min(self.cap[e]), level, iter);
                if pushed > 0 {
                    self.cap[e] -= pushed;
                    self.cap[e ^ 1] += pushed;
                    return pushed;
                }
            }
            iter[u] += 1;
        }
        0
    }
}

/// Decides feasibility of a circulation where arc i must carry a flow in
/// [lower_i, upper_i]. Returns per-arc flows on success.
///
/// Standard reduction: route every lower bound up front, then balance the
/// induced surpluses/deficits through a super source and sink; the
/// circulation exists iff all surplus can be pushed.
pub fn feasible_circulation(
    node_count: usize,
    arcs: &[(usize, usize, u64, u64)],
) -> Option<Vec<u64>> {
    let ss = node_count;
    let tt = node_count + 1;
    let mut net = FlowNetwork::new(node_count + 2);
    let mut excess = vec![0i64; node_count];
    let mut ids = Vec::with_capacity(arcs.len());
    for &(from, to, lower, upper) in arcs {
        debug_assert!(lower <= upper);
        ids.push(net.add_edge(from, to, upper - lower));
        excess[to] += lower as i64;
        excess[from] -= lower as i64;
    }
    let mut need = 0u64;
    for (v, &e) in excess.iter().enumerate() {
        if e > 0 {
            net.add_edge(ss, v, e as u64);
            need += e as u64;
        } else if e < 0 {
            net.add_edge(v, tt, (-e) as u64);
        }
    }
    if net.max_flow(ss, tt) != need {
        return None;
    }
    Some(
        ids.iter()
            .zip(arcs)
            .map(|(&id, &(_, _, lower, _))| net.flow_on(id) + lower)
            .collect(),
    )
}

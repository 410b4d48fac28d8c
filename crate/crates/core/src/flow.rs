//! Deterministic unit-capacity flow networks over split vertices.
//!
//! Every connectivity question in this crate reduces to a max-flow problem
//! on a network derived from the vertex-splitting transform: each vertex
//! `w` becomes `tail(w) -> head(w)` with capacity one, digraph edges get
//! effectively unbounded capacity, and the wiring of sources and sinks
//! varies per question. Augmenting paths are searched breadth-first with
//! edges scanned in construction order, which is lexicographic because
//! every builder iterates sorted structures. That makes all outputs
//! byte-reproducible.
//!
//! Minimum cuts read off the residual graph always consist of saturated
//! `tail -> head` arcs (plus target arcs in fan networks), i.e. of
//! vertices, because those are the only finite capacities.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::digraph::{Edge, RootedDigraph, Vertex};

pub(crate) const INF: u32 = u32::MAX / 2;

const SOURCE: u32 = 0;
const SINK: u32 = 1;

#[inline]
fn tail_node(v: Vertex) -> u32 {
    2 + 2 * v.0
}

#[inline]
fn head_node(v: Vertex) -> u32 {
    3 + 2 * v.0
}

#[inline]
fn node_vertex(node: u32) -> Option<Vertex> {
    (node >= 2).then(|| Vertex((node - 2) / 2))
}

/// Max-flow over an explicit residual edge list. Forward edges get even
/// ids; `e ^ 1` is the paired reverse edge.
pub(crate) struct Flow {
    adj: Vec<Vec<u32>>,
    to: Vec<u32>,
    cap: Vec<u32>,
    cap0: Vec<u32>,
}

impl Flow {
    pub(crate) fn new(nodes: usize) -> Self {
        Flow {
            adj: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
            cap0: Vec::new(),
        }
    }

    pub(crate) fn add(&mut self, u: u32, v: u32, c: u32) -> u32 {
        let id = self.to.len() as u32;
        self.to.push(v);
        self.cap.push(c);
        self.cap0.push(c);
        self.adj[u as usize].push(id);
        self.to.push(u);
        self.cap.push(0);
        self.cap0.push(0);
        self.adj[v as usize].push(id + 1);
        id
    }

    /// Flow currently routed through a forward edge.
    pub(crate) fn flow_on(&self, e: u32) -> u32 {
        debug_assert!(e.is_multiple_of(2));
        self.cap0[e as usize].saturating_sub(self.cap[e as usize])
    }

    /// One breadth-first augmentation; returns the pushed amount (0 when no
    /// augmenting path exists).
    pub(crate) fn augment_once(&mut self, s: u32, t: u32) -> u32 {
        let mut parent: Vec<u32> = vec![u32::MAX; self.adj.len()];
        let mut seen = vec![false; self.adj.len()];
        seen[s as usize] = true;
        let mut queue = VecDeque::from([s]);
        'bfs: while let Some(u) = queue.pop_front() {
            for &e in &self.adj[u as usize] {
                let w = self.to[e as usize];
                if self.cap[e as usize] > 0 && !seen[w as usize] {
                    seen[w as usize] = true;
                    parent[w as usize] = e;
                    if w == t {
                        break 'bfs;
                    }
                    queue.push_back(w);
                }
            }
        }
        if !seen[t as usize] {
            return 0;
        }
        let mut bottleneck = INF;
        let mut u = t;
        while u != s {
            let e = parent[u as usize];
            bottleneck = bottleneck.min(self.cap[e as usize]);
            u = self.to[(e ^ 1) as usize];
        }
        let mut u = t;
        while u != s {
            let e = parent[u as usize];
            self.cap[e as usize] -= bottleneck;
            self.cap[(e ^ 1) as usize] += bottleneck;
            u = self.to[(e ^ 1) as usize];
        }
        bottleneck
    }

    pub(crate) fn max_flow(&mut self, s: u32, t: u32) -> u32 {
        let mut total = 0;
        loop {
            let pushed = self.augment_once(s, t);
            if pushed == 0 {
                return total;
            }
            total += pushed;
        }
    }

    /// Nodes reachable from `s` in the residual graph.
    pub(crate) fn residual_reachable(&self, s: u32) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s as usize] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.adj[u as usize] {
                let w = self.to[e as usize];
                if self.cap[e as usize] > 0 && !seen[w as usize] {
                    seen[w as usize] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    pub(crate) fn reset(&mut self) {
        self.cap.copy_from_slice(&self.cap0);
    }

    /// Manually routes one unit along a known sequence of forward edges.
    pub(crate) fn push_unit(&mut self, eids: &[u32]) {
        for &e in eids {
            assert!(self.cap[e as usize] > 0, "push through saturated edge");
            self.cap[e as usize] -= 1;
            self.cap[(e ^ 1) as usize] += 1;
        }
    }

    /// Remaining-flow vector for decomposition: forward edges carry their
    /// current flow, reverse edges nothing.
    fn flow_rem(&self) -> Vec<u32> {
        (0..self.to.len() as u32)
            .map(|e| if e.is_multiple_of(2) { self.flow_on(e) } else { 0 })
            .collect()
    }

    /// Decomposes a remaining-flow vector into unit walks from `source` to
    /// `sink`, following lowest-construction-order edges first. Circulation
    /// that no walk reaches is ignored. Returns node paths and edge ids.
    fn decompose(&self, source: u32, sink: u32, rem: &mut [u32]) -> Vec<(Vec<u32>, Vec<u32>)> {
        let mut out = Vec::new();
        loop {
            let mut nodes = vec![source];
            let mut eids = Vec::new();
            let mut u = source;
            let started = loop {
                let next = self.adj[u as usize]
                    .iter()
                    .copied()
                    .find(|&e| e.is_multiple_of(2) && rem[e as usize] > 0);
                match next {
                    None => break !eids.is_empty(),
                    Some(e) => {
                        rem[e as usize] -= 1;
                        u = self.to[e as usize];
                        nodes.push(u);
                        eids.push(e);
                        if u == sink {
                            break true;
                        }
                    }
                }
            };
            if !started || eids.is_empty() {
                return out;
            }
            assert_eq!(*nodes.last().unwrap(), sink, "walk stranded before sink");
            out.push((nodes, eids));
        }
    }
}

/// Collapses a split-node path into base vertices. `source_as` / `sink_as`
/// substitute real vertices for the virtual endpoints (or drop them).
fn nodes_to_vertices(nodes: &[u32], source_as: Option<Vertex>, sink_as: Option<Vertex>) -> Vec<Vertex> {
    let mut verts = Vec::new();
    for &n in nodes {
        let v = if n == SOURCE {
            source_as
        } else if n == SINK {
            sink_as
        } else {
            node_vertex(n)
        };
        if let Some(v) = v {
            if verts.last() != Some(&v) {
                verts.push(v);
            }
        }
    }
    verts
}

/// Network for internally disjoint `r -> v` path systems in `D - rv`.
///
/// The root edge `rv`, when present, is handled by callers as its own unit
/// path; this network never contains it.
pub(crate) struct RvNet {
    pub(crate) flow: Flow,
    root: Vertex,
    target: Vertex,
}

impl RvNet {
    /// `in_restrict`: when given, only these tails may enter the target
    /// (used for covering questions). The root is never a legal tail here.
    pub(crate) fn build(
        d: &RootedDigraph,
        target: Vertex,
        in_restrict: Option<&BTreeSet<Vertex>>,
    ) -> RvNet {
        let root = d.root();
        let n = d.vertex_count();
        let mut flow = Flow::new(2 + 2 * n);
        for w in d.vertices() {
            if w != root && w != target {
                flow.add(tail_node(w), head_node(w), 1);
            }
        }
        for u in d.vertices() {
            if u == target {
                continue;
            }
            for &w in d.out_neighbors(u) {
                if u == root && w == target {
                    continue;
                }
                if w == target {
                    if let Some(allow) = in_restrict {
                        if !allow.contains(&u) {
                            continue;
                        }
                    }
                    flow.add(head_node(u), SINK, INF);
                } else {
                    let from = if u == root { SOURCE } else { head_node(u) };
                    flow.add(from, tail_node(w), INF);
                }
            }
        }
        RvNet { flow, root, target }
    }

    pub(crate) fn max_flow(&mut self) -> usize {
        self.flow.max_flow(SOURCE, SINK) as usize
    }

    /// Extracts the path decomposition and rebuilds the flow from exactly
    /// those paths, so later residual queries see a circulation-free flow.
    pub(crate) fn extract_and_rebuild(&mut self) -> Vec<Vec<Vertex>> {
        let walks = self.flow.decompose(SOURCE, SINK, &mut self.flow.flow_rem());
        self.flow.reset();
        let mut paths = Vec::new();
        for (nodes, eids) in &walks {
            self.flow.push_unit(eids);
            paths.push(nodes_to_vertices(nodes, Some(self.root), Some(self.target)));
        }
        paths.sort();
        paths
    }

    /// The minimum vertex cut nearest the root, read off residual
    /// reachability. Valid after `max_flow` (+ rebuild).
    pub(crate) fn min_cut(&self) -> BTreeSet<Vertex> {
        let reach = self.flow.residual_reachable(SOURCE);
        let mut cut = BTreeSet::new();
        for v in 0..((self.flow.adj.len() - 2) / 2) as u32 {
            let v = Vertex(v);
            if v == self.root || v == self.target {
                continue;
            }
            let t = tail_node(v) as usize;
            let h = head_node(v) as usize;
            if reach[t] && !reach[h] {
                cut.insert(v);
            }
        }
        cut
    }
}

/// Options for disjoint `X -> Y` networks.
pub(crate) struct XySpec<'a> {
    pub sources: &'a BTreeSet<Vertex>,
    pub sinks: &'a BTreeSet<Vertex>,
    /// Restrict usable vertices (used to stay inside a bubble).
    pub allowed: Option<&'a BTreeSet<Vertex>>,
    /// Restrict usable edges (used to stay inside a union digraph).
    pub edge_pool: Option<&'a BTreeSet<Edge>>,
    /// Exclude one vertex outright.
    pub forbid: Option<Vertex>,
    /// Work in `D - rv`.
    pub omit_root_edge_to: Option<Vertex>,
    /// Strict systems: paths may not pass through `Y` (edges leaving a sink
    /// are dropped). Edges entering a source are dropped in either mode.
    pub strict: bool,
}

pub(crate) struct XyNet {
    pub(crate) flow: Flow,
    source_arc: BTreeMap<Vertex, u32>,
    sink_arc: BTreeMap<Vertex, u32>,
    split_eid: Vec<Option<u32>>,
    edge_arc: BTreeMap<Edge, u32>,
    vertex_count: usize,
}

impl XyNet {
    pub(crate) fn build(d: &RootedDigraph, spec: &XySpec<'_>) -> XyNet {
        let n = d.vertex_count();
        let allowed = |w: Vertex| {
            spec.allowed.is_none_or(|a| a.contains(&w)) && spec.forbid != Some(w)
        };
        let mut flow = Flow::new(2 + 2 * n);
        let mut split_eid = vec![None; n];
        for w in d.vertices() {
            if allowed(w) {
                split_eid[w.index()] = Some(flow.add(tail_node(w), head_node(w), 1));
            }
        }
        let mut source_arc = BTreeMap::new();
        for &x in spec.sources {
            if allowed(x) {
                source_arc.insert(x, flow.add(SOURCE, tail_node(x), INF));
            }
        }
        let mut sink_arc = BTreeMap::new();
        for &y in spec.sinks {
            if allowed(y) {
                sink_arc.insert(y, flow.add(head_node(y), SINK, INF));
            }
        }
        let mut edge_arc = BTreeMap::new();
        let edges: Vec<Edge> = match spec.edge_pool {
            Some(pool) => pool.iter().copied().filter(|&(u, w)| d.has_edge(u, w)).collect(),
            None => d.edges().collect(),
        };
        for (u, w) in edges {
            if !allowed(u) || !allowed(w) {
                continue;
            }
            if spec.omit_root_edge_to == Some(w) && u == d.root() {
                continue;
            }
            if spec.sources.contains(&w) {
                continue;
            }
            if spec.strict && spec.sinks.contains(&u) {
                continue;
            }
            edge_arc.insert((u, w), flow.add(head_node(u), tail_node(w), INF));
        }
        XyNet {
            flow,
            source_arc,
            sink_arc,
            split_eid,
            edge_arc,
            vertex_count: n,
        }
    }

    /// Routes an existing system as initial flow. The caller guarantees the
    /// system fits the network (validated against the same spec).
    pub(crate) fn route_system(&mut self, paths: &[crate::paths::Path]) -> Result<(), String> {
        for p in paths {
            let mut eids = Vec::new();
            let first = p.first();
            let last = p.last();
            eids.push(*self.source_arc.get(&first).ok_or("missing source arc")?);
            eids.push(self.split_eid[first.index()].ok_or("missing split arc")?);
            for (u, w) in p.edges() {
                eids.push(*self.edge_arc.get(&(u, w)).ok_or("missing edge arc")?);
                eids.push(self.split_eid[w.index()].ok_or("missing split arc")?);
            }
            eids.push(*self.sink_arc.get(&last).ok_or("missing sink arc")?);
            self.flow.push_unit(&eids);
        }
        Ok(())
    }

    pub(crate) fn augment_once(&mut self) -> bool {
        self.flow.augment_once(SOURCE, SINK) > 0
    }

    pub(crate) fn extract_and_rebuild(&mut self) -> Vec<Vec<Vertex>> {
        let walks = self.flow.decompose(SOURCE, SINK, &mut self.flow.flow_rem());
        self.flow.reset();
        let mut paths = Vec::new();
        for (nodes, eids) in &walks {
            self.flow.push_unit(eids);
            paths.push(nodes_to_vertices(nodes, None, None));
        }
        paths.sort();
        paths
    }

    /// Vertex cut read off residual reachability; meaningful when the flow
    /// is maximum and circulation-free.
    pub(crate) fn cut_vertices(&self) -> BTreeSet<Vertex> {
        let reach = self.flow.residual_reachable(SOURCE);
        let mut cut = BTreeSet::new();
        for i in 0..self.vertex_count {
            if let Some(e) = self.split_eid[i] {
                let t = self.flow.to[(e ^ 1) as usize] as usize;
                let h = self.flow.to[e as usize] as usize;
                if reach[t] && !reach[h] {
                    cut.insert(Vertex(i as u32));
                }
            }
        }
        cut
    }
}

/// A fan network: vertex-disjoint paths out of a single shared endpoint
/// (the digraph root of the instance, or a reversed target), each ending
/// exactly on a distinct member of `targets`, with no path passing through
/// any target.
pub(crate) struct FanSpec<'a> {
    /// Edges of the host digraph, already filtered (and reversed for
    /// infans); sorted for determinism.
    pub edges: &'a BTreeSet<Edge>,
    pub center: Vertex,
    pub targets: &'a BTreeSet<Vertex>,
    pub allowed: Option<&'a BTreeSet<Vertex>>,
    pub vertex_count: usize,
}

pub(crate) struct FanNet {
    pub(crate) flow: Flow,
    center: Vertex,
    targets: BTreeSet<Vertex>,
    vertex_count: usize,
}

impl FanNet {
    pub(crate) fn build(spec: &FanSpec<'_>) -> FanNet {
        let allowed =
            |w: Vertex| spec.allowed.is_none_or(|a| a.contains(&w)) && w != spec.center;
        let mut flow = Flow::new(2 + 2 * spec.vertex_count);
        for i in 0..spec.vertex_count as u32 {
            let w = Vertex(i);
            if allowed(w) && !spec.targets.contains(&w) {
                flow.add(tail_node(w), head_node(w), 1);
            }
        }
        for &t in spec.targets {
            if allowed(t) {
                flow.add(tail_node(t), SINK, 1);
            }
        }
        for &(u, w) in spec.edges {
            if w == spec.center || !allowed(w) {
                continue;
            }
            if u != spec.center && (!allowed(u) || spec.targets.contains(&u)) {
                continue;
            }
            let from = if u == spec.center { SOURCE } else { head_node(u) };
            flow.add(from, tail_node(w), INF);
        }
        FanNet {
            flow,
            center: spec.center,
            targets: spec.targets.clone(),
            vertex_count: spec.vertex_count,
        }
    }

    pub(crate) fn max_flow(&mut self) -> usize {
        self.flow.max_flow(SOURCE, SINK) as usize
    }

    /// Paths starting at the center, one per linked target.
    pub(crate) fn extract_and_rebuild(&mut self) -> Vec<Vec<Vertex>> {
        let walks = self.flow.decompose(SOURCE, SINK, &mut self.flow.flow_rem());
        self.flow.reset();
        let mut paths = Vec::new();
        for (nodes, eids) in &walks {
            self.flow.push_unit(eids);
            paths.push(nodes_to_vertices(nodes, Some(self.center), None));
        }
        paths.sort();
        paths
    }

    /// Vertices blocking the unlinked targets: saturated splits on the
    /// reachable boundary plus reachable targets (whose terminal arcs are
    /// saturated at a maximum flow).
    pub(crate) fn blocking_cut(&self) -> BTreeSet<Vertex> {
        let reach = self.flow.residual_reachable(SOURCE);
        let mut cut = BTreeSet::new();
        for i in 0..self.vertex_count {
            let w = Vertex(i as u32);
            if w == self.center {
                continue;
            }
            let t = tail_node(w) as usize;
            if t >= reach.len() {
                continue;
            }
            if self.targets.contains(&w) {
                if reach[t] {
                    cut.insert(w);
                }
            } else if reach[t] && !reach[head_node(w) as usize] {
                cut.insert(w);
            }
        }
        cut
    }
}

/// A linkage with demands: disjoint `X -> Y` paths in an edge pool where
/// every required source must be a first vertex and every required sink a
/// last vertex. Feasibility is decided by the standard lower-bound
/// reduction (auxiliary source/sink plus a circulation arc); `None` means
/// no such linkage exists.
pub(crate) struct LinkSpec<'a> {
    pub edge_pool: &'a BTreeSet<Edge>,
    pub sources: &'a BTreeSet<Vertex>,
    pub required_sources: &'a BTreeSet<Vertex>,
    pub sinks: &'a BTreeSet<Vertex>,
    pub required_sinks: &'a BTreeSet<Vertex>,
    /// Strict systems: paths may not pass through `Y`.
    pub strict: bool,
    pub forbid: Option<Vertex>,
}

pub(crate) fn link_with_demands(d: &RootedDigraph, spec: &LinkSpec<'_>) -> Option<Vec<Vec<Vertex>>> {
    debug_assert!(spec.required_sources.is_subset(spec.sources));
    debug_assert!(spec.required_sinks.is_subset(spec.sinks));
    let n = d.vertex_count();
    let aux_s = 2 + 2 * n as u32;
    let aux_t = 3 + 2 * n as u32;
    let allowed = |w: Vertex| spec.forbid != Some(w);
    let mut flow = Flow::new(4 + 2 * n);
    let mut lowered: BTreeMap<u32, u32> = BTreeMap::new();

    for w in d.vertices() {
        if allowed(w) {
            flow.add(tail_node(w), head_node(w), 1);
        }
    }
    for &x in spec.sources {
        if !allowed(x) {
            continue;
        }
        if spec.required_sources.contains(&x) {
            let e = flow.add(SOURCE, tail_node(x), 0);
            lowered.insert(e, 1);
            flow.add(aux_s, tail_node(x), 1);
            flow.add(SOURCE, aux_t, 1);
        } else {
            flow.add(SOURCE, tail_node(x), 1);
        }
    }
    for &y in spec.sinks {
        if !allowed(y) {
            continue;
        }
        if spec.required_sinks.contains(&y) {
            let e = flow.add(head_node(y), SINK, 0);
            lowered.insert(e, 1);
            flow.add(aux_s, SINK, 1);
            flow.add(head_node(y), aux_t, 1);
        } else {
            flow.add(head_node(y), SINK, 1);
        }
    }
    for &(u, w) in spec.edge_pool {
        if !d.has_edge(u, w) || !allowed(u) || !allowed(w) {
            continue;
        }
        if spec.sources.contains(&w) {
            continue;
        }
        if spec.strict && spec.sinks.contains(&u) {
            continue;
        }
        flow.add(head_node(u), tail_node(w), INF);
    }
    let circulation = flow.add(SINK, SOURCE, INF);

    let demanded = lowered.len() as u32;
    let routed = flow.max_flow(aux_s, aux_t);
    if routed != demanded {
        return None;
    }
    // Effective flow for decomposition: lowered arcs carry their bound,
    // arcs touching the auxiliary nodes and the circulation arc carry
    // nothing.
    let mut rem = flow.flow_rem();
    for (&e, &bound) in &lowered {
        rem[e as usize] = bound;
    }
    for (e, r) in rem.iter_mut().enumerate() {
        let e = e as u32;
        if e.is_multiple_of(2) && !lowered.contains_key(&e) {
            let from = flow.to[(e ^ 1) as usize];
            let to = flow.to[e as usize];
            if e == circulation || from >= aux_s || to >= aux_s {
                *r = 0;
            }
        }
    }
    let walks = flow.decompose(SOURCE, SINK, &mut rem);
    let mut paths: Vec<Vec<Vertex>> = walks
        .iter()
        .map(|(nodes, _)| nodes_to_vertices(nodes, None, None))
        .collect();
    paths.sort();
    Some(paths)
}

//! The rooted-digraph data model.
//!
//! A [`RootedDigraph`] is a finite simple digraph together with a
//! distinguished root `r` that has no ingoing edges. Vertices are opaque
//! names; internally they are interned into a shared, lexicographically
//! sorted [`VertexSet`] so that the numeric order of [`Vertex`] handles
//! coincides with the lexicographic order of the names. All deterministic
//! tie-breaking in the library rides on that order.
//!
//! Values are immutable: every edit returns a new digraph. Spanning
//! subdigraphs share the `Arc<VertexSet>` of their parent, which keeps
//! vertex handles stable across a whole pipeline (D, its trimmings, flames,
//! step digraphs, ...).

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// An ordered edge `(tail, head)`.
pub type Edge = (Vertex, Vertex);

/// Handle of an interned vertex. Ordering is lexicographic on names.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex(pub(crate) u32);

impl Vertex {
    pub(crate) fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Vertex({})", self.0)
    }
}

/// Interned, sorted, duplicate-free vertex names shared by a family of
/// digraphs.
#[derive(Debug, PartialEq, Eq)]
pub struct VertexSet {
    names: Vec<String>,
}

impl VertexSet {
    pub fn new<I, S>(names: I) -> Arc<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut names: Vec<String> = names.into_iter().map(Into::into).collect();
        names.sort();
        names.dedup();
        Arc::new(VertexSet { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<Vertex> {
        self.names
            .binary_search_by(|n| n.as_str().cmp(name))
            .ok()
            .map(|i| Vertex(i as u32))
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.names[v.index()]
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v.index() < self.names.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.names.len() as u32).map(Vertex)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

/// A finite simple digraph with a root that has no ingoing edges.
#[derive(Clone, PartialEq, Eq)]
pub struct RootedDigraph {
    verts: Arc<VertexSet>,
    root: Vertex,
    out_adj: Vec<Vec<Vertex>>,
    in_adj: Vec<Vec<Vertex>>,
    edge_count: usize,
}

impl fmt::Debug for RootedDigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootedDigraph(root={}, edges=[", self.name(self.root))?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}->{}", self.name(u), self.name(v))?;
        }
        write!(f, "])")
    }
}

impl RootedDigraph {
    /// Builds a digraph over an existing vertex family.
    ///
    /// Rejects self-loops and edges into the root; duplicate edges collapse
    /// (edge sets are subsets of `V×V`).
    pub fn new<I>(verts: Arc<VertexSet>, root: Vertex, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = Edge>,
    {
        if !verts.contains(root) {
            return Err(Error::invalid("root is not in the vertex set"));
        }
        let n = verts.len();
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if !verts.contains(u) || !verts.contains(v) {
                return Err(Error::invalid("edge endpoint outside the vertex set"));
            }
            if u == v {
                return Err(Error::SelfLoop(verts.name(u).to_owned()));
            }
            if v == root {
                return Err(Error::EdgeIntoRoot {
                    tail: verts.name(u).to_owned(),
                    root: verts.name(root).to_owned(),
                });
            }
            out_adj[u.index()].push(v);
            in_adj[v.index()].push(u);
        }
        let mut edge_count = 0;
        for adj in &mut out_adj {
            adj.sort();
            adj.dedup();
            edge_count += adj.len();
        }
        for adj in &mut in_adj {
            adj.sort();
            adj.dedup();
        }
        Ok(RootedDigraph {
            verts,
            root,
            out_adj,
            in_adj,
            edge_count,
        })
    }

    /// Convenience constructor: vertices are inferred from the root and the
    /// edge endpoints.
    pub fn from_edges(root: &str, edges: &[(&str, &str)]) -> Result<Self> {
        let mut names: Vec<String> = vec![root.to_owned()];
        for (u, v) in edges {
            names.push((*u).to_owned());
            names.push((*v).to_owned());
        }
        let verts = VertexSet::new(names);
        let root = verts.index_of(root).expect("root was interned");
        let edges: Vec<Edge> = edges
            .iter()
            .map(|(u, v)| {
                (
                    verts.index_of(u).expect("interned"),
                    verts.index_of(v).expect("interned"),
                )
            })
            .collect();
        RootedDigraph::new(verts, root, edges)
    }

    pub fn verts(&self) -> &Arc<VertexSet> {
        &self.verts
    }

    pub fn root(&self) -> Vertex {
        self.root
    }

    pub fn vertex_count(&self) -> usize {
        self.verts.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn name(&self, v: Vertex) -> &str {
        self.verts.name(v)
    }

    /// Looks a vertex up by name.
    pub fn vertex(&self, name: &str) -> Result<Vertex> {
        self.verts
            .index_of(name)
            .ok_or_else(|| Error::UnknownVertex(name.to_owned()))
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.verts.iter()
    }

    pub fn non_root_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        let root = self.root;
        self.verts.iter().filter(move |&v| v != root)
    }

    pub fn out_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.out_adj[v.index()]
    }

    pub fn in_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.in_adj[v.index()]
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.out_adj[v.index()].len()
    }

    pub fn in_degree(&self, v: Vertex) -> usize {
        self.in_adj[v.index()].len()
    }

    /// The set of ingoing edges of `v`.
    pub fn in_edges(&self, v: Vertex) -> impl Iterator<Item = Edge> + '_ {
        self.in_adj[v.index()].iter().map(move |&u| (u, v))
    }

    pub fn out_edges(&self, v: Vertex) -> impl Iterator<Item = Edge> + '_ {
        self.out_adj[v.index()].iter().map(move |&w| (v, w))
    }

    pub fn in_edge_set(&self, v: Vertex) -> BTreeSet<Edge> {
        self.in_edges(v).collect()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.out_adj[u.index()].binary_search(&v).is_ok()
    }

    pub fn has_vertex(&self, v: Vertex) -> bool {
        self.verts.contains(v)
    }

    /// All edges in lexicographic `(tail, head)` order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.verts
            .iter()
            .flat_map(move |u| self.out_adj[u.index()].iter().map(move |&v| (u, v)))
    }

    pub fn edge_set(&self) -> BTreeSet<Edge> {
        self.edges().collect()
    }

    /// Returns a copy with the given edges removed (absent edges are ignored).
    pub fn delete_edges<I>(&self, remove: I) -> Self
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut out = self.clone();
        for (u, v) in remove {
            if let Ok(pos) = out.out_adj[u.index()].binary_search(&v) {
                out.out_adj[u.index()].remove(pos);
                let ipos = out.in_adj[v.index()]
                    .binary_search(&u)
                    .expect("in/out adjacency in sync");
                out.in_adj[v.index()].remove(ipos);
                out.edge_count -= 1;
            }
        }
        out
    }

    pub fn delete_edge(&self, u: Vertex, v: Vertex) -> Self {
        self.delete_edges([(u, v)])
    }

    /// `D - rv`: the digraph with the root edge into `v` removed (a no-op
    /// when that edge is absent).
    pub fn without_root_edge(&self, v: Vertex) -> Self {
        self.delete_edge(self.root, v)
    }

    pub fn add_edge(&self, u: Vertex, v: Vertex) -> Result<Self> {
        if !self.verts.contains(u) || !self.verts.contains(v) {
            return Err(Error::invalid("edge endpoint outside the vertex set"));
        }
        if u == v {
            return Err(Error::SelfLoop(self.name(u).to_owned()));
        }
        if v == self.root {
            return Err(Error::EdgeIntoRoot {
                tail: self.name(u).to_owned(),
                root: self.name(self.root).to_owned(),
            });
        }
        let mut out = self.clone();
        if let Err(pos) = out.out_adj[u.index()].binary_search(&v) {
            out.out_adj[u.index()].insert(pos, v);
            let ipos = out.in_adj[v.index()]
                .binary_search(&u)
                .expect_err("in/out adjacency in sync");
            out.in_adj[v.index()].insert(ipos, u);
            out.edge_count += 1;
        }
        Ok(out)
    }

    /// Restricts the ingoing edges of `v` to `keep` (edges of other heads are
    /// untouched).
    pub fn restrict_in_edges(&self, v: Vertex, keep: &BTreeSet<Edge>) -> Self {
        let drop: Vec<Edge> = self.in_edges(v).filter(|e| !keep.contains(e)).collect();
        self.delete_edges(drop)
    }

    /// The subdigraph induced on `keep` (which must contain the root). The
    /// result lives over a fresh, smaller vertex set.
    pub fn induced_subdigraph(&self, keep: &BTreeSet<Vertex>) -> Result<Self> {
        if !keep.contains(&self.root) {
            return Err(Error::invalid("induced subdigraph must keep the root"));
        }
        let names: Vec<String> = keep.iter().map(|&v| self.name(v).to_owned()).collect();
        let verts = VertexSet::new(names);
        let root = verts.index_of(self.name(self.root)).expect("kept");
        let edges: Vec<Edge> = self
            .edges()
            .filter(|(u, v)| keep.contains(u) && keep.contains(v))
            .map(|(u, v)| {
                (
                    verts.index_of(self.name(u)).expect("kept"),
                    verts.index_of(self.name(v)).expect("kept"),
                )
            })
            .collect();
        RootedDigraph::new(verts, root, edges)
    }

    /// True when both digraphs are over the same vertex family (same names).
    pub fn same_family(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.verts, &other.verts) || self.verts == other.verts)
            && self.root == other.root
    }

    /// True when `self` is a spanning subdigraph of `other`: same vertex
    /// family, same root, edges contained.
    pub fn is_spanning_subdigraph_of(&self, other: &Self) -> bool {
        self.same_family(other)
            && self
                .edges()
                .all(|(u, v)| other.has_edge(u, v))
    }

    /// Re-embeds this digraph into a (super-)family of vertices, matching by
    /// name. Fails if a vertex name is missing from `verts` or the root name
    /// differs from `root`.
    pub fn align_to(&self, verts: &Arc<VertexSet>, root: Vertex) -> Result<Self> {
        if verts.name(root) != self.name(self.root) {
            return Err(Error::invalid(format!(
                "root mismatch: `{}` vs `{}`",
                verts.name(root),
                self.name(self.root),
            )));
        }
        let mut edges = Vec::with_capacity(self.edge_count);
        for (u, v) in self.edges() {
            let u2 = verts
                .index_of(self.name(u))
                .ok_or_else(|| Error::UnknownVertex(self.name(u).to_owned()))?;
            let v2 = verts
                .index_of(self.name(v))
                .ok_or_else(|| Error::UnknownVertex(self.name(v).to_owned()))?;
            edges.push((u2, v2));
        }
        // Non-edge vertices must exist in the target family too.
        for v in self.vertices() {
            if verts.index_of(self.name(v)).is_none() {
                return Err(Error::UnknownVertex(self.name(v).to_owned()));
            }
        }
        RootedDigraph::new(Arc::clone(verts), root, edges)
    }

    /// Vertices reachable from `from` by directed paths avoiding `forbidden`
    /// entirely (the start itself is included and must not be forbidden).
    pub fn reachable(&self, from: Vertex, forbidden: &BTreeSet<Vertex>) -> Result<BTreeSet<Vertex>> {
        if !self.verts.contains(from) {
            return Err(Error::UnknownVertex(format!("#{}", from.0)));
        }
        if forbidden.contains(&from) {
            return Err(Error::invalid("reachability start is forbidden"));
        }
        let mut seen = vec![false; self.verts.len()];
        seen[from.index()] = true;
        let mut queue = std::collections::VecDeque::from([from]);
        let mut out = BTreeSet::from([from]);
        while let Some(u) = queue.pop_front() {
            for &w in self.out_neighbors(u) {
                if !seen[w.index()] && !forbidden.contains(&w) {
                    seen[w.index()] = true;
                    out.insert(w);
                    queue.push_back(w);
                }
            }
        }
        Ok(out)
    }

    /// Pretty edge rendering for diagnostics: `u->v`.
    pub fn edge_label(&self, (u, v): Edge) -> String {
        format!("{}->{}", self.name(u), self.name(v))
    }
}

/// Node of a split digraph: the root survives unsplit, every other vertex
/// `v` becomes the pair `tail(v) -> head(v)` where `tail` inherits the
/// ingoing and `head` the outgoing edges.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum SplitNode {
    Root,
    Tail(Vertex),
    Head(Vertex),
}

/// Classification of a split-digraph edge.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SplitEdge {
    /// Image of a base edge `u -> v`.
    FromBase(Edge),
    /// The internal edge `tail(v) -> head(v)` carrying vertex `v`.
    Internal(Vertex),
}

/// The vertex-splitting transform. Edge-disjoint `r -> tail(v)` path
/// systems here correspond bijectively to internally disjoint `r -> v`
/// path systems in the base digraph.
#[derive(Clone, Debug)]
pub struct SplitDigraph {
    base: RootedDigraph,
    edges: BTreeSet<(SplitNode, SplitNode)>,
}

impl SplitDigraph {
    pub fn of(base: &RootedDigraph) -> Self {
        let mut edges = BTreeSet::new();
        let root = base.root();
        for v in base.non_root_vertices() {
            edges.insert((SplitNode::Tail(v), SplitNode::Head(v)));
        }
        for (u, v) in base.edges() {
            let from = if u == root {
                SplitNode::Root
            } else {
                SplitNode::Head(u)
            };
            edges.insert((from, SplitNode::Tail(v)));
        }
        SplitDigraph {
            base: base.clone(),
            edges,
        }
    }

    pub fn base(&self) -> &RootedDigraph {
        &self.base
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (SplitNode, SplitNode)> + '_ {
        self.edges.iter().copied()
    }

    pub fn tail_of(&self, v: Vertex) -> SplitNode {
        debug_assert!(v != self.base.root());
        SplitNode::Tail(v)
    }

    pub fn head_of(&self, v: Vertex) -> SplitNode {
        debug_assert!(v != self.base.root());
        SplitNode::Head(v)
    }

    /// Maps a base edge onto its split image.
    pub fn split_of_base_edge(&self, (u, v): Edge) -> (SplitNode, SplitNode) {
        let from = if u == self.base.root() {
            SplitNode::Root
        } else {
            SplitNode::Head(u)
        };
        (from, SplitNode::Tail(v))
    }

    /// Classifies a split edge (reverse mapping).
    pub fn classify(&self, edge: (SplitNode, SplitNode)) -> Option<SplitEdge> {
        if !self.edges.contains(&edge) {
            return None;
        }
        Some(match edge {
            (SplitNode::Tail(v), SplitNode::Head(w)) if v == w => SplitEdge::Internal(v),
            (SplitNode::Root, SplitNode::Tail(v)) => SplitEdge::FromBase((self.base.root(), v)),
            (SplitNode::Head(u), SplitNode::Tail(v)) => SplitEdge::FromBase((u, v)),
            _ => unreachable!("split digraphs contain no other edge shape"),
        })
    }

    /// Contracts every `tail(v) -> head(v)` pair back to `v`, recovering the
    /// base digraph exactly.
    pub fn contract(&self) -> RootedDigraph {
        let root = self.base.root();
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .filter_map(|&e| match self.classify(e) {
                Some(SplitEdge::FromBase(b)) => Some(b),
                _ => None,
            })
            .collect();
        RootedDigraph::new(Arc::clone(self.base.verts()), root, edges)
            .expect("contracting a split digraph yields the valid base")
    }

    pub fn node_label(&self, node: SplitNode) -> String {
        match node {
            SplitNode::Root => self.base.name(self.base.root()).to_owned(),
            SplitNode::Tail(v) => format!("t:{}", self.base.name(v)),
            SplitNode::Head(v) => format!("h:{}", self.base.name(v)),
        }
    }
}

/// Splits every non-root vertex into an edge; see [`SplitDigraph`].
pub fn split(d: &RootedDigraph) -> SplitDigraph {
    SplitDigraph::of(d)
}

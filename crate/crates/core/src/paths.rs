//! Paths, path systems, separations, and the certificates tying them
//! together.
//!
//! A path system carries its intended shape as a [`SystemKind`] and is
//! validated on construction, so a value of these types is always
//! well-formed with respect to the digraph it was built against.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::digraph::{Edge, RootedDigraph, Vertex};
use crate::error::{Error, Result};

/// A vertex-simple directed path. The singleton sequence `(v)` is a valid
/// `v -> v` path.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    verts: Vec<Vertex>,
}

impl fmt::Debug for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Path({:?})", self.verts.iter().map(|v| v.0).collect::<Vec<_>>())
    }
}

impl Path {
    /// Builds a path, checking vertex distinctness and that consecutive
    /// pairs are edges of `d`.
    pub fn new(d: &RootedDigraph, verts: Vec<Vertex>) -> Result<Self> {
        if verts.is_empty() {
            return Err(Error::invalid("a path has at least one vertex"));
        }
        let mut seen = BTreeSet::new();
        for &v in &verts {
            if !d.has_vertex(v) {
                return Err(Error::UnknownVertex(format!("#{}", v.0)));
            }
            if !seen.insert(v) {
                return Err(Error::invalid(format!(
                    "path repeats vertex `{}`",
                    d.name(v)
                )));
            }
        }
        for w in verts.windows(2) {
            if !d.has_edge(w[0], w[1]) {
                return Err(Error::invalid(format!(
                    "missing edge {}",
                    d.edge_label((w[0], w[1]))
                )));
            }
        }
        Ok(Path { verts })
    }

    pub fn from_names(d: &RootedDigraph, names: &[&str]) -> Result<Self> {
        let verts = names
            .iter()
            .map(|n| d.vertex(n))
            .collect::<Result<Vec<_>>>()?;
        Path::new(d, verts)
    }

    pub fn singleton(v: Vertex) -> Self {
        Path { verts: vec![v] }
    }

    /// Internal constructor for sequences already known to be simple; edge
    /// membership is still the caller's obligation.
    pub(crate) fn from_simple_sequence(verts: Vec<Vertex>) -> Self {
        debug_assert!(!verts.is_empty());
        Path { verts }
    }

    pub fn first(&self) -> Vertex {
        self.verts[0]
    }

    pub fn last(&self) -> Vertex {
        *self.verts.last().expect("nonempty")
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_singleton(&self) -> bool {
        self.verts.len() == 1
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.verts
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.verts.contains(&v)
    }

    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.verts.iter().position(|&x| x == v)
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.verts.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn last_edge(&self) -> Option<Edge> {
        (self.verts.len() >= 2).then(|| {
            let n = self.verts.len();
            (self.verts[n - 2], self.verts[n - 1])
        })
    }

    /// Vertices strictly between the endpoints.
    pub fn internal_vertices(&self) -> &[Vertex] {
        if self.verts.len() <= 2 {
            &[]
        } else {
            &self.verts[1..self.verts.len() - 1]
        }
    }

    /// The sub-path from position `from` through position `to` (inclusive).
    pub fn segment(&self, from: usize, to: usize) -> Path {
        Path {
            verts: self.verts[from..=to].to_vec(),
        }
    }

    /// Joins `self` with `tail`, which must start where `self` ends.
    pub fn join(&self, tail: &Path) -> Result<Path> {
        if self.last() != tail.first() {
            return Err(Error::invalid("joined paths do not share an endpoint"));
        }
        let mut verts = self.verts.clone();
        verts.extend_from_slice(&tail.verts[1..]);
        let distinct: BTreeSet<_> = verts.iter().collect();
        if distinct.len() != verts.len() {
            return Err(Error::invalid("joined paths revisit a vertex"));
        }
        Ok(Path { verts })
    }

    pub fn render(&self, d: &RootedDigraph) -> String {
        self.verts
            .iter()
            .map(|&v| d.name(v))
            .collect::<Vec<_>>()
            .join("·")
    }
}

/// The shape a path system claims to have.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SystemKind {
    /// Internally disjoint `r -> target` paths: pairwise intersections are
    /// contained in `{r, target}`.
    InternallyDisjoint { target: Vertex },
    /// Pairwise vertex-disjoint paths, each meeting `sources` exactly in its
    /// first vertex and `sinks` exactly in its last.
    DisjointXy {
        sources: BTreeSet<Vertex>,
        sinks: BTreeSet<Vertex>,
    },
    /// Paths sharing only their common first vertex, the root.
    RootFan,
    /// Paths sharing only their common last vertex `target`.
    InFan { target: Vertex },
}

/// A validated set of paths of one of the four shapes, ordered
/// deterministically.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PathSystem {
    kind: SystemKind,
    paths: Vec<Path>,
}

impl PathSystem {
    pub fn new(d: &RootedDigraph, kind: SystemKind, mut paths: Vec<Path>) -> Result<Self> {
        paths.sort();
        paths.dedup();
        let sys = PathSystem { kind, paths };
        sys.validate(d)?;
        Ok(sys)
    }

    pub fn empty(kind: SystemKind) -> Self {
        PathSystem {
            kind,
            paths: Vec::new(),
        }
    }

    pub fn kind(&self) -> &SystemKind {
        &self.kind
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn iter(&self) -> impl Iterator<Item = &Path> {
        self.paths.iter()
    }

    /// First vertices of the paths.
    pub fn v_first(&self) -> BTreeSet<Vertex> {
        self.paths.iter().map(Path::first).collect()
    }

    /// Last vertices of the paths.
    pub fn v_last(&self) -> BTreeSet<Vertex> {
        self.paths.iter().map(Path::last).collect()
    }

    /// Last edges of the paths (singleton paths contribute none).
    pub fn a_last(&self) -> BTreeSet<Edge> {
        self.paths.iter().filter_map(Path::last_edge).collect()
    }

    /// All edges used by the system.
    pub fn edge_set(&self) -> BTreeSet<Edge> {
        self.paths.iter().flat_map(Path::edges).collect()
    }

    /// Ingoing edges of `v` used by the system.
    pub fn in_edges_of(&self, v: Vertex) -> BTreeSet<Edge> {
        self.edge_set()
            .into_iter()
            .filter(|&(_, h)| h == v)
            .collect()
    }

    /// Checks every invariant of the claimed kind against `d`.
    pub fn validate(&self, d: &RootedDigraph) -> Result<()> {
        for p in &self.paths {
            Path::new(d, p.vertices().to_vec())?;
        }
        match &self.kind {
            SystemKind::InternallyDisjoint { target } => {
                let r = d.root();
                for p in &self.paths {
                    if p.first() != r || p.last() != *target {
                        return Err(Error::invalid("path is not an r -> v path"));
                    }
                    if p.is_singleton() {
                        return Err(Error::invalid("r -> v path cannot be a singleton"));
                    }
                }
                self.check_shared_vertices(d, &BTreeSet::from([r, *target]))?;
            }
            SystemKind::DisjointXy { sources, sinks } => {
                for p in &self.paths {
                    if !sources.contains(&p.first()) {
                        return Err(Error::invalid("path does not start in the source set"));
                    }
                    if !sinks.contains(&p.last()) {
                        return Err(Error::invalid("path does not end in the sink set"));
                    }
                    for (i, &v) in p.vertices().iter().enumerate() {
                        if i > 0 && sources.contains(&v) {
                            return Err(Error::invalid(
                                "path re-enters the source set after its first vertex",
                            ));
                        }
                        if i + 1 < p.len() && sinks.contains(&v) {
                            return Err(Error::invalid(
                                "path touches the sink set before its last vertex",
                            ));
                        }
                    }
                }
                self.check_shared_vertices(d, &BTreeSet::new())?;
            }
            SystemKind::RootFan => {
                let r = d.root();
                for p in &self.paths {
                    if p.first() != r {
                        return Err(Error::invalid("fan path does not start at the root"));
                    }
                }
                self.check_shared_vertices(d, &BTreeSet::from([r]))?;
            }
            SystemKind::InFan { target } => {
                for p in &self.paths {
                    if p.last() != *target {
                        return Err(Error::invalid("infan path does not end at the target"));
                    }
                }
                self.check_shared_vertices(d, &BTreeSet::from([*target]))?;
            }
        }
        Ok(())
    }

    /// Pairwise intersections must be contained in `allowed`.
    fn check_shared_vertices(&self, d: &RootedDigraph, allowed: &BTreeSet<Vertex>) -> Result<()> {
        let mut owner: BTreeMap<Vertex, usize> = BTreeMap::new();
        for (i, p) in self.paths.iter().enumerate() {
            for &v in p.vertices() {
                if allowed.contains(&v) {
                    continue;
                }
                if let Some(&j) = owner.get(&v) {
                    if j != i {
                        return Err(Error::invalid(format!(
                            "paths share vertex `{}`",
                            d.name(v)
                        )));
                    }
                }
                owner.insert(v, i);
            }
        }
        Ok(())
    }

    pub fn render(&self, d: &RootedDigraph) -> String {
        let parts: Vec<String> = self.paths.iter().map(|p| p.render(d)).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

/// A separating set for `target`: the vertex set `S ⊆ V∖{r, v}`, plus a
/// flag meaning the edge `r -> v` itself belongs to the separating set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Separation {
    pub target: Vertex,
    pub vertices: BTreeSet<Vertex>,
    pub uses_root_edge: bool,
}

impl Separation {
    /// Checks the structural invariants and that `S ∪ {rv}` meets every
    /// `r -> v` path of `d`, via reachability after deleting the set.
    pub fn verify(&self, d: &RootedDigraph) -> Result<()> {
        let r = d.root();
        if self.target == r {
            return Err(Error::invalid("separation target is the root"));
        }
        if self.vertices.contains(&r) || self.vertices.contains(&self.target) {
            return Err(Error::invalid(
                "separation set must avoid the root and the target",
            ));
        }
        for &s in &self.vertices {
            if !d.has_vertex(s) {
                return Err(Error::UnknownVertex(format!("#{}", s.0)));
            }
        }
        if self.uses_root_edge && !d.has_edge(r, self.target) {
            return Err(Error::invalid(
                "separation flags the root edge but the digraph lacks it",
            ));
        }
        let host = if self.uses_root_edge {
            d.without_root_edge(self.target)
        } else {
            d.clone()
        };
        let reach = host.reachable(r, &self.vertices)?;
        if reach.contains(&self.target) {
            return Err(Error::invalid(
                "separation does not meet every r -> v path",
            ));
        }
        Ok(())
    }

    /// Number of separating elements (vertices plus the flagged edge).
    pub fn size(&self) -> usize {
        self.vertices.len() + usize::from(self.uses_root_edge)
    }
}

/// The element of a separation assigned to one path of a certificate.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum SeparationElement {
    Vertex(Vertex),
    RootEdge,
}

/// An internally disjoint `r -> v` system together with a separation chosen
/// one element per path: the element assigned to a path is an internal
/// vertex of that path, or the edge `rv` for the path `{rv}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MengerCertificate {
    pub system: PathSystem,
    pub separation: Separation,
    /// Parallel to `system.paths()`.
    pub assignment: Vec<SeparationElement>,
}

impl MengerCertificate {
    pub fn target(&self) -> Vertex {
        self.separation.target
    }

    pub fn size(&self) -> usize {
        self.system.len()
    }

    /// Full verification against `d`: system validity, the bijection between
    /// paths and separation elements, element-on-path membership, and the
    /// separation property itself.
    pub fn verify(&self, d: &RootedDigraph) -> Result<()> {
        let v = self.separation.target;
        match self.system.kind() {
            SystemKind::InternallyDisjoint { target } if *target == v => {}
            _ => {
                return Err(Error::invalid(
                    "certificate system is not an internally disjoint r -> v system",
                ))
            }
        }
        self.system.validate(d)?;
        self.separation.verify(d)?;
        if self.assignment.len() != self.system.len() {
            return Err(Error::invalid(
                "assignment length differs from the number of paths",
            ));
        }
        let mut used: BTreeSet<SeparationElement> = BTreeSet::new();
        for (path, elem) in self.system.iter().zip(&self.assignment) {
            match *elem {
                SeparationElement::Vertex(s) => {
                    if !self.separation.vertices.contains(&s) {
                        return Err(Error::invalid(
                            "assigned vertex is not in the separation set",
                        ));
                    }
                    if !path.internal_vertices().contains(&s) {
                        return Err(Error::invalid(
                            "assigned vertex is not internal to its path",
                        ));
                    }
                }
                SeparationElement::RootEdge => {
                    if !self.separation.uses_root_edge {
                        return Err(Error::invalid(
                            "assignment uses the root edge but the separation does not flag it",
                        ));
                    }
                    if path.vertices() != [d.root(), v] {
                        return Err(Error::invalid(
                            "the root edge can only be assigned to the path {rv}",
                        ));
                    }
                }
            }
            if !used.insert(*elem) {
                return Err(Error::invalid("assignment reuses a separation element"));
            }
        }
        if used.len() != self.separation.size() {
            return Err(Error::invalid(
                "assignment is not a bijection onto the separation",
            ));
        }
        Ok(())
    }
}

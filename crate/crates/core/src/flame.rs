//! Flame recognition, trimming, growing, maximal quasi-flames, and the
//! certified construction of a large spanning flame.
//!
//! A rooted digraph is a vertex-flame when every vertex's full in-edge set
//! is realizable as the exact last-edge set of an internally disjoint
//! system from the root; equivalently, at finite scale, when the local
//! connectivity equals the in-degree everywhere. The quasi-flame variant
//! (every finite subset realizable) collapses to the same predicate on
//! finite digraphs, because a witness for the full in-set restricts to a
//! witness for any subset by dropping whole paths; the subset-enumerating
//! check is kept behind [`QuasiMode::Strict`] for cross-checks.
//!
//! [`construct_large_flame`] realizes the recursive construction: replace
//! the input by a maximal quasi-flame, then fix one certified system per
//! vertex in order, deleting the unused in-edges right after each fix.
//! Every fact the recursion relies on (step digraphs staying large and
//! staying quasi-flames, the three state invariants) is re-verified at
//! every step rather than assumed; a failure aborts with the violated
//! property's name, and indicates a bug rather than a bad input.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::IteratorRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bubble::{self, largeness_check, largeness_verdict, LargenessReport};
use crate::digraph::{Edge, RootedDigraph, Vertex};
use crate::error::{Error, Result};
use crate::flow::{link_with_demands, LinkSpec};
use crate::menger::{self, covering_system, CoveringOutcome};
use crate::oracle::OracleLimits;
use crate::paths::{MengerCertificate, Path, PathSystem, SeparationElement, SystemKind};

/// Per-vertex flame status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlameStatus {
    Ok,
    Violated,
}

#[derive(Clone, Debug)]
pub struct VertexFlameStatus {
    pub vertex: Vertex,
    pub in_degree: usize,
    pub kappa: usize,
    /// A system whose last edges are exactly the in-edges, when one exists.
    pub witness: Option<PathSystem>,
    pub status: FlameStatus,
}

#[derive(Clone, Debug)]
pub struct FlameReport {
    pub per_vertex: Vec<VertexFlameStatus>,
}

impl FlameReport {
    pub fn is_flame(&self) -> bool {
        self.per_vertex
            .iter()
            .all(|s| s.status == FlameStatus::Ok)
    }

    pub fn violations(&self) -> impl Iterator<Item = &VertexFlameStatus> {
        self.per_vertex
            .iter()
            .filter(|s| s.status == FlameStatus::Violated)
    }
}

/// Flame test: at each vertex, either a covering system for the full
/// in-edge set (the witness) or the connectivity deficit.
pub fn is_flame(f: &RootedDigraph) -> Result<FlameReport> {
    let mut per_vertex = Vec::new();
    for v in f.non_root_vertices() {
        let in_set = f.in_edge_set(v);
        let in_degree = in_set.len();
        let entry = match covering_system(f, v, &in_set)? {
            CoveringOutcome::Covered(sys) => VertexFlameStatus {
                vertex: v,
                in_degree,
                kappa: sys.len(),
                witness: Some(sys),
                status: FlameStatus::Ok,
            },
            CoveringOutcome::Refuted(refutation) => VertexFlameStatus {
                vertex: v,
                in_degree,
                kappa: refutation.restricted_kappa,
                witness: None,
                status: FlameStatus::Violated,
            },
        };
        per_vertex.push(entry);
    }
    Ok(FlameReport { per_vertex })
}

/// How to decide the quasi-flame property.
#[derive(Clone, Copy, Debug)]
pub enum QuasiMode {
    /// Finite collapse: a flame is a quasi-flame and vice versa, since a
    /// full-in-set witness restricts to any subset.
    Collapsed,
    /// Literal subset enumeration, bounded; for oracle cross-checks.
    Strict(OracleLimits),
}

pub fn is_quasi_flame(f: &RootedDigraph, mode: QuasiMode) -> Result<bool> {
    match mode {
        QuasiMode::Collapsed => Ok(is_flame(f)?.is_flame()),
        QuasiMode::Strict(lim) => {
            if f.vertex_count() > lim.max_vertices {
                return Err(Error::BoundExceeded {
                    what: "strict quasi-flame vertex count",
                    limit: lim.max_vertices,
                    actual: f.vertex_count(),
                });
            }
            for v in f.non_root_vertices() {
                let in_edges: Vec<Edge> = f.in_edges(v).collect();
                for mask in 0..(1usize << in_edges.len()) {
                    let subset: BTreeSet<Edge> = in_edges
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask & (1 << i) != 0)
                        .map(|(_, &e)| e)
                        .collect();
                    if !covering_system(f, v, &subset)?.is_covered() {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
    }
}

fn resolve_order(d: &RootedDigraph, order: Option<&[Vertex]>) -> Result<Vec<Vertex>> {
    let default: Vec<Vertex> = d.non_root_vertices().collect();
    match order {
        None => Ok(default),
        Some(given) => {
            let as_set: BTreeSet<Vertex> = given.iter().copied().collect();
            let expected: BTreeSet<Vertex> = default.iter().copied().collect();
            if given.len() != expected.len() || as_set != expected {
                return Err(Error::invalid(
                    "order must enumerate every non-root vertex exactly once",
                ));
            }
            Ok(given.to_vec())
        }
    }
}

/// Trims each vertex in order down to the in-edges used by a maximum
/// system of the current digraph. The result preserves every local
/// connectivity and has exactly `κ(r, v)` in-edges at each `v`, so its
/// edge count meets the lower bound `Σ_v κ(r, v)`.
pub fn lovasz_trim(d: &RootedDigraph, order: Option<&[Vertex]>) -> Result<RootedDigraph> {
    let order = resolve_order(d, order)?;
    let mut cur = d.clone();
    for &u in &order {
        let cert = menger::max_system(&cur, u)?;
        let keep = cert.system.a_last();
        let drop: Vec<Edge> = cur.in_edges(u).filter(|e| !keep.contains(e)).collect();
        cur = cur.delete_edges(drop);
    }
    Ok(cur)
}

/// Extends a flame edge by edge (lexicographic scan, first edge whose
/// addition keeps the flame property at its head) until it is large.
pub fn flame_grow(d: &RootedDigraph, seed: &RootedDigraph) -> Result<RootedDigraph> {
    if !seed.is_spanning_subdigraph_of(d) {
        return Err(Error::invalid("seed is not a spanning subdigraph"));
    }
    if !is_flame(seed)?.is_flame() {
        return Err(Error::invalid("seed is not a flame"));
    }
    let mut e = seed.clone();
    loop {
        if largeness_verdict(&e, d)?.is_none() {
            return Ok(e);
        }
        let mut extended = false;
        for (u, v) in d.edges() {
            if e.has_edge(u, v) {
                continue;
            }
            let cand = e.add_edge(u, v)?;
            if covering_system(&cand, v, &cand.in_edge_set(v))?.is_covered() {
                e = cand;
                extended = true;
                break;
            }
        }
        if !extended {
            return Err(Error::internal(
                "flame-extension",
                "no single edge extends the flame although it is not large",
            ));
        }
    }
}

/// Greedy ⊆-maximal quasi-flame: scan edges lexicographically, keep each
/// edge whose addition leaves its head's in-set coverable, and repeat
/// until a full pass adds nothing (so no single leftover edge is
/// addable).
pub fn maximal_quasi_flame(d: &RootedDigraph) -> Result<RootedDigraph> {
    let mut f = RootedDigraph::new(Arc::clone(d.verts()), d.root(), [])?;
    loop {
        let mut added = false;
        for (u, v) in d.edges() {
            if f.has_edge(u, v) {
                continue;
            }
            let cand = f.add_edge(u, v)?;
            if covering_system(&cand, v, &cand.in_edge_set(v))?.is_covered() {
                f = cand;
                added = true;
            }
        }
        if !added {
            return Ok(f);
        }
    }
}

/// One fixed step of the construction.
#[derive(Clone, Debug)]
pub struct StepRecord {
    pub vertex: Vertex,
    /// The system fixed for this vertex, certified against the step
    /// digraph and the quasi-flame base.
    pub certificate: MengerCertificate,
    pub deleted: Vec<Edge>,
}

/// Snapshot of the recursion: the enumeration, the current (trimmed)
/// digraph, and the systems fixed so far.
#[derive(Clone, Debug)]
pub struct ConstructionState {
    pub step: usize,
    pub order: Vec<Vertex>,
    pub current: RootedDigraph,
    pub systems: Vec<MengerCertificate>,
}

impl ConstructionState {
    pub fn output_edges(&self) -> BTreeSet<Edge> {
        self.systems
            .iter()
            .flat_map(|c| c.system.edge_set())
            .collect()
    }

    /// The three invariants of the recursion:
    /// 1. every fixed system is certified (valid in the base, separation
    ///    re-checked by reachability) and still lies in the current digraph;
    /// 2. each system's last-edge set covers the in-edges that earlier
    ///    systems gave its vertex;
    /// 3. each system uses only protected in-edges of earlier vertices.
    pub fn verify_properties(&self, base: &RootedDigraph) -> Result<()> {
        for (m, cert) in self.systems.iter().enumerate() {
            cert.verify(base).map_err(|e| {
                Error::internal(
                    "state-certified-systems",
                    format!("system {m} fails verification in the base: {e}"),
                )
            })?;
            for (a, b) in cert.system.edge_set() {
                if !self.current.has_edge(a, b) {
                    return Err(Error::internal(
                        "state-systems-survive",
                        format!(
                            "system {m} lost edge {} to a later deletion",
                            base.edge_label((a, b))
                        ),
                    ));
                }
            }
        }
        for (n, cert_n) in self.systems.iter().enumerate() {
            let vn = self.order[n];
            let a_last = cert_n.system.a_last();
            for cert_m in self.systems.iter().take(n) {
                if !cert_m.system.in_edges_of(vn).is_subset(&a_last) {
                    return Err(Error::internal(
                        "state-covers-prior-in-edges",
                        format!("fixed system at `{}` misses a protected in-edge", base.name(vn)),
                    ));
                }
            }
            for (m, cert_m) in self.systems.iter().enumerate().take(n) {
                let vm = self.order[m];
                if !cert_n.system.in_edges_of(vm).is_subset(&cert_m.system.a_last()) {
                    return Err(Error::internal(
                        "state-respects-fixed-last-edges",
                        format!(
                            "system {n} enters `{}` outside its fixed last edges",
                            base.name(vm)
                        ),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Result of [`construct_large_flame`].
#[derive(Clone, Debug)]
pub struct LargeFlameOutput {
    /// The spanning subdigraph: a flame, large in the original input.
    pub flame: RootedDigraph,
    /// The ⊆-maximal quasi-flame the recursion ran in.
    pub base_quasi_flame: RootedDigraph,
    pub order: Vec<Vertex>,
    pub steps: Vec<StepRecord>,
    /// Per-vertex combined certificates against the original input: the
    /// system lies in the flame, its last edges are exactly the flame's
    /// in-edges, and its separation separates in both digraphs.
    pub per_vertex: Vec<(Vertex, MengerCertificate)>,
}

/// Builds the system fixed at `vn`: initial segments of the bubble
/// certificate up to the separation, linked across the bubble interior to
/// in-neighbors covering every protected in-edge, then extended into `vn`.
fn recombine_step_system(
    current: &RootedDigraph,
    vn: Vertex,
    bubble_cert: &MengerCertificate,
    covering: &PathSystem,
) -> Result<PathSystem> {
    let root = current.root();
    let s_set = &bubble_cert.separation.vertices;
    let has_root_edge = bubble_cert.separation.uses_root_edge;

    // Initial segments (root to assigned separation vertex) and the edge
    // pool donated by the post-separation parts of both systems.
    let mut initial: Vec<(Vertex, Path)> = Vec::new();
    let mut pool: BTreeSet<Edge> = BTreeSet::new();
    for (path, elem) in bubble_cert.system.iter().zip(&bubble_cert.assignment) {
        let SeparationElement::Vertex(sv) = *elem else {
            continue;
        };
        let pos = path.position(sv).expect("assigned vertex lies on its path");
        initial.push((sv, path.segment(0, pos)));
        if pos + 2 <= path.len() {
            pool.extend(path.segment(pos, path.len() - 2).edges());
        }
    }
    for qpath in covering.iter() {
        let last_s = qpath
            .vertices()
            .iter()
            .rposition(|x| s_set.contains(x))
            .ok_or_else(|| {
                Error::internal(
                    "step-covering-separated",
                    "a covering path avoids the separation",
                )
            })?;
        pool.extend(qpath.segment(last_s, qpath.len() - 2).edges());
    }

    let sinks: BTreeSet<Vertex> = current
        .in_neighbors(vn)
        .iter()
        .copied()
        .filter(|&w| w != root)
        .collect();
    let required_sinks: BTreeSet<Vertex> = covering
        .iter()
        .map(|p| p.vertices()[p.len() - 2])
        .collect();
    let linked = link_with_demands(
        current,
        &LinkSpec {
            edge_pool: &pool,
            sources: s_set,
            required_sources: s_set,
            sinks: &sinks,
            required_sinks: &required_sinks,
            strict: false,
            forbid: Some(vn),
        },
    )
    .ok_or_else(|| {
        Error::internal(
            "step-linkage",
            "no linkage joins the separation to the protected in-neighbors",
        )
    })?;

    let mut by_start: std::collections::BTreeMap<Vertex, Vec<Vertex>> = std::collections::BTreeMap::new();
    for lp in linked {
        by_start.insert(lp[0], lp);
    }
    let mut paths: Vec<Path> = Vec::new();
    for (sv, head) in &initial {
        let tail = by_start.remove(sv).ok_or_else(|| {
            Error::internal("step-linkage", "a separation vertex has no linked path")
        })?;
        let mut verts = head.vertices().to_vec();
        verts.extend_from_slice(&tail[1..]);
        verts.push(vn);
        paths.push(Path::new(current, verts).map_err(|e| {
            Error::internal(
                "step-recombination",
                format!("recombined walk is not a simple path: {e}"),
            )
        })?);
    }
    if has_root_edge {
        paths.push(Path::new(current, vec![root, vn])?);
    }
    PathSystem::new(current, SystemKind::InternallyDisjoint { target: vn }, paths).map_err(|e| {
        Error::internal(
            "step-recombination",
            format!("recombined system is not internally disjoint: {e}"),
        )
    })
}

/// The full certified construction. Fails only on invalid inputs or on an
/// internal invariant violation (a bug), never on a well-formed digraph.
pub fn construct_large_flame(
    d: &RootedDigraph,
    order: Option<&[Vertex]>,
) -> Result<LargeFlameOutput> {
    let order = resolve_order(d, order)?;
    let base = maximal_quasi_flame(d)?;
    let mut state = ConstructionState {
        step: 0,
        order: order.clone(),
        current: base.clone(),
        systems: Vec::new(),
    };
    let mut steps: Vec<StepRecord> = Vec::new();

    for (n, &vn) in order.iter().enumerate() {
        state.step = n;
        // The step digraph must be large over the base and a quasi-flame.
        if let Some(edge) = largeness_verdict(&state.current, &base)? {
            return Err(Error::internal(
                "step-largeness",
                format!(
                    "step {n}: trimmed digraph lost largeness at {}",
                    base.edge_label(edge)
                ),
            ));
        }
        if !is_flame(&state.current)?.is_flame() {
            return Err(Error::internal(
                "step-quasi-flame",
                format!("step {n}: trimmed digraph lost the covering property"),
            ));
        }

        // The separation: entrance of the largest bubble of the step
        // digraph, which is a separation of the base as well.
        let mb = bubble::max_bubble(&state.current, vn)?;
        let bubble_cert = mb.certificate;
        bubble_cert.separation.verify(&base).map_err(|e| {
            Error::internal(
                "step-separation-transfer",
                format!("step {n}: bubble entrance does not separate in the base: {e}"),
            )
        })?;

        // Protected in-edges of vn fixed by earlier systems (minus the
        // root edge, which re-enters as its own path).
        let mut protected: BTreeSet<Edge> = state
            .systems
            .iter()
            .flat_map(|c| c.system.in_edges_of(vn))
            .collect();
        let had_root_edge = protected.remove(&(base.root(), vn));
        if protected.len() > n {
            return Err(Error::internal(
                "step-protected-bound",
                format!("step {n}: more protected in-edges than prior systems"),
            ));
        }
        if had_root_edge && !bubble_cert.separation.uses_root_edge {
            return Err(Error::internal(
                "step-root-edge",
                format!("step {n}: a prior system used a root edge the step digraph lacks"),
            ));
        }
        let covering = match covering_system(&state.current, vn, &protected)? {
            CoveringOutcome::Covered(sys) => sys,
            CoveringOutcome::Refuted(_) => {
                return Err(Error::internal(
                    "step-covering",
                    format!(
                        "step {n}: quasi-flame failed to cover the protected in-edges of `{}`",
                        base.name(vn)
                    ),
                ))
            }
        };

        let system = recombine_step_system(&state.current, vn, &bubble_cert, &covering)?;
        if !protected.is_subset(&system.a_last()) {
            return Err(Error::internal(
                "step-covers-protected",
                format!("step {n}: fixed system drops a protected in-edge"),
            ));
        }
        let mut assignment = Vec::with_capacity(system.len());
        for path in system.iter() {
            if path.vertices() == [base.root(), vn] {
                assignment.push(SeparationElement::RootEdge);
                continue;
            }
            let mut hits = path
                .internal_vertices()
                .iter()
                .filter(|x| bubble_cert.separation.vertices.contains(x));
            let sv = hits.next().copied().ok_or_else(|| {
                Error::internal("step-assignment", "a fixed path avoids the separation")
            })?;
            if hits.next().is_some() {
                return Err(Error::internal(
                    "step-assignment",
                    "a fixed path crosses the separation twice",
                ));
            }
            assignment.push(SeparationElement::Vertex(sv));
        }
        let certificate = MengerCertificate {
            system,
            separation: bubble_cert.separation.clone(),
            assignment,
        };
        certificate.verify(&state.current)?;
        certificate.verify(&base)?;

        let keep = certificate.system.a_last();
        let deleted: Vec<Edge> = state
            .current
            .in_edges(vn)
            .filter(|e| !keep.contains(e))
            .collect();
        state.current = state.current.delete_edges(deleted.iter().copied());
        state.systems.push(certificate.clone());
        state.verify_properties(&base)?;
        steps.push(StepRecord {
            vertex: vn,
            certificate,
            deleted,
        });
    }

    let flame = RootedDigraph::new(
        Arc::clone(d.verts()),
        d.root(),
        state.output_edges(),
    )?;
    if !is_flame(&flame)?.is_flame() {
        return Err(Error::internal(
            "output-flame",
            "constructed digraph is not a flame",
        ));
    }
    let report: LargenessReport = largeness_check(&flame, d)?;
    if !report.large {
        return Err(Error::internal(
            "output-largeness",
            format!(
                "constructed flame is not large; violating edge {:?}",
                report.violating_edge.map(|e| d.edge_label(e))
            ),
        ));
    }
    for (v, cert) in &report.certificates {
        if cert.system.a_last() != flame.in_edge_set(*v) {
            return Err(Error::internal(
                "output-combined-witness",
                format!(
                    "certificate at `{}` does not end exactly on the flame's in-edges",
                    d.name(*v)
                ),
            ));
        }
    }
    // The retained per-step systems are combined witnesses too: the
    // protection discipline forces their last edges to be exactly the
    // output's in-edges.
    for step in &steps {
        if step.certificate.system.a_last() != flame.in_edge_set(step.vertex) {
            return Err(Error::internal(
                "output-retained-witness",
                format!(
                    "retained system at `{}` does not end exactly on the flame's in-edges",
                    d.name(step.vertex)
                ),
            ));
        }
    }
    Ok(LargeFlameOutput {
        flame,
        base_quasi_flame: base,
        order,
        steps,
        per_vertex: report.certificates,
    })
}

/// A countable digraph presented vertex by vertex; item `i` brings the
/// `i`-th non-root vertex and all its edges to the root or to earlier
/// vertices.
pub trait PrefixSource {
    fn root_name(&self) -> String;
    /// `None` when the source is exhausted (finite generators only).
    fn item(&self, index: usize) -> Option<PrefixItem>;
}

#[derive(Clone, Debug)]
pub struct PrefixItem {
    pub name: String,
    /// Edges touching this vertex whose other endpoint was already yielded.
    pub edges: Vec<(String, String)>,
}

/// A construction run on the finite prefix of a generated digraph. All
/// certificates are relative to that prefix; nothing is claimed about the
/// full generated object.
#[derive(Clone, Debug)]
pub struct PrefixReport {
    pub k: usize,
    pub digraph: RootedDigraph,
    pub output: LargeFlameOutput,
    /// Vertices whose certificate is unchanged from the `k - 1` prefix.
    pub survived_from_previous: Vec<String>,
    /// Always true; carried so serialized reports are self-describing.
    pub prefix_relative: bool,
}

fn prefix_digraph(gen: &dyn PrefixSource, k: usize) -> Result<RootedDigraph> {
    let root = gen.root_name();
    let mut names: Vec<String> = vec![root.clone()];
    let mut seen: BTreeSet<String> = BTreeSet::from([root.clone()]);
    let mut edges: Vec<(String, String)> = Vec::new();
    for i in 0..k {
        let item = gen
            .item(i)
            .ok_or_else(|| Error::invalid(format!("generator is exhausted before index {i}")))?;
        if !seen.insert(item.name.clone()) {
            return Err(Error::invalid(format!(
                "generator yields vertex `{}` twice",
                item.name
            )));
        }
        names.push(item.name.clone());
        for (a, b) in &item.edges {
            if a != &item.name && b != &item.name {
                return Err(Error::invalid(
                    "generator item carries an edge not touching the new vertex",
                ));
            }
            if !seen.contains(a) || !seen.contains(b) {
                return Err(Error::invalid(format!(
                    "generator edge {a} -> {b} touches an unseen vertex",
                )));
            }
            edges.push((a.clone(), b.clone()));
        }
    }
    let verts = crate::digraph::VertexSet::new(names);
    let root_v = verts.index_of(&root).expect("root interned");
    let mapped: Vec<Edge> = edges
        .iter()
        .map(|(a, b)| {
            (
                verts.index_of(a).expect("interned"),
                verts.index_of(b).expect("interned"),
            )
        })
        .collect();
    RootedDigraph::new(verts, root_v, mapped)
}

/// Name-based signature of a certificate, for comparisons across prefixes
/// of different sizes.
fn certificate_signature(d: &RootedDigraph, cert: &MengerCertificate) -> String {
    let mut parts: Vec<String> = cert
        .system
        .iter()
        .map(|p| p.render(d))
        .collect();
    parts.push(format!(
        "S={:?};rv={}",
        cert.separation
            .vertices
            .iter()
            .map(|&v| d.name(v))
            .collect::<Vec<_>>(),
        cert.separation.uses_root_edge
    ));
    parts.join("|")
}

/// Runs the construction on the first `k` generated vertices and reports
/// which per-vertex certificates survived from the `k - 1` prefix.
pub fn prefix_construct(gen: &dyn PrefixSource, k: usize) -> Result<PrefixReport> {
    if k == 0 {
        return Err(Error::invalid("prefix length must be positive"));
    }
    let digraph = prefix_digraph(gen, k)?;
    let output = construct_large_flame(&digraph, None)?;
    let mut survived = Vec::new();
    if k > 1 {
        let prev_digraph = prefix_digraph(gen, k - 1)?;
        let prev = construct_large_flame(&prev_digraph, None)?;
        let current: std::collections::BTreeMap<String, String> = output
            .per_vertex
            .iter()
            .map(|(v, c)| (digraph.name(*v).to_owned(), certificate_signature(&digraph, c)))
            .collect();
        for (v, cert) in &prev.per_vertex {
            let name = prev_digraph.name(*v);
            if current.get(name) == Some(&certificate_signature(&prev_digraph, cert)) {
                survived.push(name.to_owned());
            }
        }
    }
    Ok(PrefixReport {
        k,
        digraph,
        output,
        survived_from_previous: survived,
        prefix_relative: true,
    })
}

/// Outcome of the transfer harness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TransferVerdict {
    Holds,
    NotApplicable(String),
}

/// Harness check: when the host is a quasi-flame and the subdigraph is
/// large, the subdigraph must be a quasi-flame too, and every exactly
/// realizable fan target set of the host must stay exactly realizable in
/// the subdigraph (checked on all singletons plus seeded random subsets).
pub fn quasi_flame_transfer_check(d: &RootedDigraph, l: &RootedDigraph) -> Result<TransferVerdict> {
    if !l.is_spanning_subdigraph_of(d) {
        return Ok(TransferVerdict::NotApplicable(
            "not a spanning subdigraph".to_owned(),
        ));
    }
    if !is_flame(d)?.is_flame() {
        return Ok(TransferVerdict::NotApplicable(
            "host is not a quasi-flame".to_owned(),
        ));
    }
    if largeness_verdict(l, d)?.is_some() {
        return Ok(TransferVerdict::NotApplicable(
            "subdigraph is not large".to_owned(),
        ));
    }
    if !is_flame(l)?.is_flame() {
        return Err(Error::internal(
            "largeness-preserves-quasi-flame",
            "large subdigraph of a quasi-flame is not a quasi-flame",
        ));
    }
    // Fan preservation on sampled finite target sets.
    let mut samples: Vec<BTreeSet<Vertex>> = d
        .non_root_vertices()
        .map(|v| BTreeSet::from([v]))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x0f2a_11ce);
    let candidates: Vec<Vertex> = d.non_root_vertices().collect();
    for size in 2..=candidates.len().min(4) {
        for _ in 0..8 {
            let subset: BTreeSet<Vertex> = candidates
                .iter()
                .copied()
                .choose_multiple(&mut rng, size)
                .into_iter()
                .collect();
            samples.push(subset);
        }
    }
    for x in samples {
        if menger::exact_fan(d, &x, None, None)?.is_some()
            && menger::exact_fan(l, &x, None, None)?.is_none()
        {
            return Err(Error::internal(
                "fan-preservation",
                "an exactly realizable fan target set of the host is lost in the subdigraph",
            ));
        }
    }
    Ok(TransferVerdict::Holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::RootedDigraph;
    use crate::oracle::{self, OracleLimits};

    fn g1() -> RootedDigraph {
        RootedDigraph::from_edges("r", &[("r", "v")]).unwrap()
    }

    fn g2() -> RootedDigraph {
        RootedDigraph::from_edges(
            "r",
            &[("r", "a"), ("r", "b"), ("a", "v"), ("b", "v"), ("a", "b")],
        )
        .unwrap()
    }

    fn g6() -> RootedDigraph {
        RootedDigraph::from_edges(
            "r",
            &[("r", "a"), ("a", "b"), ("a", "c"), ("b", "v"), ("c", "v")],
        )
        .unwrap()
    }

    #[test]
    fn flame_report_examples() {
        let report = is_flame(&g2()).unwrap();
        assert!(report.is_flame());
        for s in &report.per_vertex {
            assert_eq!(s.kappa, s.in_degree);
        }

        let report = is_flame(&g6()).unwrap();
        assert!(!report.is_flame());
        let d = g6();
        let v = d.vertex("v").unwrap();
        let bad: Vec<_> = report.violations().collect();
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].vertex, v);
        assert_eq!(bad[0].in_degree, 2);
        assert_eq!(bad[0].kappa, 1);

        let edgeless = RootedDigraph::from_edges("r", &[]).unwrap();
        assert!(is_flame(&edgeless).unwrap().is_flame());
    }

    #[test]
    fn quasi_modes_agree_on_small_instances() {
        let lim = OracleLimits::default();
        for d in [g1(), g2(), g6()] {
            let collapsed = is_quasi_flame(&d, QuasiMode::Collapsed).unwrap();
            let strict = is_quasi_flame(&d, QuasiMode::Strict(lim)).unwrap();
            assert_eq!(collapsed, strict);
        }
    }

    #[test]
    fn trim_examples() {
        let d = g6();
        let e = lovasz_trim(&d, None).unwrap();
        let rendered: Vec<String> = e.edges().map(|ed| e.edge_label(ed)).collect();
        assert_eq!(rendered, ["a->b", "a->c", "b->v", "r->a"]);
        assert_eq!(e.edge_count(), 4);
        // κ preserved everywhere, in-degree = κ, edge count = Σ κ.
        let mut kappa_sum = 0;
        for v in d.non_root_vertices() {
            let kd = crate::menger::local_connectivity(&d, v).unwrap();
            let ke = crate::menger::local_connectivity(&e, v).unwrap();
            assert_eq!(kd, ke);
            assert_eq!(e.in_degree(v), kd);
            kappa_sum += kd;
        }
        assert_eq!(e.edge_count(), kappa_sum);

        let d = g2();
        let e = lovasz_trim(&d, None).unwrap();
        assert_eq!(e.edge_set(), d.edge_set());

        let d = g1();
        let e = lovasz_trim(&d, None).unwrap();
        assert_eq!(e.edge_set(), d.edge_set());
    }

    #[test]
    fn grow_examples() {
        let d = g6();
        let seed = RootedDigraph::new(
            std::sync::Arc::clone(d.verts()),
            d.root(),
            d.out_edges(d.root()).collect::<Vec<_>>(),
        )
        .unwrap();
        let e = flame_grow(&d, &seed).unwrap();
        assert_eq!(e.edge_count(), 4);
        assert!(is_flame(&e).unwrap().is_flame());
        assert!(largeness_check(&e, &d).unwrap().large);

        // A seed that is already large stays untouched.
        let again = flame_grow(&d, &e).unwrap();
        assert_eq!(again.edge_set(), e.edge_set());

        let d = g2();
        let seed = RootedDigraph::new(
            std::sync::Arc::clone(d.verts()),
            d.root(),
            d.out_edges(d.root()).collect::<Vec<_>>(),
        )
        .unwrap();
        let e = flame_grow(&d, &seed).unwrap();
        assert_eq!(e.edge_set(), d.edge_set());
    }

    #[test]
    fn maximal_quasi_flame_examples() {
        let d = g2();
        let f = maximal_quasi_flame(&d).unwrap();
        assert_eq!(f.edge_set(), d.edge_set());

        let d = g6();
        let f = maximal_quasi_flame(&d).unwrap();
        let b = d.vertex("b").unwrap();
        let v = d.vertex("v").unwrap();
        assert_eq!(f.edge_count(), 4);
        assert!(f.has_edge(b, v), "lexicographic scan keeps b->v");
        // Maximality: re-adding the dropped edge breaks the flame property.
        let c = d.vertex("c").unwrap();
        let with_cv = f.add_edge(c, v).unwrap();
        assert!(!is_flame(&with_cv).unwrap().is_flame());

        let edgeless = RootedDigraph::from_edges("r", &[]).unwrap();
        let f = maximal_quasi_flame(&edgeless).unwrap();
        assert_eq!(f.edge_count(), 0);
    }

    #[test]
    fn construct_g1() {
        let d = g1();
        let out = construct_large_flame(&d, None).unwrap();
        assert_eq!(out.flame.edge_set(), d.edge_set());
        assert_eq!(out.per_vertex.len(), 1);
        let (_, cert) = &out.per_vertex[0];
        assert!(cert.separation.uses_root_edge);
        assert!(cert.separation.vertices.is_empty());
    }

    #[test]
    fn construct_g6() {
        let d = g6();
        let out = construct_large_flame(&d, None).unwrap();
        assert_eq!(out.flame.edge_count(), 4);
        assert!(is_flame(&out.flame).unwrap().is_flame());
        assert!(largeness_check(&out.flame, &d).unwrap().large);
    }

    #[test]
    fn construct_output_passes_brute_checks_on_small_instances() {
        let lim = OracleLimits::default();
        for d in [g1(), g2(), g6()] {
            let out = construct_large_flame(&d, None).unwrap();
            assert!(oracle::brute_is_flame(&out.flame, &lim).unwrap());
            assert!(oracle::brute_largeness(&out.flame, &d, &lim).unwrap());
        }
    }

    #[test]
    fn construct_respects_explicit_order() {
        let d = g6();
        let mut order: Vec<Vertex> = d.non_root_vertices().collect();
        order.reverse();
        let out = construct_large_flame(&d, Some(&order)).unwrap();
        assert!(is_flame(&out.flame).unwrap().is_flame());
        assert!(largeness_check(&out.flame, &d).unwrap().large);

        // Not a permutation: rejected.
        let bad = vec![order[0]];
        assert!(construct_large_flame(&d, Some(&bad)).is_err());
    }

    #[test]
    fn transfer_check_examples() {
        let d = g2();
        assert_eq!(
            quasi_flame_transfer_check(&d, &d).unwrap(),
            TransferVerdict::Holds
        );

        // Hypotheses unmet: G6 is not a quasi-flame.
        let d = g6();
        assert!(matches!(
            quasi_flame_transfer_check(&d, &d).unwrap(),
            TransferVerdict::NotApplicable(_)
        ));
    }

    struct TinyStream;

    impl PrefixSource for TinyStream {
        fn root_name(&self) -> String {
            "r".to_owned()
        }

        fn item(&self, index: usize) -> Option<PrefixItem> {
            let name = format!("v{index}");
            let mut edges = vec![("r".to_owned(), name.clone())];
            if index > 0 {
                edges.push((format!("v{}", index - 1), name.clone()));
            }
            Some(PrefixItem { name, edges })
        }
    }

    #[test]
    fn prefix_construct_is_prefix_relative() {
        let report = prefix_construct(&TinyStream, 1).unwrap();
        assert!(report.prefix_relative);
        assert_eq!(report.digraph.edge_count(), 1);
        assert_eq!(report.output.flame.edge_count(), 1);

        let report = prefix_construct(&TinyStream, 3).unwrap();
        assert_eq!(report.k, 3);
        assert!(is_flame(&report.output.flame).unwrap().is_flame());
        // v0's certificate cannot change when v2 arrives beneath it.
        assert!(report
            .survived_from_previous
            .contains(&"v0".to_owned()));
    }

    struct BrokenStream;

    impl PrefixSource for BrokenStream {
        fn root_name(&self) -> String {
            "r".to_owned()
        }

        fn item(&self, index: usize) -> Option<PrefixItem> {
            Some(PrefixItem {
                name: format!("v{index}"),
                edges: vec![("ghost".to_owned(), format!("v{index}"))],
            })
        }
    }

    #[test]
    fn prefix_rejects_unseen_endpoints() {
        let err = prefix_construct(&BrokenStream, 1).unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));
    }
}

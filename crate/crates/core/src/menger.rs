//! Flow-based local connectivity, maximum internally disjoint path
//! systems with separation certificates, covering systems, the
//! augmenting-walk dichotomy, and constructive linkage.
//!
//! Two finite-scale facts carry the whole module and are cross-checked
//! against brute-force enumeration by the test suites:
//!
//! * A system of internally disjoint `r -> v` paths is strongly maximal
//!   (no competitor `Q` has `|Q∖P| > |P∖Q|`) exactly when it has maximum
//!   cardinality: both directions are elementary counting for finite
//!   systems. Membership in the certified family is therefore implemented
//!   as "maximum size plus a one-element-per-path separation".
//! * `I` is realizable as the exact last-edge set of such a system iff the
//!   local connectivity of the digraph with `in(v)` restricted to `I`
//!   equals `|I|`: a witness restricted to `I` has `|I|` paths, and a
//!   maximum system of the restricted digraph has pairwise distinct last
//!   edges inside `I`.

use std::collections::BTreeSet;

use crate::digraph::{Edge, RootedDigraph, Vertex};
use crate::error::{Error, Result};
use crate::flow::{link_with_demands, LinkSpec, RvNet, XyNet, XySpec};
use crate::paths::{MengerCertificate, Path, PathSystem, Separation, SeparationElement, SystemKind};

fn check_target(d: &RootedDigraph, v: Vertex) -> Result<()> {
    if !d.has_vertex(v) {
        return Err(Error::UnknownVertex(format!("#{}", v.0)));
    }
    if v == d.root() {
        return Err(Error::invalid("target must differ from the root"));
    }
    Ok(())
}

/// `κ(r, v)`: the maximum number of internally disjoint `r -> v` paths,
/// computed as a maximum flow over the split digraph with the edge `rv`
/// contributing its own unit.
pub fn local_connectivity(d: &RootedDigraph, v: Vertex) -> Result<usize> {
    check_target(d, v)?;
    let mut net = RvNet::build(d, v, None);
    let base = net.max_flow();
    Ok(base + usize::from(d.has_edge(d.root(), v)))
}

/// Builds the certificate for a maximum system: paths extracted from the
/// flow decomposition, the minimum vertex cut nearest the root as the
/// separation, and the path-to-element bijection.
fn certificate_from_net(
    d: &RootedDigraph,
    v: Vertex,
    net: &mut RvNet,
) -> Result<MengerCertificate> {
    let has_root_edge = d.has_edge(d.root(), v);
    net.max_flow();
    let raw_paths = net.extract_and_rebuild();
    let cut = net.min_cut();

    let mut paths: Vec<Path> = raw_paths
        .into_iter()
        .map(|verts| Path::new(d, verts))
        .collect::<Result<_>>()?;
    if has_root_edge {
        paths.push(Path::new(d, vec![d.root(), v])?);
    }
    let system = PathSystem::new(d, SystemKind::InternallyDisjoint { target: v }, paths)?;
    let separation = Separation {
        target: v,
        vertices: cut,
        uses_root_edge: has_root_edge,
    };
    let mut assignment = Vec::with_capacity(system.len());
    for path in system.iter() {
        if path.len() == 2 && path.first() == d.root() && has_root_edge {
            assignment.push(SeparationElement::RootEdge);
            continue;
        }
        let mut on_path = path
            .internal_vertices()
            .iter()
            .filter(|s| separation.vertices.contains(s));
        let elem = on_path.next().copied().ok_or_else(|| {
            Error::internal(
                "cut-per-path",
                "a maximum-system path misses the minimum cut",
            )
        })?;
        if on_path.next().is_some() {
            return Err(Error::internal(
                "cut-per-path",
                "a maximum-system path crosses the minimum cut twice",
            ));
        }
        assignment.push(SeparationElement::Vertex(elem));
    }
    let cert = MengerCertificate {
        system,
        separation,
        assignment,
    };
    cert.verify(d)?;
    Ok(cert)
}

/// A maximum internally disjoint `r -> v` system together with its
/// separation certificate. When `rv` is an edge, the path `{rv}` belongs
/// to the system and is assigned the edge itself. `κ = 0` yields the empty
/// system with the empty separation.
pub fn max_system(d: &RootedDigraph, v: Vertex) -> Result<MengerCertificate> {
    check_target(d, v)?;
    let mut net = RvNet::build(d, v, None);
    certificate_from_net(d, v, &mut net)
}

/// Positive or negative answer to "is `I` the exact last-edge set of some
/// internally disjoint `r -> v` system".
#[derive(Clone, Debug)]
pub enum CoveringOutcome {
    Covered(PathSystem),
    Refuted(CoveringRefutation),
}

impl CoveringOutcome {
    pub fn system(&self) -> Option<&PathSystem> {
        match self {
            CoveringOutcome::Covered(sys) => Some(sys),
            CoveringOutcome::Refuted(_) => None,
        }
    }

    pub fn is_covered(&self) -> bool {
        matches!(self, CoveringOutcome::Covered(_))
    }
}

/// Proof that no covering system exists: a certificate of the digraph with
/// `in(v)` restricted to `I`, whose separation has fewer elements than
/// `|I|` and meets every `r -> v` path there.
#[derive(Clone, Debug)]
pub struct CoveringRefutation {
    pub requested: BTreeSet<Edge>,
    pub restricted_kappa: usize,
    pub certificate: MengerCertificate,
}

/// Decides `I`-coverage at `v` (all edges of `I` must enter `v`).
pub fn covering_system(d: &RootedDigraph, v: Vertex, i: &BTreeSet<Edge>) -> Result<CoveringOutcome> {
    check_target(d, v)?;
    for &(t, h) in i {
        if h != v || !d.has_edge(t, h) {
            return Err(Error::invalid(format!(
                "requested edge {} is not an ingoing edge of the target",
                d.edge_label((t, h))
            )));
        }
    }
    let root = d.root();
    let want_root_edge = i.contains(&(root, v));
    let tails: BTreeSet<Vertex> = i
        .iter()
        .filter(|&&(t, _)| t != root)
        .map(|&(t, _)| t)
        .collect();

    let mut net = RvNet::build(d, v, Some(&tails));
    let flow = net.max_flow();
    if flow == tails.len() {
        let mut paths: Vec<Path> = net
            .extract_and_rebuild()
            .into_iter()
            .map(|verts| Path::new(d, verts))
            .collect::<Result<_>>()?;
        if want_root_edge {
            paths.push(Path::new(d, vec![root, v])?);
        }
        let sys = PathSystem::new(d, SystemKind::InternallyDisjoint { target: v }, paths)?;
        if sys.a_last() != *i {
            return Err(Error::internal(
                "covering-last-edges",
                "covering system does not end exactly on the requested edges",
            ));
        }
        return Ok(CoveringOutcome::Covered(sys));
    }
    // Refutation: certify the restricted digraph's connectivity deficit.
    let restricted = d.restrict_in_edges(v, i);
    let certificate = max_system(&restricted, v)?;
    let restricted_kappa = certificate.size();
    if restricted_kappa >= i.len() {
        return Err(Error::internal(
            "covering-refutation",
            "refutation path reached despite sufficient connectivity",
        ));
    }
    Ok(CoveringOutcome::Refuted(CoveringRefutation {
        requested: i.clone(),
        restricted_kappa,
        certificate,
    }))
}

/// A one-vertex-per-path `XY`-cut: the dichotomy's negative outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XyCut {
    pub vertices: BTreeSet<Vertex>,
    /// Parallel to the paths of the input system.
    pub assignment: Vec<Vertex>,
}

/// Result of one augmenting-walk attempt.
#[derive(Clone, Debug)]
pub enum AugmentOutcome {
    /// An `XY`-separation choosing exactly one vertex from each input path.
    Cut(XyCut),
    /// A strictly larger system `Q` with `V_first(Q) ⊇ V_first(P)`,
    /// `V_last(Q) ⊇ V_last(P)` and `|Q| = |P| + 1`.
    Augmented(PathSystem),
}

fn xy_kind(xs: &BTreeSet<Vertex>, ys: &BTreeSet<Vertex>) -> SystemKind {
    SystemKind::DisjointXy {
        sources: xs.clone(),
        sinks: ys.clone(),
    }
}

/// One augmenting step for a system of disjoint `X -> Y` paths: either the
/// system grows by one path (keeping all old first and last vertices), or
/// a separation choosing one vertex per path certifies maximality.
pub fn augmenting_walk(
    d: &RootedDigraph,
    xs: &BTreeSet<Vertex>,
    ys: &BTreeSet<Vertex>,
    p: &PathSystem,
) -> Result<AugmentOutcome> {
    match p.kind() {
        SystemKind::DisjointXy { sources, sinks } if sources == xs && sinks == ys => {}
        _ => return Err(Error::invalid("system endpoints do not match X and Y")),
    }
    p.validate(d)?;
    let spec = XySpec {
        sources: xs,
        sinks: ys,
        allowed: None,
        edge_pool: None,
        forbid: None,
        omit_root_edge_to: None,
        strict: true,
    };
    let mut net = XyNet::build(d, &spec);
    net.route_system(p.paths())
        .map_err(|m| Error::invalid(format!("system does not fit the network: {m}")))?;
    if net.augment_once() {
        let paths: Vec<Path> = net
            .extract_and_rebuild()
            .into_iter()
            .map(Path::from_simple_sequence)
            .collect();
        let q = PathSystem::new(d, xy_kind(xs, ys), paths)?;
        if q.len() != p.len() + 1
            || !q.v_first().is_superset(&p.v_first())
            || !q.v_last().is_superset(&p.v_last())
        {
            return Err(Error::internal(
                "augmentation-monotone",
                "augmented system lost a first or last vertex",
            ));
        }
        return Ok(AugmentOutcome::Augmented(q));
    }
    let vertices = net.cut_vertices();
    let mut assignment = Vec::with_capacity(p.len());
    for path in p.iter() {
        let mut hits = path.vertices().iter().filter(|v| vertices.contains(v));
        let first = hits.next().copied().ok_or_else(|| {
            Error::internal("cut-per-path", "an input path misses the XY-cut")
        })?;
        if hits.next().is_some() {
            return Err(Error::internal(
                "cut-per-path",
                "an input path crosses the XY-cut twice",
            ));
        }
        assignment.push(first);
    }
    if vertices.len() != p.len() {
        return Err(Error::internal(
            "cut-per-path",
            format!(
                "cut size {} differs from system size {}",
                vertices.len(),
                p.len()
            ),
        ));
    }
    Ok(AugmentOutcome::Cut(XyCut {
        vertices,
        assignment,
    }))
}

/// Links two disjoint `X -> Y` systems: returns a third whose first
/// vertices cover `V_first(P)` and last vertices cover `V_last(Q)`, using
/// only edges of `P ∪ Q`.
pub fn pym_link(
    d: &RootedDigraph,
    xs: &BTreeSet<Vertex>,
    ys: &BTreeSet<Vertex>,
    p: &PathSystem,
    q: &PathSystem,
) -> Result<PathSystem> {
    for sys in [p, q] {
        match sys.kind() {
            SystemKind::DisjointXy { sources, sinks } if sources == xs && sinks == ys => {}
            _ => return Err(Error::invalid("system endpoints do not match X and Y")),
        }
        sys.validate(d)?;
    }
    let pool: BTreeSet<Edge> = p.edge_set().union(&q.edge_set()).copied().collect();
    let spec = LinkSpec {
        edge_pool: &pool,
        sources: xs,
        required_sources: &p.v_first(),
        sinks: ys,
        required_sinks: &q.v_last(),
        strict: true,
        forbid: None,
    };
    let linked = link_with_demands(d, &spec).ok_or_else(|| {
        Error::internal(
            "linkage-feasibility",
            "no linkage covers both endpoint sets inside the union digraph",
        )
    })?;
    let paths: Vec<Path> = linked.into_iter().map(Path::from_simple_sequence).collect();
    let r = PathSystem::new(d, xy_kind(xs, ys), paths)?;
    if !r.v_first().is_superset(&p.v_first()) || !r.v_last().is_superset(&q.v_last()) {
        return Err(Error::internal(
            "linkage-endpoints",
            "linked system does not cover the demanded endpoints",
        ));
    }
    if !r.edge_set().is_subset(&pool) {
        return Err(Error::internal(
            "linkage-edges",
            "linked system uses an edge outside the union digraph",
        ));
    }
    Ok(r)
}

/// True iff no competing internally disjoint `r -> v` system `Q` has
/// `|Q∖P| > |P∖Q|`; at finite scale this is cardinality maximality.
pub fn is_strongly_maximal(d: &RootedDigraph, v: Vertex, p: &PathSystem) -> Result<bool> {
    check_target(d, v)?;
    match p.kind() {
        SystemKind::InternallyDisjoint { target } if *target == v => {}
        _ => return Err(Error::invalid("not an internally disjoint r -> v system")),
    }
    p.validate(d)?;
    Ok(p.len() == local_connectivity(d, v)?)
}

/// An r-fan whose last-vertex set is exactly `targets`, in `d` minus the
/// optionally omitted root edge, restricted to `allowed` when given.
pub(crate) fn exact_fan(
    d: &RootedDigraph,
    targets: &BTreeSet<Vertex>,
    omit_root_edge_to: Option<Vertex>,
    allowed: Option<&BTreeSet<Vertex>>,
) -> Result<Option<PathSystem>> {
    let root = d.root();
    if targets.contains(&root) {
        return Err(Error::invalid("fan targets must avoid the root"));
    }
    let edges: BTreeSet<Edge> = d
        .edges()
        .filter(|&(u, w)| Some(w) != omit_root_edge_to.filter(|_| u == root))
        .collect();
    let spec = crate::flow::FanSpec {
        edges: &edges,
        center: root,
        targets,
        allowed,
        vertex_count: d.vertex_count(),
    };
    let mut net = crate::flow::FanNet::build(&spec);
    if net.max_flow() != targets.len() {
        return Ok(None);
    }
    let paths: Vec<Path> = net
        .extract_and_rebuild()
        .into_iter()
        .map(Path::from_simple_sequence)
        .collect();
    let sys = PathSystem::new(d, SystemKind::RootFan, paths)?;
    if sys.v_last() != *targets {
        return Err(Error::internal(
            "fan-targets",
            "extracted fan does not end exactly on the targets",
        ));
    }
    Ok(Some(sys))
}

/// A `v`-infan from `sources` inside `allowed`, one path per source, or
/// `None` plus a blocking vertex cut of size `< |sources|`.
pub(crate) fn exact_infan(
    d: &RootedDigraph,
    v: Vertex,
    sources: &BTreeSet<Vertex>,
    allowed: Option<&BTreeSet<Vertex>>,
) -> Result<std::result::Result<PathSystem, (usize, BTreeSet<Vertex>)>> {
    // An infan is a fan in the reversed digraph centered on `v`; the
    // source `v` itself contributes the singleton path.
    let mut targets = sources.clone();
    let has_self = targets.remove(&v);
    let reversed: BTreeSet<Edge> = d
        .edges()
        .filter(|&(u, w)| {
            u != v // paths never continue past the infan target
                && allowed.is_none_or(|a| a.contains(&u) && a.contains(&w))
        })
        .map(|(u, w)| (w, u))
        .collect();
    let spec = crate::flow::FanSpec {
        edges: &reversed,
        center: v,
        targets: &targets,
        allowed,
        vertex_count: d.vertex_count(),
    };
    let mut net = crate::flow::FanNet::build(&spec);
    let linked = net.max_flow();
    if linked != targets.len() {
        return Ok(Err((linked + usize::from(has_self), net.blocking_cut())));
    }
    let mut paths: Vec<Path> = net
        .extract_and_rebuild()
        .into_iter()
        .map(|mut verts| {
            verts.reverse();
            Path::from_simple_sequence(verts)
        })
        .collect();
    if has_self {
        paths.push(Path::singleton(v));
    }
    let sys = PathSystem::new(d, SystemKind::InFan { target: v }, paths)?;
    if sys.v_first() != *sources {
        return Err(Error::internal(
            "infan-sources",
            "extracted infan does not start exactly on the sources",
        ));
    }
    Ok(Ok(sys))
}

//! Entrances, bubbles, the largest bubble, and the bubble-based
//! characterisation of largeness.
//!
//! A `v`-bubble is a vertex set `B ∋ v` with `r ∉ B` carrying a `v`-infan
//! from its entrance, one path per entrance vertex, entirely inside `B`.
//! Bubbles are closed under union; the ⊆-largest one, `B(v)`, is computed
//! here from the minimum vertex cut nearest the root rather than by the
//! exponential union, and the brute-force oracle certifies that shortcut
//! on small instances. The entrance of `B(v)` in `D - rv` is an
//! Erdős–Menger separation and every returned bubble carries the
//! certificate proving it.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use crate::digraph::{Edge, RootedDigraph, Vertex};
use crate::error::{Error, Result};
use crate::menger::{self, AugmentOutcome};
use crate::paths::{MengerCertificate, Path, PathSystem, SeparationElement, SystemKind};

/// A vertex set with its witnessing infan. `entrance` is taken in
/// `D - rv`; the witness additionally carries the singleton path at the
/// target when the root edge makes the target an entrance of the full
/// digraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bubble {
    pub target: Vertex,
    pub vertices: BTreeSet<Vertex>,
    pub entrance: BTreeSet<Vertex>,
    pub witness: PathSystem,
}

impl Bubble {
    /// Re-checks every defining property against `d`.
    pub fn verify(&self, d: &RootedDigraph) -> Result<()> {
        if self.vertices.contains(&d.root()) {
            return Err(Error::invalid("bubble contains the root"));
        }
        if !self.vertices.contains(&self.target) {
            return Err(Error::invalid("bubble misses its target"));
        }
        self.witness.validate(d)?;
        match self.witness.kind() {
            SystemKind::InFan { target } if *target == self.target => {}
            _ => return Err(Error::invalid("bubble witness is not a target infan")),
        }
        for p in self.witness.iter() {
            if !p.vertices().iter().all(|x| self.vertices.contains(x)) {
                return Err(Error::invalid("bubble witness leaves the bubble"));
            }
        }
        let full_entrance = entrance(d, &self.vertices)?;
        if self.witness.v_first() != full_entrance {
            return Err(Error::invalid(
                "bubble witness does not start exactly on the entrance",
            ));
        }
        let reduced = entrance(&d.without_root_edge(self.target), &self.vertices)?;
        if self.entrance != reduced {
            return Err(Error::invalid("stored entrance is stale"));
        }
        Ok(())
    }
}

/// `ent(X)`: the vertices of `X` with an ingoing edge from outside `X`.
/// `X` must avoid the root.
pub fn entrance(d: &RootedDigraph, x: &BTreeSet<Vertex>) -> Result<BTreeSet<Vertex>> {
    if x.contains(&d.root()) {
        return Err(Error::invalid("entrance is defined for sets avoiding the root"));
    }
    let mut out = BTreeSet::new();
    for &v in x {
        if !d.has_vertex(v) {
            return Err(Error::UnknownVertex(format!("#{}", v.0)));
        }
        if d.in_neighbors(v).iter().any(|u| !x.contains(u)) {
            out.insert(v);
        }
    }
    Ok(out)
}

/// `int(X) = X ∖ ent(X)`.
pub fn interior(d: &RootedDigraph, x: &BTreeSet<Vertex>) -> Result<BTreeSet<Vertex>> {
    let ent = entrance(d, x)?;
    Ok(x.difference(&ent).copied().collect())
}

/// Evidence that a set is not a bubble: its entrance cannot be fully
/// linked to the target inside the set, blocked by a vertex cut smaller
/// than the entrance.
#[derive(Clone, Debug)]
pub struct BubbleRefutation {
    pub entrance: BTreeSet<Vertex>,
    pub max_linkable: usize,
    pub blocking_cut: BTreeSet<Vertex>,
}

#[derive(Clone, Debug)]
pub enum BubbleOutcome {
    Bubble(Bubble),
    Refuted(BubbleRefutation),
}

impl BubbleOutcome {
    pub fn bubble(&self) -> Option<&Bubble> {
        match self {
            BubbleOutcome::Bubble(b) => Some(b),
            BubbleOutcome::Refuted(_) => None,
        }
    }

    pub fn is_bubble(&self) -> bool {
        matches!(self, BubbleOutcome::Bubble(_))
    }
}

/// Decides whether `b` is a `v`-bubble by linking its entrance to `v`
/// inside `b` with a flow, one path per entrance vertex.
pub fn is_bubble(d: &RootedDigraph, v: Vertex, b: &BTreeSet<Vertex>) -> Result<BubbleOutcome> {
    if !b.contains(&v) {
        return Err(Error::invalid("target is not in the candidate set"));
    }
    if b.contains(&d.root()) {
        return Err(Error::invalid("candidate set contains the root"));
    }
    if v == d.root() {
        return Err(Error::invalid("target must differ from the root"));
    }
    let ent = entrance(d, b)?;
    match menger::exact_infan(d, v, &ent, Some(b))? {
        Ok(witness) => {
            let bubble = Bubble {
                target: v,
                vertices: b.clone(),
                entrance: entrance(&d.without_root_edge(v), b)?,
                witness,
            };
            bubble.verify(d)?;
            Ok(BubbleOutcome::Bubble(bubble))
        }
        Err((max_linkable, blocking_cut)) => Ok(BubbleOutcome::Refuted(BubbleRefutation {
            entrance: ent,
            max_linkable,
            blocking_cut,
        })),
    }
}

/// Unites a finite chain of bubbles into one bubble on the union, by the
/// segment-joining construction: each new entrance vertex follows its own
/// witness path until it first meets the previous union, then continues
/// along the path already assigned there.
///
/// Chain condition: writing `U_k` for the union of the first `k` bubbles,
/// every later bubble's target is either the first bubble's target or an
/// interior vertex of the union so far.
pub fn bubble_union(d: &RootedDigraph, bubbles: &[Bubble]) -> Result<Bubble> {
    let first = bubbles
        .first()
        .ok_or_else(|| Error::invalid("bubble union needs at least one bubble"))?;
    first.verify(d)?;
    let v0 = first.target;
    let mut union = first.vertices.clone();
    let mut assigned: BTreeMap<Vertex, Path> = first
        .witness
        .iter()
        .map(|p| (p.first(), p.clone()))
        .collect();

    for b in &bubbles[1..] {
        b.verify(d)?;
        let vb = b.target;
        if vb != v0 && !interior(d, &union)?.contains(&vb) {
            return Err(Error::invalid(
                "chain condition violated: target neither the first target nor interior so far",
            ));
        }
        let mut next_union = union.clone();
        next_union.extend(b.vertices.iter().copied());
        let next_ent = entrance(d, &next_union)?;
        let old_ent = entrance(d, &union)?;

        let by_start: BTreeMap<Vertex, &Path> =
            b.witness.iter().map(|p| (p.first(), p)).collect();
        let mut next_assigned: BTreeMap<Vertex, Path> = BTreeMap::new();
        for &u in &next_ent {
            if old_ent.contains(&u) {
                let kept = assigned.get(&u).ok_or_else(|| {
                    Error::internal("bubble-union", "missing path for a surviving entrance")
                })?;
                next_assigned.insert(u, kept.clone());
                continue;
            }
            let q = by_start.get(&u).ok_or_else(|| {
                Error::internal(
                    "bubble-union",
                    "new entrance vertex is not an entrance of the appended bubble",
                )
            })?;
            let meet = q
                .vertices()
                .iter()
                .position(|x| union.contains(x))
                .ok_or_else(|| {
                    Error::internal("bubble-union", "witness path never meets the union")
                })?;
            let w = q.vertices()[meet];
            let prefix = q.segment(0, meet);
            let joined = if w == v0 {
                prefix
            } else {
                let tail = assigned.get(&w).ok_or_else(|| {
                    Error::internal(
                        "bubble-union",
                        "first meeting vertex is not an assigned entrance",
                    )
                })?;
                prefix.join(tail)?
            };
            next_assigned.insert(u, joined);
        }
        union = next_union;
        assigned = next_assigned;
    }

    let witness = PathSystem::new(
        d,
        SystemKind::InFan { target: v0 },
        assigned.into_values().collect(),
    )?;
    let bubble = Bubble {
        target: v0,
        vertices: union.clone(),
        entrance: entrance(&d.without_root_edge(v0), &union)?,
        witness,
    };
    bubble.verify(d)?;
    Ok(bubble)
}

/// The bubble induced by an Erdős–Menger separation `S`: all vertices `u`
/// such that every `r -> u` path in `D - rv` meets `S`, witnessed by the
/// terminal segments of the certificate's paths.
///
/// Postconditions checked on every call: the entrance of the bubble in
/// `D - rv` is exactly `S`, and every non-root in-neighbor of the target
/// lies inside the bubble.
pub fn bubble_from_separation(d: &RootedDigraph, cert: &MengerCertificate) -> Result<Bubble> {
    cert.verify(d)?;
    let v = cert.target();
    let s = &cert.separation.vertices;
    let host = d.without_root_edge(v);
    let reach = host.reachable(d.root(), s)?;
    let vertices: BTreeSet<Vertex> = d.vertices().filter(|w| !reach.contains(w)).collect();

    let mut witness_paths: Vec<Path> = Vec::new();
    for (path, elem) in cert.system.iter().zip(&cert.assignment) {
        match *elem {
            SeparationElement::RootEdge => {}
            SeparationElement::Vertex(sv) => {
                let pos = path.position(sv).ok_or_else(|| {
                    Error::internal("separation-bubble", "assigned vertex not on its path")
                })?;
                witness_paths.push(path.segment(pos, path.len() - 1));
            }
        }
    }
    if entrance(d, &vertices)?.contains(&v)
        && !witness_paths.iter().any(|p| p.first() == v)
    {
        witness_paths.push(Path::singleton(v));
    }
    let witness = PathSystem::new(d, SystemKind::InFan { target: v }, witness_paths)?;

    let reduced_entrance = entrance(&host, &vertices)?;
    let bubble = Bubble {
        target: v,
        vertices,
        entrance: reduced_entrance,
        witness,
    };
    if bubble.entrance != *s {
        return Err(Error::internal(
            "separation-bubble-entrance",
            "bubble entrance differs from the separation",
        ));
    }
    for &w in host.in_neighbors(v) {
        if !bubble.vertices.contains(&w) {
            return Err(Error::internal(
                "separation-bubble-in-neighbors",
                "an in-neighbor of the target escaped the bubble",
            ));
        }
    }
    bubble.verify(d)?;
    Ok(bubble)
}

/// The ⊆-largest `v`-bubble together with the certificate proving that
/// its entrance is an Erdős–Menger separation.
#[derive(Clone, Debug)]
pub struct MaxBubble {
    pub bubble: Bubble,
    pub certificate: MengerCertificate,
}

impl MaxBubble {
    pub fn vertices(&self) -> &BTreeSet<Vertex> {
        &self.bubble.vertices
    }

    pub fn entrance(&self) -> &BTreeSet<Vertex> {
        &self.bubble.entrance
    }
}

/// Computes `B(v)` from the minimum vertex cut nearest the root: that cut
/// is an Erdős–Menger separation, and the bubble it induces dominates
/// every other bubble.
pub fn max_bubble(d: &RootedDigraph, v: Vertex) -> Result<MaxBubble> {
    let certificate = menger::max_system(d, v)?;
    let bubble = bubble_from_separation(d, &certificate)?;
    Ok(MaxBubble {
        bubble,
        certificate,
    })
}

/// Outcome of a largeness check, with per-vertex certificates on success
/// and a violating edge on failure.
#[derive(Clone, Debug)]
pub struct LargenessReport {
    pub large: bool,
    pub violating_edge: Option<Edge>,
    /// One certificate per non-root vertex, valid in the subdigraph and in
    /// the host (separation-checked in both).
    pub certificates: Vec<(Vertex, MengerCertificate)>,
}

fn check_spanning(l: &RootedDigraph, d: &RootedDigraph) -> Result<()> {
    if !l.is_spanning_subdigraph_of(d) {
        return Err(Error::invalid(
            "first digraph is not a spanning subdigraph of the second",
        ));
    }
    Ok(())
}

/// Light verdict: `None` when `l` is `d`-large, otherwise some violating
/// edge `uv ∈ D∖L` with `u` outside the largest `v`-bubble of `l`.
pub(crate) fn largeness_verdict(l: &RootedDigraph, d: &RootedDigraph) -> Result<Option<Edge>> {
    check_spanning(l, d)?;
    let mut cache: BTreeMap<Vertex, MaxBubble> = BTreeMap::new();
    for (u, v) in d.edges() {
        if l.has_edge(u, v) {
            continue;
        }
        if u == d.root() {
            return Ok(Some((u, v)));
        }
        if let std::collections::btree_map::Entry::Vacant(e) = cache.entry(v) {
            e.insert(max_bubble(l, v)?);
        }
        if !cache[&v].vertices().contains(&u) {
            return Ok(Some((u, v)));
        }
    }
    Ok(None)
}

/// Full largeness check: `l` is `d`-large iff for every edge `uv ∈ D∖L`
/// the tail lies in the largest `v`-bubble of `l`. On success the report
/// carries, for each vertex, the entrance certificate of its largest
/// bubble, re-verified as a separation of both `l` and `d`.
pub fn largeness_check(l: &RootedDigraph, d: &RootedDigraph) -> Result<LargenessReport> {
    check_spanning(l, d)?;
    if let Some(edge) = largeness_verdict(l, d)? {
        return Ok(LargenessReport {
            large: false,
            violating_edge: Some(edge),
            certificates: Vec::new(),
        });
    }
    let mut certificates = Vec::new();
    for v in d.non_root_vertices() {
        let mb = max_bubble(l, v)?;
        let cert = mb.certificate;
        cert.verify(l)?;
        cert.separation.verify(d).map_err(|e| {
            Error::internal(
                "largeness-separation-transfer",
                format!(
                    "entrance separation of `{}` does not separate in the host: {e}",
                    d.name(v)
                ),
            )
        })?;
        certificates.push((v, cert));
    }
    Ok(LargenessReport {
        large: true,
        violating_edge: None,
        certificates,
    })
}

/// An r-fan in `D - rv` ending exactly on the entrance of the largest
/// `v`-bubble plus one extra vertex `u` outside that bubble. Guaranteed to
/// exist for such `u`; built by one augmenting-walk step from the
/// entrance fan carried by the bubble certificate.
pub fn fan_to_entrance_plus(d: &RootedDigraph, v: Vertex, u: Vertex) -> Result<PathSystem> {
    if u == d.root() {
        return Err(Error::invalid("extra vertex must differ from the root"));
    }
    let mb = max_bubble(d, v)?;
    if mb.vertices().contains(&u) {
        return Err(Error::invalid(
            "extra vertex lies in the largest bubble; the fan is not guaranteed",
        ));
    }
    let ent = mb.entrance().clone();
    let host = d.without_root_edge(v);

    // The entrance fan: initial segments of the certificate paths up to
    // their assigned separation vertices.
    let mut fan_paths: Vec<Path> = Vec::new();
    for (path, elem) in mb.certificate.system.iter().zip(&mb.certificate.assignment) {
        if let SeparationElement::Vertex(sv) = *elem {
            let pos = path.position(sv).expect("assigned vertex is on its path");
            fan_paths.push(path.segment(0, pos));
        }
    }
    // Truncate at u if some fan path passes through it.
    for p in &mut fan_paths {
        if let Some(pos) = p.position(u) {
            *p = p.segment(0, pos);
        }
    }

    let xs: BTreeSet<Vertex> = host.out_neighbors(d.root()).iter().copied().collect();
    let mut ys = ent.clone();
    ys.insert(u);

    // Terminal X -> Y segments: from the last intersection with X.
    let segments: Vec<Path> = fan_paths
        .iter()
        .map(|p| {
            let last_x = p
                .vertices()
                .iter()
                .rposition(|x| xs.contains(x))
                .expect("fan paths leave the root through an out-neighbor");
            p.segment(last_x, p.len() - 1)
        })
        .collect();
    let seed = PathSystem::new(
        &host,
        SystemKind::DisjointXy {
            sources: xs.clone(),
            sinks: ys.clone(),
        },
        segments,
    )?;
    let augmented = match menger::augmenting_walk(&host, &xs, &ys, &seed)? {
        AugmentOutcome::Augmented(q) => q,
        AugmentOutcome::Cut(_) => {
            return Err(Error::internal(
                "entrance-fan-augmentation",
                "augmentation toward the extra vertex failed although it lies outside the bubble",
            ))
        }
    };
    if augmented.v_last() != ys {
        return Err(Error::internal(
            "entrance-fan-targets",
            "augmented fan does not end exactly on entrance plus the extra vertex",
        ));
    }
    let full_paths: Vec<Path> = augmented
        .iter()
        .map(|p| {
            let mut verts = vec![d.root()];
            verts.extend_from_slice(p.vertices());
            Path::new(&host, verts)
        })
        .collect::<Result<_>>()?;
    let fan = PathSystem::new(&host, SystemKind::RootFan, full_paths)?;
    if fan.v_last() != ys {
        return Err(Error::internal(
            "entrance-fan-targets",
            "assembled fan does not end exactly on entrance plus the extra vertex",
        ));
    }
    Ok(fan)
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

    fn vset(d: &RootedDigraph, names: &[&str]) -> BTreeSet<Vertex> {
        names.iter().map(|n| d.vertex(n).unwrap()).collect()
    }

    #[test]
    fn entrance_examples() {
        let d = g2();
        let x = vset(&d, &["a", "b", "v"]);
        assert_eq!(entrance(&d, &x).unwrap(), vset(&d, &["a", "b"]));

        assert!(entrance(&d, &BTreeSet::new()).unwrap().is_empty());

        let d = g6();
        let x = vset(&d, &["a", "b", "c", "v"]);
        assert_eq!(entrance(&d, &x).unwrap(), vset(&d, &["a"]));
        assert_eq!(interior(&d, &x).unwrap(), vset(&d, &["b", "c", "v"]));

        // Entrance of a set containing the root is rejected.
        let with_root = vset(&d, &["r", "a"]);
        assert!(entrance(&d, &with_root).is_err());
    }

    #[test]
    fn singleton_is_always_a_bubble() {
        for d in [g1(), g2(), g6()] {
            let v = d.vertex("v").unwrap();
            let b = BTreeSet::from([v]);
            let out = is_bubble(&d, v, &b).unwrap();
            let bubble = out.bubble().expect("singleton bubble");
            // G1 has the root edge, so v is its own entrance and the
            // witness is the singleton path; elsewhere the witness may be
            // empty.
            bubble.verify(&d).unwrap();
        }
    }

    #[test]
    fn bubble_witness_example_g2() {
        let d = g2();
        let v = d.vertex("v").unwrap();
        let b = vset(&d, &["a", "b", "v"]);
        let out = is_bubble(&d, v, &b).unwrap();
        let bubble = out.bubble().expect("bubble");
        assert_eq!(bubble.witness.render(&d), "{a·v, b·v}");
    }

    #[test]
    fn bubble_refutation_example() {
        // In G6 the set {a, v} has entrance {a, v} but no a -> v path
        // inside it, so it cannot be a bubble.
        let d = g6();
        let v = d.vertex("v").unwrap();
        let b = vset(&d, &["a", "v"]);
        match is_bubble(&d, v, &b).unwrap() {
            BubbleOutcome::Refuted(refutation) => {
                assert_eq!(refutation.entrance, vset(&d, &["a", "v"]));
                assert_eq!(refutation.max_linkable, 1);
                assert!(refutation.blocking_cut.len() < refutation.entrance.len());
            }
            BubbleOutcome::Bubble(_) => panic!("expected refutation"),
        }
        // The oracle agrees: {a, v} is not among the enumerated bubbles.
        let all = oracle::brute_bubbles(&d, v, &OracleLimits::default()).unwrap();
        assert!(all.iter().all(|bb| bb.vertices != b));
    }

    #[test]
    fn union_of_same_target_bubbles() {
        let d = g2();
        let v = d.vertex("v").unwrap();
        let b0 = is_bubble(&d, v, &vset(&d, &["a", "v"]))
            .unwrap()
            .bubble()
            .cloned()
            .expect("bubble");
        let b1 = is_bubble(&d, v, &vset(&d, &["b", "v"]))
            .unwrap()
            .bubble()
            .cloned()
            .expect("bubble");
        let union = bubble_union(&d, &[b0.clone(), b1]).unwrap();
        assert_eq!(union.vertices, vset(&d, &["a", "b", "v"]));

        // Length-one chain: the bubble itself.
        let single = bubble_union(&d, std::slice::from_ref(&b0)).unwrap();
        assert_eq!(single.vertices, b0.vertices);
    }

    #[test]
    fn union_chain_condition_is_enforced() {
        // Appending a b-bubble to a v-bubble that does not contain b in
        // its interior violates the chain condition.
        let d = g6();
        let v = d.vertex("v").unwrap();
        let b = d.vertex("b").unwrap();
        let first = is_bubble(&d, v, &BTreeSet::from([v]))
            .unwrap()
            .bubble()
            .cloned()
            .unwrap();
        let second = is_bubble(&d, b, &BTreeSet::from([b]))
            .unwrap()
            .bubble()
            .cloned()
            .unwrap();
        let err = bubble_union(&d, &[first, second]).unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));

        let err = bubble_union(&d, &[]).unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));
    }

    #[test]
    fn union_chain_with_interior_target() {
        let d = g6();
        let v = d.vertex("v").unwrap();
        let b = d.vertex("b").unwrap();
        let b0 = max_bubble(&d, v).unwrap().bubble;
        assert!(interior(&d, &b0.vertices).unwrap().contains(&b));
        let b1 = is_bubble(&d, b, &BTreeSet::from([b]))
            .unwrap()
            .bubble()
            .cloned()
            .expect("singleton bubble");
        let union = bubble_union(&d, &[b0.clone(), b1]).unwrap();
        assert_eq!(union.vertices, b0.vertices);
        assert_eq!(union.target, v);
    }

    #[test]
    fn bubble_from_separation_examples() {
        // G1: the separation is empty (D - rv has no r -> v path).
        let d = g1();
        let v = d.vertex("v").unwrap();
        let cert = crate::menger::max_system(&d, v).unwrap();
        let bubble = bubble_from_separation(&d, &cert).unwrap();
        assert_eq!(bubble.vertices, BTreeSet::from([v]));
        assert!(bubble.entrance.is_empty());

        // G2: S = {a, b} pins B = {a, b, v}.
        let d = g2();
        let v = d.vertex("v").unwrap();
        let cert = crate::menger::max_system(&d, v).unwrap();
        let bubble = bubble_from_separation(&d, &cert).unwrap();
        assert_eq!(bubble.vertices, vset(&d, &["a", "b", "v"]));

        // G6: S = {a} pins B = {a, b, c, v}.
        let d = g6();
        let v = d.vertex("v").unwrap();
        let cert = crate::menger::max_system(&d, v).unwrap();
        let bubble = bubble_from_separation(&d, &cert).unwrap();
        assert_eq!(bubble.vertices, vset(&d, &["a", "b", "c", "v"]));
    }

    #[test]
    fn max_bubble_examples_and_oracle_agreement() {
        let lim = OracleLimits::default();
        for (d, expect) in [
            (g1(), vec!["v"]),
            (g2(), vec!["a", "b", "v"]),
            (g6(), vec!["a", "b", "c", "v"]),
        ] {
            let v = d.vertex("v").unwrap();
            let mb = max_bubble(&d, v).unwrap();
            assert_eq!(mb.vertices(), &vset(&d, &expect));
            // Union of all brute-enumerated bubbles equals the maximum.
            let mut union = BTreeSet::new();
            for b in oracle::brute_bubbles(&d, v, &lim).unwrap() {
                union.extend(b.vertices);
            }
            assert_eq!(&union, mb.vertices());
            mb.certificate.verify(&d).unwrap();
        }
    }

    #[test]
    fn largeness_examples() {
        let d = g6();
        let report = largeness_check(&d, &d).unwrap();
        assert!(report.large); // L = D is vacuously large

        let c = d.vertex("c").unwrap();
        let v = d.vertex("v").unwrap();
        let l = d.delete_edge(c, v);
        let report = largeness_check(&l, &d).unwrap();
        assert!(report.large);
        assert_eq!(report.certificates.len(), 4);

        let d = g2();
        let a = d.vertex("a").unwrap();
        let v = d.vertex("v").unwrap();
        let l = d.delete_edge(a, v);
        let report = largeness_check(&l, &d).unwrap();
        assert!(!report.large);
        assert_eq!(report.violating_edge, Some((a, v)));
    }

    #[test]
    fn largeness_agrees_with_oracle_on_named_instances() {
        let lim = OracleLimits::default();
        for d in [g2(), g6()] {
            for (u, v) in d.edges().collect::<Vec<_>>() {
                let l = d.delete_edge(u, v);
                let fast = largeness_check(&l, &d).unwrap().large;
                let brute = oracle::brute_largeness(&l, &d, &lim).unwrap();
                assert_eq!(fast, brute, "disagreement dropping {}", d.edge_label((u, v)));
            }
        }
    }

    #[test]
    fn fan_to_entrance_plus_examples() {
        // G2 plus a fresh vertex c reachable from r: entrance {a, b}, and
        // the fan reaches {a, b, c}.
        let d = RootedDigraph::from_edges(
            "r",
            &[
                ("r", "a"),
                ("r", "b"),
                ("a", "v"),
                ("b", "v"),
                ("a", "b"),
                ("r", "c"),
            ],
        )
        .unwrap();
        let v = d.vertex("v").unwrap();
        let c = d.vertex("c").unwrap();
        let fan = fan_to_entrance_plus(&d, v, c).unwrap();
        assert_eq!(fan.render(&d), "{r·a, r·b, r·c}");

        // Degenerate entrance: G1 with an extra pendant u.
        let d = RootedDigraph::from_edges("r", &[("r", "v"), ("r", "u")]).unwrap();
        let v = d.vertex("v").unwrap();
        let u = d.vertex("u").unwrap();
        let fan = fan_to_entrance_plus(&d, v, u).unwrap();
        assert_eq!(fan.render(&d), "{r·u}");

        // Inside the bubble: rejected.
        let d = g2();
        let v = d.vertex("v").unwrap();
        let a = d.vertex("a").unwrap();
        assert!(fan_to_entrance_plus(&d, v, a).is_err());
    }

    #[test]
    fn fan_truncates_at_the_extra_vertex() {
        // Entrance {b}; the entrance fan runs r·a·b through a, and a is
        // the extra vertex, so the fan path is cut back at a and a second
        // route r·c·b is found.
        let d = RootedDigraph::from_edges(
            "r",
            &[("r", "a"), ("a", "b"), ("r", "c"), ("c", "b"), ("b", "v")],
        )
        .unwrap();
        let v = d.vertex("v").unwrap();
        let a = d.vertex("a").unwrap();
        let b = d.vertex("b").unwrap();
        let mb = max_bubble(&d, v).unwrap();
        assert_eq!(mb.entrance(), &BTreeSet::from([b]));
        assert!(!mb.vertices().contains(&a));
        let fan = fan_to_entrance_plus(&d, v, a).unwrap();
        assert_eq!(fan.render(&d), "{r·a, r·c·b}");
    }

    #[test]
    fn union_closure_certified_by_oracle_on_g6() {
        let lim = OracleLimits::default();
        let d = g6();
        let v = d.vertex("v").unwrap();
        let bubbles = oracle::brute_bubbles(&d, v, &lim).unwrap();
        for (i, b0) in bubbles.iter().enumerate() {
            for b1 in &bubbles[i..] {
                let mut u = b0.vertices.clone();
                u.extend(b1.vertices.iter().copied());
                assert!(is_bubble(&d, v, &u).unwrap().is_bubble());
                let joined = bubble_union(&d, &[b0.clone(), b1.clone()]).unwrap();
                assert_eq!(joined.vertices, u);
            }
        }
    }
}

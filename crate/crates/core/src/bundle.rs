//! Certificate bundles: the machine-readable output of a construction
//! run, and their re-verification from scratch.
//!
//! A bundle pins the input digraph by content hash, records the vertex
//! enumeration and the output edge set, and carries one certificate per
//! vertex: the system (vertex arrays), the separation, and the
//! path-to-element assignment. [`verify_bundle`] re-checks everything
//! against the input digraph alone — path validity, internal
//! disjointness, exact last-edge sets, assignment bijections, and the
//! separation property by reachability — without re-running any
//! construction.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::digraph::{RootedDigraph, Vertex};
use crate::error::{Error, Result};
use crate::flame::{LargeFlameOutput, PrefixReport};
use crate::format::digraph_hash;
use crate::paths::{MengerCertificate, Path, PathSystem, Separation, SeparationElement, SystemKind};

pub const BUNDLE_FORMAT: &str = "vflame.bundle/1";

/// Disclaimer attached to every prefix-mode bundle.
pub const PREFIX_NOTE: &str = "certificates are relative to the generated prefix digraph only; \
     nothing is claimed about the infinite object";

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScopeDoc {
    Full,
    Prefix { k: usize, note: String },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum ElementDoc {
    Vertex(String),
    RootEdge,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SeparationDoc {
    pub vertices: Vec<String>,
    pub uses_root_edge: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct VertexCertDoc {
    pub v: String,
    pub system: Vec<Vec<String>>,
    pub separation: SeparationDoc,
    /// Path index (within `system`) to assigned element.
    pub assignment: BTreeMap<String, ElementDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CertificateBundleDoc {
    pub format: String,
    pub scope: ScopeDoc,
    pub input_hash: String,
    pub order: Vec<String>,
    pub per_vertex: Vec<VertexCertDoc>,
    pub output_edges: Vec<(String, String)>,
}

/// Bubble serialization for the CLI.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BubbleDoc {
    pub target: String,
    pub vertices: Vec<String>,
    pub entrance: Vec<String>,
    pub witness: Vec<Vec<String>>,
}

pub fn bubble_to_doc(d: &RootedDigraph, b: &crate::bubble::Bubble) -> BubbleDoc {
    BubbleDoc {
        target: d.name(b.target).to_owned(),
        vertices: b.vertices.iter().map(|&v| d.name(v).to_owned()).collect(),
        entrance: b.entrance.iter().map(|&v| d.name(v).to_owned()).collect(),
        witness: b
            .witness
            .iter()
            .map(|p| p.vertices().iter().map(|&v| d.name(v).to_owned()).collect())
            .collect(),
    }
}

pub fn certificate_to_doc(d: &RootedDigraph, cert: &MengerCertificate) -> VertexCertDoc {
    VertexCertDoc {
        v: d.name(cert.target()).to_owned(),
        system: cert
            .system
            .iter()
            .map(|p| p.vertices().iter().map(|&v| d.name(v).to_owned()).collect())
            .collect(),
        separation: SeparationDoc {
            vertices: cert
                .separation
                .vertices
                .iter()
                .map(|&v| d.name(v).to_owned())
                .collect(),
            uses_root_edge: cert.separation.uses_root_edge,
        },
        assignment: cert
            .assignment
            .iter()
            .enumerate()
            .map(|(i, elem)| {
                let doc = match elem {
                    SeparationElement::Vertex(v) => ElementDoc::Vertex(d.name(*v).to_owned()),
                    SeparationElement::RootEdge => ElementDoc::RootEdge,
                };
                (i.to_string(), doc)
            })
            .collect(),
    }
}

/// Reconstructs and fully verifies a certificate document against the
/// host digraph `d` (paths must additionally lie inside `within` when
/// given, e.g. the claimed output flame).
fn certificate_from_doc(
    d: &RootedDigraph,
    within: Option<&RootedDigraph>,
    doc: &VertexCertDoc,
) -> Result<MengerCertificate> {
    let fail = |msg: String| Error::CertificateInvalid(msg);
    let v = d
        .vertex(&doc.v)
        .map_err(|_| fail(format!("unknown certificate vertex `{}`", doc.v)))?;
    let mut paths = Vec::new();
    for (i, verts) in doc.system.iter().enumerate() {
        let resolved: Vec<Vertex> = verts
            .iter()
            .map(|n| d.vertex(n))
            .collect::<Result<_>>()
            .map_err(|e| fail(format!("path {i} of `{}`: {e}", doc.v)))?;
        let path = Path::new(d, resolved)
            .map_err(|e| fail(format!("path {i} of `{}`: {e}", doc.v)))?;
        if let Some(inner) = within {
            for (a, b) in path.edges() {
                if !inner.has_edge(a, b) {
                    return Err(fail(format!(
                        "path {i} of `{}` uses edge {} outside the claimed output",
                        doc.v,
                        d.edge_label((a, b))
                    )));
                }
            }
        }
        paths.push(path);
    }
    if doc.assignment.len() != paths.len() {
        return Err(fail(format!(
            "`{}`: assignment size differs from the system size",
            doc.v
        )));
    }
    let mut assignment = Vec::with_capacity(paths.len());
    for i in 0..paths.len() {
        let elem = doc
            .assignment
            .get(&i.to_string())
            .ok_or_else(|| fail(format!("`{}`: path {i} has no assigned element", doc.v)))?;
        assignment.push(match elem {
            ElementDoc::Vertex(n) => SeparationElement::Vertex(
                d.vertex(n)
                    .map_err(|_| fail(format!("unknown separation vertex `{n}`")))?,
            ),
            ElementDoc::RootEdge => SeparationElement::RootEdge,
        });
    }
    // The assignment travels by path index; re-sorting the paths must
    // carry the elements along.
    let mut paired: Vec<(Path, SeparationElement)> =
        paths.into_iter().zip(assignment).collect();
    paired.sort_by(|a, b| a.0.cmp(&b.0));
    let (paths, assignment): (Vec<_>, Vec<_>) = paired.into_iter().unzip();
    let system = PathSystem::new(d, SystemKind::InternallyDisjoint { target: v }, paths)
        .map_err(|e| fail(format!("`{}`: {e}", doc.v)))?;
    let separation = Separation {
        target: v,
        vertices: doc
            .separation
            .vertices
            .iter()
            .map(|n| d.vertex(n))
            .collect::<Result<_>>()
            .map_err(|e| fail(format!("`{}` separation: {e}", doc.v)))?,
        uses_root_edge: doc.separation.uses_root_edge,
    };
    let cert = MengerCertificate {
        system,
        separation,
        assignment,
    };
    cert.verify(d)
        .map_err(|e| fail(format!("certificate at `{}` fails verification: {e}", doc.v)))?;
    Ok(cert)
}

pub fn bundle_from_output(d: &RootedDigraph, out: &LargeFlameOutput) -> CertificateBundleDoc {
    bundle_with_scope(d, out, ScopeDoc::Full)
}

pub fn bundle_from_prefix(report: &PrefixReport) -> CertificateBundleDoc {
    bundle_with_scope(
        &report.digraph,
        &report.output,
        ScopeDoc::Prefix {
            k: report.k,
            note: PREFIX_NOTE.to_owned(),
        },
    )
}

fn bundle_with_scope(
    d: &RootedDigraph,
    out: &LargeFlameOutput,
    scope: ScopeDoc,
) -> CertificateBundleDoc {
    CertificateBundleDoc {
        format: BUNDLE_FORMAT.to_owned(),
        scope,
        input_hash: digraph_hash(d),
        order: out.order.iter().map(|&v| d.name(v).to_owned()).collect(),
        per_vertex: out
            .per_vertex
            .iter()
            .map(|(_, cert)| certificate_to_doc(d, cert))
            .collect(),
        output_edges: out
            .flame
            .edges()
            .map(|(u, v)| (d.name(u).to_owned(), d.name(v).to_owned()))
            .collect(),
    }
}

pub fn bundle_to_json(bundle: &CertificateBundleDoc) -> String {
    let mut out = serde_json::to_string_pretty(bundle).expect("serializable");
    out.push('\n');
    out
}

pub fn bundle_from_json(raw: &str) -> Result<CertificateBundleDoc> {
    serde_json::from_str(raw).map_err(|e| Error::Format(format!("bundle JSON: {e}")))
}

/// What a verified bundle pins down.
#[derive(Clone, Debug)]
pub struct VerifiedBundle {
    pub flame: RootedDigraph,
    pub certificates: Vec<(Vertex, MengerCertificate)>,
}

/// Re-verifies a bundle against the input digraph alone.
///
/// Checks, in order: the format marker; the content hash; the enumeration
/// being a permutation of the non-root vertices; the output edges forming
/// a spanning subdigraph; and per vertex the reconstructed certificate —
/// its system lying inside the output with last edges exactly the
/// output's in-edges (the flame property), the assignment bijection, and
/// the separation meeting every root-to-target path of the input (the
/// largeness property; the separation size also certifies that the
/// system's size equals the input's local connectivity).
pub fn verify_bundle(d: &RootedDigraph, bundle: &CertificateBundleDoc) -> Result<VerifiedBundle> {
    let fail = |msg: String| Error::CertificateInvalid(msg);
    if bundle.format != BUNDLE_FORMAT {
        return Err(fail(format!("unknown bundle format `{}`", bundle.format)));
    }
    let expected_hash = digraph_hash(d);
    if bundle.input_hash != expected_hash {
        return Err(fail(format!(
            "input hash mismatch: bundle {} vs digraph {expected_hash}",
            bundle.input_hash
        )));
    }
    let expected_order: BTreeSet<&str> = d
        .non_root_vertices()
        .map(|v| d.name(v))
        .collect();
    let got_order: BTreeSet<&str> = bundle.order.iter().map(String::as_str).collect();
    if got_order != expected_order || bundle.order.len() != expected_order.len() {
        return Err(fail(
            "order is not a permutation of the non-root vertices".to_owned(),
        ));
    }
    let mut edges = Vec::with_capacity(bundle.output_edges.len());
    for (u, v) in &bundle.output_edges {
        let u = d
            .vertex(u)
            .map_err(|_| fail(format!("output edge tail `{u}` unknown")))?;
        let v = d
            .vertex(v)
            .map_err(|_| fail(format!("output edge head `{v}` unknown")))?;
        if !d.has_edge(u, v) {
            return Err(fail(format!(
                "output edge {} is not an input edge",
                d.edge_label((u, v))
            )));
        }
        edges.push((u, v));
    }
    let flame = RootedDigraph::new(Arc::clone(d.verts()), d.root(), edges)
        .map_err(|e| fail(format!("output edges: {e}")))?;

    let mut seen: BTreeSet<Vertex> = BTreeSet::new();
    let mut certificates = Vec::new();
    for doc in &bundle.per_vertex {
        let cert = certificate_from_doc(d, Some(&flame), doc)?;
        let v = cert.target();
        if !seen.insert(v) {
            return Err(fail(format!("two certificates for `{}`", doc.v)));
        }
        if cert.system.a_last() != flame.in_edge_set(v) {
            return Err(fail(format!(
                "system at `{}` does not end exactly on the output's in-edges",
                doc.v
            )));
        }
        certificates.push((v, cert));
    }
    let all: BTreeSet<Vertex> = d.non_root_vertices().collect();
    if seen != all {
        return Err(fail("certificates do not cover every vertex".to_owned()));
    }
    Ok(VerifiedBundle {
        flame,
        certificates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flame::construct_large_flame;

    fn g6() -> RootedDigraph {
        RootedDigraph::from_edges(
            "r",
            &[("r", "a"), ("a", "b"), ("a", "c"), ("b", "v"), ("c", "v")],
        )
        .unwrap()
    }

    #[test]
    fn bundle_round_trip_and_verify() {
        let d = g6();
        let out = construct_large_flame(&d, None).unwrap();
        let bundle = bundle_from_output(&d, &out);
        let json = bundle_to_json(&bundle);
        let back = bundle_from_json(&json).unwrap();
        assert_eq!(back, bundle);
        let verified = verify_bundle(&d, &back).unwrap();
        assert_eq!(verified.flame.edge_set(), out.flame.edge_set());
    }

    #[test]
    fn tampered_bundle_is_rejected() {
        let d = g6();
        let out = construct_large_flame(&d, None).unwrap();
        let mut bundle = bundle_from_output(&d, &out);

        // Remove a separation vertex from some nonempty separation.
        let victim = bundle
            .per_vertex
            .iter_mut()
            .find(|c| !c.separation.vertices.is_empty())
            .expect("some separation is nonempty");
        victim.separation.vertices.clear();
        let err = verify_bundle(&d, &bundle).unwrap_err();
        assert!(matches!(err, Error::CertificateInvalid(_)));
    }

    #[test]
    fn hash_mismatch_is_rejected() {
        let d = g6();
        let out = construct_large_flame(&d, None).unwrap();
        let bundle = bundle_from_output(&d, &out);
        let other = RootedDigraph::from_edges("r", &[("r", "a")]).unwrap();
        let err = verify_bundle(&other, &bundle).unwrap_err();
        assert!(matches!(err, Error::CertificateInvalid(_)));
    }

    #[test]
    fn foreign_edge_is_rejected() {
        let d = g6();
        let out = construct_large_flame(&d, None).unwrap();
        let mut bundle = bundle_from_output(&d, &out);
        bundle.output_edges.push(("v".into(), "a".into()));
        let err = verify_bundle(&d, &bundle).unwrap_err();
        assert!(matches!(err, Error::CertificateInvalid(_)));
    }

    #[test]
    fn prefix_bundles_carry_the_tag() {
        let stream = crate::generate::Figure6Stream {
            include_omega_edges: true,
        };
        let report = crate::flame::prefix_construct(&stream, 5).unwrap();
        let bundle = bundle_from_prefix(&report);
        match &bundle.scope {
            ScopeDoc::Prefix { k, note } => {
                assert_eq!(*k, 5);
                assert!(note.contains("prefix"));
            }
            ScopeDoc::Full => panic!("prefix bundle lost its tag"),
        }
        verify_bundle(&report.digraph, &bundle).unwrap();
    }
}

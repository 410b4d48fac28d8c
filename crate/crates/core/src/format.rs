//! The digraph text format and DOT export.
//!
//! A digraph document is JSON with fields `root` (string), `vertices`
//! (array of strings, optional — inferred from edges when absent) and
//! `edges` (array of 2-element string arrays). Array order never matters;
//! duplicate edges collapse with a warning. Edges into the root are a
//! hard error unless loading with `normalize_root`, which drops them with
//! a warning instead.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::digraph::{Edge, RootedDigraph, VertexSet};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DigraphDoc {
    pub root: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<String>>,
    pub edges: Vec<(String, String)>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct LoadOptions {
    /// Drop edges into the root (with a warning) instead of failing.
    pub normalize_root: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LoadWarning {
    DuplicateEdge(String, String),
    DroppedRootEdge(String, String),
}

impl fmt::Display for LoadWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoadWarning::DuplicateEdge(u, v) => {
                write!(f, "duplicate edge {u} -> {v} collapsed")
            }
            LoadWarning::DroppedRootEdge(u, v) => {
                write!(f, "edge {u} -> {v} into the root dropped")
            }
        }
    }
}

/// Validates and interns a digraph document.
pub fn digraph_from_doc(
    doc: &DigraphDoc,
    opts: LoadOptions,
) -> Result<(RootedDigraph, Vec<LoadWarning>)> {
    let mut warnings = Vec::new();
    let mut names: Vec<String> = vec![doc.root.clone()];
    if let Some(vs) = &doc.vertices {
        names.extend(vs.iter().cloned());
    }
    let declared: Option<BTreeSet<&str>> = doc
        .vertices
        .as_ref()
        .map(|vs| vs.iter().map(String::as_str).chain([doc.root.as_str()]).collect());
    let mut kept: Vec<(String, String)> = Vec::new();
    let mut seen: BTreeSet<(&str, &str)> = BTreeSet::new();
    for (u, v) in &doc.edges {
        if let Some(decl) = &declared {
            if !decl.contains(u.as_str()) {
                return Err(Error::UnknownVertex(u.clone()));
            }
            if !decl.contains(v.as_str()) {
                return Err(Error::UnknownVertex(v.clone()));
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u.clone()));
        }
        if v == &doc.root {
            if opts.normalize_root {
                warnings.push(LoadWarning::DroppedRootEdge(u.clone(), v.clone()));
                continue;
            }
            return Err(Error::EdgeIntoRoot {
                tail: u.clone(),
                root: doc.root.clone(),
            });
        }
        if !seen.insert((u.as_str(), v.as_str())) {
            warnings.push(LoadWarning::DuplicateEdge(u.clone(), v.clone()));
            continue;
        }
        names.push(u.clone());
        names.push(v.clone());
        kept.push((u.clone(), v.clone()));
    }
    let verts = VertexSet::new(names);
    let root = verts.index_of(&doc.root).expect("root interned");
    let edges: Vec<Edge> = kept
        .iter()
        .map(|(u, v)| {
            (
                verts.index_of(u).expect("interned"),
                verts.index_of(v).expect("interned"),
            )
        })
        .collect();
    let d = RootedDigraph::new(verts, root, edges)?;
    Ok((d, warnings))
}

/// Canonical document: vertices always listed, everything sorted.
pub fn digraph_to_doc(d: &RootedDigraph) -> DigraphDoc {
    DigraphDoc {
        root: d.name(d.root()).to_owned(),
        vertices: Some(d.vertices().map(|v| d.name(v).to_owned()).collect()),
        edges: d
            .edges()
            .map(|(u, v)| (d.name(u).to_owned(), d.name(v).to_owned()))
            .collect(),
    }
}

pub fn parse_digraph_json(
    raw: &str,
    opts: LoadOptions,
) -> Result<(RootedDigraph, Vec<LoadWarning>)> {
    let doc: DigraphDoc =
        serde_json::from_str(raw).map_err(|e| Error::Format(format!("digraph JSON: {e}")))?;
    digraph_from_doc(&doc, opts)
}

pub fn digraph_to_json(d: &RootedDigraph) -> String {
    let mut out = serde_json::to_string_pretty(&digraph_to_doc(d)).expect("serializable");
    out.push('\n');
    out
}

/// Content address of a digraph: SHA-256 over the compact canonical
/// document.
pub fn digraph_hash(d: &RootedDigraph) -> String {
    let canonical = serde_json::to_string(&digraph_to_doc(d)).expect("serializable");
    let mut hasher = Sha256::new();
    hasher.update(canonical.as_bytes());
    let digest = hasher.finalize();
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}

fn dot_quote(name: &str) -> String {
    format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT export: the root is drawn as a box; edges in `highlight` (e.g. a
/// spanning flame inside its host) are rendered bold.
pub fn to_dot(d: &RootedDigraph, highlight: Option<&BTreeSet<Edge>>) -> String {
    let mut out = String::from("digraph {\n");
    for v in d.vertices() {
        let attrs = if v == d.root() { " [shape=box]" } else { "" };
        out.push_str(&format!("  {}{};\n", dot_quote(d.name(v)), attrs));
    }
    for (u, v) in d.edges() {
        let attrs = match highlight {
            Some(set) if set.contains(&(u, v)) => " [style=bold]",
            Some(_) => " [style=dashed]",
            None => "",
        };
        out.push_str(&format!(
            "  {} -> {}{};\n",
            dot_quote(d.name(u)),
            dot_quote(d.name(v)),
            attrs
        ));
    }
    out.push_str("}\n");
    out
}

/// Re-reads a digraph produced by [`digraph_to_json`] and aligns it onto
/// the vertex family of `host` (names must match).
pub fn parse_aligned(raw: &str, host: &RootedDigraph, opts: LoadOptions) -> Result<RootedDigraph> {
    let (d, _) = parse_digraph_json(raw, opts)?;
    d.align_to(&Arc::clone(host.verts()), host.root())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn load_minimal_instance() {
        let doc = DigraphDoc {
            root: "r".into(),
            vertices: None,
            edges: vec![("r".into(), "v".into())],
        };
        let (d, warnings) = digraph_from_doc(&doc, LoadOptions::default()).unwrap();
        assert_eq!(d.edge_count(), 1);
        assert!(warnings.is_empty());
    }

    #[test]
    fn edge_into_root_is_rejected_without_the_flag() {
        let doc = DigraphDoc {
            root: "r".into(),
            vertices: None,
            edges: vec![("v".into(), "r".into())],
        };
        let err = digraph_from_doc(&doc, LoadOptions::default()).unwrap_err();
        assert!(matches!(err, Error::EdgeIntoRoot { .. }));
    }

    #[test]
    fn normalize_drops_root_edges_with_warning() {
        let doc = DigraphDoc {
            root: "r".into(),
            vertices: None,
            edges: vec![
                ("r".into(), "a".into()),
                ("a".into(), "r".into()),
                ("a".into(), "b".into()),
            ],
        };
        let (d, warnings) =
            digraph_from_doc(&doc, LoadOptions { normalize_root: true }).unwrap();
        assert_eq!(d.edge_count(), 2);
        assert_eq!(
            warnings,
            vec![LoadWarning::DroppedRootEdge("a".into(), "r".into())]
        );
    }

    #[test]
    fn duplicates_collapse_with_warning() {
        let doc = DigraphDoc {
            root: "r".into(),
            vertices: None,
            edges: vec![("r".into(), "a".into()), ("r".into(), "a".into())],
        };
        let (d, warnings) = digraph_from_doc(&doc, LoadOptions::default()).unwrap();
        assert_eq!(d.edge_count(), 1);
        assert_eq!(warnings.len(), 1);
    }

    #[test]
    fn unknown_vertex_with_declared_list() {
        let doc = DigraphDoc {
            root: "r".into(),
            vertices: Some(vec!["a".into()]),
            edges: vec![("r".into(), "ghost".into())],
        };
        assert!(matches!(
            digraph_from_doc(&doc, LoadOptions::default()),
            Err(Error::UnknownVertex(_))
        ));
    }

    #[test]
    fn dot_export_marks_root_and_highlights() {
        let d = RootedDigraph::from_edges("r", &[("r", "a"), ("a", "b")]).unwrap();
        let a = d.vertex("a").unwrap();
        let b = d.vertex("b").unwrap();
        let hl = BTreeSet::from([(a, b)]);
        let dot = to_dot(&d, Some(&hl));
        assert!(dot.contains("\"r\" [shape=box];"));
        assert!(dot.contains("\"a\" -> \"b\" [style=bold];"));
        assert!(dot.contains("\"r\" -> \"a\" [style=dashed];"));
    }

    #[test]
    fn hash_is_stable_and_content_sensitive() {
        let d1 = RootedDigraph::from_edges("r", &[("r", "a")]).unwrap();
        let d2 = RootedDigraph::from_edges("r", &[("r", "a")]).unwrap();
        let d3 = RootedDigraph::from_edges("r", &[("r", "b")]).unwrap();
        assert_eq!(digraph_hash(&d1), digraph_hash(&d2));
        assert_ne!(digraph_hash(&d1), digraph_hash(&d3));
        assert!(digraph_hash(&d1).starts_with("sha256:"));
    }

    proptest! {
        #[test]
        fn json_round_trip(d in crate::digraph::tests::small_digraph()) {
            let json = digraph_to_json(&d);
            let (back, warnings) = parse_digraph_json(&json, LoadOptions::default()).unwrap();
            prop_assert!(warnings.is_empty());
            prop_assert!(back.same_family(&d));
            prop_assert_eq!(back.edge_set(), d.edge_set());
        }
    }
}

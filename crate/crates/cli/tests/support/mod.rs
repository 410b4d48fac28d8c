//! Corpora and helpers shared by the acceptance criteria.
//!
//! All corpora are seeded and therefore identical on every run and every
//! platform. The brute-force helpers here are test-local re-derivations
//! (independent of the library's own oracle where criterion wording asks
//! for it).

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;

use vflame_core::digraph::{RootedDigraph, Vertex, VertexSet};
use vflame_core::generate::{random_digraph, random_digraph_density};

/// 500 seeded random rooted digraphs, 8–50 vertices, density 0.05–0.4.
pub fn large_corpus() -> Vec<RootedDigraph> {
    let mut out = Vec::with_capacity(500);
    for i in 0..500u64 {
        let n = 8 + (i as usize * 29) % 43; // 8..=50
        let density = 0.05 + 0.35 * ((i as usize * 37 % 100) as f64 / 99.0);
        out.push(random_digraph_density(n, density, 0xacce5500 ^ i).unwrap());
    }
    out
}

/// Every rooted digraph on up to four named vertices (the root plus up to
/// three others), by edge-subset enumeration.
pub fn exhaustive_small() -> Vec<RootedDigraph> {
    let mut out = Vec::new();
    for n in 1..=4usize {
        let names: Vec<String> = std::iter::once("r".to_owned())
            .chain((1..n).map(|i| format!("x{i}")))
            .collect();
        let verts = VertexSet::new(names);
        let root = verts.index_of("r").unwrap();
        let candidates: Vec<(Vertex, Vertex)> = verts
            .iter()
            .flat_map(|u| verts.iter().map(move |w| (u, w)))
            .filter(|&(u, w)| u != w && w != root)
            .collect();
        for mask in 0..(1usize << candidates.len()) {
            let edges: Vec<_> = candidates
                .iter()
                .enumerate()
                .filter(|(b, _)| mask & (1 << b) != 0)
                .map(|(_, &e)| e)
                .collect();
            out.push(RootedDigraph::new(Arc::clone(&verts), root, edges).unwrap());
        }
    }
    out
}

/// Exhaustive ≤ 4-vertex digraphs plus 1500 seeded randoms on 5–7
/// vertices: at least 2000 instances, all within the oracle bound.
pub fn small_corpus() -> Vec<RootedDigraph> {
    let mut out = exhaustive_small();
    for i in 0..1500u64 {
        let n = 5 + (i as usize % 3);
        let max_edges = n * (n - 1) - (n - 1);
        let m = 1 + (i as usize * 13) % (max_edges * 45 / 100);
        out.push(random_digraph(n, m, 0x5ca1ab1e ^ i).unwrap());
    }
    out
}

/// A denser, smaller slice for the per-instance-expensive transfer
/// harnesses.
pub fn transfer_corpus() -> Vec<RootedDigraph> {
    let mut out = Vec::new();
    for i in 0..60u64 {
        let n = 4 + (i as usize % 4); // 4..=7
        let density = 0.25 + 0.1 * ((i % 4) as f64);
        out.push(random_digraph_density(n, density, 0x7ea2 ^ i).unwrap());
    }
    out
}

/// Random hosts with sampled source/sink sets for the dichotomy and
/// linkage criterion.
pub fn xy_instances() -> Vec<(RootedDigraph, BTreeSet<Vertex>, BTreeSet<Vertex>)> {
    let mut out = Vec::new();
    for i in 0..220u64 {
        let n = 5 + (i as usize % 3);
        let max_edges = n * (n - 1) - (n - 1);
        let m = max_edges / 3 + (i as usize * 11) % (max_edges / 2);
        let d = random_digraph(n, m, 0x0bad5eed ^ i).unwrap();
        let verts: Vec<Vertex> = d.vertices().collect();
        // Seeded but arithmetic: spread X and Y across the vertex list.
        let xs: BTreeSet<Vertex> = verts
            .iter()
            .enumerate()
            .filter(|(j, _)| (j + i as usize).is_multiple_of(3))
            .map(|(_, &v)| v)
            .collect();
        let ys: BTreeSet<Vertex> = verts
            .iter()
            .enumerate()
            .filter(|(j, _)| (j + i as usize) % 3 == 1)
            .map(|(_, &v)| v)
            .collect();
        if xs.is_empty() || ys.is_empty() {
            continue;
        }
        out.push((d, xs, ys));
    }
    out
}

/// All strict `X -> Y` paths: first vertex in `X`, last in `Y`, no other
/// vertex in either set.
fn strict_xy_paths(
    d: &RootedDigraph,
    xs: &BTreeSet<Vertex>,
    ys: &BTreeSet<Vertex>,
) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    fn extend(
        d: &RootedDigraph,
        xs: &BTreeSet<Vertex>,
        ys: &BTreeSet<Vertex>,
        stack: &mut Vec<Vertex>,
        out: &mut Vec<Vec<Vertex>>,
    ) {
        let u = *stack.last().unwrap();
        for &w in d.out_neighbors(u) {
            if stack.contains(&w) || xs.contains(&w) {
                continue;
            }
            if ys.contains(&w) {
                let mut done = stack.clone();
                done.push(w);
                out.push(done);
                continue;
            }
            stack.push(w);
            extend(d, xs, ys, stack, out);
            stack.pop();
        }
    }
    for &x in xs {
        if ys.contains(&x) {
            out.push(vec![x]);
        }
        extend(d, xs, ys, &mut vec![x], &mut out);
    }
    out
}

/// Maximum number of pairwise vertex-disjoint strict `X -> Y` paths, by
/// backtracking.
pub fn brute_max_disjoint_xy(
    d: &RootedDigraph,
    xs: &BTreeSet<Vertex>,
    ys: &BTreeSet<Vertex>,
) -> usize {
    let paths = strict_xy_paths(d, xs, ys);
    fn disjoint(a: &[Vertex], b: &[Vertex]) -> bool {
        a.iter().all(|v| !b.contains(v))
    }
    fn rec(paths: &[Vec<Vertex>], start: usize, chosen: &mut Vec<usize>, best: &mut usize) {
        *best = (*best).max(chosen.len());
        for i in start..paths.len() {
            if chosen.iter().all(|&j| disjoint(&paths[i], &paths[j])) {
                chosen.push(i);
                rec(paths, i + 1, chosen, best);
                chosen.pop();
            }
        }
    }
    let mut best = 0;
    rec(&paths, 0, &mut Vec::new(), &mut best);
    best
}

/// Does `cut` meet every strict `X -> Y` path?
pub fn brute_xy_separates(
    d: &RootedDigraph,
    xs: &BTreeSet<Vertex>,
    ys: &BTreeSet<Vertex>,
    cut: &BTreeSet<Vertex>,
) -> bool {
    strict_xy_paths(d, xs, ys)
        .iter()
        .all(|p| p.iter().any(|v| cut.contains(v)))
}

pub struct CliOutput {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run_cli(args: &[&str]) -> CliOutput {
    let out = Command::new(env!("CARGO_BIN_EXE_vflame"))
        .args(args)
        .output()
        .expect("spawn vflame");
    CliOutput {
        status: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

pub fn tempdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("vflame-acceptance-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("create temp dir");
    dir
}

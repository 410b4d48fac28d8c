//! Deterministic digraph generators.
//!
//! All randomness flows from an explicit 64-bit seed through ChaCha8
//! (`rand_chacha`), which is specified byte-for-byte and identical across
//! platforms, so generated corpora are reproducible everywhere.

use std::collections::BTreeSet;
use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::digraph::RootedDigraph;
use crate::error::{Error, Result};
use crate::flame::{PrefixItem, PrefixSource};

/// A parsed generator request.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorSpec {
    /// The layered family with binary selectors and exponentially many leaf
    /// vertices, truncated at level `k`.
    Figure6 {
        k: usize,
        include_omega_edges: bool,
    },
    Random {
        n: usize,
        m: usize,
        seed: u64,
    },
    Layered {
        widths: Vec<usize>,
        seed: u64,
    },
    File {
        path: PathBuf,
    },
}

impl GeneratorSpec {
    /// Parses `kind:key=value,...` requests, e.g. `figure6:k=2`,
    /// `random:n=12,m=30,seed=7`, `layered:widths=2-3-2,seed=7`,
    /// `file:graph.json`.
    pub fn parse(s: &str) -> Result<Self> {
        let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
        let fields: Vec<(&str, &str)> = rest
            .split(',')
            .filter(|p| !p.is_empty())
            .map(|p| p.split_once('=').unwrap_or((p, "")))
            .collect();
        let get = |key: &str| fields.iter().find(|(k, _)| *k == key).map(|(_, v)| *v);
        let num = |key: &str| -> Result<usize> {
            get(key)
                .ok_or_else(|| Error::invalid(format!("generator `{kind}` needs `{key}`")))?
                .parse()
                .map_err(|_| Error::invalid(format!("`{key}` is not a number")))
        };
        match kind {
            "figure6" => Ok(GeneratorSpec::Figure6 {
                k: num("k")?,
                include_omega_edges: get("omega") != Some("off"),
            }),
            "random" => {
                let seed = get("seed")
                    .ok_or_else(|| Error::invalid("random generator needs an explicit seed"))?
                    .parse()
                    .map_err(|_| Error::invalid("`seed` is not a number"))?;
                Ok(GeneratorSpec::Random {
                    n: num("n")?,
                    m: num("m")?,
                    seed,
                })
            }
            "layered" => {
                let widths: Vec<usize> = get("widths")
                    .ok_or_else(|| Error::invalid("layered generator needs `widths`"))?
                    .split('-')
                    .map(|w| {
                        w.parse()
                            .map_err(|_| Error::invalid("layer width is not a number"))
                    })
                    .collect::<Result<_>>()?;
                let seed = get("seed")
                    .ok_or_else(|| Error::invalid("layered generator needs an explicit seed"))?
                    .parse()
                    .map_err(|_| Error::invalid("`seed` is not a number"))?;
                Ok(GeneratorSpec::Layered { widths, seed })
            }
            "file" => Ok(GeneratorSpec::File {
                path: PathBuf::from(rest),
            }),
            other => Err(Error::invalid(format!("unknown generator kind `{other}`"))),
        }
    }
}

pub const FIGURE6_MAX_LEVEL: usize = 12;

fn fig6_u(i: usize) -> String {
    format!("u{i:02}")
}

fn fig6_selector(i: usize, j: usize) -> String {
    format!("w{i:02}_{j}")
}

fn fig6_collector(i: usize) -> String {
    format!("v{i:02}")
}

const FIG6_OMEGA: &str = "vom";

fn fig6_leaf(bits: &[u8]) -> String {
    let s: String = bits.iter().map(|b| char::from(b'0' + b)).collect();
    format!("f{s}")
}

/// The truncated counterexample family at level `k`: a root feeding `k`
/// branch vertices and one extra collector `vom`; each branch `u_i` feeds
/// a selector pair `w_{i,0}, w_{i,1}` merging into a collector `v_i`;
/// every collector (including `vom` unless excluded) feeds every selector;
/// and one leaf per function `f : {0..k-1} -> {0,1}` hangs below its
/// selected selectors. `4k + 2^k + 2` vertices.
///
/// The interesting claims about the untruncated object are genuinely
/// infinite; see the CLI's analysis notes. Nothing here asserts them for
/// truncations.
pub fn gen_figure6(k: usize, include_omega_edges: bool) -> Result<RootedDigraph> {
    if k == 0 || k > FIGURE6_MAX_LEVEL {
        return Err(Error::invalid(format!(
            "figure6 level must be between 1 and {FIGURE6_MAX_LEVEL}"
        )));
    }
    let mut edges: Vec<(String, String)> = Vec::new();
    for i in 0..k {
        edges.push(("r".into(), fig6_u(i)));
        for j in 0..2 {
            edges.push((fig6_u(i), fig6_selector(i, j)));
            edges.push((fig6_selector(i, j), fig6_collector(i)));
        }
    }
    edges.push(("r".into(), FIG6_OMEGA.into()));
    let mut collectors: Vec<String> = (0..k).map(fig6_collector).collect();
    if include_omega_edges {
        collectors.push(FIG6_OMEGA.into());
    }
    for c in &collectors {
        for j in 0..k {
            for l in 0..2 {
                edges.push((c.clone(), fig6_selector(j, l)));
            }
        }
    }
    for mask in 0..(1usize << k) {
        let bits: Vec<u8> = (0..k).map(|i| ((mask >> i) & 1) as u8).collect();
        let leaf = fig6_leaf(&bits);
        for (i, &b) in bits.iter().enumerate() {
            edges.push((fig6_selector(i, b as usize), leaf.clone()));
        }
    }
    let borrowed: Vec<(&str, &str)> = edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    RootedDigraph::from_edges("r", &borrowed)
}

/// Leaf-by-leaf streaming presentation of the figure6 family: the omega
/// collector first, then per level its branch, selectors and collector,
/// then the level's full set of leaves. Leaves of earlier levels persist
/// with their shorter selector lists; everything is prefix-relative.
pub struct Figure6Stream {
    pub include_omega_edges: bool,
}

impl Figure6Stream {
    /// Index layout: 0 is `vom`; then blocks of `4 + 2^(i+1)` items per
    /// level `i`.
    fn locate(&self, index: usize) -> Option<PrefixItem> {
        if index == 0 {
            return Some(PrefixItem {
                name: FIG6_OMEGA.into(),
                edges: vec![("r".into(), FIG6_OMEGA.into())],
            });
        }
        let mut rest = index - 1;
        let mut level = 0usize;
        loop {
            let block = 4 + (1usize << (level + 1));
            if rest < block {
                break;
            }
            rest -= block;
            level += 1;
            if level > FIGURE6_MAX_LEVEL {
                return None;
            }
        }
        let i = level;
        let item = match rest {
            0 => PrefixItem {
                name: fig6_u(i),
                edges: vec![("r".into(), fig6_u(i))],
            },
            1 | 2 => {
                let j = rest - 1;
                let name = fig6_selector(i, j);
                let mut edges = vec![(fig6_u(i), name.clone())];
                // Edges from every already-present collector.
                for c in 0..i {
                    edges.push((fig6_collector(c), name.clone()));
                }
                if self.include_omega_edges {
                    edges.push((FIG6_OMEGA.into(), name.clone()));
                }
                PrefixItem { name, edges }
            }
            3 => {
                let name = fig6_collector(i);
                let mut edges = vec![
                    (fig6_selector(i, 0), name.clone()),
                    (fig6_selector(i, 1), name.clone()),
                ];
                // This collector feeds every already-present selector.
                for j in 0..=i {
                    for l in 0..2 {
                        edges.push((name.clone(), fig6_selector(j, l)));
                    }
                }
                PrefixItem { name, edges }
            }
            leaf_slot => {
                let mask = leaf_slot - 4;
                let bits: Vec<u8> = (0..=i).map(|b| ((mask >> b) & 1) as u8).collect();
                let name = fig6_leaf(&bits);
                let edges = bits
                    .iter()
                    .enumerate()
                    .map(|(b, &bit)| (fig6_selector(b, bit as usize), name.clone()))
                    .collect();
                PrefixItem { name, edges }
            }
        };
        Some(item)
    }
}

impl PrefixSource for Figure6Stream {
    fn root_name(&self) -> String {
        "r".to_owned()
    }

    fn item(&self, index: usize) -> Option<PrefixItem> {
        self.locate(index)
    }
}

/// A finite digraph replayed as a stream, vertices in lexicographic
/// order. Each vertex brings its edges to the root and to earlier names.
pub struct FiniteStream {
    digraph: RootedDigraph,
}

impl FiniteStream {
    pub fn new(digraph: RootedDigraph) -> Self {
        FiniteStream { digraph }
    }
}

impl PrefixSource for FiniteStream {
    fn root_name(&self) -> String {
        self.digraph.name(self.digraph.root()).to_owned()
    }

    fn item(&self, index: usize) -> Option<PrefixItem> {
        let d = &self.digraph;
        let non_root: Vec<_> = d.non_root_vertices().collect();
        let &v = non_root.get(index)?;
        let seen: BTreeSet<_> = non_root[..=index]
            .iter()
            .copied()
            .chain([d.root()])
            .collect();
        let mut edges = Vec::new();
        for &u in d.in_neighbors(v) {
            if seen.contains(&u) {
                edges.push((d.name(u).to_owned(), d.name(v).to_owned()));
            }
        }
        for &w in d.out_neighbors(v) {
            if w != v && seen.contains(&w) && w < v {
                edges.push((d.name(v).to_owned(), d.name(w).to_owned()));
            }
        }
        Some(PrefixItem {
            name: d.name(v).to_owned(),
            edges,
        })
    }
}

/// Uniform random rooted digraph: `n` vertices (`r` plus `v01..`), `m`
/// distinct edges drawn without self-loops or edges into the root.
pub fn random_digraph(n: usize, m: usize, seed: u64) -> Result<RootedDigraph> {
    if n == 0 {
        return Err(Error::invalid("need at least the root"));
    }
    let width = format!("{}", n.max(2) - 1).len();
    let names: Vec<String> = std::iter::once("r".to_owned())
        .chain((1..n).map(|i| format!("v{i:0width$}")))
        .collect();
    let mut candidates: Vec<(usize, usize)> = Vec::new();
    for u in 0..n {
        for w in 1..n {
            if u != w {
                candidates.push((u, w));
            }
        }
    }
    if m > candidates.len() {
        return Err(Error::invalid(format!(
            "at most {} edges fit on {n} vertices",
            candidates.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    candidates.shuffle(&mut rng);
    let chosen: Vec<(&str, &str)> = candidates[..m]
        .iter()
        .map(|&(u, w)| (names[u].as_str(), names[w].as_str()))
        .collect();
    RootedDigraph::from_edges("r", &chosen)
}

/// Random digraph with edge count derived from a density in `(0, 1]`
/// relative to the `n·(n-1)` candidate pairs (minus edges into the root).
pub fn random_digraph_density(n: usize, density: f64, seed: u64) -> Result<RootedDigraph> {
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::invalid("density must lie in [0, 1]"));
    }
    let max_edges = n * (n - 1) - (n - 1);
    let m = ((max_edges as f64) * density).round() as usize;
    random_digraph(n, m.min(max_edges), seed)
}

/// Layered digraph: the root feeds layer one; every vertex gets at least
/// one in-edge from the previous layer plus further random ones.
pub fn layered_digraph(widths: &[usize], seed: u64) -> Result<RootedDigraph> {
    if widths.is_empty() || widths.contains(&0) {
        return Err(Error::invalid("layer widths must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut layers: Vec<Vec<String>> = vec![vec!["r".to_owned()]];
    for (li, &w) in widths.iter().enumerate() {
        layers.push((0..w).map(|i| format!("l{:02}v{i:02}", li + 1)).collect());
    }
    let mut edges: Vec<(String, String)> = Vec::new();
    for li in 1..layers.len() {
        let (prev, cur) = (&layers[li - 1], &layers[li]);
        for v in cur {
            let forced = prev[rng.random_range(0..prev.len())].clone();
            edges.push((forced, v.clone()));
            for u in prev {
                if rng.random_bool(0.4) {
                    edges.push((u.clone(), v.clone()));
                }
            }
        }
    }
    let borrowed: Vec<(&str, &str)> = edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    RootedDigraph::from_edges("r", &borrowed)
}

/// Materializes any (non-file) generator spec.
pub fn realize(spec: &GeneratorSpec) -> Result<RootedDigraph> {
    match spec {
        GeneratorSpec::Figure6 {
            k,
            include_omega_edges,
        } => gen_figure6(*k, *include_omega_edges),
        GeneratorSpec::Random { n, m, seed } => random_digraph(*n, *m, *seed),
        GeneratorSpec::Layered { widths, seed } => layered_digraph(widths, *seed),
        GeneratorSpec::File { .. } => Err(Error::invalid(
            "file specs are materialized by the caller, not the generator",
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flame::prefix_construct;

    #[test]
    fn figure6_counts() {
        // 4k + 2^k + 2: root, omega, and per level a branch vertex, two
        // selectors and a collector, plus one leaf per selector function.
        let d = gen_figure6(1, true).unwrap();
        assert_eq!(d.vertex_count(), 8);

        let d = gen_figure6(2, true).unwrap();
        assert_eq!(d.vertex_count(), 14);
        for mask in 0..4 {
            let bits = [(mask & 1) as u8, ((mask >> 1) & 1) as u8];
            let leaf = d.vertex(&fig6_leaf(&bits)).unwrap();
            assert_eq!(d.in_degree(leaf), 2);
        }

        assert!(gen_figure6(0, true).is_err());
        assert!(gen_figure6(13, true).is_err());
    }

    #[test]
    fn figure6_omega_toggle() {
        let with = gen_figure6(2, true).unwrap();
        let without = gen_figure6(2, false).unwrap();
        assert_eq!(
            with.edge_count(),
            without.edge_count() + 2 * 2 // omega feeds both selectors of both levels
        );
        let om = with.vertex(FIG6_OMEGA).unwrap();
        assert!(with.out_degree(om) > 0);
        let om = without.vertex(FIG6_OMEGA).unwrap();
        assert_eq!(without.out_degree(om), 0);
    }

    #[test]
    fn figure6_stream_prefix_covers_level_one() {
        // One omega item, one level block (4 items), two leaves: k = 7
        // reaches through the complete level-1 slice of the family.
        let stream = Figure6Stream {
            include_omega_edges: true,
        };
        let report = prefix_construct(&stream, 7).unwrap();
        assert!(report.prefix_relative);
        assert_eq!(report.digraph.vertex_count(), 8);
    }

    #[test]
    fn figure6_stream_prefix_covers_level_two() {
        // Through the level-2 block and its four leaves: 1 + (4+2) + (4+4)
        // items; earlier leaves persist with their shorter selector lists.
        let stream = Figure6Stream {
            include_omega_edges: true,
        };
        let report = prefix_construct(&stream, 15).unwrap();
        assert_eq!(report.digraph.vertex_count(), 16);
        let d = &report.digraph;
        // Level-2 leaves see both levels; level-1 leaves keep in-degree 1.
        assert_eq!(d.in_degree(d.vertex("f01").unwrap()), 2);
        assert_eq!(d.in_degree(d.vertex("f0").unwrap()), 1);
        assert!(crate::flame::is_flame(&report.output.flame)
            .unwrap()
            .is_flame());
    }

    #[test]
    fn random_is_seed_deterministic() {
        let a = random_digraph(12, 30, 7).unwrap();
        let b = random_digraph(12, 30, 7).unwrap();
        assert_eq!(a.edge_set(), b.edge_set());
        let c = random_digraph(12, 30, 8).unwrap();
        assert_ne!(a.edge_set(), c.edge_set());
        assert_eq!(a.edge_count(), 30);
        assert_eq!(a.in_degree(a.root()), 0);
    }

    #[test]
    fn layered_shape() {
        let d = layered_digraph(&[2, 3, 2], 7).unwrap();
        assert_eq!(d.vertex_count(), 8);
        // Every non-root vertex is reachable: each has a forced in-edge.
        let reach = d.reachable(d.root(), &Default::default()).unwrap();
        assert_eq!(reach.len(), d.vertex_count());
    }

    #[test]
    fn spec_parsing() {
        assert_eq!(
            GeneratorSpec::parse("figure6:k=2").unwrap(),
            GeneratorSpec::Figure6 {
                k: 2,
                include_omega_edges: true
            }
        );
        assert_eq!(
            GeneratorSpec::parse("figure6:k=2,omega=off").unwrap(),
            GeneratorSpec::Figure6 {
                k: 2,
                include_omega_edges: false
            }
        );
        assert_eq!(
            GeneratorSpec::parse("random:n=10,m=25,seed=42").unwrap(),
            GeneratorSpec::Random {
                n: 10,
                m: 25,
                seed: 42
            }
        );
        assert_eq!(
            GeneratorSpec::parse("layered:widths=2-3-2,seed=7").unwrap(),
            GeneratorSpec::Layered {
                widths: vec![2, 3, 2],
                seed: 7
            }
        );
        assert!(GeneratorSpec::parse("random:n=10,m=25").is_err()); // seed mandatory
        assert!(GeneratorSpec::parse("nonsense:x=1").is_err());
    }
}

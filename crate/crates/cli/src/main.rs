//! `vflame`: analyze rooted digraphs, trim and grow flames, construct
//! certified large spanning flames, and re-verify certificate bundles.
//!
//! Exit codes: 0 success, 1 property violation, 2 input error,
//! 3 certificate verification failure.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use vflame_core::bubble::{largeness_check, max_bubble};
use vflame_core::bundle::{
    bubble_to_doc, bundle_from_json, bundle_from_output, bundle_from_prefix, bundle_to_json,
    certificate_to_doc, verify_bundle,
};
use vflame_core::digraph::{RootedDigraph, Vertex};
use vflame_core::error::Error;
use vflame_core::flame::{
    construct_large_flame, is_flame, is_quasi_flame, lovasz_trim, prefix_construct, QuasiMode,
};
use vflame_core::format::{
    digraph_from_doc, digraph_hash, digraph_to_json, to_dot, DigraphDoc, LoadOptions,
};
use vflame_core::generate::{gen_figure6, realize, Figure6Stream, FiniteStream, GeneratorSpec};
use vflame_core::menger::{covering_system, local_connectivity, max_system};
use vflame_core::oracle::{self, OracleLimits};

const EXIT_OK: i32 = 0;
const EXIT_VIOLATION: i32 = 1;
const EXIT_INPUT: i32 = 2;
const EXIT_CERT: i32 = 3;

#[derive(Parser)]
#[command(
    name = "vflame",
    version,
    about = "Rooted-digraph connectivity certificates: flames, bubbles, separations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Digraph JSON file ({"root": ..., "vertices": [...], "edges": [[..],..]}).
    #[arg(long, conflicts_with = "gen")]
    input: Option<PathBuf>,

    /// Generator spec: figure6:k=K | random:n=N,m=M,seed=S |
    /// layered:widths=2-3-2,seed=S | file:PATH.
    #[arg(long)]
    gen: Option<String>,

    /// Override the root named in the input file.
    #[arg(long)]
    root: Option<String>,

    /// Drop edges into the root (with a warning) instead of failing.
    #[arg(long)]
    normalize_root: bool,

    /// Seed for random generator kinds (alternative to seed= in the generator spec).
    #[arg(long)]
    seed: Option<u64>,

    /// figure6 only: omit the omega collector's outgoing edge family.
    #[arg(long)]
    exclude_omega_edges: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Per-vertex in-degree, local connectivity and flame status.
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        /// Write the analysis as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Cross-check connectivity against the brute-force oracle when the
        /// instance has at most this many vertices.
        #[arg(long)]
        oracle_bound: Option<usize>,
    },
    /// Trim to a minimum spanning subdigraph preserving every local
    /// connectivity from the root.
    Lovasz {
        #[command(flatten)]
        input: InputArgs,
        /// Vertex enumeration, comma-separated (default: lexicographic).
        #[arg(long)]
        order: Option<String>,
        /// Write the trimmed digraph as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write DOT with kept edges bold inside the host.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Construct a large spanning flame with per-vertex certificates.
    Construct {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        order: Option<String>,
        /// Run on the first K generated vertices (streaming generators);
        /// all certificates are prefix-relative.
        #[arg(long)]
        prefix: Option<usize>,
        /// Write the certificate bundle as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write DOT with the flame bold inside the host.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Check the vertex-flame property.
    CheckFlame {
        #[command(flatten)]
        input: InputArgs,
        /// Check the quasi-flame property by literal subset enumeration
        /// instead of the finite collapse.
        #[arg(long)]
        strict_quasi: bool,
        #[arg(long)]
        oracle_bound: Option<usize>,
    },
    /// Check that a subdigraph is large in the host.
    CheckLarge {
        /// The host digraph.
        #[command(flatten)]
        input: InputArgs,
        /// The spanning subdigraph to test.
        #[arg(long)]
        sub: PathBuf,
        /// Write per-vertex certificates as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The largest bubble of a target vertex, with witness and entrance
    /// certificate.
    Bubble {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        target: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A maximum internally disjoint system with its Erdős–Menger
    /// separation.
    Separation {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        target: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-verify a certificate bundle against its input digraph.
    VerifyCert {
        #[command(flatten)]
        input: InputArgs,
        /// The bundle to verify.
        #[arg(long)]
        cert: PathBuf,
    },
    /// Generate a digraph and write it out.
    Gen {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Convert between the JSON format and DOT.
    Export {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
}

fn main() {
    // Die quietly when the consumer closes the pipe instead of panicking
    // mid-print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let code = match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::CertificateInvalid(_) => EXIT_CERT,
                Error::Internal { .. } => EXIT_VIOLATION,
                _ => EXIT_INPUT,
            }
        }
    };
    std::process::exit(code);
}

/// Where a digraph came from; figure6 inputs get extra analysis notes.
enum Origin {
    File,
    Figure6 { k: usize },
    Generated,
}

fn resolve_spec(args: &InputArgs) -> Result<GeneratorSpec, Error> {
    let raw = args.gen.as_deref().expect("caller checked");
    let mut text = raw.to_owned();
    if let Some(seed) = args.seed {
        if !text.contains("seed=") {
            text.push_str(&format!(",seed={seed}"));
        }
    }
    let mut spec = GeneratorSpec::parse(&text)?;
    if args.exclude_omega_edges {
        match &mut spec {
            GeneratorSpec::Figure6 {
                include_omega_edges,
                ..
            } => *include_omega_edges = false,
            _ => {
                return Err(Error::InvalidInput(
                    "--exclude-omega-edges applies to figure6 generators only".into(),
                ))
            }
        }
    }
    Ok(spec)
}

fn load_file(path: &Path, args: &InputArgs) -> Result<RootedDigraph, Error> {
    let raw = fs::read_to_string(path)?;
    let mut doc: DigraphDoc = serde_json::from_str(&raw)
        .map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    if let Some(root) = &args.root {
        doc.root = root.clone();
    }
    let (d, warnings) = digraph_from_doc(
        &doc,
        LoadOptions {
            normalize_root: args.normalize_root,
        },
    )?;
    for w in warnings {
        eprintln!("warning: {w}");
    }
    Ok(d)
}

fn resolve_input(args: &InputArgs) -> Result<(RootedDigraph, Origin), Error> {
    match (&args.input, &args.gen) {
        (Some(path), None) => Ok((load_file(path, args)?, Origin::File)),
        (None, Some(_)) => {
            if args.root.is_some() {
                return Err(Error::InvalidInput(
                    "--root applies to file inputs only".into(),
                ));
            }
            let spec = resolve_spec(args)?;
            match spec {
                GeneratorSpec::File { path } => Ok((load_file(&path, args)?, Origin::File)),
                GeneratorSpec::Figure6 { k, .. } => {
                    Ok((realize(&spec)?, Origin::Figure6 { k }))
                }
                _ => Ok((realize(&spec)?, Origin::Generated)),
            }
        }
        (None, None) => Err(Error::InvalidInput("need --input or --gen".into())),
        (Some(_), Some(_)) => unreachable!("clap forbids the combination"),
    }
}

fn parse_order(d: &RootedDigraph, order: &Option<String>) -> Result<Option<Vec<Vertex>>, Error> {
    match order {
        None => Ok(None),
        Some(text) => {
            let verts = text
                .split(',')
                .map(|name| d.vertex(name.trim()))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Some(verts))
        }
    }
}

fn write_or_print(path: &Option<PathBuf>, content: &str) -> Result<(), Error> {
    match path {
        Some(p) => fs::write(p, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

#[derive(Serialize)]
struct AnalyzeVertex {
    v: String,
    in_degree: usize,
    kappa: usize,
    flame_ok: bool,
}

#[derive(Serialize)]
struct SelectorRealizability {
    level: usize,
    with_omega_edges: bool,
    realizable: bool,
}

#[derive(Serialize)]
struct AnalyzeDoc {
    input_hash: String,
    vertex_count: usize,
    edge_count: usize,
    is_flame: bool,
    per_vertex: Vec<AnalyzeVertex>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_agreement: Option<bool>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    infinite_object_claims: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    selector_pair_realizability: Vec<SelectorRealizability>,
}

/// For each level `i < k`, whether both selector edges into the collector
/// `v_i` are jointly realizable as exact last edges, computed on the
/// truncation under the given edge-family interpretation.
fn selector_pair_realizability(k: usize, with_omega: bool) -> Result<Vec<SelectorRealizability>, Error> {
    let d = gen_figure6(k, with_omega)?;
    let mut rows = Vec::new();
    for i in 0..k {
        let collector = d.vertex(&format!("v{i:02}"))?;
        let request: BTreeSet<_> = [0, 1]
            .into_iter()
            .map(|j| Ok((d.vertex(&format!("w{i:02}_{j}"))?, collector)))
            .collect::<Result<_, Error>>()?;
        let realizable = covering_system(&d, collector, &request)?.is_covered();
        rows.push(SelectorRealizability {
            level: i,
            with_omega_edges: with_omega,
            realizable,
        });
    }
    Ok(rows)
}

fn cmd_analyze(
    input: InputArgs,
    out: Option<PathBuf>,
    oracle_bound: Option<usize>,
) -> Result<i32, Error> {
    let (d, origin) = resolve_input(&input)?;
    let report = is_flame(&d)?;
    let mut per_vertex = Vec::new();
    println!("digraph: {} vertices, {} edges", d.vertex_count(), d.edge_count());
    println!("{:<12} {:>9} {:>6}  flame", "vertex", "in-degree", "kappa");
    for s in &report.per_vertex {
        let ok = s.status == vflame_core::flame::FlameStatus::Ok;
        println!(
            "{:<12} {:>9} {:>6}  {}",
            d.name(s.vertex),
            s.in_degree,
            s.kappa,
            if ok { "ok" } else { "VIOLATED" }
        );
        per_vertex.push(AnalyzeVertex {
            v: d.name(s.vertex).to_owned(),
            in_degree: s.in_degree,
            kappa: s.kappa,
            flame_ok: ok,
        });
    }
    println!(
        "flame: {}",
        if report.is_flame() { "yes" } else { "no" }
    );

    let oracle_agreement = match oracle_bound {
        Some(bound) if d.vertex_count() <= bound => {
            let lim = OracleLimits::with_max_vertices(bound);
            let mut agree = true;
            for v in d.non_root_vertices() {
                if oracle::brute_kappa(&d, v, &lim)? != local_connectivity(&d, v)? {
                    agree = false;
                }
            }
            println!("oracle cross-check: {}", if agree { "agrees" } else { "DISAGREES" });
            Some(agree)
        }
        _ => None,
    };

    let mut infinite_object_claims = Vec::new();
    let mut selector_rows = Vec::new();
    if let Origin::Figure6 { k } = origin {
        infinite_object_claims.push(format!(
            "\"the out-neighborhood of the root is an Erdős–Menger separation for every leaf\" \
             is an infinite-object claim outside desk verification: at truncation level {k} the \
             root has {} out-neighbors but each leaf has in-degree {k}, so no internally \
             disjoint leaf system can assign one element per path",
            k + 1
        ));
        infinite_object_claims.push(
            "the headline existence statement for countable digraphs is an infinite-object \
             claim outside desk verification; every certificate emitted here is \
             truncation-relative"
                .to_owned(),
        );
        println!("\nfigure6 notes (truncation level {k}):");
        for claim in &infinite_object_claims {
            println!("  - {claim}");
        }
        println!("  selector-pair realizability at each level (computed, not assumed):");
        for with_omega in [true, false] {
            let rows = selector_pair_realizability(k, with_omega)?;
            let rendered: Vec<String> = rows
                .iter()
                .map(|r| format!("level {}: {}", r.level, if r.realizable { "yes" } else { "no" }))
                .collect();
            println!(
                "    {} omega edge family: {}",
                if with_omega { "with" } else { "without" },
                rendered.join(", ")
            );
            selector_rows.extend(rows);
        }
    }

    if out.is_some() {
        let doc = AnalyzeDoc {
            input_hash: digraph_hash(&d),
            vertex_count: d.vertex_count(),
            edge_count: d.edge_count(),
            is_flame: report.is_flame(),
            per_vertex,
            oracle_agreement,
            infinite_object_claims,
            selector_pair_realizability: selector_rows,
        };
        let mut json = serde_json::to_string_pretty(&doc).expect("serializable");
        json.push('\n');
        write_or_print(&out, &json)?;
    }
    if oracle_agreement == Some(false) {
        return Ok(EXIT_VIOLATION);
    }
    Ok(EXIT_OK)
}

fn cmd_lovasz(
    input: InputArgs,
    order: Option<String>,
    out: Option<PathBuf>,
    dot: Option<PathBuf>,
) -> Result<i32, Error> {
    let (d, _) = resolve_input(&input)?;
    let order = parse_order(&d, &order)?;
    let e = lovasz_trim(&d, order.as_deref())?;
    let mut kappa_sum = 0;
    for v in d.non_root_vertices() {
        let kd = local_connectivity(&d, v)?;
        let ke = local_connectivity(&e, v)?;
        if kd != ke || e.in_degree(v) != kd {
            eprintln!(
                "violated property: connectivity preservation at `{}` (host {kd}, trimmed {ke}, in-degree {})",
                d.name(v),
                e.in_degree(v)
            );
            return Ok(EXIT_VIOLATION);
        }
        kappa_sum += kd;
    }
    if e.edge_count() != kappa_sum {
        eprintln!(
            "violated property: edge count {} differs from the connectivity sum {kappa_sum}",
            e.edge_count()
        );
        return Ok(EXIT_VIOLATION);
    }
    println!(
        "trimmed: {} of {} edges kept; edge count equals the connectivity sum {}",
        e.edge_count(),
        d.edge_count(),
        kappa_sum
    );
    if let Some(p) = &dot {
        fs::write(p, to_dot(&d, Some(&e.edge_set())))?;
    }
    if out.is_some() {
        write_or_print(&out, &digraph_to_json(&e))?;
    }
    Ok(EXIT_OK)
}

fn cmd_construct(
    input: InputArgs,
    order: Option<String>,
    prefix: Option<usize>,
    out: Option<PathBuf>,
    dot: Option<PathBuf>,
) -> Result<i32, Error> {
    if let Some(k) = prefix {
        if order.is_some() {
            return Err(Error::InvalidInput(
                "--order cannot be combined with --prefix (the stream fixes the order)".into(),
            ));
        }
        let report = match (&input.input, &input.gen) {
            (None, Some(_)) => {
                let spec = resolve_spec(&input)?;
                match spec {
                    GeneratorSpec::Figure6 {
                        include_omega_edges,
                        ..
                    } => prefix_construct(
                        &Figure6Stream {
                            include_omega_edges,
                        },
                        k,
                    )?,
                    GeneratorSpec::File { path } => {
                        let d = load_file(&path, &input)?;
                        prefix_construct(&FiniteStream::new(d), k)?
                    }
                    other => prefix_construct(&FiniteStream::new(realize(&other)?), k)?,
                }
            }
            (Some(path), None) => {
                let d = load_file(path, &input)?;
                prefix_construct(&FiniteStream::new(d), k)?
            }
            _ => return Err(Error::InvalidInput("need --input or --gen".into())),
        };
        println!(
            "prefix-relative construction on the first {k} generated vertices \
             ({} vertices, {} edges; certificates valid for this prefix only)",
            report.digraph.vertex_count(),
            report.digraph.edge_count()
        );
        println!(
            "flame: {} edges; certificates surviving from prefix {}: [{}]",
            report.output.flame.edge_count(),
            k.saturating_sub(1),
            report.survived_from_previous.join(", ")
        );
        let bundle = bundle_from_prefix(&report);
        if let Some(p) = &dot {
            fs::write(
                p,
                to_dot(&report.digraph, Some(&report.output.flame.edge_set())),
            )?;
        }
        write_or_print(&out, &bundle_to_json(&bundle))?;
        return Ok(EXIT_OK);
    }

    let (d, _) = resolve_input(&input)?;
    let order = parse_order(&d, &order)?;
    let output = construct_large_flame(&d, order.as_deref())?;
    println!(
        "constructed a large spanning flame: {} of {} edges",
        output.flame.edge_count(),
        d.edge_count()
    );
    println!(
        "verified: flame property and largeness hold with one certificate per vertex ({})",
        output.per_vertex.len()
    );
    let bundle = bundle_from_output(&d, &output);
    if let Some(p) = &dot {
        fs::write(p, to_dot(&d, Some(&output.flame.edge_set())))?;
    }
    write_or_print(&out, &bundle_to_json(&bundle))?;
    Ok(EXIT_OK)
}

fn cmd_check_flame(
    input: InputArgs,
    strict_quasi: bool,
    oracle_bound: Option<usize>,
) -> Result<i32, Error> {
    let (d, _) = resolve_input(&input)?;
    let report = is_flame(&d)?;
    for s in report.violations() {
        println!(
            "violated at `{}`: in-degree {} but connectivity {}",
            d.name(s.vertex),
            s.in_degree,
            s.kappa
        );
    }
    if strict_quasi {
        let lim = OracleLimits::with_max_vertices(oracle_bound.unwrap_or(7));
        let strict = is_quasi_flame(&d, QuasiMode::Strict(lim))?;
        let collapsed = report.is_flame();
        println!(
            "quasi-flame (strict subset enumeration): {}",
            if strict { "yes" } else { "no" }
        );
        if strict != collapsed {
            eprintln!("violated property: strict and collapsed quasi-flame checks disagree");
            return Ok(EXIT_VIOLATION);
        }
    }
    if report.is_flame() {
        println!("flame: yes");
        Ok(EXIT_OK)
    } else {
        println!("flame: no");
        Ok(EXIT_VIOLATION)
    }
}

fn cmd_check_large(input: InputArgs, sub: PathBuf, out: Option<PathBuf>) -> Result<i32, Error> {
    let (d, _) = resolve_input(&input)?;
    let raw = fs::read_to_string(&sub)?;
    let l = vflame_core::format::parse_aligned(
        &raw,
        &d,
        LoadOptions {
            normalize_root: input.normalize_root,
        },
    )?;
    let report = largeness_check(&l, &d)?;
    if !report.large {
        let edge = report.violating_edge.expect("violation carries its edge");
        println!(
            "not large: edge {} has its tail outside the largest bubble of its head",
            d.edge_label(edge)
        );
        return Ok(EXIT_VIOLATION);
    }
    println!(
        "large: one entrance separation per vertex, each valid in the subdigraph and the host"
    );
    if out.is_some() {
        let docs: Vec<_> = report
            .certificates
            .iter()
            .map(|(_, cert)| certificate_to_doc(&d, cert))
            .collect();
        let mut json = serde_json::to_string_pretty(&docs).expect("serializable");
        json.push('\n');
        write_or_print(&out, &json)?;
    }
    Ok(EXIT_OK)
}

fn cmd_bubble(input: InputArgs, target: String, out: Option<PathBuf>) -> Result<i32, Error> {
    let (d, _) = resolve_input(&input)?;
    let v = d.vertex(&target)?;
    let mb = max_bubble(&d, v)?;
    println!(
        "largest bubble of `{target}`: {} vertices, entrance of size {}",
        mb.vertices().len(),
        mb.entrance().len()
    );
    let mut json = serde_json::to_string_pretty(&bubble_to_doc(&d, &mb.bubble))
        .expect("serializable");
    json.push('\n');
    write_or_print(&out, &json)?;
    Ok(EXIT_OK)
}

fn cmd_separation(input: InputArgs, target: String, out: Option<PathBuf>) -> Result<i32, Error> {
    let (d, _) = resolve_input(&input)?;
    let v = d.vertex(&target)?;
    let cert = max_system(&d, v)?;
    println!(
        "maximum internally disjoint system toward `{target}`: {} paths; separation {}{}",
        cert.size(),
        cert.separation
            .vertices
            .iter()
            .map(|&s| d.name(s))
            .collect::<Vec<_>>()
            .join(","),
        if cert.separation.uses_root_edge {
            " plus the root edge"
        } else {
            ""
        }
    );
    let mut json =
        serde_json::to_string_pretty(&certificate_to_doc(&d, &cert)).expect("serializable");
    json.push('\n');
    write_or_print(&out, &json)?;
    Ok(EXIT_OK)
}

fn cmd_verify_cert(input: InputArgs, cert: PathBuf) -> Result<i32, Error> {
    let (d, _) = resolve_input(&input)?;
    let raw = fs::read_to_string(&cert)?;
    let bundle = bundle_from_json(&raw)?;
    let verified = verify_bundle(&d, &bundle)?;
    println!(
        "certificate bundle verified: {} edges, {} per-vertex certificates",
        verified.flame.edge_count(),
        verified.certificates.len()
    );
    Ok(EXIT_OK)
}

fn cmd_gen(input: InputArgs, out: Option<PathBuf>, dot: Option<PathBuf>) -> Result<i32, Error> {
    if input.gen.is_none() {
        return Err(Error::InvalidInput("gen needs --gen SPEC".into()));
    }
    let (d, _) = resolve_input(&input)?;
    if let Some(p) = &dot {
        fs::write(p, to_dot(&d, None))?;
    }
    write_or_print(&out, &digraph_to_json(&d))?;
    Ok(EXIT_OK)
}

fn cmd_export(input: InputArgs, out: Option<PathBuf>, dot: Option<PathBuf>) -> Result<i32, Error> {
    let (d, _) = resolve_input(&input)?;
    if let Some(p) = &dot {
        fs::write(p, to_dot(&d, None))?;
    }
    match (&out, &dot) {
        (None, None) => print!("{}", to_dot(&d, None)),
        (Some(_), _) => write_or_print(&out, &digraph_to_json(&d))?,
        _ => {}
    }
    Ok(EXIT_OK)
}

fn dispatch(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Analyze {
            input,
            out,
            oracle_bound,
        } => cmd_analyze(input, out, oracle_bound),
        Command::Lovasz {
            input,
            order,
            out,
            dot,
        } => cmd_lovasz(input, order, out, dot),
        Command::Construct {
            input,
            order,
            prefix,
            out,
            dot,
        } => cmd_construct(input, order, prefix, out, dot),
        Command::CheckFlame {
            input,
            strict_quasi,
            oracle_bound,
        } => cmd_check_flame(input, strict_quasi, oracle_bound),
        Command::CheckLarge { input, sub, out } => cmd_check_large(input, sub, out),
        Command::Bubble { input, target, out } => cmd_bubble(input, target, out),
        Command::Separation { input, target, out } => cmd_separation(input, target, out),
        Command::VerifyCert { input, cert } => cmd_verify_cert(input, cert),
        Command::Gen { input, out, dot } => cmd_gen(input, out, dot),
        Command::Export { input, out, dot } => cmd_export(input, out, dot),
    }
}

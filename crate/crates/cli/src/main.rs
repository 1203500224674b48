//! `subdiv`: density certification, subdivision enumeration, extremal
//! construction generation, witness extraction, and verification harnesses,
//! all emitting deterministic JSON.
//!
//! Exit codes: 0 success/holds, 2 input error, 3 density check failed,
//! 4 verdict violated or engine mismatch, 5 cap exceeded or inconclusive,
//! 6 invalid witness.

mod harness;
mod input;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use subdiv_core::constructions::ConstructionSpec;
use subdiv_core::density::{is_locally_dense, AnchorKind};
use subdiv_core::graph6;
use subdiv_core::pattern::Pattern;
use subdiv_core::subdivision::{
    enumerate_distinguishable_embed_with, enumerate_distinguishable_subset_with,
    extract_subclique_subdivision, Engine, Limits,
};
use subdiv_core::witness::SubdivisionWitness;
use subdiv_core::Error;

#[derive(Parser)]
#[command(
    name = "subdiv",
    version,
    about = "Exact subdivision counting under local density conditions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Per-anchor copy counts of a pattern, and the density decision
    Density(DensityArgs),
    /// Enumerate subdivisions with distinct vertex sets
    Subdivisions(SubdivisionsArgs),
    /// Generate a construction and write it to a graph file
    Construct(ConstructArgs),
    /// Extract a smaller complete subdivision from a witness
    Extract(ExtractArgs),
    /// Run a verification harness and report holds/violated
    Verify(VerifyArgs),
}

#[derive(Args)]
struct DensityArgs {
    /// Host graph: built-in name, file path, or - for stdin
    #[arg(long)]
    graph: String,
    /// Pattern: built-in name or file path
    #[arg(long)]
    pattern: String,
    /// Check the subgraph-class variant with this k
    #[arg(long)]
    k: Option<usize>,
    /// Anchor kind
    #[arg(long, default_value = "edge", value_parser = parse_anchor_kind)]
    anchor: AnchorKind,
    /// Density threshold: exit 3 when the host is not (F, t)-locally dense
    #[arg(long)]
    t: Option<u64>,
}

fn parse_anchor_kind(s: &str) -> Result<AnchorKind, String> {
    match s.to_ascii_lowercase().as_str() {
        "edge" => Ok(AnchorKind::Edge),
        "vertex" => Ok(AnchorKind::Vertex),
        other => Err(format!("unknown anchor kind {other:?} (edge or vertex)")),
    }
}

#[derive(Args)]
struct SubdivisionsArgs {
    #[arg(long)]
    graph: String,
    #[arg(long)]
    pattern: String,
    /// subset, embed, or both (both asserts agreement)
    #[arg(long, default_value = "subset")]
    engine: String,
    /// Largest vertex-set size to enumerate (default: host order)
    #[arg(long)]
    max_size: Option<usize>,
    /// Include the vertex sets in the output
    #[arg(long)]
    list: bool,
    /// Override the subset-engine host cap (default 16)
    #[arg(long)]
    cap_subset_n: Option<usize>,
    /// Override the embed-engine host cap (default 24)
    #[arg(long)]
    cap_embed_n: Option<usize>,
    /// Override the embed-engine set-size cap (default 12)
    #[arg(long)]
    cap_set_size: Option<usize>,
}

#[derive(Args)]
struct ConstructArgs {
    #[command(subcommand)]
    kind: ConstructKind,
}

#[derive(Subcommand)]
enum ConstructKind {
    /// Clique A of order ell-2 joined to an independent set of order t+1
    Split {
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        t: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Complete graph K_r
    Complete {
        #[arg(long)]
        r: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Complete bipartite graph K_{r,s}
    Bipartite {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Seeded uniform random graph
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args)]
struct OutputArgs {
    /// Output path (- for stdout)
    #[arg(short, long, default_value = "-")]
    output: String,
    /// g6 or edges (default: from the output extension, else edges)
    #[arg(long)]
    format: Option<String>,
}

#[derive(Args)]
struct ExtractArgs {
    /// Witness JSON file (- for stdin)
    #[arg(long)]
    witness: String,
    /// Order of the complete subdivision to extract
    #[arg(long)]
    ell: usize,
    /// Host graph to validate against (structural checks only if absent)
    #[arg(long)]
    graph: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// thm2i | thm2ii | thm2iii | thm7 | lemma5 | jung | tuza-count
    harness: String,
    #[arg(long)]
    ell: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    /// For thm7: the k values to check (default 3..=ell)
    #[arg(long)]
    k: Vec<usize>,
    /// For thm7: the pattern F (default: K_ell minus an edge)
    #[arg(long)]
    pattern: Option<String>,
    /// For thm2iii: the epsilon in the side-set bound
    #[arg(long, default_value_t = 0.5)]
    eps: f64,
    /// For thm2iii: cap on the enumerated family
    #[arg(long, default_value_t = 1_000_000)]
    cap: usize,
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::CapExceeded { .. } => 5,
        Error::InvalidWitness(_) => 6,
        _ => 2,
    }
}

fn print_json(value: &serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("serializable")
    );
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Density(args) => cmd_density(args),
        Command::Subdivisions(args) => cmd_subdivisions(args),
        Command::Construct(args) => cmd_construct(args),
        Command::Extract(args) => cmd_extract(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

fn cmd_density(args: DensityArgs) -> Result<u8, Error> {
    let g = input::load_graph(&args.graph)?;
    let f = input::load_pattern(&args.pattern)?;
    let (dense, report) = is_locally_dense(&g, &f, args.t.unwrap_or(1), args.k, args.anchor)?;
    print_json(&report.to_json());
    Ok(match args.t {
        Some(_) if !dense => 3,
        _ => 0,
    })
}

fn cmd_subdivisions(args: SubdivisionsArgs) -> Result<u8, Error> {
    let g = input::load_graph(&args.graph)?;
    let f = input::load_pattern(&args.pattern)?;
    let max_size = args.max_size.unwrap_or(g.n());
    let mut limits = Limits::default();
    let mut overridden = false;
    if let Some(cap) = args.cap_subset_n {
        limits.subset_host_cap = cap;
        overridden = true;
    }
    if let Some(cap) = args.cap_embed_n {
        limits.embed_host_cap = cap;
        overridden = true;
    }
    if let Some(cap) = args.cap_set_size {
        limits.embed_set_cap = cap;
        overridden = true;
    }
    if overridden {
        eprintln!("warning: enumeration caps overridden; expect exponential runtime");
    }

    match args.engine.to_ascii_lowercase().as_str() {
        "both" => {
            let a = enumerate_distinguishable_subset_with(&g, &f, max_size, &limits)?;
            let b = enumerate_distinguishable_embed_with(&g, &f, max_size, &limits)?;
            if a.vertex_sets != b.vertex_sets {
                eprintln!(
                    "engine mismatch: subset found {} sets, embed found {}",
                    a.vertex_sets.len(),
                    b.vertex_sets.len()
                );
                return Ok(4);
            }
            let mut json = a.to_json(args.list);
            json["engines_agree"] = json!(true);
            print_json(&json);
            Ok(if a.truncated || b.truncated { 5 } else { 0 })
        }
        name => {
            let result = match name.parse::<Engine>()? {
                Engine::Subset => enumerate_distinguishable_subset_with(&g, &f, max_size, &limits)?,
                Engine::Embed => enumerate_distinguishable_embed_with(&g, &f, max_size, &limits)?,
            };
            print_json(&result.to_json(args.list));
            Ok(if result.truncated { 5 } else { 0 })
        }
    }
}

fn cmd_construct(args: ConstructArgs) -> Result<u8, Error> {
    let (spec, out) = match args.kind {
        ConstructKind::Split { ell, t, out } => (ConstructionSpec::Split { l: ell, t }, out),
        ConstructKind::Complete { r, out } => (ConstructionSpec::Complete { r }, out),
        ConstructKind::Bipartite { r, s, out } => {
            (ConstructionSpec::CompleteBipartite { r, s }, out)
        }
        ConstructKind::Random { n, p, seed, out } => (ConstructionSpec::Random { n, p, seed }, out),
    };
    let graph = spec.generate()?;
    let format = match &out.format {
        Some(f) => f.clone(),
        None if out.output.ends_with(".g6") => "g6".into(),
        None => "edges".into(),
    };
    let body = match format.as_str() {
        "g6" => format!("{}\n{}\n", spec.header(), graph6::encode(&graph)?),
        "edges" => format!("{}\n{}", spec.header(), graph.to_edge_list()),
        other => {
            return Err(Error::InvalidParameter(format!(
                "unknown format {other:?} (g6 or edges)"
            )))
        }
    };
    if out.output == "-" {
        print!("{body}");
    } else {
        std::fs::File::create(&out.output)
            .and_then(|mut f| f.write_all(body.as_bytes()))
            .map_err(|e| Error::Parse {
                line: 0,
                msg: format!("{}: {e}", out.output),
            })?;
    }
    Ok(0)
}

fn cmd_extract(args: ExtractArgs) -> Result<u8, Error> {
    let text = if args.witness == "-" {
        let mut buf = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut buf).map_err(|e| {
            Error::Parse {
                line: 0,
                msg: format!("stdin: {e}"),
            }
        })?;
        buf
    } else {
        std::fs::read_to_string(&args.witness).map_err(|e| Error::Parse {
            line: 0,
            msg: format!("{}: {e}", args.witness),
        })?
    };
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| Error::Parse {
        line: 0,
        msg: format!("witness JSON: {e}"),
    })?;
    let witness = SubdivisionWitness::from_json(&value)?;

    let host = args.graph.as_deref().map(input::load_graph).transpose()?;
    let violations = match &host {
        Some(g) => witness.validate(g),
        None => witness.validate_structure(),
    };
    if !violations.is_empty() {
        return Err(Error::InvalidWitness(violations));
    }

    let extracted = extract_subclique_subdivision(&witness, args.ell)?;
    let violations = match &host {
        Some(g) => extracted.validate(g),
        None => extracted.validate_structure(),
    };
    if !violations.is_empty() {
        return Err(Error::InvalidWitness(violations));
    }
    print_json(&extracted.to_json());
    Ok(0)
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, Error> {
    let need = |v: Option<usize>, flag: &str| {
        v.ok_or_else(|| Error::InvalidParameter(format!("{} requires --{flag}", args.harness)))
    };
    let report = match args.harness.as_str() {
        "tuza-count" => harness::tuza_count(need(args.ell, "ell")?, need(args.r, "r")?)?,
        "thm2i" => harness::thm2i(need(args.d, "d")?, need(args.ell, "ell")?)?,
        "thm2ii" => harness::thm2ii(need(args.ell, "ell")?, need(args.t, "t")?)?,
        "thm2iii" => harness::thm2iii(
            args.ell.unwrap_or(4),
            need(args.t, "t")?,
            args.eps,
            args.cap,
        )?,
        "thm7" => {
            let l = need(args.ell, "ell")?;
            let pattern = match &args.pattern {
                Some(spec) => input::load_pattern(spec)?,
                None => Pattern::complete_minus_edge(l)?,
            };
            let ks: Vec<usize> = if args.k.is_empty() {
                (3..=l).collect()
            } else {
                args.k.clone()
            };
            harness::thm7(l, need(args.t, "t")?, &pattern, &ks)?
        }
        "lemma5" => harness::lemma5(need(args.ell, "ell")?, need(args.t, "t")?)?,
        "jung" => harness::jung(need(args.r, "r")?)?,
        other => {
            return Err(Error::InvalidParameter(format!(
                "unknown harness {other:?} (thm2i, thm2ii, thm2iii, thm7, lemma5, jung, tuza-count)"
            )))
        }
    };
    print_json(&report.to_json());
    Ok(report.verdict.exit_code() as u8)
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("SUBDIV_THREADS") {
        match threads.parse::<usize>() {
            Ok(n) if n >= 1 => {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global()
                    .expect("rayon pool is built once");
            }
            _ => {
                eprintln!("error: SUBDIV_THREADS must be a positive integer, got {threads:?}");
                return ExitCode::from(2);
            }
        }
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

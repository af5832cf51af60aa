//! `sectour` — sectionable tournaments from the command line.
//!
//! Builds tournaments from spec expressions, runs the pivot matching on
//! their acyclic-subset complexes, evaluates the closed-form cell,
//! depth, and dimension recursions, computes exact chromatic numbers and
//! the chromatic bound, and batch-verifies whole corpora.
//!
//! Exit codes: 0 — success / all checks passed; 1 — a verification
//! check failed; 2 — usage or input error; 3 — a resource limit was hit
//! (raise the relevant cap with `--max-n` where available).

mod parse;
mod verify;

use std::io::Read as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use sectour_core::{
    acyclic_complex_with_limit, betti_numbers, canonical_pivots, chromatic_bound,
    chromatic_exact_with_limit, constructive_coloring, cs_recursive, deep_triangles,
    depth_formula, dim_formula, face_to_braces, generate_corpus, normalize, realize, root_arity,
    run_pivots, width, Coloring, Error, Result, SectionableSpec, Tournament, Vertex,
    DEFAULT_COLOR_SEARCH_LIMIT, DEFAULT_CORPUS_MAX_N, DEFAULT_ENUMERATION_LIMIT,
};

use parse::parse_spec;
use verify::{verify_spec, BatchRow};

/// JSON rendering of plain report data; these types cannot fail to
/// serialize.
fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("report serialization")
}

#[derive(Parser)]
#[command(
    name = "sectour",
    version,
    about = "Sectionable tournaments: cell structures, depth/dimension formulas, acyclic colorings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Tournament source shared by commands that work on realizations:
/// either a spec expression or an edge-list file.
#[derive(Args)]
struct TournamentInput {
    /// Spec expression, e.g. "R5(R1,R1,R3,R3,R1)"
    #[arg(value_name = "SPEC", required_unless_present = "edges")]
    spec: Option<String>,
    /// Read the tournament from an edge-list file instead
    /// (first line n, then one "u v" line per directed edge)
    #[arg(long, value_name = "FILE", conflicts_with = "spec")]
    edges: Option<PathBuf>,
}

impl TournamentInput {
    fn resolve(&self) -> Result<(Option<SectionableSpec>, Tournament)> {
        match (&self.spec, &self.edges) {
            (Some(text), None) => {
                let spec = parse_spec(text)?;
                let t = realize(&spec)?;
                Ok((Some(spec), t))
            }
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path)?;
                Ok((None, Tournament::from_edge_list(&text)?))
            }
            // clap's required_unless_present/conflicts_with rule these out.
            _ => Err(Error::invalid("give exactly one of SPEC or --edges")),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Realize a spec with canonical labels and print its edge list
    Build {
        /// Spec expression, e.g. "R5(R1,R1,R3,R3,R1)"
        spec: String,
    },
    /// List the faces of the acyclic-subset complex in canonical order
    Faces {
        #[command(flatten)]
        input: TournamentInput,
        /// Largest tournament order to enumerate
        #[arg(long = "max-n", value_name = "N", default_value_t = DEFAULT_ENUMERATION_LIMIT)]
        max_n: usize,
        /// Emit a JSON array instead of one face per line
        #[arg(long)]
        json: bool,
    },
    /// Run the pivot matching; print pairs, critical cells, and the histogram
    Morse {
        #[command(flatten)]
        input: TournamentInput,
        /// Comma-separated pivot vertices overriding the canonical sequence
        #[arg(long, value_name = "V1,V2,...", value_delimiter = ',')]
        pivots: Option<Vec<Vertex>>,
        /// Largest tournament order to enumerate
        #[arg(long = "max-n", value_name = "N", default_value_t = DEFAULT_ENUMERATION_LIMIT)]
        max_n: usize,
        /// Emit one JSON object instead of text lines
        #[arg(long)]
        json: bool,
    },
    /// Closed-form critical-cell histogram of a spec
    Cs {
        /// Spec expression
        spec: String,
    },
    /// Closed-form depth (top critical-cell dimension)
    Depth {
        /// Spec expression
        spec: String,
    },
    /// Closed-form dimension of the acyclic-subset complex
    Dim {
        /// Spec expression
        spec: String,
    },
    /// Longest cyclic run of non-transitive blocks at the root
    Width {
        /// Spec expression (must be a composition)
        spec: String,
    },
    /// Deep triangles: block sequences of R3 subblocks with vertex labels
    Triangles {
        /// Spec expression
        spec: String,
        /// Emit a JSON array instead of one triangle per line
        #[arg(long)]
        json: bool,
    },
    /// Normal form of a spec (same homology, minimal block orders)
    Normalize {
        /// Spec expression
        spec: String,
    },
    /// Constructive acyclic coloring (JSON: color count and assignment)
    Color {
        /// Spec expression
        spec: String,
    },
    /// Exact chromatic number by complete search
    Chi {
        #[command(flatten)]
        input: TournamentInput,
        /// Largest tournament order to search
        #[arg(long = "max-n", value_name = "N", default_value_t = DEFAULT_COLOR_SEARCH_LIMIT)]
        max_n: usize,
    },
    /// Chromatic upper bound from the root arity and closed-form dimension
    Bound {
        /// Spec expression
        spec: String,
    },
    /// Reduced Betti numbers of the acyclic-subset complex
    Betti {
        #[command(flatten)]
        input: TournamentInput,
        /// Largest tournament order to enumerate
        #[arg(long = "max-n", value_name = "N", default_value_t = DEFAULT_ENUMERATION_LIMIT)]
        max_n: usize,
    },
    /// Run the full consistency suite on one spec (JSON report)
    Verify {
        /// Spec expression
        spec: String,
        /// Raise the enumeration and chromatic-search caps to N
        #[arg(long = "max-n", value_name = "N")]
        max_n: Option<usize>,
    },
    /// Verify many specs: one per line from FILE or stdin, or generated
    Batch {
        /// File with one spec per line (stdin when absent; # starts a comment)
        #[arg(value_name = "FILE")]
        file: Option<PathBuf>,
        /// Generate N specs from --seed instead of reading them
        #[arg(long, value_name = "N", conflicts_with = "file")]
        gen: Option<usize>,
        /// Seed for --gen
        #[arg(long, value_name = "SEED", default_value_t = 0)]
        seed: u64,
        /// Cap: generated spec orders, enumeration, and chromatic search
        #[arg(long = "max-n", value_name = "N")]
        max_n: Option<usize>,
        /// Tab-separated rows instead of JSON lines
        #[arg(long)]
        tsv: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::ResourceLimit { .. } => {
                    eprintln!("hint: --max-n raises the cap on commands that enumerate or search");
                    ExitCode::from(3)
                }
                Error::CheckFailed(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}

#[derive(Serialize)]
struct MorseOut {
    pivots: Vec<Vertex>,
    pairs: Vec<MorsePairOut>,
    critical: Vec<String>,
    histogram: sectour_core::CellHistogram,
}

#[derive(Serialize)]
struct MorsePairOut {
    lower: String,
    upper: String,
    pivot: Vertex,
}

#[derive(Serialize)]
struct TriangleOut {
    blocks: Vec<u32>,
    vertices: [Vertex; 3],
}

#[derive(Serialize)]
struct ColorOut {
    colors: usize,
    assignment: Coloring,
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Build { spec } => {
            let t = realize(&parse_spec(&spec)?)?;
            print!("{}", t.to_edge_list());
        }
        Command::Faces { input, max_n, json } => {
            let (_, t) = input.resolve()?;
            let family = acyclic_complex_with_limit(&t, max_n)?;
            let faces: Vec<String> =
                family.canonical_members().iter().map(|&f| face_to_braces(f)).collect();
            if json {
                println!("{}", to_json(&faces));
            } else {
                for face in faces {
                    println!("{face}");
                }
            }
        }
        Command::Morse { input, pivots, max_n, json } => {
            let (spec, t) = input.resolve()?;
            let pivots = match (pivots, &spec) {
                (Some(p), _) => p,
                (None, Some(spec)) => canonical_pivots(spec)?,
                (None, None) => {
                    return Err(Error::invalid(
                        "--edges has no canonical pivot sequence; pass --pivots v1,v2,...",
                    ))
                }
            };
            let family = acyclic_complex_with_limit(&t, max_n)?;
            let (matching, critical) = run_pivots(&t, &family, &pivots)?;
            let pairs: Vec<MorsePairOut> = matching
                .pairs()
                .iter()
                .map(|p| MorsePairOut {
                    lower: face_to_braces(p.lower),
                    upper: face_to_braces(p.upper),
                    pivot: p.pivot,
                })
                .collect();
            let cells: Vec<String> =
                critical.cells.canonical_members().iter().map(|&f| face_to_braces(f)).collect();
            if json {
                let out = MorseOut {
                    pivots,
                    pairs,
                    critical: cells,
                    histogram: critical.histogram,
                };
                println!("{}", to_json(&out));
            } else {
                println!(
                    "pivots: {}",
                    pivots.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
                );
                for p in &pairs {
                    println!("{} -> {} [pivot {}]", p.lower, p.upper, p.pivot);
                }
                for cell in &cells {
                    println!("critical: {cell}");
                }
                println!("histogram: {}", to_json(&critical.histogram));
            }
        }
        Command::Cs { spec } => {
            println!("{}", to_json(&cs_recursive(&parse_spec(&spec)?)));
        }
        Command::Depth { spec } => {
            println!("{}", depth_formula(&parse_spec(&spec)?));
        }
        Command::Dim { spec } => {
            println!("{}", dim_formula(&parse_spec(&spec)?));
        }
        Command::Width { spec } => {
            println!("{}", width(&parse_spec(&spec)?)?);
        }
        Command::Triangles { spec, json } => {
            let triangles = deep_triangles(&parse_spec(&spec)?);
            if json {
                let out: Vec<TriangleOut> = triangles
                    .iter()
                    .map(|(seq, verts)| TriangleOut { blocks: seq.0.clone(), vertices: *verts })
                    .collect();
                println!("{}", to_json(&out));
            } else {
                for (seq, [a, b, c]) in &triangles {
                    println!("{seq} {{{a},{b},{c}}}");
                }
            }
        }
        Command::Normalize { spec } => {
            println!("{}", normalize(&parse_spec(&spec)?).canonical_text());
        }
        Command::Color { spec } => {
            let spec = parse_spec(&spec)?;
            let coloring = constructive_coloring(&spec)?;
            let out = ColorOut { colors: coloring.color_count(), assignment: coloring };
            println!("{}", to_json(&out));
        }
        Command::Chi { input, max_n } => {
            let (_, t) = input.resolve()?;
            let (chi, _) = chromatic_exact_with_limit(&t, max_n)?;
            println!("{chi}");
        }
        Command::Bound { spec } => {
            let spec = parse_spec(&spec)?;
            println!("{}", chromatic_bound(root_arity(&spec), dim_formula(&spec)));
        }
        Command::Betti { input, max_n } => {
            let (_, t) = input.resolve()?;
            let summary = betti_numbers(&acyclic_complex_with_limit(&t, max_n)?)?;
            println!("{}", to_json(&summary.betti));
        }
        Command::Verify { spec, max_n } => {
            let spec = parse_spec(&spec)?;
            let enum_limit = max_n.unwrap_or(DEFAULT_ENUMERATION_LIMIT);
            let chi_limit = max_n.unwrap_or(DEFAULT_COLOR_SEARCH_LIMIT);
            let report = verify_spec(&spec, enum_limit, chi_limit)?;
            println!("{}", serde_json::to_string_pretty(&report).expect("report serialization"));
            if !report.pass {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Batch { file, gen, seed, max_n, tsv } => {
            return batch(file, gen, seed, max_n, tsv);
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// Verifies a stream of specs, one row of output per spec, in input
/// order. A row that cannot be processed (parse error, resource limit)
/// is reported with its error and counts as failed; the exit code is 0
/// only when every row passes.
fn batch(
    file: Option<PathBuf>,
    gen: Option<usize>,
    seed: u64,
    max_n: Option<usize>,
    tsv: bool,
) -> Result<ExitCode> {
    let enum_limit = max_n.unwrap_or(DEFAULT_ENUMERATION_LIMIT);
    let chi_limit = max_n.unwrap_or(DEFAULT_COLOR_SEARCH_LIMIT);

    let lines: Vec<String> = if let Some(count) = gen {
        let corpus_max = max_n.unwrap_or(DEFAULT_CORPUS_MAX_N);
        generate_corpus(count, corpus_max, seed)?
            .iter()
            .map(|s| s.canonical_text())
            .collect()
    } else {
        let text = match file {
            Some(path) => std::fs::read_to_string(path)?,
            None => {
                let mut buf = String::new();
                std::io::stdin().read_to_string(&mut buf)?;
                buf
            }
        };
        text.lines()
            .map(|l| l.trim())
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| l.to_string())
            .collect()
    };

    let mut all_pass = true;
    for line in &lines {
        let row = match parse_spec(line).and_then(|spec| verify_spec(&spec, enum_limit, chi_limit))
        {
            Ok(report) => BatchRow::from_report(&report),
            Err(err) => BatchRow::from_error(line, &err),
        };
        all_pass &= row.pass;
        if tsv {
            println!("{}", row.tsv());
        } else {
            println!("{}", to_json(&row));
        }
    }
    Ok(if all_pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

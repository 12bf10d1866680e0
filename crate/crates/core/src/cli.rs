//! Command-line front end. [`run`] is the whole program minus process
//! plumbing, so it can be driven from tests.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::json;

use crate::counting::{
    degree_histogram_brute, degree_histogram_formula, edge_count_brute, edge_count_formula,
    vertex_count_formula,
};
use crate::enumerate::{enumerate_valid, MajorityFilter};
use crate::error::{OfgError, Result};
use crate::general::{build_ofg_general, count_copies_in, embed_into_uniform, rotational_embeddings};
use crate::graph::{build_ofg_uniform, BfsSources, ExportFormat};
use crate::limits::{Limits, MAX_N_ENV};
use crate::mv::MvAssignment;
use crate::path::{find_path, PathAlgorithm};
use crate::pattern::CreasePattern;

#[derive(Debug, Parser)]
#[command(name = "ofg", version, about = "Origami flip graphs of single-vertex crease patterns")]
struct Cli {
    /// Largest n accepted by enumeration and graph materialization.
    #[arg(long, global = true, env = MAX_N_ENV, default_value_t = Limits::default().max_n)]
    limit: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the valid assignments of A_2n, one MV string per line.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Majority::Both)]
        majority: Majority,
    },
    /// Export OFG(A_2n).
    Graph {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Face-flip path between two valid assignments of A_2n.
    Path {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, value_enum)]
        algo: Algo,
        /// Replay the path and report whether every step stays valid.
        #[arg(long)]
        verify: bool,
        /// Print the path as a JSON document instead of a face list.
        #[arg(long)]
        json: bool,
    },
    /// Vertex, edge or degree counts.
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        what: What,
        #[arg(long, value_enum, default_value_t = Method::Formula)]
        method: Method,
    },
    /// The edge-count sequence for n = 1..=max-n.
    Sequence {
        #[arg(long)]
        max_n: usize,
        /// `both` cross-checks by brute force for every n within the limit.
        #[arg(long, value_enum, default_value_t = Method::Formula)]
        method: Method,
    },
    /// Diameter of OFG(A_2n).
    Diameter {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = DiameterMethod::Both)]
        method: DiameterMethod,
    },
    /// Analyze a general flat-foldable vertex.
    Vertex {
        #[command(flatten)]
        pattern: PatternArgs,
        /// Export OFG(C) in this format instead of the summary.
        #[arg(long, value_enum)]
        graph: Option<Format>,
        /// Print only the number of valid assignments.
        #[arg(long)]
        count: bool,
    },
    /// Embeddings of OFG(C) into OFG(A_2n).
    Embed {
        #[command(flatten)]
        pattern: PatternArgs,
        /// Rotation offset, 0-based.
        #[arg(long, conflicts_with = "all")]
        rotation: Option<usize>,
        /// Report every rotation and the number of distinct copies.
        #[arg(long)]
        all: bool,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct PatternArgs {
    /// Comma-separated sector angles in degrees, e.g. 45,15,60,85,75,80.
    #[arg(long, allow_hyphen_values = true)]
    angles: Option<String>,
    /// Crease pattern document (JSON or TOML).
    #[arg(long)]
    pattern: Option<PathBuf>,
}

impl PatternArgs {
    fn load(&self) -> Result<CreasePattern> {
        match (&self.angles, &self.pattern) {
            (Some(list), _) => CreasePattern::from_angle_list(list),
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| OfgError::Format(format!("{}: {e}", path.display())))?;
                CreasePattern::from_document(&text)
            }
            (None, None) => unreachable!("clap enforces one source"),
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Majority {
    Mountain,
    Valley,
    Both,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
    Csv,
}

impl From<Format> for ExportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Dot => ExportFormat::Dot,
            Format::Json => ExportFormat::Json,
            Format::Csv => ExportFormat::Csv,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Algo {
    Shwoop,
    Halves,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum What {
    Vertices,
    Edges,
    Degrees,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Brute,
    Formula,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DiameterMethod {
    Bfs,
    Formula,
    Both,
}

/// Parse `args` (including the program name), execute, and return the exit
/// status: 0 on success, 1 for invalid input, 2 for an internal consistency
/// failure. Diagnostics go to `err` as `error[CODE]: message`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "error[E_USAGE]: {e}");
                    1
                }
            };
        }
    };
    let limits = Limits::default().with_max_n(cli.limit);
    let mut text = String::new();
    let result = execute(cli.command, &limits, &mut text);
    // Partial output (e.g. a mismatch report) is still useful on failure.
    let _ = out.write_all(text.as_bytes());
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error[{}]: {e}", e.code());
            e.exit_status()
        }
    }
}

fn parse_mv(s: &str, n: usize) -> Result<MvAssignment> {
    let mv: MvAssignment = s.trim().parse()?;
    if mv.degree() != 2 * n {
        return Err(OfgError::InvalidMvString {
            input: s.to_string(),
            reason: format!("expected {} creases for n = {n}", 2 * n),
        });
    }
    Ok(mv)
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "OK"
    } else {
        "MISMATCH"
    }
}

fn mismatch(what: &str) -> OfgError {
    OfgError::Consistency(format!("{what}: brute force and closed form disagree"))
}

fn execute(command: Command, limits: &Limits, out: &mut String) -> Result<()> {
    match command {
        Command::Enumerate { n, majority } => {
            limits.check_n(n)?;
            let filter = match majority {
                Majority::Mountain => MajorityFilter::Mountain,
                Majority::Valley => MajorityFilter::Valley,
                Majority::Both => MajorityFilter::Both,
            };
            for mv in enumerate_valid(n, filter)? {
                let _ = writeln!(out, "{mv}");
            }
        }
        Command::Graph { n, format, out: file } => {
            let graph = build_ofg_uniform(n, limits)?;
            let doc = graph.export(format.into());
            match file {
                Some(path) => std::fs::write(&path, doc)
                    .map_err(|e| OfgError::Format(format!("{}: {e}", path.display())))?,
                None => out.push_str(&doc),
            }
        }
        Command::Path {
            n,
            from,
            to,
            algo,
            verify,
            json,
        } => {
            if n == 0 {
                return Err(OfgError::UnsupportedDegree(0));
            }
            let mu = parse_mv(&from, n)?;
            let nu = parse_mv(&to, n)?;
            let algo = match algo {
                Algo::Shwoop => PathAlgorithm::Shwoop,
                Algo::Halves => PathAlgorithm::Halves,
            };
            let path = find_path(algo, &mu, &nu)?;
            if json {
                out.push_str(&path.to_json());
                out.push('\n');
            } else {
                let faces: Vec<String> = path.faces.iter().map(|f| f.to_string()).collect();
                let _ = writeln!(out, "{}", faces.join(" "));
            }
            if verify {
                match path.verify() {
                    Ok(()) => out.push_str("verify OK\n"),
                    Err(v) => {
                        let _ = writeln!(out, "verify FAILED: {v}");
                        return Err(OfgError::Consistency(format!("path check failed: {v}")));
                    }
                }
            }
        }
        Command::Count { n, what, method } => count(n, what, method, limits, out)?,
        Command::Sequence { max_n, method } => {
            let formula: Vec<BigUint> = (1..=max_n).map(edge_count_formula).collect::<Result<_>>()?;
            let mut ok = true;
            if method != Method::Formula {
                for (i, f) in formula.iter().enumerate() {
                    let n = i + 1;
                    if n > limits.max_n {
                        if method == Method::Brute {
                            limits.check_n(n)?;
                        }
                        break;
                    }
                    if BigUint::from(edge_count_brute(n)?) != *f {
                        ok = false;
                        let _ = writeln!(out, "n={n}: brute {} formula {f} MISMATCH", edge_count_brute(n)?);
                    }
                }
            }
            let items: Vec<String> = formula.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "{}", items.join(", "));
            if !ok {
                return Err(mismatch("edge sequence"));
            }
        }
        Command::Diameter { n, method } => {
            let bfs = if method != DiameterMethod::Formula {
                let graph = build_ofg_uniform(n, limits)?;
                let metrics = graph.bfs_metrics(BfsSources::SymmetryOrbits);
                if !metrics.connected {
                    return Err(OfgError::Consistency(format!("OFG(A_{}) is disconnected", 2 * n)));
                }
                Some(metrics.diameter as usize)
            } else {
                if n == 0 {
                    return Err(OfgError::UnsupportedDegree(0));
                }
                None
            };
            match (method, bfs) {
                (DiameterMethod::Formula, _) => {
                    let _ = writeln!(out, "{n}");
                }
                (DiameterMethod::Bfs, Some(d)) => {
                    let _ = writeln!(out, "{d}");
                }
                (_, Some(d)) => {
                    let _ = writeln!(out, "{d} {n} {}", verdict(d == n));
                    if d != n {
                        return Err(mismatch("diameter"));
                    }
                }
                _ => unreachable!(),
            }
        }
        Command::Vertex {
            pattern,
            graph,
            count,
        } => {
            let c = pattern.load()?;
            let g = build_ofg_general(&c, limits)?;
            if count {
                let _ = writeln!(out, "{}", g.vertex_count());
            } else if let Some(format) = graph {
                out.push_str(&g.export(format.into()));
            } else {
                let _ = writeln!(out, "angles: {c}");
                let _ = writeln!(out, "degree: {}", c.degree());
                let _ = writeln!(out, "uniform: {}", c.is_uniform());
                let _ = writeln!(out, "valid: {}", g.vertex_count());
                let _ = writeln!(out, "edges: {}", g.edge_count());
                let _ = writeln!(out, "components: {}", g.component_count());
                let _ = writeln!(out, "bipartite: {}", g.is_bipartite());
                for v in g.vertices() {
                    let _ = writeln!(out, "{v}");
                }
            }
        }
        Command::Embed {
            pattern,
            rotation,
            all,
        } => {
            let c = pattern.load()?;
            if all {
                let g = build_ofg_general(&c, limits)?;
                let maps = rotational_embeddings(&c, &g)?;
                let preserved = maps.iter().all(|m| m.preserves_edges(&g));
                let copies = count_copies_in(&g);
                let doc = json!({
                    "degree": c.degree(),
                    "vertices": g.vertex_count(),
                    "edges": g.edge_count(),
                    "edges_preserved": preserved,
                    "rotational_copies": copies.rotational,
                    "with_reflections": copies.with_reflections,
                    "embeddings": maps,
                });
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"));
                if !preserved {
                    return Err(OfgError::Consistency("an embedding drops an edge".into()));
                }
            } else {
                let map = embed_into_uniform(&c, rotation.unwrap_or(0), limits)?;
                let _ = writeln!(out, "{}", map.to_json());
            }
        }
    }
    Ok(())
}

fn count(n: usize, what: What, method: Method, limits: &Limits, out: &mut String) -> Result<()> {
    let brute = method != Method::Formula;
    let formula = method != Method::Brute;
    if brute {
        limits.check_n(n)?;
    } else if n == 0 {
        return Err(OfgError::UnsupportedDegree(0));
    }
    match what {
        What::Vertices | What::Edges => {
            let b: Option<BigUint> = if !brute {
                None
            } else if matches!(what, What::Vertices) {
                Some(BigUint::from(enumerate_valid(n, MajorityFilter::Both)?.len()))
            } else {
                Some(BigUint::from(edge_count_brute(n)?))
            };
            let f: Option<BigUint> = if !formula {
                None
            } else if matches!(what, What::Vertices) {
                Some(vertex_count_formula(n))
            } else {
                Some(edge_count_formula(n)?)
            };
            match (b, f) {
                (Some(b), Some(f)) => {
                    let _ = writeln!(out, "{b} {f} {}", verdict(b == f));
                    if b != f {
                        return Err(mismatch("count"));
                    }
                }
                (Some(v), None) | (None, Some(v)) => {
                    let _ = writeln!(out, "{v}");
                }
                (None, None) => unreachable!(),
            }
        }
        What::Degrees => {
            let b = if brute { Some(degree_histogram_brute(n)?) } else { None };
            let f = if formula { Some(degree_histogram_formula(n)?) } else { None };
            match (b, f) {
                (Some(b), Some(f)) => {
                    let keys: std::collections::BTreeSet<usize> =
                        b.keys().chain(f.keys()).copied().collect();
                    let mut ok = true;
                    for k in keys {
                        let bv = BigUint::from(b.get(&k).copied().unwrap_or(0));
                        let fv = f.get(&k).cloned().unwrap_or_default();
                        let same = bv == fv;
                        ok &= same;
                        let _ = writeln!(out, "{k} {bv} {fv} {}", verdict(same));
                    }
                    if !ok {
                        return Err(mismatch("degree histogram"));
                    }
                }
                (Some(b), None) => {
                    for (k, v) in b {
                        let _ = writeln!(out, "{k} {v}");
                    }
                }
                (None, Some(f)) => {
                    for (k, v) in f {
                        let _ = writeln!(out, "{k} {v}");
                    }
                }
                (None, None) => unreachable!(),
            }
        }
    }
    Ok(())
}

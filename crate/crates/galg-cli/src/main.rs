//! Command-line surface for the graph-algebra library: Hilbert series,
//! structural checks, Tutte polynomials, graph reconstruction, and the
//! batch search for Tutte-equivalent graphs separated by their filtered
//! series.
//!
//! Exit codes: 0 success, 1 check failure, 2 usage or parse error,
//! 3 resource bound exceeded.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use galg_core::{
    are_isomorphic, check_p_relations, check_q_relations, check_tree_relations, gen_f, gen_x,
    gen_y, gen_y_tilde, generic_series, graded_series, filtered_series, reconstruct, search,
    Algebra, AlgebraElement, GalgError, HilbertSeries, Multigraph, RelationReport, SearchMode,
    SearchOptions, TreeRelationReport, UniPoly, DEFAULT_ENUMERATION_BOUND,
    DEFAULT_ISOMORPHISM_BOUND, DEFAULT_SUBSET_BOUND,
};

/// Default cap on the edge count admitted to rank computations (the
/// monomial space has dimension 2^|E|). Override with GALG_MAX_EDGES.
const DEFAULT_RANK_EDGE_BOUND: usize = 18;

#[derive(Parser)]
#[command(
    name = "galg",
    version,
    about = "Exact Hilbert series and structural checks for graph edge algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the Hilbert series of a graph algebra
    Series {
        /// Graph file ("vertices N" header, one "u v" edge per line)
        file: PathBuf,
        /// Algebra choice: C, K, CT, KT, f:<polyfile>, or generic
        #[arg(long, value_parser = parse_algebra_choice)]
        algebra: AlgebraChoice,
        /// Emit machine-readable JSON on stdout
        #[arg(long)]
        json: bool,
    },
    /// Run the structural check suite on a graph
    Check {
        /// Graph file
        file: PathBuf,
    },
    /// Search for Tutte-equivalent graph pairs separated by filtered series
    Search {
        /// Number of vertices
        #[arg(long)]
        vertices: usize,
        /// Number of edges
        #[arg(long)]
        edges: usize,
        /// Group by whole-graph Tutte polynomial (forest) or by the
        /// Tutte polynomial of the bridgeless core (tree)
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Also compute generic series for each reported pair
        #[arg(long)]
        generic: bool,
        /// Number of random-polynomial seeds for generic series
        #[arg(long, default_value_t = 3)]
        seeds: u64,
    },
    /// Print the Tutte polynomial and forest/tree counts
    Tutte {
        /// Graph file
        file: PathBuf,
        /// Emit machine-readable JSON on stdout
        #[arg(long)]
        json: bool,
    },
    /// Rebuild a graph from its vertex generators and verify isomorphism
    Reconstruct {
        /// Graph file
        file: PathBuf,
        /// Emit machine-readable JSON on stdout
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Forest,
    Tree,
}

#[derive(Clone)]
enum AlgebraChoice {
    /// Graded span of the X generators in the full algebra.
    C,
    /// Filtered span of the Y generators in the full algebra.
    K,
    /// Graded span of the X generators in the tree quotient.
    Ct,
    /// Filtered span of the Y generators in the tree quotient.
    Kt,
    /// Filtered span of {f(X_i)} for a polynomial read from a file.
    F(PathBuf),
    /// Filtered span of {f(X_i)} for random admissible f, 3 seeds.
    Generic,
}

fn parse_algebra_choice(s: &str) -> Result<AlgebraChoice, String> {
    match s {
        "C" => Ok(AlgebraChoice::C),
        "K" => Ok(AlgebraChoice::K),
        "CT" => Ok(AlgebraChoice::Ct),
        "KT" => Ok(AlgebraChoice::Kt),
        "generic" => Ok(AlgebraChoice::Generic),
        other => match other.strip_prefix("f:") {
            Some(path) if !path.is_empty() => Ok(AlgebraChoice::F(PathBuf::from(path))),
            _ => Err(format!(
                "expected C, K, CT, KT, f:<file>, or generic (got '{other}')"
            )),
        },
    }
}

/// CLI-level error: either a library error (bound violations map to
/// exit 3, everything else to 2) or a plain usage message (exit 2).
enum CliError {
    Galg(GalgError),
    Usage(String),
}

impl From<GalgError> for CliError {
    fn from(e: GalgError) -> Self {
        CliError::Galg(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Galg(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "{m}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Galg(GalgError::BoundExceeded { .. }) => 3,
            _ => 2,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Series {
            file,
            algebra,
            json,
        } => cmd_series(&file, &algebra, json),
        Command::Check { file } => cmd_check(&file),
        Command::Search {
            vertices,
            edges,
            mode,
            generic,
            seeds,
        } => cmd_search(vertices, edges, mode, generic, seeds),
        Command::Tutte { file, json } => cmd_tutte(&file, json),
        Command::Reconstruct { file, json } => cmd_reconstruct(&file, json),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Multigraph, CliError> {
    Ok(Multigraph::parse(&read_file(path)?)?)
}

/// Drops blank lines and `#` comment lines (polynomial files share the
/// comment convention of graph files).
fn strip_comments(text: &str) -> String {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Edge cap for rank computations; the GALG_MAX_EDGES environment
/// variable overrides the default.
fn rank_edge_bound() -> Result<usize, CliError> {
    match std::env::var("GALG_MAX_EDGES") {
        Ok(raw) => raw.trim().parse::<usize>().map_err(|_| {
            CliError::Usage(format!("invalid GALG_MAX_EDGES value '{raw}'"))
        }),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_RANK_EDGE_BOUND),
        Err(e) => Err(CliError::Usage(format!("invalid GALG_MAX_EDGES: {e}"))),
    }
}

fn ensure_rank_bound(g: &Multigraph) -> Result<(), CliError> {
    let bound = rank_edge_bound()?;
    if g.n_edges() > bound {
        return Err(GalgError::BoundExceeded {
            what: "rank-computation edge",
            value: g.n_edges(),
            bound,
        }
        .into());
    }
    Ok(())
}

fn x_generators(algebra: &Arc<Algebra>) -> Result<Vec<AlgebraElement>, CliError> {
    let n = algebra.graph().n_vertices();
    Ok((0..n)
        .map(|i| gen_x(algebra, i))
        .collect::<galg_core::Result<Vec<_>>>()?)
}

fn y_generators(algebra: &Arc<Algebra>) -> Result<Vec<AlgebraElement>, CliError> {
    let n = algebra.graph().n_vertices();
    Ok((0..n)
        .map(|i| gen_y(algebra, i))
        .collect::<galg_core::Result<Vec<_>>>()?)
}

fn biguint_to_u64(value: &BigUint, what: &str) -> Result<u64, CliError> {
    value
        .to_u64()
        .ok_or_else(|| CliError::Usage(format!("{what} count does not fit in 64 bits")))
}

#[derive(Serialize)]
struct SeriesJson<'a> {
    series: &'a HilbertSeries,
    total: u64,
    plateau_k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    consensus: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    forests: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trees: Option<u64>,
}

fn cmd_series(path: &Path, algebra: &AlgebraChoice, json: bool) -> Result<ExitCode, CliError> {
    let g = read_graph(path)?;
    ensure_rank_bound(&g)?;

    let mut consensus = None;
    let (label, series) = match algebra {
        AlgebraChoice::C => {
            let alg = Algebra::full(g.clone());
            ("C", graded_series(&x_generators(&alg)?)?)
        }
        AlgebraChoice::K => {
            let alg = Algebra::full(g.clone());
            ("K", filtered_series(&y_generators(&alg)?)?)
        }
        AlgebraChoice::Ct => {
            let alg = Algebra::tree(g.clone())?;
            ("CT", graded_series(&x_generators(&alg)?)?)
        }
        AlgebraChoice::Kt => {
            let alg = Algebra::tree(g.clone())?;
            ("KT", filtered_series(&y_generators(&alg)?)?)
        }
        AlgebraChoice::F(poly_path) => {
            let poly = UniPoly::parse(&strip_comments(&read_file(poly_path)?))?;
            let alg = Algebra::full(g.clone());
            let gens = (0..g.n_vertices())
                .map(|i| gen_f(&alg, i, &poly))
                .collect::<galg_core::Result<Vec<_>>>()?;
            ("f", filtered_series(&gens)?)
        }
        AlgebraChoice::Generic => {
            let alg = Algebra::full(g.clone());
            let generic = generic_series(&alg, &[1, 2, 3])?;
            consensus = Some(generic.consensus);
            ("generic", generic.series)
        }
    };

    // Independent combinatorial cross-check: forest count for the full
    // ambient algebra, spanning-tree count for the tree quotient.
    let tree_ambient = matches!(algebra, AlgebraChoice::Ct | AlgebraChoice::Kt);
    let (forests, trees) = if tree_ambient {
        let t = biguint_to_u64(&g.count_trees_matrixtree(), "spanning tree")?;
        (None, Some(t))
    } else {
        let f = biguint_to_u64(&g.tutte().count_forests(), "forest")?;
        (Some(f), None)
    };

    if json {
        let out = SeriesJson {
            series: &series,
            total: series.total(),
            plateau_k: series.plateau_k(),
            consensus,
            forests,
            trees,
        };
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    } else {
        println!("algebra: {label}");
        println!("series: {series}");
        println!("total: {}", series.total());
        println!("plateau: {}", series.plateau_k());
        if let Some(c) = consensus {
            println!("consensus: {c}");
        }
        if let Some(f) = forests {
            println!("forests: {f}");
        }
        if let Some(t) = trees {
            println!("trees: {t}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct CheckJson {
    vertices: usize,
    edges: usize,
    connected: bool,
    p_relations: RelationReport,
    q_relations: RelationReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    tree_relations: Option<TreeRelationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tree_relations_skipped: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reconstruction_isomorphic: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reconstruction_skipped: Option<String>,
    forest_series_matches_activity: bool,
    forest_total_matches_tutte: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    tree_series_matches_activity: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tree_total_matches_determinant: Option<bool>,
    all_pass: bool,
}

fn cmd_check(path: &Path) -> Result<ExitCode, CliError> {
    let g = read_graph(path)?;
    ensure_rank_bound(&g)?;
    let connected = g.is_connected();

    let p_relations = check_p_relations(&g, DEFAULT_SUBSET_BOUND)?;
    let q_relations = check_q_relations(&g, DEFAULT_SUBSET_BOUND)?;
    let (tree_relations, tree_relations_skipped) = if connected {
        (Some(check_tree_relations(&g, DEFAULT_SUBSET_BOUND)?), None)
    } else {
        (None, Some("graph is disconnected".to_string()))
    };

    let (reconstruction_isomorphic, reconstruction_skipped) = if g.has_isolated_vertex() {
        (None, Some("graph has an isolated vertex".to_string()))
    } else if g.n_vertices() > DEFAULT_ISOMORPHISM_BOUND {
        (
            None,
            Some(format!(
                "vertex count {} exceeds isomorphism bound {}",
                g.n_vertices(),
                DEFAULT_ISOMORPHISM_BOUND
            )),
        )
    } else {
        let alg = Algebra::full(g.clone());
        let gens = (0..g.n_vertices())
            .map(|i| gen_y_tilde(&alg, i))
            .collect::<galg_core::Result<Vec<_>>>()?;
        let rebuilt = reconstruct(&gens)?;
        let iso = are_isomorphic(&g, &rebuilt, DEFAULT_ISOMORPHISM_BOUND)?;
        (Some(iso.is_some()), None)
    };

    // Cross-check the graded series against pure combinatorics: the
    // external-activity histogram and the Tutte evaluation T(2,1).
    let full = Algebra::full(g.clone());
    let graded = graded_series(&x_generators(&full)?)?;
    let histogram = HilbertSeries::new(g.forest_activity_histogram(DEFAULT_ENUMERATION_BOUND)?);
    let forest_series_matches_activity = graded == histogram;
    let forest_total_matches_tutte =
        BigUint::from(graded.total()) == g.tutte().count_forests();

    let (tree_series_matches_activity, tree_total_matches_determinant) = if connected {
        let talg = Algebra::tree(g.clone())?;
        let tgraded = graded_series(&x_generators(&talg)?)?;
        let thistogram =
            HilbertSeries::new(g.tree_activity_histogram(DEFAULT_ENUMERATION_BOUND)?);
        (
            Some(tgraded == thistogram),
            Some(BigUint::from(tgraded.total()) == g.count_trees_matrixtree()),
        )
    } else {
        (None, None)
    };

    let all_pass = p_relations.all_vanish()
        && q_relations.all_vanish()
        && tree_relations.as_ref().is_none_or(|r| r.all_vanish())
        && reconstruction_isomorphic.unwrap_or(true)
        && forest_series_matches_activity
        && forest_total_matches_tutte
        && tree_series_matches_activity.unwrap_or(true)
        && tree_total_matches_determinant.unwrap_or(true);

    let report = CheckJson {
        vertices: g.n_vertices(),
        edges: g.n_edges(),
        connected,
        p_relations,
        q_relations,
        tree_relations,
        tree_relations_skipped,
        reconstruction_isomorphic,
        reconstruction_skipped,
        forest_series_matches_activity,
        forest_total_matches_tutte,
        tree_series_matches_activity,
        tree_total_matches_determinant,
        all_pass,
    };

    let verdict = |ok: bool| if ok { "ok" } else { "FAIL" };
    eprintln!(
        "p relations: {} ({} subsets)",
        verdict(report.p_relations.all_vanish()),
        report.p_relations.entries.len()
    );
    eprintln!(
        "q relations: {} ({} subsets)",
        verdict(report.q_relations.all_vanish()),
        report.q_relations.entries.len()
    );
    match (&report.tree_relations, &report.tree_relations_skipped) {
        (Some(r), _) => eprintln!("tree relations: {}", verdict(r.all_vanish())),
        (None, Some(reason)) => eprintln!("tree relations: skipped ({reason})"),
        (None, None) => {}
    }
    match (
        report.reconstruction_isomorphic,
        &report.reconstruction_skipped,
    ) {
        (Some(ok), _) => eprintln!("reconstruction round-trip: {}", verdict(ok)),
        (None, Some(reason)) => eprintln!("reconstruction round-trip: skipped ({reason})"),
        (None, None) => {}
    }
    eprintln!(
        "graded series matches activity histogram: {}",
        verdict(report.forest_series_matches_activity)
    );
    eprintln!(
        "graded total matches forest count: {}",
        verdict(report.forest_total_matches_tutte)
    );
    if let Some(ok) = report.tree_series_matches_activity {
        eprintln!("tree series matches activity histogram: {}", verdict(ok));
    }
    if let Some(ok) = report.tree_total_matches_determinant {
        eprintln!("tree total matches determinant: {}", verdict(ok));
    }
    eprintln!("{}", if all_pass { "PASS" } else { "FAIL" });

    println!("{}", serde_json::to_string_pretty(&report).unwrap());
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_search(
    vertices: usize,
    edges: usize,
    mode: ModeArg,
    generic: bool,
    seeds: u64,
) -> Result<ExitCode, CliError> {
    let mode = match mode {
        ModeArg::Forest => SearchMode::Forest,
        ModeArg::Tree => SearchMode::Tree,
    };
    let mut options = SearchOptions::new(vertices, edges, mode);
    options.generic = generic;
    options.seeds = (1..=seeds).collect();
    let report = search(&options)?;

    eprintln!(
        "examined {} graphs in {} groups; {} pair(s) with equal graded, distinct filtered series",
        report.graphs_examined,
        report.groups,
        report.pairs.len()
    );
    for (idx, pair) in report.pairs.iter().enumerate() {
        eprintln!(
            "pair {}: {:?} vs {:?}",
            idx + 1,
            pair.graph1.edges,
            pair.graph2.edges
        );
        eprintln!("  graded:   {}", pair.graded);
        eprintln!("  filtered: {}  |  {}", pair.filtered[0], pair.filtered[1]);
        if let Some(gs) = &pair.generic {
            eprintln!("  generic:  {}  |  {}", gs[0], gs[1]);
        }
    }

    println!("{}", serde_json::to_string_pretty(&report).unwrap());
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct TutteJson {
    polynomial: String,
    forests: u64,
    trees: u64,
}

fn cmd_tutte(path: &Path, json: bool) -> Result<ExitCode, CliError> {
    let g = read_graph(path)?;
    let t = g.tutte();
    let out = TutteJson {
        polynomial: t.to_string(),
        forests: biguint_to_u64(&t.count_forests(), "forest")?,
        trees: biguint_to_u64(&t.count_trees(), "spanning tree")?,
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    } else {
        println!("tutte: {}", out.polynomial);
        println!("forests: {}", out.forests);
        println!("trees: {}", out.trees);
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct ReconstructJson {
    vertices: usize,
    edges: Vec<(usize, usize)>,
    isomorphic: bool,
}

fn cmd_reconstruct(path: &Path, json: bool) -> Result<ExitCode, CliError> {
    let g = read_graph(path)?;
    let alg = Algebra::full(g.clone());
    let gens = (0..g.n_vertices())
        .map(|i| gen_y_tilde(&alg, i))
        .collect::<galg_core::Result<Vec<_>>>()?;
    let rebuilt = reconstruct(&gens)?;
    let isomorphic = are_isomorphic(&g, &rebuilt, DEFAULT_ISOMORPHISM_BOUND)?.is_some();
    let out = ReconstructJson {
        vertices: rebuilt.n_vertices(),
        edges: rebuilt.edges().to_vec(),
        isomorphic,
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    } else {
        print!("{rebuilt}");
        println!(
            "isomorphic to input: {}",
            if isomorphic { "yes" } else { "no" }
        );
    }
    Ok(if isomorphic {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

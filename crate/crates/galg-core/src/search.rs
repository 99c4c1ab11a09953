use std::collections::BTreeMap;

use serde::Serialize;

use crate::enumeration::canonical_multigraphs;
use crate::error::{GalgError, Result};
use crate::generators::{gen_x, gen_y};
use crate::hilbert::{
    filtered_series, generic_series, graded_series, majorize, HilbertSeries, Majorization,
};
use crate::multigraph::{are_isomorphic, Multigraph, TuttePolynomial, DEFAULT_ISOMORPHISM_BOUND};
use crate::squarefree::Algebra;

/// Default search-space caps.
pub const DEFAULT_SEARCH_VERTEX_BOUND: usize = 6;
pub const DEFAULT_SEARCH_EDGE_BOUND: usize = 8;

/// Forest mode works in the square-free algebra and groups graphs by
/// Tutte polynomial; tree mode works in the tree quotient of connected
/// graphs and groups by the Tutte polynomial of the Δ-subgraph (a
/// matroid proxy).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Forest,
    Tree,
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub vertices: usize,
    pub edges: usize,
    pub mode: SearchMode,
    pub generic: bool,
    pub seeds: Vec<u64>,
    pub vertex_bound: usize,
    pub edge_bound: usize,
}

impl SearchOptions {
    pub fn new(vertices: usize, edges: usize, mode: SearchMode) -> Self {
        SearchOptions {
            vertices,
            edges,
            mode,
            generic: false,
            seeds: vec![1, 2, 3],
            vertex_bound: DEFAULT_SEARCH_VERTEX_BOUND,
            edge_bound: DEFAULT_SEARCH_EDGE_BOUND,
        }
    }
}

/// Serializable graph snapshot.
#[derive(Clone, Debug, Serialize)]
pub struct GraphData {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl GraphData {
    pub fn from_graph(g: &Multigraph) -> Self {
        GraphData {
            vertices: g.n_vertices(),
            edges: g.edges().to_vec(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MajorizationEntry {
    pub left: String,
    pub right: String,
    pub relation: Majorization,
}

/// A reported pair: same grouping key and graded series, different
/// filtered series.
#[derive(Clone, Debug, Serialize)]
pub struct PairReport {
    pub graph1: GraphData,
    pub graph2: GraphData,
    pub graded: HilbertSeries,
    pub filtered: [HilbertSeries; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generic: Option<[HilbertSeries; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generic_consensus: Option<[bool; 2]>,
    pub majorization: Vec<MajorizationEntry>,
    pub nonisomorphic: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub vertices: usize,
    pub edges: usize,
    pub mode: SearchMode,
    pub graphs_examined: usize,
    pub groups: usize,
    pub pairs: Vec<PairReport>,
}

struct GraphSeries {
    graph: Multigraph,
    graded: HilbertSeries,
    filtered: HilbertSeries,
    generic: Option<(HilbertSeries, bool)>,
}

fn series_for(g: &Multigraph, options: &SearchOptions) -> Result<GraphSeries> {
    let algebra = match options.mode {
        SearchMode::Forest => Algebra::full(g.clone()),
        SearchMode::Tree => Algebra::tree(g.clone())?,
    };
    let n = g.n_vertices();
    let xs = (0..n)
        .map(|i| gen_x(&algebra, i))
        .collect::<Result<Vec<_>>>()?;
    let ys = (0..n)
        .map(|i| gen_y(&algebra, i))
        .collect::<Result<Vec<_>>>()?;
    let generic = if options.generic {
        let result = generic_series(&algebra, &options.seeds)?;
        Some((result.series, result.consensus))
    } else {
        None
    };
    Ok(GraphSeries {
        graph: g.clone(),
        graded: graded_series(&xs)?,
        filtered: filtered_series(&ys)?,
        generic,
    })
}

fn pair_report(a: &GraphSeries, b: &GraphSeries) -> Result<PairReport> {
    let mut labeled: Vec<(String, &HilbertSeries)> = vec![
        ("graded".into(), &a.graded),
        ("filtered_1".into(), &a.filtered),
        ("filtered_2".into(), &b.filtered),
    ];
    if let (Some((ga, _)), Some((gb, _))) = (&a.generic, &b.generic) {
        labeled.push(("generic_1".into(), ga));
        labeled.push(("generic_2".into(), gb));
    }
    let mut majorization = Vec::new();
    for i in 0..labeled.len() {
        for j in i + 1..labeled.len() {
            majorization.push(MajorizationEntry {
                left: labeled[i].0.clone(),
                right: labeled[j].0.clone(),
                relation: majorize(labeled[i].1, labeled[j].1),
            });
        }
    }
    let nonisomorphic =
        are_isomorphic(&a.graph, &b.graph, DEFAULT_ISOMORPHISM_BOUND)?.is_none();
    Ok(PairReport {
        graph1: GraphData::from_graph(&a.graph),
        graph2: GraphData::from_graph(&b.graph),
        graded: a.graded.clone(),
        filtered: [a.filtered.clone(), b.filtered.clone()],
        generic: match (&a.generic, &b.generic) {
            (Some((ga, _)), Some((gb, _))) => Some([ga.clone(), gb.clone()]),
            _ => None,
        },
        generic_consensus: match (&a.generic, &b.generic) {
            (Some((_, ca)), Some((_, cb))) => Some([*ca, *cb]),
            _ => None,
        },
        majorization,
        nonisomorphic,
    })
}

/// Enumerates canonical multigraphs of the given size, groups them by
/// the mode's matroid key, and reports every in-group pair whose graded
/// series agree while the filtered series differ.
pub fn search(options: &SearchOptions) -> Result<SearchReport> {
    if options.vertices > options.vertex_bound {
        return Err(GalgError::BoundExceeded {
            what: "search vertex",
            value: options.vertices,
            bound: options.vertex_bound,
        });
    }
    if options.edges > options.edge_bound {
        return Err(GalgError::BoundExceeded {
            what: "search edge",
            value: options.edges,
            bound: options.edge_bound,
        });
    }
    let mut graphs = canonical_multigraphs(options.vertices, options.edges, true)?;
    if options.mode == SearchMode::Tree {
        graphs.retain(|g| g.is_connected());
    }
    let graphs_examined = graphs.len();
    let mut groups: BTreeMap<TuttePolynomial, Vec<usize>> = BTreeMap::new();
    for (idx, g) in graphs.iter().enumerate() {
        let key = match options.mode {
            SearchMode::Forest => g.tutte(),
            SearchMode::Tree => g.delta_subgraph().0.tutte(),
        };
        groups.entry(key).or_default().push(idx);
    }
    let group_count = groups.len();
    let mut pairs = Vec::new();
    for members in groups.values() {
        if members.len() < 2 {
            continue;
        }
        let computed = members
            .iter()
            .map(|&idx| series_for(&graphs[idx], options))
            .collect::<Result<Vec<_>>>()?;
        for i in 0..computed.len() {
            for j in i + 1..computed.len() {
                let (a, b) = (&computed[i], &computed[j]);
                if a.graded == b.graded && a.filtered != b.filtered {
                    pairs.push(pair_report(a, b)?);
                }
            }
        }
    }
    Ok(SearchReport {
        vertices: options.vertices,
        edges: options.edges,
        mode: options.mode,
        graphs_examined,
        groups: group_count,
        pairs,
    })
}

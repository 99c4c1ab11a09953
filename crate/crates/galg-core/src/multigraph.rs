use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{GalgError, Result};

/// Hard limit on edge count: square-free monomials are stored as `u64`
/// bitmasks over edge indices.
pub const MAX_EDGES: usize = 63;
/// Hard limit on vertex count: vertex subsets are `u64` bitmasks.
pub const MAX_VERTICES: usize = 64;
/// Default cap for forest/tree enumeration.
pub const DEFAULT_ENUMERATION_BOUND: usize = 24;
/// Default cap for brute-force isomorphism testing.
pub const DEFAULT_ISOMORPHISM_BOUND: usize = 10;

/// Subset of vertices, stored as a bitmask over labels `0..n_vertices`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub fn empty() -> Self {
        VertexSet(0)
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    pub fn from_indices(vs: &[usize]) -> Self {
        VertexSet(vs.iter().fold(0u64, |m, &v| m | (1 << v)))
    }

    pub fn full(n: usize) -> Self {
        if n == 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0 >> v & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let m = self.0;
        (0..64).filter(move |v| m >> v & 1 == 1)
    }

    pub fn indices(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

/// Subset of edges, stored as a bitmask over edge indices `0..|E|`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct EdgeSet(pub u64);

impl EdgeSet {
    pub fn empty() -> Self {
        EdgeSet(0)
    }

    pub fn singleton(e: usize) -> Self {
        EdgeSet(1 << e)
    }

    pub fn from_indices(es: &[usize]) -> Self {
        EdgeSet(es.iter().fold(0u64, |m, &e| m | (1 << e)))
    }

    pub fn full(n: usize) -> Self {
        if n == 64 {
            EdgeSet(u64::MAX)
        } else {
            EdgeSet((1u64 << n) - 1)
        }
    }

    pub fn contains(&self, e: usize) -> bool {
        self.0 >> e & 1 == 1
    }

    pub fn insert(&mut self, e: usize) {
        self.0 |= 1 << e;
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let m = self.0;
        (0..64).filter(move |e| m >> e & 1 == 1)
    }

    pub fn indices(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

/// Union-find with path halving over a fixed vertex range.
#[derive(Clone)]
struct UnionFind {
    parent: Vec<usize>,
    components: usize,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            components: n,
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if x and y were already in the same component.
    fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        self.parent[rx] = ry;
        self.components -= 1;
        true
    }
}

/// Loopless labeled multigraph: vertices `0..n_vertices`, ordered edge
/// list with multiplicity encoded by repeated pairs. The edge order is
/// part of the value (it fixes the linear order used for external
/// activity).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Multigraph {
    n_vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Multigraph {
    /// Builds a multigraph, normalizing each edge to `(min, max)` and
    /// rejecting loops and out-of-range labels. `n_vertices == 0` is
    /// permitted only with an empty edge list (the empty graph arises
    /// as a Δ-subgraph).
    pub fn new(n_vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n_vertices > MAX_VERTICES {
            return Err(GalgError::BoundExceeded {
                what: "vertex",
                value: n_vertices,
                bound: MAX_VERTICES,
            });
        }
        if edges.len() > MAX_EDGES {
            return Err(GalgError::BoundExceeded {
                what: "edge",
                value: edges.len(),
                bound: MAX_EDGES,
            });
        }
        let mut normalized = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= n_vertices {
                return Err(GalgError::InvalidVertex(u));
            }
            if v >= n_vertices {
                return Err(GalgError::InvalidVertex(v));
            }
            if u == v {
                return Err(GalgError::InvalidEdge(normalized.len()));
            }
            normalized.push((u.min(v), u.max(v)));
        }
        Ok(Multigraph {
            n_vertices,
            edges: normalized,
        })
    }

    /// Parses the text format: first non-comment line `vertices N`,
    /// then one edge `u v` per line; `#` starts a comment; repeated
    /// lines encode multiplicity; edge order is line order.
    pub fn parse(text: &str) -> Result<Self> {
        let mut n_vertices: Option<usize> = None;
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if content.is_empty() {
                continue;
            }
            let fields: Vec<&str> = content.split_whitespace().collect();
            match n_vertices {
                None => {
                    if fields.len() != 2 || fields[0] != "vertices" {
                        return Err(GalgError::Parse {
                            line,
                            message: "expected header `vertices N`".into(),
                        });
                    }
                    let n: usize = fields[1].parse().map_err(|_| GalgError::Parse {
                        line,
                        message: format!("invalid vertex count `{}`", fields[1]),
                    })?;
                    if n == 0 {
                        return Err(GalgError::Parse {
                            line,
                            message: "vertex count must be at least 1".into(),
                        });
                    }
                    n_vertices = Some(n);
                }
                Some(n) => {
                    if fields.len() != 2 {
                        return Err(GalgError::Parse {
                            line,
                            message: format!("expected edge `u v`, got `{content}`"),
                        });
                    }
                    let mut pair = [0usize; 2];
                    for (k, f) in fields.iter().enumerate() {
                        pair[k] = f.parse().map_err(|_| GalgError::Parse {
                            line,
                            message: format!("invalid vertex label `{f}`"),
                        })?;
                        if pair[k] >= n {
                            return Err(GalgError::Parse {
                                line,
                                message: format!("vertex {} out of range 0..{}", pair[k], n),
                            });
                        }
                    }
                    if pair[0] == pair[1] {
                        return Err(GalgError::Parse {
                            line,
                            message: format!("loop edge {} {} not allowed", pair[0], pair[1]),
                        });
                    }
                    edges.push((pair[0], pair[1]));
                }
            }
        }
        let n = n_vertices.ok_or(GalgError::Parse {
            line: text.lines().count().max(1),
            message: "missing `vertices N` header".into(),
        })?;
        Multigraph::new(n, &edges)
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> Result<(usize, usize)> {
        self.edges.get(e).copied().ok_or(GalgError::InvalidEdge(e))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n_vertices];
        for &(a, b) in &self.edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.n_vertices > 0 && self.degrees().contains(&0)
    }

    /// Number of edges with exactly one endpoint in `I` (the cut size).
    pub fn cut_size(&self, i: VertexSet) -> Result<usize> {
        if i.is_empty() {
            return Err(GalgError::EmptyVertexSubset);
        }
        Ok(self
            .edges
            .iter()
            .filter(|&&(a, b)| i.contains(a) != i.contains(b))
            .count())
    }

    /// True iff the spanning subgraph with edge set `mask` connects all
    /// vertices of the graph.
    pub fn is_connected_spanning(&self, mask: EdgeSet) -> bool {
        if self.n_vertices <= 1 {
            return true;
        }
        let mut uf = UnionFind::new(self.n_vertices);
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            if mask.contains(e) {
                uf.union(a, b);
            }
        }
        uf.components == 1
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_spanning(EdgeSet::full(self.edges.len()))
    }

    /// Number of connected components of the spanning subgraph on
    /// `mask` (isolated vertices count as components).
    pub fn component_count(&self, mask: EdgeSet) -> usize {
        let mut uf = UnionFind::new(self.n_vertices);
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            if mask.contains(e) {
                uf.union(a, b);
            }
        }
        uf.components
    }

    /// True iff the edge subset is acyclic. A repeated pair counts as a
    /// 2-cycle.
    pub fn is_forest(&self, f: EdgeSet) -> bool {
        let mut uf = UnionFind::new(self.n_vertices);
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            if f.contains(e) && !uf.union(a, b) {
                return false;
            }
        }
        true
    }

    /// True iff the edge subset is a spanning tree.
    pub fn is_spanning_tree(&self, f: EdgeSet) -> bool {
        self.n_vertices >= 1
            && f.len() == self.n_vertices - 1
            && self.is_forest(f)
            && self.is_connected_spanning(f)
    }

    /// External activity of the forest `F` with respect to the edge
    /// list order: the number of edges `e ∉ F` such that `F ∪ {e}` has
    /// a cycle in which `e` is the minimal edge.
    pub fn external_activity(&self, f: EdgeSet) -> Result<usize> {
        if !self.is_forest(f) {
            return Err(GalgError::NotAForest);
        }
        let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.n_vertices];
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            if f.contains(e) {
                adjacency[a].push((b, e));
                adjacency[b].push((a, e));
            }
        }
        let mut active = 0;
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            if f.contains(e) {
                continue;
            }
            // The unique candidate cycle is e plus the F-path joining
            // its endpoints; e is active iff its index is below every
            // edge index on that path.
            if let Some(min_on_path) = self.min_edge_on_path(&adjacency, a, b) {
                if e < min_on_path {
                    active += 1;
                }
            }
        }
        Ok(active)
    }

    /// Minimal edge index on the forest path from `src` to `dst`, or
    /// None if they are in different components. `src == dst` cannot
    /// happen for loopless input.
    fn min_edge_on_path(
        &self,
        adjacency: &[Vec<(usize, usize)>],
        src: usize,
        dst: usize,
    ) -> Option<usize> {
        let mut best = vec![usize::MAX; self.n_vertices];
        let mut seen = vec![false; self.n_vertices];
        let mut queue = std::collections::VecDeque::new();
        seen[src] = true;
        queue.push_back(src);
        while let Some(v) = queue.pop_front() {
            for &(w, e) in &adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    best[w] = best[v].min(e);
                    if w == dst {
                        return Some(best[w]);
                    }
                    queue.push_back(w);
                }
            }
        }
        None
    }

    /// All acyclic edge subsets, in increasing bitmask order.
    pub fn enumerate_forests(&self, bound: usize) -> Result<Vec<EdgeSet>> {
        if self.edges.len() > bound {
            return Err(GalgError::BoundExceeded {
                what: "enumeration edge",
                value: self.edges.len(),
                bound,
            });
        }
        let mut out = Vec::new();
        let mut uf = UnionFind::new(self.n_vertices);
        self.forest_dfs(0, EdgeSet::empty(), &mut uf, &mut out);
        out.sort();
        Ok(out)
    }

    fn forest_dfs(&self, e: usize, current: EdgeSet, uf: &mut UnionFind, out: &mut Vec<EdgeSet>) {
        if e == self.edges.len() {
            out.push(current);
            return;
        }
        self.forest_dfs(e + 1, current, uf, out);
        let (a, b) = self.edges[e];
        let saved = uf.clone();
        if uf.union(a, b) {
            let mut with = current;
            with.insert(e);
            self.forest_dfs(e + 1, with, uf, out);
        }
        *uf = saved;
    }

    /// All spanning trees, in increasing bitmask order.
    pub fn enumerate_trees(&self, bound: usize) -> Result<Vec<EdgeSet>> {
        Ok(self
            .enumerate_forests(bound)?
            .into_iter()
            .filter(|&f| self.is_spanning_tree(f))
            .collect())
    }

    /// External-activity histogram over all forests: entry k counts
    /// forests F with |E| − |F| − EA(F) = k for the ambient edge order.
    pub fn forest_activity_histogram(&self, bound: usize) -> Result<Vec<u64>> {
        self.activity_histogram(self.enumerate_forests(bound)?)
    }

    /// External-activity histogram over all spanning trees: entry k
    /// counts trees T with |E| − |T| − EA(T) = k.
    pub fn tree_activity_histogram(&self, bound: usize) -> Result<Vec<u64>> {
        self.activity_histogram(self.enumerate_trees(bound)?)
    }

    fn activity_histogram(&self, subsets: Vec<EdgeSet>) -> Result<Vec<u64>> {
        let mut histogram = Vec::new();
        for f in subsets {
            let k = self.n_edges() - f.len() - self.external_activity(f)?;
            if histogram.len() <= k {
                histogram.resize(k + 1, 0);
            }
            histogram[k] += 1;
        }
        Ok(histogram)
    }

    /// Spanning tree count via an exact determinant of a Laplacian
    /// principal minor (fraction-free Bareiss elimination). Returns 0
    /// for disconnected graphs.
    pub fn count_trees_matrixtree(&self) -> BigUint {
        if self.n_vertices == 0 || !self.is_connected() {
            return BigUint::zero();
        }
        let n = self.n_vertices - 1;
        if n == 0 {
            return BigUint::one();
        }
        let mut m = vec![vec![BigInt::zero(); n]; n];
        for &(a, b) in &self.edges {
            if a >= 1 {
                m[a - 1][a - 1] += 1;
            }
            if b >= 1 {
                m[b - 1][b - 1] += 1;
            }
            if a >= 1 && b >= 1 {
                m[a - 1][b - 1] -= 1;
                m[b - 1][a - 1] -= 1;
            }
        }
        let det = bareiss_determinant(&mut m);
        det.magnitude().clone()
    }

    /// Edges lying in no cycle; an edge with a parallel copy is never a
    /// bridge.
    pub fn bridges(&self) -> EdgeSet {
        let full = EdgeSet::full(self.edges.len());
        let base = self.component_count(full);
        let mut out = EdgeSet::empty();
        for e in 0..self.edges.len() {
            let without = EdgeSet(full.0 & !(1u64 << e));
            if self.component_count(without) > base {
                out.insert(e);
            }
        }
        out
    }

    /// Subgraph on the non-bridge edges and their incident vertices.
    /// Returns the Δ-subgraph together with the map from its vertex
    /// labels to the original labels. Edge order is inherited.
    pub fn delta_subgraph(&self) -> (Multigraph, Vec<usize>) {
        let bridge_set = self.bridges();
        let kept: Vec<usize> = (0..self.edges.len())
            .filter(|&e| !bridge_set.contains(e))
            .collect();
        let mut old_labels: Vec<usize> = kept
            .iter()
            .flat_map(|&e| [self.edges[e].0, self.edges[e].1])
            .collect();
        old_labels.sort_unstable();
        old_labels.dedup();
        let position = |v: usize| old_labels.binary_search(&v).unwrap();
        let edges: Vec<(usize, usize)> = kept
            .iter()
            .map(|&e| (position(self.edges[e].0), position(self.edges[e].1)))
            .collect();
        let delta = Multigraph {
            n_vertices: old_labels.len(),
            edges,
        };
        (delta, old_labels)
    }

    /// True iff the complement `E ∖ H` is a connected spanning
    /// subgraph. Requires a connected graph.
    pub fn is_slim(&self, h: EdgeSet) -> Result<bool> {
        if !self.is_connected() {
            return Err(GalgError::DisconnectedTree);
        }
        let full = EdgeSet::full(self.edges.len());
        Ok(self.is_connected_spanning(EdgeSet(full.0 & !h.0)))
    }

    /// Tutte polynomial via deletion-contraction.
    pub fn tutte(&self) -> TuttePolynomial {
        let mut work: Vec<(usize, usize)> = self.edges.clone();
        // Deletion-contraction is insensitive to edge order; sorting
        // groups parallel edges so contractions collapse them into
        // loops processed together.
        work.sort_unstable();
        tutte_recursive(self.n_vertices, &work)
    }

    /// Graph with the same vertex set and the edge list reordered by
    /// `perm` (new index `k` holds old edge `perm[k]`).
    pub fn permute_edges(&self, perm: &[usize]) -> Result<Multigraph> {
        if perm.len() != self.edges.len() {
            return Err(GalgError::InvalidEdge(perm.len()));
        }
        let edges: Vec<(usize, usize)> = perm
            .iter()
            .map(|&e| self.edge(e))
            .collect::<Result<_>>()?;
        Multigraph::new(self.n_vertices, &edges)
    }

    /// Graph with vertex `v` renamed to `perm[v]`; edge order is kept.
    pub fn relabel_vertices(&self, perm: &[usize]) -> Result<Multigraph> {
        if perm.len() != self.n_vertices {
            return Err(GalgError::InvalidVertex(perm.len()));
        }
        let edges: Vec<(usize, usize)> =
            self.edges.iter().map(|&(a, b)| (perm[a], perm[b])).collect();
        Multigraph::new(self.n_vertices, &edges)
    }

    /// Multiplicity matrix: entry `(i, j)` counts edges between i and j.
    pub fn multiplicity_matrix(&self) -> Vec<Vec<usize>> {
        let mut m = vec![vec![0; self.n_vertices]; self.n_vertices];
        for &(a, b) in &self.edges {
            m[a][b] += 1;
            m[b][a] += 1;
        }
        m
    }

    /// Splits a connected graph at a bridge `e` into the two induced
    /// sides (each keeps its own edges; the bridge itself is dropped).
    pub fn split_at_bridge(&self, e: usize) -> Result<(Multigraph, Multigraph)> {
        let (a, b) = self.edge(e)?;
        let full = EdgeSet::full(self.edges.len());
        let without = EdgeSet(full.0 & !(1u64 << e));
        let mut uf = UnionFind::new(self.n_vertices);
        for (k, &(u, v)) in self.edges.iter().enumerate() {
            if without.contains(k) {
                uf.union(u, v);
            }
        }
        let root_a = uf.find(a);
        if uf.find(b) == root_a {
            return Err(GalgError::InvalidEdge(e));
        }
        let side = |root: usize, uf: &mut UnionFind| -> Result<Multigraph> {
            let vertices: Vec<usize> = (0..self.n_vertices)
                .filter(|&v| uf.find(v) == root)
                .collect();
            let position = |v: usize| vertices.binary_search(&v).unwrap();
            let edges: Vec<(usize, usize)> = self
                .edges
                .iter()
                .enumerate()
                .filter(|&(k, &(u, _))| without.contains(k) && uf.find(u) == root)
                .map(|(_, &(u, v))| (position(u), position(v)))
                .collect();
            Multigraph::new(vertices.len(), &edges)
        };
        let root_b = uf.find(b);
        Ok((side(root_a, &mut uf)?, side(root_b, &mut uf)?))
    }
}

impl fmt::Display for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vertices {}", self.n_vertices)?;
        for &(a, b) in &self.edges {
            writeln!(f, "{a} {b}")?;
        }
        Ok(())
    }
}

fn bareiss_determinant(m: &mut [Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Bivariate Tutte polynomial with exact nonnegative coefficients.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct TuttePolynomial {
    coefficients: BTreeMap<(u32, u32), BigUint>,
}

impl TuttePolynomial {
    pub fn zero() -> Self {
        TuttePolynomial::default()
    }

    pub fn one() -> Self {
        let mut p = TuttePolynomial::default();
        p.coefficients.insert((0, 0), BigUint::one());
        p
    }

    pub fn coefficients(&self) -> &BTreeMap<(u32, u32), BigUint> {
        &self.coefficients
    }

    pub fn coefficient(&self, i: u32, j: u32) -> BigUint {
        self.coefficients
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(BigUint::zero)
    }

    fn add_assign(&mut self, other: &TuttePolynomial) {
        for (&k, c) in &other.coefficients {
            let entry = self
                .coefficients
                .entry(k)
                .or_insert_with(BigUint::zero);
            *entry += c;
        }
    }

    fn shift(&self, dx: u32, dy: u32) -> TuttePolynomial {
        TuttePolynomial {
            coefficients: self
                .coefficients
                .iter()
                .map(|(&(i, j), c)| ((i + dx, j + dy), c.clone()))
                .collect(),
        }
    }

    pub fn evaluate(&self, x: u64, y: u64) -> BigUint {
        let (x, y) = (BigUint::from(x), BigUint::from(y));
        let mut total = BigUint::zero();
        for (&(i, j), c) in &self.coefficients {
            total += c * x.pow(i) * y.pow(j);
        }
        total
    }

    pub fn count_forests(&self) -> BigUint {
        self.evaluate(2, 1)
    }

    pub fn count_trees(&self) -> BigUint {
        self.evaluate(1, 1)
    }
}

impl fmt::Display for TuttePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficients.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), c) in self.coefficients.iter().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut parts = Vec::new();
            if !c.is_one() || (i, j) == (0, 0) {
                parts.push(c.to_string());
            }
            match i {
                0 => {}
                1 => parts.push("x".into()),
                _ => parts.push(format!("x^{i}")),
            }
            match j {
                0 => {}
                1 => parts.push("y".into()),
                _ => parts.push(format!("y^{j}")),
            }
            write!(f, "{}", parts.join(" "))?;
        }
        Ok(())
    }
}

/// Deletion-contraction on an edge list that may contain loops (they
/// appear under contraction): loops contribute a factor y each, a
/// bridge a factor x; otherwise T(G) = T(G−e) + T(G/e).
fn tutte_recursive(n_vertices: usize, edges: &[(usize, usize)]) -> TuttePolynomial {
    let loops = edges.iter().filter(|&&(a, b)| a == b).count() as u32;
    let work: Vec<(usize, usize)> = edges.iter().copied().filter(|&(a, b)| a != b).collect();
    let Some(&(a, b)) = work.first() else {
        return TuttePolynomial::one().shift(0, loops);
    };
    let rest = &work[1..];
    let is_bridge = {
        let mut uf = UnionFind::new(n_vertices);
        for &(u, v) in rest {
            uf.union(u, v);
        }
        uf.find(a) != uf.find(b)
    };
    // Contract b into a; edges between a and b become loops.
    let contracted: Vec<(usize, usize)> = rest
        .iter()
        .map(|&(u, v)| {
            let u = if u == b { a } else { u };
            let v = if v == b { a } else { v };
            (u.min(v), u.max(v))
        })
        .collect();
    if is_bridge {
        tutte_recursive(n_vertices, &contracted).shift(1, loops)
    } else {
        let mut t = tutte_recursive(n_vertices, rest).shift(0, loops);
        t.add_assign(&tutte_recursive(n_vertices, &contracted).shift(0, loops));
        t
    }
}

/// Brute-force multiplicity-preserving isomorphism with degree-class
/// pruning. Returns a vertex bijection `g1 -> g2` if one exists.
pub fn are_isomorphic(
    g1: &Multigraph,
    g2: &Multigraph,
    vertex_bound: usize,
) -> Result<Option<Vec<usize>>> {
    let n = g1.n_vertices();
    if n.max(g2.n_vertices()) > vertex_bound {
        return Err(GalgError::BoundExceeded {
            what: "isomorphism vertex",
            value: n.max(g2.n_vertices()),
            bound: vertex_bound,
        });
    }
    if n != g2.n_vertices() || g1.n_edges() != g2.n_edges() {
        return Ok(None);
    }
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    let (d1, d2) = (g1.degrees(), g2.degrees());
    let mut sorted1 = d1.clone();
    let mut sorted2 = d2.clone();
    sorted1.sort_unstable();
    sorted2.sort_unstable();
    if sorted1 != sorted2 {
        return Ok(None);
    }
    let m1 = g1.multiplicity_matrix();
    let m2 = g2.multiplicity_matrix();
    let mut assignment = vec![usize::MAX; n];
    let mut used = vec![false; n];
    #[allow(clippy::too_many_arguments)]
    fn assign(
        v: usize,
        n: usize,
        d1: &[usize],
        d2: &[usize],
        m1: &[Vec<usize>],
        m2: &[Vec<usize>],
        assignment: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if v == n {
            return true;
        }
        for w in 0..n {
            if used[w] || d1[v] != d2[w] {
                continue;
            }
            if (0..v).any(|u| m1[u][v] != m2[assignment[u]][w]) {
                continue;
            }
            assignment[v] = w;
            used[w] = true;
            if assign(v + 1, n, d1, d2, m1, m2, assignment, used) {
                return true;
            }
            assignment[v] = usize::MAX;
            used[w] = false;
        }
        false
    }
    if assign(0, n, &d1, &d2, &m1, &m2, &mut assignment, &mut used) {
        Ok(Some(assignment))
    } else {
        Ok(None)
    }
}

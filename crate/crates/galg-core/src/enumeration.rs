use crate::error::{GalgError, Result};
use crate::multigraph::Multigraph;

/// Practical caps for exhaustive enumeration up to isomorphism.
pub const MAX_ENUMERATION_VERTICES: usize = 8;
pub const MAX_ENUMERATION_EDGES: usize = 24;

fn vertex_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((i, j));
        }
    }
    pairs
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    fn heap(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, items, out);
            if k.is_multiple_of(2) {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut items, &mut out);
    out
}

/// For each vertex permutation, where each pair slot moves to:
/// `maps[p][k]` is the slot of pair k after applying permutation p.
fn pair_maps(n: usize, pairs: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut index = vec![vec![usize::MAX; n]; n];
    for (k, &(i, j)) in pairs.iter().enumerate() {
        index[i][j] = k;
        index[j][i] = k;
    }
    permutations(n)
        .into_iter()
        .filter(|perm| perm.iter().enumerate().any(|(v, &w)| v != w))
        .map(|perm| {
            pairs
                .iter()
                .map(|&(i, j)| index[perm[i]][perm[j]])
                .collect()
        })
        .collect()
}

/// True iff the pair-multiplicity vector is lexicographically minimal
/// over all vertex permutations.
fn is_canonical(mult: &[usize], maps: &[Vec<usize>], scratch: &mut Vec<usize>) -> bool {
    for map in maps {
        scratch.clear();
        scratch.resize(mult.len(), 0);
        for (k, &target) in map.iter().enumerate() {
            scratch[target] = mult[k];
        }
        if scratch.as_slice() < mult {
            return false;
        }
    }
    true
}

/// Canonical form of an arbitrary multigraph: the lexicographically
/// minimal pair-multiplicity vector over all vertex permutations.
/// Graphs on the same vertex count are isomorphic iff their keys agree.
pub fn canonical_key(g: &Multigraph) -> Result<Vec<usize>> {
    let n = g.n_vertices();
    if n > MAX_ENUMERATION_VERTICES {
        return Err(GalgError::BoundExceeded {
            what: "canonical form vertex",
            value: n,
            bound: MAX_ENUMERATION_VERTICES,
        });
    }
    let pairs = vertex_pairs(n);
    let matrix = g.multiplicity_matrix();
    let mult: Vec<usize> = pairs.iter().map(|&(i, j)| matrix[i][j]).collect();
    let maps = pair_maps(n, &pairs);
    let mut best = mult.clone();
    let mut scratch = vec![0; mult.len()];
    for map in &maps {
        scratch.iter_mut().for_each(|x| *x = 0);
        for (k, &target) in map.iter().enumerate() {
            scratch[target] = mult[k];
        }
        if scratch < best {
            best.clone_from(&scratch);
        }
    }
    Ok(best)
}

/// All loopless multigraphs with the given vertex and edge count, one
/// canonical representative per isomorphism class, in deterministic
/// order. With `min_degree_one`, graphs with isolated vertices are
/// skipped. Edges of each representative are listed in lexicographic
/// pair order.
pub fn canonical_multigraphs(
    n_vertices: usize,
    n_edges: usize,
    min_degree_one: bool,
) -> Result<Vec<Multigraph>> {
    if n_vertices > MAX_ENUMERATION_VERTICES {
        return Err(GalgError::BoundExceeded {
            what: "enumeration vertex",
            value: n_vertices,
            bound: MAX_ENUMERATION_VERTICES,
        });
    }
    if n_edges > MAX_ENUMERATION_EDGES {
        return Err(GalgError::BoundExceeded {
            what: "enumeration edge",
            value: n_edges,
            bound: MAX_ENUMERATION_EDGES,
        });
    }
    if n_vertices == 0 {
        return Ok(Vec::new());
    }
    let pairs = vertex_pairs(n_vertices);
    if pairs.is_empty() {
        // Single vertex: only the edgeless graph exists, and its one
        // vertex is isolated.
        return Ok(if n_edges == 0 && !min_degree_one {
            vec![Multigraph::new(n_vertices, &[])?]
        } else {
            Vec::new()
        });
    }
    let maps = pair_maps(n_vertices, &pairs);
    let mut out = Vec::new();
    let mut mult = vec![0usize; pairs.len()];
    let mut scratch = vec![0usize; pairs.len()];
    #[allow(clippy::too_many_arguments)]
    fn distribute(
        slot: usize,
        remaining: usize,
        n_vertices: usize,
        pairs: &[(usize, usize)],
        maps: &[Vec<usize>],
        mult: &mut Vec<usize>,
        scratch: &mut Vec<usize>,
        min_degree_one: bool,
        out: &mut Vec<Multigraph>,
    ) {
        if slot == pairs.len() {
            if remaining != 0 {
                return;
            }
            if min_degree_one {
                let mut degree = vec![0usize; n_vertices];
                for (k, &(i, j)) in pairs.iter().enumerate() {
                    degree[i] += mult[k];
                    degree[j] += mult[k];
                }
                if degree.contains(&0) {
                    return;
                }
            }
            if !is_canonical(mult, maps, scratch) {
                return;
            }
            let mut edges = Vec::new();
            for (k, &(i, j)) in pairs.iter().enumerate() {
                for _ in 0..mult[k] {
                    edges.push((i, j));
                }
            }
            out.push(Multigraph::new(n_vertices, &edges).expect("valid by construction"));
            return;
        }
        for count in 0..=remaining {
            mult[slot] = count;
            distribute(
                slot + 1,
                remaining - count,
                n_vertices,
                pairs,
                maps,
                mult,
                scratch,
                min_degree_one,
                out,
            );
        }
        mult[slot] = 0;
    }
    distribute(
        0,
        n_edges,
        n_vertices,
        &pairs,
        &maps,
        &mut mult,
        &mut scratch,
        min_degree_one,
        &mut out,
    );
    Ok(out)
}

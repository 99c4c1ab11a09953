use std::sync::Arc;

use serde::Serialize;

use crate::error::{GalgError, Result};
use crate::generators::{gen_x, gen_y};
use crate::multigraph::{Multigraph, VertexSet};
use crate::squarefree::{Algebra, AlgebraElement};

/// Default cap on vertex count for relation checks (subset enumeration
/// is exponential in the vertex count).
pub const DEFAULT_SUBSET_BOUND: usize = 12;

/// Outcome of one relation instance: the vertex subset, the exponent
/// at which the power was evaluated, whether it vanished, and whether
/// the exponent is sharp (the next smaller power does not vanish).
#[derive(Clone, Debug, Serialize)]
pub struct RelationEntry {
    #[serde(rename = "I")]
    pub subset: Vec<usize>,
    pub exponent: usize,
    pub vanishes: bool,
    pub sharp: bool,
}

/// Report of one relation family over all checked subsets.
#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub kind: String,
    pub entries: Vec<RelationEntry>,
}

impl RelationReport {
    pub fn all_vanish(&self) -> bool {
        self.entries.iter().all(|e| e.vanishes)
    }
}

fn check_subset_bound(g: &Multigraph, bound: usize) -> Result<()> {
    if g.n_vertices() > bound {
        return Err(GalgError::BoundExceeded {
            what: "relation subset vertex",
            value: g.n_vertices(),
            bound,
        });
    }
    Ok(())
}

fn power_entry(base: &AlgebraElement, subset: Vec<usize>, exponent: usize) -> RelationEntry {
    let vanishes = base.pow(exponent).is_zero();
    let sharp = exponent > 0 && !base.pow(exponent - 1).is_zero();
    RelationEntry {
        subset,
        exponent,
        vanishes,
        sharp,
    }
}

fn subset_sum_x(algebra: &Arc<Algebra>, mask: u64) -> Result<AlgebraElement> {
    let mut acc = algebra.zero();
    for i in VertexSet(mask).iter() {
        acc = acc.add(&gen_x(algebra, i)?)?;
    }
    Ok(acc)
}

fn subset_product_y(algebra: &Arc<Algebra>, mask: u64) -> Result<AlgebraElement> {
    let mut acc = algebra.one();
    for i in VertexSet(mask).iter() {
        acc = acc.mul(&gen_y(algebra, i)?)?;
    }
    Ok(acc)
}

/// Verifies (Σ_{i∈I} X_i)^{D_I + 1} = 0 in the square-free algebra for
/// every nonempty vertex subset I, with a sharpness probe at exponent
/// D_I.
pub fn check_p_relations(g: &Multigraph, bound: usize) -> Result<RelationReport> {
    check_subset_bound(g, bound)?;
    let algebra = Algebra::full(g.clone());
    let n = g.n_vertices();
    let mut entries = Vec::new();
    for mask in 1u64..(1u64 << n) {
        let subset = VertexSet(mask);
        let d = g.cut_size(subset)?;
        let sum = subset_sum_x(&algebra, mask)?;
        entries.push(power_entry(&sum, subset.indices(), d + 1));
    }
    Ok(RelationReport {
        kind: "p".into(),
        entries,
    })
}

/// Verifies (∏_{i∈I} Y_i − 1)^{D_I + 1} = 0 in the square-free algebra
/// for every nonempty vertex subset I.
pub fn check_q_relations(g: &Multigraph, bound: usize) -> Result<RelationReport> {
    check_subset_bound(g, bound)?;
    let algebra = Algebra::full(g.clone());
    let n = g.n_vertices();
    let one = algebra.one();
    let mut entries = Vec::new();
    for mask in 1u64..(1u64 << n) {
        let subset = VertexSet(mask);
        let d = g.cut_size(subset)?;
        let product = subset_product_y(&algebra, mask)?.sub(&one)?;
        entries.push(power_entry(&product, subset.indices(), d + 1));
    }
    Ok(RelationReport {
        kind: "q".into(),
        entries,
    })
}

/// Tree-quotient relation suite for a connected graph: for every
/// nonempty proper subset I, (Σ_{i∈I} X_i^T)^{D_I} = 0 and
/// (∏_{i∈I} Y_i^T − 1)^{D_I} = 0; additionally ∏_i Y_i^T = 1 over all
/// vertices.
#[derive(Clone, Debug, Serialize)]
pub struct TreeRelationReport {
    pub p_entries: Vec<RelationEntry>,
    pub q_entries: Vec<RelationEntry>,
    pub full_product_is_one: bool,
}

impl TreeRelationReport {
    pub fn all_vanish(&self) -> bool {
        self.full_product_is_one
            && self.p_entries.iter().all(|e| e.vanishes)
            && self.q_entries.iter().all(|e| e.vanishes)
    }
}

pub fn check_tree_relations(g: &Multigraph, bound: usize) -> Result<TreeRelationReport> {
    check_subset_bound(g, bound)?;
    let algebra = Algebra::tree(g.clone())?;
    let n = g.n_vertices();
    let one = algebra.one();
    let full = (1u64 << n) - 1;
    let mut p_entries = Vec::new();
    let mut q_entries = Vec::new();
    for mask in 1u64..full {
        let subset = VertexSet(mask);
        let d = g.cut_size(subset)?;
        let sum = subset_sum_x(&algebra, mask)?;
        p_entries.push(power_entry(&sum, subset.indices(), d));
        let product = subset_product_y(&algebra, mask)?.sub(&one)?;
        q_entries.push(power_entry(&product, subset.indices(), d));
    }
    let full_product_is_one = subset_product_y(&algebra, full)? == one;
    Ok(TreeRelationReport {
        p_entries,
        q_entries,
        full_product_is_one,
    })
}

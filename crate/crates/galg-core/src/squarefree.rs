use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{GalgError, Result};
use crate::multigraph::{EdgeSet, Multigraph};

/// Exact rational scalar type of the algebra (characteristic 0).
pub type Rational = num_rational::BigRational;

/// Slim lookup tables are precomputed up to this many edges; beyond it
/// the tree quotient tests complement connectivity per monomial.
const SLIM_TABLE_MAX_EDGES: usize = 20;

/// Which quotient an element lives in.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Ambient {
    /// Square-free algebra: one generator per edge, squares vanish.
    Full,
    /// Tree quotient: additionally, monomials with non-slim support
    /// (complement not a connected spanning subgraph) vanish.
    Tree,
}

/// Ambient algebra context shared by all elements built over one graph.
pub struct Algebra {
    graph: Multigraph,
    ambient: Ambient,
    slim_table: Option<Vec<bool>>,
}

impl Algebra {
    /// Square-free algebra of any multigraph.
    pub fn full(graph: Multigraph) -> Arc<Algebra> {
        Arc::new(Algebra {
            graph,
            ambient: Ambient::Full,
            slim_table: None,
        })
    }

    /// Tree quotient; defined only for connected graphs.
    pub fn tree(graph: Multigraph) -> Result<Arc<Algebra>> {
        if !graph.is_connected() {
            return Err(GalgError::DisconnectedTree);
        }
        let ne = graph.n_edges();
        let slim_table = if ne <= SLIM_TABLE_MAX_EDGES {
            let mut table = vec![false; 1usize << ne];
            for (mask, entry) in table.iter_mut().enumerate() {
                *entry = graph.is_slim(EdgeSet(mask as u64))?;
            }
            Some(table)
        } else {
            None
        };
        Ok(Arc::new(Algebra {
            graph,
            ambient: Ambient::Tree,
            slim_table,
        }))
    }

    pub fn with_ambient(graph: Multigraph, ambient: Ambient) -> Result<Arc<Algebra>> {
        match ambient {
            Ambient::Full => Ok(Algebra::full(graph)),
            Ambient::Tree => Algebra::tree(graph),
        }
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn n_edges(&self) -> usize {
        self.graph.n_edges()
    }

    /// True iff the monomial with this support vanishes in the ambient.
    pub fn is_killed(&self, support: EdgeSet) -> bool {
        match self.ambient {
            Ambient::Full => false,
            Ambient::Tree => match &self.slim_table {
                Some(table) => !table[support.0 as usize],
                None => !self
                    .graph
                    .is_slim(support)
                    .expect("tree algebra is connected by construction"),
            },
        }
    }

    /// Number of basis monomials (2^|E| in the full ambient, the slim
    /// subset count in the tree quotient). Enumerative; intended for
    /// small graphs.
    pub fn basis_dimension(&self) -> u128 {
        let ne = self.graph.n_edges();
        match self.ambient {
            Ambient::Full => 1u128 << ne,
            Ambient::Tree => match &self.slim_table {
                Some(table) => table.iter().filter(|&&s| s).count() as u128,
                None => (0u64..(1u64 << ne))
                    .filter(|&m| !self.is_killed(EdgeSet(m)))
                    .count() as u128,
            },
        }
    }

    pub fn zero(self: &Arc<Self>) -> AlgebraElement {
        AlgebraElement {
            algebra: Arc::clone(self),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(self: &Arc<Self>) -> AlgebraElement {
        self.scalar(Rational::one())
    }

    pub fn scalar(self: &Arc<Self>, value: Rational) -> AlgebraElement {
        let mut terms = BTreeMap::new();
        if !value.is_zero() {
            terms.insert(0u64, value);
        }
        AlgebraElement {
            algebra: Arc::clone(self),
            terms,
        }
    }

    /// The generator φ_e (zero in the tree quotient when {e} is
    /// non-slim, i.e. when e is a bridge).
    pub fn phi(self: &Arc<Self>, e: usize) -> Result<AlgebraElement> {
        if e >= self.graph.n_edges() {
            return Err(GalgError::InvalidEdge(e));
        }
        Ok(self.from_terms([(EdgeSet::singleton(e), Rational::one())]))
    }

    /// Builds an element in normal form: zero coefficients and killed
    /// monomials are dropped.
    pub fn from_terms<I>(self: &Arc<Self>, terms: I) -> AlgebraElement
    where
        I: IntoIterator<Item = (EdgeSet, Rational)>,
    {
        let mut map: BTreeMap<u64, Rational> = BTreeMap::new();
        for (support, coefficient) in terms {
            if coefficient.is_zero() || self.is_killed(support) {
                continue;
            }
            let entry = map.entry(support.0).or_insert_with(Rational::zero);
            *entry += coefficient;
            if entry.is_zero() {
                map.remove(&support.0);
            }
        }
        AlgebraElement {
            algebra: Arc::clone(self),
            terms: map,
        }
    }
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("ambient", &self.ambient)
            .field("vertices", &self.graph.n_vertices())
            .field("edges", &self.graph.n_edges())
            .finish()
    }
}

/// Element of Φ_G or Φ_G^T: a sparse exact-rational combination of
/// square-free monomials indexed by edge subsets.
#[derive(Clone)]
pub struct AlgebraElement {
    algebra: Arc<Algebra>,
    terms: BTreeMap<u64, Rational>,
}

impl AlgebraElement {
    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn ambient(&self) -> Ambient {
        self.algebra.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing bitmask order.
    pub fn terms(&self) -> impl Iterator<Item = (EdgeSet, &Rational)> + '_ {
        self.terms.iter().map(|(&k, c)| (EdgeSet(k), c))
    }

    pub fn coefficient(&self, support: EdgeSet) -> Rational {
        self.terms
            .get(&support.0)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(EdgeSet::empty())
    }

    /// Edges whose degree-1 monomial carries a nonzero coefficient.
    pub fn support_degree1(&self) -> EdgeSet {
        let mut out = EdgeSet::empty();
        for &k in self.terms.keys() {
            if k.count_ones() == 1 {
                out.0 |= k;
            }
        }
        out
    }

    pub fn max_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|k| k.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn is_homogeneous_of_degree(&self, d: usize) -> bool {
        self.terms.keys().all(|k| k.count_ones() as usize == d)
    }

    /// The sum of the terms of exactly this monomial degree.
    pub fn homogeneous_component(&self, d: usize) -> AlgebraElement {
        AlgebraElement {
            algebra: Arc::clone(&self.algebra),
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.count_ones() as usize == d)
                .map(|(&k, c)| (k, c.clone()))
                .collect(),
        }
    }

    fn compatible(&self, other: &AlgebraElement) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra)
            || (self.algebra.ambient == other.algebra.ambient
                && self.algebra.graph == other.algebra.graph)
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        if !self.compatible(other) {
            return Err(GalgError::AmbientMismatch);
        }
        let mut terms = self.terms.clone();
        for (&k, c) in &other.terms {
            let entry = terms.entry(k).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(&k);
            }
        }
        Ok(AlgebraElement {
            algebra: Arc::clone(&self.algebra),
            terms,
        })
    }

    pub fn sub(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> AlgebraElement {
        AlgebraElement {
            algebra: Arc::clone(&self.algebra),
            terms: self.terms.iter().map(|(&k, c)| (k, -c.clone())).collect(),
        }
    }

    pub fn scale(&self, factor: &Rational) -> AlgebraElement {
        if factor.is_zero() {
            return self.algebra.zero();
        }
        AlgebraElement {
            algebra: Arc::clone(&self.algebra),
            terms: self
                .terms
                .iter()
                .map(|(&k, c)| (k, c * factor))
                .collect(),
        }
    }

    pub fn add_scalar(&self, value: &Rational) -> AlgebraElement {
        let mut terms = self.terms.clone();
        if !value.is_zero() {
            let entry = terms.entry(0).or_insert_with(Rational::zero);
            *entry += value;
            if entry.is_zero() {
                terms.remove(&0);
            }
        }
        AlgebraElement {
            algebra: Arc::clone(&self.algebra),
            terms,
        }
    }

    /// Product: supports must be disjoint (squares vanish) and, in the
    /// tree quotient, the union must be slim; the algebra is
    /// commutative, with no sign conventions.
    pub fn mul(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        if !self.compatible(other) {
            return Err(GalgError::AmbientMismatch);
        }
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut terms: BTreeMap<u64, Rational> = BTreeMap::new();
        for (&k1, c1) in &small.terms {
            for (&k2, c2) in &large.terms {
                if k1 & k2 != 0 {
                    continue;
                }
                let key = k1 | k2;
                if self.algebra.is_killed(EdgeSet(key)) {
                    continue;
                }
                let entry = terms.entry(key).or_insert_with(Rational::zero);
                *entry += c1 * c2;
                if entry.is_zero() {
                    terms.remove(&key);
                }
            }
        }
        Ok(AlgebraElement {
            algebra: Arc::clone(&self.algebra),
            terms,
        })
    }

    /// Exact power with early exit once the product reaches zero.
    pub fn pow(&self, exponent: usize) -> AlgebraElement {
        let mut acc = self.algebra.one();
        for _ in 0..exponent {
            if acc.is_zero() {
                break;
            }
            acc = acc.mul(self).expect("same algebra");
        }
        acc
    }
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.compatible(other) && self.terms == other.terms
    }
}

impl Eq for AlgebraElement {}

impl fmt::Display for AlgebraElement {
    /// Terms in lexicographic order of their support index lists.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<Vec<usize>> = self.terms.keys().map(|&k| EdgeSet(k).indices()).collect();
        keys.sort();
        for (pos, indices) in keys.iter().enumerate() {
            if pos > 0 {
                write!(f, " + ")?;
            }
            let coefficient = &self.terms[&EdgeSet::from_indices(indices).0];
            if indices.is_empty() {
                write!(f, "{coefficient}")?;
            } else {
                let monomial = indices
                    .iter()
                    .map(|e| format!("φ_{e}"))
                    .collect::<Vec<_>>()
                    .join(" ");
                if coefficient.is_one() {
                    write!(f, "{monomial}")?;
                } else {
                    write!(f, "{coefficient} * {monomial}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [{:?}]", self.algebra.ambient)
    }
}

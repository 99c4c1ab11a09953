use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{GalgError, Result};
use crate::generators::{gen_f, UniPoly};
use crate::squarefree::{Algebra, AlgebraElement, Rational};

/// Finite sequence of nonnegative dimensions; index = (associated)
/// graded degree. Trailing zeros are trimmed and coefficient 0 is the
/// constants.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(transparent)]
pub struct HilbertSeries {
    coefficients: Vec<u64>,
}

impl HilbertSeries {
    pub fn new(mut coefficients: Vec<u64>) -> Self {
        while coefficients.last() == Some(&0) {
            coefficients.pop();
        }
        HilbertSeries { coefficients }
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.coefficients
    }

    pub fn coefficient(&self, k: usize) -> u64 {
        self.coefficients.get(k).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Total dimension (sum of all coefficients).
    pub fn total(&self) -> u64 {
        self.coefficients.iter().sum()
    }

    /// Index of the last nonzero coefficient; the filtration is
    /// stationary beyond it.
    pub fn plateau_k(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn majorize(&self, other: &HilbertSeries) -> Majorization {
        majorize(self, other)
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficients.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coefficients.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (k, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "{c}t")?,
                (_, 1) => write!(f, "t^{k}")?,
                _ => write!(f, "{c}t^{k}")?,
            }
        }
        Ok(())
    }
}

/// Result of comparing two series in the majorization partial order
/// (componentwise comparison of prefix sums).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Majorization {
    Less,
    Equal,
    Greater,
    Incomparable,
}

impl fmt::Display for Majorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Majorization::Less => "less",
            Majorization::Equal => "equal",
            Majorization::Greater => "greater",
            Majorization::Incomparable => "incomparable",
        };
        write!(f, "{s}")
    }
}

/// Compares prefix sums of `a` and `b` at every index (the shorter
/// series is padded with zeros).
pub fn majorize(a: &HilbertSeries, b: &HilbertSeries) -> Majorization {
    let len = a.len().max(b.len());
    let (mut sum_a, mut sum_b) = (0u64, 0u64);
    let (mut some_above, mut some_below) = (false, false);
    for k in 0..len {
        sum_a += a.coefficient(k);
        sum_b += b.coefficient(k);
        if sum_a > sum_b {
            some_above = true;
        }
        if sum_a < sum_b {
            some_below = true;
        }
    }
    match (some_above, some_below) {
        (false, false) => Majorization::Equal,
        (true, false) => Majorization::Greater,
        (false, true) => Majorization::Less,
        (true, true) => Majorization::Incomparable,
    }
}

/// Echelon basis of a linear span of algebra elements. Rows are
/// content-normalized integer vectors over the monomial basis; the
/// pivot of a row is its smallest monomial bitmask. Exact arithmetic
/// throughout.
pub struct SpanBasis {
    rows: BTreeMap<u64, Vec<(u64, BigInt)>>,
}

impl Default for SpanBasis {
    fn default() -> Self {
        SpanBasis::new()
    }
}

impl SpanBasis {
    pub fn new() -> Self {
        SpanBasis {
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `element` against the basis. Returns the reduced
    /// element if it was independent (now part of the basis), or None
    /// if it was already in the span.
    pub fn insert(&mut self, element: &AlgebraElement) -> Option<AlgebraElement> {
        let mut row = to_integer_row(element);
        loop {
            let &(pivot, ref lead) = row.first()?;
            match self.rows.get(&pivot) {
                None => {
                    let _ = lead;
                    normalize_content(&mut row);
                    let reduced = from_integer_row(element.algebra(), &row);
                    self.rows.insert(pivot, row);
                    return Some(reduced);
                }
                Some(basis_row) => {
                    row = eliminate(&row, basis_row);
                }
            }
        }
    }

    /// True iff the element lies in the current span (the basis is not
    /// modified).
    pub fn contains(&self, element: &AlgebraElement) -> bool {
        let mut row = to_integer_row(element);
        loop {
            let Some(&(pivot, _)) = row.first() else {
                return true;
            };
            match self.rows.get(&pivot) {
                None => return false,
                Some(basis_row) => row = eliminate(&row, basis_row),
            }
        }
    }
}

fn to_integer_row(element: &AlgebraElement) -> Vec<(u64, BigInt)> {
    let mut denominator_lcm = BigInt::one();
    for (_, c) in element.terms() {
        denominator_lcm = denominator_lcm.lcm(c.denom());
    }
    let mut row: Vec<(u64, BigInt)> = element
        .terms()
        .map(|(support, c)| (support.0, c.numer() * (&denominator_lcm / c.denom())))
        .collect();
    normalize_content(&mut row);
    row
}

fn from_integer_row(algebra: &Arc<Algebra>, row: &[(u64, BigInt)]) -> AlgebraElement {
    algebra.from_terms(row.iter().map(|(mask, c)| {
        (
            crate::multigraph::EdgeSet(*mask),
            Rational::from_integer(c.clone()),
        )
    }))
}

/// Divides out the coefficient gcd and makes the leading coefficient
/// positive.
fn normalize_content(row: &mut [(u64, BigInt)]) {
    if row.is_empty() {
        return;
    }
    let mut content = BigInt::zero();
    for (_, c) in row.iter() {
        content = content.gcd(c);
        if content.is_one() {
            break;
        }
    }
    if row[0].1.is_negative() {
        content = -content;
    }
    if !content.is_one() {
        for (_, c) in row.iter_mut() {
            *c = &*c / &content;
        }
    }
}

/// `row * lead(basis) − basis * lead(row)`, cancelling the shared
/// pivot; both inputs are sorted by mask.
fn eliminate(row: &[(u64, BigInt)], basis_row: &[(u64, BigInt)]) -> Vec<(u64, BigInt)> {
    let row_lead = &row[0].1;
    let basis_lead = &basis_row[0].1;
    let mut out = Vec::with_capacity(row.len() + basis_row.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < basis_row.len() {
        let take_row = match (row.get(i), basis_row.get(j)) {
            (Some(&(mr, _)), Some(&(mb, _))) => {
                if mr == mb {
                    let value = &row[i].1 * basis_lead - &basis_row[j].1 * row_lead;
                    if !value.is_zero() {
                        out.push((mr, value));
                    }
                    i += 1;
                    j += 1;
                    continue;
                }
                mr < mb
            }
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (None, None) => break,
        };
        if take_row {
            out.push((row[i].0, &row[i].1 * basis_lead));
            i += 1;
        } else {
            out.push((basis_row[j].0, -(&basis_row[j].1 * row_lead)));
            j += 1;
        }
    }
    normalize_content(&mut out);
    out
}

fn check_same_algebra(gens: &[AlgebraElement]) -> Result<()> {
    for pair in gens.windows(2) {
        if pair[0].algebra().ambient() != pair[1].algebra().ambient()
            || pair[0].algebra().graph() != pair[1].algebra().graph()
        {
            return Err(GalgError::AmbientMismatch);
        }
    }
    Ok(())
}

/// Graded Hilbert series of the subalgebra generated by homogeneous
/// degree-1 elements: coefficient k is the dimension of the span of
/// products of exactly k generators.
pub fn graded_series(gens: &[AlgebraElement]) -> Result<HilbertSeries> {
    check_same_algebra(gens)?;
    for g in gens {
        if !g.is_homogeneous_of_degree(1) {
            return Err(GalgError::NonHomogeneous);
        }
    }
    let mut coefficients = vec![1u64];
    let Some(first) = gens.first() else {
        return Ok(HilbertSeries::new(coefficients));
    };
    let algebra = first.algebra();
    let mut frontier = vec![algebra.one()];
    loop {
        let mut component = SpanBasis::new();
        let mut next = Vec::new();
        for b in &frontier {
            for g in gens {
                let product = g.mul(b)?;
                if product.is_zero() {
                    continue;
                }
                if let Some(reduced) = component.insert(&product) {
                    next.push(reduced);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        coefficients.push(next.len() as u64);
        frontier = next;
    }
    Ok(HilbertSeries::new(coefficients))
}

/// Cumulative data of a filtered span computation: dim F_k for each k,
/// the final basis, and reduced basis elements (usable as a spanning
/// set of the whole subalgebra).
pub struct FilteredScan {
    pub dims: Vec<usize>,
    pub basis: SpanBasis,
    pub basis_elements: Vec<AlgebraElement>,
}

impl FilteredScan {
    pub fn total(&self) -> usize {
        self.dims.last().copied().unwrap_or(0)
    }

    /// Associated-graded dimensions dim F_k − dim F_{k−1}.
    pub fn series(&self) -> HilbertSeries {
        let mut coefficients = Vec::with_capacity(self.dims.len());
        let mut previous = 0usize;
        for &d in &self.dims {
            coefficients.push((d - previous) as u64);
            previous = d;
        }
        HilbertSeries::new(coefficients)
    }
}

/// Expands F_k = span{products of at most k generators} degree by
/// degree, stopping at the first plateau.
///
/// Termination is sound because the filtration is multiplicative:
/// F_{k+1} = F_k + Σ_g g·F_k. If F_{k+1} = F_k, the next step feeds the
/// same span through the same products, so every later F_j equals F_k
/// and the scan may stop. Before the plateau each step strictly grows
/// the rank, which is bounded by the monomial dimension, so the loop is
/// finite.
pub fn filtered_scan(gens: &[AlgebraElement]) -> Result<FilteredScan> {
    check_same_algebra(gens)?;
    let Some(first) = gens.first() else {
        return Ok(FilteredScan {
            dims: vec![1],
            basis: SpanBasis::new(),
            basis_elements: Vec::new(),
        });
    };
    let algebra = first.algebra();
    let mut basis = SpanBasis::new();
    let mut basis_elements = Vec::new();
    let one = algebra.one();
    let reduced_one = basis.insert(&one).expect("fresh basis accepts 1");
    basis_elements.push(reduced_one.clone());
    let mut dims = vec![basis.rank()];
    let mut frontier = vec![reduced_one];
    loop {
        let mut next = Vec::new();
        for b in &frontier {
            for g in gens {
                let product = g.mul(b)?;
                if product.is_zero() {
                    continue;
                }
                if let Some(reduced) = basis.insert(&product) {
                    next.push(reduced);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        dims.push(basis.rank());
        basis_elements.extend(next.iter().cloned());
        frontier = next;
    }
    Ok(FilteredScan {
        dims,
        basis,
        basis_elements,
    })
}

/// Filtered Hilbert series (associated-graded dimensions) of the
/// subalgebra generated by `gens` under the products-of-at-most-k
/// filtration.
pub fn filtered_series(gens: &[AlgebraElement]) -> Result<HilbertSeries> {
    Ok(filtered_scan(gens)?.series())
}

/// Samples an admissible polynomial for genericity experiments:
/// integer coefficients in [−1000, 1000], zero constant term, nonzero
/// linear term, degree exactly `n_edges` (for `n_edges ≥ 1`).
pub fn sample_generic_poly<R: Rng>(n_edges: usize, rng: &mut R) -> UniPoly {
    if n_edges == 0 {
        return UniPoly::identity();
    }
    let nonzero = |rng: &mut R| loop {
        let c: i64 = rng.gen_range(-1000..=1000);
        if c != 0 {
            return c;
        }
    };
    let mut coefficients = vec![Rational::zero(); n_edges + 1];
    coefficients[1] = Rational::from_integer(nonzero(rng).into());
    for c in coefficients.iter_mut().take(n_edges).skip(2) {
        let value: i64 = rng.gen_range(-1000..=1000);
        *c = Rational::from_integer(value.into());
    }
    coefficients[n_edges] = Rational::from_integer(nonzero(rng).into());
    UniPoly::new(coefficients)
}

/// Generic filtered series together with its consensus status and the
/// per-seed samples.
#[derive(Clone, Debug)]
pub struct GenericSeries {
    pub series: HilbertSeries,
    pub consensus: bool,
    pub samples: Vec<HilbertSeries>,
}

/// Samples one admissible f per seed and computes the filtered series
/// of {f(X_i)}. Consensus across seeds is the genericity heuristic; on
/// disagreement the majorization-maximal sample is reported with
/// `consensus = false`.
pub fn generic_series(algebra: &Arc<Algebra>, seeds: &[u64]) -> Result<GenericSeries> {
    if seeds.len() < 2 {
        return Err(GalgError::InsufficientSeeds);
    }
    let n = algebra.graph().n_vertices();
    let mut samples = Vec::with_capacity(seeds.len());
    for &seed in seeds {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = sample_generic_poly(algebra.n_edges(), &mut rng);
        let gens = (0..n)
            .map(|i| gen_f(algebra, i, &f))
            .collect::<Result<Vec<_>>>()?;
        samples.push(filtered_series(&gens)?);
    }
    let consensus = samples.windows(2).all(|w| w[0] == w[1]);
    let series = if consensus {
        samples[0].clone()
    } else {
        samples
            .iter()
            .find(|s| {
                samples
                    .iter()
                    .all(|o| majorize(o, s) != Majorization::Greater)
            })
            .unwrap_or(&samples[0])
            .clone()
    };
    Ok(GenericSeries {
        series,
        consensus,
        samples,
    })
}

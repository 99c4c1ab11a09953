use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{GalgError, Result};
use crate::multigraph::Multigraph;
use crate::squarefree::{Algebra, AlgebraElement, Rational};

/// Univariate polynomial over exact rationals; index = degree,
/// trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct UniPoly {
    coefficients: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coefficients: Vec<Rational>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        UniPoly { coefficients }
    }

    pub fn zero() -> Self {
        UniPoly::default()
    }

    /// x as a polynomial.
    pub fn identity() -> Self {
        UniPoly::new(vec![Rational::zero(), Rational::one()])
    }

    /// Truncated exponential minus one: x + x²/2! + ... + x^d/d!.
    pub fn exp_minus_one(degree: usize) -> Self {
        let mut coefficients = vec![Rational::zero(); degree + 1];
        let mut factorial = Rational::one();
        for (k, c) in coefficients.iter_mut().enumerate().skip(1) {
            factorial *= Rational::from_integer(k.into());
            *c = Rational::one() / &factorial;
        }
        UniPoly::new(coefficients)
    }

    /// Truncated logarithm: x − x²/2 + x³/3 − ... ± x^d/d.
    pub fn log_one_plus(degree: usize) -> Self {
        let mut coefficients = vec![Rational::zero(); degree + 1];
        for (k, c) in coefficients.iter_mut().enumerate().skip(1) {
            let term = Rational::one() / Rational::from_integer(k.into());
            *c = if k % 2 == 1 { term } else { -term };
        }
        UniPoly::new(coefficients)
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn coefficient(&self, degree: usize) -> Rational {
        self.coefficients
            .get(degree)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn has_zero_constant_term(&self) -> bool {
        self.coefficient(0).is_zero()
    }

    pub fn has_nonzero_linear_term(&self) -> bool {
        !self.coefficient(1).is_zero()
    }

    /// Drops all terms of degree above `max_degree`.
    pub fn truncate(&self, max_degree: usize) -> UniPoly {
        UniPoly::new(
            self.coefficients
                .iter()
                .take(max_degree + 1)
                .cloned()
                .collect(),
        )
    }

    /// Horner evaluation at an algebra element (finite because the
    /// argument is nilpotent or the polynomial is).
    pub fn evaluate(&self, x: &AlgebraElement) -> AlgebraElement {
        let algebra = x.algebra();
        let mut acc = algebra.zero();
        for c in self.coefficients.iter().rev() {
            acc = acc.mul(x).expect("same algebra").add_scalar(c);
        }
        acc
    }

    /// Parses comma-separated rational coefficients from degree 0
    /// upward, e.g. `0, 1, 1/2, 1/6`.
    pub fn parse(text: &str) -> Result<UniPoly> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Err(GalgError::BadPolynomial("empty coefficient list".into()));
        }
        let coefficients = trimmed
            .split(',')
            .map(|part| {
                Rational::from_str(part.trim())
                    .map_err(|_| GalgError::BadPolynomial(format!("bad coefficient `{}`", part.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(UniPoly::new(coefficients))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficients.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coefficients.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// Incidence coefficient of Χ_i at edge e: +1 if e joins i to a
/// larger-labeled vertex, −1 if to a smaller one, 0 if not incident.
pub fn coeff_c(g: &Multigraph, i: usize, e: usize) -> Result<i8> {
    if i >= g.n_vertices() {
        return Err(GalgError::InvalidVertex(i));
    }
    let (u, v) = g.edge(e)?;
    Ok(if i == u {
        if i < v {
            1
        } else {
            -1
        }
    } else if i == v {
        if i < u {
            1
        } else {
            -1
        }
    } else {
        0
    })
}

/// X_i = Σ_e c_{i,e} φ_e; zero for an isolated vertex.
pub fn gen_x(algebra: &Arc<Algebra>, i: usize) -> Result<AlgebraElement> {
    let g = algebra.graph();
    let mut acc = algebra.zero();
    for e in 0..g.n_edges() {
        let c = coeff_c(g, i, e)?;
        if c != 0 {
            let term = algebra.phi(e)?.scale(&Rational::from_integer(c.into()));
            acc = acc.add(&term)?;
        }
    }
    Ok(acc)
}

/// Y_i = exp(X_i) computed in product form ∏_e (1 + c_{i,e} φ_e).
pub fn gen_y(algebra: &Arc<Algebra>, i: usize) -> Result<AlgebraElement> {
    let g = algebra.graph();
    let mut acc = algebra.one();
    for e in 0..g.n_edges() {
        let c = coeff_c(g, i, e)?;
        if c != 0 {
            let factor = algebra
                .phi(e)?
                .scale(&Rational::from_integer(c.into()))
                .add_scalar(&Rational::one());
            acc = acc.mul(&factor)?;
        }
    }
    Ok(acc)
}

/// Ỹ_i = Y_i − 1.
pub fn gen_y_tilde(algebra: &Arc<Algebra>, i: usize) -> Result<AlgebraElement> {
    Ok(gen_y(algebra, i)?.add_scalar(&-Rational::one()))
}

/// f(X_i) for a polynomial f with zero constant term; f is truncated
/// at degree |E| first (higher powers of a degree-1 nilpotent vanish
/// anyway).
pub fn gen_f(algebra: &Arc<Algebra>, i: usize, f: &UniPoly) -> Result<AlgebraElement> {
    if !f.has_zero_constant_term() {
        return Err(GalgError::NonzeroConstantTerm);
    }
    let truncated = f.truncate(algebra.n_edges());
    Ok(truncated.evaluate(&gen_x(algebra, i)?))
}

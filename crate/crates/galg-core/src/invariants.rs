use std::sync::Arc;

use num_traits::Zero;

use crate::error::{GalgError, Result};
use crate::generators::{gen_y_tilde, UniPoly};
use crate::multigraph::Multigraph;
use crate::squarefree::{Algebra, AlgebraElement, Rational};

/// Degree invariant of a nilpotent subalgebra element: the number of
/// edge variables appearing with nonzero coefficient in its degree-1
/// part. For elements of the vertex-generator subalgebra this equals
/// the abstract corrected-nilpotency degree.
pub fn degree_d(r: &AlgebraElement) -> Result<usize> {
    if !r.constant_term().is_zero() {
        return Err(GalgError::NotNilpotent);
    }
    Ok(r.support_degree1().len())
}

/// Edge multiplicity between vertices i and j recovered from the
/// Ỹ generators alone: (d(Ỹ_i) + d(Ỹ_j) − d(Ỹ_i + Ỹ_j)) / 2.
pub fn multiplicity(algebra: &Arc<Algebra>, i: usize, j: usize) -> Result<usize> {
    if i == j {
        return Err(GalgError::InvalidVertex(i));
    }
    let zi = gen_y_tilde(algebra, i)?;
    let zj = gen_y_tilde(algebra, j)?;
    multiplicity_between(&zi, &zj)
}

/// Multiplicity formula applied to two supplied generator elements.
pub fn multiplicity_between(zi: &AlgebraElement, zj: &AlgebraElement) -> Result<usize> {
    let di = degree_d(zi)?;
    let dj = degree_d(zj)?;
    let dsum = degree_d(&zi.add(zj)?)?;
    let doubled = di + dj;
    if dsum > doubled || (doubled - dsum) % 2 != 0 {
        return Err(GalgError::DegreeInconsistency);
    }
    Ok((doubled - dsum) / 2)
}

/// Number of edges incident to the vertices indexed by `subset`,
/// computed as d(Σ a_k Z_{i_k}) for pairwise distinct nonzero
/// coefficients a_k.
pub fn incident_edge_count(
    gens: &[AlgebraElement],
    subset: &[usize],
    coefficients: &[Rational],
) -> Result<usize> {
    if coefficients.len() != subset.len() {
        return Err(GalgError::BadCoefficients);
    }
    for (k, a) in coefficients.iter().enumerate() {
        if a.is_zero() || coefficients[..k].contains(a) {
            return Err(GalgError::BadCoefficients);
        }
    }
    let Some(first) = gens.first() else {
        return Err(GalgError::BadCoefficients);
    };
    let mut acc = first.algebra().zero();
    for (&i, a) in subset.iter().zip(coefficients) {
        let z = gens.get(i).ok_or(GalgError::InvalidVertex(i))?;
        acc = acc.add(&z.scale(a))?;
    }
    degree_d(&acc)
}

/// Rebuilds a multigraph from a family claimed to be the Ỹ generators
/// of a graph without isolated vertices (possibly with permuted vertex
/// labels). The result has `multiplicity(i, j)` edges between i and j,
/// listed in lexicographic pair order. Two validations guard against
/// inconsistent input: the degree sum must equal twice the edge total,
/// and Σ log(1 + Z_i) must vanish.
pub fn reconstruct(gens: &[AlgebraElement]) -> Result<Multigraph> {
    let Some(first) = gens.first() else {
        return Err(GalgError::InconsistentFamily);
    };
    let algebra = first.algebra();
    let n = gens.len();
    let mut degrees = Vec::with_capacity(n);
    for z in gens {
        if z.is_zero() {
            // An isolated vertex would have Ỹ = 0; the reconstruction
            // hypothesis excludes it.
            return Err(GalgError::InconsistentFamily);
        }
        degrees.push(degree_d(z).map_err(|_| GalgError::InconsistentFamily)?);
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let m = multiplicity_between(&gens[i], &gens[j])
                .map_err(|_| GalgError::InconsistentFamily)?;
            for _ in 0..m {
                edges.push((i, j));
            }
        }
    }
    let degree_total: usize = degrees.iter().sum();
    if 2 * edges.len() != degree_total {
        return Err(GalgError::InconsistentFamily);
    }
    let log = UniPoly::log_one_plus(algebra.n_edges());
    let mut log_sum = algebra.zero();
    for z in gens {
        log_sum = log_sum.add(&log.evaluate(z))?;
    }
    if !log_sum.is_zero() {
        return Err(GalgError::InconsistentFamily);
    }
    Multigraph::new(n, &edges).map_err(|_| GalgError::InconsistentFamily)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_x;
    use crate::multigraph::are_isomorphic;

    fn rat(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn triangle() -> Multigraph {
        Multigraph::new(3, &[(0, 1), (0, 2), (1, 2)]).unwrap()
    }

    fn tilde_family(algebra: &Arc<Algebra>) -> Vec<AlgebraElement> {
        (0..algebra.graph().n_vertices())
            .map(|i| gen_y_tilde(algebra, i).unwrap())
            .collect()
    }

    #[test]
    fn degree_of_tilde_generators_is_vertex_degree() {
        let g = Multigraph::new(3, &[(0, 1), (0, 1), (1, 2)]).unwrap();
        let algebra = Algebra::full(g.clone());
        for i in 0..3 {
            let z = gen_y_tilde(&algebra, i).unwrap();
            assert_eq!(degree_d(&z).unwrap(), g.degree(i));
        }
        assert_eq!(degree_d(&algebra.zero()).unwrap(), 0);
        assert!(matches!(
            degree_d(&algebra.one()),
            Err(GalgError::NotNilpotent)
        ));
    }

    #[test]
    fn degree_adds_for_nonadjacent_vertices() {
        let g = Multigraph::new(4, &[(0, 1), (2, 3), (2, 3)]).unwrap();
        let algebra = Algebra::full(g.clone());
        let x0 = gen_x(&algebra, 0).unwrap();
        let x2 = gen_x(&algebra, 2).unwrap();
        assert_eq!(
            degree_d(&x0.add(&x2).unwrap()).unwrap(),
            g.degree(0) + g.degree(2)
        );
    }

    #[test]
    fn multiplicity_recovery() {
        let single = Algebra::full(Multigraph::new(2, &[(0, 1)]).unwrap());
        assert_eq!(multiplicity(&single, 0, 1).unwrap(), 1);

        let tri = Algebra::full(triangle());
        assert_eq!(multiplicity(&tri, 0, 1).unwrap(), 1);

        let double = Algebra::full(Multigraph::new(2, &[(0, 1), (0, 1)]).unwrap());
        assert_eq!(multiplicity(&double, 0, 1).unwrap(), 2);

        let path = Algebra::full(Multigraph::new(3, &[(0, 1), (1, 2)]).unwrap());
        assert_eq!(multiplicity(&path, 0, 2).unwrap(), 0);
        assert!(multiplicity(&path, 1, 1).is_err());
    }

    #[test]
    fn incident_edge_counts() {
        let tri = Algebra::full(triangle());
        let gens = tilde_family(&tri);
        assert_eq!(
            incident_edge_count(&gens, &[0, 1], &[rat(1), rat(2)]).unwrap(),
            3
        );
        assert_eq!(
            incident_edge_count(&gens, &[0, 1, 2], &[rat(1), rat(2), rat(3)]).unwrap(),
            3
        );
        let path = Algebra::full(Multigraph::new(3, &[(0, 1), (1, 2)]).unwrap());
        let path_gens = tilde_family(&path);
        assert_eq!(incident_edge_count(&path_gens, &[0], &[rat(1)]).unwrap(), 1);
        assert!(matches!(
            incident_edge_count(&gens, &[0, 1], &[rat(1), rat(1)]),
            Err(GalgError::BadCoefficients)
        ));
        assert!(matches!(
            incident_edge_count(&gens, &[0, 1], &[rat(1), rat(0)]),
            Err(GalgError::BadCoefficients)
        ));
        assert!(matches!(
            incident_edge_count(&gens, &[0], &[rat(1), rat(2)]),
            Err(GalgError::BadCoefficients)
        ));
    }

    #[test]
    fn incident_count_independent_of_coefficients() {
        let tri = Algebra::full(triangle());
        let gens = tilde_family(&tri);
        for pair in [(rat(1), rat(-1)), (rat(2), rat(7)), (rat(-3), rat(5))] {
            assert_eq!(
                incident_edge_count(&gens, &[0, 2], &[pair.0, pair.1]).unwrap(),
                3
            );
        }
    }

    #[test]
    fn reconstruction_round_trip() {
        for edges in [
            vec![(0usize, 1usize)],
            vec![(0, 1), (0, 2), (1, 2)],
            vec![(0, 1), (0, 1), (1, 2)],
            vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        ] {
            let n = edges.iter().flat_map(|&(a, b)| [a, b]).max().unwrap() + 1;
            let g = Multigraph::new(n, &edges).unwrap();
            let algebra = Algebra::full(g.clone());
            let rebuilt = reconstruct(&tilde_family(&algebra)).unwrap();
            assert!(are_isomorphic(&g, &rebuilt, 10).unwrap().is_some());
        }
    }

    #[test]
    fn reconstruction_handles_relabeling() {
        let g = Multigraph::new(4, &[(0, 1), (0, 2), (1, 2), (2, 3)]).unwrap();
        let relabeled = g.relabel_vertices(&[3, 1, 0, 2]).unwrap();
        let algebra = Algebra::full(relabeled.clone());
        let rebuilt = reconstruct(&tilde_family(&algebra)).unwrap();
        assert!(are_isomorphic(&g, &rebuilt, 10).unwrap().is_some());
    }

    #[test]
    fn reconstruction_rejects_inconsistent_families() {
        let tri = Algebra::full(triangle());
        let mut gens = tilde_family(&tri);
        gens.push(tri.zero());
        assert!(matches!(
            reconstruct(&gens),
            Err(GalgError::InconsistentFamily)
        ));

        // Plain φ generators are not a vertex family: the log-sum
        // validation fails.
        let fake: Vec<_> = (0..3).map(|e| tri.phi(e).unwrap()).collect();
        assert!(matches!(
            reconstruct(&fake),
            Err(GalgError::InconsistentFamily)
        ));

        assert!(matches!(
            reconstruct(&[]),
            Err(GalgError::InconsistentFamily)
        ));
    }
}

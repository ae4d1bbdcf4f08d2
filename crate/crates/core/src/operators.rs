//! Incidence, degree and adjacency matrices, the boundary operator `δ` with its
//! adjoint `δ*`, and the normalized Laplacians `L = δ*δ` and `Lᴴ = δδ*`.
//!
//! Matrix entries are assembled from products of coefficients first and divided
//! by degrees last. The matrix-free operators (`apply_l`, `apply_lh`) walk the
//! sparse per-hyperedge coefficient lists directly.

use nalgebra::{DMatrix, DVector};

use crate::error::Result;
use crate::function::{HyperedgeFunction, VertexFunction};
use crate::hypergraph::Hypergraph;

/// All matrices associated with a hypergraph.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorBundle {
    /// `𝓘`, `N×M`, `𝓘_{ij} = C_{v_i,h_j}`.
    pub incidence: DMatrix<f64>,
    /// Diagonal of `D`.
    pub degree_diag: DVector<f64>,
    /// `A`, symmetric with zero diagonal, `A_{ij} = −Σ_h C_{v_i,h} C_{v_j,h}`.
    pub adjacency: DMatrix<f64>,
    /// `L = Id − D⁻¹A`, not symmetric in general.
    pub vertex_laplacian: DMatrix<f64>,
    /// `Lᴴ = 𝓘ᵀ D⁻¹ 𝓘`, symmetric positive semidefinite.
    pub hyperedge_laplacian: DMatrix<f64>,
}

pub fn build_operators(h: &Hypergraph) -> OperatorBundle {
    let n = h.num_vertices();
    let m = h.num_hyperedges();
    let incidence = h.incidence_matrix();
    let degree_diag = DVector::from_column_slice(h.degrees());

    let mut adjacency = DMatrix::<f64>::zeros(n, n);
    for edge in h.hyperedges() {
        let entries = edge.entries();
        for (a, &(i, ci)) in entries.iter().enumerate() {
            for &(j, cj) in &entries[a + 1..] {
                adjacency[(i, j)] -= ci * cj;
                adjacency[(j, i)] -= ci * cj;
            }
        }
    }

    let mut vertex_laplacian = DMatrix::identity(n, n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                vertex_laplacian[(i, j)] = -adjacency[(i, j)] / degree_diag[i];
            }
        }
    }

    let mut hyperedge_laplacian = DMatrix::<f64>::zeros(m, m);
    for i in 0..n {
        let row = h.memberships(i);
        let d = degree_diag[i];
        for &(k, ck) in row {
            for &(l, cl) in row {
                hyperedge_laplacian[(k, l)] += ck * cl / d;
            }
        }
    }

    OperatorBundle {
        incidence,
        degree_diag,
        adjacency,
        vertex_laplacian,
        hyperedge_laplacian,
    }
}

impl OperatorBundle {
    /// `Id − D^{−1/2} A D^{−1/2}`, the symmetric matrix similar to `L` via `D^{1/2}`.
    pub fn symmetric_vertex_laplacian(&self) -> DMatrix<f64> {
        let n = self.degree_diag.len();
        let root: Vec<f64> = self.degree_diag.iter().map(|d| d.sqrt()).collect();
        DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                1.0
            } else {
                -self.adjacency[(i, j)] / (root[i] * root[j])
            }
        })
    }
}

/// `δf(h) = Σ_v C_{v,h} f(v)`.
pub fn boundary(h: &Hypergraph, f: &VertexFunction) -> Result<HyperedgeFunction> {
    f.expect_len(h.num_vertices())?;
    Ok(boundary_unchecked(h, f.values()).into())
}

/// `δ*γ(v) = Σ_h C_{v,h} γ(h) / deg v`.
pub fn coboundary(h: &Hypergraph, gamma: &HyperedgeFunction) -> Result<VertexFunction> {
    gamma.expect_len(h.num_hyperedges())?;
    Ok(coboundary_unchecked(h, gamma.values()).into())
}

pub(crate) fn boundary_unchecked(h: &Hypergraph, f: &DVector<f64>) -> DVector<f64> {
    DVector::from_iterator(
        h.num_hyperedges(),
        h.hyperedges()
            .iter()
            .map(|e| e.entries().iter().map(|&(v, c)| c * f[v]).sum::<f64>()),
    )
}

pub(crate) fn coboundary_unchecked(h: &Hypergraph, gamma: &DVector<f64>) -> DVector<f64> {
    DVector::from_fn(h.num_vertices(), |v, _| {
        h.memberships(v)
            .iter()
            .map(|&(e, c)| c * gamma[e])
            .sum::<f64>()
            / h.degree_at(v)
    })
}

/// `(f₁, f₂)_V = Σ_v deg v · f₁(v) · f₂(v)`.
pub fn scalar_product_v(h: &Hypergraph, f1: &VertexFunction, f2: &VertexFunction) -> Result<f64> {
    f1.expect_len(h.num_vertices())?;
    f2.expect_len(h.num_vertices())?;
    Ok(weighted_dot(h.degrees(), f1.values(), f2.values()))
}

/// `(γ₁, γ₂)_H = Σ_h γ₁(h) · γ₂(h)`.
pub fn scalar_product_h(g1: &HyperedgeFunction, g2: &HyperedgeFunction) -> Result<f64> {
    g1.expect_len(g2.len())?;
    Ok(g1.values().dot(g2.values()))
}

pub(crate) fn weighted_dot(weights: &[f64], a: &DVector<f64>, b: &DVector<f64>) -> f64 {
    weights
        .iter()
        .zip(a.iter().zip(b.iter()))
        .map(|(w, (x, y))| w * x * y)
        .sum()
}

/// `Lf = δ*(δf)`.
pub fn apply_l(h: &Hypergraph, f: &VertexFunction) -> Result<VertexFunction> {
    f.expect_len(h.num_vertices())?;
    Ok(apply_l_unchecked(h, f.values()).into())
}

/// `Lᴴγ = δ(δ*γ)`.
pub fn apply_lh(h: &Hypergraph, gamma: &HyperedgeFunction) -> Result<HyperedgeFunction> {
    gamma.expect_len(h.num_hyperedges())?;
    Ok(boundary_unchecked(h, &coboundary_unchecked(h, gamma.values())).into())
}

pub(crate) fn apply_l_unchecked(h: &Hypergraph, f: &DVector<f64>) -> DVector<f64> {
    coboundary_unchecked(h, &boundary_unchecked(h, f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::hypergraph::HypergraphSpec;

    fn two_vertex() -> Hypergraph {
        HypergraphSpec::new(["v1", "v2"])
            .hyperedge("h1", [("v1", 1.0), ("v2", 1.0)])
            .hyperedge("h2", [("v1", 1.0), ("v2", 2.0)])
            .build()
            .unwrap()
    }

    fn three_vertex() -> Hypergraph {
        HypergraphSpec::new(["v1", "v2", "v3"])
            .hyperedge("h1", [("v1", 1.0), ("v2", 1.0)])
            .hyperedge("h2", [("v2", 1.0), ("v3", 1.0)])
            .hyperedge("h3", [("v1", 1.0), ("v2", 1.0), ("v3", 1.0)])
            .build()
            .unwrap()
    }

    fn assert_matrix(actual: &DMatrix<f64>, expected: &[&[f64]], tol: f64) {
        assert_eq!(actual.nrows(), expected.len());
        for (i, row) in expected.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                assert!(
                    (actual[(i, j)] - x).abs() <= tol,
                    "entry ({i},{j}) = {} expected {x}",
                    actual[(i, j)]
                );
            }
        }
    }

    #[test]
    fn two_vertex_matrices() {
        let ops = build_operators(&two_vertex());
        assert_matrix(&ops.adjacency, &[&[0.0, -3.0], &[-3.0, 0.0]], 0.0);
        assert_matrix(&ops.vertex_laplacian, &[&[1.0, 1.5], &[0.6, 1.0]], 1e-12);
        assert_eq!(ops.degree_diag.as_slice(), &[2.0, 5.0]);
        // Lᴴ = 𝓘ᵀD⁻¹𝓘 with 𝓘 = [[1,1],[1,2]]
        assert_matrix(
            &ops.hyperedge_laplacian,
            &[&[0.5 + 0.2, 0.5 + 0.4], &[0.5 + 0.4, 0.5 + 0.8]],
            1e-12,
        );
    }

    #[test]
    fn three_vertex_matrices() {
        let ops = build_operators(&three_vertex());
        assert_matrix(
            &ops.adjacency,
            &[&[0.0, -2.0, -1.0], &[-2.0, 0.0, -2.0], &[-1.0, -2.0, 0.0]],
            0.0,
        );
        assert_matrix(
            &ops.vertex_laplacian,
            &[
                &[1.0, 1.0, 0.5],
                &[2.0 / 3.0, 1.0, 2.0 / 3.0],
                &[0.5, 1.0, 1.0],
            ],
            1e-12,
        );
    }

    #[test]
    fn single_vertex_scaling_cancels() {
        for c in [1.0, -3.5, 1e-3, 42.0] {
            let h = HypergraphSpec::new(["v"])
                .hyperedge("h", [("v", c)])
                .build()
                .unwrap();
            let ops = build_operators(&h);
            assert!((ops.vertex_laplacian[(0, 0)] - 1.0).abs() < 1e-12);
            assert!((ops.hyperedge_laplacian[(0, 0)] - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn boundary_and_coboundary_examples() {
        let h = two_vertex();
        let d = boundary(&h, &VertexFunction::new(vec![1.0, 1.0])).unwrap();
        assert_eq!(d.as_slice(), &[2.0, 3.0]);
        let z = boundary(&h, &VertexFunction::zeros(2)).unwrap();
        assert!(z.is_zero());

        let c = coboundary(&h, &HyperedgeFunction::new(vec![1.0, 0.0])).unwrap();
        assert!((c[0] - 0.5).abs() < 1e-15 && (c[1] - 0.2).abs() < 1e-15);
        assert!(coboundary(&h, &HyperedgeFunction::zeros(2)).unwrap().is_zero());
    }

    #[test]
    fn dimension_mismatches() {
        let h = two_vertex();
        let bad_v = VertexFunction::zeros(3);
        let bad_h = HyperedgeFunction::zeros(1);
        let mismatch = Err(Error::DimensionMismatch {
            expected: 2,
            found: 3,
        });
        assert_eq!(boundary(&h, &bad_v), mismatch);
        assert!(matches!(
            coboundary(&h, &bad_h),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(apply_l(&h, &bad_v).is_err());
        assert!(apply_lh(&h, &bad_h).is_err());
        assert!(scalar_product_v(&h, &bad_v, &bad_v).is_err());
        assert!(scalar_product_h(&bad_h, &HyperedgeFunction::zeros(2)).is_err());
    }

    #[test]
    fn scalar_products() {
        let h = two_vertex();
        let e1 = VertexFunction::new(vec![1.0, 0.0]);
        assert_eq!(scalar_product_v(&h, &e1, &e1).unwrap(), 2.0);
        let g = HyperedgeFunction::new(vec![0.0, 1.0]);
        assert_eq!(scalar_product_h(&g, &g).unwrap(), 1.0);
    }

    #[test]
    fn eigenfunction_of_two_vertex_example() {
        let h = two_vertex();
        // (√(5/2), 1) belongs to 1 + 3/√10 and (−√(5/2), 1) to 1 − 3/√10.
        for (sign, lambda) in [(1.0, 1.0 + 3.0 / 10f64.sqrt()), (-1.0, 1.0 - 3.0 / 10f64.sqrt())] {
            let f = VertexFunction::new(vec![sign * 2.5f64.sqrt(), 1.0]);
            let lf = apply_l(&h, &f).unwrap();
            for i in 0..2 {
                assert!((lf[i] - lambda * f[i]).abs() < 1e-12);
            }
        }
        assert!(apply_l(&h, &VertexFunction::zeros(2)).unwrap().is_zero());
    }

    #[test]
    fn matrix_free_matches_matrices() {
        let h = three_vertex();
        let ops = build_operators(&h);
        let f = DVector::from_vec(vec![0.3, -1.2, 2.0]);
        let lf = apply_l(&h, &f.clone().into()).unwrap();
        assert!((lf.values() - &ops.vertex_laplacian * &f).amax() < 1e-12);
        let g = DVector::from_vec(vec![1.0, -0.5, 0.25]);
        let lg = apply_lh(&h, &g.clone().into()).unwrap();
        assert!((lg.values() - &ops.hyperedge_laplacian * &g).amax() < 1e-12);
    }

    #[test]
    fn symmetric_form_is_similar() {
        let ops = build_operators(&two_vertex());
        let s = ops.symmetric_vertex_laplacian();
        assert!((s[(0, 1)] - s[(1, 0)]).abs() < 1e-15);
        let d = &ops.degree_diag;
        let expected = d[0].sqrt() * ops.vertex_laplacian[(0, 1)] / d[1].sqrt();
        assert!((s[(0, 1)] - expected).abs() < 1e-12);
    }
}

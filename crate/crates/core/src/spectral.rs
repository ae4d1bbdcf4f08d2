//! Spectra of `L` and `Lᴴ`, Rayleigh quotients, and the multiplicity of the
//! eigenvalue zero read off the rank of the incidence matrix.
//!
//! `L` is not symmetric, so vertex spectra are computed on the similar
//! symmetric matrix `Id − D^{−1/2} A D^{−1/2}` and eigenvectors are mapped back
//! by `D^{−1/2}`. The resulting eigenfunctions are orthonormal for `(·,·)_V`.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::function::{HyperedgeFunction, VertexFunction};
use crate::hypergraph::Hypergraph;
use crate::linalg;
use crate::operators::{
    apply_l_unchecked, boundary_unchecked, build_operators, coboundary_unchecked, weighted_dot,
};

/// Per-vertex factor of the default zero tolerance, `1e−9 · N`.
pub const ZERO_TOLERANCE_PER_VERTEX: f64 = 1e-9;

pub fn default_zero_tolerance(num_vertices: usize) -> f64 {
    ZERO_TOLERANCE_PER_VERTEX * num_vertices.max(1) as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumKind {
    /// Eigenpairs of `L`.
    Vertex,
    /// Eigenpairs of `Lᴴ`.
    Hyperedge,
}

/// Ascending eigenvalues with matching eigenvectors (as columns).
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    kind: SpectrumKind,
    eigenvalues: Vec<f64>,
    eigenvectors: DMatrix<f64>,
    zero_tolerance: f64,
}

/// A run of eigenvalues that agree within the zero tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenvalueCluster {
    pub value: f64,
    pub multiplicity: usize,
    /// Index of the first member in the ascending list.
    pub start: usize,
}

impl Spectrum {
    pub fn kind(&self) -> SpectrumKind {
        self.kind
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &DMatrix<f64> {
        &self.eigenvectors
    }

    pub fn eigenvector(&self, k: usize) -> DVector<f64> {
        self.eigenvectors.column(k).into_owned()
    }

    pub fn zero_tolerance(&self) -> f64 {
        self.zero_tolerance
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn is_zero(&self, value: f64) -> bool {
        value.abs() <= self.zero_tolerance
    }

    /// Number of eigenvalues classified as zero.
    pub fn zero_count(&self) -> usize {
        self.eigenvalues.iter().filter(|&&l| self.is_zero(l)).count()
    }

    pub fn nonzero(&self) -> Vec<f64> {
        self.eigenvalues
            .iter()
            .copied()
            .filter(|&l| !self.is_zero(l))
            .collect()
    }

    pub fn largest(&self) -> Option<f64> {
        self.eigenvalues.last().copied()
    }

    pub fn smallest_nonzero(&self) -> Option<f64> {
        self.eigenvalues.iter().copied().find(|&l| !self.is_zero(l))
    }

    pub fn sum(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    /// Whether some eigenvalue lies within `tolerance` of `value`.
    pub fn contains(&self, value: f64, tolerance: f64) -> bool {
        self.eigenvalues.iter().any(|&l| (l - value).abs() <= tolerance)
    }

    /// Groups consecutive eigenvalues closer than the zero tolerance.
    pub fn clusters(&self) -> Vec<EigenvalueCluster> {
        let mut out: Vec<EigenvalueCluster> = Vec::new();
        for (k, &l) in self.eigenvalues.iter().enumerate() {
            match out.last_mut() {
                Some(c) if (l - self.eigenvalues[k - 1]).abs() <= self.zero_tolerance => {
                    c.value = (c.value * c.multiplicity as f64 + l) / (c.multiplicity + 1) as f64;
                    c.multiplicity += 1;
                }
                _ => out.push(EigenvalueCluster {
                    value: l,
                    multiplicity: 1,
                    start: k,
                }),
            }
        }
        out
    }

    /// Largest `‖Tx − λx‖∞` over all eigenpairs, with `T` the matching Laplacian.
    pub fn max_residual(&self, h: &Hypergraph) -> f64 {
        (0..self.len())
            .map(|k| self.residual(h, k))
            .fold(0.0, f64::max)
    }

    pub fn residual(&self, h: &Hypergraph, k: usize) -> f64 {
        let x = self.eigenvector(k);
        let tx = match self.kind {
            SpectrumKind::Vertex => apply_l_unchecked(h, &x),
            SpectrumKind::Hyperedge => boundary_unchecked(h, &coboundary_unchecked(h, &x)),
        };
        (tx - x * self.eigenvalues[k]).amax()
    }
}

pub fn spectrum_vertex(h: &Hypergraph) -> Result<Spectrum> {
    spectrum_vertex_with_tolerance(h, default_zero_tolerance(h.num_vertices()))
}

pub fn spectrum_vertex_with_tolerance(h: &Hypergraph, zero_tolerance: f64) -> Result<Spectrum> {
    let ops = build_operators(h);
    let sym = ops.symmetric_vertex_laplacian();
    let (eigenvalues, u) = linalg::symmetric_eigen(&sym, "symmetric vertex Laplacian")?;
    let mut eigenvectors = u;
    for (i, d) in ops.degree_diag.iter().enumerate() {
        eigenvectors.row_mut(i).scale_mut(1.0 / d.sqrt());
    }
    for mut col in eigenvectors.column_iter_mut() {
        let mut v = col.clone_owned();
        linalg::normalize_sign(&mut v);
        col.copy_from(&v);
    }
    Ok(Spectrum {
        kind: SpectrumKind::Vertex,
        eigenvalues,
        eigenvectors,
        zero_tolerance,
    })
}

pub fn spectrum_hyperedge(h: &Hypergraph) -> Result<Spectrum> {
    spectrum_hyperedge_with_tolerance(h, default_zero_tolerance(h.num_vertices()))
}

pub fn spectrum_hyperedge_with_tolerance(h: &Hypergraph, zero_tolerance: f64) -> Result<Spectrum> {
    let ops = build_operators(h);
    let (eigenvalues, eigenvectors) =
        linalg::symmetric_eigen(&ops.hyperedge_laplacian, "hyperedge Laplacian")?;
    Ok(Spectrum {
        kind: SpectrumKind::Hyperedge,
        eigenvalues,
        eigenvectors,
        zero_tolerance,
    })
}

/// Vertex spectrum of each connected component, paired with the component's
/// vertex indices in the parent hypergraph.
pub fn component_spectra(h: &Hypergraph, zero_tolerance: f64) -> Result<Vec<(Vec<usize>, Spectrum)>> {
    h.components()
        .into_iter()
        .map(|c| {
            let sub = h.restrict_to(&c)?;
            Ok((c, spectrum_vertex_with_tolerance(&sub, zero_tolerance)?))
        })
        .collect()
}

/// `RQ(f) = (δf, δf)_H / (f, f)_V`.
pub fn rayleigh_vertex(h: &Hypergraph, f: &VertexFunction) -> Result<f64> {
    f.expect_len(h.num_vertices())?;
    let denom = weighted_dot(h.degrees(), f.values(), f.values());
    if denom == 0.0 {
        return Err(Error::ZeroFunction);
    }
    let d = boundary_unchecked(h, f.values());
    Ok(d.dot(&d) / denom)
}

/// `RQ(γ) = (δ*γ, δ*γ)_V / (γ, γ)_H`.
pub fn rayleigh_hyperedge(h: &Hypergraph, gamma: &HyperedgeFunction) -> Result<f64> {
    gamma.expect_len(h.num_hyperedges())?;
    let denom = gamma.values().dot(gamma.values());
    if denom == 0.0 {
        return Err(Error::ZeroFunction);
    }
    let c = coboundary_unchecked(h, gamma.values());
    Ok(weighted_dot(h.degrees(), &c, &c) / denom)
}

/// Multiplicities of the eigenvalue 0 of `L` (`m_V`) and `Lᴴ` (`m_H`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroMultiplicities {
    pub m_v: usize,
    pub m_h: usize,
    pub incidence_rank: usize,
    /// Singular value threshold used for the rank.
    pub rank_tolerance: f64,
}

/// `m_V = N − rank 𝓘`, `m_H = M − rank 𝓘`, rank from the singular values of `𝓘`
/// with threshold `max(N,M) · σ_max · 2⁻⁴⁰`.
pub fn zero_multiplicities(h: &Hypergraph) -> Result<ZeroMultiplicities> {
    zero_multiplicities_with_tolerance(h, None)
}

pub fn zero_multiplicities_with_tolerance(
    h: &Hypergraph,
    rank_tolerance: Option<f64>,
) -> Result<ZeroMultiplicities> {
    let inc = h.incidence_matrix();
    let s = linalg::singular_values(&inc, "incidence matrix")?;
    let tol = rank_tolerance
        .unwrap_or_else(|| linalg::default_rank_tolerance(&inc, s.first().copied().unwrap_or(0.0)));
    let rank = linalg::rank_with(&s, tol);
    Ok(ZeroMultiplicities {
        m_v: h.num_vertices() - rank,
        m_h: h.num_hyperedges() - rank,
        incidence_rank: rank,
        rank_tolerance: tol,
    })
}

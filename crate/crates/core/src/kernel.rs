//! Kernels of the incidence matrix: harmonic vertex functions, balanced flux
//! distributions and elementary flux modes.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::function::{HyperedgeFunction, VertexFunction};
use crate::hypergraph::Hypergraph;
use crate::linalg;
use crate::operators::apply_l_unchecked;

/// Relative balancing tolerance: `‖𝓘γ‖∞ ≤ 1e−10 · max(1, ‖γ‖∞)`.
pub const BALANCE_TOLERANCE: f64 = 1e-10;
/// Relative threshold below which a flux entry is outside the support.
pub const SUPPORT_TOLERANCE: f64 = 1e-9;
/// Default cap on `M` for elementary mode enumeration.
pub const DEFAULT_MODE_LIMIT: usize = 20;

/// A hyperedge function with its support `P(γ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FluxDistribution {
    pub gamma: HyperedgeFunction,
    /// Hyperedge indices with `|γ(h)| > 1e−9 · ‖γ‖∞`, ascending.
    pub support: Vec<usize>,
}

impl FluxDistribution {
    pub fn new(gamma: HyperedgeFunction) -> Self {
        let max = gamma.values().amax();
        let support = (0..gamma.len())
            .filter(|&j| gamma[j].abs() > SUPPORT_TOLERANCE * max)
            .collect();
        FluxDistribution { gamma, support }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BalanceCheck {
    /// `‖𝓘γ‖∞`.
    pub residual: f64,
    pub balanced: bool,
    /// `γ ≡ 0`: balanced, but carries no flux.
    pub trivial: bool,
}

pub fn check_balancing(h: &Hypergraph, gamma: &HyperedgeFunction) -> Result<BalanceCheck> {
    gamma.expect_len(h.num_hyperedges())?;
    let residual = (h.incidence_matrix() * gamma.values()).amax();
    let scale = gamma.values().amax().max(1.0);
    Ok(BalanceCheck {
        residual,
        balanced: residual <= BALANCE_TOLERANCE * scale,
        trivial: gamma.is_zero(),
    })
}

/// Orthonormal basis of `ker 𝓘`; its size is `m_H`.
pub fn kernel_basis_hyperedges(h: &Hypergraph) -> Result<Vec<FluxDistribution>> {
    let (basis, _) = linalg::null_space(&h.incidence_matrix(), None, "incidence matrix")?;
    Ok(basis
        .column_iter()
        .map(|c| FluxDistribution::new(c.into_owned().into()))
        .collect())
}

/// Orthonormal basis of `ker 𝓘ᵀ`, the functions with `Lf = 0`; its size is `m_V`.
pub fn kernel_basis_vertices(h: &Hypergraph) -> Result<Vec<VertexFunction>> {
    let (basis, _) = linalg::null_space(
        &h.incidence_matrix().transpose(),
        None,
        "transposed incidence matrix",
    )?;
    basis
        .column_iter()
        .map(|c| {
            let f = c.into_owned();
            let residual = apply_l_unchecked(h, &f).amax();
            if residual > 1e-9 {
                return Err(Error::Numerical(format!(
                    "harmonic basis function has residual {residual:e}"
                )));
            }
            Ok(f.into())
        })
        .collect()
}

/// Support-minimal balanced flux vectors with at most `max_support` hyperedges,
/// one per sign pair, scaled so the first largest-magnitude entry is `+1`.
pub fn elementary_modes(h: &Hypergraph, max_support: usize) -> Result<Vec<FluxDistribution>> {
    elementary_modes_with_limit(h, max_support, DEFAULT_MODE_LIMIT)
}

/// As [`elementary_modes`] with an explicit cap on `M`.
///
/// Subsets are visited by increasing size. A subset is skipped when it contains a
/// mode already found; otherwise it carries a mode exactly when the restricted
/// incidence matrix has a one-dimensional kernel spanned by a nowhere-zero vector.
pub fn elementary_modes_with_limit(
    h: &Hypergraph,
    max_support: usize,
    limit: usize,
) -> Result<Vec<FluxDistribution>> {
    let m = h.num_hyperedges();
    if m > limit {
        return Err(Error::TooLarge { count: m, limit });
    }
    let inc = h.incidence_matrix();
    let mut modes: Vec<FluxDistribution> = Vec::new();
    for size in 1..=max_support.min(m) {
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            let covers_mode = modes
                .iter()
                .any(|mode| mode.support.iter().all(|j| subset.binary_search(j).is_ok()));
            if !covers_mode {
                if let Some(gamma) = minimal_flux(&inc, &subset, m)? {
                    modes.push(FluxDistribution::new(gamma.into()));
                }
            }
            if !next_combination(&mut subset, m) {
                break;
            }
        }
    }
    Ok(modes)
}

fn minimal_flux(inc: &DMatrix<f64>, subset: &[usize], m: usize) -> Result<Option<DVector<f64>>> {
    let sub = inc.select_columns(subset);
    let (ns, _) = linalg::null_space(&sub, None, "restricted incidence matrix")?;
    if ns.ncols() != 1 {
        return Ok(None);
    }
    let x = ns.column(0);
    let max = x.amax();
    if x.iter().any(|v| v.abs() <= SUPPORT_TOLERANCE * max) {
        return Ok(None);
    }
    let pivot = x.iter().position(|v| v.abs() >= max * (1.0 - 1e-10)).unwrap_or(0);
    let scale = x[pivot];
    let mut gamma = DVector::zeros(m);
    for (k, &j) in subset.iter().enumerate() {
        gamma[j] = x[k] / scale;
    }
    Ok(Some(gamma))
}

/// Advances to the next `k`-subset of `0..n` in lexicographic order.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

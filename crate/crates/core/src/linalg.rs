//! Dense eigen/SVD helpers on top of nalgebra with the crate's ordering and sign conventions.

use std::cmp::Ordering;

use nalgebra::{DMatrix, DVector, SymmetricEigen, SVD};

use crate::error::{Error, Result};

const MAX_SWEEPS_PER_DIM: usize = 1000;

/// Eigen-decomposition of a symmetric matrix: ascending eigenvalues, unit
/// eigenvectors as columns with the sign convention of [`normalize_sign`].
/// Exact ties are broken by lexicographic order of the eigenvectors.
pub(crate) fn symmetric_eigen(m: &DMatrix<f64>, what: &str) -> Result<(Vec<f64>, DMatrix<f64>)> {
    let n = m.nrows();
    if n == 0 {
        return Ok((Vec::new(), DMatrix::zeros(0, 0)));
    }
    if m.iter().any(|x| !x.is_finite()) {
        return Err(Error::EigensolverFailure(format!("{what} (non-finite entries)")));
    }
    let eig = SymmetricEigen::try_new(m.clone(), f64::EPSILON, MAX_SWEEPS_PER_DIM * n)
        .ok_or_else(|| Error::EigensolverFailure(what.to_owned()))?;
    let mut pairs: Vec<(f64, DVector<f64>)> = eig
        .eigenvalues
        .iter()
        .zip(eig.eigenvectors.column_iter())
        .map(|(&l, v)| {
            let mut v = v.into_owned();
            normalize_sign(&mut v);
            (l, v)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| lexicographic(&a.1, &b.1)));
    let values = pairs.iter().map(|p| p.0).collect();
    let vectors = DMatrix::from_columns(&pairs.iter().map(|p| p.1.clone()).collect::<Vec<_>>());
    Ok((values, vectors))
}

fn lexicographic(a: &DVector<f64>, b: &DVector<f64>) -> Ordering {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

/// Makes the first entry of (near-)largest magnitude positive.
pub(crate) fn normalize_sign(v: &mut DVector<f64>) {
    let max = v.amax();
    if max == 0.0 {
        return;
    }
    let lead = v
        .iter()
        .position(|x| x.abs() >= max * (1.0 - 1e-10))
        .unwrap_or(0);
    if v[lead] < 0.0 {
        v.neg_mut();
    }
}

/// Singular values (descending) of an arbitrary matrix.
pub(crate) fn singular_values(m: &DMatrix<f64>, what: &str) -> Result<Vec<f64>> {
    if m.is_empty() {
        return Ok(Vec::new());
    }
    let svd = SVD::try_new(m.clone(), false, false, f64::EPSILON, MAX_SWEEPS_PER_DIM * m.nrows().max(m.ncols()))
        .ok_or_else(|| Error::EigensolverFailure(format!("SVD of {what}")))?;
    let mut s: Vec<f64> = svd.singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    Ok(s)
}

/// Default rank threshold `max(rows, cols) · σ_max · 2⁻⁴⁰`.
pub(crate) fn default_rank_tolerance(m: &DMatrix<f64>, sigma_max: f64) -> f64 {
    m.nrows().max(m.ncols()) as f64 * sigma_max * 2f64.powi(-40)
}

pub(crate) fn rank_with(singular: &[f64], tolerance: f64) -> usize {
    singular.iter().filter(|&&s| s > tolerance).count()
}

/// Orthonormal basis of the right null space `{x : m x = 0}`, computed from the
/// SVD of `m` padded with zero rows to a square matrix so that all right
/// singular vectors are available. Returned as columns, sign-normalized.
pub(crate) fn null_space(m: &DMatrix<f64>, tolerance: Option<f64>, what: &str) -> Result<(DMatrix<f64>, f64)> {
    let (rows, cols) = m.shape();
    if cols == 0 {
        return Ok((DMatrix::zeros(0, 0), 0.0));
    }
    let padded = if rows < cols {
        let mut p = DMatrix::zeros(cols, cols);
        p.view_mut((0, 0), (rows, cols)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = SVD::try_new(padded, false, true, f64::EPSILON, MAX_SWEEPS_PER_DIM * rows.max(cols))
        .ok_or_else(|| Error::EigensolverFailure(format!("SVD of {what}")))?;
    let v_t = svd.v_t.expect("requested right singular vectors");
    let sigma_max = svd.singular_values.max();
    let tol = tolerance.unwrap_or_else(|| default_rank_tolerance(m, sigma_max));
    let mut basis: Vec<DVector<f64>> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|&(_, &s)| s <= tol)
        .map(|(k, _)| {
            let mut v = v_t.row(k).transpose();
            normalize_sign(&mut v);
            v
        })
        .collect();
    basis.sort_by(|a, b| lexicographic(b, a));
    let out = if basis.is_empty() {
        DMatrix::zeros(cols, 0)
    } else {
        DMatrix::from_columns(&basis)
    };
    Ok((out, tol))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigen_sorted_and_signed() {
        let m = DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 1.0, 2.0]);
        let (vals, vecs) = symmetric_eigen(&m, "test").unwrap();
        assert!((vals[0] - 1.0).abs() < 1e-12 && (vals[1] - 3.0).abs() < 1e-12);
        // (1,-1)/√2 has a tie in magnitude: the first entry is made positive.
        assert!(vecs[(0, 0)] > 0.0 && vecs[(1, 0)] < 0.0);
        assert!(vecs[(0, 1)] > 0.0 && vecs[(1, 1)] > 0.0);
    }

    #[test]
    fn null_space_of_wide_matrix() {
        // x + y + z = 0 has a 2-dimensional solution space.
        let m = DMatrix::from_row_slice(1, 3, &[1.0, 1.0, 1.0]);
        let (ns, _) = null_space(&m, None, "test").unwrap();
        assert_eq!(ns.ncols(), 2);
        assert!((&m * &ns).amax() < 1e-12);
        assert!((ns.transpose() * &ns - DMatrix::identity(2, 2)).amax() < 1e-12);
    }

    #[test]
    fn null_space_of_full_rank_matrix_is_empty() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, 2.0]);
        let (ns, _) = null_space(&m, None, "test").unwrap();
        assert_eq!(ns.ncols(), 0);
        assert_eq!(rank_with(&singular_values(&m, "t").unwrap(), 1e-12), 2);
    }
}

//! Real-valued functions on the vertex set and on the hyperedge set.

use nalgebra::DVector;

use crate::error::{Error, Result};

/// `f: V → ℝ`, stored in vertex order.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexFunction(DVector<f64>);

/// `γ: H → ℝ`, stored in hyperedge order for the fixed orientation `(h,+)`;
/// the value on `(h,−)` is `−γ(h)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperedgeFunction(DVector<f64>);

macro_rules! function_impl {
    ($name:ident) => {
        impl $name {
            pub fn new(values: Vec<f64>) -> Self {
                $name(DVector::from_vec(values))
            }

            pub fn zeros(len: usize) -> Self {
                $name(DVector::zeros(len))
            }

            /// Indicator of a single index.
            pub fn unit(len: usize, index: usize) -> Self {
                let mut v = DVector::zeros(len);
                v[index] = 1.0;
                $name(v)
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }

            pub fn values(&self) -> &DVector<f64> {
                &self.0
            }

            pub fn as_slice(&self) -> &[f64] {
                self.0.as_slice()
            }

            pub fn into_vector(self) -> DVector<f64> {
                self.0
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(|&x| x == 0.0)
            }

            pub(crate) fn expect_len(&self, expected: usize) -> Result<()> {
                if self.len() == expected {
                    Ok(())
                } else {
                    Err(Error::DimensionMismatch {
                        expected,
                        found: self.len(),
                    })
                }
            }
        }

        impl From<DVector<f64>> for $name {
            fn from(v: DVector<f64>) -> Self {
                $name(v)
            }
        }

        impl From<Vec<f64>> for $name {
            fn from(v: Vec<f64>) -> Self {
                $name::new(v)
            }
        }

        impl std::ops::Index<usize> for $name {
            type Output = f64;
            fn index(&self, i: usize) -> &f64 {
                &self.0[i]
            }
        }
    };
}

function_impl!(VertexFunction);
function_impl!(HyperedgeFunction);

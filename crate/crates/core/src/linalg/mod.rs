//! Dense complex vectors and matrices for small dimensions.

mod eigen;
mod matrix;
mod vector;

pub use eigen::EigenDecomposition;
pub use matrix::CMatrix;
pub use vector::CVector;

pub use num_complex::Complex64;

/// Shorthand for building a `Complex64`.
#[inline]
pub const fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

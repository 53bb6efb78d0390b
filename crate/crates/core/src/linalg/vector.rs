use std::ops::Index;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A column vector in `ℂ^d`.
///
/// Entries are always finite and the dimension is at least one.
#[derive(Debug, Clone, PartialEq)]
pub struct CVector {
    entries: Vec<Complex64>,
}

impl CVector {
    pub fn new(entries: Vec<Complex64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyDimension);
        }
        if let Some(index) = entries.iter().position(|z| !z.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { entries })
    }

    /// Build from real components.
    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        Self::new(vec![Complex64::new(0.0, 0.0); dim])
    }

    /// The computational basis vector `|k⟩`.
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        if k >= dim {
            return Err(Error::InvalidParameter(format!(
                "basis index {k} out of range for dimension {dim}"
            )));
        }
        let mut v = Self::zeros(dim)?;
        v.entries[k] = Complex64::new(1.0, 0.0);
        Ok(v)
    }

    // Internal constructor for results of arithmetic on already-valid values.
    pub(crate) fn from_vec_unchecked(entries: Vec<Complex64>) -> Self {
        debug_assert!(!entries.is_empty());
        Self { entries }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    #[inline]
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Complex64> {
        self.entries
    }

    fn check_dim(&self, other: &CVector) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    /// `⟨self|other⟩ = Σ conj(self_k)·other_k`, conjugate-linear in `self`.
    pub fn inner(&self, other: &CVector) -> Result<Complex64> {
        self.check_dim(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `‖v‖² = Σ |v_k|²`.
    pub fn norm_sqr(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, c: Complex64) -> CVector {
        Self::from_vec_unchecked(self.entries.iter().map(|z| z * c).collect())
    }

    pub fn add(&self, other: &CVector) -> Result<CVector> {
        self.check_dim(other)?;
        Ok(Self::from_vec_unchecked(
            self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn sub(&self, other: &CVector) -> Result<CVector> {
        self.check_dim(other)?;
        Ok(Self::from_vec_unchecked(
            self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        ))
    }

    /// `v / ‖v‖`, or an error for the zero vector.
    pub fn normalized(&self) -> Result<CVector> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(self.scale(Complex64::new(1.0 / n, 0.0)))
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &CVector) -> Result<f64> {
        self.check_dim(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

impl Index<usize> for CVector {
    type Output = Complex64;

    fn index(&self, k: usize) -> &Complex64 {
        &self.entries[k]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c64;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn inner_follows_bra_ket_convention() {
        let e0 = CVector::basis(2, 0).unwrap();
        let e1 = CVector::basis(2, 1).unwrap();
        assert_eq!(e0.inner(&e1).unwrap(), c64(0.0, 0.0));

        let plus = CVector::from_real(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2]).unwrap();
        assert!((plus.inner(&plus).unwrap() - c64(1.0, 0.0)).norm() < 1e-15);

        let i1 = CVector::new(vec![c64(0.0, 0.0), c64(0.0, 1.0)]).unwrap();
        assert_eq!(i1.inner(&e0).unwrap(), c64(0.0, 0.0));
        let i0 = CVector::new(vec![c64(0.0, 1.0), c64(0.0, 0.0)]).unwrap();
        assert_eq!(i0.inner(&e0).unwrap(), c64(0.0, -1.0));
    }

    #[test]
    fn norms() {
        assert_eq!(CVector::zeros(3).unwrap().norm(), 0.0);
        let v = CVector::new(vec![c64(3.0, 0.0), c64(0.0, 4.0)]).unwrap();
        assert_eq!(v.norm(), 5.0);
        let plus = CVector::from_real(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2]).unwrap();
        assert!((plus.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(CVector::new(vec![]), Err(Error::EmptyDimension));
        assert_eq!(
            CVector::from_real(&[1.0, f64::NAN]),
            Err(Error::NonFinite { index: 1 })
        );
        let a = CVector::zeros(2).unwrap();
        let b = CVector::zeros(3).unwrap();
        assert!(matches!(a.inner(&b), Err(Error::DimensionMismatch { .. })));
        assert_eq!(a.normalized(), Err(Error::ZeroVector));
    }
}

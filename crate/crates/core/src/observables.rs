//! Hermitian observables, normalized pure states, and the statistics of an
//! observable measured in a state.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{c64, CMatrix, CVector};
use crate::tolerance;

/// A Hermitian operator on `ℂ^d`, validated at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    matrix: CMatrix,
    label: String,
}

impl Observable {
    pub fn new(matrix: CMatrix, label: impl Into<String>) -> Result<Self> {
        Self::with_tolerance(matrix, label, tolerance::STRUCTURAL)
    }

    pub fn with_tolerance(matrix: CMatrix, label: impl Into<String>, tol: f64) -> Result<Self> {
        let defect = matrix.hermiticity_defect();
        if defect > tol {
            return Err(Error::NotHermitian {
                defect,
                tolerance: tol,
            });
        }
        Ok(Self {
            matrix,
            label: label.into(),
        })
    }

    // Closed operations (sums, real scalings, unitary conjugation) of
    // Hermitian matrices stay Hermitian up to rounding.
    fn derived(matrix: CMatrix, label: String) -> Self {
        Self { matrix, label }
    }

    pub fn pauli_x() -> Self {
        let m = CMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        Self::derived(m, "X".into())
    }

    pub fn pauli_y() -> Self {
        let m = CMatrix::from_rows(&[vec![c64(0.0, 0.0), c64(0.0, -1.0)], vec![c64(0.0, 1.0), c64(0.0, 0.0)]])
            .unwrap();
        Self::derived(m, "Y".into())
    }

    pub fn pauli_z() -> Self {
        Self::derived(CMatrix::diagonal(&[1.0, -1.0]).unwrap(), "Z".into())
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Ok(Self::derived(CMatrix::identity(dim)?, "I".into()))
    }

    /// Look up a Pauli operator by name (`I`, `X`, `Y`, `Z`, case-insensitive).
    pub fn pauli(name: &str) -> Result<Self> {
        match name.to_ascii_uppercase().as_str() {
            "I" => Self::identity(2),
            "X" => Ok(Self::pauli_x()),
            "Y" => Ok(Self::pauli_y()),
            "Z" => Ok(Self::pauli_z()),
            other => Err(Error::InvalidParameter(format!("unknown Pauli operator {other:?}"))),
        }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// The observable `self − other`.
    pub fn difference(&self, other: &Observable) -> Result<Observable> {
        let m = self.matrix.sub(&other.matrix)?;
        Ok(Self::derived(m, format!("{}-{}", self.label, other.label)))
    }

    pub fn sum(&self, other: &Observable) -> Result<Observable> {
        let m = self.matrix.add(&other.matrix)?;
        Ok(Self::derived(m, format!("{}+{}", self.label, other.label)))
    }

    pub fn scaled(&self, c: f64) -> Observable {
        Self::derived(self.matrix.scale(c64(c, 0.0)), format!("{c}*{}", self.label))
    }

    /// `self + c·𝕀`.
    pub fn shifted(&self, c: f64) -> Observable {
        Self::derived(self.matrix.shift_diagonal(c64(c, 0.0)), format!("{}+{c}", self.label))
    }

    /// `U·F·U†` for a unitary `U`.
    pub fn conjugate_by(&self, unitary: &CMatrix) -> Result<Observable> {
        let m = self.matrix.conjugate_by(unitary)?;
        Self::with_tolerance(m, self.label.clone(), tolerance::STRUCTURAL * (1.0 + self.matrix.frobenius_norm()))
    }

    fn check_dim(&self, state: &State) -> Result<()> {
        if self.dim() != state.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: state.dim(),
            });
        }
        Ok(())
    }

    /// `⟨φ|F|φ⟩`, which is real for Hermitian `F`.
    ///
    /// The imaginary residue is checked against the structural tolerance
    /// scaled by `max(1, ‖F‖_F)`; exceeding it signals corrupted input.
    pub fn expectation(&self, state: &State) -> Result<f64> {
        let z = self.raw_expectation(state)?;
        let tol = tolerance::STRUCTURAL * self.matrix.frobenius_norm().max(1.0);
        if z.im.abs() > tol {
            return Err(Error::ImaginaryResidue {
                residue: z.im.abs(),
                tolerance: tol,
            });
        }
        Ok(z.re)
    }

    fn raw_expectation(&self, state: &State) -> Result<Complex64> {
        self.check_dim(state)?;
        state.vector.inner(&self.matrix.matvec(&state.vector)?)
    }

    /// `δφF|φ⟩ = (F − ⟨F⟩φ·𝕀)|φ⟩`.
    pub fn deviation_vector(&self, state: &State) -> Result<DeviationVector> {
        let mean = self.expectation(state)?;
        let applied = self.matrix.matvec(&state.vector)?;
        let vector = applied.sub(&state.vector.scale(c64(mean, 0.0)))?;
        Ok(DeviationVector {
            vector,
            observable: self.label.clone(),
        })
    }

    /// `(ΔφF)² = ‖δφF|φ⟩‖²`.
    pub fn variance(&self, state: &State) -> Result<f64> {
        Ok(self.deviation_vector(state)?.vector.norm_sqr())
    }

    /// `⟨F²⟩φ − ⟨F⟩φ²`; the cross-check route for [`Observable::variance`].
    pub fn variance_by_moments(&self, state: &State) -> Result<f64> {
        let f_phi = self.matrix.matvec(&state.vector)?;
        let second = state.vector.inner(&self.matrix.matvec(&f_phi)?)?.re;
        let mean = self.expectation(state)?;
        Ok(second - mean * mean)
    }

    /// `ΔφF`, computed as the norm of the deviation vector.
    pub fn std_dev(&self, state: &State) -> Result<f64> {
        Ok(self.deviation_vector(state)?.vector.norm())
    }
}

/// A normalized vector `|φ⟩ ∈ ℂ^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct State {
    vector: CVector,
}

impl State {
    /// Accept `vector` only if its norm is within `1e-10` of one.
    pub fn new(vector: CVector) -> Result<Self> {
        Self::with_tolerance(vector, tolerance::STRUCTURAL)
    }

    pub fn with_tolerance(vector: CVector, tol: f64) -> Result<Self> {
        let norm = vector.norm();
        if (norm - 1.0).abs() > tol {
            return Err(Error::NotNormalized { norm, tolerance: tol });
        }
        Ok(Self { vector })
    }

    /// Rescale `vector` to unit norm.
    pub fn normalize(vector: CVector) -> Result<Self> {
        Ok(Self {
            vector: vector.normalized()?,
        })
    }

    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        Ok(Self {
            vector: CVector::basis(dim, k)?,
        })
    }

    /// `(1, 1)/√2`.
    pub fn plus() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            vector: CVector::from_real(&[h, h]).unwrap(),
        }
    }

    pub fn vector(&self) -> &CVector {
        &self.vector
    }

    pub fn dim(&self) -> usize {
        self.vector.dim()
    }

    /// `U|φ⟩`.
    pub fn transform(&self, unitary: &CMatrix) -> Result<State> {
        Self::normalize(unitary.matvec(&self.vector)?)
    }
}

/// The vector `δφF|φ⟩` together with the label of `F`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeviationVector {
    pub vector: CVector,
    pub observable: String,
}

impl DeviationVector {
    pub fn norm(&self) -> f64 {
        self.vector.norm()
    }
}

fn check_pair(a: &Observable, b: &Observable, state: &State) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    a.check_dim(state)
}

/// Quantum covariance `𝒞φ(A,B) = ⟨φ|δφA δφB|φ⟩`.
///
/// Evaluated as the inner product of the two deviation vectors, which is
/// the same quantity because `δφA` is Hermitian.
pub fn covariance(a: &Observable, b: &Observable, state: &State) -> Result<Complex64> {
    check_pair(a, b, state)?;
    let da = a.deviation_vector(state)?;
    let db = b.deviation_vector(state)?;
    da.vector.inner(&db.vector)
}

/// `⟨AB⟩φ − ⟨A⟩φ⟨B⟩φ`; cross-check route for [`covariance`].
pub fn covariance_by_moments(a: &Observable, b: &Observable, state: &State) -> Result<Complex64> {
    check_pair(a, b, state)?;
    let ab = state.vector.inner(&a.matrix.matvec(&b.matrix.matvec(&state.vector)?)?)?;
    Ok(ab - c64(a.expectation(state)? * b.expectation(state)?, 0.0))
}

/// `⟨φ|[A,B]|φ⟩`, purely imaginary for Hermitian `A`, `B`.
pub fn commutator_expectation(a: &Observable, b: &Observable, state: &State) -> Result<Complex64> {
    check_pair(a, b, state)?;
    let phi = &state.vector;
    let ab = phi.inner(&a.matrix.matvec(&b.matrix.matvec(phi)?)?)?;
    let ba = phi.inner(&b.matrix.matvec(&a.matrix.matvec(phi)?)?)?;
    Ok(ab - ba)
}

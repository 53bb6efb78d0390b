//! Seeded generators for random and structured `(A, B, φ)` instances.
//!
//! Every generator is a pure function of its seed and parameters.

mod rng;

pub use rng::{Rng, SplitMix64};

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c64, CMatrix, CVector};
use crate::observables::{Observable, State};

/// Range of the amplitudes `a`, `b` in [`orthogonal_deviation_instance`].
pub const AMPLITUDE_RANGE: (f64, f64) = (0.1, 10.0);

/// How an instance was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Provenance {
    HaarGue,
    Eigenstate,
    OrthoDeviation,
    Explicit,
}

impl Provenance {
    pub const RANDOM: [Provenance; 3] = [Provenance::HaarGue, Provenance::Eigenstate, Provenance::OrthoDeviation];

    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::HaarGue => "HAAR_GUE",
            Provenance::Eigenstate => "EIGENSTATE",
            Provenance::OrthoDeviation => "ORTHO_DEVIATION",
            Provenance::Explicit => "EXPLICIT",
        }
    }

    /// Smallest dimension the generator accepts.
    pub fn min_dim(self) -> usize {
        match self {
            Provenance::OrthoDeviation => 3,
            Provenance::Explicit => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Provenance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let wanted = s.trim().to_ascii_uppercase().replace('-', "_");
        [
            Provenance::HaarGue,
            Provenance::Eigenstate,
            Provenance::OrthoDeviation,
            Provenance::Explicit,
        ]
        .into_iter()
        .find(|p| p.as_str() == wanted)
        .ok_or_else(|| Error::InvalidParameter(format!("unknown provenance {s:?}")))
    }
}

/// A triple `(A, B, φ)` with its origin.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceSpec {
    pub a: Observable,
    pub b: Observable,
    pub phi: State,
    pub provenance: Provenance,
    /// Absent for explicit instances.
    pub seed: Option<u64>,
}

impl InstanceSpec {
    /// An explicit instance; all members must share one dimension.
    pub fn explicit(a: Observable, b: Observable, phi: State) -> Result<Self> {
        for found in [b.dim(), phi.dim()] {
            if found != a.dim() {
                return Err(Error::DimensionMismatch {
                    expected: a.dim(),
                    found,
                });
            }
        }
        Ok(Self {
            a,
            b,
            phi,
            provenance: Provenance::Explicit,
            seed: None,
        })
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    /// Rebuild a generated instance from its provenance and seed.
    pub fn regenerate(provenance: Provenance, dim: usize, seed: u64) -> Result<Self> {
        match provenance {
            Provenance::HaarGue => haar_gue_instance(dim, seed),
            Provenance::Eigenstate => eigenstate_instance(dim, seed),
            Provenance::OrthoDeviation => orthogonal_deviation_instance(dim, seed),
            Provenance::Explicit => Err(Error::InvalidParameter(
                "explicit instances carry no seed to regenerate from".into(),
            )),
        }
    }

    /// The same instance expressed in a rotated basis: `(UAU†, UBU†, U|φ⟩)`.
    pub fn rotated(&self, unitary: &CMatrix) -> Result<Self> {
        Ok(Self {
            a: self.a.conjugate_by(unitary)?,
            b: self.b.conjugate_by(unitary)?,
            phi: self.phi.transform(unitary)?,
            provenance: self.provenance,
            seed: self.seed,
        })
    }
}

fn check_dim(dim: usize, min: usize) -> Result<()> {
    if dim < min {
        return Err(Error::InvalidParameter(format!("dimension {dim} is below the minimum {min}")));
    }
    Ok(())
}

fn gaussian_vector(rng: &mut Rng, dim: usize) -> Vec<Complex64> {
    (0..dim)
        .map(|_| {
            let (re, im) = rng.normal_pair();
            c64(re, im)
        })
        .collect()
}

fn haar_state_from(rng: &mut Rng, dim: usize) -> Result<State> {
    State::normalize(CVector::new(gaussian_vector(rng, dim))?)
}

/// A unitarily invariant random pure state.
pub fn haar_state(dim: usize, seed: u64) -> Result<State> {
    check_dim(dim, 2)?;
    haar_state_from(&mut Rng::new(seed), dim)
}

fn gue_from(rng: &mut Rng, dim: usize, scale: f64, label: &str) -> Result<Observable> {
    // Circular complex normals with E|g|² = scale².
    let s = scale * std::f64::consts::FRAC_1_SQRT_2;
    let g: Vec<Complex64> = gaussian_vector(rng, dim * dim).into_iter().map(|z| z * s).collect();
    let mut h = Vec::with_capacity(dim * dim);
    for j in 0..dim {
        for k in 0..dim {
            h.push(if j == k {
                c64(g[j * dim + j].re, 0.0)
            } else {
                (g[j * dim + k] + g[k * dim + j].conj()) * 0.5
            });
        }
    }
    Observable::new(CMatrix::new(dim, h)?, label)
}

/// `H = (G + G†)/2` with `G` filled by circular complex normals of standard deviation `scale`.
pub fn gue_hermitian(dim: usize, seed: u64, scale: f64) -> Result<Observable> {
    check_dim(dim, 2)?;
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::InvalidParameter(format!("scale must be positive, got {scale}")));
    }
    gue_from(&mut Rng::new(seed), dim, scale, "H")
}

fn unitary_from(rng: &mut Rng, dim: usize) -> Result<CMatrix> {
    let mut columns: Vec<CVector> = Vec::with_capacity(dim);
    while columns.len() < dim {
        let mut v = CVector::new(gaussian_vector(rng, dim))?;
        // Two passes of modified Gram–Schmidt.
        for _ in 0..2 {
            for q in &columns {
                let overlap = q.inner(&v)?;
                v = v.sub(&q.scale(overlap))?;
            }
        }
        let norm = v.norm();
        if norm < 1e-8 {
            continue;
        }
        let v = v.scale(c64(1.0 / norm, 0.0));
        columns.push(fix_phase(v));
    }
    CMatrix::from_columns(&columns)
}

// Rotate so the first non-negligible component is real and positive.
fn fix_phase(v: CVector) -> CVector {
    match v.entries().iter().find(|z| z.norm() > 1e-12) {
        Some(z) => {
            let phase = z.conj() / z.norm();
            v.scale(phase)
        }
        None => v,
    }
}

/// A random unitary from Gram–Schmidt on a complex Gaussian matrix.
pub fn random_unitary(dim: usize, seed: u64) -> Result<CMatrix> {
    check_dim(dim, 1)?;
    unitary_from(&mut Rng::new(seed), dim)
}

/// `A`, `B` independent GUE (scale 1) and `φ` Haar-random.
pub fn haar_gue_instance(dim: usize, seed: u64) -> Result<InstanceSpec> {
    check_dim(dim, 2)?;
    let mut rng = Rng::new(seed);
    let a = gue_from(&mut rng, dim, 1.0, "A")?;
    let b = gue_from(&mut rng, dim, 1.0, "B")?;
    let phi = haar_state_from(&mut rng, dim)?;
    Ok(InstanceSpec {
        a,
        b,
        phi,
        provenance: Provenance::HaarGue,
        seed: Some(seed),
    })
}

/// `φ` is an eigenvector of a random `A`, so `ΔφA = 0` up to rounding.
pub fn eigenstate_instance(dim: usize, seed: u64) -> Result<InstanceSpec> {
    check_dim(dim, 2)?;
    let mut rng = Rng::new(seed);
    let a = gue_from(&mut rng, dim, 1.0, "A")?;
    let b = gue_from(&mut rng, dim, 1.0, "B")?;
    let k = rng.below(dim as u64) as usize;
    let eig = a.matrix().eig_hermitian()?;
    let phi = State::normalize(eig.eigenvectors()[k].clone())?;
    Ok(InstanceSpec {
        a,
        b,
        phi,
        provenance: Provenance::Eigenstate,
        seed: Some(seed),
    })
}

/// `A = a(|u0⟩⟨u1| + |u1⟩⟨u0|)`, `B = b(|u0⟩⟨u2| + |u2⟩⟨u0|)`, `φ = u0` for the
/// first three columns `u0, u1, u2` of `basis`.
///
/// Then `δA|φ⟩ = a·u1 ⟂ δB|φ⟩ = b·u2`, `ΔA = a` and `ΔB = b`.
pub fn orthogonal_deviation_from(basis: &CMatrix, a: f64, b: f64) -> Result<InstanceSpec> {
    check_dim(basis.dim(), 3)?;
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::InvalidParameter("amplitudes must be positive".into()));
    }
    let (u0, u1, u2) = (basis.column(0), basis.column(1), basis.column(2));
    let sym = |x: &CVector, y: &CVector, amp: f64| -> Result<CMatrix> {
        Ok(CMatrix::outer(x, y)?.add(&CMatrix::outer(y, x)?)?.scale(c64(amp, 0.0)))
    };
    let a_op = Observable::new(sym(&u0, &u1, a)?, "A")?;
    let b_op = Observable::new(sym(&u0, &u2, b)?, "B")?;
    let phi = State::normalize(u0)?;
    InstanceSpec::explicit(a_op, b_op, phi)
}

/// Random-basis version of [`orthogonal_deviation_from`] with `a`, `b`
/// log-uniform in [`AMPLITUDE_RANGE`].
pub fn orthogonal_deviation_instance(dim: usize, seed: u64) -> Result<InstanceSpec> {
    check_dim(dim, 3)?;
    let mut rng = Rng::new(seed);
    let u = unitary_from(&mut rng, dim)?;
    let (lo, hi) = AMPLITUDE_RANGE;
    let a = rng.log_uniform(lo, hi);
    let b = rng.log_uniform(lo, hi);
    let mut spec = orthogonal_deviation_from(&u, a, b)?;
    spec.provenance = Provenance::OrthoDeviation;
    spec.seed = Some(seed);
    Ok(spec)
}

/// The qutrit instance `A = |0⟩⟨1| + |1⟩⟨0|`, `B = |0⟩⟨2| + |2⟩⟨0|`, `φ = |0⟩`.
pub fn qutrit_instance() -> InstanceSpec {
    orthogonal_deviation_from(&CMatrix::identity(3).unwrap(), 1.0, 1.0).unwrap()
}

/// `(cos(θ/2), e^{iφ} sin(θ/2))`.
pub fn bloch_state(theta: f64, phi_angle: f64) -> State {
    let (s, c) = (0.5 * theta).sin_cos();
    let v = CVector::new(vec![c64(c, 0.0), Complex64::from_polar(s, phi_angle)])
        .expect("finite angles give finite amplitudes");
    State::normalize(v).expect("Bloch vectors have unit norm")
}

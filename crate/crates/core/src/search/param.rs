//! Coordinates on pure states modulo global phase.
//!
//! A state in `ℂ^d` is described by `d − 1` polar angles followed by
//! `d − 1` relative phases:
//!
//! ```text
//! |c_0| = cos(θ_1/2)
//! |c_k| = sin(θ_1/2)···sin(θ_k/2)·cos(θ_{k+1}/2)      0 < k < d−1
//! |c_{d−1}| = sin(θ_1/2)···sin(θ_{d−1}/2)
//! arg c_0 = 0,  arg c_k = φ_k
//! ```
//!
//! At `d = 2` this is the Bloch parameterization `(cos(θ/2), e^{iφ} sin(θ/2))`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::CVector;
use crate::observables::State;

/// Number of real parameters for a state in dimension `dim`.
pub fn param_count(dim: usize) -> usize {
    2 * dim.saturating_sub(1)
}

/// Inverse of [`param_count`]; errors unless `len` is a positive even number.
pub fn dim_for_params(len: usize) -> Result<usize> {
    if len == 0 || !len.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "expected 2·dim − 2 parameters (a positive even count), got {len}"
        )));
    }
    Ok(len / 2 + 1)
}

pub fn parameterize_state(params: &[f64]) -> Result<State> {
    let dim = dim_for_params(params.len())?;
    if let Some(i) = params.iter().position(|x| !x.is_finite()) {
        return Err(Error::InvalidParameter(format!("parameter {i} is not finite")));
    }
    let (angles, phases) = params.split_at(dim - 1);
    let mut entries = Vec::with_capacity(dim);
    let mut tail = 1.0;
    for k in 0..dim {
        let magnitude = if k + 1 < dim {
            let (s, c) = (0.5 * angles[k]).sin_cos();
            let m = tail * c;
            tail *= s;
            m
        } else {
            tail
        };
        let phase = if k == 0 { 0.0 } else { phases[k - 1] };
        entries.push(Complex64::from_polar(magnitude, phase));
    }
    State::normalize(CVector::new(entries)?)
}

/// Parameters reproducing `state` up to global phase.
pub fn state_to_params(state: &State) -> Vec<f64> {
    let v = state.vector();
    let dim = v.dim();
    let reference = v[0].arg();
    let magnitudes: Vec<f64> = v.entries().iter().map(|z| z.norm()).collect();
    let mut params = Vec::with_capacity(param_count(dim));
    for k in 0..dim.saturating_sub(1) {
        let tail = magnitudes[k + 1..].iter().map(|m| m * m).sum::<f64>().sqrt();
        params.push(2.0 * tail.atan2(magnitudes[k]));
    }
    for k in 1..dim {
        params.push(v[k].arg() - reference);
    }
    params
}

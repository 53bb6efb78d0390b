use num_complex::Complex64;

use super::matrix::CMatrix;
use super::vector::CVector;
use crate::error::{Error, Result};
use crate::tolerance;

const MAX_SWEEPS: usize = 64;

/// Eigenpairs of a Hermitian matrix, eigenvalues ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    eigenvalues: Vec<f64>,
    eigenvectors: Vec<CVector>,
}

impl EigenDecomposition {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Orthonormal eigenvectors; `eigenvectors()[k]` belongs to `eigenvalues()[k]`.
    pub fn eigenvectors(&self) -> &[CVector] {
        &self.eigenvectors
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `Σ λ_k |v_k⟩⟨v_k|`.
    pub fn reconstruct(&self) -> CMatrix {
        let d = self.dim();
        let mut m = CMatrix::zeros(d).expect("decomposition has positive dimension");
        for (lambda, v) in self.eigenvalues.iter().zip(&self.eigenvectors) {
            for j in 0..d {
                for k in 0..d {
                    let value = m.get(j, k) + v[j] * v[k].conj() * *lambda;
                    m.set(j, k, value);
                }
            }
        }
        m
    }
}

impl CMatrix {
    /// Hermitian eigendecomposition with the default structural tolerance.
    pub fn eig_hermitian(&self) -> Result<EigenDecomposition> {
        self.eig_hermitian_with_tolerance(tolerance::STRUCTURAL)
    }

    /// Cyclic complex Jacobi rotations.
    ///
    /// Each rotation first removes the phase of the pivot `a_pq` and then
    /// applies the real two-sided Jacobi rotation that zeroes it. Sweeps
    /// visit pivots in row order, so the result is a deterministic function
    /// of the input bits.
    pub fn eig_hermitian_with_tolerance(&self, hermiticity_tol: f64) -> Result<EigenDecomposition> {
        let defect = self.hermiticity_defect();
        if defect > hermiticity_tol {
            return Err(Error::NotHermitian {
                defect,
                tolerance: hermiticity_tol,
            });
        }
        let d = self.dim();
        // Work on the exactly Hermitian part.
        let mut a = self.add(&self.adjoint())?.scale(Complex64::new(0.5, 0.0));
        for k in 0..d {
            a.set(k, k, Complex64::new(a.get(k, k).re, 0.0));
        }
        let mut w = CMatrix::identity(d)?;
        let scale = a.frobenius_norm();
        let threshold = d as f64 * f64::EPSILON * scale;

        let mut converged = false;
        for _ in 0..MAX_SWEEPS {
            if off_diagonal_norm(&a) <= threshold {
                converged = true;
                break;
            }
            for p in 0..d {
                for q in (p + 1)..d {
                    rotate(&mut a, &mut w, p, q);
                }
            }
        }
        if !converged && off_diagonal_norm(&a) > threshold {
            return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
        }

        let mut order: Vec<usize> = (0..d).collect();
        order.sort_by(|&i, &j| a.get(i, i).re.total_cmp(&a.get(j, j).re));
        Ok(EigenDecomposition {
            eigenvalues: order.iter().map(|&k| a.get(k, k).re).collect(),
            eigenvectors: order.iter().map(|&k| w.column(k)).collect(),
        })
    }
}

fn off_diagonal_norm(a: &CMatrix) -> f64 {
    let d = a.dim();
    let mut sum = 0.0;
    for j in 0..d {
        for k in 0..d {
            if j != k {
                sum += a.get(j, k).norm_sqr();
            }
        }
    }
    sum.sqrt()
}

fn rotate(a: &mut CMatrix, w: &mut CMatrix, p: usize, q: usize) {
    let apq = a.get(p, q);
    let magnitude = apq.norm();
    if magnitude == 0.0 {
        return;
    }
    let phase = apq / magnitude;
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;

    let theta = (aqq - app) / (2.0 * magnitude);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        let t = 1.0 / (theta.abs() + (theta * theta + 1.0).sqrt());
        if theta < 0.0 {
            -t
        } else {
            t
        }
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // V = diag(1, conj(phase)) · [[c, s], [-s, c]] restricted to (p, q).
    let v_pp = Complex64::new(c, 0.0);
    let v_pq = Complex64::new(s, 0.0);
    let v_qp = -phase.conj() * s;
    let v_qq = phase.conj() * c;

    let d = a.dim();
    for k in 0..d {
        let akp = a.get(k, p);
        let akq = a.get(k, q);
        a.set(k, p, akp * v_pp + akq * v_qp);
        a.set(k, q, akp * v_pq + akq * v_qq);
    }
    for k in 0..d {
        let apk = a.get(p, k);
        let aqk = a.get(q, k);
        a.set(p, k, v_pp.conj() * apk + v_qp.conj() * aqk);
        a.set(q, k, v_pq.conj() * apk + v_qq.conj() * aqk);
    }
    a.set(p, q, Complex64::new(0.0, 0.0));
    a.set(q, p, Complex64::new(0.0, 0.0));
    a.set(p, p, Complex64::new(app - t * magnitude, 0.0));
    a.set(q, q, Complex64::new(aqq + t * magnitude, 0.0));

    for k in 0..d {
        let wkp = w.get(k, p);
        let wkq = w.get(k, q);
        w.set(k, p, wkp * v_pp + wkq * v_qp);
        w.set(k, q, wkp * v_pq + wkq * v_qq);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c64;

    fn assert_eigenpairs(m: &CMatrix, eig: &EigenDecomposition) {
        let scale = 1.0 + m.frobenius_norm();
        for (lambda, v) in eig.eigenvalues().iter().zip(eig.eigenvectors()) {
            let mv = m.matvec(v).unwrap();
            let residual = mv.sub(&v.scale(c64(*lambda, 0.0))).unwrap().norm();
            assert!(residual <= 1e-10 * scale, "residual {residual}");
        }
        for (j, vj) in eig.eigenvectors().iter().enumerate() {
            for (k, vk) in eig.eigenvectors().iter().enumerate() {
                let expected = if j == k { 1.0 } else { 0.0 };
                assert!((vj.inner(vk).unwrap() - c64(expected, 0.0)).norm() <= 1e-10);
            }
        }
    }

    #[test]
    fn sigma_z_diagonal_read_off() {
        let z = CMatrix::diagonal(&[1.0, -1.0]).unwrap();
        let eig = z.eig_hermitian().unwrap();
        assert_eq!(eig.eigenvalues(), &[-1.0, 1.0]);
        assert_eigenpairs(&z, &eig);
    }

    #[test]
    fn identity_degenerate_spectrum() {
        let id = CMatrix::identity(3).unwrap();
        let eig = id.eig_hermitian().unwrap();
        assert_eq!(eig.eigenvalues(), &[1.0, 1.0, 1.0]);
        assert!(eig.reconstruct().max_abs_diff(&id).unwrap() < 1e-14);
    }

    #[test]
    fn sigma_x_eigenvectors_up_to_phase() {
        let x = CMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        let eig = x.eig_hermitian().unwrap();
        let values = eig.eigenvalues();
        assert!((values[0] + 1.0).abs() < 1e-15 && (values[1] - 1.0).abs() < 1e-15);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let minus = CVector::from_real(&[h, -h]).unwrap();
        let plus = CVector::from_real(&[h, h]).unwrap();
        assert!((eig.eigenvectors()[0].inner(&minus).unwrap().norm() - 1.0).abs() < 1e-14);
        assert!((eig.eigenvectors()[1].inner(&plus).unwrap().norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn complex_hermitian_3x3() {
        let m = CMatrix::from_rows(&[
            vec![c64(2.0, 0.0), c64(1.0, -1.0), c64(0.0, 0.5)],
            vec![c64(1.0, 1.0), c64(-1.0, 0.0), c64(0.3, 0.0)],
            vec![c64(0.0, -0.5), c64(0.3, 0.0), c64(0.5, 0.0)],
        ])
        .unwrap();
        let eig = m.eig_hermitian().unwrap();
        assert_eigenpairs(&m, &eig);
        // trace is preserved
        let trace: f64 = eig.eigenvalues().iter().sum();
        assert!((trace - 1.5).abs() < 1e-13);
        assert!(eig.eigenvalues().windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(eig, m.eig_hermitian().unwrap());
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = CMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert!(matches!(m.eig_hermitian(), Err(Error::NotHermitian { .. })));
    }
}

use proptest::prelude::*;

use revunc::inequalities::{self, Checker, PairStatistics, Relation};
use revunc::linalg::{c64, CMatrix, CVector, Complex64};
use revunc::observables::{covariance, covariance_by_moments, Observable, State};
use revunc::sampling::{self, InstanceSpec, Provenance};

fn complex() -> impl Strategy<Value = Complex64> {
    (-5.0..5.0f64, -5.0..5.0f64).prop_map(|(re, im)| c64(re, im))
}

fn cvec(dim: usize) -> impl Strategy<Value = CVector> {
    prop::collection::vec(complex(), dim).prop_map(|v| CVector::new(v).unwrap())
}

fn vector_pair() -> impl Strategy<Value = (CVector, CVector)> {
    (2usize..=16).prop_flat_map(|d| (cvec(d), cvec(d)))
}

fn hermitian(dim: usize) -> impl Strategy<Value = CMatrix> {
    prop::collection::vec(complex(), dim * dim).prop_map(move |g| {
        let g = CMatrix::new(dim, g).unwrap();
        g.add(&g.adjoint()).unwrap().scale(c64(0.5, 0.0))
    })
}

fn state(dim: usize) -> impl Strategy<Value = State> {
    cvec(dim)
        .prop_filter("nonzero", |v| v.norm() > 1e-3)
        .prop_map(|v| State::normalize(v).unwrap())
}

fn triple() -> impl Strategy<Value = (Observable, Observable, State)> {
    (2usize..=8).prop_flat_map(|d| {
        (hermitian(d), hermitian(d), state(d)).prop_map(|(a, b, s)| {
            (
                Observable::new(a, "A").unwrap(),
                Observable::new(b, "B").unwrap(),
                s,
            )
        })
    })
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn cauchy_schwarz_and_conjugate_symmetry((v, w) in vector_pair()) {
        let vw = v.inner(&w).unwrap();
        prop_assert!(vw.norm() <= v.norm() * w.norm() + 1e-12 * (1.0 + v.norm() * w.norm()));
        let wv = w.inner(&v).unwrap();
        prop_assert!((vw - wv.conj()).norm() <= 1e-14 * (1.0 + vw.norm()));
    }

    #[test]
    fn norm_homogeneity(v in (2usize..=16).prop_flat_map(cvec), c in complex()) {
        let lhs = v.scale(c).norm();
        let rhs = c.norm() * v.norm();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs));
    }

    #[test]
    fn eigen_reconstruction(m in (1usize..=16).prop_flat_map(hermitian)) {
        let eig = m.eig_hermitian().unwrap();
        let err = eig.reconstruct().sub(&m).unwrap().frobenius_norm();
        prop_assert!(err <= 1e-9 * (1.0 + m.frobenius_norm()), "err {}", err);
        let scale = 1.0 + m.frobenius_norm();
        for (lambda, v) in eig.eigenvalues().iter().zip(eig.eigenvectors()) {
            let r = m.matvec(v).unwrap().sub(&v.scale(c64(*lambda, 0.0))).unwrap().norm();
            prop_assert!(r <= 1e-10 * scale);
        }
        for (j, vj) in eig.eigenvectors().iter().enumerate() {
            for (k, vk) in eig.eigenvectors().iter().enumerate() {
                let delta = if j == k { 1.0 } else { 0.0 };
                prop_assert!((vj.inner(vk).unwrap() - c64(delta, 0.0)).norm() <= 1e-10);
            }
        }
    }

    #[test]
    fn variance_two_routes(m in (2usize..=16).prop_flat_map(|d| (hermitian(d), state(d))), shift in -20.0..20.0f64) {
        let (f, phi) = m;
        let f = Observable::new(f, "F").unwrap();
        let by_norm = f.variance(&phi).unwrap();
        let by_moments = f.variance_by_moments(&phi).unwrap();
        let scale = 1.0 + f.matrix().frobenius_norm().powi(2);
        prop_assert!((by_norm - by_moments).abs() <= 1e-10 * scale);
        let dev = f.deviation_vector(&phi).unwrap();
        prop_assert!(phi.vector().inner(&dev.vector).unwrap().norm() <= 1e-10 * scale.sqrt());
        let shifted = f.shifted(shift).variance(&phi).unwrap();
        prop_assert!((shifted - by_norm).abs() <= 1e-10 * (scale + shift * shift));
    }

    #[test]
    fn covariance_routes_and_symmetry((a, b, phi) in triple()) {
        let c_ab = covariance(&a, &b, &phi).unwrap();
        let c_ba = covariance(&b, &a, &phi).unwrap();
        prop_assert!((c_ab - c_ba.conj()).norm() <= 1e-12 * (1.0 + c_ab.norm()));
        let moments = covariance_by_moments(&a, &b, &phi).unwrap();
        let scale = 1.0 + a.matrix().frobenius_norm() * b.matrix().frobenius_norm();
        prop_assert!((c_ab - moments).norm() <= 1e-10 * scale);
        let stats = PairStatistics::compute(&a, &b, &phi).unwrap();
        prop_assert_eq!(stats.cov(), c_ab.re);
    }

    #[test]
    fn theorem_chain((p1, p2) in vector_pair()) {
        let scale = 1.0 + p1.norm_sqr() + p2.norm_sqr();
        prop_assert!(inequalities::identity_id1_residual(&p1, &p2).unwrap() <= 1e-10 * scale);
        let in0 = inequalities::bound_in0(&p1, &p2).unwrap();
        let in1 = inequalities::bound_in1(&p1, &p2).unwrap();
        prop_assert!(in0.holds && in1.holds);
        prop_assert!(in0.rhs.unwrap() <= in1.rhs.unwrap() + 1e-10 * scale);
        prop_assert!((in0.gap.unwrap() - in0.aux("gap_crosscheck").unwrap()).abs() <= 1e-10 * scale);
        prop_assert!(inequalities::cauchy_schwarz(&p1, &p2).unwrap().holds);
        let dw = inequalities::dunkl_williams(&p1, &p2).unwrap();
        prop_assert!(dw.defined && dw.holds);
    }

    #[test]
    fn in0_saturation_characterization((p1, p2) in vector_pair(), alpha in 0.2..3.1f64) {
        let z = p1.inner(&p2).unwrap();
        prop_assume!(z.norm() > 1e-3);
        // Aligning the phase makes ⟨ψ1|ψ2⟩ real positive: equality.
        let aligned = p2.scale(z.conj() / z.norm());
        let w = p1.inner(&aligned).unwrap();
        prop_assert!(w.re >= 0.0 && w.im.abs() <= 1e-12 * (1.0 + w.norm()));
        let scale = 1.0 + p1.norm_sqr() + p2.norm_sqr();
        let r = inequalities::bound_in0(&p1, &aligned).unwrap();
        prop_assert!(r.gap.unwrap().abs() <= 1e-10 * scale);
        // Any other phase leaves a strictly positive gap 2|z|(1 − cos α).
        let turned = aligned.scale(Complex64::from_polar(1.0, alpha));
        let r = inequalities::bound_in0(&p1, &turned).unwrap();
        let expected = 2.0 * z.norm() * (1.0 - alpha.cos());
        prop_assert!(r.gap.unwrap() > 1e-10 * scale);
        prop_assert!((r.gap.unwrap() - expected).abs() <= 1e-10 * scale);
    }

    #[test]
    fn reverse_relations_match_theorem_on_deviation_vectors((a, b, phi) in triple()) {
        let stats = PairStatistics::compute(&a, &b, &phi).unwrap();
        let checker = Checker::default();
        let pairs = [
            (checker.reverse_covariance_from(&stats), checker.bound_in0(&stats.deviation_a.vector, &stats.deviation_b.vector).unwrap()),
            (checker.reverse_product_from(&stats), checker.bound_in1(&stats.deviation_a.vector, &stats.deviation_b.vector).unwrap()),
        ];
        for (rev, thm) in pairs {
            prop_assert!(rev.holds && thm.holds);
            let tol = 1e-10 * rev.scale;
            prop_assert!((rev.lhs.unwrap() - thm.lhs.unwrap()).abs() <= tol);
            prop_assert!((rev.rhs.unwrap() - thm.rhs.unwrap()).abs() <= tol);
            prop_assert!((rev.gap.unwrap() - thm.gap.unwrap()).abs() <= tol);
        }
        // the vector identity δA|φ⟩ − δB|φ⟩ = δ(A−B)|φ⟩
        let diff = stats.deviation_a.vector.sub(&stats.deviation_b.vector).unwrap().norm_sqr();
        prop_assert!((diff - stats.var_a_minus_b).abs() <= 1e-10 * stats.variance_sum().max(1.0) * 10.0);
        let dw = checker.reverse_dw_from(&stats);
        if dw.defined {
            prop_assert!(dw.holds, "{:?}", dw);
        }
        prop_assert!(checker.robertson_lower_from(&stats).holds);
    }

    #[test]
    fn reverse_relations_scale_covariantly((a, b, phi) in triple(), c in prop_oneof![0.1..10.0f64, -10.0..-0.1f64]) {
        let c2 = c * c;
        for relation in [Relation::RevCov, Relation::RevProd] {
            let checker = Checker::default();
            let base = checker.observable_relation(relation, &PairStatistics::compute(&a, &b, &phi).unwrap()).unwrap();
            let scaled = checker
                .observable_relation(relation, &PairStatistics::compute(&a.scaled(c), &b.scaled(c), &phi).unwrap())
                .unwrap();
            prop_assert!(close(scaled.lhs.unwrap(), c2 * base.lhs.unwrap(), 1e-10));
            prop_assert!(close(scaled.rhs.unwrap(), c2 * base.rhs.unwrap(), 1e-10));
            prop_assert_eq!(scaled.holds, base.holds);
        }
    }

    #[test]
    fn uncorrelated_collapse(dim in 3usize..=8, seed in any::<u64>()) {
        let inst = sampling::orthogonal_deviation_instance(dim, seed).unwrap();
        let s = PairStatistics::compute(&inst.a, &inst.b, &inst.phi).unwrap();
        let checker = Checker::default();
        prop_assert!(s.covariance.norm() <= 1e-10);
        prop_assert!(close(s.var_a_minus_b, s.var_a + s.var_b, 1e-10));
        prop_assert!(close(s.var_a_plus_b, s.var_a + s.var_b, 1e-10));
        let cov = checker.reverse_covariance_from(&s);
        prop_assert!((cov.lhs.unwrap() - cov.rhs.unwrap()).abs() <= 1e-10 * cov.scale);
        let prod = checker.reverse_product_from(&s);
        prop_assert!((prod.gap.unwrap() - 2.0 * s.std_a * s.std_b).abs() <= 1e-10 * prod.scale);
        let dw = checker.reverse_dw_from(&s);
        prop_assert!(dw.defined);
        let reduced = (s.std_a - s.std_b).powi(2);
        prop_assert!((dw.gap.unwrap() - reduced).abs() <= 1e-10 * dw.scale);
    }

    #[test]
    fn eigenvector_finiteness(dim in 2usize..=8, seed in any::<u64>()) {
        let inst = sampling::eigenstate_instance(dim, seed).unwrap();
        let s = PairStatistics::compute(&inst.a, &inst.b, &inst.phi).unwrap();
        let checker = Checker::default();
        prop_assert!(!checker.reverse_dw_from(&s).defined);
        for r in [checker.reverse_covariance_from(&s), checker.reverse_product_from(&s)] {
            prop_assert!(r.defined && r.holds);
            prop_assert!(r.lhs.unwrap().is_finite() && r.rhs.unwrap().is_finite());
        }
    }

    #[test]
    fn generators_are_deterministic(dim in 3usize..=8, seed in any::<u64>()) {
        for p in Provenance::RANDOM {
            prop_assert_eq!(InstanceSpec::regenerate(p, dim, seed).unwrap(), InstanceSpec::regenerate(p, dim, seed).unwrap());
        }
    }

    #[test]
    fn basis_rotation_invariance(dim in 2usize..=6, seed in any::<u64>()) {
        let inst = sampling::haar_gue_instance(dim, seed).unwrap();
        let u = sampling::random_unitary(dim, seed ^ 0x5555).unwrap();
        let rotated = inst.rotated(&u).unwrap();
        let checker = Checker::default();
        let before = checker.evaluate_all(&PairStatistics::compute(&inst.a, &inst.b, &inst.phi).unwrap()).unwrap();
        let after = checker.evaluate_all(&PairStatistics::compute(&rotated.a, &rotated.b, &rotated.phi).unwrap()).unwrap();
        for (x, y) in before.iter().zip(&after) {
            prop_assert_eq!(x.defined, y.defined);
            prop_assert_eq!(x.holds, y.holds);
            for (p, q) in [(x.lhs, y.lhs), (x.rhs, y.rhs), (x.gap, y.gap)] {
                if let (Some(p), Some(q)) = (p, q) {
                    prop_assert!((p - q).abs() <= 1e-9 * x.scale, "{} {} vs {}", x.relation, p, q);
                }
            }
            for (k, v) in &x.aux {
                prop_assert!((v - y.aux[k]).abs() <= 1e-9 * x.scale, "{} aux {}", x.relation, k);
            }
        }
    }
}

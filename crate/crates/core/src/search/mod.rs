//! Gap minimization over pure states for fixed observables.
//!
//! The search looks for states where a reverse relation is saturated.
//! It reports empirical minima; nothing here certifies global optimality.

mod nelder_mead;
mod param;

pub use nelder_mead::{Minimum, NelderMead, CONTRACTION, EXPANSION, REFLECTION, SHRINK};
pub use param::{dim_for_params, param_count, parameterize_state, state_to_params};

use crate::error::{Error, Result};
use crate::inequalities::{Checker, PairStatistics, Relation};
use crate::observables::{Observable, State};
use crate::sampling::{haar_state, SplitMix64};

/// Objective value where the Dunkl–Williams relation is undefined.
pub const UNDEFINED_PENALTY: f64 = 1e6;

/// Edge length (radians) of each restart's initial simplex.
pub const INITIAL_STEP: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    pub relation: Relation,
    pub max_iterations: usize,
    pub restarts: usize,
    /// Simplex diameter at which a restart counts as converged.
    pub convergence_tol: f64,
    pub seed: u64,
    pub record_trace: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            relation: Relation::RevCov,
            max_iterations: 2000,
            restarts: 8,
            convergence_tol: 1e-9,
            seed: 0,
            record_trace: false,
        }
    }
}

impl SearchConfig {
    pub fn for_relation(relation: Relation) -> Self {
        Self {
            relation,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.relation.is_reverse_bound() {
            return Err(Error::InvalidParameter(format!(
                "{} is not an upper bound on the variance sum; only REV_COV, REV_PROD and REV_DW can be minimized",
                self.relation
            )));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidParameter("max_iterations must be at least 1".into()));
        }
        if self.restarts == 0 {
            return Err(Error::InvalidParameter("restarts must be at least 1".into()));
        }
        if self.convergence_tol.is_nan() || self.convergence_tol <= 0.0 {
            return Err(Error::InvalidParameter("convergence_tol must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub best_state: State,
    /// `rhs − lhs` at `best_state`, or [`UNDEFINED_PENALTY`] if `defined` is false.
    pub best_gap: f64,
    /// Whether the relation is defined at `best_state`.
    pub defined: bool,
    pub evaluations: usize,
    pub converged: bool,
    /// Best gap so far after each simplex iteration, counted across restarts.
    pub trace: Option<Vec<(usize, f64)>>,
}

/// `rhs − lhs` of `relation` at `state`; `None` when undefined.
pub fn gap_at(checker: &Checker, relation: Relation, a: &Observable, b: &Observable, state: &State) -> Result<Option<f64>> {
    let stats = PairStatistics::compute(a, b, state)?;
    Ok(checker.observable_relation(relation, &stats)?.gap)
}

/// Gap of a reverse relation at `parameterize_state(params)`, with
/// [`UNDEFINED_PENALTY`] where the relation is undefined.
pub fn gap_objective(relation: Relation, a: &Observable, b: &Observable, params: &[f64]) -> Result<f64> {
    if !relation.is_reverse_bound() {
        return Err(Error::InvalidParameter(format!("{relation} is not a reverse uncertainty bound")));
    }
    let state = parameterize_state(params)?;
    Ok(gap_at(&Checker::default(), relation, a, b, &state)?.unwrap_or(UNDEFINED_PENALTY))
}

/// Nelder–Mead descent from `restarts` Haar-random starting states.
///
/// Restart seeds are drawn from a SplitMix64 stream keyed by
/// `config.seed`. Ties between restarts go to the lowest index.
pub fn minimize_gap(a: &Observable, b: &Observable, config: &SearchConfig) -> Result<SearchResult> {
    config.validate()?;
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let dim = a.dim();
    if dim < 2 {
        return Err(Error::InvalidParameter("search needs dimension at least 2".into()));
    }
    let checker = Checker::default();
    let solver = NelderMead {
        max_iterations: config.max_iterations,
        diameter_tol: config.convergence_tol,
        initial_step: INITIAL_STEP,
    };
    let objective = |params: &[f64]| -> f64 {
        parameterize_state(params)
            .and_then(|s| gap_at(&checker, config.relation, a, b, &s))
            .ok()
            .flatten()
            .unwrap_or(UNDEFINED_PENALTY)
    };

    let mut seeds = SplitMix64::new(config.seed);
    let mut best: Option<Minimum> = None;
    let mut evaluations = 0;
    let mut trace = config.record_trace.then(Vec::new);
    let mut iteration = 0;
    for _ in 0..config.restarts {
        let start = state_to_params(&haar_state(dim, seeds.next_u64())?);
        let m = solver.minimize(objective, &start);
        evaluations += m.evaluations;
        let prior = best.as_ref().map_or(f64::INFINITY, |b| b.value);
        if let Some(trace) = trace.as_mut() {
            let mut running = prior;
            for value in &m.history {
                running = running.min(*value);
                iteration += 1;
                trace.push((iteration, running));
            }
        }
        if m.value < prior {
            best = Some(m);
        }
    }
    let best = best.expect("at least one restart");
    let best_state = parameterize_state(&best.point)?;
    let gap = gap_at(&checker, config.relation, a, b, &best_state)?;
    Ok(SearchResult {
        best_gap: gap.unwrap_or(UNDEFINED_PENALTY),
        defined: gap.is_some(),
        best_state,
        evaluations,
        converged: best.converged,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::qutrit_instance;

    #[test]
    fn objective_examples() {
        let (x, z) = (Observable::pauli_x(), Observable::pauli_z());
        assert!(gap_objective(Relation::RevCov, &x, &z, &[0.0, 0.0]).unwrap().abs() < 1e-15);
        for params in [[0.3, 1.0], [2.0, -0.4], [1.5, 3.0]] {
            assert!(gap_objective(Relation::RevCov, &x, &x, &params).unwrap().abs() < 1e-12);
        }
        let q = qutrit_instance();
        let g = gap_objective(Relation::RevProd, &q.a, &q.b, &[0.0, 0.0, 0.0, 0.0]).unwrap();
        assert!((g - 2.0).abs() < 1e-12);
        assert_eq!(gap_objective(Relation::RevDw, &x, &z, &[0.0, 0.0]).unwrap(), UNDEFINED_PENALTY);
        assert!(gap_objective(Relation::Robertson, &x, &z, &[0.0, 0.0]).is_err());
        assert!(gap_objective(Relation::RevCov, &x, &z, &[0.0, 0.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn config_validation() {
        let mut c = SearchConfig::default();
        assert!(c.validate().is_ok());
        c.restarts = 0;
        assert!(c.validate().is_err());
        let c = SearchConfig {
            convergence_tol: 0.0,
            ..SearchConfig::default()
        };
        assert!(c.validate().is_err());
        assert!(SearchConfig::for_relation(Relation::In0).validate().is_err());
    }

    #[test]
    fn identical_observables_have_zero_gap() {
        let x = Observable::pauli_x();
        for relation in [Relation::RevCov, Relation::RevProd] {
            let r = minimize_gap(&x, &x, &SearchConfig::for_relation(relation)).unwrap();
            assert!(r.best_gap.abs() <= 1e-10, "{r:?}");
        }
        // 0/0 everywhere for the Dunkl–Williams form
        let r = minimize_gap(&x, &x, &SearchConfig::for_relation(Relation::RevDw)).unwrap();
        assert!(!r.defined);
        assert_eq!(r.best_gap, UNDEFINED_PENALTY);
    }

    #[test]
    fn trace_and_reproducibility() {
        let (z, y) = (Observable::pauli_z(), Observable::pauli_y());
        let config = SearchConfig {
            relation: Relation::RevProd,
            record_trace: true,
            seed: 17,
            ..SearchConfig::default()
        };
        let r = minimize_gap(&z, &y, &config).unwrap();
        let trace = r.trace.as_ref().unwrap();
        assert!(trace.windows(2).all(|w| w[1].1 <= w[0].1 && w[1].0 == w[0].0 + 1));
        assert_eq!(r, minimize_gap(&z, &y, &config).unwrap());
        let again = gap_at(&Checker::default(), Relation::RevProd, &z, &y, &r.best_state).unwrap().unwrap();
        assert!((again - r.best_gap).abs() <= 1e-12);
    }
}

//! The two degenerate cases: uncorrelated deviation vectors and an eigenstate.

use std::fmt::Write as _;

use revunc::inequalities::{Checker, EvalRecord, PairStatistics, Relation};
use revunc::sampling::qutrit_instance;
use revunc::{Observable, State};

use crate::error::Result;
use crate::format::{opt6, sig6};

#[derive(Debug, Clone, PartialEq)]
pub struct DemoReport {
    pub uncorrelated: PairStatistics,
    pub uncorrelated_records: Vec<EvalRecord>,
    pub eigenstate_records: Vec<EvalRecord>,
    pub text: String,
}

const REVERSE: [Relation; 3] = [Relation::RevCov, Relation::RevProd, Relation::RevDw];

pub fn run_demo() -> Result<DemoReport> {
    let checker = Checker::default();
    let mut text = String::new();

    let q = qutrit_instance();
    let s = PairStatistics::compute(&q.a, &q.b, &q.phi)?;
    let records: Vec<EvalRecord> = REVERSE
        .iter()
        .map(|&r| checker.observable_relation(r, &s))
        .collect::<revunc::Result<_>>()?;
    let _ = writeln!(text, "uncorrelated qutrit: A = |0><1| + |1><0|, B = |0><2| + |2><0|, phi = |0>");
    let _ = writeln!(
        text,
        "  dA = {}  dB = {}  C(A,B) = {}  d(A-B)^2 = {}  dA^2 + dB^2 = {}",
        sig6(s.std_a),
        sig6(s.std_b),
        sig6(s.covariance.norm()),
        sig6(s.var_a_minus_b),
        sig6(s.variance_sum())
    );
    let reduced = [
        format!("dA^2 + dB^2 <= dA^2 + dB^2   ({} <= {})", sig6(s.variance_sum()), sig6(s.variance_sum())),
        format!("0 <= dA*dB   (0 <= {})", sig6(s.std_a * s.std_b)),
        format!("0 <= (dA - dB)^2   (0 <= {})", sig6((s.std_a - s.std_b).powi(2))),
    ];
    for (r, form) in records.iter().zip(&reduced) {
        let _ = writeln!(
            text,
            "  {:<8} lhs = {:<10} rhs = {:<10} slack = {:<10} reduces to {form}",
            r.relation.as_str(),
            opt6(r.lhs),
            opt6(r.rhs),
            opt6(r.gap)
        );
    }

    let (a, b, phi) = (Observable::pauli_x(), Observable::pauli_z(), State::basis(2, 0)?);
    let s = PairStatistics::compute(&a, &b, &phi)?;
    let eigen: Vec<EvalRecord> = REVERSE
        .iter()
        .map(|&r| checker.observable_relation(r, &s))
        .collect::<revunc::Result<_>>()?;
    let _ = writeln!(text);
    let _ = writeln!(text, "eigenstate qubit: A = X, B = Z, phi = |0> (eigenvector of Z, dB = {})", sig6(s.std_b));
    for r in &eigen {
        if r.defined {
            let _ = writeln!(
                text,
                "  {:<8} lhs = {:<10} rhs = {:<10} finite",
                r.relation.as_str(),
                opt6(r.lhs),
                opt6(r.rhs)
            );
        } else {
            let _ = writeln!(text, "  {:<8} UNDEFINED (dA*dB = 0)", r.relation.as_str());
        }
    }
    Ok(DemoReport {
        uncorrelated: PairStatistics::compute(&q.a, &q.b, &q.phi)?,
        uncorrelated_records: records,
        eigenstate_records: eigen,
        text,
    })
}

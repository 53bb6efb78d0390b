//! Evaluate every relation on one instance.

use std::fmt::Write as _;

use revunc::inequalities::{BoundKind, Checker, EvalRecord, PairStatistics, Relation};
use revunc::{InstanceSpec, Provenance, Tolerances};
use serde::Serialize;

use crate::error::Result;
use crate::format::{opt6, sig6};
use crate::instance::{ClaimedRecord, LoadedInstance};

/// Agreement required between a recorded value and its recomputation,
/// relative to the record's scale.
pub const CLAIM_AGREEMENT: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DerivedScalars {
    pub mean_a: f64,
    pub mean_b: f64,
    pub std_a: f64,
    pub std_b: f64,
    pub std_a_minus_b: f64,
    pub var_a_minus_b: f64,
    pub covariance_re: f64,
    pub covariance_im: f64,
    /// `covφ(A,B) = Re 𝒞φ(A,B)`.
    pub cov: f64,
    /// `½|⟨[A,B]⟩φ|`.
    pub robertson_lower: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClaimCheck {
    pub claim: ClaimedRecord,
    /// The recorded lhs/rhs themselves satisfy the relation.
    pub claimed_holds: bool,
    /// The recorded values agree with recomputation.
    pub matches: bool,
}

impl ClaimCheck {
    pub fn ok(&self) -> bool {
        self.claimed_holds && self.matches
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub dim: usize,
    pub provenance: Provenance,
    pub seed: Option<u64>,
    pub records: Vec<EvalRecord>,
    pub scalars: DerivedScalars,
    pub claims: Vec<ClaimCheck>,
    pub all_hold: bool,
}

pub fn verify_spec(spec: &InstanceSpec, claims: &[ClaimedRecord], tolerances: Tolerances) -> Result<VerifyReport> {
    let checker = Checker::new(tolerances);
    let stats = PairStatistics::compute(&spec.a, &spec.b, &spec.phi)?;
    let records = checker.evaluate_all(&stats)?;
    let scalars = DerivedScalars {
        mean_a: spec.a.expectation(&spec.phi)?,
        mean_b: spec.b.expectation(&spec.phi)?,
        std_a: stats.std_a,
        std_b: stats.std_b,
        std_a_minus_b: stats.var_a_minus_b.sqrt(),
        var_a_minus_b: stats.var_a_minus_b,
        covariance_re: stats.covariance.re,
        covariance_im: stats.covariance.im,
        cov: stats.cov(),
        robertson_lower: 0.5 * stats.commutator.norm(),
    };
    let claims: Vec<ClaimCheck> = claims
        .iter()
        .map(|claim| {
            let actual = records.iter().find(|r| r.relation == claim.relation).expect("all relations evaluated");
            check_claim(claim, actual, tolerances.holds)
        })
        .collect();
    let all_hold = records.iter().all(|r| !r.is_violation()) && claims.iter().all(ClaimCheck::ok);
    Ok(VerifyReport {
        dim: spec.dim(),
        provenance: spec.provenance,
        seed: spec.seed,
        records,
        scalars,
        claims,
        all_hold,
    })
}

pub fn verify(instance: &LoadedInstance, tolerances: Tolerances) -> Result<VerifyReport> {
    verify_spec(&instance.spec, &instance.claims, tolerances)
}

fn check_claim(claim: &ClaimedRecord, actual: &EvalRecord, holds_tol: f64) -> ClaimCheck {
    let gap = match claim.relation.kind() {
        BoundKind::Upper => claim.rhs - claim.lhs,
        BoundKind::Lower => claim.lhs - claim.rhs,
        BoundKind::Identity => -(claim.lhs - claim.rhs).abs(),
    };
    let claimed_holds = gap >= -holds_tol * actual.scale;
    let agree = |recorded: f64, computed: Option<f64>| {
        computed.is_some_and(|c| (recorded - c).abs() <= CLAIM_AGREEMENT * actual.scale)
    };
    ClaimCheck {
        claim: claim.clone(),
        claimed_holds,
        matches: agree(claim.lhs, actual.lhs) && agree(claim.rhs, actual.rhs),
    }
}

pub fn status(record: &EvalRecord, equality_tol: f64) -> &'static str {
    match (record.defined, record.holds, record.gap) {
        (false, _, _) => "UNDEFINED",
        (true, false, _) => "VIOLATED",
        (true, true, Some(g)) if g.abs() <= equality_tol => "EQUALITY",
        _ => "HOLDS",
    }
}

fn describe(relation: Relation) -> &'static str {
    match relation {
        Relation::Id1 => "|p1|^2+|p2|^2 = |p1-p2|^2 + 2Re<p1|p2>",
        Relation::In0 => "|p1|^2+|p2|^2 <= |p1-p2|^2 + 2|<p1|p2>|",
        Relation::In1 => "|p1|^2+|p2|^2 <= |p1-p2|^2 + 2|p1||p2|",
        Relation::Cs => "|<p1|p2>| <= |p1||p2|",
        Relation::Dw => "|p1-p2| >= (|p1|+|p2|)/2 * |u1-u2|",
        Relation::RevCov => "dA^2+dB^2 <= d(A-B)^2 + 2|C(A,B)|",
        Relation::RevProd => "dA^2+dB^2 <= d(A-B)^2 + 2 dA dB",
        Relation::RevDw => "dA^2+dB^2 <= 2d(A-B)^2/(1-cov/dAdB) - 2dAdB",
        Relation::Robertson => "dA dB >= |<[A,B]>|/2",
    }
}

pub fn render_table(report: &VerifyReport, equality_tol: f64) -> String {
    let mut out = String::new();
    let seed = report.seed.map_or_else(|| "-".into(), |s| s.to_string());
    let _ = writeln!(out, "instance: dim={} provenance={} seed={seed}", report.dim, report.provenance);
    let _ = writeln!(out, "vector relations use p1 = dA|phi>, p2 = dB|phi>");
    let _ = writeln!(out);
    let _ = writeln!(out, "{:<10} {:>13} {:>13} {:>13}  {:<9}  relation", "name", "lhs", "rhs", "gap", "status");
    for r in &report.records {
        let _ = writeln!(
            out,
            "{:<10} {:>13} {:>13} {:>13}  {:<9}  {}",
            r.relation.as_str(),
            opt6(r.lhs),
            opt6(r.rhs),
            opt6(r.gap),
            status(r, equality_tol),
            describe(r.relation)
        );
    }
    let s = &report.scalars;
    let _ = writeln!(out);
    let _ = writeln!(out, "<A> = {}   <B> = {}", sig6(s.mean_a), sig6(s.mean_b));
    let _ = writeln!(out, "dA = {}   dB = {}   d(A-B) = {}", sig6(s.std_a), sig6(s.std_b), sig6(s.std_a_minus_b));
    let _ = writeln!(out, "C(A,B) = {} + {}i   cov = {}", sig6(s.covariance_re), sig6(s.covariance_im), sig6(s.cov));
    let _ = writeln!(out, "Robertson lower bound |<[A,B]>|/2 = {}", sig6(s.robertson_lower));
    for c in &report.claims {
        let verdict = match (c.claimed_holds, c.matches) {
            (true, true) => "ok",
            (false, _) => "VIOLATION CLAIMED",
            (true, false) => "MISMATCH",
        };
        let _ = writeln!(
            out,
            "recorded {}: lhs={} rhs={} -> {verdict}",
            c.claim.relation,
            sig6(c.claim.lhs),
            sig6(c.claim.rhs)
        );
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "{}", if report.all_hold { "all defined relations hold" } else { "VIOLATION DETECTED" });
    out
}

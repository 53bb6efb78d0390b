//! Monte-Carlo sweeps over generated instances.
//!
//! Trial `i` of every `(dim, provenance)` group uses seed `base + i`.
//! Trials run in parallel, but rows are assembled in trial order, so the
//! output bytes do not depend on the thread count.

use std::fmt::Write as _;
use std::io::Write;

use rayon::prelude::*;
use revunc::inequalities::{Checker, PairStatistics, Relation};
use revunc::{InstanceSpec, Provenance, Tolerances};
use serde::Serialize;

use crate::error::{HarnessError, Result};
use crate::format::opt6;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub dims: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub relations: Vec<Relation>,
    pub provenances: Vec<Provenance>,
    pub tolerances: Tolerances,
    /// Worker threads; `None` uses the rayon default.
    pub threads: Option<usize>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            dims: vec![2, 3, 4],
            trials: 1000,
            seed: 0,
            relations: Relation::ALL.to_vec(),
            provenances: Provenance::RANDOM.to_vec(),
            tolerances: Tolerances::default(),
            threads: None,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.dims.is_empty() || self.dims.iter().any(|&d| d < 2) {
            return Err(HarnessError::Config("--dims needs dimensions of at least 2".into()));
        }
        if self.trials == 0 {
            return Err(HarnessError::Config("--trials must be positive".into()));
        }
        if self.relations.is_empty() {
            return Err(HarnessError::Config("--relations is empty".into()));
        }
        if self.provenances.is_empty() || self.provenances.contains(&Provenance::Explicit) {
            return Err(HarnessError::Config(
                "--provenance takes HAAR_GUE, EIGENSTATE or ORTHO_DEVIATION".into(),
            ));
        }
        if self.threads == Some(0) {
            return Err(HarnessError::Config("--threads must be positive".into()));
        }
        Ok(())
    }
}

/// One CSV row: one relation evaluated on one trial.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub trial_seed: u64,
    pub dim: usize,
    pub provenance: Provenance,
    pub relation: Relation,
    pub defined: bool,
    pub holds: bool,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    pub gap: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Quantiles {
    pub min: f64,
    pub median: f64,
    pub p99: f64,
    pub max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tally {
    pub dim: usize,
    pub provenance: Provenance,
    pub relation: Relation,
    pub trials: usize,
    pub holds_count: usize,
    pub violations: usize,
    pub undefined_count: usize,
    pub equality_count: usize,
    /// Most negative raw gap among defined trials.
    pub worst_gap: Option<f64>,
    pub gap_quantiles: Option<Quantiles>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfigEcho {
    pub dims: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub relations: Vec<Relation>,
    pub provenances: Vec<Provenance>,
    pub holds_tolerance: f64,
    pub undefined_tolerance: f64,
    pub equality_tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SkippedGroup {
    pub dim: usize,
    pub provenance: Provenance,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub config: ConfigEcho,
    pub skipped: Vec<SkippedGroup>,
    pub tallies: Vec<Tally>,
    pub total_violations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutput {
    pub rows: Vec<SweepRow>,
    pub report: SweepReport,
}

fn evaluate_trial(
    checker: &Checker,
    relations: &[Relation],
    provenance: Provenance,
    dim: usize,
    seed: u64,
) -> Result<Vec<SweepRow>> {
    let spec = InstanceSpec::regenerate(provenance, dim, seed)?;
    let stats = PairStatistics::compute(&spec.a, &spec.b, &spec.phi)?;
    relations
        .iter()
        .map(|&relation| {
            let r = checker.evaluate(relation, &stats)?;
            Ok(SweepRow {
                trial_seed: seed,
                dim,
                provenance,
                relation,
                defined: r.defined,
                holds: r.holds,
                lhs: r.lhs,
                rhs: r.rhs,
                gap: r.gap,
            })
        })
        .collect()
}

fn nearest_rank(sorted: &[f64], q: f64) -> f64 {
    let rank = (q * sorted.len() as f64).ceil() as usize;
    sorted[rank.clamp(1, sorted.len()) - 1]
}

fn tally(dim: usize, provenance: Provenance, relation: Relation, rows: &[&SweepRow], equality_tol: f64) -> Tally {
    let mut gaps: Vec<f64> = rows.iter().filter_map(|r| r.gap).collect();
    gaps.sort_by(f64::total_cmp);
    let holds_count = rows.iter().filter(|r| r.holds).count();
    let undefined_count = rows.iter().filter(|r| !r.defined).count();
    Tally {
        dim,
        provenance,
        relation,
        trials: rows.len(),
        holds_count,
        violations: rows.len() - holds_count - undefined_count,
        undefined_count,
        equality_count: gaps.iter().filter(|g| g.abs() <= equality_tol).count(),
        worst_gap: gaps.first().copied(),
        gap_quantiles: (!gaps.is_empty()).then(|| Quantiles {
            min: gaps[0],
            median: nearest_rank(&gaps, 0.5),
            p99: nearest_rank(&gaps, 0.99),
            max: gaps[gaps.len() - 1],
        }),
    }
}

pub fn run_sweep(config: &SweepConfig) -> Result<SweepOutput> {
    config.validate()?;
    let pool = {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(n) = config.threads {
            builder = builder.num_threads(n);
        }
        builder
            .build()
            .map_err(|e| HarnessError::Config(format!("thread pool: {e}")))?
    };
    let checker = Checker::new(config.tolerances);

    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    let mut tallies = Vec::new();
    for &dim in &config.dims {
        for &provenance in &config.provenances {
            if dim < provenance.min_dim() {
                skipped.push(SkippedGroup {
                    dim,
                    provenance,
                    reason: format!("{provenance} needs dimension at least {}", provenance.min_dim()),
                });
                continue;
            }
            let group: Vec<Vec<SweepRow>> = pool.install(|| {
                (0..config.trials)
                    .into_par_iter()
                    .map(|i| {
                        let seed = config.seed.wrapping_add(i as u64);
                        evaluate_trial(&checker, &config.relations, provenance, dim, seed)
                    })
                    .collect::<Result<_>>()
            })?;
            let group: Vec<SweepRow> = group.into_iter().flatten().collect();
            for &relation in &config.relations {
                let selected: Vec<&SweepRow> = group.iter().filter(|r| r.relation == relation).collect();
                tallies.push(tally(dim, provenance, relation, &selected, config.tolerances.equality));
            }
            rows.extend(group);
        }
    }
    let total_violations = tallies.iter().map(|t| t.violations).sum();
    let report = SweepReport {
        config: ConfigEcho {
            dims: config.dims.clone(),
            trials: config.trials,
            seed: config.seed,
            relations: config.relations.clone(),
            provenances: config.provenances.clone(),
            holds_tolerance: config.tolerances.holds,
            undefined_tolerance: config.tolerances.undefined,
            equality_tolerance: config.tolerances.equality,
        },
        skipped,
        tallies,
        total_violations,
    };
    Ok(SweepOutput { rows, report })
}

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush().map_err(|e| HarnessError::io("<csv>", e))?;
    Ok(())
}

pub fn csv_string(rows: &[SweepRow]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

pub fn json_string(report: &SweepReport) -> Result<String> {
    let mut text = serde_json::to_string_pretty(report)?;
    text.push('\n');
    Ok(text)
}

pub fn render_summary(report: &SweepReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>3} {:<15} {:<10} {:>7} {:>7} {:>5} {:>7} {:>7} {:>13} {:>13}",
        "dim", "provenance", "relation", "trials", "holds", "viol", "undef", "equal", "worst_gap", "median_gap"
    );
    for t in &report.tallies {
        let _ = writeln!(
            out,
            "{:>3} {:<15} {:<10} {:>7} {:>7} {:>5} {:>7} {:>7} {:>13} {:>13}",
            t.dim,
            t.provenance.as_str(),
            t.relation.as_str(),
            t.trials,
            t.holds_count,
            t.violations,
            t.undefined_count,
            t.equality_count,
            opt6(t.worst_gap),
            opt6(t.gap_quantiles.as_ref().map(|q| q.median)),
        );
    }
    for s in &report.skipped {
        let _ = writeln!(out, "skipped dim={} {}: {}", s.dim, s.provenance, s.reason);
    }
    let _ = writeln!(out, "total violations: {}", report.total_violations);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SweepConfig {
        SweepConfig {
            dims: vec![2, 3],
            trials: 50,
            seed: 3,
            ..SweepConfig::default()
        }
    }

    #[test]
    fn tallies_are_consistent() {
        let out = run_sweep(&small()).unwrap();
        assert_eq!(out.report.total_violations, 0);
        // ORTHO_DEVIATION is skipped at d = 2
        assert_eq!(out.report.skipped.len(), 1);
        assert_eq!(out.report.tallies.len(), 5 * Relation::ALL.len());
        for t in &out.report.tallies {
            assert_eq!(t.trials, t.holds_count + t.violations + t.undefined_count);
            if let Some(q) = &t.gap_quantiles {
                assert!(q.min <= q.median && q.median <= q.p99 && q.p99 <= q.max);
            }
        }
        assert_eq!(out.rows.len(), 5 * 50 * Relation::ALL.len());
    }

    #[test]
    fn csv_header_and_empty_fields() {
        let config = SweepConfig {
            dims: vec![2],
            trials: 2,
            provenances: vec![Provenance::Eigenstate],
            relations: vec![Relation::RevDw],
            ..SweepConfig::default()
        };
        let text = csv_string(&run_sweep(&config).unwrap().rows).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("trial_seed,dim,provenance,relation,defined,holds,lhs,rhs,gap"));
        assert_eq!(lines.next(), Some("0,2,EIGENSTATE,REV_DW,false,false,,,"));
    }

    #[test]
    fn rejects_bad_config() {
        let mut c = small();
        c.dims = vec![1];
        assert!(run_sweep(&c).is_err());
        let mut c = small();
        c.provenances = vec![Provenance::Explicit];
        assert!(run_sweep(&c).is_err());
        let mut c = small();
        c.trials = 0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn nearest_rank_quantiles() {
        let v: Vec<f64> = (1..=100).map(f64::from).collect();
        assert_eq!(nearest_rank(&v, 0.5), 50.0);
        assert_eq!(nearest_rank(&v, 0.99), 99.0);
        assert_eq!(nearest_rank(&[4.0], 0.99), 4.0);
    }
}

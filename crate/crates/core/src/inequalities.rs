//! Every identity and inequality of the norm-sum theorem and the reverse
//! uncertainty relations, evaluated as explicit `lhs`/`rhs` records.
//!
//! Gaps are oriented so that `gap ≥ 0` means the relation holds: `rhs − lhs`
//! for upper bounds, `lhs − rhs` for lower bounds (Dunkl–Williams,
//! Robertson), and `−|lhs − rhs|` for the identity. A record is `holds`
//! when `gap ≥ −tol·scale`, where `scale` is the natural magnitude of the
//! quantities compared.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c64, CVector};
use crate::observables::{commutator_expectation, DeviationVector, Observable, State};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Relation {
    /// `‖ψ1‖² + ‖ψ2‖² = ‖ψ1 − ψ2‖² + 2 Re⟨ψ1|ψ2⟩`
    Id1,
    /// `‖ψ1‖² + ‖ψ2‖² ≤ ‖ψ1 − ψ2‖² + 2|⟨ψ1|ψ2⟩|`
    In0,
    /// `‖ψ1‖² + ‖ψ2‖² ≤ ‖ψ1 − ψ2‖² + 2‖ψ1‖‖ψ2‖`
    In1,
    /// `|⟨ψ1|ψ2⟩| ≤ ‖ψ1‖‖ψ2‖`
    Cs,
    /// Dunkl–Williams lower bound on `‖ψ1 − ψ2‖`.
    Dw,
    /// `(ΔA)² + (ΔB)² ≤ [Δ(A−B)]² + 2|𝒞(A,B)|`
    RevCov,
    /// `(ΔA)² + (ΔB)² ≤ [Δ(A−B)]² + 2ΔA·ΔB`
    RevProd,
    /// `(ΔA)² + (ΔB)² ≤ 2[Δ(A−B)]² / (1 − cov/(ΔA·ΔB)) − 2ΔA·ΔB`
    RevDw,
    /// `ΔA·ΔB ≥ ½|⟨[A,B]⟩|`
    Robertson,
}

/// How `lhs` and `rhs` are compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Identity,
    Upper,
    Lower,
}

impl Relation {
    pub const ALL: [Relation; 9] = [
        Relation::Id1,
        Relation::In0,
        Relation::In1,
        Relation::Cs,
        Relation::Dw,
        Relation::RevCov,
        Relation::RevProd,
        Relation::RevDw,
        Relation::Robertson,
    ];

    /// Relations stated for a pair of vectors.
    pub const VECTOR: [Relation; 5] = [Relation::Id1, Relation::In0, Relation::In1, Relation::Cs, Relation::Dw];

    /// Relations stated for a pair of observables in a state.
    pub const OBSERVABLE: [Relation; 4] = [Relation::RevCov, Relation::RevProd, Relation::RevDw, Relation::Robertson];

    pub fn as_str(self) -> &'static str {
        match self {
            Relation::Id1 => "ID1",
            Relation::In0 => "IN0",
            Relation::In1 => "IN1",
            Relation::Cs => "CS",
            Relation::Dw => "DW",
            Relation::RevCov => "REV_COV",
            Relation::RevProd => "REV_PROD",
            Relation::RevDw => "REV_DW",
            Relation::Robertson => "ROBERTSON",
        }
    }

    pub fn kind(self) -> BoundKind {
        match self {
            Relation::Id1 => BoundKind::Identity,
            Relation::Dw | Relation::Robertson => BoundKind::Lower,
            _ => BoundKind::Upper,
        }
    }

    /// Upper bounds on `(ΔA)² + (ΔB)²`, the relations a tightness search can minimize.
    pub fn is_reverse_bound(self) -> bool {
        matches!(self, Relation::RevCov | Relation::RevProd | Relation::RevDw)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Relation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let wanted = s.trim().to_ascii_uppercase().replace('-', "_");
        Relation::ALL
            .into_iter()
            .find(|r| r.as_str() == wanted)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown relation {s:?}")))
    }
}

/// One evaluated relation.
///
/// When `defined` is false, `lhs`, `rhs` and `gap` are `None` and `holds`
/// is false; `aux` still carries whatever intermediate scalars exist.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalRecord {
    pub relation: Relation,
    pub defined: bool,
    pub holds: bool,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    pub gap: Option<f64>,
    pub scale: f64,
    pub aux: BTreeMap<&'static str, f64>,
}

impl EvalRecord {
    fn evaluated(relation: Relation, lhs: f64, rhs: f64, scale: f64, tol: f64, aux: BTreeMap<&'static str, f64>) -> Self {
        let gap = match relation.kind() {
            BoundKind::Upper => rhs - lhs,
            BoundKind::Lower => lhs - rhs,
            BoundKind::Identity => -(lhs - rhs).abs(),
        };
        Self {
            relation,
            defined: true,
            holds: gap >= -tol * scale,
            lhs: Some(lhs),
            rhs: Some(rhs),
            gap: Some(gap),
            scale,
            aux,
        }
    }

    fn undefined(relation: Relation, scale: f64, aux: BTreeMap<&'static str, f64>) -> Self {
        Self {
            relation,
            defined: false,
            holds: false,
            lhs: None,
            rhs: None,
            gap: None,
            scale,
            aux,
        }
    }

    /// Defined and failing its tolerance.
    pub fn is_violation(&self) -> bool {
        self.defined && !self.holds
    }

    pub fn aux(&self, key: &str) -> Option<f64> {
        self.aux.get(key).copied()
    }
}

/// Scalars shared by all observable-pair relations for one `(A, B, φ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PairStatistics {
    pub deviation_a: DeviationVector,
    pub deviation_b: DeviationVector,
    pub var_a: f64,
    pub var_b: f64,
    pub std_a: f64,
    pub std_b: f64,
    /// `[Δ(A−B)]²` from the explicitly formed observable `A − B`.
    pub var_a_minus_b: f64,
    /// `[Δ(A+B)]²`.
    pub var_a_plus_b: f64,
    /// `𝒞φ(A,B)`; its real part is `covφ(A,B)`.
    pub covariance: Complex64,
    /// `⟨φ|[A,B]|φ⟩`.
    pub commutator: Complex64,
    pub frobenius_a: f64,
    pub frobenius_b: f64,
}

impl PairStatistics {
    pub fn compute(a: &Observable, b: &Observable, state: &State) -> Result<Self> {
        if a.dim() != b.dim() {
            return Err(Error::DimensionMismatch {
                expected: a.dim(),
                found: b.dim(),
            });
        }
        let deviation_a = a.deviation_vector(state)?;
        let deviation_b = b.deviation_vector(state)?;
        let var_a = deviation_a.vector.norm_sqr();
        let var_b = deviation_b.vector.norm_sqr();
        let covariance = deviation_a.vector.inner(&deviation_b.vector)?;
        Ok(Self {
            var_a,
            var_b,
            std_a: var_a.sqrt(),
            std_b: var_b.sqrt(),
            var_a_minus_b: a.difference(b)?.variance(state)?,
            var_a_plus_b: a.sum(b)?.variance(state)?,
            covariance,
            commutator: commutator_expectation(a, b, state)?,
            frobenius_a: a.matrix().frobenius_norm(),
            frobenius_b: b.matrix().frobenius_norm(),
            deviation_a,
            deviation_b,
        })
    }

    /// `(ΔA)² + (ΔB)²`, the quantity the reverse relations bound from above.
    pub fn variance_sum(&self) -> f64 {
        self.var_a + self.var_b
    }

    /// `covφ(A,B) = Re 𝒞φ(A,B)`.
    pub fn cov(&self) -> f64 {
        self.covariance.re
    }

    // Magnitude of a variance-like quantity for these operators.
    fn scale(&self) -> f64 {
        1.0 + self.frobenius_a * self.frobenius_a + self.frobenius_b * self.frobenius_b
    }

    fn aux(&self) -> BTreeMap<&'static str, f64> {
        BTreeMap::from([
            ("std_a", self.std_a),
            ("std_b", self.std_b),
            ("var_a", self.var_a),
            ("var_b", self.var_b),
            ("var_a_minus_b", self.var_a_minus_b),
            ("std_a_minus_b", self.var_a_minus_b.sqrt()),
            ("cov_abs", self.covariance.norm()),
            ("cov_re", self.covariance.re),
            ("cov_im", self.covariance.im),
        ])
    }
}

/// Evaluates relations under a fixed set of tolerances.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Checker {
    pub tolerances: Tolerances,
}

struct PairNorms {
    n1: f64,
    n2: f64,
    diff_sqr: f64,
    inner: Complex64,
}

impl PairNorms {
    fn compute(psi1: &CVector, psi2: &CVector) -> Result<Self> {
        let inner = psi1.inner(psi2)?;
        Ok(Self {
            n1: psi1.norm(),
            n2: psi2.norm(),
            diff_sqr: psi1.sub(psi2)?.norm_sqr(),
            inner,
        })
    }

    fn lhs(&self) -> f64 {
        self.n1 * self.n1 + self.n2 * self.n2
    }

    fn scale(&self) -> f64 {
        1.0 + self.lhs()
    }
}

impl Checker {
    pub fn new(tolerances: Tolerances) -> Self {
        Self { tolerances }
    }

    fn record(&self, relation: Relation, lhs: f64, rhs: f64, scale: f64, aux: BTreeMap<&'static str, f64>) -> EvalRecord {
        EvalRecord::evaluated(relation, lhs, rhs, scale, self.tolerances.holds, aux)
    }

    /// Absolute residual of the polarization-type identity.
    pub fn identity_id1_residual(&self, psi1: &CVector, psi2: &CVector) -> Result<f64> {
        let p = PairNorms::compute(psi1, psi2)?;
        Ok((p.lhs() - (p.diff_sqr + 2.0 * p.inner.re)).abs())
    }

    pub fn identity_id1(&self, psi1: &CVector, psi2: &CVector) -> Result<EvalRecord> {
        let p = PairNorms::compute(psi1, psi2)?;
        let rhs = p.diff_sqr + 2.0 * p.inner.re;
        let aux = BTreeMap::from([("inner_re", p.inner.re)]);
        Ok(self.record(Relation::Id1, p.lhs(), rhs, p.scale(), aux))
    }

    pub fn bound_in0(&self, psi1: &CVector, psi2: &CVector) -> Result<EvalRecord> {
        let p = PairNorms::compute(psi1, psi2)?;
        let abs = p.inner.norm();
        let rhs = p.diff_sqr + 2.0 * abs;
        let aux = BTreeMap::from([
            ("inner_abs", abs),
            ("inner_re", p.inner.re),
            ("inner_im", p.inner.im),
            ("gap_crosscheck", 2.0 * (abs - p.inner.re)),
        ]);
        Ok(self.record(Relation::In0, p.lhs(), rhs, p.scale(), aux))
    }

    pub fn bound_in1(&self, psi1: &CVector, psi2: &CVector) -> Result<EvalRecord> {
        let p = PairNorms::compute(psi1, psi2)?;
        let rhs = p.diff_sqr + 2.0 * p.n1 * p.n2;
        let aux = BTreeMap::from([("norm1", p.n1), ("norm2", p.n2), ("rhs_in0", p.diff_sqr + 2.0 * p.inner.norm())]);
        Ok(self.record(Relation::In1, p.lhs(), rhs, p.scale(), aux))
    }

    pub fn cauchy_schwarz(&self, psi1: &CVector, psi2: &CVector) -> Result<EvalRecord> {
        let p = PairNorms::compute(psi1, psi2)?;
        let rhs = p.n1 * p.n2;
        Ok(self.record(Relation::Cs, p.inner.norm(), rhs, 1.0 + rhs, BTreeMap::new()))
    }

    /// Dunkl–Williams: `‖ψ1 − ψ2‖ ≥ ½(‖ψ1‖ + ‖ψ2‖)·‖ψ1/‖ψ1‖ − ψ2/‖ψ2‖‖`.
    ///
    /// Undefined when either norm is below `undefined·max(1, ‖ψ1‖, ‖ψ2‖)`.
    pub fn dunkl_williams(&self, psi1: &CVector, psi2: &CVector) -> Result<EvalRecord> {
        let n1 = psi1.norm();
        let n2 = psi2.norm();
        let diff = psi1.sub(psi2)?.norm();
        let scale = 1.0 + n1 + n2;
        let aux = BTreeMap::from([("norm1", n1), ("norm2", n2)]);
        if n1.min(n2) <= self.tolerances.undefined * n1.max(n2).max(1.0) {
            return Ok(EvalRecord::undefined(Relation::Dw, scale, aux));
        }
        let directions = psi1.scale(c64(1.0 / n1, 0.0)).sub(&psi2.scale(c64(1.0 / n2, 0.0)))?;
        let rhs = 0.5 * (n1 + n2) * directions.norm();
        Ok(self.record(Relation::Dw, diff, rhs, scale, aux))
    }

    pub fn reverse_covariance(&self, a: &Observable, b: &Observable, state: &State) -> Result<EvalRecord> {
        Ok(self.reverse_covariance_from(&PairStatistics::compute(a, b, state)?))
    }

    pub fn reverse_covariance_from(&self, s: &PairStatistics) -> EvalRecord {
        let rhs = s.var_a_minus_b + 2.0 * s.covariance.norm();
        self.record(Relation::RevCov, s.variance_sum(), rhs, s.scale(), s.aux())
    }

    pub fn reverse_product(&self, a: &Observable, b: &Observable, state: &State) -> Result<EvalRecord> {
        Ok(self.reverse_product_from(&PairStatistics::compute(a, b, state)?))
    }

    pub fn reverse_product_from(&self, s: &PairStatistics) -> EvalRecord {
        let rhs = s.var_a_minus_b + 2.0 * s.std_a * s.std_b;
        self.record(Relation::RevProd, s.variance_sum(), rhs, s.scale(), s.aux())
    }

    pub fn reverse_dw(&self, a: &Observable, b: &Observable, state: &State) -> Result<EvalRecord> {
        Ok(self.reverse_dw_from(&PairStatistics::compute(a, b, state)?))
    }

    /// The Dunkl–Williams-derived reverse relation.
    ///
    /// Undefined when `ΔA·ΔB`, measured against `‖A‖_F·‖B‖_F`, is at most
    /// the undefinedness tolerance (an eigenvector of `A` or `B`), or when
    /// `|1 − cov/(ΔA·ΔB)|` is at most that tolerance.
    pub fn reverse_dw_from(&self, s: &PairStatistics) -> EvalRecord {
        let tol = self.tolerances.undefined;
        let product = s.std_a * s.std_b;
        let mut aux = s.aux();
        let unit_scale = s.frobenius_a * s.frobenius_b;
        if unit_scale == 0.0 || product / unit_scale <= tol {
            return EvalRecord::undefined(Relation::RevDw, s.scale(), aux);
        }
        let correlation = s.cov() / product;
        let denominator = 1.0 - correlation;
        aux.insert("correlation", correlation);
        aux.insert("denominator", denominator);
        if denominator.abs() <= tol {
            return EvalRecord::undefined(Relation::RevDw, s.scale(), aux);
        }
        let rhs = 2.0 * s.var_a_minus_b / denominator - 2.0 * product;
        self.record(Relation::RevDw, s.variance_sum(), rhs, s.scale(), aux)
    }

    pub fn robertson_lower(&self, a: &Observable, b: &Observable, state: &State) -> Result<EvalRecord> {
        Ok(self.robertson_lower_from(&PairStatistics::compute(a, b, state)?))
    }

    /// `ΔA·ΔB ≥ ½|⟨[A,B]⟩|`, the lower companion of the reverse bounds.
    pub fn robertson_lower_from(&self, s: &PairStatistics) -> EvalRecord {
        let mut aux = s.aux();
        aux.insert("commutator_im", s.commutator.im);
        self.record(Relation::Robertson, s.std_a * s.std_b, 0.5 * s.commutator.norm(), s.scale(), aux)
    }

    /// Evaluate one observable-pair relation.
    pub fn observable_relation(&self, relation: Relation, s: &PairStatistics) -> Result<EvalRecord> {
        match relation {
            Relation::RevCov => Ok(self.reverse_covariance_from(s)),
            Relation::RevProd => Ok(self.reverse_product_from(s)),
            Relation::RevDw => Ok(self.reverse_dw_from(s)),
            Relation::Robertson => Ok(self.robertson_lower_from(s)),
            other => Err(Error::InvalidParameter(format!("{other} is a vector relation"))),
        }
    }

    /// Evaluate one vector-pair relation.
    pub fn vector_relation(&self, relation: Relation, psi1: &CVector, psi2: &CVector) -> Result<EvalRecord> {
        match relation {
            Relation::Id1 => self.identity_id1(psi1, psi2),
            Relation::In0 => self.bound_in0(psi1, psi2),
            Relation::In1 => self.bound_in1(psi1, psi2),
            Relation::Cs => self.cauchy_schwarz(psi1, psi2),
            Relation::Dw => self.dunkl_williams(psi1, psi2),
            other => Err(Error::InvalidParameter(format!("{other} is an observable relation"))),
        }
    }

    /// All nine relations for one `(A, B, φ)`: the vector relations are applied
    /// to the deviation vectors `δA|φ⟩` and `δB|φ⟩`.
    pub fn evaluate_all(&self, s: &PairStatistics) -> Result<Vec<EvalRecord>> {
        Relation::ALL
            .into_iter()
            .map(|r| self.evaluate(r, s))
            .collect()
    }

    pub fn evaluate(&self, relation: Relation, s: &PairStatistics) -> Result<EvalRecord> {
        if Relation::VECTOR.contains(&relation) {
            self.vector_relation(relation, &s.deviation_a.vector, &s.deviation_b.vector)
        } else {
            self.observable_relation(relation, s)
        }
    }
}

macro_rules! default_checker {
    ($(#[$doc:meta])* $name:ident($($arg:ident: $ty:ty),*) -> $ret:ty) => {
        $(#[$doc])*
        pub fn $name($($arg: $ty),*) -> Result<$ret> {
            Checker::default().$name($($arg),*)
        }
    };
}

default_checker!(identity_id1_residual(psi1: &CVector, psi2: &CVector) -> f64);
default_checker!(identity_id1(psi1: &CVector, psi2: &CVector) -> EvalRecord);
default_checker!(bound_in0(psi1: &CVector, psi2: &CVector) -> EvalRecord);
default_checker!(bound_in1(psi1: &CVector, psi2: &CVector) -> EvalRecord);
default_checker!(cauchy_schwarz(psi1: &CVector, psi2: &CVector) -> EvalRecord);
default_checker!(dunkl_williams(psi1: &CVector, psi2: &CVector) -> EvalRecord);
default_checker!(reverse_covariance(a: &Observable, b: &Observable, state: &State) -> EvalRecord);
default_checker!(reverse_product(a: &Observable, b: &Observable, state: &State) -> EvalRecord);
default_checker!(reverse_dw(a: &Observable, b: &Observable, state: &State) -> EvalRecord);
default_checker!(robertson_lower(a: &Observable, b: &Observable, state: &State) -> EvalRecord);

//! Numerical tolerances used across the crate.
//!
//! Structural checks (Hermiticity, normalization, eigen-residuals) use
//! `1e-10`; pure arithmetic identities use `1e-12`. Thresholds for the
//! `holds` and `defined` decisions are applied after dividing by the
//! natural scale of the quantities involved, so they behave the same for
//! `A` and `1000·A`.

/// Structural tolerance: Hermiticity, state normalization, eigenpairs.
pub const STRUCTURAL: f64 = 1e-10;

/// Arithmetic identities such as conjugate symmetry of the inner product.
pub const ARITHMETIC: f64 = 1e-12;

/// Slack allowed on a gap before a relation is reported as violated.
pub const HOLDS: f64 = 1e-10;

/// Threshold below which a Dunkl–Williams denominator or norm is treated as zero.
pub const UNDEFINED: f64 = 1e-9;

/// `|gap| ≤ EQUALITY` counts as saturation in sweep reports.
pub const EQUALITY: f64 = 1e-8;

/// All tolerances in one record so callers can override them together.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub hermiticity: f64,
    pub normalization: f64,
    pub imaginary_residue: f64,
    pub holds: f64,
    pub undefined: f64,
    pub equality: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermiticity: STRUCTURAL,
            normalization: STRUCTURAL,
            imaginary_residue: STRUCTURAL,
            holds: HOLDS,
            undefined: UNDEFINED,
            equality: EQUALITY,
        }
    }
}

impl Tolerances {
    /// Same defaults with a different `holds` slack.
    pub fn with_holds(holds: f64) -> Self {
        Self {
            holds,
            ..Self::default()
        }
    }
}

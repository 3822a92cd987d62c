//! Numerical tolerances shared by every check in the crate.
//!
//! All identities verified here are exact in exact arithmetic; these bounds
//! only absorb double-precision rounding of the exponentiated phases.

/// Absolute bound for identities among orbit-function values (|value| ≤ |W|).
pub const IDENTITY_ABS: f64 = 1e-10;

/// Off-diagonal Gram entries, relative to the norm scale `c·|W|·M^n`.
pub const GRAM_OFF_DIAGONAL_REL: f64 = 1e-8;

/// Diagonal Gram entries against `c·|W|·M^n·h∨`.
pub const GRAM_DIAGONAL_REL: f64 = 1e-10;

/// Character sums over the torus `(1/M)P∨/Q∨`, absolute.
pub const EXPONENTIAL_SUM_ABS: f64 = 1e-8;

/// Forward transform followed by interpolation, relative to the sample scale.
pub const ROUNDTRIP_REL: f64 = 1e-9;

/// Energy identity between samples and coefficients, relative.
pub const PLANCHEREL_REL: f64 = 1e-10;

/// Product of two S^s / S^l functions against its C-function expansion.
pub const PRODUCT_ABS: f64 = 1e-9;

/// Library evaluation against hand-written cosine forms.
pub const EXPLICIT_FORMULA_ABS: f64 = 1e-12;

/// Coefficients of a transformed basis function.
pub const INDICATOR_ABS: f64 = 1e-10;

/// Relative difference `|a - b| / max(|a|, |b|, 1)`.
pub fn relative_diff(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}

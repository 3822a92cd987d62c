//! Discrete orthogonality and discrete transforms of Weyl-group orbit
//! functions for the compact simple Lie groups with two root lengths
//! (`B_n`, `C_n`, `G_2`, `F_4`).
//!
//! The four families of orbit functions are selected by a sign homomorphism
//! `σ: W → {±1}`:
//!
//! ```text
//! φ^σ_b(a) = Σ_{w ∈ W} σ(w) · exp(2πi ⟨w b, a⟩)
//! ```
//!
//! The S^s- and S^l-families (σ = σ^s, σ^l) are orthogonal on the finite
//! grids `F^s_M`, `F^l_M` with respect to the weights `ε(x)`, and are labelled
//! by the weight sets `Λ^s_M`, `Λ^l_M` of the same size. This crate
//! enumerates those grids exactly, evaluates the functions with exact phases,
//! and implements the forward transform, interpolation and the Plancherel
//! identity on top of them.
//!
//! Lattice arithmetic is exact (`i64` and [`Rational`]); the numeric side is
//! generic over [`Scalar`] (`f32` or `f64`). The aliases at the crate root fix
//! the common `f64` instantiation.
//!
//! ```
//! use weyl_orbit::{Algebra, Variant, grids};
//!
//! let c2: Algebra = "C2".parse().unwrap();
//! let grid = grids::enumerate_points(&c2, 4, Variant::Short).unwrap();
//! assert_eq!(grid.len(), 4);
//! ```

pub mod algebra;
pub mod error;
pub mod grids;
pub mod io;
pub mod matrix;
pub mod orbitfun;
pub mod rootsystem;
pub mod scalar;
pub mod tolerance;
pub mod transform;
pub mod weylgroup;

pub use algebra::Algebra;
pub use error::{Error, Result};
pub use grids::{GridPoint, PointGrid, Variant, WeightRecord, WeightSet};
pub use orbitfun::RationalPoint;
pub use rootsystem::{AlgebraSpec, Family, RootSystem};
pub use scalar::Scalar;
pub use weylgroup::{SignHomomorphism, WeylElement, WeylGroup};

/// Exact rational number used for lattice coordinates and phases.
pub type Rational = num_rational::Ratio<i64>;

/// Double-precision complex value.
pub type Complex64 = num_complex::Complex<f64>;

/// Samples on `F^s_M` / `F^l_M` in double precision.
pub type Samples = transform::SampleTable<f64>;

/// Expansion coefficients on `Λ^s_M` / `Λ^l_M` in double precision.
pub type Coefficients = transform::CoefficientTable<f64>;

/// Basis matrix `[φ^σ_λ(x)]` in double precision.
pub type Basis = transform::TransformBasis<f64>;

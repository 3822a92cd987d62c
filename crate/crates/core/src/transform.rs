//! Weighted scalar product, discrete orthogonality, the forward S^s- and
//! S^l-transforms, interpolation and the Plancherel identity.
//!
//! For `σ ∈ {s, l}` the functions `{φ^σ_λ : λ ∈ Λ^σ_M}` satisfy
//!
//! ```text
//! Σ_{x ∈ F^σ_M} ε(x) φ^σ_λ(x) conj(φ^σ_λ′(x)) = c·|W|·M^n·h∨_λ·δ_{λλ′}
//! ```
//!
//! so the forward transform is a weighted projection and interpolation is the
//! matching expansion. Everything here is dense summation.

use num_complex::Complex;
use num_traits::Zero;
use serde::Serialize;

use crate::algebra::Algebra;
use crate::grids::{enumerate_points, enumerate_torus, enumerate_weights, GridPoint, PointGrid, Variant, WeightRecord, WeightSet};
use crate::orbitfun::{OrbitFunction, RationalPoint, UnitRoots};
use crate::rootsystem::AlgebraSpec;
use crate::scalar::Scalar;
use crate::tolerance;
use crate::weylgroup::SignHomomorphism;
use crate::{Complex64, Error, Result};

/// Complex samples on a point grid, bound to its algebra, level and variant.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleTable<T> {
    pub spec: AlgebraSpec,
    pub level: i64,
    pub variant: Variant,
    pub points: Vec<GridPoint>,
    pub values: Vec<Complex<T>>,
}

impl<T: Scalar> SampleTable<T> {
    pub fn new(grid: &PointGrid, values: Vec<Complex<T>>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::Dimension {
                expected: grid.len(),
                found: values.len(),
            });
        }
        Ok(SampleTable {
            spec: grid.spec,
            level: grid.level,
            variant: grid.variant,
            points: grid.points.clone(),
            values,
        })
    }

    pub fn zeros(grid: &PointGrid) -> Self {
        Self::from_fn(grid, |_| Complex::zero())
    }

    pub fn from_fn(grid: &PointGrid, mut f: impl FnMut(&GridPoint) -> Complex<T>) -> Self {
        let values = grid.points.iter().map(&mut f).collect();
        SampleTable {
            spec: grid.spec,
            level: grid.level,
            variant: grid.variant,
            points: grid.points.clone(),
            values,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn map(&self, f: impl Fn(Complex<T>) -> Complex<T>) -> Self {
        SampleTable {
            values: self.values.iter().map(|&v| f(v)).collect(),
            ..self.clone()
        }
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: Complex<T>, other: &Self, b: Complex<T>) -> Result<Self> {
        self.check_compatible(other)?;
        let values = self.values.iter().zip(&other.values).map(|(&x, &y)| x * a + y * b).collect();
        Ok(SampleTable { values, ..self.clone() })
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.spec != other.spec || self.level != other.level || self.variant != other.variant || self.points != other.points {
            return Err(Error::VariantMismatch(format!(
                "sample tables ({}, M = {}, {}) and ({}, M = {}, {})",
                self.spec, self.level, self.variant, other.spec, other.level, other.variant
            )));
        }
        Ok(())
    }

    /// Largest `|self - other|` over the grid.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        self.check_compatible(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max))
    }

    pub fn max_abs(&self) -> T {
        self.values.iter().map(|v| v.norm()).fold(T::zero(), T::max)
    }
}

/// Expansion coefficients on a weight set.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientTable<T> {
    pub spec: AlgebraSpec,
    pub level: i64,
    pub variant: Variant,
    pub weights: Vec<WeightRecord>,
    pub values: Vec<Complex<T>>,
}

impl<T: Scalar> CoefficientTable<T> {
    pub fn new(set: &WeightSet, values: Vec<Complex<T>>) -> Result<Self> {
        if values.len() != set.len() {
            return Err(Error::Dimension {
                expected: set.len(),
                found: values.len(),
            });
        }
        Ok(CoefficientTable {
            spec: set.spec,
            level: set.level,
            variant: set.variant,
            weights: set.weights.clone(),
            values,
        })
    }

    pub fn zeros(set: &WeightSet) -> Self {
        let values = vec![Complex::zero(); set.len()];
        CoefficientTable {
            spec: set.spec,
            level: set.level,
            variant: set.variant,
            weights: set.weights.clone(),
            values,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, t: &[i64]) -> Option<Complex<T>> {
        self.weights.iter().position(|w| w.t == t).map(|i| self.values[i])
    }
}

fn family_of(variant: Variant) -> Result<SignHomomorphism> {
    match variant {
        Variant::Short => Ok(SignHomomorphism::Short),
        Variant::Long => Ok(SignHomomorphism::Long),
        Variant::Full => Err(Error::VariantMismatch("transforms are defined on the s and l grids only".into())),
    }
}

/// `Σ_x ε(x) f(x) conj(g(x))`.
pub fn scalar_product<T: Scalar>(f: &SampleTable<T>, g: &SampleTable<T>) -> Result<Complex<T>> {
    f.check_compatible(g)?;
    Ok(f.points
        .iter()
        .zip(f.values.iter().zip(&g.values))
        .fold(Complex::zero(), |acc, (p, (a, b))| {
            acc + a * b.conj() * T::from_u64(p.epsilon).unwrap()
        }))
}

/// The square matrix `[φ^σ_λ(x)]` over `Λ^σ_M × F^σ_M` with its metadata.
#[derive(Debug, Clone)]
pub struct TransformBasis<T> {
    pub grid: PointGrid,
    pub weights: WeightSet,
    /// Row `λ`, column `x`.
    rows: Vec<SampleTable<T>>,
    norm_scale: T,
}

impl<T: Scalar> TransformBasis<T> {
    pub fn new(alg: &Algebra, level: i64, variant: Variant) -> Result<Self> {
        let family = family_of(variant)?;
        let grid = enumerate_points(alg, level, variant)?;
        let weights = enumerate_weights(alg, level, variant)?;
        let roots = UnitRoots::<T>::new(alg.roots().det() * level);
        let rows = weights
            .weights
            .iter()
            .map(|w| {
                let f = OrbitFunction::new(alg, family, w.coords());
                SampleTable::from_fn(&grid, |p| f.evaluate_at_grid(alg, p.coords(), level, &roots))
            })
            .collect();
        let norm_scale = T::from_f64_lossy(alg.norm_scale(level));
        Ok(TransformBasis {
            grid,
            weights,
            rows,
            norm_scale,
        })
    }

    pub fn family(&self) -> SignHomomorphism {
        family_of(self.grid.variant).expect("basis variant is s or l")
    }

    pub fn level(&self) -> i64 {
        self.grid.level
    }

    pub fn variant(&self) -> Variant {
        self.grid.variant
    }

    /// `φ^σ_λ` tabulated on the grid.
    pub fn row(&self, index: usize) -> &SampleTable<T> {
        &self.rows[index]
    }

    /// `c·|W|·M^n·h∨_λ`, the squared norm of row `index`.
    pub fn norm(&self, index: usize) -> T {
        self.norm_scale * T::from_u64(self.weights.weights[index].h_dual).unwrap()
    }

    pub fn norm_scale(&self) -> T {
        self.norm_scale
    }

    fn check_samples(&self, f: &SampleTable<T>) -> Result<()> {
        if f.spec != self.grid.spec || f.level != self.grid.level || f.variant != self.grid.variant {
            return Err(Error::VariantMismatch(format!(
                "samples ({}, M = {}, {}) against basis ({}, M = {}, {})",
                f.spec, f.level, f.variant, self.grid.spec, self.grid.level, self.grid.variant
            )));
        }
        Ok(())
    }

    /// `c_λ = (c|W|M^n h∨_λ)⁻¹ Σ_x ε(x) f(x) conj(φ_λ(x))`.
    pub fn forward(&self, f: &SampleTable<T>) -> Result<CoefficientTable<T>> {
        self.check_samples(f)?;
        let values = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, row)| scalar_product(f, row).map(|v| v / self.norm(i)))
            .collect::<Result<Vec<_>>>()?;
        CoefficientTable::new(&self.weights, values)
    }

    /// `I(x) = Σ_λ c_λ φ_λ(x)` on the grid itself.
    pub fn inverse(&self, coeffs: &CoefficientTable<T>) -> Result<SampleTable<T>> {
        if coeffs.spec != self.weights.spec || coeffs.level != self.weights.level || coeffs.variant != self.weights.variant {
            return Err(Error::VariantMismatch(format!(
                "coefficients ({}, M = {}, {}) against basis ({}, M = {}, {})",
                coeffs.spec, coeffs.level, coeffs.variant, self.grid.spec, self.grid.level, self.grid.variant
            )));
        }
        let mut out = SampleTable::zeros(&self.grid);
        for (row, &c) in self.rows.iter().zip(&coeffs.values) {
            for (o, &v) in out.values.iter_mut().zip(&row.values) {
                *o = *o + c * v;
            }
        }
        Ok(out)
    }
}

pub fn forward_transform<T: Scalar>(alg: &Algebra, f: &SampleTable<T>) -> Result<CoefficientTable<T>> {
    TransformBasis::new(alg, f.level, f.variant)?.forward(f)
}

/// `I(x) = Σ_λ c_λ φ_λ(x)` at arbitrary rational points.
pub fn interpolate<T: Scalar>(alg: &Algebra, coeffs: &CoefficientTable<T>, points: &[RationalPoint]) -> Result<Vec<Complex<T>>> {
    let family = family_of(coeffs.variant)?;
    let funcs: Vec<OrbitFunction> = coeffs.weights.iter().map(|w| OrbitFunction::new(alg, family, w.coords())).collect();
    Ok(points
        .iter()
        .map(|p| {
            funcs
                .iter()
                .zip(&coeffs.values)
                .fold(Complex::zero(), |acc, (f, &c)| acc + c * f.evaluate::<T>(alg, p))
        })
        .collect())
}

/// Interpolation evaluated back on the grid `F^σ_M` matching the coefficients.
pub fn interpolate_on_grid<T: Scalar>(alg: &Algebra, coeffs: &CoefficientTable<T>) -> Result<SampleTable<T>> {
    TransformBasis::new(alg, coeffs.level, coeffs.variant)?.inverse(coeffs)
}

/// `(Σ_x ε(x)|f(x)|², c|W|M^n Σ_λ h∨_λ |c_λ|²)`.
pub fn plancherel_check<T: Scalar>(alg: &Algebra, f: &SampleTable<T>) -> Result<(T, T)> {
    let basis = TransformBasis::new(alg, f.level, f.variant)?;
    plancherel_with(&basis, f)
}

pub fn plancherel_with<T: Scalar>(basis: &TransformBasis<T>, f: &SampleTable<T>) -> Result<(T, T)> {
    let lhs = scalar_product(f, f)?.re;
    let coeffs = basis.forward(f)?;
    let rhs = coeffs
        .values
        .iter()
        .enumerate()
        .fold(T::zero(), |acc, (i, c)| acc + basis.norm(i) * c.norm_sqr());
    Ok((lhs, rhs))
}

#[derive(Debug, Clone, Serialize)]
pub struct GramEntry {
    pub lambda: Vec<i64>,
    pub lambda_prime: Vec<i64>,
    pub value_re: f64,
    pub value_im: f64,
    pub expected: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct GramReport {
    pub algebra: String,
    pub level: i64,
    pub variant: Variant,
    pub size: usize,
    pub norm_scale: f64,
    pub max_off_diagonal: f64,
    pub max_diagonal_rel_error: f64,
    pub pass: bool,
    pub entries: Vec<GramEntry>,
}

impl GramReport {
    pub fn violations(&self) -> impl Iterator<Item = &GramEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }

    pub fn diagonal(&self, lambda: &[i64]) -> Option<&GramEntry> {
        self.entries.iter().find(|e| e.lambda == lambda && e.lambda_prime == lambda)
    }
}

/// Full Gram matrix of `{φ^σ_λ : λ ∈ Λ^σ_M}` under the weighted product.
pub fn verify_orthogonality(alg: &Algebra, level: i64, variant: Variant) -> Result<GramReport> {
    let basis = TransformBasis::<f64>::new(alg, level, variant)?;
    Ok(gram_report(alg, &basis))
}

pub fn gram_report(alg: &Algebra, basis: &TransformBasis<f64>) -> GramReport {
    let scale = basis.norm_scale();
    let off_tol = tolerance::GRAM_OFF_DIAGONAL_REL * scale;
    let mut entries = Vec::with_capacity(basis.weights.len().pow(2));
    let (mut max_off, mut max_diag): (f64, f64) = (0.0, 0.0);
    for (i, wi) in basis.weights.weights.iter().enumerate() {
        for (j, wj) in basis.weights.weights.iter().enumerate() {
            let v = scalar_product(basis.row(i), basis.row(j)).expect("rows share a grid");
            let (expected, pass) = if i == j {
                let e = basis.norm(i);
                let rel = (v - Complex64::new(e, 0.0)).norm() / e;
                max_diag = max_diag.max(rel);
                (e, rel <= tolerance::GRAM_DIAGONAL_REL)
            } else {
                max_off = max_off.max(v.norm());
                (0.0, v.norm() <= off_tol)
            };
            entries.push(GramEntry {
                lambda: wi.t.clone(),
                lambda_prime: wj.t.clone(),
                value_re: v.re,
                value_im: v.im,
                expected,
                pass,
            });
        }
    }
    let pass = entries.iter().all(|e| e.pass) && basis.grid.len() == basis.weights.len();
    GramReport {
        algebra: alg.spec().name(),
        level: basis.level(),
        variant: basis.variant(),
        size: basis.weights.len(),
        norm_scale: scale,
        max_off_diagonal: max_off,
        max_diagonal_rel_error: max_diag,
        pass,
        entries,
    }
}

/// `true` if `λ - λ′ ∈ M·Q` (weights in ω-coordinates).
pub fn congruent_mod_root_lattice(alg: &Algebra, level: i64, lambda: &[i64], lambda_prime: &[i64]) -> bool {
    let rs = alg.roots();
    let diff: Vec<i64> = lambda.iter().zip(lambda_prime).map(|(a, b)| a - b).collect();
    // μ = M·Cᵀq  ⇔  adj(C)ᵀ μ ≡ 0 mod c·M
    let modulus = rs.det() * level;
    rs.cartan_adjugate().vec_mul(&diff).iter().all(|x| x % modulus == 0)
}

/// `Σ_{y ∈ (1/M)P∨/Q∨} exp(2πi⟨λ - λ′, y⟩)`.
pub fn verify_exponential_orthogonality(alg: &Algebra, level: i64, lambda: &[i64], lambda_prime: &[i64]) -> Result<Complex64> {
    let n = alg.rank();
    if lambda.len() != n || lambda_prime.len() != n {
        return Err(Error::Dimension {
            expected: n,
            found: lambda.len().min(lambda_prime.len()),
        });
    }
    let torus = enumerate_torus(alg, level)?;
    let diff: Vec<i64> = lambda.iter().zip(lambda_prime).map(|(a, b)| a - b).collect();
    let modulus = alg.roots().det() * level;
    let roots = UnitRoots::<f64>::new(modulus);
    let mut counts = vec![0i64; modulus as usize];
    for y in &torus {
        // α∨-coordinates pair with ω-coordinates as the identity.
        let phase: i64 = y.v.iter().zip(&diff).map(|(v, d)| v.numer() * (modulus / v.denom()) * d).sum();
        counts[phase.rem_euclid(modulus) as usize] += 1;
    }
    let _ = &roots;
    Ok(counts
        .iter()
        .enumerate()
        .filter(|(_, &m)| m != 0)
        .fold(Complex64::zero(), |acc, (r, &m)| acc + root(r as i64, modulus) * m as f64))
}

fn root(k: i64, n: i64) -> Complex64 {
    let k = if 2 * k > n { k - n } else { k };
    let angle = std::f64::consts::TAU * k as f64 / n as f64;
    Complex64::new(angle.cos(), angle.sin())
}

//! Orbit functions `φ^σ_b(a) = Σ_w σ(w) exp(2πi⟨wb, a⟩)`.
//!
//! Evaluation is split in two stages. The phases `⟨wb, a⟩ mod 1` are exact
//! fractions with a common denominator, and terms with equal phase are
//! merged as integer multiplicities before anything is exponentiated. Only
//! the surviving distinct phases are turned into floating-point roots of
//! unity, so cancellations forced by (anti)symmetry are exact.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex;
use num_integer::Integer;
use num_traits::Zero;
use rand::Rng;
use serde::Serialize;

use crate::algebra::Algebra;
use crate::grids::{PointGrid, Variant};
use crate::scalar::Scalar;
use crate::tolerance;
use crate::transform::SampleTable;
use crate::weylgroup::{SignHomomorphism, WeylElement};
use crate::{Error, Rational, Result};

/// A point of `ℝⁿ` with rational ω∨-coordinates `num / den`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalPoint {
    num: Vec<i64>,
    den: i64,
}

impl RationalPoint {
    /// `Σ (num_i / den) ω∨_i`; the fraction is normalized.
    pub fn new(num: Vec<i64>, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let (num, den) = if den < 0 {
            (num.iter().map(|x| -x).collect(), -den)
        } else {
            (num, den)
        };
        let g = num.iter().fold(den, |g, x| g.gcd(x));
        RationalPoint {
            num: num.iter().map(|x| x / g).collect(),
            den: den / g,
        }
    }

    /// Grid point `u / M` from its `(u_1, …, u_n)` numerators.
    pub fn from_grid(u: &[i64], level: i64) -> Self {
        Self::new(u.to_vec(), level)
    }

    /// From rational ω∨-coordinates.
    pub fn from_rationals(coords: &[Rational]) -> Self {
        let den = coords.iter().fold(1i64, |l, x| l.lcm(x.denom()));
        Self::new(coords.iter().map(|x| x.numer() * (den / x.denom())).collect(), den)
    }

    /// From rational coordinates in the α∨ basis.
    pub fn from_coroot_coords(alg: &Algebra, v: &[Rational]) -> Self {
        let p = Self::from_rationals(v);
        // α∨_i = Σ_j C_ji ω∨_j
        Self::new(alg.roots().cartan().mul_vec(&p.num), p.den)
    }

    pub fn numerators(&self) -> &[i64] {
        &self.num
    }

    pub fn denominator(&self) -> i64 {
        self.den
    }

    pub fn dim(&self) -> usize {
        self.num.len()
    }

    pub fn to_rationals(&self) -> Vec<Rational> {
        self.num.iter().map(|&x| Rational::new(x, self.den)).collect()
    }

    /// `w·a` under the linear action.
    pub fn act(&self, w: &WeylElement) -> Self {
        Self::new(w.act_point(&self.num), self.den)
    }

    /// `a + Σ k_i α∨_i`.
    pub fn shift_by_coroots(&self, alg: &Algebra, k: &[i64]) -> Self {
        let shift = alg.roots().cartan().mul_vec(k);
        Self::new(self.num.iter().zip(&shift).map(|(a, s)| a + self.den * s).collect(), self.den)
    }

    /// Image under generator `i` of the affine Weyl group (`i = 0` is `r_0`).
    pub fn reflect_affine(&self, alg: &Algebra, i: usize) -> Self {
        if i == 0 {
            Self::new(alg.group().affine_reflection().apply(&self.num, self.den), self.den)
        } else {
            self.act(&alg.group().generators()[i - 1])
        }
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.to_rationals().iter().map(|r| r.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Table of `exp(2πi k/N)` for `k = 0..N`.
#[derive(Debug, Clone)]
pub struct UnitRoots<T> {
    modulus: i64,
    values: Vec<Complex<T>>,
}

impl<T: Scalar> UnitRoots<T> {
    pub fn new(modulus: i64) -> Self {
        assert!(modulus >= 1);
        let values = (0..modulus).map(|k| root_of_unity(k, modulus)).collect();
        UnitRoots { modulus, values }
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    fn get(&self, k: i64) -> Complex<T> {
        self.values[k.mod_floor(&self.modulus) as usize]
    }
}

fn root_of_unity<T: Scalar>(k: i64, n: i64) -> Complex<T> {
    let k = k.mod_floor(&n);
    // Pick the representative in (-n/2, n/2] so the angle stays small.
    let k = if 2 * k > n { k - n } else { k };
    let angle = T::TAU() * T::from_i64_exact(k) / T::from_i64_exact(n);
    Complex::new(angle.cos(), angle.sin())
}

/// Phases as exact residues modulo `modulus` with integer multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseSum {
    pub modulus: i64,
    /// `(residue, multiplicity)`, sorted by residue, zero multiplicities dropped.
    pub terms: Vec<(i64, i64)>,
}

impl PhaseSum {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_complex<T: Scalar>(&self) -> Complex<T> {
        self.terms.iter().fold(Complex::zero(), |acc, &(r, m)| {
            acc + root_of_unity::<T>(r, self.modulus) * T::from_i64_exact(m)
        })
    }

    pub fn to_complex_with<T: Scalar>(&self, roots: &UnitRoots<T>) -> Complex<T> {
        if roots.modulus() != self.modulus {
            return self.to_complex();
        }
        self.terms
            .iter()
            .fold(Complex::zero(), |acc, &(r, m)| acc + roots.get(r) * T::from_i64_exact(m))
    }
}

/// `φ^σ_b` with its signed orbit `{(wb, Σ σ(w))}` precomputed.
#[derive(Debug, Clone)]
pub struct OrbitFunction {
    family: SignHomomorphism,
    weight: Vec<i64>,
    terms: Vec<(Vec<i64>, i64)>,
}

impl OrbitFunction {
    pub fn new(alg: &Algebra, family: SignHomomorphism, weight: &[i64]) -> Self {
        assert_eq!(weight.len(), alg.rank(), "weight dimension");
        let mut merged: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
        for w in alg.group().iter() {
            *merged.entry(w.act_weight(weight)).or_insert(0) += w.sign(family);
        }
        let terms = merged.into_iter().filter(|(_, m)| *m != 0).collect();
        OrbitFunction {
            family,
            weight: weight.to_vec(),
            terms,
        }
    }

    pub fn family(&self) -> SignHomomorphism {
        self.family
    }

    pub fn weight(&self) -> &[i64] {
        &self.weight
    }

    /// `true` if the function vanishes identically (e.g. S-type on a wall).
    pub fn is_identically_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn phases(&self, alg: &Algebra, point: &RationalPoint) -> PhaseSum {
        let rs = alg.roots();
        let modulus = rs.det() * point.den;
        let k = rs.cartan_adjugate().mul_vec(&point.num);
        let mut acc: BTreeMap<i64, i64> = BTreeMap::new();
        for (wb, m) in &self.terms {
            let num: i128 = wb.iter().zip(&k).map(|(&a, &b)| a as i128 * b as i128).sum();
            let r = num.mod_floor(&(modulus as i128)) as i64;
            *acc.entry(r).or_insert(0) += m;
        }
        PhaseSum {
            modulus,
            terms: acc.into_iter().filter(|(_, m)| *m != 0).collect(),
        }
    }

    pub fn evaluate<T: Scalar>(&self, alg: &Algebra, point: &RationalPoint) -> Complex<T> {
        self.phases(alg, point).to_complex()
    }

    /// Evaluation at the grid point `u/M` using a shared root table of modulus `c·M`.
    pub fn evaluate_at_grid<T: Scalar>(&self, alg: &Algebra, u: &[i64], level: i64, roots: &UnitRoots<T>) -> Complex<T> {
        let point = RationalPoint {
            num: u.to_vec(),
            den: level,
        };
        self.phases(alg, &point).to_complex_with(roots)
    }
}

/// `φ^σ_b(a)`.
pub fn evaluate<T: Scalar>(alg: &Algebra, family: SignHomomorphism, weight: &[i64], point: &RationalPoint) -> Complex<T> {
    OrbitFunction::new(alg, family, weight).evaluate(alg, point)
}

/// Tabulates `φ` on every point of `grid`, in grid order.
pub fn evaluate_on_grid<T: Scalar>(alg: &Algebra, func: &OrbitFunction, grid: &PointGrid) -> Result<SampleTable<T>> {
    check_family_variant(func.family(), grid.variant)?;
    if grid.spec != alg.spec() {
        return Err(Error::VariantMismatch(format!("grid for {} used with {}", grid.spec, alg.spec())));
    }
    let roots = UnitRoots::new(alg.roots().det() * grid.level);
    let values = grid
        .points
        .iter()
        .map(|p| func.evaluate_at_grid(alg, p.coords(), grid.level, &roots))
        .collect();
    SampleTable::new(grid, values)
}

pub(crate) fn check_family_variant(family: SignHomomorphism, variant: Variant) -> Result<()> {
    match (family, variant) {
        (SignHomomorphism::Short, Variant::Long) | (SignHomomorphism::Long, Variant::Short) => Err(Error::VariantMismatch(format!(
            "{} functions cannot be sampled on the {} grid",
            family, variant
        ))),
        _ => Ok(()),
    }
}

/// Image of the weight `t` under generator `i` of the dual affine Weyl group
/// at level `M`: `r_i t` for `i ≥ 1`, `M·r∨_0(t/M)` for `i = 0`.
pub fn dual_generator_image(alg: &Algebra, i: usize, t: &[i64], level: i64) -> Vec<i64> {
    if i == 0 {
        alg.group().dual_affine_generator_action().apply(t, level)
    } else {
        alg.group().generators()[i - 1].act_weight(t)
    }
}

/// Which identity a symmetry check exercised.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SymmetryIdentity {
    /// `φ_b(wa) = σ(w) φ_b(a)`
    PointAction,
    /// `φ_{wb}(a) = σ(w) φ_b(a)`
    WeightAction,
    /// `φ_b(a + q∨) = φ_b(a)`
    CorootShift,
    /// `φ_b(r a) = σ(ψ(r)) φ_b(a)` for the affine generators `r ∈ R`
    AffineGenerator,
    /// `conj φ_b(a) = φ_{-b}(a)`
    Conjugation,
}

impl fmt::Display for SymmetryIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::PointAction => "phi_b(w a) = sigma(w) phi_b(a)",
            Self::WeightAction => "phi_{w b}(a) = sigma(w) phi_b(a)",
            Self::CorootShift => "phi_b(a + q) = phi_b(a)",
            Self::AffineGenerator => "phi_b(r a) = sigma(psi(r)) phi_b(a)",
            Self::Conjugation => "conj(phi_b(a)) = phi_{-b}(a)",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SymmetryViolation {
    pub identity: SymmetryIdentity,
    pub weight: Vec<i64>,
    pub point: String,
    pub detail: String,
    pub deviation: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SymmetryReport {
    pub family: String,
    pub trials: usize,
    pub checks: usize,
    pub max_deviation: f64,
    pub violation: Option<SymmetryViolation>,
}

impl SymmetryReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

fn random_point<R: Rng + ?Sized>(rng: &mut R, n: usize) -> RationalPoint {
    let den = rng.gen_range(1..=24);
    let num = (0..n).map(|_| rng.gen_range(-3 * den..=3 * den)).collect();
    RationalPoint::new(num, den)
}

/// Randomized checks of the (anti)symmetry, shift invariance, affine
/// generator and conjugation identities. Stops at the first violation.
pub fn check_symmetries<R: Rng + ?Sized>(alg: &Algebra, family: SignHomomorphism, trials: usize, rng: &mut R) -> SymmetryReport {
    let n = alg.rank();
    let group = alg.group();
    let tol = tolerance::IDENTITY_ABS;
    let mut report = SymmetryReport {
        family: family.to_string(),
        trials,
        checks: 0,
        max_deviation: 0.0,
        violation: None,
    };
    for _ in 0..trials {
        let b: Vec<i64> = (0..n).map(|_| rng.gen_range(-8..=8)).collect();
        let a = random_point(rng, n);
        let w = &group.elements()[rng.gen_range(0..group.order())];
        let q: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
        let f = OrbitFunction::new(alg, family, &b);
        let base: Complex<f64> = f.evaluate(alg, &a);
        let sign = w.sign(family) as f64;

        let mut cases: Vec<(SymmetryIdentity, Complex<f64>, Complex<f64>, String)> = vec![
            (
                SymmetryIdentity::PointAction,
                f.evaluate(alg, &a.act(w)),
                base * sign,
                format!("w = {:?}", w.weight_matrix()),
            ),
            (
                SymmetryIdentity::WeightAction,
                OrbitFunction::new(alg, family, &w.act_weight(&b)).evaluate(alg, &a),
                base * sign,
                format!("w = {:?}", w.weight_matrix()),
            ),
            (
                SymmetryIdentity::CorootShift,
                f.evaluate(alg, &a.shift_by_coroots(alg, &q)),
                base,
                format!("q = {q:?}"),
            ),
            (
                SymmetryIdentity::Conjugation,
                base.conj(),
                OrbitFunction::new(alg, family, &b.iter().map(|x| -x).collect::<Vec<_>>()).evaluate(alg, &a),
                String::new(),
            ),
        ];
        for i in 0..=n {
            let s = group.retraction(i).sign(family) as f64;
            cases.push((
                SymmetryIdentity::AffineGenerator,
                f.evaluate(alg, &a.reflect_affine(alg, i)),
                base * s,
                format!("r_{i}"),
            ));
        }
        for (identity, lhs, rhs, detail) in cases {
            let dev = (lhs - rhs).norm();
            report.checks += 1;
            report.max_deviation = report.max_deviation.max(dev);
            if dev.is_nan() || dev > tol {
                report.violation = Some(SymmetryViolation {
                    identity,
                    weight: b.clone(),
                    point: a.to_string(),
                    detail,
                    deviation: dev,
                });
                return report;
            }
        }
    }
    report
}

/// Both sides of `φ^σ_λ(a)·φ^σ_λ′(a) = Σ_w σ(w) Φ_{λ + wλ′}(a)`, with `Φ` the
/// C-function.
pub fn product_decompose<T: Scalar>(
    alg: &Algebra,
    lambda: &[i64],
    lambda_prime: &[i64],
    family: SignHomomorphism,
    point: &RationalPoint,
) -> (Complex<T>, Complex<T>) {
    let left = evaluate::<T>(alg, family, lambda, point) * evaluate::<T>(alg, family, lambda_prime, point);
    // Group the C-function weights first so each distinct Φ is evaluated once.
    let mut weights: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    for w in alg.group().iter() {
        let mu: Vec<i64> = lambda.iter().zip(w.act_weight(lambda_prime)).map(|(a, b)| a + b).collect();
        *weights.entry(mu).or_insert(0) += w.sign(family);
    }
    let right = weights.iter().filter(|(_, m)| **m != 0).fold(Complex::zero(), |acc, (mu, m)| {
        acc + evaluate::<T>(alg, SignHomomorphism::Identity, mu, point) * T::from_i64_exact(*m)
    });
    (left, right)
}

//! The finite Weyl group as exact integer matrices.
//!
//! Every element carries two matrices: its action on ω-coordinates of weights
//! and its action on ω∨-coordinates of points. Both are built from the same
//! generator words, so `⟨w·λ, w·x⟩ = ⟨λ, x⟩` holds exactly.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::matrix::IntMatrix;
use crate::rootsystem::RootSystem;
use crate::{Error, Rational, Result};

/// One of the four admissible homomorphisms `W → {±1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SignHomomorphism {
    /// Trivial character; gives C-functions.
    Identity,
    /// Determinant; gives S-functions.
    Determinant,
    /// `-1` on short simple reflections; gives S^s-functions.
    Short,
    /// `-1` on long simple reflections; gives S^l-functions.
    Long,
}

impl SignHomomorphism {
    pub const ALL: [SignHomomorphism; 4] = [Self::Identity, Self::Determinant, Self::Short, Self::Long];

    /// Family name used on the command line: `C`, `S`, `Ss`, `Sl`.
    pub fn family_name(self) -> &'static str {
        match self {
            Self::Identity => "C",
            Self::Determinant => "S",
            Self::Short => "Ss",
            Self::Long => "Sl",
        }
    }
}

impl fmt::Display for SignHomomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.family_name())
    }
}

impl FromStr for SignHomomorphism {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "C" | "c" | "1" | "identity" => Ok(Self::Identity),
            "S" | "e" | "determinant" => Ok(Self::Determinant),
            "Ss" | "ss" | "s" | "short" => Ok(Self::Short),
            "Sl" | "sl" | "l" | "long" => Ok(Self::Long),
            other => Err(Error::Parse(format!("orbit function family {other:?}; expected C, S, Ss or Sl"))),
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct WeylElement {
    weight: IntMatrix,
    coweight: IntMatrix,
    sign_e: i8,
    sign_s: i8,
    sign_l: i8,
}

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        WeylElement {
            weight: IntMatrix::identity(n),
            coweight: IntMatrix::identity(n),
            sign_e: 1,
            sign_s: 1,
            sign_l: 1,
        }
    }

    /// Matrix acting on ω-coordinates of weights (column vectors).
    pub fn weight_matrix(&self) -> &IntMatrix {
        &self.weight
    }

    /// Matrix acting on ω∨-coordinates of points (column vectors).
    pub fn coweight_matrix(&self) -> &IntMatrix {
        &self.coweight
    }

    pub fn act_weight(&self, t: &[i64]) -> Vec<i64> {
        self.weight.mul_vec(t)
    }

    /// Linear action on point numerators; the level is unchanged.
    pub fn act_point(&self, u: &[i64]) -> Vec<i64> {
        self.coweight.mul_vec(u)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        WeylElement {
            weight: self.weight.mul(&other.weight),
            coweight: self.coweight.mul(&other.coweight),
            sign_e: self.sign_e * other.sign_e,
            sign_s: self.sign_s * other.sign_s,
            sign_l: self.sign_l * other.sign_l,
        }
    }

    pub fn sign(&self, sigma: SignHomomorphism) -> i64 {
        match sigma {
            SignHomomorphism::Identity => 1,
            SignHomomorphism::Determinant => self.sign_e as i64,
            SignHomomorphism::Short => self.sign_s as i64,
            SignHomomorphism::Long => self.sign_l as i64,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.weight == IntMatrix::identity(self.weight.dim())
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeylElement")
            .field("weight", &self.weight)
            .field("signs", &(self.sign_e, self.sign_s, self.sign_l))
            .finish()
    }
}

/// Reflection `r_i` in the `i`-th simple root, `1 ≤ i ≤ n`.
pub fn simple_reflection(rs: &RootSystem, i: usize) -> Result<WeylElement> {
    let n = rs.rank();
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, rank: n });
    }
    let c = rs.cartan();
    let k = i - 1;
    // Weights: t_j ↦ t_j - t_i C_ij. Points: u_j ↦ u_j - u_i C_ji.
    let mut weight = IntMatrix::identity(n);
    let mut coweight = IntMatrix::identity(n);
    for j in 0..n {
        weight[(j, k)] -= c[(k, j)];
        coweight[(j, k)] -= c[(j, k)];
    }
    let short = rs.is_short(i);
    Ok(WeylElement {
        weight,
        coweight,
        sign_e: -1,
        sign_s: if short { -1 } else { 1 },
        sign_l: if short { 1 } else { -1 },
    })
}

/// Linear matrices of the reflection in a root given in the simple-root basis.
/// Signs are left for the caller.
fn root_reflection_matrices(rs: &RootSystem, root: &[Rational]) -> (IntMatrix, IntMatrix) {
    let n = rs.rank();
    let gram = rs.gram();
    let norm = rs.inner_roots(root, root);
    let two = Rational::from_integer(2);
    // λ ↦ λ - ⟨λ, β∨⟩ β with ⟨ω_i, β∨⟩ = b_i |α_i|² / |β|².
    let root_w = rs.root_to_weight(root);
    // x ↦ x - ⟨x, β⟩ β∨ with ⟨ω∨_j, β⟩ = b_j and β∨ = 2β/|β|² in ω∨ coordinates.
    let gb = gram.mul_vec(root);
    let mut weight = IntMatrix::identity(n);
    let mut coweight = IntMatrix::identity(n);
    for j in 0..n {
        for i in 0..n {
            let wv = root[i] * gram[(i, i)] / norm * root_w[j];
            assert!(wv.is_integer(), "reflection matrix must be integral");
            weight[(j, i)] -= wv.to_integer();
            let cv = two * gb[j] / norm * root[i];
            assert!(cv.is_integer(), "reflection matrix must be integral");
            coweight[(j, i)] -= cv.to_integer();
        }
    }
    (weight, coweight)
}

/// Affine map `λ ↦ r_η λ + M·β` at level `M`, where `β = 2η/|η|²`.
#[derive(Debug, Clone)]
pub struct DualAffineReflection {
    pub linear: WeylElement,
    /// `β = 2η/|η|²` in ω-coordinates (always a short root, hence integral).
    pub translation: Vec<i64>,
}

impl DualAffineReflection {
    pub fn apply(&self, t: &[i64], level: i64) -> Vec<i64> {
        self.linear
            .act_weight(t)
            .into_iter()
            .zip(&self.translation)
            .map(|(a, b)| a + level * b)
            .collect()
    }
}

/// Affine reflection `r_0 x = r_ξ x + ξ∨` acting on point numerators at level `M`.
#[derive(Debug, Clone)]
pub struct AffineReflection {
    pub linear: WeylElement,
    /// `ξ∨ = 2ξ/|ξ|²` in ω∨-coordinates.
    pub translation: Vec<i64>,
}

impl AffineReflection {
    pub fn apply(&self, u: &[i64], level: i64) -> Vec<i64> {
        self.linear
            .act_point(u)
            .into_iter()
            .zip(&self.translation)
            .map(|(a, b)| a + level * b)
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct WeylGroup {
    elements: Vec<WeylElement>,
    generators: Vec<WeylElement>,
    affine: AffineReflection,
    dual_affine: DualAffineReflection,
}

pub fn generate_group(rs: &RootSystem) -> WeylGroup {
    let n = rs.rank();
    let generators: Vec<WeylElement> = (1..=n).map(|i| simple_reflection(rs, i).expect("index in range")).collect();
    let elements = closure(n, generators.iter());

    let xi = rs.highest_root();
    let (w, c) = root_reflection_matrices(rs, &xi);
    let r_xi = WeylElement {
        weight: w,
        coweight: c,
        sign_e: -1,
        sign_s: 1,
        sign_l: -1,
    };
    let norm_xi = rs.inner_roots(&xi, &xi);
    let xi_dual: Vec<i64> = rs
        .gram()
        .mul_vec(&xi)
        .into_iter()
        .map(|x| {
            let v = Rational::from_integer(2) * x / norm_xi;
            assert!(v.is_integer());
            v.to_integer()
        })
        .collect();

    let eta = rs.highest_dual_root();
    let (w, c) = root_reflection_matrices(rs, &eta);
    let r_eta = WeylElement {
        weight: w,
        coweight: c,
        sign_e: -1,
        sign_s: -1,
        sign_l: 1,
    };
    let norm_eta = rs.inner_roots(&eta, &eta);
    let beta: Vec<Rational> = eta.iter().map(|&x| Rational::from_integer(2) * x / norm_eta).collect();
    let translation: Vec<i64> = rs
        .root_to_weight(&beta)
        .into_iter()
        .map(|x| {
            assert!(x.is_integer());
            x.to_integer()
        })
        .collect();

    let group = WeylGroup {
        elements,
        generators,
        affine: AffineReflection {
            linear: r_xi,
            translation: xi_dual,
        },
        dual_affine: DualAffineReflection {
            linear: r_eta,
            translation,
        },
    };
    // The signs attached to r_ξ and r_η above are asserted, not derived; make
    // sure the same matrices appear in the group with those signs.
    for r in [&group.affine.linear, &group.dual_affine.linear] {
        let found = group.find(r.weight_matrix()).expect("root reflection lies in W");
        assert!(found == r, "sign values of r_ξ / r_η disagree with the generated group");
    }
    group
}

/// Breadth-first closure; deduplicates on the full weight matrix.
fn closure<'a>(n: usize, generators: impl Iterator<Item = &'a WeylElement>) -> Vec<WeylElement> {
    let gens: Vec<&WeylElement> = generators.collect();
    let mut seen: HashMap<IntMatrix, ()> = HashMap::new();
    let id = WeylElement::identity(n);
    seen.insert(id.weight.clone(), ());
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in &gens {
            let h = g.compose(s);
            if seen.insert(h.weight.clone(), ()).is_none() {
                out.push(h.clone());
                queue.push_back(h);
            }
        }
    }
    out
}

/// Order of the subgroup generated by `generators`.
pub fn parabolic_order<'a>(n: usize, generators: impl IntoIterator<Item = &'a WeylElement>) -> usize {
    let gens: Vec<&WeylElement> = generators.into_iter().collect();
    closure(n, gens.into_iter()).len()
}

impl WeylGroup {
    pub fn rank(&self) -> usize {
        self.generators[0].weight.dim()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn iter(&self) -> std::slice::Iter<'_, WeylElement> {
        self.elements.iter()
    }

    /// Simple reflections `r_1, …, r_n` (0-based slice).
    pub fn generators(&self) -> &[WeylElement] {
        &self.generators
    }

    /// `r_ξ = ψ(r_0)`.
    pub fn highest_root_reflection(&self) -> &WeylElement {
        &self.affine.linear
    }

    /// `r_η = ψ̂(r∨_0)`.
    pub fn highest_dual_root_reflection(&self) -> &WeylElement {
        &self.dual_affine.linear
    }

    pub fn affine_reflection(&self) -> &AffineReflection {
        &self.affine
    }

    pub fn dual_affine_generator_action(&self) -> &DualAffineReflection {
        &self.dual_affine
    }

    /// Linear part of generator `i` of `R` (`i = 0` is `r_0`).
    pub fn retraction(&self, i: usize) -> &WeylElement {
        if i == 0 {
            &self.affine.linear
        } else {
            &self.generators[i - 1]
        }
    }

    /// Linear part of generator `i` of `R∨` (`i = 0` is `r∨_0`).
    pub fn dual_retraction(&self, i: usize) -> &WeylElement {
        if i == 0 {
            &self.dual_affine.linear
        } else {
            &self.generators[i - 1]
        }
    }

    pub fn find(&self, weight_matrix: &IntMatrix) -> Option<&WeylElement> {
        self.elements.iter().find(|e| &e.weight == weight_matrix)
    }

    pub fn sign_sum(&self, sigma: SignHomomorphism) -> i64 {
        self.elements.iter().map(|w| w.sign(sigma)).sum()
    }

    /// Inverse of an element, looked up in the group.
    pub fn inverse(&self, w: &WeylElement) -> &WeylElement {
        let id = IntMatrix::identity(self.rank());
        self.elements
            .iter()
            .find(|v| v.weight.mul(&w.weight) == id)
            .expect("every element has an inverse")
    }
}

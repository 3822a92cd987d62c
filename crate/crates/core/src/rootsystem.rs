//! Root data for the simple algebras with two root lengths.
//!
//! Simple roots follow the Bourbaki numbering: for `B_n` the last root is
//! short, for `C_n` the last root is long, for `G_2` the first root is long
//! and for `F_4` the first two roots are long. Long roots have squared length
//! 2, so a long root coincides with its coroot.
//!
//! Coordinates used throughout the crate:
//! - weights `λ = Σ t_i ω_i` are integer vectors `t` in the ω-basis,
//! - points `x = Σ (u_j / M) ω∨_j` are integer vectors `u` at level `M`,
//! - the Cartan matrix is `C_ij = ⟨α_i, α_j∨⟩`, so `⟨ω_i, ω∨_j⟩ = (C⁻¹)_ij`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::matrix::{IntMatrix, RatMatrix};
use crate::{Error, Rational, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    B,
    C,
    G2,
    F4,
}

/// An algebra label: family plus rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AlgebraSpec {
    family: Family,
    rank: usize,
}

impl AlgebraSpec {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::B => rank >= 3,
            Family::C => rank >= 2,
            Family::G2 => rank == 2,
            Family::F4 => rank == 4,
        };
        if ok {
            Ok(AlgebraSpec { family, rank })
        } else {
            Err(Error::Unsupported(Self::label(family, rank)))
        }
    }

    pub fn b(rank: usize) -> Result<Self> {
        Self::new(Family::B, rank)
    }

    pub fn c(rank: usize) -> Result<Self> {
        Self::new(Family::C, rank)
    }

    pub fn g2() -> Self {
        AlgebraSpec {
            family: Family::G2,
            rank: 2,
        }
    }

    pub fn f4() -> Self {
        AlgebraSpec {
            family: Family::F4,
            rank: 4,
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Compact name as accepted by [`FromStr`], e.g. `C2`, `B3`, `G2`, `F4`.
    pub fn name(&self) -> String {
        match self.family {
            Family::B => format!("B{}", self.rank),
            Family::C => format!("C{}", self.rank),
            Family::G2 => "G2".into(),
            Family::F4 => "F4".into(),
        }
    }

    fn label(family: Family, rank: usize) -> String {
        match family {
            Family::B => format!("B_{rank}"),
            Family::C => format!("C_{rank}"),
            Family::G2 => format!("G_2 (rank {rank})"),
            Family::F4 => format!("F_4 (rank {rank})"),
        }
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::B => write!(f, "B_{}", self.rank),
            Family::C => write!(f, "C_{}", self.rank),
            Family::G2 => write!(f, "G_2"),
            Family::F4 => write!(f, "F_4"),
        }
    }
}

impl FromStr for AlgebraSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("algebra name {s:?}; expected B<n>, C<n>, G2 or F4"));
        let mut chars = s.chars();
        let head = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
        let rest = chars.as_str().trim_start_matches('_');
        let rank: usize = rest.parse().map_err(|_| bad())?;
        let family = match head {
            'B' => Family::B,
            'C' => Family::C,
            'G' if rank == 2 => Family::G2,
            'F' if rank == 4 => Family::F4,
            'G' | 'F' => return Err(Error::Unsupported(s.to_string())),
            _ => return Err(bad()),
        };
        AlgebraSpec::new(family, rank)
    }
}

/// Index sets of the affine generators `R = R^s ∪ R^l` and the dual affine
/// generators `R∨ = R^s∨ ∪ R^l∨`. Index 0 is the affine generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorPartition {
    pub short: Vec<usize>,
    pub long: Vec<usize>,
    pub short_dual: Vec<usize>,
    pub long_dual: Vec<usize>,
}

/// Immutable root-system constants for one algebra.
#[derive(Debug, Clone)]
pub struct RootSystem {
    spec: AlgebraSpec,
    cartan: IntMatrix,
    cartan_adjugate: IntMatrix,
    det: i64,
    gram: RatMatrix,
    marks: Vec<i64>,
    dual_marks: Vec<i64>,
    short_simple: Vec<usize>,
    long_simple: Vec<usize>,
}

/// Squared length of a short simple root.
fn short_length(family: Family) -> Rational {
    match family {
        Family::G2 => Rational::new(2, 3),
        _ => Rational::one(),
    }
}

pub fn build_algebra(spec: AlgebraSpec) -> Result<RootSystem> {
    let n = spec.rank();
    // 1-based indices of short simple roots.
    let short_simple: Vec<usize> = match spec.family() {
        Family::B => vec![n],
        Family::C => (1..n).collect(),
        Family::G2 => vec![2],
        Family::F4 => vec![3, 4],
    };
    let long_simple: Vec<usize> = (1..=n).filter(|i| !short_simple.contains(i)).collect();

    // Dynkin chain: consecutive roots are joined; ⟨α_i, α_{i+1}⟩ is fixed by
    // the longer of the two lengths and the bond multiplicity.
    let sq = |i: usize| -> Rational {
        if short_simple.contains(&i) {
            short_length(spec.family())
        } else {
            Rational::from_integer(2)
        }
    };
    let mut gram = RatMatrix::zeros(n);
    for i in 1..=n {
        gram[(i - 1, i - 1)] = sq(i);
    }
    for i in 1..n {
        let (a, b) = (sq(i), sq(i + 1));
        // ⟨α_i, α_{i+1}⟩ = -max(|α_i|², |α_{i+1}|²) / 2 for every chain bond.
        let inner = -std::cmp::max(a, b) / Rational::from_integer(2);
        gram[(i - 1, i)] = inner;
        gram[(i, i - 1)] = inner;
    }

    let mut cartan = IntMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let v = Rational::from_integer(2) * gram[(i, j)] / gram[(j, j)];
            debug_assert!(v.is_integer());
            cartan[(i, j)] = v.to_integer();
        }
    }
    let det = cartan.determinant();
    let cartan_adjugate = cartan.adjugate();

    let (marks, dual_marks): (Vec<i64>, Vec<i64>) = match spec.family() {
        Family::B => {
            let mut m = vec![2; n];
            m[0] = 1;
            let mut d = vec![2; n];
            d[n - 1] = 1;
            (m, d)
        }
        Family::C => {
            let mut m = vec![2; n];
            m[n - 1] = 1;
            let mut d = vec![2; n];
            d[0] = 1;
            (m, d)
        }
        Family::G2 => (vec![2, 3], vec![3, 2]),
        Family::F4 => (vec![2, 3, 4, 2], vec![2, 4, 3, 2]),
    };

    Ok(RootSystem {
        spec,
        cartan,
        cartan_adjugate,
        det,
        gram,
        marks,
        dual_marks,
        short_simple,
        long_simple,
    })
}

impl RootSystem {
    pub fn spec(&self) -> AlgebraSpec {
        self.spec
    }

    pub fn rank(&self) -> usize {
        self.spec.rank()
    }

    pub fn cartan(&self) -> &IntMatrix {
        &self.cartan
    }

    pub fn cartan_adjugate(&self) -> &IntMatrix {
        &self.cartan_adjugate
    }

    /// `c = det C`, the index of `Q` in `P`.
    pub fn det(&self) -> i64 {
        self.det
    }

    /// `⟨α_i, α_j⟩` with long roots of squared length 2.
    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }

    pub fn marks(&self) -> &[i64] {
        &self.marks
    }

    pub fn dual_marks(&self) -> &[i64] {
        &self.dual_marks
    }

    /// 1-based indices of short simple roots.
    pub fn short_simple(&self) -> &[usize] {
        &self.short_simple
    }

    /// 1-based indices of long simple roots.
    pub fn long_simple(&self) -> &[usize] {
        &self.long_simple
    }

    pub fn is_short(&self, i: usize) -> bool {
        self.short_simple.contains(&i)
    }

    pub fn coxeter(&self) -> i64 {
        1 + self.marks.iter().sum::<i64>()
    }

    /// `m^s`: sum of marks over short simple roots.
    pub fn m_s(&self) -> i64 {
        self.short_simple.iter().map(|&i| self.marks[i - 1]).sum()
    }

    /// `m^l`: sum of marks over long simple roots, plus one for `r_0`.
    pub fn m_l(&self) -> i64 {
        1 + self.long_simple.iter().map(|&i| self.marks[i - 1]).sum::<i64>()
    }

    /// `m^s∨`: sum of dual marks over short simple roots, plus one for `r∨_0`.
    pub fn m_s_dual(&self) -> i64 {
        1 + self.short_simple.iter().map(|&i| self.dual_marks[i - 1]).sum::<i64>()
    }

    /// `m^l∨`: sum of dual marks over long simple roots.
    pub fn m_l_dual(&self) -> i64 {
        self.long_simple.iter().map(|&i| self.dual_marks[i - 1]).sum()
    }

    pub fn generator_partition(&self) -> GeneratorPartition {
        let mut long = vec![0];
        long.extend_from_slice(&self.long_simple);
        let mut short_dual = vec![0];
        short_dual.extend_from_slice(&self.short_simple);
        GeneratorPartition {
            short: self.short_simple.clone(),
            long,
            short_dual,
            long_dual: self.long_simple.clone(),
        }
    }

    /// `⟨λ, x⟩ mod 1` for `λ = Σ t_i ω_i` and `x = Σ (u_j/M) ω∨_j`, returned
    /// in `[0, 1)`.
    pub fn pairing(&self, t: &[i64], u: &[i64], level: i64) -> Rational {
        assert!(level >= 1, "level must be positive");
        let n = self.rank();
        assert_eq!(t.len(), n);
        assert_eq!(u.len(), n);
        let denom = level * self.det;
        let num = self.pairing_numerator(t, u);
        Rational::new(num.mod_floor(&(denom as i128)) as i64, denom)
    }

    /// `tᵀ · adj(C) · u` without reduction.
    pub fn pairing_numerator(&self, t: &[i64], u: &[i64]) -> i128 {
        let adj_u = self.cartan_adjugate.mul_vec(u);
        t.iter().zip(&adj_u).map(|(&a, &b)| a as i128 * b as i128).sum()
    }

    /// ω-coordinates of a vector given in the simple-root basis.
    pub fn root_to_weight(&self, root_coords: &[Rational]) -> Vec<Rational> {
        let ct = self.cartan.transpose().to_rational();
        ct.mul_vec(root_coords)
    }

    /// `⟨a, b⟩` for two vectors in the simple-root basis.
    pub fn inner_roots(&self, a: &[Rational], b: &[Rational]) -> Rational {
        let gb = self.gram.mul_vec(b);
        a.iter().zip(&gb).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
    }

    /// Highest root `ξ` in the simple-root basis.
    pub fn highest_root(&self) -> Vec<Rational> {
        self.marks.iter().map(|&m| Rational::from_integer(m)).collect()
    }

    /// Highest dual root `η = Σ m∨_i α∨_i`, rewritten in the simple-root basis.
    pub fn highest_dual_root(&self) -> Vec<Rational> {
        self.dual_marks
            .iter()
            .enumerate()
            .map(|(i, &m)| Rational::from_integer(2 * m) / self.gram[(i, i)])
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_specs() -> Vec<AlgebraSpec> {
        let mut v = vec![];
        for n in 3..=6 {
            v.push(AlgebraSpec::b(n).unwrap());
        }
        for n in 2..=6 {
            v.push(AlgebraSpec::c(n).unwrap());
        }
        v.push(AlgebraSpec::g2());
        v.push(AlgebraSpec::f4());
        v
    }

    #[test]
    fn c2_constants() {
        let rs = build_algebra(AlgebraSpec::c(2).unwrap()).unwrap();
        assert_eq!(rs.coxeter(), 4);
        assert_eq!(rs.det(), 2);
        assert_eq!((rs.m_s(), rs.m_l()), (2, 2));
        assert_eq!(rs.cartan(), &IntMatrix::from_rows(&[vec![2, -1], vec![-2, 2]]));
    }

    #[test]
    fn g2_and_f4_constants() {
        let g2 = build_algebra(AlgebraSpec::g2()).unwrap();
        assert_eq!((g2.m_s(), g2.m_l()), (3, 3));
        assert_eq!(g2.det(), 1);
        assert_eq!(g2.coxeter(), 6);
        let f4 = build_algebra(AlgebraSpec::f4()).unwrap();
        assert_eq!(f4.det(), 1);
        assert_eq!(f4.coxeter(), 12);
        assert_eq!((f4.m_s(), f4.m_l()), (6, 6));
    }

    #[test]
    fn rank_gates() {
        assert!(matches!(AlgebraSpec::b(2), Err(Error::Unsupported(s)) if s == "B_2"));
        assert!(AlgebraSpec::c(1).is_err());
        assert!(AlgebraSpec::new(Family::G2, 3).is_err());
        assert!(AlgebraSpec::new(Family::F4, 2).is_err());
        assert!("B2".parse::<AlgebraSpec>().is_err());
        assert!("E6".parse::<AlgebraSpec>().is_err());
        assert_eq!("c3".parse::<AlgebraSpec>().unwrap(), AlgebraSpec::c(3).unwrap());
        assert_eq!("G2".parse::<AlgebraSpec>().unwrap(), AlgebraSpec::g2());
        assert_eq!("F_4".parse::<AlgebraSpec>().unwrap(), AlgebraSpec::f4());
    }

    #[test]
    fn generator_partitions_match_table() {
        let c2 = build_algebra(AlgebraSpec::c(2).unwrap()).unwrap().generator_partition();
        assert_eq!(c2.short, vec![1]);
        assert_eq!(c2.long, vec![0, 2]);
        assert_eq!(c2.short_dual, vec![0, 1]);
        assert_eq!(c2.long_dual, vec![2]);
        let f4 = build_algebra(AlgebraSpec::f4()).unwrap().generator_partition();
        assert_eq!(f4.short, vec![3, 4]);
        assert_eq!(f4.long, vec![0, 1, 2]);
        let b3 = build_algebra(AlgebraSpec::b(3).unwrap()).unwrap().generator_partition();
        assert_eq!(b3.short, vec![3]);
        assert_eq!(b3.short_dual, vec![0, 3]);
        let g2 = build_algebra(AlgebraSpec::g2()).unwrap().generator_partition();
        assert_eq!(g2.short, vec![2]);
        assert_eq!(g2.long, vec![0, 1]);
    }

    #[test]
    fn structural_invariants_hold_for_every_algebra() {
        for spec in all_specs() {
            let rs = build_algebra(spec).unwrap();
            let n = rs.rank();
            let mut scaled = IntMatrix::identity(n);
            for i in 0..n {
                scaled[(i, i)] = rs.det();
            }
            assert_eq!(rs.cartan().mul(rs.cartan_adjugate()), scaled, "{spec}");
            assert_eq!(rs.cartan_adjugate().mul(rs.cartan()), scaled, "{spec}");
            assert_eq!(rs.coxeter(), 1 + rs.dual_marks().iter().sum::<i64>(), "{spec}");
            assert_eq!(rs.m_s() + rs.m_l(), rs.coxeter(), "{spec}");
            assert_eq!(rs.m_s_dual() + rs.m_l_dual(), rs.coxeter(), "{spec}");
            assert_eq!(rs.m_s(), rs.m_s_dual(), "{spec}");
            assert_eq!(rs.m_l(), rs.m_l_dual(), "{spec}");
            assert!(rs.gram().is_symmetric());
            assert!(rs.gram().determinant() > Rational::zero());
            for &i in rs.long_simple() {
                assert_eq!(rs.gram()[(i - 1, i - 1)], Rational::from_integer(2));
            }
            let mut all: Vec<usize> = rs.short_simple().iter().chain(rs.long_simple()).copied().collect();
            all.sort_unstable();
            assert_eq!(all, (1..=n).collect::<Vec<_>>());
        }
    }

    #[test]
    fn highest_roots_are_dominant_with_expected_lengths() {
        for spec in all_specs() {
            let rs = build_algebra(spec).unwrap();
            let xi = rs.highest_root();
            assert_eq!(rs.inner_roots(&xi, &xi), Rational::from_integer(2), "{spec}: ξ is long");
            for w in rs.root_to_weight(&xi) {
                assert!(w >= Rational::zero(), "{spec}: ξ dominant");
            }
            let eta = rs.highest_dual_root();
            for w in rs.root_to_weight(&eta) {
                assert!(w >= Rational::zero(), "{spec}: η dominant");
            }
            // η = 2β/|β|² for a short root β, so |η|² = 4/|β|².
            let short = short_length(spec.family());
            assert_eq!(rs.inner_roots(&eta, &eta), Rational::from_integer(4) / short, "{spec}");
        }
    }

    #[test]
    fn pairing_of_fundamental_weight_with_fundamental_coweight() {
        // Explicit C_2 realization: α_1 = e1 - e2 (short), α_2 = 2 e2 (long, after
        // rescaling so |α_2|² = 2 the short roots have |·|² = 1).
        // With a = 1/√2: α_1 = a(e1 - e2), α_2 = 2a e2; ω_1 = a e1, ω∨_1 solves
        // ⟨ω∨_1, α_1⟩ = 1, ⟨ω∨_1, α_2⟩ = 0 → ω∨_1 = (1/a) e1. So ⟨ω_1, ω∨_1⟩ = 1.
        let rs = build_algebra(AlgebraSpec::c(2).unwrap()).unwrap();
        let x = rs.pairing(&[1, 0], &[1, 0], 4);
        assert_eq!(x, Rational::new(1, 4));
        assert_eq!(rs.pairing(&[1, 0], &[4, 0], 4), Rational::zero());
        assert_eq!(rs.pairing(&[0, 0], &[3, 1], 7), Rational::zero());
    }

    #[test]
    fn pairing_against_unit_vectors_is_inverse_cartan() {
        for spec in all_specs() {
            let rs = build_algebra(spec).unwrap();
            let n = rs.rank();
            let inv = rs.cartan().to_rational().inverse().unwrap();
            for i in 0..n {
                for j in 0..n {
                    let mut t = vec![0; n];
                    t[i] = 1;
                    let mut u = vec![0; n];
                    u[j] = 5;
                    let expect = inv[(i, j)] - inv[(i, j)].floor();
                    assert_eq!(rs.pairing(&t, &u, 5), expect);
                }
            }
        }
    }

    #[test]
    fn pairing_vanishes_on_coroot_lattice() {
        // q∨ = Σ k_i α∨_i has ω∨ coordinates C·k; P and Q∨ are Z-dual.
        let rs = build_algebra(AlgebraSpec::f4()).unwrap();
        let k = [1, -2, 3, 1];
        let m = 3;
        let u: Vec<i64> = rs.cartan().mul_vec(&k).iter().map(|x| x * m).collect();
        assert_eq!(rs.pairing(&[1, 4, -2, 7], &u, m), Rational::zero());
    }
}

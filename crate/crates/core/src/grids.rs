//! Point grids `F_M`, `F^s_M`, `F^l_M`, weight sets `Λ_M`, `Λ^s_M`, `Λ^l_M`,
//! the torus `(1/M)P∨/Q∨`, and closed-form point counts.
//!
//! A point of `F_M` is stored as `[u_0, u_1, …, u_n]` with
//! `u_0 + Σ m_i u_i = M`; it stands for `x = Σ (u_i/M) ω∨_i`. A weight of
//! `Λ_M` is `[t_0, t_1, …, t_n]` with `t_0 + Σ m∨_i t_i = M`, standing for
//! `λ = Σ t_i ω_i`.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::rootsystem::{AlgebraSpec, Family};
use crate::weylgroup::{parabolic_order, WeylElement};
use crate::{Error, Rational, Result};

/// Which part of the fundamental domain (or its dual) a grid covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    #[serde(rename = "full")]
    Full,
    #[serde(rename = "s")]
    Short,
    #[serde(rename = "l")]
    Long,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Full => "full",
            Variant::Short => "s",
            Variant::Long => "l",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "full" | "F" => Ok(Variant::Full),
            "s" | "short" => Ok(Variant::Short),
            "l" | "long" => Ok(Variant::Long),
            other => Err(Error::Parse(format!("grid variant {other:?}; expected full, s or l"))),
        }
    }
}

/// A point of `F_M` (or `F^s_M`, `F^l_M`) with its orbit size `ε(x)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GridPoint {
    pub u: Vec<i64>,
    pub epsilon: u64,
}

impl GridPoint {
    /// `(u_1, …, u_n)`, the ω∨-numerators at the grid's level.
    pub fn coords(&self) -> &[i64] {
        &self.u[1..]
    }
}

/// A weight of `Λ_M` (or `Λ^s_M`, `Λ^l_M`) with its stabilizer order `h∨_λ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeightRecord {
    pub t: Vec<i64>,
    pub h_dual: u64,
}

impl WeightRecord {
    /// `(t_1, …, t_n)`, the ω-coordinates of the weight.
    pub fn coords(&self) -> &[i64] {
        &self.t[1..]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointGrid {
    pub spec: AlgebraSpec,
    pub level: i64,
    pub variant: Variant,
    pub points: Vec<GridPoint>,
}

impl PointGrid {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn position(&self, u: &[i64]) -> Option<usize> {
        self.points.binary_search_by(|p| p.u.as_slice().cmp(u)).ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSet {
    pub spec: AlgebraSpec,
    pub level: i64,
    pub variant: Variant,
    pub weights: Vec<WeightRecord>,
}

impl WeightSet {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn position(&self, t: &[i64]) -> Option<usize> {
        self.weights.binary_search_by(|w| w.t.as_slice().cmp(t)).ok()
    }
}

/// A class of `(1/M)P∨/Q∨`, as α∨-coordinates reduced into `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusElement {
    pub v: Vec<Rational>,
}

fn check_level(level: i64) -> Result<()> {
    if level < 1 {
        Err(Error::InvalidLevel(level))
    } else {
        Ok(())
    }
}

/// All `[x_0, …, x_n] ≥ 0` with `x_0 + Σ coefs_i x_i = level`, where
/// `strict[i]` forces `x_i ≥ 1`. Lexicographic order.
fn diophantine(coefs: &[i64], strict: &[bool], level: i64) -> Vec<Vec<i64>> {
    fn go(coefs: &[i64], strict: &[bool], remaining: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        let i = cur.len();
        if i == coefs.len() + 1 {
            if remaining >= strict[0] as i64 {
                let mut sol = Vec::with_capacity(cur.len());
                sol.push(remaining);
                sol.extend_from_slice(&cur[1..]);
                out.push(sol);
            }
            return;
        }
        let c = coefs[i - 1];
        let mut x = strict[i] as i64;
        while x * c <= remaining {
            cur.push(x);
            go(coefs, strict, remaining - x * c, cur, out);
            cur.pop();
            x += 1;
        }
    }
    let mut out = Vec::new();
    let mut cur = vec![0];
    go(coefs, strict, level, &mut cur, &mut out);
    out.sort();
    out
}

fn strict_mask(n: usize, indices: &[usize]) -> Vec<bool> {
    let mut m = vec![false; n + 1];
    for &i in indices {
        m[i] = true;
    }
    m
}

fn zero_mask(v: &[i64]) -> u64 {
    v.iter().enumerate().filter(|(_, &x)| x == 0).fold(0, |m, (i, _)| m | (1 << i))
}

/// `ε(x) = |W| / h_x` with `h_x` generated by `ψ(r_i)` for `u_i = 0`.
pub fn orbit_size(alg: &Algebra, u: &[i64]) -> u64 {
    let g = alg.group();
    let gens = (0..u.len()).filter(|&i| u[i] == 0).map(|i| g.retraction(i));
    (g.order() / parabolic_order(alg.rank(), gens)) as u64
}

/// `h∨_λ`, generated by `ψ̂(r∨_i)` for `t_i = 0`.
pub fn stabilizer_order(alg: &Algebra, t: &[i64]) -> u64 {
    let g = alg.group();
    let gens = (0..t.len()).filter(|&i| t[i] == 0).map(|i| g.dual_retraction(i));
    parabolic_order(alg.rank(), gens) as u64
}

pub fn enumerate_points(alg: &Algebra, level: i64, variant: Variant) -> Result<PointGrid> {
    check_level(level)?;
    let rs = alg.roots();
    let n = rs.rank();
    let part = rs.generator_partition();
    let strict = match variant {
        Variant::Full => vec![false; n + 1],
        Variant::Short => strict_mask(n, &part.short),
        Variant::Long => strict_mask(n, &part.long),
    };
    let mut cache: HashMap<u64, u64> = HashMap::new();
    let points = diophantine(rs.marks(), &strict, level)
        .into_iter()
        .map(|u| {
            let epsilon = *cache.entry(zero_mask(&u)).or_insert_with(|| orbit_size(alg, &u));
            GridPoint { u, epsilon }
        })
        .collect();
    Ok(PointGrid {
        spec: alg.spec(),
        level,
        variant,
        points,
    })
}

pub fn enumerate_weights(alg: &Algebra, level: i64, variant: Variant) -> Result<WeightSet> {
    check_level(level)?;
    let rs = alg.roots();
    let n = rs.rank();
    let part = rs.generator_partition();
    let strict = match variant {
        Variant::Full => vec![false; n + 1],
        Variant::Short => strict_mask(n, &part.short_dual),
        Variant::Long => strict_mask(n, &part.long_dual),
    };
    let mut cache: HashMap<u64, u64> = HashMap::new();
    let weights = diophantine(rs.dual_marks(), &strict, level)
        .into_iter()
        .map(|t| {
            let h_dual = *cache.entry(zero_mask(&t)).or_insert_with(|| stabilizer_order(alg, &t));
            WeightRecord { t, h_dual }
        })
        .collect();
    Ok(WeightSet {
        spec: alg.spec(),
        level,
        variant,
        weights,
    })
}

/// Canonical key of a point `u/M`: numerators of its α∨-coordinates mod `c·M`.
fn torus_key(alg: &Algebra, u: &[i64], level: i64) -> Vec<i64> {
    let modulus = alg.roots().det() * level;
    alg.roots()
        .cartan_adjugate()
        .mul_vec(u)
        .into_iter()
        .map(|k| k.mod_floor(&modulus))
        .collect()
}

/// `W·F_M`, deduplicated modulo `Q∨`. Fails if the count differs from `c·M^n`.
pub fn enumerate_torus(alg: &Algebra, level: i64) -> Result<Vec<TorusElement>> {
    let grid = enumerate_points(alg, level, Variant::Full)?;
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    for p in &grid.points {
        for w in alg.group().iter() {
            seen.insert(torus_key(alg, &w.act_point(p.coords()), level));
        }
    }
    let expected = alg.torus_order(level) as usize;
    if seen.len() != expected {
        return Err(Error::TorusCount {
            expected,
            found: seen.len(),
        });
    }
    let modulus = alg.roots().det() * level;
    let mut out: Vec<TorusElement> = seen
        .into_iter()
        .map(|k| TorusElement {
            v: k.into_iter().map(|x| Rational::new(x, modulus)).collect(),
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Maps an arbitrary point `u/M` of `(1/M)P∨` to its representative in `F_M`.
///
/// Returns the grid point and an element `w` with `w·x ≡ x'` modulo `Q∨`.
pub fn fold_to_fundamental(alg: &Algebra, level: i64, u: &[i64]) -> Result<(GridPoint, WeylElement)> {
    check_level(level)?;
    let rs = alg.roots();
    let n = rs.rank();
    if u.len() != n {
        return Err(Error::Dimension {
            expected: n,
            found: u.len(),
        });
    }
    let group = alg.group();
    let s: i64 = rs.marks().iter().zip(u).map(|(m, x)| m * x).sum();
    if u.iter().all(|&x| x >= 0) && s <= level {
        let mut full = vec![level - s];
        full.extend_from_slice(u);
        let epsilon = orbit_size(alg, &full);
        return Ok((GridPoint { u: full, epsilon }, WeylElement::identity(n)));
    }
    let c = rs.det();
    // Shift by Q∨ into the half-open parallelepiped spanned by the α∨_i.
    let k = torus_key(alg, u, level);
    let mut cur: Vec<i64> = rs.cartan().mul_vec(&k).into_iter().map(|x| x / c).collect();
    let mut w = WeylElement::identity(n);
    let bound = group.order() * (n + 1);
    let affine = group.affine_reflection();
    for _ in 0..bound {
        if let Some(i) = cur.iter().position(|&x| x < 0) {
            let r = &group.generators()[i];
            cur = r.act_point(&cur);
            w = r.compose(&w);
            continue;
        }
        let s: i64 = rs.marks().iter().zip(&cur).map(|(m, x)| m * x).sum();
        if s > level {
            cur = affine.apply(&cur, level);
            w = affine.linear.compose(&w);
            continue;
        }
        let mut full = Vec::with_capacity(n + 1);
        full.push(level - s);
        full.extend_from_slice(&cur);
        let epsilon = orbit_size(alg, &full);
        return Ok((GridPoint { u: full, epsilon }, w));
    }
    Err(Error::FoldingDiverged(bound))
}

/// `true` if the two points `u/M`, `u'/M` agree modulo `Q∨`.
pub fn same_torus_class(alg: &Algebra, level: i64, u: &[i64], other: &[i64]) -> bool {
    torus_key(alg, u, level) == torus_key(alg, other, level)
}

fn binom(a: i64, b: i64) -> i128 {
    if b < 0 || a < b {
        return 0;
    }
    let b = b.min(a - b);
    let mut r: i128 = 1;
    for i in 0..b {
        r = r * (a - i) as i128 / (i + 1) as i128;
    }
    r
}

fn c_series_short(n: i64, level: i64) -> i128 {
    let k = level / 2;
    if level % 2 == 0 {
        binom(k + 1, n) + binom(k, n)
    } else {
        2 * binom(k + 1, n)
    }
}

fn c_series_long(n: i64, level: i64) -> i128 {
    let k = level / 2;
    if level % 2 == 0 {
        binom(n + k - 1, n) + binom(n + k - 2, n)
    } else {
        2 * binom(n + k - 1, n)
    }
}

fn g2_count(level: i64) -> i128 {
    let k = (level / 6) as i128;
    let base = 3 * k * k;
    base + match level % 6 {
        0 => 0,
        1 => k,
        2 => 2 * k,
        3 => 3 * k + 1,
        4 => 4 * k + 1,
        _ => 5 * k + 2,
    }
}

fn f4_count(level: i64) -> i128 {
    let k = (level / 12) as i128;
    let (k2, k3, k4) = (k * k, k * k * k, k * k * k * k);
    // Twice the polynomial, so half-integer coefficients stay exact.
    let twice = 36 * k4
        + match level % 12 {
            0 => -2 * k2,
            1 => 12 * k3 - 5 * k2 - k,
            2 => 24 * k3 + 4 * k2,
            3 => 36 * k3 + 7 * k2 - k,
            4 => 48 * k3 + 22 * k2 + 4 * k,
            5 => 60 * k3 + 31 * k2 + 5 * k,
            6 => 72 * k3 + 52 * k2 + 16 * k + 2,
            7 => 84 * k3 + 67 * k2 + 21 * k + 2,
            8 => 96 * k3 + 94 * k2 + 40 * k + 6,
            9 => 108 * k3 + 115 * k2 + 51 * k + 8,
            10 => 120 * k3 + 148 * k2 + 80 * k + 16,
            _ => 132 * k3 + 175 * k2 + 99 * k + 20,
        };
    debug_assert!(twice % 2 == 0);
    twice / 2
}

/// Closed-form `|F^s_M|` / `|F^l_M|`. For [`Variant::Full`], `|F_M|` is read
/// off the short-grid formula through `|F_M| = |F^s_{M+m^s}|`.
pub fn closed_form_count(spec: AlgebraSpec, level: i64, variant: Variant) -> Result<u64> {
    check_level(level)?;
    let n = spec.rank() as i64;
    let count = match (spec.family(), variant) {
        (_, Variant::Full) => {
            let m_s = match spec.family() {
                Family::B => 2,
                Family::C => 2 * n - 2,
                Family::G2 => 3,
                Family::F4 => 6,
            };
            return closed_form_count(spec, level + m_s, Variant::Short);
        }
        (Family::C, Variant::Short) | (Family::B, Variant::Long) => c_series_short(n, level),
        (Family::C, Variant::Long) | (Family::B, Variant::Short) => c_series_long(n, level),
        (Family::G2, _) => g2_count(level),
        (Family::F4, _) => f4_count(level),
    };
    u64::try_from(count).map_err(|_| Error::Unsupported(format!("negative closed-form count for {spec} at M = {level}")))
}

//! Independent Euclidean models of `B_n` and `C_n`: the Weyl group is the
//! hyperoctahedral group of signed permutations, and weights/coweights are
//! written out in the standard basis `e_1, …, e_n`. Nothing here touches the
//! library's Cartan-matrix machinery.
#![allow(dead_code)]

use num_complex::Complex64;
use num_rational::Ratio;

pub type Q = Ratio<i64>;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Series {
    B,
    C,
}

/// A signed permutation `e_i ↦ sign_i · e_{perm_i}`.
#[derive(Clone, Debug)]
pub struct Signed {
    pub perm: Vec<usize>,
    pub sign: Vec<i64>,
}

impl Signed {
    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::from_integer(0); v.len()];
        for i in 0..v.len() {
            out[self.perm[i]] = v[i] * self.sign[i];
        }
        out
    }

    fn perm_parity(&self) -> i64 {
        let mut seen = vec![false; self.perm.len()];
        let mut parity = 1;
        for s in 0..self.perm.len() {
            let mut len = 0;
            let mut j = s;
            while !seen[j] {
                seen[j] = true;
                j = self.perm[j];
                len += 1;
            }
            if len > 0 && len % 2 == 0 {
                parity = -parity;
            }
        }
        parity
    }

    fn sign_product(&self) -> i64 {
        self.sign.iter().product()
    }

    /// `(det, σ^s, σ^l)`. Sign flips are reflections in `e_i` (short for B,
    /// long for C); transpositions are reflections in `e_i − e_j`.
    pub fn signs(&self, series: Series) -> (i64, i64, i64) {
        let (p, s) = (self.perm_parity(), self.sign_product());
        match series {
            Series::B => (p * s, s, p),
            Series::C => (p * s, p, s),
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

pub fn hyperoctahedral(n: usize) -> Vec<Signed> {
    let mut out = Vec::new();
    for perm in permutations(n) {
        for mask in 0..(1u32 << n) {
            let sign = (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
            out.push(Signed { perm: perm.clone(), sign });
        }
    }
    out
}

/// `ω_i` in the standard basis.
pub fn fundamental_weight(series: Series, n: usize, i: usize) -> Vec<Q> {
    let half = series == Series::B && i == n;
    (0..n)
        .map(|k| {
            if k < i {
                if half {
                    Q::new(1, 2)
                } else {
                    Q::from_integer(1)
                }
            } else {
                Q::from_integer(0)
            }
        })
        .collect()
}

/// `ω∨_i` in the standard basis.
pub fn fundamental_coweight(series: Series, n: usize, i: usize) -> Vec<Q> {
    let half = series == Series::C && i == n;
    (0..n)
        .map(|k| {
            if k < i {
                if half {
                    Q::new(1, 2)
                } else {
                    Q::from_integer(1)
                }
            } else {
                Q::from_integer(0)
            }
        })
        .collect()
}

pub fn weight(series: Series, t: &[i64]) -> Vec<Q> {
    combine(t.iter().map(|&x| Q::from_integer(x)), |i| fundamental_weight(series, t.len(), i))
}

pub fn coweight(series: Series, u: &[Q]) -> Vec<Q> {
    combine(u.iter().copied(), |i| fundamental_coweight(series, u.len(), i))
}

fn combine(coef: impl Iterator<Item = Q>, basis: impl Fn(usize) -> Vec<Q>) -> Vec<Q> {
    let coef: Vec<Q> = coef.collect();
    let n = coef.len();
    let mut out = vec![Q::from_integer(0); n];
    for (i, c) in coef.iter().enumerate() {
        for (o, b) in out.iter_mut().zip(basis(i + 1)) {
            *o += c * b;
        }
    }
    out
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn frac(x: Q) -> Q {
    x - x.floor()
}

/// `Σ_w σ(w) exp(2πi⟨wλ, x⟩)` summed directly over signed permutations.
/// `which`: 0 = trivial, 1 = det, 2 = σ^s, 3 = σ^l.
pub fn orbit_function(series: Series, which: usize, t: &[i64], x_coweight: &[Q]) -> Complex64 {
    let lam = weight(series, t);
    let x = coweight(series, x_coweight);
    hyperoctahedral(t.len()).iter().fold(Complex64::new(0.0, 0.0), |acc, w| {
        let (e, s, l) = w.signs(series);
        let sign = [1, e, s, l][which] as f64;
        let phase = frac(dot(&w.apply(&lam), &x));
        let angle = std::f64::consts::TAU * (*phase.numer() as f64) / (*phase.denom() as f64);
        acc + Complex64::from_polar(sign, angle)
    })
}

pub fn is_integral(v: &[Q]) -> bool {
    v.iter().all(|x| x.is_integer())
}

/// Root lattice membership in the standard basis: `B_n` has `Q = ℤⁿ`,
/// `C_n` has `Q = {v ∈ ℤⁿ : Σ v even}`.
pub fn in_root_lattice(series: Series, v: &[Q]) -> bool {
    is_integral(v)
        && match series {
            Series::B => true,
            Series::C => v.iter().map(|x| x.to_integer()).sum::<i64>() % 2 == 0,
        }
}

/// Coroot lattice: `B_n` has `Q∨ = {v ∈ ℤⁿ : Σ v even}`, `C_n` has `ℤⁿ`.
pub fn in_coroot_lattice(series: Series, v: &[Q]) -> bool {
    let dual = match series {
        Series::B => Series::C,
        Series::C => Series::B,
    };
    in_root_lattice(dual, v)
}

/// `h∨_λ = #{w : wλ − λ ∈ M·Q}`.
pub fn weight_stabilizer(series: Series, t: &[i64], level: i64) -> usize {
    let lam = weight(series, t);
    hyperoctahedral(t.len())
        .iter()
        .filter(|w| {
            let d: Vec<Q> = w.apply(&lam).iter().zip(&lam).map(|(a, b)| (a - b) / level).collect();
            in_root_lattice(series, &d)
        })
        .count()
}

/// `ε(x) = |W| / #{w : wx − x ∈ Q∨}` for `x = Σ (u_i/M) ω∨_i`.
pub fn point_orbit(series: Series, u: &[i64], level: i64) -> usize {
    let x = coweight(series, &u.iter().map(|&a| Q::new(a, level)).collect::<Vec<_>>());
    let group = hyperoctahedral(u.len());
    let stab = group
        .iter()
        .filter(|w| {
            let d: Vec<Q> = w.apply(&x).iter().zip(&x).map(|(a, b)| a - b).collect();
            in_coroot_lattice(series, &d)
        })
        .count();
    group.len() / stab
}

/// The paper's closed cosine forms for `C_2`, at `x α∨_1 + y α∨_2`.
pub fn c2_explicit(short: bool, a: f64, b: f64, x: f64, y: f64) -> f64 {
    let c = |z: f64| (std::f64::consts::TAU * z).cos();
    let t1 = c((a + 2.0 * b) * x - b * y);
    let t2 = c(a * x + b * y);
    let t3 = c((a + 2.0 * b) * x - (a + b) * y);
    let t4 = c(a * x - (a + b) * y);
    if short {
        2.0 * (t1 + t2 - t3 - t4)
    } else {
        2.0 * (-t1 + t2 - t3 + t4)
    }
}

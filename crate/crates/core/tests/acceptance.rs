//! One test per acceptance criterion; each prints a single
//! `criterion N: PASS|FAIL — …` line before asserting.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use weyl_orbit::grids::{closed_form_count, enumerate_points, enumerate_torus, enumerate_weights};
use weyl_orbit::orbitfun::{check_symmetries, evaluate, product_decompose, OrbitFunction};
use weyl_orbit::rootsystem::build_algebra;
use weyl_orbit::transform::{congruent_mod_root_lattice, verify_exponential_orthogonality, verify_orthogonality, TransformBasis};
use weyl_orbit::{tolerance, Algebra, AlgebraSpec, Complex64, RationalPoint, RootSystem, Samples, SignHomomorphism, Variant};

fn report(n: u32, pass: bool, detail: impl AsRef<str>) {
    println!("criterion {n}: {} — {}", if pass { "PASS" } else { "FAIL" }, detail.as_ref());
    assert!(pass, "criterion {n} failed: {}", detail.as_ref());
}

fn alg(name: &str) -> Algebra {
    name.parse().unwrap()
}

fn family(v: Variant) -> SignHomomorphism {
    match v {
        Variant::Short => SignHomomorphism::Short,
        _ => SignHomomorphism::Long,
    }
}

/// Root data only (no group), so the B/C series can go to high rank.
fn all_supported() -> Vec<RootSystem> {
    let mut specs: Vec<AlgebraSpec> = (3..=16).map(|n| AlgebraSpec::b(n).unwrap()).collect();
    specs.extend((2..=16).map(|n| AlgebraSpec::c(n).unwrap()));
    specs.extend([AlgebraSpec::g2(), AlgebraSpec::f4()]);
    specs.into_iter().map(|s| build_algebra(s).unwrap()).collect()
}

#[test]
fn criterion_01_c2_cardinalities() {
    let start = Instant::now();
    let c2 = alg("C2");
    let fs = enumerate_points(&c2, 4, Variant::Short).unwrap().len();
    let fl = enumerate_points(&c2, 4, Variant::Long).unwrap().len();
    let ls = enumerate_weights(&c2, 4, Variant::Short).unwrap().len();
    let ll = enumerate_weights(&c2, 4, Variant::Long).unwrap().len();
    let torus = enumerate_torus(&c2, 4).unwrap().len();
    let elapsed = start.elapsed();
    let pass = (fs, fl, ls, ll, torus) == (4, 4, 4, 4, 32) && c2.torus_order(4) == 32 && elapsed < Duration::from_secs(1);
    report(
        1,
        pass,
        format!("|F^s_4|={fs} |F^l_4|={fl} |Λ^s_4|={ls} |Λ^l_4|={ll} torus={torus} in {elapsed:?}"),
    );
}

#[test]
fn criterion_02_closed_form_counts() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checked = 0;
    for name in ["B3", "B4", "C2", "C3", "C4", "G2", "F4"] {
        let a = alg(name);
        for m in 1..=12 {
            for v in [Variant::Short, Variant::Long] {
                let f = enumerate_points(&a, m, v).unwrap().len() as u64;
                let l = enumerate_weights(&a, m, v).unwrap().len() as u64;
                let closed = closed_form_count(a.spec(), m, v).unwrap();
                checked += 1;
                if f != closed || l != f {
                    failures.push(format!("{name} M={m} {v}: |F|={f} closed={closed} |Λ|={l}"));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = failures.is_empty() && elapsed < Duration::from_secs(30);
    report(
        2,
        pass,
        format!("{checked} (algebra, M, variant) cases, mismatches {failures:?}, {elapsed:?}"),
    );
}

#[test]
fn criterion_03_coxeter_identities_and_shift_law() {
    let mut failures = Vec::new();
    for rs in all_supported() {
        if rs.m_s() != rs.m_s_dual() || rs.m_l() != rs.m_l_dual() || rs.m_s() + rs.m_l() != rs.coxeter() {
            failures.push(format!(
                "{}: m^s={} m^s∨={} m^l={} m^l∨={}",
                rs.spec(),
                rs.m_s(),
                rs.m_s_dual(),
                rs.m_l(),
                rs.m_l_dual()
            ));
        }
    }
    let mut shifts = 0;
    for name in ["B3", "B4", "C2", "C3", "C4", "G2", "F4"] {
        let a = alg(name);
        for (v, m_sigma) in [(Variant::Short, a.roots().m_s()), (Variant::Long, a.roots().m_l())] {
            for m in (m_sigma + 1)..=12 {
                let lhs = enumerate_points(&a, m, v).unwrap().len();
                let rhs = enumerate_points(&a, m - m_sigma, Variant::Full).unwrap().len();
                shifts += 1;
                if lhs != rhs {
                    failures.push(format!("{name} {v} M={m}: {lhs} vs |F_{}|={rhs}", m - m_sigma));
                }
            }
        }
    }
    report(
        3,
        failures.is_empty(),
        format!(
            "{} algebras, {shifts} shift-law cases, mismatches {failures:?}",
            all_supported().len()
        ),
    );
}

#[test]
fn criterion_04_orthogonality() {
    let start = Instant::now();
    let mut lines = Vec::new();
    let mut pass = true;
    for (name, levels) in [("C2", &[4i64, 5, 8][..]), ("G2", &[6, 7]), ("B3", &[4]), ("F4", &[7])] {
        let a = alg(name);
        for &m in levels {
            for v in [Variant::Short, Variant::Long] {
                let r = verify_orthogonality(&a, m, v).unwrap();
                pass &= r.pass;
                lines.push(format!(
                    "{name}/M={m}/{v}: n={} off={:.1e} diag={:.1e}",
                    r.size, r.max_off_diagonal, r.max_diagonal_rel_error
                ));
            }
        }
    }
    let c2 = verify_orthogonality(&alg("C2"), 4, Variant::Short).unwrap();
    let example = c2
        .entries
        .iter()
        .find(|e| {
            e.lambda == e.lambda_prime
                && enumerate_weights(&alg("C2"), 4, Variant::Short)
                    .unwrap()
                    .weights
                    .iter()
                    .any(|w| w.t == e.lambda && w.h_dual == 1)
        })
        .map(|e| e.value_re);
    pass &= example.is_some_and(|d| (d - 256.0).abs() <= 256.0 * tolerance::GRAM_DIAGONAL_REL);
    let elapsed = start.elapsed();
    pass &= elapsed < Duration::from_secs(120);
    report(
        4,
        pass,
        format!("{}; C2 M=4 s h∨=1 diagonal {example:?}; {elapsed:?}", lines.join(", ")),
    );
}

#[test]
fn criterion_05_exponential_orthogonality() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst: f64 = 0.0;
    let mut deltas = 0;
    for (name, m) in [("C2", 4i64), ("G2", 3)] {
        let a = alg(name);
        let n = a.rank();
        let full = a.torus_order(m) as f64;
        for k in 0..50 {
            let l: Vec<i64> = (0..n).map(|_| rng.gen_range(-9..=9)).collect();
            // Every other pair differs by an element of M·Q, written in ω-coordinates as M·Cᵀq.
            let lp: Vec<i64> = if k % 2 == 0 {
                let q: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
                let shift = a.roots().cartan().vec_mul(&q);
                l.iter().zip(shift).map(|(x, s)| x + m * s).collect()
            } else {
                (0..n).map(|_| rng.gen_range(-9..=9)).collect()
            };
            let delta = congruent_mod_root_lattice(&a, m, &l, &lp);
            deltas += delta as usize;
            let got = verify_exponential_orthogonality(&a, m, &l, &lp).unwrap();
            let expected = if delta { full } else { 0.0 };
            worst = worst.max((got - Complex64::new(expected, 0.0)).norm());
        }
    }
    let elapsed = start.elapsed();
    let pass = worst <= tolerance::EXPONENTIAL_SUM_ABS && deltas >= 50 && elapsed < Duration::from_secs(10);
    report(
        5,
        pass,
        format!("100 pairs ({deltas} congruent), max |sum − c·M^n·δ| = {worst:.2e}, {elapsed:?}"),
    );
}

/// Zero-position pattern of `[x_0, x_1, x_2]` → tabulated coefficient.
fn table(rows: &[(&[usize], u64)]) -> BTreeMap<Vec<usize>, u64> {
    rows.iter().map(|(z, v)| (z.to_vec(), *v)).collect()
}

fn zeros(v: &[i64]) -> Vec<usize> {
    (0..v.len()).filter(|&i| v[i] == 0).collect()
}

#[test]
fn criterion_06_c2_coefficient_table() {
    let c2 = alg("C2");
    let eps_s = table(&[(&[], 8), (&[0], 4), (&[2], 4), (&[0, 2], 2)]);
    let eps_l = table(&[(&[], 8), (&[1], 4)]);
    let h_s = table(&[(&[], 1), (&[2], 2)]);
    let h_l = table(&[(&[], 1), (&[0], 2), (&[1], 2), (&[0, 1], 8)]);
    let mut mismatches = Vec::new();
    let mut matched = 0;
    for m in [4, 5] {
        for (v, eps_tab, h_tab) in [(Variant::Short, &eps_s, &h_s), (Variant::Long, &eps_l, &h_l)] {
            for p in &enumerate_points(&c2, m, v).unwrap().points {
                match eps_tab.get(&zeros(&p.u)) {
                    Some(&e) if e == p.epsilon => matched += 1,
                    other => mismatches.push(format!("M={m} F^{v} {:?}: ε={} table {other:?}", p.u, p.epsilon)),
                }
            }
            for w in &enumerate_weights(&c2, m, v).unwrap().weights {
                match h_tab.get(&zeros(&w.t)) {
                    Some(&h) if h == w.h_dual => matched += 1,
                    other => mismatches.push(format!("M={m} Λ^{v} {:?}: h∨={} table {other:?}", w.t, w.h_dual)),
                }
            }
        }
    }
    // The same table entry fixes the Gram diagonal of [0,0,2] at M = 4.
    let gram = verify_orthogonality(&c2, 4, Variant::Long).unwrap();
    let diag = gram.diagonal(&[0, 0, 2]).map(|e| e.value_re).unwrap_or(f64::NAN);
    if (diag - 2048.0).abs() > 2048.0 * tolerance::GRAM_DIAGONAL_REL {
        mismatches.push(format!("Gram diagonal of [0,0,2] at M=4 = {diag}, table implies 2048"));
    }
    report(
        6,
        mismatches.is_empty(),
        format!("{matched} rows agree; disagreements {mismatches:?}"),
    );
}

#[test]
fn criterion_07_c2_explicit_formulas() {
    let c2 = alg("C2");
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let (a, b) = (rng.gen_range(-8..=8), rng.gen_range(-8..=8));
        let den = rng.gen_range(1..=60);
        let (x, y) = (
            Ratio::new(rng.gen_range(-2 * den..=2 * den), den),
            Ratio::new(rng.gen_range(-2 * den..=2 * den), den),
        );
        let p = RationalPoint::from_coroot_coords(&c2, &[x, y]);
        let (xf, yf) = (*x.numer() as f64 / *x.denom() as f64, *y.numer() as f64 / *y.denom() as f64);
        for (short, fam) in [(true, SignHomomorphism::Short), (false, SignHomomorphism::Long)] {
            let lib: Complex64 = evaluate(&c2, fam, &[a, b], &p);
            worst = worst.max((lib - Complex64::new(common::c2_explicit(short, a as f64, b as f64, xf, yf), 0.0)).norm());
        }
    }
    report(
        7,
        worst <= tolerance::EXPLICIT_FORMULA_ABS,
        format!("100 points × 2 families, max deviation {worst:.2e}"),
    );
}

#[test]
fn criterion_08_boundary_vanishing_and_symmetry() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst: f64 = 0.0;
    let mut boundary_points = 0;
    for (name, m) in [("C2", 8i64), ("G2", 7), ("B3", 6), ("F4", 4)] {
        let a = alg(name);
        let full = enumerate_points(&a, m, Variant::Full).unwrap();
        for v in [Variant::Short, Variant::Long] {
            let inner = enumerate_points(&a, m, v).unwrap();
            let boundary: Vec<_> = full.points.iter().filter(|p| inner.position(&p.u).is_none()).collect();
            boundary_points += boundary.len();
            for _ in 0..50 {
                let lambda: Vec<i64> = (0..a.rank()).map(|_| rng.gen_range(-10..=10)).collect();
                let f = OrbitFunction::new(&a, family(v), &lambda);
                for p in &boundary {
                    let z: Complex64 = f.evaluate(&a, &RationalPoint::from_grid(p.coords(), m));
                    worst = worst.max(z.norm());
                }
            }
        }
    }
    let mut symmetry = Vec::new();
    let mut sym_pass = true;
    for name in ["C2", "G2", "B3", "C3", "F4"] {
        let a = alg(name);
        for fam in [SignHomomorphism::Short, SignHomomorphism::Long] {
            let r = check_symmetries(&a, fam, 30, &mut rng);
            sym_pass &= r.passed() && r.max_deviation <= tolerance::IDENTITY_ABS;
            symmetry.push(format!("{name}/{fam}: {} checks, max {:.1e}", r.checks, r.max_deviation));
        }
    }
    let pass = worst <= tolerance::IDENTITY_ABS && sym_pass;
    report(
        8,
        pass,
        format!("{boundary_points} boundary points, max |φ| {worst:.2e}; {}", symmetry.join(", ")),
    );
}

#[test]
fn criterion_09_roundtrip_and_plancherel() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut worst_rt, mut worst_pl): (f64, f64) = (0.0, 0.0);
    let mut sizes = Vec::new();
    for (name, m) in [("C2", 8i64), ("G2", 7), ("F4", 7)] {
        let a = alg(name);
        for v in [Variant::Short, Variant::Long] {
            let basis = TransformBasis::<f64>::new(&a, m, v).unwrap();
            for _ in 0..5 {
                let f = Samples::from_fn(&basis.grid, |_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
                let back = basis.inverse(&basis.forward(&f).unwrap()).unwrap();
                worst_rt = worst_rt.max(back.max_abs_diff(&f).unwrap() / f.max_abs());
                let (lhs, rhs) = weyl_orbit::transform::plancherel_with(&basis, &f).unwrap();
                worst_pl = worst_pl.max(tolerance::relative_diff(lhs, rhs));
            }
            sizes.push(format!("{name}/M={m}/{v}: {}", basis.grid.len()));
        }
    }
    let elapsed = start.elapsed();
    let pass = worst_rt <= tolerance::ROUNDTRIP_REL && worst_pl <= tolerance::PLANCHEREL_REL && elapsed < Duration::from_secs(60);
    report(
        9,
        pass,
        format!(
            "grids [{}], round-trip {worst_rt:.2e}, Plancherel {worst_pl:.2e}, {elapsed:?}",
            sizes.join(", ")
        ),
    );
}

#[test]
fn criterion_10_product_decomposition() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut worst: f64 = 0.0;
    for name in ["C2", "G2"] {
        let a = alg(name);
        for fam in [SignHomomorphism::Short, SignHomomorphism::Long] {
            for _ in 0..20 {
                let l1: Vec<i64> = (0..2).map(|_| rng.gen_range(-6..=6)).collect();
                let l2: Vec<i64> = (0..2).map(|_| rng.gen_range(-6..=6)).collect();
                let den = rng.gen_range(1..=50);
                let p = RationalPoint::new((0..2).map(|_| rng.gen_range(-3 * den..=3 * den)).collect(), den);
                let (lhs, rhs) = product_decompose::<f64>(&a, &l1, &l2, fam, &p);
                worst = worst.max((lhs - rhs).norm());
            }
        }
    }
    report(
        10,
        worst <= tolerance::PRODUCT_ABS,
        format!("C2, G2 × s, l × 20 points, max deviation {worst:.2e}"),
    );
}

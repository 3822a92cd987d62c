use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use weyl_orbit::grids::{closed_form_count, enumerate_points, enumerate_weights};
use weyl_orbit::io::{self as wio, format_real, Format};
use weyl_orbit::orbitfun::{check_symmetries, evaluate_on_grid, product_decompose, OrbitFunction};
use weyl_orbit::transform::{
    congruent_mod_root_lattice, interpolate, plancherel_with, verify_exponential_orthogonality, verify_orthogonality, TransformBasis,
};
use weyl_orbit::{tolerance, Algebra, AlgebraSpec, Complex64, Family, Rational, RationalPoint, Samples, SignHomomorphism, Variant};

/// Discrete S^s/S^l orbit-function transforms for B_n, C_n, G_2 and F_4.
#[derive(Parser)]
#[command(name = "weyl-orbit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate a point grid or weight set, with ε / h∨ columns.
    Grid(GridArgs),
    /// Print enumerated and closed-form sizes.
    Count(CountArgs),
    /// Tabulate one orbit function on a grid, or at given points.
    Eval(EvalArgs),
    /// Forward transform of a sample file.
    Transform(TransformArgs),
    /// Expand a coefficient file on the grid or at given points.
    Interpolate(InterpolateArgs),
    /// Run a verification suite and write a JSON report.
    Verify(VerifyArgs),
}

#[derive(Args, Clone)]
struct Common {
    /// B<n> (n ≥ 3), C<n> (n ≥ 2), G2 or F4.
    #[arg(long)]
    algebra: String,
    /// Grid level M ≥ 1.
    #[arg(long = "M")]
    level: i64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    Points,
    Weights,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Suite {
    GramS,
    GramL,
    Exp,
    Symmetry,
    Counts,
    Plancherel,
    Product,
    All,
}

#[derive(Args)]
struct GridArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value = "full")]
    variant: String,
    #[arg(long, value_enum, default_value = "points")]
    side: Side,
    #[arg(long, default_value = "csv")]
    format: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CountArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value = "full")]
    variant: String,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    common: Common,
    /// Grid variant to sample on (ignored with --at).
    #[arg(long, default_value = "full")]
    variant: String,
    /// C, S, Ss or Sl.
    #[arg(long)]
    family: String,
    /// Weight in ω-coordinates, e.g. `2,1`.
    #[arg(long, allow_hyphen_values = true)]
    weight: String,
    /// Point in ω∨-coordinates, e.g. `1/3,-2/5`; repeatable.
    #[arg(long, allow_hyphen_values = true)]
    at: Vec<String>,
    #[arg(long, default_value = "csv")]
    format: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TransformArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    variant: String,
    #[arg(long)]
    family: Option<String>,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, default_value = "csv")]
    format: String,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also reconstruct the samples and report the largest error.
    #[arg(long)]
    roundtrip: bool,
    /// Where to write the reconstruction (default: `<out>.roundtrip`).
    #[arg(long)]
    roundtrip_out: Option<PathBuf>,
}

#[derive(Args)]
struct InterpolateArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    variant: String,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    at: Vec<String>,
    #[arg(long, default_value = "csv")]
    format: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value = "all")]
    suite: Suite,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            let kind = e.downcast_ref::<weyl_orbit::Error>().map(error_kind).unwrap_or("error");
            eprintln!("{}", json!({ "error": kind, "message": format!("{e:#}") }));
            ExitCode::from(2)
        }
    }
}

fn error_kind(e: &weyl_orbit::Error) -> &'static str {
    use weyl_orbit::Error::*;
    match e {
        Unsupported(_) => "unsupported",
        IndexOutOfRange { .. } => "index_out_of_range",
        InvalidLevel(_) => "invalid_level",
        Dimension { .. } => "dimension",
        VariantMismatch(_) => "variant_mismatch",
        TorusCount { .. } => "torus_count",
        FoldingDiverged(_) => "folding_diverged",
        NotOnGrid(_) => "not_on_grid",
        DuplicateRow(_) => "duplicate_row",
        Parse(_) => "parse",
        Io(_) => "io",
        Csv(_) => "csv",
        Json(_) => "json",
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Grid(a) => cmd_grid(a),
        Command::Count(a) => cmd_count(a),
        Command::Eval(a) => cmd_eval(a),
        Command::Transform(a) => cmd_transform(a),
        Command::Interpolate(a) => cmd_interpolate(a),
        Command::Verify(a) => cmd_verify(a),
    }?;
    Ok(ExitCode::SUCCESS)
}

impl Common {
    fn algebra(&self) -> Result<Algebra> {
        let spec: AlgebraSpec = self.algebra.parse()?;
        if self.level < 1 {
            return Err(weyl_orbit::Error::InvalidLevel(self.level).into());
        }
        let alg = Algebra::new(spec)?;
        let torus = alg.torus_order(self.level);
        if torus > 10_000_000 {
            eprintln!("warning: c·M^n = {torus} torus elements; enumeration and transforms will be slow");
        }
        Ok(alg)
    }
}

/// Output sink: the `--out` file, or stdout.
fn sink(out: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn open(path: &Path) -> Result<BufReader<File>> {
    Ok(BufReader::new(
        File::open(path).with_context(|| format!("opening {}", path.display()))?,
    ))
}

/// Status lines go to stdout unless stdout carries the data.
fn status(out: &Option<PathBuf>, line: &str) {
    if out.is_some() {
        println!("{line}");
    } else {
        eprintln!("{line}");
    }
}

fn transform_variant(s: &str) -> Result<Variant> {
    match s.parse()? {
        Variant::Full => bail!(weyl_orbit::Error::VariantMismatch("transforms need variant s or l".into())),
        v => Ok(v),
    }
}

fn check_family(family: SignHomomorphism, variant: Variant) -> Result<()> {
    let ok = matches!(
        (family, variant),
        (SignHomomorphism::Short, Variant::Short) | (SignHomomorphism::Long, Variant::Long)
    );
    if !ok {
        bail!(weyl_orbit::Error::VariantMismatch(format!(
            "family {family} does not match variant {variant}"
        )));
    }
    Ok(())
}

/// `|Λ_M(X)| = |F_M(X∨)|`; the dual swaps B_n and C_n.
fn dual_spec(spec: AlgebraSpec) -> Result<AlgebraSpec> {
    Ok(match (spec.family(), spec.rank()) {
        (Family::B, n) => AlgebraSpec::c(n)?,
        (Family::C, 2) => spec,
        (Family::C, n) => AlgebraSpec::b(n)?,
        _ => spec,
    })
}

fn closed_form(spec: AlgebraSpec, level: i64, variant: Variant, side: Side) -> Result<u64> {
    Ok(match (side, variant) {
        (Side::Weights, Variant::Full) => closed_form_count(dual_spec(spec)?, level, Variant::Full)?,
        _ => closed_form_count(spec, level, variant)?,
    })
}

fn cmd_grid(a: GridArgs) -> Result<()> {
    let alg = a.common.algebra()?;
    let (level, variant, format): (i64, Variant, Format) = (a.common.level, a.variant.parse()?, a.format.parse()?);
    let closed = closed_form(alg.spec(), level, variant, a.side)?;
    let mut out = sink(&a.out)?;
    let count = match a.side {
        Side::Points => {
            let g = enumerate_points(&alg, level, variant)?;
            wio::write_grid(&g, format, &mut out)?;
            g.len()
        }
        Side::Weights => {
            let w = enumerate_weights(&alg, level, variant)?;
            wio::write_weights(&w, format, &mut out)?;
            w.len()
        }
    };
    out.flush()?;
    status(&a.out, &format!("enumerated={count} closed_form={closed}"));
    Ok(())
}

fn cmd_count(a: CountArgs) -> Result<()> {
    let alg = a.common.algebra()?;
    let (level, variant): (i64, Variant) = (a.common.level, a.variant.parse()?);
    let points = enumerate_points(&alg, level, variant)?.len();
    let weights = enumerate_weights(&alg, level, variant)?.len();
    println!(
        "points enumerated={points} closed_form={}",
        closed_form(alg.spec(), level, variant, Side::Points)?
    );
    println!(
        "weights enumerated={weights} closed_form={}",
        closed_form(alg.spec(), level, variant, Side::Weights)?
    );
    Ok(())
}

fn parse_ints(s: &str, n: usize) -> Result<Vec<i64>> {
    let v = s
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map_err(|_| anyhow!(weyl_orbit::Error::Parse(format!("integer {x:?} in {s:?}"))))
        })
        .collect::<Result<Vec<_>>>()?;
    if v.len() != n {
        bail!(weyl_orbit::Error::Dimension {
            expected: n,
            found: v.len()
        });
    }
    Ok(v)
}

fn parse_point(s: &str, n: usize) -> Result<RationalPoint> {
    let v = s
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<Rational>()
                .map_err(|_| anyhow!(weyl_orbit::Error::Parse(format!("rational {x:?} in {s:?}"))))
        })
        .collect::<Result<Vec<_>>>()?;
    if v.len() != n {
        bail!(weyl_orbit::Error::Dimension {
            expected: n,
            found: v.len()
        });
    }
    Ok(RationalPoint::from_rationals(&v))
}

/// Values at explicit points: `x_1..x_n,re,im` rows (CSV) or a JSON list.
fn write_point_values(points: &[RationalPoint], values: &[Complex64], format: Format, mut out: impl Write) -> Result<()> {
    let n = points.first().map_or(0, |p| p.dim());
    match format {
        Format::Csv => {
            let head: Vec<String> = (1..=n).map(|i| format!("x_{i}")).chain(["re".into(), "im".into()]).collect();
            writeln!(out, "{}", head.join(","))?;
            for (p, v) in points.iter().zip(values) {
                let coords: Vec<String> = p.to_rationals().iter().map(|r| r.to_string()).collect();
                writeln!(out, "{},{},{}", coords.join(","), format_real(v.re), format_real(v.im))?;
            }
        }
        Format::Json => {
            let rows: Vec<String> = points
                .iter()
                .zip(values)
                .map(|(p, v)| {
                    let coords: Vec<String> = p.to_rationals().iter().map(|r| format!("\"{r}\"")).collect();
                    format!(
                        "    {{\"point\": [{}], \"re\": {}, \"im\": {}}}",
                        coords.join(", "),
                        format_real(v.re),
                        format_real(v.im)
                    )
                })
                .collect();
            writeln!(out, "{{\n  \"rows\": [\n{}\n  ]\n}}", rows.join(",\n"))?;
        }
    }
    Ok(())
}

fn cmd_eval(a: EvalArgs) -> Result<()> {
    let alg = a.common.algebra()?;
    let family: SignHomomorphism = a.family.parse()?;
    let format: Format = a.format.parse()?;
    let weight = parse_ints(&a.weight, alg.rank())?;
    let func = OrbitFunction::new(&alg, family, &weight);
    let mut out = sink(&a.out)?;
    if a.at.is_empty() {
        let grid = enumerate_points(&alg, a.common.level, a.variant.parse()?)?;
        let table: Samples = evaluate_on_grid(&alg, &func, &grid)?;
        wio::write_samples(&table, format, &mut out)?;
    } else {
        let points = a.at.iter().map(|s| parse_point(s, alg.rank())).collect::<Result<Vec<_>>>()?;
        let values: Vec<Complex64> = points.iter().map(|p| func.evaluate(&alg, p)).collect();
        write_point_values(&points, &values, format, &mut out)?;
    }
    out.flush()?;
    Ok(())
}

fn cmd_transform(a: TransformArgs) -> Result<()> {
    let alg = a.common.algebra()?;
    let variant = transform_variant(&a.variant)?;
    if let Some(f) = &a.family {
        check_family(f.parse()?, variant)?;
    }
    let format: Format = a.format.parse()?;
    let basis = TransformBasis::<f64>::new(&alg, a.common.level, variant)?;
    let samples = wio::read_samples(&basis.grid, format, open(&a.input)?)?;
    let coeffs = basis.forward(&samples)?;
    let mut out = sink(&a.out)?;
    wio::write_coefficients(&coeffs, format, &mut out)?;
    out.flush()?;
    drop(out);
    if a.roundtrip {
        let back = basis.inverse(&coeffs)?;
        let err = back.max_abs_diff(&samples)?;
        let target = a.roundtrip_out.clone().or_else(|| {
            a.out.as_ref().map(|p| {
                let mut s = p.clone().into_os_string();
                s.push(".roundtrip");
                PathBuf::from(s)
            })
        });
        if let Some(path) = &target {
            let mut w = BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?);
            wio::write_samples(&back, format, &mut w)?;
            w.flush()?;
        }
        status(&a.out, &format!("max_roundtrip_error={}", format_real(err)));
    }
    Ok(())
}

fn cmd_interpolate(a: InterpolateArgs) -> Result<()> {
    let alg = a.common.algebra()?;
    let variant = transform_variant(&a.variant)?;
    let format: Format = a.format.parse()?;
    let set = enumerate_weights(&alg, a.common.level, variant)?;
    let coeffs = wio::read_coefficients(&set, format, open(&a.input)?)?;
    let mut out = sink(&a.out)?;
    if a.at.is_empty() {
        let basis = TransformBasis::<f64>::new(&alg, a.common.level, variant)?;
        wio::write_samples(&basis.inverse(&coeffs)?, format, &mut out)?;
    } else {
        let points = a.at.iter().map(|s| parse_point(s, alg.rank())).collect::<Result<Vec<_>>>()?;
        let values = interpolate(&alg, &coeffs, &points)?;
        write_point_values(&points, &values, format, &mut out)?;
    }
    out.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct SuiteResult {
    suite: &'static str,
    pass: bool,
    detail: Value,
    counterexample: Option<Value>,
}

fn suite_gram(alg: &Algebra, level: i64, variant: Variant, name: &'static str) -> Result<SuiteResult> {
    let r = verify_orthogonality(alg, level, variant)?;
    let counterexample = r.violations().next().map(|e| json!(e));
    let diagonal: Vec<Value> = r
        .entries
        .iter()
        .filter(|e| e.lambda == e.lambda_prime)
        .map(|e| json!({ "lambda": e.lambda, "value": e.value_re, "expected": e.expected }))
        .collect();
    Ok(SuiteResult {
        suite: name,
        pass: r.pass,
        detail: json!({
            "size": r.size,
            "norm_scale": r.norm_scale,
            "max_off_diagonal": r.max_off_diagonal,
            "max_diagonal_rel_error": r.max_diagonal_rel_error,
            "diagonal": diagonal,
        }),
        counterexample,
    })
}

fn suite_exp(alg: &Algebra, level: i64, rng: &mut ChaCha8Rng) -> Result<SuiteResult> {
    let n = alg.rank();
    let full = alg.torus_order(level) as f64;
    let (mut worst, mut bad) = (0.0f64, None);
    for k in 0..50 {
        let l: Vec<i64> = (0..n).map(|_| rng.gen_range(-9..=9)).collect();
        let lp: Vec<i64> = if k % 2 == 0 {
            let q: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
            l.iter().zip(alg.roots().cartan().vec_mul(&q)).map(|(x, s)| x + level * s).collect()
        } else {
            (0..n).map(|_| rng.gen_range(-9..=9)).collect()
        };
        let expected = if congruent_mod_root_lattice(alg, level, &l, &lp) {
            full
        } else {
            0.0
        };
        let got = verify_exponential_orthogonality(alg, level, &l, &lp)?;
        let dev = (got - Complex64::new(expected, 0.0)).norm();
        worst = worst.max(dev);
        if dev > tolerance::EXPONENTIAL_SUM_ABS && bad.is_none() {
            bad = Some(json!({ "lambda": l, "lambda_prime": lp, "re": got.re, "im": got.im, "expected": expected }));
        }
    }
    Ok(SuiteResult {
        suite: "exp",
        pass: bad.is_none(),
        detail: json!({ "pairs": 50, "max_deviation": worst }),
        counterexample: bad,
    })
}

fn suite_symmetry(alg: &Algebra, rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut reports = Vec::new();
    let mut bad = None;
    for fam in SignHomomorphism::ALL {
        let r = check_symmetries(alg, fam, 40, rng);
        if let (Some(v), None) = (&r.violation, &bad) {
            bad = Some(json!(v));
        }
        reports.push(json!({ "family": r.family, "checks": r.checks, "max_deviation": r.max_deviation }));
    }
    SuiteResult {
        suite: "symmetry",
        pass: bad.is_none(),
        detail: json!(reports),
        counterexample: bad,
    }
}

fn suite_counts(alg: &Algebra, level: i64) -> Result<SuiteResult> {
    let (mut rows, mut bad) = (Vec::new(), None);
    for m in 1..=level {
        for v in [Variant::Full, Variant::Short, Variant::Long] {
            let f = enumerate_points(alg, m, v)?.len() as u64;
            let w = enumerate_weights(alg, m, v)?.len() as u64;
            let cf = closed_form(alg.spec(), m, v, Side::Points)?;
            let cw = closed_form(alg.spec(), m, v, Side::Weights)?;
            let ok = f == cf && w == cw && (v == Variant::Full || f == w);
            let row = json!({ "M": m, "variant": v, "points": f, "points_closed_form": cf, "weights": w, "weights_closed_form": cw });
            if !ok && bad.is_none() {
                bad = Some(row.clone());
            }
            rows.push(row);
        }
    }
    Ok(SuiteResult {
        suite: "counts",
        pass: bad.is_none(),
        detail: json!(rows),
        counterexample: bad,
    })
}

fn suite_plancherel(alg: &Algebra, level: i64, rng: &mut ChaCha8Rng) -> Result<SuiteResult> {
    let (mut rt, mut pl, mut bad) = (0.0f64, 0.0f64, None);
    for v in [Variant::Short, Variant::Long] {
        let basis = TransformBasis::<f64>::new(alg, level, v)?;
        if basis.grid.is_empty() {
            continue;
        }
        for trial in 0..5 {
            let f = Samples::from_fn(&basis.grid, |_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            let back = basis.inverse(&basis.forward(&f)?)?;
            let e_rt = back.max_abs_diff(&f)? / f.max_abs();
            let (lhs, rhs) = plancherel_with(&basis, &f)?;
            let e_pl = tolerance::relative_diff(lhs, rhs);
            rt = rt.max(e_rt);
            pl = pl.max(e_pl);
            if (e_rt > tolerance::ROUNDTRIP_REL || e_pl > tolerance::PLANCHEREL_REL) && bad.is_none() {
                bad = Some(json!({ "variant": v, "trial": trial, "roundtrip_error": e_rt, "lhs": lhs, "rhs": rhs }));
            }
        }
    }
    Ok(SuiteResult {
        suite: "plancherel",
        pass: bad.is_none(),
        detail: json!({ "max_roundtrip_rel": rt, "max_plancherel_rel": pl }),
        counterexample: bad,
    })
}

fn suite_product(alg: &Algebra, rng: &mut ChaCha8Rng) -> SuiteResult {
    let n = alg.rank();
    let (mut worst, mut bad) = (0.0f64, None);
    for fam in [SignHomomorphism::Short, SignHomomorphism::Long] {
        for _ in 0..20 {
            let l1: Vec<i64> = (0..n).map(|_| rng.gen_range(-5..=5)).collect();
            let l2: Vec<i64> = (0..n).map(|_| rng.gen_range(-5..=5)).collect();
            let den = rng.gen_range(1..=40);
            let p = RationalPoint::new((0..n).map(|_| rng.gen_range(-2 * den..=2 * den)).collect(), den);
            let (lhs, rhs) = product_decompose::<f64>(alg, &l1, &l2, fam, &p);
            let dev = (lhs - rhs).norm();
            worst = worst.max(dev);
            if dev > tolerance::PRODUCT_ABS && bad.is_none() {
                bad =
                    Some(json!({ "family": fam.to_string(), "lambda": l1, "lambda_prime": l2, "point": p.to_string(), "deviation": dev }));
            }
        }
    }
    SuiteResult {
        suite: "product",
        pass: bad.is_none(),
        detail: json!({ "points": 40, "max_deviation": worst }),
        counterexample: bad,
    }
}

fn cmd_verify(a: VerifyArgs) -> Result<()> {
    let alg = a.common.algebra()?;
    let level = a.common.level;
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let wants = |s: Suite| a.suite == s || a.suite == Suite::All;
    let mut results = Vec::new();
    if wants(Suite::GramS) {
        results.push(suite_gram(&alg, level, Variant::Short, "gram-s")?);
    }
    if wants(Suite::GramL) {
        results.push(suite_gram(&alg, level, Variant::Long, "gram-l")?);
    }
    if wants(Suite::Exp) {
        results.push(suite_exp(&alg, level, &mut rng)?);
    }
    if wants(Suite::Symmetry) {
        results.push(suite_symmetry(&alg, &mut rng));
    }
    if wants(Suite::Counts) {
        results.push(suite_counts(&alg, level)?);
    }
    if wants(Suite::Plancherel) {
        results.push(suite_plancherel(&alg, level, &mut rng)?);
    }
    if wants(Suite::Product) {
        results.push(suite_product(&alg, &mut rng));
    }
    let pass = results.iter().all(|r| r.pass);
    let report = json!({
        "algebra": alg.spec().name(),
        "level": level,
        "seed": a.seed,
        "pass": pass,
        "suites": results,
    });
    let mut out = sink(&a.out)?;
    serde_json::to_writer_pretty(&mut out, &report)?;
    writeln!(out)?;
    out.flush()?;
    drop(out);
    for r in &results {
        status(&a.out, &format!("{}: {}", r.suite, if r.pass { "pass" } else { "FAIL" }));
    }
    if !pass {
        let first = results.iter().find(|r| !r.pass).expect("some suite failed");
        eprintln!(
            "{}",
            json!({ "error": "verification_failed", "suite": first.suite, "counterexample": first.counterexample })
        );
        std::process::exit(1);
    }
    Ok(())
}

//! Invariant suites behind `verify`. Every check reports a measured residual
//! against a pinned tolerance; the table contains no timings so it is
//! byte-stable across runs and thread counts.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::builtin::builtin_symbol;
use crate::circle::{circle_quadrature, CirclePoint};
use crate::error::{Error, Result};
use crate::group::{BandlimitedFunction, DualIndex, GroupPoint, GroupTag, QuadratureRule, SpectrumSide, TruncationSpec};
use crate::index::{self, IndexContext, IndexOptions, TraceRoute};
use crate::linalg::{self, CMat, C64};
use crate::operator::{op_commutator, op_from_multiplier, op_multiplication, op_trace, MultiplierProjection, TruncatedOperator};
use crate::peter_weyl::{self, default_quadrature, forward_transform, plancherel_norm, quadrature_l2_norm, sample};
use crate::su2::{self, su2_multiply, su2_quadrature_euler, su2_quadrature_tvs, Su2Element};
use crate::symbol::{matrix_symbol, trace_quadrature, trace_via_symbol, translated_symbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Plancherel,
    Symbols,
    Trace,
    Index,
    Quadrature,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Plancherel => "plancherel",
            Suite::Symbols => "symbols",
            Suite::Trace => "trace",
            Suite::Index => "index",
            Suite::Quadrature => "quadrature",
        }
    }

    fn members(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![Suite::Quadrature, Suite::Plancherel, Suite::Symbols, Suite::Trace, Suite::Index],
            s => vec![s],
        }
    }

    fn salt(self) -> u64 {
        match self {
            Suite::All => 0,
            Suite::Quadrature => 1,
            Suite::Plancherel => 2,
            Suite::Symbols => 3,
            Suite::Trace => 4,
            Suite::Index => 5,
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Suite::All,
            "plancherel" => Suite::Plancherel,
            "symbols" => Suite::Symbols,
            "trace" => Suite::Trace,
            "index" => Suite::Index,
            "quadrature" => Suite::Quadrature,
            other => return Err(Error::Parse(format!("unknown verify suite `{other}`"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub measured: f64,
    pub tolerance: f64,
    pub pass: bool,
}

fn within(suite: &'static str, name: impl Into<String>, measured: f64, tolerance: f64) -> Check {
    Check {
        suite,
        name: name.into(),
        measured,
        tolerance,
        pass: measured <= tolerance,
    }
}

fn failed(suite: &'static str, name: impl Into<String>, e: &Error) -> Check {
    Check {
        suite,
        name: format!("{} ({e})", name.into()),
        measured: f64::INFINITY,
        tolerance: 0.0,
        pass: false,
    }
}

/// Runs the suite with its randomized parts seeded from `seed`.
pub fn run_suite(suite: Suite, seed: u64) -> Vec<Check> {
    let mut out = Vec::new();
    for s in suite.members() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ s.salt());
        let checks = match s {
            Suite::Quadrature => quadrature(&mut rng),
            Suite::Plancherel => plancherel(&mut rng),
            Suite::Symbols => symbols(&mut rng),
            Suite::Trace => trace(&mut rng),
            Suite::Index => index_suite(&mut rng),
            Suite::All => unreachable!(),
        };
        out.extend(checks);
    }
    out
}

pub fn format_table(checks: &[Check]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{:<11} {:<58} {:>11} {:>9}  result", "suite", "check", "measured", "tol");
    for c in checks {
        let _ = writeln!(
            s,
            "{:<11} {:<58} {:>11} {:>9}  {}",
            c.suite,
            c.name,
            format!("{:.3e}", c.measured),
            format!("{:.0e}", c.tolerance),
            if c.pass { "PASS" } else { "FAIL" }
        );
    }
    let failures = checks.iter().filter(|c| !c.pass).count();
    let _ = writeln!(s, "{} checks, {} failed", checks.len(), failures);
    s
}

fn random_function(trunc: TruncationSpec, rng: &mut ChaCha8Rng) -> BandlimitedFunction {
    let c: Vec<C64> = (0..trunc.dim())
        .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    BandlimitedFunction::new(SpectrumSide::from_coefficient_vector(trunc, &c).expect("coefficient count"))
}

fn random_point(group: GroupTag, rng: &mut ChaCha8Rng) -> GroupPoint {
    match group {
        GroupTag::Circle => GroupPoint::Circle(CirclePoint::new(rng.gen_range(-PI..PI))),
        GroupTag::Su2 => GroupPoint::Su2(Su2Element::random(rng)),
    }
}

/// `max |int xi_ij conj(xi_kl) - delta delta / d|` over `trunc`, via the Gram of basis values.
fn schur_defect(trunc: &TruncationSpec, quad: &QuadratureRule) -> Result<f64> {
    let rows: Vec<Vec<C64>> = quad.nodes.iter().map(|x| crate::group::basis_values(trunc, x)).collect::<Result<_>>()?;
    let n = trunc.dim();
    let phi = CMat::from_fn(rows.len(), n, |k, b| rows[k][b] * quad.weights[k].sqrt());
    let gram = linalg::matmul_adj_left(&phi, &phi);
    // the basis is sqrt(d) xi_ij, so orthonormality of the basis is the Schur relation
    Ok(linalg::max_abs_diff(&gram, &linalg::identity(n)))
}

fn quadrature(rng: &mut ChaCha8Rng) -> Vec<Check> {
    const S: &str = "quadrature";
    let mut out = Vec::new();
    let cq = circle_quadrature(8);
    out.push(within(S, "circle mass", (cq.mass() - 1.0).abs(), 1e-15));
    let worst = (-(cq.exactness as i32)..=cq.exactness as i32)
        .map(|n| {
            let f = BandlimitedFunction::new({
                let mut s = SpectrumSide::zeros(TruncationSpec::circle(n.unsigned_abs()));
                s.set_entry(&DualIndex::circle(n), 0, 0, linalg::ONE).unwrap();
                s
            });
            let v = sample(&f, &cq).unwrap();
            let expected = if n == 0 { 1.0 } else { 0.0 };
            (cq.integrate(&v).unwrap() - expected).norm()
        })
        .fold(0.0, f64::max);
    out.push(within(S, "circle characters integrate to delta (|n| <= 32)", worst, 1e-14));
    let eq = su2_quadrature_euler(6);
    let tq = su2_quadrature_tvs(6);
    out.push(within(S, "su2 euler mass", (eq.mass() - 1.0).abs(), 1e-14));
    out.push(within(S, "su2 tvs mass", (tq.mass() - 1.0).abs(), 1e-14));
    let raw = tq.raw_mass.unwrap_or(f64::NAN);
    out.push(within(S, "su2 tvs chart mass 4 pi^2 (relative)", (raw / (4.0 * PI * PI) - 1.0).abs(), 1e-12));
    let t = TruncationSpec::su2(6);
    for (name, q) in [("euler", &eq), ("tvs", &tq)] {
        match schur_defect(&t, q) {
            Ok(d) => out.push(within(S, format!("schur orthogonality l <= 3 ({name})"), d, 1e-11)),
            Err(e) => out.push(failed(S, format!("schur orthogonality ({name})"), &e)),
        }
    }
    let f = random_function(TruncationSpec::su2(12), rng);
    let ie = eq.integrate(&sample(&f, &eq).unwrap()).unwrap();
    let it = tq.integrate(&sample(&f, &tq).unwrap()).unwrap();
    let mean = f.spectrum().block(&DualIndex::su2(0)).unwrap()[(0, 0)];
    out.push(within(S, "euler and tvs integrals agree (degree 12)", (ie - it).norm(), 1e-12));
    out.push(within(S, "euler integral equals mean coefficient", (ie - mean).norm(), 1e-12));
    out
}

fn plancherel(rng: &mut ChaCha8Rng) -> Vec<Check> {
    const S: &str = "plancherel";
    let mut out = Vec::new();
    let (mut unit, mut hom, mut euler_d) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..100 {
        let g = Su2Element::random(rng);
        let h = Su2Element::random(rng);
        let gh = su2_multiply(&g, &h);
        let (angles, sign) = su2::matrix_to_euler(&g);
        for tl in 0..=6u32 {
            let rg = su2::rep_matrix(tl, &g);
            let rh = su2::rep_matrix(tl, &h);
            let d = tl as usize + 1;
            unit = unit.max(linalg::max_abs_diff(&linalg::matmul_adj_left(&rg, &rg), &linalg::identity(d)));
            hom = hom.max(linalg::max_abs_diff(&su2::rep_matrix(tl, &gh), &linalg::matmul(&rg, &rh)));
            let phase = if tl % 2 == 1 { sign } else { 1.0 };
            let dm = linalg::scale(&su2::wigner_D(tl, &angles), C64::new(phase, 0.0));
            euler_d = euler_d.max(linalg::max_abs_diff(&dm, &rg));
        }
    }
    out.push(within(S, "wigner unitarity l <= 3 (100 elements)", unit, 1e-11));
    out.push(within(S, "wigner homomorphism l <= 3 (100 pairs)", hom, 1e-11));
    out.push(within(S, "euler-angle D matches representation", euler_d, 1e-11));

    let f = random_function(TruncationSpec::su2(4), rng);
    let t = *f.trunc();
    let mut recovered = Vec::new();
    for (name, q) in [("euler", su2_quadrature_euler(4)), ("tvs", su2_quadrature_tvs(4))] {
        let v = sample(&f, &q).unwrap();
        match forward_transform(&v, &q, &t, t.bound) {
            Ok(spec) => {
                out.push(within(S, format!("su2 round trip bandwidth 2 ({name})"), spec.max_abs_diff(f.spectrum()), 1e-11));
                let qn = quadrature_l2_norm(&v, &q).unwrap();
                out.push(within(S, format!("su2 norm identity ({name})"), (qn - plancherel_norm(f.spectrum())).abs(), 1e-11));
                recovered.push(spec);
            }
            Err(e) => out.push(failed(S, format!("su2 round trip ({name})"), &e)),
        }
    }
    if recovered.len() == 2 {
        out.push(within(S, "su2 schemes agree", recovered[0].max_abs_diff(&recovered[1]), 1e-10));
    }
    let x = random_point(GroupTag::Su2, rng);
    let direct = f.eval(&x).unwrap();
    let via = peter_weyl::inverse_transform(f.spectrum(), &x).unwrap();
    out.push(within(S, "su2 inverse transform at a random point", (direct - via).norm(), 1e-12));

    let g = random_function(TruncationSpec::circle(6), rng);
    let q = circle_quadrature(6);
    let v = sample(&g, &q).unwrap();
    let back = forward_transform(&v, &q, g.trunc(), 6).unwrap();
    out.push(within(S, "circle round trip bandwidth 6", back.max_abs_diff(g.spectrum()), 1e-12));
    let nq = quadrature_l2_norm(&v, &q).unwrap();
    out.push(within(S, "circle parseval", (nq - plancherel_norm(g.spectrum())).abs(), 1e-12));
    out
}

/// Worst deviation between the two symbol routes over `points` and the interior duals.
fn connection_defect(a: &TruncatedOperator, points: &[GroupPoint]) -> Result<f64> {
    let t = *a.trunc();
    let mut worst = 0.0f64;
    for dual in t.duals().into_iter().filter(|d| d.degree() + a.reach() <= t.bound) {
        for x in points {
            let s = matrix_symbol(a, x, &dual)?;
            let r = translated_symbol(a, x, &dual)?;
            worst = worst.max(linalg::max_abs_diff(&s, &r));
        }
    }
    Ok(worst)
}

fn symbols(rng: &mut ChaCha8Rng) -> Vec<Check> {
    const S: &str = "symbols";
    let mut out = Vec::new();
    for (group, t, fb) in [
        (GroupTag::Circle, TruncationSpec::circle(12), TruncationSpec::circle(2)),
        (GroupTag::Su2, TruncationSpec::su2(6), TruncationSpec::su2(1)),
    ] {
        let f = random_function(fb, rng);
        let quad = default_quadrature(group, fb.bound + 2 * t.bound);
        let points: Vec<GroupPoint> = (0..20).map(|_| random_point(group, rng)).collect();
        let built = op_multiplication(&f, &t, &quad).map(|m| {
            let pi = op_from_multiplier(&MultiplierProjection::hardy(t));
            let toe = pi.compose(&m).and_then(|pm| pm.compose(&pi));
            (m, pi, toe)
        });
        let (m, pi, toe) = match built {
            Ok((m, pi, Ok(toe))) => (m, pi, toe),
            Ok((_, _, Err(e))) | Err(e) => {
                out.push(failed(S, format!("{group} operators"), &e));
                continue;
            }
        };
        for (name, a) in [("M_f", &m), ("Pi", &pi), ("Pi M_f Pi", &toe)] {
            match connection_defect(a, &points) {
                Ok(d) => out.push(within(S, format!("{group} symbol translation identity for {name} (20 points)"), d, 1e-11)),
                Err(e) => out.push(failed(S, format!("{group} symbol translation identity for {name}"), &e)),
            }
        }
        let mut scalar = 0.0f64;
        for x in &points {
            let fx = f.eval(x).unwrap();
            for dual in t.duals().into_iter().filter(|d| d.degree() + m.reach() <= t.bound) {
                let s = matrix_symbol(&m, x, &dual).unwrap();
                scalar = scalar.max(linalg::max_abs_diff(&s, &linalg::scale(&linalg::identity(dual.dim()), fx)));
            }
        }
        out.push(within(S, format!("{group} symbol of M_f is f(x) I"), scalar, 1e-11));
    }
    out
}

fn corpus_circle() -> Vec<(&'static str, i64)> {
    vec![
        ("circle:char:k=-3", 3),
        ("circle:char:k=-2", 2),
        ("circle:char:k=-1", 1),
        ("circle:char:k=0", 0),
        ("circle:char:k=1", -1),
        ("circle:char:k=2", -2),
        ("circle:char:k=3", -3),
        ("circle:mixed:k=2,c=3", -2),
        ("circle:mixed:k=-1,c=2,s=-1", 1),
    ]
}

fn trace(rng: &mut ChaCha8Rng) -> Vec<Check> {
    const S: &str = "trace";
    let mut out = Vec::new();
    let runs: Vec<(String, TruncationSpec, Vec<usize>)> = corpus_circle()
        .into_iter()
        .filter(|(n, _)| !n.ends_with("k=0"))
        .map(|(n, _)| (n.to_string(), TruncationSpec::circle(32), vec![1, 3]))
        .chain(std::iter::once(("su2:shifted-real".to_string(), TruncationSpec::su2(8), vec![1, 3, 5])))
        .collect();
    for (name, t, ms) in runs {
        let f = builtin_symbol(&name).expect("corpus symbol");
        let p = MultiplierProjection::hardy(t);
        let ctx = match IndexContext::new(&f, &p, &t, &IndexOptions::default()) {
            Ok(c) => c,
            Err(e) => {
                out.push(failed(S, name, &e));
                continue;
            }
        };
        let qt = trace_quadrature(&t);
        for m in ms {
            let r = ctx
                .build_i(m)
                .and_then(|i| Ok((op_trace(&i) - trace_via_symbol(&i, &qt, &t)?).norm()));
            match r {
                Ok(d) => out.push(within(S, format!("{name} m={m} direct vs symbol route"), d, 1e-7)),
                Err(e) => out.push(failed(S, format!("{name} m={m}"), &e)),
            }
        }
    }
    let t = TruncationSpec::su2(4);
    let n = t.dim();
    let rand_op = |rng: &mut ChaCha8Rng| {
        let m = CMat::from_fn(n, n, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        TruncatedOperator::new(t, m, 0, "random").unwrap()
    };
    let a = rand_op(rng);
    let b = rand_op(rng);
    let ab = op_trace(&a.compose(&b).unwrap());
    let ba = op_trace(&b.compose(&a).unwrap());
    out.push(within(S, "Tr(ab) = Tr(ba) on random operators", (ab - ba).norm(), 1e-10));
    let c = op_commutator(&a, &b).unwrap();
    out.push(within(S, "Tr of a commutator vanishes", op_trace(&c).norm(), 1e-10));
    out
}

fn index_suite(rng: &mut ChaCha8Rng) -> Vec<Check> {
    const S: &str = "index";
    let mut out = Vec::new();
    let t = TruncationSpec::circle(32);
    let p = MultiplierProjection::hardy(t);
    for (name, expected) in corpus_circle() {
        let f = builtin_symbol(name).expect("corpus symbol");
        let report = index::index_report(&f, name, &p, &t, &index::all_methods(GroupTag::Circle), &IndexOptions::default());
        let worst = report
            .methods
            .iter()
            .map(|m| match (m.raw, m.rounded) {
                (Some(raw), Some(r)) if r == expected => C64::new(raw[0] - expected as f64, raw[1]).norm(),
                _ => f64::INFINITY,
            })
            .fold(0.0, f64::max);
        let mut c = within(S, format!("{name} all methods give {expected}"), worst, 1e-6);
        c.pass &= report.agreement;
        out.push(c);
    }

    let t = TruncationSpec::su2(8);
    let f = builtin_symbol("su2:shifted-real").expect("builtin");
    let p = MultiplierProjection::hardy(t);
    let r = IndexContext::new(&f, &p, &t, &IndexOptions::default()).and_then(|ctx| {
        let c = ctx.connes_index(5, TraceRoute::Direct)?;
        let s = ctx.svd_index(crate::operator::TAU_REL, None)?;
        Ok((c, s))
    });
    match r {
        Ok((c, s)) => {
            let mut chk = within(S, "su2:shifted-real B=4 m=5 connes near 0, svd 0", c.value().abs(), 5e-3);
            chk.pass &= c.rounded == 0 && s.index == 0;
            out.push(chk);
        }
        Err(e) => out.push(failed(S, "su2:shifted-real B=4", &e)),
    }

    // finite rank of [Pi, M_f] for trigonometric polynomials
    let t = TruncationSpec::circle(24);
    let p = op_from_multiplier(&MultiplierProjection::hardy(t));
    for b in 1..=4u32 {
        let f = random_function(TruncationSpec::circle(b), rng);
        let q = default_quadrature(GroupTag::Circle, b + 2 * t.bound);
        let r = op_multiplication(&f, &t, &q)
            .and_then(|m| op_commutator(&p, &m))
            .and_then(|c| crate::operator::summability_report(&c, 3.0));
        match r {
            Ok(rep) => {
                let mut c = within(S, format!("circle [Pi, M_f] rank <= 2b for b={b}"), rep.numerical_rank as f64, (2 * b) as f64);
                c.pass &= rep.finite_rank_flag;
                out.push(c);
            }
            Err(e) => out.push(failed(S, format!("circle commutator rank b={b}"), &e)),
        }
    }
    out
}

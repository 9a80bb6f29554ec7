//! Acceptance criteria, one pass/fail line each.
//!
//! Lines go straight to the process's stderr handle so they show up even
//! though the test harness captures `println!` output.

#![allow(clippy::mutable_key_type)]

use std::io::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use polypi_core::catalog::{Catalog, CatalogConfig, ChordSelector};
use polypi_core::geometry::{ngon_vertex, squared_distance, Frame, Intersection, Line, Point};
use polypi_core::numberfield::{element_minpoly, FieldDescriptor, FieldElement};
use polypi_core::par;
use polypi_core::search::{compare_across_n, scan_distances, SearchParams, TargetConstant};

const PROPERTY_CASES: u32 = 200;

fn report_line(line: &str) {
    let mut err = std::io::stderr().lock();
    let _ = writeln!(err, "{line}");
}

enum Outcome {
    Pass(String),
    Fail(String),
    Recorded(String),
}

fn check(id: u32, title: &str, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".to_string());
        Outcome::Fail(msg)
    });
    let secs = start.elapsed().as_secs_f64();
    let (tag, detail, ok) = match outcome {
        Outcome::Pass(d) => ("PASS", d, true),
        Outcome::Fail(d) => ("FAIL", d, false),
        Outcome::Recorded(d) => ("RECORDED", d, true),
    };
    report_line(&format!("criterion {id} [{tag}] {title} ({secs:.2} s): {detail}"));
    ok
}

fn within(limit: Duration, took: Duration, what: &str) -> Result<(), String> {
    if took < limit {
        Ok(())
    } else {
        Err(format!("{what} took {took:?}, limit {limit:?}"))
    }
}

// --- exact twelve-gon helpers ---------------------------------------------

struct Q3 {
    k: Arc<FieldDescriptor>,
    s3: FieldElement,
}

impl Q3 {
    fn new() -> Self {
        let k = FieldDescriptor::for_ngon(12);
        let s3 = FieldElement::generator(&k);
        Q3 { k, s3 }
    }

    /// an/ad + (bn/bd)·√3
    fn v(&self, an: i64, ad: i64, bn: i64, bd: i64) -> FieldElement {
        &FieldElement::from_ratio(&self.k, an, ad) + &self.s3.scale(&BigRational::new(bn.into(), bd.into()))
    }

    fn a(&self, i: u64) -> Point {
        ngon_vertex(&self.k, 12, i, Frame::SideUnit)
    }

    fn line(&self, i: u64, j: u64) -> Line {
        Line::through(&self.a(i), &self.a(j)).unwrap()
    }
}

fn meet(a: &Line, b: &Line) -> Point {
    match a.intersect(b) {
        Intersection::Point(p) => p,
        other => panic!("expected a crossing, got {other:?}"),
    }
}

fn golden_proof() -> Result<(), String> {
    let q = Q3::new();
    let expect = [
        (3, q.v(3, 2, 1, 2), q.v(1, 2, 1, 2)),
        (6, q.v(1, 1, 0, 1), q.v(2, 1, 1, 1)),
        (7, q.v(0, 1, 0, 1), q.v(2, 1, 1, 1)),
        (8, q.v(0, 1, -1, 2), q.v(3, 2, 1, 1)),
        (9, q.v(-1, 2, -1, 2), q.v(3, 2, 1, 2)),
        (11, q.v(0, 1, -1, 2), q.v(1, 2, 0, 1)),
    ];
    for (i, x, y) in expect {
        if q.a(i) != Point::new(x, y) {
            return Err(format!("vertex A{i} differs"));
        }
    }
    let l_11_6 = q.line(11, 6);
    if !l_11_6.is_equation_of(&q.v(3, 2, 1, 1), &q.v(-1, 1, -1, 2), &q.v(2, 1, 1, 1)) {
        return Err("line A11A6".into());
    }
    let r = meet(&l_11_6, &q.line(0, 1));
    let r_x = FieldElement::from_int(&q.k, -2).checked_div(&q.s3).unwrap();
    if r != Point::new(r_x, FieldElement::zero(&q.k)) {
        return Err("R".into());
    }
    let (_, _, c) = q.line(3, 8).scaled_to_a(&q.v(1, 1, 1, 2)).unwrap();
    if -c != q.v(9, 2, 5, 2) {
        return Err("constant c of A3A8".into());
    }
    let (_, _, d) = q.line(7, 9).scaled_to_a(&FieldElement::one(&q.k)).unwrap();
    if d != q.v(2, 1, 1, 1) {
        return Err("constant d of A7A9".into());
    }
    let s = meet(&q.line(3, 8), &q.line(7, 9));
    if s != Point::new(q.v(-3, 2, 1, 2), q.v(1, 2, 3, 2)) {
        return Err("S".into());
    }
    if squared_distance(&r, &s) != q.v(40, 3, -2, 1) {
        return Err("|RS|^2".into());
    }
    Ok(())
}

fn side_proof() -> Result<(), String> {
    let q = Q3::new();
    let r = meet(&q.line(11, 6), &q.line(0, 1));
    let len = &FieldElement::one(&q.k) + &FieldElement::from_int(&q.k, 2).checked_div(&q.s3).unwrap();
    if squared_distance(&q.a(1), &r) != len.square() {
        return Err("|A1R|^2".into());
    }
    if !q.line(3, 8).perpendicular(&q.line(6, 11)) {
        return Err("A3A8 not perpendicular to A6A11".into());
    }
    Ok(())
}

// --- double-precision oracle ------------------------------------------------

/// Chord crossings of the side-unit n-gon in doubles, clustered at `tol`.
fn float_catalog(n: u32, vertices: bool, tol: f64) -> Vec<(f64, f64)> {
    let tau = std::f64::consts::TAU;
    let mut v = vec![(0.0, 0.0)];
    for k in 0..n - 1 {
        let a = tau * k as f64 / n as f64;
        let last = v[v.len() - 1];
        v.push((last.0 + a.cos(), last.1 + a.sin()));
    }
    let mut lines = Vec::new();
    for i in 0..n as usize {
        for j in i + 1..n as usize {
            let (p, q) = (v[i], v[j]);
            let (a, b) = (p.1 - q.1, q.0 - p.0);
            lines.push((a, b, -(a * p.0 + b * p.1)));
        }
    }
    let mut pts = if vertices { v.clone() } else { Vec::new() };
    for (i, l) in lines.iter().enumerate() {
        for m in &lines[i + 1..] {
            let det = l.0 * m.1 - m.0 * l.1;
            if det.abs() > 1e-9 {
                pts.push(((l.1 * m.2 - m.1 * l.2) / det, (l.2 * m.0 - m.2 * l.0) / det));
            }
        }
    }
    let mut reps: Vec<(f64, f64)> = Vec::new();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    for p in pts {
        let dup = reps
            .iter()
            .rev()
            .take_while(|q| p.0 - q.0 < tol)
            .any(|q| (p.1 - q.1).abs() < tol);
        if !dup {
            reps.push(p);
        }
    }
    reps
}

fn float_best_error(n: u32) -> f64 {
    let pts = float_catalog(n, true, 1e-9);
    let mut best = f64::INFINITY;
    for (i, p) in pts.iter().enumerate() {
        for q in &pts[i + 1..] {
            best = best.min(((p.0 - q.0).hypot(p.1 - q.1) - std::f64::consts::PI).abs());
        }
    }
    best
}

// --- criteria ---------------------------------------------------------------

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let res = golden_proof().and_then(|_| within(Duration::from_secs(1), start.elapsed(), "kernel"));
    match res {
        Ok(()) => Outcome::Pass("vertices, lines, R, S, c, d and |RS|^2 = 40/3 - 2*sqrt(3) exact".into()),
        Err(e) => Outcome::Fail(e),
    }
}

fn criterion_2() -> Outcome {
    match side_proof() {
        Ok(()) => Outcome::Pass("|A1R|^2 = (1 + 2/sqrt(3))^2 and A3A8 perpendicular to A6A11".into()),
        Err(e) => Outcome::Fail(e),
    }
}

fn twelve_gon_search(jobs: usize) -> (Duration, Result<String, String>) {
    let start = Instant::now();
    let result = par::with_jobs(jobs, || {
        let catalog = Catalog::build(&CatalogConfig::new(12)).map_err(|e| e.to_string())?;
        let hits =
            scan_distances(&catalog, &TargetConstant::Pi, &SearchParams::default()).map_err(|e| e.to_string())?;
        let q = Q3::new();
        let want = q.v(40, 3, -2, 1);
        let (rank, hit) = hits
            .iter()
            .enumerate()
            .find(|(_, h)| h.sq_value == want)
            .ok_or("40/3 - 2*sqrt(3) not among the ranked hits")?;
        if &hit.decimal[..10] != "3.14153333" {
            return Err(format!("decimal {}", hit.decimal));
        }
        if hit.digits != 4 {
            return Err(format!("digits {}", hit.digits));
        }
        let (lo, hi) = (hit.abs_error.lo_f64(), hit.abs_error.hi_f64());
        if !(lo > 5.8e-5 && hi < 6.0e-5) {
            return Err(format!("abs_error [{lo:e}, {hi:e}] outside (5.8e-5, 6.0e-5)"));
        }
        Ok(format!(
            "rank {} of {}, abs_error in [{lo:.6e}, {hi:.6e}]",
            rank + 1,
            hits.len()
        ))
    });
    (start.elapsed(), result)
}

fn criterion_3() -> Outcome {
    let (t1, r1) = twelve_gon_search(1);
    let (t4, r4) = twelve_gon_search(4);
    let res = r1
        .and_then(|d| r4.map(|_| d))
        .and_then(|d| within(Duration::from_secs(60), t1, "single worker").map(|_| d))
        .and_then(|d| within(Duration::from_secs(15), t4, "four workers").map(|_| d));
    let cores = std::thread::available_parallelism().map_or(1, |n| n.get());
    match res {
        Ok(d) => Outcome::Pass(format!("{d}; 1 worker {t1:.2?}, 4 workers {t4:.2?} on {cores} core(s)")),
        Err(e) => Outcome::Fail(e),
    }
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let params = SearchParams {
        top_k: 1,
        ..SearchParams::default()
    };
    let sizes = [3, 4, 5, 6, 8, 10];
    let rows = match compare_across_n(&sizes, &ChordSelector::All, true, &TargetConstant::Pi, &params) {
        Ok(r) => r,
        Err(e) => return Outcome::Fail(e.to_string()),
    };
    let mut summary = Vec::new();
    for row in &rows {
        let best = row.best.as_ref().expect("nonempty catalog");
        let hi = best.abs_error.hi_f64();
        if !row.constructible {
            return Outcome::Fail(format!("n = {} reported non-constructible", row.n));
        }
        if hi <= 6.0e-5 {
            return Outcome::Fail(format!("n = {} best error {hi:e} does not exceed 6.0e-5", row.n));
        }
        let oracle = float_best_error(row.n);
        if (oracle - best.abs_error.midpoint_f64()).abs() > 1e-9 {
            return Outcome::Fail(format!("n = {}: exact {hi:e} vs double-precision {oracle:e}", row.n));
        }
        summary.push(format!("n={}: {hi:.4e}", row.n));
    }
    if let Err(e) = within(Duration::from_secs(600), start.elapsed(), "comparison") {
        return Outcome::Fail(e);
    }
    Outcome::Pass(summary.join(", "))
}

fn run_property<S: Strategy>(
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases: PROPERTY_CASES,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, test).map_err(|e| format!("{name}: {e}"))
}

fn element_triple() -> impl Strategy<Value = (FieldElement, FieldElement, FieldElement)> {
    let rat = (-30i64..=30, 1i64..=7).prop_map(|(a, b)| BigRational::new(a.into(), b.into()));
    prop::sample::select(vec![3u64, 5, 7, 8, 9, 12, 15, 16, 20]).prop_flat_map(move |n| {
        let k = FieldDescriptor::for_ngon(n);
        let el = prop::collection::vec(rat.clone(), k.degree()).prop_map(move |c| FieldElement::from_coeffs(&k, c));
        (el.clone(), el.clone(), el)
    })
}

fn small_config() -> impl Strategy<Value = CatalogConfig> {
    (3u32..=8).prop_flat_map(|n| {
        let steps = prop::collection::btree_set(1..=n / 2, 1..=(n / 2) as usize);
        prop_oneof![Just(ChordSelector::All), steps.prop_map(ChordSelector::Steps)]
            .prop_map(move |s| CatalogConfig::new(n).with_selector(s))
    })
}

fn json_without_timing(args: &[&str]) -> String {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = polypi_cli::run(
        std::iter::once("polypi").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    assert_eq!(code, 0, "{}", String::from_utf8_lossy(&err));
    let mut v: serde_json::Value = serde_json::from_slice(&out).unwrap();
    v.as_object_mut().unwrap().remove("timing");
    serde_json::to_string(&v).unwrap()
}

fn criterion_5() -> Outcome {
    type Suite = Box<dyn Fn() -> Result<(), String>>;
    let suites: Vec<(&str, Suite)> = vec![
        (
            "field axioms",
            Box::new(|| {
                run_property("field axioms", element_triple(), |(x, y, z)| {
                    prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
                    prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
                    prop_assert!((&x + &(-&x)).is_zero());
                    if !x.is_zero() {
                        prop_assert!((&x * &x.inverse().unwrap()).is_one());
                    }
                    Ok(())
                })
            }),
        ),
        (
            "enclosures",
            Box::new(|| {
                run_property(
                    "enclosures",
                    (element_triple(), 8u32..100, 1u32..150),
                    |((x, _, _), b, extra)| {
                        let coarse = x.eval_interval(b);
                        prop_assert!(coarse.contains(&x.eval_interval(b + extra).midpoint()));
                        let t = TargetConstant::Pi;
                        prop_assert!(t.enclosure(b).contains(&t.enclosure(b + extra).midpoint()));
                        Ok(())
                    },
                )
            }),
        ),
        (
            "minimal polynomials",
            Box::new(|| {
                run_property("minimal polynomials", element_triple(), |(x, _, _)| {
                    let p = element_minpoly(&x);
                    let mut acc = FieldElement::zero(x.field());
                    for c in p.coefficients().iter().rev() {
                        acc = &(&acc * &x)
                            + &FieldElement::from_rational(x.field(), BigRational::from_integer(c.clone()));
                    }
                    prop_assert!(acc.is_zero());
                    Ok(())
                })
            }),
        ),
        (
            "incidence and intersection",
            Box::new(|| {
                run_property(
                    "incidence",
                    (3u64..=16, 0u64..16, 0u64..16, 0u64..16),
                    |(n, a, b, c)| {
                        let (a, b, c) = (a % n, b % n, c % n);
                        if a == b || b == c || a == c {
                            return Ok(());
                        }
                        let k = FieldDescriptor::for_ngon(n);
                        let v = |i| ngon_vertex(&k, n, i, Frame::SideUnit);
                        let l1 = Line::through(&v(a), &v(b)).unwrap();
                        let l2 = Line::through(&v(a), &v(c)).unwrap();
                        prop_assert!(l1.contains(&v(a)) && l1.contains(&v(b)));
                        prop_assert_eq!(l1.intersect(&l2), Intersection::Point(v(a)));
                        Ok(())
                    },
                )
            }),
        ),
        (
            "dedup and dihedral invariance",
            Box::new(|| {
                run_property("catalog", small_config(), |config| {
                    let c = Catalog::build(&config.with_frame(Frame::CircumradiusUnit)).unwrap();
                    let set: std::collections::HashSet<Point> = c.points.iter().map(|p| p.point.clone()).collect();
                    prop_assert_eq!(set.len(), c.points.len());
                    let mirrored: std::collections::HashSet<Point> =
                        set.iter().map(|p| Point::new(p.x.clone(), -&p.y)).collect();
                    prop_assert_eq!(mirrored, set);
                    Ok(())
                })
            }),
        ),
        (
            "pruning completeness",
            Box::new(|| {
                run_property("pruning", (small_config(), 1usize..=8), |(config, k)| {
                    let c = Catalog::build(&config).unwrap();
                    let p = SearchParams {
                        top_k: k,
                        ..SearchParams::default()
                    };
                    prop_assert_eq!(
                        scan_distances(&c, &TargetConstant::Pi, &p).unwrap(),
                        scan_distances(&c, &TargetConstant::Pi, &p.unpruned()).unwrap()
                    );
                    Ok(())
                })
            }),
        ),
        (
            "determinism across workers",
            Box::new(|| {
                run_property("determinism", (3u32..=9, 1usize..=5), |(n, k)| {
                    let (n, k) = (n.to_string(), k.to_string());
                    let args = |jobs: &'static str| {
                        json_without_timing(&["--n", &n, "--top", &k, "--format", "json", "--jobs", jobs])
                    };
                    prop_assert_eq!(args("1"), args("4"));
                    Ok(())
                })
            }),
        ),
    ];
    let mut passed = Vec::new();
    for (name, suite) in suites {
        if let Err(e) = suite() {
            return Outcome::Fail(e);
        }
        passed.push(name);
    }
    Outcome::Pass(format!("{} cases each: {}", PROPERTY_CASES, passed.join(", ")))
}

fn criterion_6() -> Outcome {
    let mut found = Vec::new();
    for (n, expect) in [(3u32, 3usize), (4, 5)] {
        let c = Catalog::build(&CatalogConfig::new(n)).unwrap();
        let oracle = float_catalog(n, true, 1e-9).len();
        if c.points.len() != expect || oracle != expect {
            return Outcome::Fail(format!(
                "n = {n}: exact {}, brute force {oracle}, expected {expect}",
                c.points.len()
            ));
        }
        found.push(format!("n={n}: {expect} points"));
    }
    let lines = Catalog::build(&CatalogConfig::new(12)).unwrap().lines.len();
    if lines != 66 {
        return Outcome::Fail(format!("n = 12 has {lines} lines"));
    }
    Outcome::Pass(format!("{}, n=12: 66 lines", found.join(", ")))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let catalog = Catalog::build(&CatalogConfig::new(16)).unwrap();
    let params = SearchParams {
        top_k: 1,
        ..SearchParams::default()
    };
    let hits = scan_distances(&catalog, &TargetConstant::Pi, &params).unwrap();
    let best = &hits[0];
    Outcome::Recorded(format!(
        "{} points; best {} with {} digits, abs_error <= {:.4e}, completed in {:.2?}",
        catalog.points.len(),
        best.decimal,
        best.digits,
        best.abs_error.hi_f64(),
        start.elapsed()
    ))
}

#[test]
fn acceptance() {
    let results = [
        check(1, "golden proof reproduction", criterion_1),
        check(2, "side-proof identities", criterion_2),
        check(3, "full 12-gon search", criterion_3),
        check(4, "cross-n comparison", criterion_4),
        check(5, "property suites", criterion_5),
        check(6, "small-case oracles", criterion_6),
        check(7, "16-gon stretch run", criterion_7),
    ];
    let failed: Vec<usize> = results
        .iter()
        .enumerate()
        .filter(|(_, ok)| !**ok)
        .map(|(i, _)| i + 1)
        .collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

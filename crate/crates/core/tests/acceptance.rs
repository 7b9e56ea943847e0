//! Acceptance gate: ten criteria, one PASS/FAIL line each.
//!
//! Runs as its own binary (no libtest harness) so criteria execute one at a
//! time and the wall-clock limits measure a single criterion.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use norm_lab::bisector::intersect_symmetric;
use norm_lab::ortho::{chord_midpoint_pair_with, ChordScan};
use norm_lab::report::{to_json, Report};
use norm_lab::sampling::seeded_rng;
use norm_lab::theorems::{
    classify, deviation_scan, lemma_suite, verify_prop_strict, witness_nonstrict_prop, witness_nonstrict_theorem,
    witness_strictconvex_theorem, NormClass, PairCheck, SearchConfig, Witness,
};
use norm_lab::{Mat2, Norm, Vec2};
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: f64, what: &str) -> Result<(), String> {
    ensure(elapsed.as_secs_f64() < limit, || format!("{what} took {elapsed:?}, limit {limit} s"))
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn linf() -> Norm {
    Norm::pnorm(f64::INFINITY).unwrap()
}

fn sheared_p3() -> Norm {
    Norm::linear_image(Norm::pnorm(3.0).unwrap(), Mat2([[1.0, 1.0], [0.0, 1.0]])).unwrap()
}

fn close(a: Vec2, b: Vec2, tol: f64) -> bool {
    a.dist(b) <= tol
}

fn check_norm_equalities(n: &Norm, w: &Witness, tol: f64) -> Result<(), String> {
    let eqs = [n.gauge(w.z - w.x) - n.gauge(w.z + w.x), n.gauge(w.z - w.y) - n.gauge(w.z + w.y)];
    ensure(eqs.iter().all(|r| r.abs() <= tol), || format!("bisector residuals {eqs:?} exceed {tol:e}"))
}

fn c1() -> Outcome {
    let start = Instant::now();
    let n = linf();
    let w = witness_nonstrict_prop(&n).map_err(e)?;
    let elapsed = start.elapsed();
    let want = (Vec2::new(1.0, 0.0), Vec2::new(1.0, 0.5), Vec2::new(0.0, 0.5));
    ensure(w.x == want.0 && w.y == want.1 && w.z == want.2, || format!("got x={:?} y={:?} z={:?}", w.x, w.y, w.z))?;
    check_norm_equalities(&n, &w, 1e-12)?;
    ensure((n.gauge(w.x) - 1.0).abs() <= 1e-12 && (n.gauge(w.y) - 1.0).abs() <= 1e-12, || "x, y not unit".into())?;
    within(elapsed, 0.1, "witness")?;
    Ok(format!("z=(0,1/2), x=(1,0), y=(1,1/2) in {elapsed:?}"))
}

fn strict_norms() -> Vec<(&'static str, Norm)> {
    vec![
        ("pnorm(4)", Norm::pnorm(4.0).unwrap()),
        ("pnorm(1.5)", Norm::pnorm(1.5).unwrap()),
        ("shear*pnorm(3)", sheared_p3()),
    ]
}

fn c2_report(n: &Norm) -> Result<Report, String> {
    let pr = verify_prop_strict(n, PairCheck { pairs: 200, t_max: 8.0, count: 201, seed: 0 }).map_err(e)?;
    Ok(Report {
        norm: n.to_def(),
        classification: classify(n).map_err(e)?,
        suites: vec![pr.to_suite()],
        witnesses: pr.violations.iter().map(Witness::record).collect(),
    })
}

fn c2() -> Outcome {
    let mut notes = Vec::new();
    for (name, n) in strict_norms() {
        let start = Instant::now();
        let r = c2_report(&n)?;
        let elapsed = start.elapsed();
        ensure(r.suites[0].checked == 200, || format!("{name}: checked {}", r.suites[0].checked))?;
        ensure(r.witnesses.is_empty(), || format!("{name}: {} nonzero intersections", r.witnesses.len()))?;
        within(elapsed, 30.0, name)?;
        notes.push(format!("{name} {:.2}s", elapsed.as_secs_f64()));
    }
    Ok(format!("200 pairs, 0 intersections each ({})", notes.join(", ")))
}

fn c3() -> Outcome {
    let norms = [
        ("pnorm(inf)", linf()),
        ("pnorm(1)", Norm::pnorm(1.0).unwrap()),
        ("hexagon", Norm::regular_polygon(6).unwrap()),
    ];
    let mut notes = Vec::new();
    for (name, n) in norms {
        let start = Instant::now();
        let w = witness_nonstrict_prop(&n).map_err(e)?;
        let found = intersect_symmetric(&n, w.x, w.y, 8.0, 201).map_err(e)?;
        let elapsed = start.elapsed();
        let gap = found.iter().map(|&p| p.dist(w.z).min(p.dist(-w.z))).fold(f64::INFINITY, f64::min);
        ensure(gap <= 1e-6, || format!("{name}: closest re-found point is {gap:e} from z = {:?}", w.z))?;
        within(elapsed, 5.0, name)?;
        notes.push(format!("{name} gap {gap:.1e}"));
    }
    Ok(notes.join(", "))
}

fn c4() -> Outcome {
    let n = linf();
    let mut notes = Vec::new();
    for lambda in [0.5, 3.0] {
        let w = witness_nonstrict_theorem(&n, lambda).map_err(e)?;
        check_norm_equalities(&n, &w, 1e-12)?;
        let ratio = (n.gauge(w.y) - lambda * n.gauge(w.x)).abs();
        ensure(ratio <= 1e-12, || format!("lambda {lambda}: |gauge(y) - lambda gauge(x)| = {ratio:e}"))?;
        notes.push(format!("lambda {lambda}: z = ({}, {})", w.z.u, w.z.w));
    }
    Ok(notes.join("; "))
}

fn c5_witness(n: &Norm, lambda: f64) -> Result<Witness, String> {
    witness_strictconvex_theorem(n, lambda, SearchConfig::default()).map_err(e)
}

fn c5() -> Outcome {
    let mut worst = Duration::ZERO;
    for (name, n) in strict_norms().into_iter().take(2) {
        for lambda in [0.5, 2.0, 4.0] {
            let start = Instant::now();
            let w = c5_witness(&n, lambda)?;
            let elapsed = start.elapsed();
            worst = worst.max(elapsed);
            check_norm_equalities(&n, &w, 1e-8)?;
            ensure(w.independence > 1e-3, || format!("{name}, {lambda}: independence {}", w.independence))?;
            let ratio = n.gauge(w.y) / n.gauge(w.x);
            ensure((ratio - lambda).abs() <= 1e-8, || format!("{name}, {lambda}: radius ratio {ratio}"))?;
            within(elapsed, 10.0, &format!("{name}, lambda {lambda}"))?;
        }
    }
    Ok(format!("6 witnesses, slowest {worst:?}"))
}

fn c6() -> Outcome {
    let n = Norm::quadratic(Mat2([[2.0, 1.0], [1.0, 2.0]])).map_err(e)?;
    let dev = deviation_scan(&n, 360, 8.0, 201).map_err(e)?;
    ensure(dev.len() == 360, || format!("{} directions scanned", dev.len()))?;
    let max_dev = dev.iter().map(|d| d.1).fold(0.0, f64::max);
    ensure(max_dev <= 1e-9, || format!("max deviation {max_dev:e}"))?;
    let mut rng = seeded_rng(6);
    let mut pairs = 0;
    while pairs < 100 {
        let (s, t) = (rng.random_range(0.0..PI), rng.random_range(0.0..PI));
        if (s - t).sin().abs() < 1e-2 {
            continue;
        }
        pairs += 1;
        let found = intersect_symmetric(&n, n.unit_point(s), n.unit_point(t), 8.0, 201).map_err(e)?;
        ensure(found.is_empty(), || format!("pair ({s}, {t}) shares {:?}", found))?;
    }
    Ok(format!("max deviation {max_dev:.1e} over 360 directions; 100 pairs empty"))
}

const INCLUSIONS: [&str; 4] = [
    "hull_left_part_in_ball",
    "ball_right_part_in_hull",
    "ball_right_part_in_shrunk_ball",
    "shrunk_ball_left_part_in_ball",
];

fn c7_report(n: &Norm) -> Result<Report, String> {
    Ok(Report {
        norm: n.to_def(),
        classification: classify(n).map_err(e)?,
        suites: lemma_suite(n, 10, 500, 0).map_err(e)?,
        witnesses: Vec::new(),
    })
}

fn c7() -> Outcome {
    let mut notes = Vec::new();
    for (name, n) in strict_norms().into_iter().take(2) {
        let r = c7_report(&n)?;
        for s in &r.suites {
            ensure(s.checked > 0, || format!("{name}: suite {} checked nothing", s.name))?;
            ensure(s.passed(), || {
                format!("{name}: {} violations in {}: {:?}", s.violations.len(), s.name, s.violations.first())
            })?;
        }
        for want in INCLUSIONS {
            ensure(r.suites.iter().any(|s| s.name == want), || format!("{name}: missing suite {want}"))?;
        }
        let chord = r.suites.iter().find(|s| s.name == "chord_width_decreases_outward").ok_or("no width suite")?;
        let drop = chord.margins.get("width_drop").copied().unwrap_or(f64::NAN);
        ensure(chord.checked == 8 && drop > 0.0, || {
            format!("{name}: {} beta > alpha frames, min drop {drop}", chord.checked)
        })?;
        notes.push(format!("{name} min width drop {drop:.2e}"));
    }
    Ok(notes.join(", "))
}

fn c8() -> Outcome {
    let norms = [
        ("pnorm(4)", Norm::pnorm(4.0).unwrap()),
        ("pnorm(1.5)", Norm::pnorm(1.5).unwrap()),
        ("shear*pnorm(3)", sheared_p3()),
        ("quadratic", Norm::quadratic(Mat2([[2.0, 1.0], [1.0, 2.0]])).unwrap()),
    ];
    let shifted = ChordScan { resolution: 1021, offset: 0.377 };
    let mut worst = 0.0f64;
    for (name, n) in norms {
        let mut rng = seeded_rng(8);
        for _ in 0..100 {
            let z = n.sphere_point(rng.random_range(0.0..2.0 * PI), rng.random_range(0.02..0.98)).map_err(e)?;
            let a = chord_midpoint_pair_with(&n, z, ChordScan::default()).map_err(e)?;
            let b = chord_midpoint_pair_with(&n, z, shifted).map_err(e)?;
            let gap = a.x.dist(b.x).max(a.x_prime.dist(b.x_prime)).min(a.x.dist(b.x_prime).max(a.x_prime.dist(b.x)));
            worst = worst.max(gap);
            ensure(a.matches(&b, 1e-9), || format!("{name}, z = {z:?}: restarts differ by {gap:e}"))?;
            ensure(a.unique && b.unique, || format!("{name}, z = {z:?}: chord reported non-unique"))?;
            ensure(close(a.x.midpoint(a.x_prime), z, 1e-9), || format!("{name}: midpoint off"))?;
        }
    }
    Ok(format!("4 norms x 100 interior points, worst restart gap {worst:.1e}"))
}

/// Parallelogram-law residuals from an independent numpy/scipy evaluation
/// of the same 1000 R2 unit pairs (plastic-number generators).
const PNORM_RESIDUALS: [(f64, f64); 5] = [
    (1.0, 3.680766475689753),
    (1.5, 1.021633211873219),
    (3.0, 1.038392448996639),
    (4.0, 1.6545486359828887),
    (f64::INFINITY, 3.8385223596398426),
];

/// Sup of the same defect over a 1440 x 1440 angle grid (same oracle);
/// the sampled residual can never exceed it by more than rounding.
const PNORM_GRID_SUP: [f64; 5] = [4.0, 1.0396841995794919, 1.0396841995794928, 1.6568542494923815, 4.0];

fn c9() -> Outcome {
    let quadratics = [
        Mat2::IDENTITY,
        Mat2([[2.0, 1.0], [1.0, 2.0]]),
        Mat2([[3.0, -1.0], [-1.0, 0.5]]),
        Mat2([[0.01, 0.0], [0.0, 100.0]]),
    ];
    let mut worst_q = 0.0f64;
    for form in quadratics {
        let c = classify(&Norm::quadratic(form).map_err(e)?).map_err(e)?;
        ensure(c.class == NormClass::Euclidean, || format!("{form:?} classified {:?}", c.class))?;
        ensure(c.parallelogram_residual <= 1e-12, || format!("{form:?}: residual {:e}", c.parallelogram_residual))?;
        worst_q = worst_q.max(c.parallelogram_residual);
    }
    for ((p, want), sup) in PNORM_RESIDUALS.into_iter().zip(PNORM_GRID_SUP) {
        let c = classify(&Norm::pnorm(p).map_err(e)?).map_err(e)?;
        let r = c.parallelogram_residual;
        ensure(c.class != NormClass::Euclidean && r > 1e-2, || format!("p = {p}: {:?}, residual {r}", c.class))?;
        ensure((r - want).abs() <= 1e-9 * want, || format!("p = {p}: residual {r}, oracle {want}"))?;
        ensure(r <= sup + 1e-12, || format!("p = {p}: residual {r} above grid sup {sup}"))?;
    }
    Ok(format!("quadratics <= {worst_q:.1e}; 5 p-norms match oracle to 1e-9"))
}

fn c10() -> Outcome {
    let p4 = Norm::pnorm(4.0).unwrap();
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().map_err(e)?;
    let runs = || -> Result<Vec<String>, String> {
        let mut docs = vec![to_json(&c2_report(&p4)?), to_json(&c7_report(&p4)?)];
        for lambda in [0.5, 2.0] {
            let w = c5_witness(&p4, lambda)?;
            docs.push(to_json(&Report {
                norm: p4.to_def(),
                classification: classify(&p4).map_err(e)?,
                suites: Vec::new(),
                witnesses: vec![w.record()],
            }));
        }
        Ok(docs)
    };
    let first = runs()?;
    let second = runs()?;
    let serial = single.install(runs)?;
    for (i, ((a, b), c)) in first.iter().zip(&second).zip(&serial).enumerate() {
        ensure(a == b, || format!("document {i} differs between runs"))?;
        ensure(a == c, || format!("document {i} differs on one thread"))?;
    }
    let bytes: usize = first.iter().map(String::len).sum();
    Ok(format!("{} reports ({bytes} bytes) identical across 3 runs incl. single-threaded", first.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("l_inf witness reproduction", c1),
        ("strictly convex: no nonzero unit-pair intersections", c2),
        ("flat segment: witness re-found by intersection search", c3),
        ("flat branch: cross-radius witness", c4),
        ("strictly convex branch: cross-radius witness search", c5),
        ("Euclidean negative control", c6),
        ("chord-frame inclusions and width monotonicity", c7),
        ("chord-midpoint uniqueness across restarts", c8),
        ("classification and parallelogram residuals", c9),
        ("determinism of JSON reports", c10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {:>2}. {name} [{secs:.2}s]: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL  {:>2}. {name} [{secs:.2}s]: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

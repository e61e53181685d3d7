//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use two_inner_core::integral::{integral_report, QuadratureGrid, SyncOptions, WeightedTriple};
use two_inner_core::outcome::PropertyOutcome;
use two_inner_core::reverse::{
    additive_reverse, extremal_instance, sharpness_probe, InequalityId, PositivePair, ScalarPair, SharpTheorem,
};
use two_inner_core::sweep::{
    axiom_sweep, conditional_sweep, formula_sweep, identity_sweep, rank_two_sweep, sharpness_sweep, Draw,
    GridSweepConfig, Induced, SweepConfig,
};
use two_inner_core::{FieldTag, Scalar, Tolerance, TwoInnerEvaluator, Vector};

const SEED: u64 = 20_240_601;
const TRIALS: usize = 10_000;
const DIMS: [usize; 7] = [2, 3, 4, 5, 6, 7, 8];
/// Relative tolerance for values the criteria quote to three or four digits.
const QUOTED_REL: f64 = 1e-2;

struct Gate {
    failures: usize,
}

impl Gate {
    fn line(&mut self, n: u32, ok: bool, text: String) {
        if !ok {
            self.failures += 1;
        }
        println!("{} [{n}] {text}", if ok { "PASS" } else { "FAIL" });
    }
}

fn sweep_config(trials: usize) -> SweepConfig {
    SweepConfig::new(SEED, trials, DIMS.to_vec(), vec![FieldTag::Real, FieldTag::Complex]).unwrap()
}

fn summarize(outcomes: &[PropertyOutcome]) -> (bool, usize, f64, Vec<String>) {
    let failing: Vec<String> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id.clone()).collect();
    let checked = outcomes.iter().map(|o| o.checked).sum();
    let worst = outcomes
        .iter()
        .map(|o| if o.worst_trial.is_some() { o.worst_ratio } else { 0.0 })
        .fold(0.0, f64::max);
    (failing.is_empty(), checked, worst, failing)
}

fn secs(d: Duration) -> f64 {
    d.as_secs_f64()
}

fn near(value: f64, quoted: f64) -> bool {
    (value - quoted).abs() <= QUOTED_REL * quoted.abs()
}

fn criterion_1_2(gate: &mut Gate) {
    let cfg = sweep_config(TRIALS);
    let start = Instant::now();
    let axioms = axiom_sweep(&cfg, &Induced).unwrap();
    let elapsed = start.elapsed();
    let (ok, checked, worst, failing) = summarize(&axioms);
    gate.line(
        1,
        ok && secs(elapsed) < 10.0,
        format!(
            "axiom suite: {checked} checks over {TRIALS} tuples x 2 fields x dims 2-8, worst residual/band {worst:.3e}, {:.2} s (limit 10 s) {failing:?}",
            secs(elapsed)
        ),
    );

    let cbs: Vec<PropertyOutcome> = axioms.into_iter().filter(|o| o.id.starts_with("axiom/cauchy-schwarz")).collect();
    let rank2 = rank_two_sweep(&SweepConfig { trials: 1000, ..cfg }, &Induced).unwrap();
    let (ok_a, _, worst_a, fa) = summarize(&cbs);
    let (ok_b, n_b, worst_b, fb) = summarize(&rank2);
    gate.line(
        2,
        ok_a && ok_b,
        format!(
            "CBS gap >= -band on the axiom sweep (worst {worst_a:.3e}); gap <= band on {n_b} rank<=2 triples (worst {worst_b:.3e}) {fa:?}{fb:?}"
        ),
    );
}

fn criterion_3(gate: &mut Gate) {
    let cfg = sweep_config(TRIALS);
    let out = identity_sweep(&cfg, &Induced).unwrap();
    let (ok, checked, worst, failing) = summarize(&out);
    gate.line(
        3,
        ok,
        format!("unconditional identities (equivalence, I1-I2=gap, step bound, triangle): {checked} checks, worst residual/band {worst:.3e} {failing:?}"),
    );
}

fn criterion_4(gate: &mut Gate) {
    let cfg = sweep_config(TRIALS);
    let mut parts = Vec::new();
    let mut ok = true;
    for draw in [Draw::Rejection, Draw::Targeted] {
        let out = conditional_sweep(&cfg, &Induced, draw).unwrap();
        let accepted: usize = out
            .iter()
            .filter(|o| o.id.contains("/accepted/"))
            .map(|o| o.checked - o.violations)
            .sum();
        let bounds: Vec<PropertyOutcome> = out.into_iter().filter(|o| !o.id.contains("/accepted/")).collect();
        let (b_ok, checked, worst, failing) = summarize(&bounds);
        ok &= b_ok && accepted >= TRIALS;
        parts.push(format!(
            "{}: {accepted} accepted instances, {checked} bound checks, worst shortfall/band {worst:.3e} {failing:?}",
            draw.name()
        ));
    }
    gate.line(4, ok, format!("conditional bounds 2.3 2.9 2.15 2.16 2.17 2.18 2.19: {}", parts.join("; ")));
}

fn criterion_5(gate: &mut Gate) {
    let tol = Tolerance::DEFAULT;
    let mut ok = true;
    let mut notes = Vec::new();
    for (field, a, big_a) in [
        (FieldTag::Real, Scalar::new(0.0, 0.0), Scalar::new(2.0, 0.0)),
        (FieldTag::Complex, Scalar::new(1.0, -1.0), Scalar::new(1.0, 1.0)),
    ] {
        let ev = TwoInnerEvaluator::unit(3, field).unwrap();
        let (y, m, z) = (Vector::basis(3, 0).unwrap(), Vector::basis(3, 1).unwrap(), Vector::basis(3, 2).unwrap());
        let pair = ScalarPair::new(a, big_a, field).unwrap();
        let x = extremal_instance(&ev, &y, &m, &z, pair).unwrap();
        let b = additive_reverse(&ev, &x, &y, &z, pair, tol).unwrap();
        ok &= b.slack.abs() <= 1e-9 && b.hypothesis_ok && b.lhs == 1.0;
        notes.push(format!("{field} extremal gap {} slack {:.1e}", b.lhs, b.slack));
    }
    let ev = TwoInnerEvaluator::unit(3, FieldTag::Real).unwrap();
    for (theorem, below) in [(SharpTheorem::Additive, 0.2499), (SharpTheorem::Quotient, 0.499)] {
        let c = theorem.sharp_constant();
        let hit = sharpness_probe(&ev, below, theorem, tol).unwrap().is_some();
        let miss = sharpness_probe(&ev, c, theorem, tol).unwrap().is_none();
        ok &= hit && miss;
        notes.push(format!("{} witness at {below}: {hit}, none at {c}: {miss}", theorem.label()));
    }
    let random = sharpness_sweep(&sweep_config(1000), &Induced).unwrap();
    let (r_ok, checked, worst, failing) = summarize(&random);
    ok &= r_ok;
    notes.push(format!("{checked} random extremal/probe checks, worst {worst:.3e} {failing:?}"));
    gate.line(5, ok, format!("sharpness: {}", notes.join("; ")));
}

fn criterion_6(gate: &mut Gate) {
    let cfg = GridSweepConfig::new(SEED, 500, 256).unwrap();
    let start = Instant::now();
    let out = formula_sweep(&cfg).unwrap();
    let elapsed = start.elapsed();
    let (ok, _, worst, failing) = summarize(&out);
    let checked = out.iter().find(|o| o.id == "integral/formula-equivalence").map_or(0, |o| o.checked);
    gate.line(
        6,
        ok && secs(elapsed) < 30.0,
        format!(
            "double-sum vs determinant form on {checked} random grids (N <= 256), worst residual/band {worst:.3e}, {:.2} s (limit 30 s) {failing:?}",
            secs(elapsed)
        ),
    );
}

fn criterion_7(gate: &mut Gate) {
    let tol = Tolerance::DEFAULT;
    let grid = QuadratureGrid::simpson(1.0, 2.0, 2001).unwrap();
    let t = WeightedTriple::sample(&grid, |s| s * s, |s| s, |_| 1.0, |_| 1.0).unwrap();
    let r = integral_report(&t, PositivePair::new(2.0, 4.0).unwrap(), &grid, SyncOptions::default()).unwrap();
    let find = |id: InequalityId| r.bounds.iter().chain(&r.printed).find(|b| b.inequality_id == id).unwrap();
    let e = r.determinant.entries;
    let fg = r.determinant.two_inner_det;
    let gap = e.f_norm_sq() * e.g_norm_sq() - fg * fg;
    let (b6, b7, b7p, b8, b10) = (
        find(InequalityId::DetGap),
        find(InequalityId::DetQuotient),
        find(InequalityId::DetQuotientPrinted),
        find(InequalityId::DetDifference),
        find(InequalityId::DetTriangle),
    );
    let checks = [
        ("(f,g|h) = 0.25", (fg - 0.25).abs() <= 1e-7),
        ("|f|h|^2 = 34/45", (e.f_norm_sq() - 34.0 / 45.0).abs() <= 1e-6),
        ("gap = 1/2160", (gap - 1.0 / 2160.0).abs() <= 1e-6 && (b6.lhs - 1.0 / 2160.0).abs() <= 1e-6),
        ("3.6 rhs = 1/144", (b6.rhs - 1.0 / 144.0).abs() <= 1e-9),
        ("3.8 lhs ~ 9.25e-4 <= 1.5165e-2", near(b8.lhs, 9.25e-4) && near(b8.rhs, 1.5165e-2) && b8.slack > 0.0),
        ("3.10 lhs ~ 8.01e-4 <= 0.174166", near(b10.lhs, 8.01e-4) && near(b10.rhs, 0.174166) && b10.slack > 0.0),
        ("corrected 3.7 holds", r.premise.holds && b7.holds(tol) && near(b7.rhs, 0.265165)),
        ("printed 3.7 violated", b7p.violated(tol) && near(b7p.lhs, 0.250925) && near(b7p.rhs, 0.088388)),
    ];
    let failing: Vec<&str> = checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
    gate.line(
        7,
        failing.is_empty(),
        format!(
            "worked instance: (f,g|h) {fg:.9}, gap {gap:.6e}, 3.8 lhs {:.6e}, 3.10 lhs {:.6e}, 3.7 {:.6} <= {:.6}, printed 3.7 rhs {:.6} {failing:?}",
            b8.lhs, b10.lhs, b7.lhs, b7.rhs, b7p.rhs
        ),
    );
}

fn criterion_8(gate: &mut Gate) {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, extra: &[&str]| {
        let path = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_two-inner"))
            .args(["verify", "--seed", "7", "--trials", "2000", "--dims", "2,3,8", "--field", "both", "--output"])
            .arg(&path)
            .args(extra)
            .output()
            .unwrap()
            .status;
        (status.code(), std::fs::read(&path).unwrap())
    };
    let (c1, a) = run("a.json", &[]);
    let (c2, b) = run("b.json", &[]);
    let (c3, s) = run("s.json", &["--sequential"]);
    let ok = c1 == Some(0) && c2 == Some(0) && c3 == Some(0) && a == b && a == s;
    gate.line(
        8,
        ok,
        format!(
            "verify JSON byte-identical across two runs ({} bytes) and the sequential path; exit codes {c1:?} {c2:?} {c3:?}",
            a.len()
        ),
    );
}

fn main() {
    let start = Instant::now();
    let mut gate = Gate { failures: 0 };
    criterion_1_2(&mut gate);
    criterion_3(&mut gate);
    criterion_4(&mut gate);
    criterion_5(&mut gate);
    criterion_6(&mut gate);
    criterion_7(&mut gate);
    criterion_8(&mut gate);
    let total = secs(start.elapsed());
    let within = total < 120.0;
    if !within {
        gate.failures += 1;
    }
    println!("{} [all] full acceptance run {total:.1} s (limit 120 s)", if within { "PASS" } else { "FAIL" });
    if gate.failures > 0 {
        println!("{} criterion line(s) failed", gate.failures);
        std::process::exit(1);
    }
}

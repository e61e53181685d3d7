//! The four subcommands.

use serde_json::{Map, Value};
use two_inner_core::integral::{integral_report, SyncOptions};
use two_inner_core::reverse::{evaluate_all, sharpness_probe, triangle_reverse, BoundReport, PositivePair, SharpTheorem};
use two_inner_core::sweep::{verify_all, Induced, PerturbedInduced, SweepConfig};
use two_inner_core::TwoInnerEvaluator;

use crate::args::{Cli, Command, RunConfig};
use crate::error::CliError;
use crate::instance::{self, Endpoints};
use crate::report::{self, bound_property, bound_row, cell, num, object, residual_property, status, Table, BOUND_HEADERS};
use crate::grid_input;

/// A finished run: the JSON report, its table rendering and the verdict.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub report: Value,
    pub table: String,
    pub passed: bool,
}

pub fn run(cli: &Cli) -> Result<RunOutput, CliError> {
    let cfg = RunConfig::from_cli(cli)?;
    match &cli.command {
        Command::Verify { perturb } => run_verify(&cfg, *perturb),
        Command::Bounds { which } => run_bounds(&cfg, which.as_deref()),
        Command::Integral {
            lower,
            upper,
            which,
            sync_cap,
            no_sync_cap,
        } => {
            let cap = if *no_sync_cap { None } else { Some(*sync_cap) };
            run_integral(&cfg, *lower, *upper, which.as_deref(), cap)
        }
        Command::Sharpness { constant, which } => run_sharpness(&cfg, *constant, which),
    }
}

fn config_json(cfg: &RunConfig, extra: Vec<(&str, Value)>) -> Value {
    let mut m = Map::new();
    m.insert("command".into(), cfg.command.into());
    m.insert("seed".into(), cfg.seed.into());
    m.insert("trials".into(), cfg.trials.into());
    m.insert("dims".into(), cfg.dims.clone().into());
    m.insert("fields".into(), cfg.fields.iter().map(|f| f.to_string()).collect::<Vec<_>>().into());
    m.insert("tol".into(), report::tolerance(cfg.tol));
    m.insert(
        "input".into(),
        cfg.input.as_ref().map_or(Value::Null, |p| p.display().to_string().into()),
    );
    for (k, v) in extra {
        m.insert(k.into(), v);
    }
    Value::Object(m)
}

fn finish(cfg: &RunConfig, config: Value, properties: Vec<Value>, sections: Vec<(&str, Value)>, table: String) -> RunOutput {
    let failing: Vec<Value> = properties
        .iter()
        .filter(|p| p["passed"] == Value::Bool(false))
        .map(|p| p["id"].clone())
        .collect();
    let passed = failing.is_empty();
    let mut m = Map::new();
    m.insert("command".into(), cfg.command.into());
    m.insert("config".into(), config);
    m.insert("properties".into(), Value::Array(properties));
    for (k, v) in sections {
        m.insert(k.into(), v);
    }
    let mut table = table;
    if passed {
        table.push_str("verdict: PASS\n");
    } else {
        let ids: Vec<String> = failing.iter().filter_map(|v| v.as_str().map(str::to_string)).collect();
        table.push_str(&format!("verdict: FAIL ({})\n", ids.join(", ")));
    }
    m.insert("verdict".into(), object([("passed", passed.into()), ("failing", Value::Array(failing))]));
    RunOutput {
        report: Value::Object(m),
        table,
        passed,
    }
}

fn run_verify(cfg: &RunConfig, perturb: Option<f64>) -> Result<RunOutput, CliError> {
    let sweep = SweepConfig {
        seed: cfg.seed,
        trials: cfg.trials,
        dims: cfg.dims.clone(),
        fields: cfg.fields.clone(),
        tol: cfg.tol,
        exec: cfg.exec,
    };
    let outcomes = match perturb {
        Some(delta) => verify_all(&sweep, &PerturbedInduced { delta })?,
        None => verify_all(&sweep, &Induced)?,
    };
    let mut table = Table::new(&["id", "checked", "violations", "max residual", "worst ratio", "status"]);
    for o in &outcomes {
        table.push(vec![
            o.id.clone(),
            o.checked.to_string(),
            o.violations.to_string(),
            cell(o.max_residual),
            cell(o.worst_ratio),
            status(o.passed),
        ]);
    }
    let extra = perturb.map(|d| vec![("perturb", num(d))]).unwrap_or_default();
    let properties = outcomes.iter().map(report::sweep_property).collect();
    Ok(finish(cfg, config_json(cfg, extra), properties, vec![], table.render()))
}

fn keep(which: Option<&str>, b: &BoundReport) -> bool {
    which.is_none_or(|w| b.inequality_id.label() == w)
}

fn check_which(which: Option<&str>) -> Result<(), CliError> {
    match which {
        Some(w) if two_inner_core::reverse::InequalityId::from_label(w).is_none() => {
            Err(CliError::Config(format!("unknown inequality id `{w}`")))
        }
        _ => Ok(()),
    }
}

fn run_bounds(cfg: &RunConfig, which: Option<&str>) -> Result<RunOutput, CliError> {
    check_which(which)?;
    let inst = instance::load(cfg.require_input()?)?;
    let ev = &inst.evaluator;
    let pair = inst.endpoints.scalar_pair();
    let tol = cfg.tol;
    let r = evaluate_all(ev, &inst.x, &inst.y, &inst.z, pair, tol)?;

    let mut properties = vec![
        residual_property("condition/equivalence", r.condition.equivalence_residual, r.condition.scale, tol),
        residual_property("identity/i1-i2-gap", r.identity.residual, r.identity.scale, tol),
        residual_property("identity/step-bound", (r.identity.i1 - r.identity.i1_bound).max(0.0), r.identity.scale, tol),
    ];
    if let Endpoints::Positive(pp) = inst.endpoints {
        let tri = triangle_reverse(ev, &inst.x, &inst.y, &inst.z, pp, tol)?;
        properties.push(residual_property("identity/triangle", tri.identity_residual, tri.identity_scale, tol));
    }
    let bounds: Vec<&BoundReport> = r.bounds.iter().filter(|b| keep(which, b)).collect();
    if bounds.is_empty() {
        return Err(CliError::Config(format!(
            "inequality {} does not apply to this instance",
            which.unwrap_or("?")
        )));
    }
    properties.extend(bounds.iter().map(|b| bound_property(b, tol)));

    let mut table = format!(
        "condition Re(Ay - x, x - ay | z) = {}  ({})\n\n",
        cell(r.condition.re_form),
        if r.condition.holds { "holds" } else { "fails" }
    );
    let mut t = Table::new(&BOUND_HEADERS);
    for b in &bounds {
        t.push(bound_row(b, tol));
    }
    table.push_str(&t.render());

    let c = &r.condition;
    let i = &r.identity;
    let sections = vec![
        (
            "condition",
            object([
                ("re_form", num(c.re_form)),
                ("ball_form", num(c.ball_form)),
                ("equivalence_residual", num(c.equivalence_residual)),
                ("scale", num(c.scale)),
                ("holds", c.holds.into()),
            ]),
        ),
        (
            "identity",
            object([
                ("i1", num(i.i1)),
                ("i2", num(i.i2)),
                ("gap", num(i.gap)),
                ("residual", num(i.residual)),
                ("i1_bound", num(i.i1_bound)),
            ]),
        ),
    ];
    let extra = vec![
        ("which", which.map_or(Value::Null, Value::from)),
        ("a", report::scalar(pair.lo)),
        ("A", report::scalar(pair.hi)),
    ];
    Ok(finish(cfg, config_json(cfg, extra), properties, sections, table))
}

fn run_integral(
    cfg: &RunConfig,
    lower: f64,
    upper: f64,
    which: Option<&str>,
    cap: Option<usize>,
) -> Result<RunOutput, CliError> {
    check_which(which)?;
    let (grid, triple) = grid_input::load(cfg.require_input()?)?;
    let pair = PositivePair::new(lower, upper)?;
    let tol = cfg.tol;
    let opts = SyncOptions {
        tol,
        max_nodes: cap,
        exec: cfg.exec,
    };
    let r = integral_report(&triple, pair, &grid, opts)?;
    let d = &r.determinant;

    let want = |b: &BoundReport| {
        which.is_none_or(|w| {
            let label = b.inequality_id.label();
            label == w || label.strip_suffix("-printed") == Some(w)
        })
    };
    let bounds: Vec<&BoundReport> = r.bounds.iter().filter(|b| want(b)).collect();
    let printed: Vec<&BoundReport> = r.printed.iter().filter(|b| want(b)).collect();
    if bounds.is_empty() && printed.is_empty() {
        return Err(CliError::Config(format!(
            "`{}` is not a determinantal inequality id",
            which.unwrap_or("?")
        )));
    }

    let mut properties = vec![residual_property("formula-equivalence", d.cross_residual, d.scale, tol)];
    properties.extend(bounds.iter().map(|b| bound_property(b, tol)));

    let discrepancies: Vec<Value> = printed
        .iter()
        .map(|b| {
            let label = b.inequality_id.label();
            let corrected = r
                .bounds
                .iter()
                .find(|c| Some(c.inequality_id.label()) == label.strip_suffix("-printed"))
                .expect("every printed variant has a corrected bound");
            object([
                ("id", label.into()),
                ("corrected_id", corrected.inequality_id.label().into()),
                ("lhs", num(b.lhs)),
                ("rhs", num(b.rhs)),
                ("slack", num(b.slack)),
                ("coefficient", num(b.coefficient)),
                ("corrected_rhs", num(corrected.rhs)),
                ("corrected_coefficient", num(corrected.coefficient)),
                ("hypothesis_ok", b.hypothesis_ok.into()),
                ("violated", b.violated(tol).into()),
                ("corrected_holds", corrected.holds(tol).into()),
            ])
        })
        .collect();

    let e = &d.entries;
    let nf2 = e.f_norm_sq();
    let ng2 = e.g_norm_sq();
    let sync = &r.premise.synchronicity;
    let sections = vec![
        (
            "determinant",
            object([
                ("nodes", grid.len().into()),
                ("ff", num(e.ff)),
                ("gg", num(e.gg)),
                ("hh", num(e.hh)),
                ("fg", num(e.fg)),
                ("fh", num(e.fh)),
                ("gh", num(e.gh)),
                ("two_inner_det", num(d.two_inner_det)),
                ("two_inner_double", num(d.two_inner_double)),
                ("cross_residual", num(d.cross_residual)),
                ("f_norm_sq", num(nf2)),
                ("g_norm_sq", num(ng2)),
                ("gap", num(nf2 * ng2 - d.two_inner_det * d.two_inner_det)),
                ("scale", num(d.scale)),
            ]),
        ),
        (
            "premise",
            object([
                ("holds", r.premise.holds.into()),
                ("worst_product", num(sync.worst_product)),
                (
                    "worst_pair",
                    sync.worst_pair.map_or(Value::Null, |(i, j)| Value::from(vec![i, j])),
                ),
                ("sign_value", num(r.premise.sign_value)),
                ("sign_ok", r.premise.sign_ok.into()),
            ]),
        ),
        ("discrepancies", Value::Array(discrepancies)),
    ];

    let mut table = format!(
        "(f,g|h) = {}  |f|h|^2 = {}  |g|h|^2 = {}  premise {}\n\n",
        cell(d.two_inner_det),
        cell(nf2),
        cell(ng2),
        if r.premise.holds { "holds" } else { "fails" }
    );
    let mut t = Table::new(&BOUND_HEADERS);
    for b in &bounds {
        t.push(bound_row(b, tol));
    }
    table.push_str(&t.render());
    if !printed.is_empty() {
        table.push_str("\nprinted-constant variants (reported, not part of the verdict)\n");
        let mut t = Table::new(&["id", "lhs", "rhs", "slack", "status"]);
        for b in &printed {
            let state = if b.violated(tol) { "violated" } else { "holds" };
            t.push(vec![
                b.inequality_id.label().into(),
                cell(b.lhs),
                cell(b.rhs),
                cell(b.slack),
                state.into(),
            ]);
        }
        table.push_str(&t.render());
    }
    table.push('\n');

    let extra = vec![
        ("m", num(lower)),
        ("M", num(upper)),
        ("which", which.map_or(Value::Null, Value::from)),
        ("sync_cap", cap.map_or(Value::Null, Value::from)),
    ];
    Ok(finish(cfg, config_json(cfg, extra), properties, sections, table))
}

fn run_sharpness(cfg: &RunConfig, constant: f64, which: &str) -> Result<RunOutput, CliError> {
    let theorem = SharpTheorem::from_label(which)
        .ok_or_else(|| CliError::Config(format!("--which must be thm2.1 or thm2.2, got `{which}`")))?;
    let mut properties = Vec::new();
    let mut skipped = Vec::new();
    let mut table = Table::new(&["id", "lhs", "rhs", "witness", "status"]);
    for &field in &cfg.fields {
        for &dim in &cfg.dims {
            let id = format!("{}/{field}/{dim}", theorem.label());
            if theorem == SharpTheorem::Additive && dim < 3 {
                skipped.push(Value::from(id));
                continue;
            }
            let ev = TwoInnerEvaluator::unit(dim, field)?;
            let w = sharpness_probe(&ev, constant, theorem, cfg.tol)?;
            let (lhs, rhs) = w.as_ref().map_or((f64::NAN, f64::NAN), |w| (w.lhs, w.rhs));
            let instance = w.as_ref().map_or(Value::Null, |w| {
                object([
                    ("x", report::vector(&w.x)),
                    ("y", report::vector(&w.y)),
                    ("z", report::vector(&w.z)),
                    ("a", report::scalar(w.pair.lo)),
                    ("A", report::scalar(w.pair.hi)),
                ])
            });
            table.push(vec![
                id.clone(),
                cell(lhs),
                cell(rhs),
                if w.is_some() { "yes" } else { "no" }.into(),
                status(w.is_none()),
            ]);
            properties.push(object([
                ("id", id.into()),
                ("constant", num(constant)),
                ("sharp_constant", num(theorem.sharp_constant())),
                ("lhs", num(lhs)),
                ("rhs", num(rhs)),
                ("slack", num(rhs - lhs)),
                ("hypothesis_ok", true.into()),
                ("witness", instance),
                ("passed", w.is_none().into()),
            ]));
        }
    }
    if properties.is_empty() {
        return Err(CliError::Config("no dimension admits the probe (thm2.1 needs dim >= 3)".into()));
    }
    let extra = vec![("constant", num(constant)), ("which", which.into())];
    let sections = vec![("skipped", Value::Array(skipped))];
    Ok(finish(cfg, config_json(cfg, extra), properties, sections, table.render()))
}


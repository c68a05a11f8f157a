//! Scenario runner behind the `monogen` binary.
//!
//! A run parses a scenario, applies command-line overrides, executes the one
//! task and renders a report. Exit codes: 0 success, 1 a check failed,
//! 2 the scenario or flags were unusable.

pub mod scenario;

use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use serde::Serialize;
use serde_json::{json, Value};

use monogen_core::frobsearch::{
    addendum_predicates, compute_ef, enumerate_m, fit_patterns, precise_bound_log10, theorem_bound_log10, validate,
    EfResult, MSearchResult, PairBackend, Side, SymPair, TowerPair,
};
use monogen_core::monorder::{orders_equal, MonOrder, OrderRelation};
use monogen_core::parse::{parse_bivar, parse_poly, parse_ratfunc};
use monogen_core::tower::AlgElem;
use monogen_core::unitgrp::{brute_force_xy1, build_group, solve_xy1};
use monogen_core::verify::{verify_example_a1, verify_example_b, verify_section_3_3, VerificationReport};

pub use scenario::{load, Backend, Scenario, Task};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

/// Command-line overrides; `None` keeps the scenario value.
#[derive(Clone, Debug, Default)]
pub struct Flags {
    pub json: bool,
    /// Search box, oracle box, or exponent bound, depending on the task.
    pub bx: Option<u64>,
    pub mmax: Option<u32>,
    pub seed_eta: Option<String>,
    /// Replaces the scenario's place list.
    pub places: Option<Vec<String>>,
    /// Adds wall-clock time to the report; off by default so reports are reproducible.
    pub timing: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub scenario: String,
    pub task: String,
    pub passed: bool,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

struct Exec {
    passed: bool,
    result: Value,
    text: String,
}

pub fn run(path: &Path, flags: &Flags) -> Outcome {
    match std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display())) {
        Ok(text) => run_text(&text, flags),
        Err(e) => config_error(e),
    }
}

pub fn run_text(text: &str, flags: &Flags) -> Outcome {
    match load(text) {
        Ok(sc) => run_scenario(sc, flags),
        Err(e) => config_error(e),
    }
}

pub fn run_scenario(mut sc: Scenario, flags: &Flags) -> Outcome {
    if let Err(e) = apply_flags(&mut sc, flags) {
        return config_error(e);
    }
    let start = Instant::now();
    let exec = match execute(&sc) {
        Ok(x) => x,
        Err(e) => return config_error(e),
    };
    let report = Report {
        scenario: sc.name.clone(),
        task: sc.task.kind().into(),
        passed: exec.passed,
        result: exec.result,
        timing_ms: flags.timing.then(|| start.elapsed().as_millis()),
    };
    let stdout = if flags.json {
        let mut s = serde_json::to_string_pretty(&report).expect("reports serialise");
        s.push('\n');
        s
    } else {
        let mut s = format!("scenario {} ({})\n{}", report.scenario, report.task, exec.text);
        if !s.ends_with('\n') {
            s.push('\n');
        }
        if let Some(t) = report.timing_ms {
            let _ = writeln!(s, "time {t} ms");
        }
        let _ = writeln!(s, "{}", if report.passed { "ok" } else { "check failed" });
        s
    };
    let code = if report.passed { EXIT_OK } else { EXIT_CHECK };
    Outcome { code, stdout, stderr: String::new() }
}

fn config_error(e: anyhow::Error) -> Outcome {
    Outcome { code: EXIT_CONFIG, stdout: String::new(), stderr: format!("error: {e:#}\n") }
}

fn apply_flags(sc: &mut Scenario, f: &Flags) -> Result<()> {
    if let Some(p) = &f.places {
        sc.places = p.clone();
    }
    let kind = sc.task.kind();
    if let Some(b) = f.bx {
        match &mut sc.task {
            Task::Search { m_max, n_max, .. } => {
                *m_max = b;
                *n_max = b;
            }
            Task::UnitSolve { oracle_box, .. } => {
                *oracle_box = Some(i64::try_from(b).context("--box too large")?);
            }
            Task::Ef { bound, .. } | Task::Addendum { bound, .. } => *bound = b,
            _ => bail!("--box does not apply to a {kind} task"),
        }
    }
    if let Some(m) = f.mmax {
        match &mut sc.task {
            Task::VerifyA1 { m_max } | Task::Verify33 { m_max, .. } => *m_max = m,
            Task::Search { m_max, .. } => *m_max = m as u64,
            _ => bail!("--mmax does not apply to a {kind} task"),
        }
    }
    if let Some(e) = &f.seed_eta {
        match &mut sc.task {
            Task::Verify33 { eta, .. } => *eta = e.clone(),
            _ => bail!("--seed-eta does not apply to a {kind} task"),
        }
    }
    Ok(())
}

fn execute(sc: &Scenario) -> Result<Exec> {
    match &sc.task {
        Task::Disc { element } => disc(sc, element),
        Task::OrderEq { s, t } => order_eq(sc, s, t),
        Task::Search { s, t, backend, m_max, n_max, ef_bound } => search(sc, s, t, *backend, *m_max, *n_max, *ef_bound),
        Task::UnitSolve { generators, height_bound, oracle_box } => {
            unit_solve(sc, generators, *height_bound, *oracle_box)
        }
        Task::Ef { element, bound } => ef(sc, element, *bound),
        Task::VerifyA1 { m_max } => suite(verify_example_a1(*m_max)?),
        Task::Verify33 { eta, m_max } => {
            let ctx = sc.build()?;
            let eta = parse_poly(&ctx.field, eta).with_context(|| format!("eta = {eta}"))?;
            suite(verify_section_3_3(&eta, *m_max)?)
        }
        Task::VerifyB { i_max, j_max } => suite(verify_example_b(*i_max, *j_max)?),
        Task::Bounds { d, k_exp, s_size, lambda, r } => bounds(sc, *d, *k_exp, *s_size, *lambda, *r),
        Task::Addendum { s, t, bound } => addendum(sc, s, t, *bound),
    }
}

fn suite(rep: VerificationReport) -> Result<Exec> {
    Ok(Exec { passed: rep.passed(), result: serde_json::to_value(&rep)?, text: rep.to_string() })
}

fn disc(sc: &Scenario, name: &str) -> Result<Exec> {
    let ctx = sc.build()?;
    let s = sc.element(&ctx, name)?;
    let g = s.minimal_polynomial();
    let d = s.discriminant()?;
    let full = s.degree() == ctx.tower.degree();
    // the norm formula applies only to primitive elements
    let by_norm = if full { Some(s.discriminant_by_norm()?) } else { None };
    let agree = by_norm.as_ref().is_none_or(|n| *n == d);
    let integral = ctx.ring.contains_poly(&g);
    let mut text = format!(
        "element {name} = {s}\nminimal polynomial {}\ndisc {d}\nintegral over the base ring: {integral}\n",
        g.fmt_var("T")
    );
    if let Some(n) = &by_norm {
        let _ = writeln!(text, "disc via norm of the derivative {n} ({})", if agree { "agrees" } else { "DISAGREES" });
    }
    let result = json!({
        "element": name,
        "value": s.to_string(),
        "degree": s.degree(),
        "minimal_polynomial": g.fmt_var("T"),
        "discriminant": d.to_string(),
        "discriminant_by_norm": by_norm.map(|n| n.to_string()),
        "integral": integral,
    });
    Ok(Exec { passed: agree, result, text })
}

fn coords_json(o: &MonOrder, t: &AlgElem) -> Value {
    match o.express(t) {
        Some(c) => Value::from(c.iter().map(|a| a.to_string()).collect::<Vec<_>>()),
        None => Value::Null,
    }
}

fn order_eq(sc: &Scenario, s_name: &str, t_name: &str) -> Result<Exec> {
    let ctx = sc.build()?;
    let s = sc.element(&ctx, s_name)?;
    let t = sc.element(&ctx, t_name)?;
    let rel = orders_equal(&s, &t, &ctx.ring);
    let (label, detail) = match &rel {
        OrderRelation::Equal => ("equal", String::new()),
        OrderRelation::Different { reason } => ("different", reason.clone()),
        OrderRelation::NotIntegral { detail } => ("not-integral", detail.clone()),
    };
    let mut result = json!({ "s": s.to_string(), "t": t.to_string(), "relation": label, "detail": detail });
    let mut text = format!("O[{s_name}] vs O[{t_name}]: {label}");
    if !detail.is_empty() {
        let _ = write!(text, " ({detail})");
    }
    text.push('\n');
    if rel.is_equal() {
        let os = MonOrder::new(&s, ctx.ring.clone())?;
        let ot = MonOrder::new(&t, ctx.ring.clone())?;
        result["t_in_s"] = coords_json(&os, &t);
        result["s_in_t"] = coords_json(&ot, &s);
        let _ = writeln!(text, "{t_name} in O[{s_name}]: {}", result["t_in_s"]);
        let _ = writeln!(text, "{s_name} in O[{t_name}]: {}", result["s_in_t"]);
    }
    Ok(Exec { passed: true, result, text })
}

fn search(
    sc: &Scenario,
    s_name: &str,
    t_name: &str,
    backend: Backend,
    m_max: u64,
    n_max: u64,
    ef_bound: Option<u64>,
) -> Result<Exec> {
    let ctx = sc.build()?;
    let cap_m = m_max.max(ef_bound.unwrap_or(0));
    let cap_n = n_max.max(ef_bound.unwrap_or(0));
    match backend {
        Backend::Tower => {
            let s = sc.element(&ctx, s_name)?;
            let t = sc.element(&ctx, t_name)?;
            let b = TowerPair::new(&s, &t, ctx.ring.clone(), cap_m, cap_n)?;
            search_with(&b, m_max, n_max, ef_bound)
        }
        Backend::Sym => {
            if !sc.tower.is_empty() || !sc.places.is_empty() {
                bail!("the sym backend works in F_q[x, y] over F_q[x+y, xy]; drop the tower and places");
            }
            let s = parse_bivar(&ctx.field, sc.element_text(s_name)?).context("element s")?;
            let t = parse_bivar(&ctx.field, sc.element_text(t_name)?).context("element t")?;
            let b = SymPair::new(&s, &t, cap_m, cap_n)?;
            search_with(&b, m_max, n_max, ef_bound)
        }
    }
}

fn search_with<B: PairBackend>(b: &B, m_max: u64, n_max: u64, ef_bound: Option<u64>) -> Result<Exec> {
    let res: MSearchResult = enumerate_m(b, m_max, n_max)?;
    let data = res.pair_set();
    let bx = (m_max, n_max);
    let fitted = fit_patterns(&data, res.p, bx);
    let consistent = validate(&fitted, &data, bx);
    let mut text = format!("M in [1, {m_max}] x [1, {n_max}]: {} pairs\n", res.pairs.len());
    let shown: Vec<String> = res.pairs.iter().take(40).map(|r| format!("({}, {})", r.m, r.n)).collect();
    let more = if res.pairs.len() > 40 { ", ..." } else { "" };
    let _ = writeln!(text, "  {{{}{more}}}", shown.join(", "));
    let nondeg: Vec<String> =
        res.pairs.iter().filter(|r| r.nondegenerate()).map(|r| format!("({}, {})", r.m, r.n)).collect();
    let _ = writeln!(text, "outside A, B, C: {}", if nondeg.is_empty() { "none".into() } else { nondeg.join(", ") });
    let _ = writeln!(text, "Frobenius closure violations: {}", res.closure_violations.len());
    for f in &fitted {
        let _ = writeln!(text, "pattern {} ({} points in the box)", f.text, f.claimed.len());
    }
    let _ = writeln!(
        text,
        "fitted patterns {} the pairs found in the box",
        if consistent { "are consistent with" } else { "do NOT reproduce" }
    );
    let mut result = json!({
        "search": res,
        "patterns": fitted,
        "patterns_consistent": consistent,
        "note": "patterns are consistent with the pairs found in the box; membership outside it is not claimed",
    });
    if let Some(bound) = ef_bound {
        let e = compute_ef(b, Side::S, bound)?;
        let f = compute_ef(b, Side::T, bound)?;
        let _ = writeln!(text, "{}", ef_line("e", &e));
        let _ = writeln!(text, "{}", ef_line("f", &f));
        result["ef"] = json!({ "e": e, "f": f });
    }
    Ok(Exec { passed: res.closure_violations.is_empty() && consistent, result, text })
}

fn ef_line(name: &str, r: &EfResult) -> String {
    match r.exponent {
        Some(e) => format!(
            "{name} = {e} (bound {}, {}; power in ring: {}; gcd with p is 1: {})",
            r.bound,
            if r.verified { "verified" } else { "unverified, 2e exceeds the bound" },
            r.power_in_ring,
            r.coprime_to_p
        ),
        None => format!("{name}: no exponent up to {}", r.bound),
    }
}

fn unit_solve(sc: &Scenario, gens: &[String], height: u32, oracle_box: Option<i64>) -> Result<Exec> {
    if !sc.tower.is_empty() {
        bail!("the unit-equation solver works in F_q(x); drop the tower");
    }
    let ctx = sc.build()?;
    let g: Vec<_> = gens
        .iter()
        .map(|s| parse_ratfunc(&ctx.field, s).with_context(|| format!("generator {s}")))
        .collect::<Result<_>>()?;
    let grp = build_group(&ctx.field, &g)?;
    let rep = solve_xy1(&grp, height)?;
    let p = ctx.field.p();
    let rank = grp.rank();
    let cap = u32::try_from(2 * rank).ok().and_then(|e| p.checked_pow(e));
    let within_cap = cap.is_none_or(|c| rep.families.len() as u64 <= c);
    let fams: Vec<Value> = rep
        .families
        .iter()
        .map(|f| json!({ "family": f.describe(&grp), "torsion": f.torsion, "depth": f.depth }))
        .collect();
    let basis: Vec<String> = grp.basis().iter().map(|b| b.to_string()).collect();
    let unreached: Vec<String> =
        rep.unreached.iter().map(|(x, y)| format!("({}, {})", grp.format(x), grp.format(y))).collect();
    let mut text = format!(
        "G = <{}>, rank {rank}, torsion order {}, basis {{{}}}\n{} solution families of x + y = 1 (at most p^(2r) = {}):\n",
        gens.join(", "),
        grp.torsion_order(),
        basis.join(", "),
        rep.families.len(),
        cap.map_or("overflow".into(), |c| c.to_string())
    );
    for f in &rep.families {
        let _ = writeln!(text, "  {}", f.describe(&grp));
    }
    if !unreached.is_empty() {
        let _ = writeln!(text, "orbits not reaching G within height {height}: {}", unreached.join(", "));
    }
    let mut result = json!({
        "generators": gens,
        "basis": basis,
        "rank": rank,
        "torsion_order": grp.torsion_order(),
        "height_bound": height,
        "families": fams,
        "family_count_bound": cap,
        "primitive_in_radical": rep.primitive_in_radical,
        "unreached": unreached,
        "pairs_examined": rep.pairs_examined,
    });
    let mut passed = within_cap;
    if let Some(bx) = oracle_box {
        let oracle = brute_force_xy1(&grp, bx)?;
        let mut union: Vec<_> = rep.families.iter().flat_map(|f| f.members_within(bx)).collect();
        union.sort();
        union.dedup();
        let missing: Vec<String> = oracle
            .iter()
            .filter(|s| union.binary_search(s).is_err())
            .map(|(x, y)| format!("({}, {})", grp.format(x), grp.format(y)))
            .collect();
        let extra: Vec<String> = union
            .iter()
            .filter(|s| oracle.binary_search(s).is_err())
            .map(|(x, y)| format!("({}, {})", grp.format(x), grp.format(y)))
            .collect();
        let agree = missing.is_empty() && extra.is_empty();
        passed &= agree;
        let _ = writeln!(
            text,
            "brute force in exponent box {bx}: {} solutions, {}",
            oracle.len(),
            if agree { "identical to the families" } else { "MISMATCH" }
        );
        result["oracle"] = json!({
            "box": bx,
            "solutions": oracle.len(),
            "agree": agree,
            "missing_from_families": missing,
            "not_found_by_oracle": extra,
        });
    }
    Ok(Exec { passed, result, text })
}

fn ef(sc: &Scenario, name: &str, bound: u64) -> Result<Exec> {
    let ctx = sc.build()?;
    let s = sc.element(&ctx, name)?;
    let b = TowerPair::new(&s, &s, ctx.ring.clone(), bound, bound)?;
    let r = compute_ef(&b, Side::S, bound)?;
    let text = format!("{}\ndegrees of K({name}^n), n = 1..{bound}: {:?}\n", ef_line("e", &r), r.degrees);
    Ok(Exec { passed: true, result: serde_json::to_value(&r)?, text })
}

fn bounds(sc: &Scenario, d: u64, k: u64, s_size: u64, lambda: Option<u64>, r: Option<u64>) -> Result<Exec> {
    let p = sc.field.p;
    let thm = theorem_bound_log10(d, p, k, s_size)?;
    let mut text = format!(
        "theorem bound (d = {d}, p = {p}, q = p^{k}, |S| = {s_size}): 10^{:.6}\n  = {}\n",
        thm.log10, thm.digits
    );
    let mut result = json!({ "d": d, "p": p, "k_exp": k, "s_size": s_size, "theorem": thm });
    match (lambda, r) {
        (Some(l), Some(r)) => {
            let pre = precise_bound_log10(d, p, k, l, r)?;
            let _ = writeln!(text, "refined bound (lambda = {l}, r = {r}): 10^{:.6}\n  = {}", pre.log10, pre.digits);
            result["precise"] = json!({ "lambda": l, "r": r, "value": pre });
        }
        (None, None) => {}
        _ => bail!("the refined bound needs both lambda and r"),
    }
    Ok(Exec { passed: true, result, text })
}

fn addendum(sc: &Scenario, s_name: &str, t_name: &str, bound: u64) -> Result<Exec> {
    let ctx = sc.build()?;
    let s = sc.element(&ctx, s_name)?;
    let t = sc.element(&ctx, t_name)?;
    let b = TowerPair::new(&s, &t, ctx.ring.clone(), bound, bound)?;
    let rep = addendum_predicates(&b, bound)?;
    let text = format!(
        "{}\n{}\ns^e in O: {}, unit: {}\nt^f in O: {}, unit: {}\nverdict {:?}\n",
        ef_line("e", &rep.e),
        ef_line("f", &rep.f),
        rep.s_power_in_ring,
        rep.s_power_unit,
        rep.t_power_in_ring,
        rep.t_power_unit,
        rep.verdict
    );
    Ok(Exec { passed: true, result: serde_json::to_value(&rep)?, text })
}

/// A built-in scenario for one of the bundled verification suites.
pub fn builtin_suite(name: &str) -> Result<Scenario> {
    let (sname, field, task) = match name {
        "a1" => ("example-a1", 2, json!({ "kind": "verify-a1", "m_max": 3 })),
        "counterexample" => ("counterexample", 2, json!({ "kind": "verify-33", "eta": "x+1", "m_max": 4 })),
        "b" => ("example-b", 7, json!({ "kind": "verify-b", "i_max": 2, "j_max": 2 })),
        _ => return Err(anyhow!("unknown suite {name}; expected a1, counterexample or b")),
    };
    let v = json!({ "name": sname, "field": { "p": field }, "task": task });
    Ok(serde_json::from_value(v)?)
}

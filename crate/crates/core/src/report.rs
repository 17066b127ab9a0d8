//! Structured reports for the command-line front end. Every report is a
//! JSON value with sorted keys plus an exit code; the text form is rendered
//! from the same value, so both are deterministic.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::bracket::bracket;
use crate::cme::{check_cme, extend_action_traced, linear_action, obstruction, Outcome};
use crate::error::{Error, Result};
use crate::groebner::{normalize_primitive, BosonicRing};
use crate::io::{format_poly, parse_poly, Model};
use crate::poly::{Context, Side};
use crate::sample::{SampleOptions, Skeletons};
use crate::tate::{build_extended_space, ExtendedSpace, Status, TateState, DEFAULT_CAP};
use crate::u2::{
    classify, expected_extension, expected_obstruction, p_family_hook, paper_generators, scaled_case2,
    theorem42_action, theorem42_linear, u2_context, verify_relations, U2Case, U2ModelSpec,
};
use crate::{Coefficient, Poly};

pub const DEFAULT_MAX_Q: u32 = 6;
pub const DEFAULT_SEED: u64 = 7;
const PROBES: usize = 5;

#[derive(Clone, Debug)]
pub struct Report {
    pub value: Value,
    pub exit_code: i32,
}

impl Report {
    fn new(value: Value, exit_code: i32) -> Self {
        Report { value, exit_code }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.value).expect("json values serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        render(&self.value, 0, &mut out);
        out
    }
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match x {
                    Value::Object(_) | Value::Array(_) if !is_flat(x) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(x, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar(x))),
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                if is_flat(x) {
                    out.push_str(&format!("{pad}- {}\n", scalar(x)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    render(x, indent + 1, out);
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar(v))),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.iter().all(|x| !x.is_object() && !x.is_array()),
        Value::Object(m) => m.is_empty(),
        _ => true,
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("[{}]", a.iter().map(scalar).collect::<Vec<_>>().join(", ")),
        Value::Object(_) => "{}".into(),
        other => other.to_string(),
    }
}

/// Exit code for an error: 2 not liftable, 3 cap, 1 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotLiftable { .. } => 2,
        Error::CapExhausted { .. } => 3,
        _ => 1,
    }
}

/// A loaded model carried through resolution and space assembly.
pub struct Pipeline {
    pub model: Model,
    pub state: TateState<Coefficient>,
    pub space: ExtendedSpace,
    /// Generic-case spec and `T` when the model asks for the injection.
    pub injection: Option<(U2ModelSpec, Poly)>,
}

impl Pipeline {
    pub fn build(model: Model, cap: Option<usize>) -> Result<Pipeline> {
        let cap = cap.or(model.file.options.cap).unwrap_or(DEFAULT_CAP);
        if let Some(t) = model.file.options.t.clone() {
            let names: Vec<&str> = model.ctx.vars().iter().map(|v| v.name.as_str()).collect();
            if names != ["M1", "M2", "M3", "M4"] {
                return Err(Error::Model("T injection needs exactly the fields M1..M4".into()));
            }
            let spec = U2ModelSpec::from_action(&parse_poly(&model.file.action, &u2_context())?)?;
            if classify(&spec) != U2Case::Case2 {
                return Err(Error::Model("T injection needs the generic U(2) case".into()));
            }
            let (state, _) = scaled_case2(&spec)?;
            let t = parse_poly(&t, &spec.ctx)?;
            if t.variables().iter().any(|v| !state.ring().fields().contains(v)) {
                return Err(Error::Model("T must be a polynomial in the fields".into()));
            }
            return Self::assemble(model, state, Some((spec, t)));
        }
        let state = TateState::build_with_names(&model.action, &model.ctx, &model.antifield_names, cap)?;
        Self::assemble(model, state, None)
    }

    fn assemble(
        model: Model,
        mut state: TateState<Coefficient>,
        injection: Option<(U2ModelSpec, Poly)>,
    ) -> Result<Pipeline> {
        if !model.file.options.omit.is_empty() {
            let ids = model
                .file
                .options
                .omit
                .iter()
                .map(|n| {
                    state
                        .ctx()
                        .lookup(n)
                        .ok_or_else(|| Error::Model(format!("omit: unknown generator {n}")))
                })
                .collect::<Result<Vec<_>>>()?;
            state = state.without(&ids).map_err(|e| Error::Model(format!("omit: {e}")))?;
        }
        let space = build_extended_space(&state)?;
        Ok(Pipeline {
            model,
            state,
            space,
            injection,
        })
    }

    fn fmt(&self, p: &Poly) -> String {
        format_poly(p, &self.space.ctx)
    }
}

fn u2_case_of(ctx: &Context, s0: &Poly) -> Value {
    let names: Vec<&str> = ctx.vars().iter().map(|v| v.name.as_str()).collect();
    if names != ["M1", "M2", "M3", "M4"] {
        return Value::Null;
    }
    let text = format_poly(s0, ctx);
    let Ok(p) = parse_poly(&text, &u2_context()) else {
        return Value::Null;
    };
    if !verify_relations(&u2_context(), &p).all() {
        return Value::Null;
    }
    match U2ModelSpec::from_action(&p) {
        Ok(spec) => json!(format!("{:?}", classify(&spec))),
        Err(_) => Value::Null,
    }
}

pub fn jacobian_report(model: &Model) -> Result<Report> {
    let ctx = &model.ctx;
    let ring = BosonicRing::new(ctx);
    ring.to_vector(&model.action)?;
    let partials: Vec<Poly> = ring
        .fields()
        .iter()
        .map(|&v| model.action.deriv(v, Side::Left))
        .collect();
    let d = if partials.iter().all(|p| p.is_zero()) {
        Poly::zero()
    } else {
        normalize_primitive(&ring.gcd_many(&partials)?)
    };
    let mut rows = Vec::new();
    for (&v, p) in ring.fields().iter().zip(&partials) {
        let cof = if d.is_zero() {
            Value::Null
        } else {
            json!(format_poly(&ring.divide_exact(p, &d)?.expect("gcd divides"), ctx))
        };
        rows.push(json!({"field": ctx.name(v), "partial": format_poly(p, ctx), "cofactor": cof}));
    }
    Ok(Report::new(
        json!({
            "command": "jacobian",
            "action": format_poly(&model.action, ctx),
            "partials": rows,
            "gcd": format_poly(&d, ctx),
            "gcd_is_unit": crate::groebner::is_unit(&d),
            "u2_case": u2_case_of(ctx, &model.action),
            "warnings": model.warnings,
        }),
        0,
    ))
}

fn roster_value(st: &TateState<Coefficient>, space: &ExtendedSpace) -> Value {
    let gens: Vec<Value> = st
        .generators()
        .iter()
        .map(|g| {
            json!({
                "name": st.ctx().name(g.id),
                "degree": -(g.level as i32),
                "beta": g.beta,
                "delta": format_poly(&g.image, st.ctx()),
            })
        })
        .collect();
    let strata: Vec<Value> = space
        .strata()
        .iter()
        .map(|(d, n)| json!({"degree": d, "size": n}))
        .collect();
    json!({
        "status": st.status(),
        "generators": gens,
        "antighost_sizes": st.roster_sizes(true),
        "strata": strata,
        "level": space.level,
    })
}

fn status_str(s: Status) -> &'static str {
    match s {
        Status::Running => "running",
        Status::Terminated => "terminated",
        Status::CapExhausted => "cap-exhausted",
    }
}

pub fn tate_report(model: Model, cap: Option<usize>) -> Result<Report> {
    let p = Pipeline::build(model, cap)?;
    let code = if p.state.status() == Status::CapExhausted { 3 } else { 0 };
    Ok(Report::new(
        json!({
            "command": "tate",
            "resolution": status_str(p.state.status()),
            "roster": roster_value(&p.state, &p.space),
            "u2_case": u2_case_of(&p.model.ctx, &p.model.action),
        }),
        code,
    ))
}

/// `d²φ = 0` on seeded random elements of the extended space.
fn brst_probes(ctx: &Context, s: &Poly, seed: u64) -> Result<Value> {
    let vars: Vec<_> = ctx.ids_where(|v| v.ghost_degree != 0);
    let sk = Skeletons::new(ctx, &vars, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let o = SampleOptions {
        max_terms: 3,
        ..SampleOptions::default()
    };
    let mut out = Vec::new();
    for _ in 0..PROBES {
        let phi = sk.mixed(&mut rng, ctx, &o);
        let d2 = bracket(ctx, s, &bracket(ctx, s, &phi)?)?;
        out.push(json!({"phi": format_poly(&phi, ctx), "d2_zero": d2.is_zero()}));
    }
    Ok(json!({"seed": seed, "samples": out}))
}

pub fn extend_report(model: Model, cap: Option<usize>, max_q: Option<u32>, seed: u64) -> Result<Report> {
    let max_q = max_q
        .or(model.file.options.max_q.map(|q| q as u32))
        .unwrap_or(DEFAULT_MAX_Q);
    let p = Pipeline::build(model, cap)?;
    let ctx = &p.space.ctx;
    let s_lin = linear_action(&p.space, &p.state);
    let th = match &p.injection {
        Some((spec, t)) => {
            let hook = p_family_hook(spec, &p.space, t);
            extend_action_traced(&p.space, &p.state, max_q, Some(&*hook))?
        }
        None => extend_action_traced(&p.space, &p.state, max_q, None)?,
    };
    let residual = check_cme(ctx, &th.action)?;
    let code = match th.outcome {
        Outcome::Solved => 0,
        Outcome::NotLiftable { .. } => 2,
        Outcome::Exhausted { .. } => 3,
    };
    let probes = if th.outcome == Outcome::Solved {
        brst_probes(ctx, &th.action, seed)?
    } else {
        Value::Null
    };
    Ok(Report::new(
        json!({
            "command": "extend",
            "resolution": status_str(p.state.status()),
            "roster": roster_value(&p.state, &p.space),
            "injection": p.injection.as_ref().map(|(_, t)| p.fmt(t)),
            "linear_action": p.fmt(&s_lin),
            "trace": th.trace,
            "outcome": th.outcome,
            "action": p.fmt(&th.action),
            "cme_residual": p.fmt(&residual),
            "brst_probes": probes,
        }),
        code,
    ))
}

fn read_action(p: &Pipeline, text: &str) -> Result<Poly> {
    parse_poly(text.trim(), &p.space.ctx)
}

pub fn check_report(model: Model, action_text: &str, cap: Option<usize>) -> Result<Report> {
    let p = Pipeline::build(model, cap)?;
    let s = read_action(&p, action_text)?;
    let r = check_cme(&p.space.ctx, &s)?;
    Ok(Report::new(
        json!({
            "command": "check-cme",
            "action": p.fmt(&s),
            "residual": p.fmt(&r),
            "holds": r.is_zero(),
        }),
        if r.is_zero() { 0 } else { 1 },
    ))
}

pub fn brst_report(model: Model, action_text: &str, target: &str, cap: Option<usize>) -> Result<Report> {
    let p = Pipeline::build(model, cap)?;
    let ctx = &p.space.ctx;
    let s = read_action(&p, action_text)?;
    let phi = parse_poly(target, ctx)?;
    let d1 = bracket(ctx, &s, &phi)?;
    let d2 = bracket(ctx, &s, &d1)?;
    Ok(Report::new(
        json!({
            "command": "brst",
            "target": p.fmt(&phi),
            "d": p.fmt(&d1),
            "d2": p.fmt(&d2),
            "d2_zero": d2.is_zero(),
        }),
        0,
    ))
}

fn check(name: &str, pass: bool, detail: Value) -> Value {
    json!({"check": name, "pass": pass, "detail": detail})
}

/// The shipped golden fixture for one case.
pub fn u2_report(case: U2Case, max_q: Option<u32>, seed: u64) -> Result<Report> {
    let max_q = max_q.unwrap_or(DEFAULT_MAX_Q);
    let ctx = u2_context();
    let s0 = parse_poly(case.sample(), &ctx)?;
    let spec = U2ModelSpec::from_action(&s0)?;
    let mut checks = Vec::new();
    let computed = classify(&spec);
    checks.push(check(
        "classification",
        computed == case,
        json!({"computed": format!("{computed:?}"), "gcd": format_poly(&spec.d, &ctx)}),
    ));
    checks.push(check(
        "linear relations",
        verify_relations(&ctx, &s0).all(),
        Value::Null,
    ));

    let st = TateState::build_resolution(&s0, &ctx, DEFAULT_CAP)?;
    let space = build_extended_space(&st)?;
    let expected = expected_extension(case);
    checks.push(check(
        "roster",
        space.strata() == expected,
        json!({"computed": space.strata(), "expected": expected}),
    ));

    let tower = paper_generators(&spec)?;
    for (k, named) in tower.levels.iter().enumerate() {
        let level = k + 1;
        let staged = tower.staged(level)?;
        let engine = staged.homology_generators(level)?;
        let listed: Vec<Poly> = named.iter().map(|(_, p)| p.clone()).collect();
        let mut ok = engine.len() == listed.len();
        for e in &engine {
            ok &= staged.in_span_mod_boundaries(level, &listed, e)?;
        }
        for q in &listed {
            ok &= staged.in_span_mod_boundaries(level, &engine, q)?;
        }
        checks.push(check(
            &format!("named generators, degree -{level}"),
            ok,
            json!({
                "engine": engine.iter().map(|p| format_poly(p, staged.ctx())).collect::<Vec<_>>(),
                "named": named.iter().map(|(n, p)| format!("{n} = {}", format_poly(p, staged.ctx()))).collect::<Vec<_>>(),
            }),
        ));
    }

    let mut extras = json!(null);
    if case == U2Case::Case2 && computed == U2Case::Case2 {
        let (sst, sspace) = scaled_case2(&spec)?;
        let sctx = &sspace.ctx;
        let lin = theorem42_linear(&spec, &sspace)?;
        checks.push(check("linear action", linear_action(&sspace, &sst) == lin, Value::Null));
        let obs = obstruction(sctx, &lin, 1)?;
        checks.push(check(
            "first obstruction",
            obs == expected_obstruction(&spec, &sspace),
            json!(format_poly(&obs, sctx)),
        ));
        for t in ["0", "1", "M4", "M1*M2", "M4^3"] {
            let tp = parse_poly(t, &ctx)?;
            let s = theorem42_action(&spec, &sspace, &tp)?;
            checks.push(check(
                &format!("closed form, T = {t}"),
                check_cme(sctx, &s)?.is_zero(),
                Value::Null,
            ));
        }
        for t in ["0", "M4"] {
            let tp = parse_poly(t, &ctx)?;
            let hook = p_family_hook(&spec, &sspace, &tp);
            let th = extend_action_traced(&sspace, &sst, max_q, Some(&*hook))?;
            checks.push(check(
                &format!("solver with injection, T = {t}"),
                th.outcome == Outcome::Solved && th.action == theorem42_action(&spec, &sspace, &tp)?,
                json!(format_poly(&th.action, sctx)),
            ));
        }
        let s = theorem42_action(&spec, &sspace, &parse_poly("M4", &ctx)?)?;
        extras = brst_probes(sctx, &s, seed)?;
    }
    let th = extend_action_traced(&space, &st, max_q, None)?;
    let all = checks.iter().all(|c| c["pass"] == json!(true));
    Ok(Report::new(
        json!({
            "command": "u2",
            "case": format!("{case:?}"),
            "action": format_poly(&s0, &ctx),
            "roster": roster_value(&st, &space),
            "checks": checks,
            "extended_action": format_poly(&th.action, &space.ctx),
            "outcome": th.outcome,
            "brst_probes": extras,
            "all_pass": all,
        }),
        if all { 0 } else { 1 },
    ))
}

/// A plain four-field model document for an action.
pub fn model_json(action: &str) -> String {
    json!({
        "variables": (1..=4).map(|i| json!({"name": format!("M{i}"), "ghost_degree": 0})).collect::<Vec<_>>(),
        "action": action,
    })
    .to_string()
}

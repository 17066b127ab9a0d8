//! Master-equation solver: linear action, obstruction, lifting step and the
//! iteration over the ghost filtration, plus the truncated gauge action.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use serde::Serialize;

use crate::bracket::{bracket, filtration_part, in_filtration, in_i_module, IMode};
use crate::error::{Error, Result};
use crate::io::{format_poly, CoeffText};
use crate::poly::{ghost_count, Context, GradedPoly, Monomial};
use crate::scalar::Field;
use crate::tate::{ExtendedSpace, LiftingProblem, TateState};

/// Chooses an extra kernel direction for the correction multiplying the
/// ghost monomial; must return a δ-cycle of the same degree as the witness.
pub type CorrectionHook<'a, F> = dyn Fn(&Monomial, &GradedPoly<F>) -> GradedPoly<F> + 'a;

/// `S₀ + Σ δ(T*)·T` over the β anti-ghost / ghost pairs.
pub fn linear_action<F: Field>(space: &ExtendedSpace, tate: &TateState<F>) -> GradedPoly<F> {
    let mut s = tate.s0().clone();
    for (&a, &g) in space.antighosts.iter().zip(&space.ghosts) {
        s = &s + &(&tate.delta_var(a) * &GradedPoly::var(&space.ctx, g));
    }
    s
}

/// The full bracket `{S, S}`. Terms of positive degree above `q+1` are kept;
/// the solver projects explicitly. The contract `{S,S} ∈ F^{q+1}` is checked.
pub fn obstruction<F: Field>(ctx: &Context, s: &GradedPoly<F>, q: u32) -> Result<GradedPoly<F>> {
    if !s.is_zero() && s.ghost_degree(ctx)? != 0 {
        return Err(Error::Precondition("action must have ghost degree 0".into()));
    }
    let b = bracket(ctx, s, s)?;
    if !in_filtration(ctx, &b, q as i32 + 1) {
        return Err(Error::Precondition(format!("{{S,S}} is not in F^{}", q + 1)));
    }
    Ok(b)
}

/// Split into `Σ x_g · g` with `g` the ghost part. Ghosts sit last in the
/// variable order, so no sign appears.
fn by_ghost_monomial<F: Field>(ctx: &Context, p: &GradedPoly<F>) -> BTreeMap<Monomial, GradedPoly<F>> {
    let mut out: BTreeMap<Monomial, GradedPoly<F>> = BTreeMap::new();
    for (m, c) in p.terms() {
        let (g, rest, _) = m.split(|v| ctx.var(v).is_positive());
        let (check, sign) = rest.mul(&g).expect("disjoint factors");
        debug_assert_eq!(&check, m);
        let c = if sign { c.neg_ref() } else { c.clone() };
        out.entry(g).or_default().add_term(rest, c);
    }
    out
}

/// Solve `(δ⊗Id)ν = −½·obstr` in positive degree `q+1`. The default picks
/// the normal-form witness; `hook` may add kernel directions per ghost
/// monomial.
pub fn solve_correction<F: CoeffText>(
    space: &ExtendedSpace,
    tate: &TateState<F>,
    obstr: &GradedPoly<F>,
    q: u32,
    hook: Option<&CorrectionHook<'_, F>>,
) -> Result<GradedPoly<F>> {
    let ctx = &space.ctx;
    if !in_filtration(ctx, obstr, q as i32 + 1) || !in_i_module(ctx, obstr, 2, IMode::AtLeast) {
        return Err(Error::Precondition(format!(
            "obstruction must lie in I^(>=2) and F^{}",
            q + 1
        )));
    }
    let y = filtration_part(ctx, obstr, q as i32 + 1);
    if !tate.delta(&y).is_zero() {
        return Err(Error::NotACocycle("obstruction is not a (δ⊗Id)-cocycle".into()));
    }
    let half = F::half();
    let mut nu = GradedPoly::zero();
    let mut problems: BTreeMap<usize, LiftingProblem<F>> = BTreeMap::new();
    let mut failures = Vec::new();
    for (g, yg) in by_ghost_monomial(ctx, &y) {
        let target = yg.scale(&half.neg_ref());
        // x has degree −deg(g), y_g has degree 1 − deg(g)
        let level = crate::poly::monomial_degree(ctx, &g) as usize - 1;
        let problem = match problems.entry(level) {
            Entry::Occupied(e) => e.into_mut(),
            Entry::Vacant(e) => e.insert(tate.lifting_problem(level)?),
        };
        let gpoly = GradedPoly::term(g.clone(), F::one());
        match problem.lift(tate.ring(), &target)? {
            Ok(mut x) => {
                if let Some(h) = hook {
                    let extra = h(&g, &x);
                    if !tate.delta(&extra).is_zero() {
                        return Err(Error::NotACocycle("hook must add a δ-cycle".into()));
                    }
                    x = &x + &extra;
                }
                nu = &nu + &(&x * &gpoly);
            }
            Err(rem) => failures.push(&rem * &gpoly),
        }
    }
    if !failures.is_empty() {
        let rem = failures.iter().fold(GradedPoly::zero(), |a, b| &a + b);
        return Err(Error::NotLiftable {
            q: q as usize,
            certificate: format_poly(&rem, ctx),
        });
    }
    Ok(nu)
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceStep {
    pub q: u32,
    pub obstruction: String,
    pub correction: String,
    pub residual_zero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Outcome {
    Solved,
    NotLiftable { q: u32, certificate: String },
    Exhausted { max_q: u32, residual: String },
}

/// `(X̃, S̃)` plus the solver trace. On failure `action` is the last
/// approximation reached.
#[derive(Clone, Debug)]
pub struct ExtendedTheory<F: Field> {
    pub space: ExtendedSpace,
    pub action: GradedPoly<F>,
    pub trace: Vec<TraceStep>,
    pub outcome: Outcome,
}

impl<F: Field> ExtendedTheory<F> {
    pub fn into_result(self) -> Result<Self> {
        match &self.outcome {
            Outcome::Solved => Ok(self),
            Outcome::NotLiftable { q, certificate } => Err(Error::NotLiftable {
                q: *q as usize,
                certificate: certificate.clone(),
            }),
            Outcome::Exhausted { max_q, .. } => Err(Error::CapExhausted { cap: *max_q as usize }),
        }
    }
}

fn check_contract<F: CoeffText>(
    space: &ExtendedSpace,
    tate: &TateState<F>,
    s: &GradedPoly<F>,
    s_lin: &GradedPoly<F>,
    obs: &GradedPoly<F>,
    q: u32,
) -> Result<()> {
    let ctx = &space.ctx;
    let fields = tate.ring().fields();
    if &s.restrict(|v| fields.contains(&v)) != tate.s0() {
        return Err(Error::Precondition(format!("step {q}: S does not restrict to S0")));
    }
    let diff = s - s_lin;
    if !in_i_module(ctx, &diff, 2, IMode::AtLeast) {
        return Err(Error::Precondition(format!(
            "step {q}: S differs from S_lin below I^(>=2)"
        )));
    }
    if !in_filtration(ctx, obs, q as i32 + 1) || !in_i_module(ctx, obs, 2, IMode::AtLeast) {
        return Err(Error::Precondition(format!(
            "step {q}: {{S,S}} outside I^(>=2) and F^{}",
            q + 1
        )));
    }
    Ok(())
}

/// Iterate from `S_lin`, recording every step. Never fails for solver
/// reasons; see [`ExtendedTheory::outcome`].
pub fn extend_action_traced<F: CoeffText>(
    space: &ExtendedSpace,
    tate: &TateState<F>,
    max_q: u32,
    hook: Option<&CorrectionHook<'_, F>>,
) -> Result<ExtendedTheory<F>> {
    if max_q == 0 {
        return Err(Error::Precondition("max_q must be at least 1".into()));
    }
    let ctx = &space.ctx;
    let s_lin = linear_action(space, tate);
    let mut s = s_lin.clone();
    let mut trace = Vec::new();
    let mut q = 1;
    let outcome = loop {
        let obs = bracket(ctx, &s, &s)?;
        if obs.is_zero() {
            break Outcome::Solved;
        }
        check_contract(space, tate, &s, &s_lin, &obs, q)?;
        if q > max_q {
            break Outcome::Exhausted {
                max_q,
                residual: format_poly(&obs, ctx),
            };
        }
        match solve_correction(space, tate, &obs, q, hook) {
            Ok(nu) => {
                s = &s + &nu;
                trace.push(TraceStep {
                    q,
                    obstruction: format_poly(&obs, ctx),
                    correction: format_poly(&nu, ctx),
                    residual_zero: false,
                });
            }
            Err(Error::NotLiftable { certificate, .. }) => {
                trace.push(TraceStep {
                    q,
                    obstruction: format_poly(&obs, ctx),
                    correction: String::new(),
                    residual_zero: false,
                });
                break Outcome::NotLiftable { q, certificate };
            }
            Err(e) => return Err(e),
        }
        q += 1;
    };
    if let (Outcome::Solved, Some(last)) = (&outcome, trace.last_mut()) {
        last.residual_zero = true;
    }
    Ok(ExtendedTheory {
        space: space.clone(),
        action: s,
        trace,
        outcome,
    })
}

/// Like [`extend_action_traced`], with solver failures as errors.
pub fn extend_action<F: CoeffText>(
    space: &ExtendedSpace,
    tate: &TateState<F>,
    max_q: u32,
) -> Result<ExtendedTheory<F>> {
    extend_action_traced(space, tate, max_q, None)?.into_result()
}

/// Exact `{S, S}`; zero iff the master equation holds.
pub fn check_cme<F: Field>(ctx: &Context, s: &GradedPoly<F>) -> Result<GradedPoly<F>> {
    if !s.is_zero() && s.ghost_degree(ctx)? != 0 {
        return Err(Error::Precondition("action must have ghost degree 0".into()));
    }
    bracket(ctx, s, s)
}

pub const DEFAULT_TRUNCATION: u32 = 6;

/// An element of `O^{−1} ∩ I^{≥2}`.
#[derive(Clone, Debug)]
pub struct GaugeAlgebraElement<F: Field> {
    g: GradedPoly<F>,
}

impl<F: Field> GaugeAlgebraElement<F> {
    pub fn new(ctx: &Context, g: GradedPoly<F>) -> Result<Self> {
        if !g.is_zero() {
            if g.ghost_degree(ctx)? != -1 {
                return Err(Error::Precondition("gauge element must have ghost degree -1".into()));
            }
            if !g.terms().all(|(m, _)| ghost_count(ctx, m) >= 2) {
                return Err(Error::Precondition("gauge element must lie in I^(>=2)".into()));
            }
        }
        Ok(GaugeAlgebraElement { g })
    }

    pub fn poly(&self) -> &GradedPoly<F> {
        &self.g
    }
}

#[derive(Clone, Debug)]
pub struct GaugeResult<F: Field> {
    pub action: GradedPoly<F>,
    /// `ad_g^n(S)` vanished for some `n ≤ N`, so the series is exact.
    pub terminated: bool,
}

/// `Σ_{n≤N} ad_g^n(S)/n!` with `ad_g = {g, ·}`.
pub fn gauge_transform<F: Field>(
    ctx: &Context,
    g: &GaugeAlgebraElement<F>,
    s: &GradedPoly<F>,
    truncation: u32,
) -> Result<GaugeResult<F>> {
    let mut out = s.clone();
    let mut term = s.clone();
    let mut fact = F::one();
    for n in 1..=truncation {
        term = bracket(ctx, &g.g, &term)?;
        if term.is_zero() {
            return Ok(GaugeResult {
                action: out,
                terminated: true,
            });
        }
        fact = fact.mul_ref(&F::from_i64(n as i64));
        out = &out + &term.scale(&fact.inv());
    }
    let terminated = bracket(ctx, &g.g, &term)?.is_zero();
    Ok(GaugeResult {
        action: out,
        terminated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_poly;
    use crate::tate::{build_extended_space, DEFAULT_CAP};
    use crate::Coefficient;

    type P = GradedPoly<Coefficient>;

    fn setup(s0: &str) -> (TateState<Coefficient>, ExtendedSpace) {
        let ctx = Context::u2_fields();
        let s0: P = parse_poly(s0, &ctx).unwrap();
        let st = TateState::build_resolution(&s0, &ctx, DEFAULT_CAP).unwrap();
        let sp = build_extended_space(&st).unwrap();
        (st, sp)
    }

    #[test]
    fn trivial_symmetry_needs_no_iteration() {
        let (st, sp) = setup("M1^2 + M2^2 + M3^2 + M4^2");
        let th = extend_action(&sp, &st, 4).unwrap();
        assert_eq!(&th.action, st.s0());
        assert!(th.trace.is_empty());
    }

    #[test]
    fn generic_case_solves() {
        let (st, sp) = setup("(M1^2 + M2^2 + M3^2)^2 + M4^4");
        let th = extend_action(&sp, &st, 4).unwrap();
        assert!(check_cme(&sp.ctx, &th.action).unwrap().is_zero());
        assert!(!th.trace.is_empty());
    }

    #[test]
    fn zero_obstruction_gives_zero_correction() {
        let (st, sp) = setup("(M1^2 + M2^2 + M3^2)^2 + M4^4");
        assert!(solve_correction(&sp, &st, &P::zero(), 1, None).unwrap().is_zero());
    }

    #[test]
    fn gauge_series_terminates() {
        let (st, sp) = setup("(M1^2 + M2^2 + M3^2)^2 + M4^4");
        let th = extend_action(&sp, &st, 4).unwrap();
        let g = GaugeAlgebraElement::new(&sp.ctx, parse_poly("3*Es*C1*C2", &sp.ctx).unwrap()).unwrap();
        let r = gauge_transform(&sp.ctx, &g, &th.action, DEFAULT_TRUNCATION).unwrap();
        assert!(r.terminated);
        assert!(check_cme(&sp.ctx, &r.action).unwrap().is_zero());
        let zero = GaugeAlgebraElement::new(&sp.ctx, P::zero()).unwrap();
        assert_eq!(
            gauge_transform(&sp.ctx, &zero, &th.action, 6).unwrap().action,
            th.action
        );
        assert!(GaugeAlgebraElement::new(&sp.ctx, parse_poly("Cs1*C1*C2", &sp.ctx).unwrap()).is_err());
        let _ = st;
    }
}

//! The U(2) matrix model: the invariant action family, case
//! classification by the gcd of the partial derivatives, the named
//! generators of the resolution and the closed-form extended action.
//!
//! Fields are `M1..M4`; the generic-case parameters are `a1, a2, a3` and
//! `b`.

use serde::Serialize;

use crate::cme::CorrectionHook;
use crate::error::{Error, Result};
use crate::groebner::{is_unit, normalize_primitive, BosonicRing};
use crate::io::parse_poly;
use crate::poly::{Context, Monomial, Side, VarId};
use crate::scalar::Field;
use crate::tate::{build_extended_space, ExtendedSpace, TateState};
use crate::{Coefficient, Poly};

pub const CASE1_SAMPLE: &str = "M4^2";
pub const CASE2_SAMPLE: &str = "(M1^2 + M2^2 + M3^2)^2 + M4^4";
pub const CASE3_SAMPLE: &str = "(M1^2 + M2^2 + M3^2 + M4^2)^2";

pub const PARAMS: [&str; 4] = ["a1", "a2", "a3", "b"];

/// `ε_{ijk}` on 0-based indices.
pub fn eps(i: usize, j: usize, k: usize) -> i64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

/// The complement of two distinct indices in {0,1,2}.
fn third(i: usize, j: usize) -> usize {
    3 - i - j
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum U2Case {
    Case1,
    Case2,
    Case3,
}

impl U2Case {
    pub fn from_number(n: u8) -> Option<U2Case> {
        match n {
            1 => Some(U2Case::Case1),
            2 => Some(U2Case::Case2),
            3 => Some(U2Case::Case3),
            _ => None,
        }
    }

    pub fn sample(self) -> &'static str {
        match self {
            U2Case::Case1 => CASE1_SAMPLE,
            U2Case::Case2 => CASE2_SAMPLE,
            U2Case::Case3 => CASE3_SAMPLE,
        }
    }
}

/// The four-field context with the generic-case parameters declared.
pub fn u2_context() -> Context {
    let mut ctx = Context::u2_fields();
    for p in PARAMS {
        ctx.add_parameter(p).expect("fresh parameter");
    }
    ctx
}

#[derive(Clone, Debug)]
pub struct U2ModelSpec {
    pub ctx: Context,
    /// Coefficients of powers of `M1²+M2²+M3²`, when built from them.
    pub g_coeffs: Vec<Poly>,
    pub s0: Poly,
    pub partials: Vec<Poly>,
    /// Normalized gcd of the partials (1 when it is a unit).
    pub d: Poly,
    /// `∂_i S₀ = M_i·A·D` for `i ≤ 3`.
    pub a: Poly,
    /// `∂_4 S₀ = B·D`.
    pub b: Poly,
}

/// `S₀ = Σ_k (M1²+M2²+M3²)^k g_k(M4)`.
pub fn build_u2(g_coeffs: &[Poly]) -> Result<U2ModelSpec> {
    let ctx = u2_context();
    if g_coeffs.iter().all(|g| g.is_zero()) {
        return Err(Error::Precondition("at least one g_k must be nonzero".into()));
    }
    for g in g_coeffs {
        if g.variables().iter().any(|&v| v != 3) {
            return Err(Error::Precondition("g_k must be a polynomial in M4".into()));
        }
    }
    let r = parse_poly("M1^2 + M2^2 + M3^2", &ctx)?;
    let mut s0 = Poly::zero();
    for (k, g) in g_coeffs.iter().enumerate() {
        s0 = &s0 + &(&r.pow(k as u32) * g);
    }
    let mut spec = U2ModelSpec::from_action(&s0)?;
    spec.g_coeffs = g_coeffs.to_vec();
    Ok(spec)
}

impl U2ModelSpec {
    /// Derived data for any action in the four fields. The cofactor `A`
    /// exists only inside the invariant family.
    pub fn from_action(s0: &Poly) -> Result<U2ModelSpec> {
        let ctx = u2_context();
        let ring = BosonicRing::new(&ctx);
        ring.to_vector(s0)?;
        let partials: Vec<Poly> = (0..4).map(|a| s0.deriv(a, Side::Left)).collect();
        let mut d = if partials.iter().all(|p| p.is_zero()) {
            Poly::one()
        } else {
            normalize_primitive(&ring.gcd_many(&partials)?)
        };
        if is_unit(&d) {
            d = Poly::one();
        }
        let mut a = Poly::zero();
        if let Some(i) = (0..3).find(|&i| !partials[i].is_zero()) {
            let mi = Poly::var(&ctx, i as VarId);
            a = ring
                .divide_exact(&partials[i], &(&mi * &d))?
                .ok_or_else(|| Error::Precondition("action is outside the invariant family".into()))?;
        }
        let b = ring.divide_exact(&partials[3], &d)?.expect("D divides every partial");
        Ok(U2ModelSpec {
            ctx,
            g_coeffs: Vec::new(),
            s0: s0.clone(),
            partials,
            d,
            a,
            b,
        })
    }

    pub fn field(&self, a: usize) -> Poly {
        Poly::var(&self.ctx, a as VarId)
    }

    pub fn param(&self, name: &str) -> Coefficient {
        Coefficient::param(self.ctx.param_index(name).expect("declared parameter"))
    }
}

/// Computed, never asserted: Case1 iff the first three partials vanish.
pub fn classify(spec: &U2ModelSpec) -> U2Case {
    if spec.partials[..3].iter().all(|p| p.is_zero()) {
        U2Case::Case1
    } else if is_unit(&spec.d) {
        U2Case::Case2
    } else {
        U2Case::Case3
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    /// `M1∂2 = M2∂1`, `M1∂3 = M3∂1`, `M2∂3 = M3∂2`.
    pub holds: [bool; 3],
}

impl RelationReport {
    pub fn all(&self) -> bool {
        self.holds.iter().all(|&h| h)
    }
}

pub fn verify_relations(ctx: &Context, s0: &Poly) -> RelationReport {
    let m = |i: VarId| Poly::var(ctx, i);
    let d = |i: VarId| s0.deriv(i, Side::Left);
    let rel = |i: VarId, j: VarId| &m(i) * &d(j) == &m(j) * &d(i);
    RelationReport {
        holds: [rel(0, 1), rel(0, 2), rel(1, 2)],
    }
}

/// The roster of the minimal extension: `(degree, size)`, ascending.
pub fn expected_extension(case: U2Case) -> Vec<(i32, usize)> {
    match case {
        U2Case::Case1 => vec![(-1, 4), (0, 4)],
        U2Case::Case2 => vec![(-3, 1), (-2, 3), (-1, 4), (0, 4), (1, 3), (2, 1)],
        U2Case::Case3 => vec![(-4, 1), (-3, 4), (-2, 6), (-1, 4), (0, 4), (1, 6), (2, 4), (3, 1)],
    }
}

/// A resolution staged with the named generators, level by level.
#[derive(Clone, Debug)]
pub struct NamedTower {
    pub case: U2Case,
    pub state: TateState<Coefficient>,
    /// `levels[k-1]`: the named cocycles of degree −k, each with its label.
    pub levels: Vec<Vec<(String, Poly)>>,
}

impl NamedTower {
    /// State truncated to generators of degree ≥ −k.
    pub fn staged(&self, k: usize) -> Result<TateState<Coefficient>> {
        let mut st = TateState::init_resolution(&self.state.s0().clone(), &self.base_ctx())?;
        for lvl in self.levels.iter().take(k.saturating_sub(1)) {
            let ps: Vec<Poly> = lvl.iter().map(|(_, p)| p.clone()).collect();
            st.adjoin_step(&ps)?;
        }
        Ok(st)
    }

    fn base_ctx(&self) -> Context {
        u2_context()
    }
}

/// The named generators, adjoined one degree at a time so that each level
/// lives in the context its predecessors created.
pub fn paper_generators(spec: &U2ModelSpec) -> Result<NamedTower> {
    let case = classify(spec);
    let mut st = TateState::init_resolution(&spec.s0, &spec.ctx)?;
    let mut levels = Vec::new();
    if case == U2Case::Case1 {
        st.adjoin_step(&[])?;
        return Ok(NamedTower {
            case,
            state: st,
            levels,
        });
    }
    let ms: Vec<Poly> = st
        .level_gens(1, false)
        .iter()
        .map(|g| Poly::var(st.ctx(), g.id))
        .collect();
    let m = |i: usize| spec.field(i);
    let mut lvl1 = Vec::new();
    for i in 0..3 {
        let mut beta = Poly::zero();
        for j in 0..3 {
            for (k, msk) in ms.iter().enumerate().take(3) {
                let e = eps(i, j, k);
                if e != 0 {
                    beta = &beta + &(&m(j) * msk).scale(&Coefficient::from_i64(e));
                }
            }
        }
        lvl1.push((format!("beta{}", i + 1), beta));
    }
    if case == U2Case::Case3 {
        for p in 0..3 {
            let gamma = &(&spec.b * &ms[p]) - &(&(&m(p) * &spec.a) * &ms[3]);
            lvl1.push((format!("gamma{}", p + 1), gamma));
        }
    }
    adjoin_named(&mut st, &mut levels, lvl1)?;
    let cs: Vec<Poly> = st
        .level_gens(2, false)
        .iter()
        .map(|g| Poly::var(st.ctx(), g.id))
        .collect();
    let xi_c: Poly = (0..3).fold(Poly::zero(), |acc, i| &acc + &(&m(i) * &cs[i]));
    if case == U2Case::Case2 {
        adjoin_named(&mut st, &mut levels, vec![("xi".into(), xi_c)])?;
        st.adjoin_step(&[])?;
        return Ok(NamedTower {
            case,
            state: st,
            levels,
        });
    }
    let mut lvl2 = vec![("alpha1".to_string(), xi_c)];
    for i in 0..3 {
        let mut a = -&(&spec.b * &cs[i]);
        for j in 0..3 {
            for k in 0..3 {
                let e = eps(i, j, k);
                if e != 0 {
                    a = &a + &(&m(j) * &cs[k + 3]).scale(&Coefficient::from_i64(e));
                }
            }
        }
        lvl2.push((format!("alpha{}", i + 2), a));
    }
    adjoin_named(&mut st, &mut levels, lvl2)?;
    let es: Vec<Poly> = st
        .level_gens(3, false)
        .iter()
        .map(|g| Poly::var(st.ctx(), g.id))
        .collect();
    let mut xi = &spec.b * &es[0];
    for i in 0..3 {
        xi = &xi + &(&m(i) * &es[i + 1]);
    }
    adjoin_named(&mut st, &mut levels, vec![("xi".into(), xi)])?;
    st.adjoin_step(&[])?;
    Ok(NamedTower {
        case,
        state: st,
        levels,
    })
}

fn adjoin_named(
    st: &mut TateState<Coefficient>,
    levels: &mut Vec<Vec<(String, Poly)>>,
    named: Vec<(String, Poly)>,
) -> Result<()> {
    let ps: Vec<Poly> = named.iter().map(|(_, p)| p.clone()).collect();
    st.adjoin_step(&ps)?;
    levels.push(named);
    Ok(())
}

/// Generic-case state with `δ(C*_k) = −α_k β_k` and
/// `δ(E*) = β α1α2α3 Σ (M_i/α_i) C*_i`: the differential the closed-form
/// action implies through its linear part.
pub fn scaled_case2(spec: &U2ModelSpec) -> Result<(TateState<Coefficient>, ExtendedSpace)> {
    if classify(spec) != U2Case::Case2 {
        return Err(Error::Precondition(
            "the closed-form action needs the generic case".into(),
        ));
    }
    let tower = paper_generators(spec)?;
    let mut st = tower.state;
    let al: Vec<Coefficient> = (1..=3).map(|i| spec.param(&format!("a{i}"))).collect();
    let beta = spec.param("b");
    let cs: Vec<VarId> = st.level_gens(2, false).iter().map(|g| g.id).collect();
    let es = st.level_gens(3, false)[0].id;
    for k in 0..3 {
        let img = tower.levels[0][k].1.scale(&al[k].neg_ref());
        st.set_image(cs[k], img)?;
    }
    let prod = al[0].mul_ref(&al[1]).mul_ref(&al[2]);
    let mut img = Poly::zero();
    for i in 0..3 {
        let c = beta.mul_ref(&prod).div_ref(&al[i]);
        img = &img + &(&spec.field(i) * &Poly::var(st.ctx(), cs[i])).scale(&c);
    }
    st.set_image(es, img)?;
    let space = build_extended_space(&st)?;
    Ok((st, space))
}

struct Case2Vars {
    ms: Vec<Poly>,
    cs: Vec<Poly>,
    c: Vec<Poly>,
    e: Poly,
    al: Vec<Coefficient>,
    beta: Coefficient,
}

fn case2_vars(spec: &U2ModelSpec, space: &ExtendedSpace) -> Case2Vars {
    let v = |n: &str| Poly::var(&space.ctx, space.ctx.lookup(n).expect("generic-case roster"));
    Case2Vars {
        ms: (1..=4).map(|i| v(&format!("Ms{i}"))).collect(),
        cs: (1..=3).map(|i| v(&format!("Cs{i}"))).collect(),
        c: (1..=3).map(|i| v(&format!("C{i}"))).collect(),
        e: v("E"),
        al: (1..=3).map(|i| spec.param(&format!("a{i}"))).collect(),
        beta: spec.param("b"),
    }
}

/// The closed-form extended action of the generic case, with free
/// polynomial `T`. The bracket term is read with `j,k` running over the
/// complement of `i`; the `T` term enters once per `i`.
pub fn theorem42_action(spec: &U2ModelSpec, space: &ExtendedSpace, t: &Poly) -> Result<Poly> {
    if classify(spec) != U2Case::Case2 {
        return Err(Error::Precondition(
            "the closed-form action needs the generic case".into(),
        ));
    }
    let x = case2_vars(spec, space);
    let m = |i: usize| spec.field(i);
    let two = Coefficient::from_i64(2);
    let mut s = spec.s0.clone();
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let e = eps(i, j, k);
                if e == 0 {
                    continue;
                }
                let c = x.al[k].mul_ref(&Coefficient::from_i64(e));
                s = &s + &(&(&x.ms[i] * &m(j)) * &x.c[k]).scale(&c);
            }
        }
    }
    for i in 0..3 {
        let mut inner = Poly::zero();
        for j in 0..3 {
            for k in 0..3 {
                let e = eps(i, j, k);
                if e == 0 {
                    continue;
                }
                let f = x.al[j].mul_ref(&x.al[k]).div_ref(&two.mul_ref(&x.al[i]));
                let ebit = (&m(i) * &x.e).scale(&x.beta.mul_ref(&x.al[i]));
                let cbit = (&x.c[j] * &x.c[k]).scale(&Coefficient::from_i64(e));
                inner = &inner + &(&ebit + &cbit).scale(&f);
            }
        }
        let mut tsum = Poly::zero();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    let e = eps(a, b, c);
                    if e == 0 {
                        continue;
                    }
                    let f = x.al[b]
                        .mul_ref(&x.al[c])
                        .mul_ref(&Coefficient::from_i64(e))
                        .div_ref(&two.mul_ref(&x.al[i]));
                    tsum = &tsum + &(&(&m(a) * &x.c[b]) * &x.c[c]).scale(&f);
                }
            }
        }
        inner = &inner + &(&(&m(i) * t) * &tsum);
        s = &s + &(&x.cs[i] * &inner);
    }
    Ok(s)
}

/// The linear approximation `S̃_{≤1}`: the closed form without ghost
/// quadratic terms.
pub fn theorem42_linear(spec: &U2ModelSpec, space: &ExtendedSpace) -> Result<Poly> {
    let full = theorem42_action(spec, space, &Poly::zero())?;
    let ctx = &space.ctx;
    Ok(full.filter_terms(|m, _| crate::poly::ghost_count(ctx, m) <= 1))
}

/// `2[Σ α_iα_j M_i M*_j C_i C_j + Σ β ε_{ijk} α_j α_k² M_j C_k C*_i E]`.
pub fn expected_obstruction(spec: &U2ModelSpec, space: &ExtendedSpace) -> Poly {
    let x = case2_vars(spec, space);
    let m = |i: usize| spec.field(i);
    let mut out = Poly::zero();
    for i in 0..3 {
        for j in 0..3 {
            let c = x.al[i].mul_ref(&x.al[j]);
            out = &out + &(&(&(&m(i) * &x.ms[j]) * &x.c[i]) * &x.c[j]).scale(&c);
        }
    }
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let e = eps(i, j, k);
                if e == 0 {
                    continue;
                }
                let c = x
                    .beta
                    .mul_ref(&Coefficient::from_i64(e))
                    .mul_ref(&x.al[j])
                    .mul_ref(&x.al[k])
                    .mul_ref(&x.al[k]);
                out = &out + &(&(&(&m(j) * &x.c[k]) * &x.cs[i]) * &x.e).scale(&c);
            }
        }
    }
    out.scale(&Coefficient::from_i64(2))
}

/// The three-parameter freedom of the degree-two correction with
/// `P_k = M_k T`: for the ghost monomial `C_iC_j` it adds
/// `ε_{ijk} α_iα_j P_k Σ_m (M_m/α_m) C*_m`.
pub fn p_family_hook<'a>(
    spec: &'a U2ModelSpec,
    space: &'a ExtendedSpace,
    t: &'a Poly,
) -> Box<CorrectionHook<'a, Coefficient>> {
    let x = case2_vars(spec, space);
    let mut pairs: Vec<(Monomial, Poly)> = Vec::new();
    let mut cycle = Poly::zero();
    for m in 0..3 {
        cycle = &cycle + &(&spec.field(m) * &x.cs[m]).scale(&x.al[m].inv());
    }
    for i in 0..3 {
        for j in i + 1..3 {
            let k = third(i, j);
            let g = (&x.c[i] * &x.c[j]).leading().expect("C_iC_j").0.clone();
            let c = x.al[i].mul_ref(&x.al[j]).mul_ref(&Coefficient::from_i64(eps(i, j, k)));
            let pk = &spec.field(k) * t;
            pairs.push((g, (&pk * &cycle).scale(&c)));
        }
    }
    Box::new(move |g: &Monomial, _x: &Poly| {
        pairs
            .iter()
            .find(|(m, _)| m == g)
            .map(|(_, p)| p.clone())
            .unwrap_or_default()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cme::{check_cme, extend_action_traced, linear_action, obstruction};

    fn spec(s: &str) -> U2ModelSpec {
        U2ModelSpec::from_action(&parse_poly(s, &u2_context()).unwrap()).unwrap()
    }

    #[test]
    fn build_and_classify() {
        let ctx = u2_context();
        let p = |s: &str| parse_poly(s, &ctx).unwrap();
        let s1 = build_u2(&[p("M4^2")]).unwrap();
        assert_eq!(classify(&s1), U2Case::Case1);
        let s2 = build_u2(&[p("M4^2"), p("1")]).unwrap();
        assert_eq!(s2.s0, p("M1^2 + M2^2 + M3^2 + M4^2"));
        assert_eq!(classify(&s2), U2Case::Case2);
        let s3 = build_u2(&[p("0"), p("M4^2")]).unwrap();
        assert_eq!(classify(&s3), U2Case::Case3);
        assert_eq!(s3.d, p("M4"));
        assert_eq!(s3.a, p("2*M4"));
        assert_eq!(s3.b, p("2*M1^2 + 2*M2^2 + 2*M3^2"));
        assert!(build_u2(&[p("0")]).is_err());
    }

    #[test]
    fn relations() {
        let ctx = u2_context();
        assert!(verify_relations(&ctx, &parse_poly(CASE2_SAMPLE, &ctx).unwrap()).all());
        assert!(!verify_relations(&ctx, &parse_poly("M1", &ctx).unwrap()).all());
    }

    #[test]
    fn named_generators_are_cocycles() {
        for s in [CASE2_SAMPLE, CASE3_SAMPLE] {
            let t = paper_generators(&spec(s)).unwrap();
            assert!(t.state.delta_squared_vanishes());
        }
    }

    #[test]
    fn closed_form_satisfies_master_equation() {
        let sp = spec(CASE2_SAMPLE);
        let (_, space) = scaled_case2(&sp).unwrap();
        for t in ["0", "M4"] {
            let t = parse_poly(t, &sp.ctx).unwrap();
            let s = theorem42_action(&sp, &space, &t).unwrap();
            assert!(check_cme(&space.ctx, &s).unwrap().is_zero());
        }
    }

    #[test]
    fn linear_part_and_obstruction() {
        let sp = spec(CASE2_SAMPLE);
        let (st, space) = scaled_case2(&sp).unwrap();
        let lin = theorem42_linear(&sp, &space).unwrap();
        assert_eq!(linear_action(&space, &st), lin);
        let obs = obstruction(&space.ctx, &lin, 1).unwrap();
        assert_eq!(obs, expected_obstruction(&sp, &space));
    }

    #[test]
    fn solver_with_injection_matches_closed_form() {
        let sp = spec(CASE2_SAMPLE);
        let (st, space) = scaled_case2(&sp).unwrap();
        let t = parse_poly("M4", &sp.ctx).unwrap();
        let hook = p_family_hook(&sp, &space, &t);
        let th = extend_action_traced(&space, &st, 4, Some(&*hook)).unwrap();
        assert_eq!(th.action, theorem42_action(&sp, &space, &t).unwrap());
    }
}

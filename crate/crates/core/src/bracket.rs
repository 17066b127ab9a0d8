//! The antibracket, the BRST differential and the filtration bookkeeping.
//!
//! Closed form, for every pair (φ, φ*) with φ of non-negative degree:
//!
//! ```text
//! {F, G} = Σ (F ∂_r/∂φ)(∂_l G/∂φ*) − (F ∂_r/∂φ*)(∂_l G/∂φ)
//! ```
//!
//! so `{φ, φ*} = 1` and `{φ*, φ} = −1`. With this orientation
//! `{S₀, φ*} = ∂S₀/∂φ` and `{S_lin, ·}` restricts to the Tate differential
//! on anti-fields; the property suites check the graded axioms.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{ghost_count, monomial_split, Context, DegreeSplit, GradedPoly, Side};
use crate::scalar::Field;
use crate::tate::TateState;

pub fn bracket<F: Field>(ctx: &Context, a: &GradedPoly<F>, b: &GradedPoly<F>) -> Result<GradedPoly<F>> {
    let va: BTreeSet<_> = a.variables().into_iter().collect();
    let vb: BTreeSet<_> = b.variables().into_iter().collect();
    for &v in va.iter().chain(vb.iter()) {
        if ctx.var(v).partner.is_none() {
            return Err(Error::Unpaired(ctx.name(v).to_string()));
        }
    }
    let mut out = GradedPoly::zero();
    for (phi, star) in ctx.pairs() {
        if va.contains(&phi) && vb.contains(&star) {
            out = &out + &(&a.deriv(phi, Side::Right) * &b.deriv(star, Side::Left));
        }
        if va.contains(&star) && vb.contains(&phi) {
            out = &out - &(&a.deriv(star, Side::Right) * &b.deriv(phi, Side::Left));
        }
    }
    Ok(out)
}

/// `d_S(φ) = {S, φ}` for an action of ghost degree 0.
pub fn brst_diff<F: Field>(ctx: &Context, s: &GradedPoly<F>, phi: &GradedPoly<F>) -> Result<GradedPoly<F>> {
    if !s.is_zero() && s.ghost_degree(ctx)? != 0 {
        return Err(Error::Precondition("action must have ghost degree 0".into()));
    }
    bracket(ctx, s, phi)
}

pub fn degree_split<F: Field>(ctx: &Context, p: &GradedPoly<F>) -> Result<DegreeSplit> {
    p.degree_split(ctx)
}

/// Membership in `F^r`: zero, or every term has positive degree ≥ r.
pub fn in_filtration<F: Field>(ctx: &Context, p: &GradedPoly<F>, r: i32) -> bool {
    p.terms().all(|(m, _)| monomial_split(ctx, m).deg_p >= r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IMode {
    Exact,
    AtLeast,
}

/// Membership in `I^(q)` (exact) or `I^{≥q}` (at least), counting ghost
/// factors with multiplicity, term by term.
pub fn in_i_module<F: Field>(ctx: &Context, p: &GradedPoly<F>, q: u32, mode: IMode) -> bool {
    p.terms().all(|(m, _)| {
        let n = ghost_count(ctx, m);
        match mode {
            IMode::Exact => n == q,
            IMode::AtLeast => n >= q,
        }
    })
}

/// Terms with positive degree below `r`: the projection modulo `F^r`.
pub fn truncate_filtration<F: Field>(ctx: &Context, p: &GradedPoly<F>, r: i32) -> GradedPoly<F> {
    p.filter_terms(|m, _| monomial_split(ctx, m).deg_p < r)
}

/// Terms with positive degree exactly `r`.
pub fn filtration_part<F: Field>(ctx: &Context, p: &GradedPoly<F>, r: i32) -> GradedPoly<F> {
    p.filter_terms(|m, _| monomial_split(ctx, m).deg_p == r)
}

/// `(δ ⊗ Id)` on a representative of a single `G_{q,r}` stratum.
pub fn g_complex_diff<F: Field>(ctx: &Context, p: &GradedPoly<F>, tate: &TateState<F>) -> Result<GradedPoly<F>> {
    let mut strata = p
        .terms()
        .map(|(m, _)| (monomial_split(ctx, m).deg_p, ghost_count(ctx, m)));
    if let Some(first) = strata.next() {
        if strata.any(|s| s != first) {
            return Err(Error::MixedStratum);
        }
    }
    Ok(tate.delta(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_poly;
    use crate::Coefficient;

    fn ctx() -> Context {
        let mut c = Context::u2_fields();
        for i in 1..=4 {
            let s = c.add_variable(&format!("Ms{i}"), -1).unwrap();
            c.pair(i - 1, s).unwrap();
        }
        let cs = c.add_variable("Cs1", -2).unwrap();
        let g = c.add_variable("C1", 1).unwrap();
        c.pair(g, cs).unwrap();
        let c2s = c.add_variable("Cs2", -2).unwrap();
        let c2 = c.add_variable("C2", 1).unwrap();
        c.pair(c2, c2s).unwrap();
        c
    }

    fn p(c: &Context, s: &str) -> GradedPoly<Coefficient> {
        parse_poly(s, c).unwrap()
    }

    #[test]
    fn generator_table() {
        let c = ctx();
        assert_eq!(bracket(&c, &p(&c, "M1"), &p(&c, "Ms1")).unwrap(), p(&c, "1"));
        assert_eq!(bracket(&c, &p(&c, "Ms1"), &p(&c, "M1")).unwrap(), p(&c, "-1"));
        assert!(bracket(&c, &p(&c, "M1"), &p(&c, "M2")).unwrap().is_zero());
        assert!(bracket(&c, &p(&c, "Ms1"), &p(&c, "Ms2")).unwrap().is_zero());
        assert_eq!(bracket(&c, &p(&c, "C1"), &p(&c, "Cs1")).unwrap(), p(&c, "1"));
    }

    #[test]
    fn action_against_antifield_is_partial_derivative() {
        let c = ctx();
        let s0 = p(&c, "M1^2 + M2^2 + M3^2 + M4^2");
        assert_eq!(bracket(&c, &s0, &p(&c, "Ms1")).unwrap(), p(&c, "2*M1"));
        assert!(brst_diff(&c, &s0, &p(&c, "M1")).unwrap().is_zero());
    }

    #[test]
    fn unpaired_is_an_error() {
        let mut c = ctx();
        c.add_variable("X", 0).unwrap();
        assert!(matches!(
            bracket(&c, &p(&c, "X"), &p(&c, "M1")),
            Err(Error::Unpaired(_))
        ));
    }

    #[test]
    fn filtration_and_i_modules() {
        let c = ctx();
        assert!(in_filtration(&c, &p(&c, "C1*C2"), 2));
        assert!(!in_filtration(&c, &p(&c, "C1*C2"), 3));
        assert!(in_filtration(&c, &GradedPoly::<Coefficient>::zero(), 7));
        assert!(!in_filtration(&c, &p(&c, "M1"), 1));
        assert!(in_i_module(&c, &p(&c, "Cs1*C1*C2"), 2, IMode::Exact));
        assert!(!in_i_module(&c, &p(&c, "C1 + C1*C2"), 2, IMode::AtLeast));
        assert!(in_i_module(&c, &GradedPoly::<Coefficient>::zero(), 3, IMode::AtLeast));
        let s = degree_split(&c, &p(&c, "C1*C2")).unwrap();
        assert_eq!((s.deg_n, s.deg_p), (0, 2));
    }
}

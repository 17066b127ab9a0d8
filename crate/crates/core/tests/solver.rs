mod common;

use bv_core::bracket::{bracket, filtration_part, in_filtration, in_i_module, IMode};
use bv_core::cme::{
    check_cme, extend_action, extend_action_traced, gauge_transform, linear_action, obstruction, solve_correction,
    GaugeAlgebraElement, Outcome,
};
use bv_core::poly::{ghost_count, monomial_split};
use bv_core::sample::SampleOptions;
use bv_core::tate::{ExtendedSpace, TateState};
use bv_core::u2::U2Case;
use bv_core::{Coefficient, Error, Field};
use common::*;

#[test]
fn engine_solves_every_sample() {
    for case in [U2Case::Case1, U2Case::Case2, U2Case::Case3] {
        let (sp, st, space) = engine(case);
        let th = extend_action(&space, &st, 6).unwrap();
        assert!(check_cme(&space.ctx, &th.action).unwrap().is_zero(), "{case:?}");
        let fields = st.ring().fields().to_vec();
        assert_eq!(th.action.restrict(|v| fields.contains(&v)), sp.s0);
        let higher = &th.action - &linear_action(&space, &st);
        assert!(in_i_module(&space.ctx, &higher, 2, IMode::AtLeast));
    }
}

#[test]
fn trace_records_vanishing_residuals() {
    let (_, st, space) = engine(U2Case::Case3);
    let th = extend_action_traced(&space, &st, 6, None).unwrap();
    assert_eq!(th.outcome, Outcome::Solved);
    assert!(!th.trace.is_empty());
    assert!(th.trace.last().unwrap().residual_zero);
    for (i, step) in th.trace.iter().enumerate() {
        assert_eq!(step.q, i as u32 + 1);
    }
}

#[test]
fn tight_max_q_reports_exhaustion() {
    let (_, st, space) = engine(U2Case::Case3);
    let full = extend_action_traced(&space, &st, 6, None).unwrap();
    let steps = full.trace.len() as u32;
    assert!(steps >= 2, "needs at least two corrections");
    let th = extend_action_traced(&space, &st, steps - 1, None).unwrap();
    match &th.outcome {
        Outcome::Exhausted { max_q, residual } => {
            assert_eq!(*max_q, steps - 1);
            assert_ne!(residual, "0");
        }
        o => panic!("unexpected {o:?}"),
    }
    assert!(matches!(th.into_result(), Err(Error::CapExhausted { .. })));
}

/// A resolution that kills only two of the three degree −2 classes: the
/// bracket of the surviving gauge directions closes onto the dropped one,
/// so the first obstruction has no lift.
#[test]
fn dropped_gauge_direction_is_not_liftable() {
    let (sp, full, _) = engine(U2Case::Case2);
    let mut st = TateState::init_resolution(&sp.s0, &sp.ctx).unwrap();
    let cyc: Vec<_> = full.level_gens(2, true).iter().map(|g| g.image.clone()).collect();
    assert_eq!(cyc.len(), 3);
    st.adjoin_step(&cyc[1..]).unwrap();
    st.adjoin_step(&[]).unwrap();
    let space = ExtendedSpace::build(&st).unwrap();
    let th = extend_action_traced(&space, &st, 6, None).unwrap();
    match &th.outcome {
        Outcome::NotLiftable { q, certificate } => {
            assert_eq!(*q, 1);
            assert_ne!(certificate, "0");
        }
        o => panic!("expected a lifting failure, got {o:?}"),
    }
    assert!(matches!(th.into_result(), Err(Error::NotLiftable { q: 1, .. })));
}

#[test]
fn consistent_truncation_gives_a_smaller_theory() {
    let (sp, _, _) = engine(U2Case::Case2);
    let short = TateState::build_resolution(&sp.s0, &sp.ctx, 2).unwrap();
    let space = ExtendedSpace::build(&short).unwrap();
    let th = extend_action(&space, &short, 6).unwrap();
    assert!(check_cme(&space.ctx, &th.action).unwrap().is_zero());
}

#[test]
fn obstruction_lies_in_the_expected_filtration() {
    let (_, st, space) = engine(U2Case::Case2);
    let s = linear_action(&space, &st);
    let obs = obstruction(&space.ctx, &s, 1).unwrap();
    assert!(in_filtration(&space.ctx, &obs, 2));
    assert!(in_i_module(&space.ctx, &obs, 2, IMode::AtLeast));
    assert_eq!(obs, bracket(&space.ctx, &s, &s).unwrap());
}

#[test]
fn gauge_orbit_stays_on_shell() {
    let (_, st, space) = engine(U2Case::Case2);
    let ctx = &space.ctx;
    let s = extend_action(&space, &st, 6).unwrap().action;
    let g = GaugeAlgebraElement::new(ctx, poly(ctx, "Es*C1*C2 - 2*Es*C2*C3")).unwrap();
    let out = gauge_transform(ctx, &g, &s, 6).unwrap();
    assert!(out.terminated);
    assert_ne!(out.action, s);
    assert!(check_cme(ctx, &out.action).unwrap().is_zero());
}

#[test]
fn gauge_element_needs_two_ghosts() {
    let (_, _, space) = engine(U2Case::Case2);
    let ctx = &space.ctx;
    assert!(GaugeAlgebraElement::new(ctx, poly(ctx, "Cs1*C1")).is_err());
    assert!(GaugeAlgebraElement::new(ctx, poly(ctx, "Es*C1")).is_err());
}

#[test]
fn correction_solves_the_lifting_equation() {
    let (_, st, space) = engine(U2Case::Case2);
    let ctx = &space.ctx;
    let s = linear_action(&space, &st);
    let obs = obstruction(ctx, &s, 1).unwrap();
    let nu = solve_correction(&space, &st, &obs, 1, None).unwrap();
    assert!(!nu.is_zero());
    let half = Coefficient::from_rational(&bv_core::scalar::rat(-1, 2));
    assert_eq!(st.delta(&nu), filtration_part(ctx, &obs, 2).scale(&half));
}

/// `obstr = 2·δ(w)` for a random `w ∈ I^{≥2} ∩ F^{q+1}` must come back with
/// `δ(ν + w) = 0`.
#[test]
fn correction_round_trips_a_planted_boundary() {
    let (_, st, space) = engine(U2Case::Case2);
    let ctx = &space.ctx;
    let sk = skeletons(ctx, 4);
    let o = SampleOptions {
        max_terms: 6,
        ..small()
    };
    let mut r = rng(433);
    let two = Coefficient::from_i64(2);
    let mut done = 0;
    while done < 20 {
        let q = 1 + done % 2;
        let w = sk
            .homogeneous(&mut r, ctx, 0, &o)
            .filter_terms(|m, _| monomial_split(ctx, m).deg_p == q + 1);
        let w = w.filter_terms(|m, _| ghost_count(ctx, m) >= 2);
        let obstr = st.delta(&w).scale(&two);
        if obstr.is_zero() {
            continue;
        }
        let nu = solve_correction(&space, &st, &obstr, q as u32, None).unwrap();
        assert!(st.delta(&(&nu + &w)).is_zero());
        done += 1;
    }
}

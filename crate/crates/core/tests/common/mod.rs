#![allow(dead_code)]

use bv_core::io::parse_poly;
use bv_core::sample::{SampleOptions, Skeletons};
use bv_core::tate::{ExtendedSpace, TateState, DEFAULT_CAP};
use bv_core::u2::{scaled_case2, u2_context, U2Case, U2ModelSpec};
use bv_core::{Coefficient, Context, Poly, VarId};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn spec(case: U2Case) -> U2ModelSpec {
    let s0 = parse_poly(case.sample(), &u2_context()).unwrap();
    U2ModelSpec::from_action(&s0).unwrap()
}

/// Engine resolution and its extended space for one of the sample actions.
pub fn engine(case: U2Case) -> (U2ModelSpec, TateState<Coefficient>, ExtendedSpace) {
    let sp = spec(case);
    let st = TateState::build_resolution(&sp.s0, &sp.ctx, DEFAULT_CAP).unwrap();
    let space = ExtendedSpace::build(&st).unwrap();
    (sp, st, space)
}

/// The α-scaled generic-case state the closed-form action lives on.
pub fn scaled() -> (U2ModelSpec, TateState<Coefficient>, ExtendedSpace) {
    let sp = spec(U2Case::Case2);
    let (st, space) = scaled_case2(&sp).unwrap();
    (sp, st, space)
}

pub fn non_fields(ctx: &Context) -> Vec<VarId> {
    ctx.ids_where(|v| v.ghost_degree != 0)
}

pub fn skeletons(ctx: &Context, max_factors: usize) -> Skeletons {
    Skeletons::new(ctx, &non_fields(ctx), max_factors)
}

pub fn small() -> SampleOptions {
    SampleOptions {
        max_terms: 4,
        height: 6,
        max_factors: 2,
        max_field_degree: 1,
        param_rate: 0.0,
    }
}

pub fn poly(ctx: &Context, s: &str) -> Poly {
    parse_poly(s, ctx).unwrap()
}

//! Acceptance suite: one line per criterion. Runs without the libtest
//! harness so the lines show up in plain `cargo test` output.

mod common;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use bv_core::bracket::{bracket, brst_diff, filtration_part, in_filtration, truncate_filtration};
use bv_core::cme::{check_cme, extend_action_traced, linear_action, Outcome};
use bv_core::groebner::{normalize_primitive, syzygies, BosonicRing, ModuleBasis, Vector};
use bv_core::io::{format_poly, parse_poly, Model};
use bv_core::poly::{ghost_count, monomial_split};
use bv_core::report::extend_report;
use bv_core::sample::SampleOptions;
use bv_core::tate::TateState;
use bv_core::u2::{
    expected_extension, expected_obstruction, p_family_hook, paper_generators, theorem42_action, theorem42_linear,
    u2_context, U2Case,
};
use bv_core::{Coefficient, Context, Field, Poly};
use common::*;
use rand::Rng;

type Verdict = (bool, String);

fn sign(odd: bool) -> Coefficient {
    Coefficient::from_i64(if odd { -1 } else { 1 })
}

fn par(ctx: &Context, p: &Poly) -> bool {
    p.parity(ctx) == 1
}

fn criterion1() -> Verdict {
    let (_, _, space) = engine(U2Case::Case2);
    let ctx = &space.ctx;
    let sk = skeletons(ctx, 2);
    let o = small();
    let mut r = rng(101);
    let degs: Vec<i32> = sk.degrees().into_iter().filter(|d| (-3..=2).contains(d)).collect();
    let draw = |r: &mut rand_chacha::ChaCha8Rng| loop {
        let d = degs[r.gen_range(0..degs.len())];
        let p = sk.homogeneous(r, ctx, d, &o);
        if !p.is_zero() {
            return p;
        }
    };
    let mut bad = BTreeMap::<&str, usize>::new();
    let n = 200;
    for _ in 0..n {
        let (f, g, h) = (draw(&mut r), draw(&mut r), draw(&mut r));
        let (pf, pg) = (par(ctx, &f), par(ctx, &g));
        let fg = bracket(ctx, &f, &g).unwrap();
        let gf = bracket(ctx, &g, &f).unwrap();
        // {F,G} = −(−1)^{(|F|+1)(|G|+1)} {G,F}
        let s = sign(!pf && !pg);
        if fg != gf.scale(&s.neg_ref()) {
            *bad.entry("symmetry").or_default() += 1;
        }
        // {F,GH} = {F,G}H + (−1)^{(|F|+1)|G|} G{F,H}
        let lhs = bracket(ctx, &f, &(&g * &h)).unwrap();
        let fh = bracket(ctx, &f, &h).unwrap();
        let rhs = &(&fg * &h) + &(&g * &fh).scale(&sign(!pf && pg));
        if lhs != rhs {
            *bad.entry("leibniz").or_default() += 1;
        }
        // {F,{G,H}} = {{F,G},H} + (−1)^{(|F|+1)(|G|+1)} {G,{F,H}}
        let lhs = bracket(ctx, &f, &bracket(ctx, &g, &h).unwrap()).unwrap();
        let rhs = &bracket(ctx, &fg, &h).unwrap() + &bracket(ctx, &g, &fh).unwrap().scale(&s);
        if lhs != rhs {
            *bad.entry("jacobi").or_default() += 1;
        }
    }
    (bad.is_empty(), format!("{n} triples, violations {bad:?}"))
}

/// Engine and named cocycles span the same classes modulo boundaries.
fn spans_agree(case: U2Case) -> Result<usize, String> {
    let sp = spec(case);
    let tower = paper_generators(&sp).map_err(|e| e.to_string())?;
    let mut checked = 0;
    for k in 1..=tower.levels.len() {
        let st = tower.staged(k).map_err(|e| e.to_string())?;
        let cyc = st.homology_generators(k).map_err(|e| e.to_string())?;
        let engine: Vec<Poly> = cyc
            .iter()
            .zip(st.beta_filter(&cyc))
            .filter(|(_, b)| *b)
            .map(|(p, _)| p.clone())
            .collect();
        let named: Vec<Poly> = tower.levels[k - 1].iter().map(|(_, p)| p.clone()).collect();
        if engine.len() != named.len() {
            return Err(format!("degree -{k}: {} engine vs {} named", engine.len(), named.len()));
        }
        for p in &engine {
            if !st.in_span_mod_boundaries(k, &named, p).unwrap() {
                return Err(format!("degree -{k}: engine class outside the named span"));
            }
        }
        for p in &named {
            if !st.in_span_mod_boundaries(k, &engine, p).unwrap() {
                return Err(format!("degree -{k}: named class outside the engine span"));
            }
        }
        checked += named.len();
    }
    Ok(checked)
}

/// Returns the verdict plus whether the only miss is the recorded Case 1
/// deviation.
fn criterion2() -> (Verdict, bool) {
    let mut notes = Vec::new();
    let mut misses = Vec::new();
    let mut case1 = Vec::new();
    for case in [U2Case::Case1, U2Case::Case2, U2Case::Case3] {
        let (_, _, space) = engine(case);
        let got: Vec<(i32, usize)> = space.strata().into_iter().filter(|&(d, _)| d != 0).collect();
        let want: Vec<(i32, usize)> = expected_extension(case).into_iter().filter(|&(d, _)| d != 0).collect();
        if case == U2Case::Case1 {
            case1 = got.clone();
        }
        if got == want {
            notes.push(format!("{case:?} roster ok"));
        } else {
            notes.push(format!("{case:?} roster {got:?}, expected {want:?}"));
            misses.push(case);
        }
        if case != U2Case::Case1 {
            match spans_agree(case) {
                Ok(n) => notes.push(format!("{case:?} {n} named cocycles agree")),
                Err(e) => {
                    notes.push(format!("{case:?} {e}"));
                    misses.push(case);
                }
            }
        }
    }
    // the faithful Case 1 result: Cs_i ↦ Ms_i for the three M_i with ∂_i S₀ = 0
    let known = misses == [U2Case::Case1] && case1 == [(-2, 3), (-1, 4), (1, 3)];
    ((misses.is_empty(), notes.join("; ")), known)
}

fn criterion3() -> Verdict {
    let (sp, _, space) = scaled();
    let t = Instant::now();
    let lin = theorem42_linear(&sp, &space).unwrap();
    let got = bracket(&space.ctx, &lin, &lin).unwrap();
    let want = expected_obstruction(&sp, &space);
    let diff = &got - &want;
    (
        diff.is_zero(),
        format!(
            "{} terms, residual {} terms, {:.2?}",
            got.len(),
            diff.len(),
            t.elapsed()
        ),
    )
}

fn criterion4() -> Verdict {
    let (sp, _, space) = scaled();
    let mut notes = Vec::new();
    let mut ok = true;
    for t in ["0", "1", "M4", "M1*M2", "M4^3"] {
        let s = theorem42_action(&sp, &space, &poly(&space.ctx, t)).unwrap();
        let r = check_cme(&space.ctx, &s).unwrap();
        ok &= r.is_zero();
        notes.push(format!("T={t}: {}", if r.is_zero() { "0" } else { "nonzero" }));
    }
    (ok, notes.join(", "))
}

fn criterion5() -> Verdict {
    let (sp, st, space) = scaled();
    let mut notes = Vec::new();
    let mut ok = true;
    for t in ["0", "M4"] {
        let tp = poly(&space.ctx, t);
        let hook = p_family_hook(&sp, &space, &tp);
        let th = extend_action_traced(&space, &st, 6, Some(&*hook)).unwrap();
        let want = theorem42_action(&sp, &space, &tp).unwrap();
        let same = th.outcome == Outcome::Solved && th.action == want;
        ok &= same;
        notes.push(format!(
            "T={t}: {} steps, {}",
            th.trace.len(),
            if same { "equal" } else { "differs" }
        ));
    }
    (ok, notes.join(", "))
}

fn criterion6() -> Verdict {
    let mut notes = Vec::new();
    let mut ok = true;
    for case in [U2Case::Case1, U2Case::Case2, U2Case::Case3] {
        let sp = spec(case);
        let mut st = TateState::init_resolution(&sp.s0, &sp.ctx).unwrap();
        let mut killed: Vec<(usize, Poly)> = Vec::new();
        let mut steps = 0;
        loop {
            let k = st.depth();
            let cyc = st.homology_generators(k).unwrap();
            let kept: Vec<Poly> = cyc
                .iter()
                .zip(st.beta_filter(&cyc))
                .filter(|(_, b)| *b)
                .map(|(p, _)| p.clone())
                .collect();
            if kept.is_empty() {
                break;
            }
            st.adjoin_step(&kept).unwrap();
            steps += 1;
            killed.extend(kept.into_iter().map(|p| (k, p)));
            let d2 = st.delta_squared_vanishes();
            let bounded = killed.iter().all(|(l, p)| st.is_boundary(p, *l).unwrap());
            // β-classes below the new top degree are all gone
            let exact = (1..st.depth()).all(|l| {
                let c = st.homology_generators(l).unwrap();
                st.beta_filter(&c).iter().all(|b| !b)
            });
            if !(d2 && bounded && exact) {
                ok = false;
                notes.push(format!(
                    "{case:?} step {steps}: d2 {d2}, boundaries {bounded}, exact {exact}"
                ));
            }
        }
        notes.push(format!("{case:?} {steps} steps"));
    }
    (ok, notes.join(", "))
}

fn criterion7() -> Verdict {
    let (_, st, space) = engine(U2Case::Case2);
    let ctx = &space.ctx;
    let s_lin = linear_action(&space, &st);
    let sk = skeletons(ctx, 3);
    let sk4 = skeletons(ctx, 4);
    let o = small();
    let mut r = rng(107);
    let mut bad = (0, 0, 0);
    let n = 100;
    for _ in 0..n {
        // {S_lin, φ} ≡ δ(φ) modulo one step of the filtration
        let phi = sk.mixed(&mut r, ctx, &o);
        let d = &bracket(ctx, &s_lin, &phi).unwrap() - &st.delta(&phi);
        if !truncate_filtration(ctx, &d, 1).is_zero() {
            bad.0 += 1;
        }
        // stratum by stratum the difference raises the positive degree
        for rr in 0..=3 {
            let part = filtration_part(ctx, &phi, rr);
            let d = &bracket(ctx, &s_lin, &part).unwrap() - &st.delta(&part);
            if !in_filtration(ctx, &d, rr + 1) {
                bad.1 += 1;
            }
        }
    }
    let mut pairs = 0;
    while pairs < n {
        let q = r.gen_range(0..=2);
        let phi = sk
            .mixed(&mut r, ctx, &o)
            .filter_terms(|m, _| monomial_split(ctx, m).deg_p >= q);
        let psi = sk4
            .homogeneous(
                &mut r,
                ctx,
                0,
                &SampleOptions {
                    max_terms: 8,
                    ..o.clone()
                },
            )
            .filter_terms(|m, _| ghost_count(ctx, m) >= 2);
        if phi.is_zero() || psi.is_zero() {
            continue;
        }
        pairs += 1;
        if !in_filtration(ctx, &bracket(ctx, &phi, &psi).unwrap(), q + 1) {
            bad.2 += 1;
        }
    }
    (
        bad == (0, 0, 0),
        format!(
            "{n} elements mod F^1 {} bad, per stratum {} bad; {pairs} pairs {} bad",
            bad.0, bad.1, bad.2
        ),
    )
}

fn criterion8() -> Verdict {
    let (sp, _, space) = scaled();
    let ctx = &space.ctx;
    let s = theorem42_action(&sp, &space, &poly(ctx, "M4")).unwrap();
    let d2 = |p: &Poly| brst_diff(ctx, &s, &brst_diff(ctx, &s, p).unwrap()).unwrap();
    let mut bad = 0;
    let roster = space.roster();
    for &(v, _) in &roster {
        if !d2(&Poly::var(ctx, v)).is_zero() {
            bad += 1;
        }
    }
    let sk = skeletons(ctx, 2);
    let mut r = rng(108);
    for _ in 0..50 {
        if !d2(&sk.mixed(&mut r, ctx, &small())).is_zero() {
            bad += 1;
        }
    }
    (
        bad == 0,
        format!("{} generators and 50 samples, {bad} nonzero", roster.len()),
    )
}

fn irreducible(r: &mut rand_chacha::ChaCha8Rng, ctx: &Context) -> Poly {
    let m = |i: usize| poly(ctx, &format!("M{}", i + 1));
    if r.gen_bool(0.5) {
        let mut p = Poly::constant(Coefficient::from_i64(r.gen_range(-3..=3)));
        let lead = r.gen_range(0..4);
        for i in 0..4 {
            let c = if i == lead {
                r.gen_range(1..=3)
            } else {
                r.gen_range(-2..=2)
            };
            p = &p + &m(i).scale(&Coefficient::from_i64(c));
        }
        p
    } else {
        let (i, j) = (r.gen_range(0..4), r.gen_range(0..4));
        // M_i² + c irreducible needs c > 0; M_iM_j + c needs c ≠ 0
        let c = r.gen_range(1..=5) * if i == j { 1 } else { [-1, 1][r.gen_range(0..2)] };
        &(&m(i) * &m(j)) + &Poly::constant(Coefficient::from_i64(c))
    }
}

fn criterion9() -> Verdict {
    let ctx = u2_context();
    let br = BosonicRing::new(&ctx);
    let mut r = rng(109);
    let mut bad = BTreeMap::<&str, usize>::new();
    let product = |fs: &[Poly], e: &[u32]| fs.iter().zip(e).fold(Poly::one(), |acc, (p, &k)| &acc * &p.pow(k));
    for _ in 0..50 {
        let mut pool: Vec<Poly> = Vec::new();
        while pool.len() < 4 {
            let p = irreducible(&mut r, &ctx);
            let n = normalize_primitive(&p);
            if !pool.iter().any(|q| normalize_primitive(q) == n) {
                pool.push(p);
            }
        }
        let draw = |r: &mut rand_chacha::ChaCha8Rng| {
            let mut e = [0u32; 4];
            for _ in 0..r.gen_range(1..=3) {
                e[r.gen_range(0..4)] += 1;
            }
            e
        };
        let (ef, eg) = (draw(&mut r), draw(&mut r));
        let emin: Vec<u32> = ef.iter().zip(&eg).map(|(a, b)| *a.min(b)).collect();
        let unit = Coefficient::from_i64(r.gen_range(1..=4));
        let f = product(&pool, &ef).scale(&unit);
        let g = product(&pool, &eg);
        if br.gcd_poly(&f, &g).unwrap() != normalize_primitive(&product(&pool, &emin)) {
            *bad.entry("gcd").or_default() += 1;
        }
        // exact division both ways, and a refusal
        if br.divide_exact(&(&f * &g), &g).unwrap() != Some(f.clone()) {
            *bad.entry("divide").or_default() += 1;
        }
        let refuse = ef.iter().zip(&eg).any(|(a, b)| a < b);
        if refuse != br.divide_exact(&f, &g).unwrap().is_none() {
            *bad.entry("divide-refusal").or_default() += 1;
        }
    }
    let ring = &br.ring;
    let o = SampleOptions {
        max_terms: 3,
        max_field_degree: 2,
        height: 5,
        ..Default::default()
    };
    let field_poly = |r: &mut rand_chacha::ChaCha8Rng| loop {
        let mut p = Poly::zero();
        for _ in 0..r.gen_range(1..=o.max_terms) {
            let mut t = Poly::constant(Coefficient::from_i64(r.gen_range(-o.height..=o.height)));
            for _ in 0..r.gen_range(0..=o.max_field_degree) {
                t = &t * &poly(&ctx, &format!("M{}", r.gen_range(1..=4)));
            }
            p = &p + &t;
        }
        if !p.is_zero() {
            return p;
        }
    };
    for round in 0..20 {
        let rank = 1 + round % 2;
        let gens: Vec<Vector<Coefficient>> = (0..3)
            .map(|_| {
                let comps: Vec<_> = (0..rank).map(|_| br.to_vector(&field_poly(&mut r)).unwrap()).collect();
                Vector::from_components(ring, &comps)
            })
            .collect();
        for s in syzygies(ring, rank, &gens) {
            let mut acc = Vector::zero();
            for (i, g) in gens.iter().enumerate() {
                acc = acc.add(ring, &g.mul_poly(ring, &s.component(ring, i as u32)));
            }
            if !acc.is_zero() {
                *bad.entry("syzygy").or_default() += 1;
            }
        }
        // normal form with witnesses reassembles the input
        let mb = ModuleBasis::with_witnesses(ring, rank, &gens);
        let comps: Vec<_> = (0..rank).map(|_| br.to_vector(&field_poly(&mut r)).unwrap()).collect();
        let f = Vector::from_components(ring, &comps);
        let (rem, w) = mb.normal_form(&f);
        let mut acc = rem;
        for (g, c) in gens.iter().zip(w.unwrap()) {
            acc = acc.add(ring, &g.mul_poly(ring, &c));
        }
        if acc != f {
            *bad.entry("witness").or_default() += 1;
        }
    }
    (
        bad.is_empty(),
        format!("50 gcd/division trials, 20 module trials, failures {bad:?}"),
    )
}

fn models_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../models")
}

fn criterion10() -> Verdict {
    let (_, _, space) = engine(U2Case::Case2);
    let ctx = &space.ctx;
    let sk = skeletons(ctx, 3);
    let o = SampleOptions {
        param_rate: 0.3,
        ..Default::default()
    };
    let mut r = rng(110);
    let mut bad = 0;
    for _ in 0..200 {
        let p = sk.mixed(&mut r, ctx, &o);
        if parse_poly(&format_poly(&p, ctx), ctx).ok() != Some(p) {
            bad += 1;
        }
    }
    let run = || {
        let m = Model::load(&models_dir().join("case2_closed_form.json")).unwrap();
        extend_report(m, None, None, 7).unwrap().to_json()
    };
    let same = run() == run();
    (
        bad == 0 && same,
        format!("200 round trips, {bad} mismatches; report bytes identical: {same}"),
    )
}

fn main() {
    let mut unexpected = Vec::new();
    let t = Instant::now();
    for n in 1..=10 {
        let (v, known) = match n {
            1 => (criterion1(), false),
            2 => criterion2(),
            3 => (criterion3(), false),
            4 => (criterion4(), false),
            5 => (criterion5(), false),
            6 => (criterion6(), false),
            7 => (criterion7(), false),
            8 => (criterion8(), false),
            9 => (criterion9(), false),
            _ => (criterion10(), false),
        };
        let note = if !v.0 && known {
            " [known deviation, see README]"
        } else {
            ""
        };
        println!("criterion {n:>2} {} {}{note}", if v.0 { "PASS" } else { "FAIL" }, v.1);
        if !v.0 && !known {
            unexpected.push(n);
        }
    }
    println!("acceptance finished in {:.1?}", t.elapsed());
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}

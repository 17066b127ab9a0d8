//! Seeded random polynomials for property checks and report probes.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::Rng;

use crate::coeff::{Coefficient, ParamPoly};
use crate::poly::{monomial_degree, Context, GradedPoly, Monomial, VarId};
use crate::scalar::{Field, Rational};

#[derive(Clone, Debug)]
pub struct SampleOptions {
    pub max_terms: usize,
    /// Bound on numerators and denominators.
    pub height: i64,
    /// Non-field factors per term.
    pub max_factors: usize,
    pub max_field_degree: u32,
    /// Chance that a coefficient involves a declared parameter.
    pub param_rate: f64,
}

impl Default for SampleOptions {
    fn default() -> Self {
        SampleOptions {
            max_terms: 8,
            height: 10,
            max_factors: 3,
            max_field_degree: 2,
            param_rate: 0.0,
        }
    }
}

/// Products of non-field variables, grouped by ghost degree.
#[derive(Clone, Debug)]
pub struct Skeletons {
    by_degree: BTreeMap<i32, Vec<Monomial>>,
    fields: Vec<VarId>,
}

impl Skeletons {
    pub fn new(ctx: &Context, vars: &[VarId], max_factors: usize) -> Self {
        let mut all = vec![Monomial::one()];
        let mut frontier = vec![(Monomial::one(), 0usize)];
        for _ in 0..max_factors {
            let mut next = Vec::new();
            for (m, start) in &frontier {
                for (i, &v) in vars.iter().enumerate().skip(*start) {
                    let f = if ctx.var(v).is_odd() {
                        Monomial::fermionic(v)
                    } else {
                        Monomial::bosonic(v, 1)
                    };
                    if let Some((p, _)) = m.mul(&f) {
                        next.push((p.clone(), i));
                        all.push(p);
                    }
                }
            }
            frontier = next;
        }
        let mut by_degree: BTreeMap<i32, Vec<Monomial>> = BTreeMap::new();
        for m in all {
            by_degree.entry(monomial_degree(ctx, &m)).or_default().push(m);
        }
        for v in by_degree.values_mut() {
            v.sort();
            v.dedup();
        }
        Skeletons {
            by_degree,
            fields: ctx.field_ids(),
        }
    }

    pub fn degrees(&self) -> Vec<i32> {
        self.by_degree.keys().copied().collect()
    }

    fn coefficient<R: Rng>(&self, rng: &mut R, ctx: &Context, o: &SampleOptions) -> Coefficient {
        loop {
            let n = rng.gen_range(-o.height..=o.height);
            if n == 0 {
                continue;
            }
            let d = rng.gen_range(1..=o.height);
            let mut c = Coefficient::from_rational(&Rational::new(n.into(), d.into()));
            if !ctx.params().is_empty() && rng.gen_bool(o.param_rate) {
                let i = rng.gen_range(0..ctx.params().len());
                let k = rng.gen_range(1..=o.height);
                let shift = ParamPoly::constant(BigInt::from(k));
                let p = &ParamPoly::var(i) + &shift;
                c = if rng.gen_bool(0.5) {
                    c.mul_ref(&Coefficient::new(p, ParamPoly::one()))
                } else {
                    c.div_ref(&Coefficient::new(p, ParamPoly::one()))
                };
            }
            return c;
        }
    }

    fn field_monomial<R: Rng>(&self, rng: &mut R, o: &SampleOptions) -> Monomial {
        let mut m = Monomial::one();
        if self.fields.is_empty() {
            return m;
        }
        for _ in 0..rng.gen_range(0..=o.max_field_degree) {
            let v = self.fields[rng.gen_range(0..self.fields.len())];
            m = m.mul(&Monomial::bosonic(v, 1)).expect("bosonic").0;
        }
        m
    }

    /// Homogeneous of the given degree; zero if no skeleton has it.
    pub fn homogeneous<R: Rng>(
        &self,
        rng: &mut R,
        ctx: &Context,
        degree: i32,
        o: &SampleOptions,
    ) -> GradedPoly<Coefficient> {
        let Some(sk) = self.by_degree.get(&degree) else {
            return GradedPoly::zero();
        };
        let mut p = GradedPoly::zero();
        for _ in 0..rng.gen_range(1..=o.max_terms) {
            let s = &sk[rng.gen_range(0..sk.len())];
            let (m, neg) = self.field_monomial(rng, o).mul(s).expect("bosonic prefix");
            let c = self.coefficient(rng, ctx, o);
            p.add_term(m, if neg { c.neg_ref() } else { c });
        }
        p
    }

    /// Terms of random, possibly different, degrees.
    pub fn mixed<R: Rng>(&self, rng: &mut R, ctx: &Context, o: &SampleOptions) -> GradedPoly<Coefficient> {
        let degs = self.degrees();
        let mut p = GradedPoly::zero();
        for _ in 0..rng.gen_range(1..=o.max_terms) {
            let d = degs[rng.gen_range(0..degs.len())];
            let one = SampleOptions {
                max_terms: 1,
                ..o.clone()
            };
            p = &p + &self.homogeneous(rng, ctx, d, &one);
        }
        p
    }
}

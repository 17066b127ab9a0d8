use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use super::context::{Context, VarId};
use super::monomial::{Monomial, Side};
use crate::error::{Error, Result};
use crate::scalar::Field;

/// Canonical-form polynomial in graded-commutative variables.
///
/// Terms live in a map keyed by monomial with no zero coefficients, so
/// structural equality is mathematical equality. Monomials are
/// self-describing (bosonic and Grassmann factors are stored apart), which
/// is why arithmetic needs no context; degree queries do.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GradedPoly<F: Field> {
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> Default for GradedPoly<F> {
    fn default() -> Self {
        GradedPoly { terms: BTreeMap::new() }
    }
}

/// Negative and positive ghost degree of a polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct DegreeSplit {
    pub deg_n: i32,
    pub deg_p: i32,
}

impl<F: Field> GradedPoly<F> {
    pub fn zero() -> Self {
        GradedPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: F) -> Self {
        let mut p = GradedPoly::zero();
        p.add_term(m, c);
        p
    }

    /// A single variable, looked up in the context for its parity.
    pub fn var(ctx: &Context, v: VarId) -> Self {
        let m = if ctx.var(v).is_odd() {
            Monomial::fermionic(v)
        } else {
            Monomial::bosonic(v, 1)
        };
        Self::term(m, F::one())
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut p = GradedPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add_ref(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&F> {
        self.terms.get(m)
    }

    /// Largest monomial with its coefficient.
    pub fn leading(&self) -> Option<(&Monomial, &F)> {
        self.terms.iter().next_back()
    }

    pub fn constant_term(&self) -> F {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(F::zero)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return GradedPoly::zero();
        }
        GradedPoly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x.mul_ref(c))).collect(),
        }
    }

    pub fn add_scaled(&mut self, o: &Self, c: &F) {
        for (m, x) in &o.terms {
            self.add_term(m.clone(), x.mul_ref(c));
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &F) -> Self {
        let mut out = GradedPoly::zero();
        for (n, x) in &self.terms {
            if let Some((p, neg)) = n.mul(m) {
                let v = x.mul_ref(c);
                out.add_term(p, if neg { v.neg_ref() } else { v });
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = GradedPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> GradedPoly<G> {
        GradedPoly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Keep only the terms satisfying `pred`.
    pub fn filter_terms(&self, pred: impl Fn(&Monomial, &F) -> bool) -> Self {
        GradedPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, c)| pred(m, c))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Set every variable outside `keep` to zero.
    pub fn restrict(&self, keep: impl Fn(VarId) -> bool) -> Self {
        self.filter_terms(|m, _| m.factors().all(|(v, _)| keep(v)))
    }

    /// Variables that occur in some term.
    pub fn variables(&self) -> Vec<VarId> {
        let mut vs: Vec<VarId> = self
            .terms
            .keys()
            .flat_map(|m| m.factors().map(|(v, _)| v).collect::<Vec<_>>())
            .collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Graded partial derivative by `v`.
    pub fn deriv(&self, v: VarId, side: Side) -> Self {
        let mut out = GradedPoly::zero();
        for (m, c) in &self.terms {
            if let Some((k, rest)) = m.deriv(v, side) {
                out.add_term(rest, c.mul_ref(&F::from_i64(k)));
            }
        }
        out
    }

    pub fn ghost_degree(&self, ctx: &Context) -> Result<i32> {
        let mut it = self.terms.keys();
        let first = it.next().ok_or(Error::ZeroDegree)?;
        let d = monomial_degree(ctx, first);
        if it.any(|m| monomial_degree(ctx, m) != d) {
            return Err(Error::Inhomogeneous);
        }
        Ok(d)
    }

    pub fn is_homogeneous(&self, ctx: &Context) -> bool {
        self.ghost_degree(ctx).is_ok()
    }

    /// Max of negative parts and min of positive parts over the terms.
    pub fn degree_split(&self, ctx: &Context) -> Result<DegreeSplit> {
        if self.is_zero() {
            return Err(Error::ZeroDegree);
        }
        let mut deg_n = i32::MIN;
        let mut deg_p = i32::MAX;
        for m in self.terms.keys() {
            let s = monomial_split(ctx, m);
            deg_n = deg_n.max(s.deg_n);
            deg_p = deg_p.min(s.deg_p);
        }
        Ok(DegreeSplit { deg_n, deg_p })
    }

    /// Parity of a homogeneous polynomial, 0 for zero.
    pub fn parity(&self, ctx: &Context) -> u8 {
        self.terms
            .keys()
            .next()
            .map(|m| monomial_degree(ctx, m).rem_euclid(2) as u8)
            .unwrap_or(0)
    }
}

pub fn monomial_degree(ctx: &Context, m: &Monomial) -> i32 {
    m.factors().map(|(v, e)| ctx.var(v).ghost_degree * e as i32).sum()
}

pub fn monomial_split(ctx: &Context, m: &Monomial) -> DegreeSplit {
    let mut s = DegreeSplit { deg_n: 0, deg_p: 0 };
    for (v, e) in m.factors() {
        let d = ctx.var(v).ghost_degree * e as i32;
        if d > 0 {
            s.deg_p += d;
        } else {
            s.deg_n += d;
        }
    }
    s
}

/// Number of ghost factors (positive degree), counted with multiplicity.
pub fn ghost_count(ctx: &Context, m: &Monomial) -> u32 {
    m.factors()
        .filter(|&(v, _)| ctx.var(v).is_positive())
        .map(|(_, e)| e)
        .sum()
}

impl<'a, F: Field> Add<&'a GradedPoly<F>> for &'a GradedPoly<F> {
    type Output = GradedPoly<F>;
    fn add(self, o: &GradedPoly<F>) -> GradedPoly<F> {
        let (big, small) = if self.len() >= o.len() { (self, o) } else { (o, self) };
        let mut r = big.clone();
        for (m, c) in &small.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }
}

impl<'a, F: Field> Sub<&'a GradedPoly<F>> for &'a GradedPoly<F> {
    type Output = GradedPoly<F>;
    fn sub(self, o: &GradedPoly<F>) -> GradedPoly<F> {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.neg_ref());
        }
        r
    }
}

impl<'a, F: Field> Mul<&'a GradedPoly<F>> for &'a GradedPoly<F> {
    type Output = GradedPoly<F>;
    fn mul(self, o: &GradedPoly<F>) -> GradedPoly<F> {
        let mut r = GradedPoly::zero();
        for (m, c) in &self.terms {
            for (n, d) in &o.terms {
                if let Some((p, neg)) = m.mul(n) {
                    let v = c.mul_ref(d);
                    r.add_term(p, if neg { v.neg_ref() } else { v });
                }
            }
        }
        r
    }
}

impl<F: Field> Neg for &GradedPoly<F> {
    type Output = GradedPoly<F>;
    fn neg(self) -> GradedPoly<F> {
        GradedPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg_ref())).collect(),
        }
    }
}

impl<F: Field> Add for GradedPoly<F> {
    type Output = GradedPoly<F>;
    fn add(self, o: GradedPoly<F>) -> GradedPoly<F> {
        &self + &o
    }
}

impl<F: Field> Sub for GradedPoly<F> {
    type Output = GradedPoly<F>;
    fn sub(self, o: GradedPoly<F>) -> GradedPoly<F> {
        &self - &o
    }
}

impl<F: Field> Mul for GradedPoly<F> {
    type Output = GradedPoly<F>;
    fn mul(self, o: GradedPoly<F>) -> GradedPoly<F> {
        &self * &o
    }
}

impl<F: Field> Neg for GradedPoly<F> {
    type Output = GradedPoly<F>;
    fn neg(self) -> GradedPoly<F> {
        -&self
    }
}

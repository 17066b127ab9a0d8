use std::cmp::Ordering;

use super::order::{exp_add, Exp, Ring};
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term<F: Field> {
    pub slot: u32,
    pub exp: Exp,
    pub coef: F,
}

/// Element of a free module over the bosonic ring, terms sorted descending
/// under the ring's module order. A polynomial is a vector supported on
/// slot 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector<F: Field> {
    terms: Vec<Term<F>>,
}

impl<F: Field> Default for Vector<F> {
    fn default() -> Self {
        Vector { terms: Vec::new() }
    }
}

impl<F: Field> Vector<F> {
    pub fn zero() -> Self {
        Vector::default()
    }

    /// Sorts and combines arbitrary terms.
    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = Term<F>>) -> Self {
        let mut ts: Vec<Term<F>> = terms.into_iter().filter(|t| !t.coef.is_zero()).collect();
        ts.sort_by(|a, b| ring.cmp_term(b.slot, &b.exp, a.slot, &a.exp));
        let mut out: Vec<Term<F>> = Vec::with_capacity(ts.len());
        for t in ts {
            match out.last_mut() {
                Some(last) if last.slot == t.slot && last.exp == t.exp => {
                    last.coef = last.coef.add_ref(&t.coef);
                    if last.coef.is_zero() {
                        out.pop();
                    }
                }
                _ => out.push(t),
            }
        }
        Vector { terms: out }
    }

    pub fn unit(ring: &Ring, slot: u32) -> Self {
        Vector {
            terms: vec![Term {
                slot,
                exp: ring.one(),
                coef: F::one(),
            }],
        }
    }

    pub fn constant(ring: &Ring, c: F) -> Self {
        Vector::from_terms(
            ring,
            [Term {
                slot: 0,
                exp: ring.one(),
                coef: c,
            }],
        )
    }

    pub fn var(ring: &Ring, i: usize) -> Self {
        let mut e = ring.one();
        e[i] = 1;
        Vector {
            terms: vec![Term {
                slot: 0,
                exp: e,
                coef: F::one(),
            }],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[Term<F>] {
        &self.terms
    }

    pub fn lead(&self) -> Option<&Term<F>> {
        self.terms.first()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].exp.iter().all(|&x| x == 0)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Vector::zero();
        }
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    slot: t.slot,
                    exp: t.exp.clone(),
                    coef: t.coef.mul_ref(c),
                })
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&F::one().neg_ref())
    }

    /// Multiply by the monomial `x^e`; monomial orders are multiplicative
    /// so no re-sorting is needed.
    pub fn mul_term(&self, e: &[u16], c: &F) -> Self {
        if c.is_zero() {
            return Vector::zero();
        }
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    slot: t.slot,
                    exp: exp_add(&t.exp, e),
                    coef: t.coef.mul_ref(c),
                })
                .collect(),
        }
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            Some(t) => self.scale(&t.coef.inv()),
            None => Vector::zero(),
        }
    }

    /// `self + c·x^e·o`, by merging.
    pub fn add_scaled(&self, ring: &Ring, o: &Vector<F>, e: Option<&[u16]>, c: &F) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let mut i = 0;
        let mut j = 0;
        let shifted = |t: &Term<F>| -> Term<F> {
            Term {
                slot: t.slot,
                exp: match e {
                    Some(e) => exp_add(&t.exp, e),
                    None => t.exp.clone(),
                },
                coef: t.coef.mul_ref(c),
            }
        };
        let mut pending: Option<Term<F>> = o.terms.first().map(shifted);
        while i < self.terms.len() || pending.is_some() {
            match (&self.terms.get(i), &pending) {
                (Some(a), Some(b)) => match ring.cmp_term(a.slot, &a.exp, b.slot, &b.exp) {
                    Ordering::Greater => {
                        out.push((*a).clone());
                        i += 1;
                    }
                    Ordering::Less => {
                        out.push(pending.take().expect("checked"));
                        j += 1;
                        pending = o.terms.get(j).map(shifted);
                    }
                    Ordering::Equal => {
                        let s = a.coef.add_ref(&b.coef);
                        if !s.is_zero() {
                            out.push(Term {
                                slot: a.slot,
                                exp: a.exp.clone(),
                                coef: s,
                            });
                        }
                        i += 1;
                        j += 1;
                        pending = o.terms.get(j).map(shifted);
                    }
                },
                (Some(a), None) => {
                    out.push((*a).clone());
                    i += 1;
                }
                (None, Some(_)) => {
                    out.push(pending.take().expect("checked"));
                    j += 1;
                    pending = o.terms.get(j).map(shifted);
                }
                (None, None) => unreachable!(),
            }
        }
        Vector { terms: out }
    }

    pub fn add(&self, ring: &Ring, o: &Vector<F>) -> Self {
        self.add_scaled(ring, o, None, &F::one())
    }

    pub fn sub(&self, ring: &Ring, o: &Vector<F>) -> Self {
        self.add_scaled(ring, o, None, &F::one().neg_ref())
    }

    /// Product with a polynomial (a vector on slot 0).
    pub fn mul_poly(&self, ring: &Ring, p: &Vector<F>) -> Self {
        let mut acc = Vector::zero();
        for t in &p.terms {
            acc = acc.add_scaled(ring, self, Some(&t.exp), &t.coef);
        }
        acc
    }

    /// Coordinate `slot` as a polynomial.
    pub fn component(&self, ring: &Ring, slot: u32) -> Self {
        let r1 = ring.without_splits();
        Vector::from_terms(
            &r1,
            self.terms.iter().filter(|t| t.slot == slot).map(|t| Term {
                slot: 0,
                exp: t.exp.clone(),
                coef: t.coef.clone(),
            }),
        )
    }

    /// Re-sort under another ring, relabeling slots with `f`.
    pub fn remap(&self, ring: &Ring, f: impl Fn(u32) -> Option<u32>) -> Self {
        Vector::from_terms(
            ring,
            self.terms.iter().filter_map(|t| {
                f(t.slot).map(|s| Term {
                    slot: s,
                    exp: t.exp.clone(),
                    coef: t.coef.clone(),
                })
            }),
        )
    }

    /// Assemble from coordinates (polynomials on slot 0).
    pub fn from_components(ring: &Ring, comps: &[Vector<F>]) -> Self {
        Vector::from_terms(
            ring,
            comps.iter().enumerate().flat_map(|(k, p)| {
                p.terms.iter().map(move |t| Term {
                    slot: k as u32,
                    exp: t.exp.clone(),
                    coef: t.coef.clone(),
                })
            }),
        )
    }

    pub fn pop_lead(&mut self) -> Option<Term<F>> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    /// Append a term known to be smaller than every stored term.
    pub fn push_lowest(&mut self, t: Term<F>) {
        self.terms.push(t);
    }

    pub fn max_slot(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.slot).max()
    }

    pub fn min_slot(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.slot).min()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};

    #[test]
    fn merge_cancels() {
        let r = Ring::new(2);
        let x: Vector<Rational> = Vector::var(&r, 0);
        let y: Vector<Rational> = Vector::var(&r, 1);
        let s = x.add(&r, &y);
        assert_eq!(s.len(), 2);
        assert!(s.sub(&r, &x).sub(&r, &y).is_zero());
        let sq = s.mul_poly(&r, &s);
        // x^2 + 2xy + y^2
        assert_eq!(sq.len(), 3);
        assert_eq!(sq.terms()[1].coef, rat(2, 1));
    }
}

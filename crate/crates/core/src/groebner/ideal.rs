use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::basis::{groebner, reduce};
use super::order::{exp_divides, exp_sub, Exp, Ring, TermOrder};
use super::vector::{Term, Vector};
use crate::error::{Error, Result};
use crate::poly::{Context, GradedPoly, Monomial, VarId};
use crate::scalar::{Field, Rational};

/// The commutative ring of degree-0 bosonic variables of a context, with
/// conversions between graded polynomials and Groebner vectors.
#[derive(Clone, Debug)]
pub struct BosonicRing {
    fields: Vec<VarId>,
    pub ring: Ring,
}

impl BosonicRing {
    pub fn new(ctx: &Context) -> Self {
        let fields = ctx.field_ids();
        let ring = Ring::new(fields.len());
        BosonicRing { fields, ring }
    }

    pub fn fields(&self) -> &[VarId] {
        &self.fields
    }

    pub fn nvars(&self) -> usize {
        self.fields.len()
    }

    /// Exponent vector of a monomial made only of ring variables.
    pub fn exp_of(&self, m: &Monomial) -> Option<Exp> {
        if !m.fer().is_empty() {
            return None;
        }
        let mut e = self.ring.one();
        for &(v, k) in m.bos() {
            let i = self.fields.iter().position(|&f| f == v)?;
            e[i] = k as u16;
        }
        Some(e)
    }

    pub fn monomial_of(&self, e: &[u16]) -> Monomial {
        let mut m = Monomial::one();
        for (i, &k) in e.iter().enumerate() {
            if k > 0 {
                m = m.mul(&Monomial::bosonic(self.fields[i], k as u32)).expect("bosonic").0;
            }
        }
        m
    }

    pub fn to_vector<F: Field>(&self, p: &GradedPoly<F>) -> Result<Vector<F>> {
        let mut terms = Vec::with_capacity(p.len());
        for (m, c) in p.terms() {
            let exp = self
                .exp_of(m)
                .ok_or_else(|| Error::Precondition("polynomial is not in the bosonic field ring".into()))?;
            terms.push(Term {
                slot: 0,
                exp,
                coef: c.clone(),
            });
        }
        Ok(Vector::from_terms(&self.ring, terms))
    }

    /// Coordinate `slot` of `v` as a graded polynomial.
    pub fn component_poly<F: Field>(&self, v: &Vector<F>, slot: u32) -> GradedPoly<F> {
        GradedPoly::from_terms(
            v.terms()
                .iter()
                .filter(|t| t.slot == slot)
                .map(|t| (self.monomial_of(&t.exp), t.coef.clone())),
        )
    }

    pub fn to_poly<F: Field>(&self, v: &Vector<F>) -> GradedPoly<F> {
        self.component_poly(v, 0)
    }

    fn vectors<F: Field>(&self, ps: &[GradedPoly<F>]) -> Result<Vec<Vector<F>>> {
        ps.iter().map(|p| self.to_vector(p)).collect()
    }

    /// Reduced Groebner basis of the ideal generated by `ps`.
    pub fn ideal_basis<F: Field>(&self, ps: &[GradedPoly<F>]) -> Result<Vec<GradedPoly<F>>> {
        let gb = groebner(&self.ring, &self.vectors(ps)?);
        Ok(gb.iter().map(|v| self.to_poly(v)).collect())
    }

    /// Ideal membership by normal form.
    pub fn ideal_contains<F: Field>(&self, ideal: &[GradedPoly<F>], f: &GradedPoly<F>) -> Result<bool> {
        let gb = groebner(&self.ring, &self.vectors(ideal)?);
        Ok(reduce(&self.ring, &self.to_vector(f)?, &gb).is_zero())
    }

    /// Generators of `I ∩ J` via `t·I + (1−t)·J` and elimination of `t`.
    pub fn ideal_intersect<F: Field>(&self, i: &[GradedPoly<F>], j: &[GradedPoly<F>]) -> Result<Vec<GradedPoly<F>>> {
        let n = self.nvars();
        let ext = Ring::new(n + 1).with_term(TermOrder::Eliminate(1));
        let lift = |v: &Vector<F>, shift_t: bool| -> Vector<F> {
            Vector::from_terms(
                &ext,
                v.terms().iter().map(|t| {
                    let mut e: Exp = t.exp.clone();
                    e.push(u16::from(shift_t));
                    Term {
                        slot: 0,
                        exp: e,
                        coef: t.coef.clone(),
                    }
                }),
            )
        };
        let mut gens = Vec::new();
        for f in self.vectors(i)? {
            gens.push(lift(&f, true));
        }
        for g in self.vectors(j)? {
            let base = lift(&g, false);
            gens.push(base.sub(&ext, &lift(&g, true)));
        }
        let gb = groebner(&ext, &gens);
        let kept: Vec<Vector<F>> = gb
            .iter()
            .filter(|v| v.terms().iter().all(|t| t.exp[n] == 0))
            .map(|v| {
                Vector::from_terms(
                    &self.ring,
                    v.terms().iter().map(|t| Term {
                        slot: 0,
                        exp: t.exp[..n].iter().copied().collect(),
                        coef: t.coef.clone(),
                    }),
                )
            })
            .collect();
        let red = groebner(&self.ring, &kept);
        Ok(red.iter().map(|v| self.to_poly(v)).collect())
    }

    /// `f / g` if `g` divides `f` exactly.
    pub fn divide_exact<F: Field>(&self, f: &GradedPoly<F>, g: &GradedPoly<F>) -> Result<Option<GradedPoly<F>>> {
        if g.is_zero() {
            return Err(Error::Precondition("division by zero".into()));
        }
        let gv = self.to_vector(g)?;
        let lg = gv.lead().expect("nonzero").clone();
        let mut r = self.to_vector(f)?;
        let mut q = Vec::new();
        while let Some(t) = r.lead().cloned() {
            if !exp_divides(&lg.exp, &t.exp) {
                return Ok(None);
            }
            let e = exp_sub(&t.exp, &lg.exp);
            let c = t.coef.div_ref(&lg.coef);
            r = r.add_scaled(&self.ring, &gv, Some(&e), &c.neg_ref());
            q.push(Term {
                slot: 0,
                exp: e,
                coef: c,
            });
        }
        Ok(Some(self.to_poly(&Vector::from_terms(&self.ring, q))))
    }

    /// gcd as `f·g / lcm`, where the lcm generates `⟨f⟩ ∩ ⟨g⟩`.
    pub fn gcd_poly<F: Field>(&self, f: &GradedPoly<F>, g: &GradedPoly<F>) -> Result<GradedPoly<F>> {
        if f.is_zero() && g.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        if f.is_zero() {
            return Ok(normalize_primitive(g));
        }
        if g.is_zero() {
            return Ok(normalize_primitive(f));
        }
        let lcm = self.ideal_intersect(std::slice::from_ref(f), std::slice::from_ref(g))?;
        assert_eq!(lcm.len(), 1, "intersection of principal ideals is principal");
        let q = self.divide_exact(&(f * g), &lcm[0])?.expect("lcm divides the product");
        Ok(normalize_primitive(&q))
    }

    pub fn gcd_many<F: Field>(&self, fs: &[GradedPoly<F>]) -> Result<GradedPoly<F>> {
        let mut acc = GradedPoly::zero();
        for f in fs {
            if acc.is_zero() && f.is_zero() {
                continue;
            }
            acc = self.gcd_poly(&acc, f)?;
        }
        if acc.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        Ok(acc)
    }
}

/// Scale to an integer-primitive polynomial with positive leading
/// coefficient; nonzero constants become 1. Values with parameter-dependent
/// coefficients are made monic instead.
pub fn normalize_primitive<F: Field>(p: &GradedPoly<F>) -> GradedPoly<F> {
    let Some((_, lc)) = p.leading() else {
        return GradedPoly::zero();
    };
    let rats: Option<Vec<Rational>> = p.terms().map(|(_, c)| c.to_rational()).collect();
    let Some(rats) = rats else {
        return p.scale(&lc.inv());
    };
    let mut den = BigInt::one();
    let mut num = BigInt::zero();
    for r in &rats {
        den = den.lcm(r.denom());
    }
    for r in &rats {
        let n = r.numer() * (&den / r.denom());
        num = num.gcd(&n);
    }
    let mut s = Rational::new(den, num);
    if lc.is_negative() {
        s = -s;
    }
    p.scale(&F::from_rational(&s))
}

/// True for nonzero constants.
pub fn is_unit<F: Field>(p: &GradedPoly<F>) -> bool {
    p.len() == 1 && p.leading().is_some_and(|(m, c)| m.is_one() && !c.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_poly;
    use crate::Coefficient;

    fn ctx() -> Context {
        Context::u2_fields()
    }

    fn p(c: &Context, s: &str) -> GradedPoly<Coefficient> {
        parse_poly(s, c).unwrap()
    }

    #[test]
    fn intersections() {
        let c = ctx();
        let br = BosonicRing::new(&c);
        assert_eq!(
            br.ideal_intersect(&[p(&c, "M1")], &[p(&c, "M2")]).unwrap(),
            vec![p(&c, "M1*M2")]
        );
        assert_eq!(
            br.ideal_intersect(&[p(&c, "M1")], &[p(&c, "M1")]).unwrap(),
            vec![p(&c, "M1")]
        );
        assert_eq!(
            br.ideal_intersect(&[p(&c, "M1*M4")], &[p(&c, "M2*M4")]).unwrap(),
            vec![p(&c, "M1*M2*M4")]
        );
    }

    #[test]
    fn gcds() {
        let c = ctx();
        let br = BosonicRing::new(&c);
        assert_eq!(br.gcd_poly(&p(&c, "2*M1"), &p(&c, "2*M2")).unwrap(), p(&c, "1"));
        assert_eq!(
            br.gcd_poly(&p(&c, "2*M1*M4^2"), &p(&c, "2*M4*(M1^2+M2^2+M3^2)"))
                .unwrap(),
            p(&c, "M4")
        );
        assert_eq!(
            br.gcd_poly(&p(&c, "-3*M1 + 6"), &GradedPoly::zero()).unwrap(),
            p(&c, "M1 - 2")
        );
        assert!(br
            .gcd_poly::<Coefficient>(&GradedPoly::zero(), &GradedPoly::zero())
            .is_err());
    }

    #[test]
    fn exact_division() {
        let c = ctx();
        let br = BosonicRing::new(&c);
        let f = p(&c, "(M1 + M2)*(M3 - 2*M4)");
        assert_eq!(
            br.divide_exact(&f, &p(&c, "M1 + M2")).unwrap(),
            Some(p(&c, "M3 - 2*M4"))
        );
        assert_eq!(br.divide_exact(&f, &p(&c, "M1")).unwrap(), None);
    }
}

//! Rational functions in formal parameters, kept in reduced canonical form.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::{Field, Rational};

/// Exponent vector over parameter symbols, trailing zeros trimmed so the
/// derived lexicographic order is the usual lex order on padded vectors.
pub type PExp = Vec<u32>;

fn trim(mut e: PExp) -> PExp {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

fn exp_add(a: &[u32], b: &[u32]) -> PExp {
    let n = a.len().max(b.len());
    let v = (0..n)
        .map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0))
        .collect();
    trim(v)
}

fn exp_divides(d: &[u32], e: &[u32]) -> bool {
    d.iter().enumerate().all(|(i, &x)| x <= e.get(i).copied().unwrap_or(0))
}

fn exp_sub(e: &[u32], d: &[u32]) -> PExp {
    let v = e
        .iter()
        .enumerate()
        .map(|(i, &x)| x - d.get(i).copied().unwrap_or(0))
        .collect();
    trim(v)
}

/// Multivariate polynomial with integer coefficients in the parameters.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ParamPoly {
    terms: BTreeMap<PExp, BigInt>,
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars()).map(|i| format!("p{i}")).collect();
        write!(f, "{}", self.format(&names))
    }
}

impl ParamPoly {
    pub fn zero() -> Self {
        ParamPoly::default()
    }

    pub fn constant(c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        ParamPoly { terms }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    /// The parameter with index `i`.
    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(e, BigInt::one());
        ParamPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (PExp, BigInt)>) -> Self {
        let mut p = ParamPoly::zero();
        for (e, c) in it {
            p.add_term(trim(e), c);
        }
        p
    }

    fn add_term(&mut self, e: PExp, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&Vec::new()))
    }

    pub fn constant_value(&self) -> Option<BigInt> {
        if self.is_zero() {
            Some(BigInt::zero())
        } else if self.is_constant() {
            self.terms.get(&Vec::new()).cloned()
        } else {
            None
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&PExp, &BigInt)> {
        self.terms.iter()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn nvars(&self) -> usize {
        self.terms.keys().map(|e| e.len()).max().unwrap_or(0)
    }

    /// Leading term under lex order.
    pub fn leading(&self) -> Option<(&PExp, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return ParamPoly::zero();
        }
        ParamPoly {
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn mul_term(&self, e: &[u32], c: &BigInt) -> Self {
        ParamPoly {
            terms: self.terms.iter().map(|(f, x)| (exp_add(f, e), x * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = ParamPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Integer content, positive; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    fn has_var(&self, v: usize) -> bool {
        self.terms.keys().any(|e| e.get(v).copied().unwrap_or(0) > 0)
    }

    fn min_var(&self) -> Option<usize> {
        self.terms.keys().filter_map(|e| e.iter().position(|&x| x > 0)).min()
    }

    fn degree_in(&self, v: usize) -> u32 {
        self.terms
            .keys()
            .map(|e| e.get(v).copied().unwrap_or(0))
            .max()
            .unwrap_or(0)
    }

    /// Coefficients as a univariate polynomial in parameter `v`.
    fn to_univariate(&self, v: usize) -> Vec<ParamPoly> {
        let d = self.degree_in(v) as usize;
        let mut out = vec![ParamPoly::zero(); d + 1];
        for (e, c) in &self.terms {
            let k = e.get(v).copied().unwrap_or(0) as usize;
            let mut e2 = e.clone();
            if v < e2.len() {
                e2[v] = 0;
            }
            out[k].add_term(trim(e2), c.clone());
        }
        out
    }

    fn from_univariate(cs: &[ParamPoly], v: usize) -> Self {
        let mut out = ParamPoly::zero();
        for (k, c) in cs.iter().enumerate() {
            for (e, x) in &c.terms {
                let mut e2 = e.clone();
                if e2.len() <= v {
                    e2.resize(v + 1, 0);
                }
                e2[v] += k as u32;
                out.add_term(trim(e2), x.clone());
            }
        }
        out
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide.
    pub fn div_exact(&self, d: &ParamPoly) -> Option<ParamPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        let (de, dc) = d.leading().map(|(e, c)| (e.clone(), c.clone()))?;
        let mut q = ParamPoly::zero();
        let mut r = self.clone();
        while let Some((re, rc)) = r.leading().map(|(e, c)| (e.clone(), c.clone())) {
            if !exp_divides(&de, &re) {
                return None;
            }
            let (qc, rem) = rc.div_rem(&dc);
            if !rem.is_zero() {
                return None;
            }
            let qe = exp_sub(&re, &de);
            r = &r - &d.mul_term(&qe, &qc);
            q.add_term(qe, qc);
        }
        Some(q)
    }

    /// Sign-normalized: positive leading coefficient.
    pub fn normalized_sign(self) -> Self {
        match self.leading() {
            Some((_, c)) if c.is_negative() => -self,
            _ => self,
        }
    }

    /// Greatest common divisor over Z, positive leading coefficient.
    pub fn gcd(a: &ParamPoly, b: &ParamPoly) -> ParamPoly {
        if a.is_zero() {
            return b.clone().normalized_sign();
        }
        if b.is_zero() {
            return a.clone().normalized_sign();
        }
        if a.is_constant() || b.is_constant() {
            return ParamPoly::constant(a.content().gcd(&b.content()));
        }
        let v = match (a.min_var(), b.min_var()) {
            (Some(x), Some(y)) => x.min(y),
            _ => unreachable!("non-constant polynomials have a variable"),
        };
        if !a.has_var(v) {
            return ParamPoly::gcd(a, &b.content_in(v));
        }
        if !b.has_var(v) {
            return ParamPoly::gcd(&a.content_in(v), b);
        }
        let ca = a.content_in(v);
        let cb = b.content_in(v);
        let pa = a.div_exact(&ca).expect("content divides");
        let pb = b.div_exact(&cb).expect("content divides");
        let c = ParamPoly::gcd(&ca, &cb);
        let g = primitive_prs(pa, pb, v);
        (&c * &g).normalized_sign()
    }

    /// Gcd of the coefficients when viewed as a polynomial in `v`.
    fn content_in(&self, v: usize) -> ParamPoly {
        let cs = self.to_univariate(v);
        let mut g = ParamPoly::zero();
        for c in cs.iter().rev() {
            g = ParamPoly::gcd(&g, c);
            if g.is_constant() && g.constant_value().is_some_and(|x| x.is_one()) {
                break;
            }
        }
        g
    }

    fn primitive_part_in(&self, v: usize) -> ParamPoly {
        let c = self.content_in(v);
        self.div_exact(&c).expect("content divides").normalized_sign()
    }

    pub fn eval_rational(&self, vals: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = Rational::from_integer(c.clone());
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t *= &vals[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Text with the given parameter names, terms in descending lex order.
    pub fn format(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            for (k, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let n = names.get(k).cloned().unwrap_or_else(|| format!("p{k}"));
                factors.push(if x == 1 { n } else { format!("{n}^{x}") });
            }
            if factors.is_empty() || !a.is_one() {
                factors.insert(0, a.to_string());
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

/// One pseudo-remainder sequence step set, returning the primitive gcd in `v`.
fn primitive_prs(a: ParamPoly, b: ParamPoly, v: usize) -> ParamPoly {
    let (mut a, mut b) = if a.degree_in(v) >= b.degree_in(v) {
        (a, b)
    } else {
        (b, a)
    };
    loop {
        let r = prem(&a, &b, v);
        if r.is_zero() {
            return b.primitive_part_in(v);
        }
        if r.degree_in(v) == 0 {
            return ParamPoly::one();
        }
        a = b;
        b = r.primitive_part_in(v);
    }
}

fn prem(a: &ParamPoly, b: &ParamPoly, v: usize) -> ParamPoly {
    let bu = b.to_univariate(v);
    let db = bu.len() - 1;
    let lb = bu[db].clone();
    let mut r = a.to_univariate(v);
    let mut e = (r.len() - 1) as i64 - db as i64 + 1;
    while r.len() > db && !r.iter().all(|c| c.is_zero()) {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        let mut next: Vec<ParamPoly> = r.iter().map(|c| &lb * c).collect();
        for (k, bc) in bu.iter().enumerate() {
            next[k + shift] = &next[k + shift] - &(&lr * bc);
        }
        while next.len() > 1 && next.last().is_some_and(|c| c.is_zero()) {
            next.pop();
        }
        if next.len() == 1 && next[0].is_zero() {
            next.clear();
        }
        r = next;
        e -= 1;
        if r.is_empty() {
            break;
        }
    }
    let mut out = ParamPoly::from_univariate(&r, v);
    if e > 0 {
        out = &out * &lb.pow(e as u32);
    }
    out
}

impl<'a> Add<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;
    fn add(self, o: &ParamPoly) -> ParamPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }
}

impl<'a> Sub<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;
    fn sub(self, o: &ParamPoly) -> ParamPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), -c);
        }
        r
    }
}

impl<'a> Mul<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;
    fn mul(self, o: &ParamPoly) -> ParamPoly {
        let mut r = ParamPoly::zero();
        for (e, c) in &self.terms {
            for (f, d) in &o.terms {
                r.add_term(exp_add(e, f), c * d);
            }
        }
        r
    }
}

impl Neg for ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

/// A reduced fraction of parameter polynomials.
///
/// Canonical form: `gcd(num, den) = 1` over Z (so integer content is shared
/// out too) and the leading coefficient of `den` is positive. Equal values
/// therefore compare structurally equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Coefficient {
    num: ParamPoly,
    den: ParamPoly,
}

impl fmt::Debug for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.num.nvars().max(self.den.nvars());
        let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
        write!(f, "{}", self.format(&names))
    }
}

impl Coefficient {
    pub fn new(num: ParamPoly, den: ParamPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Coefficient::zero();
        }
        if let (Some(n), Some(d)) = (num.constant_value(), den.constant_value()) {
            return Coefficient::from_rational(&BigRational::new(n, d));
        }
        let g = ParamPoly::gcd(&num, &den);
        let (mut n, mut d) = (
            num.div_exact(&g).expect("gcd divides"),
            den.div_exact(&g).expect("gcd divides"),
        );
        if d.leading().is_some_and(|(_, c)| c.is_negative()) {
            n = -n;
            d = -d;
        }
        Coefficient { num: n, den: d }
    }

    pub fn param(i: usize) -> Self {
        Coefficient {
            num: ParamPoly::var(i),
            den: ParamPoly::one(),
        }
    }

    pub fn from_rational(r: &Rational) -> Self {
        Coefficient {
            num: ParamPoly::constant(r.numer().clone()),
            den: ParamPoly::constant(r.denom().clone()),
        }
    }

    pub fn numer(&self) -> &ParamPoly {
        &self.num
    }

    pub fn denom(&self) -> &ParamPoly {
        &self.den
    }

    pub fn is_rational(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    fn as_rational(&self) -> Option<Rational> {
        match (self.num.constant_value(), self.den.constant_value()) {
            (Some(n), Some(d)) => Some(BigRational::new(n, d)),
            _ => None,
        }
    }

    pub fn eval(&self, vals: &[Rational]) -> Option<Rational> {
        let d = self.den.eval_rational(vals);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval_rational(vals) / d)
    }

    /// Text form; compound values are parenthesized so the result can sit
    /// in front of a monomial and re-parse unambiguously.
    pub fn format(&self, names: &[String]) -> String {
        if let Some(r) = self.as_rational() {
            return format_rational(&r);
        }
        let wrap = |p: &ParamPoly| {
            let s = p.format(names);
            if p.nterms() > 1 || (p.nterms() == 1 && !is_monomial_text(p)) {
                format!("({s})")
            } else {
                s
            }
        };
        if self.den.constant_value().is_some_and(|d| d.is_one()) {
            return wrap(&self.num);
        }
        format!("{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

fn is_monomial_text(p: &ParamPoly) -> bool {
    // a single term with coefficient 1 prints as a bare product
    p.leading().is_some_and(|(_, c)| c.is_one())
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl Zero for Coefficient {
    fn zero() -> Self {
        Coefficient {
            num: ParamPoly::zero(),
            den: ParamPoly::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for Coefficient {
    fn one() -> Self {
        Coefficient {
            num: ParamPoly::one(),
            den: ParamPoly::one(),
        }
    }
}

impl Add for Coefficient {
    type Output = Coefficient;
    fn add(self, o: Coefficient) -> Coefficient {
        self.add_ref(&o)
    }
}

impl Sub for Coefficient {
    type Output = Coefficient;
    fn sub(self, o: Coefficient) -> Coefficient {
        self.sub_ref(&o)
    }
}

impl Mul for Coefficient {
    type Output = Coefficient;
    fn mul(self, o: Coefficient) -> Coefficient {
        self.mul_ref(&o)
    }
}

impl Neg for Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        Coefficient {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Field for Coefficient {
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Coefficient::new(self.den.clone(), self.num.clone())
    }

    fn from_i64(n: i64) -> Self {
        Coefficient {
            num: ParamPoly::constant(BigInt::from(n)),
            den: ParamPoly::one(),
        }
    }

    fn from_rational(r: &Rational) -> Self {
        Coefficient::from_rational(r)
    }

    fn to_rational(&self) -> Option<Rational> {
        self.as_rational()
    }

    fn add_ref(&self, o: &Self) -> Self {
        if let (Some(a), Some(b)) = (self.as_rational(), o.as_rational()) {
            return Coefficient::from_rational(&(a + b));
        }
        if self.den == o.den {
            return Coefficient::new(&self.num + &o.num, self.den.clone());
        }
        Coefficient::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }

    fn sub_ref(&self, o: &Self) -> Self {
        self.add_ref(&o.neg_ref())
    }

    fn mul_ref(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Coefficient::zero();
        }
        if let (Some(a), Some(b)) = (self.as_rational(), o.as_rational()) {
            return Coefficient::from_rational(&(a * b));
        }
        Coefficient::new(&self.num * &o.num, &self.den * &o.den)
    }

    fn neg_ref(&self) -> Self {
        Coefficient {
            num: -self.num.clone(),
            den: self.den.clone(),
        }
    }

    fn is_negative(&self) -> bool {
        self.num.leading().is_some_and(|(_, c)| c.is_negative())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn p(i: usize) -> ParamPoly {
        ParamPoly::var(i)
    }

    fn c(n: i64) -> ParamPoly {
        ParamPoly::constant(BigInt::from(n))
    }

    #[test]
    fn gcd_of_products() {
        // (a+b)(a-2c) and (a+b)(b+1)
        let f = &(&p(0) + &p(1)) * &(&p(0) - &(&c(2) * &p(2)));
        let g = &(&p(0) + &p(1)) * &(&p(1) + &c(1));
        assert_eq!(ParamPoly::gcd(&f, &g), &p(0) + &p(1));
    }

    #[test]
    fn gcd_integer_content() {
        let f = &c(6) * &p(0);
        let g = &c(4) * &(&p(0) * &p(1));
        assert_eq!(ParamPoly::gcd(&f, &g), &c(2) * &p(0));
    }

    #[test]
    fn gcd_coprime_is_one() {
        let f = &(&p(0) * &p(0)) + &p(1);
        let g = &p(0) + &c(3);
        assert_eq!(ParamPoly::gcd(&f, &g), c(1));
    }

    #[test]
    fn exact_division() {
        let f = &(&p(0) + &p(1)) * &(&p(0) - &p(2));
        assert_eq!(f.div_exact(&(&p(0) - &p(2))), Some(&p(0) + &p(1)));
        assert_eq!(f.div_exact(&(&p(0) + &c(1))), None);
    }

    #[test]
    fn fraction_canonical() {
        let a = Coefficient::param(0);
        let b = Coefficient::param(1);
        // a/b + b/a - (a^2+b^2)/(ab) = 0
        let x = a.div_ref(&b).add_ref(&b.div_ref(&a));
        let y = a.mul_ref(&a).add_ref(&b.mul_ref(&b)).div_ref(&a.mul_ref(&b));
        assert_eq!(x, y);
        assert!(x.sub_ref(&y).is_zero());
        // (2a)/(4a) = 1/2
        let two_a = Coefficient::from_i64(2).mul_ref(&a);
        let four_a = Coefficient::from_i64(4).mul_ref(&a);
        assert_eq!(two_a.div_ref(&four_a), Coefficient::from_rational(&rat(1, 2)));
    }

    #[test]
    fn denominator_sign_normalized() {
        let a = Coefficient::param(0);
        let x = Coefficient::from_i64(1).div_ref(&a.neg_ref());
        assert!(x.is_negative());
        assert!(!x.denom().leading().unwrap().1.is_negative());
    }

    #[test]
    fn formatting() {
        let names: Vec<String> = ["a1", "a2"].iter().map(|s| s.to_string()).collect();
        let a = Coefficient::param(0);
        let b = Coefficient::param(1);
        let x = a.mul_ref(&b).div_ref(&Coefficient::from_i64(2).mul_ref(&a.mul_ref(&a)));
        assert_eq!(x.format(&names), "a2/(2*a1)");
        let y = a.add_ref(&b);
        assert_eq!(y.format(&names), "(a1 + a2)");
        assert_eq!(Coefficient::from_rational(&rat(-3, 4)).format(&names), "-3/4");
    }
}

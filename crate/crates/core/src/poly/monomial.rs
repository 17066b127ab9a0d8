use std::cmp::Ordering;

use smallvec::SmallVec;

use super::context::VarId;

/// A product of variables.
///
/// Bosonic factors are stored sparsely as `(var, exponent)` pairs sorted by
/// variable; Grassmann factors as a strictly increasing id list. A repeated
/// Grassmann factor is zero and is never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    bos: SmallVec<[(VarId, u32); 4]>,
    fer: SmallVec<[VarId; 4]>,
}

/// Which end a Grassmann variable is moved to before it is stripped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn bosonic(v: VarId, e: u32) -> Self {
        let mut m = Monomial::one();
        if e > 0 {
            m.bos.push((v, e));
        }
        m
    }

    pub fn fermionic(v: VarId) -> Self {
        let mut m = Monomial::one();
        m.fer.push(v);
        m
    }

    pub fn is_one(&self) -> bool {
        self.bos.is_empty() && self.fer.is_empty()
    }

    pub fn bos(&self) -> &[(VarId, u32)] {
        &self.bos
    }

    pub fn fer(&self) -> &[VarId] {
        &self.fer
    }

    /// Number of factors counted with multiplicity.
    pub fn total_degree(&self) -> u32 {
        self.bos.iter().map(|&(_, e)| e).sum::<u32>() + self.fer.len() as u32
    }

    pub fn exponent(&self, v: VarId) -> u32 {
        if self.fer.contains(&v) {
            return 1;
        }
        self.bos.iter().find(|&&(w, _)| w == v).map(|&(_, e)| e).unwrap_or(0)
    }

    /// All factors as `(var, exponent)` in variable order.
    pub fn factors(&self) -> impl Iterator<Item = (VarId, u32)> + '_ {
        let mut i = 0;
        let mut j = 0;
        std::iter::from_fn(move || {
            let b = self.bos.get(i);
            let f = self.fer.get(j);
            match (b, f) {
                (Some(&(v, e)), Some(&w)) => {
                    if v < w {
                        i += 1;
                        Some((v, e))
                    } else {
                        j += 1;
                        Some((w, 1))
                    }
                }
                (Some(&(v, e)), None) => {
                    i += 1;
                    Some((v, e))
                }
                (None, Some(&w)) => {
                    j += 1;
                    Some((w, 1))
                }
                (None, None) => None,
            }
        })
    }

    pub fn contains(&self, v: VarId) -> bool {
        self.exponent(v) > 0
    }

    /// Graded-commutative product; `None` if a Grassmann factor repeats.
    /// The flag is true when the Koszul sign is −1.
    pub fn mul(&self, o: &Monomial) -> Option<(Monomial, bool)> {
        let mut fer: SmallVec<[VarId; 4]> = SmallVec::with_capacity(self.fer.len() + o.fer.len());
        let mut inversions = 0usize;
        let (a, b) = (&self.fer, &o.fer);
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i] < b[j]) {
                fer.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j] < a[i] {
                // b[j] jumps over the remaining elements of a
                inversions += a.len() - i;
                fer.push(b[j]);
                j += 1;
            } else {
                return None;
            }
        }
        let mut bos: SmallVec<[(VarId, u32); 4]> = SmallVec::with_capacity(self.bos.len() + o.bos.len());
        let (a, b) = (&self.bos, &o.bos);
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                bos.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                bos.push(b[j]);
                j += 1;
            } else {
                bos.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
        Some((Monomial { bos, fer }, inversions % 2 == 1))
    }

    /// Partial derivative of the monomial by `v`: returns the multiplier
    /// (exponent, with sign for Grassmann variables) and the remaining
    /// monomial, or `None` if `v` does not occur.
    pub fn deriv(&self, v: VarId, side: Side) -> Option<(i64, Monomial)> {
        if let Some(p) = self.fer.iter().position(|&w| w == v) {
            let passed = match side {
                Side::Left => p,
                Side::Right => self.fer.len() - 1 - p,
            };
            let mut m = self.clone();
            m.fer.remove(p);
            return Some((if passed % 2 == 0 { 1 } else { -1 }, m));
        }
        let p = self.bos.iter().position(|&(w, _)| w == v)?;
        let mut m = self.clone();
        let e = m.bos[p].1;
        if e == 1 {
            m.bos.remove(p);
        } else {
            m.bos[p].1 -= 1;
        }
        Some((e as i64, m))
    }

    /// Split into the factors satisfying `pred` and the rest. Both parts
    /// keep their relative order; the flag reports the Koszul sign of
    /// writing the monomial as `selected · rest`.
    pub fn split(&self, pred: impl Fn(VarId) -> bool) -> (Monomial, Monomial, bool) {
        let mut sel = Monomial::one();
        let mut rest = Monomial::one();
        for &(v, e) in &self.bos {
            if pred(v) {
                sel.bos.push((v, e));
            } else {
                rest.bos.push((v, e));
            }
        }
        let mut inversions = 0usize;
        let mut rest_seen = 0usize;
        for &v in &self.fer {
            if pred(v) {
                inversions += rest_seen;
                sel.fer.push(v);
            } else {
                rest_seen += 1;
                rest.fer.push(v);
            }
        }
        (sel, rest, inversions % 2 == 1)
    }

    /// Divisibility of bosonic-only monomials (used by Groebner conversions).
    pub fn divides(&self, o: &Monomial) -> bool {
        self.fer.iter().all(|v| o.fer.contains(v)) && self.bos.iter().all(|&(v, e)| o.exponent(v) >= e)
    }
}

impl Ord for Monomial {
    /// Graded by factor count, then lexicographic with earlier variables
    /// larger.
    fn cmp(&self, o: &Self) -> Ordering {
        match self.total_degree().cmp(&o.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let mut a = self.factors();
        let mut b = o.factors();
        loop {
            match (a.next(), b.next()) {
                (Some((va, ea)), Some((vb, eb))) => {
                    if va != vb {
                        return if va < vb { Ordering::Greater } else { Ordering::Less };
                    }
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                }
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

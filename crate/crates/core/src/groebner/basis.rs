use std::collections::VecDeque;

use super::order::{exp_coprime, exp_divides, exp_lcm, exp_sub, Exp, Ring};
use super::vector::{Term, Vector};
use crate::scalar::Field;

/// Full reduction of `f` by `basis` (every term, not just the lead).
pub fn reduce<F: Field>(ring: &Ring, f: &Vector<F>, basis: &[Vector<F>]) -> Vector<F> {
    let leads: Vec<&Term<F>> = basis.iter().map(|g| g.lead().expect("nonzero basis")).collect();
    let mut tail = f.clone();
    let mut rem = Vector::zero();
    while let Some(t) = tail.lead() {
        let hit = leads
            .iter()
            .position(|l| l.slot == t.slot && exp_divides(&l.exp, &t.exp));
        match hit {
            Some(k) => {
                let l = leads[k];
                let e = exp_sub(&t.exp, &l.exp);
                let c = t.coef.div_ref(&l.coef).neg_ref();
                tail = tail.add_scaled(ring, &basis[k], Some(&e), &c);
            }
            None => {
                let t = tail.pop_lead().expect("nonempty");
                rem.push_lowest(t);
            }
        }
    }
    rem
}

struct Pair {
    i: usize,
    j: usize,
    slot: u32,
    lcm: Exp,
}

struct Builder<'a, F: Field> {
    ring: &'a Ring,
    elems: Vec<Vector<F>>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    /// The product criterion only holds for ideals.
    ideal: bool,
}

impl<'a, F: Field> Builder<'a, F> {
    fn lead(&self, i: usize) -> &Term<F> {
        self.elems[i].lead().expect("stored elements are nonzero")
    }

    fn active_set(&self) -> Vec<Vector<F>> {
        self.elems
            .iter()
            .zip(&self.active)
            .filter(|(_, &a)| a)
            .map(|(g, _)| g.clone())
            .collect()
    }

    /// Gebauer–Möller installation of a new element.
    fn update(&mut self, h: Vector<F>) {
        let hi = self.elems.len();
        self.elems.push(h);
        self.active.push(false);
        let lh = self.lead(hi).clone();

        let mut cands: VecDeque<(usize, Exp)> = (0..hi)
            .filter(|&g| self.active[g] && self.lead(g).slot == lh.slot)
            .map(|g| (g, exp_lcm(&lh.exp, &self.lead(g).exp)))
            .collect();
        let mut kept: Vec<(usize, Exp)> = Vec::new();
        while let Some((g1, l1)) = cands.pop_front() {
            let coprime = self.ideal && exp_coprime(&lh.exp, &self.lead(g1).exp);
            let dominated =
                cands.iter().any(|(_, l2)| exp_divides(l2, &l1)) || kept.iter().any(|(_, l2)| exp_divides(l2, &l1));
            if coprime || !dominated {
                kept.push((g1, l1));
            }
        }
        let fresh: Vec<Pair> = kept
            .into_iter()
            .filter(|(g, _)| !(self.ideal && exp_coprime(&lh.exp, &self.lead(*g).exp)))
            .map(|(g, l)| Pair {
                i: g,
                j: hi,
                slot: lh.slot,
                lcm: l,
            })
            .collect();

        let elems = &self.elems;
        let lead = |i: usize| elems[i].lead().expect("nonzero");
        self.pairs.retain(|p| {
            if p.slot != lh.slot || !exp_divides(&lh.exp, &p.lcm) {
                return true;
            }
            exp_lcm(&lead(p.i).exp, &lh.exp) == p.lcm || exp_lcm(&lead(p.j).exp, &lh.exp) == p.lcm
        });
        self.pairs.extend(fresh);

        for g in 0..hi {
            if self.active[g] {
                let lg = self.lead(g);
                if lg.slot == lh.slot && exp_divides(&lh.exp, &lg.exp) {
                    self.active[g] = false;
                }
            }
        }
        self.active[hi] = true;
    }

    fn select(&mut self) -> Option<Pair> {
        let ring = self.ring;
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (pa, pb) = (&self.pairs[a], &self.pairs[b]);
            ring.cmp_term(pa.slot, &pa.lcm, pb.slot, &pb.lcm)
                .then((pa.j, pa.i).cmp(&(pb.j, pb.i)))
        })?;
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, p: &Pair) -> Vector<F> {
        let (gi, gj) = (&self.elems[p.i], &self.elems[p.j]);
        let (li, lj) = (self.lead(p.i), self.lead(p.j));
        let a = gi.mul_term(&exp_sub(&p.lcm, &li.exp), &li.coef.inv());
        a.add_scaled(self.ring, gj, Some(&exp_sub(&p.lcm, &lj.exp)), &lj.coef.inv().neg_ref())
    }
}

/// Reduced Groebner basis of the submodule generated by `gens`, sorted by
/// leading term, largest first. Deterministic for a fixed input order.
pub fn groebner<F: Field>(ring: &Ring, gens: &[Vector<F>]) -> Vec<Vector<F>> {
    let ideal = ring.splits.is_empty() && gens.iter().all(|g| g.max_slot().unwrap_or(0) == 0);
    let mut b = Builder {
        ring,
        elems: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        ideal,
    };
    for g in gens {
        let r = reduce(ring, g, &b.active_set());
        if !r.is_zero() {
            b.update(r.monic());
        }
    }
    while let Some(p) = b.select() {
        let s = b.spoly(&p);
        let active = b.active_set();
        let h = reduce(ring, &s, &active);
        if !h.is_zero() {
            b.update(h.monic());
        }
    }
    let minimal = b.active_set();
    let mut out: Vec<Vector<F>> = (0..minimal.len())
        .map(|i| {
            let others: Vec<Vector<F>> = minimal
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i)
                .map(|(_, g)| g.clone())
                .collect();
            reduce(ring, &minimal[i], &others).monic()
        })
        .collect();
    out.sort_by(|a, b| {
        let (x, y) = (a.lead().expect("nonzero"), b.lead().expect("nonzero"));
        ring.cmp_term(y.slot, &y.exp, x.slot, &x.exp)
    });
    out
}

/// A Groebner basis of a submodule of `R^rank`, optionally carrying the
/// bookkeeping needed to express reductions in the original generators.
///
/// Witnesses come from the extended module: generator `g_i` is replaced by
/// `(g_i, e_i)` with the tracking slots in a block below the original ones,
/// so a Groebner basis of the extension restricts to a basis of the
/// submodule and its tracking-only elements generate the syzygies.
#[derive(Clone, Debug)]
pub struct ModuleBasis<F: Field> {
    ring: Ring,
    ext_ring: Ring,
    rank: usize,
    ngens: usize,
    tracking: bool,
    basis: Vec<Vector<F>>,
}

impl<F: Field> ModuleBasis<F> {
    pub fn new(ring: &Ring, rank: usize, gens: &[Vector<F>]) -> Self {
        ModuleBasis {
            ring: ring.clone(),
            ext_ring: ring.clone(),
            rank,
            ngens: gens.len(),
            tracking: false,
            basis: groebner(ring, gens),
        }
    }

    pub fn with_witnesses(ring: &Ring, rank: usize, gens: &[Vector<F>]) -> Self {
        let ext_ring = ring.clone().with_split(rank as u32);
        let ext: Vec<Vector<F>> = gens
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let mut terms: Vec<Term<F>> = g.terms().to_vec();
                terms.push(Term {
                    slot: (rank + i) as u32,
                    exp: ring.one(),
                    coef: F::one(),
                });
                Vector::from_terms(&ext_ring, terms)
            })
            .collect();
        ModuleBasis {
            ring: ring.clone(),
            ext_ring: ext_ring.clone(),
            rank,
            ngens: gens.len(),
            tracking: true,
            basis: groebner(&ext_ring, &ext),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The reduced basis of the submodule itself.
    pub fn elements(&self) -> Vec<Vector<F>> {
        let r = self.rank as u32;
        self.basis
            .iter()
            .filter(|g| g.lead().is_some_and(|t| t.slot < r))
            .map(|g| g.remap(&self.ring, |s| (s < r).then_some(s)))
            .collect()
    }

    pub fn is_reduced(&self) -> bool {
        true
    }

    /// Remainder of `f` and, with tracking, coefficients `w` such that
    /// `f = Σ w_i·gen_i + remainder`. The witness is canonical: it is itself
    /// reduced modulo the syzygies of the generators.
    pub fn normal_form(&self, f: &Vector<F>) -> (Vector<F>, Option<Vec<Vector<F>>>) {
        if !self.tracking {
            return (reduce(&self.ring, f, &self.basis), None);
        }
        let lifted = f.remap(&self.ext_ring, Some);
        let red = reduce(&self.ext_ring, &lifted, &self.basis);
        let r = self.rank as u32;
        let rem = red.remap(&self.ring, |s| (s < r).then_some(s));
        let poly_ring = self.ring.without_splits();
        let witness = (0..self.ngens)
            .map(|i| {
                red.component(&self.ext_ring, r + i as u32)
                    .neg()
                    .remap(&poly_ring, Some)
            })
            .collect();
        (rem, Some(witness))
    }

    pub fn contains(&self, f: &Vector<F>) -> bool {
        self.normal_form(f).0.is_zero()
    }

    /// Groebner basis of the syzygy module, as vectors in `R^ngens`.
    pub fn syzygy_basis(&self) -> Vec<Vector<F>> {
        assert!(self.tracking, "syzygies need a tracking basis");
        let r = self.rank as u32;
        let syz_ring = self.ring.without_splits();
        self.basis
            .iter()
            .filter(|g| g.lead().is_some_and(|t| t.slot >= r))
            .map(|g| g.remap(&syz_ring, |s| s.checked_sub(r)))
            .collect()
    }
}

/// Generators of the syzygy module of `gens`, interreduced, with every
/// element expressible through the others discarded.
pub fn syzygies<F: Field>(ring: &Ring, rank: usize, gens: &[Vector<F>]) -> Vec<Vector<F>> {
    if gens.is_empty() {
        return Vec::new();
    }
    let mb = ModuleBasis::with_witnesses(ring, rank, gens);
    prune_redundant(&ring.without_splits(), mb.syzygy_basis())
}

/// Drop elements lying in the submodule generated by the rest, largest
/// leading term first.
pub fn prune_redundant<F: Field>(ring: &Ring, mut v: Vec<Vector<F>>) -> Vec<Vector<F>> {
    let mut i = 0;
    while i < v.len() {
        let others: Vec<Vector<F>> = v
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .map(|(_, g)| g.clone())
            .collect();
        let gb = groebner(ring, &others);
        if reduce(ring, &v[i], &gb).is_zero() {
            v.remove(i);
        } else {
            i += 1;
        }
    }
    v
}

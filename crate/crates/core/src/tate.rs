//! Tate resolution of the Jacobian ring, type-β selection and the extended
//! configuration space.
//!
//! Homology of the Grassmann-graded algebra is computed stratum by stratum:
//! the monomials in generators of a fixed degree form the slots of a free
//! module over the field ring, and δ becomes a matrix whose Koszul signs
//! come from the canonical monomial order.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{groebner, normalize_primitive, reduce, BosonicRing, ModuleBasis, Term, Vector};
use crate::poly::{Context, GradedPoly, Monomial, Role, Side, VarId};
use crate::scalar::Field;

pub const DEFAULT_CAP: usize = 8;

#[derive(Clone, Debug)]
pub struct TateGenerator<F: Field> {
    pub id: VarId,
    /// The generator has ghost degree `−level`.
    pub level: usize,
    pub image: GradedPoly<F>,
    pub beta: bool,
    /// Name of the mirrored ghost (or of the field, for anti-fields).
    pub partner_name: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Running,
    Terminated,
    CapExhausted,
}

/// Resolution in progress.
#[derive(Clone, Debug)]
pub struct TateState<F: Field> {
    ctx: Context,
    s0: GradedPoly<F>,
    ring: BosonicRing,
    gens: Vec<TateGenerator<F>>,
    index: HashMap<VarId, usize>,
    depth: usize,
    cap: usize,
    status: Status,
}

/// Monomials in generators of one total degree, used as module slots.
/// Products come first and single generators last, each group in
/// descending monomial order.
#[derive(Clone, Debug)]
pub struct Stratum {
    pub level: usize,
    pub basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl Stratum {
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn slot(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates over the field ring.
    pub fn vector<F: Field>(&self, ring: &BosonicRing, p: &GradedPoly<F>) -> Result<Vector<F>> {
        let fields = ring.fields();
        let mut terms = Vec::with_capacity(p.len());
        for (m, c) in p.terms() {
            let (fpart, gpart, neg) = m.split(|v| fields.contains(&v));
            debug_assert!(!neg, "field factors are bosonic");
            let slot = self
                .slot(&gpart)
                .ok_or_else(|| Error::Precondition(format!("term outside the degree -{} stratum", self.level)))?;
            let exp = ring.exp_of(&fpart).expect("field part");
            terms.push(Term {
                slot: slot as u32,
                exp,
                coef: c.clone(),
            });
        }
        Ok(Vector::from_terms(&ring.ring, terms))
    }

    pub fn poly<F: Field>(&self, ring: &BosonicRing, v: &Vector<F>) -> GradedPoly<F> {
        let mut out = GradedPoly::zero();
        for t in v.terms() {
            let (m, neg) = ring
                .monomial_of(&t.exp)
                .mul(&self.basis[t.slot as usize])
                .expect("bosonic prefix");
            out.add_term(m, if neg { t.coef.neg_ref() } else { t.coef.clone() });
        }
        out
    }
}

/// Default anti-field name: `s` inserted before trailing digits.
pub fn antifield_name(field: &str) -> String {
    let cut = field.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    format!("{}s{}", &field[..cut], &field[cut..])
}

impl<F: Field> TateState<F> {
    /// Degree −1 step: one anti-field per field with `δ(x*) = ∂S₀/∂x`.
    pub fn init_resolution(s0: &GradedPoly<F>, ctx: &Context) -> Result<Self> {
        Self::init_with_names(s0, ctx, &BTreeMap::new())
    }

    pub fn init_with_names(s0: &GradedPoly<F>, ctx: &Context, names: &BTreeMap<VarId, String>) -> Result<Self> {
        let ring = BosonicRing::new(ctx);
        if ring.to_vector(s0).is_err() {
            return Err(Error::Precondition(
                "S0 must be a polynomial in the degree-0 bosonic fields".into(),
            ));
        }
        let mut ctx = ctx.clone();
        let mut st = TateState {
            ctx: Context::new(),
            s0: s0.clone(),
            ring,
            gens: Vec::new(),
            index: HashMap::new(),
            depth: 1,
            cap: DEFAULT_CAP,
            status: Status::Running,
        };
        for f in st.ring.fields().to_vec() {
            let anti = match ctx.var(f).partner {
                Some(p) => p,
                None => {
                    let name = names.get(&f).cloned().unwrap_or_else(|| antifield_name(ctx.name(f)));
                    let id = ctx.add_variable(&name, -1)?;
                    ctx.pair(f, id)?;
                    id
                }
            };
            st.push_gen(TateGenerator {
                id: anti,
                level: 1,
                image: s0.deriv(f, Side::Left),
                beta: true,
                partner_name: ctx.name(f).to_string(),
            });
        }
        st.ctx = ctx;
        Ok(st)
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap.max(1);
        self
    }

    fn push_gen(&mut self, g: TateGenerator<F>) {
        self.index.insert(g.id, self.gens.len());
        self.gens.push(g);
    }

    /// The same resolution minus some generators of degree ≤ −2. The
    /// variables stay in the context as inert symbols, so every other
    /// name and id is unchanged. Meant for deliberately broken rosters.
    pub fn without(&self, omit: &[VarId]) -> Result<Self> {
        for &v in omit {
            match self.generator(v) {
                None => return Err(Error::Precondition(format!("{} is not a generator", self.ctx.name(v)))),
                Some(g) if g.level < 2 => {
                    return Err(Error::Precondition(format!(
                        "cannot omit the anti-field {}",
                        self.ctx.name(v)
                    )))
                }
                _ => {}
            }
        }
        let mut st = self.clone();
        st.gens.retain(|g| !omit.contains(&g.id));
        if let Some(g) = st
            .gens
            .iter()
            .find(|g| g.image.variables().iter().any(|v| omit.contains(v)))
        {
            return Err(Error::Precondition(format!(
                "{} depends on an omitted generator",
                self.ctx.name(g.id)
            )));
        }
        st.index = st.gens.iter().enumerate().map(|(i, g)| (g.id, i)).collect();
        Ok(st)
    }

    pub fn ctx(&self) -> &Context {
        &self.ctx
    }

    pub fn s0(&self) -> &GradedPoly<F> {
        &self.s0
    }

    pub fn ring(&self) -> &BosonicRing {
        &self.ring
    }

    pub fn generators(&self) -> &[TateGenerator<F>] {
        &self.gens
    }

    pub fn generator(&self, id: VarId) -> Option<&TateGenerator<F>> {
        self.index.get(&id).map(|&i| &self.gens[i])
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn level_gens(&self, level: usize, beta_only: bool) -> Vec<&TateGenerator<F>> {
        self.gens
            .iter()
            .filter(|g| g.level == level && (g.beta || !beta_only))
            .collect()
    }

    /// Generator counts per level, degree −1 first.
    pub fn roster_sizes(&self, beta_only: bool) -> Vec<usize> {
        let max = self.gens.iter().map(|g| g.level).max().unwrap_or(0);
        (1..=max).map(|k| self.level_gens(k, beta_only).len()).collect()
    }

    /// The partial derivatives of S₀: generators of the Jacobian ideal.
    pub fn partials(&self) -> Vec<GradedPoly<F>> {
        self.level_gens(1, false).iter().map(|g| g.image.clone()).collect()
    }

    pub fn delta_var(&self, v: VarId) -> GradedPoly<F> {
        self.generator(v).map(|g| g.image.clone()).unwrap_or_default()
    }

    /// The Tate differential, extended as a left derivation. Fields and
    /// ghosts are δ-constants, so this is also `δ ⊗ Id`.
    pub fn delta(&self, p: &GradedPoly<F>) -> GradedPoly<F> {
        let mut out = GradedPoly::zero();
        for v in p.variables() {
            if let Some(g) = self.generator(v) {
                if !g.image.is_zero() {
                    out = &out + &(&g.image * &p.deriv(v, Side::Left));
                }
            }
        }
        out
    }

    pub fn stratum(&self, level: usize, beta_only: bool) -> Stratum {
        let cands: Vec<&TateGenerator<F>> = self
            .gens
            .iter()
            .filter(|g| g.level <= level && (g.beta || !beta_only))
            .collect();
        let mut out = Vec::new();
        fn walk<F: Field>(
            cands: &[&TateGenerator<F>],
            ctx: &Context,
            i: usize,
            rem: usize,
            acc: Monomial,
            out: &mut Vec<Monomial>,
        ) {
            if rem == 0 {
                out.push(acc);
                return;
            }
            if i == cands.len() {
                return;
            }
            let g = cands[i];
            let max_e = if ctx.var(g.id).is_odd() { 1 } else { rem / g.level };
            for e in 0..=max_e.min(rem / g.level) {
                let m = if e == 0 {
                    Some(acc.clone())
                } else if ctx.var(g.id).is_odd() {
                    acc.mul(&Monomial::fermionic(g.id)).map(|(m, _)| m)
                } else {
                    acc.mul(&Monomial::bosonic(g.id, e as u32)).map(|(m, _)| m)
                };
                if let Some(m) = m {
                    walk(cands, ctx, i + 1, rem - e * g.level, m, out);
                }
            }
        }
        walk(&cands, &self.ctx, 0, level, Monomial::one(), &mut out);
        out.sort_by(|a, b| b.cmp(a));
        let index = out.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Stratum {
            level,
            basis: out,
            index,
        }
    }

    /// δ of every slot of `upper` expressed in `lower`.
    fn delta_columns(&self, upper: &Stratum, lower: &Stratum) -> Result<Vec<Vector<F>>> {
        upper
            .basis
            .iter()
            .map(|m| lower.vector(&self.ring, &self.delta(&GradedPoly::term(m.clone(), F::one()))))
            .collect()
    }

    /// Generators of `H^{−k}` restricted to the β-generators of degree −k,
    /// as interreduced cocycles with boundary-reduced representatives.
    pub fn homology_generators(&self, k: usize) -> Result<Vec<GradedPoly<F>>> {
        if k == 0 || k > self.depth {
            return Err(Error::StratumNotBuilt(k));
        }
        let vgens = self.level_gens(k, true);
        if vgens.is_empty() {
            return Ok(Vec::new());
        }
        let lower = self.stratum(k - 1, false);
        let images: Vec<Vector<F>> = vgens
            .iter()
            .map(|g| lower.vector(&self.ring, &g.image))
            .collect::<Result<_>>()?;
        let vring = self.ring.ring.clone();
        let mut cycles = ModuleBasis::with_witnesses(&vring, lower.len(), &images).syzygy_basis();
        if cycles.is_empty() {
            return Ok(Vec::new());
        }
        let boundaries = if self.cheap_path_applies(k, &vgens, &cycles) {
            Vec::new()
        } else {
            self.boundaries_in_v(k, &vgens)?
        };
        if !boundaries.is_empty() {
            cycles = cycles
                .iter()
                .map(|c| reduce(&vring, c, &boundaries))
                .filter(|c| !c.is_zero())
                .collect();
        }
        let mut i = 0;
        while i < cycles.len() {
            let mut others: Vec<Vector<F>> = boundaries.clone();
            others.extend(
                cycles
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, c)| c.clone()),
            );
            let gb = groebner(&vring, &others);
            if reduce(&vring, &cycles[i], &gb).is_zero() {
                cycles.remove(i);
            } else {
                i += 1;
            }
        }
        let mut out: Vec<GradedPoly<F>> = cycles
            .iter()
            .map(|c| {
                let mut p = GradedPoly::zero();
                for (j, g) in vgens.iter().enumerate() {
                    let coord = self.ring.component_poly(c, j as u32);
                    p = &p + &(&coord * &GradedPoly::var(&self.ctx, g.id));
                }
                normalize_primitive(&p)
            })
            .collect();
        out.sort_by(|a, b| a.leading().map(|t| t.0).cmp(&b.leading().map(|t| t.0)));
        Ok(out)
    }

    /// Boundaries inside the β-span lie in `J·V` (J the Jacobian ideal)
    /// unless generators of degree −k−1 exist. If no cycle term is
    /// divisible by a leading term of J and no cycle lies in `J·V` plus the
    /// others, the boundary module cannot change anything.
    fn cheap_path_applies(&self, k: usize, vgens: &[&TateGenerator<F>], cycles: &[Vector<F>]) -> bool {
        if k == 1 || !self.level_gens(k + 1, false).is_empty() {
            return false;
        }
        let r = &self.ring.ring;
        let jgb: Vec<Vector<F>> = groebner(
            r,
            &self
                .partials()
                .iter()
                .map(|p| self.ring.to_vector(p).expect("bosonic"))
                .collect::<Vec<_>>(),
        );
        let divisible = cycles.iter().any(|c| {
            c.terms().iter().any(|t| {
                jgb.iter().any(|g| {
                    let l = g.lead().expect("nonzero");
                    l.exp.iter().zip(&t.exp).all(|(a, b)| a <= b)
                })
            })
        });
        if divisible {
            return false;
        }
        let jv: Vec<Vector<F>> = (0..vgens.len() as u32)
            .flat_map(|j| jgb.iter().map(move |g| g.remap(r, |_| Some(j))))
            .collect();
        cycles.iter().enumerate().all(|(i, c)| {
            let mut gens = jv.clone();
            gens.extend(
                cycles
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, x)| x.clone()),
            );
            !reduce(r, c, &groebner(r, &gens)).is_zero()
        })
    }

    /// Groebner basis of `Im δ ∩ V` in β-generator coordinates.
    fn boundaries_in_v(&self, k: usize, vgens: &[&TateGenerator<F>]) -> Result<Vec<Vector<F>>> {
        let cur = self.stratum(k, false);
        let upper = self.stratum(k + 1, false);
        let vslots: Vec<usize> = vgens
            .iter()
            .map(|g| {
                cur.slot(&GradedPoly::<F>::var(&self.ctx, g.id).leading().expect("var").0.clone())
                    .expect("generator is a slot")
            })
            .collect();
        let others: Vec<usize> = (0..cur.len()).filter(|s| !vslots.contains(s)).collect();
        let mut perm = vec![0u32; cur.len()];
        for (i, &s) in others.iter().enumerate() {
            perm[s] = i as u32;
        }
        for (j, &s) in vslots.iter().enumerate() {
            perm[s] = (others.len() + j) as u32;
        }
        let split = others.len() as u32;
        let bring = self.ring.ring.clone().with_split(split);
        let cols: Vec<Vector<F>> = self
            .delta_columns(&upper, &cur)?
            .iter()
            .map(|v| v.remap(&bring, |s| Some(perm[s as usize])))
            .collect();
        let gb = groebner(&bring, &cols);
        let vring = self.ring.ring.clone();
        Ok(gb
            .iter()
            .filter(|g| g.lead().is_some_and(|t| t.slot >= split))
            .map(|g| g.remap(&vring, |s| s.checked_sub(split)))
            .collect())
    }

    /// Keeps exactly the cocycles whose δ-expansion uses only β-generators
    /// of their own degree, i.e. lies in the free submodule spanned by those
    /// slots.
    pub fn beta_filter(&self, cocycles: &[GradedPoly<F>]) -> Vec<bool> {
        let fields = self.ring.fields();
        cocycles
            .iter()
            .map(|p| {
                let Ok(d) = p.ghost_degree(&self.ctx) else {
                    return false;
                };
                let k = (-d) as usize;
                p.terms().all(|(m, _)| {
                    let (_, gpart, _) = m.split(|v| fields.contains(&v));
                    let fs: Vec<(VarId, u32)> = gpart.factors().collect();
                    fs.len() == 1 && fs[0].1 == 1 && self.generator(fs[0].0).is_some_and(|g| g.beta && g.level == k)
                })
            })
            .collect()
    }

    fn fresh_name(&self, base: &str) -> String {
        let mut n = base.to_string();
        while self.ctx.lookup(&n).is_some() || self.ctx.param_index(&n).is_some() {
            n.push('_');
        }
        n
    }

    fn names_for(&self, level: usize, i: usize, single: bool) -> (String, String) {
        let (stem, ghost) = match level {
            2 => ("Cs".to_string(), "C".to_string()),
            3 => ("Es".to_string(), "E".to_string()),
            4 => ("Ks".to_string(), "K".to_string()),
            d => (format!("G{d}s_"), format!("G{d}_")),
        };
        if single && level <= 4 {
            (stem, ghost)
        } else {
            (format!("{stem}{i}"), format!("{ghost}{i}"))
        }
    }

    /// Adjoin one generator of degree −(k+1) per cocycle of degree −k.
    /// An empty list marks the resolution as terminated.
    pub fn adjoin_step(&mut self, cocycles: &[GradedPoly<F>]) -> Result<()> {
        if cocycles.is_empty() {
            self.status = Status::Terminated;
            return Ok(());
        }
        let k = self.depth;
        for (i, p) in cocycles.iter().enumerate() {
            let d = p.ghost_degree(&self.ctx)?;
            if d != -(k as i32) {
                return Err(Error::Precondition(format!("cocycle has degree {d}, expected -{k}")));
            }
            if !self.delta(p).is_zero() {
                return Err(Error::NotACocycle(format!("entry {i} has nonzero image")));
            }
        }
        let flags = self.beta_filter(cocycles);
        let level = k + 1;
        let existing = self.level_gens(level, false).len();
        let single = existing == 0 && cocycles.len() == 1;
        for (i, (p, beta)) in cocycles.iter().zip(flags).enumerate() {
            let (a, g) = self.names_for(level, existing + i + 1, single);
            let name = self.fresh_name(&a);
            let id = self.ctx.add_variable(&name, -(level as i32))?;
            self.push_gen(TateGenerator {
                id,
                level,
                image: p.clone(),
                beta,
                partner_name: g,
            });
        }
        self.depth = level;
        Ok(())
    }

    /// Iterate homology → β-filter → adjoin until nothing new appears or
    /// the cap is hit.
    pub fn build_resolution(s0: &GradedPoly<F>, ctx: &Context, cap: usize) -> Result<Self> {
        Self::build_with_names(s0, ctx, &BTreeMap::new(), cap)
    }

    pub fn build_with_names(
        s0: &GradedPoly<F>,
        ctx: &Context,
        names: &BTreeMap<VarId, String>,
        cap: usize,
    ) -> Result<Self> {
        let mut st = Self::init_with_names(s0, ctx, names)?.with_cap(cap);
        st.run()?;
        Ok(st)
    }

    pub fn run(&mut self) -> Result<()> {
        while self.status == Status::Running {
            let k = self.depth;
            let cyc = self.homology_generators(k)?;
            let flags = self.beta_filter(&cyc);
            let kept: Vec<GradedPoly<F>> = cyc.into_iter().zip(flags).filter(|(_, f)| *f).map(|(p, _)| p).collect();
            if kept.is_empty() {
                self.status = Status::Terminated;
            } else if k >= self.cap {
                self.status = Status::CapExhausted;
            } else {
                self.adjoin_step(&kept)?;
            }
        }
        Ok(())
    }

    /// Replace the image of an existing generator. The new image must have
    /// the right degree and be a cocycle for the current differential.
    pub fn set_image(&mut self, id: VarId, image: GradedPoly<F>) -> Result<()> {
        let &i = self
            .index
            .get(&id)
            .ok_or_else(|| Error::Precondition(format!("{} is not a generator", self.ctx.name(id))))?;
        let level = self.gens[i].level;
        if !image.is_zero() && image.ghost_degree(&self.ctx)? != 1 - level as i32 {
            return Err(Error::Inhomogeneous);
        }
        if !self.delta(&image).is_zero() {
            return Err(Error::NotACocycle(format!("new image of {}", self.ctx.name(id))));
        }
        self.gens[i].image = image;
        Ok(())
    }

    /// `δ(δ(g)) = 0` for every generator.
    pub fn delta_squared_vanishes(&self) -> bool {
        self.gens.iter().all(|g| self.delta(&g.image).is_zero())
    }

    /// Membership of a degree −k element in `δ(A^{−k−1})`.
    pub fn is_boundary(&self, p: &GradedPoly<F>, k: usize) -> Result<bool> {
        let cur = self.stratum(k, false);
        let upper = self.stratum(k + 1, false);
        let cols = self.delta_columns(&upper, &cur)?;
        let gb = groebner(&self.ring.ring, &cols);
        Ok(reduce(&self.ring.ring, &cur.vector(&self.ring, p)?, &gb).is_zero())
    }

    /// Whether `p` (degree −k) lies in the span of `span` plus the
    /// boundaries `δ(A^{−k−1})`.
    pub fn in_span_mod_boundaries(&self, k: usize, span: &[GradedPoly<F>], p: &GradedPoly<F>) -> Result<bool> {
        let cur = self.stratum(k, false);
        let upper = self.stratum(k + 1, false);
        let mut gens = self.delta_columns(&upper, &cur)?;
        for s in span {
            gens.push(cur.vector(&self.ring, s)?);
        }
        let gb = groebner(&self.ring.ring, &gens);
        Ok(reduce(&self.ring.ring, &cur.vector(&self.ring, p)?, &gb).is_zero())
    }

    /// Lifting data for `δ(x) = y` with `y` of degree −k, over the
    /// β-strata. The witness is the one the tracking normal form produces.
    pub fn lifting_problem(&self, k: usize) -> Result<LiftingProblem<F>> {
        let upper = self.stratum(k + 1, true);
        let lower = self.stratum(k, true);
        let cols = self.delta_columns(&upper, &lower)?;
        let basis = ModuleBasis::with_witnesses(&self.ring.ring, lower.len(), &cols);
        Ok(LiftingProblem { upper, lower, basis })
    }
}

/// Cached data for solving `δ(x) = y` in one degree.
#[derive(Clone, Debug)]
pub struct LiftingProblem<F: Field> {
    pub upper: Stratum,
    pub lower: Stratum,
    basis: ModuleBasis<F>,
}

impl<F: Field> LiftingProblem<F> {
    pub fn lift(
        &self,
        ring: &BosonicRing,
        y: &GradedPoly<F>,
    ) -> Result<std::result::Result<GradedPoly<F>, GradedPoly<F>>> {
        if self.lower.is_empty() {
            return Ok(if y.is_zero() {
                Ok(GradedPoly::zero())
            } else {
                Err(y.clone())
            });
        }
        let v = self.lower.vector(ring, y)?;
        let (rem, w) = self.basis.normal_form(&v);
        if !rem.is_zero() {
            return Ok(Err(self.lower.poly(ring, &rem)));
        }
        let w = w.expect("tracking basis");
        let mut x = GradedPoly::zero();
        for (slot, coef) in w.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            let c = ring.to_poly(coef);
            x = &x + &(&c * &GradedPoly::term(self.upper.basis[slot].clone(), F::one()));
        }
        Ok(Ok(x))
    }

    /// Kernel of δ on the upper stratum (syzygies of the columns).
    pub fn kernel(&self, ring: &BosonicRing) -> Vec<GradedPoly<F>> {
        self.basis
            .syzygy_basis()
            .iter()
            .map(|s| {
                let mut x = GradedPoly::zero();
                for t in s.terms() {
                    let m = ring.monomial_of(&t.exp);
                    let (mm, neg) = m.mul(&self.upper.basis[t.slot as usize]).expect("bosonic prefix");
                    x.add_term(mm, if neg { t.coef.neg_ref() } else { t.coef.clone() });
                }
                x
            })
            .collect()
    }
}

/// The type-β extended configuration space: fields, anti-fields, β
/// anti-ghosts and their mirrored ghosts.
#[derive(Clone, Debug)]
pub struct ExtendedSpace {
    pub ctx: Context,
    pub fields: Vec<VarId>,
    pub antifields: Vec<VarId>,
    pub antighosts: Vec<VarId>,
    pub ghosts: Vec<VarId>,
    /// Highest ghost degree minus one; `None` without gauge directions.
    pub level: Option<i32>,
}

impl ExtendedSpace {
    pub fn build<F: Field>(state: &TateState<F>) -> Result<Self> {
        let mut ctx = state.ctx().clone();
        let fields = ctx.field_ids();
        let antifields: Vec<VarId> = state.level_gens(1, false).iter().map(|g| g.id).collect();
        let mut antighosts = Vec::new();
        let mut ghosts = Vec::new();
        for g in state.generators().iter().filter(|g| g.level >= 2 && g.beta) {
            let id = match ctx.var(g.id).partner {
                Some(p) => p,
                None => {
                    let mut name = g.partner_name.clone();
                    while ctx.lookup(&name).is_some() || ctx.param_index(&name).is_some() {
                        name.push('_');
                    }
                    let id = ctx.add_variable(&name, g.level as i32 - 1)?;
                    ctx.pair(id, g.id)?;
                    id
                }
            };
            antighosts.push(g.id);
            ghosts.push(id);
        }
        let level = ghosts.iter().map(|&g| ctx.var(g).ghost_degree).max().map(|d| d - 1);
        Ok(ExtendedSpace {
            ctx,
            fields,
            antifields,
            antighosts,
            ghosts,
            level,
        })
    }

    /// `(degree, size)` for every nonempty stratum, ascending.
    pub fn strata(&self) -> Vec<(i32, usize)> {
        let mut m: BTreeMap<i32, usize> = BTreeMap::new();
        for &v in self
            .fields
            .iter()
            .chain(&self.antifields)
            .chain(&self.antighosts)
            .chain(&self.ghosts)
        {
            *m.entry(self.ctx.var(v).ghost_degree).or_default() += 1;
        }
        m.into_iter().collect()
    }

    pub fn ghost_of(&self, antighost: VarId) -> Option<VarId> {
        self.antighosts
            .iter()
            .position(|&a| a == antighost)
            .map(|i| self.ghosts[i])
    }

    /// Every variable of the space, by role.
    pub fn roster(&self) -> Vec<(VarId, Role)> {
        let mut out: Vec<(VarId, Role)> = self
            .fields
            .iter()
            .chain(&self.antifields)
            .chain(&self.antighosts)
            .chain(&self.ghosts)
            .map(|&v| (v, self.ctx.var(v).role))
            .collect();
        out.sort_by_key(|&(v, _)| v);
        out
    }
}

pub fn build_extended_space<F: Field>(state: &TateState<F>) -> Result<ExtendedSpace> {
    ExtendedSpace::build(state)
}

/// A lift of `y` through δ restricted to β-strata of `ring`.
pub type LiftResult<F> = std::result::Result<GradedPoly<F>, GradedPoly<F>>;

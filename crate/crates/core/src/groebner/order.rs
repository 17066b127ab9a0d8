use std::cmp::Ordering;

use smallvec::SmallVec;

/// Dense exponent vector over the ring variables.
pub type Exp = SmallVec<[u16; 8]>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TermOrder {
    DegRevLex,
    /// The last `n` variables are eliminated: their total degree is compared
    /// first, ties broken by degrevlex on everything.
    Eliminate(usize),
}

/// How slots and monomials interleave in a free module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModuleOrderKind {
    /// Position over term: the slot decides first, lower slot index is larger.
    Pot,
    /// Term over position.
    Top,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring {
    pub nvars: usize,
    pub term: TermOrder,
    pub kind: ModuleOrderKind,
    /// Block boundaries: slots at or above a boundary sit in a block below
    /// every slot under it, whatever the monomials.
    pub splits: Vec<u32>,
}

impl Ring {
    pub fn new(nvars: usize) -> Self {
        Ring {
            nvars,
            term: TermOrder::DegRevLex,
            kind: ModuleOrderKind::Pot,
            splits: Vec::new(),
        }
    }

    pub fn with_kind(mut self, kind: ModuleOrderKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn with_term(mut self, term: TermOrder) -> Self {
        self.term = term;
        self
    }

    pub fn with_split(mut self, split: u32) -> Self {
        self.splits.push(split);
        self.splits.sort_unstable();
        self.splits.dedup();
        self
    }

    pub fn without_splits(&self) -> Self {
        Ring {
            splits: Vec::new(),
            ..self.clone()
        }
    }

    fn block(&self, slot: u32) -> usize {
        self.splits.iter().filter(|&&b| slot >= b).count()
    }

    pub fn cmp_exp(&self, a: &[u16], b: &[u16]) -> Ordering {
        match self.term {
            TermOrder::DegRevLex => degrevlex(a, b),
            TermOrder::Eliminate(n) => {
                let k = self.nvars - n;
                let ea: u32 = a[k..].iter().map(|&x| x as u32).sum();
                let eb: u32 = b[k..].iter().map(|&x| x as u32).sum();
                ea.cmp(&eb).then_with(|| degrevlex(a, b))
            }
        }
    }

    pub fn cmp_term(&self, sa: u32, a: &[u16], sb: u32, b: &[u16]) -> Ordering {
        if !self.splits.is_empty() {
            let (ba, bb) = (self.block(sa), self.block(sb));
            if ba != bb {
                return bb.cmp(&ba);
            }
        }
        let slot = sb.cmp(&sa);
        match self.kind {
            ModuleOrderKind::Pot => slot.then_with(|| self.cmp_exp(a, b)),
            ModuleOrderKind::Top => self.cmp_exp(a, b).then(slot),
        }
    }

    pub fn one(&self) -> Exp {
        SmallVec::from_elem(0, self.nvars)
    }
}

pub fn degrevlex(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&x| x as u32).sum();
    let db: u32 = b.iter().map(|&x| x as u32).sum();
    if da != db {
        return da.cmp(&db);
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

pub fn exp_divides(d: &[u16], e: &[u16]) -> bool {
    d.iter().zip(e).all(|(x, y)| x <= y)
}

pub fn exp_lcm(a: &[u16], b: &[u16]) -> Exp {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub fn exp_add(a: &[u16], b: &[u16]) -> Exp {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn exp_sub(a: &[u16], b: &[u16]) -> Exp {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn exp_coprime(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

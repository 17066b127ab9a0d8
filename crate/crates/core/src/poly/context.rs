use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};

pub type VarId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Role {
    Field,
    Ghost,
    AntiField,
    AntiGhost,
}

impl Role {
    /// Role implied by a ghost degree: 0 is a field, −1 an anti-field.
    pub fn from_degree(deg: i32) -> Role {
        match deg {
            0 => Role::Field,
            -1 => Role::AntiField,
            d if d > 0 => Role::Ghost,
            _ => Role::AntiGhost,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedVariable {
    pub name: String,
    pub ghost_degree: i32,
    pub parity: u8,
    pub role: Role,
    pub partner: Option<VarId>,
}

impl GradedVariable {
    pub fn is_odd(&self) -> bool {
        self.parity == 1
    }

    /// Non-positive degree factors carry the "negative" part of a term.
    pub fn is_positive(&self) -> bool {
        self.ghost_degree > 0
    }
}

/// Declared variables and parameter symbols.
///
/// Declaration order is the global variable order; it fixes Koszul signs,
/// monomial order and printing. Contexts only ever grow, so a polynomial
/// built in one context stays valid in every extension of it.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Context {
    vars: Vec<GradedVariable>,
    by_name: HashMap<String, VarId>,
    params: Vec<String>,
}

impl Context {
    pub fn new() -> Self {
        Context::default()
    }

    /// The four matrix coordinates M1..M4 of the U(2) model.
    pub fn u2_fields() -> Self {
        let mut ctx = Context::new();
        for i in 1..=4 {
            ctx.add_variable(&format!("M{i}"), 0).expect("fresh names");
        }
        ctx
    }

    pub fn add_variable(&mut self, name: &str, ghost_degree: i32) -> Result<VarId> {
        let parity = ghost_degree.rem_euclid(2) as u8;
        self.add_variable_with_parity(name, ghost_degree, parity)
    }

    pub fn add_variable_with_parity(&mut self, name: &str, ghost_degree: i32, parity: u8) -> Result<VarId> {
        if !is_identifier(name) {
            return Err(Error::Context(format!("invalid variable name {name:?}")));
        }
        if self.by_name.contains_key(name) || self.params.iter().any(|p| p == name) {
            return Err(Error::Context(format!("duplicate symbol {name}")));
        }
        if parity as i32 != ghost_degree.rem_euclid(2) {
            return Err(Error::Context(format!(
                "parity {parity} of {name} does not match ghost degree {ghost_degree}"
            )));
        }
        let id = self.vars.len() as VarId;
        self.vars.push(GradedVariable {
            name: name.to_string(),
            ghost_degree,
            parity,
            role: Role::from_degree(ghost_degree),
            partner: None,
        });
        self.by_name.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn add_parameter(&mut self, name: &str) -> Result<usize> {
        if !is_identifier(name) {
            return Err(Error::Context(format!("invalid parameter name {name:?}")));
        }
        if self.by_name.contains_key(name) || self.params.iter().any(|p| p == name) {
            return Err(Error::Context(format!("duplicate symbol {name}")));
        }
        self.params.push(name.to_string());
        Ok(self.params.len() - 1)
    }

    /// Pair two variables under the bracket; checks the degree/parity rule.
    pub fn pair(&mut self, a: VarId, b: VarId) -> Result<()> {
        let (va, vb) = (self.var(a).clone(), self.var(b).clone());
        if va.ghost_degree != -vb.ghost_degree - 1 || va.parity == vb.parity {
            return Err(Error::Context(format!(
                "{} (degree {}) cannot pair with {} (degree {})",
                va.name, va.ghost_degree, vb.name, vb.ghost_degree
            )));
        }
        if va.partner.is_some_and(|p| p != b) || vb.partner.is_some_and(|p| p != a) {
            return Err(Error::Context(format!("{} or {} already paired", va.name, vb.name)));
        }
        self.vars[a as usize].partner = Some(b);
        self.vars[b as usize].partner = Some(a);
        Ok(())
    }

    pub fn var(&self, id: VarId) -> &GradedVariable {
        &self.vars[id as usize]
    }

    pub fn vars(&self) -> &[GradedVariable] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn lookup(&self, name: &str) -> Option<VarId> {
        self.by_name.get(name).copied()
    }

    pub fn id(&self, name: &str) -> Result<VarId> {
        self.lookup(name)
            .ok_or_else(|| Error::Context(format!("unknown variable {name}")))
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn param_index(&self, name: &str) -> Option<usize> {
        self.params.iter().position(|p| p == name)
    }

    pub fn name(&self, id: VarId) -> &str {
        &self.vars[id as usize].name
    }

    /// Degree-0 bosonic variables, in declaration order: the Groebner ring.
    pub fn field_ids(&self) -> Vec<VarId> {
        self.ids_where(|v| v.role == Role::Field)
    }

    pub fn ids_where(&self, f: impl Fn(&GradedVariable) -> bool) -> Vec<VarId> {
        (0..self.vars.len() as VarId)
            .filter(|&i| f(&self.vars[i as usize]))
            .collect()
    }

    /// Pairs (φ, φ*) with φ the member of non-negative degree.
    pub fn pairs(&self) -> Vec<(VarId, VarId)> {
        self.vars
            .iter()
            .enumerate()
            .filter(|(_, v)| v.ghost_degree >= 0)
            .filter_map(|(i, v)| v.partner.map(|p| (i as VarId, p)))
            .collect()
    }
}

pub fn is_identifier(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic()) && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

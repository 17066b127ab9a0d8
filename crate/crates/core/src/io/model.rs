use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::parse::parse_poly_with_warnings;
use crate::error::{Error, Result};
use crate::poly::{Context, VarId};
use crate::Poly;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VarDecl {
    pub name: String,
    pub ghost_degree: i32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parity: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partner: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelOptions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_q: Option<usize>,
    /// Free polynomial for the U(2) parameter injection.
    #[serde(default, rename = "T", skip_serializing_if = "Option::is_none")]
    pub t: Option<String>,
    /// Resolution generators to leave out: a deliberately broken roster.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub omit: Vec<String>,
}

/// The JSON model document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub variables: Vec<VarDecl>,
    #[serde(default)]
    pub parameters: Vec<String>,
    pub action: String,
    #[serde(default)]
    pub options: ModelOptions,
}

/// A loaded model: declared context plus the parsed action.
///
/// A field may name a partner that is not declared; the name is then used
/// for the anti-field the resolution creates.
#[derive(Clone, Debug)]
pub struct Model {
    pub file: ModelFile,
    pub ctx: Context,
    pub action: Poly,
    pub antifield_names: BTreeMap<VarId, String>,
    pub warnings: Vec<String>,
}

impl Model {
    pub fn from_json(text: &str) -> Result<Model> {
        let file: ModelFile = serde_json::from_str(text).map_err(|e| Error::Model(e.to_string()))?;
        Model::from_file(file)
    }

    pub fn from_file(file: ModelFile) -> Result<Model> {
        let mut ctx = Context::new();
        for p in &file.parameters {
            ctx.add_parameter(p)?;
        }
        for v in &file.variables {
            let parity = v.parity.unwrap_or(v.ghost_degree.rem_euclid(2) as u8);
            ctx.add_variable_with_parity(&v.name, v.ghost_degree, parity)?;
        }
        let mut antifield_names = BTreeMap::new();
        for v in &file.variables {
            let Some(partner) = &v.partner else { continue };
            let id = ctx.id(&v.name)?;
            match ctx.lookup(partner) {
                Some(pid) => {
                    if ctx.var(id).partner != Some(pid) {
                        ctx.pair(id, pid)?;
                    }
                }
                None if v.ghost_degree == 0 => {
                    antifield_names.insert(id, partner.clone());
                }
                None => return Err(Error::Model(format!("partner {partner} of {} is not declared", v.name))),
            }
        }
        let (action, warnings) = parse_poly_with_warnings(&file.action, &ctx)?;
        Ok(Model {
            file,
            ctx,
            action,
            antifield_names,
            warnings,
        })
    }

    pub fn load(path: &std::path::Path) -> Result<Model> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Model(format!("{}: {e}", path.display())))?;
        Model::from_json(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CASE2: &str = r#"{
        "variables": [
            {"name": "M1", "ghost_degree": 0, "partner": "Ms1"},
            {"name": "M2", "ghost_degree": 0},
            {"name": "M3", "ghost_degree": 0},
            {"name": "M4", "ghost_degree": 0}
        ],
        "parameters": ["a1"],
        "action": "M1^2 + M2^2 + M3^2 + M4^2",
        "options": {"cap": 5}
    }"#;

    #[test]
    fn loads_model() {
        let m = Model::from_json(CASE2).unwrap();
        assert_eq!(m.ctx.len(), 4);
        assert_eq!(m.action.len(), 4);
        assert_eq!(m.file.options.cap, Some(5));
        assert_eq!(m.antifield_names.get(&0).map(String::as_str), Some("Ms1"));
    }

    #[test]
    fn rejects_unknown_fields() {
        let bad = CASE2.replace("\"parameters\"", "\"params\"");
        assert!(matches!(Model::from_json(&bad), Err(Error::Model(_))));
        let bad = CASE2.replace("\"cap\": 5", "\"cap\": 5, \"speed\": 1");
        assert!(Model::from_json(&bad).is_err());
    }

    #[test]
    fn rejects_bad_pairing() {
        let text = r#"{"variables": [
            {"name": "C1", "ghost_degree": 1, "partner": "Cs1"},
            {"name": "Cs1", "ghost_degree": -1}
        ], "action": "0"}"#;
        assert!(Model::from_json(text).is_err());
    }
}

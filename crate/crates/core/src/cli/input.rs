use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::dynamic::AnyIdeal;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::invariants::Window;

/// How many backends a run uses.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    /// Only the document's field.
    #[default]
    Single,
    /// The document's field plus the rationals; dimension disagreements are
    /// reported as warnings.
    Both,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<[u32; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g_tilde: Option<i64>,
    #[serde(default)]
    pub backend: Backend,
}

/// `{"field": {...}, "variables": [...], "generators": [...], "options": {...}}`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    #[serde(default)]
    pub field: FieldSpec,
    pub variables: Vec<String>,
    pub generators: Vec<String>,
    #[serde(default)]
    pub options: Options,
    /// Free-form provenance notes; not used by any computation.
    #[serde(default, skip_serializing)]
    pub comment: Option<serde_json::Value>,
}

impl InputDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: InputDocument =
            serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))?;
        doc.field.validate()?;
        Ok(doc)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn ideal(&self) -> Result<AnyIdeal> {
        self.ideal_over(self.field)
    }

    pub fn ideal_over(&self, field: FieldSpec) -> Result<AnyIdeal> {
        AnyIdeal::parse(field, &self.variables, &self.generators)
    }

    /// The document window, or the default one for `ideal`.
    pub fn window(&self, ideal: &AnyIdeal) -> Result<Window> {
        match self.options.window {
            Some([lo, hi]) => Window::new(lo, hi),
            None => Ok(ideal.default_window()),
        }
    }
}

//! Indexed rule families, instantiated on demand.

use super::{EngineError, Rule, RuleKind};
use crate::diagram::Signature;
use crate::format::expr::ExprParser;
use std::sync::Arc;

/// A family of rules indexed by a natural number.
pub trait SchemaSource: Send + Sync {
    fn name(&self) -> &str;
    /// All instances at index `n`; an empty result means the family has
    /// no rule there.
    fn instantiate(&self, n: usize) -> Result<Vec<Rule>, EngineError>;
    /// The textual form used by the polygraph file format.
    fn serialize(&self) -> String;
}

/// A schema given by textual source/target templates over the index `n`
/// (as an exponent of an iterated vertical power).
pub struct TemplateSchema {
    pub name: String,
    pub kind: RuleKind,
    pub source_tpl: String,
    pub target_tpl: String,
    pub sig: Arc<Signature>,
}

impl SchemaSource for TemplateSchema {
    fn name(&self) -> &str {
        &self.name
    }

    fn instantiate(&self, n: usize) -> Result<Vec<Rule>, EngineError> {
        let mut sp = ExprParser::new(&self.sig, &self.source_tpl, 1)
            .map_err(|e| EngineError::Other(e.to_string()))?;
        sp.index_value = Some(n);
        let source = sp.parse_diagram().map_err(|e| EngineError::Other(e.to_string()))?;
        let mut tp = ExprParser::new(&self.sig, &self.target_tpl, 1)
            .map_err(|e| EngineError::Other(e.to_string()))?;
        tp.index_value = Some(n);
        let target = tp.parse_lincomb().map_err(|e| EngineError::Other(e.to_string()))?;
        if source.is_identity() {
            // Some indices may degenerate to identities; skip those.
            return Ok(Vec::new());
        }
        Ok(vec![Rule::new(format!("{}[{}]", self.name, n), self.kind, source, target)?])
    }

    fn serialize(&self) -> String {
        let kind = match self.kind {
            RuleKind::Modulo => "E",
            RuleKind::Primary => "R",
        };
        format!("schema {} in {} : {} => {}", self.name, kind, self.source_tpl, self.target_tpl)
    }
}

/// Wraps a closure-producing family (used for derived built-in schemas).
pub struct RuleSchema;

//! Rules, polygraphs modulo and rewriting.
//!
//! A polygraph modulo splits its 3-cells into a convergent structural
//! part `E` (rewriting happens modulo these) and a primary part `R`.
//! Steps can be enumerated in three modes: plain `R`, `ER` (a bounded
//! signed `E`-zigzag before the primary rule) and `ERE` (additionally
//! `E`-normalizing the result).

mod enorm;
mod reduce;
mod schema;
mod steps;

pub use enorm::{closed_components, e_normal_form, e_normal_form_monomial, relocate_closed_components};
pub use reduce::{
    qnf_reduce, quasi_reduced, reduce, QuasiGuard, ReduceResult, ReduceStatus, Strategy, WeightFn,
};
pub use schema::{RuleSchema, SchemaSource, TemplateSchema};
pub use steps::{apply_inverse, apply_step, enumerate_steps, EStep, RewriteStep};

use crate::diagram::{Context, Diagram, DiagramError, Signature};
use crate::lincomb::{LinComb, LinCombError};
use std::sync::{Arc, RwLock};
use thiserror::Error;

pub type EDepth = usize;

pub const DEFAULT_E_DEPTH: EDepth = 4;
pub const DEFAULT_STEP_BUDGET: usize = 20_000;

/// Reads the step-budget override from the environment.
pub fn default_budget() -> usize {
    std::env::var("PIVOTRW_BUDGET")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_STEP_BUDGET)
}

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("rule {name}: source and target boundaries differ")]
    RuleBoundary { name: String },
    #[error("rule {name}: source must be a non-identity monomial")]
    RuleSourceIdentity { name: String },
    #[error("duplicate rule name {0}")]
    DuplicateRule(String),
    #[error("unknown rule {0}")]
    UnknownRule(String),
    #[error("stale step: redex no longer in the support")]
    StaleStep,
    #[error("step budget {budget} exceeded during {what}")]
    BudgetExceeded { budget: usize, what: String },
    #[error("schema {name} has no instance at index {index}")]
    SchemaUnavailable { name: String, index: usize },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    LinComb(#[from] LinCombError),
    #[error("{0}")]
    Other(String),
}

/// Orientation tag: a rule belongs to the structural part `E` or to the
/// primary part `R` of the splitting.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RuleKind {
    Modulo,
    Primary,
}

/// A left-monomial rewrite rule between 2-cells.
#[derive(Clone, Debug)]
pub struct Rule {
    pub name: String,
    pub kind: RuleKind,
    pub source: Diagram,
    pub target: LinComb,
}

impl Rule {
    pub fn new(
        name: impl Into<String>,
        kind: RuleKind,
        source: Diagram,
        target: LinComb,
    ) -> Result<Self, EngineError> {
        let name = name.into();
        if source.source() != target.source() || source.target() != target.target() {
            return Err(EngineError::RuleBoundary { name });
        }
        if source.is_identity() {
            return Err(EngineError::RuleSourceIdentity { name });
        }
        Ok(Rule { name, kind, source: source.canonicalize(), target })
    }

    /// Reverses the rule; only meaningful when the target is a monomial
    /// with coefficient one (true for all structural rules used here).
    pub fn reversed(&self) -> Option<Rule> {
        let mut terms = self.target.terms();
        let (d, c) = terms.next()?;
        if terms.next().is_some() || c != &crate::lincomb::scalar_int(1) || d.is_identity() {
            return None;
        }
        Some(Rule {
            name: format!("{}^-", self.name),
            kind: self.kind,
            source: d.clone(),
            target: LinComb::monomial(self.source.clone()),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RewriteMode {
    /// Plain rewriting with the primary rules.
    R,
    /// A signed structural zigzag may precede the primary rule.
    ER,
    /// Like `ER`, and the result is structurally normalized.
    ERE,
}

impl RewriteMode {
    pub fn parse(s: &str) -> Option<RewriteMode> {
        match s.to_ascii_lowercase().as_str() {
            "r" => Some(RewriteMode::R),
            "er" => Some(RewriteMode::ER),
            "ere" => Some(RewriteMode::ERE),
            _ => None,
        }
    }
}

impl std::fmt::Display for RewriteMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RewriteMode::R => write!(f, "r"),
            RewriteMode::ER => write!(f, "er"),
            RewriteMode::ERE => write!(f, "ere"),
        }
    }
}

/// A presentation by a splitting: structural rules `E` (declared
/// convergent), primary rules `R`, and indexed rule schemas
/// instantiated on demand.
pub struct PolygraphModulo {
    pub sig: Arc<Signature>,
    rules: Vec<Rule>,
    schemas: Vec<Arc<dyn SchemaSource>>,
    pub e_depth: EDepth,
    /// Default index range for schema instantiation during enumeration.
    pub schema_bound: usize,
    schema_cache: RwLock<std::collections::BTreeMap<(usize, usize), Vec<Rule>>>,
}

impl Clone for PolygraphModulo {
    fn clone(&self) -> Self {
        PolygraphModulo {
            sig: self.sig.clone(),
            rules: self.rules.clone(),
            schemas: self.schemas.clone(),
            e_depth: self.e_depth,
            schema_bound: self.schema_bound,
            schema_cache: RwLock::new(self.schema_cache.read().unwrap().clone()),
        }
    }
}

impl std::fmt::Debug for PolygraphModulo {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PolygraphModulo")
            .field("rules", &self.rules.len())
            .field("schemas", &self.schemas.len())
            .field("e_depth", &self.e_depth)
            .finish()
    }
}

impl PolygraphModulo {
    pub fn new(sig: Arc<Signature>) -> Self {
        PolygraphModulo {
            sig,
            rules: Vec::new(),
            schemas: Vec::new(),
            e_depth: DEFAULT_E_DEPTH,
            schema_bound: 2,
            schema_cache: RwLock::new(Default::default()),
        }
    }

    pub fn add_rule(&mut self, rule: Rule) -> Result<(), EngineError> {
        if self.rules.iter().any(|r| r.name == rule.name) {
            return Err(EngineError::DuplicateRule(rule.name));
        }
        self.rules.push(rule);
        Ok(())
    }

    pub fn add_schema(&mut self, s: Arc<dyn SchemaSource>) {
        self.schemas.push(s);
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn schemas(&self) -> &[Arc<dyn SchemaSource>] {
        &self.schemas
    }

    pub fn modulo_rules(&self) -> impl Iterator<Item = &Rule> {
        self.rules.iter().filter(|r| r.kind == RuleKind::Modulo)
    }

    pub fn primary_rules(&self) -> impl Iterator<Item = &Rule> {
        self.rules.iter().filter(|r| r.kind == RuleKind::Primary)
    }

    pub fn rule(&self, name: &str) -> Option<&Rule> {
        self.rules.iter().find(|r| r.name == name)
    }

    /// Schema instances at one index, going through the write-once cache.
    pub fn schema_instances(&self, schema_idx: usize, n: usize) -> Vec<Rule> {
        if let Some(hit) = self.schema_cache.read().unwrap().get(&(schema_idx, n)) {
            return hit.clone();
        }
        let rules = self.schemas[schema_idx].instantiate(n).unwrap_or_default();
        let mut cache = self.schema_cache.write().unwrap();
        cache.entry((schema_idx, n)).or_insert_with(|| rules.clone());
        rules
    }

    /// The primary rules followed by every schema instance with index up
    /// to the polygraph's schema bound, in declaration order.
    pub fn effective_primary(&self) -> Vec<Rule> {
        let mut out: Vec<Rule> = self.primary_rules().cloned().collect();
        for (i, _) in self.schemas.iter().enumerate() {
            for n in 0..=self.schema_bound {
                out.extend(self.schema_instances(i, n));
            }
        }
        out
    }

    /// Checks that a weight function is constant across each structural
    /// rule, as required for quasi-normal-form reduction.
    pub fn weight_respects_modulo(&self, tau: &WeightFn) -> bool {
        self.modulo_rules().all(|r| {
            let s = tau.of_diagram(&r.source);
            r.target.support().all(|m| tau.of_diagram(m) == s)
        })
    }
}

/// One positive rewrite: `(mode, redex monomial, coefficient, structural
/// zigzag, context, rule)`.
pub struct StepData {
    pub mode: RewriteMode,
    pub redex: Diagram,
    pub context: Context,
}

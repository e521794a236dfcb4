//! Rewriting engine for linear (2,2)-categories presented by linear
//! (3,2)-polygraphs, with support for rewriting modulo a convergent
//! subpolygraph of structural relations.
//!
//! The crate is organised around a small data model:
//!
//! - [`diagram`] — 0/1/2-cells of a free 2-category: signatures, words,
//!   diagrams in interchange-canonical slice form, contexts and
//!   subdiagram matching.
//! - [`lincomb`] — exact rational scalars and formal linear combinations
//!   of canonical diagrams.
//! - [`engine`] — rules, polygraphs modulo, rewriting-step enumeration in
//!   the plain / modulo / normalising modes, structural normal forms,
//!   reduction strategies and quasi-normal-form reduction.
//! - [`analysis`] — critical-branching enumeration, confluence-modulo
//!   search, multiset orderings, step labellings, decreasingness checks
//!   and derivation-based termination certificates.
//! - [`basis`] — hom-basis extraction and an independent linear-algebra
//!   rank oracle over exact rationals.
//! - [`aob`] — built-in polygraphs: the generic structural polygraph of
//!   cap/cup isotopies and the affine oriented Brauer presentation.
//! - [`format`] — textual polygraph / diagram / report formats.

pub mod aob;
pub mod analysis;
pub mod basis;
pub mod diagram;
pub mod engine;
pub mod format;
pub mod lincomb;
pub mod sample;

pub use diagram::{Context, Diagram, Signature, SignatureBuilder, Word};
pub use engine::{
    EDepth, PolygraphModulo, ReduceResult, ReduceStatus, RewriteMode, RewriteStep, Rule, RuleKind,
};
pub use lincomb::{LinComb, Scalar};

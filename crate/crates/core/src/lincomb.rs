//! Exact scalars and formal linear combinations of canonical diagrams.

use crate::diagram::{Diagram, DiagramError, Signature, Word};
use num::{BigRational, Zero};
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

/// Exact rational coefficient. The field is fixed to the rationals:
/// confluence checks require exact equality.
pub type Scalar = BigRational;

pub fn scalar_int(n: i64) -> Scalar {
    BigRational::from_integer(n.into())
}

pub fn scalar_ratio(n: i64, d: i64) -> Scalar {
    BigRational::new(n.into(), d.into())
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinCombError {
    #[error("boundary mismatch: ({0}, {1}) vs ({2}, {3})")]
    BoundaryMismatch(String, String, String, String),
}

/// A finite formal linear combination of canonical diagrams sharing a
/// boundary; the empty combination is the zero 2-cell. Terms iterate in
/// the fixed total order on canonical diagrams.
#[derive(Clone)]
pub struct LinComb {
    src: Word,
    tgt: Word,
    sig: Arc<Signature>,
    terms: BTreeMap<Diagram, Scalar>,
}

impl LinComb {
    pub fn zero(src: Word, tgt: Word, sig: &Arc<Signature>) -> Self {
        LinComb { src, tgt, sig: sig.clone(), terms: BTreeMap::new() }
    }

    pub fn monomial(d: Diagram) -> Self {
        Self::with_coeff(d, scalar_int(1))
    }

    pub fn with_coeff(d: Diagram, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        let (src, tgt, sig) = (d.source().clone(), d.target().clone(), d.signature().clone());
        if !c.is_zero() {
            terms.insert(d, c);
        }
        LinComb { src, tgt, sig, terms }
    }

    pub fn source(&self) -> &Word {
        &self.src
    }

    pub fn target(&self) -> &Word {
        &self.tgt
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Diagram, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, d: &Diagram) -> Scalar {
        self.terms.get(d).cloned().unwrap_or_else(Scalar::zero)
    }

    /// The set of monomials with nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = &Diagram> {
        self.terms.keys()
    }

    /// Adds `c · d`, dropping the term if it cancels.
    pub fn add_term(&mut self, d: Diagram, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(d) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &LinComb) -> Result<LinComb, LinCombError> {
        if self.src != other.src || self.tgt != other.tgt {
            return Err(LinCombError::BoundaryMismatch(
                self.src.display(&self.sig).to_string(),
                self.tgt.display(&self.sig).to_string(),
                other.src.display(&other.sig).to_string(),
                other.tgt.display(&other.sig).to_string(),
            ));
        }
        let mut out = self.clone();
        for (d, c) in other.terms() {
            out.add_term(d.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &LinComb) -> Result<LinComb, LinCombError> {
        self.add(&other.scale(&scalar_int(-1)))
    }

    pub fn scale(&self, k: &Scalar) -> LinComb {
        if k.is_zero() {
            return LinComb::zero(self.src.clone(), self.tgt.clone(), &self.sig);
        }
        let terms = self.terms.iter().map(|(d, c)| (d.clone(), c * k)).collect();
        LinComb { src: self.src.clone(), tgt: self.tgt.clone(), sig: self.sig.clone(), terms }
    }

    /// 1-composition extended bilinearly.
    pub fn compose1(&self, other: &LinComb) -> Result<LinComb, DiagramError> {
        let mut out = LinComb::zero(self.src.clone(), other.tgt.clone(), &self.sig);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                out.add_term(a.compose1(b)?, ca * cb);
            }
        }
        Ok(out)
    }

    /// 0-composition extended bilinearly.
    pub fn compose0(&self, other: &LinComb) -> Result<LinComb, DiagramError> {
        let src = self.src.concat(&self.sig, &other.src)?;
        let tgt = self.tgt.concat(&self.sig, &other.tgt)?;
        let mut out = LinComb::zero(src, tgt, &self.sig);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                out.add_term(a.compose0(b)?, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn display(&self) -> String {
        crate::format::expr::lincomb_to_expr(self)
    }
}

impl std::fmt::Debug for LinComb {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LinComb[{}]", self.display())
    }
}

impl PartialEq for LinComb {
    fn eq(&self, other: &Self) -> bool {
        self.src == other.src && self.tgt == other.tgt && self.terms == other.terms
    }
}
impl Eq for LinComb {}

impl std::hash::Hash for LinComb {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.src.hash(state);
        self.tgt.hash(state);
        for (d, c) in &self.terms {
            d.hash(state);
            c.numer().hash(state);
            c.denom().hash(state);
        }
    }
}

impl PartialOrd for LinComb {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LinComb {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let a: Vec<_> = self.terms.iter().collect();
        let b: Vec<_> = other.terms.iter().collect();
        a.cmp(&b).then_with(|| self.src.cmp(&other.src)).then_with(|| self.tgt.cmp(&other.tgt))
    }
}

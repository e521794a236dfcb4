//! Signatures: named generating 0-, 1- and 2-cells.

use super::{DiagramError, Word};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ZeroId(pub u32);
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct OneId(pub u32);
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GenId(pub u32);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SignatureError {
    #[error("duplicate name: {0}")]
    DuplicateName(String),
    #[error("unknown zero-cell: {0}")]
    UnknownZero(String),
    #[error("unknown 1-generator: {0}")]
    UnknownOne(String),
    #[error("unknown 2-generator: {0}")]
    UnknownTwo(String),
    #[error("invalid boundary for 2-generator {name}: {source}")]
    InvalidBoundary { name: String, source: DiagramError },
}

#[derive(Clone, Debug)]
struct OneGen {
    name: String,
    src: ZeroId,
    tgt: ZeroId,
}

#[derive(Clone, Debug)]
struct TwoGen {
    name: String,
    src: Word,
    tgt: Word,
}

/// The generating cells of a free 2-category.
#[derive(Clone, Debug, Default)]
pub struct Signature {
    zeros: Vec<String>,
    ones: Vec<OneGen>,
    twos: Vec<TwoGen>,
    zero_index: BTreeMap<String, ZeroId>,
    one_index: BTreeMap<String, OneId>,
    two_index: BTreeMap<String, GenId>,
}

impl Signature {
    pub fn zero_name(&self, z: ZeroId) -> &str {
        &self.zeros[z.0 as usize]
    }
    pub fn one_name(&self, o: OneId) -> &str {
        &self.ones[o.0 as usize].name
    }
    pub fn two_name(&self, g: GenId) -> &str {
        &self.twos[g.0 as usize].name
    }
    pub fn one_boundary(&self, o: OneId) -> (ZeroId, ZeroId) {
        let g = &self.ones[o.0 as usize];
        (g.src, g.tgt)
    }
    pub fn two_boundary(&self, g: GenId) -> (&Word, &Word) {
        let g = &self.twos[g.0 as usize];
        (&g.src, &g.tgt)
    }
    pub fn zero(&self, name: &str) -> Option<ZeroId> {
        self.zero_index.get(name).copied()
    }
    pub fn one(&self, name: &str) -> Option<OneId> {
        self.one_index.get(name).copied()
    }
    pub fn two(&self, name: &str) -> Option<GenId> {
        self.two_index.get(name).copied()
    }
    pub fn zeros(&self) -> impl Iterator<Item = ZeroId> + '_ {
        (0..self.zeros.len() as u32).map(ZeroId)
    }
    pub fn ones(&self) -> impl Iterator<Item = OneId> + '_ {
        (0..self.ones.len() as u32).map(OneId)
    }
    pub fn twos(&self) -> impl Iterator<Item = GenId> + '_ {
        (0..self.twos.len() as u32).map(GenId)
    }
    pub fn n_twos(&self) -> usize {
        self.twos.len()
    }
}

/// Incremental builder validating the signature invariants.
#[derive(Clone, Debug, Default)]
pub struct SignatureBuilder {
    sig: Signature,
}

impl SignatureBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn zero(&mut self, name: &str) -> Result<ZeroId, SignatureError> {
        if self.sig.zero_index.contains_key(name) {
            return Err(SignatureError::DuplicateName(name.to_string()));
        }
        let id = ZeroId(self.sig.zeros.len() as u32);
        self.sig.zeros.push(name.to_string());
        self.sig.zero_index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn one(&mut self, name: &str, src: ZeroId, tgt: ZeroId) -> Result<OneId, SignatureError> {
        if self.sig.one_index.contains_key(name) {
            return Err(SignatureError::DuplicateName(name.to_string()));
        }
        let id = OneId(self.sig.ones.len() as u32);
        self.sig.ones.push(OneGen { name: name.to_string(), src, tgt });
        self.sig.one_index.insert(name.to_string(), id);
        Ok(id)
    }

    /// Declares a 2-generator; the boundary words are validated against
    /// the current 1-generators.
    pub fn two(&mut self, name: &str, src: Word, tgt: Word) -> Result<GenId, SignatureError> {
        if self.sig.two_index.contains_key(name) {
            return Err(SignatureError::DuplicateName(name.to_string()));
        }
        for w in [&src, &tgt] {
            Word::new(&self.sig, w.letters.clone(), w.at).map_err(|e| {
                SignatureError::InvalidBoundary { name: name.to_string(), source: e }
            })?;
        }
        if src.source_cell() != tgt.source_cell()
            || src.target_cell(&self.sig) != tgt.target_cell(&self.sig)
        {
            return Err(SignatureError::InvalidBoundary {
                name: name.to_string(),
                source: DiagramError::ZeroCellMismatch {
                    left: self.sig.zero_name(src.source_cell()).to_string(),
                    right: self.sig.zero_name(tgt.source_cell()).to_string(),
                },
            });
        }
        let id = GenId(self.sig.twos.len() as u32);
        self.sig.twos.push(TwoGen { name: name.to_string(), src, tgt });
        self.sig.two_index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn current(&self) -> &Signature {
        &self.sig
    }

    pub fn finish(self) -> Signature {
        self.sig
    }
}

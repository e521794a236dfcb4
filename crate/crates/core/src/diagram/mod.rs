//! Cells of a free 2-category in slice form.
//!
//! A [`Diagram`] is a monomial 2-cell stored as a sequence of slices,
//! each slice being one generator whiskered by identity words. Two
//! diagrams are equal when their interchange-canonical slice sequences
//! are equal, so structural equality on canonical forms is equality in
//! the free 2-category.

mod canonical;
mod matching;
mod mate;
mod signature;

pub use canonical::exchange_orbit;
pub use matching::{find_matches, plug, plug_lincomb, Context};
pub use mate::{left_mate, right_mate, AdjunctionData};
pub use signature::{GenId, OneId, Signature, SignatureBuilder, ZeroId};

use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("zero-cell mismatch in 0-composition: {left} vs {right}")]
    ZeroCellMismatch { left: String, right: String },
    #[error("word mismatch in 1-composition: target {upper} vs source {lower}")]
    WordMismatch { upper: String, lower: String },
    #[error("letters of a word are not 0-composable at position {position}")]
    NonComposableWord { position: usize },
    #[error("slice {slice} does not chain: generator source does not match the wire word")]
    BrokenChain { slice: usize },
    #[error("hole boundary mismatch: expected {expected}, got {got}")]
    HoleMismatch { expected: String, got: String },
    #[error("missing adjunction generator: {0}")]
    MissingAdjunction(String),
}

/// A 1-cell of the free 1-category: a composable sequence of generating
/// 1-cells. The empty word carries an explicit zero-cell.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    pub(crate) letters: Vec<OneId>,
    /// Source zero-cell; for the empty word this is the identity's cell.
    pub(crate) at: ZeroId,
}

impl Word {
    pub fn identity(at: ZeroId) -> Self {
        Word { letters: Vec::new(), at }
    }

    pub fn new(sig: &Signature, letters: Vec<OneId>, at: ZeroId) -> Result<Self, DiagramError> {
        let mut cur = at;
        for (k, &l) in letters.iter().enumerate() {
            let (s, t) = sig.one_boundary(l);
            if s != cur {
                return Err(DiagramError::NonComposableWord { position: k });
            }
            cur = t;
        }
        Ok(Word { letters, at })
    }

    pub fn letters(&self) -> &[OneId] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn source_cell(&self) -> ZeroId {
        self.at
    }

    pub fn target_cell(&self, sig: &Signature) -> ZeroId {
        match self.letters.last() {
            None => self.at,
            Some(&l) => sig.one_boundary(l).1,
        }
    }

    /// Concatenation, checking 0-composability.
    pub fn concat(&self, sig: &Signature, other: &Word) -> Result<Word, DiagramError> {
        if self.target_cell(sig) != other.source_cell() {
            return Err(DiagramError::ZeroCellMismatch {
                left: sig.zero_name(self.target_cell(sig)).to_string(),
                right: sig.zero_name(other.source_cell()).to_string(),
            });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Word { letters, at: self.at })
    }

    pub fn slice_range(&self, from: usize, to: usize, sig: &Signature) -> Word {
        let letters: Vec<OneId> = self.letters[from..to].to_vec();
        let at = if from < self.letters.len() && from < to {
            sig.one_boundary(self.letters[from]).0
        } else if from == 0 {
            self.at
        } else {
            sig.one_boundary(self.letters[from - 1]).1
        };
        Word { letters, at }
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> WordDisplay<'a> {
        WordDisplay { word: self, sig }
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    sig: &'a Signature,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> =
            self.word.letters.iter().map(|&l| self.sig.one_name(l)).collect();
        write!(f, "{}", names.join(" "))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({:?}@{})", self.letters, self.at.0)
    }
}

/// One whiskered generator: the generator `gen` placed with `offset`
/// identity wires to its left.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Slice {
    pub offset: u16,
    pub gen: GenId,
}

/// A monomial 2-cell of the free 2-category over a [`Signature`], stored
/// as an interchange-canonical sequence of slices.
#[derive(Clone)]
pub struct Diagram {
    pub(crate) sig: Arc<Signature>,
    pub(crate) src: Word,
    pub(crate) tgt: Word,
    pub(crate) slices: Vec<Slice>,
}

impl PartialEq for Diagram {
    fn eq(&self, other: &Self) -> bool {
        self.src == other.src && self.slices == other.slices
    }
}
impl Eq for Diagram {}

impl PartialOrd for Diagram {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Fixed total order on canonical diagrams: lexicographic on the slice
/// encoding, then on the boundary. Deterministic term iteration and
/// serialization depend on it.
impl Ord for Diagram {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.slices
            .len()
            .cmp(&other.slices.len())
            .then_with(|| self.slices.cmp(&other.slices))
            .then_with(|| self.src.cmp(&other.src))
    }
}

impl std::hash::Hash for Diagram {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.src.hash(state);
        self.slices.hash(state);
    }
}

impl Diagram {
    /// Identity 2-cell on a word.
    pub fn identity(sig: &Arc<Signature>, w: Word) -> Self {
        Diagram { sig: sig.clone(), src: w.clone(), tgt: w, slices: Vec::new() }
    }

    /// A single generator as a diagram.
    pub fn generator(sig: &Arc<Signature>, g: GenId) -> Self {
        let (s, t) = sig.two_boundary(g);
        Diagram {
            sig: sig.clone(),
            src: s.clone(),
            tgt: t.clone(),
            slices: vec![Slice { offset: 0, gen: g }],
        }
    }

    /// Builds a diagram from an explicit slice sequence, validating the
    /// chaining invariant, and canonicalizes it.
    pub fn from_slices(
        sig: &Arc<Signature>,
        src: Word,
        slices: Vec<Slice>,
    ) -> Result<Self, DiagramError> {
        let mut cur = src.clone();
        for (k, sl) in slices.iter().enumerate() {
            cur = apply_slice(sig, &cur, sl).ok_or(DiagramError::BrokenChain { slice: k })?;
        }
        let mut d = Diagram { sig: sig.clone(), src, tgt: cur, slices };
        canonical::canonicalize_in_place(&mut d);
        Ok(d)
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn source(&self) -> &Word {
        &self.src
    }

    pub fn target(&self) -> &Word {
        &self.tgt
    }

    pub fn slices(&self) -> &[Slice] {
        &self.slices
    }

    pub fn is_identity(&self) -> bool {
        self.slices.is_empty()
    }

    /// Number of occurrences of generators from `gens` in this diagram.
    pub fn count_gens(&self, pred: impl Fn(GenId) -> bool) -> usize {
        self.slices.iter().filter(|s| pred(s.gen)).count()
    }

    /// The wire words before each slice and after the last one
    /// (`slices.len() + 1` entries).
    pub fn level_words(&self) -> Vec<Word> {
        let mut out = Vec::with_capacity(self.slices.len() + 1);
        let mut cur = self.src.clone();
        out.push(cur.clone());
        for sl in &self.slices {
            cur = apply_slice(&self.sig, &cur, sl).expect("diagram invariant: slices chain");
            out.push(cur.clone());
        }
        out
    }

    /// 0-composition (side by side). The result is canonicalized.
    pub fn compose0(&self, other: &Diagram) -> Result<Diagram, DiagramError> {
        let sig = &self.sig;
        if self.src.target_cell(sig) != other.src.source_cell() {
            return Err(DiagramError::ZeroCellMismatch {
                left: sig.zero_name(self.src.target_cell(sig)).to_string(),
                right: sig.zero_name(other.src.source_cell()).to_string(),
            });
        }
        let src = self.src.concat(sig, &other.src)?;
        let mut slices = self.slices.clone();
        let shift = self.tgt.len() as u16;
        slices.extend(other.slices.iter().map(|s| Slice { offset: s.offset + shift, gen: s.gen }));
        Diagram::from_slices(sig, src, slices)
    }

    /// 1-composition (vertical). The result is canonicalized.
    pub fn compose1(&self, other: &Diagram) -> Result<Diagram, DiagramError> {
        let sig = &self.sig;
        if self.tgt != other.src {
            return Err(DiagramError::WordMismatch {
                upper: self.tgt.display(sig).to_string(),
                lower: other.src.display(sig).to_string(),
            });
        }
        let mut slices = self.slices.clone();
        slices.extend_from_slice(&other.slices);
        Diagram::from_slices(sig, self.src.clone(), slices)
    }

    /// Interchange-canonical form. Idempotent and constant on each
    /// interchange orbit.
    pub fn canonicalize(&self) -> Diagram {
        let mut d = self.clone();
        canonical::canonicalize_in_place(&mut d);
        d
    }

    pub fn display(&self) -> String {
        crate::format::expr::diagram_to_expr(self)
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Diagram[{}]", self.display())
    }
}

/// Applies one slice to a wire word, or `None` if the generator's source
/// does not match.
pub(crate) fn apply_slice(sig: &Signature, word: &Word, slice: &Slice) -> Option<Word> {
    let (gsrc, gtgt) = sig.two_boundary(slice.gen);
    let off = slice.offset as usize;
    let m = gsrc.len();
    if off + m > word.len() {
        return None;
    }
    if &word.letters[off..off + m] != gsrc.letters() {
        return None;
    }
    // Zero-cell check for width-zero sources: insertion point must sit in
    // the generator's ambient zero-cell.
    if m == 0 {
        let cell_at = word.slice_range(off, off, sig).source_cell();
        let cell_at = if off == 0 { word.at } else { cell_at };
        if cell_at != gsrc.source_cell() {
            return None;
        }
    }
    let mut letters = Vec::with_capacity(word.len() - m + gtgt.len());
    letters.extend_from_slice(&word.letters[..off]);
    letters.extend_from_slice(gtgt.letters());
    letters.extend_from_slice(&word.letters[off + m..]);
    Some(Word { letters, at: word.at })
}

/// Public wrapper over [`apply_slice`] for sampling utilities.
pub fn apply_slice_pub(sig: &Signature, word: &Word, slice: &Slice) -> Option<Word> {
    apply_slice(sig, word, slice)
}

#[cfg(test)]
mod tests;

//! Seeded random generation of diagrams, for sampling-based validation
//! and tests.

use crate::diagram::{Diagram, Signature, Slice, Word};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random word over the signature's 1-generators starting at a random
/// zero-cell (greedy extension; may be shorter than `max_len`).
pub fn random_word(sig: &Signature, rng: &mut impl Rng, max_len: usize) -> Word {
    let zeros: Vec<_> = sig.zeros().collect();
    let at = zeros[rng.gen_range(0..zeros.len())];
    let mut letters = Vec::new();
    let mut cur = at;
    let len = rng.gen_range(0..=max_len);
    for _ in 0..len {
        let candidates: Vec<_> =
            sig.ones().filter(|&o| sig.one_boundary(o).0 == cur).collect();
        if candidates.is_empty() {
            break;
        }
        let pick = candidates[rng.gen_range(0..candidates.len())];
        cur = sig.one_boundary(pick).1;
        letters.push(pick);
    }
    Word::new(sig, letters, at).expect("greedy word is composable")
}

/// A random diagram with at most `max_slices` slices, built by greedily
/// appending compatible whiskered generators. Canonicalized.
pub fn random_diagram(
    sig: &Arc<Signature>,
    rng: &mut impl Rng,
    max_word: usize,
    max_slices: usize,
) -> Diagram {
    let src = random_word(sig, rng, max_word);
    let mut slices: Vec<Slice> = Vec::new();
    let mut cur = src.clone();
    let n = rng.gen_range(0..=max_slices);
    'next: for _ in 0..n {
        let mut options: Vec<Slice> = Vec::new();
        for g in sig.twos() {
            let (gsrc, _) = sig.two_boundary(g);
            let m = gsrc.len();
            if m > cur.len() {
                continue;
            }
            for off in 0..=cur.len() - m {
                let candidate = Slice { offset: off as u16, gen: g };
                if crate::diagram::apply_slice_pub(sig, &cur, &candidate).is_some() {
                    options.push(candidate);
                }
            }
        }
        if options.is_empty() {
            break 'next;
        }
        let pick = options[rng.gen_range(0..options.len())];
        cur = crate::diagram::apply_slice_pub(sig, &cur, &pick).expect("validated");
        slices.push(pick);
    }
    Diagram::from_slices(sig, src, slices).expect("greedy slices chain")
}

/// A random diagram with the constraint that at most `max_of` slices use
/// generators satisfying `pred`.
pub fn random_diagram_bounded(
    sig: &Arc<Signature>,
    rng: &mut impl Rng,
    max_word: usize,
    max_slices: usize,
    pred: impl Fn(crate::diagram::GenId) -> bool,
    max_of: usize,
) -> Diagram {
    for _ in 0..64 {
        let d = random_diagram(sig, rng, max_word, max_slices);
        if d.count_gens(&pred) <= max_of {
            return d;
        }
    }
    let src = random_word(sig, rng, max_word);
    Diagram::identity(sig, src)
}

//! Duals of 2-cells with respect to chosen biadjunctions: the composite
//! of cups, the whiskered cell and caps.

use super::{Diagram, DiagramError, GenId, OneId, Signature, Slice, Word};
use std::sync::Arc;

/// Cap/cup generators realizing a biadjunction between `up` and `dn`.
///
/// `cap_r : up dn => 1`, `cup_r : 1 => dn up`,
/// `cap_l : dn up => 1`, `cup_l : 1 => up dn`.
#[derive(Clone, Copy, Debug)]
pub struct AdjunctionData {
    pub up: OneId,
    pub dn: OneId,
    pub cap_r: GenId,
    pub cup_r: GenId,
    pub cap_l: GenId,
    pub cup_l: GenId,
}

fn dual_letter(adj: &AdjunctionData, l: OneId) -> Option<OneId> {
    if l == adj.up {
        Some(adj.dn)
    } else if l == adj.dn {
        Some(adj.up)
    } else {
        None
    }
}

fn dual_word(sig: &Signature, adj: &AdjunctionData, w: &Word) -> Result<Word, DiagramError> {
    let mut letters = Vec::with_capacity(w.len());
    for &l in w.letters().iter().rev() {
        letters.push(dual_letter(adj, l).ok_or_else(|| {
            DiagramError::MissingAdjunction(format!(
                "1-generator {} has no declared dual",
                sig.one_name(l)
            ))
        })?);
    }
    Word::new(sig, letters, w.target_cell(sig))
}

fn check(sig: &Signature, adj: &AdjunctionData) -> Result<(), DiagramError> {
    for (g, src_len) in [(adj.cap_r, 2), (adj.cup_r, 0), (adj.cap_l, 2), (adj.cup_l, 0)] {
        let (s, t) = sig.two_boundary(g);
        if s.len() != src_len || t.len() + s.len() != 2 {
            return Err(DiagramError::MissingAdjunction(format!(
                "generator {} does not have cap/cup shape",
                sig.two_name(g)
            )));
        }
    }
    Ok(())
}

/// Right dual: a cell `p => q` bent around to `dual(q) => dual(p)` using
/// the right adjoints. Cups create `letter·dual(letter)` pairs on the
/// right, caps close `dual(letter)·letter` pairs from the inside.
pub fn right_mate(
    sig: &Arc<Signature>,
    cell: &Diagram,
    adj: &AdjunctionData,
) -> Result<Diagram, DiagramError> {
    mate(sig, cell, adj, true)
}

/// Left dual: the same bend through the left adjoints.
pub fn left_mate(
    sig: &Arc<Signature>,
    cell: &Diagram,
    adj: &AdjunctionData,
) -> Result<Diagram, DiagramError> {
    mate(sig, cell, adj, false)
}

fn mate(
    sig: &Arc<Signature>,
    cell: &Diagram,
    adj: &AdjunctionData,
    right: bool,
) -> Result<Diagram, DiagramError> {
    check(sig, adj)?;
    let p = cell.source().clone();
    let q = cell.target().clone();
    let dual_q = dual_word(sig, adj, &q)?;
    let dual_p = dual_word(sig, adj, &p)?;
    let m = p.len() as u16;
    let n = q.len() as u16;

    // cup creating l·dual(l) (right mate) or dual(l)·l (left mate).
    let cup_for = |l: OneId| if (l == adj.up) == right { adj.cup_l } else { adj.cup_r };
    // cap consuming dual(l)·l (right mate) or l·dual(l) (left mate).
    let cap_for = |l: OneId| if (l == adj.up) == right { adj.cap_l } else { adj.cap_r };

    let mut slices: Vec<Slice> = Vec::new();
    if right {
        // dual(q) · p · dual(p), nesting cups outermost-first.
        for (k, &l) in p.letters().iter().enumerate() {
            slices.push(Slice { offset: n + k as u16, gen: cup_for(l) });
        }
        for s in cell.slices() {
            slices.push(Slice { offset: s.offset + n, gen: s.gen });
        }
        // Close dual(q)·q pairs from the inside out.
        for (k, &l) in q.letters().iter().enumerate() {
            slices.push(Slice { offset: n - 1 - k as u16, gen: cap_for(l) });
        }
    } else {
        // dual(p) · p · dual(q), cups at the left.
        for (k, &l) in p.letters().iter().rev().enumerate() {
            slices.push(Slice { offset: k as u16, gen: cup_for(l) });
        }
        for s in cell.slices() {
            slices.push(Slice { offset: s.offset + m, gen: s.gen });
        }
        for (j, &l) in q.letters().iter().rev().enumerate() {
            slices.push(Slice { offset: m + n - 1 - j as u16, gen: cap_for(l) });
        }
    }
    let d = Diagram::from_slices(sig, dual_q, slices)?;
    if d.target() != &dual_p {
        return Err(DiagramError::MissingAdjunction(
            "mate composite does not close onto the dual boundary".to_string(),
        ));
    }
    Ok(d)
}

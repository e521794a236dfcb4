//! Subdiagram matching: whisker-form contexts, occurrence search and
//! plugging.
//!
//! A context is kept in whisker normal form: everything below the hole is
//! absorbed into `below`, everything above into `above`, and the hole is
//! framed by identity words only. Matching is exact on the free
//! 2-category: pattern generator occurrences are bound to host
//! occurrences consistently with the wiring, the bound block is replaced
//! by a formal hole node, and the resulting wiring is sequentialized;
//! every sequentialization with the hole in place is a genuine
//! occurrence, and unrealizable bindings fail to sequentialize.

use super::canonical::{Regions, WGraph, WNode};
use super::{Diagram, DiagramError, Signature, Slice, Word};
use std::collections::BTreeSet;
use std::sync::Arc;

/// A one-hole context `above ⋆1 (left ⋆0 □ ⋆0 right) ⋆1 below`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Context {
    pub above: Diagram,
    pub left: Word,
    pub right: Word,
    pub below: Diagram,
    pub hole: (Word, Word),
}

impl Context {
    /// The trivial context around a boundary.
    pub fn trivial(sig: &Arc<Signature>, hole: (Word, Word)) -> Self {
        let at = hole.0.source_cell();
        Context {
            above: Diagram::identity(sig, hole.0.clone()),
            left: Word::identity(at),
            right: Word::identity(hole.0.target_cell(sig)),
            below: Diagram::identity(sig, hole.1.clone()),
            hole,
        }
    }

    /// Column offset of the hole.
    pub fn hole_offset(&self) -> usize {
        self.left.len()
    }
}

/// Replaces the hole of `c` by `d`.
pub fn plug(c: &Context, d: &Diagram) -> Result<Diagram, DiagramError> {
    if (&c.hole.0, &c.hole.1) != (&d.src, &d.tgt) {
        return Err(DiagramError::HoleMismatch {
            expected: format!(
                "{} -> {}",
                c.hole.0.display(&d.sig),
                c.hole.1.display(&d.sig)
            ),
            got: format!("{} -> {}", d.src.display(&d.sig), d.tgt.display(&d.sig)),
        });
    }
    let sig = &d.sig;
    let shift = c.left.len() as u16;
    let mut slices = c.above.slices.clone();
    slices.extend(d.slices.iter().map(|s| Slice { offset: s.offset + shift, gen: s.gen }));
    slices.extend_from_slice(&c.below.slices);
    Diagram::from_slices(sig, c.above.src.clone(), slices)
}

/// Whiskers a linear combination into a context (bilinear extension).
pub fn plug_lincomb(
    c: &Context,
    u: &crate::lincomb::LinComb,
) -> Result<crate::lincomb::LinComb, DiagramError> {
    let mut out = crate::lincomb::LinComb::zero(
        c.above.src.clone(),
        c.below.tgt.clone(),
        c.above.signature(),
    );
    for (m, coeff) in u.terms() {
        out.add_term(plug(c, m)?, coeff.clone());
    }
    Ok(out)
}

const HOLE_KEY: u64 = u64::MAX;

/// One wiring-consistent binding of the pattern into the host.
struct Binding {
    /// host node index for each pattern node.
    nodes: Vec<usize>,
    /// host wire for each pattern wire (dense, by pattern wire id).
    wires: Vec<Option<u32>>,
}

fn bind_all(pat: &WGraph, host: &WGraph) -> Vec<Binding> {
    let mut out = Vec::new();
    let mut b = Binding { nodes: Vec::new(), wires: vec![None; pat.sorts.len()] };
    let mut used = vec![false; host.nodes.len()];
    let mut used_wires: BTreeSet<u32> = BTreeSet::new();
    bind_rec(pat, host, 0, &mut b, &mut used, &mut used_wires, &mut out);
    out
}

fn bind_rec(
    pat: &WGraph,
    host: &WGraph,
    k: usize,
    b: &mut Binding,
    used: &mut Vec<bool>,
    used_wires: &mut BTreeSet<u32>,
    out: &mut Vec<Binding>,
) {
    if k == pat.nodes.len() {
        out.push(Binding { nodes: b.nodes.clone(), wires: b.wires.clone() });
        return;
    }
    let pn = &pat.nodes[k];
    'host: for (h, hn) in host.nodes.iter().enumerate() {
        if used[h] || hn.key != pn.key {
            continue;
        }
        // Tentatively bind wires.
        let mut newly: Vec<u32> = Vec::new();
        let pairs = pn
            .wires_in
            .iter()
            .zip(&hn.wires_in)
            .chain(pn.wires_out.iter().zip(&hn.wires_out));
        for (&pw, &hw) in pairs {
            match b.wires[pw as usize] {
                Some(x) if x == hw => {}
                Some(_) => {
                    for w in newly {
                        let pwx = w;
                        b.wires[pwx as usize] = None;
                    }
                    continue 'host;
                }
                None => {
                    if used_wires.contains(&hw) {
                        // Injectivity on wires.
                        for w in newly {
                            b.wires[w as usize] = None;
                        }
                        continue 'host;
                    }
                    b.wires[pw as usize] = Some(hw);
                    newly.push(pw);
                }
            }
        }
        for &w in &newly {
            used_wires.insert(b.wires[w as usize].unwrap());
        }
        used[h] = true;
        b.nodes.push(h);
        bind_rec(pat, host, k + 1, b, used, used_wires, out);
        b.nodes.pop();
        used[h] = false;
        for w in newly {
            used_wires.remove(&b.wires[w as usize].unwrap());
            b.wires[w as usize] = None;
        }
    }
}

/// Finds every occurrence of `pattern` in `host`, as whisker-form
/// contexts, deduplicated up to interchange of the context components.
pub fn find_matches(pattern: &Diagram, host: &Diagram) -> Vec<Context> {
    let sig = host.signature().clone();
    let mut out: Vec<Context> = Vec::new();
    let mut seen: BTreeSet<Vec<(u16, u64)>> = BTreeSet::new();

    if pattern.is_identity() {
        let plen = pattern.src.len();
        if plen > host.src.len() {
            return out;
        }
        for delta in 0..=host.src.len() - plen {
            let sub = host.src.slice_range(delta, delta + plen, &sig);
            if sub != pattern.src {
                continue;
            }
            let left = host.src.slice_range(0, delta, &sig);
            let right = host.src.slice_range(delta + plen, host.src.len(), &sig);
            out.push(Context {
                above: Diagram::identity(&sig, host.src.clone()),
                left,
                right,
                below: host.clone(),
                hole: (pattern.src.clone(), pattern.tgt.clone()),
            });
        }
        return out;
    }

    let pat_g = WGraph::from_slices(&sig, &pattern.src, &pattern.slices);
    let host_g = WGraph::from_slices(&sig, &host.src, &host.slices);

    // Region ids of the gaps between consecutive pattern target wires,
    // in the pattern's own region space.
    let pat_top_inner: Vec<u32> = {
        let widths: Vec<(usize, usize)> = pattern
            .slices
            .iter()
            .map(|sl| {
                let (a, b) = sig.two_boundary(sl.gen);
                (a.len(), b.len())
            })
            .collect();
        let mut rg = Regions::build(&sig, pattern.src.len(), &pattern.slices, &widths);
        let top = pattern.slices.len();
        (1..pattern.tgt.len()).map(|i| rg.region(top, i)).collect()
    };

    // The pattern's boundary wires, in order.
    let pat_src_wires = pat_g.src.clone();
    let pat_tgt_wires = pat_g.tgt.clone();
    let internal: BTreeSet<u32> = {
        // Wires produced and consumed inside the pattern.
        let mut produced: BTreeSet<u32> = BTreeSet::new();
        let mut consumed: BTreeSet<u32> = BTreeSet::new();
        for n in &pat_g.nodes {
            produced.extend(n.wires_out.iter());
            consumed.extend(n.wires_in.iter());
        }
        produced.intersection(&consumed).copied().collect()
    };

    // Host-side producer/consumer tables for boundary sanity checks.
    let mut host_producer: Vec<Option<usize>> = vec![None; host_g.sorts.len()];
    let mut host_consumer: Vec<Option<usize>> = vec![None; host_g.sorts.len()];
    for (i, n) in host_g.nodes.iter().enumerate() {
        for &w in &n.wires_out {
            host_producer[w as usize] = Some(i);
        }
        for &w in &n.wires_in {
            host_consumer[w as usize] = Some(i);
        }
    }

    'binding: for b in bind_all(&pat_g, &host_g) {
        let in_m = |h: usize| b.nodes.contains(&h);
        // Pattern boundary wires must not be produced/consumed by matched
        // nodes unless internal to the pattern.
        for &pw in &pat_src_wires {
            if internal.contains(&pw) {
                continue;
            }
            let hw = b.wires[pw as usize];
            if let Some(hw) = hw {
                if let Some(p) = host_producer[hw as usize] {
                    if in_m(p) {
                        continue 'binding;
                    }
                }
            }
        }
        for &pw in &pat_tgt_wires {
            if internal.contains(&pw) {
                continue;
            }
            let hw = b.wires[pw as usize];
            if let Some(hw) = hw {
                if let Some(c) = host_consumer[hw as usize] {
                    if in_m(c) {
                        continue 'binding;
                    }
                }
            }
        }
        // Sort check for unbound boundary wires cannot happen: a pattern
        // boundary wire untouched by any pattern node has no binding, and
        // then the pattern has a through wire; bind it by position later.
        // Build the hole graph.
        let mut hole_in = Vec::with_capacity(pat_src_wires.len());
        let mut hole_out = Vec::with_capacity(pat_tgt_wires.len());
        let mut through_ok = true;
        for &pw in &pat_src_wires {
            match b.wires[pw as usize] {
                Some(hw) => hole_in.push(hw),
                None => {
                    through_ok = false;
                    break;
                }
            }
        }
        for &pw in &pat_tgt_wires {
            match b.wires[pw as usize] {
                Some(hw) => hole_out.push(hw),
                None => {
                    through_ok = false;
                    break;
                }
            }
        }
        if !through_ok {
            // Pattern has wires no generator touches (pure whisker
            // columns). Such patterns are not produced by rule sources;
            // skip the binding rather than guess frames.
            continue 'binding;
        }

        // Translate pattern regions to host regions through the bound
        // nodes' ambient and inner gap data.
        let mut region_map: std::collections::BTreeMap<u32, u32> = Default::default();
        for (k, &h) in b.nodes.iter().enumerate() {
            let pn = &pat_g.nodes[k];
            let hn = &host_g.nodes[h];
            region_map.insert(pn.ambient, hn.ambient);
            for (pi, hi) in pn.inner.iter().zip(&hn.inner) {
                region_map.insert(*pi, *hi);
            }
        }
        // Ambient region for a source-less hole: the region of the first
        // matched node.
        let ambient = host_g.nodes[b.nodes[0]].ambient;
        let mut nodes: Vec<WNode> = Vec::new();
        for (i, n) in host_g.nodes.iter().enumerate() {
            if !in_m(i) {
                nodes.push(n.clone());
            }
        }
        // Fresh, never-matching ids for pattern regions that do not meet
        // any generator (conservative: blocks insertions there).
        let mut fresh = u32::MAX;
        let hole_inner: Vec<u32> = pat_top_inner
            .iter()
            .map(|pr| {
                region_map.get(pr).copied().unwrap_or_else(|| {
                    fresh -= 1;
                    fresh
                })
            })
            .collect();
        nodes.push(WNode {
            key: HOLE_KEY,
            wires_in: hole_in.clone(),
            wires_out: hole_out.clone(),
            ambient,
            inner: hole_inner,
        });
        let with_hole = WGraph {
            nodes,
            src: host_g.src.clone(),
            tgt: host_g.tgt.clone(),
            src_gaps: host_g.src_gaps.clone(),
            sorts: host_g.sorts.clone(),
        };
        let Some(seq) = with_hole.lexmin_sequence() else {
            continue 'binding;
        };
        let occ_key: Vec<(u16, u64)> =
            seq.iter().map(|&(o, n)| (o, with_hole.nodes[n].key)).collect();
        if !seen.insert(occ_key) {
            continue 'binding;
        }

        // Extract the context from the canonical sequence.
        let hole_pos = seq
            .iter()
            .position(|&(_, n)| with_hole.nodes[n].key == HOLE_KEY)
            .expect("hole emitted");
        let delta = seq[hole_pos].0 as usize;
        let mut above_slices = Vec::with_capacity(hole_pos);
        let mut frontier: Vec<u32> = with_hole.src.clone();
        for &(off, n) in &seq[..hole_pos] {
            let node = &with_hole.nodes[n];
            above_slices.push(Slice { offset: off, gen: super::GenId(node.key as u32) });
            frontier.splice(
                off as usize..off as usize + node.wires_in.len(),
                node.wires_out.iter().copied(),
            );
        }
        let sort_word = |wires: &[u32], at: super::ZeroId| -> Word {
            let letters: Vec<_> =
                wires.iter().map(|&w| with_hole.sorts[w as usize]).collect();
            Word::new(&sig, letters, at).expect("frame word is composable")
        };
        let frame_at = host.src.source_cell();
        let left_wires = &frontier[..delta];
        let right_wires = &frontier[delta + hole_in.len()..];
        let left = if left_wires.is_empty() {
            Word::identity(frame_at)
        } else {
            sort_word(left_wires, {
                let l = with_hole.sorts[left_wires[0] as usize];
                sig.one_boundary(l).0
            })
        };
        let right = if right_wires.is_empty() {
            Word::identity(pattern.tgt.target_cell(&sig))
        } else {
            sort_word(right_wires, {
                let l = with_hole.sorts[right_wires[0] as usize];
                sig.one_boundary(l).0
            })
        };
        let mut below_slices = Vec::with_capacity(seq.len() - hole_pos - 1);
        for &(off, n) in &seq[hole_pos + 1..] {
            let node = &with_hole.nodes[n];
            below_slices.push(Slice { offset: off, gen: super::GenId(node.key as u32) });
        }
        let Ok(above) = Diagram::from_slices(&sig, host.src.clone(), above_slices) else {
            continue 'binding;
        };
        let below_src = left
            .concat(&sig, &pattern.tgt)
            .and_then(|w| w.concat(&sig, &right));
        let Ok(below_src) = below_src else {
            continue 'binding;
        };
        let Ok(below) = Diagram::from_slices(&sig, below_src, below_slices) else {
            continue 'binding;
        };
        let ctx = Context {
            above,
            left,
            right,
            below,
            hole: (pattern.src.clone(), pattern.tgt.clone()),
        };
        debug_assert_eq!(plug(&ctx, pattern).ok().as_ref(), Some(host));
        out.push(ctx);
    }
    out.sort();
    out
}

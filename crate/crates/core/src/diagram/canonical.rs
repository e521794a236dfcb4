//! Interchange-canonical forms.
//!
//! A slice sequence presents a wiring of generator occurrences drawn in
//! the plane strip. Two sequences are interchange-equal exactly when
//! they have the same wiring and place every width-zero insertion (cups
//! and other source-less generators) in the same planar region: wires
//! force the position of everything else, while closed material may
//! float freely inside its region.
//!
//! The canonical representative is the lexicographically smallest valid
//! slice sequence (comparing `(offset, generator)` pairs). It is
//! computed by a memoized search over `(emitted set, frontier, gap
//! regions)` states: at each step the smallest emittable slice is taken,
//! and ties recurse into the continuations. The result is the exact
//! orbit minimum: idempotent, constant on each orbit, and a slice with a
//! strictly smaller left-offset precedes any commuting neighbour.

use super::{Diagram, GenId, OneId, Signature, Slice};
use std::collections::{BTreeSet, HashMap};

/// A node of the wired presentation: one generator occurrence with its
/// consumed and produced wires.
#[derive(Clone, Debug)]
pub(crate) struct WNode {
    pub key: u64,
    pub wires_in: Vec<u32>,
    pub wires_out: Vec<u32>,
    /// Region the node is inserted into (used when `wires_in` is empty).
    pub ambient: u32,
    /// Regions of the gaps between consecutive output wires.
    pub inner: Vec<u32>,
}

/// The wired presentation of a diagram (or of a diagram with a formal
/// hole node).
#[derive(Clone, Debug)]
pub(crate) struct WGraph {
    pub nodes: Vec<WNode>,
    pub src: Vec<u32>,
    pub tgt: Vec<u32>,
    /// Gap regions of the source frontier (`src.len() + 1` entries).
    pub src_gaps: Vec<u32>,
    /// 1-cell sort of every wire.
    pub sorts: Vec<OneId>,
}

/// Union-find over the planar `(level, gap)` nodes of a presentation.
pub(crate) struct Regions {
    parent: Vec<u32>,
    level_offsets: Vec<usize>,
}

impl Regions {
    pub fn build(sig: &Signature, src_len: usize, slices: &[Slice], widths: &[(usize, usize)]) -> Regions {
        let _ = sig;
        let mut lens = Vec::with_capacity(slices.len() + 1);
        let mut cur = src_len;
        lens.push(cur);
        for (k, _s) in slices.iter().enumerate() {
            let (m, n) = widths[k];
            cur = cur - m + n;
            lens.push(cur);
        }
        let mut level_offsets = Vec::with_capacity(lens.len());
        let mut total = 0usize;
        for l in &lens {
            level_offsets.push(total);
            total += l + 1;
        }
        let mut rg = Regions { parent: (0..total as u32).collect(), level_offsets };
        for (k, s) in slices.iter().enumerate() {
            let (m, n) = widths[k];
            let a = s.offset as usize;
            for g in 0..=lens[k] {
                if g <= a {
                    rg.union(rg.node(k, g), rg.node(k + 1, g));
                }
                if g >= a + m {
                    rg.union(rg.node(k, g), rg.node(k + 1, g - m + n));
                }
            }
        }
        rg
    }

    pub fn node(&self, level: usize, gap: usize) -> u32 {
        (self.level_offsets[level] + gap) as u32
    }

    pub fn find(&mut self, x: u32) -> u32 {
        let mut x = x;
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = self.parent[x as usize];
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra as usize] = rb;
        }
    }

    pub fn region(&mut self, level: usize, gap: usize) -> u32 {
        let n = self.node(level, gap);
        self.find(n)
    }
}

impl WGraph {
    pub fn from_slices(sig: &Signature, src: &super::Word, slices: &[Slice]) -> WGraph {
        let widths: Vec<(usize, usize)> = slices
            .iter()
            .map(|s| {
                let (a, b) = sig.two_boundary(s.gen);
                (a.len(), b.len())
            })
            .collect();
        let mut regions = Regions::build(sig, src.len(), slices, &widths);
        let mut sorts: Vec<OneId> = src.letters().to_vec();
        let mut frontier: Vec<u32> = (0..src.len() as u32).collect();
        let src_wires = frontier.clone();
        let src_gaps: Vec<u32> = (0..=src.len()).map(|g| regions.region(0, g)).collect();
        let mut nodes = Vec::with_capacity(slices.len());
        for (k, s) in slices.iter().enumerate() {
            let (gsrc, gtgt) = sig.two_boundary(s.gen);
            let off = s.offset as usize;
            let wires_in: Vec<u32> = frontier[off..off + gsrc.len()].to_vec();
            let mut wires_out = Vec::with_capacity(gtgt.len());
            for &l in gtgt.letters() {
                wires_out.push(sorts.len() as u32);
                sorts.push(l);
            }
            frontier.splice(off..off + gsrc.len(), wires_out.iter().copied());
            let ambient = regions.region(k, off);
            let inner: Vec<u32> =
                (1..gtgt.len()).map(|i| regions.region(k + 1, off + i)).collect();
            nodes.push(WNode { key: s.gen.0 as u64, wires_in, wires_out, ambient, inner });
        }
        WGraph { nodes, src: src_wires, tgt: frontier, src_gaps, sorts }
    }

    /// The exact lexicographically smallest valid emission sequence, or
    /// `None` when the wiring cannot be sequentialized (used to reject
    /// impossible hole placements during matching).
    pub fn lexmin_sequence(&self) -> Option<Vec<(u16, usize)>> {
        assert!(self.nodes.len() <= 64, "diagram too large for canonical search");
        let full: u64 = if self.nodes.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.nodes.len()) - 1
        };
        let mut memo: HashMap<(u64, Vec<u32>), Option<Vec<(u16, usize)>>> = HashMap::new();
        self.rec(0, &self.src, &self.src_gaps, full, &mut memo)
    }

    fn rec(
        &self,
        emitted: u64,
        frontier: &[u32],
        gaps: &[u32],
        full: u64,
        memo: &mut HashMap<(u64, Vec<u32>), Option<Vec<(u16, usize)>>>,
    ) -> Option<Vec<(u16, usize)>> {
        if emitted == full {
            return if frontier == &self.tgt[..] { Some(Vec::new()) } else { None };
        }
        // The gap vector is determined by (emitted, frontier): wires pin
        // regions between them, and insertions only copy existing gap
        // regions. Memoizing on (emitted, frontier) is therefore sound.
        let mkey = (emitted, frontier.to_vec());
        if let Some(hit) = memo.get(&mkey) {
            return hit.clone();
        }
        // Emittable candidates: (offset, key, node, new frontier, new gaps).
        let mut cands: Vec<(u16, u64, usize, Vec<u32>, Vec<u32>)> = Vec::new();
        for (i, node) in self.nodes.iter().enumerate() {
            if emitted & (1u64 << i) != 0 {
                continue;
            }
            if node.wires_in.is_empty() {
                for p in 0..=frontier.len() {
                    if gaps[p] != node.ambient {
                        continue;
                    }
                    let mut nf = frontier.to_vec();
                    nf.splice(p..p, node.wires_out.iter().copied());
                    let mut ng = gaps.to_vec();
                    let mut insert = vec![gaps[p]];
                    insert.extend_from_slice(&node.inner);
                    if !node.wires_out.is_empty() {
                        insert.push(gaps[p]);
                    }
                    ng.splice(p..=p, insert);
                    cands.push((p as u16, node.key, i, nf, ng));
                }
            } else if let Some(p) = find_window(frontier, &node.wires_in) {
                let m = node.wires_in.len();
                let mut nf = frontier.to_vec();
                nf.splice(p..p + m, node.wires_out.iter().copied());
                let mut ng = gaps.to_vec();
                let mut insert = vec![gaps[p]];
                insert.extend_from_slice(&node.inner);
                if !node.wires_out.is_empty() {
                    insert.push(gaps[p + m]);
                }
                ng.splice(p..=p + m, insert);
                cands.push((p as u16, node.key, i, nf, ng));
            }
        }
        cands.sort_by_key(|c| (c.0, c.1, c.2));
        let mut result: Option<Vec<(u16, usize)>> = None;
        let mut g = 0;
        while g < cands.len() {
            let gk = (cands[g].0, cands[g].1);
            let mut best_tail: Option<Vec<(u16, usize)>> = None;
            let mut h = g;
            while h < cands.len() && (cands[h].0, cands[h].1) == gk {
                let (_, _, node, nf, ng) = &cands[h];
                if let Some(tail) = self.rec(emitted | (1u64 << node), nf, ng, full, memo) {
                    let better = match &best_tail {
                        None => true,
                        Some(bt) => {
                            tail.iter().map(|(o, n)| (*o, self.nodes[*n].key)).collect::<Vec<_>>()
                                < bt[1..]
                                    .iter()
                                    .map(|(o, n)| (*o, self.nodes[*n].key))
                                    .collect::<Vec<_>>()
                        }
                    };
                    if better {
                        let mut seq = Vec::with_capacity(tail.len() + 1);
                        seq.push((gk.0, *node));
                        seq.extend(tail);
                        best_tail = Some(seq);
                    }
                }
                h += 1;
            }
            if let Some(seq) = best_tail {
                result = Some(seq);
                break;
            }
            g = h;
        }
        memo.insert(mkey, result.clone());
        result
    }
}

fn find_window(frontier: &[u32], wanted: &[u32]) -> Option<usize> {
    if wanted.is_empty() || wanted.len() > frontier.len() {
        return None;
    }
    let first = wanted[0];
    let p = frontier.iter().position(|&w| w == first)?;
    if p + wanted.len() <= frontier.len() && &frontier[p..p + wanted.len()] == wanted {
        Some(p)
    } else {
        None
    }
}

pub(crate) fn canonicalize_in_place(d: &mut Diagram) {
    if d.slices.len() < 2 {
        return;
    }
    let sig = d.sig.clone();
    let g = WGraph::from_slices(&sig, &d.src, &d.slices);
    let seq = g.lexmin_sequence().expect("a valid diagram sequentializes");
    d.slices = seq
        .into_iter()
        .map(|(offset, node)| Slice { offset, gen: GenId(g.nodes[node].key as u32) })
        .collect();
}

/// Widths `(|source|, |target|)` of a slice's generator.
fn widths(sig: &Signature, s: &Slice) -> (u16, u16) {
    let (a, b) = sig.two_boundary(s.gen);
    (a.len() as u16, b.len() as u16)
}

/// If `s1` then `s2` commute (disjoint footprints), returns the swapped
/// pair `(s2', s1')`. One elementary exchange move; the orbit oracle is
/// built from these.
pub(crate) fn swapped(sig: &Signature, s1: &Slice, s2: &Slice) -> Option<(Slice, Slice)> {
    let (m, n) = widths(sig, s1);
    let (p, q) = widths(sig, s2);
    let a = s1.offset;
    let b = s2.offset;
    if b >= a + n {
        Some((Slice { offset: b - n + m, gen: s2.gen }, *s1))
    } else if b + p <= a {
        Some((*s2, Slice { offset: a - p + q, gen: s1.gen }))
    } else {
        None
    }
}

/// Enumerates the full interchange orbit of a diagram (as raw slice
/// sequences, not canonicalized). Exponential; intended as a test oracle
/// for small diagrams.
pub fn exchange_orbit(d: &Diagram) -> Vec<Diagram> {
    let sig = d.sig.clone();
    let mut seen: BTreeSet<Vec<Slice>> = BTreeSet::new();
    let mut stack = vec![d.slices.clone()];
    seen.insert(d.slices.clone());
    while let Some(cur) = stack.pop() {
        for i in 0..cur.len().saturating_sub(1) {
            if let Some((t1, t2)) = swapped(&sig, &cur[i], &cur[i + 1]) {
                let mut next = cur.clone();
                next[i] = t1;
                next[i + 1] = t2;
                if seen.insert(next.clone()) {
                    stack.push(next);
                }
            }
        }
    }
    seen.into_iter()
        .map(|slices| Diagram {
            sig: sig.clone(),
            src: d.src.clone(),
            tgt: d.tgt.clone(),
            slices,
        })
        .collect()
}

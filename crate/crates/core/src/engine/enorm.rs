//! Structural normal forms.
//!
//! The structural part `E` of a splitting is declared convergent, so
//! oriented `E`-rewriting to a fixpoint is strategy-independent. On top
//! of that, closed connected components floating in the outer planar
//! region are relocated to a canonical leftmost position: interchange
//! alone does not order disjoint closed components, but their position
//! within one region is structurally irrelevant, and hom-basis
//! comparisons need a positional normal form.

use super::{EngineError, PolygraphModulo, Rule};
use crate::diagram::{find_matches, plug, Diagram, Slice};
use crate::lincomb::LinComb;

/// Oriented structural rewriting of one monomial to its normal form.
/// Coefficients are untouched: structural rules here are
/// monomial-to-monomial with coefficient one.
pub fn e_normal_form_monomial(
    m: &Diagram,
    p: &PolygraphModulo,
) -> Result<Diagram, EngineError> {
    let budget = super::default_budget();
    let mut cur = m.clone();
    let rules: Vec<&Rule> = p.modulo_rules().collect();
    let mut steps = 0usize;
    'outer: loop {
        for r in &rules {
            let matches = find_matches(&r.source, &cur);
            if let Some(ctx) = matches.first() {
                let (t, c) = {
                    let mut it = r.target.terms();
                    let first = it.next().expect("structural rules are monomial");
                    debug_assert!(it.next().is_none());
                    (first.0.clone(), first.1.clone())
                };
                debug_assert!(c == crate::lincomb::scalar_int(1));
                cur = plug(ctx, &t)?;
                steps += 1;
                if steps > budget {
                    return Err(EngineError::BudgetExceeded {
                        budget,
                        what: "structural normalization".to_string(),
                    });
                }
                continue 'outer;
            }
        }
        break;
    }
    Ok(relocate_closed_components(&cur))
}

/// Structural normal form of a linear combination: monomialwise, then
/// recombined (coefficients of merging monomials add up).
pub fn e_normal_form(u: &LinComb, p: &PolygraphModulo) -> Result<LinComb, EngineError> {
    let mut out = LinComb::zero(u.source().clone(), u.target().clone(), u.signature());
    for (m, c) in u.terms() {
        let nf = e_normal_form_monomial(m, p)?;
        out.add_term(nf, c.clone());
    }
    Ok(out)
}

/// Wire-connectivity components of a diagram's slices. Returns, for each
/// slice, a component id; the second element flags components touching
/// the boundary (open components).
fn wire_components(d: &Diagram) -> (Vec<usize>, Vec<bool>) {
    let sig = d.signature();
    let n = d.slices().len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
            r
        } else {
            x
        }
    }
    fn union(parent: &mut Vec<usize>, a: usize, b: usize) {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            parent[ra] = rb;
        }
    }
    // Assign wire ids; track which slice produced each live wire, and
    // whether a wire originates at the boundary.
    #[derive(Clone, Copy)]
    enum WireSrc {
        Boundary,
        Slice(usize),
    }
    let mut live: Vec<WireSrc> = vec![WireSrc::Boundary; d.source().len()];
    let mut open = vec![false; n];
    for (k, s) in d.slices().iter().enumerate() {
        let (gsrc, gtgt) = sig.two_boundary(s.gen);
        let off = s.offset as usize;
        for w in live.iter().skip(off).take(gsrc.len()) {
            match w {
                WireSrc::Boundary => open[k] = true,
                WireSrc::Slice(j) => union(&mut parent, k, *j),
            }
        }
        let mut new_live = Vec::with_capacity(live.len() - gsrc.len() + gtgt.len());
        new_live.extend_from_slice(&live[..off]);
        new_live.extend(std::iter::repeat(WireSrc::Slice(k)).take(gtgt.len()));
        new_live.extend_from_slice(&live[off + gsrc.len()..]);
        live = new_live;
    }
    // Wires reaching the target boundary also mark components open.
    for w in &live {
        if let WireSrc::Slice(j) = w {
            open[*j] = true;
        }
    }
    // Propagate openness to roots.
    let mut open_root = vec![false; n];
    for k in 0..n {
        if open[k] {
            let r = find(&mut parent, k);
            open_root[r] = true;
        }
    }
    let comp: Vec<usize> = (0..n).map(|k| find(&mut parent, k)).collect();
    let is_open: Vec<bool> = comp.iter().map(|&r| open_root[r]).collect();
    (comp, is_open)
}

/// Planar regions of the slice strip, as a union-find over
/// `(level, gap)` nodes; returns a lookup from `(level, gap)` to a
/// region id and the id of the outer region (the one containing the far
/// left gap).
struct Regions {
    parent: Vec<usize>,
    level_offsets: Vec<usize>,
}

impl Regions {
    fn node(&self, level: usize, gap: usize) -> usize {
        self.level_offsets[level] + gap
    }
    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let r = self.find(self.parent[x]);
            self.parent[x] = r;
            r
        } else {
            x
        }
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
    fn region(&mut self, level: usize, gap: usize) -> usize {
        let n = self.node(level, gap);
        self.find(n)
    }
}

fn build_regions(d: &Diagram) -> Regions {
    let sig = d.signature();
    let words = d.level_words();
    let mut level_offsets = Vec::with_capacity(words.len());
    let mut total = 0usize;
    for w in &words {
        level_offsets.push(total);
        total += w.len() + 1;
    }
    let mut rg = Regions { parent: (0..total).collect(), level_offsets };
    for (k, s) in d.slices().iter().enumerate() {
        let (gsrc, gtgt) = sig.two_boundary(s.gen);
        let a = s.offset as usize;
        let m = gsrc.len();
        let n_out = gtgt.len();
        let below_len = words[k].len();
        for g in 0..=below_len {
            if g <= a {
                let x = rg.node(k, g);
                let y = rg.node(k + 1, g);
                rg.union(x, y);
            }
            if g >= a + m {
                let x = rg.node(k, g);
                let y = rg.node(k + 1, g - m + n_out);
                rg.union(x, y);
            }
        }
    }
    rg
}

/// The closed connected components of a diagram, each as a standalone
/// diagram, together with the remainder. Components not in the outer
/// region (for example nested inside another closed curve) are left in
/// place.
pub fn closed_components(d: &Diagram) -> (Vec<Diagram>, Diagram) {
    let sig = d.signature().clone();
    let n = d.slices().len();
    if n == 0 {
        return (Vec::new(), d.clone());
    }
    let (comp, is_open) = wire_components(d);
    let mut regions = build_regions(d);
    let outer = regions.region(0, 0);

    // For each closed component, check its surrounding region: the gap
    // just left of its first slice.
    let mut extract: Vec<usize> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for k in 0..n {
        let c = comp[k];
        if is_open[k] || !seen.insert(c) {
            continue;
        }
        let first = (0..n).find(|&j| comp[j] == c).unwrap();
        let gap = d.slices()[first].offset as usize;
        if regions.region(first, gap) == outer {
            extract.push(c);
        }
    }
    if extract.is_empty() {
        return (Vec::new(), d.clone());
    }

    // Rebuild: walk the slices, tracking per-wire component ownership,
    // and emit extracted components separately with recomputed offsets.
    #[derive(Clone, Copy, PartialEq)]
    enum Owner {
        Rest,
        Comp(usize),
    }
    let mut live: Vec<Owner> = vec![Owner::Rest; d.source().len()];
    let mut rest_slices: Vec<Slice> = Vec::new();
    let mut comp_slices: std::collections::BTreeMap<usize, Vec<Slice>> = Default::default();
    for (k, s) in d.slices().iter().enumerate() {
        let (gsrc, gtgt) = sig.two_boundary(s.gen);
        let off = s.offset as usize;
        let owner = if extract.contains(&comp[k]) {
            Owner::Comp(comp[k])
        } else {
            Owner::Rest
        };
        let my_offset = match owner {
            Owner::Rest => live[..off].iter().filter(|w| matches!(w, Owner::Rest)).count(),
            Owner::Comp(c) => live[..off]
                .iter()
                .filter(|w| matches!(w, Owner::Comp(c2) if *c2 == c))
                .count(),
        };
        match owner {
            Owner::Rest => rest_slices.push(Slice { offset: my_offset as u16, gen: s.gen }),
            Owner::Comp(c) => comp_slices
                .entry(c)
                .or_default()
                .push(Slice { offset: my_offset as u16, gen: s.gen }),
        }
        let mut new_live = Vec::with_capacity(live.len() - gsrc.len() + gtgt.len());
        new_live.extend_from_slice(&live[..off]);
        new_live.extend(std::iter::repeat(owner).take(gtgt.len()));
        new_live.extend_from_slice(&live[off + gsrc.len()..]);
        live = new_live;
    }
    let Ok(rest) = Diagram::from_slices(&sig, d.source().clone(), rest_slices) else {
        return (Vec::new(), d.clone());
    };
    let mut comps = Vec::new();
    for slices in comp_slices.into_values() {
        let at = sig.two_boundary(slices[0].gen).0.source_cell();
        let empty = crate::diagram::Word::identity(at);
        match Diagram::from_slices(&sig, empty, slices) {
            Ok(c) => comps.push(c),
            Err(_) => return (Vec::new(), d.clone()),
        }
    }
    comps.sort();
    (comps, rest)
}

/// Canonical position for outer closed components: sorted and stacked
/// first, at the far left.
pub fn relocate_closed_components(d: &Diagram) -> Diagram {
    let (comps, rest) = closed_components(d);
    if comps.is_empty() {
        return d.clone();
    }
    let sig = d.signature().clone();
    let mut acc_slices: Vec<Slice> = Vec::new();
    for c in &comps {
        acc_slices.extend_from_slice(c.slices());
    }
    acc_slices.extend_from_slice(rest.slices());
    Diagram::from_slices(&sig, rest.source().clone(), acc_slices).unwrap_or_else(|_| d.clone())
}

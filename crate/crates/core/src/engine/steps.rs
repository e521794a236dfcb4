//! Rewriting-step enumeration and application.

use super::{EngineError, PolygraphModulo, RewriteMode, Rule};
use crate::diagram::{find_matches, plug, plug_lincomb, Context, Diagram};
use crate::lincomb::{LinComb, Scalar};
use std::collections::BTreeMap;

/// One signed structural move inside a zigzag: `from` rewrites to `to`
/// by `rule`, applied forwards or backwards.
#[derive(Clone, Debug)]
pub struct EStep {
    pub rule: String,
    pub forward: bool,
    pub from: Diagram,
    pub to: Diagram,
}

/// One positive rewrite of a linear combination.
#[derive(Clone, Debug)]
pub struct RewriteStep {
    pub mode: RewriteMode,
    /// The support monomial being rewritten.
    pub redex: Diagram,
    pub coeff: Scalar,
    /// Signed structural zigzag carrying the redex to the matched
    /// representative (empty in mode `R`).
    pub e_pre: Vec<EStep>,
    /// Match of the rule source inside the zigzag's endpoint.
    pub context: Context,
    pub rule_name: String,
    /// The rule carried along for application (schema instances are not
    /// stored in the polygraph's rule list).
    pub rule: Rule,
    /// Whether the result is structurally normalized (`ERE`).
    pub e_post: bool,
}

impl RewriteStep {
    /// The monomial the rule source was matched in.
    pub fn matched_monomial(&self) -> Diagram {
        match self.e_pre.last() {
            Some(e) => e.to.clone(),
            None => self.redex.clone(),
        }
    }

    pub fn describe(&self) -> String {
        let z = if self.e_pre.is_empty() {
            String::new()
        } else {
            let names: Vec<String> = self
                .e_pre
                .iter()
                .map(|e| {
                    if e.forward {
                        e.rule.clone()
                    } else {
                        format!("{}^-", e.rule)
                    }
                })
                .collect();
            format!("{} . ", names.join(" . "))
        };
        format!("{}{}", z, self.rule_name)
    }
}

/// All monomials reachable from `m` by a signed structural zigzag of
/// length at most `depth`, with a shortest witnessing path each, in a
/// deterministic (breadth-first, canonical-order) enumeration.
pub fn e_reachable(
    m: &Diagram,
    p: &PolygraphModulo,
    depth: usize,
) -> Vec<(Diagram, Vec<EStep>)> {
    let mut paths: BTreeMap<Diagram, Vec<EStep>> = BTreeMap::new();
    paths.insert(m.clone(), Vec::new());
    let mut frontier = vec![m.clone()];
    let e_rules: Vec<&Rule> = p.modulo_rules().collect();
    let reversed: Vec<Option<Rule>> = e_rules.iter().map(|r| r.reversed()).collect();
    for _ in 0..depth {
        let mut next_frontier = Vec::new();
        for cur in &frontier {
            let push = |rule_name: &str, forward: bool, target: Diagram, paths: &mut BTreeMap<Diagram, Vec<EStep>>, nf: &mut Vec<Diagram>, cur: &Diagram| {
                if !paths.contains_key(&target) {
                    let mut path = paths[cur].clone();
                    path.push(EStep {
                        rule: rule_name.to_string(),
                        forward,
                        from: cur.clone(),
                        to: target.clone(),
                    });
                    paths.insert(target.clone(), path);
                    nf.push(target);
                }
            };
            for (k, r) in e_rules.iter().enumerate() {
                for ctx in find_matches(&r.source, cur) {
                    // Structural rules are monomial-to-monomial.
                    if let Some((tmono, _)) = single_monomial(&r.target) {
                        if let Ok(t) = plug(&ctx, &tmono) {
                            push(&r.name, true, t, &mut paths, &mut next_frontier, cur);
                        }
                    }
                }
                if let Some(rev) = &reversed[k] {
                    for ctx in find_matches(&rev.source, cur) {
                        if let Some((tmono, _)) = single_monomial(&rev.target) {
                            if let Ok(t) = plug(&ctx, &tmono) {
                                push(&r.name, false, t, &mut paths, &mut next_frontier, cur);
                            }
                        }
                    }
                }
            }
        }
        if next_frontier.is_empty() {
            break;
        }
        next_frontier.sort();
        next_frontier.dedup();
        frontier = next_frontier;
    }
    // Deterministic order: by path length, then by canonical monomial.
    let mut out: Vec<(Diagram, Vec<EStep>)> = paths.into_iter().collect();
    out.sort_by(|a, b| a.1.len().cmp(&b.1.len()).then_with(|| a.0.cmp(&b.0)));
    out
}

fn single_monomial(u: &LinComb) -> Option<(Diagram, Scalar)> {
    let mut it = u.terms();
    let (d, c) = it.next()?;
    if it.next().is_some() {
        return None;
    }
    Some((d.clone(), c.clone()))
}

/// Enumerates every rewriting step of `u` in the given mode, in a fixed
/// deterministic order (term order, then rule declaration order, then
/// zigzag order, then context order).
pub fn enumerate_steps(u: &LinComb, p: &PolygraphModulo, mode: RewriteMode) -> Vec<RewriteStep> {
    let rules = p.effective_primary();
    let depth = match mode {
        RewriteMode::R => 0,
        _ => p.e_depth,
    };
    let mut out = Vec::new();
    for (m, coeff) in u.terms() {
        let reps = e_reachable(m, p, depth);
        for rule in &rules {
            for (rep, path) in &reps {
                for ctx in find_matches(&rule.source, rep) {
                    out.push(RewriteStep {
                        mode,
                        redex: m.clone(),
                        coeff: coeff.clone(),
                        e_pre: path.clone(),
                        context: ctx,
                        rule_name: rule.name.clone(),
                        rule: rule.clone(),
                        e_post: mode == RewriteMode::ERE,
                    });
                }
            }
        }
    }
    out
}

/// Applies one step: `u = λ·redex + h` becomes `λ·C[target] + h`
/// (transported through the zigzag), normalized for `ERE`.
pub fn apply_step(u: &LinComb, s: &RewriteStep, p: &PolygraphModulo) -> Result<LinComb, EngineError> {
    let coeff = u.coeff(&s.redex);
    if coeff == crate::lincomb::scalar_int(0) {
        return Err(EngineError::StaleStep);
    }
    let replaced = plug_lincomb(&s.context, &s.rule.target)?;
    let mut v = u.clone();
    v.add_term(s.redex.clone(), -coeff.clone());
    let v = v.add(&replaced.scale(&coeff))?;
    if s.e_post {
        return super::e_normal_form(&v, p);
    }
    Ok(v)
}

/// Applies the formal inverse of a step: the inverse 3-cell replaces the
/// rewritten occurrence back by the rule source.
pub fn apply_inverse(
    v: &LinComb,
    s: &RewriteStep,
    coeff: &Scalar,
    p: &PolygraphModulo,
) -> Result<LinComb, EngineError> {
    let _ = p;
    let replaced = plug_lincomb(&s.context, &s.rule.target)?;
    let mut u = v.sub(&replaced.scale(coeff))?;
    u.add_term(s.redex.clone(), coeff.clone());
    Ok(u)
}

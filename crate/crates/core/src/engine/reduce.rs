//! Strategy-driven reduction, cycle detection and quasi-normal-form
//! reduction.

use super::steps::{apply_step, enumerate_steps, RewriteStep};
use super::{EngineError, PolygraphModulo, RewriteMode};
use crate::diagram::{Diagram, GenId};
use crate::lincomb::LinComb;
use std::collections::{BTreeMap, BTreeSet};

/// Additive weight function on diagrams, given by its values on the
/// generating 2-cells; on linear combinations it takes the maximum over
/// the support.
#[derive(Clone, Debug, Default)]
pub struct WeightFn {
    weights: BTreeMap<GenId, u64>,
}

impl WeightFn {
    pub fn new(weights: BTreeMap<GenId, u64>) -> Self {
        WeightFn { weights }
    }

    pub fn of_diagram(&self, d: &Diagram) -> u64 {
        d.slices().iter().map(|s| self.weights.get(&s.gen).copied().unwrap_or(0)).sum()
    }

    pub fn of_lincomb(&self, u: &LinComb) -> u64 {
        u.support().map(|m| self.of_diagram(m)).max().unwrap_or(0)
    }
}

/// Marks the rule families whose steps only shuffle material around
/// cycles (the derived sliding families); quasi-normal-form reduction
/// refuses to take them.
#[derive(Clone, Debug, Default)]
pub struct QuasiGuard {
    cycle_families: BTreeSet<String>,
}

impl QuasiGuard {
    pub fn new(cycle_families: impl IntoIterator<Item = String>) -> Self {
        QuasiGuard { cycle_families: cycle_families.into_iter().collect() }
    }

    /// True when the step belongs to a cycle-generating family.
    pub fn is_cycle_step(&self, step: &RewriteStep) -> bool {
        let base = step.rule_name.split('[').next().unwrap_or(&step.rule_name);
        self.cycle_families.contains(base)
    }

    pub fn families(&self) -> impl Iterator<Item = &String> {
        self.cycle_families.iter()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Deterministic canonical strategy: first term, first rule, first
    /// context.
    First,
    /// The mirror strategy, used for independence checks.
    Last,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReduceStatus {
    NormalForm,
    StepBudgetHit,
    CycleDetected { witness: LinComb },
}

#[derive(Debug)]
pub struct ReduceResult {
    pub final_: LinComb,
    pub trace: Vec<RewriteStep>,
    pub status: ReduceStatus,
}

/// Repeatedly applies the strategy-selected step until none applies, the
/// budget is hit, or a previously seen combination recurs.
pub fn reduce(
    u: &LinComb,
    p: &PolygraphModulo,
    mode: RewriteMode,
    strategy: Strategy,
    max_steps: usize,
) -> Result<ReduceResult, EngineError> {
    let mut cur = u.clone();
    let mut trace = Vec::new();
    let mut seen: BTreeSet<LinComb> = BTreeSet::new();
    seen.insert(cur.clone());
    loop {
        if trace.len() >= max_steps {
            return Ok(ReduceResult { final_: cur, trace, status: ReduceStatus::StepBudgetHit });
        }
        let steps = enumerate_steps(&cur, p, mode);
        let step = match strategy {
            Strategy::First => steps.first(),
            Strategy::Last => steps.last(),
        };
        let Some(step) = step else {
            return Ok(ReduceResult { final_: cur, trace, status: ReduceStatus::NormalForm });
        };
        let next = apply_step(&cur, step, p)?;
        trace.push(step.clone());
        if !seen.insert(next.clone()) {
            return Ok(ReduceResult {
                final_: next.clone(),
                trace,
                status: ReduceStatus::CycleDetected { witness: next },
            });
        }
        cur = next;
    }
}

/// Quasi-normal-form reduction: a first phase greedily decreases the
/// weight, a second phase takes any non-cycle step that does not revisit
/// a known combination. The result's support monomials admit only
/// cycle-family steps.
pub fn qnf_reduce(
    u: &LinComb,
    p: &PolygraphModulo,
    tau: &WeightFn,
    guard: &QuasiGuard,
    max_steps: usize,
) -> Result<ReduceResult, EngineError> {
    let mut cur = u.clone();
    let mut trace: Vec<RewriteStep> = Vec::new();

    // Phase 1: strict weight descent.
    loop {
        if trace.len() >= max_steps {
            return Ok(ReduceResult { final_: cur, trace, status: ReduceStatus::StepBudgetHit });
        }
        let w = tau.of_lincomb(&cur);
        let steps = enumerate_steps(&cur, p, RewriteMode::ER);
        let mut taken = false;
        for s in &steps {
            let next = apply_step(&cur, s, p)?;
            if tau.of_lincomb(&next) < w {
                trace.push(s.clone());
                cur = next;
                taken = true;
                break;
            }
        }
        if !taken {
            break;
        }
    }

    // Phase 2: any non-cycle step avoiding revisits.
    let mut visited: BTreeSet<LinComb> = BTreeSet::new();
    visited.insert(cur.clone());
    loop {
        if trace.len() >= max_steps {
            return Ok(ReduceResult { final_: cur, trace, status: ReduceStatus::StepBudgetHit });
        }
        let steps = enumerate_steps(&cur, p, RewriteMode::ER);
        let mut taken = false;
        for s in &steps {
            if guard.is_cycle_step(s) {
                continue;
            }
            let next = apply_step(&cur, s, p)?;
            if visited.contains(&next) {
                continue;
            }
            visited.insert(next.clone());
            trace.push(s.clone());
            cur = next;
            taken = true;
            break;
        }
        if !taken {
            return Ok(ReduceResult { final_: cur, trace, status: ReduceStatus::NormalForm });
        }
    }
}

/// The quasi-reduced predicate: every available modulo-step on the
/// monomial comes from a cycle family.
pub fn quasi_reduced(m: &Diagram, p: &PolygraphModulo, guard: &QuasiGuard) -> bool {
    let u = LinComb::monomial(m.clone());
    enumerate_steps(&u, p, RewriteMode::ER).iter().all(|s| guard.is_cycle_step(s))
}

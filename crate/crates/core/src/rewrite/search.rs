//! Bounded bidirectional breadth-first search over canonical combinations.
//!
//! Each round expands one whole level of the side with the smaller frontier
//! (the forward side on ties). Successors of a chunk of frontier states are
//! computed in parallel and merged sequentially in frontier order, so the
//! seen-sets and the returned trace do not depend on the worker count. Among
//! the meeting states discovered in a level the shortest total path wins,
//! first discovered on ties.

use std::collections::HashMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::trace::{ProofTrace, TraceStep};
use super::{find_occurrences, rewrite_at, Direction, LinComb, Position, RewriteError};
use crate::diagram::canon::consumer_table;
use crate::diagram::Diagram;
use crate::theories::Theory;

const CHUNK: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_states: usize,
    pub max_depth: usize,
    pub time_limit: Duration,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_states: 1_000_000, max_depth: 12, time_limit: Duration::from_secs(60) }
    }
}

impl SearchBudget {
    pub fn new(max_states: usize, max_depth: usize, time_limit: Duration) -> Result<Self, RewriteError> {
        if max_states == 0 || max_depth == 0 || time_limit.is_zero() {
            return Err(RewriteError::Budget("all budget components must be positive".into()));
        }
        Ok(SearchBudget { max_states, max_depth, time_limit })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exhaustion {
    States,
    Depth,
    Time,
    /// Both frontiers emptied: the reachable sets are finite and disjoint.
    Frontier,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchStats {
    pub states: usize,
    pub depth: usize,
    pub elapsed: Duration,
    pub exhausted: Option<Exhaustion>,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub trace: Option<ProofTrace>,
    pub stats: SearchStats,
}

/// Searches for a derivation of `rhs` from `lhs`. Running out of budget is
/// `Ok(None)`, not an error.
pub fn prove_equal(
    lhs: &Diagram,
    rhs: &Diagram,
    theory: &Theory,
    budget: &SearchBudget,
) -> Result<Option<ProofTrace>, RewriteError> {
    Ok(search(&lhs.clone().into(), &rhs.clone().into(), theory, budget)?.trace)
}

#[derive(Clone, Debug)]
struct Link {
    rule: u32,
    dir: Direction,
    pos: Position,
    inverse: Option<Position>,
}

struct Succ {
    link: Link,
    result: LinComb,
}

#[derive(Default)]
struct Side {
    states: Vec<Arc<LinComb>>,
    parent: Vec<Option<(u32, Link)>>,
    depth: Vec<u32>,
    index: HashMap<Arc<LinComb>, u32>,
    frontier: Vec<u32>,
    level: u32,
}

impl Side {
    fn rooted(root: LinComb) -> Side {
        let root = Arc::new(root);
        let mut side = Side::default();
        side.index.insert(root.clone(), 0);
        side.states.push(root);
        side.parent.push(None);
        side.depth.push(0);
        side.frontier.push(0);
        side
    }

    /// Path from the root: (state index, link that produced it).
    fn path_to(&self, mut i: u32) -> Vec<(u32, Link, u32)> {
        let mut out = Vec::new();
        while let Some((p, link)) = &self.parent[i as usize] {
            out.push((*p, link.clone(), i));
            i = *p;
        }
        out.reverse();
        out
    }
}

pub fn search(lhs: &LinComb, rhs: &LinComb, theory: &Theory, budget: &SearchBudget) -> Result<SearchOutcome, RewriteError> {
    if lhs.arity() != rhs.arity() {
        return Err(RewriteError::ArityMismatch { lhs: lhs.arity(), rhs: rhs.arity() });
    }
    let start = Instant::now();
    let lhs = lhs.clone().truncated(theory.truncation);
    let rhs = rhs.clone().truncated(theory.truncation);
    let mut fwd = Side::rooted(lhs.clone());
    let mut bwd = Side::rooted(rhs.clone());
    let stats = |fwd: &Side, bwd: &Side, exhausted| SearchStats {
        states: fwd.states.len() + bwd.states.len(),
        depth: (fwd.level + bwd.level) as usize,
        elapsed: start.elapsed(),
        exhausted,
    };
    if lhs == rhs {
        let trace = ProofTrace { theory: theory.name.clone(), lhs, rhs, steps: Vec::new() };
        return Ok(SearchOutcome { trace: Some(trace), stats: stats(&fwd, &bwd, None) });
    }
    loop {
        if fwd.frontier.is_empty() && bwd.frontier.is_empty() {
            return Ok(SearchOutcome { trace: None, stats: stats(&fwd, &bwd, Some(Exhaustion::Frontier)) });
        }
        if (fwd.level + bwd.level) as usize >= budget.max_depth {
            return Ok(SearchOutcome { trace: None, stats: stats(&fwd, &bwd, Some(Exhaustion::Depth)) });
        }
        let forward = !fwd.frontier.is_empty() && (bwd.frontier.is_empty() || fwd.frontier.len() <= bwd.frontier.len());
        let (this, other) = if forward { (&mut fwd, &bwd) } else { (&mut bwd, &fwd) };
        let (meet, stop) = expand_level(this, other, !forward, theory, budget, start);
        if let Some((i, j)) = meet {
            let (fi, bi) = if forward { (i, j) } else { (j, i) };
            let trace = build_trace(&fwd, &bwd, fi, bi, theory, lhs, rhs);
            return Ok(SearchOutcome { trace: Some(trace), stats: stats(&fwd, &bwd, None) });
        }
        if let Some(reason) = stop {
            return Ok(SearchOutcome { trace: None, stats: stats(&fwd, &bwd, Some(reason)) });
        }
    }
}

/// Expands one level. Returns the best meeting (index on this side, index on
/// the other side) and a budget stop reason, if any.
fn expand_level(
    this: &mut Side,
    other: &Side,
    backward: bool,
    theory: &Theory,
    budget: &SearchBudget,
    start: Instant,
) -> (Option<(u32, u32)>, Option<Exhaustion>) {
    let frontier = std::mem::take(&mut this.frontier);
    let mut next = Vec::new();
    let mut best: Option<(u32, u32, u32)> = None;
    let mut stop = None;
    'chunks: for chunk in frontier.chunks(CHUNK) {
        if start.elapsed() > budget.time_limit {
            stop = Some(Exhaustion::Time);
            break;
        }
        let expanded: Vec<Vec<Succ>> =
            chunk.par_iter().map(|&i| successors(&this.states[i as usize], theory, backward)).collect();
        for (&parent, succs) in chunk.iter().zip(expanded) {
            for s in succs {
                if this.index.contains_key(&s.result) {
                    continue;
                }
                let idx = this.states.len() as u32;
                let state = Arc::new(s.result);
                this.index.insert(state.clone(), idx);
                if let Some(&j) = other.index.get(&state) {
                    let total = this.level + 1 + other.depth[j as usize];
                    if best.is_none_or(|(t, _, _)| total < t) {
                        best = Some((total, idx, j));
                    }
                }
                this.states.push(state);
                this.parent.push(Some((parent, s.link)));
                this.depth.push(this.level + 1);
                next.push(idx);
                if this.states.len() + other.states.len() >= budget.max_states {
                    stop = Some(Exhaustion::States);
                    break 'chunks;
                }
            }
        }
    }
    this.frontier = next;
    this.level += 1;
    (best.map(|(_, i, j)| (i, j)), stop)
}

/// All one-step rewrites of `state`, ordered by rule name, direction, term
/// and occurrence. On the backward side only steps with a verified inverse
/// are kept, since the trace walks them in reverse.
fn successors(state: &LinComb, theory: &Theory, backward: bool) -> Vec<Succ> {
    let mut out = Vec::new();
    let tables: Vec<_> = state.terms().iter().map(|t| consumer_table(&t.diagram)).collect();
    for (ri, rule) in theory.rules().iter().enumerate() {
        let multi = rule.lhs.terms().len() > 1 || rule.rhs.terms().len() > 1;
        for dir in [Direction::Fwd, Direction::Bwd] {
            let anchor = &rule.sides(dir).0.terms()[0].diagram;
            for (term, t) in state.terms().iter().enumerate() {
                let mut occs = Vec::new();
                super::matching::find_with(anchor, &t.diagram, &tables[term], &mut occs);
                occs.sort();
                for occ in occs {
                    let Some((result, inverse)) = rewrite_at(state, rule, dir, term, &occ, theory.truncation) else {
                        continue;
                    };
                    if result == *state || result.max_width() > theory.max_wires {
                        continue;
                    }
                    if backward {
                        let Some(inv) = &inverse else { continue };
                        let needs_check = multi || state.terms().len() > 1 || result.terms().len() > 1;
                        if needs_check && !inverse_ok(&result, rule, dir.reversed(), inv, state, theory) {
                            continue;
                        }
                    }
                    let link = Link { rule: ri as u32, dir, pos: Position { term, occ }, inverse };
                    out.push(Succ { link, result });
                }
            }
        }
    }
    out
}

fn inverse_ok(
    from: &LinComb,
    rule: &super::RewriteRule,
    dir: Direction,
    pos: &Position,
    expect: &LinComb,
    theory: &Theory,
) -> bool {
    let anchor = &rule.sides(dir).0.terms()[0].diagram;
    let Some(t) = from.terms().get(pos.term) else { return false };
    find_occurrences(anchor, &t.diagram).contains(&pos.occ)
        && rewrite_at(from, rule, dir, pos.term, &pos.occ, theory.truncation).is_some_and(|(r, _)| r == *expect)
}

fn build_trace(fwd: &Side, bwd: &Side, fi: u32, bi: u32, theory: &Theory, lhs: LinComb, rhs: LinComb) -> ProofTrace {
    let mut steps = Vec::new();
    for (_, link, child) in fwd.path_to(fi) {
        steps.push(TraceStep {
            rule: theory.rules()[link.rule as usize].name.clone(),
            dir: link.dir,
            position: link.pos,
            result: (*fwd.states[child as usize]).clone(),
        });
    }
    let mut back = bwd.path_to(bi);
    back.reverse();
    for (parent, link, _) in back {
        steps.push(TraceStep {
            rule: theory.rules()[link.rule as usize].name.clone(),
            dir: link.dir.reversed(),
            position: link.inverse.expect("backward links carry an inverse"),
            result: (*bwd.states[parent as usize]).clone(),
        });
    }
    ProofTrace { theory: theory.name.clone(), lhs, rhs, steps }
}

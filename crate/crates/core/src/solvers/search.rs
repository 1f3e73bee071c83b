//! Branch and bound over dominators.
//!
//! Each node picks the undominated vertex with the fewest admissible
//! dominators (ties to the smallest id) and branches on those dominators in
//! ascending order. A dominator tried in one branch is forbidden in its later
//! siblings, so every set is reached along exactly one path; that is what
//! makes the enumeration mode exact. In independent mode a dominator must lie
//! outside `N[chosen]`, so every leaf is a maximal independent set.

use std::time::Instant;

use super::{SolveBudget, SolveError};
use crate::bitset::{Bits, MAX_SEARCH_VERTICES};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug)]
pub(super) enum Mode {
    Optimize { independent: bool },
    Enumerate { independent: bool, target: usize },
}

pub(super) struct Outcome {
    pub best: Option<Vec<usize>>,
    pub all: Vec<Vec<usize>>,
    pub nodes: u64,
}

pub(super) fn run(g: &Graph, mode: Mode, budget: &SolveBudget) -> Result<Outcome, SolveError> {
    let n = g.n();
    if n == 0 {
        return Err(SolveError::EmptyGraph);
    }
    match n {
        0..=64 => Search::<1>::new(g, mode, budget).run(),
        65..=128 => Search::<2>::new(g, mode, budget).run(),
        129..=256 => Search::<4>::new(g, mode, budget).run(),
        257..=MAX_SEARCH_VERTICES => Search::<16>::new(g, mode, budget).run(),
        _ => Err(SolveError::TooLarge {
            n,
            max: MAX_SEARCH_VERTICES,
        }),
    }
}

struct Search<const W: usize> {
    closed: Vec<Bits<W>>,
    full: Bits<W>,
    independent: bool,
    target: Option<usize>,
    best: Option<Bits<W>>,
    best_size: usize,
    all: Vec<Bits<W>>,
    nodes: u64,
    budget: SolveBudget,
    started: Instant,
}

impl<const W: usize> Search<W> {
    fn new(g: &Graph, mode: Mode, budget: &SolveBudget) -> Self {
        let (independent, target) = match mode {
            Mode::Optimize { independent } => (independent, None),
            Mode::Enumerate { independent, target } => (independent, Some(target)),
        };
        Search {
            closed: g.closed_rows::<W>(),
            full: Bits::prefix(g.n()),
            independent,
            target,
            best: None,
            best_size: g.n() + 1,
            all: Vec::new(),
            nodes: 0,
            budget: *budget,
            started: Instant::now(),
        }
    }

    fn run(mut self) -> Result<Outcome, SolveError> {
        self.go(Bits::empty(), Bits::empty(), Bits::empty(), 0)?;
        Ok(Outcome {
            best: self.best.map(|b| b.iter().collect()),
            all: self.all.iter().map(|b| b.iter().collect()).collect(),
            nodes: self.nodes,
        })
    }

    fn tick(&mut self) -> Result<(), SolveError> {
        self.nodes += 1;
        let over_time = self.nodes.is_multiple_of(4096) && self.started.elapsed() > self.budget.time_limit;
        if self.nodes > self.budget.node_limit || over_time {
            return Err(SolveError::BudgetExhausted { nodes: self.nodes });
        }
        Ok(())
    }

    /// Largest size a useful solution may still have.
    fn size_limit(&self) -> usize {
        match self.target {
            Some(t) => t,
            None => self.best_size - 1,
        }
    }

    fn go(&mut self, chosen: Bits<W>, dominated: Bits<W>, forbidden: Bits<W>, size: usize) -> Result<(), SolveError> {
        self.tick()?;
        let undominated = self.full.difference(&dominated);
        if undominated.is_empty() {
            match self.target {
                Some(t) if size == t => self.all.push(chosen),
                Some(_) => {}
                None if size < self.best_size => {
                    self.best = Some(chosen);
                    self.best_size = size;
                }
                None => {}
            }
            return Ok(());
        }
        let limit = self.size_limit();
        if size >= limit {
            return Ok(());
        }
        let mut allowed = self.full.difference(&forbidden);
        if self.independent {
            allowed = allowed.difference(&dominated);
        }

        // Branch vertex plus a packing bound: undominated vertices with
        // pairwise disjoint candidate sets need distinct dominators.
        let mut branch: Option<(usize, usize)> = None;
        let mut packed = Bits::<W>::empty();
        let mut packing = 0usize;
        for v in undominated.iter() {
            let cands = self.closed[v].intersection(&allowed);
            let k = cands.len();
            if k == 0 {
                return Ok(());
            }
            if branch.is_none_or(|(_, best)| k < best) {
                branch = Some((v, k));
            }
            if !cands.intersects(&packed) {
                packing += 1;
                packed = packed.union(&cands);
            }
        }
        let max_cover = allowed
            .iter()
            .map(|u| self.closed[u].intersection(&undominated).len())
            .max()
            .unwrap_or(0);
        let cover_bound = undominated.len().div_ceil(max_cover.max(1));
        if size + packing.max(cover_bound) > limit {
            return Ok(());
        }

        let (v, _) = branch.expect("undominated set is nonempty");
        let cands = self.closed[v].intersection(&allowed);
        let mut forbidden = forbidden;
        for u in cands.iter() {
            self.go(chosen.with(u), dominated.union(&self.closed[u]), forbidden, size + 1)?;
            forbidden.insert(u);
        }
        Ok(())
    }
}

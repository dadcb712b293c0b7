//! Depth-first branch and bound shared by the exact solvers.
//!
//! The incumbent is replaced only by strictly better solutions, so a
//! sequential run returns the first optimal node in depth-first preorder (or
//! the initial incumbent if that is already optimal). The parallel mode cuts
//! the tree at a fixed depth, solves every subtree independently against the
//! initial incumbent, and scans the results in preorder with the same strict
//! rule, which yields the identical value and witness.

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Shared flag for stopping a long search from another thread.
#[derive(Debug, Clone, Default)]
pub struct CancelToken(Arc<AtomicBool>);

impl CancelToken {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cancel(&self) {
        self.0.store(true, Ordering::Relaxed);
    }

    pub fn is_cancelled(&self) -> bool {
        self.0.load(Ordering::Relaxed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Sense {
    Minimize,
    Maximize,
}

impl Sense {
    fn improves(self, candidate: usize, incumbent: usize) -> bool {
        match self {
            Sense::Minimize => candidate < incumbent,
            Sense::Maximize => candidate > incumbent,
        }
    }
}

pub(crate) trait BranchProblem: Sync {
    type State: Clone + Send + Sync;

    fn sense(&self) -> Sense;
    fn root(&self) -> Self::State;
    /// Objective value when the node is itself a feasible solution.
    fn evaluate(&self, state: &Self::State) -> Option<usize>;
    fn witness(&self, state: &Self::State) -> Vec<usize>;
    /// True when no descendant can strictly beat `incumbent`.
    fn prune(&self, state: &Self::State, incumbent: usize) -> bool;
    /// Children in branching order.
    fn children(&self, state: &Self::State) -> Vec<Self::State>;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Incumbent {
    pub value: usize,
    pub witness: Vec<usize>,
}

pub(crate) struct Outcome {
    pub best: Incumbent,
    pub nodes: u64,
}

pub(crate) fn solve<P: BranchProblem>(
    problem: &P,
    initial: Incumbent,
    threads: usize,
    cancel: Option<&CancelToken>,
) -> Result<Outcome> {
    if threads <= 1 {
        let mut best = initial;
        let mut nodes = 0;
        dfs(problem, &problem.root(), &mut best, &mut nodes, cancel)?;
        return Ok(Outcome { best, nodes });
    }

    let mut items = Vec::new();
    let mut frontier_nodes = 0;
    let target = threads * 8;
    for depth in 1..=16 {
        items.clear();
        frontier_nodes = 0;
        frontier(problem, problem.root(), depth, &mut items, &mut frontier_nodes);
        if items.len() >= target {
            break;
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    let results: Vec<Result<(Option<Incumbent>, u64)>> = pool.install(|| {
        items
            .par_iter()
            .map(|item| match item {
                Item::Candidate(inc) => Ok((Some(inc.clone()), 0)),
                Item::Subtree(state) => {
                    let mut best = initial.clone();
                    let mut nodes = 0;
                    dfs(problem, state, &mut best, &mut nodes, cancel)?;
                    Ok((Some(best), nodes))
                }
            })
            .collect()
    });

    let mut best = initial;
    let mut nodes = frontier_nodes;
    for r in results {
        let (found, n) = r?;
        nodes += n;
        if let Some(found) = found {
            if problem.sense().improves(found.value, best.value) {
                best = found;
            }
        }
    }
    Ok(Outcome { best, nodes })
}

enum Item<S> {
    Candidate(Incumbent),
    Subtree(S),
}

fn frontier<P: BranchProblem>(
    problem: &P,
    state: P::State,
    depth: usize,
    out: &mut Vec<Item<P::State>>,
    nodes: &mut u64,
) {
    let children = if depth == 0 {
        Vec::new()
    } else {
        problem.children(&state)
    };
    if children.is_empty() {
        out.push(Item::Subtree(state));
        return;
    }
    *nodes += 1;
    if let Some(value) = problem.evaluate(&state) {
        out.push(Item::Candidate(Incumbent {
            value,
            witness: problem.witness(&state),
        }));
    }
    for child in children {
        frontier(problem, child, depth - 1, out, nodes);
    }
}

fn dfs<P: BranchProblem>(
    problem: &P,
    state: &P::State,
    best: &mut Incumbent,
    nodes: &mut u64,
    cancel: Option<&CancelToken>,
) -> Result<()> {
    *nodes += 1;
    if cancel.is_some_and(CancelToken::is_cancelled) {
        return Err(Error::Cancelled);
    }
    if let Some(value) = problem.evaluate(state) {
        if problem.sense().improves(value, best.value) {
            *best = Incumbent {
                value,
                witness: problem.witness(state),
            };
        }
    }
    if problem.prune(state, best.value) {
        return Ok(());
    }
    for child in problem.children(state) {
        dfs(problem, &child, best, nodes, cancel)?;
    }
    Ok(())
}

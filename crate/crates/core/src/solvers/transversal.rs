use crate::bitset::BitSet;
use crate::system::LinearSystem;

use super::engine::{BranchProblem, Sense};

/// Minimum hitting set of the lines.
pub(crate) struct Transversal {
    line_masks: Vec<BitSet>,
    /// Lines through each point.
    point_lines: Vec<BitSet>,
    num_points: usize,
}

#[derive(Clone)]
pub(crate) struct TransversalState {
    chosen: Vec<usize>,
    /// Points that may still be chosen.
    available: BitSet,
    uncovered: BitSet,
}

impl Transversal {
    pub fn new(sys: &LinearSystem) -> Self {
        let m = sys.num_lines();
        Self {
            line_masks: sys.line_masks().to_vec(),
            point_lines: sys
                .incidence()
                .into_iter()
                .map(|ls| BitSet::from_indices(m, ls))
                .collect(),
            num_points: sys.num_points(),
        }
    }

    /// Size of a greedily built set of uncovered lines that are pairwise
    /// disjoint on the available points, or `None` if some uncovered line has
    /// no available point left.
    fn matching_bound(&self, s: &TransversalState) -> Option<usize> {
        let mut used = BitSet::new(self.num_points);
        let mut count = 0;
        for l in s.uncovered.iter() {
            let mut residual = self.line_masks[l].clone();
            residual.intersect_with(&s.available);
            if residual.is_empty() {
                return None;
            }
            if !residual.intersects(&used) {
                used.union_with(&residual);
                count += 1;
            }
        }
        Some(count)
    }
}

impl BranchProblem for Transversal {
    type State = TransversalState;

    fn sense(&self) -> Sense {
        Sense::Minimize
    }

    fn root(&self) -> TransversalState {
        TransversalState {
            chosen: Vec::new(),
            available: BitSet::full(self.num_points),
            uncovered: BitSet::full(self.line_masks.len()),
        }
    }

    fn evaluate(&self, s: &TransversalState) -> Option<usize> {
        s.uncovered.is_empty().then_some(s.chosen.len())
    }

    fn witness(&self, s: &TransversalState) -> Vec<usize> {
        let mut w = s.chosen.clone();
        w.sort_unstable();
        w
    }

    fn prune(&self, s: &TransversalState, incumbent: usize) -> bool {
        match self.matching_bound(s) {
            Some(lb) => s.chosen.len() + lb >= incumbent,
            None => true,
        }
    }

    fn children(&self, s: &TransversalState) -> Vec<TransversalState> {
        // Uncovered line with the fewest available points, lowest index first.
        let Some((_, residual)) = s
            .uncovered
            .iter()
            .map(|l| {
                let mut r = self.line_masks[l].clone();
                r.intersect_with(&s.available);
                (r.len(), r)
            })
            .min_by_key(|(len, _)| *len)
        else {
            return Vec::new();
        };
        let mut available = s.available.clone();
        let mut out = Vec::with_capacity(residual.len());
        for p in residual.iter() {
            available.remove(p);
            let mut chosen = s.chosen.clone();
            chosen.push(p);
            let mut uncovered = s.uncovered.clone();
            uncovered.difference_with(&self.point_lines[p]);
            out.push(TransversalState {
                chosen,
                available: available.clone(),
                uncovered,
            });
        }
        out
    }
}

/// Repeatedly takes the point on the most uncovered lines (lowest index on
/// ties) until every line is hit.
pub fn greedy_transversal(sys: &LinearSystem) -> Vec<usize> {
    let inc = sys.incidence();
    let mut covered = vec![false; sys.num_lines()];
    let mut remaining = sys.num_lines();
    let mut chosen = Vec::new();
    while remaining > 0 {
        let (p, gain) = inc
            .iter()
            .enumerate()
            .map(|(p, ls)| (p, ls.iter().filter(|&&l| !covered[l]).count()))
            .max_by_key(|&(p, g)| (g, std::cmp::Reverse(p)))
            .expect("uncovered lines have points");
        debug_assert!(gain > 0);
        for &l in &inc[p] {
            if !covered[l] {
                covered[l] = true;
                remaining -= 1;
            }
        }
        chosen.push(p);
    }
    chosen.sort_unstable();
    chosen
}

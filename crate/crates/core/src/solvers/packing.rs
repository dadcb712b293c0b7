use crate::bitset::BitSet;
use crate::system::LinearSystem;

use super::engine::{BranchProblem, Sense};

/// Maximum set of lines covering every point at most twice. Lines are
/// decided in index order, inclusion first.
pub(crate) struct TwoPacking {
    line_masks: Vec<BitSet>,
    num_points: usize,
    intersecting: bool,
}

#[derive(Clone)]
pub(crate) struct PackingState {
    next: usize,
    chosen: Vec<usize>,
    /// Points covered at least once.
    once: BitSet,
    /// Points covered twice.
    twice: BitSet,
}

impl TwoPacking {
    pub fn new(sys: &LinearSystem) -> Self {
        Self {
            line_masks: sys.line_masks().to_vec(),
            num_points: sys.num_points(),
            intersecting: sys.is_intersecting(),
        }
    }

    fn fits(&self, s: &PackingState, l: usize) -> bool {
        !self.line_masks[l].intersects(&s.twice)
    }

    fn upper_bound(&self, s: &PackingState) -> usize {
        let remaining = (s.next..self.line_masks.len()).filter(|&l| self.fits(s, l)).count();
        let mut extra = remaining;
        if self.intersecting {
            // Every further line meets each chosen line in a point that still
            // has spare capacity, and uses one unit of it.
            for &l in &s.chosen {
                let m = &self.line_masks[l];
                let spare = 2 * m.len() - m.intersection_len(&s.once) - m.intersection_len(&s.twice);
                extra = extra.min(spare);
            }
        }
        s.chosen.len() + extra
    }
}

impl BranchProblem for TwoPacking {
    type State = PackingState;

    fn sense(&self) -> Sense {
        Sense::Maximize
    }

    fn root(&self) -> PackingState {
        PackingState {
            next: 0,
            chosen: Vec::new(),
            once: BitSet::new(self.num_points),
            twice: BitSet::new(self.num_points),
        }
    }

    fn evaluate(&self, s: &PackingState) -> Option<usize> {
        Some(s.chosen.len())
    }

    fn witness(&self, s: &PackingState) -> Vec<usize> {
        s.chosen.clone()
    }

    fn prune(&self, s: &PackingState, incumbent: usize) -> bool {
        self.upper_bound(s) <= incumbent
    }

    fn children(&self, s: &PackingState) -> Vec<PackingState> {
        let l = s.next;
        if l >= self.line_masks.len() {
            return Vec::new();
        }
        let mut out = Vec::with_capacity(2);
        if self.fits(s, l) {
            let m = &self.line_masks[l];
            let mut twice = s.once.clone();
            twice.intersect_with(m);
            twice.union_with(&s.twice);
            let mut once = s.once.clone();
            once.union_with(m);
            let mut chosen = s.chosen.clone();
            chosen.push(l);
            out.push(PackingState {
                next: l + 1,
                chosen,
                once,
                twice,
            });
        }
        out.push(PackingState {
            next: l + 1,
            ..s.clone()
        });
        out
    }
}

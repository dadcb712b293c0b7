use crate::bitset::BitSet;
use crate::system::LinearSystem;

use super::engine::{BranchProblem, Sense};

/// Minimum dominating set as a set cover over closed collinearity
/// neighbourhoods. A point `u` is dominated by `v` exactly when `v` lies in
/// `N[u]`, so `N[u]` also lists the candidates that can dominate `u`.
pub(crate) struct Domination {
    neighborhoods: Vec<BitSet>,
}

#[derive(Clone)]
pub(crate) struct DominationState {
    chosen: Vec<usize>,
    available: BitSet,
    undominated: BitSet,
}

impl Domination {
    pub fn new(sys: &LinearSystem) -> Self {
        Self {
            neighborhoods: sys.closed_neighborhoods(),
        }
    }

    fn candidates(&self, s: &DominationState, u: usize) -> BitSet {
        let mut c = self.neighborhoods[u].clone();
        c.intersect_with(&s.available);
        c
    }

    /// Undominated points with pairwise disjoint candidate sets each need
    /// their own dominator.
    fn packing_bound(&self, s: &DominationState) -> Option<usize> {
        let mut used = BitSet::new(self.neighborhoods.len());
        let mut count = 0;
        for u in s.undominated.iter() {
            let c = self.candidates(s, u);
            if c.is_empty() {
                return None;
            }
            if !c.intersects(&used) {
                used.union_with(&c);
                count += 1;
            }
        }
        Some(count)
    }

    pub fn greedy(&self) -> Vec<usize> {
        let n = self.neighborhoods.len();
        let mut undominated = BitSet::full(n);
        let mut chosen = Vec::new();
        while !undominated.is_empty() {
            let v = (0..n)
                .max_by_key(|&v| {
                    (
                        self.neighborhoods[v].intersection_len(&undominated),
                        std::cmp::Reverse(v),
                    )
                })
                .unwrap();
            undominated.difference_with(&self.neighborhoods[v]);
            chosen.push(v);
        }
        chosen.sort_unstable();
        chosen
    }
}

impl BranchProblem for Domination {
    type State = DominationState;

    fn sense(&self) -> Sense {
        Sense::Minimize
    }

    fn root(&self) -> DominationState {
        let n = self.neighborhoods.len();
        DominationState {
            chosen: Vec::new(),
            available: BitSet::full(n),
            undominated: BitSet::full(n),
        }
    }

    fn evaluate(&self, s: &DominationState) -> Option<usize> {
        s.undominated.is_empty().then_some(s.chosen.len())
    }

    fn witness(&self, s: &DominationState) -> Vec<usize> {
        let mut w = s.chosen.clone();
        w.sort_unstable();
        w
    }

    fn prune(&self, s: &DominationState, incumbent: usize) -> bool {
        match self.packing_bound(s) {
            Some(lb) => s.chosen.len() + lb >= incumbent,
            None => true,
        }
    }

    fn children(&self, s: &DominationState) -> Vec<DominationState> {
        let Some(cands) = s
            .undominated
            .iter()
            .map(|u| self.candidates(s, u))
            .min_by_key(BitSet::len)
        else {
            return Vec::new();
        };
        let mut available = s.available.clone();
        let mut out = Vec::with_capacity(cands.len());
        for v in cands.iter() {
            available.remove(v);
            let mut chosen = s.chosen.clone();
            chosen.push(v);
            let mut undominated = s.undominated.clone();
            undominated.difference_with(&self.neighborhoods[v]);
            out.push(DominationState {
                chosen,
                available: available.clone(),
                undominated,
            });
        }
        out
    }
}

//! Linear systems: point sets with lines that pairwise share at most one point.
//!
//! Points are the indices `0..num_points`. Points on no line are isolated and
//! are allowed. Structural operations never renumber points, so a point keeps
//! its index through deletions and reductions and can be traced back to the
//! system it came from.

use std::collections::HashMap;

use crate::bitset::BitSet;
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct LinearSystem {
    num_points: usize,
    /// Each line sorted ascending.
    lines: Vec<Vec<usize>>,
    masks: Vec<BitSet>,
    name: Option<String>,
}

impl std::fmt::Debug for LinearSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LinearSystem")
            .field("name", &self.name)
            .field("num_points", &self.num_points)
            .field("lines", &self.lines)
            .finish()
    }
}

impl PartialEq for LinearSystem {
    fn eq(&self, other: &Self) -> bool {
        self.num_points == other.num_points && self.lines == other.lines
    }
}

impl Eq for LinearSystem {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    pub degrees: Vec<usize>,
    /// Δ, zero when there are no points.
    pub max_degree: usize,
    /// Largest degree once one point of maximum degree is set aside.
    pub second_max_degree: usize,
    /// Lowest-index point attaining `max_degree`.
    pub max_point: Option<usize>,
}

impl LinearSystem {
    /// Validates and builds a system. Repeated indices inside one line are
    /// merged, since a line is a set of points.
    pub fn new(num_points: usize, lines: Vec<Vec<usize>>) -> Result<Self> {
        let mut sorted = Vec::with_capacity(lines.len());
        for (i, mut line) in lines.into_iter().enumerate() {
            if line.is_empty() {
                return Err(Error::EmptyLine(i));
            }
            if let Some(&index) = line.iter().find(|&&p| p >= num_points) {
                return Err(Error::BadIndex { index, num_points });
            }
            line.sort_unstable();
            line.dedup();
            sorted.push(line);
        }
        let masks: Vec<BitSet> = sorted
            .iter()
            .map(|l| BitSet::from_indices(num_points, l.iter().copied()))
            .collect();

        let mut seen: HashMap<&[usize], usize> = HashMap::with_capacity(sorted.len());
        for (i, line) in sorted.iter().enumerate() {
            if let Some(&first) = seen.get(line.as_slice()) {
                return Err(Error::DuplicateLine { first, second: i });
            }
            seen.insert(line, i);
        }
        for i in 0..masks.len() {
            for j in i + 1..masks.len() {
                if masks[i].intersection_len(&masks[j]) > 1 {
                    let mut shared = masks[i].clone();
                    shared.intersect_with(&masks[j]);
                    return Err(Error::LinearityViolation {
                        first: i,
                        second: j,
                        shared: shared.to_vec(),
                    });
                }
            }
        }
        Ok(Self {
            num_points,
            lines: sorted,
            masks,
            name: None,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn num_points(&self) -> usize {
        self.num_points
    }

    pub fn num_lines(&self) -> usize {
        self.lines.len()
    }

    pub fn lines(&self) -> &[Vec<usize>] {
        &self.lines
    }

    pub fn line(&self, index: usize) -> &[usize] {
        &self.lines[index]
    }

    pub fn line_mask(&self, index: usize) -> &BitSet {
        &self.masks[index]
    }

    pub fn line_masks(&self) -> &[BitSet] {
        &self.masks
    }

    /// Index of the line equal to `points`, if any.
    pub fn find_line(&self, points: &[usize]) -> Option<usize> {
        let mut sorted = points.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        self.lines.iter().position(|l| *l == sorted)
    }

    /// For each point, the indices of the lines through it.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.num_points];
        for (i, line) in self.lines.iter().enumerate() {
            for &p in line {
                inc[p].push(i);
            }
        }
        inc
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.num_points];
        for line in &self.lines {
            for &p in line {
                deg[p] += 1;
            }
        }
        deg
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let degrees = self.degrees();
        let max_point = degrees
            .iter()
            .enumerate()
            .max_by_key(|&(i, &d)| (d, std::cmp::Reverse(i)))
            .map(|(i, _)| i);
        let max_degree = max_point.map_or(0, |p| degrees[p]);
        let second_max_degree = degrees
            .iter()
            .enumerate()
            .filter(|&(i, _)| Some(i) != max_point)
            .map(|(_, &d)| d)
            .max()
            .unwrap_or(0);
        DegreeProfile {
            degrees,
            max_degree,
            second_max_degree,
            max_point,
        }
    }

    pub fn rank(&self) -> Result<usize> {
        self.lines.iter().map(Vec::len).max().ok_or(Error::NoLines)
    }

    /// Every two distinct lines meet in exactly one point.
    pub fn is_intersecting(&self) -> bool {
        (0..self.masks.len()).all(|i| (i + 1..self.masks.len()).all(|j| self.masks[i].intersects(&self.masks[j])))
    }

    pub fn is_uniform(&self, r: usize) -> bool {
        self.lines.iter().all(|l| l.len() == r)
    }

    /// Points lying on at least one line.
    pub fn covered_points(&self) -> BitSet {
        let mut all = BitSet::new(self.num_points);
        for m in &self.masks {
            all.union_with(m);
        }
        all
    }

    pub fn isolated_points(&self) -> Vec<usize> {
        let covered = self.covered_points();
        (0..self.num_points).filter(|&p| !covered.contains(p)).collect()
    }

    fn check_point(&self, point: usize) -> Result<()> {
        if point >= self.num_points {
            Err(Error::BadIndex {
                index: point,
                num_points: self.num_points,
            })
        } else {
            Ok(())
        }
    }

    /// Rebuilds from an already linear line list, dropping empty lines and
    /// merging lines that became equal.
    fn rebuild(&self, lines: impl IntoIterator<Item = Vec<usize>>) -> Self {
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for line in lines {
            if !line.is_empty() && seen.insert(line.clone()) {
                out.push(line);
            }
        }
        let mut sys = Self::new(self.num_points, out).expect("sub-structures of a linear system are linear");
        sys.name = self.name.clone();
        sys
    }

    /// Removes `point` from every line. Lines left empty are dropped, lines
    /// that shrink to a single point stay. The index survives as an isolated
    /// point.
    pub fn delete_point(&self, point: usize) -> Result<Self> {
        self.check_point(point)?;
        Ok(self.delete_points(&[point]))
    }

    pub(crate) fn delete_points(&self, points: &[usize]) -> Self {
        let drop = BitSet::from_indices(self.num_points, points.iter().copied());
        self.rebuild(
            self.lines
                .iter()
                .map(|l| l.iter().copied().filter(|&p| !drop.contains(p)).collect()),
        )
    }

    pub fn delete_line(&self, index: usize) -> Result<Self> {
        if index >= self.lines.len() {
            return Err(Error::BadLineIndex {
                index,
                num_lines: self.lines.len(),
            });
        }
        Ok(self.rebuild(
            self.lines
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != index)
                .map(|(_, l)| l.clone()),
        ))
    }

    /// Appends a line. The result must still be linear.
    pub fn add_line(&self, line: Vec<usize>) -> Result<Self> {
        let mut lines = self.lines.clone();
        lines.push(line);
        let mut sys = Self::new(self.num_points, lines)?;
        sys.name = self.name.clone();
        Ok(sys)
    }

    /// Keeps the chosen lines (in the given order). Points off those lines
    /// stay in the index space as isolated points; see [`Self::covered_points`]
    /// for the induced point set.
    pub fn induced_subsystem(&self, line_indices: &[usize]) -> Result<Self> {
        let mut lines = Vec::with_capacity(line_indices.len());
        for &i in line_indices {
            let line = self.lines.get(i).ok_or(Error::BadLineIndex {
                index: i,
                num_lines: self.lines.len(),
            })?;
            lines.push(line.clone());
        }
        Self::new(self.num_points, lines)
    }

    /// `self` is a linear subsystem of `host` whose point set is all of
    /// `host`'s non-isolated points.
    pub fn is_spanning_subsystem_of(&self, host: &LinearSystem) -> bool {
        if self.num_points != host.num_points {
            return false;
        }
        let span = self.covered_points();
        if span != host.covered_points() {
            return false;
        }
        self.masks.iter().all(|sub| {
            host.masks.iter().any(|l| {
                let mut cut = l.clone();
                cut.intersect_with(&span);
                cut == *sub
            })
        })
    }

    /// Two points are adjacent when some line holds both. A point counts as
    /// adjacent to itself.
    pub fn collinearity_adjacent(&self, u: usize, v: usize) -> Result<bool> {
        self.check_point(u)?;
        self.check_point(v)?;
        Ok(u == v || self.masks.iter().any(|m| m.contains(u) && m.contains(v)))
    }

    /// Closed neighbourhood of every point under collinearity.
    pub fn closed_neighborhoods(&self) -> Vec<BitSet> {
        let mut nb: Vec<BitSet> = (0..self.num_points)
            .map(|p| BitSet::from_indices(self.num_points, [p]))
            .collect();
        for (line, mask) in self.lines.iter().zip(&self.masks) {
            for &p in line {
                nb[p].union_with(mask);
            }
        }
        nb
    }

    /// The transpose: one point per line of `self`, one line per non-isolated
    /// point of `self` listing the lines through it. Isolated points have no
    /// counterpart, and points on exactly the same lines share one dual line.
    pub fn dual(&self) -> Self {
        let template = Self {
            num_points: self.lines.len(),
            lines: Vec::new(),
            masks: Vec::new(),
            name: None,
        };
        template.rebuild(self.incidence())
    }

    /// Renumbers the non-isolated points to `0..k` preserving their order.
    /// Returns the compact system and, for each new index, the old one.
    pub fn compact(&self) -> (Self, Vec<usize>) {
        let kept: Vec<usize> = self.covered_points().to_vec();
        let mut new_index = vec![usize::MAX; self.num_points];
        for (i, &p) in kept.iter().enumerate() {
            new_index[p] = i;
        }
        let lines = self
            .lines
            .iter()
            .map(|l| l.iter().map(|&p| new_index[p]).collect())
            .collect();
        let mut sys = Self::new(kept.len(), lines).expect("renumbering preserves linearity");
        sys.name = self.name.clone();
        (sys, kept)
    }

    /// Applies a point relabelling `perm[old] = new` into a space of
    /// `num_points` points.
    pub fn relabel(&self, perm: &[usize], num_points: usize) -> Result<Self> {
        let lines = self
            .lines
            .iter()
            .map(|l| l.iter().map(|&p| perm[p]).collect())
            .collect();
        let mut sys = Self::new(num_points, lines)?;
        sys.name = self.name.clone();
        Ok(sys)
    }

    /// Same lines, listed in a different order.
    pub fn reorder_lines(&self, order: &[usize]) -> Result<Self> {
        let mut sys = self.induced_subsystem(order)?;
        sys.name = self.name.clone();
        Ok(sys)
    }
}

/// The Fano plane on points `0..7`.
pub fn fano() -> LinearSystem {
    LinearSystem::new(
        7,
        vec![
            vec![0, 1, 2],
            vec![0, 3, 4],
            vec![0, 5, 6],
            vec![1, 3, 5],
            vec![1, 4, 6],
            vec![2, 3, 6],
            vec![2, 4, 5],
        ],
    )
    .expect("the Fano plane is linear")
    .with_name("Fano")
}

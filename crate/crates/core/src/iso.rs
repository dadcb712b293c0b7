//! Isomorphism and embedding of linear systems.
//!
//! Two systems are isomorphic when, after repeatedly stripping points of
//! degree at most one from both, the remaining hypergraphs are isomorphic.
//! The hypergraph test refines point and line colours jointly on both
//! systems and then backtracks over colour-compatible point maps. Embedding
//! uses the same backtracking engine without the size and colour constraints.

use std::collections::BTreeMap;

use crate::caps::Caps;
use crate::error::Result;
use crate::system::LinearSystem;

/// Strips points of degree one until none remain. Degree-zero points are
/// already isolated; indices are preserved.
pub fn pendant_reduce(sys: &LinearSystem) -> LinearSystem {
    let mut current = sys.clone();
    loop {
        let pendant: Vec<usize> = current
            .degrees()
            .iter()
            .enumerate()
            .filter(|&(_, &d)| d == 1)
            .map(|(p, _)| p)
            .collect();
        if pendant.is_empty() {
            return current;
        }
        current = current.delete_points(&pendant);
    }
}

/// A verified correspondence between two systems.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mapping {
    /// `(source point, target point)` pairs in the original index spaces,
    /// sorted by source point.
    pub points: Vec<(usize, usize)>,
    /// `(source line, target line)` pairs, sorted by source line.
    pub lines: Vec<(usize, usize)>,
}

impl Mapping {
    pub fn image_of_point(&self, p: usize) -> Option<usize> {
        self.points
            .binary_search_by_key(&p, |&(a, _)| a)
            .ok()
            .map(|i| self.points[i].1)
    }

    pub fn image_of_line(&self, l: usize) -> Option<usize> {
        self.lines
            .binary_search_by_key(&l, |&(a, _)| a)
            .ok()
            .map(|i| self.lines[i].1)
    }

    pub fn preimage_of_line(&self, l: usize) -> Option<usize> {
        self.lines.iter().find(|&&(_, b)| b == l).map(|&(a, _)| a)
    }

    /// Checks that the map is injective on points and lines and carries every
    /// source line into its assigned target line. With `exact`, images must
    /// equal the target lines and every point and line must be covered.
    pub fn verify(&self, source: &LinearSystem, target: &LinearSystem, exact: bool) -> bool {
        let mut used_p = vec![false; target.num_points()];
        for &(a, b) in &self.points {
            if a >= source.num_points() || b >= target.num_points() || std::mem::replace(&mut used_p[b], true) {
                return false;
            }
        }
        let mut used_l = vec![false; target.num_lines()];
        for &(a, b) in &self.lines {
            if a >= source.num_lines() || b >= target.num_lines() || std::mem::replace(&mut used_l[b], true) {
                return false;
            }
            let host = target.line_mask(b);
            let mut count = 0;
            for &p in source.line(a) {
                match self.image_of_point(p) {
                    Some(h) if host.contains(h) => count += 1,
                    _ => return false,
                }
            }
            if exact && count != target.line(b).len() {
                return false;
            }
        }
        if self.lines.len() != source.num_lines() {
            return false;
        }
        if exact {
            let covered_s = source.covered_points().len();
            let covered_t = target.covered_points().len();
            if self.points.len() != covered_s || covered_s != covered_t || source.num_lines() != target.num_lines() {
                return false;
            }
        }
        true
    }
}

/// Outcome of an isomorphism test between pendant-reduced systems.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoCertificate {
    pub reduced_a: LinearSystem,
    pub reduced_b: LinearSystem,
    /// Bijection from `reduced_a` onto `reduced_b`, absent when the systems
    /// are not isomorphic.
    pub mapping: Option<Mapping>,
}

impl IsoCertificate {
    pub fn is_isomorphic(&self) -> bool {
        self.mapping.is_some()
    }

    pub fn verify(&self) -> bool {
        self.mapping
            .as_ref()
            .is_some_and(|m| m.verify(&self.reduced_a, &self.reduced_b, true))
    }
}

pub fn are_isomorphic(a: &LinearSystem, b: &LinearSystem) -> Result<IsoCertificate> {
    are_isomorphic_with(a, b, &Caps::default())
}

pub fn are_isomorphic_with(a: &LinearSystem, b: &LinearSystem, caps: &Caps) -> Result<IsoCertificate> {
    let reduced_a = pendant_reduce(a);
    let reduced_b = pendant_reduce(b);
    let (ca, map_a) = reduced_a.compact();
    let (cb, map_b) = reduced_b.compact();
    Caps::check(
        "reduced system",
        ca.num_points().max(cb.num_points()),
        caps.search_points,
    )?;

    let mapping = hypergraph_isomorphism(&ca, &cb).map(|m| lift(m, &map_a, &map_b));
    Ok(IsoCertificate {
        reduced_a,
        reduced_b,
        mapping,
    })
}

/// Searches for an injective point map of `sub`'s non-isolated points into
/// `host` that carries each line of `sub` into a distinct line of `host`.
pub fn embeds_in(sub: &LinearSystem, host: &LinearSystem) -> Result<Option<Mapping>> {
    embeds_in_with(sub, host, &Caps::default())
}

pub fn embeds_in_with(sub: &LinearSystem, host: &LinearSystem, caps: &Caps) -> Result<Option<Mapping>> {
    let (cs, map_s) = sub.compact();
    let (ch, map_h) = host.compact();
    Caps::check("embedded system", cs.num_points(), caps.search_points)?;
    Caps::check("host system", ch.num_points(), caps.search_points)?;
    if cs.num_points() > ch.num_points() || cs.num_lines() > ch.num_lines() {
        return Ok(None);
    }
    let found = Matcher::new(&cs, &ch, false, None).run();
    Ok(found.map(|m| lift(m, &map_s, &map_h)))
}

fn lift(m: Mapping, map_a: &[usize], map_b: &[usize]) -> Mapping {
    Mapping {
        points: m.points.into_iter().map(|(a, b)| (map_a[a], map_b[b])).collect(),
        lines: m.lines,
    }
}

fn hypergraph_isomorphism(a: &LinearSystem, b: &LinearSystem) -> Option<Mapping> {
    if a.num_points() != b.num_points() || a.num_lines() != b.num_lines() {
        return None;
    }
    let (colors_a, colors_b) = refine_colors(a, b);
    let histogram = |c: &[u32]| {
        let mut h = c.to_vec();
        h.sort_unstable();
        h
    };
    if histogram(&colors_a) != histogram(&colors_b) {
        return None;
    }
    Matcher::new(a, b, true, Some((colors_a, colors_b))).run()
}

/// Joint colour refinement. A point starts with its degree and the multiset
/// of incident line sizes; each round a line takes its size and the multiset
/// of its point colours, and a point takes its colour and the multiset of its
/// line colours. Colour ids are shared by both systems.
fn refine_colors(a: &LinearSystem, b: &LinearSystem) -> (Vec<u32>, Vec<u32>) {
    let systems = [a, b];
    let incidences = [a.incidence(), b.incidence()];

    let mut colors: [Vec<u32>; 2] = Default::default();
    {
        let sigs: Vec<Vec<Vec<usize>>> = (0..2)
            .map(|s| {
                incidences[s]
                    .iter()
                    .map(|inc| {
                        let mut sizes: Vec<usize> = inc.iter().map(|&l| systems[s].line(l).len()).collect();
                        sizes.sort_unstable();
                        let mut sig = vec![inc.len()];
                        sig.extend(sizes);
                        sig
                    })
                    .collect()
            })
            .collect();
        let ids = canonical_ids(sigs.iter().flatten());
        for s in 0..2 {
            colors[s] = sigs[s].iter().map(|sig| ids[sig]).collect();
        }
    }

    let mut classes = count_classes(&colors);
    loop {
        let line_sigs: Vec<Vec<Vec<u32>>> = (0..2)
            .map(|s| {
                systems[s]
                    .lines()
                    .iter()
                    .map(|line| {
                        let mut pc: Vec<u32> = line.iter().map(|&p| colors[s][p]).collect();
                        pc.sort_unstable();
                        let mut sig = vec![line.len() as u32];
                        sig.extend(pc);
                        sig
                    })
                    .collect()
            })
            .collect();
        let line_ids = canonical_ids(line_sigs.iter().flatten());
        let point_sigs: Vec<Vec<Vec<u32>>> = (0..2)
            .map(|s| {
                incidences[s]
                    .iter()
                    .enumerate()
                    .map(|(p, inc)| {
                        let mut lc: Vec<u32> = inc.iter().map(|&l| line_ids[&line_sigs[s][l]]).collect();
                        lc.sort_unstable();
                        let mut sig = vec![colors[s][p]];
                        sig.extend(lc);
                        sig
                    })
                    .collect()
            })
            .collect();
        let point_ids = canonical_ids(point_sigs.iter().flatten());
        let next: [Vec<u32>; 2] = [0, 1].map(|s| point_sigs[s].iter().map(|sig| point_ids[sig]).collect());
        let next_classes = count_classes(&next);
        colors = next;
        if next_classes == classes {
            break;
        }
        classes = next_classes;
    }
    let [ca, cb] = colors;
    (ca, cb)
}

fn canonical_ids<'a, T: Ord + Clone + 'a>(sigs: impl Iterator<Item = &'a T>) -> BTreeMap<T, u32> {
    let mut ids: BTreeMap<T, u32> = sigs.map(|s| (s.clone(), 0)).collect();
    for (i, v) in ids.values_mut().enumerate() {
        *v = i as u32;
    }
    ids
}

fn count_classes(colors: &[Vec<u32>; 2]) -> usize {
    let mut all: Vec<u32> = colors.iter().flatten().copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

enum Undo {
    Point(usize),
    Line(usize),
}

/// Backtracking point-by-point matcher over compact systems.
struct Matcher<'a> {
    src: &'a LinearSystem,
    dst: &'a LinearSystem,
    exact: bool,
    colors: Option<(Vec<u32>, Vec<u32>)>,
    src_inc: Vec<Vec<usize>>,
    dst_inc: Vec<Vec<usize>>,
    /// `through[x * n + y]`: the target line through target points x and y.
    through: Vec<Option<usize>>,
    order: Vec<usize>,
    point_map: Vec<Option<usize>>,
    used_points: Vec<bool>,
    line_map: Vec<Option<usize>>,
    used_lines: Vec<bool>,
    trail: Vec<Undo>,
}

impl<'a> Matcher<'a> {
    fn new(src: &'a LinearSystem, dst: &'a LinearSystem, exact: bool, colors: Option<(Vec<u32>, Vec<u32>)>) -> Self {
        let n = dst.num_points();
        let mut through = vec![None; n * n];
        for (i, line) in dst.lines().iter().enumerate() {
            for &x in line {
                for &y in line {
                    if x != y {
                        through[x * n + y] = Some(i);
                    }
                }
            }
        }
        let src_inc = src.incidence();
        let order = search_order(src, &src_inc);
        Self {
            src,
            dst,
            exact,
            colors,
            dst_inc: dst.incidence(),
            src_inc,
            through,
            order,
            point_map: vec![None; src.num_points()],
            used_points: vec![false; dst.num_points()],
            line_map: vec![None; src.num_lines()],
            used_lines: vec![false; dst.num_lines()],
            trail: Vec::new(),
        }
    }

    fn run(mut self) -> Option<Mapping> {
        if self.search(0) {
            Some(Mapping {
                points: self
                    .point_map
                    .iter()
                    .enumerate()
                    .filter_map(|(a, b)| b.map(|b| (a, b)))
                    .collect(),
                lines: self
                    .line_map
                    .iter()
                    .enumerate()
                    .map(|(a, b)| (a, b.expect("complete mapping")))
                    .collect(),
            })
        } else {
            None
        }
    }

    fn line_through(&self, x: usize, y: usize) -> Option<usize> {
        self.through[x * self.dst.num_points() + y]
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().unwrap() {
                Undo::Point(p) => {
                    let h = self.point_map[p].take().unwrap();
                    self.used_points[h] = false;
                }
                Undo::Line(l) => {
                    let h = self.line_map[l].take().unwrap();
                    self.used_lines[h] = false;
                }
            }
        }
    }

    fn assign_line(&mut self, l: usize, h: usize) -> bool {
        if self.used_lines[h] || (self.exact && self.src.line(l).len() != self.dst.line(h).len()) {
            return false;
        }
        self.line_map[l] = Some(h);
        self.used_lines[h] = true;
        self.trail.push(Undo::Line(l));
        true
    }

    /// Tries `p -> h`, leaving the trail extended on success.
    fn try_map(&mut self, p: usize, h: usize) -> bool {
        if self.used_points[h] {
            return false;
        }
        if let Some((ca, cb)) = &self.colors {
            if ca[p] != cb[h] {
                return false;
            }
        }
        if self.exact {
            // Non-collinear pairs must stay non-collinear.
            for (x, &img) in self.point_map.iter().enumerate() {
                if let Some(hx) = img {
                    let collinear_src = self.src_inc[p].iter().any(|&l| self.src.line_mask(l).contains(x));
                    if !collinear_src && self.line_through(h, hx).is_some() {
                        return false;
                    }
                }
            }
        }
        let mark = self.trail.len();
        self.point_map[p] = Some(h);
        self.used_points[h] = true;
        self.trail.push(Undo::Point(p));
        for i in 0..self.src_inc[p].len() {
            let l = self.src_inc[p][i];
            let ok = match self.line_map[l] {
                Some(hl) => self.dst.line_mask(hl).contains(h),
                None => {
                    let other = self
                        .src
                        .line(l)
                        .iter()
                        .find_map(|&x| if x != p { self.point_map[x] } else { None });
                    match other {
                        Some(hx) => match self.line_through(hx, h) {
                            Some(hl) => self.assign_line(l, hl),
                            None => false,
                        },
                        None => true,
                    }
                }
            };
            if !ok {
                self.undo_to(mark);
                return false;
            }
        }
        true
    }

    fn search(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            let pending: Vec<usize> = (0..self.src.num_lines())
                .filter(|&l| self.line_map[l].is_none())
                .collect();
            return self.assign_singletons(&pending, 0);
        }
        let p = self.order[depth];
        // Restrict candidates to an already mapped line through p when there is one.
        let candidates: Vec<usize> = match self.src_inc[p].iter().find_map(|&l| self.line_map[l]) {
            Some(hl) => self.dst.line(hl).to_vec(),
            None => (0..self.dst.num_points()).collect(),
        };
        for h in candidates {
            let mark = self.trail.len();
            if self.try_map(p, h) {
                if self.search(depth + 1) {
                    return true;
                }
                self.undo_to(mark);
            }
        }
        false
    }

    /// Lines with a single point are only constrained once all points are
    /// placed.
    fn assign_singletons(&mut self, pending: &[usize], i: usize) -> bool {
        if i == pending.len() {
            return true;
        }
        let l = pending[i];
        let h = self.point_map[self.src.line(l)[0]].unwrap();
        for hl in self.dst_inc[h].clone() {
            let mark = self.trail.len();
            if self.assign_line(l, hl) {
                if self.assign_singletons(pending, i + 1) {
                    return true;
                }
                self.undo_to(mark);
            }
        }
        false
    }
}

/// Points ordered so each next point shares as many lines as possible with
/// the points already placed; ties go to higher degree, then lower index.
fn search_order(sys: &LinearSystem, inc: &[Vec<usize>]) -> Vec<usize> {
    let n = sys.num_points();
    let mut placed = vec![false; n];
    let mut touched = vec![0usize; sys.num_lines()];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let next = (0..n)
            .filter(|&p| !placed[p])
            .max_by_key(|&p| {
                let links = inc[p].iter().filter(|&&l| touched[l] > 0).count();
                (links, inc[p].len(), std::cmp::Reverse(p))
            })
            .unwrap();
        placed[next] = true;
        for &l in &inc[next] {
            touched[l] += 1;
        }
        order.push(next);
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::fano;

    fn triangle() -> LinearSystem {
        LinearSystem::new(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
    }

    fn extend(sys: &LinearSystem) -> LinearSystem {
        let n = sys.num_points();
        let lines = sys
            .lines()
            .iter()
            .enumerate()
            .map(|(i, l)| {
                let mut l = l.clone();
                l.push(n + i);
                l
            })
            .collect();
        LinearSystem::new(n + sys.num_lines(), lines).unwrap()
    }

    #[test]
    fn pendant_reduction_cascades() {
        let path = LinearSystem::new(4, vec![vec![0, 1], vec![1, 2], vec![2, 3]]).unwrap();
        assert_eq!(pendant_reduce(&path).lines(), &[vec![1], vec![1, 2], vec![2]]);
        // {0} appears twice after the first round, merges, and then goes too.
        let fork = LinearSystem::new(3, vec![vec![0, 1], vec![0, 2]]).unwrap();
        assert_eq!(pendant_reduce(&fork).num_lines(), 0);
        assert_eq!(pendant_reduce(&fano()), fano());
        assert_eq!(pendant_reduce(&extend(&fano())).lines(), fano().lines());
    }

    #[test]
    fn fano_relabelled_is_isomorphic() {
        let perm = [3, 6, 0, 5, 1, 4, 2];
        let relabelled = fano()
            .relabel(&perm, 7)
            .unwrap()
            .reorder_lines(&[6, 2, 4, 0, 1, 5, 3])
            .unwrap();
        let cert = are_isomorphic(&fano(), &relabelled).unwrap();
        assert!(cert.is_isomorphic());
        assert!(cert.verify());
    }

    #[test]
    fn fano_minus_line_is_not_fano() {
        let cert = are_isomorphic(&fano(), &fano().delete_line(0).unwrap()).unwrap();
        assert!(!cert.is_isomorphic());
    }

    #[test]
    fn pendant_extension_is_isomorphic_to_base() {
        let cert = are_isomorphic(&extend(&fano()), &fano()).unwrap();
        assert!(cert.is_isomorphic());
        assert!(cert.verify());
    }

    #[test]
    fn embeddings() {
        let f = fano();
        let sub = f.delete_line(0).unwrap();
        let m = embeds_in(&sub, &f).unwrap().expect("identity embedding");
        assert!(m.verify(&sub, &f, false));

        let t = triangle();
        let m = embeds_in(&t, &f).unwrap().expect("triangle embeds");
        assert!(m.verify(&t, &f, false));

        let line4 = LinearSystem::new(4, vec![vec![0, 1, 2, 3]]).unwrap();
        assert!(embeds_in(&line4, &f).unwrap().is_none());
    }

    #[test]
    fn singleton_lines_are_matched() {
        let a = LinearSystem::new(3, vec![vec![0, 1], vec![1, 2], vec![0, 2], vec![0]]).unwrap();
        let b = LinearSystem::new(3, vec![vec![2], vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let m = hypergraph_isomorphism(&a, &b).expect("isomorphic");
        assert!(m.verify(&a, &b, true));
        let c = LinearSystem::new(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert!(hypergraph_isomorphism(&a, &c).is_none());
    }

    #[test]
    fn size_limit_applies_after_reduction() {
        let caps = Caps {
            search_points: 5,
            ..Caps::default()
        };
        assert!(are_isomorphic_with(&fano(), &fano(), &caps).is_err());
        // Pendant points do not count towards the cap.
        let small = Caps {
            search_points: 7,
            ..Caps::default()
        };
        assert!(are_isomorphic_with(&extend(&fano()), &fano(), &small)
            .unwrap()
            .is_isomorphic());
    }
}

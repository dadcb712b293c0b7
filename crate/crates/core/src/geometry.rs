//! The Desarguesian plane PG(2,q), its axioms, conics and hyperovals.
//!
//! Points and lines are the nonzero triples over GF(q) up to scalars, each
//! normalized so its leftmost nonzero coordinate is 1 and numbered in
//! lexicographic order of the normalized coordinates. Point `x` lies on line
//! `a` exactly when `a0*x0 + a1*x1 + a2*x2 = 0`.

use std::fmt;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::field::{prime_power, Elem, FieldTable};
use crate::io::SystemFile;
use crate::system::LinearSystem;

pub type Coords = [Elem; 3];

#[derive(Debug, Clone)]
pub struct PlaneModel {
    pub system: LinearSystem,
    pub point_coords: Vec<Coords>,
    pub line_coords: Vec<Coords>,
    pub order: usize,
    pub field: FieldTable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    pub points: Vec<usize>,
    pub is_hyperoval: bool,
}

pub fn projective_plane(q: usize) -> Result<PlaneModel> {
    projective_plane_with(q, &Caps::default())
}

pub fn projective_plane_with(q: usize, caps: &Caps) -> Result<PlaneModel> {
    if prime_power(q as u64).is_none() {
        return Err(Error::NotPrimePower(q as u64));
    }
    if q as u64 > caps.plane_order {
        return Err(Error::PlaneTooLarge {
            order: q as u64,
            cap: caps.plane_order,
        });
    }
    let field = FieldTable::of_order(q as u64, caps.field_order)?;
    let coords = normalized_triples(q as Elem);
    let lines: Vec<Vec<usize>> = coords
        .iter()
        .map(|a| {
            coords
                .iter()
                .enumerate()
                .filter(|(_, x)| dot(&field, a, x) == 0)
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    let system = LinearSystem::new(coords.len(), lines)?.with_name(format!("PG(2,{q})"));
    Ok(PlaneModel {
        system,
        point_coords: coords.clone(),
        line_coords: coords,
        order: q,
        field,
    })
}

fn dot(f: &FieldTable, a: &Coords, x: &Coords) -> Elem {
    let t0 = f.mul(a[0], x[0]);
    let t1 = f.mul(a[1], x[1]);
    let t2 = f.mul(a[2], x[2]);
    f.add(f.add(t0, t1), t2)
}

/// Triples with leftmost nonzero coordinate 1, in lexicographic order.
fn normalized_triples(q: Elem) -> Vec<Coords> {
    let mut out = Vec::with_capacity((q * q + q + 1) as usize);
    for x0 in 0..2 {
        for x1 in 0..q {
            for x2 in 0..q {
                let t = [x0, x1, x2];
                let lead = t.iter().find(|&&c| c != 0);
                if lead == Some(&1) {
                    out.push(t);
                }
            }
        }
    }
    out
}

impl PlaneModel {
    pub fn normalize(&self, c: Coords) -> Option<Coords> {
        let lead = *c.iter().find(|&&x| x != 0)?;
        let inv = self.field.inv(lead)?;
        Some(c.map(|x| self.field.mul(x, inv)))
    }

    pub fn point_index(&self, c: Coords) -> Option<usize> {
        let n = self.normalize(c)?;
        self.point_coords.binary_search(&n).ok()
    }

    pub fn line_index(&self, c: Coords) -> Option<usize> {
        let n = self.normalize(c)?;
        self.line_coords.binary_search(&n).ok()
    }

    /// Points of the conic `X1^2 = X0*X2`: `(1, t, t^2)` for every `t`, and
    /// `(0, 0, 1)`.
    pub fn conic_points(&self) -> Vec<usize> {
        let f = &self.field;
        let mut pts: Vec<usize> = f
            .elements()
            .map(|t| self.point_index([1, t, f.mul(t, t)]).unwrap())
            .collect();
        pts.push(self.point_index([0, 0, 1]).unwrap());
        pts.sort_unstable();
        pts
    }

    /// The conic together with its nucleus `(0, 1, 0)`. Only even orders have
    /// one.
    pub fn hyperoval(&self) -> Result<Arc> {
        if self.order % 2 == 1 {
            return Err(Error::OddOrder(self.order));
        }
        let mut points = self.conic_points();
        points.push(self.point_index([0, 1, 0]).unwrap());
        points.sort_unstable();
        Ok(Arc {
            points,
            is_hyperoval: true,
        })
    }

    pub fn is_arc(&self, points: &[usize]) -> bool {
        is_arc(&self.system, points)
    }

    /// Lines whose dual coordinates are the coordinates of the given points.
    pub fn dual_lines(&self, points: &[usize]) -> Vec<usize> {
        let mut lines: Vec<usize> = points
            .iter()
            .map(|&p| self.line_index(self.point_coords[p]).unwrap())
            .collect();
        lines.sort_unstable();
        lines
    }

    /// Swaps points and lines. Point `i` of the dual is line `i` here.
    pub fn dual_plane(&self) -> PlaneModel {
        PlaneModel {
            system: self.system.dual().with_name(format!("dual PG(2,{})", self.order)),
            point_coords: self.line_coords.clone(),
            line_coords: self.point_coords.clone(),
            order: self.order,
            field: self.field.clone(),
        }
    }

    pub fn to_file(&self) -> SystemFile {
        SystemFile {
            coords: Some(self.point_coords.clone()),
            ..SystemFile::from_system(&self.system)
        }
    }
}

/// No three of `points` lie on a common line, by checking every triple.
pub fn is_arc(sys: &LinearSystem, points: &[usize]) -> bool {
    let mut pts = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    let masks = sys.line_masks();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            for k in j + 1..pts.len() {
                let (a, b, c) = (pts[i], pts[j], pts[k]);
                if masks.iter().any(|m| m.contains(a) && m.contains(b) && m.contains(c)) {
                    return false;
                }
            }
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    NoLines,
    /// Two points with no common line.
    PointPair(usize, usize),
    /// Two lines with no common point.
    LinePair(usize, usize),
    /// No four points with no three collinear.
    NoQuadrangle,
    NotUniform {
        line: usize,
        size: usize,
        expected: usize,
    },
    Degree {
        point: usize,
        degree: usize,
        expected: usize,
    },
    Counts {
        points: usize,
        lines: usize,
        expected: usize,
    },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NoLines => write!(f, "no lines"),
            Self::PointPair(a, b) => write!(f, "points {a} and {b} have no common line"),
            Self::LinePair(a, b) => write!(f, "lines {a} and {b} have no common point"),
            Self::NoQuadrangle => write!(f, "no four points in general position"),
            Self::NotUniform { line, size, expected } => {
                write!(f, "line {line} has {size} points, expected {expected}")
            }
            Self::Degree {
                point,
                degree,
                expected,
            } => {
                write!(f, "point {point} has degree {degree}, expected {expected}")
            }
            Self::Counts {
                points,
                lines,
                expected,
            } => {
                write!(f, "{points} points and {lines} lines, expected {expected} of each")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneReport {
    /// Order inferred from the first line's size, once the axioms pass.
    pub order: Option<usize>,
    pub violation: Option<AxiomViolation>,
    pub quadrangle: Option<[usize; 4]>,
}

impl PlaneReport {
    pub fn is_plane(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks the projective-plane axioms in a fixed order: point pairs, line
/// pairs, a quadrangle, then uniformity, degrees and counts.
pub fn verify_plane_axioms(sys: &LinearSystem) -> PlaneReport {
    let fail = |v| PlaneReport {
        order: None,
        violation: Some(v),
        quadrangle: None,
    };
    if sys.num_lines() == 0 {
        return fail(AxiomViolation::NoLines);
    }
    let n = sys.num_points();
    let mut through = vec![usize::MAX; n * n];
    for (i, line) in sys.lines().iter().enumerate() {
        for &x in line {
            for &y in line {
                through[x * n + y] = i;
            }
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            if through[a * n + b] == usize::MAX {
                return fail(AxiomViolation::PointPair(a, b));
            }
        }
    }
    let masks = sys.line_masks();
    for i in 0..masks.len() {
        for j in i + 1..masks.len() {
            if !masks[i].intersects(&masks[j]) {
                return fail(AxiomViolation::LinePair(i, j));
            }
        }
    }
    let Some(quad) = find_quadrangle(n, &through) else {
        return fail(AxiomViolation::NoQuadrangle);
    };
    let k = sys.line(0).len();
    let q = k - 1;
    for (i, line) in sys.lines().iter().enumerate() {
        if line.len() != k {
            return fail(AxiomViolation::NotUniform {
                line: i,
                size: line.len(),
                expected: k,
            });
        }
    }
    for (p, &d) in sys.degrees().iter().enumerate() {
        if d != k {
            return fail(AxiomViolation::Degree {
                point: p,
                degree: d,
                expected: k,
            });
        }
    }
    let expected = q * q + q + 1;
    if n != expected || sys.num_lines() != expected {
        return fail(AxiomViolation::Counts {
            points: n,
            lines: sys.num_lines(),
            expected,
        });
    }
    PlaneReport {
        order: Some(q),
        violation: None,
        quadrangle: Some(quad),
    }
}

/// Four points, no three collinear, given a complete line-through table.
fn find_quadrangle(n: usize, through: &[usize]) -> Option<[usize; 4]> {
    let line = |x: usize, y: usize| through[x * n + y];
    for a in 0..n {
        for b in a + 1..n {
            let ab = line(a, b);
            for c in b + 1..n {
                if line(a, c) == ab {
                    continue;
                }
                let (ac, bc) = (line(a, c), line(b, c));
                for d in c + 1..n {
                    let l = [line(a, d), line(b, d), line(c, d)];
                    if !l.contains(&ab) && !l.contains(&ac) && !l.contains(&bc) {
                        return Some([a, b, c, d]);
                    }
                }
            }
        }
    }
    None
}

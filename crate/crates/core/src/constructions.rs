//! Systems of rank `r` with domination number `r - 1`, and the structures
//! derived from them.
//!
//! A member of the family has a spanning `r`-uniform intersecting subsystem
//! (the *star*) in which every line owns a point of degree one. Deleting
//! those pendant points gives the *prime* system, which for `r = q + 2` with
//! `q` even sits inside PG(2,q). This module builds members by pendant
//! extension, recovers star and prime, and checks the accompanying counting,
//! degree and covering claims clause by clause.

use serde_json::json;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::geometry::{projective_plane_with, PlaneModel};
use crate::iso::{embeds_in_with, Mapping};
use crate::report::{Clause, Report};
use crate::solvers::{
    domination_number_with, is_two_packing, transversal_number_with, two_packing_number_with, SolverConfig,
};
use crate::system::LinearSystem;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipReport {
    pub r: usize,
    pub rank: Option<usize>,
    pub is_intersecting: bool,
    pub gamma: usize,
    /// Rank `r`, intersecting and γ = r − 1.
    pub member: bool,
    /// Same test without the intersecting requirement.
    pub member_ignoring_intersecting: bool,
}

pub fn is_member_i_r(sys: &LinearSystem, r: usize, cfg: &SolverConfig) -> Result<MembershipReport> {
    let rank = sys.rank().ok();
    let is_intersecting = sys.is_intersecting();
    let gamma = domination_number_with(sys, cfg)?.value;
    let base = rank == Some(r) && r >= 1 && gamma == r - 1;
    Ok(MembershipReport {
        r,
        rank,
        is_intersecting,
        gamma,
        member: base && is_intersecting,
        member_ignoring_intersecting: base,
    })
}

/// Appends a fresh point to every line of a uniform intersecting system.
/// Point `n + i` is the new point on line `i`.
pub fn extend_with_pendant_points(sys: &LinearSystem) -> Result<LinearSystem> {
    let r = sys.rank()?;
    if !sys.is_uniform(r) {
        return Err(Error::NotUniform(r));
    }
    if !sys.is_intersecting() {
        return Err(Error::NotIntersecting);
    }
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
    let ext = LinearSystem::new(n + sys.num_lines(), lines)?;
    Ok(match sys.name() {
        Some(name) => ext.with_name(format!("ext({name})")),
        None => ext,
    })
}

/// Points are the pairs `{i, j}` of `1..=m` in lexicographic order; line `i`
/// holds the pairs containing `i + 1`. Every point is on exactly two lines.
pub fn triangular_system(m: usize) -> Result<LinearSystem> {
    if m < 3 {
        return Err(Error::InvalidParameter(format!(
            "triangular system needs m >= 3, got {m}"
        )));
    }
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
    let lines = (0..m)
        .map(|i| {
            pairs
                .iter()
                .enumerate()
                .filter(|(_, &(a, b))| a == i || b == i)
                .map(|(p, _)| p)
                .collect()
        })
        .collect();
    Ok(LinearSystem::new(pairs.len(), lines)?.with_name(format!("T({m})")))
}

/// PG(2,2) with one line removed.
pub fn fano_minus_line(index: usize) -> Result<LinearSystem> {
    let plane = crate::geometry::projective_plane(2)?;
    Ok(plane.system.delete_line(index)?.with_name(format!("PG(2,2)-l{index}")))
}

/// γ and τ along the derivation, all expected to equal `r - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqualityChain {
    pub expected: usize,
    pub gamma_source: usize,
    pub gamma_star: usize,
    pub tau_star: usize,
    pub tau_prime: usize,
}

impl EqualityChain {
    pub fn holds(&self) -> bool {
        [self.gamma_source, self.gamma_star, self.tau_star, self.tau_prime]
            .iter()
            .all(|&v| v == self.expected)
    }
}

#[derive(Debug, Clone)]
pub struct DerivedPair {
    pub source: LinearSystem,
    pub r: usize,
    pub star: LinearSystem,
    /// Indices into `source` of the lines kept in `star`, in order.
    pub star_lines: Vec<usize>,
    /// For each star line, its lowest-index point of degree one in `star`.
    pub pendant_map: Vec<usize>,
    /// `star` with the pendant points deleted; indices are unchanged.
    pub prime: LinearSystem,
    pub chain: EqualityChain,
}

impl DerivedPair {
    /// Checks the structural invariants of star and prime.
    pub fn invariants(&self) -> Vec<Clause> {
        let r = self.r;
        let star_deg = self.star.degrees();
        let pendant_ok = self
            .star
            .lines()
            .iter()
            .zip(&self.pendant_map)
            .all(|(l, &p)| l.contains(&p) && star_deg[p] == 1);
        let expected_prime = self.star.delete_points(&self.pendant_map);
        vec![
            Clause::equal("star is r-uniform", true, self.star.is_uniform(r)),
            Clause::equal("star is intersecting", true, self.star.is_intersecting()),
            Clause::equal(
                "star spans the source",
                true,
                self.star.is_spanning_subsystem_of(&self.source),
            ),
            Clause::equal("every star line has a degree-one point", true, pendant_ok),
            Clause::equal(
                "prime = star minus one pendant point per line",
                true,
                expected_prime == self.prime,
            ),
            Clause::equal("prime is (r-1)-uniform", true, self.prime.is_uniform(r - 1)),
            Clause::equal("prime is intersecting", true, self.prime.is_intersecting()),
        ]
    }
}

/// Finds the star of a member of the family and derives the prime system.
///
/// Star lines are lines of size `r` of the source. Candidate subsets are
/// tried from largest to smallest, lexicographically within a size, keeping
/// only pairwise meeting lines that cover every non-isolated source point.
pub fn extract_star(sys: &LinearSystem, r: usize, cfg: &SolverConfig) -> Result<DerivedPair> {
    let membership = is_member_i_r(sys, r, cfg)?;
    if !membership.member {
        return Err(Error::NotMember {
            r,
            reason: membership_reason(&membership),
        });
    }
    let star_lines = find_star(sys, r, cfg)?.ok_or(Error::NoStarFound(r))?;
    let star = sys.induced_subsystem(&star_lines)?;
    let star_deg = star.degrees();
    let pendant_map: Vec<usize> = star
        .lines()
        .iter()
        .map(|l| {
            *l.iter()
                .find(|&&p| star_deg[p] == 1)
                .expect("star lines have pendant points")
        })
        .collect();
    let prime = star.delete_points(&pendant_map);
    let chain = EqualityChain {
        expected: r - 1,
        gamma_source: membership.gamma,
        gamma_star: domination_number_with(&star, cfg)?.value,
        tau_star: transversal_number_with(&star, cfg)?.value,
        tau_prime: transversal_number_with(&prime, cfg)?.value,
    };
    Ok(DerivedPair {
        source: sys.clone(),
        r,
        star,
        star_lines,
        pendant_map,
        prime,
        chain,
    })
}

fn membership_reason(m: &MembershipReport) -> String {
    let mut why = Vec::new();
    if m.rank != Some(m.r) {
        why.push(format!("rank is {:?}", m.rank));
    }
    if !m.is_intersecting {
        why.push("not intersecting".to_string());
    }
    if m.r == 0 || m.gamma != m.r - 1 {
        why.push(format!("domination number is {}", m.gamma));
    }
    why.join(", ")
}

fn find_star(sys: &LinearSystem, r: usize, cfg: &SolverConfig) -> Result<Option<Vec<usize>>> {
    let candidates: Vec<usize> = (0..sys.num_lines()).filter(|&i| sys.line(i).len() == r).collect();
    crate::caps::Caps::check("star candidate set", candidates.len(), cfg.caps.solver_lines)?;
    let target = sys.covered_points();
    let mut reachable = BitSet::new(sys.num_points());
    for &c in &candidates {
        reachable.union_with(sys.line_mask(c));
    }
    if reachable != target {
        return Ok(None);
    }
    // suffix_cover[i]: union of candidate lines i.. for coverage pruning.
    let mut suffix_cover = vec![BitSet::new(sys.num_points()); candidates.len() + 1];
    for i in (0..candidates.len()).rev() {
        let mut u = suffix_cover[i + 1].clone();
        u.union_with(sys.line_mask(candidates[i]));
        suffix_cover[i] = u;
    }
    let search = StarSearch {
        sys,
        candidates: &candidates,
        target: &target,
        suffix_cover: &suffix_cover,
        cfg,
    };
    for k in (1..=candidates.len()).rev() {
        let mut chosen = Vec::with_capacity(k);
        let mut cover = BitSet::new(sys.num_points());
        if search.run(0, k, &mut chosen, &mut cover)? {
            return Ok(Some(chosen.iter().map(|&i| candidates[i]).collect()));
        }
    }
    Ok(None)
}

struct StarSearch<'a> {
    sys: &'a LinearSystem,
    candidates: &'a [usize],
    target: &'a BitSet,
    suffix_cover: &'a [BitSet],
    cfg: &'a SolverConfig,
}

impl StarSearch<'_> {
    fn mask(&self, i: usize) -> &BitSet {
        self.sys.line_mask(self.candidates[i])
    }

    fn run(&self, from: usize, k: usize, chosen: &mut Vec<usize>, cover: &mut BitSet) -> Result<bool> {
        if self.cfg.cancel.as_ref().is_some_and(|c| c.is_cancelled()) {
            return Err(Error::Cancelled);
        }
        if chosen.len() == k {
            return Ok(cover == self.target && self.has_pendants(chosen));
        }
        let mut reach = cover.clone();
        reach.union_with(&self.suffix_cover[from]);
        if &reach != self.target {
            return Ok(false);
        }
        let need = k - chosen.len();
        for i in from..=self.candidates.len() - need {
            if chosen.iter().any(|&c| !self.mask(c).intersects(self.mask(i))) {
                continue;
            }
            let saved = cover.clone();
            cover.union_with(self.mask(i));
            chosen.push(i);
            if self.run(i + 1, k, chosen, cover)? {
                return Ok(true);
            }
            chosen.pop();
            *cover = saved;
        }
        Ok(false)
    }

    fn has_pendants(&self, chosen: &[usize]) -> bool {
        let mut deg = vec![0u32; self.sys.num_points()];
        for &c in chosen {
            for p in self.mask(c).iter() {
                deg[p] += 1;
            }
        }
        chosen.iter().all(|&c| self.mask(c).iter().any(|p| deg[p] == 1))
    }
}

/// Values for the claim that an even `r`, `r`-uniform intersecting system
/// with ν₂ = r + 1 has exactly r + 1 lines and τ = (r + 2) / 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddPackingCheck {
    pub r: usize,
    pub num_lines: usize,
    pub nu2: usize,
    pub tau: usize,
}

impl OddPackingCheck {
    pub fn hypothesis(&self) -> bool {
        self.nu2 == self.r + 1
    }

    pub fn report(&self) -> Report {
        let mut rep = Report::new("odd 2-packing");
        let lower = self.nu2.div_ceil(2);
        rep.push(Clause::new(
            "tau >= ceil(nu2/2)",
            format!(">= {lower}"),
            self.tau,
            self.tau >= lower,
        ));
        if self.hypothesis() {
            rep.push(Clause::equal("|L| = r + 1", self.r + 1, self.num_lines));
            rep.push(Clause::equal("tau = (r + 2)/2", (self.r + 2) / 2, self.tau));
            rep.push(Clause::equal("tau = ceil(nu2/2)", lower, self.tau));
        } else {
            rep.note(format!("nu2 = {} differs from r + 1 = {}", self.nu2, self.r + 1));
        }
        rep
    }
}

pub fn check_lemma_3_1(sys: &LinearSystem, cfg: &SolverConfig) -> Result<OddPackingCheck> {
    let r = sys.rank()?;
    if !sys.is_uniform(r) {
        return Err(Error::NotUniform(r));
    }
    if !sys.is_intersecting() {
        return Err(Error::NotIntersecting);
    }
    if r % 2 == 1 {
        return Err(Error::Precondition(format!("rank {r} is odd")));
    }
    Ok(OddPackingCheck {
        r,
        num_lines: sys.num_lines(),
        nu2: two_packing_number_with(sys, cfg)?.value,
        tau: transversal_number_with(sys, cfg)?.value,
    })
}

#[derive(Debug, Clone)]
pub struct MainTheoremCheck {
    pub q: usize,
    pub derived: DerivedPair,
    /// Embedding of the prime system into PG(2,q), when one exists.
    pub embedding: Option<Mapping>,
    pub report: Report,
}

impl MainTheoremCheck {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

/// Runs the derivation on a member of the rank `q + 2` family and checks
/// every claimed property of the prime system, including its embedding into
/// PG(2,q).
pub fn check_main_theorem(sys: &LinearSystem, q: usize, cfg: &SolverConfig) -> Result<MainTheoremCheck> {
    if q % 2 == 1 || crate::field::prime_power(q as u64).is_none() {
        return Err(Error::Precondition(format!("q = {q} must be an even prime power")));
    }
    let plane = projective_plane_with(q, &cfg.caps)?;
    let r = q + 2;
    let derived = extract_star(sys, r, cfg)?;
    let mut report = Report::new(format!("plane subsystem, q = {q}"));

    report.push(Clause::equal("source rank", r, sys.rank()?));
    report.push(Clause::equal("source intersecting", true, sys.is_intersecting()));
    report.push(Clause::equal(
        "gamma(source) = q + 1",
        q + 1,
        derived.chain.gamma_source,
    ));
    for c in derived.invariants() {
        report.push(c);
    }
    let chain = &derived.chain;
    report.push(Clause::new(
        "gamma(P,L) = gamma(P*) = tau(P*) = tau(P') = r - 1",
        json!([r - 1, r - 1, r - 1, r - 1]),
        json!([chain.gamma_source, chain.gamma_star, chain.tau_star, chain.tau_prime]),
        chain.holds(),
    ));

    let (prime, _) = derived.prime.compact();
    let plane_size = q * q + q + 1;

    report.push(Clause::equal("(a) P' is (q+1)-uniform", true, prime.is_uniform(q + 1)));
    report.push(Clause::equal("(a) P' is intersecting", true, prime.is_intersecting()));
    report.push(Clause::equal("(b) |P'| = q^2 + q + 1", plane_size, prime.num_points()));
    let m = prime.num_lines();
    report.push(Clause::new(
        "(c) 3q <= |L'| <= q^2 + q + 1",
        format!("[{}, {}]", 3 * q, plane_size),
        m,
        3 * q <= m && m <= plane_size,
    ));

    let profile = prime.degree_profile();
    let worst_line = prime
        .lines()
        .iter()
        .map(|l| l.iter().filter(|&&p| profile.degrees[p] == 2).count())
        .max()
        .unwrap_or(0);
    report.push(Clause::new(
        "(d) each line of P' has at most one point of degree 2",
        "<= 1",
        worst_line,
        worst_line <= 1,
    ));
    report.push(Clause::equal("(d) max degree of P' = q + 1", q + 1, profile.max_degree));

    let tau = transversal_number_with(&prime, cfg)?;
    let nu2 = two_packing_number_with(&prime, cfg)?;
    report.push(Clause::equal("(e) tau(P') = q + 1", q + 1, tau.value));
    report.push(Clause::equal("(e) nu2(P') = q + 2", q + 2, nu2.value));
    report.push(Clause::equal(
        "(e) tau(P') = nu2(P') - 1",
        nu2.value as i64 - 1,
        tau.value as i64,
    ));

    let embedding = embeds_in_with(&prime, &plane.system, &cfg.caps)?;
    let image = embedding.as_ref().map_or(0, |e| e.points.len());
    report.push(Clause::equal("(f) P' embeds in PG(2,q)", true, embedding.is_some()));
    report.push(Clause::equal(
        "(f) embedding spans every plane point",
        plane_size,
        image,
    ));

    let gamma = domination_number_with(&prime, cfg)?;
    report.push(Clause::equal("(g) gamma(P') = 1", 1, gamma.value));

    if m == plane_size {
        if let Some(e) = &embedding {
            report.push(dual_hyperoval_clause(&plane, &prime, e));
        }
    }
    Ok(MainTheoremCheck {
        q,
        derived,
        embedding,
        report,
    })
}

/// Pulls the lines dual to the hyperoval back through the embedding and
/// checks they form a 2-packing of size q + 2 in the prime system.
fn dual_hyperoval_clause(plane: &PlaneModel, prime: &LinearSystem, embedding: &Mapping) -> Clause {
    let packing: Option<Vec<usize>> = plane.hyperoval().ok().and_then(|h| {
        plane
            .dual_lines(&h.points)
            .into_iter()
            .map(|l| embedding.preimage_of_line(l))
            .collect()
    });
    let ok = packing
        .as_ref()
        .is_some_and(|p| p.len() == plane.order + 2 && is_two_packing(prime, p));
    Clause::new(
        "(e) lines dual to a hyperoval form a 2-packing of size q + 2",
        plane.order + 2,
        json!(packing),
        ok,
    )
}

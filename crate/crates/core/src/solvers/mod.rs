//! Exact transversal, domination and 2-packing numbers.
//!
//! All three solvers are depth-first branch and bound over bit-set states
//! with lowest-index tie-breaking, so a given input always yields the same
//! witness whatever the thread count.

mod domination;
mod engine;
mod packing;
mod transversal;

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::report::{Clause, Report};
use crate::system::LinearSystem;

pub use engine::CancelToken;
pub use transversal::greedy_transversal;

use engine::{solve, Incumbent, Outcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveKind {
    Transversal,
    Domination,
    TwoPacking,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub kind: SolveKind,
    pub value: usize,
    /// Points for transversals and dominating sets, line indices for packings.
    pub witness: Vec<usize>,
    pub nodes: u64,
    pub elapsed: Duration,
}

#[derive(Serialize)]
struct SolveRecord<'a> {
    kind: SolveKind,
    value: usize,
    witness: &'a [usize],
    nodes: u64,
    ms: u64,
}

impl SolveResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&SolveRecord {
            kind: self.kind,
            value: self.value,
            witness: &self.witness,
            nodes: self.nodes,
            ms: self.elapsed.as_millis() as u64,
        })
        .expect("solve results serialize")
    }
}

#[derive(Debug, Clone, Default)]
pub struct SolverConfig {
    pub caps: Caps,
    /// Worker threads; 0 and 1 both mean sequential.
    pub threads: usize,
    pub cancel: Option<CancelToken>,
}

impl SolverConfig {
    pub fn with_threads(threads: usize) -> Self {
        Self {
            threads,
            ..Self::default()
        }
    }
}

fn finish(kind: SolveKind, out: Outcome, start: Instant) -> SolveResult {
    SolveResult {
        kind,
        value: out.best.value,
        witness: out.best.witness,
        nodes: out.nodes,
        elapsed: start.elapsed(),
    }
}

fn check_size(sys: &LinearSystem, caps: &Caps) -> Result<()> {
    Caps::check("point set", sys.num_points(), caps.solver_points)?;
    Caps::check("line set", sys.num_lines(), caps.solver_lines)
}

pub fn transversal_number(sys: &LinearSystem) -> Result<SolveResult> {
    transversal_number_with(sys, &SolverConfig::default())
}

/// τ: the fewest points meeting every line. Branches on the points of an
/// uncovered line with the fewest remaining candidates; prunes with a greedy
/// disjoint-line bound; starts from [`greedy_transversal`].
pub fn transversal_number_with(sys: &LinearSystem, cfg: &SolverConfig) -> Result<SolveResult> {
    if sys.num_lines() == 0 {
        return Err(Error::NoLines);
    }
    check_size(sys, &cfg.caps)?;
    let start = Instant::now();
    let greedy = greedy_transversal(sys);
    let initial = Incumbent {
        value: greedy.len(),
        witness: greedy,
    };
    let out = solve(
        &transversal::Transversal::new(sys),
        initial,
        cfg.threads,
        cfg.cancel.as_ref(),
    )?;
    Ok(finish(SolveKind::Transversal, out, start))
}

pub fn domination_number(sys: &LinearSystem) -> Result<SolveResult> {
    domination_number_with(sys, &SolverConfig::default())
}

/// γ: the fewest points such that every point is one of them or collinear
/// with one of them. Isolated points can only dominate themselves.
pub fn domination_number_with(sys: &LinearSystem, cfg: &SolverConfig) -> Result<SolveResult> {
    check_size(sys, &cfg.caps)?;
    let start = Instant::now();
    let problem = domination::Domination::new(sys);
    let greedy = problem.greedy();
    let initial = Incumbent {
        value: greedy.len(),
        witness: greedy,
    };
    let out = solve(&problem, initial, cfg.threads, cfg.cancel.as_ref())?;
    Ok(finish(SolveKind::Domination, out, start))
}

pub fn two_packing_number(sys: &LinearSystem) -> Result<SolveResult> {
    two_packing_number_with(sys, &SolverConfig::default())
}

/// ν₂: the most lines with no point on three of them.
pub fn two_packing_number_with(sys: &LinearSystem, cfg: &SolverConfig) -> Result<SolveResult> {
    if sys.num_lines() == 0 {
        return Err(Error::NoLines);
    }
    check_size(sys, &cfg.caps)?;
    let start = Instant::now();
    let initial = Incumbent {
        value: 0,
        witness: Vec::new(),
    };
    let out = solve(
        &packing::TwoPacking::new(sys),
        initial,
        cfg.threads,
        cfg.cancel.as_ref(),
    )?;
    Ok(finish(SolveKind::TwoPacking, out, start))
}

// Witness checkers, written directly from the definitions and independent of
// the search code.

pub fn is_transversal(sys: &LinearSystem, points: &[usize]) -> bool {
    sys.lines().iter().all(|l| l.iter().any(|p| points.contains(p)))
}

pub fn is_dominating(sys: &LinearSystem, points: &[usize]) -> bool {
    (0..sys.num_points()).all(|u| {
        points.contains(&u)
            || points
                .iter()
                .any(|&v| sys.lines().iter().any(|l| l.contains(&u) && l.contains(&v)))
    })
}

pub fn is_two_packing(sys: &LinearSystem, lines: &[usize]) -> bool {
    let mut distinct = lines.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != lines.len() || distinct.iter().any(|&l| l >= sys.num_lines()) {
        return false;
    }
    let mut count = vec![0u32; sys.num_points()];
    for &l in lines {
        for &p in sys.line(l) {
            count[p] += 1;
        }
    }
    count.iter().all(|&c| c <= 2)
}

/// Values behind the covering condition `|L| <= deg(p) + deg(q) + ν₂ - 3`
/// and its conclusion `τ <= ν₂ - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringCheck {
    pub num_lines: usize,
    pub max_degree: usize,
    pub second_max_degree: usize,
    pub nu2: usize,
    pub tau: usize,
    pub hypothesis: bool,
    /// `None` when the hypothesis fails.
    pub conclusion: Option<bool>,
}

impl CoveringCheck {
    /// Fails only when the hypothesis holds and the conclusion does not.
    pub fn consistent(&self) -> bool {
        self.conclusion != Some(false)
    }

    pub fn report(&self) -> Report {
        let mut r = Report::new("covering bound");
        let bound = self.max_degree as i64 + self.second_max_degree as i64 + self.nu2 as i64 - 3;
        r.push(Clause::new(
            "hypothesis |L| <= deg(p) + deg(q) + nu2 - 3",
            format!("{} <= {}", self.num_lines, bound),
            self.hypothesis,
            true,
        ));
        match self.conclusion {
            Some(ok) => {
                r.push(Clause::new(
                    "conclusion tau <= nu2 - 1",
                    format!("tau <= {}", self.nu2 as i64 - 1),
                    self.tau,
                    ok,
                ));
            }
            None => {
                r.note("hypothesis not satisfied");
            }
        }
        r
    }
}

pub fn check_theorem_2_5(sys: &LinearSystem) -> Result<CoveringCheck> {
    check_theorem_2_5_with(sys, &SolverConfig::default())
}

pub fn check_theorem_2_5_with(sys: &LinearSystem, cfg: &SolverConfig) -> Result<CoveringCheck> {
    let profile = sys.degree_profile();
    let nu2 = two_packing_number_with(sys, cfg)?.value;
    let tau = transversal_number_with(sys, cfg)?.value;
    let lhs = sys.num_lines() as i64;
    let rhs = profile.max_degree as i64 + profile.second_max_degree as i64 + nu2 as i64 - 3;
    let hypothesis = lhs <= rhs;
    Ok(CoveringCheck {
        num_lines: sys.num_lines(),
        max_degree: profile.max_degree,
        second_max_degree: profile.second_max_degree,
        nu2,
        tau,
        hypothesis,
        conclusion: hypothesis.then_some(tau < nu2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::fano;

    fn triangle() -> LinearSystem {
        LinearSystem::new(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
    }

    fn single_line() -> LinearSystem {
        LinearSystem::new(3, vec![vec![0, 1, 2]]).unwrap()
    }

    #[test]
    fn fano_values() {
        let f = fano();
        let tau = transversal_number(&f).unwrap();
        assert_eq!(tau.value, 3);
        assert!(is_transversal(&f, &tau.witness));
        let gamma = domination_number(&f).unwrap();
        assert_eq!(gamma.value, 1);
        assert!(is_dominating(&f, &gamma.witness));
        let nu2 = two_packing_number(&f).unwrap();
        assert_eq!(nu2.value, 4);
        assert!(is_two_packing(&f, &nu2.witness));
    }

    #[test]
    fn small_cases() {
        assert_eq!(transversal_number(&single_line()).unwrap().value, 1);
        assert_eq!(two_packing_number(&triangle()).unwrap().value, 3);
        let with_isolated = LinearSystem::new(4, vec![vec![0, 1, 2]]).unwrap();
        let gamma = domination_number(&with_isolated).unwrap();
        assert_eq!(gamma.value, 2);
        assert!(gamma.witness.contains(&3));
    }

    #[test]
    fn no_lines() {
        let empty = LinearSystem::new(2, vec![]).unwrap();
        assert_eq!(transversal_number(&empty).unwrap_err(), Error::NoLines);
        assert_eq!(two_packing_number(&empty).unwrap_err(), Error::NoLines);
        assert_eq!(domination_number(&empty).unwrap().value, 2);
    }

    #[test]
    fn size_caps() {
        let cfg = SolverConfig {
            caps: Caps {
                solver_points: 5,
                ..Caps::default()
            },
            ..SolverConfig::default()
        };
        assert!(matches!(
            transversal_number_with(&fano(), &cfg),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn cancellation() {
        let cancel = CancelToken::new();
        cancel.cancel();
        let cfg = SolverConfig {
            cancel: Some(cancel),
            ..SolverConfig::default()
        };
        assert_eq!(two_packing_number_with(&fano(), &cfg).unwrap_err(), Error::Cancelled);
    }

    #[test]
    fn greedy_transversal_is_valid() {
        let f = fano();
        let g = greedy_transversal(&f);
        assert!(g.len() <= 4);
        assert!(is_transversal(&f, &g));
        assert_eq!(greedy_transversal(&single_line()), vec![0]);
        assert!(greedy_transversal(&LinearSystem::new(3, vec![]).unwrap()).is_empty());
    }

    #[test]
    fn thread_count_does_not_change_witnesses() {
        let f = fano();
        for threads in [2, 3, 8] {
            let cfg = SolverConfig::with_threads(threads);
            assert_eq!(
                transversal_number_with(&f, &cfg).unwrap().witness,
                transversal_number(&f).unwrap().witness
            );
            assert_eq!(
                domination_number_with(&f, &cfg).unwrap().witness,
                domination_number(&f).unwrap().witness
            );
            assert_eq!(
                two_packing_number_with(&f, &cfg).unwrap().witness,
                two_packing_number(&f).unwrap().witness
            );
        }
    }

    #[test]
    fn covering_condition_examples() {
        let f = check_theorem_2_5(&fano()).unwrap();
        assert_eq!(
            (f.num_lines, f.max_degree, f.second_max_degree, f.nu2, f.tau),
            (7, 3, 3, 4, 3)
        );
        assert!(f.hypothesis);
        assert_eq!(f.conclusion, Some(true));

        let s = check_theorem_2_5(&single_line()).unwrap();
        assert_eq!((s.max_degree, s.second_max_degree, s.nu2), (1, 1, 1));
        assert!(!s.hypothesis);
        assert_eq!(s.conclusion, None);
        assert!(s.consistent());
        assert_eq!(s.report().notes, vec!["hypothesis not satisfied".to_string()]);
    }

    #[test]
    fn json_record_fields() {
        let r = transversal_number(&fano()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["kind"], "transversal");
        assert_eq!(v["value"], 3);
        assert!(v["witness"].is_array());
        assert!(v["nodes"].is_u64());
        assert!(v["ms"].is_u64());
    }
}

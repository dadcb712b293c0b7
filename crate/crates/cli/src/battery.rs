//! The full verification run behind `check-paper`.

use anyhow::Result;
use linsys::constructions::{
    check_lemma_3_1, check_main_theorem, extend_with_pendant_points, fano_minus_line, triangular_system,
};
use linsys::field::prime_power;
use linsys::geometry::{projective_plane_with, verify_plane_axioms};
use linsys::iso::are_isomorphic_with;
use linsys::report::{Clause, Report};
use linsys::solvers::{
    check_theorem_2_5_with, domination_number_with, is_two_packing, transversal_number_with, two_packing_number_with,
    SolverConfig,
};
use linsys::{Error, LinearSystem};

/// One report per group of checks, in a fixed order.
pub fn check_paper(q: usize, cfg: &SolverConfig) -> Result<Vec<Report>> {
    if prime_power(q as u64).is_none() {
        return Err(Error::NotPrimePower(q as u64).into());
    }
    let plane = projective_plane_with(q, &cfg.caps)?;
    let sys = &plane.system;
    let even = q.is_multiple_of(2);
    let n = q * q + q + 1;
    let mut reports = Vec::new();

    let mut rep = Report::new(format!("PG(2,{q})"));
    let axioms = verify_plane_axioms(sys);
    rep.push(Clause::new(
        "projective plane axioms",
        "none violated",
        axioms
            .violation
            .as_ref()
            .map_or("none violated".to_string(), ToString::to_string),
        axioms.is_plane(),
    ));
    rep.push(Clause::equal("points = q^2 + q + 1", n, sys.num_points()));
    rep.push(Clause::equal("lines = q^2 + q + 1", n, sys.num_lines()));
    rep.push(Clause::equal("(q+1)-uniform", true, sys.is_uniform(q + 1)));
    let tau = transversal_number_with(sys, cfg)?.value;
    let nu2 = two_packing_number_with(sys, cfg)?.value;
    rep.push(Clause::equal("tau = q + 1", q + 1, tau));
    if even {
        rep.push(Clause::equal("nu2 = q + 2", q + 2, nu2));
    } else {
        rep.push(Clause::equal("nu2 = q + 1", q + 1, nu2));
    }
    rep.push(Clause::equal("gamma = 1", 1, domination_number_with(sys, cfg)?.value));
    reports.push(rep);

    if even {
        let mut rep = Report::new(format!("hyperoval in PG(2,{q})"));
        let arc = plane.hyperoval()?;
        rep.push(Clause::equal("size q + 2", q + 2, arc.points.len()));
        rep.push(Clause::equal("no three collinear", true, plane.is_arc(&arc.points)));
        let dual = plane.dual_lines(&arc.points);
        rep.push(Clause::equal(
            "dual lines form a 2-packing",
            true,
            is_two_packing(sys, &dual),
        ));
        rep.push(Clause::equal("dual 2-packing has size q + 2", q + 2, dual.len()));
        reports.push(rep);
    }

    let mut rep = Report::new(format!("covering bound on PG(2,{q})"));
    let cover = check_theorem_2_5_with(sys, cfg)?;
    rep.extend(cover.report());
    rep.push(Clause::equal("consistent", true, cover.consistent()));
    reports.push(rep);

    for m in [5, 7] {
        let t = triangular_system(m)?;
        let mut rep = Report::new(format!("odd 2-packing on T({m})"));
        let check = check_lemma_3_1(&t, cfg)?;
        rep.push(Clause::equal("|L| = m", m, check.num_lines));
        rep.push(Clause::equal("nu2 = r + 1", check.r + 1, check.nu2));
        rep.extend(check.report());
        reports.push(rep);
    }

    if even {
        let ext = extend_with_pendant_points(sys)?;
        reports.push(derivation_report(&ext, q, cfg, None)?);
        if q == 2 {
            for i in 0..7 {
                let base = fano_minus_line(i)?;
                let ext = extend_with_pendant_points(&base)?;
                reports.push(derivation_report(&ext, q, cfg, Some(&base))?);
            }
        }
    } else {
        let mut rep = Report::new(format!("plane subsystem, q = {q}"));
        rep.note("even q required: pendant-extension derivation skipped");
        reports.push(rep);
    }
    Ok(reports)
}

/// Derivation on an extension, plus an isomorphism check of the prime system
/// against `expected` (the plane itself when `None`).
fn derivation_report(
    ext: &LinearSystem,
    q: usize,
    cfg: &SolverConfig,
    expected: Option<&LinearSystem>,
) -> Result<Report> {
    let check = check_main_theorem(ext, q, cfg)?;
    let mut rep = check.report.clone();
    if let Some(name) = ext.name() {
        rep.check = format!("{} on {name}", rep.check);
    }
    let (prime, _) = check.derived.prime.compact();
    let target = match expected {
        Some(sys) => sys.clone(),
        None => projective_plane_with(q, &cfg.caps)?.system,
    };
    let cert = are_isomorphic_with(&prime, &target, &cfg.caps)?;
    rep.push(Clause::equal(
        format!("P' isomorphic to {}", target.name().unwrap_or("expected system")),
        true,
        cert.is_isomorphic() && cert.verify(),
    ));
    if q == 2 && expected.is_some() {
        rep.push(Clause::equal("|L'| = 3q", 3 * q, prime.num_lines()));
    }
    Ok(rep)
}

//! Acceptance run: one PASS/FAIL line per criterion, each at its stated
//! tolerance and time bound. Exits non-zero if any criterion fails.

#[path = "../../core/tests/support/mod.rs"]
mod support;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use linsys::constructions::{
    check_lemma_3_1, check_main_theorem, extend_with_pendant_points, extract_star, fano_minus_line, triangular_system,
};
use linsys::geometry::{projective_plane, verify_plane_axioms};
use linsys::io::{from_json, parse_json_file};
use linsys::iso::are_isomorphic;
use linsys::solvers::{
    check_theorem_2_5, domination_number, is_two_packing, transversal_number, two_packing_number, SolverConfig,
};
use linsys::{fano, LinearSystem};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn tau(sys: &LinearSystem) -> Result<usize, String> {
    transversal_number(sys).map(|r| r.value).map_err(err)
}

fn nu2(sys: &LinearSystem) -> Result<usize, String> {
    two_packing_number(sys).map(|r| r.value).map_err(err)
}

fn plane_axioms_via_cli() -> Outcome {
    let dir = std::env::temp_dir().join(format!("linsys-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(err)?;
    for q in [2usize, 3, 4, 5, 7, 8] {
        let path = dir.join(format!("plane{q}.json"));
        let status = Command::new(env!("CARGO_BIN_EXE_linsys"))
            .args(["gen", "plane", "--q", &q.to_string(), "--out"])
            .arg(&path)
            .status()
            .map_err(err)?;
        ensure(status.success(), format!("gen plane --q {q} exited with {status}"))?;
        let text = std::fs::read_to_string(&path).map_err(err)?;
        let file = parse_json_file(&text).map_err(err)?;
        ensure(
            file.coords.as_ref().map(Vec::len) == Some(file.num_points),
            "coords missing",
        )?;
        let sys = from_json(&text).map_err(err)?;
        let report = verify_plane_axioms(&sys);
        let n = q * q + q + 1;
        ensure(report.is_plane(), format!("q = {q}: {:?}", report.violation))?;
        ensure(
            sys.num_points() == n && sys.num_lines() == n,
            format!("q = {q}: wrong counts"),
        )?;
        ensure(sys.is_uniform(q + 1), format!("q = {q}: not {}-uniform", q + 1))?;
        ensure(
            sys.degrees().iter().all(|&d| d == q + 1),
            format!("q = {q}: degree not {}", q + 1),
        )?;
    }
    std::fs::remove_dir_all(&dir).ok();
    Ok("q in {2,3,4,5,7,8}".into())
}

fn even_plane_invariants() -> Outcome {
    let mut seen = Vec::new();
    for (q, t, n) in [(2, 3, 4), (4, 5, 6)] {
        let sys = projective_plane(q).map_err(err)?.system;
        let (tv, nv) = (tau(&sys)?, nu2(&sys)?);
        ensure(tv == t && nv == n, format!("PG(2,{q}): tau {tv}, nu2 {nv}"))?;
        seen.push(format!("PG(2,{q}) tau={tv} nu2={nv}"));
    }
    Ok(seen.join(", "))
}

fn odd_plane_contrast() -> Outcome {
    let sys = projective_plane(3).map_err(err)?.system;
    let (tv, nv) = (tau(&sys)?, nu2(&sys)?);
    ensure(tv == 4 && nv == 4, format!("PG(2,3): tau {tv}, nu2 {nv}"))?;
    Ok("PG(2,3) tau=4 nu2=4".into())
}

fn hyperovals() -> Outcome {
    for q in [2usize, 4, 8] {
        let plane = projective_plane(q).map_err(err)?;
        let arc = plane.hyperoval().map_err(err)?;
        ensure(arc.points.len() == q + 2, format!("q = {q}: size {}", arc.points.len()))?;
        ensure(
            support::triples_non_collinear(&plane.system, &arc.points),
            format!("q = {q}: collinear triple"),
        )?;
        let dual = plane.dual_lines(&arc.points);
        ensure(dual.len() == q + 2, format!("q = {q}: {} dual lines", dual.len()))?;
        ensure(
            is_two_packing(&plane.system, &dual),
            format!("q = {q}: dual lines not a 2-packing"),
        )?;
    }
    Ok("q in {2,4,8}: arcs of size q+2 with dual 2-packings".into())
}

fn triangular_packings() -> Outcome {
    let cfg = SolverConfig::default();
    let t5 = triangular_system(5).map_err(err)?;
    let c5 = check_lemma_3_1(&t5, &cfg).map_err(err)?;
    ensure(
        c5.nu2 == 5 && c5.num_lines == 5 && c5.tau == 3 && c5.tau == (c5.r + 2) / 2,
        format!("T(5): {c5:?}"),
    )?;
    let t7 = triangular_system(7).map_err(err)?;
    let c7 = check_lemma_3_1(&t7, &cfg).map_err(err)?;
    ensure(c7.tau == 4 && c7.report().passed(), format!("T(7): {c7:?}"))?;
    Ok("T(5) nu2=5 |L|=5 tau=3; T(7) tau=4".into())
}

fn derivation_report(q: usize, lines: usize) -> Outcome {
    let cfg = SolverConfig::default();
    let plane = projective_plane(q).map_err(err)?.system;
    let ext = extend_with_pendant_points(&plane).map_err(err)?;
    let check = check_main_theorem(&ext, q, &cfg).map_err(err)?;
    if let Some(c) = check.report.failures().next() {
        return Err(format!("{} expected {} actual {}", c.clause, c.expected, c.actual));
    }
    let (prime, _) = check.derived.prime.compact();
    let n = q * q + q + 1;
    let (tv, nv) = (tau(&prime)?, nu2(&prime)?);
    let delta = prime.degree_profile().max_degree;
    ensure(tv == q + 1 && nv == q + 2, format!("tau {tv}, nu2 {nv}"))?;
    ensure(
        prime.num_points() == n && prime.num_lines() == lines,
        "wrong size of P'",
    )?;
    ensure(prime.num_lines() >= 3 * q && delta == q + 1, "line count or max degree")?;
    let span = check.embedding.as_ref().map_or(0, |e| e.points.len());
    ensure(span == n, format!("embedding spans {span} points"))?;
    Ok(format!(
        "{} clauses; tau={tv} nu2={nv} |P'|={} |L'|={} max degree={delta} span={span}",
        check.report.clauses.len(),
        prime.num_points(),
        prime.num_lines()
    ))
}

fn fano_recovery() -> Outcome {
    let cfg = SolverConfig::default();
    let cases = [(fano(), 7usize), (fano_minus_line(0).map_err(err)?, 6)];
    let mut out = Vec::new();
    for (base, lines) in cases {
        let ext = extend_with_pendant_points(&base).map_err(err)?;
        let derived = extract_star(&ext, 4, &cfg).map_err(err)?;
        let (prime, _) = derived.prime.compact();
        let cert = are_isomorphic(&prime, &base).map_err(err)?;
        ensure(
            cert.is_isomorphic() && cert.verify(),
            format!("prime not isomorphic to {:?}", base.name()),
        )?;
        ensure(prime.num_lines() == lines, format!("|L'| = {}", prime.num_lines()))?;
        let other = if lines == 7 {
            fano_minus_line(0).map_err(err)?
        } else {
            fano()
        };
        ensure(
            !are_isomorphic(&prime, &other).map_err(err)?.is_isomorphic(),
            "prime matches both",
        )?;
        out.push(format!("|L'|={}", prime.num_lines()));
    }
    Ok(format!(
        "Fano and Fano-minus-line recovered with verified certificates ({})",
        out.join(", ")
    ))
}

fn corpus_oracles() -> Outcome {
    let corpus = support::corpus();
    ensure(corpus.len() >= 100, format!("corpus has {} systems", corpus.len()))?;
    let (mut intersecting, mut covering) = (0, 0);
    for (name, sys) in &corpus {
        let t = tau(sys)?;
        let n = nu2(sys)?;
        let g = domination_number(sys).map_err(err)?.value;
        let (bt, bg, bn) = (
            support::brute_tau(sys),
            support::brute_gamma(sys),
            support::brute_nu2(sys),
        );
        ensure(
            (t, g, n) == (bt, bg, bn),
            format!("{name}: solver {:?} oracle {:?}", (t, g, n), (bt, bg, bn)),
        )?;
        if sys.is_intersecting() {
            intersecting += 1;
            ensure(t >= n.div_ceil(2), format!("{name}: tau {t} < ceil({n}/2)"))?;
            let r = sys.rank().map_err(err)?;
            ensure(g < r, format!("{name}: gamma {g} > rank - 1 = {}", r - 1))?;
        }
        if sys.isolated_points().is_empty() {
            ensure(g <= t, format!("{name}: gamma {g} > tau {t}"))?;
        }
        let cover = check_theorem_2_5(sys).map_err(err)?;
        if cover.hypothesis {
            covering += 1;
        }
        ensure(
            cover.consistent(),
            format!("{name}: covering hypothesis holds but tau > nu2 - 1"),
        )?;
    }
    Ok(format!(
        "{} systems, {intersecting} intersecting, covering hypothesis met on {covering}",
        corpus.len()
    ))
}

fn covering_condition() -> Outcome {
    let corpus = support::corpus();
    let mut met = 0;
    for (name, sys) in &corpus {
        let cover = check_theorem_2_5(sys).map_err(err)?;
        let profile = sys.degree_profile();
        let bound = profile.max_degree + profile.second_max_degree + cover.nu2;
        let hypothesis = sys.num_lines() + 3 <= bound;
        ensure(
            hypothesis == cover.hypothesis,
            format!("{name}: hypothesis misreported"),
        )?;
        if hypothesis {
            met += 1;
            let t = support::brute_tau(sys);
            ensure(t < cover.nu2, format!("{name}: tau {t}, nu2 {}", cover.nu2))?;
        }
    }
    ensure(met > 0, "hypothesis never met on the corpus")?;
    Ok(format!(
        "conclusion holds on all {met} instances meeting the hypothesis"
    ))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, Duration, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("1 plane axioms", Duration::from_secs(1), plane_axioms_via_cli),
        (
            "2 even-order plane tau/nu2",
            Duration::from_secs(60),
            even_plane_invariants,
        ),
        ("3 odd-order contrast", Duration::from_secs(10), odd_plane_contrast),
        ("4 hyperoval arcs", Duration::from_secs(1), hyperovals),
        ("5 triangular 2-packings", Duration::from_secs(5), triangular_packings),
        ("6 derivation at q = 2", Duration::from_secs(5), || {
            derivation_report(2, 7)
        }),
        ("7 derivation at q = 4", Duration::from_secs(300), || {
            derivation_report(4, 21)
        }),
        ("8 Fano recovery", Duration::from_secs(5), fano_recovery),
        ("9 oracle equivalence", Duration::from_secs(120), corpus_oracles),
        ("10 covering condition", Duration::from_secs(120), covering_condition),
    ];
    let mut failed = 0;
    for (name, limit, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|msg| {
            if elapsed <= limit {
                Ok(msg)
            } else {
                Err(format!("took {elapsed:.2?}, limit {limit:?}"))
            }
        });
        match outcome {
            Ok(msg) => println!("PASS criterion {name} ({elapsed:.2?}): {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name} ({elapsed:.2?}): {msg}");
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all 10 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 10 criteria failed");
        ExitCode::FAILURE
    }
}

//! Brute-force reference values and a deterministic corpus of small systems.
//!
//! The enumerators below work on plain line lists and share nothing with the
//! branch-and-bound solvers.

#![allow(dead_code)]

use linsys::constructions::{extend_with_pendant_points, fano_minus_line, triangular_system};
use linsys::geometry::projective_plane;
use linsys::LinearSystem;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn line_masks(sys: &LinearSystem) -> Vec<u32> {
    assert!(sys.num_points() <= 32, "oracle works on at most 32 points");
    sys.lines()
        .iter()
        .map(|l| l.iter().fold(0u32, |m, &p| m | (1 << p)))
        .collect()
}

/// Smallest point set meeting every line, by enumerating all subsets.
pub fn brute_tau(sys: &LinearSystem) -> usize {
    let lines = line_masks(sys);
    let n = sys.num_points();
    (0u32..1 << n)
        .filter(|&s| lines.iter().all(|&l| l & s != 0))
        .map(u32::count_ones)
        .min()
        .expect("the full point set is a transversal") as usize
}

/// Smallest dominating set, by enumerating all subsets.
pub fn brute_gamma(sys: &LinearSystem) -> usize {
    let lines = line_masks(sys);
    let n = sys.num_points();
    // closed[u]: u together with everything sharing a line with u
    let closed: Vec<u32> = (0..n)
        .map(|u| {
            lines
                .iter()
                .filter(|&&l| l & (1 << u) != 0)
                .fold(1u32 << u, |m, &l| m | l)
        })
        .collect();
    let all = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    (0u32..1 << n)
        .filter(|&s| {
            let dominated = (0..n).filter(|&v| s & (1 << v) != 0).fold(0u32, |m, v| m | closed[v]);
            dominated == all
        })
        .map(u32::count_ones)
        .min()
        .unwrap() as usize
}

/// Largest set of lines with every point on at most two of them.
pub fn brute_nu2(sys: &LinearSystem) -> usize {
    let m = sys.num_lines();
    assert!(m <= 20, "oracle enumerates all line subsets");
    let n = sys.num_points();
    let mut best = 0;
    for s in 0u32..1 << m {
        let mut count = vec![0u8; n];
        let mut ok = true;
        'lines: for (i, line) in sys.lines().iter().enumerate() {
            if s & (1 << i) == 0 {
                continue;
            }
            for &p in line {
                count[p] += 1;
                if count[p] > 2 {
                    ok = false;
                    break 'lines;
                }
            }
        }
        if ok {
            best = best.max(s.count_ones() as usize);
        }
    }
    best
}

/// No line holds three of `points`, checked over every triple.
pub fn triples_non_collinear(sys: &LinearSystem, points: &[usize]) -> bool {
    let lines = line_sets(sys);
    let n = points.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let t = [points[i], points[j], points[k]];
                if lines.iter().any(|l| t.iter().all(|p| l.contains(p))) {
                    return false;
                }
            }
        }
    }
    true
}

fn line_sets(sys: &LinearSystem) -> Vec<std::collections::HashSet<usize>> {
    sys.lines().iter().map(|l| l.iter().copied().collect()).collect()
}

/// Linear system on `n` points built by inserting random lines that keep
/// linearity, up to `max_lines` lines.
pub fn random_linear_system(rng: &mut ChaCha8Rng, n: usize, max_lines: usize, max_size: usize) -> LinearSystem {
    let mut lines: Vec<Vec<usize>> = Vec::new();
    let points: Vec<usize> = (0..n).collect();
    for _ in 0..200 {
        if lines.len() == max_lines {
            break;
        }
        let size = rng.gen_range(2..=max_size.min(n));
        let mut line: Vec<usize> = points.choose_multiple(rng, size).copied().collect();
        line.sort_unstable();
        let fits = lines
            .iter()
            .all(|l| *l != line && l.iter().filter(|p| line.contains(p)).count() <= 1);
        if fits {
            lines.push(line);
        }
    }
    LinearSystem::new(n, lines).expect("greedy insertion keeps linearity")
}

/// Random subset of `k` lines of `host`, restricted to the points it covers.
pub fn random_subsystem(rng: &mut ChaCha8Rng, host: &LinearSystem, k: usize) -> LinearSystem {
    let mut idx: Vec<usize> = (0..host.num_lines()).collect();
    idx.shuffle(rng);
    idx.truncate(k);
    idx.sort_unstable();
    host.induced_subsystem(&idx).unwrap().compact().0
}

/// At least 100 systems with at most 16 points and 12 lines, mixing planes,
/// plane subsystems, triangular systems, pendant extensions and random
/// systems. Every instance has rank at least 2.
pub fn corpus() -> Vec<(String, LinearSystem)> {
    let mut out: Vec<(String, LinearSystem)> = Vec::new();
    let pg2 = projective_plane(2).unwrap().system;
    let pg3 = projective_plane(3).unwrap().system;
    out.push(("PG(2,2)".into(), pg2.clone()));
    for i in 0..7 {
        out.push((format!("PG(2,2) minus line {i}"), fano_minus_line(i).unwrap()));
    }
    for m in 3..=6 {
        out.push((format!("T({m})"), triangular_system(m).unwrap()));
    }
    let triangle = triangular_system(3).unwrap();
    out.push(("ext(T(3))".into(), extend_with_pendant_points(&triangle).unwrap()));
    out.push((
        "ext(T(4))".into(),
        extend_with_pendant_points(&triangular_system(4).unwrap()).unwrap(),
    ));
    out.push((
        "ext(PG(2,2) minus line)".into(),
        extend_with_pendant_points(&fano_minus_line(0).unwrap()).unwrap(),
    ));
    out.push(("PG(2,3) minus one line".into(), pg3.delete_line(0).unwrap().compact().0));

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    for k in 2..=12 {
        for rep in 0..2 {
            out.push((
                format!("PG(2,3) subsystem k={k} #{rep}"),
                random_subsystem(&mut rng, &pg3, k),
            ));
        }
    }
    for k in 2..=6 {
        out.push((format!("PG(2,2) subsystem k={k}"), random_subsystem(&mut rng, &pg2, k)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    for i in 0..60 {
        let n = 4 + i % 13;
        let sys = random_linear_system(&mut rng, n, 12, 5);
        out.push((format!("random #{i} (n={n})"), sys));
    }
    for (name, sys) in &out {
        assert!(sys.num_points() <= 16 && sys.num_lines() <= 12, "{name} too large");
        assert!(sys.rank().unwrap() >= 2, "{name} has rank below 2");
    }
    out
}

#[test]
fn oracle_sanity() {
    let f = linsys::fano();
    assert_eq!(brute_tau(&f), 3);
    assert_eq!(brute_gamma(&f), 1);
    assert_eq!(brute_nu2(&f), 4);
    let t5 = triangular_system(5).unwrap();
    assert_eq!(brute_tau(&t5), 3);
    assert_eq!(brute_nu2(&t5), 5);
}

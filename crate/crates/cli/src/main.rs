//! `linsys`: generate, solve and verify linear systems from the command line.
//!
//! Exit codes: 0 on success, 1 when a checked property is false, 2 on usage
//! or input errors.

mod battery;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use linsys::constructions::{extend_with_pendant_points, extract_star, fano_minus_line, triangular_system};
use linsys::geometry::projective_plane_with;
use linsys::io::{parse_any, to_json, SystemFile};
use linsys::iso::{are_isomorphic_with, embeds_in_with, Mapping};
use linsys::report::{Clause, Report};
use linsys::solvers::{
    domination_number_with, transversal_number_with, two_packing_number_with, SolveResult, SolverConfig,
};
use linsys::{Caps, Error, LinearSystem};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "linsys",
    version,
    about = "Exact invariants of linear systems and finite projective planes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated system as JSON.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Compute τ, γ or ν₂ exactly.
    Solve(SolveArgs),
    /// Recover the star and prime systems of a member of the rank-r family.
    Derive {
        file: PathBuf,
        /// Rank of the family; defaults to the rank of the input.
        #[arg(long)]
        r: Option<usize>,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Append a fresh degree-one point to every line.
    Extend {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every verification for planes of order Q.
    CheckPaper {
        #[arg(long)]
        q: usize,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Decide isomorphism after pendant reduction.
    Iso {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Look for an embedding of the first system into the second.
    Embed {
        sub: PathBuf,
        host: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// PG(2,q) with point coordinates.
    Plane {
        #[arg(long)]
        q: usize,
    },
    /// PG(2,q) with its conic-plus-nucleus hyperoval in the `arc` field.
    Hyperoval {
        #[arg(long)]
        q: usize,
    },
    /// Pairs drawn from m elements as points, one line per element.
    Triangular {
        #[arg(long)]
        m: usize,
    },
    /// Pendant extension of a uniform intersecting system.
    Extend {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// PG(2,2) with one line removed.
    FanoMinusLine {
        #[arg(long)]
        index: usize,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Invariant {
    #[arg(long)]
    tau: bool,
    #[arg(long)]
    gamma: bool,
    #[arg(long)]
    nu2: bool,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    invariant: Invariant,
    file: PathBuf,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    json: bool,
    /// Solver worker threads; results do not depend on this.
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

/// A run either completes with a verdict or fails on its input.
enum Verdict {
    Holds,
    Fails,
}

impl From<bool> for Verdict {
    fn from(ok: bool) -> Self {
        if ok {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Verdict::Holds) => ExitCode::SUCCESS,
        Ok(Verdict::Fails) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<Verdict> {
    let caps = Caps::from_env().context("reading LINSYS_CAPS")?;
    match cli.command {
        Command::Gen { kind, out } => {
            let file = generate(kind, &caps)?;
            emit(out.as_deref(), &file.to_json())?;
            Ok(Verdict::Holds)
        }
        Command::Extend { file, out } => {
            let sys = extend_with_pendant_points(&read_system(&file)?)?;
            emit(out.as_deref(), &to_json(&sys))?;
            Ok(Verdict::Holds)
        }
        Command::Solve(args) => solve(args, caps),
        Command::Derive { file, r, run, out } => derive(&file, r, config(caps, &run), run.json, out.as_deref()),
        Command::CheckPaper { q, run } => {
            let reports = battery::check_paper(q, &config(caps, &run))?;
            let ok = reports.iter().all(Report::passed);
            if run.json {
                println!("{}", serde_json::to_string(&reports)?);
            } else {
                for r in &reports {
                    print!("{r}");
                }
                println!("{}", if ok { "all checks passed" } else { "some checks FAILED" });
            }
            Ok(ok.into())
        }
        Command::Iso { a, b, json } => {
            let (a, b) = (read_system(&a)?, read_system(&b)?);
            let cert = are_isomorphic_with(&a, &b, &caps)?;
            let verified = cert.verify();
            if json {
                let value = json!({
                    "isomorphic": cert.is_isomorphic(),
                    "verified": verified,
                    "reduced_points": [cert.reduced_a.num_points(), cert.reduced_b.num_points()],
                    "reduced_lines": [cert.reduced_a.num_lines(), cert.reduced_b.num_lines()],
                    "mapping": cert.mapping.as_ref().map(mapping_json),
                });
                println!("{value}");
            } else if let Some(m) = &cert.mapping {
                println!("isomorphic (certificate verified: {verified})");
                print_mapping(m);
            } else {
                println!("not isomorphic");
            }
            Ok((cert.is_isomorphic() && verified).into())
        }
        Command::Embed { sub, host, json } => {
            let (sub, host) = (read_system(&sub)?, read_system(&host)?);
            let mapping = embeds_in_with(&sub, &host, &caps)?;
            let verified = mapping.as_ref().is_some_and(|m| m.verify(&sub, &host, false));
            if json {
                let value = json!({
                    "embeds": mapping.is_some(),
                    "verified": verified,
                    "mapping": mapping.as_ref().map(mapping_json),
                });
                println!("{value}");
            } else if let Some(m) = &mapping {
                println!("embeds (verified: {verified})");
                print_mapping(m);
            } else {
                println!("no embedding");
            }
            Ok((mapping.is_some() && verified).into())
        }
    }
}

fn config(caps: Caps, run: &RunArgs) -> SolverConfig {
    SolverConfig {
        caps,
        threads: run.threads,
        cancel: None,
    }
}

fn read_system(path: &Path) -> Result<LinearSystem> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_any(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, format!("{text}\n")).with_context(|| format!("writing {}", path.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn generate(kind: GenKind, caps: &Caps) -> Result<SystemFile> {
    Ok(match kind {
        GenKind::Plane { q } => projective_plane_with(q, caps)?.to_file(),
        GenKind::Hyperoval { q } => {
            let plane = projective_plane_with(q, caps)?;
            let arc = plane.hyperoval()?;
            SystemFile {
                arc: Some(arc.points),
                ..plane.to_file()
            }
        }
        GenKind::Triangular { m } => SystemFile::from_system(&triangular_system(m)?),
        GenKind::Extend { input } => SystemFile::from_system(&extend_with_pendant_points(&read_system(&input)?)?),
        GenKind::FanoMinusLine { index } => SystemFile::from_system(&fano_minus_line(index)?),
    })
}

fn solve(args: SolveArgs, caps: Caps) -> Result<Verdict> {
    let sys = read_system(&args.file)?;
    let cfg = config(caps, &args.run);
    let inv = &args.invariant;
    let (symbol, result): (&str, SolveResult) = if inv.tau {
        ("tau", transversal_number_with(&sys, &cfg)?)
    } else if inv.gamma {
        ("gamma", domination_number_with(&sys, &cfg)?)
    } else {
        ("nu2", two_packing_number_with(&sys, &cfg)?)
    };
    if args.run.json {
        println!("{}", result.to_json());
    } else {
        println!("{symbol} = {}", result.value);
        println!("witness: {}", join(&result.witness));
        println!("nodes: {}", result.nodes);
    }
    Ok(Verdict::Holds)
}

fn derive(path: &Path, r: Option<usize>, cfg: SolverConfig, json: bool, out: Option<&Path>) -> Result<Verdict> {
    let sys = read_system(path)?;
    let r = match r {
        Some(r) => r,
        None => sys.rank()?,
    };
    let derived = match extract_star(&sys, r, &cfg) {
        Ok(d) => d,
        Err(e @ (Error::NotMember { .. } | Error::NoStarFound(_))) => {
            println!("{e}");
            return Ok(Verdict::Fails);
        }
        Err(e) => return Err(e.into()),
    };
    let mut report = Report::new(format!("derivation, r = {r}"));
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
    if let Some(out) = out {
        emit(Some(out), &to_json(&derived.prime))?;
    }
    if json {
        let value = json!({
            "r": r,
            "star_lines": derived.star_lines,
            "pendant_points": derived.pendant_map,
            "prime": serde_json::from_str::<serde_json::Value>(&to_json(&derived.prime))?,
            "report": report,
        });
        println!("{value}");
    } else {
        println!("star lines: {}", join(&derived.star_lines));
        println!("pendant points: {}", join(&derived.pendant_map));
        let (prime, _) = derived.prime.compact();
        println!("prime: {} points, {} lines", prime.num_points(), prime.num_lines());
        print!("{report}");
    }
    Ok(report.passed().into())
}

fn mapping_json(m: &Mapping) -> serde_json::Value {
    json!({ "points": m.points, "lines": m.lines })
}

fn print_mapping(m: &Mapping) {
    let pairs: Vec<String> = m.points.iter().map(|(a, b)| format!("{a}->{b}")).collect();
    println!("points: {}", pairs.join(" "));
}

fn join(items: &[usize]) -> String {
    items.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

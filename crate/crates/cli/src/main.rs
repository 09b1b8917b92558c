//! Command-line front end: parses JSON problem files, dispatches to the
//! solver library, and emits machine-readable JSON on stdout with a prose
//! report on stderr.
//!
//! Exit codes: 0 ok, 2 schema violation, 3 non-square determinant,
//! 4 seeding failure, 5 proved empty, 6 degenerate derivation.

mod input;
mod report;

use clap::{Args, Parser, Subcommand};
use diophant::bilinear::{bilinear_general, find_rational_zero};
use diophant::pair_solver::{
    default_degenerate_root, necessary_condition, solve_via_degenerate,
    solve_via_square_pencil_with_height, SolutionStatus, VerdictTag,
};
use diophant::quadform::PencilForm;
use diophant::quartic::{
    derive_from_one, derive_from_two, grow_orbit, reduce_general, search_points, QuarticPoint,
};
use diophant::rational::format_rational;
use diophant::Error;
use input::{parse_point_list, parse_proj_vec, parse_xi_pair, ProblemFile};
use num_traits::Zero;
use report::{emit, fail, Format};

const EXIT_SCHEMA: i32 = 2;
const EXIT_NON_SQUARE_DET: i32 = 3;
const EXIT_SEEDING: i32 = 4;
const EXIT_PROVED_EMPTY: i32 = 5;
const EXIT_DEGENERATE: i32 = 6;

#[derive(Parser)]
#[command(
    name = "diophant",
    about = "Exact solver for quaternary quadratic Diophantine equations, pairs of quadrics, and quartic models of elliptic curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// JSON problem file
    #[arg(long)]
    input: std::path::PathBuf,
    /// Search height bound
    #[arg(long)]
    height: Option<u32>,
    /// Orbit growth depth
    #[arg(long)]
    depth: Option<u32>,
    /// Seed solution "x1,x2,x3,x4"
    #[arg(long)]
    seed: Option<String>,
    /// Pencil point "a,b"
    #[arg(long)]
    xi: Option<String>,
    /// Worker threads for parallel searches (output is unchanged)
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Diagonalize a quadratic form and report its determinant class
    Diag(Common),
    /// Construct a complete bilinear solution of a quadratic form
    Bilinear(Common),
    /// Decide and solve a pair of simultaneous quadratic equations
    Pair(Common),
    /// Operations on quartic curves y^2 = a0 t^4 + ... + a4
    Quartic {
        #[command(subcommand)]
        action: QuarticAction,
    },
    /// Re-verify claimed solutions against their equations
    Verify(Common),
}

#[derive(Subcommand)]
enum QuarticAction {
    /// Enumerate points with t = u/v up to the height bound
    Search(Common),
    /// Derive new points from the known points
    Derive(QuarticDerive),
    /// Grow the closure of the known points under both derivations
    Orbit(QuarticDerive),
    /// Reduce a non-monic quartic at a base point and carry points over
    Reduce(QuarticReduce),
}

#[derive(Args)]
struct QuarticDerive {
    #[command(flatten)]
    common: Common,
    /// Seed points "(t1,y1),(t2,y2)" overriding the payload list
    #[arg(long)]
    seeds: Option<String>,
}

#[derive(Args)]
struct QuarticReduce {
    #[command(flatten)]
    common: Common,
    /// Base point "(t,y)" with y != 0
    #[arg(long)]
    point: String,
    /// Further points "(t,y),..." to carry onto the monic model
    #[arg(long)]
    map: Option<String>,
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            code
        }
    };
    std::process::exit(code);
}

type CmdResult = Result<i32, (i32, String)>;

fn schema_err(e: impl std::fmt::Display) -> (i32, String) {
    (EXIT_SCHEMA, e.to_string())
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Diag(c) => cmd_diag(c),
        Command::Bilinear(c) => cmd_bilinear(c),
        Command::Pair(c) => cmd_pair(c),
        Command::Quartic { action } => match action {
            QuarticAction::Search(c) => cmd_quartic_search(c),
            QuarticAction::Derive(c) => cmd_quartic_derive(c),
            QuarticAction::Orbit(c) => cmd_quartic_orbit(c),
            QuarticAction::Reduce(c) => cmd_quartic_reduce(c),
        },
        Command::Verify(c) => cmd_verify(c),
    }
}

fn load(common: &Common) -> Result<ProblemFile, (i32, String)> {
    ProblemFile::load(&common.input).map_err(schema_err)
}

fn cmd_diag(common: Common) -> CmdResult {
    let file = load(&common)?;
    let q = file.form().map_err(schema_err)?;
    let d = q.diagonalize();
    let det = q.det();
    let sqrt = diophant::rational::sqrt_exact(&det);
    let rep = report::DiagReport::new(&q, &d, &det, sqrt.as_ref());
    emit(&common.format, &rep);
    Ok(0)
}

fn cmd_bilinear(common: Common) -> CmdResult {
    let file = load(&common)?;
    let q = file.form().map_err(schema_err)?;
    let seed = match common
        .seed
        .as_deref()
        .or(file.options.seed.as_deref())
    {
        Some(s) => parse_proj_vec(s).map_err(schema_err)?,
        None => match find_rational_zero(&q) {
            Ok(v) => v,
            Err(Error::NoRationalPoint(cert)) => {
                return Err((EXIT_SEEDING, format!("no rational point found: {cert}")));
            }
            Err(e) => return Err((EXIT_SEEDING, e.to_string())),
        },
    };
    match bilinear_general(&q, &seed) {
        Ok(sol) => {
            let verified = sol.verifies_for(&q);
            let rep = report::BilinearReport::new(&q, &seed, &sol, verified);
            emit(&common.format, &rep);
            Ok(0)
        }
        Err(Error::NonSquareDeterminant(d)) => Err((
            EXIT_NON_SQUARE_DET,
            format!("determinant {d} is zero or not a perfect square; no bilinear solution exists"),
        )),
        Err(e) => Err((EXIT_SCHEMA, e.to_string())),
    }
}

fn cmd_pair(common: Common) -> CmdResult {
    let file = load(&common)?;
    let (q1, q2) = file.pair().map_err(schema_err)?;
    let height = common.height.or(file.options.height).unwrap_or(50);
    let verdict = necessary_condition(&q1, &q2, height);
    let xi_override = match common.xi.as_deref().or(file.options.xi.as_deref()) {
        Some(s) => Some(parse_xi_pair(s).map_err(schema_err)?),
        None => None,
    };

    let pencil = PencilForm::new(q1.clone(), q2.clone());
    let description = match (&verdict.tag, xi_override) {
        (VerdictTag::ProvedEmpty, _) => None,
        (_, Some(xi)) => {
            let d = if pencil.f.eval_int(&xi.0, &xi.1) == diophant::rational::rat(0) {
                solve_via_degenerate(&q1, &q2, &xi)
            } else {
                solve_via_square_pencil_with_height(&q1, &q2, &xi, height as i64)
            };
            Some(d.map_err(|e| (EXIT_SCHEMA, e.to_string()))?)
        }
        (VerdictTag::WitnessFound, None) => {
            let d = match default_degenerate_root(&pencil.f) {
                Some(root) => solve_via_degenerate(&q1, &q2, &root),
                None => {
                    let (a, b, _) = verdict.witness.clone().expect("witness present");
                    solve_via_square_pencil_with_height(&q1, &q2, &(a, b), height as i64)
                }
            };
            Some(d.map_err(|e| (EXIT_SCHEMA, e.to_string()))?)
        }
        (VerdictTag::NotFoundUpTo, None) => None,
    };

    let proved_empty = verdict.tag == VerdictTag::ProvedEmpty
        || description
            .as_ref()
            .is_some_and(|d| d.status == SolutionStatus::ProvedEmpty);
    let rep = report::PairReport::new(&pencil, &verdict, description.as_ref());
    emit(&common.format, &rep);
    if proved_empty {
        Ok(EXIT_PROVED_EMPTY)
    } else {
        Ok(0)
    }
}

fn cmd_quartic_search(common: Common) -> CmdResult {
    let file = load(&common)?;
    let curve = file.curve().map_err(schema_err)?;
    let height = common.height.or(file.options.height).unwrap_or(50);
    let points = search_points(&curve, height, common.jobs.max(1));
    for p in &points {
        assert!(curve.contains(p), "emitted point must re-verify");
    }
    let rep = report::QuarticPointsReport::new("search", &curve, &points);
    emit(&common.format, &rep);
    Ok(0)
}

fn seeds_for(file: &ProblemFile, flag: &Option<String>) -> Result<Vec<QuarticPoint>, (i32, String)> {
    match flag {
        Some(s) => parse_point_list(s).map_err(schema_err),
        None => file.points().map_err(schema_err),
    }
}

fn cmd_quartic_derive(args: QuarticDerive) -> CmdResult {
    let common = args.common;
    let file = load(&common)?;
    let curve = file.curve().map_err(schema_err)?;
    let seeds = seeds_for(&file, &args.seeds)?;
    for s in &seeds {
        if !curve.contains(s) {
            return Err(schema_err(format!(
                "seed ({}, {}) is not on the curve",
                format_rational(&s.t),
                format_rational(&s.y)
            )));
        }
    }
    let mut derived = Vec::new();
    let mut attempts = 0usize;
    for s in &seeds {
        for cand in [s.clone(), QuarticPoint::new(s.t.clone(), -s.y.clone())] {
            attempts += 1;
            if let Ok(p) = derive_from_one(&curve, &cand) {
                derived.push(p);
            }
        }
    }
    for (i, a) in seeds.iter().enumerate() {
        for b in &seeds[i + 1..] {
            for ya in [a.y.clone(), -a.y.clone()] {
                for yb in [b.y.clone(), -b.y.clone()] {
                    attempts += 1;
                    if let Ok(p) = derive_from_two(
                        &curve,
                        &QuarticPoint::new(a.t.clone(), ya.clone()),
                        &QuarticPoint::new(b.t.clone(), yb),
                    ) {
                        derived.push(p);
                    }
                }
            }
        }
    }
    derived.sort();
    derived.dedup();
    if derived.is_empty() && attempts > 0 {
        return Err((
            EXIT_DEGENERATE,
            "derivation guards failed for every requested input".into(),
        ));
    }
    for p in &derived {
        assert!(curve.contains(p), "emitted point must re-verify");
    }
    let rep = report::QuarticPointsReport::new("derive", &curve, &derived);
    emit(&common.format, &rep);
    Ok(0)
}

fn cmd_quartic_orbit(args: QuarticDerive) -> CmdResult {
    let common = args.common;
    let file = load(&common)?;
    let curve = file.curve().map_err(schema_err)?;
    let seeds = seeds_for(&file, &args.seeds)?;
    let depth = common.depth.or(file.options.depth).unwrap_or(2);
    let cap = std::env::var("DIOPHANT_MAX_ORBIT")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .unwrap_or(10_000);
    let points =
        grow_orbit(&curve, &seeds, depth, cap).map_err(|e| (EXIT_SCHEMA, e.to_string()))?;
    for p in &points {
        assert!(curve.contains(p), "emitted point must re-verify");
    }
    let rep = report::QuarticPointsReport::new("orbit", &curve, &points);
    emit(&common.format, &rep);
    Ok(0)
}

fn cmd_quartic_reduce(args: QuarticReduce) -> CmdResult {
    let common = args.common;
    let file = load(&common)?;
    let curve = file.curve().map_err(schema_err)?;
    let base = parse_point_list(&args.point)
        .map_err(schema_err)?
        .into_iter()
        .next()
        .ok_or_else(|| schema_err("missing base point"))?;
    let red = match reduce_general(&curve, &base) {
        Ok(r) => r,
        Err(Error::ZeroY) => return Err((EXIT_DEGENERATE, "base point has y = 0".into())),
        Err(e) => return Err(schema_err(e)),
    };
    let carried: Vec<QuarticPoint> = match &args.map {
        Some(s) => parse_point_list(s).map_err(schema_err)?,
        None => Vec::new(),
    };
    let mut mapped = Vec::new();
    for p in &carried {
        let q = red.forward(p).map_err(|e| (EXIT_DEGENERATE, e.to_string()))?;
        mapped.push(q);
    }
    // derive from each carried point on the monic model and map back
    let mut derived_back = Vec::new();
    for q in &mapped {
        for cand in [q.clone(), QuarticPoint::new(q.t.clone(), -q.y.clone())] {
            if let Ok(np) = derive_from_one(&red.monic, &cand) {
                if let Ok(back) = red.backward(&np) {
                    derived_back.push(back);
                }
            }
        }
    }
    derived_back.sort();
    derived_back.dedup();
    for p in &derived_back {
        assert!(curve.contains(p), "emitted point must re-verify");
    }
    let rep = report::ReduceReport::new(&curve, &red, &mapped, &derived_back);
    emit(&common.format, &rep);
    Ok(0)
}

fn cmd_verify(common: Common) -> CmdResult {
    let file = load(&common)?;
    let mut checks: Vec<(String, bool)> = Vec::new();
    match file.kind.as_str() {
        "form" => {
            let q = file.form().map_err(schema_err)?;
            for (i, forms) in file.claimed_families().map_err(schema_err)?.iter().enumerate() {
                let ok = q.substitute(forms).is_zero();
                checks.push((format!("family {i} substitutes to zero"), ok));
            }
            for v in file.claimed_points().map_err(schema_err)? {
                let ok = q.eval_proj(&v).is_zero();
                checks.push((format!("point {v} satisfies the form"), ok));
            }
        }
        "pair" => {
            let (q1, q2) = file.pair().map_err(schema_err)?;
            for (i, forms) in file.claimed_families().map_err(schema_err)?.iter().enumerate() {
                let ok = q1.substitute(forms).is_zero() && q2.substitute(forms).is_zero();
                checks.push((format!("family {i} substitutes to zero in both forms"), ok));
            }
            for v in file.claimed_points().map_err(schema_err)? {
                let ok = q1.eval_proj(&v).is_zero() && q2.eval_proj(&v).is_zero();
                checks.push((format!("point {v} satisfies both forms"), ok));
            }
        }
        "quartic" => {
            let curve = file.curve().map_err(schema_err)?;
            for p in file.claimed_quartic_points().map_err(schema_err)? {
                let ok = curve.contains(&p);
                checks.push((
                    format!(
                        "point ({}, {}) lies on the curve",
                        format_rational(&p.t),
                        format_rational(&p.y)
                    ),
                    ok,
                ));
            }
        }
        other => return Err(schema_err(format!("unknown kind {other:?}"))),
    }
    if checks.is_empty() {
        return Err(schema_err("no claims to verify"));
    }
    let all_ok = checks.iter().all(|(_, ok)| *ok);
    let rep = report::VerifyReport::new(&checks);
    emit(&common.format, &rep);
    if all_ok {
        Ok(0)
    } else {
        fail("one or more claims failed verification");
        Ok(1)
    }
}

//! Report structures: one JSON document on stdout, a prose summary on
//! stderr. Field order is fixed by the struct definitions so identical
//! inputs yield byte-identical output.

use diophant::bilinear::BilinearSolution;
use diophant::pair_solver::{Certificate, PairVerdict, SolutionDescription, VerdictTag};
use diophant::quadform::{DiagonalForm, PencilForm, QuadForm4};
use diophant::quartic::{QuarticCurve, QuarticPoint, ReducedQuartic};
use diophant::rational::format_rational;
use diophant::{ProjVec4, Rational};
use serde::Serialize;

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
}

pub trait Report: Serialize {
    fn prose(&self) -> String;
}

/// JSON on stdout plus prose on stderr; `--format text` swaps the prose
/// onto stdout and suppresses the JSON.
pub fn emit<R: Report>(format: &Format, report: &R) {
    match format {
        Format::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(report).expect("report serialization")
            );
            eprintln!("{}", report.prose());
        }
        Format::Text => println!("{}", report.prose()),
    }
}

pub fn fail(msg: &str) {
    eprintln!("error: {msg}");
}

fn rat_str(r: &Rational) -> String {
    format_rational(r)
}

fn vec_str(v: &ProjVec4) -> Vec<String> {
    v.coords().iter().map(|c| c.to_string()).collect()
}

fn point_obj(p: &QuarticPoint) -> PointJson {
    PointJson {
        t: rat_str(&p.t),
        y: rat_str(&p.y),
    }
}

#[derive(Serialize)]
pub struct PointJson {
    t: String,
    y: String,
}

#[derive(Serialize)]
pub struct DiagReport {
    command: &'static str,
    form: String,
    diag: Vec<String>,
    transformation: Vec<Vec<String>>,
    det: String,
    rank: usize,
    det_is_nonzero_square: bool,
    sqrt_det: Option<String>,
}

impl DiagReport {
    pub fn new(q: &QuadForm4, d: &DiagonalForm, det: &Rational, sqrt: Option<&Rational>) -> Self {
        use num_traits::Zero as _;
        DiagReport {
            command: "diag",
            form: q.to_mpoly().to_string(),
            diag: d.diag.iter().map(rat_str).collect(),
            transformation: d
                .p
                .iter()
                .map(|row| row.iter().map(rat_str).collect())
                .collect(),
            det: rat_str(det),
            rank: d.rank,
            det_is_nonzero_square: !det.is_zero() && sqrt.is_some(),
            sqrt_det: sqrt.map(rat_str),
        }
    }
}

impl Report for DiagReport {
    fn prose(&self) -> String {
        format!(
            "diagonal form [{}] of rank {}; determinant {} ({})",
            self.diag.join(", "),
            self.rank,
            self.det,
            if self.det_is_nonzero_square {
                "a nonzero perfect square: a complete bilinear solution exists if the form is solvable"
            } else {
                "not a nonzero perfect square: no bilinear solution exists"
            }
        )
    }
}

#[derive(Serialize)]
pub struct BilinearReport {
    command: &'static str,
    form: String,
    seed: Vec<String>,
    forms: [String; 4],
    verified: bool,
}

impl BilinearReport {
    pub fn new(q: &QuadForm4, seed: &ProjVec4, sol: &BilinearSolution, verified: bool) -> Self {
        BilinearReport {
            command: "bilinear",
            form: q.to_mpoly().to_string(),
            seed: vec_str(seed),
            forms: sol.display_forms(),
            verified,
        }
    }
}

impl Report for BilinearReport {
    fn prose(&self) -> String {
        format!(
            "complete bilinear solution from seed ({}):\n  x1 = {}\n  x2 = {}\n  x3 = {}\n  x4 = {}\nsubstitution check: {}",
            self.seed.join(", "),
            self.forms[0],
            self.forms[1],
            self.forms[2],
            self.forms[3],
            if self.verified { "identically zero" } else { "FAILED" }
        )
    }
}

#[derive(Serialize)]
struct CertificateJson {
    kind: &'static str,
    detail: String,
}

fn certificate_json(c: &Certificate) -> CertificateJson {
    match c {
        Certificate::ScaledSquareAnisotropic { c, g } => CertificateJson {
            kind: "scaled_square_anisotropic",
            detail: format!(
                "f = {} * ({} xi1^2 + {} xi1 xi2 + {} xi2^2)^2 with a non-square scalar and anisotropic quadratic",
                rat_str(c),
                rat_str(&g[0]),
                rat_str(&g[1]),
                rat_str(&g[2])
            ),
        },
        Certificate::NegativeDefinite => CertificateJson {
            kind: "negative_definite",
            detail: "f is negative away from the origin and has no rational root".into(),
        },
        Certificate::CongruenceObstruction { modulus, quartic } => CertificateJson {
            kind: "congruence_obstruction",
            detail: format!(
                "discriminant [{}] is a non-residue modulo {modulus} for every primitive argument pair",
                quartic.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")
            ),
        },
        Certificate::EmptyStratification { detail } => CertificateJson {
            kind: "empty_stratification",
            detail: detail.clone(),
        },
    }
}

#[derive(Serialize)]
pub struct PairReport {
    command: &'static str,
    pencil_determinant: [String; 5],
    verdict: String,
    witness: Option<[String; 3]>,
    search_bound: Option<u32>,
    verdict_certificate: Option<CertificateJson>,
    status: Option<String>,
    families: Vec<FamilyJson>,
    points: Vec<Vec<String>>,
    curve_condition: Option<CurveConditionJson>,
    solution_certificate: Option<CertificateJson>,
}

#[derive(Serialize)]
struct FamilyJson {
    degree: u32,
    forms: [String; 4],
}

#[derive(Serialize)]
struct CurveConditionJson {
    curve: [String; 5],
    map: [String; 4],
}

impl PairReport {
    pub fn new(
        pencil: &PencilForm,
        verdict: &PairVerdict,
        description: Option<&SolutionDescription>,
    ) -> Self {
        let verdict_name = match verdict.tag {
            VerdictTag::ProvedEmpty => "proved_empty",
            VerdictTag::WitnessFound => "witness_found",
            VerdictTag::NotFoundUpTo => "not_found_up_to",
        };
        PairReport {
            command: "pair",
            pencil_determinant: std::array::from_fn(|i| rat_str(&pencil.f.e[i])),
            verdict: verdict_name.into(),
            witness: verdict
                .witness
                .as_ref()
                .map(|(a, b, eta)| [a.to_string(), b.to_string(), rat_str(eta)]),
            search_bound: verdict.bound,
            verdict_certificate: verdict.certificate.as_ref().map(certificate_json),
            status: description.map(|d| format!("{:?}", d.status)),
            families: description
                .map(|d| {
                    d.families
                        .iter()
                        .map(|f| FamilyJson {
                            degree: f.degree,
                            forms: std::array::from_fn(|i| f.forms[i].to_string()),
                        })
                        .collect()
                })
                .unwrap_or_default(),
            points: description
                .map(|d| d.points.iter().map(vec_str).collect())
                .unwrap_or_default(),
            curve_condition: description.and_then(|d| {
                d.curve_condition.as_ref().map(|cc| CurveConditionJson {
                    curve: std::array::from_fn(|i| rat_str(&cc.curve.a[i])),
                    map: std::array::from_fn(|i| cc.map[i].to_string()),
                })
            }),
            solution_certificate: description
                .and_then(|d| d.certificate.as_ref().map(certificate_json)),
        }
    }
}

impl Report for PairReport {
    fn prose(&self) -> String {
        let mut out = format!("pencil determinant coefficients [{}]\n", self.pencil_determinant.join(", "));
        out.push_str(&format!("necessary condition: {}", self.verdict));
        if let Some(w) = &self.witness {
            out.push_str(&format!(" with witness (xi1, xi2, eta) = ({}, {}, {})", w[0], w[1], w[2]));
        }
        if let Some(b) = self.search_bound {
            out.push_str(&format!(" up to height {b}"));
        }
        out.push('\n');
        if let Some(c) = &self.verdict_certificate {
            out.push_str(&format!("certificate: {}\n", c.detail));
        }
        if let Some(status) = &self.status {
            out.push_str(&format!("solution status: {status}\n"));
        }
        for f in &self.families {
            out.push_str(&format!(
                "family of degree {}: x1 = {}, x2 = {}, x3 = {}, x4 = {}\n",
                f.degree, f.forms[0], f.forms[1], f.forms[2], f.forms[3]
            ));
        }
        for p in &self.points {
            out.push_str(&format!("point ({})\n", p.join(", ")));
        }
        if let Some(cc) = &self.curve_condition {
            out.push_str(&format!(
                "curve condition: eta^2 has coefficients [{}] in xi; solution map x = [{}]\n",
                cc.curve.join(", "),
                cc.map.join("; ")
            ));
        }
        if let Some(c) = &self.solution_certificate {
            out.push_str(&format!("emptiness certificate: {}\n", c.detail));
        }
        out.trim_end().to_string()
    }
}

#[derive(Serialize)]
pub struct QuarticPointsReport {
    command: &'static str,
    curve: [String; 5],
    count: usize,
    points: Vec<PointJson>,
}

impl QuarticPointsReport {
    pub fn new(command: &'static str, curve: &QuarticCurve, points: &[QuarticPoint]) -> Self {
        QuarticPointsReport {
            command: match command {
                "search" => "quartic search",
                "derive" => "quartic derive",
                "orbit" => "quartic orbit",
                other => Box::leak(other.to_string().into_boxed_str()),
            },
            curve: std::array::from_fn(|i| rat_str(&curve.a[i])),
            count: points.len(),
            points: points.iter().map(point_obj).collect(),
        }
    }
}

impl Report for QuarticPointsReport {
    fn prose(&self) -> String {
        let mut out = format!(
            "{}: {} point(s) on y^2 with coefficients [{}]\n",
            self.command,
            self.count,
            self.curve.join(", ")
        );
        for p in &self.points {
            out.push_str(&format!("  ({}, {})\n", p.t, p.y));
        }
        out.trim_end().to_string()
    }
}

#[derive(Serialize)]
pub struct ReduceReport {
    command: &'static str,
    curve: [String; 5],
    base_point: PointJson,
    monic_curve: [String; 5],
    mapped_points: Vec<PointJson>,
    derived_points_on_original: Vec<PointJson>,
}

impl ReduceReport {
    pub fn new(
        curve: &QuarticCurve,
        red: &ReducedQuartic,
        mapped: &[QuarticPoint],
        derived: &[QuarticPoint],
    ) -> Self {
        ReduceReport {
            command: "quartic reduce",
            curve: std::array::from_fn(|i| rat_str(&curve.a[i])),
            base_point: PointJson {
                t: rat_str(&red.t1),
                y: rat_str(&red.y1),
            },
            monic_curve: std::array::from_fn(|i| rat_str(&red.monic.a[i])),
            mapped_points: mapped.iter().map(point_obj).collect(),
            derived_points_on_original: derived.iter().map(point_obj).collect(),
        }
    }
}

impl Report for ReduceReport {
    fn prose(&self) -> String {
        let mut out = format!(
            "monic model Y^2 = r^4 + ({}) r^3 + ({}) r^2 + ({}) r + ({})\n",
            self.monic_curve[1], self.monic_curve[2], self.monic_curve[3], self.monic_curve[4]
        );
        for p in &self.mapped_points {
            out.push_str(&format!("  carried point ({}, {})\n", p.t, p.y));
        }
        for p in &self.derived_points_on_original {
            out.push_str(&format!("  derived point on the original curve: ({}, {})\n", p.t, p.y));
        }
        out.trim_end().to_string()
    }
}

#[derive(Serialize)]
pub struct VerifyReport {
    command: &'static str,
    checks: Vec<CheckJson>,
    all_passed: bool,
}

#[derive(Serialize)]
struct CheckJson {
    claim: String,
    passed: bool,
}

impl VerifyReport {
    pub fn new(checks: &[(String, bool)]) -> Self {
        VerifyReport {
            command: "verify",
            checks: checks
                .iter()
                .map(|(claim, passed)| CheckJson {
                    claim: claim.clone(),
                    passed: *passed,
                })
                .collect(),
            all_passed: checks.iter().all(|(_, ok)| *ok),
        }
    }
}

impl Report for VerifyReport {
    fn prose(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "[{}] {}\n",
                if c.passed { "ok" } else { "FAIL" },
                c.claim
            ));
        }
        out.trim_end().to_string()
    }
}

//! Solvability analysis and solution description for simultaneous pairs
//! `Q1 = Q2 = 0` of quaternary quadratic equations.
//!
//! The pencil determinant `f(xi1, xi2) = |xi1 A1 + xi2 A2|` drives
//! everything: a common zero of the pair forces `eta^2 = f` to have a
//! nontrivial integer solution, and the solutions themselves are recovered
//! by solving one pencil member completely and imposing one of the original
//! forms on its solution set.

#![allow(clippy::needless_range_loop)]

use crate::bilinear::{bilinear_general, find_rational_zero, normalize_forms4};
use crate::poly::{BinaryQuartic, MPoly, UniPoly, Var};
use crate::quadform::{diagonalize_sym, PencilForm, QuadForm4};
use crate::quartic::QuarticCurve;
use crate::rational::{format_rational, rat, sqrt_exact};
use crate::ternary::{parametrize_conic, solve_legendre};
use crate::{Error, Int, ProjVec4, Rational, Result};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Outcome of the necessary-condition analysis on `eta^2 = f(xi1, xi2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerdictTag {
    /// `eta^2 = f` has only the trivial solution; by the pencil criterion
    /// the pair has no nontrivial common solution.
    ProvedEmpty,
    /// A nontrivial integer solution of `eta^2 = f` was found.
    WitnessFound,
    /// No structural certificate applies and the height search was
    /// exhausted.
    NotFoundUpTo,
}

/// Machine-checkable reason for a `ProvedEmpty` verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// `f = c g^2` with `c` a non-square rational and `g` a rationally
    /// anisotropic binary quadratic.
    ScaledSquareAnisotropic { c: Rational, g: [Rational; 3] },
    /// `f < 0` away from the origin and `f` has no rational root.
    NegativeDefinite,
    /// The quartic (stored with integer coefficients, square content
    /// removed) is a non-residue modulo `modulus` for every primitive
    /// argument pair.
    CongruenceObstruction { modulus: u64, quartic: [Int; 5] },
    /// A degenerate pencil member was solved completely and none of its
    /// strata meet the residual form.
    EmptyStratification { detail: String },
}

impl Certificate {
    /// Re-validates the certificate against the quartic it certifies
    /// (`f` for pencil-level certificates, the parameter discriminant for
    /// congruence certificates).
    pub fn check(&self, f: &BinaryQuartic) -> bool {
        match self {
            Certificate::ScaledSquareAnisotropic { c, g } => {
                let rebuilt = scaled_square_quartic(c, g);
                rebuilt == *f
                    && sqrt_exact(c).is_none()
                    && sqrt_exact(&(&g[1] * &g[1] - rat(4) * &g[0] * &g[2])).is_none()
            }
            Certificate::NegativeDefinite => is_negative_definite(f),
            Certificate::CongruenceObstruction { modulus, quartic } => {
                let (norm, _) = f.square_value_normal_form();
                let ints: [Int; 5] = std::array::from_fn(|i| norm.e[i].to_integer());
                ints == *quartic && modulus_excludes_squares(quartic, *modulus)
            }
            Certificate::EmptyStratification { .. } => true,
        }
    }
}

fn scaled_square_quartic(c: &Rational, g: &[Rational; 3]) -> BinaryQuartic {
    let [ga, gb, gc] = g;
    BinaryQuartic::new([
        c * ga * ga,
        rat(2) * c * ga * gb,
        c * (rat(2) * ga * gc + gb * gb),
        rat(2) * c * gb * gc,
        c * gc * gc,
    ])
}

/// Exact negative-definiteness: `f(1,t)` everywhere negative and the form
/// negative at `(0,1)`; decided by a Sturm count on the squarefree part.
fn is_negative_definite(f: &BinaryQuartic) -> bool {
    if !f.e[0].is_negative() || !f.e[4].is_negative() {
        return false;
    }
    let dehom = UniPoly::new(f.e.iter().rev().cloned().collect());
    dehom.count_real_roots() == 0
}

/// The fixed congruence moduli reproducing elementary descent arguments.
const CONGRUENCE_MODULI: [u64; 8] = [16, 9, 5, 7, 11, 13, 25, 27];

fn modulus_base_prime(m: u64) -> u64 {
    match m {
        16 => 2,
        9 | 27 => 3,
        25 => 5,
        other => other,
    }
}

/// True when `quartic(p, q)` is a quadratic non-residue mod `m` for every
/// pair `(p, q)` not both divisible by the base prime of `m`. Any primitive
/// integer pair reduces to such a pair, so success rules out integer square
/// values entirely.
fn modulus_excludes_squares(quartic: &[Int; 5], m: u64) -> bool {
    let mm = m as i64;
    let base = modulus_base_prime(m) as i64;
    let coeffs: Vec<i64> = quartic
        .iter()
        .map(|c| c.mod_floor(&Int::from(mm)).to_i64().expect("reduced residue"))
        .collect();
    let mut squares = vec![false; m as usize];
    for w in 0..mm {
        squares[((w * w) % mm) as usize] = true;
    }
    for p in 0..mm {
        for q in 0..mm {
            if p % base == 0 && q % base == 0 {
                continue;
            }
            // evaluate the homogeneous quartic sum c_i p^(4-i) q^i mod m
            let mut acc = 0i64;
            let mut pq = [1i64; 5];
            for i in 1..5 {
                pq[i] = (pq[i - 1] * q) % mm;
            }
            let mut pp = [1i64; 5];
            for i in 1..5 {
                pp[i] = (pp[i - 1] * p) % mm;
            }
            for (i, c) in coeffs.iter().enumerate() {
                acc = (acc + c * pp[4 - i] % mm * pq[i]) % mm;
            }
            let acc = acc.rem_euclid(mm);
            if squares[acc as usize] {
                return false;
            }
        }
    }
    true
}

/// Searches the fixed modulus list for a congruence obstruction against
/// square values of the quartic; returns the modulus and the normalized
/// integer quartic on success.
pub fn congruence_obstruction(f: &BinaryQuartic) -> Option<Certificate> {
    if f.is_zero() {
        return None;
    }
    let (norm, _) = f.square_value_normal_form();
    let ints: [Int; 5] = std::array::from_fn(|i| norm.e[i].to_integer());
    for m in CONGRUENCE_MODULI {
        if modulus_excludes_squares(&ints, m) {
            return Some(Certificate::CongruenceObstruction {
                modulus: m,
                quartic: ints,
            });
        }
    }
    None
}

/// Verdict of [`necessary_condition`].
#[derive(Clone, Debug)]
pub struct PairVerdict {
    pub tag: VerdictTag,
    /// Integer solution `(xi1, xi2, eta)` of `eta^2 = f` when found.
    pub witness: Option<(Int, Int, Rational)>,
    /// Height bound that was exhausted for `NotFoundUpTo`.
    pub bound: Option<u32>,
    pub certificate: Option<Certificate>,
}

/// Decides the pencil-determinant criterion for the pair up to the given
/// search height: structural emptiness certificates first, then a search
/// for square values of `f` over primitive `(xi1, xi2)`.
pub fn necessary_condition(q1: &QuadForm4, q2: &QuadForm4, height: u32) -> PairVerdict {
    let pencil = PencilForm::new(q1.clone(), q2.clone());
    let f = &pencil.f;
    if f.is_zero() {
        // every member is singular; (1, 0, 0) already solves eta^2 = f
        return PairVerdict {
            tag: VerdictTag::WitnessFound,
            witness: Some((Int::one(), Int::zero(), Rational::zero())),
            bound: None,
            certificate: None,
        };
    }
    if let Ok(roots) = f.proj_rational_roots() {
        if let Some(((a, b), _)) = roots.first() {
            return PairVerdict {
                tag: VerdictTag::WitnessFound,
                witness: Some((a.clone(), b.clone(), Rational::zero())),
                bound: None,
                certificate: None,
            };
        }
    }
    if let Some((c, g)) = f.as_scaled_square() {
        match sqrt_exact(&c) {
            Some(s) => {
                // f is the square of a rational form: every point works
                for (a, b) in [(1i64, 0i64), (0, 1), (1, 1)] {
                    let gval = &g[0] * rat(a * a) + &g[1] * rat(a * b) + &g[2] * rat(b * b);
                    if !gval.is_zero() {
                        return PairVerdict {
                            tag: VerdictTag::WitnessFound,
                            witness: Some((Int::from(a), Int::from(b), (&s * &gval).abs())),
                            bound: None,
                            certificate: None,
                        };
                    }
                }
            }
            None => {
                let disc = &g[1] * &g[1] - rat(4) * &g[0] * &g[2];
                if sqrt_exact(&disc).is_none() {
                    return PairVerdict {
                        tag: VerdictTag::ProvedEmpty,
                        witness: None,
                        bound: None,
                        certificate: Some(Certificate::ScaledSquareAnisotropic { c, g }),
                    };
                }
            }
        }
    }
    if is_negative_definite(f) {
        return PairVerdict {
            tag: VerdictTag::ProvedEmpty,
            witness: None,
            bound: None,
            certificate: Some(Certificate::NegativeDefinite),
        };
    }
    // height search over primitive canonical pairs; f is even, so (xi1,
    // xi2) and its negative agree
    for h in 1..=height as i64 {
        let mut candidates = Vec::new();
        for a in -h..=h {
            for b in -h..=h {
                if a.abs().max(b.abs()) != h || a.gcd(&b) != 1 {
                    continue;
                }
                if a < 0 || (a == 0 && b < 0) {
                    continue;
                }
                candidates.push((a, b));
            }
        }
        candidates.sort();
        for (a, b) in candidates {
            let v = f.eval_int(&Int::from(a), &Int::from(b));
            if let Some(eta) = sqrt_exact(&v) {
                return PairVerdict {
                    tag: VerdictTag::WitnessFound,
                    witness: Some((Int::from(a), Int::from(b), eta)),
                    bound: None,
                    certificate: None,
                };
            }
        }
    }
    PairVerdict {
        tag: VerdictTag::NotFoundUpTo,
        witness: None,
        bound: Some(height),
        certificate: None,
    }
}

/// A polynomial family of solutions: four forms in `(m, n)`, homogeneous of
/// the stated degree, substituting into both forms identically zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamFamily {
    pub forms: [MPoly; 4],
    pub degree: u32,
}

/// Residual quartic condition: points `(xi, eta)` on the curve map to
/// common solutions through the four polynomials (`xi1` is the curve
/// parameter, `xi2` plays eta).
#[derive(Clone, Debug)]
pub struct CurveCondition {
    pub curve: QuarticCurve,
    pub map: [MPoly; 4],
}

impl CurveCondition {
    /// Evaluates the map at a rational curve point.
    pub fn eval(&self, xi: &Rational, eta: &Rational) -> Result<ProjVec4> {
        let pt = [(Var::Xi1, xi.clone()), (Var::Xi2, eta.clone())];
        let vals: [Rational; 4] = std::array::from_fn(|i| self.map[i].eval(&pt));
        ProjVec4::normalize(&vals)
    }
}

/// Completeness classification of a [`SolutionDescription`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolutionStatus {
    /// Families and points listed are the complete solution set.
    Complete,
    /// A curve condition remains; listed families/points are sound but the
    /// full set depends on the rational points of the curve.
    Partial,
    /// The pair has no nontrivial solution; a certificate is attached.
    ProvedEmpty,
}

/// Solution set of a pair, assembled from one pencil member.
#[derive(Clone, Debug)]
pub struct SolutionDescription {
    pub families: Vec<ParamFamily>,
    pub points: Vec<ProjVec4>,
    pub curve_condition: Option<CurveCondition>,
    pub status: SolutionStatus,
    pub certificate: Option<Certificate>,
}

impl SolutionDescription {
    fn empty(status: SolutionStatus) -> Self {
        SolutionDescription {
            families: Vec::new(),
            points: Vec::new(),
            curve_condition: None,
            status,
            certificate: None,
        }
    }

    /// Soundness check: every family and point satisfies both forms.
    pub fn verify(&self, q1: &QuadForm4, q2: &QuadForm4) -> bool {
        for fam in &self.families {
            if !q1.substitute(&fam.forms).is_zero() || !q2.substitute(&fam.forms).is_zero() {
                return false;
            }
        }
        for p in &self.points {
            if !q1.eval_proj(p).is_zero() || !q2.eval_proj(p).is_zero() {
                return false;
            }
        }
        true
    }
}

/// The canonical degenerate root: highest multiplicity first, then smallest
/// height, then lexicographic.
pub fn default_degenerate_root(f: &BinaryQuartic) -> Option<(Int, Int)> {
    let roots = f.proj_rational_roots().ok()?;
    let mut best: Option<((Int, Int), u32)> = None;
    for (pair, mult) in roots {
        let better = match &best {
            None => true,
            Some((bp, bm)) => {
                let h = pair.0.abs().max(pair.1.abs());
                let bh = bp.0.abs().max(bp.1.abs());
                mult > *bm || (mult == *bm && (h, &pair) < (bh, bp))
            }
        };
        if better {
            best = Some((pair, mult));
        }
    }
    best.map(|(p, _)| p)
}

/// Either a positive-dimensional family or a single projective point,
/// produced when classifying a parametrized stratum.
enum Stratum {
    Family(ParamFamily),
    Point(ProjVec4),
    Nothing,
}

/// Removes any common binary-form factor of the four forms in `(m, n)` and
/// normalizes content; classifies the result by the dimension of its image.
fn classify_mn_family(forms: [MPoly; 4]) -> Result<Stratum> {
    if forms.iter().all(MPoly::is_zero) {
        return Ok(Stratum::Nothing);
    }
    let forms = cancel_common_binary_factor(forms)?;
    let forms = normalize_forms4(forms);
    let degree = forms.iter().map(MPoly::degree).max().unwrap_or(0);
    if degree == 0 {
        let v: [Rational; 4] = std::array::from_fn(|i| forms[i].coeff(&[]));
        return Ok(Stratum::Point(ProjVec4::normalize(&v)?));
    }
    // coefficient vectors per monomial m^(d-i) n^i; image dimension 1 means
    // a single projective point
    let mut vectors: Vec<[Rational; 4]> = Vec::new();
    for i in 0..=degree {
        let v: [Rational; 4] = std::array::from_fn(|k| {
            forms[k].coeff(&[(Var::M, (degree - i) as u8), (Var::N, i as u8)])
        });
        if v.iter().any(|c| !c.is_zero()) {
            vectors.push(v);
        }
    }
    let rank = rank_of(&vectors);
    if rank <= 1 {
        let v = vectors.into_iter().next().expect("nonzero family");
        return Ok(Stratum::Point(ProjVec4::normalize(&v)?));
    }
    if degree == 1 {
        // rescale the two parameter directions independently: (m, n) ->
        // (m/a, n/b) is a rational parameter change, and primitive columns
        // make integer sweeps reach every point soonest
        let mcol: [Rational; 4] = std::array::from_fn(|k| forms[k].coeff(&[(Var::M, 1)]));
        let ncol: [Rational; 4] = std::array::from_fn(|k| forms[k].coeff(&[(Var::N, 1)]));
        let prim = |col: &[Rational; 4]| -> Option<[Rational; 4]> {
            let v = ProjVec4::normalize(col).ok()?;
            let sign_flip = col
                .iter()
                .zip(v.coords())
                .find(|(c, w)| !c.is_zero() && !w.is_zero())
                .map(|(c, w)| c.is_negative() != w.is_negative())
                .unwrap_or(false);
            let mut out = v.to_rationals();
            if sign_flip {
                for c in &mut out {
                    *c = -c.clone();
                }
            }
            Some(out)
        };
        if let (Some(mp), Some(np)) = (prim(&mcol), prim(&ncol)) {
            let m = MPoly::var(Var::M);
            let n = MPoly::var(Var::N);
            let forms: [MPoly; 4] = std::array::from_fn(|k| {
                &(&MPoly::constant(mp[k].clone()) * &m) + &(&MPoly::constant(np[k].clone()) * &n)
            });
            return Ok(Stratum::Family(ParamFamily { forms, degree }));
        }
    }
    Ok(Stratum::Family(ParamFamily { forms, degree }))
}

fn rank_of(vectors: &[[Rational; 4]]) -> usize {
    let mut rows: Vec<Vec<Rational>> = vectors.iter().map(|v| v.to_vec()).collect();
    let mut rank = 0;
    for col in 0..4 {
        if let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) {
            rows.swap(rank, pivot);
            let p = rows[rank][col].clone();
            for r in 0..rows.len() {
                if r != rank && !rows[r][col].is_zero() {
                    let factor = &rows[r][col] / &p;
                    for c in 0..4 {
                        let sub = &rows[rank][c] * &factor;
                        rows[r][c] -= sub;
                    }
                }
            }
            rank += 1;
        }
    }
    rank
}

/// Divides four binary forms in `(m, n)` by their common polynomial factor.
fn cancel_common_binary_factor(forms: [MPoly; 4]) -> Result<[MPoly; 4]> {
    let nonzero: Vec<&MPoly> = forms.iter().filter(|f| !f.is_zero()).collect();
    if nonzero.is_empty() {
        return Ok(forms);
    }
    // dehomogenized models u_i(z) = F_i(z, 1) and the n-power deficits
    let mut gcd = UniPoly::zero();
    let mut min_deficit = u32::MAX;
    for f in &nonzero {
        let deg = f.degree();
        let u = dehomogenize_mn(f);
        min_deficit = min_deficit.min(deg - u.degree() as u32);
        gcd = if gcd.is_zero() { u } else { gcd.gcd(&u) };
    }
    if gcd.degree() == 0 && min_deficit == 0 {
        return Ok(forms);
    }
    let common = homogenize_mn(&gcd) * MPoly::var(Var::N).pow(min_deficit);
    let out: Vec<MPoly> = forms
        .iter()
        .map(|f| {
            if f.is_zero() {
                Ok(MPoly::zero())
            } else {
                f.div_exact(&common)
                    .ok_or_else(|| Error::InvalidInput("common factor division failed".into()))
            }
        })
        .collect::<Result<_>>()?;
    Ok([out[0].clone(), out[1].clone(), out[2].clone(), out[3].clone()])
}

fn dehomogenize_mn(f: &MPoly) -> UniPoly {
    dehomogenize_in(f, Var::M, Var::N)
}

fn dehomogenize_in(f: &MPoly, pv: Var, qv: Var) -> UniPoly {
    let deg = f.degree();
    let coeffs: Vec<Rational> = (0..=deg)
        .map(|i| f.coeff(&[(pv, i as u8), (qv, (deg - i) as u8)]))
        .collect();
    UniPoly::new(coeffs)
}

/// Projective rational points where every one of the given binary forms in
/// `(pv, qv)` vanishes: the roots of their gcd.
fn common_binary_roots(forms: &[&MPoly], pv: Var, qv: Var) -> Result<Vec<(Rational, Rational)>> {
    let nonzero: Vec<&&MPoly> = forms.iter().filter(|f| !f.is_zero()).collect();
    if nonzero.is_empty() {
        return Ok(vec![]);
    }
    let mut gcd = UniPoly::zero();
    let mut min_deficit = u32::MAX;
    for f in &nonzero {
        let u = dehomogenize_in(f, pv, qv);
        min_deficit = min_deficit.min(f.degree() - u.degree() as u32);
        gcd = if gcd.is_zero() { u } else { gcd.gcd(&u) };
    }
    let mut out: Vec<(Rational, Rational)> = Vec::new();
    if min_deficit > 0 {
        // common factor qv: the point (1 : 0) ... the forms vanish at qv = 0
        out.push((Rational::one(), Rational::zero()));
    }
    for (root, _) in gcd.rational_roots()? {
        out.push((root, Rational::one()));
    }
    Ok(out)
}

fn homogenize_mn(u: &UniPoly) -> MPoly {
    let d = u.degree() as u32;
    let m = MPoly::var(Var::M);
    let n = MPoly::var(Var::N);
    let mut acc = MPoly::zero();
    for (i, c) in u.coeffs().iter().enumerate() {
        let term = MPoly::constant(c.clone()) * m.pow(i as u32) * n.pow(d - i as u32);
        acc = &acc + &term;
    }
    acc
}

/// Context shared by the two solution routes.
struct PairContext {
    q1: QuadForm4,
    q2: QuadForm4,
}

impl PairContext {
    fn residual_for(&self, xi: &(Int, Int)) -> &QuadForm4 {
        // the member is proportional to q1 exactly when xi2 = 0
        if xi.1.is_zero() {
            &self.q2
        } else {
            &self.q1
        }
    }

    fn verify_point(&self, v: &ProjVec4) -> bool {
        self.q1.eval_proj(v).is_zero() && self.q2.eval_proj(v).is_zero()
    }

    fn verify_family(&self, forms: &[MPoly; 4]) -> bool {
        self.q1.substitute(forms).is_zero() && self.q2.substitute(forms).is_zero()
    }
}

/// Solves the pair through a degenerate pencil member: diagonalizes the
/// member (rank <= 3), enumerates its solution strata completely (including
/// the lower-dimensional ones), and resolves each stratum against one of
/// the original forms.
pub fn solve_via_degenerate(
    q1: &QuadForm4,
    q2: &QuadForm4,
    root: &(Int, Int),
) -> Result<SolutionDescription> {
    let pencil = PencilForm::new(q1.clone(), q2.clone());
    if !pencil
        .f
        .eval_int(&root.0, &root.1)
        .is_zero()
    {
        return Err(Error::NotAPencilRoot);
    }
    let ctx = PairContext {
        q1: q1.clone(),
        q2: q2.clone(),
    };
    let member = pencil
        .member(
            &Rational::from_integer(root.0.clone()),
            &Rational::from_integer(root.1.clone()),
        )
        .primitive();
    if member.gram().iter().flatten().all(Zero::is_zero) {
        return Err(Error::ProportionalForms);
    }
    let residual = ctx.residual_for(root).clone();
    let d = member.diagonalize();
    debug_assert!(d.rank < 4);

    let mut out = SolutionDescription::empty(SolutionStatus::Complete);
    let nz: Vec<usize> = (0..4).filter(|&i| !d.diag[i].is_zero()).collect();
    let kernel: Vec<usize> = (0..4).filter(|&i| d.diag[i].is_zero()).collect();
    let col = |j: usize| -> [Rational; 4] { std::array::from_fn(|i| d.p[i][j].clone()) };

    match d.rank {
        3 => {
            let vertex = col(kernel[0]);
            let coeffs: [Rational; 3] = std::array::from_fn(|i| d.diag[nz[i]].clone());
            match solve_legendre(&coeffs[0], &coeffs[1], &coeffs[2])? {
                None => {
                    // the cone degenerates to its vertex
                    let v = ProjVec4::normalize(&vertex)?;
                    if ctx.verify_point(&v) {
                        out.points.push(v);
                    } else {
                        out.status = SolutionStatus::ProvedEmpty;
                        out.certificate = Some(Certificate::EmptyStratification {
                            detail: format!(
                                "member at ({}, {}) has an anisotropic rank-3 restriction and its vertex fails the residual form",
                                root.0, root.1
                            ),
                        });
                    }
                }
                Some(beta) => {
                    resolve_cone(
                        &ctx,
                        &residual,
                        &coeffs,
                        &beta.beta,
                        &nz,
                        &vertex,
                        &d.p,
                        &mut out,
                    )?;
                }
            }
        }
        2 => {
            let ratio = -(&d.diag[nz[1]] / &d.diag[nz[0]]);
            let w1 = col(kernel[0]);
            let w2 = col(kernel[1]);
            match sqrt_exact(&ratio) {
                Some(s) => {
                    // two hyperplanes y_i = +- s y_j inside the member
                    for sign in [Rational::one(), -Rational::one()] {
                        let coeff = &s * &sign;
                        let dir: [Rational; 4] = std::array::from_fn(|r| {
                            &d.p[r][nz[0]] * &coeff + &d.p[r][nz[1]]
                        });
                        let basis = [dir, w1.clone(), w2.clone()];
                        resolve_linear_subspace(&ctx, &residual, &basis, &mut out)?;
                    }
                }
                None => {
                    // forced y_i = y_j = 0: a projective line
                    let basis2 = [w1, w2];
                    resolve_line(&ctx, &residual, &basis2, root, &mut out)?;
                }
            }
        }
        1 => {
            let basis = [col(kernel[0]), col(kernel[1]), col(kernel[2])];
            resolve_linear_subspace(&ctx, &residual, &basis, &mut out)?;
            if out.families.is_empty() && out.points.is_empty() && out.curve_condition.is_none() {
                out.status = SolutionStatus::ProvedEmpty;
                out.certificate = Some(Certificate::EmptyStratification {
                    detail: format!(
                        "member at ({}, {}) is a rank-1 square times a hyperplane whose residual restriction is anisotropic",
                        root.0, root.1
                    ),
                });
            }
        }
        _ => return Err(Error::ProportionalForms),
    }

    finalize(ctx, out)
}

/// Rank-3 member with isotropic restriction: parametrize the cone over the
/// conic, impose the residual form, and resolve the resulting quadratic in
/// the cone scaling.
#[allow(clippy::too_many_arguments)]
fn resolve_cone(
    ctx: &PairContext,
    residual: &QuadForm4,
    coeffs: &[Rational; 3],
    beta: &[Int; 3],
    nz: &[usize],
    vertex: &[Rational; 4],
    p: &crate::quadform::Mat4,
    out: &mut SolutionDescription,
) -> Result<()> {
    let conic = parametrize_conic(coeffs, beta);
    // cone point in x coordinates: G(m, n) = P * (conic embedded at nz)
    let g: [MPoly; 4] = std::array::from_fn(|i| {
        let mut acc = MPoly::zero();
        for (slot, &orig) in nz.iter().enumerate() {
            if p[i][orig].is_zero() {
                continue;
            }
            acc = &acc + &(&MPoly::constant(p[i][orig].clone()) * &conic[slot]);
        }
        acc
    });
    let vpoly: [MPoly; 4] = std::array::from_fn(|i| MPoly::constant(vertex[i].clone()));
    let c = residual.eval(vertex);
    // polar cross term L(m,n) = 2 G^T A_R v
    let av = crate::quadform::mat_vec(residual.gram(), vertex);
    let mut l = MPoly::zero();
    for i in 0..4 {
        if av[i].is_zero() {
            continue;
        }
        l = &l + &(&MPoly::constant(rat(2) * &av[i]) * &g[i]);
    }
    let qg = residual.substitute(&g);

    if c.is_zero() {
        // vertex itself solves the pair
        let v = ProjVec4::normalize(vertex)?;
        if ctx.verify_point(&v) {
            out.points.push(v);
        }
        if qg.is_zero() && l.is_zero() {
            return Err(Error::UnsupportedStratum);
        }
        if l.is_zero() {
            // lambda^2 QG = 0: lines through the vertex at roots of QG
            let quart = BinaryQuartic::from_mpoly_in(&qg, Var::M, Var::N)
                .map_err(|_| Error::UnsupportedStratum)?;
            for ((m0, n0), _) in quart.proj_rational_roots()? {
                let pt = [
                    (Var::M, Rational::from_integer(m0.clone())),
                    (Var::N, Rational::from_integer(n0.clone())),
                ];
                let gv: [Rational; 4] = std::array::from_fn(|i| g[i].eval(&pt));
                let line: [MPoly; 4] = std::array::from_fn(|i| {
                    &(&MPoly::constant(gv[i].clone()) * &MPoly::var(Var::M))
                        + &(&MPoly::constant(vertex[i].clone()) * &MPoly::var(Var::N))
                });
                push_stratum(ctx, line, out)?;
            }
            return Ok(());
        }
        // at common roots of L and QG every (lambda : mu) works: a line
        // through the cone point and the vertex
        for (m0, n0) in common_binary_roots(&[&l, &qg], Var::M, Var::N)? {
            let pt = [(Var::M, m0), (Var::N, n0)];
            let gv: [Rational; 4] = std::array::from_fn(|i| g[i].eval(&pt));
            let line: [MPoly; 4] = std::array::from_fn(|i| {
                &(&MPoly::constant(gv[i].clone()) * &MPoly::var(Var::M))
                    + &(&MPoly::constant(vertex[i].clone()) * &MPoly::var(Var::N))
            });
            push_stratum(ctx, line, out)?;
        }
        // branch QG lambda + L mu = 0: x = L G - QG v
        let forms: [MPoly; 4] =
            std::array::from_fn(|i| &(&l * &g[i]) - &(&qg * &vpoly[i]));
        push_stratum(ctx, forms, out)?;
        return Ok(());
    }

    let d_raw = &(&l * &l) - (&(&qg * &MPoly::constant(rat(4) * &c)));
    let d_quartic =
        BinaryQuartic::from_mpoly_in(&d_raw, Var::M, Var::N).map_err(|_| Error::UnsupportedStratum)?;
    let two_c = MPoly::constant(rat(2) * &c);
    let builder = |pp: &MPoly, qq: &MPoly, eta: &MPoly| -> [MPoly; 4] {
        let subs = [(Var::M, pp.clone()), (Var::N, qq.clone())];
        std::array::from_fn(|i| {
            let lam = &two_c * &g[i].substitute(&subs);
            let mu = &(&(-&l.substitute(&subs)) + eta) * &vpoly[i];
            &lam + &mu
        })
    };
    resolve_eta_condition(ctx, &d_quartic, &builder, &[], DEFAULT_POINT_SEARCH_HEIGHT, out)
}

/// How a parameter point and an eta value produce the four solution
/// coordinates; both solution routes are linear in eta.
type FormsBuilder<'a> = dyn Fn(&MPoly, &MPoly, &MPoly) -> [MPoly; 4] + 'a;

/// A binary form represented by its dehomogenized polynomial in `z = p/q`
/// together with the multiplicity of the root at infinity (the power of
/// `q` split off).
#[derive(Clone, Debug)]
struct BinaryForm {
    poly: UniPoly,
    inf_pow: u32,
}

impl BinaryForm {
    fn total_degree(&self) -> u32 {
        self.poly.degree() as u32 + self.inf_pow
    }

    /// Composes the form with two polynomials standing for `(p, q)`.
    fn compose(&self, pp: &MPoly, qq: &MPoly) -> MPoly {
        let du = self.poly.degree() as u32;
        let mut acc = MPoly::zero();
        for (i, ci) in self.poly.coeffs().iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            let term = MPoly::constant(ci.clone()) * pp.pow(i as u32) * qq.pow(du - i as u32);
            acc = &acc + &term;
        }
        &acc * &qq.pow(self.inf_pow)
    }

    /// Coefficients `[p^2, p q, q^2]` of a degree-2 instance.
    fn quadratic_coeffs(&self) -> [Rational; 3] {
        debug_assert_eq!(self.total_degree(), 2);
        let u = self.poly.coeffs();
        match (self.poly.degree(), self.inf_pow) {
            (2, 0) => [u[2].clone(), u[1].clone(), u[0].clone()],
            (1, 1) => [Rational::zero(), u[1].clone(), u[0].clone()],
            _ => [Rational::zero(), Rational::zero(), u[0].clone()],
        }
    }
}

/// Yun decomposition of a binary quartic as `d = c * s^2 * e` with `e`
/// squarefree; `s` collects the repeated part (including the root at
/// infinity) so that `eta^2 = d` reduces to `w^2 = c * e` via `eta = s w`.
fn binary_squarefree_split(d: &BinaryQuartic) -> (Rational, BinaryForm, BinaryForm) {
    let u = UniPoly::new(d.e.iter().rev().cloned().collect());
    let inf_mult = 4 - u.degree() as u32;
    // Yun's algorithm over the rationals
    let mut square = UniPoly::new(vec![Rational::one()]);
    let mut free = UniPoly::new(vec![Rational::one()]);
    if u.degree() > 0 {
        let mut w = {
            let g = u.gcd(&u.derivative());
            let (q, r) = u.div_rem(&g);
            debug_assert!(r.is_zero());
            q
        };
        let mut y = {
            let g = u.gcd(&u.derivative());
            let (q, r) = u.derivative().div_rem(&g);
            debug_assert!(r.is_zero());
            q
        };
        let mut i = 1u32;
        loop {
            let z = {
                let wd = w.derivative();
                UniPoly::new(
                    y.coeffs()
                        .iter()
                        .enumerate()
                        .map(|(k, c)| c - wd.coeffs().get(k).cloned().unwrap_or_else(Rational::zero))
                        .collect(),
                )
            };
            if w.degree() == 0 {
                break;
            }
            let gi = w.gcd(&z);
            for _ in 0..(i / 2) {
                square = mul_unipoly(&square, &gi);
            }
            if i % 2 == 1 {
                free = mul_unipoly(&free, &gi);
            }
            let (wq, wr) = w.div_rem(&gi);
            debug_assert!(wr.is_zero());
            w = wq;
            let (yq, yr) = z.div_rem(&gi);
            debug_assert!(yr.is_zero());
            y = yq;
            i += 1;
        }
    }
    let s = BinaryForm {
        poly: monic(&square),
        inf_pow: inf_mult / 2,
    };
    let e = BinaryForm {
        poly: monic(&free),
        inf_pow: inf_mult % 2,
    };
    // the constant is pinned by comparing any nonzero coefficient
    let m = MPoly::var(Var::M);
    let n = MPoly::var(Var::N);
    let sq = s.compose(&m, &n);
    let prod = &(&sq * &sq) * &e.compose(&m, &n);
    let dm = d_to_mpoly_mn(d);
    let c = leading_ratio(&dm, &prod);
    debug_assert_eq!(&prod * &MPoly::constant(c.clone()), dm);
    (c, s, e)
}

fn mul_unipoly(a: &UniPoly, b: &UniPoly) -> UniPoly {
    if a.is_zero() || b.is_zero() {
        return UniPoly::zero();
    }
    let mut out = vec![Rational::zero(); a.degree() + b.degree() + 1];
    for (i, ca) in a.coeffs().iter().enumerate() {
        for (j, cb) in b.coeffs().iter().enumerate() {
            let add = ca * cb;
            out[i + j] += add;
        }
    }
    UniPoly::new(out)
}

fn monic(u: &UniPoly) -> UniPoly {
    if u.is_zero() {
        return u.clone();
    }
    let l = u.leading();
    UniPoly::new(u.coeffs().iter().map(|c| c / &l).collect())
}

/// Writes a nonzero rational as `c_sf * c_rt^2` with `c_sf` squarefree in
/// numerator and denominator.
fn split_square_part(c: &Rational) -> (Rational, Rational) {
    let (ns, nf) = crate::rational::squarefree_split(c.numer()).unwrap_or((c.numer().clone(), Int::one()));
    let (ds, df) = crate::rational::squarefree_split(c.denom()).unwrap_or((c.denom().clone(), Int::one()));
    (Rational::new(ns, ds), Rational::new(nf, df))
}

fn d_to_mpoly_mn(d: &BinaryQuartic) -> MPoly {
    let m = MPoly::var(Var::M);
    let n = MPoly::var(Var::N);
    let mut acc = MPoly::zero();
    for (i, c) in d.e.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = MPoly::constant(c.clone()) * m.pow(4 - i as u32) * n.pow(i as u32);
        acc = &acc + &term;
    }
    acc
}

fn leading_ratio(target: &MPoly, of: &MPoly) -> Rational {
    // both nonzero with proportional coefficient lists
    let ct = target.content();
    let co = of.content();
    // contents carry the sign of the leading term; the ratio is exact
    ct / co
}

/// Resolves the condition `eta^2 = D(p, q)` attached to a stratum, with
/// `x = builder(p, q, eta)` linear in eta: rational-square discriminants
/// yield polynomial families, square-times-conic discriminants reduce to a
/// ternary conic (complete), genuinely quartic ones yield point searches, a
/// congruence disproof attempt, and a residual curve condition.
fn resolve_eta_condition(
    ctx: &PairContext,
    d: &BinaryQuartic,
    builder: &FormsBuilder,
    extra_square_points: &[(Rational, Rational)],
    search_height: i64,
    out: &mut SolutionDescription,
) -> Result<()> {
    let m = MPoly::var(Var::M);
    let n = MPoly::var(Var::N);
    if d.is_zero() {
        push_stratum(ctx, builder(&m, &n, &MPoly::zero()), out)?;
        return Ok(());
    }
    if let Some(wq) = d.poly_sqrt() {
        let w = &(&(&MPoly::constant(wq[0].clone()) * &(&m * &m))
            + &(&MPoly::constant(wq[1].clone()) * &(&m * &n)))
            + &(&MPoly::constant(wq[2].clone()) * &(&n * &n));
        push_stratum(ctx, builder(&m, &n, &w), out)?;
        push_stratum(ctx, builder(&m, &n, &(-&w)), out)?;
        return Ok(());
    }

    let emit_point =
        |p0: &Rational, q0: &Rational, w: &Rational, out: &mut SolutionDescription| -> Result<()> {
            let pp = MPoly::constant(p0.clone());
            let qq = MPoly::constant(q0.clone());
            for sign in [Rational::one(), -Rational::one()] {
                let eta = MPoly::constant(w * &sign);
                let forms = builder(&pp, &qq, &eta);
                let coords: [Rational; 4] = std::array::from_fn(|i| forms[i].coeff(&[]));
                if coords.iter().all(Zero::is_zero) {
                    continue;
                }
                let v = ProjVec4::normalize(&coords)?;
                if ctx.verify_point(&v) && !out.points.contains(&v) {
                    out.points.push(v);
                }
            }
            Ok(())
        };

    // eta = 0 points at the rational roots of D
    for ((m0, n0), _) in d.proj_rational_roots()? {
        emit_point(
            &Rational::from_integer(m0),
            &Rational::from_integer(n0),
            &Rational::zero(),
            out,
        )?;
    }
    // route-supplied parameter points where D is a known square
    for (p0, q0) in extra_square_points {
        let val = d.eval(p0, q0);
        if let Some(w) = sqrt_exact(&val) {
            emit_point(p0, q0, &w, out)?;
        }
    }

    let (c, s_form, e_form) = binary_squarefree_split(d);
    match e_form.total_degree() {
        0 => {
            // D = c * S^2 with c not a rational square: eta must vanish,
            // which the root emission above already covered
            Ok(())
        }
        2 => {
            // eta = sqrt(c_sq) S w with w^2 = c_sf E(p, q), the square part
            // of c folded into eta to keep the conic small; solved
            // completely
            let (c_sf, c_rt) = split_square_part(&c);
            let e = e_form.quadratic_coeffs();
            let half = Rational::new(Int::one(), Int::from(2));
            let gram3 = vec![
                vec![&c_sf * &e[0], &c_sf * &e[1] * &half, Rational::zero()],
                vec![&c_sf * &e[1] * &half, &c_sf * &e[2], Rational::zero()],
                vec![Rational::zero(), Rational::zero(), -Rational::one()],
            ];
            for fam in solve_ternary_complete(gram3)? {
                let [pp, qq, ww] = fam;
                let eta_base = &(&s_form.compose(&pp, &qq) * &ww) * &MPoly::constant(c_rt.clone());
                for sign in [1i64, -1] {
                    let eta = &eta_base * &MPoly::from_int(sign);
                    push_stratum(ctx, builder(&pp, &qq, &eta), out)?;
                }
            }
            Ok(())
        }
        _ => {
            // genuinely quartic: search, congruence disproof, curve
            for h in 1..=search_height {
                for a in -h..=h {
                    for b in -h..=h {
                        if a.abs().max(b.abs()) != h
                            || a.gcd(&b) != 1
                            || (a < 0 || (a == 0 && b < 0))
                        {
                            continue;
                        }
                        let val = d.eval_int(&Int::from(a), &Int::from(b));
                        if let Some(w) = sqrt_exact(&val) {
                            if !w.is_zero() {
                                emit_point(&rat(a), &rat(b), &w, out)?;
                            }
                        }
                    }
                }
            }
            if out.points.is_empty() && out.families.is_empty() {
                if let Some(cert) = congruence_obstruction(d) {
                    out.status = SolutionStatus::ProvedEmpty;
                    out.certificate = Some(cert);
                    return Ok(());
                }
            }
            let (dn, scale) = d.square_value_normal_form();
            let mk_curve = |reversed: bool| -> Option<CurveCondition> {
                let e: Vec<Rational> = if reversed {
                    dn.e.iter().rev().cloned().collect()
                } else {
                    dn.e.to_vec()
                };
                if e[0].is_zero() {
                    return None;
                }
                let curve = QuarticCurve::new([
                    e[0].clone(),
                    e[1].clone(),
                    e[2].clone(),
                    e[3].clone(),
                    e[4].clone(),
                ])
                .ok()?;
                let xi = MPoly::var(Var::Xi1);
                let one = MPoly::from_int(1);
                let (pp, qq) = if reversed {
                    (one, xi)
                } else {
                    (xi, one)
                };
                let eta = &MPoly::constant(scale.clone()) * &MPoly::var(Var::Xi2);
                let map = normalize_forms4(builder(&pp, &qq, &eta));
                Some(CurveCondition { curve, map })
            };
            out.curve_condition = mk_curve(false).or_else(|| mk_curve(true));
            out.status = SolutionStatus::Partial;
            Ok(())
        }
    }
}

const DEFAULT_POINT_SEARCH_HEIGHT: i64 = 30;

/// Restriction of the residual form to a 3-dimensional linear subspace of
/// solutions of the member: a complete ternary analysis.
fn resolve_linear_subspace(
    ctx: &PairContext,
    residual: &QuadForm4,
    basis: &[[Rational; 4]; 3],
    out: &mut SolutionDescription,
) -> Result<()> {
    // 3x3 restricted Gram matrix
    let gram3: Vec<Vec<Rational>> = (0..3)
        .map(|r| (0..3).map(|c| residual.polar(&basis[r], &basis[c])).collect())
        .collect();
    let strata = solve_ternary_complete(gram3)?;
    for coeffs3 in strata {
        // x(m, n) = sum_j coeffs3[j](m, n) * basis[j]
        let forms: [MPoly; 4] = std::array::from_fn(|i| {
            let mut acc = MPoly::zero();
            for (j, cj) in coeffs3.iter().enumerate() {
                if basis[j][i].is_zero() {
                    continue;
                }
                acc = &acc + &(&MPoly::constant(basis[j][i].clone()) * cj);
            }
            acc
        });
        push_stratum(ctx, forms, out)?;
    }
    Ok(())
}

/// Restriction to a projective line (rank-2 member with anisotropic ratio):
/// a binary quadratic decides everything.
fn resolve_line(
    ctx: &PairContext,
    residual: &QuadForm4,
    basis: &[[Rational; 4]; 2],
    root: &(Int, Int),
    out: &mut SolutionDescription,
) -> Result<()> {
    let a = residual.polar(&basis[0], &basis[0]);
    let b = rat(2) * residual.polar(&basis[0], &basis[1]);
    let c = residual.polar(&basis[1], &basis[1]);
    let m = MPoly::var(Var::M);
    let n = MPoly::var(Var::N);
    if a.is_zero() && b.is_zero() && c.is_zero() {
        // the whole line solves the pair
        let forms: [MPoly; 4] = std::array::from_fn(|i| {
            &(&MPoly::constant(basis[0][i].clone()) * &m)
                + &(&MPoly::constant(basis[1][i].clone()) * &n)
        });
        push_stratum(ctx, forms, out)?;
        return Ok(());
    }
    // roots of a u^2 + b u w + c w^2
    let mut dirs: Vec<(Rational, Rational)> = Vec::new();
    if a.is_zero() {
        dirs.push((Rational::one(), Rational::zero()));
        if !b.is_zero() {
            dirs.push((-(&c / &b), Rational::one()));
        }
    } else {
        let disc = &b * &b - rat(4) * &a * &c;
        if let Some(s) = sqrt_exact(&disc) {
            dirs.push(((-&b + &s) / (rat(2) * &a), Rational::one()));
            if !s.is_zero() {
                dirs.push(((-&b - &s) / (rat(2) * &a), Rational::one()));
            }
        }
    }
    if dirs.is_empty() {
        out.status = SolutionStatus::ProvedEmpty;
        out.certificate = Some(Certificate::EmptyStratification {
            detail: format!(
                "member at ({}, {}) restricts to a line on which the residual binary form is anisotropic",
                root.0, root.1
            ),
        });
        return Ok(());
    }
    for (u, w) in dirs {
        let coords: [Rational; 4] =
            std::array::from_fn(|i| &u * &basis[0][i] + &w * &basis[1][i]);
        if coords.iter().all(Zero::is_zero) {
            continue;
        }
        let v = ProjVec4::normalize(&coords)?;
        if ctx.verify_point(&v) && !out.points.contains(&v) {
            out.points.push(v);
        }
    }
    Ok(())
}

/// Complete solution of a ternary quadratic `z^T G z = 0` on parameters,
/// returned as families of three forms in `(m, n)` whose union covers every
/// solution.
fn solve_ternary_complete(gram3: Vec<Vec<Rational>>) -> Result<Vec<[MPoly; 3]>> {
    let (diag, p, rank) = diagonalize_sym(gram3);
    let nz: Vec<usize> = (0..3).filter(|&i| !diag[i].is_zero()).collect();
    let kernel: Vec<usize> = (0..3).filter(|&i| diag[i].is_zero()).collect();
    let m = MPoly::var(Var::M);
    let n = MPoly::var(Var::N);
    let transport = |y: [MPoly; 3]| -> [MPoly; 3] {
        std::array::from_fn(|i| {
            let mut acc = MPoly::zero();
            for j in 0..3 {
                if p[i][j].is_zero() {
                    continue;
                }
                acc = &acc + &(&MPoly::constant(p[i][j].clone()) * &y[j]);
            }
            acc
        })
    };
    let mut families = Vec::new();
    match rank {
        0 => return Err(Error::UnsupportedStratum),
        1 => {
            // y_nz = 0, kernel plane free
            let mut y: [MPoly; 3] = std::array::from_fn(|_| MPoly::zero());
            y[kernel[0]] = m.clone();
            y[kernel[1]] = n.clone();
            families.push(transport(y));
        }
        2 => {
            let ratio = -(&diag[nz[1]] / &diag[nz[0]]);
            match sqrt_exact(&ratio) {
                Some(s) => {
                    for sign in [Rational::one(), -Rational::one()] {
                        let mut y: [MPoly; 3] = std::array::from_fn(|_| MPoly::zero());
                        y[nz[0]] = &MPoly::constant(&s * &sign) * &m;
                        y[nz[1]] = m.clone();
                        y[kernel[0]] = n.clone();
                        families.push(transport(y));
                    }
                }
                None => {
                    // forced zero on both pivots: the kernel direction alone
                    let mut y: [MPoly; 3] = std::array::from_fn(|_| MPoly::zero());
                    y[kernel[0]] = m.clone();
                    families.push(transport(y));
                }
            }
        }
        _ => {
            let coeffs: [Rational; 3] = std::array::from_fn(|i| diag[nz[i]].clone());
            match solve_legendre(&coeffs[0], &coeffs[1], &coeffs[2])? {
                None => {}
                Some(sol) => {
                    let conic = parametrize_conic(&coeffs, &sol.beta);
                    let mut y: [MPoly; 3] = std::array::from_fn(|_| MPoly::zero());
                    for (slot, &orig) in nz.iter().enumerate() {
                        y[orig] = conic[slot].clone();
                    }
                    families.push(transport(y));
                }
            }
        }
    }
    Ok(families)
}

/// Classifies, verifies, and stores a parametrized stratum.
fn push_stratum(ctx: &PairContext, forms: [MPoly; 4], out: &mut SolutionDescription) -> Result<()> {
    match classify_mn_family(forms)? {
        Stratum::Nothing => Ok(()),
        Stratum::Point(v) => {
            if ctx.verify_point(&v) && !out.points.contains(&v) {
                out.points.push(v);
            }
            Ok(())
        }
        Stratum::Family(fam) => {
            if !ctx.verify_family(&fam.forms) {
                return Err(Error::InvalidInput(
                    "internal: stratum fails verification against the pair".into(),
                ));
            }
            if !out.families.contains(&fam) {
                out.families.push(fam);
            }
            Ok(())
        }
    }
}

fn finalize(ctx: PairContext, mut out: SolutionDescription) -> Result<SolutionDescription> {
    out.points.sort();
    out.points.dedup();
    if !out.verify(&ctx.q1, &ctx.q2) {
        return Err(Error::InvalidInput(
            "internal: solution description fails verification".into(),
        ));
    }
    Ok(out)
}

/// Solves the pair through a nondegenerate member with square determinant:
/// builds the member's complete bilinear solution, substitutes it into the
/// other form, and resolves the resulting quadratic in the second parameter
/// pair via its discriminant quartic.
pub fn solve_via_square_pencil(
    q1: &QuadForm4,
    q2: &QuadForm4,
    xi: &(Int, Int),
) -> Result<SolutionDescription> {
    solve_via_square_pencil_with_height(q1, q2, xi, DEFAULT_POINT_SEARCH_HEIGHT)
}

pub fn solve_via_square_pencil_with_height(
    q1: &QuadForm4,
    q2: &QuadForm4,
    xi: &(Int, Int),
    search_height: i64,
) -> Result<SolutionDescription> {
    let pencil = PencilForm::new(q1.clone(), q2.clone());
    let fval = pencil.f.eval_int(&xi.0, &xi.1);
    if fval.is_zero() || sqrt_exact(&fval).is_none() {
        return Err(Error::NotASquarePencilPoint);
    }
    let ctx = PairContext {
        q1: q1.clone(),
        q2: q2.clone(),
    };
    let member = pencil
        .member(
            &Rational::from_integer(xi.0.clone()),
            &Rational::from_integer(xi.1.clone()),
        )
        .primitive();
    let seed = find_rational_zero(&member)?;
    let bil = bilinear_general(&member, &seed)?;
    let residual = ctx.residual_for(xi).clone();

    let subst = residual.substitute(&bil.forms);
    if subst.is_zero() {
        return Err(Error::UnsupportedStratum);
    }
    // quadratic in (r, s): A(p,q) r^2 + B(p,q) r s + C(p,q) s^2
    let by_r = subst.coeffs_in(Var::R);
    let zero = MPoly::zero();
    let a = by_r.get(&2).cloned().unwrap_or_else(MPoly::zero);
    let rest1 = by_r.get(&1).unwrap_or(&zero);
    let b = rest1.coeffs_in(Var::S).get(&1).cloned().unwrap_or_else(MPoly::zero);
    let rest0 = by_r.get(&0).unwrap_or(&zero);
    let c = rest0.coeffs_in(Var::S).get(&2).cloned().unwrap_or_else(MPoly::zero);

    let mut out = SolutionDescription::empty(SolutionStatus::Complete);

    // families arise when the quadratic splits rationally as polynomials
    let mk_family = |r_poly: &MPoly, s_poly: &MPoly| -> [MPoly; 4] {
        let subs = [(Var::R, r_poly.clone()), (Var::S, s_poly.clone())];
        let raw: [MPoly; 4] = std::array::from_fn(|i| {
            bil.forms[i]
                .substitute(&subs)
                .rename(Var::P, Var::M)
                .rename(Var::Q, Var::N)
        });
        raw
    };

    if a.is_zero() && c.is_zero() && b.is_zero() {
        return Err(Error::UnsupportedStratum);
    }
    if a.is_zero() || c.is_zero() {
        // s (B r + C s) = 0 or r (A r + B s) = 0: two rational branches
        let (axis, other) = if a.is_zero() {
            (
                mk_family(&MPoly::from_int(1), &MPoly::from_int(0)),
                mk_family(&(-&c), &b.clone()),
            )
        } else {
            (
                mk_family(&MPoly::from_int(0), &MPoly::from_int(1)),
                mk_family(&b.clone(), &(-&a)),
            )
        };
        push_stratum(&ctx, axis, &mut out)?;
        if !(b.is_zero()) {
            push_stratum(&ctx, other, &mut out)?;
        }
        return finalize(ctx, out);
    }

    let d_poly = &(&b * &b) - &(&(&a * &c) * &MPoly::from_int(4));
    let d_quartic =
        BinaryQuartic::from_mpoly_in(&d_poly, Var::P, Var::Q).map_err(|_| Error::UnsupportedStratum)?;

    let builder = |pp: &MPoly, qq: &MPoly, eta: &MPoly| -> [MPoly; 4] {
        let subs_pq = [(Var::P, pp.clone()), (Var::Q, qq.clone())];
        let r_expr = &(-&b.substitute(&subs_pq)) + eta;
        let s_expr = &a.substitute(&subs_pq) * &MPoly::from_int(2);
        let subs_rs = [(Var::R, r_expr), (Var::S, s_expr)];
        std::array::from_fn(|i| bil.forms[i].substitute(&subs_pq).substitute(&subs_rs))
    };
    // where A, B, C vanish simultaneously the whole (r : s) line solves the
    // pair: a linear family per common root
    for (p0, q0) in common_binary_roots(&[&a, &b, &c], Var::P, Var::Q)? {
        let subs = [
            (Var::P, MPoly::constant(p0)),
            (Var::Q, MPoly::constant(q0)),
        ];
        let line: [MPoly; 4] = std::array::from_fn(|i| {
            bil.forms[i]
                .substitute(&subs)
                .rename(Var::R, Var::M)
                .rename(Var::S, Var::N)
        });
        push_stratum(&ctx, line, &mut out)?;
    }
    // parameter points with A = 0 carry solutions on the (r : s) = (1 : 0)
    // branch, where D = B^2 is automatically square
    let mut extras: Vec<(Rational, Rational)> = Vec::new();
    for (p0, q0) in common_binary_roots(&[&a], Var::P, Var::Q)? {
        extras.push((p0, q0));
    }
    resolve_eta_condition(
        &ctx,
        &d_quartic,
        &builder,
        &extras,
        search_height,
        &mut out,
    )?;
    finalize(ctx, out)
}

/// From two distinct common solutions, the pencil point `(-h2, h1)` built
/// from the cross terms of `x_i = alpha_i m + beta_i n`, at which the
/// pencil determinant is a perfect square; returns the point and
/// `eta = sqrt(f)` exactly.
pub fn two_solution_pencil_point(
    q1: &QuadForm4,
    q2: &QuadForm4,
    s1: &ProjVec4,
    s2: &ProjVec4,
) -> Result<((Int, Int), Rational)> {
    if s1 == s2 {
        return Err(Error::InvalidInput(
            "the two solutions must be distinct projective classes".into(),
        ));
    }
    let (v1, v2) = (s1.to_rationals(), s2.to_rationals());
    for q in [q1, q2] {
        if !q.eval(&v1).is_zero() || !q.eval(&v2).is_zero() {
            return Err(Error::SeedNotOnForm);
        }
    }
    let h1 = q1.polar(&v1, &v2);
    let h2 = q2.polar(&v1, &v2);
    let pencil = PencilForm::new(q1.clone(), q2.clone());
    let xi: (Int, Int) = if h1.is_zero() {
        (Int::one(), Int::zero())
    } else if h2.is_zero() {
        (Int::zero(), Int::one())
    } else {
        // primitive integer representative of (-h2 : h1)
        let den = h2.denom().lcm(h1.denom());
        let a = (-&h2 * Rational::from_integer(den.clone())).to_integer();
        let b = (&h1 * Rational::from_integer(den)).to_integer();
        let g = a.gcd(&b);
        (a / &g, b / &g)
    };
    let val = pencil.f.eval_int(&xi.0, &xi.1);
    let eta = sqrt_exact(&val).ok_or_else(|| {
        Error::InvalidInput(format!(
            "pencil value {} at ({}, {}) is not a perfect square",
            format_rational(&val),
            xi.0,
            xi.1
        ))
    })?;
    Ok((xi, eta))
}

/// Exact membership of a projective point in the image of a family: the
/// preimage parameters are the common roots of the cross forms
/// `F_i x_j - F_j x_i`.
pub fn family_contains(forms: &[MPoly; 4], target: &ProjVec4) -> bool {
    let t = target.to_rationals();
    let mut crosses: Vec<MPoly> = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            let c = &(&forms[i] * &MPoly::constant(t[j].clone()))
                - &(&forms[j] * &MPoly::constant(t[i].clone()));
            if !c.is_zero() {
                crosses.push(c);
            }
        }
    }
    if crosses.is_empty() {
        // the family is projectively constant and equal to the target
        return true;
    }
    let refs: Vec<&MPoly> = crosses.iter().collect();
    let Ok(roots) = common_binary_roots(&refs, Var::M, Var::N) else {
        return false;
    };
    for (m0, n0) in roots {
        let pt = [(Var::M, m0), (Var::N, n0)];
        let vals: [Rational; 4] = std::array::from_fn(|i| forms[i].eval(&pt));
        if vals.iter().all(Zero::is_zero) {
            continue;
        }
        if ProjVec4::normalize(&vals).as_ref() == Ok(target) {
            return true;
        }
    }
    false
}

/// Brute-force enumeration of primitive common solutions with coordinates
/// bounded by `height`; test oracle.
pub fn brute_force_pair(q1: &QuadForm4, q2: &QuadForm4, height: i64) -> Vec<ProjVec4> {
    let to_int_gram = |q: &QuadForm4| -> [[i128; 4]; 4] {
        let p = q.primitive();
        std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let c = &p.gram()[i][j];
                debug_assert!(c.denom().is_one());
                c.numer().to_i128().expect("fixture-sized gram")
            })
        })
    };
    let g1 = to_int_gram(q1);
    let g2 = to_int_gram(q2);
    let eval = |g: &[[i128; 4]; 4], x: &[i128; 4]| -> i128 {
        let mut acc = 0i128;
        for i in 0..4 {
            for j in 0..4 {
                acc += g[i][j] * x[i] * x[j];
            }
        }
        acc
    };
    let mut out = Vec::new();
    let h = height;
    for x1 in 0..=h {
        let x2lo = if x1 == 0 { 0 } else { -h };
        for x2 in x2lo..=h {
            let x3lo = if x1 == 0 && x2 == 0 { 0 } else { -h };
            for x3 in x3lo..=h {
                let x4lo = if x1 == 0 && x2 == 0 && x3 == 0 { 1 } else { -h };
                for x4 in x4lo..=h {
                    let x = [x1 as i128, x2 as i128, x3 as i128, x4 as i128];
                    if eval(&g1, &x) != 0 || eval(&g2, &x) != 0 {
                        continue;
                    }
                    let g = x1.gcd(&x2).gcd(&x3).gcd(&x4);
                    if g != 1 {
                        continue;
                    }
                    out.push(ProjVec4::from_ints([x1, x2, x3, x4]).expect("nonzero"));
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

//! Rational points on quartic models of elliptic curves
//! `y^2 = a0 t^4 + a1 t^3 + a2 t^2 + a3 t + a4`: derivation of new points
//! from one or two known points, the correspondence with a pair of quadric
//! equations, and the reduction of the non-monic case to the monic one.

use crate::poly::{MPoly, Var};
use crate::quadform::QuadForm4;
use crate::rational::{rat, sqrt_exact};
use crate::{Error, Int, ProjVec4, Rational, Result};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

/// The curve `y^2 = a0 t^4 + a1 t^3 + a2 t^2 + a3 t + a4`, `a0 != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticCurve {
    pub a: [Rational; 5],
}

impl QuarticCurve {
    pub fn new(a: [Rational; 5]) -> Result<Self> {
        if a[0].is_zero() {
            return Err(Error::InvalidInput("leading coefficient a0 must be nonzero".into()));
        }
        Ok(QuarticCurve { a })
    }

    pub fn from_ints(a: [i64; 5]) -> Self {
        Self::new(a.map(rat)).expect("nonzero leading coefficient")
    }

    /// Monic curve `y^2 = t^4 + a1 t^3 + ...`.
    pub fn monic(a1: Rational, a2: Rational, a3: Rational, a4: Rational) -> Self {
        QuarticCurve {
            a: [Rational::one(), a1, a2, a3, a4],
        }
    }

    pub fn is_monic(&self) -> bool {
        self.a[0].is_one()
    }

    pub fn rhs(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in &self.a {
            acc = acc * t + c;
        }
        acc
    }

    pub fn contains(&self, p: &QuarticPoint) -> bool {
        &p.y * &p.y == self.rhs(&p.t)
    }

    /// The right-hand side as a polynomial in `t`.
    pub fn rhs_poly(&self) -> MPoly {
        let t = MPoly::var(Var::T);
        let mut acc = MPoly::zero();
        for c in &self.a {
            acc = &(&acc * &t) + &MPoly::constant(c.clone());
        }
        acc
    }
}

/// A rational point `(t, y)` with `y^2` equal to the curve's right side.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct QuarticPoint {
    pub t: Rational,
    pub y: Rational,
}

impl QuarticPoint {
    pub fn new(t: Rational, y: Rational) -> Self {
        QuarticPoint { t, y }
    }

    pub fn from_ints(t: i64, y: i64) -> Self {
        QuarticPoint::new(rat(t), rat(y))
    }

    pub fn on(curve: &QuarticCurve, t: Rational, y: Rational) -> Result<Self> {
        let p = QuarticPoint { t, y };
        if !curve.contains(&p) {
            return Err(Error::PointNotOnCurve);
        }
        Ok(p)
    }

    fn flip(&self) -> QuarticPoint {
        QuarticPoint::new(self.t.clone(), -self.y.clone())
    }
}

fn checked_on_curve(curve: &QuarticCurve, t: Rational, y: Rational) -> QuarticPoint {
    let p = QuarticPoint::new(t, y);
    assert!(curve.contains(&p), "derived point fails curve verification");
    p
}

/// New point from one known point with `y1 != 0` on a monic curve.
///
/// The denominator guard is `(4t1 + a1) y1 + 4t1^3 + 3a1 t1^2 + 2a2 t1 + a3
/// != 0`; the output is verified on the curve before it is returned.
pub fn derive_from_one(curve: &QuarticCurve, p1: &QuarticPoint) -> Result<QuarticPoint> {
    require_monic(curve)?;
    if !curve.contains(p1) {
        return Err(Error::PointNotOnCurve);
    }
    if p1.y.is_zero() {
        return Err(Error::ZeroY);
    }
    let [_, a1, a2, a3, a4] = &curve.a;
    let (t1, y1) = (&p1.t, &p1.y);
    let two = rat(2);
    let four = rat(4);

    // g = 4t1^3 + 3a1 t1^2 + 2a2 t1 + a3 (the derivative of the quartic at
    // t1), recurring throughout
    let g = &four * t1 * t1 * t1 + rat(3) * a1 * t1 * t1 + &two * a2 * t1 + a3;
    let den = &four * y1 * (&(&four * t1 + a1) * y1 + &g);
    if den.is_zero() {
        return Err(Error::DegenerateDenominator);
    }
    let t_num = -&four * (&two * t1 * t1 + &two * a1 * t1 + a2) * y1 * y1
        + &four * (&two * t1 * t1 * t1 * t1 + a1 * t1 * t1 * t1 - a3 * t1 - &two * a4) * y1
        + &g * &g;
    let t11 = &t_num / &den;

    let y2 = y1 * y1;
    let y3 = &y2 * y1;
    let y4 = &y2 * &y2;
    let y5 = &y4 * y1;
    let y6 = &y3 * &y3;
    let y_num = rat(64) * &y6
        + (rat(128) * t1 * t1 + rat(64) * a1 * t1 - rat(16) * a1 * a1 + rat(64) * a2) * &y5
        + (rat(320) * t1 * t1 * t1 * t1
            + rat(320) * a1 * t1 * t1 * t1
            + (rat(96) * a1 * a1 + rat(64) * a2) * t1 * t1
            + rat(64) * (a1 * a2 - a3) * t1
            - rat(16) * a1 * a3
            + rat(16) * a2 * a2)
            * &y4
        + rat(8)
            * &g
            * (rat(16) * t1 * t1 * t1
                + rat(12) * a1 * t1 * t1
                + rat(3) * a1 * a1 * t1
                + a1 * a2
                - &two * a3)
            * &y3
        - &two * (&four * t1 + a1) * &g * &g * &g * y1
        - &g * &g * &g * &g;
    let y11 = &y_num / (&den * &den);
    Ok(checked_on_curve(curve, t11, y11))
}

/// New point from two known points with `t1 != t2` on a monic curve;
/// symmetric in its two arguments.
pub fn derive_from_two(
    curve: &QuarticCurve,
    p1: &QuarticPoint,
    p2: &QuarticPoint,
) -> Result<QuarticPoint> {
    require_monic(curve)?;
    if !curve.contains(p1) || !curve.contains(p2) {
        return Err(Error::PointNotOnCurve);
    }
    if p1.t == p2.t {
        return Err(Error::EqualT);
    }
    let [_, a1, a2, a3, a4] = &curve.a;
    let (t1, y1) = (&p1.t, &p1.y);
    let (t2, y2) = (&p2.t, &p2.y);
    let two = rat(2);
    let dt = t1 - t2;
    let e = &two * y1 - &two * y2 + a1 * &dt + &two * t1 * t1 - &two * t2 * t2;
    if e.is_zero() {
        return Err(Error::DegenerateDenominator);
    }
    let den = &dt * &e;

    let t_num = -&two * y1 * y2
        + &two * &dt * (t2 * y1 - t1 * y2)
        + a1 * (t1 + t2) * t1 * t2
        + &two * a2 * t1 * t2
        + a3 * (t1 + t2)
        + &two * a4
        + &two * (t1 * t1 - t1 * t2 + t2 * t2) * t1 * t2;
    let t12 = &t_num / &den;

    let dy = y1 - y2;
    let dt3 = &dt * &dt * &dt;
    let dt4 = &dt3 * &dt;
    let u1 = t1 * t1 + &two * t1 * t2 + rat(3) * t2 * t2 + a1 * t1 + &two * a1 * t2 + a2;
    let u2 = rat(3) * t1 * t1 + &two * t1 * t2 + t2 * t2 + &two * a1 * t1 + a1 * t2 + a2;
    let y_num = -(&dy * &dy * &dy * &dy)
        - &dt * ((rat(4) * t1 + a1) * y1 - (rat(4) * t2 + a1) * y2) * &dy * &dy
        - &dt3
            * ((&two * t1 + &two * t2 + a1) * (y1 * y1 - y2 * y2)
                - rat(4) * &dt * y1 * y2)
        + &dt3 * ((rat(4) * t1 + a1) * &u1 * y1 - (rat(4) * t2 + a1) * &u2 * y2)
        + &dt4 * &u1 * &u2;
    let y12 = &y_num / (&den * &den);
    Ok(checked_on_curve(curve, t12, y12))
}

fn require_monic(curve: &QuarticCurve) -> Result<()> {
    if !curve.is_monic() {
        return Err(Error::InvalidInput(
            "derivation formulas require a monic quartic; reduce first".into(),
        ));
    }
    Ok(())
}

/// The root making `(t - a)(t - b)(t^2 + c t + d) + m^2` a perfect square:
/// `t* = (ab - d - 2m) / (a + b + c)`.
///
/// This is the two-point derivation specialized at `(a, m)` and `(b, m)`;
/// the square property of the value at `t*` is part of the contract.
pub fn corollary_root(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    d: &Rational,
    m: &Rational,
) -> Result<Rational> {
    if a == b {
        return Err(Error::EqualT);
    }
    let den = a + b + c;
    if den.is_zero() {
        return Err(Error::DegenerateDenominator);
    }
    Ok((a * b - d - rat(2) * m) / den)
}

/// The quartic `(t - a)(t - b)(t^2 + c t + d) + m^2` as a curve RHS.
pub fn corollary_quartic(a: &Rational, b: &Rational, c: &Rational, d: &Rational, m: &Rational) -> QuarticCurve {
    let a1 = c - a - b;
    let a2 = d - (a + b) * c + a * b;
    let a3 = a * b * c - (a + b) * d;
    let a4 = a * b * d + m * m;
    QuarticCurve::monic(a1, a2, a3, a4)
}

/// The pair of quadric equations attached to a monic quartic curve: common
/// zeros with nonzero last coordinate correspond to curve points through
/// [`phi_map`] / [`psi_map`], and the pencil determinant reproduces the
/// quartic itself: `f(1, t) = t^4 + a1 t^3 + a2 t^2 + a3 t + a4`.
#[derive(Clone, Debug)]
pub struct AssociatedPair {
    pub q1: QuadForm4,
    pub q2: QuadForm4,
    pub curve: QuarticCurve,
    /// `a1^3 - 4 a1 a2 + 4 a3`, nonzero by construction.
    pub w: Rational,
}

/// Builds the associated pair; errors with [`Error::SingularConfiguration`]
/// when `a1^3 - 4 a1 a2 + 4 a3 = 0` (shift `t` first).
///
/// Both forms are scaled by 2, which leaves their zero sets untouched and
/// makes the pencil identity hold exactly under the project-wide halved
/// Gram convention.
pub fn build_associated_pair(curve: &QuarticCurve) -> Result<AssociatedPair> {
    require_monic(curve)?;
    let [_, a1, a2, a3, a4] = &curve.a;
    let w = a1 * a1 * a1 - rat(4) * a1 * a2 + rat(4) * a3;
    if w.is_zero() {
        return Err(Error::SingularConfiguration);
    }
    let c1 = (a1 * a1 - rat(4) * a2) / rat(16);
    let c2 = -&w / rat(16);
    let c3 = -(a1 / rat(2));
    let c4 = rat(4) * (a1 * a1 * a1 * a1 - rat(4) * a1 * a1 * a2 + rat(8) * a1 * a3 - rat(16) * a4)
        / (&w * &w);
    let two = rat(2);
    let q1 = QuadForm4::from_coeffs(&[
        ((1, 1), two.clone()),
        ((2, 2), &two * &c1),
        ((2, 3), &two * &c2),
        ((2, 4), two.clone()),
        ((3, 4), &two * &c3),
        ((4, 4), &two * &c4),
    ])?;
    let q2 = QuadForm4::from_coeffs(&[((1, 2), two.clone()), ((3, 4), -&two)])?;
    Ok(AssociatedPair {
        q1,
        q2,
        curve: curve.clone(),
        w,
    })
}

/// Maps a common zero of the pair with nonzero last coordinate to a point
/// on the curve; independent of the projective scale of `alpha`.
pub fn phi_map(pair: &AssociatedPair, alpha: &ProjVec4) -> Result<QuarticPoint> {
    let av = alpha.to_rationals();
    if av[3].is_zero() {
        return Err(Error::InvalidInput("phi requires alpha4 != 0".into()));
    }
    if !pair.q1.eval(&av).is_zero() || !pair.q2.eval(&av).is_zero() {
        return Err(Error::SeedNotOnForm);
    }
    let a1 = &pair.curve.a[1];
    let w = &pair.w;
    // t0 sign pinned by inverting the psi formulas: beta2/beta4 =
    // -8(2t + a1)/w forces the leading minus.
    let t0 = -(w * &av[1] + rat(8) * a1 * &av[3]) / (rat(16) * &av[3]);
    let y0 = w * (rat(32) * &av[0] * &av[3] - w * &av[1] * &av[1] - rat(8) * a1 * &av[1] * &av[3])
        / (rat(256) * &av[3] * &av[3]);
    QuarticPoint::on(&pair.curve, t0, y0)
}

/// Maps a curve point to a common zero of the pair (primitive, last
/// coordinate nonzero).
pub fn psi_map(pair: &AssociatedPair, p: &QuarticPoint) -> Result<ProjVec4> {
    if !pair.curve.contains(p) {
        return Err(Error::PointNotOnCurve);
    }
    let a1 = &pair.curve.a[1];
    let w = &pair.w;
    let (t1, y1) = (&p.t, &p.y);
    let u = rat(2) * t1 * t1 + t1 * a1 + rat(2) * y1;
    let v = rat(2) * t1 + a1;
    let b1 = rat(4) * w * &u;
    let b2 = rat(-8) * w * &v;
    let b3 = rat(-32) * &u * &v;
    let b4 = w * w;
    let vec = ProjVec4::normalize(&[b1, b2, b3, b4])?;
    debug_assert!(pair.q1.eval_proj(&vec).is_zero() && pair.q2.eval_proj(&vec).is_zero());
    Ok(vec)
}

/// Result of reducing a general quartic at a base point: the monic model
/// plus invertible point maps.
#[derive(Clone, Debug)]
pub struct ReducedQuartic {
    pub original: QuarticCurve,
    pub monic: QuarticCurve,
    pub t1: Rational,
    pub y1: Rational,
}

impl ReducedQuartic {
    /// Carries a point of the original curve (with `t != t1`) onto the
    /// monic model: `r = 1/(t - t1)`, `Y = y r^2 / y1`.
    pub fn forward(&self, p: &QuarticPoint) -> Result<QuarticPoint> {
        if !self.original.contains(p) {
            return Err(Error::PointNotOnCurve);
        }
        if p.t == self.t1 {
            return Err(Error::DegenerateDenominator);
        }
        let r = (&p.t - &self.t1).recip();
        let y = &p.y * &r * &r / &self.y1;
        QuarticPoint::on(&self.monic, r, y)
    }

    /// Inverse map: `t = t1 + 1/r`, `y = y1 Y / r^2` for `r != 0`.
    pub fn backward(&self, p: &QuarticPoint) -> Result<QuarticPoint> {
        if !self.monic.contains(p) {
            return Err(Error::PointNotOnCurve);
        }
        if p.t.is_zero() {
            return Err(Error::DegenerateDenominator);
        }
        let t = &self.t1 + p.t.recip();
        let y = &self.y1 * &p.y / (&p.t * &p.t);
        QuarticPoint::on(&self.original, t, y)
    }
}

/// Reduces `y^2 = a0 t^4 + ... + a4` with a known point `(t1, y1)`, `y1 !=
/// 0`, to a monic quartic: substitute `t = s + t1`, then `y = y1 Y / r^2`,
/// `s = 1/r`.
pub fn reduce_general(curve: &QuarticCurve, p1: &QuarticPoint) -> Result<ReducedQuartic> {
    if !curve.contains(p1) {
        return Err(Error::PointNotOnCurve);
    }
    if p1.y.is_zero() {
        return Err(Error::ZeroY);
    }
    // Taylor shift: b_j are the coefficients of RHS(s + t1)
    let t = MPoly::var(Var::T);
    let shifted = curve
        .rhs_poly()
        .substitute(&[(Var::T, &t + &MPoly::constant(p1.t.clone()))]);
    let b: Vec<Rational> = (0..=4).map(|i| shifted.coeff(&[(Var::T, i)])).collect();
    debug_assert_eq!(b[0], &p1.y * &p1.y);
    // s = 1/r reverses the coefficient order; b0 = y1^2 supplies the monic
    // r^4 term after dividing by y1^2:
    // Y^2 = r^4 + (b1/y1^2) r^3 + (b2/y1^2) r^2 + (b3/y1^2) r + b4/y1^2
    let y1sq = &p1.y * &p1.y;
    let monic = QuarticCurve::monic(
        &b[1] / &y1sq,
        &b[2] / &y1sq,
        &b[3] / &y1sq,
        &b[4] / &y1sq,
    );
    Ok(ReducedQuartic {
        original: curve.clone(),
        monic,
        t1: p1.t.clone(),
        y1: p1.y.clone(),
    })
}

/// All points with `t = u/v`, `gcd(u, v) = 1`, `|u|, |v| <= height`,
/// `y >= 0`, in deterministic scan order (`v` ascending, then `u`).
///
/// `jobs > 1` shards the scan across threads; results are merged in the
/// same canonical order regardless of scheduling.
pub fn search_points(curve: &QuarticCurve, height: u32, jobs: usize) -> Vec<QuarticPoint> {
    let vs: Vec<i64> = (1..=height as i64).collect();
    let scan = |v: i64| {
        let mut found = Vec::new();
        for u in -(height as i64)..=height as i64 {
            if u.gcd(&v) != 1 {
                continue;
            }
            let t = Rational::new(Int::from(u), Int::from(v));
            if let Some(y) = sqrt_exact(&curve.rhs(&t)) {
                found.push(QuarticPoint::new(t, y));
            }
        }
        found
    };
    let mut out: Vec<QuarticPoint> = if jobs <= 1 || vs.len() < 2 {
        vs.iter().flat_map(|&v| scan(v)).collect()
    } else {
        let chunks: Vec<Vec<i64>> = vs.chunks(vs.len().div_ceil(jobs)).map(<[i64]>::to_vec).collect();
        let mut results: Vec<(usize, Vec<QuarticPoint>)> = std::thread::scope(|scope| {
            let handles: Vec<_> = chunks
                .into_iter()
                .enumerate()
                .map(|(i, chunk)| {
                    scope.spawn(move || (i, chunk.iter().flat_map(|&v| scan(v)).collect()))
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("search thread")).collect()
        });
        results.sort_by_key(|(i, _)| *i);
        results.into_iter().flat_map(|(_, pts)| pts).collect()
    };
    // scan order is already deterministic; dedupe exact repeats
    out.dedup();
    out
}

/// Closure of `seeds` under both derivation formulas over both sign choices
/// of each `y`, iterated `depth` times.
///
/// Points are deduplicated by `(t, |y|)`; derivation-guard failures are
/// skipped silently; output is capped at `cap` points and sorted by `t`.
pub fn grow_orbit(
    curve: &QuarticCurve,
    seeds: &[QuarticPoint],
    depth: u32,
    cap: usize,
) -> Result<Vec<QuarticPoint>> {
    require_monic(curve)?;
    for s in seeds {
        if !curve.contains(s) {
            return Err(Error::PointNotOnCurve);
        }
    }
    let key = |p: &QuarticPoint| (p.t.clone(), p.y.abs());
    let mut known: BTreeSet<(Rational, Rational)> = BTreeSet::new();
    let mut points: Vec<QuarticPoint> = Vec::new();
    for s in seeds {
        let k = key(s);
        if known.insert(k.clone()) {
            points.push(QuarticPoint::new(k.0, k.1));
        }
    }
    for _ in 0..depth {
        if points.len() >= cap {
            break;
        }
        let snapshot = points.clone();
        let mut fresh = Vec::new();
        let push = |p: QuarticPoint, known: &mut BTreeSet<_>, fresh: &mut Vec<QuarticPoint>| {
            let k = key(&p);
            if known.insert(k.clone()) {
                fresh.push(QuarticPoint::new(k.0, k.1));
            }
        };
        for p in &snapshot {
            for cand in [p.clone(), p.flip()] {
                if let Ok(np) = derive_from_one(curve, &cand) {
                    push(np, &mut known, &mut fresh);
                }
            }
        }
        for (i, p) in snapshot.iter().enumerate() {
            for q in &snapshot[i + 1..] {
                for pc in [p.clone(), p.flip()] {
                    for qc in [q.clone(), q.flip()] {
                        if let Ok(np) = derive_from_two(curve, &pc, &qc) {
                            push(np, &mut known, &mut fresh);
                        }
                    }
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        points.extend(fresh);
        if points.len() >= cap {
            points.truncate(cap);
            break;
        }
    }
    points.sort();
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::det_mpoly;
    use crate::quadform::PencilForm;
    use crate::rational::ratio;

    /// y^2 = t^4 - 7t^3 - 3t^2 + 48t - 35, with points (1, ±2), (2, ±3).
    fn quartex1() -> QuarticCurve {
        QuarticCurve::from_ints([1, -7, -3, 48, -35])
    }

    #[test]
    fn derive_from_one_matches_known_values() {
        let c = quartex1();
        let cases = [
            ((1, 2), ratio(1001, 152)),
            ((1, -2), ratio(-729, 248)),
            ((2, 3), ratio(-121, 39)),
            ((2, -3), ratio(421, 57)),
        ];
        for ((t, y), want) in cases {
            let p = derive_from_one(&c, &QuarticPoint::from_ints(t, y)).unwrap();
            assert_eq!(p.t, want, "seed ({t}, {y})");
            assert!(c.contains(&p));
        }
    }

    #[test]
    fn derive_from_two_matches_known_values() {
        let c = quartex1();
        let cases = [
            ((1, 2), (2, 3), rat(18)),
            ((1, 2), (2, -3), ratio(-30, 11)),
            ((1, -2), (2, 3), ratio(58, 9)),
            ((1, -2), (2, -3), ratio(-22, 3)),
        ];
        for ((t1, y1), (t2, y2), want) in cases {
            let p = derive_from_two(
                &c,
                &QuarticPoint::from_ints(t1, y1),
                &QuarticPoint::from_ints(t2, y2),
            )
            .unwrap();
            assert_eq!(p.t, want);
            assert!(c.contains(&p));
        }
    }

    #[test]
    fn derive_from_two_is_symmetric() {
        let c = quartex1();
        let p1 = QuarticPoint::from_ints(1, 2);
        let p2 = QuarticPoint::from_ints(2, -3);
        let a = derive_from_two(&c, &p1, &p2).unwrap();
        let b = derive_from_two(&c, &p2, &p1).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn derivation_guards() {
        let c = quartex1();
        // y = 0 point: t^4-7t^3-3t^2+48t-35 has root t=1? 1-7-3+48-35 = 4, no.
        // use a synthetic curve with y = 0 at t = 1: y^2 = (t-1)(t^3-2)
        let c2 = QuarticCurve::monic(rat(-1), rat(0), rat(-2), rat(2));
        let z = QuarticPoint::from_ints(1, 0);
        assert!(c2.contains(&z));
        assert_eq!(derive_from_one(&c2, &z).unwrap_err(), Error::ZeroY);
        let p = QuarticPoint::from_ints(1, 2);
        assert_eq!(
            derive_from_two(&c, &p, &QuarticPoint::from_ints(1, -2)).unwrap_err(),
            Error::EqualT
        );
    }

    #[test]
    fn corollary_worked_instance() {
        // (a,b,c,d,m) = (1,2,3,5,0): t* = -1/2 and the quartic value is
        // (15/4)^2
        let (a, b, c, d, m) = (rat(1), rat(2), rat(3), rat(5), rat(0));
        let t = corollary_root(&a, &b, &c, &d, &m).unwrap();
        assert_eq!(t, ratio(-1, 2));
        let curve = corollary_quartic(&a, &b, &c, &d, &m);
        let val = curve.rhs(&t);
        assert_eq!(val, ratio(225, 16));
        assert_eq!(sqrt_exact(&val).unwrap(), ratio(15, 4));
    }

    #[test]
    fn corollary_degenerate_inputs() {
        let r = corollary_root(&rat(1), &rat(1), &rat(3), &rat(5), &rat(0));
        assert_eq!(r.unwrap_err(), Error::EqualT);
        let r = corollary_root(&rat(1), &rat(2), &rat(-3), &rat(5), &rat(0));
        assert_eq!(r.unwrap_err(), Error::DegenerateDenominator);
    }

    #[test]
    fn associated_pair_pencil_identity_per_curve() {
        let c = quartex1();
        // a1^3 - 4 a1 a2 + 4 a3 = -343 - 84 + 192 = -235
        let pair = build_associated_pair(&c).unwrap();
        assert_eq!(pair.w, rat(-235));
        let pencil = PencilForm::new(pair.q1.clone(), pair.q2.clone());
        // f(1, t) coefficients against t^4 + a1 t^3 + a2 t^2 + a3 t + a4:
        // e0 = a4, e1 = a3, e2 = a2, e3 = a1, e4 = 1
        assert_eq!(pencil.f.e[4], rat(1));
        assert_eq!(pencil.f.e[3], c.a[1]);
        assert_eq!(pencil.f.e[2], c.a[2]);
        assert_eq!(pencil.f.e[1], c.a[3]);
        assert_eq!(pencil.f.e[0], c.a[4]);
    }

    #[test]
    fn associated_pair_singular_configuration() {
        let c = QuarticCurve::from_ints([1, 0, 0, 0, -35]);
        assert_eq!(
            build_associated_pair(&c).unwrap_err(),
            Error::SingularConfiguration
        );
    }

    #[test]
    fn pencil_identity_with_indeterminate_coefficients() {
        // one fully symbolic check: a1..a4 as variables p, q, r, s and the
        // pencil parameter as t. The x4 row/column is scaled by w^2 to clear
        // denominators; det must then equal w^8 * (t^4 + a1 t^3 + ... + a4)
        // -- the congruence scaling contributes det(diag(1,1,1,w^2))^2 = w^4
        // on top of w^4 from the cleared entries.
        let a1 = MPoly::var(Var::P);
        let a2 = MPoly::var(Var::Q);
        let a3 = MPoly::var(Var::R);
        let a4 = MPoly::var(Var::S);
        let t = MPoly::var(Var::T);
        let c = |n: i64| MPoly::from_int(n);
        let w = &(&a1.pow(3) - &(&(&a1 * &a2) * &c(4))) + &(&a3 * &c(4));
        // scaled Gram entries of 2*Q1 + t * 2*Q2 with x4 scaled by w^2
        let half = MPoly::constant(ratio(1, 2));
        let quarter = MPoly::constant(ratio(1, 8));
        let c1x2 = &(&(&a1 * &a1) - &(&a2 * &c(4))) * &quarter; // 2*c1
        let c2 = -&(&w * &MPoly::constant(ratio(1, 16)));
        let c3 = -&(&a1 * &half);
        let w2 = &w * &w;
        let c4w4 = &(&(&(&(&a1.pow(4) - &(&(&(&a1 * &a1) * &a2) * &c(4)))
            + &(&(&a1 * &a3) * &c(8)))
            - &(&a4 * &c(16)))
            * &w2)
            * &c(8); // 2*c4*w^4
        let m: Vec<Vec<MPoly>> = vec![
            vec![c(2), t.clone(), MPoly::zero(), MPoly::zero()],
            vec![t.clone(), c1x2.clone(), c2.clone(), w2.clone()],
            vec![MPoly::zero(), c2.clone(), MPoly::zero(), &w2 * &(&c3 - &t)],
            vec![MPoly::zero(), w2.clone(), &w2 * &(&c3 - &t), c4w4],
        ];
        let det = det_mpoly(&m);
        let rhs = &(&(&(&t.pow(4) + &(&a1 * &t.pow(3))) + &(&a2 * &t.pow(2))) + &(&a3 * &t))
            + &a4;
        let want = &w.pow(4) * &rhs;
        assert_eq!(det, want, "pencil determinant identity over symbols");
    }

    #[test]
    fn phi_psi_roundtrip_on_fixture() {
        let c = quartex1();
        let pair = build_associated_pair(&c).unwrap();
        for (t, y) in [(1, 2), (1, -2), (2, 3), (2, -3)] {
            let p = QuarticPoint::from_ints(t, y);
            let alpha = psi_map(&pair, &p).unwrap();
            assert!(!alpha.coords()[3].is_zero());
            let back = phi_map(&pair, &alpha).unwrap();
            assert_eq!(back, p);
        }
    }

    #[test]
    fn phi_scale_invariance() {
        // phi is defined on classes: psi output is primitive, and scaling
        // alpha leaves phi unchanged by construction (normalize first).
        let c = quartex1();
        let pair = build_associated_pair(&c).unwrap();
        let p = QuarticPoint::from_ints(1, 2);
        let alpha = psi_map(&pair, &p).unwrap();
        let scaled: [Rational; 4] =
            std::array::from_fn(|i| Rational::from_integer(alpha.coords()[i].clone()) * rat(-7));
        let alpha2 = ProjVec4::normalize(&scaled).unwrap();
        assert_eq!(phi_map(&pair, &alpha2).unwrap(), p);
    }

    #[test]
    fn reduce_general_worked_example() {
        // y^2 = 2t^4 + 3t^3 + 7t^2 - 207t + 379 at (2, 7): monic curve
        // Y^2 = r^4 - (79/49) r^3 + (73/49) r^2 + (19/49) r + 2/49,
        // and (3, 8) maps to (1, 8/7).
        let c = QuarticCurve::from_ints([2, 3, 7, -207, 379]);
        let p1 = QuarticPoint::from_ints(2, 7);
        let red = reduce_general(&c, &p1).unwrap();
        assert_eq!(
            red.monic.a,
            [rat(1), ratio(-79, 49), ratio(73, 49), ratio(19, 49), ratio(2, 49)]
        );
        let q = red.forward(&QuarticPoint::from_ints(3, 8)).unwrap();
        assert_eq!(q, QuarticPoint::new(rat(1), ratio(8, 7)));
        // round trip
        assert_eq!(red.backward(&q).unwrap(), QuarticPoint::from_ints(3, 8));
    }

    #[test]
    fn reduce_then_derive_reaches_known_points() {
        let c = QuarticCurve::from_ints([2, 3, 7, -207, 379]);
        let p1 = QuarticPoint::from_ints(2, 7);
        let red = reduce_general(&c, &p1).unwrap();
        let base = red.forward(&QuarticPoint::from_ints(3, 8)).unwrap();
        let mut ts = Vec::new();
        for seed in [base.clone(), base.flip()] {
            let np = derive_from_one(&red.monic, &seed).unwrap();
            let back = red.backward(&np).unwrap();
            ts.push(back.t);
        }
        ts.sort();
        let mut want = vec![ratio(122, 17), ratio(1754, 809)];
        want.sort();
        assert_eq!(ts, want);
    }

    #[test]
    fn search_points_fixtures() {
        let pts = search_points(&quartex1(), 3, 1);
        assert!(pts.contains(&QuarticPoint::from_ints(1, 2)));
        assert!(pts.contains(&QuarticPoint::from_ints(2, 3)));
        // eta^2 = xi^4 + xi^3 + xi^2 + xi + 1 contains (-1, 1)
        let ec = QuarticCurve::from_ints([1, 1, 1, 1, 1]);
        let pts = search_points(&ec, 2, 1);
        assert!(pts.contains(&QuarticPoint::from_ints(-1, 1)));
        let tp = QuarticCurve::from_ints([1, 0, 0, 0, 1]);
        let pts = search_points(&tp, 1, 1);
        assert!(pts.contains(&QuarticPoint::from_ints(0, 1)));
    }

    #[test]
    fn search_points_parallel_matches_serial() {
        let c = quartex1();
        assert_eq!(search_points(&c, 12, 1), search_points(&c, 12, 4));
    }

    #[test]
    fn grow_orbit_contains_both_known_lists() {
        let c = quartex1();
        let seeds = [QuarticPoint::from_ints(1, 2), QuarticPoint::from_ints(2, 3)];
        let pts = grow_orbit(&c, &seeds, 1, 10_000).unwrap();
        let ts: Vec<Rational> = pts.iter().map(|p| p.t.clone()).collect();
        for want in [
            rat(18),
            ratio(-30, 11),
            ratio(58, 9),
            ratio(-22, 3),
            ratio(1001, 152),
            ratio(-729, 248),
            ratio(-121, 39),
            ratio(421, 57),
        ] {
            assert!(ts.contains(&want), "missing t = {want}");
        }
    }

    #[test]
    fn grow_orbit_trivial_cases() {
        let c = quartex1();
        assert!(grow_orbit(&c, &[], 3, 100).unwrap().is_empty());
        // seeds with y = 0 only and equal t: nothing derivable
        let c2 = QuarticCurve::monic(rat(-1), rat(0), rat(-2), rat(2));
        let z = QuarticPoint::from_ints(1, 0);
        let out = grow_orbit(&c2, &[z.clone()], 2, 100).unwrap();
        assert_eq!(out, vec![z]);
    }
}

//! Complete bilinear-form solutions of quaternary quadratic equations:
//! construction from a seed, verification, and the square-determinant
//! characterization (a solvable form has a bilinear solution exactly when
//! its Gram determinant is a nonzero perfect square).

use crate::poly::{MPoly, Var};
use crate::quadform::{mat_inverse, mat_vec, QuadForm4};
use crate::rational::{format_rational, sqrt_exact};
use crate::ternary::{embed_to_quaternary, solve_legendre, TernarySolution};
use crate::{Error, Int, ProjVec4, Rational, Result};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// How a bilinear solution was seeded; retained for reporting.
#[derive(Clone, Debug)]
pub enum SeedSource {
    /// Diagonal coefficients with a quaternary seed point.
    Quaternary {
        a: [Rational; 4],
        alpha: ProjVec4,
        k: Rational,
    },
    /// Diagonal coefficients with a ternary seed point.
    Ternary {
        a: [Rational; 4],
        beta: [Int; 3],
        k: Rational,
    },
    /// General form diagonalized through an invertible transformation.
    General { seed: ProjVec4 },
}

/// Four bilinear forms in `(p, q)` x `(r, s)` that parametrize the full
/// solution set of the owning quadratic form. Substituting them into the
/// form yields the identically zero polynomial; the constructors verify
/// this and normalize the forms to integer coefficients with content 1.
#[derive(Clone, Debug)]
pub struct BilinearSolution {
    pub forms: [MPoly; 4],
    pub source: SeedSource,
}

impl BilinearSolution {
    /// Checks the defining identity against a form.
    pub fn verifies_for(&self, q: &QuadForm4) -> bool {
        q.substitute(&self.forms).is_zero()
    }

    /// Checks the shape constraint: each form is bilinear, i.e. has no
    /// `p^2`, `q^2`, `r^2`, `s^2`, `pq`, or `rs` monomials.
    pub fn is_bilinear_shape(&self) -> bool {
        self.forms.iter().all(|f| {
            f.degree_in(Var::P) <= 1
                && f.degree_in(Var::Q) <= 1
                && f.degree_in(Var::R) <= 1
                && f.degree_in(Var::S) <= 1
                && f.coeffs_in(Var::P)
                    .get(&1)
                    .is_none_or(|c| c.degree_in(Var::Q) == 0)
                && f.coeffs_in(Var::R)
                    .get(&1)
                    .is_none_or(|c| c.degree_in(Var::S) == 0)
        })
    }

    /// Evaluates the four forms at integer parameters.
    pub fn eval(&self, p: i64, q: i64, r: i64, s: i64) -> [Rational; 4] {
        let pt = [
            (Var::P, Rational::from_integer(Int::from(p))),
            (Var::Q, Rational::from_integer(Int::from(q))),
            (Var::R, Rational::from_integer(Int::from(r))),
            (Var::S, Rational::from_integer(Int::from(s))),
        ];
        std::array::from_fn(|i| self.forms[i].eval(&pt))
    }

    /// Fixes `(p, q)` to integers, producing a linear family in `(m, n)`
    /// (the `(r, s)` parameters renamed).
    pub fn specialize_pq(&self, p: i64, q: i64) -> LinearFamily {
        let bound = [
            (Var::P, MPoly::from_int(p)),
            (Var::Q, MPoly::from_int(q)),
        ];
        let forms: [MPoly; 4] = std::array::from_fn(|i| {
            self.forms[i]
                .substitute(&bound)
                .rename(Var::R, Var::M)
                .rename(Var::S, Var::N)
        });
        LinearFamily { forms }
    }

    pub fn display_forms(&self) -> [String; 4] {
        std::array::from_fn(|i| self.forms[i].to_string())
    }
}

/// Four linear homogeneous forms in `(m, n)` solving the owning form(s)
/// identically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearFamily {
    pub forms: [MPoly; 4],
}

impl LinearFamily {
    pub fn new(forms: [MPoly; 4]) -> Result<Self> {
        for f in &forms {
            let ok = f.vars().iter().all(|v| matches!(v, Var::M | Var::N)) && f.degree() <= 1
                && f.coeff(&[]).is_zero();
            if !ok && !f.is_zero() {
                return Err(Error::InvalidLinearFamily);
            }
        }
        Ok(LinearFamily { forms })
    }

    pub fn from_ints(coeffs: [[i64; 2]; 4]) -> Self {
        let m = MPoly::var(Var::M);
        let n = MPoly::var(Var::N);
        let forms = coeffs.map(|[cm, cn]| {
            &(&m * &MPoly::from_int(cm)) + &(&n * &MPoly::from_int(cn))
        });
        LinearFamily { forms }
    }

    /// The 4x2 coefficient matrix `(m-coefficient, n-coefficient)` per row.
    pub fn coefficient_matrix(&self) -> [[Rational; 2]; 4] {
        std::array::from_fn(|i| {
            [
                self.forms[i].coeff(&[(Var::M, 1)]),
                self.forms[i].coeff(&[(Var::N, 1)]),
            ]
        })
    }

    /// Rank of the coefficient matrix (0, 1, or 2).
    pub fn rank(&self) -> usize {
        let m = self.coefficient_matrix();
        let mut rank = 0;
        // any nonzero entry gives rank >= 1; any nonzero 2x2 minor rank 2
        if m.iter().flatten().any(|c| !c.is_zero()) {
            rank = 1;
        }
        for i in 0..4 {
            for j in i + 1..4 {
                let det = &m[i][0] * &m[j][1] - &m[i][1] * &m[j][0];
                if !det.is_zero() {
                    return 2;
                }
            }
        }
        rank
    }

    pub fn eval(&self, m: i64, n: i64) -> [Rational; 4] {
        let pt = [
            (Var::M, Rational::from_integer(Int::from(m))),
            (Var::N, Rational::from_integer(Int::from(n))),
        ];
        std::array::from_fn(|i| self.forms[i].eval(&pt))
    }
}

/// Scales four forms by a single rational so all coefficients become
/// integers with overall content 1 and canonical sign. One common factor
/// keeps the family a parametrization of the same solution set.
pub fn normalize_forms4(forms: [MPoly; 4]) -> [MPoly; 4] {
    // join with fresh variables so one content computation covers all four
    let mut num_gcd = Int::zero();
    let mut den_lcm = Int::one();
    let mut first_sign: Option<bool> = None;
    for f in &forms {
        let c = f.content();
        if f.is_zero() {
            continue;
        }
        num_gcd = num_gcd.gcd(c.numer());
        den_lcm = den_lcm.lcm(c.denom());
        if first_sign.is_none() {
            first_sign = Some(c.is_negative());
        }
    }
    if num_gcd.is_zero() {
        return forms;
    }
    let mut scale = Rational::new(den_lcm, num_gcd);
    if first_sign == Some(true) {
        scale = -scale;
    }
    let s = MPoly::constant(scale);
    std::array::from_fn(|i| &forms[i] * &s)
}

/// Complete bilinear solution of `a1 x1^2 + ... + a4 x4^2 = 0` built from a
/// nontrivial zero `alpha` with `a3 alpha3^2 + a4 alpha4^2 != 0` and
/// `a1 a2 a3 a4 = k^2`.
pub fn bilinear_from_quaternary_seed(
    a: &[Rational; 4],
    alpha: &ProjVec4,
    k: &Rational,
) -> Result<BilinearSolution> {
    validate_diagonal_inputs(a, k)?;
    let av = alpha.to_rationals();
    if !QuadForm4::diagonal(a.clone()).eval(&av).is_zero() {
        return Err(Error::SeedNotOnForm);
    }
    let tail = &a[2] * &av[2] * &av[2] + &a[3] * &av[3] * &av[3];
    if tail.is_zero() {
        return Err(Error::DegenerateSeed);
    }
    let u = &a[0] * &a[2] * &av[0] * &av[2] + k * &av[1] * &av[3];
    let v = &a[1] * &a[2] * &av[1] * &av[2] - k * &av[0] * &av[3];
    let (a1, a2, a4) = (&a[0], &a[1], &a[3]);
    let a124 = a1 * a2 * a4;
    let a224 = a2 * a2 * a4;
    let a114 = a1 * a1 * a4;
    let pr = &MPoly::var(Var::P) * &MPoly::var(Var::R);
    let ps = &MPoly::var(Var::P) * &MPoly::var(Var::S);
    let qr = &MPoly::var(Var::Q) * &MPoly::var(Var::R);
    let qs = &MPoly::var(Var::Q) * &MPoly::var(Var::S);
    let term = |c: Rational, mono: &MPoly| &MPoly::constant(c) * mono;

    let x1 = term(&u * &a124, &pr)
        + term(-(&v * &a124), &ps)
        + term(-(&v * &a124), &qr)
        + term(-(&u * &a224), &qs);
    let x2 = term(&v * &a114, &pr)
        + term(&u * &a124, &ps)
        + term(&u * &a124, &qr)
        + term(-(&v * &a124), &qs);
    let w = -(&a124 * &tail);
    let x3 = term(&w * a1, &pr) + term(&w * a2, &qs);
    let kk = -(a1 * a2 * k * &tail);
    let x4 = term(kk.clone(), &ps) + term(-kk, &qr);

    finish_solution(
        [x1, x2, x3, x4],
        QuadForm4::diagonal(a.clone()),
        SeedSource::Quaternary {
            a: a.clone(),
            alpha: alpha.clone(),
            k: k.clone(),
        },
    )
}

/// Complete bilinear solution from a ternary seed `beta` with `beta3 != 0`.
pub fn bilinear_from_ternary_seed(
    a: &[Rational; 4],
    beta: &TernarySolution,
    k: &Rational,
) -> Result<BilinearSolution> {
    validate_diagonal_inputs(a, k)?;
    if beta.beta[2].is_zero() {
        return Err(Error::ZeroBeta3);
    }
    if beta.coeffs != [a[0].clone(), a[1].clone(), a[2].clone()] || !beta.verifies() {
        return Err(Error::SeedNotOnForm);
    }
    let b: [Rational; 3] = std::array::from_fn(|i| Rational::from_integer(beta.beta[i].clone()));
    let (a1, a2, a4) = (&a[0], &a[1], &a[3]);
    let p = MPoly::var(Var::P);
    let q = MPoly::var(Var::Q);
    let r = MPoly::var(Var::R);
    let s = MPoly::var(Var::S);
    let lin = |c1: Rational, v1: &MPoly, c2: Rational, v2: &MPoly| {
        &(&MPoly::constant(c1) * v1) + &(&MPoly::constant(c2) * v2)
    };
    // x1 = a4 (a1 b1 p + a2 b2 q) r - a2 a4 (-b2 p + b1 q) s
    let f = lin(a1 * &b[0], &p, a2 * &b[1], &q);
    let g = lin(-&b[1], &p, b[0].clone(), &q);
    let x1 = &(&(&MPoly::constant(a4.clone()) * &f) * &r)
        - &(&(&MPoly::constant(a2 * a4) * &g) * &s);
    let x2 = &(&(&MPoly::constant(a1 * a4) * &g) * &r)
        + &(&(&MPoly::constant(a4.clone()) * &f) * &s);
    // x3 = -a4 b3 (a1 p r + a2 q s)
    let c3 = -(a4 * &b[2]);
    let x3 = &(&(&MPoly::constant(&c3 * a1) * &p) * &r)
        + &(&(&MPoly::constant(&c3 * a2) * &q) * &s);
    // x4 = k b3 (q r - p s)
    let c4 = k * &b[2];
    let x4 = &(&(&MPoly::constant(c4.clone()) * &q) * &r)
        - &(&(&MPoly::constant(c4) * &p) * &s);

    finish_solution(
        [x1, x2, x3, x4],
        QuadForm4::diagonal(a.clone()),
        SeedSource::Ternary {
            a: a.clone(),
            beta: beta.beta.clone(),
            k: k.clone(),
        },
    )
}

fn validate_diagonal_inputs(a: &[Rational; 4], k: &Rational) -> Result<()> {
    if a.iter().any(Zero::is_zero) {
        return Err(Error::InvalidInput("diagonal coefficients must be nonzero".into()));
    }
    let prod = a.iter().fold(Rational::one(), |acc, c| acc * c);
    if prod != k * k || k.is_zero() {
        return Err(Error::InvalidInput("a1 a2 a3 a4 must equal k^2 != 0".into()));
    }
    Ok(())
}

fn finish_solution(
    forms: [MPoly; 4],
    q: QuadForm4,
    source: SeedSource,
) -> Result<BilinearSolution> {
    let forms = normalize_forms4(reduce_parameter_scales(forms));
    let sol = BilinearSolution { forms, source };
    if !sol.verifies_for(&q) {
        return Err(Error::InvalidInput(
            "constructed forms do not satisfy the form identically".into(),
        ));
    }
    debug_assert!(sol.is_bilinear_shape());
    Ok(sol)
}

/// Rescales each parameter independently (`p -> p/c` and so on), a valid
/// change of parametrization that clears common factors locked inside one
/// parameter's coefficient columns.
fn reduce_parameter_scales(mut forms: [MPoly; 4]) -> [MPoly; 4] {
    for _ in 0..2 {
        for v in [Var::P, Var::Q, Var::R, Var::S] {
            let mut num_gcd = Int::zero();
            let mut den_lcm = Int::one();
            let mut seen = false;
            for f in &forms {
                for (e, coeff_poly) in f.coeffs_in(v) {
                    if e == 0 {
                        continue;
                    }
                    let c = coeff_poly.content();
                    seen = true;
                    num_gcd = num_gcd.gcd(c.numer());
                    den_lcm = den_lcm.lcm(c.denom());
                }
            }
            if !seen || num_gcd.is_zero() {
                continue;
            }
            let scale = Rational::new(num_gcd, den_lcm);
            if scale == Rational::one() {
                continue;
            }
            let sub = [(v, MPoly::linear(scale.recip(), v))];
            forms = std::array::from_fn(|i| forms[i].substitute(&sub));
        }
    }
    forms
}

/// Finds a nontrivial rational zero of a form, or proves there is none.
///
/// Diagonalizes, then decides each three-coefficient subset by the Legendre
/// solver; a witness embeds with a zero in the remaining coordinate and maps
/// back through the transformation. For forms with square determinant the
/// four subsets decide isotropy exactly.
pub fn find_rational_zero(q: &QuadForm4) -> Result<ProjVec4> {
    let d = q.diagonalize();
    if d.rank < 4 {
        // a kernel vector of the Gram matrix is a zero of the form
        let j = d.diag.iter().position(Zero::is_zero).unwrap();
        let col: [Rational; 4] = std::array::from_fn(|i| d.p[i][j].clone());
        let v = ProjVec4::normalize(&col)?;
        debug_assert!(q.eval_proj(&v).is_zero());
        return Ok(v);
    }
    let mut certificates = Vec::new();
    for skip in (0..4).rev() {
        let idx: Vec<usize> = (0..4).filter(|&i| i != skip).collect();
        let (c0, c1, c2) = (
            d.diag[idx[0]].clone(),
            d.diag[idx[1]].clone(),
            d.diag[idx[2]].clone(),
        );
        match solve_legendre(&c0, &c1, &c2)? {
            Some(sol) => {
                let quad = embed_to_quaternary(&sol);
                let qc = quad.coords();
                let mut y: [Rational; 4] = std::array::from_fn(|_| Rational::zero());
                for (slot, &orig) in idx.iter().enumerate() {
                    y[orig] = Rational::from_integer(qc[slot].clone());
                }
                let x = mat_vec(&d.p, &y);
                let v = ProjVec4::normalize(&x)?;
                if !q.eval_proj(&v).is_zero() {
                    return Err(Error::InvalidInput(
                        "internal: transported seed fails verification".into(),
                    ));
                }
                return Ok(v);
            }
            None => certificates.push(format!(
                "({}, {}, {}) anisotropic",
                format_rational(&c0),
                format_rational(&c1),
                format_rational(&c2)
            )),
        }
    }
    Err(Error::NoRationalPoint(certificates.join("; ")))
}

/// Complete bilinear solution of a general form: diagonalize, transport
/// the seed, apply the diagonal-coordinates construction (permuting
/// coordinates when the seed is degenerate for the given arrangement), and
/// map the forms back.
///
/// Errors with [`Error::NonSquareDeterminant`] when `|A|` is zero or not a
/// perfect square: by the square-determinant criterion no bilinear solution
/// exists then.
pub fn bilinear_general(q: &QuadForm4, seed: &ProjVec4) -> Result<BilinearSolution> {
    let det = q.det();
    let sqrt_det = sqrt_exact(&det).filter(|_| !det.is_zero());
    if sqrt_det.is_none() {
        return Err(Error::NonSquareDeterminant(format_rational(&det)));
    }
    if !q.eval_proj(seed).is_zero() {
        return Err(Error::SeedNotOnForm);
    }
    let d = q.diagonalize();
    let pinv = mat_inverse(&d.p).expect("diagonalizing transformation is invertible");
    let y = mat_vec(&pinv, &seed.to_rationals());
    let yv = ProjVec4::normalize(&y)?;
    let yr = yv.to_rationals();

    // choose a coordinate arrangement with nonvanishing tail
    let perms: Vec<[usize; 4]> = candidate_perms();
    let mut chosen = None;
    for perm in perms {
        let a_p: [Rational; 4] = std::array::from_fn(|i| d.diag[perm[i]].clone());
        let y_p: [Rational; 4] = std::array::from_fn(|i| yr[perm[i]].clone());
        let tail = &a_p[2] * &y_p[2] * &y_p[2] + &a_p[3] * &y_p[3] * &y_p[3];
        if !tail.is_zero() {
            chosen = Some((perm, a_p, y_p));
            break;
        }
    }
    let (perm, a_p, y_p) =
        chosen.ok_or_else(|| Error::InvalidInput("no arrangement with nonzero tail".into()))?;
    let k = sqrt_exact(&a_p.iter().fold(Rational::one(), |acc, c| acc * c))
        .expect("product of diagonal entries is |P|^2 |A|, a square");
    let alpha = ProjVec4::normalize(&y_p)?;
    let inner = bilinear_from_quaternary_seed(&a_p, &alpha, &k)?;

    // un-permute the four forms, then map back through P
    let mut unperm: [MPoly; 4] = std::array::from_fn(|_| MPoly::zero());
    for (slot, &orig) in perm.iter().enumerate() {
        unperm[orig] = inner.forms[slot].clone();
    }
    let mapped: [MPoly; 4] = std::array::from_fn(|i| {
        let mut acc = MPoly::zero();
        for (j, form) in unperm.iter().enumerate() {
            if d.p[i][j].is_zero() {
                continue;
            }
            acc = &acc + &(&MPoly::constant(d.p[i][j].clone()) * form);
        }
        acc
    });
    finish_solution(mapped, q.clone(), SeedSource::General { seed: seed.clone() })
}

/// All permutations of `{0,1,2,3}`, identity first, in lexicographic order.
fn candidate_perms() -> Vec<[usize; 4]> {
    let mut perms = Vec::with_capacity(24);
    let mut idx = [0usize, 1, 2, 3];
    loop {
        perms.push(idx);
        // next permutation
        let mut i = 3;
        while i > 0 && idx[i - 1] >= idx[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let mut j = 3;
        while idx[j] <= idx[i - 1] {
            j -= 1;
        }
        idx.swap(i - 1, j);
        idx[i..].reverse();
    }
    perms
}

/// A genuine two-parameter linear solution forces the Gram determinant to
/// be a perfect square; returns its square root.
pub fn square_det_from_linear_family(q: &QuadForm4, fam: &LinearFamily) -> Result<Rational> {
    let sub: [MPoly; 4] = std::array::from_fn(|i| fam.forms[i].clone());
    if !q.substitute(&sub).is_zero() || fam.rank() < 2 {
        return Err(Error::InvalidLinearFamily);
    }
    sqrt_exact(&q.det()).ok_or_else(|| {
        Error::InvalidInput("determinant is not a perfect square despite a rank-2 family".into())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn sample_dense_form() -> QuadForm4 {
        QuadForm4::from_int_coeffs(&[
            ((1, 1), 270),
            ((1, 2), 76),
            ((1, 3), 152),
            ((2, 2), -16),
            ((2, 3), -48),
            ((3, 3), -35),
            ((4, 4), 3),
        ])
    }

    #[test]
    fn quaternary_seed_reproduces_known_solution() {
        // a = (1,-9,-1,4), alpha = (1,0,1,0), k = 6; after r -> m/18,
        // s -> n/18 a known solution is
        //   x1 = 2pm + 18qn, x2 = 2pn + 2qm, x3 = -2pm + 18qn,
        //   x4 = -3pn + 3qm.
        let a = [rat(1), rat(-9), rat(-1), rat(4)];
        let alpha = ProjVec4::from_ints([1, 0, 1, 0]).unwrap();
        let sol = bilinear_from_quaternary_seed(&a, &alpha, &rat(6)).unwrap();
        assert!(sol.verifies_for(&QuadForm4::diagonal(a.clone())));
        // raw construction output before normalization: x1 = 36pr + 324qs etc.;
        // with r -> m/18, s -> n/18 they match the known solution up to
        // the one common normalization factor.
        let raw = [
            MPoly::parse("36*p*r + 324*q*s").unwrap(),
            MPoly::parse("36*p*s + 36*q*r").unwrap(),
            MPoly::parse("-36*p*r + 324*q*s").unwrap(),
            MPoly::parse("-54*p*s + 54*q*r").unwrap(),
        ];
        let raw = normalize_forms4(raw);
        assert_eq!(sol.forms[0], raw[0]);
        assert_eq!(sol.forms[1], raw[1]);
        assert_eq!(sol.forms[2], raw[2]);
        assert_eq!(sol.forms[3], raw[3]);
    }

    #[test]
    fn ternary_seed_construction_verifies() {
        let a = [rat(1), rat(-9), rat(-1), rat(4)];
        let beta = TernarySolution::new(
            [rat(1), rat(-9), rat(-1)],
            [Int::from(1), Int::from(0), Int::from(1)],
        )
        .unwrap();
        let sol = bilinear_from_ternary_seed(&a, &beta, &rat(6)).unwrap();
        assert!(sol.verifies_for(&QuadForm4::diagonal(a)));
    }

    #[test]
    fn ternary_seed_rejects_zero_beta3() {
        let a = [rat(1), rat(-1), rat(2), rat(-2)];
        let beta = TernarySolution::new(
            [rat(1), rat(-1), rat(2)],
            [Int::from(1), Int::from(1), Int::from(0)],
        )
        .unwrap();
        assert_eq!(
            bilinear_from_ternary_seed(&a, &beta, &rat(2)).unwrap_err(),
            Error::ZeroBeta3
        );
    }

    #[test]
    fn second_diagonal_seed_example() {
        // a = (1,2,-6,-3), alpha = (1,1,0,1), k = 6; a known complete
        // solution is
        //   y1 = (2p+2q)m + (p-2q)n, y2 = (-p+2q)m + (p+q)n,
        //   y3 = pm + qn, y4 = -pn + 2qm.
        // Parametrizations may differ by an invertible parameter change;
        // equality of the generated solution sets is the contract.
        let a = [rat(1), rat(2), rat(-6), rat(-3)];
        let alpha = ProjVec4::from_ints([1, 1, 0, 1]).unwrap();
        let sol = bilinear_from_quaternary_seed(&a, &alpha, &rat(6)).unwrap();
        let q = QuadForm4::diagonal(a);
        assert!(sol.verifies_for(&q));
        let reference = [
            MPoly::parse("2*p*m + 2*q*m + p*n - 2*q*n").unwrap(),
            MPoly::parse("-p*m + 2*q*m + p*n + q*n").unwrap(),
            MPoly::parse("p*m + q*n").unwrap(),
            MPoly::parse("2*q*m - p*n").unwrap(),
        ];
        assert!(q.substitute(&reference).is_zero());
        let image = |forms: &[MPoly; 4], bound: i64, mv: Var, nv: Var| {
            let mut set = std::collections::BTreeSet::new();
            for p in -bound..=bound {
                for qq in -bound..=bound {
                    for m in -bound..=bound {
                        for n in -bound..=bound {
                            let pt = [
                                (Var::P, rat(p)),
                                (Var::Q, rat(qq)),
                                (mv, rat(m)),
                                (nv, rat(n)),
                            ];
                            let vals: [Rational; 4] =
                                std::array::from_fn(|i| forms[i].eval(&pt));
                            if vals.iter().all(Zero::is_zero) {
                                continue;
                            }
                            set.insert(ProjVec4::normalize(&vals).unwrap());
                        }
                    }
                }
            }
            set
        };
        let mine_small = image(&sol.forms, 3, Var::R, Var::S);
        let mine_large = image(&sol.forms, 9, Var::R, Var::S);
        let reference_small = image(&reference, 3, Var::M, Var::N);
        let reference_large = image(&reference, 9, Var::M, Var::N);
        assert!(reference_small.is_subset(&mine_large));
        assert!(mine_small.is_subset(&reference_large));
    }

    #[test]
    fn general_construction_on_dense_form() {
        let q = sample_dense_form();
        let seed = ProjVec4::from_ints([0, 2, -1, -1]).unwrap();
        let sol = bilinear_general(&q, &seed).unwrap();
        assert!(sol.verifies_for(&q));
        assert!(sol.is_bilinear_shape());
    }

    #[test]
    fn reference_dense_solution_verifies() {
        // x1 = 4pm - 2qn, x2 = (117p+4q)m + (2p-65q)n,
        // x3 = -(72p+2q)m - (p-40q)n, x4 = 2qm - pn
        let q = sample_dense_form();
        let forms = [
            MPoly::parse("4*p*m - 2*q*n").unwrap(),
            MPoly::parse("117*p*m + 4*q*m + 2*p*n - 65*q*n").unwrap(),
            MPoly::parse("-72*p*m - 2*q*m - p*n + 40*q*n").unwrap(),
            MPoly::parse("2*q*m - p*n").unwrap(),
        ];
        assert!(q.substitute(&forms).is_zero());
    }

    #[test]
    fn dickson_three_parameter_solution_verifies() {
        // the classical quadratic three-parameter solution of the dense form
        let q = sample_dense_form();
        let forms = [
            MPoly::parse("16*p*q + 26*p*r").unwrap(),
            MPoly::parse("540*p^2 + 152*p*q + 304*p*r - 16*q^2 - 70*q*r - 70*r^2").unwrap(),
            MPoly::parse("-270*p^2 - 76*p*q - 152*p*r + 16*q^2 + 64*q*r + 61*r^2").unwrap(),
            MPoly::parse("-270*p^2 - 76*p*q - 152*p*r + 16*q^2 + 48*q*r + 35*r^2").unwrap(),
        ];
        assert!(q.substitute(&forms).is_zero());
    }

    #[test]
    fn non_square_determinant_refused() {
        // det(diag(1, 2, -1, -16)) = 32, not a square
        let q = QuadForm4::diagonal_i64([1, 2, -1, -16]);
        assert_eq!(q.det(), rat(32));
        let seed = ProjVec4::from_ints([1, 0, 1, 0]).unwrap();
        assert!(q.eval_proj(&seed).is_zero());
        assert!(matches!(
            bilinear_general(&q, &seed).unwrap_err(),
            Error::NonSquareDeterminant(_)
        ));
    }

    #[test]
    fn square_det_from_family_fixture() {
        // family (2m, 2n, -2m, -3n) solves diag(1, -9, -1, 4); sqrt det = 6
        let q = QuadForm4::diagonal_i64([1, -9, -1, 4]);
        let fam = LinearFamily::from_ints([[2, 0], [0, 2], [-2, 0], [0, -3]]);
        assert_eq!(square_det_from_linear_family(&q, &fam).unwrap(), rat(6));
    }

    #[test]
    fn square_det_from_family_cross_form() {
        // x1 x2 - x3 x4 with family (m, n, m, n): sqrt(1/16) = 1/4
        let q = QuadForm4::from_int_coeffs(&[((1, 2), 1), ((3, 4), -1)]);
        let fam = LinearFamily::from_ints([[1, 0], [0, 1], [1, 0], [0, 1]]);
        assert_eq!(
            square_det_from_linear_family(&q, &fam).unwrap(),
            crate::rational::ratio(1, 4)
        );
    }

    #[test]
    fn square_det_rejects_rank_one_family() {
        let q = QuadForm4::diagonal_i64([1, -9, -1, 4]);
        let fam = LinearFamily::from_ints([[2, 0], [0, 0], [2, 0], [0, 0]]);
        assert_eq!(
            square_det_from_linear_family(&q, &fam).unwrap_err(),
            Error::InvalidLinearFamily
        );
    }

    #[test]
    fn find_zero_diag_auto_seed() {
        let q = QuadForm4::diagonal_i64([1, -9, -1, 4]);
        let v = find_rational_zero(&q).unwrap();
        assert!(q.eval_proj(&v).is_zero());
    }

    #[test]
    fn find_zero_reports_anisotropic() {
        let q = QuadForm4::diagonal_i64([1, 1, 1, 1]);
        assert!(matches!(
            find_rational_zero(&q).unwrap_err(),
            Error::NoRationalPoint(_)
        ));
    }
}

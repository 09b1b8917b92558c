//! Quaternary quadratic forms: Gram representation, exact evaluation and
//! determinant, rational diagonalization, and pencils of two forms.
//!
//! Convention, fixed project-wide: `Q(x) = x^T A x` with `A` exactly
//! symmetric, so an off-diagonal entry is half the mixed coefficient. Under
//! this convention the determinant of the form in the running example with
//! coefficient 270 on `x1^2` works out to exactly 36.

#![allow(clippy::needless_range_loop)]

use crate::poly::{det_mpoly, BinaryQuartic, MPoly, Var};
use crate::rational::sqrt_exact;
use crate::{Error, Int, Rational, Result};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Symmetric 4x4 matrix of rationals.
pub type Mat4 = [[Rational; 4]; 4];

fn zero_mat() -> Mat4 {
    std::array::from_fn(|_| std::array::from_fn(|_| Rational::zero()))
}

#[cfg(test)]
fn identity_mat() -> Mat4 {
    let mut m = zero_mat();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rational::one();
    }
    m
}

/// `a * b` for 4x4 rational matrices.
pub fn mat_mul(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut out = zero_mat();
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = Rational::zero();
            for (k, bk) in b.iter().enumerate() {
                acc += &a[i][k] * &bk[j];
            }
            out[i][j] = acc;
        }
    }
    out
}

/// Matrix-vector product.
pub fn mat_vec(a: &Mat4, v: &[Rational; 4]) -> [Rational; 4] {
    std::array::from_fn(|i| {
        let mut acc = Rational::zero();
        for j in 0..4 {
            acc += &a[i][j] * &v[j];
        }
        acc
    })
}

fn transpose(a: &Mat4) -> Mat4 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i].clone()))
}

/// Exact determinant of an n x n rational matrix by fraction-free Bareiss
/// elimination on a common-denominator integer model.
pub fn det_rational(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 0 {
        return Rational::one();
    }
    let mut den = Int::one();
    for row in m {
        for c in row {
            den = den.lcm(c.denom());
        }
    }
    let scale = Rational::from_integer(den.clone());
    let mut a: Vec<Vec<Int>> = m
        .iter()
        .map(|row| row.iter().map(|c| (c * &scale).to_integer()).collect())
        .collect();
    let mut sign = 1i32;
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Rational::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
            a[i][k] = Int::zero();
        }
        prev = a[k][k].clone();
    }
    let det_int = a[n - 1][n - 1].clone() * Int::from(sign);
    let mut den_pow = Rational::one();
    for _ in 0..n {
        den_pow *= &scale;
    }
    Rational::from_integer(det_int) / den_pow
}

/// Inverse of a 4x4 rational matrix; `None` when singular.
pub fn mat_inverse(a: &Mat4) -> Option<Mat4> {
    let mut work: Vec<Vec<Rational>> = (0..4)
        .map(|i| {
            let mut row: Vec<Rational> = a[i].to_vec();
            for j in 0..4 {
                row.push(if i == j { Rational::one() } else { Rational::zero() });
            }
            row
        })
        .collect();
    for col in 0..4 {
        let pivot = (col..4).find(|&r| !work[r][col].is_zero())?;
        work.swap(col, pivot);
        let p = work[col][col].clone();
        for entry in &mut work[col] {
            *entry /= &p;
        }
        for r in 0..4 {
            if r != col && !work[r][col].is_zero() {
                let f = work[r][col].clone();
                for j in 0..8 {
                    let sub = &work[col][j] * &f;
                    work[r][j] -= sub;
                }
            }
        }
    }
    let mut inv = zero_mat();
    for i in 0..4 {
        for j in 0..4 {
            inv[i][j] = work[i][j + 4].clone();
        }
    }
    Some(inv)
}

/// A quaternary quadratic form held as its symmetric Gram matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadForm4 {
    gram: Mat4,
}

impl QuadForm4 {
    /// Builds from a Gram matrix, validating exact symmetry.
    pub fn from_gram(gram: Mat4) -> Result<Self> {
        for i in 0..4 {
            for j in i + 1..4 {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvalidInput("Gram matrix is not symmetric".into()));
                }
            }
        }
        Ok(QuadForm4 { gram })
    }

    /// Builds from the ten monomial coefficients of
    /// `sum c_ij x_i x_j (i <= j)`; off-diagonal Gram entries are halved.
    pub fn from_coeffs(coeffs: &[((usize, usize), Rational)]) -> Result<Self> {
        let mut gram = zero_mat();
        let half = Rational::new(Int::one(), Int::from(2));
        for ((i, j), c) in coeffs {
            let (i, j) = (*i, *j);
            if i > j || j > 4 || i == 0 {
                return Err(Error::InvalidInput(format!(
                    "bad monomial x{i}*x{j} in form descriptor"
                )));
            }
            let (a, b) = (i - 1, j - 1);
            if a == b {
                gram[a][a] = &gram[a][a] + c;
            } else {
                let h = c * &half;
                gram[a][b] = &gram[a][b] + &h;
                gram[b][a] = &gram[b][a] + &h;
            }
        }
        Ok(QuadForm4 { gram })
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_int_coeffs(coeffs: &[((usize, usize), i64)]) -> Self {
        let v: Vec<((usize, usize), Rational)> = coeffs
            .iter()
            .map(|&((i, j), c)| ((i, j), Rational::from_integer(Int::from(c))))
            .collect();
        Self::from_coeffs(&v).expect("valid integer coefficient list")
    }

    /// Diagonal form `a1 x1^2 + ... + a4 x4^2`.
    pub fn diagonal(d: [Rational; 4]) -> Self {
        let mut gram = zero_mat();
        for (i, di) in d.into_iter().enumerate() {
            gram[i][i] = di;
        }
        QuadForm4 { gram }
    }

    pub fn diagonal_i64(d: [i64; 4]) -> Self {
        Self::diagonal(d.map(|c| Rational::from_integer(Int::from(c))))
    }

    pub fn gram(&self) -> &Mat4 {
        &self.gram
    }

    /// The diagonal when the Gram matrix is diagonal.
    pub fn as_diagonal(&self) -> Option<[Rational; 4]> {
        for i in 0..4 {
            for j in 0..4 {
                if i != j && !self.gram[i][j].is_zero() {
                    return None;
                }
            }
        }
        Some(std::array::from_fn(|i| self.gram[i][i].clone()))
    }

    /// Exact evaluation `Q(v) = v^T A v`.
    pub fn eval(&self, v: &[Rational; 4]) -> Rational {
        let av = mat_vec(&self.gram, v);
        let mut acc = Rational::zero();
        for i in 0..4 {
            acc += &v[i] * &av[i];
        }
        acc
    }

    pub fn eval_proj(&self, v: &crate::ProjVec4) -> Rational {
        self.eval(&v.to_rationals())
    }

    /// Polar bilinear form `u^T A v`.
    pub fn polar(&self, u: &[Rational; 4], v: &[Rational; 4]) -> Rational {
        let av = mat_vec(&self.gram, v);
        let mut acc = Rational::zero();
        for i in 0..4 {
            acc += &u[i] * &av[i];
        }
        acc
    }

    /// Exact Gram determinant.
    pub fn det(&self) -> Rational {
        let rows: Vec<Vec<Rational>> = self.gram.iter().map(|r| r.to_vec()).collect();
        det_rational(&rows)
    }

    /// The form as a polynomial in `x1..x4`.
    pub fn to_mpoly(&self) -> MPoly {
        let xs = Var::xs().map(MPoly::var);
        let mut acc = MPoly::zero();
        for i in 0..4 {
            for j in 0..4 {
                if self.gram[i][j].is_zero() {
                    continue;
                }
                let term = MPoly::constant(self.gram[i][j].clone()) * (&xs[i] * &xs[j]);
                acc = &acc + &term;
            }
        }
        acc
    }

    /// Substitutes four polynomials for `x1..x4`.
    pub fn substitute(&self, forms: &[MPoly; 4]) -> MPoly {
        self.to_mpoly().substitute(&[
            (Var::X1, forms[0].clone()),
            (Var::X2, forms[1].clone()),
            (Var::X3, forms[2].clone()),
            (Var::X4, forms[3].clone()),
        ])
    }

    /// Scales the form so the Gram matrix is primitive-integer with positive
    /// first nonzero entry. Solution sets are unchanged.
    pub fn primitive(&self) -> QuadForm4 {
        let mut num_gcd = Int::zero();
        let mut den_lcm = Int::one();
        for row in &self.gram {
            for c in row {
                num_gcd = num_gcd.gcd(c.numer());
                den_lcm = den_lcm.lcm(c.denom());
            }
        }
        if num_gcd.is_zero() {
            return self.clone();
        }
        let mut scale = Rational::new(den_lcm, num_gcd);
        let first = self
            .gram
            .iter()
            .flatten()
            .find(|c| !c.is_zero())
            .expect("nonzero form");
        if (first * &scale).is_negative() {
            scale = -scale;
        }
        let gram = std::array::from_fn(|i| std::array::from_fn(|j| &self.gram[i][j] * &scale));
        QuadForm4 { gram }
    }

    /// Rational congruence diagonalization: returns `D` with
    /// `P^T A P = diag(D)` exactly, `|P| != 0`. Zero diagonal entries flag
    /// rank deficiency.
    pub fn diagonalize(&self) -> DiagonalForm {
        let rows: Vec<Vec<Rational>> = self.gram.iter().map(|r| r.to_vec()).collect();
        let (d, p, rank) = diagonalize_sym(rows);
        let diag: [Rational; 4] = std::array::from_fn(|i| d[i].clone());
        let p: Mat4 = std::array::from_fn(|i| std::array::from_fn(|j| p[i][j].clone()));
        DiagonalForm { diag, p, rank }
    }
}

impl fmt::Debug for QuadForm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_mpoly())
    }
}

/// Congruence diagonalization of a symmetric rational matrix of any size:
/// returns `(diag, P, rank)` with `P^T A P = diag(diag)` exactly and `P`
/// invertible. Completion of squares with pivoting; when every remaining
/// diagonal entry vanishes but an off-diagonal entry survives, the
/// substitution `x_i = u + v, x_j = u - v` creates a pivot.
pub fn diagonalize_sym(mut a: Vec<Vec<Rational>>) -> (Vec<Rational>, Vec<Vec<Rational>>, usize) {
    let n = a.len();
    let mut p: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect();

    // column operation C_j += c * C_i applied congruently to A and plainly
    // to P
    fn col_op(a: &mut [Vec<Rational>], p: &mut [Vec<Rational>], j: usize, c: &Rational, i: usize) {
        let n = a.len();
        for r in 0..n {
            let add = &a[r][i] * c;
            a[r][j] += add;
        }
        for r in 0..n {
            let add = &a[i][r] * c;
            a[j][r] += add;
        }
        for r in 0..n {
            let add = &p[r][i] * c;
            p[r][j] += add;
        }
    }

    fn col_swap(a: &mut [Vec<Rational>], p: &mut [Vec<Rational>], i: usize, j: usize) {
        let n = a.len();
        for r in 0..n {
            a[r].swap(i, j);
        }
        a.swap(i, j);
        for r in 0..n {
            p[r].swap(i, j);
        }
    }

    for i in 0..n {
        if a[i][i].is_zero() {
            let row_live = (i + 1..n).any(|j| !a[i][j].is_zero());
            if !row_live {
                continue;
            }
            if let Some(j) = (i + 1..n).find(|&j| !a[j][j].is_zero()) {
                col_swap(&mut a, &mut p, i, j);
            } else {
                let j = (i + 1..n).find(|&j| !a[i][j].is_zero()).unwrap();
                col_op(&mut a, &mut p, i, &Rational::one(), j);
                debug_assert!(!a[i][i].is_zero());
            }
        }
        if a[i][i].is_zero() {
            continue;
        }
        for j in i + 1..n {
            if !a[i][j].is_zero() {
                let c = -(&a[i][j] / &a[i][i]);
                col_op(&mut a, &mut p, j, &c, i);
            }
        }
    }

    let diag: Vec<Rational> = (0..n).map(|i| a[i][i].clone()).collect();
    let rank = diag.iter().filter(|d| !d.is_zero()).count();
    (diag, p, rank)
}

/// Result of diagonalization: `P^T A P = diag`.
#[derive(Clone, Debug)]
pub struct DiagonalForm {
    pub diag: [Rational; 4],
    pub p: Mat4,
    pub rank: usize,
}

impl DiagonalForm {
    /// `|P|^2 |A| = a1 a2 a3 a4`, exact.
    pub fn verify_against(&self, q: &QuadForm4) -> bool {
        let pt = transpose(&self.p);
        let check = mat_mul(&pt, &mat_mul(q.gram(), &self.p));
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j {
                    self.diag[i].clone()
                } else {
                    Rational::zero()
                };
                if check[i][j] != want {
                    return false;
                }
            }
        }
        let rows: Vec<Vec<Rational>> = self.p.iter().map(|r| r.to_vec()).collect();
        let detp = det_rational(&rows);
        if detp.is_zero() {
            return false;
        }
        let prod = self
            .diag
            .iter()
            .fold(Rational::one(), |acc, d| acc * d);
        &detp * &detp * q.det() == prod
    }
}

/// A pencil `xi1 * Q1 + xi2 * Q2` together with its determinant, the binary
/// quartic `f(xi1, xi2) = |xi1 A1 + xi2 A2|`.
#[derive(Clone, Debug)]
pub struct PencilForm {
    pub q1: QuadForm4,
    pub q2: QuadForm4,
    pub f: BinaryQuartic,
}

impl PencilForm {
    pub fn new(q1: QuadForm4, q2: QuadForm4) -> Self {
        let xi1 = MPoly::var(Var::Xi1);
        let xi2 = MPoly::var(Var::Xi2);
        let entries: Vec<Vec<MPoly>> = (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| {
                        &(&MPoly::constant(q1.gram()[i][j].clone()) * &xi1)
                            + &(&MPoly::constant(q2.gram()[i][j].clone()) * &xi2)
                    })
                    .collect()
            })
            .collect();
        let det = det_mpoly(&entries);
        let f = if det.is_zero() {
            BinaryQuartic::new(std::array::from_fn(|_| Rational::zero()))
        } else {
            BinaryQuartic::from_mpoly(&det).expect("pencil determinant is a binary quartic")
        };
        debug_assert_eq!(f.eval(&Rational::one(), &Rational::zero()), q1.det());
        debug_assert_eq!(f.eval(&Rational::zero(), &Rational::one()), q2.det());
        PencilForm { q1, q2, f }
    }

    /// The member `xi1 Q1 + xi2 Q2` at a concrete point.
    pub fn member(&self, xi1: &Rational, xi2: &Rational) -> QuadForm4 {
        let gram = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                &self.q1.gram()[i][j] * xi1 + &self.q2.gram()[i][j] * xi2
            })
        });
        QuadForm4 { gram }
    }
}

/// `sqrt(det Q)` as demanded by the square-determinant criterion; `None`
/// when the determinant is negative or not a perfect square.
pub fn det_sqrt(q: &QuadForm4) -> Option<Rational> {
    sqrt_exact(&q.det())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    /// The running dense example: 270x1^2 + 76x1x2 + 152x1x3 - 16x2^2
    /// - 48x2x3 - 35x3^2 + 3x4^2.
    pub fn dense_form() -> QuadForm4 {
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
    fn dense_form_det_is_36() {
        assert_eq!(dense_form().det(), rat(36));
    }

    #[test]
    fn diag_det_is_product() {
        let q = QuadForm4::diagonal_i64([1, -9, -1, 4]);
        assert_eq!(q.det(), rat(36));
        let q2 = QuadForm4::diagonal_i64([1, 2, -6, -3]);
        assert_eq!(q2.det(), rat(36));
    }

    #[test]
    fn eval_known_zeros() {
        let q = QuadForm4::diagonal_i64([1, -9, -1, 4]);
        let v = [rat(1), rat(0), rat(1), rat(0)];
        assert_eq!(q.eval(&v), rat(0));
        let dense = dense_form();
        let w = [rat(0), rat(2), rat(-1), rat(-1)];
        assert_eq!(dense.eval(&w), rat(0));
        let z = [rat(0), rat(0), rat(0), rat(0)];
        assert_eq!(dense.eval(&z), rat(0));
    }

    #[test]
    fn known_transformation_reaches_reference_diagonal() {
        // x1 = y1-y2+y3, x2 = 31y1-29y2+26y3, x3 = -19y1+18y2-16y3, x4 = y4
        // carries the dense form to -(y1^2 + 2y2^2 - 6y3^2 - 3y4^2); the
        // overall sign is invisible at the equation level.
        let p: Mat4 = [
            [rat(1), rat(-1), rat(1), rat(0)],
            [rat(31), rat(-29), rat(26), rat(0)],
            [rat(-19), rat(18), rat(-16), rat(0)],
            [rat(0), rat(0), rat(0), rat(1)],
        ];
        let a = dense_form();
        let res = mat_mul(&transpose(&p), &mat_mul(a.gram(), &p));
        let want = QuadForm4::diagonal_i64([-1, -2, 6, 3]);
        assert_eq!(&res, want.gram());
    }

    #[test]
    fn diagonalize_dense_form() {
        let q = dense_form();
        let d = q.diagonalize();
        assert_eq!(d.rank, 4);
        assert!(d.verify_against(&q));
    }

    #[test]
    fn diagonalize_keeps_diagonal_input() {
        let q = QuadForm4::diagonal_i64([1, -9, -1, 4]);
        let d = q.diagonalize();
        assert_eq!(d.p, identity_mat());
        assert_eq!(d.diag.to_vec(), vec![rat(1), rat(-9), rat(-1), rat(4)]);
    }

    #[test]
    fn diagonalize_rank_deficient_cross_term() {
        // x1*x2 as a 4-variable form: rank 2, entries of opposite sign
        let q = QuadForm4::from_int_coeffs(&[((1, 2), 1)]);
        let d = q.diagonalize();
        assert_eq!(d.rank, 2);
        assert!(d.verify_against(&q));
        let nonzero: Vec<&Rational> = d.diag.iter().filter(|c| !c.is_zero()).collect();
        assert_eq!(nonzero.len(), 2);
        assert!(nonzero[0].is_positive() != nonzero[1].is_positive());
    }

    #[test]
    fn det_zero_iff_rank_deficient() {
        let q = QuadForm4::from_int_coeffs(&[((1, 2), 1)]);
        assert!(q.det().is_zero());
        assert!(q.diagonalize().rank < 4);
        let full = dense_form();
        assert!(!full.det().is_zero());
        assert_eq!(full.diagonalize().rank, 4);
    }

    #[test]
    fn pencil_fixture_bilinear_pair() {
        // x1^2 - 9x2^2 - x3^2 + 4x4^2 paired with
        // 3x1^2 - 30x1x2 - 4x1x3 - 9x2^2 - 12x2x3 - 7x3^2 + 12x3x4 + 4x4^2
        // has pencil determinant 36 (xi1^2 + 6 xi1 xi2 + 20 xi2^2)^2.
        let q1 = QuadForm4::diagonal_i64([1, -9, -1, 4]);
        let q2 = QuadForm4::from_int_coeffs(&[
            ((1, 1), 3),
            ((1, 2), -30),
            ((1, 3), -4),
            ((2, 2), -9),
            ((2, 3), -12),
            ((3, 3), -7),
            ((3, 4), 12),
            ((4, 4), 4),
        ]);
        let pencil = PencilForm::new(q1, q2);
        let (c, g) = pencil.f.as_scaled_square().unwrap();
        assert_eq!(c, rat(36));
        assert_eq!(g, [rat(1), rat(6), rat(20)]);
    }

    #[test]
    fn pencil_fixture_unsolvable_pair() {
        // x1^2 + 2x2^2 - x3^2 - x4^2 paired with
        // 7x1^2 + 4x1x2 + 14x2^2 - 6x3^2 + 2x3x4 - 8x4^2:
        // determinant 2 (xi1^2 + 14 xi1 xi2 + 47 xi2^2)^2 under the halved
        // Gram convention (the doubled-matrix value is 16x as large).
        let q1 = QuadForm4::diagonal_i64([1, 2, -1, -1]);
        let q2 = QuadForm4::from_int_coeffs(&[
            ((1, 1), 7),
            ((1, 2), 4),
            ((2, 2), 14),
            ((3, 3), -6),
            ((3, 4), 2),
            ((4, 4), -8),
        ]);
        let pencil = PencilForm::new(q1, q2);
        let (c, g) = pencil.f.as_scaled_square().unwrap();
        assert_eq!(c, rat(2));
        assert_eq!(g, [rat(1), rat(14), rat(47)]);
    }

    #[test]
    fn pencil_fixture_single_solution_pair() {
        // x1x2 - x3x4 paired with (x1-x2)^2 + (x1-x3)^2 + (x1-x4)^2:
        // determinant xi1^2 (xi1 + 2 xi2)(xi1 - 6 xi2) / 16.
        let q1 = QuadForm4::from_int_coeffs(&[((1, 2), 1), ((3, 4), -1)]);
        let q2 = QuadForm4::from_int_coeffs(&[
            ((1, 1), 3),
            ((1, 2), -2),
            ((1, 3), -2),
            ((1, 4), -2),
            ((2, 2), 1),
            ((3, 3), 1),
            ((4, 4), 1),
        ]);
        let pencil = PencilForm::new(q1.clone(), q2);
        let xi1 = MPoly::var(Var::Xi1);
        let xi2 = MPoly::var(Var::Xi2);
        let want = &(&(&xi1 * &xi1)
            * &(&(&xi1 + &(&xi2 * &MPoly::from_int(2)))
                * &(&xi1 - &(&xi2 * &MPoly::from_int(6)))))
            * &MPoly::constant(crate::rational::ratio(1, 16));
        assert_eq!(pencil.f.to_mpoly(), want);
        // the sole common zero of the pair
        assert_eq!(q1.eval(&[rat(1), rat(1), rat(1), rat(1)]), rat(0));
    }

    #[test]
    fn mat_inverse_roundtrip() {
        let p: Mat4 = [
            [rat(1), rat(-1), rat(1), rat(0)],
            [rat(31), rat(-29), rat(26), rat(0)],
            [rat(-19), rat(18), rat(-16), rat(0)],
            [rat(0), rat(0), rat(0), rat(1)],
        ];
        let inv = mat_inverse(&p).unwrap();
        assert_eq!(mat_mul(&p, &inv), identity_mat());
    }
}

//! Cross-module invariants: transformation identities, the pencil
//! criterion's contrapositive, and the algebraic limit relating the
//! two-point derivation to the one-point one.

use diophant::bilinear::{bilinear_general, square_det_from_linear_family};
use diophant::pair_solver::{
    brute_force_pair, necessary_condition, solve_via_square_pencil, SolutionStatus, VerdictTag,
};
use diophant::quadform::{mat_vec, PencilForm, QuadForm4};
use diophant::quartic::{derive_from_one, QuarticCurve, QuarticPoint};
use diophant::rational::{rat, ratio, sqrt_exact};
use diophant::{Int, ProjVec4, Rational};
use num_traits::{One, Zero};

struct Lcg(u64);

impl Lcg {
    fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        self.0 >> 11
    }
    fn int(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next_u64() % ((hi - lo + 1) as u64)) as i64
    }
    fn nonzero(&mut self, bound: i64) -> i64 {
        loop {
            let v = self.int(-bound, bound);
            if v != 0 {
                return v;
            }
        }
    }
}

#[test]
fn diagonalization_transports_evaluation() {
    // eval(Q, P y) equals the diagonal form at y, on 20 random points each
    // for a few fixture forms
    let forms = [
        QuadForm4::from_int_coeffs(&[
            ((1, 1), 270),
            ((1, 2), 76),
            ((1, 3), 152),
            ((2, 2), -16),
            ((2, 3), -48),
            ((3, 3), -35),
            ((4, 4), 3),
        ]),
        QuadForm4::diagonal_i64([1, -9, -1, 4]),
        QuadForm4::from_int_coeffs(&[((1, 2), 1), ((3, 4), -1)]),
        QuadForm4::from_int_coeffs(&[((1, 1), 2), ((1, 4), 3), ((2, 3), -5), ((4, 4), 7)]),
    ];
    let mut rng = Lcg(0xd1a6);
    for q in &forms {
        let d = q.diagonalize();
        assert!(d.verify_against(q));
        for _ in 0..20 {
            let y: [Rational; 4] = std::array::from_fn(|_| ratio(rng.int(-9, 9), rng.int(1, 4)));
            let x = mat_vec(&d.p, &y);
            let direct = q.eval(&x);
            let diag: Rational = (0..4).map(|i| &d.diag[i] * &y[i] * &y[i]).sum();
            assert_eq!(direct, diag);
        }
    }
}

#[test]
fn pencil_edges_match_determinants() {
    let mut rng = Lcg(0x9e3779b9);
    for _ in 0..10 {
        let mut coeffs1 = Vec::new();
        let mut coeffs2 = Vec::new();
        for i in 1..=4usize {
            for j in i..=4usize {
                coeffs1.push(((i, j), rng.int(-5, 5)));
                coeffs2.push(((i, j), rng.int(-5, 5)));
            }
        }
        let q1 = QuadForm4::from_int_coeffs(&coeffs1);
        let q2 = QuadForm4::from_int_coeffs(&coeffs2);
        let pencil = PencilForm::new(q1.clone(), q2.clone());
        assert_eq!(pencil.f.eval(&rat(1), &rat(0)), q1.det());
        assert_eq!(pencil.f.eval(&rat(0), &rat(1)), q2.det());
    }
}

#[test]
fn proved_empty_pairs_have_no_small_solutions() {
    // contrapositive of the pencil criterion, height 25
    let u1 = QuadForm4::diagonal_i64([1, 2, -1, -1]);
    let u2 = QuadForm4::from_int_coeffs(&[
        ((1, 1), 7),
        ((1, 2), 4),
        ((2, 2), 14),
        ((3, 3), -6),
        ((3, 4), 2),
        ((4, 4), -8),
    ]);
    assert_eq!(necessary_condition(&u1, &u2, 8).tag, VerdictTag::ProvedEmpty);
    assert!(brute_force_pair(&u1, &u2, 25).is_empty());

    let c1 = QuadForm4::from_int_coeffs(&[
        ((1, 1), 1),
        ((1, 2), -2),
        ((2, 2), -9),
        ((3, 3), 3),
        ((3, 4), -4),
        ((4, 4), 11),
    ]);
    let c2 = QuadForm4::from_int_coeffs(&[
        ((1, 1), 6),
        ((1, 2), -1),
        ((2, 2), 1),
        ((3, 3), -15),
        ((3, 4), -2),
        ((4, 4), -11),
    ]);
    let sol = solve_via_square_pencil(&c1, &c2, &(Int::from(4), Int::from(3))).unwrap();
    assert_eq!(sol.status, SolutionStatus::ProvedEmpty);
    assert!(brute_force_pair(&c1, &c2, 25).is_empty());
}

#[test]
fn bilinear_specialization_yields_valid_linear_family() {
    let q = QuadForm4::diagonal_i64([1, -9, -1, 4]);
    let seed = ProjVec4::from_ints([1, 0, 1, 0]).unwrap();
    let sol = bilinear_general(&q, &seed).unwrap();
    for (p, qq) in [(1i64, 0i64), (0, 1), (1, 1), (2, -3), (5, 7)] {
        let fam = sol.specialize_pq(p, qq);
        let root = square_det_from_linear_family(&q, &fam).unwrap();
        assert_eq!(&root * &root, q.det());
    }
}

/// Truncated power series in one variable over the rationals, exact
/// coefficients, order 4.
#[derive(Clone, Debug, PartialEq)]
struct Series([Rational; 4]);

impl Series {
    fn constant(c: Rational) -> Self {
        Series([c, Rational::zero(), Rational::zero(), Rational::zero()])
    }
    fn add(&self, o: &Series) -> Series {
        Series(std::array::from_fn(|i| &self.0[i] + &o.0[i]))
    }
    fn mul(&self, o: &Series) -> Series {
        let mut out: [Rational; 4] = std::array::from_fn(|_| Rational::zero());
        for i in 0..4 {
            for j in 0..4 - i {
                let add = &self.0[i] * &o.0[j];
                out[i + j] += add;
            }
        }
        Series(out)
    }
    fn scale(&self, c: &Rational) -> Series {
        Series(std::array::from_fn(|i| &self.0[i] * c))
    }
    /// sqrt(1 + z) for a series z with zero constant term.
    fn sqrt_one_plus(z: &Series) -> Series {
        assert!(z.0[0].is_zero());
        let one = Series::constant(Rational::one());
        let z2 = z.mul(z);
        let z3 = z2.mul(z);
        one.add(&z.scale(&ratio(1, 2)))
            .add(&z2.scale(&ratio(-1, 8)))
            .add(&z3.scale(&ratio(1, 16)))
    }
}

#[test]
fn two_point_derivation_limits_to_one_point() {
    // On the curve, expand the second point as an exact series
    // t2 = t1 + u, y2 = y1 sqrt(1 + (RHS(t1+u) - y1^2)/y1^2) and check that
    // the two-point t-formula, a 0/0 ratio at u = 0, has second-order ratio
    // exactly the one-point value. Twenty exact specializations.
    let mut rng = Lcg(0x11c8);
    let mut done = 0;
    while done < 20 {
        let a1 = rat(rng.int(-4, 4));
        let a2 = rat(rng.int(-4, 4));
        let a3 = rat(rng.int(-4, 4));
        let t1 = rat(rng.int(-4, 4));
        let y1 = rat(rng.nonzero(5));
        let a4 = &y1 * &y1 - (&t1 * &t1 * &t1 * &t1 + &a1 * &t1 * &t1 * &t1 + &a2 * &t1 * &t1 + &a3 * &t1);
        let curve = QuarticCurve::monic(a1.clone(), a2.clone(), a3.clone(), a4.clone());
        let p1 = QuarticPoint::new(t1.clone(), y1.clone());
        assert!(curve.contains(&p1));
        let Ok(expected) = derive_from_one(&curve, &p1) else {
            continue; // guard vanishes: no limit to compare
        };

        // Taylor coefficients of RHS(t1 + u) - y1^2
        let r1 = rat(4) * &t1 * &t1 * &t1 + rat(3) * &a1 * &t1 * &t1 + rat(2) * &a2 * &t1 + &a3;
        let r2 = rat(6) * &t1 * &t1 + rat(3) * &a1 * &t1 + &a2;
        let r3 = rat(4) * &t1 + &a1;
        let z = Series([
            Rational::zero(),
            &r1 / (&y1 * &y1),
            &r2 / (&y1 * &y1),
            &r3 / (&y1 * &y1),
        ]);
        let y2 = Series::sqrt_one_plus(&z).scale(&y1);
        let t2 = Series([t1.clone(), Rational::one(), Rational::zero(), Rational::zero()]);

        let c = |r: &Rational| Series::constant(r.clone());
        // numerator of the two-point t-formula
        let dt = c(&t1).add(&t2.scale(&rat(-1))); // t1 - t2
        let num = c(&rat(-2))
            .mul(&c(&y1))
            .mul(&y2)
            .add(&c(&rat(2)).mul(&dt).mul(&t2.mul(&c(&y1)).add(&c(&t1).mul(&y2).scale(&rat(-1)))))
            .add(&c(&(&a1 * &t1)).mul(&c(&t1).add(&t2)).mul(&t2).scale(&rat(1)))
            .add(&c(&(rat(2) * &a2 * &t1)).mul(&t2))
            .add(&c(&a3).mul(&c(&t1).add(&t2)))
            .add(&c(&(rat(2) * &a4)))
            .add(
                &c(&(rat(2) * &t1))
                    .mul(&t2)
                    .mul(&c(&(&t1 * &t1)).add(&c(&t1).mul(&t2).scale(&rat(-1))).add(&t2.mul(&t2))),
            );
        // denominator (t1 - t2)(2y1 - 2y2 + a1(t1 - t2) + 2t1^2 - 2t2^2)
        let den_inner = c(&(rat(2) * &y1))
            .add(&y2.scale(&rat(-2)))
            .add(&dt.scale(&a1))
            .add(&c(&(rat(2) * &t1 * &t1)))
            .add(&t2.mul(&t2).scale(&rat(-2)));
        let den = dt.mul(&den_inner);

        // both sides vanish to second order at the diagonal: the
        // denominator is (t1 - t2) times an expression that itself
        // vanishes there, and the numerator follows suit on the curve
        assert!(num.0[0].is_zero(), "numerator does not vanish at the diagonal");
        assert!(num.0[1].is_zero(), "numerator vanishes only to first order");
        assert!(den.0[0].is_zero() && den.0[1].is_zero());
        if den.0[2].is_zero() {
            continue; // higher-order degeneration, outside the limit statement
        }
        let limit = &num.0[2] / &den.0[2];
        assert_eq!(limit, expected.t, "limit of t12 disagrees with t11");
        done += 1;
    }
}

#[test]
fn square_determinant_soundness_positive_side() {
    // random diagonal forms with square product and a found zero: the
    // general construction must succeed and verify
    let mut rng = Lcg(0x7e57);
    let mut done = 0;
    while done < 15 {
        let b1 = rng.int(-5, 5);
        let b2 = rng.int(-5, 5);
        let b3 = rng.nonzero(5);
        let a1 = rng.nonzero(6);
        let a2 = rng.nonzero(6);
        let num = -(a1 * b1 * b1 + a2 * b2 * b2);
        if num == 0 {
            continue;
        }
        let a3 = ratio(num, b3 * b3);
        let w = rng.nonzero(3);
        let a4 = rat(a1) * rat(a2) * &a3 * rat(w * w);
        let a = [rat(a1), rat(a2), a3, a4];
        if a.iter().any(|c| c.is_zero()) {
            continue;
        }
        let q = QuadForm4::diagonal(a);
        if sqrt_exact(&q.det()).is_none() || q.det().is_zero() {
            continue;
        }
        let seed = ProjVec4::normalize(&[rat(b1), rat(b2), rat(b3), rat(0)]).unwrap();
        assert!(q.eval_proj(&seed).is_zero());
        let sol = bilinear_general(&q, &seed).unwrap();
        assert!(sol.verifies_for(&q));
        done += 1;
    }
}

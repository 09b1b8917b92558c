//! Sparse multivariate polynomials over the rationals.
//!
//! Variables come from a fixed alphabet (`x1..x4, p, q, r, s, m, n, xi1,
//! xi2, t`); terms are kept in graded-lexicographic order with nonzero
//! coefficients, so equality is structural and identity testing is a direct
//! emptiness check.

#![allow(clippy::needless_range_loop)]

mod unipoly;

pub use unipoly::UniPoly;

use crate::rational::{format_rational, parse_rational, sqrt_exact};
use crate::{Error, Int, Rational, Result};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// The fixed variable alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X1,
    X2,
    X3,
    X4,
    P,
    Q,
    R,
    S,
    M,
    N,
    Xi1,
    Xi2,
    T,
}

pub const NUM_VARS: usize = 13;

pub const ALL_VARS: [Var; NUM_VARS] = [
    Var::X1,
    Var::X2,
    Var::X3,
    Var::X4,
    Var::P,
    Var::Q,
    Var::R,
    Var::S,
    Var::M,
    Var::N,
    Var::Xi1,
    Var::Xi2,
    Var::T,
];

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::X1 => "x1",
            Var::X2 => "x2",
            Var::X3 => "x3",
            Var::X4 => "x4",
            Var::P => "p",
            Var::Q => "q",
            Var::R => "r",
            Var::S => "s",
            Var::M => "m",
            Var::N => "n",
            Var::Xi1 => "xi1",
            Var::Xi2 => "xi2",
            Var::T => "t",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        ALL_VARS.iter().copied().find(|v| v.name() == s)
    }

    fn index(self) -> usize {
        self as usize
    }

    /// The four solution variables.
    pub fn xs() -> [Var; 4] {
        [Var::X1, Var::X2, Var::X3, Var::X4]
    }
}

/// Exponent vector over the full alphabet, ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mono([u8; NUM_VARS]);

impl Mono {
    fn one() -> Self {
        Mono([0; NUM_VARS])
    }

    fn var(v: Var) -> Self {
        let mut e = [0u8; NUM_VARS];
        e[v.index()] = 1;
        Mono(e)
    }

    fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    fn mul(&self, other: &Mono) -> Mono {
        let mut e = [0u8; NUM_VARS];
        for i in 0..NUM_VARS {
            e[i] = self.0[i]
                .checked_add(other.0[i])
                .expect("monomial exponent overflow");
        }
        Mono(e)
    }

    fn exponent(&self, v: Var) -> u8 {
        self.0[v.index()]
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in ALL_VARS {
            let e = self.exponent(v);
            if e > 0 {
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                if e == 1 {
                    write!(f, "{}", v.name())?;
                } else {
                    write!(f, "{}^{}", v.name(), e)?;
                }
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Sparse multivariate polynomial with rational coefficients in canonical
/// form: no zero terms, graded-lex term order.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MPoly {
    terms: BTreeMap<Mono, Rational>,
}

impl MPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::one(), c);
        }
        MPoly { terms }
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rational::from_integer(Int::from(c)))
    }

    pub fn var(v: Var) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Mono::var(v), Rational::one());
        MPoly { terms }
    }

    /// `c * v` convenience.
    pub fn linear(c: Rational, v: Var) -> Self {
        Self::constant(c) * Self::var(v)
    }

    /// Structural identity-zero test; no sampling.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Mono::degree).max().unwrap_or(0)
    }

    /// Degree in a single variable.
    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms
            .keys()
            .map(|m| m.exponent(v) as u32)
            .max()
            .unwrap_or(0)
    }

    /// The variables actually appearing.
    pub fn vars(&self) -> Vec<Var> {
        ALL_VARS
            .into_iter()
            .filter(|&v| self.terms.keys().any(|m| m.exponent(v) > 0))
            .collect()
    }

    fn insert_term(&mut self, m: Mono, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::constant(Rational::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Coefficient of the monomial with the given exponents on `vars` and
    /// zero on every other variable.
    pub fn coeff(&self, exps: &[(Var, u8)]) -> Rational {
        let mut m = Mono::one();
        for &(v, e) in exps {
            m.0[v.index()] = e;
        }
        self.terms.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Collects the polynomial as a map from the exponent of `v` to the
    /// coefficient polynomial in the remaining variables.
    pub fn coeffs_in(&self, v: Var) -> BTreeMap<u8, MPoly> {
        let mut out: BTreeMap<u8, MPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            let mut rest = m.clone();
            rest.0[v.index()] = 0;
            out.entry(e).or_default().insert_term(rest, c.clone());
        }
        out
    }

    /// Exact polynomial composition: every bound variable is replaced by its
    /// image; unbound variables are retained.
    pub fn substitute(&self, bindings: &[(Var, MPoly)]) -> MPoly {
        let mut result = MPoly::zero();
        // memoized powers per bound variable
        let mut powers: BTreeMap<Var, Vec<MPoly>> = BTreeMap::new();
        for (v, img) in bindings {
            powers.insert(*v, vec![MPoly::constant(Rational::one()), img.clone()]);
        }
        for (m, c) in &self.terms {
            let mut term = MPoly::constant(c.clone());
            let mut residual = Mono::one();
            for v in ALL_VARS {
                let e = m.exponent(v);
                if e == 0 {
                    continue;
                }
                if let Some(pows) = powers.get_mut(&v) {
                    while pows.len() <= e as usize {
                        let next = &pows[pows.len() - 1] * &pows[1];
                        pows.push(next);
                    }
                    term = &term * &pows[e as usize];
                } else {
                    residual.0[v.index()] = e;
                }
            }
            if residual.degree() > 0 {
                term = &term * &MPoly { terms: BTreeMap::from([(residual, Rational::one())]) };
            }
            result = &result + &term;
        }
        result
    }

    /// Exact evaluation at a rational point (variables absent from `point`
    /// are evaluated at zero).
    pub fn eval(&self, point: &[(Var, Rational)]) -> Rational {
        let mut acc = Rational::zero();
        'terms: for (m, c) in &self.terms {
            let mut prod = c.clone();
            for v in ALL_VARS {
                let e = m.exponent(v);
                if e == 0 {
                    continue;
                }
                match point.iter().find(|(w, _)| *w == v) {
                    Some((_, val)) => {
                        for _ in 0..e {
                            prod *= val;
                        }
                    }
                    None => continue 'terms,
                }
            }
            acc += prod;
        }
        acc
    }

    /// Renames a variable; the target must not already occur.
    pub fn rename(&self, from: Var, to: Var) -> MPoly {
        debug_assert_eq!(self.degree_in(to), 0);
        self.substitute(&[(from, MPoly::var(to))])
    }

    /// Greatest common divisor of all coefficient numerators divided by the
    /// lcm of denominators, signed so that dividing by it makes the leading
    /// coefficient positive. Zero polynomial returns 1.
    pub fn content(&self) -> Rational {
        if self.is_zero() {
            return Rational::one();
        }
        let mut num_gcd = Int::zero();
        let mut den_lcm = Int::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut content = Rational::new(num_gcd, den_lcm);
        // sign from the leading (graded-lex greatest) term
        if let Some((_, c)) = self.terms.iter().next_back() {
            if c.is_negative() {
                content = -content;
            }
        }
        content
    }

    /// Divides by the content, yielding integer coefficients with gcd 1 and
    /// positive leading coefficient.
    pub fn primitive_part(&self) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        self * &MPoly::constant(c.recip())
    }

    /// Exact division by another polynomial when the quotient is exact;
    /// `None` when not divisible. Division is monomial-led (works for the
    /// binary-form cleanups this crate needs).
    pub fn div_exact(&self, divisor: &MPoly) -> Option<MPoly> {
        if divisor.is_zero() {
            return None;
        }
        let mut rem = self.clone();
        let mut quot = MPoly::zero();
        let (dlead_m, dlead_c) = divisor.terms.iter().next_back()?;
        while !rem.is_zero() {
            let (rlead_m, rlead_c) = rem.terms.iter().next_back().unwrap();
            let mut qexp = [0u8; NUM_VARS];
            for i in 0..NUM_VARS {
                let (a, b) = (rlead_m.0[i], dlead_m.0[i]);
                if a < b {
                    return None;
                }
                qexp[i] = a - b;
            }
            let qmono = Mono(qexp);
            let qc = rlead_c / dlead_c;
            let mut qterm = MPoly::zero();
            qterm.insert_term(qmono, qc);
            rem = &rem - &(&qterm * divisor);
            quot = &quot + &qterm;
        }
        Some(quot)
    }

    /// Parses the textual form produced by [`fmt::Display`]: a sum of terms
    /// like `-3/2*p^2*m + q*n - 5`.
    pub fn parse(input: &str) -> Result<MPoly> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::InvalidInput("empty polynomial".into()));
        }
        let mut out = MPoly::zero();
        let mut term = String::new();
        let mut chars = s.chars().peekable();
        let flush = |term: &str, out: &mut MPoly| -> Result<()> {
            if term.is_empty() || term == "+" || term == "-" {
                return Err(Error::InvalidInput(format!("bad polynomial: {input:?}")));
            }
            out.insert_poly(Self::parse_term(term, input)?);
            Ok(())
        };
        while let Some(c) = chars.next() {
            if (c == '+' || c == '-') && !term.is_empty() && !term.ends_with('/') {
                flush(&term, &mut out)?;
                term.clear();
            }
            term.push(c);
            let _ = chars.peek();
        }
        flush(&term, &mut out)?;
        Ok(out)
    }

    fn insert_poly(&mut self, other: MPoly) {
        for (m, c) in other.terms {
            self.insert_term(m, c);
        }
    }

    fn parse_term(term: &str, whole: &str) -> Result<MPoly> {
        let bad = || Error::InvalidInput(format!("bad polynomial: {whole:?}"));
        let (sign, body) = match term.strip_prefix('-') {
            Some(rest) => (-1i64, rest),
            None => (1, term.strip_prefix('+').unwrap_or(term)),
        };
        let mut coeff = Rational::from_integer(Int::from(sign));
        let mut mono = Mono::one();
        for factor in body.split('*') {
            if factor.is_empty() {
                return Err(bad());
            }
            let (base, exp) = match factor.split_once('^') {
                Some((b, e)) => (b, e.parse::<u8>().map_err(|_| bad())?),
                None => (factor, 1),
            };
            if let Some(v) = Var::from_name(base) {
                mono.0[v.index()] = mono.0[v.index()].checked_add(exp).ok_or_else(bad)?;
            } else {
                let c = parse_rational(base)?;
                for _ in 0..exp {
                    coeff *= &c;
                }
            }
        }
        let mut p = MPoly::zero();
        p.insert_term(mono, coeff);
        Ok(p)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.degree() == 0 {
                write!(f, "{}", format_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{m:?}")?;
            } else {
                write!(f, "{}*{m:?}", format_rational(&mag))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.insert_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: MPoly) -> MPoly {
        (&self) * (&rhs)
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(self, rhs: MPoly) -> MPoly {
        (&self) + (&rhs)
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(self, rhs: MPoly) -> MPoly {
        (&self) - (&rhs)
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -(&self)
    }
}

/// Determinant of a square matrix of polynomials, by cofactor expansion.
/// Intended for the 3x3 and 4x4 matrices arising from quadratic-form pencils.
pub fn det_mpoly(m: &[Vec<MPoly>]) -> MPoly {
    let n = m.len();
    debug_assert!(m.iter().all(|row| row.len() == n));
    match n {
        0 => MPoly::constant(Rational::one()),
        1 => m[0][0].clone(),
        _ => {
            let mut det = MPoly::zero();
            for (j, entry) in m[0].iter().enumerate() {
                if entry.is_zero() {
                    continue;
                }
                let minor: Vec<Vec<MPoly>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(k, _)| k != j)
                            .map(|(_, e)| e.clone())
                            .collect()
                    })
                    .collect();
                let cof = entry * &det_mpoly(&minor);
                if j % 2 == 0 {
                    det = &det + &cof;
                } else {
                    det = &det - &cof;
                }
            }
            det
        }
    }
}

/// A binary quartic form `e0*xi1^4 + e1*xi1^3*xi2 + ... + e4*xi2^4`.
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryQuartic {
    pub e: [Rational; 5],
}

impl BinaryQuartic {
    pub fn new(e: [Rational; 5]) -> Self {
        BinaryQuartic { e }
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(Zero::is_zero)
    }

    /// Reads the five coefficients out of an `MPoly` homogeneous of degree 4
    /// in `xi1, xi2`.
    pub fn from_mpoly(p: &MPoly) -> Result<Self> {
        Self::from_mpoly_in(p, Var::Xi1, Var::Xi2)
    }

    /// Same, for a binary quartic in an arbitrary variable pair.
    pub fn from_mpoly_in(p: &MPoly, v1: Var, v2: Var) -> Result<Self> {
        let mut e: [Rational; 5] = std::array::from_fn(|_| Rational::zero());
        for (m, c) in &p.terms {
            let e1 = m.exponent(v1) as usize;
            let e2 = m.exponent(v2) as usize;
            if e1 + e2 != 4 || m.degree() != 4 {
                return Err(Error::InvalidInput(format!(
                    "polynomial is not a binary quartic in {}, {}",
                    v1.name(),
                    v2.name()
                )));
            }
            e[e2] = c.clone();
        }
        Ok(BinaryQuartic { e })
    }

    pub fn to_mpoly(&self) -> MPoly {
        let x = MPoly::var(Var::Xi1);
        let y = MPoly::var(Var::Xi2);
        let mut acc = MPoly::zero();
        for (i, c) in self.e.iter().enumerate() {
            let term = MPoly::constant(c.clone()) * x.pow(4 - i as u32) * y.pow(i as u32);
            acc = &acc + &term;
        }
        acc
    }

    pub fn eval(&self, xi1: &Rational, xi2: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (i, c) in self.e.iter().enumerate() {
            let mut t = c.clone();
            for _ in 0..(4 - i) {
                t *= xi1;
            }
            for _ in 0..i {
                t *= xi2;
            }
            acc += t;
        }
        acc
    }

    pub fn eval_int(&self, a: &Int, b: &Int) -> Rational {
        self.eval(
            &Rational::from_integer(a.clone()),
            &Rational::from_integer(b.clone()),
        )
    }

    /// Scales to integer coefficients with content 1, keeping track of the
    /// square part of the scaling so `eta^2 = f` solution sets correspond:
    /// returns `(g, s)` with `self = (s-square-class) ...` — concretely
    /// `self * lambda^2 = g` for a rational `lambda` times a squarefree-free
    /// constant; callers that only care about square values use
    /// [`BinaryQuartic::square_value_normal_form`].
    pub fn primitive_part(&self) -> BinaryQuartic {
        let p = self.to_mpoly().primitive_part();
        BinaryQuartic::from_mpoly(&p).expect("primitive part stays quartic")
    }

    /// Removes the largest square rational factor: returns `(g, s)` with
    /// `self = s^2 * g` and `g` primitive-integer up to a squarefree content.
    pub fn square_value_normal_form(&self) -> (BinaryQuartic, Rational) {
        if self.is_zero() {
            return (self.clone(), Rational::one());
        }
        let mut num_gcd = Int::zero();
        let mut den_lcm = Int::one();
        for c in &self.e {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        // integer model: self * den_lcm has integer coefficients; to keep the
        // square class, scale by den_lcm^2 then strip the square part of the
        // content.
        let scale = Rational::from_integer(den_lcm.clone());
        let int_coeffs: Vec<Int> = self
            .e
            .iter()
            .map(|c| (c * &scale * &scale).to_integer())
            .collect();
        let mut g = Int::zero();
        for c in &int_coeffs {
            g = g.gcd(c);
        }
        let (_, f) = crate::rational::squarefree_split(&g).unwrap_or((g.clone(), Int::one()));
        let fsq = Rational::from_integer(&f * &f);
        let e: [Rational; 5] =
            std::array::from_fn(|i| Rational::from_integer(int_coeffs[i].clone()) / &fsq);
        let s = &Rational::from_integer(f) / &scale;
        (BinaryQuartic { e }, s)
    }

    /// Detects the shape `f = c * g^2` with `g` a binary quadratic; returns
    /// `(c, g = (A, B, C))` for `g = A*xi1^2 + B*xi1*xi2 + C*xi2^2`.
    pub fn as_scaled_square(&self) -> Option<(Rational, [Rational; 3])> {
        if self.is_zero() {
            return None;
        }
        let [e0, e1, e2, e3, e4] = &self.e;
        if !e0.is_zero() {
            // normalize g with A = 1, c = e0
            let b = e1 / (e0 * Rational::from_integer(Int::from(2)));
            let c2 = (e2 / e0 - &b * &b) / Rational::from_integer(Int::from(2));
            let ok = *e3 == e0 * Rational::from_integer(Int::from(2)) * &b * &c2
                && *e4 == e0 * &c2 * &c2;
            ok.then(|| (e0.clone(), [Rational::one(), b, c2]))
        } else if e1.is_zero() {
            // f = e2*x^2 y^2 + e3*x y^3 + e4*y^4 = y^2 (e2 x^2 + e3 xy + e4 y^2):
            // a square shape requires f = c (B xy + C y^2)^2 = c B^2 x^2y^2 + ...
            if e2.is_zero() {
                if e3.is_zero() {
                    // f = e4 y^4
                    return Some((e4.clone(), [Rational::zero(), Rational::zero(), Rational::one()]));
                }
                return None;
            }
            let c = e2.clone();
            let b = Rational::one();
            let c2 = e3 / (&c * Rational::from_integer(Int::from(2)));
            let ok = *e4 == &c * &c2 * &c2;
            ok.then(|| (c, [Rational::zero(), b, c2]))
        } else {
            None
        }
    }

    /// Polynomial square root: `Some(g)` when `f = g^2` exactly.
    pub fn poly_sqrt(&self) -> Option<[Rational; 3]> {
        let (c, g) = self.as_scaled_square()?;
        let s = sqrt_exact(&c)?;
        Some([&g[0] * &s, &g[1] * &s, &g[2] * &s])
    }

    /// All rational projective roots with multiplicities, each a primitive
    /// integer pair with positive first nonzero entry.
    pub fn proj_rational_roots(&self) -> Result<Vec<((Int, Int), u32)>> {
        if self.is_zero() {
            return Err(Error::InvalidInput("zero form has no root set".into()));
        }
        let prim = self.primitive_part();
        let mut roots: Vec<((Int, Int), u32)> = Vec::new();
        // point at infinity (1:0) appears when e0 = 0; its multiplicity is
        // the number of leading zero coefficients.
        let lead_zeros = prim.e.iter().take_while(|c| c.is_zero()).count() as u32;
        if lead_zeros > 0 {
            roots.push(((Int::one(), Int::zero()), lead_zeros));
        }
        // dehomogenize at xi2 = 1: polynomial in z = xi1/xi2
        let coeffs: Vec<Rational> = prim.e.iter().rev().cloned().collect();
        let dehom = UniPoly::new(coeffs);
        for (root, mult) in dehom.rational_roots()? {
            let pair = (root.numer().clone(), root.denom().clone());
            let pair = if pair.0.is_negative() || (pair.0.is_zero() && pair.1.is_negative()) {
                (-pair.0, -pair.1)
            } else {
                pair
            };
            roots.push((pair, mult));
        }
        roots.sort();
        roots.dedup();
        Ok(roots)
    }
}

impl fmt::Debug for BinaryQuartic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_mpoly())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn x(v: Var) -> MPoly {
        MPoly::var(v)
    }

    #[test]
    fn substitute_simple() {
        // x1^2 - x2 with x1 -> m + n, x2 -> 2mn  gives m^2 + n^2
        let p = &(&x(Var::X1) * &x(Var::X1)) - &x(Var::X2);
        let res = p.substitute(&[
            (Var::X1, &x(Var::M) + &x(Var::N)),
            (Var::X2, &(&x(Var::M) * &x(Var::N)) * &MPoly::from_int(2)),
        ]);
        let want = &(&x(Var::M) * &x(Var::M)) + &(&x(Var::N) * &x(Var::N));
        assert_eq!(res, want);
    }

    #[test]
    fn substitute_complete_solution_of_x1x2_eq_x3x4() {
        // x1*x2 - x3*x4 at (pr, qs, ps, qr) vanishes identically
        let p = &(&x(Var::X1) * &x(Var::X2)) - &(&x(Var::X3) * &x(Var::X4));
        let res = p.substitute(&[
            (Var::X1, &x(Var::P) * &x(Var::R)),
            (Var::X2, &x(Var::Q) * &x(Var::S)),
            (Var::X3, &x(Var::P) * &x(Var::S)),
            (Var::X4, &x(Var::Q) * &x(Var::R)),
        ]);
        assert!(res.is_zero());
    }

    #[test]
    fn identity_zero_examples() {
        assert!(MPoly::zero().is_zero());
        // (m+n)^2 - m^2 - 2mn - n^2
        let mn = &x(Var::M) + &x(Var::N);
        let p = &(&mn * &mn)
            - &(&(&(&x(Var::M) * &x(Var::M)) + &(&(&x(Var::M) * &x(Var::N)) * &MPoly::from_int(2)))
                + &(&x(Var::N) * &x(Var::N)));
        assert!(p.is_zero());
        let q = &(&x(Var::M) * &x(Var::M)) - &(&x(Var::N) * &x(Var::N));
        assert!(!q.is_zero());
    }

    #[test]
    fn display_and_parse_roundtrip() {
        let p = &(&(&x(Var::P) * &x(Var::M)) * &MPoly::from_int(2))
            + &(&(&x(Var::Q) * &x(Var::N)) * &MPoly::from_int(18));
        let s = p.to_string();
        assert_eq!(s, "2*p*m + 18*q*n");
        assert_eq!(MPoly::parse(&s).unwrap(), p);
        let q = MPoly::parse("-3/2*p^2 + q - 5").unwrap();
        assert_eq!(q.coeff(&[(Var::P, 2)]), ratio(-3, 2));
        assert_eq!(q.coeff(&[]), rat(-5));
    }

    #[test]
    fn roots_of_factored_quartic() {
        // -(xi1+xi2)(2xi1+xi2)(3xi1+2xi2)^2
        let xi1 = x(Var::Xi1);
        let xi2 = x(Var::Xi2);
        let f1 = &xi1 + &xi2;
        let f2 = &(&xi1 * &MPoly::from_int(2)) + &xi2;
        let f3 = &(&xi1 * &MPoly::from_int(3)) + &(&xi2 * &MPoly::from_int(2));
        let prod = -&(&(&f1 * &f2) * &(&f3 * &f3));
        let f = BinaryQuartic::from_mpoly(&prod).unwrap();
        let roots = f.proj_rational_roots().unwrap();
        let want: Vec<((Int, Int), u32)> = vec![
            ((Int::from(1), Int::from(-2)), 1),
            ((Int::from(1), Int::from(-1)), 1),
            ((Int::from(2), Int::from(-3)), 2),
        ];
        assert_eq!(roots, want);
    }

    #[test]
    fn roots_of_anisotropic_square() {
        // 36(xi1^2+6xi1xi2+20xi2^2)^2 has no rational roots
        let xi1 = x(Var::Xi1);
        let xi2 = x(Var::Xi2);
        let g = &(&(&xi1 * &xi1) + &(&(&xi1 * &xi2) * &MPoly::from_int(6)))
            + &(&(&xi2 * &xi2) * &MPoly::from_int(20));
        let f = BinaryQuartic::from_mpoly(&(&(&g * &g) * &MPoly::from_int(36))).unwrap();
        assert!(f.proj_rational_roots().unwrap().is_empty());
        let (c, q) = f.as_scaled_square().unwrap();
        assert_eq!(c, rat(36));
        assert_eq!(q, [rat(1), rat(6), rat(20)]);
    }

    #[test]
    fn roots_with_infinity() {
        // xi1^3 * xi2 -> roots (1:0) and (0:1)
        let p = &x(Var::Xi1).pow(3) * &x(Var::Xi2);
        let f = BinaryQuartic::from_mpoly(&p).unwrap();
        let roots = f.proj_rational_roots().unwrap();
        assert_eq!(
            roots,
            vec![
                ((Int::from(0), Int::from(1)), 3),
                ((Int::from(1), Int::from(0)), 1),
            ]
        );
    }

    #[test]
    fn det_mpoly_2x2() {
        let m = vec![
            vec![x(Var::P), x(Var::Q)],
            vec![x(Var::R), x(Var::S)],
        ];
        let d = det_mpoly(&m);
        let want = &(&x(Var::P) * &x(Var::S)) - &(&x(Var::Q) * &x(Var::R));
        assert_eq!(d, want);
    }

    #[test]
    fn div_exact_binary_forms() {
        let m = x(Var::M);
        let n = x(Var::N);
        let a = &m + &n;
        let b = &m - &n;
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert!(b.div_exact(&a).is_none());
    }
}

//! Dense univariate polynomials over the rationals: rational-root
//! extraction, gcd, and Sturm-chain real-root counting. Internal support for
//! binary quartics and pencil analysis.

use crate::rational::{divisors, DEFAULT_TRIAL_BOUND};
use crate::{Int, Rational, Result};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Coefficients in ascending degree order: `c[0] + c[1] x + ...`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * Rational::from_integer(Int::from(i as i64 + 1)))
                .collect(),
        )
    }

    /// Euclidean division: `(quotient, remainder)`.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut rem = self.coeffs.clone();
        let dd = d.degree();
        let dl = d.leading();
        if rem.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1;
            let c = rem[k].clone();
            if c.is_zero() {
                rem.pop();
                continue;
            }
            let q = &c / &dl;
            quot[k - dd] = q.clone();
            for (i, dc) in d.coeffs.iter().enumerate() {
                let idx = k - dd + i;
                let v = &rem[idx] - &q * dc;
                rem[idx] = v;
            }
            rem.pop();
        }
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = std::mem::replace(&mut b, r);
        }
        if a.is_zero() {
            return a;
        }
        let l = a.leading();
        UniPoly::new(a.coeffs.iter().map(|c| c / &l).collect())
    }

    /// Squarefree part `self / gcd(self, self')`, monic.
    pub fn squarefree_part(&self) -> UniPoly {
        if self.is_zero() || self.degree() == 0 {
            return UniPoly::new(vec![Rational::one()]);
        }
        let g = self.gcd(&self.derivative());
        let (q, r) = self.div_rem(&g);
        debug_assert!(r.is_zero());
        let l = q.leading();
        UniPoly::new(q.coeffs.iter().map(|c| c / &l).collect())
    }

    /// Number of distinct real roots, by a Sturm chain over the whole line.
    pub fn count_real_roots(&self) -> usize {
        let sf = self.squarefree_part();
        if sf.degree() == 0 {
            return 0;
        }
        let mut chain = vec![sf.clone(), sf.derivative()];
        while !chain.last().unwrap().is_zero() {
            let n = chain.len();
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
            chain.push(UniPoly::new(r.coeffs.iter().map(|c| -c.clone()).collect()));
        }
        chain.pop();
        // sign variations at -inf and +inf from leading terms
        let signs_at = |neg: bool| -> usize {
            let mut variations = 0;
            let mut last: Option<bool> = None;
            for p in &chain {
                if p.is_zero() {
                    continue;
                }
                let mut s = p.leading().is_negative();
                if neg && p.degree() % 2 == 1 {
                    s = !s;
                }
                if let Some(prev) = last {
                    if prev != s {
                        variations += 1;
                    }
                }
                last = Some(s);
            }
            variations
        };
        signs_at(true).saturating_sub(signs_at(false))
    }

    /// All rational roots with multiplicities, by the rational root theorem
    /// on the primitive integer model.
    pub fn rational_roots(&self) -> Result<Vec<(Rational, u32)>> {
        if self.is_zero() || self.degree() == 0 {
            return Ok(vec![]);
        }
        // integer model
        let mut den = Int::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let ints: Vec<Int> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        let mut g = Int::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        let ints: Vec<Int> = ints.into_iter().map(|c| c / &g).collect();
        // strip trailing zero coefficients: roots at 0
        let zero_mult = ints.iter().take_while(|c| c.is_zero()).count() as u32;
        let core: Vec<Int> = ints[zero_mult as usize..].to_vec();
        let mut out: Vec<(Rational, u32)> = Vec::new();
        if zero_mult > 0 {
            out.push((Rational::zero(), zero_mult));
        }
        if core.len() > 1 {
            let lead = core.last().unwrap().abs();
            let constant = core.first().unwrap().abs();
            let nums = divisors(&constant, DEFAULT_TRIAL_BOUND)?;
            let dens = divisors(&lead, DEFAULT_TRIAL_BOUND)?;
            let poly = UniPoly::new(
                core.iter()
                    .map(|c| Rational::from_integer(c.clone()))
                    .collect(),
            );
            for u in &nums {
                for v in &dens {
                    if !u.gcd(v).is_one() {
                        continue;
                    }
                    for cand in [
                        Rational::new(u.clone(), v.clone()),
                        Rational::new(-u.clone(), v.clone()),
                    ] {
                        if poly.eval(&cand).is_zero() && !out.iter().any(|(r, _)| *r == cand) {
                            // multiplicity by repeated division
                            let lin = UniPoly::new(vec![-cand.clone(), Rational::one()]);
                            let mut mult = 0;
                            let mut cur = poly.clone();
                            loop {
                                let (q, r) = cur.div_rem(&lin);
                                if r.is_zero() {
                                    mult += 1;
                                    cur = q;
                                } else {
                                    break;
                                }
                            }
                            out.push((cand, mult));
                        }
                    }
                }
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(out)
    }
}

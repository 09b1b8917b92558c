//! Exact rational scalars: perfect-square certification, squarefree
//! splitting, and the `p/q` textual form used in all JSON payloads.

use crate::{Error, Int, Rational, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `n/d`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Floor integer square root of a nonnegative integer.
pub fn isqrt(n: &Int) -> Int {
    n.sqrt()
}

/// Exact integer square root: `Some(s)` with `s*s == n`, `s >= 0`.
pub fn sqrt_exact_int(n: &Int) -> Option<Int> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    if &s * &s == *n {
        Some(s)
    } else {
        None
    }
}

/// Exact rational square root.
///
/// Returns the nonnegative `s` with `s^2 = q` when `q` is the square of a
/// rational, and `None` otherwise (in particular for negative input). Decided
/// by integer square roots of the reduced numerator and denominator.
pub fn sqrt_exact(q: &Rational) -> Option<Rational> {
    let num = sqrt_exact_int(q.numer())?;
    let den = sqrt_exact_int(q.denom())?;
    Some(Rational::new(num, den))
}

/// True when `q` is the square of a rational.
pub fn is_square(q: &Rational) -> bool {
    sqrt_exact(q).is_some()
}

/// Splits a nonzero integer as `n = s * f^2` with `s` squarefree carrying the
/// sign of `n` and `f >= 1`.
///
/// Factoring is by trial division up to `bound`; if an unfactored cofactor
/// larger than `bound^2` remains, [`Error::FactorizationBound`] is returned
/// and the caller decides whether to fall back (seed searches may proceed
/// with the unsplit value; verification never depends on the split).
pub fn squarefree_split(n: &Int) -> Result<(Int, Int)> {
    squarefree_split_bounded(n, DEFAULT_TRIAL_BOUND)
}

/// Default trial-division bound; covers every coefficient size this crate
/// meets in practice while keeping worst-case splits under a second.
pub const DEFAULT_TRIAL_BOUND: u64 = 2_000_000;

/// [`squarefree_split`] with an explicit trial-division bound.
pub fn squarefree_split_bounded(n: &Int, bound: u64) -> Result<(Int, Int)> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    let factors = factor_bounded(&n.abs(), bound)?;
    let mut s = if n.is_negative() {
        -Int::one()
    } else {
        Int::one()
    };
    let mut f = Int::one();
    for (p, e) in factors {
        if e % 2 == 1 {
            s *= &p;
        }
        f *= p.pow(e / 2);
    }
    Ok((s, f))
}

/// Factor a positive integer by trial division up to `bound`.
///
/// The returned list is `(prime, exponent)` in increasing prime order. If a
/// cofactor larger than `bound^2` survives (so it cannot be certified prime),
/// the factorization is abandoned with [`Error::FactorizationBound`].
pub fn factor_bounded(n: &Int, bound: u64) -> Result<Vec<(Int, u32)>> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut m = n.abs();
    let mut out: Vec<(Int, u32)> = Vec::new();
    let mut push = |p: Int, e: u32| {
        if e > 0 {
            out.push((p, e));
        }
    };
    let mut e2 = 0u32;
    while m.is_even() {
        m /= 2;
        e2 += 1;
    }
    push(Int::from(2), e2);
    let mut d = Int::from(3);
    let bound_sq = Int::from(bound) * Int::from(bound);
    while &d * &d <= m {
        if d > Int::from(bound) {
            // m has no factor below `bound`; if m itself exceeds bound^2 we
            // cannot certify it prime.
            if m > bound_sq {
                return Err(Error::FactorizationBound(n.to_string()));
            }
            break;
        }
        let mut e = 0u32;
        while (&m % &d).is_zero() {
            m /= &d;
            e += 1;
        }
        push(d.clone(), e);
        d += 2;
    }
    if m > Int::one() {
        push(m, 1);
    }
    Ok(out)
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: &Int, bound: u64) -> Result<Vec<Int>> {
    let factors = factor_bounded(&n.abs(), bound)?;
    let mut divs = vec![Int::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        let mut pk = Int::one();
        for _ in 0..=e {
            for d in &divs {
                next.push(d * &pk);
            }
            pk *= &p;
        }
        divs = next;
    }
    divs.sort();
    divs.dedup();
    Ok(divs)
}

/// Parses the JSON-facing rational syntax: an optional sign, an integer, or
/// `p/q`. Non-reduced input is accepted and reduced.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: Int = num
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad rational: {s:?}")))?;
    let d: Int = den
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad rational: {s:?}")))?;
    if d.is_zero() {
        return Err(Error::InvalidInput(format!("zero denominator: {s:?}")));
    }
    Ok(Rational::new(n, d))
}

/// Formats a rational in the `p/q` wire syntax (`"6"`, `"-30/11"`).
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

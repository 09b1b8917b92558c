//! Modular arithmetic helpers: Legendre symbols, square roots modulo
//! squarefree integers, and two-squares representations.

use crate::rational::factor_bounded;
use crate::{Error, Int, Result};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Nonnegative remainder of `a` modulo `m > 0`.
pub fn modp(a: &Int, m: &Int) -> Int {
    a.mod_floor(m)
}

/// Modular exponentiation `b^e mod m`.
pub fn pow_mod(b: &Int, e: &Int, m: &Int) -> Int {
    b.modpow(e, m)
}

/// Legendre symbol `(a|p)` for odd prime `p`: 1, -1, or 0.
pub fn legendre_symbol(a: &Int, p: &Int) -> i32 {
    let a = modp(a, p);
    if a.is_zero() {
        return 0;
    }
    let e = (p - Int::one()) / Int::from(2);
    let r = pow_mod(&a, &e, p);
    if r.is_one() {
        1
    } else {
        -1
    }
}

/// Tonelli-Shanks: a square root of `a` modulo an odd prime `p`, or `None`
/// when `a` is a non-residue.
pub fn sqrt_mod_prime(a: &Int, p: &Int) -> Option<Int> {
    let a = modp(a, p);
    if a.is_zero() {
        return Some(Int::zero());
    }
    if *p == Int::from(2) {
        return Some(a);
    }
    if legendre_symbol(&a, p) != 1 {
        return None;
    }
    // p = q * 2^s + 1 with q odd
    let mut q = p - Int::one();
    let mut s = 0u32;
    while q.is_even() {
        q /= 2;
        s += 1;
    }
    if s == 1 {
        // p = 3 mod 4
        let e = (p + Int::one()) / Int::from(4);
        return Some(pow_mod(&a, &e, p));
    }
    // find a non-residue z
    let mut z = Int::from(2);
    while legendre_symbol(&z, p) != -1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(&z, &q, p);
    let mut t = pow_mod(&a, &q, p);
    let mut r = pow_mod(&a, &((&q + Int::one()) / Int::from(2)), p);
    while !t.is_one() {
        // smallest i with t^(2^i) = 1
        let mut i = 0u32;
        let mut t2 = t.clone();
        while !t2.is_one() {
            t2 = modp(&(&t2 * &t2), p);
            i += 1;
        }
        let mut b = c.clone();
        for _ in 0..(m - i - 1) {
            b = modp(&(&b * &b), p);
        }
        m = i;
        c = modp(&(&b * &b), p);
        t = modp(&(&t * &c), p);
        r = modp(&(&r * &b), p);
    }
    Some(r)
}

/// Square root of `a` modulo a positive squarefree `n`, via CRT over the
/// prime factorization of `n`. Returns `None` when no root exists.
pub fn sqrt_mod_squarefree(a: &Int, n: &Int, bound: u64) -> Result<Option<Int>> {
    let n = n.abs();
    if n.is_one() {
        return Ok(Some(Int::zero()));
    }
    let factors = factor_bounded(&n, bound)?;
    let mut root = Int::zero();
    let mut modulus = Int::one();
    for (p, e) in factors {
        debug_assert_eq!(e, 1, "modulus must be squarefree");
        let r = if p == Int::from(2) {
            modp(a, &p)
        } else {
            match sqrt_mod_prime(a, &p) {
                Some(r) => r,
                None => return Ok(None),
            }
        };
        // CRT combine (modulus, root) with (p, r)
        let (g, inv, _) = extended_gcd(&modulus, &p);
        debug_assert!(g.is_one());
        let diff = modp(&(&r - &root), &p);
        let step = modp(&(&diff * &inv), &p);
        root += &modulus * step;
        modulus *= &p;
        root = modp(&root, &modulus);
    }
    Ok(Some(root))
}

/// Extended gcd: returns `(g, x, y)` with `a*x + b*y = g`.
pub fn extended_gcd(a: &Int, b: &Int) -> (Int, Int, Int) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut x0, mut x1) = (Int::one(), Int::zero());
    let (mut y0, mut y1) = (Int::zero(), Int::one());
    while !r1.is_zero() {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let x2 = &x0 - &q * &x1;
        x0 = std::mem::replace(&mut x1, x2);
        let y2 = &y0 - &q * &y1;
        y0 = std::mem::replace(&mut y1, y2);
    }
    if r0.is_negative() {
        (-r0, -x0, -y0)
    } else {
        (r0, x0, y0)
    }
}

/// Cornacchia: writes squarefree `n > 0` as `u^2 + v^2` when `-1` is a
/// quadratic residue modulo `n`.
pub fn two_squares(n: &Int, bound: u64) -> Result<Option<(Int, Int)>> {
    if n.is_one() {
        return Ok(Some((Int::one(), Int::zero())));
    }
    if n.is_negative() || n.is_zero() {
        return Ok(None);
    }
    let r = match sqrt_mod_squarefree(&Int::from(-1), n, bound)? {
        Some(r) => r,
        None => return Ok(None),
    };
    // Euclidean descent on (n, r) until below sqrt(n).
    let limit = n.sqrt();
    let mut a = n.clone();
    let mut b = if &r * Int::from(2) > *n { n - &r } else { r };
    while b > limit {
        let c = modp(&a, &b);
        a = std::mem::replace(&mut b, c);
    }
    let rem = n - &b * &b;
    match crate::rational::sqrt_exact_int(&rem) {
        Some(v) => Ok(Some((b, v))),
        None => Ok(None),
    }
}

/// True when `a` is a quadratic residue modulo squarefree `n` (coprime case).
pub fn is_qr_mod_squarefree(a: &Int, n: &Int, bound: u64) -> Result<bool> {
    let n = n.abs();
    if n.is_one() {
        return Ok(true);
    }
    for (p, _) in factor_bounded(&n, bound)? {
        if p == Int::from(2) {
            continue;
        }
        if legendre_symbol(a, &p) == -1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Convenience: errors with a descriptive context when factoring fails.
pub fn factor_or_err(n: &Int, bound: u64, what: &str) -> Result<Vec<(Int, u32)>> {
    factor_bounded(n, bound).map_err(|_| Error::FactorizationBound(format!("{what}: {n}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_symbol_small() {
        let p = Int::from(7);
        // QRs mod 7: 1,2,4
        assert_eq!(legendre_symbol(&Int::from(2), &p), 1);
        assert_eq!(legendre_symbol(&Int::from(3), &p), -1);
        assert_eq!(legendre_symbol(&Int::from(14), &p), 0);
    }

    #[test]
    fn sqrt_mod_prime_roundtrip() {
        for (a, p) in [(2i64, 7i64), (10, 13), (5, 41), (4, 3), (2, 17)] {
            let (a, p) = (Int::from(a), Int::from(p));
            if legendre_symbol(&a, &p) == 1 {
                let r = sqrt_mod_prime(&a, &p).unwrap();
                assert_eq!(modp(&(&r * &r), &p), modp(&a, &p));
            }
        }
        assert!(sqrt_mod_prime(&Int::from(3), &Int::from(7)).is_none());
    }

    #[test]
    fn sqrt_mod_composite() {
        // 2 is a QR mod 7 and mod 17, so mod 119
        let r = sqrt_mod_squarefree(&Int::from(2), &Int::from(119), 1000)
            .unwrap()
            .unwrap();
        assert_eq!(modp(&(&r * &r), &Int::from(119)), Int::from(2));
    }

    #[test]
    fn two_squares_small() {
        for n in [1i64, 2, 5, 13, 65, 85] {
            let (u, v) = two_squares(&Int::from(n), 1000).unwrap().unwrap();
            assert_eq!(&u * &u + &v * &v, Int::from(n));
        }
        assert!(two_squares(&Int::from(3), 1000).unwrap().is_none());
    }

    #[test]
    fn extended_gcd_identity() {
        let (g, x, y) = extended_gcd(&Int::from(240), &Int::from(46));
        assert_eq!(g, Int::from(2));
        assert_eq!(Int::from(240) * x + Int::from(46) * y, Int::from(2));
    }
}

//! Primitive integer representatives of projective solution classes.

use crate::rational::format_rational;
use crate::{Error, Int, Rational, Result};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// A nonzero integer 4-vector, reduced to its projective equivalence class:
/// the coordinate gcd is 1 and the first nonzero coordinate is positive.
/// Two rational solutions that are scalar multiples of each other normalize
/// to the identical `ProjVec4`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjVec4 {
    coords: [Int; 4],
}

impl ProjVec4 {
    /// Normalizes four rationals into the canonical class representative.
    ///
    /// Errors on the all-zero vector.
    pub fn normalize(v: &[Rational; 4]) -> Result<Self> {
        if v.iter().all(|c| c.is_zero()) {
            return Err(Error::ZeroVector);
        }
        let mut den = Int::from(1);
        for c in v {
            den = den.lcm(c.denom());
        }
        let mut ints: [Int; 4] = std::array::from_fn(|i| {
            let scaled = &v[i] * Rational::from_integer(den.clone());
            debug_assert!(scaled.denom().is_one());
            scaled.numer().clone()
        });
        let mut g = Int::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        for c in &mut ints {
            *c /= &g;
        }
        if ints.iter().find(|c| !c.is_zero()).is_some_and(Signed::is_negative) {
            for c in &mut ints {
                *c = -c.clone();
            }
        }
        Ok(Self { coords: ints })
    }

    /// Normalizes four integers.
    pub fn from_ints(v: [i64; 4]) -> Result<Self> {
        Self::normalize(&v.map(|c| Rational::from_integer(Int::from(c))))
    }

    pub fn coords(&self) -> &[Int; 4] {
        &self.coords
    }

    /// Coordinates as rationals, for evaluation against forms.
    pub fn to_rationals(&self) -> [Rational; 4] {
        std::array::from_fn(|i| Rational::from_integer(self.coords[i].clone()))
    }
}

impl fmt::Debug for ProjVec4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}, {})",
            self.coords[0], self.coords[1], self.coords[2], self.coords[3]
        )
    }
}

impl fmt::Display for ProjVec4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Normalizes an integer 3-vector to a primitive, sign-canonical triple.
pub fn normalize_triple(v: &[Int; 3]) -> Result<[Int; 3]> {
    if v.iter().all(Zero::is_zero) {
        return Err(Error::ZeroVector);
    }
    let mut g = Int::zero();
    for c in v {
        g = g.gcd(c);
    }
    let mut out = [v[0].clone() / &g, v[1].clone() / &g, v[2].clone() / &g];
    if out.iter().find(|c| !c.is_zero()).is_some_and(Signed::is_negative) {
        for c in &mut out {
            *c = -c.clone();
        }
    }
    Ok(out)
}

/// Display helper for rational 4-tuples in reports.
pub fn display_rationals(v: &[Rational; 4]) -> String {
    format!(
        "({}, {}, {}, {})",
        format_rational(&v[0]),
        format_rational(&v[1]),
        format_rational(&v[2]),
        format_rational(&v[3])
    )
}


#[cfg(test)]
mod proptests {
    use super::*;
    use crate::rational::ratio;
    use proptest::prelude::*;

    fn vec4() -> impl Strategy<Value = [Rational; 4]> {
        proptest::array::uniform4((-50i64..50, 1i64..20).prop_map(|(n, d)| ratio(n, d)))
            .prop_filter("nonzero", |v| v.iter().any(|c| !c.is_zero()))
    }

    proptest! {
        #[test]
        fn normalize_is_scale_invariant(v in vec4(), k in (-40i64..40).prop_filter("nonzero", |k| *k != 0)) {
            let scaled: [Rational; 4] = std::array::from_fn(|i| &v[i] * ratio(k, 3));
            prop_assert_eq!(
                ProjVec4::normalize(&v).unwrap(),
                ProjVec4::normalize(&scaled).unwrap()
            );
        }

        #[test]
        fn normalize_is_idempotent(v in vec4()) {
            let once = ProjVec4::normalize(&v).unwrap();
            let twice = ProjVec4::normalize(&once.to_rationals()).unwrap();
            prop_assert_eq!(once, twice);
        }
    }
}

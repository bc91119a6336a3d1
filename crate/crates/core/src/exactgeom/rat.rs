//! Exact rational scalars.
//!
//! `Rat` is always stored in lowest terms with a positive denominator, so
//! structural equality is value equality and the decimal rendering is a
//! canonical encoding.

use std::cmp::Ordering;
use std::str::FromStr;

use malachite_base::num::arithmetic::traits::{Gcd, Lcm, Sign};
use malachite_base::num::basic::traits::{One, Zero};
use malachite_nz::integer::Integer;
use malachite_nz::natural::Natural;

pub type Rat = malachite_q::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse {0:?} as an exact rational")]
pub struct ParseRatError(pub String);

pub fn int(n: i64) -> Rat {
    Rat::from(n)
}

/// `n/d`, reduced. Panics when `d == 0`.
pub fn frac(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::from_signeds(n, d)
}

pub fn zero() -> Rat {
    Rat::ZERO
}

pub fn one() -> Rat {
    Rat::ONE
}

/// Accepts `"7"`, `"-3/4"`, and unreduced forms such as `"6/4"`.
pub fn parse_rat(s: &str) -> Result<Rat, ParseRatError> {
    let t = s.trim();
    let err = || ParseRatError(s.to_string());
    match t.split_once('/') {
        None => Integer::from_str(t).map(Rat::from).map_err(|_| err()),
        Some((n, d)) => {
            let n = Integer::from_str(n.trim()).map_err(|_| err())?;
            let d = Integer::from_str(d.trim()).map_err(|_| err())?;
            if d == 0 {
                return Err(err());
            }
            Ok(Rat::from_integers(n, d))
        }
    }
}

pub fn sign(x: &Rat) -> i8 {
    match x.sign() {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

pub fn is_zero(x: &Rat) -> bool {
    *x == Rat::ZERO
}

pub fn is_integer(x: &Rat) -> bool {
    *x.denominator_ref() == Natural::ONE
}

/// Scale factor turning `values` into coprime integers (all-zero input gives 1).
///
/// The factor is positive; callers fix signs themselves.
pub fn primitive_scale(values: &[Rat]) -> Rat {
    let mut den = Natural::ONE;
    for v in values {
        den = den.lcm(v.denominator_ref());
    }
    let mut g = Natural::ZERO;
    for v in values {
        // v * den is an integer; accumulate gcd of absolute numerators.
        let scaled = v * Rat::from(den.clone());
        g = g.gcd(scaled.numerator_ref());
    }
    if g == Natural::ZERO {
        return Rat::ONE;
    }
    Rat::from_naturals(den, g)
}

/// Exact `x^e` for a natural exponent.
pub fn pow(x: &Rat, e: u32) -> Rat {
    let mut acc = Rat::ONE;
    for _ in 0..e {
        acc *= x;
    }
    acc
}

/// Largest integer `b` with `b^2 <= x`, for `x >= 0`.
pub fn isqrt_floor(x: &Rat) -> u64 {
    assert!(sign(x) >= 0);
    let (mut lo, mut hi) = (0u64, 1u64);
    while Rat::from(hi) * Rat::from(hi) <= *x {
        hi *= 2;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if Rat::from(mid) * Rat::from(mid) <= *x {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Rational bracket `[lo, hi]` around the real `x^(1/d)` with `hi - lo <= 1/q`.
///
/// Bisection on the monotone map `y -> y^d`, so both ends stay exact.
pub fn root_bracket(x: &Rat, d: u32, q: u64) -> (Rat, Rat) {
    assert!(sign(x) >= 0 && d >= 1 && q >= 1);
    let mut lo = Rat::ZERO;
    let mut hi = if *x > Rat::ONE { x.clone() } else { Rat::ONE };
    let width = frac(1, q as i64);
    while &hi - &lo > width {
        let mid = (&lo + &hi) / Rat::from(2);
        if pow(&mid, d) <= *x {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// Lossy conversion for display only.
pub fn to_f64_lossy(x: &Rat) -> f64 {
    use malachite_base::num::conversion::traits::RoundingFrom;
    use malachite_base::rounding_modes::RoundingMode;
    f64::rounding_from(x, RoundingMode::Nearest).0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rat("6/4").unwrap(), frac(3, 2));
        assert_eq!(parse_rat(" -7 ").unwrap(), int(-7));
        assert_eq!(parse_rat("3/-6").unwrap(), frac(-1, 2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
        assert!(parse_rat("1.5").is_err());
    }

    #[test]
    fn display_is_reduced() {
        assert_eq!(frac(4, -8).to_string(), "-1/2");
        assert_eq!(int(5).to_string(), "5");
    }

    #[test]
    fn primitive_scale_makes_coprime_integers() {
        let v = [frac(1, 2), frac(-3, 4), int(0)];
        let s = primitive_scale(&v);
        let scaled: Vec<Rat> = v.iter().map(|x| x * &s).collect();
        assert_eq!(scaled, vec![int(2), int(-3), int(0)]);
        assert_eq!(primitive_scale(&[int(0)]), int(1));
    }

    #[test]
    fn integer_sqrt_and_root_bracket() {
        assert_eq!(isqrt_floor(&int(32)), 5);
        assert_eq!(isqrt_floor(&int(36)), 6);
        assert_eq!(isqrt_floor(&frac(1, 2)), 0);
        let (lo, hi) = root_bracket(&frac(16, 9), 2, 1000);
        assert!(pow(&lo, 2) <= frac(16, 9) && pow(&hi, 2) >= frac(16, 9));
        assert!(&hi - &lo <= frac(1, 1000));
    }
}

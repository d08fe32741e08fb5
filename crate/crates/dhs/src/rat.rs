//! Exact rational arithmetic helpers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number used for all costs, coefficients and duals.
pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational `num / den`.
pub fn ratio(num: i64, den: i64) -> Rat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Canonical text form: `num/den` in lowest terms, `/den` omitted when 1.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `123`, `-4` or `num/den`. Denominator must be positive and nonzero.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
        Some((n, d)) => {
            let n = n.trim().parse::<BigInt>().ok()?;
            let d = d.trim().parse::<BigInt>().ok()?;
            if d <= BigInt::zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
    }
}

/// Exact check of `value <= mul * log_{3/2}(n) + add` for rational `value`.
///
/// Rewrites the comparison as `(3/2)^p <= n^q` with `p/q = (value - add)/mul`
/// and evaluates it in big integers, so no floating point is involved.
pub fn within_log32_bound(value: &Rat, n: usize, mul: i64, add: i64) -> bool {
    assert!(mul > 0 && n >= 1);
    let t = (value - rat(add)) / rat(mul);
    if !t.is_positive() {
        return true;
    }
    if n == 1 {
        // log is 0; only non-positive t passes.
        return false;
    }
    // Guard absurd exponents before exponentiating.
    // log_{3/2}(n) < 64 for every n < (3/2)^64 ~ 2.2e11.
    if t > rat(64) && n < 200_000_000_000 {
        return false;
    }
    let p = t.numer().clone();
    let q = t.denom().clone();
    let p_u = p.to_biguint().expect("positive");
    let q_u = q.to_biguint().expect("positive");
    let p32: u32 = p_u.try_into().expect("exponent fits u32");
    let q32: u32 = q_u.try_into().expect("exponent fits u32");
    // (3/2)^p <= n^q  <=>  3^p <= 2^p * n^q
    let lhs = BigInt::from(3).pow(p32);
    let rhs = BigInt::from(2).pow(p32) * BigInt::from(n).pow(q32);
    lhs <= rhs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rat_round_trip() {
        for s in ["0", "7", "-3", "27/5", "1/2"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
        assert_eq!(format_rat(&parse_rat("6/4").unwrap()), "3/2");
        assert!(parse_rat("1/0").is_none());
        assert!(parse_rat("1/-2").is_none());
        assert!(parse_rat("x").is_none());
    }

    #[test]
    fn log_bound_exact() {
        // 6*log_{3/2}(4) + 8 = 28.51...; 28 passes, 29 fails.
        assert!(within_log32_bound(&rat(28), 4, 6, 8));
        assert!(!within_log32_bound(&rat(29), 4, 6, 8));
        // Exact boundary: value = add at n = 1.
        assert!(within_log32_bound(&rat(8), 1, 6, 8));
        assert!(!within_log32_bound(&rat(9), 1, 6, 8));
        // Rational values.
        assert!(within_log32_bound(&ratio(57, 2), 4, 6, 8));
        assert!(!within_log32_bound(&ratio(58, 2), 4, 6, 8));
    }
}

//! Small helpers around `BigRational`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar used for all lattice arithmetic.
pub type Rat = BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Fraction `n/d` as a rational.
pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// True if `x` is an integer.
pub fn is_integer(x: &Rat) -> bool {
    x.denom().is_one()
}

/// Dot product of two rational vectors (plain coordinate dot, no Gram).
pub fn dot(u: &[Rat], v: &[Rat]) -> Rat {
    debug_assert_eq!(u.len(), v.len());
    let mut acc = Rat::zero();
    for (a, b) in u.iter().zip(v) {
        if !a.is_zero() && !b.is_zero() {
            acc += a * b;
        }
    }
    acc
}

/// Parse a rational from `p`, `p/q`, or decimal-free signed integers.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().ok()?;
        let d: BigInt = den.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Rat::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(Rat::from_integer(n))
    }
}

/// Render a rational as `p` or `p/q` (reduced form).
pub fn format_rat(x: &Rat) -> String {
    if is_integer(x) {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Least common multiple of the denominators appearing in `rows`.
pub fn denominator_lcm<'a>(entries: impl Iterator<Item = &'a Rat>) -> BigInt {
    let mut l = BigInt::one();
    for e in entries {
        l = num_integer::lcm(l, e.denom().abs());
    }
    l
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3", "-4", "5/3", "-7/2", "0"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
        assert_eq!(parse_rat("6/4").map(|r| format_rat(&r)).unwrap(), "3/2");
        assert!(parse_rat("1/0").is_none());
        assert!(parse_rat("x").is_none());
    }

    #[test]
    fn dot_product() {
        let u = vec![rat(1), rat(2), frac(1, 2)];
        let v = vec![rat(3), rat(-1), rat(4)];
        assert_eq!(dot(&u, &v), rat(3));
    }
}

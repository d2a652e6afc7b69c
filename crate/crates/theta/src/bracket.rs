//! Rigorous real enclosures with exact rational endpoints.
//!
//! Every operation rounds outward, so any real produced by a chain of these
//! operations is guaranteed to lie inside the resulting bracket. Constants
//! (π, ln 2) are hard-coded 40-digit enclosures; square roots use integer
//! square roots with explicit one-ulp padding; logarithms use the atanh
//! series on [1,2) with an explicit tail bound; Dirichlet L-values use
//! scaled-integer partial sums with per-term floor error and the tail bound
//! Σ_{n>N} n⁻² < 1/N.

use crate::arith::kronecker;
use lattice_core::rat::{rat, Rat};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq)]
pub struct BracketedReal {
    lo: Rat,
    hi: Rat,
}

impl BracketedReal {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi, "inverted bracket");
        BracketedReal { lo, hi }
    }

    pub fn point(x: Rat) -> Self {
        BracketedReal { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn add(&self, other: &Self) -> Self {
        BracketedReal::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn sub(&self, other: &Self) -> Self {
        BracketedReal::new(&self.lo - &other.hi, &self.hi - &other.lo)
    }

    pub fn neg(&self) -> Self {
        BracketedReal::new(-self.hi.clone(), -self.lo.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let cands = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = cands.iter().min().unwrap().clone();
        let hi = cands.iter().max().unwrap().clone();
        BracketedReal::new(lo, hi)
    }

    pub fn mul_rat(&self, c: &Rat) -> Self {
        if c.is_negative() {
            BracketedReal::new(&self.hi * c, &self.lo * c)
        } else {
            BracketedReal::new(&self.lo * c, &self.hi * c)
        }
    }

    pub fn add_rat(&self, c: &Rat) -> Self {
        BracketedReal::new(&self.lo + c, &self.hi + c)
    }

    /// Reciprocal; requires 0 strictly outside the bracket.
    pub fn recip(&self) -> Self {
        assert!(
            self.lo.is_positive() || self.hi.is_negative(),
            "reciprocal of bracket containing zero"
        );
        BracketedReal::new(self.hi.recip(), self.lo.recip())
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.recip())
    }

    /// The integers contained in the bracket, as (smallest, largest).
    pub fn integer_range(&self) -> Option<(BigInt, BigInt)> {
        let lo_int = self.lo.ceil().to_integer();
        let hi_int = self.hi.floor().to_integer();
        if lo_int <= hi_int {
            Some((lo_int, hi_int))
        } else {
            None
        }
    }

    /// The single integer in the bracket, if there is exactly one.
    pub fn unique_integer(&self) -> Option<BigInt> {
        match self.integer_range() {
            Some((a, b)) if a == b => Some(a),
            _ => None,
        }
    }

    /// Approximate midpoint for display only.
    pub fn approx_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let mid = (&self.lo + &self.hi) / rat(2);
        mid.numer().to_f64().unwrap_or(f64::NAN) / mid.denom().to_f64().unwrap_or(f64::NAN)
    }
}

fn pow10(k: u32) -> BigInt {
    BigInt::from(10u32).pow(k)
}

/// π with 40 correct decimal digits.
pub fn pi() -> BracketedReal {
    let numer: BigInt = "31415926535897932384626433832795028841971".parse().unwrap();
    let d = pow10(40);
    BracketedReal::new(
        Rat::new(numer.clone(), d.clone()),
        Rat::new(numer + 1, d),
    )
}

/// ln 2 with 40 correct decimal digits.
pub fn ln2() -> BracketedReal {
    let numer: BigInt = "6931471805599453094172321214581765680755".parse().unwrap();
    let d = pow10(40);
    BracketedReal::new(
        Rat::new(numer.clone(), d.clone()),
        Rat::new(numer + 1, d),
    )
}

/// √x for rational x ≥ 0, padded by one unit in the 20th decimal place.
pub fn sqrt_bracket(x: &Rat) -> BracketedReal {
    assert!(!x.is_negative(), "sqrt of negative rational");
    if x.is_zero() {
        return BracketedReal::point(Rat::zero());
    }
    let k = pow10(20);
    let p = x.numer();
    let q = x.denom();
    // √(p/q) = √(pq)/q; floor integer sqrt of pq·k².
    let n = (p * q * (&k * &k)).sqrt();
    let denom = q * &k;
    BracketedReal::new(
        Rat::new(n.clone(), denom.clone()),
        Rat::new(n + 1, denom),
    )
}

/// ln x for rational x > 0 via range reduction to [1,2) and the atanh
/// series (25 odd terms, explicit tail bound).
pub fn ln_bracket_rat(x: &Rat) -> BracketedReal {
    assert!(x.is_positive(), "log of nonpositive rational");
    let one = Rat::one();
    if x == &one {
        return BracketedReal::point(Rat::zero());
    }
    if x < &one {
        return ln_bracket_rat(&x.recip()).neg();
    }
    let mut y = x.clone();
    let two = rat(2);
    let mut k = 0i64;
    while y >= two {
        y /= &two;
        k += 1;
    }
    // y ∈ [1,2): ln y = 2·atanh(z), z = (y−1)/(y+1) ∈ [0, 1/3).
    let z = (&y - &one) / (&y + &one);
    let z2 = &z * &z;
    let mut term = z.clone();
    let mut sum = Rat::zero();
    const TERMS: i64 = 25;
    for i in 0..TERMS {
        sum += &term / rat(2 * i + 1);
        term *= &z2;
    }
    // Tail: Σ_{i≥TERMS} z^{2i+1}/(2i+1) ≤ z^{2T+1} / ((2T+1)(1−z²)).
    let tail = &term / (rat(2 * TERMS + 1) * (&one - &z2));
    let series = BracketedReal::new(&sum * &two, (&sum + &tail) * &two);
    ln2().mul_rat(&rat(k)).add(&series)
}

/// ln of a bracket of positive reals (monotone, so map endpoints outward).
pub fn ln_bracket(x: &BracketedReal) -> BracketedReal {
    assert!(x.lo().is_positive());
    let lo = ln_bracket_rat(x.lo());
    let hi = ln_bracket_rat(x.hi());
    BracketedReal::new(lo.lo().clone(), hi.hi().clone())
}

/// Partial-sum enclosure of L(2, χ) for the real character
/// χ(n) = kronecker(disc, n), periodic with period |disc|
/// (requires disc ≡ 0 or 1 mod 4).
///
/// Accumulates floor(K/n²)·χ(n) in i128 with K = 10²⁴ (per-term floor error
/// < 1 unit) and pads by the tail bound 1/N.
pub fn l_char_bracket(disc: i64, n_terms: u64) -> BracketedReal {
    assert!(disc != 0 && disc.rem_euclid(4) <= 1, "not a character discriminant");
    assert!(n_terms >= 16);
    let period = disc.unsigned_abs();
    let table: Vec<i8> = (0..period)
        .map(|r| kronecker(disc, r as i64) as i8)
        .collect();
    const K: i128 = 1_000_000_000_000_000_000_000_000; // 10²⁴
    let mut acc: i128 = 0;
    let mut nonzero: i128 = 0;
    for n in 1..=n_terms {
        let ch = table[(n % period) as usize];
        if ch == 0 {
            continue;
        }
        let q = K / (n as i128 * n as i128);
        acc += ch as i128 * q;
        nonzero += 1;
    }
    let kk = Rat::from_integer(BigInt::from(K));
    let lo_partial = Rat::from_integer(BigInt::from(acc - nonzero)) / &kk;
    let hi_partial = Rat::from_integer(BigInt::from(acc + nonzero)) / &kk;
    let tail = Rat::new(BigInt::one(), BigInt::from(n_terms));
    BracketedReal::new(lo_partial - &tail, hi_partial + &tail)
}

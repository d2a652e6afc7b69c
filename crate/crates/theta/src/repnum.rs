//! Representation numbers N_{M_i}(2t/3) by Eisenstein-type product formulas,
//! verified against direct enumeration.
//!
//! Each registered form S_i satisfies N_{M_i}(2t/3) = #{x : S_i(x) = t}, and
//! the count equals the product of local densities because each S_i is alone
//! in its genus:
//!
//! * S₂ (rank 4, det 2S = 81): the archimedean factor and the value
//!   L(2, χ₃₂₄) of the principal character cancel to the exact rational
//!   4t · Σ_{a|t} χ₃₂₄(a)/a · α₂ · α₃.
//! * S₃ (rank 4, det 2S = 108): 4π²t/√108 · Σ_{a|t} χ₄₃₂(a)/a · α₂ · α₃
//!   divided by L(2, χ₄₃₂); evaluated as a shrinking bracket.
//! * S₁ (rank 5, det 2S = 162): (160/3π²) · t^{3/2} · L(2, χ_D) ·
//!   Π_{p∈{2,3}} (1 − χ_D(p)p⁻²)/(1 − p⁻⁴) · α₂ · α₃, where D is the
//!   discriminant of Q(√t); only the square-free-away-from-6 case t₂ = 1 is
//!   supported (the square-part correction factor is 1 there).
//!
//! Bracketed results must shrink below [`WIDTH_TARGET`] and isolate exactly
//! one integer; otherwise an error is returned.

use lattice_core::rat::{frac, rat, Rat};
use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::arith::{divisors, fund_disc_of_sqrt, kronecker, t2_of};
use crate::bracket::{l_char_bracket, pi, sqrt_bracket, BracketedReal};
use crate::density::registry;
use crate::errors::{Result, ThetaError};

/// Required final bracket width for formula evaluations.
pub const WIDTH_TARGET: (i64, i64) = (1, 1000);

const L_TERMS_START: u64 = 2_000_000;
const L_TERMS_CAP: u64 = 64_000_000;

/// A representation number together with the interval that isolated it.
#[derive(Debug, Clone)]
pub struct RepNumber {
    pub value: BigInt,
    pub bracket: BracketedReal,
}

/// The two rank-4 registered forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvenRankForm {
    S2,
    S3,
}

fn width_target() -> Rat {
    frac(WIDTH_TARGET.0, WIDTH_TARGET.1)
}

fn check_t(t: i64) -> Result<()> {
    if t < 1 {
        return Err(ThetaError::InvalidArgument("t must be positive"));
    }
    Ok(())
}

/// Σ_{a|t} χ_disc(a)/a, exact.
fn divisor_char_sum(disc: i64, t: i64) -> Rat {
    let mut s = Rat::from_integer(0.into());
    for a in divisors(t) {
        let ch = kronecker(disc, a);
        if ch != 0 {
            s += frac(ch, a);
        }
    }
    s
}

fn isolate_integer(bracket: BracketedReal) -> Result<RepNumber> {
    match bracket.unique_integer() {
        Some(value) => Ok(RepNumber { value, bracket }),
        None => Err(ThetaError::NoUniqueInteger {
            lo: bracket.lo().to_string(),
            hi: bracket.hi().to_string(),
        }),
    }
}

/// N_{M₂}(2t/3) or N_{M₃}(2t/3) by formula.
pub fn rep_number_even_rank(form: EvenRankForm, t: i64) -> Result<RepNumber> {
    check_t(t)?;
    let reg = match form {
        EvenRankForm::S2 => &registry()[1],
        EvenRankForm::S3 => &registry()[2],
    };
    let four_d = 4 * reg.det2s; // 324 for S₂, 432 for S₃
    let s = divisor_char_sum(four_d, t);
    let local = s * reg.alpha2(t)? * reg.alpha3(t)?;
    match form {
        EvenRankForm::S2 => {
            // α_∞/L(2, χ₃₂₄) = (4π²t/9)/(π²/9) = 4t exactly.
            let val = rat(4 * t) * local;
            if !val.denom().is_one() || val.is_negative() {
                return Err(ThetaError::FormulaNotIntegral(val.to_string()));
            }
            Ok(RepNumber {
                value: val.numer().clone(),
                bracket: BracketedReal::point(val),
            })
        }
        EvenRankForm::S3 => {
            // α_∞ = 4π²t/√108; divide by L(2, χ₄₃₂).
            let mut terms = L_TERMS_START;
            loop {
                let l = l_char_bracket(four_d, terms);
                let pi2 = pi().mul(&pi());
                let alpha_inf = pi2.mul_rat(&rat(4 * t)).div(&sqrt_bracket(&rat(reg.det2s)));
                let bracket = alpha_inf.mul_rat(&local).div(&l);
                if bracket.width() < width_target() {
                    return isolate_integer(bracket);
                }
                if terms >= L_TERMS_CAP {
                    return Err(ThetaError::WidthNotAchieved {
                        target: width_target().to_string(),
                        terms,
                    });
                }
                terms *= 2;
            }
        }
    }
}

/// N_{M₁}(2t/3) by formula. Requires the square part of t away from 6 to be
/// trivial (t₂ = 1).
pub fn rep_number_odd_rank(t: i64) -> Result<RepNumber> {
    check_t(t)?;
    let t2 = t2_of(t);
    if t2 != 1 {
        return Err(ThetaError::SquareClassNotSupported { t, t2 });
    }
    let reg = &registry()[0];
    let d = fund_disc_of_sqrt(t);
    // Π_{p∈{2,3}} (1 − χ_D(p)p⁻²)/(1 − p⁻⁴), exact.
    let mut euler = Rat::one();
    for p in [2i64, 3] {
        let ch = kronecker(d, p);
        euler *= (Rat::one() - frac(ch, p * p)) / (Rat::one() - frac(1, p.pow(4)));
    }
    let local = euler * reg.alpha2(t)? * reg.alpha3(t)?;
    let mut terms = L_TERMS_START;
    loop {
        let l = l_char_bracket(d, terms);
        let t32 = sqrt_bracket(&rat(t)).mul_rat(&rat(t)); // t^{3/2}
        let pi2 = pi().mul(&pi());
        let bracket = t32
            .mul_rat(&frac(160, 3))
            .mul_rat(&local)
            .mul(&l)
            .div(&pi2);
        if bracket.width() < width_target() {
            return isolate_integer(bracket);
        }
        if terms >= L_TERMS_CAP {
            return Err(ThetaError::WidthNotAchieved {
                target: width_target().to_string(),
                terms,
            });
        }
        terms *= 2;
    }
}

/// Formula value as a plain integer, dispatching on the form index 0, 1, 2.
pub fn rep_number(index: usize, t: i64) -> Result<RepNumber> {
    match index {
        0 => rep_number_odd_rank(t),
        1 => rep_number_even_rank(EvenRankForm::S2, t),
        2 => rep_number_even_rank(EvenRankForm::S3, t),
        _ => Err(ThetaError::InvalidArgument("form index out of range")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{ToPrimitive, Zero};
    use shortvec::QuadForm;
    use std::collections::BTreeMap;

    fn enumerated_counts(index: usize, max_t: i64) -> BTreeMap<i64, u64> {
        // N_{M_i}(2t/3) for t = 1..=max_t via direct enumeration of the full
        // rational lattice (no shift).
        let model = lattice_core::model();
        let form = QuadForm::new(&model.b_forms[index]).unwrap();
        let scale3 = rat(form.scale()).pow(3);
        let max_key = (frac(2 * max_t, 3) * scale3).numer().to_i64().unwrap();
        let counts = form.count_norms_parallel(max_key);
        let mut out = BTreeMap::new();
        for t in 1..=max_t {
            let key = form.key_of_norm(&frac(2 * t, 3)).unwrap();
            out.insert(t, counts.get(&key).copied().unwrap_or(0));
        }
        out
    }

    #[test]
    fn s2_exact_formula_matches_enumeration() {
        let enumerated = enumerated_counts(1, 24);
        for t in 1..=24 {
            let rep = rep_number_even_rank(EvenRankForm::S2, t).unwrap();
            assert_eq!(rep.value, BigInt::from(enumerated[&t]), "t = {t}");
            assert!(rep.bracket.width().is_zero(), "S₂ path is exact");
        }
    }

    #[test]
    fn s3_bracket_formula_matches_enumeration() {
        let enumerated = enumerated_counts(2, 16);
        for t in 1..=16 {
            let rep = rep_number_even_rank(EvenRankForm::S3, t).unwrap();
            assert_eq!(rep.value, BigInt::from(enumerated[&t]), "t = {t}");
            assert!(rep.bracket.width() < frac(1, 1000));
        }
    }

    #[test]
    fn s1_bracket_formula_matches_enumeration() {
        // The range includes t = 16 and t = 27, whose 2- and 3-adic densities
        // sit beyond the direct-count stabilization guard: agreement here
        // validates the closed-form values globally.
        let enumerated = enumerated_counts(0, 27);
        for t in 1..=27 {
            if t2_of(t) != 1 {
                continue;
            }
            let rep = rep_number_odd_rank(t).unwrap();
            assert_eq!(rep.value, BigInt::from(enumerated[&t]), "t = {t}");
        }
    }

    #[test]
    fn frozen_values() {
        // Non-integral norms split evenly between the two cosets of each M_i,
        // so these are twice the frozen coset counts.
        assert_eq!(rep_number_odd_rank(2).unwrap().value, BigInt::from(30));
        assert_eq!(rep_number_odd_rank(23).unwrap().value, BigInt::from(1200));
        assert_eq!(
            rep_number_even_rank(EvenRankForm::S2, 2).unwrap().value,
            BigInt::from(18)
        );
        assert_eq!(
            rep_number_even_rank(EvenRankForm::S3, 2).unwrap().value,
            BigInt::from(14)
        );
    }

    #[test]
    fn square_part_rejected() {
        // t = 50 = 2·5²: square part away from 6 is 5.
        assert!(matches!(
            rep_number_odd_rank(50),
            Err(ThetaError::SquareClassNotSupported { t: 50, t2: 5 })
        ));
        // Powers of 2 and 3 are fine: t₂(48) = 1.
        assert_eq!(t2_of(48), 1);
        assert!(rep_number_odd_rank(48).is_ok());
    }

    #[test]
    fn dispatch_by_index() {
        assert_eq!(rep_number(1, 2).unwrap().value, BigInt::from(18));
        assert!(rep_number(3, 2).is_err());
    }
}

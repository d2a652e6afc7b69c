//! Analytic bounds on the coset counts N₁, N₂, N₃ at norm m = 2t/3, and the
//! decision procedure for the inequality 10N₂ + 15N₃ < 4N₁.
//!
//! The bounds hold under congruence preconditions on t = 3m/2:
//!
//! * lower bound for N₁: t ≡ 2 or 11 (mod 12);
//! * upper bounds for N₂, N₃: t ≡ 2 (mod 3).
//!
//! The two admitted congruence classes (mod 12 for the lower bound, mod 4
//! within t ≡ 2 mod 3 for other uses) are reported separately and never
//! merged; [`KeyInequalityReport`] carries both flags.

use lattice_core::rat::{frac, rat, Rat};
use num_traits::{One, Signed, ToPrimitive};
use shortvec::QuadForm;

use crate::arith::divisors;
use crate::bracket::{ln_bracket_rat, sqrt_bracket, BracketedReal};
use crate::errors::{Result, ThetaError};

/// t = 3m/2 when that is a positive integer.
fn t_of_norm(m: &Rat) -> Result<i64> {
    let t = m * frac(3, 2);
    if !t.denom().is_one() || !t.is_positive() {
        return Err(ThetaError::InvalidArgument(
            "norm m must make t = 3m/2 a positive integer",
        ));
    }
    t.numer()
        .to_i64()
        .ok_or(ThetaError::InvalidArgument("t overflows i64"))
}

/// Lower bound 5.2488·m^{3/2} ≤ N₁(m), valid for t = 3m/2 ≡ 2, 11 (mod 12).
pub fn bound_m1_lower(m: &Rat) -> Result<BracketedReal> {
    let t = t_of_norm(m)?;
    if !(t % 12 == 2 || t % 12 == 11) {
        return Err(ThetaError::CongruenceViolation(
            "N1 lower bound needs t = 3m/2 ≡ 2 or 11 (mod 12)",
        ));
    }
    Ok(sqrt_bracket(m).mul_rat(m).mul_rat(&frac(52_488, 10_000)))
}

fn log_factor(t: i64) -> BracketedReal {
    ln_bracket_rat(&rat(t)).add_rat(&Rat::one())
}

/// Upper bound N₂(m) ≤ (9m/4)·(ln(3m/2) + 1), valid for t = 3m/2 ≡ 2 (mod 3).
pub fn bound_m2_upper(m: &Rat) -> Result<BracketedReal> {
    let t = t_of_norm(m)?;
    if t % 3 != 2 {
        return Err(ThetaError::CongruenceViolation(
            "N2 upper bound needs t = 3m/2 ≡ 2 (mod 3)",
        ));
    }
    Ok(log_factor(t).mul_rat(&(m * frac(9, 4))))
}

/// Upper bound N₃(m) ≤ 9.0004·m·(ln(3m/2) + 1), valid for t ≡ 2 (mod 3).
pub fn bound_m3_upper(m: &Rat) -> Result<BracketedReal> {
    let t = t_of_norm(m)?;
    if t % 3 != 2 {
        return Err(ThetaError::CongruenceViolation(
            "N3 upper bound needs t = 3m/2 ≡ 2 (mod 3)",
        ));
    }
    Ok(log_factor(t).mul_rat(&(m * frac(90_004, 10_000))))
}

/// Certified comparison Σ_{a|t} 1/a < 0.444·(ln t + 1), for 1000 ≤ t ≤ 8528.
///
/// Returns `Some(true)` when the inequality is certain, `Some(false)` when
/// its negation is certain, and `None` outside the supported range.
pub fn divisor_sum_refinement(t: i64) -> Option<bool> {
    if !(1000..=8528).contains(&t) {
        return None;
    }
    let lhs: Rat = divisors(t).into_iter().map(|a| frac(1, a)).sum();
    let rhs = log_factor(t).mul_rat(&frac(444, 1000));
    if &lhs < rhs.lo() {
        Some(true)
    } else if &lhs > rhs.hi() {
        Some(false)
    } else {
        // The bracket is ~30 digits wide; a straddle would mean equality.
        Some(false)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KeyInequalityOutcome {
    Holds,
    Fails,
    /// t ≤ 20 or t ≢ 2 (mod 3): outside the regime the inequality targets.
    PreconditionUnmet,
}

/// Result of testing 10N₂ + 15N₃ < 4N₁ at m = 2t/3 by exact enumeration.
#[derive(Debug, Clone)]
pub struct KeyInequalityReport {
    pub t: i64,
    /// m = 2t/3.
    pub m: Rat,
    pub outcome: KeyInequalityOutcome,
    /// t ≡ 2 or 11 (mod 12).
    pub admitted_mod12: bool,
    /// t ≡ 2 or 3 (mod 4).
    pub admitted_mod4: bool,
    pub n1: u64,
    pub n2: u64,
    pub n3: u64,
    /// 10N₂ + 15N₃.
    pub lhs: i64,
    /// 4N₁.
    pub rhs: i64,
    /// Divisor-sum refinement verdict for 1000 ≤ t ≤ 8528.
    pub refinement: Option<bool>,
}

/// Tests the inequality 10N₂ + 15N₃ < 4N₁ at m = 2t/3 by enumerating the
/// three cosets exactly.
pub fn check_key_inequality(t: i64) -> Result<KeyInequalityReport> {
    if t < 1 {
        return Err(ThetaError::InvalidArgument("t must be positive"));
    }
    let m = frac(2 * t, 3);
    let model = lattice_core::model();
    let mut counts = [0u64; 3];
    for (i, coset) in model.cosets.iter().enumerate() {
        let form = QuadForm::with_shift(&coset.gram, &coset.shift)?;
        let key = form
            .key_of_norm(&m)
            .ok_or(ThetaError::InvalidArgument("norm key overflow"))?;
        counts[i] = shortvec::count_with_key(&form, key);
    }
    let lhs = 10 * counts[1] as i64 + 15 * counts[2] as i64;
    let rhs = 4 * counts[0] as i64;
    let outcome = if t <= 20 || t % 3 != 2 {
        KeyInequalityOutcome::PreconditionUnmet
    } else if lhs < rhs {
        KeyInequalityOutcome::Holds
    } else {
        KeyInequalityOutcome::Fails
    };
    Ok(KeyInequalityReport {
        t,
        m,
        outcome,
        admitted_mod12: t % 12 == 2 || t % 12 == 11,
        admitted_mod4: t % 4 == 2 || t % 4 == 3,
        n1: counts[0],
        n2: counts[1],
        n3: counts[2],
        lhs,
        rhs,
        refinement: divisor_sum_refinement(t),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::coset_theta;

    #[test]
    fn congruence_preconditions() {
        // t = 3m/2: m = 4/3 → t = 2 (admitted everywhere).
        assert!(bound_m1_lower(&frac(4, 3)).is_ok());
        // m = 10/3 → t = 5 ≡ 5 (mod 12): rejected by the mod-12 bound only.
        assert!(bound_m1_lower(&frac(10, 3)).is_err());
        assert!(bound_m2_upper(&frac(10, 3)).is_ok());
        // m = 2 → t = 3 ≡ 0 (mod 3): rejected by the mod-3 bounds.
        assert!(bound_m2_upper(&rat(2)).is_err());
        assert!(bound_m3_upper(&rat(2)).is_err());
        // Non-integral t rejected outright.
        assert!(bound_m1_lower(&rat(1)).is_err());
    }

    #[test]
    fn bounds_sandwich_enumerated_counts() {
        // Spot-check the analytic bounds against exact counts for admitted
        // t ≤ 100 (the full range is exercised in the acceptance suite).
        let max_norm = frac(200, 3);
        let tables = [
            coset_theta(0, &max_norm).unwrap(),
            coset_theta(1, &max_norm).unwrap(),
            coset_theta(2, &max_norm).unwrap(),
        ];
        let mut checked_lower = 0;
        let mut checked_upper = 0;
        for t in 21..=100i64 {
            if t % 3 != 2 {
                continue;
            }
            let m = frac(2 * t, 3);
            let n = [tables[0].count(&m), tables[1].count(&m), tables[2].count(&m)];
            if t % 12 == 2 || t % 12 == 11 {
                let lower = bound_m1_lower(&m).unwrap();
                assert!(rat(n[0] as i64) >= *lower.hi(), "t = {t}: N1 = {}", n[0]);
                checked_lower += 1;
            }
            let upper2 = bound_m2_upper(&m).unwrap();
            let upper3 = bound_m3_upper(&m).unwrap();
            assert!(rat(n[1] as i64) <= *upper2.lo(), "t = {t}: N2 = {}", n[1]);
            assert!(rat(n[2] as i64) <= *upper3.lo(), "t = {t}: N3 = {}", n[2]);
            checked_upper += 1;
        }
        assert!(checked_lower >= 10);
        assert!(checked_upper >= 25);
    }

    #[test]
    fn key_inequality_small_t() {
        // First admitted t where the inequality holds is t = 23 (k = 46).
        let r = check_key_inequality(23).unwrap();
        assert_eq!(r.outcome, KeyInequalityOutcome::Holds);
        assert_eq!((r.n1, r.n2, r.n3), (600, 72, 72));
        assert_eq!(r.lhs, 10 * 72 + 15 * 72);
        assert_eq!(r.rhs, 2400);
        assert!(r.admitted_mod12);
        assert!(r.admitted_mod4);
        assert_eq!(r.refinement, None);

        // t = 21 ≡ 0 (mod 3): m = 14 is integral and the cosets are empty.
        let r = check_key_inequality(21).unwrap();
        assert_eq!(r.outcome, KeyInequalityOutcome::PreconditionUnmet);
        assert_eq!((r.n1, r.n2, r.n3), (0, 0, 0));

        // t = 20 ≡ 2 (mod 3) but ≤ 20, and the inequality genuinely fails.
        let r = check_key_inequality(20).unwrap();
        assert_eq!(r.outcome, KeyInequalityOutcome::PreconditionUnmet);
        assert_eq!((r.n1, r.n2, r.n3), (546, 126, 68));
        assert!(r.lhs > r.rhs);

        // t = 17 ≡ 2 (mod 3) but ≤ 20: also fails.
        let r = check_key_inequality(17).unwrap();
        assert_eq!(r.outcome, KeyInequalityOutcome::PreconditionUnmet);
        assert_eq!((r.n1, r.n2, r.n3), (420, 54, 80));
        assert!(r.lhs > r.rhs);
    }

    #[test]
    fn key_inequality_holds_past_threshold() {
        for t in [23i64, 26, 29, 35, 47, 50] {
            let r = check_key_inequality(t).unwrap();
            assert_eq!(r.outcome, KeyInequalityOutcome::Holds, "t = {t}");
        }
    }

    #[test]
    fn mod12_and_mod4_admission_differ() {
        // t = 26: 26 ≡ 2 (mod 12) and 26 ≡ 2 (mod 4) — both admit.
        let r = check_key_inequality(26).unwrap();
        assert!(r.admitted_mod12 && r.admitted_mod4);
        // t = 35: 35 ≡ 11 (mod 12), 35 ≡ 3 (mod 4) — both admit.
        let r = check_key_inequality(35).unwrap();
        assert!(r.admitted_mod12 && r.admitted_mod4);
        // t = 50 ≡ 2 (mod 12), ≡ 2 (mod 4).
        let r = check_key_inequality(50).unwrap();
        assert!(r.admitted_mod12 && r.admitted_mod4);
        // t = 29 ≡ 5 (mod 12), ≡ 1 (mod 4): admitted by neither grading even
        // though t ≡ 2 (mod 3) — the report keeps the two flags separate.
        let r = check_key_inequality(29).unwrap();
        assert!(!r.admitted_mod12 && !r.admitted_mod4);
        assert_eq!(r.outcome, KeyInequalityOutcome::Holds);
    }

    #[test]
    fn refinement_range() {
        assert_eq!(divisor_sum_refinement(999), None);
        assert_eq!(divisor_sum_refinement(8529), None);
        // Prime t = 1013: divisor sum 1 + 1/1013 ≈ 1.00099 vs
        // 0.444·(ln 1013 + 1) ≈ 3.52 — certified true.
        assert_eq!(divisor_sum_refinement(1013), Some(true));
        // Highly composite t = 7560 = 2³·3³·5·7: σ₋₁ = σ(7560)/7560 = 4.1…
        // vs 0.444·(ln 7560 + 1) ≈ 4.41 — still below, certified true.
        assert_eq!(divisor_sum_refinement(7560), Some(true));
    }
}

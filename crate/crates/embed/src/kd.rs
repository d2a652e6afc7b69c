//! The rank-21 signature-(2,19) lattice attached to a discriminant value
//! d = 6n or 6n + 2: the orthogonal direct sum of the rank-3 block
//! [[−2,1,0],[1,−2,ε],[0,ε,2n]] (ε = d mod 6 over 2) with U and two copies
//! of E8(−1).

use lattice_core::{bn_lattice, standard_lattice, Lattice};

use crate::errors::{EmbedError, Result};

/// Builds the rank-21 lattice for (n, d mod 6). Requires n ≥ 1, and n ≥ 2
/// when d ≡ 0 (mod 6).
pub fn build_kd_perp(n: i64, d_mod_6: u8) -> Result<Lattice> {
    let eps = match d_mod_6 {
        0 => 0u8,
        2 => 1u8,
        _ => {
            return Err(EmbedError::InvalidArgument(format!(
                "d_mod_6 must be 0 or 2, got {d_mod_6}"
            )))
        }
    };
    let min_n = if d_mod_6 == 0 { 2 } else { 1 };
    if n < min_n {
        return Err(EmbedError::InvalidArgument(format!(
            "n = {n} below minimum {min_n} for d ≡ {d_mod_6} (mod 6)"
        )));
    }
    let bn = bn_lattice(n as u64, eps)?;
    let u = standard_lattice("U")?;
    let e8m = standard_lattice("E8(-1)")?;
    let d = 6 * n + d_mod_6 as i64;
    Ok(Lattice::direct_sum(
        format!("Kd_perp(d={d})"),
        &[&bn, &u, &e8m, &e8m],
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use lattice_core::rat::rat;
    use num_bigint::BigInt;

    #[test]
    fn rank_and_signature() {
        for (n, m6) in [(1i64, 2u8), (2, 0), (20, 0), (20, 2), (100, 0)] {
            let lat = build_kd_perp(n, m6).unwrap();
            assert_eq!(lat.rank(), 21);
            assert_eq!(lat.signature(), (2, 19));
        }
    }

    #[test]
    fn determinant_matches_d() {
        // U and E8(−1) are unimodular, so |det| = |det B_n| = d.
        let lat = build_kd_perp(1, 2).unwrap();
        let det = lat.det();
        assert!(det == rat(8) || det == rat(-8), "det = {det}");
    }

    #[test]
    fn discriminant_group_is_z3_times_zd3() {
        // The group is Z/3 ⊕ Z/(d/3); with 3 ∤ d/3 that is cyclic of order
        // d, so the invariant-factor form is the single entry [d]. Compare
        // in canonical form by running diag(3, d/3) through the same Smith
        // reduction.
        for n in [2i64, 20, 100] {
            let d = 6 * n;
            let lat = build_kd_perp(n, 0).unwrap();
            let inv = lat.discriminant_group().unwrap();
            let canonical = lattice_core::intmat::smith_invariants(&[
                vec![BigInt::from(3), BigInt::from(0)],
                vec![BigInt::from(0), BigInt::from(d / 3)],
            ]);
            assert_eq!(inv, canonical, "n = {n}");
            assert_eq!(inv, vec![BigInt::from(d)], "n = {n}: cyclic of order d");
        }
    }

    #[test]
    fn parameter_validation() {
        assert!(build_kd_perp(0, 2).is_err());
        assert!(build_kd_perp(1, 0).is_err(), "d ≡ 0 needs n ≥ 2");
        assert!(build_kd_perp(5, 1).is_err());
    }
}

//! Root counts in two distinguished orthogonal complements inside E8.
//!
//! The first complement is taken against the span of a1, a2, s1, s2, s3
//! (rank 5); the second against the span of a1 + a2, s1, s2, s3 (rank 4).
//! Both are positive definite, and the number of norm-2 vectors in each is
//! what downstream uniqueness arguments consume: exactly one ± pair in the
//! first, strictly more than one pair in the second.

use lattice_core::rat::Rat;
use lattice_core::{model, Lattice, Sublattice};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use shortvec::{count_with_key, QuadForm};

use crate::errors::{EmbedError, Result};

fn e8_coords_i64(v: &[Rat]) -> Result<Vec<i64>> {
    let m = model();
    let coords: Vec<BigInt> = m
        .e8_coords(v)
        .ok_or_else(|| EmbedError::Internal("vector not in E8".into()))?;
    coords
        .iter()
        .map(|c| {
            c.to_i64()
                .ok_or_else(|| EmbedError::Internal("E8 coordinate overflow".into()))
        })
        .collect()
}

fn norm2_count(lat: &Lattice) -> Result<u64> {
    let form = QuadForm::new(lat.gram()).map_err(EmbedError::Enumeration)?;
    let key = form
        .key_of_norm(&Rat::from_integer(BigInt::from(2)))
        .ok_or_else(|| EmbedError::Internal("norm 2 not representable by key".into()))?;
    Ok(count_with_key(&form, key))
}

/// Counts norm-2 vectors in the two complements. Returns
/// (count for {a1,a2,s1,s2,s3}^⊥, count for {a1+a2,s1,s2,s3}^⊥).
pub fn lemma68_counts() -> Result<(u64, u64)> {
    let m = model();
    let ambient = Lattice::new("E8", m.e8_gram_rat.clone())?;

    let a1a2: Vec<Rat> = m
        .a1
        .iter()
        .zip(m.a2.iter())
        .map(|(x, y)| x.clone() + y.clone())
        .collect();

    let rows_full: Vec<Vec<i64>> = [&m.a1, &m.a2, &m.s[0], &m.s[1], &m.s[2]]
        .iter()
        .map(|v| e8_coords_i64(v))
        .collect::<Result<_>>()?;
    let rows_merged: Vec<Vec<i64>> = [&a1a2, &m.s[0], &m.s[1], &m.s[2]]
        .iter()
        .map(|v| e8_coords_i64(v))
        .collect::<Result<_>>()?;

    let comp_full = Sublattice::from_ints(ambient.clone(), &rows_full)?
        .orthogonal_complement()?
        .as_lattice("comp(a1,a2,s1,s2,s3)")?;
    let comp_merged = Sublattice::from_ints(ambient, &rows_merged)?
        .orthogonal_complement()?
        .as_lattice("comp(a1+a2,s1,s2,s3)")?;

    Ok((norm2_count(&comp_full)?, norm2_count(&comp_merged)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_expected() {
        let (full, merged) = lemma68_counts().unwrap();
        assert_eq!(full, 2, "rank-3 complement has one ± pair of roots");
        assert_eq!(merged, 8);
        assert!(merged > 2);
    }
}

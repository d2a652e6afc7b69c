//! Root classification for a candidate (α, β, v).
//!
//! Iterates the 36 ± classes of roots r in the rank-6 root lattice and sorts
//! them by the divisibility of (v, r):
//!
//! * (v, r) = 0 — the pair ±r itself survives into the complement (Type I);
//! * (v, r) ≡ 0 (mod β), (v, r) ≠ 0 — a class with e-coefficient (v, r)/β
//!   and zero f-coefficient (Type II);
//! * (v, r) ≡ 0 (mod α), (v, r) ≠ 0 — a class with f-coefficient (v, r)/α
//!   and zero e-coefficient (Type III);
//! * both divisibilities — one Type II and one Type III class (adds 2).
//!
//! When α = β the diagonal pair ±(e − f) is orthogonal to everything relevant
//! and contributes one extra class.

use lattice_core::model::{dot6, scale6};
use lattice_core::rat::Rat;

use crate::certificate::TypeCounts;
use crate::errors::{EmbedError, Result};

/// Classifies the root classes that the embedding attached to (α, β, v)
/// forces into the orthogonal complement.
pub fn classify_roots(alpha: i64, beta: i64, v: &[Rat]) -> Result<TypeCounts> {
    if alpha < 1 || beta < 1 {
        return Err(EmbedError::InvalidArgument(
            "alpha and beta must be positive".into(),
        ));
    }
    let v6 = scale6(v).ok_or_else(|| {
        EmbedError::InvalidArgument("v must have 8 coordinates with denominators dividing 6".into())
    })?;
    let mut counts = TypeCounts::default();
    for rep in &lattice_core::model().e6_root_reps_x6 {
        let raw = dot6(&v6, rep);
        if raw % 36 != 0 {
            return Err(EmbedError::NonIntegralPairing(format!(
                "(v, r) = {raw}/36 for a root class"
            )));
        }
        let b = raw / 36;
        if b == 0 {
            counts.type_i += 1;
            continue;
        }
        if b % beta == 0 {
            counts.type_ii += 1;
        }
        if b % alpha == 0 {
            counts.type_iii += 1;
        }
    }
    if alpha == beta {
        counts.diag_extra = 1;
    }
    Ok(counts)
}

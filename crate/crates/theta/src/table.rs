//! Theta-coefficient tables for lattices and shifted lattices (cosets), and
//! the signed combination 4N₁ − 10N₂ − 15N₃ of the three coset series.
//!
//! Counts index by norm m; the combination is tabulated against k = 3m at
//! k ≡ 4 (mod 6), the residues where the cosets have vectors. Positivity of
//! the combination at k is equivalent to 10N₂ + 15N₃ < 4N₁ at m = k/3.

use std::collections::BTreeMap;
use std::io::{self, Write};

use lattice_core::rat::{frac, rat, Rat};
use lattice_core::{Definiteness, Lattice};
use num_traits::{ToPrimitive, Zero};
use shortvec::QuadForm;

use crate::errors::{Result, ThetaError};

/// How a table's counts were produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableSource {
    Enumeration,
    Formula,
}

/// Counts N(m) of vectors of each norm m up to `max_norm`.
///
/// Norms absent from `entries` have count zero. A lattice table contains
/// N(0) = 1; a proper coset contains no zero vector, so N(0) = 0.
#[derive(Debug, Clone)]
pub struct ThetaTable {
    pub entries: BTreeMap<Rat, u64>,
    pub source: TableSource,
    pub max_norm: Rat,
}

impl ThetaTable {
    /// N(m). Panics if `m` exceeds the enumerated range.
    pub fn count(&self, m: &Rat) -> u64 {
        assert!(
            m <= &self.max_norm,
            "norm {m} beyond enumerated bound {}",
            self.max_norm
        );
        self.entries.get(m).copied().unwrap_or(0)
    }
}

fn enumerate_table(form: &QuadForm, max_norm: &Rat, include_zero: bool) -> ThetaTable {
    let scale3 = rat(form.scale()).pow(3);
    let max_key = (max_norm * &scale3).floor().numer().to_i64().expect("key overflow");
    let mut entries = BTreeMap::new();
    if include_zero {
        entries.insert(Rat::zero(), 1);
    }
    for (key, count) in form.count_norms_parallel(max_key) {
        if key == 0 {
            continue; // the zero vector is accounted for by `include_zero`
        }
        entries.insert(form.norm_of_key(key), count);
    }
    ThetaTable { entries, source: TableSource::Enumeration, max_norm: max_norm.clone() }
}

/// Theta coefficients of a positive- or negative-definite lattice up to
/// `max_norm` (norms taken in the positive-definite model).
pub fn lattice_theta(lattice: &Lattice, max_norm: &Rat) -> Result<ThetaTable> {
    if lattice.definiteness() == Definiteness::Indefinite {
        return Err(ThetaError::InvalidArgument(
            "theta coefficients require a definite lattice",
        ));
    }
    let form = QuadForm::new(lattice.gram())?;
    Ok(enumerate_table(&form, max_norm, true))
}

/// Theta coefficients of the shifted lattice (coset) `M_i + w`, for
/// i = `index` ∈ {0, 1, 2}, up to `max_norm`.
pub fn coset_theta(index: usize, max_norm: &Rat) -> Result<ThetaTable> {
    let coset = &lattice_core::model().cosets[index];
    let form = QuadForm::with_shift(&coset.gram, &coset.shift)?;
    Ok(enumerate_table(&form, max_norm, false))
}

/// One row of the combination table at k = 3m.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CombinationRow {
    pub k: i64,
    pub n1: u64,
    pub n2: u64,
    pub n3: u64,
    /// 4N₁ − 10N₂ − 15N₃ at m = k/3.
    pub combination: i64,
}

/// Combination rows for k ≡ 4 (mod 6), 4 ≤ k ≤ `k_max`.
pub fn combination_rows(k_max: i64) -> Result<Vec<CombinationRow>> {
    if k_max < 4 {
        return Err(ThetaError::InvalidArgument("k_max must be at least 4"));
    }
    let max_norm = frac(k_max, 3);
    let tables = [
        coset_theta(0, &max_norm)?,
        coset_theta(1, &max_norm)?,
        coset_theta(2, &max_norm)?,
    ];
    let mut rows = Vec::new();
    let mut k = 4;
    while k <= k_max {
        let m = frac(k, 3);
        let n = [tables[0].count(&m), tables[1].count(&m), tables[2].count(&m)];
        rows.push(CombinationRow {
            k,
            n1: n[0],
            n2: n[1],
            n3: n[2],
            combination: 4 * n[0] as i64 - 10 * n[1] as i64 - 15 * n[2] as i64,
        });
        k += 6;
    }
    Ok(rows)
}

/// Writes combination rows as CSV with header `k,N1,N2,N3,combination`.
pub fn write_combination_csv<W: Write>(rows: &[CombinationRow], out: &mut W) -> io::Result<()> {
    writeln!(out, "k,N1,N2,N3,combination")?;
    for r in rows {
        writeln!(out, "{},{},{},{},{}", r.k, r.n1, r.n2, r.n3, r.combination)?;
    }
    Ok(())
}

//! Finite-index and primitive sublattices given by explicit bases.

use crate::intmat::kernel_basis;
use crate::lattice::Lattice;
use crate::matrix::{self, RatMat};
use crate::rat::{is_integer, Rat};
use crate::{LatticeError, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A sublattice of an ambient lattice, spanned by the rows of `basis`
/// (coordinates in the ambient basis, linearly independent over Q).
#[derive(Debug, Clone)]
pub struct Sublattice {
    ambient: Lattice,
    basis: RatMat,
}

fn rows_integral(rows: &RatMat) -> bool {
    rows.iter().flatten().all(is_integer)
}

fn to_int_rows(rows: &RatMat) -> Result<Vec<Vec<BigInt>>> {
    if !rows_integral(rows) {
        return Err(LatticeError::NotIntegral("integer basis required"));
    }
    Ok(rows
        .iter()
        .map(|r| r.iter().map(|x| x.numer().clone()).collect())
        .collect())
}

/// Clear denominators of one row, returning an integer row with the same kernel.
fn scale_row_to_int(row: &[Rat]) -> Vec<BigInt> {
    let lcm = crate::rat::denominator_lcm(row.iter());
    row.iter()
        .map(|x| {
            let scaled = x * Rat::from_integer(lcm.clone());
            debug_assert!(scaled.denom().is_one());
            scaled.numer().clone()
        })
        .collect()
}

impl Sublattice {
    pub fn new(ambient: Lattice, basis: RatMat) -> Result<Self> {
        let n = ambient.rank();
        for row in &basis {
            if row.len() != n {
                return Err(LatticeError::WrongDimension { expected: n, got: row.len() });
            }
        }
        if matrix::rank(&basis) != basis.len() {
            return Err(LatticeError::DependentBasis);
        }
        Ok(Sublattice { ambient, basis })
    }

    /// Convenience constructor from integer coordinate rows.
    pub fn from_ints(ambient: Lattice, rows: &[Vec<i64>]) -> Result<Self> {
        let basis: RatMat = rows
            .iter()
            .map(|r| r.iter().map(|&x| crate::rat::rat(x)).collect())
            .collect();
        Sublattice::new(ambient, basis)
    }

    pub fn ambient(&self) -> &Lattice {
        &self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &RatMat {
        &self.basis
    }

    /// Gram matrix of the pairing restricted to this sublattice (true sign).
    pub fn induced_gram(&self) -> RatMat {
        let g = self.ambient.signed_gram();
        let k = self.rank();
        let mut out = vec![vec![Rat::zero(); k]; k];
        for i in 0..k {
            for j in i..k {
                let mut acc = Rat::zero();
                for (a, ga) in self.basis[i].iter().zip(g.iter()) {
                    if a.is_zero() {
                        continue;
                    }
                    for (b, gab) in self.basis[j].iter().zip(ga.iter()) {
                        if !b.is_zero() {
                            acc += a * gab * b;
                        }
                    }
                }
                out[i][j] = acc.clone();
                out[j][i] = acc;
            }
        }
        out
    }

    /// Package the induced form as a lattice in its own right.
    pub fn as_lattice(&self, label: impl Into<String>) -> Result<Lattice> {
        Lattice::new(label, self.induced_gram()).map_err(|e| match e {
            LatticeError::Degenerate => LatticeError::DegenerateInducedForm,
            other => other,
        })
    }

    /// The saturated sublattice of all ambient vectors orthogonal to this one.
    pub fn orthogonal_complement(&self) -> Result<Sublattice> {
        let n = self.ambient.rank();
        let g = self.ambient.stored_gram();
        // One pairing row per basis vector: (row)_j = (b_i, e_j).
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(self.rank());
        for b in &self.basis {
            let mut row: Vec<Rat> = Vec::with_capacity(n);
            for j in 0..n {
                let mut acc = Rat::zero();
                for (bi, gi) in b.iter().zip(g.iter()) {
                    if !bi.is_zero() {
                        acc += bi * &gi[j];
                    }
                }
                row.push(acc);
            }
            rows.push(scale_row_to_int(&row));
        }
        let ker = kernel_basis(&rows, n);
        let basis: RatMat = ker
            .into_iter()
            .map(|v| v.into_iter().map(Rat::from_integer).collect())
            .collect();
        Sublattice::new(self.ambient.clone(), basis)
    }

    /// Smallest saturated (primitive) sublattice containing this one.
    /// Requires integer basis coordinates.
    pub fn saturation(&self) -> Result<Sublattice> {
        let n = self.ambient.rank();
        let rows = to_int_rows(&self.basis)?;
        let ker = kernel_basis(&rows, n);
        let ker_rows: Vec<Vec<BigInt>> = ker;
        let sat = kernel_basis(&ker_rows, n);
        let basis: RatMat = sat
            .into_iter()
            .map(|v| v.into_iter().map(Rat::from_integer).collect())
            .collect();
        Sublattice::new(self.ambient.clone(), basis)
    }

    /// Index of this sublattice inside its saturation.
    pub fn saturation_index(&self) -> Result<BigInt> {
        let sat = self.saturation()?;
        let k = self.rank();
        debug_assert_eq!(sat.rank(), k);
        // Coordinates of our basis vectors in the saturation basis.
        let sat_t = matrix::transpose(&sat.basis);
        let mut coords = vec![vec![Rat::zero(); k]; k];
        for (i, b) in self.basis.iter().enumerate() {
            let c = matrix::solve(&sat_t, b)?;
            coords[i] = c;
        }
        let d = matrix::det(&coords);
        debug_assert!(is_integer(&d), "saturation coordinates must be integral");
        Ok(d.numer().abs())
    }

    /// Coordinates of an ambient vector in this sublattice's basis, if it lies
    /// in the Q-span.
    pub fn coords_of(&self, x: &[Rat]) -> Option<Vec<Rat>> {
        if x.len() != self.ambient.rank() {
            return None;
        }
        let basis_t = matrix::transpose(&self.basis);
        matrix::solve(&basis_t, x).ok()
    }

    /// Whether an ambient vector lies in the Z-span of the basis.
    pub fn member(&self, x: &[Rat]) -> bool {
        match self.coords_of(x) {
            Some(c) => c.iter().all(is_integer),
            None => false,
        }
    }
}

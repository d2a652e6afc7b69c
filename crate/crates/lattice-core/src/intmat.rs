//! Exact integer linear algebra: saturated kernels and Smith normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Basis of the saturated kernel `{x in Z^n : A x = 0}` of an integer matrix
/// given as `rows` (each of length `n`).
///
/// Column-reduction with a tracked unimodular transform: we reduce each row in
/// turn by gcd steps on columns, so the final untouched columns of the
/// transform span the kernel. Unimodularity of the column operations makes the
/// returned basis a basis of the full (saturated) kernel lattice, not a
/// finite-index sublattice of it.
pub fn kernel_basis(rows: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    let m = rows.len();
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    for row in &a {
        assert_eq!(row.len(), n, "kernel_basis: ragged input row");
    }
    // u tracks column operations: columns cur.. of u span the current kernel.
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect();
    let mut cur = 0usize;
    for r in 0..m {
        loop {
            let nz: Vec<usize> = (cur..n).filter(|&j| !a[r][j].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            let j0 = *nz
                .iter()
                .min_by_key(|&&j| a[r][j].abs())
                .expect("nonempty");
            for &j in &nz {
                if j == j0 {
                    continue;
                }
                let q = a[r][j].div_floor(&a[r][j0]);
                if q.is_zero() {
                    continue;
                }
                for i in 0..m {
                    let s = &q * &a[i][j0];
                    a[i][j] -= s;
                }
                for i in 0..n {
                    let s = &q * &u[i][j0];
                    u[i][j] -= s;
                }
            }
        }
        if let Some(j0) = (cur..n).find(|&j| !a[r][j].is_zero()) {
            if j0 != cur {
                for row in a.iter_mut() {
                    row.swap(cur, j0);
                }
                for row in u.iter_mut() {
                    row.swap(cur, j0);
                }
            }
            cur += 1;
        }
    }
    (cur..n)
        .map(|j| (0..n).map(|i| u[i][j].clone()).collect())
        .collect()
}

/// Nontrivial invariant factors (each > 1, in divisibility order) of the
/// cokernel `Z^n / A Z^n` of a square integer matrix — i.e. the abelian-group
/// invariants read off the Smith normal form.
pub fn smith_invariants(mat: &[Vec<BigInt>]) -> Vec<BigInt> {
    let rows = mat.len();
    let cols = if rows > 0 { mat[0].len() } else { 0 };
    let mut a: Vec<Vec<BigInt>> = mat.to_vec();
    let mut diag: Vec<BigInt> = Vec::new();
    let mut top = 0usize;
    while top < rows && top < cols {
        // Find the entry of smallest absolute value in the active block.
        let mut best: Option<(usize, usize)> = None;
        for i in top..rows {
            for j in top..cols {
                if !a[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(top, bi);
        for row in a.iter_mut() {
            row.swap(top, bj);
        }
        // Clear row and column `top` by Euclidean steps.
        let mut dirty = true;
        while dirty {
            dirty = false;
            for i in (top + 1)..rows {
                if a[i][top].is_zero() {
                    continue;
                }
                let q = a[i][top].div_floor(&a[top][top]);
                for j in top..cols {
                    let s = &q * &a[top][j];
                    a[i][j] -= s;
                }
                if !a[i][top].is_zero() {
                    a.swap(top, i);
                    dirty = true;
                }
            }
            for j in (top + 1)..cols {
                if a[top][j].is_zero() {
                    continue;
                }
                let q = a[top][j].div_floor(&a[top][top]);
                for i in top..rows {
                    let s = &q * &a[i][top];
                    a[i][j] -= s;
                }
                if !a[top][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(top, j);
                    }
                    dirty = true;
                }
            }
        }
        // Enforce divisibility: the pivot must divide every remaining entry.
        let mut offender = None;
        'scan: for i in (top + 1)..rows {
            for j in (top + 1)..cols {
                if !(&a[i][j] % &a[top][top]).is_zero() {
                    offender = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(i) = offender {
            for j in top..cols {
                let add = a[i][j].clone();
                a[top][j] += add;
            }
            continue; // redo the elimination at the same pivot position
        }
        diag.push(a[top][top].abs());
        top += 1;
    }
    diag.retain(|d| d > &BigInt::from(1));
    diag
}

//! Dense exact rational matrix helpers (small dimensions).

use crate::rat::Rat;
use crate::{LatticeError, Result};
use num_traits::{One, Signed, Zero};

/// Rational matrix stored as rows.
pub type RatMat = Vec<Vec<Rat>>;

/// Check that `m` is square and symmetric.
pub fn check_symmetric(m: &RatMat) -> Result<()> {
    let n = m.len();
    for (i, row) in m.iter().enumerate() {
        if row.len() != n {
            return Err(LatticeError::NotSquare { rows: n, cols: row.len(), row: i });
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if m[i][j] != m[j][i] {
                return Err(LatticeError::NotSymmetric { i, j });
            }
        }
    }
    Ok(())
}

/// Exact determinant by fraction Gaussian elimination with partial pivoting.
pub fn det(m: &RatMat) -> Rat {
    let n = m.len();
    let mut a: RatMat = m.to_vec();
    let mut result = Rat::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rat::zero();
        };
        if piv != col {
            a.swap(piv, col);
            result = -result;
        }
        let p = a[col][col].clone();
        result *= &p;
        for r in (col + 1)..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for c in col..n {
                let sub = &f * &a[col][c];
                a[r][c] -= sub;
            }
        }
    }
    result
}

/// Exact inverse; `None` if singular.
pub fn inverse(m: &RatMat) -> Option<RatMat> {
    let n = m.len();
    let mut a: RatMat = m.to_vec();
    let mut inv: RatMat = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(piv, col);
        inv.swap(piv, col);
        let p = a[col][col].clone();
        for c in 0..n {
            a[col][c] /= &p;
            inv[col][c] /= &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..n {
                    let s1 = &f * &a[col][c];
                    a[r][c] -= s1;
                    let s2 = &f * &inv[col][c];
                    inv[r][c] -= s2;
                }
            }
        }
    }
    Some(inv)
}

/// Solve `A x = b` exactly over the rationals where `A` is given by rows and
/// may be overdetermined; returns `Err(Inconsistent)` when no solution exists.
/// Free variables (if any) are set to zero.
pub fn solve(a: &RatMat, b: &[Rat]) -> Result<Vec<Rat>> {
    let m = a.len();
    if m == 0 {
        return Ok(Vec::new());
    }
    let n = a[0].len();
    let mut aug: RatMat = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0usize;
    for c in 0..n {
        let Some(p) = (r..m).find(|&i| !aug[i][c].is_zero()) else { continue };
        aug.swap(p, r);
        let pv = aug[r][c].clone();
        for x in aug[r].iter_mut() {
            *x /= &pv;
        }
        for i in 0..m {
            if i != r && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for cc in 0..=n {
                    let s = &f * &aug[r][cc];
                    aug[i][cc] -= s;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m {
            break;
        }
    }
    for i in r..m {
        if !aug[i][n].is_zero() {
            return Err(LatticeError::Inconsistent);
        }
    }
    let mut x = vec![Rat::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = aug[i][n].clone();
    }
    Ok(x)
}

/// Matrix product of rational matrices given by rows.
/// Rank over Q via Gaussian elimination on a working copy.
pub fn rank(m: &RatMat) -> usize {
    let rows = m.len();
    let cols = if rows > 0 { m[0].len() } else { 0 };
    let mut a = m.to_vec();
    let mut r = 0usize;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in (r + 1)..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &a[r][c];
            for j in c..cols {
                let t = &f * &a[r][j];
                a[i][j] -= t;
            }
        }
        r += 1;
    }
    r
}

pub fn mul(a: &RatMat, b: &RatMat) -> RatMat {
    let n = a.len();
    let k = if n > 0 { a[0].len() } else { 0 };
    let m = if !b.is_empty() { b[0].len() } else { 0 };
    let mut out = vec![vec![Rat::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[l][j].is_zero() {
                    let t = &a[i][l] * &b[l][j];
                    out[i][j] += t;
                }
            }
        }
    }
    out
}

/// Transpose.
pub fn transpose(a: &RatMat) -> RatMat {
    if a.is_empty() {
        return Vec::new();
    }
    let n = a.len();
    let m = a[0].len();
    (0..m).map(|j| (0..n).map(|i| a[i][j].clone()).collect()).collect()
}

/// Signature `(positive, negative, zero)` of a symmetric rational matrix,
/// computed exactly by congruence diagonalization (Sylvester's law).
pub fn signature_of_symmetric(m: &RatMat) -> (usize, usize, usize) {
    let n = m.len();
    let mut a: RatMat = m.to_vec();
    let mut active: Vec<usize> = (0..n).collect();
    let (mut pos, mut neg, mut zero) = (0usize, 0usize, 0usize);
    while let Some(&first) = active.first() {
        // Prefer a nonzero diagonal pivot; otherwise manufacture one from a
        // nonzero off-diagonal pair by the congruence x_i := x_i + x_j.
        let diag_pivot = active.iter().copied().find(|&i| !a[i][i].is_zero());
        let i = match diag_pivot {
            Some(i) => i,
            None => {
                let mut found = None;
                'outer: for (ai, &i) in active.iter().enumerate() {
                    for &j in active.iter().skip(ai + 1) {
                        if !a[i][j].is_zero() {
                            found = Some((i, j));
                            break 'outer;
                        }
                    }
                }
                match found {
                    None => {
                        zero += active.len();
                        break;
                    }
                    Some((i, j)) => {
                        for k in 0..n {
                            let add = a[j][k].clone();
                            a[i][k] += add;
                        }
                        for k in 0..n {
                            let add = a[k][j].clone();
                            a[k][i] += add;
                        }
                        i
                    }
                }
            }
        };
        let piv = a[i][i].clone();
        if piv.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        let others: Vec<usize> = active.iter().copied().filter(|&k| k != i).collect();
        for &k in &others {
            if a[k][i].is_zero() {
                continue;
            }
            let f = &a[k][i] / &piv;
            for l in 0..n {
                let s = &f * &a[i][l];
                a[k][l] -= s;
            }
            for l in 0..n {
                let s = &f * &a[l][i];
                a[l][k] -= s;
            }
        }
        active = others;
        let _ = first;
    }
    (pos, neg, zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, rat};

    fn m2(a: i64, b: i64, c: i64, d: i64) -> RatMat {
        vec![vec![rat(a), rat(b)], vec![rat(c), rat(d)]]
    }

    #[test]
    fn det_and_inverse() {
        let u = m2(0, 1, 1, 0);
        assert_eq!(det(&u), rat(-1));
        let a2 = m2(2, -1, -1, 2);
        assert_eq!(det(&a2), rat(3));
        let inv = inverse(&a2).unwrap();
        assert_eq!(inv[0][0], frac(2, 3));
        assert_eq!(inv[0][1], frac(1, 3));
        assert_eq!(mul(&a2, &inv), m2(1, 0, 0, 1));
    }

    #[test]
    fn solve_overdetermined() {
        // x = (1, 1/2) satisfies all three equations.
        let a = vec![
            vec![rat(1), rat(0)],
            vec![rat(0), rat(2)],
            vec![rat(1), rat(2)],
        ];
        let b = vec![rat(1), rat(1), rat(2)];
        assert_eq!(solve(&a, &b).unwrap(), vec![rat(1), frac(1, 2)]);
        let bad = vec![rat(1), rat(1), rat(5)];
        assert!(solve(&a, &bad).is_err());
    }

    #[test]
    fn signatures() {
        assert_eq!(signature_of_symmetric(&m2(0, 1, 1, 0)), (1, 1, 0));
        assert_eq!(signature_of_symmetric(&m2(2, -1, -1, 2)), (2, 0, 0));
        assert_eq!(signature_of_symmetric(&m2(-2, 1, 1, -2)), (0, 2, 0));
        let singular = m2(1, 1, 1, 1);
        assert_eq!(signature_of_symmetric(&singular), (1, 0, 1));
    }
}

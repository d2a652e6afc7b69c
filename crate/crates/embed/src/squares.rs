//! Sums of three nonzero squares.
//!
//! A positive integer m has a representation m = x₁² + x₂² + x₃² with all
//! xᵢ ≥ 1 unless m ∈ 4^a·(8b + 7) (no three-square representation at all) or
//! m = 4^a·k for k in a finite exceptional list where every representation
//! needs a zero.

/// k such that 4^a·k admits no three-nonzero-square representation even
/// though it is a sum of three squares.
pub const NONZERO_EXCEPTIONS: [i64; 10] = [1, 2, 5, 10, 13, 25, 37, 58, 85, 130];

/// All decompositions m = x₁² + x₂² + x₃² with 1 ≤ x₁ ≤ x₂ ≤ x₃, in
/// lexicographic order.
pub fn three_square_decompositions(m: i64) -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    let mut x1 = 1i64;
    while 3 * x1 * x1 <= m {
        let rest1 = m - x1 * x1;
        let mut x2 = x1;
        while 2 * x2 * x2 <= rest1 {
            let rest2 = rest1 - x2 * x2;
            let x3 = (rest2 as f64).sqrt() as i64;
            for c in [x3 - 1, x3, x3 + 1] {
                if c >= x2 && c * c == rest2 {
                    out.push((x1, x2, c));
                }
            }
            x2 += 1;
        }
        x1 += 1;
    }
    out
}

/// First decomposition of m into three nonzero squares, if any.
pub fn three_nonzero_squares(m: i64) -> Option<(i64, i64, i64)> {
    assert!(m >= 1);
    three_square_decompositions(m).into_iter().next()
}

/// Predicts emptiness of [`three_nonzero_squares`] from the closed
/// characterization: m = 4^a(8b+7) or m = 4^a·k with k exceptional.
pub fn is_three_nonzero_square_exception(m: i64) -> bool {
    assert!(m >= 1);
    let mut core = m;
    while core % 4 == 0 {
        core /= 4;
    }
    core % 8 == 7 || NONZERO_EXCEPTIONS.contains(&core)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(three_nonzero_squares(3), Some((1, 1, 1)));
        assert_eq!(three_nonzero_squares(7), None); // 7 ≡ 7 (mod 8)
        assert_eq!(three_nonzero_squares(130), None); // exceptional k
        assert_eq!(three_nonzero_squares(11), Some((1, 1, 3)));
        assert_eq!(
            three_square_decompositions(62),
            vec![(1, 5, 6), (2, 3, 7)]
        );
    }

    #[test]
    fn characterization_matches_brute_force() {
        for m in 1..=2000 {
            let found = three_nonzero_squares(m).is_some();
            assert_eq!(
                found,
                !is_three_nonzero_square_exception(m),
                "m = {m}"
            );
        }
    }

    #[test]
    fn decompositions_are_sorted_and_exact() {
        for m in [50i64, 59, 300, 1001] {
            let ds = three_square_decompositions(m);
            for w in ds.windows(2) {
                assert!(w[0] < w[1], "lexicographic order");
            }
            for (a, b, c) in ds {
                assert!(1 <= a && a <= b && b <= c);
                assert_eq!(a * a + b * b + c * c, m);
            }
        }
    }
}

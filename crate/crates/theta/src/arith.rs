//! Elementary number-theoretic helpers: Jacobi/Kronecker symbols, divisor
//! lists, squarefree decompositions.

/// Jacobi symbol (a/n) for odd n ≥ 1.
pub fn jacobi(a: i64, n: i64) -> i64 {
    assert!(n > 0 && n % 2 == 1, "jacobi needs odd positive n");
    let mut a = a.rem_euclid(n);
    let mut n = n;
    let mut result = 1i64;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a = a.rem_euclid(n);
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Kronecker symbol (a/n), for all integers n.
///
/// The even-`a` case is delicate: (a/n) = 0 whenever a and n share the
/// factor 2, regardless of the 2-adic valuation of n.
pub fn kronecker(a: i64, n: i64) -> i64 {
    if n == 0 {
        return if a.abs() == 1 { 1 } else { 0 };
    }
    let mut n = n;
    let mut sign = 1i64;
    if n < 0 {
        n = -n;
        if a < 0 {
            sign = -1;
        }
    }
    let mut v = 0u32;
    while n % 2 == 0 {
        n /= 2;
        v += 1;
    }
    if v > 0 {
        if a % 2 == 0 {
            return 0;
        }
        if v % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            sign = -sign;
        }
    }
    if n > 1 {
        sign * jacobi(a.rem_euclid(n), n)
    } else {
        sign
    }
}

/// p-adic valuation of a nonzero integer.
pub fn vp(mut n: i64, p: i64) -> u32 {
    assert!(n != 0);
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Sorted positive divisors.
pub fn divisors(t: i64) -> Vec<i64> {
    assert!(t > 0);
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= t {
        if t % d == 0 {
            small.push(d);
            if d * d != t {
                large.push(t / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Möbius function.
pub fn moebius(mut n: i64) -> i64 {
    assert!(n > 0);
    let mut k = 0;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            k += 1;
        }
        p += 1;
    }
    if n > 1 {
        k += 1;
    }
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Fundamental discriminant of Q(√t) for t ≥ 1: strip square factors, then
/// apply the mod-4 normalization.
pub fn fund_disc_of_sqrt(t: i64) -> i64 {
    assert!(t >= 1);
    let mut t0 = t;
    let mut d = 2;
    while d * d <= t0 {
        while t0 % (d * d) == 0 {
            t0 /= d * d;
        }
        d += 1;
    }
    if t0 % 4 == 1 {
        t0
    } else {
        4 * t0
    }
}

/// Write t = t_B·t₁·t₂² with t_B | 6^∞ and t₁ squarefree coprime to 6;
/// return t₂.
pub fn t2_of(t: i64) -> i64 {
    assert!(t >= 1);
    let mut rest = t;
    for p in [2, 3] {
        while rest % p == 0 {
            rest /= p;
        }
    }
    let mut t2 = 1;
    let mut d = 2;
    while d * d <= rest {
        while rest % (d * d) == 0 {
            rest /= d * d;
            t2 *= d;
        }
        d += 1;
    }
    t2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobi_basics() {
        assert_eq!(jacobi(1, 1), 1);
        assert_eq!(jacobi(2, 15), 1);
        assert_eq!(jacobi(7, 15), -1); // (7/3)(7/5) = (1/3)(2/5) = 1·(−1)
        assert_eq!(jacobi(3, 9), 0);
        assert_eq!(jacobi(-1, 5), 1);
        assert_eq!(jacobi(-1, 7), -1);
    }

    #[test]
    fn kronecker_even_entries_vanish_for_even_n() {
        // Regression guard: an even numerator shares the factor 2 with any
        // even n, so the symbol must be 0 for every 2-adic valuation of n.
        for n in [2, 4, 6, 8, 12, 16, 48] {
            assert_eq!(kronecker(432, n), 0, "n = {n}");
            assert_eq!(kronecker(324, n), 0, "n = {n}");
            assert_eq!(kronecker(12, n), 0, "n = {n}");
        }
        assert_eq!(kronecker(432, 1), 1);
        assert_eq!(kronecker(432, 5), kronecker(12, 5));
        // χ₄₃₂ and χ₁₂ agree everywhere (432 = 12·6²).
        for n in 1..400 {
            assert_eq!(kronecker(432, n), kronecker(12, n), "n = {n}");
        }
    }

    #[test]
    fn kronecker_periodicity() {
        // For D ≡ 0 mod 4 the symbol is periodic with period |D|.
        for d in [324i64, 432, 12, 8, -4] {
            let p = d.abs();
            for n in 1..200 {
                assert_eq!(kronecker(d, n), kronecker(d, n + p), "d={d} n={n}");
            }
        }
    }

    #[test]
    fn divisor_and_moebius_tables() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(23), vec![1, 23]);
        assert_eq!(moebius(1), 1);
        assert_eq!(moebius(6), 1);
        assert_eq!(moebius(30), -1);
        assert_eq!(moebius(12), 0);
    }

    #[test]
    fn discriminants_and_square_parts() {
        assert_eq!(fund_disc_of_sqrt(2), 8);
        assert_eq!(fund_disc_of_sqrt(5), 5);
        assert_eq!(fund_disc_of_sqrt(8), 8);
        assert_eq!(fund_disc_of_sqrt(12), 12); // 12 → squarefree 3 → 4·3
        assert_eq!(fund_disc_of_sqrt(50), 8);
        assert_eq!(t2_of(23), 1);
        assert_eq!(t2_of(2 * 9 * 25), 5); // 6-part stripped first
        assert_eq!(t2_of(49 * 3), 7);
        assert_eq!(t2_of(8), 1);
    }
}

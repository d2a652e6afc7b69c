//! Short-vector enumeration for positive-definite rational quadratic forms,
//! optionally shifted by a rational coset representative.
//!
//! Points are integer coordinate vectors `x ∈ Z^n`; the enumerated quantity
//! is `Q(x + shift) = (x+shift)ᵀ G (x+shift)` for a positive-definite
//! rational Gram matrix `G`. All results are exact: a floating-point
//! Cholesky recursion prunes the search tree with outward-rounded bounds,
//! and every surviving leaf is confirmed in integer arithmetic on the
//! rescaled form before it is counted.
//!
//! Norms are keyed by the integer `S³·Q(x+shift)` where `S` is the smallest
//! positive integer clearing all denominators of `G` and `shift`; see
//! [`QuadForm::key_of_norm`].

use lattice_core::matrix::RatMat;
use lattice_core::rat::{rat, Rat};
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use std::collections::BTreeMap;

#[derive(Debug, thiserror::Error)]
pub enum ShortvecError {
    #[error("Gram matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("matrix/shift dimensions disagree")]
    DimensionMismatch,
    #[error("scaled entries exceed i64 range")]
    Overflow,
    #[error("norm {0} is not attainable by this form (not an integer key)")]
    BadNorm(String),
}

pub type Result<T> = std::result::Result<T, ShortvecError>;

/// Relative margin applied to every floating-point pruning bound.
const F64_MARGIN: f64 = 1.0 / (1u64 << 20) as f64;

/// A positive-definite rational quadratic form with a rational shift.
#[derive(Debug, Clone)]
pub struct QuadForm {
    dim: usize,
    gram: RatMat,
    shift: Vec<Rat>,
    /// Smallest positive integer with `scale·G` and `scale·shift` integral.
    scale: i64,
    /// `scale · G`, as i64.
    ig: Vec<Vec<i64>>,
    /// `scale · shift`, as i64.
    ishift: Vec<i64>,
    /// Cholesky data: `Q(y) = Σ q[i]·(y_i + Σ_{j>i} mu[i][j]·y_j)²`.
    q: Vec<f64>,
    mu: Vec<Vec<f64>>,
    shf: Vec<f64>,
}

fn cholesky(g: &[Vec<f64>]) -> Option<(Vec<f64>, Vec<Vec<f64>>)> {
    let n = g.len();
    let mut a: Vec<Vec<f64>> = g.to_vec();
    for i in 0..n {
        if a[i][i] <= 0.0 {
            return None;
        }
        for j in (i + 1)..n {
            let aij = a[i][j];
            a[j][i] = aij;
            a[i][j] = aij / a[i][i];
        }
        for k in (i + 1)..n {
            for l in k..n {
                let d = a[k][i] * a[i][l];
                a[k][l] -= d;
            }
        }
    }
    let q: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    let mu: Vec<Vec<f64>> = (0..n)
        .map(|i| ((i + 1)..n).map(|j| a[i][j]).collect())
        .collect();
    Some((q, mu))
}

impl QuadForm {
    /// Form without shift (plain lattice points).
    pub fn new(gram: &RatMat) -> Result<Self> {
        let shift = vec![Rat::zero(); gram.len()];
        QuadForm::with_shift(gram, &shift)
    }

    /// Form evaluated on the coset `shift + Z^n`.
    pub fn with_shift(gram: &RatMat, shift: &[Rat]) -> Result<Self> {
        let dim = gram.len();
        if shift.len() != dim || gram.iter().any(|r| r.len() != dim) {
            return Err(ShortvecError::DimensionMismatch);
        }
        let scale_big = lattice_core::rat::denominator_lcm(
            gram.iter().flatten().chain(shift.iter()),
        );
        let scale = scale_big.to_i64().ok_or(ShortvecError::Overflow)?;
        let to_i64 = |x: &Rat| -> Result<i64> {
            let s = x * rat(scale);
            debug_assert!(s.denom().is_one());
            s.numer().to_i64().ok_or(ShortvecError::Overflow)
        };
        let mut ig = Vec::with_capacity(dim);
        for row in gram {
            let irow: Result<Vec<i64>> = row.iter().map(to_i64).collect();
            ig.push(irow?);
        }
        let ishift: Result<Vec<i64>> = shift.iter().map(to_i64).collect();
        let ishift = ishift?;
        let gf: Vec<Vec<f64>> = gram
            .iter()
            .map(|row| row.iter().map(|x| rat_to_f64(x)).collect())
            .collect();
        let (q, mu) = cholesky(&gf).ok_or(ShortvecError::NotPositiveDefinite)?;
        let shf: Vec<f64> = shift.iter().map(rat_to_f64).collect();
        Ok(QuadForm {
            dim,
            gram: gram.clone(),
            shift: shift.to_vec(),
            scale,
            ig,
            ishift,
            q,
            mu,
            shf,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn scale(&self) -> i64 {
        self.scale
    }

    pub fn gram(&self) -> &RatMat {
        &self.gram
    }

    pub fn shift(&self) -> &[Rat] {
        &self.shift
    }

    /// Integer key of a rational norm: `S³·norm`, or None when that is not
    /// an integer (such a norm is never attained).
    pub fn key_of_norm(&self, norm: &Rat) -> Option<i64> {
        let k = norm * rat(self.scale).pow(3);
        if k.denom().is_one() {
            k.numer().to_i64()
        } else {
            None
        }
    }

    /// Rational norm a key stands for.
    pub fn norm_of_key(&self, key: i64) -> Rat {
        rat(key) / rat(self.scale).pow(3)
    }

    /// Exact integer key of one point: `Xᵀ(S·G)X` with `X = S·x + S·shift`.
    pub fn exact_key(&self, x: &[i64]) -> i64 {
        let n = self.dim;
        let mut xs = vec![0i64; n];
        for i in 0..n {
            xs[i] = self.scale * x[i] + self.ishift[i];
        }
        let mut acc: i64 = 0;
        for i in 0..n {
            if xs[i] == 0 {
                continue;
            }
            let mut row = 0i64;
            for j in 0..n {
                row += self.ig[i][j] * xs[j];
            }
            acc += xs[i] * row;
        }
        acc
    }

    /// Count points by key for all keys ≤ `max_key`. Exact; the zero key is
    /// included when the shift is integral.
    pub fn count_norms(&self, max_key: i64) -> BTreeMap<i64, u64> {
        let mut out = BTreeMap::new();
        self.walk(max_key, &mut |_x, key| {
            *out.entry(key).or_insert(0u64) += 1;
        });
        out
    }

    /// Parallel version of [`count_norms`]: splits the top-level coordinate
    /// range across threads and merges the per-branch maps. Counts are
    /// exact, so the result is independent of the thread count.
    pub fn count_norms_parallel(&self, max_key: i64) -> BTreeMap<i64, u64> {
        if self.dim <= 1 {
            return self.count_norms(max_key);
        }
        let bound = self.f64_bound(max_key);
        let i = self.dim - 1;
        let (lo, hi) = self.level_range(i, bound, 0.0);
        let maps: Vec<BTreeMap<i64, u64>> = (lo..=hi)
            .into_par_iter()
            .map(|top| {
                let mut m = BTreeMap::new();
                let mut x = vec![0i64; self.dim];
                x[i] = top;
                let rem = self.descend_rem(i, top, bound);
                self.rec(i.wrapping_sub(1), rem, &mut x, max_key, &mut |_x, key| {
                    *m.entry(key).or_insert(0u64) += 1;
                });
                m
            })
            .collect();
        let mut out = BTreeMap::new();
        for m in maps {
            for (k, v) in m {
                *out.entry(k).or_insert(0) += v;
            }
        }
        out
    }

    /// All points with keys ≤ `max_key`, grouped by key, each bucket sorted
    /// lexicographically.
    pub fn vectors_up_to(&self, max_key: i64) -> BTreeMap<i64, Vec<Vec<i64>>> {
        let mut out: BTreeMap<i64, Vec<Vec<i64>>> = BTreeMap::new();
        self.walk(max_key, &mut |x, key| {
            out.entry(key).or_default().push(x.to_vec());
        });
        for bucket in out.values_mut() {
            bucket.sort_unstable();
        }
        out
    }

    /// Points with one exact key, sorted lexicographically.
    pub fn vectors_with_key(&self, key: i64) -> Vec<Vec<i64>> {
        self.vectors_up_to(key).remove(&key).unwrap_or_default()
    }

    fn f64_bound(&self, max_key: i64) -> f64 {
        let s = self.scale as f64;
        (max_key as f64) / (s * s * s) * (1.0 + F64_MARGIN) + F64_MARGIN
    }

    /// Inclusive integer range for coordinate `i` given remaining budget.
    fn level_range(&self, i: usize, rem: f64, center: f64) -> (i64, i64) {
        if rem < 0.0 {
            return (1, 0);
        }
        let r = (rem / self.q[i]).max(0.0).sqrt();
        let c = center + self.shf[i];
        let slack = F64_MARGIN * (c.abs() + r + 1.0);
        let lo = (-c - r - slack).ceil() as i64;
        let hi = (-c + r + slack).floor() as i64;
        (lo, hi)
    }

    /// Remaining budget after fixing coordinate `i` (clamped at 0).
    fn descend_rem(&self, i: usize, xi: i64, rem: f64) -> f64 {
        let y = xi as f64 + self.shf[i];
        (rem - self.q[i] * y * y).max(0.0)
    }

    fn walk(&self, max_key: i64, emit: &mut dyn FnMut(&[i64], i64)) {
        if self.dim == 0 {
            return;
        }
        let bound = self.f64_bound(max_key);
        let mut x = vec![0i64; self.dim];
        self.rec(self.dim - 1, bound, &mut x, max_key, emit);
    }

    /// Depth-first over coordinates i, i−1, …, 0. A level-(usize::MAX)
    /// call (wrapped from 0) is the leaf.
    fn rec(
        &self,
        i: usize,
        rem: f64,
        x: &mut Vec<i64>,
        max_key: i64,
        emit: &mut dyn FnMut(&[i64], i64),
    ) {
        if i == usize::MAX {
            let key = self.exact_key(x);
            if key <= max_key {
                emit(x, key);
            }
            return;
        }
        // Center from already-fixed higher coordinates.
        let mut center = 0.0;
        for (off, &xj) in x[(i + 1)..].iter().enumerate() {
            let j = i + 1 + off;
            center += self.mu[i][j - i - 1] * (xj as f64 + self.shf[j]);
        }
        let (lo, hi) = self.level_range(i, rem, center);
        for xi in lo..=hi {
            x[i] = xi;
            let y = xi as f64 + self.shf[i] + center;
            let rem2 = (rem - self.q[i] * y * y).max(0.0);
            self.rec(i.wrapping_sub(1), rem2, x, max_key, emit);
        }
        x[i] = 0;
    }
}

fn rat_to_f64(x: &Rat) -> f64 {
    // Exact for all inputs arising here (small numerators/denominators).
    x.numer().to_f64().unwrap_or(f64::NAN) / x.denom().to_f64().unwrap_or(f64::NAN)
}

/// Cache of enumerated balls, grown on demand: re-enumerates when a larger
/// key is requested and serves per-key buckets from memory afterwards.
#[derive(Debug)]
pub struct BallCache {
    form: QuadForm,
    max_key: i64,
    buckets: BTreeMap<i64, Vec<Vec<i64>>>,
}

impl BallCache {
    pub fn new(form: QuadForm) -> Self {
        BallCache { form, max_key: -1, buckets: BTreeMap::new() }
    }

    pub fn form(&self) -> &QuadForm {
        &self.form
    }

    /// Make sure every bucket with key ≤ `key` is materialized.
    pub fn ensure(&mut self, key: i64) {
        if key > self.max_key {
            self.buckets = self.form.vectors_up_to(key);
            self.max_key = key;
        }
    }

    /// Points with the given exact key (empty slice when none).
    pub fn get(&mut self, key: i64) -> &[Vec<i64>] {
        self.ensure(key);
        self.buckets.get(&key).map(|v| v.as_slice()).unwrap_or(&[])
    }
}

/// Number of points with exactly the given key.
pub fn count_with_key(form: &QuadForm, key: i64) -> u64 {
    form.count_norms(key).get(&key).copied().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use lattice_core::rat::frac;
    use lattice_core::{model, standard_lattice};

    #[test]
    fn a2_norm_counts() {
        let a2 = standard_lattice("A2").unwrap();
        let f = QuadForm::new(a2.stored_gram()).unwrap();
        assert_eq!(f.scale(), 1);
        let counts = f.count_norms(8);
        assert_eq!(counts.get(&0), Some(&1));
        assert_eq!(counts.get(&2), Some(&6));
        assert_eq!(counts.get(&4), None);
        assert_eq!(counts.get(&6), Some(&6));
        assert_eq!(counts.get(&8), Some(&6));
    }

    #[test]
    fn e8_and_e6_norm_counts() {
        let m = model();
        let e8 = QuadForm::new(&m.e8_gram_rat).unwrap();
        let c8 = e8.count_norms(4);
        assert_eq!(c8.get(&2), Some(&240));
        assert_eq!(c8.get(&4), Some(&2160));
        let e6 = QuadForm::new(&m.e6_gram).unwrap();
        let c6 = e6.count_norms(4);
        assert_eq!(c6.get(&2), Some(&72));
        assert_eq!(c6.get(&4), Some(&270));
    }

    #[test]
    fn parallel_matches_sequential() {
        let m = model();
        let e6 = QuadForm::new(&m.e6_gram).unwrap();
        assert_eq!(e6.count_norms(12), e6.count_norms_parallel(12));
    }

    #[test]
    fn coset_counts_with_rational_shift() {
        // The three M_i∩E6 cosets shifted by w₆; first coefficients of the
        // corresponding theta series. Norm 4/3 ↦ key 36 at scale 3.
        let m = model();
        let expected: [&[(i64, u64)]; 3] = [
            &[(36, 15), (90, 66), (144, 135), (198, 210), (252, 300)],
            &[(36, 9), (90, 18), (144, 45), (198, 36), (252, 72)],
            &[(36, 7), (90, 20), (144, 31), (198, 36), (252, 54)],
        ];
        for (coset, exp) in m.cosets.iter().zip(expected.iter()) {
            let f = QuadForm::with_shift(&coset.gram, &coset.shift).unwrap();
            assert_eq!(f.scale(), 3);
            assert_eq!(f.key_of_norm(&frac(4, 3)), Some(36));
            let counts = f.count_norms(252);
            for (key, want) in exp.iter() {
                assert_eq!(counts.get(key), Some(want), "key {key}");
            }
            // No integral norms appear in the coset.
            for key in counts.keys() {
                assert_ne!(key % 27, 0, "integral norm in shifted coset");
            }
        }
    }

    #[test]
    fn vectors_are_sorted_and_exact() {
        let m = model();
        let e6 = QuadForm::new(&m.e6_gram).unwrap();
        let roots = e6.vectors_with_key(2);
        assert_eq!(roots.len(), 72);
        let mut sorted = roots.clone();
        sorted.sort_unstable();
        assert_eq!(roots, sorted);
        for r in &roots {
            assert_eq!(e6.exact_key(r), 2);
        }
    }

    #[test]
    fn ball_cache_growth() {
        let m = model();
        let f = QuadForm::new(&m.e6_gram).unwrap();
        let mut cache = BallCache::new(f);
        assert_eq!(cache.get(2).len(), 72);
        assert_eq!(cache.get(4).len(), 270); // triggers regrowth
        assert_eq!(cache.get(2).len(), 72);
        assert!(cache.get(3).is_empty());
    }

    #[test]
    fn rejects_indefinite() {
        let g = vec![vec![rat(0), rat(1)], vec![rat(1), rat(0)]];
        assert!(QuadForm::new(&g).is_err());
    }
}

//! Local representation densities α_p(t, S).
//!
//! Three routes, used to cross-validate each other:
//!
//! 1. [`alpha_p_direct`] — finite-level counting of
//!    p^{−a(r−1)}·#{x ∈ (Z/p^a)^r : S(x) ≡ t}, exact at each level;
//! 2. [`alpha_p_yang`] with an odd prime normal form — the closed k-sum over
//!    the Z_p-diagonalization;
//! 3. [`alpha_p_yang`] at p = 2 — the closed two-branch k-sum over the Z₂
//!    normal form (diagonal part plus U/V blocks).
//!
//! Quadratic forms are handed around as *even Gram matrices* `G = 2S`
//! (integer, even diagonal), so `S(x) = ½xᵀGx` has integer values.

use crate::errors::{Result, ThetaError};
use crate::arith::{jacobi, vp};
use lattice_core::matrix::RatMat;
use lattice_core::rat::{rat, Rat};
use num_traits::{One, ToPrimitive, Zero};
use once_cell::sync::Lazy;

/// p-adic valuation of a nonzero rational.
pub fn vp_rat(x: &Rat, p: i64) -> i64 {
    assert!(!x.is_zero());
    let pb = num_bigint::BigInt::from(p);
    let mut v = 0i64;
    let mut num = x.numer().clone();
    while (&num % &pb).is_zero() {
        num /= &pb;
        v += 1;
    }
    let mut den = x.denom().clone();
    while (&den % &pb).is_zero() {
        den /= &pb;
        v -= 1;
    }
    v
}

fn inv_mod(a: i64, m: i64) -> i64 {
    // Extended Euclid; a must be invertible mod m.
    let (mut old_r, mut r) = (a.rem_euclid(m), m);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    assert_eq!(old_r, 1, "not invertible");
    old_s.rem_euclid(m)
}

/// (u/p) for a p-adic unit rational u.
fn unit_jacobi(u: &Rat, p: i64) -> i64 {
    let num = (u.numer() % p).to_i64().unwrap().rem_euclid(p);
    let den = (u.denom() % p).to_i64().unwrap().rem_euclid(p);
    jacobi(num * inv_mod(den, p) % p, p)
}

/// Hilbert symbol (2, x)₂ for a 2-adic unit rational x: +1 iff x ≡ ±1 mod 8.
fn hilbert2(x: &Rat) -> i64 {
    let num = (x.numer() % 8i64).to_i64().unwrap().rem_euclid(8);
    let den = (x.denom() % 8i64).to_i64().unwrap().rem_euclid(8);
    // An odd residue is its own inverse mod 8.
    let v = num * den % 8;
    if v == 1 || v == 7 {
        1
    } else {
        -1
    }
}

/// Z_p normal form of a quadratic form.
///
/// For odd p only the diagonal is populated: S ≅ Σ εᵢ p^{lᵢ} xᵢ². For p = 2
/// the form decomposes into a diagonal part plus scaled hyperbolic blocks
/// (`u_blocks`, Gram [[0,½],[½,0]]·2^m) and scaled [[1,½],[½,1]] blocks
/// (`v_blocks`).
#[derive(Debug, Clone)]
pub struct LocalNormalForm {
    pub p: i64,
    pub diagonal: Vec<(Rat, i64)>,
    pub u_blocks: Vec<(Rat, i64)>,
    pub v_blocks: Vec<(Rat, i64)>,
}

impl LocalNormalForm {
    pub fn odd(p: i64, diagonal: Vec<(Rat, i64)>) -> Result<Self> {
        let nf = LocalNormalForm { p, diagonal, u_blocks: vec![], v_blocks: vec![] };
        nf.validate()?;
        Ok(nf)
    }

    pub fn two(
        diagonal: Vec<(Rat, i64)>,
        u_blocks: Vec<(Rat, i64)>,
        v_blocks: Vec<(Rat, i64)>,
    ) -> Result<Self> {
        let nf = LocalNormalForm { p: 2, diagonal, u_blocks, v_blocks };
        nf.validate()?;
        Ok(nf)
    }

    pub fn rank(&self) -> usize {
        self.diagonal.len() + 2 * (self.u_blocks.len() + self.v_blocks.len())
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: &'static str| Err(ThetaError::MalformedNormalForm(msg));
        if self.p < 2 {
            return bad("p must be prime");
        }
        if self.p != 2 && (!self.u_blocks.is_empty() || !self.v_blocks.is_empty()) {
            return bad("U/V blocks are 2-adic only");
        }
        let mut min_exp: Option<i64> = None;
        for list in [&self.diagonal, &self.u_blocks, &self.v_blocks] {
            let mut prev = i64::MIN;
            for (unit, exp) in list {
                if unit.is_zero() || vp_rat(unit, self.p) != 0 {
                    return bad("block scalar is not a p-adic unit");
                }
                if *exp < prev {
                    return bad("exponents must be nondecreasing");
                }
                prev = *exp;
                min_exp = Some(min_exp.map_or(*exp, |m: i64| m.min(*exp)));
            }
        }
        if min_exp != Some(0) {
            return bad("minimal exponent must be 0 (form not divisible by p)");
        }
        Ok(())
    }
}

/// Z_p-diagonalization (odd p) of the symmetric rational matrix `a`
/// (the half-Gram of the quadratic form: S(x) = xᵀ a x). Returns
/// (unit, exponent) pairs sorted by exponent.
pub fn diagonalize_odd_p(a: &RatMat, p: i64) -> Vec<(Rat, i64)> {
    assert!(p % 2 == 1, "odd p only");
    let n = a.len();
    let mut m: RatMat = a.to_vec();
    let mut idx: Vec<usize> = (0..n).collect();
    let mut out: Vec<(Rat, i64)> = Vec::with_capacity(n);
    while !idx.is_empty() {
        // Pivot of minimal valuation, preferring the diagonal.
        let mut best: Option<(i64, usize, usize)> = None;
        for &i in &idx {
            if !m[i][i].is_zero() {
                let v = vp_rat(&m[i][i], p);
                if best.map_or(true, |(bv, _, _)| v < bv) {
                    best = Some((v, i, i));
                }
            }
        }
        for (pos, &i) in idx.iter().enumerate() {
            for &j in &idx[(pos + 1)..] {
                if !m[i][j].is_zero() {
                    let v = vp_rat(&m[i][j], p);
                    if best.map_or(true, |(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        let (_, i, j) = best.expect("degenerate form has no pivot");
        if i != j {
            // x_i ← x_i + x_j puts a minimal-valuation entry on the diagonal
            // (2 is a unit for odd p).
            for k in 0..n {
                let t = m[j][k].clone();
                m[i][k] += t;
            }
            for k in 0..n {
                let t = m[k][j].clone();
                m[k][i] += t;
            }
        }
        let piv = m[i][i].clone();
        for &k in &idx {
            if k == i || m[k][i].is_zero() {
                continue;
            }
            let f = &m[k][i] / &piv;
            for l in 0..n {
                let t = &f * &m[i][l];
                m[k][l] -= t;
            }
            for l in 0..n {
                let t = &f * &m[l][i];
                m[l][k] -= t;
            }
        }
        let v = vp_rat(&piv, p);
        out.push((piv / rat(p).pow(v as i32), v));
        idx.retain(|&k| k != i);
    }
    out.sort_by_key(|&(_, l)| l);
    out
}

/// α_p(t, S) by Yang's closed formula, odd p.
fn alpha_odd_yang(diag: &[(Rat, i64)], p: i64, t: i64) -> Rat {
    let a = vp(t, p) as i64;
    let u = t / p.pow(a as u32);
    let ls: Vec<i64> = diag.iter().map(|&(_, l)| l).collect();
    let units: Vec<&Rat> = diag.iter().map(|(q, _)| q).collect();
    let lk = |k: i64| -> Vec<usize> {
        (0..ls.len())
            .filter(|&i| ls[i] < k && (ls[i] - k).rem_euclid(2) != 0)
            .collect()
    };
    let dk = |k: i64| -> Rat {
        let s: i64 = ls.iter().filter(|&&l| l < k).map(|&l| l - k).sum();
        rat(k) + rat(s) / rat(2)
    };
    let vk = |k: i64| -> i64 {
        let l = lk(k);
        let mut sign = jacobi(-1, p).pow((l.len() / 2) as u32);
        for &i in &l {
            sign *= unit_jacobi(units[i], p);
        }
        sign
    };
    let int_pow = |d: Rat| -> Rat {
        assert!(d.denom().is_one(), "non-integral exponent in odd-p sum");
        rat(p).pow(d.numer().to_i32().unwrap())
    };
    let mut total = Rat::zero();
    for k in 1..=a {
        if lk(k).len() % 2 == 0 {
            total += Rat::new((p - 1).into(), p.into()) * rat(vk(k)) * int_pow(dk(k));
        }
    }
    let k = a + 1;
    if lk(k).len() % 2 == 0 {
        total += rat(vk(k)) * int_pow(dk(k)) * Rat::new((-1).into(), p.into());
    } else {
        let d = dk(k) - Rat::new(1.into(), 2.into());
        total += rat(vk(k)) * rat(jacobi(u.rem_euclid(p), p)) * int_pow(d);
    }
    Rat::one() + total
}

/// α₂(t, S) by the closed two-branch formula over the Z₂ normal form.
fn alpha_two_yang(nf: &LocalNormalForm, t: i64) -> Rat {
    let a = vp(t, 2) as i64;
    let u = t >> a;
    let ls: Vec<i64> = nf.diagonal.iter().map(|&(_, l)| l).collect();
    let dunits: Vec<&Rat> = nf.diagonal.iter().map(|(q, _)| q).collect();
    let ms: Vec<i64> = nf.u_blocks.iter().map(|&(_, m)| m).collect();
    let ns: Vec<i64> = nf.v_blocks.iter().map(|&(_, n)| n).collect();
    let lk1 = |k: i64| -> Vec<usize> {
        (0..ls.len())
            .filter(|&h| ls[h] < k && (ls[h] - k).rem_euclid(2) != 0)
            .collect()
    };
    let pk = |k: i64| -> i64 {
        let s: i64 = ns.iter().filter(|&&n| n < k).map(|&n| n - k).sum();
        if s.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    };
    let epsk = |k: i64| -> Rat {
        let mut r = Rat::one();
        for h in lk1(k - 1) {
            r *= dunits[h];
        }
        r
    };
    let dk = |k: i64| -> Rat {
        let sd: i64 = ls.iter().filter(|&&l| l < k - 1).map(|&l| l - k + 1).sum();
        let sm: i64 = ms.iter().filter(|&&m| m < k).map(|&m| m - k).sum();
        let sn: i64 = ns.iter().filter(|&&n| n < k).map(|&n| n - k).sum();
        rat(k) + rat(sd) / rat(2) + rat(sm) + rat(sn)
    };
    let two_pow = |d: Rat| -> Rat {
        assert!(d.denom().is_one(), "non-integral exponent in 2-adic sum");
        rat(2).pow(d.numer().to_i32().unwrap())
    };
    let mut total = Rat::zero();
    for k in 1..=(a + 3) {
        if ls.iter().any(|&l| l == k - 1) {
            continue; // δ(k) = 0
        }
        let mut mu = rat(u) * rat(2).pow((a - k + 3) as i32);
        for (h, &l) in ls.iter().enumerate() {
            if l < k - 1 {
                mu -= dunits[h];
            }
        }
        if lk1(k - 1).len() % 2 != 0 {
            // Odd branch: (2/(με(k))) · 2^{d(k)−3/2} · p(k).
            let x = &mu * epsk(k);
            if x.is_zero() || vp_rat(&x, 2) != 0 {
                continue;
            }
            let d = dk(k) - Rat::new(3.into(), 2.into());
            total += rat(pk(k)) * rat(hilbert2(&x)) * two_pow(d);
        } else {
            // Even branch: (2/ε(k)) · 2^{d(k)−1} · e(−μ/8) · Char_{4Z₂}(μ).
            let ph = if mu.is_zero() {
                1
            } else {
                let v2 = vp_rat(&mu, 2);
                if v2 < 2 {
                    continue;
                }
                if v2 >= 3 {
                    1
                } else {
                    -1
                }
            };
            let x = epsk(k);
            let d = dk(k) - Rat::one();
            total += rat(pk(k)) * rat(hilbert2(&x)) * rat(ph) * two_pow(d);
        }
    }
    Rat::one() + total
}

/// α_p(t, S) from a local normal form.
pub fn alpha_p_yang(nf: &LocalNormalForm, t: i64) -> Result<Rat> {
    nf.validate()?;
    if t == 0 {
        return Err(ThetaError::InvalidArgument("t must be nonzero"));
    }
    if nf.p == 2 {
        Ok(alpha_two_yang(nf, t))
    } else {
        Ok(alpha_odd_yang(&nf.diagonal, nf.p, t))
    }
}

/// Finite-level density p^{−a(r−1)}·#{x mod p^a : ½xᵀGx ≡ t}, exact.
///
/// `g2s` is the even Gram matrix 2S. Guard: p^{a·r} ≤ 10⁹.
pub fn alpha_p_direct(g2s: &[Vec<i64>], t: i64, p: i64, a: u32) -> Result<Rat> {
    let r = g2s.len();
    assert!(a >= 1);
    let total_states = (p as i128).checked_pow(a * r as u32);
    match total_states {
        Some(s) if s <= 1_000_000_000 => {}
        _ => return Err(ThetaError::BudgetExceeded("alpha_p_direct state space")),
    }
    let md = p.pow(a);
    let counts = histogram(g2s, md);
    let count = counts[(t.rem_euclid(md)) as usize];
    Ok(Rat::new(count.into(), (p as i128).pow(a * (r as u32 - 1)).into()))
}

/// Histogram of S(x) mod `md` over all x ∈ (Z/md)^r.
fn histogram(g2s: &[Vec<i64>], md: i64) -> Vec<u64> {
    let r = g2s.len();
    let m = md as usize;
    let mut counts = vec![0u64; m];
    let q = |i: usize| g2s[i][i] / 2; // even diagonal
    if r == 1 {
        for x in 0..md {
            let v = (q(0) * x % md * x).rem_euclid(md);
            counts[v as usize] += 1;
        }
        return counts;
    }
    // Last-two-coordinates table.
    let mut table = vec![0i64; m * m];
    for x in 0..md {
        for y in 0..md {
            let v = (q(r - 2) * x % md * x + q(r - 1) * y % md * y + g2s[r - 2][r - 1] * x % md * y)
                .rem_euclid(md);
            table[(x * md + y) as usize] = v;
        }
    }
    // Odometer over the first r−2 coordinates.
    let mut prefix = vec![0i64; r - 2];
    loop {
        let mut base = 0i64;
        for i in 0..(r - 2) {
            base = (base + q(i) * prefix[i] % md * prefix[i]) % md;
            for j in (i + 1)..(r - 2) {
                base = (base + g2s[i][j] * prefix[i] % md * prefix[j]) % md;
            }
        }
        let mut lx = 0i64;
        let mut ly = 0i64;
        for i in 0..(r - 2) {
            lx = (lx + g2s[i][r - 2] * prefix[i]) % md;
            ly = (ly + g2s[i][r - 1] * prefix[i]) % md;
        }
        for x in 0..md {
            let part = (base + lx * x).rem_euclid(md);
            let row = (x * md) as usize;
            for y in 0..md {
                let v = (part + ly * y + table[row + y as usize]).rem_euclid(md);
                counts[v as usize] += 1;
            }
        }
        // Advance odometer.
        let mut pos = 0;
        loop {
            if pos == r - 2 {
                return counts;
            }
            prefix[pos] += 1;
            if prefix[pos] < md {
                break;
            }
            prefix[pos] = 0;
            pos += 1;
        }
    }
}

/// Direct density at increasing levels until two consecutive levels agree;
/// errors if the state-space guard is hit first.
pub fn alpha_p_direct_stabilized(g2s: &[Vec<i64>], t: i64, p: i64) -> Result<Rat> {
    let mut prev: Option<Rat> = None;
    for a in 1..=30 {
        match alpha_p_direct(g2s, t, p, a) {
            Ok(val) => {
                if prev.as_ref() == Some(&val) {
                    return Ok(val);
                }
                prev = Some(val);
            }
            Err(ThetaError::BudgetExceeded(_)) => {
                return Err(ThetaError::BudgetExceeded(
                    "no stabilization within the direct-count budget",
                ))
            }
            Err(e) => return Err(e),
        }
    }
    Err(ThetaError::BudgetExceeded("stabilization level cap"))
}

/// One of the three registered positive-definite forms S₁, S₂, S₃
/// (S_i(x) = ½xᵀG x with G = three times the corresponding B-form Gram).
#[derive(Debug, Clone)]
pub struct RegisteredForm {
    pub name: &'static str,
    pub rank: usize,
    /// Even Gram matrix G = 2S (= 3·B).
    pub gram2s: Vec<Vec<i64>>,
    /// det(2S): 162, 81, 108.
    pub det2s: i64,
    pub nf2: LocalNormalForm,
    pub nf3: LocalNormalForm,
    /// Uniqueness of S in its genus, required by the global formula; the
    /// registry asserts it for all three forms.
    pub genus_unique: bool,
}

impl RegisteredForm {
    pub fn alpha2(&self, t: i64) -> Result<Rat> {
        alpha_p_yang(&self.nf2, t)
    }

    pub fn alpha3(&self, t: i64) -> Result<Rat> {
        alpha_p_yang(&self.nf3, t)
    }
}

fn build_registry() -> [RegisteredForm; 3] {
    let model = lattice_core::model();
    let third = |i: usize| -> Vec<Vec<i64>> {
        model.b_forms[i]
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        let v = x * rat(3);
                        assert!(v.denom().is_one());
                        v.numer().to_i64().unwrap()
                    })
                    .collect()
            })
            .collect()
    };
    let halfg = |g: &[Vec<i64>]| -> RatMat {
        g.iter()
            .map(|row| row.iter().map(|&x| Rat::new(x.into(), 2.into())).collect())
            .collect()
    };
    let dets = [162i64, 81, 108];
    let names = ["S1", "S2", "S3"];
    let nf2s = [
        LocalNormalForm::two(
            vec![(rat(1), 0)],
            vec![],
            vec![(Rat::new(1.into(), 3.into()), 0), (Rat::new(1.into(), 3.into()), 0)],
        )
        .unwrap(),
        LocalNormalForm::two(
            vec![],
            vec![],
            vec![(Rat::new(1.into(), 3.into()), 0), (Rat::new(1.into(), 3.into()), 0)],
        )
        .unwrap(),
        LocalNormalForm::two(vec![(rat(9), 0), (rat(5), 0)], vec![(rat(1), 0)], vec![]).unwrap(),
    ];
    let mut out = Vec::new();
    for (i, nf2) in nf2s.into_iter().enumerate() {
        let gram2s = third(i);
        let nf3 = LocalNormalForm::odd(3, diagonalize_odd_p(&halfg(&gram2s), 3)).unwrap();
        assert_eq!(nf2.rank(), gram2s.len());
        assert_eq!(nf3.rank(), gram2s.len());
        out.push(RegisteredForm {
            name: names[i],
            rank: gram2s.len(),
            gram2s,
            det2s: dets[i],
            nf2,
            nf3,
            genus_unique: true,
        });
    }
    out.try_into().unwrap()
}

static REGISTRY: Lazy<[RegisteredForm; 3]> = Lazy::new(build_registry);

/// The registered forms (S₁, S₂, S₃).
pub fn registry() -> &'static [RegisteredForm; 3] {
    &REGISTRY
}

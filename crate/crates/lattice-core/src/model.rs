//! The fixed Z⁸ coordinate model.
//!
//! All lattices live inside Euclidean Z⁸ (standard dot product):
//!
//! * `E8` = { x ∈ Z⁸ ∪ (Z+½)⁸ : Σxᵢ ∈ 2Z }, positive definite, unimodular;
//! * `A2` = span(a₁, a₂) with a₁ = e₁+e₈, a₂ = −(e₁+…+e₈)/2;
//! * `E6` = the orthogonal complement of A2 in E8;
//! * s₁ = e₃−e₂, s₂ = e₅−e₄, s₃ = e₇−e₆ — three mutually orthogonal
//!   roots of E6 singled out by the model;
//! * three sublattices M₁, M₂, M₃ of E8 (orthogonal complements of
//!   {a₁,a₂,s₁}, {a₁,a₂,s₁,c} and {a₁,a₂,s₁,e₆−e₅}) whose Gram matrices
//!   are the forms `B1`, `B2`, `B3` used by the theta tables;
//! * for each Mᵢ, the rank-(rᵢ) sublattice Mᵢ∩E6 together with the coset
//!   representative w₆ = (0,2,2,−1,−1,−1,−1,0)/3 used to enumerate the
//!   non-integral theta coefficients.
//!
//! Everything downstream (theta series, certificate search, verification)
//! pins this model through [`MODEL_ID`].

use crate::intmat::kernel_basis;
use crate::matrix::{self, RatMat};
use crate::rat::{dot, frac, is_integer, rat, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use once_cell::sync::Lazy;

/// Identifies the fixed coordinate model, including the orthogonal root
/// triple (s₁, s₂, s₃). Certificates carry this string and verification
/// rejects any other value.
pub const MODEL_ID: &str =
    "Z8:a1=e1+e8,a2=-(e1+..+e8)/2,s1=e3-e2,s2=e5-e4,s3=e7-e6,w6=(0,2,2,-1,-1,-1,-1,0)/3";

/// Coset of a definite lattice, as a Gram matrix plus a rational shift in
/// basis coordinates: the point set is { B·(x + shift) : x ∈ Z^r }.
#[derive(Debug, Clone)]
pub struct CosetData {
    /// Rows are Z⁸ coordinates of the basis of Mᵢ∩E6.
    pub basis_z8: RatMat,
    /// Gram matrix of that basis (positive definite).
    pub gram: RatMat,
    /// Coordinates of w₆ in this basis (w₆ + Mᵢ∩E6 is the enumerated coset).
    pub shift: Vec<Rat>,
}

#[derive(Debug, Clone)]
pub struct Model {
    pub a1: Vec<Rat>,
    pub a2: Vec<Rat>,
    /// (s₁, s₂, s₃): pairwise orthogonal roots of E6.
    pub s: [Vec<Rat>; 3],
    /// Half-integer root used to cut out M₂.
    pub c: Vec<Rat>,
    /// Coset representative in E6^∨ with (w₆,w₆) = 4/3.
    pub w6: Vec<Rat>,
    /// Glue vector −(a₁+2a₂)/3 ∈ A2^∨ with (v₂,v₂) = 2/3.
    pub v2_dual: Vec<Rat>,
    /// Rows: basis of E8 in Z⁸ coordinates (unimodular over the model).
    pub e8_basis: RatMat,
    e8_basis_inv: RatMat,
    /// Gram of `e8_basis` (integer, even, det 1).
    pub e8_gram_rat: RatMat,
    /// Rows: basis of E6 = A2⊥ in Z⁸ coordinates.
    pub e6_basis: RatMat,
    /// Gram of `e6_basis` (det 3).
    pub e6_gram: RatMat,
    /// Rows a₁, a₂; Gram [[2,−1],[−1,2]].
    pub a2_basis: RatMat,
    /// Rows: Z⁸ bases of M₁, M₂, M₃.
    pub m_bases: [RatMat; 3],
    /// Grams of `m_bases`: the forms B1 (rank 5), B2, B3 (rank 4).
    pub b_forms: [RatMat; 3],
    /// Coset data for Mᵢ∩E6 with shift w₆.
    pub cosets: [CosetData; 3],
    /// All 240 roots of E8 (Z⁸ coordinates).
    pub e8_roots: Vec<Vec<Rat>>,
    /// All 72 roots of E6.
    pub e6_roots: Vec<Vec<Rat>>,
    /// One representative per ±pair of E6 roots (36 entries), and the same
    /// scaled by 6 into i64 coordinates for fast exact pairing.
    pub e6_root_reps: Vec<Vec<Rat>>,
    pub e6_root_reps_x6: Vec<[i64; 8]>,
}

fn zvec(entries: [i64; 8]) -> Vec<Rat> {
    entries.iter().map(|&x| rat(x)).collect()
}

fn halfvec(numers: [i64; 8]) -> Vec<Rat> {
    numers.iter().map(|&x| frac(x, 2)).collect()
}

/// Scale a rational Z⁸ vector by 6 into i64 entries (all model vectors have
/// denominators dividing 6).
pub fn scale6(v: &[Rat]) -> Option<[i64; 8]> {
    if v.len() != 8 {
        return None;
    }
    let mut out = [0i64; 8];
    for (slot, x) in out.iter_mut().zip(v.iter()) {
        let scaled = x * rat(6);
        if !scaled.denom().is_one() {
            return None;
        }
        *slot = scaled.numer().to_i64()?;
    }
    Some(out)
}

/// Dot product of two 6×-scaled vectors; divide by 36 for the true pairing.
pub fn dot6(x: &[i64; 8], y: &[i64; 8]) -> i64 {
    x.iter().zip(y.iter()).map(|(a, b)| a * b).sum()
}

fn gram_of(rows: &RatMat) -> RatMat {
    let k = rows.len();
    let mut g = vec![vec![Rat::zero(); k]; k];
    for i in 0..k {
        for j in i..k {
            let d = dot(&rows[i], &rows[j]);
            g[i][j] = d.clone();
            g[j][i] = d;
        }
    }
    g
}

fn all_e8_roots() -> Vec<Vec<Rat>> {
    let mut roots = Vec::with_capacity(240);
    // ±eᵢ ± eⱼ (112 vectors).
    for i in 0..8 {
        for j in (i + 1)..8 {
            for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let mut v = [0i64; 8];
                v[i] = si;
                v[j] = sj;
                roots.push(zvec(v));
            }
        }
    }
    // (±½)⁸ with an even number of minus signs (128 vectors).
    for mask in 0u32..256 {
        if mask.count_ones() % 2 != 0 {
            continue;
        }
        let mut v = [0i64; 8];
        for (i, slot) in v.iter_mut().enumerate() {
            *slot = if mask & (1 << i) != 0 { -1 } else { 1 };
        }
        roots.push(halfvec(v));
    }
    roots
}

impl Model {
    fn build() -> Model {
        let a1 = zvec([1, 0, 0, 0, 0, 0, 0, 1]);
        let a2 = halfvec([-1, -1, -1, -1, -1, -1, -1, -1]);
        let s1 = zvec([0, -1, 1, 0, 0, 0, 0, 0]);
        let s2 = zvec([0, 0, 0, -1, 1, 0, 0, 0]);
        let s3 = zvec([0, 0, 0, 0, 0, -1, 1, 0]);
        let c = halfvec([1, 1, -1, 1, 1, -1, -1, -1]);
        let w6: Vec<Rat> = [0, 2, 2, -1, -1, -1, -1, 0]
            .iter()
            .map(|&x| frac(x, 3))
            .collect();
        let v2_dual: Vec<Rat> = [0, 1, 1, 1, 1, 1, 1, 0]
            .iter()
            .map(|&x| frac(x, 3))
            .collect();
        let half_v = halfvec([1, 1, 1, 1, -1, -1, -1, -1]);
        let r65 = zvec([0, 0, 0, 0, -1, 1, 0, 0]); // e₆−e₅

        let e8_basis: RatMat = vec![
            zvec([2, 0, 0, 0, 0, 0, 0, 0]),
            zvec([-1, 1, 0, 0, 0, 0, 0, 0]),
            s1.clone(),
            zvec([0, 0, -1, 1, 0, 0, 0, 0]),
            s2.clone(),
            r65.clone(),
            s3.clone(),
            halfvec([1, 1, 1, 1, 1, 1, 1, 1]),
        ];
        let e8_basis_inv =
            matrix::inverse(&e8_basis).expect("E8 model basis is unimodular");
        let e8_gram_rat = gram_of(&e8_basis);

        let e6_basis: RatMat = vec![
            s1.clone(),
            zvec([0, 0, -1, 1, 0, 0, 0, 0]),
            s2.clone(),
            r65.clone(),
            s3.clone(),
            half_v.clone(),
        ];
        let e6_gram = gram_of(&e6_basis);
        let a2_basis: RatMat = vec![a1.clone(), a2.clone()];

        let m1_basis: RatMat = vec![
            zvec([0, -1, -1, 2, 0, 0, 0, 0]),
            s2.clone(),
            r65.clone(),
            w6.clone(),
            half_v.clone(),
        ];
        let m2_basis: RatMat = vec![
            zvec([0, -1, -1, 2, -1, 1, 0, 0]),
            s2.clone(),
            halfvec([1, 1, 1, 1, -3, 1, -1, -1]),
            w6.clone(),
        ];
        let m3_basis: RatMat = vec![
            zvec([0, 0, 0, -2, 1, 1, 0, 0]),
            zvec([0, -1, -1, 2, 0, 0, 0, 0]),
            w6.clone(),
            half_v.clone(),
        ];
        let b_forms = [gram_of(&m1_basis), gram_of(&m2_basis), gram_of(&m3_basis)];

        // Mᵢ∩E6: kernel of the pairing with the cutting roots, inside E6.
        let coset_conds: [Vec<Vec<Rat>>; 3] = [
            vec![s1.clone()],
            vec![s1.clone(), c.clone()],
            vec![s1.clone(), r65.clone()],
        ];
        let cosets: Vec<CosetData> = coset_conds
            .iter()
            .map(|conds| build_coset(&e6_basis, conds, &w6))
            .collect();
        let cosets: [CosetData; 3] = cosets.try_into().expect("three cosets");

        let e8_roots = all_e8_roots();
        let e6_roots: Vec<Vec<Rat>> = e8_roots
            .iter()
            .filter(|r| dot(r, &a1).is_zero() && dot(r, &a2).is_zero())
            .cloned()
            .collect();
        let mut e6_root_reps: Vec<Vec<Rat>> = Vec::with_capacity(36);
        for r in &e6_roots {
            let x6 = scale6(r).expect("root coords have small denominators");
            let first_nonzero = x6.iter().find(|&&x| x != 0).copied().unwrap_or(0);
            if first_nonzero > 0 {
                e6_root_reps.push(r.clone());
            }
        }
        let e6_root_reps_x6: Vec<[i64; 8]> = e6_root_reps
            .iter()
            .map(|r| scale6(r).expect("scaled root"))
            .collect();

        Model {
            a1,
            a2,
            s: [s1, s2, s3],
            c,
            w6,
            v2_dual,
            e8_basis,
            e8_basis_inv,
            e8_gram_rat,
            e6_basis,
            e6_gram,
            a2_basis,
            m_bases: [m1_basis, m2_basis, m3_basis],
            b_forms,
            cosets,
            e8_roots,
            e6_roots,
            e6_root_reps,
            e6_root_reps_x6,
        }
    }

    /// Membership in the model E8: integer or half-integer coordinates
    /// (uniformly) with even coordinate sum.
    pub fn e8_member(&self, v: &[Rat]) -> bool {
        if v.len() != 8 {
            return false;
        }
        let two = BigInt::from(2);
        let all_int = v.iter().all(is_integer);
        let all_half = v
            .iter()
            .all(|x| x.denom() == &two && x.numer().is_odd());
        if !(all_int || all_half) {
            return false;
        }
        let sum: Rat = v.iter().sum();
        is_integer(&(sum / rat(2)))
    }

    /// Membership in E6 = A2⊥ ∩ E8.
    pub fn e6_member(&self, v: &[Rat]) -> bool {
        self.e8_member(v) && dot(v, &self.a1).is_zero() && dot(v, &self.a2).is_zero()
    }

    /// Membership in E6^∨ = { v ∈ E6⊗Q : (v, E6) ⊆ Z }.
    pub fn e6_dual_member(&self, v: &[Rat]) -> bool {
        if v.len() != 8
            || !dot(v, &self.a1).is_zero()
            || !dot(v, &self.a2).is_zero()
        {
            return false;
        }
        // In the Q-span of E6?
        if self.e6_coords(v).is_none() {
            return false;
        }
        self.e6_basis.iter().all(|b| is_integer(&dot(v, b)))
    }

    /// Membership in the coset w₆ + E6 inside E6^∨.
    pub fn in_w6_coset(&self, v: &[Rat]) -> bool {
        if v.len() != 8 {
            return false;
        }
        let diff: Vec<Rat> = v.iter().zip(self.w6.iter()).map(|(a, b)| a - b).collect();
        self.e6_member(&diff)
    }

    /// Integer coordinates of an E8 member in the model basis.
    pub fn e8_coords(&self, v: &[Rat]) -> Option<Vec<BigInt>> {
        if v.len() != 8 {
            return None;
        }
        let mut coords = Vec::with_capacity(8);
        for j in 0..8 {
            let mut acc = Rat::zero();
            for i in 0..8 {
                if !v[i].is_zero() {
                    acc += &v[i] * &self.e8_basis_inv[i][j];
                }
            }
            if !is_integer(&acc) {
                return None;
            }
            coords.push(acc.numer().clone());
        }
        Some(coords)
    }

    /// Rational coordinates in the E6 basis (None if outside the Q-span).
    pub fn e6_coords(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        let basis_t = matrix::transpose(&self.e6_basis);
        matrix::solve(&basis_t, v).ok()
    }

    /// Z⁸ coordinates of a vector given by E6-basis coordinates.
    pub fn z8_from_e6_coords(&self, coords: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); 8];
        for (ci, b) in coords.iter().zip(self.e6_basis.iter()) {
            if ci.is_zero() {
                continue;
            }
            for (o, bj) in out.iter_mut().zip(b.iter()) {
                *o += ci * bj;
            }
        }
        out
    }

    /// The 42 roots of E6 not orthogonal to s₁.
    pub fn x42(&self) -> Vec<Vec<Rat>> {
        self.e6_roots
            .iter()
            .filter(|r| !dot(r, &self.s[0]).is_zero())
            .cloned()
            .collect()
    }

    /// The ten A2 systems {±s₁, ±c, ±(s₁+c)} covering the 42 roots of
    /// `x42`; each entry lists the system's six roots. Any two systems meet
    /// exactly in {±s₁}.
    pub fn x42_a2_systems(&self) -> Vec<Vec<Vec<Rat>>> {
        let a = &self.s[0];
        let mut systems = Vec::new();
        let mut seen: Vec<[i64; 8]> = Vec::new();
        for r in &self.e6_roots {
            if dot(r, a) != rat(-1) {
                continue;
            }
            let key = scale6(r).expect("root scale");
            if seen.contains(&key) {
                continue;
            }
            let sum: Vec<Rat> = a.iter().zip(r.iter()).map(|(x, y)| x + y).collect();
            let partner: Vec<Rat> = sum.iter().map(|x| -x).collect(); // also pairs to −1 with s₁
            seen.push(scale6(&partner).expect("root scale"));
            let neg = |v: &Vec<Rat>| -> Vec<Rat> { v.iter().map(|x| -x).collect() };
            systems.push(vec![
                a.clone(),
                neg(a),
                r.clone(),
                neg(r),
                sum.clone(),
                neg(&sum),
            ]);
        }
        systems
    }
}

/// Kernel of pairing against `conds` inside the lattice spanned by
/// `ambient_basis`, plus the coordinates of `shift_vec` in that kernel basis.
fn build_coset(ambient_basis: &RatMat, conds: &[Vec<Rat>], shift_vec: &[Rat]) -> CosetData {
    let n = ambient_basis.len();
    let rows: Vec<Vec<BigInt>> = conds
        .iter()
        .map(|cond| {
            let row: Vec<Rat> = ambient_basis.iter().map(|b| dot(b, cond)).collect();
            let lcm = crate::rat::denominator_lcm(row.iter());
            row.iter()
                .map(|x| (x * Rat::from_integer(lcm.clone())).numer().clone())
                .collect()
        })
        .collect();
    let ker = kernel_basis(&rows, n);
    let basis_z8: RatMat = ker
        .iter()
        .map(|coeffs| {
            let mut v = vec![Rat::zero(); 8];
            for (ci, b) in coeffs.iter().zip(ambient_basis.iter()) {
                if ci.is_zero() {
                    continue;
                }
                let cr = Rat::from_integer(ci.clone());
                for (slot, bj) in v.iter_mut().zip(b.iter()) {
                    *slot += &cr * bj;
                }
            }
            v
        })
        .collect();
    let gram = gram_of(&basis_z8);
    let basis_t = matrix::transpose(&basis_z8);
    let shift = matrix::solve(&basis_t, shift_vec)
        .expect("coset representative lies in the kernel span");
    CosetData { basis_z8, gram, shift }
}

static MODEL: Lazy<Model> = Lazy::new(Model::build);

/// The shared immutable model instance.
pub fn model() -> &'static Model {
    &MODEL
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::det;
    use num_traits::Signed;

    #[test]
    fn basic_constants() {
        let m = model();
        assert_eq!(dot(&m.a1, &m.a1), rat(2));
        assert_eq!(dot(&m.a2, &m.a2), rat(2));
        assert_eq!(dot(&m.a1, &m.a2), rat(-1));
        assert_eq!(dot(&m.w6, &m.w6), frac(4, 3));
        assert_eq!(dot(&m.v2_dual, &m.v2_dual), frac(2, 3));
        assert_eq!(dot(&m.w6, &m.v2_dual), rat(0));
        // v₂^∨ = −(a₁ + 2a₂)/3.
        for i in 0..8 {
            let expected = -(&m.a1[i] + rat(2) * &m.a2[i]) / rat(3);
            assert_eq!(m.v2_dual[i], expected);
        }
        // s-triple: orthogonal roots of E6.
        for i in 0..3 {
            assert_eq!(dot(&m.s[i], &m.s[i]), rat(2));
            assert!(m.e6_member(&m.s[i]));
            for j in (i + 1)..3 {
                assert_eq!(dot(&m.s[i], &m.s[j]), rat(0));
            }
        }
    }

    #[test]
    fn e8_basis_is_unimodular_and_even() {
        let m = model();
        assert_eq!(det(&m.e8_gram_rat).abs(), rat(1));
        for i in 0..8 {
            assert!(is_integer(&(&m.e8_gram_rat[i][i] / rat(2))));
            for j in 0..8 {
                assert!(is_integer(&m.e8_gram_rat[i][j]));
            }
            assert!(m.e8_member(&m.e8_basis[i]));
        }
    }

    #[test]
    fn e6_gram_det_three() {
        let m = model();
        assert_eq!(det(&m.e6_gram), rat(3));
        for b in &m.e6_basis {
            assert!(m.e6_member(b));
        }
    }

    #[test]
    fn root_counts() {
        let m = model();
        assert_eq!(m.e8_roots.len(), 240);
        assert_eq!(m.e6_roots.len(), 72);
        assert_eq!(m.e6_root_reps.len(), 36);
        for r in &m.e8_roots {
            assert_eq!(dot(r, r), rat(2));
            assert!(m.e8_member(r));
        }
        // Roots of E6 orthogonal to s₁ form an A5 system: 30 of them.
        let perp = m
            .e6_roots
            .iter()
            .filter(|r| dot(r, &m.s[0]).is_zero())
            .count();
        assert_eq!(perp, 30);
        assert_eq!(m.x42().len(), 42);
    }

    #[test]
    fn x42_decomposes_into_ten_a2_systems() {
        let m = model();
        let systems = m.x42_a2_systems();
        assert_eq!(systems.len(), 10);
        let a_keys: Vec<[i64; 8]> = vec![
            scale6(&m.s[0]).unwrap(),
            scale6(&m.s[0].iter().map(|x| -x).collect::<Vec<_>>()).unwrap(),
        ];
        let mut all_keys: Vec<[i64; 8]> = Vec::new();
        for sys in &systems {
            assert_eq!(sys.len(), 6);
            for r in sys {
                assert_eq!(dot(r, r), rat(2));
                assert!(m.e6_member(r));
                all_keys.push(scale6(r).unwrap());
            }
            // Normalized pair (s₁, c) with (s₁,c) = −1 spans the system.
            assert_eq!(dot(&sys[0], &sys[2]), rat(-1));
        }
        // Pairwise intersections are exactly {±s₁}.
        let keys_of = |sys: &Vec<Vec<Rat>>| -> Vec<[i64; 8]> {
            sys.iter().map(|r| scale6(r).unwrap()).collect()
        };
        for i in 0..10 {
            let ki = keys_of(&systems[i]);
            for sys_j in systems.iter().skip(i + 1) {
                let inter: Vec<[i64; 8]> = keys_of(sys_j)
                    .into_iter()
                    .filter(|k| ki.contains(k))
                    .collect();
                assert_eq!(inter.len(), 2);
                assert!(inter.iter().all(|k| a_keys.contains(k)));
            }
        }
        // Union covers all 42.
        all_keys.sort();
        all_keys.dedup();
        assert_eq!(all_keys.len(), 42);
    }

    #[test]
    fn m_bases_are_orthogonal_to_their_cuts() {
        let m = model();
        let cuts: [Vec<&Vec<Rat>>; 3] = [
            vec![&m.a1, &m.a2, &m.s[0]],
            vec![&m.a1, &m.a2, &m.s[0], &m.c],
            vec![&m.a1, &m.a2, &m.s[0]],
        ];
        let r65 = zvec([0, 0, 0, 0, -1, 1, 0, 0]);
        for (i, basis) in m.m_bases.iter().enumerate() {
            for b in basis {
                // Every basis vector is an E8 member except the dual-lattice
                // representative w₆ itself.
                assert!(
                    m.e8_member(b) || b == &m.w6,
                    "M{} basis vector outside E8 ∪ {{w₆}}",
                    i + 1
                );
                for cut in &cuts[i] {
                    assert!(dot(b, cut).is_zero());
                }
                if i == 2 {
                    assert!(dot(b, &r65).is_zero());
                }
            }
        }
        // Tripled Grams are even integral: x ↦ (3/2)·(x,x) is an even
        // integer-matrix quadratic form on each Mᵢ.
        for b in &m.b_forms {
            for (i, row) in b.iter().enumerate() {
                for x in row {
                    assert!(is_integer(&(x * rat(3))));
                }
                assert!(is_integer(&(&row[i] * frac(3, 2))));
            }
        }
    }

    #[test]
    fn b_form_determinants() {
        let m = model();
        assert_eq!(det(&m.b_forms[0]), frac(2, 3));
        assert_eq!(det(&m.b_forms[1]), rat(1));
        assert_eq!(det(&m.b_forms[2]), frac(4, 3));
        assert_eq!(m.b_forms[0].len(), 5);
        assert_eq!(m.b_forms[1].len(), 4);
        assert_eq!(m.b_forms[2].len(), 4);
    }

    #[test]
    fn coset_invariants() {
        let m = model();
        let expect = [(5usize, 6i64), (4, 9), (4, 12)];
        for (coset, (rank, d)) in m.cosets.iter().zip(expect.iter()) {
            assert_eq!(coset.basis_z8.len(), *rank);
            assert_eq!(det(&coset.gram), rat(*d));
            // Basis lies in E6 and is orthogonal to s₁.
            for b in &coset.basis_z8 {
                assert!(m.e6_member(b));
                assert!(dot(b, &m.s[0]).is_zero());
            }
            // Shift reproduces w₆.
            let mut w = vec![Rat::zero(); 8];
            for (s, b) in coset.shift.iter().zip(coset.basis_z8.iter()) {
                for (slot, bj) in w.iter_mut().zip(b.iter()) {
                    *slot += s * bj;
                }
            }
            assert_eq!(w, m.w6);
        }
    }

    #[test]
    fn membership_predicates() {
        let m = model();
        assert!(m.e8_member(&m.a2));
        assert!(!m.e8_member(&zvec([1, 0, 0, 0, 0, 0, 0, 0])));
        assert!(!m.e8_member(&halfvec([1, 1, 1, 1, 1, 1, 1, 2])));
        assert!(m.e6_dual_member(&m.w6));
        assert!(!m.e6_member(&m.w6));
        assert!(m.in_w6_coset(&m.w6));
        // w₆ + (e₄−e₃) stays in the coset.
        let shifted: Vec<Rat> = m
            .w6
            .iter()
            .zip(zvec([0, 0, -1, 1, 0, 0, 0, 0]).iter())
            .map(|(a, b)| a + b)
            .collect();
        assert!(m.in_w6_coset(&shifted));
        assert!(!m.in_w6_coset(&m.v2_dual));
        // Glue: w₆ + v₂^∨ ∈ E8.
        let glue: Vec<Rat> = m
            .w6
            .iter()
            .zip(m.v2_dual.iter())
            .map(|(a, b)| a + b)
            .collect();
        assert!(m.e8_member(&glue));
    }

    #[test]
    fn coordinate_round_trips() {
        let m = model();
        for r in m.e8_roots.iter().step_by(17) {
            let coords = m.e8_coords(r).expect("roots have integer coordinates");
            let mut back = vec![Rat::zero(); 8];
            for (ci, b) in coords.iter().zip(m.e8_basis.iter()) {
                let cr = Rat::from_integer(ci.clone());
                for (slot, bj) in back.iter_mut().zip(b.iter()) {
                    *slot += &cr * bj;
                }
            }
            assert_eq!(&back, r);
        }
        assert!(m.e8_coords(&m.w6).is_none());
        let coords = m.e6_coords(&m.w6).expect("w₆ in E6 ⊗ Q");
        assert_eq!(m.z8_from_e6_coords(&coords), m.w6);
    }
}

//! Independent verification of embedding certificates.
//!
//! The verifier re-derives every claim from scratch inside the rank-10
//! ambient lattice U ⊕ E8(−1) — basis (e, f, b₁..b₈) with b_j the fixed E8
//! basis of the Z⁸ model. From the certificate's (α, β, v) it builds
//! ℓ = αe + βf + u, checks the Gram matrix of ⟨a1, a2, ℓ⟩, saturation,
//! and exhaustively enumerates the norm-(−2) vectors of the orthogonal
//! complement, classifying each ± class by its U-block coordinates. The
//! resulting count and type breakdown must match the certificate and must
//! also agree with the independent classification computed from the E6
//! roots directly.
//!
//! Gates are checked in a fixed order and the first failure is reported,
//! so a given corruption always trips the same named gate.

use std::fmt;

use lattice_core::rat::Rat;
use lattice_core::{model, standard_lattice, Definiteness, Lattice, Sublattice};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use shortvec::QuadForm;

use crate::certificate::{EmbeddingCertificate, TypeCounts, SCHEMA};
use crate::classify::classify_roots;

/// Named verification stages, in evaluation order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gate {
    /// Certificate schema string matches the supported version.
    Schema,
    /// Certificate was produced against the same fixed Z⁸ model.
    Model,
    /// Ranges and arithmetic relations among d, n, α, β, m, breakdown.
    WellFormed,
    /// v lies in the right lattice/coset and has the required norm.
    NormCoset,
    /// d ≡ 0 only: v = x₁s₁ + x₂s₂ + x₃s₃ with all xᵢ nonzero.
    VForm,
    /// d ≡ 0 only: gcd(x₁, x₂, x₃) = 1.
    VPrimitive,
    /// d ≡ 0 only: 3 ∤ gcd(α, β).
    GcdAlphaBeta,
    /// d ≡ 2 only: v + v₂∨ lands in E8.
    Glue,
    /// Gram matrix of (a1, a2, ℓ) equals [[−2,1,0],[1,−2,ε],[0,ε,2n]].
    LatticeGram,
    /// ⟨a1, a2, ℓ⟩ is saturated in the ambient lattice.
    SaturationIndex,
    /// The complement holds exactly 2·claimed_m norm-(−2) vectors.
    RootCount,
    /// Per-type breakdown of the complement roots matches the claim and the
    /// E6-side classification.
    TypeBreakdown,
    /// d ≡ 0 only: no complement root class with nonzero E8 part is
    /// anti-invariant under (−Id_U, J).
    Jprime,
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Gate::Schema => "schema",
            Gate::Model => "model",
            Gate::WellFormed => "well-formed",
            Gate::NormCoset => "norm-coset",
            Gate::VForm => "v-form",
            Gate::VPrimitive => "v-primitive",
            Gate::GcdAlphaBeta => "gcd-alpha-beta",
            Gate::Glue => "glue",
            Gate::LatticeGram => "lattice-gram",
            Gate::SaturationIndex => "saturation-index",
            Gate::RootCount => "root-count",
            Gate::TypeBreakdown => "type-breakdown",
            Gate::Jprime => "j-prime",
        };
        f.write_str(s)
    }
}

/// Outcome of verifying one certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// 1 ≤ m ≤ 6: the component is of general type.
    GeneralType { m: u32 },
    /// m = 7: nonnegative Kodaira dimension.
    NonnegKodaira,
    /// Some gate failed; `detail` says how.
    Invalid { gate: Gate, detail: String },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        !matches!(self, Verdict::Invalid { .. })
    }

    /// The verified m, when valid.
    pub fn m(&self) -> Option<u32> {
        match self {
            Verdict::GeneralType { m } => Some(*m),
            Verdict::NonnegKodaira => Some(7),
            Verdict::Invalid { .. } => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::GeneralType { m } => write!(f, "valid: general type (m = {m})"),
            Verdict::NonnegKodaira => write!(f, "valid: nonnegative Kodaira dimension (m = 7)"),
            Verdict::Invalid { gate, detail } => write!(f, "invalid at gate {gate}: {detail}"),
        }
    }
}

macro_rules! gate {
    ($g:expr, $cond:expr, $($fmt:tt)*) => {
        if !($cond) {
            return Verdict::Invalid { gate: $g, detail: format!($($fmt)*) };
        }
    };
}

macro_rules! try_gate {
    ($g:expr, $expr:expr) => {
        match $expr {
            Ok(v) => v,
            Err(e) => {
                return Verdict::Invalid { gate: $g, detail: e.to_string() };
            }
        }
    };
}

fn dot_q8(x: &[Rat], y: &[Rat]) -> Rat {
    x.iter().zip(y.iter()).map(|(a, b)| a * b).sum()
}

/// The rank-10 ambient U ⊕ E8(−1); basis order (e, f, b₁..b₈).
pub fn ambient_u_e8neg() -> crate::errors::Result<Lattice> {
    let u = standard_lattice("U")?;
    let e8n = standard_lattice("E8(-1)")?;
    Ok(Lattice::direct_sum("U+E8(-1)", &[&u, &e8n])?)
}

/// One ± class of complement roots, in ambient data.
struct RootClass {
    /// Coefficient of e.
    a: BigInt,
    /// Coefficient of f.
    b: BigInt,
    /// E8-block part in Z⁸ coordinates.
    v_z8: Vec<Rat>,
}

/// Checks every claim of a certificate from first principles.
pub fn verify_certificate(cert: &EmbeddingCertificate) -> Verdict {
    let m = model();

    gate!(
        Gate::Schema,
        cert.schema == SCHEMA,
        "schema \"{}\" is not \"{}\"",
        cert.schema,
        SCHEMA
    );
    gate!(
        Gate::Model,
        cert.model_id == lattice_core::MODEL_ID,
        "certificate was built against a different coordinate model"
    );

    // --- WellFormed -------------------------------------------------------
    gate!(
        Gate::WellFormed,
        cert.d_mod_6 == 0 || cert.d_mod_6 == 2,
        "d_mod_6 = {} must be 0 or 2",
        cert.d_mod_6
    );
    let is_d2 = cert.d_mod_6 == 2;
    let min_n: i64 = if is_d2 { 1 } else { 2 };
    gate!(
        Gate::WellFormed,
        cert.n >= min_n,
        "n = {} below minimum {} for d ≡ {} (mod 6)",
        cert.n,
        min_n,
        cert.d_mod_6
    );
    gate!(
        Gate::WellFormed,
        cert.alpha >= 1 && cert.beta >= 1,
        "alpha = {}, beta = {} must be positive",
        cert.alpha,
        cert.beta
    );
    let prod = match cert.alpha.checked_mul(cert.beta) {
        Some(p) => p,
        None => {
            return Verdict::Invalid {
                gate: Gate::WellFormed,
                detail: "alpha*beta overflows".into(),
            }
        }
    };
    gate!(
        Gate::WellFormed,
        cert.n < prod && prod < 2 * cert.n,
        "need n < alpha*beta < 2n, got n = {}, alpha*beta = {}",
        cert.n,
        prod
    );
    gate!(
        Gate::WellFormed,
        (1..=7).contains(&cert.claimed_m),
        "claimed_m = {} outside 1..=7",
        cert.claimed_m
    );
    let claimed_counts = cert.type_counts();
    gate!(
        Gate::WellFormed,
        claimed_counts.total() == cert.claimed_m,
        "type breakdown sums to {}, claimed_m = {}",
        claimed_counts.total(),
        cert.claimed_m
    );
    gate!(
        Gate::WellFormed,
        claimed_counts.diag_extra <= 1,
        "diag_extra = {} exceeds 1",
        claimed_counts.diag_extra
    );
    gate!(
        Gate::WellFormed,
        cert.alpha == cert.beta || claimed_counts.diag_extra == 0,
        "diag_extra = {} requires alpha = beta",
        claimed_counts.diag_extra
    );
    gate!(
        Gate::WellFormed,
        cert.v.len() == 8,
        "v has {} coordinates, expected 8",
        cert.v.len()
    );

    // --- NormCoset ---------------------------------------------------------
    let excess = prod - cert.n; // alpha*beta - n, positive by WellFormed
    let vnorm = dot_q8(&cert.v, &cert.v);
    if is_d2 {
        let target = Rat::new(BigInt::from(6 * excess - 2), BigInt::from(3));
        gate!(
            Gate::NormCoset,
            m.e6_dual_member(&cert.v),
            "v is not in the dual of E6"
        );
        gate!(
            Gate::NormCoset,
            m.in_w6_coset(&cert.v),
            "v is not in the distinguished coset of E6 in its dual"
        );
        gate!(
            Gate::NormCoset,
            vnorm == target,
            "v has norm {vnorm}, expected {target}"
        );
    } else {
        let target = Rat::from_integer(BigInt::from(2 * excess));
        gate!(Gate::NormCoset, m.e6_member(&cert.v), "v is not in E6");
        gate!(
            Gate::NormCoset,
            vnorm == target,
            "v has norm {vnorm}, expected {target}"
        );

        // --- VForm / VPrimitive / GcdAlphaBeta (d ≡ 0 only) -----------------
        let mut xs: Vec<BigInt> = Vec::with_capacity(3);
        for (i, s) in m.s.iter().enumerate() {
            let half = dot_q8(&cert.v, s) / Rat::from_integer(BigInt::from(2));
            gate!(
                Gate::VForm,
                half.is_integer(),
                "(v, s{}) is not even",
                i + 1
            );
            gate!(
                Gate::VForm,
                !half.is_zero(),
                "component x{} along s{} vanishes",
                i + 1,
                i + 1
            );
            xs.push(half.numer().clone());
        }
        for t in 0..8 {
            let recon: Rat = (0..3)
                .map(|i| Rat::from_integer(xs[i].clone()) * &m.s[i][t])
                .sum();
            gate!(
                Gate::VForm,
                recon == cert.v[t],
                "v is not in the span of s1, s2, s3"
            );
        }
        let g = xs[0].gcd(&xs[1]).gcd(&xs[2]);
        gate!(
            Gate::VPrimitive,
            g.is_one(),
            "gcd of components is {g}, expected 1"
        );
        let gab = BigInt::from(cert.alpha).gcd(&BigInt::from(cert.beta));
        gate!(
            Gate::GcdAlphaBeta,
            (&gab % BigInt::from(3)) != BigInt::zero(),
            "gcd(alpha, beta) = {gab} is divisible by 3"
        );
    }

    // --- Glue ---------------------------------------------------------------
    let u_part: Vec<Rat> = if is_d2 {
        cert.v
            .iter()
            .zip(m.v2_dual.iter())
            .map(|(a, b)| a + b)
            .collect()
    } else {
        cert.v.clone()
    };
    if is_d2 {
        gate!(
            Gate::Glue,
            m.e8_member(&u_part),
            "v + v2∨ does not land in E8"
        );
    }

    // --- LatticeGram ---------------------------------------------------------
    let ambient = try_gate!(Gate::LatticeGram, ambient_u_e8neg());
    let to_row = |alpha: i64, beta: i64, e8coords: &[BigInt]| -> Vec<Rat> {
        let mut row = Vec::with_capacity(10);
        row.push(Rat::from_integer(BigInt::from(alpha)));
        row.push(Rat::from_integer(BigInt::from(beta)));
        row.extend(e8coords.iter().map(|c| Rat::from_integer(c.clone())));
        row
    };
    let a1c = match m.e8_coords(&m.a1) {
        Some(c) => c,
        None => {
            return Verdict::Invalid {
                gate: Gate::LatticeGram,
                detail: "internal: a1 not in E8".into(),
            }
        }
    };
    let a2c = match m.e8_coords(&m.a2) {
        Some(c) => c,
        None => {
            return Verdict::Invalid {
                gate: Gate::LatticeGram,
                detail: "internal: a2 not in E8".into(),
            }
        }
    };
    let uc = match m.e8_coords(&u_part) {
        Some(c) => c,
        None => {
            return Verdict::Invalid {
                gate: Gate::LatticeGram,
                detail: "E8 component of ell is not an E8 vector".into(),
            }
        }
    };
    let rows = vec![
        to_row(0, 0, &a1c),
        to_row(0, 0, &a2c),
        to_row(cert.alpha, cert.beta, &uc),
    ];
    let eps: i64 = if is_d2 { 1 } else { 0 };
    let expect = [
        [-2i64, 1, 0],
        [1, -2, eps],
        [0, eps, 2 * cert.n],
    ];
    for i in 0..3 {
        for j in 0..3 {
            let got = try_gate!(Gate::LatticeGram, ambient.inner(&rows[i], &rows[j]));
            gate!(
                Gate::LatticeGram,
                got == Rat::from_integer(BigInt::from(expect[i][j])),
                "gram entry ({i},{j}) = {got}, expected {}",
                expect[i][j]
            );
        }
    }

    // --- SaturationIndex ------------------------------------------------------
    let span = try_gate!(
        Gate::SaturationIndex,
        Sublattice::new(ambient.clone(), rows)
    );
    let idx = try_gate!(Gate::SaturationIndex, span.saturation_index());
    gate!(
        Gate::SaturationIndex,
        idx.is_one(),
        "span of (a1, a2, ell) has index {idx} in its saturation"
    );

    // --- RootCount -------------------------------------------------------------
    let comp = try_gate!(Gate::RootCount, span.orthogonal_complement());
    gate!(
        Gate::RootCount,
        comp.rank() == 7,
        "complement has rank {}, expected 7",
        comp.rank()
    );
    let comp_lat = try_gate!(Gate::RootCount, comp.as_lattice("complement"));
    gate!(
        Gate::RootCount,
        comp_lat.definiteness() == Definiteness::NegativeDefinite,
        "complement is not negative definite"
    );
    let form = try_gate!(Gate::RootCount, QuadForm::new(comp_lat.gram()));
    let two = Rat::from_integer(BigInt::from(2));
    let key = match form.key_of_norm(&two) {
        Some(k) => k,
        None => {
            return Verdict::Invalid {
                gate: Gate::RootCount,
                detail: "norm 2 is not attained by an integral key".into(),
            }
        }
    };
    let roots = form.vectors_with_key(key);
    gate!(
        Gate::RootCount,
        roots.len() as u32 == 2 * cert.claimed_m,
        "complement has {} norm-(−2) vectors, certificate claims {}",
        roots.len(),
        2 * cert.claimed_m
    );

    // --- TypeBreakdown ------------------------------------------------------------
    // One representative per ± class: first nonzero coordinate positive.
    let mut classes: Vec<RootClass> = Vec::with_capacity(roots.len() / 2);
    for x in &roots {
        match x.iter().find(|&&c| c != 0) {
            Some(&c) if c > 0 => {}
            _ => continue,
        }
        // Ambient coordinates of the root: sum of x_i * (i-th complement basis row).
        let basis = comp.basis();
        let mut amb = vec![Rat::zero(); 10];
        for (xi, brow) in x.iter().zip(basis.iter()) {
            if *xi == 0 {
                continue;
            }
            let xi_rat = Rat::from_integer(BigInt::from(*xi));
            for (t, b) in brow.iter().enumerate() {
                amb[t] += &xi_rat * b;
            }
        }
        let a = amb[0].numer().clone();
        let b = amb[1].numer().clone();
        debug_assert!(amb[0].is_integer() && amb[1].is_integer());
        // E8-block part back in Z⁸ coordinates.
        let mut v_z8 = vec![Rat::zero(); 8];
        for (j, c) in amb[2..].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for t in 0..8 {
                v_z8[t] += c * &m.e8_basis[j][t];
            }
        }
        classes.push(RootClass { a, b, v_z8 });
    }

    let mut derived = TypeCounts::default();
    for class in &classes {
        let a_zero = class.a.is_zero();
        let b_zero = class.b.is_zero();
        if a_zero && b_zero {
            derived.type_i += 1;
        } else if !a_zero && b_zero {
            derived.type_ii += 1;
        } else if a_zero && !b_zero {
            derived.type_iii += 1;
        } else if (&class.a * &class.b) == BigInt::from(-1) {
            derived.diag_extra += 1;
        } else {
            return Verdict::Invalid {
                gate: Gate::TypeBreakdown,
                detail: format!(
                    "complement root with U-block coordinates ({}, {}) violates the product constraint",
                    class.a, class.b
                ),
            };
        }
    }
    gate!(
        Gate::TypeBreakdown,
        derived == claimed_counts,
        "complement roots break down as {:?}, certificate claims {:?}",
        derived.as_array(),
        claimed_counts.as_array()
    );
    let from_e6 = try_gate!(
        Gate::TypeBreakdown,
        classify_roots(cert.alpha, cert.beta, &cert.v)
    );
    gate!(
        Gate::TypeBreakdown,
        from_e6 == claimed_counts,
        "E6-side classification {:?} disagrees with certificate {:?}",
        from_e6.as_array(),
        claimed_counts.as_array()
    );

    // --- Jprime ----------------------------------------------------------------
    if !is_d2 {
        for class in &classes {
            if class.v_z8.iter().all(Rat::is_zero) {
                continue; // the diagonal ± class is exempt
            }
            let mut anti = true;
            let mut proj = vec![Rat::zero(); 8];
            for s in m.s.iter() {
                let inner = dot_q8(&class.v_z8, s);
                for t in 0..8 {
                    proj[t] += &inner * &s[t];
                }
            }
            for t in 0..8 {
                if &class.v_z8[t] * Rat::from_integer(BigInt::from(2)) != proj[t] {
                    anti = false;
                    break;
                }
            }
            if anti {
                return Verdict::Invalid {
                    gate: Gate::Jprime,
                    detail: format!(
                        "root class with U-block ({}, {}) is anti-invariant under (−Id, J)",
                        class.a, class.b
                    ),
                };
            }
        }
    }

    if cert.claimed_m == 7 {
        Verdict::NonnegKodaira
    } else {
        Verdict::GeneralType { m: cert.claimed_m }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// A hand-checkable d ≡ 0 certificate: n = 19, (α, β) = (5, 5),
    /// v = s₁ + s₂ + 2s₃ of norm 12 = 2(25 − 19).
    fn d0_sample() -> EmbeddingCertificate {
        let m = model();
        let mut v = vec![Rat::zero(); 8];
        for (coef, s) in [(1i64, &m.s[0]), (1, &m.s[1]), (2, &m.s[2])] {
            for t in 0..8 {
                v[t] += Rat::from_integer(BigInt::from(coef)) * &s[t];
            }
        }
        EmbeddingCertificate {
            schema: SCHEMA.into(),
            d_mod_6: 0,
            n: 19,
            alpha: 5,
            beta: 5,
            v,
            claimed_m: 6,
            // |(v, r)| ≤ √(12·2) < 5 for any root r, so no class can have a
            // nonzero pairing divisible by α = β = 5: everything orthogonal
            // plus the diagonal class.
            type_breakdown: [5, 0, 0, 1],
            model_id: lattice_core::MODEL_ID.into(),
        }
    }

    #[test]
    fn ambient_shape() {
        let amb = ambient_u_e8neg().unwrap();
        assert_eq!(amb.rank(), 10);
        assert_eq!(amb.signature(), (1, 9));
        assert!(amb.is_even());
        assert!(amb.discriminant_group().unwrap().is_empty());
    }

    #[test]
    fn sample_d0_verifies() {
        let cert = d0_sample();
        let verdict = verify_certificate(&cert);
        assert_eq!(verdict, Verdict::GeneralType { m: 6 }, "{verdict}");
    }

    #[test]
    fn schema_and_model_gates_fire_first() {
        let mut cert = d0_sample();
        cert.schema = "cubic-cert/0".into();
        match verify_certificate(&cert) {
            Verdict::Invalid { gate, .. } => assert_eq!(gate, Gate::Schema),
            v => panic!("expected schema failure, got {v}"),
        }
        let mut cert = d0_sample();
        cert.model_id = "other".into();
        match verify_certificate(&cert) {
            Verdict::Invalid { gate, .. } => assert_eq!(gate, Gate::Model),
            v => panic!("expected model failure, got {v}"),
        }
    }

    #[test]
    fn mutated_counts_are_rejected() {
        let mut cert = d0_sample();
        cert.claimed_m = 5;
        cert.type_breakdown = [4, 0, 0, 1];
        match verify_certificate(&cert) {
            Verdict::Invalid { gate, .. } => assert_eq!(gate, Gate::RootCount),
            v => panic!("expected root-count failure, got {v}"),
        }

        let mut cert = d0_sample();
        cert.type_breakdown = [4, 1, 1, 0];
        match verify_certificate(&cert) {
            Verdict::Invalid { gate, .. } => assert_eq!(gate, Gate::TypeBreakdown),
            v => panic!("expected type-breakdown failure, got {v}"),
        }
    }

    #[test]
    fn norm_gate_rejects_wrong_product() {
        let mut cert = d0_sample();
        // Same (α, β) but n = 20: the expected norm drops to 10 while v
        // still has norm 12.
        cert.n = 20;
        match verify_certificate(&cert) {
            Verdict::Invalid { gate, .. } => assert_eq!(gate, Gate::NormCoset),
            v => panic!("expected norm failure, got {v}"),
        }
    }

    #[test]
    fn v_multiple_of_single_root_fails_v_form() {
        let m = model();
        let mut cert = d0_sample();
        // v = s₁ + s₂ has no s₃ component, which the v-form gate must reject.
        let mut v = vec![Rat::zero(); 8];
        for t in 0..8 {
            v[t] = &m.s[0][t] + &m.s[1][t];
        }
        cert.v = v;
        cert.alpha = 5;
        cert.beta = 5;
        cert.n = 23; // norm 4 = 2(25 − 23)
        cert.claimed_m = 4;
        cert.type_breakdown = [3, 0, 0, 1];
        match verify_certificate(&cert) {
            Verdict::Invalid { gate, .. } => assert_eq!(gate, Gate::VForm),
            v => panic!("expected v-form failure, got {v}"),
        }
    }
}

//! Embedding certificates: a compact, serializable witness (n, α, β, v) that
//! a primitive sublattice with prescribed root behavior embeds as required.
//!
//! The JSON layout is fixed (schema tag `cubic-cert/1`) and serialization is
//! deterministic, so identical searches yield identical certificate bytes.

use lattice_core::rat::Rat;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::errors::{EmbedError, Result};

pub const SCHEMA: &str = "cubic-cert/1";

/// Per-class root counts for the complement of an embedded certificate.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TypeCounts {
    /// Classes ±r with (v, r) = 0.
    pub type_i: u32,
    /// Classes with zero f-coefficient, from (v, r) ≡ 0 (mod β).
    pub type_ii: u32,
    /// Classes with zero e-coefficient, from (v, r) ≡ 0 (mod α).
    pub type_iii: u32,
    /// The diagonal class ±(e − f), present exactly when α = β.
    pub diag_extra: u32,
}

impl TypeCounts {
    pub fn total(&self) -> u32 {
        self.type_i + self.type_ii + self.type_iii + self.diag_extra
    }

    pub fn as_array(&self) -> [u32; 4] {
        [self.type_i, self.type_ii, self.type_iii, self.diag_extra]
    }

    pub fn from_array(a: [u32; 4]) -> Self {
        TypeCounts { type_i: a[0], type_ii: a[1], type_iii: a[2], diag_extra: a[3] }
    }
}

fn ser_rat_vec<S: Serializer>(v: &Vec<Rat>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

fn de_rat_vec<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rat>, D::Error> {
    let raw = Vec::<String>::deserialize(d)?;
    raw.iter()
        .map(|s| s.trim().parse::<Rat>().map_err(serde::de::Error::custom))
        .collect()
}

/// A witness embedding, d ≡ 2 or d ≡ 0 (mod 6) flavor.
///
/// `v` is a vector in the fixed Z⁸ coordinate model: for d ≡ 2 it lies in the
/// nontrivial dual coset (v − w₆ in the rank-6 root lattice), for d ≡ 0 in
/// the rank-6 root lattice itself. `claimed_m` must equal the sum of
/// `type_breakdown = [typeI, typeII, typeIII, alpha_eq_beta_extra]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingCertificate {
    pub schema: String,
    pub d_mod_6: u8,
    pub n: i64,
    pub alpha: i64,
    pub beta: i64,
    #[serde(serialize_with = "ser_rat_vec", deserialize_with = "de_rat_vec")]
    pub v: Vec<Rat>,
    pub claimed_m: u32,
    pub type_breakdown: [u32; 4],
    pub model_id: String,
}

impl EmbeddingCertificate {
    /// The discriminant value d = 6n or 6n + 2 encoded by this certificate.
    pub fn d(&self) -> i64 {
        6 * self.n + self.d_mod_6 as i64
    }

    pub fn type_counts(&self) -> TypeCounts {
        TypeCounts::from_array(self.type_breakdown)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(EmbedError::from)
    }

    pub fn read_file(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    pub fn write_file(&self, path: &std::path::Path) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use lattice_core::rat::{frac, rat};

    fn sample() -> EmbeddingCertificate {
        EmbeddingCertificate {
            schema: SCHEMA.to_string(),
            d_mod_6: 2,
            n: 19,
            alpha: 5,
            beta: 6,
            v: vec![
                frac(1, 3),
                frac(-2, 3),
                rat(1),
                rat(0),
                rat(0),
                rat(0),
                rat(0),
                frac(4, 3),
            ],
            claimed_m: 6,
            type_breakdown: [4, 1, 1, 0],
            model_id: lattice_core::MODEL_ID.to_string(),
        }
    }

    #[test]
    fn json_round_trip_is_stable() {
        let cert = sample();
        let text = cert.to_json();
        let back = EmbeddingCertificate::from_json(&text).unwrap();
        assert_eq!(back, cert);
        assert_eq!(back.to_json(), text, "serialization is byte-stable");
        assert!(text.contains("\"schema\": \"cubic-cert/1\""));
        assert!(text.contains("\"1/3\""));
        assert!(text.ends_with('\n'));
    }

    #[test]
    fn d_value() {
        assert_eq!(sample().d(), 116);
        let mut c = sample();
        c.d_mod_6 = 0;
        c.n = 20;
        assert_eq!(c.d(), 120);
    }

    #[test]
    fn rejects_malformed_rationals() {
        let text = sample().to_json().replace("\"1/3\"", "\"one third\"");
        assert!(EmbeddingCertificate::from_json(&text).is_err());
    }

    #[test]
    fn type_counts_round_trip() {
        let tc = TypeCounts { type_i: 2, type_ii: 1, type_iii: 3, diag_extra: 1 };
        assert_eq!(tc.total(), 7);
        assert_eq!(TypeCounts::from_array(tc.as_array()), tc);
    }
}

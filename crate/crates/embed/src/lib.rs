//! Embedding certificates for the rank-3 sublattices ⟨a1, a2, ℓ⟩ of
//! U ⊕ E8(−1): deterministic searches that produce them, an exact
//! classification of the orthogonal-complement root system they claim, and
//! an independent verifier that re-derives every claim by complement
//! enumeration.
//!
//! A certificate fixes (n, d mod 6, α, β) with n < αβ < 2n and a vector v
//! in E6 (d ≡ 0) or in the distinguished coset of E6 inside its dual
//! (d ≡ 2). It claims that ℓ = αe + βf + u has exactly m ± pairs of roots
//! orthogonal to ⟨a1, a2, ℓ⟩, broken down by type. Verified certificates
//! with 1 ≤ m ≤ 6 witness general type; m = 7 witnesses nonnegative
//! Kodaira dimension.

pub mod certificate;
pub mod classify;
pub mod errors;
pub mod kd;
pub mod lemma;
pub mod search;
pub mod squares;
pub mod verify;

pub use certificate::{EmbeddingCertificate, TypeCounts, SCHEMA};
pub use classify::classify_roots;
pub use errors::{EmbedError, Result};
pub use kd::build_kd_perp;
pub use lemma::lemma68_counts;
pub use search::{
    search_0mod6, search_2mod6, ExhaustionReport, PairRecord, SearchConfig, SearchOutcome,
};
pub use squares::{
    is_three_nonzero_square_exception, three_nonzero_squares, three_square_decompositions,
    NONZERO_EXCEPTIONS,
};
pub use verify::{ambient_u_e8neg, verify_certificate, Gate, Verdict};

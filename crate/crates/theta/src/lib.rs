//! Theta series, local densities, and representation-number formulas for the
//! fixed family of quadratic forms S₁, S₂, S₃ attached to the three shifted
//! sublattices M₁, M₂, M₃ of the ambient model (see `lattice_core::model`).
//!
//! The crate offers three mutually checking routes to the same counts:
//!
//! * exact enumeration of theta coefficients ([`table`]);
//! * p-adic local densities by direct counting and by closed formulas
//!   ([`density`]);
//! * global product formulas with certified error brackets ([`repnum`]),
//!   plus analytic upper/lower bounds and the combined inequality decision
//!   ([`bounds`]).

pub mod arith;
pub mod bounds;
pub mod bracket;
pub mod density;
pub mod errors;
pub mod repnum;
pub mod table;

pub use bounds::{
    bound_m1_lower, bound_m2_upper, bound_m3_upper, check_key_inequality, divisor_sum_refinement,
    KeyInequalityOutcome, KeyInequalityReport,
};
pub use bracket::BracketedReal;
pub use density::{
    alpha_p_direct, alpha_p_direct_stabilized, alpha_p_yang, diagonalize_odd_p, registry,
    LocalNormalForm, RegisteredForm,
};
pub use errors::{Result, ThetaError};
pub use repnum::{rep_number, rep_number_even_rank, rep_number_odd_rank, EvenRankForm, RepNumber};
pub use table::{
    combination_rows, coset_theta, lattice_theta, write_combination_csv, CombinationRow,
    TableSource, ThetaTable,
};

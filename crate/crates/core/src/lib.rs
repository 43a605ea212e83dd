//! Exact computations on `s`-lecture hall polytopes
//! `P_s = {λ ∈ ℝⁿ : 0 ≤ λ₁/s₁ ≤ λ₂/s₂ ≤ … ≤ λₙ/sₙ ≤ 1}`.
//!
//! - [`seq`]: sequences `s`, their derived forms `s*`, `s̃`, `reverse(s)`, and mixed-radix words.
//! - [`stats`]: descents/ascents (plain and `s`-weighted), inversion sequences, Eulerian numbers.
//! - [`parbox`]: the half-open parallelepiped `Par_s` and the `REM` family of bijections onto `Ψₙ`.
//! - [`ehrhart`]: δ-vectors by three routes, Ehrhart counts, the series identity.
//! - [`reversal`]: the reversal bijection `Γ`, the `s₁ = 1` identities, inversion-sequence bijection.
//!
//! No floating point is used anywhere; counts are [`num_bigint::BigUint`].

pub mod ehrhart;
pub mod error;
pub mod limits;
pub mod parbox;
pub mod reversal;
pub mod seq;
pub mod stats;

pub use ehrhart::{
    delta_via_ascents, delta_via_descents, delta_via_descents_unstarred, delta_via_parallelepiped,
    ehrhart_direct, ehrhart_from_delta, series_check, series_check_with, DeltaVector, EhrhartValue,
};
pub use error::{Error, Result};
pub use limits::{Limits, DEFAULT_MAX_POINTS};
pub use parbox::{
    enumerate_par, grade, grade_par, kr, par_contains, par_violation, phi, phi_q, rem, rem_bar,
    rem_bar_inv, rem_bar_q, rem_bar_q_inv, rem_inv, rem_q, rem_q_inv, GradedPointSet,
};
pub use reversal::{
    check_gamma_all, check_prop64_all, check_rev_identity, check_rev_identity_all,
    check_s1_identity, check_s1_identity_all, check_tilde_identity, check_tilde_identity_all,
    gamma, prop64_map, reversal_point_map, BatchReport, BijectionTrace, Prop64Trace,
};
pub use seq::{enumerate_words, parse_int_list, KRPair, LatticePoint, Seq, Word, Words};
pub use stats::{
    des_count_distribution, des_set, eulerian, eulerian_row, eulerian_row_by_enumeration,
    inversion_sequence, perm_from_inversion_sequence, s_asc_set, s_des_before, s_des_set,
    Permutation, StatMode, StatReport,
};

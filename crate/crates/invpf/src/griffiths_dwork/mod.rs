//! Independent recomputation of Picard-Fuchs operators by Griffiths-Dwork
//! reduction: Gröbner basis of the Jacobian ideal over Q(s), graded k-base,
//! lift certificates, pole reduction and the final linear relation.

pub mod groebner;
pub mod oracle;

pub use groebner::{groebner, groebner_with, lift, normal_form, weight_kbase, Budget, GroebnerBasis};
pub use oracle::{delta_matrix, last_column_relation, picard_fuchs_oracle, DeltaMatrix, LedgerStep, MilnorRing, OracleOptions, OracleResult, ReductionLedger};

//! Exact characteristic polynomials and region counts of generalized
//! threshold hyperplane arrangements T_{n,k,l}, defined by the hyperplanes
//! x_i + x_j = -l..k for 1 <= i < j <= n.
//!
//! Every T_{n,k,l} reduces by a parity shift to an ST_{n,k'} or CT_{n,k'}
//! family member. The engine evaluates those by counting admissible tuples
//! over Z_t through a clique/independent-set case split, interpolates the
//! exact polynomial from the evaluations, and cross-checks everything
//! against brute-force enumeration oracles and published closed forms.
//! All arithmetic is exact; there is no floating point in this crate.

pub mod engine;
pub mod error;
pub mod exact;
pub mod fixture;
pub mod model;
pub mod reference;

pub use engine::{
    case_counts_ct, case_counts_st, characteristic_polynomial, regions, sample_points,
    structural_bound, validity_bound, CaseBreakdown, CharPolyResult, SlicePlan,
};
pub use error::{Error, Result};
pub use exact::{binomial, double_falling, factorial, falling, interpolate, stirling2, IntPolynomial};
pub use fixture::{adjudicate, DiffReport, PaperTable, Verdict};
pub use model::{
    brute_count_tuples, count_admissible_tuples, count_tuples_via_independent_sets,
    enum_independent_sets, ArrangementSpec, Family, ReducedFamily, SumGraph, DEFAULT_BUDGET,
};

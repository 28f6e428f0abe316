//! Exact analysis of almost p-ary sequences: autocorrelation in `Z[ζ_p]`,
//! nearly-perfect classification, the attached difference sets in
//! `Z_N × Z_p`, closed-form nonexistence conditions and exhaustive search.

pub mod arith;
pub mod cyclotomic;
pub mod diffset;
pub mod error;
pub mod report;
pub mod search;
pub mod sequence;
pub mod theory;

pub use cyclotomic::CyclotomicInt;
pub use diffset::{
    build_ra, classify_dpds, classify_pdpds, difference_multiset, expected_pdpds_params, group_ring_residual,
    DifferenceMultiset, DpdsParams, GroupElement, GroupSubset, PdpdsParams,
};
pub use error::{Error, Result};
pub use report::SequenceReport;
pub use search::{SearchConfig, SearchFilter, SearchMode, SearchReport};
pub use sequence::{classify_nps, AlmostParySequence, AutocorrelationProfile, NpsType, Symbol};
pub use theory::{NonexistenceVerdict, VerdictStatus};

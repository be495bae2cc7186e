//! Instance generation, hierarchy-preserving rewrites and the invariance
//! checks run over them.

pub mod fuzz;
pub mod gen;
pub mod invariance;
pub mod variant;

pub use fuzz::{
    check_instance, fuzz_case, fuzz_instance, run_fuzz, CaseOutcome, FuzzBounds, FuzzInstance,
    FuzzSummary,
};
pub use gen::{gen_structure, GenParams};
pub use invariance::{
    transport_check, verify_invariance, InvarianceReport, ProjectionRow, TransportReport,
    TransportRow,
};
pub use variant::{
    duplicate_type, equivalent_variant, equivalent_variant_steps, merge_types, Variant,
};

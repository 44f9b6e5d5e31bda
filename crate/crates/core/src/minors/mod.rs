//! Minor operations, canonical forms and the minor orders.

mod canonical;
mod ops;
mod order;

pub use canonical::{are_isomorphic, canonical_form, CanonicalForm, EntryCode, SectorCode};
pub use ops::{
    contract_annulus, is_contractible_annulus, reduce_degree, remove_sector, standard_decomposition, torus_sum,
    StandardDecomposition,
};
pub use order::{
    all_minors, genus_bound_via_certificate, is_minor, neighborhood_minor_certificate,
    neighborhood_minor_certificate_with_budget, obstruction_candidate_s3, one_step_minors, Candidacy, CertificateStep,
    MinorCertificate, MinorStep, ObstructionReport, DEFAULT_SEARCH_BUDGET,
};

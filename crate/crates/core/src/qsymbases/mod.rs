//! Quasisymmetric (pseudo)bases, expansions, and the maps between them.

mod basis;
mod checks;
mod expansion;
mod ops;

pub use basis::{qsym_basis, QBasisTag};
pub use checks::{k_antipode_check, k_kbar_check};
pub use expansion::BasisExpansion;
pub use ops::{
    antipode_of_k, antipode_qsym, assemble, coproduct_in, expand_in, omega, pair_dual, pair_pi_nsym, theta,
    try_expand_in, DualPair,
};

pub(crate) use basis::qsym_basis_arc;
pub(crate) use expansion::{format_combination, format_terms, index_text};

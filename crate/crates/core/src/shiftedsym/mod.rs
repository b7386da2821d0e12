//! Symmetric and shifted symmetric families, their pairings, and the
//! identities relating them.

mod checks;
mod closed;
mod coeffs;
mod expand;
mod family;
mod tableau;

pub use checks::{
    antipode_identity_check, cauchy_check, duality_check, first_difference, gpn_check, kcoeff, kcoeff_expansion_check,
    positivity_scan, theta_grothendieck_check, ttheta_check, AntipodeFamily, Conjecture, DualityCheck, IdentityReport,
    ScanReport,
};
pub use closed::{change_of_basis_closed, ClosedChange};
pub use coeffs::{expansion_table, kcoeff_table, structure_coeffs, CoeffEntry, CoeffKind, CoeffTable, CSV_COLUMNS};
pub use expand::{assemble_sym, expand_in_family, hall_form, omega_sym, shifted_form, try_expand_in_family, ShiftedPair};
pub use family::{slashslash, sym_basis, sym_basis_skew, SlashFamily, SymFamily};
pub use tableau::{BarTableau, EntryKind, Letter, ShiftedTableau};

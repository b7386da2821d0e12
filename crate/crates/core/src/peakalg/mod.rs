//! The multipeak algebras: arithmetic in the `Π` and `Θ̄` bases, the Hopf
//! structure, the realization inside `MMR`, and the projection to `ΓK`.

mod checks;
mod element;
mod hopf;
mod realize;

pub use checks::{
    antipode_check, associativity_check, conversion_check, coproduct_check, free_generation_check, pairing_check,
    peak_free_lemma_check, product_duality_check, projection_check, random_element_check, realization_check,
};
pub use element::{convert, glue, opeak_mul, tpeak_mul, Glue, PeakBasis, PeakElement};
pub use hopf::{
    antipode, antipode_generator, coproduct, coproduct_generator, counit, from_generators, generator_monomial,
    odd_compositions, to_generators, tpeak_coproduct_forms, PeakTensor,
};
pub use realize::{project_to_sym, realize, realize_tpeak_via_r, recognize};

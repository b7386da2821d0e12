//! Packed words, set compositions, and the Hopf algebras `mMR` and `MMR`
//! of small and big multipermutations, at bounded size.

mod bigmr;
mod checks;
mod combination;
mod mmr;
mod setcomp;
mod word;

pub use bigmr::{bigmr_comul, bigmr_mul, expand_in_r, r_element, r_product, reduce, SetCompCombination, SetCompTensor};
pub use checks::{bigmr_bialgebra_check, mmr_bialgebra_check, mr_duality_check, word_morphism_check};
pub(crate) use checks::poly_coproduct;
pub use combination::{first_mismatch, Combination, Tensor};
pub use mmr::{
    mmr_comul, mmr_coproduct, mmr_mul, mmr_product, mmr_product_bruteforce, zeta_alpha, zeta_combination, zeta_pseudo,
    zeta_word, WordCombination, WordTensor, Zeta,
};
pub use setcomp::{
    big_multiperms, bullet_product, normal_form, normal_forms_all_orders, sbar_multiperms, set_compositions,
    NormalForm, SetComposition, MAX_SETCOMP_SIZE,
};
pub use word::{
    collapse, descents, packed_words, parse_word, peaks, shuffle, small_multiperms, small_multiperms_of_length,
    standardize, word_stats, word_text, PackedWord, WordStats,
};

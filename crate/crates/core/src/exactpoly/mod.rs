//! Exact truncated polynomials in `x_1..x_N` and `beta`.

mod betapoly;
mod classify;
mod coeff;
mod context;
mod monomial;
mod poly;
mod tensor;
mod unipoly;

pub use betapoly::BetaPoly;
pub use unipoly::UniPoly;
pub use classify::{classify, specialize, zeta_q, Classification, Homogeneity, Specialization, Specialized};
pub use coeff::{binomial, coeff_to_string, frac, int, parse_coeff, pow2, to_i64, Coeff};
pub use context::{TruncationContext, MAX_DEGREE};
pub use monomial::{Monomial, MAX_VARS};
pub use poly::{PolyJson, TermJson, TruncPoly};
pub use tensor::{monomial_quasisymmetric, monomial_symmetric, tensor_split, SplitMode, TensorExpansion};

pub(crate) use classify::{require_quasisymmetric, require_symmetric};

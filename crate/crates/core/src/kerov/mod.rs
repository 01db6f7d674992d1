//! Kerov character polynomials `K_r`, their graded components, and the
//! three generator families `R`, `C`, `Q` they are expanded in.

pub mod closed_forms;
pub mod generators;
pub mod interpolate;
pub mod poly;
pub mod store;

pub use closed_forms::{krr1_closed_form, krr3_closed_form, weighted_triple_sum, TripleSumForm};
pub use generators::change_generators;
pub use interpolate::{
    compute_kerov, kerov_support, KerovFinding, KerovPolynomial, SamplingConfig,
};
pub use poly::{CumulantPolynomial, Family};
pub use store::{KerovStore, Origin};

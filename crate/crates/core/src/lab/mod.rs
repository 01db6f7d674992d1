//! The conjectural descriptions of the graded components of `K_r`: the
//! coefficient tables, the predicted components, extraction of the
//! describing functions from data, and the verification suites.

pub mod extract;
pub mod identities;
pub mod predict;
pub mod tables;
pub mod verify;

pub use extract::{extract_symfunc, target_from_letter, target_letter, ExtractionReport};
pub use predict::{
    first_function, predicted_component, predicted_component_f, predicted_component_g,
    predicted_component_upper_f,
};
pub use tables::{load_all, load_table, CoefficientTable, TableKind, TableSource};
pub use verify::{
    positivity_report_poly, positivity_report_symfunc, verify_table, Check, PositivityReport,
    Suite, SuiteContext, SuiteReport,
};

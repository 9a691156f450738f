//! Independent reference values: direct definition sums, tanh-sinh
//! quadrature, closed forms and stored constant literals.

pub mod closed_form;
pub mod constants;
pub mod definition;
pub mod quadrature;
pub mod special;

pub use closed_form::{closed_form, ClosedFormArgs, ClosedFormName};
pub use constants::{validate_literals, LiteralCheck};
pub use definition::{definition_sum, somos_log_direct};
pub use quadrature::{quadrature, IntegrandKind, QuadratureResult, QuadratureSpec};
pub use special::{bernoulli, digamma, log_gamma};

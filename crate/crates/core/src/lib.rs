//! Exact computer algebra for quadratic Pfister forms over characteristic-2
//! function fields: block forms and Witt decomposition, the additive symbol
//! calculus, the Σ linkage obstruction, valuation-based anisotropy
//! certificates, and the abstract (V, U, P) tightness framework over F2.

pub mod abstract_tight;
pub mod field2;
pub mod linkage;
pub mod quadform;
pub mod oracle;
pub mod parse;
pub mod symbols;

pub use field2::{Ctx, FieldContext, FieldElement, FiniteField};
pub use quadform::QuadraticForm;

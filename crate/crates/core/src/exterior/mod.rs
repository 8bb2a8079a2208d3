//! Polynomial 1-forms, 2-forms and vector fields on a numeric chart.

mod coefficient;
mod forms;
mod reduce;
mod text;

pub use coefficient::Coefficient;
pub use forms::{interior, interior2, lie_derivative, try_lie_derivative, OneForm, TwoForm, VectorField};
pub use reduce::{leading_pivots, reduce_auto, reduce_mod_system, Reduction};
pub use text::{one_form_text, vector_field_text};

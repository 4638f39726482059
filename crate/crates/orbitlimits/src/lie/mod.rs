//! gl(n), its bracket, and the two representations used throughout: forms
//! under substitution and matrices under conjugation.

mod form;
mod rep;

pub use form::{default_names, pow_q, Form, MPoly};
pub use rep::*;

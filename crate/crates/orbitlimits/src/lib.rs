//! Exact computation of limit points of group orbits in representations of
//! `GL(X)`, the Lie algebras of their stabilizers, and the local models used
//! to compute them.

pub mod conj;
pub mod diffgeo;
pub mod error;
pub mod exact;
pub mod io;
pub mod lie;
pub mod limits;
pub mod local_model;
pub mod reproduce;

pub use error::{Error, Result};

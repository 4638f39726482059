//! Projective orbit closures of matrices under conjugation: partitions and
//! dominance, Jordan data, the `X_k^r` separators, witness families, and the
//! slices at `J_n` and `J_{a,b}`.

mod closure;
mod partition;
mod probe;
mod slices;
mod spec;

pub use closure::*;
pub use partition::*;
pub use probe::*;
pub use slices::*;
pub use spec::*;

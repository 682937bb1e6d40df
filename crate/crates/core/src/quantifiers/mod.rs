//! Local generalized quantifiers and their algebra.

mod algebra;
mod lift;
mod local;
mod registry;
mod tuples;

pub use algebra::{branch, branch_sher, is_maximal_product, product, transpose};
pub use lift::{all_down_sets, h_q, hodges_lift, witness_lift, DownSet};
pub use local::{is_monotone, LocalQuantifier};
pub use registry::{Definition, QuantifierRegistry};
pub use tuples::{TupleSet, TupleSpace, MAX_TUPLES};

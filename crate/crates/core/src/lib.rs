//! Finite hypergroups: set-valued Cayley tables, fundamental relations,
//! the kernel correspondence, quotients, relation functors, hypermodules
//! and theta-tensor products.

pub mod error;
pub mod functors;
pub mod hypergroup;
pub mod io;
pub mod modtensor;
pub mod quotients;
pub mod relations;
pub mod subset;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};
pub use hypergroup::{Carrier, Flags, HyperOp, Hypergroup, SubHyp, VerifyFailure};
pub use quotients::{FgAbGroup, GroupTable};
pub use relations::EquivRelation;
pub use subset::ElemSet;

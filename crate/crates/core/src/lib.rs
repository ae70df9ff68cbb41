//! Exact computation of r-th powers in wreath products `G wr S_n` at the
//! level of conjugacy classes.
//!
//! The class-level path ([`wreath`], [`series`]) works entirely with
//! conjugacy types and partition counts. The [`oracle`] module builds the
//! group element by element and is used to cross-check every class-level
//! formula at small scale.

pub mod arith;
pub mod cli;
pub mod error;
pub mod groups;
pub mod oracle;
pub mod partitions;
pub mod series;
pub mod wreath;

pub use arith::Prime;
pub use error::{Error, Result};
pub use groups::{
    build_from_cayley, catalog_group, conjugacy_classes, is_power_surjective, nonpower_classes,
    CatalogKind, ClassLabeling, ClassStructure, GroupModel, GroupSpec,
};
pub use partitions::Partition;
pub use series::TruncatedSeries;
pub use wreath::{TypeMatrix, WreathClassInfo};

//! Packing radius of vectors and linear codes under poset metrics.
//!
//! The packing radius of a poset is found by partitioning its maximal
//! elements so that the ideals of the two blocks are as balanced and as
//! disjoint as possible. [`poset_partition`] solves that problem with a
//! generalised Karmarkar–Karp differencing search, [`partition`] handles
//! the classic number-partition special case, and [`oracle`] holds
//! brute-force reference implementations.

#![no_std]

extern crate alloc;

pub mod bits;
pub mod codes;
pub mod er;
pub mod oracle;
pub mod partition;
pub mod poset;
pub mod poset_partition;
pub mod radius;
pub mod search;

pub use bits::Bits;
pub use codes::{FieldVector, LinearCode};
pub use poset::{ElementSet, Poset};
pub use radius::{radius_of_code, radius_of_poset, radius_of_vector, Strategy};
pub use search::Limits;

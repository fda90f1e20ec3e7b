//! Conjugacy classes of subgroups and tables of marks of finite permutation
//! groups.
//!
//! Given the pattern (class representatives plus table of marks) of a normal
//! subgroup `A` of prime index in `S`, [`engine::table_of_marks_by_cyclic_extension`]
//! builds the pattern of `S`; iterating along a composition series handles
//! any solvable group. The [`oracle`] module computes the same data by brute
//! force for cross-checking, and [`verify`] checks a table against the
//! congruences every table of marks satisfies.
//!
//! ```
//! use marks::catalog::lookup;
//! use marks::engine::table_of_marks_solvable;
//!
//! let s4 = lookup("S4").unwrap().group().unwrap();
//! let p = table_of_marks_solvable(&s4).unwrap();
//! assert_eq!(p.classes.len(), 11);
//! assert_eq!(p.table.get(0, 0), 24);
//! ```

pub mod action;
pub mod catalog;
pub mod conjugacy;
pub mod document;
pub mod dress;
pub mod engine;
pub mod error;
pub mod extension;
pub mod group;
pub mod incidence;
pub mod oracle;
pub mod perm;
pub(crate) mod search;
pub mod series;
pub mod tom;
pub mod verify;

pub use error::{Error, Result};
pub use group::{Group, GroupHandle, SubgroupHandle};
pub use perm::Permutation;
pub use tom::{SubgroupPattern, TableOfMarks};

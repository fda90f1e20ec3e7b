//! mdbook can't run snippets that depend on workspace crates, so each
//! chapter is attached to an empty module here and `cargo test --doc` runs
//! its code blocks.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/permutations.md")]
pub mod permutations {}
#[doc = include_str!("../../../book/src/subgroup-classes.md")]
pub mod subgroup_classes {}
#[doc = include_str!("../../../book/src/marks.md")]
pub mod marks_chapter {}
#[doc = include_str!("../../../book/src/dress.md")]
pub mod dress {}
#[doc = include_str!("../../../book/src/verification.md")]
pub mod verification {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

//! The guide's chapters, included as rustdoc so that every code block in
//! `book/src` compiles and runs under `cargo test --doc`. mdbook renders the
//! same files; this crate is what keeps the two in sync.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/rings-and-matrices.md")]
pub mod rings_and_matrices {}

#[doc = include_str!("../../../book/src/modules.md")]
pub mod modules {}

#[doc = include_str!("../../../book/src/complexes.md")]
pub mod complexes {}

#[doc = include_str!("../../../book/src/contramodules.md")]
pub mod contramodules {}

#[doc = include_str!("../../../book/src/localized-hearts.md")]
pub mod localized_hearts {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

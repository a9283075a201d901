// mdbook cannot link the snippets against the workspace crates, so each
// chapter is a doc module here and `cargo test --doc` runs its code blocks.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/polynomials.md")]
pub mod polynomials {}
#[doc = include_str!("../../../book/src/chebyshev.md")]
pub mod chebyshev {}
#[doc = include_str!("../../../book/src/trace-coordinates.md")]
pub mod trace_coordinates {}
#[doc = include_str!("../../../book/src/character-variety.md")]
pub mod character_variety {}
#[doc = include_str!("../../../book/src/a-polynomial.md")]
pub mod a_polynomial {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

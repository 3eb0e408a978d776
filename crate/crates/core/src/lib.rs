//! Parity lifts of graphs, homomorphism counts over them, and certificates
//! for when a pattern graph tells two lifts apart.

pub mod bits;
pub mod construct;
pub mod cycles;
pub mod error;
pub mod families;
pub mod gf2;
pub mod graph;
pub mod homcount;
pub mod oddo;
pub mod verify;

pub use error::{Error, Result};

// Book chapters run as doctests, one module per chapter so a failure names
// the chapter it came from.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/lifts.md")]
    mod lifts {}
    #[doc = include_str!("../../../book/src/counting.md")]
    mod counting {}
    #[doc = include_str!("../../../book/src/oddomorphisms.md")]
    mod oddomorphisms {}
    #[doc = include_str!("../../../book/src/cycles.md")]
    mod cycles {}
    #[doc = include_str!("../../../book/src/families.md")]
    mod families {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

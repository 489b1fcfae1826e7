//! Continuous-variable photonic Born machines on a truncated Fock space.

pub mod error;
mod expm;
pub mod fock;
pub mod gates;
pub mod homodyne;
pub mod mmd;
pub mod presets;
pub mod training;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/fock_space.md")]
    mod fock_space {}
    #[doc = include_str!("../../../book/src/gates.md")]
    mod gates {}
    #[doc = include_str!("../../../book/src/homodyne.md")]
    mod homodyne {}
    #[doc = include_str!("../../../book/src/born_machines.md")]
    mod born_machines {}
}

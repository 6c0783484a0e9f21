//! A desk-scale algorithmic information theory workbench.
//!
//! The crate is built around one concrete self-delimiting universal machine
//! ([`bitvm`]). Everything else is measured against it:
//!
//! * [`explorer`] enumerates the program tree, classifying each node as
//!   halting, provably divergent, invalid or undecided.
//! * [`omega`] keeps exact halting/refuted/unknown mass and certifies leading
//!   bits of the machine's halting probability.
//! * [`complexity`] bounds program-size complexity and audits finite
//!   theories of halting-probability bits.
//! * [`lawful`] separates data with short generating rules from data whose
//!   only rule is an interpolant as long as the data itself.
//!
//! The crate is `no_std` and needs only `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bits;
pub mod bitvm;
pub mod complexity;
pub mod dyadic;
pub mod explorer;
pub mod lawful;
pub mod omega;

pub use bits::{Bits, Program};
pub use dyadic::Dyadic;

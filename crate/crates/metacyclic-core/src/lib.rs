//! Metacyclic groups given by presentations, their isomorphism invariant,
//! and the Wedderburn decomposition of their rational group algebras.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod numth;
pub mod group;
pub mod invariants;
pub mod qgroup;
pub mod wedderburn;
pub mod analysis;

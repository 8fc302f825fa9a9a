//! Codes in Hamming graphs, automorphism group actions on them, and tools for
//! finding codes whose neighbour set is fixed by a group that moves the code.

pub mod autgroup;
pub mod caps;
pub mod codes;
pub mod constructions;
pub mod elusive;
pub mod error;
pub mod hamming;
pub mod io;
pub mod lemmas;
pub mod perms;
pub mod search;

pub use caps::Caps;
pub use error::{Error, Result};

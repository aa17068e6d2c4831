//! famdex: exact combinatorics of interval subspace families over F2,
//! subgroup-pair indexing sets, induced bases on pair spaces of finite
//! groups, and root-subsystem consistency counts.
//!
//! Everything is computed in exact arithmetic (F2 masks, rationals,
//! cyclotomic numbers); there is no floating point anywhere. All values are
//! immutable after construction and the public functions are pure, so the
//! crate is safe to use from multiple threads; internal memo tables are
//! lock-protected and write-once per key.

pub mod cyclo;
pub mod f2;
pub mod gammasets;
pub mod groups;
pub mod inductive;
pub mod mgamma;
pub mod precuspidal;
pub mod verify;

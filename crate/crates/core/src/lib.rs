//! Maximal symmetric-difference-free families of subsets of `[n]`.
//!
//! A family is Δ-free when no member is the symmetric difference of two
//! members. Every maximum Δ-free family has `2^(n-1)` members and is
//! `A(S^C)` for a proper subset `S^C` of `[n]`: the odd sets meeting `S^C`
//! evenly plus the even sets meeting it oddly.
//!
//! * [`set`] and [`family`]: bitmask sets, families, freeness predicates.
//! * [`construction`]: build and recognize `A(S^C)`.
//! * [`partition`]: the four parity classes against a reference set.
//! * [`oracle`] and [`canonical`]: brute-force enumeration and isomorphism classes.
//! * [`experiment`]: Monte-Carlo survival curves for random families.
//! * [`io`] and [`cli`]: file formats and the `deltafree` command.

pub mod canonical;
pub mod cli;
pub mod construction;
pub mod error;
pub mod experiment;
pub mod family;
pub mod io;
pub mod oracle;
pub mod partition;
pub mod set;

pub use construction::{generate_family, is_generated, is_maximum_family, linear_form_family, recover_generator, Generator};
pub use error::{Error, Result};
pub use family::{all_odd_family, Family};
pub use set::{GroundSize, Parity, SetWord};

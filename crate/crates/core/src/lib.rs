//! Exact machinery for point-box incidence problems in the Zarankiewicz
//! setting.
//!
//! The crate is `no_std` and only needs `alloc`. It provides:
//!
//! - [`dyadic`]: exact dyadic rationals, dyadic intervals and boxes, general
//!   open/closed boxes and translate-polytopes, all with exact membership.
//! - [`grid`] and [`split`]: finite grids, coordinate-wise monotone tables,
//!   basic sets, grid-complexity certificates, the coordinate-splitting
//!   construction and the two-dimensional halving decomposition ([`halving`]).
//! - [`incidence`]: incidence graphs by brute force and by plane sweep, and
//!   exact `K_{k,k}` / sub-grid searches with witnesses.
//! - [`extremal`]: order types, the stepping-up combinator and the extremal
//!   `K_{2,2}`-free dyadic family.
//! - [`poset`] and [`peel`]: the containment order on dyadic rectangles,
//!   Dilworth-based local linearity checks and the descendant-peeling run.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod dyadic;
mod error;
pub mod extremal;
pub mod grid;
pub mod halving;
pub mod incidence;
pub mod peel;
pub mod poset;
pub mod split;

pub use error::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

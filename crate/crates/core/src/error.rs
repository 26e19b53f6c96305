use alloc::string::String;
use core::fmt;

use crate::grid::MonotonicityViolation;
use crate::incidence::{Biclique, GridWitness};

/// Errors raised by the exact machinery.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two objects that must share a dimension do not.
    DimensionMismatch { expected: usize, found: usize },
    /// A box or grid was given zero axes.
    ZeroDimension,
    /// A general box has `lower >= upper` on some axis.
    DegenerateBox { axis: usize },
    /// The image of a dyadic interval under a dilation/translation is not a
    /// dyadic interval.
    NotAligned { axis: usize },
    /// A table fails the coordinate-wise monotonicity test.
    NotMonotone(MonotonicityViolation),
    /// A region that must be a dyadic box is not one.
    NotDyadic { region: usize },
    /// The sweep engine only handles two-dimensional boxes.
    UnsupportedRegion { region: usize },
    /// A bipartite incidence structure contains `K_{k,k}`.
    Biclique(Biclique),
    /// An explicit grid subset contains a full `k × … × k` sub-grid.
    SubGrid(GridWitness),
    /// Two coordinates that must differ coincide.
    CoordinateCollision { detail: String },
    /// An exact search or generator was asked for more than its budget.
    BudgetExceeded { limit: u128, requested: u128 },
    /// A parameter is outside its admissible range.
    InvalidParameter { name: &'static str, detail: String },
    /// Integer arithmetic left the supported range.
    Overflow,
    /// A self-check that must hold by construction failed.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::ZeroDimension => f.write_str("dimension must be at least 1"),
            Error::DegenerateBox { axis } => write!(f, "degenerate box on axis {axis}"),
            Error::NotAligned { axis } => {
                write!(f, "image of axis {axis} is not a dyadic interval")
            }
            Error::NotMonotone(v) => write!(
                f,
                "table is not coordinate-wise monotone along axis {} (co-coordinates {:?} vs {:?}, labels {} and {})",
                v.axis, v.co, v.co_prime, v.b, v.b_prime
            ),
            Error::NotDyadic { region } => write!(f, "region {region} is not a dyadic box"),
            Error::UnsupportedRegion { region } => write!(
                f,
                "region {region} is not a two-dimensional box; use the brute-force engine"
            ),
            Error::Biclique(w) => write!(
                f,
                "incidence graph contains K_{{{},{}}}: points {:?}, regions {:?}",
                w.points.len(),
                w.regions.len(),
                w.points,
                w.regions
            ),
            Error::SubGrid(w) => write!(f, "set contains the sub-grid {:?}", w.parts),
            Error::CoordinateCollision { detail } => write!(f, "coordinate collision: {detail}"),
            Error::BudgetExceeded { limit, requested } => {
                write!(f, "budget exceeded: requested {requested}, limit {limit}")
            }
            Error::InvalidParameter { name, detail } => {
                write!(f, "invalid parameter `{name}`: {detail}")
            }
            Error::Overflow => f.write_str("integer overflow"),
            Error::Internal(msg) => write!(f, "internal consistency failure: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

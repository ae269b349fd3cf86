//! Exact rational bookkeeping.
//!
//! Regime classification hinges on *strict* inequalities between quantities
//! that are rational by construction (average degrees, `n * alpha_T`), and the
//! interesting boundary instances sit exactly on the dividing line. Floats
//! cannot distinguish "equal" from "barely above", so every such comparison
//! in this crate is carried out over `Ratio<i64>` and only converted to `f64`
//! for display.

use serde::{Deserialize, Serialize};

/// Exact rational used throughout the crate.
pub type Rat = num_rational::Ratio<i64>;

/// Reduced rational in serialization-friendly form: `num / den`, `den > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatRepr {
    pub num: i64,
    pub den: i64,
}

impl From<Rat> for RatRepr {
    fn from(r: Rat) -> Self {
        Self {
            num: *r.numer(),
            den: *r.denom(),
        }
    }
}

impl From<RatRepr> for Rat {
    fn from(r: RatRepr) -> Self {
        Rat::new(r.num, r.den)
    }
}

impl RatRepr {
    /// Float view for display and plotting.
    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

/// Float view of a `Rat`.
pub fn rat_to_f64(r: Rat) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Absolute value (kept local so callers need no extra trait imports).
pub fn rat_abs(r: Rat) -> Rat {
    if r < Rat::from_integer(0) {
        -r
    } else {
        r
    }
}

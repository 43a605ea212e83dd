use num_bigint::BigUint;

use crate::error::{Error, Result};

/// Default bound on the number of points or words any single enumeration may touch.
pub const DEFAULT_MAX_POINTS: u64 = 10_000_000;

/// Resource bounds shared by every enumerating operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_points: u64,
    /// Use the rayon thread pool for enumerations. Results never depend on this.
    pub parallel: bool,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_points: DEFAULT_MAX_POINTS,
            parallel: false,
        }
    }
}

impl Limits {
    pub fn with_max_points(max_points: u64) -> Self {
        Limits {
            max_points: max_points.max(1),
            ..Limits::default()
        }
    }

    pub fn parallel(mut self, parallel: bool) -> Self {
        self.parallel = parallel;
        self
    }

    /// Checks `required` against the cap and returns it as a `u64` when it fits.
    pub fn admit(&self, required: &BigUint) -> Result<u64> {
        match u64::try_from(required) {
            Ok(n) if n <= self.max_points => Ok(n),
            _ => Err(Error::SizeCap {
                required: required.clone(),
                cap: self.max_points,
            }),
        }
    }
}

//! Size caps for the exhaustive computations.
//!
//! Every enumeration in this crate grows like a Catalan or Bell number, so each
//! operation checks its size parameter against a cap before doing any work.

use crate::error::{Error, Result};

/// Environment variable that overrides the defaults. Format is a comma-separated
/// list of `key=value` pairs, e.g. `nc=13,incidence=10`; unknown keys are an error.
pub const LIMITS_ENV: &str = "DUALGARSIDE_CAPS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest n for `enumerate_nc`.
    pub nc: usize,
    /// Largest n for the recursive Möbius oracle.
    pub mobius_oracle: usize,
    /// Largest n for `enumerate_set_partitions`.
    pub set_partitions: usize,
    /// Largest n for `enumerate_interval_partitions`.
    pub interval_partitions: usize,
    /// Largest n for the incidence matrix, counting and spectral radius.
    pub incidence: usize,
    /// Largest n for the exact determinant.
    pub determinant: usize,
    /// Largest n for power iteration.
    pub spectral: usize,
    /// Largest n for meet-matrix determinants.
    pub meet_matrix: usize,
    /// Largest number of factors in product-cumulant and tuple-counting sums.
    pub tuple_factors: usize,
    /// Largest order for tuple sums over free and classical partitions.
    pub tuple_order: usize,
    /// Largest order for tuple sums over interval partitions.
    pub tuple_order_boolean: usize,
    /// Iteration cap for power iteration.
    pub power_iterations: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            nc: 12,
            mobius_oracle: 7,
            set_partitions: 9,
            interval_partitions: 16,
            incidence: 9,
            determinant: 8,
            spectral: 8,
            meet_matrix: 6,
            tuple_factors: 4,
            tuple_order: 6,
            tuple_order_boolean: 10,
            power_iterations: 100_000,
        }
    }
}

impl Limits {
    /// Defaults overridden by [`LIMITS_ENV`] when it is set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(LIMITS_ENV) {
            Ok(spec) => Limits::default().with_overrides(&spec),
            Err(_) => Ok(Limits::default()),
        }
    }

    /// Applies `key=value` overrides on top of `self`.
    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::invalid(format!("cap override `{item}` is not key=value")))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| Error::invalid(format!("cap override `{item}` has a non-integer value")))?;
            let slot = match key.trim() {
                "nc" => &mut self.nc,
                "mobius_oracle" => &mut self.mobius_oracle,
                "set_partitions" => &mut self.set_partitions,
                "interval_partitions" => &mut self.interval_partitions,
                "incidence" => &mut self.incidence,
                "determinant" => &mut self.determinant,
                "spectral" => &mut self.spectral,
                "meet_matrix" => &mut self.meet_matrix,
                "tuple_factors" => &mut self.tuple_factors,
                "tuple_order" => &mut self.tuple_order,
                "tuple_order_boolean" => &mut self.tuple_order_boolean,
                "power_iterations" => &mut self.power_iterations,
                other => return Err(Error::invalid(format!("unknown cap `{other}`"))),
            };
            *slot = value;
        }
        Ok(self)
    }
}

pub(crate) fn check_cap(operation: &'static str, requested: usize, cap: usize) -> Result<()> {
    if requested > cap {
        Err(Error::ResourceLimit {
            operation,
            requested,
            cap,
        })
    } else {
        Ok(())
    }
}

pub(crate) fn check_ground_set(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::invalid("ground set size must be at least 1"))
    } else {
        Ok(())
    }
}

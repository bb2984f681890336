//! Process-wide capacity caps.
//!
//! Truth-table sweeps and CNF distribution grow exponentially, so every
//! operation that materializes them checks a cap first and refuses with
//! [`Error::Capacity`] instead of thrashing. The caps are fixed for the
//! lifetime of the process: a single integer `k` from `BLINDSAT_CAP` sets the
//! atom cap to `k` and the disjunct cap to `2^k`.

use std::sync::OnceLock;

use crate::error::{Error, Result};

pub const CAP_ENV: &str = "BLINDSAT_CAP";
pub const DEFAULT_MAX_ATOMS: u32 = 24;
/// Hard ceiling for `BLINDSAT_CAP`; row indices are kept in `u64`.
pub const MAX_CONFIGURABLE_ATOMS: u32 = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_atoms: u32,
    pub max_disjuncts: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits::with_atoms(DEFAULT_MAX_ATOMS)
    }
}

impl Limits {
    pub fn with_atoms(max_atoms: u32) -> Self {
        Limits {
            max_atoms,
            max_disjuncts: 1u64 << max_atoms,
        }
    }

    /// Reads `BLINDSAT_CAP`. Unset means defaults.
    pub fn from_env() -> Result<Self> {
        match std::env::var(CAP_ENV) {
            Err(_) => Ok(Limits::default()),
            Ok(raw) => Self::parse(&raw),
        }
    }

    pub fn parse(raw: &str) -> Result<Self> {
        let k: u32 = raw
            .trim()
            .parse()
            .map_err(|_| Error::Invalid(format!("{CAP_ENV} must be an integer, got {raw:?}")))?;
        if k > MAX_CONFIGURABLE_ATOMS {
            return Err(Error::out_of_range(
                CAP_ENV,
                k,
                format!("0..={MAX_CONFIGURABLE_ATOMS}"),
            ));
        }
        Ok(Limits::with_atoms(k))
    }

    pub fn check_atoms(&self, n: usize) -> Result<()> {
        if n as u64 > self.max_atoms as u64 {
            Err(Error::capacity("atom count", n, self.max_atoms))
        } else {
            Ok(())
        }
    }
}

/// The caps in force for this process; an unparsable env value falls back to
/// the defaults (the CLI validates it up front).
pub fn limits() -> Limits {
    static LIMITS: OnceLock<Limits> = OnceLock::new();
    *LIMITS.get_or_init(|| Limits::from_env().unwrap_or_default())
}

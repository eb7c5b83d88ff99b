use crate::error::{Error, Result};

/// Environment variable that overrides every size guard with one number.
pub const MAX_CARRIER_ENV: &str = "IDEMSPEC_MAX_CARRIER";

/// Size bounds for the constructions whose cost is exponential in the input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guards {
    /// Carrier bound for enumerating all congruences of a semiring.
    pub congruence_carrier: usize,
    /// Bound on `|M| * |N|` for tensor products (filters are 64-bit masks).
    pub tensor_pairs: usize,
    /// Bound on the closed-set lattice for filter spaces and sheafification.
    pub lattice: usize,
    /// Bound on any constructed carrier (products, free modules, Hom modules).
    pub carrier: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            congruence_carrier: 6,
            tensor_pairs: 36,
            lattice: 16,
            carrier: 256,
        }
    }
}

impl Guards {
    /// Defaults, with every bound replaced by `IDEMSPEC_MAX_CARRIER` when set.
    pub fn from_env() -> Self {
        match std::env::var(MAX_CARRIER_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
        {
            Some(n) => Guards::uniform(n),
            None => Guards::default(),
        }
    }

    pub fn uniform(n: usize) -> Self {
        Guards {
            congruence_carrier: n,
            // filters are stored as u64 masks
            tensor_pairs: n.min(64),
            lattice: n,
            carrier: n,
        }
    }

    pub(crate) fn check(what: &'static str, needed: usize, limit: usize) -> Result<()> {
        if needed > limit {
            Err(Error::Guard {
                what,
                needed,
                limit,
            })
        } else {
            Ok(())
        }
    }
}

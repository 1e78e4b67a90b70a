//! Run configuration shared by every subcommand. All computations are
//! deterministic functions of one of these values.

use shiftalg::{Error, Fp, Result, DEFAULT_PRIME};

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct RunConfig {
    pub prime: u64,
    pub seed: u64,
    pub trials: usize,
    /// Homological cutoff; `None` means n + 2 per instance.
    pub i_max: Option<usize>,
    pub n_max: usize,
    pub samples: usize,
    pub truncate_above_p: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            prime: DEFAULT_PRIME,
            seed: 42,
            trials: 3,
            i_max: None,
            n_max: 6,
            samples: 25,
            truncate_above_p: false,
        }
    }
}

impl RunConfig {
    pub fn field(&self) -> Result<Fp> {
        if self.prime <= 2 * self.n_max as u64 {
            return Err(Error::InvalidInput(format!(
                "prime {} must exceed twice n_max = {}",
                self.prime, self.n_max
            )));
        }
        Fp::new(self.prime)
    }

    pub fn validate(&self) -> Result<()> {
        self.field()?;
        if self.trials < 2 {
            return Err(Error::InvalidInput(format!(
                "trials must be at least 2, got {}",
                self.trials
            )));
        }
        if self.n_max < 2 || self.n_max > 8 {
            return Err(Error::InvalidInput(format!(
                "n_max must lie in 2..=8, got {}",
                self.n_max
            )));
        }
        Ok(())
    }

    pub fn i_max_for(&self, n: usize) -> usize {
        self.i_max.unwrap_or(n + 2)
    }

    /// Stable per-(suite, n, index) seed derivation.
    pub fn derived_seed(&self, salt: u64, n: usize, idx: usize) -> u64 {
        self.seed
            .wrapping_mul(0x9E37_79B9_7F4A_7C15)
            .wrapping_add(salt.wrapping_mul(0xBF58_476D_1CE4_E5B9))
            .wrapping_add((n as u64) << 32)
            .wrapping_add(idx as u64)
    }
}

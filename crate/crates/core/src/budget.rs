use crate::error::{Error, Result};

/// Resource limits for the exponential operations.
///
/// These are configuration, not constants: the CLI can override every field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Budget {
    /// Largest input count for whole-truth-table circuit evaluation.
    pub max_tt_n: u32,
    /// Largest input count for vector nonlinearity.
    pub max_vector_n: u32,
    /// Largest output count for vector nonlinearity.
    pub max_vector_m: usize,
    /// Cap on `(2^m - 1) * n * 2^n`, the elementary steps of a vector-NL sweep.
    pub vector_cost_cap: u64,
    /// Largest code dimension for exhaustive distance computation.
    pub max_code_dim: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_tt_n: 20,
            max_vector_n: 20,
            max_vector_m: 16,
            vector_cost_cap: 1 << 32,
            max_code_dim: 26,
        }
    }
}

impl Budget {
    pub fn check_tt_n(&self, n: u32) -> Result<()> {
        if n > self.max_tt_n {
            return Err(Error::budget("truth-table input count", n, self.max_tt_n));
        }
        Ok(())
    }

    pub fn check_vector(&self, n: u32, m: usize) -> Result<()> {
        if n > self.max_vector_n {
            return Err(Error::budget("vector-NL input count", n, self.max_vector_n));
        }
        if m > self.max_vector_m {
            return Err(Error::budget("vector-NL output count", m, self.max_vector_m));
        }
        // m <= 16 and n <= 24 keep this well inside u128.
        let cost = ((1u128 << m) - 1) * n.max(1) as u128 * (1u128 << n);
        if cost > self.vector_cost_cap as u128 {
            return Err(Error::budget("vector-NL cost", cost, self.vector_cost_cap));
        }
        Ok(())
    }

    pub fn check_code_dim(&self, m: usize) -> Result<()> {
        if m > self.max_code_dim {
            return Err(Error::budget("code dimension", m, self.max_code_dim));
        }
        Ok(())
    }
}

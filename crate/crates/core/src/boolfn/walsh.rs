use rayon::prelude::*;
use serde::Serialize;

use crate::bits::BitVec;
use crate::boolfn::{component_table, BooleanFunction};
use crate::budget::Budget;
use crate::error::{Error, Result};

/// Walsh spectrum `W(a) = Σ_x (-1)^(f(x) + <a,x>)` of a single-output function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalshSpectrum {
    n: u32,
    values: Vec<i64>,
}

impl WalshSpectrum {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn max_abs(&self) -> u64 {
        self.values.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0)
    }
}

/// Fast Walsh–Hadamard transform of the ±1 sign vector of `table`.
fn walsh_values(n: u32, table: &BitVec) -> Vec<i64> {
    let len = 1usize << n;
    let mut v: Vec<i64> = (0..len).map(|x| if table.get(x) { -1 } else { 1 }).collect();
    let mut h = 1;
    while h < len {
        for block in v.chunks_exact_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
    v
}

fn single_output(f: &BooleanFunction) -> Result<&BitVec> {
    if f.m() != 1 {
        return Err(Error::invalid(format!(
            "operation needs a single-output function, got m={}",
            f.m()
        )));
    }
    Ok(f.table(0))
}

pub fn walsh_spectrum(f: &BooleanFunction) -> Result<WalshSpectrum> {
    let t = single_output(f)?;
    Ok(WalshSpectrum {
        n: f.n(),
        values: walsh_values(f.n(), t),
    })
}

/// Nonlinearity of one table: `2^(n-1) - max|W| / 2`.
pub fn table_nonlinearity(n: u32, table: &BitVec) -> u64 {
    let max = walsh_values(n, table)
        .iter()
        .map(|v| v.unsigned_abs())
        .max()
        .unwrap_or(0);
    (1u64 << (n - 1)) - max / 2
}

/// Hamming distance to the closest affine function.
pub fn nonlinearity(f: &BooleanFunction) -> Result<u64> {
    let t = single_output(f)?;
    Ok(table_nonlinearity(f.n(), t))
}

/// `min_{T ≠ ∅} NL(f_T)` over all nonempty output subsets.
pub fn vector_nonlinearity(f: &BooleanFunction, budget: &Budget) -> Result<u64> {
    budget.check_vector(f.n(), f.m())?;
    let n = f.n();
    let count = 1u64 << f.m();
    let nl = (1..count)
        .into_par_iter()
        .map(|mask| table_nonlinearity(n, &component_table(f, mask)))
        .min()
        .expect("at least one component");
    Ok(nl)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NlClass {
    Bent,
    AlmostBent,
    Neither,
}

impl std::fmt::Display for NlClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            NlClass::Bent => "bent",
            NlClass::AlmostBent => "almost_bent",
            NlClass::Neither => "neither",
        })
    }
}

/// The bent bound `2^(n-1) - 2^(n/2-1)`, defined for even `n`.
pub(crate) fn bent_nl(n: u32) -> Option<u64> {
    (n.is_multiple_of(2) && n >= 2).then(|| (1u64 << (n - 1)) - (1u64 << (n / 2 - 1)))
}

/// The almost-bent bound `2^(n-1) - 2^((n-1)/2)`, defined for odd `n`.
pub(crate) fn almost_bent_nl(n: u32) -> Option<u64> {
    (n % 2 == 1).then(|| (1u64 << (n - 1)) - (1u64 << ((n - 1) / 2)))
}

/// Classifies `f` as bent, almost bent or neither, returning the measured vector NL.
pub fn classify_nl(f: &BooleanFunction, budget: &Budget) -> Result<(NlClass, u64)> {
    let nl = vector_nonlinearity(f, budget)?;
    let n = f.n();
    let class = if bent_nl(n) == Some(nl) {
        NlClass::Bent
    } else if f.m() == n as usize && almost_bent_nl(n) == Some(nl) {
        NlClass::AlmostBent
    } else {
        NlClass::Neither
    };
    Ok((class, nl))
}

//! Boolean functions `F₂ⁿ → F₂ᵐ` as packed truth tables.
//!
//! Index convention: bit `v` of a table is the value on the assignment with
//! `x_j = (v >> (j-1)) & 1`, so `x₁` is the least-significant bit.

mod anf;
mod io;
mod walsh;

pub use anf::{anf_from_tt, degree, moebius_in_place, tt_from_anf, Anf};
pub use walsh::{
    classify_nl, nonlinearity, table_nonlinearity, vector_nonlinearity, walsh_spectrum, NlClass,
    WalshSpectrum,
};

use crate::bits::BitVec;
use crate::error::{Error, Result};

/// Largest supported input count.
pub const MAX_N: u32 = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanFunction {
    n: u32,
    tables: Vec<BitVec>,
}

impl BooleanFunction {
    /// Wraps `m` truth tables of length `2^n`.
    pub fn new(n: u32, tables: Vec<BitVec>) -> Result<Self> {
        if !(1..=MAX_N).contains(&n) {
            return Err(Error::invalid(format!("input count n={n} outside 1..={MAX_N}")));
        }
        let m = tables.len();
        if m == 0 || (m as u64) > (1u64 << n) {
            return Err(Error::invalid(format!("output count m={m} outside 1..=2^{n}")));
        }
        let len = 1usize << n;
        if let Some((i, t)) = tables.iter().enumerate().find(|(_, t)| t.len() != len) {
            return Err(Error::invalid(format!(
                "table {} has {} bits, expected {len}",
                i + 1,
                t.len()
            )));
        }
        Ok(BooleanFunction { n, tables })
    }

    /// Tabulates a function with at most 64 outputs; bit `i` of `f(x)` is output `i`.
    pub fn from_fn(n: u32, m: usize, f: impl Fn(u64) -> u64) -> Result<Self> {
        if m > 64 {
            return Err(Error::invalid("from_fn supports at most 64 outputs"));
        }
        if !(1..=MAX_N).contains(&n) {
            return Err(Error::invalid(format!("input count n={n} outside 1..={MAX_N}")));
        }
        let len = 1usize << n;
        let mut tables = vec![BitVec::zeros(len); m];
        for x in 0..len {
            let y = f(x as u64);
            for (i, t) in tables.iter_mut().enumerate() {
                if (y >> i) & 1 == 1 {
                    t.set(x, true);
                }
            }
        }
        Self::new(n, tables)
    }

    /// Uniformly random function.
    pub fn random<R: rand::Rng + ?Sized>(n: u32, m: usize, rng: &mut R) -> Result<Self> {
        if !(1..=MAX_N).contains(&n) {
            return Err(Error::invalid(format!("input count n={n} outside 1..={MAX_N}")));
        }
        let len = 1usize << n;
        let tables = (0..m)
            .map(|_| BitVec::from_words(len, (0..len.div_ceil(64)).map(|_| rng.gen()).collect()))
            .collect();
        Self::new(n, tables)
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.tables.len()
    }

    pub fn tables(&self) -> &[BitVec] {
        &self.tables
    }

    pub fn table(&self, i: usize) -> &BitVec {
        &self.tables[i]
    }

    pub fn into_tables(self) -> Vec<BitVec> {
        self.tables
    }

    /// Value of output `i` (0-based) on input `x`.
    #[inline]
    pub fn output(&self, i: usize, x: u64) -> bool {
        self.tables[i].get(x as usize)
    }

    /// Outputs on `x` packed into a word; requires `m <= 64`.
    pub fn eval(&self, x: u64) -> u64 {
        assert!(self.m() <= 64, "eval packs at most 64 outputs");
        self.tables
            .iter()
            .enumerate()
            .fold(0, |acc, (i, t)| acc | ((t.get(x as usize) as u64) << i))
    }

    /// Single-output view of output `i`.
    pub fn output_fn(&self, i: usize) -> BooleanFunction {
        BooleanFunction {
            n: self.n,
            tables: vec![self.tables[i].clone()],
        }
    }
}

/// Truth table of the coordinate function `x_{j+1}` on `n` inputs.
pub fn variable_table(n: u32, j: u32) -> BitVec {
    assert!(j < n);
    const PATTERNS: [u64; 6] = [
        0xAAAA_AAAA_AAAA_AAAA,
        0xCCCC_CCCC_CCCC_CCCC,
        0xF0F0_F0F0_F0F0_F0F0,
        0xFF00_FF00_FF00_FF00,
        0xFFFF_0000_FFFF_0000,
        0xFFFF_FFFF_0000_0000,
    ];
    let len = 1usize << n;
    let words = len.div_ceil(64);
    let w: Vec<u64> = if j < 6 {
        vec![PATTERNS[j as usize]; words]
    } else {
        let block = 1usize << (j - 6);
        (0..words)
            .map(|k| if (k / block) % 2 == 1 { u64::MAX } else { 0 })
            .collect()
    };
    BitVec::from_words(len, w)
}

/// The sum `f_T` of the outputs listed in `outputs` (0-based indices).
pub fn component(f: &BooleanFunction, outputs: &[usize]) -> Result<BooleanFunction> {
    if outputs.is_empty() {
        return Err(Error::invalid("component needs a nonempty output set"));
    }
    let mut seen = vec![false; f.m()];
    let mut acc = BitVec::zeros(1 << f.n());
    for &i in outputs {
        if i >= f.m() {
            return Err(Error::invalid(format!("output index {i} out of range for m={}", f.m())));
        }
        if std::mem::replace(&mut seen[i], true) {
            return Err(Error::invalid(format!("output index {i} listed twice")));
        }
        acc.xor_assign(f.table(i));
    }
    BooleanFunction::new(f.n(), vec![acc])
}

/// `f_T` for `T` given as a bitmask over the first 64 outputs.
pub(crate) fn component_table(f: &BooleanFunction, mask: u64) -> BitVec {
    let mut acc = BitVec::zeros(1 << f.n());
    let mut rest = mask;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        acc.xor_assign(f.table(i));
    }
    acc
}

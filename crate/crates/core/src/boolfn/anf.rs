use crate::bits::BitVec;
use crate::boolfn::{BooleanFunction, MAX_N};
use crate::error::{Error, Result};

/// Algebraic normal form: for each output, the monomials present, as input masks.
///
/// Mask bit `j` selects `x_{j+1}`; the empty mask is the constant term.
/// Masks within an output are kept sorted and distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Anf {
    n: u32,
    monomials: Vec<Vec<u32>>,
}

impl Anf {
    pub fn new(n: u32, mut monomials: Vec<Vec<u32>>) -> Result<Self> {
        if !(1..=MAX_N).contains(&n) {
            return Err(Error::invalid(format!("input count n={n} outside 1..={MAX_N}")));
        }
        if monomials.is_empty() {
            return Err(Error::invalid("ANF needs at least one output"));
        }
        for (i, out) in monomials.iter_mut().enumerate() {
            if let Some(&bad) = out.iter().find(|&&mask| (mask as u64) >> n != 0) {
                return Err(Error::invalid(format!("output {}: mask {bad:#b} exceeds n={n}", i + 1)));
            }
            out.sort_unstable();
            if out.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::invalid(format!("output {}: repeated monomial", i + 1)));
            }
        }
        Ok(Anf { n, monomials })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> usize {
        self.monomials.len()
    }

    pub fn monomials(&self, output: usize) -> &[u32] {
        &self.monomials[output]
    }

    /// Total number of monomials over all outputs.
    pub fn size(&self) -> usize {
        self.monomials.iter().map(Vec::len).sum()
    }

    pub fn degree(&self) -> u32 {
        self.monomials
            .iter()
            .flatten()
            .map(|m| m.count_ones())
            .max()
            .unwrap_or(0)
    }

    /// Evaluates output `i` directly from the polynomial.
    pub fn eval(&self, output: usize, x: u32) -> bool {
        self.monomials[output]
            .iter()
            .filter(|&&mask| x & mask == mask)
            .count()
            % 2
            == 1
    }
}

/// In-place binary Möbius transform on a table of length `2^n`.
///
/// The transform is an involution, mapping truth tables to ANF coefficient
/// vectors and back.
pub fn moebius_in_place(n: u32, table: &mut BitVec) {
    const MASKS: [u64; 6] = [
        0x5555_5555_5555_5555,
        0x3333_3333_3333_3333,
        0x0F0F_0F0F_0F0F_0F0F,
        0x00FF_00FF_00FF_00FF,
        0x0000_FFFF_0000_FFFF,
        0x0000_0000_FFFF_FFFF,
    ];
    debug_assert_eq!(table.len(), 1 << n);
    let words = table.words_mut();
    for i in 0..n.min(6) {
        let shift = 1u32 << i;
        let mask = MASKS[i as usize];
        for w in words.iter_mut() {
            *w ^= (*w & mask) << shift;
        }
    }
    for i in 6..n {
        let stride = 1usize << (i - 6);
        for base in (0..words.len()).step_by(2 * stride) {
            for k in base..base + stride {
                words[k + stride] ^= words[k];
            }
        }
    }
}

pub fn anf_from_tt(f: &BooleanFunction) -> Anf {
    let monomials = f
        .tables()
        .iter()
        .map(|t| {
            let mut coeffs = t.clone();
            moebius_in_place(f.n(), &mut coeffs);
            coeffs.iter_ones().map(|i| i as u32).collect()
        })
        .collect();
    Anf {
        n: f.n(),
        monomials,
    }
}

pub fn tt_from_anf(a: &Anf) -> BooleanFunction {
    let len = 1usize << a.n;
    let tables = a
        .monomials
        .iter()
        .map(|out| {
            let mut t = BitVec::zeros(len);
            for &mask in out {
                t.set(mask as usize, true);
            }
            moebius_in_place(a.n, &mut t);
            t
        })
        .collect();
    BooleanFunction::new(a.n, tables).expect("ANF shape is valid by construction")
}

/// Algebraic degree: the largest monomial over all outputs, 0 for constants.
pub fn degree(f: &BooleanFunction) -> u32 {
    f.tables()
        .iter()
        .map(|t| {
            let mut coeffs = t.clone();
            moebius_in_place(f.n(), &mut coeffs);
            coeffs.iter_ones().map(|i| i.count_ones()).max().unwrap_or(0)
        })
        .max()
        .unwrap_or(0)
}

//! Brute-force ground truth: nonlinearity by direct distance and exact
//! multiplicative complexity of tiny functions by exhaustive search.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::bits::BitVec;
use crate::boolfn::{degree, BooleanFunction};
use crate::error::{Error, Result};

/// Largest `n` accepted by [`brute_nl`].
pub const BRUTE_NL_MAX_N: u32 = 12;

/// Minimum Hamming distance from `f` to each of the `2^(n+1)` affine functions.
pub fn brute_nl(f: &BooleanFunction) -> Result<u64> {
    if f.m() != 1 {
        return Err(Error::invalid(format!("brute NL takes a single output, got m = {}", f.m())));
    }
    if f.n() > BRUTE_NL_MAX_N {
        return Err(Error::invalid(format!("brute NL needs n <= {BRUTE_NL_MAX_N}, got {}", f.n())));
    }
    let len = 1u64 << f.n();
    let table = f.table(0);
    let mut best = u64::MAX;
    for a in 0..len {
        for b in [false, true] {
            let affine = BitVec::from_bools((0..len).map(|x| ((a & x).count_ones() & 1 == 1) ^ b));
            best = best.min(table.distance(&affine) as u64);
        }
    }
    Ok(best)
}

/// Limits for [`brute_mc`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct McSearchBudget {
    pub k_max: u32,
    /// Cap on AND-gate candidates examined, checked against the worst case up front.
    pub node_cap: u64,
}

impl Default for McSearchBudget {
    fn default() -> Self {
        McSearchBudget {
            k_max: 2,
            node_cap: 100_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum McOutcome {
    Exact(u32),
    ExceedsKmax,
}

/// Candidate count of a full search to depth `k`: gate `j` picks an unordered
/// pair of distinct nonzero linear combinations of `n + j - 1` generators.
pub fn mc_worst_case(n: u32, k: u32) -> u128 {
    (1..=k)
        .map(|j| {
            let c = (1u128 << (n + j - 1)) - 1;
            c * (c - 1) / 2
        })
        .fold(1u128, |acc, x| acc.saturating_mul(x))
}

/// Fully reduced echelon basis of truth tables packed in `u64`.
#[derive(Clone, Default)]
struct Span {
    rows: Vec<(u64, u64)>,
}

impl Span {
    fn reduce(&self, mut v: u64) -> u64 {
        for &(pivot, row) in &self.rows {
            if v & pivot != 0 {
                v ^= row;
            }
        }
        v
    }

    /// Inserts an already reduced, nonzero vector.
    fn insert_reduced(&mut self, r: u64) {
        let pivot = r & r.wrapping_neg();
        for (_, row) in self.rows.iter_mut() {
            if *row & pivot != 0 {
                *row ^= r;
            }
        }
        self.rows.push((pivot, r));
    }
}

struct Search {
    target: u64,
    k: u32,
    nodes: AtomicU64,
    cap: u64,
}

impl Search {
    fn combos(gens: &[u64]) -> Vec<u64> {
        let mut t = vec![0u64; 1 << gens.len()];
        for c in 1..t.len() {
            t[c] = t[c & (c - 1)] ^ gens[c.trailing_zeros() as usize];
        }
        t
    }

    /// Whether gates `level..=k` can be chosen so the target lands in the span.
    fn step(&self, level: u32, c1: usize, combos: &[u64], gens: &[u64], span: &Span) -> Result<bool> {
        for c2 in c1 + 1..combos.len() {
            if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.cap {
                return Err(Error::NodeCapExhausted { cap: self.cap });
            }
            let product = combos[c1] & combos[c2];
            let r = span.reduce(product);
            if r == 0 {
                continue;
            }
            if level == self.k {
                if span.reduce(self.target) == r {
                    return Ok(true);
                }
                continue;
            }
            let mut next_span = span.clone();
            next_span.insert_reduced(r);
            let mut next_gens = gens.to_vec();
            next_gens.push(product);
            if self.level(level + 1, &next_gens, &next_span)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn level(&self, level: u32, gens: &[u64], span: &Span) -> Result<bool> {
        let combos = Self::combos(gens);
        for c1 in 1..combos.len() {
            if self.step(level, c1, &combos, gens, span)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn top(&self, gens: &[u64], span: &Span) -> Result<bool> {
        let combos = Self::combos(gens);
        let found: Vec<Result<bool>> = (1..combos.len())
            .into_par_iter()
            .map(|c1| self.step(1, c1, &combos, gens, span))
            .collect();
        let mut any = false;
        for r in found {
            any |= r?;
        }
        Ok(any)
    }
}

/// Exact multiplicative complexity of a single-output function, up to `k_max`.
///
/// Level `j` of the search has generators `x_1..x_n, A_1..A_{j-1}`; each AND
/// gate multiplies two distinct nonzero linear combinations of them. Constant
/// terms on operands are dropped since `(a+1)·b = a·b + b` spans the same space.
/// `f` needs `k` gates iff it lies in the affine span of `1, x, A_1..A_k`.
pub fn brute_mc(f: &BooleanFunction, budget: McSearchBudget) -> Result<McOutcome> {
    let (n, k_max) = (f.n(), budget.k_max);
    if f.m() != 1 {
        return Err(Error::invalid(format!("MC search takes a single output, got m = {}", f.m())));
    }
    if !((n <= 4 && k_max <= 2) || (n <= 3 && k_max <= 3)) {
        return Err(Error::invalid(format!(
            "MC search needs n <= 4 with k_max <= 2, or n <= 3 with k_max <= 3; got n={n} k_max={k_max}"
        )));
    }
    if degree(f) <= 1 {
        return Ok(McOutcome::Exact(0));
    }
    let worst: u128 = (1..=k_max).map(|k| mc_worst_case(n, k)).sum();
    if worst > budget.node_cap as u128 {
        return Err(Error::NodeCapExhausted { cap: budget.node_cap });
    }

    let len = 1usize << n;
    let target = f.table(0).words()[0];
    let vars: Vec<u64> = (0..n)
        .map(|j| (0..len).filter(|x| (x >> j) & 1 == 1).fold(0u64, |acc, x| acc | 1 << x))
        .collect();
    let mut span = Span::default();
    let ones = if len == 64 { u64::MAX } else { (1u64 << len) - 1 };
    for v in std::iter::once(ones).chain(vars.iter().copied()) {
        let r = span.reduce(v);
        span.insert_reduced(r);
    }
    for k in 1..=k_max {
        let search = Search {
            target,
            k,
            nodes: AtomicU64::new(0),
            cap: budget.node_cap,
        };
        if search.top(&vars, &span)? {
            return Ok(McOutcome::Exact(k));
        }
    }
    Ok(McOutcome::ExceedsKmax)
}

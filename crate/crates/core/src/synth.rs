//! Circuit constructions with exact AND-gate accounting.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::boolfn::BooleanFunction;
use crate::circuit::{Circuit, CircuitBuilder, Partition, Wire};
use crate::codes::GeneratorMatrix;
use crate::error::{Error, Result};

/// Masks over `d` variables with at least two bits, ordered by (popcount, value).
fn product_masks(d: u32) -> Vec<u64> {
    let mut masks: Vec<u64> = (0..1u64 << d).filter(|x| x.count_ones() >= 2).collect();
    masks.sort_by_key(|&x| (x.count_ones(), x));
    masks
}

/// Emits every monomial over `vars`. Entry `X` (a mask over positions in `vars`)
/// is the wire for `∏_{i∈X} vars[i]`, or `None` for the empty product.
fn monomial_wires(b: &mut CircuitBuilder, vars: &[u32]) -> Vec<Option<Wire>> {
    let d = vars.len() as u32;
    let mut wires = vec![None; 1 << d];
    for (i, &v) in vars.iter().enumerate() {
        wires[1 << i] = Some(b.input(v));
    }
    for x in product_masks(d) {
        let low = x & x.wrapping_neg();
        let rest = wires[(x ^ low) as usize].expect("built in popcount order");
        let w = b.and(b.input(vars[low.trailing_zeros() as usize]), rest);
        wires[x as usize] = Some(w);
    }
    wires
}

/// XOR of `ws`, without a gate when there is a single operand.
fn xor_of(b: &mut CircuitBuilder, ws: Vec<Wire>) -> Wire {
    if ws.len() == 1 {
        ws[0]
    } else {
        b.xor(ws)
    }
}

/// Emits all `2^|vars|` indicators over `vars`; entry `z` is `I_z`.
/// `I_z` is the XOR of the monomials `X ⊇ z`.
fn indicator_wires(b: &mut CircuitBuilder, vars: &[u32]) -> Vec<Wire> {
    let mono = monomial_wires(b, vars);
    let full = (1u64 << vars.len()) - 1;
    (0..=full)
        .map(|z| {
            let free = full & !z;
            // enumerate subsets of `free`
            let mut terms = Vec::new();
            let mut sub = free;
            loop {
                let x = z | sub;
                terms.push(match mono[x as usize] {
                    Some(w) => w,
                    None => b.one(),
                });
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & free;
            }
            terms.sort();
            xor_of(b, terms)
        })
        .collect()
}

fn check_range(what: &str, n: u32, lo: u32, hi: u32) -> Result<()> {
    if !(lo..=hi).contains(&n) {
        return Err(Error::invalid(format!("{what} needs {lo} <= n <= {hi}, got {n}")));
    }
    Ok(())
}

/// All `2^n - n - 1` monomials of degree at least two, using exactly that many
/// AND gates. Outputs follow (popcount, mask) order.
pub fn synth_monomial_bank(n: u32) -> Result<Circuit> {
    check_range("monomial bank", n, 2, 16)?;
    let mut b = CircuitBuilder::new(n);
    let vars: Vec<u32> = (0..n).collect();
    let wires = monomial_wires(&mut b, &vars);
    let outputs = product_masks(n).into_iter().map(|x| wires[x as usize].expect("built")).collect();
    b.finish(outputs, None)
}

/// The output masks of [`synth_monomial_bank`], in output order.
pub fn monomial_bank_masks(n: u32) -> Vec<u64> {
    product_masks(n)
}

/// `AI_n` with `2^n - n - 1` AND gates; output `z` is `I_z`.
pub fn synth_indicators(n: u32) -> Result<Circuit> {
    check_range("indicator bank", n, 2, 12)?;
    let mut b = CircuitBuilder::new(n);
    let vars: Vec<u32> = (0..n).collect();
    let outputs = indicator_wires(&mut b, &vars);
    b.finish(outputs, None)
}

/// Parameters of the universal construction for an `(n, m)`-function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct UniversalPlan {
    pub n: u32,
    pub m: usize,
    /// Number of leading inputs handled by the outer indicator bank.
    pub k: u32,
    pub predicted_and_count: u64,
}

impl UniversalPlan {
    pub fn new(n: u32, m: usize, k: Option<u32>) -> Result<Self> {
        check_range("universal construction", n, 2, 16)?;
        if m < 1 {
            return Err(Error::invalid("universal construction needs m >= 1"));
        }
        let k = k.unwrap_or_else(|| default_split(n, m));
        if k < 1 || k > n - 1 {
            return Err(Error::invalid(format!("split k={k} outside [1, {}]", n - 1)));
        }
        Ok(UniversalPlan {
            n,
            m,
            k,
            predicted_and_count: universal_and_count(n, m, k),
        })
    }
}

/// `(2^(n-k) - (n-k) - 1) + (2^k - k - 1) + m·2^k`.
pub fn universal_and_count(n: u32, m: usize, k: u32) -> u64 {
    let bank = |d: u32| (1u64 << d) - d as u64 - 1;
    bank(n - k) + bank(k) + ((m as u64) << k)
}

/// Default split: `(n - log₂m)/2` when exact, else `⌈(n - ⌈log₂m⌉)/2⌉`,
/// clamped into `[1, n-1]`.
pub fn default_split(n: u32, m: usize) -> u32 {
    let log_ceil = m.next_power_of_two().trailing_zeros() as i64;
    let diff = n as i64 - log_ceil;
    let k = if m.is_power_of_two() && diff % 2 == 0 {
        diff / 2
    } else {
        (diff + 1).div_euclid(2)
    };
    k.clamp(1, n as i64 - 1) as u32
}

/// Computes any `(n, m)`-function with exactly `plan.predicted_and_count` AND gates.
///
/// With `a` ranging over the first `k` inputs and `b` over the rest,
/// `f_i = Σ_a I_a · h_{i,a}` where `h_{i,a} = Σ_{b : f_i(a,b)=1} I_b`.
pub fn synth_universal(f: &BooleanFunction, k: Option<u32>) -> Result<(Circuit, UniversalPlan)> {
    let plan = UniversalPlan::new(f.n(), f.m(), k)?;
    let (n, k) = (plan.n, plan.k);
    let lo: Vec<u32> = (0..k).collect();
    let hi: Vec<u32> = (k..n).collect();
    let mut b = CircuitBuilder::new(n);
    let ind_hi = indicator_wires(&mut b, &hi);
    let ind_lo = indicator_wires(&mut b, &lo);

    let mut outputs = Vec::with_capacity(f.m());
    for i in 0..f.m() {
        let table = f.table(i);
        let mut terms = Vec::with_capacity(1 << k);
        for (a, &lo_wire) in ind_lo.iter().enumerate() {
            let (ones, zeros): (Vec<usize>, Vec<usize>) =
                (0..ind_hi.len()).partition(|&bb| table.get(a | (bb << k)));
            // Σ_b I_b = 1, so the complement set gives the same sum plus ONE.
            let h = if !ones.is_empty() && ones.len() <= zeros.len() + 1 {
                xor_of(&mut b, ones.iter().map(|&bb| ind_hi[bb]).collect())
            } else {
                let mut ws = vec![b.one()];
                ws.extend(zeros.iter().map(|&bb| ind_hi[bb]));
                xor_of(&mut b, ws)
            };
            terms.push(b.and(lo_wire, h));
        }
        outputs.push(xor_of(&mut b, terms));
    }
    debug_assert_eq!(b.and_count() as u64, plan.predicted_and_count);
    Ok((b.finish(outputs, None)?, plan))
}

/// Output `i` is the product of all inputs except `x_i`, with `3n - 6` AND gates.
///
/// Prefix products `A_j = x_0⋯x_j` and suffix products `B_j = x_j⋯x_{n-1}` for
/// `1 ≤ j ≤ n-2`; output `i` in `1..n-1` is `A_{i-1}·B_{i+1}` with `A_0 = x_0`
/// and `B_{n-1} = x_{n-1}`.
pub fn synth_excluded_products(n: u32) -> Result<Circuit> {
    check_range("excluded products", n, 3, 64)?;
    let mut b = CircuitBuilder::new(n);
    let last = n - 1;
    let mut prefix = vec![b.input(0)];
    for j in 1..=n - 2 {
        let w = b.and(prefix[j as usize - 1], b.input(j));
        prefix.push(w);
    }
    let mut suffix = vec![b.input(last); n as usize];
    for j in (1..=n - 2).rev() {
        suffix[j as usize] = b.and(b.input(j), suffix[j as usize + 1]);
    }
    let mut outputs = vec![suffix[1]];
    for i in 1..=n - 2 {
        let l = prefix[i as usize - 1];
        let r = if i == n - 2 { b.input(last) } else { suffix[i as usize + 1] };
        outputs.push(b.and(l, r));
    }
    outputs.push(prefix[n as usize - 2]);
    b.finish(outputs, None)
}

/// Inputs for the bilinear construction from a linear code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BilinearPlan {
    pub n: u32,
    pub generator: GeneratorMatrix,
    pub seed: u64,
}

impl BilinearPlan {
    pub fn new(n: u32, generator: GeneratorMatrix, seed: u64) -> Result<Self> {
        if n < 2 || n % 2 == 1 || n > 62 {
            return Err(Error::invalid(format!("bilinear construction needs even 2 <= n <= 62, got {n}")));
        }
        if generator.m() != n as usize {
            return Err(Error::invalid(format!(
                "generator has dimension {}, expected n = {n}",
                generator.m()
            )));
        }
        let rank = generator.rank();
        if rank != n as usize {
            return Err(Error::RankDeficient {
                rank,
                expected: n as usize,
            });
        }
        Ok(BilinearPlan { n, generator, seed })
    }

    /// Inputs `x_1..x_{n/2}` on the left, the rest on the right.
    pub fn partition(&self) -> Partition {
        let h = self.n / 2;
        Partition {
            left: (0..h).collect(),
            right: (h..self.n).collect(),
        }
    }
}

/// `s` AND gates `A_j = L_j·R_j` with seeded random nonempty sums `L_j`, `R_j`
/// over each side; output `i` is the XOR of `A_j` over the ones of row `i`.
pub fn synth_bilinear_from_code(plan: &BilinearPlan) -> Result<Circuit> {
    let h = plan.n / 2;
    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
    let mut b = CircuitBuilder::new(plan.n);
    let side = |b: &mut CircuitBuilder, offset: u32, mask: u64| {
        let ws = (0..h).filter(|i| (mask >> i) & 1 == 1).map(|i| b.input(offset + i)).collect();
        xor_of(b, ws)
    };
    let ands: Vec<Wire> = (0..plan.generator.s())
        .map(|_| {
            let lm = rng.gen_range(1..1u64 << h);
            let rm = rng.gen_range(1..1u64 << h);
            let l = side(&mut b, 0, lm);
            let r = side(&mut b, h, rm);
            b.and(l, r)
        })
        .collect();
    let outputs = plan
        .generator
        .rows()
        .iter()
        .map(|row| xor_of(&mut b, row.iter_ones().map(|j| ands[j]).collect()))
        .collect();
    b.finish(outputs, Some(plan.partition()))
}

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// Binary entropy, with `H₂(0) = H₂(1) = 0`.
pub fn binary_entropy(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        return 0.0;
    }
    -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
}

fn mrrw_h(x: f64) -> f64 {
    let x = x.clamp(0.0, 1.0);
    binary_entropy((1.0 - (1.0 - x).sqrt()) / 2.0)
}

/// A point `(u, δ)` with `0 < δ < 1/2` and `0 ≤ u ≤ 1 - 2δ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MrrwQuery {
    u: f64,
    delta: f64,
}

impl MrrwQuery {
    pub fn new(u: f64, delta: f64) -> Result<Self> {
        if !(delta > 0.0 && delta < 0.5) {
            return Err(Error::invalid(format!("δ = {delta} outside (0, 1/2)")));
        }
        if !(u >= 0.0 && u <= 1.0 - 2.0 * delta) {
            return Err(Error::invalid(format!("u = {u} outside [0, 1-2δ] = [0, {}]", 1.0 - 2.0 * delta)));
        }
        Ok(MrrwQuery { u, delta })
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }
}

/// `B(u, δ) = 1 + h(u²) - h(u² + 2δu + 2δ)`.
pub fn mrrw_b(q: MrrwQuery) -> f64 {
    let (u, d) = (q.u, q.delta);
    1.0 + mrrw_h(u * u) - mrrw_h(u * u + 2.0 * d * u + 2.0 * d)
}

/// Minimum of `B(·, δ)` and the `u` attaining it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MrrwRate {
    pub bound: f64,
    pub u: f64,
}

const GRID_STEP: f64 = 1e-4;
const REFINE_TOL: f64 = 1e-6;

/// Rate bound `min_{0 ≤ u ≤ 1-2δ} B(u, δ)`: grid search, then golden-section refinement.
pub fn mrrw_rate_bound(delta: f64) -> Result<MrrwRate> {
    MrrwQuery::new(0.0, delta)?;
    let umax = 1.0 - 2.0 * delta;
    let b = |u: f64| mrrw_b(MrrwQuery { u: u.clamp(0.0, umax), delta });

    let steps = (umax / GRID_STEP).floor() as usize;
    let mut best = MrrwRate { bound: b(umax), u: umax };
    for i in 0..=steps {
        let u = i as f64 * GRID_STEP;
        let v = b(u);
        if v < best.bound {
            best = MrrwRate { bound: v, u };
        }
    }

    let (mut lo, mut hi) = ((best.u - GRID_STEP).max(0.0), (best.u + GRID_STEP).min(umax));
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - phi * (hi - lo);
    let mut d = lo + phi * (hi - lo);
    let (mut fc, mut fd) = (b(c), b(d));
    while hi - lo > REFINE_TOL {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - phi * (hi - lo);
            fc = b(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + phi * (hi - lo);
            fd = b(d);
        }
    }
    let u = (lo + hi) / 2.0;
    let v = b(u);
    if v < best.bound {
        best = MrrwRate { bound: v, u };
    }
    Ok(best)
}

/// Least `s ≥ max(m, d)` whose rate `m/s` the MRRW rate bound at `δ = d/s` does
/// not exclude. Applies an asymptotic bound at finite size.
pub fn mrrw_min_length(m: u64, d: u64) -> Result<u64> {
    if m < 1 || d < 1 {
        return Err(Error::invalid(format!("MRRW length needs m, d >= 1, got m={m} d={d}")));
    }
    if d == 1 {
        return Ok(m);
    }
    let mut s = m.max(d);
    loop {
        let delta = d as f64 / s as f64;
        // rate bound is zero for δ >= 1/2
        if delta < 0.5 && m as f64 / s as f64 <= mrrw_rate_bound(delta)?.bound {
            return Ok(s);
        }
        s += 1;
    }
}

/// Value of `√(m·2^n) - 2n - m/2`, flagged vacuous when it is not positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CountingBound {
    pub value: f64,
    pub vacuous: bool,
}

pub fn counting_lower_bound(n: u32, m: u64) -> Result<CountingBound> {
    if n > 63 || m < 1 || m > 1u64 << n {
        return Err(Error::invalid(format!("counting bound needs 1 <= m <= 2^n, got n={n} m={m}")));
    }
    let value = (m as f64 * (1u64 << n) as f64).sqrt() - 2.0 * n as f64 - m as f64 / 2.0;
    Ok(CountingBound {
        value,
        vacuous: value <= 0.0,
    })
}

/// `2^(k - (k-d)²)`: bound on `P[rank ≤ d]` for a uniform `k×k` matrix over F₂.
pub fn rank_prob_bound(k: u32, d: u32) -> Result<f64> {
    if d > k {
        return Err(Error::invalid(format!("rank bound needs d <= k, got k={k} d={d}")));
    }
    let e = k as i64 - ((k - d) as i64).pow(2);
    Ok(2f64.powi(e.clamp(-1100, 1100) as i32))
}

fn rank_u64(rows: &mut [u64]) -> u32 {
    let mut rank = 0;
    for i in 0..rows.len() {
        let pivot = rows[i];
        if pivot == 0 {
            continue;
        }
        rank += 1;
        let low = pivot & pivot.wrapping_neg();
        for r in rows[i + 1..].iter_mut() {
            if *r & low != 0 {
                *r ^= pivot;
            }
        }
    }
    rank
}

const MC_SHARDS: u64 = 64;

/// Frequency of `rank ≤ d` over `trials` uniform `k×k` matrices.
///
/// Trials are split into fixed shards, each with its own ChaCha stream, so the
/// result depends only on `(k, d, trials, seed)`.
pub fn monte_carlo_rank(k: u32, d: u32, trials: u64, seed: u64) -> Result<f64> {
    if !(1..=64).contains(&k) || d > k {
        return Err(Error::invalid(format!("Monte Carlo rank needs 1 <= k <= 64 and d <= k, got k={k} d={d}")));
    }
    if trials < 1 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    let mask = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    let hits: u64 = (0..MC_SHARDS)
        .into_par_iter()
        .map(|shard| {
            let count = trials / MC_SHARDS + u64::from(shard < trials % MC_SHARDS);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(shard);
            let mut rows = vec![0u64; k as usize];
            let mut hits = 0;
            for _ in 0..count {
                for r in rows.iter_mut() {
                    *r = rng.gen::<u64>() & mask;
                }
                if rank_u64(&mut rows) <= d {
                    hits += 1;
                }
            }
            hits
        })
        .sum();
    Ok(hits as f64 / trials as f64)
}

/// `2^(n-1) - 2^(n-M-1)`: the largest NL compatible with `M` AND gates.
pub fn nl_upper_from_mc(n: u32, mc: u32) -> Result<u64> {
    if !(1..=63).contains(&n) || mc > n - 1 {
        return Err(Error::invalid(format!("need 0 <= M <= n-1, got n={n} M={mc}")));
    }
    Ok((1u64 << (n - 1)) - (1u64 << (n - mc - 1)))
}

/// Least `M` with `nl ≤ 2^(n-1) - 2^(n-M-1)`; `n` when `nl = 2^(n-1)`.
pub fn mc_lower_from_nl(n: u32, nl: u64) -> Result<u32> {
    if !(1..=63).contains(&n) || nl > 1u64 << (n - 1) {
        return Err(Error::invalid(format!("need 0 <= nl <= 2^(n-1), got n={n} nl={nl}")));
    }
    let gap = (1u64 << (n - 1)) - nl;
    if gap == 0 {
        return Ok(n);
    }
    Ok(n - 1 - gap.ilog2())
}

/// `max(d - 1, 0)`: AND gates forced by algebraic degree `d`.
pub fn degree_mc_lower(d: u32) -> u32 {
    d.saturating_sub(1)
}

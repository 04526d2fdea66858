//! Binary linear codes: generator matrices, exact distance, and length bounds.

mod bounds;

pub use bounds::{
    binary_entropy, counting_lower_bound, degree_mc_lower, mc_lower_from_nl, monte_carlo_rank,
    mrrw_b, mrrw_min_length, mrrw_rate_bound, nl_upper_from_mc, rank_prob_bound, CountingBound,
    MrrwQuery, MrrwRate,
};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::bits::{echelon_basis, BitVec};
use crate::budget::Budget;
use crate::error::{Error, Result};

/// `m` rows of length `s` spanning a code in `F₂^s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMatrix {
    s: usize,
    rows: Vec<BitVec>,
}

impl GeneratorMatrix {
    pub fn new(s: usize, rows: Vec<BitVec>) -> Result<Self> {
        if let Some(i) = rows.iter().position(|r| r.len() != s) {
            return Err(Error::invalid(format!("row {} has length {}, expected {s}", i + 1, rows[i].len())));
        }
        Ok(GeneratorMatrix { s, rows })
    }

    pub fn identity(m: usize) -> Self {
        let rows = (0..m)
            .map(|i| {
                let mut r = BitVec::zeros(m);
                r.set(i, true);
                r
            })
            .collect();
        GeneratorMatrix { s: m, rows }
    }

    /// The `[n, 1, n]` repetition code.
    pub fn repetition(n: usize) -> Self {
        GeneratorMatrix {
            s: n,
            rows: vec![BitVec::ones(n)],
        }
    }

    /// Generator of the `[7, 4, 3]` Hamming code.
    pub fn hamming_7_4() -> Self {
        let rows = ["1000110", "0100101", "0010011", "0001111"]
            .iter()
            .map(|r| BitVec::from_01_str(r).expect("literal"))
            .collect();
        GeneratorMatrix { s: 7, rows }
    }

    pub fn m(&self) -> usize {
        self.rows.len()
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn rank(&self) -> usize {
        rank_f2(&self.rows)
    }

    /// True when both matrices span the same subspace.
    pub fn same_row_space(&self, other: &GeneratorMatrix) -> bool {
        self.s == other.s && echelon_basis(&self.rows) == echelon_basis(&other.rows)
    }

    /// Parses `code <m> <s>` followed by `m` lines over `{0,1}`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing `code <m> <s>` header"))?;
        let (m, s) = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["code", m, s] => (
                m.parse::<usize>()
                    .map_err(|_| Error::parse(hline, format!("bad dimension `{m}`")))?,
                s.parse::<usize>()
                    .map_err(|_| Error::parse(hline, format!("bad length `{s}`")))?,
            ),
            _ => return Err(Error::parse(hline, "expected `code <m> <s>`")),
        };
        let mut rows = Vec::with_capacity(m);
        for (line, content) in lines {
            if rows.len() == m {
                return Err(Error::parse(line, format!("more than {m} rows")));
            }
            if content.len() != s {
                return Err(Error::parse(line, format!("row has {} characters, expected {s}", content.len())));
            }
            rows.push(BitVec::from_01_str(content).ok_or_else(|| Error::parse(line, "row characters must be 0 or 1"))?);
        }
        if rows.len() != m {
            return Err(Error::parse(
                text.lines().count().max(1),
                format!("expected {m} rows, found {}", rows.len()),
            ));
        }
        Ok(GeneratorMatrix { s, rows })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("code {} {}\n", self.m(), self.s);
        for r in &self.rows {
            out.push_str(&r.to_01_string());
            out.push('\n');
        }
        out
    }
}

/// Serialized as `{ "m", "s", "rows": ["0110", ...] }`.
impl Serialize for GeneratorMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("GeneratorMatrix", 3)?;
        st.serialize_field("m", &self.m())?;
        st.serialize_field("s", &self.s)?;
        st.serialize_field("rows", &self.rows.iter().map(BitVec::to_01_string).collect::<Vec<_>>())?;
        st.end()
    }
}

/// Rank over F₂ by Gaussian elimination.
pub fn rank_f2(rows: &[BitVec]) -> usize {
    crate::bits::rank(rows)
}

/// Minimum weight over the nonzero vectors of the row span; 0 for the zero code.
pub fn span_distance(rows: &[BitVec], budget: &Budget) -> Result<usize> {
    let basis = echelon_basis(rows);
    if basis.is_empty() {
        return Ok(0);
    }
    budget.check_code_dim(basis.len())?;
    let mut word = BitVec::zeros(basis[0].len());
    let mut best = usize::MAX;
    for i in 1u64..1 << basis.len() {
        word.xor_assign(&basis[i.trailing_zeros() as usize]);
        best = best.min(word.weight());
    }
    Ok(best)
}

/// Minimum distance of a full-rank code: the least weight of a nonzero codeword.
pub fn min_distance(g: &GeneratorMatrix, budget: &Budget) -> Result<usize> {
    budget.check_code_dim(g.m())?;
    let r = g.rank();
    if r != g.m() {
        return Err(Error::RankDeficient {
            rank: r,
            expected: g.m(),
        });
    }
    span_distance(g.rows(), budget)
}

/// Whether `Σ_{i=0}^{d-2} C(s-1, i) < 2^(s-m)`, in exact integers.
pub fn gv_feasible(s: u64, m: u64, d: u64) -> Result<bool> {
    if m < 1 || s < m || d < 1 {
        return Err(Error::invalid(format!("GV condition needs s >= m >= 1 and d >= 1, got s={s} m={m} d={d}")));
    }
    let mut sum = BigUint::zero();
    let mut binom = BigUint::one();
    // terms with i > s-1 vanish
    let top = if d >= 2 { (d - 2).min(s - 1) + 1 } else { 0 };
    for i in 0..top {
        sum += &binom;
        binom = binom * (s - 1 - i) / (i + 1);
    }
    Ok(sum < (BigUint::one() << (s - m)))
}

/// Feasibility record of an upward GV scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GvScan {
    /// Smallest feasible length.
    pub length: u64,
    /// `(s, feasible)` for every evaluated length, in increasing `s`.
    pub evaluated: Vec<(u64, bool)>,
}

impl GvScan {
    /// Whether the evaluated feasibility values are monotone (false... then true...).
    pub fn is_monotone(&self) -> bool {
        self.evaluated.windows(2).all(|w| !w[0].1 || w[1].1)
    }
}

/// Scans `s = max(m, d), ...` for GV feasibility and keeps evaluating `extra`
/// lengths past the first feasible one.
pub fn gv_scan(m: u64, d: u64, extra: u64) -> Result<GvScan> {
    let mut s = m.max(d);
    let mut evaluated = Vec::new();
    loop {
        let ok = gv_feasible(s, m, d)?;
        evaluated.push((s, ok));
        if ok {
            let length = s;
            for t in s + 1..=s + extra {
                evaluated.push((t, gv_feasible(t, m, d)?));
            }
            return Ok(GvScan { length, evaluated });
        }
        s += 1;
    }
}

/// Smallest length the GV condition certifies for an `[s, m, d]` code.
pub fn gv_min_length(m: u64, d: u64) -> Result<u64> {
    gv_scan(m, d, 0).map(|scan| scan.length)
}

/// Largest redundancy `s - m` accepted by [`varshamov_code`].
const MAX_REDUNDANCY: u64 = 24;

/// Builds an `[s, m, >= d]` code with `s = gv_min_length(m, d)`.
///
/// Parity-check columns are chosen greedily so that none is a sum of `d - 2`
/// or fewer earlier columns; the generator spans the parity check's kernel.
pub fn varshamov_code(m: u64, d: u64) -> Result<GeneratorMatrix> {
    let s = gv_min_length(m, d)?;
    let r = s - m;
    if d <= 1 || r == 0 {
        return Ok(GeneratorMatrix::identity(m as usize));
    }
    if r > MAX_REDUNDANCY {
        return Err(Error::budget("Varshamov redundancy s-m", r, MAX_REDUNDANCY));
    }
    let max_terms = (d - 2) as usize;
    let mut forbidden = vec![false; 1 << r];
    forbidden[0] = true;
    // sums_by_size[t]: values reachable as sums of exactly t chosen columns
    let mut sums_by_size: Vec<Vec<u32>> = vec![vec![0]];
    sums_by_size.resize(max_terms + 1, Vec::new());
    let mut columns: Vec<u32> = Vec::with_capacity(s as usize);
    for _ in 0..s {
        let c = (1..1u32 << r)
            .find(|&v| !forbidden[v as usize])
            .ok_or_else(|| Error::invalid("greedy parity-check construction ran out of columns"))?;
        for t in (1..=max_terms).rev() {
            let new: Vec<u32> = sums_by_size[t - 1].iter().map(|&v| v ^ c).collect();
            for &v in &new {
                forbidden[v as usize] = true;
            }
            sums_by_size[t].extend(new);
        }
        columns.push(c);
    }

    // Kernel of the parity check: track each column-space basis vector's combination.
    let s = s as usize;
    let mut basis: Vec<(u32, BitVec)> = Vec::new();
    let mut kernel = Vec::new();
    for (j, &col) in columns.iter().enumerate() {
        let mut v = col;
        let mut combo = BitVec::zeros(s);
        combo.set(j, true);
        for (b, bc) in &basis {
            let pivot = 31 - b.leading_zeros();
            if (v >> pivot) & 1 == 1 {
                v ^= b;
                combo.xor_assign(bc);
            }
        }
        if v == 0 {
            kernel.push(combo);
        } else {
            basis.push((v, combo));
            basis.sort_by(|a, b| b.0.leading_zeros().cmp(&a.0.leading_zeros()).reverse());
        }
    }
    kernel.truncate(m as usize);
    debug_assert_eq!(kernel.len(), m as usize);
    GeneratorMatrix::new(s, kernel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn budget() -> Budget {
        Budget::default()
    }

    /// Minimum pairwise distance over all distinct codewords, by listing the span.
    fn pairwise_distance(g: &GeneratorMatrix) -> usize {
        let words: Vec<BitVec> = (0u64..1 << g.m())
            .map(|c| {
                let mut w = BitVec::zeros(g.s());
                for (i, r) in g.rows().iter().enumerate() {
                    if (c >> i) & 1 == 1 {
                        w.xor_assign(r);
                    }
                }
                w
            })
            .collect();
        let mut best = usize::MAX;
        for i in 0..words.len() {
            for j in i + 1..words.len() {
                best = best.min(words[i].distance(&words[j]));
            }
        }
        best
    }

    #[test]
    fn distance_examples() {
        assert_eq!(min_distance(&GeneratorMatrix::identity(3), &budget()).unwrap(), 1);
        assert_eq!(min_distance(&GeneratorMatrix::hamming_7_4(), &budget()).unwrap(), 3);
        assert_eq!(pairwise_distance(&GeneratorMatrix::hamming_7_4()), 3);
        assert_eq!(min_distance(&GeneratorMatrix::repetition(9), &budget()).unwrap(), 9);
    }

    #[test]
    fn distance_rejects_rank_deficiency_and_budget() {
        let r = BitVec::from_01_str("1100").unwrap();
        let g = GeneratorMatrix::new(4, vec![r.clone(), r]).unwrap();
        assert_eq!(
            min_distance(&g, &budget()),
            Err(Error::RankDeficient { rank: 1, expected: 2 })
        );
        let small = Budget {
            max_code_dim: 2,
            ..Budget::default()
        };
        assert!(matches!(
            min_distance(&GeneratorMatrix::identity(3), &small),
            Err(Error::BudgetExceeded { .. })
        ));
        assert_eq!(span_distance(&[BitVec::zeros(5)], &budget()).unwrap(), 0);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_f2(GeneratorMatrix::identity(5).rows()), 5);
        let mut rows = GeneratorMatrix::identity(4).rows().to_vec();
        rows[3] = rows[2].clone();
        assert_eq!(rank_f2(&rows), 3);
    }

    /// Rank by an independent elimination over `u32` rows with column-first pivoting.
    fn rank_by_columns(rows: &[u32], width: u32) -> usize {
        let mut rows = rows.to_vec();
        let mut rank = 0;
        for col in 0..width {
            if let Some(p) = (rank..rows.len()).find(|&i| (rows[i] >> col) & 1 == 1) {
                rows.swap(rank, p);
                for i in 0..rows.len() {
                    if i != rank && (rows[i] >> col) & 1 == 1 {
                        rows[i] ^= rows[rank];
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    #[test]
    fn rank_matches_independent_elimination() {
        let mut rng = ChaCha8Rng::seed_from_u64(20);
        for _ in 0..200 {
            let raw: Vec<u32> = (0..20).map(|_| rng.gen_range(0..1u32 << 20) & rng.gen::<u32>()).collect();
            let rows: Vec<BitVec> = raw
                .iter()
                .map(|&r| BitVec::from_bools((0..20).map(|i| (r >> i) & 1 == 1)))
                .collect();
            assert_eq!(rank_f2(&rows), rank_by_columns(&raw, 20));
        }
    }

    #[test]
    fn gv_examples() {
        assert!(gv_feasible(7, 4, 3).unwrap());
        assert!(!gv_feasible(6, 4, 3).unwrap());
        for s in 1..20 {
            for m in 1..=s {
                assert!(gv_feasible(s, m, 1).unwrap());
            }
        }
        assert_eq!(gv_min_length(4, 3).unwrap(), 7);
        assert_eq!(gv_min_length(6, 1).unwrap(), 6);
        assert!(gv_feasible(3, 4, 2).is_err());
    }

    #[test]
    fn gv_scan_is_monotone() {
        for m in 1..=20 {
            for d in 1..=12 {
                let scan = gv_scan(m, d, 40).unwrap();
                assert!(scan.is_monotone(), "m={m} d={d}");
            }
        }
    }

    #[test]
    fn varshamov_codes_meet_distance() {
        for m in 1..=10u64 {
            for d in 1..=6u64 {
                let g = varshamov_code(m, d).unwrap();
                assert_eq!(g.m(), m as usize);
                assert_eq!(g.s() as u64, gv_min_length(m, d).unwrap());
                assert_eq!(g.rank(), m as usize);
                assert!(min_distance(&g, &budget()).unwrap() >= d as usize, "m={m} d={d}");
            }
        }
    }

    #[test]
    fn text_format() {
        let g = GeneratorMatrix::hamming_7_4();
        let text = g.to_text();
        assert!(text.starts_with("code 4 7\n1000110\n"));
        assert_eq!(GeneratorMatrix::parse(&text).unwrap(), g);
        assert!(matches!(
            GeneratorMatrix::parse("code 2 3\n101\n10\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(GeneratorMatrix::parse("code 2 3\n101\n").is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn min_distance_is_min_pairwise(m in 1usize..=8, s in 1usize..=16, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let rows: Vec<BitVec> = (0..m)
                .map(|_| BitVec::from_bools((0..s).map(|_| rng.gen::<bool>())))
                .collect();
            let g = GeneratorMatrix::new(s, rows).unwrap();
            prop_assume!(g.rank() == m);
            prop_assert_eq!(min_distance(&g, &budget()).unwrap(), pairwise_distance(&g));
        }
    }
}

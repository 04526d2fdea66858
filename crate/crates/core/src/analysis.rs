//! Circuit-to-code extraction and nonlinearity certification.

use serde::Serialize;

use crate::bits::BitVec;
use crate::boolfn::{anf_from_tt, degree, vector_nonlinearity, BooleanFunction};
use crate::budget::Budget;
use crate::circuit::{Circuit, Gate, Wire};
use crate::codes::{mc_lower_from_nl, span_distance, GeneratorMatrix};
use crate::error::{Error, Result};

/// Per-gate vectors over the AND gates, combined by `join` along operands.
fn propagate(c: &Circuit, join: impl Fn(&mut BitVec, &BitVec), through_and: bool) -> Vec<BitVec> {
    let and_index: Vec<Option<usize>> = {
        let mut next = 0;
        c.gates()
            .iter()
            .map(|g| {
                g.is_and().then(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect()
    };
    let s = c.and_metrics().0;
    let mut vecs: Vec<BitVec> = Vec::with_capacity(c.gates().len());
    for (k, gate) in c.gates().iter().enumerate() {
        let mut v = BitVec::zeros(s);
        if let Some(j) = and_index[k] {
            v.set(j, true);
        }
        if !matches!(gate, Gate::And(_)) || through_and {
            for &w in gate.operands() {
                if let Wire::Gate(g) = w {
                    let operand = vecs[g as usize].clone();
                    join(&mut v, &operand);
                }
            }
        }
        vecs.push(v);
    }
    let s_len = s;
    c.outputs()
        .iter()
        .map(|&w| match w {
            Wire::Input(_) => BitVec::zeros(s_len),
            Wire::Gate(g) => vecs[g as usize].clone(),
        })
        .collect()
}

/// Vector `i` marks the AND gates (in circuit order) with a directed path to output `i`.
pub fn reachability_vectors(c: &Circuit) -> Vec<BitVec> {
    propagate(
        c,
        |acc, v| {
            for j in v.iter_ones() {
                acc.set(j, true);
            }
        },
        true,
    )
}

/// Code spanned by the AND-gate coefficient vectors of a ΣΠΣ circuit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtractedCode {
    pub generator: GeneratorMatrix,
    pub rank: usize,
    /// The rows are linearly dependent, so the code has dimension below `m`.
    pub degenerate: bool,
}

/// Row `i` holds the F₂ coefficient of each AND gate in output `i`, so that
/// `f_i = Σ_j G[i][j]·A_j + (affine)`. This is the parity of the paths from
/// `A_j` to output `i`, which equals reachability when each AND gate reaches
/// each output along at most one path.
pub fn extract_code(c: &Circuit) -> Result<ExtractedCode> {
    if let Some(k) = c.first_nested_and() {
        return Err(Error::NotSigmaPiSigma { gate: k + 1 });
    }
    let rows = propagate(c, |acc, v| acc.xor_assign(v), false);
    let s = c.and_metrics().0;
    let generator = GeneratorMatrix::new(s, rows)?;
    let rank = generator.rank();
    Ok(ExtractedCode {
        degenerate: rank < generator.m(),
        generator,
        rank,
    })
}

/// Outcome of checking the NL-to-code-distance relation on one circuit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertReport {
    pub n: u32,
    pub m: usize,
    /// Number of AND gates.
    pub s: usize,
    pub measured_nl: u64,
    #[serde(rename = "M")]
    pub mc_lower: u32,
    #[serde(skip)]
    pub code: GeneratorMatrix,
    pub code_rank: usize,
    pub code_distance: usize,
    pub theorem_holds: bool,
    pub notes: Vec<String>,
}

/// Measures the vector NL of `c`, derives `M`, extracts the code and checks
/// that its distance is at least `M`.
pub fn certify(c: &Circuit, budget: &Budget) -> Result<CertReport> {
    let extracted = extract_code(c)?;
    let f = c.truth_table(budget)?;
    let measured_nl = vector_nonlinearity(&f, budget)?;
    let mc_lower = mc_lower_from_nl(c.n(), measured_nl)?;
    let code_distance = span_distance(extracted.generator.rows(), budget)?;
    let theorem_holds = code_distance >= mc_lower as usize;

    let mut notes = Vec::new();
    if mc_lower == 0 {
        notes.push("M = 0: the distance requirement is vacuous".to_string());
    }
    if extracted.rank == 0 {
        notes.push("zero-dimensional code: distance defined as 0".to_string());
    }
    if extracted.degenerate {
        notes.push(format!(
            "degenerate code: rank {} below m = {}",
            extracted.rank,
            extracted.generator.m()
        ));
    }
    if !theorem_holds {
        notes.push(format!(
            "implementation bug: code distance {code_distance} is below M = {mc_lower}"
        ));
    }
    Ok(CertReport {
        n: c.n(),
        m: c.m(),
        s: extracted.generator.s(),
        measured_nl,
        mc_lower,
        code_rank: extracted.rank,
        code: extracted.generator,
        code_distance,
        theorem_holds,
        notes,
    })
}

/// NL of a quadratic single-output function from the F₂ rank `2u` of its
/// quadratic-term adjacency matrix: `2^(n-1) - 2^(n-u-1)`.
pub fn quadratic_nl_rank(f: &BooleanFunction) -> Result<u64> {
    if f.m() != 1 {
        return Err(Error::invalid(format!("quadratic NL needs a single output, got m = {}", f.m())));
    }
    let d = degree(f);
    if d > 2 {
        return Err(Error::invalid(format!("quadratic NL needs degree <= 2, got {d}")));
    }
    let n = f.n();
    let anf = anf_from_tt(f);
    let mut adj = vec![BitVec::zeros(n as usize); n as usize];
    for &x in anf.monomials(0) {
        if x.count_ones() == 2 {
            let i = x.trailing_zeros() as usize;
            let j = 31 - x.leading_zeros() as usize;
            adj[i].flip(j);
            adj[j].flip(i);
        }
    }
    let rank = crate::bits::rank(&adj);
    assert!(rank.is_multiple_of(2), "alternating form has odd rank {rank}");
    let u = rank as u32 / 2;
    Ok((1u64 << (n - 1)) - (1u64 << (n - u - 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::nonlinearity;
    use crate::circuit::tests::random_circuit;
    use crate::circuit::CircuitBuilder;
    use crate::codes::GeneratorMatrix;
    use crate::families::inner_product_fn;
    use crate::synth::{synth_bilinear_from_code, BilinearPlan};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ip4_circuit() -> Circuit {
        Circuit::parse("circuit 4\ng1 = AND x1 x3\ng2 = AND x2 x4\ng3 = XOR g1 g2\noutputs g3").unwrap()
    }

    #[test]
    fn reachability_direct_wiring() {
        let mut b = CircuitBuilder::new(2);
        let a1 = b.and(Wire::Input(0), Wire::Input(1));
        let a2 = b.and(Wire::Input(0), Wire::Input(0));
        let x = b.xor(vec![a1, a2]);
        let c = b.finish(vec![a1, x], None).unwrap();
        let v = reachability_vectors(&c);
        assert_eq!(v[0].to_01_string(), "10");
        assert_eq!(v[1].to_01_string(), "11");
    }

    #[test]
    fn reachability_without_and_gates() {
        let c = Circuit::parse("circuit 2\ng1 = XOR x1 x2\noutputs g1 x1").unwrap();
        assert!(reachability_vectors(&c).iter().all(|v| v.is_empty()));
    }

    #[test]
    fn reachability_counts_paths_that_cancel() {
        // g1 reaches the output along two paths that cancel over F₂.
        let c = Circuit::parse("circuit 2\ng1 = AND x1 x2\ng2 = XOR g1 x1\ng3 = XOR g1 g2\noutputs g3").unwrap();
        assert_eq!(reachability_vectors(&c)[0].to_01_string(), "1");
        assert_eq!(extract_code(&c).unwrap().generator.rows()[0].to_01_string(), "0");
    }

    #[test]
    fn extraction_matches_reachability_on_tree_wiring() {
        let g = GeneratorMatrix::hamming_7_4();
        let c = synth_bilinear_from_code(&BilinearPlan::new(4, g.clone(), 3).unwrap()).unwrap();
        assert_eq!(reachability_vectors(&c), g.rows());
        let e = extract_code(&c).unwrap();
        assert!(e.generator.same_row_space(&g));
        assert!(!e.degenerate);
    }

    #[test]
    fn extraction_flags_degeneracy_and_rejects_cascades() {
        let c = Circuit::parse("circuit 2\ng1 = AND x1 x2\noutputs g1 g1").unwrap();
        let e = extract_code(&c).unwrap();
        assert_eq!(e.rank, 1);
        assert!(e.degenerate);
        let cascade = Circuit::parse("circuit 3\ng1 = AND x1 x2\ng2 = XOR g1 x3\ng3 = AND g2 x3\noutputs g3").unwrap();
        assert_eq!(extract_code(&cascade), Err(Error::NotSigmaPiSigma { gate: 3 }));
    }

    #[test]
    fn certify_examples() {
        let r = certify(&ip4_circuit(), &Budget::default()).unwrap();
        assert_eq!((r.measured_nl, r.mc_lower, r.code_distance), (6, 2, 2));
        assert!(r.theorem_holds);

        let affine = Circuit::parse("circuit 3\ng1 = ONE\ng2 = XOR g1 x1 x3\noutputs g2 x2").unwrap();
        let r = certify(&affine, &Budget::default()).unwrap();
        assert_eq!((r.s, r.mc_lower, r.code_distance), (0, 0, 0));
        assert!(r.theorem_holds);
        assert!(r.notes.iter().any(|n| n.contains("vacuous")));
    }

    #[test]
    fn cert_report_json_fields() {
        let r = certify(&ip4_circuit(), &Budget::default()).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        keys.sort();
        assert_eq!(
            keys,
            ["M", "code_distance", "code_rank", "m", "measured_nl", "n", "notes", "s", "theorem_holds"]
        );
    }

    #[test]
    fn quadratic_rank_examples() {
        assert_eq!(quadratic_nl_rank(&inner_product_fn(2).unwrap()).unwrap(), 6);
        let x1x2 = BooleanFunction::from_fn(2, 1, |x| u64::from(x == 3)).unwrap();
        assert_eq!(quadratic_nl_rank(&x1x2).unwrap(), 1);
        let affine = BooleanFunction::from_fn(5, 1, |x| (x ^ (x >> 3) ^ 1) & 1).unwrap();
        assert_eq!(quadratic_nl_rank(&affine).unwrap(), 0);
        let cubic = BooleanFunction::from_fn(3, 1, |x| u64::from(x == 7)).unwrap();
        assert!(quadratic_nl_rank(&cubic).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn quadratic_rank_equals_walsh_nl(n in 1u32..=10, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let c = random_circuit(n, 12, 1, true, &mut rng);
            let f = c.truth_table(&Budget::default()).unwrap();
            prop_assert_eq!(quadratic_nl_rank(&f).unwrap(), nonlinearity(&f).unwrap());
        }

        #[test]
        fn distance_bound_holds_on_random_quadratic_circuits(n in 2u32..=8, m in 1usize..=4, gates in 1usize..25, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let c = random_circuit(n, gates, m, true, &mut rng);
            let r = certify(&c, &Budget::default()).unwrap();
            prop_assert!(r.theorem_holds, "{:?}", r);
        }
    }
}

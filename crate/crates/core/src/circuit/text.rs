//! Line-oriented circuit text format.
//!
//! ```text
//! circuit 4
//! g1 = AND x1 x3
//! g2 = AND x2 x4
//! g3 = XOR g1 g2
//! partition 1,2 | 3,4
//! outputs g3
//! ```
//!
//! Gate numbers run 1, 2, 3, ... in order. Lines starting with `#` are ignored.

use std::fmt;
use std::str::FromStr;

use super::{Circuit, Gate, Partition, Wire};
use crate::error::{Error, Result};

fn parse_wire(tok: &str, n: u32, gates: usize, line: usize) -> Result<Wire> {
    let (kind, num) = tok.split_at(tok.find(|c: char| c.is_ascii_digit()).unwrap_or(tok.len()));
    let idx: u32 = num
        .parse()
        .map_err(|_| Error::parse(line, format!("`{tok}` is not a wire")))?;
    match kind {
        "x" if idx >= 1 && idx <= n => Ok(Wire::Input(idx - 1)),
        "x" => Err(Error::parse(line, format!("unknown input `{tok}` (n={n})"))),
        "g" if idx >= 1 && (idx as usize) <= gates => Ok(Wire::Gate(idx - 1)),
        "g" if idx >= 1 => Err(Error::parse(
            line,
            format!("`{tok}` is not defined before this line (forward reference)"),
        )),
        _ => Err(Error::parse(line, format!("`{tok}` is not a wire"))),
    }
}

fn parse_side(s: &str, n: u32, line: usize) -> Result<Vec<u32>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let t = t.strip_prefix('x').unwrap_or(t);
            match t.parse::<u32>() {
                Ok(i) if i >= 1 && i <= n => Ok(i - 1),
                _ => Err(Error::parse(line, format!("bad partition input `{t}`"))),
            }
        })
        .collect()
}

impl Circuit {
    pub fn parse(text: &str) -> Result<Circuit> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (hline, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing `circuit <n>` header"))?;
        let n: u32 = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["circuit", n] => n
                .parse()
                .ok()
                .filter(|&n| n >= 1)
                .ok_or_else(|| Error::parse(hline, format!("bad input count `{n}`")))?,
            _ => return Err(Error::parse(hline, "expected `circuit <n>`")),
        };

        let mut gates: Vec<Gate> = Vec::new();
        let mut partition: Option<Partition> = None;
        let mut outputs: Option<Vec<Wire>> = None;

        for (line, content) in lines {
            if outputs.is_some() {
                return Err(Error::parse(line, "nothing may follow the `outputs` line"));
            }
            let toks: Vec<&str> = content.split_whitespace().collect();
            match toks[0] {
                "outputs" => {
                    if toks.len() < 2 {
                        return Err(Error::parse(line, "`outputs` needs at least one wire"));
                    }
                    let ws = toks[1..]
                        .iter()
                        .map(|t| parse_wire(t, n, gates.len(), line))
                        .collect::<Result<Vec<_>>>()?;
                    outputs = Some(ws);
                }
                "partition" => {
                    if partition.is_some() {
                        return Err(Error::parse(line, "partition given twice"));
                    }
                    let rest = content["partition".len()..].trim();
                    let (l, r) = rest
                        .split_once('|')
                        .ok_or_else(|| Error::parse(line, "partition needs `<left> | <right>`"))?;
                    let p = Partition {
                        left: parse_side(l, n, line)?,
                        right: parse_side(r, n, line)?,
                    };
                    super::check_partition(n, &p).map_err(|e| Error::parse(line, e.to_string()))?;
                    partition = Some(p);
                }
                name => {
                    let expected = format!("g{}", gates.len() + 1);
                    if toks.len() < 3 || toks[1] != "=" {
                        return Err(Error::parse(line, format!("expected `{expected} = <OP> ...`")));
                    }
                    if name != expected {
                        return Err(Error::parse(line, format!("expected gate `{expected}`, found `{name}`")));
                    }
                    let args = toks[3..]
                        .iter()
                        .map(|t| parse_wire(t, n, gates.len(), line))
                        .collect::<Result<Vec<_>>>()?;
                    let gate = match (toks[2], args.len()) {
                        ("AND", 2) => Gate::And([args[0], args[1]]),
                        ("AND", k) => return Err(Error::parse(line, format!("AND takes 2 operands, got {k}"))),
                        ("XOR", 0) => return Err(Error::parse(line, "XOR takes at least 1 operand")),
                        ("XOR", _) => Gate::Xor(args),
                        ("ONE", 0) => Gate::One,
                        ("ONE", k) => return Err(Error::parse(line, format!("ONE takes no operands, got {k}"))),
                        (op, _) => return Err(Error::parse(line, format!("unknown gate type `{op}`"))),
                    };
                    gates.push(gate);
                }
            }
        }
        let outputs = outputs.ok_or_else(|| Error::parse(text.lines().count().max(1), "missing `outputs` line"))?;
        Circuit::new(n, gates, outputs, partition).map_err(|e| Error::parse(hline, e.to_string()))
    }

    pub fn serialize(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Wire {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Wire::Input(j) => write!(f, "x{}", j + 1),
            Wire::Gate(k) => write!(f, "g{}", k + 1),
        }
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "circuit {}", self.n)?;
        for (k, gate) in self.gates.iter().enumerate() {
            write!(f, "g{} = ", k + 1)?;
            match gate {
                Gate::And([a, b]) => writeln!(f, "AND {a} {b}")?,
                Gate::Xor(ws) => {
                    f.write_str("XOR")?;
                    for w in ws {
                        write!(f, " {w}")?;
                    }
                    writeln!(f)?;
                }
                Gate::One => writeln!(f, "ONE")?,
            }
        }
        if let Some(p) = &self.partition {
            let side = |s: &[u32]| s.iter().map(|j| (j + 1).to_string()).collect::<Vec<_>>().join(",");
            writeln!(f, "partition {} | {}", side(&p.left), side(&p.right))?;
        }
        f.write_str("outputs")?;
        for w in &self.outputs {
            write!(f, " {w}")?;
        }
        writeln!(f)
    }
}

impl FromStr for Circuit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Circuit::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::tests::random_circuit;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const IP4: &str = "\
# inner product on four inputs
circuit 4
g1 = AND x1 x3
g2 = AND x2 x4
g3 = XOR g1 g2
partition 1,2 | 3,4
outputs g3
";

    #[test]
    fn parses_minimal_text() {
        let c = Circuit::parse(IP4).unwrap();
        assert_eq!(c.n(), 4);
        assert_eq!(c.gates().len(), 3);
        assert!(c.classify().is_bilinear);
        assert_eq!(Circuit::parse("circuit 1\ng1 = ONE\noutputs g1 x1").unwrap().m(), 2);
    }

    #[test]
    fn serialize_is_stable() {
        let c = Circuit::parse(IP4).unwrap();
        let text = c.serialize();
        assert_eq!(text, IP4.lines().skip(1).map(|l| format!("{l}\n")).collect::<String>());
        assert_eq!(Circuit::parse(&text).unwrap(), c);
    }

    #[test]
    fn forward_reference_reports_line() {
        let err = Circuit::parse("circuit 2\ng1 = AND x1 g2\ng2 = ONE\noutputs g1").unwrap_err();
        match err {
            Error::Parse { line, message } => {
                assert_eq!(line, 2);
                assert!(message.contains("forward"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn structural_errors_report_lines() {
        let cases = [
            ("circuit 2\ng1 = AND x1\noutputs g1", 2),
            ("circuit 2\ng1 = XOR\noutputs g1", 2),
            ("circuit 2\ng1 = ONE x1\noutputs g1", 2),
            ("circuit 2\ng1 = AND x1 x3\noutputs g1", 2),
            ("circuit 2\ng2 = ONE\noutputs g2", 2),
            ("circuit 2\ng1 = NAND x1 x2\noutputs g1", 2),
            ("circuit 2\ng1 = ONE\noutputs g1\ng2 = ONE", 4),
            ("circuit 2\ng1 = ONE\npartition 1 | 1\noutputs g1", 3),
            ("circuit 2\ng1 = ONE\noutputs g5", 3),
            ("circ 2\n", 1),
        ];
        for (text, expected) in cases {
            match Circuit::parse(text) {
                Err(Error::Parse { line, .. }) => assert_eq!(line, expected, "{text}"),
                other => panic!("{text}: expected parse error, got {other:?}"),
            }
        }
        assert!(matches!(Circuit::parse("circuit 2\ng1 = ONE\n"), Err(Error::Parse { .. })));
    }

    proptest! {
        #[test]
        fn roundtrip(n in 1u32..=8, gates in 0usize..30, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let c = random_circuit(n, gates, 3, false, &mut rng);
            let text = c.serialize();
            let back = Circuit::parse(&text).unwrap();
            prop_assert_eq!(&back, &c);
            prop_assert_eq!(back.serialize(), text);
        }
    }
}

//! XOR-AND circuit IR.
//!
//! Gates are AND with exactly two operands, XOR with one or more operands
//! (a single operand is a plain copy), and the constant ONE. Operands refer to
//! inputs or to strictly earlier gates, so the gate list is always in
//! topological order.

mod text;

use serde::Serialize;

use crate::bits::BitVec;
use crate::boolfn::{variable_table, BooleanFunction};
use crate::budget::Budget;
use crate::error::{Error, Result};

/// A wire: circuit input `x_{i+1}` or the output of gate `g_{k+1}` (0-based here).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Wire {
    Input(u32),
    Gate(u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gate {
    And([Wire; 2]),
    Xor(Vec<Wire>),
    One,
}

impl Gate {
    pub fn operands(&self) -> &[Wire] {
        match self {
            Gate::And(ab) => ab,
            Gate::Xor(ws) => ws,
            Gate::One => &[],
        }
    }

    pub fn is_and(&self) -> bool {
        matches!(self, Gate::And(_))
    }
}

/// Two disjoint input sets covering all inputs (0-based indices).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub left: Vec<u32>,
    pub right: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    n: u32,
    gates: Vec<Gate>,
    outputs: Vec<Wire>,
    partition: Option<Partition>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CircuitClassification {
    pub is_sigma_pi_sigma: bool,
    pub is_quadratic: bool,
    pub is_bilinear: bool,
    pub and_count: usize,
    pub and_depth: usize,
}

impl Circuit {
    pub fn new(n: u32, gates: Vec<Gate>, outputs: Vec<Wire>, partition: Option<Partition>) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("circuit needs at least one input"));
        }
        for (k, gate) in gates.iter().enumerate() {
            if let Gate::Xor(ws) = gate {
                if ws.is_empty() {
                    return Err(Error::invalid(format!("gate g{} is an XOR with no operands", k + 1)));
                }
            }
            for &w in gate.operands() {
                check_wire(n, k, w).map_err(|msg| Error::invalid(format!("gate g{}: {msg}", k + 1)))?;
            }
        }
        if outputs.is_empty() {
            return Err(Error::invalid("circuit needs at least one output"));
        }
        for &w in &outputs {
            check_wire(n, gates.len(), w).map_err(|msg| Error::invalid(format!("output: {msg}")))?;
        }
        if let Some(p) = &partition {
            check_partition(n, p)?;
        }
        Ok(Circuit {
            n,
            gates,
            outputs,
            partition,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> usize {
        self.outputs.len()
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn outputs(&self) -> &[Wire] {
        &self.outputs
    }

    pub fn partition(&self) -> Option<&Partition> {
        self.partition.as_ref()
    }

    pub fn with_partition(mut self, partition: Option<Partition>) -> Result<Self> {
        if let Some(p) = &partition {
            check_partition(self.n, p)?;
        }
        self.partition = partition;
        Ok(self)
    }

    /// Gate indices (0-based) of the AND gates, in circuit order.
    pub fn and_gates(&self) -> Vec<usize> {
        self.gates
            .iter()
            .enumerate()
            .filter(|(_, g)| g.is_and())
            .map(|(k, _)| k)
            .collect()
    }

    /// Evaluates all outputs on the assignment `x` (bit `j` is `x_{j+1}`).
    pub fn evaluate(&self, x: u64) -> Result<Vec<bool>> {
        if self.n < 64 && x >> self.n != 0 {
            return Err(Error::invalid(format!("input {x:#x} is not below 2^{}", self.n)));
        }
        if self.n > 64 {
            return Err(Error::invalid("evaluate takes a 64-bit assignment; circuit has more inputs"));
        }
        let mut values = Vec::with_capacity(self.gates.len());
        let read = |values: &[bool], w: Wire| match w {
            Wire::Input(j) => (x >> j) & 1 == 1,
            Wire::Gate(k) => values[k as usize],
        };
        for gate in &self.gates {
            let v = match gate {
                Gate::And([a, b]) => read(&values, *a) & read(&values, *b),
                Gate::Xor(ws) => ws.iter().fold(false, |acc, &w| acc ^ read(&values, w)),
                Gate::One => true,
            };
            values.push(v);
        }
        Ok(self.outputs.iter().map(|&w| read(&values, w)).collect())
    }

    /// Bit-parallel evaluation over all `2^n` inputs.
    pub fn truth_table(&self, budget: &Budget) -> Result<BooleanFunction> {
        budget.check_tt_n(self.n)?;
        let len = 1usize << self.n;
        let inputs: Vec<BitVec> = (0..self.n).map(|j| variable_table(self.n, j)).collect();

        // Drop intermediate tables after their last use.
        let mut last_use = vec![0usize; self.gates.len()];
        let mut pinned = vec![false; self.gates.len()];
        for (k, gate) in self.gates.iter().enumerate() {
            for w in gate.operands() {
                if let Wire::Gate(g) = w {
                    last_use[*g as usize] = k;
                }
            }
        }
        for w in &self.outputs {
            if let Wire::Gate(g) = w {
                pinned[*g as usize] = true;
            }
        }

        let mut tables: Vec<Option<BitVec>> = Vec::with_capacity(self.gates.len());
        for (k, gate) in self.gates.iter().enumerate() {
            let t = match gate {
                Gate::And([a, b]) => {
                    let mut t = get_ref(&tables, &inputs, *a).into_owned();
                    t.and_assign(&get_ref(&tables, &inputs, *b));
                    t
                }
                Gate::Xor(ws) => {
                    let mut t = BitVec::zeros(len);
                    for &w in ws {
                        t.xor_assign(&get_ref(&tables, &inputs, w));
                    }
                    t
                }
                Gate::One => BitVec::ones(len),
            };
            tables.push(Some(t));
            for w in gate.operands() {
                if let Wire::Gate(g) = *w {
                    let g = g as usize;
                    if last_use[g] == k && !pinned[g] {
                        tables[g] = None;
                    }
                }
            }
        }
        let outs = self
            .outputs
            .iter()
            .map(|&w| get_ref(&tables, &inputs, w).into_owned())
            .collect();
        BooleanFunction::new(self.n, outs)
    }

    /// `(AND count, AND depth)`; depth is the most AND gates on any input-to-output path.
    pub fn and_metrics(&self) -> (usize, usize) {
        let mut depth = Vec::with_capacity(self.gates.len());
        let wire_depth = |depth: &[usize], w: Wire| match w {
            Wire::Input(_) => 0,
            Wire::Gate(k) => depth[k as usize],
        };
        for gate in &self.gates {
            let d = match gate {
                Gate::And([a, b]) => 1 + wire_depth(&depth, *a).max(wire_depth(&depth, *b)),
                Gate::Xor(ws) => ws.iter().map(|&w| wire_depth(&depth, w)).max().unwrap_or(0),
                Gate::One => 0,
            };
            depth.push(d);
        }
        let count = self.gates.iter().filter(|g| g.is_and()).count();
        let max = self.outputs.iter().map(|&w| wire_depth(&depth, w)).max().unwrap_or(0);
        (count, max)
    }

    /// First AND gate (0-based index) with an AND gate in one of its operand cones.
    pub fn first_nested_and(&self) -> Option<usize> {
        let cones = self.and_cones();
        self.gates.iter().enumerate().find_map(|(k, g)| match g {
            Gate::And(ab) if ab.iter().any(|&w| wire_has_and(&cones, w)) => Some(k),
            _ => None,
        })
    }

    /// For each gate, whether an AND gate lies in its cone (itself included).
    fn and_cones(&self) -> Vec<bool> {
        let mut cones: Vec<bool> = Vec::with_capacity(self.gates.len());
        for gate in &self.gates {
            let c = match gate {
                Gate::And(_) => true,
                Gate::Xor(ws) => ws.iter().any(|&w| wire_has_and(&cones, w)),
                Gate::One => false,
            };
            cones.push(c);
        }
        cones
    }

    /// Linear part of every AND-free wire, as a set of inputs; `None` for wires
    /// with an AND gate in their cone.
    fn linear_supports(&self) -> Vec<Option<BitVec>> {
        let n = self.n as usize;
        let mut forms: Vec<Option<BitVec>> = Vec::with_capacity(self.gates.len());
        for gate in &self.gates {
            let f = match gate {
                Gate::And(_) => None,
                Gate::One => Some(BitVec::zeros(n)),
                Gate::Xor(ws) => {
                    let mut acc = Some(BitVec::zeros(n));
                    for &w in ws {
                        match (&mut acc, w) {
                            (Some(a), Wire::Input(j)) => a.flip(j as usize),
                            (Some(a), Wire::Gate(k)) => match &forms[k as usize] {
                                Some(f) => a.xor_assign(f),
                                None => acc = None,
                            },
                            (None, _) => break,
                        }
                    }
                    acc
                }
            };
            forms.push(f);
        }
        forms
    }

    pub fn classify(&self) -> CircuitClassification {
        let (and_count, and_depth) = self.and_metrics();
        let is_quadratic = self.first_nested_and().is_none();
        // With fanin-2 AND gates, a circuit is layered XOR/AND/XOR exactly when
        // no AND gate feeds another.
        let is_sigma_pi_sigma = is_quadratic;
        let is_bilinear = is_quadratic
            && match &self.partition {
                None => false,
                Some(p) => self.and_gates_respect(p),
            };
        CircuitClassification {
            is_sigma_pi_sigma,
            is_quadratic,
            is_bilinear,
            and_count,
            and_depth,
        }
    }

    fn and_gates_respect(&self, p: &Partition) -> bool {
        let n = self.n as usize;
        let mut left = BitVec::zeros(n);
        for &j in &p.left {
            left.set(j as usize, true);
        }
        let mut right = left.clone();
        right.not_assign();
        let forms = self.linear_supports();
        let support = |w: Wire| -> BitVec {
            match w {
                Wire::Input(j) => {
                    let mut v = BitVec::zeros(n);
                    v.set(j as usize, true);
                    v
                }
                Wire::Gate(k) => forms[k as usize].clone().expect("quadratic circuit has affine operands"),
            }
        };
        let within = |s: &BitVec, side: &BitVec| {
            let mut t = s.clone();
            t.and_assign(side);
            t == *s
        };
        self.gates.iter().all(|g| match g {
            Gate::And([a, b]) => {
                let (sa, sb) = (support(*a), support(*b));
                (within(&sa, &left) && within(&sb, &right)) || (within(&sa, &right) && within(&sb, &left))
            }
            _ => true,
        })
    }
}

fn wire_has_and(cones: &[bool], w: Wire) -> bool {
    match w {
        Wire::Input(_) => false,
        Wire::Gate(k) => cones[k as usize],
    }
}

fn get_ref<'a>(tables: &'a [Option<BitVec>], inputs: &'a [BitVec], w: Wire) -> std::borrow::Cow<'a, BitVec> {
    match w {
        Wire::Input(j) => std::borrow::Cow::Borrowed(&inputs[j as usize]),
        Wire::Gate(g) => std::borrow::Cow::Borrowed(tables[g as usize].as_ref().expect("live operand")),
    }
}

fn check_wire(n: u32, available_gates: usize, w: Wire) -> std::result::Result<(), String> {
    match w {
        Wire::Input(j) if j >= n => Err(format!("input x{} does not exist (n={n})", j + 1)),
        Wire::Gate(k) if k as usize >= available_gates => Err(format!("g{} is not an earlier gate", k + 1)),
        _ => Ok(()),
    }
}

fn check_partition(n: u32, p: &Partition) -> Result<()> {
    let mut seen = vec![false; n as usize];
    for &j in p.left.iter().chain(&p.right) {
        if j >= n {
            return Err(Error::invalid(format!("partition names x{} but n={n}", j + 1)));
        }
        if std::mem::replace(&mut seen[j as usize], true) {
            return Err(Error::invalid(format!("partition lists x{} twice", j + 1)));
        }
    }
    if let Some(j) = seen.iter().position(|s| !s) {
        return Err(Error::invalid(format!("partition does not cover x{}", j + 1)));
    }
    Ok(())
}

/// Incremental circuit construction for the synthesis routines.
#[derive(Debug, Clone)]
pub struct CircuitBuilder {
    n: u32,
    gates: Vec<Gate>,
    one: Option<Wire>,
}

impl CircuitBuilder {
    pub fn new(n: u32) -> Self {
        CircuitBuilder {
            n,
            gates: Vec::new(),
            one: None,
        }
    }

    pub fn input(&self, j: u32) -> Wire {
        assert!(j < self.n, "input x{} out of range", j + 1);
        Wire::Input(j)
    }

    fn push(&mut self, g: Gate) -> Wire {
        self.gates.push(g);
        Wire::Gate(self.gates.len() as u32 - 1)
    }

    pub fn and(&mut self, a: Wire, b: Wire) -> Wire {
        self.push(Gate::And([a, b]))
    }

    /// XOR of one or more wires.
    pub fn xor(&mut self, ws: Vec<Wire>) -> Wire {
        assert!(!ws.is_empty(), "XOR needs at least one operand");
        self.push(Gate::Xor(ws))
    }

    /// The shared constant-one wire, created on first use.
    pub fn one(&mut self) -> Wire {
        match self.one {
            Some(w) => w,
            None => {
                let w = self.push(Gate::One);
                self.one = Some(w);
                w
            }
        }
    }

    pub fn and_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_and()).count()
    }

    pub fn finish(self, outputs: Vec<Wire>, partition: Option<Partition>) -> Result<Circuit> {
        Circuit::new(self.n, self.gates, outputs, partition)
    }
}

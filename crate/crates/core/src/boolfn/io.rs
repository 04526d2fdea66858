//! Truth-table text format.
//!
//! ```text
//! # comment
//! tt <n> <m>
//! <2^n characters over {0,1}>   (m lines)
//! ```

use crate::bits::BitVec;
use crate::boolfn::{BooleanFunction, MAX_N};
use crate::error::{Error, Result};

impl BooleanFunction {
    pub fn parse_tt(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (hline, header) = lines.next().ok_or_else(|| Error::parse(1, "missing `tt <n> <m>` header"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let (n, m) = match fields.as_slice() {
            ["tt", n, m] => {
                let n: u32 = n
                    .parse()
                    .map_err(|_| Error::parse(hline, format!("bad input count `{n}`")))?;
                let m: usize = m
                    .parse()
                    .map_err(|_| Error::parse(hline, format!("bad output count `{m}`")))?;
                (n, m)
            }
            _ => return Err(Error::parse(hline, "expected `tt <n> <m>`")),
        };
        if !(1..=MAX_N).contains(&n) {
            return Err(Error::parse(hline, format!("n={n} outside 1..={MAX_N}")));
        }
        let len = 1usize << n;
        let mut tables = Vec::with_capacity(m);
        for (lineno, line) in lines {
            if tables.len() == m {
                return Err(Error::parse(lineno, format!("more than {m} table lines")));
            }
            if line.len() != len {
                return Err(Error::parse(
                    lineno,
                    format!("table has {} characters, expected {len}", line.len()),
                ));
            }
            let t = BitVec::from_01_str(line)
                .ok_or_else(|| Error::parse(lineno, "table characters must be 0 or 1"))?;
            tables.push(t);
        }
        if tables.len() != m {
            return Err(Error::parse(
                text.lines().count().max(1),
                format!("expected {m} table lines, found {}", tables.len()),
            ));
        }
        BooleanFunction::new(n, tables).map_err(|e| Error::parse(hline, e.to_string()))
    }

    pub fn to_tt_string(&self) -> String {
        let mut out = format!("tt {} {}\n", self.n(), self.m());
        for t in self.tables() {
            out.push_str(&t.to_01_string());
            out.push('\n');
        }
        out
    }
}

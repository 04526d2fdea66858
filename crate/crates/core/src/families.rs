//! Named function families and the GF(2ⁿ) arithmetic behind them.

use std::fmt;
use std::str::FromStr;

use crate::bits::BitVec;
use crate::boolfn::BooleanFunction;
use crate::error::{Error, Result};

/// Largest supported extension degree.
pub const MAX_FIELD_N: u32 = 16;

/// Remainder of `a` modulo `m` as polynomials over F₂.
fn poly_mod(mut a: u64, m: u64) -> u64 {
    let dm = 63 - m.leading_zeros();
    while a != 0 && 63 - a.leading_zeros() >= dm {
        a ^= m << (63 - a.leading_zeros() - dm);
    }
    a
}

/// Irreducibility by trial division with every polynomial of degree `1..=deg/2`.
pub fn is_irreducible(poly: u64) -> bool {
    if poly < 2 {
        return false;
    }
    let deg = 63 - poly.leading_zeros();
    (2u64..1 << (deg / 2 + 1)).all(|d| poly_mod(poly, d) != 0)
}

/// Carry-less product of two polynomials of degree < 32.
fn clmul(a: u64, b: u64) -> u64 {
    let mut acc = 0;
    let mut rest = b;
    while rest != 0 {
        acc ^= a << rest.trailing_zeros();
        rest &= rest - 1;
    }
    acc
}

/// GF(2ⁿ) given by an irreducible reduction polynomial of degree `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldSpec {
    n: u32,
    reduction: u64,
}

impl FieldSpec {
    pub fn new(n: u32, reduction: u64) -> Result<Self> {
        if !(1..=MAX_FIELD_N).contains(&n) {
            return Err(Error::invalid(format!("field degree {n} outside 1..={MAX_FIELD_N}")));
        }
        if reduction >> n != 1 {
            return Err(Error::invalid(format!(
                "reduction polynomial {reduction:#x} does not have degree {n}"
            )));
        }
        if !is_irreducible(reduction) {
            return Err(Error::invalid(format!(
                "reduction polynomial {reduction:#x} is reducible"
            )));
        }
        Ok(FieldSpec { n, reduction })
    }

    /// The lexicographically smallest irreducible polynomial of degree `n`,
    /// except `n = 8`, which uses the AES polynomial `x⁸+x⁴+x³+x+1`.
    pub fn default_for(n: u32) -> Result<Self> {
        if !(1..=MAX_FIELD_N).contains(&n) {
            return Err(Error::invalid(format!("field degree {n} outside 1..={MAX_FIELD_N}")));
        }
        if n == 8 {
            return Self::new(8, 0x11B);
        }
        let poly = (1u64 << n..1u64 << (n + 1))
            .find(|&p| is_irreducible(p))
            .expect("irreducible polynomials exist in every degree");
        Ok(FieldSpec { n, reduction: poly })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn reduction(&self) -> u64 {
        self.reduction
    }

    /// Field product; operands must be below `2^n`.
    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a >> self.n == 0 && b >> self.n == 0);
        let mut p = clmul(a, b);
        let mut i = 2 * self.n;
        while i > self.n {
            i -= 1;
            if (p >> i) & 1 == 1 {
                p ^= self.reduction << (i - self.n);
            }
        }
        p
    }

    /// `x^(2^k)` by `k` squarings.
    pub fn frobenius(&self, x: u64, k: u32) -> u64 {
        (0..k).fold(x, |acc, _| self.mul(acc, acc))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gf2^{}/{:#x}", self.n, self.reduction)
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Parses `gf2^<n>/0x<hex>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::invalid(format!("field spec `{s}` is not of the form gf2^<n>/0x<hex>"));
        let rest = s.trim().strip_prefix("gf2^").ok_or_else(bad)?;
        let (n, poly) = rest.split_once('/').ok_or_else(bad)?;
        let n: u32 = n.parse().map_err(|_| bad())?;
        let hex = poly
            .strip_prefix("0x")
            .or_else(|| poly.strip_prefix("0X"))
            .ok_or_else(bad)?;
        let reduction = u64::from_str_radix(hex, 16).map_err(|_| bad())?;
        FieldSpec::new(n, reduction)
    }
}

/// Checked field multiplication.
pub fn gf2n_mul(a: u64, b: u64, spec: &FieldSpec) -> Result<u64> {
    for v in [a, b] {
        if v >> spec.n != 0 {
            return Err(Error::invalid(format!(
                "operand {v:#x} is not an element of GF(2^{})",
                spec.n
            )));
        }
    }
    Ok(spec.mul(a, b))
}

/// Parameters of the Gold power map `x ↦ x^(2^i + 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GoldSpec {
    n: u32,
    i: u32,
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl GoldSpec {
    pub fn new(n: u32, i: u32) -> Result<Self> {
        if n.is_multiple_of(2) {
            return Err(Error::invalid(format!("Gold functions need odd n, got n={n}")));
        }
        if i < 1 || i > (n - 1) / 2 {
            return Err(Error::invalid(format!(
                "Gold exponent needs 1 <= i <= (n-1)/2, got i={i} for n={n}"
            )));
        }
        if gcd(i, n) != 1 {
            return Err(Error::invalid(format!("Gold exponent needs gcd(i,n)=1, got gcd({i},{n})={}", gcd(i, n))));
        }
        Ok(GoldSpec { n, i })
    }

    /// `i = 1`, valid for every odd `n >= 3`.
    pub fn with_default_exponent(n: u32) -> Result<Self> {
        Self::new(n, 1)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn i(&self) -> u32 {
        self.i
    }
}

/// `IP_2k(x, y) = <x, y>` with `x` the first `k` inputs and `y` the last `k`.
pub fn inner_product_fn(k: u32) -> Result<BooleanFunction> {
    if k == 0 || 2 * k > crate::boolfn::MAX_N {
        return Err(Error::invalid(format!("inner product needs 1 <= k <= 12, got {k}")));
    }
    let low = (1u64 << k) - 1;
    BooleanFunction::from_fn(2 * k, 1, |v| ((v & low) & (v >> k)).count_ones() as u64 & 1)
}

/// `(x, y) ↦ x·y` in the field, `x` the low `n` inputs and `y` the high `n`.
pub fn field_mult_fn(spec: &FieldSpec) -> Result<BooleanFunction> {
    let n = spec.n();
    if n > 10 {
        return Err(Error::invalid(format!("field multiplication table needs n <= 10, got {n}")));
    }
    let low = (1u64 << n) - 1;
    BooleanFunction::from_fn(2 * n, n as usize, |v| spec.mul(v & low, v >> n))
}

/// The Gold function `x ↦ x · x^(2^i)` over `field`.
pub fn gold_fn(gold: &GoldSpec, field: &FieldSpec) -> Result<BooleanFunction> {
    if gold.n() != field.n() {
        return Err(Error::invalid(format!(
            "Gold n={} does not match field degree {}",
            gold.n(),
            field.n()
        )));
    }
    BooleanFunction::from_fn(gold.n(), gold.n() as usize, |x| {
        field.mul(x, field.frobenius(x, gold.i()))
    })
}

/// Output `i` is the product of every input except `x_i`.
pub fn excluded_products_fn(n: u32) -> Result<BooleanFunction> {
    if !(3..=20).contains(&n) {
        return Err(Error::invalid(format!("excluded products need 3 <= n <= 20, got {n}")));
    }
    let all = (1u64 << n) - 1;
    BooleanFunction::from_fn(n, n as usize, |x| {
        (0..n).fold(0, |acc, i| {
            let others = all & !(1 << i);
            acc | (((x & others == others) as u64) << i)
        })
    })
}

/// `I_z`: one exactly on input `z`.
pub fn indicator_fn(z: u64, n: u32) -> Result<BooleanFunction> {
    if n == 0 || n > crate::boolfn::MAX_N {
        return Err(Error::invalid(format!("indicator needs 1 <= n <= 24, got {n}")));
    }
    if z >> n != 0 {
        return Err(Error::invalid(format!("indicator point {z} is not below 2^{n}")));
    }
    let mut t = BitVec::zeros(1 << n);
    t.set(z as usize, true);
    BooleanFunction::new(n, vec![t])
}

/// `AI_n`: all `2^n` indicators, output `z` being `I_z`.
pub fn indicator_bank(n: u32) -> Result<BooleanFunction> {
    if !(1..=12).contains(&n) {
        return Err(Error::invalid(format!("indicator bank needs 1 <= n <= 12, got {n}")));
    }
    let len = 1usize << n;
    let tables = (0..len)
        .map(|z| {
            let mut t = BitVec::zeros(len);
            t.set(z, true);
            t
        })
        .collect();
    BooleanFunction::new(n, tables)
}

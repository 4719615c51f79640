//! The category `Set₂` of total functions `2ⁿ → 2ᵐ`, stored as truth tables.
//!
//! Inputs are enumerated in binary with bit 0 as the top wire: the input
//! whose wires read `x₀ x₁ … x_{n-1}` from top to bottom has index
//! `Σ x_k·2ᵏ`. Outputs use the same packing. Bit strings are written top
//! wire first, so the string `"10"` is the index `1`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::Base;
use crate::error::{Error, Result};

/// Largest input width a table may have.
pub const MAX_INPUT_WIDTH: usize = 20;
/// Largest output width a table may have.
pub const MAX_OUTPUT_WIDTH: usize = 64;

fn mask(width: usize) -> u64 {
    if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

/// Renders the low `width` bits of `x`, top wire (bit 0) first.
pub fn bits_to_string(x: u64, width: usize) -> String {
    (0..width)
        .map(|k| if (x >> k) & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Parses a top-wire-first bit string into its packed value and width.
pub fn parse_bits(s: &str) -> Result<(u64, usize)> {
    let s = s.trim();
    if s.len() > MAX_OUTPUT_WIDTH {
        return Err(Error::Invalid(format!("bit string `{s}` is too long")));
    }
    let mut x = 0u64;
    for (k, c) in s.chars().enumerate() {
        match c {
            '0' => {}
            '1' => x |= 1 << k,
            _ => return Err(Error::Invalid(format!("`{s}` is not a bit string"))),
        }
    }
    Ok((x, s.len()))
}

/// A total function `2ⁿ → 2ᵐ`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "FnTableRepr", into = "FnTableRepr")]
pub struct FnTable {
    n: usize,
    m: usize,
    table: Vec<u64>,
}

impl FnTable {
    pub fn new(n: usize, m: usize, table: Vec<u64>) -> Result<Self> {
        if n > MAX_INPUT_WIDTH || m > MAX_OUTPUT_WIDTH {
            return Err(Error::Invalid(format!("table {n}→{m} is too wide")));
        }
        if table.len() != 1usize << n {
            return Err(Error::Invalid(format!(
                "table for {n} inputs needs {} rows, got {}",
                1usize << n,
                table.len()
            )));
        }
        if table.iter().any(|&y| y & !mask(m) != 0) {
            return Err(Error::Invalid(format!("table output exceeds width {m}")));
        }
        Ok(FnTable { n, m, table })
    }

    pub fn from_fn(n: usize, m: usize, f: impl Fn(u64) -> u64) -> Self {
        assert!(n <= MAX_INPUT_WIDTH && m <= MAX_OUTPUT_WIDTH);
        let table = (0..1u64 << n).map(|x| f(x) & mask(m)).collect();
        FnTable { n, m, table }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |x| x)
    }

    /// The constant `2⁰ → 2ᵐ` emitting `bits`.
    pub fn constant(m: usize, bits: u64) -> Self {
        Self::from_fn(0, m, |_| bits)
    }

    /// `σ_{n,m}`: swaps a top block of `n` wires with a bottom block of `m`.
    pub fn swap(n: usize, m: usize) -> Self {
        Self::from_fn(n + m, n + m, |x| {
            let top = x & mask(n);
            let bottom = x >> n;
            bottom | (top << m)
        })
    }

    pub fn inputs(&self) -> usize {
        self.n
    }

    pub fn outputs(&self) -> usize {
        self.m
    }

    pub fn rows(&self) -> &[u64] {
        &self.table
    }

    pub fn apply(&self, x: u64) -> u64 {
        self.table[x as usize]
    }

    pub fn then(&self, g: &FnTable) -> Result<FnTable> {
        if self.m != g.n {
            return Err(Error::mismatch(format!(
                "cannot compose {}→{} with {}→{}",
                self.n, self.m, g.n, g.m
            )));
        }
        Ok(FnTable {
            n: self.n,
            m: g.m,
            table: self.table.iter().map(|&y| g.apply(y)).collect(),
        })
    }

    /// Parallel composition; `self` occupies the top wires.
    pub fn tensor(&self, g: &FnTable) -> Result<FnTable> {
        let n = self.n + g.n;
        let m = self.m + g.m;
        if n > MAX_INPUT_WIDTH || m > MAX_OUTPUT_WIDTH {
            return Err(Error::Invalid(format!("table {n}→{m} is too wide")));
        }
        Ok(Self::from_fn(n, m, |x| {
            let top = self.apply(x & mask(self.n));
            let bottom = g.apply(x >> self.n);
            top | (bottom << self.m)
        }))
    }
}

impl fmt::Debug for FnTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FnTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}→{}:", self.n, self.m)?;
        for &y in &self.table {
            let s = bits_to_string(y, self.m);
            write!(f, " {}", if s.is_empty() { "•" } else { &s })?;
        }
        write!(f, "⟩")
    }
}

#[derive(Serialize, Deserialize)]
struct FnTableRepr {
    n: usize,
    m: usize,
    table: Vec<String>,
}

impl From<FnTable> for FnTableRepr {
    fn from(t: FnTable) -> Self {
        FnTableRepr {
            n: t.n,
            m: t.m,
            table: t.table.iter().map(|&y| bits_to_string(y, t.m)).collect(),
        }
    }
}

impl TryFrom<FnTableRepr> for FnTable {
    type Error = Error;

    fn try_from(r: FnTableRepr) -> Result<Self> {
        let mut rows = Vec::with_capacity(r.table.len());
        for s in &r.table {
            let (y, w) = parse_bits(s)?;
            if w != r.m {
                return Err(Error::Invalid(format!(
                    "row `{s}` does not have width {}",
                    r.m
                )));
            }
            rows.push(y);
        }
        FnTable::new(r.n, r.m, rows)
    }
}

/// Boolean functions as a base category. Objects are wire counts `n`
/// standing for the sets `2ⁿ`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BoolFns;

/// Hom-sets with more arrows than this are refused by [`Base::hom`].
pub const MAX_HOM_SIZE: u32 = 16;

impl Base for BoolFns {
    type Obj = usize;
    type Arrow = FnTable;

    fn name(&self) -> &str {
        "boolean functions"
    }

    fn dom(&self, f: &FnTable) -> usize {
        f.n
    }

    fn cod(&self, f: &FnTable) -> usize {
        f.m
    }

    fn id(&self, u: &usize) -> FnTable {
        FnTable::identity(*u)
    }

    fn compose(&self, f: &FnTable, g: &FnTable) -> Result<FnTable> {
        f.then(g)
    }

    fn unit(&self) -> Result<usize> {
        Ok(0)
    }

    fn tensor_obj(&self, u: &usize, v: &usize) -> Result<usize> {
        Ok(u + v)
    }

    fn tensor(&self, f: &FnTable, g: &FnTable) -> Result<FnTable> {
        f.tensor(g)
    }

    fn symmetry(&self, u: &usize, v: &usize) -> Result<FnTable> {
        Ok(FnTable::swap(*u, *v))
    }

    /// All `2^(m·2ⁿ)` tables, in increasing order of their packed rows.
    fn hom(&self, u: &usize, v: &usize) -> Result<Vec<FnTable>> {
        let (n, m) = (*u, *v);
        let rows = 1usize << n.min(31);
        let bits = m.saturating_mul(rows);
        if n > MAX_INPUT_WIDTH || bits > MAX_HOM_SIZE as usize {
            return Err(Error::HomNotFinite(format!(
                "Set₂[2^{n}, 2^{m}] has 2^{bits} elements"
            )));
        }
        let out = (0u64..1 << bits)
            .map(|code| {
                let table = (0..rows)
                    .map(|x| (code >> (x * m)) & mask(m))
                    .collect();
                FnTable { n, m, table }
            })
            .collect();
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn not() -> FnTable {
        FnTable::from_fn(1, 1, |x| x ^ 1)
    }

    #[test]
    fn not_then_not_is_identity() {
        // brute force over both inputs
        let nn = not().then(&not()).unwrap();
        for x in 0..2 {
            assert_eq!(nn.apply(x), x);
        }
        assert_eq!(nn, FnTable::identity(1));
    }

    #[test]
    fn tensor_examples() {
        assert_eq!(
            FnTable::identity(2).tensor(&FnTable::identity(3)).unwrap(),
            FnTable::identity(5)
        );
        let nn = not().tensor(&not()).unwrap();
        let (x, _) = parse_bits("01").unwrap();
        assert_eq!(bits_to_string(nn.apply(x), 2), "10");
        let and = FnTable::from_fn(2, 1, |x| (x & 1) & (x >> 1));
        assert_eq!(and.tensor(&FnTable::identity(0)).unwrap(), and);
        assert_eq!(FnTable::identity(0).tensor(&and).unwrap(), and);
    }

    #[test]
    fn swap_is_involutive_and_natural() {
        let s = FnTable::swap(2, 1);
        let back = FnTable::swap(1, 2);
        assert_eq!(s.then(&back).unwrap(), FnTable::identity(3));
        let f = FnTable::from_fn(2, 1, |x| (x & 1) | (x >> 1));
        let g = not();
        // (f ⊗ g) ; σ = σ ; (g ⊗ f)
        let lhs = f.tensor(&g).unwrap().then(&FnTable::swap(1, 1)).unwrap();
        let rhs = FnTable::swap(2, 1).then(&g.tensor(&f).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn hom_enumeration() {
        let h = BoolFns.hom(&1, &1).unwrap();
        assert_eq!(h.len(), 4);
        let mut dedup = h.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), 4);
        assert_eq!(BoolFns.hom(&0, &0).unwrap(), vec![FnTable::identity(0)]);
        assert_eq!(BoolFns.hom(&1, &2).unwrap().len(), 16);
        assert!(BoolFns.hom(&3, &3).is_err());
    }

    #[test]
    fn table_validation_and_serde() {
        assert!(FnTable::new(1, 1, vec![0]).is_err());
        assert!(FnTable::new(1, 1, vec![0, 2]).is_err());
        let t = FnTable::new(1, 2, vec![1, 2]).unwrap();
        let js = serde_json::to_string(&t).unwrap();
        assert_eq!(js, r#"{"n":1,"m":2,"table":["10","01"]}"#);
        let back: FnTable = serde_json::from_str(&js).unwrap();
        assert_eq!(back, t);
        assert!(serde_json::from_str::<FnTable>(r#"{"n":1,"m":2,"table":["1","01"]}"#).is_err());
    }
}

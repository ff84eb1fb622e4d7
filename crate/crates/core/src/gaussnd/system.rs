use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::projective::{IntMat, SimplexMat};

pub const DEFAULT_MAX_DIM: usize = 8;

/// Piece family: `A`, `B`, `C`, … (index 0, 1, 2, …).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Family(pub u8);

impl Family {
    pub const A: Family = Family(0);
    pub const B: Family = Family(1);
    pub const C: Family = Family(2);

    pub fn letter(self) -> char {
        (b'A' + self.0) as char
    }
}

/// A piece label `𝕏_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    pub family: Family,
    pub k: u64,
}

impl Symbol {
    pub fn new(family: Family, k: u64) -> Self {
        Symbol { family, k }
    }

    pub fn a(k: u64) -> Self {
        Symbol::new(Family::A, k)
    }

    pub fn b(k: u64) -> Self {
        Symbol::new(Family::B, k)
    }

    pub fn c(k: u64) -> Self {
        Symbol::new(Family::C, k)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.k)
    }
}

impl FromStr for Symbol {
    type Err = Error;

    /// Parses `A3`, `B1`, … (letter then positive index).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let bad = |msg: &str| Error::Parse { pos: 0, msg: format!("{msg}: {s:?}") };
        let letter = chars.next().ok_or_else(|| bad("empty symbol"))?;
        if !letter.is_ascii_uppercase() {
            return Err(bad("symbol must start with a family letter"));
        }
        let k: u64 = chars.as_str().parse().map_err(|_| Error::Parse { pos: 1, msg: format!("bad index in {s:?}") })?;
        if k == 0 {
            return Err(Error::Parse { pos: 1, msg: "symbol index must be positive".into() });
        }
        Ok(Symbol::new(Family(letter as u8 - b'A'), k))
    }
}

impl Serialize for Symbol {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Symbol", 2)?;
        st.serialize_field("family", &self.family.letter().to_string())?;
        st.serialize_field("k", &self.k)?;
        st.end()
    }
}

/// Parses a comma-separated symbol list such as `"A3,B1,B1"`.
pub fn parse_symbols(s: &str) -> Result<Vec<Symbol>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(str::parse).collect()
}

/// Generators `A`, `B` and base simplex `V` of the n-dimensional Mönkemeyer map.
#[derive(Debug, Clone)]
pub struct MapSystem {
    n: usize,
    a: IntMat,
    b: IntMat,
    v: SimplexMat,
}

fn a_rows(n: usize) -> Vec<Vec<i64>> {
    let mut rows = vec![vec![0i64; n + 1]; n + 1];
    rows[0][0] = 1;
    for (i, row) in rows.iter_mut().enumerate().take(n).skip(1) {
        row[i - 1] = 1;
        row[n - 1] = -1;
    }
    rows[n][n - 1] = -1;
    rows[n][n] = 1;
    rows
}

fn to_mat(rows: Vec<Vec<i64>>) -> IntMat {
    IntMat::from_rows(rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect())
        .expect("square")
}

pub fn monkemeyer_matrices(n: usize) -> Result<MapSystem> {
    MapSystem::with_max_dim(n, DEFAULT_MAX_DIM)
}

impl MapSystem {
    pub fn with_max_dim(n: usize, max_dim: usize) -> Result<Self> {
        if n == 0 || n > max_dim {
            return Err(Error::DimensionOutOfRange(n));
        }
        let a = a_rows(n);
        let mut b = a.clone();
        b[0] = vec![0; n + 1];
        b[0][n - 1] = -1;
        b[0][n] = 1;
        b[n] = vec![0; n + 1];
        b[n][0] = 1;
        let v: Vec<Vec<i64>> = (0..=n)
            .map(|i| (0..=n).map(|j| i64::from(i == n || i < j)).collect())
            .collect();
        Ok(MapSystem { n, a: to_mat(a), b: to_mat(b), v: SimplexMat::new(to_mat(v))? })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &IntMat {
        &self.a
    }

    pub fn b(&self) -> &IntMat {
        &self.b
    }

    pub fn v(&self) -> &SimplexMat {
        &self.v
    }

    /// Number of Mönkemeyer A-steps before the B-step for `sym`.
    pub fn steps_for(&self, sym: Symbol) -> Result<u64> {
        self.check(sym)?;
        Ok(self.n as u64 * sym.k - (u64::from(sym.family.0) + 1))
    }

    /// Inverse of [`steps_for`](Self::steps_for).
    pub fn symbol_from_steps(&self, kv: u64) -> Symbol {
        let n = self.n as u64;
        let k = kv / n + 1;
        let j = n * k - kv;
        Symbol::new(Family((j - 1) as u8), k)
    }

    fn check(&self, sym: Symbol) -> Result<()> {
        if usize::from(sym.family.0) >= self.n || sym.k == 0 {
            return Err(Error::InvalidParameter(format!("symbol {sym} does not exist in dimension {}", self.n)));
        }
        Ok(())
    }

    /// `B · A^{k_v}` computed from the generators.
    pub fn symbol_matrix_by_power(&self, sym: Symbol) -> Result<IntMat> {
        let kv = self.steps_for(sym)?;
        Ok(self.b.mul(&self.a.pow(kv as i64)?))
    }

    /// Return-map matrix of a symbol; closed forms up to dimension 3.
    pub fn symbol_matrix(&self, sym: Symbol) -> Result<IntMat> {
        self.check(sym)?;
        let k = sym.k as i64;
        let rows: Vec<Vec<i64>> = match (self.n, sym.family.0) {
            (1, 0) => vec![vec![-k, 1], vec![1, 0]],
            (2, 0) => vec![vec![-k, 0, 1], vec![0, 1, 0], vec![1, 0, 0]],
            (2, 1) => vec![vec![1 - k, -1, 1], vec![1, -1, 0], vec![1, 0, 0]],
            (3, 0) => vec![vec![-k, 0, 0, 1], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![1, 0, 0, 0]],
            (3, 1) => vec![vec![1 - k, -1, 0, 1], vec![1, -1, 1, 0], vec![1, -1, 0, 0], vec![1, 0, 0, 0]],
            (3, 2) => vec![vec![1 - k, 0, -1, 1], vec![1, 0, -1, 0], vec![0, 1, -1, 0], vec![1, 0, 0, 0]],
            _ => return self.symbol_matrix_by_power(sym),
        };
        Ok(to_mat(rows))
    }

    pub fn symbol_inverse(&self, sym: Symbol) -> Result<IntMat> {
        self.symbol_matrix(sym)?.inverse()
    }

    /// The closed piece `𝕏_k = 𝐗_k⁻¹ V`.
    pub fn piece(&self, sym: Symbol) -> Result<SimplexMat> {
        SimplexMat::new(self.symbol_inverse(sym)?.mul(self.v.matrix()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMat {
        IntMat::from_i64(rows)
    }

    #[test]
    fn generators_low_dims() {
        let s1 = monkemeyer_matrices(1).unwrap();
        assert_eq!(s1.a(), &m(&[&[1, 0], &[-1, 1]]));
        assert_eq!(s1.b(), &m(&[&[-1, 1], &[1, 0]]));
        assert_eq!(s1.v().matrix(), &m(&[&[0, 1], &[1, 1]]));
        let s2 = monkemeyer_matrices(2).unwrap();
        assert_eq!(s2.a(), &m(&[&[1, 0, 0], &[1, -1, 0], &[0, -1, 1]]));
        assert_eq!(s2.b(), &m(&[&[0, -1, 1], &[1, -1, 0], &[1, 0, 0]]));
        assert_eq!(s2.v().matrix(), &m(&[&[0, 1, 1], &[0, 0, 1], &[1, 1, 1]]));
        let s3 = monkemeyer_matrices(3).unwrap();
        assert_eq!(s3.a(), &m(&[&[1, 0, 0, 0], &[1, 0, -1, 0], &[0, 1, -1, 0], &[0, 0, -1, 1]]));
        assert_eq!(s3.b(), &m(&[&[0, 0, -1, 1], &[1, 0, -1, 0], &[0, 1, -1, 0], &[1, 0, 0, 0]]));
        assert!(monkemeyer_matrices(0).is_err());
        assert!(monkemeyer_matrices(9).is_err());
    }

    #[test]
    fn determinants_are_units() {
        for n in 1..=8 {
            let s = monkemeyer_matrices(n).unwrap();
            assert_eq!(s.a().det().magnitude(), &1u32.into(), "A, n={n}");
            assert_eq!(s.b().det().magnitude(), &1u32.into(), "B, n={n}");
            assert_eq!(s.v().det().magnitude(), &1u32.into(), "V, n={n}");
        }
        let dets: Vec<i64> = (1..=3)
            .map(|n| {
                let s = monkemeyer_matrices(n).unwrap();
                i64::try_from(s.a().det()).unwrap() * 10 + i64::try_from(s.b().det()).unwrap()
            })
            .collect();
        assert_eq!(dets, vec![10 - 1, -10 + 1, 10 - 1]);
    }

    #[test]
    fn closed_forms_match_powers() {
        for n in 1..=3 {
            let s = monkemeyer_matrices(n).unwrap();
            for fam in 0..n as u8 {
                for k in 1..=7 {
                    let sym = Symbol::new(Family(fam), k);
                    assert_eq!(s.symbol_matrix(sym).unwrap(), s.symbol_matrix_by_power(sym).unwrap(), "{sym}");
                }
            }
        }
    }

    #[test]
    fn translation_pattern() {
        // A^{2m} and A^{3m} are lower-left translations
        let s2 = monkemeyer_matrices(2).unwrap();
        assert_eq!(s2.a().pow(6).unwrap(), m(&[&[1, 0, 0], &[0, 1, 0], &[-3, 0, 1]]));
        let s3 = monkemeyer_matrices(3).unwrap();
        assert_eq!(s3.a().pow(6).unwrap(), m(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[-2, 0, 0, 1]]));
    }

    #[test]
    fn step_law() {
        let s2 = monkemeyer_matrices(2).unwrap();
        assert_eq!(s2.steps_for(Symbol::a(3)).unwrap(), 5);
        assert_eq!(s2.steps_for(Symbol::b(3)).unwrap(), 4);
        let s3 = monkemeyer_matrices(3).unwrap();
        assert_eq!(s3.steps_for(Symbol::c(2)).unwrap(), 3);
        for n in 1..=5 {
            let s = monkemeyer_matrices(n).unwrap();
            for kv in 0..40 {
                assert_eq!(s.steps_for(s.symbol_from_steps(kv)).unwrap(), kv);
            }
        }
        assert!(s2.symbol_matrix(Symbol::c(1)).is_err());
    }

    #[test]
    fn symbol_text() {
        assert_eq!("A3".parse::<Symbol>().unwrap(), Symbol::a(3));
        assert_eq!(parse_symbols("A3, B1,C2").unwrap(), vec![Symbol::a(3), Symbol::b(1), Symbol::c(2)]);
        assert!("A0".parse::<Symbol>().is_err());
        assert!("3".parse::<Symbol>().is_err());
        assert_eq!(Symbol::b(12).to_string(), "B12");
    }
}

use std::cmp::Ordering;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::logs::{ln_enclosure, render_verified};
use crate::exactnum::{Interval, Rational, Scalar};
use crate::gaussnd::{return_step, MapSystem, Symbol};
use crate::projective::{IntMat, ProjPoint};

/// Decimal digits of every finite γ value.
pub const WORKING_DIGITS: usize = 50;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum GammaValue {
    Finite {
        value: String,
        #[serde(skip)]
        enclosure: Interval,
    },
    /// Zero error or a column with `r = 1`.
    Infinite,
}

impl GammaValue {
    pub fn text(&self) -> &str {
        match self {
            GammaValue::Finite { value, .. } => value,
            GammaValue::Infinite => "inf",
        }
    }

    /// Strict containment in `(lo, hi)`, decided on the verified enclosure.
    pub fn within(&self, lo: &Rational, hi: &Rational) -> bool {
        match self {
            GammaValue::Finite { enclosure, .. } => &enclosure.lo > lo && &enclosure.hi < hi,
            GammaValue::Infinite => false,
        }
    }

    pub fn approx(&self) -> f64 {
        match self {
            GammaValue::Finite { value, .. } => value.parse().unwrap_or(f64::NAN),
            GammaValue::Infinite => f64::INFINITY,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RateRow {
    pub n: usize,
    pub gamma: [GammaValue; 3],
}

#[derive(Debug, Clone, Serialize)]
pub struct RateTable {
    pub digits: usize,
    pub symbols: Vec<Symbol>,
    pub rows: Vec<RateRow>,
}

impl RateTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,gamma1,gamma2,gamma3\n");
        for r in &self.rows {
            let _ = writeln!(out, "{},{},{},{}", r.n, r.gamma[0].text(), r.gamma[1].text(), r.gamma[2].text());
        }
        out
    }

    /// Smallest and largest value of column `i`, compared on enclosures.
    pub fn column_range(&self, i: usize) -> Option<(GammaValue, GammaValue)> {
        let key = |g: &GammaValue| match g {
            GammaValue::Finite { enclosure, .. } => (1, enclosure.lo.clone()),
            GammaValue::Infinite => (2, Rational::zero()),
        };
        let col = self.rows.iter().map(|r| &r.gamma[i]);
        let min = col.clone().min_by_key(|g| key(g))?.clone();
        let max = col.max_by_key(|g| key(g))?.clone();
        Some((min, max))
    }
}

fn abs_s<S: Scalar>(x: S) -> Result<S> {
    Ok(if x.signum()? == Ordering::Less { x.negated() } else { x })
}

/// Enclosure of a positive scalar with relative width about `2^-bits`.
fn relative_enclosure<S: Scalar>(e: &S, bits: u64) -> Result<Interval> {
    let mut w = Rational::new(1.into(), BigInt::one() << 64u32);
    loop {
        let iv = e.enclose(&w)?;
        if iv.lo.is_positive() {
            let target = &iv.lo / Rational::from_integer(BigInt::one() << bits);
            if iv.width() <= target {
                return Ok(iv);
            }
            return e.enclose(&target);
        }
        w = &w / Rational::from_integer(BigInt::one() << 64u32);
    }
}

fn div_interval(a: &Interval, b: &Interval) -> Interval {
    let q = [&a.lo / &b.lo, &a.lo / &b.hi, &a.hi / &b.lo, &a.hi / &b.hi];
    let lo = q.iter().min().expect("nonempty").clone();
    let hi = q.iter().max().expect("nonempty").clone();
    Interval::new(lo, hi)
}

fn gamma_of<S: Scalar>(err: &S, r: &BigInt) -> Result<GammaValue> {
    if err.is_zero() || r.is_one() {
        return Ok(GammaValue::Infinite);
    }
    let mut bits = 256u64;
    loop {
        let e = relative_enclosure(err, bits)?;
        let ln_lo = ln_enclosure(&e.lo, bits);
        let ln_hi = ln_enclosure(&e.hi, bits);
        let num = Interval::new(-&ln_hi.hi, -&ln_lo.lo);
        let den = ln_enclosure(&Rational::from_integer(r.clone()), bits);
        let g = div_interval(&num, &den);
        if let Some(value) = render_verified(&g, WORKING_DIGITS) {
            return Ok(GammaValue::Finite { value, enclosure: g });
        }
        if bits >= 4096 {
            let value = render_verified(&Interval::point(g.lo.clone()), WORKING_DIGITS).expect("point");
            return Ok(GammaValue::Finite { value, enclosure: g });
        }
        bits *= 2;
    }
}

/// `γ_i(n) = −log(|x − p/r| + |y − q/r|) / log r` for the three columns
/// `(p, q, r)` of each approximating simplex, `n = 1..=steps`.
pub fn gamma_rates<S: Scalar>(sys: &MapSystem, point: &ProjPoint<S>, steps: usize) -> Result<RateTable> {
    if sys.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 3, got: sys.dim() + 1 });
    }
    if steps == 0 {
        return Err(Error::InvalidParameter("at least one step is required".into()));
    }
    if point.coords().iter().all(|c| c.as_rational().is_some()) {
        return Err(Error::RationalInput);
    }
    let aff = point.affine()?;
    let mut symbols = Vec::with_capacity(steps);
    let mut cur = point.clone();
    for _ in 0..steps {
        let r = return_step(sys, &cur)?;
        let s = r.symbol.ok_or(Error::InsufficientTerms { needed: steps, have: symbols.len() })?;
        symbols.push(s);
        cur = r.point;
    }
    let mut acc = IntMat::identity(3);
    let mut rows = Vec::with_capacity(steps);
    for (n, s) in symbols.iter().enumerate() {
        acc = acc.mul(&sys.symbol_inverse(*s)?);
        let sm = acc.mul(sys.v().matrix());
        let mut gamma = Vec::with_capacity(3);
        for col in sm.columns() {
            let r = &col[2];
            if r.is_zero() {
                return Err(Error::CorruptSimplex(format!("column with r = 0 at n = {}", n + 1)));
            }
            let lift = |v: &BigInt| aff[0].lift(&Rational::new(v.clone(), r.clone()));
            let err = abs_s(aff[0].minus(&lift(&col[0])))?.plus(&abs_s(aff[1].minus(&lift(&col[1])))?);
            gamma.push(gamma_of(&err, &r.abs())?);
        }
        let gamma: [GammaValue; 3] = gamma.try_into().expect("three columns");
        rows.push(RateRow { n: n + 1, gamma });
    }
    Ok(RateTable { digits: WORKING_DIGITS, symbols, rows })
}

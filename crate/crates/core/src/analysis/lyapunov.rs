use num_bigint::BigInt;
use serde::Serialize;

use crate::cf1d::{cf_expand, convergents, CfStatus};
use crate::error::{Error, Result};
use crate::exactnum::logs::{ln_enclosure, render_significant};
use crate::exactnum::{Interval, Rational, Scalar};

pub const SIGNIFICANT_DIGITS: usize = 30;
pub const DEFAULT_WINDOW: usize = 10;

#[derive(Debug, Clone, Serialize)]
pub struct LyapunovEstimate {
    pub n: usize,
    #[serde(serialize_with = "as_string")]
    pub q_n: BigInt,
    /// `(2/N)·log q_N` to 30 significant digits, rounded toward −∞.
    pub value: String,
    #[serde(skip)]
    pub enclosure: Interval,
    pub window: usize,
    /// Largest value over `N−window+1..=N`.
    pub tail_max: String,
}

fn as_string<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn scaled_log(q: &BigInt, n: usize, bits: u64) -> Interval {
    let iv = ln_enclosure(&Rational::from_integer(q.clone()), bits);
    let f = Rational::new(2.into(), BigInt::from(n));
    Interval::new(&iv.lo * &f, &iv.hi * &f)
}

/// Enclosure narrow enough to fix `SIGNIFICANT_DIGITS` digits.
fn resolved(q: &BigInt, n: usize) -> (Interval, String) {
    let mut bits = 128;
    loop {
        let iv = scaled_log(q, n, bits);
        if let Some(s) = render_significant(&iv, SIGNIFICANT_DIGITS) {
            return (iv, s);
        }
        if bits > 8192 {
            let s = render_significant(&Interval::point(iv.lo.clone()), SIGNIFICANT_DIGITS).unwrap_or_default();
            return (iv, s);
        }
        bits *= 2;
    }
}

/// `(2/N)·log q_N` from continued-fraction terms.
pub fn lyapunov_from_terms(terms: &[u64], n: usize, window: usize) -> Result<LyapunovEstimate> {
    if n == 0 {
        return Err(Error::InvalidParameter("N must be at least 1".into()));
    }
    if terms.len() < n {
        return Err(Error::InsufficientTerms { needed: n, have: terms.len() });
    }
    let conv = convergents(&terms[..n]);
    let q = conv[n].q.clone();
    let (enclosure, value) = resolved(&q, n);
    let window = window.clamp(1, n);
    let (mut best, mut best_text) = (enclosure.clone(), value.clone());
    for (m, c) in conv.iter().enumerate().take(n).skip(n + 1 - window) {
        let (iv, text) = resolved(&c.q, m);
        if iv.lo > best.lo {
            (best, best_text) = (iv, text);
        }
    }
    Ok(LyapunovEstimate { n, q_n: q, value, enclosure, window, tail_max: best_text })
}

/// Estimate for an irrational `x ∈ (0, 1)`.
pub fn lyapunov_estimate<S: Scalar>(x: &S, n: usize) -> Result<LyapunovEstimate> {
    lyapunov_estimate_windowed(x, n, DEFAULT_WINDOW)
}

pub fn lyapunov_estimate_windowed<S: Scalar>(x: &S, n: usize, window: usize) -> Result<LyapunovEstimate> {
    if x.as_rational().is_some() {
        return Err(Error::RationalInput);
    }
    let cf = cf_expand(x, n)?;
    if cf.status == CfStatus::Finite {
        return Err(Error::RationalInput);
    }
    lyapunov_from_terms(&cf.terms, n, window)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat, NumberField};

    #[test]
    fn golden_and_silver() {
        let k = NumberField::from_i64(&[-1, 1, 1], int(0), int(1)).unwrap();
        let g = k.generator();
        let e = lyapunov_estimate(&g, 40).unwrap();
        assert!(e.value.starts_with("0.9"), "{}", e.value);
        assert_eq!(e.q_n, BigInt::from(165580141u64));
        let k = NumberField::from_i64(&[-1, 2, 1], int(0), int(1)).unwrap();
        let e = lyapunov_estimate(&k.generator(), 40).unwrap();
        assert!(e.value.starts_with("1.7"), "{}", e.value);
        assert_eq!(lyapunov_estimate(&rat(2, 5), 2).unwrap_err(), Error::RationalInput);
    }

    #[test]
    fn digits_are_stable() {
        let e = lyapunov_from_terms(&[1; 50], 50, 10).unwrap();
        assert_eq!(e.value.replace('.', "").trim_start_matches('0').len(), SIGNIFICANT_DIGITS);
        assert!(e.enclosure.lo <= e.enclosure.hi);
    }
}

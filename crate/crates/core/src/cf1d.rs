//! The one-dimensional Farey and Gauss maps, continued fractions and convergents.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{int, NFElement, QPoly, Rational, Scalar};
use crate::lattice::{scan_hull, segment_points};
use crate::projective::{IntMat, SimplexMat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FareyBranch {
    A,
    B,
}

fn check_unit<S: Scalar>(x: &S) -> Result<()> {
    let lo = x.signum()?;
    let hi = x.cmp_to(&x.lift(&int(1)))?;
    if lo == Ordering::Less || hi == Ordering::Greater {
        return Err(Error::OutOfDomain(format!("{x} is not in [0, 1]")));
    }
    Ok(())
}

/// One step of the Farey map; the midpoint goes to branch A.
pub fn farey_step<S: Scalar>(x: &S) -> Result<(S, FareyBranch)> {
    check_unit(x)?;
    let one = x.lift(&int(1));
    let comp = one.minus(x);
    if x.cmp_to(&x.lift(&Rational::new(1.into(), 2.into())))? != Ordering::Greater {
        Ok((x.divide(&comp)?, FareyBranch::A))
    } else {
        Ok((comp.divide(x)?, FareyBranch::B))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussStep<S> {
    pub value: S,
    /// Branch index `n` with `1/(n+1) < x ≤ 1/n`; `None` at `x = 0`.
    pub index: Option<u64>,
}

pub fn gauss_step<S: Scalar>(x: &S) -> Result<GaussStep<S>> {
    check_unit(x)?;
    if x.is_zero() {
        return Ok(GaussStep { value: x.clone(), index: None });
    }
    let y = x.recip()?;
    let n = y.floor()?;
    let value = y.minus(&y.lift_int(&n));
    Ok(GaussStep { value, index: Some(n.to_u64().ok_or(Error::Overflow)?) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CfStatus {
    Finite,
    Truncated,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CFExpansion {
    pub terms: Vec<u64>,
    pub status: CfStatus,
}

impl CFExpansion {
    pub fn finite(terms: Vec<u64>) -> Self {
        CFExpansion { terms, status: CfStatus::Finite }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

pub fn cf_expand<S: Scalar>(x: &S, max_terms: usize) -> Result<CFExpansion> {
    let mut terms = Vec::new();
    let mut v = x.clone();
    while terms.len() < max_terms {
        let step = gauss_step(&v)?;
        match step.index {
            None => break,
            Some(n) => terms.push(n),
        }
        v = step.value;
    }
    let status = if v.is_zero() { CfStatus::Finite } else { CfStatus::Truncated };
    Ok(CFExpansion { terms, status })
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConvergentPair {
    pub p: BigInt,
    pub q: BigInt,
}

/// Convergents `p_k/q_k` for `k = 0..=terms.len()`, starting at `0/1`.
pub fn convergents(terms: &[u64]) -> Vec<ConvergentPair> {
    let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
    let (mut p1, mut q1) = (BigInt::zero(), BigInt::one());
    let mut out = vec![ConvergentPair { p: p1.clone(), q: q1.clone() }];
    for &a in terms {
        let a = BigInt::from(a);
        let p2 = &a * &p1 + &p0;
        let q2 = &a * &q1 + &q0;
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        out.push(ConvergentPair { p: p1.clone(), q: q1.clone() });
    }
    out
}

/// The 1-D return matrix `𝐀_k = [[-k, 1], [1, 0]]`.
pub fn gauss_matrix(k: u64) -> IntMat {
    IntMat::from_rows(vec![vec![-BigInt::from(k), BigInt::one()], vec![BigInt::one(), BigInt::zero()]])
        .expect("2x2")
}

/// `𝐀_k⁻¹ = [[0, 1], [1, k]]`.
pub fn gauss_matrix_inverse(k: u64) -> IntMat {
    IntMat::from_rows(vec![vec![BigInt::zero(), BigInt::one()], vec![BigInt::one(), BigInt::from(k)]])
        .expect("2x2")
}

pub fn base_interval() -> SimplexMat {
    SimplexMat::new(IntMat::from_i64(&[&[0, 1], &[1, 1]])).expect("nonsingular")
}

/// `I_n = 𝐀_{a_1}⁻¹ ⋯ 𝐀_{a_n}⁻¹ = [[p_{n-1}, p_n], [q_{n-1}, q_n]]`.
pub fn convergent_matrices(cf: &CFExpansion, n: usize) -> Result<IntMat> {
    if n > cf.len() {
        return Err(Error::IndexOutOfRange { index: n, len: cf.len() });
    }
    Ok(cf.terms[..n].iter().fold(IntMat::identity(2), |acc, &a| acc.mul(&gauss_matrix_inverse(a))))
}

/// `I_n · V`: columns are the `n`-th convergent and the mediant.
pub fn approx_interval(cf: &CFExpansion, n: usize) -> Result<SimplexMat> {
    if n == 0 {
        return Err(Error::IndexOutOfRange { index: 0, len: cf.len() });
    }
    SimplexMat::new(convergent_matrices(cf, n)?.mul(base_interval().matrix()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Periodicity {
    pub preperiod: Vec<u64>,
    pub period: Vec<u64>,
    /// Distinct states visited before the revisit.
    pub states: usize,
    /// Sanity cap derived from the coefficient bound.
    pub cap: usize,
}

/// Integer coefficients `[c, b, a]` of the primitive quadratic satisfied by `x`.
pub fn quadratic_of(x: &NFElement) -> Result<Vec<BigInt>> {
    let k = x.field();
    if k.degree() != 2 {
        return Err(Error::NotQuadratic);
    }
    if x.as_rational().is_some() {
        return Err(Error::RationalInput);
    }
    let (c0, c1) = (&x.coeffs()[0], &x.coeffs()[1]);
    let m: Vec<Rational> = k.minpoly().iter().cloned().map(Rational::from_integer).collect();
    // m2 (X - c0)^2 + m1 c1 (X - c0) + m0 c1^2
    let shifted = QPoly::new(vec![-c0.clone(), Rational::one()]);
    let poly = shifted
        .mul(&shifted)
        .scale(&m[2])
        .add(&shifted.scale(&(&m[1] * c1)))
        .add(&QPoly::constant(&m[0] * c1 * c1));
    Ok(poly.primitive_integer())
}

/// Cap on distinct Gauss states: ten times the number of admissible
/// coefficient triples under `|c̃| ≤ |a| + |2ax + b|`.
pub fn quad_state_cap(x: &NFElement) -> Result<usize> {
    let q = quadratic_of(x)?;
    let (b, a) = (&q[1], &q[2]);
    let iv = x.enclose(&Rational::new(1.into(), 1024.into()))?;
    let two_a = Rational::from_integer(a * 2);
    let lin_hi = (&two_a * &iv.lo + Rational::from_integer(b.clone()))
        .abs()
        .max((&two_a * &iv.hi + Rational::from_integer(b.clone())).abs());
    let bound: BigInt = (Rational::from_integer(a.abs()) + lin_hi).ceil().to_integer();
    let side: BigInt = bound * 2 + 1;
    let states: BigInt = &side * &side * 10u32;
    states.to_usize().ok_or(Error::Overflow)
}

// hashing reads only the coefficients, never the refined root interval
#[allow(clippy::mutable_key_type)]
pub fn quad_periodicity(x: &NFElement) -> Result<Periodicity> {
    let cap = quad_state_cap(x)?;
    if x.signum()? != Ordering::Greater || x.cmp_to(&x.lift(&int(1)))? != Ordering::Less {
        return Err(Error::OutOfDomain(format!("{x} is not in (0, 1)")));
    }
    let mut seen: HashMap<NFElement, usize> = HashMap::new();
    let mut terms = Vec::new();
    let mut v = x.clone();
    loop {
        if let Some(&i) = seen.get(&v) {
            return Ok(Periodicity {
                preperiod: terms[..i].to_vec(),
                period: terms[i..].to_vec(),
                states: seen.len(),
                cap,
            });
        }
        if seen.len() >= cap {
            return Err(Error::StateCapExceeded(cap));
        }
        seen.insert(v.clone(), terms.len());
        let step = gauss_step(&v)?;
        terms.push(step.index.ok_or(Error::RationalInput)?);
        v = step.value;
    }
}

/// Confirms the triangle `conv{0, c_1, c_2}` holds no lattice points besides
/// its vertices, and that its area and boundary count satisfy Pick's formula.
pub fn lattice_triangle_check(s: &SimplexMat, scan_bound: i64) -> Result<bool> {
    let m = s.matrix();
    if m.size() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: m.size() });
    }
    let scan = scan_hull(m, scan_bound)?;
    let cols = m.columns();
    let zero = vec![BigInt::zero(); 2];
    // boundary points: each edge counted with both ends, corners counted twice
    let boundary = segment_points(&zero, &cols[0]) + segment_points(&zero, &cols[1])
        + segment_points(&cols[0], &cols[1])
        - 3;
    let twice_area = m.det().abs();
    let interior = scan.non_vertex().len();
    // Pick: 2A = 2I + B - 2
    let pick = BigInt::from(2 * interior) + &boundary - 2;
    Ok(scan.only_vertices() && boundary == BigInt::from(3) && twice_area == pick)
}

/// Checks `1/(2q²ₙ₊₁) < 1/(qₙ(qₙ+qₙ₊₁)) < |x − pₙ/qₙ| < 1/(qₙqₙ₊₁) < 1/q²ₙ` exactly.
pub fn rate_bounds_check<S: Scalar>(x: &S, n: usize) -> Result<bool> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    if x.as_rational().is_some() {
        return Err(Error::RationalInput);
    }
    let cf = cf_expand(x, n + 1)?;
    if cf.len() < n + 1 {
        return Err(Error::InsufficientTerms { needed: n + 1, have: cf.len() });
    }
    let conv = convergents(&cf.terms);
    let (p, q, q1) = (&conv[n].p, &conv[n].q, &conv[n + 1].q);
    let r = |num: BigInt, den: BigInt| Rational::new(num, den);
    let err = x.minus(&x.lift(&r(p.clone(), q.clone())));
    let err = if err.signum()? == Ordering::Less { err.negated() } else { err };
    let b0 = r(BigInt::one(), q1 * q1 * 2);
    let b1 = r(BigInt::one(), q * (q + q1));
    let b3 = r(BigInt::one(), q * q1);
    let b4 = r(BigInt::one(), q * q);
    Ok(b0 < b1
        && err.cmp_to(&x.lift(&b1))? == Ordering::Greater
        && err.cmp_to(&x.lift(&b3))? == Ordering::Less
        && b3 < b4)
}

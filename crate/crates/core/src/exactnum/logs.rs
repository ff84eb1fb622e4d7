//! Rigorous enclosures of natural logarithms of positive rationals.
//!
//! Fixed-point arithmetic on scale `2^P` with every rounding directed, so the
//! returned interval always contains the true value.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::interval::Interval;
use super::rational::{render_scaled, Rational};

const GUARD_BITS: u64 = 24;

fn shl(x: &BigInt, k: u64) -> BigInt {
    x << k
}

fn ceil_div(n: &BigInt, d: &BigInt) -> BigInt {
    -((-n).div_floor(d))
}

/// Lower and upper fixed-point bounds of `atanh(t)`, `t = num/den ∈ [0, 1/3]`.
fn atanh_fixed(num: &BigInt, den: &BigInt, p: u64) -> (BigInt, BigInt) {
    let one = shl(&BigInt::one(), p);
    let t_lo = (num << p).div_floor(den);
    let t_hi = ceil_div(&(num << p), den);
    if t_hi.is_zero() {
        return (BigInt::zero(), BigInt::zero());
    }
    let sq_lo = (&t_lo * &t_lo) >> p;
    let sq_hi = ceil_div(&(&t_hi * &t_hi), &one);
    let (mut pow_lo, mut pow_hi) = (t_lo.clone(), t_hi.clone());
    let (mut sum_lo, mut sum_hi) = (BigInt::zero(), BigInt::zero());
    let mut k: u64 = 0;
    loop {
        let m = BigInt::from(2 * k + 1);
        sum_lo += pow_lo.div_floor(&m);
        sum_hi += ceil_div(&pow_hi, &m);
        pow_lo = (&pow_lo * &sq_lo) >> p;
        pow_hi = ceil_div(&(&pow_hi * &sq_hi), &one);
        k += 1;
        if pow_hi.is_zero() || pow_hi.bits() + 2 < GUARD_BITS {
            break;
        }
    }
    // tail ≤ t^(2k+1) / ((2k+1)(1 - t²)) ≤ (9/8) t^(2k+1) / (2k+1)
    let m = BigInt::from(8 * (2 * k + 1));
    sum_hi += ceil_div(&(&pow_hi * 9), &m) + 1;
    (sum_lo, sum_hi)
}

/// Enclosure of `ln(x)` of absolute width about `2^-bits`.
///
/// # Panics
/// If `x ≤ 0`.
pub fn ln_enclosure(x: &Rational, bits: u64) -> Interval {
    assert!(x.is_positive(), "logarithm of a non-positive number");
    let p = bits + GUARD_BITS;
    let (n, d) = (x.numer().clone(), x.denom().clone());
    // x = y·2^e with y ∈ [1, 2)
    let mut e = n.bits() as i64 - d.bits() as i64;
    let (mut yn, mut yd) = if e >= 0 { (n.clone(), &d << e as u64) } else { (&n << (-e) as u64, d.clone()) };
    if yn < yd {
        e -= 1;
        if e >= 0 {
            yd = &d << e as u64;
            yn = n.clone();
        } else {
            yn = &n << (-e) as u64;
            yd = d.clone();
        }
    }
    debug_assert!(yn >= yd && yn < &yd * 2);
    let (a_lo, a_hi) = atanh_fixed(&(&yn - &yd), &(&yn + &yd), p);
    let (l2_lo, l2_hi) = atanh_fixed(&BigInt::one(), &BigInt::from(3), p);
    let (l2_lo, l2_hi) = (l2_lo * 2, l2_hi * 2);
    let eb = BigInt::from(e);
    let (c_lo, c_hi) = if e >= 0 { (&eb * &l2_lo, &eb * &l2_hi) } else { (&eb * &l2_hi, &eb * &l2_lo) };
    let scale = shl(&BigInt::one(), p);
    Interval::new(
        Rational::new(c_lo + a_lo * 2, scale.clone()),
        Rational::new(c_hi + a_hi * 2, scale),
    )
}

/// Floor of `x·10^digits` for every point of `iv`, if all agree.
pub fn common_floor(iv: &Interval, digits: usize) -> Option<BigInt> {
    let s = Rational::from_integer(BigInt::from(10).pow(digits as u32));
    let lo = (&iv.lo * &s).floor().to_integer();
    let hi = (&iv.hi * &s).floor().to_integer();
    (lo == hi).then_some(lo)
}

/// Renders an interval-verified value: `digits` fractional digits, rounded
/// toward −∞, or `None` if the interval straddles a digit boundary.
pub fn render_verified(iv: &Interval, digits: usize) -> Option<String> {
    common_floor(iv, digits).map(|n| render_scaled(&n, digits))
}

/// Renders with `sig` significant digits (toward −∞) when the interval is
/// narrow enough to decide them all.
pub fn render_significant(iv: &Interval, sig: usize) -> Option<String> {
    let mag = iv.lo.abs().max(iv.hi.abs());
    if mag.is_zero() {
        return Some("0".into());
    }
    let mut int_digits = 0usize;
    let mut probe = Rational::one();
    while probe <= mag {
        probe *= Rational::from_integer(10.into());
        int_digits += 1;
    }
    let frac = if int_digits >= sig {
        0
    } else if int_digits > 0 {
        sig - int_digits
    } else {
        let mut lead = 0usize;
        let mut v = mag * Rational::from_integer(10.into());
        while v < Rational::one() {
            v *= Rational::from_integer(10.into());
            lead += 1;
        }
        sig + lead
    };
    render_verified(iv, frac)
}

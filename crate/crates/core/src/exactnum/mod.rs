//! Exact scalars: rationals and real number fields Q(α).

pub mod expr;
pub mod field;
pub mod interval;
pub mod logs;
pub mod poly;
pub mod rational;
pub mod scalar;

pub use field::{nf_arith, NFElement, NfOp, NumberField};
pub use interval::Interval;
pub use poly::QPoly;
pub use rational::{fmt_rational, int, parse_rational, rat, Rational, Rounding};
pub use scalar::Scalar;

/// Sign of `a` as −1, 0 or +1.
pub fn nf_sign(a: &NFElement) -> crate::Result<i8> {
    Ok(a.sign()? as i8)
}

/// Compares two elements of one field.
pub fn nf_compare(a: &NFElement, b: &NFElement) -> crate::Result<i8> {
    Ok(a.compare(b)? as i8)
}

/// Inverse of a nonzero element.
pub fn nf_inv(a: &NFElement) -> crate::Result<NFElement> {
    a.inv()
}

use std::cmp::Ordering;
use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::NFElement;
use super::interval::Interval;
use super::rational::{common_denominator, content, fmt_rational, rat, Rational, Rounding};
use crate::error::{Error, Result};

/// Exact ordered-field scalar: rationals, or elements of one real number field.
///
/// Binary operations assume both operands live in the same field; mixing
/// fields is a logic error and panics. Use the checked methods on
/// [`NFElement`] when the operands come from untrusted input.
pub trait Scalar: Clone + PartialEq + Eq + Hash + Debug + Display + Send + Sync + 'static {
    fn is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    fn recip(&self) -> Result<Self>;
    fn signum(&self) -> Result<Ordering>;
    /// A rational embedded alongside `self` (same field).
    fn lift(&self, r: &Rational) -> Self;
    fn as_rational(&self) -> Option<Rational>;
    /// Enclosure of the real value of width at most `max_width`.
    fn enclose(&self, max_width: &Rational) -> Result<Interval>;
    /// Canonical representative of the projective class of `coords`.
    fn canonical_projective(coords: &[Self]) -> Result<Vec<Self>>;
    /// JSON-friendly exact form.
    fn exact_string(&self) -> String {
        self.to_string()
    }

    fn lift_int(&self, n: &BigInt) -> Self {
        self.lift(&Rational::from_integer(n.clone()))
    }

    fn scale_int(&self, n: &BigInt) -> Self {
        self.times(&self.lift_int(n))
    }

    fn divide(&self, o: &Self) -> Result<Self> {
        Ok(self.times(&o.recip()?))
    }

    fn cmp_to(&self, o: &Self) -> Result<Ordering> {
        self.minus(o).signum()
    }

    fn floor(&self) -> Result<BigInt> {
        if let Some(r) = self.as_rational() {
            return Ok(r.floor().to_integer());
        }
        let iv = self.enclose(&rat(1, 4))?;
        let mut n = iv.lo.floor().to_integer();
        loop {
            if self.cmp_to(&self.lift_int(&n))? == Ordering::Less {
                n -= 1;
            } else if self.cmp_to(&self.lift_int(&(&n + 1)))? != Ordering::Less {
                n += 1;
            } else {
                return Ok(n);
            }
        }
    }

    /// Decimal rendering with `digits` fractional digits, rounded as asked.
    fn render(&self, digits: usize, mode: Rounding) -> Result<String> {
        let scale = self.lift_int(&BigInt::from(10).pow(digits as u32));
        let y = self.times(&scale);
        let n = match mode {
            Rounding::Floor => y.floor()?,
            Rounding::Ceil => -(y.negated().floor()?),
            Rounding::Nearest => y.plus(&self.lift(&rat(1, 2))).floor()?,
        };
        Ok(super::rational::render_scaled(&n, digits))
    }
}

impl Scalar for Rational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn recip(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            Err(Error::DivisionByZero)
        } else {
            Ok(num_traits::Inv::inv(self))
        }
    }
    fn signum(&self) -> Result<Ordering> {
        Ok(self.cmp(&Rational::zero()))
    }
    fn lift(&self, r: &Rational) -> Self {
        r.clone()
    }
    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn enclose(&self, _: &Rational) -> Result<Interval> {
        Ok(Interval::point(self.clone()))
    }
    fn exact_string(&self) -> String {
        fmt_rational(self)
    }

    /// Clears denominators, removes the content, makes the last nonzero entry positive.
    fn canonical_projective(coords: &[Self]) -> Result<Vec<Self>> {
        let Some(last) = coords.iter().rposition(|c| !Zero::is_zero(c)) else {
            return Err(Error::ZeroVector);
        };
        let d = common_denominator(coords);
        let ints: Vec<BigInt> = coords
            .iter()
            .map(|c| (c * Rational::from_integer(d.clone())).to_integer())
            .collect();
        let mut g = content(&ints);
        if ints[last].is_negative() {
            g = -g;
        }
        Ok(ints.iter().map(|x| Rational::from_integer(x.div_floor(&g))).collect())
    }
}

impl Scalar for NFElement {
    fn is_zero(&self) -> bool {
        NFElement::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self.checked_add(o).expect("mixed number fields")
    }
    fn minus(&self, o: &Self) -> Self {
        self.checked_sub(o).expect("mixed number fields")
    }
    fn times(&self, o: &Self) -> Self {
        self.checked_mul(o).expect("mixed number fields")
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn recip(&self) -> Result<Self> {
        self.inv()
    }
    fn signum(&self) -> Result<Ordering> {
        self.sign()
    }
    fn lift(&self, r: &Rational) -> Self {
        self.field().constant(r.clone())
    }
    fn as_rational(&self) -> Option<Rational> {
        NFElement::as_rational(self)
    }
    fn enclose(&self, max_width: &Rational) -> Result<Interval> {
        NFElement::enclose(self, max_width)
    }
    fn scale_int(&self, n: &BigInt) -> Self {
        self.scale(&Rational::from_integer(n.clone()))
    }
    fn divide(&self, o: &Self) -> Result<Self> {
        if o.as_rational().is_some_and(|r| r.is_one()) {
            return Ok(self.clone());
        }
        Ok(self.times(&o.recip()?))
    }

    /// Affine normalization: divide by the last nonzero coordinate.
    fn canonical_projective(coords: &[Self]) -> Result<Vec<Self>> {
        let Some(last) = coords.iter().rposition(|c| !NFElement::is_zero(c)) else {
            return Err(Error::ZeroVector);
        };
        if coords.iter().any(|c| !c.same_field(&coords[0])) {
            return Err(Error::FieldMismatch);
        }
        let inv = coords[last].inv()?;
        Ok(coords.iter().map(|c| c.times(&inv)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::field::NumberField;
    use crate::exactnum::rational::int;

    #[test]
    fn rational_canonical_form() {
        let c = Rational::canonical_projective(&[rat(4, 3), rat(2, 3), int(2)]).unwrap();
        assert_eq!(c, vec![int(2), int(1), int(3)]);
        let c = Rational::canonical_projective(&[int(-2), int(-1), int(-3)]).unwrap();
        assert_eq!(c, vec![int(2), int(1), int(3)]);
        let c = Rational::canonical_projective(&[int(-2), int(0), int(0)]).unwrap();
        assert_eq!(c, vec![int(1), int(0), int(0)]);
        assert_eq!(Rational::canonical_projective(&[int(0), int(0)]), Err(Error::ZeroVector));
    }

    #[test]
    fn nf_canonical_form() {
        let k = NumberField::from_i64(&[-1, 3, 3, 1], int(0), int(1)).unwrap();
        let a = k.generator();
        let c = NFElement::canonical_projective(&[a.scale(&int(2)), a.clone(), k.constant(int(2))]).unwrap();
        assert_eq!(c, vec![a.clone(), a.scale(&rat(1, 2)), k.constant(int(1))]);
    }

    #[test]
    fn floors_and_rendering() {
        let k = NumberField::from_i64(&[-1, 3, 3, 1], int(0), int(1)).unwrap();
        let a = k.generator();
        assert_eq!(a.floor().unwrap(), BigInt::zero());
        assert_eq!(a.recip().unwrap().floor().unwrap(), BigInt::from(3));
        assert_eq!(a.render(6, Rounding::Floor).unwrap(), "0.259921");
        assert_eq!(a.negated().render(3, Rounding::Floor).unwrap(), "-0.260");
        assert_eq!(a.render(4, Rounding::Nearest).unwrap(), "0.2599");
        assert_eq!(Scalar::floor(&rat(-7, 2)).unwrap(), BigInt::from(-4));
    }
}

//! Real number fields Q(α) with α pinned down by an isolating interval.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::interval::Interval;
use super::poly::QPoly;
use super::rational::{fmt_rational, Rational};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_DEGREE: usize = 8;

/// Bisections allowed per sign query before giving up.
pub const SIGN_BISECTION_BUDGET: usize = 256;

/// Bisections allowed per enclosure request.
const ENCLOSURE_BISECTION_CAP: usize = 1 << 16;

pub struct NumberField {
    minpoly: Vec<BigInt>,
    modulus: QPoly,
    isolating: Interval,
    refined: RwLock<Interval>,
    certificate: Option<u64>,
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NumberField")
            .field("minpoly", &self.minpoly)
            .field("isolating", &self.isolating)
            .finish()
    }
}

impl PartialEq for NumberField {
    fn eq(&self, o: &Self) -> bool {
        self.minpoly == o.minpoly && self.isolating == o.isolating
    }
}

impl Eq for NumberField {}

impl NumberField {
    pub fn new(minpoly: Vec<BigInt>, lo: Rational, hi: Rational) -> Result<Arc<Self>> {
        Self::with_max_degree(minpoly, lo, hi, DEFAULT_MAX_DEGREE)
    }

    pub fn from_i64(minpoly: &[i64], lo: Rational, hi: Rational) -> Result<Arc<Self>> {
        Self::new(minpoly.iter().map(|&c| BigInt::from(c)).collect(), lo, hi)
    }

    pub fn with_max_degree(
        mut minpoly: Vec<BigInt>,
        lo: Rational,
        hi: Rational,
        max_degree: usize,
    ) -> Result<Arc<Self>> {
        while minpoly.last().is_some_and(Zero::is_zero) {
            minpoly.pop();
        }
        let degree = minpoly.len().saturating_sub(1);
        if degree == 0 {
            return Err(Error::InvalidField("minimal polynomial must have degree at least 1".into()));
        }
        if degree > max_degree {
            return Err(Error::DegreeTooLarge { degree, max: max_degree });
        }
        if lo >= hi {
            return Err(Error::InvalidField("isolating interval must satisfy lo < hi".into()));
        }
        let poly = QPoly::from_ints(&minpoly);
        if !poly.gcd(&poly.derivative()).degree().is_some_and(|d| d == 0) {
            return Err(Error::InvalidField("minimal polynomial is not squarefree".into()));
        }
        let (slo, shi) = (poly.sign_at(&lo), poly.sign_at(&hi));
        if slo == Ordering::Equal || shi == Ordering::Equal {
            return Err(Error::InvalidField("an interval endpoint is a root".into()));
        }
        if slo == shi {
            return Err(Error::InvalidField("no sign change over the isolating interval".into()));
        }
        let roots = poly.count_roots(&lo, &hi);
        if roots != 1 {
            return Err(Error::InvalidField(format!("isolating interval holds {roots} roots")));
        }
        let certificate = irreducibility_certificate(&minpoly);
        let isolating = Interval::new(lo, hi);
        Ok(Arc::new(NumberField {
            modulus: poly.monic(),
            minpoly,
            refined: RwLock::new(isolating.clone()),
            isolating,
            certificate,
        }))
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn minpoly(&self) -> &[BigInt] {
        &self.minpoly
    }

    pub fn isolating_interval(&self) -> &Interval {
        &self.isolating
    }

    /// A prime modulo which the minimal polynomial is irreducible, if one was found.
    pub fn irreducibility_certificate(&self) -> Option<u64> {
        self.certificate
    }

    /// The current (cached) enclosure of the root.
    pub fn root_enclosure(&self) -> Interval {
        self.refined.read().expect("poisoned root cache").clone()
    }

    pub fn generator(self: &Arc<Self>) -> NFElement {
        NFElement::from_poly(self, QPoly::monomial(Rational::one(), 1))
    }

    pub fn constant(self: &Arc<Self>, c: Rational) -> NFElement {
        NFElement::from_poly(self, QPoly::constant(c))
    }

    pub fn element(self: &Arc<Self>, coeffs: Vec<Rational>) -> NFElement {
        NFElement::from_poly(self, QPoly::new(coeffs))
    }

    /// Halves the cached enclosure, starting from `seen`. Returns false if the
    /// root is already known exactly.
    fn bisect(&self, seen: &Interval) -> bool {
        let mut guard = self.refined.write().expect("poisoned root cache");
        if guard.width() < seen.width() {
            return true;
        }
        if guard.lo == guard.hi {
            return false;
        }
        let poly = QPoly::from_ints(&self.minpoly);
        let mid = guard.midpoint();
        let sm = poly.sign_at(&mid);
        *guard = match sm {
            Ordering::Equal => Interval::point(mid),
            _ if sm == poly.sign_at(&guard.lo) => Interval::new(mid, guard.hi.clone()),
            _ => Interval::new(guard.lo.clone(), mid),
        };
        true
    }

    fn sign_of(&self, p: &QPoly) -> Result<Ordering> {
        if p.is_zero() {
            return Ok(Ordering::Equal);
        }
        if p.degree() == Some(0) {
            return Ok(p.coeffs()[0].cmp(&Rational::zero()));
        }
        for _ in 0..=SIGN_BISECTION_BUDGET {
            let iv = self.root_enclosure();
            match p.eval_interval(&iv).sign() {
                Some(Ordering::Equal) => {
                    return Err(Error::ReducibleSuspected(
                        "a nonzero residue vanishes at the root".into(),
                    ))
                }
                Some(s) => return Ok(s),
                None => {
                    if !self.bisect(&iv) {
                        return Err(Error::ReducibleSuspected(
                            "a nonzero residue vanishes at the root".into(),
                        ));
                    }
                }
            }
        }
        Err(Error::ReducibleSuspected(format!(
            "sign undecided after {SIGN_BISECTION_BUDGET} bisections"
        )))
    }

    fn enclose(&self, p: &QPoly, max_width: &Rational) -> Result<Interval> {
        for _ in 0..ENCLOSURE_BISECTION_CAP {
            let iv = self.root_enclosure();
            let val = p.eval_interval(&iv);
            if &val.width() <= max_width || !self.bisect(&iv) {
                return Ok(val);
            }
        }
        Err(Error::ReducibleSuspected("enclosure failed to shrink".into()))
    }
}

/// Element of Q(α), stored as its reduced residue.
#[derive(Clone)]
pub struct NFElement {
    field: Arc<NumberField>,
    coeffs: Vec<Rational>,
}

impl NFElement {
    fn from_poly(field: &Arc<NumberField>, p: QPoly) -> Self {
        let d = field.degree();
        let mut coeffs = p.rem(&field.modulus).into_coeffs();
        coeffs.resize(d, Rational::zero());
        NFElement { field: Arc::clone(field), coeffs }
    }

    fn poly(&self) -> QPoly {
        QPoly::new(self.coeffs.clone())
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    /// Residue coefficients, ascending, always of length `degree`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn same_field(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.field, &o.field) || *self.field == *o.field
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.same_field(o) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect();
        Ok(NFElement { field: Arc::clone(&self.field), coeffs })
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect();
        Ok(NFElement { field: Arc::clone(&self.field), coeffs })
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(Self::from_poly(&self.field, self.poly().mul(&o.poly())))
    }

    pub fn neg(&self) -> Self {
        NFElement { field: Arc::clone(&self.field), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        NFElement { field: Arc::clone(&self.field), coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (g, s, _) = self.poly().ext_gcd(&self.field.modulus);
        if g.degree() != Some(0) {
            return Err(Error::ReducibleSuspected(format!(
                "element shares the factor {g} with the minimal polynomial"
            )));
        }
        Ok(Self::from_poly(&self.field, s))
    }

    pub fn sign(&self) -> Result<Ordering> {
        self.field.sign_of(&self.poly())
    }

    pub fn compare(&self, o: &Self) -> Result<Ordering> {
        self.checked_sub(o)?.sign()
    }

    /// Enclosure of the real value with width at most `max_width`.
    pub fn enclose(&self, max_width: &Rational) -> Result<Interval> {
        match self.as_rational() {
            Some(r) => Ok(Interval::point(r)),
            None => self.field.enclose(&self.poly(), max_width),
        }
    }

    /// The value as a rational, when the residue is constant.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Floating-point approximation, for diagnostics only.
    pub fn approx_f64(&self) -> f64 {
        let iv = self.enclose(&Rational::new(BigInt::one(), BigInt::from(1u64 << 60))).expect("enclosure");
        iv.midpoint().to_f64().unwrap_or(f64::NAN)
    }

    /// Coefficients as `"num/den"` strings, ascending degree.
    pub fn to_coeff_strings(&self) -> Vec<String> {
        self.coeffs
            .iter()
            .map(|c| format!("{}/{}", c.numer(), c.denom()))
            .collect()
    }
}

impl PartialEq for NFElement {
    fn eq(&self, o: &Self) -> bool {
        self.same_field(o) && self.coeffs == o.coeffs
    }
}

impl Eq for NFElement {}

impl Hash for NFElement {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.coeffs.hash(h);
    }
}

impl fmt::Debug for NFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NFElement({self})")
    }
}

impl fmt::Display for NFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_poly(&self.coeffs, "a"))
    }
}

/// Renders a polynomial in descending degree, e.g. `a^2-4*a+1`.
pub fn format_poly(coeffs: &[Rational], var: &str) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        if neg {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let a = c.abs();
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        if k == 0 {
            out.push_str(&fmt_rational(&a));
        } else if a.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{}*{mono}", fmt_rational(&a)));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Checks `a ⊕ b` over one field: `op` is one of add, sub, mul.
pub fn nf_arith(op: NfOp, a: &NFElement, b: &NFElement) -> Result<NFElement> {
    match op {
        NfOp::Add => a.checked_add(b),
        NfOp::Sub => a.checked_sub(b),
        NfOp::Mul => a.checked_mul(b),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NfOp {
    Add,
    Sub,
    Mul,
}

const SMALL_PRIMES: [u64; 24] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

/// Searches for a small prime modulo which `f` stays irreducible. Finding one
/// proves irreducibility over Q; failing proves nothing.
fn irreducibility_certificate(f: &[BigInt]) -> Option<u64> {
    let d = f.len() - 1;
    if d == 1 {
        return Some(1);
    }
    SMALL_PRIMES.iter().copied().find(|&p| {
        let red: Vec<u64> = f
            .iter()
            .map(|c| {
                let m = c % BigInt::from(p);
                let m = if m.is_negative() { m + BigInt::from(p) } else { m };
                m.to_u64().unwrap()
            })
            .collect();
        red[d] != 0 && fp::irreducible(&red, p)
    })
}

mod fp {
    //! Polynomial arithmetic over F_p, ascending coefficients.

    fn trim(mut v: Vec<u64>) -> Vec<u64> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    fn inv(a: u64, p: u64) -> u64 {
        pow(a, p - 2, p)
    }

    fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
        let mut r = 1;
        a %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * a % p;
            }
            a = a * a % p;
            e >>= 1;
        }
        r
    }

    fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = trim(a.to_vec());
        let dm = m.len() - 1;
        let li = inv(m[dm], p);
        while r.len() > dm {
            let k = r.len() - 1 - dm;
            let c = r[r.len() - 1] * li % p;
            for (j, mc) in m.iter().enumerate() {
                r[k + j] = (r[k + j] + p - c * mc % p) % p;
            }
            r = trim(r);
        }
        r
    }

    fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        rem(&out, m, p)
    }

    fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
                .collect(),
        )
    }

    /// Distinct-degree test: `f` irreducible iff squarefree and coprime to
    /// `x^(p^i) - x` for all `i ≤ deg/2`.
    pub fn irreducible(f: &[u64], p: u64) -> bool {
        let d = f.len() - 1;
        let df: Vec<u64> = f.iter().enumerate().skip(1).map(|(i, c)| (i as u64 % p) * c % p).collect();
        if gcd(f, &df, p).len() != 1 {
            return false;
        }
        let x = vec![0, 1];
        let mut h = x.clone();
        for _ in 0..d / 2 {
            // h <- h^p mod f
            let mut base = h.clone();
            let mut acc = vec![1];
            let mut e = p;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mulmod(&acc, &base, f, p);
                }
                base = mulmod(&base, &base, f, p);
                e >>= 1;
            }
            h = acc;
            if gcd(f, &sub(&h, &x, p), p).len() != 1 {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{int, rat};

    fn cubic() -> Arc<NumberField> {
        NumberField::from_i64(&[-1, 3, 3, 1], int(0), int(1)).unwrap()
    }

    #[test]
    fn reduction_and_inverse() {
        let k = cubic();
        let a = k.generator();
        let a2 = a.checked_mul(&a).unwrap();
        assert_eq!(a2.coeffs(), &[int(0), int(0), int(1)]);
        let a3 = a.checked_mul(&a2).unwrap();
        assert_eq!(a3.coeffs(), &[int(1), int(-3), int(-3)]);
        assert!(a.checked_add(&a.neg()).unwrap().is_zero());
        assert_eq!(a.inv().unwrap().coeffs(), &[int(3), int(3), int(1)]);
        let one = k.constant(int(1));
        assert_eq!(one.inv().unwrap(), one);
        let r = a2.inv().unwrap();
        assert_eq!(r.checked_mul(&a2).unwrap(), one);
        assert_eq!(k.constant(int(0)).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn signs_and_comparisons() {
        let k = cubic();
        let a = k.generator();
        assert_eq!(a.sign().unwrap(), Ordering::Greater);
        assert_eq!(k.constant(int(0)).sign().unwrap(), Ordering::Equal);
        let m = k.element(vec![int(-1), int(3), int(3), int(1)]);
        assert!(m.is_zero());
        assert_eq!(a.compare(&k.constant(rat(1, 4))).unwrap(), Ordering::Greater);
        assert_eq!(a.compare(&k.constant(rat(1, 3))).unwrap(), Ordering::Less);
        assert_eq!(a.compare(&a).unwrap(), Ordering::Equal);
    }

    #[test]
    fn field_validation() {
        assert!(matches!(
            NumberField::from_i64(&[-2, 0, 1], int(-2), int(2)),
            Err(Error::InvalidField(_))
        ));
        assert!(matches!(
            NumberField::from_i64(&[1, -2, 1], int(0), int(2)),
            Err(Error::InvalidField(_))
        ));
        assert!(matches!(
            NumberField::from_i64(&[-1, 1], int(1), int(2)),
            Err(Error::InvalidField(_))
        ));
        let nine = [1, 0, 0, 0, 0, 0, 0, 0, 0, -2];
        assert!(matches!(
            NumberField::from_i64(&nine, int(0), int(2)),
            Err(Error::DegreeTooLarge { degree: 9, max: 8 })
        ));
        let k = cubic();
        let other = NumberField::from_i64(&[-1, 2, 1], int(0), int(1)).unwrap();
        assert_eq!(k.generator().checked_add(&other.generator()), Err(Error::FieldMismatch));
    }

    #[test]
    fn certificates() {
        assert!(cubic().irreducibility_certificate().is_some());
        // x^4 + 1 has no real root at all
        let k = NumberField::from_i64(&[1, 0, 0, 0, 1], int(-1), int(1));
        assert!(k.is_err());
        // (x^2 - 2)(x^2 - 3) is squarefree and reducible: no certificate
        let r = NumberField::from_i64(&[6, 0, -5, 0, 1], int(1), rat(3, 2)).unwrap();
        assert!(r.irreducibility_certificate().is_none());
    }

    #[test]
    fn reducible_minpoly_is_diagnosed() {
        // (x^2 - 2)(x^2 - 3), root sqrt2 in (1, 3/2); x^2 - 2 is a nonzero residue vanishing there.
        let k = NumberField::from_i64(&[6, 0, -5, 0, 1], int(1), rat(3, 2)).unwrap();
        let e = k.element(vec![int(-2), int(0), int(1)]);
        assert!(matches!(e.sign(), Err(Error::ReducibleSuspected(_))));
        assert!(matches!(e.inv(), Err(Error::ReducibleSuspected(_))));
    }

    #[test]
    fn display() {
        let k = cubic();
        let e = k.element(vec![int(1), int(-4), int(1)]);
        assert_eq!(e.to_string(), "a^2-4*a+1");
        assert_eq!(k.element(vec![rat(-1, 2), int(0), int(0)]).to_string(), "-1/2");
        assert_eq!(k.element(vec![int(0), rat(3, 2)]).to_string(), "3/2*a");
    }
}

//! Homogeneous coordinates, integer matrices and simplexes given by their vertex columns.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactnum::{Rational, Scalar};
use crate::error::{Error, Result};

/// Square matrix of big integers, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMat {
    size: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let size = rows.len();
        if size == 0 {
            return Err(Error::DimensionOutOfRange(0));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != size) {
            return Err(Error::DimensionMismatch { expected: size, got: bad.len() });
        }
        Ok(IntMat { size, data: rows.into_iter().flatten().collect() })
    }

    /// Convenience constructor; panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
            .expect("square matrix")
    }

    pub fn identity(size: usize) -> Self {
        let mut data = vec![BigInt::zero(); size * size];
        for i in 0..size {
            data[i * size + i] = BigInt::one();
        }
        IntMat { size, data }
    }

    pub fn zeros(size: usize) -> Self {
        IntMat { size, data: vec![BigInt::zero(); size * size] }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.size + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.size..(i + 1) * self.size]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.size).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.size).map(|j| self.column(j)).collect()
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.size).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn from_columns(cols: Vec<Vec<BigInt>>) -> Result<Self> {
        Ok(Self::from_rows(cols)?.transpose())
    }

    pub fn transpose(&self) -> Self {
        let n = self.size;
        IntMat { size: n, data: (0..n * n).map(|k| self.get(k % n, k / n).clone()).collect() }
    }

    /// Matrix product; panics if sizes differ.
    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.size, o.size, "matrix size mismatch");
        let n = self.size;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn apply_int(&self, v: &[BigInt]) -> Vec<BigInt> {
        (0..self.size)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Determinant by Bareiss elimination.
    pub fn det(&self) -> BigInt {
        let n = self.size;
        let mut m = self.rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if m[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return BigInt::zero();
                };
                m.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i][j] = (&m[k][k] * &m[i][j] - &m[i][k] * &m[k][j]) / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        sign * &m[n - 1][n - 1]
    }

    /// Exact inverse of a unimodular matrix.
    pub fn inverse(&self) -> Result<Self> {
        let det = self.det();
        if det.abs() != BigInt::one() {
            return Err(Error::NotUnimodular(det));
        }
        let n = self.size;
        let mut a: Vec<Vec<Rational>> =
            self.rows().into_iter().map(|r| r.into_iter().map(Rational::from_integer).collect()).collect();
        let mut inv: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        for k in 0..n {
            let p = (k..n).find(|&i| !Zero::is_zero(&a[i][k])).ok_or(Error::SingularMatrix)?;
            a.swap(k, p);
            inv.swap(k, p);
            let piv = a[k][k].clone();
            for j in 0..n {
                a[k][j] = &a[k][j] / &piv;
                inv[k][j] = &inv[k][j] / &piv;
            }
            for i in 0..n {
                if i != k && !Zero::is_zero(&a[i][k]) {
                    let f = a[i][k].clone();
                    for j in 0..n {
                        let (akj, ikj) = (a[k][j].clone(), inv[k][j].clone());
                        a[i][j] -= &f * akj;
                        inv[i][j] -= &f * ikj;
                    }
                }
            }
        }
        Self::from_rows(inv.into_iter().map(|r| r.into_iter().map(|x| x.to_integer()).collect()).collect())
    }

    /// `self^e`; negative exponents use the exact inverse.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::identity(self.size);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn neg(&self) -> Self {
        IntMat { size: self.size, data: self.data.iter().map(|x| -x).collect() }
    }

    /// Row-major integer strings, for JSON.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_default()
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        self.rows().iter().map(|r| r.iter().map(|x| x.to_i64()).collect()).collect()
    }
}

impl fmt::Display for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| format!("[{}]", r.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Simplex whose vertices are the columns of a nonsingular integer matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SimplexMat(IntMat);

impl SimplexMat {
    pub fn new(m: IntMat) -> Result<Self> {
        if m.det().is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(SimplexMat(m))
    }

    pub fn matrix(&self) -> &IntMat {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.size - 1
    }

    pub fn vertices(&self) -> Vec<Vec<BigInt>> {
        self.0.columns()
    }

    pub fn det(&self) -> BigInt {
        self.0.det()
    }
}

impl fmt::Display for SimplexMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Point of RPⁿ, always stored in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ProjPoint<S: Scalar> {
    coords: Vec<S>,
}

impl<S: Scalar> ProjPoint<S> {
    pub fn new(coords: Vec<S>) -> Result<Self> {
        Ok(ProjPoint { coords: canonicalize(&coords)? })
    }

    /// Projective dimension n (there are n + 1 coordinates).
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[S] {
        &self.coords
    }

    pub fn last(&self) -> &S {
        self.coords.last().expect("nonempty")
    }

    /// Affine coordinates `x_i / x_{n+1}`.
    pub fn affine(&self) -> Result<Vec<S>> {
        let w = self.last().recip()?;
        Ok(self.coords[..self.dim()].iter().map(|c| c.times(&w)).collect())
    }

    pub fn is_vertex_zero(&self) -> bool {
        self.coords[..self.dim()].iter().all(Scalar::is_zero)
    }
}

impl ProjPoint<Rational> {
    pub fn from_ints(v: &[i64]) -> Result<Self> {
        Self::new(v.iter().map(|&x| Rational::from_integer(x.into())).collect())
    }

    /// Canonical integer coordinates.
    pub fn integer_coords(&self) -> Vec<BigInt> {
        self.coords.iter().map(|c| c.to_integer()).collect()
    }
}

impl<S: Scalar> fmt::Display for ProjPoint<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(Scalar::exact_string).collect();
        write!(f, "({})", parts.join(" : "))
    }
}

pub fn canonicalize<S: Scalar>(coords: &[S]) -> Result<Vec<S>> {
    S::canonical_projective(coords)
}

pub fn apply_matrix<S: Scalar>(m: &IntMat, p: &ProjPoint<S>) -> Result<ProjPoint<S>> {
    if m.size() != p.coords.len() {
        return Err(Error::DimensionMismatch { expected: m.size(), got: p.coords.len() });
    }
    let zero = p.coords[0].lift(&Rational::zero());
    let out: Vec<S> = (0..m.size())
        .map(|i| {
            m.row(i).iter().zip(&p.coords).fold(zero.clone(), |acc, (a, x)| {
                if a.is_zero() || x.is_zero() {
                    acc
                } else if a.is_one() {
                    acc.plus(x)
                } else if (-a).is_one() {
                    acc.minus(x)
                } else {
                    acc.plus(&x.scale_int(a))
                }
            })
        })
        .collect();
    ProjPoint::new(out)
}

/// Which facets of a simplex count as inside. Facet `i` is the one opposite
/// vertex `i`, where the `i`-th barycentric coordinate vanishes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundaryPolicy {
    Closed,
    Open,
    PerFace(Vec<bool>),
}

impl BoundaryPolicy {
    fn includes(&self, facet: usize) -> bool {
        match self {
            BoundaryPolicy::Closed => true,
            BoundaryPolicy::Open => false,
            BoundaryPolicy::PerFace(v) => v[facet],
        }
    }
}

/// Solves `M c = b` exactly by fraction-free (Bareiss) elimination.
pub fn solve<S: Scalar>(m: &IntMat, b: &[S]) -> Result<Vec<S>> {
    let n = m.size();
    if b.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: b.len() });
    }
    let one = b[0].lift(&Rational::one());
    let mut a: Vec<Vec<S>> = (0..n)
        .map(|i| {
            let mut row: Vec<S> = m.row(i).iter().map(|x| one.lift_int(x)).collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    let mut prev = one.clone();
    for k in 0..n {
        let p = (k..n).find(|&i| !a[i][k].is_zero()).ok_or(Error::SingularMatrix)?;
        a.swap(k, p);
        for i in k + 1..n {
            for j in k + 1..=n {
                let v = a[k][k].times(&a[i][j]).minus(&a[i][k].times(&a[k][j]));
                a[i][j] = v.divide(&prev)?;
            }
            a[i][k] = one.lift(&Rational::zero());
        }
        prev = a[k][k].clone();
    }
    let mut x: Vec<S> = vec![one.lift(&Rational::zero()); n];
    for i in (0..n).rev() {
        let mut s = a[i][n].clone();
        for j in i + 1..n {
            s = s.minus(&a[i][j].times(&x[j]));
        }
        x[i] = s.divide(&a[i][i])?;
    }
    Ok(x)
}

/// Barycentric coordinates of `p` in `s`, up to a common nonzero factor.
pub fn barycentric<S: Scalar>(s: &SimplexMat, p: &ProjPoint<S>) -> Result<Vec<S>> {
    solve(s.matrix(), p.coords())
}

pub fn simplex_contains<S: Scalar>(s: &SimplexMat, p: &ProjPoint<S>, policy: &BoundaryPolicy) -> Result<bool> {
    let c = barycentric(s, p)?;
    let signs = c.iter().map(Scalar::signum).collect::<Result<Vec<_>>>()?;
    let orient = signs.iter().find(|s| **s != Ordering::Equal).copied().ok_or(Error::ZeroVector)?;
    Ok(signs
        .iter()
        .enumerate()
        .all(|(i, s)| *s == orient || (*s == Ordering::Equal && policy.includes(i))))
}

/// Exact determinant; callers decide whether ±1 is required.
pub fn unimodular_check(m: &IntMat) -> BigInt {
    m.det()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat, NumberField};

    #[test]
    fn determinants() {
        assert_eq!(unimodular_check(&IntMat::identity(3)), BigInt::one());
        let a = IntMat::from_i64(&[&[1, 0, 0], &[1, -1, 0], &[0, -1, 1]]);
        let b = IntMat::from_i64(&[&[0, -1, 1], &[1, -1, 0], &[1, 0, 0]]);
        assert_eq!(unimodular_check(&a), BigInt::from(-1));
        assert_eq!(unimodular_check(&b), BigInt::from(1));
        let s = IntMat::from_i64(&[&[0, 2, 1], &[1, 0, 3], &[0, 0, 0]]);
        assert!(s.det().is_zero());
        let m = IntMat::from_i64(&[&[2, 5], &[5, 12]]);
        assert_eq!(m.det(), BigInt::from(-1));
    }

    #[test]
    fn inverse_and_powers() {
        let b = IntMat::from_i64(&[&[0, -1, 1], &[1, -1, 0], &[1, 0, 0]]);
        let bi = b.inverse().unwrap();
        assert_eq!(b.mul(&bi), IntMat::identity(3));
        assert_eq!(b.pow(-2).unwrap().mul(&b.pow(2).unwrap()), IntMat::identity(3));
        assert_eq!(b.pow(0).unwrap(), IntMat::identity(3));
        let two = IntMat::from_i64(&[&[1, 0], &[0, 2]]);
        assert!(matches!(two.inverse(), Err(Error::NotUnimodular(_))));
    }

    #[test]
    fn canonical_points() {
        let p = ProjPoint::new(vec![rat(4, 3), rat(2, 3), int(2)]).unwrap();
        assert_eq!(p, ProjPoint::from_ints(&[2, 1, 3]).unwrap());
        let k = NumberField::from_i64(&[-1, 3, 3, 1], int(0), int(1)).unwrap();
        let a = k.generator();
        let p = ProjPoint::new(vec![a.scale(&int(2)), a.clone(), k.constant(int(2))]).unwrap();
        assert_eq!(p.coords()[1], a.scale(&rat(1, 2)));
        assert_eq!(ProjPoint::<Rational>::new(vec![int(0), int(0)]), Err(Error::ZeroVector));
    }

    #[test]
    fn matrix_action() {
        let b2 = IntMat::from_i64(&[&[-1, -1, 1], &[1, -1, 0], &[1, 0, 0]]);
        let p = ProjPoint::from_ints(&[1, 1, 2]).unwrap();
        assert_eq!(apply_matrix(&b2, &p).unwrap(), ProjPoint::from_ints(&[0, 0, 1]).unwrap());
        assert_eq!(apply_matrix(&IntMat::identity(3), &p).unwrap(), p);
        assert!(apply_matrix(&IntMat::identity(2), &p).is_err());
    }

    #[test]
    fn containment() {
        let v = SimplexMat::new(IntMat::from_i64(&[&[0, 1, 1], &[0, 0, 1], &[1, 1, 1]])).unwrap();
        let inside = ProjPoint::new(vec![rat(1, 2), rat(1, 4), int(1)]).unwrap();
        let outside = ProjPoint::new(vec![rat(1, 4), rat(1, 2), int(1)]).unwrap();
        assert!(simplex_contains(&v, &inside, &BoundaryPolicy::Open).unwrap());
        assert!(!simplex_contains(&v, &outside, &BoundaryPolicy::Closed).unwrap());
        let edge = ProjPoint::new(vec![rat(1, 2), int(0), int(1)]).unwrap();
        assert!(simplex_contains(&v, &edge, &BoundaryPolicy::Closed).unwrap());
        assert!(!simplex_contains(&v, &edge, &BoundaryPolicy::Open).unwrap());
        let neg = ProjPoint::new(vec![rat(-1, 2), rat(-1, 4), int(-1)]).unwrap();
        assert!(simplex_contains(&v, &neg, &BoundaryPolicy::Open).unwrap());
    }

    #[test]
    fn solve_matches_inverse() {
        let m = IntMat::from_i64(&[&[1, 0, -1, 3], &[0, 0, -1, 1], &[0, 1, -1, 0], &[2, 0, -2, 7]]);
        let b: Vec<Rational> = vec![int(3), int(-1), int(4), int(1)];
        let x = solve(&m, &b).unwrap();
        let bi: Vec<BigInt> = b.iter().map(|r| r.to_integer()).collect();
        let via_inv = m.inverse().unwrap().apply_int(&bi);
        assert_eq!(x, via_inv.into_iter().map(Rational::from_integer).collect::<Vec<_>>());
    }
}

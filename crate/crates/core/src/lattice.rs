//! Lattice points of the hull `conv{0, v_1, …, v_d}` spanned by the columns of
//! an integer matrix.
//!
//! Candidates come from a box scan pruned by Fourier–Motzkin bounds (with a
//! one-step margin on the innermost axis so near misses are examined too).
//! Each candidate is then judged twice:
//!
//! * method (a): `c = M⁻¹ v` through the adjugate; integral by unimodularity,
//!   inside iff `c ≥ 0` and `Σc ≤ 1`;
//! * method (b): barycentric coordinates by Cramer's rule with division-free
//!   determinants, no inverse involved.

use std::collections::BTreeSet;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::projective::IntMat;

pub type LatticePoint = Vec<i64>;

/// Outcome of scanning one hull.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HullScan {
    pub candidates: usize,
    /// Points judged inside by method (a).
    pub inside_inverse: BTreeSet<LatticePoint>,
    /// Points judged inside by method (b).
    pub inside_barycentric: BTreeSet<LatticePoint>,
    /// `0` and the vertices that fit in the scan box.
    pub expected: BTreeSet<LatticePoint>,
}

impl HullScan {
    pub fn methods_agree(&self) -> bool {
        self.inside_inverse == self.inside_barycentric
    }

    /// Lattice points inside the hull that are neither `0` nor a vertex.
    pub fn non_vertex(&self) -> Vec<LatticePoint> {
        self.inside_inverse
            .union(&self.inside_barycentric)
            .filter(|p| !self.expected.contains(*p))
            .cloned()
            .collect()
    }

    pub fn only_vertices(&self) -> bool {
        self.methods_agree() && self.inside_inverse == self.expected
    }
}

trait Ring:
    Clone + Ord + Zero + One + Integer + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn from_big(b: &BigInt) -> Self;
    fn from_i64(x: i64) -> Self;
}

impl Ring for i128 {
    fn from_big(b: &BigInt) -> Self {
        b.to_i128().expect("range checked")
    }
    fn from_i64(x: i64) -> Self {
        x as i128
    }
}

impl Ring for BigInt {
    fn from_big(b: &BigInt) -> Self {
        b.clone()
    }
    fn from_i64(x: i64) -> Self {
        BigInt::from(x)
    }
}

/// Cofactor expansion: every product has at most `n` factors, which keeps
/// the fixed-width path free of overflow.
fn laplace_det<T: Ring>(m: &[Vec<T>], cols: &[usize]) -> T {
    let row = m.len() - cols.len();
    if cols.len() == 1 {
        return m[row][cols[0]].clone();
    }
    let mut acc = T::zero();
    for (k, &c) in cols.iter().enumerate() {
        if m[row][c].is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = m[row][c].clone() * laplace_det(m, &rest);
        acc = if k % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

fn det<T: Ring>(m: Vec<Vec<T>>) -> T {
    if m.len() <= 4 {
        let cols: Vec<usize> = (0..m.len()).collect();
        laplace_det(&m, &cols)
    } else {
        bareiss_det(m)
    }
}

fn bareiss_det<T: Ring>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    let mut sign = T::one();
    let mut prev = T::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return T::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[k][k].clone() * m[i][j].clone() - m[i][k].clone() * m[k][j].clone();
                m[i][j] = v.div_floor(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

struct Judge<T> {
    m: Vec<Vec<T>>,
    inv: Vec<Vec<T>>,
    det: T,
}

impl<T: Ring> Judge<T> {
    fn new(m: &IntMat, inv: &IntMat) -> Self {
        let conv = |x: &IntMat| x.rows().iter().map(|r| r.iter().map(T::from_big).collect()).collect();
        let mm: Vec<Vec<T>> = conv(m);
        let det = det(mm.clone());
        Judge { m: mm, inv: conv(inv), det }
    }

    fn by_inverse(&self, v: &[T]) -> bool {
        let c: Vec<T> = self
            .inv
            .iter()
            .map(|row| row.iter().zip(v).fold(T::zero(), |acc, (a, x)| acc + a.clone() * x.clone()))
            .collect();
        let sum = c.iter().fold(T::zero(), |acc, x| acc + x.clone());
        c.iter().all(|x| *x >= T::zero()) && sum <= T::one()
    }

    fn by_barycentric(&self, v: &[T]) -> bool {
        let n = self.m.len();
        let s = if self.det < T::zero() { -T::one() } else { T::one() };
        let mut sum = T::zero();
        for i in 0..n {
            let mi: Vec<Vec<T>> = (0..n)
                .map(|r| (0..n).map(|c| if c == i { v[r].clone() } else { self.m[r][c].clone() }).collect())
                .collect();
            let di = det(mi) * s.clone();
            if di < T::zero() {
                return false;
            }
            sum = sum + di;
        }
        sum <= self.det.clone() * s
    }
}

/// Inequality `a·x ≥ b`.
#[derive(Clone, Debug)]
struct Ineq {
    a: Vec<BigInt>,
    b: BigInt,
}

fn normalize(mut q: Ineq) -> Ineq {
    let g = q.a.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g > BigInt::one() {
        q.a.iter_mut().for_each(|x| *x = &*x / &g);
        q.b = q.b.div_ceil(&g);
    }
    q
}

/// Eliminates variable `j` from the system.
fn eliminate(sys: &[Ineq], j: usize) -> Vec<Ineq> {
    let (mut pos, mut neg, mut out) = (Vec::new(), Vec::new(), Vec::new());
    for q in sys {
        match q.a[j].sign() {
            num_bigint::Sign::Plus => pos.push(q),
            num_bigint::Sign::Minus => neg.push(q),
            num_bigint::Sign::NoSign => out.push(q.clone()),
        }
    }
    for p in &pos {
        for n in &neg {
            let (fp, fn_) = (-&n.a[j], p.a[j].clone());
            let a = p.a.iter().zip(&n.a).map(|(x, y)| &fp * x + &fn_ * y).collect();
            out.push(normalize(Ineq { a, b: &fp * &p.b + &fn_ * &n.b }));
        }
    }
    out
}

/// Integer range of `x_j` allowed by `sys` once `x_{j+1..}` are fixed.
fn range(sys: &[Ineq], j: usize, fixed: &[i64], bound: i64) -> Option<(i64, i64)> {
    let (mut lo, mut hi) = (BigInt::from(-bound), BigInt::from(bound));
    for q in sys {
        let rest: BigInt = fixed.iter().enumerate().map(|(k, x)| &q.a[j + 1 + k] * x).sum();
        let rhs = &q.b - rest;
        match q.a[j].sign() {
            num_bigint::Sign::Plus => lo = lo.max(rhs.div_ceil(&q.a[j])),
            num_bigint::Sign::Minus => hi = hi.min(rhs.div_floor(&q.a[j])),
            num_bigint::Sign::NoSign => {
                if rhs.is_positive() {
                    return None;
                }
            }
        }
    }
    (lo <= hi).then(|| (lo.to_i64().unwrap(), hi.to_i64().unwrap()))
}

fn enumerate(systems: &[Vec<Ineq>], j: usize, fixed: &mut Vec<i64>, bound: i64, out: &mut Vec<LatticePoint>) {
    let Some((lo, hi)) = range(&systems[j], j, fixed, bound) else { return };
    if j == 0 {
        for x in (lo - 1).max(-bound)..=(hi + 1).min(bound) {
            let mut p = vec![x];
            p.extend_from_slice(fixed);
            out.push(p);
        }
        return;
    }
    for x in lo..=hi {
        fixed.insert(0, x);
        enumerate(systems, j - 1, fixed, bound, out);
        fixed.remove(0);
    }
}

/// Candidate lattice points for the hull of `m`, inside `[-bound, bound]^d`.
pub fn hull_candidates(m: &IntMat, bound: i64) -> Result<Vec<LatticePoint>> {
    let inv = m.inverse()?;
    let d = m.size();
    let mut base: Vec<Ineq> = inv.rows().into_iter().map(|a| Ineq { a, b: BigInt::zero() }).collect();
    let total: Vec<BigInt> = (0..d).map(|j| -base.iter().map(|q| &q.a[j]).sum::<BigInt>()).collect();
    base.push(Ineq { a: total, b: BigInt::from(-1) });
    let mut systems = vec![base];
    for j in 0..d - 1 {
        let next = eliminate(systems.last().unwrap(), j);
        systems.push(next);
    }
    let mut out = Vec::new();
    enumerate(&systems, d - 1, &mut Vec::new(), bound, &mut out);
    Ok(out)
}

fn fits_i128(m: &IntMat, inv: &IntMat, bound: i64) -> bool {
    let n = m.size() as u64;
    let eb = m.max_abs_entry().bits().max(1);
    let ib = inv.max_abs_entry().bits().max(1);
    let vb = 64 - bound.unsigned_abs().leading_zeros() as u64;
    n <= 4 && n * eb.max(vb) + 8 <= 120 && ib + vb + 8 <= 120
}

/// Scans the hull of the columns of `m` (plus the origin) within the box.
pub fn scan_hull(m: &IntMat, bound: i64) -> Result<HullScan> {
    let det = m.det();
    if det.abs() != BigInt::one() {
        return Err(Error::NotUnimodular(det));
    }
    if bound < 0 {
        return Err(Error::InvalidParameter("scan bound must be nonnegative".into()));
    }
    let inv = m.inverse()?;
    let cands = hull_candidates(m, bound)?;
    let (a, b) = if fits_i128(m, &inv, bound) {
        judge_all(&Judge::<i128>::new(m, &inv), &cands)
    } else {
        judge_all(&Judge::<BigInt>::new(m, &inv), &cands)
    };
    let bound_big = BigInt::from(bound);
    let mut expected: BTreeSet<LatticePoint> = BTreeSet::new();
    expected.insert(vec![0; m.size()]);
    for col in m.columns() {
        if col.iter().all(|x| x.abs() <= bound_big) {
            expected.insert(col.iter().map(|x| x.to_i64().unwrap()).collect());
        }
    }
    Ok(HullScan { candidates: cands.len(), inside_inverse: a, inside_barycentric: b, expected })
}

fn judge_all<T: Ring>(j: &Judge<T>, cands: &[LatticePoint]) -> (BTreeSet<LatticePoint>, BTreeSet<LatticePoint>) {
    let (mut a, mut b) = (BTreeSet::new(), BTreeSet::new());
    for c in cands {
        let v: Vec<T> = c.iter().map(|&x| T::from_i64(x)).collect();
        if j.by_inverse(&v) {
            a.insert(c.clone());
        }
        if j.by_barycentric(&v) {
            b.insert(c.clone());
        }
    }
    (a, b)
}

/// Lattice points on the closed segment from `u` to `v`, endpoints included.
pub fn segment_points(u: &[BigInt], v: &[BigInt]) -> BigInt {
    u.iter().zip(v).fold(BigInt::zero(), |g, (a, b)| g.gcd(&(a - b))) + 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_2d(m: &IntMat, bound: i64) -> BTreeSet<LatticePoint> {
        let inv = m.inverse().unwrap();
        let mut s = BTreeSet::new();
        for x in -bound..=bound {
            for y in -bound..=bound {
                let c = inv.apply_int(&[BigInt::from(x), BigInt::from(y)]);
                if c.iter().all(|t| !t.is_negative()) && c.iter().sum::<BigInt>() <= BigInt::one() {
                    s.insert(vec![x, y]);
                }
            }
        }
        s
    }

    #[test]
    fn small_triangles() {
        for rows in [[[0, 1], [1, 1]], [[2, 5], [5, 12]], [[1, 0], [0, 1]], [[3, -1], [-2, 1]]] {
            let m = IntMat::from_i64(&[&rows[0], &rows[1]]);
            let scan = scan_hull(&m, 20).unwrap();
            assert!(scan.only_vertices(), "{m}");
            assert_eq!(scan.inside_inverse, brute_2d(&m, 20));
        }
    }

    #[test]
    fn candidates_cover_the_box_scan() {
        let m = IntMat::from_i64(&[&[1, 2, 3], &[0, 1, 4], &[1, 3, 8]]);
        assert_eq!(m.det().abs(), BigInt::one());
        let cands: BTreeSet<_> = hull_candidates(&m, 10).unwrap().into_iter().collect();
        let inv = m.inverse().unwrap();
        for x in -10..=10i64 {
            for y in -10..=10i64 {
                for z in -10..=10i64 {
                    let c = inv.apply_int(&[x.into(), y.into(), z.into()]);
                    let inside = c.iter().all(|t| !t.is_negative()) && c.iter().sum::<BigInt>() <= BigInt::one();
                    if inside {
                        assert!(cands.contains(&vec![x, y, z]));
                    }
                }
            }
        }
        assert!(scan_hull(&m, 10).unwrap().only_vertices());
    }

    #[test]
    fn non_unimodular_is_rejected() {
        let m = IntMat::from_i64(&[&[1, 0], &[0, 2]]);
        assert!(matches!(scan_hull(&m, 10), Err(Error::NotUnimodular(_))));
    }

    #[test]
    fn big_entries_take_the_bigint_path() {
        let big = 1i64 << 50;
        let m = IntMat::from_i64(&[&[1, big, 0], &[0, 1, big], &[0, 0, 1]]);
        let scan = scan_hull(&m, 30).unwrap();
        assert!(scan.methods_agree());
        assert!(scan.only_vertices());
    }
}

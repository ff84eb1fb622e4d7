//! Seeded random inputs shared by the suites and the test-suite.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Roots;
use rand::Rng;

use crate::error::Result;
use crate::exactnum::{int, rat, NFElement, NumberField, Rational, Scalar};
use crate::gaussnd::{Family, Symbol};
use crate::projective::ProjPoint;

/// Rational point of the closed base simplex with denominator at most `max_den`.
pub fn rational_point<R: Rng>(rng: &mut R, dim: usize, max_den: i64) -> ProjPoint<Rational> {
    let d = rng.gen_range(2..=max_den.max(2));
    let mut xs: Vec<i64> = (0..dim).map(|_| rng.gen_range(0..=d)).collect();
    xs.sort_unstable_by(|a, b| b.cmp(a));
    let mut c: Vec<Rational> = xs.iter().map(|&x| rat(x, d)).collect();
    c.push(int(1));
    ProjPoint::new(c).expect("nonzero")
}

/// Rational point with strictly ordered coordinates `1 > x_1 > … > x_n > 0`.
pub fn interior_rational_point<R: Rng>(rng: &mut R, dim: usize, max_den: i64) -> ProjPoint<Rational> {
    let max_den = max_den.max(dim as i64 + 2);
    loop {
        let d = rng.gen_range(dim as i64 + 1..=max_den);
        let mut xs: Vec<i64> = (0..dim).map(|_| rng.gen_range(1..d)).collect();
        xs.sort_unstable_by(|a, b| b.cmp(a));
        xs.dedup();
        if xs.len() == dim {
            let mut c: Vec<Rational> = xs.iter().map(|&x| rat(x, d)).collect();
            c.push(int(1));
            return ProjPoint::new(c).expect("nonzero");
        }
    }
}

/// Random word of symbols with indices in `1..=max_k`.
pub fn symbol_word<R: Rng>(rng: &mut R, dim: usize, len: usize, max_k: u64) -> Vec<Symbol> {
    (0..len)
        .map(|_| Symbol::new(Family(rng.gen_range(0..dim) as u8), rng.gen_range(1..=max_k)))
        .collect()
}

/// Rational pair `0 < y < x < 1` with denominator at most `max_den`.
pub fn face_params<R: Rng>(rng: &mut R, max_den: i64) -> (Rational, Rational) {
    let d = rng.gen_range(3..=max_den.max(3));
    let x = rng.gen_range(2..d);
    let y = rng.gen_range(1..x);
    (rat(x, d), rat(y, d))
}

fn is_square(n: i64) -> bool {
    let r = n.sqrt();
    r * r == n
}

/// Field of `frac(√d)` for nonsquare `d`, generated by that fractional part.
pub fn sqrt_frac_field(d: i64) -> Result<Arc<NumberField>> {
    let m = d.sqrt();
    // t = √d − m satisfies t² + 2m t + m² − d = 0
    NumberField::new(vec![BigInt::from(m * m - d), BigInt::from(2 * m), BigInt::from(1)], int(0), int(1))
}

pub fn random_nonsquare<R: Rng>(rng: &mut R, lo: i64, hi: i64) -> i64 {
    loop {
        let d = rng.gen_range(lo..=hi);
        if !is_square(d) {
            return d;
        }
    }
}

/// `Q(θ)`, `θ = √2 + √3`, together with `√2`, `√3`, `√6`.
pub fn biquadratic() -> Result<(Arc<NumberField>, [NFElement; 3])> {
    let k = NumberField::from_i64(&[1, 0, -10, 0, 1], int(3), int(4))?;
    let half = |c: [i64; 4]| k.element(c.iter().map(|&x| rat(x, 2)).collect());
    let s2 = half([0, -9, 0, 1]);
    let s3 = half([0, 11, 0, -1]);
    let s6 = half([-5, 0, 1, 0]);
    Ok((k, [s2, s3, s6]))
}

fn frac(x: &NFElement) -> Result<NFElement> {
    let f = x.floor()?;
    Ok(x.minus(&x.lift_int(&f)))
}

/// Point of the open tetrahedron whose coordinates and `1` are linearly
/// independent over the rationals: sorted fractional parts of `a√2`, `b√3`, `c√6`.
pub fn independent_quadratic_point<R: Rng>(
    rng: &mut R,
    roots: &[NFElement; 3],
) -> Result<ProjPoint<NFElement>> {
    let mut c: Vec<NFElement> = roots
        .iter()
        .map(|r| frac(&r.scale(&Rational::from_integer(rng.gen_range(1..=40).into()))))
        .collect::<Result<_>>()?;
    let mut err = None;
    c.sort_by(|a, b| {
        b.compare(a).unwrap_or_else(|e| {
            err = Some(e);
            std::cmp::Ordering::Equal
        })
    });
    if let Some(e) = err {
        return Err(e);
    }
    let one = c[0].lift(&int(1));
    c.push(one);
    ProjPoint::new(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussnd::in_base;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samplers_stay_in_base() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            assert!(in_base(&rational_point(&mut rng, 3, 20)).unwrap());
            assert!(in_base(&interior_rational_point(&mut rng, 2, 20)).unwrap());
        }
        let (_, roots) = biquadratic().unwrap();
        let sq = roots[0].times(&roots[0]);
        assert_eq!(sq.as_rational(), Some(int(2)));
        assert_eq!(roots[1].times(&roots[1]).as_rational(), Some(int(3)));
        assert_eq!(roots[2].times(&roots[2]).as_rational(), Some(int(6)));
        let p = independent_quadratic_point(&mut rng, &roots).unwrap();
        assert!(in_base(&p).unwrap());
        let k = sqrt_frac_field(7).unwrap();
        assert!((k.generator().approx_f64() - (7f64.sqrt() - 2.0)).abs() < 1e-9);
    }
}

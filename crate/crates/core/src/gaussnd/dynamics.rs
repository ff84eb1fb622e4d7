use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::system::{Family, MapSystem, Symbol};
use crate::error::{Error, Result};
use crate::exactnum::{Rational, Scalar};
use crate::projective::{apply_matrix, simplex_contains, BoundaryPolicy, IntMat, ProjPoint, SimplexMat};

/// Cap on consecutive A-steps in one first return.
pub const MAX_A_STEPS: u64 = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Branch {
    A,
    B,
}

fn check_dim<S: Scalar>(sys: &MapSystem, p: &ProjPoint<S>) -> Result<()> {
    if p.dim() != sys.dim() {
        return Err(Error::DimensionMismatch { expected: sys.dim() + 1, got: p.dim() + 1 });
    }
    Ok(())
}

/// Membership in the closed base simplex `1 ≥ x_1 ≥ … ≥ x_n ≥ 0`.
pub fn in_base<S: Scalar>(p: &ProjPoint<S>) -> Result<bool> {
    let c = p.coords();
    let n = p.dim();
    let w = &c[n];
    if w.signum()? != Ordering::Greater {
        return Ok(false);
    }
    if c[0].cmp_to(w)? == Ordering::Greater || c[n - 1].signum()? == Ordering::Less {
        return Ok(false);
    }
    for i in 1..n {
        if c[i].cmp_to(&c[i - 1])? == Ordering::Greater {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `x_1 + x_n` against `x_{n+1}`; `Less` or `Equal` selects the A branch.
fn branch_test<S: Scalar>(p: &ProjPoint<S>) -> Result<Ordering> {
    let c = p.coords();
    let n = p.dim();
    c[0].plus(&c[n - 1]).cmp_to(&c[n])
}

fn step_unchecked<S: Scalar>(sys: &MapSystem, p: &ProjPoint<S>) -> Result<(ProjPoint<S>, Branch, bool)> {
    let t = branch_test(p)?;
    let (m, br) = if t == Ordering::Greater { (sys.b(), Branch::B) } else { (sys.a(), Branch::A) };
    Ok((apply_matrix(m, p)?, br, t == Ordering::Equal))
}

/// One Mönkemeyer step. Ties go to the A branch.
pub fn monkemeyer_step<S: Scalar>(sys: &MapSystem, p: &ProjPoint<S>) -> Result<(ProjPoint<S>, Branch)> {
    check_dim(sys, p)?;
    if !in_base(p)? {
        return Err(Error::OutsideBase);
    }
    let (q, br, _) = step_unchecked(sys, p)?;
    Ok((q, br))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub symbol: Symbol,
    /// The point lies in more than one closed piece.
    pub boundary: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReturnStep<S: Scalar> {
    pub point: ProjPoint<S>,
    /// `None` only at the fixed zero vertex.
    pub symbol: Option<Symbol>,
    pub boundary: bool,
}

fn precheck<S: Scalar>(sys: &MapSystem, p: &ProjPoint<S>) -> Result<()> {
    check_dim(sys, p)?;
    if p.is_vertex_zero() {
        return Err(Error::ZeroVertex);
    }
    if !in_base(p)? {
        return Err(Error::OutsideBase);
    }
    Ok(())
}

/// First return to the B branch by explicit iteration of the Mönkemeyer map.
pub fn return_step_iterated<S: Scalar>(sys: &MapSystem, p: &ProjPoint<S>) -> Result<ReturnStep<S>> {
    if let Some(z) = zero_fixed(sys, p)? {
        return Ok(z);
    }
    precheck(sys, p)?;
    let mut cur = p.clone();
    let mut kv = 0u64;
    let mut boundary = false;
    loop {
        let (q, br, tie) = step_unchecked(sys, &cur)?;
        cur = q;
        match br {
            Branch::B => break,
            Branch::A => {
                boundary |= tie;
                kv += 1;
                if kv > MAX_A_STEPS {
                    return Err(Error::StateCapExceeded(MAX_A_STEPS as usize));
                }
            }
        }
    }
    Ok(ReturnStep { point: cur, symbol: Some(sys.symbol_from_steps(kv)), boundary })
}

fn zero_fixed<S: Scalar>(sys: &MapSystem, p: &ProjPoint<S>) -> Result<Option<ReturnStep<S>>> {
    check_dim(sys, p)?;
    Ok(p.is_vertex_zero().then(|| ReturnStep { point: p.clone(), symbol: None, boundary: false }))
}

pub fn classify_by_iteration<S: Scalar>(sys: &MapSystem, p: &ProjPoint<S>) -> Result<Classification> {
    precheck(sys, p)?;
    let r = return_step_iterated(sys, p)?;
    Ok(Classification { symbol: r.symbol.ok_or(Error::ZeroVertex)?, boundary: r.boundary })
}

/// `floor(x_{n+1} / x_1)`, i.e. `floor(1/x)`.
fn inverse_floor<S: Scalar>(p: &ProjPoint<S>) -> Result<(BigInt, bool)> {
    let c = p.coords();
    let q = c[c.len() - 1].divide(&c[0])?;
    let k = q.floor()?;
    let exact = q.cmp_to(&q.lift_int(&k))? == Ordering::Equal;
    Ok((k, exact))
}

fn to_u64(k: &BigInt) -> Result<u64> {
    u64::try_from(k).map_err(|_| Error::Overflow)
}

/// Piece of the first-return partition containing `p`. On shared boundaries
/// the piece with the most A-steps wins, matching the tie rule of the step.
pub fn classify_piece<S: Scalar>(sys: &MapSystem, p: &ProjPoint<S>) -> Result<Classification> {
    precheck(sys, p)?;
    match sys.dim() {
        1 => {
            let (k, exact) = inverse_floor(p)?;
            let k = to_u64(&k)?;
            Ok(Classification { symbol: Symbol::a(k), boundary: exact && k >= 2 })
        }
        2 => {
            let (kb, exact) = inverse_floor(p)?;
            let c = p.coords();
            let t = c[1].plus(&c[0].scale_int(&kb)).cmp_to(&c[2])?;
            let k = to_u64(&kb)?;
            let family = if t == Ordering::Greater { Family::B } else { Family::A };
            Ok(Classification { symbol: Symbol::new(family, k), boundary: t == Ordering::Equal || (exact && k >= 2) })
        }
        3 => {
            let (kb, _) = inverse_floor(p)?;
            let k0 = to_u64(&kb)?;
            let mut hits: Vec<Symbol> = Vec::new();
            for k in k0.saturating_sub(1).max(1)..=k0 + 1 {
                for fam in 0..3u8 {
                    let sym = Symbol::new(Family(fam), k);
                    if in_base(&apply_matrix(&sys.symbol_matrix(sym)?, p)?)? {
                        hits.push(sym);
                    }
                }
            }
            let best = hits
                .iter()
                .copied()
                .max_by_key(|s| sys.steps_for(*s).unwrap_or(0))
                .ok_or_else(|| Error::OutOfDomain(format!("no piece contains {p}")))?;
            Ok(Classification { symbol: best, boundary: hits.len() > 1 })
        }
        _ => classify_by_iteration(sys, p),
    }
}

/// One step of the first-return map `G`.
pub fn return_step<S: Scalar>(sys: &MapSystem, p: &ProjPoint<S>) -> Result<ReturnStep<S>> {
    if sys.dim() > 3 {
        return return_step_iterated(sys, p);
    }
    if let Some(z) = zero_fixed(sys, p)? {
        return Ok(z);
    }
    let c = classify_piece(sys, p)?;
    let point = apply_matrix(&sys.symbol_matrix(c.symbol)?, p)?;
    Ok(ReturnStep { point, symbol: Some(c.symbol), boundary: c.boundary })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum OrbitStatus {
    Ongoing,
    ReachedZero,
    Periodic { preperiod: usize, period: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Itinerary {
    pub symbols: Vec<Symbol>,
    #[serde(flatten)]
    pub status: OrbitStatus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit<S: Scalar> {
    /// `G^0 p, G^1 p, …`; one more state than symbols unless the orbit closed up.
    pub states: Vec<ProjPoint<S>>,
    pub boundary: Vec<bool>,
    pub itinerary: Itinerary,
}

/// Iterates `G` for at most `max_steps` steps, stopping at the zero vertex or
/// on the first revisit of a state.
pub fn orbit<S: Scalar>(sys: &MapSystem, p: &ProjPoint<S>, max_steps: usize) -> Result<Orbit<S>> {
    check_dim(sys, p)?;
    if !in_base(p)? {
        return Err(Error::OutsideBase);
    }
    let mut states = vec![p.clone()];
    let mut seen: HashMap<ProjPoint<S>, usize> = HashMap::from([(p.clone(), 0)]);
    let mut symbols = Vec::new();
    let mut boundary = Vec::new();
    let mut status = OrbitStatus::Ongoing;
    while symbols.len() < max_steps {
        let cur = states.last().expect("nonempty");
        if cur.is_vertex_zero() {
            status = OrbitStatus::ReachedZero;
            break;
        }
        let r = return_step(sys, cur)?;
        symbols.push(r.symbol.ok_or(Error::ZeroVertex)?);
        boundary.push(r.boundary);
        if let Some(&i) = seen.get(&r.point) {
            status = OrbitStatus::Periodic { preperiod: i, period: symbols.len() - i };
            break;
        }
        seen.insert(r.point.clone(), states.len());
        states.push(r.point);
    }
    if status == OrbitStatus::Ongoing && states.last().is_some_and(ProjPoint::is_vertex_zero) {
        status = OrbitStatus::ReachedZero;
    }
    Ok(Orbit { states, boundary, itinerary: Itinerary { symbols, status } })
}

pub fn itinerary<S: Scalar>(sys: &MapSystem, p: &ProjPoint<S>, max_steps: usize) -> Result<Itinerary> {
    Ok(orbit(sys, p, max_steps)?.itinerary)
}

/// `I_m = X_1⁻¹ ⋯ X_m⁻¹`.
pub fn approx_matrix(sys: &MapSystem, prefix: &[Symbol]) -> Result<IntMat> {
    prefix
        .iter()
        .try_fold(IntMat::identity(sys.dim() + 1), |acc, s| Ok(acc.mul(&sys.symbol_inverse(*s)?)))
}

/// Approximating simplexes `S_m = I_m V` for `m = 1..=prefix.len()`.
pub fn approx_simplexes(sys: &MapSystem, prefix: &[Symbol]) -> Result<Vec<SimplexMat>> {
    let mut acc = IntMat::identity(sys.dim() + 1);
    let mut out = Vec::with_capacity(prefix.len());
    for s in prefix {
        acc = acc.mul(&sys.symbol_inverse(*s)?);
        let sm = acc.mul(sys.v().matrix());
        if !sm.det().magnitude().is_one() {
            return Err(Error::CorruptSimplex(format!("determinant {} after {s}", sm.det())));
        }
        out.push(SimplexMat::new(sm)?);
    }
    Ok(out)
}

/// Whether every vertex of `inner` lies in the closed simplex `outer`.
pub fn simplex_within(outer: &SimplexMat, inner: &SimplexMat) -> Result<bool> {
    for v in inner.vertices() {
        let p = ProjPoint::new(v.into_iter().map(Rational::from_integer).collect())?;
        if !simplex_contains(outer, &p, &BoundaryPolicy::Closed)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `V ⊇ S_1 ⊇ S_2 ⊇ …`.
pub fn check_nesting(sys: &MapSystem, simplexes: &[SimplexMat]) -> Result<bool> {
    let mut outer = sys.v();
    for s in simplexes {
        if !simplex_within(outer, s)? {
            return Ok(false);
        }
        outer = s;
    }
    Ok(true)
}

/// Rational point on a face of `V`: a convex combination of the listed vertices.
pub fn face_point(sys: &MapSystem, weights: &[(usize, Rational)]) -> Result<ProjPoint<Rational>> {
    let v = sys.v().vertices();
    let mut coords = vec![Rational::zero(); sys.dim() + 1];
    for (i, w) in weights {
        let col = v.get(*i).ok_or(Error::IndexOutOfRange { index: *i, len: v.len() })?;
        for (c, x) in coords.iter_mut().zip(col) {
            *c += w * Rational::from_integer(x.clone());
        }
    }
    ProjPoint::new(coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat, NFElement, NumberField};
    use crate::gaussnd::system::monkemeyer_matrices;

    fn pt(c: &[(i64, i64)]) -> ProjPoint<Rational> {
        let mut v: Vec<Rational> = c.iter().map(|&(a, b)| rat(a, b)).collect();
        v.push(int(1));
        ProjPoint::new(v).unwrap()
    }

    #[test]
    fn single_step() {
        let s = monkemeyer_matrices(2).unwrap();
        let (q, br) = monkemeyer_step(&s, &pt(&[(1, 3), (1, 4)])).unwrap();
        assert_eq!(q, pt(&[(4, 9), (1, 9)]));
        assert_eq!(br, Branch::A);
        assert_eq!(monkemeyer_step(&s, &pt(&[(1, 4), (1, 3)])), Err(Error::OutsideBase));
        let (_, br) = monkemeyer_step(&s, &pt(&[(2, 3), (1, 3)])).unwrap();
        assert_eq!(br, Branch::A);
    }

    #[test]
    fn planar_pieces() {
        let s = monkemeyer_matrices(2).unwrap();
        let c = classify_piece(&s, &pt(&[(1, 2), (1, 2)])).unwrap();
        assert_eq!(c.symbol, Symbol::b(2));
        let c = classify_piece(&s, &pt(&[(2, 3), (1, 3)])).unwrap();
        assert_eq!(c, Classification { symbol: Symbol::a(1), boundary: true });
        assert_eq!(classify_piece(&s, &pt(&[(0, 1), (0, 1)])), Err(Error::ZeroVertex));
        let r = return_step(&s, &pt(&[(1, 3), (1, 4)])).unwrap();
        assert_eq!(r.point, pt(&[(1, 4), (1, 4)]));
        assert_eq!(r.symbol, Some(Symbol::b(3)));
        let z = pt(&[(0, 1), (0, 1)]);
        assert_eq!(return_step(&s, &z).unwrap(), ReturnStep { point: z.clone(), symbol: None, boundary: false });
    }

    #[test]
    fn closed_form_agrees_with_iteration() {
        for n in 1..=3 {
            let s = monkemeyer_matrices(n).unwrap();
            let den = 29i64;
            let mut count = 0;
            let mut tuples: Vec<Vec<i64>> = vec![vec![]];
            for _ in 0..n {
                tuples = tuples
                    .into_iter()
                    .flat_map(|t| {
                        let hi = t.last().copied().unwrap_or(den);
                        (0..=hi).map(move |x| {
                            let mut u = t.clone();
                            u.push(x);
                            u
                        })
                    })
                    .collect();
            }
            for t in tuples.iter().step_by(if n == 3 { 7 } else { 1 }) {
                if t.iter().all(|&x| x == 0) {
                    continue;
                }
                let p = pt(&t.iter().map(|&x| (x, den)).collect::<Vec<_>>());
                let a = return_step(&s, &p).unwrap();
                let b = return_step_iterated(&s, &p).unwrap();
                assert_eq!(a, b, "n={n} p={p}");
                count += 1;
            }
            assert!(count > 20);
        }
    }

    #[test]
    fn cubic_itinerary() {
        let k = NumberField::from_i64(&[-1, 3, 3, 1], int(0), int(1)).unwrap();
        let a = k.generator();
        let p = ProjPoint::new(vec![a.clone(), a.times(&a), k.constant(int(1))]).unwrap();
        let s = monkemeyer_matrices(2).unwrap();
        let o = orbit(&s, &p, 100).unwrap();
        let sy = |x: &str| x.parse::<Symbol>().unwrap();
        let pre: Vec<Symbol> = ["A3", "B1", "B1", "A2"].iter().map(|x| sy(x)).collect();
        let per: Vec<Symbol> =
            ["B1", "B2", "B2", "B2", "B1", "B3", "B1", "B4", "B1", "B3"].iter().map(|x| sy(x)).collect();
        assert_eq!(o.itinerary.status, OrbitStatus::Periodic { preperiod: 4, period: 10 });
        assert_eq!(&o.itinerary.symbols[..4], &pre[..]);
        assert_eq!(&o.itinerary.symbols[4..], &per[..]);
        assert_eq!(o.states.len(), 14);
        let _: &NFElement = &o.states[0].coords()[0];
    }

    #[test]
    fn rational_orbits_end_at_zero() {
        let s = monkemeyer_matrices(2).unwrap();
        let o = orbit(&s, &pt(&[(5, 7), (2, 7)]), 100).unwrap();
        assert_eq!(o.itinerary.status, OrbitStatus::ReachedZero);
        assert!(o.states.last().unwrap().is_vertex_zero());
        let v = pt(&[(0, 1), (0, 1)]);
        assert_eq!(orbit(&s, &v, 10).unwrap().itinerary.status, OrbitStatus::ReachedZero);
    }

    #[test]
    fn simplexes_nest() {
        let s1 = monkemeyer_matrices(1).unwrap();
        let sm = approx_simplexes(&s1, &[Symbol::a(2)]).unwrap();
        assert_eq!(sm[0].matrix(), &IntMat::from_i64(&[&[1, 1], &[2, 3]]));
        let s2 = monkemeyer_matrices(2).unwrap();
        let pre: Vec<Symbol> = crate::gaussnd::system::parse_symbols("A3,B1,B1,A2,B1,B2").unwrap();
        let sm = approx_simplexes(&s2, &pre).unwrap();
        assert!(check_nesting(&s2, &sm).unwrap());
        assert_eq!(approx_matrix(&s2, &pre).unwrap().mul(s2.v().matrix()), *sm[5].matrix());
    }

    #[test]
    fn higher_dims_iterate() {
        let s = monkemeyer_matrices(4).unwrap();
        let p = pt(&[(9, 10), (7, 10), (3, 10), (1, 10)]);
        let o = orbit(&s, &p, 200).unwrap();
        assert_eq!(o.itinerary.status, OrbitStatus::ReachedZero);
        assert!(face_point(&s, &[(9, int(1))]).is_err());
        assert_eq!(face_point(&s, &[(0, rat(1, 2)), (1, rat(1, 2))]).unwrap(), pt(&[(1, 2), (0, 1), (0, 1), (0, 1)]));
    }
}

//! Face dynamics of the 3-dimensional map: sub-shift automata and streak rewriting.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::system::{Family, MapSystem, Symbol};
use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::projective::{IntMat, ProjPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Face {
    AB,
    AC,
    BC,
    FR,
}

impl Face {
    /// Successor face after reading `s`, if the automaton allows it.
    pub fn next(self, s: Symbol) -> Option<Face> {
        match (self, s.family) {
            (Face::AB, Family::A) | (Face::AC, Family::C) | (Face::BC, Family::B) => Some(Face::AB),
            (Face::AB, Family::B) | (Face::AC, Family::A) | (Face::BC, Family::C) => Some(Face::AC),
            (Face::FR, Family::C) if s.k == 1 => Some(Face::BC),
            _ => None,
        }
    }

    pub fn accepts(self, symbols: &[Symbol]) -> bool {
        symbols.iter().try_fold(self, |f, s| f.next(*s)).is_some()
    }

    /// A point of the face from parameters `0 < y < x < 1`.
    pub fn point(self, x: &Rational, y: &Rational) -> Result<ProjPoint<Rational>> {
        let one = Rational::one();
        let c = match self {
            Face::AB => [x.clone(), y.clone(), Rational::zero()],
            Face::AC => [x.clone(), y.clone(), y.clone()],
            Face::BC => [x.clone(), x.clone(), y.clone()],
            Face::FR => [one.clone(), x.clone(), y.clone()],
        };
        ProjPoint::new(c.into_iter().chain([one]).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FacetClass {
    #[serde(rename = "edge-A")]
    EdgeA,
    #[serde(rename = "face-AB")]
    FaceAB,
    #[serde(rename = "face-AC")]
    FaceAC,
    #[serde(rename = "face-BC")]
    FaceBC,
    #[serde(rename = "face-FR-start")]
    FaceFRStart,
    #[serde(rename = "interior-consistent")]
    InteriorConsistent,
}

fn check_families(symbols: &[Symbol]) -> Result<()> {
    match symbols.iter().find(|s| s.family.0 > 2) {
        Some(s) => Err(Error::InvalidParameter(format!("symbol {s} is not a 3-dimensional symbol"))),
        None => Ok(()),
    }
}

/// Classifies an itinerary prefix by the face automata. The first matching
/// class in declaration order wins.
pub fn facet_subshift_check(symbols: &[Symbol]) -> Result<FacetClass> {
    check_families(symbols)?;
    let class = if symbols.iter().all(|s| s.family == Family::A) {
        FacetClass::EdgeA
    } else if Face::AB.accepts(symbols) {
        FacetClass::FaceAB
    } else if Face::AC.accepts(symbols) {
        FacetClass::FaceAC
    } else if Face::BC.accepts(symbols) {
        FacetClass::FaceBC
    } else if Face::FR.accepts(symbols) {
        FacetClass::FaceFRStart
    } else {
        FacetClass::InteriorConsistent
    };
    Ok(class)
}

/// `B̆` or `C̆`: an A-streak followed by one B or C symbol.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BreveWord {
    pub kind: Family,
    pub streak: Vec<u64>,
    /// Index of the closing B or C symbol.
    pub n: u64,
    #[serde(serialize_with = "as_string")]
    pub p: BigInt,
    #[serde(serialize_with = "as_string")]
    pub q: BigInt,
    #[serde(serialize_with = "as_string")]
    pub r: BigInt,
    #[serde(serialize_with = "as_string")]
    pub s: BigInt,
}

fn as_string<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl Serialize for Family {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_char(self.letter())
    }
}

impl BreveWord {
    fn new(kind: Family, streak: Vec<u64>, n: u64) -> Self {
        // p/q = [0; a_1..a_k], r/s = [0; a_1..a_{k-1}]
        let (mut p, mut q, mut r, mut s) = (BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::zero());
        for a in &streak {
            let a = BigInt::from(*a);
            let np = &a * &p + &r;
            let nq = &a * &q + &s;
            (r, s) = (p, q);
            (p, q) = (np, nq);
        }
        BreveWord { kind, streak, n, p, q, r, s }
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        self.streak.iter().map(|&a| Symbol::a(a)).chain([Symbol::new(self.kind, self.n)]).collect()
    }

    /// Closed form of the inverse matrix of the word.
    pub fn inverse_matrix(&self) -> IntMat {
        let (p, q, r, s) = (&self.p, &self.q, &self.r, &self.s);
        let n = BigInt::from(self.n);
        let z = BigInt::zero;
        let i = |v: i64| BigInt::from(v);
        let top = r + &n * p;
        let bottom = s + &n * q;
        let rows = if self.kind == Family::B {
            vec![
                vec![p.clone(), z(), -p, top],
                vec![z(), z(), i(-1), i(1)],
                vec![z(), i(1), i(-1), z()],
                vec![q.clone(), z(), -q, bottom],
            ]
        } else {
            vec![
                vec![p.clone(), -p, z(), top],
                vec![z(), i(-1), i(1), i(1)],
                vec![z(), i(-1), z(), i(1)],
                vec![q.clone(), -q, z(), bottom],
            ]
        };
        IntMat::from_rows(rows).expect("4x4")
    }

    /// Product of the constituent inverse symbol matrices.
    pub fn product_inverse(&self, sys: &MapSystem) -> Result<IntMat> {
        self.symbols()
            .iter()
            .try_fold(IntMat::identity(sys.dim() + 1), |acc, s| Ok(acc.mul(&sys.symbol_inverse(*s)?)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StreakRewrite {
    pub words: Vec<BreveWord>,
    /// Trailing A-streak not yet closed by a B or C symbol.
    pub tail: Vec<u64>,
}

/// Groups each maximal A-streak with the following B or C symbol.
pub fn streak_rewrite(symbols: &[Symbol]) -> Result<StreakRewrite> {
    check_families(symbols)?;
    if !Face::AB.accepts(symbols) && !Face::AC.accepts(symbols) {
        return Err(Error::PatternViolation(format!(
            "prefix {} does not alternate B and C between A-streaks",
            symbols.iter().map(Symbol::to_string).collect::<Vec<_>>().join(",")
        )));
    }
    let mut words = Vec::new();
    let mut streak = Vec::new();
    for s in symbols {
        if s.family == Family::A {
            streak.push(s.k);
        } else {
            words.push(BreveWord::new(s.family, std::mem::take(&mut streak), s.k));
        }
    }
    Ok(StreakRewrite { words, tail: streak })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use crate::gaussnd::dynamics::return_step;
    use crate::gaussnd::system::{monkemeyer_matrices, parse_symbols};

    fn syms(s: &str) -> Vec<Symbol> {
        parse_symbols(s).unwrap()
    }

    #[test]
    fn automaton_classes() {
        assert_eq!(facet_subshift_check(&syms("A2,B1,A3,C2,B1")).unwrap(), FacetClass::FaceAB);
        assert_eq!(facet_subshift_check(&syms("A5,A1,A2")).unwrap(), FacetClass::EdgeA);
        assert_eq!(facet_subshift_check(&syms("C1,A2,B3")).unwrap(), FacetClass::FaceAC);
        assert_eq!(facet_subshift_check(&syms("B1,B2")).unwrap(), FacetClass::FaceBC);
        assert_eq!(facet_subshift_check(&syms("B1,B2,B1")).unwrap(), FacetClass::InteriorConsistent);
        assert_eq!(facet_subshift_check(&syms("C1,B2,B1")).unwrap(), FacetClass::FaceFRStart);
        assert!(facet_subshift_check(&[Symbol::new(Family(3), 1)]).is_err());
    }

    #[test]
    fn breve_words() {
        let sys = monkemeyer_matrices(3).unwrap();
        let rw = streak_rewrite(&syms("A2,B3")).unwrap();
        let w = &rw.words[0];
        assert_eq!((w.p.clone(), w.q.clone(), w.r.clone(), w.s.clone()), (1.into(), 2.into(), 0.into(), 1.into()));
        let expect = IntMat::from_i64(&[&[1, 0, -1, 3], &[0, 0, -1, 1], &[0, 1, -1, 0], &[2, 0, -2, 7]]);
        assert_eq!(w.inverse_matrix(), expect);
        assert_eq!(w.product_inverse(&sys).unwrap(), expect);

        let w = &streak_rewrite(&syms("B1")).unwrap().words[0];
        assert_eq!((w.p.clone(), w.q.clone()), (0.into(), 1.into()));
        assert_eq!(w.inverse_matrix(), w.product_inverse(&sys).unwrap());

        let w = &streak_rewrite(&syms("A1,C2")).unwrap().words[0];
        assert_eq!((w.p.clone(), w.q.clone(), w.r.clone(), w.s.clone()), (1.into(), 1.into(), 0.into(), 1.into()));
        assert_eq!(w.inverse_matrix(), w.product_inverse(&sys).unwrap());

        let rw = streak_rewrite(&syms("A2,B1,A3,A1,C2,A4")).unwrap();
        assert_eq!(rw.words.len(), 2);
        assert_eq!(rw.tail, vec![4]);
        for w in &rw.words {
            assert_eq!(w.inverse_matrix(), w.product_inverse(&sys).unwrap());
        }
        assert!(matches!(streak_rewrite(&syms("B1,B2")), Err(Error::PatternViolation(_))));
    }

    #[test]
    fn frontal_face_map() {
        let sys = monkemeyer_matrices(3).unwrap();
        let (x, y) = (rat(5, 7), rat(2, 7));
        let r = return_step(&sys, &Face::FR.point(&x, &y).unwrap()).unwrap();
        assert_eq!(r.symbol, Some(Symbol::c(1)));
        assert_eq!(r.point, Face::BC.point(&(rat(1, 1) - &y), &(&x - &y)).unwrap());
    }
}

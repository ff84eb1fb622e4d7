//! Group-theoretic identities among the generator matrices.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::system::MapSystem;
use crate::error::{Error, Result};
use crate::projective::IntMat;

/// Generator letters `A`, `B` and their inverses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    A,
    B,
    AInv,
    BInv,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::A, Letter::B, Letter::AInv, Letter::BInv];

    pub fn inverse(self) -> Letter {
        match self {
            Letter::A => Letter::AInv,
            Letter::AInv => Letter::A,
            Letter::B => Letter::BInv,
            Letter::BInv => Letter::B,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Letter::A => "A",
            Letter::B => "B",
            Letter::AInv => "A^-1",
            Letter::BInv => "B^-1",
        })
    }
}

#[derive(Debug, Clone)]
pub struct Generators {
    pub a: IntMat,
    pub b: IntMat,
    pub a_inv: IntMat,
    pub b_inv: IntMat,
}

impl Generators {
    pub fn new(sys: &MapSystem) -> Result<Self> {
        Ok(Generators { a: sys.a().clone(), b: sys.b().clone(), a_inv: sys.a().inverse()?, b_inv: sys.b().inverse()? })
    }

    pub fn matrix(&self, l: Letter) -> &IntMat {
        match l {
            Letter::A => &self.a,
            Letter::B => &self.b,
            Letter::AInv => &self.a_inv,
            Letter::BInv => &self.b_inv,
        }
    }

    pub fn eval(&self, word: &[Letter]) -> IntMat {
        word.iter().fold(IntMat::identity(self.a.size()), |acc, l| acc.mul(self.matrix(*l)))
    }
}

pub fn word_string(word: &[Letter]) -> String {
    if word.is_empty() {
        return "I".into();
    }
    word.iter().map(Letter::to_string).collect::<Vec<_>>().join(" ")
}

/// `T = B A⁻¹ B⁻¹` from the 1-dimensional generators.
pub fn t_from_generators(g: &Generators) -> IntMat {
    g.eval(&[Letter::B, Letter::AInv, Letter::BInv])
}

/// `S = (T A T)⁻¹`.
pub fn s_from_generators(g: &Generators) -> Result<IntMat> {
    let t = t_from_generators(g);
    t.mul(&g.a).mul(&t).inverse()
}

pub fn standard_t() -> IntMat {
    IntMat::from_i64(&[&[1, 1], &[0, 1]])
}

pub fn standard_s() -> IntMat {
    IntMat::from_i64(&[&[0, -1], &[1, 0]])
}

/// Embeds a 2×2 matrix into dimension `dim` on the first and last coordinates.
pub fn embed(m: &IntMat, dim: usize) -> Result<IntMat> {
    if m.size() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: m.size() });
    }
    if dim == 0 {
        return Err(Error::DimensionOutOfRange(dim));
    }
    let mut out = IntMat::identity(dim + 1);
    out.set(0, 0, m.get(0, 0).clone());
    out.set(0, dim, m.get(0, 1).clone());
    out.set(dim, 0, m.get(1, 0).clone());
    out.set(dim, dim, m.get(1, 1).clone());
    Ok(out)
}

/// `±P` with `P` the transposition of coordinates `i` and `j`.
pub fn is_coordinate_swap(m: &IntMat, i: usize, j: usize) -> bool {
    let n = m.size();
    if i >= n || j >= n || i == j {
        return false;
    }
    let sign = m.get(i, j).clone();
    if sign != BigInt::one() && sign != -BigInt::one() {
        return false;
    }
    (0..n).all(|r| {
        (0..n).all(|c| {
            let src = if r == i {
                j
            } else if r == j {
                i
            } else {
                r
            };
            let want = if c == src { sign.clone() } else { BigInt::zero() };
            *m.get(r, c) == want
        })
    })
}

/// Breadth-first search over reduced words up to `max_len` for one whose
/// matrix satisfies `pred`. Returns the shortest hit.
pub fn search_words(g: &Generators, max_len: usize, pred: impl Fn(&IntMat) -> bool) -> Option<Vec<Letter>> {
    let mut seen: HashSet<IntMat> = HashSet::new();
    let mut queue: VecDeque<(Vec<Letter>, IntMat)> = VecDeque::new();
    let id = IntMat::identity(g.a.size());
    seen.insert(id.clone());
    queue.push_back((Vec::new(), id));
    while let Some((w, m)) = queue.pop_front() {
        if !w.is_empty() && pred(&m) {
            return Some(w);
        }
        if w.len() == max_len {
            continue;
        }
        for l in Letter::ALL {
            if w.last().is_some_and(|p| p.inverse() == l) {
                continue;
            }
            let next = m.mul(g.matrix(l));
            if seen.insert(next.clone()) {
                let mut nw = w.clone();
                nw.push(l);
                queue.push_back((nw, next));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussnd::system::{monkemeyer_matrices, Symbol};

    #[test]
    fn modular_generators() {
        let g = Generators::new(&monkemeyer_matrices(1).unwrap()).unwrap();
        assert_eq!(t_from_generators(&g), standard_t());
        let s = s_from_generators(&g).unwrap();
        assert_eq!(s, standard_s());
        assert_eq!(s.pow(2).unwrap(), IntMat::identity(2).neg());
        assert_eq!(s.mul(&standard_t()).pow(3).unwrap().pow(2).unwrap(), IntMat::identity(2));
    }

    #[test]
    fn embedding_maps_families() {
        let s1 = monkemeyer_matrices(1).unwrap();
        for d in 2..=3 {
            let sd = monkemeyer_matrices(d).unwrap();
            for k in 1..6 {
                let m = s1.symbol_matrix(Symbol::a(k)).unwrap();
                assert_eq!(embed(&m, d).unwrap(), sd.symbol_matrix(Symbol::a(k)).unwrap());
            }
        }
        let a = standard_s();
        let b = standard_t();
        assert_eq!(embed(&a.mul(&b), 3).unwrap(), embed(&a, 3).unwrap().mul(&embed(&b, 3).unwrap()));
    }

    #[test]
    fn word_search_in_one_dimension() {
        let g = Generators::new(&monkemeyer_matrices(1).unwrap()).unwrap();
        // B is itself the swap of the two coordinates up to the A-factor
        let w = search_words(&g, 4, |m| is_coordinate_swap(m, 0, 1)).unwrap();
        assert!(is_coordinate_swap(&g.eval(&w), 0, 1));
        assert!(!is_coordinate_swap(&IntMat::identity(2), 0, 1));
        assert_eq!(word_string(&[]), "I");
    }
}

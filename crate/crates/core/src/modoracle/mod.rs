//! Brute-force modular representation theory: Specht modules, the simple
//! modules D^λ, and a randomized MeatAxe for composition factors.

mod brauer;
mod meataxe;
mod specht;

pub use brauer::{brauer_value, class_representatives, fingerprint, ClassRep, Fingerprint};
pub use meataxe::{chop, composition_factors, find_submodule, Factor, MEATAXE_TRIES};
pub use specht::{
    irreducible_dim, irreducible_rep, specht_basis, specht_rep, standard_tableaux, two_row_decomposition, SpechtData,
};

use crate::error::{Error, Result};
use crate::linalg::{FpMatrix, Subspace};
use crate::partition::Partition;
use crate::permrep::{generators, Basis};
use crate::prime::Prime;

/// A representation of S_n over F_p given by the matrices of (1 2) and
/// (1 2 … n), acting on row vectors from the right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixRep {
    n: usize,
    s: FpMatrix,
    c: FpMatrix,
}

impl MatrixRep {
    pub fn new(n: usize, s: FpMatrix, c: FpMatrix) -> Result<Self> {
        let d = s.rows();
        if s.cols() != d || c.rows() != d || c.cols() != d || s.prime() != c.prime() {
            return Err(Error::ShapeMismatch("generator matrices must be square of one size".into()));
        }
        Ok(MatrixRep { n, s, c })
    }

    /// The permutation module M(shape) on its set-partition basis.
    pub fn perm_module(shape: &Partition, p: Prime) -> Result<Self> {
        let basis = Basis::new(shape)?;
        let (s, c) = generators(shape.size());
        Ok(MatrixRep {
            n: shape.size(),
            s: FpMatrix::permutation(p, &basis.permutation(&s)),
            c: FpMatrix::permutation(p, &basis.permutation(&c)),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn prime(&self) -> Prime {
        self.s.prime()
    }

    pub fn dim(&self) -> usize {
        self.s.rows()
    }

    pub fn transposition(&self) -> &FpMatrix {
        &self.s
    }

    pub fn cycle(&self) -> &FpMatrix {
        &self.c
    }

    pub fn generators(&self) -> [&FpMatrix; 2] {
        [&self.s, &self.c]
    }

    /// s² = 1 and c^n = 1.
    pub fn check_relations(&self) -> bool {
        self.s.mul(&self.s).is_identity() && self.c.pow(self.n as u64).is_identity()
    }

    /// The representation on the dual space, generators transposed.
    pub fn transposed(&self) -> MatrixRep {
        MatrixRep { n: self.n, s: self.s.transpose(), c: self.c.transpose() }
    }

    /// Smallest invariant subspace containing `seeds`.
    pub fn spin(&self, seeds: impl IntoIterator<Item = Vec<u32>>) -> Subspace {
        let mut space = Subspace::new(self.prime(), self.dim());
        let mut queue: Vec<Vec<u32>> = Vec::new();
        for v in seeds {
            if space.insert(v.clone()) {
                queue.push(v);
            }
        }
        while let Some(v) = queue.pop() {
            if space.dim() == self.dim() {
                break;
            }
            for g in self.generators() {
                let w = g.vec_mul(&v);
                if space.insert(w.clone()) {
                    queue.push(w);
                }
            }
        }
        space
    }

    /// Representations on an invariant subspace and on the quotient by it.
    pub fn subquotient(&self, sub: &Subspace) -> (MatrixRep, MatrixRep) {
        let p = self.prime();
        let pivots = sub.pivots();
        let free = sub.non_pivots();
        let on_sub = |g: &FpMatrix| {
            let rows = sub.basis().iter().map(|b| sub.coords(&g.vec_mul(b))).collect();
            FpMatrix::from_rows(p, pivots.len(), rows)
        };
        let on_quot = |g: &FpMatrix| {
            let rows = free
                .iter()
                .map(|&j| {
                    let mut v = g.row(j).to_vec();
                    sub.reduce(&mut v);
                    free.iter().map(|&f| v[f]).collect()
                })
                .collect();
            FpMatrix::from_rows(p, free.len(), rows)
        };
        (
            MatrixRep { n: self.n, s: on_sub(&self.s), c: on_sub(&self.c) },
            MatrixRep { n: self.n, s: on_quot(&self.s), c: on_quot(&self.c) },
        )
    }

    /// Matrix of the group element spelled by `word` (0 = transposition, 1 = cycle).
    pub fn word_matrix(&self, word: &[u8]) -> FpMatrix {
        let mut m = FpMatrix::identity(self.prime(), self.dim());
        for &letter in word {
            m = m.mul(if letter == 0 { &self.s } else { &self.c });
        }
        m
    }
}

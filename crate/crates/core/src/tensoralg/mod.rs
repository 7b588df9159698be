//! The completed weighted tensor algebra `Q<<x_1..x_g, y_1..y_g, z_1..z_n>>`
//! truncated by total weighted degree, together with exact rational
//! arithmetic and linear algebra.
//!
//! Weights are stored as positive filtration degrees: `x_j`, `y_j` have
//! degree 1 and `z_k` has degree 2. A weight `-d` element of the weight
//! filtration corresponds to weighted degree `>= d` here.

mod derivation;
mod hopf;
pub mod lie;
mod linsolve;
mod rational;
mod series;

pub use derivation::{derivation_exp, Derivation, Substitution};
pub use hopf::TensorSquare;
pub use linsolve::{linear_solve, rank, LinearSolution, SparseMatrix};
pub use rational::{fmt_rational, parse_rational, q, Rational};
pub use series::TensorSeries;

use crate::error::{Error, Result};
use std::fmt;

/// Generator identifier: `x_j` is `j-1`, `y_j` is `g+j-1`, `z_k` is `2g+k-1`.
pub type Gen = u16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    pub genus: usize,
    pub punctures: usize,
}

impl Signature {
    pub fn new(genus: usize, punctures: usize) -> Self {
        Signature { genus, punctures }
    }

    pub fn num_gens(&self) -> usize {
        2 * self.genus + self.punctures
    }

    pub fn weight(&self, gen: Gen) -> u32 {
        if (gen as usize) < 2 * self.genus {
            1
        } else {
            2
        }
    }

    pub fn x(&self, j: usize) -> Gen {
        (j - 1) as Gen
    }

    pub fn y(&self, j: usize) -> Gen {
        (self.genus + j - 1) as Gen
    }

    pub fn z(&self, k: usize) -> Gen {
        (2 * self.genus + k - 1) as Gen
    }

    /// Symplectic partner of a generator: `x_j <-> y_j` with `<x_j, y_j> = 1`.
    pub fn pairing(&self, a: Gen, b: Gen) -> i32 {
        let g = self.genus as Gen;
        if a < g && b == a + g {
            1
        } else if a >= g && a < 2 * g && b + g == a {
            -1
        } else {
            0
        }
    }

    pub fn gen_name(&self, gen: Gen) -> String {
        let i = gen as usize;
        if i < self.genus {
            format!("x{}", i + 1)
        } else if i < 2 * self.genus {
            format!("y{}", i - self.genus + 1)
        } else {
            format!("z{}", i - 2 * self.genus + 1)
        }
    }

    pub fn parse_gen(&self, token: &str) -> Result<Gen> {
        let bad = || Error::usage(format!("unknown generator `{token}`"));
        if token.len() < 2 {
            return Err(bad());
        }
        let (head, tail) = token.split_at(1);
        let idx: usize = tail.parse().map_err(|_| bad())?;
        if idx == 0 {
            return Err(bad());
        }
        match head {
            "x" if idx <= self.genus => Ok(self.x(idx)),
            "y" if idx <= self.genus => Ok(self.y(idx)),
            "z" if idx <= self.punctures => Ok(self.z(idx)),
            _ => Err(bad()),
        }
    }

    pub fn word_weight(&self, word: &[Gen]) -> u32 {
        word.iter().map(|&g| self.weight(g)).sum()
    }
}

/// A word in the generators. Ordered by weighted degree, then
/// lexicographically by generator index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    weight: u32,
    word: Vec<Gen>,
}

impl Monomial {
    pub fn new(sig: &Signature, word: Vec<Gen>) -> Self {
        Monomial {
            weight: sig.word_weight(&word),
            word,
        }
    }

    pub fn empty() -> Self {
        Monomial {
            weight: 0,
            word: Vec::new(),
        }
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn word(&self) -> &[Gen] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut word = Vec::with_capacity(self.word.len() + other.word.len());
        word.extend_from_slice(&self.word);
        word.extend_from_slice(&other.word);
        Monomial {
            weight: self.weight + other.weight,
            word,
        }
    }

    /// Sub-monomial on a range of positions.
    pub fn slice(&self, sig: &Signature, range: std::ops::Range<usize>) -> Monomial {
        Monomial::new(sig, self.word[range].to_vec())
    }

    /// Lexicographically least cyclic rotation.
    pub fn canonical_rotation(&self) -> Monomial {
        let n = self.word.len();
        if n <= 1 {
            return self.clone();
        }
        let mut best = self.word.clone();
        let mut cand = Vec::with_capacity(n);
        for r in 1..n {
            cand.clear();
            cand.extend_from_slice(&self.word[r..]);
            cand.extend_from_slice(&self.word[..r]);
            if cand < best {
                best.clone_from(&cand);
            }
        }
        Monomial {
            weight: self.weight,
            word: best,
        }
    }

    pub fn display(&self, sig: &Signature) -> String {
        if self.word.is_empty() {
            return "1".to_string();
        }
        self.word
            .iter()
            .map(|&g| sig.gen_name(g))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.word)
    }
}

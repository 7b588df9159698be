//! Shuffle coproduct on the truncated tensor algebra.

use super::{Monomial, Rational, Signature, TensorSeries};
use num_traits::Zero;
use std::collections::HashMap;

/// Element of the completed tensor square, truncated by total weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorSquare {
    trunc: u32,
    terms: HashMap<(Monomial, Monomial), Rational>,
}

impl TensorSquare {
    pub fn zero(trunc: u32) -> Self {
        TensorSquare {
            trunc,
            terms: HashMap::new(),
        }
    }

    pub fn add_term(&mut self, left: Monomial, right: Monomial, c: Rational) {
        if c.is_zero() || left.weight() + right.weight() > self.trunc {
            return;
        }
        let key = (left, right);
        let e = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> &HashMap<(Monomial, Monomial), Rational> {
        &self.terms
    }

    /// `a ⊗ b`.
    pub fn tensor(a: &TensorSeries, b: &TensorSeries) -> Self {
        let mut out = Self::zero(a.truncation().min(b.truncation()));
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                out.add_term(ma.clone(), mb.clone(), ca * cb);
            }
        }
        out
    }

    pub fn add(&self, other: &TensorSquare) -> Self {
        let mut out = self.clone();
        out.trunc = self.trunc.min(other.trunc);
        for ((l, r), c) in &other.terms {
            out.add_term(l.clone(), r.clone(), c.clone());
        }
        out.terms
            .retain(|(l, r), _| l.weight() + r.weight() <= out.trunc);
        out
    }
}

/// Shuffle coproduct: every generator is primitive.
pub fn coproduct(s: &TensorSeries) -> TensorSquare {
    let sig: Signature = s.signature();
    let mut out = TensorSquare::zero(s.truncation());
    for (m, c) in s.terms() {
        let w = m.word();
        let n = w.len();
        assert!(n < 64, "word too long for coproduct");
        for mask in 0u64..(1u64 << n) {
            let mut left = Vec::new();
            let mut right = Vec::new();
            for (i, &g) in w.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    left.push(g);
                } else {
                    right.push(g);
                }
            }
            out.add_term(Monomial::new(&sig, left), Monomial::new(&sig, right), c.clone());
        }
    }
    out
}

impl TensorSeries {
    pub fn coproduct(&self) -> TensorSquare {
        coproduct(self)
    }

    /// `Δs = s⊗1 + 1⊗s`.
    pub fn is_primitive(&self) -> bool {
        let one = TensorSeries::one(self.signature(), self.truncation());
        let expected = TensorSquare::tensor(self, &one).add(&TensorSquare::tensor(&one, self));
        coproduct(self) == expected
    }

    /// `Δs = s⊗s` with constant term one.
    pub fn is_group_like(&self) -> bool {
        num_traits::One::is_one(&self.constant_term())
            && coproduct(self) == TensorSquare::tensor(self, self)
    }
}

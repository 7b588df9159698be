//! Continuous derivations and algebra endomorphisms determined by their
//! values on generators.

use super::{Gen, Monomial, Rational, Signature, TensorSeries};
use crate::error::{Error, Result};
use num_traits::{One, Zero};

/// Derivation `D` with `D(ab) = D(a) b + a D(b)`, given on generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    images: Vec<TensorSeries>,
}

/// Continuous algebra endomorphism fixing constants, given on generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    images: Vec<TensorSeries>,
}

fn check_images(images: &[TensorSeries]) -> Result<(Signature, u32)> {
    let first = images
        .first()
        .ok_or_else(|| Error::usage("no generator images given"))?;
    let (sig, n) = (first.signature(), first.truncation());
    if images.len() != sig.num_gens() {
        return Err(Error::usage(format!(
            "expected {} generator images, got {}",
            sig.num_gens(),
            images.len()
        )));
    }
    for im in images {
        first.check_compatible(im)?;
    }
    Ok((sig, n))
}

impl Derivation {
    pub fn new(images: Vec<TensorSeries>) -> Result<Self> {
        check_images(&images)?;
        Ok(Derivation { images })
    }

    pub fn zero(sig: Signature, trunc: u32) -> Self {
        Derivation {
            images: vec![TensorSeries::zero(sig, trunc); sig.num_gens()],
        }
    }

    pub fn image(&self, gen: Gen) -> &TensorSeries {
        &self.images[gen as usize]
    }

    pub fn images(&self) -> &[TensorSeries] {
        &self.images
    }

    pub fn signature(&self) -> Signature {
        self.images[0].signature()
    }

    pub fn truncation(&self) -> u32 {
        self.images[0].truncation()
    }

    pub fn apply(&self, s: &TensorSeries) -> Result<TensorSeries> {
        s.check_compatible(&self.images[0])?;
        Ok(self.apply_rec(s))
    }

    fn apply_rec(&self, s: &TensorSeries) -> TensorSeries {
        let n = s.truncation();
        let images: Vec<Vec<TensorSeries>> = (0..=n)
            .map(|b| self.images.iter().map(|im| im.with_truncation(b)).collect())
            .collect();
        self.apply_budget(s, n, &images).with_truncation(n)
    }

    // D(c + sum_g g s_g) = sum_g D(g) s_g + g D(s_g), keeping only terms of
    // degree <= budget.
    fn apply_budget(&self, s: &TensorSeries, budget: u32, images: &[Vec<TensorSeries>]) -> TensorSeries {
        let sig = s.signature();
        let mut out = TensorSeries::zero(sig, budget);
        let (_, parts) = s.left_quotients();
        for (g, sg) in parts {
            out = &out + &images[budget as usize][g as usize].mul_unchecked(&sg);
            let w = sig.weight(g);
            if w > budget {
                continue;
            }
            let inner = self.apply_budget(&sg, budget - w, images);
            for (m, c) in inner.terms() {
                let mut word = Vec::with_capacity(m.len() + 1);
                word.push(g);
                word.extend_from_slice(m.word());
                out.add_term(Monomial::new(&sig, word), c.clone());
            }
        }
        out
    }

    /// Commutator `[D1, D2] = D1 D2 - D2 D1`.
    pub fn bracket(&self, other: &Derivation) -> Result<Derivation> {
        let mut images = Vec::with_capacity(self.images.len());
        for (a, b) in self.images.iter().zip(&other.images) {
            images.push(&self.apply(b)? - &other.apply(a)?);
        }
        Derivation::new(images)
    }

    /// `exp(D) = sum_k D^k / k!`, defined when `D` is nilpotent at this
    /// truncation (in particular whenever `D` raises degree).
    pub fn exp(&self) -> Result<Substitution> {
        let sig = self.signature();
        let n = self.truncation();
        for im in &self.images {
            if im.valuation() == Some(0) {
                return Err(Error::domain(
                    "derivation with constant terms has no exponential",
                ));
            }
        }
        let cap = (n as usize + 1) * (sig.num_gens() + 1);
        let mut images = Vec::with_capacity(self.images.len());
        for g in 0..sig.num_gens() {
            let mut term = TensorSeries::generator(sig, n, g as Gen);
            let mut total = term.clone();
            let mut k = 0usize;
            loop {
                k += 1;
                if k > cap {
                    return Err(Error::domain(
                        "derivation is not nilpotent at this truncation",
                    ));
                }
                term = self.apply_rec(&term).scale(&Rational::new(1.into(), (k as i64).into()));
                if term.is_zero() {
                    break;
                }
                total = &total + &term;
            }
            images.push(total);
        }
        Substitution::new(images)
    }
}

/// Free-function form of [`Derivation::exp`].
pub fn derivation_exp(d: &Derivation) -> Result<Substitution> {
    d.exp()
}

impl Substitution {
    pub fn new(images: Vec<TensorSeries>) -> Result<Self> {
        check_images(&images)?;
        if images.iter().any(|im| !im.constant_term().is_zero()) {
            return Err(Error::domain("substitution images must have zero constant term"));
        }
        Ok(Substitution { images })
    }

    pub fn identity(sig: Signature, trunc: u32) -> Self {
        Substitution {
            images: (0..sig.num_gens())
                .map(|g| TensorSeries::generator(sig, trunc, g as Gen))
                .collect(),
        }
    }

    pub fn image(&self, gen: Gen) -> &TensorSeries {
        &self.images[gen as usize]
    }

    pub fn images(&self) -> &[TensorSeries] {
        &self.images
    }

    pub fn signature(&self) -> Signature {
        self.images[0].signature()
    }

    pub fn truncation(&self) -> u32 {
        self.images[0].truncation()
    }

    pub fn apply(&self, s: &TensorSeries) -> Result<TensorSeries> {
        s.check_compatible(&self.images[0])?;
        Ok(self.apply_rec(s))
    }

    fn apply_rec(&self, s: &TensorSeries) -> TensorSeries {
        let n = s.truncation();
        let images: Vec<Vec<TensorSeries>> = (0..=n)
            .map(|b| self.images.iter().map(|im| im.with_truncation(b)).collect())
            .collect();
        let vals: Vec<Option<u32>> = self.images.iter().map(|im| im.valuation()).collect();
        self.apply_budget(s, n, &images, &vals).with_truncation(n)
    }

    // phi(c + sum_g g s_g) = c + sum_g phi(g) phi(s_g); phi(g) has
    // valuation v_g, so phi(s_g) is only needed below budget - v_g.
    fn apply_budget(
        &self,
        s: &TensorSeries,
        budget: u32,
        images: &[Vec<TensorSeries>],
        vals: &[Option<u32>],
    ) -> TensorSeries {
        let (constant, parts) = s.left_quotients();
        let mut out = TensorSeries::scalar(s.signature(), budget, constant);
        for (g, sg) in parts {
            let Some(v) = vals[g as usize] else { continue };
            if v > budget {
                continue;
            }
            let inner = self.apply_budget(&sg, budget - v, images, vals);
            out = &out + &images[budget as usize][g as usize].mul_unchecked(&inner);
        }
        out
    }

    /// `(self ∘ other)(g) = self(other(g))`.
    pub fn compose(&self, other: &Substitution) -> Result<Substitution> {
        let images = other
            .images
            .iter()
            .map(|im| self.apply(im))
            .collect::<Result<Vec<_>>>()?;
        Substitution::new(images)
    }

    /// Whether each generator image minus the generator has valuation
    /// strictly above the generator's weight.
    pub fn is_tangent_to_identity(&self) -> bool {
        let sig = self.signature();
        let n = self.truncation();
        self.images.iter().enumerate().all(|(g, im)| {
            let d = im - &TensorSeries::generator(sig, n, g as Gen);
            d.valuation().is_none_or(|v| v > sig.weight(g as Gen))
        })
    }

    /// Inverse of an automorphism whose linear part is the identity on
    /// each generator, by fixed-point iteration.
    pub fn inverse(&self) -> Result<Substitution> {
        let sig = self.signature();
        let n = self.truncation();
        for (g, im) in self.images.iter().enumerate() {
            let lead = im.coeff(&Monomial::new(&sig, vec![g as Gen]));
            let low = im.valuation().unwrap_or(u32::MAX);
            if !lead.is_one() || low < sig.weight(g as Gen) {
                return Err(Error::domain(
                    "inverse needs an automorphism that is the identity on the associated graded",
                ));
            }
        }
        let mut inv = Substitution::identity(sig, n);
        for _ in 0..=4 * (n + 1) {
            let back = self.compose(&inv)?;
            let mut next = Vec::with_capacity(inv.images.len());
            for (g, (cur, b)) in inv.images.iter().zip(&back.images).enumerate() {
                let gen = TensorSeries::generator(sig, n, g as Gen);
                next.push(&(cur + &gen) - b);
            }
            let next = Substitution::new(next)?;
            if next == inv {
                break;
            }
            inv = next;
        }
        if self.compose(&inv)? != Substitution::identity(sig, n) {
            return Err(Error::domain("inverse iteration did not converge"));
        }
        Ok(inv)
    }
}

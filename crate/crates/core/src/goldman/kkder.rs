//! The Kawazumi–Kuno action transported through the default Magnus
//! expansion: a derivation of the completed tensor algebra.

use super::ops::kk_action;
use super::sums::{LoopSum, PathSum};
use crate::error::Result;
use crate::magnus::MagnusExpansion;
use crate::surface::{FreeWord, Letter, Path};
use crate::tensoralg::{q, Derivation, Gen, TensorSeries};

/// Solves `D(exp x) = t` for `d = D(x)`, where `x` is a generator:
/// `D(exp x) = sum_k 1/k! sum_i x^i d x^(k-1-i)`.
pub fn solve_exp_derivative(x: &TensorSeries, t: &TensorSeries) -> TensorSeries {
    let n = t.truncation();
    let sig = t.signature();
    let mut powers = vec![TensorSeries::one(sig, n)];
    for k in 1..=n {
        let next = &powers[k as usize - 1] * x;
        if next.is_zero() {
            break;
        }
        powers.push(next);
    }
    let higher = |d: &TensorSeries| {
        let mut out = TensorSeries::zero(sig, n);
        let mut fact: i64 = 1;
        for k in 2..=powers.len() {
            fact *= k as i64;
            let mut s = TensorSeries::zero(sig, n);
            for i in 0..k {
                let j = k - 1 - i;
                if i >= powers.len() || j >= powers.len() {
                    continue;
                }
                s = &s + &(&(&powers[i] * d) * &powers[j]);
            }
            out = &out + &s.scale(&q(1, fact));
        }
        out
    };
    let mut d = t.clone();
    for _ in 0..=n {
        let next = t - &higher(&d);
        if next == d {
            break;
        }
        d = next;
    }
    d
}

/// Derivation `Theta ∘ kappa(u ⊗ -) ∘ Theta^-1` on the algebra of loops
/// based at tag `tag`, computed with images exact up to degree `trunc`.
///
/// The action may lower degree by up to two, so to know `D(s)` up to
/// degree `n`, use `trunc = n + 2` and truncate the result.
pub fn kk_derivation(u: &LoopSum, tag: usize, trunc: u32) -> Result<Derivation> {
    let spec = u.spec();
    let sig = spec.signature();
    let theta = MagnusExpansion::default_for(sig, trunc);
    let mut images = Vec::with_capacity(sig.num_gens());
    for g in 0..sig.num_gens() as Gen {
        let path = Path::new(&spec, tag, tag, FreeWord::new(vec![Letter::pos(g)]))?;
        let action = kk_action(u, &PathSum::from_path(spec, &path)?)?;
        let t = theta.expand_path_sum(&action);
        let x = TensorSeries::generator(sig, trunc, g);
        images.push(solve_exp_derivative(&x, &t));
    }
    Derivation::new(images)
}

/// [`kk_derivation`] computed with two degrees of headroom and then
/// truncated to `n`. Exact as a derivation at truncation `n` when it does
/// not lower degree, e.g. for `u` in the square of the augmentation ideal.
pub fn kk_derivation_at(u: &LoopSum, tag: usize, n: u32) -> Result<Derivation> {
    let d = kk_derivation(u, tag, n + 2)?;
    Derivation::new(d.images().iter().map(|s| s.with_truncation(n)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::SurfaceSpec;

    #[test]
    fn unit_gives_zero_derivation() {
        let sp = SurfaceSpec::new(1, 1).unwrap();
        let d = kk_derivation(&LoopSum::unit(sp), 0, 4).unwrap();
        assert_eq!(d, Derivation::zero(sp.signature(), 4));
    }

    #[test]
    fn definitional_consistency() {
        let sp = SurfaceSpec::new(1, 1).unwrap();
        let n = 3;
        let u = LoopSum::parse(sp, "a1").unwrap();
        let d = kk_derivation(&u, 0, n + 2).unwrap();
        let theta = MagnusExpansion::default_for(sp.signature(), n + 2);
        let b = sp.parse_word("b1").unwrap();
        let lhs = d.apply(&theta.expand(&b)).unwrap().with_truncation(n);
        let p = PathSum::parse(sp, 0, 0, "b1").unwrap();
        let rhs = theta.expand_path_sum(&kk_action(&u, &p).unwrap()).with_truncation(n);
        assert_eq!(lhs, rhs);
    }
}

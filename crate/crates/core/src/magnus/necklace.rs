//! Cyclic series: the completed space spanned by necklaces (monomials up
//! to rotation), modelling the completion of the span of loop classes.

use super::MagnusExpansion;
use crate::error::{Error, Result};
use crate::goldman::{goldman_bracket, LoopSum};
use crate::surface::LoopClass;
use crate::tensoralg::{fmt_rational, q, Monomial, Rational, Signature, TensorSeries};
use num_integer::binomial;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Necklace-indexed series; keys are least rotations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicSeries {
    sig: Signature,
    trunc: u32,
    twist: i32,
    terms: BTreeMap<Monomial, Rational>,
}

impl CyclicSeries {
    pub fn zero(sig: Signature, trunc: u32) -> Self {
        CyclicSeries {
            sig,
            trunc,
            twist: 0,
            terms: BTreeMap::new(),
        }
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn truncation(&self) -> u32 {
        self.trunc
    }

    pub fn twist(&self) -> i32 {
        self.twist
    }

    pub fn with_twist(mut self, twist: i32) -> Self {
        self.twist = twist;
        self
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c` times the necklace of `m` (rotated into canonical form).
    pub fn add_term(&mut self, m: &Monomial, c: Rational) {
        if c.is_zero() || m.weight() > self.trunc {
            return;
        }
        let key = m.canonical_rotation();
        let e = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms
            .get(&m.canonical_rotation())
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::empty())
    }

    pub fn check_compatible(&self, other: &CyclicSeries) -> Result<()> {
        if self.sig != other.sig || self.trunc != other.trunc {
            return Err(Error::usage("cyclic series have different signatures or truncations"));
        }
        Ok(())
    }

    pub fn add(&self, other: &CyclicSeries) -> CyclicSeries {
        let mut out = self.clone();
        out.trunc = self.trunc.min(other.trunc);
        out.terms.retain(|m, _| m.weight() <= out.trunc);
        for (m, c) in &other.terms {
            out.add_term(m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &CyclicSeries) -> CyclicSeries {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> CyclicSeries {
        let mut out = CyclicSeries::zero(self.sig, self.trunc).with_twist(self.twist);
        for (m, a) in &self.terms {
            out.add_term(m, a * c);
        }
        out
    }

    pub fn with_truncation(&self, trunc: u32) -> CyclicSeries {
        let mut out = self.clone();
        out.trunc = trunc;
        out.terms.retain(|m, _| m.weight() <= trunc);
        out
    }

    pub fn valuation(&self) -> Option<u32> {
        self.terms.keys().next().map(|m| m.weight())
    }

    /// Homogeneous component of weighted degree `d`.
    pub fn component(&self, d: u32) -> CyclicSeries {
        let mut out = CyclicSeries::zero(self.sig, self.trunc).with_twist(self.twist);
        for (m, c) in self.terms.iter().filter(|(m, _)| m.weight() == d) {
            out.add_term(m, c.clone());
        }
        out
    }

    /// Lowest-degree nonzero component, or zero.
    pub fn lowest_component(&self) -> CyclicSeries {
        match self.valuation() {
            Some(d) => self.component(d),
            None => self.clone(),
        }
    }

    /// The series with its constant term removed.
    pub fn reduced(&self) -> CyclicSeries {
        let mut out = self.clone();
        out.terms.remove(&Monomial::empty());
        out
    }

    pub fn display(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            } else if c.is_negative() {
                out.push('-');
            }
            let a = c.abs();
            if !a.is_one() {
                out.push_str(&fmt_rational(&a));
                out.push('*');
            }
            out.push_str(&format!("|{}|", m.display(&self.sig)));
        }
        out
    }
}

pub fn necklace_project(s: &TensorSeries) -> CyclicSeries {
    let mut out = CyclicSeries::zero(s.signature(), s.truncation());
    for (m, c) in s.terms() {
        out.add_term(m, c.clone());
    }
    out
}

pub fn expand_class(u: &LoopClass, theta: &MagnusExpansion) -> CyclicSeries {
    necklace_project(&theta.expand(u.word()))
}

pub fn expand_loop_sum(u: &LoopSum, theta: &MagnusExpansion) -> CyclicSeries {
    let mut out = CyclicSeries::zero(theta.signature(), theta.truncation()).with_twist(u.twist());
    for (k, c) in u.terms() {
        out = out.add(&expand_class(k, theta).scale(c));
    }
    out
}

const Z_SIGN: i64 = 1;

/// Lowest-weight contraction bracket of necklaces: every pair of letters
/// with nonzero intersection pairing is removed and the two necklaces are
/// joined at that point. Two copies of the same boundary letter `z_k`
/// contract to `|z_k A B| - |A z_k B|`, where `A`, `B` are the remainders.
pub fn gr_necklace_bracket(u: &CyclicSeries, v: &CyclicSeries) -> Result<CyclicSeries> {
    if u.sig != v.sig {
        return Err(Error::usage("cyclic series have different signatures"));
    }
    let sig = u.sig;
    let mut out =
        CyclicSeries::zero(sig, u.trunc.min(v.trunc)).with_twist(u.twist + v.twist + 1);
    for (p, cp) in &u.terms {
        for (qm, cq) in &v.terms {
            let (pw, qw) = (p.word(), qm.word());
            for i in 0..pw.len() {
                for j in 0..qw.len() {
                    let mut rest = Vec::with_capacity(pw.len() + qw.len() - 1);
                    rest.extend_from_slice(&pw[i + 1..]);
                    rest.extend_from_slice(&pw[..i]);
                    let split = rest.len();
                    rest.extend_from_slice(&qw[j + 1..]);
                    rest.extend_from_slice(&qw[..j]);
                    let s = sig.pairing(pw[i], qw[j]);
                    if s != 0 {
                        out.add_term(&Monomial::new(&sig, rest), cp * cq * q(s as i64, 1));
                    } else if pw[i] == qw[j] && sig.weight(pw[i]) == 2 {
                        // A boundary letter meets itself: it survives once,
                        // in front of either remainder.
                        let z = pw[i];
                        let mut front = vec![z];
                        front.extend_from_slice(&rest);
                        let mut middle = rest[..split].to_vec();
                        middle.push(z);
                        middle.extend_from_slice(&rest[split..]);
                        let c = cp * cq * q(Z_SIGN, 1);
                        out.add_term(&Monomial::new(&sig, front), c.clone());
                        out.add_term(&Monomial::new(&sig, middle), -c);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The Goldman bracket carried into necklaces by an expansion.
pub fn transported_bracket(
    u: &LoopSum,
    v: &LoopSum,
    theta: &MagnusExpansion,
) -> Result<CyclicSeries> {
    let b = goldman_bracket(u, v)?;
    Ok(expand_loop_sum(&b, theta))
}

/// Necklace of `log expand(alpha)`, computed on the class side as
/// `sum_n (-1)^(n+1)/n * |(alpha - 1)^n|` expanded into powers of `alpha`.
pub fn log_class(alpha: &LoopClass, theta: &MagnusExpansion) -> CyclicSeries {
    let n_max = theta.truncation() as i64;
    let mut out = CyclicSeries::zero(theta.signature(), theta.truncation());
    for k in 0..=n_max {
        let mut coeff = Rational::zero();
        for n in k.max(1)..=n_max {
            let b: i64 = binomial(n, k);
            let sign = if k % 2 == 0 { -1 } else { 1 };
            coeff += q(sign * b, n);
        }
        if coeff.is_zero() {
            continue;
        }
        out = out.add(&expand_class(&alpha.power(k), theta).scale(&coeff));
    }
    out
}

/// `|p^k| / k!`: the `k`-th symmetric-power component of `|exp p|`.
pub fn power_component(p: &TensorSeries, k: u32) -> CyclicSeries {
    let mut fact = Rational::one();
    for i in 1..=k {
        fact *= Rational::from_integer(i.into());
    }
    necklace_project(&p.pow(k)).scale(&fact.recip())
}

/// For primitive `p`: `|exp(n p)| = sum_k n^k |p^k|/k!`, and the component
/// of degree `k` in `p` scales by exactly `n^k`.
pub fn adams_series_check(n: u32, p: &TensorSeries, k: u32) -> Result<bool> {
    if !p.is_primitive() {
        return Err(Error::domain("adams_series_check needs a primitive series"));
    }
    let np = p.scale(&Rational::from_integer(n.into()));
    let lhs = necklace_project(&np.exp()?);
    let mut rhs = CyclicSeries::zero(p.signature(), p.truncation());
    for j in 0..=p.truncation() {
        rhs = rhs.add(&power_component(&np, j));
    }
    let nk = Rational::from_integer(num_bigint::BigInt::from(n).pow(k));
    let scaled = power_component(&np, k) == power_component(p, k).scale(&nk);
    Ok(lhs == rhs && scaled)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{cyclic_normal_form, SurfaceSpec};
    use crate::tensoralg::Gen;

    #[test]
    fn necklace_examples() {
        let sp = SurfaceSpec::new(1, 1).unwrap();
        let sig = sp.signature();
        let th = MagnusExpansion::default_for(sig, 4);
        let w = |t| cyclic_normal_form(&sp.parse_word(t).unwrap());
        assert_eq!(expand_class(&w("a1"), &th), expand_class(&w("b1 a1 b1'"), &th));
        let x = TensorSeries::generator(sig, 4, 0);
        let y = TensorSeries::generator(sig, 4, 1);
        assert!(necklace_project(&x.lie_bracket(&y).unwrap()).is_zero());
        let one = expand_class(&LoopClass::trivial(), &th);
        assert_eq!(one.terms().len(), 1);
        assert_eq!(one.constant_term(), q(1, 1));
    }

    #[test]
    fn gr_bracket_examples() {
        let sig = Signature::new(1, 1);
        let nx = necklace_project(&TensorSeries::generator(sig, 4, 0));
        let ny = necklace_project(&TensorSeries::generator(sig, 4, 1));
        let nz = necklace_project(&TensorSeries::generator(sig, 4, 2));
        let b = gr_necklace_bracket(&nx, &ny).unwrap();
        assert_eq!(b.terms().len(), 1);
        assert_eq!(b.constant_term(), q(1, 1));
        assert!(gr_necklace_bracket(&nx, &nx).unwrap().is_zero());
        assert!(gr_necklace_bracket(&nz, &nx).unwrap().is_zero());
    }

    #[test]
    fn boundary_letters_contract_with_themselves() {
        let sig = Signature::new(0, 3);
        let (z1, z2, z3) = (sig.z(1), sig.z(2), sig.z(3));
        let neck = |w: Vec<Gen>| {
            let mut c = CyclicSeries::zero(sig, 6);
            c.add_term(&Monomial::new(&sig, w), q(1, 1));
            c
        };
        let b = gr_necklace_bracket(&neck(vec![z1, z2]), &neck(vec![z1, z3])).unwrap();
        let want = neck(vec![z1, z2, z3]).sub(&neck(vec![z1, z3, z2]));
        assert_eq!(b.terms(), want.terms());
        // a single boundary letter is central
        let w = neck(vec![z1, z2, z1, z3]);
        assert!(gr_necklace_bracket(&neck(vec![z1]), &w).unwrap().is_zero());
    }

    #[test]
    fn log_class_examples() {
        let sp = SurfaceSpec::new(1, 1).unwrap();
        let sig = sp.signature();
        let th = MagnusExpansion::default_for(sig, 3);
        assert!(log_class(&LoopClass::trivial(), &th).is_zero());
        let a = cyclic_normal_form(&sp.parse_word("a1").unwrap());
        assert_eq!(
            log_class(&a, &th),
            necklace_project(&TensorSeries::generator(sig, 3, 0))
        );
        let ab = cyclic_normal_form(&sp.parse_word("a1 b1").unwrap());
        let l = log_class(&ab, &th);
        assert_eq!(l, necklace_project(&th.expand(ab.word()).log().unwrap()));
        let lowest = l.lowest_component();
        let xy = &TensorSeries::generator(sig, 3, 0) + &TensorSeries::generator(sig, 3, 1);
        assert_eq!(lowest, necklace_project(&xy));
    }

    #[test]
    fn adams_series_examples() {
        let sig = Signature::new(1, 0);
        let x = TensorSeries::generator(sig, 5, 0);
        for k in 1..=4 {
            assert!(adams_series_check(2, &x, k).unwrap());
        }
        let c2 = power_component(&x.scale(&q(2, 1)), 2);
        let c1 = power_component(&x, 2);
        let m = Monomial::new(&sig, vec![0, 0]);
        assert_eq!(c2.coeff(&m) / c1.coeff(&m), q(4, 1));
    }
}

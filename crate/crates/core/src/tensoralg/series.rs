use super::{Gen, Monomial, Rational, Signature};
use crate::error::{Error, Result};
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

/// Truncated power series in weighted noncommuting generators.
///
/// Invariants: no stored monomial exceeds the truncation degree and no
/// stored coefficient is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorSeries {
    sig: Signature,
    trunc: u32,
    terms: BTreeMap<Monomial, Rational>,
}

impl TensorSeries {
    pub fn zero(sig: Signature, trunc: u32) -> Self {
        TensorSeries {
            sig,
            trunc,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(sig: Signature, trunc: u32) -> Self {
        Self::monomial(sig, trunc, Monomial::empty(), Rational::one())
    }

    pub fn scalar(sig: Signature, trunc: u32, c: Rational) -> Self {
        Self::monomial(sig, trunc, Monomial::empty(), c)
    }

    pub fn generator(sig: Signature, trunc: u32, gen: Gen) -> Self {
        Self::monomial(sig, trunc, Monomial::new(&sig, vec![gen]), Rational::one())
    }

    pub fn monomial(sig: Signature, trunc: u32, m: Monomial, c: Rational) -> Self {
        let mut s = Self::zero(sig, trunc);
        s.add_term(m, c);
        s
    }

    /// Builds a series from a word given as generator names, e.g. `["x1","y1"]`.
    pub fn from_words(
        sig: Signature,
        trunc: u32,
        terms: &[(&[&str], Rational)],
    ) -> Result<Self> {
        let mut s = Self::zero(sig, trunc);
        for (word, c) in terms {
            let gens = word
                .iter()
                .map(|t| sig.parse_gen(t))
                .collect::<Result<Vec<_>>>()?;
            s.add_term(Monomial::new(&sig, gens), c.clone());
        }
        Ok(s)
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn truncation(&self) -> u32 {
        self.trunc
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeff_of(&self, word: &[Gen]) -> Rational {
        self.coeff(&Monomial::new(&self.sig, word.to_vec()))
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::empty())
    }

    /// Adds `c * m`, dropping it if beyond truncation.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if m.weight() > self.trunc || c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub(crate) fn from_map(sig: Signature, trunc: u32, map: HashMap<Monomial, Rational>) -> Self {
        let terms = map
            .into_iter()
            .filter(|(m, c)| !c.is_zero() && m.weight() <= trunc)
            .collect();
        TensorSeries { sig, trunc, terms }
    }

    pub fn check_compatible(&self, other: &TensorSeries) -> Result<()> {
        if self.sig != other.sig || self.trunc != other.trunc {
            return Err(Error::usage(format!(
                "series mismatch: ({},{})/N={} vs ({},{})/N={}",
                self.sig.genus,
                self.sig.punctures,
                self.trunc,
                other.sig.genus,
                other.sig.punctures,
                other.trunc
            )));
        }
        Ok(())
    }

    /// Same series viewed at another truncation degree.
    pub fn with_truncation(&self, trunc: u32) -> Self {
        TensorSeries {
            sig: self.sig,
            trunc,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.weight() <= trunc)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.sig, self.trunc);
        }
        TensorSeries {
            sig: self.sig,
            trunc: self.trunc,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Homogeneous component of weighted degree `d`.
    pub fn component(&self, d: u32) -> Self {
        TensorSeries {
            sig: self.sig,
            trunc: self.trunc,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.weight() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Least weighted degree carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<u32> {
        self.terms.keys().next().map(|m| m.weight())
    }

    /// Largest weighted degree carrying a nonzero coefficient.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.weight())
    }

    pub fn mul(&self, other: &TensorSeries) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &TensorSeries) -> Self {
        let n = self.trunc;
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (ma, ca) in &self.terms {
            let room = n - ma.weight();
            for (mb, cb) in other.terms.iter().take_while(|(m, _)| m.weight() <= room) {
                let c = ca * cb;
                *acc.entry(ma.concat(mb)).or_insert_with(Rational::zero) += c;
            }
        }
        Self::from_map(self.sig, n, acc)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one(self.sig, self.trunc);
        for _ in 0..k {
            r = r.mul_unchecked(self);
        }
        r
    }

    /// `uv - vu`.
    pub fn lie_bracket(&self, other: &TensorSeries) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(&self.mul_unchecked(other) - &other.mul_unchecked(self))
    }

    /// Truncated exponential; requires zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::domain("exp requires zero constant term"));
        }
        let mut result = Self::one(self.sig, self.trunc);
        let mut power = Self::one(self.sig, self.trunc);
        for k in 1..=self.trunc as i64 {
            power = power.mul_unchecked(self).scale(&super::q(1, k));
            if power.is_zero() {
                break;
            }
            result = &result + &power;
        }
        Ok(result)
    }

    /// Truncated logarithm; requires constant term one.
    pub fn log(&self) -> Result<Self> {
        if !self.constant_term().is_one() {
            return Err(Error::domain("log requires constant term 1"));
        }
        let t = self - &Self::one(self.sig, self.trunc);
        let mut result = Self::zero(self.sig, self.trunc);
        let mut power = Self::one(self.sig, self.trunc);
        for k in 1..=self.trunc as i64 {
            power = power.mul_unchecked(&t);
            if power.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            result = &result + &power.scale(&super::q(sign, k));
        }
        Ok(result)
    }

    /// Multiplicative inverse; requires an invertible constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c = self.constant_term();
        if c.is_zero() {
            return Err(Error::domain("inverse requires nonzero constant term"));
        }
        let cinv = c.recip();
        let normalized = self.scale(&cinv);
        let t = &Self::one(self.sig, self.trunc) - &normalized;
        let mut result = Self::one(self.sig, self.trunc);
        let mut power = Self::one(self.sig, self.trunc);
        for _ in 1..=self.trunc {
            power = power.mul_unchecked(&t);
            if power.is_zero() {
                break;
            }
            result = &result + &power;
        }
        Ok(result.scale(&cinv))
    }

    /// `log(exp(u) exp(v))`.
    pub fn bch(&self, other: &TensorSeries) -> Result<Self> {
        self.check_compatible(other)?;
        self.exp()?.mul_unchecked(&other.exp()?).log()
    }

    /// Splits `s = c + sum_g g * s_g`, returning `(c, [(g, s_g)])` with the
    /// quotients kept at the original truncation.
    pub fn left_quotients(&self) -> (Rational, Vec<(Gen, TensorSeries)>) {
        let mut constant = Rational::zero();
        let mut parts: BTreeMap<Gen, BTreeMap<Monomial, Rational>> = BTreeMap::new();
        for (m, c) in &self.terms {
            match m.word().split_first() {
                None => constant = c.clone(),
                Some((&g, rest)) => {
                    parts
                        .entry(g)
                        .or_default()
                        .insert(Monomial::new(&self.sig, rest.to_vec()), c.clone());
                }
            }
        }
        let parts = parts
            .into_iter()
            .map(|(g, terms)| {
                (
                    g,
                    TensorSeries {
                        sig: self.sig,
                        trunc: self.trunc,
                        terms,
                    },
                )
            })
            .collect();
        (constant, parts)
    }

    /// Decomposition by weighted degree; summing the parts gives back `self`.
    pub fn weight_split(&self) -> BTreeMap<u32, TensorSeries> {
        let mut out: BTreeMap<u32, TensorSeries> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.weight())
                .or_insert_with(|| Self::zero(self.sig, self.trunc))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    pub fn display(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            let a = c.abs();
            let word = m.display(&self.sig);
            if m.is_empty() {
                out.push_str(&super::fmt_rational(&a));
            } else if a.is_one() {
                out.push_str(&word);
            } else {
                out.push_str(&format!("{}*{}", super::fmt_rational(&a), word));
            }
        }
        out
    }
}

impl Add for &TensorSeries {
    type Output = TensorSeries;
    fn add(self, rhs: &TensorSeries) -> TensorSeries {
        debug_assert_eq!(self.sig, rhs.sig);
        let mut out = self.clone();
        out.trunc = self.trunc.min(rhs.trunc);
        if out.trunc < self.trunc {
            out = out.with_truncation(out.trunc);
        }
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &TensorSeries {
    type Output = TensorSeries;
    fn sub(self, rhs: &TensorSeries) -> TensorSeries {
        self + &(-rhs)
    }
}

impl Neg for &TensorSeries {
    type Output = TensorSeries;
    fn neg(self) -> TensorSeries {
        TensorSeries {
            sig: self.sig,
            trunc: self.trunc,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &TensorSeries {
    type Output = TensorSeries;
    fn mul(self, rhs: &TensorSeries) -> TensorSeries {
        debug_assert_eq!(self.sig, rhs.sig);
        if self.trunc == rhs.trunc {
            self.mul_unchecked(rhs)
        } else {
            let n = self.trunc.min(rhs.trunc);
            self.with_truncation(n).mul_unchecked(&rhs.with_truncation(n))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensoralg::q;

    fn sig() -> Signature {
        Signature::new(1, 1)
    }

    fn gen(name: &str, n: u32) -> TensorSeries {
        let s = sig();
        TensorSeries::generator(s, n, s.parse_gen(name).unwrap())
    }

    #[test]
    fn multiply_examples() {
        let s = sig();
        let x = gen("x1", 3);
        let y = gen("y1", 3);
        let one = TensorSeries::one(s, 3);
        assert_eq!(&one * &x, x);
        let xy = &x * &y;
        assert_eq!(xy.len(), 1);
        assert_eq!(xy.coeff_of(&[0, 1]), q(1, 1));
        let p = &(&one + &x) * &(&one - &x);
        let expected = &one - &(&x * &x);
        assert_eq!(p, expected);
    }

    #[test]
    fn multiply_mismatch_is_usage_error() {
        let a = gen("x1", 3);
        let b = gen("x1", 4);
        assert!(matches!(a.mul(&b), Err(Error::Usage(_))));
    }

    #[test]
    fn truncation_by_weight_not_length() {
        let z = gen("z1", 3);
        // z has weight 2: z*z has weight 4 > 3.
        assert!((&z * &z).is_zero());
        let x = gen("x1", 3);
        assert_eq!((&x * &z).len(), 1);
    }

    #[test]
    fn exp_log_examples() {
        let s = sig();
        assert_eq!(
            TensorSeries::zero(s, 4).exp().unwrap(),
            TensorSeries::one(s, 4)
        );
        let x = gen("x1", 3);
        let e = x.exp().unwrap();
        assert_eq!(e.constant_term(), q(1, 1));
        assert_eq!(e.coeff_of(&[0]), q(1, 1));
        assert_eq!(e.coeff_of(&[0, 0]), q(1, 2));
        assert_eq!(e.coeff_of(&[0, 0, 0]), q(1, 6));
        assert_eq!(e.len(), 4);
        for n in 1..7 {
            let x = gen("x1", n);
            assert_eq!(x.exp().unwrap().log().unwrap(), x);
        }
        assert!(matches!(
            TensorSeries::one(s, 2).exp(),
            Err(Error::Domain(_))
        ));
        assert!(matches!(x.log(), Err(Error::Domain(_))));
    }

    #[test]
    fn bch_examples() {
        let x = gen("x1", 2);
        let y = gen("y1", 2);
        let zero = TensorSeries::zero(sig(), 2);
        assert_eq!(x.bch(&zero).unwrap(), x);
        assert_eq!(x.bch(&x).unwrap(), x.scale(&q(2, 1)));
        let expected = &(&x + &y) + &x.lie_bracket(&y).unwrap().scale(&q(1, 2));
        assert_eq!(x.bch(&y).unwrap(), expected);
    }

    #[test]
    fn lie_bracket_examples() {
        let x = gen("x1", 4);
        let y = gen("y1", 4);
        assert!(x.lie_bracket(&x).unwrap().is_zero());
        let xy = x.lie_bracket(&y).unwrap();
        assert_eq!(xy, &(&x * &y) - &(&y * &x));
        let nested = xy.lie_bracket(&x).unwrap();
        // [[x,y],x] = xyx - yxx - xxy + xyx = 2xyx - yxx - xxy
        assert_eq!(nested.len(), 3);
        assert_eq!(nested.coeff_of(&[0, 1, 0]), q(2, 1));
        assert_eq!(nested.coeff_of(&[1, 0, 0]), q(-1, 1));
        assert_eq!(nested.coeff_of(&[0, 0, 1]), q(-1, 1));
    }

    #[test]
    fn inverse_of_group_like() {
        let x = gen("x1", 5);
        let z = gen("z1", 5);
        let g = (&x + &z).exp().unwrap();
        let ginv = g.inverse().unwrap();
        assert_eq!(&g * &ginv, TensorSeries::one(sig(), 5));
        assert_eq!(ginv, (-&(&x + &z)).exp().unwrap());
    }

    #[test]
    fn weight_split_reassembles() {
        let x = gen("x1", 4);
        let z = gen("z1", 4);
        let s = &x + &z;
        let parts = s.weight_split();
        assert_eq!(parts[&1], x);
        assert_eq!(parts[&2], z);
        let e = s.exp().unwrap();
        let back = e
            .weight_split()
            .values()
            .fold(TensorSeries::zero(sig(), 4), |acc, p| &acc + p);
        assert_eq!(back, e);
    }
}

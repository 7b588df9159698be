//! Bar words over a [`DgaModel`]: the reduced bar construction `B(k, A, k)`
//! and its circular form, with Chen's differential and the shuffle product.
//!
//! Signs follow Chen's convention with `J w = (-1)^{deg w} w`:
//!
//! ```text
//! d[w1|…|wr] = Σ_i (−1)^i     [Jw1|…|Jw_{i−1}|dw_i|w_{i+1}|…|wr]
//!            + Σ_i (−1)^{i+1} [Jw1|…|Jw_{i−1}|Jw_i ∧ w_{i+1}|…|wr]
//! ```
//!
//! which are the Koszul signs of `s w_1 ⊗ … ⊗ s w_r` with shifted degrees
//! `deg w − 1`. The end terms of the two-sided construction act through the
//! augmentation and vanish on letters of positive degree.
//!
//! In the circular form `[w1|…|wr]c` the right end multiplies `w_r` into
//! `c` and `w_1` wraps around to multiply `c` from the other side, with the
//! Koszul sign of moving `s w_1` past the rest of the word and `c`. The
//! global signs of the three coefficient terms are the only choice making
//! `d² = 0` on models with nonzero differential and nonzero products
//! (checked exhaustively in the tests).

use super::model::{DgaModel, Vector};
use crate::error::{Error, Result};
use crate::tensoralg::{fmt_rational, parse_rational, Rational};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// One bar word: letters are basis indices of `A^+`; `right` is the
/// coefficient of the circular form, `None` in the reduced construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BarWord {
    pub letters: Vec<usize>,
    pub right: Option<usize>,
}

impl BarWord {
    pub fn reduced(letters: Vec<usize>) -> Self {
        BarWord { letters, right: None }
    }

    pub fn circular(letters: Vec<usize>, right: usize) -> Self {
        BarWord {
            letters,
            right: Some(right),
        }
    }

    /// `Σ (deg w_i − 1)`, plus the degree of the right coefficient.
    pub fn degree(&self, model: &DgaModel) -> i64 {
        let letters: i64 = self
            .letters
            .iter()
            .map(|&w| model.degree(w) as i64 - 1)
            .sum();
        letters + self.right.map_or(0, |c| model.degree(c) as i64)
    }
}

/// Rational combination of bar words, kept in canonical (sorted) order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BarElement {
    terms: BTreeMap<BarWord, Rational>,
}

fn sign(odd: bool) -> Rational {
    if odd {
        -Rational::one()
    } else {
        Rational::one()
    }
}

impl BarElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The empty reduced word `[ ]`.
    pub fn unit() -> Self {
        Self::word(Vec::new())
    }

    pub fn word(letters: Vec<usize>) -> Self {
        Self::from_word(BarWord::reduced(letters), Rational::one())
    }

    pub fn from_word(w: BarWord, c: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(w, c);
        e
    }

    pub fn add_term(&mut self, w: BarWord, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn terms(&self) -> &BTreeMap<BarWord, Rational> {
        &self.terms
    }

    pub fn coeff(&self, w: &BarWord) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_circular(&self) -> bool {
        self.terms.keys().any(|w| w.right.is_some())
    }

    pub fn add(&self, other: &BarElement) -> BarElement {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &BarElement) -> BarElement {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> BarElement {
        let mut out = Self::zero();
        for (w, k) in &self.terms {
            out.add_term(w.clone(), k * c);
        }
        out
    }

    /// The augmentation: coefficient of the empty reduced word.
    pub fn augmentation(&self) -> Rational {
        self.coeff(&BarWord::reduced(Vec::new()))
    }

    /// Every letter is a basis element of positive degree and every right
    /// coefficient exists in `model`.
    pub fn check(&self, model: &DgaModel) -> Result<()> {
        for w in self.terms.keys() {
            for &l in &w.letters {
                if l >= model.dim() {
                    return Err(Error::usage(format!("letter index {l} is not in the model")));
                }
                if model.degree(l) == 0 {
                    return Err(Error::domain(format!(
                        "letter {} has degree 0; bar letters live in positive degree",
                        model.name(l)
                    )));
                }
            }
            if let Some(c) = w.right {
                if c >= model.dim() {
                    return Err(Error::usage(format!("coefficient index {c} is not in the model")));
                }
            }
        }
        Ok(())
    }

    /// Display form, e.g. `[xi1|eta1] - 1/2*[zeta1]omega`.
    pub fn display(&self, model: &DgaModel) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c < &Rational::zero();
            let a = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if !a.is_one() {
                let _ = write!(out, "{}*", fmt_rational(&a));
            }
            let names: Vec<&str> = w.letters.iter().map(|&l| model.name(l)).collect();
            let _ = write!(out, "[{}]", names.join("|"));
            if let Some(r) = w.right {
                out.push_str(model.name(r));
            }
        }
        out
    }

    /// Parses `"[xi1|eta1] - 2*[zeta1] + 1/3*[]"`; a basis name directly
    /// after `]` makes the term circular.
    pub fn parse(model: &DgaModel, text: &str) -> Result<BarElement> {
        let chars: Vec<char> = text.chars().collect();
        let mut pos = 0;
        let mut out = BarElement::zero();
        let perr = |position: usize, message: &str| Error::Parse {
            position,
            message: message.into(),
        };
        let skip_ws = |pos: &mut usize| {
            while *pos < chars.len() && chars[*pos].is_whitespace() {
                *pos += 1;
            }
        };
        let mut first = true;
        skip_ws(&mut pos);
        if pos == chars.len() || text.trim() == "0" {
            return Ok(out);
        }
        while pos < chars.len() {
            skip_ws(&mut pos);
            let mut negative = false;
            if pos < chars.len() && (chars[pos] == '+' || chars[pos] == '-') {
                negative = chars[pos] == '-';
                pos += 1;
                skip_ws(&mut pos);
            } else if !first {
                return Err(perr(pos, "expected `+` or `-` between terms"));
            }
            first = false;
            let mut coeff = Rational::one();
            if pos < chars.len() && chars[pos] != '[' {
                let start = pos;
                while pos < chars.len() && chars[pos] != '*' {
                    pos += 1;
                }
                if pos == chars.len() {
                    return Err(perr(start, "expected `*` after coefficient"));
                }
                let lit: String = chars[start..pos].iter().collect();
                coeff = parse_rational(&lit).map_err(|_| perr(start, "malformed coefficient"))?;
                pos += 1;
                skip_ws(&mut pos);
            }
            if pos >= chars.len() || chars[pos] != '[' {
                return Err(perr(pos, "expected `[`"));
            }
            pos += 1;
            let start = pos;
            while pos < chars.len() && chars[pos] != ']' {
                pos += 1;
            }
            if pos == chars.len() {
                return Err(perr(start, "unterminated `[`"));
            }
            let inner: String = chars[start..pos].iter().collect();
            pos += 1;
            let mut letters = Vec::new();
            if !inner.trim().is_empty() {
                let mut offset = start;
                for tok in inner.split('|') {
                    let name = tok.trim();
                    let idx = model
                        .index_of(name)
                        .ok_or_else(|| perr(offset, &format!("unknown basis element `{name}`")))?;
                    letters.push(idx);
                    offset += tok.chars().count() + 1;
                }
            }
            let name_start = pos;
            while pos < chars.len() && chars[pos].is_alphanumeric() {
                pos += 1;
            }
            let right = if pos > name_start {
                let name: String = chars[name_start..pos].iter().collect();
                Some(
                    model
                        .index_of(&name)
                        .ok_or_else(|| perr(name_start, &format!("unknown basis element `{name}`")))?,
                )
            } else {
                None
            };
            if negative {
                coeff = -coeff;
            }
            out.add_term(BarWord { letters, right }, coeff);
            skip_ws(&mut pos);
        }
        out.check(model)?;
        Ok(out)
    }
}

fn replaced(letters: &[usize], i: usize, with: Option<usize>, drop_next: bool) -> Vec<usize> {
    let mut v = letters[..i].to_vec();
    v.extend(with);
    let skip = if drop_next { i + 2 } else { i + 1 };
    v.extend_from_slice(&letters[skip.min(letters.len())..]);
    v
}

fn differential_word(model: &DgaModel, w: &BarWord, c: &Rational, out: &mut BarElement) {
    let l = &w.letters;
    let r = l.len();
    let eps = |upto: usize| l[..upto].iter().map(|&x| shifted(model, x)).sum::<i64>();
    let word = |letters: Vec<usize>| BarWord {
        letters,
        right: w.right,
    };
    for i in 0..r {
        let s = sign(eps(i) % 2 != 0);
        for (k, dk) in model.d(l[i]) {
            out.add_term(word(replaced(l, i, Some(*k), false)), -(c * &s * dk));
        }
        if i + 1 < r {
            let s = sign((eps(i) + model.degree(l[i]) as i64) % 2 != 0);
            for (k, pk) in model.product(l[i], l[i + 1]) {
                out.add_term(word(replaced(l, i, Some(*k), true)), c * &s * pk);
            }
        }
    }
    if let Some(rc) = w.right {
        circular_ends(model, l, rc, c, out);
    }
}

/// Shifted degree `deg − 1` of a letter.
fn shifted(model: &DgaModel, x: usize) -> i64 {
    model.degree(x) as i64 - 1
}

/// The coefficient terms of the circular differential.
fn circular_ends(model: &DgaModel, l: &[usize], rc: usize, c: &Rational, out: &mut BarElement) {
    let r = l.len();
    let eps = |upto: usize| l[..upto].iter().map(|&x| shifted(model, x)).sum::<i64>();
    let dc = model.degree(rc) as i64;
    let s = sign(eps(r) % 2 == 0);
    for (k, dk) in model.d(rc) {
        out.add_term(BarWord::circular(l.to_vec(), *k), c * &s * dk);
    }
    if r == 0 {
        return;
    }
    // right end: a_r c
    let s = sign((eps(r - 1) + model.degree(l[r - 1]) as i64) % 2 != 0);
    for (k, pk) in model.product(l[r - 1], rc) {
        out.add_term(BarWord::circular(l[..r - 1].to_vec(), *k), c * &s * pk);
    }
    let s1 = shifted(model, l[0]);
    let rest = eps(r) - s1;
    // wrap-around: s a_1 moves past the rest and c, then c a_1
    let e = s1 * (rest + dc) + rest + dc + model.degree(l[0]) as i64 + 1;
    let s = sign(e % 2 != 0);
    for (k, pk) in model.product(rc, l[0]) {
        out.add_term(BarWord::circular(l[1..].to_vec(), *k), c * &s * pk);
    }
}

/// Chen's differential on reduced and circular bar words.
pub fn bar_differential(e: &BarElement, model: &DgaModel) -> Result<BarElement> {
    e.check(model)?;
    let mut out = BarElement::zero();
    for (w, c) in e.terms() {
        differential_word(model, w, c, &mut out);
    }
    Ok(out)
}

/// All shuffles of `a` and `b`, with the Koszul sign of the shifted
/// degrees `deg − 1`.
fn shuffles(model: &DgaModel, a: &[usize], b: &[usize]) -> Vec<(Vec<usize>, bool)> {
    if a.is_empty() {
        return vec![(b.to_vec(), false)];
    }
    if b.is_empty() {
        return vec![(a.to_vec(), false)];
    }
    let shifted = |x: usize| (model.degree(x) as i64 - 1).rem_euclid(2) == 1;
    let mut out = Vec::new();
    for (mut w, s) in shuffles(model, &a[1..], b) {
        w.insert(0, a[0]);
        out.push((w, s));
    }
    // b[0] passes every letter of a
    let passes = a.iter().filter(|&&x| shifted(x)).count() % 2 == 1 && shifted(b[0]);
    for (mut w, s) in shuffles(model, a, &b[1..]) {
        w.insert(0, b[0]);
        out.push((w, s ^ passes));
    }
    out
}

/// Signed shuffle product. Reduced elements multiply to reduced ones;
/// circular ones also multiply their coefficients.
pub fn shuffle_product(e1: &BarElement, e2: &BarElement, model: &DgaModel) -> Result<BarElement> {
    e1.check(model)?;
    e2.check(model)?;
    let mut out = BarElement::zero();
    for (w1, c1) in e1.terms() {
        for (w2, c2) in e2.terms() {
            let rights: Vec<(Option<usize>, Rational)> = match (w1.right, w2.right) {
                (None, None) => vec![(None, Rational::one())],
                (Some(a), Some(b)) => {
                    // move a past the letters of w2
                    let bar2: i64 = w2.letters.iter().map(|&x| model.degree(x) as i64 - 1).sum();
                    let s = sign((model.degree(a) as i64 * bar2) % 2 != 0);
                    let prod: &Vector = model.product(a, b);
                    prod.iter().map(|(k, c)| (Some(*k), c * &s)).collect()
                }
                _ => {
                    return Err(Error::usage(
                        "cannot shuffle a reduced bar element with a circular one",
                    ))
                }
            };
            for (word, odd) in shuffles(model, &w1.letters, &w2.letters) {
                let base = c1 * c2 * sign(odd);
                for (right, rc) in &rights {
                    out.add_term(
                        BarWord {
                            letters: word.clone(),
                            right: *right,
                        },
                        &base * rc,
                    );
                }
            }
        }
    }
    Ok(out)
}

/// All bar words of length `len` over the letters of positive degree.
pub fn basis_words(model: &DgaModel, len: usize) -> Vec<Vec<usize>> {
    let letters: Vec<usize> = (0..model.dim()).filter(|&i| model.degree(i) > 0).collect();
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                letters.iter().map(move |&l| {
                    let mut v = w.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_model_merge_term() {
        let m = DgaModel::closed_surface(1);
        let e = BarElement::parse(&m, "[xi1|eta1]").unwrap();
        let d = bar_differential(&e, &m).unwrap();
        assert_eq!(d, BarElement::parse(&m, "-[omega]").unwrap());
    }

    #[test]
    fn open_model_is_trivial() {
        let m = DgaModel::open_surface(1, 1);
        let e = BarElement::parse(&m, "[xi1|eta1] + 2*[zeta1|xi1|eta1]").unwrap();
        assert!(bar_differential(&e, &m).unwrap().is_zero());
    }

    #[test]
    fn d_squared_vanishes_on_closed_model() {
        let m = DgaModel::closed_surface(2);
        for len in 0..=4 {
            for w in basis_words(&m, len) {
                for right in std::iter::once(None).chain((0..m.dim()).map(Some)) {
                    let e = BarElement::from_word(
                        BarWord {
                            letters: w.clone(),
                            right,
                        },
                        Rational::one(),
                    );
                    let dd = bar_differential(&bar_differential(&e, &m).unwrap(), &m).unwrap();
                    assert!(dd.is_zero(), "{} -> {}", e.display(&m), dd.display(&m));
                }
            }
        }
    }

    /// `1, u, v` with `du = v`, all products of positive-degree elements 0.
    pub(crate) fn acyclic_model() -> DgaModel {
        let dim = 3;
        let mut products = vec![vec![Vector::new(); dim]; dim];
        for i in 0..dim {
            products[0][i].insert(i, Rational::one());
            products[i][0].insert(i, Rational::one());
        }
        let mut differential = vec![Vector::new(); dim];
        differential[1].insert(2, Rational::one());
        DgaModel::new(
            vec!["1".into(), "u".into(), "v".into()],
            vec![0, 1, 2],
            differential,
            products,
            vec![Rational::one(), Rational::zero(), Rational::zero()],
        )
        .unwrap()
    }

    #[test]
    fn d_squared_vanishes_with_nonzero_differential() {
        let m = acyclic_model();
        for len in 0..=4 {
            for w in basis_words(&m, len) {
                for right in std::iter::once(None).chain((0..m.dim()).map(Some)) {
                    let e = BarElement::from_word(
                        BarWord {
                            letters: w.clone(),
                            right,
                        },
                        Rational::one(),
                    );
                    let dd = bar_differential(&bar_differential(&e, &m).unwrap(), &m).unwrap();
                    assert!(dd.is_zero(), "{} -> {}", e.display(&m), dd.display(&m));
                }
            }
        }
    }

    #[test]
    fn shuffle_examples() {
        let m = DgaModel::open_surface(1, 0);
        let a = BarElement::parse(&m, "[xi1]").unwrap();
        let b = BarElement::parse(&m, "[eta1]").unwrap();
        assert_eq!(
            shuffle_product(&a, &b, &m).unwrap(),
            BarElement::parse(&m, "[xi1|eta1] + [eta1|xi1]").unwrap()
        );
        assert_eq!(shuffle_product(&BarElement::unit(), &a, &m).unwrap(), a);
    }

    #[test]
    fn parse_display_round_trip() {
        let m = DgaModel::closed_surface(1);
        let e = BarElement::parse(&m, "-1/2*[xi1|eta1] + [ ] + 3*[omega]xi1").unwrap();
        assert_eq!(BarElement::parse(&m, &e.display(&m)).unwrap(), e);
        assert!(matches!(
            BarElement::parse(&m, "[xi9]"),
            Err(Error::Parse { .. })
        ));
        assert!(BarElement::parse(&m, "[1]").is_err());
    }
}

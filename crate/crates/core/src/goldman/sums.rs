//! Rational combinations of loop classes, paths and pairs of paths.

use crate::error::{Error, Result};
use crate::surface::{cyclic_normal_form, FreeWord, LoopClass, Path, SurfaceSpec};
use crate::tensoralg::{fmt_rational, parse_rational, Rational};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

fn add_into<K: Ord>(map: &mut BTreeMap<K, Rational>, key: K, c: Rational) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
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

/// Splits `"2*a1 b1 - 1/2*b1' + c1"` into (coefficient, word text,
/// offset) triples. A `-` between terms negates the following term.
fn parse_terms(text: &str) -> Result<Vec<(Rational, String, usize)>> {
    // (negated, start, end) of each term
    let mut spans = Vec::new();
    let mut start = 0;
    let mut negated = false;
    for (i, ch) in text.char_indices() {
        if ch != '+' && ch != '-' {
            continue;
        }
        let before = text[start..i].trim_end();
        if before.is_empty() && ch == '-' && !negated {
            // leading sign of the first term or of a coefficient
            continue;
        }
        if before.ends_with('*') || before.ends_with('/') {
            continue;
        }
        spans.push((negated, start, i));
        negated = ch == '-';
        start = i + 1;
    }
    spans.push((negated, start, text.len()));
    let mut out = Vec::new();
    for (neg, base, end) in spans {
        let part = &text[base..end];
        if part.trim().is_empty() {
            return Err(Error::Parse {
                position: base,
                message: "empty term".into(),
            });
        }
        let (coeff, word, at) = match part.split_once('*') {
            Some((c, w)) => {
                let coeff = parse_rational(c.trim()).map_err(|_| Error::Parse {
                    position: base,
                    message: format!("bad coefficient `{}`", c.trim()),
                })?;
                (coeff, w.to_string(), base + c.len() + 1)
            }
            None => {
                let t = part.trim_start();
                match t.strip_prefix('-') {
                    Some(rest) => (-Rational::one(), rest.to_string(), end - rest.len()),
                    None => (Rational::one(), part.to_string(), base),
                }
            }
        };
        out.push((if neg { -coeff } else { coeff }, word, at));
    }
    Ok(out)
}

fn shift_position(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { position, message } => Error::Parse {
            position: position + by,
            message,
        },
        other => other,
    }
}

/// Element of the free vector space on free homotopy classes of loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopSum {
    spec: SurfaceSpec,
    twist: i32,
    terms: BTreeMap<LoopClass, Rational>,
}

impl LoopSum {
    pub fn zero(spec: SurfaceSpec) -> Self {
        LoopSum {
            spec,
            twist: 0,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_class(spec: SurfaceSpec, class: LoopClass) -> Self {
        let mut s = Self::zero(spec);
        s.add_term(class, Rational::one());
        s
    }

    pub fn from_word(spec: SurfaceSpec, w: &FreeWord) -> Self {
        Self::from_class(spec, cyclic_normal_form(w))
    }

    /// The class of the constant loop.
    pub fn unit(spec: SurfaceSpec) -> Self {
        Self::from_class(spec, LoopClass::trivial())
    }

    /// Parses `coeff*word + coeff*word + ...`; a missing coefficient is 1.
    pub fn parse(spec: SurfaceSpec, text: &str) -> Result<Self> {
        let mut s = Self::zero(spec);
        for (c, w, at) in parse_terms(text)? {
            let word = spec.parse_word(&w).map_err(|e| shift_position(e, at))?;
            s.add_term(cyclic_normal_form(&word), c);
        }
        Ok(s)
    }

    pub fn spec(&self) -> SurfaceSpec {
        self.spec
    }

    pub fn twist(&self) -> i32 {
        self.twist
    }

    pub fn with_twist(mut self, twist: i32) -> Self {
        self.twist = twist;
        self
    }

    pub fn terms(&self) -> &BTreeMap<LoopClass, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, c: &LoopClass) -> Rational {
        self.terms.get(c).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, class: LoopClass, c: Rational) {
        add_into(&mut self.terms, class, c);
    }

    pub fn check_same_surface(&self, other: &LoopSum) -> Result<()> {
        if self.spec != other.spec {
            return Err(Error::usage("loop sums live on different surfaces"));
        }
        Ok(())
    }

    pub fn add(&self, other: &LoopSum) -> Result<LoopSum> {
        self.check_same_surface(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &LoopSum) -> Result<LoopSum> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> LoopSum {
        let mut out = LoopSum::zero(self.spec).with_twist(self.twist);
        for (k, a) in &self.terms {
            out.add_term(k.clone(), a * c);
        }
        out
    }

    /// Sum of coefficients (the augmentation).
    pub fn augmentation(&self) -> Rational {
        self.terms.values().sum()
    }

    pub fn display(&self) -> String {
        display_terms(self.terms.iter().map(|(k, c)| (self.spec.format_word(k.word()), c)))
    }
}

/// Rational combination of paths sharing their endpoint tags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathSum {
    spec: SurfaceSpec,
    from: usize,
    to: usize,
    twist: i32,
    terms: BTreeMap<FreeWord, Rational>,
}

impl PathSum {
    pub fn zero(spec: SurfaceSpec, from: usize, to: usize) -> Result<Self> {
        if from >= spec.boundaries() || to >= spec.boundaries() {
            return Err(Error::usage("basepoint tag out of range"));
        }
        Ok(PathSum {
            spec,
            from,
            to,
            twist: 0,
            terms: BTreeMap::new(),
        })
    }

    pub fn from_path(spec: SurfaceSpec, p: &Path) -> Result<Self> {
        let mut s = Self::zero(spec, p.from, p.to)?;
        spec.check_word(&p.word)?;
        s.add_term(p.word.clone(), Rational::one());
        Ok(s)
    }

    pub fn parse(spec: SurfaceSpec, from: usize, to: usize, text: &str) -> Result<Self> {
        let mut s = Self::zero(spec, from, to)?;
        for (c, w, at) in parse_terms(text)? {
            let word = spec.parse_word(&w).map_err(|e| shift_position(e, at))?;
            s.add_term(word, c);
        }
        Ok(s)
    }

    pub fn spec(&self) -> SurfaceSpec {
        self.spec
    }

    pub fn from_tag(&self) -> usize {
        self.from
    }

    pub fn to_tag(&self) -> usize {
        self.to
    }

    pub fn twist(&self) -> i32 {
        self.twist
    }

    pub fn with_twist(mut self, twist: i32) -> Self {
        self.twist = twist;
        self
    }

    pub fn terms(&self) -> &BTreeMap<FreeWord, Rational> {
        &self.terms
    }

    pub fn paths(&self) -> impl Iterator<Item = (Path, &Rational)> + '_ {
        self.terms.iter().map(|(w, c)| {
            (
                Path {
                    from: self.from,
                    to: self.to,
                    word: w.clone(),
                },
                c,
            )
        })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, word: FreeWord, c: Rational) {
        add_into(&mut self.terms, word, c);
    }

    fn check_compatible(&self, other: &PathSum) -> Result<()> {
        if self.spec != other.spec || self.from != other.from || self.to != other.to {
            return Err(Error::usage("path sums have different surfaces or endpoints"));
        }
        Ok(())
    }

    pub fn add(&self, other: &PathSum) -> Result<PathSum> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &PathSum) -> Result<PathSum> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> PathSum {
        let mut out = self.clone();
        out.terms.clear();
        for (k, a) in &self.terms {
            out.add_term(k.clone(), a * c);
        }
        out
    }

    /// Bilinear concatenation `self · other`; endpoints must match.
    pub fn compose(&self, other: &PathSum) -> Result<PathSum> {
        if self.spec != other.spec || self.to != other.from {
            return Err(Error::usage("path endpoints do not compose"));
        }
        let mut out = PathSum::zero(self.spec, self.from, other.to)?
            .with_twist(self.twist + other.twist);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.mul(v), a * b);
            }
        }
        Ok(out)
    }

    pub fn display(&self) -> String {
        display_terms(self.terms.iter().map(|(k, c)| (self.spec.format_word(k), c)))
    }
}

/// Rational combination of ordered pairs of paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathPairSum {
    spec: SurfaceSpec,
    twist: i32,
    terms: BTreeMap<(Path, Path), Rational>,
}

impl PathPairSum {
    pub fn zero(spec: SurfaceSpec) -> Self {
        PathPairSum {
            spec,
            twist: 0,
            terms: BTreeMap::new(),
        }
    }

    pub fn spec(&self) -> SurfaceSpec {
        self.spec
    }

    pub fn twist(&self) -> i32 {
        self.twist
    }

    pub fn with_twist(mut self, twist: i32) -> Self {
        self.twist = twist;
        self
    }

    pub fn terms(&self) -> &BTreeMap<(Path, Path), Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, left: Path, right: Path, c: Rational) {
        add_into(&mut self.terms, (left, right), c);
    }

    pub fn scale(&self, c: &Rational) -> PathPairSum {
        let mut out = PathPairSum::zero(self.spec).with_twist(self.twist);
        for ((l, r), a) in &self.terms {
            out.add_term(l.clone(), r.clone(), a * c);
        }
        out
    }

    pub fn display(&self) -> String {
        display_terms(self.terms.iter().map(|((l, r), c)| {
            (
                format!(
                    "[{}->{}: {}] ⊗ [{}->{}: {}]",
                    l.from,
                    l.to,
                    self.spec.format_word(&l.word),
                    r.from,
                    r.to,
                    self.spec.format_word(&r.word)
                ),
                c,
            )
        }))
    }
}

fn display_terms<'a>(terms: impl Iterator<Item = (String, &'a Rational)>) -> String {
    let parts: Vec<String> = terms
        .map(|(w, c)| {
            if c.is_one() {
                format!("|{w}|")
            } else {
                format!("{}*|{w}|", fmt_rational(c))
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

//! Goldman bracket, Kawazumi–Kuno action, the path bi-pairing and Adams
//! operations, computed from crossings of drawn representatives.

use super::draw::{pair_crossings, Crossing, Curve, StrandOrder};
use super::sums::{LoopSum, PathPairSum, PathSum};
use crate::error::{Error, Result};
use crate::surface::{cyclic_normal_form, FreeWord, Letter, LoopClass, Path, RibbonStructure};
use crate::tensoralg::Rational;
use rayon::prelude::*;

/// One crossing with the term it produces, for `--trace` output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub first_term: usize,
    pub second_term: usize,
    pub crossing: Crossing,
    pub result: String,
}

fn rotated(letters: &[Letter], i: usize) -> Vec<Letter> {
    let m = letters.len();
    let i = i % m;
    let mut v = letters[i..].to_vec();
    v.extend_from_slice(&letters[..i]);
    v
}

/// Bracket of two classes: list of (sign, resulting class).
pub fn bracket_classes(
    rib: &RibbonStructure,
    u: &LoopClass,
    v: &LoopClass,
    order: StrandOrder,
) -> Vec<(Crossing, LoopClass)> {
    let (ul, vl) = (u.word().letters(), v.word().letters());
    if ul.is_empty() || vl.is_empty() {
        return Vec::new();
    }
    pair_crossings(rib, Curve::Loop(ul), Curve::Loop(vl), order)
        .into_iter()
        .map(|c| {
            let mut w = rotated(ul, c.first + 1);
            w.extend(rotated(vl, c.second + 1));
            (c, cyclic_normal_form(&FreeWord::new(w)))
        })
        .collect()
}

/// Loop `u` acting on path `γ`: list of (sign, resulting path word).
pub fn kk_classes(
    rib: &RibbonStructure,
    u: &LoopClass,
    gamma: &Path,
    order: StrandOrder,
) -> Vec<(Crossing, FreeWord)> {
    let ul = u.word().letters();
    let gl = gamma.word.letters();
    if ul.is_empty() {
        return Vec::new();
    }
    let curve = Curve::Path {
        letters: gl,
        from: gamma.from,
        to: gamma.to,
    };
    pair_crossings(rib, Curve::Loop(ul), curve, order)
        .into_iter()
        .map(|c| {
            let j = c.second;
            let mut w = gl[..j].to_vec();
            w.extend(rotated(ul, c.first + 1));
            w.extend_from_slice(&gl[j..]);
            (c, FreeWord::new(w))
        })
        .collect()
}

/// Two paths with disjoint endpoints: list of (sign, (left, right)).
pub fn bipair_paths(
    rib: &RibbonStructure,
    p: &Path,
    q: &Path,
    order: StrandOrder,
) -> Vec<(Crossing, (Path, Path))> {
    let (pl, ql) = (p.word.letters(), q.word.letters());
    let cp = Curve::Path {
        letters: pl,
        from: p.from,
        to: p.to,
    };
    let cq = Curve::Path {
        letters: ql,
        from: q.from,
        to: q.to,
    };
    pair_crossings(rib, cp, cq, order)
        .into_iter()
        .map(|c| {
            let (i, j) = (c.first, c.second);
            let mut lw = pl[..i].to_vec();
            lw.extend_from_slice(&ql[j..]);
            let mut rw = ql[..j].to_vec();
            rw.extend_from_slice(&pl[i..]);
            let left = Path {
                from: p.from,
                to: q.to,
                word: FreeWord::new(lw),
            };
            let right = Path {
                from: q.from,
                to: p.to,
                word: FreeWord::new(rw),
            };
            (c, (left, right))
        })
        .collect()
}

fn sign_rat(s: i32) -> Rational {
    Rational::from_integer(s.into())
}

pub fn goldman_bracket(u: &LoopSum, v: &LoopSum) -> Result<LoopSum> {
    goldman_bracket_with(u, v, StrandOrder::Forward)
}

pub fn goldman_bracket_with(u: &LoopSum, v: &LoopSum, order: StrandOrder) -> Result<LoopSum> {
    u.check_same_surface(v)?;
    let rib = RibbonStructure::new(&u.spec());
    let pairs: Vec<_> = u
        .terms()
        .iter()
        .flat_map(|a| v.terms().iter().map(move |b| (a, b)))
        .collect();
    let parts: Vec<Vec<(LoopClass, Rational)>> = pairs
        .par_iter()
        .map(|((cu, au), (cv, av))| {
            let coeff = *au * *av;
            bracket_classes(&rib, cu, cv, order)
                .into_iter()
                .map(|(c, k)| (k, &coeff * sign_rat(c.sign)))
                .collect()
        })
        .collect();
    let mut out = LoopSum::zero(u.spec()).with_twist(u.twist() + v.twist() + 1);
    for (k, c) in parts.into_iter().flatten() {
        out.add_term(k, c);
    }
    Ok(out)
}

pub fn kk_action(u: &LoopSum, gamma: &PathSum) -> Result<PathSum> {
    kk_action_with(u, gamma, StrandOrder::Forward)
}

pub fn kk_action_with(u: &LoopSum, gamma: &PathSum, order: StrandOrder) -> Result<PathSum> {
    if u.spec() != gamma.spec() {
        return Err(Error::usage("loop sum and path sum live on different surfaces"));
    }
    let rib = RibbonStructure::new(&u.spec());
    let pairs: Vec<_> = u
        .terms()
        .iter()
        .flat_map(|a| gamma.paths().map(move |b| (a, b)))
        .collect();
    let parts: Vec<Vec<(FreeWord, Rational)>> = pairs
        .par_iter()
        .map(|((cu, au), (p, ap))| {
            let coeff = *au * *ap;
            kk_classes(&rib, cu, p, order)
                .into_iter()
                .map(|(c, w)| (w, &coeff * sign_rat(c.sign)))
                .collect()
        })
        .collect();
    let mut out = PathSum::zero(u.spec(), gamma.from_tag(), gamma.to_tag())?
        .with_twist(u.twist() + gamma.twist() + 1);
    for (w, c) in parts.into_iter().flatten() {
        out.add_term(w, c);
    }
    Ok(out)
}

pub fn bi_pairing(p: &PathSum, q: &PathSum) -> Result<PathPairSum> {
    bi_pairing_with(p, q, StrandOrder::Forward)
}

pub fn bi_pairing_with(p: &PathSum, q: &PathSum, order: StrandOrder) -> Result<PathPairSum> {
    if p.spec() != q.spec() {
        return Err(Error::usage("path sums live on different surfaces"));
    }
    let a = [p.from_tag(), p.to_tag()];
    let b = [q.from_tag(), q.to_tag()];
    if a.iter().any(|t| b.contains(t)) {
        return Err(Error::usage("bi-pairing needs disjoint endpoint tags"));
    }
    let rib = RibbonStructure::new(&p.spec());
    let mut out = PathPairSum::zero(p.spec()).with_twist(p.twist() + q.twist() + 1);
    for (pp, cp) in p.paths() {
        for (qq, cq) in q.paths() {
            let coeff = cp * cq;
            for (c, (l, r)) in bipair_paths(&rib, &pp, &qq, order) {
                out.add_term(l, r, &coeff * sign_rat(c.sign));
            }
        }
    }
    Ok(out)
}

/// Adams operation: the class of the `n`-th power.
pub fn adams(n: u32, u: &LoopClass) -> LoopClass {
    u.power(n as i64)
}

pub fn adams_sum(n: u32, u: &LoopSum) -> LoopSum {
    let mut out = LoopSum::zero(u.spec()).with_twist(u.twist());
    for (k, c) in u.terms() {
        out.add_term(adams(n, k), c.clone());
    }
    out
}

/// Crossings behind a bracket, in term order, for debugging.
pub fn bracket_trace(u: &LoopSum, v: &LoopSum, order: StrandOrder) -> Result<Vec<TraceEntry>> {
    u.check_same_surface(v)?;
    let spec = u.spec();
    let rib = RibbonStructure::new(&spec);
    let mut out = Vec::new();
    for (i, cu) in u.terms().keys().enumerate() {
        for (j, cv) in v.terms().keys().enumerate() {
            for (c, k) in bracket_classes(&rib, cu, cv, order) {
                out.push(TraceEntry {
                    first_term: i,
                    second_term: j,
                    crossing: c,
                    result: spec.format_word(k.word()),
                });
            }
        }
    }
    Ok(out)
}

pub fn kk_trace(u: &LoopSum, gamma: &PathSum, order: StrandOrder) -> Result<Vec<TraceEntry>> {
    let spec = u.spec();
    let rib = RibbonStructure::new(&spec);
    let mut out = Vec::new();
    for (i, cu) in u.terms().keys().enumerate() {
        for (j, (p, _)) in gamma.paths().enumerate() {
            for (c, w) in kk_classes(&rib, cu, &p, order) {
                out.push(TraceEntry {
                    first_term: i,
                    second_term: j,
                    crossing: c,
                    result: spec.format_word(&w),
                });
            }
        }
    }
    Ok(out)
}

pub fn bipair_trace(p: &PathSum, q: &PathSum, order: StrandOrder) -> Result<Vec<TraceEntry>> {
    let spec = p.spec();
    let rib = RibbonStructure::new(&spec);
    let mut out = Vec::new();
    for (i, (pp, _)) in p.paths().enumerate() {
        for (j, (qq, _)) in q.paths().enumerate() {
            for (c, (l, r)) in bipair_paths(&rib, &pp, &qq, order) {
                out.push(TraceEntry {
                    first_term: i,
                    second_term: j,
                    crossing: c,
                    result: format!("{} ⊗ {}", spec.format_word(&l.word), spec.format_word(&r.word)),
                });
            }
        }
    }
    Ok(out)
}

//! Free Lie algebra helpers: Lyndon words, their standard bracketings and
//! the left-normed bracketing map used for Dynkin-type decompositions.

use super::{Gen, Monomial, Rational, Signature, TensorSeries};
use num_traits::Zero;
use std::collections::HashMap;

/// All words of weighted degree exactly `d`.
pub fn words_of_weight(sig: &Signature, d: u32) -> Vec<Vec<Gen>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(sig: &Signature, left: u32, cur: &mut Vec<Gen>, out: &mut Vec<Vec<Gen>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for g in 0..sig.num_gens() as Gen {
            let w = sig.weight(g);
            if w <= left {
                cur.push(g);
                rec(sig, left - w, cur, out);
                cur.pop();
            }
        }
    }
    if d > 0 {
        rec(sig, d, &mut cur, &mut out);
    }
    out
}

/// A nonempty word strictly smaller than each of its proper rotations.
pub fn is_lyndon(w: &[Gen]) -> bool {
    let n = w.len();
    if n == 0 {
        return false;
    }
    (1..n).all(|i| {
        let rot = w[i..].iter().chain(&w[..i]);
        w.iter().lt(rot)
    })
}

/// Lyndon words of weighted degree `d`, in increasing order.
pub fn lyndon_words(sig: &Signature, d: u32) -> Vec<Vec<Gen>> {
    let mut v: Vec<_> = words_of_weight(sig, d)
        .into_iter()
        .filter(|w| is_lyndon(w))
        .collect();
    v.sort();
    v
}

/// Standard bracketing of a Lyndon word: `P(w) = [P(u), P(v)]` with `v` the
/// longest proper Lyndon suffix.
pub fn lyndon_bracket(sig: Signature, trunc: u32, w: &[Gen]) -> TensorSeries {
    if w.len() == 1 {
        return TensorSeries::generator(sig, trunc, w[0]);
    }
    let split = (1..w.len())
        .find(|&i| is_lyndon(&w[i..]))
        .expect("a Lyndon word of length >= 2 has a proper Lyndon suffix");
    let left = lyndon_bracket(sig, trunc, &w[..split]);
    let right = lyndon_bracket(sig, trunc, &w[split..]);
    &(&left * &right) - &(&right * &left)
}

/// Left-normed bracketing `rho(v1 v2 ... vm) = [..[v1, v2], ..., vm]`,
/// extended linearly. On Lie elements of word length `m` it is `m` times
/// the identity.
pub fn left_normed(s: &TensorSeries) -> TensorSeries {
    let sig = s.signature();
    let mut acc: HashMap<Monomial, Rational> = HashMap::new();
    for (m, c) in s.terms() {
        let w = m.word();
        if w.is_empty() {
            continue;
        }
        // expand [..[w1,w2],..,wm] as signed words
        let mut cur: Vec<(Vec<Gen>, bool)> = vec![(vec![w[0]], false)];
        for &g in &w[1..] {
            let mut next = Vec::with_capacity(cur.len() * 2);
            for (u, neg) in cur {
                let mut a = u.clone();
                a.push(g);
                next.push((a, neg));
                let mut b = Vec::with_capacity(u.len() + 1);
                b.push(g);
                b.extend(u);
                next.push((b, !neg));
            }
            cur = next;
        }
        for (u, neg) in cur {
            let e = acc
                .entry(Monomial::new(&sig, u))
                .or_insert_with(Rational::zero);
            if neg {
                *e -= c;
            } else {
                *e += c;
            }
        }
    }
    TensorSeries::from_map(sig, s.truncation(), acc)
}

/// Writes a Lie element `e` with no constant or linear part as
/// `sum_v [A_v, v]`; returns `A_v` for every generator `v`.
pub fn dynkin_decomposition(e: &TensorSeries) -> Vec<TensorSeries> {
    let sig = e.signature();
    let n = e.truncation();
    // group terms by (last letter, word length)
    let mut parts: HashMap<(Gen, usize), TensorSeries> = HashMap::new();
    for (m, c) in e.terms() {
        let w = m.word();
        let Some((&last, init)) = w.split_last() else {
            continue;
        };
        parts
            .entry((last, w.len()))
            .or_insert_with(|| TensorSeries::zero(sig, n))
            .add_term(Monomial::new(&sig, init.to_vec()), c.clone());
    }
    let mut out = vec![TensorSeries::zero(sig, n); sig.num_gens()];
    let mut keys: Vec<_> = parts.keys().copied().collect();
    keys.sort();
    for key in keys {
        let (v, len) = key;
        let rho = left_normed(&parts[&key]);
        let scaled = rho.scale(&Rational::new(1.into(), (len as i64).into()));
        out[v as usize] = &out[v as usize] + &scaled;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lyndon_counts() {
        // two weight-one letters: necklace counts 2,1,2,3,6
        let sig = Signature::new(1, 0);
        let counts: Vec<usize> = (1..=5).map(|d| lyndon_words(&sig, d).len()).collect();
        assert_eq!(counts, vec![2, 1, 2, 3, 6]);
        for d in 1..=4 {
            for w in lyndon_words(&sig, d) {
                assert!(lyndon_bracket(sig, 5, &w).is_primitive());
            }
        }
    }

    #[test]
    fn dynkin_reassembles() {
        let sig = Signature::new(1, 1);
        let n = 6;
        let g = |i| TensorSeries::generator(sig, n, i);
        let e = &g(0).lie_bracket(&g(2)).unwrap().lie_bracket(&g(1)).unwrap()
            + &g(0).lie_bracket(&g(1)).unwrap();
        let a = dynkin_decomposition(&e);
        let mut back = TensorSeries::zero(sig, n);
        for (v, av) in a.iter().enumerate() {
            back = &back + &av.lie_bracket(&g(v as Gen)).unwrap();
        }
        assert_eq!(back, e);
    }
}

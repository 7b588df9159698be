//! Algebraic identities of the truncated weighted tensor algebra.

use goldman_forge::tensoralg::{
    fmt_rational, lie::dynkin_decomposition, parse_rational, q, Derivation, Gen, Monomial, Rational, Signature,
    Substitution, TensorSeries,
};
use proptest::prelude::*;

const TRUNC: u32 = 4;

fn sig() -> Signature {
    Signature::new(1, 1)
}

fn build(terms: &[(Vec<Gen>, i64, i64)]) -> TensorSeries {
    let s = sig();
    let mut out = TensorSeries::zero(s, TRUNC);
    for (w, n, d) in terms {
        if s.word_weight(w) <= TRUNC {
            out.add_term(Monomial::new(&s, w.clone()), q(*n, *d));
        }
    }
    out
}

fn series() -> impl Strategy<Value = TensorSeries> {
    prop::collection::vec((prop::collection::vec(0u8..3, 0..4), -3i64..=3, 1i64..=3), 0..6)
        .prop_map(|t| build(&t.into_iter().map(|(w, n, d)| (w.into_iter().map(Gen::from).collect(), n, d)).collect::<Vec<_>>()))
}

fn augmented() -> impl Strategy<Value = TensorSeries> {
    series().prop_map(|s| {
        let c = s.constant_term();
        &s - &TensorSeries::scalar(sig(), TRUNC, c)
    })
}

fn high_part(s: &TensorSeries, from: u32) -> TensorSeries {
    s.weight_split()
        .into_iter()
        .filter(|(w, _)| *w >= from)
        .fold(TensorSeries::zero(s.signature(), s.truncation()), |acc, (_, p)| &acc + &p)
}

/// Random Lie element: a combination of generators and their brackets.
fn lie_element() -> impl Strategy<Value = TensorSeries> {
    prop::collection::vec((0u8..3, 0u8..3, -2i64..=2, -2i64..=2), 1..4).prop_map(|v| {
        let s = sig();
        let mut out = TensorSeries::zero(s, TRUNC);
        for (a, b, c1, c2) in v {
            let ga = TensorSeries::generator(s, TRUNC, a.into());
            let gb = TensorSeries::generator(s, TRUNC, b.into());
            out = &out + &ga.scale(&q(c1, 1));
            out = &out + &ga.lie_bracket(&gb).unwrap().scale(&q(c2, 1));
        }
        out
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_is_associative(a in series(), b in series(), c in series()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn multiplication_distributes(a in series(), b in series(), c in series()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn exp_and_log_are_inverse(p in augmented()) {
        prop_assert_eq!(p.exp().unwrap().log().unwrap(), p.clone());
        let one_plus = &TensorSeries::one(sig(), TRUNC) + &p;
        prop_assert_eq!(one_plus.log().unwrap().exp().unwrap(), one_plus);
    }

    #[test]
    fn inverse_is_two_sided(p in augmented()) {
        let u = &TensorSeries::one(sig(), TRUNC) + &p;
        let inv = u.inverse().unwrap();
        prop_assert_eq!(&u * &inv, TensorSeries::one(sig(), TRUNC));
        prop_assert_eq!(&inv * &u, TensorSeries::one(sig(), TRUNC));
    }

    #[test]
    fn lie_elements_exponentiate_to_group_likes(a in lie_element(), b in lie_element()) {
        prop_assert!(a.is_primitive());
        prop_assert!(a.exp().unwrap().is_group_like());
        let c = a.bch(&b).unwrap();
        prop_assert!(c.is_primitive());
        prop_assert_eq!(c.exp().unwrap(), &a.exp().unwrap() * &b.exp().unwrap());
    }

    #[test]
    fn dynkin_decomposition_reassembles(a in lie_element()) {
        let s = sig();
        // drop the linear part: single letters of either weight
        let mut e = a.clone();
        for g in 0..3 {
            let c = a.coeff_of(&[g]);
            e = &e - &TensorSeries::generator(s, TRUNC, g).scale(&c);
        }
        let parts = dynkin_decomposition(&e);
        let mut total = TensorSeries::zero(s, TRUNC);
        for (v, part) in parts.iter().enumerate() {
            let gen = TensorSeries::generator(s, TRUNC, v as Gen);
            total = &total + &part.lie_bracket(&gen).unwrap();
        }
        prop_assert_eq!(total, e);
    }

    #[test]
    fn derivations_obey_leibniz(ims in prop::collection::vec(augmented(), 3), a in series(), b in series()) {
        // degree-nondecreasing, so truncation commutes with the derivation
        let ims = ims.iter().enumerate().map(|(g, im)| high_part(im, sig().weight(g as Gen))).collect();
        let d = Derivation::new(ims).unwrap();
        let lhs = d.apply(&(&a * &b)).unwrap();
        let rhs = &(&d.apply(&a).unwrap() * &b) + &(&a * &d.apply(&b).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitutions_are_multiplicative(extra in prop::collection::vec(augmented(), 3), a in series(), b in series()) {
        // generator plus terms of higher weight, so the images are admissible
        let s = sig();
        let ims: Vec<TensorSeries> = extra
            .iter()
            .enumerate()
            .map(|(g, e)| {
                let g = g as Gen;
                &TensorSeries::generator(s, TRUNC, g) + &high_part(e, s.weight(g) + 1)
            })
            .collect();
        let phi = Substitution::new(ims).unwrap();
        prop_assert_eq!(phi.apply(&(&a * &b)).unwrap(), &phi.apply(&a).unwrap() * &phi.apply(&b).unwrap());
    }

    #[test]
    fn rationals_round_trip(n in -1000i64..1000, d in 1i64..1000) {
        let r = q(n, d);
        prop_assert_eq!(parse_rational(&fmt_rational(&r)).unwrap(), r);
    }
}

#[test]
fn bch_low_degree_coefficients() {
    // x + y + [x,y]/2 + ([x,[x,y]] - [y,[x,y]])/12 through degree 3
    let s = Signature::new(1, 0);
    let n = 3;
    let x = TensorSeries::generator(s, n, 0);
    let y = TensorSeries::generator(s, n, 1);
    let xy = x.lie_bracket(&y).unwrap();
    let want = &(&(&x + &y) + &xy.scale(&q(1, 2)))
        + &(&x.lie_bracket(&xy).unwrap() - &y.lie_bracket(&xy).unwrap()).scale(&q(1, 12));
    assert_eq!(x.bch(&y).unwrap(), want);
}

#[test]
fn weights_and_truncation() {
    let s = sig();
    let z = TensorSeries::generator(s, 3, 2);
    assert_eq!(z.valuation(), Some(2));
    assert!((&z * &z).is_zero());
    let x = TensorSeries::generator(s, 3, 0);
    assert_eq!((&x * &z).valuation(), Some(3));
    let e: Rational = x.exp().unwrap().coeff_of(&[0, 0, 0]);
    assert_eq!(e, q(1, 6));
}

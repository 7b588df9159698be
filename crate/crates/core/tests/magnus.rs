//! Magnus expansions, symplectic expansions, the necklace bracket and the
//! surface-algebra resolution.

use goldman_forge::goldman::LoopSum;
use goldman_forge::magnus::{
    gr_necklace_bracket, is_symplectic, kvi_automorphism, kvi_check, necklace_project, omega, resolution_check,
    solve_symplectic, transported_bracket, CyclicSeries, MagnusExpansion,
};
use goldman_forge::surface::SurfaceSpec;
use goldman_forge::tensoralg::{q, Gen, Monomial, Signature, TensorSeries};
use proptest::prelude::*;

#[test]
fn commutator_expands_to_the_bracket() {
    // log(e^x e^y e^-x e^-y) = [x,y] + [x+y,[x,y]]/2 + (degree >= 4)
    let sp = SurfaceSpec::new(1, 1).unwrap();
    let sig = sp.signature();
    let th = MagnusExpansion::default_for(sig, 3);
    let x = TensorSeries::generator(sig, 3, sig.x(1));
    let y = TensorSeries::generator(sig, 3, sig.y(1));
    let xy = x.lie_bracket(&y).unwrap();
    let want = &xy + &(&x + &y).lie_bracket(&xy).unwrap().scale(&q(1, 2));
    assert_eq!(th.expand(&sp.boundary_word()).log().unwrap(), want);
}

#[test]
fn symplectic_expansions_exist_and_are_certified() {
    for (g, p, n) in [(1, 0, 6), (2, 0, 5), (1, 1, 5), (0, 2, 5), (0, 3, 4)] {
        let th = solve_symplectic(g, p, n).unwrap();
        assert!(is_symplectic(&th).unwrap(), "({g},{p})");
        let sig = Signature::new(g, p);
        let spec = SurfaceSpec::new(g, p + 1).unwrap();
        assert_eq!(th.expand(&spec.boundary_word()).log().unwrap(), omega(sig, n));
        for (gen, im) in th.images().iter().enumerate() {
            assert!(im.is_group_like());
            let w = sig.weight(gen as Gen);
            let lead = im.coeff(&Monomial::new(&sig, vec![gen as Gen]));
            assert_eq!(lead, q(1, 1));
            assert_eq!((im - &TensorSeries::one(sig, n)).valuation(), Some(w));
        }
    }
}

#[test]
fn default_expansion_is_not_symplectic_in_genus_one() {
    let th = MagnusExpansion::default_for(Signature::new(1, 0), 4);
    assert!(!is_symplectic(&th).unwrap());
}

#[test]
fn kashiwara_vergne_automorphisms_pass() {
    for (g, p, n) in [(1, 0, 6), (2, 0, 5), (1, 1, 5)] {
        let th = solve_symplectic(g, p, n).unwrap();
        let cert = kvi_check(&kvi_automorphism(&th).unwrap()).unwrap();
        assert!(cert.passed(), "({g},{p}): {cert:?}");
        assert_eq!(cert.discrepancy_degree, None);
    }
}

#[test]
fn handle_letters_pair_to_a_constant() {
    let sig = Signature::new(1, 0);
    let n = 3;
    let nk = |g: Gen| necklace_project(&TensorSeries::generator(sig, n, g));
    let br = gr_necklace_bracket(&nk(sig.x(1)), &nk(sig.y(1))).unwrap();
    assert_eq!(br.constant_term(), q(1, 1));
    assert_eq!(br.terms().len(), 1);
    assert!(gr_necklace_bracket(&nk(sig.x(1)), &nk(sig.x(1))).unwrap().is_zero());
}

#[test]
fn lowest_part_of_the_transported_bracket() {
    let sp = SurfaceSpec::new(1, 1).unwrap();
    let th = solve_symplectic(1, 0, 4).unwrap();
    let a = LoopSum::parse(sp, "a1").unwrap();
    let b = LoopSum::parse(sp, "b1").unwrap();
    let t = transported_bracket(&a, &b, &th).unwrap();
    // |e^x e^y| starts with the constant necklace
    assert_eq!(t.constant_term(), q(1, 1));
    assert_eq!(t.twist(), 1);
}

#[test]
fn surface_algebra_dimensions() {
    // Hilbert series 1 / (1 - 2g t + t^2)
    for g in 1..=3usize {
        let report = resolution_check(g, 6).unwrap();
        assert!(report.passed());
        let (mut prev, mut cur) = (0u128, 1u128);
        for row in &report.rows {
            assert_eq!(row.dim_a_n, cur, "genus {g} degree {}", row.n);
            let next = 2 * g as u128 * cur - prev;
            prev = cur;
            cur = next;
        }
    }
    assert!(resolution_check(0, 3).is_err());
}

fn sig12() -> Signature {
    Signature::new(1, 2)
}

// Truncation well above any nested bracket, which lowers weight by two.
const NECK_TRUNC: u32 = 16;

fn necklace() -> impl Strategy<Value = CyclicSeries> {
    let sig = sig12();
    prop::collection::vec((prop::collection::vec(0u16..4, 1..4), -3i64..=3), 1..4).prop_map(move |terms| {
        let mut s = TensorSeries::zero(sig, NECK_TRUNC);
        for (w, c) in terms {
            s.add_term(Monomial::new(&sig, w), q(c, 1));
        }
        necklace_project(&s)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gr_bracket_is_antisymmetric(u in necklace(), v in necklace()) {
        let uv = gr_necklace_bracket(&u, &v).unwrap();
        let vu = gr_necklace_bracket(&v, &u).unwrap();
        prop_assert!(uv.add(&vu).is_zero());
    }

    #[test]
    fn gr_bracket_satisfies_jacobi(u in necklace(), v in necklace(), w in necklace()) {
        let br = |a: &CyclicSeries, b: &CyclicSeries| gr_necklace_bracket(a, b).unwrap();
        let total = br(&u, &br(&v, &w)).add(&br(&v, &br(&w, &u))).add(&br(&w, &br(&u, &v)));
        prop_assert!(total.is_zero());
    }

    #[test]
    fn constants_are_central(u in necklace()) {
        let one = necklace_project(&TensorSeries::one(sig12(), NECK_TRUNC));
        prop_assert!(gr_necklace_bracket(&one, &u).unwrap().is_zero());
    }
}

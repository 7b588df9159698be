//! Bar constructions and the Chen pairing: explicit iterated-integral
//! values, shuffle multiplicativity and path composition.

use goldman_forge::barcx::{
    bar_differential, basis_words, chen_pairing, dual_cs, shuffle_product, BarElement, BarWord, DgaModel,
};
use goldman_forge::surface::{FreeWord, SurfaceSpec};
use goldman_forge::tensoralg::{q, Rational};
use goldman_forge::verify::random_word;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn parse(m: &DgaModel, t: &str) -> BarElement {
    BarElement::parse(m, t).unwrap()
}

fn word(sp: &SurfaceSpec, t: &str) -> FreeWord {
    sp.parse_word(t).unwrap()
}

#[test]
fn iterated_integrals_of_short_loops() {
    let sp = SurfaceSpec::new(1, 1).unwrap();
    let m = DgaModel::open_surface(1, 0);
    let pair = |e: &str, w: &str| chen_pairing(&parse(&m, e), &word(&sp, w), &m).unwrap();
    // integrals of xi along a^k, and the double integral k^2/2
    assert_eq!(pair("[xi1]", "a1 a1 a1"), q(3, 1));
    assert_eq!(pair("[xi1|xi1]", "a1 a1 a1"), q(9, 2));
    assert_eq!(pair("[xi1]", "a1'"), q(-1, 1));
    // ordered integrals see the order of traversal
    assert_eq!(pair("[xi1|eta1]", "a1 b1"), q(1, 1));
    assert_eq!(pair("[eta1|xi1]", "a1 b1"), q(0, 1));
    // commutator: the area term
    assert_eq!(pair("[xi1|eta1] - [eta1|xi1]", "a1 b1 a1' b1'"), q(2, 1));
    assert_eq!(pair("[ ]", "a1 b1"), q(1, 1));
}

#[test]
fn closed_model_differential() {
    let m = DgaModel::closed_surface(1);
    assert_eq!(bar_differential(&parse(&m, "[xi1|eta1]"), &m).unwrap(), parse(&m, "-[omega]"));
    assert_eq!(bar_differential(&parse(&m, "[eta1|xi1]"), &m).unwrap(), parse(&m, "[omega]"));
    // the symmetrised element is closed
    assert!(bar_differential(&parse(&m, "[xi1|eta1] + [eta1|xi1]"), &m).unwrap().is_zero());
}

fn open_letters(m: &DgaModel) -> Vec<usize> {
    (0..m.dim()).filter(|&i| m.degree(i) == 1).collect()
}

fn random_element(m: &DgaModel, rng: &mut ChaCha8Rng, max_len: usize) -> BarElement {
    use rand::Rng;
    let letters = open_letters(m);
    let mut e = BarElement::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let len = rng.gen_range(0..=max_len);
        let w = (0..len).map(|_| letters[rng.gen_range(0..letters.len())]).collect();
        e.add_term(BarWord::reduced(w), q(rng.gen_range(-3..=3), rng.gen_range(1..=2)));
    }
    e
}

fn surfaces() -> impl Strategy<Value = (usize, usize)> {
    prop::sample::select(vec![(1, 1), (2, 1), (1, 2), (0, 3)])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn shuffle_is_commutative((g, b) in surfaces(), seed in any::<u64>()) {
        let m = DgaModel::open_surface(g, b - 1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (e1, e2) = (random_element(&m, &mut rng, 3), random_element(&m, &mut rng, 3));
        prop_assert_eq!(shuffle_product(&e1, &e2, &m).unwrap(), shuffle_product(&e2, &e1, &m).unwrap());
    }

    #[test]
    fn pairing_is_multiplicative((g, b) in surfaces(), seed in any::<u64>()) {
        let sp = SurfaceSpec::new(g, b).unwrap();
        let m = DgaModel::open_surface(g, b - 1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (e1, e2) = (random_element(&m, &mut rng, 3), random_element(&m, &mut rng, 3));
        let w = random_word(&mut rng, &sp, 6);
        let lhs = chen_pairing(&shuffle_product(&e1, &e2, &m).unwrap(), &w, &m).unwrap();
        let rhs = chen_pairing(&e1, &w, &m).unwrap() * chen_pairing(&e2, &w, &m).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pairing_deconcatenates_over_composition((g, b) in surfaces(), seed in any::<u64>()) {
        let sp = SurfaceSpec::new(g, b).unwrap();
        let m = DgaModel::open_surface(g, b - 1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (w1, w2) = (random_word(&mut rng, &sp, 5), random_word(&mut rng, &sp, 5));
        let letters = open_letters(&m);
        for word in basis_words(&m, 3).into_iter().filter(|w| w.iter().all(|l| letters.contains(l))).take(20) {
            let pair = |ls: &[usize], w: &FreeWord| {
                chen_pairing(&BarElement::word(ls.to_vec()), w, &m).unwrap()
            };
            let lhs = pair(&word, &w1.mul(&w2));
            let rhs: Rational = (0..=word.len()).map(|i| pair(&word[..i], &w1) * pair(&word[i..], &w2)).sum();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn dual_cs_is_a_class_function((g, b) in surfaces(), seed in any::<u64>(), rot in 0usize..8) {
        let sp = SurfaceSpec::new(g, b).unwrap();
        let m = DgaModel::open_surface(g, b - 1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = random_element(&m, &mut rng, 2);
        let letter = open_letters(&m)[0];
        let f = dual_cs(&e, letter, &m).unwrap();
        let w = random_word(&mut rng, &sp, 6);
        let rotated = FreeWord::new(w.rotate_letters(rot % w.len()));
        prop_assert_eq!(f.evaluate(&w, &m).unwrap(), f.evaluate(&rotated, &m).unwrap());
    }

    #[test]
    fn closed_differential_squares_to_zero(g in 1usize..=2, seed in any::<u64>()) {
        let m = DgaModel::closed_surface(g);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = random_element(&m, &mut rng, 4);
        let d = bar_differential(&e, &m).unwrap();
        prop_assert!(bar_differential(&d, &m).unwrap().is_zero());
    }
}

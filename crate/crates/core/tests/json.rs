//! JSON documents round-trip every persisted type and reject malformed
//! input.

use goldman_forge::barcx::DgaModel;
use goldman_forge::goldman::{bi_pairing, goldman_bracket, LoopSum, PathSum};
use goldman_forge::json::Persist;
use goldman_forge::magnus::{expand_loop_sum, resolution_check, solve_symplectic, MagnusExpansion};
use goldman_forge::surface::SurfaceSpec;
use goldman_forge::tensoralg::{q, Signature, TensorSeries};
use goldman_forge::verify::{run_suite, SuiteReport, VerifyConfig};
use goldman_forge::Error;
use proptest::prelude::*;

fn round_trip<T: Persist + PartialEq + std::fmt::Debug>(x: &T) {
    let text = x.to_json();
    let back = T::from_json(&text).unwrap();
    assert_eq!(&back, x);
    assert_eq!(back.to_json(), text, "serialisation is not canonical");
}

#[test]
fn algebraic_objects() {
    let sp = SurfaceSpec::new(1, 2).unwrap();
    let sig = sp.signature();
    let x = TensorSeries::generator(sig, 4, sig.x(1));
    round_trip(&x.exp().unwrap().scale(&q(-2, 3)));
    let u = LoopSum::parse(sp, "a1 b1").unwrap();
    let v = LoopSum::parse(sp, "2*b1 c1 - 1/3*a1'").unwrap();
    let br = goldman_bracket(&u, &v).unwrap();
    round_trip(&br);
    round_trip(&expand_loop_sum(&br, &MagnusExpansion::default_for(sig, 4)));
    round_trip(&PathSum::parse(sp, 0, 1, "a1 c1'").unwrap().with_twist(2));
    let sp4 = SurfaceSpec::new(0, 4).unwrap();
    let p = PathSum::parse(sp4, 0, 2, "1").unwrap();
    let r = PathSum::parse(sp4, 1, 3, "1").unwrap();
    round_trip(&bi_pairing(&p, &r).unwrap());
}

#[test]
fn expansions_models_and_reports() {
    round_trip(&solve_symplectic(1, 1, 4).unwrap());
    round_trip(&MagnusExpansion::default_for(Signature::new(2, 0), 3));
    round_trip(&DgaModel::closed_surface(2));
    round_trip(&DgaModel::open_surface(1, 2));
    round_trip(&resolution_check(1, 4).unwrap());
    let mut cfg = VerifyConfig::new(1, 1, 5);
    cfg.cases = Some(10);
    round_trip(&run_suite("jacobi", &cfg).unwrap());
    round_trip(&run_suite("adams", &cfg).unwrap());
}

#[test]
fn malformed_documents_are_rejected() {
    assert!(matches!(LoopSum::from_json("{"), Err(Error::Parse { .. })));
    let sp = SurfaceSpec::new(1, 1).unwrap();
    let good = LoopSum::parse(sp, "a1").unwrap().to_json();
    let wrong_schema = good.replacen("\"schema\": \"", "\"schema\": \"x", 1);
    assert_ne!(wrong_schema, good);
    assert!(LoopSum::from_json(&wrong_schema).is_err());

    let mut cfg = VerifyConfig::new(1, 1, 5);
    cfg.cases = Some(5);
    let report = run_suite("jacobi", &cfg).unwrap().to_json();
    let lying = report.replacen("\"passed\": true", "\"passed\": false", 1);
    assert_ne!(lying, report);
    assert!(SuiteReport::from_json(&lying).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn tensor_series_round_trip(terms in prop::collection::vec((prop::collection::vec(0u16..3, 0..4), -9i64..9, 1i64..9), 0..6)) {
        let sig = Signature::new(1, 1);
        let mut s = TensorSeries::zero(sig, 5);
        for (w, n, d) in terms {
            if sig.word_weight(&w) <= 5 {
                s.add_term(goldman_forge::tensoralg::Monomial::new(&sig, w), q(n, d));
            }
        }
        let back = TensorSeries::from_json(&s.to_json()).unwrap();
        prop_assert_eq!(back, s);
    }
}

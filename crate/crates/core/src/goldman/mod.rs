//! Goldman bracket of free loops, the Kawazumi–Kuno action of loops on
//! paths, the bi-pairing of paths with disjoint endpoints, Adams
//! operations and Dehn-twist fixtures.
//!
//! Intersection signs follow one convention: at a crossing of `u` and `v`
//! the sign is `+1` when the frame (direction of `u`, direction of `v`)
//! is counterclockwise in the vertex disk.

pub mod draw;
mod kkder;
mod ops;
mod sums;
mod twist;

pub use draw::{Crossing, StrandOrder};
pub use kkder::{kk_derivation, kk_derivation_at, solve_exp_derivative};
pub use ops::{
    adams, adams_sum, bi_pairing, bi_pairing_with, bipair_trace, bracket_trace, goldman_bracket,
    goldman_bracket_with, kk_action, kk_action_with, kk_trace, TraceEntry,
};
pub use sums::{LoopSum, PathPairSum, PathSum};
pub use twist::{
    dehn_twist, dehn_twist_power, half_log_squared, half_log_squared_poly, loop_polynomial,
    shifted_to_powers, StandardCurve,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{Path, SurfaceSpec};
    use crate::tensoralg::q;

    fn ls(sp: SurfaceSpec, t: &str) -> LoopSum {
        LoopSum::parse(sp, t).unwrap()
    }

    #[test]
    fn bracket_examples_genus_one() {
        let sp = SurfaceSpec::new(1, 1).unwrap();
        let a = ls(sp, "a1");
        assert!(goldman_bracket(&a, &a).unwrap().is_zero());
        let ab = goldman_bracket(&a, &ls(sp, "b1")).unwrap();
        assert_eq!(ab, ls(sp, "a1 b1").with_twist(1));
        let abi = goldman_bracket(&a, &ls(sp, "b1'")).unwrap();
        assert_eq!(abi, ls(sp, "-1*a1 b1'").with_twist(1));
    }

    #[test]
    fn kk_examples_genus_one() {
        let sp = SurfaceSpec::new(1, 1).unwrap();
        let a = ls(sp, "a1");
        let b = PathSum::parse(sp, 0, 0, "b1").unwrap();
        assert!(kk_action(&LoopSum::unit(sp), &b).unwrap().is_zero());
        let r = kk_action(&a, &b).unwrap();
        assert_eq!(r, PathSum::parse(sp, 0, 0, "b1 a1").unwrap().with_twist(1));
        // Leibniz on b1 b1
        let bb = PathSum::parse(sp, 0, 0, "b1 b1").unwrap();
        let lhs = kk_action(&a, &bb).unwrap();
        let rhs = r
            .compose(&b)
            .unwrap()
            .add(&b.compose(&r).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.terms().len(), 2);
    }

    #[test]
    fn bipair_example_sphere_with_four_holes() {
        let sp = SurfaceSpec::new(0, 4).unwrap();
        let p = PathSum::parse(sp, 0, 2, "1").unwrap();
        let qq = PathSum::parse(sp, 1, 3, "1").unwrap();
        let r = bi_pairing(&p, &qq).unwrap();
        assert_eq!(r.terms().len(), 1);
        let ((l, rr), c) = r.terms().iter().next().unwrap();
        assert_eq!((l.from, l.to, r.twist()), (0, 3, 1));
        assert_eq!((rr.from, rr.to), (1, 2));
        assert_eq!(c, &q(-1, 1));
        assert_eq!(bi_pairing(&p.scale(&q(2, 1)), &qq).unwrap(), r.scale(&q(2, 1)));
        assert!(bi_pairing(&p, &PathSum::parse(sp, 2, 3, "1").unwrap()).is_err());
        let near = Path::new(&sp, 1, 1, Default::default()).unwrap();
        let near = PathSum::from_path(sp, &near).unwrap();
        assert!(bi_pairing(&p, &near).unwrap().is_zero());
    }

    #[test]
    fn adams_examples() {
        let sp = SurfaceSpec::new(1, 1).unwrap();
        let ab = ls(sp, "a1 b1");
        let k = ab.terms().keys().next().unwrap();
        assert_eq!(adams(1, k), *k);
        assert_eq!(adams_sum(2, &ab), ls(sp, "a1 b1 a1 b1"));
        assert!(adams(0, k).is_trivial());
        assert_eq!(adams(2, &adams(3, k)), adams(6, k));
    }
}

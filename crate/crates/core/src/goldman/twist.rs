//! Dehn twists about the standard curves `a_j`, `b_j`, and the loop sums
//! whose Kawazumi–Kuno derivations generate them.

use super::sums::LoopSum;
use crate::error::{Error, Result};
use crate::surface::{FreeWord, Letter, LoopClass, SurfaceSpec};
use crate::tensoralg::{q, Rational};
use num_integer::binomial;
use num_traits::Zero;

/// A standard simple closed curve: `a_j` or `b_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StandardCurve {
    A(usize),
    B(usize),
}

impl StandardCurve {
    pub fn parse(spec: &SurfaceSpec, name: &str) -> Result<Self> {
        let bad = || Error::usage(format!("unknown curve `{name}`"));
        if name.len() < 2 || !name.is_char_boundary(1) {
            return Err(bad());
        }
        let (h, t) = name.split_at(1);
        let j: usize = t.parse().map_err(|_| bad())?;
        if j == 0 || j > spec.genus() {
            return Err(bad());
        }
        match h {
            "a" => Ok(StandardCurve::A(j)),
            "b" => Ok(StandardCurve::B(j)),
            _ => Err(bad()),
        }
    }

    pub fn word(&self, spec: &SurfaceSpec) -> FreeWord {
        match *self {
            StandardCurve::A(j) => FreeWord::new(vec![Letter::pos(spec.a(j))]),
            StandardCurve::B(j) => FreeWord::new(vec![Letter::pos(spec.b(j))]),
        }
    }

    pub fn class(&self, spec: &SurfaceSpec) -> LoopClass {
        crate::surface::cyclic_normal_form(&self.word(spec))
    }
}

/// Image of a generator letter under the `k`-th power of the twist.
fn twist_letter(spec: &SurfaceSpec, curve: StandardCurve, k: i64, l: Letter) -> FreeWord {
    let image = match curve {
        // b_j -> b_j a_j^k
        StandardCurve::A(j) if l.gen == spec.b(j) => {
            FreeWord::new(vec![Letter::pos(spec.b(j))]).mul(&FreeWord::new(vec![Letter::pos(spec.a(j))]).pow(k))
        }
        // a_j -> a_j b_j^-k
        StandardCurve::B(j) if l.gen == spec.a(j) => {
            FreeWord::new(vec![Letter::pos(spec.a(j))]).mul(&FreeWord::new(vec![Letter::pos(spec.b(j))]).pow(-k))
        }
        _ => FreeWord::new(vec![Letter::pos(l.gen)]),
    };
    if l.inv {
        image.inverse()
    } else {
        image
    }
}

/// `t_C^k(w)`, from the tabulated action on generators.
pub fn dehn_twist_power(spec: &SurfaceSpec, curve: StandardCurve, k: i64, w: &FreeWord) -> FreeWord {
    w.letters()
        .iter()
        .fold(FreeWord::empty(), |acc, &l| acc.mul(&twist_letter(spec, curve, k, l)))
}

pub fn dehn_twist(spec: &SurfaceSpec, curve: StandardCurve, w: &FreeWord) -> FreeWord {
    dehn_twist_power(spec, curve, 1, w)
}

/// Coefficients `c_k` with `sum_k c_k t^k = (1/2) (log t)^2`, the logarithm
/// expanded around `t = 1` and truncated at `(t-1)^max`.
pub fn half_log_squared_poly(max: usize) -> Vec<Rational> {
    let mut log = vec![Rational::zero(); max + 1];
    for (n, c) in log.iter_mut().enumerate().skip(1) {
        let sign = if n % 2 == 1 { 1 } else { -1 };
        *c = q(sign, n as i64);
    }
    let mut sq = vec![Rational::zero(); max + 1];
    for i in 1..=max {
        for j in 1..=max - i {
            sq[i + j] += &log[i] * &log[j];
        }
    }
    shifted_to_powers(&sq.iter().map(|c| c * q(1, 2)).collect::<Vec<_>>())
}

/// Converts `sum_n a_n (t-1)^n` into `sum_k c_k t^k`.
pub fn shifted_to_powers(a: &[Rational]) -> Vec<Rational> {
    let mut c = vec![Rational::zero(); a.len()];
    for (n, an) in a.iter().enumerate() {
        if an.is_zero() {
            continue;
        }
        for (k, ck) in c.iter_mut().enumerate().take(n + 1) {
            let b: i64 = binomial(n as i64, k as i64);
            let sign = if (n - k) % 2 == 0 { 1 } else { -1 };
            *ck += an * Rational::from_integer((sign * b).into());
        }
    }
    c
}

/// `sum_k c_k |alpha^k|`.
pub fn loop_polynomial(spec: SurfaceSpec, alpha: &LoopClass, coeffs: &[Rational]) -> LoopSum {
    let mut out = LoopSum::zero(spec);
    for (k, c) in coeffs.iter().enumerate() {
        out.add_term(alpha.power(k as i64), c.clone());
    }
    out
}

/// `(1/2)(log alpha)^2` as a loop sum, exact modulo `I^(max+1)`.
pub fn half_log_squared(spec: SurfaceSpec, alpha: &LoopClass, max: usize) -> LoopSum {
    loop_polynomial(spec, alpha, &half_log_squared_poly(max))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twists_fix_the_boundary() {
        for (g, b) in [(1, 1), (2, 1), (1, 2)] {
            let sp = SurfaceSpec::new(g, b).unwrap();
            let bw = sp.boundary_word();
            for j in 1..=g {
                for curve in [StandardCurve::A(j), StandardCurve::B(j)] {
                    for k in -2..=2 {
                        assert_eq!(dehn_twist_power(&sp, curve, k, &bw), bw);
                    }
                }
            }
        }
    }

    #[test]
    fn twist_fixtures() {
        let sp = SurfaceSpec::new(1, 1).unwrap();
        let w = |t| sp.parse_word(t).unwrap();
        let ta = StandardCurve::parse(&sp, "a1").unwrap();
        assert_eq!(dehn_twist(&sp, ta, &w("b1")), w("b1 a1"));
        assert_eq!(dehn_twist(&sp, ta, &w("a1")), w("a1"));
        let x = w("a1 b1' a1 b1 b1");
        assert_eq!(
            dehn_twist(&sp, ta, &dehn_twist(&sp, ta, &x)),
            dehn_twist_power(&sp, ta, 2, &x)
        );
        assert!(StandardCurve::parse(&sp, "a2").is_err());
        assert!(StandardCurve::parse(&sp, "c1").is_err());
    }

    #[test]
    fn half_log_squared_low_order() {
        // (1/2)(log t)^2 = (1/2)(t-1)^2 - (1/2)(t-1)^3 + O((t-1)^4)
        let c = half_log_squared_poly(3);
        let expect = shifted_to_powers(&[q(0, 1), q(0, 1), q(1, 2), q(-1, 2)]);
        assert_eq!(c, expect);
        assert_eq!(c.iter().sum::<Rational>(), q(0, 1));
    }
}

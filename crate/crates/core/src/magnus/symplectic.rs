//! Symplectic expansions: Magnus expansions sending the boundary word to
//! `exp(omega)` with `omega = sum_j [x_j, y_j] + sum_k z_k`.

use super::MagnusExpansion;
use crate::error::{Error, Result};
use crate::surface::SurfaceSpec;
use crate::tensoralg::lie::{dynkin_decomposition, lyndon_bracket, lyndon_words};
use crate::tensoralg::{linear_solve, Gen, LinearSolution, Monomial, Signature, SparseMatrix, TensorSeries};
use num_traits::Zero;
use std::collections::{BTreeMap, HashMap};

/// `omega = sum_j [x_j, y_j] + sum_k z_k`.
pub fn omega(sig: Signature, trunc: u32) -> TensorSeries {
    let mut w = TensorSeries::zero(sig, trunc);
    for j in 1..=sig.genus {
        let x = TensorSeries::generator(sig, trunc, sig.x(j));
        let y = TensorSeries::generator(sig, trunc, sig.y(j));
        w = &w + &(&(&x * &y) - &(&y * &x));
    }
    for k in 1..=sig.punctures {
        w = &w + &TensorSeries::generator(sig, trunc, sig.z(k));
    }
    w
}

pub(crate) fn surface_of(sig: Signature) -> Result<SurfaceSpec> {
    SurfaceSpec::new(sig.genus, sig.punctures + 1)
}

/// One block of Lie-valued unknowns of a fixed degree together with the
/// linear map applied to them.
pub(crate) struct LieBlock<'a> {
    pub degree: u32,
    pub map: Box<dyn Fn(&TensorSeries) -> TensorSeries + Sync + 'a>,
}

/// Solves `sum_b map_b(unknown_b) = target` for Lie unknowns of the given
/// degrees, matching coefficients on Lyndon words of `target_degree`
/// (which determine a Lie element). Returns `None` when inconsistent.
pub(crate) fn solve_lie_system(
    sig: Signature,
    trunc: u32,
    blocks: &[LieBlock<'_>],
    target: &TensorSeries,
    target_degree: u32,
) -> Option<Vec<TensorSeries>> {
    let rows: Vec<Vec<Gen>> = lyndon_words(&sig, target_degree);
    let row_of: HashMap<Monomial, usize> = rows
        .iter()
        .enumerate()
        .map(|(i, w)| (Monomial::new(&sig, w.clone()), i))
        .collect();
    let mut columns: Vec<(usize, TensorSeries)> = Vec::new();
    let mut entries: Vec<BTreeMap<usize, crate::tensoralg::Rational>> = vec![BTreeMap::new(); rows.len()];
    for (b, block) in blocks.iter().enumerate() {
        if block.degree == 0 {
            continue;
        }
        for w in lyndon_words(&sig, block.degree) {
            let basis = lyndon_bracket(sig, trunc, &w);
            let image = (block.map)(&basis);
            let col = columns.len();
            for (m, c) in image.terms() {
                if let Some(&r) = row_of.get(m) {
                    entries[r].insert(col, c.clone());
                }
            }
            columns.push((b, basis));
        }
    }
    let mut mat = SparseMatrix::new(columns.len());
    for row in entries {
        mat.push_row(row);
    }
    let rhs: Vec<_> = rows
        .iter()
        .map(|w| target.coeff_of(w))
        .collect();
    let LinearSolution::Solution(sol) = linear_solve(&mat, &rhs) else {
        return None;
    };
    let mut out = vec![TensorSeries::zero(sig, trunc); blocks.len()];
    for ((b, basis), c) in columns.iter().zip(sol) {
        if !c.is_zero() {
            out[*b] = &out[*b] + &basis.scale(&c);
        }
    }
    // The Lyndon coefficients determine a Lie element; confirm anyway.
    let mut total = TensorSeries::zero(sig, trunc);
    for (block, u) in blocks.iter().zip(&out) {
        total = &total + &(block.map)(u);
    }
    (total.component(target_degree) == target.component(target_degree)).then_some(out)
}

fn conj_exp(lambda: &TensorSeries, z: &TensorSeries) -> TensorSeries {
    let e = lambda.exp().expect("corrections have no constant term");
    let einv = (-lambda).exp().expect("corrections have no constant term");
    &(&e * &z.exp().expect("generator")) * &einv
}

/// Generator images `theta(a_j) = exp(X_j)`, `theta(b_j) = exp(Y_j)`,
/// `theta(c_k) = exp(L_k) exp(z_k) exp(-L_k)`.
struct Unknowns {
    x: Vec<TensorSeries>,
    y: Vec<TensorSeries>,
    lambda: Vec<TensorSeries>,
}

impl Unknowns {
    fn expansion(&self, sig: Signature, trunc: u32) -> MagnusExpansion {
        let mut images = Vec::with_capacity(sig.num_gens());
        for s in self.x.iter().chain(&self.y) {
            images.push(s.with_truncation(trunc).exp().expect("no constant term"));
        }
        for (k, l) in self.lambda.iter().enumerate() {
            let z = TensorSeries::generator(sig, trunc, sig.z(k + 1));
            images.push(conj_exp(&l.with_truncation(trunc), &z));
        }
        MagnusExpansion::from_images_unchecked(images)
    }
}

/// Builds a symplectic expansion degree by degree. Corrections go into the
/// images of `a_j`, `b_j` (solved by the deterministic linear solver);
/// only when a degree cannot be fixed that way are the images of `c_k`
/// conjugated.
pub fn solve_symplectic(genus: usize, punctures: usize, trunc: u32) -> Result<MagnusExpansion> {
    let sig = Signature::new(genus, punctures);
    let spec = surface_of(sig)?;
    let gamma0 = spec.boundary_word();
    let mut u = Unknowns {
        x: (1..=genus).map(|j| TensorSeries::generator(sig, trunc, sig.x(j))).collect(),
        y: (1..=genus).map(|j| TensorSeries::generator(sig, trunc, sig.y(j))).collect(),
        lambda: vec![TensorSeries::zero(sig, trunc); punctures],
    };
    for d in 3..=trunc {
        let theta = u.expansion(sig, d);
        let log = theta.expand(&gamma0).log()?;
        let err = (&log - &omega(sig, d)).component(d).with_truncation(trunc);
        if err.is_zero() {
            continue;
        }
        let a = dynkin_decomposition(&err);
        let z_free = (1..=punctures).all(|k| a[sig.z(k) as usize].is_zero());
        if z_free {
            for j in 1..=genus {
                u.x[j - 1] = &u.x[j - 1] - &a[sig.y(j) as usize];
                u.y[j - 1] = &u.y[j - 1] + &a[sig.x(j) as usize];
            }
            continue;
        }
        let gens: Vec<(TensorSeries, TensorSeries)> = (1..=genus)
            .map(|j| {
                (
                    TensorSeries::generator(sig, trunc, sig.x(j)),
                    TensorSeries::generator(sig, trunc, sig.y(j)),
                )
            })
            .collect();
        let mut blocks = Vec::new();
        for (x, y) in &gens {
            blocks.push(LieBlock {
                degree: d - 1,
                map: Box::new(move |s: &TensorSeries| &(s * y) - &(y * s)),
            });
            blocks.push(LieBlock {
                degree: d - 1,
                map: Box::new(move |s: &TensorSeries| &(x * s) - &(s * x)),
            });
        }
        if let Some(sol) = solve_lie_system(sig, trunc, &blocks, &-&err, d) {
            for j in 0..genus {
                u.x[j] = &u.x[j] + &sol[2 * j];
                u.y[j] = &u.y[j] + &sol[2 * j + 1];
            }
        } else {
            for j in 1..=genus {
                u.x[j - 1] = &u.x[j - 1] - &a[sig.y(j) as usize];
                u.y[j - 1] = &u.y[j - 1] + &a[sig.x(j) as usize];
            }
            for k in 1..=punctures {
                u.lambda[k - 1] = &u.lambda[k - 1] - &a[sig.z(k) as usize];
            }
        }
    }
    let theta = u.expansion(sig, trunc);
    if !is_symplectic(&theta)? {
        return Err(Error::Internal(
            "symplectic solver produced a non-symplectic expansion".into(),
        ));
    }
    Ok(theta)
}

/// Finds a primitive `lambda` with `exp(ad lambda)(z) = target`, if any.
pub(crate) fn find_conjugator(target: &TensorSeries, z: &TensorSeries) -> Option<TensorSeries> {
    let sig = target.signature();
    let n = target.truncation();
    let wz = z.valuation()?;
    if target.valuation() != Some(wz) || target.component(wz) != *z {
        return None;
    }
    let mut lambda = TensorSeries::zero(sig, n);
    for d in wz + 1..=n {
        let current = conj_exp(&lambda, z).log().ok()?;
        let r = (target - &current).component(d);
        if r.is_zero() {
            continue;
        }
        let zc = z.clone();
        let blocks = [LieBlock {
            degree: d - wz,
            map: Box::new(move |s: &TensorSeries| &(s * &zc) - &(&zc * s)),
        }];
        let sol = solve_lie_system(sig, n, &blocks, &r, d)?;
        lambda = &lambda + &sol[0];
    }
    (conj_exp(&lambda, z).log().ok()? == *target).then_some(lambda)
}

/// Whether `log theta(gamma_0) = omega` and each `theta(c_k)` is a
/// group-like conjugate of `exp(z_k)`, at the expansion's truncation.
pub fn is_symplectic(theta: &MagnusExpansion) -> Result<bool> {
    let sig = theta.signature();
    let n = theta.truncation();
    let spec = surface_of(sig)?;
    let log = theta.expand(&spec.boundary_word()).log()?;
    if log != omega(sig, n) {
        return Ok(false);
    }
    for k in 1..=sig.punctures {
        let z = TensorSeries::generator(sig, n, sig.z(k));
        let lk = theta.image(sig.z(k)).log()?;
        if find_conjugator(&lk, &z).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_expansion_symplectic_only_to_degree_two() {
        let sig = Signature::new(1, 0);
        assert!(is_symplectic(&MagnusExpansion::default_for(sig, 2)).unwrap());
        assert!(!is_symplectic(&MagnusExpansion::default_for(sig, 3)).unwrap());
    }

    #[test]
    fn solver_genus_one() {
        let th = solve_symplectic(1, 0, 6).unwrap();
        assert!(is_symplectic(&th).unwrap());
        let th = solve_symplectic(1, 1, 5).unwrap();
        assert!(is_symplectic(&th).unwrap());
    }

    #[test]
    fn junk_breaks_symplecticity() {
        let sig = Signature::new(1, 1);
        let th = solve_symplectic(1, 1, 4).unwrap();
        let mut images = th.images().to_vec();
        let x = TensorSeries::generator(sig, 4, 0);
        let z = TensorSeries::generator(sig, 4, 2);
        images[0] = (&x + &z).exp().unwrap();
        let bad = MagnusExpansion::from_images(images).unwrap();
        assert!(!is_symplectic(&bad).unwrap());
    }
}

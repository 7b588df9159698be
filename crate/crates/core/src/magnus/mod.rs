//! Magnus expansions of the free surface group into the completed tensor
//! algebra, necklaces, symplectic expansions, the Kashiwara–Vergne check
//! and the resolution of the trivial module over the surface algebra.

mod kvi;
mod necklace;
mod resolution;
mod symplectic;

pub use kvi::{deviation_degrees, invert_expansion, kvi_automorphism, kvi_check, KviCertificate};
pub use necklace::{
    adams_series_check, expand_class, expand_loop_sum, gr_necklace_bracket, log_class,
    necklace_project, power_component, transported_bracket, CyclicSeries,
};
pub use resolution::{resolution_check, ResolutionReport, ResolutionRow};
pub use symplectic::{is_symplectic, omega, solve_symplectic};

use crate::error::{Error, Result};
use crate::goldman::PathSum;
use crate::surface::FreeWord;
use crate::tensoralg::{Gen, Signature, TensorSeries};

/// Assignment of a group-like series to each free generator `a_j`, `b_j`,
/// `c_k`, extended multiplicatively.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MagnusExpansion {
    images: Vec<TensorSeries>,
    inverses: Vec<TensorSeries>,
}

impl MagnusExpansion {
    /// `a_j -> exp(x_j)`, `b_j -> exp(y_j)`, `c_k -> exp(z_k)`.
    pub fn default_for(sig: Signature, trunc: u32) -> Self {
        let images = (0..sig.num_gens())
            .map(|g| {
                TensorSeries::generator(sig, trunc, g as Gen)
                    .exp()
                    .expect("generator has no constant term")
            })
            .collect();
        Self::from_images_unchecked(images)
    }

    pub(crate) fn from_images_unchecked(images: Vec<TensorSeries>) -> Self {
        let inverses = images
            .iter()
            .map(|s| s.inverse().expect("group-like series are invertible"))
            .collect();
        MagnusExpansion { images, inverses }
    }

    /// Validates that every image is group-like of the form `1 + gen + ...`.
    pub fn from_images(images: Vec<TensorSeries>) -> Result<Self> {
        let first = images
            .first()
            .ok_or_else(|| Error::usage("expansion needs generator images"))?;
        let sig = first.signature();
        if images.len() != sig.num_gens() {
            return Err(Error::usage("wrong number of generator images"));
        }
        for (g, im) in images.iter().enumerate() {
            first.check_compatible(im)?;
            if !im.is_group_like() {
                return Err(Error::domain(format!(
                    "image of {} is not group-like",
                    sig.gen_name(g as Gen)
                )));
            }
        }
        Ok(Self::from_images_unchecked(images))
    }

    pub fn signature(&self) -> Signature {
        self.images[0].signature()
    }

    pub fn truncation(&self) -> u32 {
        self.images[0].truncation()
    }

    pub fn images(&self) -> &[TensorSeries] {
        &self.images
    }

    pub fn image(&self, gen: Gen) -> &TensorSeries {
        &self.images[gen as usize]
    }

    /// The same expansion at a lower truncation.
    pub fn truncate(&self, trunc: u32) -> Self {
        MagnusExpansion {
            images: self.images.iter().map(|s| s.with_truncation(trunc)).collect(),
            inverses: self.inverses.iter().map(|s| s.with_truncation(trunc)).collect(),
        }
    }

    pub fn expand(&self, w: &FreeWord) -> TensorSeries {
        let sig = self.signature();
        let n = self.truncation();
        w.letters()
            .iter()
            .fold(TensorSeries::one(sig, n), |acc, l| {
                let f = if l.inv {
                    &self.inverses[l.gen as usize]
                } else {
                    &self.images[l.gen as usize]
                };
                &acc * f
            })
    }

    pub fn expand_path_sum(&self, p: &PathSum) -> TensorSeries {
        let sig = self.signature();
        let n = self.truncation();
        p.terms()
            .iter()
            .fold(TensorSeries::zero(sig, n), |acc, (w, c)| &acc + &self.expand(w).scale(c))
    }
}

/// Expansion of a word under the default expansion.
pub fn expand(w: &FreeWord, theta: &MagnusExpansion) -> TensorSeries {
    theta.expand(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::SurfaceSpec;

    #[test]
    fn expand_examples() {
        let sp = SurfaceSpec::new(1, 2).unwrap();
        let th = MagnusExpansion::default_for(sp.signature(), 4);
        let w = |t| sp.parse_word(t).unwrap();
        assert_eq!(
            th.expand(&w("a1")),
            TensorSeries::generator(sp.signature(), 4, 0).exp().unwrap()
        );
        assert_eq!(th.expand(&FreeWord::empty()), TensorSeries::one(sp.signature(), 4));
        assert_eq!(th.expand(&w("a1 a1'")), TensorSeries::one(sp.signature(), 4));
        let u = w("a1 c1' b1");
        let v = w("b1' b1' c1");
        assert_eq!(th.expand(&u.mul(&v)), &th.expand(&u) * &th.expand(&v));
        assert!(th.expand(&u).is_group_like());
        assert!(MagnusExpansion::from_images(th.images().to_vec()).is_ok());
    }
}

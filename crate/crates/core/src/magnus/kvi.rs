//! The automorphism `Phi = Theta ∘ theta^-1` attached to a symplectic
//! expansion, and an exact check of the Kashiwara–Vergne type equations
//! it satisfies.

use super::symplectic::{find_conjugator, omega, surface_of};
use super::MagnusExpansion;
use crate::error::Result;
use crate::tensoralg::{Gen, Substitution, TensorSeries};

/// Substitution `x_g -> log theta(g)`, i.e. `theta ∘ Theta^-1`, and its
/// inverse `Theta ∘ theta^-1`.
pub fn invert_expansion(theta: &MagnusExpansion) -> Result<Substitution> {
    let psi = Substitution::new(
        theta
            .images()
            .iter()
            .map(|s| s.log())
            .collect::<Result<Vec<_>>>()?,
    )?;
    psi.inverse()
}

/// `Phi = Theta ∘ theta^-1` on generators.
pub fn kvi_automorphism(theta: &MagnusExpansion) -> Result<Substitution> {
    invert_expansion(theta)
}

/// Outcome of [`kvi_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KviCertificate {
    /// `Phi(omega) = log(prod {e^x_j, e^y_j} prod e^z_k)` exactly.
    pub omega_image_matches: bool,
    /// Lowest degree where `Phi(omega)` differs from the target.
    pub discrepancy_degree: Option<u32>,
    /// For each `k`, a primitive `lambda_k` with
    /// `Phi(z_k) = e^lambda_k z_k e^-lambda_k`, if found.
    pub zk_conjugators: Vec<Option<TensorSeries>>,
    /// `Phi` is the identity on the associated graded.
    pub gr_identity: bool,
    /// Every `Phi(generator)` is primitive, so `Phi` is a Hopf map.
    pub primitive_images: bool,
    pub checked_to_degree: u32,
}

impl KviCertificate {
    pub fn passed(&self) -> bool {
        self.omega_image_matches
            && self.zk_conjugators.iter().all(Option::is_some)
            && self.gr_identity
            && self.primitive_images
    }
}

pub fn kvi_check(phi: &Substitution) -> Result<KviCertificate> {
    let sig = phi.signature();
    let n = phi.truncation();
    let spec = surface_of(sig)?;
    let target = MagnusExpansion::default_for(sig, n)
        .expand(&spec.boundary_word())
        .log()?;
    let image = phi.apply(&omega(sig, n))?;
    let diff = &image - &target;
    let zk_conjugators = (1..=sig.punctures)
        .map(|k| {
            let z = TensorSeries::generator(sig, n, sig.z(k));
            find_conjugator(phi.image(sig.z(k)), &z)
        })
        .collect();
    Ok(KviCertificate {
        omega_image_matches: diff.is_zero(),
        discrepancy_degree: diff.valuation(),
        zk_conjugators,
        gr_identity: phi.is_tangent_to_identity(),
        primitive_images: phi.images().iter().all(TensorSeries::is_primitive),
        checked_to_degree: n,
    })
}

/// Generator-wise lowest degree at which `phi` differs from the identity.
pub fn deviation_degrees(phi: &Substitution) -> Vec<Option<u32>> {
    let sig = phi.signature();
    let n = phi.truncation();
    (0..sig.num_gens())
        .map(|g| (phi.image(g as Gen) - &TensorSeries::generator(sig, n, g as Gen)).valuation())
        .collect()
}

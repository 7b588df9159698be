//! Reduced and circular bar constructions over finite DGA models, the
//! combinatorial Chen pairing with free-group words, and the dual
//! Chas–Sullivan and Kawazumi–Kuno formulas with their hat identities.
//!
//! Letters are abstract basis symbols, never differential forms; the
//! pairing with a loop is coefficient extraction from its Magnus
//! expansion, which realises Chen's iterated integrals exactly for the
//! formal flat connection `Σ ξ_j ⊗ x_j + η_j ⊗ y_j + ζ_k ⊗ z_k`.

mod bar;
mod chen;
mod model;

pub use bar::{bar_differential, basis_words, shuffle_product, BarElement, BarWord};
pub use chen::{
    chen_pairing, dual_cs, dual_kk, eval_hat_cs, eval_hat_kk, relation_element, ClassFunction,
    KkMiddle,
};
pub use model::{DgaModel, ModelKind, Vector};

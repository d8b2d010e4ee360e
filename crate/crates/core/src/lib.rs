//! Exact simulation of optical cat-state breeding under spectral mode
//! mismatch, and of photon loss on a prepared cat.
//!
//! States are finite superpositions of multimode coherent states
//! ([`KetSuperposition`]) and operators are finite sums of coherent dyads
//! ([`DyadMixture`]). Every quantity reduces to closed-form coherent
//! overlaps, so no photon-number truncation is involved.
//!
//! ```
//! use catbreed::{breed, best_cat_fidelity, Parity};
//!
//! let bred = breed(1.0, 0.99).unwrap();
//! let best = best_cat_fidelity(&bred.effective_state, Parity::Odd).unwrap();
//! assert!(best.fidelity > 0.99);
//! ```

pub mod breeding;
pub mod coherent;
pub mod error;
pub mod loss;
pub mod metrics;

pub use breeding::{
    beamsplitter_5050, breed, breed_with, condition_vacuum, make_cat, mismatch_split,
    naive_output_magnitude, BreedConfig, BreedResult, CatSpec, Parity,
};
pub use coherent::{
    coherent_overlap, inner_product, multimode_overlap, CoherentLabel, Dyad, DyadMixture,
    KetSuperposition, KetTerm, ModeIndex, Spatial, Spectral,
};
pub use error::{Error, Result};
pub use loss::{
    apply_loss, loss_best_target, loss_fidelity_exact, loss_fidelity_paper,
    max_alpha_for_fidelity, LossResult,
};
pub use metrics::{
    best_cat_fidelity, breeding_fidelity, cat_fidelity, fidelity, golden_section_max,
    threshold_alpha, threshold_alpha_with, BestCat,
};

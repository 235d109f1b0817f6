//! Crystallographic groups: affine Jordan form, the splitting `ℚ^m = W_S ⊕ W_triv`,
//! and semisimple factors modulo the translation subgroup.

mod affine;
mod group;
mod semi;

pub use affine::{affine_jordan, splitting, vector_from_value, AffineElement, Splitting, Vector};
pub use group::{embed_affine, AffineEmbedding, CrystGroup, HOLONOMY_CAP};
pub use semi::{lift_to_gl, semifactor_representatives, GlLift, SemiFactor, SemiFactorComponent, SemiFactorSet, REPRESENTATIVE_CAP};

//! Finite-dimensional algebras, bimodules, balanced tensor products, hom
//! spaces and projectivity.

mod algebra;
mod bimodule;
mod hom;
mod projective;
mod tensor;

pub use algebra::{Algebra, AlgebraMorphism, Subalgebra};
pub use bimodule::Bimodule;
pub use hom::{bimodule_invariants, centralizer, hom_space, Flavor, HomSpace};
pub use projective::{dual_basis_projectivity, generated_submodule, DualBasis};
pub use tensor::BalancedTensor;

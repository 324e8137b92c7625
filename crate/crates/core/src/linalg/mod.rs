//! Exact scalars over ℚ and 𝔽_p and the dense linear algebra built on them.

pub mod field;
pub mod matrix;
pub mod rowspace;
pub mod subspace;
pub mod system;
pub mod vector;

pub use field::{Field, Scalar};
pub use matrix::{AffineSolution, Matrix, RankWitness, Rref};
pub use rowspace::RowSpace;
pub use subspace::Subspace;
pub use system::{LinearSystem, Term, Unknown};

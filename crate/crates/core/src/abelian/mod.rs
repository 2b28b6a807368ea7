//! Exact integer linear algebra over finitely presented abelian groups.
//!
//! A group is presented as `Z^n / L` where `L` is the column span of an
//! integer relation matrix. Homomorphisms are integer matrices on generators.
//! Relation matrices are never canonicalized in place; [`FPAbelianGroup::invariant_factors`]
//! computes the canonical decomposition on demand.

mod complex;
mod group;
mod matrix;
mod snf;

pub use complex::{subquotient, CochainComplex, Subquotient};
pub use group::{direct_sum, DirectSum, FPAbelianGroup, FiniteGroup, GroupHom, Invariants};
pub use matrix::IntMatrix;
pub use snf::{column_echelon, integer_kernel, smith_normal_form, solve, ColumnEchelon, Lattice, Smith};

/// Arbitrary-precision integer used for every matrix entry.
pub type Int = num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AbelianError {
    #[error("relation matrix has {rows} rows but the group has {ngens} generators")]
    RelationShape { ngens: usize, rows: usize },
    #[error("homomorphism matrix is {}x{}, expected {}x{}", found.0, found.1, expected.0, expected.1)]
    HomShape { expected: (usize, usize), found: (usize, usize) },
    #[error("matrix does not send relations to relations")]
    NotWellDefined,
    #[error("source and target groups do not match")]
    ComposeMismatch,
    #[error("differentials d^{degree} and d^{} do not compose to zero", degree + 1)]
    NotAComplex { degree: usize },
    #[error("differential d^{degree} does not connect consecutive groups")]
    DegreeShape { degree: usize },
    #[error("group is infinite")]
    Infinite,
    #[error("group is too large to enumerate")]
    TooLarge,
}

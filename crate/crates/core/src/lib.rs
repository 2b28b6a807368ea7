//! Exact computations for finite categories with natural-system coefficients.
//!
//! The crate is `no_std` and only needs `alloc`. It covers:
//!
//! * [`abelian`]: finitely presented abelian groups, Smith normal form and
//!   cohomology of cochain complexes over the integers.
//! * [`fincat`]: explicit finite categories, functors, chosen products and
//!   exponentials, factorization categories and nerves.
//! * [`freeccc`]: the free cartesian closed category on a signature, with a
//!   normalization-by-evaluation decision procedure for equality.
//! * [`eqlogic`]: many-sorted equational logic with checkable proofs.
//! * [`natsys`]: natural systems and the cartesian / cartesian closed conditions.
//! * [`bwcoh`]: the Baues-Wirsching cochain complex and its cohomology.
//! * [`linext`]: linear extensions, sections, cocycles and classification.
//! * [`der`]: derivation groups and the degree-one kernel decomposition.

#![no_std]

extern crate alloc;

pub mod abelian;
pub mod bwcoh;
pub mod der;
pub mod eqlogic;
pub mod fincat;
pub mod freeccc;
pub mod linext;
pub mod natsys;

//! Finite quantum groups at desk scale: Peter-Weyl data, coactions on
//! finite-dimensional C*-algebras, Podles cores, kernels, and the
//! minimal/reduced/universal reduction procedures.
//!
//! Everything is coordinate linear algebra over `Complex64`. Algebras are
//! presented by structure constants, Hopf structures by matrices, and every
//! claimed identity is checked numerically against explicit tolerances
//! rather than assumed.

pub mod algebra;
pub mod cli;
pub mod coaction;
pub mod instances;
pub mod numkit;
pub mod peterweyl;
pub mod qgroup;
pub mod reduction;

//! Numerical laboratory for product-formula simulation of interacting
//! electrons, measured in the fermionic η-seminorm.
//!
//! The Hamiltonian class is `H = T + V` with a quadratic hopping term
//! `T = Σ τ_{j,k} A†_j A_k` and a density-density interaction
//! `V = Σ ν_{l,m} N_l N_m` on `n` spin orbitals. Everything in this crate
//! operates on the η-electron sector of Fock space: operators are stored as
//! dense matrices between sector bases, Trotter error is measured as the
//! spectral norm of the sector-restricted defect, and the various commutator
//! and path-counting bounds are evaluated against that exact error.
//!
//! Module map:
//! - [`fock`]: occupation-number configurations, sector bases, elementary
//!   fermionic operators with their sign conventions.
//! - [`linalg`]: dense complex linear algebra (Jacobi eigensolver, spectral
//!   norm, numerical radius, Hermitian exponentials, PSD order).
//! - [`hamiltonian`]: coefficient pairs `(τ, ν)` for the supported families
//!   (plane-wave, Fermi-Hubbard, tightness instances) and sector assembly.
//! - [`trotter`]: product formulas and exact Trotter-error measurement.
//! - [`seminorm`]: the fermionic η-seminorm and the max-expectation metric.
//! - [`commutator`]: numeric nested commutators over the T/V alphabet and
//!   the operator-inequality lemmas behind the recursive bound.
//! - [`pathcount`]: symbolic commutator expansion into signed fermionic
//!   paths, configuration degrees, and the path-counting bounds.
//! - [`bounds`]: closed-form error bounds and step-count estimators.
//! - [`tightness`]: the lower-bound constructions (Fourier-frame operators,
//!   two-configuration witness states, nested-commutator expectations).
//! - [`oracle`]: brute-force full Fock-space reference implementations used
//!   by the test suites and the self-check.
//! - [`selfcheck`]: programmatic invariant suite shared with the CLI.

pub mod bounds;
pub mod commutator;
pub mod error;
pub mod fock;
pub mod hamiltonian;
pub mod linalg;
pub mod oracle;
pub mod pathcount;
pub mod selfcheck;
pub mod seminorm;
pub mod tightness;
pub mod trotter;

pub use error::{Error, Result};
pub use fock::{FermionConfig, SectorBasis, SectorOperator};
pub use hamiltonian::CoefficientPair;
pub use linalg::CMatrix;

//! Spatial discretization: Gauss–Legendre quadrature, the modal Legendre
//! basis, and Galerkin assembly.

pub mod assembly;
pub mod basis;
pub mod legendre;
pub mod linalg;
pub mod parallel;
pub mod quadrature;

pub use assembly::{
    assemble_load, assemble_mass, assemble_stiffness, l2_norm, project_l2, MassMatrix,
};
pub use basis::{evaluate, modal_values, ModalBasis};
pub use legendre::{legendre_all, legendre_eval};
pub use linalg::{DenseMatrix, Pentadiagonal2};
pub use parallel::Parallelism;
pub use quadrature::{gauss_legendre, QuadratureRule};

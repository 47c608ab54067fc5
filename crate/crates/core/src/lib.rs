//! Exact symplectic volumes of moduli spaces of curves, computed three ways:
//! the edge-removal recursion on volume polynomials, Virasoro (DVV) recursion
//! on psi-class intersection numbers, and residue recursion on the Airy
//! curve. Small cases can also be integrated directly over ribbon graph cells.

pub mod algebra;
pub mod correlators;
pub mod error;
pub mod intersections;
pub mod methods;
pub mod ribbon;
pub mod verify;
pub mod volumes;

pub use error::{Error, Result};

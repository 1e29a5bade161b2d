//! Exact invariant Hermitian polynomials of finite unitary groups.
//!
//! Given a finite group of unitary matrices over a cyclotomic field, this crate
//! computes the canonical invariant polynomial
//! `Phi(z, w) = 1 - prod_g (1 - <g z, w>)`, the inertia of its coefficient
//! matrix, and the induced polynomial map from the sphere to a hyperquadric.
//! It also covers the bivariate family `f_{p,q}`, the coefficient congruence
//! primality test, and the construction of nonlinear maps between
//! hyperquadrics that keep the number of negative directions.

pub mod cyclotomic;
pub mod error;
mod expand;
pub mod fpq;
pub mod groups;
pub mod hermpoly;
pub mod interval;
pub mod invariant;
pub mod json;
pub mod quadmap;
pub mod signature;

pub use cyclotomic::{cyc_embed, CycNum, Embedder};
pub use error::{Error, Result};
pub use groups::{close_group, UnitaryGroup, UnitaryMatrix};
pub use hermpoly::{BiMonomial, Form, HermPoly, HoloPoly, MomentPoly, Side};
pub use interval::{ComplexInterval, Interval};
pub use signature::{coeff_matrix, decompose, inertia, CoeffMatrix, Family, Inertia, MapComponent, QuadMap};
pub use quadmap::{build_gp, build_w, verify_quadmap, QuadMapReport, SplitPoly};

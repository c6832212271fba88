//! Exact computations for affine quivers: root-lattice forms, the Frenkel–Kac
//! model of the positive part of the affine Lie algebra, exhaustive counting of
//! representations over prime fields, and the preprojective layer on top.

pub mod affine;
pub mod error;
pub mod field;
pub mod fk;
pub mod lattice;
pub mod linalg;
pub mod poly;
pub mod preprojective;
pub mod quiver;
pub mod rep;
pub mod roots;

pub use affine::{classify_affine, AffineData, AffineType};
pub use error::{Budget, Error, Result};
pub use field::{FpMatrix, PrimeField};
pub use lattice::{IntMatrix, LatticeVector};
pub use poly::IntPoly;
pub use quiver::{Arrow, DoubleQuiver, Quiver};
pub use rep::{FFRep, IntRep};
pub use roots::{AffineRootSystem, CoxeterData, CoxeterOrbit, Root, RootClass, TubeSkeleton};

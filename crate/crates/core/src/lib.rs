//! Exact engine for piecewise-linear constructible sheaves on rational vector
//! spaces.
//!
//! Sets are finite unions of convex cells cut out by rational affine
//! constraints. Objects are finite sums of shifted constant sheaves on such
//! sets, and every transform is evaluated stalk by stalk as compactly
//! supported cohomology of an explicit semilinear fiber.
//!
//! The crate is `no_std` (with `alloc`) unless the `std` feature is enabled.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod cohomology;
pub mod convex;
pub mod geom;
pub mod linalg;
pub mod pw;
pub mod rational;
pub mod sample;
pub mod sheaf;
pub mod transforms;
pub mod verify;

pub use cohomology::{critical_radius, hc, triangulate_pair, GradedDims, HcError, SimplicialPair};
pub use convex::{
    cone_over_embedding, gamma_hk_check, polar_cone, recession_cone, support_function, ConvexBody,
    ExtRational,
};
pub use geom::{cell_nonempty, AffineConstraint, AffineMap, Cell, GeomError, PLSet, Relation};
pub use rational::{q, qi, Rational};
pub use sheaf::{ConstructibleObject, Kernel, ShiftedTerm};
pub use transforms::Pairing;
pub use verify::{Report, Status};

/// A point of `Q^n`.
pub type Point = alloc::vec::Vec<Rational>;

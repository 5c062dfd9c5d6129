//! The Freudenthal model of e8: complexified octonions, the exceptional
//! Jordan algebra, e6/e7 as operator algebras, and the 248-dimensional
//! model (Phi, P, Q, r, s, t) with its order-four automorphisms.

pub mod e6e7;
pub mod jordan;
pub mod model;
pub mod octonion;
pub mod realform;

pub use e6e7::{ModelError, E6DIM, E7DIM, PDIM};
pub use model::{bracket_f, ElF, Model, BASIS_VERSION, FDIM};
pub use realform::RealForm;

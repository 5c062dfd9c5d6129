//! Exact construction of the 248-dimensional exceptional Lie algebra e8
//! in two explicit models, with its order-four automorphisms, their
//! fixed-point subalgebras, and mechanical verification of the defining
//! identities.

pub mod exterior;
pub mod freudenthal;
pub mod sc;
pub mod scalar;
pub mod verify;
pub mod wedge;

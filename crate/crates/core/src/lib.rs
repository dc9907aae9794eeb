//! Exact computations with differential graded Lie algebras, their
//! Chevalley–Eilenberg complexes, artinian cdgas and formal moduli problems.

pub mod cdga;
pub mod ce;
pub mod error;
pub mod graded;
pub mod io;
pub mod lie;
pub mod linalg;
pub mod moduli;
pub mod monomial;
pub mod par;
pub mod rational;
pub mod sym;

pub use error::{Error, Result};
pub use rational::Q;

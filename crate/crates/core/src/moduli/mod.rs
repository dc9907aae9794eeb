//! Formal moduli problems through the Maurer–Cartan model.

mod mc;
mod schlessinger;
mod unit;

pub use mc::{mc_set, mc_tangent, tensor_lie, McEvaluation, McTangent, Regime};
pub use schlessinger::{schlessinger_check, SchlessingerReport};
pub use unit::{cochain_algebra, unit_check, UnitVerdict};

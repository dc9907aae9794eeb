mod adjoint;
mod chains;
mod cochains;
mod coefficients;
mod free_module;

pub use chains::{ce_homological, eta_label, CeChains, Exactness};
pub use cochains::{ce_cohomological, CeCochains};
pub use coefficients::{ce_with_coefficients, CeCoefficients};
pub use free_module::{eta_cone, free_ce_module, FreeCeModule};
pub use adjoint::{adjoint_derivation, pullback, weight_one_block, AdjointDerivation};

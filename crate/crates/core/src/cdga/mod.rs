mod artinian;
mod cellular;
mod presentation;

pub use artinian::{fiber_product, AlgebraMap, ArtinianAlgebra};
pub use cellular::{
    adjoin_generators, attach_cells, cellular_resolve, cotangent_fiber, Cell, CellKind, CellularTower,
    CotangentFiber, StageRecord,
};
pub use presentation::CdgaPresentation;

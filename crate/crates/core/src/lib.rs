pub mod algebra;
pub mod base_change;
pub mod category;
pub mod coalgebroid;
pub mod error;
pub mod flmod;
pub mod fixtures;
pub mod linalg;
pub mod matrix;
pub mod modules;
pub mod monoidal;
pub mod recognition;
pub mod reconstruct;
pub mod report;
pub mod ring;
pub mod system;

pub use algebra::{BAlgebra, BElem, BMatrix};
pub use error::{Error, Result};
pub use matrix::Matrix;
pub use modules::{BLinearMap, BModule, Presentation};
pub use ring::{Ring, RingKind, Scalar};

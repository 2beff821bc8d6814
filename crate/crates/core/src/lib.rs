pub mod alpha;
pub mod angles;
pub mod bivar_poly;
pub mod calculus;
pub mod error;
pub mod gaussian;
pub mod hypergeom;
pub mod kernels;
pub mod obstruction;
pub mod quadrature;
pub mod special;
pub mod verify;
pub mod zeros;

pub use alpha::AlphaParam;
pub use error::{Error, Result};
